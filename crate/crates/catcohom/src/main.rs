fn main() {
    std::process::exit(catcohom::cli::main_entry());
}
