//! The command-line surface: a workspace resolving named categories,
//! functors, and diagrams from files, plus the `validate`, `cohomology`,
//! `check`, and `map` subcommands.

mod parse;

pub use parse::{
    build_diagram, build_functor, parse_cat_expr, parse_category, parse_diagram_file,
    parse_functor_file, parse_matrix, print_category, print_diagram, print_functor, CatExpr,
    DiagramFile, FunctorFile,
};

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coeff::{Diagram, TruncatedSimplexDiagram};
use crate::cohom;
use crate::criteria;
use crate::exactalg::{homology_at, AbGroupStructure, ComplexWindow, GroupHom};
use crate::fincat::{factorization, CatRef, FunctorMap, DEFAULT_PATH_CAP};
use crate::{Error, Result};

/// Resolves category names against files in one directory, caching every
/// base and derived category so that repeated references share handles.
pub struct Workspace {
    dir: PathBuf,
    cats: HashMap<String, CatRef>,
}

impl Workspace {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Workspace {
            dir: dir.into(),
            cats: HashMap::new(),
        }
    }

    /// Loads a category file and registers it under its declared name.
    pub fn load_category_path(&mut self, path: &Path) -> Result<CatRef> {
        let text = std::fs::read_to_string(path)?;
        let cat = Arc::new(parse_category(&path.display().to_string(), &text)?);
        self.cats.insert(cat.name().to_string(), Arc::clone(&cat));
        Ok(cat)
    }

    fn resolve_base(&mut self, name: &str) -> Result<CatRef> {
        if let Some(c) = self.cats.get(name) {
            return Ok(Arc::clone(c));
        }
        let path = self.dir.join(format!("{name}.cat"));
        if !path.is_file() {
            return Err(Error::Unresolved {
                name: name.to_string(),
                context: format!("no category registered and {} not found", path.display()),
            });
        }
        let cat = self.load_category_path(&path)?;
        if cat.name() != name {
            return Err(Error::Unresolved {
                name: name.to_string(),
                context: format!("{} declares category {}", path.display(), cat.name()),
            });
        }
        Ok(cat)
    }

    /// Resolves a category expression, evaluating derived constructions.
    pub fn category(&mut self, expr: &CatExpr) -> Result<CatRef> {
        let key = expr.canonical();
        if let Some(c) = self.cats.get(&key) {
            return Ok(Arc::clone(c));
        }
        let cat = match expr {
            CatExpr::Base(name) => self.resolve_base(name)?,
            CatExpr::Op(e) => {
                let c = self.category(e)?;
                Arc::new(crate::fincat::opposite(&c))
            }
            CatExpr::Prod(a, b) => {
                let ca = self.category(a)?;
                let cb = self.category(b)?;
                Arc::new(crate::fincat::product(&ca, &cb))
            }
            CatExpr::Fact(e) => Arc::clone(&factorization(&self.category(e)?).cat),
        };
        self.cats.insert(key, Arc::clone(&cat));
        Ok(cat)
    }

    pub fn load_functor_path(&mut self, path: &Path) -> Result<FunctorMap> {
        let text = std::fs::read_to_string(path)?;
        let file = path.display().to_string();
        let spec = parse_functor_file(&file, &text)?;
        let source = self.category(&parse_cat_expr(&spec.source)?)?;
        let target = self.category(&parse_cat_expr(&spec.target)?)?;
        build_functor(&file, &spec, source, target)
    }

    pub fn load_diagram_path(&mut self, path: &Path) -> Result<(DiagramFile, Diagram)> {
        let text = std::fs::read_to_string(path)?;
        let file = path.display().to_string();
        let spec = parse_diagram_file(&file, &text)?;
        let base = self.category(&spec.base)?;
        let diagram = build_diagram(&file, &spec, base)?;
        Ok((spec, diagram))
    }
}

#[derive(Parser)]
#[command(
    name = "catcohom",
    version,
    about = "Exact (co)homology of finite categories and preservation criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Lim,
    Bw,
    Hm,
    Thomason,
    Homology,
    Nerve,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapFlavor {
    Lim,
    Bw,
    Thomason,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionArg {
    Verdier,
    Oberst,
    Bw,
    Hm,
    Thomason,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a category file.
    Validate {
        #[arg(long)]
        category: PathBuf,
    },
    /// Compute cohomology groups in degrees 0..=max-degree.
    Cohomology {
        #[arg(long)]
        flavor: Flavor,
        #[arg(long)]
        category: PathBuf,
        /// Coefficient diagram file (not used by the nerve flavor).
        #[arg(long)]
        coeff: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Use the reduced complex (lim flavor, retraction-free categories).
        #[arg(long)]
        reduced: bool,
        /// Thomason flavor: pull the natural system back along the composite
        /// functor from the simplex category.
        #[arg(long)]
        via_delta: bool,
        /// Thomason flavor: constant coefficients of this rank.
        #[arg(long)]
        constant: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Decide a preservation criterion for a functor; prints a JSON report.
    Check {
        #[arg(long)]
        criterion: CriterionArg,
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        level: usize,
        /// Thomason criterion: check simplices up to this length
        /// (default 2 * |Ob D|).
        #[arg(long)]
        simplex_bound: Option<usize>,
    },
    /// Compute the canonical restriction map on cohomology at one degree.
    Map {
        #[arg(long)]
        flavor: MapFlavor,
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        coeff: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        via_delta: bool,
        #[arg(long)]
        constant: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

fn path_cap() -> Result<usize> {
    match std::env::var("CATCOHOM_PATH_CAP") {
        Ok(v) => v.parse().map_err(|_| Error::Parse {
            file: "CATCOHOM_PATH_CAP".into(),
            line: 0,
            message: format!("not a valid cap: {v:?}"),
        }),
        Err(_) => Ok(DEFAULT_PATH_CAP),
    }
}

fn workspace_for(path: &Path) -> Workspace {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    Workspace::new(dir.unwrap_or_else(|| Path::new(".")))
}

fn group_json(degree: usize, g: &AbGroupStructure) -> String {
    json!({ "degree": degree, "betti": g.betti, "torsion": g.torsion_strings() }).to_string()
}

fn print_groups(label: &str, groups: &[(usize, AbGroupStructure)], json_mode: bool) {
    for (n, g) in groups {
        if json_mode {
            println!("{}", group_json(*n, g));
        } else {
            println!("{label}{n} = {g}");
        }
    }
}

/// Thomason coefficients from the CLI flags: either constant of a given
/// rank, or a natural system pulled back through the composite functor.
fn thomason_coefficients(
    ws: &mut Workspace,
    cat: &CatRef,
    coeff: Option<&PathBuf>,
    via_delta: bool,
    constant: Option<usize>,
    max_dim: usize,
    cap: usize,
) -> Result<TruncatedSimplexDiagram> {
    match (coeff, constant) {
        (None, Some(r)) => TruncatedSimplexDiagram::constant(cat, max_dim, r, cap),
        (Some(path), None) => {
            if !via_delta {
                return Err(Error::Parse {
                    file: path.display().to_string(),
                    line: 0,
                    message: "thomason coefficients from a natural system need --via-delta".into(),
                });
            }
            let (_, sys) = ws.load_diagram_path(path)?;
            cohom::induced_simplex_coefficients(cat, &sys, max_dim, cap)
        }
        _ => Err(Error::Parse {
            file: "<args>".into(),
            line: 0,
            message: "thomason flavor needs exactly one of --coeff/--constant".into(),
        }),
    }
}

fn window_groups(window: &ComplexWindow, max_degree: usize) -> Result<Vec<(usize, AbGroupStructure)>> {
    (0..=max_degree)
        .map(|n| Ok((n, homology_at(window, n)?)))
        .collect()
}

fn run_cohomology(
    flavor: Flavor,
    category: &Path,
    coeff: Option<&PathBuf>,
    max_degree: usize,
    reduced: bool,
    via_delta: bool,
    constant: Option<usize>,
    json_mode: bool,
    cap: usize,
) -> Result<()> {
    let mut ws = workspace_for(category);
    let cat = ws.load_category_path(category)?;
    fn need_coeff(coeff: Option<&PathBuf>) -> Result<&PathBuf> {
        coeff.ok_or_else(|| Error::Parse {
            file: "<args>".into(),
            line: 0,
            message: "this flavor needs --coeff".into(),
        })
    }
    let groups: Vec<(usize, AbGroupStructure)> = match flavor {
        Flavor::Nerve => (0..=max_degree)
            .map(|n| Ok((n, cohom::nerve_integral_homology(&cat, n, cap)?)))
            .collect::<Result<_>>()?,
        Flavor::Homology => {
            let (_, d) = ws.load_diagram_path(need_coeff(coeff)?)?;
            let window = cohom::homology_chain_complex(&cat, &d, max_degree, cap)?;
            window_groups(&window, max_degree)?
        }
        Flavor::Lim => {
            let (_, d) = ws.load_diagram_path(need_coeff(coeff)?)?;
            let window = if reduced {
                cohom::reduced_cochain_complex(&cat, &d, max_degree.max(1), cap)?
            } else {
                cohom::lim_cochain_complex(&cat, &d, max_degree.max(1), cap)?
            };
            window_groups(&window, max_degree)?
        }
        Flavor::Bw => {
            let (_, d) = ws.load_diagram_path(need_coeff(coeff)?)?;
            let window = cohom::bw_cochain_complex(&cat, &d, max_degree.max(1), cap)?;
            window_groups(&window, max_degree)?
        }
        Flavor::Hm => {
            let (_, d) = ws.load_diagram_path(need_coeff(coeff)?)?;
            (0..=max_degree)
                .map(|n| Ok((n, cohom::hm_cohomology(&cat, &d, n, cap)?)))
                .collect::<Result<_>>()?
        }
        Flavor::Thomason => {
            let g = thomason_coefficients(
                &mut ws,
                &cat,
                coeff,
                via_delta,
                constant,
                max_degree + 1,
                cap,
            )?;
            let window = cohom::thomason_cochain_complex(&g, 0, max_degree + 1)?;
            window_groups(&window, max_degree)?
        }
    };
    let label = match flavor {
        Flavor::Homology | Flavor::Nerve => "H_",
        _ => "H^",
    };
    print_groups(label, &groups, json_mode);
    Ok(())
}

fn run_check(
    criterion: CriterionArg,
    functor: &Path,
    level: usize,
    simplex_bound: Option<usize>,
    cap: usize,
) -> Result<()> {
    let mut ws = workspace_for(functor);
    let f = ws.load_functor_path(functor)?;
    let report = match criterion {
        CriterionArg::Verdier => criteria::verdier_check(&f, level, cap)?,
        CriterionArg::Oberst => criteria::oberst_colim_check(&f, level, cap)?,
        CriterionArg::Bw => criteria::bw_preservation_check(&f, level, cap)?,
        CriterionArg::Hm => criteria::hm_preservation_check(&f, level, cap)?,
        CriterionArg::Thomason => {
            let m = simplex_bound.unwrap_or(2 * f.target().object_count());
            criteria::thomason_preservation_check(&f, level, m, cap)?
        }
    };
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    Ok(())
}

fn hom_json(degree: usize, hom: &GroupHom) -> String {
    let matrix: Vec<Vec<String>> = (0..hom.matrix.rows())
        .map(|i| {
            (0..hom.matrix.cols())
                .map(|j| hom.matrix.get(i, j).to_string())
                .collect()
        })
        .collect();
    json!({
        "degree": degree,
        "source": { "betti": hom.source.betti, "torsion": hom.source.torsion_strings() },
        "target": { "betti": hom.target.betti, "torsion": hom.target.torsion_strings() },
        "is_iso": hom.is_iso,
        "is_mono": hom.is_mono,
        "is_epi": hom.is_epi,
        "matrix": matrix,
    })
    .to_string()
}

fn run_map(
    flavor: MapFlavor,
    functor: &Path,
    coeff: Option<&PathBuf>,
    degree: usize,
    via_delta: bool,
    constant: Option<usize>,
    json_mode: bool,
    cap: usize,
) -> Result<()> {
    let mut ws = workspace_for(functor);
    let f = ws.load_functor_path(functor)?;
    let hom = match flavor {
        MapFlavor::Lim => {
            let path = coeff.ok_or_else(|| Error::Parse {
                file: "<args>".into(),
                line: 0,
                message: "map --flavor lim needs --coeff".into(),
            })?;
            let (_, d) = ws.load_diagram_path(path)?;
            cohom::restriction_map_lim(&f, &d, degree, cap)?
        }
        MapFlavor::Bw => {
            let path = coeff.ok_or_else(|| Error::Parse {
                file: "<args>".into(),
                line: 0,
                message: "map --flavor bw needs --coeff".into(),
            })?;
            let (_, d) = ws.load_diagram_path(path)?;
            cohom::restriction_map_bw(&f, &d, degree, cap)?
        }
        MapFlavor::Thomason => {
            let target = Arc::clone(f.target());
            let g = thomason_coefficients(
                &mut ws,
                &target,
                coeff,
                via_delta,
                constant,
                degree.max(1) + 1,
                cap,
            )?;
            cohom::restriction_map_thomason(&f, &g, degree, cap)?
        }
    };
    if json_mode {
        println!("{}", hom_json(degree, &hom));
    } else {
        println!(
            "H^{degree}: {} -> {}  [iso={} mono={} epi={}]",
            hom.source, hom.target, hom.is_iso, hom.is_mono, hom.is_epi
        );
    }
    Ok(())
}

fn dispatch(cli: Cli, cap: usize) -> Result<()> {
    match cli.command {
        Command::Validate { category } => {
            let mut ws = workspace_for(&category);
            let cat = ws.load_category_path(&category)?;
            println!(
                "ok: category {} ({} objects, {} morphisms)",
                cat.name(),
                cat.object_count(),
                cat.morphism_count()
            );
            Ok(())
        }
        Command::Cohomology {
            flavor,
            category,
            coeff,
            max_degree,
            reduced,
            via_delta,
            constant,
            json,
        } => run_cohomology(
            flavor,
            &category,
            coeff.as_ref(),
            max_degree,
            reduced,
            via_delta,
            constant,
            json,
            cap,
        ),
        Command::Check {
            criterion,
            functor,
            level,
            simplex_bound,
        } => run_check(criterion, &functor, level, simplex_bound, cap),
        Command::Map {
            flavor,
            functor,
            coeff,
            degree,
            via_delta,
            constant,
            json,
        } => run_map(
            flavor,
            &functor,
            coeff.as_ref(),
            degree,
            via_delta,
            constant,
            json,
            cap,
        ),
    }
}

/// Entry point for the binary; returns the process exit code.
/// Computed fail verdicts from `check` are successful computations and exit
/// with 0; the verdict lives in the JSON payload.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let cap = match path_cap() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match dispatch(cli, cap) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::PathCapExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}
