//! Line-oriented parsers and printers for the category / functor / diagram
//! file formats, and the category-expression grammar
//! (`C`, `op(C)`, `prod(C,D)`, `fact(C)`).

use crate::coeff::Diagram;
use crate::exactalg::IntMatrix;
use crate::fincat::{validate, CatRef, FinCat, FunctorMap, RawCategory};
use crate::{Error, Result};

fn parse_err(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Strips comments and yields (1-based line number, trimmed content).
fn logical_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let no_comment = raw.split('#').next().unwrap_or("");
        let t = no_comment.trim();
        if t.is_empty() {
            None
        } else {
            Some((i + 1, t))
        }
    })
}

/// A category-expression: a named base category or a derived construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CatExpr {
    Base(String),
    Op(Box<CatExpr>),
    Prod(Box<CatExpr>, Box<CatExpr>),
    Fact(Box<CatExpr>),
}

impl CatExpr {
    /// Canonical rendering, used as the cache key.
    pub fn canonical(&self) -> String {
        match self {
            CatExpr::Base(n) => n.clone(),
            CatExpr::Op(e) => format!("op({})", e.canonical()),
            CatExpr::Prod(a, b) => format!("prod({},{})", a.canonical(), b.canonical()),
            CatExpr::Fact(e) => format!("fact({})", e.canonical()),
        }
    }
}

/// Parses `C`, `op(C)`, `prod(C,D)`, `fact(C)` with arbitrary nesting.
pub fn parse_cat_expr(text: &str) -> Result<CatExpr> {
    let s = text.trim();
    let (expr, rest) = parse_expr_inner(s)
        .ok_or_else(|| parse_err("<expr>", 0, format!("malformed category expression {s:?}")))?;
    if !rest.trim().is_empty() {
        return Err(parse_err(
            "<expr>",
            0,
            format!("trailing input {rest:?} after category expression"),
        ));
    }
    Ok(expr)
}

fn parse_expr_inner(s: &str) -> Option<(CatExpr, &str)> {
    let s = s.trim_start();
    for (head, unary) in [("op(", true), ("fact(", true), ("prod(", false)] {
        if let Some(rest) = s.strip_prefix(head) {
            let (first, rest) = parse_expr_inner(rest)?;
            let rest = rest.trim_start();
            if unary {
                let rest = rest.strip_prefix(')')?;
                let expr = if head == "op(" {
                    CatExpr::Op(Box::new(first))
                } else {
                    CatExpr::Fact(Box::new(first))
                };
                return Some((expr, rest));
            }
            let rest = rest.strip_prefix(',')?;
            let (second, rest) = parse_expr_inner(rest)?;
            let rest = rest.trim_start().strip_prefix(')')?;
            return Some((CatExpr::Prod(Box::new(first), Box::new(second)), rest));
        }
    }
    // A base name: up to the next delimiter.
    let end = s
        .find(|c: char| c == ',' || c == ')' || c.is_whitespace())
        .unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    Some((CatExpr::Base(s[..end].to_string()), &s[end..]))
}

/// Parsed category file prior to validation.
pub fn parse_category(file: &str, text: &str) -> Result<FinCat> {
    let mut raw = RawCategory::default();
    let mut seen_header = false;
    for (line, content) in logical_lines(text) {
        let mut words = content.split_whitespace();
        match words.next() {
            Some("category") => {
                let name = words
                    .next()
                    .ok_or_else(|| parse_err(file, line, "expected: category <name>"))?;
                raw.name = name.to_string();
                seen_header = true;
            }
            Some("objects") => {
                raw.objects.extend(words.map(str::to_string));
            }
            Some("mor") => {
                // mor f : a -> b
                let rest: Vec<&str> = words.collect();
                let joined = rest.join(" ");
                let (name, arrow) = joined
                    .split_once(':')
                    .ok_or_else(|| parse_err(file, line, "expected: mor <name> : <a> -> <b>"))?;
                let (dom, cod) = arrow
                    .split_once("->")
                    .ok_or_else(|| parse_err(file, line, "expected: mor <name> : <a> -> <b>"))?;
                raw.morphisms.push((
                    name.trim().to_string(),
                    dom.trim().to_string(),
                    cod.trim().to_string(),
                ));
            }
            Some("comp") => {
                // comp g f = h, meaning h = g o f
                let rest: Vec<&str> = words.collect();
                if rest.len() != 4 || rest[2] != "=" {
                    return Err(parse_err(file, line, "expected: comp <g> <f> = <h>"));
                }
                raw.composites.push((
                    rest[0].to_string(),
                    rest[1].to_string(),
                    rest[3].to_string(),
                ));
            }
            Some(other) => {
                return Err(parse_err(file, line, format!("unknown directive {other:?}")));
            }
            None => {}
        }
    }
    if !seen_header {
        return Err(parse_err(file, 0, "missing `category <name>` header"));
    }
    validate(&raw)
}

/// Header and mappings of a functor file; category resolution happens in the
/// workspace.
pub struct FunctorFile {
    pub name: String,
    pub source: String,
    pub target: String,
    pub obj_lines: Vec<(String, String)>,
    pub mor_lines: Vec<(String, String)>,
}

pub fn parse_functor_file(file: &str, text: &str) -> Result<FunctorFile> {
    let mut header: Option<(String, String, String)> = None;
    let mut obj_lines = Vec::new();
    let mut mor_lines = Vec::new();
    for (line, content) in logical_lines(text) {
        let mut words = content.split_whitespace();
        match words.next() {
            Some("functor") => {
                // functor F : C -> D
                let rest: Vec<&str> = words.collect();
                let joined = rest.join(" ");
                let (name, arrow) = joined.split_once(':').ok_or_else(|| {
                    parse_err(file, line, "expected: functor <name> : <C> -> <D>")
                })?;
                let (src, tgt) = arrow.split_once("->").ok_or_else(|| {
                    parse_err(file, line, "expected: functor <name> : <C> -> <D>")
                })?;
                header = Some((
                    name.trim().to_string(),
                    src.trim().to_string(),
                    tgt.trim().to_string(),
                ));
            }
            Some("obj") | Some("mor") => {
                let kind = content.split_whitespace().next().unwrap();
                let rest: Vec<&str> = words.collect();
                let joined = rest.join(" ");
                let (from, to) = joined
                    .split_once("|->")
                    .ok_or_else(|| parse_err(file, line, format!("expected: {kind} <x> |-> <y>")))?;
                let pair = (from.trim().to_string(), to.trim().to_string());
                if kind == "obj" {
                    obj_lines.push(pair);
                } else {
                    mor_lines.push(pair);
                }
            }
            Some(other) => {
                return Err(parse_err(file, line, format!("unknown directive {other:?}")));
            }
            None => {}
        }
    }
    let (name, source, target) =
        header.ok_or_else(|| parse_err(file, 0, "missing `functor <name> : <C> -> <D>` header"))?;
    Ok(FunctorFile {
        name,
        source,
        target,
        obj_lines,
        mor_lines,
    })
}

/// Builds the functor once its categories are resolved. Identities are
/// mapped automatically; every non-identity morphism needs a `mor` line.
pub fn build_functor(
    file: &str,
    spec: &FunctorFile,
    source: CatRef,
    target: CatRef,
) -> Result<FunctorMap> {
    let mut obj_map = vec![None; source.object_count()];
    for (from, to) in &spec.obj_lines {
        let o = source.object_by_name(from).ok_or_else(|| Error::Unresolved {
            name: from.clone(),
            context: format!("{file}: object of {}", source.name()),
        })?;
        let img = target.object_by_name(to).ok_or_else(|| Error::Unresolved {
            name: to.clone(),
            context: format!("{file}: object of {}", target.name()),
        })?;
        obj_map[o.0] = Some(img);
    }
    let obj_map: Vec<_> = source
        .objects()
        .map(|o| {
            obj_map[o.0].ok_or_else(|| Error::Unresolved {
                name: source.object_name(o).to_string(),
                context: format!("{file}: object not mapped"),
            })
        })
        .collect::<Result<_>>()?;

    let mut mor_map = vec![None; source.morphism_count()];
    for o in source.objects() {
        let id = source.identity_of(o);
        mor_map[id.0] = Some(target.identity_of(obj_map[o.0]));
    }
    for (from, to) in &spec.mor_lines {
        let m = source.morphism_by_name(from).ok_or_else(|| Error::Unresolved {
            name: from.clone(),
            context: format!("{file}: morphism of {}", source.name()),
        })?;
        let img = target.morphism_by_name(to).ok_or_else(|| Error::Unresolved {
            name: to.clone(),
            context: format!("{file}: morphism of {}", target.name()),
        })?;
        mor_map[m.0] = Some(img);
    }
    let mor_map: Vec<_> = source
        .morphisms()
        .map(|m| {
            mor_map[m.0].ok_or_else(|| Error::Unresolved {
                name: source.morphism_name(m).to_string(),
                context: format!("{file}: morphism not mapped"),
            })
        })
        .collect::<Result<_>>()?;
    FunctorMap::new(spec.name.clone(), source, target, obj_map, mor_map)
}

/// Header and data of a diagram file.
pub struct DiagramFile {
    pub name: String,
    pub base: CatExpr,
    pub ranks: Vec<(String, usize)>,
    pub mats: Vec<(String, Vec<Vec<i64>>)>,
}

pub fn parse_diagram_file(file: &str, text: &str) -> Result<DiagramFile> {
    let mut header: Option<(String, CatExpr)> = None;
    let mut ranks = Vec::new();
    let mut mats = Vec::new();
    for (line, content) in logical_lines(text) {
        let mut words = content.split_whitespace();
        match words.next() {
            Some("diagram") => {
                // diagram G on <category-expr>
                let name = words
                    .next()
                    .ok_or_else(|| parse_err(file, line, "expected: diagram <name> on <expr>"))?;
                if words.next() != Some("on") {
                    return Err(parse_err(file, line, "expected: diagram <name> on <expr>"));
                }
                let expr_text: Vec<&str> = words.collect();
                let expr = parse_cat_expr(&expr_text.join(" "))
                    .map_err(|e| parse_err(file, line, e.to_string()))?;
                header = Some((name.to_string(), expr));
            }
            Some("rank") => {
                let rest: Vec<&str> = words.collect();
                if rest.len() != 3 || rest[1] != "=" {
                    return Err(parse_err(file, line, "expected: rank <object> = <k>"));
                }
                let k: usize = rest[2]
                    .parse()
                    .map_err(|_| parse_err(file, line, "rank must be a nonnegative integer"))?;
                ranks.push((rest[0].to_string(), k));
            }
            Some("mat") => {
                let rest: Vec<&str> = words.collect();
                let joined = rest.join(" ");
                let (name, matrix_text) = joined
                    .split_once('=')
                    .ok_or_else(|| parse_err(file, line, "expected: mat <morphism> = [..]"))?;
                let rows = parse_matrix(matrix_text.trim())
                    .ok_or_else(|| parse_err(file, line, "malformed matrix literal"))?;
                mats.push((name.trim().to_string(), rows));
            }
            Some(other) => {
                return Err(parse_err(file, line, format!("unknown directive {other:?}")));
            }
            None => {}
        }
    }
    let (name, base) =
        header.ok_or_else(|| parse_err(file, 0, "missing `diagram <name> on <expr>` header"))?;
    Ok(DiagramFile {
        name,
        base,
        ranks,
        mats,
    })
}

/// `[1 0; 0 1]` (rows split by `;`, entries by whitespace). `[]` is empty.
pub fn parse_matrix(text: &str) -> Option<Vec<Vec<i64>>> {
    let inner = text.strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    let mut rows = Vec::new();
    for row in inner.split(';') {
        let entries: Option<Vec<i64>> = row
            .split_whitespace()
            .map(|t| t.parse::<i64>().ok())
            .collect();
        rows.push(entries?);
    }
    Some(rows)
}

/// Builds the diagram once its base category is resolved. Objects default to
/// rank 0; omitted matrices default to the unique map when either endpoint
/// rank is 0, and to the identity on identity morphisms.
pub fn build_diagram(file: &str, spec: &DiagramFile, base: CatRef) -> Result<Diagram> {
    let mut rank = vec![0usize; base.object_count()];
    for (name, k) in &spec.ranks {
        let o = base.object_by_name(name).ok_or_else(|| Error::Unresolved {
            name: name.clone(),
            context: format!("{file}: object of {}", base.name()),
        })?;
        rank[o.0] = *k;
    }
    let mut action: Vec<Option<IntMatrix>> = vec![None; base.morphism_count()];
    for (name, rows) in &spec.mats {
        let m = base.morphism_by_name(name).ok_or_else(|| Error::Unresolved {
            name: name.clone(),
            context: format!("{file}: morphism of {}", base.name()),
        })?;
        let want_rows = rank[base.cod(m).0];
        let want_cols = rank[base.dom(m).0];
        let got_rows = rows.len();
        let got_cols = rows.first().map_or(0, Vec::len);
        if got_rows != want_rows || (want_rows > 0 && got_cols != want_cols) {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "{file}: mat {name} must be {want_rows}x{want_cols}, got {got_rows}x{got_cols}"
                ),
            });
        }
        action[m.0] = Some(IntMatrix::from_rows(rows));
    }
    let action: Vec<IntMatrix> = base
        .morphisms()
        .map(|m| {
            if let Some(a) = action[m.0].take() {
                return Ok(a);
            }
            let r = rank[base.cod(m).0];
            let c = rank[base.dom(m).0];
            if base.is_identity(m) {
                Ok(IntMatrix::identity(c))
            } else if r == 0 || c == 0 {
                Ok(IntMatrix::zero(r, c))
            } else {
                Err(Error::Unresolved {
                    name: base.morphism_name(m).to_string(),
                    context: format!("{file}: morphism needs an explicit matrix"),
                })
            }
        })
        .collect::<Result<_>>()?;
    Diagram::new(base, rank, action)
}

/// Canonical printer for a validated category; `parse(print(c))` rebuilds an
/// identical structure.
pub fn print_category(c: &FinCat) -> String {
    let mut out = String::new();
    out.push_str(&format!("category {}\n", c.name()));
    let names: Vec<&str> = c.objects().map(|o| c.object_name(o)).collect();
    out.push_str(&format!("objects {}\n", names.join(" ")));
    for m in c.morphisms() {
        if c.is_identity(m) {
            continue;
        }
        out.push_str(&format!(
            "mor {} : {} -> {}\n",
            c.morphism_name(m),
            c.object_name(c.dom(m)),
            c.object_name(c.cod(m))
        ));
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            if c.is_identity(g) || c.is_identity(f) || c.dom(g) != c.cod(f) {
                continue;
            }
            let h = c.compose_unchecked(g, f);
            out.push_str(&format!(
                "comp {} {} = {}\n",
                c.morphism_name(g),
                c.morphism_name(f),
                c.morphism_name(h)
            ));
        }
    }
    out
}

/// Canonical printer for a diagram over its base.
pub fn print_diagram(name: &str, base_expr: &str, d: &Diagram) -> String {
    let base = d.base();
    let mut out = String::new();
    out.push_str(&format!("diagram {name} on {base_expr}\n"));
    for o in base.objects() {
        if d.rank_of(o) > 0 {
            out.push_str(&format!("rank {} = {}\n", base.object_name(o), d.rank_of(o)));
        }
    }
    for m in base.morphisms() {
        if base.is_identity(m) {
            continue;
        }
        let a = d.action_of(m);
        if a.rows() == 0 || a.cols() == 0 {
            continue;
        }
        let rows: Vec<String> = (0..a.rows())
            .map(|i| {
                (0..a.cols())
                    .map(|j| a.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&format!(
            "mat {} = [{}]\n",
            base.morphism_name(m),
            rows.join("; ")
        ));
    }
    out
}

/// Canonical printer for a functor.
pub fn print_functor(f: &FunctorMap) -> String {
    let src = f.source();
    let tgt = f.target();
    let mut out = String::new();
    out.push_str(&format!(
        "functor {} : {} -> {}\n",
        f.name(),
        src.name(),
        tgt.name()
    ));
    for o in src.objects() {
        out.push_str(&format!(
            "obj {} |-> {}\n",
            src.object_name(o),
            tgt.object_name(f.apply_obj(o))
        ));
    }
    for m in src.morphisms() {
        if src.is_identity(m) {
            continue;
        }
        out.push_str(&format!(
            "mor {} |-> {}\n",
            src.morphism_name(m),
            tgt.morphism_name(f.apply_mor(m))
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn category_roundtrip() {
        let text = "\
category V
objects a b c
mor alpha : a -> c
mor beta : b -> c
";
        let v = parse_category("V.cat", text).unwrap();
        assert_eq!(v.object_count(), 3);
        assert_eq!(v.morphism_count(), 5);
        let printed = print_category(&v);
        let again = parse_category("V.cat", &printed).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn category_with_composites_roundtrip() {
        let text = "\
category E
objects 1
mor e : 1 -> 1
comp e e = e   # idempotent
";
        let e = parse_category("E.cat", text).unwrap();
        let again = parse_category("E.cat", &print_category(&e)).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn expr_parsing() {
        assert_eq!(parse_cat_expr("C").unwrap().canonical(), "C");
        assert_eq!(parse_cat_expr("op(C)").unwrap().canonical(), "op(C)");
        assert_eq!(
            parse_cat_expr("prod(op(C),C)").unwrap().canonical(),
            "prod(op(C),C)"
        );
        assert_eq!(
            parse_cat_expr("fact(prod(A,B))").unwrap().canonical(),
            "fact(prod(A,B))"
        );
        assert!(parse_cat_expr("prod(C,)").is_err());
        assert!(parse_cat_expr("op(C) junk").is_err());
    }

    #[test]
    fn matrix_literals() {
        assert_eq!(
            parse_matrix("[1 0; 0 1]").unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        assert_eq!(parse_matrix("[]").unwrap(), Vec::<Vec<i64>>::new());
        assert_eq!(parse_matrix("[-2 3]").unwrap(), vec![vec![-2, 3]]);
        assert!(parse_matrix("1 0").is_none());
    }

    #[test]
    fn diagram_defaults() {
        let vtext = "\
category V
objects a b c
mor alpha : a -> c
mor beta : b -> c
";
        let v = Arc::new(parse_category("V.cat", vtext).unwrap());
        let dtext = "\
diagram A on V
rank c = 1
";
        let spec = parse_diagram_file("A.dgm", dtext).unwrap();
        let d = build_diagram("A.dgm", &spec, Arc::clone(&v)).unwrap();
        assert_eq!(d.rank_of(v.object_by_name("c").unwrap()), 1);
        assert_eq!(d.rank_of(v.object_by_name("a").unwrap()), 0);

        // A rank-positive non-identity morphism with no matrix is an error.
        let e = Arc::new(
            parse_category(
                "E.cat",
                "category E\nobjects 1\nmor e : 1 -> 1\ncomp e e = e\n",
            )
            .unwrap(),
        );
        let spec = parse_diagram_file("B.dgm", "diagram B on E\nrank 1 = 1\n").unwrap();
        assert!(build_diagram("B.dgm", &spec, e).is_err());
    }
}
