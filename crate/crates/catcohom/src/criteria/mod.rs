//! The necessary-and-sufficient preservation criteria at a finite level:
//! Verdier (comma categories), Oberst (right fibres, for homology),
//! Baues-Wirsching (factorizations through the functor), Hochschild-Mitchell
//! (the ZC comparison plus derived Kan values), and Thomason (simplex
//! pullbacks up to a stated bound).

use serde_json::{json, Value};

use crate::coeff::{derived_lan_values, zc_comparison};
use crate::cohom::nerve_integral_homology;
use crate::exactalg::AbGroupStructure;
use crate::fincat::{
    comma, f_angle, nerve_capped, simplex_pullback, CatRef, CommaSide, FunctorMap,
};
use crate::{Error, Result};

/// Which criterion a report was produced by.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Criterion {
    Verdier,
    Oberst,
    Bw,
    Hm,
    Thomason,
}

impl Criterion {
    pub fn tag(self) -> &'static str {
        match self {
            Criterion::Verdier => "verdier",
            Criterion::Oberst => "oberst",
            Criterion::Bw => "bw",
            Criterion::Hm => "hm",
            Criterion::Thomason => "thomason",
        }
    }
}

/// Why an anchor fails its criterion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FailureReason {
    Empty,
    Disconnected,
    HomologyNonzero { degree: usize },
    ComparisonNotIso,
    DerivedLanNonzero { degree: usize },
}

impl FailureReason {
    fn to_json(&self) -> Value {
        match self {
            FailureReason::Empty => json!({ "reason": "empty" }),
            FailureReason::Disconnected => json!({ "reason": "disconnected" }),
            FailureReason::HomologyNonzero { degree } => {
                json!({ "reason": "homology-nonzero", "degree": degree })
            }
            FailureReason::ComparisonNotIso => json!({ "reason": "comparison-not-iso" }),
            FailureReason::DerivedLanNonzero { degree } => {
                json!({ "reason": "derived-lan-nonzero", "degree": degree })
            }
        }
    }
}

/// A failing anchor with its first failure in enumeration order.
#[derive(Clone, Debug)]
pub struct Witness {
    pub anchor: String,
    pub reason: FailureReason,
}

/// Everything computed at one anchor: the homology groups (or derived Kan
/// values) and, for the HM criterion, the comparison verdict.
#[derive(Clone, Debug)]
pub struct AnchorReport {
    pub anchor: String,
    pub groups: Vec<(usize, AbGroupStructure)>,
    pub comparison_iso: Option<bool>,
}

/// The machine-readable outcome of one criterion run.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub level: usize,
    /// Present only for the Thomason criterion: the simplex length the
    /// quantifier was truncated at. A pass holds up to this bound only.
    pub simplex_bound: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub anchors: Vec<AnchorReport>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                let mut v = w.reason.to_json();
                v["anchor"] = json!(w.anchor);
                v
            })
            .collect();
        let anchors: Vec<Value> = self
            .anchors
            .iter()
            .map(|a| {
                let groups: Vec<Value> = a
                    .groups
                    .iter()
                    .map(|(n, g)| {
                        json!({ "degree": n, "betti": g.betti, "torsion": g.torsion_strings() })
                    })
                    .collect();
                let mut v = json!({ "anchor": a.anchor, "groups": groups });
                if let Some(iso) = a.comparison_iso {
                    v["comparison_iso"] = json!(iso);
                }
                v
            })
            .collect();
        let mut out = json!({
            "criterion": self.criterion.tag(),
            "level": self.level,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "witnesses": witnesses,
            "anchors": anchors,
        });
        if let Some(m) = self.simplex_bound {
            out["simplex_bound"] = json!(m);
        }
        out
    }
}

fn require_level(level: usize) -> Result<()> {
    if level < 1 {
        return Err(Error::DegreeOutOfWindow {
            degree: level,
            lo: 1,
            hi: usize::MAX,
        });
    }
    Ok(())
}

/// Checks one auxiliary category for non-emptiness, connectedness, and
/// vanishing homology in degrees `1..=level`; returns the computed groups
/// together with the first failure, if any.
fn examine_category(
    cat: &CatRef,
    level: usize,
    cap: usize,
) -> Result<(Vec<(usize, AbGroupStructure)>, Option<FailureReason>)> {
    if cat.is_empty() {
        return Ok((Vec::new(), Some(FailureReason::Empty)));
    }
    let mut groups = Vec::with_capacity(level + 1);
    for n in 0..=level {
        groups.push((n, nerve_integral_homology(cat, n, cap)?));
    }
    if cat.connected_components().len() != 1 {
        return Ok((groups, Some(FailureReason::Disconnected)));
    }
    for n in 1..=level {
        if !groups[n].1.is_trivial() {
            return Ok((groups, Some(FailureReason::HomologyNonzero { degree: n })));
        }
    }
    Ok((groups, None))
}

fn assemble(
    criterion: Criterion,
    level: usize,
    simplex_bound: Option<usize>,
    items: Vec<(String, Vec<(usize, AbGroupStructure)>, Option<FailureReason>)>,
) -> CriterionReport {
    let mut witnesses = Vec::new();
    let mut anchors = Vec::new();
    for (anchor, groups, failure) in items {
        if let Some(reason) = failure {
            witnesses.push(Witness {
                anchor: anchor.clone(),
                reason,
            });
        }
        anchors.push(AnchorReport {
            anchor,
            groups,
            comparison_iso: None,
        });
    }
    CriterionReport {
        criterion,
        level,
        simplex_bound,
        witnesses,
        anchors,
    }
}

/// Verdier criterion: every left comma category `f | d` must be non-empty,
/// connected, and acyclic up to the level.
pub fn verdier_check(f: &FunctorMap, level: usize, cap: usize) -> Result<CriterionReport> {
    require_level(level)?;
    let mut items = Vec::new();
    for d in f.target().objects() {
        let cc = comma(f, d, CommaSide::Left);
        let (groups, failure) = examine_category(&cc.cat, level, cap)?;
        items.push((f.target().object_name(d).to_string(), groups, failure));
    }
    Ok(assemble(Criterion::Verdier, level, None, items))
}

/// Oberst criterion for homology: the right fibres `d | f` must be
/// non-empty, connected, and acyclic up to the level.
pub fn oberst_colim_check(f: &FunctorMap, level: usize, cap: usize) -> Result<CriterionReport> {
    require_level(level)?;
    let mut items = Vec::new();
    for d in f.target().objects() {
        let cc = comma(f, d, CommaSide::Right);
        let (groups, failure) = examine_category(&cc.cat, level, cap)?;
        items.push((f.target().object_name(d).to_string(), groups, failure));
    }
    Ok(assemble(Criterion::Oberst, level, None, items))
}

/// Baues-Wirsching criterion: every category of factorizations `f<alpha>`
/// must be non-empty, connected, and acyclic up to the level.
pub fn bw_preservation_check(f: &FunctorMap, level: usize, cap: usize) -> Result<CriterionReport> {
    require_level(level)?;
    let mut items = Vec::new();
    for alpha in f.target().morphisms() {
        let a = f_angle(f, alpha);
        let (groups, failure) = examine_category(&a.cat, level, cap)?;
        items.push((f.target().morphism_name(alpha).to_string(), groups, failure));
    }
    Ok(assemble(Criterion::Bw, level, None, items))
}

/// Hochschild-Mitchell criterion: the comparison
/// `Lan^{f^op x f} ZC -> ZD` must be an isomorphism at every object pair and
/// the derived values must vanish in degrees `1..=level`.
pub fn hm_preservation_check(f: &FunctorMap, level: usize, cap: usize) -> Result<CriterionReport> {
    require_level(level)?;
    let z = zc_comparison(f)?;
    let prod = z.zc_target.base().clone();
    let mut derived: Vec<Vec<AbGroupStructure>> = Vec::with_capacity(level);
    for q in 1..=level {
        derived.push(derived_lan_values(&z.functor, &z.zc_source, q, cap)?);
    }
    let mut witnesses = Vec::new();
    let mut anchors = Vec::new();
    for (d, hom) in &z.per_object {
        let anchor = prod.object_name(*d).to_string();
        let mut failure = None;
        if !hom.is_iso {
            failure = Some(FailureReason::ComparisonNotIso);
        }
        let mut groups = Vec::with_capacity(level);
        for q in 1..=level {
            let value = derived[q - 1][d.0].clone();
            if failure.is_none() && !value.is_trivial() {
                failure = Some(FailureReason::DerivedLanNonzero { degree: q });
            }
            groups.push((q, value));
        }
        if let Some(reason) = failure {
            witnesses.push(Witness {
                anchor: anchor.clone(),
                reason,
            });
        }
        anchors.push(AnchorReport {
            anchor,
            groups,
            comparison_iso: Some(hom.is_iso),
        });
    }
    Ok(CriterionReport {
        criterion: Criterion::Hm,
        level,
        simplex_bound: None,
        witnesses,
        anchors,
    })
}

/// Thomason criterion, truncated at `simplex_bound`: every pullback
/// `<-f(sigma)` over a simplex of length at most the bound must be
/// non-empty, connected, and acyclic up to the level. A pass only certifies
/// simplices up to the bound; the theorem quantifies over all of them.
pub fn thomason_preservation_check(
    f: &FunctorMap,
    level: usize,
    simplex_bound: usize,
    cap: usize,
) -> Result<CriterionReport> {
    require_level(level)?;
    let table = nerve_capped(f.target(), simplex_bound, cap)?;
    let tgt = f.target();
    let mut items = Vec::new();
    for m in 0..=simplex_bound {
        for idx in 0..table.count(m) {
            let sigma = table.path(m, idx);
            let anchor = if m == 0 {
                tgt.object_name(sigma.start).to_string()
            } else {
                sigma
                    .mors
                    .iter()
                    .map(|&a| tgt.morphism_name(a))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            let pb = simplex_pullback(f, sigma);
            let (groups, failure) = examine_category(&pb.cat, level, cap)?;
            items.push((anchor, groups, failure));
        }
    }
    Ok(assemble(
        Criterion::Thomason,
        level,
        Some(simplex_bound),
        items,
    ))
}
