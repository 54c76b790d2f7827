//! Deterministic fuzz corpus: random small categories, functors between
//! them, and functorial coefficient diagrams. Everything is validated on
//! construction, so a generated value always satisfies the axioms.

#![allow(dead_code)]

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use catcohom::coeff::{constant_diagram, Diagram};
use catcohom::exactalg::IntMatrix;
use catcohom::fincat::{
    disjoint_union, ordinal, validate, CatRef, FunctorMap, MorId, ObjId, RawCategory,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn raw(name: &str, objects: &[&str], mors: &[(&str, &str, &str)], comps: &[(&str, &str, &str)]) -> RawCategory {
    RawCategory {
        name: name.into(),
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: mors
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect(),
        composites: comps
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect(),
    }
}

/// The named small categories the corpus draws from. All have at most 3
/// objects and at most 8 morphisms.
pub fn archetypes() -> Vec<CatRef> {
    let mut out: Vec<CatRef> = Vec::new();
    out.push(Arc::new(ordinal(0)));
    out.push(Arc::new(ordinal(1)));
    out.push(Arc::new(ordinal(2)));
    // V and wedge shapes.
    out.push(Arc::new(
        validate(&raw(
            "V",
            &["a", "b", "c"],
            &[("alpha", "a", "c"), ("beta", "b", "c")],
            &[],
        ))
        .unwrap(),
    ));
    out.push(Arc::new(
        validate(&raw(
            "W",
            &["a", "b", "c"],
            &[("alpha", "c", "a"), ("beta", "c", "b")],
            &[],
        ))
        .unwrap(),
    ));
    // Parallel pair.
    out.push(Arc::new(
        validate(&raw(
            "P",
            &["a", "b"],
            &[("u", "a", "b"), ("v", "a", "b")],
            &[],
        ))
        .unwrap(),
    ));
    // Idempotent monoid.
    out.push(Arc::new(
        validate(&raw("E2", &["1"], &[("e", "1", "1")], &[("e", "e", "e")])).unwrap(),
    ));
    // Z/2 (has retractions).
    out.push(Arc::new(
        validate(&raw("C2", &["1"], &[("e", "1", "1")], &[("e", "e", "id_1")])).unwrap(),
    ));
    // Z/3.
    out.push(Arc::new(
        validate(&raw(
            "C3",
            &["1"],
            &[("e", "1", "1"), ("f", "1", "1")],
            &[
                ("e", "e", "f"),
                ("e", "f", "id_1"),
                ("f", "e", "id_1"),
                ("f", "f", "e"),
            ],
        ))
        .unwrap(),
    ));
    // Left-zero band adjoined to a unit: ee = e, ff = f, ef = e, fe = f.
    out.push(Arc::new(
        validate(&raw(
            "B3",
            &["1"],
            &[("e", "1", "1"), ("f", "1", "1")],
            &[
                ("e", "e", "e"),
                ("e", "f", "e"),
                ("f", "e", "f"),
                ("f", "f", "f"),
            ],
        ))
        .unwrap(),
    ));
    // Null monoid: ee = z, z absorbing.
    out.push(Arc::new(
        validate(&raw(
            "N3",
            &["1"],
            &[("e", "1", "1"), ("z", "1", "1")],
            &[
                ("e", "e", "z"),
                ("e", "z", "z"),
                ("z", "e", "z"),
                ("z", "z", "z"),
            ],
        ))
        .unwrap(),
    ));
    // Idempotent endomorphism absorbed by an outgoing arrow.
    out.push(Arc::new(
        validate(&raw(
            "EA",
            &["a", "b"],
            &[("e", "a", "a"), ("x", "a", "b")],
            &[("e", "e", "e"), ("x", "e", "x")],
        ))
        .unwrap(),
    ));
    // Disjoint unions.
    out.push(Arc::new(disjoint_union(&ordinal(0), &ordinal(0))));
    out.push(Arc::new(disjoint_union(&ordinal(1), &ordinal(0))));
    out
}

/// A random category from the corpus.
pub fn random_category(rng: &mut ChaCha8Rng) -> CatRef {
    let pool = archetypes();
    Arc::clone(pool.choose(rng).unwrap())
}

/// A random retraction-free category (for the reduced-complex invariant).
pub fn random_retraction_free_category(rng: &mut ChaCha8Rng) -> CatRef {
    loop {
        let c = random_category(rng);
        if c.is_retraction_free() {
            return c;
        }
    }
}

/// A random functor with the given target, built by rejection sampling over
/// morphism maps, falling back to a constant functor.
pub fn random_functor_between(rng: &mut ChaCha8Rng, c: &CatRef, d: &CatRef) -> Option<FunctorMap> {
    if d.is_empty() {
        return None;
    }
    for _ in 0..30 {
        let obj_map: Vec<ObjId> = c
            .objects()
            .map(|_| ObjId(rng.gen_range(0..d.object_count())))
            .collect();
        let mor_map: Option<Vec<MorId>> = c
            .morphisms()
            .map(|m| {
                if c.is_identity(m) {
                    return Some(d.identity_of(obj_map[c.dom(m).0]));
                }
                let hom = d.hom(obj_map[c.dom(m).0], obj_map[c.cod(m).0]);
                hom.choose(rng).copied()
            })
            .collect();
        let Some(mor_map) = mor_map else { continue };
        if let Ok(f) = FunctorMap::new("rnd".into(), Arc::clone(c), Arc::clone(d), obj_map, mor_map)
        {
            return Some(f);
        }
    }
    // Constant functor at a random object.
    let o = ObjId(rng.gen_range(0..d.object_count()));
    let obj_map = vec![o; c.object_count()];
    let mor_map = vec![d.identity_of(o); c.morphism_count()];
    FunctorMap::new("const".into(), Arc::clone(c), Arc::clone(d), obj_map, mor_map).ok()
}

/// A random functor between random corpus categories (target non-empty).
pub fn random_functor(rng: &mut ChaCha8Rng) -> FunctorMap {
    loop {
        let c = random_category(rng);
        let d = random_category(rng);
        if let Some(f) = random_functor_between(rng, &c, &d) {
            return f;
        }
    }
}

/// The representable diagram `Z[base(x, -)]`, always functorial.
pub fn representable_diagram(base: &CatRef, x: ObjId) -> Diagram {
    let rank: Vec<usize> = base.objects().map(|y| base.hom(x, y).len()).collect();
    let action: Vec<IntMatrix> = base
        .morphisms()
        .map(|m| {
            let src = base.hom(x, base.dom(m));
            let dst = base.hom(x, base.cod(m));
            let mut a = IntMatrix::zero(dst.len(), src.len());
            for (col, &alpha) in src.iter().enumerate() {
                let image = base.compose(m, alpha).unwrap();
                let row = dst.iter().position(|&b| b == image).unwrap();
                a.set(row, col, 1.into());
            }
            a
        })
        .collect();
    Diagram::new(Arc::clone(base), rank, action).unwrap()
}

/// A random functorial diagram on `base` with all ranks at most `max_rank`.
///
/// Tries fully random integer actions first (validated exhaustively), then
/// falls back to representables and constants, so every base category gets
/// some coefficient variety.
pub fn random_diagram(rng: &mut ChaCha8Rng, base: &CatRef, max_rank: usize) -> Diagram {
    for _ in 0..12 {
        let rank: Vec<usize> = base.objects().map(|_| rng.gen_range(0..=max_rank)).collect();
        let action: Vec<IntMatrix> = base
            .morphisms()
            .map(|m| {
                let rows = rank[base.cod(m).0];
                let cols = rank[base.dom(m).0];
                if base.is_identity(m) {
                    IntMatrix::identity(cols)
                } else {
                    let mut a = IntMatrix::zero(rows, cols);
                    for i in 0..rows {
                        for j in 0..cols {
                            a.set(i, j, rng.gen_range(-2i64..=2).into());
                        }
                    }
                    a
                }
            })
            .collect();
        if let Ok(d) = Diagram::new(Arc::clone(base), rank, action) {
            return d;
        }
    }
    if !base.is_empty() && rng.gen_bool(0.5) {
        let x = ObjId(rng.gen_range(0..base.object_count()));
        let d = representable_diagram(base, x);
        if base.objects().all(|o| d.rank_of(o) <= max_rank) {
            return d;
        }
    }
    constant_diagram(base, rng.gen_range(0..=1))
}
