//! Left Kan extensions along a functor, their derived values, and the
//! adjoint comparison maps used by the preservation criteria.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    colimit_relations, object_sum, pullback_diagram, zc_bimodule, Diagram, ObjectSum,
};
use crate::exactalg::{group_hom, AbGroupStructure, CokernelPresentation, GroupHom, IntMatrix};
use crate::fincat::{comma, CommaCat, CommaSide, FunctorMap, MorId, ObjId};
use crate::{Error, Result};

/// The comma category over one anchor object together with the packed
/// colimit presentation of `F o Q_d` over it.
pub struct LanAnchor {
    pub comma: CommaCat,
    pub pulled: Diagram,
    pub sum: ObjectSum,
    pub presentation: CokernelPresentation,
}

impl LanAnchor {
    /// Index of the comma object `(c, beta)`.
    fn object_index(&self) -> HashMap<(ObjId, MorId), usize> {
        self.comma
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| ((o.c, o.beta), i))
            .collect()
    }
}

/// Computes the colimit presentation of `F o Q_d` over the left comma
/// category of `f` at the anchor `d`.
pub fn lan_anchor(f: &FunctorMap, big_f: &Diagram, d: ObjId) -> Result<LanAnchor> {
    if **f.source() != **big_f.base() {
        return Err(Error::BaseMismatch {
            context: format!("left Kan extension along {}", f.name()),
        });
    }
    let comma = comma(f, d, CommaSide::Left);
    let pulled = pullback_diagram(&comma.projection, big_f)?;
    let sum = object_sum(&pulled);
    let relations = colimit_relations(&pulled, &sum);
    let presentation = CokernelPresentation::new(&relations);
    Ok(LanAnchor {
        comma,
        pulled,
        sum,
        presentation,
    })
}

/// The left Kan extension `Lan^f F` as a diagram on the target.
///
/// Values are the colimits over the comma categories; the action of a target
/// morphism pushes representatives forward along post-composition. Values
/// with torsion cannot be expressed as a free-valued diagram and are
/// rejected.
pub fn lan(f: &FunctorMap, big_f: &Diagram) -> Result<Diagram> {
    let target = f.target();
    let anchors: Vec<LanAnchor> = target
        .objects()
        .map(|d| lan_anchor(f, big_f, d))
        .collect::<Result<_>>()?;
    let mut rank = Vec::with_capacity(anchors.len());
    for (d, anchor) in target.objects().zip(&anchors) {
        let s = &anchor.presentation.structure;
        if !s.torsion.is_empty() {
            return Err(Error::LanNotFree {
                anchor: target.object_name(d).to_string(),
            });
        }
        rank.push(s.betti);
    }

    let indexes: Vec<HashMap<(ObjId, MorId), usize>> =
        anchors.iter().map(|a| a.object_index()).collect();
    let mut action = Vec::with_capacity(target.morphism_count());
    for delta in target.morphisms() {
        let d = target.dom(delta);
        let d2 = target.cod(delta);
        let src = &anchors[d.0];
        let dst = &anchors[d2.0];
        let mut mat = IntMatrix::zero(rank[d2.0], rank[d.0]);
        for g in 0..src.presentation.generator_count() {
            let x = src.presentation.representative(g);
            let mut y = vec![BigInt::zero(); dst.sum.total];
            for (oi, obj) in src.comma.objects.iter().enumerate() {
                let r = src.pulled.rank_of(ObjId(oi));
                if r == 0 {
                    continue;
                }
                let beta2 = target.compose_unchecked(delta, obj.beta);
                let ti = indexes[d2.0][&(obj.c, beta2)];
                for j in 0..r {
                    let v = &x[src.sum.offsets[oi] + j];
                    if !v.is_zero() {
                        y[dst.sum.offsets[ti] + j] += v;
                    }
                }
            }
            for (i, v) in dst.presentation.class_of(&y).into_iter().enumerate() {
                mat.set(i, g, v);
            }
        }
        action.push(mat);
    }
    Diagram::new(Arc::clone(target), rank, action)
}

/// Values of the derived left Kan extension `Lan^f_q F` on every target
/// object: the q-th homology of the comma category with coefficients
/// `F o Q_d`.
pub fn derived_lan_values(
    f: &FunctorMap,
    big_f: &Diagram,
    q: usize,
    cap: usize,
) -> Result<Vec<AbGroupStructure>> {
    if **f.source() != **big_f.base() {
        return Err(Error::BaseMismatch {
            context: format!("derived Kan extension along {}", f.name()),
        });
    }
    let target = f.target();
    let mut out = Vec::with_capacity(target.object_count());
    for d in target.objects() {
        let cc = comma(f, d, CommaSide::Left);
        let pulled = pullback_diagram(&cc.projection, big_f)?;
        let window = crate::cohom::homology_chain_complex(&cc.cat, &pulled, q, cap)?;
        out.push(crate::exactalg::homology_at(&window, q)?);
    }
    Ok(out)
}

fn check_unit(f: &FunctorMap, big_f: &Diagram, t: &Diagram, units: &[IntMatrix]) -> Result<()> {
    let src = f.source();
    if units.len() != src.object_count() {
        return Err(Error::ShapeMismatch {
            context: "one unit component per source object".into(),
        });
    }
    for c in src.objects() {
        let u = &units[c.0];
        if u.rows() != t.rank_of(f.apply_obj(c)) || u.cols() != big_f.rank_of(c) {
            return Err(Error::ShapeMismatch {
                context: format!("unit component at {}", src.object_name(c)),
            });
        }
    }
    for alpha in src.morphisms() {
        let c = src.dom(alpha);
        let c2 = src.cod(alpha);
        let lhs = units[c2.0].mul(big_f.action_of(alpha));
        let rhs = t.action_of(f.apply_mor(alpha)).mul(&units[c.0]);
        if lhs != rhs {
            return Err(Error::NotAFunctor {
                reason: format!(
                    "comparison unit is not natural at {}",
                    src.morphism_name(alpha)
                ),
            });
        }
    }
    Ok(())
}

/// The adjoint comparison `Lan^f F (d) -> T(d)` for an explicit unit
/// `F -> T o f`, with exact iso/mono/epi flags per target object.
pub fn compare_to_with_unit(
    f: &FunctorMap,
    big_f: &Diagram,
    t: &Diagram,
    units: &[IntMatrix],
) -> Result<Vec<(ObjId, GroupHom)>> {
    if **f.source() != **big_f.base() {
        return Err(Error::BaseMismatch {
            context: "comparison source diagram".into(),
        });
    }
    if **f.target() != **t.base() {
        return Err(Error::BaseMismatch {
            context: "comparison target diagram".into(),
        });
    }
    check_unit(f, big_f, t, units)?;
    let target = f.target();
    let mut out = Vec::with_capacity(target.object_count());
    for d in target.objects() {
        let anchor = lan_anchor(f, big_f, d)?;
        let td_rank = t.rank_of(d);
        let gens = anchor.presentation.generator_count();
        let mut mat = IntMatrix::zero(td_rank, gens);
        for g in 0..gens {
            let x = anchor.presentation.representative(g);
            let mut val = vec![BigInt::zero(); td_rank];
            for (oi, obj) in anchor.comma.objects.iter().enumerate() {
                let r = anchor.pulled.rank_of(ObjId(oi));
                if r == 0 {
                    continue;
                }
                let slice = &x[anchor.sum.offsets[oi]..anchor.sum.offsets[oi] + r];
                if slice.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let lifted = units[obj.c.0].apply(slice);
                let pushed = t.action_of(obj.beta).apply(&lifted);
                for (i, v) in pushed.into_iter().enumerate() {
                    val[i] += v;
                }
            }
            for (i, v) in val.into_iter().enumerate() {
                mat.set(i, g, v);
            }
        }
        out.push((
            d,
            group_hom(
                anchor.presentation.structure.clone(),
                AbGroupStructure::free(td_rank),
                mat,
            ),
        ));
    }
    Ok(out)
}

/// The comparison map with the canonical unit. Canonical units exist for the
/// constant-Z pair (the all-ones unit); any other pair needs
/// [`compare_to_with_unit`] or [`zc_comparison`].
pub fn compare_to(
    f: &FunctorMap,
    big_f: &Diagram,
    t: &Diagram,
) -> Result<Vec<(ObjId, GroupHom)>> {
    let is_constant_one = |d: &Diagram| {
        d.base().objects().all(|o| d.rank_of(o) == 1)
            && d.base()
                .morphisms()
                .all(|m| *d.action_of(m) == IntMatrix::identity(1))
    };
    if is_constant_one(big_f) && is_constant_one(t) {
        let units = vec![IntMatrix::identity(1); f.source().object_count()];
        return compare_to_with_unit(f, big_f, t, &units);
    }
    Err(Error::NoCanonicalUnit)
}

/// The Hochschild-Mitchell comparison data for a base functor `f: C -> D`:
/// the functor `f^op x f`, both `ZC` bimodules, and the per-object-pair
/// comparison `Lan^{f^op x f} ZC -> ZD`.
pub struct ZcComparison {
    pub functor: FunctorMap,
    pub zc_source: Diagram,
    pub zc_target: Diagram,
    pub per_object: Vec<(ObjId, GroupHom)>,
}

/// Builds the canonical comparison `Lan^{f^op x f} ZC -> ZD`, whose unit
/// sends a basis morphism `m` to `f(m)`.
pub fn zc_comparison(f: &FunctorMap) -> Result<ZcComparison> {
    let c = f.source();
    let d = f.target();
    let zc_source = zc_bimodule(c);
    let zc_target = zc_bimodule(d);
    let g = f.op_times_self(zc_source.base(), zc_target.base())?;

    let nobj = c.object_count();
    let mut units = Vec::with_capacity(zc_source.base().object_count());
    for i in 0..zc_source.base().object_count() {
        let a = ObjId(i / nobj);
        let b = ObjId(i % nobj);
        let src_basis = c.hom(a, b);
        let dst_basis = d.hom(f.apply_obj(a), f.apply_obj(b));
        let mut u = IntMatrix::zero(dst_basis.len(), src_basis.len());
        for (col, &m) in src_basis.iter().enumerate() {
            let row = dst_basis
                .iter()
                .position(|&x| x == f.apply_mor(m))
                .expect("functor image lies in the image hom-set");
            u.set(row, col, BigInt::from(1));
        }
        units.push(u);
    }
    let per_object = compare_to_with_unit(&g, &zc_source, &zc_target, &units)?;
    Ok(ZcComparison {
        functor: g,
        zc_source,
        zc_target,
        per_object,
    })
}
