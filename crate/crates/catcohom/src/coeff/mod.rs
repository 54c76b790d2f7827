//! Coefficient systems: diagrams of free finitely generated abelian groups
//! on a finite category, inverse images, the ZC bimodule, colimits, and
//! (derived) left Kan extensions.

mod kan;
mod simplex;

pub use kan::{
    compare_to, compare_to_with_unit, derived_lan_values, lan, lan_anchor, zc_comparison,
    LanAnchor, ZcComparison,
};
pub use simplex::TruncatedSimplexDiagram;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactalg::{AbGroupStructure, CokernelPresentation, IntMatrix};
use crate::fincat::{opposite, product, CatRef, FunctorMap, MorId, ObjId};
use crate::{Error, Result};

/// A diagram of free finitely generated abelian groups on a finite category:
/// a rank per object and an integer matrix per morphism.
///
/// Functoriality is checked exhaustively at construction.
#[derive(Clone, Debug)]
pub struct Diagram {
    base: CatRef,
    rank: Vec<usize>,
    action: Vec<IntMatrix>,
}

impl Diagram {
    pub fn new(base: CatRef, rank: Vec<usize>, action: Vec<IntMatrix>) -> Result<Self> {
        if rank.len() != base.object_count() || action.len() != base.morphism_count() {
            return Err(Error::ShapeMismatch {
                context: "diagram data must cover every object and morphism".into(),
            });
        }
        for m in base.morphisms() {
            let a = &action[m.0];
            if a.rows() != rank[base.cod(m).0] || a.cols() != rank[base.dom(m).0] {
                return Err(Error::ShapeMismatch {
                    context: format!(
                        "action of {} is {}x{}, expected {}x{}",
                        base.morphism_name(m),
                        a.rows(),
                        a.cols(),
                        rank[base.cod(m).0],
                        rank[base.dom(m).0]
                    ),
                });
            }
        }
        for o in base.objects() {
            if action[base.identity_of(o).0] != IntMatrix::identity(rank[o.0]) {
                return Err(Error::NotAFunctor {
                    reason: format!(
                        "action of id_{} is not the identity matrix",
                        base.object_name(o)
                    ),
                });
            }
        }
        for g in base.morphisms() {
            for f in base.morphisms() {
                if base.dom(g) != base.cod(f) {
                    continue;
                }
                let gf = base.compose_unchecked(g, f);
                if action[gf.0] != action[g.0].mul(&action[f.0]) {
                    return Err(Error::NotAFunctor {
                        reason: format!(
                            "action of {} o {} is not the composite action",
                            base.morphism_name(g),
                            base.morphism_name(f)
                        ),
                    });
                }
            }
        }
        Ok(Diagram { base, rank, action })
    }

    pub fn base(&self) -> &CatRef {
        &self.base
    }

    pub fn rank_of(&self, o: ObjId) -> usize {
        self.rank[o.0]
    }

    pub fn action_of(&self, m: MorId) -> &IntMatrix {
        &self.action[m.0]
    }

    pub fn total_rank(&self) -> usize {
        self.rank.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rank.iter().all(|&r| r == 0)
    }

    /// Rank-wise direct sum of two diagrams on the same base.
    pub fn direct_sum(&self, other: &Diagram) -> Result<Diagram> {
        if *self.base != *other.base {
            return Err(Error::BaseMismatch {
                context: "direct sum of diagrams".into(),
            });
        }
        let rank: Vec<usize> = self
            .rank
            .iter()
            .zip(&other.rank)
            .map(|(a, b)| a + b)
            .collect();
        let action: Vec<IntMatrix> = self
            .base
            .morphisms()
            .map(|m| {
                let a = &self.action[m.0];
                let b = &other.action[m.0];
                let mut out = IntMatrix::zero(
                    a.rows() + b.rows(),
                    a.cols() + b.cols(),
                );
                for (i, j, v) in a.nonzeros() {
                    out.set(i, j, v.clone());
                }
                for (i, j, v) in b.nonzeros() {
                    out.set(i + a.rows(), j + a.cols(), v.clone());
                }
                out
            })
            .collect();
        Diagram::new(Arc::clone(&self.base), rank, action)
    }
}

/// The constant diagram with value `Z^r` and identity actions.
pub fn constant_diagram(c: &CatRef, r: usize) -> Diagram {
    let rank = vec![r; c.object_count()];
    let action = vec![IntMatrix::identity(r); c.morphism_count()];
    Diagram {
        base: Arc::clone(c),
        rank,
        action,
    }
}

/// Inverse image `f*(G) = G o f`.
pub fn pullback_diagram(f: &FunctorMap, g: &Diagram) -> Result<Diagram> {
    if **f.target() != **g.base() {
        return Err(Error::BaseMismatch {
            context: format!("pullback of a diagram along {}", f.name()),
        });
    }
    let rank: Vec<usize> = f
        .source()
        .objects()
        .map(|o| g.rank_of(f.apply_obj(o)))
        .collect();
    let action: Vec<IntMatrix> = f
        .source()
        .morphisms()
        .map(|m| g.action_of(f.apply_mor(m)).clone())
        .collect();
    Ok(Diagram {
        base: Arc::clone(f.source()),
        rank,
        action,
    })
}

/// The bimodule `ZC` on `op(C) x C`: the free abelian group on each hom-set,
/// with `(alpha, beta)` acting by `m -> beta o m o alpha`.
pub fn zc_bimodule(c: &CatRef) -> Diagram {
    let op_c = opposite(c);
    let base = Arc::new(product(&op_c, c));
    let nobj = c.object_count();
    let nmor = c.morphism_count();
    let mut rank = vec![0usize; base.object_count()];
    // Basis of the value at (a, b): the hom-set C(a, b) in handle order.
    let mut basis: Vec<Vec<MorId>> = vec![Vec::new(); base.object_count()];
    for a in c.objects() {
        for b in c.objects() {
            let idx = a.0 * nobj + b.0;
            basis[idx] = c.hom(a, b);
            rank[idx] = basis[idx].len();
        }
    }
    let mut action = Vec::with_capacity(base.morphism_count());
    for m in base.morphisms() {
        // Product morphism (alpha in op(C), beta in C).
        let alpha = MorId(m.0 / nmor);
        let beta = MorId(m.0 % nmor);
        let src = base.dom(m);
        let dst = base.cod(m);
        let mut mat = IntMatrix::zero(rank[dst.0], rank[src.0]);
        for (col, &mor) in basis[src.0].iter().enumerate() {
            let image = c.compose_unchecked(beta, c.compose_unchecked(mor, alpha));
            let row = basis[dst.0]
                .iter()
                .position(|&x| x == image)
                .expect("image stays in the hom-set");
            mat.set(row, col, BigInt::one());
        }
        action.push(mat);
    }
    Diagram {
        base,
        rank,
        action,
    }
}

/// Packed direct sum over all objects with per-object offsets.
pub struct ObjectSum {
    pub offsets: Vec<usize>,
    pub total: usize,
}

pub(crate) fn object_sum(g: &Diagram) -> ObjectSum {
    let mut offsets = Vec::with_capacity(g.base.object_count());
    let mut total = 0;
    for o in g.base.objects() {
        offsets.push(total);
        total += g.rank_of(o);
    }
    ObjectSum { offsets, total }
}

/// The colimit relation matrix: for each non-identity morphism
/// `alpha: a -> b` and basis vector `x` of `G(a)`, the column
/// `G(alpha) x` at `b` minus `x` at `a`.
pub(crate) fn colimit_relations(g: &Diagram, sum: &ObjectSum) -> IntMatrix {
    let cols: usize = g
        .base
        .morphisms()
        .filter(|&m| !g.base.is_identity(m))
        .map(|m| g.rank_of(g.base.dom(m)))
        .sum();
    let mut mat = IntMatrix::zero(sum.total, cols);
    let mut col = 0;
    for m in g.base.morphisms() {
        if g.base.is_identity(m) {
            continue;
        }
        let a = g.base.dom(m);
        let b = g.base.cod(m);
        let act = g.action_of(m);
        for j in 0..g.rank_of(a) {
            for (i, jj, v) in act.nonzeros() {
                if jj == j {
                    mat.add_to(sum.offsets[b.0] + i, col, v);
                }
            }
            mat.add_to(sum.offsets[a.0] + j, col, &-BigInt::one());
            col += 1;
        }
    }
    mat
}

/// Colimit of the diagram: its structure and a cocone matrix per object
/// mapping `G(a)` into the colimit's generator coordinates.
pub fn colimit(g: &Diagram) -> (AbGroupStructure, Vec<IntMatrix>) {
    let sum = object_sum(g);
    let relations = colimit_relations(g, &sum);
    let pres = CokernelPresentation::new(&relations);
    let gens = pres.generator_count();
    let mut cocone = Vec::with_capacity(g.base.object_count());
    for o in g.base.objects() {
        let r = g.rank_of(o);
        let mut mat = IntMatrix::zero(gens, r);
        for j in 0..r {
            let mut x = vec![BigInt::from(0); sum.total];
            x[sum.offsets[o.0] + j] = BigInt::one();
            for (i, v) in pres.class_of(&x).into_iter().enumerate() {
                mat.set(i, j, v);
            }
        }
        cocone.push(mat);
    }
    (pres.structure.clone(), cocone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{ordinal, validate, RawCategory};

    fn v_category() -> CatRef {
        Arc::new(
            validate(&RawCategory {
                name: "V".into(),
                objects: vec!["a".into(), "b".into(), "c".into()],
                morphisms: vec![
                    ("alpha".into(), "a".into(), "c".into()),
                    ("beta".into(), "b".into(), "c".into()),
                ],
                composites: vec![],
            })
            .unwrap(),
        )
    }

    #[test]
    fn constant_diagram_is_functorial() {
        let v = v_category();
        let d = constant_diagram(&v, 2);
        assert!(Diagram::new(Arc::clone(d.base()), d.rank.clone(), d.action.clone()).is_ok());
        assert_eq!(d.rank_of(ObjId(0)), 2);
    }

    #[test]
    fn pullback_along_identity() {
        let v = v_category();
        let d = constant_diagram(&v, 1);
        let idv = FunctorMap::identity(&v);
        let p = pullback_diagram(&idv, &d).unwrap();
        assert_eq!(p.rank, d.rank);
    }

    #[test]
    fn zc_of_ordinals() {
        let zero = Arc::new(ordinal(0));
        let z = zc_bimodule(&zero);
        assert_eq!(z.rank, vec![1]);

        let one = Arc::new(ordinal(1));
        let z = zc_bimodule(&one);
        // Objects of op([1]) x [1] in order: (0,0), (0,1), (1,0), (1,1).
        assert_eq!(z.rank, vec![1, 1, 0, 1]);
        // Functoriality was checked by reconstructing the diagram.
        assert!(Diagram::new(Arc::clone(z.base()), z.rank.clone(), z.action.clone()).is_ok());
    }

    #[test]
    fn colimit_of_constant_on_connected_base() {
        let v = v_category();
        let (s, cocone) = colimit(&constant_diagram(&v, 1));
        assert_eq!(s, AbGroupStructure::free(1));
        for m in &cocone {
            assert_eq!(m.rows(), 1);
        }
    }

    #[test]
    fn colimit_over_empty_category() {
        let empty = Arc::new(
            validate(&RawCategory {
                name: "empty".into(),
                ..Default::default()
            })
            .unwrap(),
        );
        let (s, _) = colimit(&constant_diagram(&empty, 1));
        assert!(s.is_trivial());
    }

    #[test]
    fn colimit_of_skyscraper_on_v() {
        // A(c) = Z, A(a) = A(b) = 0: the colimit is Z.
        let v = v_category();
        let mut rank = vec![0, 0, 0];
        rank[v.object_by_name("c").unwrap().0] = 1;
        let action: Vec<IntMatrix> = v
            .morphisms()
            .map(|m| {
                if v.is_identity(m) {
                    IntMatrix::identity(rank[v.dom(m).0])
                } else {
                    IntMatrix::zero(rank[v.cod(m).0], rank[v.dom(m).0])
                }
            })
            .collect();
        let a = Diagram::new(Arc::clone(&v), rank, action).unwrap();
        let (s, _) = colimit(&a);
        assert_eq!(s, AbGroupStructure::free(1));
    }

    #[test]
    fn colimit_with_torsion() {
        // Parallel pair a => b with actions 1 and -1: coker has 2-torsion.
        let c = Arc::new(
            validate(&RawCategory {
                name: "pair".into(),
                objects: vec!["a".into(), "b".into()],
                morphisms: vec![
                    ("u".into(), "a".into(), "b".into()),
                    ("v".into(), "a".into(), "b".into()),
                ],
                composites: vec![],
            })
            .unwrap(),
        );
        let action = vec![
            IntMatrix::identity(1),
            IntMatrix::identity(1),
            IntMatrix::from_rows(&[vec![1]]),
            IntMatrix::from_rows(&[vec![-1]]),
        ];
        let d = Diagram::new(Arc::clone(&c), vec![1, 1], action).unwrap();
        let (s, _) = colimit(&d);
        assert_eq!(s.betti, 0);
        assert_eq!(s.torsion, vec![BigInt::from(2)]);
    }
}
