//! Truncated coefficient diagrams on the simplex category of a nerve,
//! storing exactly the coface actions the Thomason complex consumes.

use crate::exactalg::IntMatrix;
use crate::fincat::{nerve_capped, CatRef, FunctorMap, PathTable};
use crate::{Error, Result};

/// A diagram of free abelian groups on the simplex category of `base`,
/// truncated at `max_dim`: a rank per path and a matrix per coface
/// `value(face_i s) -> value(s)`.
pub struct TruncatedSimplexDiagram {
    paths: PathTable,
    value: Vec<Vec<usize>>,
    /// coface[n-1][i][idx] for paths of degree `n >= 1` and `0 <= i <= n`.
    coface: Vec<Vec<Vec<IntMatrix>>>,
}

impl TruncatedSimplexDiagram {
    /// Verifies shapes and the cosimplicial coface identities wherever both
    /// sides are defined.
    pub fn new(
        paths: PathTable,
        value: Vec<Vec<usize>>,
        coface: Vec<Vec<Vec<IntMatrix>>>,
    ) -> Result<Self> {
        let max = paths.max_degree();
        if value.len() != max + 1 || coface.len() != max {
            return Err(Error::ShapeMismatch {
                context: "simplex diagram must cover every truncated degree".into(),
            });
        }
        for n in 0..=max {
            if value[n].len() != paths.count(n) {
                return Err(Error::ShapeMismatch {
                    context: format!("simplex diagram ranks at degree {n}"),
                });
            }
        }
        for n in 1..=max {
            if coface[n - 1].len() != n + 1 {
                return Err(Error::ShapeMismatch {
                    context: format!("need {} coface maps at degree {n}", n + 1),
                });
            }
            for (i, col) in coface[n - 1].iter().enumerate() {
                if col.len() != paths.count(n) {
                    return Err(Error::ShapeMismatch {
                        context: format!("coface {i} at degree {n}"),
                    });
                }
                for (idx, m) in col.iter().enumerate() {
                    let src = value[n - 1][paths.face(n, i, idx)];
                    let dst = value[n][idx];
                    if m.rows() != dst || m.cols() != src {
                        return Err(Error::ShapeMismatch {
                            context: format!("coface {i} of path {idx} at degree {n}"),
                        });
                    }
                }
            }
        }
        let d = TruncatedSimplexDiagram {
            paths,
            value,
            coface,
        };
        d.check_cosimplicial()?;
        Ok(d)
    }

    fn check_cosimplicial(&self) -> Result<()> {
        for n in 2..=self.paths.max_degree() {
            for idx in 0..self.paths.count(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let fj = self.paths.face(n, j, idx);
                        let fi = self.paths.face(n, i, idx);
                        let lhs = self.coface_of(n, j, idx).mul(self.coface_of(n - 1, i, fj));
                        let rhs =
                            self.coface_of(n, i, idx).mul(self.coface_of(n - 1, j - 1, fi));
                        if lhs != rhs {
                            return Err(Error::ShapeMismatch {
                                context: format!(
                                    "cosimplicial identity fails at degree {n}, path {idx}, (i,j)=({i},{j})"
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Constant coefficients `Z^r` with identity cofaces.
    pub fn constant(base: &CatRef, max_dim: usize, r: usize, cap: usize) -> Result<Self> {
        let paths = nerve_capped(base, max_dim, cap)?;
        let value: Vec<Vec<usize>> = (0..=max_dim).map(|n| vec![r; paths.count(n)]).collect();
        let coface: Vec<Vec<Vec<IntMatrix>>> = (1..=max_dim)
            .map(|n| vec![vec![IntMatrix::identity(r); paths.count(n)]; n + 1])
            .collect();
        TruncatedSimplexDiagram::new(paths, value, coface)
    }

    /// Inverse image along the simplex-level functor of `f`: the value at a
    /// path of the source is the value at its image path.
    pub fn pullback(
        f: &FunctorMap,
        g: &TruncatedSimplexDiagram,
        max_dim: usize,
        cap: usize,
    ) -> Result<Self> {
        if max_dim > g.max_dim() {
            return Err(Error::TruncationTooShallow {
                max_dim: g.max_dim(),
                needed: max_dim,
            });
        }
        if **f.target() != **g.base() {
            return Err(Error::BaseMismatch {
                context: "simplex-diagram pullback".into(),
            });
        }
        let paths = nerve_capped(f.source(), max_dim, cap)?;
        let mut value = Vec::with_capacity(max_dim + 1);
        let mut image: Vec<Vec<usize>> = Vec::with_capacity(max_dim + 1);
        for n in 0..=max_dim {
            let idxs: Vec<usize> = paths
                .paths(n)
                .iter()
                .map(|p| g.paths.index_of(&p.map(f)).expect("image path enumerated"))
                .collect();
            value.push(idxs.iter().map(|&i| g.value[n][i]).collect());
            image.push(idxs);
        }
        let coface: Vec<Vec<Vec<IntMatrix>>> = (1..=max_dim)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        (0..paths.count(n))
                            .map(|idx| g.coface_of(n, i, image[n][idx]).clone())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TruncatedSimplexDiagram::new(paths, value, coface)
    }

    pub fn base(&self) -> &CatRef {
        self.paths.base()
    }

    pub fn max_dim(&self) -> usize {
        self.paths.max_degree()
    }

    pub fn paths(&self) -> &PathTable {
        &self.paths
    }

    pub fn value_of(&self, n: usize, idx: usize) -> usize {
        self.value[n][idx]
    }

    pub fn coface_of(&self, n: usize, i: usize, idx: usize) -> &IntMatrix {
        &self.coface[n - 1][i][idx]
    }
}
