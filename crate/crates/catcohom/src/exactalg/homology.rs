use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::{invariant_factors, rank, snf_core};
use crate::{Error, Result};

/// A finitely generated abelian group in canonical form: free rank plus a
/// divisibility chain of torsion coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbGroupStructure {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroupStructure {
    pub fn trivial() -> Self {
        AbGroupStructure {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(betti: usize) -> Self {
        AbGroupStructure {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the fixed generator order: torsion first
    /// (ascending divisibility), then free.
    pub fn generator_count(&self) -> usize {
        self.betti + self.torsion.len()
    }

    /// Structure of `Z^ambient / L` where `L` has the given invariant factors.
    fn from_factors(ambient: usize, factors: &[BigInt]) -> Self {
        let nonzero = factors.iter().filter(|f| !f.is_zero()).count();
        let torsion: Vec<BigInt> = factors
            .iter()
            .filter(|f| !f.is_zero() && **f > BigInt::one())
            .cloned()
            .collect();
        AbGroupStructure {
            betti: ambient - nonzero,
            torsion,
        }
    }

    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion.iter().map(|t| t.to_string()).collect()
    }
}

impl fmt::Display for AbGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{}", b)),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Direction of the differentials in a [`ComplexWindow`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    /// `d_n : C_n -> C_{n-1}`
    Chain,
    /// `d^n : C^n -> C^{n+1}`
    Cochain,
}

/// A bounded window of a (co)chain complex of free Z-modules.
///
/// Degrees outside `[lo, hi]` are treated as zero; builders therefore emit
/// windows one degree wider than the highest degree they intend to query.
#[derive(Clone, Debug)]
pub struct ComplexWindow {
    lo: usize,
    hi: usize,
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
    orientation: Orientation,
}

impl ComplexWindow {
    /// `diffs[k]` connects degrees `lo+k` and `lo+k+1`; the orientation fixes
    /// the direction. Shape consistency and `d o d = 0` are verified.
    pub fn new(
        lo: usize,
        hi: usize,
        ranks: Vec<usize>,
        diffs: Vec<IntMatrix>,
        orientation: Orientation,
    ) -> Result<Self> {
        if hi < lo || ranks.len() != hi - lo + 1 || diffs.len() != hi - lo {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "window [{lo},{hi}] with {} ranks and {} differentials",
                    ranks.len(),
                    diffs.len()
                ),
            });
        }
        for (k, d) in diffs.iter().enumerate() {
            let (want_rows, want_cols) = match orientation {
                Orientation::Cochain => (ranks[k + 1], ranks[k]),
                Orientation::Chain => (ranks[k], ranks[k + 1]),
            };
            if d.rows() != want_rows || d.cols() != want_cols {
                return Err(Error::ShapeMismatch {
                    context: format!(
                        "differential at degree {} is {}x{}, expected {}x{}",
                        lo + k,
                        d.rows(),
                        d.cols(),
                        want_rows,
                        want_cols
                    ),
                });
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let composite = match orientation {
                Orientation::Cochain => diffs[k + 1].mul(&diffs[k]),
                Orientation::Chain => diffs[k].mul(&diffs[k + 1]),
            };
            if !composite.is_zero() {
                return Err(Error::ShapeMismatch {
                    context: format!("d o d != 0 between degrees {} and {}", lo + k, lo + k + 2),
                });
            }
        }
        Ok(ComplexWindow {
            lo,
            hi,
            ranks,
            diffs,
            orientation,
        })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn rank_at(&self, n: usize) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.ranks[n - self.lo]
        }
    }

    pub fn differential(&self, k: usize) -> &IntMatrix {
        &self.diffs[k]
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n < self.lo || n > self.hi {
            return Err(Error::DegreeOutOfWindow {
                degree: n,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }

    /// Differential leaving degree `n` (the zero map at the window edge).
    fn diff_out(&self, n: usize) -> IntMatrix {
        let r = self.rank_at(n);
        match self.orientation {
            Orientation::Cochain => {
                if n < self.hi {
                    self.diffs[n - self.lo].clone()
                } else {
                    IntMatrix::zero(0, r)
                }
            }
            Orientation::Chain => {
                if n > self.lo {
                    self.diffs[n - 1 - self.lo].clone()
                } else {
                    IntMatrix::zero(0, r)
                }
            }
        }
    }

    /// Differential arriving at degree `n` (the zero map at the window edge).
    fn diff_in(&self, n: usize) -> IntMatrix {
        let r = self.rank_at(n);
        match self.orientation {
            Orientation::Cochain => {
                if n > self.lo {
                    self.diffs[n - 1 - self.lo].clone()
                } else {
                    IntMatrix::zero(r, 0)
                }
            }
            Orientation::Chain => {
                if n < self.hi {
                    self.diffs[n - self.lo].clone()
                } else {
                    IntMatrix::zero(r, 0)
                }
            }
        }
    }
}

/// Homology (or cohomology, per orientation) of the window at degree `n`.
pub fn homology_at(window: &ComplexWindow, n: usize) -> Result<AbGroupStructure> {
    window.check_degree(n)?;
    let a = window.diff_out(n);
    let b = window.diff_in(n);
    let kernel_rank = window.rank_at(n) - rank(&a);
    let b_factors = invariant_factors(&b);
    let torsion: Vec<BigInt> = b_factors
        .iter()
        .filter(|f| **f > BigInt::one())
        .cloned()
        .collect();
    Ok(AbGroupStructure {
        betti: kernel_rank - b_factors.len(),
        torsion,
    })
}

/// Structure of `Z^rows / Im(A)`.
pub fn cokernel(a: &IntMatrix) -> AbGroupStructure {
    AbGroupStructure::from_factors(a.rows(), &invariant_factors(a))
}

/// Cokernel together with a generator system: `coords` maps an ambient vector
/// to its class in generator coordinates, `reps` embeds each generator back
/// into the ambient module.
pub struct CokernelPresentation {
    pub structure: AbGroupStructure,
    coords: IntMatrix,
    reps: IntMatrix,
    factors: Vec<BigInt>,
}

impl CokernelPresentation {
    pub fn new(a: &IntMatrix) -> Self {
        let m = a.rows();
        let core = snf_core(a, true);
        let mut factors = core.factors.clone();
        factors.resize(m, BigInt::zero());
        let keep: Vec<usize> = (0..m).filter(|&i| !factors[i].is_one()).collect();
        let kept_factors: Vec<BigInt> = keep.iter().map(|&i| factors[i].clone()).collect();
        let u = core.u.unwrap();
        let u_inv = core.u_inv.unwrap();
        let structure = AbGroupStructure {
            betti: kept_factors.iter().filter(|f| f.is_zero()).count(),
            torsion: kept_factors.iter().filter(|f| **f > BigInt::one()).cloned().collect(),
        };
        CokernelPresentation {
            structure,
            coords: u.select_rows(&keep),
            reps: u_inv.select_columns(&keep),
            factors: kept_factors,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.factors.len()
    }

    /// Class of an ambient vector in generator coordinates (torsion
    /// coordinates normalized into `[0, t)`).
    pub fn class_of(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.coords.apply(x);
        for (yi, f) in y.iter_mut().zip(&self.factors) {
            if *f > BigInt::one() {
                *yi = ((&*yi % f) + f) % f;
            }
        }
        y
    }

    /// Ambient representative of the i-th generator.
    pub fn representative(&self, i: usize) -> Vec<BigInt> {
        self.reps.column(i)
    }
}

/// Homology at a degree together with explicit generating cycles and a
/// coordinate map, fixing the coordinates used by [`GroupHom`] matrices.
///
/// Generators are the kernel-basis columns transformed by the SNF of the
/// inclusion `Im d_in` into `Ker d_out`; torsion generators come first.
pub struct HomologyBasis {
    pub structure: AbGroupStructure,
    ambient: usize,
    cycles: IntMatrix,
    kernel_coords: IntMatrix,
    ux: IntMatrix,
    keep: Vec<usize>,
    factors: Vec<BigInt>,
}

impl HomologyBasis {
    fn compute(window: &ComplexWindow, n: usize) -> Result<Self> {
        window.check_degree(n)?;
        let a = window.diff_out(n);
        let b = window.diff_in(n);
        let r = window.rank_at(n);

        let core_a = snf_core(&a, true);
        let mut a_factors = core_a.factors.clone();
        a_factors.resize(r, BigInt::zero());
        let kernel_idx: Vec<usize> = (0..r).filter(|&j| a_factors[j].is_zero()).collect();
        let v = core_a.v.unwrap();
        let v_inv = core_a.v_inv.unwrap();
        let kernel_basis = v.select_columns(&kernel_idx);
        let kernel_coords = v_inv.select_rows(&kernel_idx);
        let k = kernel_idx.len();

        // Express Im(b) in kernel coordinates; rows outside the kernel vanish
        // because d o d = 0.
        let x = kernel_coords.mul(&b);
        let core_x = snf_core(&x, true);
        let mut x_factors = core_x.factors.clone();
        x_factors.resize(k, BigInt::zero());
        let ux = core_x.u.unwrap();
        let ux_inv = core_x.u_inv.unwrap();

        let keep: Vec<usize> = (0..k).filter(|&i| !x_factors[i].is_one()).collect();
        let kept_factors: Vec<BigInt> = keep.iter().map(|&i| x_factors[i].clone()).collect();
        let structure = AbGroupStructure {
            betti: kept_factors.iter().filter(|f| f.is_zero()).count(),
            torsion: kept_factors
                .iter()
                .filter(|f| **f > BigInt::one())
                .cloned()
                .collect(),
        };
        let cycles = kernel_basis.mul(&ux_inv).select_columns(&keep);
        Ok(HomologyBasis {
            structure,
            ambient: r,
            cycles,
            kernel_coords,
            ux,
            keep,
            factors: kept_factors,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.keep.len()
    }

    /// Generating cycle for the i-th generator, as an ambient vector.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.cycles.column(i)
    }

    /// Coordinates of a cycle in the generator system.
    pub fn class_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(z.len(), self.ambient, "cycle has the wrong ambient rank");
        let y = self.kernel_coords.apply(z);
        let w = self.ux.apply(&y);
        let mut out: Vec<BigInt> = self.keep.iter().map(|&i| w[i].clone()).collect();
        for (yi, f) in out.iter_mut().zip(&self.factors) {
            if *f > BigInt::one() {
                *yi = ((&*yi % f) + f) % f;
            }
        }
        out
    }
}

/// Homology with an explicit generator system.
pub fn homology_basis_at(window: &ComplexWindow, n: usize) -> Result<HomologyBasis> {
    HomologyBasis::compute(window, n)
}

/// A homomorphism between two computed abelian groups, in their generator
/// coordinates, with exact iso/mono/epi flags.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: AbGroupStructure,
    pub target: AbGroupStructure,
    pub matrix: IntMatrix,
    pub is_iso: bool,
    pub is_mono: bool,
    pub is_epi: bool,
}

/// Builds a [`GroupHom`] from a generator-coordinate matrix, deciding the
/// flags by SNF of the relation-augmented matrix.
pub fn group_hom(
    source: AbGroupStructure,
    target: AbGroupStructure,
    matrix: IntMatrix,
) -> GroupHom {
    let k1 = source.generator_count();
    let k2 = target.generator_count();
    assert_eq!(matrix.rows(), k2, "group hom matrix rows");
    assert_eq!(matrix.cols(), k1, "group hom matrix cols");
    let tau1 = source.torsion.len();
    let tau2 = target.torsion.len();

    // Relations of the target: t_j * e_j for each torsion generator.
    let mut r2 = IntMatrix::zero(k2, tau2);
    for (j, t) in target.torsion.iter().enumerate() {
        r2.set(j, j, t.clone());
    }
    let augmented = matrix.hstack(&r2);

    // Epi: the images of the generators, together with the target relations,
    // must generate all of Z^k2.
    let factors = invariant_factors(&augmented);
    let is_epi = factors.len() == k2 && factors.iter().all(|f| f.is_one());

    // Mono: every lattice vector mapping into the target relations must
    // already be trivial in the source.
    let core = snf_core(&augmented, true);
    let total_cols = k1 + tau2;
    let mut aug_factors = core.factors.clone();
    aug_factors.resize(total_cols, BigInt::zero());
    let kernel_idx: Vec<usize> = (0..total_cols).filter(|&j| aug_factors[j].is_zero()).collect();
    let kernel = core.v.unwrap().select_columns(&kernel_idx);
    let mut is_mono = true;
    'cols: for c in 0..kernel.cols() {
        let col = kernel.column(c);
        for j in 0..k1 {
            let trivial = if j < tau1 {
                (&col[j] % &source.torsion[j]).is_zero()
            } else {
                col[j].is_zero()
            };
            if !trivial {
                is_mono = false;
                break 'cols;
            }
        }
    }

    GroupHom {
        is_iso: is_mono && is_epi,
        is_mono,
        is_epi,
        source,
        target,
        matrix,
    }
}

/// Induced map on homology of a degree-wise chain map between two windows of
/// the same shape. The chain map must commute with the differentials.
pub fn induced_homology_map(
    src: &ComplexWindow,
    dst: &ComplexWindow,
    chainmap: &[IntMatrix],
    n: usize,
) -> Result<GroupHom> {
    if src.lo != dst.lo || src.hi != dst.hi || src.orientation != dst.orientation {
        return Err(Error::ShapeMismatch {
            context: "chain map between windows of different shape".into(),
        });
    }
    if chainmap.len() != src.hi - src.lo + 1 {
        return Err(Error::ShapeMismatch {
            context: format!(
                "chain map has {} components for window [{}, {}]",
                chainmap.len(),
                src.lo,
                src.hi
            ),
        });
    }
    for (k, f) in chainmap.iter().enumerate() {
        if f.rows() != dst.ranks[k] || f.cols() != src.ranks[k] {
            return Err(Error::ShapeMismatch {
                context: format!("chain map component at degree {}", src.lo + k),
            });
        }
    }
    for k in 0..src.hi - src.lo {
        let ok = match src.orientation {
            Orientation::Cochain => {
                chainmap[k + 1].mul(&src.diffs[k]) == dst.diffs[k].mul(&chainmap[k])
            }
            Orientation::Chain => {
                chainmap[k].mul(&src.diffs[k]) == dst.diffs[k].mul(&chainmap[k + 1])
            }
        };
        if !ok {
            return Err(Error::NotAChainMap { degree: src.lo + k });
        }
    }
    src.check_degree(n)?;

    let basis_src = homology_basis_at(src, n)?;
    let basis_dst = homology_basis_at(dst, n)?;
    let f = &chainmap[n - src.lo];
    let mut matrix = IntMatrix::zero(basis_dst.generator_count(), basis_src.generator_count());
    for g in 0..basis_src.generator_count() {
        let image = f.apply(&basis_src.generator(g));
        let coords = basis_dst.class_of(&image);
        for (i, v) in coords.into_iter().enumerate() {
            matrix.set(i, g, v);
        }
    }
    Ok(group_hom(basis_src.structure, basis_dst.structure, matrix))
}
