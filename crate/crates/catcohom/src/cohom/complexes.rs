//! The path (co)chain complexes: derived-limit cochains, the reduced
//! subcomplex, homology chains, and integral nerve homology.

use num_bigint::BigInt;

use crate::coeff::Diagram;
use crate::exactalg::{homology_at, AbGroupStructure, ComplexWindow, IntMatrix, Orientation};
use crate::fincat::{nerve_capped, CatRef, PathTable};
use crate::{Error, Result};

/// Offsets of a direct sum indexed by the paths of one degree.
pub(crate) struct DegreeBasis {
    pub offsets: Vec<usize>,
    pub total: usize,
}

pub(crate) fn degree_basis(counts: impl Iterator<Item = usize>) -> DegreeBasis {
    let mut offsets = Vec::new();
    let mut total = 0;
    for c in counts {
        offsets.push(total);
        total += c;
    }
    DegreeBasis { offsets, total }
}

fn check_base(c: &CatRef, g: &Diagram, what: &str) -> Result<()> {
    if **c != **g.base() {
        return Err(Error::BaseMismatch {
            context: what.to_string(),
        });
    }
    Ok(())
}

/// The cochain complex `C^n = prod over n-paths of G(c_n)` with the
/// alternating-face differential, on degrees `0..=N+1` so that `H^0..H^N`
/// are all computable from the window.
pub fn lim_cochain_complex(
    c: &CatRef,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    lim_complex_parts(c, g, max_degree, cap).map(|(w, _, _)| w)
}

pub(crate) fn lim_complex_parts(
    c: &CatRef,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<(ComplexWindow, PathTable, Vec<DegreeBasis>)> {
    check_base(c, g, "derived-limit cochain complex")?;
    if max_degree < 1 {
        return Err(Error::DegreeOutOfWindow {
            degree: max_degree,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let hi = max_degree + 1;
    let table = nerve_capped(c, hi, cap)?;
    let rank_at = |n: usize, idx: usize| g.rank_of(table.path(n, idx).end(c));
    let bases: Vec<DegreeBasis> = (0..=hi)
        .map(|n| degree_basis((0..table.count(n)).map(|i| rank_at(n, i))))
        .collect();

    let mut diffs = Vec::with_capacity(hi);
    for n in 0..hi {
        let mut d = IntMatrix::zero(bases[n + 1].total, bases[n].total);
        for q in 0..table.count(n + 1) {
            let re = rank_at(n + 1, q);
            if re == 0 {
                continue;
            }
            let row0 = bases[n + 1].offsets[q];
            // Faces 0..=n keep the endpoint; the component is copied.
            for i in 0..=n {
                let face = table.face(n + 1, i, q);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let col0 = bases[n].offsets[face];
                for k in 0..re {
                    d.add_to(row0 + k, col0 + k, &BigInt::from(sign));
                }
            }
            // Face n+1 drops the last arrow; the coefficient acts.
            let face = table.face(n + 1, n + 1, q);
            let last = *table.path(n + 1, q).mors.last().unwrap();
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let act = g.action_of(last);
            let col0 = bases[n].offsets[face];
            for (r, col, v) in act.nonzeros() {
                d.add_to(row0 + r, col0 + col, &(v * BigInt::from(sign)));
            }
        }
        diffs.push(d);
    }
    let window = ComplexWindow::new(
        0,
        hi,
        bases.iter().map(|b| b.total).collect(),
        diffs,
        Orientation::Cochain,
    )?;
    Ok((window, table, bases))
}

/// The reduced subcomplex over identity-free paths; defined exactly for
/// retraction-free categories, where it has the same cohomology.
pub fn reduced_cochain_complex(
    c: &CatRef,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    check_base(c, g, "reduced cochain complex")?;
    if !c.is_retraction_free() {
        return Err(Error::HasRetractions);
    }
    if max_degree < 1 {
        return Err(Error::DegreeOutOfWindow {
            degree: max_degree,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let hi = max_degree + 1;
    let table = nerve_capped(c, hi, cap)?;
    // Reduced basis per degree: identity-free paths only, with a back map
    // from full path index to reduced slot.
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(hi + 1);
    let mut slot: Vec<Vec<Option<usize>>> = Vec::with_capacity(hi + 1);
    for n in 0..=hi {
        let k = table.identity_free(n);
        let mut s = vec![None; table.count(n)];
        for (pos, &idx) in k.iter().enumerate() {
            s[idx] = Some(pos);
        }
        keep.push(k);
        slot.push(s);
    }
    let rank_at = |n: usize, idx: usize| g.rank_of(table.path(n, idx).end(c));
    let bases: Vec<DegreeBasis> = (0..=hi)
        .map(|n| degree_basis(keep[n].iter().map(|&i| rank_at(n, i))))
        .collect();

    let mut diffs = Vec::with_capacity(hi);
    for n in 0..hi {
        let mut d = IntMatrix::zero(bases[n + 1].total, bases[n].total);
        for (qpos, &q) in keep[n + 1].iter().enumerate() {
            let re = rank_at(n + 1, q);
            if re == 0 {
                continue;
            }
            let row0 = bases[n + 1].offsets[qpos];
            for i in 0..=n {
                let face = table.face(n + 1, i, q);
                // Retraction-freeness keeps interior faces identity-free.
                let fpos = slot[n][face].expect("face of an identity-free path");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let col0 = bases[n].offsets[fpos];
                for k in 0..re {
                    d.add_to(row0 + k, col0 + k, &BigInt::from(sign));
                }
            }
            let face = table.face(n + 1, n + 1, q);
            let fpos = slot[n][face].expect("truncated path is identity-free");
            let last = *table.path(n + 1, q).mors.last().unwrap();
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let act = g.action_of(last);
            let col0 = bases[n].offsets[fpos];
            for (r, col, v) in act.nonzeros() {
                d.add_to(row0 + r, col0 + col, &(v * BigInt::from(sign)));
            }
        }
        diffs.push(d);
    }
    ComplexWindow::new(
        0,
        hi,
        bases.iter().map(|b| b.total).collect(),
        diffs,
        Orientation::Cochain,
    )
}

/// The chain complex `C_n = sum over n-paths of F(c_0)`, on degrees
/// `0..=N+1`.
pub fn homology_chain_complex(
    c: &CatRef,
    f: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    check_base(c, f, "homology chain complex")?;
    let hi = max_degree + 1;
    let table = nerve_capped(c, hi, cap)?;
    let rank_at = |n: usize, idx: usize| f.rank_of(table.path(n, idx).start);
    let bases: Vec<DegreeBasis> = (0..=hi)
        .map(|n| degree_basis((0..table.count(n)).map(|i| rank_at(n, i))))
        .collect();

    let mut diffs = Vec::with_capacity(hi);
    for n in 0..hi {
        // d_{n+1}: C_{n+1} -> C_n.
        let mut d = IntMatrix::zero(bases[n].total, bases[n + 1].total);
        for q in 0..table.count(n + 1) {
            let rq = rank_at(n + 1, q);
            if rq == 0 {
                continue;
            }
            let col0 = bases[n + 1].offsets[q];
            // Face 0 drops the first arrow and pushes the coefficient.
            let face = table.face(n + 1, 0, q);
            let first = table.path(n + 1, q).mors[0];
            let act = f.action_of(first);
            let row0 = bases[n].offsets[face];
            for (r, col, v) in act.nonzeros() {
                d.add_to(row0 + r, col0 + col, v);
            }
            for i in 1..=n + 1 {
                let face = table.face(n + 1, i, q);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let row0 = bases[n].offsets[face];
                for k in 0..rq {
                    d.add_to(row0 + k, col0 + k, &BigInt::from(sign));
                }
            }
        }
        diffs.push(d);
    }
    ComplexWindow::new(
        0,
        hi,
        bases.iter().map(|b| b.total).collect(),
        diffs,
        Orientation::Chain,
    )
}

/// The normalized integral chain complex of the nerve (identity-free paths,
/// constant Z coefficients), on degrees `0..=N+1`.
pub fn nerve_chain_complex(c: &CatRef, max_degree: usize, cap: usize) -> Result<ComplexWindow> {
    let hi = max_degree + 1;
    let table = nerve_capped(c, hi, cap)?;
    normalized_window(&table, hi)
}

fn normalized_window(table: &PathTable, hi: usize) -> Result<ComplexWindow> {
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(hi + 1);
    let mut slot: Vec<Vec<Option<usize>>> = Vec::with_capacity(hi + 1);
    for n in 0..=hi {
        let k = table.nondegenerate(n);
        let mut s = vec![None; table.count(n)];
        for (pos, &idx) in k.iter().enumerate() {
            s[idx] = Some(pos);
        }
        keep.push(k);
        slot.push(s);
    }
    let mut diffs = Vec::with_capacity(hi);
    for n in 0..hi {
        let mut d = IntMatrix::zero(keep[n].len(), keep[n + 1].len());
        for (qpos, &q) in keep[n + 1].iter().enumerate() {
            for i in 0..=n + 1 {
                let face = table.face(n + 1, i, q);
                // Degenerate faces are zero in the normalized complex.
                if let Some(fpos) = slot[n][face] {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.add_to(fpos, qpos, &BigInt::from(sign));
                }
            }
        }
        diffs.push(d);
    }
    ComplexWindow::new(
        0,
        hi,
        keep.iter().map(|k| k.len()).collect(),
        diffs,
        Orientation::Chain,
    )
}

/// Integral homology of the nerve, computed on the normalized complex.
pub fn nerve_integral_homology(c: &CatRef, n: usize, cap: usize) -> Result<AbGroupStructure> {
    let window = nerve_chain_complex(c, n, cap)?;
    homology_at(&window, n)
}

/// The unnormalized nerve chain complex (all paths), for cross-checking the
/// normalized computation.
pub fn nerve_chain_complex_unnormalized(
    c: &CatRef,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    let one = crate::coeff::constant_diagram(c, 1);
    homology_chain_complex(c, &one, max_degree, cap)
}
