//! Canonical restriction maps: precompose cochains with a functor on paths,
//! then take the induced map on cohomology.

use num_bigint::BigInt;
use num_traits::One;

use super::bw::bw_complex_parts;
use super::complexes::{lim_complex_parts, DegreeBasis};
use super::thomason::thomason_cochain_complex;
use crate::coeff::{pullback_diagram, Diagram, TruncatedSimplexDiagram};
use crate::exactalg::{induced_homology_map, GroupHom, IntMatrix};
use crate::fincat::{factorization, factorization_of_functor, FunctorMap, PathTable};
use crate::{Error, Result};

fn path_chainmap(
    f: &FunctorMap,
    src_table: &PathTable,
    src_bases: &[DegreeBasis],
    dst_table: &PathTable,
    dst_bases: &[DegreeBasis],
    dst_rank: impl Fn(usize, usize) -> usize,
    hi: usize,
) -> Vec<IntMatrix> {
    let mut chainmap = Vec::with_capacity(hi + 1);
    for k in 0..=hi {
        let mut m = IntMatrix::zero(dst_bases[k].total, src_bases[k].total);
        for idx in 0..dst_table.count(k) {
            let p = dst_table.path(k, idx);
            let img = src_table
                .index_of(&p.map(f))
                .expect("image path is enumerated in the source nerve");
            let r = dst_rank(k, idx);
            let row0 = dst_bases[k].offsets[idx];
            let col0 = src_bases[k].offsets[img];
            for j in 0..r {
                m.set(row0 + j, col0 + j, BigInt::one());
            }
        }
        chainmap.push(m);
    }
    chainmap
}

/// The canonical map `H^n(D, G) -> H^n(C, G o f)` for derived-limit
/// cohomology, with exact flags.
pub fn restriction_map_lim(
    f: &FunctorMap,
    g: &Diagram,
    n: usize,
    cap: usize,
) -> Result<GroupHom> {
    if **f.target() != **g.base() {
        return Err(Error::BaseMismatch {
            context: "restriction coefficients must live on the functor target".into(),
        });
    }
    let max_degree = n.max(1);
    let (src_win, src_table, src_bases) = lim_complex_parts(f.target(), g, max_degree, cap)?;
    let gf = pullback_diagram(f, g)?;
    let (dst_win, dst_table, dst_bases) = lim_complex_parts(f.source(), &gf, max_degree, cap)?;
    let chainmap = path_chainmap(
        f,
        &src_table,
        &src_bases,
        &dst_table,
        &dst_bases,
        |k, idx| gf.rank_of(dst_table.path(k, idx).end(f.source())),
        max_degree + 1,
    );
    induced_homology_map(&src_win, &dst_win, &chainmap, n)
}

/// The canonical map `H^n_BW(D, G) -> H^n_BW(C, G o Ff)` for natural-system
/// coefficients.
pub fn restriction_map_bw(
    f: &FunctorMap,
    g: &Diagram,
    n: usize,
    cap: usize,
) -> Result<GroupHom> {
    let fact_c = factorization(f.source());
    let fact_d = factorization(f.target());
    if **g.base() != *fact_d.cat {
        return Err(Error::BaseMismatch {
            context: "restriction coefficients must be a natural system on the target".into(),
        });
    }
    let ff = factorization_of_functor(f, &fact_c, &fact_d)?;
    let gff = pullback_diagram(&ff, g)?;
    let max_degree = n.max(1);
    let (src_win, src_table, src_bases) =
        bw_complex_parts(f.target(), &fact_d, g, max_degree, cap)?;
    let (dst_win, dst_table, dst_bases) =
        bw_complex_parts(f.source(), &fact_c, &gff, max_degree, cap)?;
    let src_cat = f.source().clone();
    let chainmap = path_chainmap(
        f,
        &src_table,
        &src_bases,
        &dst_table,
        &dst_bases,
        |k, idx| {
            let comp = dst_table.path(k, idx).composite(&src_cat);
            gff.rank_of(fact_c.object_for(comp))
        },
        max_degree + 1,
    );
    induced_homology_map(&src_win, &dst_win, &chainmap, n)
}

/// The canonical map `H^n_T(D, G) -> H^n_T(C, G o (Delta|f))` for Thomason
/// coefficients.
pub fn restriction_map_thomason(
    f: &FunctorMap,
    g: &TruncatedSimplexDiagram,
    n: usize,
    cap: usize,
) -> Result<GroupHom> {
    if **f.target() != **g.base() {
        return Err(Error::BaseMismatch {
            context: "restriction coefficients must live over the target simplices".into(),
        });
    }
    let hi = n.max(1) + 1;
    if g.max_dim() < hi {
        return Err(Error::TruncationTooShallow {
            max_dim: g.max_dim(),
            needed: hi,
        });
    }
    let pulled = TruncatedSimplexDiagram::pullback(f, g, hi, cap)?;
    let src_win = thomason_cochain_complex(g, 0, hi)?;
    let dst_win = thomason_cochain_complex(&pulled, 0, hi)?;
    let src_bases: Vec<DegreeBasis> = (0..=hi)
        .map(|k| {
            super::complexes::degree_basis((0..g.paths().count(k)).map(|i| g.value_of(k, i)))
        })
        .collect();
    let dst_bases: Vec<DegreeBasis> = (0..=hi)
        .map(|k| {
            super::complexes::degree_basis(
                (0..pulled.paths().count(k)).map(|i| pulled.value_of(k, i)),
            )
        })
        .collect();
    let mut chainmap = Vec::with_capacity(hi + 1);
    for k in 0..=hi {
        let mut m = IntMatrix::zero(dst_bases[k].total, src_bases[k].total);
        for idx in 0..pulled.paths().count(k) {
            let p = pulled.paths().path(k, idx);
            let img = g
                .paths()
                .index_of(&p.map(f))
                .expect("image simplex is enumerated");
            let row0 = dst_bases[k].offsets[idx];
            let col0 = src_bases[k].offsets[img];
            for j in 0..pulled.value_of(k, idx) {
                m.set(row0 + j, col0 + j, BigInt::one());
            }
        }
        chainmap.push(m);
    }
    induced_homology_map(&src_win, &dst_win, &chainmap, n)
}
