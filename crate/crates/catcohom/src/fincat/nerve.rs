//! Nerve enumeration: composable paths per degree with face and degeneracy
//! index maps.

use std::collections::HashMap;

use super::category::{CatRef, FinCat, MorId, ObjId};
use super::functor::FunctorMap;
use crate::{Error, Result};

/// Default cap on the number of simplices per degree. Path counts grow like
/// `k^n`; hitting the cap is a loud failure instead of a hang.
pub const DEFAULT_PATH_CAP: usize = 200_000;

/// A composable path `c_0 -> c_1 -> ... -> c_n`, stored as its start object
/// and the list of morphisms. Degree 0 paths are bare objects.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    pub start: ObjId,
    pub mors: Vec<MorId>,
}

impl Path {
    pub fn point(o: ObjId) -> Self {
        Path {
            start: o,
            mors: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.mors.len()
    }

    /// The objects `c_0, ..., c_n` along the path.
    pub fn objects(&self, cat: &FinCat) -> Vec<ObjId> {
        let mut out = Vec::with_capacity(self.mors.len() + 1);
        out.push(self.start);
        for &m in &self.mors {
            out.push(cat.cod(m));
        }
        out
    }

    pub fn end(&self, cat: &FinCat) -> ObjId {
        self.mors.last().map_or(self.start, |&m| cat.cod(m))
    }

    /// Composite of all arrows (the identity for a degree-0 path).
    pub fn composite(&self, cat: &FinCat) -> MorId {
        let mut acc = cat.identity_of(self.start);
        for &m in &self.mors {
            acc = cat.compose_unchecked(m, acc);
        }
        acc
    }

    pub fn is_degenerate(&self, cat: &FinCat) -> bool {
        self.mors.iter().any(|&m| cat.is_identity(m))
    }

    /// The i-th face: delete `c_i`, composing its two neighbours when `i` is
    /// interior.
    pub fn face(&self, cat: &FinCat, i: usize) -> Path {
        let n = self.degree();
        assert!(n >= 1 && i <= n, "face index out of range");
        if i == 0 {
            Path {
                start: cat.cod(self.mors[0]),
                mors: self.mors[1..].to_vec(),
            }
        } else if i == n {
            Path {
                start: self.start,
                mors: self.mors[..n - 1].to_vec(),
            }
        } else {
            let mut mors = Vec::with_capacity(n - 1);
            mors.extend_from_slice(&self.mors[..i - 1]);
            mors.push(cat.compose_unchecked(self.mors[i], self.mors[i - 1]));
            mors.extend_from_slice(&self.mors[i + 1..]);
            Path {
                start: self.start,
                mors,
            }
        }
    }

    /// The i-th degeneracy: insert the identity of `c_i`.
    pub fn degeneracy(&self, cat: &FinCat, i: usize) -> Path {
        let n = self.degree();
        assert!(i <= n, "degeneracy index out of range");
        let objects = self.objects(cat);
        let mut mors = self.mors.clone();
        mors.insert(i, cat.identity_of(objects[i]));
        Path {
            start: self.start,
            mors,
        }
    }

    /// The image path under a functor.
    pub fn map(&self, f: &FunctorMap) -> Path {
        Path {
            start: f.apply_obj(self.start),
            mors: self.mors.iter().map(|&m| f.apply_mor(m)).collect(),
        }
    }
}

struct Level {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    degenerate: Vec<bool>,
    /// faces[i][p]: index of the i-th face in the previous level (degree >= 1).
    faces: Vec<Vec<usize>>,
    /// degeneracies[i][p]: index of the i-th degeneracy in the next level
    /// (present while the next level exists).
    degeneracies: Vec<Vec<usize>>,
}

/// All composable paths of a category up to a maximum degree, with face and
/// degeneracy maps as index tables. Paths in each degree are ordered
/// lexicographically by their morphism handles.
pub struct PathTable {
    base: CatRef,
    max_degree: usize,
    levels: Vec<Level>,
}

/// Enumerates the nerve up to `max_degree` with the default path cap.
pub fn nerve(cat: &CatRef, max_degree: usize) -> Result<PathTable> {
    nerve_capped(cat, max_degree, DEFAULT_PATH_CAP)
}

/// Enumerates the nerve with an explicit per-degree path cap.
pub fn nerve_capped(cat: &CatRef, max_degree: usize, cap: usize) -> Result<PathTable> {
    let mut levels: Vec<Level> = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let mut paths: Vec<Path> = if n == 0 {
            cat.objects().map(Path::point).collect()
        } else {
            let mut out = Vec::new();
            for p in &levels[n - 1].paths {
                let end = p.end(cat);
                for m in cat.morphisms() {
                    if cat.dom(m) == end {
                        let mut mors = p.mors.clone();
                        mors.push(m);
                        out.push(Path {
                            start: p.start,
                            mors,
                        });
                        if out.len() > cap {
                            return Err(Error::PathCapExceeded {
                                degree: n,
                                count: out.len(),
                                cap,
                            });
                        }
                    }
                }
            }
            out
        };
        paths.sort_by(|a, b| a.mors.cmp(&b.mors).then(a.start.cmp(&b.start)));
        let index: HashMap<Path, usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let degenerate: Vec<bool> = paths.iter().map(|p| p.is_degenerate(cat)).collect();
        levels.push(Level {
            paths,
            index,
            degenerate,
            faces: Vec::new(),
            degeneracies: Vec::new(),
        });
    }

    for n in 1..=max_degree {
        let mut faces: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let col: Vec<usize> = levels[n]
                .paths
                .iter()
                .map(|p| levels[n - 1].index[&p.face(cat, i)])
                .collect();
            faces.push(col);
        }
        levels[n].faces = faces;
    }
    for n in 0..max_degree {
        let mut degs: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let col: Vec<usize> = levels[n]
                .paths
                .iter()
                .map(|p| levels[n + 1].index[&p.degeneracy(cat, i)])
                .collect();
            degs.push(col);
        }
        levels[n].degeneracies = degs;
    }

    Ok(PathTable {
        base: CatRef::clone(cat),
        max_degree,
        levels,
    })
}

impl PathTable {
    pub fn base(&self) -> &CatRef {
        &self.base
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels[n].paths.len()
    }

    pub fn paths(&self, n: usize) -> &[Path] {
        &self.levels[n].paths
    }

    pub fn path(&self, n: usize, idx: usize) -> &Path {
        &self.levels[n].paths[idx]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.levels.get(p.degree())?.index.get(p).copied()
    }

    /// Index of the i-th face of path `idx` in degree `n`.
    pub fn face(&self, n: usize, i: usize, idx: usize) -> usize {
        self.levels[n].faces[i][idx]
    }

    /// Index of the i-th degeneracy of path `idx` in degree `n`.
    pub fn degeneracy(&self, n: usize, i: usize, idx: usize) -> usize {
        self.levels[n].degeneracies[i][idx]
    }

    pub fn is_degenerate(&self, n: usize, idx: usize) -> bool {
        self.levels[n].degenerate[idx]
    }

    /// Indices of the nondegenerate paths in degree `n`.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.count(n))
            .filter(|&i| !self.levels[n].degenerate[i])
            .collect()
    }

    /// Indices of the identity-free paths in degree `n` (same as
    /// nondegenerate for paths).
    pub fn identity_free(&self, n: usize) -> Vec<usize> {
        self.nondegenerate(n)
    }
}
