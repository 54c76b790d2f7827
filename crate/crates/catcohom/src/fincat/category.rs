use std::collections::HashMap;
use std::sync::Arc;

use crate::{Error, Result};

/// Dense handle of an object inside one [`FinCat`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ObjId(pub usize);

/// Dense handle of a morphism inside one [`FinCat`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MorId(pub usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MorData {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category: explicit object and morphism lists with a total
/// composition table on composable pairs.
///
/// Names are interned once; all computation goes through the dense handles,
/// which also fixes a reproducible ordering for every matrix basis derived
/// from the category.
#[derive(Clone, Debug)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identity: Vec<MorId>,
    /// comp[g * n + f] = g o f, present exactly when dom(g) = cod(f).
    comp: Vec<Option<MorId>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        // The display name is metadata; two categories are the same exactly
        // when their object/morphism tables agree.
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Assembles a category from explicit parts and a composition rule.
    /// The rule must be total on composable pairs; axioms are the caller's
    /// responsibility (use [`FinCat::check_axioms`] to verify).
    pub(crate) fn from_parts(
        name: String,
        objects: Vec<String>,
        morphisms: Vec<MorData>,
        identity: Vec<MorId>,
        rule: impl Fn(MorId, MorId) -> MorId,
    ) -> FinCat {
        let n = morphisms.len();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if morphisms[g].dom == morphisms[f].cod {
                    comp[g * n + f] = Some(rule(MorId(g), MorId(f)));
                }
            }
        }
        FinCat {
            name,
            objects,
            morphisms,
            identity,
            comp,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].cod
    }

    pub fn identity_of(&self, o: ObjId) -> MorId {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.morphisms[m.0].dom.0] == m
    }

    /// `g o f`, defined when `dom(g) = cod(f)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let n = self.morphisms.len();
        self.comp[g.0 * n + f.0]
    }

    /// `g o f` for composable arguments; panics otherwise.
    pub(crate) fn compose_unchecked(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).expect("morphisms are not composable")
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|n| n == name).map(ObjId)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&m| self.dom(m) == a && self.cod(m) == b)
            .collect()
    }

    /// Exhaustive verification of the category axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.morphisms.len();
        for (o, &id) in self.identity.iter().enumerate() {
            let d = &self.morphisms[id.0];
            if d.dom != ObjId(o) || d.cod != ObjId(o) {
                return Err(Error::IdentityViolation {
                    morphism: d.name.clone(),
                });
            }
        }
        for f in self.morphisms() {
            let d = self.morphisms[f.0].clone();
            if d.dom.0 >= self.objects.len() || d.cod.0 >= self.objects.len() {
                return Err(Error::DanglingEndpoint {
                    morphism: d.name,
                    endpoint: "<out of range>".into(),
                });
            }
            let idl = self.compose(f, self.identity_of(d.dom));
            let idr = self.compose(self.identity_of(d.cod), f);
            if idl != Some(f) || idr != Some(f) {
                return Err(Error::IdentityViolation { morphism: d.name });
            }
        }
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.comp[g * n + f] {
                    let gd = &self.morphisms[g];
                    let fd = &self.morphisms[f];
                    let cd = &self.morphisms[gf.0];
                    if cd.dom != fd.dom || cd.cod != gd.cod {
                        return Err(Error::DanglingEndpoint {
                            morphism: format!("{} o {}", gd.name, fd.name),
                            endpoint: cd.name.clone(),
                        });
                    }
                }
            }
        }
        for h in self.morphisms() {
            for g in self.morphisms() {
                if self.dom(h) != self.cod(g) {
                    continue;
                }
                let hg = self.compose_unchecked(h, g);
                for f in self.morphisms() {
                    if self.dom(g) != self.cod(f) {
                        continue;
                    }
                    let gf = self.compose_unchecked(g, f);
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Err(Error::AssociativityViolation {
                            h: self.morphism_name(h).to_string(),
                            g: self.morphism_name(g).to_string(),
                            f: self.morphism_name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// No composite of non-identity morphisms is an identity. The pairwise
    /// check suffices: any longer witness contains a two-step one.
    pub fn is_retraction_free(&self) -> bool {
        for g in self.morphisms() {
            if self.is_identity(g) {
                continue;
            }
            for f in self.morphisms() {
                if self.is_identity(f) || self.dom(g) != self.cod(f) {
                    continue;
                }
                let gf = self.compose_unchecked(g, f);
                if self.is_identity(gf) {
                    return false;
                }
            }
        }
        true
    }

    /// Partition of the objects under zigzag reachability, each block sorted,
    /// blocks ordered by their least object.
    pub fn connected_components(&self) -> Vec<Vec<ObjId>> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for m in self.morphisms() {
            let a = find(&mut parent, self.dom(m).0);
            let b = find(&mut parent, self.cod(m).0);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: HashMap<usize, Vec<ObjId>> = HashMap::new();
        for o in 0..n {
            let root = find(&mut parent, o);
            blocks.entry(root).or_default().push(ObjId(o));
        }
        let mut out: Vec<Vec<ObjId>> = blocks.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }
}

/// An unvalidated category description, as read from a file or assembled by
/// hand: non-identity morphisms plus explicit composites for every composable
/// non-identity pair. Identities are synthesized during validation.
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    /// (name, dom, cod)
    pub morphisms: Vec<(String, String, String)>,
    /// (g, f, h) meaning h = g o f.
    pub composites: Vec<(String, String, String)>,
}

/// Validates a raw description into a [`FinCat`], synthesizing identities
/// (named `id_<object>`) and materializing them in the composition table.
pub fn validate(raw: &RawCategory) -> Result<FinCat> {
    let nobj = raw.objects.len();
    let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
    for (i, name) in raw.objects.iter().enumerate() {
        if obj_index.insert(name, ObjId(i)).is_some() {
            return Err(Error::Parse {
                file: raw.name.clone(),
                line: 0,
                message: format!("duplicate object name {name}"),
            });
        }
    }

    // Identities first, then the declared morphisms in input order.
    let mut morphisms: Vec<MorData> = raw
        .objects
        .iter()
        .enumerate()
        .map(|(i, name)| MorData {
            name: format!("id_{name}"),
            dom: ObjId(i),
            cod: ObjId(i),
        })
        .collect();
    let identity: Vec<MorId> = (0..nobj).map(MorId).collect();
    let mut mor_index: HashMap<String, MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.name.clone(), MorId(i)))
        .collect();
    for (name, dom, cod) in &raw.morphisms {
        let dom = *obj_index.get(dom.as_str()).ok_or_else(|| Error::DanglingEndpoint {
            morphism: name.clone(),
            endpoint: dom.clone(),
        })?;
        let cod = *obj_index.get(cod.as_str()).ok_or_else(|| Error::DanglingEndpoint {
            morphism: name.clone(),
            endpoint: cod.clone(),
        })?;
        let id = MorId(morphisms.len());
        if mor_index.insert(name.clone(), id).is_some() {
            return Err(Error::Parse {
                file: raw.name.clone(),
                line: 0,
                message: format!("duplicate morphism name {name}"),
            });
        }
        morphisms.push(MorData {
            name: name.clone(),
            dom,
            cod,
        });
    }

    let n = morphisms.len();
    let mut comp: Vec<Option<MorId>> = vec![None; n * n];
    // Identity composites are implicit in the input format.
    for f in 0..n {
        let fd = &morphisms[f];
        comp[identity[fd.cod.0].0 * n + f] = Some(MorId(f));
        comp[f * n + identity[fd.dom.0].0] = Some(MorId(f));
    }
    for (gname, fname, hname) in &raw.composites {
        let g = *mor_index.get(gname).ok_or_else(|| Error::Unresolved {
            name: gname.clone(),
            context: "composite declaration".into(),
        })?;
        let f = *mor_index.get(fname).ok_or_else(|| Error::Unresolved {
            name: fname.clone(),
            context: "composite declaration".into(),
        })?;
        let h = *mor_index.get(hname).ok_or_else(|| Error::Unresolved {
            name: hname.clone(),
            context: "composite declaration".into(),
        })?;
        if morphisms[g.0].dom != morphisms[f.0].cod {
            return Err(Error::MissingComposite {
                g: gname.clone(),
                f: fname.clone(),
            });
        }
        if let Some(existing) = comp[g.0 * n + f.0] {
            if existing != h {
                return Err(Error::IdentityViolation {
                    morphism: format!("{gname} o {fname}"),
                });
            }
        }
        if morphisms[h.0].dom != morphisms[f.0].dom || morphisms[h.0].cod != morphisms[g.0].cod {
            return Err(Error::DanglingEndpoint {
                morphism: format!("{gname} o {fname}"),
                endpoint: hname.clone(),
            });
        }
        comp[g.0 * n + f.0] = Some(h);
    }
    // Every composable non-identity pair needs a declared composite.
    for g in 0..n {
        for f in 0..n {
            if morphisms[g].dom == morphisms[f].cod && comp[g * n + f].is_none() {
                return Err(Error::MissingComposite {
                    g: morphisms[g].name.clone(),
                    f: morphisms[f].name.clone(),
                });
            }
        }
    }

    let cat = FinCat {
        name: raw.name.clone(),
        objects: raw.objects.clone(),
        morphisms,
        identity,
        comp,
    };
    cat.check_axioms()?;
    Ok(cat)
}

/// Shared handle used across diagrams and functors.
pub type CatRef = Arc<FinCat>;
