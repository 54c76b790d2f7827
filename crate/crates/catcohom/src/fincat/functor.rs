use std::sync::Arc;

use super::category::{CatRef, MorId, ObjId};
use crate::{Error, Result};

/// A functor between two finite categories, given by total object and
/// morphism maps. Construction verifies functoriality exhaustively.
#[derive(Clone, Debug)]
pub struct FunctorMap {
    name: String,
    source: CatRef,
    target: CatRef,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl FunctorMap {
    pub fn new(
        name: String,
        source: CatRef,
        target: CatRef,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self> {
        if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
            return Err(Error::NotAFunctor {
                reason: format!(
                    "{name}: object/morphism maps must be total ({} objects, {} morphisms)",
                    source.object_count(),
                    source.morphism_count()
                ),
            });
        }
        for m in source.morphisms() {
            let image = mor_map[m.0];
            if target.dom(image) != obj_map[source.dom(m).0]
                || target.cod(image) != obj_map[source.cod(m).0]
            {
                return Err(Error::NotAFunctor {
                    reason: format!(
                        "{name}: image of {} has wrong endpoints",
                        source.morphism_name(m)
                    ),
                });
            }
        }
        for o in source.objects() {
            if mor_map[source.identity_of(o).0] != target.identity_of(obj_map[o.0]) {
                return Err(Error::NotAFunctor {
                    reason: format!(
                        "{name}: identity of {} is not preserved",
                        source.object_name(o)
                    ),
                });
            }
        }
        for g in source.morphisms() {
            for f in source.morphisms() {
                if source.dom(g) != source.cod(f) {
                    continue;
                }
                let gf = source.compose_unchecked(g, f);
                let img = target.compose_unchecked(mor_map[g.0], mor_map[f.0]);
                if mor_map[gf.0] != img {
                    return Err(Error::NotAFunctor {
                        reason: format!(
                            "{name}: composition {} o {} is not preserved",
                            source.morphism_name(g),
                            source.morphism_name(f)
                        ),
                    });
                }
            }
        }
        Ok(FunctorMap {
            name,
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(cat: &CatRef) -> Self {
        FunctorMap {
            name: format!("id_{}", cat.name()),
            source: Arc::clone(cat),
            target: Arc::clone(cat),
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &CatRef {
        &self.source
    }

    pub fn target(&self) -> &CatRef {
        &self.target
    }

    pub fn apply_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.0]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0]
    }

    /// `self o other` (apply `other` first).
    pub fn compose(&self, other: &FunctorMap) -> Result<FunctorMap> {
        if **other.target() != **self.source() {
            return Err(Error::BaseMismatch {
                context: format!("composing {} after {}", self.name, other.name),
            });
        }
        FunctorMap::new(
            format!("{}*{}", self.name, other.name),
            Arc::clone(other.source()),
            Arc::clone(self.target()),
            other.obj_map.iter().map(|&o| self.apply_obj(o)).collect(),
            other.mor_map.iter().map(|&m| self.apply_mor(m)).collect(),
        )
    }

    /// `f^op x f` on the product categories, used for Hochschild-Mitchell
    /// comparisons.
    pub fn op_times_self(
        &self,
        src_prod: &CatRef,
        tgt_prod: &CatRef,
    ) -> Result<FunctorMap> {
        let sc = self.source();
        let tc = self.target();
        let obj_map: Vec<ObjId> = (0..src_prod.object_count())
            .map(|i| {
                let a = ObjId(i / sc.object_count());
                let b = ObjId(i % sc.object_count());
                ObjId(self.apply_obj(a).0 * tc.object_count() + self.apply_obj(b).0)
            })
            .collect();
        let mor_map: Vec<MorId> = (0..src_prod.morphism_count())
            .map(|i| {
                let u = MorId(i / sc.morphism_count());
                let v = MorId(i % sc.morphism_count());
                MorId(self.apply_mor(u).0 * tc.morphism_count() + self.apply_mor(v).0)
            })
            .collect();
        FunctorMap::new(
            format!("op({f})x{f}", f = self.name),
            Arc::clone(src_prod),
            Arc::clone(tgt_prod),
            obj_map,
            mor_map,
        )
    }

    /// True when the functor is bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let mut seen_obj = vec![false; self.target.object_count()];
        for &o in &self.obj_map {
            seen_obj[o.0] = true;
        }
        let mut seen_mor = vec![false; self.target.morphism_count()];
        for &m in &self.mor_map {
            seen_mor[m.0] = true;
        }
        self.obj_map.len() == self.target.object_count()
            && self.mor_map.len() == self.target.morphism_count()
            && seen_obj.into_iter().all(|b| b)
            && seen_mor.into_iter().all(|b| b)
    }
}
