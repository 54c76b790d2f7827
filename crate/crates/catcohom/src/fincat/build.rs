//! Constructions on finite categories: ordinals, opposites, products,
//! factorization categories, comma categories, categories of factorizations
//! through a functor, and simplex pullbacks.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{CatRef, FinCat, MorData, MorId, ObjId};
use super::functor::FunctorMap;
use super::nerve::Path;
use crate::{Error, Result};

/// The linearly ordered set `[n] = {0, 1, ..., n}` as a category.
pub fn ordinal(n: usize) -> FinCat {
    let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut morphisms: Vec<MorData> = (0..=n)
        .map(|i| MorData {
            name: format!("id_{i}"),
            dom: ObjId(i),
            cod: ObjId(i),
        })
        .collect();
    let identity: Vec<MorId> = (0..=n).map(MorId).collect();
    let mut arrow: HashMap<(usize, usize), MorId> = HashMap::new();
    for i in 0..=n {
        arrow.insert((i, i), identity[i]);
    }
    for i in 0..=n {
        for j in i + 1..=n {
            arrow.insert((i, j), MorId(morphisms.len()));
            morphisms.push(MorData {
                name: format!("m{i}_{j}"),
                dom: ObjId(i),
                cod: ObjId(j),
            });
        }
    }
    let spans: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.dom.0, m.cod.0)).collect();
    FinCat::from_parts(
        format!("[{n}]"),
        objects,
        morphisms,
        identity,
        |g, f| arrow[&(spans[f.0].0, spans[g.0].1)],
    )
}

/// The opposite category; objects and morphism names are kept, endpoints
/// are swapped.
pub fn opposite(c: &FinCat) -> FinCat {
    let morphisms: Vec<MorData> = c
        .morphisms()
        .map(|m| MorData {
            name: c.morphism_name(m).to_string(),
            dom: c.cod(m),
            cod: c.dom(m),
        })
        .collect();
    let identity: Vec<MorId> = c.objects().map(|o| c.identity_of(o)).collect();
    FinCat::from_parts(
        format!("op({})", c.name()),
        c.objects().map(|o| c.object_name(o).to_string()).collect(),
        morphisms,
        identity,
        |g, f| c.compose_unchecked(f, g),
    )
}

/// The product category; objects named `(a,b)`, morphisms `(f,g)`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let nc = c.morphism_count();
    let nd = d.morphism_count();
    let objects: Vec<String> = c
        .objects()
        .flat_map(|a| {
            d.objects()
                .map(move |x| (a, x))
        })
        .map(|(a, x)| format!("({},{})", c.object_name(a), d.object_name(x)))
        .collect();
    let obj_of = |a: ObjId, x: ObjId| ObjId(a.0 * d.object_count() + x.0);
    let mut morphisms = Vec::with_capacity(nc * nd);
    for f in c.morphisms() {
        for u in d.morphisms() {
            let name = if c.is_identity(f) && d.is_identity(u) {
                format!(
                    "id_({},{})",
                    c.object_name(c.dom(f)),
                    d.object_name(d.dom(u))
                )
            } else {
                format!("({},{})", c.morphism_name(f), d.morphism_name(u))
            };
            morphisms.push(MorData {
                name,
                dom: obj_of(c.dom(f), d.dom(u)),
                cod: obj_of(c.cod(f), d.cod(u)),
            });
        }
    }
    let identity: Vec<MorId> = c
        .objects()
        .flat_map(|a| d.objects().map(move |x| (a, x)))
        .map(|(a, x)| MorId(c.identity_of(a).0 * nd + d.identity_of(x).0))
        .collect();
    FinCat::from_parts(
        format!("prod({},{})", c.name(), d.name()),
        objects,
        morphisms,
        identity,
        |g, f| {
            let (gc, gd) = (MorId(g.0 / nd), MorId(g.0 % nd));
            let (fc, fd) = (MorId(f.0 / nd), MorId(f.0 % nd));
            MorId(c.compose_unchecked(gc, fc).0 * nd + d.compose_unchecked(gd, fd).0)
        },
    )
}

/// Factor of the product projection: decompose a product-category morphism
/// handle back into its two components.
pub fn product_components(d_morphisms: usize, m: MorId) -> (MorId, MorId) {
    (MorId(m.0 / d_morphisms), MorId(m.0 % d_morphisms))
}

/// The factorization category of `c` together with the two forgetful
/// functors, and enough indexing to look morphisms up by their defining
/// triple.
pub struct Factorization {
    pub cat: CatRef,
    /// To `op(c) x c`: object f goes to (dom f, cod f).
    pub dom_cod: FunctorMap,
    /// To `c`: object f goes to cod f.
    pub cod: FunctorMap,
    /// The product category `op(c) x c` used as the target of `dom_cod`.
    pub op_times_c: CatRef,
    /// Morphism data aligned with the factorization category's handles:
    /// (source object as a morphism of c, alpha, beta).
    pub triples: Vec<(MorId, MorId, MorId)>,
    lookup: HashMap<(MorId, MorId, MorId), MorId>,
}

impl Factorization {
    /// Handle of the morphism `(alpha, beta): f -> beta o f o alpha`.
    pub fn morphism_for(&self, f: MorId, alpha: MorId, beta: MorId) -> Option<MorId> {
        self.lookup.get(&(f, alpha, beta)).copied()
    }

    /// Object handle of the morphism `f` of the base category.
    pub fn object_for(&self, f: MorId) -> ObjId {
        ObjId(f.0)
    }
}

/// Builds the factorization category: objects are the morphisms of `c`,
/// morphisms `f -> g` are pairs `(alpha, beta)` with `g = beta o f o alpha`.
pub fn factorization(c: &CatRef) -> Factorization {
    let objects: Vec<String> = c
        .morphisms()
        .map(|m| c.morphism_name(m).to_string())
        .collect();

    // A pair name "alpha|beta" is qualified with "@<dom>" when the same pair
    // occurs with several domain objects, so names stay unique.
    let mut pair_count: HashMap<(MorId, MorId), usize> = HashMap::new();
    let mut triples: Vec<(MorId, MorId, MorId)> = Vec::new();
    for f in c.morphisms() {
        for alpha in c.morphisms() {
            if c.cod(alpha) != c.dom(f) {
                continue;
            }
            for beta in c.morphisms() {
                if c.dom(beta) != c.cod(f) {
                    continue;
                }
                triples.push((f, alpha, beta));
                if !(c.is_identity(alpha) && c.is_identity(beta)) {
                    *pair_count.entry((alpha, beta)).or_insert(0) += 1;
                }
            }
        }
    }

    let mut morphisms = Vec::with_capacity(triples.len());
    let mut identity: Vec<MorId> = vec![MorId(0); objects.len()];
    let mut lookup = HashMap::new();
    for (idx, &(f, alpha, beta)) in triples.iter().enumerate() {
        let g = c.compose_unchecked(beta, c.compose_unchecked(f, alpha));
        let is_id = c.is_identity(alpha) && c.is_identity(beta);
        let name = if is_id {
            identity[f.0] = MorId(idx);
            format!("id_{}", c.morphism_name(f))
        } else if pair_count[&(alpha, beta)] > 1 {
            format!(
                "{}|{}@{}",
                c.morphism_name(alpha),
                c.morphism_name(beta),
                c.morphism_name(f)
            )
        } else {
            format!("{}|{}", c.morphism_name(alpha), c.morphism_name(beta))
        };
        lookup.insert((f, alpha, beta), MorId(idx));
        morphisms.push(MorData {
            name,
            dom: ObjId(f.0),
            cod: ObjId(g.0),
        });
    }

    let triples_for_rule = triples.clone();
    let lookup_for_rule = lookup.clone();
    let cat = Arc::new(FinCat::from_parts(
        format!("fact({})", c.name()),
        objects,
        morphisms,
        identity,
        |g, f| {
            // First (f0, a, b): f0 -> g0, then (g0, a', b'): composite is
            // (f0, a o a', b' o b).
            let (f0, a, b) = triples_for_rule[f.0];
            let (_g0, a2, b2) = triples_for_rule[g.0];
            let alpha = c.compose_unchecked(a, a2);
            let beta = c.compose_unchecked(b2, b);
            lookup_for_rule[&(f0, alpha, beta)]
        },
    ));

    let op_c = opposite(c);
    let op_times_c = Arc::new(product(&op_c, c));
    let nd = c.morphism_count();
    let dc_obj: Vec<ObjId> = c
        .morphisms()
        .map(|f| ObjId(c.dom(f).0 * c.object_count() + c.cod(f).0))
        .collect();
    let dc_mor: Vec<MorId> = triples
        .iter()
        .map(|&(_f, alpha, beta)| MorId(alpha.0 * nd + beta.0))
        .collect();
    let dom_cod = FunctorMap::new(
        format!("domcod({})", c.name()),
        Arc::clone(&cat),
        Arc::clone(&op_times_c),
        dc_obj,
        dc_mor,
    )
    .expect("(dom, cod) is a functor");

    let cod_obj: Vec<ObjId> = c.morphisms().map(|f| c.cod(f)).collect();
    let cod_mor: Vec<MorId> = triples.iter().map(|&(_f, _a, b)| b).collect();
    let cod = FunctorMap::new(
        format!("cod({})", c.name()),
        Arc::clone(&cat),
        Arc::clone(c),
        cod_obj,
        cod_mor,
    )
    .expect("cod is a functor");

    Factorization {
        cat,
        dom_cod,
        cod,
        op_times_c,
        triples,
        lookup,
    }
}

/// `F f : F C -> F D` induced on factorization categories: the object `m`
/// goes to `f(m)`, the square `(alpha, beta)` to `(f alpha, f beta)`.
pub fn factorization_of_functor(
    f: &FunctorMap,
    fc: &Factorization,
    fd: &Factorization,
) -> Result<FunctorMap> {
    if fc.cat.name() != format!("fact({})", f.source().name())
        && fc.cat.object_count() != f.source().morphism_count()
    {
        return Err(Error::BaseMismatch {
            context: "factorization of the functor source".into(),
        });
    }
    let obj_map: Vec<ObjId> = f
        .source()
        .morphisms()
        .map(|m| ObjId(f.apply_mor(m).0))
        .collect();
    let mor_map: Vec<MorId> = fc
        .triples
        .iter()
        .map(|&(m, alpha, beta)| {
            fd.morphism_for(f.apply_mor(m), f.apply_mor(alpha), f.apply_mor(beta))
                .expect("image triple exists in the target factorization")
        })
        .collect();
    FunctorMap::new(
        format!("fact({})", f.name()),
        Arc::clone(&fc.cat),
        Arc::clone(&fd.cat),
        obj_map,
        mor_map,
    )
}

/// Which side of the comma construction to take.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CommaSide {
    /// `f | d`: objects are arrows `f(c) -> d`.
    Left,
    /// `d | f`: objects are arrows `d -> f(c)`.
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CommaObj {
    pub c: ObjId,
    /// Arrow `f(c) -> d` (left) or `d -> f(c)` (right) in the target.
    pub beta: MorId,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CommaMor {
    pub alpha: MorId,
    pub src: usize,
    pub dst: usize,
}

/// A comma category over an anchor object, with its projection functor and
/// the data defining its objects and morphisms.
pub struct CommaCat {
    pub cat: CatRef,
    pub projection: FunctorMap,
    pub objects: Vec<CommaObj>,
    pub mor_data: Vec<CommaMor>,
}

/// The comma category of `f` over (or under) the anchor object.
pub fn comma(f: &FunctorMap, anchor: ObjId, side: CommaSide) -> CommaCat {
    let src = f.source();
    let tgt = f.target();
    let mut objects: Vec<CommaObj> = Vec::new();
    for c in src.objects() {
        let arrows = match side {
            CommaSide::Left => tgt.hom(f.apply_obj(c), anchor),
            CommaSide::Right => tgt.hom(anchor, f.apply_obj(c)),
        };
        for beta in arrows {
            objects.push(CommaObj { c, beta });
        }
    }
    let obj_names: Vec<String> = objects
        .iter()
        .map(|o| format!("({},{})", src.object_name(o.c), tgt.morphism_name(o.beta)))
        .collect();

    let mut mor_data: Vec<CommaMor> = Vec::new();
    let mut identity: Vec<MorId> = vec![MorId(0); objects.len()];
    let mut morphisms: Vec<MorData> = Vec::new();
    let mut lookup: HashMap<(MorId, usize, usize), MorId> = HashMap::new();
    for (si, so) in objects.iter().enumerate() {
        for (di, dobj) in objects.iter().enumerate() {
            for alpha in src.hom(so.c, dobj.c) {
                let ok = match side {
                    CommaSide::Left => {
                        tgt.compose_unchecked(dobj.beta, f.apply_mor(alpha)) == so.beta
                    }
                    CommaSide::Right => {
                        tgt.compose_unchecked(f.apply_mor(alpha), so.beta) == dobj.beta
                    }
                };
                if !ok {
                    continue;
                }
                let id = MorId(morphisms.len());
                let name = if src.is_identity(alpha) && si == di {
                    identity[si] = id;
                    format!("id_{}", obj_names[si])
                } else {
                    format!("{}:{}>{}", src.morphism_name(alpha), obj_names[si], obj_names[di])
                };
                morphisms.push(MorData {
                    name,
                    dom: ObjId(si),
                    cod: ObjId(di),
                });
                mor_data.push(CommaMor {
                    alpha,
                    src: si,
                    dst: di,
                });
                lookup.insert((alpha, si, di), id);
            }
        }
    }

    let side_tag = match side {
        CommaSide::Left => format!("comma({},{})", f.name(), tgt.object_name(anchor)),
        CommaSide::Right => format!("comma({},{})", tgt.object_name(anchor), f.name()),
    };
    let mor_data_rule = mor_data.clone();
    let cat = Arc::new(FinCat::from_parts(
        side_tag,
        obj_names,
        morphisms,
        identity,
        |g, fm| {
            let gm = &mor_data_rule[g.0];
            let fm = &mor_data_rule[fm.0];
            let alpha = src.compose_unchecked(gm.alpha, fm.alpha);
            lookup[&(alpha, fm.src, gm.dst)]
        },
    ));

    let projection = FunctorMap::new(
        format!("Q_{}", tgt.object_name(anchor)),
        Arc::clone(&cat),
        Arc::clone(src),
        objects.iter().map(|o| o.c).collect(),
        mor_data.iter().map(|m| m.alpha).collect(),
    )
    .expect("comma projection is a functor");

    CommaCat {
        cat,
        projection,
        objects,
        mor_data,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FAngleObj {
    pub c: ObjId,
    /// `dom(alpha) -> f(c)`
    pub into: MorId,
    /// `f(c) -> cod(alpha)`
    pub outof: MorId,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FAngleMor {
    pub nu: MorId,
    pub src: usize,
    pub dst: usize,
}

/// The category `f<alpha>` of factorizations of `alpha` through images of
/// `f`, with its defining object and morphism data.
pub struct FAngleCat {
    pub cat: CatRef,
    pub objects: Vec<FAngleObj>,
    pub mor_data: Vec<FAngleMor>,
}

impl FAngleCat {
    pub fn object_index(&self, c: ObjId, into: MorId, outof: MorId) -> Option<usize> {
        self.objects
            .iter()
            .position(|o| o.c == c && o.into == into && o.outof == outof)
    }

    pub fn morphism_index(&self, nu: MorId, src: usize, dst: usize) -> Option<MorId> {
        self.mor_data
            .iter()
            .position(|m| m.nu == nu && m.src == src && m.dst == dst)
            .map(MorId)
    }
}

/// Builds `f<alpha>`: objects are pairs `(beta1, beta2)` with
/// `beta2 o beta1 = alpha` factoring through `f(c)`; morphisms are
/// `nu: c -> c'` making both triangles commute.
pub fn f_angle(f: &FunctorMap, alpha: MorId) -> FAngleCat {
    let src = f.source();
    let tgt = f.target();
    let d = tgt.dom(alpha);
    let d2 = tgt.cod(alpha);
    let mut objects: Vec<FAngleObj> = Vec::new();
    for c in src.objects() {
        let fc = f.apply_obj(c);
        for into in tgt.hom(d, fc) {
            for outof in tgt.hom(fc, d2) {
                if tgt.compose_unchecked(outof, into) == alpha {
                    objects.push(FAngleObj { c, into, outof });
                }
            }
        }
    }
    let obj_names: Vec<String> = objects
        .iter()
        .map(|o| {
            format!(
                "({},{},{})",
                src.object_name(o.c),
                tgt.morphism_name(o.into),
                tgt.morphism_name(o.outof)
            )
        })
        .collect();

    let mut mor_data: Vec<FAngleMor> = Vec::new();
    let mut morphisms: Vec<MorData> = Vec::new();
    let mut identity: Vec<MorId> = vec![MorId(0); objects.len()];
    let mut lookup: HashMap<(MorId, usize, usize), MorId> = HashMap::new();
    for (si, so) in objects.iter().enumerate() {
        for (di, dobj) in objects.iter().enumerate() {
            for nu in src.hom(so.c, dobj.c) {
                let fnu = f.apply_mor(nu);
                if tgt.compose_unchecked(fnu, so.into) != dobj.into
                    || tgt.compose_unchecked(dobj.outof, fnu) != so.outof
                {
                    continue;
                }
                let id = MorId(morphisms.len());
                let name = if src.is_identity(nu) && si == di {
                    identity[si] = id;
                    format!("id_{}", obj_names[si])
                } else {
                    format!("{}:{}>{}", src.morphism_name(nu), obj_names[si], obj_names[di])
                };
                morphisms.push(MorData {
                    name,
                    dom: ObjId(si),
                    cod: ObjId(di),
                });
                mor_data.push(FAngleMor {
                    nu,
                    src: si,
                    dst: di,
                });
                lookup.insert((nu, si, di), id);
            }
        }
    }
    let mor_data_rule = mor_data.clone();
    let cat = Arc::new(FinCat::from_parts(
        format!("angle({},{})", f.name(), tgt.morphism_name(alpha)),
        obj_names,
        morphisms,
        identity,
        |g, fm| {
            let gm = &mor_data_rule[g.0];
            let fm = &mor_data_rule[fm.0];
            let nu = src.compose_unchecked(gm.nu, fm.nu);
            lookup[&(nu, fm.src, gm.dst)]
        },
    ));
    FAngleCat {
        cat,
        objects,
        mor_data,
    }
}

/// The pullback category of `f` along a simplex `sigma: [n] -> D`.
pub struct PullbackCat {
    pub cat: CatRef,
    /// (object of the source, position in the simplex)
    pub objects: Vec<(ObjId, usize)>,
    pub mor_data: Vec<(MorId, usize, usize)>,
}

/// Builds the pullback of `f: C -> D` along the path `sigma` in `D`: objects
/// are pairs `(c, i)` with `f(c) = sigma(i)`, morphisms `(alpha, i <= j)`
/// with `f(alpha) = sigma(i <= j)`.
pub fn simplex_pullback(f: &FunctorMap, sigma: &Path) -> PullbackCat {
    let src = f.source();
    let tgt = f.target();
    let n = sigma.mors.len();
    let sigma_obj: Vec<ObjId> = sigma.objects(tgt);
    // sigma(i <= j): composite of the arrows between positions i and j.
    let mut seg = vec![vec![MorId(0); n + 1]; n + 1];
    for i in 0..=n {
        seg[i][i] = tgt.identity_of(sigma_obj[i]);
        for j in i + 1..=n {
            seg[i][j] = tgt.compose_unchecked(sigma.mors[j - 1], seg[i][j - 1]);
        }
    }

    let mut objects: Vec<(ObjId, usize)> = Vec::new();
    for c in src.objects() {
        for i in 0..=n {
            if f.apply_obj(c) == sigma_obj[i] {
                objects.push((c, i));
            }
        }
    }
    let obj_names: Vec<String> = objects
        .iter()
        .map(|&(c, i)| format!("({},{})", src.object_name(c), i))
        .collect();

    let mut morphisms: Vec<MorData> = Vec::new();
    let mut mor_data: Vec<(MorId, usize, usize)> = Vec::new();
    let mut identity: Vec<MorId> = vec![MorId(0); objects.len()];
    let mut lookup: HashMap<(MorId, usize, usize), MorId> = HashMap::new();
    for (si, &(c, i)) in objects.iter().enumerate() {
        for (di, &(c2, j)) in objects.iter().enumerate() {
            if i > j {
                continue;
            }
            for alpha in src.hom(c, c2) {
                if f.apply_mor(alpha) != seg[i][j] {
                    continue;
                }
                let id = MorId(morphisms.len());
                let name = if src.is_identity(alpha) && si == di {
                    identity[si] = id;
                    format!("id_{}", obj_names[si])
                } else {
                    format!("{}:{}>{}", src.morphism_name(alpha), obj_names[si], obj_names[di])
                };
                morphisms.push(MorData {
                    name,
                    dom: ObjId(si),
                    cod: ObjId(di),
                });
                mor_data.push((alpha, si, di));
                lookup.insert((alpha, si, di), id);
            }
        }
    }
    let mor_data_rule = mor_data.clone();
    let cat = Arc::new(FinCat::from_parts(
        format!("pullback({})", f.name()),
        obj_names,
        morphisms,
        identity,
        |g, fm| {
            let (ga, _gs, gd) = mor_data_rule[g.0];
            let (fa, fs, _fd) = mor_data_rule[fm.0];
            let alpha = src.compose_unchecked(ga, fa);
            lookup[&(alpha, fs, gd)]
        },
    ));
    PullbackCat {
        cat,
        objects,
        mor_data,
    }
}

/// Disjoint union, used by tests and the fuzz corpus.
pub fn disjoint_union(c: &FinCat, d: &FinCat) -> FinCat {
    let mut objects: Vec<String> = c
        .objects()
        .map(|o| format!("L{}", c.object_name(o)))
        .collect();
    objects.extend(d.objects().map(|o| format!("R{}", d.object_name(o))));
    let co = c.object_count();
    let cm = c.morphism_count();
    let mut morphisms: Vec<MorData> = c
        .morphisms()
        .map(|m| MorData {
            name: format!("L{}", c.morphism_name(m)),
            dom: c.dom(m),
            cod: c.cod(m),
        })
        .collect();
    morphisms.extend(d.morphisms().map(|m| MorData {
        name: format!("R{}", d.morphism_name(m)),
        dom: ObjId(d.dom(m).0 + co),
        cod: ObjId(d.cod(m).0 + co),
    }));
    let mut identity: Vec<MorId> = c.objects().map(|o| c.identity_of(o)).collect();
    identity.extend(d.objects().map(|o| MorId(d.identity_of(o).0 + cm)));
    FinCat::from_parts(
        format!("({}+{})", c.name(), d.name()),
        objects,
        morphisms,
        identity,
        |g, f| {
            if g.0 < cm {
                c.compose_unchecked(g, f)
            } else {
                MorId(d.compose_unchecked(MorId(g.0 - cm), MorId(f.0 - cm)).0 + cm)
            }
        },
    )
}
