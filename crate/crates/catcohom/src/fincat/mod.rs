//! Finite categories, functors, and the auxiliary category constructions:
//! opposites, products, ordinals, factorization categories, comma
//! categories, factorizations through a functor, simplex pullbacks, and
//! nerve enumeration.

mod build;
mod category;
mod functor;
mod nerve;

pub use build::{
    comma, disjoint_union, f_angle, factorization, factorization_of_functor, opposite, ordinal,
    product, product_components, simplex_pullback, CommaCat, CommaMor, CommaObj, CommaSide,
    FAngleCat, FAngleMor, FAngleObj, Factorization, PullbackCat,
};
pub use category::{validate, CatRef, FinCat, MorData, MorId, ObjId, RawCategory};
pub use functor::FunctorMap;
pub use nerve::{nerve, nerve_capped, Path, PathTable, DEFAULT_PATH_CAP};
