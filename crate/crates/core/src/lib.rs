//! Construction and exhaustive verification of n-cycle permutations of
//! finite fields.
//!
//! A map `f` of GF(q) is an *n-cycle permutation* when its n-fold
//! composition is the identity. This crate provides:
//!
//! - flat GF(p^n) arithmetic and sparse polynomials over it ([`field`], [`poly`]),
//! - permutations as image tables with exact cycle structure ([`perm`]),
//! - the n-cycle criteria as decision procedures ([`criteria`]),
//! - explicit families of n-cycle permutations ([`constructions`]),
//! - a brute-force oracle and a Walsh-spectrum involution test ([`oracle`], [`walsh`]).
//!
//! ```
//! use ncycle::{make_field, perm_from_poly, SparsePoly};
//!
//! let ctx = make_field(7, 1, None).unwrap();
//! let f = SparsePoly::parse(&ctx, "x^5", None).unwrap();
//! let perm = perm_from_poly(&ctx, &f).unwrap();
//! assert!(perm.is_ncycle(2));
//! assert_eq!(perm.cycle_structure().fixed_points, 3);
//! ```

pub mod constructions;
pub mod criteria;
pub mod error;
pub mod expr;
pub mod field;
pub mod map;
pub mod nt;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod walsh;

pub use constructions::{Family, FamilyInstance};
pub use criteria::CriterionVerdict;
pub use error::{Error, Result};
pub use field::{make_field, Elem, FieldCtx, FieldDesc};
pub use map::{FieldFn, MapExpr};
pub use oracle::{cross_check, exhaustive_verdict, OracleVerdict};
pub use perm::{perm_from_poly, CycleReport, PermMap};
pub use poly::SparsePoly;
