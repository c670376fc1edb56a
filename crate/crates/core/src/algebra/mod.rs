//! Exact arithmetic: rationals, algebraic extensions, polynomials, rational
//! functions, Laurent expansions and root utilities.

pub mod algnum;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod roots;

pub use algnum::AlgNum;
pub use field::{parse_rat, rat, ratio, Field, Rat};
pub use laurent::{laurent_expand, laurent_expand_at, PrincipalPart};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use roots::{cauchy_root_bound, dispersion, rational_roots, RationalRoots};
