pub mod error;
pub mod factorize;
pub mod families;
pub mod kernel;
pub mod lab;
pub mod predicates;
pub mod submonoid;

pub use error::{Error, Result};
pub use factorize::{Factorization, Scheme};
pub use families::MonoidSpec;
pub use kernel::{Basis, Element, FamilyKind, Monoid, Norm, Verdict, VerdictKind};
