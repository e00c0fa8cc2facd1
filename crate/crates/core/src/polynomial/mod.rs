//! Integer polynomials: construction of `f_n`, Sturm-based real root
//! isolation, resultants, and modular irreducibility certificates.

mod minpoly;
mod modp;
mod poly;
mod resultant;
mod sturm;

pub use minpoly::{affine_orbit, delta_minpoly_data, DeltaMinpoly, RootSource};
pub use modp::{certify_irreducible, factor_degrees_mod_p, irreducible_mod_p, IrreducibilityCertificate};
pub use poly::{build_fn, is_prime_u64, IntPolynomial};
pub use resultant::resultant;
pub use sturm::{
    count_real_roots, isolate_roots, isolate_roots_prec, refine_root, root_contains_decimal,
    RootBox, SturmChain,
};
