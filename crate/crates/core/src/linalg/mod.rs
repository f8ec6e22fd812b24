pub mod alternating;
pub mod finab;
pub mod glnz;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use alternating::alternating_divisors;
pub use finab::{Element, FinAb, FinAbHom, KerImCoker};
pub use glnz::{closure_mod, glnz_generators, ModMatrix};
pub use lattice::{column_basis, nullspace, Lattice, LatticeQuotient};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Smith};
