//! Exact rational polyhedral geometry and integer-lattice algebra.

pub mod cone;
pub mod fm;
pub mod lattice;

pub use cone::{double_description, hilbert_basis, Cone};
pub use fm::{feasible, integral_witness, LinearSystem, Rel};
pub use lattice::LatticeMap;

use num_bigint::BigInt;

use crate::error::Result;

/// `{y : <y, x> >= 0 for all x in c}`.
pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

pub fn is_strictly_convex(c: &Cone) -> bool {
    c.is_strictly_convex()
}

pub fn relative_interior_contains(c: &Cone, v: &[num_rational::BigRational]) -> bool {
    c.relative_interior_contains(v)
}

pub fn lattice_points(c: &Cone, height: u32) -> Vec<Vec<i64>> {
    c.lattice_points(height)
}

/// Torsion order of the cokernel of an injective lattice map.
pub fn torsion_order(m: &LatticeMap) -> Result<BigInt> {
    m.torsion_order()
}
