//! Standard parabolics: Levi data, `rho_P`, the radical, and the
//! cocharacter lattice of `M/[M,M]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{dot, RootDatum, Weight};
use crate::error::{input, Result};
use crate::geometry::lattice::{kernel_z, qi, solve_columns, to_big, to_q64};

#[derive(Debug, Clone)]
pub struct ParabolicDatum {
    pub parent: RootDatum,
    pub levi_simple: Vec<usize>,
    pub levi: RootDatum,
    /// Indices into `parent.positive_roots` of roots not in the Levi.
    pub radical: Vec<usize>,
    /// Basis of characters of `M^ab`; `theta = rows . coweight`.
    pub ab_rows: Vec<Vec<i64>>,
}

impl ParabolicDatum {
    pub fn new(parent: &RootDatum, levi_simple: &[usize]) -> Result<ParabolicDatum> {
        let mut ls = levi_simple.to_vec();
        ls.sort();
        ls.dedup();
        let levi = parent.levi(&ls)?;
        let radical = (0..parent.positive_roots.len())
            .filter(|&k| {
                parent.root_coeffs[k].iter().enumerate().any(|(i, &c)| c != 0 && !ls.contains(&i))
            })
            .collect();
        let a: Vec<Vec<BigInt>> = ls.iter().map(|&j| to_big(&parent.simple_coroots[j])).collect();
        let ker = kernel_z(&a, parent.n);
        let ab_rows = ker
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("small kernel entries")).collect())
            .collect();
        Ok(ParabolicDatum { parent: parent.clone(), levi_simple: ls, levi, radical, ab_rows })
    }

    /// Borel subgroup.
    pub fn borel(parent: &RootDatum) -> ParabolicDatum {
        ParabolicDatum::new(parent, &[]).expect("Borel")
    }

    pub fn ab_rank(&self) -> usize {
        self.ab_rows.len()
    }

    /// `2 rho_M`.
    pub fn two_rho_m(&self) -> Weight {
        self.levi.two_rho()
    }

    /// `2 rho_P = 2 rho - 2 rho_M`.
    pub fn two_rho_p(&self) -> Weight {
        self.parent.two_rho().iter().zip(self.two_rho_m()).map(|(a, b)| a - b).collect()
    }

    pub fn radical_roots(&self) -> Vec<Weight> {
        self.radical.iter().map(|&k| self.parent.positive_roots[k].clone()).collect()
    }

    pub fn radical_coroots(&self) -> Vec<Weight> {
        self.radical.iter().map(|&k| self.parent.positive_coroots[k].clone()).collect()
    }

    /// Image of a cocharacter in `Lambda_{G,P}`.
    pub fn project(&self, coweight: &[i64]) -> Weight {
        self.ab_rows.iter().map(|r| dot(r, coweight)).collect()
    }

    /// A rational cocharacter with the given image.
    pub fn lift(&self, theta: &[i64]) -> Result<Vec<BigRational>> {
        if theta.len() != self.ab_rank() {
            return input("theta has wrong length");
        }
        let n = self.parent.n;
        let cols: Vec<Vec<BigRational>> =
            (0..n).map(|j| self.ab_rows.iter().map(|r| qi(r[j])).collect()).collect();
        solve_columns(&cols, &to_q64(theta)).ok_or_else(|| crate::Error::Input("theta not in the image".into()))
    }

    /// `<2 rho_P, theta~>`, independent of the lift.
    pub fn two_rho_p_pairing(&self, theta: &[i64]) -> Result<BigRational> {
        let x = self.lift(theta)?;
        Ok(self.two_rho_p().iter().zip(&x).map(|(a, b)| qi(*a) * b).fold(BigRational::zero(), |s, t| s + t))
    }

    /// Generators of `Lambda_{G,P}^pos`: images of simple coroots outside the Levi.
    pub fn pos_generators(&self) -> Vec<Weight> {
        (0..self.parent.rank_ss())
            .filter(|i| !self.levi_simple.contains(i))
            .map(|i| self.project(&self.parent.simple_coroots[i]))
            .collect()
    }

    /// Coefficients of `theta` in `pos_generators`, when it lies in the monoid.
    pub fn pos_coords(&self, theta: &[i64]) -> Option<Vec<i64>> {
        let cols: Vec<Vec<BigRational>> = self.pos_generators().iter().map(|g| to_q64(g)).collect();
        let c = solve_columns(&cols, &to_q64(theta))?;
        c.iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64().filter(|v| *v >= 0) } else { None })
            .collect()
    }
}
