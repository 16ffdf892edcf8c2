//! Lattice models of `X(F)` with `F = F_p((t))` and their orbit labels.

use rand::Rng;

use super::matrix::Mat;
use super::series::{min_valuation, TruncSeries};
use crate::error::{input, Result};
use crate::roots::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Space {
    /// Row vectors under `GL_2`; label: minimal valuation.
    A2,
    /// `Mat_2` under `GL_2 x GL_2`; label: elementary divisors, increasing.
    Mat2,
    /// `U\GL_2` as (bottom row, det); label `(val det - min val v, min val v)`.
    UGl2,
    /// `[P,P]\GL_3`, `P` of type (2,1), as (bottom row, det); same label.
    PpGl3,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::A2, Space::Mat2, Space::UGl2, Space::PpGl3];

    pub fn name(self) -> &'static str {
        match self {
            Space::A2 => "A2",
            Space::Mat2 => "Mat2",
            Space::UGl2 => "U\\GL2",
            Space::PpGl3 => "[P,P]\\GL3",
        }
    }

    /// Size of the acting `GL_n`.
    pub fn n(self) -> usize {
        match self {
            Space::PpGl3 => 3,
            _ => 2,
        }
    }

    pub fn label_len(self) -> usize {
        match self {
            Space::A2 => 1,
            _ => 2,
        }
    }

    /// Whether a label is realized at all.
    pub fn is_label(self, l: &[i64]) -> bool {
        l.len() == self.label_len()
            && match self {
                Space::A2 => true,
                Space::Mat2 => l[0] <= l[1],
                Space::UGl2 | Space::PpGl3 => true,
            }
    }

    /// A point with the given label; `rel` is the relative precision.
    pub fn representative(self, p: u64, l: &[i64], rel: usize) -> Result<LatticePoint> {
        if !self.is_label(l) {
            return input(format!("{l:?} is not a label of {}", self.name()));
        }
        let x = match self {
            Space::A2 => Mat::from_entries(
                1,
                2,
                vec![TruncSeries::zero(p, l[0] + rel as i64), TruncSeries::monomial(p, 1, l[0], rel)],
            ),
            Space::Mat2 | Space::UGl2 => Mat::diag_powers(p, l, rel),
            Space::PpGl3 => Mat::diag_powers(p, &[l[0], 0, l[1]], rel),
        };
        Ok(LatticePoint { space: self, x })
    }
}

#[derive(Debug, Clone)]
pub struct LatticePoint {
    pub space: Space,
    pub x: Mat,
}

impl LatticePoint {
    /// Right action of `g` (for `Mat2`, the right factor).
    pub fn act(&self, g: &Mat) -> Result<LatticePoint> {
        Ok(LatticePoint { space: self.space, x: self.x.mul(g)? })
    }

    /// A random translate by the hyperspecial subgroup.
    pub fn random_translate<R: Rng>(&self, prec: i64, rng: &mut R) -> Result<LatticePoint> {
        let p = self.x.p();
        let n = self.space.n();
        let mut x = self.x.mul(&Mat::random_k(p, n, prec, rng))?;
        if self.space == Space::Mat2 {
            x = Mat::random_k(p, n, prec, rng).mul(&x)?;
        }
        Ok(LatticePoint { space: self.space, x })
    }

    /// Whether the point is integral in the affine closure.
    pub fn is_integral(&self) -> Result<bool> {
        let x = &self.x;
        Ok(match self.space {
            Space::A2 | Space::Mat2 => min_valuation(&x.e.iter().collect::<Vec<_>>())? >= 0,
            // closure (A^n - 0) x G_m -> A^n x G_m
            Space::UGl2 | Space::PpGl3 => {
                let d = det_valuation(x)?;
                min_valuation(&x.row(x.rows - 1))? >= 0 && d == 0
            }
        })
    }
}

fn det_valuation(x: &Mat) -> Result<i64> {
    let d = x.det()?;
    d.valuation().ok_or_else(|| crate::Error::Precision("determinant vanishes to precision".into()))
}

/// The `G(o)`-orbit label of a point.
pub fn orbit_invariant(pt: &LatticePoint) -> Result<Weight> {
    let x = &pt.x;
    match pt.space {
        Space::A2 => Ok(vec![min_valuation(&x.row(0))?]),
        Space::Mat2 => x.elementary_divisors(),
        Space::UGl2 | Space::PpGl3 => {
            let d = det_valuation(x)?;
            let v = min_valuation(&x.row(x.rows - 1))?;
            Ok(vec![d - v, v])
        }
    }
}

/// Precision used for tabulations up to `height`.
pub fn precision_for(height: u32) -> usize {
    2 * height as usize + 4
}
