//! Truncated bivariate power series with exact rational coefficients.
//!
//! A [`BiTruncSeries`] of order `N` stores the dense square block
//! `c_{ij} z^i v^j` for `0 <= i, j <= N`. The block is a quotient ring
//! (the ideal generated by `z^(N+1)` and `v^(N+1)`), so products and
//! unit division are exact within the block.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiTruncSeries {
    order: usize,
    coeffs: Vec<Vec<Rational>>,
}

impl BiTruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![vec![Rational::zero(); order + 1]; order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^i v^j`; zero outside the stored block.
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Rational) {
        self.coeffs[i][j] = c;
    }

    pub fn add_to_coeff(&mut self, i: usize, j: usize, c: &Rational) {
        self.coeffs[i][j] += c;
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        let mut out = self.clone();
        for i in 0..=self.order {
            for j in 0..=self.order {
                out.coeffs[i][j] += &rhs.coeffs[i][j];
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        let n = self.order;
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n {
                let a = &self.coeffs[i][j];
                if a.is_zero() {
                    continue;
                }
                for p in 0..=n - i {
                    for q in 0..=n - j {
                        let b = &rhs.coeffs[p][q];
                        if !b.is_zero() {
                            out.coeffs[i + p][j + q] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact division by a series with nonzero constant term.
    pub fn div_unit(&self, den: &Self) -> Result<Self> {
        if self.order != den.order {
            return Err(Error::OrderMismatch(self.order, den.order));
        }
        if den.coeffs[0][0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order;
        let d00_inv = den.coeffs[0][0].recip();
        let mut q = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n {
                // num_{ij} = sum_{p<=i, q<=j} den_{pq} quot_{i-p, j-q}
                let mut acc = self.coeffs[i][j].clone();
                for p in 0..=i {
                    for r in 0..=j {
                        if p == 0 && r == 0 {
                            continue;
                        }
                        let d = &den.coeffs[p][r];
                        if !d.is_zero() && !q.coeffs[i - p][j - r].is_zero() {
                            acc -= d * &q.coeffs[i - p][j - r];
                        }
                    }
                }
                q.coeffs[i][j] = acc * &d00_inv;
            }
        }
        Ok(q)
    }

    /// Exact division by `(z - v)`.
    ///
    /// Well defined exactly when the series is antisymmetric under swapping
    /// the two variables; the zero-remainder check rejects anything else.
    /// Entries pushed above the block by the internal `v`-shift are dropped,
    /// so callers should leave one order of headroom when the data is a
    /// genuine polynomial.
    pub fn div_z_minus_v(&self) -> Result<Self> {
        let n = self.order;
        let mut g = Self::zero(n);
        // Treat rows as polynomials in v: with F = sum_i f_i(v) z^i, the
        // quotient rows satisfy g_{i-1} = f_i + v g_i, g_n = 0, and the
        // remainder f_0 + v g_0 must vanish.
        let mut carry = vec![Rational::zero(); n + 1]; // g_i, starts as g_n = 0
        for i in (1..=n).rev() {
            let mut row = self.coeffs[i].clone();
            for j in (1..=n).rev() {
                if !carry[j - 1].is_zero() {
                    row[j] += &carry[j - 1];
                }
            }
            g.coeffs[i - 1] = row.clone();
            carry = row;
        }
        let mut rem = self.coeffs[0].clone();
        for j in (1..=n).rev() {
            let c = carry[j - 1].clone();
            rem[j] += c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisibleByZMinusV);
        }
        Ok(g)
    }

    /// True iff only diagonal coefficients survive, i.e. the series is a
    /// function of the product `zv` alone within the truncation.
    pub fn is_diag_dependent(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    /// First nonzero off-diagonal entry in row-major order, if any.
    pub fn first_off_diagonal(&self) -> Option<(usize, usize, Rational)> {
        for i in 0..=self.order {
            for j in 0..=self.order {
                if i != j && !self.coeffs[i][j].is_zero() {
                    return Some((i, j, self.coeffs[i][j].clone()));
                }
            }
        }
        None
    }

    /// Diagonal entries `c_{kk}`, the coefficients of `(zv)^k`.
    pub fn diagonal(&self) -> Vec<Rational> {
        (0..=self.order).map(|k| self.coeffs[k][k].clone()).collect()
    }

    /// Shrink the block to a smaller order.
    pub fn restricted(&self, order: usize) -> Self {
        let n = order.min(self.order);
        let mut out = Self::zero(n);
        for i in 0..=n {
            out.coeffs[i].clone_from_slice(&self.coeffs[i][..=n]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn geometric_in_zv_is_diagonal() {
        // 1/(1-zv) at order 6, computed by unit division
        let one = {
            let mut b = BiTruncSeries::zero(6);
            b.set_coeff(0, 0, rat(1));
            b
        };
        let mut den = BiTruncSeries::zero(6);
        den.set_coeff(0, 0, rat(1));
        den.set_coeff(1, 1, rat(-1));
        let q = one.div_unit(&den).unwrap();
        assert!(q.is_diag_dependent());
        assert_eq!(q.diagonal(), (0..=6).map(|_| rat(1)).collect::<Vec<_>>());
        // and the division inverts multiplication
        assert_eq!(q.mul(&den).unwrap(), one);
    }

    #[test]
    fn z_plus_v_is_not_diagonal() {
        let mut b = BiTruncSeries::zero(3);
        b.set_coeff(1, 0, rat(1));
        b.set_coeff(0, 1, rat(1));
        assert!(!b.is_diag_dependent());
        assert_eq!(b.first_off_diagonal(), Some((0, 1, rat(1))));
    }

    #[test]
    fn diagonal_sum_is_diagonal() {
        let mut b = BiTruncSeries::zero(4);
        for k in 0..=4 {
            b.set_coeff(k, k, rat(1));
        }
        assert!(b.is_diag_dependent());
    }

    #[test]
    fn divide_out_z_minus_v() {
        // z^2 v - z v^2 = zv (z - v)
        let mut f = BiTruncSeries::zero(4);
        f.set_coeff(2, 1, rat(1));
        f.set_coeff(1, 2, rat(-1));
        let g = f.div_z_minus_v().unwrap();
        let mut zv = BiTruncSeries::zero(4);
        zv.set_coeff(1, 1, rat(1));
        assert_eq!(g, zv);
        // (z - v) * g reproduces f
        let mut z_minus_v = BiTruncSeries::zero(4);
        z_minus_v.set_coeff(1, 0, rat(1));
        z_minus_v.set_coeff(0, 1, rat(-1));
        assert_eq!(z_minus_v.mul(&g).unwrap(), f);
    }

    #[test]
    fn non_divisible_is_rejected() {
        let mut f = BiTruncSeries::zero(3);
        f.set_coeff(0, 0, rat(1));
        assert_eq!(f.div_z_minus_v().unwrap_err(), Error::NotDivisibleByZMinusV);
    }
}
