//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncSeries`] of order `N` stores the coefficients `c_0 .. c_N` of
//! `sum_k c_k z^k + O(z^(N+1))`. Arithmetic never reads beyond the stored
//! order; binary operations require equal orders and callers align orders
//! explicitly with [`TruncSeries::truncated`] (cross-module code propagates
//! the smallest order involved).

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Series from its coefficient list `c_0 .. c_N`; the order is `len - 1`.
    ///
    /// Panics on an empty list (an order-0 series still has one coefficient).
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::from_integer(1.into()), 0, order)
    }

    /// The identity series `z`. Requires `order >= 1`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Rational::from_integer(1.into()), 1, order)
    }

    /// The series `c z^k + O(z^(order+1))`. Requires `k <= order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds truncation order");
        let mut s = Self::zero(order);
        s.coeffs[k] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Drop coefficients above `order` (no-op if already at most `order`).
    pub fn truncated(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch(self.order(), rhs.order()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse: `g` with `self * g = 1 + O(z^(N+1))`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let c0_inv = self.coeffs[0].recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = c0_inv.clone();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !out[m - k].is_zero() {
                    acc += &self.coeffs[k] * &out[m - k];
                }
            }
            out[m] = -acc * &c0_inv;
        }
        Ok(Self { coeffs: out })
    }

    /// Composition `self(inner)`, truncated at the smaller of the two orders.
    ///
    /// The inner series must have zero constant term so that truncation is
    /// well defined.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InnerConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncated(n);
        // Horner: ((f_n g + f_{n-1}) g + ...) g + f_0. Coefficients of self
        // above order n cannot contribute because inner has valuation >= 1.
        let mut acc = Self::zero(n);
        for k in (0..=n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse: `h` with `self(h(z)) = h(self(z)) = z + O(z^(N+1))`.
    ///
    /// Requires `c_0 = 0` and `c_1 != 0`. Solved coefficient by coefficient
    /// (triangular back-substitution); exactness matters more than speed at
    /// the truncation orders this crate targets.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotReversible);
        }
        let c1_inv = self.coeffs[1].recip();
        let mut h = Self::zero(n);
        h.coeffs[1] = c1_inv.clone();
        for m in 2..=n {
            // With h known below z^m, [z^m] self(h + h_m z^m) = c_1 h_m + [z^m] self(h).
            let err = self.truncated(m).compose(&h.truncated(m))?.coeff(m);
            h.coeffs[m] = -err * &c1_inv;
        }
        Ok(h)
    }

    /// Multiply by `z^k`. The result is known to order `N + k` exactly.
    pub fn shifted_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divide by `z^k`; the first `k` coefficients must vanish. Order drops by `k`.
    pub fn shifted_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisibleByZ(k));
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign = c < &Rational::zero();
            if wrote {
                write!(f, " {} ", if sign { "-" } else { "+" })?;
            } else if sign {
                write!(f, "-")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag} ")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s(coeffs: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn mul_difference_of_squares() {
        // (1+z)(1-z) at order 3
        let got = s(&[1, 1, 0, 0]).mul(&s(&[1, -1, 0, 0])).unwrap();
        assert_eq!(got, s(&[1, 0, -1, 0]));
    }

    #[test]
    fn add_monomials() {
        let got = s(&[0, 1, 0]).add(&s(&[0, 0, 1])).unwrap();
        assert_eq!(got, s(&[0, 1, 1]));
    }

    #[test]
    fn mul_truncates() {
        // (1+z+z^2)(1+z) at order 2
        let got = s(&[1, 1, 1]).mul(&s(&[1, 1, 0])).unwrap();
        assert_eq!(got, s(&[1, 2, 2]));
    }

    #[test]
    fn arith_order_mismatch_is_an_error() {
        assert_eq!(
            s(&[1, 0]).add(&s(&[1, 0, 0])).unwrap_err(),
            Error::OrderMismatch(1, 2)
        );
    }

    #[test]
    fn reciprocal_geometric() {
        let got = s(&[1, -1, 0, 0, 0]).reciprocal().unwrap();
        assert_eq!(got, s(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn reciprocal_of_one() {
        assert_eq!(s(&[1, 0, 0, 0]).reciprocal().unwrap(), s(&[1, 0, 0, 0]));
    }

    #[test]
    fn reciprocal_squared_geometric() {
        // 1/(1-z)^2 = 1 + 2z + 3z^2 + 4z^3
        let sq = s(&[1, -1, 0, 0]).mul(&s(&[1, -1, 0, 0])).unwrap();
        assert_eq!(sq.reciprocal().unwrap(), s(&[1, 2, 3, 4]));
    }

    #[test]
    fn reciprocal_needs_unit() {
        assert_eq!(s(&[0, 1]).reciprocal().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn compose_self_quadratic() {
        // f = g = z + z^2 at order 4: z + 2z^2 + 2z^3 + z^4
        let f = s(&[0, 1, 1, 0, 0]);
        assert_eq!(f.compose(&f).unwrap(), s(&[0, 1, 2, 2, 1]));
    }

    #[test]
    fn compose_identity_inner() {
        let f = s(&[3, 1, -2, 5]);
        let z = TruncSeries::identity(3);
        assert_eq!(f.compose(&z).unwrap(), f);
    }

    #[test]
    fn compose_geometric_with_square() {
        // 1/(1-z) composed with z^2 at order 4: 1 + z^2 + z^4
        let f = s(&[1, 1, 1, 1, 1]);
        let g = s(&[0, 0, 1, 0, 0]);
        assert_eq!(f.compose(&g).unwrap(), s(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let f = s(&[1, 1]);
        assert_eq!(f.compose(&s(&[1, 0])).unwrap_err(), Error::InnerConstantTerm);
    }

    #[test]
    fn revert_moebius() {
        // z/(1-z) = z + z^2 + z^3 + z^4 reverts to z/(1+z)
        let f = s(&[0, 1, 1, 1, 1]);
        assert_eq!(f.revert().unwrap(), s(&[0, 1, -1, 1, -1]));
    }

    #[test]
    fn revert_identity() {
        let z = TruncSeries::identity(6);
        assert_eq!(z.revert().unwrap(), z);
    }

    #[test]
    fn revert_catalan() {
        // z - z^2 reverts to the Catalan generating series z + z^2 + 2z^3 + 5z^4,
        // since h = z + h^2 forces h_n = Cat(n-1).
        let f = s(&[0, 1, -1, 0, 0]);
        let h = f.revert().unwrap();
        assert_eq!(h, s(&[0, 1, 1, 2, 5]));
        // cross-check through the independent compose path, both ways
        assert_eq!(f.compose(&h).unwrap(), TruncSeries::identity(4));
        assert_eq!(h.compose(&f).unwrap(), TruncSeries::identity(4));
    }

    #[test]
    fn revert_preconditions() {
        assert_eq!(s(&[1, 1]).revert().unwrap_err(), Error::NotReversible);
        assert_eq!(s(&[0, 0, 1]).revert().unwrap_err(), Error::NotReversible);
    }

    #[test]
    fn shifts() {
        let f = s(&[0, 0, 1, 2]);
        assert_eq!(f.shifted_down(2).unwrap(), s(&[1, 2]));
        assert_eq!(s(&[1, 2]).shifted_up(2), f);
        assert!(s(&[1, 0]).shifted_down(1).is_err());
    }

    #[test]
    fn display_readable() {
        assert_eq!(s(&[1, 0, -1, 0]).to_string(), "1 - z^2 + O(z^4)");
        assert_eq!(TruncSeries::zero(2).to_string(), "0 + O(z^3)");
    }
}
