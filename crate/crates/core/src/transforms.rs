//! The Cauchy/R-transform calculus at the level of truncated series.
//!
//! Every series "at infinity" lives in the substituted variable `w = 1/z`:
//! the Cauchy transform `G(z) = int (z - x)^-1 dmu` becomes
//! `Gt(w) := G(1/w) = sum_n m_n w^(n+1)`, an ordinary power series with
//! zero constant term. `K(z) = 1/z + R(z)` and the Voiculescu transform
//! `phi(y) = R(1/y)` are never materialized as Laurent objects; identities
//! involving them are rewritten through [`CumulantSeries`] and series
//! composition before implementation.

use num_traits::Zero;

use crate::error::Result;
use crate::jacobi::MomentSeq;
use crate::rational::Rational;
use crate::series::TruncSeries;

/// The expansion of the Cauchy transform at infinity:
/// entry `n` is the coefficient `m_n` of `w^(n+1)` in `Gt(w) = G(1/w)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CauchyAtInfinity {
    entries: Vec<Rational>,
}

impl CauchyAtInfinity {
    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }

    /// The moment `m_n` (the coefficient of `w^(n+1)`).
    pub fn moment(&self, n: usize) -> &Rational {
        &self.entries[n]
    }

    pub fn moments(&self) -> &[Rational] {
        &self.entries
    }

    /// `Gt` as a truncated series in `w`, of order `N + 1`.
    pub fn series(&self) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(self.entries.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.entries.iter().cloned());
        TruncSeries::from_coeffs(coeffs)
    }
}

/// Free cumulants `kappa_1 .. kappa_N`, representing
/// `R(z) = sum_{n>=1} kappa_n z^(n-1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CumulantSeries {
    kappas: Vec<Rational>,
}

impl CumulantSeries {
    pub fn new(kappas: Vec<Rational>) -> Self {
        Self { kappas }
    }

    /// Number of stored cumulants.
    pub fn order(&self) -> usize {
        self.kappas.len()
    }

    /// `kappa_n`, 1-indexed; zero beyond the stored data (cumulant data is
    /// exact, unlike a moment truncation).
    pub fn kappa(&self, n: usize) -> Rational {
        assert!(n >= 1, "cumulants are 1-indexed");
        self.kappas.get(n - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn kappas(&self) -> &[Rational] {
        &self.kappas
    }

    /// `R` as a truncated series in its argument: coefficient of `u^j` is
    /// `kappa_(j+1)`, zero-extended to the requested order.
    pub fn series(&self, order: usize) -> TruncSeries {
        TruncSeries::from_coeffs((0..=order).map(|j| self.kappa(j + 1)).collect())
    }
}

/// Plain re-indexing: the coefficient of `w^(n+1)` in `Gt` is `m_n`.
pub fn moments_to_g(m: &MomentSeq) -> CauchyAtInfinity {
    CauchyAtInfinity { entries: m.as_slice().to_vec() }
}

/// Free cumulants from moments, through compositional reversion of `Gt`.
///
/// With `H = revert(Gt)`, the reciprocal of `H(z)/z` is `1 + sum kappa_n z^n`
/// (this is `K(z) = 1/z + R(z)` with the pole cleared by multiplying by z),
/// so `m_0..m_M` yield `kappa_1..kappa_M`.
pub fn moments_to_r(m: &MomentSeq) -> Result<CumulantSeries> {
    let mm = m.order();
    let gt = moments_to_g(m).series(); // order mm + 1, leading coefficient m_0 = 1
    let h = gt.revert()?;
    let unit = h.shifted_down(1)?.reciprocal()?; // order mm
    Ok(CumulantSeries {
        kappas: (1..=mm).map(|n| unit.coeff(n)).collect(),
    })
}

/// Moments from free cumulants, by the functional equation
/// `G(z) = 1/(z - R(G(z)))`, i.e. `Gt = w (1 + Gt * (R o Gt))` in `w = 1/z`,
/// solved by triangular fixed-point iteration on series coefficients.
pub fn r_to_moments(r: &CumulantSeries, order: usize) -> MomentSeq {
    let r_ser = r.series(order);
    let mut gt = TruncSeries::identity(order + 1);
    loop {
        let g_low = gt.truncated(order);
        // infallible: orders align by construction and g_low has zero constant term
        let rg = r_ser.compose(&g_low).expect("composition with zero-constant inner");
        let prod = g_low.mul(&rg).expect("matching orders");
        let next = TruncSeries::one(order)
            .add(&prod)
            .expect("matching orders")
            .shifted_up(1);
        if next == gt {
            break;
        }
        gt = next;
    }
    MomentSeq::new((0..=order).map(|n| gt.coeff(n + 1)).collect())
        .expect("fixed point fixes m_0 = 1")
}

/// Exact check of `G(z) = 1/(z - R(G(z)))` on truncations: with
/// `M(w) = Gt(w)/w`, verifies `M - Gt * (R o Gt) = 1` to the moment order.
pub fn check_g_functional_eq(m: &MomentSeq, r: &CumulantSeries) -> bool {
    let order = m.order();
    let gt_full = moments_to_g(m).series();
    let m_ser = gt_full.shifted_down(1).expect("Gt has zero constant term");
    let gt = gt_full.truncated(order);
    let rg = r.series(order).compose(&gt).expect("zero-constant inner");
    let lhs = m_ser.sub(&gt.mul(&rg).expect("matching orders")).expect("matching orders");
    lhs == TruncSeries::one(order)
}

/// First index at which two cumulant readings disagree, if any.
pub fn first_kappa_mismatch(a: &CumulantSeries, b: &CumulantSeries) -> Option<usize> {
    let n = a.order().max(b.order());
    (1..=n).find(|&k| a.kappa(k) != b.kappa(k))
}
