//! Jacobi-Szego parameters, moment sequences, and monic orthogonal
//! polynomials via the three-term recurrence.
//!
//! The recurrence is `x P_n = P_{n+1} + alpha_n P_n + omega_n P_{n-1}` with
//! `omega_0 = 1` implicit and never stored. `omega_k = 0` is allowed and
//! means the measure is supported on `k` points; every consumer honors the
//! termination.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{rat, Rational};

/// Jacobi-Szego coefficient sequences `(alpha_n)_{n>=0}` and `(omega_n)_{n>=1}`.
///
/// Heads list explicit values; an optional tail `(alpha_inf, omega_inf)`
/// means every parameter beyond the heads equals these constants, which
/// represents a free Meixner measure with four rationals. Beyond the head
/// with no tail, parameters read as zero: the measure is then finitely
/// supported (the first vanishing omega terminates it), so listing a finite
/// head is the same as describing a finite quadrature measure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiParams {
    head_alpha: Vec<Rational>,
    head_omega: Vec<Rational>,
    tail: Option<(Rational, Rational)>,
}

impl JacobiParams {
    /// `head_alpha[n]` is `alpha_n`; `head_omega[k]` is `omega_{k+1}`.
    pub fn new(
        head_alpha: Vec<Rational>,
        head_omega: Vec<Rational>,
        tail: Option<(Rational, Rational)>,
    ) -> Result<Self> {
        if head_omega.iter().any(Rational::is_negative)
            || tail.as_ref().is_some_and(|(_, w)| w.is_negative())
        {
            return Err(Error::NegativeOmega);
        }
        Ok(Self { head_alpha, head_omega, tail })
    }

    /// Constant parameters `alpha_n = alpha`, `omega_n = omega` for all `n`.
    pub fn constant(alpha: Rational, omega: Rational) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), Some((alpha, omega)))
    }

    pub fn alpha(&self, n: usize) -> Rational {
        self.head_alpha
            .get(n)
            .or(self.tail.as_ref().map(|(a, _)| a))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `omega_n` for `n >= 1`.
    pub fn omega(&self, n: usize) -> Rational {
        debug_assert!(n >= 1, "omega_0 = 1 is implicit and never stored");
        self.head_omega
            .get(n - 1)
            .or(self.tail.as_ref().map(|(_, w)| w))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn head_alpha(&self) -> &[Rational] {
        &self.head_alpha
    }

    pub fn head_omega(&self) -> &[Rational] {
        &self.head_omega
    }

    pub fn tail(&self) -> Option<&(Rational, Rational)> {
        self.tail.as_ref()
    }

    /// First level `k >= 1` with `omega_k = 0`, scanning provided data only.
    pub fn termination_level(&self) -> Option<usize> {
        for (i, w) in self.head_omega.iter().enumerate() {
            if w.is_zero() {
                return Some(i + 1);
            }
        }
        match &self.tail {
            Some((_, w)) if w.is_zero() => Some(self.head_omega.len() + 1),
            Some(_) => None,
            // no tail: parameters end, so the measure terminates right after the head
            None => Some(self.head_omega.len() + 1),
        }
    }
}

/// A moment sequence `(m_0, ..., m_N)` of a probability measure, acting as
/// the expectation functional on polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentSeq {
    moments: Vec<Rational>,
}

impl MomentSeq {
    pub fn new(moments: Vec<Rational>) -> Result<Self> {
        if moments.first() != Some(&Rational::one()) {
            return Err(Error::NotProbability);
        }
        Ok(Self { moments })
    }

    /// Largest n with `m_n` available.
    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.moments[n]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.moments
    }

    /// Apply the expectation functional: `E[p(X)] = sum_k p_k m_k`.
    pub fn expectation(&self, p: &Poly) -> Result<Rational> {
        let deg = match p.degree() {
            None => return Ok(Rational::zero()),
            Some(d) => d,
        };
        if deg > self.order() {
            return Err(Error::InsufficientMoments { need: deg, have: self.order() });
        }
        let mut acc = Rational::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * &self.moments[k];
            }
        }
        Ok(acc)
    }
}

/// Monic orthogonal polynomials `P_0..P_N` with their squared norms
/// `(1, omega_1, omega_1 omega_2, ...)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoBasis {
    pub polys: Vec<Poly>,
    pub norms: Vec<Rational>,
}

/// Moments `m_0..m_order` of the measure with the given Jacobi parameters.
///
/// `m_n` is the top-left entry of the n-th power of the tridiagonal
/// multiplication-by-x operator in the monic basis; heights are capped at
/// `order/2` since a returning path of length `<= order` cannot climb
/// higher. `omega_k = 0` simply truncates the operator.
pub fn jacobi_to_moments(j: &JacobiParams, order: usize) -> MomentSeq {
    let height = order / 2 + 1;
    let alphas: Vec<Rational> = (0..height).map(|k| j.alpha(k)).collect();
    let omegas: Vec<Rational> = (1..height).map(|k| j.omega(k)).collect();
    let mut moments = Vec::with_capacity(order + 1);
    moments.push(Rational::one());
    // v holds the P-basis coordinates of x^s * P_0
    let mut v = vec![Rational::zero(); height];
    v[0] = Rational::one();
    for _ in 1..=order {
        let mut w = vec![Rational::zero(); height];
        for k in 0..height {
            if v[k].is_zero() {
                continue;
            }
            // x P_k = P_{k+1} + alpha_k P_k + omega_k P_{k-1}
            if k + 1 < height {
                w[k + 1] += &v[k];
            }
            if !alphas[k].is_zero() {
                w[k] += &v[k] * &alphas[k];
            }
            if k >= 1 && !omegas[k - 1].is_zero() {
                w[k - 1] += &v[k] * &omegas[k - 1];
            }
        }
        v = w;
        moments.push(v[0].clone());
    }
    MomentSeq { moments }
}

/// Result of recovering Jacobi parameters from moments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiRecovery {
    pub params: JacobiParams,
    /// `Some(k)` when the measure is finitely supported at level `k`
    /// (`omega_k = 0`); recovery stops there.
    pub terminated: Option<usize>,
}

/// Recover Jacobi parameters from a moment sequence by the Stieltjes
/// procedure: build the monic orthogonal polynomials incrementally from the
/// moment functional. `m_0..m_M` determine `alpha_0..alpha_((M-1)/2)` and
/// `omega_1..omega_(M/2)`; a zero squared norm signals finite support, a
/// negative one means the input is not a moment sequence of a positive
/// measure.
pub fn moments_to_jacobi(m: &MomentSeq) -> Result<JacobiRecovery> {
    let mm = m.order();
    let mut alphas: Vec<Rational> = Vec::new();
    let mut omegas: Vec<Rational> = Vec::new();
    let mut terminated = None;

    let mut p_prev = Poly::zero();
    let mut p_cur = Poly::one();
    let mut s_cur = Rational::one(); // E[P_0^2] = m_0
    let mut n = 0usize;
    loop {
        if 2 * n + 1 > mm {
            break;
        }
        let alpha_n = m.expectation(&p_cur.mul(&p_cur).mul_x())? / &s_cur;
        alphas.push(alpha_n.clone());
        if 2 * (n + 1) > mm {
            break;
        }
        // P_{n+1} = (x - alpha_n) P_n - omega_n P_{n-1}
        let mut p_next = p_cur.mul_x().sub(&p_cur.scale(&alpha_n));
        if n >= 1 {
            p_next = p_next.sub(&p_prev.scale(&omegas[n - 1]));
        }
        let s_next = m.expectation(&p_next.mul(&p_next))?;
        if s_next.is_negative() {
            return Err(Error::NotPositiveMeasure(n + 1));
        }
        omegas.push(&s_next / &s_cur);
        if s_next.is_zero() {
            terminated = Some(n + 1);
            break;
        }
        p_prev = p_cur;
        p_cur = p_next;
        s_cur = s_next;
        n += 1;
    }

    Ok(JacobiRecovery {
        params: JacobiParams::new(alphas, omegas, None)?,
        terminated,
    })
}

/// The monic orthogonal polynomials `P_0..P_count` by the three-term
/// recurrence, with squared norms as cumulative omega-products.
pub fn ortho_polys(j: &JacobiParams, count: usize) -> OrthoBasis {
    let mut polys = Vec::with_capacity(count + 1);
    let mut norms = Vec::with_capacity(count + 1);
    polys.push(Poly::one());
    norms.push(Rational::one());
    if count == 0 {
        return OrthoBasis { polys, norms };
    }
    polys.push(Poly::x().sub(&Poly::constant(j.alpha(0))));
    norms.push(j.omega(1));
    for n in 1..count {
        let p_n: &Poly = &polys[n];
        let p_prev: &Poly = &polys[n - 1];
        let next = p_n
            .mul_x()
            .sub(&p_n.scale(&j.alpha(n)))
            .sub(&p_prev.scale(&j.omega(n)));
        polys.push(next);
        let norm = &norms[n] * j.omega(n + 1);
        norms.push(norm);
    }
    OrthoBasis { polys, norms }
}

/// Gram matrix of a polynomial family under the moment functional:
/// entry `(i, j)` is `E[Q_i(X) Q_j(X)]`.
pub fn gram_matrix(polys: &[Poly], m: &MomentSeq) -> Result<Vec<Vec<Rational>>> {
    let n = polys.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let e = m.expectation(&polys[i].mul(&polys[j]))?;
            out[i][j] = e.clone();
            out[j][i] = e;
        }
    }
    Ok(out)
}

/// Moments of `X + t` from the moments of `X` (binomial shift).
pub fn shift_moments(m: &MomentSeq, t: &Rational) -> MomentSeq {
    let mm = m.order();
    let mut moments = Vec::with_capacity(mm + 1);
    for n in 0..=mm {
        let mut acc = Rational::zero();
        let mut binom = Rational::one();
        let mut tpow = Rational::one(); // t^(n-k), built from k = n downward
        // walk k from n down to 0 so binomials update integrally
        for k in (0..=n).rev() {
            acc += &binom * m.get(k) * &tpow;
            if k > 0 {
                binom = binom * rat(k as i64) / rat((n - k + 1) as i64);
                tpow *= t;
            }
        }
        moments.push(acc);
    }
    MomentSeq { moments }
}
