//! The free Meixner family and its transform representations.
//!
//! A standard free Meixner measure is parameterized by `(a, b)` with
//! `b >= -1`: its Jacobi parameters are `alpha_0 = 0`, `alpha_n = a` for
//! `n >= 1`, `omega_1 = 1`, `omega_n = 1 + b` for `n >= 2`. The boundary
//! `b = -1` is the two-point measure and is accepted everywhere in exact
//! arithmetic; only the density evaluator excludes it (no continuous part).
//!
//! Voiculescu-transform identities are checked in composable form: with the
//! map `g(z) = z / (1 + a z + b z^2)`, the defining identity
//! `phi((b z^2 + a z + 1)/z) = z` reads `R(g(z)) = z` once `phi(y) = R(1/y)`
//! is substituted, so everything stays inside ordinary truncated series.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_to_moments, JacobiParams, MomentSeq};
use crate::rational::{rat, Rational};
use crate::series::TruncSeries;
use crate::transforms::{moments_to_g, CauchyAtInfinity, CumulantSeries};

/// Parameters `(a, b)` of a standard free Meixner distribution, `b >= -1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeixnerParams {
    a: Rational,
    b: Rational,
}

impl MeixnerParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if b < rat(-1) {
            return Err(Error::MeixnerBOutOfRange);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Jacobi parameters: head `alpha_0 = 0`, `omega_1 = 1`, tail `(a, 1+b)`.
    pub fn jacobi(&self) -> JacobiParams {
        JacobiParams::new(
            vec![Rational::zero()],
            vec![Rational::one()],
            Some((self.a.clone(), rat(1) + &self.b)),
        )
        .expect("1 + b >= 0 by construction")
    }

    /// Moments through the Jacobi route.
    pub fn moments(&self, order: usize) -> MomentSeq {
        jacobi_to_moments(&self.jacobi(), order)
    }

    /// The map `g(z) = z / (1 + a z + b z^2)` as a series: `g(0) = 0`,
    /// `g'(0) = 1`.
    pub fn g_map(&self, order: usize) -> TruncSeries {
        mobius_like(&self.a, &self.b, order)
    }

    /// The renormalization map `rho(z) = z / ((1+b) z^2 + a z + 1)`, the
    /// `rho` for which `1/g(z) = F(1/rho(z))`.
    pub fn rho_map(&self, order: usize) -> TruncSeries {
        mobius_like(&self.a, &(rat(1) + &self.b), order)
    }

    /// Free cumulants `kappa_1..kappa_order`: the unique solution with
    /// `kappa_1 = 0`, `kappa_2 = 1` of `R = w (1 + a R + b R^2)`, by
    /// triangular coefficient recursion.
    pub fn r_transform(&self, order: usize) -> CumulantSeries {
        // Write R(w) = sum_{j>=1} c_j w^j, so c_j = kappa_{j+1}; the equation
        // gives c_j = [w^{j-1}] (1 + a R + b R^2), i.e.
        // c_j = delta_{j,1} + a c_{j-1} + b sum_{i+k=j-1} c_i c_k.
        let mut c = vec![Rational::zero(); order + 1];
        for j in 1..=order {
            let mut val = if j == 1 { Rational::one() } else { Rational::zero() };
            if !self.a.is_zero() {
                val += &self.a * &c[j - 1];
            }
            if !self.b.is_zero() {
                let mut sq = Rational::zero();
                for i in 1..j - 1 {
                    sq += &c[i] * &c[j - 1 - i];
                }
                val += &self.b * sq;
            }
            c[j] = val;
        }
        let mut kappas = Vec::with_capacity(order);
        if order >= 1 {
            kappas.push(Rational::zero()); // kappa_1
            kappas.extend(c.into_iter().skip(1).take(order - 1));
        }
        CumulantSeries::new(kappas)
    }

    /// Exact check of `phi((b z^2 + a z + 1)/z) = z` at the given order,
    /// as `R(g(z)) = z`.
    pub fn verify_phi_identity(&self, order: usize) -> bool {
        self.phi_identity_defect(order).is_none()
    }

    /// First coefficient at which `R(g(z)) - z` fails to vanish, if any.
    pub fn phi_identity_defect(&self, order: usize) -> Option<(usize, Rational)> {
        if order == 0 {
            return None;
        }
        let r = self.r_transform(order + 1).series(order);
        let composed = r
            .compose(&self.g_map(order))
            .expect("g has zero constant term");
        let diff = composed
            .sub(&TruncSeries::identity(order))
            .expect("matching orders");
        diff.coeffs()
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n, c.clone()))
    }

    /// Levy-type representation for `b >= 0`: the cumulant shift
    /// `kappa_(n+2)` of this measure equals the moment `m_n` of the
    /// semicircle law with mean `a` and variance `b`, for `n <= order`.
    pub fn verify_levy_representation(&self, order: usize) -> Result<bool> {
        Ok(self.levy_defect(order)?.is_none())
    }

    /// First `n <= order` where `kappa_(n+2) != m_n(omega_(a,b))`, with both
    /// values.
    pub fn levy_defect(&self, order: usize) -> Result<Option<(usize, Rational, Rational)>> {
        if self.b.is_negative() {
            return Err(Error::UseNegativeBRepresentation);
        }
        let r = self.r_transform(order + 2);
        let sc = SemicircleParams::new(self.a.clone(), self.b.clone())?.cauchy(order);
        for n in 0..=order {
            let lhs = r.kappa(n + 2);
            let rhs = sc.moment(n);
            if &lhs != rhs {
                return Ok(Some((n, lhs, rhs.clone())));
            }
        }
        Ok(None)
    }

    /// Representation for `-1 <= b < 0`: `G(z) = g(phi_eta(z))` where
    /// `phi_eta = G` of the semicircle law with mean `a` and variance
    /// `1 + b >= 0`. Checked as `g o H = Gt` to the given order, with `H`
    /// the `1/z`-coefficient series of that semicircle transform.
    pub fn verify_negative_b(&self, order: usize) -> Result<bool> {
        Ok(self.negative_b_defect(order)?.is_none())
    }

    /// First coefficient of `g o H - Gt` that fails to vanish, if any.
    pub fn negative_b_defect(&self, order: usize) -> Result<Option<(usize, Rational)>> {
        if !self.b.is_negative() || self.b < rat(-1) {
            return Err(Error::NegativeBOutOfRange);
        }
        let eta_var = rat(1) + &self.b;
        let h = SemicircleParams::new(self.a.clone(), eta_var)?
            .cauchy(order)
            .series()
            .truncated(order);
        let lhs = self.g_map(order).compose(&h).expect("H has zero constant term");
        let gt = moments_to_g(&self.moments(order)).series().truncated(order);
        let diff = lhs.sub(&gt).expect("matching orders");
        Ok(diff
            .coeffs()
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n, c.clone())))
    }

    /// Third route to the moments: the continued-fraction fixed point.
    /// The tail value is the semicircle transform with mean `a`, variance
    /// `1 + b`, and `Gt = w / (1 - w * tail)`.
    pub fn moments_via_fixed_point(&self, order: usize) -> MomentSeq {
        let tail = SemicircleParams::new(self.a.clone(), rat(1) + &self.b)
            .expect("1 + b >= 0")
            .cauchy(order)
            .series()
            .truncated(order);
        let den = TruncSeries::one(order)
            .sub(&tail.shifted_up(1).truncated(order))
            .expect("matching orders");
        let gt = den.reciprocal().expect("unit constant term").shifted_up(1);
        MomentSeq::new((0..=order).map(|n| gt.coeff(n + 1)).collect())
            .expect("m_0 = 1 by construction")
    }
}

/// Series of `z / (1 + p z + q z^2)` to the given order.
fn mobius_like(p: &Rational, q: &Rational, order: usize) -> TruncSeries {
    let mut den = TruncSeries::one(order);
    if order >= 1 {
        den = den
            .add(&TruncSeries::monomial(p.clone(), 1, order))
            .expect("matching orders");
    }
    if order >= 2 {
        den = den
            .add(&TruncSeries::monomial(q.clone(), 2, order))
            .expect("matching orders");
    }
    den.reciprocal()
        .expect("unit constant term")
        .shifted_up(1)
        .truncated(order)
}

/// Mean/variance parameters of a semicircle law `omega_(a,b)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemicircleParams {
    mean: Rational,
    variance: Rational,
}

impl SemicircleParams {
    pub fn new(mean: Rational, variance: Rational) -> Result<Self> {
        if variance.is_negative() {
            return Err(Error::NotASemicircleMeasure);
        }
        Ok(Self { mean, variance })
    }

    pub fn mean(&self) -> &Rational {
        &self.mean
    }

    pub fn variance(&self) -> &Rational {
        &self.variance
    }

    /// The transform at infinity, solved from the fixed point
    /// `G = 1/(y - a - b G)`: in `w = 1/y`,
    /// `Gt = w + a w Gt + b w Gt^2`, a triangular recursion on coefficients.
    /// Equivalently these are the moments of the constant Jacobi sequence
    /// `alpha_n = a`, `omega_n = b`.
    pub fn cauchy(&self, order: usize) -> CauchyAtInfinity {
        let a = &self.mean;
        let b = &self.variance;
        // g[n] = coefficient of w^n in Gt; m_(n-1) = g[n]
        let mut g = vec![Rational::zero(); order + 2];
        for n in 1..=order + 1 {
            let mut val = if n == 1 { Rational::one() } else { Rational::zero() };
            if !a.is_zero() {
                val += a * &g[n - 1];
            }
            if !b.is_zero() {
                let mut sq = Rational::zero();
                for i in 1..n - 1 {
                    sq += &g[i] * &g[n - 1 - i];
                }
                val += b * sq;
            }
            g[n] = val;
        }
        let m = MomentSeq::new(g[1..].to_vec()).expect("m_0 = 1 by construction");
        moments_to_g(&m)
    }
}

pub mod numeric {
    //! Floating-point evaluation of the Meixner Cauchy transform and its
    //! spectral density from the closed continued-fraction form.
    //!
    //! The continued fraction closes after one level: the tail value `t`
    //! solves `(1+b) t^2 - (w-a) t + 1 = 0` and `G(w) = 1/(w - t)`. On the
    //! upper half plane the measure-defining branch is the root with
    //! `Im(t) < 0`, which forces `Im(G) < 0` and `G -> 1/w` at infinity; on
    //! the real axis off the support we take the root continuous with the
    //! upper-half-plane limit.

    use num_complex::Complex64;
    use num_traits::ToPrimitive;

    use super::MeixnerParams;
    use crate::error::{Error, Result};

    const GUARD: f64 = 1e-12;

    fn params_f64(p: &MeixnerParams) -> (f64, f64) {
        (
            p.a.to_f64().expect("rational fits f64"),
            p.b.to_f64().expect("rational fits f64"),
        )
    }

    /// Endpoints of the continuous part of the support,
    /// `[a - 2 sqrt(1+b), a + 2 sqrt(1+b)]`.
    pub fn support_interval(p: &MeixnerParams) -> (f64, f64) {
        let (a, b) = params_f64(p);
        let r = 2.0 * (1.0 + b).sqrt();
        (a - r, a + r)
    }

    /// Evaluate `G(w)` for `Im(w) != 0`, or for real `w` off the support.
    pub fn eval_g(p: &MeixnerParams, w: Complex64) -> Result<Complex64> {
        let (a, b) = params_f64(p);
        let c = 1.0 + b;
        let u = w - a;
        let t = if c == 0.0 {
            // linear tail equation: t = 1/(w - a); fold into
            // G = u / (u w - 1) to stay finite at w = a
            let den = u * w - 1.0;
            if den.norm() < GUARD * (1.0 + w.norm()) {
                return Err(Error::OnSupport); // atom of the two-point measure
            }
            return Ok(u / den);
        } else if w.im > 0.0 {
            let s = (u * u - 4.0 * c).sqrt();
            let t1 = (u - s) / (2.0 * c);
            let t2 = (u + s) / (2.0 * c);
            // exactly one root is the Cauchy transform of the tail
            // semicircle and has negative imaginary part
            if t1.im < t2.im {
                t1
            } else {
                t2
            }
        } else if w.im < 0.0 {
            // conjugate symmetry of Cauchy transforms
            return eval_g(p, w.conj()).map(|g| g.conj());
        } else {
            let d = u.re * u.re - 4.0 * c;
            if d <= GUARD {
                return Err(Error::OnSupport);
            }
            // branch continuous with the upper-half-plane limit
            let root = d.sqrt();
            Complex64::new((u.re - u.re.signum() * root) / (2.0 * c), 0.0)
        };
        let den = w - t;
        if den.norm() < GUARD * (1.0 + w.norm()) {
            return Err(Error::OnSupport); // at an atom
        }
        Ok(1.0 / den)
    }

    /// Density of the absolutely continuous part at a real point, by
    /// Stieltjes inversion of the closed form. The epsilon-limit is taken
    /// analytically: inside the support the tail root is
    /// `((x-a) - i sqrt(4(1+b) - (x-a)^2)) / (2(1+b))`, and the density is
    /// `-Im(1/(x - t)) / pi`. Atoms are not reported. `edge_tol` widens the
    /// band around the support edges that reads as zero.
    pub fn density_with_tol(p: &MeixnerParams, x: f64, edge_tol: f64) -> f64 {
        let (a, b) = params_f64(p);
        let c = 1.0 + b;
        if c == 0.0 {
            return 0.0; // purely atomic at b = -1
        }
        let u = x - a;
        let d = u * u - 4.0 * c;
        if d >= -edge_tol {
            return 0.0; // outside (or at the edge of) the continuous support
        }
        let s = (-d).sqrt();
        let t_re = u / (2.0 * c);
        let t_im = -s / (2.0 * c);
        let den_re = x - t_re;
        let den2 = den_re * den_re + t_im * t_im;
        (s / (2.0 * c)) / den2 / std::f64::consts::PI
    }

    /// [`density_with_tol`] with the default edge guard.
    pub fn density(p: &MeixnerParams, x: f64) -> f64 {
        density_with_tol(p, x, 0.0)
    }
}
