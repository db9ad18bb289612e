//! The Poisson-type measures `Pi_nu` on `[-1, 1]` with
//! `int e^{-zs} Pi_nu(ds) = I_nu(z) / z^nu`.

use crate::error::{Error, Result};
use crate::quadrature::{gauss_jacobi_symmetric, gauss_laguerre, Rule1d};
use crate::scalar::Real;
use crate::special_fn::ln_gamma;

/// Beyond this `|c|` the moments use a boundary-layer Laguerre rule.
const LAYER_SWITCH: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    /// `(1 - s^2)^{nu - 1/2} / (sqrt(pi) 2^nu Gamma(nu + 1/2)) ds`, `nu > -1/2`.
    Density,
    /// Two atoms of mass `1/sqrt(2 pi)` at `-1` and `1`, `nu = -1/2`.
    Atomic,
}

#[derive(Clone, Debug)]
pub struct SchlafliMeasure<T> {
    nu: T,
    kind: MeasureKind,
    /// Gauss–Jacobi nodes with the normalized density absorbed.
    jacobi: Rule1d<T>,
    /// Laguerre rule for `tau^{nu - 1/2} e^{-tau}` and `ln` of the density constant.
    laguerre: Rule1d<T>,
    ln_norm: T,
}

/// Scaled moments at `c`, all relative to `e^{|c|}`:
/// `m0 = int e^{-cs-|c|} Pi(ds)` and `p = int (s + g) e^{-cs-|c|} Pi(ds)`
/// with `g = sgn c` (`g = 1` at zero). `p` is small when `|c|` is large.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledMoments<T> {
    pub m0: T,
    pub p: T,
    pub g: T,
}

impl<T: Real> SchlafliMeasure<T> {
    /// `points` quadrature nodes for the density case. The atomic case is
    /// selected by exact comparison `nu == -1/2`.
    pub fn new(nu: T, points: usize) -> Result<Self> {
        if !(nu >= -T::half()) || !nu.is_finite() {
            return Err(Error::Domain(format!("Schlafli order must be >= -1/2, got {nu}")));
        }
        if points == 0 {
            return Err(Error::InvalidArgument("Schlafli rule needs at least one point".into()));
        }
        let half = T::half();
        if nu == -half {
            let w = (T::two() * T::PI()).sqrt().recip();
            return Ok(Self {
                nu,
                kind: MeasureKind::Atomic,
                jacobi: Rule1d {
                    nodes: vec![-T::one(), T::one()],
                    weights: vec![w, w],
                },
                laguerre: Rule1d {
                    nodes: vec![],
                    weights: vec![],
                },
                ln_norm: T::zero(),
            });
        }
        let lambda = nu - half;
        let ln_norm = -(half * T::PI().ln() + nu * T::two().ln() + ln_gamma(nu + half));
        let mut jacobi = gauss_jacobi_symmetric(points, lambda)?;
        let c = ln_norm.exp();
        for w in &mut jacobi.weights {
            *w *= c;
        }
        let laguerre = gauss_laguerre(points, lambda)?;
        Ok(Self {
            nu,
            kind: MeasureKind::Density,
            jacobi,
            laguerre,
            ln_norm,
        })
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    /// `(s, weight)` pairs of the measure's rule.
    pub fn nodes(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.jacobi.nodes.iter().copied().zip(self.jacobi.weights.iter().copied())
    }

    /// `int f dPi_nu` by the rule.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.jacobi.integrate(f)
    }

    /// Total mass `1 / (2^nu Gamma(nu + 1))`.
    pub fn total_mass(&self) -> T {
        self.jacobi.weights.iter().copied().sum()
    }

    /// `int e^{-zs} Pi_nu(ds)`, which equals `I_nu(z) / z^nu`.
    pub fn laplace(&self, z: T) -> T {
        let m = self.scaled_moments(z);
        m.m0 * z.abs().exp()
    }

    pub fn scaled_moments(&self, c: T) -> ScaledMoments<T> {
        let g = if c >= T::zero() { T::one() } else { -T::one() };
        let a = c.abs();
        if self.kind == MeasureKind::Atomic {
            let w = self.jacobi.weights[0];
            // atoms at s = -g (no decay) and s = g (decay e^{-2|c|})
            let far = (-T::two() * a).exp();
            return ScaledMoments {
                m0: w * (T::one() + far),
                p: w * T::two() * g * far,
                g,
            };
        }
        if a <= T::lit(LAYER_SWITCH) {
            let mut m0 = T::zero();
            let mut p = T::zero();
            for (s, w) in self.nodes() {
                let e = w * (-a * (T::one() + g * s)).exp();
                m0 += e;
                p += e * (s + g);
            }
            return ScaledMoments { m0, p, g };
        }
        // u = 1 + g s in [0, 2], tau = |c| u:
        // m0 = C |c|^{-lambda-1} int tau^lambda (2 - tau/|c|)^lambda e^{-tau} dtau
        let lambda = self.nu - T::half();
        let two_a = T::two() * a;
        let mut m0 = T::zero();
        let mut p = T::zero();
        for (&tau, &w) in self.laguerre.nodes.iter().zip(&self.laguerre.weights) {
            if tau >= two_a {
                break;
            }
            let f = w * (T::two() - tau / a).powf(lambda);
            m0 += f;
            p += f * tau / a;
        }
        let scale = (self.ln_norm - (lambda + T::one()) * a.ln()).exp();
        ScaledMoments {
            m0: m0 * scale,
            p: g * p * scale,
            g,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::bessel_ratio;

    #[test]
    fn reproduces_bessel_ratio() {
        for &nu in &[-0.5_f64, 0.0, 0.7, 2.0] {
            let m = SchlafliMeasure::new(nu, 32).unwrap();
            for &z in &[0.1, 1.0, 10.0] {
                let want = bessel_ratio(nu, z).unwrap();
                assert!((m.laplace(z) - want).abs() <= 1e-12 * want, "nu={nu} z={z}");
                assert!((m.laplace(-z) - want).abs() <= 1e-12 * want);
            }
        }
    }

    #[test]
    fn atomic_case() {
        let m = SchlafliMeasure::new(-0.5_f64, 8).unwrap();
        assert_eq!(m.kind(), MeasureKind::Atomic);
        assert_eq!(m.nodes().count(), 2);
        let z = 1.7_f64;
        let want = (2.0 / std::f64::consts::PI).sqrt() * z.cosh();
        assert!((m.laplace(z) - want).abs() < 1e-14 * want);
        assert_eq!(SchlafliMeasure::new(-0.5 + 1e-12, 8).unwrap().kind(), MeasureKind::Density);
    }

    #[test]
    fn total_mass() {
        for &nu in &[0.0_f64, 0.3, 1.5] {
            let m = SchlafliMeasure::new(nu, 16).unwrap();
            let want = (-(nu * 2f64.ln() + ln_gamma(nu + 1.0))).exp();
            assert!((m.total_mass() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn layer_rule_matches_direct_rule_at_switch() {
        for &nu in &[0.0_f64, 0.7, 2.3] {
            let m = SchlafliMeasure::new(nu, 32).unwrap();
            let big = SchlafliMeasure::new(nu, 200).unwrap();
            for &c in &[20.5, -35.0, 300.0] {
                let a = m.scaled_moments(c);
                let b = big.scaled_moments_direct(c);
                assert!((a.m0 - b.0).abs() < 1e-11 * b.0, "nu={nu} c={c}");
                assert!((a.p - b.1).abs() < 1e-9 * b.1.abs(), "nu={nu} c={c}: {} {}", a.p, b.1);
            }
        }
    }

    impl SchlafliMeasure<f64> {
        fn scaled_moments_direct(&self, c: f64) -> (f64, f64) {
            let g = c.signum();
            let a = c.abs();
            let mut m0 = 0.0;
            let mut p = 0.0;
            for (s, w) in self.nodes() {
                let e = w * (-a * (1.0 + g * s)).exp();
                m0 += e;
                p += e * (s + g);
            }
            (m0, p)
        }
    }

    #[test]
    fn invalid_order() {
        assert!(SchlafliMeasure::new(-0.6_f64, 8).is_err());
    }
}
