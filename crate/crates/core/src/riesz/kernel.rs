//! The Riesz kernel as a `(zeta, s)` double integral.
//!
//! For each parity vector `eps`,
//! `R_j^eps(x,y) = int_0^1 beta_{d,|alpha|+|eps|}(zeta) int Pi_{alpha+eps}(ds) delta_j psi dzeta`.
//! The exponent of `psi` splits as `-q_lo/(4 zeta) - zeta q_hi/4 - sum_i c_i(s_i + sgn c_i)`
//! with `q_lo = sum (|x_i|-|y_i|)^2`, `q_hi = sum (|x_i|+|y_i|)^2` and
//! `c_i = x_i y_i (1/(2 zeta) - zeta/2)`, which is never positive, so the
//! s-integral is a product of scaled one-dimensional moments.

use serde::{Deserialize, Serialize};

use super::schlafli::SchlafliMeasure;
use crate::error::{Error, Result};
use crate::heat::{parity_vectors, q_plus_minus};
use crate::hermite_basis::AlphaParams;
use crate::quadrature::{gauss_legendre, Rule1d};
use crate::scalar::Real;

/// Pairs closer than this (in orbit distance) are refused.
pub(crate) const NEAR_DIAGONAL: f64 = 1e-3;

/// Panel width in `u = -ln zeta` near zero.
const U_PANEL: f64 = 0.5;

/// Resolution controls of the kernel quadrature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelConfig {
    /// Nominal zeta budget; each panel gets `zeta_points / 12` Gauss nodes.
    pub zeta_points: usize,
    /// Growth ratio of consecutive panels towards `zeta = 1`.
    pub zeta_grading: f64,
    /// Gauss–Jacobi (and boundary-layer Laguerre) nodes per coordinate.
    pub s_points_per_dim: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            zeta_points: 96,
            zeta_grading: 1.5,
            s_points_per_dim: 32,
        }
    }
}

impl KernelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.zeta_points < 16 {
            return Err(Error::InvalidArgument(format!(
                "zeta_points must be >= 16, got {}",
                self.zeta_points
            )));
        }
        if self.s_points_per_dim < 8 {
            return Err(Error::InvalidArgument(format!(
                "s_points_per_dim must be >= 8, got {}",
                self.s_points_per_dim
            )));
        }
        if !(self.zeta_grading > 1.0) || !self.zeta_grading.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "zeta_grading must be a finite ratio > 1, got {}",
                self.zeta_grading
            )));
        }
        Ok(())
    }

    fn points_per_panel(&self) -> usize {
        (self.zeta_points / 12).max(4)
    }
}

/// `min_sigma ||x - sigma y||`.
pub fn orbit_distance<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let d = a.abs() - b.abs();
            d * d
        })
        .sum::<T>()
        .sqrt()
}

/// `sqrt(2)/(2^d sqrt(pi)) ((1-zeta^2)/(2 zeta))^{d+alpha_eff} (1-zeta^2)^{-1} (ln((1+zeta)/(1-zeta)))^{-1/2}`.
pub fn beta_weight<T: Real>(d: usize, alpha_eff: T, zeta: T) -> Result<T> {
    if !(zeta > T::zero() && zeta < T::one()) {
        return Err(Error::Domain(format!("zeta must lie in (0,1), got {zeta}")));
    }
    Ok(ln_beta(d, alpha_eff, zeta, T::one() - zeta).exp())
}

/// `ln beta` given `zeta` and `1 - zeta` separately for accuracy near 1.
pub(crate) fn ln_beta<T: Real>(d: usize, alpha_eff: T, zeta: T, omz: T) -> T {
    let df = T::of_usize(d);
    let opz = T::one() + zeta;
    let ln_omz2 = omz.ln() + opz.ln();
    let ln_log = (opz.ln() - omz.ln()).ln();
    T::half() * T::two().ln() - df * T::two().ln() - T::half() * T::PI().ln()
        + (df + alpha_eff) * (ln_omz2 - (T::two() * zeta).ln())
        - ln_omz2
        - T::half() * ln_log
}

/// `delta_j psi_zeta^eps(x, y, s)`, the derivative of the zeta-form integrand
/// in `x_j`, including the `(2 alpha_j + 2) y_j (xy)^{eps - e_j}` term for
/// odd `eps_j`.
pub fn delta_psi<T: Real>(alpha: &AlphaParams<T>, eps: &[u8], j: usize, zeta: T, x: &[T], y: &[T], s: &[T]) -> Result<T> {
    if !(zeta > T::zero() && zeta < T::one()) {
        return Err(Error::Domain(format!("zeta must lie in (0,1), got {zeta}")));
    }
    alpha.check_coordinate(j)?;
    alpha.check_point(x)?;
    alpha.check_point(y)?;
    if eps.len() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: eps.len(),
        });
    }
    let (qp, qm) = q_plus_minus(x, y, s)?;
    let e = (-qp / (T::lit(4.0) * zeta) - zeta * qm / T::lit(4.0)).exp();
    let mut rest = T::one();
    for i in 0..x.len() {
        if i != j && eps[i] == 1 {
            rest *= x[i] * y[i];
        }
    }
    let two_z = T::two() * zeta;
    let a = x[j] - (x[j] + y[j] * s[j]) / two_z - zeta * (x[j] - y[j] * s[j]) / T::two();
    let bracket = if eps[j] == 1 {
        x[j] * y[j] * a + (T::two() * alpha.get(j) + T::two()) * y[j]
    } else {
        a
    };
    Ok(rest * bracket * e)
}

#[derive(Clone, Copy, Debug)]
struct ZetaNode<T> {
    zeta: T,
    omz: T,
    ln_w: T,
}

/// Quadrature nodes in `zeta`, built for one `(x, y)` and reusable for
/// nearby points (finite-difference stencils).
#[derive(Clone, Debug)]
pub struct ZetaGrid<T> {
    nodes: Vec<ZetaNode<T>>,
}

impl<T: Real> ZetaGrid<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Precomputed rules for a fixed `alpha` and configuration.
#[derive(Clone, Debug)]
pub struct RieszKernel<T> {
    alpha: AlphaParams<T>,
    cfg: KernelConfig,
    /// `measures[i][e]` is `Pi_{alpha_i + e}`.
    measures: Vec<[SchlafliMeasure<T>; 2]>,
    panel: Rule1d<T>,
}

impl<T: Real> RieszKernel<T> {
    pub fn new(alpha: AlphaParams<T>, cfg: KernelConfig) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.s_points_per_dim;
        let measures = alpha
            .as_slice()
            .iter()
            .map(|&a| Ok([SchlafliMeasure::new(a, n)?, SchlafliMeasure::new(a + T::one(), n)?]))
            .collect::<Result<Vec<_>>>()?;
        let panel = gauss_legendre(cfg.points_per_panel())?;
        Ok(Self {
            alpha,
            cfg,
            measures,
            panel,
        })
    }

    pub fn alpha(&self) -> &AlphaParams<T> {
        &self.alpha
    }

    pub fn config(&self) -> &KernelConfig {
        &self.cfg
    }

    fn check_pair(&self, j: usize, x: &[T], y: &[T]) -> Result<()> {
        self.alpha.check_coordinate(j)?;
        self.alpha.check_point(x)?;
        self.alpha.check_point(y)?;
        let dist = orbit_distance(x, y);
        if !(dist >= T::lit(NEAR_DIAGONAL)) {
            return Err(Error::NearDiagonal {
                distance: dist.as_f64(),
                limit: NEAR_DIAGONAL,
            });
        }
        Ok(())
    }

    /// Grid adapted to the peak of `exp(-q_lo/(4 zeta))` near `zeta = 0`.
    pub fn zeta_grid(&self, x: &[T], y: &[T]) -> Result<ZetaGrid<T>> {
        self.alpha.check_point(x)?;
        self.alpha.check_point(y)?;
        let dist = orbit_distance(x, y);
        if !(dist >= T::lit(NEAR_DIAGONAL)) {
            return Err(Error::NearDiagonal {
                distance: dist.as_f64(),
                limit: NEAR_DIAGONAL,
            });
        }
        let q_lo = dist * dist;
        let d = T::of_usize(self.alpha.dim());
        let kappa0 = d + self.alpha.abs_sum();
        // the zeta integrand grows like zeta^{-p} before the Gaussian cut-off
        let p = T::two() * d + self.alpha.abs_sum() + T::lit(2.5);
        let h = |u: T| -q_lo * u.exp() / T::lit(4.0) + p * u;
        let peak_u = (T::lit(4.0) * p / q_lo).ln();
        let h_peak = if peak_u > T::two().ln() { h(peak_u) } else { h(T::two().ln()) };
        let width = T::lit(U_PANEL);
        let mut nodes = Vec::new();
        let mut lo = T::two().ln();
        loop {
            let hi = lo + width;
            self.push_panel(&mut nodes, lo, hi, |u| {
                let zeta = (-u).exp();
                (zeta, T::one() - zeta, -u)
            });
            lo = hi;
            if lo > peak_u && h(lo) < h_peak - T::lit(80.0) {
                break;
            }
        }
        let w_max = T::lit(42.0) / kappa0 + T::two();
        let mut lo = T::two().ln();
        let mut width = T::lit(U_PANEL);
        let ratio = T::lit(self.cfg.zeta_grading);
        while lo < w_max {
            let hi = lo + width;
            self.push_panel(&mut nodes, lo, hi, |w| {
                let omz = (-w).exp();
                (T::one() - omz, omz, -w)
            });
            lo = hi;
            width *= ratio;
        }
        Ok(ZetaGrid { nodes })
    }

    /// Maps the base panel onto `[lo, hi]` in a log variable `v` with
    /// `map(v) = (zeta, 1 - zeta, ln |dzeta/dv|)`.
    fn push_panel(&self, out: &mut Vec<ZetaNode<T>>, lo: T, hi: T, map: impl Fn(T) -> (T, T, T)) {
        let half = T::half() * (hi - lo);
        let mid = T::half() * (hi + lo);
        for (&s, &w) in self.panel.nodes.iter().zip(&self.panel.weights) {
            let (zeta, omz, ln_jac) = map(mid + half * s);
            out.push(ZetaNode {
                zeta,
                omz,
                ln_w: (half * w).ln() + ln_jac,
            });
        }
    }

    /// All `2^d` components `R_j^eps(x, y)`, ordered as [`parity_vectors`].
    pub fn components(&self, j: usize, x: &[T], y: &[T]) -> Result<Vec<T>> {
        self.check_pair(j, x, y)?;
        let grid = self.zeta_grid(x, y)?;
        self.components_on(&grid, j, x, y)
    }

    /// As [`Self::components`] on a caller-supplied grid. Only the
    /// orbit-distance guard is applied.
    pub fn components_on(&self, grid: &ZetaGrid<T>, j: usize, x: &[T], y: &[T]) -> Result<Vec<T>> {
        self.check_pair(j, x, y)?;
        let d = self.alpha.dim();
        let eps_all = parity_vectors(d);
        let mut q_lo = T::zero();
        let mut q_hi = T::zero();
        for i in 0..d {
            let (a, b) = (x[i].abs(), y[i].abs());
            q_lo += (a - b) * (a - b);
            q_hi += (a + b) * (a + b);
        }
        let abs_alpha = self.alpha.abs_sum();
        let xy: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a * b).collect();
        let mut acc = vec![T::zero(); eps_all.len()];
        let four = T::lit(4.0);
        let aj2 = T::two() * self.alpha.get(j) + T::two();
        for node in &grid.nodes {
            let (zeta, omz) = (node.zeta, node.omz);
            let hz = omz * (T::one() + zeta) / (T::two() * zeta);
            let ln_common = node.ln_w - q_lo / (four * zeta) - zeta * q_hi / four;
            // factors[i][e] for i != j; the j-th entry holds the bracket
            let mut factors = vec![[T::zero(); 2]; d];
            for i in 0..d {
                for e in 0..2usize {
                    let m = self.measures[i][e].scaled_moments(xy[i] * hz);
                    factors[i][e] = if i != j {
                        if e == 1 {
                            xy[i] * m.m0
                        } else {
                            m.m0
                        }
                    } else {
                        let g = m.g;
                        let a0g = x[j] - (x[j] - g * y[j]) / (T::two() * zeta) - zeta * (x[j] + g * y[j]) / T::two();
                        let lin = a0g * m.m0 - y[j] * hz * m.p;
                        if e == 1 {
                            xy[j] * lin + aj2 * y[j] * m.m0
                        } else {
                            lin
                        }
                    };
                }
            }
            for (k, eps) in eps_all.iter().enumerate() {
                let size: usize = eps.iter().map(|&e| e as usize).sum();
                let lb = ln_beta(d, abs_alpha + T::of_usize(size), zeta, omz);
                let mut prod = (ln_common + lb).exp();
                for i in 0..d {
                    prod *= factors[i][eps[i] as usize];
                }
                acc[k] += prod;
            }
        }
        Ok(acc)
    }

    pub fn component(&self, eps: &[u8], j: usize, x: &[T], y: &[T]) -> Result<T> {
        let idx = parity_index(self.alpha.dim(), eps)?;
        Ok(self.components(j, x, y)?[idx])
    }

    pub fn kernel(&self, j: usize, x: &[T], y: &[T]) -> Result<T> {
        Ok(self.components(j, x, y)?.into_iter().sum())
    }

    pub fn kernel_on(&self, grid: &ZetaGrid<T>, j: usize, x: &[T], y: &[T]) -> Result<T> {
        Ok(self.components_on(grid, j, x, y)?.into_iter().sum())
    }
}

pub(crate) fn parity_index(dim: usize, eps: &[u8]) -> Result<usize> {
    if eps.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: eps.len(),
        });
    }
    let mut idx = 0;
    for &e in eps {
        if e > 1 {
            return Err(Error::InvalidArgument("parity entries must be 0 or 1".into()));
        }
        idx = idx * 2 + e as usize;
    }
    Ok(idx)
}

pub fn riesz_kernel_component<T: Real>(
    alpha: &AlphaParams<T>,
    eps: &[u8],
    j: usize,
    x: &[T],
    y: &[T],
    cfg: &KernelConfig,
) -> Result<T> {
    RieszKernel::new(alpha.clone(), cfg.clone())?.component(eps, j, x, y)
}

pub fn riesz_kernel<T: Real>(alpha: &AlphaParams<T>, j: usize, x: &[T], y: &[T], cfg: &KernelConfig) -> Result<T> {
    RieszKernel::new(alpha.clone(), cfg.clone())?.kernel(j, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(v: &[f64]) -> AlphaParams<f64> {
        AlphaParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn beta_properties() {
        for &(d, lam) in &[(1usize, 0.0f64), (2, 1.3), (1, 2.0)] {
            for k in 1..50 {
                let z = k as f64 / 50.0;
                let b = beta_weight(d, lam, z).unwrap();
                assert!(b > 0.0);
                for &u in &[0.5, 1.0] {
                    assert!(beta_weight(d, lam + u, z).unwrap() <= z.powf(-u) * b * (1.0 + 1e-14));
                }
            }
            let (z1, z2) = (1e-6, 1e-7);
            let slope = (beta_weight(d, lam, z2).unwrap().ln() - beta_weight(d, lam, z1).unwrap().ln()) / (z2.ln() - z1.ln());
            assert!((slope + (d as f64 + lam + 0.5)).abs() < 1e-3, "slope {slope}");
        }
        assert!(beta_weight(1, 0.0, 0.0f64).is_err());
        assert!(beta_weight(1, 0.0, 1.0f64).is_err());
    }

    #[test]
    fn delta_psi_matches_finite_differences() {
        let a = al(&[0.7, 0.2]);
        let (x, y, s) = ([0.6, -0.9], [1.1, 0.4], [0.3, -0.7]);
        let zeta = 0.4;
        let psi = |x: &[f64], eps: &[u8]| {
            let (qp, qm) = q_plus_minus(x, &y, &s).unwrap();
            let mono: f64 = (0..2).map(|i| if eps[i] == 1 { x[i] * y[i] } else { 1.0 }).product();
            mono * (-qp / (4.0 * zeta) - zeta * qm / 4.0).exp()
        };
        for eps in parity_vectors(2) {
            for j in 0..2 {
                let h = 1e-5;
                let mut xp = x;
                let mut xm = x;
                xp[j] += h;
                xm[j] -= h;
                let deriv = (psi(&xp, &eps) - psi(&xm, &eps)) / (2.0 * h);
                let mut fd = deriv + x[j] * psi(&x, &eps);
                if eps[j] == 1 {
                    fd += (2.0 * a.get(j) + 1.0) * psi(&x, &eps) / x[j];
                }
                let an = delta_psi(&a, &eps, j, zeta, &x, &y, &s).unwrap();
                assert!((an - fd).abs() < 1e-6 * an.abs().max(1e-3), "eps={eps:?} j={j}: {an} vs {fd}");
            }
        }
    }

    #[test]
    fn delta_psi_plane_case() {
        let a = al(&[0.7]);
        let v = delta_psi(&a, &[0], 0, 0.3, &[0.0], &[0.0], &[0.5]).unwrap();
        assert_eq!(v, 0.0);
        let v = delta_psi(&a, &[1], 0, 0.3, &[0.0], &[0.0], &[0.5]).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn sign_symmetry() {
        let a = al(&[0.7, -0.5]);
        let k = RieszKernel::new(a, KernelConfig::default()).unwrap();
        let (x, y) = ([0.6, -0.9], [1.4, 0.4]);
        let base = k.components(0, &x, &y).unwrap();
        let signs = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]];
        for eta in signs {
            for xi in signs {
                let xe = [eta[0] * x[0], eta[1] * x[1]];
                let ye = [xi[0] * y[0], xi[1] * y[1]];
                let c = k.components(0, &xe, &ye).unwrap();
                for (u, v) in base.iter().zip(&c) {
                    assert!((u.abs() - v.abs()).abs() <= 1e-12 * u.abs().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn refuses_near_orbit() {
        let a = al(&[0.0]);
        let k = RieszKernel::new(a, KernelConfig::default()).unwrap();
        assert!(matches!(k.kernel(0, &[1.0], &[1.0005]), Err(Error::NearDiagonal { .. })));
        assert!(matches!(k.kernel(0, &[1.0], &[-1.0]), Err(Error::NearDiagonal { .. })));
        assert!(k.kernel(0, &[1.0], &[1.5]).is_ok());
    }

    #[test]
    fn config_validation() {
        let mut c = KernelConfig::default();
        assert!(c.validate().is_ok());
        c.zeta_points = 8;
        assert!(c.validate().is_err());
        c = KernelConfig {
            s_points_per_dim: 4,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
