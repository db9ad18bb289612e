//! `<R_j f, g>_alpha` two ways for `f`, `g` with disjoint compact supports
//! off the coordinate hyperplanes: through coefficients, and as the double
//! integral of the kernel against `f(y) g(x) dw(y) dw(x)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{KernelConfig, RieszKernel};
use super::riesz_apply_spectral;
use crate::error::{Error, Result};
use crate::hermite_basis::AlphaParams;
use crate::quadrature::{box_rule, project};
use crate::scalar::Real;

/// Smooth product bump `prod_i exp(-k u_i^2 / (1 - u_i^2))`,
/// `u_i = (x_i - center_i)/radius_i`, supported in the closed box.
///
/// Larger steepness `k` pushes the essential singularity at the edge of the
/// support down to tiny amplitude, which makes the Hermite coefficients
/// decay much faster.
#[derive(Clone, Debug, PartialEq)]
pub struct Bump<T> {
    pub center: Vec<T>,
    pub radius: Vec<T>,
    pub steepness: T,
}

impl<T: Real> Bump<T> {
    pub fn new(center: Vec<T>, radius: Vec<T>) -> Result<Self> {
        if center.len() != radius.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                got: radius.len(),
            });
        }
        if radius.iter().any(|&r| !(r > T::zero())) {
            return Err(Error::InvalidArgument("bump radii must be positive".into()));
        }
        Ok(Self {
            center,
            radius,
            steepness: T::one(),
        })
    }

    pub fn with_steepness(self, k: T) -> Self {
        Self { steepness: k, ..self }
    }

    /// Sum over all sign flips, giving a `Z_2^d`-invariant function.
    pub fn eval_invariant(&self, x: &[T]) -> T {
        let d = x.len();
        let mut total = T::zero();
        for bits in 0..1usize << d {
            let y: Vec<T> = (0..d)
                .map(|i| if bits >> i & 1 == 1 { -x[i] } else { x[i] })
                .collect();
            total += self.eval(&y);
        }
        total
    }

    pub fn eval(&self, x: &[T]) -> T {
        let mut v = T::one();
        for ((&xi, &c), &r) in x.iter().zip(&self.center).zip(&self.radius) {
            let u = (xi - c) / r;
            let q = T::one() - u * u;
            if q <= T::zero() {
                return T::zero();
            }
            v *= (self.steepness * (T::one() - q.recip())).exp();
        }
        v
    }

    pub fn lo(&self) -> Vec<T> {
        self.center.iter().zip(&self.radius).map(|(&c, &r)| c - r).collect()
    }

    pub fn hi(&self) -> Vec<T> {
        self.center.iter().zip(&self.radius).map(|(&c, &r)| c + r).collect()
    }

    /// Euclidean distance between the supporting boxes.
    pub fn box_distance(&self, other: &Self) -> T {
        let (alo, ahi, blo, bhi) = (self.lo(), self.hi(), other.lo(), other.hi());
        (0..alo.len())
            .map(|i| {
                let gap = (blo[i] - ahi[i]).max(alo[i] - bhi[i]).max(T::zero());
                gap * gap
            })
            .sum::<T>()
            .sqrt()
    }

    fn off_hyperplanes(&self) -> bool {
        self.lo().iter().zip(self.hi()).all(|(&l, h)| l > T::zero() || h < T::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PairingConfig {
    /// Truncation degree of the coefficient route.
    pub max_degree: usize,
    /// Panels and Gauss–Legendre nodes per coordinate over each support.
    pub panels: usize,
    pub points: usize,
}

impl Default for PairingConfig {
    fn default() -> Self {
        Self {
            max_degree: 300,
            panels: 8,
            points: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairingReport<T> {
    pub spectral: T,
    pub kernel: T,
    /// `|spectral - kernel| / |kernel|`.
    pub residual: T,
}

pub fn dual_pairing_check<T: Real>(
    f: &Bump<T>,
    g: &Bump<T>,
    j: usize,
    alpha: &AlphaParams<T>,
    setup: &PairingConfig,
    cfg: &KernelConfig,
) -> Result<PairingReport<T>> {
    alpha.check_coordinate(j)?;
    alpha.check_point(&f.center)?;
    alpha.check_point(&g.center)?;
    if !(f.box_distance(g) > T::zero()) {
        return Err(Error::InvalidArgument("supports of f and g must be disjoint".into()));
    }
    if !f.off_hyperplanes() || !g.off_hyperplanes() {
        return Err(Error::InvalidArgument(
            "supports must avoid the coordinate hyperplanes".into(),
        ));
    }
    let rule_f = box_rule(alpha, &f.lo(), &f.hi(), setup.panels, setup.points)?;
    let rule_g = box_rule(alpha, &g.lo(), &g.hi(), setup.panels, setup.points)?;

    let cf = project(|x| f.eval(x), alpha, setup.max_degree, &rule_f)?;
    let cg = project(|x| g.eval(x), alpha, setup.max_degree, &rule_g)?;
    let spectral = riesz_apply_spectral(&cf, j)?.dot(&cg);

    let kern = RieszKernel::new(alpha.clone(), cfg.clone())?;
    let ys: Vec<(Vec<T>, T)> = rule_f
        .nodes()
        .zip(rule_f.dw_weights())
        .map(|(y, &w)| (y.to_vec(), w * f.eval(y)))
        .filter(|(_, w)| *w != T::zero())
        .collect();
    let rows: Vec<Result<T>> = rule_g
        .nodes()
        .zip(rule_g.dw_weights())
        .map(|(x, &w)| (x.to_vec(), w * g.eval(x)))
        .filter(|(_, w)| *w != T::zero())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(x, wx)| {
            let mut row = T::zero();
            for (y, wy) in &ys {
                row += *wy * kern.kernel(j, &x, y)?;
            }
            Ok(wx * row)
        })
        .collect();
    let mut kernel = T::zero();
    for r in rows {
        kernel += r?;
    }
    Ok(PairingReport {
        spectral,
        kernel,
        residual: (spectral - kernel).abs() / kernel.abs(),
    })
}
