//! The Riesz kernel as `pi^{-1/2} int_0^inf delta_j G_t(x, y) t^{-1/2} dt`.
//!
//! Slow reference route: `delta_j G_t` comes analytically from the closed
//! form, and the `t`-integral is adaptive Gauss–Kronrod in `ln t` below
//! `t = 1` and in `t` above.

use super::kernel::{orbit_distance, parity_index, NEAR_DIAGONAL};
use crate::error::{Error, Result};
use crate::heat::{component_factor, coordinate_exponent, ParityMask, TimeFactors};
use crate::hermite_basis::AlphaParams;
use crate::quadrature::{adaptive_gk15, gk15};
use crate::scalar::Real;
use crate::special_fn::{dunkl_bracket_scaled, ln_bessel_ratio_scaled, BesselRegime};

/// `delta_{j,x} G_t^{alpha}` (or of one parity component).
fn heat_derivative<T: Real>(alpha: &AlphaParams<T>, mask: &ParityMask, j: usize, t: T, x: &[T], y: &[T]) -> T {
    let tf = TimeFactors::new(t);
    let reg = BesselRegime::default();
    let mut ln_total = T::zero();
    let mut scaled = T::one();
    for i in 0..x.len() {
        let a = alpha.get(i);
        let (e, z) = coordinate_exponent(&tf, a, x[i], y[i]);
        ln_total += e;
        let f = match mask {
            ParityMask::All => {
                let g = dunkl_bracket_scaled(a, z);
                if i == j {
                    (x[i] * tf.one_minus_c2 + y[i] * tf.inv_s2) * g
                } else {
                    g
                }
            }
            ParityMask::Eps(eps) => {
                if i == j {
                    let r0 = ln_bessel_ratio_scaled(&reg, a, z.abs()).exp();
                    let r1 = z * ln_bessel_ratio_scaled(&reg, a + T::one(), z.abs()).exp();
                    if eps[i] == 0 {
                        x[i] * tf.one_minus_c2 * r0 + y[i] * tf.inv_s2 * r1
                    } else {
                        x[i] * tf.one_minus_c2 * r1 + y[i] * tf.inv_s2 * r0
                    }
                } else {
                    component_factor(&reg, a, eps[i], z)
                }
            }
        };
        scaled *= f;
    }
    ln_total.exp() * scaled
}

fn integrate_t<T: Real>(alpha: &AlphaParams<T>, mask: &ParityMask, j: usize, x: &[T], y: &[T], orbit: T) -> T {
    let integrand = |t: T| heat_derivative(alpha, mask, j, t, x, y) / t.sqrt();
    // below t_min every term carries exp(-orbit^2/(4t)) < e^{-700}
    let floor = T::lit(1e-30);
    let t_min = (orbit * orbit / T::lit(2800.0)).max(floor).min(T::lit(1e-2));
    let kappa0 = T::of_usize(alpha.dim()) + alpha.abs_sum();
    let t_max = T::one() + T::lit(45.0) / (T::two() * kappa0);

    let mut panels: Vec<(T, T, bool)> = Vec::new();
    let (v0, v1) = (t_min.ln(), T::zero());
    let nv = ((v1 - v0).to_f64().unwrap_or(1.0).ceil() as usize).max(1);
    for k in 0..nv {
        let a = v0 + (v1 - v0) * T::of_usize(k) / T::of_usize(nv);
        let b = v0 + (v1 - v0) * T::of_usize(k + 1) / T::of_usize(nv);
        panels.push((a, b, true));
    }
    let nt = ((t_max - T::one()).to_f64().unwrap_or(1.0).ceil() as usize).max(1);
    for k in 0..nt {
        let a = T::one() + (t_max - T::one()) * T::of_usize(k) / T::of_usize(nt);
        let b = T::one() + (t_max - T::one()) * T::of_usize(k + 1) / T::of_usize(nt);
        panels.push((a, b, false));
    }
    let in_log = |v: T| {
        let t = v.exp();
        integrand(t) * t
    };
    let rough: T = panels
        .iter()
        .map(|&(a, b, log)| if log { gk15(&in_log, a, b).0.abs() } else { gk15(&integrand, a, b).0.abs() })
        .sum();
    let abs_tol = rough * T::lit(1e-13) / T::of_usize(panels.len());
    let rel_tol = T::lit(1e-12);
    let mut total = T::zero();
    for &(a, b, log) in &panels {
        let (v, _) = if log {
            adaptive_gk15(in_log, a, b, abs_tol, rel_tol, 400)
        } else {
            adaptive_gk15(integrand, a, b, abs_tol, rel_tol, 400)
        };
        total += v;
    }
    total / T::PI().sqrt()
}

fn check<T: Real>(alpha: &AlphaParams<T>, j: usize, x: &[T], y: &[T]) -> Result<()> {
    alpha.check_coordinate(j)?;
    alpha.check_point(x)?;
    alpha.check_point(y)?;
    Ok(())
}

/// Full kernel `R_j^alpha(x, y)`; refuses `||x - y|| < 1e-3`.
pub fn riesz_kernel_direct<T: Real>(alpha: &AlphaParams<T>, j: usize, x: &[T], y: &[T]) -> Result<T> {
    check(alpha, j, x, y)?;
    let dist = x.iter().zip(y).map(|(&a, &b)| (a - b) * (a - b)).sum::<T>().sqrt();
    if !(dist >= T::lit(NEAR_DIAGONAL)) {
        return Err(Error::NearDiagonal {
            distance: dist.as_f64(),
            limit: NEAR_DIAGONAL,
        });
    }
    Ok(integrate_t(alpha, &ParityMask::All, j, x, y, orbit_distance(x, y)))
}

/// One component `R_j^{alpha,eps}(x, y)`; refuses orbit distance `< 1e-3`.
pub fn riesz_kernel_direct_component<T: Real>(alpha: &AlphaParams<T>, eps: &[u8], j: usize, x: &[T], y: &[T]) -> Result<T> {
    check(alpha, j, x, y)?;
    parity_index(alpha.dim(), eps)?;
    let orbit = orbit_distance(x, y);
    if !(orbit >= T::lit(NEAR_DIAGONAL)) {
        return Err(Error::NearDiagonal {
            distance: orbit.as_f64(),
            limit: NEAR_DIAGONAL,
        });
    }
    Ok(integrate_t(alpha, &ParityMask::Eps(eps.to_vec()), j, x, y, orbit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heat::{heat_kernel, parity_vectors};
    use crate::riesz::{KernelConfig, RieszKernel};

    fn al(v: &[f64]) -> AlphaParams<f64> {
        AlphaParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn derivative_matches_finite_difference() {
        // delta_j = T_j + x_j; on the full kernel T_j needs the reflection term
        let a = al(&[0.7, 0.0]);
        let (x, y) = ([0.6, -0.9], [1.1, 0.4]);
        let t = 0.3;
        for j in 0..2 {
            let h = 1e-5;
            let g = |x: &[f64]| heat_kernel(&a, t, x, &y).unwrap();
            let mut xp = x;
            let mut xm = x;
            let mut xr = x;
            xp[j] += h;
            xm[j] -= h;
            xr[j] = -xr[j];
            let dt = (g(&xp) - g(&xm)) / (2.0 * h) + (a.get(j) + 0.5) * (g(&x) - g(&xr)) / x[j];
            let want = dt + x[j] * g(&x);
            let got = heat_derivative(&a, &ParityMask::All, j, t, &x, &y);
            assert!((got - want).abs() < 1e-7 * want.abs(), "{got} vs {want}");
            let sum: f64 = parity_vectors(2)
                .into_iter()
                .map(|e| heat_derivative(&a, &ParityMask::Eps(e), j, t, &x, &y))
                .sum();
            assert!((sum - got).abs() < 1e-12 * got.abs());
        }
    }

    #[test]
    fn classical_case_matches_mehler_integral() {
        // alpha = -1/2: delta G = (x(1 - coth 2t) + y / sinh 2t) G_Mehler
        let a = al(&[-0.5]);
        let (x, y) = (0.4, 1.6);
        let mehler = |t: f64| {
            let s2 = (2.0 * t).sinh();
            let c2 = 1.0 / (2.0 * t).tanh();
            let g = (2.0 * std::f64::consts::PI * s2).powf(-0.5) * (-c2 * (x * x + y * y) / 2.0 + x * y / s2).exp();
            (x * (1.0 - c2) + y / s2) * g / t.sqrt()
        };
        let (v, _) = adaptive_gk15(|u: f64| mehler(u.exp()) * u.exp(), -30.0, 4.0, 1e-15, 1e-13, 4000);
        let want = v / std::f64::consts::PI.sqrt();
        let got = riesz_kernel_direct(&a, 0, &[x], &[y]).unwrap();
        assert!((got - want).abs() < 1e-9 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn absolutely_integrable() {
        let a = al(&[1.3]);
        let (x, y) = ([0.7], [-1.4]);
        let f = |u: f64| {
            let t = u.exp();
            heat_derivative(&a, &ParityMask::All, 0, t, &x, &y).abs() / t.sqrt() * t
        };
        let (v, _) = adaptive_gk15(f, -20.0, 4.0, 1e-14, 1e-10, 4000);
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn agrees_with_zeta_route() {
        for alpha in [vec![-0.5], vec![0.0], vec![1.3], vec![-0.5, 0.7]] {
            let a = al(&alpha);
            let k = RieszKernel::new(a.clone(), KernelConfig::default()).unwrap();
            let d = a.dim();
            let pts: Vec<(Vec<f64>, Vec<f64>)> = if d == 1 {
                vec![(vec![0.4], vec![1.6]), (vec![-1.2], vec![0.3]), (vec![2.0], vec![-0.5])]
            } else {
                vec![(vec![0.4, -1.0], vec![1.3, 0.2]), (vec![-0.8, 0.5], vec![0.9, 1.7])]
            };
            for (x, y) in pts {
                for j in 0..d {
                    let z = k.kernel(j, &x, &y).unwrap();
                    let t = riesz_kernel_direct(&a, j, &x, &y).unwrap();
                    assert!((z - t).abs() < 1e-6 * t.abs(), "alpha={alpha:?} j={j} x={x:?} y={y:?}: {z} vs {t}");
                    let comps = k.components(j, &x, &y).unwrap();
                    for (e, c) in parity_vectors(d).iter().zip(&comps) {
                        let dc = riesz_kernel_direct_component(&a, e, j, &x, &y).unwrap();
                        assert!((dc - c).abs() < 1e-6 * dc.abs().max(1e-8 * t.abs()), "eps={e:?}: {c} vs {dc}");
                    }
                }
            }
        }
    }

    #[test]
    fn refuses_diagonal() {
        let a = al(&[0.0]);
        assert!(riesz_kernel_direct(&a, 0, &[1.0], &[1.0]).is_err());
        assert!(riesz_kernel_direct(&a, 0, &[1.0], &[-1.0]).is_ok());
        assert!(riesz_kernel_direct_component(&a, &[0], 0, &[1.0], &[-1.0]).is_err());
    }
}
