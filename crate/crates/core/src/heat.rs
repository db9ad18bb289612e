//! The heat semigroup `T_t = e^{-t L_alpha}`: spectral action, closed-form
//! kernel, its parity components and the symmetric zeta form.

use crate::error::{Error, Result};
use crate::hermite_basis::{eigenvalue, AlphaParams};
use crate::quadrature::{QuadratureRule, SpectralCoeffs};

use crate::scalar::Real;
use crate::special_fn::{dunkl_bracket_scaled, BesselRegime};

/// Multiplies each coefficient by `e^{-t (2|n| + 2|alpha| + 2d)}`.
pub fn heat_apply_spectral<T: Real>(c: &SpectralCoeffs<T>, t: T) -> Result<SpectralCoeffs<T>> {
    if !(t >= T::zero()) {
        return Err(Error::Domain(format!("heat time must be >= 0, got {t}")));
    }
    let alpha = c.alpha().clone();
    Ok(c.map_values(|n, v| v * (-t * eigenvalue(n, &alpha)).exp()))
}

/// `t = (1/2) ln((1+zeta)/(1-zeta))` for `0 < zeta < 1`.
pub fn t_of_zeta<T: Real>(zeta: T) -> Result<T> {
    if !(zeta > T::zero() && zeta < T::one()) {
        return Err(Error::Domain(format!("zeta must lie in (0,1), got {zeta}")));
    }
    Ok(zeta.atanh())
}

/// `zeta = tanh t` for `t > 0`.
pub fn zeta_of_t<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be positive and finite, got {t}")));
    }
    Ok(t.tanh())
}

/// `q_pm = |x|^2 + |y|^2 pm 2 sum_i x_i y_i s_i`, clamped at zero against
/// rounding (both are nonnegative for `s` in `[-1,1]^d`).
pub fn q_plus_minus<T: Real>(x: &[T], y: &[T], s: &[T]) -> Result<(T, T)> {
    if x.len() != y.len() || x.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: if y.len() != x.len() { y.len() } else { s.len() },
        });
    }
    let mut norm = T::zero();
    let mut cross = T::zero();
    for i in 0..x.len() {
        norm += x[i] * x[i] + y[i] * y[i];
        cross += x[i] * y[i] * s[i];
    }
    let two = T::two();
    Ok(((norm + two * cross).max(T::zero()), (norm - two * cross).max(T::zero())))
}

/// Which part of `G_t = sum_eps G_t^eps` to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityMask {
    All,
    Eps(Vec<u8>),
}

/// All `2^d` parity vectors, ordered as binary numbers with coordinate 0 as
/// the most significant digit.
pub fn parity_vectors(dim: usize) -> Vec<Vec<u8>> {
    (0..1usize << dim)
        .map(|bits| (0..dim).map(|i| ((bits >> (dim - 1 - i)) & 1) as u8).collect())
        .collect()
}

/// Time-dependent constants `sinh 2t`, `coth 2t` in overflow-safe form.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TimeFactors<T> {
    pub ln_s2: T,
    pub inv_s2: T,
    pub c2: T,
    /// `1 - coth 2t`, without cancellation at small `t`.
    pub one_minus_c2: T,
}

impl<T: Real> TimeFactors<T> {
    pub fn new(t: T) -> Self {
        let two_t = T::two() * t;
        let ln_s2 = if two_t > T::lit(20.0) {
            two_t - T::two().ln() + (-(-(T::two() * two_t)).exp()).ln_1p()
        } else {
            two_t.sinh().ln()
        };
        Self {
            ln_s2,
            inv_s2: (-ln_s2).exp(),
            c2: two_t.tanh().recip(),
            one_minus_c2: -T::two() / (T::two() * two_t).exp_m1(),
        }
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be positive and finite, got {t}")));
    }
    Ok(())
}

/// Log of the common factor of coordinate `i`:
/// `-coth(2t)(x^2+y^2)/2 + |z| - ln(2 sinh 2t) - a ln sinh 2t`, with
/// `z = x y / sinh 2t`. Returns `(log factor, z)`.
pub(crate) fn coordinate_exponent<T: Real>(tf: &TimeFactors<T>, a: T, x: T, y: T) -> (T, T) {
    let z = x * y * tf.inv_s2;
    let e = -tf.c2 * (x * x + y * y) * T::half() + z.abs() - (T::two().ln() + tf.ln_s2) - a * tf.ln_s2;
    (e, z)
}

/// `G_t^a(x, y)` in one dimension.
pub fn heat_kernel_1d<T: Real>(a: T, t: T, x: T, y: T) -> Result<T> {
    check_time(t)?;
    if a < -T::half() {
        return Err(Error::AlphaBound { index: 0, value: a.as_f64() });
    }
    let tf = TimeFactors::new(t);
    let (e, z) = coordinate_exponent(&tf, a, x, y);
    Ok(e.exp() * dunkl_bracket_scaled(a, z))
}

/// `G_t^alpha(x, y) = prod_i G_t^{alpha_i}(x_i, y_i)`.
pub fn heat_kernel<T: Real>(alpha: &AlphaParams<T>, t: T, x: &[T], y: &[T]) -> Result<T> {
    check_time(t)?;
    alpha.check_point(x)?;
    alpha.check_point(y)?;
    let tf = TimeFactors::new(t);
    let mut ln_total = T::zero();
    let mut scaled = T::one();
    for i in 0..x.len() {
        let (e, z) = coordinate_exponent(&tf, alpha.get(i), x[i], y[i]);
        ln_total += e;
        scaled *= dunkl_bracket_scaled(alpha.get(i), z);
    }
    Ok(ln_total.exp() * scaled)
}

/// Scaled one-dimensional component: `e^{-|z|} R_a(z)` for `eps = 0` and
/// `e^{-|z|} z R_{a+1}(z)` for `eps = 1`, `R_nu(z) = I_nu(|z|)/|z|^nu`.
pub(crate) fn component_factor<T: Real>(reg: &BesselRegime, a: T, eps: u8, z: T) -> T {
    use crate::special_fn::ln_bessel_ratio_scaled;
    if eps == 0 {
        ln_bessel_ratio_scaled(reg, a, z.abs()).exp()
    } else {
        z * ln_bessel_ratio_scaled(reg, a + T::one(), z.abs()).exp()
    }
}

fn check_eps(dim: usize, eps: &[u8]) -> Result<()> {
    if eps.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: eps.len(),
        });
    }
    if eps.iter().any(|&e| e > 1) {
        return Err(Error::InvalidArgument("parity entries must be 0 or 1".into()));
    }
    Ok(())
}

/// `G_t^{alpha,eps}(x, y)`: the product over coordinates of the even
/// (`eps_i = 0`) or odd (`eps_i = 1`) Bessel term.
pub fn heat_kernel_component<T: Real>(alpha: &AlphaParams<T>, eps: &[u8], t: T, x: &[T], y: &[T]) -> Result<T> {
    check_time(t)?;
    alpha.check_point(x)?;
    alpha.check_point(y)?;
    check_eps(alpha.dim(), eps)?;
    let reg = BesselRegime::default();
    let tf = TimeFactors::new(t);
    let mut ln_total = T::zero();
    let mut scaled = T::one();
    for i in 0..x.len() {
        let (e, z) = coordinate_exponent(&tf, alpha.get(i), x[i], y[i]);
        ln_total += e;
        scaled *= component_factor(&reg, alpha.get(i), eps[i], z);
    }
    Ok(ln_total.exp() * scaled)
}

/// Evaluation handle for a fixed `(alpha, t, parity)`.
#[derive(Clone, Debug)]
pub struct HeatKernelEval<T> {
    pub alpha: AlphaParams<T>,
    pub t: T,
    pub parity: ParityMask,
}

impl<T: Real> HeatKernelEval<T> {
    pub fn new(alpha: AlphaParams<T>, t: T, parity: ParityMask) -> Result<Self> {
        check_time(t)?;
        if let ParityMask::Eps(e) = &parity {
            check_eps(alpha.dim(), e)?;
        }
        Ok(Self { alpha, t, parity })
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> Result<T> {
        match &self.parity {
            ParityMask::All => heat_kernel(&self.alpha, self.t, x, y),
            ParityMask::Eps(e) => heat_kernel_component(&self.alpha, e, self.t, x, y),
        }
    }
}

/// The symmetric zeta-form integrand of `G_t^{alpha,eps}` before the
/// `Pi_{alpha+eps}(ds)` integration:
/// `2^{-d} ((1-zeta^2)/(2 zeta))^{d+|alpha|+|eps|} (xy)^eps exp(-q_+/(4 zeta) - zeta q_-/4)`.
/// Integrating over `s` reproduces `G_t^{alpha,eps}` at `t = t(zeta)`.
pub fn heat_kernel_zeta<T: Real>(
    alpha: &AlphaParams<T>,
    eps: &[u8],
    zeta: T,
    x: &[T],
    y: &[T],
    s: &[T],
) -> Result<T> {
    if !(zeta > T::zero() && zeta < T::one()) {
        return Err(Error::Domain(format!("zeta must lie in (0,1), got {zeta}")));
    }
    alpha.check_point(x)?;
    alpha.check_point(y)?;
    check_eps(alpha.dim(), eps)?;
    let (qp, qm) = q_plus_minus(x, y, s)?;
    let d = T::of_usize(alpha.dim());
    let eps_sum = T::of_usize(eps.iter().map(|&e| e as usize).sum());
    let power = d + alpha.abs_sum() + eps_sum;
    let log_base = ((T::one() - zeta * zeta) / (T::two() * zeta)).ln();
    let ln_val = -d * T::two().ln() + power * log_base - qp / (T::lit(4.0) * zeta) - zeta * qm / T::lit(4.0);
    let mut mono = T::one();
    for i in 0..x.len() {
        if eps[i] == 1 {
            mono *= x[i] * y[i];
        }
    }
    Ok(mono * ln_val.exp())
}

/// `(T_t f)(x) = int G_t(x, y) f(y) w_alpha(y) dy` by the rule's `dw_weights`.
pub fn heat_apply_kernel<T: Real>(f: impl Fn(&[T]) -> T, t: T, x: &[T], rule: &QuadratureRule<T>) -> Result<T> {
    let alpha = rule.alpha();
    check_time(t)?;
    alpha.check_point(x)?;
    let err = std::cell::RefCell::new(None);
    let v = rule.integrate_dw(|y| match heat_kernel(alpha, t, x, y) {
        Ok(g) => g * f(y),
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            T::zero()
        }
    })?;
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// `max_{t in grid} |T_t f(x)|`.
pub fn maximal_empirical<T: Real>(f: impl Fn(&[T]) -> T, x: &[T], t_grid: &[T], rule: &QuadratureRule<T>) -> Result<T> {
    if t_grid.is_empty() {
        return Err(Error::InvalidArgument("t grid must be nonempty".into()));
    }
    let mut best = T::zero();
    for &t in t_grid {
        best = best.max(heat_apply_kernel(&f, t, x, rule)?.abs());
    }
    Ok(best)
}

/// `n` log-spaced points between `lo` and `hi` inclusive.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * T::of_usize(i) / T::of_usize(n - 1)).exp())
        .collect()
}

/// Truncated eigenfunction expansion
/// `sum_{|n| <= max_degree} e^{-t lambda_n} h_n(x) h_n(y)`.
pub fn heat_kernel_series<T: Real>(alpha: &AlphaParams<T>, t: T, x: &[T], y: &[T], max_degree: usize) -> Result<T> {
    check_time(t)?;
    alpha.check_point(x)?;
    alpha.check_point(y)?;
    use crate::hermite_basis::{hermite_table_1d, indices_up_to};
    let tx: Vec<Vec<T>> = (0..x.len()).map(|i| hermite_table_1d(max_degree, alpha.get(i), x[i])).collect();
    let ty: Vec<Vec<T>> = (0..y.len()).map(|i| hermite_table_1d(max_degree, alpha.get(i), y[i])).collect();
    let mut acc = T::zero();
    for n in indices_up_to(alpha.dim(), max_degree) {
        let mut term = (-t * eigenvalue(&n, alpha)).exp();
        for (i, &ni) in n.as_slice().iter().enumerate() {
            term *= tx[i][ni] * ty[i][ni];
        }
        acc += term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite_basis::{hermite_fn, MultiIndex};
    use crate::quadrature::gauss_rule;
    use crate::riesz::SchlafliMeasure;

    fn al(v: &[f64]) -> AlphaParams<f64> {
        AlphaParams::new(v.to_vec()).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn spectral_action() {
        let a = al(&[-0.5]);
        let c = SpectralCoeffs::unit(a.clone(), 4, MultiIndex::zeros(1)).unwrap();
        assert_eq!(heat_apply_spectral(&c, 0.0).unwrap(), c);
        let e = heat_apply_spectral(&c, 1.0).unwrap();
        assert!((e.get(&MultiIndex::zeros(1)) - (-1f64).exp()).abs() < 1e-15);
        assert!(heat_apply_spectral(&c, -0.1).is_err());
        let mut c = SpectralCoeffs::zeros(al(&[0.7, 0.0]), 3);
        c.set(MultiIndex::new(vec![1, 0]), 1.0).unwrap();
        c.set(MultiIndex::new(vec![0, 3]), -0.5).unwrap();
        let mut last = f64::INFINITY;
        for t in [0.0, 0.1, 0.5, 2.0] {
            let n = heat_apply_spectral(&c, t).unwrap().norm();
            assert!(n < last);
            last = n;
        }
    }

    #[test]
    fn zeta_map() {
        assert!((t_of_zeta(0.5_f64).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-15);
        let t = 2.0_f64;
        assert!((t_of_zeta(zeta_of_t(t).unwrap()).unwrap() - t).abs() < 1e-14);
        assert!(t_of_zeta(0.0_f64).is_err() && t_of_zeta(1.0_f64).is_err());
        let mut last = f64::INFINITY;
        for k in 1..12 {
            let t = t_of_zeta(10f64.powi(-k)).unwrap();
            assert!(t > 0.0 && t < last);
            last = t;
        }
    }

    #[test]
    fn q_examples() {
        let x = [0.3_f64, -1.2];
        let y = [0.8, 0.5];
        let s = [0.4, -0.9];
        let (p, m) = q_plus_minus(&x, &y, &s).unwrap();
        assert!((p + m - 2.0 * (0.09 + 1.44 + 0.64 + 0.25)).abs() < 1e-14);
        let (p, m) = q_plus_minus(&x, &y, &[0.0, 0.0]).unwrap();
        assert_eq!(p, m);
        let (p, _) = q_plus_minus(&x, &x, &[-1.0, -1.0]).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn mehler_reduction() {
        let (x, y, t): (f64, f64, f64) = (0.3, 0.7, 0.5);
        let s2 = (2.0 * t).sinh();
        let c2 = 1.0 / (2.0 * t).tanh();
        let mehler = (2.0 * std::f64::consts::PI * s2).powf(-0.5) * (-c2 * (x * x + y * y) / 2.0 + x * y / s2).exp();
        assert!(rel(heat_kernel_1d(-0.5, t, x, y).unwrap(), mehler) < 1e-13);
        assert!(rel(heat_kernel_1d(-0.5, t, -x, y).unwrap(), (2.0 * std::f64::consts::PI * s2).powf(-0.5) * (-c2 * (x * x + y * y) / 2.0 - x * y / s2).exp()) < 1e-13);
    }

    #[test]
    fn kernel_symmetric_and_positive() {
        for &a in &[-0.5, 0.0, 1.3] {
            for &t in &[1e-3, 0.1, 1.0, 10.0, 16.0] {
                for &x in &[-3.0, -0.5, 0.0, 0.4, 2.0] {
                    for &y in &[-2.0, 0.0, 0.7, 3.0] {
                        let g = heat_kernel_1d(a, t, x, y).unwrap();
                        assert!(g > 0.0 || (t == 1e-3 && g >= 0.0), "a={a} t={t} x={x} y={y}");
                        assert_eq!(g, heat_kernel_1d(a, t, y, x).unwrap());
                    }
                }
            }
        }
        let a = al(&[0.7, -0.5]);
        let (x, y) = ([0.4, -1.0], [1.2, 0.3]);
        assert_eq!(heat_kernel(&a, 0.3, &x, &y).unwrap(), heat_kernel(&a, 0.3, &y, &x).unwrap());
        assert!(heat_kernel_1d(0.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn no_overflow_at_small_time_and_large_points() {
        let g = heat_kernel_1d(1.3_f64, 1e-3, 50.0, 50.0).unwrap();
        assert!(g.is_finite() && g > 0.0);
        let g = heat_kernel_1d(0.0_f64, 1e-3, 50.0, -50.0).unwrap();
        assert!(g.is_finite() && g >= 0.0);
    }

    #[test]
    fn components_sum_and_parity() {
        let a = al(&[0.7, 0.0]);
        let (x, y) = ([0.4, -1.0], [1.2, 0.3]);
        let t = 0.4;
        let total: f64 = parity_vectors(2)
            .iter()
            .map(|e| heat_kernel_component(&a, e, t, &x, &y).unwrap())
            .sum();
        assert!(rel(total, heat_kernel(&a, t, &x, &y).unwrap()) < 1e-12);
        assert_eq!(heat_kernel_component(&a, &[1, 0], t, &[0.0, 1.0], &y).unwrap(), 0.0);
        for e in parity_vectors(2) {
            let g = heat_kernel_component(&a, &e, t, &x, &y).unwrap();
            for j in 0..2 {
                let mut xr = x;
                xr[j] = -xr[j];
                let gr = heat_kernel_component(&a, &e, t, &xr, &y).unwrap();
                let sign = if e[j] == 1 { -1.0 } else { 1.0 };
                assert_eq!(gr, sign * g);
            }
            // the even component dominates
            assert!(g.abs() <= heat_kernel_component(&a, &[0, 0], t, &x, &y).unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn spectral_series_matches_closed_form() {
        for alpha in [vec![-0.5], vec![1.3], vec![0.0, 0.7]] {
            let a = al(&alpha);
            let d = a.dim();
            for &t in &[0.3, 0.7] {
                let x = vec![0.6; d];
                let y = vec![1.4; d];
                let g = heat_kernel(&a, t, &x, &y).unwrap();
                let s = heat_kernel_series(&a, t, &x, &y, 60).unwrap();
                assert!(rel(s, g) < 1e-9, "alpha={alpha:?} t={t}: {s} vs {g}");
            }
        }
    }

    #[test]
    fn zeta_form_reproduces_component() {
        let a = al(&[0.7, -0.5]);
        let (x, y) = ([0.4, -1.0], [1.2, 0.3]);
        let zeta = 0.35;
        let t = t_of_zeta(zeta).unwrap();
        for e in parity_vectors(2) {
            let nus = a.shifted(&e);
            let m0 = SchlafliMeasure::new(nus[0], 40).unwrap();
            let m1 = SchlafliMeasure::new(nus[1], 40).unwrap();
            let mut acc = 0.0;
            for (s0, w0) in m0.nodes() {
                for (s1, w1) in m1.nodes() {
                    acc += w0 * w1 * heat_kernel_zeta(&a, &e, zeta, &x, &y, &[s0, s1]).unwrap();
                }
            }
            let want = heat_kernel_component(&a, &e, t, &x, &y).unwrap();
            assert!((acc - want).abs() < 1e-8 * want.abs().max(1e-12), "eps={e:?}");
        }
        let near_one = heat_kernel_zeta(&a, &[0, 0], 1.0 - 1e-6, &x, &y, &[0.0, 0.0]).unwrap();
        assert!(near_one < 1e-5);
        assert!(heat_kernel_zeta(&a, &[0, 0], 1.0, &x, &y, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn heat_of_ground_state() {
        let a = al(&[0.7]);
        let rule = gauss_rule(&a, 80).unwrap();
        let h0 = |y: &[f64]| hermite_fn(&MultiIndex::zeros(1), &a, y).unwrap();
        for &t in &[0.1, 0.5, 1.0] {
            for &x in &[0.0, 0.8, -1.5] {
                let v = heat_apply_kernel(h0, t, &[x], &rule).unwrap();
                let want = (-t * (2.0 * 0.7 + 2.0)).exp() * h0(&[x]);
                assert!(rel(v, want) < 1e-6, "t={t} x={x}");
            }
        }
    }
}
