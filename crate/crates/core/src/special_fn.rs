//! Gamma, Laguerre and modified Bessel functions of the first kind.
//!
//! Bessel values are produced in exponentially scaled form
//! `e^{-z} I_nu(z)` and as the entire ratio `I_nu(z) / z^nu`; the kernels
//! downstream assemble their exponents in log space and only ever need these
//! scaled pieces.

use crate::error::{Error, Result};
use crate::scalar::Real;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `zeta(k) - 1` for k = 2..=31.
const ZETA_MINUS_ONE: [f64; 30] = [
    0.644_934_066_848_226_4,
    0.202_056_903_159_594_3,
    0.082_323_233_711_138_19,
    0.036_927_755_143_369_93,
    0.017_343_061_984_449_14,
    0.008_349_277_381_922_827,
    0.004_077_356_197_944_339,
    0.002_008_392_826_082_214,
    9.945_751_278_180_853e-4,
    4.941_886_041_194_646e-4,
    2.460_865_533_080_483e-4,
    1.227_133_475_784_891e-4,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187e-5,
    7.637_197_637_899_762e-6,
    3.817_293_264_999_840e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_961e-7,
    4.769_329_867_878_065e-7,
    2.384_505_027_277_330e-7,
    1.192_199_259_653_111e-7,
    5.960_818_905_125_948e-8,
    2.980_350_351_465_228e-8,
    1.490_155_482_836_504e-8,
    7.450_711_789_835_429e-9,
    3.725_334_024_788_457e-9,
    1.862_659_723_513_049e-9,
    9.313_274_324_196_682e-10,
    4.656_629_065_033_784e-10,
];

/// `ln Gamma(1 + z)` for `|z| <= 1/2` from the zeta-value Taylor series.
fn ln_gamma_1p<T: Real>(z: T) -> T {
    let mut acc = -z.ln_1p() + z * T::lit(1.0 - EULER_GAMMA);
    let mut zk = z;
    let mut sign = T::one();
    for (i, &c) in ZETA_MINUS_ONE.iter().enumerate() {
        let k = i + 2;
        zk *= z;
        sign = -sign;
        // (-1)^k with k starting at 2
        acc += -sign * T::lit(c) * zk / T::of_usize(k);
    }
    acc
}

fn ln_gamma_stirling<T: Real>(x: T) -> T {
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut series = T::zero();
    let mut p = inv;
    for &c in &C {
        series += T::lit(c) * p;
        p *= inv2;
    }
    (x - T::half()) * x.ln() - x + T::half() * (T::two() * T::PI()).ln() + series
}

/// `ln Gamma(x)` without the domain check; callers guarantee `x > 0`.
pub(crate) fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::half();
    if x < half {
        return ln_gamma(x + T::one()) - x.ln();
    }
    if x <= T::lit(1.5) {
        return ln_gamma_1p(x - T::one());
    }
    if x <= T::lit(2.5) {
        let y = x - T::one();
        return y.ln() + ln_gamma_1p(y - T::one());
    }
    let shift_to = T::lit(15.0);
    let mut y = x;
    let mut log_prod = T::zero();
    while y < shift_to {
        log_prod += y.ln();
        y += T::one();
    }
    ln_gamma_stirling(y) - log_prod
}

/// `ln Gamma(x)` for `x > 0`.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma(x))
}

/// `L_n^a(y)` by upward three-term recurrence.
///
/// Precondition `a > -1` (checked in debug builds).
pub fn laguerre<T: Real>(n: usize, a: T, y: T) -> T {
    debug_assert!(a > -T::one(), "laguerre requires a > -1");
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() + a - y;
    for k in 1..n {
        let kf = T::of_usize(k);
        let next = ((T::two() * kf + T::one() + a - y) * cur - (kf + a) * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dy L_n^a(y) = -L_{n-1}^{a+1}(y)`; zero for `n = 0`.
pub fn laguerre_deriv<T: Real>(n: usize, a: T, y: T) -> T {
    if n == 0 {
        return T::zero();
    }
    -laguerre(n - 1, a + T::one(), y)
}

/// Evaluation policy for `I_nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselRegime {
    /// Power series at or below this argument, large-argument expansion above.
    pub small_z_cutoff: f64,
    /// Term budget for the power series below the cutoff.
    pub series_terms: usize,
    /// Minimum number of terms kept in the asymptotic expansion.
    pub asymptotic_terms: usize,
}

impl Default for BesselRegime {
    fn default() -> Self {
        Self {
            small_z_cutoff: 30.0,
            series_terms: 60,
            asymptotic_terms: 8,
        }
    }
}

/// Running sum of a positive series stored as `exp(scale) * sum`.
struct LogSum<T> {
    scale: T,
    sum: T,
}

impl<T: Real> LogSum<T> {
    fn new() -> Self {
        Self {
            scale: T::zero(),
            sum: T::zero(),
        }
    }

    fn ln(&self) -> T {
        self.scale + self.sum.ln()
    }
}

/// Sums `sum_k t_k` with `t_0 = 1` and `t_{k+1} = t_k * ratio(k)`, all terms
/// positive, and returns the natural log of the sum. Rescales internally so
/// sums far beyond `f64::MAX` are fine.
fn ln_positive_series<T: Real>(min_terms: usize, max_terms: usize, ratio: impl Fn(usize) -> T) -> T {
    let big = T::lit(1e200);
    let ln_big = big.ln();
    let eps = T::epsilon() * T::lit(0.25);
    let mut acc = LogSum::<T>::new();
    let mut term = T::one();
    for k in 0..max_terms {
        acc.sum += term;
        if acc.sum > big {
            acc.sum /= big;
            term /= big;
            acc.scale += ln_big;
        }
        let r = ratio(k);
        term *= r;
        if k + 1 >= min_terms && r < T::one() && term <= eps * acc.sum {
            break;
        }
    }
    acc.ln()
}

fn ln_i_series<T: Real>(nu: T, z: T, min_terms: usize) -> T {
    let q = z * z * T::lit(0.25);
    let max_terms = min_terms.max(z.to_usize().unwrap_or(0) * 4 + 200);
    let ln_sum = ln_positive_series(1, max_terms, |k| {
        let kk = T::of_usize(k + 1);
        q / (kk * (kk + nu))
    });
    nu * (z * T::half()).ln() - ln_gamma(nu + T::one()) + ln_sum
}

/// `ln(e^{-z} I_nu(z) sqrt(2 pi z))` from the Hankel expansion.
fn ln_i_asymptotic_core<T: Real>(nu: T, z: T, min_terms: usize) -> T {
    let mu = T::lit(4.0) * nu * nu;
    let eight_z = T::lit(8.0) * z;
    let mut sum = T::one();
    let mut term = T::one();
    let mut prev_abs = T::infinity();
    for k in 1..=60 {
        let odd = T::of_usize(2 * k - 1);
        term = -term * (mu - odd * odd) / (T::of_usize(k) * eight_z);
        let abs = term.abs();
        if k > min_terms && abs > prev_abs {
            break;
        }
        sum += term;
        if k >= min_terms && abs <= T::epsilon() * T::lit(0.25) * sum.abs() {
            break;
        }
        prev_abs = abs;
    }
    sum.ln()
}

/// `ln(e^{-z} I_nu(z))` for `z > 0`.
pub(crate) fn ln_bessel_i_scaled<T: Real>(reg: &BesselRegime, nu: T, z: T) -> T {
    let cutoff = T::lit(reg.small_z_cutoff);
    if z <= cutoff {
        return ln_i_series(nu, z, reg.series_terms) - z;
    }
    if T::lit(4.0) * nu * nu <= z {
        return ln_i_asymptotic_core(nu, z, reg.asymptotic_terms)
            - T::half() * (T::two() * T::PI() * z).ln();
    }
    ln_i_series(nu, z, reg.series_terms) - z
}

/// `ln(e^{-z} I_nu(z) / z^nu)` for `z >= 0` (finite at zero).
pub(crate) fn ln_bessel_ratio_scaled<T: Real>(reg: &BesselRegime, nu: T, z: T) -> T {
    if z == T::zero() {
        return -(nu * T::two().ln() + ln_gamma(nu + T::one()));
    }
    ln_bessel_i_scaled(reg, nu, z) - nu * z.ln()
}

fn check_order<T: Real>(nu: T) -> Result<()> {
    if nu < -T::half() || !nu.is_finite() {
        return Err(Error::Domain(format!("Bessel order must be >= -1/2, got {nu}")));
    }
    Ok(())
}

/// `e^{-z} I_nu(z)` for `nu >= -1/2`, `z >= 0`.
pub fn bessel_i_scaled<T: Real>(nu: T, z: T) -> Result<T> {
    bessel_i_scaled_with(&BesselRegime::default(), nu, z)
}

pub fn bessel_i_scaled_with<T: Real>(reg: &BesselRegime, nu: T, z: T) -> Result<T> {
    check_order(nu)?;
    if z < T::zero() || z.is_nan() {
        return Err(Error::Domain(format!("bessel_i_scaled requires z >= 0, got {z}")));
    }
    if z == T::zero() {
        return Ok(if nu == T::zero() {
            T::one()
        } else if nu > T::zero() {
            T::zero()
        } else {
            T::infinity()
        });
    }
    Ok(ln_bessel_i_scaled(reg, nu, z).exp())
}

/// `I_nu(z) / z^nu`, the entire function; positive and finite at zero.
pub fn bessel_ratio<T: Real>(nu: T, z: T) -> Result<T> {
    check_order(nu)?;
    if z < T::zero() || z.is_nan() {
        return Err(Error::Domain(format!("bessel_ratio requires z >= 0, got {z}")));
    }
    let reg = BesselRegime::default();
    Ok((ln_bessel_ratio_scaled(&reg, nu, z) + z).exp())
}

/// `e^{-|z|} I_nu(|z|) / |z|^nu`, even in `z`.
pub fn bessel_ratio_scaled<T: Real>(nu: T, z: T) -> T {
    ln_bessel_ratio_scaled(&BesselRegime::default(), nu, z.abs()).exp()
}

/// Log of `D_a(r) = e^{-r} (I_a(r) - I_{a+1}(r)) / r^a` for `r >= 0`.
///
/// Uses `D_a(r) = e^{-2r} 1F1(k; 2k+1; 2r) / (2^a Gamma(a+1))` with
/// `k = a + 1/2`, whose series has only positive terms.
pub(crate) fn ln_bessel_gap<T: Real>(a: T, r: T) -> T {
    let ln_norm = a * T::two().ln() + ln_gamma(a + T::one());
    let k = a + T::half();
    if k == T::zero() {
        return -T::two() * r - ln_norm;
    }
    if r == T::zero() {
        return -ln_norm;
    }
    let w = T::two() * r;
    let switch = T::lit(60.0).max(T::two() * (k + T::two()) * (k + T::two()));
    if w <= switch {
        let b = T::two() * k + T::one();
        let max_terms = w.to_usize().unwrap_or(0) * 3 + 400;
        let ln_sum = ln_positive_series(1, max_terms, |n| {
            let nf = T::of_usize(n);
            (k + nf) / (b + nf) * w / (nf + T::one())
        });
        return -w + ln_sum - ln_norm;
    }
    let mut sum = T::one();
    let mut term = T::one();
    let mut prev_abs = T::infinity();
    for n in 0..80 {
        let nf = T::of_usize(n);
        term = term * (k + T::one() + nf) * (T::one() - k + nf) / ((nf + T::one()) * w);
        let abs = term.abs();
        if abs > prev_abs || abs <= T::epsilon() * T::lit(0.25) * sum.abs() {
            break;
        }
        sum += term;
        prev_abs = abs;
    }
    ln_gamma(T::two() * k + T::one()) - ln_gamma(k) - (k + T::one()) * w.ln() + sum.ln() - ln_norm
}

/// `e^{-|z|} (R_a(z) + z R_{a+1}(z))` with `R_nu(z) = I_nu(z)/z^nu`.
///
/// This is the bracket of the one-dimensional Dunkl heat kernel; for `z < 0`
/// it is evaluated without cancellation.
pub fn dunkl_bracket_scaled<T: Real>(a: T, z: T) -> T {
    let reg = BesselRegime::default();
    if z >= T::zero() {
        ln_bessel_ratio_scaled(&reg, a, z).exp() + z * ln_bessel_ratio_scaled(&reg, a + T::one(), z).exp()
    } else {
        ln_bessel_gap(a, -z).exp()
    }
}

/// `ln((I_nu(z) - I_{nu+1}(z)) / I_nu(z))` for `z > 0`; finite exactly when
/// the strict inequality `I_{nu+1}(z) < I_nu(z)` holds in exact arithmetic.
pub fn ln_soni_gap<T: Real>(nu: T, z: T) -> Result<T> {
    check_order(nu)?;
    if !(z > T::zero()) {
        return Err(Error::Domain(format!("Soni gap requires z > 0, got {z}")));
    }
    let reg = BesselRegime::default();
    Ok(ln_bessel_gap(nu, z) - ln_bessel_ratio_scaled(&reg, nu, z))
}
