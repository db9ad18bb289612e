//! Generalized Hermite functions `h_n^alpha` for the reflection group Z_2^d.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special_fn::{laguerre, ln_gamma};

/// Element of N^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// The unit vector `e_j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = vec![0; dim];
        v[j] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|n|`.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `n - e_j`, or `None` when `n_j = 0`.
    pub fn minus_unit(&self, j: usize) -> Option<Self> {
        if self.0[j] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[j] -= 1;
        Some(Self(v))
    }

    pub fn plus_unit(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v[j] += 1;
        Self(v)
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// All `n` in N^d with `|n| <= max_degree`, ordered by degree and then
/// lexicographically.
pub fn indices_up_to(dim: usize, max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        out.extend(indices_of_degree(dim, deg));
    }
    out
}

/// All `n` in N^d with `|n| = degree`, lexicographically descending in the
/// first entry.
pub fn indices_of_degree(dim: usize, degree: usize) -> Vec<MultiIndex> {
    fn rec(dim: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(dim, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if degree == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Multiplicity vector with every `alpha_j >= -1/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaParams<T> {
    alpha: Vec<T>,
    abs_sum: T,
}

impl<T: Real> AlphaParams<T> {
    pub fn new(alpha: Vec<T>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidArgument("alpha must have at least one entry".into()));
        }
        for (index, &a) in alpha.iter().enumerate() {
            if !(a >= -T::half()) || !a.is_finite() {
                return Err(Error::AlphaBound {
                    index,
                    value: a.as_f64(),
                });
            }
        }
        let abs_sum = alpha.iter().copied().sum();
        Ok(Self { alpha, abs_sum })
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// `|alpha| = sum_j alpha_j`; may be negative.
    pub fn abs_sum(&self) -> T {
        self.abs_sum
    }

    pub fn get(&self, j: usize) -> T {
        self.alpha[j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.alpha
    }

    /// `alpha + eps` for a parity vector.
    pub fn shifted(&self, eps: &[u8]) -> Vec<T> {
        self.alpha
            .iter()
            .zip(eps)
            .map(|(&a, &e)| a + T::of_usize(e as usize))
            .collect()
    }

    pub fn check_point(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn check_coordinate(&self, j: usize) -> Result<()> {
        if j >= self.dim() {
            return Err(Error::CoordinateOutOfRange { j, dim: self.dim() });
        }
        Ok(())
    }

    /// The weight `w_alpha(x) = prod_j |x_j|^{2 alpha_j + 1}`.
    pub fn weight(&self, x: &[T]) -> T {
        self.alpha
            .iter()
            .zip(x)
            .map(|(&a, &xi)| weight_1d(a, xi))
            .fold(T::one(), |acc, w| acc * w)
    }
}

pub(crate) fn weight_1d<T: Real>(a: T, x: T) -> T {
    if a == -T::half() {
        T::one()
    } else {
        x.abs().powf(T::two() * a + T::one())
    }
}

/// `a_{0,a} = 1`, `a_{n,a} = n a_{n-1,a}` (n even), `(n+2a+1) a_{n-1,a}` (n odd).
pub fn a_coeff<T: Real>(n: usize, a: T) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * a_step(k, a))
}

/// The factor `a_{n,a} / a_{n-1,a}`.
pub(crate) fn a_step<T: Real>(n: usize, a: T) -> T {
    let nf = T::of_usize(n);
    if n.is_multiple_of(2) {
        nf
    } else {
        nf + T::two() * a + T::one()
    }
}

/// `ln |d_{n,a}|` for the normalization constants.
fn ln_norm_1d<T: Real>(n: usize, a: T) -> T {
    let m = T::of_usize(n / 2);
    let shift = if n.is_multiple_of(2) { T::one() } else { T::two() };
    T::half() * (ln_gamma(m + T::one()) - ln_gamma(m + a + shift))
}

/// The normalization constant `d_{n,a}` including its sign `(-1)^{floor(n/2)}`.
pub fn norm_const_1d<T: Real>(n: usize, a: T) -> T {
    let mag = ln_norm_1d(n, a).exp();
    if (n / 2).is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

fn hermite_1d_with_norm<T: Real>(n: usize, a: T, x: T, norm: T) -> T {
    let m = n / 2;
    let y = x * x;
    let g = (-y * T::half()).exp();
    if n.is_multiple_of(2) {
        norm * g * laguerre(m, a, y)
    } else if x == T::zero() {
        T::zero()
    } else {
        norm * g * x * laguerre(m, a + T::one(), y)
    }
}

/// One-dimensional `h_n^a(x)` from its Laguerre form.
pub fn hermite_fn_1d<T: Real>(n: usize, a: T, x: T) -> T {
    hermite_1d_with_norm(n, a, x, norm_const_1d(n, a))
}

/// `delta h_n^a` with `delta = T^a + x`, from the Laguerre forms and
/// `d/dy L_m^a = -L_{m-1}^{a+1}`.
fn delta_1d_with_norm<T: Real>(n: usize, a: T, x: T, norm: T) -> T {
    let m = n / 2;
    let y = x * x;
    let g = (-y * T::half()).exp();
    if n.is_multiple_of(2) {
        if m == 0 {
            return T::zero();
        }
        -T::two() * norm * g * x * laguerre(m - 1, a + T::one(), y)
    } else {
        let tail = if m == 0 {
            T::zero()
        } else {
            T::two() * y * laguerre(m - 1, a + T::two(), y)
        };
        norm * g * ((T::two() * a + T::two()) * laguerre(m, a + T::one(), y) - tail)
    }
}

/// `h_n^alpha(x) = prod_i h_{n_i}^{alpha_i}(x_i)`.
pub fn hermite_fn<T: Real>(n: &MultiIndex, alpha: &AlphaParams<T>, x: &[T]) -> Result<T> {
    alpha.check_point(x)?;
    if n.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: n.dim(),
        });
    }
    Ok(n
        .as_slice()
        .iter()
        .zip(alpha.as_slice())
        .zip(x)
        .map(|((&ni, &ai), &xi)| hermite_fn_1d(ni, ai, xi))
        .fold(T::one(), |acc, v| acc * v))
}

/// `m(n_j, a_j)`: `sqrt(2 n_j)` for even `n_j`, `sqrt(2 n_j + 4 a_j + 2)` for odd.
pub fn ladder_coeff<T: Real>(n_j: usize, a_j: T) -> T {
    let nf = T::of_usize(n_j);
    if n_j.is_multiple_of(2) {
        (T::two() * nf).sqrt()
    } else {
        (T::two() * nf + T::lit(4.0) * a_j + T::two()).sqrt()
    }
}

/// `2|n| + 2|alpha| + 2d`.
pub fn eigenvalue<T: Real>(n: &MultiIndex, alpha: &AlphaParams<T>) -> T {
    T::two() * (T::of_usize(n.order()) + alpha.abs_sum() + T::of_usize(alpha.dim()))
}

/// A basis function with its normalization constants cached.
#[derive(Clone, Debug)]
pub struct HermiteFn<T> {
    n: MultiIndex,
    alpha: AlphaParams<T>,
    normalization: Vec<T>,
}

impl<T: Real> HermiteFn<T> {
    pub fn new(n: MultiIndex, alpha: AlphaParams<T>) -> Result<Self> {
        if n.dim() != alpha.dim() {
            return Err(Error::DimensionMismatch {
                expected: alpha.dim(),
                got: n.dim(),
            });
        }
        let normalization = n
            .as_slice()
            .iter()
            .zip(alpha.as_slice())
            .map(|(&ni, &ai)| norm_const_1d(ni, ai))
            .collect();
        Ok(Self {
            n,
            alpha,
            normalization,
        })
    }

    pub fn index(&self) -> &MultiIndex {
        &self.n
    }

    pub fn alpha(&self) -> &AlphaParams<T> {
        &self.alpha
    }

    pub fn normalization(&self) -> &[T] {
        &self.normalization
    }

    fn factor(&self, i: usize, x: T) -> T {
        hermite_1d_with_norm(self.n.get(i), self.alpha.get(i), x, self.normalization[i])
    }

    fn check(&self, x: &[T]) -> Result<()> {
        self.alpha.check_point(x)
    }

    pub fn eval(&self, x: &[T]) -> Result<T> {
        self.check(x)?;
        Ok((0..x.len()).fold(T::one(), |acc, i| acc * self.factor(i, x[i])))
    }

    /// `delta_j h_n (x)` with `delta_j = T_j^alpha + x_j`, applied analytically.
    pub fn delta(&self, j: usize, x: &[T]) -> Result<T> {
        self.check(x)?;
        self.alpha.check_coordinate(j)?;
        let mut acc = delta_1d_with_norm(self.n.get(j), self.alpha.get(j), x[j], self.normalization[j]);
        for (i, &xi) in x.iter().enumerate() {
            if i != j {
                acc *= self.factor(i, xi);
            }
        }
        Ok(acc)
    }

    /// `delta_j^* h_n (x)`, using `delta_j^* = -delta_j + 2 x_j`.
    pub fn delta_star(&self, j: usize, x: &[T]) -> Result<T> {
        Ok(-self.delta(j, x)? + T::two() * x[j] * self.eval(x)?)
    }

    pub fn eigenvalue(&self) -> T {
        eigenvalue(&self.n, &self.alpha)
    }
}

/// Values `h_0^a(x), ..., h_{max_n}^a(x)` from the three-term recurrence of
/// the orthonormal polynomials for `|x|^{2a+1} e^{-x^2}`.
///
/// Agrees with [`hermite_fn_1d`] including signs; linear cost in `max_n`.
pub fn hermite_table_1d<T: Real>(max_n: usize, a: T, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(max_n + 1);
    let h0 = (-(x * x) * T::half() - T::half() * ln_gamma(a + T::one())).exp();
    out.push(h0);
    if max_n == 0 {
        return out;
    }
    let b = |k: usize| -> T { (a_step(k, a) * T::half()).sqrt() };
    out.push(x * h0 / b(1));
    for k in 1..max_n {
        let next = (x * out[k] - b(k) * out[k - 1]) / b(k + 1);
        out.push(next);
    }
    out
}

/// Numerical `delta_j f(x) = d_j f + (alpha_j + 1/2)(f(x) - f(sigma_j x))/x_j + x_j f`
/// with a central difference of step `h`.
pub fn dunkl_delta_numeric<T: Real>(
    f: impl Fn(&[T]) -> T,
    alpha: &AlphaParams<T>,
    j: usize,
    x: &[T],
    h: T,
) -> T {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[j] += h;
    xm[j] -= h;
    let deriv = (f(&xp) - f(&xm)) / (T::two() * h);
    let fx = f(x);
    let mut refl = x.to_vec();
    refl[j] = -refl[j];
    let diff = if x[j] == T::zero() {
        T::zero()
    } else {
        (alpha.get(j) + T::half()) * (fx - f(&refl)) / x[j]
    };
    deriv + diff + x[j] * fx
}
