//! Gauss rules from three-term recurrences.
//!
//! Nodes are eigenvalues of the Jacobi matrix (implicit QL), refined by
//! Newton steps on the recurrence; weights come from the Christoffel
//! numbers `mu0 / sum_k p_k(x)^2` of the orthonormal polynomials.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special_fn::ln_gamma;

/// Nodes and weights of a one-dimensional rule, nodes ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule1d<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> Rule1d<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        let terms: Vec<T> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        crate::scalar::pairwise_sum(&terms)
    }
}

/// Monic recurrence `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}` with `b_k > 0`
/// and total mass `mu0`.
pub struct Recurrence<T> {
    pub diag: Vec<T>,
    /// `b_1, ..., b_{n-1}`.
    pub offdiag_sq: Vec<T>,
    pub mu0: T,
}

/// Eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn tridiagonal_eigenvalues<T: Real>(diag: &[T], offdiag: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); n];
    e[..n.saturating_sub(1)].copy_from_slice(&offdiag[..n.saturating_sub(1)]);
    let eps = T::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Domain("tridiagonal QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (T::two() * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + T::two() * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

impl<T: Real> Recurrence<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Scaled values `(p_N(x), p_N'(x))` of the degree-`N` orthonormal
    /// polynomial, up to a common positive factor.
    fn degree_n_value(&self, x: T) -> (T, T) {
        let n = self.len();
        let beta = |k: usize| self.offdiag_sq[k - 1].sqrt();
        let (mut p_prev, mut p) = (T::zero(), T::one());
        let (mut dp_prev, mut dp) = (T::zero(), T::zero());
        let big = T::lit(1e100);
        for k in 0..n {
            let bk = if k == 0 { T::zero() } else { beta(k) };
            let bk1 = if k + 1 < n { beta(k + 1) } else { T::one() };
            let p_next = ((x - self.diag[k]) * p - bk * p_prev) / bk1;
            let dp_next = (p + (x - self.diag[k]) * dp - bk * dp_prev) / bk1;
            p_prev = p;
            p = p_next;
            dp_prev = dp;
            dp = dp_next;
            if p.abs() > big || dp.abs() > big {
                let s = big.recip();
                p *= s;
                p_prev *= s;
                dp *= s;
                dp_prev *= s;
            }
        }
        (p, dp)
    }

    /// `ln(mu0 / sum_{k<N} p_k(x)^2)` with rescaling against overflow.
    fn ln_christoffel(&self, x: T) -> T {
        let n = self.len();
        let beta = |k: usize| self.offdiag_sq[k - 1].sqrt();
        let (mut p_prev, mut p) = (T::zero(), T::one());
        let mut sum = T::one();
        let mut ln_scale = T::zero();
        let big = T::lit(1e100);
        for k in 0..n.saturating_sub(1) {
            let bk = if k == 0 { T::zero() } else { beta(k) };
            let p_next = ((x - self.diag[k]) * p - bk * p_prev) / beta(k + 1);
            p_prev = p;
            p = p_next;
            sum += p * p;
            if p.abs() > big {
                let s = big.recip();
                p *= s;
                p_prev *= s;
                sum *= s * s;
                ln_scale += T::two() * big.ln();
            }
        }
        self.mu0.ln() - sum.ln() - ln_scale
    }

    /// Newton refinement of approximate nodes on `p_N`.
    pub fn polish(&self, x: T) -> T {
        let mut x = x;
        for _ in 0..3 {
            let (p, dp) = self.degree_n_value(x);
            if dp == T::zero() || !p.is_finite() || !dp.is_finite() {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            x -= step;
            if step.abs() <= T::epsilon() * x.abs().max(T::one()) {
                break;
            }
        }
        x
    }

    pub fn weight_at(&self, x: T) -> T {
        self.ln_christoffel(x).exp()
    }

    pub fn ln_weight_at(&self, x: T) -> T {
        self.ln_christoffel(x)
    }

    /// Gauss rule by eigen-solve, polish and Christoffel weights.
    pub fn gauss_rule(&self) -> Result<Rule1d<T>> {
        let off: Vec<T> = self.offdiag_sq.iter().map(|b| b.sqrt()).collect();
        let eig = tridiagonal_eigenvalues(&self.diag, &off)?;
        let nodes: Vec<T> = eig.into_iter().map(|x| self.polish(x)).collect();
        let weights = nodes.iter().map(|&x| self.weight_at(x)).collect();
        Ok(Rule1d { nodes, weights })
    }
}

/// Gauss–Legendre on `[-1, 1]`.
pub fn legendre_recurrence<T: Real>(n: usize) -> Recurrence<T> {
    Recurrence {
        diag: vec![T::zero(); n],
        offdiag_sq: (1..n)
            .map(|k| {
                let kf = T::of_usize(k);
                kf * kf / (T::lit(4.0) * kf * kf - T::one())
            })
            .collect(),
        mu0: T::two(),
    }
}

/// Generalized Laguerre weight `u^lambda e^{-u}` on `(0, inf)`, `lambda > -1`.
pub fn laguerre_recurrence<T: Real>(n: usize, lambda: T) -> Recurrence<T> {
    Recurrence {
        diag: (0..n)
            .map(|k| T::two() * T::of_usize(k) + lambda + T::one())
            .collect(),
        offdiag_sq: (1..n)
            .map(|k| {
                let kf = T::of_usize(k);
                kf * (kf + lambda)
            })
            .collect(),
        mu0: ln_gamma(lambda + T::one()).exp(),
    }
}

/// Symmetric Jacobi weight `(1 - s^2)^lambda` on `[-1, 1]`, `lambda > -1`.
pub fn symmetric_jacobi_recurrence<T: Real>(n: usize, lambda: T) -> Recurrence<T> {
    let two_l = T::two() * lambda;
    Recurrence {
        diag: vec![T::zero(); n],
        offdiag_sq: (1..n)
            .map(|k| {
                let kf = T::of_usize(k);
                if k == 1 {
                    T::one() / (T::lit(3.0) + two_l)
                } else {
                    kf * (kf + two_l) / ((T::two() * kf + two_l + T::one()) * (T::two() * kf + two_l - T::one()))
                }
            })
            .collect(),
        mu0: (T::half() * T::PI().ln() + ln_gamma(lambda + T::one()) - ln_gamma(lambda + T::lit(1.5))).exp(),
    }
}

/// Weight `|x|^{2a+1} e^{-x^2}` on the real line, `a >= -1/2`.
pub fn generalized_hermite_recurrence<T: Real>(n: usize, a: T) -> Recurrence<T> {
    Recurrence {
        diag: vec![T::zero(); n],
        offdiag_sq: (1..n)
            .map(|k| crate::hermite_basis::a_step(k, a) * T::half())
            .collect(),
        mu0: ln_gamma(a + T::one()).exp(),
    }
}

pub fn gauss_legendre<T: Real>(n: usize) -> Result<Rule1d<T>> {
    symmetrize(legendre_recurrence(n).gauss_rule()?)
}

pub fn gauss_laguerre<T: Real>(n: usize, lambda: T) -> Result<Rule1d<T>> {
    laguerre_recurrence(n, lambda).gauss_rule()
}

pub fn gauss_jacobi_symmetric<T: Real>(n: usize, lambda: T) -> Result<Rule1d<T>> {
    symmetrize(symmetric_jacobi_recurrence(n, lambda).gauss_rule()?)
}

/// Forces exact mirror symmetry of a rule for an even weight.
pub(crate) fn symmetrize<T: Real>(rule: Rule1d<T>) -> Result<Rule1d<T>> {
    let n = rule.len();
    let mut nodes = rule.nodes.clone();
    let mut weights = rule.weights.clone();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = T::half() * (rule.nodes[j] - rule.nodes[i]);
        let w = T::half() * (rule.weights[j] + rule.weights[i]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    Ok(Rule1d { nodes, weights })
}
