//! Exact polynomial calculus for the Z_2^d Dunkl operators.
//!
//! Everything here is generic over [`Coeff`], so with
//! `num_rational::Ratio<i64>` coefficients (and rational `alpha`) the
//! identities are checked in exact arithmetic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hermite_basis::{hermite_fn_1d, indices_up_to, MultiIndex};
use crate::quadrature::QuadratureRule;
use crate::scalar::{Coeff, Real};
use crate::special_fn::ln_gamma;

/// Polynomial on R^d; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    dim: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        Self::monomial(MultiIndex::zeros(dim), c)
    }

    pub fn monomial(n: MultiIndex, c: C) -> Self {
        let mut p = Self::zero(n.dim());
        p.add_term(n, c);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: &MultiIndex) -> C {
        self.terms.get(n).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    /// `Some(m)` if every term has degree `m`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(MultiIndex::order);
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    pub fn add_term(&mut self, n: MultiIndex, c: C) {
        assert_eq!(n.dim(), self.dim, "monomial dimension");
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&n) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(n, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(n.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (n, c) in &self.terms {
            out.add_term(n.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn eval(&self, x: &[C]) -> C {
        let mut acc = C::zero();
        for (n, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &ni) in x.iter().zip(n.as_slice()) {
                for _ in 0..ni {
                    v = v * xi.clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    fn check_alpha(&self, alpha: &[C]) -> Result<()> {
        if alpha.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: alpha.len(),
            });
        }
        Ok(())
    }
}

impl<C: Coeff + Copy> Polynomial<C> {
    /// Evaluates with real arguments after converting the coefficients.
    pub fn eval_real<T: Real>(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for (n, c) in &self.terms {
            let mut v = T::from(*c).unwrap_or_else(T::nan);
            for (&xi, &ni) in x.iter().zip(n.as_slice()) {
                v *= xi.powi(ni as i32);
            }
            acc += v;
        }
        acc
    }
}

/// The factor by which `T_j` scales `x^n` (the monomial becomes `x^{n-e_j}`).
fn t_factor<C: Coeff>(n_j: usize, a_j: &C) -> C {
    let nf = C::from_usize(n_j).expect("small integer");
    if n_j.is_multiple_of(2) {
        nf
    } else {
        nf + C::from_int(2) * a_j.clone() + C::one()
    }
}

/// `T_j^alpha p`, with `j` zero-based.
///
/// On monomials `x^n -> n_j x^{n-e_j}` for even `n_j` and
/// `(n_j + 2 alpha_j + 1) x^{n-e_j}` for odd `n_j`.
pub fn dunkl_t<C: Coeff>(j: usize, alpha: &[C], p: &Polynomial<C>) -> Result<Polynomial<C>> {
    p.check_alpha(alpha)?;
    if j >= p.dim {
        return Err(Error::CoordinateOutOfRange { j, dim: p.dim });
    }
    let mut out = Polynomial::zero(p.dim);
    for (n, c) in &p.terms {
        if let Some(m) = n.minus_unit(j) {
            out.add_term(m, c.clone() * t_factor(n.get(j), &alpha[j]));
        }
    }
    Ok(out)
}

/// `Delta_alpha p = sum_j T_j^2 p`.
pub fn dunkl_laplacian<C: Coeff>(alpha: &[C], p: &Polynomial<C>) -> Result<Polynomial<C>> {
    let mut out = Polynomial::zero(p.dim);
    for j in 0..p.dim {
        let tj = dunkl_t(j, alpha, p)?;
        out = out.add(&dunkl_t(j, alpha, &tj)?);
    }
    Ok(out)
}

/// `exp(-Delta_alpha / 4) p`; the series terminates.
pub fn exp_neg_lap_quarter<C: Coeff>(alpha: &[C], p: &Polynomial<C>) -> Result<Polynomial<C>> {
    p.check_alpha(alpha)?;
    let quarter = -(C::one() / C::from_int(4));
    let mut out = p.clone();
    let mut term = p.clone();
    let mut i = 0i64;
    loop {
        term = dunkl_laplacian(alpha, &term)?;
        if term.is_zero() {
            return Ok(out);
        }
        i += 1;
        term = term.scale(&(quarter.clone() / C::from_int(i)));
        out = out.add(&term);
    }
}

/// Applies `T^m = T_1^{m_1} ... T_d^{m_d}` to `q`.
fn apply_t_power<C: Coeff>(m: &MultiIndex, alpha: &[C], q: &Polynomial<C>) -> Result<Polynomial<C>> {
    let mut cur = q.clone();
    for (j, &mj) in m.as_slice().iter().enumerate() {
        for _ in 0..mj {
            if cur.is_zero() {
                return Ok(cur);
            }
            cur = dunkl_t(j, alpha, &cur)?;
        }
    }
    Ok(cur)
}

/// The Fischer product `[p, q]_alpha = (p(T^alpha) q)(0)`.
pub fn fischer_product<C: Coeff>(p: &Polynomial<C>, q: &Polynomial<C>, alpha: &[C]) -> Result<C> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            got: q.dim,
        });
    }
    p.check_alpha(alpha)?;
    let origin = MultiIndex::zeros(p.dim);
    let mut acc = C::zero();
    for (m, c) in &p.terms {
        let r = apply_t_power(m, alpha, q)?;
        acc = acc + c.clone() * r.coeff(&origin);
    }
    Ok(acc)
}

/// `a_{n,alpha} = prod_i a_{n_i, alpha_i}` in the coefficient field.
pub fn a_coeff_multi<C: Coeff>(n: &MultiIndex, alpha: &[C]) -> C {
    let mut acc = C::one();
    for (&ni, a) in n.as_slice().iter().zip(alpha) {
        for k in 1..=ni {
            acc = acc * t_factor(k, a);
        }
    }
    acc
}

/// Outcome of checking hypotheses (i) and (ii) for `phi_n = a_n^{-1/2} x^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EldwaReport {
    pub pass: bool,
    /// Every `{T_j phi_n}` system (fixed `j`, nulls excluded) is orthogonal.
    pub orthogonal: bool,
    /// Largest `||T_j phi_n|| / (|n|+1)^{1/2}`; the fitted constant.
    pub max_ratio: f64,
    /// Analytic ceiling `max(1, 2 max_j alpha_j + 1)^{1/2}` for that ratio.
    pub ratio_bound: f64,
    pub pairs_checked: usize,
    /// `||T_j phi_n||` for single-coordinate `n = k e_0`, `k = 1..=max_degree`.
    pub axis_norms: Vec<f64>,
}

/// Checks, for every `j`, (i) pairwise orthogonality of the non-null
/// `T_j phi_n`, `|n| <= max_degree`, and (ii) the growth of their norms.
///
/// Squared norms are `[T_j x^n, T_j x^n] / a_n`, so the check stays inside
/// the coefficient field; only the reported ratios are converted to `f64`.
pub fn verify_eldwa<C: Coeff>(alpha: &[C], max_degree: usize) -> Result<EldwaReport> {
    if max_degree < 1 {
        return Err(Error::InvalidArgument("max_degree must be >= 1".into()));
    }
    let d = alpha.len();
    let indices = indices_up_to(d, max_degree);
    let mut orthogonal = true;
    let mut pairs = 0usize;
    let mut max_ratio_sq = 0.0_f64;
    let mut axis_norms = Vec::new();
    for j in 0..d {
        let images: Vec<(MultiIndex, Polynomial<C>)> = indices
            .iter()
            .map(|n| Ok((n.clone(), dunkl_t(j, alpha, &Polynomial::monomial(n.clone(), C::one()))?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        for (a, (na, pa)) in images.iter().enumerate() {
            let self_prod = fischer_product(pa, pa, alpha)?;
            let norm_sq = self_prod / a_coeff_multi(na, alpha);
            let r = norm_sq.to_f64().unwrap_or(f64::NAN) / (na.order() as f64 + 1.0);
            max_ratio_sq = max_ratio_sq.max(r);
            if j == 0 && na.as_slice()[1..].iter().all(|&v| v == 0) {
                axis_norms.push(norm_sq.to_f64().unwrap_or(f64::NAN).sqrt());
            }
            for (_, pb) in images.iter().skip(a + 1) {
                pairs += 1;
                if !fischer_product(pa, pb, alpha)?.is_zero() {
                    orthogonal = false;
                }
            }
        }
    }
    let amax = alpha
        .iter()
        .map(|a| a.to_f64().unwrap_or(f64::NAN))
        .fold(f64::NEG_INFINITY, f64::max);
    let ratio_bound = (2.0 * amax + 1.0).max(1.0).sqrt();
    let max_ratio = max_ratio_sq.sqrt();
    Ok(EldwaReport {
        pass: orthogonal && max_ratio <= ratio_bound * (1.0 + 1e-12),
        orthogonal,
        max_ratio,
        ratio_bound,
        pairs_checked: pairs,
        axis_norms,
    })
}

/// Both sides of the Fischer/Gaussian-integral identity for homogeneous
/// `p in P_{m1}`, `q in P_{m2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundResidual<T> {
    pub fischer: T,
    pub integral: T,
    pub residual: T,
}

/// `|[p,q] - c_alpha^{-1} 2^{(m1+m2)/2} int e^{-Delta/4}p e^{-Delta/4}q e^{-|x|^2} w_alpha dx|`.
///
/// The Gauss rule must be exact through degree `m1 + m2`.
pub fn fund_identity_check<T: Real + Coeff>(
    p: &Polynomial<T>,
    q: &Polynomial<T>,
    alpha: &[T],
    rule: &QuadratureRule<T>,
) -> Result<FundResidual<T>> {
    let m1 = p
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidArgument("p must be homogeneous and nonzero".into()))?;
    let m2 = q
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidArgument("q must be homogeneous and nonzero".into()))?;
    match rule.exactness_degree() {
        Some(deg) if deg >= m1 + m2 => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "rule must be a Gauss rule exact through degree {}",
                m1 + m2
            )))
        }
    }
    let fischer = fischer_product(p, q, alpha)?;
    let ep = exp_neg_lap_quarter(alpha, p)?;
    let eq = exp_neg_lap_quarter(alpha, q)?;
    let integral_raw = rule.integrate(|x| ep.eval_real(x) * eq.eval_real(x))?;
    let c_alpha = alpha.iter().map(|&a| ln_gamma(a + T::one())).sum::<T>().exp();
    let integral = integral_raw / c_alpha * T::two().powf(T::of_usize(m1 + m2) * T::half());
    Ok(FundResidual {
        fischer,
        integral,
        residual: (fischer - integral).abs(),
    })
}

/// Coefficient of variation of `e^{-x^2/2} exp(-Delta/4)(x^n) / h_n(x)` over
/// `grid`, skipping points where `|h_n| < 1e-3 max |h_n|`. A constant ratio
/// means the two normalizations differ only by a scalar.
pub fn hermite_bridge_cv<T: Real + Coeff>(alpha_j: T, n: usize, grid: &[T]) -> Result<(T, usize)> {
    let p = Polynomial::monomial(MultiIndex::new(vec![n]), T::one());
    let e = exp_neg_lap_quarter(&[alpha_j], &p)?;
    let hs: Vec<T> = grid.iter().map(|&x| hermite_fn_1d(n, alpha_j, x)).collect();
    let hmax = hs.iter().fold(T::zero(), |m, h| m.max(h.abs()));
    let ratios: Vec<T> = grid
        .iter()
        .zip(&hs)
        .filter(|(_, h)| h.abs() > T::lit(1e-3) * hmax)
        .map(|(&x, &h)| (-(x * x) * T::half()).exp() * e.eval_real(&[x]) / h)
        .collect();
    let k = ratios.len();
    if k < 2 {
        return Err(Error::InvalidArgument("grid too small for a ratio test".into()));
    }
    let mean = ratios.iter().copied().sum::<T>() / T::of_usize(k);
    let var = ratios.iter().map(|&r| (r - mean) * (r - mean)).sum::<T>() / T::of_usize(k);
    Ok((var.sqrt() / mean.abs(), k))
}

/// Exact rational form of a floating `alpha` whose entries are `p/q` with
/// `q <= max_den` (this covers decimal inputs such as 0.7 or 1.3).
pub fn rational_alpha(alpha: &[f64], max_den: i64) -> Option<Vec<num_rational::Ratio<i64>>> {
    alpha
        .iter()
        .map(|&a| {
            (1..=max_den).find_map(|q| {
                let p = (a * q as f64).round();
                (p / q as f64 == a && p.abs() < 1e12).then(|| num_rational::Ratio::new(p as i64, q))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    fn mono(n: &[usize]) -> Polynomial<Q> {
        Polynomial::monomial(MultiIndex::new(n.to_vec()), Q::from_integer(1))
    }

    #[test]
    fn t_examples() {
        let a = [q(7, 10)];
        let t = dunkl_t(0, &a, &mono(&[2])).unwrap();
        assert_eq!(t, mono(&[1]).scale(&q(2, 1)));
        let t = dunkl_t(0, &a, &mono(&[1])).unwrap();
        assert_eq!(t, Polynomial::constant(1, q(2, 1) * a[0] + q(2, 1)));
        assert!(dunkl_t(0, &a, &mono(&[0])).unwrap().is_zero());
        assert!(dunkl_t(1, &a, &mono(&[0])).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let a = [q(13, 10), q(-1, 2)];
        let lap = dunkl_laplacian(&a, &mono(&[2, 0])).unwrap();
        assert_eq!(lap, Polynomial::constant(2, q(2, 1) * (q(2, 1) * a[0] + q(2, 1))));
        assert!(dunkl_laplacian(&a, &mono(&[0, 0])).unwrap().is_zero());
        assert!(dunkl_laplacian(&a, &mono(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn exp_examples() {
        let a = [q(3, 5)];
        assert_eq!(exp_neg_lap_quarter(&a, &mono(&[0])).unwrap(), mono(&[0]));
        let e = exp_neg_lap_quarter(&a, &mono(&[2])).unwrap();
        assert_eq!(e, mono(&[2]).add(&Polynomial::constant(1, -(a[0] + q(1, 1)))));
        let p = mono(&[1]).scale(&q(4, 3));
        assert_eq!(exp_neg_lap_quarter(&a, &p).unwrap(), p);
    }

    #[test]
    fn fischer_examples() {
        let a = [q(7, 10)];
        for m in 0..6 {
            for n in 0..6 {
                let v = fischer_product(&mono(&[m]), &mono(&[n]), &a).unwrap();
                let want = if m == n { a_coeff_multi(&MultiIndex::new(vec![n]), &a) } else { q(0, 1) };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn commutativity_and_homogeneity() {
        let a = [q(7, 10), q(13, 10)];
        for n in indices_up_to(2, 10) {
            let p = Polynomial::monomial(n.clone(), q(1, 1));
            let t01 = dunkl_t(0, &a, &dunkl_t(1, &a, &p).unwrap()).unwrap();
            let t10 = dunkl_t(1, &a, &dunkl_t(0, &a, &p).unwrap()).unwrap();
            assert_eq!(t01, t10);
            for j in 0..2 {
                let t = dunkl_t(j, &a, &p).unwrap();
                if let Some(deg) = t.degree() {
                    assert_eq!(deg + 1, n.order());
                }
            }
        }
    }

    #[test]
    fn eldwa_examples() {
        let r = verify_eldwa(&[q(-1, 2)], 6).unwrap();
        assert!(r.pass);
        for (k, &v) in r.axis_norms.iter().enumerate() {
            assert!((v - ((k + 1) as f64).sqrt()).abs() < 1e-14);
        }
        assert!(verify_eldwa(&[q(3, 2)], 1).unwrap().pass);
        let r = verify_eldwa(&[q(7, 10), q(6, 5)], 5).unwrap();
        assert!(r.pass && r.orthogonal && r.pairs_checked > 0);
        assert!(verify_eldwa(&[q(1, 2)], 0).is_err());
    }

    #[test]
    fn rational_alpha_recovers_decimals() {
        let r = rational_alpha(&[-0.5, 0.7, 1.3, 0.0], 1000).unwrap();
        assert_eq!(r, vec![q(-1, 2), q(7, 10), q(13, 10), q(0, 1)]);
    }

    #[test]
    fn fund_identity_examples() {
        use crate::hermite_basis::AlphaParams;
        use crate::quadrature::gauss_rule;
        for a in [0.7_f64, -0.5, 1.3] {
            let al = AlphaParams::new(vec![a]).unwrap();
            let rule = gauss_rule(&al, 12).unwrap();
            let one = Polynomial::constant(1, 1.0);
            assert!(fund_identity_check(&one, &one, &[a], &rule).unwrap().residual < 1e-13);
            let x = Polynomial::monomial(MultiIndex::new(vec![1]), 1.0);
            let r = fund_identity_check(&x, &x, &[a], &rule).unwrap();
            assert!(r.residual < 1e-8 && (r.fischer - (2.0 * a + 2.0)).abs() < 1e-14);
            let x2 = Polynomial::monomial(MultiIndex::new(vec![2]), 1.0);
            assert!(fund_identity_check(&x2, &x2, &[a], &rule).unwrap().residual < 1e-8);
            let mixed = x.add(&one);
            assert!(fund_identity_check(&mixed, &x, &[a], &rule).is_err());
        }
    }

    #[test]
    fn bridge_ratio_is_constant() {
        let grid: Vec<f64> = (0..41).map(|i| -4.0 + 0.2 * i as f64).collect();
        for a in [-0.5, 0.0, 1.3] {
            for n in 0..8 {
                let (cv, used) = hermite_bridge_cv(a, n, &grid).unwrap();
                assert!(used >= 20 && cv < 1e-9, "a={a} n={n} cv={cv:e}");
            }
        }
    }
}
