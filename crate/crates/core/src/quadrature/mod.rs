//! Integration against `w_alpha(x) dx` and spectral analysis on `{h_n^alpha}`.

pub mod composite;
pub mod golub_welsch;
pub mod spectral;

use std::io;

use crate::error::{Error, Result};
use crate::hermite_basis::AlphaParams;
use crate::scalar::{pairwise_sum, Real};
use crate::special_fn::ln_gamma;
use golub_welsch::{generalized_hermite_recurrence, laguerre_recurrence};

pub use spectral::{project, SpectralCoeffs, SpectralCoeffsDto};
pub use composite::{adaptive_gk15, composite_rule, gk15, uniform_panels};
pub use golub_welsch::{gauss_jacobi_symmetric, gauss_laguerre, gauss_legendre, Rule1d};

/// Largest supported one-dimensional Gauss rule.
pub const MAX_RULE_POINTS: usize = 512;

/// Nodes and positive weights on R^d.
///
/// Gauss rules integrate against `e^{-|x|^2} w_alpha(x) dx` and carry their
/// polynomial exactness degree; their `dw_weights` are the same weights
/// multiplied by `e^{|x|^2}`, so that sums against them approximate
/// integrals against `w_alpha(x) dx` of functions with Gaussian decay. Box
/// rules built by [`box_rule`] integrate against `w_alpha(x) dx` over a box,
/// have `dw_weights == weights` and carry no exactness certificate.
#[derive(Clone, Debug)]
pub struct QuadratureRule<T> {
    dim: usize,
    nodes: Vec<T>,
    weights: Vec<T>,
    dw_weights: Vec<T>,
    exactness_degree: Option<usize>,
    alpha: AlphaParams<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node(&self, i: usize) -> &[T] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[T]> {
        self.nodes.chunks(self.dim)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Weights for `w_alpha(x) dx`.
    pub fn dw_weights(&self) -> &[T] {
        &self.dw_weights
    }

    /// `sum_i w_i f(x_i)` against `w_alpha(x) dx`.
    pub fn integrate_dw(&self, f: impl Fn(&[T]) -> T) -> Result<T> {
        let mut terms = Vec::with_capacity(self.len());
        for (i, (x, &w)) in self.nodes().zip(&self.dw_weights).enumerate() {
            let v = f(x);
            if !v.is_finite() {
                return Err(non_finite(i, x, v));
            }
            terms.push(w * v);
        }
        Ok(pairwise_sum(&terms))
    }

    pub fn exactness_degree(&self) -> Option<usize> {
        self.exactness_degree
    }

    pub fn alpha(&self) -> &AlphaParams<T> {
        &self.alpha
    }

    /// `sum_i w_i f(x_i)`; reports the first node with a non-finite value.
    pub fn integrate(&self, f: impl Fn(&[T]) -> T) -> Result<T> {
        let mut terms = Vec::with_capacity(self.len());
        for (i, (x, &w)) in self.nodes().zip(&self.weights).enumerate() {
            let v = f(x);
            if !v.is_finite() {
                return Err(non_finite(i, x, v));
            }
            terms.push(w * v);
        }
        Ok(pairwise_sum(&terms))
    }

    /// Writes `x1,...,xd,weight` rows after a schema comment line.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut out = out;
        writeln!(out, "# schema: quadrature-rule/v1")?;
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        header.push("weight".into());
        w.write_record(&header)?;
        for (x, &wt) in self.nodes().zip(&self.weights) {
            let mut row: Vec<String> = x.iter().map(|v| format!("{v:e}")).collect();
            row.push(format!("{wt:e}"));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Largest relative error of the even absolute moments
    /// `int |x_j|^k e^{-x_j^2} |x_j|^{2 alpha_j+1} dx_j = Gamma((k+2 alpha_j+2)/2)`
    /// for `k <= exactness_degree`, coordinate by coordinate. Only defined for
    /// one-dimensional Gauss rules.
    pub fn moment_certificate(&self) -> Option<f64> {
        let deg = self.exactness_degree?;
        if self.dim != 1 {
            return None;
        }
        let a = self.alpha.get(0);
        let mut worst = 0.0_f64;
        for k in (0..=deg).step_by(2) {
            let kf = T::of_usize(k);
            let terms: Vec<T> = self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * x.abs().powf(kf))
                .collect();
            let got = pairwise_sum(&terms).ln();
            let want = ln_gamma((kf + T::two() * a + T::two()) * T::half());
            worst = worst.max(((got - want).exp() - T::one()).abs().as_f64());
        }
        Some(worst)
    }
}

fn non_finite<T: Real>(index: usize, x: &[T], v: T) -> Error {
    Error::NonFinite {
        index,
        point: x.iter().map(|c| c.as_f64()).collect(),
        value: v.as_f64(),
    }
}

/// `npoints`-point Gauss rule for `|x|^{2a+1} e^{-x^2}` on R, exact through
/// degree `2 npoints - 1`.
///
/// The substitution `u = x^2` turns the even part into a generalized
/// Gauss–Laguerre problem (parameter `a`) and the odd part into the shifted
/// one (`a + 1`); those nodes are then refined and weighted on the
/// recurrence of the full weight.
pub fn gauss_rule_1d<T: Real>(alpha_j: T, npoints: usize) -> Result<QuadratureRule<T>> {
    let alpha = AlphaParams::new(vec![alpha_j])?;
    if npoints == 0 {
        return Err(Error::InvalidArgument("npoints must be >= 1".into()));
    }
    if npoints > MAX_RULE_POINTS {
        return Err(Error::InvalidArgument(format!(
            "{npoints} points exceeds the supported maximum of {MAX_RULE_POINTS}"
        )));
    }
    let half_rule = gauss_rule_half_line(alpha_j, npoints)?;
    let mut nodes = Vec::with_capacity(npoints);
    let mut ln_w = Vec::with_capacity(npoints);
    for (&x, &w) in half_rule.nodes.iter().zip(&half_rule.weights).rev() {
        if x > T::zero() {
            nodes.push(-x);
            ln_w.push(w);
        }
    }
    for (&x, &w) in half_rule.nodes.iter().zip(&half_rule.weights) {
        nodes.push(x);
        ln_w.push(w);
    }
    let weights = ln_w.iter().map(|l| l.exp()).collect();
    let dw_weights = nodes.iter().zip(&ln_w).map(|(&x, &l)| (l + x * x).exp()).collect();
    Ok(QuadratureRule {
        dim: 1,
        nodes,
        weights,
        dw_weights,
        exactness_degree: Some(2 * npoints - 1),
        alpha,
    })
}

/// Nonnegative nodes of the `npoints`-point rule, ascending (the zero node,
/// present for odd counts, comes first), with log-weights.
fn gauss_rule_half_line<T: Real>(a: T, npoints: usize) -> Result<Rule1d<T>> {
    let m = npoints / 2;
    let full = generalized_hermite_recurrence(npoints, a);
    let mut nodes = Vec::with_capacity(m + 1);
    if npoints % 2 == 1 {
        nodes.push(T::zero());
    }
    if m > 0 {
        let lambda = if npoints.is_multiple_of(2) { a } else { a + T::one() };
        let lag = laguerre_recurrence(m, lambda).gauss_rule()?;
        for u in lag.nodes {
            nodes.push(full.polish(u.sqrt()).abs());
        }
    }
    let weights = nodes.iter().map(|&x| full.ln_weight_at(x)).collect();
    Ok(Rule1d { nodes, weights })
}

/// Tensor product; exactness is the minimum over the factors.
pub fn tensor_rule<T: Real>(rules: &[QuadratureRule<T>]) -> Result<QuadratureRule<T>> {
    if rules.is_empty() {
        return Err(Error::InvalidArgument("tensor_rule needs at least one factor".into()));
    }
    let mut alpha = Vec::new();
    for r in rules {
        alpha.extend_from_slice(r.alpha.as_slice());
    }
    let dim: usize = rules.iter().map(|r| r.dim).sum();
    let mut nodes: Vec<Vec<T>> = vec![Vec::new()];
    let mut weights = vec![T::one()];
    let mut dw_weights = vec![T::one()];
    for r in rules {
        let mut n2 = Vec::with_capacity(nodes.len() * r.len());
        let mut w2 = Vec::with_capacity(nodes.len() * r.len());
        let mut v2 = Vec::with_capacity(nodes.len() * r.len());
        for ((p, &w), &v) in nodes.iter().zip(&weights).zip(&dw_weights) {
            for ((x, &wx), &vx) in r.nodes().zip(&r.weights).zip(&r.dw_weights) {
                let mut q = p.clone();
                q.extend_from_slice(x);
                n2.push(q);
                w2.push(w * wx);
                v2.push(v * vx);
            }
        }
        nodes = n2;
        weights = w2;
        dw_weights = v2;
    }
    let exactness_degree = rules
        .iter()
        .map(|r| r.exactness_degree)
        .try_fold(usize::MAX, |acc, d| d.map(|d| acc.min(d)));
    Ok(QuadratureRule {
        dim,
        nodes: nodes.concat(),
        weights,
        dw_weights,
        exactness_degree,
        alpha: AlphaParams::new(alpha)?,
    })
}

/// Tensor Gauss rule with `points` nodes per coordinate.
pub fn gauss_rule<T: Real>(alpha: &AlphaParams<T>, points: usize) -> Result<QuadratureRule<T>> {
    let rules = alpha
        .as_slice()
        .iter()
        .map(|&a| gauss_rule_1d(a, points))
        .collect::<Result<Vec<_>>>()?;
    tensor_rule(&rules)
}

/// Rule for `int_box f(x) w_alpha(x) dx`: tensor composite Gauss–Legendre
/// with `panels` panels of `points` nodes per coordinate; weights include
/// `w_alpha`. Panels should not straddle a coordinate hyperplane when
/// `alpha_j > -1/2`, or accuracy degrades.
pub fn box_rule<T: Real>(
    alpha: &AlphaParams<T>,
    lo: &[T],
    hi: &[T],
    panels: usize,
    points: usize,
) -> Result<QuadratureRule<T>> {
    alpha.check_point(lo)?;
    alpha.check_point(hi)?;
    let mut factors = Vec::with_capacity(alpha.dim());
    for j in 0..alpha.dim() {
        if !(hi[j] > lo[j]) {
            return Err(Error::InvalidArgument(format!("empty box in coordinate {j}")));
        }
        let r = composite::uniform_panels(lo[j], hi[j], panels, points)?;
        let a = alpha.get(j);
        let weights: Vec<T> = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(&x, &w)| w * crate::hermite_basis::weight_1d(a, x))
            .collect();
        factors.push(QuadratureRule {
            dim: 1,
            nodes: r.nodes,
            dw_weights: weights.clone(),
            weights,
            exactness_degree: None,
            alpha: AlphaParams::new(vec![a])?,
        });
    }
    tensor_rule(&factors)
}

/// `<f, g>_alpha = int f g w_alpha dx`, as `sum_i w_i f(x_i) g(x_i)` with the
/// rule's `dw_weights`.
pub fn inner_product<T: Real>(
    f: impl Fn(&[T]) -> T,
    g: impl Fn(&[T]) -> T,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let mut terms = Vec::with_capacity(rule.len());
    for (i, (x, &w)) in rule.nodes().zip(rule.dw_weights()).enumerate() {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(non_finite(i, x, fx));
        }
        let gx = g(x);
        if !gx.is_finite() {
            return Err(non_finite(i, x, gx));
        }
        terms.push(w * fx * gx);
    }
    Ok(pairwise_sum(&terms))
}

/// The constant `c_alpha = int e^{-|x|^2} w_alpha(x) dx` two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct MmsConstant<T> {
    pub analytic: T,
    pub quadrature: T,
    pub discrepancy: T,
}

pub fn mms_constant<T: Real>(alpha: &AlphaParams<T>) -> Result<MmsConstant<T>> {
    let analytic = alpha
        .as_slice()
        .iter()
        .map(|&a| ln_gamma(a + T::one()))
        .sum::<T>()
        .exp();
    let rule = gauss_rule(alpha, 4)?;
    let quadrature = rule.integrate(|_| T::one())?;
    Ok(MmsConstant {
        analytic,
        quadrature,
        discrepancy: (analytic - quadrature).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite_basis::{hermite_fn, HermiteFn, MultiIndex};

    /// Direct eigen-solve of the full Jacobi matrix of the weight, the
    /// textbook route the u = x^2 construction must reproduce.
    fn direct_rule(a: f64, n: usize) -> Rule1d<f64> {
        generalized_hermite_recurrence(n, a).gauss_rule().unwrap()
    }

    #[test]
    fn matches_direct_eigen_solve() {
        for &a in &[-0.5, 0.0, 0.7, 1.3] {
            for &n in &[1usize, 2, 5, 8, 17] {
                let r = gauss_rule_1d(a, n).unwrap();
                let d = direct_rule(a, n);
                for i in 0..n {
                    assert!((r.node(i)[0] - d.nodes[i]).abs() < 1e-12, "a={a} n={n} i={i}");
                    assert!((r.weights()[i] - d.weights[i]).abs() < 1e-12 * d.weights[i].max(1e-300) + 1e-300);
                }
            }
        }
    }

    #[test]
    fn moments_and_symmetry() {
        for &a in &[-0.5f64, 0.0, 1.3] {
            let r = gauss_rule_1d(a, 80).unwrap();
            let m0 = r.integrate(|_| 1.0).unwrap();
            assert!((m0 - ln_gamma(a + 1.0).exp()).abs() < 1e-12 * m0);
            let m2 = r.integrate(|x| x[0] * x[0]).unwrap();
            assert!((m2 - ln_gamma(a + 2.0).exp()).abs() < 1e-12 * m2);
            let odd = r.integrate(|x| x[0].powi(3) + x[0]).unwrap();
            assert!(odd.abs() < 1e-14);
            let n = r.len();
            for i in 0..n {
                assert_eq!(r.node(i)[0], -r.node(n - 1 - i)[0]);
                assert_eq!(r.weights()[i], r.weights()[n - 1 - i]);
            }
            let cert = r.moment_certificate().unwrap();
            assert!(cert < 1e-12, "a={a} certificate {cert:e}");
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(gauss_rule_1d(0.0, 0).is_err());
        assert!(gauss_rule_1d(0.0, 513).is_err());
        assert!(gauss_rule_1d(0.0, 512).is_ok());
        assert!(gauss_rule_1d(-0.7, 4).is_err());
    }

    #[test]
    fn tensor_counts_and_normalization() {
        let a = AlphaParams::new(vec![0.3f64]).unwrap();
        let single = gauss_rule(&a, 7).unwrap();
        let t = tensor_rule(std::slice::from_ref(&single)).unwrap();
        assert_eq!(t.len(), 7);
        let r1 = gauss_rule_1d(-0.5f64, 3).unwrap();
        let r2 = gauss_rule_1d(0.7, 3).unwrap();
        let t = tensor_rule(&[r1, r2]).unwrap();
        assert_eq!(t.len(), 9);
        assert_eq!(t.exactness_degree(), Some(5));
        let al = AlphaParams::new(vec![-0.5f64, 0.7]).unwrap();
        let t = gauss_rule(&al, 10).unwrap();
        let h0 = HermiteFn::new(MultiIndex::zeros(2), al.clone()).unwrap();
        // the rule weight carries e^{-|x|^2}; h_0^2 carries it too
        let v = inner_product(|x| h0.eval(x).unwrap(), |x| h0.eval(x).unwrap(), &t).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let _ = hermite_fn(&MultiIndex::zeros(2), &al, &[0.0, 0.0]).unwrap();
    }

    #[test]
    fn mms_examples() {
        let pi = std::f64::consts::PI;
        for (al, want) in [(vec![-0.5], pi.sqrt()), (vec![0.0], 1.0), (vec![-0.5, -0.5], pi)] {
            let c = mms_constant(&AlphaParams::new(al).unwrap()).unwrap();
            assert!((c.analytic - want).abs() < 1e-13);
            assert!(c.discrepancy < 1e-13);
        }
    }

    #[test]
    fn inner_product_names_bad_node() {
        let r = gauss_rule_1d(0.0f64, 4).unwrap();
        let err = inner_product(|x| 1.0 / (x[0] - r.node(2)[0]), |_| 1.0, &r).unwrap_err();
        match err {
            Error::NonFinite { index: 2, .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn csv_has_schema_line() {
        let r = gauss_rule_1d(0.0f64, 2).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("# schema: quadrature-rule/v1"));
        assert_eq!(lines.next(), Some("x1,weight"));
        assert_eq!(s.lines().count(), 4);
    }

    #[test]
    fn box_rule_integrates_weight() {
        let al = AlphaParams::new(vec![0.0f64, -0.5]).unwrap();
        let r = box_rule(&al, &[0.5, -1.0], &[1.5, 2.0], 2, 8).unwrap();
        // int_{0.5}^{1.5} x dx * 3
        let v = r.integrate(|_| 1.0).unwrap();
        assert!((v - 3.0).abs() < 1e-13);
    }
}
