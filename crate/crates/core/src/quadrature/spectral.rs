//! Truncated expansions `f = sum_{|n| <= N} <f, h_n> h_n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite_basis::{hermite_table_1d, indices_up_to, AlphaParams, MultiIndex};
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;

/// Coefficients on `{n : |n| <= max_degree}`; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCoeffs<T> {
    alpha: AlphaParams<T>,
    max_degree: usize,
    coeffs: BTreeMap<MultiIndex, T>,
}

impl<T: Real> SpectralCoeffs<T> {
    pub fn zeros(alpha: AlphaParams<T>, max_degree: usize) -> Self {
        Self {
            alpha,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(alpha: AlphaParams<T>, max_degree: usize, n: MultiIndex) -> Result<Self> {
        let mut c = Self::zeros(alpha, max_degree);
        c.set(n, T::one())?;
        Ok(c)
    }

    pub fn alpha(&self) -> &AlphaParams<T> {
        &self.alpha
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn get(&self, n: &MultiIndex) -> T {
        self.coeffs.get(n).copied().unwrap_or_else(T::zero)
    }

    fn check_index(&self, n: &MultiIndex) -> Result<()> {
        if n.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: n.dim(),
            });
        }
        if n.order() > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "index {n} exceeds max_degree {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    pub fn set(&mut self, n: MultiIndex, v: T) -> Result<()> {
        self.check_index(&n)?;
        if v == T::zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, v);
        }
        Ok(())
    }

    /// Adds `v` at `n`; indices beyond the truncation are dropped.
    pub fn add_at(&mut self, n: MultiIndex, v: T) {
        if n.order() > self.max_degree || v == T::zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_insert_with(T::zero);
        *e += v;
    }

    /// Nonzero entries in index order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, T)> {
        self.coeffs.iter().map(|(n, &v)| (n, v))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn map_values(&self, f: impl Fn(&MultiIndex, T) -> T) -> Self {
        let mut out = Self::zeros(self.alpha.clone(), self.max_degree);
        for (n, v) in self.iter() {
            out.add_at(n.clone(), f(n, v));
        }
        out
    }

    /// Coefficient-space inner product.
    pub fn dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for (n, v) in self.iter() {
            acc += v * other.get(n);
        }
        acc
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    /// `sum_n c_n h_n(x)`.
    pub fn synthesize(&self, x: &[T]) -> Result<T> {
        self.alpha.check_point(x)?;
        let tables = self.tables(x);
        Ok(self.synthesize_with(&tables))
    }

    fn tables(&self, x: &[T]) -> Vec<Vec<T>> {
        x.iter()
            .zip(self.alpha.as_slice())
            .map(|(&xi, &a)| hermite_table_1d(self.max_degree, a, xi))
            .collect()
    }

    fn synthesize_with(&self, tables: &[Vec<T>]) -> T {
        let mut acc = T::zero();
        for (n, v) in self.iter() {
            let mut h = v;
            for (i, &ni) in n.as_slice().iter().enumerate() {
                h *= tables[i][ni];
            }
            acc += h;
        }
        acc
    }

    pub fn to_dto(&self) -> SpectralCoeffsDto<T> {
        SpectralCoeffsDto {
            alpha: self.alpha.as_slice().to_vec(),
            max_degree: self.max_degree,
            coeffs: self
                .iter()
                .map(|(n, value)| CoeffEntry {
                    n: n.as_slice().to_vec(),
                    value,
                })
                .collect(),
        }
    }

    pub fn from_dto(dto: SpectralCoeffsDto<T>) -> Result<Self> {
        let alpha = AlphaParams::new(dto.alpha)?;
        let mut out = Self::zeros(alpha, dto.max_degree);
        for e in dto.coeffs {
            let n = MultiIndex::new(e.n);
            out.check_index(&n)?;
            out.add_at(n, e.value);
        }
        Ok(out)
    }
}

/// Serialized form: `{"alpha": [...], "max_degree": N, "coeffs": [{"n": [...], "value": x}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralCoeffsDto<T> {
    pub alpha: Vec<T>,
    pub max_degree: usize,
    pub coeffs: Vec<CoeffEntry<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry<T> {
    pub n: Vec<usize>,
    pub value: T,
}

/// Neumaier-compensated accumulator; order-deterministic.
#[derive(Clone, Copy)]
struct Compensated<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Compensated<T> {
    fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// `coeffs[n] = sum_i w_i f(x_i) h_n(x_i)` for all `|n| <= max_degree`.
///
/// Uses the rule's `dw_weights`, so Gauss and box rules both integrate
/// against `w_alpha(x) dx`.
pub fn project<T: Real>(
    f: impl Fn(&[T]) -> T,
    alpha: &AlphaParams<T>,
    max_degree: usize,
    rule: &QuadratureRule<T>,
) -> Result<SpectralCoeffs<T>> {
    if rule.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: rule.dim(),
        });
    }
    if let Some(deg) = rule.exactness_degree() {
        if deg < 2 * max_degree + 1 {
            return Err(Error::InvalidArgument(format!(
                "rule exactness {deg} is below 2*max_degree+1 = {}",
                2 * max_degree + 1
            )));
        }
    }
    let indices = indices_up_to(alpha.dim(), max_degree);
    let mut acc = vec![Compensated::new(); indices.len()];
    for (i, (x, &w)) in rule.nodes().zip(rule.dw_weights()).enumerate() {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(super::non_finite(i, x, fx));
        }
        let wf = w * fx;
        if wf == T::zero() {
            continue;
        }
        let tables: Vec<Vec<T>> = x
            .iter()
            .zip(alpha.as_slice())
            .map(|(&xi, &a)| hermite_table_1d(max_degree, a, xi))
            .collect();
        for (n, slot) in indices.iter().zip(acc.iter_mut()) {
            let mut h = wf;
            for (k, &nk) in n.as_slice().iter().enumerate() {
                h *= tables[k][nk];
            }
            slot.add(h);
        }
    }
    let mut out = SpectralCoeffs::zeros(alpha.clone(), max_degree);
    for (n, s) in indices.into_iter().zip(acc) {
        out.add_at(n, s.value());
    }
    Ok(out)
}

/// Evaluates `f` as given by its coefficients at all nodes of a rule.
pub fn synthesize_on<T: Real>(c: &SpectralCoeffs<T>, rule: &QuadratureRule<T>) -> Vec<T> {
    rule.nodes()
        .map(|x| c.synthesize_with(&c.tables(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite_basis::hermite_fn;
    use crate::quadrature::gauss_rule;

    fn al(v: &[f64]) -> AlphaParams<f64> {
        AlphaParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn projection_of_basis_function_is_unit_vector() {
        let a = al(&[0.7, -0.5]);
        let rule = gauss_rule(&a, 20).unwrap();
        let m = MultiIndex::new(vec![3, 2]);
        let c = project(|x| hermite_fn(&m, &a, x).unwrap(), &a, 8, &rule).unwrap();
        for (n, v) in c.iter() {
            let want = if *n == m { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn projection_is_linear() {
        let a = al(&[1.3]);
        let rule = gauss_rule(&a, 30).unwrap();
        let n1 = MultiIndex::new(vec![2]);
        let n2 = MultiIndex::new(vec![5]);
        let f = |x: &[f64]| 3.0 * hermite_fn(&n1, &a, x).unwrap() - 2.0 * hermite_fn(&n2, &a, x).unwrap();
        let c = project(f, &a, 10, &rule).unwrap();
        assert!((c.get(&n1) - 3.0).abs() < 1e-8);
        assert!((c.get(&n2) + 2.0).abs() < 1e-8);
        for (n, v) in c.iter() {
            if *n != n1 && *n != n2 {
                assert!(v.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn synthesis_inverts_projection_in_span() {
        let a = al(&[0.0, 0.7]);
        let mut c = SpectralCoeffs::zeros(a.clone(), 6);
        c.set(MultiIndex::new(vec![1, 2]), 0.4).unwrap();
        c.set(MultiIndex::new(vec![0, 6]), -1.1).unwrap();
        c.set(MultiIndex::new(vec![3, 0]), 2.0).unwrap();
        let rule = gauss_rule(&a, 16).unwrap();
        let back = project(|x| c.synthesize(x).unwrap(), &a, 6, &rule).unwrap();
        for n in indices_up_to(2, 6) {
            assert!((back.get(&n) - c.get(&n)).abs() < 1e-11);
        }
        assert!((back.norm() - c.norm()).abs() < 1e-11);
    }

    #[test]
    fn gaussian_residual_decreases_with_degree() {
        let a = al(&[0.0]);
        let rule = gauss_rule(&a, 80).unwrap();
        let f = |x: &[f64]| (-2.0 * (x[0] - 0.5).powi(2)).exp();
        let f_norm2 = rule.integrate_dw(|x| f(x).powi(2)).unwrap();
        let mut last = f64::INFINITY;
        for deg in [2, 6, 12, 24] {
            let c = project(f, &a, deg, &rule).unwrap();
            let resid = f_norm2 - c.dot(&c);
            assert!(resid >= -1e-12 && resid < last);
            last = resid;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn dto_round_trip() {
        let a = al(&[0.0, 0.5]);
        let mut c = SpectralCoeffs::zeros(a, 3);
        c.set(MultiIndex::new(vec![1, 1]), 0.25).unwrap();
        let back = SpectralCoeffs::from_dto(c.to_dto()).unwrap();
        assert_eq!(back, c);
        let mut bad = c.to_dto();
        bad.coeffs[0].n = vec![4, 0];
        assert!(SpectralCoeffs::from_dto(bad).is_err());
    }

    #[test]
    fn exactness_precondition() {
        let a = al(&[0.0]);
        let rule = gauss_rule(&a, 5).unwrap();
        assert!(project(|_| 1.0, &a, 5, &rule).is_err());
    }
}
