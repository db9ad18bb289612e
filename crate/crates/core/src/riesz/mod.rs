//! Riesz transforms `R_j = delta_j L^{-1/2}`: the spectral multiplier, the
//! singular kernel by two independent routes, and the operator identities.

mod direct;
pub(crate) mod kernel;
mod pairing;
mod schlafli;

pub use direct::{riesz_kernel_direct, riesz_kernel_direct_component};
pub use kernel::{
    beta_weight, delta_psi, orbit_distance, riesz_kernel, riesz_kernel_component, KernelConfig, RieszKernel, ZetaGrid,
};
pub use pairing::{dual_pairing_check, Bump, PairingConfig, PairingReport};
pub use schlafli::{MeasureKind, ScaledMoments, SchlafliMeasure};

use crate::error::{Error, Result};
use crate::hermite_basis::{eigenvalue, hermite_fn, ladder_coeff, AlphaParams, MultiIndex};
use crate::quadrature::{inner_product, QuadratureRule, SpectralCoeffs};
use crate::scalar::Real;

/// `(R_j c)[n - e_j] = m(n_j, alpha_j) / sqrt(lambda_n) c[n]`.
pub fn riesz_apply_spectral<T: Real>(c: &SpectralCoeffs<T>, j: usize) -> Result<SpectralCoeffs<T>> {
    let alpha = c.alpha();
    alpha.check_coordinate(j)?;
    let mut out = SpectralCoeffs::zeros(alpha.clone(), c.max_degree());
    for (n, v) in c.iter() {
        if let Some(lower) = n.minus_unit(j) {
            let m = ladder_coeff(n.get(j), alpha.get(j)) / eigenvalue(n, alpha).sqrt();
            out.add_at(lower, m * v);
        }
    }
    Ok(out)
}

/// `(R^_j c)[n + e_j] = m(n_j + 1, alpha_j) / sqrt(lambda_n + 2) c[n]`;
/// images beyond the truncation degree are dropped.
pub fn riesz_adjoint_spectral<T: Real>(c: &SpectralCoeffs<T>, j: usize) -> Result<SpectralCoeffs<T>> {
    let alpha = c.alpha();
    alpha.check_coordinate(j)?;
    let mut out = SpectralCoeffs::zeros(alpha.clone(), c.max_degree());
    for (n, v) in c.iter() {
        let m = ladder_coeff(n.get(j) + 1, alpha.get(j)) / (eigenvalue(n, alpha) + T::two()).sqrt();
        out.add_at(n.plus_unit(j), m * v);
    }
    Ok(out)
}

/// `L_alpha` on coefficients.
pub fn apply_l_spectral<T: Real>(c: &SpectralCoeffs<T>) -> SpectralCoeffs<T> {
    let alpha = c.alpha().clone();
    c.map_values(|n, v| v * eigenvalue(n, &alpha))
}

fn max_abs_diff<T: Real>(a: &SpectralCoeffs<T>, b: &SpectralCoeffs<T>) -> T {
    let mut worst = T::zero();
    for (n, v) in a.iter() {
        worst = worst.max((v - b.get(n)).abs());
    }
    for (n, v) in b.iter() {
        worst = worst.max((v - a.get(n)).abs());
    }
    worst
}

/// Max coefficient difference between `delta_i^* delta_j h_n`, obtained from
/// the ladder relations, and `R^_i R_j L h_n`.
pub fn apriori_identity_check<T: Real>(n: &MultiIndex, i: usize, j: usize, alpha: &AlphaParams<T>) -> Result<T> {
    alpha.check_coordinate(i)?;
    alpha.check_coordinate(j)?;
    if n.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: n.dim(),
        });
    }
    let degree = n.order() + 1;
    let mut ladder = SpectralCoeffs::zeros(alpha.clone(), degree);
    if let Some(lower) = n.minus_unit(j) {
        let v = ladder_coeff(n.get(j), alpha.get(j)) * ladder_coeff(lower.get(i) + 1, alpha.get(i));
        ladder.set(lower.plus_unit(i), v)?;
    }
    let unit = SpectralCoeffs::unit(alpha.clone(), degree, n.clone())?;
    let composed = riesz_adjoint_spectral(&riesz_apply_spectral(&apply_l_spectral(&unit), j)?, i)?;
    Ok(max_abs_diff(&ladder, &composed))
}

/// `|<R_j f, h_{n-e_j}> - m(n_j)/sqrt(lambda_n) <f, h_n>|` with both inner
/// products taken by quadrature on synthesized values of `f` and `R_j f`.
/// Zero-free when `n_j = 0`: then the left side pairs against `h_{n-e_j} = 0`.
pub fn star_identity_check<T: Real>(f: &SpectralCoeffs<T>, n: &MultiIndex, j: usize, rule: &QuadratureRule<T>) -> Result<T> {
    let alpha = f.alpha();
    alpha.check_coordinate(j)?;
    let Some(lower) = n.minus_unit(j) else {
        return Ok(T::zero());
    };
    let rf = riesz_apply_spectral(f, j)?;
    let h_lower = |x: &[T]| hermite_fn(&lower, alpha, x).unwrap_or(T::nan());
    let h_n = |x: &[T]| hermite_fn(n, alpha, x).unwrap_or(T::nan());
    let synth = |c: &SpectralCoeffs<T>, x: &[T]| c.synthesize(x).unwrap_or(T::nan());
    let lhs = inner_product(|x| synth(&rf, x), h_lower, rule)?;
    let rhs = inner_product(|x| synth(f, x), h_n, rule)?;
    let m = ladder_coeff(n.get(j), alpha.get(j)) / eigenvalue(n, alpha).sqrt();
    Ok((lhs - m * rhs).abs())
}

/// Operator norm of `R_j` on `span{h_n : |n| <= max_degree}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorNorm<T> {
    /// `max_n m(n_j)/sqrt(lambda_n)`.
    pub analytic: T,
    /// Power iteration on `R^_j R_j`.
    pub power_iteration: T,
    pub iterations: usize,
}

pub fn riesz_operator_norm<T: Real>(alpha: &AlphaParams<T>, j: usize, max_degree: usize) -> Result<OperatorNorm<T>> {
    alpha.check_coordinate(j)?;
    let indices = crate::hermite_basis::indices_up_to(alpha.dim(), max_degree);
    let mut analytic = T::zero();
    let mut v = SpectralCoeffs::zeros(alpha.clone(), max_degree);
    for n in &indices {
        if n.get(j) > 0 {
            analytic = analytic.max(ladder_coeff(n.get(j), alpha.get(j)) / eigenvalue(n, alpha).sqrt());
        }
        v.set(n.clone(), T::one())?;
    }
    let mut rayleigh = T::zero();
    let mut iterations = 0;
    let tol = T::epsilon() * T::lit(4.0);
    for k in 1..=50_000 {
        let norm = v.norm();
        if norm == T::zero() {
            break;
        }
        v = v.map_values(|_, x| x / norm);
        let w = riesz_adjoint_spectral(&riesz_apply_spectral(&v, j)?, j)?;
        let next = v.dot(&w);
        iterations = k;
        let done = (next - rayleigh).abs() <= tol * next;
        rayleigh = next;
        v = w;
        if done {
            break;
        }
    }
    Ok(OperatorNorm {
        analytic,
        power_iteration: rayleigh.max(T::zero()).sqrt(),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_rule;
    use proptest::prelude::*;

    fn al(v: &[f64]) -> AlphaParams<f64> {
        AlphaParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn multiplier_examples() {
        let a = al(&[0.0]);
        let unit0 = SpectralCoeffs::unit(a.clone(), 4, MultiIndex::zeros(1)).unwrap();
        assert_eq!(riesz_apply_spectral(&unit0, 0).unwrap().nnz(), 0);
        let unit2 = SpectralCoeffs::unit(a.clone(), 4, MultiIndex::new(vec![2])).unwrap();
        let r = riesz_apply_spectral(&unit2, 0).unwrap();
        assert!((r.get(&MultiIndex::new(vec![1])) - 2.0 / 6f64.sqrt()).abs() < 1e-15);
        let a = al(&[0.7, 0.2]);
        let u = SpectralCoeffs::unit(a.clone(), 4, MultiIndex::zeros(2)).unwrap();
        let r = riesz_adjoint_spectral(&u, 1).unwrap();
        let want = ladder_coeff(1, 0.2) / (2.0 * 0.9 + 4.0 + 2.0f64).sqrt();
        assert!((r.get(&MultiIndex::new(vec![0, 1])) - want).abs() < 1e-15);
        assert!(riesz_apply_spectral(&u, 2).is_err());
    }

    #[test]
    fn composition_is_diagonal() {
        let a = al(&[1.3, -0.5]);
        for n in crate::hermite_basis::indices_up_to(2, 5) {
            let u = SpectralCoeffs::unit(a.clone(), 6, n.clone()).unwrap();
            let c = riesz_adjoint_spectral(&riesz_apply_spectral(&u, 0).unwrap(), 0).unwrap();
            assert!(c.iter().all(|(m, v)| m == &n || v == 0.0));
        }
    }

    #[test]
    fn apriori_examples() {
        let a = al(&[0.0]);
        assert_eq!(apriori_identity_check(&MultiIndex::new(vec![0]), 0, 0, &a).unwrap(), 0.0);
        assert!(apriori_identity_check(&MultiIndex::new(vec![2]), 0, 0, &a).unwrap() < 1e-14);
        let a = al(&[0.7, -0.5, 1.3]);
        for n in crate::hermite_basis::indices_up_to(3, 4) {
            for i in 0..3 {
                for j in 0..3 {
                    assert!(apriori_identity_check(&n, i, j, &a).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn star_identity_on_basis() {
        let a = al(&[0.7]);
        let rule = gauss_rule(&a, 40).unwrap();
        let n = MultiIndex::new(vec![3]);
        let f = SpectralCoeffs::unit(a.clone(), 8, n.clone()).unwrap();
        assert!(star_identity_check(&f, &n, 0, &rule).unwrap() < 1e-12);
        let g = SpectralCoeffs::unit(a.clone(), 8, MultiIndex::new(vec![5])).unwrap();
        assert!(star_identity_check(&g, &n, 0, &rule).unwrap() < 1e-12);
    }

    #[test]
    fn operator_norm_matches_power_iteration() {
        for alpha in [vec![0.0], vec![1.3], vec![-0.5, 0.7]] {
            let a = al(&alpha);
            for j in 0..a.dim() {
                let r = riesz_operator_norm(&a, j, 10).unwrap();
                assert!((r.analytic - r.power_iteration).abs() < 1e-12, "{alpha:?}: {r:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn adjointness(vals in proptest::collection::vec(-1.0f64..1.0, 42)) {
            let a = al(&[0.4, -0.5]);
            let idx = crate::hermite_basis::indices_up_to(2, 5);
            let mut c1 = SpectralCoeffs::zeros(a.clone(), 5);
            let mut c2 = SpectralCoeffs::zeros(a.clone(), 5);
            for (k, n) in idx.iter().enumerate() {
                c1.set(n.clone(), vals[k % vals.len()]).unwrap();
                c2.set(n.clone(), vals[(k * 7 + 3) % vals.len()]).unwrap();
            }
            for j in 0..2 {
                let lhs = riesz_apply_spectral(&c1, j).unwrap().dot(&c2);
                let rhs = c1.dot(&riesz_adjoint_spectral(&c2, j).unwrap());
                prop_assert!((lhs - rhs).abs() < 1e-13);
            }
        }

        #[test]
        fn linearity(x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let a = al(&[1.3]);
            let u = SpectralCoeffs::unit(a.clone(), 6, MultiIndex::new(vec![3])).unwrap();
            let v = SpectralCoeffs::unit(a.clone(), 6, MultiIndex::new(vec![6])).unwrap();
            let mut comb = SpectralCoeffs::zeros(a.clone(), 6);
            comb.set(MultiIndex::new(vec![3]), x).unwrap();
            comb.set(MultiIndex::new(vec![6]), y).unwrap();
            let r = riesz_apply_spectral(&comb, 0).unwrap();
            let ru = riesz_apply_spectral(&u, 0).unwrap();
            let rv = riesz_apply_spectral(&v, 0).unwrap();
            for n in crate::hermite_basis::indices_up_to(1, 6) {
                prop_assert!((r.get(&n) - x * ru.get(&n) - y * rv.get(&n)).abs() < 1e-14);
            }
        }
    }
}
