//! Composite Gauss–Legendre panels and adaptive Gauss–Kronrod (G7/K15).

use crate::error::Result;
use crate::quadrature::golub_welsch::{gauss_legendre, Rule1d};
use crate::scalar::Real;

/// Maps a rule on `[-1, 1]` onto each panel `[edges[i], edges[i+1]]`.
pub fn composite_rule<T: Real>(base: &Rule1d<T>, edges: &[T]) -> Rule1d<T> {
    let mut nodes = Vec::with_capacity(base.len() * edges.len().saturating_sub(1));
    let mut weights = Vec::with_capacity(nodes.capacity());
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let half = T::half() * (b - a);
        let mid = T::half() * (a + b);
        for (&x, &wt) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + half * x);
            weights.push(half * wt);
        }
    }
    Rule1d { nodes, weights }
}

/// `panels` equal panels of an `points`-point Gauss–Legendre rule on `[a, b]`.
pub fn uniform_panels<T: Real>(a: T, b: T, panels: usize, points: usize) -> Result<Rule1d<T>> {
    let base = gauss_legendre(points)?;
    let edges: Vec<T> = (0..=panels)
        .map(|i| a + (b - a) * T::of_usize(i) / T::of_usize(panels))
        .collect();
    Ok(composite_rule(&base, &edges))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: `(kronrod, |kronrod - gauss|)`.
pub fn gk15<T: Real>(f: &impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let half = T::half() * (b - a);
    let mid = T::half() * (a + b);
    let fc = f(mid);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let s = f(mid - dx) + f(mid + dx);
        k += T::lit(WGK[i]) * s;
        if i % 2 == 1 {
            g += T::lit(WG[i / 2]) * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Adaptive bisection with G7/K15 panels until the summed error estimate is
/// below `max(abs_tol, rel_tol * |I|)`. Deterministic: always splits the
/// panel with the largest error, ties broken by position.
pub fn adaptive_gk15<T: Real>(f: impl Fn(T) -> T, a: T, b: T, abs_tol: T, rel_tol: T, max_panels: usize) -> (T, T) {
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let total: T = panels.iter().map(|p| p.2).sum();
        let err: T = panels.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) || panels.len() >= max_panels {
            return (total, err);
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .fold((0usize, -T::one()), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (pa, pb, _, _) = panels.swap_remove(idx);
        let m = T::half() * (pa + pb);
        let (v1, e1) = gk15(&f, pa, m);
        let (v2, e2) = gk15(&f, m, pb);
        panels.push((pa, m, v1, e1));
        panels.push((m, pb, v2, e2));
    }
}
