//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use currents::current::{RationalCurrent, Weight};
use currents::hyperbolic::{HyperbolicStructure, Mat2, MetricSpec};
use currents::surface::{CurveClass, RibbonSpine, SurfaceSig};
use currents::word::{cyclically_reduced_words, Letter, Word};
use rand::Rng;

pub fn spine(g: u32, n: u32) -> RibbonSpine {
    RibbonSpine::standard(SurfaceSig::new(g, n).unwrap()).unwrap()
}

pub fn class(s: &RibbonSpine, w: &str) -> CurveClass {
    s.class(w).unwrap().0
}

/// A one-holed torus without the symmetries of the default metric.
pub fn generic_torus(s: &RibbonSpine) -> HyperbolicStructure {
    let spec = MetricSpec {
        pants: vec![vec!["a".into(), "a".into(), "bndry(1)".into()]],
        lengths: vec![1.7],
        twists: vec![0.37],
        boundary_lengths: vec![1.3],
        schottky: None,
    };
    HyperbolicStructure::from_fenchel_nielsen(s, &spec).unwrap()
}

/// Christoffel word of slope `q / p` on the one-holed torus, with `a` and
/// `b` inverted for negative entries.
pub fn slope_word(p: i64, q: i64) -> String {
    let (x, y) = (p.unsigned_abs(), q.unsigned_abs());
    let n = x + y;
    let a = if p < 0 { 'A' } else { 'a' };
    let b = if q < 0 { 'B' } else { 'b' };
    (0..n)
        .map(|i| if ((i + 1) * y) / n == (i * y) / n { a } else { b })
        .collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitive integer vectors with `|p| + |q| <= max`.
pub fn primitive_slopes(max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in -max..=max {
        for q in -max..=max {
            if p.abs() + q.abs() <= max && gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Primitive classes of cyclic word length `1..=max_len`, each once.
pub fn primitive_classes(rank: usize, max_len: usize) -> Vec<CurveClass> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for w in cyclically_reduced_words(rank, len) {
            let (c, p) = CurveClass::from_word(&w).unwrap();
            if p == 1 && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

pub fn random_class<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> CurveClass {
    loop {
        let len = rng.gen_range(1..=max_len);
        let mut w: Word = Vec::with_capacity(len);
        while w.len() < len {
            let l = Letter::from_index(rng.gen_range(0..2 * rank));
            if w.last() == Some(&l.inverse()) {
                continue;
            }
            w.push(l);
        }
        if w.len() > 1 && w[0] == w[len - 1].inverse() {
            continue;
        }
        return CurveClass::from_word(&w).unwrap().0;
    }
}

pub fn random_current<R: Rng>(rng: &mut R, s: &RibbonSpine, terms: usize, max_len: usize) -> RationalCurrent {
    let mut c = RationalCurrent::zero();
    for _ in 0..terms {
        let w = Weight::new(rng.gen_range(1..=6), rng.gen_range(1..=3));
        c.add(random_class(rng, s.rank(), max_len), w);
    }
    c
}

fn apply(m: Mat2, v: [f64; 2]) -> [f64; 2] {
    [m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]]
}

/// Self-intersection count of the geodesic of a primitive class, read off
/// the hyperbolic plane.
///
/// The lifts of the geodesic are the axes of the conjugates `g w g^-1`. In
/// coordinates where the axis of `w` runs from `0` to `infinity`, a lift
/// with endpoints `x1, x2` crosses it iff `x1 x2 < 0`, at height
/// `sqrt(-x1 x2)`. Crossings are counted up to the translation by `w`,
/// which identifies heights whose logarithms differ by the length of `w`.
/// Each double point of the closed geodesic is seen twice.
pub fn numeric_self_intersection(h: &HyperbolicStructure, c: &CurveClass) -> u64 {
    let w = c.word();
    let rank = h.spine().rank();
    let wm = h.matrix(w);
    let (att, rep) = wm.fixed_points().expect("hyperbolic");
    let ell = h.class_length(c);
    // Columns (att, rep): sends infinity to att and 0 to rep.
    let p = Mat2::new(att[0], rep[0], att[1], rep[1]);
    let det = p.det();
    let pinv = Mat2::new(p.d / det, -p.b / det, -p.c / det, p.a / det);
    let depth = 2 * w.len();
    let mut found: Vec<(f64, f64, f64)> = Vec::new();
    let mut stack: Vec<(Mat2, Option<Letter>, usize)> = vec![(Mat2::diag(1.0), None, 0)];
    while let Some((g, last, len)) = stack.pop() {
        if len > 0 {
            let x = |v: [f64; 2]| {
                let u = apply(pinv, apply(g, v));
                u[0] / u[1]
            };
            let (x1, x2) = (x(rep), x(att));
            let scale = x1.abs().max(x2.abs()).max(1.0);
            if x1 * x2 < 0.0 && x1.abs() > 1e-9 * scale && x2.abs() > 1e-9 * scale && x1.is_finite() && x2.is_finite() {
                let t = (0.5 * (-x1 * x2).ln()).rem_euclid(ell);
                let shape = (x1 + x2) / (-x1 * x2).sqrt();
                let dir = (x2 - x1).signum();
                let dup = found.iter().any(|&(t0, s0, d0)| {
                    let dt = (t - t0).abs();
                    // Far lifts lose about eight digits; distinct crossings
                    // are much further apart than this.
                    dt.min(ell - dt) < 1e-5 && (shape - s0).abs() < 1e-5 * s0.abs().max(1.0) && d0 == dir
                });
                if !dup {
                    found.push((t, shape, dir));
                }
            }
        }
        if len < depth {
            for i in 0..2 * rank {
                let l = Letter::from_index(i);
                if last == Some(l.inverse()) {
                    continue;
                }
                stack.push((g * h.generator(l), Some(l), len + 1));
            }
        }
    }
    (found.len() / 2) as u64
}
