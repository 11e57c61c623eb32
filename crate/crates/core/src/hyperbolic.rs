//! Hyperbolic structures with geodesic boundary as real 2x2 representations
//! of the free group on the spine generators, and the lengths derived from
//! them.

use std::f64::consts::PI;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::current::RationalCurrent;
use crate::dt::ArcSystem;
use crate::error::{Error, Result};
use crate::surface::{CurveClass, RibbonSpine, SurfaceSig};
use crate::word::{self, Letter};

/// Tolerance for trace identities.
pub const TRACE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn diag(x: f64) -> Self {
        Mat2::new(x, 0.0, 0.0, 1.0 / x)
    }

    /// Translation by `s` along the axis from `0` to `inf`.
    pub fn translation(s: f64) -> Self {
        Mat2::diag((s / 2.0).exp())
    }

    /// Elliptic element fixing `i` that rotates the boundary circle by `phi`
    /// (in the angle coordinate of [`circle_angle`]).
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = (phi / 2.0).sin_cos();
        Mat2::new(c, s, -s, c)
    }

    /// Conjugation by `z -> -z`, which reverses orientation of the circle.
    pub fn flipped(&self) -> Self {
        Mat2::new(self.a, -self.b, -self.c, self.d)
    }

    /// Attracting and repelling fixed points as homogeneous vectors.
    pub fn fixed_points(&self) -> Option<([f64; 2], [f64; 2])> {
        let t = self.trace();
        if t.abs() <= 2.0 {
            return None;
        }
        let disc = (t * t - 4.0).sqrt();
        let sign = t.signum();
        let big = (t + sign * disc) / 2.0;
        let small = 1.0 / big;
        let eig = |lambda: f64| -> [f64; 2] {
            // Pick the better conditioned of the two eigenvector formulas.
            let v1 = [self.b, lambda - self.a];
            let v2 = [lambda - self.d, self.c];
            let n1 = v1[0].hypot(v1[1]);
            let n2 = v2[0].hypot(v2[1]);
            if n1 >= n2 {
                [v1[0] / n1, v1[1] / n1]
            } else {
                [v2[0] / n2, v2[1] / n2]
            }
        };
        Some((eig(big), eig(small)))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Angle in `[0, 2pi)` of the point `[x : y]` of the real projective line
/// under the Cayley map to the unit circle; increasing `x / y` runs
/// counterclockwise.
pub fn circle_angle(v: [f64; 2]) -> f64 {
    (-2.0 * v[1].atan2(v[0])).rem_euclid(2.0 * PI)
}

fn bracket(p: [f64; 2], q: [f64; 2]) -> f64 {
    p[0] * q[1] - p[1] * q[0]
}

/// Distance between the geodesics with endpoints `(p1, p2)` and `(q1, q2)`,
/// assumed ultraparallel.
pub fn axis_distance(p: ([f64; 2], [f64; 2]), q: ([f64; 2], [f64; 2])) -> f64 {
    let (a, b) = p;
    let (c, d) = q;
    let num = bracket(a, c) * bracket(b, d) + bracket(a, d) * bracket(b, c);
    let den = bracket(a, b) * bracket(c, d);
    (num / den).abs().max(1.0).acosh()
}

/// `2 arccosh(|t| / 2)`, clamped at zero for non-hyperbolic traces.
pub fn length_from_trace(t: f64) -> f64 {
    2.0 * (t.abs() / 2.0).max(1.0).acosh()
}

/// `Col(x) = arcsinh(1 / sinh(x / 2))`.
pub fn collar_width(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonPositive { name: "x", value: x });
    }
    Ok((1.0 / (x / 2.0).sinh()).asinh())
}

/// Length of the common perpendicular between boundaries `i` and `j` of a
/// pair of pants with boundary lengths `lengths`, from the right-angled
/// hexagon identity.
pub fn orthoarc_length(lengths: [f64; 3], i: usize, j: usize) -> Result<f64> {
    for (name, v) in ["x", "y", "z"].iter().zip(lengths) {
        if !(v > 0.0) {
            return Err(Error::NonPositive { name, value: v });
        }
    }
    if i > 2 || j > 2 || i == j {
        return Err(Error::InconsistentPants(format!("boundary pair ({i}, {j})")));
    }
    let k = 3 - i - j;
    let (x, y, z) = (lengths[i] / 2.0, lengths[j] / 2.0, lengths[k] / 2.0);
    Ok(((z.cosh() + x.cosh() * y.cosh()) / (x.sinh() * y.sinh())).acosh())
}

/// Metric specification file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct MetricSpec {
    #[serde(default)]
    pub pants: Vec<Vec<String>>,
    #[serde(default)]
    pub lengths: Vec<f64>,
    #[serde(default)]
    pub twists: Vec<f64>,
    #[serde(default)]
    pub boundary_lengths: Vec<f64>,
    /// Use a Schottky structure with interval half-width `pi / (2k)` times
    /// this factor instead of Fenchel-Nielsen data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schottky: Option<f64>,
}

impl MetricSpec {
    pub fn schottky(width: f64) -> Self {
        MetricSpec {
            schottky: Some(width),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct HyperbolicStructure {
    spine: RibbonSpine,
    gens: Vec<Mat2>,
    spec: MetricSpec,
}

impl HyperbolicStructure {
    /// Builds a structure from Fenchel-Nielsen data. Explicit gluing formulas
    /// cover the one-holed torus and the pair of pants; every other
    /// signature is validated and then rejected.
    pub fn from_fenchel_nielsen(spine: &RibbonSpine, spec: &MetricSpec) -> Result<Self> {
        let sig = spine.sig();
        check_pants(sig, spec)?;
        for &l in spec.lengths.iter().chain(&spec.boundary_lengths) {
            if !(l > 0.0) {
                return Err(Error::NonPositive {
                    name: "length",
                    value: l,
                });
            }
        }
        let mats = match (sig.genus, sig.n_boundary) {
            (1, 1) => one_holed_torus(spec.lengths[0], spec.twists[0], spec.boundary_lengths[0]),
            (0, 3) => {
                let idx = |w: &str| -> Result<usize> {
                    let c = spine.class(w)?.0;
                    spine.peripheral_index(&c).ok_or_else(|| {
                        Error::InconsistentPants(format!("{w} is not peripheral for this half-edge order"))
                    })
                };
                let b = &spec.boundary_lengths;
                pants_rep([b[idx("a")?], b[idx("b")?], b[idx("ab")?]])
            }
            _ => {
                return Err(Error::UnsupportedSignature {
                    genus: sig.genus,
                    boundary: sig.n_boundary,
                    what: "Fenchel-Nielsen construction",
                })
            }
        };
        let mats = adapt_to_spine(spine, mats)?;
        Self::checked(spine, mats, spec.clone())
    }

    /// Classical Schottky structure: each half-edge gets a boundary interval
    /// of half-width `width * pi / (2k)` centred at equally spaced angles in
    /// the spine's cyclic order, and the generator `x` maps the complement
    /// of the interval of `X` onto the interval of `x`.
    pub fn schottky(spine: &RibbonSpine, width: f64) -> Result<Self> {
        if !(width > 0.0 && width < 1.0) {
            return Err(Error::NonPositive {
                name: "schottky width (must lie in (0,1))",
                value: width,
            });
        }
        let k = spine.rank();
        let w = width * PI / (2 * k) as f64;
        let s = 4.0 * ((1.0 - w.sin()) / w.cos()).atanh();
        let angle = |l: Letter| PI * spine.position(l) as f64 / k as f64;
        let mats = (0..k)
            .map(|g| {
                let x = Letter::new(g, false);
                Mat2::rotation(angle(x)) * Mat2::translation(s) * Mat2::rotation(PI - angle(x.inverse()))
            })
            .collect();
        Self::checked(spine, mats, MetricSpec::schottky(width))
    }

    /// Dispatches on the metric data: Schottky if requested, Fenchel-Nielsen
    /// otherwise.
    pub fn from_spec(spine: &RibbonSpine, spec: &MetricSpec) -> Result<Self> {
        match spec.schottky {
            Some(w) => Self::schottky(spine, w),
            None => Self::from_fenchel_nielsen(spine, spec),
        }
    }

    /// Raw representation; only the sanity sample is checked.
    pub fn from_matrices(spine: &RibbonSpine, mats: Vec<Mat2>) -> Result<Self> {
        if mats.len() != spine.rank() {
            return Err(Error::WrongDimension {
                got: mats.len(),
                expected: spine.rank(),
            });
        }
        Self::checked(spine, mats, MetricSpec::default())
    }

    /// The default metric used by the CLI and experiments when no metric
    /// file is given: the symmetric one-holed torus with boundary length 2,
    /// the pants with all boundary lengths 2, Schottky otherwise.
    pub fn default_for(spine: &RibbonSpine) -> Result<Self> {
        let sig = spine.sig();
        match (sig.genus, sig.n_boundary) {
            (1, 1) => Self::from_fenchel_nielsen(spine, &symmetric_torus_spec(2.0)),
            (0, 3) => Self::from_fenchel_nielsen(
                spine,
                &MetricSpec {
                    pants: vec![vec!["bndry(1)".into(), "bndry(2)".into(), "bndry(3)".into()]],
                    boundary_lengths: vec![2.0, 2.0, 2.0],
                    ..Default::default()
                },
            ),
            _ => Self::schottky(spine, 0.5),
        }
    }

    fn checked(spine: &RibbonSpine, gens: Vec<Mat2>, spec: MetricSpec) -> Result<Self> {
        for (i, m) in gens.iter().enumerate() {
            if (m.det() - 1.0).abs() > 1e-8 {
                return Err(Error::InconsistentPants(format!(
                    "generator {i} has determinant {}",
                    m.det()
                )));
            }
        }
        let h = HyperbolicStructure {
            spine: spine.clone(),
            gens,
            spec,
        };
        for (j, w) in spine.boundary_words().iter().enumerate() {
            if let Some(&want) = h.spec.boundary_lengths.get(j) {
                let got = h.trace(w).abs();
                let expect = 2.0 * (want / 2.0).cosh();
                if (got - expect).abs() > TRACE_TOL * expect.max(1.0) {
                    return Err(Error::InconsistentPants(format!(
                        "boundary {} has trace {got}, expected {expect}",
                        j + 1
                    )));
                }
            }
        }
        for len in 1..=3 {
            for w in word::cyclically_reduced_words(spine.rank(), len) {
                let t = h.trace(&w).abs();
                if t <= 2.0 + 1e-12 {
                    return Err(Error::InconsistentPants(format!(
                        "word {} has non-hyperbolic trace {t}",
                        word::format_word(&w)
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn spine(&self) -> &RibbonSpine {
        &self.spine
    }

    pub fn spec(&self) -> &MetricSpec {
        &self.spec
    }

    pub fn generator(&self, l: Letter) -> Mat2 {
        let m = self.gens[l.generator()];
        if l.is_inverse() {
            m.inv()
        } else {
            m
        }
    }

    pub fn matrix(&self, w: &[Letter]) -> Mat2 {
        w.iter().fold(Mat2::IDENTITY, |acc, &l| acc * self.generator(l))
    }

    pub fn trace(&self, w: &[Letter]) -> f64 {
        self.matrix(w).trace()
    }

    pub fn word_length(&self, w: &[Letter]) -> Result<f64> {
        let r = word::cyclic_reduce(w);
        if r.is_empty() {
            return Err(Error::TrivialWord(word::format_word(w)));
        }
        Ok(length_from_trace(self.trace(&r)))
    }

    pub fn class_length(&self, c: &CurveClass) -> f64 {
        length_from_trace(self.trace(c.word()))
    }

    /// `sum w_i l(gamma_i)`.
    pub fn current_length(&self, c: &RationalCurrent) -> f64 {
        c.iter()
            .map(|(k, w)| *w.numer() as f64 / *w.denom() as f64 * self.class_length(k))
            .sum()
    }

    pub fn boundary_lengths(&self) -> Vec<f64> {
        self.spine
            .boundary_classes()
            .iter()
            .map(|c| self.class_length(c))
            .collect()
    }

    /// Axis endpoints `(attracting, repelling)` of the element `w`.
    pub fn axis(&self, w: &[Letter]) -> Option<([f64; 2], [f64; 2])> {
        self.matrix(w).fixed_points()
    }

    /// Length of the orthogonal arc between the boundary lifts through the
    /// corners `(l1, succ l1)` and `(l2, succ l2)` at the base vertex.
    pub fn corner_arc_length(&self, l1: Letter, l2: Letter) -> f64 {
        let p = self
            .axis(&self.spine.face_word_from(l1))
            .expect("boundary is hyperbolic");
        let q = self
            .axis(&self.spine.face_word_from(l2))
            .expect("boundary is hyperbolic");
        axis_distance(p, q)
    }

    /// Shortest length among classes of word length at most `max_len`,
    /// checked against `s`.
    pub fn check_systole(&self, s: f64, max_len: usize) -> Result<f64> {
        let mut best = f64::INFINITY;
        for len in 1..=max_len {
            for w in word::cyclically_reduced_words(self.spine.rank(), len) {
                best = best.min(length_from_trace(self.trace(&w)));
            }
        }
        if best < s {
            return Err(Error::Systole {
                found: best,
                required: s,
            });
        }
        Ok(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonEstimate {
    /// Largest of `l_h / l_P` and `l_P / l_h` over the sample.
    pub k: f64,
    pub sample_size: usize,
}

/// Empirical comparison constant between hyperbolic length and the arc
/// length `l_P` on a sample of nonzero integral simple multi-curves.
pub fn comparison_constant_estimate(
    h: &HyperbolicStructure,
    arcs: &ArcSystem,
    sample: &[RationalCurrent],
) -> Result<ComparisonEstimate> {
    if sample.is_empty() {
        return Err(Error::Empty("comparison sample"));
    }
    let mut k: f64 = 1.0;
    for mc in sample {
        if mc.is_zero() {
            return Err(Error::ZeroCurrent);
        }
        let lp = arcs.ell_p(&arcs.dt_coordinates(mc)?);
        let lh = h.current_length(mc);
        k = k.max(lh / lp).max(lp / lh);
    }
    Ok(ComparisonEstimate {
        k,
        sample_size: sample.len(),
    })
}

/// Every nonzero integral simple multi-curve with `l_P <= bound`.
pub fn census_sample(arcs: &ArcSystem, bound: f64) -> Result<Vec<RationalCurrent>> {
    let mut coords = Vec::new();
    arcs.enumerate(bound, None, |m, _, _| {
        if m.iter().any(|&x| x > 0) {
            coords.push(m.to_vec());
        }
        true
    })?;
    coords.iter().map(|m| arcs.reconstruct(m)).collect()
}

/// Fenchel-Nielsen data for the one-holed torus whose pants curve `a` and
/// its dual `b` have equal length at zero twist.
pub fn symmetric_torus_spec(boundary_length: f64) -> MetricSpec {
    let la = 2.0 * (boundary_length / 4.0).cosh().sqrt().asinh();
    MetricSpec {
        pants: vec![vec!["a".into(), "a".into(), "bndry(1)".into()]],
        lengths: vec![la],
        twists: vec![0.0],
        boundary_lengths: vec![boundary_length],
        schottky: None,
    }
}

fn check_pants(sig: SurfaceSig, spec: &MetricSpec) -> Result<()> {
    let bad = |s: String| Err(Error::InconsistentPants(s));
    let n_pants = (-sig.euler_characteristic()) as usize;
    let n_internal = (3 * sig.genus + sig.n_boundary) as usize - 3;
    if spec.pants.len() != n_pants {
        return bad(format!("{} pants given, signature needs {n_pants}", spec.pants.len()));
    }
    if spec.lengths.len() != n_internal || spec.twists.len() != n_internal {
        return bad(format!(
            "{} lengths and {} twists given, signature has {n_internal} pants curves",
            spec.lengths.len(),
            spec.twists.len()
        ));
    }
    if spec.boundary_lengths.len() != sig.n_boundary as usize {
        return bad(format!(
            "{} boundary lengths given, signature has {} boundary components",
            spec.boundary_lengths.len(),
            sig.n_boundary
        ));
    }
    let mut internal: Vec<(&str, usize)> = Vec::new();
    let mut boundary = vec![0usize; sig.n_boundary as usize];
    for p in &spec.pants {
        if p.len() != 3 {
            return bad(format!("pants {p:?} does not have three cuffs"));
        }
        for label in p {
            if let Some(j) = label.strip_prefix("bndry(").and_then(|r| r.strip_suffix(')')) {
                match j.parse::<usize>() {
                    Ok(j) if j >= 1 && j <= boundary.len() => boundary[j - 1] += 1,
                    _ => return bad(format!("bad boundary label {label:?}")),
                }
            } else {
                match internal.iter_mut().find(|(l, _)| *l == label.as_str()) {
                    Some((_, n)) => *n += 1,
                    None => internal.push((label, 1)),
                }
            }
        }
    }
    if boundary.iter().any(|&n| n != 1) {
        return bad("every boundary component must be a cuff of exactly one pants".into());
    }
    if internal.len() != n_internal || internal.iter().any(|&(_, n)| n != 2) {
        return bad("every pants curve must be a cuff exactly twice".into());
    }
    Ok(())
}

/// `A` translates along the imaginary axis by `la`; `B` is a twist by `tau`
/// composed with a translation by `d` along the perpendicular through `i`,
/// where `sinh(d/2) = cosh(lb/4) / sinh(la/2)` makes `tr [A, B] =
/// -2 cosh(lb/2)`.
fn one_holed_torus(la: f64, tau: f64, lb: f64) -> Vec<Mat2> {
    let a = Mat2::translation(la);
    let d = 2.0 * ((lb / 4.0).cosh() / (la / 2.0).sinh()).asinh();
    let (ch, sh) = ((d / 2.0).cosh(), (d / 2.0).sinh());
    let perp = Mat2::new(ch, sh, sh, ch);
    let b = Mat2::translation(tau) * perp;
    vec![a, b]
}

/// Pants group with `|tr A| = 2cosh(x/2)`, `|tr B| = 2cosh(y/2)` and
/// `tr AB = -2cosh(z/2)`.
fn pants_rep(l: [f64; 3]) -> Vec<Mat2> {
    let lam = (l[0] / 2.0).exp();
    let y = 2.0 * (l[1] / 2.0).cosh();
    let z = -2.0 * (l[2] / 2.0).cosh();
    let b11 = (z - y / lam) / (lam - 1.0 / lam);
    let b22 = y - b11;
    let a = Mat2::diag(lam);
    let b = Mat2::new(b11, 1.0, b11 * b22 - 1.0, b22);
    vec![a, b]
}

/// Conjugates by a reflection if needed so that the attracting fixed points
/// of the half-edge letters run counterclockwise in the spine's order.
fn adapt_to_spine(spine: &RibbonSpine, mats: Vec<Mat2>) -> Result<Vec<Mat2>> {
    let angles = |ms: &[Mat2]| -> Option<Vec<f64>> {
        spine
            .order()
            .iter()
            .map(|&l| {
                let m = if l.is_inverse() {
                    ms[l.generator()].inv()
                } else {
                    ms[l.generator()]
                };
                m.fixed_points().map(|(att, _)| circle_angle(att))
            })
            .collect()
    };
    let ccw = |a: &[f64]| -> bool {
        let n = a.len();
        let total: f64 = (0..n).map(|i| (a[(i + 1) % n] - a[i]).rem_euclid(2.0 * PI)).sum();
        (total - 2.0 * PI).abs() < 1e-6
    };
    let a = angles(&mats).ok_or_else(|| Error::InconsistentPants("non-hyperbolic generator".into()))?;
    if ccw(&a) {
        return Ok(mats);
    }
    let flipped: Vec<Mat2> = mats.iter().map(Mat2::flipped).collect();
    let b = angles(&flipped).expect("flip preserves traces");
    if ccw(&b) {
        Ok(flipped)
    } else {
        Err(Error::InconsistentPants(
            "representation does not realize the spine's cyclic order".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spine(g: u32, n: u32) -> RibbonSpine {
        RibbonSpine::standard(SurfaceSig::new(g, n).unwrap()).unwrap()
    }

    fn torus_spec(la: f64, tau: f64, lb: f64) -> MetricSpec {
        MetricSpec {
            pants: vec![vec!["a".into(), "a".into(), "bndry(1)".into()]],
            lengths: vec![la],
            twists: vec![tau],
            boundary_lengths: vec![lb],
            schottky: None,
        }
    }

    #[test]
    fn torus_boundary_length_and_twist_independence() {
        let s = spine(1, 1);
        for tau in [0.0, 0.3, -1.2] {
            let h = HyperbolicStructure::from_fenchel_nielsen(&s, &torus_spec(1.5, tau, 3.0)).unwrap();
            let t = h.trace(&s.parse("abAB").unwrap());
            assert!((t + 2.0 * 1.5f64.cosh()).abs() < 1e-9, "{t}");
            assert!((h.class_length(&s.boundary_classes()[0]) - 3.0).abs() < 1e-9);
            assert!((h.word_length(&s.parse("a").unwrap()).unwrap() - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_torus_has_equal_generators() {
        let s = spine(1, 1);
        let h = HyperbolicStructure::default_for(&s).unwrap();
        let la = h.word_length(&s.parse("a").unwrap()).unwrap();
        let lb = h.word_length(&s.parse("b").unwrap()).unwrap();
        assert!((la - lb).abs() < 1e-12);
    }

    #[test]
    fn pants_traces() {
        let s = spine(0, 3);
        let spec = MetricSpec {
            pants: vec![vec!["bndry(1)".into(), "bndry(2)".into(), "bndry(3)".into()]],
            boundary_lengths: vec![1.0, 2.0, 3.0],
            ..Default::default()
        };
        let h = HyperbolicStructure::from_fenchel_nielsen(&s, &spec).unwrap();
        let got = h.boundary_lengths();
        for (g, w) in got.iter().zip([1.0, 2.0, 3.0]) {
            assert!((g - w).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = spine(1, 1);
        assert!(matches!(
            HyperbolicStructure::from_fenchel_nielsen(&s, &torus_spec(0.0, 0.0, 1.0)),
            Err(Error::NonPositive { .. })
        ));
        let mut spec = torus_spec(1.0, 0.0, 1.0);
        spec.pants = vec![vec!["a".into(), "b".into(), "bndry(1)".into()]];
        assert!(matches!(
            HyperbolicStructure::from_fenchel_nielsen(&s, &spec),
            Err(Error::InconsistentPants(_))
        ));
    }

    #[test]
    fn conjugation_invariance_and_linearity() {
        let s = spine(1, 1);
        let h = HyperbolicStructure::default_for(&s).unwrap();
        let l1 = h.word_length(&s.parse("aab").unwrap()).unwrap();
        let l2 = h.word_length(&s.parse("baabB").unwrap()).unwrap();
        assert!((l1 - l2).abs() < 1e-9);
        let c = RationalCurrent::parse("2*a + 3*b", &s).unwrap();
        let la = h.word_length(&s.parse("a").unwrap()).unwrap();
        let lb = h.word_length(&s.parse("b").unwrap()).unwrap();
        assert!((h.current_length(&c) - 2.0 * la - 3.0 * lb).abs() < 1e-9);
    }

    #[test]
    fn collar_values() {
        let x = 2.0 * 1f64.asinh();
        assert!((collar_width(x).unwrap() - 1f64.asinh()).abs() < 1e-12);
        assert!(collar_width(1.0).unwrap() > collar_width(2.0).unwrap());
        let big = 40.0;
        assert!((collar_width(big).unwrap() * (big / 2.0).exp() - 2.0).abs() < 1e-6);
        assert!(collar_width(0.0).is_err());
    }

    #[test]
    fn orthoarc_symmetry_and_limit() {
        let l = orthoarc_length([2.0, 2.0, 2.0], 0, 1).unwrap();
        assert!((l - orthoarc_length([2.0, 2.0, 2.0], 1, 2).unwrap()).abs() < 1e-12);
        assert!(orthoarc_length([60.0, 60.0, 1.0], 0, 1).unwrap() < 1e-6);
        assert!(orthoarc_length([1.0, -1.0, 1.0], 0, 1).is_err());
    }

    #[test]
    fn orthoarc_matches_pants_representation() {
        // Distance between the axes of a and b in the pants group.
        let s = spine(0, 3);
        let h = HyperbolicStructure::default_for(&s).unwrap();
        let d = axis_distance(
            h.axis(&s.parse("a").unwrap()).unwrap(),
            h.axis(&s.parse("b").unwrap()).unwrap(),
        );
        let want = orthoarc_length([2.0, 2.0, 2.0], 0, 1).unwrap();
        assert!((d - want).abs() < 1e-9, "{d} vs {want}");
    }

    #[test]
    fn schottky_structures_are_hyperbolic() {
        for (g, n) in [(1, 1), (0, 3), (0, 4), (1, 2), (2, 1)] {
            let s = spine(g, n);
            let h = HyperbolicStructure::schottky(&s, 0.5).unwrap();
            assert!(h.check_systole(0.1, 3).is_ok());
        }
    }

    #[test]
    fn comparison_constant_is_finite_and_monotone() {
        let s = spine(1, 1);
        let h = HyperbolicStructure::default_for(&s).unwrap();
        let arcs = ArcSystem::from_structure(&h).unwrap();
        let bndry = vec![RationalCurrent::parse("bndry(1)", &s).unwrap()];
        let k0 = comparison_constant_estimate(&h, &arcs, &bndry).unwrap();
        assert!(k0.k.is_finite() && k0.k >= 1.0);
        let small = census_sample(&arcs, 10.0).unwrap();
        let large = census_sample(&arcs, 30.0).unwrap();
        let k1 = comparison_constant_estimate(&h, &arcs, &small).unwrap();
        let k2 = comparison_constant_estimate(&h, &arcs, &large).unwrap();
        assert!(k1.k <= k2.k && k2.k.is_finite());
        assert_eq!(k2.sample_size, large.len());
        assert!(comparison_constant_estimate(&h, &arcs, &[]).is_err());
    }

    #[test]
    fn fixed_point_orientation_follows_spine() {
        let s = spine(1, 1);
        let h = HyperbolicStructure::default_for(&s).unwrap();
        let a: Vec<f64> = s
            .order()
            .iter()
            .map(|&l| circle_angle(h.generator(l).fixed_points().unwrap().0))
            .collect();
        let total: f64 = (0..4).map(|i| (a[(i + 1) % 4] - a[i]).rem_euclid(2.0 * PI)).sum();
        assert!((total - 2.0 * PI).abs() < 1e-9);
    }
}
