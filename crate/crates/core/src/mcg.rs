//! Mapping classes as automorphisms of the free group on the spine
//! generators, their action on classes and currents, and orbit searches.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::current::{RationalCurrent, Weight};
use crate::error::{Error, Result};
use crate::hyperbolic::HyperbolicStructure;
use crate::intersection::current_pairing;
use crate::surface::{CurveClass, RibbonSpine};
use crate::word::{self, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingClass {
    name: String,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl MappingClass {
    pub fn identity(rank: usize) -> Self {
        let gens: Vec<Word> = (0..rank).map(|g| vec![Letter::new(g, false)]).collect();
        MappingClass {
            name: "id".into(),
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    /// Builds a mapping class from generator images and the images of its
    /// inverse, and checks that it is an automorphism fixing every boundary
    /// component up to conjugacy.
    pub fn new(spine: &RibbonSpine, name: &str, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self> {
        let phi = MappingClass {
            name: name.to_string(),
            images: images.iter().map(|w| word::reduce(w)).collect(),
            inverse_images: inverse_images.iter().map(|w| word::reduce(w)).collect(),
        };
        phi.validate(spine)?;
        Ok(phi)
    }

    /// Dehn twist along the embedded loop of the generator `x`. With the
    /// base point on the side of the loop counterclockwise from `X` to
    /// `x`, every generator leaving or returning through the other side
    /// picks up a copy of `x`.
    pub fn twist(spine: &RibbonSpine, generator: usize, power: i32) -> Result<Self> {
        if generator >= spine.rank() {
            return Err(Error::WrongDimension {
                got: generator,
                expected: spine.rank(),
            });
        }
        let x = Letter::new(generator, false);
        let side = |eps: i32| -> Vec<Word> {
            let n = spine.order().len();
            let start = spine.position(x.inverse());
            let end = spine.position(x);
            let in_sector = |l: Letter| {
                let p = (spine.position(l) + n - start) % n;
                p > 0 && p < (end + n - start) % n
            };
            let ins = if eps > 0 { x } else { x.inverse() };
            (0..spine.rank())
                .map(|g| {
                    let y = Letter::new(g, false);
                    let mut w = Vec::new();
                    if g != generator && in_sector(y) {
                        w.push(ins);
                    }
                    w.push(y);
                    if g != generator && in_sector(y.inverse()) {
                        w.push(ins.inverse());
                    }
                    w
                })
                .collect()
        };
        let name = format!("T{}", x.to_char());
        let (fwd, back) = (side(-1), side(1));
        let base = MappingClass::new(spine, &name, fwd, back)?;
        Ok(base.pow(power))
    }

    /// Conjugates every generator in `gens` by `by`, fixing the others.
    /// This is the twist along the curve `by` when `by` is a word in `gens`
    /// appearing as a consecutive block of a boundary word whose remaining
    /// letters avoid `gens`.
    pub fn partial_conjugation(spine: &RibbonSpine, name: &str, gens: &[usize], by: &str) -> Result<Self> {
        let d = spine.parse(by)?;
        let di = word::inverse(&d);
        let conj = |u: &Word, v: &Word| -> Vec<Word> {
            (0..spine.rank())
                .map(|g| {
                    let y = vec![Letter::new(g, false)];
                    if gens.contains(&g) {
                        word::concat(&[u, &y, v])
                    } else {
                        y
                    }
                })
                .collect()
        };
        MappingClass::new(spine, name, conj(&d, &di), conj(&di, &d))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    fn image_of(images: &[Word], w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for &l in w {
            let im = &images[l.generator()];
            if l.is_inverse() {
                out.extend(word::inverse(im));
            } else {
                out.extend_from_slice(im);
            }
        }
        word::reduce(&out)
    }

    pub fn apply_word(&self, w: &[Letter]) -> Word {
        Self::image_of(&self.images, w)
    }

    pub fn apply_inverse_word(&self, w: &[Letter]) -> Word {
        Self::image_of(&self.inverse_images, w)
    }

    pub fn apply_class(&self, c: &CurveClass) -> CurveClass {
        let (img, exp) =
            CurveClass::from_word(&self.apply_word(c.word())).expect("automorphisms preserve nontriviality");
        debug_assert_eq!(exp, 1, "automorphisms preserve primitivity");
        img
    }

    pub fn apply_current(&self, c: &RationalCurrent) -> RationalCurrent {
        let mut out = RationalCurrent::zero();
        for (k, w) in c.iter() {
            out.add(self.apply_class(k), *w);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        MappingClass {
            name: format!("({})^-1", self.name),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MappingClass) -> Self {
        MappingClass {
            name: format!("{}*{}", self.name, other.name),
            images: other.images.iter().map(|w| self.apply_word(w)).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| other.apply_inverse_word(w))
                .collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = MappingClass::identity(self.rank());
        for _ in 0..n.unsigned_abs() {
            out = base.compose(&out);
        }
        out.name = match n {
            1 => self.name.clone(),
            _ => format!("{}^{n}", self.name),
        };
        out
    }

    /// Checks the automorphism and boundary conditions.
    pub fn validate(&self, spine: &RibbonSpine) -> Result<()> {
        let k = spine.rank();
        if self.images.len() != k || self.inverse_images.len() != k {
            return Err(Error::WrongDimension {
                got: self.images.len(),
                expected: k,
            });
        }
        for g in 0..k {
            let x = vec![Letter::new(g, false)];
            if self.apply_inverse_word(&self.apply_word(&x)) != x || self.apply_word(&self.apply_inverse_word(&x)) != x
            {
                return Err(Error::NotAutomorphism(format!(
                    "{}: inverse fails on generator {}",
                    self.name, x[0]
                )));
            }
        }
        for b in spine.boundary_words() {
            let img = word::cyclic_reduce(&self.apply_word(b));
            let conj = img.len() == b.len() && (0..b.len()).any(|i| word::rotate(&img, i) == *b);
            if !conj {
                return Err(Error::NotAutomorphism(format!(
                    "{}: boundary {} goes to {}",
                    self.name,
                    word::format_word(b),
                    word::format_word(&img)
                )));
            }
        }
        Ok(())
    }
}

/// The documented generating families. For (1,1) and (0,4) these generate
/// the pure mapping class group; for (1,2) and (2,1) they are twists along
/// the non-peripheral generator loops plus the twist along the curve
/// cutting off the first handle, which is not a full generating set. On the
/// pair of pants the twists along the generator loops are boundary twists
/// and act trivially on classes.
pub fn twist_generators(spine: &RibbonSpine) -> Result<Vec<MappingClass>> {
    let sig = spine.sig();
    let standard = RibbonSpine::standard(sig)?;
    if spine.order() != standard.order() {
        return Err(Error::UnsupportedSignature {
            genus: sig.genus,
            boundary: sig.n_boundary,
            what: "twist table (non-standard half-edge order)",
        });
    }
    let tw = |g: usize| MappingClass::twist(spine, g, 1);
    match (sig.genus, sig.n_boundary) {
        (1, 1) | (0, 3) => Ok(vec![tw(0)?, tw(1)?]),
        (0, 4) => Ok(vec![
            MappingClass::partial_conjugation(spine, "Pab", &[0, 1], "BA")?,
            MappingClass::partial_conjugation(spine, "Pbc", &[1, 2], "CB")?,
        ]),
        (1, 2) => Ok(vec![
            tw(0)?,
            tw(1)?,
            MappingClass::partial_conjugation(spine, "Pab", &[0, 1], "BabA")?,
        ]),
        (2, 1) => Ok(vec![
            tw(0)?,
            tw(1)?,
            tw(2)?,
            tw(3)?,
            MappingClass::partial_conjugation(spine, "Pab", &[0, 1], "BabA")?,
        ]),
        _ => Err(Error::UnsupportedSignature {
            genus: sig.genus,
            boundary: sig.n_boundary,
            what: "twist table",
        }),
    }
}

/// Parses a product like `"Ta*Tb^-1*Pab^2"` over the table generators.
/// The rightmost factor acts first.
pub fn parse_mapping_class(spine: &RibbonSpine, text: &str) -> Result<MappingClass> {
    let table = twist_generators(spine)?;
    let mut out = MappingClass::identity(spine.rank());
    let bad = |why: String| Error::MalformedWord {
        word: text.to_string(),
        reason: why,
    };
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| bad(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        if name == "id" {
            continue;
        }
        let g = table
            .iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| bad(format!("unknown generator {name:?}")))?;
        out = out.compose(&g.pow(pow));
    }
    out.name = text.trim().to_string();
    Ok(out)
}

#[derive(Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap and we pop smallest first.
        other.0.total_cmp(&self.0)
    }
}

/// An orbit element found by [`bottleneck_search`].
#[derive(Debug, Clone)]
pub struct OrbitNode {
    pub current: RationalCurrent,
    pub value: f64,
    /// Smallest possible maximum of `value` along a generator path from the
    /// start.
    pub bottleneck: f64,
    pub depth: usize,
}

/// Explores the orbit through generators and their inverses, visiting
/// every element reachable along a path on which `value` stays at most
/// `cap`. Elements come out with their minimax path value.
pub fn bottleneck_search<F>(
    start: &RationalCurrent,
    gens: &[MappingClass],
    value: F,
    cap: f64,
    budget: usize,
) -> Result<Vec<OrbitNode>>
where
    F: Fn(&RationalCurrent) -> f64,
{
    let moves: Vec<MappingClass> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut best: HashMap<RationalCurrent, (f64, f64, usize)> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let v0 = value(start);
    if v0 > cap {
        return Ok(Vec::new());
    }
    best.insert(start.clone(), (v0, v0, 0));
    heap.push((Key(v0), 0usize, start.clone()));
    let mut done: HashMap<RationalCurrent, ()> = HashMap::new();
    while let Some((Key(b), depth, cur)) = heap.pop() {
        if done.contains_key(&cur) {
            continue;
        }
        done.insert(cur.clone(), ());
        if done.len() > budget {
            return Err(Error::Budget(budget));
        }
        for g in &moves {
            let next = g.apply_current(&cur);
            if done.contains_key(&next) {
                continue;
            }
            let v = match best.get(&next) {
                Some(&(v, _, _)) => v,
                None => value(&next),
            };
            let nb = b.max(v);
            if nb > cap {
                best.entry(next).or_insert((v, f64::INFINITY, usize::MAX));
                continue;
            }
            let entry = best.entry(next.clone()).or_insert((v, f64::INFINITY, usize::MAX));
            if nb < entry.1 {
                *entry = (v, nb, depth + 1);
                heap.push((Key(nb), depth + 1, next));
            }
        }
    }
    let mut out: Vec<OrbitNode> = done
        .into_keys()
        .map(|c| {
            let (v, b, d) = best[&c];
            OrbitNode {
                current: c,
                value: v,
                bottleneck: b,
                depth: d,
            }
        })
        .collect();
    out.sort_by(|x, y| {
        x.value
            .total_cmp(&y.value)
            .then_with(|| x.current.to_string().cmp(&y.current.to_string()))
    });
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct OrbitBall {
    pub bound: f64,
    /// Orbit elements with `l_h <= bound`, sorted by length.
    pub elements: Vec<OrbitNode>,
    /// Slack at which the ball was certified, or the largest slack tried.
    pub slack: f64,
    pub stable: bool,
}

/// Orbit elements of `c` with `l_h <= bound`, found by searching through
/// elements of length at most `slack * bound`. The slack is raised in steps
/// of 0.5 from `slack` up to `max_slack` until the ball is unchanged at the
/// next two steps.
pub fn orbit_ball(
    h: &HyperbolicStructure,
    gens: &[MappingClass],
    c: &RationalCurrent,
    bound: f64,
    slack: f64,
    max_slack: f64,
    budget: usize,
) -> Result<OrbitBall> {
    if !(bound > 0.0) {
        return Err(Error::NonPositive {
            name: "L",
            value: bound,
        });
    }
    if !(slack >= 1.0) {
        return Err(Error::NonPositive {
            name: "slack - 1",
            value: slack - 1.0,
        });
    }
    let max_slack = max_slack.max(slack + 1.0);
    let nodes = bottleneck_search(c, gens, |x| h.current_length(x), max_slack * bound, budget)?;
    let ball_at = |s: f64| -> Vec<&OrbitNode> {
        nodes
            .iter()
            .filter(|n| n.value <= bound && n.bottleneck <= s * bound)
            .collect()
    };
    let mut s = slack;
    loop {
        let size = |t: f64| ball_at(t).len();
        if s + 1.0 > max_slack + 1e-12 {
            let elements = ball_at(max_slack).into_iter().cloned().collect();
            return Ok(OrbitBall {
                bound,
                elements,
                slack: max_slack,
                stable: false,
            });
        }
        // The balls are nested in the slack, so equal sizes mean equal sets.
        if size(s) == size(s + 0.5) && size(s) == size(s + 1.0) {
            let elements = ball_at(s).into_iter().cloned().collect();
            return Ok(OrbitBall {
                bound,
                elements,
                slack: s,
                stable: true,
            });
        }
        s += 0.5;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceProfile {
    /// `shells[l]` counts orbit elements `x` with `i(x, b') in [l, l + 1)`.
    pub shells: Vec<u64>,
    pub slack: f64,
    pub stable: bool,
    pub explored: usize,
}

/// Shell counts of the intersection with a binding current over the orbit
/// of `c`, up to `max_shell`.
pub fn orbit_divergence_profile(
    spine: &RibbonSpine,
    gens: &[MappingClass],
    c: &RationalCurrent,
    b_prime: &RationalCurrent,
    max_shell: usize,
    slack: f64,
    budget: usize,
) -> Result<DivergenceProfile> {
    let to_f = |w: Weight| *w.numer() as f64 / *w.denom() as f64;
    let value = |x: &RationalCurrent| to_f(current_pairing(spine, x, b_prime));
    let top = max_shell as f64;
    let nodes = bottleneck_search(c, gens, value, (slack + 1.0) * top.max(1.0), budget)?;
    let shells_at = |s: f64| -> Vec<u64> {
        let mut shells = vec![0u64; max_shell];
        for n in &nodes {
            if n.value < top && n.bottleneck <= s * top.max(1.0) {
                shells[n.value.floor() as usize] += 1;
            }
        }
        shells
    };
    let a = shells_at(slack);
    let stable = a == shells_at(slack + 0.5) && a == shells_at(slack + 1.0);
    Ok(DivergenceProfile {
        shells: a,
        slack,
        stable,
        explored: nodes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{intersection_number, self_intersection};
    use crate::surface::SurfaceSig;

    fn spine(g: u32, n: u32) -> RibbonSpine {
        RibbonSpine::standard(SurfaceSig::new(g, n).unwrap()).unwrap()
    }

    fn img(phi: &MappingClass, s: &RibbonSpine, w: &str) -> String {
        word::format_word(&phi.apply_word(&s.parse(w).unwrap()))
    }

    #[test]
    fn torus_twists() {
        let s = spine(1, 1);
        let ta = MappingClass::twist(&s, 0, 1).unwrap();
        let tb = MappingClass::twist(&s, 1, 1).unwrap();
        assert_eq!(img(&ta, &s, "a"), "a");
        assert_eq!(img(&ta, &s, "b"), "ba");
        assert_eq!(img(&tb, &s, "b"), "b");
        assert_eq!(img(&tb, &s, "a"), "Ba");
        let a = s.class("a").unwrap().0;
        let b = s.class("b").unwrap().0;
        assert_eq!(intersection_number(&s, &ta.apply_class(&a), &ta.apply_class(&b)), 1);
    }

    #[test]
    fn inverse_and_identity() {
        let s = spine(1, 1);
        let ta = MappingClass::twist(&s, 0, 1).unwrap();
        let id = ta.compose(&ta.inverse());
        for w in ["a", "b", "abAB", "aab"] {
            assert_eq!(img(&id, &s, w), w);
        }
        let c = RationalCurrent::parse("2*a + abaB", &s).unwrap();
        assert_eq!(MappingClass::identity(2).apply_current(&c), c);
        assert_eq!(ta.pow(3).apply_word(&s.parse("b").unwrap()), s.parse("baaa").unwrap());
    }

    #[test]
    fn table_generators_validate_and_preserve_invariants() {
        for (g, n) in [(1, 1), (0, 3), (0, 4), (1, 2), (2, 1)] {
            let s = spine(g, n);
            let gens = twist_generators(&s).unwrap();
            let sample: Vec<CurveClass> = (1..=4)
                .flat_map(|len| word::cyclically_reduced_words(s.rank(), len))
                .filter_map(|w| CurveClass::from_word(&w).ok().map(|(c, _)| c))
                .take(40)
                .collect();
            for phi in &gens {
                phi.validate(&s).unwrap();
                for b in s.boundary_classes() {
                    assert_eq!(&phi.apply_class(b), b);
                }
                for (i, x) in sample.iter().enumerate().step_by(3) {
                    let px = phi.apply_class(x);
                    assert_eq!(self_intersection(&s, x), self_intersection(&s, &px));
                    assert_eq!(s.is_peripheral(x), s.is_peripheral(&px));
                    for y in sample.iter().skip(i).step_by(5) {
                        assert_eq!(
                            intersection_number(&s, x, y),
                            intersection_number(&s, &px, &phi.apply_class(y))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pants_twists_are_trivial_on_classes() {
        let s = spine(0, 3);
        for phi in twist_generators(&s).unwrap() {
            for w in ["a", "b", "ab", "aB", "aabB", "aaBB"] {
                let c = s.class(w).unwrap().0;
                assert_eq!(phi.apply_class(&c), c);
            }
        }
    }

    #[test]
    fn broken_automorphism_rejected() {
        let s = spine(1, 1);
        // Swapping the generators reverses the boundary orientation.
        let swap = vec![s.parse("b").unwrap(), s.parse("a").unwrap()];
        assert!(matches!(
            MappingClass::new(&s, "swap", swap.clone(), swap),
            Err(Error::NotAutomorphism(_))
        ));
        let im = vec![s.parse("ab").unwrap(), s.parse("b").unwrap()];
        let wrong = vec![s.parse("ab").unwrap(), s.parse("b").unwrap()];
        assert!(matches!(
            MappingClass::new(&s, "bad", im, wrong),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(twist_generators(&spine(0, 5)).is_err());
    }

    #[test]
    fn parses_products() {
        let s = spine(1, 1);
        let phi = parse_mapping_class(&s, "Ta*Tb^-1").unwrap();
        let ta = MappingClass::twist(&s, 0, 1).unwrap();
        let tb = MappingClass::twist(&s, 1, 1).unwrap();
        assert_eq!(phi.images(), ta.compose(&tb.inverse()).images());
        assert!(parse_mapping_class(&s, "Tz").is_err());
    }

    #[test]
    fn orbit_ball_small_cases() {
        let s = spine(1, 1);
        let h = HyperbolicStructure::default_for(&s).unwrap();
        let gens = twist_generators(&s).unwrap();
        let a = RationalCurrent::parse("a", &s).unwrap();
        let la = h.current_length(&a);
        let ball = orbit_ball(&h, &gens, &a, la * 0.99, 2.0, 4.0, 100_000).unwrap();
        assert!(ball.elements.is_empty());
        let ball = orbit_ball(&h, &gens, &a, la * 1.01, 2.0, 4.0, 100_000).unwrap();
        assert!(ball.elements.iter().any(|n| n.current == a));
        let small = orbit_ball(&h, &gens, &a, 6.0, 2.0, 4.0, 100_000).unwrap();
        let large = orbit_ball(&h, &gens, &a, 9.0, 2.0, 4.0, 100_000).unwrap();
        assert!(small.stable && large.stable);
        assert!(small.elements.len() < large.elements.len());
        for n in &small.elements {
            assert!(large.elements.iter().any(|m| m.current == n.current));
        }
        assert!(matches!(
            orbit_ball(&h, &gens, &a, 30.0, 2.0, 4.0, 10),
            Err(Error::Budget(10))
        ));
    }
}
