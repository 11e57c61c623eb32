//! Geometric intersection numbers from the cyclic order on the ends of the
//! planar Cayley tree.
//!
//! The universal cover of the ribbon spine is the Cayley tree of the free
//! group, embedded in the plane with the spine's half-edge order at every
//! vertex. Ends of the tree are infinite reduced words. Two axes cross
//! transversely exactly when their endpoint pairs interleave in the cyclic
//! order, and every crossing pair of axes shares a vertex of the tree.
//!
//! For cyclic words `u` (length `m`) and `v` (length `l`) every pair of lifts
//! sharing a vertex is seen from exactly one alignment `(i, j)`: the one that
//! puts the first common vertex (in the orientation of the lift of `u`) at
//! the origin. Counting interleaved alignments over the `m * l` shift pairs
//! gives the number of crossing pairs of lifts modulo the diagonal action.

use crate::current::{RationalCurrent, Weight};
use crate::error::{Error, Result};
use crate::surface::{CurveClass, RibbonSpine};
use crate::word::{self, Letter, Word};

/// Anything that reads as an infinite reduced word from the origin.
pub trait Ray {
    fn letter(&self, t: usize) -> Letter;
    /// Preperiod plus period length; two rays agreeing on the sum of their
    /// horizons agree forever.
    fn horizon(&self) -> usize;
}

/// An eventually periodic end of the tree, `prefix * period^inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRay {
    prefix: Word,
    period: Word,
}

impl BoundaryRay {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        let fail = |why: &str| Error::MalformedWord {
            word: format!("{}({})^inf", word::format_word(&prefix), word::format_word(&period)),
            reason: why.to_string(),
        };
        if period.is_empty() {
            return Err(fail("empty period"));
        }
        if !word::is_cyclically_reduced(&period) {
            return Err(fail("period is not cyclically reduced"));
        }
        if word::reduce(&prefix).len() != prefix.len() {
            return Err(fail("prefix is not reduced"));
        }
        if let Some(&last) = prefix.last() {
            if last == period[0].inverse() {
                return Err(fail("prefix cancels against the period"));
            }
        }
        Ok(BoundaryRay { prefix, period })
    }

    /// `w^inf`, the attracting end of the axis of `w` through the origin.
    pub fn periodic(w: &[Letter]) -> Result<Self> {
        Self::new(Vec::new(), w.to_vec())
    }
}

impl Ray for BoundaryRay {
    fn letter(&self, t: usize) -> Letter {
        if t < self.prefix.len() {
            self.prefix[t]
        } else {
            self.period[(t - self.prefix.len()) % self.period.len()]
        }
    }

    fn horizon(&self) -> usize {
        self.prefix.len() + self.period.len()
    }
}

/// Allocation-free periodic ray: the forward or backward end of the axis of
/// the rotation of `w` starting at `offset`.
#[derive(Clone, Copy)]
struct AxisRay<'a> {
    w: &'a [Letter],
    offset: usize,
    forward: bool,
}

impl Ray for AxisRay<'_> {
    #[inline]
    fn letter(&self, t: usize) -> Letter {
        let m = self.w.len();
        if self.forward {
            self.w[(self.offset + t) % m]
        } else {
            self.w[(self.offset + m - 1 + m * (t / m + 1) - t) % m].inverse()
        }
    }

    fn horizon(&self) -> usize {
        self.w.len()
    }
}

/// Length of the common prefix, or `None` if the rays are equal.
fn common_prefix<A: Ray + ?Sized, B: Ray + ?Sized>(x: &A, y: &B) -> Option<usize> {
    let bound = x.horizon() + y.horizon();
    (0..bound).find(|&t| x.letter(t) != y.letter(t))
}

fn orientation(spine: &RibbonSpine, d: [Letter; 3]) -> i8 {
    let n = spine.order().len();
    let p0 = spine.position(d[0]);
    let a = (spine.position(d[1]) + n - p0) % n;
    let b = (spine.position(d[2]) + n - p0) % n;
    debug_assert!(a != 0 && b != 0 && a != b);
    if a < b {
        1
    } else {
        -1
    }
}

fn cyclic_order_dyn(spine: &RibbonSpine, r: [&dyn Ray; 3]) -> Result<i8> {
    let d01 = common_prefix(r[0], r[1]).ok_or(Error::EqualRays)?;
    let d12 = common_prefix(r[1], r[2]).ok_or(Error::EqualRays)?;
    let d02 = common_prefix(r[0], r[2]).ok_or(Error::EqualRays)?;
    let depth = d01.max(d12).max(d02);
    // The median of the three ends sits at `depth` along the deepest pair.
    let reach = [d01.max(d02), d01.max(d12), d12.max(d02)];
    let anchor = if d01 == depth { 0 } else { 1 };
    let mut dirs = [r[0].letter(0); 3];
    for i in 0..3 {
        dirs[i] = if reach[i] == depth {
            r[i].letter(depth)
        } else {
            r[anchor].letter(depth - 1).inverse()
        };
    }
    Ok(orientation(spine, dirs))
}

/// `+1` if a path from `x` to `y` in the positive direction meets `z`,
/// `-1` otherwise. All three rays start at the origin of the tree.
pub fn cyclic_order(spine: &RibbonSpine, x: &BoundaryRay, y: &BoundaryRay, z: &BoundaryRay) -> Result<i8> {
    cyclic_order_dyn(spine, [x, y, z])
}

/// Whether the axis through the origin with ends `(a_minus, a_plus)`
/// interleaves with the one with ends `(b_minus, b_plus)`.
fn linked(spine: &RibbonSpine, am: &dyn Ray, ap: &dyn Ray, bm: &dyn Ray, bp: &dyn Ray) -> bool {
    let s1 = cyclic_order_dyn(spine, [am, ap, bm]).expect("distinct axes have distinct ends");
    let s2 = cyclic_order_dyn(spine, [am, ap, bp]).expect("distinct axes have distinct ends");
    s1 != s2
}

/// Number of interleaved pairs `(lift of u, lift of v)` modulo the diagonal
/// action, for cyclically reduced `u`, `v`.
fn linked_alignments(spine: &RibbonSpine, u: &[Letter], v: &[Letter]) -> u64 {
    let (m, l) = (u.len(), v.len());
    let mut count = 0;
    for i in 0..m {
        let back_u = u[(i + m - 1) % m].inverse();
        let up = AxisRay {
            w: u,
            offset: i,
            forward: true,
        };
        let um = AxisRay {
            w: u,
            offset: i,
            forward: false,
        };
        for j in 0..l {
            let fwd_v = v[j];
            let back_v = v[(j + l - 1) % l].inverse();
            // The origin must be the first shared vertex along the lift of u.
            if back_u == fwd_v || back_u == back_v {
                continue;
            }
            let vp = AxisRay {
                w: v,
                offset: j,
                forward: true,
            };
            let vm = AxisRay {
                w: v,
                offset: j,
                forward: false,
            };
            if linked(spine, &um, &up, &vm, &vp) {
                count += 1;
            }
        }
    }
    count
}

/// Geometric intersection number. For `c1 == c2` this is the pairing of the
/// class with itself, which counts ordered pairs of crossing lifts and so
/// equals twice the number of self-intersection points.
pub fn intersection_number(spine: &RibbonSpine, c1: &CurveClass, c2: &CurveClass) -> u64 {
    linked_alignments(spine, c1.word(), c2.word())
}

/// Number of transverse double points of the geodesic representative.
pub fn self_intersection(spine: &RibbonSpine, c: &CurveClass) -> u64 {
    let ordered = linked_alignments(spine, c.word(), c.word());
    debug_assert!(ordered.is_multiple_of(2));
    ordered / 2
}

pub fn is_simple(spine: &RibbonSpine, c: &CurveClass) -> bool {
    self_intersection(spine, c) == 0
}

/// Bilinear extension of the intersection number to rational currents.
pub fn current_pairing(spine: &RibbonSpine, m1: &RationalCurrent, m2: &RationalCurrent) -> Weight {
    let mut total = Weight::from_integer(0);
    for (c1, w1) in m1.iter() {
        for (c2, w2) in m2.iter() {
            let i = intersection_number(spine, c1, c2);
            if i != 0 {
                total += *w1 * *w2 * Weight::from_integer(i as i64);
            }
        }
    }
    total
}

/// Occurrences of `edge` or its inverse in the cyclic word: the number of
/// crossings with the arc dual to that spine edge.
pub fn spine_edge_crossings(spine: &RibbonSpine, c: &CurveClass, edge: usize) -> Result<u64> {
    if edge >= spine.rank() {
        return Err(Error::WrongDimension {
            got: edge,
            expected: spine.rank(),
        });
    }
    Ok(c.word().iter().filter(|l| l.generator() == edge).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;

    fn spine(g: u32, n: u32) -> RibbonSpine {
        RibbonSpine::standard(SurfaceSig::new(g, n).unwrap()).unwrap()
    }

    fn ray(s: &RibbonSpine, w: &str) -> BoundaryRay {
        BoundaryRay::periodic(&s.parse(w).unwrap()).unwrap()
    }

    fn iota(s: &RibbonSpine, a: &str, b: &str) -> u64 {
        intersection_number(s, &s.class(a).unwrap().0, &s.class(b).unwrap().0)
    }

    fn selfint(s: &RibbonSpine, a: &str) -> u64 {
        self_intersection(s, &s.class(a).unwrap().0)
    }

    #[test]
    fn cyclic_order_at_the_origin() {
        let s = spine(1, 1);
        let (x, y, z) = (ray(&s, "a"), ray(&s, "b"), ray(&s, "A"));
        assert_eq!(cyclic_order(&s, &x, &y, &z).unwrap(), 1);
        assert_eq!(cyclic_order(&s, &y, &x, &z).unwrap(), -1);
        assert_eq!(cyclic_order(&s, &y, &z, &x).unwrap(), 1);
        assert_eq!(cyclic_order(&s, &x, &x, &z), Err(Error::EqualRays));
    }

    #[test]
    fn cyclic_order_past_the_origin() {
        let s = spine(1, 1);
        // Both of the first two go through vertex `a`; the third stays behind.
        let x = BoundaryRay::new(s.parse("a").unwrap(), s.parse("b").unwrap()).unwrap();
        let y = BoundaryRay::new(s.parse("a").unwrap(), s.parse("a").unwrap()).unwrap();
        let z = ray(&s, "b");
        let o = cyclic_order(&s, &x, &y, &z).unwrap();
        assert_eq!(o, -cyclic_order(&s, &y, &x, &z).unwrap());
        assert_eq!(o, cyclic_order(&s, &z, &x, &y).unwrap());
    }

    #[test]
    fn malformed_rays_rejected() {
        let s = spine(1, 1);
        assert!(BoundaryRay::new(vec![], vec![]).is_err());
        assert!(BoundaryRay::new(s.parse("A").unwrap(), s.parse("ab").unwrap()).is_err());
        assert!(BoundaryRay::new(vec![], s.parse("abA").unwrap()).is_err());
    }

    #[test]
    fn axis_ray_backward_letters() {
        let w = spine(1, 1).parse("abA").unwrap();
        let r = AxisRay {
            w: &w,
            offset: 1,
            forward: false,
        };
        let rot = word::rotate(&w, 1);
        let inv = word::inverse(&rot);
        for t in 0..9 {
            assert_eq!(r.letter(t), inv[t % 3]);
        }
    }

    #[test]
    fn one_holed_torus_examples() {
        let s = spine(1, 1);
        assert_eq!(iota(&s, "a", "b"), 1);
        assert_eq!(iota(&s, "a", "abAB"), 0);
        assert_eq!(iota(&s, "ab", "aB"), 2);
        assert_eq!(selfint(&s, "a"), 0);
        assert_eq!(selfint(&s, "aab"), 0);
        assert_eq!(selfint(&s, "abaB"), 1);
        assert_eq!(selfint(&s, "abAB"), 0);
    }

    #[test]
    fn pairing_examples() {
        let s = spine(1, 1);
        let m1 = RationalCurrent::parse("2*a", &s).unwrap();
        let m2 = RationalCurrent::parse("3*b", &s).unwrap();
        assert_eq!(current_pairing(&s, &m1, &m2), Weight::from_integer(6));
        assert_eq!(
            current_pairing(&s, &m1, &RationalCurrent::zero()),
            Weight::from_integer(0)
        );
        let g = RationalCurrent::parse("2*a + bndry(1)", &s).unwrap();
        assert_eq!(current_pairing(&s, &g, &g), Weight::from_integer(0));
        let n = RationalCurrent::parse("abaB", &s).unwrap();
        assert_eq!(current_pairing(&s, &n, &n), Weight::from_integer(2));
    }

    #[test]
    fn edge_crossings() {
        let s = spine(1, 1);
        let c = |w: &str| s.class(w).unwrap().0;
        assert_eq!(spine_edge_crossings(&s, &c("ab"), 0).unwrap(), 1);
        assert_eq!(spine_edge_crossings(&s, &c("aab"), 0).unwrap(), 2);
        for e in 0..2 {
            assert_eq!(spine_edge_crossings(&s, &c("abAB"), e).unwrap(), 2);
        }
        assert!(spine_edge_crossings(&s, &c("ab"), 2).is_err());
    }

    #[test]
    fn pants_curves_are_disjoint_or_figure_eight() {
        let s = spine(0, 3);
        assert_eq!(iota(&s, "a", "b"), 0);
        assert_eq!(selfint(&s, "ab"), 0);
        assert_eq!(selfint(&s, "aB"), 1);
        assert_eq!(iota(&s, "a", "aB"), 0);
    }
}
