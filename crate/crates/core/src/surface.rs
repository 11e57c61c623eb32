//! Topological types, the one-vertex ribbon spine of a surface with
//! boundary, and canonical curve classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{self, format_word, Letter, Word, MAX_GENERATORS};

/// Topological type of a compact oriented surface: genus and number of
/// boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    #[serde(rename = "boundary")]
    pub n_boundary: u32,
}

/// `N = 6g - 6 + 2n` (dimension of the Thurston measure) and
/// `N' = 6g - 6 + 3n` (dimension including boundary weights).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Complexity {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "Nprime")]
    pub n_prime: u32,
}

impl SurfaceSig {
    pub fn new(genus: u32, n_boundary: u32) -> Result<Self> {
        let sig = SurfaceSig { genus, n_boundary };
        if sig.euler_characteristic() >= 0 {
            return Err(Error::NonHyperbolic {
                genus,
                boundary: n_boundary,
            });
        }
        Ok(sig)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.n_boundary as i64
    }

    /// Rank of the free fundamental group, `2g + n - 1`.
    pub fn rank(&self) -> usize {
        (2 * self.genus + self.n_boundary) as usize - 1
    }

    pub fn complexity(&self) -> Result<Complexity> {
        complexity_constants(*self)
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.genus, self.n_boundary)
    }
}

pub fn complexity_constants(sig: SurfaceSig) -> Result<Complexity> {
    let chi = sig.euler_characteristic();
    if chi >= 0 {
        return Err(Error::NonHyperbolic {
            genus: sig.genus,
            boundary: sig.n_boundary,
        });
    }
    let n = sig.n_boundary as i64;
    Ok(Complexity {
        n: (-3 * chi - n) as u32,
        n_prime: (6 * sig.genus as i64 - 6 + 3 * n) as u32,
    })
}

/// Complexity of a possibly empty subsurface; the empty one has `N = 0`.
pub fn subsurface_n(sig: Option<SurfaceSig>) -> u32 {
    match sig {
        None => 0,
        Some(s) => (6 * s.genus as i64 - 6 + 2 * s.n_boundary as i64).max(0) as u32,
    }
}

/// One-vertex fatgraph presentation of a surface with boundary.
///
/// Half-edges are named by letters: `x` is where the loop `x` leaves the
/// vertex and `X` where it comes back. Boundary cycles are traced by the
/// rule "after arriving along `x`, leave along the half-edge preceding `X`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonSpine {
    sig: SurfaceSig,
    order: Vec<Letter>,
    position: Vec<usize>,
    boundary: Vec<Word>,
    boundary_canonical: Vec<CurveClass>,
}

impl RibbonSpine {
    /// Spine with the documented canonical half-edge order:
    /// `a b A B c d C D ...` for the handles followed by `x X` pairs for all
    /// but one boundary component.
    pub fn standard(sig: SurfaceSig) -> Result<Self> {
        let order = standard_order(sig)?;
        Self::with_order(sig, order)
    }

    pub fn with_order(sig: SurfaceSig, order: Vec<Letter>) -> Result<Self> {
        SurfaceSig::new(sig.genus, sig.n_boundary)?;
        if sig.n_boundary == 0 {
            return Err(Error::ClosedSurface);
        }
        let k = sig.rank();
        if k > MAX_GENERATORS {
            return Err(Error::InvalidHalfEdgeOrder(format!(
                "rank {k} exceeds the {MAX_GENERATORS}-letter alphabet"
            )));
        }
        if order.len() != 2 * k {
            return Err(Error::InvalidHalfEdgeOrder(format!(
                "expected {} half-edges, got {}",
                2 * k,
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; 2 * k];
        for (i, l) in order.iter().enumerate() {
            if l.generator() >= k || position[l.index()] != usize::MAX {
                return Err(Error::InvalidHalfEdgeOrder(format!(
                    "half-edge {l} repeated or out of range"
                )));
            }
            position[l.index()] = i;
        }
        let mut spine = RibbonSpine {
            sig,
            order,
            position,
            boundary: Vec::new(),
            boundary_canonical: Vec::new(),
        };
        let cycles = spine.trace_boundary();
        if cycles.len() != sig.n_boundary as usize {
            return Err(Error::InvalidHalfEdgeOrder(format!(
                "order traces {} boundary cycles, signature needs {}",
                cycles.len(),
                sig.n_boundary
            )));
        }
        spine.boundary_canonical = cycles
            .iter()
            .map(|w| CurveClass::from_word(w).map(|(c, _)| c))
            .collect::<Result<_>>()?;
        spine.boundary = cycles;
        Ok(spine)
    }

    pub fn from_labels(sig: SurfaceSig, labels: &[String]) -> Result<Self> {
        let order = labels
            .iter()
            .map(|s| {
                let mut cs = s.chars();
                match (cs.next().and_then(Letter::from_char), cs.next()) {
                    (Some(l), None) => Ok(l),
                    _ => Err(Error::InvalidHalfEdgeOrder(format!("bad label {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_order(sig, order)
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn rank(&self) -> usize {
        self.sig.rank()
    }

    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    /// Position of a half-edge in the cyclic order.
    pub fn position(&self, l: Letter) -> usize {
        self.position[l.index()]
    }

    pub fn succ(&self, l: Letter) -> Letter {
        self.order[(self.position(l) + 1) % self.order.len()]
    }

    pub fn pred(&self, l: Letter) -> Letter {
        let n = self.order.len();
        self.order[(self.position(l) + n - 1) % n]
    }

    /// Boundary words, one per boundary component, as traced from the
    /// fatgraph.
    pub fn boundary_words(&self) -> &[Word] {
        &self.boundary
    }

    pub fn boundary_classes(&self) -> &[CurveClass] {
        &self.boundary_canonical
    }

    /// The boundary cycle rotated so that it starts with half-edge `l`.
    pub fn face_word_from(&self, l: Letter) -> Word {
        let mut w = vec![l];
        let mut cur = self.pred(l.inverse());
        while cur != l {
            w.push(cur);
            cur = self.pred(cur.inverse());
        }
        w
    }

    fn trace_boundary(&self) -> Vec<Word> {
        let mut seen = vec![false; self.order.len()];
        let mut cycles = Vec::new();
        for &start in &self.order {
            if seen[start.index()] {
                continue;
            }
            let w = self.face_word_from(start);
            for l in &w {
                seen[l.index()] = true;
            }
            cycles.push(w);
        }
        cycles
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        word::parse_word(s, self.rank())
    }

    /// Canonical class of a word on this spine, with its power exponent.
    pub fn class(&self, s: &str) -> Result<(CurveClass, u32)> {
        CurveClass::from_word(&self.parse(s)?)
    }

    /// Index of the boundary component a class is parallel to, if any.
    pub fn peripheral_index(&self, c: &CurveClass) -> Option<usize> {
        self.boundary_canonical.iter().position(|b| b == c)
    }

    pub fn is_peripheral(&self, c: &CurveClass) -> bool {
        self.peripheral_index(c).is_some()
    }
}

fn standard_order(sig: SurfaceSig) -> Result<Vec<Letter>> {
    SurfaceSig::new(sig.genus, sig.n_boundary)?;
    if sig.n_boundary == 0 {
        return Err(Error::ClosedSurface);
    }
    let mut order = Vec::new();
    let mut g = 0;
    for _ in 0..sig.genus {
        let a = Letter::new(g, false);
        let b = Letter::new(g + 1, false);
        order.extend([a, b, a.inverse(), b.inverse()]);
        g += 2;
    }
    for _ in 1..sig.n_boundary {
        let c = Letter::new(g, false);
        order.extend([c, c.inverse()]);
        g += 1;
    }
    Ok(order)
}

pub fn build_standard_spine(sig: SurfaceSig) -> Result<RibbonSpine> {
    RibbonSpine::standard(sig)
}

/// An unoriented free homotopy class of a primitive closed curve, stored as
/// the lexicographically least rotation of the word or of its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClass(Word);

impl CurveClass {
    /// Cyclic reduction, primitive root extraction and orientation-symmetric
    /// minimum. Returns the class of the root and the power exponent.
    pub fn from_word(w: &[Letter]) -> Result<(Self, u32)> {
        let r = word::cyclic_reduce(w);
        if r.is_empty() {
            return Err(Error::TrivialWord(format_word(w)));
        }
        let (root, exp) = word::primitive_root(&r);
        let fwd = word::least_rotation(&root);
        let bwd = word::least_rotation(&word::inverse(&root));
        Ok((CurveClass(fwd.min(bwd)), exp as u32))
    }

    pub fn word(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.0))
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", format_word(&self.0))
    }
}

pub fn canonicalize_curve(w: &[Letter]) -> Result<(CurveClass, u32)> {
    CurveClass::from_word(w)
}
