//! Rational geodesic currents: finite positively weighted sums of primitive
//! curve classes.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::surface::{CurveClass, RibbonSpine};

pub type Weight = Ratio<i64>;

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalCurrent {
    parts: BTreeMap<CurveClass, Weight>,
}

impl RationalCurrent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(c: CurveClass, w: Weight) -> Self {
        let mut out = Self::zero();
        out.add(c, w);
        out
    }

    /// Adds `w * c`; nonpositive weights are ignored.
    pub fn add(&mut self, c: CurveClass, w: Weight) {
        if !w.is_positive() {
            return;
        }
        *self.parts.entry(c).or_insert_with(Weight::zero) += w;
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurveClass, &Weight)> {
        self.parts.iter()
    }

    pub fn classes(&self) -> impl Iterator<Item = &CurveClass> {
        self.parts.keys()
    }

    pub fn weight(&self, c: &CurveClass) -> Weight {
        self.parts.get(c).copied().unwrap_or_else(Weight::zero)
    }

    pub fn scaled(&self, t: Weight) -> Self {
        let mut out = Self::zero();
        for (c, w) in self.iter() {
            out.add(c.clone(), *w * t);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, w) in other.iter() {
            out.add(c.clone(), *w);
        }
        out
    }

    /// Support without weights.
    pub fn support(&self) -> Vec<CurveClass> {
        self.parts.keys().cloned().collect()
    }

    /// Parses `"2*a + 3/2*ab + 1*bndry(1)"`. Weights default to 1; words that
    /// are proper powers fold their exponent into the weight; `bndry(j)` is
    /// the `j`-th boundary component (1-based).
    pub fn parse(text: &str, spine: &RibbonSpine) -> Result<Self> {
        let bad = |reason: String| Error::MalformedCurrent {
            text: text.to_string(),
            reason,
        };
        let mut out = Self::zero();
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "0" {
            return Ok(out);
        }
        for term in trimmed.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let (w, body) = match term.split_once('*') {
                Some((w, body)) => (
                    parse_weight(w.trim()).ok_or_else(|| bad(format!("bad weight {w:?}")))?,
                    body.trim(),
                ),
                None => (Weight::from_integer(1), term),
            };
            if !w.is_positive() {
                return Err(bad(format!("weight {w} must be positive")));
            }
            if let Some(idx) = body.strip_prefix("bndry(").and_then(|r| r.strip_suffix(')')) {
                let j: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad boundary index {idx:?}")))?;
                if j == 0 || j > spine.boundary_classes().len() {
                    return Err(bad(format!("boundary index {j} out of range")));
                }
                out.add(spine.boundary_classes()[j - 1].clone(), w);
            } else {
                let (c, e) = spine.class(body)?;
                out.add(c, w * Weight::from_integer(e as i64));
            }
        }
        Ok(out)
    }
}

fn parse_weight(s: &str) -> Option<Weight> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Weight::new(p.trim().parse().ok()?, q))
        }
        None => Some(Weight::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for RationalCurrent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, w) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{w}*{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalCurrent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `c = c0 + sum_j u_j * beta_j` with `c0` free of boundary-parallel classes.
pub fn interior_boundary_split(c: &RationalCurrent, spine: &RibbonSpine) -> (RationalCurrent, Vec<Weight>) {
    let mut internal = RationalCurrent::zero();
    let mut u = vec![Weight::zero(); spine.boundary_classes().len()];
    for (class, w) in c.iter() {
        match spine.peripheral_index(class) {
            Some(j) => u[j] += *w,
            None => internal.add(class.clone(), *w),
        }
    }
    (internal, u)
}

pub fn is_internal(c: &RationalCurrent, spine: &RibbonSpine) -> bool {
    c.classes().all(|k| !spine.is_peripheral(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;

    fn torus() -> RibbonSpine {
        RibbonSpine::standard(SurfaceSig::new(1, 1).unwrap()).unwrap()
    }

    fn int(n: i64) -> Weight {
        Weight::from_integer(n)
    }

    #[test]
    fn parses_weights_powers_and_boundary_terms() {
        let s = torus();
        let c = RationalCurrent::parse("2*a + 3/2*ab + bndry(1) + abab", &s).unwrap();
        assert_eq!(c.weight(&s.class("a").unwrap().0), int(2));
        assert_eq!(c.weight(&s.class("ab").unwrap().0), Weight::new(7, 2));
        assert_eq!(c.weight(&s.boundary_classes()[0]), int(1));
        assert!(RationalCurrent::parse("0", &s).unwrap().is_zero());
        assert!(RationalCurrent::parse("2*", &s).is_err());
        assert!(RationalCurrent::parse("-1*a", &s).is_err());
        assert!(RationalCurrent::parse("bndry(2)", &s).is_err());
        assert!(RationalCurrent::parse("a + + b", &s).is_err());
    }

    #[test]
    fn display_round_trips() {
        let s = torus();
        let c = RationalCurrent::parse("2*a + 1/3*aab + bndry(1)", &s).unwrap();
        let again = RationalCurrent::parse(&c.to_string(), &s).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn split_examples() {
        let s = torus();
        let c = RationalCurrent::parse("3*abAB", &s).unwrap();
        let (c0, u) = interior_boundary_split(&c, &s);
        assert!(c0.is_zero());
        assert_eq!(u, vec![int(3)]);

        let c = RationalCurrent::parse("2*a", &s).unwrap();
        let (c0, u) = interior_boundary_split(&c, &s);
        assert_eq!(c0, c);
        assert_eq!(u, vec![int(0)]);

        let c = RationalCurrent::parse("a + BAba", &s).unwrap();
        let (c0, u) = interior_boundary_split(&c, &s);
        assert_eq!(c0, RationalCurrent::parse("a", &s).unwrap());
        assert_eq!(u, vec![int(1)]);
    }
}
