//! Standard decomposition of rational currents, disjoint simple curves,
//! binding, hulls, partition types and complete pairs.

use std::cell::OnceCell;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::current::{interior_boundary_split, is_internal, RationalCurrent, Weight};
use crate::dt::{ArcSystem, DtCoord, Strands};
use crate::error::{Error, Result};
use crate::hyperbolic::HyperbolicStructure;
use crate::intersection::{current_pairing, intersection_number, self_intersection};
use crate::surface::{CurveClass, RibbonSpine};

/// Extra length allowed on top of twice the support length.
pub const BOUND_EPSILON: f64 = 1e-6;

/// Largest number of census vectors a disjoint-curve search may visit.
pub const CENSUS_BUDGET: u64 = 5_000_000;

/// A hyperbolic structure with its arc system.
#[derive(Debug)]
pub struct Geometry {
    h: HyperbolicStructure,
    arcs: ArcSystem,
    ratio: OnceCell<f64>,
}

impl Geometry {
    pub fn new(h: HyperbolicStructure) -> Result<Self> {
        let arcs = ArcSystem::from_structure(&h)?;
        Ok(Geometry {
            h,
            arcs,
            ratio: OnceCell::new(),
        })
    }

    pub fn h(&self) -> &HyperbolicStructure {
        &self.h
    }

    pub fn arcs(&self) -> &ArcSystem {
        &self.arcs
    }

    pub fn spine(&self) -> &RibbonSpine {
        self.h.spine()
    }

    /// Empirical `max l_P / l_h` over connected simple curves of a small
    /// census.
    pub fn lp_ratio(&self) -> f64 {
        *self.ratio.get_or_init(|| {
            let mut bound = 1.0;
            loop {
                let mut ratio: f64 = 0.0;
                let mut found = 0usize;
                let rec = self
                    .arcs
                    .enumerate(bound, None, |m, lp, internal| {
                        if internal && m.iter().any(|&x| x > 0) {
                            if let Ok(mc) = self.arcs.reconstruct(m) {
                                if mc.len() == 1 && mc.iter().all(|(_, w)| *w == Weight::from_integer(1)) {
                                    ratio = ratio.max(lp / self.h.current_length(&mc));
                                    found += 1;
                                }
                            }
                        }
                        true
                    })
                    .expect("positive bound");
                if found >= 50 || rec.count_all > 50_000 {
                    return ratio.max(1e-3);
                }
                bound *= 1.5;
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StandardDecomposition {
    #[serde(serialize_with = "as_text")]
    pub gamma_part: RationalCurrent,
    #[serde(serialize_with = "as_text")]
    pub alpha_part: RationalCurrent,
    #[serde(serialize_with = "weights_as_text")]
    pub boundary_part: Vec<Weight>,
}

fn as_text<S: serde::Serializer>(c: &RationalCurrent, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn weights_as_text<S: serde::Serializer>(w: &[Weight], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|x| x.to_string()))
}

impl StandardDecomposition {
    pub fn reassemble(&self, spine: &RibbonSpine) -> RationalCurrent {
        let mut out = self.gamma_part.plus(&self.alpha_part);
        for (c, w) in spine.boundary_classes().iter().zip(&self.boundary_part) {
            out.add(c.clone(), *w);
        }
        out
    }
}

/// Splits an internal current into its simple part (components that are
/// simple and disjoint from every component) and the remainder.
pub fn scc_split(spine: &RibbonSpine, c0: &RationalCurrent) -> (RationalCurrent, RationalCurrent) {
    let classes: Vec<&CurveClass> = c0.classes().collect();
    let mut gamma = RationalCurrent::zero();
    let mut alpha = RationalCurrent::zero();
    for (c, w) in c0.iter() {
        let free = self_intersection(spine, c) == 0
            && classes.iter().all(|d| *d == c || intersection_number(spine, c, d) == 0);
        if free {
            gamma.add(c.clone(), *w);
        } else {
            alpha.add(c.clone(), *w);
        }
    }
    (gamma, alpha)
}

pub fn standard_decomposition(spine: &RibbonSpine, c: &RationalCurrent) -> StandardDecomposition {
    let (c0, u) = interior_boundary_split(c, spine);
    let (gamma, alpha) = scc_split(spine, &c0);
    StandardDecomposition {
        gamma_part: gamma,
        alpha_part: alpha,
        boundary_part: u,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DisjointSearch {
    #[serde(serialize_with = "classes_as_text")]
    pub classes: Vec<CurveClass>,
    /// Hyperbolic length bound.
    pub bound: f64,
    /// Census cutoff in `l_P` derived from the bound.
    pub lp_cutoff: f64,
}

/// `2 * sum of l_h over the support + epsilon`; weights are ignored so the
/// bound depends only on the support.
pub fn default_bound(h: &HyperbolicStructure, alpha: &RationalCurrent) -> f64 {
    2.0 * alpha.classes().map(|c| h.class_length(c)).sum::<f64>() + BOUND_EPSILON
}

/// Non-peripheral simple classes disjoint from `alpha` with `l_h <= bound`,
/// read off the census. The census cutoff is `1.5 * bound` times the
/// empirical `l_P / l_h` ratio of the geometry.
pub fn disjoint_simple_curves(geo: &Geometry, alpha: &RationalCurrent, bound: Option<f64>) -> Result<DisjointSearch> {
    let spine = geo.spine();
    if !is_internal(alpha, spine) {
        return Err(Error::NotInternal);
    }
    let bound = bound.unwrap_or_else(|| default_bound(&geo.h, alpha));
    if bound < 0.0 {
        return Err(Error::NegativeBound(bound));
    }
    let lp_cutoff = 1.5 * bound * geo.lp_ratio();
    let mut found = BTreeSet::new();
    let mut visited = 0u64;
    let mut failure = None;
    let rec = geo.arcs.enumerate(lp_cutoff, None, |m, _, internal| {
        visited += 1;
        if visited > CENSUS_BUDGET {
            return false;
        }
        if !internal || m.iter().all(|&x| x == 0) {
            return true;
        }
        let mc = match geo.arcs.reconstruct(m) {
            Ok(mc) => mc,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        if mc.len() != 1 {
            return true;
        }
        let (c, w) = mc.iter().next().expect("one class");
        if *w != Weight::from_integer(1) || spine.is_peripheral(c) || geo.h.class_length(c) > bound {
            return true;
        }
        if alpha.classes().all(|a| intersection_number(spine, c, a) == 0) {
            found.insert(c.clone());
        }
        true
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if !rec.complete {
        return Err(Error::Budget(CENSUS_BUDGET as usize));
    }
    let mut classes: Vec<CurveClass> = found.into_iter().collect();
    classes.sort_by(|a, b| {
        geo.h
            .class_length(a)
            .total_cmp(&geo.h.class_length(b))
            .then_with(|| a.cmp(b))
    });
    Ok(DisjointSearch {
        classes,
        bound,
        lp_cutoff,
    })
}

/// A surface cut along a set of pairwise disjoint, distinct, non-peripheral
/// simple classes.
#[derive(Debug, Clone)]
pub struct Cut<'a> {
    arcs: &'a ArcSystem,
    curves: Vec<CurveClass>,
    strands: Strands<'a>,
    gap_offset: Vec<usize>,
    region_of_gap: Vec<usize>,
    piece_of_region: Vec<usize>,
    gap_by_region_slot: HashMap<(usize, usize), u64>,
    pieces: Vec<Piece>,
    /// Pieces on the two sides of each cut curve.
    sides: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BoundaryRef {
    /// Boundary component of the surface (0-based).
    Surface(usize),
    /// One side of a cut curve (index into the cut list).
    Curve(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub euler: i64,
    pub genus: i64,
    pub boundary: Vec<BoundaryRef>,
}

impl Piece {
    pub fn n_boundary(&self) -> usize {
        self.boundary.len()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl<'a> Cut<'a> {
    pub fn new(arcs: &'a ArcSystem, curves: &[CurveClass]) -> Result<Self> {
        let spine = arcs.spine();
        let mut distinct: Vec<CurveClass> = Vec::new();
        for c in curves {
            if spine.is_peripheral(c) {
                continue;
            }
            if !distinct.contains(c) {
                distinct.push(c.clone());
            }
        }
        let mut mc = RationalCurrent::zero();
        for c in &distinct {
            mc.add(c.clone(), Weight::from_integer(1));
        }
        let m: DtCoord = arcs.dt_coordinates(&mc)?;
        let strands = arcs.strands(&m)?;
        let n_slots = arcs.n_slots();
        let mut gap_offset = vec![0usize; n_slots + 1];
        for s in 0..n_slots {
            gap_offset[s + 1] = gap_offset[s] + strands.points(s) as usize + 1;
        }
        let gap = |s: usize, i: u64| gap_offset[s] + i as usize;
        let n_gaps = gap_offset[n_slots];

        let mut uf = UnionFind::new(n_gaps);
        for s in 0..n_slots {
            for i in 0..strands.points(s) {
                let (t, j) = strands.inside(s, i);
                uf.union(gap(s, i + 1), gap(t, j));
            }
        }
        for v in 0..arcs.n_vertices() {
            let sl = arcs.vertex_slots(v);
            for j in 0..3 {
                let (a, b) = (sl[j], sl[(j + 1) % 3]);
                uf.union(gap(a, strands.points(a)), gap(b, 0));
            }
        }
        let mut region_ids: HashMap<usize, usize> = HashMap::new();
        let mut region_of_gap = vec![0; n_gaps];
        for (g, r) in region_of_gap.iter_mut().enumerate() {
            let root = uf.find(g);
            let next = region_ids.len();
            *r = *region_ids.entry(root).or_insert(next);
        }
        let n_regions = region_ids.len();

        let mut uf2 = UnionFind::new(n_regions);
        let mut gluings: Vec<(usize, usize)> = Vec::new();
        for s in 0..n_slots {
            let t = arcs.opp(s);
            if s > t {
                continue;
            }
            let m_s = strands.points(s);
            for i in 0..=m_s {
                let (ra, rb) = (region_of_gap[gap(s, i)], region_of_gap[gap(t, m_s - i)]);
                uf2.union(ra, rb);
                gluings.push((ra, rb));
            }
        }
        let mut piece_ids: HashMap<usize, usize> = HashMap::new();
        let mut piece_of_region = vec![0; n_regions];
        for (r, p) in piece_of_region.iter_mut().enumerate() {
            let root = uf2.find(r);
            let next = piece_ids.len();
            *p = *piece_ids.entry(root).or_insert(next);
        }
        let n_pieces = piece_ids.len();
        let mut euler = vec![0i64; n_pieces];
        for &p in &piece_of_region {
            euler[p] += 1;
        }
        for &(ra, _) in &gluings {
            euler[piece_of_region[ra]] -= 1;
        }
        let piece_of_gap = |g: usize| piece_of_region[region_of_gap[g]];

        let mut boundary: Vec<Vec<BoundaryRef>> = vec![Vec::new(); n_pieces];
        let boundary_dt: Vec<DtCoord> = spine.boundary_words().iter().map(|w| arcs.word_counts(w)).collect();
        for face in arcs.faces() {
            let mut face_dt = vec![0; arcs.n_edges()];
            for &c in &face {
                face_dt[arcs.slot_edge(arcs.succ_at_vertex(c))] += 1;
            }
            let j = boundary_dt
                .iter()
                .position(|b| *b == face_dt)
                .expect("faces are boundary cycles");
            let c = face[0];
            boundary[piece_of_gap(gap(c, strands.points(c)))].push(BoundaryRef::Surface(j));
        }
        let comps = strands.components();
        let mut sides = vec![(usize::MAX, usize::MAX); distinct.len()];
        for comp in &comps {
            let (class, _) = CurveClass::from_word(&comp.word)?;
            let idx = distinct
                .iter()
                .position(|c| *c == class)
                .ok_or_else(|| Error::NotSimple(format!("cut produced unexpected component {class}")))?;
            let (s, i) = comp.departures[0];
            let left = piece_of_gap(gap(s, i));
            let right = piece_of_gap(gap(s, i + 1));
            sides[idx] = (left, right);
            boundary[left].push(BoundaryRef::Curve(idx));
            boundary[right].push(BoundaryRef::Curve(idx));
        }
        let pieces = (0..n_pieces)
            .map(|p| {
                let n = boundary[p].len() as i64;
                Piece {
                    euler: euler[p],
                    genus: (2 - euler[p] - n) / 2,
                    boundary: std::mem::take(&mut boundary[p]),
                }
            })
            .collect();
        let mut gap_by_region_slot = HashMap::new();
        for s in 0..n_slots {
            for i in 0..=strands.points(s) {
                gap_by_region_slot.insert((region_of_gap[gap(s, i)], s), i);
            }
        }
        Ok(Cut {
            arcs,
            curves: distinct,
            strands,
            gap_offset,
            region_of_gap,
            piece_of_region,
            gap_by_region_slot,
            pieces,
            sides,
        })
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn sides(&self, curve: usize) -> (usize, usize) {
        self.sides[curve]
    }

    fn gap(&self, s: usize, i: u64) -> usize {
        self.gap_offset[s] + i as usize
    }

    /// Pieces into which the class can be isotoped off the cut curves. A
    /// class meeting the cut gives an empty list; a cut curve itself gives
    /// the pieces on its two sides.
    pub fn locate(&self, c: &CurveClass) -> Vec<usize> {
        let path = self.arcs.slot_path(c.word());
        let n = path.len();
        let mut found = BTreeSet::new();
        let first = path[0];
        'start: for g0 in 0..=self.strands.points(first) {
            let mut g = g0;
            let mut piece = None;
            for j in 0..n {
                let s = path[j];
                let t = self.arcs.opp(s);
                let arrive = self.strands.points(s) - g;
                let region = self.region_of_gap[self.gap(t, arrive)];
                piece = Some(self.piece_of_region[region]);
                let next = path[(j + 1) % n];
                match self.gap_by_region_slot.get(&(region, next)) {
                    Some(&i) => g = i,
                    None => continue 'start,
                }
            }
            if g == g0 {
                found.insert(piece.expect("nonempty path"));
            }
        }
        found.into_iter().collect()
    }

    pub fn boundary_class(&self, spine: &RibbonSpine, b: &BoundaryRef) -> CurveClass {
        match b {
            BoundaryRef::Surface(j) => spine.boundary_classes()[*j].clone(),
            BoundaryRef::Curve(i) => self.curves[*i].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullBoundary {
    #[serde(serialize_with = "class_as_text")]
    pub class: CurveClass,
    pub peripheral_in_s: bool,
}

fn class_as_text<S: serde::Serializer>(c: &CurveClass, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn classes_as_text<S: serde::Serializer>(c: &[CurveClass], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsurfaceComponent {
    pub genus: i64,
    pub n_boundary: usize,
    pub euler: i64,
    pub boundary: Vec<HullBoundary>,
}

/// A union of pieces of the surface cut along `cut`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsurfaceDescription {
    pub components: Vec<SubsurfaceComponent>,
    #[serde(serialize_with = "classes_as_text")]
    pub cut: Vec<CurveClass>,
    pub pieces: Vec<usize>,
    /// Some cut curve has both of its sides in the subsurface.
    pub identified_boundary: bool,
}

impl SubsurfaceDescription {
    pub fn empty() -> Self {
        SubsurfaceDescription {
            components: Vec::new(),
            cut: Vec::new(),
            pieces: Vec::new(),
            identified_boundary: false,
        }
    }

    pub fn whole(arcs: &ArcSystem) -> Result<Self> {
        Self::from_pieces(arcs, &[], &[0])
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn from_pieces(arcs: &ArcSystem, cut: &[CurveClass], pieces: &[usize]) -> Result<Self> {
        let c = Cut::new(arcs, cut)?;
        Ok(Self::describe(&c, pieces))
    }

    /// The pieces of the cut containing the given classes.
    pub fn containing(arcs: &ArcSystem, cut: &[CurveClass], classes: &[CurveClass]) -> Result<Self> {
        let c = Cut::new(arcs, cut)?;
        let mut pieces = BTreeSet::new();
        for k in classes {
            match c.locate(k).as_slice() {
                [p] => {
                    pieces.insert(*p);
                }
                _ => return Err(Error::Containment(k.to_string())),
            }
        }
        Ok(Self::describe(&c, &pieces.into_iter().collect::<Vec<_>>()))
    }

    fn describe(cut: &Cut<'_>, pieces: &[usize]) -> Self {
        let spine = cut.arcs.spine();
        let mut identified = false;
        let components = pieces
            .iter()
            .map(|&p| {
                let piece = &cut.pieces[p];
                let boundary = piece
                    .boundary
                    .iter()
                    .map(|b| {
                        if let BoundaryRef::Curve(i) = b {
                            let (l, r) = cut.sides[*i];
                            if pieces.contains(&l) && pieces.contains(&r) {
                                identified = true;
                            }
                        }
                        HullBoundary {
                            class: cut.boundary_class(spine, b),
                            peripheral_in_s: matches!(b, BoundaryRef::Surface(_)),
                        }
                    })
                    .collect();
                SubsurfaceComponent {
                    genus: piece.genus,
                    n_boundary: piece.n_boundary(),
                    euler: piece.euler,
                    boundary,
                }
            })
            .collect();
        SubsurfaceDescription {
            components,
            cut: cut.curves.clone(),
            pieces: pieces.to_vec(),
            identified_boundary: identified,
        }
    }

    /// Boundary classes that are not boundary components of the surface.
    pub fn internal_boundary(&self) -> Vec<CurveClass> {
        let mut out: Vec<CurveClass> = self
            .components
            .iter()
            .flat_map(|c| c.boundary.iter())
            .filter(|b| !b.peripheral_in_s)
            .map(|b| b.class.clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn all_boundary(&self) -> Vec<CurveClass> {
        self.components
            .iter()
            .flat_map(|c| c.boundary.iter().map(|b| b.class.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HullReport {
    pub hull: SubsurfaceDescription,
    pub bound: f64,
    pub lp_cutoff: f64,
    pub candidates: usize,
}

/// Picks a maximal pairwise disjoint system from `d` greedily in the given
/// order.
fn greedy_disjoint(spine: &RibbonSpine, d: &[CurveClass]) -> Vec<CurveClass> {
    let mut out: Vec<CurveClass> = Vec::new();
    for c in d {
        if out.iter().all(|b| b != c && intersection_number(spine, b, c) == 0) {
            out.push(c.clone());
        }
    }
    out
}

/// Smallest subsurface containing an scc-free internal current: cut along a
/// maximal disjoint system of simple curves disjoint from `alpha` and keep
/// the pieces that contain its components.
pub fn hull(geo: &Geometry, alpha: &RationalCurrent, bound: Option<f64>) -> Result<HullReport> {
    let spine = geo.spine();
    if alpha.is_zero() {
        return Err(Error::ZeroCurrent);
    }
    if !is_internal(alpha, spine) {
        return Err(Error::NotInternal);
    }
    let (gamma, _) = scc_split(spine, alpha);
    if let Some(c) = gamma.classes().next() {
        return Err(Error::NotSccFree(c.to_string()));
    }
    let search = disjoint_simple_curves(geo, alpha, bound)?;
    let system = greedy_disjoint(spine, &search.classes);
    let classes: Vec<CurveClass> = alpha.support();
    let hull = SubsurfaceDescription::containing(&geo.arcs, &system, &classes)?;
    Ok(HullReport {
        hull,
        bound: search.bound,
        lp_cutoff: search.lp_cutoff,
        candidates: search.classes.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BindingReport {
    pub binding: bool,
    pub bound: f64,
    pub lp_cutoff: f64,
    #[serde(serialize_with = "classes_as_text")]
    pub witnesses: Vec<CurveClass>,
}

/// Binding iff no non-peripheral simple class within the search bound is
/// disjoint from `alpha`.
pub fn is_binding(geo: &Geometry, alpha: &RationalCurrent, bound: Option<f64>) -> Result<BindingReport> {
    if alpha.is_zero() {
        return Err(Error::ZeroCurrent);
    }
    let search = disjoint_simple_curves(geo, alpha, bound)?;
    Ok(BindingReport {
        binding: search.classes.is_empty(),
        bound: search.bound,
        lp_cutoff: search.lp_cutoff,
        witnesses: search.classes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionType {
    /// The lamination part; always empty for rational currents.
    pub r_empty: bool,
    #[serde(serialize_with = "classes_as_text")]
    pub c: Vec<CurveClass>,
    pub a: Option<SubsurfaceDescription>,
}

pub fn partition_type(geo: &Geometry, c: &RationalCurrent) -> Result<PartitionType> {
    let d = standard_decomposition(geo.spine(), c);
    let a = if d.alpha_part.is_zero() {
        None
    } else {
        Some(hull(geo, &d.alpha_part, None)?.hull)
    };
    Ok(PartitionType {
        r_empty: true,
        c: d.gamma_part.support(),
        a,
    })
}

/// Whether `(r, c)` is a complete pair: every boundary class of `r` is
/// peripheral in the surface, a component of the simple part of `c`, or a
/// boundary class of the hull of its remaining part.
pub fn is_complete_pair(geo: &Geometry, r: &SubsurfaceDescription, c: &RationalCurrent) -> Result<bool> {
    let spine = geo.spine();
    let d = standard_decomposition(spine, c);
    let boundary = r.internal_boundary();
    // Pair condition: the support of c misses the interior of r.
    if !r.is_empty() {
        let cut = Cut::new(&geo.arcs, &r.cut)?;
        for k in d.gamma_part.classes().chain(d.alpha_part.classes()) {
            if boundary.contains(k) {
                continue;
            }
            if boundary.iter().any(|b| intersection_number(spine, b, k) != 0) {
                return Err(Error::NotAPair(format!("{k} crosses the boundary of the subsurface")));
            }
            if cut.locate(k).iter().any(|p| r.pieces.contains(p)) {
                return Err(Error::NotAPair(format!("{k} lies inside the subsurface")));
            }
        }
    }
    let hull_boundary = if d.alpha_part.is_zero() {
        Vec::new()
    } else {
        hull(geo, &d.alpha_part, None)?.hull.internal_boundary()
    };
    let gamma: Vec<CurveClass> = d.gamma_part.support();
    Ok(boundary.iter().all(|b| gamma.contains(b) || hull_boundary.contains(b)))
}

/// Convenience for batteries: the pairing of a current with itself is zero
/// exactly for simple multi-curves.
pub fn is_lamination(spine: &RibbonSpine, c: &RationalCurrent) -> bool {
    current_pairing(spine, c, c) == Weight::from_integer(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;

    fn geo(g: u32, n: u32) -> Geometry {
        let s = RibbonSpine::standard(SurfaceSig::new(g, n).unwrap()).unwrap();
        Geometry::new(HyperbolicStructure::default_for(&s).unwrap()).unwrap()
    }

    fn cur(g: &Geometry, t: &str) -> RationalCurrent {
        RationalCurrent::parse(t, g.spine()).unwrap()
    }

    #[test]
    fn scc_split_examples() {
        let g = geo(1, 1);
        let s = g.spine();
        let (gamma, alpha) = scc_split(s, &cur(&g, "2*a"));
        assert_eq!((gamma, alpha.is_zero()), (cur(&g, "2*a"), true));
        let (gamma, alpha) = scc_split(s, &cur(&g, "a + b"));
        assert!(gamma.is_zero());
        assert_eq!(alpha, cur(&g, "a + b"));
        let g12 = geo(1, 2);
        let (gamma, alpha) = scc_split(g12.spine(), &cur(&g12, "a + c"));
        assert_eq!(gamma, cur(&g12, "a + c"));
        assert!(alpha.is_zero());
    }

    #[test]
    fn standard_decomposition_reassembles() {
        let g = geo(1, 1);
        let c = cur(&g, "2*a + abaB + 3*bndry(1)");
        let d = standard_decomposition(g.spine(), &c);
        assert_eq!(d.reassemble(g.spine()), c);
        assert_eq!(d.boundary_part, vec![Weight::from_integer(3)]);
    }

    #[test]
    fn disjoint_curves_on_the_torus() {
        let g = geo(1, 1);
        let d = disjoint_simple_curves(&g, &cur(&g, "a"), None).unwrap();
        assert!(d.classes.contains(&g.spine().class("a").unwrap().0));
        let d = disjoint_simple_curves(&g, &cur(&g, "a + b"), None).unwrap();
        assert!(d.classes.is_empty());
    }

    #[test]
    fn binding_examples() {
        let g = geo(1, 1);
        assert!(is_binding(&g, &cur(&g, "a + b"), None).unwrap().binding);
        assert!(!is_binding(&g, &cur(&g, "a"), None).unwrap().binding);
        let p = geo(0, 3);
        assert!(is_binding(&p, &cur(&p, "aB"), None).unwrap().binding);
        assert!(is_binding(&g, &RationalCurrent::zero(), None).is_err());
    }

    #[test]
    fn whole_surface_cut() {
        for (gg, n) in [(1, 1), (0, 3), (1, 2), (2, 1)] {
            let g = geo(gg, n);
            let w = SubsurfaceDescription::whole(g.arcs()).unwrap();
            assert_eq!(w.components.len(), 1);
            assert_eq!(w.components[0].genus, gg as i64);
            assert_eq!(w.components[0].n_boundary, n as usize);
        }
    }

    #[test]
    fn hull_of_handle_in_genus_two() {
        let g = geo(2, 1);
        let r = hull(&g, &cur(&g, "a + b"), None).unwrap();
        assert_eq!(r.hull.components.len(), 1);
        let comp = &r.hull.components[0];
        assert_eq!((comp.genus, comp.n_boundary), (1, 1));
        assert!(!comp.boundary[0].peripheral_in_s);
        assert!(!r.hull.identified_boundary);
        let b = &comp.boundary[0].class;
        assert_eq!(self_intersection(g.spine(), b), 0);
        assert_eq!(intersection_number(g.spine(), b, &g.spine().class("a").unwrap().0), 0);
    }

    #[test]
    fn hull_of_binding_current_is_everything() {
        let g = geo(1, 1);
        let r = hull(&g, &cur(&g, "a + b"), None).unwrap();
        assert_eq!(r.hull.components.len(), 1);
        assert_eq!((r.hull.components[0].genus, r.hull.components[0].n_boundary), (1, 1));
        assert!(r.hull.internal_boundary().is_empty());
        let p = geo(0, 3);
        let r = hull(&p, &cur(&p, "aB"), None).unwrap();
        assert_eq!((r.hull.components[0].genus, r.hull.components[0].n_boundary), (0, 3));
        assert!(matches!(hull(&g, &cur(&g, "a"), None), Err(Error::NotSccFree(_))));
    }

    #[test]
    fn partition_types() {
        let g = geo(1, 1);
        let p = partition_type(&g, &cur(&g, "3*bndry(1)")).unwrap();
        assert!(p.c.is_empty() && p.a.is_none());
        let p = partition_type(&g, &cur(&g, "2*a")).unwrap();
        assert_eq!(p.c.len(), 1);
        assert!(p.a.is_none());
        let p = partition_type(&g, &cur(&g, "a + b")).unwrap();
        assert!(p.c.is_empty());
        assert_eq!(p.a.unwrap().components.len(), 1);
    }

    #[test]
    fn complete_pairs() {
        let g = geo(1, 1);
        assert!(is_complete_pair(&g, &SubsurfaceDescription::empty(), &cur(&g, "a + b")).unwrap());
        let whole = SubsurfaceDescription::whole(g.arcs()).unwrap();
        assert!(is_complete_pair(&g, &whole, &RationalCurrent::zero()).unwrap());

        let g2 = geo(2, 1);
        let s = g2.spine();
        let delta = s.class("BabA").unwrap().0;
        let r = SubsurfaceDescription::containing(g2.arcs(), std::slice::from_ref(&delta), &[s.class("a").unwrap().0])
            .unwrap();
        assert_eq!((r.components[0].genus, r.components[0].n_boundary), (1, 1));
        assert!(is_complete_pair(&g2, &r, &cur(&g2, "BabA")).unwrap());
        assert!(!is_complete_pair(&g2, &r, &RationalCurrent::zero()).unwrap());
        assert!(matches!(
            is_complete_pair(&g2, &r, &cur(&g2, "a")),
            Err(Error::NotAPair(_))
        ));
    }

    #[test]
    fn cutting_along_a_nonseparating_curve() {
        let g = geo(1, 1);
        let a = g.spine().class("a").unwrap().0;
        let cut = Cut::new(g.arcs(), std::slice::from_ref(&a)).unwrap();
        assert_eq!(cut.pieces().len(), 1);
        let p = &cut.pieces()[0];
        assert_eq!((p.genus, p.n_boundary(), p.euler), (0, 3, -1));
        assert_eq!(cut.locate(&a), vec![0]);
        assert!(cut.locate(&g.spine().class("b").unwrap().0).is_empty());
    }
}
