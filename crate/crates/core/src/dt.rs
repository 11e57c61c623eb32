//! Arc-system coordinates for integral simple multi-curves.
//!
//! The single vertex of the ribbon spine is blown up into a caterpillar
//! tree of trivalent vertices `v_0, ..., v_{2k-3}` so the spine becomes a
//! trivalent ribbon graph `G` with `k` loop edges and `2k - 3` tree edges.
//! Going counterclockwise around the tree visits the spine's half-edges in
//! their cyclic order. The arcs dual to the edges of `G` form a maximal
//! system of orthogonal arcs, and a multi-curve is recorded by its
//! intersection numbers with them.
//!
//! Edge indices: loops `0..k` in generator order, then tree edges
//! `t_0, ..., t_{2k-4}` where `t_i` joins `v_i` and `v_{i+1}`.
//!
//! Slots (half-edges of `G`): slot `p < 2k` is the spine half-edge at
//! position `p` of the cyclic order; the tree edge `t_i` has slot
//! `2k + 2i` at `v_i` and `2k + 2i + 1` at `v_{i+1}`.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::current::{RationalCurrent, Weight};
use crate::error::{Error, Result};
use crate::hyperbolic::{collar_width, HyperbolicStructure};
use crate::intersection::{intersection_number, self_intersection};
use crate::surface::{CurveClass, RibbonSpine};
use crate::word::{Letter, Word};

/// Intersection numbers with the arcs, indexed by edges of `G`.
pub type DtCoord = Vec<u64>;

#[derive(Debug, Clone)]
pub struct ArcSystem {
    spine: RibbonSpine,
    slot_vertex: Vec<usize>,
    slot_edge: Vec<usize>,
    opp: Vec<usize>,
    verts: Vec<[usize; 3]>,
    lengths: Vec<f64>,
    col: Vec<f64>,
}

impl ArcSystem {
    /// Arc system with prescribed arc lengths.
    pub fn with_lengths(spine: &RibbonSpine, lengths: Vec<f64>) -> Result<Self> {
        let k = spine.rank();
        let n_edges = 3 * k - 3;
        if lengths.len() != n_edges {
            return Err(Error::WrongDimension {
                got: lengths.len(),
                expected: n_edges,
            });
        }
        let col = lengths.iter().map(|&l| collar_width(l)).collect::<Result<Vec<_>>>()?;
        let n_vert = 2 * k - 2;
        let n_slots = 2 * n_edges;
        let mut slot_vertex = vec![0; n_slots];
        let mut slot_edge = vec![0; n_slots];
        let mut opp = vec![0; n_slots];
        for p in 0..2 * k {
            let l = spine.order()[p];
            slot_vertex[p] = vertex_of_position(p, k);
            slot_edge[p] = l.generator();
            opp[p] = spine.position(l.inverse());
        }
        for i in 0..2 * k - 3 {
            let (lo, hi) = (2 * k + 2 * i, 2 * k + 2 * i + 1);
            slot_vertex[lo] = i;
            slot_vertex[hi] = i + 1;
            slot_edge[lo] = k + i;
            slot_edge[hi] = k + i;
            opp[lo] = hi;
            opp[hi] = lo;
        }
        let tree_lo = |i: usize| 2 * k + 2 * i;
        let tree_hi = |i: usize| 2 * k + 2 * i + 1;
        let mut verts = Vec::with_capacity(n_vert);
        verts.push([0, 1, tree_lo(0)]);
        for i in 1..n_vert - 1 {
            verts.push([tree_hi(i - 1), i + 1, tree_lo(i)]);
        }
        verts.push([tree_hi(n_vert - 2), 2 * k - 2, 2 * k - 1]);
        Ok(ArcSystem {
            spine: spine.clone(),
            slot_vertex,
            slot_edge,
            opp,
            verts,
            lengths,
            col,
        })
    }

    /// Orthogonal arcs of a hyperbolic structure. The arc dual to the loop
    /// `x` joins the boundary lifts at the two corners beside the half-edge
    /// `x`; the arc dual to `t_i` joins the lifts at the corners after
    /// positions `i + 1` and `2k - 1`.
    pub fn from_structure(h: &HyperbolicStructure) -> Result<Self> {
        let spine = h.spine();
        let k = spine.rank();
        let order = spine.order();
        let mut lengths = Vec::with_capacity(3 * k - 3);
        for g in 0..k {
            let x = Letter::new(g, false);
            lengths.push(h.corner_arc_length(spine.pred(x), x));
        }
        for i in 0..2 * k - 3 {
            lengths.push(h.corner_arc_length(order[i + 1], order[2 * k - 1]));
        }
        Self::with_lengths(spine, lengths)
    }

    /// Every arc of length `2 arcsinh(1)`, so each has collar weight
    /// `arcsinh(1)`.
    pub fn uniform(spine: &RibbonSpine) -> Result<Self> {
        let n = 3 * spine.rank() - 3;
        Self::with_lengths(spine, vec![2.0 * 1f64.asinh(); n])
    }

    pub fn spine(&self) -> &RibbonSpine {
        &self.spine
    }

    pub fn n_edges(&self) -> usize {
        self.lengths.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn vertex_slots(&self, v: usize) -> [usize; 3] {
        self.verts[v]
    }

    pub fn slot_edge(&self, s: usize) -> usize {
        self.slot_edge[s]
    }

    pub fn slot_vertex(&self, s: usize) -> usize {
        self.slot_vertex[s]
    }

    pub fn opp(&self, s: usize) -> usize {
        self.opp[s]
    }

    pub fn n_slots(&self) -> usize {
        self.opp.len()
    }

    /// Counterclockwise successor of a slot at its vertex.
    pub fn succ_at_vertex(&self, s: usize) -> usize {
        let v = self.verts[self.slot_vertex[s]];
        let j = v.iter().position(|&x| x == s).expect("slot belongs to its vertex");
        v[(j + 1) % 3]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn col(&self) -> &[f64] {
        &self.col
    }

    /// `sum_i m_i Col(l_i)`.
    pub fn ell_p(&self, m: &[u64]) -> f64 {
        m.iter().zip(&self.col).map(|(&x, c)| x as f64 * c).sum()
    }

    /// Edge traversal counts of the reduced edge path of `G` homotopic to
    /// the cyclic word `w`.
    pub fn word_counts(&self, w: &[Letter]) -> DtCoord {
        let k = self.spine.rank();
        let mut m = vec![0; self.n_edges()];
        let n = w.len();
        for j in 0..n {
            let x = w[j];
            let y = w[(j + 1) % n];
            m[x.generator()] += 1;
            let from = self.slot_vertex[self.spine.position(x.inverse())];
            let to = self.slot_vertex[self.spine.position(y)];
            for i in from.min(to)..from.max(to) {
                m[k + i] += 1;
            }
        }
        m
    }

    /// Slots through which the reduced edge path of the cyclic word `w`
    /// leaves a vertex, in order.
    pub fn slot_path(&self, w: &[Letter]) -> Vec<usize> {
        let k = self.spine.rank();
        let n = w.len();
        let mut out = Vec::new();
        for j in 0..n {
            let x = w[j];
            let y = w[(j + 1) % n];
            out.push(self.spine.position(x));
            let from = self.slot_vertex[self.spine.position(x.inverse())];
            let to = self.slot_vertex[self.spine.position(y)];
            if from < to {
                out.extend((from..to).map(|i| 2 * k + 2 * i));
            } else {
                out.extend((to..from).rev().map(|i| 2 * k + 2 * i + 1));
            }
        }
        out
    }

    /// The faces of `G`, each as its cyclic list of corners. A corner is
    /// named by the slot it follows counterclockwise.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_slots()];
        let mut faces = Vec::new();
        for start in 0..self.n_slots() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                face.push(c);
                c = self.opp[self.succ_at_vertex(c)];
            }
            faces.push(face);
        }
        faces
    }

    fn check_dim(&self, m: &[u64]) -> Result<()> {
        if m.len() != self.n_edges() {
            return Err(Error::WrongDimension {
                got: m.len(),
                expected: self.n_edges(),
            });
        }
        Ok(())
    }

    /// Parity and triangle constraints at every vertex (a loop with both
    /// ends at a vertex counts twice).
    pub fn is_admissible(&self, m: &[u64]) -> Result<bool> {
        self.check_dim(m)?;
        Ok(self.verts.iter().all(|v| {
            let x = v.map(|s| m[self.slot_edge[s]]);
            let sum = x[0] + x[1] + x[2];
            sum % 2 == 0 && x.iter().all(|&xi| 2 * xi <= sum)
        }))
    }

    /// DT coordinates of an integral simple multi-curve.
    pub fn dt_coordinates(&self, mc: &RationalCurrent) -> Result<DtCoord> {
        let classes: Vec<&CurveClass> = mc.classes().collect();
        for (i, c) in classes.iter().enumerate() {
            if self_intersection(&self.spine, c) != 0 {
                return Err(Error::NotSimple(c.to_string()));
            }
            for d in &classes[i + 1..] {
                if intersection_number(&self.spine, c, d) != 0 {
                    return Err(Error::NotDisjoint(c.to_string(), d.to_string()));
                }
            }
        }
        let mut m = vec![0; self.n_edges()];
        for (c, w) in mc.iter() {
            let w = integral_weight(w, mc)?;
            for (acc, x) in m.iter_mut().zip(self.word_counts(c.word())) {
                *acc += w * x;
            }
        }
        Ok(m)
    }

    /// The unique integral multi-curve with coordinates `m`.
    pub fn reconstruct(&self, m: &[u64]) -> Result<RationalCurrent> {
        let strands = self.strands(m)?;
        let mut out = RationalCurrent::zero();
        for comp in strands.components() {
            let (class, exp) = CurveClass::from_word(&comp.word)?;
            if exp != 1 {
                return Err(Error::NotSimple(format!(
                    "reconstruction of {m:?} produced the proper power {}^{exp}",
                    class
                )));
            }
            out.add(class, Weight::from_integer(1));
        }
        Ok(out)
    }

    /// Strand picture of `m`: points on slots, hexagon matchings, and
    /// edge gluings.
    pub fn strands(&self, m: &[u64]) -> Result<Strands<'_>> {
        if !self.is_admissible(m)? {
            return Err(Error::Inadmissible(m.to_vec()));
        }
        Ok(Strands::new(self, m))
    }

    /// Number of boundary-parallel copies of each spine boundary component
    /// contained in the multi-curve with coordinates `m`, and the
    /// coordinates of what remains once they are removed.
    pub fn peripheral_split(&self, m: &[u64]) -> Result<(Vec<u64>, DtCoord)> {
        if !self.is_admissible(m)? {
            return Err(Error::Inadmissible(m.to_vec()));
        }
        let boundary_dt: Vec<DtCoord> = self
            .spine
            .boundary_words()
            .iter()
            .map(|w| self.word_counts(w))
            .collect();
        let mut u = vec![0; boundary_dt.len()];
        let mut rest = m.to_vec();
        for face in self.faces() {
            let mult = face.iter().map(|&c| self.corner_count(m, c)).min().unwrap_or(0);
            if mult == 0 {
                continue;
            }
            let mut face_dt = vec![0; self.n_edges()];
            for &c in &face {
                face_dt[self.slot_edge[self.succ_at_vertex(c)]] += 1;
            }
            let j = boundary_dt
                .iter()
                .position(|b| *b == face_dt)
                .expect("faces of G are the spine's boundary cycles");
            u[j] += mult;
            for (r, f) in rest.iter_mut().zip(&face_dt) {
                *r -= mult * f;
            }
        }
        Ok((u, rest))
    }

    /// Strands turning around the corner following slot `c`.
    fn corner_count(&self, m: &[u64], c: usize) -> u64 {
        let d = self.succ_at_vertex(c);
        let e = self.succ_at_vertex(d);
        let (x, y, z) = (m[self.slot_edge[c]], m[self.slot_edge[d]], m[self.slot_edge[e]]);
        (x + y - z) / 2
    }

    /// Enumerates admissible vectors with `ell_p <= bound` in lexicographic
    /// order, starting strictly after `after` when given. The visitor gets
    /// the vector, its `ell_p`, and whether it is internal (no
    /// boundary-parallel component); returning `false` stops the walk.
    pub fn enumerate<F>(&self, bound: f64, after: Option<&[u64]>, mut visit: F) -> Result<CensusRecord>
    where
        F: FnMut(&[u64], f64, bool) -> bool,
    {
        if bound < 0.0 || bound.is_nan() {
            return Err(Error::NegativeBound(bound));
        }
        if let Some(a) = after {
            self.check_dim(a)?;
        }
        let mut rec = CensusRecord {
            bound,
            count_all: 0,
            count_internal: 0,
            complete: true,
        };
        let n = self.n_edges();
        // Vertices whose last incident edge (in index order) is `e`.
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (vi, v) in self.verts.iter().enumerate() {
            let last = v.iter().map(|&s| self.slot_edge[s]).max().expect("three slots");
            closing[last].push(vi);
        }
        let mut m = vec![0u64; n];
        let mut state = Walk {
            arcs: self,
            closing: &closing,
            bound,
            after,
            passed: after.is_none(),
            visit: &mut visit,
            rec: &mut rec,
            stopped: false,
        };
        state.go(&mut m, 0, 0.0);
        Ok(rec)
    }

    /// Census counts only.
    pub fn census(&self, bound: f64) -> Result<CensusRecord> {
        self.enumerate(bound, None, |_, _, _| true)
    }

    /// Writes the census as CSV with a checkpoint comment every
    /// `checkpoint_every` rows. With `after`, resumes strictly after that
    /// vector and omits the header.
    pub fn write_census_csv<W: Write>(
        &self,
        bound: f64,
        after: Option<&[u64]>,
        checkpoint_every: usize,
        out: &mut W,
    ) -> Result<CensusRecord> {
        let n = self.n_edges();
        if after.is_none() {
            let cols: Vec<String> = (1..=n).map(|i| format!("m_{i}")).collect();
            writeln!(out, "{},ell_P,internal", cols.join(","))?;
        }
        let mut err = None;
        let mut rows = 0usize;
        let rec = self.enumerate(bound, after, |m, lp, internal| {
            let line = format!("{},{lp:.12},{}", join(m), internal as u8);
            let mut res = writeln!(out, "{line}");
            rows += 1;
            if res.is_ok() && checkpoint_every > 0 && rows.is_multiple_of(checkpoint_every) {
                res = writeln!(out, "# checkpoint,{}", join(m));
            }
            match res {
                Ok(()) => true,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = err {
            return Err(e.into());
        }
        Ok(rec)
    }
}

/// Last checkpoint vector recorded in a census CSV.
pub fn read_checkpoint<R: BufRead>(input: R) -> Result<Option<DtCoord>> {
    let mut last = None;
    for line in input.lines() {
        let line = line?;
        if let Some(rest) = line.strip_prefix("# checkpoint,") {
            let v = rest
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Io(format!("bad checkpoint line {line:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            last = Some(v);
        }
    }
    Ok(last)
}

fn join(m: &[u64]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn integral_weight(w: &Weight, mc: &RationalCurrent) -> Result<u64> {
    if !w.is_integer() {
        return Err(Error::MalformedCurrent {
            text: mc.to_string(),
            reason: "DT coordinates need integer weights".into(),
        });
    }
    Ok(w.to_integer() as u64)
}

fn vertex_of_position(p: usize, k: usize) -> usize {
    if p <= 1 {
        0
    } else if p >= 2 * k - 2 {
        2 * k - 3
    } else {
        p - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CensusRecord {
    #[serde(rename = "L")]
    pub bound: f64,
    /// `b'(L)`: all integral multi-curves, including the empty one.
    pub count_all: u64,
    /// `b(L)`: those without boundary-parallel components.
    pub count_internal: u64,
    /// False if the visitor stopped the walk early.
    pub complete: bool,
}

struct Walk<'a, F> {
    arcs: &'a ArcSystem,
    closing: &'a [Vec<usize>],
    bound: f64,
    after: Option<&'a [u64]>,
    passed: bool,
    visit: &'a mut F,
    rec: &'a mut CensusRecord,
    stopped: bool,
}

impl<F: FnMut(&[u64], f64, bool) -> bool> Walk<'_, F> {
    fn vertex_ok(&self, m: &[u64], v: usize) -> bool {
        let x = self.arcs.verts[v].map(|s| m[self.arcs.slot_edge[s]]);
        let sum = x[0] + x[1] + x[2];
        sum % 2 == 0 && x.iter().all(|&xi| 2 * xi <= sum)
    }

    fn go(&mut self, m: &mut Vec<u64>, i: usize, partial: f64) {
        if self.stopped {
            return;
        }
        let n = m.len();
        if i == n {
            if !self.passed {
                if self.after.is_some_and(|a| m.as_slice() <= a) {
                    return;
                }
                self.passed = true;
            }
            let internal = self
                .arcs
                .peripheral_split(m)
                .map(|(u, _)| u.iter().all(|&x| x == 0))
                .expect("walk only reaches admissible vectors");
            self.rec.count_all += 1;
            if internal {
                self.rec.count_internal += 1;
            }
            if !(self.visit)(m, partial, internal) {
                self.stopped = true;
                self.rec.complete = false;
            }
            return;
        }
        if !self.passed {
            if let Some(a) = self.after {
                // Skip whole subtrees that precede the resume point.
                if m[..i] < a[..i] {
                    return;
                }
            }
        }
        let c = self.arcs.col[i];
        let mut x = 0u64;
        loop {
            let lp = partial + x as f64 * c;
            if lp > self.bound * (1.0 + 1e-12) {
                break;
            }
            m[i] = x;
            if self.closing[i].iter().all(|&v| self.vertex_ok(m, v)) {
                self.go(m, i + 1, lp);
                if self.stopped {
                    break;
                }
            }
            x += 1;
        }
        m[i] = 0;
    }
}

/// One traced component of a strand picture.
#[derive(Debug, Clone)]
pub struct Component {
    /// Spine word read off the loop crossings.
    pub word: Word,
    /// Points `(slot, index)` from which the component departs across an
    /// edge, in traversal order.
    pub departures: Vec<(usize, u64)>,
}

/// Points on slots, matched inside vertex hexagons and glued across edges.
#[derive(Debug, Clone)]
pub struct Strands<'a> {
    arcs: &'a ArcSystem,
    m: Vec<u64>,
}

impl<'a> Strands<'a> {
    fn new(arcs: &'a ArcSystem, m: &[u64]) -> Self {
        Strands { arcs, m: m.to_vec() }
    }

    pub fn arcs(&self) -> &ArcSystem {
        self.arcs
    }

    pub fn coords(&self) -> &[u64] {
        &self.m
    }

    /// Number of points on a slot.
    pub fn points(&self, s: usize) -> u64 {
        self.m[self.arcs.slot_edge[s]]
    }

    /// Partner of a point across its edge.
    pub fn across(&self, s: usize, i: u64) -> (usize, u64) {
        (self.arcs.opp[s], self.points(s) - 1 - i)
    }

    /// Partner of a point inside its hexagon. Points on a slot are numbered
    /// counterclockwise around the vertex.
    pub fn inside(&self, s: usize, i: u64) -> (usize, u64) {
        let v = self.arcs.verts[self.arcs.slot_vertex[s]];
        let j = v.iter().position(|&x| x == s).expect("slot at vertex");
        let (sp, sn) = (v[(j + 2) % 3], v[(j + 1) % 3]);
        let (mj, mp, mn) = (self.points(s), self.points(sp), self.points(sn));
        let to_next = (mj + mn - mp) / 2;
        if i >= mj - to_next {
            (sn, mj - 1 - i)
        } else {
            (sp, mp - 1 - i)
        }
    }

    pub fn components(&self) -> Vec<Component> {
        let arcs = self.arcs;
        let k2 = 2 * arcs.spine.rank();
        let mut offset = vec![0u64; arcs.n_slots() + 1];
        for s in 0..arcs.n_slots() {
            offset[s + 1] = offset[s] + self.points(s);
        }
        let idx = |s: usize, i: u64| (offset[s] + i) as usize;
        let mut seen = vec![false; offset[arcs.n_slots()] as usize];
        let mut out = Vec::new();
        for s0 in 0..arcs.n_slots() {
            for i0 in 0..self.points(s0) {
                if seen[idx(s0, i0)] {
                    continue;
                }
                let mut word = Vec::new();
                let mut departures = Vec::new();
                let (mut s, mut i) = (s0, i0);
                loop {
                    seen[idx(s, i)] = true;
                    departures.push((s, i));
                    if s < k2 {
                        word.push(arcs.spine.order()[s]);
                    }
                    let (t, j) = self.across(s, i);
                    seen[idx(t, j)] = true;
                    let next = self.inside(t, j);
                    if next == (s0, i0) {
                        break;
                    }
                    (s, i) = next;
                }
                out.push(Component { word, departures });
            }
        }
        out
    }
}

/// Multi-curve as a map from canonical class to multiplicity, for
/// comparisons in tests and reports.
pub fn multiplicities(mc: &RationalCurrent) -> BTreeMap<String, i64> {
    mc.iter().map(|(c, w)| (c.to_string(), w.to_integer())).collect()
}
