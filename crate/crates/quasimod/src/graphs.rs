//! Global graphs and their decorated sums.
//!
//! A global graph has labeled vertices 1..n (stored 0-based) and a multiset
//! of undirected edges, loops allowed. Orientations direct the non-loop
//! edges. The lattice sums run over integral widths w_e >= 1 and heights
//! h_e >= 0 for label-increasing edges and h_e >= 1 otherwise (loops
//! included); the height sums are evaluated in closed form as geometric
//! series, so only widths are enumerated.

use crate::error::{Error, Result};
use crate::hurwitz::n_prime_series;
use crate::partition::{Partition, Profile};
use crate::rational::{rat, rat_big, rat_pow, Rat};
use crate::series::QSeries;
use crate::triple::{a_prime, VertexFunction};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Labeled multigraph; edges stored as ordered pairs (u, v) with u <= v.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlobalGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl GlobalGraph {
    pub fn new(n_vertices: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        GlobalGraph { n_vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n_edges()).any(|e| self.is_loop(e))
    }

    /// Valence of v, loops counting twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// |Aut|: labeled vertices are fixed, so automorphisms only permute
    /// parallel edges; the order is the product of multiplicity factorials.
    pub fn automorphism_order(&self) -> BigInt {
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &e in &self.edges {
            *mult.entry(e).or_insert(0) += 1;
        }
        let mut acc = BigInt::one();
        for m in mult.values() {
            acc *= crate::rational::factorial(*m);
        }
        acc
    }

    /// Parse "1-2,1-2,3-3" (1-based vertices); the vertex count is the
    /// largest endpoint mentioned.
    pub fn parse(s: &str) -> Result<GlobalGraph> {
        let mut edges = Vec::new();
        let mut n = 0usize;
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| Error::Invalid(format!("bad edge {tok:?}, expected u-v")))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad vertex in {tok:?}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad vertex in {tok:?}")))?;
            if a == 0 || b == 0 {
                return Err(Error::Invalid("vertices are numbered from 1".into()));
            }
            n = n.max(a).max(b);
            edges.push((a - 1, b - 1));
        }
        if edges.is_empty() {
            return Err(Error::Invalid("graph needs at least one edge".into()));
        }
        Ok(GlobalGraph::new(n, edges))
    }
}

impl fmt::Display for GlobalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GlobalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GlobalGraph[{self}]")
    }
}

/// Direction of one edge within an orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeDir {
    /// Loops carry no direction.
    Loop,
    /// From the smaller to the larger vertex label ("upward", h >= 0).
    Up,
    /// From the larger to the smaller vertex label (h >= 1).
    Down,
}

/// All orientations of the non-loop edges: 2^k assignments.
pub fn orientations(g: &GlobalGraph) -> Vec<Vec<EdgeDir>> {
    let free: Vec<usize> = (0..g.n_edges()).filter(|&e| !g.is_loop(e)).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1 << free.len()) {
        let mut dirs = vec![EdgeDir::Loop; g.n_edges()];
        for (bit, &e) in free.iter().enumerate() {
            dirs[e] = if mask & (1 << bit) != 0 { EdgeDir::Down } else { EdgeDir::Up };
        }
        out.push(dirs);
    }
    out
}

/// source/target of an oriented edge (loops: both endpoints equal).
fn endpoints(g: &GlobalGraph, dirs: &[EdgeDir], e: usize) -> (usize, usize) {
    let (a, b) = g.edges()[e];
    match dirs[e] {
        EdgeDir::Loop => (a, a),
        EdgeDir::Up => (a, b),
        EdgeDir::Down => (b, a),
    }
}

/// Minimal height of an edge: 0 for upward edges, 1 otherwise.
fn h_min(dir: EdgeDir) -> usize {
    match dir {
        EdgeDir::Up => 0,
        _ => 1,
    }
}

/// Height-sum profile of one edge for fixed width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeHeight {
    /// sum_{h >= h_min} q^{hw} = q^{h_min w}/(1-q^w)
    Std,
    /// sum_{h >= 1} h q^{hw} = q^w/(1-q^w)^2 (same for h >= 0: the h = 0
    /// term vanishes), used for the Siegel-Veech marked edge
    Marked,
}

/// Per-edge data for the decorated sum.
pub struct EdgeRule<'a> {
    /// scalar weight as a function of the width
    pub scalar: &'a dyn Fn(usize, usize) -> Rat,
    /// which closed-form height sum the edge carries
    pub height: &'a dyn Fn(usize) -> EdgeHeight,
}

/// Vertex factor; receives (vertex, incoming widths, outgoing widths) with
/// loop widths already included on both sides. Returning zero prunes.
pub type VertexRule<'a> = &'a dyn Fn(usize, &[u32], &[u32]) -> Rat;

/// The decorated lattice sum over all width assignments of one orientation.
///
/// Widths are bounded by `order`: downward edges and loops satisfy
/// w <= Sigma h w <= order outright, and flow conservation on the
/// label-increasing DAG bounds upward widths by the downward total.
pub fn oriented_sum(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    order: usize,
    edge: &EdgeRule<'_>,
    vertex: VertexRule<'_>,
) -> QSeries {
    // edges grouped by the vertex at which they get fixed: loops and edges to
    // a higher vertex are fixed while processing their lower endpoint
    let n = g.n_vertices();
    let mut fix_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..g.n_edges() {
        let (a, b) = g.edges()[e];
        fix_at[a.min(b)].push(e);
    }
    // put loops first so the balance-solved edge is always a non-loop
    for list in &mut fix_at {
        list.sort_by_key(|&e| (!g.is_loop(e), e));
    }

    let mut widths = vec![0usize; g.n_edges()];
    let mut acc = QSeries::zero(order);
    let base = QSeries::one(order);
    rec_vertex(g, dirs, order, edge, vertex, &fix_at, 0, &mut widths, &base, 0, &mut acc);
    acc
}

#[allow(clippy::too_many_arguments)]
fn rec_vertex(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    order: usize,
    edge: &EdgeRule<'_>,
    vertex: VertexRule<'_>,
    fix_at: &[Vec<usize>],
    v: usize,
    widths: &mut Vec<usize>,
    partial: &QSeries,
    used: usize,
    acc: &mut QSeries,
) {
    if v == g.n_vertices() {
        acc.add_assign_ref(partial);
        return;
    }
    rec_edges(g, dirs, order, edge, vertex, fix_at, v, 0, widths, partial, used, acc);
}

/// Fix the edges attached at vertex v (index i into fix_at[v]); the last
/// non-loop edge is solved from the balance at v instead of enumerated.
#[allow(clippy::too_many_arguments)]
fn rec_edges(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    order: usize,
    edge: &EdgeRule<'_>,
    vertex: VertexRule<'_>,
    fix_at: &[Vec<usize>],
    v: usize,
    i: usize,
    widths: &mut Vec<usize>,
    partial: &QSeries,
    used: usize,
    acc: &mut QSeries,
) {
    let list = &fix_at[v];
    if i == list.len() {
        // all edges at v are now fixed; check balance and apply vertex factor
        let mut w_in: Vec<u32> = Vec::new();
        let mut w_out: Vec<u32> = Vec::new();
        for e in 0..g.n_edges() {
            let (a, b) = g.edges()[e];
            if a != v && b != v {
                continue;
            }
            let (src, dst) = endpoints(g, dirs, e);
            if g.is_loop(e) {
                w_in.push(widths[e] as u32);
                w_out.push(widths[e] as u32);
            } else if dst == v {
                w_in.push(widths[e] as u32);
            } else if src == v {
                w_out.push(widths[e] as u32);
            }
        }
        let in_sum: usize = w_in.iter().map(|&x| x as usize).sum();
        let out_sum: usize = w_out.iter().map(|&x| x as usize).sum();
        if in_sum != out_sum {
            return;
        }
        let vf = vertex(v, &w_in, &w_out);
        if vf.is_zero() {
            return;
        }
        let scaled = partial.scale(&vf);
        rec_vertex(g, dirs, order, edge, vertex, fix_at, v + 1, widths, &scaled, used, acc);
        return;
    }

    let e = list[i];
    // loops come first in fix_at[v], so the last slot is the non-loop edge
    // (when there is one) whose width the balance at v determines
    let solve_from_balance = !g.is_loop(e) && i == list.len() - 1;

    if solve_from_balance {
        // balance at v over the already-fixed edges determines this width
        let mut resid: i64 = 0; // in minus out at v, loops cancel
        for e2 in 0..g.n_edges() {
            if e2 == e || g.is_loop(e2) {
                continue;
            }
            let (a, b) = g.edges()[e2];
            if a != v && b != v {
                continue;
            }
            let (src, dst) = endpoints(g, dirs, e2);
            // skip edges not yet fixed (attached at v but fixed at a later
            // vertex cannot happen: every edge at v is fixed at min endpoint
            // <= v, hence already fixed or in fix_at[v] before index i)
            if dst == v {
                resid += widths[e2] as i64;
            } else if src == v {
                resid -= widths[e2] as i64;
            }
        }
        let (src, _dst) = endpoints(g, dirs, e);
        // contribution of e to (in - out) at v
        let sign: i64 = if src == v { -1 } else { 1 };
        // resid + sign * w = 0
        let w = -resid * sign;
        if w < 1 || w as usize > order {
            return;
        }
        apply_edge(g, dirs, order, edge, vertex, fix_at, v, i, e, w as usize, widths, partial, used, acc);
    } else {
        let budget = order - used;
        let hm = h_min(dirs[e]);
        let w_max = if hm == 1 { budget } else { order };
        for w in 1..=w_max {
            apply_edge(g, dirs, order, edge, vertex, fix_at, v, i, e, w, widths, partial, used, acc);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn apply_edge(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    order: usize,
    edge: &EdgeRule<'_>,
    vertex: VertexRule<'_>,
    fix_at: &[Vec<usize>],
    v: usize,
    i: usize,
    e: usize,
    w: usize,
    widths: &mut Vec<usize>,
    partial: &QSeries,
    used: usize,
    acc: &mut QSeries,
) {
    let hm = h_min(dirs[e]);
    let height_kind = (edge.height)(e);
    // q-valuation added by this edge
    let val = match height_kind {
        EdgeHeight::Std => hm * w,
        EdgeHeight::Marked => w,
    };
    if used + val > order {
        return;
    }
    let scalar = (edge.scalar)(e, w);
    if scalar.is_zero() {
        return;
    }
    let mut next = partial.scale(&scalar);
    next.shift_assign(val);
    next.mul_geom_assign(w);
    if height_kind == EdgeHeight::Marked {
        next.mul_geom_assign(w);
    }
    widths[e] = w;
    rec_edges(g, dirs, order, edge, vertex, fix_at, v, i + 1, widths, &next, used + val, acc);
    widths[e] = 0;
}

/// S(G, m) for one orientation: widths weighted by w^{m_e+1}, free vertices.
pub fn graph_sum_s_oriented(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    m: &[u32],
    order: usize,
) -> QSeries {
    let scalar = |e: usize, w: usize| rat_pow(&rat(w as i64), m[e] as i64 + 1);
    let height = |_: usize| EdgeHeight::Std;
    let vertex = |_: usize, _: &[u32], _: &[u32]| Rat::one();
    oriented_sum(g, dirs, order, &EdgeRule { scalar: &scalar, height: &height }, &vertex)
}

/// S(Gamma, m): the orientation sum.
pub fn graph_sum_s(g: &GlobalGraph, m: &[u32], order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for dirs in orientations(g) {
        acc.add_assign_ref(&graph_sum_s_oriented(g, &dirs, m, order));
    }
    acc
}

/// N'(G, Pi) for one orientation: edge weight w_e, vertex factor
/// A'(w_v^-, w_v^+, f_{mu_v}).
pub fn graph_series_nprime_oriented(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    profile: &Profile,
    order: usize,
) -> QSeries {
    assert_eq!(profile.len(), g.n_vertices(), "one branch point per vertex");
    let scalar = |_: usize, w: usize| rat(w as i64);
    let height = |_: usize| EdgeHeight::Std;
    let vertex = |v: usize, w_in: &[u32], w_out: &[u32]| {
        a_prime(w_in, w_out, &VertexFunction::FMu(profile.partitions()[v].clone()))
    };
    oriented_sum(g, dirs, order, &EdgeRule { scalar: &scalar, height: &height }, &vertex)
}

/// N'(Gamma, Pi) = sum over orientations.
pub fn graph_series_nprime(g: &GlobalGraph, profile: &Profile, order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for dirs in orientations(g) {
        acc.add_assign_ref(&graph_series_nprime_oriented(g, &dirs, profile, order));
    }
    acc
}

/// Completed-cycle bracket contribution of one graph (orientation-summed):
/// vertex v carries Abar'(w_v^-, w_v^+, ell_v) = A'(.., P_ell/ell).
pub fn graph_bracket_completed(g: &GlobalGraph, ells: &[u32], order: usize) -> QSeries {
    assert_eq!(ells.len(), g.n_vertices());
    let scalar = |_: usize, w: usize| rat(w as i64);
    let height = |_: usize| EdgeHeight::Std;
    let vertex = |v: usize, w_in: &[u32], w_out: &[u32]| {
        a_prime(w_in, w_out, &VertexFunction::completed_single(ells[v]))
    };
    let mut acc = QSeries::zero(order);
    for dirs in orientations(g) {
        acc.add_assign_ref(&oriented_sum(
            g,
            &dirs,
            order,
            &EdgeRule { scalar: &scalar, height: &height },
            &vertex,
        ));
    }
    acc
}

/// All labeled multigraphs on n vertices with no isolated vertex and
/// per-vertex valence bounded by caps[v] (loops count twice).
pub fn enumerate_graphs(caps: &[usize]) -> Vec<GlobalGraph> {
    let n = caps.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a..n {
            pairs.push((a, b));
        }
    }
    let mut out = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut valence = vec![0usize; n];
    fn rec(
        pairs: &[(usize, usize)],
        idx: usize,
        caps: &[usize],
        valence: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        out: &mut Vec<GlobalGraph>,
    ) {
        if idx == pairs.len() {
            if valence.iter().all(|&v| v >= 1) {
                out.push(GlobalGraph::new(caps.len(), edges.clone()));
            }
            return;
        }
        let (a, b) = pairs[idx];
        let unit = if a == b { 2 } else { 1 };
        let max_mult = if a == b {
            (caps[a] - valence[a]) / 2
        } else {
            (caps[a] - valence[a]).min(caps[b] - valence[b])
        };
        for mult in 0..=max_mult {
            // recurse with `mult` parallel copies in place
            rec(pairs, idx + 1, caps, valence, edges, out);
            if mult < max_mult {
                valence[a] += unit;
                if a != b {
                    valence[b] += 1;
                }
                edges.push((a, b));
            }
        }
        for _ in 0..max_mult {
            edges.pop();
            valence[a] -= unit;
            if a != b {
                valence[b] -= 1;
            }
        }
    }
    rec(&pairs, 0, caps, &mut valence, &mut edges, &mut out);
    out.sort();
    out
}

/// Valence caps for a profile: wt(mu_v) = |mu_v| + l(mu_v).
pub fn profile_valence_caps(profile: &Profile) -> Vec<usize> {
    profile.partitions().iter().map(Partition::weight).collect()
}

/// Valence caps for completed-cycle vertices: ell_v + 1.
pub fn completed_valence_caps(ells: &[u32]) -> Vec<usize> {
    ells.iter().map(|&l| l as usize + 1).collect()
}

/// Graphs contributing to N'(Pi): all labeled multigraphs within the valence
/// caps (disconnected ones included).
pub fn enumerate_graphs_for_profile(profile: &Profile) -> Vec<GlobalGraph> {
    enumerate_graphs(&profile_valence_caps(profile))
}

/// Assemble N'(Pi) from the graph decomposition and cross-check against the
/// Burnside route; a mismatch is a hard failure.
pub fn assemble_total(profile: &Profile, order: usize) -> Result<QSeries> {
    let mut acc = QSeries::zero(order);
    if profile.is_empty() {
        acc = QSeries::one(order);
    } else {
        for g in enumerate_graphs_for_profile(profile) {
            let contribution = graph_series_nprime(&g, profile, order);
            let aut = rat_big(g.automorphism_order()).recip();
            acc.add_assign_ref(&contribution.scale(&aut));
        }
    }
    let burnside = n_prime_series(profile, order);
    if let Some(n) = acc.first_difference(&burnside) {
        return Err(Error::CrossCheckMismatch {
            context: format!("assemble_total({profile})"),
            first_diff: n,
        });
    }
    Ok(acc)
}
