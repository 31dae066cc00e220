//! Graph maps on the two fixed train-track graphs of the 3-punctured disc.
//!
//! Both graphs have three vertices `v1, v2, v3` (one per puncture), a loop
//! `e_i` around puncture `i` based at `v_i`, and two main edges:
//!
//! | graph | `x`        | `y`        |
//! |-------|------------|------------|
//! | Γ₁    | `v2 → v1`  | `v3 → v2`  |
//! | Γ₂    | `v3 → v2`  | `v2 → v1`  |
//!
//! Γ₂ is the image of Γ₁ under Δ, with labels carried along.
//!
//! Maps compose left to right: in `map_of_word("ab")` the action of `a` is
//! applied first. The composite is put in a tree gauge (see [`tree_gauge`])
//! so that printed images are independent of how the punctures were dragged.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::garside::{decode_tuple, is_gamma1_form, is_rigid, GarsideTuple};
use crate::sl2::{lu_of_tuple, matrix_of_lu, Measure, SL2Matrix, Surd};
use crate::words::BraidWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    X,
    Y,
    E1,
    E2,
    E3,
}

pub const EDGES: [Edge; 5] = [Edge::X, Edge::Y, Edge::E1, Edge::E2, Edge::E3];

impl Edge {
    fn index(self) -> usize {
        self as usize
    }

    pub fn is_loop(self) -> bool {
        !matches!(self, Edge::X | Edge::Y)
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::X => "x",
            Edge::Y => "y",
            Edge::E1 => "e1",
            Edge::E2 => "e2",
            Edge::E3 => "e3",
        }
    }

    fn loop_at(v: u8) -> Edge {
        [Edge::E1, Edge::E2, Edge::E3][v as usize - 1]
    }

    fn parse(name: &str) -> Option<Edge> {
        EDGES.into_iter().find(|e| e.name() == name)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An oriented edge; also a direction at the vertex it leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dir {
    pub edge: Edge,
    pub forward: bool,
}

impl Dir {
    pub fn new(edge: Edge, forward: bool) -> Self {
        Dir { edge, forward }
    }

    pub fn inverse(self) -> Self {
        Dir { edge: self.edge, forward: !self.forward }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forward {
            write!(f, "{}", self.edge)
        } else {
            write!(f, "(-{})", self.edge)
        }
    }
}

pub type Path = Vec<Dir>;

pub fn render_path(p: &[Dir]) -> String {
    p.iter().map(Dir::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses `-x e2 y` or `(-x) e2 y`.
fn parse_path(text: &str) -> Option<Path> {
    text.split_whitespace()
        .map(|tok| {
            let tok = tok.trim_start_matches('(').trim_end_matches(')');
            match tok.strip_prefix('-') {
                Some(name) => Edge::parse(name).map(|e| Dir::new(e, false)),
                None => Edge::parse(tok).map(|e| Dir::new(e, true)),
            }
        })
        .collect()
}

fn invert_path(p: &[Dir]) -> Path {
    p.iter().rev().map(|d| d.inverse()).collect()
}

/// Free reduction; returns the number of cancelled pairs.
fn tighten(p: &mut Path) -> usize {
    let mut out: Path = Vec::with_capacity(p.len());
    let mut deleted = 0;
    for &d in p.iter() {
        if out.last() == Some(&d.inverse()) {
            out.pop();
            deleted += 1;
        } else {
            out.push(d);
        }
    }
    *p = out;
    deleted
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TrackGraph {
    #[serde(rename = "1")]
    Gamma1,
    #[serde(rename = "2")]
    Gamma2,
}

impl TrackGraph {
    pub fn id(self) -> u8 {
        match self {
            TrackGraph::Gamma1 => 1,
            TrackGraph::Gamma2 => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        match id {
            1 => Some(TrackGraph::Gamma1),
            2 => Some(TrackGraph::Gamma2),
            _ => None,
        }
    }

    pub fn start(self, e: Edge) -> u8 {
        match (self, e) {
            (TrackGraph::Gamma1, Edge::X) | (TrackGraph::Gamma2, Edge::Y) => 2,
            (TrackGraph::Gamma1, Edge::Y) | (TrackGraph::Gamma2, Edge::X) => 3,
            (_, Edge::E1) => 1,
            (_, Edge::E2) => 2,
            (_, Edge::E3) => 3,
        }
    }

    pub fn end(self, e: Edge) -> u8 {
        match (self, e) {
            (TrackGraph::Gamma1, Edge::X) | (TrackGraph::Gamma2, Edge::Y) => 1,
            (TrackGraph::Gamma1, Edge::Y) | (TrackGraph::Gamma2, Edge::X) => 2,
            (_, l) => self.start(l),
        }
    }

    /// Vertex a direction leaves from.
    pub fn tail(self, d: Dir) -> u8 {
        if d.forward {
            self.start(d.edge)
        } else {
            self.end(d.edge)
        }
    }

    pub fn head(self, d: Dir) -> u8 {
        self.tail(d.inverse())
    }
}

impl fmt::Display for TrackGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ{}", ["₁", "₂"][self.id() as usize - 1])
    }
}

/// Images of the five edges under a map of the graph to itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphMap {
    graph: TrackGraph,
    images: [Path; 5],
    vertices: [u8; 3],
    deletions: usize,
}

const GAMMA1_TABLE: [[&str; 2]; 4] = [["-x e2", "y -e2 x"], ["e1 -x", "y x"], ["y x", "-y e3"], ["y -e2 x", "e2 -y"]];

const GAMMA2_TABLE: [[&str; 2]; 4] = [["x y", "-e1 -y"], ["x e2 y", "-y -e2"], ["-e2 -x", "x e2 y"], ["-x -e3", "x y"]];

impl GraphMap {
    pub fn identity(graph: TrackGraph) -> Self {
        GraphMap { graph, images: EDGES.map(|e| vec![Dir::new(e, true)]), vertices: [1, 2, 3], deletions: 0 }
    }

    pub fn graph(&self) -> TrackGraph {
        self.graph
    }

    pub fn image(&self, e: Edge) -> &[Dir] {
        &self.images[e.index()]
    }

    /// Image of an oriented edge.
    pub fn image_dir(&self, d: Dir) -> Path {
        if d.forward {
            self.image(d.edge).to_vec()
        } else {
            invert_path(self.image(d.edge))
        }
    }

    pub fn vertex_image(&self, v: u8) -> u8 {
        self.vertices[v as usize - 1]
    }

    /// Cancelled pairs accumulated over the compositions that built this map.
    pub fn deletions(&self) -> usize {
        self.deletions
    }

    fn from_images(graph: TrackGraph, images: [Path; 5]) -> Self {
        let vertices = [1u8, 2, 3].map(|v| graph.tail(images[Edge::loop_at(v).index()][0]));
        GraphMap { graph, images, vertices, deletions: 0 }
    }

    /// Image of a path, untightened.
    pub fn apply(&self, p: &[Dir]) -> Path {
        p.iter().flat_map(|&d| self.image_dir(d)).collect()
    }

    /// Checks that image paths are edge paths with the right endpoints.
    pub fn is_consistent(&self) -> bool {
        let g = self.graph;
        EDGES.iter().all(|&e| {
            let p = self.image(e);
            !p.is_empty()
                && p.windows(2).all(|w| g.head(w[0]) == g.tail(w[1]))
                && g.tail(p[0]) == self.vertex_image(g.start(e))
                && g.head(*p.last().unwrap()) == self.vertex_image(g.end(e))
        })
    }

    /// One `edge -> path` line per edge.
    pub fn render(&self) -> String {
        EDGES.iter().map(|&e| format!("{e} -> {}", render_path(self.image(e)))).collect::<Vec<_>>().join("\n")
    }

    /// Listing with the main-edge rows named by position instead of label:
    /// the left main edge is listed as `x`, the right one as `y`. On Γ₁ this
    /// is [`render`](Self::render); on Γ₂ the two main rows trade names while
    /// images keep Γ₂ labels.
    pub fn render_positional(&self) -> String {
        let rows = match self.graph {
            TrackGraph::Gamma1 => [Edge::X, Edge::Y],
            TrackGraph::Gamma2 => [Edge::Y, Edge::X],
        };
        let mut lines = vec![format!("x -> {}", render_path(self.image(rows[0]))), format!("y -> {}", render_path(self.image(rows[1])))];
        lines.extend(EDGES[2..].iter().map(|&e| format!("{e} -> {}", render_path(self.image(e)))));
        lines.join("\n")
    }
}

impl fmt::Display for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Action of a single generator (`±1`, `±2`).
pub fn generator_map(g: i8, graph: TrackGraph) -> GraphMap {
    let row = match g {
        1 => 0,
        -1 => 1,
        2 => 2,
        -2 => 3,
        _ => panic!("generator out of range: {g}"),
    };
    let table = match graph {
        TrackGraph::Gamma1 => &GAMMA1_TABLE,
        TrackGraph::Gamma2 => &GAMMA2_TABLE,
    };
    let loops = if g.abs() == 1 { ["e2", "e1", "e3"] } else { ["e1", "e3", "e2"] };
    let [x, y] = table[row];
    let images = [x, y, loops[0], loops[1], loops[2]].map(|t| parse_path(t).expect("valid table"));
    GraphMap::from_images(graph, images)
}

/// `f` followed by `h`, tightened.
pub fn compose(f: &GraphMap, h: &GraphMap) -> Result<GraphMap> {
    if f.graph != h.graph {
        return Err(Error::GraphMismatch(f.graph.id(), h.graph.id()));
    }
    let mut deletions = f.deletions + h.deletions;
    let images = EDGES.map(|e| {
        let mut p = h.apply(f.image(e));
        deletions += tighten(&mut p);
        p
    });
    let vertices = f.vertices.map(|v| h.vertex_image(v));
    Ok(GraphMap { graph: f.graph, images, vertices, deletions })
}

/// Composite of the generator maps, leftmost letter first, in tree gauge.
pub fn map_of_word(w: &BraidWord, graph: TrackGraph) -> GraphMap {
    let mut m = GraphMap::identity(graph);
    for &g in w.letters() {
        m = compose(&m, &generator_map(g, graph)).expect("same graph");
    }
    tree_gauge(&m)
}

/// Removes the puncture-loop winding at the ends of the main-edge images.
///
/// For each endpoint `v` of `x` then `y` not yet treated, the loop tokens at
/// the matching end of the image are summed to a winding number `a`, and
/// every edge image is conjugated by `e^a` at `v` (prefix at starts, inverse
/// suffix at ends), where `e` is the loop at the image vertex.
pub fn tree_gauge(f: &GraphMap) -> GraphMap {
    let g = f.graph;
    let mut m = f.clone();
    let mut fixed = BTreeSet::new();
    for e in [Edge::X, Edge::Y] {
        for at_start in [true, false] {
            let v = if at_start { g.start(e) } else { g.end(e) };
            if !fixed.insert(v) {
                continue;
            }
            let p = m.image(e);
            let run: Vec<Dir> = if at_start {
                p.iter().copied().take_while(|d| d.edge.is_loop()).collect()
            } else {
                p.iter().rev().copied().take_while(|d| d.edge.is_loop()).collect()
            };
            let Some(first) = run.first() else { continue };
            let sum: i64 = run.iter().map(|d| if d.forward { 1 } else { -1 }).sum();
            let a = if at_start { -sum } else { sum };
            let c: Path = vec![Dir::new(first.edge, a > 0); a.unsigned_abs() as usize];
            let c_inv = invert_path(&c);
            for f2 in EDGES {
                let img = &mut m.images[f2.index()];
                if g.start(f2) == v {
                    img.splice(0..0, c.iter().copied());
                }
                if g.end(f2) == v {
                    img.extend(c_inv.iter().copied());
                }
                tighten(img);
            }
        }
    }
    m
}

/// Non-negative 2×2 matrix counting main-edge occurrences, rows `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TransitionMatrix(pub [[u64; 2]; 2]);

impl TransitionMatrix {
    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self.0, o.0);
        let c = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        TransitionMatrix([[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]])
    }

    pub fn to_sl2(&self) -> Option<SL2Matrix> {
        let [[a, b], [c, d]] = self.0;
        SL2Matrix::from_u64(a, b, c, d).ok()
    }

    pub fn matches(&self, m: &SL2Matrix) -> bool {
        let [[a, b], [c, d]] = self.0;
        m.entries() == &[a, b, c, d].map(Into::into)
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

pub fn transition_matrix(f: &GraphMap) -> TransitionMatrix {
    let count = |from: Edge, to: Edge| f.image(from).iter().filter(|d| d.edge == to).count() as u64;
    TransitionMatrix([[count(Edge::X, Edge::X), count(Edge::X, Edge::Y)], [count(Edge::Y, Edge::X), count(Edge::Y, Edge::Y)]])
}

/// Derivative on directions: first step of the image of `d`.
pub fn df(f: &GraphMap, d: Dir) -> Dir {
    let img = f.image(d.edge);
    if d.forward {
        img[0]
    } else {
        img.last().unwrap().inverse()
    }
}

type Turn = (Dir, Dir);

fn taken_turns(p: &[Dir]) -> impl Iterator<Item = Turn> + '_ {
    p.windows(2).map(|w| (w[0].inverse(), w[1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum EfficiencyVerdict {
    TrainTrack,
    /// `position` indexes the first letter of the cancelling pair in the
    /// untightened `f^iterate(edge)`; absent if that path was too long to build.
    Backtracks {
        iterate: u32,
        edge: Edge,
        position: Option<usize>,
    },
}

impl fmt::Display for EfficiencyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EfficiencyVerdict::TrainTrack => f.write_str("TrainTrack"),
            EfficiencyVerdict::Backtracks { iterate, edge, position } => {
                write!(f, "Backtracks{{iterate: {iterate}, edge: {edge}")?;
                match position {
                    Some(p) => write!(f, ", position: {p}}}"),
                    None => f.write_str("}"),
                }
            }
        }
    }
}

const WITNESS_PATH_CAP: usize = 1 << 22;

/// Exact backtracking test by closure of taken turns under `Df`.
///
/// Turns taken by some `f^k(e)` with `k ≤ n` are the turns taken by images
/// of single edges together with their `Df` images, so the closure stabilises
/// after at most 100 rounds (the number of turns). `max_iter` only bounds how
/// many rounds are attempted.
pub fn is_efficient(f: &GraphMap, max_iter: u32) -> EfficiencyVerdict {
    let base: BTreeSet<Turn> = EDGES.iter().flat_map(|&e| taken_turns(f.image(e))).collect();
    let mut cur = base.clone();
    let mut k = 1u32;
    loop {
        if cur.iter().any(|(a, b)| a == b) {
            return backtrack_witness(f, k);
        }
        if k >= max_iter {
            return EfficiencyVerdict::TrainTrack;
        }
        let next: BTreeSet<Turn> = base.iter().copied().chain(cur.iter().map(|&(a, b)| (df(f, a), df(f, b)))).collect();
        if next == cur {
            return EfficiencyVerdict::TrainTrack;
        }
        cur = next;
        k += 1;
    }
}

fn backtrack_witness(f: &GraphMap, k: u32) -> EfficiencyVerdict {
    let mut first = None;
    for e in EDGES {
        let mut p = vec![Dir::new(e, true)];
        let mut complete = true;
        for _ in 0..k {
            if p.len().saturating_mul(max_image_len(f)) > WITNESS_PATH_CAP {
                complete = false;
                break;
            }
            p = f.apply(&p);
        }
        if !complete {
            first.get_or_insert(e);
            continue;
        }
        if let Some(i) = p.windows(2).position(|w| w[1] == w[0].inverse()) {
            return EfficiencyVerdict::Backtracks { iterate: k, edge: e, position: Some(i) };
        }
    }
    EfficiencyVerdict::Backtracks { iterate: k, edge: first.unwrap_or(Edge::X), position: None }
}

fn max_image_len(f: &GraphMap) -> usize {
    EDGES.iter().map(|&e| f.image(e).len()).max().unwrap_or(1)
}

/// Directions at `v`, grouped into gates (`Df`-eventually-equal classes).
pub fn gates(f: &GraphMap, v: u8) -> Vec<Vec<Dir>> {
    let limit = 2 * EDGES.len();
    let orbit = |d: Dir| {
        let mut seq = Vec::with_capacity(limit);
        let mut c = d;
        for _ in 0..limit {
            c = df(f, c);
            seq.push(c);
        }
        seq
    };
    let mut groups: Vec<(Vec<Dir>, Vec<Dir>)> = Vec::new();
    for e in EDGES {
        for forward in [true, false] {
            let d = Dir::new(e, forward);
            if f.graph.tail(d) != v {
                continue;
            }
            let o = orbit(d);
            match groups.iter_mut().find(|(_, go)| go.iter().zip(&o).any(|(a, b)| a == b)) {
                Some((members, _)) => members.push(d),
                None => groups.push((vec![d], o)),
            }
        }
    }
    groups.into_iter().map(|(m, _)| m).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SwitchCheck {
    pub vertex: u8,
    /// Number of gates containing a main-edge direction.
    pub main_gates: usize,
    #[serde(serialize_with = "crate::ser::display")]
    pub loop_weight: Surd,
    pub holds: bool,
}

/// Checks the measure `(x, y)` on main edges against the gate structure of
/// `f`: at each vertex the main-edge gates carry equal weight and the loop
/// gets half the main weight, which must be positive.
pub fn switch_conditions(f: &GraphMap, measure: &Measure) -> Vec<SwitchCheck> {
    let w = |e: Edge| match e {
        Edge::X => measure.x.clone(),
        _ => measure.y.clone(),
    };
    let half = Surd::new(1.into(), 0.into(), 2.into(), 1u32.into());
    (1..=3)
        .map(|v| {
            let sums: Vec<Surd> = gates(f, v)
                .iter()
                .filter(|g| g.iter().any(|d| !d.edge.is_loop()))
                .map(|g| g.iter().filter(|d| !d.edge.is_loop()).fold(Surd::from_int(0), |acc, d| acc.add(&w(d.edge))))
                .collect();
            let total = sums.iter().fold(Surd::from_int(0), |acc, s| acc.add(s));
            let equal = sums.windows(2).all(|p| p[0].cmp_exact(&p[1]).is_eq());
            let loop_weight = total.mul(&half);
            let holds = !sums.is_empty() && equal && loop_weight.signum().is_gt();
            SwitchCheck { vertex: v, main_gates: sums.len(), loop_weight, holds }
        })
        .collect()
}

/// Graph of the fixed pair that carries a rigid braid, with its matrix.
pub fn train_track_of_rigid(t: &GarsideTuple) -> Result<(TrackGraph, SL2Matrix)> {
    if t.canonical_length() == 0 || !is_rigid(t) {
        return Err(Error::NotRigid(t.to_string()));
    }
    let graph = if is_gamma1_form(t) { TrackGraph::Gamma1 } else { TrackGraph::Gamma2 };
    Ok((graph, matrix_of_lu(&lu_of_tuple(t)?)))
}

/// Map of the decoded braid of a rigid tuple on its own graph.
pub fn map_of_rigid(t: &GarsideTuple) -> Result<(TrackGraph, GraphMap)> {
    let (graph, _) = train_track_of_rigid(t)?;
    Ok((graph, map_of_word(&decode_tuple(t).to_word(), graph)))
}
