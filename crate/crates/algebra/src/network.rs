//! Perfect planar networks on a disk, the boundary measurement map and the
//! induced bracket on measurement entries.
//!
//! A network has `r` boundary vertices indexed anticlockwise. Boundary
//! vertices with one outgoing edge are the sources; every other boundary
//! vertex has one incoming edge. Inner vertices are white (one incoming, two
//! outgoing) or black (two incoming, one outgoing) and carry the cyclic
//! order of their incident edges, listed in the boundary's anticlockwise
//! orientation. Only acyclic networks are accepted: the boundary measurement
//! entry for a source row and a sink column is the plain sum over directed
//! paths of the products of edge weights, and the source columns form the
//! identity.
//!
//! Every (vertex, incident edge) pair carries a variable; an edge weighs the
//! product of its two endpoint variables. At an inner vertex, rotating the
//! cyclic order to start at the distinguished edge (the incoming edge of a
//! white vertex, the outgoing edge of a black one) leaves two followers `q`
//! and `r`; the only nonzero variable bracket at the vertex is
//! `{x_q, x_r} = w * x_q * x_r`, extended antisymmetrically, where `w` is
//! the beta weight at white vertices and the alpha weight at black ones.
//! This sense and weight attachment is pinned by machine checks: it is the
//! one under which the induced bracket on measurement entries reproduces
//! the cell coordinate bracket on the fixtures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::bracket::BracketParams;
use crate::grassmannian::{coordinate_bracket, CoordSymbol, SchubertIndex};
use crate::ring::{Monomial, Polynomial, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("network is invalid:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),
    #[error("no such boundary coordinate ({0}, {1})")]
    BadCoordinate(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexKind {
    Boundary(usize),
    White,
    Black,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Vertex {
    id: String,
    kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    id: String,
    from: String,
    to: String,
}

/// A (vertex, incident edge) pair variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetworkVar {
    pub vertex: String,
    pub edge: String,
}

impl fmt::Display for NetworkVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.vertex, self.edge)
    }
}

/// Polynomials in the vertex-edge variables.
pub type NetworkPoly = Polynomial<NetworkVar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarNetwork {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Inner vertex id -> cyclic incident edge order (anticlockwise).
    orders: BTreeMap<String, Vec<String>>,
    /// Boundary indices declared as sources, sorted.
    sources: Vec<usize>,
}

impl PlanarNetwork {
    pub fn new(
        vertices: Vec<(String, VertexKind)>,
        edges: Vec<(String, String, String)>,
        orders: BTreeMap<String, Vec<String>>,
        sources: Vec<usize>,
    ) -> PlanarNetwork {
        let mut vertices: Vec<Vertex> =
            vertices.into_iter().map(|(id, kind)| Vertex { id, kind }).collect();
        vertices.sort_by_key(|v| match v.kind {
            VertexKind::Boundary(k) => (0, k, v.id.clone()),
            _ => (1, 0, v.id.clone()),
        });
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(id, from, to)| Edge { id, from, to })
            .collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        let mut sources = sources;
        sources.sort_unstable();
        sources.dedup();
        PlanarNetwork { vertices, edges, orders, sources }
    }

    pub fn boundary_size(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| matches!(v.kind, VertexKind::Boundary(_)))
            .count()
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    fn boundary_vertex(&self, k: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.kind == VertexKind::Boundary(k))
    }

    fn outgoing<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.from == id)
    }

    fn incoming<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.to == id)
    }

    /// Checks every structural invariant, collecting one message per
    /// violation; acyclicity is checked by topological sort.
    pub fn validate(&self) -> Result<(), Vec<String>> {
        let mut issues = Vec::new();
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(&v.id) {
                issues.push(format!("duplicate vertex id {}", v.id));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for e in &self.edges {
            if !edge_ids.insert(&e.id) {
                issues.push(format!("duplicate edge id {}", e.id));
            }
            for end in [&e.from, &e.to] {
                if self.vertex(end).is_none() {
                    issues.push(format!("edge {} references unknown vertex {}", e.id, end));
                }
            }
        }
        // boundary indices must be exactly 1..=r
        let mut boundary: Vec<usize> = self
            .vertices
            .iter()
            .filter_map(|v| match v.kind {
                VertexKind::Boundary(k) => Some(k),
                _ => None,
            })
            .collect();
        boundary.sort_unstable();
        let r = boundary.len();
        if boundary != (1..=r).collect::<Vec<_>>() {
            issues.push(format!("boundary indices must be exactly 1..={r}, got {boundary:?}"));
        }
        // degree constraints
        let mut computed_sources = Vec::new();
        for v in &self.vertices {
            let outs = self.outgoing(&v.id).count();
            let ins = self.incoming(&v.id).count();
            match v.kind {
                VertexKind::Boundary(k) => {
                    if outs == 1 && ins == 0 {
                        computed_sources.push(k);
                    } else if !(outs == 0 && ins == 1) {
                        issues.push(format!(
                            "boundary vertex {} must have exactly one incident edge (outgoing for a source, incoming otherwise), has {outs} out / {ins} in",
                            v.id
                        ));
                    }
                }
                VertexKind::White => {
                    if !(ins == 1 && outs == 2) {
                        issues.push(format!(
                            "white vertex {} must have 1 incoming and 2 outgoing edges, has {ins} in / {outs} out",
                            v.id
                        ));
                    }
                }
                VertexKind::Black => {
                    if !(ins == 2 && outs == 1) {
                        issues.push(format!(
                            "black vertex {} must have 2 incoming and 1 outgoing edge, has {ins} in / {outs} out",
                            v.id
                        ));
                    }
                }
            }
        }
        computed_sources.sort_unstable();
        if computed_sources != self.sources {
            issues.push(format!(
                "declared sources {:?} do not match boundary vertices with one outgoing edge {:?}",
                self.sources, computed_sources
            ));
        }
        // cyclic orders cover exactly the incident edges of inner vertices
        for v in &self.vertices {
            if matches!(v.kind, VertexKind::Boundary(_)) {
                continue;
            }
            let mut incident: Vec<&str> = self
                .edges
                .iter()
                .filter(|e| e.from == v.id || e.to == v.id)
                .map(|e| e.id.as_str())
                .collect();
            incident.sort_unstable();
            match self.orders.get(&v.id) {
                None => issues.push(format!("inner vertex {} has no edge order", v.id)),
                Some(order) => {
                    let mut listed: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
                    listed.sort_unstable();
                    if listed != incident {
                        issues.push(format!(
                            "edge order at {} lists {:?}, incident edges are {:?}",
                            v.id, order, incident
                        ));
                    }
                }
            }
        }
        for v in self.orders.keys() {
            match self.vertex(v) {
                None => issues.push(format!("edge order given for unknown vertex {v}")),
                Some(vx) if matches!(vx.kind, VertexKind::Boundary(_)) => {
                    issues.push(format!("edge order given for boundary vertex {v}"))
                }
                _ => {}
            }
        }
        if let Err(cycle) = self.topological_order() {
            issues.push(cycle);
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(issues)
        }
    }

    fn topological_order(&self) -> Result<Vec<String>, String> {
        let mut indegree: BTreeMap<&str, usize> =
            self.vertices.iter().map(|v| (v.id.as_str(), 0)).collect();
        for e in &self.edges {
            if let Some(d) = indegree.get_mut(e.to.as_str()) {
                *d += 1;
            }
        }
        let mut queue: Vec<&str> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&id, _)| id)
            .collect();
        queue.sort_unstable();
        let mut order = Vec::new();
        while let Some(id) = queue.pop() {
            order.push(id.to_string());
            for e in self.outgoing(id) {
                let d = indegree.get_mut(e.to.as_str()).expect("known vertex");
                *d -= 1;
                if *d == 0 {
                    queue.push(&e.to);
                }
            }
        }
        if order.len() == self.vertices.len() {
            Ok(order)
        } else {
            let stuck: Vec<&str> = indegree
                .iter()
                .filter(|(_, &d)| d > 0)
                .map(|(&id, _)| id)
                .collect();
            Err(format!("directed cycle through vertices {stuck:?}"))
        }
    }

    /// The weight of an edge: the product of its two endpoint variables.
    pub fn edge_weight(&self, edge_id: &str) -> Option<NetworkPoly> {
        let e = self.edges.iter().find(|e| e.id == edge_id)?;
        let head = NetworkVar { vertex: e.from.clone(), edge: e.id.clone() };
        let tail = NetworkVar { vertex: e.to.clone(), edge: e.id.clone() };
        Some(&NetworkPoly::var(head) * &NetworkPoly::var(tail))
    }

    /// The boundary measurement matrix. Source columns are the identity;
    /// the entry for source `i` and sink column `j` is the sum over directed
    /// paths from `v_i` to `v_j` of the products of edge weights, computed
    /// by dynamic programming over a topological order.
    pub fn boundary_measurement(&self) -> Result<Measurement, NetworkError> {
        self.validate().map_err(NetworkError::Invalid)?;
        let r = self.boundary_size();
        let index = SchubertIndex::new(r, self.sources.clone()).expect("validated source set");
        let topo = self.topological_order().expect("validated acyclic");
        let mut entries = BTreeMap::new();
        for j in 1..=r {
            if index.contains(j) {
                continue;
            }
            let target = &self.boundary_vertex(j).expect("validated boundary").id;
            // path sums toward the target, in reverse topological order
            let mut sums: BTreeMap<&str, NetworkPoly> = BTreeMap::new();
            for id in topo.iter().rev() {
                let acc = if id == target {
                    NetworkPoly::one()
                } else {
                    let mut acc = NetworkPoly::zero();
                    for e in self.outgoing(id) {
                        let downstream = sums.get(e.to.as_str()).expect("reverse topo order");
                        if downstream.is_zero() {
                            continue;
                        }
                        let w = self.edge_weight(&e.id).expect("known edge");
                        acc = &acc + &(&w * downstream);
                    }
                    acc
                };
                sums.insert(id.as_str(), acc);
            }
            for &i in index.pivots() {
                let source = &self.boundary_vertex(i).expect("validated boundary").id;
                entries.insert((i, j), sums[source.as_str()].clone());
            }
        }
        Ok(Measurement { index, entries })
    }

    /// All directed paths between two boundary indices, as edge id lists;
    /// exponential-time reference used to cross-check the measurement.
    pub fn enumerate_paths(&self, from: usize, to: usize) -> Vec<Vec<String>> {
        let (start, goal) = match (self.boundary_vertex(from), self.boundary_vertex(to)) {
            (Some(s), Some(g)) => (s.id.clone(), g.id.clone()),
            _ => return Vec::new(),
        };
        let mut paths = Vec::new();
        let mut stack = Vec::new();
        self.dfs_paths(&start, &goal, &mut stack, &mut paths);
        paths
    }

    fn dfs_paths(&self, at: &str, goal: &str, stack: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        if at == goal {
            out.push(stack.clone());
            return;
        }
        for e in self.outgoing(at) {
            stack.push(e.id.clone());
            self.dfs_paths(&e.to, goal, stack, out);
            stack.pop();
        }
    }

    /// The nonzero variable brackets: one antisymmetric pair per inner
    /// vertex. Rotating the cyclic order to the distinguished edge leaves
    /// the pair `(q, r)`; white vertices weigh it with beta, black with
    /// alpha.
    fn vertex_pairs(&self, p: &BracketParams) -> Vec<(NetworkVar, NetworkVar, Rational)> {
        let mut pairs = Vec::new();
        for v in &self.vertices {
            let weight = match v.kind {
                VertexKind::White => p.beta.clone(),
                VertexKind::Black => p.alpha.clone(),
                VertexKind::Boundary(_) => continue,
            };
            let order = &self.orders[&v.id];
            let distinguished = match v.kind {
                VertexKind::White => self.incoming(&v.id).next().expect("validated").id.clone(),
                _ => self.outgoing(&v.id).next().expect("validated").id.clone(),
            };
            let start = order
                .iter()
                .position(|e| *e == distinguished)
                .expect("validated order");
            let q = order[(start + 1) % order.len()].clone();
            let r = order[(start + 2) % order.len()].clone();
            pairs.push((
                NetworkVar { vertex: v.id.clone(), edge: q },
                NetworkVar { vertex: v.id.clone(), edge: r },
                weight,
            ));
        }
        pairs
    }

    /// The induced bracket on polynomials in the vertex-edge variables.
    pub fn bracket(&self, f: &NetworkPoly, g: &NetworkPoly, p: &BracketParams) -> NetworkPoly {
        let mut weights: BTreeMap<(NetworkVar, NetworkVar), Rational> = BTreeMap::new();
        for (q, r, w) in self.vertex_pairs(p) {
            weights.insert((q.clone(), r.clone()), w.clone());
            weights.insert((r, q), -w);
        }
        let mut out = NetworkPoly::zero();
        for u in f.variables() {
            let mut df: Option<NetworkPoly> = None;
            for v in g.variables() {
                let Some(w) = weights.get(&(u.clone(), v.clone())) else {
                    continue;
                };
                let df = df.get_or_insert_with(|| f.partial_derivative(&u));
                let dg = g.partial_derivative(&v);
                let core = Monomial::from_powers(vec![(u.clone(), 1), (v.clone(), 1)]);
                let term = &(&*df * &dg) * &NetworkPoly::term(core, w.clone());
                out = &out + &term;
            }
        }
        out
    }

    /// Checks, for every coordinate pair, that the induced bracket of two
    /// measurement entries equals the coordinate bracket formula with the
    /// entries substituted for the coordinates. Exact polynomial equality.
    pub fn verify_vs_coordinate_formula(
        &self,
        p: &BracketParams,
    ) -> Result<Vec<FormulaCheck>, NetworkError> {
        let m = self.boundary_measurement()?;
        let coords = m.index.coords();
        let mut out = Vec::new();
        for (a, &c) in coords.iter().enumerate() {
            for &cp in &coords[a..] {
                let lhs = self.bracket(
                    m.entry(c.i, c.j)?.as_ref(),
                    m.entry(cp.i, cp.j)?.as_ref(),
                    p,
                );
                let formal = coordinate_bracket(c, cp, p);
                let mut rhs = NetworkPoly::zero();
                for (mono, coeff) in formal.terms() {
                    let mut term = NetworkPoly::constant(coeff.clone());
                    for (sym, e) in mono.powers() {
                        let entry = m.entry(sym.i, sym.j)?;
                        term = &term * &entry.pow(*e);
                    }
                    rhs = &rhs + &term;
                }
                out.push(FormulaCheck { c, cp, pass: lhs == rhs, lhs, rhs });
            }
        }
        Ok(out)
    }
}

/// The boundary measurement matrix, stored sparsely by (source, column).
#[derive(Debug, Clone)]
pub struct Measurement {
    pub index: SchubertIndex,
    entries: BTreeMap<(usize, usize), NetworkPoly>,
}

impl Measurement {
    /// Entry for pivot row `i` and column `j`; source columns are identity.
    pub fn entry(
        &self,
        i: usize,
        j: usize,
    ) -> Result<std::borrow::Cow<'_, NetworkPoly>, NetworkError> {
        if !self.index.contains(i) {
            return Err(NetworkError::BadCoordinate(i, j));
        }
        if self.index.contains(j) {
            return Ok(std::borrow::Cow::Owned(if i == j {
                NetworkPoly::one()
            } else {
                NetworkPoly::zero()
            }));
        }
        self.entries
            .get(&(i, j))
            .map(std::borrow::Cow::Borrowed)
            .ok_or(NetworkError::BadCoordinate(i, j))
    }
}

/// Result of one coordinate-pair comparison.
#[derive(Debug, Clone)]
pub struct FormulaCheck {
    pub c: CoordSymbol,
    pub cp: CoordSymbol,
    pub pass: bool,
    pub lhs: NetworkPoly,
    pub rhs: NetworkPoly,
}

// ---------------------------------------------------------------------------
// structured text format

impl PlanarNetwork {
    /// Parses the structured text format:
    ///
    /// ```text
    /// network
    /// vertex <id> boundary <k> | white | black
    /// edge <id> <from> <to>
    /// order <vertex> <edge>...
    /// sources <k>...
    /// ```
    ///
    /// Blank lines and `#` comments are accepted.
    pub fn parse(text: &str) -> Result<PlanarNetwork, NetworkError> {
        let err = |line: usize, message: String| NetworkError::Parse { line, message };
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut orders = BTreeMap::new();
        let mut sources: Option<Vec<usize>> = None;
        let mut saw_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            if !saw_header {
                if words == ["network"] {
                    saw_header = true;
                    continue;
                }
                return Err(err(line, "expected header line 'network'".into()));
            }
            match words[0] {
                "vertex" => {
                    let kind = match words.get(2) {
                        Some(&"boundary") => {
                            let k = words
                                .get(3)
                                .and_then(|w| w.parse::<usize>().ok())
                                .ok_or_else(|| err(line, "boundary vertex needs an index".into()))?;
                            VertexKind::Boundary(k)
                        }
                        Some(&"white") => VertexKind::White,
                        Some(&"black") => VertexKind::Black,
                        _ => {
                            return Err(err(
                                line,
                                "vertex kind must be 'boundary <k>', 'white' or 'black'".into(),
                            ))
                        }
                    };
                    let id = words
                        .get(1)
                        .ok_or_else(|| err(line, "vertex needs an id".into()))?;
                    vertices.push((id.to_string(), kind));
                }
                "edge" => {
                    if words.len() != 4 {
                        return Err(err(line, "edge needs 'edge <id> <from> <to>'".into()));
                    }
                    edges.push((words[1].to_string(), words[2].to_string(), words[3].to_string()));
                }
                "order" => {
                    if words.len() < 2 {
                        return Err(err(line, "order needs a vertex id".into()));
                    }
                    orders.insert(
                        words[1].to_string(),
                        words[2..].iter().map(|w| w.to_string()).collect(),
                    );
                }
                "sources" => {
                    let parsed: Result<Vec<usize>, _> =
                        words[1..].iter().map(|w| w.parse::<usize>()).collect();
                    sources =
                        Some(parsed.map_err(|_| err(line, "sources must be boundary indices".into()))?);
                }
                other => return Err(err(line, format!("unknown directive '{other}'"))),
            }
        }
        if !saw_header {
            return Err(err(1, "empty input".into()));
        }
        let sources = sources.ok_or_else(|| err(0, "missing 'sources' line".into()))?;
        Ok(PlanarNetwork::new(vertices, edges, orders, sources))
    }

    /// Canonical rendering; `parse(render(n))` reproduces the network and
    /// `render` of the result is byte-identical. Cyclic orders are rotated
    /// to start at the vertex's distinguished edge.
    pub fn render(&self) -> String {
        let mut out = String::from("network\n");
        for v in &self.vertices {
            match v.kind {
                VertexKind::Boundary(k) => out.push_str(&format!("vertex {} boundary {}\n", v.id, k)),
                VertexKind::White => out.push_str(&format!("vertex {} white\n", v.id)),
                VertexKind::Black => out.push_str(&format!("vertex {} black\n", v.id)),
            }
        }
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.id, e.from, e.to));
        }
        for (v, order) in &self.orders {
            let rotated = match self.vertex(v).map(|vx| vx.kind.clone()) {
                Some(VertexKind::White) => {
                    self.incoming(v).next().and_then(|e| rotate_to(order, &e.id))
                }
                Some(VertexKind::Black) => {
                    self.outgoing(v).next().and_then(|e| rotate_to(order, &e.id))
                }
                _ => None,
            }
            .unwrap_or_else(|| order.clone());
            out.push_str(&format!("order {} {}\n", v, rotated.join(" ")));
        }
        let list: Vec<String> = self.sources.iter().map(|k| k.to_string()).collect();
        out.push_str(&format!("sources {}\n", list.join(" ")));
        out
    }
}

fn rotate_to(order: &[String], first: &str) -> Option<Vec<String>> {
    let i = order.iter().position(|e| e == first)?;
    let mut rotated = Vec::with_capacity(order.len());
    rotated.extend_from_slice(&order[i..]);
    rotated.extend_from_slice(&order[..i]);
    Some(rotated)
}

// ---------------------------------------------------------------------------
// fixtures

/// Single edge from a source to a sink.
pub fn fixture_line() -> PlanarNetwork {
    PlanarNetwork::parse(
        "network\n\
         vertex v1 boundary 1\n\
         vertex v2 boundary 2\n\
         edge e1 v1 v2\n\
         sources 1\n",
    )
    .expect("fixture parses")
}

/// Two sources, a white fork and a black merge; one column unreachable.
pub fn fixture_fork_merge() -> PlanarNetwork {
    PlanarNetwork::parse(
        "network\n\
         vertex v1 boundary 1\n\
         vertex v2 boundary 2\n\
         vertex v3 boundary 3\n\
         vertex v4 boundary 4\n\
         vertex b1 black\n\
         vertex w1 white\n\
         edge e1 v1 w1\n\
         edge e2 w1 v4\n\
         edge e3 w1 b1\n\
         edge e4 v2 b1\n\
         edge e5 b1 v3\n\
         order w1 e1 e3 e2\n\
         order b1 e5 e3 e4\n\
         sources 1 2\n",
    )
    .expect("fixture parses")
}
