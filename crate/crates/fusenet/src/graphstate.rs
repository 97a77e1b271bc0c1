//! Graph states and their rewrite calculus.
//!
//! A graph state on nodes `V` is stabilized by `R_v = X_v ∏_{q∈Δv} Z_q`, so
//! the state is fully described by the adjacency structure kept here. The
//! module implements the two rewrites the toolkit relies on — local
//! complementation and the Pauli-X measurement rule — plus the recursive
//! emitter program that grows branched chains, and an exhaustive
//! LC-equivalence check for small instances.
//!
//! All operations have value semantics: they return new graphs and never
//! mutate shared state.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

/// Budget for exhaustive LC-orbit enumeration before giving up.
const ORBIT_BUDGET: usize = 1 << 18;

/// Optional per-node role tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NodeLabel {
    /// Matter qubit driving an emitter circuit.
    Spin,
    /// Emitted photonic qubit.
    Photon,
    /// Lattice data qubit.
    Data,
    /// Lattice check qubit.
    Check,
}

/// Undirected simple graph representing a graph state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphState {
    adj: BTreeMap<u32, BTreeSet<u32>>,
    labels: BTreeMap<u32, NodeLabel>,
}

impl GraphState {
    /// Empty graph.
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with nodes `0..n` and no edges.
    pub fn with_nodes(n: u32) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_node(v);
        }
        g
    }

    /// Builds a graph from an edge list, adding endpoints as needed.
    pub fn from_edges(edges: &[(u32, u32)]) -> Self {
        let mut g = Self::new();
        for &(u, v) in edges {
            g.add_node(u);
            g.add_node(v);
            g.add_edge(u, v);
        }
        g
    }

    /// Inserts a node (no-op if present).
    pub fn add_node(&mut self, v: u32) {
        self.adj.entry(v).or_default();
    }

    /// Tags a node with a label; the node is created if absent.
    pub fn set_label(&mut self, v: u32, label: NodeLabel) {
        self.add_node(v);
        self.labels.insert(v, label);
    }

    /// Reads a node's label.
    pub fn label(&self, v: u32) -> Option<NodeLabel> {
        self.labels.get(&v).copied()
    }

    /// Inserts an undirected edge. Self-loops are rejected.
    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert_ne!(u, v, "graph states have no self-loops");
        self.add_node(u);
        self.add_node(v);
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
    }

    /// Toggles the edge `u–v`.
    pub fn toggle_edge(&mut self, u: u32, v: u32) {
        if self.has_edge(u, v) {
            self.adj.get_mut(&u).unwrap().remove(&v);
            self.adj.get_mut(&v).unwrap().remove(&u);
        } else {
            self.add_edge(u, v);
        }
    }

    /// Removes a node and its incident edges.
    pub fn remove_node(&mut self, v: u32) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for w in nbrs {
                self.adj.get_mut(&w).unwrap().remove(&v);
            }
        }
        self.labels.remove(&v);
    }

    /// True if the node exists.
    pub fn has_node(&self, v: u32) -> bool {
        self.adj.contains_key(&v)
    }

    /// True if the edge exists.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Node ids in increasing order.
    pub fn nodes(&self) -> impl Iterator<Item = u32> + '_ {
        self.adj.keys().copied()
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    /// Neighborhood of `v`.
    pub fn neighbors(&self, v: u32) -> Result<&BTreeSet<u32>> {
        self.adj
            .get(&v)
            .ok_or_else(|| invalid(format!("unknown node id {v}")))
    }

    /// Degree of `v`.
    pub fn degree(&self, v: u32) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// In-place local complementation (internal fast path for orbit search).
    fn lc_mut(&mut self, v: u32) {
        let nbrs: Vec<u32> = self.adj[&v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                self.toggle_edge(a, b);
            }
        }
    }

    /// Local complementation at `v`: complements the subgraph induced by the
    /// neighborhood of `v`; all other edges are unchanged.
    pub fn local_complement(&self, v: u32) -> Result<GraphState> {
        self.neighbors(v)?;
        let mut g = self.clone();
        g.lc_mut(v);
        Ok(g)
    }

    /// Pauli-Z measurement rule: plain vertex deletion.
    pub fn measure_z(&self, v: u32) -> Result<GraphState> {
        self.neighbors(v)?;
        let mut g = self.clone();
        g.remove_node(v);
        Ok(g)
    }

    /// Pauli-Y measurement rule: local complementation then deletion.
    pub fn measure_y(&self, v: u32) -> Result<GraphState> {
        let mut g = self.local_complement(v)?;
        g.remove_node(v);
        Ok(g)
    }

    /// Pauli-X measurement rule, up to local Cliffords on the survivors.
    ///
    /// `special_neighbor` must be adjacent to `v` (it parameterizes the local
    /// Clifford frame of the result); for isolated `v` it is ignored. The
    /// rewrite is LC(s) ∘ LC(v) ∘ delete(v) ∘ LC(s) applied right-to-left:
    /// first LC(s), then LC(v), then delete `v`, then LC(s) again.
    pub fn measure_x(&self, v: u32, special_neighbor: u32) -> Result<GraphState> {
        let nbrs = self.neighbors(v)?;
        if nbrs.is_empty() {
            let mut g = self.clone();
            g.remove_node(v);
            return Ok(g);
        }
        let s = special_neighbor;
        if !nbrs.contains(&s) {
            return Err(invalid(format!(
                "special neighbor {s} is not adjacent to measured node {v}"
            )));
        }
        let mut g = self.clone();
        g.lc_mut(s);
        g.lc_mut(v);
        g.remove_node(v);
        g.lc_mut(s);
        Ok(g)
    }

    /// Serializes to the line-based text format: a `nodes N` header, one `u`
    /// line per isolated node, and one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "nodes {}", self.node_count()).unwrap();
        for (&v, nbrs) in &self.adj {
            if nbrs.is_empty() {
                writeln!(out, "{v}").unwrap();
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the [`GraphState::to_text`] format.
    pub fn from_text(text: &str) -> Result<GraphState> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| invalid("empty graph text"))?;
        let n: usize = header
            .strip_prefix("nodes ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| invalid(format!("bad header line: {header:?}")))?;
        let mut g = GraphState::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .unwrap()
                .parse()
                .map_err(|_| invalid(format!("bad node id in line {line:?}")))?;
            match it.next() {
                None => g.add_node(u),
                Some(vtok) => {
                    let v: u32 = vtok
                        .parse()
                        .map_err(|_| invalid(format!("bad node id in line {line:?}")))?;
                    g.add_edge(u, v);
                }
            }
        }
        if g.node_count() != n {
            return Err(invalid(format!(
                "header claims {n} nodes, body defines {}",
                g.node_count()
            )));
        }
        Ok(g)
    }

    /// Canonical fingerprint of the labeled-by-id graph (for orbit hashing).
    fn fingerprint(&self) -> Vec<(u32, u32)> {
        self.edges()
    }
}

/// One instruction of an emitter program.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instruction {
    /// Emit `count` photons `first..first+count` entangled with the spin.
    Emit { first: u32, count: u32 },
    /// Local complementation on a node, realized by local Cliffords.
    Lc { node: u32 },
    /// Basis rotation on the spin qubit.
    HSpin,
}

/// Ordered instruction list generating a photonic graph state from one spin.
///
/// The spin is node 0; photons are numbered from 1 in emission order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmitterProgram {
    /// Instructions in execution order.
    pub instructions: Vec<Instruction>,
}

impl EmitterProgram {
    /// Number of photons emitted by the program.
    pub fn photon_count(&self) -> u32 {
        self.instructions
            .iter()
            .map(|i| match i {
                Instruction::Emit { count, .. } => *count,
                _ => 0,
            })
            .sum()
    }

    /// Applies the program's graph semantics starting from a lone spin node.
    ///
    /// EMIT adds the photon node(s) edged to the spin; LC rewrites the graph;
    /// H on the spin leaves the adjacency unchanged (it only rotates the
    /// local frame, which graph semantics do not track).
    pub fn apply(&self) -> Result<GraphState> {
        let mut g = GraphState::new();
        g.add_node(0);
        g.set_label(0, NodeLabel::Spin);
        for instr in &self.instructions {
            match *instr {
                Instruction::Emit { first, count } => {
                    for p in first..first + count {
                        if g.has_node(p) {
                            return Err(invalid(format!("photon {p} emitted twice")));
                        }
                        g.add_edge(0, p);
                        g.set_label(p, NodeLabel::Photon);
                    }
                }
                Instruction::Lc { node } => {
                    if !g.has_node(node) {
                        return Err(invalid(format!("LC on unknown node {node}")));
                    }
                    g.lc_mut(node);
                }
                Instruction::HSpin => {}
            }
        }
        Ok(g)
    }

    /// One-instruction-per-line text form (`EMIT id [count]`, `LC id`, `H`).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for instr in &self.instructions {
            match *instr {
                Instruction::Emit { first, count } if count == 1 => {
                    writeln!(out, "EMIT {first}").unwrap()
                }
                Instruction::Emit { first, count } => {
                    writeln!(out, "EMIT {first} {count}").unwrap()
                }
                Instruction::Lc { node } => writeln!(out, "LC {node}").unwrap(),
                Instruction::HSpin => writeln!(out, "H").unwrap(),
            }
        }
        out
    }

    /// Parses the [`EmitterProgram::to_text`] format.
    pub fn from_text(text: &str) -> Result<EmitterProgram> {
        let mut instructions = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| -> Result<u32> {
                s.parse().map_err(|_| invalid(format!("bad id in {line:?}")))
            };
            match toks.as_slice() {
                ["EMIT", first] => instructions.push(Instruction::Emit {
                    first: parse(first)?,
                    count: 1,
                }),
                ["EMIT", first, count] => instructions.push(Instruction::Emit {
                    first: parse(first)?,
                    count: parse(count)?,
                }),
                ["LC", node] => instructions.push(Instruction::Lc { node: parse(node)? }),
                ["H"] => instructions.push(Instruction::HSpin),
                _ => return Err(invalid(format!("bad instruction line {line:?}"))),
            }
        }
        Ok(EmitterProgram { instructions })
    }
}

/// Generates the branched-chain emitter program and its output graph.
///
/// Each layer appends `EMIT leaf; LC(spin); LC(leaf); EMIT backbone` — the
/// four-step recursion that grows one branch point per layer. The returned
/// graph has `2·n_layers + 1` nodes and is LC-equivalent to a caterpillar:
/// a backbone path with one leaf per backbone node.
pub fn generate_branched_chain(n_layers: u32) -> Result<(EmitterProgram, GraphState)> {
    generate_branched_chain_multi(n_layers, 1)
}

/// [`generate_branched_chain`] with `leaves_per_branch` photons per branch
/// point (the repeated-EMIT extension).
pub fn generate_branched_chain_multi(
    n_layers: u32,
    leaves_per_branch: u32,
) -> Result<(EmitterProgram, GraphState)> {
    if leaves_per_branch == 0 {
        return Err(invalid("leaves_per_branch must be ≥ 1"));
    }
    let mut prog = EmitterProgram::default();
    let mut next_photon = 1u32;
    for _ in 0..n_layers {
        let pivot = next_photon;
        prog.instructions.push(Instruction::Emit {
            first: pivot,
            count: 1,
        });
        next_photon += 1;
        prog.instructions.push(Instruction::Lc { node: 0 });
        prog.instructions.push(Instruction::Lc { node: pivot });
        // The closing emission(s): the next layer's rewrites turn these into
        // the leaves of its branch point, so repeating this EMIT is what
        // yields multi-leaf branches.
        prog.instructions.push(Instruction::Emit {
            first: next_photon,
            count: leaves_per_branch,
        });
        next_photon += leaves_per_branch;
    }
    let graph = prog.apply()?;
    Ok((prog, graph))
}

/// Reference caterpillar graph: a backbone path of `n` nodes with
/// `leaves_per_branch` leaves on each backbone node.
///
/// Backbone nodes are `0..n`; the leaves of backbone node `b` follow in a
/// contiguous block. This is the explicit branched-chain target the emitter
/// recursion is checked against (up to LC and relabeling).
pub fn caterpillar(n: u32, leaves_per_branch: u32) -> GraphState {
    let mut g = GraphState::new();
    for b in 0..n {
        g.add_node(b);
        if b > 0 {
            g.add_edge(b - 1, b);
        }
        for l in 0..leaves_per_branch {
            let leaf = n + b * leaves_per_branch + l;
            g.add_edge(b, leaf);
        }
    }
    g
}

/// Relabels `g` through the map `old → new`.
fn relabel(g: &GraphState, map: &BTreeMap<u32, u32>) -> Result<GraphState> {
    let mut out = GraphState::new();
    for v in g.nodes() {
        let &nv = map
            .get(&v)
            .ok_or_else(|| invalid(format!("bijection misses node {v}")))?;
        if out.has_node(nv) {
            return Err(invalid(format!("bijection maps two nodes onto {nv}")));
        }
        out.add_node(nv);
    }
    for (u, v) in g.edges() {
        out.add_edge(map[&u], map[&v]);
    }
    Ok(out)
}

/// Enumerates the LC orbit of `g` (as edge-list fingerprints).
///
/// Fails with a resource-limit error if the orbit exceeds the budget.
fn lc_orbit(g: &GraphState) -> Result<Vec<GraphState>> {
    let nodes: Vec<u32> = g.nodes().collect();
    let mut seen: HashSet<Vec<(u32, u32)>> = HashSet::new();
    let mut queue: VecDeque<GraphState> = VecDeque::new();
    let mut orbit = Vec::new();
    seen.insert(g.fingerprint());
    queue.push_back(g.clone());
    while let Some(cur) = queue.pop_front() {
        orbit.push(cur.clone());
        for &v in &nodes {
            let mut next = cur.clone();
            next.lc_mut(v);
            if seen.insert(next.fingerprint()) {
                if seen.len() > ORBIT_BUDGET {
                    return Err(Error::ResourceLimit(format!(
                        "LC orbit exceeds {ORBIT_BUDGET} graphs"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(orbit)
}

/// Exhaustive LC-equivalence under a caller-supplied node bijection.
///
/// `bijection` maps node ids of `g1` to node ids of `g2`; the orbit of `g1`
/// is enumerated and searched for the relabeled image of `g2`.
pub fn lc_equivalent(
    g1: &GraphState,
    g2: &GraphState,
    bijection: &BTreeMap<u32, u32>,
) -> Result<bool> {
    if g1.node_count() != g2.node_count() {
        return Err(invalid(format!(
            "node-count mismatch: {} vs {}",
            g1.node_count(),
            g2.node_count()
        )));
    }
    let inverse: BTreeMap<u32, u32> = bijection.iter().map(|(&a, &b)| (b, a)).collect();
    if inverse.len() != bijection.len() {
        return Err(invalid("bijection is not injective"));
    }
    let target = relabel(g2, &inverse)?;
    if target.nodes().ne(g1.nodes()) {
        return Err(invalid("bijection does not map g1's node set onto g2's"));
    }
    let want = target.fingerprint();
    Ok(lc_orbit(g1)?.iter().any(|h| h.fingerprint() == want))
}

/// Exhaustive LC-equivalence up to an arbitrary relabeling.
///
/// Every orbit member of `g1` is canonicalized under graph isomorphism and
/// compared against the canonical form of `g2`.
pub fn lc_equivalent_any(g1: &GraphState, g2: &GraphState) -> Result<bool> {
    if g1.node_count() != g2.node_count() {
        return Err(invalid(format!(
            "node-count mismatch: {} vs {}",
            g1.node_count(),
            g2.node_count()
        )));
    }
    let want = canonical_form(g2);
    Ok(lc_orbit(g1)?.iter().any(|h| canonical_form(h) == want))
}

/// Canonical edge list under graph isomorphism (individualize-and-refine).
///
/// Only used on ≤ 12-node graphs, where the refinement search is tiny.
fn canonical_form(g: &GraphState) -> Vec<(u32, u32)> {
    let nodes: Vec<u32> = g.nodes().collect();
    let n = nodes.len();
    let index: HashMap<u32, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&v| g.adj[&v].iter().map(|w| index[w]).collect())
        .collect();

    // Iteratively refine colors by multisets of neighbor colors.
    fn refine(adj: &[Vec<usize>], mut colors: Vec<u64>) -> Vec<u64> {
        loop {
            let mut sig: Vec<(u64, Vec<u64>)> = adj
                .iter()
                .enumerate()
                .map(|(v, nbrs)| {
                    let mut ns: Vec<u64> = nbrs.iter().map(|&w| colors[w]).collect();
                    ns.sort_unstable();
                    (colors[v], ns)
                })
                .collect();
            let mut sorted = sig.clone();
            sorted.sort();
            sorted.dedup();
            let new: Vec<u64> = sig
                .drain(..)
                .map(|s| sorted.binary_search(&s).unwrap() as u64)
                .collect();
            if new == colors {
                return colors;
            }
            colors = new;
        }
    }

    // Depth-first individualization until the coloring is discrete; the
    // canonical form is the lexicographically smallest resulting edge list.
    fn search(adj: &[Vec<usize>], colors: Vec<u64>, best: &mut Option<Vec<(u32, u32)>>) {
        let n = adj.len();
        let colors = refine(adj, colors);
        let mut cells: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            cells.entry(c).or_default().push(v);
        }
        if let Some((_, cell)) = cells.iter().find(|(_, vs)| vs.len() > 1) {
            for &v in cell {
                let mut next = colors.clone();
                next[v] = n as u64 + 1; // Fresh color individualizes v.
                search(adj, next, best);
            }
            return;
        }
        // Discrete: colors define a permutation (all colors distinct in 0..n).
        let mut perm = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            perm[v] = c as usize;
        }
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (v, nbrs) in adj.iter().enumerate() {
            for &w in nbrs {
                let (a, b) = (perm[v] as u32, perm[w] as u32);
                if a < b {
                    edges.push((a, b));
                }
            }
        }
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
    }

    let mut best = None;
    search(&adj, vec![0; n], &mut best);
    best.unwrap_or_default()
}
