//! Foliated measurement lattices and their translation symmetries.
//!
//! A foliated lattice is the resource graph whose nodes carry single-qubit
//! measurement outcomes (or fusion outcomes, see [`crate::fusion`]) and whose
//! GF(2) adjacency determines detectors and correlation surfaces. Three
//! families are built here:
//!
//! * [`foliate_ffcc`] — the fusion complex of the Floquet color code: data
//!   chains running in time over the honeycomb vertices, interleaved with
//!   degree-2 check nodes on the scheduled edge colors.
//! * [`branched_variant`] — the same complex with every check contracted
//!   into a direct data–data bond, the form natural for branched-chain
//!   resource states.
//! * [`build_raussendorf`] — the face/edge qubits of the cubic cluster
//!   lattice, the standard benchmark foliation.
//!
//! All three live on a 3-torus; [`FoliatedLattice::translate`] exposes the
//! symmetry group used to mine detectors from a fundamental domain.

pub mod detectors;
pub mod surfaces;

pub use detectors::{find_detectors, Class, Detector, DetectorSet};
pub use surfaces::{find_correlation_surfaces, CorrelationSurface};

use crate::error::{invalid, Result};
use crate::hex::{Color, HexLattice};

/// Which foliation a lattice instance is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Family {
    /// Honeycomb Floquet complex with explicit check nodes.
    FfccFull,
    /// Check-contracted honeycomb Floquet complex.
    FfccBranched,
    /// Cubic cluster lattice.
    Raussendorf,
}

/// Role of a node in the measurement pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum NodeKind {
    /// Carries a data-qubit measurement.
    Data,
    /// Carries a check measurement (degree-2 mediator).
    Check,
}

/// Resource graph of one foliation instance on the 3-torus.
///
/// Node ids are dense `0..node_count`. Adjacency is stored CSR with sorted
/// neighbor rows; `coords` gives each node a `(a0, a1, a2)` cell coordinate
/// used for slab decompositions, with axis 2 always the time direction.
#[derive(Clone, Debug)]
pub struct FoliatedLattice {
    family: Family,
    l: u32,
    t: u32,
    kinds: Vec<NodeKind>,
    coords: Vec<[u16; 3]>,
    adj_off: Vec<u32>,
    adj_list: Vec<u32>,
}

impl FoliatedLattice {
    fn from_edges(
        family: Family,
        l: u32,
        t: u32,
        kinds: Vec<NodeKind>,
        coords: Vec<[u16; 3]>,
        edges: &[(u32, u32)],
    ) -> FoliatedLattice {
        let n = kinds.len();
        debug_assert_eq!(coords.len(), n);
        let mut deg = vec![0u32; n];
        for &(a, b) in edges {
            debug_assert_ne!(a, b);
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut adj_off = Vec::with_capacity(n + 1);
        let mut acc = 0u32;
        adj_off.push(0);
        for d in &deg {
            acc += d;
            adj_off.push(acc);
        }
        let mut fill = adj_off.clone();
        let mut adj_list = vec![0u32; acc as usize];
        for &(a, b) in edges {
            adj_list[fill[a as usize] as usize] = b;
            fill[a as usize] += 1;
            adj_list[fill[b as usize] as usize] = a;
            fill[b as usize] += 1;
        }
        for v in 0..n {
            adj_list[adj_off[v] as usize..adj_off[v + 1] as usize].sort_unstable();
        }
        FoliatedLattice {
            family,
            l,
            t,
            kinds,
            coords,
            adj_off,
            adj_list,
        }
    }

    /// Foliation family.
    pub fn family(&self) -> Family {
        self.family
    }

    /// Spatial linear size (super-cells or cubic cells per direction).
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Temporal extent (layers or cubic cells along time).
    pub fn t(&self) -> u32 {
        self.t
    }

    /// Total node count.
    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    /// Total undirected edge count.
    pub fn edge_count(&self) -> usize {
        self.adj_list.len() / 2
    }

    /// Sorted neighbors of `node`.
    pub fn neighbors(&self, node: u32) -> &[u32] {
        &self.adj_list[self.adj_off[node as usize] as usize..self.adj_off[node as usize + 1] as usize]
    }

    /// Graph degree (= valency for weighted error models).
    pub fn degree(&self, node: u32) -> usize {
        self.neighbors(node).len()
    }

    /// Adjacency test via binary search in the sorted row.
    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Node role.
    pub fn kind(&self, node: u32) -> NodeKind {
        self.kinds[node as usize]
    }

    /// Cell coordinate of a node; axis 2 is time.
    pub fn coords(&self, node: u32) -> [u16; 3] {
        self.coords[node as usize]
    }

    /// Period of a coordinate axis.
    pub fn axis_len(&self, axis: usize) -> u32 {
        if axis == 2 {
            self.t
        } else {
            self.l
        }
    }

    /// Translation period along time: the Floquet schedule repeats every 3
    /// layers, the branched surgery additionally alternates its leaf choice
    /// with layer parity, and the cubic lattice is invariant layer to layer.
    pub fn time_period(&self) -> u32 {
        match self.family {
            Family::FfccFull => 3,
            Family::FfccBranched => 6,
            Family::Raussendorf => 1,
        }
    }

    /// Whether `node` is measured in Z rather than X in the canonical graph
    /// frame. The X-measurement surgery behind the branched variant leaves a
    /// √(±iY) local Clifford on each special neighbor, so the chain-entry
    /// leaves of a branched lattice are effectively Z-measured; every other
    /// family measures all nodes in X.
    pub fn z_measured(&self, node: u32) -> bool {
        match self.family {
            Family::FfccBranched => {
                let layer = node / (6 * self.l * self.l);
                let odd_time = (layer + 1) % 2 == 1;
                let black = node % 2 == 0;
                black == odd_time
            }
            Family::FfccFull | Family::Raussendorf => false,
        }
    }

    /// Image of `node` under the lattice translation `(d0, d1, d2)` in cell
    /// coordinates. For the honeycomb families `d2` must be a multiple of
    /// [`FoliatedLattice::time_period`] to preserve the schedule.
    pub fn translate(&self, node: u32, d: [i64; 3]) -> u32 {
        let l = self.l as i64;
        let t = self.t as i64;
        match self.family {
            Family::FfccFull => {
                debug_assert_eq!(d[2].rem_euclid(3), 0);
                let per = 9 * self.l * self.l;
                let layer = node / per;
                let rem = node % per;
                let layer2 = ((layer as i64 + d[2]).rem_euclid(t)) as u32;
                let n_data = 6 * self.l * self.l;
                if rem < n_data {
                    let site = rem / 2;
                    let site2 = self.translate_site(site, d[0], d[1]);
                    layer2 * per + site2 * 2 + rem % 2
                } else {
                    let site2 = self.translate_site(rem - n_data, d[0], d[1]);
                    layer2 * per + n_data + site2
                }
            }
            Family::FfccBranched => {
                debug_assert_eq!(d[2].rem_euclid(6), 0);
                let per = 6 * self.l * self.l;
                let layer = node / per;
                let rem = node % per;
                let layer2 = ((layer as i64 + d[2]).rem_euclid(t)) as u32;
                let site2 = self.translate_site(rem / 2, d[0], d[1]);
                layer2 * per + site2 * 2 + rem % 2
            }
            Family::Raussendorf => {
                let k = node % 6;
                let cell = node / 6;
                let z = (cell % self.t) as i64;
                let y = ((cell / self.t) % self.l) as i64;
                let x = (cell / (self.t * self.l)) as i64;
                let (x2, y2, z2) = (
                    (x + d[0]).rem_euclid(l) as u32,
                    (y + d[1]).rem_euclid(l) as u32,
                    (z + d[2]).rem_euclid(t) as u32,
                );
                ((x2 * self.l + y2) * self.t + z2) * 6 + k
            }
        }
    }

    /// Translates a honeycomb site index `(cell, coset)` by super-cells.
    fn translate_site(&self, site: u32, du: i64, dv: i64) -> u32 {
        let coset = site % 3;
        let cell = site / 3;
        let l = self.l as i64;
        let u = ((cell / self.l) as i64 + du).rem_euclid(l) as u32;
        let v = ((cell % self.l) as i64 + dv).rem_euclid(l) as u32;
        (u * self.l + v) * 3 + coset
    }

    /// Structural slot of a node inside its `(cell, layer)` block; together
    /// with [`FoliatedLattice::coords`] this identifies a node on any torus
    /// of the same family.
    pub fn local_id(&self, node: u32) -> u32 {
        match self.family {
            Family::FfccFull => {
                let rem = node % (9 * self.l * self.l);
                let n_data = 6 * self.l * self.l;
                if rem < n_data {
                    rem % 6
                } else {
                    6 + (rem - n_data) % 3
                }
            }
            Family::FfccBranched => node % (6 * self.l * self.l) % 6,
            Family::Raussendorf => node % 6,
        }
    }

    /// Inverse of [`FoliatedLattice::local_id`]: the node with structural
    /// slot `local` in cell `(c0, c1)` at layer `c2` (coordinates wrap).
    pub fn node_at(&self, local: u32, c0: u32, c1: u32, c2: u32) -> u32 {
        let (u, v, layer) = (c0 % self.l, c1 % self.l, c2 % self.t);
        let cell = u * self.l + v;
        match self.family {
            Family::FfccFull => {
                let base = layer * 9 * self.l * self.l;
                if local < 6 {
                    base + (cell * 3 + local / 2) * 2 + local % 2
                } else {
                    base + 6 * self.l * self.l + cell * 3 + (local - 6)
                }
            }
            Family::FfccBranched => {
                layer * 6 * self.l * self.l + (cell * 3 + local / 2) * 2 + local % 2
            }
            Family::Raussendorf => (cell * self.t + layer) * 6 + local,
        }
    }

    /// Anchor nodes of a fundamental domain under [`translate`]: every node
    /// maps into this set by some translation.
    ///
    /// [`translate`]: FoliatedLattice::translate
    pub fn fundamental_nodes(&self) -> Vec<u32> {
        match self.family {
            Family::FfccFull => {
                let per = 9 * self.l * self.l;
                let n_data = 6 * self.l * self.l;
                let mut out = Vec::new();
                for layer in 0..self.time_period().min(self.t) {
                    for coset in 0..3 {
                        for half in 0..2 {
                            out.push(layer * per + coset * 2 + half);
                        }
                        out.push(layer * per + n_data + coset);
                    }
                }
                out
            }
            Family::FfccBranched => {
                let per = 6 * self.l * self.l;
                let mut out = Vec::new();
                for layer in 0..self.time_period().min(self.t) {
                    for coset in 0..3 {
                        for half in 0..2 {
                            out.push(layer * per + coset * 2 + half);
                        }
                    }
                }
                out
            }
            Family::Raussendorf => (0..6).collect(),
        }
    }

    /// All schedule-preserving translations as coordinate shifts.
    pub fn translations(&self) -> Vec<[i64; 3]> {
        let step = self.time_period() as i64;
        let mut out = Vec::new();
        for d0 in 0..self.l as i64 {
            for d1 in 0..self.l as i64 {
                let mut d2 = 0;
                while d2 < self.t as i64 {
                    out.push([d0, d1, d2]);
                    d2 += step;
                }
            }
        }
        out
    }
}

/// FFCC data-node id for honeycomb vertex `v` at 0-based layer `layer`.
pub fn ffcc_data_node(l: u32, vertex: u32, layer: u32) -> u32 {
    layer * 9 * l * l + vertex
}

/// FFCC check-node id for honeycomb site `s` at 0-based layer `layer`.
pub fn ffcc_check_node(l: u32, site: u32, layer: u32) -> u32 {
    layer * 9 * l * l + 6 * l * l + site
}

/// Branched-variant data-node id for vertex `v` at 0-based layer `layer`.
pub fn branched_data_node(l: u32, vertex: u32, layer: u32) -> u32 {
    layer * 6 * l * l + vertex
}

/// Raussendorf qubit id: cell `(x, y, z)`, slot `k` (0–2 the faces normal to
/// x/y/z, 3–5 the edges along x/y/z).
pub fn rhg_qubit(l: u32, t: u32, x: u32, y: u32, z: u32, k: u32) -> u32 {
    (((x % l) * l + y % l) * t + z % t) * 6 + k
}

/// Foliates the honeycomb Floquet complex over `t_layers` measurement layers.
///
/// Per layer there are `6L²` data nodes (one per honeycomb vertex) and `3L²`
/// check nodes on the edges of the scheduled color. Data nodes link to their
/// own next-layer copy (periodically in time) and to the check on their
/// unique scheduled-color edge, so every data node has degree 3 and every
/// check degree 2. `t_layers` must be a positive multiple of 6 so both the
/// 3-step color schedule and the 2-step fusion parity close around the torus.
pub fn foliate_ffcc(hex: &HexLattice, t_layers: u32) -> Result<FoliatedLattice> {
    if t_layers == 0 || t_layers % 6 != 0 {
        return Err(invalid(format!(
            "FFCC foliation needs T ≡ 0 (mod 6), got {t_layers}"
        )));
    }
    let l = hex.l();
    let per = 9 * l * l;
    let n_data = 6 * l * l;
    let n = (per * t_layers) as usize;
    let mut kinds = vec![NodeKind::Data; n];
    let mut coords = vec![[0u16; 3]; n];
    let mut edges = Vec::with_capacity((12 * l * l * t_layers) as usize);
    for layer in 0..t_layers {
        let base = layer * per;
        for vtx in 0..n_data {
            let node = base + vtx;
            let site = vtx / 2;
            coords[node as usize] = [(site / 3 / l) as u16, (site / 3 % l) as u16, layer as u16];
            // Temporal bond to the next layer (periodic).
            let up = ((layer + 1) % t_layers) * per + vtx;
            edges.push((node, up));
        }
        // Checks on the scheduled color; layer 0 carries time t = 1.
        let color = Color::schedule(layer + 1);
        for (site, edge) in hex.edges_of_color(color) {
            let node = base + n_data + site;
            kinds[node as usize] = NodeKind::Check;
            coords[node as usize] = [(site / 3 / l) as u16, (site / 3 % l) as u16, layer as u16];
            let (a, b) = hex.edge_endpoints(edge);
            edges.push((node, base + a));
            edges.push((node, base + b));
        }
    }
    Ok(FoliatedLattice::from_edges(
        Family::FfccFull,
        l,
        t_layers,
        kinds,
        coords,
        &edges,
    ))
}

/// X-measures every degree-2 check of an FFCC lattice out of the graph,
/// leaving the resource graph natural to branched-chain resource states.
///
/// Each check is removed by the graph-state X-measurement rule (local
/// complementation around a special neighbor, then around the measured node,
/// then deletion, then the first complementation again). The special
/// neighbor is the chain-entry endpoint of the scheduled edge — the vertex
/// whose upward temporal bond is a fusion at that layer — so entries become
/// the leaves and exits the backbone of the resulting branched chains. Node
/// ids are re-packed to `6L²` per layer; coordinates are preserved.
pub fn branched_variant(full: &FoliatedLattice) -> Result<FoliatedLattice> {
    if full.family != Family::FfccFull {
        return Err(invalid("branched variant is defined for the FFCC lattice"));
    }
    let (l, t) = (full.l, full.t);
    let per_full = 9 * l * l;
    let n_data = 6 * l * l;
    let mut adj: Vec<std::collections::BTreeSet<u32>> = (0..full.node_count() as u32)
        .map(|v| full.neighbors(v).iter().copied().collect())
        .collect();
    fn toggle(adj: &mut [std::collections::BTreeSet<u32>], x: u32, y: u32) {
        if !adj[x as usize].remove(&y) {
            adj[x as usize].insert(y);
        }
        if !adj[y as usize].remove(&x) {
            adj[y as usize].insert(x);
        }
    }
    fn complement(adj: &mut [std::collections::BTreeSet<u32>], v: u32) {
        let nbrs: Vec<u32> = adj[v as usize].iter().copied().collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                toggle(adj, nbrs[i], nbrs[j]);
            }
        }
    }
    for layer in 0..t {
        // Layer 0 carries time t = 1; black (Up) vertices fuse above odd
        // times, white above even, so the entry — whose upward bond is the
        // fusion — is black at odd times and white at even times.
        let entry_is_black = (layer + 1) % 2 == 1;
        for site in 0..3 * l * l {
            let check = layer * per_full + n_data + site;
            let ends: Vec<u32> = adj[check as usize].iter().copied().collect();
            debug_assert_eq!(ends.len(), 2, "check {check} must still be 2-valent");
            // Vertex parity, not raw id parity: the 9L² layer stride is odd
            // for odd L and would flip the bicolor reading on odd layers.
            let black = ends
                .iter()
                .copied()
                .find(|&e| (e % per_full) % 2 == 0)
                .expect("Up endpoint");
            let white = ends
                .iter()
                .copied()
                .find(|&e| (e % per_full) % 2 == 1)
                .expect("Down endpoint");
            let special = if entry_is_black { black } else { white };
            complement(&mut adj, special);
            complement(&mut adj, check);
            for w in adj[check as usize].clone() {
                toggle(&mut adj, check, w);
            }
            complement(&mut adj, special);
        }
    }
    let n = (n_data * t) as usize;
    let kinds = vec![NodeKind::Data; n];
    let coords: Vec<[u16; 3]> = (0..n as u32)
        .map(|node| full.coords(node / n_data * per_full + node % n_data))
        .collect();
    let pack = |node: u32| -> u32 {
        let (layer, rem) = (node / per_full, node % per_full);
        debug_assert!(rem < n_data, "expected a data node");
        layer * n_data + rem
    };
    let mut edges = Vec::new();
    for v in 0..full.node_count() as u32 {
        if v % per_full >= n_data {
            debug_assert!(adj[v as usize].is_empty(), "check {v} survived surgery");
            continue;
        }
        for &w in adj[v as usize].iter() {
            debug_assert!(w % per_full < n_data, "edge into a deleted check");
            if v < w {
                edges.push((pack(v), pack(w)));
            }
        }
    }
    Ok(FoliatedLattice::from_edges(
        Family::FfccBranched,
        l,
        t,
        kinds,
        coords,
        &edges,
    ))
}

/// Builds the cubic cluster lattice on an `L × L × T` torus of cells.
///
/// Each cell contributes six qubits — three faces and three edges — and each
/// face is bonded to the four edges on its boundary, giving uniform valency 4.
pub fn build_raussendorf(l: u32, t_cells: u32) -> Result<FoliatedLattice> {
    if l < 2 || t_cells < 2 {
        return Err(invalid(format!(
            "cubic lattice needs L ≥ 2 and T ≥ 2, got L={l}, T={t_cells}"
        )));
    }
    let n = (l * l * t_cells * 6) as usize;
    let kinds = vec![NodeKind::Data; n];
    let mut coords = vec![[0u16; 3]; n];
    let mut edges = Vec::with_capacity(2 * n);
    let q = |x: u32, y: u32, z: u32, k: u32| rhg_qubit(l, t_cells, x, y, z, k);
    for x in 0..l {
        for y in 0..l {
            for z in 0..t_cells {
                for k in 0..6 {
                    coords[q(x, y, z, k) as usize] = [x as u16, y as u16, z as u16];
                }
                // Face boundaries; slots 3/4/5 are the edges along x/y/z.
                edges.push((q(x, y, z, 0), q(x, y, z, 4)));
                edges.push((q(x, y, z, 0), q(x, y, z + 1, 4)));
                edges.push((q(x, y, z, 0), q(x, y, z, 5)));
                edges.push((q(x, y, z, 0), q(x, y + 1, z, 5)));
                edges.push((q(x, y, z, 1), q(x, y, z, 5)));
                edges.push((q(x, y, z, 1), q(x + 1, y, z, 5)));
                edges.push((q(x, y, z, 1), q(x, y, z, 3)));
                edges.push((q(x, y, z, 1), q(x, y, z + 1, 3)));
                edges.push((q(x, y, z, 2), q(x, y, z, 3)));
                edges.push((q(x, y, z, 2), q(x, y + 1, z, 3)));
                edges.push((q(x, y, z, 2), q(x, y, z, 4)));
                edges.push((q(x, y, z, 2), q(x + 1, y, z, 4)));
            }
        }
    }
    Ok(FoliatedLattice::from_edges(
        Family::Raussendorf,
        l,
        t_cells,
        kinds,
        coords,
        &edges,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ffcc(l: u32, t: u32) -> FoliatedLattice {
        foliate_ffcc(&HexLattice::new(l).unwrap(), t).unwrap()
    }

    #[test]
    fn ffcc_counts_and_degrees() {
        let f = ffcc(2, 6);
        assert_eq!(f.node_count(), 216);
        let data = (0..216).filter(|&n| f.kind(n) == NodeKind::Data).count();
        assert_eq!(data, 144);
        assert_eq!(f.node_count() - data, 72);
        assert_eq!(f.edge_count(), 288);
        for n in 0..f.node_count() as u32 {
            match f.kind(n) {
                NodeKind::Data => assert_eq!(f.degree(n), 3, "data node {n}"),
                NodeKind::Check => assert_eq!(f.degree(n), 2, "check node {n}"),
            }
        }
    }

    #[test]
    fn ffcc_rejects_bad_t() {
        let hex = HexLattice::new(2).unwrap();
        assert!(foliate_ffcc(&hex, 0).is_err());
        assert!(foliate_ffcc(&hex, 4).is_err());
        assert!(foliate_ffcc(&hex, 9).is_err());
    }

    #[test]
    fn ffcc_checks_follow_schedule() {
        let hex = HexLattice::new(2).unwrap();
        let f = foliate_ffcc(&hex, 6).unwrap();
        for layer in 0..6u32 {
            let color = Color::schedule(layer + 1);
            for (site, edge) in hex.edges_of_color(color) {
                let check = ffcc_check_node(2, site, layer);
                let (a, b) = hex.edge_endpoints(edge);
                let want: HashSet<u32> = [ffcc_data_node(2, a, layer), ffcc_data_node(2, b, layer)]
                    .into_iter()
                    .collect();
                let got: HashSet<u32> = f.neighbors(check).iter().copied().collect();
                assert_eq!(got, want, "check {check} layer {layer}");
            }
        }
        // Layer colors cycle blue, green, red.
        assert_eq!(Color::schedule(1), Color::Blue);
        assert_eq!(Color::schedule(2), Color::Green);
        assert_eq!(Color::schedule(3), Color::Red);
        assert_eq!(Color::schedule(4), Color::Blue);
    }

    #[test]
    fn ffcc_temporal_bonds_wrap() {
        let f = ffcc(2, 6);
        let per = 9 * 4;
        for vtx in [0u32, 5, 23] {
            let top = ffcc_data_node(2, vtx, 5);
            assert!(f.adjacent(top, vtx), "vertex {vtx} should wrap to layer 0");
            for layer in 0..5 {
                assert!(f.adjacent(ffcc_data_node(2, vtx, layer), ffcc_data_node(2, vtx, layer + 1)));
            }
            let _ = per;
        }
    }

    #[test]
    fn branched_counts_and_degrees() {
        let f = branched_variant(&ffcc(2, 6)).unwrap();
        assert_eq!(f.family(), Family::FfccBranched);
        assert_eq!(f.node_count(), 144);
        assert_eq!(f.edge_count(), 216);
        // Caterpillar structure: chain-entry leaves hang off exit backbones
        // that also carry the leaves' rewired temporal bonds.
        for n in 0..f.node_count() as u32 {
            assert_eq!(f.kind(n), NodeKind::Data);
            if f.z_measured(n) {
                assert_eq!(f.degree(n), 1, "leaf {n}");
                let partner = f.neighbors(n)[0];
                assert_eq!(partner / 24, n / 24, "leaf bonds in its own layer");
                assert!(!f.z_measured(partner));
            } else {
                assert_eq!(f.degree(n), 5, "backbone {n}");
            }
        }
        let leaves = (0..144).filter(|&n| f.z_measured(n)).count();
        assert_eq!(leaves, 72);
    }

    #[test]
    fn branched_contracts_each_check() {
        let full = ffcc(2, 6);
        let b = branched_variant(&full).unwrap();
        // Every FFCC check's two endpoints become adjacent in the variant.
        let n_data = 24;
        for layer in 0..6u32 {
            for site in 0..12u32 {
                let ends = full.neighbors(ffcc_check_node(2, site, layer));
                let pack = |n: u32| n / 36 * n_data + n % 36;
                assert!(b.adjacent(pack(ends[0]), pack(ends[1])));
            }
        }
    }

    #[test]
    fn raussendorf_counts_and_valency() {
        let f = build_raussendorf(2, 2).unwrap();
        assert_eq!(f.node_count(), 48);
        assert_eq!(f.edge_count(), 96);
        for n in 0..f.node_count() as u32 {
            assert_eq!(f.degree(n), 4, "qubit {n}");
        }
        assert!(build_raussendorf(1, 2).is_err());
    }

    #[test]
    fn raussendorf_faces_meet_edges_only() {
        let f = build_raussendorf(3, 2).unwrap();
        for n in 0..f.node_count() as u32 {
            let is_face = n % 6 < 3;
            for &m in f.neighbors(n) {
                assert_eq!(m % 6 < 3, !is_face, "face/edge bipartition violated");
            }
        }
    }

    #[test]
    fn translations_are_adjacency_automorphisms() {
        for f in [ffcc(2, 6), branched_variant(&ffcc(2, 6)).unwrap(), build_raussendorf(2, 2).unwrap()] {
            for d in [[1, 0, 0], [0, 1, 0], [0, 0, f.time_period() as i64], [1, 1, f.time_period() as i64]] {
                for n in 0..f.node_count() as u32 {
                    let tn = f.translate(n, d);
                    assert_eq!(f.kind(tn), f.kind(n));
                    let mut img: Vec<u32> = f.neighbors(n).iter().map(|&m| f.translate(m, d)).collect();
                    img.sort_unstable();
                    assert_eq!(img.as_slice(), f.neighbors(tn), "family {:?} d {:?} node {n}", f.family(), d);
                }
            }
        }
    }

    #[test]
    fn fundamental_domain_reaches_every_node() {
        for f in [ffcc(2, 6), build_raussendorf(2, 2).unwrap()] {
            let anchors: HashSet<u32> = f.fundamental_nodes().into_iter().collect();
            let mut reached: HashSet<u32> = HashSet::new();
            for &a in &anchors {
                for d in f.translations() {
                    reached.insert(f.translate(a, d));
                }
            }
            assert_eq!(reached.len(), f.node_count());
        }
    }

    #[test]
    fn local_id_round_trips_with_coords() {
        for f in [ffcc(2, 6), branched_variant(&ffcc(2, 6)).unwrap(), build_raussendorf(2, 3).unwrap()] {
            for n in 0..f.node_count() as u32 {
                let [a, b, c] = f.coords(n);
                assert_eq!(
                    f.node_at(f.local_id(n), a as u32, b as u32, c as u32),
                    n,
                    "family {:?} node {n}",
                    f.family()
                );
            }
        }
    }

    #[test]
    fn translation_group_has_expected_order() {
        let f = ffcc(2, 12);
        assert_eq!(f.translations().len(), (2 * 2 * (12 / 3)) as usize);
        let r = build_raussendorf(2, 3).unwrap();
        assert_eq!(r.translations().len(), (2 * 2 * 3) as usize);
    }
}
