//! Closed-chain decomposition of the full FFCC lattice.
//!
//! The full FFCC cluster state is a fusion network of `3L` closed linear
//! chains, each `3LT` qubits long.  A chain snakes through the foliation:
//! at layer `t` it enters on a vertex of the entry bicolor (black on even
//! layers, white on odd), hops across the scheduled check of that layer to
//! the opposite bicolor, then rises to layer `t + 1` where the bicolors
//! have swapped roles.  After `LT` such steps it closes on itself.
//!
//! Every data qubit therefore carries exactly one temporal fusion (the
//! rotated `{X⊗Z, Z⊗X}` kind, which reproduces a bond plus two X
//! measurements), and every check qubit is a single X measurement funded
//! by the chain itself.  The network graph — chain bonds plus fusion
//! bonds — is exactly the lattice adjacency, so detectors and
//! correlation surfaces transfer verbatim through the node dictionary.

use crate::error::{invalid, Result};
use crate::hex::{Color, HexLattice};
use crate::lattice::{
    ffcc_check_node, ffcc_data_node, find_correlation_surfaces, find_detectors, Family,
    FoliatedLattice, NodeKind,
};

use super::{
    assemble, BiasTag, Binding, Fusion, FusionNetwork, FusionOps, Len, NetworkLayout, Resource,
    ResourceKind, ResourceSpec,
};

/// The chain walk over a full FFCC lattice: per chain, the lattice nodes
/// in slot order `(entry, check, exit)` repeated `LT` times.
pub(crate) fn walk_chains(f: &FoliatedLattice) -> Result<Vec<Vec<u32>>> {
    let (l, t) = (f.l(), f.t());
    let hex = HexLattice::new(l)?;
    let n_vertices = hex.vertex_count();
    let steps = (l * t) as usize;

    // Entries are indexed by (vertex, layer); each is consumed by one chain.
    let mut seen = vec![false; (n_vertices * t) as usize];
    let mut chains = Vec::with_capacity(3 * l as usize);
    for start in (0..n_vertices).step_by(2) {
        // Black vertices are the layer-0 entries; skip ones already walked.
        if seen[start as usize] {
            continue;
        }
        let mut nodes = Vec::with_capacity(3 * steps);
        let (mut v, mut layer) = (start, 0u32);
        loop {
            seen[(layer * n_vertices + v) as usize] = true;
            let edge = hex.vertex_edge_of_color(v, Color::schedule(layer + 1));
            let (a, b) = hex.edge_endpoints(edge);
            let w = if a == v { b } else { a };
            nodes.push(ffcc_data_node(l, v, layer));
            nodes.push(ffcc_check_node(l, edge / 3, layer));
            nodes.push(ffcc_data_node(l, w, layer));
            v = w;
            layer = (layer + 1) % t;
            if v == start && layer == 0 {
                break;
            }
            if nodes.len() > 3 * steps {
                return Err(crate::error::internal("chain walk failed to close"));
            }
        }
        if nodes.len() != 3 * steps {
            return Err(crate::error::internal(format!(
                "chain closed after {} slots, expected {}",
                nodes.len(),
                3 * steps
            )));
        }
        chains.push(nodes);
    }
    if chains.len() != 3 * l as usize {
        return Err(crate::error::internal(format!(
            "found {} chains, expected {}",
            chains.len(),
            3 * l
        )));
    }
    Ok(chains)
}

/// Lay out the closed-chain network for a full FFCC lattice.
pub(crate) fn chain_layout(f: &FoliatedLattice) -> Result<NetworkLayout> {
    if f.family() != Family::FfccFull {
        return Err(invalid(format!(
            "chain decomposition needs the full FFCC lattice, got {:?}",
            f.family()
        )));
    }
    let (l, t) = (f.l(), f.t());
    let chains = walk_chains(f)?;
    let n_slots = f.node_count() as u32;
    let chain_len = chains[0].len() as u32;

    // Slot s of chain i is network slot i·3LT + s; record the inverse map
    // so fusions can be phrased on lattice nodes.
    let mut bindings = Vec::with_capacity(n_slots as usize);
    let mut singles = Vec::new();
    let mut slot_of = vec![u32::MAX; n_slots as usize];
    let mut resources = Vec::with_capacity(chains.len());
    let spec = ResourceSpec { kind: ResourceKind::Chain, len: Len::Infinite };
    for (i, nodes) in chains.iter().enumerate() {
        let base = i as u32 * chain_len;
        resources.push(Resource { spec, slots: base..base + chain_len });
        for (s, &node) in nodes.iter().enumerate() {
            let slot = base + s as u32;
            slot_of[node as usize] = slot;
            bindings.push(Binding::Node(node));
            if f.kind(node) == NodeKind::Check {
                singles.push(slot);
            }
        }
    }

    // One rotated fusion per data vertex: its exit at layer `t` meets its
    // entry at layer `t + 1` (periodic).  Sweep layers then vertices so
    // the order is reproducible.
    let mut fusions = Vec::new();
    for layer in 0..t {
        for v in 0..6 * l * l {
            let entry_black = layer % 2 == 0;
            if (v % 2 == 0) != entry_black {
                continue; // v exits at this layer; its fusion is logged below
            }
            let a = slot_of[ffcc_data_node(l, v, layer) as usize];
            let b = slot_of[ffcc_data_node(l, v, (layer + 1) % t) as usize];
            fusions.push(Fusion { a, b, layer, ops: FusionOps::Rotated, bias: BiasTag::None });
        }
    }

    let layout = NetworkLayout {
        kind: ResourceKind::Chain,
        len: Len::Infinite,
        l,
        t,
        n_slots,
        resources,
        bindings,
        fusions,
        singles,
    };
    layout.audit()?;
    Ok(layout)
}

/// Decompose a full FFCC lattice into closed chains and rotated fusions,
/// carrying its detectors and correlation surfaces onto the outcomes.
pub fn decompose_chains(f: &FoliatedLattice) -> Result<FusionNetwork> {
    let layout = chain_layout(f)?;
    let set = find_detectors(f)?;
    let surfaces = find_correlation_surfaces(f, &set)?;
    let per_layer = 9 * f.l() * f.l();
    assemble(layout, &set, &surfaces, |node| node / per_layer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::compose::parity_closed;
    use crate::lattice::foliate_ffcc;

    fn full(l: u32, t: u32) -> FoliatedLattice {
        foliate_ffcc(&HexLattice::new(l).unwrap(), t).unwrap()
    }

    #[test]
    fn chain_walk_audit_small() {
        let f = full(2, 6);
        let layout = chain_layout(&f).unwrap();
        assert_eq!(layout.resources.len(), 6); // 3L chains
        assert_eq!(layout.n_slots, 216);
        for r in &layout.resources {
            assert_eq!(r.slots.len(), 36); // 3LT slots each
        }
        assert_eq!(layout.fusions.len(), 72); // 3L²T temporal fusions
        assert_eq!(layout.singles.len(), 72); // one per check qubit
        // Singles sit exactly on the check nodes.
        for &s in &layout.singles {
            let Binding::Node(node) = layout.bindings[s as usize] else {
                panic!("chain slots bind lattice nodes");
            };
            assert_eq!(f.kind(node), NodeKind::Check);
        }
    }

    #[test]
    fn consecutive_chain_slots_are_lattice_bonds() {
        let f = full(2, 6);
        let layout = chain_layout(&f).unwrap();
        for r in &layout.resources {
            let nodes: Vec<u32> = r
                .slots
                .clone()
                .map(|s| match layout.bindings[s as usize] {
                    Binding::Node(n) => n,
                    _ => unreachable!(),
                })
                .collect();
            for i in 0..nodes.len() {
                let j = (i + 1) % nodes.len();
                assert!(
                    f.adjacent(nodes[i], nodes[j]),
                    "chain step {} -> {} is not a lattice bond",
                    nodes[i],
                    nodes[j]
                );
            }
        }
    }

    #[test]
    fn network_graph_matches_lattice_adjacency() {
        // Chain bonds plus fusion bonds reproduce the FFCC lattice exactly,
        // node for node — the decomposition is a relabeling, not a model.
        let f = full(2, 6);
        let layout = chain_layout(&f).unwrap();
        let graph = layout.network_graph();
        let mut node_adj = vec![Vec::new(); f.node_count() as usize];
        for (slot, adj) in graph.iter().enumerate() {
            let Binding::Node(node) = layout.bindings[slot] else { unreachable!() };
            let mut mapped: Vec<u32> = adj
                .iter()
                .map(|&s| match layout.bindings[s as usize] {
                    Binding::Node(n) => n,
                    _ => unreachable!(),
                })
                .collect();
            mapped.sort_unstable();
            node_adj[node as usize] = mapped;
        }
        for node in 0..f.node_count() as u32 {
            assert_eq!(node_adj[node as usize], f.neighbors(node), "node {node}");
        }
    }

    #[test]
    fn incidence_is_the_node_dictionary() {
        let f = full(3, 6);
        let net = decompose_chains(&f).unwrap();
        let set = find_detectors(&f).unwrap();
        assert_eq!(net.n_detectors, 54);
        assert_eq!(net.n_primal, 27);
        assert_eq!(net.n_outcomes(), 2 * 162 + 162);
        for info in &net.outcomes {
            let Binding::Node(node) = net.layout.bindings[info.slot as usize] else {
                unreachable!()
            };
            assert_eq!(info.dets, set.node_detectors[node as usize], "slot {}", info.slot);
        }
        // Every detector resolves to 18 outcome columns, all distinct slots.
        for d in 0..net.n_detectors {
            assert_eq!(net.det_outcomes[d as usize].len(), 18);
        }
    }

    #[test]
    fn detectors_and_surfaces_commute_with_measurement() {
        // A · S = 0 over GF(2): each detector's slot support, and each
        // correlation surface's, must close in the network graph — that is
        // the condition for an all-X measured graph state to pin its parity.
        let f = full(3, 6);
        let net = decompose_chains(&f).unwrap();
        let graph = net.layout.network_graph();
        let n = net.layout.n_slots as usize;
        for d in 0..net.n_detectors as usize {
            let mut support = crate::gf2::BitVec::zero(n);
            for &col in &net.det_outcomes[d] {
                support.set(net.outcomes[col as usize].slot as usize, true);
            }
            assert!(parity_closed(&graph, &support), "detector {d} does not close");
        }
        assert_eq!(net.surfaces.len(), 6);
        for (i, sm) in net.surfaces.iter().enumerate() {
            let mut support = crate::gf2::BitVec::zero(n);
            for col in sm.mask.iter_ones() {
                support.set(net.outcomes[col].slot as usize, true);
            }
            assert!(parity_closed(&graph, &support), "surface {i} does not close");
        }
        // Time-like surfaces cut 36 outcomes, space-like ones 108.
        let mut weights: Vec<usize> = net.surfaces.iter().map(|s| s.mask.count_ones()).collect();
        weights.sort_unstable();
        assert_eq!(weights, vec![36, 36, 36, 36, 108, 108]);
    }

    #[test]
    fn rejects_other_families() {
        use crate::lattice::{branched_variant, build_raussendorf};
        let rhg = build_raussendorf(3, 3).unwrap();
        assert!(decompose_chains(&rhg).is_err());
        let br = branched_variant(&full(2, 6)).unwrap();
        assert!(decompose_chains(&br).is_err());
    }
}
