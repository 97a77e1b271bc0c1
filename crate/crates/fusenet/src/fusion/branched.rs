//! Caterpillar decomposition of the branched FFCC lattice.
//!
//! The branched variant replaces every check of the full lattice with a
//! Bell `{X⊗X, Z⊗Z}` fusion, which folds each closed chain into a
//! *caterpillar*: a backbone cycle of `LT` qubits, each dressed with one
//! leaf.  A chain step `(entry, check, exit)` becomes the pair
//! `(leaf, backbone)` — the entry turns into the Z-measured leaf bonded
//! to the exit's backbone qubit — so the caterpillar walk is the chain
//! walk with the checks deleted.  The temporal fusion of vertex `v` at
//! layer `t` then joins `leaf(v, t)` to `backbone(v, t + 1)`: its X⊗X
//! outcome reads the backbone's X membership and its Z⊗Z outcome the
//! leaf's Z membership, which is how detectors mined on the branched
//! lattice pull back onto fusion outcomes.
//!
//! Finite caterpillars of length `len` carry `(len − 2) / 2` leaf/backbone
//! pairs between two end qubits.  Cutting each cycle every that many steps
//! and rejoining the ends with rotated fusions double-subdivides the cut
//! backbone bonds, so each end qubit answers for the backbone on the *far*
//! side of its cut and the network measures the same detector algebra.

use crate::error::{internal, invalid, Result};
use crate::hex::HexLattice;
use crate::lattice::{
    find_correlation_surfaces, find_detectors, foliate_ffcc, Family, FoliatedLattice,
};

use super::chains::walk_chains;
use super::{
    assemble, BiasTag, Binding, Fusion, FusionNetwork, FusionOps, Len, NetworkLayout, Resource,
    ResourceKind, ResourceSpec,
};

/// The caterpillar walks over a branched lattice: per caterpillar, the
/// `(leaf, backbone)` node pairs in walk order.  Derived from the chain
/// walk of the companion full lattice; node ids are branched-lattice ids.
fn walk_caterpillars(f: &FoliatedLattice) -> Result<Vec<Vec<(u32, u32)>>> {
    let (l, t) = (f.l(), f.t());
    let full = foliate_ffcc(&HexLattice::new(l)?, t)?;
    let per_full = 9 * l * l;
    let per_br = 6 * l * l;
    let pack = |node: u32| (node / per_full) * per_br + (node % per_full);
    let walks = walk_chains(&full)?;
    Ok(walks
        .into_iter()
        .map(|nodes| {
            nodes
                .chunks_exact(3)
                .map(|step| (pack(step[0]), pack(step[2])))
                .collect()
        })
        .collect())
}

/// Lay out the caterpillar network for a branched FFCC lattice.
pub(crate) fn branched_layout(f: &FoliatedLattice, len: Len) -> Result<NetworkLayout> {
    if f.family() != Family::FfccBranched {
        return Err(invalid(format!(
            "caterpillar decomposition needs the branched FFCC lattice, got {:?}",
            f.family()
        )));
    }
    let spec = ResourceSpec { kind: ResourceKind::BranchedChain, len };
    spec.validate()?;
    let (l, t) = (f.l(), f.t());
    let steps = l * t;
    let walks = walk_caterpillars(f)?;

    let mut resources = Vec::new();
    let mut bindings = Vec::new();
    let mut fusions = Vec::new();
    let mut slot_of = vec![u32::MAX; f.node_count() as usize];

    match len {
        Len::Infinite => {
            // One closed caterpillar per chain, slots (leaf, backbone) × LT.
            for (k, pairs) in walks.iter().enumerate() {
                let base = k as u32 * 2 * steps;
                resources.push(Resource { spec, slots: base..base + 2 * steps });
                for (i, &(leaf, back)) in pairs.iter().enumerate() {
                    slot_of[leaf as usize] = base + 2 * i as u32;
                    slot_of[back as usize] = base + 2 * i as u32 + 1;
                    bindings.push(Binding::Node(leaf));
                    bindings.push(Binding::Node(back));
                }
            }
        }
        Len::Finite(n) => {
            // Cut each cycle into segments of `pps` pairs; the two extra
            // qubits per segment double-subdivide the cut backbone bonds.
            let pps = (n - 2) / 2;
            if steps % pps != 0 {
                return Err(invalid(format!(
                    "caterpillars of length {n} carry {pps} pairs and cannot tile \
                     a cycle of {steps} steps"
                )));
            }
            let nseg = steps / pps;
            for pairs in &walks {
                let back = |i: u32| pairs[(i % steps) as usize].1;
                for s in 0..nseg {
                    let base = bindings.len() as u32;
                    resources.push(Resource { spec, slots: base..base + n });
                    bindings.push(Binding::Insert {
                        near: back(s * pps),
                        far: back(s * pps + steps - 1),
                    });
                    for j in 0..pps {
                        let (leaf, bk) = pairs[(s * pps + j) as usize];
                        slot_of[leaf as usize] = base + 1 + 2 * j;
                        slot_of[bk as usize] = base + 2 + 2 * j;
                        bindings.push(Binding::Node(leaf));
                        bindings.push(Binding::Node(bk));
                    }
                    bindings.push(Binding::Insert {
                        near: back((s + 1) * pps - 1),
                        far: back((s + 1) * pps),
                    });
                }
            }
            // Rejoin consecutive segments with rotated fusions on the ends.
            let seg_base = |k: u32, s: u32| (k * nseg + s) * n;
            for k in 0..walks.len() as u32 {
                for s in 0..nseg {
                    fusions.push(Fusion {
                        a: seg_base(k, s) + n - 1,
                        b: seg_base(k, (s + 1) % nseg),
                        layer: ((s + 1) * pps - 1) % t,
                        ops: FusionOps::Rotated,
                        bias: BiasTag::None,
                    });
                }
            }
        }
    }

    // The temporal Bell fusions are the same for every caterpillar length:
    // leaf(v, t) meets backbone(v, t + 1).  Sweep layers then vertices.
    let per_br = 6 * l * l;
    let mut temporal = Vec::new();
    for layer in 0..t {
        for v in 0..per_br {
            let entry_black = layer % 2 == 0;
            if (v % 2 == 0) != entry_black {
                continue;
            }
            let a = slot_of[(layer * per_br + v) as usize];
            let b = slot_of[(((layer + 1) % t) * per_br + v) as usize];
            if a == u32::MAX || b == u32::MAX {
                return Err(internal("caterpillar walk missed a lattice node"));
            }
            temporal.push(Fusion { a, b, layer, ops: FusionOps::Bell, bias: BiasTag::None });
        }
    }
    temporal.append(&mut fusions);

    let layout = NetworkLayout {
        kind: ResourceKind::BranchedChain,
        len,
        l,
        t,
        n_slots: bindings.len() as u32,
        resources,
        bindings,
        fusions: temporal,
        singles: Vec::new(),
    };
    layout.audit()?;
    Ok(layout)
}

/// Decompose a branched FFCC lattice into caterpillars of the given
/// length, carrying its detectors and correlation surfaces onto the
/// fusion outcomes.
pub fn decompose_branched(f: &FoliatedLattice, len: Len) -> Result<FusionNetwork> {
    let layout = branched_layout(f, len)?;
    let set = find_detectors(f)?;
    let surfaces = find_correlation_surfaces(f, &set)?;
    let per_layer = 6 * f.l() * f.l();
    assemble(layout, &set, &surfaces, |node| node / per_layer)
}
