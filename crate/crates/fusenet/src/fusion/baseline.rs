//! Cubic-lattice baseline networks: 4-qubit stars and 6-rings.
//!
//! Both rebuild the Raussendorf cluster from constant-size resources, the
//! two reference points the chain constructions are compared against.
//!
//! The **star network** places one 4-qubit star per lattice qubit.  Each
//! qubit picks a same-cell partner (face `k` pairs with edge
//! `3 + (k + 1) mod 3`), which is a perfect matching of the lattice, and
//! the matched bonds fuse centre-to-centre.  The three remaining bonds of
//! each qubit fuse leaf-to-leaf, double-subdividing those lattice edges, so
//! every leaf answers for the node on the far side of its bond and the
//! lattice detectors transfer through the dictionary unchanged.
//!
//! The **ring network** places one 6-qubit ring per cell of an
//! `L × L × T` torus of cells and Bell-fuses facing ring qubits across
//! every cell face.  Ring positions carry the face directions in the
//! cyclic order `(+x, +y, +z, −x, −y, −z)` — antipodal faces three ring
//! steps apart — the arrangement whose Bell composition closes locally.
//! Rings carry no per-slot dictionary; their detectors are mined once, on
//! a reference torus, as the minimal translation family of deterministic
//! outcome parities: one twelve-outcome detector per cell, splitting on
//! the cell checkerboard into two interlocking cubic syndrome graphs with
//! doubled edges.  Correlation membranes are mined per network from
//! width-1 slab kernels.

use std::sync::{Arc, OnceLock};

use crate::error::{internal, invalid, Result};
use crate::gf2::BitVec;
use crate::lattice::{
    build_raussendorf, find_correlation_surfaces, find_detectors, Class, Family, FoliatedLattice,
};

use super::compose::{is_sum_of, kernel_in_window, sparsify};
use super::{
    assemble, BiasMode, BiasTag, Binding, Fusion, FusionNetwork, FusionOps, Len, NetworkLayout,
    OutcomeInfo, Resource, ResourceKind, ResourceSpec, SurfaceMask,
};

/// Builds one of the cubic-lattice reference networks.
pub fn build_baseline_network(kind: ResourceKind, l: u32, t: u32) -> Result<FusionNetwork> {
    match kind {
        ResourceKind::Star4 => star_network(l, t),
        ResourceKind::Hexagon6 => hexagon_network(l, t),
        other => Err(invalid(format!(
            "baseline networks are star4 or hexagon6, got {}",
            other.name()
        ))),
    }
}

/// The same-cell partner a lattice qubit is centre-fused with: face `k`
/// pairs with edge `3 + (k + 1) mod 3` of its own cell.  An involution,
/// and every pair is a lattice bond, so this is a perfect matching.
fn matched_partner(node: u32) -> u32 {
    let k = node % 6;
    let cell = node - k;
    if k < 3 {
        cell + 3 + (k + 1) % 3
    } else {
        cell + (k + 2) % 3
    }
}

/// Lay out the 4-star network over a Raussendorf lattice.
pub(crate) fn star_layout(f: &FoliatedLattice) -> Result<NetworkLayout> {
    if f.family() != Family::Raussendorf {
        return Err(invalid(format!(
            "the star network needs the Raussendorf lattice, got {:?}",
            f.family()
        )));
    }
    let t = f.t();
    let n = f.node_count() as u32;
    let spec = ResourceSpec { kind: ResourceKind::Star4, len: Len::Finite(4) };

    // Star of node u owns slots 4u (centre) and 4u+1.. (leaves, one per
    // unmatched bond in neighbor order).
    let mut resources = Vec::with_capacity(n as usize);
    let mut bindings = Vec::with_capacity(4 * n as usize);
    for u in 0..n {
        let p = matched_partner(u);
        if !f.adjacent(u, p) || matched_partner(p) != u {
            return Err(internal(format!("node {u} has no matched partner bond")));
        }
        resources.push(Resource { spec, slots: 4 * u..4 * u + 4 });
        bindings.push(Binding::Node(u));
        for &w in f.neighbors(u) {
            if w != p {
                bindings.push(Binding::Insert { near: u, far: w });
            }
        }
        if bindings.len() != 4 * (u as usize + 1) {
            return Err(internal(format!("node {u} does not have degree 4")));
        }
    }

    let leaf_slot = |u: u32, w: u32| -> u32 {
        let p = matched_partner(u);
        let mut i = 4 * u + 1;
        for &x in f.neighbors(u) {
            if x == w {
                return i;
            }
            if x != p {
                i += 1;
            }
        }
        unreachable!("leaf_slot called on a non-bond")
    };
    // One fusion per lattice bond: matched bonds centre-to-centre, the
    // rest leaf-to-leaf.  The fusion layer is the bond's earlier cell.
    let zof = |q: u32| (q / 6) % t;
    let mut fusions = Vec::new();
    for u in 0..n {
        for &w in f.neighbors(u) {
            if u > w {
                continue;
            }
            let (a, b) = if w == matched_partner(u) {
                (4 * u, 4 * w)
            } else {
                (leaf_slot(u, w), leaf_slot(w, u))
            };
            let (zu, zw) = (zof(u), zof(w));
            let layer = if zu == zw || (zu + 1) % t == zw { zu } else { zw };
            fusions.push(Fusion { a, b, layer, ops: FusionOps::Rotated, bias: BiasTag::None });
        }
    }

    let layout = NetworkLayout {
        kind: ResourceKind::Star4,
        len: Len::Finite(4),
        l: f.l(),
        t,
        n_slots: 4 * n,
        resources,
        bindings,
        fusions,
        singles: Vec::new(),
    };
    layout.audit()?;
    Ok(layout)
}

fn star_network(l: u32, t: u32) -> Result<FusionNetwork> {
    let f = build_raussendorf(l, t)?;
    let layout = star_layout(&f)?;
    let set = find_detectors(&f)?;
    let surfaces = find_correlation_surfaces(&f, &set)?;
    assemble(layout, &set, &surfaces, move |node| (node / 6) % t)
}

/// The ring position holding each face direction.  Directions are 0 +x,
/// 1 −x, 2 +y, 3 −y, 4 +z, 5 −z; walking the ring cycle visits
/// `(+x, +y, +z, −x, −y, −z)`, so antipodal faces sit three steps apart.
const RING_POS: [u32; 6] = [0, 3, 1, 4, 2, 5];

/// Lay out the 6-ring network over an `L × L × T` torus of cells.
pub(crate) fn hexagon_layout(l: u32, t: u32) -> Result<NetworkLayout> {
    if l < 4 || t < 4 || l % 2 != 0 || t % 2 != 0 {
        return Err(invalid(format!(
            "the 6-ring network needs even L ≥ 4 and even T ≥ 4, got L={l}, T={t}"
        )));
    }
    let spec = ResourceSpec { kind: ResourceKind::Hexagon6, len: Len::Finite(6) };
    let cells = l * l * t;
    let cell = |x: u32, y: u32, z: u32| ((x % l) * l + y % l) * t + z % t;

    let mut resources = Vec::with_capacity(cells as usize);
    for c in 0..cells {
        resources.push(Resource { spec, slots: 6 * c..6 * c + 6 });
    }
    // Each cell owns the Bell fusions across its +x, +y and +z faces,
    // joining the two ring qubits that face each other.
    let mut fusions = Vec::with_capacity(3 * cells as usize);
    for x in 0..l {
        for y in 0..l {
            for z in 0..t {
                let here = 6 * cell(x, y, z);
                let faces =
                    [(cell(x + 1, y, z), 0), (cell(x, y + 1, z), 2), (cell(x, y, z + 1), 4)];
                for (nbr, d) in faces {
                    fusions.push(Fusion {
                        a: here + RING_POS[d],
                        b: 6 * nbr + RING_POS[d + 1],
                        layer: z,
                        ops: FusionOps::Bell,
                        bias: BiasTag::None,
                    });
                }
            }
        }
    }

    let layout = NetworkLayout {
        kind: ResourceKind::Hexagon6,
        len: Len::Finite(6),
        l,
        t,
        n_slots: 6 * cells,
        resources,
        bindings: vec![Binding::Bare; 6 * cells as usize],
        fusions,
        singles: Vec::new(),
    };
    layout.audit()?;
    Ok(layout)
}

/// The two ring neighbours of a slot: positions ±1 on its cell's 6-cycle.
fn ring_nbrs(slot: u32) -> [u32; 2] {
    let base = slot - slot % 6;
    let p = slot % 6;
    [base + (p + 5) % 6, base + (p + 1) % 6]
}

/// The ring shadow of a stabilizer selection at `slot`: the parity of `v`
/// over the slot's ring neighbours — the Z side the selection shows a Bell
/// readout there.
fn ring_shadow(v: &BitVec, slot: u32) -> bool {
    let [p, q] = ring_nbrs(slot);
    v.get(p as usize) ^ v.get(q as usize)
}

/// GF(2) rows of the ring network's Bell composition, over one stabilizer
/// selector bit per slot: each fusion requires equal selectors and equal
/// ring shadows on its two slots.  A solution is a deterministic parity
/// that reads the XX bit of every fusion whose selector is set and the ZZ
/// bit of every fusion whose shadow is set.
fn bell_rows(layout: &NetworkLayout) -> Vec<Vec<u32>> {
    let mut rows = Vec::with_capacity(2 * layout.fusions.len());
    for f in &layout.fusions {
        rows.push(vec![f.a, f.b]);
        let ([a0, a1], [b0, b1]) = (ring_nbrs(f.a), ring_nbrs(f.b));
        rows.push(vec![a0, a1, b0, b1]);
    }
    rows
}

/// One mined detector footprint: the selector's cells and ring positions
/// as offsets from its anchor cell.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RingShape {
    slots: Vec<([i32; 3], u32)>,
}

/// Reference dimensions the ring shapes are mined on.
const RING_REF: (u32, u32) = (6, 6);

fn mine_ring_shapes() -> Result<Vec<RingShape>> {
    let (l, t) = RING_REF;
    let layout = hexagon_layout(l, t)?;
    let rows = bell_rows(&layout);
    // One 3×3×3 cell window: everything deterministic in it is spanned by
    // the minimal translation-invariant shapes anchored inside.
    let mut cols = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let c = 6 * ((x * l + y) * t + z);
                cols.extend(c..c + 6);
            }
        }
    }
    let mut basis = kernel_in_window(&rows, layout.n_slots as usize, &cols);
    sparsify(&mut basis);
    let coords = |slot: u32| -> [i32; 3] {
        let c = slot / 6;
        [(c / (t * l)) as i32, ((c / t) % l) as i32, (c % t) as i32]
    };
    let mut shapes: Vec<RingShape> = Vec::new();
    for v in &basis {
        let slots: Vec<u32> = v.iter_ones().map(|s| s as u32).collect();
        let mut anchor = [i32::MAX; 3];
        for &s in &slots {
            let c = coords(s);
            for a in 0..3 {
                anchor[a] = anchor[a].min(c[a]);
            }
        }
        let mut offs: Vec<([i32; 3], u32)> = slots
            .iter()
            .map(|&s| {
                let c = coords(s);
                ([c[0] - anchor[0], c[1] - anchor[1], c[2] - anchor[2]], s % 6)
            })
            .collect();
        offs.sort_unstable();
        let shape = RingShape { slots: offs };
        if !shapes.contains(&shape) {
            shapes.push(shape);
        }
    }
    // Keep only the lightest footprints — heavier basis vectors are sums
    // of translates.
    let min = shapes
        .iter()
        .map(|s| s.slots.len())
        .min()
        .ok_or_else(|| internal("ring mining found no detector shapes"))?;
    shapes.retain(|s| s.slots.len() == min);
    shapes.sort_by(|a, b| a.slots.cmp(&b.slots));
    Ok(shapes)
}

fn ring_shapes() -> Result<Arc<Vec<RingShape>>> {
    static CACHE: OnceLock<Arc<Vec<RingShape>>> = OnceLock::new();
    if let Some(shapes) = CACHE.get() {
        return Ok(shapes.clone());
    }
    let shapes = Arc::new(mine_ring_shapes()?);
    Ok(CACHE.get_or_init(|| shapes).clone())
}

/// Mines one correlation membrane: the lightest deterministic parity
/// confined to a slab of cells normal to `axis` whose outcome columns all
/// feed `class` and which no sum of detectors reproduces.
fn ring_membrane(
    layout: &NetworkLayout,
    rows: &[Vec<u32>],
    final_of: &[u32],
    out_class: &[Class],
    det_sups: &[BitVec],
    class: Class,
    axis: usize,
) -> Result<BitVec> {
    let (l, t) = (layout.l, layout.t);
    let n_out = final_of.len();
    for width in [1u32, 2] {
        let cols: Vec<u32> = (0..layout.n_slots)
            .filter(|&s| {
                let c = s / 6;
                [c / (t * l), (c / t) % l, c % t][axis] < width
            })
            .collect();
        let mut basis = kernel_in_window(rows, layout.n_slots as usize, &cols);
        sparsify(&mut basis);
        basis.sort_by_key(BitVec::count_ones);
        'candidate: for v in &basis {
            if v.is_zero() {
                continue;
            }
            let mut mask = BitVec::zero(n_out);
            for (j, f) in layout.fusions.iter().enumerate() {
                if v.get(f.a as usize) {
                    if out_class[2 * j] != class {
                        continue 'candidate;
                    }
                    mask.set(final_of[2 * j] as usize, true);
                }
                if ring_shadow(v, f.a) {
                    if out_class[2 * j + 1] != class {
                        continue 'candidate;
                    }
                    mask.set(final_of[2 * j + 1] as usize, true);
                }
            }
            if !is_sum_of(det_sups, &mask, n_out) {
                return Ok(mask);
            }
        }
    }
    Err(internal(format!("no membrane normal to axis {axis} for {class:?}")))
}

fn hexagon_network(l: u32, t: u32) -> Result<FusionNetwork> {
    let layout = hexagon_layout(l, t)?;
    let n_slots = layout.n_slots as usize;
    let n_out = 2 * layout.fusions.len();
    let shapes = ring_shapes()?;
    let cell = |x: i32, y: i32, z: i32| {
        let cx = x.rem_euclid(l as i32) as u32;
        let cy = y.rem_euclid(l as i32) as u32;
        let cz = z.rem_euclid(t as i32) as u32;
        (cx * l + cy) * t + cz
    };

    // Instantiate every shape at every cell; duplicates collapse.
    let mut instances: Vec<(Vec<u32>, [u16; 3])> = Vec::new();
    for shape in shapes.iter() {
        for x in 0..l as i32 {
            for y in 0..l as i32 {
                for z in 0..t as i32 {
                    let mut slots: Vec<u32> = shape
                        .slots
                        .iter()
                        .map(|&(off, pos)| 6 * cell(x + off[0], y + off[1], z + off[2]) + pos)
                        .collect();
                    slots.sort_unstable();
                    instances.push((slots, [x as u16, y as u16, z as u16]));
                }
            }
        }
    }
    instances.sort();
    instances.dedup_by(|a, b| a.0 == b.0);

    // Outcome support per instance, re-verifying Bell closure at this
    // size: both halves of every fusion must agree on selector and shadow.
    let mut det_out_raw: Vec<Vec<u32>> = Vec::with_capacity(instances.len());
    for (slots, cellc) in &instances {
        let mut v = BitVec::zero(n_slots);
        for &s in slots {
            v.set(s as usize, true);
        }
        let mut sup = Vec::new();
        for (j, f) in layout.fusions.iter().enumerate() {
            let xx = v.get(f.a as usize);
            let zz = ring_shadow(&v, f.a);
            if xx != v.get(f.b as usize) || zz != ring_shadow(&v, f.b) {
                return Err(internal(format!("ring shape does not close at cell {cellc:?}")));
            }
            if xx {
                sup.push(2 * j as u32);
            }
            if zz {
                sup.push(2 * j as u32 + 1);
            }
        }
        det_out_raw.push(sup);
    }

    // Every outcome column must be covered exactly twice — the
    // matching-graph condition the whole decoding stack relies on.
    let mut owners = vec![[u32::MAX; 2]; n_out];
    for (d, sup) in det_out_raw.iter().enumerate() {
        for &o in sup {
            let w = &mut owners[o as usize];
            if w[0] == u32::MAX {
                w[0] = d as u32;
            } else if w[1] == u32::MAX {
                w[1] = d as u32;
            } else {
                return Err(internal(format!("ring outcome {o} sits in more than 2 detectors")));
            }
        }
    }
    if let Some(o) = owners.iter().position(|w| w[1] == u32::MAX) {
        return Err(internal(format!("ring outcome {o} sits in fewer than 2 detectors")));
    }

    // Classes are the two connected components of detectors sharing
    // outcome columns.
    let mut comp: Vec<u32> = (0..instances.len() as u32).collect();
    fn find(comp: &mut Vec<u32>, mut d: u32) -> u32 {
        while comp[d as usize] != d {
            comp[d as usize] = comp[comp[d as usize] as usize];
            d = comp[d as usize];
        }
        d
    }
    for w in &owners {
        let (a, b) = (find(&mut comp, w[0]), find(&mut comp, w[1]));
        if a != b {
            comp[a as usize] = b;
        }
    }
    let primal_root = find(&mut comp, owners[0][0]);
    let roots: std::collections::HashSet<u32> =
        (0..instances.len() as u32).map(|d| find(&mut comp, d)).collect();
    if roots.len() != 2 {
        return Err(internal(format!(
            "ring detectors split into {} classes, expected 2",
            roots.len()
        )));
    }

    // Primal block first, preserving instance order within each class.
    let mut order: Vec<u32> = (0..instances.len() as u32).collect();
    order.sort_by_key(|&d| (find(&mut comp, d) != primal_root, d));
    let mut new_index = vec![0u32; instances.len()];
    for (i, &d) in order.iter().enumerate() {
        new_index[d as usize] = i as u32;
    }
    let n_primal = order.iter().filter(|&&d| find(&mut comp, d) == primal_root).count();
    let det_cells: Vec<[u16; 3]> = order.iter().map(|&d| instances[d as usize].1).collect();
    let out_dets: Vec<[u32; 2]> = owners
        .iter()
        .map(|w| {
            let mut p = [new_index[w[0] as usize], new_index[w[1] as usize]];
            p.sort_unstable();
            p
        })
        .collect();
    let out_class: Vec<Class> = out_dets
        .iter()
        .map(|d| if (d[0] as usize) < n_primal { Class::Primal } else { Class::Dual })
        .collect();

    // Emit the two columns of each fusion primal-feeding first, keeping
    // the XX bit on slot `a` and the ZZ bit on slot `b`.
    let mut outcomes = Vec::with_capacity(n_out);
    let mut final_of = vec![0u32; n_out];
    for (j, f) in layout.fusions.iter().enumerate() {
        let info = |o: usize, slot: u32| OutcomeInfo {
            slot,
            fusion: Some(j as u32),
            dets: out_dets[o],
            class: out_class[o],
            layer: f.layer,
        };
        let xx = (2 * j, info(2 * j, f.a));
        let zz = (2 * j + 1, info(2 * j + 1, f.b));
        if xx.1.class == zz.1.class {
            return Err(internal(format!("ring fusion {j} feeds a single class")));
        }
        let (first, second) = if xx.1.class == Class::Primal { (xx, zz) } else { (zz, xx) };
        final_of[first.0] = outcomes.len() as u32;
        outcomes.push(first.1);
        final_of[second.0] = outcomes.len() as u32;
        outcomes.push(second.1);
    }
    let mut det_outcomes = vec![Vec::new(); instances.len()];
    for (d, sup) in det_out_raw.iter().enumerate() {
        let nd = new_index[d] as usize;
        for &o in sup {
            det_outcomes[nd].push(final_of[o as usize]);
        }
    }
    for cols in &mut det_outcomes {
        cols.sort_unstable();
    }

    // Membranes, mined per class and axis on this network.
    let det_sups: Vec<BitVec> = det_outcomes
        .iter()
        .map(|cols| {
            let mut v = BitVec::zero(n_out);
            for &c in cols {
                v.set(c as usize, true);
            }
            v
        })
        .collect();
    let rows = bell_rows(&layout);
    let mut surfaces = Vec::with_capacity(6);
    for class in [Class::Primal, Class::Dual] {
        for axis in 0..3 {
            let mask =
                ring_membrane(&layout, &rows, &final_of, &out_class, &det_sups, class, axis)?;
            surfaces.push(SurfaceMask { class, normal: axis as u8, mask });
        }
    }

    Ok(FusionNetwork {
        layout,
        mode: BiasMode::Unbiased,
        n_detectors: instances.len(),
        n_primal,
        det_cells,
        outcomes,
        det_outcomes,
        surfaces,
    })
}
