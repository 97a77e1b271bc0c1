//! Resource-state decompositions of foliated lattices and the
//! outcome→detector incidence ("matching matrix").
//!
//! A lattice is rebuilt from small photonic resource states — unbroken
//! chains, branched chains (whole or cut into `ℓ`-qubit segments), 4-qubit
//! stars, or 6-rings — joined by two-outcome fusion measurements:
//!
//! * [`decompose_chains`] — one closed chain per honeycomb walk orbit, check
//!   qubits kept as single-measured chain slots.
//! * [`decompose_branched`] — caterpillar chains without check nodes, whole
//!   (`ℓ = ∞`) or segmented with end-to-end joining fusions.
//! * [`build_baseline_network`] — the cubic-lattice reference constructions
//!   from 4-qubit stars or 6-rings.
//!
//! Every slot of every resource is consumed by exactly one fusion side or one
//! single-qubit measurement, so each network outcome is one column of a
//! sparse GF(2) incidence matrix whose rows are the lattice detectors (primal
//! block first). On the periodic lattices used here every column has exactly
//! two ones, both in one detector class; fusions contribute one column to
//! each class. [`FusionNetwork::assign_bias`] tags fusions with the
//! failure-bias layout used by the biased-loss noise model.

use crate::error::{internal, invalid, Result};
use crate::gf2::BitVec;
use crate::lattice::{Class, CorrelationSurface, DetectorSet};

mod baseline;
mod branched;
mod chains;
mod compose;

pub use baseline::build_baseline_network;
pub use branched::decompose_branched;
pub use chains::decompose_chains;

/// Resource-state species a network is assembled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResourceKind {
    /// Closed chain visiting entry/check/exit slots of one walk orbit.
    Chain,
    /// Caterpillar chain: backbone cycle with one leaf per backbone qubit.
    BranchedChain,
    /// Four-qubit star (one central qubit, three leaves).
    Star4,
    /// Six-qubit ring.
    Hexagon6,
}

impl ResourceKind {
    /// Lower-case name used in JSON exports and CLI arguments.
    pub fn name(self) -> &'static str {
        match self {
            ResourceKind::Chain => "chain",
            ResourceKind::BranchedChain => "branched_chain",
            ResourceKind::Star4 => "star4",
            ResourceKind::Hexagon6 => "hexagon6",
        }
    }
}

/// Resource length: a finite qubit count or one unbroken resource spanning
/// the whole time extent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Len {
    /// Exactly this many qubits per resource.
    Finite(u32),
    /// One resource per orbit, closed around the time torus.
    Infinite,
}

impl std::fmt::Display for Len {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Len::Finite(n) => write!(f, "{n}"),
            Len::Infinite => write!(f, "inf"),
        }
    }
}

/// What a network is made of: the species and the per-resource length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceSpec {
    /// Resource species.
    pub kind: ResourceKind,
    /// Qubits per resource; stars and rings have fixed sizes 4 and 6.
    pub len: Len,
}

impl ResourceSpec {
    /// Checks the fixed-size and evenness rules of the species.
    pub fn validate(&self) -> Result<()> {
        match (self.kind, self.len) {
            (ResourceKind::Star4, Len::Finite(4)) => Ok(()),
            (ResourceKind::Star4, l) => Err(invalid(format!("star4 has fixed size 4, got {l}"))),
            (ResourceKind::Hexagon6, Len::Finite(6)) => Ok(()),
            (ResourceKind::Hexagon6, l) => {
                Err(invalid(format!("hexagon6 has fixed size 6, got {l}")))
            }
            (_, Len::Infinite) => Ok(()),
            (ResourceKind::BranchedChain, Len::Finite(n)) if n >= 4 && n % 2 == 0 => Ok(()),
            (ResourceKind::BranchedChain, Len::Finite(n)) => Err(invalid(format!(
                "branched-chain segments need an even length ≥ 4, got {n}"
            ))),
            (ResourceKind::Chain, Len::Finite(n)) => Err(invalid(format!(
                "finite plain-chain segments are not simulated, got length {n}"
            ))),
        }
    }
}

/// How a fusion behaves when it fails, under a biased-loss layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiasTag {
    /// Failure erases one outcome of each class with equal probability.
    None,
    /// Failure erases only the dual-feeding outcome.
    PrimalBiased,
    /// Failure erases only the primal-feeding outcome.
    DualBiased,
}

impl BiasTag {
    fn name(self) -> &'static str {
        match self {
            BiasTag::None => "none",
            BiasTag::PrimalBiased => "primal_biased",
            BiasTag::DualBiased => "dual_biased",
        }
    }
}

/// Network-wide bias layout mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiasMode {
    /// All fusions unbiased.
    Unbiased,
    /// Blocks of three temporal layers alternate primal- and dual-biased.
    PassiveAlternating,
}

impl BiasMode {
    fn name(self) -> &'static str {
        match self {
            BiasMode::Unbiased => "unbiased",
            BiasMode::PassiveAlternating => "passive_alternating",
        }
    }
}

impl std::str::FromStr for BiasMode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<BiasMode> {
        match s {
            "unbiased" => Ok(BiasMode::Unbiased),
            "passive_alternating" => Ok(BiasMode::PassiveAlternating),
            other => Err(invalid(format!(
                "unknown bias mode {other:?} (expected unbiased or passive_alternating)"
            ))),
        }
    }
}

/// What a measured slot stands for in the effective lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binding {
    /// The slot *is* this lattice node; its outcome toggles the node's two
    /// detectors.
    Node(u32),
    /// Interior qubit of a twice-subdivided lattice edge `near`–`far`. The
    /// kernel condition on the subdivision path puts the slot in exactly the
    /// detectors of the far endpoint.
    Insert {
        /// Lattice endpoint the slot is attached to.
        near: u32,
        /// Opposite endpoint; its two detectors are the slot's detectors.
        far: u32,
    },
    /// No lattice-node dictionary; incidence comes from mined kernel shapes.
    Bare,
}

impl Binding {
    /// The lattice node whose detectors this slot toggles, if dictionary-bound.
    pub fn target(&self) -> Option<u32> {
        match *self {
            Binding::Node(n) => Some(n),
            Binding::Insert { far, .. } => Some(far),
            Binding::Bare => None,
        }
    }
}

/// One resource instance: its spec and the contiguous slot range it owns.
#[derive(Clone, Debug)]
pub struct Resource {
    /// Species and length of this instance.
    pub spec: ResourceSpec,
    /// Global slot ids `start..end` in construction order.
    pub slots: std::ops::Range<u32>,
}

impl Resource {
    /// Entangling bonds inside the resource, as global slot pairs.
    ///
    /// Slot order fixes the geometry: chains are paths in walk order (closed
    /// when infinite); caterpillars interleave `[leaf, backbone, …]` with a
    /// closed backbone; finite branched segments are
    /// `[end, (leaf, backbone) × p, end]`; stars are `[centre, leaf × 3]`;
    /// rings are 6-cycles.
    pub fn internal_edges(&self) -> Vec<(u32, u32)> {
        let s = self.slots.start;
        let n = self.slots.end - s;
        let mut out = Vec::with_capacity(n as usize + 1);
        match self.spec.kind {
            ResourceKind::Chain => {
                for i in 0..n - 1 {
                    out.push((s + i, s + i + 1));
                }
                if self.spec.len == Len::Infinite {
                    out.push((s + n - 1, s));
                }
            }
            ResourceKind::BranchedChain => match self.spec.len {
                Len::Infinite => {
                    for i in 0..n / 2 {
                        out.push((s + 2 * i, s + 2 * i + 1));
                        out.push((s + 2 * i + 1, s + (2 * i + 3) % n));
                    }
                }
                Len::Finite(_) => {
                    let pairs = (n - 2) / 2;
                    out.push((s, s + 2));
                    for j in 0..pairs {
                        out.push((s + 1 + 2 * j, s + 2 + 2 * j));
                        if j + 1 < pairs {
                            out.push((s + 2 + 2 * j, s + 4 + 2 * j));
                        }
                    }
                    out.push((s + 2 * pairs, s + n - 1));
                }
            },
            ResourceKind::Star4 => {
                for i in 1..4 {
                    out.push((s, s + i));
                }
            }
            ResourceKind::Hexagon6 => {
                for i in 0..6 {
                    out.push((s + i, s + (i + 1) % 6));
                }
            }
        }
        out
    }
}

/// Which commuting operator pair a fusion measures, in the canonical local
/// frame of the resource states it joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FusionOps {
    /// The rotated pair `{X⊗Z, Z⊗X}` — a controlled-phase across the pair
    /// followed by two X readouts, the bond-creating fusion.
    Rotated,
    /// The Bell pair `{X⊗X, Z⊗Z}`, used by the caterpillar joints where the
    /// check contraction has already rotated the local frame.
    Bell,
}

impl FusionOps {
    fn name(self) -> &'static str {
        match self {
            FusionOps::Rotated => "xz_zx",
            FusionOps::Bell => "xx_zz",
        }
    }
}

/// One two-qubit fusion measurement between slots `a` and `b`.
#[derive(Clone, Copy, Debug)]
pub struct Fusion {
    /// First fused slot.
    pub a: u32,
    /// Second fused slot.
    pub b: u32,
    /// Temporal layer the fusion is assigned to (bias blocks, diagnostics).
    pub layer: u32,
    /// Operator pair measured, in the resources' canonical frame.
    pub ops: FusionOps,
    /// Failure-bias tag; [`BiasTag::None`] until a layout is assigned.
    pub bias: BiasTag,
}

/// Slot tables, fusions, and singles of a network, without incidence.
///
/// The layout is well-defined at any lattice size (structural audits run on
/// tori too small to carry detectors); [`FusionNetwork`] adds the
/// detector-backed incidence on top.
#[derive(Clone, Debug)]
pub struct NetworkLayout {
    /// Resource species of the network.
    pub kind: ResourceKind,
    /// Per-resource length.
    pub len: Len,
    /// Transverse lattice extent.
    pub l: u32,
    /// Temporal extent (layers, or cells for the cubic lattice).
    pub t: u32,
    /// Total qubit slots.
    pub n_slots: u32,
    /// Resource instances in construction order.
    pub resources: Vec<Resource>,
    /// Per-slot dictionary binding.
    pub bindings: Vec<Binding>,
    /// All fusions in construction order.
    pub fusions: Vec<Fusion>,
    /// Slots measured alone (chain checks), in construction order.
    pub singles: Vec<u32>,
}

impl NetworkLayout {
    /// Verifies that every slot is consumed exactly once and every fusion is
    /// a proper pair. Constructors call this before handing a layout out.
    pub fn audit(&self) -> Result<()> {
        let mut uses = vec![0u8; self.n_slots as usize];
        for f in &self.fusions {
            if f.a == f.b || f.a >= self.n_slots || f.b >= self.n_slots {
                return Err(internal(format!("malformed fusion ({}, {})", f.a, f.b)));
            }
            uses[f.a as usize] += 1;
            uses[f.b as usize] += 1;
        }
        for &s in &self.singles {
            uses[s as usize] += 1;
        }
        if let Some(slot) = uses.iter().position(|&u| u != 1) {
            return Err(internal(format!(
                "slot {slot} measured {} times",
                uses[slot]
            )));
        }
        if self.resources.iter().map(|r| r.slots.len()).sum::<usize>() != self.n_slots as usize {
            return Err(internal("resource slot ranges do not cover the network"));
        }
        Ok(())
    }

    /// Adjacency of the pre-fusion resource graph plus fused bonds — the
    /// graph whose GF(2) cycle space certifies detector and surface supports.
    pub fn network_graph(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::with_capacity(4); self.n_slots as usize];
        let mut push = |a: u32, b: u32| {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        };
        for r in &self.resources {
            for (a, b) in r.internal_edges() {
                push(a, b);
            }
        }
        for f in &self.fusions {
            push(f.a, f.b);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// The slot a lattice node is measured on. Only dictionary-bound layouts
    /// ([`Binding::Node`]) have this inverse.
    pub fn slot_of_node(&self) -> Vec<u32> {
        let max = self
            .bindings
            .iter()
            .filter_map(|b| match *b {
                Binding::Node(n) => Some(n),
                _ => None,
            })
            .max()
            .map_or(0, |m| m + 1);
        let mut slot_of = vec![u32::MAX; max as usize];
        for (slot, b) in self.bindings.iter().enumerate() {
            if let Binding::Node(n) = *b {
                slot_of[n as usize] = slot as u32;
            }
        }
        slot_of
    }
}

/// One measurement outcome (one incidence column).
#[derive(Clone, Copy, Debug)]
pub struct OutcomeInfo {
    /// The measured slot this bit comes from.
    pub slot: u32,
    /// Owning fusion index, or `None` for a single measurement.
    pub fusion: Option<u32>,
    /// The two detectors (rows) this outcome toggles.
    pub dets: [u32; 2],
    /// Detector class both rows belong to.
    pub class: Class,
    /// Temporal layer (bias-block and matching geometry).
    pub layer: u32,
}

/// Outcome-support mask of one correlation surface.
#[derive(Clone, Debug)]
pub struct SurfaceMask {
    /// Class whose matching must preserve this parity.
    pub class: Class,
    /// Axis normal to the membrane (0/1 time-like, 2 space-like).
    pub normal: u8,
    /// One bit per outcome column.
    pub mask: BitVec,
}

impl SurfaceMask {
    /// Parity of the surface over a set of flipped outcome columns.
    pub fn parity_of(&self, flipped: &BitVec) -> bool {
        self.mask.dot(flipped)
    }
}

/// A resource decomposition with its outcome→detector incidence.
///
/// Immutable after construction; Monte-Carlo workers share it read-only.
#[derive(Clone, Debug)]
pub struct FusionNetwork {
    /// Slots, resources, fusions, singles.
    pub layout: NetworkLayout,
    /// Bias layout the fusion tags follow.
    pub mode: BiasMode,
    /// Detector count (rows of the incidence matrix).
    pub n_detectors: usize,
    /// Rows `0..n_primal` are primal, the rest dual.
    pub n_primal: usize,
    /// Cell coordinate of each detector (matching-graph geometry).
    pub det_cells: Vec<[u16; 3]>,
    /// Column metadata; fusion `j` owns columns `2j` (primal-feeding) and
    /// `2j + 1` (dual-feeding), singles follow.
    pub outcomes: Vec<OutcomeInfo>,
    /// Row → columns view of the incidence matrix.
    pub det_outcomes: Vec<Vec<u32>>,
    /// Correlation-surface masks over outcome columns, primal block first.
    pub surfaces: Vec<SurfaceMask>,
}

impl FusionNetwork {
    /// Number of outcome columns.
    pub fn n_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    /// Detector indices of one class as a row range.
    pub fn class_range(&self, class: Class) -> std::ops::Range<usize> {
        match class {
            Class::Primal => 0..self.n_primal,
            Class::Dual => self.n_primal..self.n_detectors,
        }
    }

    /// Syndrome of a set of flipped outcomes, one bit per detector row.
    pub fn syndrome_of(&self, flipped: &BitVec) -> BitVec {
        let mut s = BitVec::zero(self.n_detectors);
        for col in flipped.iter_ones() {
            let [a, b] = self.outcomes[col].dets;
            s.flip(a as usize);
            s.flip(b as usize);
        }
        s
    }

    /// Re-tags every fusion according to `mode`.
    ///
    /// Passive alternation follows the fusion's temporal layer: blocks of
    /// three consecutive layers are primal-biased, the next three
    /// dual-biased, so the time extent must be a multiple of six.
    pub fn assign_bias(mut self, mode: BiasMode) -> Result<FusionNetwork> {
        match mode {
            BiasMode::Unbiased => {
                for f in &mut self.layout.fusions {
                    f.bias = BiasTag::None;
                }
            }
            BiasMode::PassiveAlternating => {
                if self.layout.t % 6 != 0 {
                    return Err(invalid(format!(
                        "passive alternating bias needs T ≡ 0 (mod 6), got {}",
                        self.layout.t
                    )));
                }
                for f in &mut self.layout.fusions {
                    f.bias = if (f.layer / 3) % 2 == 0 {
                        BiasTag::PrimalBiased
                    } else {
                        BiasTag::DualBiased
                    };
                }
            }
        }
        self.mode = mode;
        Ok(self)
    }

    /// Full network export: resources with slot tables, fusions with bias
    /// tags, singles, and the incidence matrix as a (row, col) list.
    pub fn to_json(&self) -> serde_json::Value {
        let binding = |b: &Binding| match *b {
            Binding::Node(n) => serde_json::json!({ "node": n }),
            Binding::Insert { near, far } => {
                serde_json::json!({ "insert": { "near": near, "far": far } })
            }
            Binding::Bare => serde_json::json!("bare"),
        };
        let resources: Vec<_> = self
            .layout
            .resources
            .iter()
            .map(|r| {
                serde_json::json!({
                    "kind": r.spec.kind.name(),
                    "len": match r.spec.len {
                        Len::Finite(n) => serde_json::json!(n),
                        Len::Infinite => serde_json::json!("inf"),
                    },
                    "slots": { "start": r.slots.start, "count": r.slots.len() },
                    "table": r.slots.clone().map(|s| binding(&self.layout.bindings[s as usize]))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let fusions: Vec<_> = self
            .layout
            .fusions
            .iter()
            .map(|f| {
                serde_json::json!({
                    "a": f.a, "b": f.b, "layer": f.layer, "ops": f.ops.name(),
                    "bias": f.bias.name(),
                })
            })
            .collect();
        let mut incidence = Vec::with_capacity(2 * self.n_outcomes());
        for (row, cols) in self.det_outcomes.iter().enumerate() {
            for &col in cols {
                incidence.push(serde_json::json!([row, col]));
            }
        }
        let surfaces: Vec<_> = self
            .surfaces
            .iter()
            .map(|s| {
                serde_json::json!({
                    "class": if s.class == Class::Primal { "primal" } else { "dual" },
                    "normal": s.normal,
                    "columns": s.mask.iter_ones().collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "kind": self.layout.kind.name(),
            "len": match self.layout.len {
                Len::Finite(n) => serde_json::json!(n),
                Len::Infinite => serde_json::json!("inf"),
            },
            "l": self.layout.l,
            "t": self.layout.t,
            "mode": self.mode.name(),
            "detectors": { "count": self.n_detectors, "primal": self.n_primal },
            "resources": resources,
            "fusions": fusions,
            "singles": self.layout.singles,
            "incidence": incidence,
            "surfaces": surfaces,
        })
    }
}

/// Builds the incidence of a dictionary-bound layout from a detector set.
///
/// Every slot's binding resolves to a lattice node; the slot's column is
/// that node's detector pair. Fusion columns are ordered primal-feeding
/// first, and the two sides of each fusion must land in opposite classes.
fn assemble(
    layout: NetworkLayout,
    set: &DetectorSet,
    surfaces: &[CorrelationSurface],
    node_layer: impl Fn(u32) -> u32,
) -> Result<FusionNetwork> {
    layout.audit()?;
    let target = |slot: u32| -> Result<u32> {
        layout.bindings[slot as usize]
            .target()
            .ok_or_else(|| internal(format!("slot {slot} has no dictionary binding")))
    };
    let col_of = |slot: u32, fusion: Option<u32>| -> Result<OutcomeInfo> {
        let node = target(slot)?;
        Ok(OutcomeInfo {
            slot,
            fusion,
            dets: set.node_detectors[node as usize],
            class: set.node_class[node as usize],
            layer: node_layer(node),
        })
    };
    let mut outcomes = Vec::with_capacity(2 * layout.fusions.len() + layout.singles.len());
    for (j, f) in layout.fusions.iter().enumerate() {
        let (a, b) = (col_of(f.a, Some(j as u32))?, col_of(f.b, Some(j as u32))?);
        if a.class == b.class {
            return Err(internal(format!(
                "fusion {j} feeds a single class {:?}",
                a.class
            )));
        }
        let (first, second) = if a.class == Class::Primal { (a, b) } else { (b, a) };
        outcomes.push(first);
        outcomes.push(second);
    }
    for &s in &layout.singles {
        outcomes.push(col_of(s, None)?);
    }
    let mut det_outcomes = vec![Vec::new(); set.detectors.len()];
    for (col, o) in outcomes.iter().enumerate() {
        for &d in &o.dets {
            det_outcomes[d as usize].push(col as u32);
        }
    }
    let masks = surfaces
        .iter()
        .map(|s| {
            let mut mask = BitVec::zero(outcomes.len());
            for (col, o) in outcomes.iter().enumerate() {
                let node = target(o.slot)?;
                if s.support.binary_search(&node).is_ok() {
                    mask.set(col, true);
                }
            }
            Ok(SurfaceMask {
                class: s.class,
                normal: s.normal,
                mask,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionNetwork {
        mode: BiasMode::Unbiased,
        n_detectors: set.detectors.len(),
        n_primal: set.n_primal,
        det_cells: set.detectors.iter().map(|d| d.cell).collect(),
        outcomes,
        det_outcomes,
        surfaces: masks,
        layout,
    })
}
