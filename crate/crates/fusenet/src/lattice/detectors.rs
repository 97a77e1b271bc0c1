//! Detector mining on foliated lattices.
//!
//! A detector is a set of measured outcomes whose product is deterministic on
//! the noiseless lattice. Writing `A` for the resource-graph adjacency, the
//! stabilizer product over a node set `S` acts as `X` on `S` and as `Z^(A·1_S)`
//! elsewhere, so with every node measured in X the condition is `A·1_S = 0`:
//! each node must see an even number of `S`-members among its neighbors. On a
//! lattice with Z-measured nodes (the branched variant's chain-entry leaves,
//! whose frame carries the √(±iY) left by the X-measurement surgery) the
//! X-part `S` ranges over X-measured nodes, the cancellation rows apply at
//! X-measured nodes only, and a Z-measured node joins the detector's outcome
//! support wherever `(A·1_S)` lands on it with odd parity.
//!
//! Minimal detectors are local and translation-covariant, so the miner solves
//! the cancellation condition on a fixed reference torus restricted to a thin
//! time slab (which keeps delocalized logicals out of the kernel basis),
//! replicates the resulting cells across the torus, and greedily assembles
//! the canonical family in which **every outcome lies in exactly two
//! detectors**. That double-cover property is what turns decoding into
//! matching: a flipped outcome toggles precisely the two detectors it
//! belongs to.

use std::collections::HashSet;

use crate::error::{internal, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::lattice::{Family, FoliatedLattice};

/// Primal/dual bipartition of detectors and nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Class {
    /// The class containing node 0.
    Primal,
    /// The complementary class.
    Dual,
}

impl Class {
    /// The other class.
    pub fn other(self) -> Class {
        match self {
            Class::Primal => Class::Dual,
            Class::Dual => Class::Primal,
        }
    }
}

/// One deterministic parity cell.
#[derive(Clone, Debug)]
pub struct Detector {
    /// Sorted node ids whose outcomes multiply to a fixed sign.
    pub support: Vec<u32>,
    /// Which bipartition class the cell belongs to.
    pub class: Class,
    /// Spatial/temporal locator: cell coordinate of the smallest member.
    pub cell: [u16; 3],
}

/// The complete detector family of a lattice.
///
/// Detectors are stored primal block first, each block sorted by smallest
/// member, so indices are deterministic across runs.
#[derive(Clone, Debug)]
pub struct DetectorSet {
    /// All detectors, `[0, n_primal)` primal, the rest dual.
    pub detectors: Vec<Detector>,
    /// Number of primal detectors.
    pub n_primal: usize,
    /// Class of every lattice node (a node inherits its two detectors').
    pub node_class: Vec<Class>,
    /// For each node, the indices of the two detectors containing it.
    pub node_detectors: Vec<[u32; 2]>,
}

impl DetectorSet {
    /// Detector indices of one class as a range into `detectors`.
    pub fn class_range(&self, class: Class) -> std::ops::Range<usize> {
        match class {
            Class::Primal => 0..self.n_primal,
            Class::Dual => self.n_primal..self.detectors.len(),
        }
    }

    /// Flips the syndrome bits of the two detectors covering `node`.
    pub fn toggle(&self, node: u32, syndrome: &mut BitVec) {
        let [a, b] = self.node_detectors[node as usize];
        syndrome.flip(a as usize);
        syndrome.flip(b as usize);
    }

    /// Syndrome of a set of flipped nodes, as one bit per detector.
    pub fn syndrome_of(&self, flipped: impl IntoIterator<Item = u32>) -> BitVec {
        let mut s = BitVec::zero(self.detectors.len());
        for node in flipped {
            self.toggle(node, &mut s);
        }
        s
    }
}

/// Largest detector weight the miner keeps as a candidate.
const WEIGHT_CAP: usize = 32;

/// Mines the detector family of `f`.
///
/// The cells of each family are discovered once, densely, on a fixed
/// reference torus large enough that no logical membrane is lighter than a
/// cell, then transported to `f` by translation covariance. The transported
/// base instances are replicated over the torus and greedily assembled into
/// the exactly-twice cover, which is re-validated node by node.
pub fn find_detectors(f: &FoliatedLattice) -> Result<DetectorSet> {
    // Below three cells of transverse extent the logical membranes become
    // lighter than the cells themselves and no clean matching family exists.
    let min_extent = match f.family() {
        Family::Raussendorf => f.l().min(f.t()),
        _ => f.l(),
    };
    if min_extent < 3 {
        return Err(crate::error::invalid(format!(
            "detector mining needs every lattice extent ≥ 3 cells, got L={}, T={}",
            f.l(),
            f.t()
        )));
    }
    let shapes = discover_shapes(f.family())?;
    let mut instances = Vec::with_capacity(shapes.len());
    for shape in shapes.iter() {
        instances.push(shape.instantiate(f)?);
    }
    let set = assemble(f, &instances)?;
    validate(f, &set)?;
    Ok(set)
}

/// Reference torus on which each family's cells are mined densely. Sized so
/// that every membrane (weight growing with the torus) clears [`WEIGHT_CAP`]
/// while the dense nullspace stays cheap.
fn reference_dims(family: Family) -> (u32, u32) {
    match family {
        Family::FfccFull | Family::FfccBranched => (4, 12),
        Family::Raussendorf => (4, 4),
    }
}

fn build_reference(family: Family) -> Result<FoliatedLattice> {
    let (l, t) = reference_dims(family);
    match family {
        Family::FfccFull => crate::lattice::foliate_ffcc(&crate::hex::HexLattice::new(l)?, t),
        Family::FfccBranched => crate::lattice::branched_variant(
            &crate::lattice::foliate_ffcc(&crate::hex::HexLattice::new(l)?, t)?,
        ),
        Family::Raussendorf => crate::lattice::build_raussendorf(l, t),
    }
}

/// One detector cell in translation-invariant form: structural slots plus
/// centered cell/layer offsets from the cell's anchor node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CellShape {
    /// Anchor layer modulo the family's schedule period.
    phase: u32,
    /// `(local slot, Δcell0, Δcell1, Δlayer)` per member, sorted.
    nodes: Vec<(u32, i64, i64, i64)>,
}

impl CellShape {
    /// Reads off the shape of a concrete cell support.
    fn of(f: &FoliatedLattice, support: &[u32]) -> CellShape {
        let base = f.coords(support[0]);
        let center = |x: i64, m: i64| {
            let r = x.rem_euclid(m);
            if r > m / 2 {
                r - m
            } else {
                r
            }
        };
        let mut nodes: Vec<(u32, i64, i64, i64)> = support
            .iter()
            .map(|&n| {
                let c = f.coords(n);
                (
                    f.local_id(n),
                    center(c[0] as i64 - base[0] as i64, f.l() as i64),
                    center(c[1] as i64 - base[1] as i64, f.l() as i64),
                    center(c[2] as i64 - base[2] as i64, f.t() as i64),
                )
            })
            .collect();
        nodes.sort_unstable();
        CellShape {
            phase: base[2] as u32 % f.time_period(),
            nodes,
        }
    }

    /// Places one copy of the shape on `f`; translations of this base
    /// instance then tile the torus.
    fn instantiate(&self, f: &FoliatedLattice) -> Result<Vec<u32>> {
        let (l, t) = (f.l() as i64, f.t() as i64);
        for axis in 0..3 {
            let vals: Vec<i64> = self.nodes.iter().map(|n| [n.1, n.2, n.3][axis]).collect();
            let span = vals.iter().max().unwrap() - vals.iter().min().unwrap() + 1;
            let len = if axis == 2 { t } else { l };
            if span > len - 1 {
                return Err(crate::error::invalid(format!(
                    "detector cell spans {span} cells on axis {axis}, too wide for extent {len}"
                )));
            }
        }
        let mut out: Vec<u32> = self
            .nodes
            .iter()
            .map(|&(local, d0, d1, d2)| {
                f.node_at(
                    local,
                    d0.rem_euclid(l) as u32,
                    d1.rem_euclid(l) as u32,
                    (self.phase as i64 + d2).rem_euclid(t) as u32,
                )
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        if out.len() != self.nodes.len() {
            return Err(internal("detector cell self-overlaps after transfer"));
        }
        Ok(out)
    }
}

/// Per-process cache of discovered shapes.
fn shape_cache() -> &'static std::sync::Mutex<std::collections::HashMap<Family, std::sync::Arc<Vec<CellShape>>>>
{
    static CACHE: std::sync::OnceLock<
        std::sync::Mutex<std::collections::HashMap<Family, std::sync::Arc<Vec<CellShape>>>>,
    > = std::sync::OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Extends an X-part `s_x` to the full outcome support of its detector: every
/// Z-measured node on which the product's Z-part lands with odd parity
/// contributes its (Z) outcome to the parity as well.
pub(crate) fn full_support(f: &FoliatedLattice, s_x: &[u32]) -> Vec<u32> {
    let mut support: Vec<u32> = s_x.to_vec();
    let mut z_tally: std::collections::HashMap<u32, usize> = Default::default();
    for &v in s_x {
        for &w in f.neighbors(v) {
            if f.z_measured(w) {
                *z_tally.entry(w).or_insert(0) += 1;
            }
        }
    }
    support.extend(z_tally.iter().filter(|&(_, c)| c % 2 == 1).map(|(&w, _)| w));
    support.sort_unstable();
    support
}

/// Discovers the cell shapes of a family on its reference torus.
///
/// The cancellation kernel is computed densely with the candidate X-part
/// restricted to a thin time slab — wide enough to hold a whole cell at every
/// schedule phase, thin enough that no time-extended logical fits — then the
/// basis is sparsified by pairwise reduction until the light vectors are
/// single cells and the exactly-twice cover is assembled; the chosen cells,
/// reduced to translation-invariant form, are the family's shapes.
fn discover_shapes(family: Family) -> Result<std::sync::Arc<Vec<CellShape>>> {
    let mut cache = shape_cache().lock().expect("shape cache poisoned");
    if let Some(shapes) = cache.get(&family) {
        return Ok(shapes.clone());
    }
    let f = build_reference(family)?;
    let n = f.node_count();
    let slab = (f.time_period() + 4).min(f.t());
    let cols: Vec<u32> = (0..n as u32)
        .filter(|&v| !f.z_measured(v) && f.coords(v)[2] < slab as u16)
        .collect();
    let col_of: std::collections::HashMap<u32, usize> =
        cols.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let mut m = BitMatrix::empty(cols.len());
    for g in 0..n as u32 {
        if f.z_measured(g) {
            continue;
        }
        let mut row = BitVec::zero(cols.len());
        let mut touched = false;
        for &v in f.neighbors(g) {
            if let Some(&j) = col_of.get(&v) {
                row.set(j, true);
                touched = true;
            }
        }
        if touched {
            m.push_row(row);
        }
    }
    let mut basis = m.nullspace();
    sparsify(&mut basis);
    let candidates: Vec<Vec<u32>> = basis
        .iter()
        .map(|b| {
            let s_x: Vec<u32> = b.iter_ones().map(|j| cols[j]).collect();
            full_support(&f, &s_x)
        })
        .filter(|s| s.len() <= WEIGHT_CAP)
        .collect();
    if candidates.is_empty() {
        return Err(internal(
            "sparsified slab kernel has no cell below the weight cap",
        ));
    }
    let set = assemble(&f, &candidates)?;
    validate(&f, &set)?;
    let mut shapes: Vec<CellShape> = Vec::new();
    let mut seen = HashSet::new();
    for det in &set.detectors {
        let shape = CellShape::of(&f, &det.support);
        if seen.insert(shape.clone()) {
            shapes.push(shape);
        }
    }
    let shapes = std::sync::Arc::new(shapes);
    cache.insert(family, shapes.clone());
    Ok(shapes)
}

/// Pairwise weight reduction of a GF(2) basis: repeatedly replaces a vector
/// by its sum with a lighter one when that lowers its weight. On these
/// highly symmetric quasi-cyclic kernels this converges to the minimal cells
/// (the frozen per-family tests pin the outcome).
fn sparsify(basis: &mut Vec<BitVec>) {
    for _pass in 0..200 {
        basis.sort_unstable_by_key(BitVec::count_ones);
        let mut improved = false;
        for i in 1..basis.len() {
            for j in 0..i {
                let mut t = basis[i].clone();
                t.xor_assign(&basis[j]);
                let w = t.count_ones();
                if w != 0 && w < basis[i].count_ones() {
                    basis[i] = t;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Replicates base instances over the torus and greedily selects the
/// exactly-twice cover, then splits it into the two overlap classes.
fn assemble(f: &FoliatedLattice, shapes: &[Vec<u32>]) -> Result<DetectorSet> {
    let n = f.node_count();
    let mut instances: HashSet<Vec<u32>> = HashSet::new();
    for shape in shapes {
        for d in f.translations() {
            let mut img: Vec<u32> = shape.iter().map(|&v| f.translate(v, d)).collect();
            img.sort_unstable();
            instances.insert(img);
        }
    }
    let mut instances: Vec<Vec<u32>> = instances.into_iter().collect();
    instances.sort_unstable_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));

    let mut cover_count = vec![0u8; n];
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    for support in instances {
        if support.iter().all(|&v| cover_count[v as usize] < 2) {
            for &v in &support {
                cover_count[v as usize] += 1;
            }
            chosen.push(support);
        }
    }
    if let Some(node) = cover_count.iter().position(|&c| c != 2) {
        return Err(internal(format!(
            "exactly-twice cover incomplete: node {node} covered {} times",
            cover_count[node]
        )));
    }

    // Classes = connected components of the shared-node relation.
    let mut node_dets = vec![[u32::MAX; 2]; n];
    for (d, support) in chosen.iter().enumerate() {
        for &v in support {
            let slot = &mut node_dets[v as usize];
            if slot[0] == u32::MAX {
                slot[0] = d as u32;
            } else {
                slot[1] = d as u32;
            }
        }
    }
    let mut uf = UnionFind::new(chosen.len());
    for slot in &node_dets {
        uf.union(slot[0] as usize, slot[1] as usize);
    }
    let roots: HashSet<usize> = (0..chosen.len()).map(|d| uf.find(d)).collect();
    if roots.len() != 2 {
        return Err(internal(format!(
            "expected 2 detector classes, found {}",
            roots.len()
        )));
    }
    let primal_root = uf.find(node_dets[0][0] as usize);

    // Re-pack: primal block first, deterministic order inside each block.
    let mut order: Vec<usize> = (0..chosen.len()).collect();
    order.sort_unstable_by_key(|&d| (uf.find(d) != primal_root, chosen[d][0]));
    let n_primal = order.iter().filter(|&&d| uf.find(d) == primal_root).count();
    let mut detectors = Vec::with_capacity(chosen.len());
    let mut remap = vec![0u32; chosen.len()];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        remap[old_idx] = new_idx as u32;
        let support = std::mem::take(&mut chosen[old_idx]);
        let class = if new_idx < n_primal {
            Class::Primal
        } else {
            Class::Dual
        };
        let cell = f.coords(support[0]);
        detectors.push(Detector {
            support,
            class,
            cell,
        });
    }
    let mut node_class = Vec::with_capacity(n);
    let node_detectors: Vec<[u32; 2]> = node_dets
        .iter()
        .map(|slot| {
            let mut pair = [remap[slot[0] as usize], remap[slot[1] as usize]];
            pair.sort_unstable();
            pair
        })
        .collect();
    for pair in &node_detectors {
        let c0 = detectors[pair[0] as usize].class;
        let c1 = detectors[pair[1] as usize].class;
        if c0 != c1 {
            return Err(internal("node covered by detectors of both classes"));
        }
        node_class.push(c0);
    }
    Ok(DetectorSet {
        detectors,
        n_primal,
        node_class,
        node_detectors,
    })
}

/// Re-checks the cancellation condition on the assembled family.
fn validate(f: &FoliatedLattice, set: &DetectorSet) -> Result<()> {
    for (idx, det) in set.detectors.iter().enumerate() {
        let members: HashSet<u32> = det.support.iter().copied().collect();
        for &v in &det.support {
            // Detectors never straddle classes.
            if set.node_class[v as usize] != det.class {
                return Err(internal(format!("detector {idx} crosses classes")));
            }
        }
        let s_x: HashSet<u32> = members
            .iter()
            .copied()
            .filter(|&v| !f.z_measured(v))
            .collect();
        if s_x.is_empty() {
            return Err(internal(format!("detector {idx} has an empty X-part")));
        }
        let mut frontier: HashSet<u32> = members.clone();
        for &v in &s_x {
            frontier.extend(f.neighbors(v).iter().copied());
        }
        for g in frontier {
            let odd = f.neighbors(g).iter().filter(|m| s_x.contains(m)).count() % 2;
            if f.z_measured(g) {
                // The Z-part lands on g's Z outcome: recorded iff odd.
                if (odd == 1) != members.contains(&g) {
                    return Err(internal(format!(
                        "detector {idx} misrecords the Z outcome at node {g}"
                    )));
                }
            } else if odd != 0 {
                return Err(internal(format!(
                    "detector {idx} leaves an uncancelled Z at node {g}"
                )));
            }
        }
    }
    Ok(())
}

/// Plain union-find over detector indices.
struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::RowBasis;
    use crate::hex::HexLattice;
    use crate::lattice::{branched_variant, build_raussendorf, foliate_ffcc};

    fn ffcc(l: u32, t: u32) -> FoliatedLattice {
        foliate_ffcc(&HexLattice::new(l).unwrap(), t).unwrap()
    }

    /// Dense oracle: the dimension of the deterministic-parity kernel — the
    /// adjacency restricted to X-measured rows and columns.
    fn parity_nullity(f: &FoliatedLattice) -> usize {
        let x_nodes: Vec<u32> = (0..f.node_count() as u32)
            .filter(|&v| !f.z_measured(v))
            .collect();
        let col_of: std::collections::HashMap<u32, usize> =
            x_nodes.iter().enumerate().map(|(j, &v)| (v, j)).collect();
        let mut m = BitMatrix::empty(x_nodes.len());
        for &g in &x_nodes {
            let mut row = BitVec::zero(x_nodes.len());
            for &v in f.neighbors(g) {
                if let Some(&j) = col_of.get(&v) {
                    row.set(j, true);
                }
            }
            m.push_row(row);
        }
        m.nullspace().len()
    }

    /// GF(2) rank of the chosen detectors of one class.
    fn class_rank(set: &DetectorSet, n_nodes: usize, class: Class) -> usize {
        let mut basis = RowBasis::new();
        for d in set.class_range(class) {
            let idx: Vec<usize> = set.detectors[d].support.iter().map(|&v| v as usize).collect();
            basis.insert(BitVec::from_indices(n_nodes, &idx));
        }
        basis.rank()
    }

    fn structural_checks(f: &FoliatedLattice, set: &DetectorSet) {
        // Every node in exactly two detectors of its own class.
        let mut count = vec![0usize; f.node_count()];
        for det in &set.detectors {
            for &v in &det.support {
                count[v as usize] += 1;
                assert_eq!(set.node_class[v as usize], det.class);
            }
        }
        assert!(count.iter().all(|&c| c == 2));
        // node_detectors agrees with supports.
        for (v, pair) in set.node_detectors.iter().enumerate() {
            for &d in pair {
                assert!(set.detectors[d as usize].support.contains(&(v as u32)));
            }
        }
        // Primal is the class of node 0.
        assert_eq!(set.node_class[0], Class::Primal);
        // Within each class the product of all detectors is the identity
        // (every node appears twice), hence rank = count − 1 exactly when no
        // further relation exists.
        let n = f.node_count();
        assert_eq!(class_rank(set, n, Class::Primal), set.n_primal - 1);
        assert_eq!(
            class_rank(set, n, Class::Dual),
            set.detectors.len() - set.n_primal - 1
        );
    }

    #[test]
    fn rejects_degenerate_tori() {
        assert!(find_detectors(&build_raussendorf(2, 2).unwrap()).is_err());
        assert!(find_detectors(&build_raussendorf(3, 2).unwrap()).is_err());
        assert!(find_detectors(&ffcc(2, 6)).is_err());
    }

    #[test]
    fn raussendorf_detectors_are_cubes() {
        let f = build_raussendorf(3, 3).unwrap();
        let set = find_detectors(&f).unwrap();
        structural_checks(&f, &set);
        // One primal cube per cell and one dual cube per vertex.
        assert_eq!(set.detectors.len(), 54);
        assert_eq!(set.n_primal, 27);
        for det in &set.detectors {
            assert_eq!(det.support.len(), 6);
        }
        // Primal supports are faces (slots 0–2) exactly when node 0 is a face.
        for det in &set.detectors {
            for &v in &det.support {
                assert_eq!(v % 6 < 3, det.class == Class::Primal);
            }
        }
        // Oracle: full adjacency nullity = (cells − 1) per class plus the
        // topological logicals (three membrane orientations per class).
        let nullity = parity_nullity(&f);
        assert_eq!(nullity - (set.detectors.len() - 2), 6);
    }

    #[test]
    fn raussendorf_detector_count_scales_with_cells() {
        let f = build_raussendorf(4, 3).unwrap();
        let set = find_detectors(&f).unwrap();
        structural_checks(&f, &set);
        assert_eq!(set.detectors.len(), 2 * 16 * 3);
        assert!(set.detectors.iter().all(|d| d.support.len() == 6));
    }

    #[test]
    fn ffcc_detector_family() {
        let f = ffcc(3, 6);
        let set = find_detectors(&f).unwrap();
        structural_checks(&f, &set);
        let sizes: Vec<usize> = set.detectors.iter().map(|d| d.support.len()).collect();
        let total: usize = sizes.iter().sum();
        assert_eq!(total, 2 * f.node_count());
        let nullity = parity_nullity(&f);
        let logicals = nullity - (set.detectors.len() - 2);
        // Topological logical count must not depend on the torus size.
        let f2 = ffcc(3, 12);
        let set2 = find_detectors(&f2).unwrap();
        structural_checks(&f2, &set2);
        let logicals2 = parity_nullity(&f2) - (set2.detectors.len() - 2);
        assert_eq!(logicals, logicals2);
        assert!(logicals >= 2, "need at least one logical pair, got {logicals}");
        // Detector count doubles with T, as does the per-class split.
        assert_eq!(set2.detectors.len(), 2 * set.detectors.len());
        let hist: std::collections::BTreeMap<usize, usize> =
            sizes.iter().fold(Default::default(), |mut h, &s| {
                *h.entry(s).or_insert(0) += 1;
                h
            });
        println!(
            "FFCC L=3 T=6: {} detectors ({} primal), sizes {:?}, logicals {}",
            set.detectors.len(),
            set.n_primal,
            hist,
            logicals
        );
    }

    #[test]
    fn branched_detector_family() {
        let f = branched_variant(&ffcc(3, 6)).unwrap();
        let set = find_detectors(&f).unwrap();
        structural_checks(&f, &set);
        let total: usize = set.detectors.iter().map(|d| d.support.len()).sum();
        assert_eq!(total, 2 * f.node_count());
        // One cell per face of the scheduled color per anchor layer: L² per
        // layer and class, at 12 outcomes each (6 backbone X, 6 leaf Z) —
        // lighter than the 18-outcome unbranched cell over the same volume.
        assert_eq!(set.detectors.len(), 54);
        assert_eq!(set.n_primal, 27);
        for det in &set.detectors {
            assert_eq!(det.support.len(), 12);
            let x_part = det.support.iter().filter(|&&v| !f.z_measured(v)).count();
            assert_eq!(x_part, 6);
        }
        let logicals = parity_nullity(&f) - (set.detectors.len() - 2);
        assert_eq!(logicals, 6);
    }

    #[test]
    fn syndrome_toggles_two_detectors() {
        let f = build_raussendorf(3, 3).unwrap();
        let set = find_detectors(&f).unwrap();
        // Nodes 0 and 7 live in different cells, so four detectors flip; a
        // repeated node cancels itself.
        let s = set.syndrome_of([0u32, 7]);
        assert_eq!(s.count_ones(), 4);
        let again = set.syndrome_of([0u32, 7, 7]);
        assert_eq!(again.count_ones(), 2);
    }
}
