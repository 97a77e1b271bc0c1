//! Correlation surfaces: the logical membranes of a foliated lattice.
//!
//! A correlation surface obeys the same cancellation condition as a detector
//! — an X-part whose Z-shadow vanishes at every X-measured node, extended by
//! the Z-measured outcomes it lands on — but is *not* a sum of detectors, so
//! its parity carries one bit of logical information across the torus. The
//! spanning direction classifies it: a sheet at constant time is space-like
//! (normal axis 2), a slab wrapping one spatial direction and all of time is
//! time-like (normal axis 0 or 1).
//!
//! Surfaces span the whole torus, so instead of mining a dense kernel per
//! size the search is folded by the translations that leave the slab
//! invariant: variables are node orbits under translations along the in-slab
//! axes, which reduces each (class, normal) search to a kernel of a few dozen
//! columns at any lattice size. Time is folded by *twice* the schedule period
//! when one period exchanges the two detector classes (the e↔m exchange of
//! the underlying Floquet phase), so the representatives stay class-pure.
//!
//! Membership in the detector row space is decided without linear algebra:
//! every outcome lies in exactly two detectors of its class, so a class-pure
//! set is a detector sum exactly when its indicator is a cut — a parity
//! union-find over the class's detectors settles that in near-linear time.

use std::collections::BTreeSet;

use crate::error::{internal, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::lattice::detectors::{full_support, Class, DetectorSet};
use crate::lattice::FoliatedLattice;

/// One logical membrane representative.
#[derive(Clone, Debug)]
pub struct CorrelationSurface {
    /// Detector class whose matching must not cut this surface.
    pub class: Class,
    /// Axis normal to the slab: 0 or 1 → time-like, 2 → space-like.
    pub normal: u8,
    /// Sorted outcome support (X-part plus Z-measured extension).
    pub support: Vec<u32>,
}

impl CorrelationSurface {
    /// Parity of the surface over a set of flipped outcomes.
    pub fn parity_of(&self, flipped: impl IntoIterator<Item = u32>) -> bool {
        let mut parity = false;
        for node in flipped {
            if self.support.binary_search(&node).is_ok() {
                parity = !parity;
            }
        }
        parity
    }
}

/// Finds one planar-slab representative per class and normal axis, primal
/// block first, axes ascending within each class.
pub fn find_correlation_surfaces(
    f: &FoliatedLattice,
    set: &DetectorSet,
) -> Result<Vec<CorrelationSurface>> {
    let mut out = Vec::with_capacity(6);
    for class in [Class::Primal, Class::Dual] {
        for normal in 0..3u8 {
            out.push(surface_for(f, set, class, normal)?);
        }
    }
    Ok(out)
}

/// Decides whether a class-pure outcome set is a sum of detectors of its
/// class. With every outcome in exactly two class detectors, `S` is a sum
/// exactly when some detector labelling `φ` satisfies
/// `φ(d₁(n)) ⊕ φ(d₂(n)) = S(n)` for every class node `n`; a parity
/// union-find finds `φ` or a contradiction.
pub fn is_detector_sum(f: &FoliatedLattice, set: &DetectorSet, support: &[u32]) -> bool {
    debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
    let class = set.node_class[support[0] as usize];
    let mut parent: Vec<u32> = (0..set.detectors.len() as u32).collect();
    let mut to_parent = vec![false; set.detectors.len()];
    fn find(parent: &mut [u32], to_parent: &mut [bool], x: u32) -> (u32, bool) {
        let (p, pp) = (parent[x as usize], to_parent[x as usize]);
        if p == x {
            return (x, false);
        }
        let (root, rp) = find(parent, to_parent, p);
        parent[x as usize] = root;
        to_parent[x as usize] = pp ^ rp;
        (root, pp ^ rp)
    }
    for n in 0..f.node_count() as u32 {
        if set.node_class[n as usize] != class {
            continue;
        }
        let [d1, d2] = set.node_detectors[n as usize];
        let want = support.binary_search(&n).is_ok();
        let (r1, p1) = find(&mut parent, &mut to_parent, d1);
        let (r2, p2) = find(&mut parent, &mut to_parent, d2);
        if r1 == r2 {
            if p1 ^ p2 != want {
                return false;
            }
        } else {
            parent[r1 as usize] = r2;
            to_parent[r1 as usize] = p1 ^ p2 ^ want;
        }
    }
    true
}

/// Searches widening slabs along `normal` until a class-pure non-trivial
/// membrane appears.
fn surface_for(
    f: &FoliatedLattice,
    set: &DetectorSet,
    class: Class,
    normal: u8,
) -> Result<CorrelationSurface> {
    let extent = f.axis_len(normal as usize);
    let max_w = extent.min(2 * f.time_period() + 2);
    for w in 1..=max_w {
        if let Some(support) = invariant_slab_membrane(f, set, class, normal, w)? {
            return Ok(CorrelationSurface {
                class,
                normal,
                support,
            });
        }
    }
    Err(internal(format!(
        "correlation-surface quotient is trivial for {class:?} along axis {normal}"
    )))
}

/// Time-fold that keeps a class invariant: one schedule period, doubled when
/// translating by a period exchanges the classes.
fn class_fold(f: &FoliatedLattice, set: &DetectorSet) -> u32 {
    let period = f.time_period();
    let probe = f.translate(0, [0, 0, period as i64]);
    if set.node_class[probe as usize] == set.node_class[0] {
        period
    } else {
        2 * period
    }
}

/// Solves the folded cancellation system on a slab `coords[normal] ∈ [0, w)`
/// and returns the lightest class-pure non-trivial solution, if any.
fn invariant_slab_membrane(
    f: &FoliatedLattice,
    set: &DetectorSet,
    class: Class,
    normal: u8,
    w: u32,
) -> Result<Option<Vec<u32>>> {
    let fold = class_fold(f, set);
    if normal != 2 && f.t() % fold != 0 {
        return Err(internal("time extent incompatible with the class fold"));
    }
    // Orbit of a node under translations along the two in-slab axes.
    let orbit_key = |v: u32| -> Option<(u32, u32, u32)> {
        if f.z_measured(v) || set.node_class[v as usize] != class {
            return None;
        }
        let c = f.coords(v);
        let along = c[normal as usize] as u32;
        if along >= w {
            return None;
        }
        match normal {
            2 => Some((along, f.local_id(v), 0)),
            _ => Some((along, f.local_id(v), c[2] as u32 % fold)),
        }
    };
    let mut keys: BTreeSet<(u32, u32, u32)> = BTreeSet::new();
    for v in 0..f.node_count() as u32 {
        if let Some(k) = orbit_key(v) {
            keys.insert(k);
        }
    }
    if keys.is_empty() {
        return Ok(None);
    }
    let keys: Vec<(u32, u32, u32)> = keys.into_iter().collect();
    let col: std::collections::HashMap<(u32, u32, u32), usize> =
        keys.iter().enumerate().map(|(j, &k)| (k, j)).collect();

    // Cancellation rows at every X-measured node, folded and deduplicated.
    let mut rows: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in 0..f.node_count() as u32 {
        if f.z_measured(g) {
            continue;
        }
        let mut ones: Vec<usize> = Vec::new();
        for &v in f.neighbors(g) {
            if let Some(k) = orbit_key(v) {
                ones.push(col[&k]);
            }
        }
        if ones.is_empty() {
            continue;
        }
        // A doubled orbit entry is a cancelled pair, not a set bit.
        ones.sort_unstable();
        let mut folded = Vec::with_capacity(ones.len());
        let mut i = 0;
        while i < ones.len() {
            let mut run = 1;
            while i + run < ones.len() && ones[i + run] == ones[i] {
                run += 1;
            }
            if run % 2 == 1 {
                folded.push(ones[i]);
            }
            i += run;
        }
        if !folded.is_empty() {
            rows.insert(folded);
        }
    }
    let mut m = BitMatrix::empty(keys.len());
    for ones in rows {
        m.push_row(BitVec::from_indices(keys.len(), &ones));
    }
    let kernel = m.nullspace();

    // Unfold candidates; keep non-trivial ones, lightest support first.
    let mut best: Option<Vec<u32>> = None;
    let mut candidates: Vec<BitVec> = kernel.clone();
    for i in 0..kernel.len() {
        for j in i + 1..kernel.len() {
            let mut s = kernel[i].clone();
            s.xor_assign(&kernel[j]);
            candidates.push(s);
        }
    }
    for cand in candidates {
        let s_x: Vec<u32> = (0..f.node_count() as u32)
            .filter(|&v| orbit_key(v).is_some_and(|k| cand.get(col[&k])))
            .collect();
        if s_x.is_empty() {
            continue;
        }
        let support = full_support(f, &s_x);
        if support
            .iter()
            .any(|&v| set.node_class[v as usize] != class)
        {
            continue;
        }
        if is_detector_sum(f, set, &support) {
            continue;
        }
        if best.as_ref().is_none_or(|b| support.len() < b.len()) {
            best = Some(support);
        }
    }
    Ok(best)
}
