//! Symbolic GF(2) composition checks for fusion networks.
//!
//! A parity of measurement outcomes is deterministic exactly when the
//! product of the measured operators lies in the stabilizer group of the
//! disjoint resource states. Two specializations cover every network built
//! here:
//!
//! * For rotated fusions `{X⊗Z, Z⊗X}` every slot is effectively read in X
//!   after a controlled-phase, so the network is one big graph state — the
//!   resource bonds plus one bond per fusion — and a deterministic outcome
//!   set is precisely a GF(2) kernel element of that graph's adjacency:
//!   every slot must see an even number of set neighbours
//!   ([`parity_closed`]).
//! * Mixed networks (Bell joints on caterpillars) go through the general
//!   composition system [`OpsSystem`]: one unknown per slot selecting which
//!   resource stabilizers enter the product, linear constraints from each
//!   fusion's operator pair, and linear usage forms tying the solution to
//!   the claimed outcome columns. A claimed detector or surface row is
//!   realizable iff the combined system is solvable.
//!
//! [`kernel_in_window`] and [`sparsify`] are the mining primitives for
//! networks whose incidence has no lattice dictionary (the 6-ring
//! construction): they enumerate the light kernel elements supported inside
//! a slot window.

use crate::gf2::{BitMatrix, BitVec};

use super::{FusionOps, NetworkLayout};

/// True iff `support` is a kernel element of the adjacency `adj`: every
/// vertex has an even number of neighbours inside the support.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn parity_closed(adj: &[Vec<u32>], support: &BitVec) -> bool {
    adj.iter()
        .all(|nbrs| nbrs.iter().filter(|&&v| support.get(v as usize)).count() % 2 == 0)
}

/// All joint zeros of the parity `rows` supported on the variable set
/// `cols`, returned as full supports of length `n_vars`. Adjacency lists
/// double as closure rows for rotated networks; Bell networks pass their
/// fusion constraint rows instead.
pub(crate) fn kernel_in_window(rows: &[Vec<u32>], n_vars: usize, cols: &[u32]) -> Vec<BitVec> {
    let col_of: std::collections::HashMap<u32, usize> =
        cols.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let mut m = BitMatrix::empty(cols.len());
    for vars in rows {
        let mut row = BitVec::zero(cols.len());
        let mut touched = false;
        for &v in vars {
            if let Some(&j) = col_of.get(&v) {
                row.flip(j);
                touched = true;
            }
        }
        if touched {
            m.push_row(row);
        }
    }
    m.nullspace()
        .into_iter()
        .map(|b| {
            let mut full = BitVec::zero(n_vars);
            for j in b.iter_ones() {
                full.set(cols[j] as usize, true);
            }
            full
        })
        .collect()
}

/// Pairwise weight reduction of a GF(2) basis: repeatedly replaces a vector
/// by its sum with a lighter one when that lowers its weight, until the
/// light vectors are the minimal cells of the quasi-cyclic kernel.
pub(crate) fn sparsify(basis: &mut Vec<BitVec>) {
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

/// Decides whether `candidate` is a GF(2) sum of the given detector
/// supports, assuming every slot lies in at most two of them (the
/// exactly-twice cover of one class). A parity union-find searches for a
/// detector labelling whose boundary is the candidate; a contradiction
/// proves the candidate is no sum (a wrapping membrane).
pub(crate) fn is_sum_of(dets: &[BitVec], candidate: &BitVec, n_slots: usize) -> bool {
    fn find(parent: &[u32], to_parent: &[bool], mut v: u32) -> (u32, bool) {
        let mut parity = false;
        while parent[v as usize] != v {
            parity ^= to_parent[v as usize];
            v = parent[v as usize];
        }
        (v, parity)
    }
    fn union(parent: &mut [u32], to_parent: &mut [bool], a: u32, b: u32, rel: bool) -> bool {
        let (ra, pa) = find(parent, to_parent, a);
        let (rb, pb) = find(parent, to_parent, b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        parent[ra as usize] = rb;
        to_parent[ra as usize] = pa ^ pb ^ rel;
        true
    }
    // root = dets.len() is the virtual "excluded" label.
    let root = dets.len() as u32;
    let mut parent: Vec<u32> = (0..=root).collect();
    let mut to_parent = vec![false; root as usize + 1];
    let mut owners: Vec<[u32; 2]> = vec![[u32::MAX; 2]; n_slots];
    for (d, sup) in dets.iter().enumerate() {
        for s in sup.iter_ones() {
            let o = &mut owners[s];
            if o[0] == u32::MAX {
                o[0] = d as u32;
            } else if o[1] == u32::MAX {
                o[1] = d as u32;
            } else {
                return false;
            }
        }
    }
    for s in 0..n_slots {
        let want = candidate.get(s);
        let ok = match owners[s] {
            [u32::MAX, _] => !want,
            [d, u32::MAX] => union(&mut parent, &mut to_parent, d, root, want),
            [d1, d2] => union(&mut parent, &mut to_parent, d1, d2, want),
        };
        if !ok {
            return false;
        }
    }
    true
}

/// The general composition system of a layout: unknown stabilizer selector
/// `v` (one bit per slot), fusion constraints, and per-outcome usage forms.
///
/// This is the mixed-operator verification oracle: networks that fuse with
/// more than one operator pair cannot be certified by [`parity_closed`]
/// alone, so their tests solve for a stabilizer selection instead.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) struct OpsSystem {
    /// Resource-bond adjacency rows as bit vectors over slots.
    rows: Vec<BitVec>,
    /// Constraint rows (must evaluate to zero).
    constraints: Vec<BitVec>,
    /// One linear form per outcome column, in network column order
    /// (fusion columns primal-feeding first is the caller's concern — these
    /// are in `(fusion a-bit, fusion b-bit) … singles` construction order).
    usage: Vec<BitVec>,
}

#[cfg_attr(not(test), allow(dead_code))]
impl OpsSystem {
    /// Builds the system from a layout. Usage forms are emitted per fusion
    /// in `(a, b)` slot order for rotated pairs and `(b#XX, a#ZZ)` order for
    /// Bell pairs — callers map network columns onto these via slot ids.
    pub(crate) fn new(layout: &NetworkLayout) -> OpsSystem {
        let n = layout.n_slots as usize;
        let mut adj = vec![BitVec::zero(n); n];
        for r in &layout.resources {
            for (a, b) in r.internal_edges() {
                adj[a as usize].flip(b as usize);
                adj[b as usize].flip(a as usize);
            }
        }
        let unit = |q: u32| BitVec::from_indices(n, &[q as usize]);
        let mut constraints = Vec::with_capacity(2 * layout.fusions.len());
        let mut usage = Vec::with_capacity(2 * layout.fusions.len() + layout.singles.len());
        for f in &layout.fusions {
            match f.ops {
                FusionOps::Rotated => {
                    // v_a = (Av)_b and v_b = (Av)_a; bits are the virtual X
                    // readouts of the two slots.
                    let mut c1 = unit(f.a);
                    c1.xor_assign(&adj[f.b as usize]);
                    let mut c2 = unit(f.b);
                    c2.xor_assign(&adj[f.a as usize]);
                    constraints.push(c1);
                    constraints.push(c2);
                    usage.push(unit(f.a));
                    usage.push(unit(f.b));
                }
                FusionOps::Bell => {
                    // v_a = v_b and (Av)_a = (Av)_b; the X⊗X bit reads the
                    // common v, the Z⊗Z bit the common boundary.
                    let mut c1 = unit(f.a);
                    c1.xor_assign(&unit(f.b));
                    let mut c2 = adj[f.a as usize].clone();
                    c2.xor_assign(&adj[f.b as usize]);
                    constraints.push(c1);
                    constraints.push(c2);
                    usage.push(unit(f.a));
                    usage.push(adj[f.a as usize].clone());
                }
            }
        }
        for &s in &layout.singles {
            // Singles are plain X readouts: boundary-free, usage v_s.
            constraints.push(adj[s as usize].clone());
            usage.push(unit(s));
        }
        OpsSystem {
            rows: adj,
            constraints,
            usage,
        }
    }

    /// Number of usage forms (outcome bits) the system carries.
    pub(crate) fn n_bits(&self) -> usize {
        self.usage.len()
    }

    /// True iff some stabilizer selection satisfies every fusion constraint
    /// and reproduces exactly the claimed outcome bits.
    pub(crate) fn realizable(&self, claimed: &BitVec) -> bool {
        debug_assert_eq!(claimed.len(), self.usage.len());
        let ncols = self.rows.len();
        let mut m = BitMatrix::empty(ncols);
        let mut rhs = Vec::with_capacity(self.constraints.len() + self.usage.len());
        for c in &self.constraints {
            m.push_row(c.clone());
            rhs.push(false);
        }
        for (i, u) in self.usage.iter().enumerate() {
            m.push_row(u.clone());
            rhs.push(claimed.get(i));
        }
        let mut b = BitVec::zero(rhs.len());
        for (i, &bit) in rhs.iter().enumerate() {
            if bit {
                b.set(i, true);
            }
        }
        m.solve(&b).is_some()
    }
}
