//! Minimum-weight perfect matching of violated detectors.
//!
//! The decoder runs in stages, cheapest first:
//!
//! 1. Union-find over weight-0 edges groups detectors into super cells.
//!    Defects pair up inside their cell along free paths; only odd cells
//!    leave one unpaired residual each. Pure-erasure shots end here —
//!    every erased flip toggles two detectors of the same cell, so cell
//!    parities are even and nothing is left over.
//! 2. A Dijkstra run from each residual collects its [`NEAREST`] closest
//!    fellow residuals as candidate partners, remembering predecessor
//!    edges for path readout. Early termination keeps this far below
//!    all-pairs cost on big lattices.
//! 3. Blossom matching over the candidate graph (costs mapped to integer
//!    profits so that a maximum-weight perfect matching is a minimum-cost
//!    one). Should the sparse candidate set fail to admit a perfect
//!    matching, the run repeats with all-pairs candidates.
//! 4. Matched paths are read back from the predecessor trees and XORed
//!    into the correction.
//!
//! Everything ties deterministically: the heap orders equal distances by
//! vertex id, equal-length paths keep the predecessor edge with the
//! lowest outcome id, and candidates are sorted before deduplication.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use rustworkx_core::max_weight_matching::max_weight_matching;
use rustworkx_core::petgraph::graph::{NodeIndex, UnGraph};

use crate::error::{internal, invalid, Result};
use crate::gf2::BitVec;

use super::{Correction, MatchingGraph, Syndrome};

/// Candidate partners collected per residual defect before matching.
const NEAREST: usize = 24;

/// Pairs up the violated detectors along minimum-weight paths.
pub fn mwpm(g: &MatchingGraph, s: &Syndrome) -> Result<Correction> {
    Ok(decode_inner(g, s, None, NEAREST)?.0)
}

/// Like [`mwpm`], but treats erased columns as weight-0 on the fly.
///
/// Equivalent to `mwpm(&apply_erasure(g, erased), s)` without cloning the
/// graph; the hot loop of a Monte Carlo scan calls this once per shot.
pub fn mwpm_erased(g: &MatchingGraph, s: &Syndrome, erased: &BitVec) -> Result<Correction> {
    Ok(decode_inner(g, s, Some(erased), NEAREST)?.0)
}

/// Edge weight under an optional erasure overlay.
fn weight(g: &MatchingGraph, erased: Option<&BitVec>, edge: u32) -> f64 {
    let e = &g.edges[edge as usize];
    match erased {
        Some(b) if b.get(e.outcome as usize) => 0.0,
        _ => e.weight,
    }
}

/// Full pipeline; also reports the matched pairs `(u, v, distance)` so
/// tests can audit optimality against an exhaustive oracle.
fn decode_inner(
    g: &MatchingGraph,
    s: &Syndrome,
    erased: Option<&BitVec>,
    k: usize,
) -> Result<(Correction, Vec<(u32, u32, f64)>)> {
    let mut corr = BitVec::zero(g.n_columns());
    if s.violated.is_empty() {
        return Ok((Correction { outcomes: corr }, Vec::new()));
    }
    if s.violated.len() % 2 != 0 {
        return Err(invalid(format!(
            "cannot pair up {} violated detectors",
            s.violated.len()
        )));
    }
    if s.violated.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("syndrome must be sorted and duplicate-free"));
    }
    if s.violated[0] < g.verts.start || *s.violated.last().unwrap() >= g.verts.end {
        return Err(invalid(format!(
            "syndrome names detectors outside rows {:?}",
            g.verts
        )));
    }

    // Stage 1: super cells and free intra-cell pairing.
    let start = g.verts.start;
    let mut cells = UnionFind::new(g.verts.len());
    for idx in 0..g.edges.len() as u32 {
        if weight(g, erased, idx) == 0.0 {
            let e = &g.edges[idx as usize];
            cells.union((e.a - start) as usize, (e.b - start) as usize);
        }
    }
    let mut grouped: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &d in &s.violated {
        grouped
            .entry(cells.find((d - start) as usize) as u32)
            .or_default()
            .push(d);
    }
    let mut pairs = Vec::new();
    let mut residuals = Vec::new();
    for members in grouped.values() {
        for chunk in members.chunks(2) {
            if let [u, v] = *chunk {
                free_path(g, erased, u, v, &mut corr)?;
                pairs.push((u, v, 0.0));
            } else {
                residuals.push(chunk[0]);
            }
        }
    }
    residuals.sort_unstable();

    if !residuals.is_empty() {
        // Stages 2–3: nearest-candidate matching, widened on demand.
        let k_eff = k.min(residuals.len() - 1);
        let (mut cands, mut runs) = survey(g, erased, &residuals, k_eff);
        let mut matched = blossom(&cands, residuals.len());
        if matched.len() * 2 < residuals.len() && k_eff < residuals.len() - 1 {
            (cands, runs) = survey(g, erased, &residuals, residuals.len() - 1);
            matched = blossom(&cands, residuals.len());
        }
        if matched.len() * 2 < residuals.len() {
            return Err(internal(
                "residual defects sit in disconnected components and cannot be paired",
            ));
        }

        // Stage 4: read matched paths off the predecessor trees.
        for (a, b) in matched {
            let ci = cands
                .binary_search_by(|c| (c.a, c.b).cmp(&(a, b)))
                .map_err(|_| internal("matched pair missing from the candidate list"))?;
            let c = &cands[ci];
            let run = &runs[c.via];
            let mut v = residuals[if c.via == a { b } else { a }];
            while run.pred[(v - start) as usize] != u32::MAX {
                let e = &g.edges[run.pred[(v - start) as usize] as usize];
                corr.flip(e.outcome as usize);
                v = if e.a == v { e.b } else { e.a };
            }
            debug_assert_eq!(v, residuals[c.via], "path readout must end at the source");
            pairs.push((residuals[a], residuals[b], c.dist));
        }
    }

    pairs.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    Ok((Correction { outcomes: corr }, pairs))
}

/// XORs a weight-0 path from `u` to `v` into the correction.
fn free_path(
    g: &MatchingGraph,
    erased: Option<&BitVec>,
    u: u32,
    v: u32,
    corr: &mut BitVec,
) -> Result<()> {
    let start = g.verts.start;
    let mut pred = vec![u32::MAX; g.verts.len()];
    let mut seen = vec![false; g.verts.len()];
    seen[(u - start) as usize] = true;
    let mut queue = VecDeque::from([u]);
    'bfs: while let Some(x) = queue.pop_front() {
        for &(idx, far) in g.neighbors(x) {
            if weight(g, erased, idx) != 0.0 || seen[(far - start) as usize] {
                continue;
            }
            seen[(far - start) as usize] = true;
            pred[(far - start) as usize] = idx;
            if far == v {
                break 'bfs;
            }
            queue.push_back(far);
        }
    }
    if !seen[(v - start) as usize] {
        return Err(internal("defects share a super cell but no free path exists"));
    }
    let mut x = v;
    while x != u {
        let e = &g.edges[pred[(x - start) as usize] as usize];
        corr.flip(e.outcome as usize);
        x = if e.a == x { e.b } else { e.a };
    }
    Ok(())
}

/// Shortest-path tree of one Dijkstra run, kept around for path readout.
struct Run {
    pred: Vec<u32>,
}

/// Candidate partner pair; `via` names the run that discovered it.
struct Cand {
    a: usize,
    b: usize,
    dist: f64,
    via: usize,
}

/// Heap entry ordered by distance, then vertex id for determinism.
#[derive(Clone, Copy)]
struct Frontier {
    dist: f64,
    vert: u32,
}

impl PartialEq for Frontier {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for Frontier {}
impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then_with(|| self.vert.cmp(&other.vert))
    }
}

/// Runs Dijkstra from every residual, each stopping after settling its
/// `k` nearest fellow residuals, and returns deduplicated candidates.
fn survey(
    g: &MatchingGraph,
    erased: Option<&BitVec>,
    residuals: &[u32],
    k: usize,
) -> (Vec<Cand>, Vec<Run>) {
    let start = g.verts.start;
    let n = g.verts.len();
    let mut cands = Vec::new();
    let mut runs = Vec::with_capacity(residuals.len());
    for (i, &src) in residuals.iter().enumerate() {
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![u32::MAX; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[(src - start) as usize] = 0.0;
        heap.push(Reverse(Frontier {
            dist: 0.0,
            vert: src,
        }));
        let mut found = 0;
        while let Some(Reverse(f)) = heap.pop() {
            let vi = (f.vert - start) as usize;
            if settled[vi] {
                continue;
            }
            settled[vi] = true;
            if f.vert != src {
                if let Ok(j) = residuals.binary_search(&f.vert) {
                    cands.push(Cand {
                        a: i.min(j),
                        b: i.max(j),
                        dist: f.dist,
                        via: i,
                    });
                    found += 1;
                    if found >= k {
                        break;
                    }
                }
            }
            for &(idx, far) in g.neighbors(f.vert) {
                let fi = (far - start) as usize;
                if settled[fi] {
                    continue;
                }
                let nd = f.dist + weight(g, erased, idx);
                if nd < dist[fi] {
                    dist[fi] = nd;
                    pred[fi] = idx;
                    heap.push(Reverse(Frontier {
                        dist: nd,
                        vert: far,
                    }));
                } else if nd == dist[fi]
                    && pred[fi] != u32::MAX
                    && g.edges[idx as usize].outcome < g.edges[pred[fi] as usize].outcome
                {
                    // Tie-break equal-length paths toward the lowest
                    // outcome id so the readout never depends on heap
                    // internals.
                    pred[fi] = idx;
                }
            }
        }
        runs.push(Run { pred });
    }
    cands.sort_unstable_by(|x, y| {
        (x.a, x.b)
            .cmp(&(y.a, y.b))
            .then(x.dist.total_cmp(&y.dist))
            .then(x.via.cmp(&y.via))
    });
    cands.dedup_by(|next, keep| (next.a, next.b) == (keep.a, keep.b));
    (cands, runs)
}

/// Minimum-cost perfect matching on the candidate graph, as sorted
/// residual-index pairs. Costs become profits `max + 1 - cost`, so the
/// cardinality-first maximum-weight matching minimizes total distance.
fn blossom(cands: &[Cand], n_residuals: usize) -> Vec<(usize, usize)> {
    let cost = |d: f64| (d * 1024.0).round() as i128;
    let mut graph: UnGraph<(), i128> = UnGraph::with_capacity(n_residuals, cands.len());
    for _ in 0..n_residuals {
        graph.add_node(());
    }
    let top = cands.iter().map(|c| cost(c.dist)).max().unwrap_or(0);
    for c in cands {
        graph.add_edge(NodeIndex::new(c.a), NodeIndex::new(c.b), top + 1 - cost(c.dist));
    }
    let matching = max_weight_matching(
        &graph,
        true,
        |e| Ok::<i128, std::convert::Infallible>(*e.weight()),
        false,
    )
    .expect("the weight accessor is infallible");
    let mut out: Vec<(usize, usize)> = matching
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    out.sort_unstable();
    out
}

/// Union-find with path halving; roots are the smallest member index.
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
            self.parent[x] = self.parent[self.parent[x] as usize];
            x = self.parent[x] as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{apply_erasure, build_matching_graph, MatchingGraph, Syndrome};
    use super::*;
    use crate::fusion::{decompose_chains, FusionNetwork};
    use crate::hex::HexLattice;
    use crate::lattice::{foliate_ffcc, Class};
    use crate::noise::{sample_fusion_noise, ErrorSample, NoiseParams, ShotRng, Variant};
    use crate::rng::SplitMix64;

    /// n vertices in a line; column i joins i and i+1.
    fn path_graph(n: u32) -> MatchingGraph {
        build_matching_graph((0..n - 1).map(|i| (i, [i, i + 1])), 0..n, (n - 1) as usize)
            .unwrap()
    }

    fn chain_net() -> FusionNetwork {
        let f = foliate_ffcc(&HexLattice::new(3).unwrap(), 6).unwrap();
        decompose_chains(&f).unwrap()
    }

    fn syndrome(v: &[u32]) -> Syndrome {
        Syndrome {
            violated: v.to_vec(),
        }
    }

    /// Does the correction toggle each detector exactly per the syndrome?
    fn clears(g: &MatchingGraph, s: &Syndrome, corr: &Correction) -> bool {
        g.verts.clone().all(|v| {
            let toggles = g
                .neighbors(v)
                .iter()
                .filter(|&&(e, _)| corr.outcomes.get(g.edges[e as usize].outcome as usize))
                .count();
            (toggles % 2 == 1) == s.violated.binary_search(&v).is_ok()
        })
    }

    /// All-pairs distances under the erasure overlay, independently of the
    /// production Dijkstra (Floyd–Warshall).
    fn all_dists(g: &MatchingGraph, erased: Option<&BitVec>) -> Vec<Vec<f64>> {
        let n = g.verts.len();
        let s = g.verts.start;
        let mut d = vec![vec![f64::INFINITY; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for (idx, e) in g.edges.iter().enumerate() {
            let w = weight(g, erased, idx as u32);
            let (a, b) = ((e.a - s) as usize, (e.b - s) as usize);
            if w < d[a][b] {
                d[a][b] = w;
                d[b][a] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    /// Exhaustive minimum over all perfect pairings of the defects.
    fn min_pairing(d: &[Vec<f64>], defects: &[usize]) -> f64 {
        if defects.is_empty() {
            return 0.0;
        }
        let a = defects[0];
        let mut best = f64::INFINITY;
        for i in 1..defects.len() {
            let b = defects[i];
            let rest: Vec<usize> = defects[1..]
                .iter()
                .copied()
                .filter(|&x| x != b)
                .collect();
            let total = d[a][b] + min_pairing(d, &rest);
            if total < best {
                best = total;
            }
        }
        best
    }

    #[test]
    fn rejects_bad_syndromes() {
        let g = path_graph(8);
        assert!(mwpm(&g, &syndrome(&[1])).is_err(), "odd count");
        assert!(mwpm(&g, &syndrome(&[3, 3])).is_err(), "duplicate");
        assert!(mwpm(&g, &syndrome(&[5, 2])).is_err(), "unsorted");
        assert!(mwpm(&g, &syndrome(&[1, 9])).is_err(), "out of range");
        let quiet = mwpm(&g, &syndrome(&[])).unwrap();
        assert!(quiet.outcomes.is_zero());
    }

    #[test]
    fn pairs_defects_along_the_shortest_path() {
        let g = path_graph(10);
        let s = syndrome(&[2, 7]);
        let corr = mwpm(&g, &s).unwrap();
        assert_eq!(
            corr.outcomes,
            BitVec::from_indices(9, &[2usize, 3, 4, 5, 6]),
            "path between 2 and 7 uses columns 2..=6"
        );
        assert!(clears(&g, &s, &corr));

        let (_, pairs) = decode_inner(&g, &syndrome(&[0, 3, 4, 9]), None, NEAREST).unwrap();
        assert_eq!(
            pairs,
            vec![(0, 3, 3.0), (4, 9, 5.0)],
            "close pairs beat the crossed pairing"
        );
    }

    #[test]
    fn erased_columns_cost_nothing() {
        let g = path_graph(10);
        let erased = BitVec::from_indices(9, &[3usize, 4, 5]);

        // Defects inside the erased cluster: peeled for free.
        let s = syndrome(&[3, 6]);
        let (corr, pairs) = decode_inner(&g, &s, Some(&erased), NEAREST).unwrap();
        assert_eq!(pairs, vec![(3, 6, 0.0)]);
        assert_eq!(corr.outcomes, BitVec::from_indices(9, &[3usize, 4, 5]));
        assert!(clears(&g, &s, &corr));

        // Defects outside ride through at reduced cost.
        let s = syndrome(&[2, 7]);
        let (corr, pairs) = decode_inner(&g, &s, Some(&erased), NEAREST).unwrap();
        assert_eq!(pairs, vec![(2, 7, 2.0)], "columns 2 and 6 still cost 1 each");
        assert!(clears(&g, &s, &corr));
    }

    #[test]
    fn matches_the_exhaustive_pairing_oracle() {
        let net = chain_net();
        let p = NoiseParams {
            variant: Variant::FusionPhenomenological,
            p_erase: 0.05,
            p_err: 0.02,
            seed: 411,
            ..NoiseParams::default()
        };
        let mut rng = SplitMix64::new(0x8f3a_11d2);
        let mut audited = 0;
        for class in [Class::Primal, Class::Dual] {
            let g = MatchingGraph::of_network(&net, class).unwrap();
            for shot in 0..60 {
                let mut sample =
                    sample_fusion_noise(&net, &p, ShotRng::new(p.seed, shot)).unwrap();
                // Erased outcomes are re-randomized downstream; emulate it.
                for c in sample.erased.clone().iter_ones() {
                    if rng.next_unit() < 0.5 {
                        sample.flipped.flip(c);
                    }
                }
                let s = Syndrome::from_bits(&net.syndrome_of(&sample.flipped), &g);
                assert_eq!(s.violated.len() % 2, 0, "class defect parity is even");
                let (corr, pairs) =
                    decode_inner(&g, &s, Some(&sample.erased), NEAREST).unwrap();
                assert!(clears(&g, &s, &corr), "syndrome must be cleared");
                if s.violated.is_empty() || s.violated.len() > 12 {
                    continue;
                }
                let d = all_dists(&g, Some(&sample.erased));
                let defects: Vec<usize> = s
                    .violated
                    .iter()
                    .map(|&v| (v - g.verts.start) as usize)
                    .collect();
                let mine: f64 = pairs.iter().map(|p| p.2).sum();
                assert_eq!(
                    mine,
                    min_pairing(&d, &defects),
                    "pairing cost must be exhaustively minimal"
                );
                audited += 1;
            }
        }
        assert!(audited >= 20, "only {audited} shots were oracle-checked");
    }

    #[test]
    fn pure_erasure_peels_every_defect() {
        let net = chain_net();
        let g = MatchingGraph::of_network(&net, Class::Primal).unwrap();
        let p = NoiseParams {
            variant: Variant::FusionPhenomenological,
            p_erase: 0.25,
            p_err: 0.0,
            seed: 99,
            ..NoiseParams::default()
        };
        let mut rng = SplitMix64::new(0x51ce_2207);
        for shot in 0..100 {
            let mut sample = sample_fusion_noise(&net, &p, ShotRng::new(p.seed, shot)).unwrap();
            for c in sample.erased.clone().iter_ones() {
                if rng.next_unit() < 0.5 {
                    sample.flipped.flip(c);
                }
            }
            let s = Syndrome::from_bits(&net.syndrome_of(&sample.flipped), &g);
            let (corr, pairs) = decode_inner(&g, &s, Some(&sample.erased), NEAREST).unwrap();
            assert!(
                pairs.iter().all(|p| p.2 == 0.0),
                "erased flips never leave a super cell, so matching is free"
            );
            assert!(clears(&g, &s, &corr));
        }
    }

    #[test]
    fn erased_clusters_behave_as_merged_cells() {
        let net = chain_net();
        let g = MatchingGraph::of_network(&net, Class::Primal).unwrap();
        let mut rng = SplitMix64::new(0xa0c3_7e15);
        for _ in 0..20 {
            let mut erased = BitVec::zero(net.n_outcomes());
            for c in 0..net.n_outcomes() {
                if rng.next_unit() < 0.2 {
                    erased.set(c, true);
                }
            }
            let d = all_dists(&g, Some(&erased));

            // Independent components over erased edges only.
            let n = g.verts.len();
            let mut comp = vec![u32::MAX; n];
            let mut next = 0;
            for v0 in 0..n {
                if comp[v0] != u32::MAX {
                    continue;
                }
                comp[v0] = next;
                let mut stack = vec![v0 as u32 + g.verts.start];
                while let Some(v) = stack.pop() {
                    for &(e, far) in g.neighbors(v) {
                        let fi = (far - g.verts.start) as usize;
                        if erased.get(g.edges[e as usize].outcome as usize)
                            && comp[fi] == u32::MAX
                        {
                            comp[fi] = next;
                            stack.push(far);
                        }
                    }
                }
                next += 1;
            }

            for u in 0..n {
                for v in 0..n {
                    assert_eq!(
                        d[u][v] == 0.0,
                        comp[u] == comp[v],
                        "free reach must coincide with erased components"
                    );
                    if comp[u] == comp[v] {
                        for t in 0..n {
                            assert_eq!(
                                d[u][t], d[v][t],
                                "distances may not depend on the cell representative"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn overlay_and_rewrite_agree_byte_for_byte() {
        let net = chain_net();
        let g = MatchingGraph::of_network(&net, Class::Dual).unwrap();
        let p = NoiseParams {
            variant: Variant::FusionPhenomenological,
            p_erase: 0.06,
            p_err: 0.03,
            seed: 5150,
            ..NoiseParams::default()
        };
        for shot in 0..40 {
            let sample = sample_fusion_noise(&net, &p, ShotRng::new(p.seed, shot)).unwrap();
            let s = Syndrome::from_bits(&net.syndrome_of(&sample.flipped), &g);
            let a = mwpm_erased(&g, &s, &sample.erased).unwrap();
            let b = mwpm_erased(&g, &s, &sample.erased).unwrap();
            let c = mwpm(&apply_erasure(&g, &sample.erased), &s).unwrap();
            assert_eq!(a, b, "repeat decode must replay exactly");
            assert_eq!(a, c, "overlay must equal the rewritten graph");
        }
    }

    #[test]
    fn widens_the_search_when_candidates_run_out() {
        // Two tight defect triples: with one candidate each, the candidate
        // graph splits into two odd components and has no perfect
        // matching, forcing the all-pairs retry.
        let g = path_graph(203);
        let s = syndrome(&[0, 1, 2, 100, 101, 102]);
        let (corr, pairs) = decode_inner(&g, &s, None, 1).unwrap();
        assert_eq!(
            pairs,
            vec![(0, 1, 1.0), (2, 100, 98.0), (101, 102, 1.0)],
            "fallback must recover the global optimum"
        );
        assert!(clears(&g, &s, &corr));

        let (_, wide) = decode_inner(&g, &s, None, NEAREST).unwrap();
        assert_eq!(pairs, wide, "narrow-plus-fallback equals the wide search");
    }

    #[test]
    fn decoding_feeds_the_logical_verdict() {
        // End to end on one class: noisy shot, repair, decode, verdict; a
        // redecode of the corrected outcomes is then error-free.
        let net = chain_net();
        let g = MatchingGraph::of_network(&net, Class::Primal).unwrap();
        let surface = &net.surfaces[0];
        let p = NoiseParams {
            variant: Variant::FusionPhenomenological,
            p_erase: 0.04,
            p_err: 0.02,
            seed: 31,
            ..NoiseParams::default()
        };
        let mut verdicts = [0u32; 2];
        for shot in 0..50 {
            let sample = sample_fusion_noise(&net, &p, ShotRng::new(p.seed, shot)).unwrap();
            let Some(repaired) =
                super::super::repair_surface(&g, &surface.mask, &sample.erased)
            else {
                continue;
            };
            let s = Syndrome::from_bits(&net.syndrome_of(&sample.flipped), &g);
            let corr = mwpm_erased(&g, &s, &sample.erased).unwrap();
            let ok = super::super::logical_outcome(&sample, &corr, &repaired).unwrap();
            verdicts[ok as usize] += 1;

            // The residual after correction has a trivial syndrome.
            let mut residual = sample.flipped.clone();
            residual.xor_assign(&corr.outcomes);
            let left = Syndrome::from_bits(&net.syndrome_of(&residual), &g);
            assert!(left.is_empty(), "correction must clear the class syndrome");
            let _ = ErrorSample {
                erased: sample.erased.clone(),
                flipped: residual,
            };
        }
        assert!(
            verdicts[1] > verdicts[0],
            "mild noise should mostly decode correctly: {verdicts:?}"
        );
    }
}
