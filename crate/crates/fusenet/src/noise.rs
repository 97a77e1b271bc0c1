//! Erasure and bit-flip samplers for all simulated noise models.
//!
//! Four models drive the Monte-Carlo sweeps:
//!
//! * `iid` — every id (lattice qubit or fusion outcome) is independently
//!   erased and independently flipped at flat rates.
//! * `weighted_iid` — lattice qubits scale both rates by their valency,
//!   the proxy for how many entangling gates touched the qubit.
//! * `fusion_phenomenological` — a lost fusion yields neither parity, so
//!   both outcomes of a fusion are erased jointly; flips hit each outcome
//!   independently. Single-qubit measurements in the network stay clean.
//! * `fusion_physical` — boosted linear-optical fusions at failure rate
//!   `p_fail` consume `1/p_fail` photons each at transmission `η = 1 − γ`,
//!   giving per-outcome erasure rates from the closed form in
//!   [`fusion_erasure_probs`], optionally biased so that failure sacrifices
//!   only one class's outcome.
//!
//! Every Bernoulli draw is counter-based: a pure hash of
//! `(seed, shot, purpose, index)`. Samples therefore replay byte-for-byte
//! for a given parameter set no matter how shots are scheduled across
//! threads, and no sampler holds mutable state.

use crate::error::{invalid, Result};
use crate::fusion::{BiasMode, BiasTag, FusionNetwork};
use crate::gf2::BitVec;
use crate::lattice::FoliatedLattice;
use crate::rng;

/// Which noise model a parameter set drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Flat independent erasure/flip per id.
    Iid,
    /// Per-qubit rates multiplied by lattice valency.
    WeightedIid,
    /// Joint per-fusion erasure, independent per-outcome flips.
    FusionPhenomenological,
    /// Boosted-fusion loss model with optional failure bias.
    FusionPhysical,
}

impl Variant {
    /// Stable name used in configs and reports.
    pub fn name(self) -> &'static str {
        match self {
            Variant::Iid => "iid",
            Variant::WeightedIid => "weighted_iid",
            Variant::FusionPhenomenological => "fusion_phenomenological",
            Variant::FusionPhysical => "fusion_physical",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "iid" => Ok(Variant::Iid),
            "weighted_iid" => Ok(Variant::WeightedIid),
            "fusion_phenomenological" => Ok(Variant::FusionPhenomenological),
            "fusion_physical" => Ok(Variant::FusionPhysical),
            other => Err(invalid(format!(
                "unknown noise variant {other:?} (expected iid, weighted_iid, \
                 fusion_phenomenological or fusion_physical)"
            ))),
        }
    }
}

/// Full parameter set for one noise configuration.
///
/// The fields mirror the config keys accepted by [`NoiseParams::from_kv`]:
/// `variant`, `p_erase`, `p_err`, `p_fail`, `loss`, `bias_mode`, `seed`.
/// Unused fields are ignored by the samplers (e.g. `p_fail` under `iid`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    /// Model selector.
    pub variant: Variant,
    /// Erasure rate per id (flat and weighted models, phenomenological).
    pub p_erase: f64,
    /// Bit-flip rate per id.
    pub p_err: f64,
    /// Fusion failure rate (physical model only).
    pub p_fail: f64,
    /// Total optical loss γ per fused photon (physical model only).
    pub loss: f64,
    /// Failure-bias layout the network is expected to carry.
    pub bias: BiasMode,
    /// Global seed; shot indices split it into independent streams.
    pub seed: u64,
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams {
            variant: Variant::Iid,
            p_erase: 0.0,
            p_err: 0.0,
            p_fail: 0.25,
            loss: 0.0,
            bias: BiasMode::Unbiased,
            seed: 0,
        }
    }
}

impl NoiseParams {
    /// Applies one `key = value` assignment from a config file or flag.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let prob = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| invalid(format!("{key}: not a number: {v:?}")))
        };
        match key {
            "variant" => self.variant = value.parse()?,
            "p_erase" => self.p_erase = prob(value)?,
            "p_err" => self.p_err = prob(value)?,
            "p_fail" => self.p_fail = prob(value)?,
            "loss" => self.loss = prob(value)?,
            "bias_mode" => self.bias = value.parse()?,
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| invalid(format!("seed: not an integer: {value:?}")))?
            }
            other => return Err(invalid(format!("unknown noise key {other:?}"))),
        }
        Ok(())
    }

    /// Builds a parameter set from `key = value` pairs over the defaults,
    /// then validates it.
    pub fn from_kv<'a, I>(pairs: I) -> Result<NoiseParams>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut p = NoiseParams::default();
        for (k, v) in pairs {
            p.set(k, v)?;
        }
        p.validate()?;
        Ok(p)
    }

    /// Checks ranges and cross-field requirements.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("p_erase", self.p_erase),
            ("p_err", self.p_err),
            ("p_fail", self.p_fail),
            ("loss", self.loss),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.variant == Variant::FusionPhysical && self.p_fail == 0.0 {
            return Err(invalid(
                "the physical fusion model needs p_fail > 0 (1/p_fail photons per fusion)",
            ));
        }
        Ok(())
    }

    fn expect_variant(&self, allowed: &[Variant]) -> Result<()> {
        self.validate()?;
        if allowed.contains(&self.variant) {
            Ok(())
        } else {
            Err(invalid(format!(
                "sampler does not handle variant {}",
                self.variant.name()
            )))
        }
    }
}

/// One sampled error configuration over a fixed id space.
///
/// Ids are lattice qubits for the lattice-level models and outcome columns
/// for fusion networks. The two masks are drawn independently; consumers
/// must treat an id that is both erased and flipped as erased — its
/// measured value carries no information either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorSample {
    /// Heralded-erased ids.
    pub erased: BitVec,
    /// Flipped ids; only meaningful where `erased` is clear.
    pub flipped: BitVec,
}

impl ErrorSample {
    fn blank(n: usize) -> Self {
        ErrorSample {
            erased: BitVec::zero(n),
            flipped: BitVec::zero(n),
        }
    }

    /// Size of the id space both masks live on.
    pub fn len(&self) -> usize {
        self.erased.len()
    }

    /// True when nothing was erased or flipped.
    pub fn is_empty(&self) -> bool {
        self.erased.is_zero() && self.flipped.is_zero()
    }
}

/// Salt separating erasure draws from flip draws within a shot.
const SALT_ERASE: u64 = 1;
const SALT_FLIP: u64 = 2;

/// Handle for one Monte-Carlo shot's random draws.
///
/// Carries no state: each Bernoulli trial hashes
/// `(seed, shot, salt, index)`, so two handles with equal coordinates
/// produce equal samples and distinct shots are statistically independent.
#[derive(Clone, Copy, Debug)]
pub struct ShotRng {
    seed: u64,
    shot: u64,
}

impl ShotRng {
    /// Binds a global seed to one shot index.
    pub fn new(seed: u64, shot: u64) -> Self {
        ShotRng { seed, shot }
    }

    /// Bernoulli trial number `index` on the stream named by `salt`.
    fn trial(self, salt: u64, index: u64, p: f64) -> bool {
        p > 0.0 && rng::unit_at(rng::stream(self.seed, self.shot, salt), index) < p
    }
}

/// Samples flat IID noise over `n` ids: each id is erased with probability
/// `p_erase` and, independently, flipped with probability `p_err`.
pub fn sample_iid(n: usize, p: &NoiseParams, rng: ShotRng) -> Result<ErrorSample> {
    p.expect_variant(&[Variant::Iid])?;
    let mut s = ErrorSample::blank(n);
    for i in 0..n {
        if rng.trial(SALT_ERASE, i as u64, p.p_erase) {
            s.erased.set(i, true);
        }
        if rng.trial(SALT_FLIP, i as u64, p.p_err) {
            s.flipped.set(i, true);
        }
    }
    Ok(s)
}

/// Samples valency-weighted IID noise over the qubits of a foliated
/// lattice: qubit `q` is erased with probability `min(1, valency(q) ·
/// p_erase)` and flipped with probability `min(1, valency(q) · p_err)`.
pub fn sample_weighted_iid(
    lat: &FoliatedLattice,
    p: &NoiseParams,
    rng: ShotRng,
) -> Result<ErrorSample> {
    p.expect_variant(&[Variant::WeightedIid])?;
    let n = lat.node_count();
    let mut s = ErrorSample::blank(n);
    for q in 0..n {
        let valency = lat.neighbors(q as u32).len() as f64;
        if rng.trial(SALT_ERASE, q as u64, (valency * p.p_erase).min(1.0)) {
            s.erased.set(q, true);
        }
        if rng.trial(SALT_FLIP, q as u64, (valency * p.p_err).min(1.0)) {
            s.flipped.set(q, true);
        }
    }
    Ok(s)
}

/// Per-outcome erasure probabilities of one boosted fusion under photon
/// loss, returned as `(primal-feeding, dual-feeding)` to match the
/// network's column convention (fusion `j` owns columns `2j` and `2j+1`).
///
/// A fusion at failure rate `p_fail` consumes `1/p_fail` photons, all of
/// which must arrive for either parity to be read out, so the survival
/// factor is `η^(1/p_fail)` with `η = 1 − γ`. Unbiased circuits split
/// failure evenly: both outcomes erase with `1 − (1 − p_fail/2)·η^(1/p_fail)`.
/// Biased circuits load failure entirely onto the sacrificed side, which
/// then erases with `1 − (1 − p_fail)·η^(1/p_fail)` while the protected
/// side only sees loss, `1 − η^(1/p_fail)`. A primal-biased fusion
/// sacrifices its dual-feeding outcome and vice-versa.
///
/// Note the rates are monotone in `γ` but deliberately *not* in `p_fail`
/// once `γ > 0`: lowering the failure rate costs more photons per fusion,
/// so loss exposure grows as failure shrinks.
pub fn fusion_erasure_probs(p_fail: f64, loss: f64, tag: BiasTag) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&p_fail) || !(0.0..=1.0).contains(&loss) {
        return Err(invalid(format!(
            "p_fail and loss must lie in [0, 1], got ({p_fail}, {loss})"
        )));
    }
    if p_fail == 0.0 {
        if loss > 0.0 {
            return Err(invalid(
                "p_fail = 0 sends the photon count 1/p_fail to infinity; lossy fusions need p_fail > 0",
            ));
        }
        return Ok((0.0, 0.0));
    }
    let keep = (1.0 - loss).powf(1.0 / p_fail);
    match tag {
        BiasTag::None => {
            let p = 1.0 - (1.0 - p_fail / 2.0) * keep;
            Ok((p, p))
        }
        BiasTag::PrimalBiased => Ok((1.0 - keep, 1.0 - (1.0 - p_fail) * keep)),
        BiasTag::DualBiased => Ok((1.0 - (1.0 - p_fail) * keep, 1.0 - keep)),
    }
}

/// Samples fusion-network noise over outcome columns.
///
/// Phenomenological: each fusion is erased as a whole with probability
/// `p_erase` (both of its outcome columns at once). Physical: each outcome
/// column is erased independently at the rate [`fusion_erasure_probs`]
/// assigns it under the fusion's bias tag. Both variants then flip every
/// fusion outcome independently with probability `p_err`. Single-qubit
/// measurements keep their columns noiseless — only the lattice-level
/// models touch them.
pub fn sample_fusion_noise(
    net: &FusionNetwork,
    p: &NoiseParams,
    rng: ShotRng,
) -> Result<ErrorSample> {
    p.expect_variant(&[Variant::FusionPhenomenological, Variant::FusionPhysical])?;
    let mut s = ErrorSample::blank(net.n_outcomes());
    match p.variant {
        Variant::FusionPhenomenological => {
            for j in 0..net.layout.fusions.len() {
                if rng.trial(SALT_ERASE, j as u64, p.p_erase) {
                    s.erased.set(2 * j, true);
                    s.erased.set(2 * j + 1, true);
                }
            }
        }
        _ => {
            for (j, f) in net.layout.fusions.iter().enumerate() {
                let (p_primal, p_dual) = fusion_erasure_probs(p.p_fail, p.loss, f.bias)?;
                if rng.trial(SALT_ERASE, (2 * j) as u64, p_primal) {
                    s.erased.set(2 * j, true);
                }
                if rng.trial(SALT_ERASE, (2 * j + 1) as u64, p_dual) {
                    s.erased.set(2 * j + 1, true);
                }
            }
        }
    }
    for c in 0..2 * net.layout.fusions.len() {
        if rng.trial(SALT_FLIP, c as u64, p.p_err) {
            s.flipped.set(c, true);
        }
    }
    Ok(s)
}
