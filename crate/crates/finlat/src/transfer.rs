//! Transfer of strong irreducibility along pairs of order-preserving maps,
//! and ideal-lattice localization models for `Z/nZ`.
//!
//! A pair `(G, F)` with `G: L -> L'` a meet-homomorphism, `F: L' -> L`
//! order-preserving, and `a <= F(G(a))` for all `a` transfers strong
//! irreducibility backwards: if `G(p)` is strongly irreducible in `L'` and
//! `G(F(G(p))) = G(p)`, then `F(G(p))` is strongly irreducible in `L`.

use crate::builders::{self, BuilderError};
use crate::classify::{is_strongly_hollow, is_strongly_irreducible};
use crate::lattice::FiniteLattice;
use crate::limits::Limits;
use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("map lengths do not match lattice sizes")]
    ShapeMismatch,
    #[error("map value {value} out of range for target size {size}")]
    ValueOutOfRange { value: usize, size: usize },
    #[error("map {map} is not order-preserving at ({a}, {b})")]
    NotMonotone { map: char, a: usize, b: usize },
    #[error("transfer hypothesis failed: {0}")]
    HypothesesFail(Hypothesis),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} does not divide {n}")]
    DoesNotDivide { p: u64, n: u64 },
    #[error(transparent)]
    Builder(#[from] BuilderError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    GMonotone,
    FMonotone,
    GMeetHomomorphism,
    UnitInequality,
    FixedPoint,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hypothesis::GMonotone => "G is not order-preserving",
            Hypothesis::FMonotone => "F is not order-preserving",
            Hypothesis::GMeetHomomorphism => "G is not a meet-homomorphism",
            Hypothesis::UnitInequality => "a <= F(G(a)) fails",
            Hypothesis::FixedPoint => "G(F(G(p))) = G(p) fails",
        };
        write!(f, "{s}")
    }
}

/// Maps forward (`G: source -> target`) and backward (`F: target -> source`)
/// between two lattices. Only shapes are validated here; the lemma
/// hypotheses are reported by [`verify_pair`] and enforced by
/// [`transfer_si`].
#[derive(Debug, Clone)]
pub struct MonotonePair {
    pub source: Arc<FiniteLattice>,
    pub target: Arc<FiniteLattice>,
    g: Vec<usize>,
    f: Vec<usize>,
}

/// JSON form of a pair: two index maps against externally supplied lattices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDocument {
    #[serde(rename = "G")]
    pub g: Vec<usize>,
    #[serde(rename = "F")]
    pub f: Vec<usize>,
}

impl MonotonePair {
    pub fn new(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        g: Vec<usize>,
        f: Vec<usize>,
    ) -> Result<Self, TransferError> {
        if g.len() != source.size() || f.len() != target.size() {
            return Err(TransferError::ShapeMismatch);
        }
        if let Some(&v) = g.iter().find(|&&v| v >= target.size()) {
            return Err(TransferError::ValueOutOfRange { value: v, size: target.size() });
        }
        if let Some(&v) = f.iter().find(|&&v| v >= source.size()) {
            return Err(TransferError::ValueOutOfRange { value: v, size: source.size() });
        }
        Ok(MonotonePair { source, target, g, f })
    }

    pub fn g(&self, a: usize) -> usize {
        self.g[a]
    }

    pub fn f(&self, b: usize) -> usize {
        self.f[b]
    }

    /// The composite `F(G(a))` on the source lattice.
    pub fn fg(&self, a: usize) -> usize {
        self.f[self.g[a]]
    }

    /// The pair with the roles of the two maps reversed.
    pub fn swapped(&self) -> MonotonePair {
        MonotonePair {
            source: self.target.clone(),
            target: self.source.clone(),
            g: self.f.clone(),
            f: self.g.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub g_monotone: bool,
    pub f_monotone: bool,
    pub g_meet_hom: bool,
    pub unit_ineq: bool,
    /// Elements `p` with `G(F(G(p))) = G(p)`.
    pub fixed_points: Vec<usize>,
}

impl PairReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.g_monotone && self.f_monotone && self.g_meet_hom && self.unit_ineq
    }
}

pub fn verify_pair(pair: &MonotonePair) -> PairReport {
    let src = &pair.source;
    let tgt = &pair.target;
    let mut g_monotone = true;
    let mut g_meet_hom = true;
    let mut unit_ineq = true;
    for a in src.elements() {
        if !src.leq(a, pair.fg(a)) {
            unit_ineq = false;
        }
        for b in src.elements() {
            if src.leq(a, b) && !tgt.leq(pair.g(a), pair.g(b)) {
                g_monotone = false;
            }
            if pair.g(src.meet(a, b)) != tgt.meet(pair.g(a), pair.g(b)) {
                g_meet_hom = false;
            }
        }
    }
    let mut f_monotone = true;
    for a in tgt.elements() {
        for b in tgt.elements() {
            if tgt.leq(a, b) && !src.leq(pair.f(a), pair.f(b)) {
                f_monotone = false;
            }
        }
    }
    let fixed_points = src
        .elements()
        .filter(|&p| pair.g(pair.fg(p)) == pair.g(p))
        .collect();
    PairReport { g_monotone, f_monotone, g_meet_hom, unit_ineq, fixed_points }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferVerdict {
    /// Whether `G(p)` is strongly irreducible in the target, i.e. whether
    /// the transfer hypothesis applies at this element.
    pub hypothesis_held: bool,
    /// Exhaustive re-check that `F(G(p))` is strongly irreducible in the
    /// source; only populated when the hypothesis held.
    pub conclusion_verified: Option<bool>,
}

/// Applies the transfer at `p`, after checking monotonicity of both maps,
/// the meet-homomorphism law for `G`, the unit inequality, and the fixed
/// point condition at `p`.
pub fn transfer_si(pair: &MonotonePair, p: usize) -> Result<TransferVerdict, TransferError> {
    let report = verify_pair(pair);
    if !report.g_monotone {
        return Err(TransferError::HypothesesFail(Hypothesis::GMonotone));
    }
    if !report.f_monotone {
        return Err(TransferError::HypothesesFail(Hypothesis::FMonotone));
    }
    if !report.g_meet_hom {
        return Err(TransferError::HypothesesFail(Hypothesis::GMeetHomomorphism));
    }
    if !report.unit_ineq {
        return Err(TransferError::HypothesesFail(Hypothesis::UnitInequality));
    }
    if !report.fixed_points.contains(&p) {
        return Err(TransferError::HypothesesFail(Hypothesis::FixedPoint));
    }
    let hypothesis_held = is_strongly_irreducible(&pair.target, pair.g(p));
    let conclusion_verified = hypothesis_held
        .then(|| is_strongly_irreducible(&pair.source, pair.fg(p)));
    Ok(TransferVerdict { hypothesis_held, conclusion_verified })
}

/// The ideal lattice of `Z/nZ` and of its localization at a prime `p`
/// dividing `n`, with the extension/contraction maps between them.
///
/// Ideals of `Z/nZ` are the `dZ/nZ` for divisors `d` of `n`; containment
/// reverses divisibility, so the ideal lattice is the order dual of the
/// divisor lattice. Elements keep the divisor labels. The localization at
/// `p` has ideal lattice given by the divisors of the `p`-part of `n`.
#[derive(Debug, Clone)]
pub struct LocalizationModel {
    pub n: u64,
    pub p: u64,
    /// Divisors of n, ascending; index i labels the ideal generated by the
    /// i-th divisor in Z/nZ.
    pub base_divisors: Vec<u64>,
    /// Divisors of the p-part, ascending.
    pub local_divisors: Vec<u64>,
    pub base: Arc<FiniteLattice>,
    pub localized: Arc<FiniteLattice>,
    /// source = localized, target = base; G is contraction, F is extension.
    pub pair: MonotonePair,
}

fn v_adic(p: u64, mut d: u64) -> u32 {
    let mut v = 0;
    while d.is_multiple_of(p) {
        d /= p;
        v += 1;
    }
    v
}

pub fn localization_model(
    n: u64,
    p: u64,
    limits: &Limits,
) -> Result<LocalizationModel, TransferError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(TransferError::NotPrime(p));
    }
    if n == 0 || !n.is_multiple_of(p) {
        return Err(TransferError::DoesNotDivide { p, n });
    }
    let p_part = p.pow(v_adic(p, n));
    let base = Arc::new(builders::divisor_lattice(n, limits)?.dual());
    let localized = Arc::new(builders::divisor_lattice(p_part, limits)?.dual());
    let base_divisors = builders::divisors_of(n);
    let local_divisors = builders::divisors_of(p_part);
    // contraction: the ideal generated by p^j in Z/nZ is p^j Z/nZ
    let g: Vec<usize> = local_divisors
        .iter()
        .map(|&e| base_divisors.iter().position(|&d| d == e).expect("p^j divides n"))
        .collect();
    // extension: dZ/nZ extends to the ideal generated by the p-part of d
    let f: Vec<usize> = base_divisors
        .iter()
        .map(|&d| {
            let e = p.pow(v_adic(p, d));
            local_divisors.iter().position(|&x| x == e).expect("p-part divides p-part of n")
        })
        .collect();
    let pair = MonotonePair::new(localized.clone(), base.clone(), g, f)?;
    Ok(LocalizationModel { n, p, base_divisors, local_divisors, base, localized, pair })
}

impl LocalizationModel {
    /// Index in the localized lattice of the extension of base ideal `d`.
    pub fn extend(&self, d: usize) -> usize {
        self.pair.f(d)
    }

    /// Index in the base lattice of the contraction of localized ideal `e`.
    pub fn contract(&self, e: usize) -> usize {
        self.pair.g(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisLawsReport {
    /// extension after contraction is the identity on the localized side
    pub fg_identity: bool,
    /// every base ideal is contained in its contraction-of-extension
    pub gf_inflationary: bool,
    /// contraction of extension sends divisor d to its p-part
    pub gf_is_p_part: bool,
}

impl GaloisLawsReport {
    pub fn all_hold(&self) -> bool {
        self.fg_identity && self.gf_inflationary && self.gf_is_p_part
    }
}

pub fn verify_galois_laws(model: &LocalizationModel) -> GaloisLawsReport {
    let fg_identity = model
        .localized
        .elements()
        .all(|e| model.extend(model.contract(e)) == e);
    let gf_inflationary = model
        .base
        .elements()
        .all(|d| model.base.leq(d, model.contract(model.extend(d))));
    let gf_is_p_part = model.base.elements().all(|d| {
        let expected = model.p.pow(v_adic(model.p, model.base_divisors[d]));
        model.base_divisors[model.contract(model.extend(d))] == expected
    });
    GaloisLawsReport { fg_identity, gf_inflationary, gf_is_p_part }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementCorrespondence {
    /// Divisor labelling the localized ideal.
    pub local_divisor: u64,
    pub si_in_localized: bool,
    pub si_of_contraction: bool,
    pub sh_in_localized: bool,
    pub sh_of_contraction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub elements: Vec<ElementCorrespondence>,
    /// `B` strongly irreducible in the localization iff its contraction is
    /// strongly irreducible in the base; both directions, every element.
    pub si_equivalence_holds: bool,
    /// Whether contraction preserves joins (ideal sums).
    pub g_preserves_joins: bool,
    /// Elements where strong hollowness in the localization fails to pull
    /// back to the contraction. Non-empty lists are possible: the forward
    /// hollow transfer needs hypotheses these models do not satisfy.
    pub hollow_forward_failures: Vec<u64>,
    /// With `g_preserves_joins`, strong hollowness of the contraction must
    /// push forward to the localized ideal.
    pub hollow_backward_holds: bool,
}

/// Exhaustive element-by-element comparison of strong irreducibility and
/// strong hollowness across the localization.
pub fn localization_correspondence(model: &LocalizationModel) -> CorrespondenceReport {
    let base = &model.base;
    let localized = &model.localized;
    let mut elements = Vec::new();
    for e in localized.elements() {
        let c = model.contract(e);
        elements.push(ElementCorrespondence {
            local_divisor: model.local_divisors[e],
            si_in_localized: is_strongly_irreducible(localized, e),
            si_of_contraction: is_strongly_irreducible(base, c),
            sh_in_localized: is_strongly_hollow(localized, e),
            sh_of_contraction: is_strongly_hollow(base, c),
        });
    }
    let si_equivalence_holds =
        elements.iter().all(|e| e.si_in_localized == e.si_of_contraction);
    let g_preserves_joins = localized.elements().all(|a| {
        localized.elements().all(|b| {
            model.contract(localized.join(a, b))
                == base.join(model.contract(a), model.contract(b))
        })
    });
    let hollow_forward_failures = elements
        .iter()
        .filter(|e| e.sh_in_localized && !e.sh_of_contraction)
        .map(|e| e.local_divisor)
        .collect();
    let hollow_backward_holds = !g_preserves_joins
        || elements.iter().all(|e| !e.sh_of_contraction || e.sh_in_localized);
    CorrespondenceReport {
        elements,
        si_equivalence_holds,
        g_preserves_joins,
        hollow_forward_failures,
        hollow_backward_holds,
    }
}

/// Outcome of a randomized transfer battery: pairs built to satisfy the
/// lemma hypotheses by construction, with every applicable fixed point
/// checked exhaustively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub pairs: usize,
    pub instances_checked: usize,
    /// (pair number, source element) of each conclusion failure.
    pub failures: Vec<(usize, usize)>,
}

/// Generates `count` seeded pairs satisfying the transfer hypotheses and
/// verifies the conclusion on every fixed point whose image is strongly
/// irreducible. Generation draws from three families: meet-translates
/// `x -> x /\ m` with the adjoint backward map, join-translates on
/// distributive lattices, and product projections.
pub fn transfer_battery(seed: u64, count: usize, limits: &Limits) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus: Vec<Arc<FiniteLattice>> = corpus_lattices(limits)
        .into_iter()
        .map(Arc::new)
        .collect();
    let mut failures = Vec::new();
    let mut instances_checked = 0usize;
    for pair_idx in 0..count {
        let pair = random_hypothesis_pair(&mut rng, &corpus, limits);
        let report = verify_pair(&pair);
        debug_assert!(report.hypotheses_hold());
        for &p in &report.fixed_points {
            match transfer_si(&pair, p) {
                Ok(verdict) => {
                    if verdict.hypothesis_held {
                        instances_checked += 1;
                        if verdict.conclusion_verified != Some(true) {
                            failures.push((pair_idx, p));
                        }
                    }
                }
                Err(_) => failures.push((pair_idx, p)),
            }
        }
    }
    BatteryReport { seed, pairs: count, instances_checked, failures }
}

fn corpus_lattices(limits: &Limits) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(builders::chain(n, limits).expect("chain"));
    }
    for k in 1..=3 {
        out.push(builders::boolean(k, limits).expect("boolean"));
    }
    for n in [12u64, 30, 36, 60] {
        out.push(builders::divisor_lattice(n, limits).expect("divisor"));
    }
    for k in 3..=5 {
        out.push(builders::diamond(k, limits).expect("diamond"));
    }
    out.push(builders::pentagon(limits).expect("pentagon"));
    out
}

/// One random pair with the hypotheses holding by construction.
fn random_hypothesis_pair(
    rng: &mut ChaCha8Rng,
    corpus: &[Arc<FiniteLattice>],
    limits: &Limits,
) -> MonotonePair {
    loop {
        match rng.random_range(0..3u32) {
            // x -> x /\ m into the same lattice, with the canonical adjoint back
            0 => {
                let l = corpus.choose(rng).expect("non-empty corpus").clone();
                let m = rng.random_range(0..l.size());
                let g: Vec<usize> = l.elements().map(|x| l.meet(x, m)).collect();
                let f = adjoint_backward(&l, &l, &g, rng);
                return MonotonePair::new(l.clone(), l, g, f).expect("shapes match");
            }
            // x -> (x /\ m) \/ j on a distributive lattice
            1 => {
                let distributive: Vec<&Arc<FiniteLattice>> =
                    corpus.iter().filter(|l| l.is_distributive()).collect();
                let l = (*distributive.choose(rng).expect("corpus has distributive members"))
                    .clone();
                let m = rng.random_range(0..l.size());
                let j = rng.random_range(0..l.size());
                let g: Vec<usize> =
                    l.elements().map(|x| l.join(l.meet(x, m), j)).collect();
                let f = adjoint_backward(&l, &l, &g, rng);
                return MonotonePair::new(l.clone(), l, g, f).expect("shapes match");
            }
            // projection of a product onto its first factor
            _ => {
                let l1 = corpus.choose(rng).expect("non-empty corpus");
                let l2 = corpus.choose(rng).expect("non-empty corpus");
                let Ok(prod) = builders::product(l1, l2, limits) else { continue };
                let prod = Arc::new(prod);
                let n2 = l2.size();
                let g: Vec<usize> = prod.elements().map(|x| x / n2).collect();
                let f: Vec<usize> =
                    l1.elements().map(|b| b * n2 + l2.top()).collect();
                return MonotonePair::new(prod, l1.clone(), g, f).expect("shapes match");
            }
        }
    }
}

/// `F(b) = join of { a | G(a) <= b }`, optionally inflated by a random join
/// translate. Keeps `a <= F(G(a))` for any `G`.
fn adjoint_backward(
    src: &FiniteLattice,
    tgt: &FiniteLattice,
    g: &[usize],
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let inflate = if rng.random_bool(0.3) { Some(rng.random_range(0..src.size())) } else { None };
    tgt.elements()
        .map(|b| {
            let base = src.join_all(src.elements().filter(|&a| tgt.leq(g[a], b)));
            match inflate {
                Some(r) => src.join(base, r),
                None => base,
            }
        })
        .collect()
}
