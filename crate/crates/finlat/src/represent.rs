//! Irredundant meet and join representations, the set-uniqueness check for
//! representations by strongly irreducible elements, and Kuros-Ore / Goldie
//! dimensions of finite modular lattices.

use crate::classify::{is_irreducible, is_strongly_irreducible};
use crate::lattice::FiniteLattice;
use crate::limits::Limits;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentError {
    #[error("lattice is not modular")]
    NotModular,
    #[error("requested part bound {requested} exceeds limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("no irredundant representation of the requested kind within bounds")]
    NoneFound,
    #[error("irredundant irreducible representations of sizes {a} and {b} coexist")]
    DimensionMismatch { a: usize, b: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartsKind {
    Any,
    Irreducible,
    StronglyIrreducible,
}

impl PartsKind {
    fn admits(self, l: &FiniteLattice, p: usize) -> bool {
        match self {
            PartsKind::Any => true,
            PartsKind::Irreducible => is_irreducible(l, p),
            PartsKind::StronglyIrreducible => is_strongly_irreducible(l, p),
        }
    }
}

/// A meet (or, via the dual, join) decomposition of `target` into an
/// irredundant antichain of parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub target: usize,
    /// Ascending part indices.
    pub parts: Vec<usize>,
    pub irredundant: bool,
    pub parts_kind: PartsKind,
}

/// All irredundant meet representations of `x` by parts of the requested
/// kind, with at most `max_size` parts. Only antichains are searched:
/// comparable parts are never irredundant.
pub fn irredundant_meet_reps(
    l: &FiniteLattice,
    x: usize,
    kind: PartsKind,
    max_size: usize,
    limits: &Limits,
) -> Result<Vec<Representation>, RepresentError> {
    if max_size > limits.max_rep_parts {
        return Err(RepresentError::SizeLimit {
            requested: max_size,
            limit: limits.max_rep_parts,
        });
    }
    let candidates: Vec<usize> =
        l.elements().filter(|&p| l.leq(x, p) && kind.admits(l, p)).collect();
    let mut found = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    search_meet_reps(l, x, &candidates, 0, l.top(), max_size, &mut chosen, &mut found);
    Ok(found
        .into_iter()
        .map(|parts| Representation { target: x, parts, irredundant: true, parts_kind: kind })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn search_meet_reps(
    l: &FiniteLattice,
    x: usize,
    candidates: &[usize],
    from: usize,
    current_meet: usize,
    max_size: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if current_meet == x && !chosen.is_empty() {
        if is_irredundant_meet(l, x, chosen) {
            found.push(chosen.clone());
        }
        // any extension keeps the meet at x and is redundant
        return;
    }
    if chosen.len() == max_size {
        return;
    }
    for i in from..candidates.len() {
        let p = candidates[i];
        if chosen.iter().any(|&c| l.comparable(c, p)) {
            continue;
        }
        chosen.push(p);
        search_meet_reps(l, x, candidates, i + 1, l.meet(current_meet, p), max_size, chosen, found);
        chosen.pop();
    }
}

/// Dropping any single part must change the meet; subsets only increase
/// meets further, so the one-drop check suffices.
fn is_irredundant_meet(l: &FiniteLattice, x: usize, parts: &[usize]) -> bool {
    if parts.len() == 1 {
        return true;
    }
    (0..parts.len()).all(|skip| {
        let m = l.meet_all(parts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &p)| p));
        m != x
    })
}

/// Dual search via the order-reversed lattice. For join representations the
/// kinds read as their duals: `StronglyIrreducible` selects strongly hollow
/// parts and `Irreducible` hollow parts.
pub fn irredundant_join_reps(
    l: &FiniteLattice,
    x: usize,
    kind: PartsKind,
    max_size: usize,
    limits: &Limits,
) -> Result<Vec<Representation>, RepresentError> {
    irredundant_meet_reps(&l.dual(), x, kind, max_size, limits)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KurosOreReport {
    /// Every irredundant representation of bottom by strongly irreducible
    /// parts, as found by the bounded search.
    pub representations: Vec<Vec<usize>>,
    /// The common part set when all representations agree.
    pub canonical: Option<Vec<usize>>,
    pub all_equal: bool,
    /// First offending pair when `all_equal` is false.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

/// On a modular lattice, verifies that all irredundant meet representations
/// of bottom by strongly irreducible elements coincide as sets.
pub fn strong_kuros_ore_check(
    l: &FiniteLattice,
    limits: &Limits,
) -> Result<KurosOreReport, RepresentError> {
    if !l.is_modular() {
        return Err(RepresentError::NotModular);
    }
    let reps = irredundant_meet_reps(
        l,
        l.bottom(),
        PartsKind::StronglyIrreducible,
        limits.max_rep_parts,
        limits,
    )?;
    let sets: Vec<Vec<usize>> = reps.into_iter().map(|r| r.parts).collect();
    let all_equal = sets.windows(2).all(|w| w[0] == w[1]);
    let counterexample = if all_equal {
        None
    } else {
        let first = sets[0].clone();
        sets.iter().find(|s| **s != first).map(|s| (first.clone(), s.clone()))
    };
    Ok(KurosOreReport {
        canonical: if all_equal { sets.first().cloned() } else { None },
        all_equal,
        counterexample,
        representations: sets,
    })
}

/// Dual statement: irredundant join representations of top by strongly
/// hollow elements are unique as sets on modular lattices.
pub fn join_strong_kuros_ore_check(
    l: &FiniteLattice,
    limits: &Limits,
) -> Result<KurosOreReport, RepresentError> {
    strong_kuros_ore_check(&l.dual(), limits)
}

/// Number of parts in an irredundant meet representation of bottom by
/// irreducible elements. All such representations are verified to have the
/// same size before it is returned.
pub fn kuros_ore_dimension(l: &FiniteLattice, limits: &Limits) -> Result<usize, RepresentError> {
    if !l.is_modular() {
        return Err(RepresentError::NotModular);
    }
    let reps = irredundant_meet_reps(
        l,
        l.bottom(),
        PartsKind::Irreducible,
        limits.max_rep_parts,
        limits,
    )?;
    let mut sizes = reps.iter().map(|r| r.parts.len());
    let Some(first) = sizes.next() else {
        return Err(RepresentError::NoneFound);
    };
    if let Some(other) = sizes.find(|&s| s != first) {
        return Err(RepresentError::DimensionMismatch { a: first, b: other });
    }
    Ok(first)
}

/// Maximum size of a join-independent set: non-bottom elements where each
/// one meets the join of the others at bottom.
pub fn goldie_dimension(l: &FiniteLattice, limits: &Limits) -> Result<usize, RepresentError> {
    if !l.is_modular() {
        return Err(RepresentError::NotModular);
    }
    let _ = limits;
    let candidates: Vec<usize> = l.elements().filter(|&p| p != l.bottom()).collect();
    let mut best = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    search_independent(l, &candidates, 0, &mut chosen, &mut best);
    Ok(best)
}

fn search_independent(
    l: &FiniteLattice,
    candidates: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    for i in from..candidates.len() {
        let p = candidates[i];
        chosen.push(p);
        if is_join_independent(l, chosen) {
            search_independent(l, candidates, i + 1, chosen, best);
        }
        chosen.pop();
    }
}

fn is_join_independent(l: &FiniteLattice, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &a)| {
        let rest = l.join_all(set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
        l.meet(a, rest) == l.bottom()
    })
}
