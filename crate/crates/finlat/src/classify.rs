//! Element-level decision procedures: irreducibility, strong irreducibility,
//! waists, essential elements, pseudo-complements, weak distributivity, the
//! pseudo-complement characterization battery, and the hollow duals of all of
//! these obtained by running the same predicates on the order dual.

use crate::lattice::{FiniteLattice, LatticeError};
use serde::Serialize;
use thiserror::Error;

/// Antichain size bound for the cross-check of the completeness predicates.
pub const DEFAULT_ANTICHAIN_BOUND: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("input element set must be non-empty")]
    EmptyInput,
    #[error("element {element} is not a join of the given generators")]
    NotGenerating { element: usize },
    #[error("element {element} is not strongly irreducible")]
    NotStronglyIrreducible { element: usize },
    #[error("groupoid table has wrong shape or out-of-range entries")]
    TableShape,
    #[error("groupoid operation is not monotone at ({a}, {b}) with {c}")]
    NotMonotone { a: usize, b: usize, c: usize },
    #[error("groupoid operation is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("groupoid operation exceeds the meet at ({a}, {b})")]
    NotSubMeet { a: usize, b: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `p` is irreducible when any two elements above it meeting to `p` include
/// `p` itself.
pub fn is_irreducible(l: &FiniteLattice, p: usize) -> bool {
    let ups = l.up_set(p);
    for &a in &ups {
        if a == p {
            continue;
        }
        for &b in &ups {
            if b != p && l.meet(a, b) == p {
                return false;
            }
        }
    }
    true
}

/// `p` is strongly irreducible when `a /\ b <= p` forces `a <= p` or
/// `b <= p` for arbitrary `a, b`.
pub fn is_strongly_irreducible(l: &FiniteLattice, p: usize) -> bool {
    for a in l.elements() {
        if l.leq(a, p) {
            continue;
        }
        for b in a..l.size() {
            if !l.leq(b, p) && l.leq(l.meet(a, b), p) {
                return false;
            }
        }
    }
    true
}

/// Irreducibility in the order dual: any two elements below `p` joining to
/// `p` include `p` itself.
pub fn is_hollow(l: &FiniteLattice, p: usize) -> bool {
    let downs = l.down_set(p);
    for &a in &downs {
        if a == p {
            continue;
        }
        for &b in &downs {
            if b != p && l.join(a, b) == p {
                return false;
            }
        }
    }
    true
}

/// Strong irreducibility in the order dual: `p <= a \/ b` forces `p <= a`
/// or `p <= b`.
pub fn is_strongly_hollow(l: &FiniteLattice, p: usize) -> bool {
    for a in l.elements() {
        if l.leq(p, a) {
            continue;
        }
        for b in a..l.size() {
            if !l.leq(p, b) && l.leq(p, l.join(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Strong irreducibility checked only over pairs of generators. Every
/// element must be a join of generators (the empty join being bottom);
/// the restricted check then agrees with the full one.
pub fn is_strongly_irreducible_via_gens(
    l: &FiniteLattice,
    p: usize,
    gens: &[usize],
) -> Result<bool, ClassifyError> {
    for x in l.elements() {
        let joined = l.join_all(gens.iter().copied().filter(|&g| l.leq(g, x)));
        if joined != x {
            return Err(ClassifyError::NotGenerating { element: x });
        }
    }
    for (i, &a) in gens.iter().enumerate() {
        if l.leq(a, p) {
            continue;
        }
        for &b in &gens[i..] {
            if !l.leq(b, p) && l.leq(l.meet(a, b), p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// In a finite lattice every element is cocompact, so complete strong
/// irreducibility coincides with strong irreducibility. See
/// [`completely_si_antichain_check`] for the independent bounded cross-check.
pub fn is_completely_strongly_irreducible(l: &FiniteLattice, p: usize) -> bool {
    is_strongly_irreducible(l, p)
}

/// Finite-lattice equivalence, as for the strong variant.
pub fn is_completely_irreducible(l: &FiniteLattice, p: usize) -> bool {
    is_irreducible(l, p)
}

pub fn is_completely_hollow(l: &FiniteLattice, p: usize) -> bool {
    is_hollow(l, p)
}

pub fn is_completely_strongly_hollow(l: &FiniteLattice, p: usize) -> bool {
    is_strongly_hollow(l, p)
}

/// Direct check of the complete strong irreducibility condition over all
/// antichains of size at most `bound`: an antichain meet below `p` must
/// force some member below `p`. Comparable members never matter since
/// dropping the larger one keeps the meet.
pub fn completely_si_antichain_check(l: &FiniteLattice, p: usize, bound: usize) -> bool {
    let mut chosen = Vec::new();
    antichain_scan(l, 0, &mut chosen, bound, &mut |members| {
        let m = l.meet_all(members.iter().copied());
        !l.leq(m, p) || members.iter().any(|&a| l.leq(a, p))
    })
}

/// As [`completely_si_antichain_check`] but with all antichain members
/// required to lie above `p`, matching the plain completeness condition.
pub fn completely_irreducible_antichain_check(l: &FiniteLattice, p: usize, bound: usize) -> bool {
    let mut chosen = Vec::new();
    antichain_scan(l, 0, &mut chosen, bound, &mut |members| {
        if !members.iter().all(|&a| l.leq(p, a)) {
            return true;
        }
        let m = l.meet_all(members.iter().copied());
        !l.leq(m, p) || members.iter().any(|&a| l.leq(a, p))
    })
}

fn antichain_scan(
    l: &FiniteLattice,
    start: usize,
    chosen: &mut Vec<usize>,
    bound: usize,
    ok: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if !chosen.is_empty() && !ok(chosen) {
        return false;
    }
    if chosen.len() == bound {
        return true;
    }
    for x in start..l.size() {
        if chosen.iter().all(|&c| !l.comparable(c, x)) {
            chosen.push(x);
            if !antichain_scan(l, x + 1, chosen, bound, ok) {
                chosen.pop();
                return false;
            }
            chosen.pop();
        }
    }
    true
}

/// `p` is a waist when it is comparable to every element.
pub fn is_waist(l: &FiniteLattice, p: usize) -> bool {
    l.elements().all(|x| l.comparable(x, p))
}

/// The non-bottom elements meeting every member of `a_set` at bottom.
pub fn omega(l: &FiniteLattice, a_set: &[usize]) -> Result<Vec<usize>, ClassifyError> {
    if a_set.is_empty() {
        return Err(ClassifyError::EmptyInput);
    }
    Ok(l
        .elements()
        .filter(|&x| x != l.bottom() && a_set.iter().all(|&a| l.meet(a, x) == l.bottom()))
        .collect())
}

pub fn omega_of(l: &FiniteLattice, p: usize) -> Vec<usize> {
    omega(l, &[p]).expect("singleton is non-empty")
}

/// `p` is essential when nothing non-zero meets it at bottom.
pub fn is_essential(l: &FiniteLattice, p: usize) -> bool {
    omega_of(l, p).is_empty()
}

/// Result of a pseudo-complement query: either the set
/// `{ x | a /\ x = 0 }` has a greatest element, or its maximal elements are
/// reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PseudoComplement {
    Unique(usize),
    Maximals(Vec<usize>),
}

impl PseudoComplement {
    pub fn unique(&self) -> Option<usize> {
        match self {
            PseudoComplement::Unique(x) => Some(*x),
            PseudoComplement::Maximals(_) => None,
        }
    }
}

pub fn pseudo_complement(l: &FiniteLattice, a: usize) -> PseudoComplement {
    let zero_meets: Vec<usize> =
        l.elements().filter(|&x| l.meet(a, x) == l.bottom()).collect();
    let maximals: Vec<usize> = zero_meets
        .iter()
        .copied()
        .filter(|&x| zero_meets.iter().all(|&y| x == y || !l.lt(x, y)))
        .collect();
    match maximals.as_slice() {
        [unique] => PseudoComplement::Unique(*unique),
        _ => PseudoComplement::Maximals(maximals),
    }
}

/// The interval `[a, b]` is uniform when its bottom `a` is irreducible
/// within it, i.e. no two members strictly above `a` meet to `a`.
pub fn is_uniform_interval(l: &FiniteLattice, a: usize, b: usize) -> Result<bool, ClassifyError> {
    if !l.leq(a, b) {
        return Err(LatticeError::NotComparable { a, b }.into());
    }
    Ok(uniform_between(l, a, b))
}

fn uniform_between(l: &FiniteLattice, lo: usize, hi: usize) -> bool {
    for x in l.elements() {
        if x == lo || !l.leq(lo, x) || !l.leq(x, hi) {
            continue;
        }
        for y in l.elements() {
            if y != lo && l.leq(lo, y) && l.leq(y, hi) && l.meet(x, y) == lo {
                return false;
            }
        }
    }
    true
}

/// `p = (x \/ p) /\ (y \/ p)` whenever `x /\ y = 0`.
pub fn is_weakly_meet_distributive(l: &FiniteLattice, p: usize) -> bool {
    for x in l.elements() {
        for y in l.elements() {
            if l.meet(x, y) == l.bottom() && l.meet(l.join(x, p), l.join(y, p)) != p {
                return false;
            }
        }
    }
    true
}

/// `p = (x /\ p) \/ (y /\ p)` whenever `x \/ y = 1`.
pub fn is_weakly_join_distributive(l: &FiniteLattice, p: usize) -> bool {
    for x in l.elements() {
        for y in l.elements() {
            if l.join(x, y) == l.top() && l.join(l.meet(x, p), l.meet(y, p)) != p {
                return false;
            }
        }
    }
    true
}

/// The six equivalent conditions for strong irreducibility of an element
/// with non-empty omega set, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub element: usize,
    pub omega_nonempty: bool,
    /// strongly irreducible
    pub cond_a: bool,
    /// the complement of the down-set of `p` is closed under meet
    pub cond_a_prime: bool,
    /// omega is closed under meet and reaches below every element outside
    /// the down-set of `p`
    pub cond_b: bool,
    /// `p` is the pseudo-complement of some `q` with `[0, q]` uniform
    pub cond_c: bool,
    /// the same for every `q` in omega
    pub cond_d: bool,
    /// irreducible and weakly meet-distributive
    pub cond_e: bool,
    /// witness for cond_c
    pub witness_q: Option<usize>,
}

impl CharacterizationReport {
    pub fn all_flags_equal(&self) -> bool {
        let a = self.cond_a;
        [self.cond_a_prime, self.cond_b, self.cond_c, self.cond_d, self.cond_e]
            .iter()
            .all(|&f| f == a)
    }
}

pub fn characterization_report(l: &FiniteLattice, p: usize) -> CharacterizationReport {
    let om = omega_of(l, p);
    let bottom = l.bottom();

    let cond_a = is_strongly_irreducible(l, p);

    let outside: Vec<usize> = l.elements().filter(|&x| !l.leq(x, p)).collect();
    let cond_a_prime = outside
        .iter()
        .all(|&a| outside.iter().all(|&b| !l.leq(l.meet(a, b), p)));

    let om_closed =
        om.iter().all(|&a| om.iter().all(|&b| om.contains(&l.meet(a, b))));
    let cond_b = om_closed && outside.iter().all(|&a| om.iter().any(|&y| l.leq(y, a)));

    let mut witness_q = None;
    for q in l.elements() {
        if pseudo_complement(l, q).unique() == Some(p) && uniform_between(l, bottom, q) {
            witness_q = Some(q);
            break;
        }
    }
    let cond_c = witness_q.is_some();

    let cond_d = om
        .iter()
        .all(|&q| pseudo_complement(l, q).unique() == Some(p) && uniform_between(l, bottom, q));

    let cond_e = is_irreducible(l, p) && is_weakly_meet_distributive(l, p);

    CharacterizationReport {
        element: p,
        omega_nonempty: !om.is_empty(),
        cond_a,
        cond_a_prime,
        cond_b,
        cond_c,
        cond_d,
        cond_e,
        witness_q,
    }
}

/// Outcome of the structural dichotomy for a strongly irreducible element:
/// either a verified pseudo-complement witness inside an upper interval, or
/// the element is a waist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    Witness {
        p_prime: usize,
        q: usize,
        pseudo_complement_verified: bool,
        uniform_verified: bool,
    },
    Waist {
        verified: bool,
    },
}

impl Dichotomy {
    pub fn verified(&self) -> bool {
        match self {
            Dichotomy::Witness { pseudo_complement_verified, uniform_verified, .. } => {
                *pseudo_complement_verified && *uniform_verified
            }
            Dichotomy::Waist { verified } => *verified,
        }
    }
}

/// For strongly irreducible `p`: find `p' < p` and `q >= p'` such that `p`
/// is a pseudo-complement of `q` inside the interval `[p', top]` and
/// `[p', q]` is uniform, or verify that `p` is a waist.
pub fn structure_dichotomy(l: &FiniteLattice, p: usize) -> Result<Dichotomy, ClassifyError> {
    if !is_strongly_irreducible(l, p) {
        return Err(ClassifyError::NotStronglyIrreducible { element: p });
    }
    for p_prime in l.elements() {
        if !l.lt(p_prime, p) {
            continue;
        }
        // omega of p relative to the sublattice [p', top]
        let q = l
            .elements()
            .find(|&x| x != p_prime && l.leq(p_prime, x) && l.meet(x, p) == p_prime);
        if let Some(q) = q {
            // p must be the greatest element of [p', top] meeting q at p'
            let pseudo_complement_verified = l.meet(p, q) == p_prime
                && l
                    .elements()
                    .filter(|&x| l.leq(p_prime, x) && l.meet(x, q) == p_prime)
                    .all(|x| l.leq(x, p));
            let uniform_verified = uniform_between(l, p_prime, q);
            return Ok(Dichotomy::Witness {
                p_prime,
                q,
                pseudo_complement_verified,
                uniform_verified,
            });
        }
    }
    Ok(Dichotomy::Waist { verified: is_waist(l, p) })
}

/// Minimal elements of the strongly irreducible elements above `a`. Never
/// empty: top is vacuously strongly irreducible.
pub fn minimal_si_above(l: &FiniteLattice, a: usize) -> Vec<usize> {
    let si_above: Vec<usize> = l
        .elements()
        .filter(|&p| l.leq(a, p) && is_strongly_irreducible(l, p))
        .collect();
    si_above
        .iter()
        .copied()
        .filter(|&p| si_above.iter().all(|&q| q == p || !l.lt(q, p)))
        .collect()
}

/// A monotone associative product on lattice elements that never exceeds
/// the meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidTable {
    n: usize,
    op: Vec<u32>,
}

impl GroupoidTable {
    pub fn new(l: &FiniteLattice, op: Vec<usize>) -> Result<Self, ClassifyError> {
        let n = l.size();
        if op.len() != n * n || op.iter().any(|&x| x >= n) {
            return Err(ClassifyError::TableShape);
        }
        let at = |a: usize, b: usize| op[a * n + b];
        for a in 0..n {
            for b in 0..n {
                if !l.leq(at(a, b), l.meet(a, b)) {
                    return Err(ClassifyError::NotSubMeet { a, b });
                }
                if !l.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !l.leq(at(a, c), at(b, c)) || !l.leq(at(c, a), at(c, b)) {
                        return Err(ClassifyError::NotMonotone { a, b, c });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(ClassifyError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(GroupoidTable { n, op: op.into_iter().map(|x| x as u32).collect() })
    }

    /// The meet itself as a product.
    pub fn meet_table(l: &FiniteLattice) -> Self {
        let n = l.size();
        let op = (0..n * n).map(|i| l.meet(i / n, i % n) as u32).collect();
        GroupoidTable { n, op }
    }

    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.op[a * self.n + b] as usize
    }
}

/// Elements `p` with `a * b <= p` forcing `a <= p` or `b <= p`. With a
/// sub-meet product every such element is strongly irreducible.
pub fn prime_elements(l: &FiniteLattice, g: &GroupoidTable) -> Vec<usize> {
    l.elements()
        .filter(|&p| {
            l.elements().all(|a| {
                l.leq(a, p) || l.elements().all(|b| l.leq(b, p) || !l.leq(g.apply(a, b), p))
            })
        })
        .collect()
}

/// Full per-element profile. The hollow flags are the irreducibility flags
/// of the order dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementClassification {
    pub element: usize,
    pub label: String,
    pub irreducible: bool,
    pub strongly_irreducible: bool,
    pub completely_irreducible: bool,
    pub completely_strongly_irreducible: bool,
    pub waist: bool,
    pub atom: bool,
    pub coatom: bool,
    pub essential: bool,
    pub weakly_meet_distributive: bool,
    pub weakly_join_distributive: bool,
    pub hollow: bool,
    pub strongly_hollow: bool,
    pub completely_hollow: bool,
    pub completely_strongly_hollow: bool,
    pub omega_size: usize,
}

pub fn classify_all(l: &FiniteLattice) -> Vec<ElementClassification> {
    let dual = l.dual();
    l.elements().map(|p| classify_with_dual(l, &dual, p)).collect()
}

pub fn classify_element(l: &FiniteLattice, p: usize) -> ElementClassification {
    classify_with_dual(l, &l.dual(), p)
}

fn classify_with_dual(
    l: &FiniteLattice,
    dual: &FiniteLattice,
    p: usize,
) -> ElementClassification {
    ElementClassification {
        element: p,
        label: l.label(p).to_string(),
        irreducible: is_irreducible(l, p),
        strongly_irreducible: is_strongly_irreducible(l, p),
        completely_irreducible: is_completely_irreducible(l, p),
        completely_strongly_irreducible: is_completely_strongly_irreducible(l, p),
        waist: is_waist(l, p),
        atom: p != l.bottom() && l.down_set(p).len() == 2,
        coatom: p != l.top() && l.up_set(p).len() == 2,
        essential: is_essential(l, p),
        weakly_meet_distributive: is_weakly_meet_distributive(l, p),
        weakly_join_distributive: is_weakly_join_distributive(l, p),
        hollow: is_irreducible(dual, p),
        strongly_hollow: is_strongly_irreducible(dual, p),
        completely_hollow: is_completely_irreducible(dual, p),
        completely_strongly_hollow: is_completely_strongly_irreducible(dual, p),
        omega_size: omega_of(l, p).len(),
    }
}

/// All strongly irreducible elements, ascending.
pub fn si_elements(l: &FiniteLattice) -> Vec<usize> {
    l.elements().filter(|&p| is_strongly_irreducible(l, p)).collect()
}

/// All strongly hollow elements, ascending.
pub fn strongly_hollow_elements(l: &FiniteLattice) -> Vec<usize> {
    l.elements().filter(|&p| is_strongly_hollow(l, p)).collect()
}
