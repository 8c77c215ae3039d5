//! Bounded finite lattices with precomputed order, meet, and join tables.
//!
//! Elements are dense indices `0..n`; labels are display-only. The order
//! relation is stored as bit-matrix rows in both orientations, and the meet
//! and join tables are computed once at construction, so every later query
//! is a table lookup. Construction fails if some pair of elements has no
//! unique greatest lower bound or least upper bound.

use crate::bits;
use crate::limits::Limits;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("elements {a} and {b} have no unique {kind}: candidates {candidates:?}")]
    NotALattice { a: usize, b: usize, kind: BoundKind, candidates: Vec<usize> },
    #[error("element {a} is not below element {b}")]
    NotComparable { a: usize, b: usize },
    #[error("lattice size {requested} exceeds limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("element index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("relation is not a partial order: {0}")]
    InvalidOrder(String),
    #[error("lattice must have at least one element")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => write!(f, "greatest lower bound"),
            BoundKind::Join => write!(f, "least upper bound"),
        }
    }
}

/// A bounded finite lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    n: usize,
    words: usize,
    /// Row `i` is the upward set `{ j | i <= j }`.
    up: Vec<u64>,
    /// Row `i` is the downward set `{ j | j <= i }`.
    down: Vec<u64>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteLattice {{ n: {}, bottom: {:?}, top: {:?} }}",
            self.n,
            self.labels.get(self.bottom),
            self.labels.get(self.top)
        )
    }
}

/// JSON interchange form: labels plus the cover relation, each cover listed
/// as `[lower, upper]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeDocument {
    pub labels: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl FiniteLattice {
    /// Builds a lattice from a cover relation. Each pair `(x, y)` states that
    /// `x` is covered by `y`. The order is the reflexive-transitive closure.
    pub fn build_from_covers(
        n: usize,
        covers: &[(usize, usize)],
        labels: Option<Vec<String>>,
        limits: &Limits,
    ) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > limits.max_lattice_size {
            return Err(LatticeError::SizeLimit { requested: n, limit: limits.max_lattice_size });
        }
        for &(x, y) in covers {
            for idx in [x, y] {
                if idx >= n {
                    return Err(LatticeError::IndexOutOfRange { index: idx, size: n });
                }
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut seen = std::collections::HashSet::new();
        for &(x, y) in covers {
            if x == y {
                return Err(LatticeError::CycleDetected(x));
            }
            if seen.insert((x, y)) {
                succ[x].push(y);
                indeg[y] += 1;
            }
        }
        // Kahn's algorithm both detects cycles and yields a linear extension.
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(LatticeError::CycleDetected(stuck));
        }
        // Transitive closure: accumulate successor rows in reverse topo order.
        let words = bits::words_for(n);
        let mut up = vec![0u64; n * words];
        for &v in topo.iter().rev() {
            let mut row = vec![0u64; words];
            bits::set(&mut row, v);
            for &w in &succ[v] {
                bits::or_into(&mut row, &up[w * words..(w + 1) * words]);
            }
            up[v * words..(v + 1) * words].copy_from_slice(&row);
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(LatticeError::LabelCount { expected: n, got: l.len() })
            }
            Some(l) => l,
            None => (0..n).map(|i| format!("e{i}")).collect(),
        };
        Self::from_up_rows(labels, up, words)
    }

    /// Builds a lattice from a full order relation given as `leq(a, b)`.
    /// The relation must already be reflexive, antisymmetric, and transitive.
    pub fn from_order_relation<F>(
        labels: Vec<String>,
        leq: F,
        limits: &Limits,
    ) -> Result<Self, LatticeError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > limits.max_lattice_size {
            return Err(LatticeError::SizeLimit { requested: n, limit: limits.max_lattice_size });
        }
        let words = bits::words_for(n);
        let mut up = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    bits::set(&mut up[i * words..(i + 1) * words], j);
                }
            }
        }
        for i in 0..n {
            if !bits::get(&up[i * words..], i) {
                return Err(LatticeError::InvalidOrder(format!("not reflexive at {i}")));
            }
            for j in bits::ones(&up[i * words..(i + 1) * words]) {
                if i != j && bits::get(&up[j * words..], i) {
                    return Err(LatticeError::InvalidOrder(format!(
                        "not antisymmetric at ({i}, {j})"
                    )));
                }
                if !bits::subset(&up[j * words..(j + 1) * words], &up[i * words..(i + 1) * words])
                {
                    return Err(LatticeError::InvalidOrder(format!(
                        "not transitive through ({i}, {j})"
                    )));
                }
            }
        }
        Self::from_up_rows(labels, up, words)
    }

    /// Shared construction core: given validated upward rows, compute the
    /// remaining tables and check that every pair has a unique glb and lub.
    fn from_up_rows(labels: Vec<String>, up: Vec<u64>, words: usize) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut down = vec![0u64; n * words];
        for i in 0..n {
            for j in bits::ones(&up[i * words..(i + 1) * words]) {
                bits::set(&mut down[j * words..(j + 1) * words], i);
            }
        }
        // A linear extension: ascending size of downward set. Bitsets indexed
        // by rank make the least element of an up-set its first set bit.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (bits::count(&down[i * words..(i + 1) * words]), i));
        let mut rank = vec![0usize; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut rup = vec![0u64; n * words];
        let mut rdown = vec![0u64; n * words];
        for i in 0..n {
            for j in bits::ones(&up[i * words..(i + 1) * words]) {
                bits::set(&mut rup[i * words..(i + 1) * words], rank[j]);
            }
            for j in bits::ones(&down[i * words..(i + 1) * words]) {
                bits::set(&mut rdown[i * words..(i + 1) * words], rank[j]);
            }
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let upper = bits::and(
                    &rup[a * words..(a + 1) * words],
                    &rup[b * words..(b + 1) * words],
                );
                let lub = match bits::first_set(&upper) {
                    Some(r) => {
                        let cand = order[r];
                        if bits::subset(&upper, &rup[cand * words..(cand + 1) * words]) {
                            cand
                        } else {
                            let cands = minimal_in(&upper, &rdown, &order, words);
                            return Err(LatticeError::NotALattice {
                                a,
                                b,
                                kind: BoundKind::Join,
                                candidates: cands,
                            });
                        }
                    }
                    None => {
                        return Err(LatticeError::NotALattice {
                            a,
                            b,
                            kind: BoundKind::Join,
                            candidates: vec![],
                        })
                    }
                };
                let lower = bits::and(
                    &rdown[a * words..(a + 1) * words],
                    &rdown[b * words..(b + 1) * words],
                );
                let glb = match bits::last_set(&lower) {
                    Some(r) => {
                        let cand = order[r];
                        if bits::subset(&lower, &rdown[cand * words..(cand + 1) * words]) {
                            cand
                        } else {
                            let cands = maximal_in(&lower, &rup, &order, words);
                            return Err(LatticeError::NotALattice {
                                a,
                                b,
                                kind: BoundKind::Meet,
                                candidates: cands,
                            });
                        }
                    }
                    None => {
                        return Err(LatticeError::NotALattice {
                            a,
                            b,
                            kind: BoundKind::Meet,
                            candidates: vec![],
                        })
                    }
                };
                meet[a * n + b] = glb as u32;
                meet[b * n + a] = glb as u32;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }
        let bottom = order[0];
        let top = order[n - 1];
        // With every pair bounded, the extremes of the linear extension are
        // the global bottom and top; verify rather than trust.
        for i in 0..n {
            if meet[bottom * n + i] != bottom as u32 || join[top * n + i] != top as u32 {
                return Err(LatticeError::InvalidOrder(
                    "no global bottom/top element".to_string(),
                ));
            }
        }
        Ok(FiniteLattice { labels, n, words, up, down, meet, join, bottom, top })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        bits::get(&self.up[a * self.words..(a + 1) * self.words], b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    /// Meet of an arbitrary collection; empty input yields the top element.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of an arbitrary collection; empty input yields the bottom element.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Elements `>= a`, ascending.
    pub fn up_set(&self, a: usize) -> Vec<usize> {
        bits::ones(&self.up[a * self.words..(a + 1) * self.words]).collect()
    }

    /// Elements `<= a`, ascending.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        bits::ones(&self.down[a * self.words..(a + 1) * self.words]).collect()
    }

    pub(crate) fn up_row(&self, a: usize) -> &[u64] {
        &self.up[a * self.words..(a + 1) * self.words]
    }

    pub(crate) fn down_row(&self, a: usize) -> &[u64] {
        &self.down[a * self.words..(a + 1) * self.words]
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| x != self.bottom && bits::count(self.down_row(x)) == 2)
            .collect()
    }

    /// Elements covered by top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| x != self.top && bits::count(self.up_row(x)) == 2)
            .collect()
    }

    /// The cover relation, lexicographically sorted `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in bits::ones(self.up_row(i)) {
                if i == j {
                    continue;
                }
                let between = bits::and(self.up_row(i), self.down_row(j));
                if bits::count(&between) == 2 {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Order-reversed lattice: meet and join tables swap, bottom and top swap.
    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice {
            labels: self.labels.clone(),
            n: self.n,
            words: self.words,
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// The interval `[a, b]` as a standalone bounded lattice.
    pub fn interval(&self, a: usize, b: usize) -> Result<IntervalView, LatticeError> {
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable { a, b });
        }
        let members: Vec<usize> = bits::ones(&bits::and(self.up_row(a), self.down_row(b))).collect();
        let m = members.len();
        let mut local = vec![usize::MAX; self.n];
        for (k, &x) in members.iter().enumerate() {
            local[x] = k;
        }
        let words = bits::words_for(m);
        let mut up = vec![0u64; m * words];
        let mut down = vec![0u64; m * words];
        let mut meet = vec![0u32; m * m];
        let mut join = vec![0u32; m * m];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                if self.leq(x, y) {
                    bits::set(&mut up[i * words..(i + 1) * words], j);
                    bits::set(&mut down[j * words..(j + 1) * words], i);
                }
                // Meets and joins of interval members stay inside the interval.
                meet[i * m + j] = local[self.meet(x, y)] as u32;
                join[i * m + j] = local[self.join(x, y)] as u32;
            }
        }
        let lattice = FiniteLattice {
            labels: members.iter().map(|&x| self.labels[x].clone()).collect(),
            n: m,
            words,
            up,
            down,
            meet,
            join,
            bottom: local[a],
            top: local[b],
        };
        Ok(IntervalView { lattice, parent_members: members })
    }

    /// Exhaustive check of `a /\ (b \/ c) = (a /\ b) \/ (a /\ c)`.
    pub fn is_distributive(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if self.meet(a, self.join(b, c))
                        != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exhaustive check of `(x /\ y) \/ (x /\ z) = x /\ (y \/ (x /\ z))`.
    pub fn is_modular(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    let lhs = self.join(self.meet(x, y), self.meet(x, z));
                    let rhs = self.meet(x, self.join(y, self.meet(x, z)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_total_order(&self) -> bool {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.comparable(a, b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_document(&self) -> LatticeDocument {
        LatticeDocument { labels: self.labels.clone(), covers: self.covers() }
    }

    /// Parses the interchange document. Duplicate covers are dropped; each
    /// dropped pair is reported as a warning string.
    pub fn from_document(
        doc: &LatticeDocument,
        limits: &Limits,
    ) -> Result<(Self, Vec<String>), LatticeError> {
        let mut seen = std::collections::HashSet::new();
        let mut covers = Vec::new();
        let mut warnings = Vec::new();
        for &(x, y) in &doc.covers {
            if seen.insert((x, y)) {
                covers.push((x, y));
            } else {
                warnings.push(format!("duplicate cover ({x}, {y}) ignored"));
            }
        }
        let lattice =
            Self::build_from_covers(doc.labels.len(), &covers, Some(doc.labels.clone()), limits)?;
        Ok((lattice, warnings))
    }
}

fn minimal_in(set: &[u64], rdown: &[u64], order: &[usize], words: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for r in bits::ones(set) {
        let i = order[r];
        let below = bits::and(set, &rdown[i * words..(i + 1) * words]);
        if bits::count(&below) == 1 {
            out.push(i);
        }
    }
    out.sort_unstable();
    out
}

fn maximal_in(set: &[u64], rup: &[u64], order: &[usize], words: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for r in bits::ones(set) {
        let i = order[r];
        let above = bits::and(set, &rup[i * words..(i + 1) * words]);
        if bits::count(&above) == 1 {
            out.push(i);
        }
    }
    out.sort_unstable();
    out
}

/// An interval `[lo, hi]` of a parent lattice, materialized as a bounded
/// lattice of its own. `parent_members[k]` is the parent index of local
/// element `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalView {
    lattice: FiniteLattice,
    parent_members: Vec<usize>,
}

impl IntervalView {
    pub fn as_lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn members(&self) -> &[usize] {
        &self.parent_members
    }

    pub fn to_parent(&self, local: usize) -> usize {
        self.parent_members[local]
    }

    pub fn from_parent(&self, parent: usize) -> Option<usize> {
        self.parent_members.binary_search(&parent).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    /// Brute-force glb/lub straight from the order relation; the oracle the
    /// precomputed tables are checked against.
    fn brute_force_glb(l: &FiniteLattice, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> =
            l.elements().filter(|&x| l.leq(x, a) && l.leq(x, b)).collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&x| l.leq(x, m)))
    }

    fn brute_force_lub(l: &FiniteLattice, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> =
            l.elements().filter(|&x| l.leq(a, x) && l.leq(b, x)).collect();
        upper
            .iter()
            .copied()
            .find(|&m| upper.iter().all(|&x| l.leq(m, x)))
    }

    fn check_tables_against_oracle(l: &FiniteLattice) {
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(Some(l.meet(a, b)), brute_force_glb(l, a, b));
                assert_eq!(Some(l.join(a, b)), brute_force_lub(l, a, b));
            }
        }
    }

    #[test]
    fn three_chain_from_covers() {
        let l = FiniteLattice::build_from_covers(3, &[(0, 1), (1, 2)], None, &limits()).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
        assert!(l.is_total_order());
        check_tables_against_oracle(&l);
    }

    #[test]
    fn diamond_m3_from_covers() {
        let covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        let l = FiniteLattice::build_from_covers(5, &covers, None, &limits()).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 4);
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(l.meet(a, b), 0);
            assert_eq!(l.join(a, b), 4);
        }
        check_tables_against_oracle(&l);
    }

    #[test]
    fn two_maximal_elements_is_not_a_lattice() {
        let err = FiniteLattice::build_from_covers(4, &[(0, 1), (0, 2)], None, &limits())
            .unwrap_err();
        match err {
            LatticeError::NotALattice { kind: BoundKind::Join, .. } => {}
            other => panic!("expected join failure, got {other:?}"),
        }
    }

    #[test]
    fn cycle_is_rejected() {
        let err = FiniteLattice::build_from_covers(3, &[(0, 1), (1, 2), (2, 0)], None, &limits())
            .unwrap_err();
        assert!(matches!(err, LatticeError::CycleDetected(_)));
    }

    #[test]
    fn size_limit_enforced() {
        let err = FiniteLattice::build_from_covers(
            10,
            &[],
            None,
            &Limits::default().with_max_lattice_size(4),
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::SizeLimit { requested: 10, limit: 4 }));
    }

    #[test]
    fn leq_iff_meet_iff_join() {
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let l = FiniteLattice::build_from_covers(4, &covers, None, &limits()).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                assert_eq!(l.leq(a, b), l.join(a, b) == b);
            }
        }
    }

    #[test]
    fn dual_is_involutive() {
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let l = FiniteLattice::build_from_covers(4, &covers, None, &limits()).unwrap();
        let d = l.dual();
        assert_eq!(d.bottom(), l.top());
        assert_eq!(d.dual(), l);
    }

    #[test]
    fn interval_of_whole_lattice_reproduces_it() {
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let l = FiniteLattice::build_from_covers(4, &covers, None, &limits()).unwrap();
        let view = l.interval(l.bottom(), l.top()).unwrap();
        assert_eq!(view.as_lattice(), &l);
    }

    #[test]
    fn interval_in_chain() {
        // 4-chain 0 < a < b < 1, interval [a, 1].
        let l = FiniteLattice::build_from_covers(4, &[(0, 1), (1, 2), (2, 3)], None, &limits())
            .unwrap();
        let view = l.interval(1, 3).unwrap();
        assert_eq!(view.members(), &[1, 2, 3]);
        assert_eq!(view.as_lattice().size(), 3);
        assert!(l.interval(2, 1).is_err());
    }

    #[test]
    fn interval_in_divisor_sixty() {
        // divisors d of 60 with 2 | d and d | 30
        let l = crate::builders::divisor_lattice(60, &limits()).unwrap();
        let two = l.label_index("2").unwrap();
        let thirty = l.label_index("30").unwrap();
        let view = l.interval(two, thirty).unwrap();
        let labels: Vec<&str> =
            view.members().iter().map(|&i| l.label(i)).collect();
        assert_eq!(labels, ["2", "6", "10", "30"]);
    }

    #[test]
    fn document_round_trip() {
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let l = FiniteLattice::build_from_covers(4, &covers, None, &limits()).unwrap();
        let doc = l.to_document();
        let (back, warnings) = FiniteLattice::from_document(&doc, &limits()).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(back, l);
    }

    #[test]
    fn duplicate_cover_warns() {
        let doc = LatticeDocument {
            labels: vec!["0".into(), "1".into()],
            covers: vec![(0, 1), (0, 1)],
        };
        let (l, warnings) = FiniteLattice::from_document(&doc, &limits()).unwrap();
        assert_eq!(l.size(), 2);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn unsorted_indices_still_build() {
        // top has the smallest index; exercises the rank permutation path
        let covers = [(1, 2), (2, 0)];
        let l = FiniteLattice::build_from_covers(3, &covers, None, &limits()).unwrap();
        assert_eq!(l.bottom(), 1);
        assert_eq!(l.top(), 0);
        check_tables_against_oracle(&l);
    }

    #[test]
    fn lattices_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FiniteLattice>();
        assert_send_sync::<IntervalView>();
    }

    #[test]
    fn invalid_order_relations_are_rejected() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let err = FiniteLattice::from_order_relation(labels(2), |_, _| false, &limits())
            .unwrap_err();
        assert!(matches!(err, LatticeError::InvalidOrder(ref m) if m.contains("reflexive")));

        let err = FiniteLattice::from_order_relation(labels(2), |_, _| true, &limits())
            .unwrap_err();
        assert!(matches!(err, LatticeError::InvalidOrder(ref m) if m.contains("antisymmetric")));

        // 0 <= 1 and 1 <= 2 without 0 <= 2
        let err = FiniteLattice::from_order_relation(
            labels(3),
            |a, b| a == b || (a == 0 && b == 1) || (a == 1 && b == 2),
            &limits(),
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::InvalidOrder(ref m) if m.contains("transitive")));
    }
}
