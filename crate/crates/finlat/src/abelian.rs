//! Finite abelian groups: invariant-factor normal form, exhaustive subgroup
//! enumeration with canonical Hermite-form generator matrices, subgroup
//! lattices, quotients via Smith normal form, Hom counting, and the complete
//! classification of strongly hollow subgroups.
//!
//! The strongly hollow set is computed along two independent routes and
//! cross-checked: once as strong irreducibility in the order dual of the
//! subgroup lattice, and once from the arithmetic characterization (a
//! non-zero subgroup is strongly hollow exactly when it is a p-group whose
//! ambient p-component is cyclic).

use crate::bits;
use crate::classify::is_strongly_irreducible;
use crate::lattice::{FiniteLattice, LatticeError};
use crate::limits::Limits;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factor must be positive, got {0}")]
    InvalidFactor(u64),
    #[error("group order {order} exceeds limit {limit}")]
    OrderLimit { order: u128, limit: u64 },
    #[error("subgroup count exceeds limit {limit}")]
    SubgroupLimit { limit: usize },
    #[error("subgroup lattice with {count} elements exceeds lattice size limit {limit}")]
    LatticeLimit { count: usize, limit: usize },
    #[error("{0} is not prime, so the summand is not simple")]
    NotSimple(u64),
    #[error("homomorphism count exceeds u128")]
    CountOverflow,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A finite abelian group in invariant-factor form: cyclic factors
/// `d_1 | d_2 | ... | d_k`, each at least 2; the trivial group has no
/// factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    /// Normalizes an arbitrary list of cyclic orders to invariant factors
    /// (prime-power components recombined greedily, largest together).
    pub fn new(factors: &[u64], limits: &Limits) -> Result<Self, GroupError> {
        let mut order: u128 = 1;
        for &f in factors {
            if f == 0 {
                return Err(GroupError::InvalidFactor(0));
            }
            order *= f as u128;
            if order > limits.max_group_order as u128 {
                return Err(GroupError::OrderLimit { order, limit: limits.max_group_order });
            }
        }
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &f in factors {
            for (p, e) in factorize(f) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut inv = vec![1u64; width];
        for exps in by_prime.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        for (p, exps) in &by_prime {
            for (i, &e) in exps.iter().enumerate() {
                inv[i] *= p.pow(e);
            }
        }
        inv.reverse();
        Ok(FiniteAbelianGroup { factors: inv })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Largest element order, i.e. the last invariant factor.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn primes(&self) -> Vec<u64> {
        factorize(self.order()).into_iter().map(|(p, _)| p).collect()
    }

    /// Subgroup of elements of p-power order, as an abstract group.
    pub fn p_component(&self, p: u64) -> FiniteAbelianGroup {
        let factors: Vec<u64> = self
            .factors
            .iter()
            .map(|&d| {
                let mut part = 1;
                let mut d = d;
                while d % p == 0 {
                    part *= p;
                    d /= p;
                }
                part
            })
            .filter(|&part| part > 1)
            .collect();
        FiniteAbelianGroup { factors }
    }

    /// Group spec string `d1xd2x...`, `1` for the trivial group.
    pub fn spec_string(&self) -> String {
        if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x")
        }
    }

    pub fn parse_spec(spec: &str, limits: &Limits) -> Result<Self, GroupError> {
        let mut factors = Vec::new();
        for part in spec.split(['x', 'X', '*']) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let f: u64 = part.parse().map_err(|_| GroupError::InvalidFactor(0))?;
            factors.push(f);
        }
        Self::new(&factors, limits)
    }
}

/// Element arithmetic for a direct product of cyclic groups given by a raw
/// factor list (not necessarily in invariant-factor form). Elements are
/// mixed-radix indices over the factors.
pub(crate) struct Arith {
    factors: Vec<u64>,
    order: usize,
    tuples: Vec<Vec<u64>>,
    add_table: Option<Vec<u32>>,
}

impl Arith {
    fn new(factors: &[u64]) -> Arith {
        let order: u64 = factors.iter().product();
        let order = order as usize;
        let mut tuples = Vec::with_capacity(order);
        let mut current = vec![0u64; factors.len()];
        for _ in 0..order {
            tuples.push(current.clone());
            for (c, &d) in current.iter_mut().zip(factors) {
                *c += 1;
                if *c < d {
                    break;
                }
                *c = 0;
            }
        }
        let add_table = (order <= 2048).then(|| {
            let mut table = vec![0u32; order * order];
            for i in 0..order {
                for j in 0..=i {
                    let sum: Vec<u64> = tuples[i]
                        .iter()
                        .zip(&tuples[j])
                        .zip(factors)
                        .map(|((a, b), &d)| (a + b) % d)
                        .collect();
                    let idx = index_of(factors, &sum) as u32;
                    table[i * order + j] = idx;
                    table[j * order + i] = idx;
                }
            }
            table
        });
        Arith { factors: factors.to_vec(), order, tuples, add_table }
    }

    fn add(&self, i: usize, j: usize) -> usize {
        match &self.add_table {
            Some(table) => table[i * self.order + j] as usize,
            None => {
                let sum: Vec<u64> = self.tuples[i]
                    .iter()
                    .zip(&self.tuples[j])
                    .zip(&self.factors)
                    .map(|((a, b), &d)| (a + b) % d)
                    .collect();
                index_of(&self.factors, &sum)
            }
        }
    }
}

fn index_of(factors: &[u64], tuple: &[u64]) -> usize {
    let mut idx = 0usize;
    for (&x, &d) in tuple.iter().zip(factors).rev() {
        idx = idx * d as usize + x as usize;
    }
    idx
}

fn tuple_of(factors: &[u64], mut idx: usize) -> Vec<u64> {
    factors
        .iter()
        .map(|&d| {
            let x = idx as u64 % d;
            idx /= d as usize;
            x
        })
        .collect()
}

/// A subgroup of a direct product of cyclic groups, stored as a membership
/// bitset together with the canonical Hermite-form basis of its preimage
/// lattice in Z^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    ambient: Arc<Vec<u64>>,
    members: Vec<u64>,
    order: u64,
    basis: Vec<Vec<i128>>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn ambient_factors(&self) -> &[u64] {
        &self.ambient
    }

    pub fn member_indices(&self) -> Vec<usize> {
        bits::ones(&self.members).collect()
    }

    /// Member elements as coordinate tuples over the ambient factors.
    pub fn member_tuples(&self) -> Vec<Vec<u64>> {
        bits::ones(&self.members).map(|idx| tuple_of(&self.ambient, idx)).collect()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        bits::get(&self.members, idx)
    }

    pub fn contains(&self, element: &[u64]) -> bool {
        self.contains_index(index_of(&self.ambient, element))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        bits::subset(&self.members, &other.members)
    }

    /// Non-zero rows of the Hermite basis, reduced modulo the ambient
    /// factors; a canonical generating set.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .zip(self.ambient.iter())
                    .map(|(&x, &d)| (x as u64) % d)
                    .collect::<Vec<u64>>()
            })
            .filter(|row| row.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn label(&self) -> String {
        let gens = self.generators();
        if gens.is_empty() {
            "0".to_string()
        } else {
            let parts: Vec<String> = gens
                .iter()
                .map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            format!("<{}>", parts.join(";"))
        }
    }

    /// The subgroup as an abstract group: the quotient of its preimage
    /// lattice by the relation lattice of the ambient factors.
    pub fn as_group(&self) -> FiniteAbelianGroup {
        let k = self.ambient.len();
        let diag: Vec<Vec<i128>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { self.ambient[i] as i128 } else { 0 }).collect()).collect();
        let c = express_in_basis(&diag, &self.basis);
        FiniteAbelianGroup { factors: smith_invariants(c) }
    }

    /// Invariant factors of `self / smaller`; `smaller` must be contained
    /// in `self`.
    pub fn quotient_by(&self, smaller: &Subgroup) -> FiniteAbelianGroup {
        assert!(smaller.is_subset_of(self), "quotient requires containment");
        let c = express_in_basis(&smaller.basis, &self.basis);
        FiniteAbelianGroup { factors: smith_invariants(c) }
    }
}

/// Row-style Hermite normal form of a full-rank integer row lattice:
/// upper triangular, positive diagonal, entries above each pivot reduced
/// into `[0, pivot)`.
#[allow(clippy::needless_range_loop)] // in-place row operations
fn row_hnf(mut rows: Vec<Vec<i128>>, k: usize) -> Vec<Vec<i128>> {
    let mut pivot_row = 0;
    for col in 0..k {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col] != 0
                    && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let pivot_val = rows[pivot_row][col];
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col] / pivot_val;
                    if q != 0 {
                        for j in 0..k {
                            let s = rows[pivot_row][j];
                            rows[r][j] -= q * s;
                        }
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows.get(pivot_row).is_some_and(|r| r[col] != 0) {
            if rows[pivot_row][col] < 0 {
                for x in rows[pivot_row].iter_mut() {
                    *x = -*x;
                }
            }
            let pv = rows[pivot_row][col];
            for r in 0..pivot_row {
                let q = rows[r][col].div_euclid(pv);
                if q != 0 {
                    for j in 0..k {
                        let s = rows[pivot_row][j];
                        rows[r][j] -= q * s;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Solves `X * basis = rows` by back-substitution; `basis` is upper
/// triangular from [`row_hnf`] and the divisions are exact because the rows
/// lie in the spanned lattice.
fn express_in_basis(rows: &[Vec<i128>], basis: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let k = basis.len();
    rows.iter()
        .map(|m| {
            let mut x = vec![0i128; k];
            for j in 0..k {
                let partial: i128 = (0..j).map(|i| x[i] * basis[i][j]).sum();
                let num = m[j] - partial;
                debug_assert_eq!(num % basis[j][j], 0, "row outside the lattice");
                x[j] = num / basis[j][j];
            }
            x
        })
        .collect()
}

/// Diagonal of the Smith normal form, with unit entries dropped; the result
/// is the ascending divisibility chain of invariant factors.
#[allow(clippy::needless_range_loop)] // in-place row and column operations
fn smith_invariants(mut m: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let dim = rows.min(cols);
    for t in 0..dim {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    if q != 0 {
                        for j in t..cols {
                            let s = m[t][j];
                            m[i][j] -= q * s;
                        }
                    }
                    if m[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    if q != 0 {
                        for i in t..rows {
                            let s = m[i][t];
                            m[i][j] -= q * s;
                        }
                    }
                    if m[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the submatrix for the chain
            let p = m[t][t];
            let mut fixed = false;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % p != 0 {
                        for jj in t..cols {
                            let s = m[i][jj];
                            m[t][jj] += s;
                        }
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if m[t][t] == 0 {
            break;
        }
    }
    (0..dim)
        .map(|t| m[t][t].unsigned_abs() as u64)
        .filter(|&d| d > 1)
        .collect()
}

fn subgroup_from_bits(ambient: &Arc<Vec<u64>>, arith: &Arith, members: Vec<u64>) -> Subgroup {
    let k = ambient.len();
    let mut rows: Vec<Vec<i128>> = bits::ones(&members)
        .map(|idx| arith.tuples[idx].iter().map(|&x| x as i128).collect())
        .collect();
    for i in 0..k {
        let mut row = vec![0i128; k];
        row[i] = ambient[i] as i128;
        rows.push(row);
    }
    let basis = row_hnf(rows, k);
    let order = bits::count(&members) as u64;
    Subgroup { ambient: ambient.clone(), members, order, basis }
}

/// Every subgroup of the direct product with the given raw factor list,
/// found by closing generated subgroups, deduplicated by membership set,
/// and sorted by (order, membership bits).
pub fn enumerate_subgroups_of(
    raw_factors: &[u64],
    limits: &Limits,
) -> Result<Vec<Subgroup>, GroupError> {
    let order: u128 = raw_factors.iter().map(|&f| f as u128).product();
    if order > limits.max_group_order as u128 {
        return Err(GroupError::OrderLimit { order, limit: limits.max_group_order });
    }
    let arith = Arith::new(raw_factors);
    let ambient = Arc::new(raw_factors.to_vec());
    let n = arith.order;
    let words = bits::words_for(n);
    let mut zero = vec![0u64; words];
    bits::set(&mut zero, 0);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(zero.clone());
    let mut queue = vec![zero];
    let mut head = 0;
    while head < queue.len() {
        let base = queue[head].clone();
        head += 1;
        for g in 1..n {
            if bits::get(&base, g) {
                continue;
            }
            // close under the new generator: union of translates by
            // multiples of g
            let mut bigger = base.clone();
            let mut m = g;
            while m != 0 {
                for idx in bits::ones(&base) {
                    bits::set(&mut bigger, arith.add(idx, m));
                }
                m = arith.add(m, g);
            }
            if seen.insert(bigger.clone()) {
                if queue.len() >= limits.max_subgroups {
                    return Err(GroupError::SubgroupLimit { limit: limits.max_subgroups });
                }
                queue.push(bigger);
            }
        }
    }
    queue.sort_by_key(|b| (bits::count(b), b.clone()));
    Ok(queue.into_iter().map(|b| subgroup_from_bits(&ambient, &arith, b)).collect())
}

pub fn enumerate_subgroups(
    a: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<Vec<Subgroup>, GroupError> {
    enumerate_subgroups_of(a.invariant_factors(), limits)
}

/// The subgroup lattice: inclusion order, meet = intersection, join = sum.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub lattice: Arc<FiniteLattice>,
    pub subgroups: Vec<Subgroup>,
}

pub fn subgroup_lattice(
    a: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<SubgroupLattice, GroupError> {
    let subgroups = enumerate_subgroups(a, limits)?;
    subgroup_lattice_of(subgroups, limits)
}

fn subgroup_lattice_of(
    subgroups: Vec<Subgroup>,
    limits: &Limits,
) -> Result<SubgroupLattice, GroupError> {
    if subgroups.len() > limits.max_lattice_size {
        return Err(GroupError::LatticeLimit {
            count: subgroups.len(),
            limit: limits.max_lattice_size,
        });
    }
    let labels: Vec<String> = subgroups.iter().map(Subgroup::label).collect();
    let lattice = FiniteLattice::from_order_relation(
        labels,
        |i, j| subgroups[i].is_subset_of(&subgroups[j]),
        limits,
    )?;
    Ok(SubgroupLattice { lattice: Arc::new(lattice), subgroups })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShMethod {
    /// Strong irreducibility in the dual of the materialized subgroup
    /// lattice, checked over all element pairs.
    FullDualLattice,
    /// Pair check restricted to subgroups with cyclic prime-power quotient,
    /// which meet-generate the dual; the generation property is verified.
    CocyclicGenerators,
}

/// Both routes to the strongly hollow subgroups, as index vectors into
/// `subgroups`.
#[derive(Debug, Clone)]
pub struct StronglyHollowReport {
    pub subgroups: Vec<Subgroup>,
    pub lattice_route: Vec<usize>,
    pub characterization_route: Vec<usize>,
    pub agree: bool,
    pub method: ShMethod,
}

/// Subgroup count up to which the full dual-lattice route is used.
const FULL_ROUTE_MAX_SUBGROUPS: usize = 400;

pub fn strongly_hollow_subgroups(
    a: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<StronglyHollowReport, GroupError> {
    let subgroups = enumerate_subgroups(a, limits)?;
    let n = subgroups.len();
    let (lattice_flags, method) = if n <= FULL_ROUTE_MAX_SUBGROUPS {
        (sh_flags_full_route(&subgroups, limits)?, ShMethod::FullDualLattice)
    } else {
        (sh_flags_cocyclic_route(a, &subgroups), ShMethod::CocyclicGenerators)
    };
    let char_flags = sh_flags_characterization(a, &subgroups);
    let lattice_route: Vec<usize> =
        (0..n).filter(|&i| lattice_flags[i]).collect();
    let characterization_route: Vec<usize> =
        (0..n).filter(|&i| char_flags[i]).collect();
    let agree = lattice_route == characterization_route;
    Ok(StronglyHollowReport { subgroups, lattice_route, characterization_route, agree, method })
}

fn sh_flags_full_route(
    subgroups: &[Subgroup],
    limits: &Limits,
) -> Result<Vec<bool>, GroupError> {
    let wide = Limits {
        max_lattice_size: limits.max_lattice_size.max(FULL_ROUTE_MAX_SUBGROUPS),
        ..*limits
    };
    let sl = subgroup_lattice_of(subgroups.to_vec(), &wide)?;
    let dual = sl.lattice.dual();
    Ok(sl.lattice.elements().map(|i| is_strongly_irreducible(&dual, i)).collect())
}

/// Restricted pair check against the subgroups with cyclic prime-power
/// quotient (plus the whole group). Every subgroup must be an intersection
/// of such subgroups; this is verified before the flags are trusted.
fn sh_flags_cocyclic_route(a: &FiniteAbelianGroup, subgroups: &[Subgroup]) -> Vec<bool> {
    let n = subgroups.len();
    let arith = Arith::new(a.invariant_factors());
    let words = subgroups[0].members.len();
    let cocyclic: Vec<usize> = (0..n)
        .filter(|&i| {
            let q = FiniteAbelianGroup { factors: smith_invariants(subgroups[i].basis.clone()) };
            q.is_trivial() || (q.is_cyclic() && factorize(q.order()).len() == 1)
        })
        .collect();
    // generation: every subgroup is the intersection of the cocyclic
    // subgroups above it
    for h in subgroups {
        // start from the whole group, masked to the element count
        let mut inter = vec![u64::MAX; words];
        for b in arith.order..words * 64 {
            inter[b / 64] &= !(1u64 << (b % 64));
        }
        for &c in &cocyclic {
            if h.is_subset_of(&subgroups[c]) {
                for (w, src) in inter.iter_mut().zip(&subgroups[c].members) {
                    *w &= src;
                }
            }
        }
        assert_eq!(
            inter, h.members,
            "subgroup is not an intersection of cocyclic-quotient subgroups"
        );
    }
    // sums of cocyclic pairs
    let m = cocyclic.len();
    let mut sums = vec![vec![0u64; words]; m * m];
    for (ci, &i) in cocyclic.iter().enumerate() {
        for (cj, &j) in cocyclic.iter().enumerate().skip(ci) {
            let mut sum = vec![0u64; words];
            for x in bits::ones(&subgroups[i].members) {
                for y in bits::ones(&subgroups[j].members) {
                    bits::set(&mut sum, arith.add(x, y));
                }
            }
            sums[ci * m + cj] = sum.clone();
            sums[cj * m + ci] = sum;
        }
    }
    (0..n)
        .map(|p| {
            let pb = &subgroups[p].members;
            let below: Vec<bool> = cocyclic
                .iter()
                .map(|&c| bits::subset(pb, &subgroups[c].members))
                .collect();
            for ci in 0..m {
                if below[ci] {
                    continue;
                }
                for cj in ci..m {
                    if !below[cj] && bits::subset(pb, &sums[ci * m + cj]) {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

/// A non-zero subgroup is strongly hollow exactly when its order is a prime
/// power p^j and the p-component of the ambient group is cyclic; the zero
/// subgroup is vacuously strongly hollow.
fn sh_flags_characterization(a: &FiniteAbelianGroup, subgroups: &[Subgroup]) -> Vec<bool> {
    subgroups
        .iter()
        .map(|s| {
            if s.order() == 1 {
                return true;
            }
            let f = factorize(s.order());
            f.len() == 1 && a.p_component(f[0].0).is_cyclic()
        })
        .collect()
}

/// Invariant factors of `A / P` via Smith reduction of the relation matrix
/// (the Hermite basis of the preimage lattice of `P`).
pub fn quotient(a: &FiniteAbelianGroup, p: &Subgroup) -> FiniteAbelianGroup {
    assert_eq!(
        a.invariant_factors(),
        p.ambient_factors(),
        "subgroup belongs to a different group"
    );
    FiniteAbelianGroup { factors: smith_invariants(p.basis.clone()) }
}

/// `|Hom(A, B)| = prod gcd(d_i, e_j)` over the invariant factors.
pub fn hom_count(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Result<u128, GroupError> {
    let mut count: u128 = 1;
    for &d in a.invariant_factors() {
        for &e in b.invariant_factors() {
            count = count
                .checked_mul(gcd(d, e) as u128)
                .ok_or(GroupError::CountOverflow)?;
        }
    }
    Ok(count)
}

pub fn hom_is_trivial(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> bool {
    a.invariant_factors()
        .iter()
        .all(|&d| b.invariant_factors().iter().all(|&e| gcd(d, e) == 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StephensonReport {
    pub precondition_strongly_irreducible: bool,
    pub precondition_strongly_hollow: bool,
    /// `Hom(P/(P n Q), Q/(P n Q)) = 0` for every subgroup Q.
    pub hom_all_trivial: bool,
    /// Indices of violating subgroups Q in enumeration order.
    pub violations: Vec<usize>,
}

/// For each subgroup Q, checks that `Hom(P/(P n Q), Q/(P n Q))` is trivial.
/// The conclusion is guaranteed when P is strongly irreducible or strongly
/// hollow in the subgroup lattice; the preconditions are reported rather
/// than enforced so that the detectable failure for other P stays
/// observable.
pub fn stephenson_check(
    a: &FiniteAbelianGroup,
    p: &Subgroup,
    limits: &Limits,
) -> Result<StephensonReport, GroupError> {
    let subgroups = enumerate_subgroups(a, limits)?;
    let arith = Arith::new(a.invariant_factors());
    let ambient = Arc::new(a.invariant_factors().to_vec());
    let p_idx = subgroups
        .iter()
        .position(|s| s.members == p.members)
        .expect("subgroup belongs to this group");
    let violations = hom_condition_violations(&subgroups, &arith, &ambient, p_idx);
    let si = subgroup_is_si(&subgroups, p_idx);
    let sh = subgroup_is_sh(&subgroups, &arith, p_idx);
    Ok(StephensonReport {
        precondition_strongly_irreducible: si,
        precondition_strongly_hollow: sh,
        hom_all_trivial: violations.is_empty(),
        violations,
    })
}

/// The indices of Q with non-trivial `Hom(P/(P n Q), Q/(P n Q))`, against a
/// subgroup list already enumerated for `a`.
pub fn stephenson_violations(
    a: &FiniteAbelianGroup,
    subgroups: &[Subgroup],
    p_idx: usize,
) -> Vec<usize> {
    let arith = Arith::new(a.invariant_factors());
    let ambient = Arc::new(a.invariant_factors().to_vec());
    hom_condition_violations(subgroups, &arith, &ambient, p_idx)
}

fn hom_condition_violations(
    subgroups: &[Subgroup],
    arith: &Arith,
    ambient: &Arc<Vec<u64>>,
    p_idx: usize,
) -> Vec<usize> {
    let p = &subgroups[p_idx];
    let mut violations = Vec::new();
    for (qi, q) in subgroups.iter().enumerate() {
        let inter_bits = bits::and(&p.members, &q.members);
        if inter_bits == p.members {
            // P inside Q: the first quotient is trivial
            continue;
        }
        let inter = subgroup_from_bits(ambient, arith, inter_bits);
        let left = p.quotient_by(&inter);
        let right = q.quotient_by(&inter);
        if !hom_is_trivial(&left, &right) {
            violations.push(qi);
        }
    }
    violations
}

fn subgroup_is_si(subgroups: &[Subgroup], p_idx: usize) -> bool {
    let p = &subgroups[p_idx];
    for k in subgroups {
        if k.is_subset_of(p) {
            continue;
        }
        for l in subgroups {
            if !l.is_subset_of(p) && bits::subset(&bits::and(&k.members, &l.members), &p.members)
            {
                return false;
            }
        }
    }
    true
}

fn subgroup_is_sh(subgroups: &[Subgroup], arith: &Arith, p_idx: usize) -> bool {
    let p = &subgroups[p_idx];
    let words = p.members.len();
    for (ki, k) in subgroups.iter().enumerate() {
        if p.is_subset_of(k) {
            continue;
        }
        for l in subgroups.iter().skip(ki) {
            if p.is_subset_of(l) {
                continue;
            }
            let mut sum = vec![0u64; words];
            for x in bits::ones(&k.members) {
                for y in bits::ones(&l.members) {
                    bits::set(&mut sum, arith.add(x, y));
                }
            }
            if bits::subset(&p.members, &sum) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandReport {
    /// E is strongly hollow in E + D (subgroup pair check).
    pub lattice_strongly_hollow: bool,
    /// every subgroup contains E or is contained in D
    pub contains_or_inside: bool,
    /// ann(E) + ann(D) is the whole ring: gcd(q, exponent(D)) = 1
    pub annihilator_sum_full: bool,
    /// ann(D) not inside ann(E): q does not divide exponent(D)
    pub annihilator_not_contained: bool,
    pub agree: bool,
}

/// On `M = E + D` with `E` simple of prime order `q`, evaluates the four
/// equivalent conditions for `E` to be strongly hollow in `M` and reports
/// whether they agree.
pub fn simple_summand_check(
    q: u64,
    d: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<SummandReport, GroupError> {
    if !is_prime(q) {
        return Err(GroupError::NotSimple(q));
    }
    // work in the raw product [q] ++ factors(D) so E and D stay visible
    let mut raw = vec![q];
    raw.extend_from_slice(d.invariant_factors());
    let order: u128 = raw.iter().map(|&f| f as u128).product();
    if order > limits.max_group_order as u128 {
        return Err(GroupError::OrderLimit { order, limit: limits.max_group_order });
    }
    let subgroups = enumerate_subgroups_of(&raw, limits)?;
    let arith = Arith::new(&raw);
    let words = subgroups[0].members.len();
    let k = raw.len();
    // E = { (x, 0, ..., 0) }, D = { (0, y, ...) }
    let mut e_bits = vec![0u64; words];
    let mut d_bits = vec![0u64; words];
    for (idx, tuple) in arith.tuples.iter().enumerate() {
        if tuple[1..].iter().all(|&c| c == 0) {
            bits::set(&mut e_bits, idx);
        }
        if tuple[0] == 0 {
            bits::set(&mut d_bits, idx);
        }
    }
    let _ = k;
    let e_idx = subgroups.iter().position(|s| s.members == e_bits).expect("E is a subgroup");
    let lattice_strongly_hollow = subgroup_is_sh(&subgroups, &arith, e_idx);
    let contains_or_inside = subgroups.iter().all(|n| {
        bits::subset(&e_bits, &n.members) || bits::subset(&n.members, &d_bits)
    });
    let exp_d = d.exponent();
    let annihilator_sum_full = gcd(q, exp_d) == 1;
    let annihilator_not_contained = !exp_d.is_multiple_of(q);
    let flags = [
        lattice_strongly_hollow,
        contains_or_inside,
        annihilator_sum_full,
        annihilator_not_contained,
    ];
    Ok(SummandReport {
        lattice_strongly_hollow,
        contains_or_inside,
        annihilator_sum_full,
        annihilator_not_contained,
        agree: flags.iter().all(|&f| f == flags[0]),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HollowReport {
    pub subgroups: Vec<Subgroup>,
    /// Indices of subgroups that are hollow as groups (the join of all
    /// proper subgroups stays proper).
    pub hollow: Vec<usize>,
    /// Indices of subgroups that are trivial or cyclic of prime-power order.
    pub cyclic_prime_power: Vec<usize>,
    pub agree: bool,
}

/// Subgroups that are hollow as groups, verified against the arithmetic
/// description (cyclic p-groups, including the trivial subgroup).
pub fn hollow_subgroups(
    a: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<HollowReport, GroupError> {
    let sl = subgroup_lattice(a, limits)?;
    let l = &sl.lattice;
    let hollow: Vec<usize> = l
        .elements()
        .filter(|&h| {
            let join_of_propers =
                l.join_all(l.down_set(h).into_iter().filter(|&x| x != h));
            join_of_propers != h || l.down_set(h).len() == 1
        })
        .collect();
    let cyclic_prime_power: Vec<usize> = sl
        .subgroups
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            s.order() == 1
                || (s.as_group().is_cyclic() && factorize(s.order()).len() == 1)
        })
        .map(|(i, _)| i)
        .collect();
    let agree = hollow == cyclic_prime_power;
    Ok(HollowReport { subgroups: sl.subgroups, hollow, cyclic_prime_power, agree })
}

fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of the given order, up to isomorphism.
pub fn all_abelian_groups_of_order(n: u64, limits: &Limits) -> Vec<FiniteAbelianGroup> {
    if n == 0 {
        return vec![];
    }
    let mut result: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for part in partitions(e) {
            for base in &result {
                let mut factors = base.clone();
                factors.extend(part.iter().map(|&x| p.pow(x)));
                next.push(factors);
            }
        }
        result = next;
    }
    result
        .into_iter()
        .map(|factors| FiniteAbelianGroup::new(&factors, limits).expect("order within limits"))
        .collect()
}
