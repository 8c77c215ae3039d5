//! Constructors for the standard lattices used as a test corpus: chains,
//! boolean algebras, divisor lattices, diamonds M_k, the pentagon N5,
//! products, and subspace lattices of finite vector spaces.

use crate::lattice::{FiniteLattice, LatticeError};
use crate::limits::Limits;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuilderError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size {requested} exceeds limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse builder spec {spec:?}: {reason}")]
    ParseError { spec: String, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn check_size(n: usize, limits: &Limits) -> Result<(), BuilderError> {
    if n > limits.max_lattice_size {
        return Err(BuilderError::SizeLimit { requested: n, limit: limits.max_lattice_size });
    }
    Ok(())
}

/// Interior elements of chains and the atoms of diamonds are labelled
/// a, b, c, ... with a numeric fallback once letters run out.
fn letter_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("m{i}")
    }
}

/// Total order of `n` elements.
pub fn chain(n: usize, limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    if n == 0 {
        return Err(BuilderError::InvalidParameter("chain length must be >= 1".into()));
    }
    check_size(n, limits)?;
    let labels: Vec<String> = (0..n)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == n - 1 {
                "1".to_string()
            } else {
                letter_label(i - 1)
            }
        })
        .collect();
    let covers: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(FiniteLattice::build_from_covers(n, &covers, Some(labels), limits)?)
}

/// Lattice of subsets of a k-element set, ordered by inclusion.
pub fn boolean(k: u32, limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    if k >= 20 {
        return Err(BuilderError::SizeLimit {
            requested: 1usize.checked_shl(k).unwrap_or(usize::MAX),
            limit: limits.max_lattice_size,
        });
    }
    let n = 1usize << k;
    check_size(n, limits)?;
    let labels: Vec<String> = (0..n)
        .map(|mask| {
            let members: Vec<String> =
                (0..k).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    Ok(FiniteLattice::from_order_relation(labels, |a, b| a & !b == 0, limits)?)
}

pub fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Divisors of `n` ordered by divisibility; meet is gcd, join is lcm.
pub fn divisor_lattice(n: u64, limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    if n == 0 {
        return Err(BuilderError::InvalidParameter("divisor lattice needs n >= 1".into()));
    }
    let divs = divisors_of(n);
    check_size(divs.len(), limits)?;
    let labels: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
    Ok(FiniteLattice::from_order_relation(labels, |a, b| divs[b].is_multiple_of(divs[a]), limits)?)
}

/// M_k: bottom, top, and k pairwise incomparable elements between them.
pub fn diamond(k: usize, limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    if k == 0 {
        return Err(BuilderError::InvalidParameter("diamond needs at least one atom".into()));
    }
    let n = k + 2;
    check_size(n, limits)?;
    let mut labels = vec!["0".to_string()];
    labels.extend((0..k).map(letter_label));
    labels.push("1".to_string());
    let mut covers = Vec::with_capacity(2 * k);
    for atom in 1..=k {
        covers.push((0, atom));
        covers.push((atom, k + 1));
    }
    Ok(FiniteLattice::build_from_covers(n, &covers, Some(labels), limits)?)
}

/// N5: 0 < a < c < 1 with b incomparable to both a and c.
pub fn pentagon(limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    let labels = ["0", "a", "c", "b", "1"].map(String::from).to_vec();
    let covers = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)];
    Ok(FiniteLattice::build_from_covers(5, &covers, Some(labels), limits)?)
}

/// Componentwise order on pairs of elements.
pub fn product(
    l1: &FiniteLattice,
    l2: &FiniteLattice,
    limits: &Limits,
) -> Result<FiniteLattice, BuilderError> {
    let n1 = l1.size();
    let n2 = l2.size();
    let n = n1.checked_mul(n2).ok_or(BuilderError::SizeLimit {
        requested: usize::MAX,
        limit: limits.max_lattice_size,
    })?;
    check_size(n, limits)?;
    let mut labels = Vec::with_capacity(n);
    for i in 0..n1 {
        for j in 0..n2 {
            labels.push(format!("({},{})", l1.label(i), l2.label(j)));
        }
    }
    Ok(FiniteLattice::from_order_relation(
        labels,
        |a, b| l1.leq(a / n2, b / n2) && l2.leq(a % n2, b % n2),
        limits,
    )?)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lattice of subspaces of the d-dimensional vector space over the field
/// with p elements, ordered by inclusion. Subspaces are canonicalized by
/// their reduced row-echelon generator matrices.
pub fn subspace_lattice(p: u64, d: u32, limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    if !is_prime(p) {
        return Err(BuilderError::NotPrime(p));
    }
    // the span closure scans every vector per discovered subspace, so bound
    // the point count directly
    let point_count = (p as u128).checked_pow(d).filter(|&c| c <= 1 << 16).ok_or(
        BuilderError::SizeLimit { requested: usize::MAX, limit: limits.max_lattice_size },
    )? as usize;

    // vectors are d digits base p, index 0 is the zero vector
    let digits = |v: usize| -> Vec<u64> {
        let mut v = v as u64;
        (0..d)
            .map(|_| {
                let r = v % p;
                v /= p;
                r
            })
            .collect()
    };
    let index = |coords: &[u64]| -> usize {
        coords.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
    };

    // reduced row echelon form over F_p; rows are vectors
    #[allow(clippy::needless_range_loop)] // in-place row operations
    let rref = |rows: &mut Vec<Vec<u64>>| {
        let mut pivot_row = 0;
        for col in 0..d as usize {
            let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let inv = mod_inverse(rows[pivot_row][col], p);
            for x in rows[pivot_row].iter_mut() {
                *x = *x * inv % p;
            }
            for r2 in 0..rows.len() {
                if r2 != pivot_row && rows[r2][col] != 0 {
                    let factor = rows[r2][col];
                    for c in 0..d as usize {
                        rows[r2][c] = (rows[r2][c] + (p - factor) * rows[pivot_row][c]) % p;
                    }
                }
            }
            pivot_row += 1;
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    };

    // enumerate subspaces as span-closures, deduplicated by point set
    let mut point_sets: Vec<Vec<u64>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let words = crate::bits::words_for(point_count);
    let mut zero = vec![0u64; words];
    crate::bits::set(&mut zero, 0);
    seen.insert(zero.clone());
    point_sets.push(zero);
    let mut frontier = 0;
    while frontier < point_sets.len() {
        let base = point_sets[frontier].clone();
        frontier += 1;
        for v in 1..point_count {
            if crate::bits::get(&base, v) {
                continue;
            }
            // span(base ∪ {v}) = { b + t·v | b in base, t in F_p }
            let mut bigger = vec![0u64; words];
            let vd = digits(v);
            for b in crate::bits::ones(&base) {
                let bd = digits(b);
                for t in 0..p {
                    let sum: Vec<u64> =
                        bd.iter().zip(&vd).map(|(x, y)| (x + t * y) % p).collect();
                    crate::bits::set(&mut bigger, index(&sum));
                }
            }
            if seen.insert(bigger.clone()) {
                if point_sets.len() >= limits.max_lattice_size {
                    return Err(BuilderError::SizeLimit {
                        requested: point_sets.len() + 1,
                        limit: limits.max_lattice_size,
                    });
                }
                point_sets.push(bigger);
            }
        }
    }
    point_sets.sort_by_key(|s| (crate::bits::count(s), s.clone()));

    let labels: Vec<String> = point_sets
        .iter()
        .map(|s| {
            let mut rows: Vec<Vec<u64>> =
                crate::bits::ones(s).skip(1).map(digits).collect();
            rref(&mut rows);
            if rows.is_empty() {
                "<>".to_string()
            } else {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
                    .collect();
                format!("<{}>", parts.join(","))
            }
        })
        .collect();
    Ok(FiniteLattice::from_order_relation(
        labels,
        |a, b| crate::bits::subset(&point_sets[a], &point_sets[b]),
        limits,
    )?)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Parses a builder spec string: `chain:5`, `boolean:3`, `divisor:60`,
/// `M:3`, `N5`, `subspace:2,2`, `product:(divisor:12)x(chain:2)`.
pub fn parse_spec(spec: &str, limits: &Limits) -> Result<FiniteLattice, BuilderError> {
    let spec = spec.trim();
    let err = |reason: &str| BuilderError::ParseError {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if spec.eq_ignore_ascii_case("n5") || spec.eq_ignore_ascii_case("pentagon") {
        return pentagon(limits);
    }
    let (kind, args) = spec.split_once(':').ok_or_else(|| err("expected kind:args"))?;
    match kind.to_ascii_lowercase().as_str() {
        "chain" => chain(args.parse().map_err(|_| err("chain length must be an integer"))?, limits),
        "boolean" => {
            boolean(args.parse().map_err(|_| err("atom count must be an integer"))?, limits)
        }
        "divisor" => {
            divisor_lattice(args.parse().map_err(|_| err("modulus must be an integer"))?, limits)
        }
        "m" | "diamond" => {
            diamond(args.parse().map_err(|_| err("atom count must be an integer"))?, limits)
        }
        "subspace" => {
            let (p, d) = args.split_once(',').ok_or_else(|| err("expected subspace:p,d"))?;
            subspace_lattice(
                p.trim().parse().map_err(|_| err("p must be an integer"))?,
                d.trim().parse().map_err(|_| err("d must be an integer"))?,
                limits,
            )
        }
        "product" => {
            let (left, right) = split_product(args).ok_or_else(|| err(
                "expected product:(spec)x(spec)",
            ))?;
            let l1 = parse_spec(left, limits)?;
            let l2 = parse_spec(right, limits)?;
            product(&l1, &l2, limits)
        }
        other => Err(err(&format!("unknown lattice kind {other:?}"))),
    }
}

/// Splits `(left)x(right)` respecting nested parentheses.
fn split_product(args: &str) -> Option<(&str, &str)> {
    let args = args.trim();
    if !args.starts_with('(') {
        return None;
    }
    let mut depth = 0usize;
    for (i, c) in args.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let left = &args[1..i];
                    let rest = args[i + 1..].trim();
                    let rest = rest.strip_prefix('x').or_else(|| rest.strip_prefix('X'))?;
                    let rest = rest.trim();
                    let right = rest.strip_prefix('(')?.strip_suffix(')')?;
                    return Some((left, right));
                }
            }
            _ => {}
        }
    }
    None
}
