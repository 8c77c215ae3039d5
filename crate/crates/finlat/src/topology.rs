//! Basis families on lattice spectra: the closed sets `V(a) = {p in X | a <= p}`
//! over a spectrum of strongly irreducible elements, and the open sets
//! `chi(a) = {p in X | p not<= a}` over a spectrum of strongly hollow
//! elements. Both families are verified exhaustively against their closure
//! laws over all element pairs.

use crate::bits;
use crate::classify::{
    is_strongly_hollow, is_strongly_irreducible, si_elements, strongly_hollow_elements,
};
use crate::lattice::FiniteLattice;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("spectrum member {element} is not strongly irreducible (or is the top element)")]
    SpectrumNotSI { element: usize },
    #[error("spectrum member {element} is not strongly hollow (or is the bottom element)")]
    SpectrumNotSH { element: usize },
    #[error("spectrum member {index} out of range for size {size}")]
    OutOfRange { index: usize, size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Closed,
    Open,
}

/// Strongly irreducible elements excluding top; may be empty (an empty
/// spectrum still carries the indiscrete situation and is not an error).
pub fn si_spectrum(l: &FiniteLattice) -> Vec<usize> {
    si_elements(l).into_iter().filter(|&p| p != l.top()).collect()
}

/// Strongly hollow elements excluding bottom.
pub fn sh_spectrum(l: &FiniteLattice) -> Vec<usize> {
    strongly_hollow_elements(l).into_iter().filter(|&p| p != l.bottom()).collect()
}

/// An indexed family of spectrum subsets, one per lattice element, together
/// with its construction-time verification.
#[derive(Debug, Clone)]
pub struct TopologyBasis {
    lattice: Arc<FiniteLattice>,
    pub kind: BasisKind,
    /// Sorted spectrum, as lattice element indices.
    pub spectrum: Vec<usize>,
    /// `sets[a]` is a bitset over spectrum positions.
    pub sets: Vec<Vec<u64>>,
    pub verification: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: String,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Ordered element pairs checked per binary closure law.
    pub pairs_checked: usize,
    pub extremes_ok: bool,
    pub violations: Vec<LawViolation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.extremes_ok && self.violations.is_empty()
    }
}

impl TopologyBasis {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn member_labels(&self, a: usize) -> Vec<String> {
        bits::ones(&self.sets[a])
            .map(|pos| self.lattice.label(self.spectrum[pos]).to_string())
            .collect()
    }

    /// Spectrum positions of `sets[a]`, ascending.
    pub fn members(&self, a: usize) -> Vec<usize> {
        bits::ones(&self.sets[a]).collect()
    }
}

/// Builds the closed-set family `V(a) = {p in X | a <= p}` for all `a`.
/// Every spectrum member must be strongly irreducible and distinct from top.
pub fn closed_basis(
    lattice: Arc<FiniteLattice>,
    spectrum: &[usize],
) -> Result<TopologyBasis, TopologyError> {
    for &p in spectrum {
        if p >= lattice.size() {
            return Err(TopologyError::OutOfRange { index: p, size: lattice.size() });
        }
        if p == lattice.top() || !is_strongly_irreducible(&lattice, p) {
            return Err(TopologyError::SpectrumNotSI { element: p });
        }
    }
    let mut spectrum = spectrum.to_vec();
    spectrum.sort_unstable();
    spectrum.dedup();
    let words = bits::words_for(spectrum.len().max(1));
    let sets: Vec<Vec<u64>> = lattice
        .elements()
        .map(|a| {
            let mut set = vec![0u64; words];
            for (pos, &p) in spectrum.iter().enumerate() {
                if lattice.leq(a, p) {
                    bits::set(&mut set, pos);
                }
            }
            set
        })
        .collect();
    let mut basis = TopologyBasis {
        lattice,
        kind: BasisKind::Closed,
        spectrum,
        sets,
        verification: VerificationReport {
            pairs_checked: 0,
            extremes_ok: false,
            violations: vec![],
        },
    };
    basis.verification = verify_topology(&basis);
    Ok(basis)
}

/// Builds the open-set family `chi(a) = {p in X | p not<= a}` for all `a`.
/// Every spectrum member must be strongly hollow and distinct from bottom.
pub fn open_basis(
    lattice: Arc<FiniteLattice>,
    spectrum: &[usize],
) -> Result<TopologyBasis, TopologyError> {
    for &p in spectrum {
        if p >= lattice.size() {
            return Err(TopologyError::OutOfRange { index: p, size: lattice.size() });
        }
        if p == lattice.bottom() || !is_strongly_hollow(&lattice, p) {
            return Err(TopologyError::SpectrumNotSH { element: p });
        }
    }
    let mut spectrum = spectrum.to_vec();
    spectrum.sort_unstable();
    spectrum.dedup();
    let words = bits::words_for(spectrum.len().max(1));
    let sets: Vec<Vec<u64>> = lattice
        .elements()
        .map(|a| {
            let mut set = vec![0u64; words];
            for (pos, &p) in spectrum.iter().enumerate() {
                if !lattice.leq(p, a) {
                    bits::set(&mut set, pos);
                }
            }
            set
        })
        .collect();
    let mut basis = TopologyBasis {
        lattice,
        kind: BasisKind::Open,
        spectrum,
        sets,
        verification: VerificationReport {
            pairs_checked: 0,
            extremes_ok: false,
            violations: vec![],
        },
    };
    basis.verification = verify_topology(&basis);
    Ok(basis)
}

/// Re-verifies every closure law from the stored sets alone, independently
/// of how they were constructed. For a closed basis: the full spectrum at
/// bottom, the empty set at top, `V(a) u V(b) = V(a /\ b)`, and
/// `V(a) n V(b) = V(a \/ b)`. For an open basis the dual laws.
pub fn verify_topology(basis: &TopologyBasis) -> VerificationReport {
    let l = &basis.lattice;
    let n = l.size();
    let words = basis.sets[0].len();
    let full: Vec<u64> = {
        let mut f = vec![0u64; words];
        for pos in 0..basis.spectrum.len() {
            bits::set(&mut f, pos);
        }
        f
    };
    let empty = vec![0u64; words];
    let extremes_ok = basis.sets[l.bottom()] == full && basis.sets[l.top()] == empty;
    let mut violations = Vec::new();
    let mut pairs_checked = 0usize;
    for a in 0..n {
        for b in 0..n {
            pairs_checked += 1;
            let union: Vec<u64> =
                basis.sets[a].iter().zip(&basis.sets[b]).map(|(x, y)| x | y).collect();
            let inter = bits::and(&basis.sets[a], &basis.sets[b]);
            match basis.kind {
                BasisKind::Closed => {
                    if union != basis.sets[l.meet(a, b)] {
                        violations.push(LawViolation {
                            law: "V(a) u V(b) = V(a /\\ b)".into(),
                            a,
                            b,
                        });
                    }
                    if inter != basis.sets[l.join(a, b)] {
                        violations.push(LawViolation {
                            law: "V(a) n V(b) = V(a \\/ b)".into(),
                            a,
                            b,
                        });
                    }
                }
                BasisKind::Open => {
                    if inter != basis.sets[l.join(a, b)] {
                        violations.push(LawViolation {
                            law: "chi(a) n chi(b) = chi(a \\/ b)".into(),
                            a,
                            b,
                        });
                    }
                    if union != basis.sets[l.meet(a, b)] {
                        violations.push(LawViolation {
                            law: "chi(a) u chi(b) = chi(a /\\ b)".into(),
                            a,
                            b,
                        });
                    }
                }
            }
        }
    }
    VerificationReport { pairs_checked, extremes_ok, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boolean, chain, diamond, divisor_lattice};
    use crate::limits::Limits;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn si_spectrum_examples() {
        let d12 = Arc::new(divisor_lattice(12, &limits()).unwrap());
        let spec: Vec<&str> = si_spectrum(&d12).into_iter().map(|i| d12.label(i)).collect();
        assert_eq!(spec, ["3", "4", "6"]);

        let m3 = diamond(3, &limits()).unwrap();
        assert!(si_spectrum(&m3).is_empty());

        let c4 = chain(4, &limits()).unwrap();
        assert_eq!(si_spectrum(&c4), vec![0, 1, 2]);
    }

    #[test]
    fn sh_spectrum_examples() {
        let c4 = chain(4, &limits()).unwrap();
        assert_eq!(sh_spectrum(&c4), vec![1, 2, 3]);

        let m3 = diamond(3, &limits()).unwrap();
        assert!(sh_spectrum(&m3).is_empty());

        let b2 = boolean(2, &limits()).unwrap();
        assert_eq!(sh_spectrum(&b2), vec![1, 2]);
    }

    #[test]
    fn closed_basis_laws() {
        let l = Arc::new(divisor_lattice(12, &limits()).unwrap());
        let spectrum = si_spectrum(&l);
        let basis = closed_basis(l.clone(), &spectrum).unwrap();
        assert!(basis.verification.passed());
        assert_eq!(basis.verification.pairs_checked, 36);
        // V(bottom) is the whole spectrum, V(top) is empty
        assert_eq!(basis.members(l.bottom()).len(), spectrum.len());
        assert!(basis.members(l.top()).is_empty());
    }

    #[test]
    fn closed_basis_rejects_non_si_members() {
        let l = Arc::new(boolean(2, &limits()).unwrap());
        let err = closed_basis(l.clone(), &[l.bottom()]).unwrap_err();
        assert!(matches!(err, TopologyError::SpectrumNotSI { .. }));
        // top is strongly irreducible but still excluded from spectra
        let err = closed_basis(l, &[3]).unwrap_err();
        assert!(matches!(err, TopologyError::SpectrumNotSI { element: 3 }));
    }

    #[test]
    fn open_basis_examples() {
        let b2 = Arc::new(boolean(2, &limits()).unwrap());
        let basis = open_basis(b2.clone(), &[1, 2]).unwrap();
        assert!(basis.verification.passed());
        assert_eq!(basis.member_labels(1), vec!["{2}"]);
        assert_eq!(basis.member_labels(2), vec!["{1}"]);
        assert_eq!(basis.members(b2.bottom()).len(), 2);
        assert!(basis.members(b2.top()).is_empty());

        let c4 = Arc::new(chain(4, &limits()).unwrap());
        let basis = open_basis(c4.clone(), &sh_spectrum(&c4)).unwrap();
        assert!(basis.verification.passed());
        // chi(a) = {b, 1} in the chain 0 < a < b < 1
        assert_eq!(basis.member_labels(1), vec!["b", "1"]);
    }

    #[test]
    fn empty_spectrum_is_allowed() {
        let m3 = Arc::new(diamond(3, &limits()).unwrap());
        let basis = closed_basis(m3.clone(), &[]).unwrap();
        assert!(basis.verification.passed());
        let basis = open_basis(m3, &[]).unwrap();
        assert!(basis.verification.passed());
    }

    #[test]
    fn corrupted_basis_fails_verification() {
        let l = Arc::new(divisor_lattice(12, &limits()).unwrap());
        let spectrum = si_spectrum(&l);
        let mut basis = closed_basis(l, &spectrum).unwrap();
        basis.sets[2][0] ^= 1;
        let report = verify_topology(&basis);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.a == 2 || v.b == 2));
    }

    #[test]
    fn bases_are_antitone() {
        // a <= b shrinks both families: V(b) <= V(a) and chi(b) <= chi(a)
        let l = Arc::new(divisor_lattice(60, &limits()).unwrap());
        let closed = closed_basis(l.clone(), &si_spectrum(&l)).unwrap();
        let open = open_basis(l.clone(), &sh_spectrum(&l)).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                if l.leq(a, b) {
                    assert!(crate::bits::subset(&closed.sets[b], &closed.sets[a]));
                    assert!(crate::bits::subset(&open.sets[b], &open.sets[a]));
                }
            }
        }
    }

    #[test]
    fn open_basis_is_complemented_closed_basis_of_dual() {
        for l in [
            divisor_lattice(12, &limits()).unwrap(),
            chain(5, &limits()).unwrap(),
            boolean(3, &limits()).unwrap(),
        ] {
            let l = Arc::new(l);
            let dual = Arc::new(l.dual());
            let spectrum = sh_spectrum(&l);
            assert_eq!(spectrum, si_spectrum(&dual));
            let open = open_basis(l.clone(), &spectrum).unwrap();
            let closed_dual = closed_basis(dual, &spectrum).unwrap();
            for a in l.elements() {
                let chi: Vec<usize> = open.members(a);
                let complement: Vec<usize> = (0..spectrum.len())
                    .filter(|&pos| !closed_dual.members(a).contains(&pos))
                    .collect();
                assert_eq!(chi, complement);
            }
        }
    }
}
