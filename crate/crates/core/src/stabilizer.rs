//! Pauli operators in binary symplectic form and graph-state stabilizers.
//!
//! An operator is stored as `i^phase · X^x · Z^z`, one `(x_k, z_k)` bit pair
//! per qubit with qubit `k` at bit `k`. The graph state `|G⟩` is stabilized by
//! `(-1)^{Σ_{i<j} r_i γ_ij r_j} X^r Z^{Γr}` for every `r ∈ F₂ⁿ`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BitIter, Graph, N_MAX};

/// Largest vertex count for which all `2ⁿ` stabilizers may be streamed.
pub const ENUMERATION_CAP: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("bit vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{n} qubits exceed the supported maximum of {N_MAX}")]
    TooManyQubits { n: usize },
    #[error("refusing to enumerate 2^{n} stabilizers: the cap is n <= {ENUMERATION_CAP}")]
    EnumerationCap { n: usize },
    #[error("invalid Pauli string {0:?}")]
    Parse(String),
}

#[inline]
fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Number of positions where `r` or `s` is set.
#[inline]
pub fn symplectic_weight(r: u32, s: u32) -> u32 {
    (r | s).count_ones()
}

/// [`symplectic_weight`] over explicit bit slices.
pub fn symplectic_weight_bits(r: &[bool], s: &[bool]) -> Result<usize, StabilizerError> {
    if r.len() != s.len() {
        return Err(StabilizerError::LengthMismatch {
            expected: r.len(),
            found: s.len(),
        });
    }
    Ok(r.iter().zip(s).filter(|(a, b)| **a || **b).count())
}

/// Packs a slice of bits into a word, bit `k` from `bits[k]`.
pub fn pack_bits(bits: &[bool]) -> Result<u32, StabilizerError> {
    if bits.len() > N_MAX {
        return Err(StabilizerError::TooManyQubits { n: bits.len() });
    }
    Ok(bits
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &b)| acc | ((b as u32) << k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `i^phase · X^x · Z^z` on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    phase: u8,
    x: u32,
    z: u32,
}

impl PauliOperator {
    pub fn new(n: usize, phase: u8, x: u32, z: u32) -> Result<Self, StabilizerError> {
        if n > N_MAX {
            return Err(StabilizerError::TooManyQubits { n });
        }
        let m = mask(n);
        if x & !m != 0 || z & !m != 0 {
            let found = (32 - (x | z).leading_zeros()) as usize;
            return Err(StabilizerError::LengthMismatch { expected: n, found });
        }
        Ok(Self {
            n,
            phase: phase % 4,
            x,
            z,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            phase: 0,
            x: 0,
            z: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent `q` of the `i^q` prefactor in front of `X^x Z^z`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn weight(&self) -> u32 {
        symplectic_weight(self.x, self.z)
    }

    /// Number of qubits carrying a `Y` factor.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Phase in front of the letter form `⊗ σ_k` with `σ ∈ {1, X, Y, Z}`.
    /// Each `XZ = -iY` contributes a factor `i³`.
    pub fn letter_phase(&self) -> u8 {
        ((self.phase as u32 + 3 * self.y_count()) % 4) as u8
    }

    /// The overall sign when the letter-form phase is real, `None` for `±i`.
    pub fn hermitian_sign(&self) -> Option<Sign> {
        match self.letter_phase() {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Letters `1`, `X`, `Y`, `Z` without any sign, qubit 0 first.
    pub fn letters(&self) -> String {
        (0..self.n)
            .map(|k| match ((self.x >> k) & 1, (self.z >> k) & 1) {
                (0, 0) => '1',
                (1, 0) => 'X',
                (1, 1) => 'Y',
                _ => 'Z',
            })
            .collect()
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, StabilizerError> {
        if self.n != other.n {
            return Err(StabilizerError::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        // Z^z1 X^x2 = (-1)^{z1·x2} X^x2 Z^z1
        let swap = (self.z & other.x).count_ones() % 2;
        let phase = ((self.phase as u32 + other.phase as u32 + 2 * swap) % 4) as u8;
        Ok(Self {
            n: self.n,
            phase,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        })
    }

    pub fn to_json(&self) -> PauliJson {
        PauliJson {
            sign: self
                .hermitian_sign()
                .expect("non-Hermitian Pauli has no real sign")
                .as_i8(),
            paulis: self.letters(),
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.letter_phase() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl FromStr for PauliOperator {
    type Err = StabilizerError;

    /// Accepts an optional `+`, `-`, `−`, `i`, `-i` prefix followed by
    /// letters from `1`/`I`, `X`, `Y`, `Z`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || StabilizerError::Parse(s.to_owned());
        let (mut letter_phase, rest) = if let Some(r) = s.strip_prefix('+') {
            (0u32, r)
        } else if let Some(r) = s.strip_prefix('-').or_else(|| s.strip_prefix('−')) {
            (2, r)
        } else {
            (0, s)
        };
        let rest = match rest.strip_prefix('i') {
            Some(r) => {
                letter_phase += 1;
                r
            }
            None => rest,
        };
        let n = rest.chars().count();
        if n == 0 || n > N_MAX {
            return Err(err());
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (k, c) in rest.chars().enumerate() {
            match c {
                '1' | 'I' => {}
                'X' => x |= 1 << k,
                'Y' => {
                    x |= 1 << k;
                    z |= 1 << k;
                }
                'Z' => z |= 1 << k,
                _ => return Err(err()),
            }
        }
        // undo the i³ per Y absorbed by `letter_phase`
        let y = (x & z).count_ones();
        let phase = ((letter_phase + y) % 4) as u8;
        Ok(Self { n, phase, x, z })
    }
}

/// Wire form of a Hermitian Pauli operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliJson {
    pub sign: i8,
    pub paulis: String,
}

/// The stabilizer indexed by `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerElement {
    pub r: u32,
    pub pauli: PauliOperator,
}

impl StabilizerElement {
    pub fn sign(&self) -> Sign {
        self.pauli
            .hermitian_sign()
            .expect("graph-state stabilizers have a real overall phase")
    }

    pub fn weight(&self) -> u32 {
        self.pauli.weight()
    }
}

impl fmt::Display for StabilizerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pauli.fmt(f)
    }
}

#[inline]
fn element(g: &Graph, r: u32) -> StabilizerElement {
    let s = g.apply(r);
    // every edge inside supp(r) is seen from both endpoints
    let edges_inside = BitIter(r).map(|i| (g.row(i) & r).count_ones()).sum::<u32>() / 2;
    let phase = ((edges_inside % 2) * 2) as u8;
    let pauli = PauliOperator {
        n: g.n(),
        phase,
        x: r,
        z: s,
    };
    debug_assert!(pauli.hermitian_sign().is_some());
    StabilizerElement { r, pauli }
}

/// The stabilizer `(-1)^{Σ_{i<j} r_i γ_ij r_j} X^r Z^{Γr}`.
pub fn stabilizer_for(g: &Graph, r: u32) -> Result<StabilizerElement, StabilizerError> {
    if r & !mask(g.n()) != 0 {
        let found = (32 - r.leading_zeros()) as usize;
        return Err(StabilizerError::LengthMismatch {
            expected: g.n(),
            found,
        });
    }
    Ok(element(g, r))
}

/// [`stabilizer_for`] taking `r` as a bit slice.
pub fn stabilizer_for_bits(g: &Graph, r: &[bool]) -> Result<StabilizerElement, StabilizerError> {
    if r.len() != g.n() {
        return Err(StabilizerError::LengthMismatch {
            expected: g.n(),
            found: r.len(),
        });
    }
    Ok(element(g, pack_bits(r)?))
}

/// Lazy stream of stabilizers in ascending order of `r`.
#[derive(Debug, Clone)]
pub struct Stabilizers<'a> {
    graph: &'a Graph,
    next: u64,
    end: u64,
}

impl Iterator for Stabilizers<'_> {
    type Item = StabilizerElement;

    fn next(&mut self) -> Option<StabilizerElement> {
        if self.next >= self.end {
            return None;
        }
        let r = self.next as u32;
        self.next += 1;
        Some(element(self.graph, r))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Stabilizers<'_> {}

/// All `2ⁿ` stabilizers of `|G⟩`, refused above [`ENUMERATION_CAP`].
pub fn enumerate_stabilizers(g: &Graph) -> Result<Stabilizers<'_>, StabilizerError> {
    enumerate_range(g, 0..1u64 << g.n().min(63))
}

/// Stabilizers with `r` in `range`, for splitting the stream across workers.
pub fn enumerate_range(g: &Graph, range: Range<u64>) -> Result<Stabilizers<'_>, StabilizerError> {
    if g.n() > ENUMERATION_CAP {
        return Err(StabilizerError::EnumerationCap { n: g.n() });
    }
    let total = 1u64 << g.n();
    Ok(Stabilizers {
        graph: g,
        next: range.start.min(total),
        end: range.end.min(total),
    })
}

/// Outcome of testing a Pauli operator against the stabilizer group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub r: u32,
    /// Whether the phase matches exactly rather than up to a factor.
    pub exact: bool,
}

/// Finds `r` with `P = ±(stabilizer for r)`, or `None` when `P` is not in the
/// group up to phase. Operators of the wrong size are never members.
pub fn membership(g: &Graph, p: &PauliOperator) -> Option<Membership> {
    if p.n() != g.n() || g.apply(p.x()) != p.z() {
        return None;
    }
    let el = element(g, p.x());
    Some(Membership {
        r: p.x(),
        exact: el.pauli.phase == p.phase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{path, ring};

    fn star3() -> Graph {
        // center at the middle vertex
        path(3).unwrap()
    }

    #[test]
    fn star3_and_bell_examples() {
        let g = star3();
        let zxz = stabilizer_for(&g, 0b010).unwrap();
        assert_eq!(zxz.to_string(), "ZXZ");
        assert_eq!(zxz.sign(), Sign::Plus);
        let yxy = stabilizer_for_bits(&g, &[true, true, true]).unwrap();
        assert_eq!(yxy.to_string(), "-YXY");
        let id = stabilizer_for(&g, 0).unwrap();
        assert_eq!(id.to_string(), "111");
        assert_eq!(id.weight(), 0);
        assert_eq!(id.sign(), Sign::Plus);
    }

    #[test]
    fn star3_stream() {
        let g = star3();
        let rendered: Vec<String> = enumerate_stabilizers(&g)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            rendered,
            ["111", "XZ1", "ZXZ", "YYZ", "1ZX", "X1X", "ZYY", "-YXY"]
        );
        let weights: Vec<u32> = enumerate_stabilizers(&g)
            .unwrap()
            .map(|s| s.weight())
            .collect();
        assert_eq!(weights, [0, 2, 3, 3, 2, 2, 3, 3]);
    }

    #[test]
    fn edgeless_and_bell() {
        let e = Graph::new(2).unwrap();
        let r: Vec<String> = enumerate_stabilizers(&e)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(r, ["11", "X1", "1X", "XX"]);
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let r: Vec<String> = enumerate_stabilizers(&k2)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(r, ["11", "XZ", "ZX", "YY"]);
    }

    #[test]
    fn symplectic_weight_examples() {
        assert_eq!(
            symplectic_weight_bits(&[true, false], &[false, false]),
            Ok(1)
        );
        assert_eq!(
            symplectic_weight_bits(&[true, false, true], &[true, true, false]),
            Ok(3)
        );
        assert_eq!(symplectic_weight_bits(&[false; 4], &[false; 4]), Ok(0));
        assert!(symplectic_weight_bits(&[true], &[true, false]).is_err());
    }

    #[test]
    fn length_checks() {
        let g = star3();
        assert!(stabilizer_for(&g, 0b1000).is_err());
        assert!(stabilizer_for_bits(&g, &[true, false]).is_err());
        let big = Graph::new(29).unwrap();
        assert_eq!(
            enumerate_stabilizers(&big).unwrap_err(),
            StabilizerError::EnumerationCap { n: 29 }
        );
        assert!(enumerate_stabilizers(&Graph::new(28).unwrap()).is_ok());
    }

    #[test]
    fn membership_examples() {
        let g = star3();
        let zxz: PauliOperator = "ZXZ".parse().unwrap();
        assert_eq!(
            membership(&g, &zxz),
            Some(Membership {
                r: 0b010,
                exact: true
            })
        );
        let neg: PauliOperator = "-ZXZ".parse().unwrap();
        assert_eq!(
            membership(&g, &neg),
            Some(Membership {
                r: 0b010,
                exact: false
            })
        );
        let xxx: PauliOperator = "XXX".parse().unwrap();
        assert_eq!(membership(&g, &xxx), None);
        assert_eq!(
            membership(&g, &PauliOperator::identity(3)),
            Some(Membership { r: 0, exact: true })
        );
        let yxy: PauliOperator = "−YXY".parse().unwrap();
        assert_eq!(
            membership(&g, &yxy),
            Some(Membership {
                r: 0b111,
                exact: true
            })
        );
        assert_eq!(membership(&g, &"ZX".parse().unwrap()), None);
    }

    #[test]
    fn parse_render_round_trip() {
        for s in ["111", "XZ1", "-YXY", "iXYZ", "-iZ", "YY"] {
            let p: PauliOperator = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("XQ".parse::<PauliOperator>().is_err());
        assert!("".parse::<PauliOperator>().is_err());
        assert_eq!("+I".parse::<PauliOperator>().unwrap().to_string(), "1");
    }

    #[test]
    fn group_closure_on_ring() {
        let g = ring(6).unwrap();
        for a in 0..64u32 {
            for b in 0..64u32 {
                let pa = stabilizer_for(&g, a).unwrap().pauli;
                let pb = stabilizer_for(&g, b).unwrap().pauli;
                let prod = pa.compose(&pb).unwrap();
                assert_eq!(prod, stabilizer_for(&g, a ^ b).unwrap().pauli);
            }
        }
    }

    #[test]
    fn weight_one_stabilizers_are_isolated_x() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let w1: Vec<String> = enumerate_stabilizers(&g)
            .unwrap()
            .filter(|s| s.weight() == 1)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(w1, ["111X1", "1111X"]);
    }

    #[test]
    fn range_partition_concatenates() {
        let g = ring(6).unwrap();
        let all: Vec<_> = enumerate_stabilizers(&g).unwrap().collect();
        let mut parts: Vec<_> = enumerate_range(&g, 0..20).unwrap().collect();
        parts.extend(enumerate_range(&g, 20..64).unwrap());
        assert_eq!(all, parts);
    }

    #[test]
    fn json_shape() {
        let g = star3();
        let el = stabilizer_for(&g, 0b111).unwrap();
        let v = serde_json::to_string(&el.pauli.to_json()).unwrap();
        assert_eq!(v, r#"{"sign":-1,"paulis":"YXY"}"#);
    }
}
