//! Dense statevector reference for small graph states.
//!
//! Builds `|G⟩ = 2^{-n/2} Σ_b (-1)^{Σ_{j<k} b_j γ_jk b_k} |b⟩` explicitly and
//! sums squared Pauli expectation values by weight. Exponential in `4ⁿ · 2ⁿ`,
//! so it is refused above [`ORACLE_MAX`]. Shares no code with the counting
//! kernel; it exists to check it.

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::Graph;
use crate::sld::Sld;
use crate::stabilizer::PauliOperator;

pub const ORACLE_MAX: usize = 6;

/// Largest distance from the nearest integer accepted for a sector length.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("statevector oracle refuses n = {0} > {ORACLE_MAX}")]
    TooLarge(usize),
    #[error("sector {k} evaluated to {value}, which is not an integer")]
    NotInteger { k: usize, value: f64 },
}

/// Real amplitudes of `|G⟩` indexed by the basis label `b` (qubit `k` at
/// bit `k`).
pub fn graph_state(g: &Graph) -> Result<Vec<f64>, OracleError> {
    let n = g.n();
    if n > ORACLE_MAX {
        return Err(OracleError::TooLarge(n));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let norm = (0.5f64).powf(n as f64 / 2.0);
    Ok((0..1usize << n)
        .map(|b| {
            let parity = edges
                .iter()
                .filter(|&&(j, k)| (b >> j) & (b >> k) & 1 == 1)
                .count();
            if parity % 2 == 0 {
                norm
            } else {
                -norm
            }
        })
        .collect())
}

/// `⟨ψ| i^q X^x Z^z |ψ⟩` for a real state.
fn expectation_raw(state: &[f64], phase: u8, x: usize, z: usize) -> Complex64 {
    let sum: f64 = (0..state.len())
        .map(|b| {
            let sign = if (z & b).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            state[b ^ x] * sign * state[b]
        })
        .sum();
    Complex64::i().powu(phase as u32) * sum
}

/// Expectation value of a Pauli operator on a real statevector.
pub fn expectation(state: &[f64], p: &PauliOperator) -> Complex64 {
    expectation_raw(state, p.phase(), p.x() as usize, p.z() as usize)
}

/// `A_k = Σ_{wt(P) = k} ⟨G|P|G⟩²` over all `4ⁿ` Pauli strings.
pub fn sld_statevector(g: &Graph) -> Result<Sld, OracleError> {
    let state = graph_state(g)?;
    let n = g.n();
    let mut sectors = vec![0.0f64; n + 1];
    for letters in 0..1usize << (2 * n) {
        // two bits per qubit: 0 = 1, 1 = X, 2 = Z, 3 = Y
        let (mut x, mut z, mut ys, mut weight) = (0usize, 0usize, 0u8, 0usize);
        for k in 0..n {
            match (letters >> (2 * k)) & 3 {
                1 => x |= 1 << k,
                2 => z |= 1 << k,
                3 => {
                    x |= 1 << k;
                    z |= 1 << k;
                    ys += 1;
                }
                _ => continue,
            }
            weight += 1;
        }
        // Y = iXZ
        let value = expectation_raw(&state, ys % 4, x, z);
        sectors[weight] += value.norm_sqr();
    }
    let counts = sectors
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let rounded = v.round();
            if (v - rounded).abs() > INTEGER_TOLERANCE {
                Err(OracleError::NotInteger { k, value: v })
            } else {
                Ok(rounded as u64)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sld::new(counts).expect("oracle sectors of a pure state are normalized"))
}
