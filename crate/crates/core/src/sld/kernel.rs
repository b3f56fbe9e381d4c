//! Brute-force counting of stabilizer weights.
//!
//! `A_k = #{ r ∈ F₂ⁿ : swt(r, Γr) = k }`. The index space is walked in
//! Gray-code order so that consecutive `r` differ in one bit `b`, and
//! `s = Γr` is updated with a single row XOR (`s ^= Γ_b`). Each step is then a
//! flip, a XOR and a popcount.
//!
//! The parallel variant splits `0..2ⁿ` into contiguous ranges of Gray-code
//! positions. Every range recomputes its starting `s` directly, and the
//! partial histograms are summed, so the result does not depend on how the
//! space is partitioned.

use rayon::prelude::*;

use super::{Sld, SldError};
use crate::graph::{BitIter, Graph, N_MAX};

/// Largest connected component that is ever enumerated.
pub const HARD_CAP: usize = 28;

/// Largest connected component that is enumerated without being forced.
pub const AUTO_LIMIT: usize = 16;

/// Component size from which [`sld_bruteforce_connected`] goes parallel.
const PARALLEL_FROM: usize = 20;

type Histogram = [u64; N_MAX + 1];

#[inline]
fn gray(t: u64) -> u32 {
    (t ^ (t >> 1)) as u32
}

#[inline]
fn apply(rows: &[u32], r: u32) -> u32 {
    BitIter(r).fold(0, |acc, i| acc ^ rows[i])
}

/// Counts Gray-code positions `start..end`.
fn scan(rows: &[u32], start: u64, end: u64, hist: &mut Histogram) {
    if start >= end {
        return;
    }
    let mut r = gray(start);
    let mut s = apply(rows, r);
    hist[(r | s).count_ones() as usize] += 1;
    for t in start + 1..end {
        let b = t.trailing_zeros() as usize;
        r ^= 1 << b;
        s ^= rows[b];
        hist[(r | s).count_ones() as usize] += 1;
    }
}

fn check(g: &Graph) -> Result<(), SldError> {
    if g.n() > HARD_CAP {
        return Err(SldError::TooLarge {
            size: g.n(),
            cap: HARD_CAP,
        });
    }
    Ok(())
}

fn finish(n: usize, hist: &Histogram) -> Sld {
    let sld = Sld::new(hist[..=n].to_vec());
    sld.expect("kernel histogram is a valid distribution")
}

/// Single-threaded enumeration over the whole graph.
pub fn sld_bruteforce_serial(g: &Graph) -> Result<Sld, SldError> {
    check(g)?;
    let mut hist = [0u64; N_MAX + 1];
    scan(g.rows(), 0, 1u64 << g.n(), &mut hist);
    Ok(finish(g.n(), &hist))
}

/// Enumeration split into `parts` contiguous ranges run on the rayon pool.
/// The result is identical to [`sld_bruteforce_serial`] for every `parts`.
pub fn sld_bruteforce_partitioned(g: &Graph, parts: usize) -> Result<Sld, SldError> {
    check(g)?;
    let total = 1u64 << g.n();
    let parts = (parts.max(1) as u64).min(total);
    let rows = g.rows();
    let hist = (0..parts)
        .into_par_iter()
        .map(|p| {
            let mut h = [0u64; N_MAX + 1];
            scan(rows, total * p / parts, total * (p + 1) / parts, &mut h);
            h
        })
        .reduce(
            || [0u64; N_MAX + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(finish(g.n(), &hist))
}

/// Enumerates the whole graph, which the caller normally guarantees to be
/// connected. Large inputs are spread over the rayon pool.
pub fn sld_bruteforce_connected(g: &Graph) -> Result<Sld, SldError> {
    if g.n() >= PARALLEL_FROM {
        sld_bruteforce_partitioned(g, 4 * rayon::current_num_threads())
    } else {
        sld_bruteforce_serial(g)
    }
}
