//! Depolarizing noise and lower bounds on the entanglement-loss threshold.
//!
//! Under `n` single-qubit depolarizing channels of strength `p` each sector
//! shrinks as `A_k ↦ (1-p)^{2k} A_k`. Three sufficient entanglement criteria
//! then give independent lower bounds on the noise level at which the state
//! stops being certifiably entangled.

use serde::{Deserialize, Serialize};

use super::{Sld, SldError};
use crate::graph::{Graph, SldType};
use crate::json::Real;

/// Step of the coarse sign scan in the majorization root search.
const SCAN_STEP: f64 = 1e-3;

/// Bracket width at which bisection stops.
const BISECT_TOL: f64 = 1e-12;

/// Sector lengths after depolarizing noise.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayedSld {
    pub sld: Sld,
    pub p: f64,
    pub values: Vec<f64>,
}

impl DecayedSld {
    pub fn n(&self) -> usize {
        self.sld.n()
    }

    pub fn to_json(&self) -> DecayedSldJson {
        DecayedSldJson {
            n: self.sld.n(),
            a: self.sld.counts().to_vec(),
            sld_type: self.sld.sld_type(),
            p: Real(self.p),
            values: self.values.iter().copied().map(Real).collect(),
        }
    }
}

/// The SLD wire form extended by `"p"` and the decayed `"values"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayedSldJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "type")]
    pub sld_type: SldType,
    pub p: Real,
    pub values: Vec<Real>,
}

fn check_probability(p: f64) -> Result<(), SldError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SldError::Probability(p))
    }
}

/// `values[k] = (1-p)^{2k} A_k`.
pub fn decay(sld: &Sld, p: f64) -> Result<DecayedSld, SldError> {
    check_probability(p)?;
    let x = (1.0 - p) * (1.0 - p);
    let values = sld
        .counts()
        .iter()
        .enumerate()
        .map(|(k, &a)| a as f64 * x.powi(k as i32))
        .collect();
    Ok(DecayedSld {
        sld: sld.clone(),
        p,
        values,
    })
}

/// Bound from the `A_n > 1` criterion: `1 - A_n^{-1/(2n)}`, or 0 when the
/// criterion fails already without noise.
pub fn threshold_n_sector(sld: &Sld) -> f64 {
    let n = sld.n();
    let top = sld.counts()[n];
    if n == 0 || top <= 1 {
        return 0.0;
    }
    1.0 - (top as f64).powf(-1.0 / (2 * n) as f64)
}

/// `g(x) = Σ_k (2k - n) A_k x^k`, evaluated by Horner's rule.
fn majorization_poly(sld: &Sld, x: f64) -> f64 {
    let n = sld.n() as f64;
    sld.counts()
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (k, &a)| {
            acc * x + (2.0 * k as f64 - n) * a as f64
        })
}

/// Bound from the criterion `Σ_k (2k - n) A_k > 0`.
///
/// With `x = (1-p)²` the decayed criterion reads `g(x) > 0`, where `g(0) = -n`.
/// The largest root `x*` in `[0, 1]` is bracketed by a downward sign scan and
/// refined by bisection; the bound is `1 - √x*`. Returns 0 when `g(1) <= 0`.
pub fn threshold_majorization(sld: &Sld) -> f64 {
    let n = sld.n() as i128;
    let at_one: i128 = sld
        .counts()
        .iter()
        .enumerate()
        .map(|(k, &a)| (2 * k as i128 - n) * a as i128)
        .sum();
    if at_one <= 0 {
        return 0.0;
    }
    let g = |x: f64| majorization_poly(sld, x);
    let mut hi = 1.0;
    let mut lo = hi;
    let mut step = 1;
    loop {
        let x = (1.0 - step as f64 * SCAN_STEP).max(0.0);
        if g(x) <= 0.0 {
            lo = x;
            break;
        }
        hi = x;
        if x == 0.0 {
            // g(0) = -n < 0 for n >= 1, so this only guards rounding
            break;
        }
        step += 1;
    }
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    1.0 - root.sqrt()
}

/// Bound from the distillation protocol,
/// `1 - 2^{-2 / (2 + max_{ij ∈ E} deg i + deg j)}`; 0 for edgeless graphs.
pub fn threshold_distillation(g: &Graph) -> f64 {
    match g.max_edge_degree_sum() {
        Some(sum) => 1.0 - 2f64.powf(-2.0 / (2 + sum) as f64),
        None => 0.0,
    }
}

/// The three lower bounds side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub n_sector: f64,
    pub majorization: f64,
    pub distillation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ThresholdReportJson {
    pub n_sector: Real,
    pub majorization: Real,
    pub distillation: Real,
}

impl ThresholdReport {
    pub fn to_json(&self) -> ThresholdReportJson {
        ThresholdReportJson {
            n_sector: Real(self.n_sector),
            majorization: Real(self.majorization),
            distillation: Real(self.distillation),
        }
    }
}

/// All three bounds for a graph whose distribution is already known.
pub fn thresholds(g: &Graph, sld: &Sld) -> ThresholdReport {
    ThresholdReport {
        n_sector: threshold_n_sector(sld),
        majorization: threshold_majorization(sld),
        distillation: threshold_distillation(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{edgeless, path, ring};
    use crate::sld::{closed_form_ghz, sld_of_graph};

    fn star3() -> Sld {
        Sld::new(vec![1, 0, 3, 4]).unwrap()
    }

    #[test]
    fn decay_examples() {
        let s = star3();
        assert_eq!(decay(&s, 0.0).unwrap().values, vec![1.0, 0.0, 3.0, 4.0]);
        assert_eq!(decay(&s, 1.0).unwrap().values, vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            decay(&s, 0.5).unwrap().values,
            vec![1.0, 0.0, 0.1875, 0.0625]
        );
        assert_eq!(decay(&s, 1.5), Err(SldError::Probability(1.5)));
        assert!(decay(&s, f64::NAN).is_err());
    }

    #[test]
    fn decay_is_monotone() {
        let s = sld_of_graph(&ring(6).unwrap()).unwrap();
        let ps: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        for w in ps.windows(2) {
            let a = decay(&s, w[0]).unwrap();
            let b = decay(&s, w[1]).unwrap();
            assert_eq!(a.values[0], 1.0);
            for k in 1..=s.n() {
                if s.counts()[k] > 0 {
                    assert!(b.values[k] < a.values[k]);
                }
            }
        }
    }

    #[test]
    fn n_sector_examples() {
        assert_eq!(threshold_n_sector(&Sld::product_state(5).unwrap()), 0.0);
        let ghz3 = threshold_n_sector(&star3());
        assert!((ghz3 - (1.0 - 4f64.powf(-1.0 / 6.0))).abs() < 1e-15);
        assert!((ghz3 - 0.2063).abs() < 1e-4);
        let ghz4 = threshold_n_sector(&closed_form_ghz(4).unwrap());
        assert!((ghz4 - (1.0 - 9f64.powf(-1.0 / 8.0))).abs() < 1e-15);
    }

    /// Largest `p` on a uniform grid at which `check` still holds on the
    /// decayed distribution.
    fn scan_threshold(sld: &Sld, steps: usize, check: impl Fn(&[f64]) -> bool) -> f64 {
        let mut last = 0.0;
        for i in 0..=steps {
            let p = i as f64 / steps as f64;
            if check(&decay(sld, p).unwrap().values) {
                last = p;
            } else {
                break;
            }
        }
        last
    }

    #[test]
    fn n_sector_matches_scan() {
        let s = star3();
        let scanned = scan_threshold(&s, 100_000, |v| v[3] > 1.0);
        assert!((scanned - threshold_n_sector(&s)).abs() < 2e-5);
    }

    #[test]
    fn majorization_ghz3() {
        // 4x³ + x² - 1 = 0 by hand-rolled bisection
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if 4.0 * mid.powi(3) + mid * mid - 1.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((lo - 0.5567).abs() < 1e-4);
        let expect = 1.0 - lo.sqrt();
        let got = threshold_majorization(&star3());
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
        assert!((got - 0.254).abs() < 1e-3);
    }

    #[test]
    fn majorization_edge_cases() {
        for n in 1..=12 {
            assert_eq!(threshold_majorization(&Sld::product_state(n).unwrap()), 0.0);
        }
        assert_eq!(threshold_majorization(&Sld::unit()), 0.0);
        // g(1) = -3 - 5 + 1 + 3 < 0
        let low = Sld::new(vec![1, 5, 1, 1]).unwrap();
        assert_eq!(threshold_majorization(&low), 0.0);
    }

    #[test]
    fn majorization_bracket_holds() {
        for sld in [
            star3(),
            closed_form_ghz(6).unwrap(),
            sld_of_graph(&ring(6).unwrap()).unwrap(),
        ] {
            let p = threshold_majorization(&sld);
            let holds = |q: f64| {
                let v = decay(&sld, q).unwrap().values;
                v.iter()
                    .enumerate()
                    .map(|(k, a)| (2.0 * k as f64 - sld.n() as f64) * a)
                    .sum::<f64>()
                    > 0.0
            };
            assert!(p > 0.0);
            assert!(holds(p - 1e-6));
            assert!(!holds(p + 1e-6));
        }
    }

    #[test]
    fn distillation_examples() {
        let r = threshold_distillation(&ring(6).unwrap());
        assert!((r - (1.0 - 2f64.powf(-1.0 / 3.0))).abs() < 1e-15);
        assert!((r - 0.20630).abs() < 1e-5);
        let k2 = threshold_distillation(&path(2).unwrap());
        assert!((k2 - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
        assert_eq!(threshold_distillation(&edgeless(4).unwrap()), 0.0);
    }

    #[test]
    fn report_json() {
        let g = edgeless(3).unwrap();
        let sld = sld_of_graph(&g).unwrap();
        let report = thresholds(&g, &sld);
        let text = serde_json::to_string(&report.to_json()).unwrap();
        assert_eq!(text, r#"{"nSector":0,"majorization":0,"distillation":0}"#);
        let d = decay(&star3(), 0.5).unwrap();
        assert_eq!(
            serde_json::to_string(&d.to_json()).unwrap(),
            r#"{"n":3,"A":[1,0,3,4],"type":"I","p":0.5,"values":[1,0,0.1875,0.0625]}"#
        );
    }
}
