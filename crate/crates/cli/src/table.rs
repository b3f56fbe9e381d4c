//! Plain-text renderings for `--format table`.

use std::fmt::Write;

use gsv_core::sld::{DecayedSld, ThresholdReport};
use gsv_core::{Graph, Sld};

const BAR_WIDTH: usize = 40;

fn bar(value: f64, max: f64) -> String {
    if max <= 0.0 || value <= 0.0 {
        return String::new();
    }
    let len = ((value / max) * BAR_WIDTH as f64).round().max(1.0) as usize;
    "#".repeat(len)
}

pub fn sld(sld: &Sld, decayed: Option<&DecayedSld>) -> String {
    let mut s = String::new();
    match decayed {
        None => {
            let max = sld.counts().iter().copied().max().unwrap_or(0) as f64;
            let _ = writeln!(s, "{:>3} | {:>20} | bar", "k", "A_k");
            for (k, &a) in sld.counts().iter().enumerate() {
                let _ = writeln!(s, "{k:>3} | {a:>20} | {}", bar(a as f64, max));
            }
        }
        Some(d) => {
            let max = d.values.iter().copied().fold(0.0, f64::max);
            let _ = writeln!(
                s,
                "{:>3} | {:>20} | {:>12} | bar",
                "k",
                "A_k",
                format!("p={}", d.p)
            );
            for (k, (&a, &v)) in sld.counts().iter().zip(&d.values).enumerate() {
                let _ = writeln!(s, "{k:>3} | {a:>20} | {v:>12.6} | {}", bar(v, max));
            }
        }
    }
    s
}

pub fn thresholds(r: &ThresholdReport) -> String {
    format!(
        "n-sector      {:.6}\nmajorization  {:.6}\ndistillation  {:.6}\n",
        r.n_sector, r.majorization, r.distillation
    )
}

pub fn edges(g: &Graph) -> String {
    let mut s = format!("{} vertices\n", g.n());
    for (i, j) in g.edges() {
        let _ = writeln!(s, "{} {}", i + 1, j + 1);
    }
    s
}
