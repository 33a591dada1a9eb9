use std::io::Write;
use std::time::Instant;

use super::gen::{random_connected, GenSpec, Style};
use crate::planner::{canonicalize_with, PlanError, PlannerOptions};

pub const CSV_HEADER: [&str; 4] = ["n", "trial", "moves", "elapsed_ms"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsRow {
    pub n: usize,
    pub trial: usize,
    pub moves: usize,
    pub elapsed_ms: f64,
}

fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    // splitmix64 finalizer over the (seed, n, trial) triple
    let mut z = seed ^ ((n as u64) << 32) ^ trial as u64;
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Canonicalizes `trials` generated instances for every size in `sizes`.
/// Rows come out ordered by `(n, trial)`.
pub fn stats_run(
    d: usize,
    sizes: &[usize],
    trials: usize,
    seed: u64,
    style: Style,
) -> Result<Vec<StatsRow>, PlanError> {
    let opts = PlannerOptions {
        verify_postorder: false,
        validate_output: false,
    };
    let mut rows = Vec::with_capacity(sizes.len() * trials);
    for &n in sizes {
        for trial in 0..trials {
            let spec = GenSpec {
                n,
                d,
                seed: trial_seed(seed, n, trial),
                style,
            };
            let config = random_connected(&spec)?;
            let start = Instant::now();
            let out = canonicalize_with(&config, &opts)?;
            rows.push(StatsRow {
                n,
                trial,
                moves: out.trace.len(),
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[StatsRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.trial.to_string(),
            r.moves.to_string(),
            format!("{:.3}", r.elapsed_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln(mean moves)` against `ln(n)` over the distinct
/// sizes in `rows`. `None` with fewer than two usable sizes.
pub fn loglog_slope(rows: &[StatsRow]) -> Option<f64> {
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let points: Vec<(f64, f64)> = sizes
        .iter()
        .filter_map(|&n| {
            let ms: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.moves as f64)
                .collect();
            let mean = ms.iter().sum::<f64>() / ms.len() as f64;
            (n > 0 && mean > 0.0).then(|| ((n as f64).ln(), mean.ln()))
        })
        .collect();
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}
