use std::time::{Duration, Instant};

use sdn_core::accounting::measure;
use sdn_core::codec::SdnSequence;
use sdn_core::iso::{isomorphic, IsoInput, IsoOptions};
use sdn_core::rank::{CompetitiveRankStructure, DenseRankStructure};
use sdn_core::sort::{SortConfig, Sorter};
use sdn_core::workload;
use sdn_core::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Sort,
    Rank,
    Iso,
}

/// One CSV row.
#[derive(Debug)]
pub struct RunReport {
    pub operation: &'static str,
    pub size: usize,
    pub count: usize,
    pub wall: Duration,
    pub peak_aux_bits: usize,
    pub result: String,
}

pub const HEADER: &str = "operation,N_or_n,k,wall_ns,peak_aux_bits,result";

impl RunReport {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.operation,
            self.size,
            self.count,
            self.wall.as_nanos(),
            self.peak_aux_bits,
            self.result
        )
    }
}

/// Median wall time over `runs` calls, and the peak heap use of the first.
fn time<R>(runs: usize, mut f: impl FnMut() -> R) -> (R, Duration, usize) {
    let start = Instant::now();
    let (first, peak) = measure(&mut f);
    let mut times = vec![start.elapsed()];
    for _ in 1..runs {
        let t = Instant::now();
        std::hint::black_box(f());
        times.push(t.elapsed());
    }
    times.sort();
    (first, times[times.len() / 2], 8 * peak)
}

pub fn run(suite: Suite, sizes: &[usize], seed: u64, runs: usize) -> Result<Vec<RunReport>> {
    let runs = runs.max(1);
    // The shared lookup tables are built once per process; keep that out
    // of the first row.
    DenseRankStructure::build(&SdnSequence::from_values(&[1, 2]))?;
    CompetitiveRankStructure::build(&SdnSequence::from_values(&[1, 2]))?;
    let mut rows = Vec::new();
    for &size in sizes {
        match suite {
            Suite::Sort => {
                let s = workload::sort_bench_input(size, seed);
                let cfg = SortConfig::for_bits(s.len_bits())?;
                let mut out = SdnSequence::with_capacity(s.len_bits());
                let mut sorter = Sorter::new();
                let ((), wall, peak) = time(runs, || sorter.sort_into(&s, &cfg, &mut out));
                let values: Vec<u64> = out.iter().map(|(_, x)| x).collect();
                let ordered = values.windows(2).all(|w| w[0] <= w[1]);
                rows.push(RunReport {
                    operation: "sort",
                    size: s.len_bits(),
                    count: s.count(),
                    wall,
                    peak_aux_bits: peak,
                    result: if ordered { "sorted" } else { "unsorted" }.into(),
                });
            }
            Suite::Rank => {
                let s = workload::rank_bench_input(size, seed);
                let (dense, wall, peak) = time(runs, || DenseRankStructure::build(&s));
                let dense = dense?;
                rows.push(RunReport {
                    operation: "dense-rank",
                    size: s.len_bits(),
                    count: s.count(),
                    wall,
                    peak_aux_bits: peak,
                    result: format!("distinct={}", dense.distinct_small()),
                });
                let (comp, wall, peak) = time(runs, || CompetitiveRankStructure::build(&s));
                let comp = comp?;
                rows.push(RunReport {
                    operation: "rank",
                    size: s.len_bits(),
                    count: s.count(),
                    wall,
                    peak_aux_bits: peak,
                    result: format!("counted={}", comp.total_small()),
                });
            }
            Suite::Iso => {
                let (t, u) = workload::iso_bench_input(size, seed);
                let (a, b) = (IsoInput::unrooted(&t), IsoInput::unrooted(&u));
                let opts = IsoOptions { early_exit: false };
                let (outcome, wall, peak) = time(runs, || isomorphic(&a, &b, &opts));
                let (iso, stats) = outcome?;
                rows.push(RunReport {
                    operation: "iso",
                    size,
                    count: stats.sorted_items,
                    wall,
                    peak_aux_bits: peak,
                    result: if iso { "isomorphic" } else { "not-isomorphic" }.into(),
                });
            }
        }
    }
    Ok(rows)
}

/// Comment lines with the wall-time ratio between consecutive sizes of
/// each operation.
pub fn ratio_lines(rows: &[RunReport]) -> Vec<String> {
    let mut out = Vec::new();
    let mut ops: Vec<&str> = rows.iter().map(|r| r.operation).collect();
    ops.dedup();
    ops.sort();
    ops.dedup();
    for op in ops {
        let mine: Vec<&RunReport> = rows.iter().filter(|r| r.operation == op).collect();
        for w in mine.windows(2) {
            let ratio = w[1].wall.as_secs_f64() / w[0].wall.as_secs_f64().max(1e-12);
            out.push(format!(
                "# ratio {op} {}->{}: time x{ratio:.2}, peak_aux_bits/size {:.3}",
                w[0].size,
                w[1].size,
                w[1].peak_aux_bits as f64 / w[1].size as f64
            ));
        }
    }
    out
}
