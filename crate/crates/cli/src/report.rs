//! CSV emission for experiment results.
//!
//! Formatting is pinned (six decimal places, `true`/`false` flags) so a
//! rerun with the same plan produces byte-identical files.

use crate::experiment::{RunRecord, SummaryRecord};
use anyhow::{Context, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Renders the per-realization table: one row per optimization run.
pub fn rates_csv(records: &[RunRecord]) -> String {
    let mut out = String::from("arch,N,realization,sum_rate,iterations,converged\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{:.6},{},{}",
            r.arch, r.n, r.realization, r.sum_rate, r.iterations, r.converged
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Renders the summary table: one row per (architecture, N) with the mean
/// rate and the component count of the architecture at that size.
pub fn summary_csv(summaries: &[SummaryRecord]) -> String {
    let mut out = String::from("arch,N,mean_sum_rate,component_count\n");
    for s in summaries {
        writeln!(
            out,
            "{},{},{:.6},{}",
            s.arch, s.n, s.mean_sum_rate, s.component_count
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Writes `content` under `dir`, creating the directory if needed.
pub fn write_output(dir: &Path, name: &str, content: &str) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, content).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_records() -> Vec<RunRecord> {
        vec![
            RunRecord {
                arch: "fully".into(),
                n: 4,
                realization: 0,
                sum_rate: 3.25,
                iterations: 12,
                converged: true,
            },
            RunRecord {
                arch: "single".into(),
                n: 4,
                realization: 1,
                sum_rate: 1.0 / 3.0,
                iterations: 200,
                converged: false,
            },
        ]
    }

    #[test]
    fn rates_rows_use_pinned_formatting() {
        let csv = rates_csv(&sample_records());
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "arch,N,realization,sum_rate,iterations,converged"
        );
        assert_eq!(lines.next().unwrap(), "fully,4,0,3.250000,12,true");
        assert_eq!(lines.next().unwrap(), "single,4,1,0.333333,200,false");
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn summary_rows_use_pinned_formatting() {
        let csv = summary_csv(&[SummaryRecord {
            arch: "tree".into(),
            n: 16,
            mean_sum_rate: 2.5,
            component_count: 31,
        }]);
        assert_eq!(
            csv,
            "arch,N,mean_sum_rate,component_count\ntree,16,2.500000,31\n"
        );
    }

    #[test]
    fn write_output_creates_directories() {
        let dir = std::env::temp_dir().join("bdris-report-test");
        let _ = std::fs::remove_dir_all(&dir);
        write_output(&dir.join("nested"), "a.csv", "x\n").unwrap();
        let read = std::fs::read_to_string(dir.join("nested").join("a.csv")).unwrap();
        assert_eq!(read, "x\n");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
