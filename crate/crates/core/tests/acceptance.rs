//! The acceptance checklist: fourteen release gates, one test per gate,
//! each printing a single pass/fail line (visible with `--nocapture`).
//! Where a named verify suite already implements a gate, the gate runs
//! that suite; the rest are checked directly here.

use axby_core::bounds::find_champion;
use axby_core::families::extremal_k_family;
use axby_core::scan::{run_suite, scan_range, sum_f_ratio, ScanMode, ScanOptions, Suite};

fn criterion(no: u32, label: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {no:02} ({label}): pass"),
        Err(why) => {
            println!("criterion {no:02} ({label}): FAIL — {why}");
            panic!("criterion {no} ({label}) failed: {why}");
        }
    }
}

fn suite_passes(suite: Suite) -> Result<(), String> {
    let report = run_suite(suite).map_err(|e| e.to_string())?;
    if report.passed {
        Ok(())
    } else {
        let shown = report.failures.len().min(3);
        Err(format!(
            "suite {} reported {} failures, first {shown}: {:?}",
            report.suite,
            report.failures.len(),
            &report.failures[..shown]
        ))
    }
}

#[test]
fn c01_oracle_equivalence() {
    criterion(1, "enumeration agrees with both oracles", || suite_passes(Suite::Oracle));
}

#[test]
fn c02_eleven_reference_counts() {
    criterion(2, "the eleven large reference counts", || suite_passes(Suite::BigEleven));
}

#[test]
fn c03_exceedance_counts() {
    criterion(3, "interval exceedance tallies 3030/3482/11", || {
        suite_passes(Suite::Exceedance)
    });
}

#[test]
fn c04_square_exceedances() {
    criterion(4, "square survey 118 of 3408, max 1587600", || suite_passes(Suite::Squares));
}

#[test]
fn c05_divisor_champion() {
    criterion(5, "divisor-ratio champion below its ceiling", || {
        let champion = find_champion(10_000_000_000).map_err(|e| e.to_string())?;
        if champion.n != 21_621_600 {
            return Err(format!("champion n = {}, expected 21621600", champion.n));
        }
        let gap = axby_core::bounds::C_UPPER - champion.c;
        if !(gap > 0.0 && gap < 1e-4) {
            return Err(format!(
                "champion C = {} is not within 1e-4 strictly below {}",
                champion.c,
                axby_core::bounds::C_UPPER
            ));
        }
        Ok(())
    });
}

#[test]
fn c06_h_threshold() {
    criterion(6, "h positive from 11621000 through 1e12", || suite_passes(Suite::Threshold));
}

#[test]
fn c07_f_below_n_at_desk_scale() {
    criterion(7, "f(n) < n for every n up to 2e4", || {
        let opts = ScanOptions {
            lo: 2,
            hi: 20_000,
            mode: ScanMode::Full,
            jobs: 1,
            checkpoint: None,
            resume: false,
        };
        let mut rows = 0u64;
        let aggregate = scan_range(&opts, |record| {
            rows += 1;
            if !record.f_lt_n || record.f >= record.n {
                return Err(axby_core::Error::invariant(format!(
                    "f({}) = {} is not below n",
                    record.n, record.f
                )));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
        if rows != 19_999 {
            return Err(format!("expected 19999 records, saw {rows}"));
        }
        if !aggregate.violations.is_empty() {
            return Err(format!("violations recorded: {:?}", aggregate.violations));
        }
        Ok(())
    });
}

#[test]
fn c08_closed_forms() {
    criterion(8, "closed forms for M(n,1) and M(n,2)", || {
        suite_passes(Suite::Reduced)?;
        suite_passes(Suite::M2)
    });
}

#[test]
fn c09_lower_bounds() {
    criterion(9, "pointwise lower bounds on f and M", || {
        suite_passes(Suite::Prop7)?;
        suite_passes(Suite::Ineq910)
    });
}

#[test]
fn c10_families() {
    criterion(10, "constructive families hold at scale", || {
        suite_passes(Suite::Skalba)?;
        suite_passes(Suite::Granville)?;
        // The extremal family [1, 2, 2t−1, 3] must realize the largest
        // admissible level k = (n+1)/3 for every t up to 1e4.
        for t in 1..=10_000u64 {
            let s = extremal_k_family(t).map_err(|e| e.to_string())?;
            if s.k != t || s.n != 3 * t - 1 || s.k != (s.n + 1) / 3 {
                return Err(format!("family member at t = {t} is off: {s} of n = {}", s.n));
            }
        }
        Ok(())
    });
}

#[test]
fn c11_bound_inequalities() {
    criterion(11, "strict bound inequalities and the h/g identity", || {
        suite_passes(Suite::Bounds)
    });
}

#[test]
fn c12_cumulative_growth() {
    criterion(12, "cumulative counts match frozen regression values", || {
        // Frozen from this library's first verified run; S(T) = Σ f(n).
        let frozen = [(1_000u64, 64_988u64), (10_000, 1_443_661), (100_000, 27_109_750)];
        let mut ratios = Vec::new();
        for (t, expected_sum) in frozen {
            let s = sum_f_ratio(t, 1).map_err(|e| e.to_string())?;
            if s.sum_f != expected_sum {
                return Err(format!("S({t}) = {}, frozen value is {expected_sum}", s.sum_f));
            }
            if !(s.ratio > 0.0) {
                return Err(format!("ratio at T = {t} is not positive: {}", s.ratio));
            }
            ratios.push(s.ratio);
        }
        let (lo, hi) = (
            ratios.iter().cloned().fold(f64::INFINITY, f64::min),
            ratios.iter().cloned().fold(0.0, f64::max),
        );
        if hi > 3.0 * lo {
            return Err(format!("ratios {ratios:?} spread beyond a factor of 3"));
        }
        Ok(())
    });
}

#[test]
fn c13_figure_table() {
    criterion(13, "the 501-row table matches the slow oracle", || {
        suite_passes(Suite::Figure1)
    });
}

#[test]
fn c14_scan_determinism() {
    criterion(14, "scan output is worker-count- and resume-invariant", || {
        let run = |jobs: usize, checkpoint, resume| -> Result<_, String> {
            let opts = ScanOptions {
                lo: 2,
                hi: 5_000,
                mode: ScanMode::Full,
                jobs,
                checkpoint,
                resume,
            };
            let mut records = Vec::new();
            let aggregate = scan_range(&opts, |r| {
                records.push(r.clone());
                Ok(())
            })
            .map_err(|e| e.to_string())?;
            Ok((records, aggregate))
        };

        let reference = run(1, None, false)?;
        for jobs in [4usize, 16] {
            let other = run(jobs, None, false)?;
            if other != reference {
                return Err(format!("jobs = {jobs} changed the scan output"));
            }
        }

        // Interrupt after three chunks, resume, and compare against the
        // uninterrupted run: suffix records, equal aggregate, and a
        // checkpoint file identical to the one-shot file.
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let oneshot = dir.path().join("oneshot.ckpt");
        let interrupted = dir.path().join("interrupted.ckpt");
        let full = run(4, Some(oneshot.clone()), false)?;
        if full != reference {
            return Err("adding a checkpoint changed the scan output".into());
        }
        std::fs::copy(&oneshot, &interrupted).map_err(|e| e.to_string())?;
        let text = std::fs::read_to_string(&interrupted).map_err(|e| e.to_string())?;
        let prefix: Vec<&str> = text.lines().take(3).collect();
        std::fs::write(&interrupted, format!("{}\n", prefix.join("\n"))).map_err(|e| e.to_string())?;

        let resumed = run(16, Some(interrupted.clone()), true)?;
        if resumed.0 != reference.0[3 * 1024..] {
            return Err("resumed records are not the exact remainder".into());
        }
        if resumed.1 != reference.1 {
            return Err("resumed aggregate differs from the uninterrupted one".into());
        }
        let replayed = std::fs::read_to_string(&interrupted).map_err(|e| e.to_string())?;
        let oneshot_text = std::fs::read_to_string(&oneshot).map_err(|e| e.to_string())?;
        if replayed != oneshot_text {
            return Err("resumed checkpoint file differs from the one-shot file".into());
        }
        Ok(())
    });
}
