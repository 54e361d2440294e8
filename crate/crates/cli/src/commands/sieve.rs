use std::fmt::Write;

use lonesieve::sieve::{compute_wp, intersect_and_verdict, LonelyCertificates, MarkedCurveData};
use serde_json::json;

use super::{list, Output};
use crate::cache::ReportCache;
use crate::config::{cache_dir, parse_primes, SieveArgs};
use crate::status::{read_json, ExitStatus, Failure};

pub fn run(args: SieveArgs) -> Result<Output, Failure> {
    let primes = parse_primes(&args.primes, true)?;
    if args.workers == 0 {
        return Err(Failure::input("--workers must be at least 1"));
    }
    let at = args.curve.display();
    let data = MarkedCurveData::from_json(&read_json(&args.curve)?).map_err(|e| Failure::from(e).at(&at))?;
    let lonely = match &args.lonely {
        Some(path) => LonelyCertificates::from_json(&read_json(path)?)
            .map_err(|e| Failure::from(e).at(path.display()))?,
        None => LonelyCertificates::default(),
    };
    lonely.check_labels(&data)?;
    let cache = cache_dir(args.cache).map(ReportCache::new);

    let mut reports = vec![];
    for &p in &primes {
        let labels = lonely.labels(p).to_vec();
        if let Some(hit) = cache.as_ref().and_then(|c| c.load(data.digest(), p, &labels)) {
            log::info!("cache-hit p={p}");
            reports.push(hit);
            continue;
        }
        log::info!("computing W_{p} with {} worker(s)", args.workers);
        let mut report = compute_wp(&data, p, &lonely, args.workers)?;
        if let Some(c) = &cache {
            if let Err(e) = c.store(&report, &labels) {
                log::warn!("could not write cache entry for p={p}: {e}");
            }
        }
        if !args.timing {
            report.ms_elapsed = None;
        }
        reports.push(report);
    }
    let verdict = intersect_and_verdict(&reports)?;

    let mut text = String::new();
    writeln!(text, "curve {} ({})", data.name.as_deref().unwrap_or("-"), &data.digest()[..16]).unwrap();
    writeln!(text, "{:>6} {:>8} {:>6} {:>6}  W_p", "p", "sym2", "H_p", "S_p").unwrap();
    for r in &reports {
        write!(text, "{:>6} {:>8} {:>6} {:>6}  {{{}}}", r.p, r.sym2_size, r.hp_size, r.sp_size, list(&r.wp)).unwrap();
        if r.unmatched > 0 {
            write!(text, "  ({} unmatched)", r.unmatched).unwrap();
        }
        if let Some(ms) = r.ms_elapsed {
            write!(text, "  {ms} ms").unwrap();
        }
        text.push('\n');
    }
    writeln!(text, "intersection {{{}}}", list(&verdict.intersection)).unwrap();
    writeln!(text, "verdict {}", if verdict.resolved { "resolved" } else { "unresolved" }).unwrap();
    if !data.assumption_rank_zero {
        writeln!(text, "warning: rank-zero assumption not asserted by the input").unwrap();
    }

    let status = if verdict.resolved { ExitStatus::Success } else { ExitStatus::VerdictFailed };
    let json = json!({
        "curve": data.name,
        "curve_digest": data.digest(),
        "n": data.n,
        "reports": reports,
        "verdict": verdict,
    });
    Ok(Output { json, text, status })
}
