use std::fmt::Write;

use lonesieve::fields::prime::odd_primes;
use lonesieve::splitting::{
    doom_range_report, min_split_prime, quadratic_splitting, CubicFieldSpec, QuadraticFieldSpec, Splitting,
};
use lonesieve::Error;
use serde::Serialize;
use serde_json::{json, Value};

use super::{list, Output};
use crate::config::SplittingArgs;
use crate::status::{read_json, ExitStatus, Failure};

#[derive(Serialize)]
struct Row {
    p: u64,
    k_splitting: Splitting,
    b_profile: Option<Vec<usize>>,
    doomed: bool,
    reason: String,
}

/// Field data: `{"quadratic": {"d": .., "class_number_one": ..}, "cubic": [c0, c1, c2, 1]}`.
pub fn parse_fields(v: &Value) -> Result<(QuadraticFieldSpec, Option<CubicFieldSpec>), Failure> {
    let q = v.get("quadratic").ok_or_else(|| Failure::input("quadratic: missing"))?;
    let d = q.get("d").and_then(Value::as_i64).ok_or_else(|| Failure::input("quadratic.d: expected an integer"))?;
    let h1 = match q.get("class_number_one") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| Failure::input("quadratic.class_number_one: expected a boolean"))?,
    };
    let quad = QuadraticFieldSpec::new(d, h1).map_err(|e| Failure::from(e).at("quadratic.d"))?;
    let cubic = match v.get("cubic") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let coeffs = c
                .as_array()
                .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
                .ok_or_else(|| Failure::input("cubic: expected a list of integers, constant term first"))?;
            let spec = CubicFieldSpec::new(coeffs).and_then(CubicFieldSpec::ensure_irreducible);
            Some(spec.map_err(|e| Failure::from(e).at("cubic"))?)
        }
    };
    Ok((quad, cubic))
}

fn min_split(q: &QuadraticFieldSpec) -> Result<Option<u64>, Failure> {
    match min_split_prime(q) {
        Ok(p) => Ok(Some(p)),
        Err(Error::ClassNumberUnknown) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn run(args: SplittingArgs) -> Result<Output, Failure> {
    let v = read_json(&args.fields)?;
    let (q, cubic) = parse_fields(&v).map_err(|e| e.at(args.fields.display()))?;
    if args.pmax < 3 {
        return Err(Failure::input("--pmax must be at least 3"));
    }
    let min_split_prime = min_split(&q)?;
    let (rows, ramified, smallest_not_doomed) = match &cubic {
        Some(c) => {
            let range = doom_range_report(&q, c, args.pmax)?;
            let rows: Vec<Row> = range
                .reports
                .into_iter()
                .map(|r| Row {
                    p: r.p,
                    k_splitting: r.splitting_in_k,
                    b_profile: Some(r.profile_in_b),
                    doomed: r.doomed,
                    reason: r.reason,
                })
                .collect();
            (rows, range.ramified, range.smallest_not_doomed)
        }
        None => {
            // without B only the quadratic condition is available
            let mut rows = vec![];
            let mut ramified = vec![];
            for p in odd_primes(3, args.pmax) {
                let k = quadratic_splitting(&q, p)?;
                if k == Splitting::Ramified {
                    ramified.push(p);
                    continue;
                }
                let doomed = k == Splitting::Inert;
                let reason = if doomed { "inert in K" } else { "splits in K" };
                rows.push(Row { p, k_splitting: k, b_profile: None, doomed, reason: reason.into() });
            }
            let first = rows.iter().find(|r| !r.doomed).map(|r| r.p);
            (rows, ramified, first)
        }
    };

    let mut text = String::new();
    writeln!(text, "{:>6}  {:<11}  {:<9}  {:<6}  reason", "p", "K-splitting", "B-profile", "doomed").unwrap();
    for r in &rows {
        let k = match r.k_splitting {
            Splitting::Inert => "inert",
            Splitting::Split => "split",
            Splitting::Ramified => "ramified",
        };
        let b = r.b_profile.as_ref().map(|d| format!("{{{}}}", list(d))).unwrap_or_else(|| "-".into());
        writeln!(text, "{:>6}  {:<11}  {:<9}  {:<6}  {}", r.p, k, b, if r.doomed { "yes" } else { "no" }, r.reason).unwrap();
    }
    if !ramified.is_empty() {
        writeln!(text, "ramified: {}", list(&ramified)).unwrap();
    }
    let show = |x: Option<u64>| x.map(|p| p.to_string()).unwrap_or_else(|| "none".into());
    writeln!(text, "min split prime: {}", show(min_split_prime)).unwrap();
    writeln!(text, "smallest non-doomed prime <= {}: {}", args.pmax, show(smallest_not_doomed)).unwrap();

    let json = json!({
        "d": q.d,
        "cubic": cubic.as_ref().map(|c| c.g.coeffs().to_vec()),
        "pmax": args.pmax,
        "rows": rows,
        "ramified": ramified,
        "min_split_prime": min_split_prime,
        "smallest_not_doomed": smallest_not_doomed,
    });
    Ok(Output { json, text, status: ExitStatus::Success })
}
