use std::fmt::Write;

use lonesieve::divisor::sym2_enumerate;
use lonesieve::geometry::points::point_to_json;
use lonesieve::geometry::{enumerate_points, places_up_to_degree, reduce_mod_p, validate_involution, PlaneCurve};
use lonesieve::sieve::{doom_check, CurveSpec, MarkedCurveData};
use lonesieve::Error;
use serde_json::{json, Value};

use super::{list, Output};
use crate::commands::splitting::parse_fields;
use crate::config::{parse_primes, CurveArgs, FixedPointArgs, PointsArgs, Sym2Args};
use crate::status::{read_file, read_json, ExitStatus, Failure};

fn load_spec(path: &std::path::Path) -> Result<CurveSpec, Failure> {
    CurveSpec::from_str(&read_file(path)?).map_err(|e| Failure::from(e).at(path.display()))
}

/// An extension coordinate is printed as a polynomial in the generator t.
fn coord_text(c: &Value) -> String {
    let Some(cs) = c.as_array() else { return c.to_string() };
    let terms: Vec<String> = cs
        .iter()
        .enumerate()
        .rev()
        .filter_map(|(i, a)| {
            let a = a.as_u64().unwrap_or(0);
            match (a, i) {
                (0, _) => None,
                (_, 0) => Some(a.to_string()),
                (1, 1) => Some("t".into()),
                (1, _) => Some(format!("t^{i}")),
                (_, 1) => Some(format!("{a}t")),
                _ => Some(format!("{a}t^{i}")),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn coords_text(v: &Value) -> String {
    let parts: Vec<String> = v.as_array().into_iter().flatten().map(coord_text).collect();
    format!("({})", parts.join(":"))
}

pub fn curve_validate(args: CurveArgs) -> Result<Output, Failure> {
    let spec = load_spec(&args.curve)?;
    let primes = parse_primes(&args.primes, false)?;
    let mut rows = vec![];
    let mut text = String::new();
    let mut all_good = true;
    for p in primes {
        let row = match reduce_mod_p(&spec.form, p) {
            Ok(curve) => {
                let involution = match &spec.involution {
                    None => Value::Null,
                    Some(m) => match m.reduce_mod_p(p as u32).and_then(|m| validate_involution(&m, &curve)) {
                        Ok(s) => json!({"valid": true, "lambda": s.lambda, "mu": s.mu, "trivial": s.trivial}),
                        Err(e) => {
                            all_good = false;
                            json!({"valid": false, "reason": e.to_string()})
                        }
                    },
                };
                json!({"p": p, "good_reduction": true, "genus": curve.genus(), "involution": involution})
            }
            Err(e @ (Error::BadReduction { .. } | Error::DenominatorClash(_))) => {
                all_good = false;
                json!({"p": p, "good_reduction": false, "reason": e.to_string()})
            }
            Err(e) => return Err(e.into()),
        };
        match row["good_reduction"].as_bool() {
            Some(true) => {
                write!(text, "p={p}: smooth, genus {}", row["genus"]).unwrap();
                match row["involution"]["valid"].as_bool() {
                    Some(true) => write!(text, ", involution ok").unwrap(),
                    Some(false) => write!(text, ", involution invalid: {}", row["involution"]["reason"]).unwrap(),
                    None => {}
                }
                text.push('\n');
            }
            _ => writeln!(text, "p={p}: {}", row["reason"].as_str().unwrap_or("bad reduction")).unwrap(),
        }
        rows.push(row);
    }
    let status = if all_good { ExitStatus::Success } else { ExitStatus::VerdictFailed };
    let json = json!({"curve": spec.name, "curve_digest": spec.digest(), "primes": rows});
    Ok(Output { json, text, status })
}

pub fn points(args: PointsArgs) -> Result<Output, Failure> {
    let spec = load_spec(&args.curve)?;
    let mut rows = vec![];
    let mut text = String::new();
    for p in parse_primes(&args.primes, false)? {
        let curve = reduce_mod_p(&spec.form, p)?;
        let pts: Vec<Value> =
            enumerate_points(&curve, args.degree)?.iter().map(|pt| json!(point_to_json(pt))).collect();
        writeln!(text, "p={p} k={}: {} points", args.degree, pts.len()).unwrap();
        for pt in &pts {
            writeln!(text, "  {}", coords_text(pt)).unwrap();
        }
        rows.push(json!({"p": p, "k": args.degree, "count": pts.len(), "points": pts}));
    }
    Ok(Output { json: json!({"curve": spec.name, "results": rows}), text, status: ExitStatus::Success })
}

fn place_counts(curve: &PlaneCurve) -> Result<(usize, usize), Failure> {
    let places = places_up_to_degree(curve, 2)?;
    let n1 = places.iter().filter(|pl| pl.degree() == 1).count();
    Ok((n1, places.len() - n1))
}

pub fn sym2(args: Sym2Args) -> Result<Output, Failure> {
    let spec = load_spec(&args.curve)?;
    let mut rows = vec![];
    let mut text = String::new();
    for p in parse_primes(&args.primes, false)? {
        let curve = reduce_mod_p(&spec.form, p)?;
        let (n1, n2) = place_counts(&curve)?;
        let divs = sym2_enumerate(&curve)?;
        writeln!(text, "p={p}: {n1} rational places, {n2} quadratic places, {} divisors", divs.len()).unwrap();
        let mut row = json!({"p": p, "rational_places": n1, "quadratic_places": n2, "size": divs.len()});
        if args.list {
            let listed: Vec<Value> = divs.iter().map(|d| d.to_json()).collect();
            for d in &listed {
                writeln!(text, "  {d}").unwrap();
            }
            row["divisors"] = Value::Array(listed);
        }
        rows.push(row);
    }
    Ok(Output { json: json!({"curve": spec.name, "results": rows}), text, status: ExitStatus::Success })
}

pub fn fixed_points(args: FixedPointArgs) -> Result<Output, Failure> {
    let data = MarkedCurveData::from_json(&read_json(&args.curve)?).map_err(|e| Failure::from(e).at(args.curve.display()))?;
    let fields = match &args.fields {
        Some(path) => Some(parse_fields(&read_json(path)?).map_err(|e| e.at(path.display()))?),
        None => None,
    };
    let specs = match &fields {
        Some((q, Some(c))) => Some((q, c)),
        Some((_, None)) => {
            log::warn!("field data has no cubic; skipping the splitting check");
            None
        }
        None => None,
    };
    let mut rows = vec![];
    let mut text = String::new();
    for p in parse_primes(&args.primes, true)? {
        let check = doom_check(&data, p, specs)?;
        let pts: Vec<String> =
            check.fixed_points.iter().map(|c| coords_text(&serde_json::to_value(c).expect("serializable"))).collect();
        write!(text, "p={p}: fixed {{{}}}, extra fixed point {}", list(&pts), if check.condition_ii { "yes" } else { "no" })
            .unwrap();
        if let Some(s) = &check.splitting {
            write!(text, ", doomed by splitting {}", if s.doomed { "yes" } else { "no" }).unwrap();
        }
        text.push('\n');
        for c in check.coincidences.iter().filter(|c| c.coincide) {
            writeln!(text, "  {} and {} coincide", c.a, c.b).unwrap();
        }
        rows.push(serde_json::to_value(&check).expect("serializable"));
    }
    let json = json!({"curve": data.name, "curve_digest": data.digest(), "results": rows});
    Ok(Output { json, text, status: ExitStatus::Success })
}
