use lonesieve::divisor::{lin_equiv, EffectiveDivisor};
use lonesieve::geometry::reduce_mod_p;
use lonesieve::sieve::CurveSpec;
use serde_json::json;

use super::Output;
use crate::config::{single_prime, LineqArgs};
use crate::status::{read_file, ExitStatus, Failure};

pub fn run(args: LineqArgs) -> Result<Output, Failure> {
    let p = single_prime(&args.primes)?;
    let spec = CurveSpec::from_str(&read_file(&args.curve)?).map_err(|e| Failure::from(e).at(args.curve.display()))?;
    let curve = reduce_mod_p(&spec.form, p)?;
    let a = EffectiveDivisor::parse(&curve, &args.a).map_err(|e| Failure::from(e).at("first divisor"))?;
    let b = EffectiveDivisor::parse(&curve, &args.b).map_err(|e| Failure::from(e).at("second divisor"))?;
    let (equivalent, cert) = lin_equiv(&curve, &a, &b)?;
    if let Some(c) = &cert {
        if !c.verify(&curve, &a, &b)? {
            return Err(Failure {
                status: ExitStatus::InvariantViolation,
                message: "certificate failed its own verification".into(),
            });
        }
    }
    let text = match &cert {
        Some(c) => format!("true\n{}\n", serde_json::to_string(&c.to_json()).expect("serializable")),
        None => "false\n".to_string(),
    };
    let json = json!({
        "p": p,
        "A": a.to_json(),
        "B": b.to_json(),
        "equivalent": equivalent,
        "certificate": cert.map(|c| c.to_json()),
    });
    let status = if equivalent { ExitStatus::Success } else { ExitStatus::VerdictFailed };
    Ok(Output { json, text, status })
}
