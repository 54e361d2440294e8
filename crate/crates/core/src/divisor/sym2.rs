use super::effective::EffectiveDivisor;
use crate::error::{Error, Result};
use crate::geometry::{enumerate_points, places_up_to_degree, PlaneCurve};

/// All effective divisors of degree 2 over F_p, sorted.
pub fn sym2_enumerate(curve: &PlaneCurve) -> Result<Vec<EffectiveDivisor>> {
    let places = places_up_to_degree(curve, 2)?;
    let rational: Vec<_> = places.iter().filter(|p| p.degree() == 1).collect();
    let mut out = vec![];
    for (i, a) in rational.iter().enumerate() {
        for b in &rational[i..] {
            let mut d = EffectiveDivisor::place(**a, 1);
            d.add_place(**b, 1);
            out.push(d);
        }
    }
    for pl in places.iter().filter(|p| p.degree() == 2) {
        out.push(EffectiveDivisor::place(*pl, 1));
    }
    out.sort();
    let n = rational.len();
    let m = enumerate_points(curve, 2)?.len();
    if out.len() != (n * n + m) / 2 {
        return Err(Error::InvalidInput(format!("sym2 size {} differs from ({n}^2 + {m})/2", out.len())));
    }
    Ok(out)
}
