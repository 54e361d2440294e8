use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::{KnownShape, LonelyCertificates, MarkedCurveData};
use crate::divisor::{sym2_enumerate, EffectiveDivisor, TorsionModel, TorsionTable};
use crate::error::{Error, Result};
use crate::fields::{is_prime, legendre_symbol, ExtensionField, Fe};
use crate::geometry::rational::reduce_point;
use crate::geometry::{reduce_mod_p, validate_involution, Mat3, Place, PlaneCurve, ProjectivePoint};

/// Reductions of the marked data at one good odd prime.
#[derive(Clone, Debug)]
pub struct PrimeContext {
    pub p: u64,
    pub curve: PlaneCurve,
    pub w: Mat3,
    pub model: TorsionModel,
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    Ok(())
}

fn rational_place(curve: &PlaneCurve, v: &[BigRational; 3]) -> Result<Place> {
    let r = reduce_point(v, curve.p())?;
    let pt = ProjectivePoint::rational(curve.p(), r).ok_or(Error::NonPrimeModulus(curve.p() as u64))?;
    if !curve.contains(&pt)? {
        return Err(Error::BadReduction { p: curve.p() as u64, reason: "marked point leaves the curve".into() });
    }
    Place::from_point(curve.tower(), &pt)
}

impl PrimeContext {
    pub fn new(data: &MarkedCurveData, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let curve = reduce_mod_p(&data.form, p)?;
        let w = data.involution.reduce_mod_p(p as u32)?;
        validate_involution(&w, &curve)?;
        let c0 = rational_place(&curve, &data.c0)?;
        let cinf = rational_place(&curve, &data.cinf)?;
        if c0 == cinf {
            return Err(Error::CuspsCollide);
        }
        Ok(PrimeContext { p, curve, w, model: TorsionModel { n: data.n, c0, cinf } })
    }
}

/// Integral primitive scaling of a point over Q(√d), as (a_i, b_i) integer pairs.
fn primitive_quadratic(point: &[super::quad::QuadElem; 3]) -> Vec<(BigInt, BigInt)> {
    let l = point.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.a.denom()).lcm(c.b.denom()));
    let lr = BigRational::from_integer(l);
    let ints: Vec<(BigInt, BigInt)> =
        point.iter().map(|c| ((&c.a * &lr).to_integer(), (&c.b * &lr).to_integer())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (a, b)| acc.gcd(a).gcd(b));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|(a, b)| (a / &g, b / &g)).collect()
}

fn to_fe(f: &ExtensionField, x: &BigInt) -> Fe {
    let p = BigInt::from(f.p());
    f.from_u32(x.mod_floor(&p).to_u32().unwrap_or(0))
}

/// Reductions of all known divisors, labelled.
pub fn reduce_known_divisors(data: &MarkedCurveData, ctx: &PrimeContext) -> Result<Vec<(String, EffectiveDivisor)>> {
    let curve = &ctx.curve;
    let p = ctx.p;
    let mut out = vec![];
    for k in &data.known {
        let div = match &k.shape {
            KnownShape::Rational(pts) => {
                let mut d = EffectiveDivisor::zero();
                for pt in pts {
                    if pt.iter().any(|c| (c.denom() % BigInt::from(p)).is_zero()) {
                        return Err(Error::DenominatorClash(p));
                    }
                    d.add_place(rational_place(curve, pt)?, 1);
                }
                d
            }
            KnownShape::Quadratic { d, point } => {
                if point.iter().any(|c| {
                    (c.a.denom() % BigInt::from(p)).is_zero() || (c.b.denom() % BigInt::from(p)).is_zero()
                }) {
                    return Err(Error::DenominatorClash(p));
                }
                let leg = legendre_symbol(*d, p)?;
                if leg == 0 {
                    return Err(Error::RamifiedCoordinateField(p));
                }
                let ints = primitive_quadratic(point);
                let deg = if leg == 1 { 1 } else { 2 };
                let f = curve.field(deg)?;
                let s = f.sqrt(&f.from_i64(*d)).ok_or_else(|| Error::InvalidInput("square root of d".into()))?;
                let mut div = EffectiveDivisor::zero();
                let signs: &[bool] = if leg == 1 { &[false, true] } else { &[false] };
                for &neg in signs {
                    let root = if neg { f.neg(&s) } else { s };
                    let coords: [Fe; 3] =
                        std::array::from_fn(|i| f.add(&to_fe(f, &ints[i].0), &f.mul(&to_fe(f, &ints[i].1), &root)));
                    let pt = ProjectivePoint::new(f, coords).ok_or_else(|| Error::BadReduction {
                        p,
                        reason: format!("known divisor {} reduces to the zero vector", k.label),
                    })?;
                    if !curve.contains(&pt)? {
                        return Err(Error::BadReduction { p, reason: format!("known divisor {} leaves the curve", k.label) });
                    }
                    div.add_place(Place::from_point(curve.tower(), &pt)?, 1);
                }
                if div.degree() != 2 {
                    return Err(Error::BadReduction { p, reason: format!("known divisor {} degenerates", k.label) });
                }
                div
            }
        };
        out.push((k.label.clone(), div));
    }
    Ok(out)
}

/// H_p (reductions of certified divisors) and S_p (the rest of X^(2)(F_p)).
#[derive(Clone, Debug)]
pub struct HpSp {
    pub sym2_size: usize,
    pub hp: BTreeSet<EffectiveDivisor>,
    pub sp: Vec<EffectiveDivisor>,
}

pub fn build_hp_sp(data: &MarkedCurveData, ctx: &PrimeContext, lonely: &LonelyCertificates) -> Result<HpSp> {
    lonely.check_labels(data)?;
    let known: BTreeMap<String, EffectiveDivisor> = reduce_known_divisors(data, ctx)?.into_iter().collect();
    let mut hp = BTreeSet::new();
    for label in lonely.labels(ctx.p) {
        hp.insert(known.get(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?.clone());
    }
    for d in &hp {
        if !hp.contains(&d.image(&ctx.curve, &ctx.w)?) {
            return Err(Error::InvolutionUnstableCertificates(ctx.p));
        }
    }
    let all = sym2_enumerate(&ctx.curve)?;
    let sym2_size = all.len();
    let sp = all.into_iter().filter(|d| !hp.contains(d)).collect();
    Ok(HpSp { sym2_size, hp, sp })
}

/// Outcome of the sieve at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveReport {
    pub p: u64,
    pub n: u32,
    pub sym2_size: usize,
    #[serde(rename = "Hp_size")]
    pub hp_size: usize,
    #[serde(rename = "Sp_size")]
    pub sp_size: usize,
    #[serde(rename = "Wp")]
    pub wp: Vec<u32>,
    pub witnesses: BTreeMap<u32, u64>,
    pub unmatched: u64,
    pub assumption_rank_zero: bool,
    pub curve_digest: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ms_elapsed: Option<u64>,
}

/// Residue of every divisor in S_p, in the order of S_p.
pub fn match_all(ctx: &PrimeContext, table: &TorsionTable, sp: &[EffectiveDivisor], workers: usize) -> Result<Vec<Option<u32>>> {
    // warm the expansion cache sequentially at the points every test touches
    for pl in [ctx.model.c0, ctx.model.cinf] {
        ctx.curve.expansion(&pl, ctx.curve.genus() as usize + 2)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    pool.install(|| sp.par_iter().map(|q| table.class_match(&ctx.curve, q, &ctx.w)).collect())
}

pub fn compute_wp(data: &MarkedCurveData, p: u64, lonely: &LonelyCertificates, workers: usize) -> Result<SieveReport> {
    let start = Instant::now();
    let ctx = PrimeContext::new(data, p)?;
    let parts = build_hp_sp(data, &ctx, lonely)?;
    let mut witnesses: BTreeMap<u32, u64> = BTreeMap::new();
    let mut unmatched = 0;
    if !parts.sp.is_empty() {
        let table = TorsionTable::build(&ctx.curve, &ctx.model)?;
        for r in match_all(&ctx, &table, &parts.sp, workers)? {
            match r {
                Some(m) => *witnesses.entry(m).or_insert(0) += 1,
                None => unmatched += 1,
            }
        }
    }
    Ok(SieveReport {
        p,
        n: data.n,
        sym2_size: parts.sym2_size,
        hp_size: parts.hp.len(),
        sp_size: parts.sp.len(),
        wp: witnesses.keys().copied().collect(),
        witnesses,
        unmatched,
        assumption_rank_zero: data.assumption_rank_zero,
        curve_digest: data.digest().to_string(),
        ms_elapsed: Some(start.elapsed().as_millis() as u64),
    })
}

/// Intersection of the W_p and the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub primes: Vec<u64>,
    pub intersection: Vec<u32>,
    pub resolved: bool,
}

pub fn intersect_and_verdict(reports: &[SieveReport]) -> Result<Verdict> {
    let first = reports.first().ok_or(Error::EmptyReportList)?;
    if reports.iter().any(|r| r.curve_digest != first.curve_digest || r.n != first.n) {
        return Err(Error::MixedCurves);
    }
    let mut set: BTreeSet<u32> = (0..first.n).collect();
    for r in reports {
        let w: BTreeSet<u32> = r.wp.iter().copied().collect();
        set = set.intersection(&w).copied().collect();
    }
    let mut primes: Vec<u64> = reports.iter().map(|r| r.p).collect();
    primes.sort();
    primes.dedup();
    let intersection: Vec<u32> = set.into_iter().collect();
    let resolved = intersection == [0];
    Ok(Verdict { primes, intersection, resolved })
}
