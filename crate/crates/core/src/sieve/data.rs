use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::quad::{apply, proportional, QuadElem};
use crate::error::{Error, Result};
use crate::fields::prime::is_squarefree;
use crate::fields::UnivariatePolynomial;
use crate::geometry::rational::{parse_rational, validate_involution_q};
use crate::geometry::{QForm, QMat3};

/// A degree-2 divisor known over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnownShape {
    /// Two rational points, possibly equal.
    Rational([[BigRational; 3]; 2]),
    /// A point over Q(√d) plus its conjugate.
    Quadratic { d: i64, point: [QuadElem; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownDivisor {
    pub label: String,
    pub shape: KnownShape,
}

/// A declared fixed point of the involution, with coordinates in Q or in Q[x]/(field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub label: String,
    pub field: Option<UnivariatePolynomial>,
    /// Power-basis coefficients of each coordinate.
    pub coords: [Vec<BigRational>; 3],
}

impl FixedPoint {
    pub fn is_rational(&self) -> bool {
        self.field.is_none()
    }
}

/// Curve over Q with involution, cusp analogues, torsion order and known quadratic divisors.
#[derive(Clone, Debug)]
pub struct MarkedCurveData {
    pub name: Option<String>,
    pub form: QForm,
    pub involution: QMat3,
    pub c0: [BigRational; 3],
    pub cinf: [BigRational; 3],
    pub n: u32,
    pub fixed_points: Vec<FixedPoint>,
    pub known: Vec<KnownDivisor>,
    pub assumption_rank_zero: bool,
    pub metadata: Value,
    digest: String,
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::InvalidInput(format!("missing field '{key}'")))
}

fn rational_point(v: &Value, at: &str) -> Result<[BigRational; 3]> {
    let arr = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::InvalidInput(format!("{at}: expected 3 coordinates")))?;
    let pt: [BigRational; 3] = [
        parse_rational(&arr[0], at)?,
        parse_rational(&arr[1], at)?,
        parse_rational(&arr[2], at)?,
    ];
    if pt.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput(format!("{at}: zero vector")));
    }
    Ok(pt)
}

fn quad_point(v: &Value, at: &str) -> Result<[QuadElem; 3]> {
    let arr = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::InvalidInput(format!("{at}: expected 3 coordinates")))?;
    let mut out: [QuadElem; 3] = std::array::from_fn(|_| QuadElem::rational(BigRational::zero()));
    for i in 0..3 {
        out[i] = match &arr[i] {
            Value::Array(ab) if ab.len() == 2 => {
                QuadElem { a: parse_rational(&ab[0], at)?, b: parse_rational(&ab[1], at)? }
            }
            Value::Array(_) => return Err(Error::InvalidInput(format!("{at}: expected [a, b] for a + b*sqrt(d)"))),
            other => QuadElem::rational(parse_rational(other, at)?),
        };
    }
    if out.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput(format!("{at}: zero vector")));
    }
    Ok(out)
}

fn rational_proportional(u: &[BigRational; 3], v: &[BigRational; 3]) -> bool {
    (0..3).all(|i| {
        let j = (i + 1) % 3;
        &u[i] * &v[j] == &u[j] * &v[i]
    })
}

fn lift(v: &[BigRational; 3]) -> [QuadElem; 3] {
    std::array::from_fn(|i| QuadElem::rational(v[i].clone()))
}

/// Value of a rational form at a point over Q(√d).
pub fn eval_quad(f: &QForm, v: &[QuadElem; 3], d: i64) -> QuadElem {
    let mut acc = QuadElem::rational(BigRational::zero());
    for (m, c) in f.terms() {
        let mut t = QuadElem::rational(c.clone());
        for i in 0..3 {
            for _ in 0..m[i] {
                t = t.mul(&v[i], d);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

impl KnownDivisor {
    /// Geometric points with the quadratic parameter they live over (1 for rational).
    fn points(&self) -> (i64, Vec<[QuadElem; 3]>) {
        match &self.shape {
            KnownShape::Rational(pts) => (1, pts.iter().map(lift).collect()),
            KnownShape::Quadratic { d, point } => (*d, vec![point.clone(), point.clone().map(|c| c.conj())]),
        }
    }

    fn same_as(&self, d: i64, pts: &[[QuadElem; 3]]) -> bool {
        let (d2, mine) = self.points();
        if d != d2 || pts.len() != mine.len() {
            return false;
        }
        let direct = proportional(&mine[0], &pts[0], d) && proportional(&mine[1], &pts[1], d);
        let swapped = proportional(&mine[0], &pts[1], d) && proportional(&mine[1], &pts[0], d);
        direct || swapped
    }
}

impl MarkedCurveData {
    pub fn from_json(v: &Value) -> Result<Self> {
        let degree = field(v, "degree")?
            .as_u64()
            .filter(|&d| (1..=12).contains(&d))
            .ok_or_else(|| Error::InvalidInput("degree: expected an integer in 1..=12".into()))? as u32;
        let form = QForm::from_json(degree, field(v, "coeffs")?)?;
        let involution = QMat3::from_json(field(v, "involution")?)?;
        let marked = field(v, "marked_points")?;
        let c0 = rational_point(field(marked, "c0")?, "marked_points.c0")?;
        let cinf = rational_point(field(marked, "cinf")?, "marked_points.cinf")?;
        let n = field(v, "torsion_order")?
            .as_u64()
            .filter(|&n| n >= 1 && n <= 1000)
            .ok_or_else(|| Error::InvalidInput("torsion_order: expected a positive integer".into()))? as u32;
        let mut fixed_points = vec![];
        if let Some(fps) = marked.get("fixed_points") {
            let arr = fps.as_array().ok_or_else(|| Error::InvalidInput("marked_points.fixed_points: expected a list".into()))?;
            for (i, fp) in arr.iter().enumerate() {
                let at = format!("marked_points.fixed_points[{i}]");
                fixed_points.push(parse_fixed_point(fp, &at)?);
            }
        }
        let mut known = vec![];
        if let Some(kd) = v.get("known_divisors") {
            let arr = kd.as_array().ok_or_else(|| Error::InvalidInput("known_divisors: expected a list".into()))?;
            for (i, k) in arr.iter().enumerate() {
                known.push(parse_known(k, &format!("known_divisors[{i}]"))?);
            }
        }
        let mut labels: Vec<&str> = known.iter().map(|k| k.label.as_str()).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("known_divisors: duplicate label".into()));
        }
        let assumption_rank_zero = v.get("assumption_rank_zero").and_then(Value::as_bool).unwrap_or(false);
        let name = v.get("name").and_then(Value::as_str).map(str::to_string);
        let metadata = v.get("metadata").cloned().unwrap_or(Value::Null);
        let canonical = serde_json::to_string(v).expect("serializable");
        let digest = hex::encode(Sha256::digest(canonical.as_bytes()));
        let data = MarkedCurveData {
            name,
            form,
            involution,
            c0,
            cinf,
            n,
            fixed_points,
            known,
            assumption_rank_zero,
            metadata,
            digest,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("curve JSON: {e}")))?;
        Self::from_json(&v)
    }

    /// SHA-256 of the canonical serialization of the input document.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn known(&self, label: &str) -> Option<&KnownDivisor> {
        self.known.iter().find(|k| k.label == label)
    }

    fn validate(&self) -> Result<()> {
        validate_involution_q(&self.involution, &self.form)?;
        let on = |pt: &[BigRational; 3], what: &str| -> Result<()> {
            if self.form.eval(pt).is_zero() {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("{what}: point is not on the curve")))
            }
        };
        on(&self.c0, "marked_points.c0")?;
        on(&self.cinf, "marked_points.cinf")?;
        if rational_proportional(&self.c0, &self.cinf) {
            return Err(Error::InvalidInput("marked_points: c0 and cinf coincide".into()));
        }
        let m = &self.involution;
        if !rational_proportional(&m.apply(&self.c0), &self.cinf) || !rational_proportional(&m.apply(&self.cinf), &self.c0) {
            return Err(Error::InvalidInput("involution does not swap c0 and cinf".into()));
        }
        for fp in self.fixed_points.iter().filter(|f| f.is_rational()) {
            let pt: [BigRational; 3] = std::array::from_fn(|i| fp.coords[i].first().cloned().unwrap_or_else(BigRational::zero));
            on(&pt, &format!("fixed point {}", fp.label))?;
            if !rational_proportional(&m.apply(&pt), &pt) {
                return Err(Error::InvalidInput(format!("fixed point {}: not fixed by the involution", fp.label)));
            }
        }
        for k in &self.known {
            let (d, pts) = k.points();
            for pt in &pts {
                if !eval_quad(&self.form, pt, d).is_zero() {
                    return Err(Error::InvalidInput(format!("known divisor {}: point is not on the curve", k.label)));
                }
            }
            let image: Vec<[QuadElem; 3]> = pts.iter().map(|pt| apply(m, pt)).collect();
            if !self.known.iter().any(|o| o.same_as(d, &image)) {
                return Err(Error::InvalidInput(format!(
                    "known divisors are not involution-stable: image of {} is missing",
                    k.label
                )));
            }
        }
        Ok(())
    }
}

fn parse_fixed_point(v: &Value, at: &str) -> Result<FixedPoint> {
    let label = v.get("label").and_then(Value::as_str).unwrap_or("").to_string();
    let field = match v.get("field") {
        None | Some(Value::Null) => None,
        Some(f) => {
            let cs: Vec<i64> = f
                .as_array()
                .and_then(|a| a.iter().map(Value::as_i64).collect())
                .ok_or_else(|| Error::InvalidInput(format!("{at}.field: expected integer coefficients")))?;
            let poly = UnivariatePolynomial::new(cs);
            if poly.degree().unwrap_or(0) < 1 || poly.leading() != 1 {
                return Err(Error::InvalidInput(format!("{at}.field: expected a monic polynomial of positive degree")));
            }
            Some(poly)
        }
    };
    let coords = field_of(v, "coords", at)?
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::InvalidInput(format!("{at}.coords: expected 3 coordinates")))?;
    let mut out: [Vec<BigRational>; 3] = Default::default();
    for i in 0..3 {
        out[i] = match &coords[i] {
            Value::Array(cs) => cs.iter().map(|c| parse_rational(c, at)).collect::<Result<_>>()?,
            other => vec![parse_rational(other, at)?],
        };
        if field.is_none() && out[i].len() > 1 {
            return Err(Error::InvalidInput(format!("{at}.coords: power-basis coordinates need a field")));
        }
    }
    Ok(FixedPoint { label, field, coords: out })
}

fn field_of<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::InvalidInput(format!("{at}: missing field '{key}'")))
}

fn parse_known(v: &Value, at: &str) -> Result<KnownDivisor> {
    let label = field_of(v, "label", at)?
        .as_str()
        .ok_or_else(|| Error::InvalidInput(format!("{at}.label: expected a string")))?
        .to_string();
    let shape = if let Some(d) = v.get("d") {
        let d = d.as_i64().ok_or_else(|| Error::InvalidInput(format!("{at}.d: expected an integer")))?;
        if d == 1 || d == 0 || !is_squarefree(d) {
            return Err(Error::InvalidInput(format!("{at}.d: expected a squarefree integer other than 0, 1")));
        }
        KnownShape::Quadratic { d, point: quad_point(field_of(v, "point", at)?, &format!("{at}.point"))? }
    } else {
        let pts = field_of(v, "points", at)?
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidInput(format!("{at}.points: expected two points")))?;
        KnownShape::Rational([
            rational_point(&pts[0], &format!("{at}.points[0]"))?,
            rational_point(&pts[1], &format!("{at}.points[1]"))?,
        ])
    };
    Ok(KnownDivisor { label, shape })
}

/// Per-prime labels of known divisors certified lonely elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LonelyCertificates {
    pub by_prime: BTreeMap<u64, Vec<String>>,
}

impl LonelyCertificates {
    /// Parses `{"3": ["label", ...], ...}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidInput("certificates: expected an object keyed by prime".into()))?;
        let mut by_prime = BTreeMap::new();
        for (k, labels) in obj {
            let p: u64 = k.parse().map_err(|_| Error::InvalidInput(format!("certificates: key '{k}' is not a prime")))?;
            let ls: Vec<String> = labels
                .as_array()
                .and_then(|a| a.iter().map(|l| l.as_str().map(str::to_string)).collect())
                .ok_or_else(|| Error::InvalidInput(format!("certificates.{k}: expected a list of labels")))?;
            by_prime.insert(p, ls);
        }
        Ok(LonelyCertificates { by_prime })
    }

    pub fn labels(&self, p: u64) -> &[String] {
        self.by_prime.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn check_labels(&self, data: &MarkedCurveData) -> Result<()> {
        for labels in self.by_prime.values() {
            for l in labels {
                if data.known(l).is_none() {
                    return Err(Error::UnknownLabel(l.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Just the plane model and optional involution of a curve document.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub name: Option<String>,
    pub form: QForm,
    pub involution: Option<QMat3>,
    digest: String,
}

impl CurveSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        let degree = field(v, "degree")?
            .as_u64()
            .filter(|&d| (1..=12).contains(&d))
            .ok_or_else(|| Error::InvalidInput("degree: expected an integer in 1..=12".into()))? as u32;
        let form = QForm::from_json(degree, field(v, "coeffs")?)?;
        let involution = match v.get("involution") {
            None | Some(Value::Null) => None,
            Some(m) => Some(QMat3::from_json(m)?),
        };
        let canonical = serde_json::to_string(v).expect("serializable");
        Ok(CurveSpec {
            name: v.get("name").and_then(Value::as_str).map(str::to_string),
            form,
            involution,
            digest: hex::encode(Sha256::digest(canonical.as_bytes())),
        })
    }

    pub fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("curve JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }
}
