use super::effective::EffectiveDivisor;
use super::lineq::{default_aux_cap, equiv_with_residual, lin_equiv, reduce, residual, Residual};
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Place, PlaneCurve};

/// Cyclic torsion generated by [c0 - cinf], reduced to F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionModel {
    pub n: u32,
    pub c0: Place,
    pub cinf: Place,
}

/// Residues in the order they are tried: 0, 1, n-1, 2, n-2, ...
pub fn residue_order(n: u32) -> Vec<u32> {
    let mut out = vec![0];
    let mut k = 1;
    while out.len() < n as usize {
        out.push(k);
        if out.len() < n as usize && n - k != k {
            out.push(n - k);
        }
        k += 1;
    }
    out
}

/// Reduced representatives E_m ~ g*cinf + m(c0 - cinf) of every class, with cached residuals.
#[derive(Clone, Debug)]
pub struct TorsionTable {
    model: TorsionModel,
    d0: EffectiveDivisor,
    reps: Vec<EffectiveDivisor>,
    residuals: Vec<Residual>,
}

impl TorsionTable {
    pub fn build(curve: &PlaneCurve, model: &TorsionModel) -> Result<Self> {
        if model.c0 == model.cinf {
            return Err(Error::CuspsCollide);
        }
        if model.n == 0 {
            return Err(Error::InvalidInput("torsion order must be positive".into()));
        }
        let g = curve.genus();
        let c0 = EffectiveDivisor::place(model.c0, 1);
        let cinf = EffectiveDivisor::place(model.cinf, 1);
        let d0 = cinf.scaled(g);
        let mut reps = vec![d0.clone()];
        for m in 1..=model.n as usize {
            let next = reduce(curve, &reps[m - 1].add(&c0), &cinf)?;
            reps.push(next);
        }
        let cap = default_aux_cap(curve.degree(), g as u64);
        let residuals: Vec<Residual> = reps.iter().map(|e| residual(curve, e, cap)).collect::<Result<_>>()?;
        if equiv_with_residual(curve, &reps[model.n as usize], &residuals[0])?.is_none() {
            return Err(Error::TorsionOrderMismatch(model.n));
        }
        for m in 1..model.n as usize {
            if equiv_with_residual(curve, &reps[m], &residuals[0])?.is_some() {
                return Err(Error::MultipleMatches(vec![0, m as u32]));
            }
        }
        reps.truncate(model.n as usize);
        let mut residuals = residuals;
        residuals.truncate(model.n as usize);
        Ok(TorsionTable { model: model.clone(), d0, reps, residuals })
    }

    pub fn model(&self) -> &TorsionModel {
        &self.model
    }

    pub fn representative(&self, m: u32) -> &EffectiveDivisor {
        &self.reps[m as usize]
    }

    /// The residue m with Q - w(Q) ~ m(c0 - cinf), if any.
    pub fn class_match(&self, curve: &PlaneCurve, q: &EffectiveDivisor, w: &Mat3) -> Result<Option<u32>> {
        let wq = q.image(curve, w)?;
        if *q == wq {
            return Ok(Some(0));
        }
        let u = reduce(curve, &q.add(&self.d0), &wq)?;
        for m in residue_order(self.model.n) {
            if equiv_with_residual(curve, &u, &self.residuals[m as usize])?.is_some() {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Tests every residue and fails on more than one match.
    pub fn class_match_exhaustive(&self, curve: &PlaneCurve, q: &EffectiveDivisor, w: &Mat3) -> Result<Option<u32>> {
        let wq = q.image(curve, w)?;
        let u = reduce(curve, &q.add(&self.d0), &wq)?;
        let mut hits = vec![];
        for m in 0..self.model.n {
            if equiv_with_residual(curve, &u, &self.residuals[m as usize])?.is_some() {
                hits.push(m);
            }
        }
        match hits.len() {
            0 => Ok(None),
            1 => Ok(Some(hits[0])),
            _ => Err(Error::MultipleMatches(hits)),
        }
    }
}

/// Class matching by direct equivalence tests Q + m*cinf ~ w(Q) + m*c0, without reduced representatives.
pub fn class_match_direct(
    curve: &PlaneCurve,
    q: &EffectiveDivisor,
    w: &Mat3,
    model: &TorsionModel,
) -> Result<Option<u32>> {
    if model.c0 == model.cinf {
        return Err(Error::CuspsCollide);
    }
    let wq = q.image(curve, w)?;
    let mut hits = vec![];
    for m in 0..model.n {
        let a = q.add(&EffectiveDivisor::place(model.cinf, m));
        let b = wq.add(&EffectiveDivisor::place(model.c0, m));
        if lin_equiv(curve, &a, &b)?.0 {
            hits.push(m);
        }
    }
    match hits.len() {
        0 => Ok(None),
        1 => Ok(Some(hits[0])),
        _ => Err(Error::MultipleMatches(hits)),
    }
}

/// Builds the table and matches a single divisor.
pub fn class_match(
    curve: &PlaneCurve,
    q: &EffectiveDivisor,
    w: &Mat3,
    model: &TorsionModel,
) -> Result<Option<u32>> {
    TorsionTable::build(curve, model)?.class_match(curve, q, w)
}

#[cfg(test)]
mod tests {
    use super::residue_order;

    #[test]
    fn residue_order_is_a_permutation() {
        assert_eq!(residue_order(1), vec![0]);
        assert_eq!(residue_order(2), vec![0, 1]);
        assert_eq!(residue_order(5), vec![0, 1, 4, 2, 3]);
        let mut r = residue_order(27);
        assert_eq!(&r[..5], &[0, 1, 26, 2, 25]);
        r.sort();
        assert_eq!(r, (0..27).collect::<Vec<_>>());
    }
}
