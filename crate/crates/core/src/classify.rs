//! Machine-readable classification report for a single `P(p,q)`.

use crate::alexander::{alex_poly, torsion_coeffs};
use crate::dtype::{dtype_from_pq, PrismParams};
use crate::embed::realizable;
use crate::error::{Error, Result};
use crate::families::pneg_membership;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub r: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlexanderReport {
    pub sigma: Vec<i64>,
    pub q_abs: i64,
    pub torsion: Vec<i64>,
    pub b0: i64,
    pub higher: Vec<i64>,
    pub poly: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub p: i64,
    pub q: i64,
    pub dtype_norms: Vec<i64>,
    pub realizable: bool,
    pub changemakers: Vec<Vec<i64>>,
    pub families: Vec<FamilyReport>,
    pub alexander: Vec<AlexanderReport>,
}

/// Full realization report: lattice norms, the changemakers realizing it,
/// family memberships, and the Alexander data forced by each changemaker.
pub fn classify(pp: &PrismParams) -> Result<ClassifyReport> {
    if pp.q() >= 0 {
        return Err(Error::InvalidInput(
            "classification requires q < 0".into(),
        ));
    }
    if pp.p() % 2 == 0 {
        return Err(Error::InvalidInput(
            "p must be odd for surgery realization".into(),
        ));
    }
    let lat = dtype_from_pq(pp)?;
    let cms = realizable(pp)?;
    let families = pneg_membership(pp)?
        .into_iter()
        .map(|i| FamilyReport {
            family: i.tag.label().to_string(),
            r: i.r,
        })
        .collect();
    let mut alexander = Vec::new();
    for cm in &cms {
        let t = torsion_coeffs(cm)?;
        let poly = alex_poly(&t);
        alexander.push(AlexanderReport {
            sigma: cm.sigma().to_vec(),
            q_abs: t.q_abs,
            torsion: t.values.clone(),
            b0: poly.b0,
            higher: poly.higher.clone(),
            poly: poly.display(),
        });
    }
    Ok(ClassifyReport {
        p: pp.p(),
        q: pp.q(),
        dtype_norms: lat.norms().to_vec(),
        realizable: !cms.is_empty(),
        changemakers: cms.iter().map(|c| c.sigma().to_vec()).collect(),
        families,
        alexander,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_p3_q2() {
        let report = classify(&PrismParams::new(3, -2).unwrap()).unwrap();
        assert!(report.realizable);
        assert_eq!(report.dtype_norms, vec![2, 3]);
        assert_eq!(report.changemakers, vec![vec![1, 1, 1, 1, 2]]);
        assert_eq!(report.alexander.len(), 1);
        assert_eq!(report.alexander[0].poly, "T-1+T^-1");
        assert!(report.families.iter().any(|f| f.family == "5" && f.r == Some(-1)));
    }

    #[test]
    fn classify_rejects_bad_domain() {
        assert!(classify(&PrismParams::new(3, 2).unwrap()).is_err());
        assert!(classify(&PrismParams::new(4, -3).unwrap()).is_err());
    }
}
