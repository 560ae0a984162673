//! JSON form of [`RankCertificate`].

use super::rank::{InfeasibleRecord, RankCertificate, Verdict};
use crate::error::{Error, Result};
use crate::exactalg::rat::{fmt_rat, parse_rat};
use crate::exactalg::roots::BoxRepr;
use crate::exactalg::{AlgNum, ComplexBox, NumberField, ProjPoint, Scalar, UniPoly};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A coordinate: a rational as a string, or an algebraic number given by
/// its residue and the defining minimal polynomial (coefficients in
/// ascending degree) with an isolating box for the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordRepr {
    Rational(String),
    Algebraic { residue: Vec<String>, minpoly: Vec<String>, root: BoxRepr },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub point: Vec<CoordRepr>,
    pub verdict: Verdict,
    pub m: Option<usize>,
    pub witnesses: Vec<Vec<CoordRepr>>,
    pub infeasible_patterns: Vec<InfeasibleRecord>,
    pub seed: u64,
    pub budget_spent: u64,
}

fn uni_strings(p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(fmt_rat).collect()
}

fn parse_uni(v: &[String]) -> Result<UniPoly> {
    v.iter()
        .map(|s| parse_rat(s).ok_or_else(|| Error::Invalid(format!("bad rational `{s}`"))))
        .collect::<Result<Vec<_>>>()
        .map(UniPoly::new)
}

pub fn point_repr(p: &ProjPoint) -> Vec<CoordRepr> {
    if let Some(v) = p.primitive_integer() {
        return v.iter().map(|c| CoordRepr::Rational(c.to_string())).collect();
    }
    p.coords()
        .iter()
        .map(|c| match c {
            Scalar::Rat(q) => CoordRepr::Rational(fmt_rat(q)),
            Scalar::Alg(a) => CoordRepr::Algebraic {
                residue: uni_strings(a.residue()),
                minpoly: uni_strings(a.field().minpoly()),
                root: a.field().root_box().to_repr(),
            },
        })
        .collect()
}

/// Rebuilds a point; coordinates given by the same field data share one
/// field.
pub fn point_from_repr(v: &[CoordRepr]) -> Result<ProjPoint> {
    let mut fields: Vec<((Vec<String>, BoxRepr), Arc<NumberField>)> = Vec::new();
    let mut coords = Vec::with_capacity(v.len());
    for c in v {
        coords.push(match c {
            CoordRepr::Rational(s) => {
                Scalar::Rat(parse_rat(s).ok_or_else(|| Error::Invalid(format!("bad rational `{s}`")))?)
            }
            CoordRepr::Algebraic { residue, minpoly, root } => {
                let key = (minpoly.clone(), root.clone());
                let field = match fields.iter().find(|(k, _)| *k == key) {
                    Some((_, f)) => f.clone(),
                    None => {
                        let bx = ComplexBox::from_repr(root).ok_or_else(|| Error::Invalid("bad root box".into()))?;
                        let mp = parse_uni(minpoly)?;
                        if mp.deg() < 1 {
                            return Err(Error::Invalid("minimal polynomial must be nonconstant".into()));
                        }
                        let f = Arc::new(NumberField::new(mp, bx));
                        fields.push((key, f.clone()));
                        f
                    }
                };
                Scalar::Alg(AlgNum::new(field, parse_uni(residue)?)).normalize()
            }
        });
    }
    ProjPoint::new(coords)
}

impl RankCertificate {
    pub fn to_json_value(&self) -> CertificateJson {
        CertificateJson {
            point: point_repr(&self.point),
            verdict: self.verdict,
            m: self.m,
            witnesses: self.witnesses.iter().map(point_repr).collect(),
            infeasible_patterns: self.infeasible_patterns.clone(),
            seed: self.seed,
            budget_spent: self.budget_spent,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: CertificateJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("certificate: {e}")))?;
        Ok(RankCertificate {
            point: point_from_repr(&j.point)?,
            verdict: j.verdict,
            m: j.m,
            witnesses: j.witnesses.iter().map(|w| point_from_repr(w)).collect::<Result<_>>()?,
            infeasible_patterns: j.infeasible_patterns,
            seed: j.seed,
            budget_spent: j.budget_spent,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ideal;
    use crate::rankengine::{hadamard_rank, replay_certificate, RankOptions};

    #[test]
    fn json_round_trip_replays() {
        let c = Ideal::parse(3, &["x0*(x1+x2) + (x1-x2)^2"]).unwrap();
        let o = RankOptions::default();
        let cert = hadamard_rank(&ProjPoint::parse("0:1:-1").unwrap(), &c, &o).unwrap();
        let text = cert.to_json();
        let back = RankCertificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert!(replay_certificate(&back, &c, &o.gb).unwrap().ok);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"]["kind"], "RankEquals");
        assert_eq!(v["point"], serde_json::json!(["0", "1", "-1"]));
    }

    #[test]
    fn algebraic_coordinates_round_trip() {
        let sols = crate::rankengine::solve_affine(&Ideal::parse(2, &["x0^2 - 2", "x1 - x0"]).unwrap(), &Default::default())
            .unwrap();
        let mut coords = sols[0].coords.clone();
        coords.push(Scalar::one());
        let p = ProjPoint::new(coords).unwrap();
        let back = point_from_repr(&point_repr(&p)).unwrap();
        assert!(back.proj_eq(&p));
    }
}
