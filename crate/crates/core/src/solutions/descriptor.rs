use std::f64::consts::E;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::psi::PsiFn;
use super::tri::{Case, CaseId, TriSolution};
use crate::dsl::{Expr, PSI_VARS, TRIPLE_VARS};
use crate::error::{Error, Result};
use crate::family::{LogFn, MultFn};

fn natural_base() -> f64 {
    E
}

/// JSON form of a [`PsiFn`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiSpec {
    Const {
        value: f64,
    },
    Linear {
        a: Vec<f64>,
    },
    NegXLogX {
        #[serde(default = "natural_base")]
        base: f64,
    },
    Expr {
        expr: String,
    },
}

impl PsiSpec {
    pub fn build(&self, k: usize) -> Result<PsiFn> {
        let psi = match self {
            PsiSpec::Const { value } => PsiFn::Const(*value),
            PsiSpec::Linear { a } => PsiFn::Linear(a.clone()),
            PsiSpec::NegXLogX { base } => PsiFn::neg_x_log_x_base(*base)?,
            PsiSpec::Expr { expr } => PsiFn::Expr(Expr::parse(expr, k, PSI_VARS)?),
        };
        psi.check_dim(k)?;
        Ok(psi)
    }
}

impl From<&PsiFn> for PsiSpec {
    fn from(psi: &PsiFn) -> Self {
        match psi {
            PsiFn::Const(value) => PsiSpec::Const { value: *value },
            PsiFn::Linear(a) => PsiSpec::Linear { a: a.clone() },
            PsiFn::NegXLogX { base } => PsiSpec::NegXLogX { base: *base },
            PsiFn::Expr(e) => PsiSpec::Expr {
                expr: e.to_string(),
            },
        }
    }
}

/// The JSON unit of exchange between the CLI subcommands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDescriptor {
    pub k: usize,
    pub case: CaseId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<MultFn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<LogFn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<PsiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

fn missing(case: CaseId, field: &str) -> Error {
    Error::invalid(format!("case {case} needs field {field:?}"))
}

impl SolutionDescriptor {
    fn case(&self) -> Result<Case> {
        let k = self.k;
        let psi = || {
            self.psi
                .as_ref()
                .ok_or_else(|| missing(self.case, "psi"))?
                .build(k)
        };
        let mu = || self.mu.clone().ok_or_else(|| missing(self.case, "mu"));
        let l = || self.l.clone().unwrap_or_else(|| LogFn::natural(k));
        Ok(match self.case {
            CaseId::Projection => Case::Projection {
                mu: mu()?,
                l: l(),
                psi: psi()?,
            },
            CaseId::One => Case::One { psi: psi()? },
            CaseId::Other => Case::Other {
                mu: mu()?,
                b: self.b.ok_or_else(|| missing(self.case, "b"))?,
                psi: psi()?,
            },
            CaseId::ZeroMu => Case::ZeroMu { l: l(), psi: psi()? },
            CaseId::Shannon => Case::Shannon {
                base: self.base.unwrap_or(E),
            },
            CaseId::Expr => {
                let src = self.expr.as_deref().ok_or_else(|| missing(self.case, "expr"))?;
                Case::UserExpr {
                    expr: Expr::parse(src, k, TRIPLE_VARS)?,
                    mu: self.mu.clone(),
                }
            }
        })
    }

    /// Builds the solution through the checked constructor.
    pub fn build(&self) -> Result<TriSolution> {
        TriSolution::new(self.k, self.case()?)
    }

    /// Builds the solution with structural validation only, so descriptors
    /// that break the normalization constraint can still be verified.
    pub fn build_unconstrained(&self) -> Result<TriSolution> {
        TriSolution::new_unconstrained(self.k, self.case()?)
    }

    pub fn from_solution(f: &TriSolution) -> Self {
        let mut d = SolutionDescriptor {
            k: f.k(),
            case: f.case_id(),
            mu: None,
            l: None,
            b: None,
            psi: None,
            base: None,
            expr: None,
        };
        match f.case() {
            Case::Projection { mu, l, psi } => {
                d.mu = Some(mu.clone());
                d.l = Some(l.clone());
                d.psi = Some(psi.into());
            }
            Case::One { psi } => d.psi = Some(psi.into()),
            Case::Other { mu, b, psi } => {
                d.mu = Some(mu.clone());
                d.b = Some(*b);
                d.psi = Some(psi.into());
            }
            Case::ZeroMu { l, psi } => {
                d.l = Some(l.clone());
                d.psi = Some(psi.into());
            }
            Case::Shannon { base } => d.base = Some(*base),
            Case::UserExpr { expr, mu } => {
                d.expr = Some(expr.to_string());
                d.mu = mu.clone();
            }
        }
        d
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad descriptor: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl TriSolution {
    pub fn to_descriptor(&self) -> SolutionDescriptor {
        SolutionDescriptor::from_solution(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_every_case() {
        let sols = [
            TriSolution::shannon(2.0).unwrap(),
            TriSolution::one(1, PsiFn::expr("ln(s[0])", 1).unwrap()).unwrap(),
            TriSolution::other(2, MultFn::power(vec![2.0, 0.5]).unwrap(), 1.5, PsiFn::Const(-1.5))
                .unwrap(),
            TriSolution::projection(
                2,
                MultFn::coordinate(2, 1).unwrap(),
                LogFn::new(vec![1.0, -3.0]).unwrap(),
                PsiFn::Linear(vec![2.0, -2.0]),
            )
            .unwrap(),
            TriSolution::zero_mu(1, LogFn::natural(1), PsiFn::neg_x_log_x()).unwrap(),
            TriSolution::user_expr(1, "x[0]*y[0]*z[0]", Some(MultFn::identity())).unwrap(),
        ];
        for f in sols {
            let json = f.to_descriptor().to_json();
            let back = SolutionDescriptor::from_json(&json).unwrap().build().unwrap();
            assert_eq!(back, f, "{json}");
        }
    }

    #[test]
    fn wire_shape() {
        let d = SolutionDescriptor::from_json(
            r#"{"k":1,"case":"other","mu":{"kind":"power","alpha":[3.0]},"b":2.0,
                "psi":{"kind":"const","value":-2.0}}"#,
        )
        .unwrap();
        assert!(d.build().is_ok());
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["case"], "other");
        assert_eq!(v["psi"]["kind"], "const");
        assert!(v.get("expr").is_none());
        let d = SolutionDescriptor::from_json(r#"{"k":1,"case":"shannon"}"#).unwrap();
        assert_eq!(d.build().unwrap(), TriSolution::shannon(E).unwrap());
    }

    #[test]
    fn unconstrained_loading_keeps_broken_psi() {
        let d = SolutionDescriptor::from_json(
            r#"{"k":1,"case":"one","psi":{"kind":"expr","expr":"s[0]"}}"#,
        )
        .unwrap();
        assert!(matches!(d.build().unwrap_err(), Error::Normalization(_)));
        assert!(d.build_unconstrained().is_ok());
    }

    #[test]
    fn missing_fields() {
        let d = SolutionDescriptor::from_json(r#"{"k":1,"case":"other","b":1.0}"#).unwrap();
        assert!(d.build().unwrap_err().to_string().contains("\"mu\""));
        assert!(SolutionDescriptor::from_json(r#"{"k":1,"case":"bogus"}"#).is_err());
    }
}
