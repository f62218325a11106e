use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// Polynomial equations `equations[i] = 0` in the ordered `unknowns`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<MultiPoly>,
}

/// `{"unknowns": [...], "equations": ["coeff*sym^k*...", ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolySystemJson {
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
}

impl PolySystem {
    pub fn new(unknowns: Vec<String>, equations: Vec<MultiPoly>) -> Result<Self> {
        let equations = equations.into_iter().map(|e| e.with_vars(&unknowns)).collect::<Result<Vec<_>>>()?;
        Ok(PolySystem { unknowns, equations })
    }

    /// Evaluate every equation at `assignment`.
    pub fn residuals(&self, assignment: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
        if let Some(missing) = self.unknowns.iter().find(|u| !assignment.contains_key(*u)) {
            return Err(Error::MissingBinding(missing.clone()));
        }
        self.equations.iter().map(|e| e.eval_rational(assignment)).collect()
    }

    pub fn is_solution(&self, assignment: &BTreeMap<String, Rational>) -> bool {
        self.residuals(assignment).is_ok_and(|r| r.iter().all(Rational::is_zero))
    }

    pub fn to_json(&self) -> PolySystemJson {
        PolySystemJson {
            unknowns: self.unknowns.clone(),
            equations: self.equations.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(j: &PolySystemJson) -> Result<Self> {
        let equations = j
            .equations
            .iter()
            .map(|s| MultiPoly::parse(s, &j.unknowns).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(j.unknowns.clone(), equations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_residuals() {
        let text = r#"{"unknowns":["u","a"],"equations":["-u + 1","-u*a + 1"]}"#;
        let j: PolySystemJson = serde_json::from_str(text).unwrap();
        let sys = PolySystem::from_json(&j).unwrap();
        assert_eq!(serde_json::to_string(&sys.to_json()).unwrap(), text);
        let a: BTreeMap<String, Rational> = [("u".into(), Rational::from(0)), ("a".into(), Rational::from(0))].into();
        assert_eq!(sys.residuals(&a).unwrap(), vec![Rational::from(1), Rational::from(1)]);
        let partial: BTreeMap<String, Rational> = [("u".into(), Rational::from(1))].into();
        assert_eq!(sys.residuals(&partial), Err(Error::MissingBinding("a".into())));
    }
}
