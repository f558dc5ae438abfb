use serde::{Deserialize, Serialize};

use super::{builtin, HopfAlgebra};
use crate::error::Result;
use crate::exactlin::{BaseScalar, IntMatrix, IntText};

/// Inline JSON form of a Hopf algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfJson {
    pub scalar: BaseScalar,
    pub rank: usize,
    pub mult: Vec<Vec<Vec<IntText>>>,
    pub unit: Vec<IntText>,
    pub comult: IntMatrix,
    pub counit: IntMatrix,
    pub antipode: IntMatrix,
    #[serde(default)]
    pub name: String,
}

/// Either a built-in name (`"mu_2"`) or an inline definition.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HopfRef {
    Name(String),
    Inline(Box<HopfJson>),
}

impl HopfJson {
    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        let wrap = |v: &[num_bigint::BigInt]| v.iter().cloned().map(IntText).collect::<Vec<_>>();
        HopfJson {
            scalar: h.scalar(),
            rank: h.rank(),
            mult: h
                .mult_tensor()
                .iter()
                .map(|row| row.iter().map(|v| wrap(v)).collect())
                .collect(),
            unit: wrap(h.unit()),
            comult: h.comult().clone(),
            counit: h.counit().clone(),
            antipode: h.antipode().clone(),
            name: h.name().to_string(),
        }
    }

    pub fn into_hopf(self) -> Result<HopfAlgebra> {
        let unwrap = |v: Vec<IntText>| v.into_iter().map(|x| x.0).collect::<Vec<_>>();
        if self.unit.len() != self.rank {
            return Err(crate::Error::mismatch("unit vector", self.rank, self.unit.len()));
        }
        let name = if self.name.is_empty() { "inline".to_string() } else { self.name };
        HopfAlgebra::from_parts(
            name,
            self.scalar,
            self.mult
                .into_iter()
                .map(|row| row.into_iter().map(unwrap).collect())
                .collect(),
            unwrap(self.unit),
            self.comult,
            self.counit,
            self.antipode,
        )
    }
}

impl HopfRef {
    pub fn resolve(&self) -> Result<HopfAlgebra> {
        match self {
            HopfRef::Name(n) => builtin(n),
            HopfRef::Inline(j) => j.as_ref().clone().into_hopf(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{mu_n, validate_axioms};

    #[test]
    fn inline_round_trip() {
        let h = mu_n(3);
        let text = serde_json::to_string(&HopfJson::from_hopf(&h)).unwrap();
        let back: HopfRef = serde_json::from_str(&text).unwrap();
        let h2 = back.resolve().unwrap();
        assert_eq!(h2, h);
        assert!(validate_axioms(&h2).passed());
        let by_name: HopfRef = serde_json::from_str("\"const_Z2\"").unwrap();
        assert_eq!(by_name.resolve().unwrap().rank(), 2);
    }

    #[test]
    fn unknown_fields_rejected() {
        let mut v = serde_json::to_value(HopfJson::from_hopf(&mu_n(2))).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(serde_json::from_value::<HopfJson>(v).is_err());
    }
}
