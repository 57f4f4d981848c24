//! Surface spec files (TOML).
//!
//! ```toml
//! name = "example"
//! k = 2                      # optional: multiplicity of the eigenvalue q known in advance
//! gram = [[2, 1], [1, -2]]   # optional intersection matrix
//!
//! [[f6]]
//! exps = [6, 0, 0]
//! coeff = "1"
//!
//! [[external_counts]]
//! p = 5
//! d = 7
//! n = "6103312501"
//!
//! [[conics]]                 # f6 = c q3^2 + q2 q4
//! c = "1"
//! q3 = "x^3 + y^3"
//! q2 = "x*z"
//! q4 = "..."
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use picard_core::forms::{parse_int_form, IntForm, Integers};
use picard_core::geom::ConicCert;
use picard_core::lattice::{GramMatrix, IntMatrix};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer, written as a decimal string and read from a
/// string or a TOML integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decimal(pub BigInt);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Decimal;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a decimal integer or a string holding one")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Decimal, E> {
                Ok(Decimal(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Decimal, E> {
                Ok(Decimal(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Decimal, E> {
                BigInt::from_str(v.trim()).map(Decimal).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<i64> for Decimal {
    fn from(v: i64) -> Self {
        Decimal(v.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exps: [u32; 3],
    pub coeff: Decimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalCount {
    pub p: u64,
    pub d: u32,
    pub n: Decimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicSpec {
    pub c: Decimal,
    pub q3: String,
    pub q2: String,
    pub q4: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Decimal>>>,
    pub f6: Vec<Term>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub external_counts: Vec<ExternalCount>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conics: Vec<ConicSpec>,
}

impl SurfaceSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: SurfaceSpec = toml::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Spec(m) => Error::Spec(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Spec(e.to_string()))
    }

    /// A spec holding `f6` term by term, in canonical order.
    pub fn from_form(name: &str, f6: &IntForm) -> Self {
        let f6 = f6.sorted_terms().into_iter().map(|(m, c)| Term { exps: m, coeff: Decimal(c) }).collect();
        SurfaceSpec { name: name.into(), k: None, gram: None, f6, external_counts: vec![], conics: vec![] }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for t in &self.f6 {
            if t.exps.iter().sum::<u32>() != 6 {
                return Err(Error::Spec(format!("monomial {:?} does not have degree 6", t.exps)));
            }
            if !seen.insert(t.exps) {
                return Err(Error::Spec(format!("monomial {:?} listed twice", t.exps)));
            }
        }
        if self.f6().is_zero() {
            return Err(Error::Spec("f6 is zero".into()));
        }
        if let Some(k) = self.k {
            if k > 22 || k % 2 != 0 {
                return Err(Error::Spec(format!("k = {k} must be even and at most 22")));
            }
        }
        let mut ext = BTreeSet::new();
        for e in &self.external_counts {
            if e.d == 0 || !ext.insert((e.p, e.d)) {
                return Err(Error::Spec(format!("external count p = {}, d = {} is invalid or repeated", e.p, e.d)));
            }
            if e.n.0.sign() == num_bigint::Sign::Minus {
                return Err(Error::Spec(format!("external count for d = {} is negative", e.d)));
            }
        }
        self.conic_certs()?;
        self.gram_matrix()?;
        Ok(())
    }

    pub fn f6(&self) -> IntForm {
        IntForm::from_terms(Integers, 6, self.f6.iter().map(|t| (t.exps, t.coeff.0.clone())))
            .expect("degrees checked in validate")
    }

    /// External counts for one prime, keyed by `d`.
    pub fn external(&self, p: u64) -> BTreeMap<u32, BigUint> {
        self.external_counts.iter().filter(|e| e.p == p).filter_map(|e| e.n.0.to_biguint().map(|n| (e.d, n))).collect()
    }

    pub fn conic_certs(&self) -> Result<Vec<ConicCert>> {
        let parse = |s: &str, deg: u32| -> Result<IntForm> {
            let f = parse_int_form(s, deg).map_err(|e| Error::Spec(format!("conic form {s:?}: {e}")))?;
            if f.degree() != deg {
                return Err(Error::Spec(format!("conic form {s:?} should have degree {deg}")));
            }
            Ok(f)
        };
        self.conics
            .iter()
            .map(|c| {
                Ok(ConicCert { c: c.c.0.clone(), q3: parse(&c.q3, 3)?, q2: parse(&c.q2, 2)?, q4: parse(&c.q4, 4)? })
            })
            .collect()
    }

    pub fn gram_matrix(&self) -> Result<Option<GramMatrix>> {
        let Some(rows) = &self.gram else {
            return Ok(None);
        };
        let m = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|d| d.0.clone()).collect()).collect())
            .map_err(|e| Error::Spec(format!("gram: {e}")))?;
        GramMatrix::new(m).map(Some).map_err(|e| Error::Spec(format!("gram: {e}")))
    }
}
