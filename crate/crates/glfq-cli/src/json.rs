//! The `--json` schema. Rationals are strings "a/b" (or "a"), polypartitions
//! use the canonical text form, so every document parses back exactly.

use std::collections::BTreeMap;

use glfq_core::center::{CentralVector, FhReport, GenericProduct, StructPoly};
use glfq_core::conjtype::Polypartition;
use glfq_core::error::{Error, Result};
use glfq_core::field::Field;
use glfq_core::rational::{fmt_q, parse_q, Q};
use serde::{Deserialize, Serialize};

fn rat(s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational '{s}'")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub nu: String,
    pub coeff: String,
}

fn terms(f: &Field, m: &BTreeMap<Polypartition, Q>) -> Vec<Term> {
    m.iter().map(|(nu, c)| Term { nu: nu.to_string(f), coeff: fmt_q(c) }).collect()
}

fn parse_terms(f: &Field, t: &[Term]) -> Result<BTreeMap<Polypartition, Q>> {
    t.iter().map(|t| Ok((Polypartition::parse(f, &t.nu)?, rat(&t.coeff)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralVectorJson {
    pub q: u32,
    pub n: usize,
    pub terms: Vec<Term>,
}

impl CentralVectorJson {
    pub fn from_core(f: &Field, v: &CentralVector) -> Self {
        CentralVectorJson { q: v.q, n: v.n, terms: terms(f, &v.coeffs) }
    }
    pub fn to_core(&self, f: &Field) -> Result<CentralVector> {
        Ok(CentralVector { n: self.n, q: self.q, coeffs: parse_terms(f, &self.terms)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructPolyJson {
    pub nu: String,
    /// Coefficients of 1, X, X², ... with X = q^n.
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub n: Vec<usize>,
    pub evaluations: usize,
    pub pass: bool,
    pub mismatches: Vec<String>,
}

impl VerificationJson {
    pub fn from_core(r: &FhReport) -> Self {
        VerificationJson { n: r.checked.clone(), evaluations: r.evaluations, pass: r.ok(), mismatches: r.mismatches.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericProductJson {
    pub q: u32,
    pub lambda: String,
    pub mu: String,
    /// Generic structure constants S^ν of Â_λ * Â_μ.
    pub s: Vec<Term>,
    pub polynomials: Vec<StructPolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationJson>,
}

impl GenericProductJson {
    pub fn from_core(f: &Field, gp: &GenericProduct) -> Self {
        GenericProductJson {
            q: gp.q,
            lambda: gp.lhs.0.to_string(f),
            mu: gp.lhs.1.to_string(f),
            s: terms(f, &gp.s),
            polynomials: gp
                .rhs
                .iter()
                .map(|(nu, p)| StructPolyJson { nu: nu.to_string(f), coeffs: p.coeffs().iter().map(fmt_q).collect() })
                .collect(),
            verification: None,
        }
    }
    pub fn to_core(&self, f: &Field) -> Result<GenericProduct> {
        let mut rhs = BTreeMap::new();
        for p in &self.polynomials {
            let c: Result<Vec<Q>> = p.coeffs.iter().map(|s| rat(s)).collect();
            rhs.insert(Polypartition::parse(f, &p.nu)?, StructPoly(c?));
        }
        Ok(GenericProduct {
            q: self.q,
            lhs: (Polypartition::parse(f, &self.lambda)?, Polypartition::parse(f, &self.mu)?),
            rhs,
            s: parse_terms(f, &self.s)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeJson {
    pub q: u32,
    pub matrix: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSizeJson {
    pub q: u32,
    pub n: usize,
    #[serde(rename = "type")]
    pub ty: String,
    pub class_size: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    #[serde(rename = "type")]
    pub ty: String,
    pub count: u64,
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub q: u32,
    pub n: usize,
    pub order: String,
    pub rows: Vec<CensusRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree1Json {
    pub q: u32,
    pub a: String,
    pub b: String,
    pub case: String,
    /// Â_{X-a} * Â_{X-b} in the Â basis.
    pub product: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<CentralVectorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub quantity: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteJson {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}
