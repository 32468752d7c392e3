//! JSON exchange formats. Rationals travel as `"p/q"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Chain, ComplexError, Simplex, SimplicialComplex};
use crate::covering::{CoverError, CoveringMap, Section};
use crate::measure::MeasureChain;
use crate::rational::{self, ParseRationalError, Rational};
use crate::seminorm::{Cochain, DualCertificate};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub simplex: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureChainJson {
    pub degree: usize,
    pub masses: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub simplex: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub degree: usize,
    pub values: Vec<ValueJson>,
    pub pairing: String,
    pub sup_norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub total: ComplexJson,
    pub base: ComplexJson,
    pub projection: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionEntryJson {
    pub base: Vec<usize>,
    pub lift: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionJson {
    pub assignment: Vec<SectionEntryJson>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(x: &SimplicialComplex) -> Self {
        ComplexJson { facets: x.facets() }
    }
}

impl TryFrom<&ComplexJson> for SimplicialComplex {
    type Error = ComplexError;

    fn try_from(j: &ComplexJson) -> Result<Self, ComplexError> {
        SimplicialComplex::build(&j.facets)
    }
}

fn terms_to_json(terms: &BTreeMap<Simplex, Rational>) -> Vec<TermJson> {
    terms
        .iter()
        .map(|(s, q)| TermJson { simplex: s.vertices().to_vec(), coeff: rational::to_string(q) })
        .collect()
}

fn terms_from_json(terms: &[TermJson]) -> Result<Vec<(Simplex, Rational)>, FormatError> {
    terms
        .iter()
        .map(|t| Ok((Simplex::new(t.simplex.clone())?, rational::parse(&t.coeff)?)))
        .collect()
}

impl From<&Chain> for ChainJson {
    fn from(c: &Chain) -> Self {
        ChainJson { degree: c.degree(), terms: terms_to_json(c.terms()) }
    }
}

impl TryFrom<&ChainJson> for Chain {
    type Error = FormatError;

    fn try_from(j: &ChainJson) -> Result<Self, FormatError> {
        Ok(Chain::from_terms(j.degree, terms_from_json(&j.terms)?)?)
    }
}

impl From<&MeasureChain> for MeasureChainJson {
    fn from(m: &MeasureChain) -> Self {
        MeasureChainJson { degree: m.degree(), masses: terms_to_json(m.masses()) }
    }
}

impl TryFrom<&MeasureChainJson> for MeasureChain {
    type Error = FormatError;

    fn try_from(j: &MeasureChainJson) -> Result<Self, FormatError> {
        Ok(MeasureChain::from_masses(j.degree, terms_from_json(&j.masses)?)?)
    }
}

impl From<&DualCertificate> for CertificateJson {
    fn from(c: &DualCertificate) -> Self {
        CertificateJson {
            degree: c.cochain.degree(),
            values: c
                .cochain
                .values()
                .iter()
                .map(|(s, q)| ValueJson { simplex: s.vertices().to_vec(), value: rational::to_string(q) })
                .collect(),
            pairing: rational::to_string(&c.pairing),
            sup_norm: rational::to_string(&c.sup_norm),
        }
    }
}

impl CertificateJson {
    /// The cochain carried by the certificate. The recorded pairing and norm are
    /// not trusted; verification recomputes them.
    pub fn cochain(&self) -> Result<Cochain, FormatError> {
        let values = self
            .values
            .iter()
            .map(|v| Ok((Simplex::new(v.simplex.clone())?, rational::parse(&v.value)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Cochain::from_values(self.degree, values)?)
    }
}

impl CoverJson {
    pub fn to_cover(&self) -> Result<CoveringMap, FormatError> {
        let total = SimplicialComplex::try_from(&self.total)?;
        let base = SimplicialComplex::try_from(&self.base)?;
        let projection: BTreeMap<usize, usize> = self.projection.iter().copied().collect();
        Ok(CoveringMap::validate(total, base, projection)?)
    }
}

impl From<&Section> for SectionJson {
    fn from(s: &Section) -> Self {
        SectionJson {
            assignment: s
                .assignment()
                .iter()
                .map(|(b, l)| SectionEntryJson { base: b.vertices().to_vec(), lift: l.vertices().to_vec() })
                .collect(),
        }
    }
}

impl TryFrom<&SectionJson> for Section {
    type Error = FormatError;

    fn try_from(j: &SectionJson) -> Result<Self, FormatError> {
        let mut map = BTreeMap::new();
        for e in &j.assignment {
            map.insert(Simplex::new(e.base.clone())?, Simplex::new(e.lift.clone())?);
        }
        Ok(Section::from_assignment(map))
    }
}
