//! Finitely supported measure chains.
//!
//! A measure chain of degree `k` is a signed measure on the set of `k`-simplices;
//! only measures with finite support on the simplices of a fixed complex are
//! modelled, so every measure is a finite sum of weighted atoms `a·δ_σ`. The
//! simplicial chain `Σ a_σ σ` embeds as `Σ a_σ δ_σ`.
//!
//! Pushforward along a simplicial map sends the atom `δ_σ` to `±δ_{g(σ)}`, with the
//! sign of the vertex reordering, and drops atoms whose image is degenerate.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{Chain, ComplexError, Simplex, SimplicialComplex, SimplicialMap};
use crate::lp::{self, LinearProgram, LpStatus};
use crate::rational::Rational;
use crate::seminorm::Cochain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("operation undefined in degree {0}")]
    DegreeError(usize),
    #[error("measure chain is not a cycle")]
    NotACycle,
    #[error("function is not a cocycle")]
    NotACocycle,
    #[error("pairing is {0}, expected 1")]
    PairingNotOne(String),
    #[error("simplex {0} is outside the complex")]
    UnknownSimplex(Simplex),
    #[error("function has no value on {0}")]
    NotInDomain(Simplex),
    #[error("solver returned {0:?} on a feasible bounded program")]
    SolverFailure(LpStatus),
}

impl MeasureError {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureError::DegreeMismatch { .. } => "DegreeMismatch",
            MeasureError::DegreeError(_) => "DegreeError",
            MeasureError::NotACycle => "NotACycle",
            MeasureError::NotACocycle => "NotACocycle",
            MeasureError::PairingNotOne(_) => "PairingNotOne",
            MeasureError::UnknownSimplex(_) => "UnknownSimplex",
            MeasureError::NotInDomain(_) => "NotInDomain",
            MeasureError::SolverFailure(_) => "SolverFailure",
        }
    }
}

impl From<ComplexError> for MeasureError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::DegreeMismatch { expected, found } => MeasureError::DegreeMismatch { expected, found },
            ComplexError::DegreeError(k) => MeasureError::DegreeError(k),
            ComplexError::UnknownSimplex(s) => MeasureError::UnknownSimplex(s),
            ComplexError::NotACycle => MeasureError::NotACycle,
            other => unreachable!("no measure counterpart for {other:?}"),
        }
    }
}

/// A signed measure with finite support on `k`-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureChain {
    degree: usize,
    masses: BTreeMap<Simplex, Rational>,
}

impl MeasureChain {
    pub fn zero(degree: usize) -> Self {
        MeasureChain { degree, masses: BTreeMap::new() }
    }

    /// The unit atom `δ_σ`.
    pub fn dirac(s: Simplex) -> Self {
        let degree = s.degree();
        MeasureChain { degree, masses: [(s, Rational::one())].into_iter().collect() }
    }

    pub fn from_masses<I>(degree: usize, masses: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (Simplex, Rational)>,
    {
        let mut m = MeasureChain::zero(degree);
        for (s, a) in masses {
            if s.degree() != degree {
                return Err(ComplexError::DegreeMismatch { expected: degree, found: s.degree() });
            }
            m.add_mass(s, a);
        }
        Ok(m)
    }

    fn add_mass(&mut self, s: Simplex, a: Rational) {
        if a.is_zero() {
            return;
        }
        let slot = self.masses.entry(s.clone()).or_insert_with(Rational::zero);
        *slot += a;
        if slot.is_zero() {
            self.masses.remove(&s);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn masses(&self) -> &BTreeMap<Simplex, Rational> {
        &self.masses
    }

    /// `μ{σ}`.
    pub fn mass(&self, s: &Simplex) -> Rational {
        self.masses.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn plus(&self, other: &MeasureChain) -> MeasureChain {
        assert_eq!(self.degree, other.degree, "adding measure chains of different degrees");
        let mut out = self.clone();
        for (s, a) in &other.masses {
            out.add_mass(s.clone(), a.clone());
        }
        out
    }

    pub fn scaled(&self, q: &Rational) -> MeasureChain {
        let mut out = MeasureChain::zero(self.degree);
        for (s, a) in &self.masses {
            out.add_mass(s.clone(), a * q);
        }
        out
    }
}

/// `i_X`: `Σ a_σ σ ↦ Σ a_σ δ_σ`.
pub fn include_chain(c: &Chain) -> MeasureChain {
    MeasureChain { degree: c.degree(), masses: c.terms().clone() }
}

/// `‖μ‖ = sup_A μ(A) - inf_A μ(A)`. For an atomic measure the supremum is the
/// total positive mass and the infimum the total negative mass.
pub fn total_variation(mu: &MeasureChain) -> Rational {
    let positive: Rational = mu.masses.values().filter(|a| a.is_positive()).cloned().sum();
    let negative: Rational = mu.masses.values().filter(|a| a.is_negative()).cloned().sum();
    positive - negative
}

/// `μ^g(B) = μ(g⁻¹(B))` on atoms.
pub fn pushforward(mu: &MeasureChain, g: &SimplicialMap) -> MeasureChain {
    let mut out = MeasureChain::zero(mu.degree);
    for (s, a) in &mu.masses {
        if let Some((sign, t)) = g.image(s) {
            out.add_mass(t, if sign > 0 { a.clone() } else { -a.clone() });
        }
    }
    out
}

/// `∂_j μ`, the pushforward along `σ ↦ σ∘∂_j` (restriction to the `j`-th face).
pub fn face_pushforward(mu: &MeasureChain, j: usize) -> MeasureChain {
    let mut out = MeasureChain::zero(mu.degree.saturating_sub(1));
    for (s, a) in &mu.masses {
        out.add_mass(s.face(j), a.clone());
    }
    out
}

/// `∂μ = Σ_j (-1)^j ∂_j μ`.
pub fn boundary_measure(mu: &MeasureChain) -> Result<MeasureChain, MeasureError> {
    if mu.degree == 0 {
        return Err(MeasureError::DegreeError(0));
    }
    let mut out = MeasureChain::zero(mu.degree - 1);
    for j in 0..=mu.degree {
        let face = face_pushforward(mu, j);
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        out = out.plus(&face.scaled(&sign));
    }
    Ok(out)
}

/// A bounded function on the `k`-simplices of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFunction {
    degree: usize,
    values: BTreeMap<Simplex, Rational>,
}

impl BoundedFunction {
    /// Extends `values` by zero to every `k`-simplex of `x`; values off the complex are rejected.
    pub fn on_complex<I>(x: &SimplicialComplex, degree: usize, values: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = (Simplex, Rational)>,
    {
        let mut map: BTreeMap<Simplex, Rational> =
            x.simplices(degree).iter().map(|s| (s.clone(), Rational::zero())).collect();
        for (s, q) in values {
            if s.degree() != degree {
                return Err(MeasureError::DegreeMismatch { expected: degree, found: s.degree() });
            }
            match map.get_mut(&s) {
                Some(slot) => *slot = q,
                None => return Err(MeasureError::UnknownSimplex(s)),
            }
        }
        Ok(BoundedFunction { degree, values: map })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<Simplex, Rational> {
        &self.values
    }

    pub fn value(&self, s: &Simplex) -> Option<&Rational> {
        self.values.get(s)
    }

    pub fn sup_norm(&self) -> Rational {
        self.values.values().map(|q| q.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, q: &Rational) -> BoundedFunction {
        BoundedFunction { degree: self.degree, values: self.values.iter().map(|(s, v)| (s.clone(), v * q)).collect() }
    }

    /// `(δf)(σ) = (-1)^{k+1} Σ_j (-1)^j f(σ∘∂_j)` on the `(k+1)`-simplices of `x`.
    pub fn coboundary(&self, x: &SimplicialComplex) -> Result<BoundedFunction, MeasureError> {
        let outer = if (self.degree + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
        let mut values = BTreeMap::new();
        for t in x.simplices(self.degree + 1) {
            let mut acc = Rational::zero();
            for (sign, face) in t.signed_faces() {
                let v = self.values.get(&face).ok_or_else(|| MeasureError::NotInDomain(face.clone()))?;
                if sign > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            values.insert(t.clone(), &outer * acc);
        }
        Ok(BoundedFunction { degree: self.degree + 1, values })
    }

    pub fn is_cocycle(&self, x: &SimplicialComplex) -> Result<bool, MeasureError> {
        Ok(self.coboundary(x)?.values.values().all(Zero::is_zero))
    }
}

/// `⟨f, μ⟩ = ∫ f dμ = Σ_σ f(σ)·μ{σ}`.
pub fn kronecker(f: &BoundedFunction, mu: &MeasureChain) -> Result<Rational, MeasureError> {
    if f.degree != mu.degree {
        return Err(MeasureError::DegreeMismatch { expected: f.degree, found: mu.degree });
    }
    let mut total = Rational::zero();
    for (s, a) in &mu.masses {
        let v = f.values.get(s).ok_or_else(|| MeasureError::NotInDomain(s.clone()))?;
        total += v * a;
    }
    Ok(total)
}

/// `v₂`: the linear extension of `f` to simplicial chains, as a cochain.
pub fn v2_extend(f: &BoundedFunction) -> Cochain {
    Cochain::from_values(f.degree, f.values.iter().map(|(s, q)| (s.clone(), q.clone())))
        .expect("values share the function's degree")
}

/// Minimal total variation in the class of a measure cycle, with a minimiser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSeminorm {
    pub value: Rational,
    pub representative: MeasureChain,
    pub pivots: usize,
}

/// `inf ‖μ + ∂ν‖` over measure chains `ν` supported on the `(k+1)`-simplices of `x`.
pub fn measure_seminorm(mu: &MeasureChain, x: &SimplicialComplex) -> Result<MeasureSeminorm, MeasureError> {
    let k = mu.degree;
    if let Some(s) = mu.masses.keys().find(|s| !x.contains(s)) {
        return Err(MeasureError::UnknownSimplex(s.clone()));
    }
    if k > 0 && !boundary_measure(mu)?.is_zero() {
        return Err(MeasureError::NotACycle);
    }
    let atoms = x.simplices(k);
    let n = atoms.len();
    let fillers = x.simplices(k + 1);
    let m = fillers.len();
    // variables: positive part, negative part, ν⁺, ν⁻
    let mut rows: Vec<Vec<(usize, Rational)>> =
        (0..n).map(|i| vec![(i, Rational::one()), (n + i, -Rational::one())]).collect();
    for (t_idx, t) in fillers.iter().enumerate() {
        let d = boundary_measure(&MeasureChain::dirac(t.clone()))?;
        for (s, a) in d.masses() {
            let i = x.index_of(s).expect("faces lie in the complex");
            rows[i].push((2 * n + t_idx, -a.clone()));
            rows[i].push((2 * n + m + t_idx, a.clone()));
        }
    }
    let rhs: Vec<Rational> = atoms.iter().map(|s| mu.mass(s)).collect();
    let mut objective = vec![Rational::one(); 2 * n];
    objective.resize(2 * (n + m), Rational::zero());
    let program = LinearProgram::new(objective, rows, rhs).expect("dimensions agree by construction");
    let sol = lp::solve(&program);
    if sol.status != LpStatus::Optimal {
        return Err(MeasureError::SolverFailure(sol.status));
    }
    let representative = MeasureChain::from_masses(
        k,
        atoms.iter().enumerate().map(|(i, s)| (s.clone(), &sol.primal[i] - &sol.primal[n + i])),
    )?;
    Ok(MeasureSeminorm { value: sol.value, representative, pivots: sol.pivots })
}

/// For a cocycle `f` with `⟨f, μ⟩ = 1`, the lower bound `1/‖f‖∞` on the seminorm of `[μ]`.
pub fn duality_bound(f: &BoundedFunction, mu: &MeasureChain, x: &SimplicialComplex) -> Result<Rational, MeasureError> {
    if !f.is_cocycle(x)? {
        return Err(MeasureError::NotACocycle);
    }
    let pairing = kronecker(f, mu)?;
    if !pairing.is_one() {
        return Err(MeasureError::PairingNotOne(crate::rational::to_string(&pairing)));
    }
    Ok(f.sup_norm().recip())
}
