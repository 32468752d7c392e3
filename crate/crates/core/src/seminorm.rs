//! The ℓ¹-seminorm of a homology class as a linear program, and bounded-cocycle
//! certificates for it.
//!
//! For a cycle `z` of degree `k` the primal program is
//!
//! ```text
//! minimise Σ (u_σ + v_σ)   subject to   u - v - ∂(b⁺ - b⁻) = z,   u, v, b± ≥ 0
//! ```
//!
//! so `u - v = z + ∂b` ranges over the cycles homologous to `z`. Its dual is
//! `maximise ⟨y, z⟩` over cochains with `|y_σ| ≤ 1` that vanish on boundaries,
//! i.e. over cocycles in the unit ball of the sup norm. An optimal dual vector
//! rescaled by the optimum is a cocycle `φ` with `⟨φ, z⟩ = 1` and
//! `1/‖φ‖∞ = ‖[z]‖₁`. Every space here is finite-dimensional, so the supremum over
//! cocycles is attained.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{boundary, Chain, ComplexError, Simplex, SimplicialComplex};
use crate::homology::{fundamental_cycle, HomologyClass};
use crate::lp::{self, LinearProgram, LpStatus};
use crate::rational::Rational;
use crate::subdivision::subdivide;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeminormError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("cochain does not vanish on the boundary of {0}")]
    NotACocycle(Simplex),
    #[error("pairing with the class is {0}, expected 1")]
    PairingNotOne(String),
    #[error("cochain has no value on {0}")]
    IncompleteCochain(Simplex),
    #[error("solver returned {0:?} on a feasible bounded program")]
    SolverFailure(LpStatus),
}

impl SeminormError {
    pub fn name(&self) -> &'static str {
        match self {
            SeminormError::Complex(e) => e.name(),
            SeminormError::NotACocycle(_) => "NotACocycle",
            SeminormError::PairingNotOne(_) => "PairingNotOne",
            SeminormError::IncompleteCochain(_) => "IncompleteCochain",
            SeminormError::SolverFailure(_) => "SolverFailure",
        }
    }
}

/// A rational-valued function on `k`-simplices. Bounded automatically, since the
/// domain is finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Simplex, Rational>,
}

impl Cochain {
    pub fn from_values<I>(degree: usize, values: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (Simplex, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (s, q) in values {
            if s.degree() != degree {
                return Err(ComplexError::DegreeMismatch { expected: degree, found: s.degree() });
            }
            map.insert(s, q);
        }
        Ok(Cochain { degree, values: map })
    }

    /// The zero cochain on every `k`-simplex of `x`.
    pub fn zero(x: &SimplicialComplex, degree: usize) -> Self {
        Cochain { degree, values: x.simplices(degree).iter().map(|s| (s.clone(), Rational::zero())).collect() }
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

    /// `‖φ‖∞`, the largest absolute value (zero on an empty domain).
    pub fn sup_norm(&self) -> Rational {
        self.values.values().map(|q| q.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, q: &Rational) -> Cochain {
        Cochain { degree: self.degree, values: self.values.iter().map(|(s, v)| (s.clone(), v * q)).collect() }
    }

    /// Kronecker pairing `⟨φ, c⟩ = Σ φ(σ)·a_σ`.
    pub fn evaluate(&self, c: &Chain) -> Result<Rational, SeminormError> {
        if c.degree() != self.degree {
            return Err(ComplexError::DegreeMismatch { expected: self.degree, found: c.degree() }.into());
        }
        let mut total = Rational::zero();
        for (s, a) in c.terms() {
            let v = self.values.get(s).ok_or_else(|| SeminormError::IncompleteCochain(s.clone()))?;
            total += v * a;
        }
        Ok(total)
    }

    /// Checks that the domain is exactly the `k`-simplices of `x`.
    pub fn check_domain(&self, x: &SimplicialComplex) -> Result<(), SeminormError> {
        for s in x.simplices(self.degree) {
            if !self.values.contains_key(s) {
                return Err(SeminormError::IncompleteCochain(s.clone()));
            }
        }
        if let Some(s) = self.values.keys().find(|s| !x.contains(s)) {
            return Err(ComplexError::UnknownSimplex(s.clone()).into());
        }
        Ok(())
    }

    /// `(δφ)(τ) = (-1)^{k+1} φ(∂τ)` on every `(k+1)`-simplex of `x`.
    pub fn coboundary(&self, x: &SimplicialComplex) -> Result<Cochain, SeminormError> {
        let sign = if (self.degree + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
        let mut values = BTreeMap::new();
        for t in x.simplices(self.degree + 1) {
            let v = self.evaluate(&boundary(&Chain::simplex(t.clone()))?)?;
            values.insert(t.clone(), &sign * v);
        }
        Ok(Cochain { degree: self.degree + 1, values })
    }

    /// First `(k+1)`-simplex on whose boundary `φ` does not vanish, if any.
    pub fn cocycle_violation(&self, x: &SimplicialComplex) -> Result<Option<Simplex>, SeminormError> {
        for t in x.simplices(self.degree + 1) {
            if !self.evaluate(&boundary(&Chain::simplex(t.clone()))?)?.is_zero() {
                return Ok(Some(t.clone()));
            }
        }
        Ok(None)
    }
}

/// A normalised cocycle certificate for a class: `⟨φ, α⟩ = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub cochain: Cochain,
    pub pairing: Rational,
    pub sup_norm: Rational,
}

impl DualCertificate {
    /// The certified lower bound `1/‖φ‖∞`.
    pub fn bound(&self) -> Rational {
        self.sup_norm.recip()
    }
}

/// Everything the primal–dual solve produces for one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeminormSolution {
    pub value: Rational,
    /// A minimal representative `z + ∂b`.
    pub chain: Chain,
    /// The raw optimal dual vector: a cocycle in the sup-norm unit ball with `⟨y, z⟩ = value`.
    pub dual: Cochain,
    /// Dual objective `b·y` as reported by the solver.
    pub dual_value: Rational,
    pub pivots: usize,
}

/// The primal program for `class`, in the variable order `u, v, b⁺, b⁻`.
pub fn seminorm_program(class: &HomologyClass<'_>) -> LinearProgram {
    let x = class.complex();
    let k = class.degree();
    let n = x.count(k);
    let m = x.count(k + 1);
    let mut rows: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|i| vec![(i, Rational::one()), (n + i, -Rational::one())])
        .collect();
    for (t_idx, t) in x.simplices(k + 1).iter().enumerate() {
        for (sign, f) in t.signed_faces() {
            let i = x.index_of(&f).expect("closed under faces");
            let a = Rational::from_integer(sign.into());
            rows[i].push((2 * n + t_idx, -a.clone()));
            rows[i].push((2 * n + m + t_idx, a));
        }
    }
    let rhs = x.simplices(k).iter().map(|s| class.cycle().coefficient(s)).collect();
    let mut objective = vec![Rational::one(); 2 * n];
    objective.resize(2 * n + 2 * m, Rational::zero());
    LinearProgram::new(objective, rows, rhs).expect("dimensions agree by construction")
}

/// Solves the seminorm program for `class` and reads off the optimal chain and dual cocycle.
pub fn solve_seminorm(class: &HomologyClass<'_>) -> Result<SeminormSolution, SeminormError> {
    let x = class.complex();
    let k = class.degree();
    let n = x.count(k);
    let program = seminorm_program(class);
    let sol = lp::solve(&program);
    if sol.status != LpStatus::Optimal {
        return Err(SeminormError::SolverFailure(sol.status));
    }
    let chain = Chain::from_terms(
        k,
        x.simplices(k).iter().enumerate().map(|(i, s)| (s.clone(), &sol.primal[i] - &sol.primal[n + i])),
    )?;
    let dual = Cochain::from_values(k, x.simplices(k).iter().cloned().zip(sol.dual.iter().cloned()))?;
    let dual_value = program.dual_value(&sol.dual);
    Ok(SeminormSolution { value: sol.value, chain, dual, dual_value, pivots: sol.pivots })
}

/// `‖α‖₁` and a representative cycle attaining it.
pub fn l1_seminorm(class: &HomologyClass<'_>) -> Result<(Rational, Chain), SeminormError> {
    let s = solve_seminorm(class)?;
    Ok((s.value, s.chain))
}

/// Normalised dual certificate, or `None` when the seminorm vanishes (then the
/// class bounds and every cocycle pairs to zero with it).
pub fn dual_certificate(class: &HomologyClass<'_>) -> Result<Option<DualCertificate>, SeminormError> {
    certificate_from(&solve_seminorm(class)?)
}

pub fn certificate_from(sol: &SeminormSolution) -> Result<Option<DualCertificate>, SeminormError> {
    if sol.value.is_zero() {
        return Ok(None);
    }
    let cochain = sol.dual.scaled(&sol.value.recip());
    let sup_norm = cochain.sup_norm();
    Ok(Some(DualCertificate { cochain, pairing: Rational::one(), sup_norm }))
}

/// Re-checks a certificate by direct arithmetic and returns the lower bound
/// `1/‖φ‖∞ ≤ ‖α‖₁`.
///
/// The cocycle condition is tested on the boundaries of all `(k+1)`-simplices,
/// which span the boundaries.
pub fn verify_certificate(phi: &Cochain, class: &HomologyClass<'_>) -> Result<Rational, SeminormError> {
    let x = class.complex();
    if phi.degree() != class.degree() {
        return Err(ComplexError::DegreeMismatch { expected: class.degree(), found: phi.degree() }.into());
    }
    phi.check_domain(x)?;
    if let Some(t) = phi.cocycle_violation(x)? {
        return Err(SeminormError::NotACocycle(t));
    }
    let pairing = phi.evaluate(class.cycle())?;
    if !pairing.is_one() {
        return Err(SeminormError::PairingNotOne(crate::rational::to_string(&pairing)));
    }
    Ok(phi.sup_norm().recip())
}

/// One entry of [`volume_bounds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeBound {
    pub value: Rational,
    pub facets: usize,
    pub pivots: usize,
}

/// Seminorms of the fundamental class after `0..=rounds` barycentric subdivisions.
pub fn volume_bounds(x: &SimplicialComplex, rounds: usize) -> Result<Vec<VolumeBound>, SeminormError> {
    let mut complex = x.clone();
    let mut cycle = fundamental_cycle(x)?;
    let mut out = Vec::with_capacity(rounds + 1);
    for round in 0..=rounds {
        let class = HomologyClass::new(&complex, cycle.clone())?;
        let sol = solve_seminorm(&class)?;
        out.push(VolumeBound { value: sol.value, facets: complex.count(complex.dim()), pivots: sol.pivots });
        if round < rounds {
            let sd = subdivide(&complex);
            cycle = sd.apply(&cycle)?;
            complex = sd.complex().clone();
        }
    }
    Ok(out)
}

/// Upper bounds `v_0, …, v_rounds` for the simplicial volume.
pub fn simplicial_volume_upper(x: &SimplicialComplex, rounds: usize) -> Result<Vec<Rational>, SeminormError> {
    Ok(volume_bounds(x, rounds)?.into_iter().map(|b| b.value).collect())
}
