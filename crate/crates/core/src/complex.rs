//! Finite simplicial complexes, oriented chains and the simplicial boundary.
//!
//! A simplex is stored once, with its vertices in increasing order; that order is
//! its orientation. Any other vertex order is represented by the canonical simplex
//! together with the sign of the sorting permutation, carried on the coefficient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet {0:?} is empty or repeats a vertex")]
    InvalidFacet(Vec<usize>),
    #[error("a complex needs at least one facet")]
    EmptyComplex,
    #[error("operation undefined in degree {0}")]
    DegreeError(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("simplex {0} does not belong to the complex")]
    UnknownSimplex(Simplex),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("no coherent orientation of the facets exists")]
    NotOrientable,
    #[error("ridge {0} does not lie in exactly two facets")]
    NotClosed(Simplex),
}

impl ComplexError {
    /// Variant name, used as the machine-readable error tag.
    pub fn name(&self) -> &'static str {
        match self {
            ComplexError::InvalidFacet(_) => "InvalidFacet",
            ComplexError::EmptyComplex => "EmptyComplex",
            ComplexError::DegreeError(_) => "DegreeError",
            ComplexError::DegreeMismatch { .. } => "DegreeMismatch",
            ComplexError::UnknownSimplex(_) => "UnknownSimplex",
            ComplexError::NotACycle => "NotACycle",
            ComplexError::NotOrientable => "NotOrientable",
            ComplexError::NotClosed(_) => "NotClosed",
        }
    }
}

/// An oriented simplex with strictly increasing vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds the canonical simplex on `vertices`, in any order. Fails on repeats or
    /// an empty vertex list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, ComplexError> {
        let original = vertices.clone();
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::InvalidFacet(original));
        }
        Ok(Simplex(vertices))
    }

    /// Canonicalises an ordered vertex tuple. Returns the sign of the sorting
    /// permutation, or `None` when a vertex repeats (a degenerate simplex).
    pub fn from_ordered(vertices: &[usize]) -> Option<(i32, Simplex)> {
        let mut v = vertices.to_vec();
        // insertion sort so the swap parity is the permutation sign
        let mut sign = 1;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.is_empty() || v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Simplex(v)))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// The face opposite the `j`-th vertex.
    pub fn face(&self, j: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(j);
        Simplex(v)
    }

    /// Faces with their boundary signs `(-1)^j`.
    pub fn signed_faces(&self) -> impl Iterator<Item = (i32, Simplex)> + '_ {
        (0..self.0.len()).map(move |j| (if j % 2 == 0 { 1 } else { -1 }, self.face(j)))
    }

    pub fn first_vertex(&self) -> usize {
        self.0[0]
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite simplicial complex, closed under faces, with simplices kept sorted
/// lexicographically in each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Closure of `facets` under taking faces.
    pub fn build(facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut by_degree: Vec<BTreeSet<Simplex>> = Vec::new();
        for facet in facets {
            let top = Simplex::new(facet.clone())?;
            let d = top.degree();
            if by_degree.len() <= d {
                by_degree.resize_with(d + 1, BTreeSet::new);
            }
            // every nonempty subset of the facet's vertices
            let n = top.0.len();
            for mask in 1u64..(1u64 << n) {
                let verts: Vec<usize> =
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| top.0[i]).collect();
                let k = verts.len() - 1;
                by_degree[k].insert(Simplex(verts));
            }
        }
        Ok(SimplicialComplex { simplices: by_degree.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// The sorted `k`-simplices; empty above the dimension.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.degree()).binary_search(s).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).iter().map(|s| s.0[0])
    }

    /// All simplices in (degree, lexicographic) order.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut faces = Vec::new();
        for s in self.simplices.iter().skip(1).flatten() {
            faces.extend(s.signed_faces().map(|(_, f)| f));
        }
        for f in &faces {
            covered.insert(f);
        }
        self.all_simplices().filter(|s| !covered.contains(s)).cloned().collect()
    }

    /// Maximal simplices as vertex lists, the form accepted by [`SimplicialComplex::build`].
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.maximal_simplices().into_iter().map(|s| s.0).collect()
    }

    /// Fails with `UnknownSimplex` if some term of `c` is not in the complex.
    pub fn check_chain(&self, c: &Chain) -> Result<(), ComplexError> {
        match c.terms.keys().find(|s| !self.contains(s)) {
            Some(s) => Err(ComplexError::UnknownSimplex(s.clone())),
            None => Ok(()),
        }
    }

    /// Euler characteristic, handy for sanity checks on triangulations.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}

/// A finite rational combination of `k`-simplices. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Simplex, Rational>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    /// Sums the given terms, merging repeated simplices.
    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (Simplex, Rational)>,
    {
        let mut c = Chain::zero(degree);
        for (s, q) in terms {
            if s.degree() != degree {
                return Err(ComplexError::DegreeMismatch { expected: degree, found: s.degree() });
            }
            c.add_term(s, q);
        }
        Ok(c)
    }

    pub fn simplex(s: Simplex) -> Self {
        let degree = s.degree();
        let mut terms = BTreeMap::new();
        terms.insert(s, Rational::from_integer(1.into()));
        Chain { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Simplex) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `q·s`. Panics if `s` has the wrong degree.
    pub fn add_term(&mut self, s: Simplex, q: Rational) {
        assert_eq!(s.degree(), self.degree, "simplex degree differs from chain degree");
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(q);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += q·other`. Panics on a degree mismatch.
    pub fn add_scaled(&mut self, q: &Rational, other: &Chain) {
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        for (s, a) in &other.terms {
            self.add_term(s.clone(), q * a);
        }
    }

    pub fn scaled(&self, q: &Rational) -> Chain {
        let mut c = Chain::zero(self.degree);
        c.add_scaled(q, self);
        c
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(&Rational::from_integer(1.into()), other);
        c
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(&Rational::from_integer((-1).into()), other);
        c
    }
}

/// The simplicial boundary, `∂σ = Σ_j (-1)^j σ∖v_j`.
pub fn boundary(c: &Chain) -> Result<Chain, ComplexError> {
    if c.degree == 0 {
        return Err(ComplexError::DegreeError(0));
    }
    let mut out = Chain::zero(c.degree - 1);
    for (s, a) in &c.terms {
        for (sign, f) in s.signed_faces() {
            out.add_term(f, if sign > 0 { a.clone() } else { -a.clone() });
        }
    }
    Ok(out)
}

/// `‖c‖₁ = Σ |a_σ|`.
pub fn l1_norm(c: &Chain) -> Rational {
    c.terms.values().map(|a| a.abs()).sum()
}

/// A simplicial map given by its vertex assignment. Images of simplices may be
/// degenerate; such simplices vanish under the induced chain map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    vertex_map: BTreeMap<usize, usize>,
}

impl SimplicialMap {
    pub fn new(vertex_map: BTreeMap<usize, usize>) -> Self {
        SimplicialMap { vertex_map }
    }

    pub fn identity(complex: &SimplicialComplex) -> Self {
        SimplicialMap { vertex_map: complex.vertices().map(|v| (v, v)).collect() }
    }

    pub fn vertex_map(&self) -> &BTreeMap<usize, usize> {
        &self.vertex_map
    }

    pub fn vertex(&self, v: usize) -> Option<usize> {
        self.vertex_map.get(&v).copied()
    }

    /// The image of `s` as a canonical simplex and orientation sign; `None` if
    /// degenerate. Panics if a vertex of `s` is not in the domain.
    pub fn image(&self, s: &Simplex) -> Option<(i32, Simplex)> {
        let verts: Vec<usize> = s
            .vertices()
            .iter()
            .map(|v| *self.vertex_map.get(v).unwrap_or_else(|| panic!("vertex {v} outside map domain")))
            .collect();
        Simplex::from_ordered(&verts)
    }

    /// Induced chain map `g_#`.
    pub fn push_chain(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree());
        for (s, a) in c.terms() {
            if let Some((sign, t)) = self.image(s) {
                out.add_term(t, if sign > 0 { a.clone() } else { -a.clone() });
            }
        }
        out
    }

    /// Checks that every simplex of `source` lands on a simplex of `target`
    /// (possibly degenerate, in which case its vertex set must still span one).
    pub fn is_simplicial(&self, source: &SimplicialComplex, target: &SimplicialComplex) -> bool {
        source.all_simplices().all(|s| {
            let mut verts: Vec<usize> = match s.vertices().iter().map(|v| self.vertex(*v)).collect() {
                Some(v) => v,
                None => return false,
            };
            verts.sort_unstable();
            verts.dedup();
            Simplex::new(verts).map(|t| target.contains(&t)).unwrap_or(false)
        })
    }
}
