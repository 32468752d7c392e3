//! Rational homology: boundary matrices, cycle bases, homology tests and
//! fundamental cycles of closed pseudomanifolds.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};

use crate::complex::{boundary, Chain, ComplexError, Simplex, SimplicialComplex};
use crate::linalg::{EchelonSpan, Matrix};
use crate::rational::Rational;

/// A homology class, represented by a cycle on a fixed complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass<'a> {
    complex: &'a SimplicialComplex,
    cycle: Chain,
}

impl<'a> HomologyClass<'a> {
    /// Fails with `UnknownSimplex` or `NotACycle`.
    pub fn new(complex: &'a SimplicialComplex, cycle: Chain) -> Result<Self, ComplexError> {
        complex.check_chain(&cycle)?;
        if !is_cycle(&cycle) {
            return Err(ComplexError::NotACycle);
        }
        Ok(HomologyClass { complex, cycle })
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn cycle(&self) -> &Chain {
        &self.cycle
    }

    pub fn degree(&self) -> usize {
        self.cycle.degree()
    }

    pub fn scaled(&self, q: &Rational) -> HomologyClass<'a> {
        HomologyClass { complex: self.complex, cycle: self.cycle.scaled(q) }
    }
}

pub fn is_cycle(c: &Chain) -> bool {
    c.degree() == 0 || boundary(c).map(|b| b.is_zero()).unwrap_or(false)
}

/// Matrix of `∂_k : C_k → C_{k-1}` in the lexicographic simplex bases.
/// For `k = 0` this is the empty `0 × n₀` matrix.
pub fn boundary_matrix(x: &SimplicialComplex, k: usize) -> Matrix {
    if k == 0 {
        return Matrix::zeros(0, x.count(0));
    }
    let mut m = Matrix::zeros(x.count(k - 1), x.count(k));
    for (col, s) in x.simplices(k).iter().enumerate() {
        for (sign, f) in s.signed_faces() {
            let row = x.index_of(&f).expect("complex is closed under faces");
            m.set(row, col, Rational::from_integer(sign.into()));
        }
    }
    m
}

/// Coordinates of `c` in the basis of `k`-simplices of `x`.
pub fn chain_to_vec(x: &SimplicialComplex, c: &Chain) -> Result<Vec<Rational>, ComplexError> {
    let mut v = vec![Rational::zero(); x.count(c.degree())];
    for (s, a) in c.terms() {
        let i = x.index_of(s).ok_or_else(|| ComplexError::UnknownSimplex(s.clone()))?;
        v[i] = a.clone();
    }
    Ok(v)
}

pub fn vec_to_chain(x: &SimplicialComplex, k: usize, v: &[Rational]) -> Chain {
    Chain::from_terms(k, x.simplices(k).iter().cloned().zip(v.iter().cloned()))
        .expect("simplices taken from the right degree")
}

/// Cycles whose classes form a basis of `H_k(x; ℚ)`.
///
/// Kernel vectors of `∂_k` are scanned in order and kept when they are independent
/// of `im ∂_{k+1}` together with the cycles already kept.
pub fn homology_basis(x: &SimplicialComplex, k: usize) -> Vec<HomologyClass<'_>> {
    let kernel = boundary_matrix(x, k).nullspace();
    let mut span = EchelonSpan::new();
    for t in x.simplices(k + 1) {
        let b = boundary(&Chain::simplex(t.clone())).expect("degree at least one");
        span.insert(&chain_to_vec(x, &b).expect("faces lie in the complex"));
    }
    kernel
        .into_iter()
        .filter(|z| span.insert(z))
        .map(|z| HomologyClass { complex: x, cycle: vec_to_chain(x, k, &z) })
        .collect()
}

/// Rational Betti numbers `b_0, …, b_dim`.
pub fn betti_numbers(x: &SimplicialComplex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=x.dim() + 1).map(|k| boundary_matrix(x, k).rank()).collect();
    (0..=x.dim()).map(|k| x.count(k) - ranks[k] - ranks[k + 1]).collect()
}

/// Decides whether `z1 - z2` bounds. Returns a witness `b` with `∂b = z1 - z2`.
pub fn is_homologous(
    x: &SimplicialComplex,
    z1: &Chain,
    z2: &Chain,
) -> Result<Option<Chain>, ComplexError> {
    if z1.degree() != z2.degree() {
        return Err(ComplexError::DegreeMismatch { expected: z1.degree(), found: z2.degree() });
    }
    for z in [z1, z2] {
        x.check_chain(z)?;
        if !is_cycle(z) {
            return Err(ComplexError::NotACycle);
        }
    }
    let k = z1.degree();
    let diff = z1.minus(z2);
    if diff.is_zero() {
        return Ok(Some(Chain::zero(k + 1)));
    }
    let rhs = chain_to_vec(x, &diff)?;
    let d = boundary_matrix(x, k + 1);
    if d.cols() == 0 {
        return Ok(None);
    }
    Ok(d.solve(&rhs).map(|b| vec_to_chain(x, k + 1, &b)))
}

/// A coherent `±1` orientation of the top-dimensional simplices.
///
/// Requires every codimension-one simplex to lie in exactly two facets. Each
/// connected component is seeded with `+1` on its smallest facet.
pub fn fundamental_cycle(x: &SimplicialComplex) -> Result<Chain, ComplexError> {
    let d = x.dim();
    if d == 0 {
        return Err(ComplexError::DegreeError(0));
    }
    let facets = x.simplices(d);
    let mut cofaces: BTreeMap<Simplex, Vec<(usize, i32)>> =
        x.simplices(d - 1).iter().map(|r| (r.clone(), Vec::new())).collect();
    for (i, f) in facets.iter().enumerate() {
        for (sign, r) in f.signed_faces() {
            cofaces.get_mut(&r).expect("closed under faces").push((i, sign));
        }
    }
    if let Some((r, _)) = cofaces.iter().find(|(_, c)| c.len() != 2) {
        return Err(ComplexError::NotClosed(r.clone()));
    }
    let mut orientation: Vec<i32> = vec![0; facets.len()];
    for seed in 0..facets.len() {
        if orientation[seed] != 0 {
            continue;
        }
        orientation[seed] = 1;
        let mut queue = VecDeque::from([seed]);
        while let Some(i) = queue.pop_front() {
            for (_, r) in facets[i].signed_faces() {
                let pair = &cofaces[&r];
                let (mine, other) = if pair[0].0 == i { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
                let want = -orientation[i] * mine.1 * other.1;
                match orientation[other.0] {
                    0 => {
                        orientation[other.0] = want;
                        queue.push_back(other.0);
                    }
                    s if s != want => return Err(ComplexError::NotOrientable),
                    _ => {}
                }
            }
        }
    }
    let one = Rational::one();
    Chain::from_terms(
        d,
        facets.iter().zip(&orientation).map(|(f, &s)| (f.clone(), if s > 0 { one.clone() } else { -one.clone() })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::int;

    #[test]
    fn triangle_closure_has_no_one_dimensional_homology() {
        let x = corpus::triangle();
        assert!(homology_basis(&x, 1).is_empty());
        assert_eq!(betti_numbers(&x), vec![1, 0, 0]);
    }

    #[test]
    fn sphere_and_torus_betti_numbers() {
        assert_eq!(betti_numbers(&corpus::tetrahedron_boundary()), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&corpus::torus()), vec![1, 2, 1]);
        assert_eq!(homology_basis(&corpus::tetrahedron_boundary(), 2).len(), 1);
        assert_eq!(homology_basis(&corpus::torus(), 1).len(), 2);
    }

    #[test]
    fn basis_cycles_are_not_boundaries() {
        for x in [corpus::torus(), corpus::genus_two(), corpus::tetrahedron_boundary()] {
            for k in 0..=x.dim() {
                for class in homology_basis(&x, k) {
                    let zero = Chain::zero(k);
                    assert_eq!(is_homologous(&x, class.cycle(), &zero).unwrap(), None);
                }
            }
        }
    }

    #[test]
    fn homologous_examples() {
        let x = corpus::triangle();
        let s = Simplex::new(vec![0, 1, 2]).unwrap();
        let z = boundary(&Chain::simplex(s)).unwrap();
        let w = is_homologous(&x, &z, &z).unwrap().unwrap();
        assert!(w.is_zero());
        let w = is_homologous(&x, &z, &Chain::zero(1)).unwrap().unwrap();
        assert_eq!(boundary(&w).unwrap(), z);

        let s2 = corpus::tetrahedron_boundary();
        let f = fundamental_cycle(&s2).unwrap();
        assert_eq!(is_homologous(&s2, &f, &Chain::zero(2)).unwrap(), None);
    }

    #[test]
    fn non_cycle_is_rejected() {
        let x = corpus::triangle();
        let e = Chain::simplex(Simplex::new(vec![0, 1]).unwrap());
        assert_eq!(is_homologous(&x, &e, &Chain::zero(1)), Err(ComplexError::NotACycle));
        assert_eq!(HomologyClass::new(&x, e).unwrap_err(), ComplexError::NotACycle);
    }

    #[test]
    fn fundamental_cycles() {
        let s2 = corpus::tetrahedron_boundary();
        let z = fundamental_cycle(&s2).unwrap();
        assert_eq!(z.len(), 4);
        assert!(boundary(&z).unwrap().is_zero());

        let t = corpus::torus();
        let z = fundamental_cycle(&t).unwrap();
        assert_eq!(z.len(), 14);
        assert!(z.terms().values().all(|a| *a == int(1) || *a == int(-1)));
        assert!(boundary(&z).unwrap().is_zero());

        assert_eq!(fundamental_cycle(&corpus::projective_plane()), Err(ComplexError::NotOrientable));
        assert!(matches!(fundamental_cycle(&corpus::triangle()), Err(ComplexError::NotClosed(_))));
    }
}
