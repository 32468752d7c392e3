//! Barycentric subdivision and its chain map.

use std::collections::BTreeMap;

use crate::complex::{boundary, Chain, ComplexError, Simplex, SimplicialComplex};

/// The barycentric subdivision of a complex together with the chain map `Sd`.
///
/// The barycenter of the `i`-th simplex (in degree-then-lexicographic order) is
/// vertex `i` of the subdivided complex.
#[derive(Debug, Clone)]
pub struct Subdivision {
    source: SimplicialComplex,
    complex: SimplicialComplex,
    barycenter: BTreeMap<Simplex, usize>,
}

impl Subdivision {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn barycenter(&self, s: &Simplex) -> Option<usize> {
        self.barycenter.get(s).copied()
    }

    /// `Sd(v) = b_v` and `Sd(σ) = b_σ * Sd(∂σ)`, extended linearly.
    pub fn apply(&self, c: &Chain) -> Result<Chain, ComplexError> {
        self.source.check_chain(c)?;
        let mut out = Chain::zero(c.degree());
        for (s, a) in c.terms() {
            out.add_scaled(a, &self.simplex_image(s));
        }
        Ok(out)
    }

    fn simplex_image(&self, s: &Simplex) -> Chain {
        let b = self.barycenter[s];
        if s.degree() == 0 {
            return Chain::simplex(Simplex::new(vec![b]).expect("single vertex"));
        }
        let mut inner = Chain::zero(s.degree() - 1);
        let face_boundary = boundary(&Chain::simplex(s.clone())).expect("degree at least one");
        for (f, a) in face_boundary.terms() {
            inner.add_scaled(a, &self.simplex_image(f));
        }
        cone(b, &inner)
    }
}

/// `b * c`: prepends the apex `b` to every simplex of `c`.
fn cone(apex: usize, c: &Chain) -> Chain {
    let mut out = Chain::zero(c.degree() + 1);
    for (s, a) in c.terms() {
        let mut ordered = Vec::with_capacity(s.vertices().len() + 1);
        ordered.push(apex);
        ordered.extend_from_slice(s.vertices());
        let (sign, t) = Simplex::from_ordered(&ordered).expect("apex is a fresh vertex");
        out.add_term(t, if sign > 0 { a.clone() } else { -a.clone() });
    }
    out
}

/// One round of barycentric subdivision.
pub fn subdivide(x: &SimplicialComplex) -> Subdivision {
    let barycenter: BTreeMap<Simplex, usize> =
        x.all_simplices().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut facets = Vec::new();
    for top in x.maximal_simplices() {
        for order in permutations(top.vertices()) {
            let flag = (1..=order.len())
                .map(|len| {
                    let face = Simplex::new(order[..len].to_vec()).expect("distinct vertices");
                    barycenter[&face]
                })
                .collect();
            facets.push(flag);
        }
    }
    let complex = SimplicialComplex::build(&facets).expect("flags are nondegenerate");
    Subdivision { source: x.clone(), complex, barycenter }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
