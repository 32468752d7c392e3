//! Seeded random instances for property checks.

use rand::Rng;

use crate::complex::{Chain, SimplicialComplex};
use crate::homology::{homology_basis, HomologyClass};
use crate::linalg::Matrix;
use crate::measure::BoundedFunction;
use crate::rational::{frac, Rational};
use crate::complex::boundary;

/// A small nonzero-denominator rational `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// A chain with up to `max_terms` random terms on the `k`-simplices of `x`.
pub fn chain<R: Rng>(rng: &mut R, x: &SimplicialComplex, k: usize, max_terms: usize) -> Chain {
    let simplices = x.simplices(k);
    let mut c = Chain::zero(k);
    if simplices.is_empty() {
        return c;
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let s = simplices[rng.gen_range(0..simplices.len())].clone();
        c.add_term(s, small_rational(rng));
    }
    c
}

/// A function with random values on every `k`-simplex of `x`.
pub fn function<R: Rng>(rng: &mut R, x: &SimplicialComplex, k: usize) -> BoundedFunction {
    BoundedFunction::on_complex(x, k, x.simplices(k).iter().map(|s| (s.clone(), small_rational(rng))))
        .expect("values on simplices of the complex")
}

/// A random combination of the homology basis plus a random boundary. The result
/// may be null-homologous.
pub fn cycle<'a, R: Rng>(rng: &mut R, x: &'a SimplicialComplex, k: usize) -> HomologyClass<'a> {
    let mut z = Chain::zero(k);
    for class in homology_basis(x, k) {
        z.add_scaled(&Rational::from_integer(rng.gen_range(-3..=3).into()), class.cycle());
    }
    if k < x.dim() {
        let filler = chain(rng, x, k + 1, 3);
        z = z.plus(&boundary(&filler).expect("degree at least one"));
    }
    HomologyClass::new(x, z).expect("sum of cycles is a cycle")
}

/// A random cocycle: an integer combination of a basis of `ker δ` on `k`-cochains.
pub fn cocycle<R: Rng>(rng: &mut R, x: &SimplicialComplex, k: usize) -> BoundedFunction {
    let n = x.count(k);
    // φ is a cocycle iff φ(∂τ) = 0 for every (k+1)-simplex τ
    let mut m = Matrix::zeros(x.count(k + 1), n);
    for (r, t) in x.simplices(k + 1).iter().enumerate() {
        for (sign, f) in t.signed_faces() {
            m.set(r, x.index_of(&f).expect("closed under faces"), Rational::from_integer(sign.into()));
        }
    }
    let basis = if x.count(k + 1) == 0 {
        (0..n)
            .map(|i| {
                let mut e = vec![Rational::from_integer(0.into()); n];
                e[i] = Rational::from_integer(1.into());
                e
            })
            .collect()
    } else {
        m.nullspace()
    };
    let mut values = vec![Rational::from_integer(0.into()); n];
    for v in &basis {
        let c = Rational::from_integer(rng.gen_range(-3..=3).into());
        for (slot, a) in values.iter_mut().zip(v) {
            *slot += &c * a;
        }
    }
    BoundedFunction::on_complex(x, k, x.simplices(k).iter().cloned().zip(values)).expect("values on the complex")
}
