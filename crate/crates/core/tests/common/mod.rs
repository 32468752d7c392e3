//! Test-only oracles, independent of the crate's solver and elimination code.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense `min c·x, Ax = b, x ≥ 0` instance.
#[derive(Debug, Clone)]
pub struct DenseLp {
    pub c: Vec<Q>,
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleResult {
    Infeasible,
    Optimal(Q),
}

/// Row-reduces `[A | b]`; returns the nonzero rows or `None` if inconsistent.
fn reduce(a: &[Vec<Q>], b: &[Q]) -> Option<(Vec<Vec<Q>>, Vec<Q>)> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let mut lead = 0;
    for col in 0..n {
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(lead, p);
        let pv = rows[lead][col].clone();
        for x in rows[lead].iter_mut() {
            *x = &*x / &pv;
        }
        for r in 0..rows.len() {
            if r != lead && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for j in 0..=n {
                    let delta = &f * &rows[lead][j];
                    rows[r][j] -= delta;
                }
            }
        }
        lead += 1;
    }
    for r in &rows[lead..] {
        if !r[n].is_zero() {
            return None;
        }
    }
    rows.truncate(lead);
    let b = rows.iter().map(|r| r[n].clone()).collect();
    let a = rows.into_iter().map(|mut r| {
        r.pop();
        r
    });
    Some((a.collect(), b))
}

/// Solves a square system by Cramer-free elimination; `None` when singular.
fn solve_square(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let k = a.len();
    let (red, rhs) = reduce(a, b)?;
    if red.len() < k {
        return None;
    }
    // reduced form of a nonsingular square matrix is the identity
    Some(rhs)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Minimum over all basic feasible solutions. Only valid for bounded feasible regions.
pub fn vertex_enumeration(lp: &DenseLp) -> OracleResult {
    let n = lp.c.len();
    let Some((a, b)) = reduce(&lp.a, &lp.b) else { return OracleResult::Infeasible };
    let r = a.len();
    if r == 0 {
        // only x ≥ 0; the origin is the only vertex
        return OracleResult::Optimal(Q::zero());
    }
    let mut best: Option<Q> = None;
    for cols in subsets(n, r) {
        let sub: Vec<Vec<Q>> = a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        let Some(xs) = solve_square(&sub, &b) else { continue };
        if xs.iter().any(|v| v.is_negative()) {
            continue;
        }
        let value: Q = cols.iter().zip(&xs).map(|(&j, v)| &lp.c[j] * v).sum();
        if best.as_ref().map_or(true, |bv| value < *bv) {
            best = Some(value);
        }
    }
    match best {
        Some(v) => OracleResult::Optimal(v),
        None => OracleResult::Infeasible,
    }
}

/// Random program with ≤ 6 variables and ≤ 4 rows whose first row has positive
/// coefficients, so the feasible region is bounded. About one in five has a
/// random right-hand side and may be infeasible.
pub fn random_bounded_lp<R: Rng>(rng: &mut R) -> DenseLp {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=4);
    let mut a = Vec::with_capacity(m);
    a.push((0..n).map(|_| qi(rng.gen_range(1..=5))).collect::<Vec<_>>());
    for _ in 1..m {
        a.push((0..n).map(|_| qi(rng.gen_range(-3..=3))).collect());
    }
    let b = if rng.gen_bool(0.2) {
        let mut b: Vec<Q> = (0..m).map(|_| qi(rng.gen_range(-6..=10))).collect();
        b[0] = qi(rng.gen_range(0..=10));
        b
    } else {
        let x0: Vec<Q> = (0..n).map(|_| Q::new(rng.gen_range(0..=4).into(), rng.gen_range(1..=3).into())).collect();
        a.iter().map(|row| row.iter().zip(&x0).map(|(p, q)| p * q).sum()).collect()
    };
    let c = (0..n).map(|_| qi(rng.gen_range(-5..=5))).collect();
    DenseLp { c, a, b }
}

pub fn to_program(lp: &DenseLp) -> l1hom::lp::LinearProgram {
    l1hom::lp::LinearProgram::new(
        lp.c.clone(),
        lp.a.iter().map(|row| row.iter().cloned().enumerate().collect()).collect(),
        lp.b.clone(),
    )
    .expect("well-formed")
}

/// All ±1 sign patterns on the top simplices that form a cycle (exhaustive, ≤ 20 facets).
pub fn brute_force_orientations(x: &l1hom::SimplicialComplex) -> Vec<l1hom::Chain> {
    let d = x.dim();
    let facets = x.simplices(d);
    assert!(facets.len() <= 20, "exhaustive search too large");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << facets.len()) {
        let mut z = l1hom::Chain::zero(d);
        for (i, f) in facets.iter().enumerate() {
            z.add_term(f.clone(), if mask & (1 << i) != 0 { qi(-1) } else { qi(1) });
        }
        if l1hom::boundary(&z).unwrap().is_zero() {
            out.push(z);
        }
    }
    out
}
