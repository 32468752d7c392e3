//! Simplicial covering maps, unique lifting of simplices, and sections of the
//! induced map on simplices.
//!
//! A cover is given as explicit data: a total complex, a base complex and a vertex
//! projection. Validation checks that the projection restricted to the closed
//! star of every total vertex is a bijection onto the star of its image, which is
//! what makes lifts through a chosen vertex exist and be unique.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{Chain, Simplex, SimplicialComplex, SimplicialMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("not a covering: {0}")]
    NotACovering(String),
    #[error("vertex {vertex} does not lie over the first vertex of {simplex}")]
    BadBasepoint { vertex: usize, simplex: Simplex },
    #[error("no lift of {0} through the given vertex")]
    NoLift(Simplex),
}

impl CoverError {
    pub fn name(&self) -> &'static str {
        match self {
            CoverError::NotACovering(_) => "NotACovering",
            CoverError::BadBasepoint { .. } => "BadBasepoint",
            CoverError::NoLift(_) => "NoLift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    total: SimplicialComplex,
    base: SimplicialComplex,
    projection: SimplicialMap,
    /// Simplices of the total complex containing each vertex.
    stars: BTreeMap<usize, Vec<Simplex>>,
    fibers: BTreeMap<usize, Vec<usize>>,
}

fn not_a_covering(msg: String) -> CoverError {
    CoverError::NotACovering(msg)
}

impl CoveringMap {
    /// Checks the covering conditions and assembles the cover.
    pub fn validate(
        total: SimplicialComplex,
        base: SimplicialComplex,
        projection: BTreeMap<usize, usize>,
    ) -> Result<Self, CoverError> {
        let total_vertices: BTreeSet<usize> = total.vertices().collect();
        let base_vertices: BTreeSet<usize> = base.vertices().collect();
        for v in &total_vertices {
            match projection.get(v) {
                None => return Err(not_a_covering(format!("vertex {v} has no image"))),
                Some(b) if !base_vertices.contains(b) => {
                    return Err(not_a_covering(format!("vertex {v} maps to {b}, which is not a base vertex")))
                }
                _ => {}
            }
        }
        if let Some(v) = projection.keys().find(|v| !total_vertices.contains(v)) {
            return Err(not_a_covering(format!("projection lists {v}, which is not a total vertex")));
        }
        let projection = SimplicialMap::new(projection);

        for s in total.all_simplices() {
            match projection.image(s) {
                None => return Err(not_a_covering(format!("simplex {s} collapses under the projection"))),
                Some((_, t)) if !base.contains(&t) => {
                    return Err(not_a_covering(format!("simplex {s} maps to {t}, which is not a base simplex")))
                }
                _ => {}
            }
        }

        let mut stars: BTreeMap<usize, Vec<Simplex>> = total_vertices.iter().map(|v| (*v, Vec::new())).collect();
        for s in total.all_simplices() {
            for v in s.vertices() {
                stars.get_mut(v).expect("vertex of the complex").push(s.clone());
            }
        }
        let mut base_stars: BTreeMap<usize, BTreeSet<Simplex>> =
            base_vertices.iter().map(|v| (*v, BTreeSet::new())).collect();
        for s in base.all_simplices() {
            for v in s.vertices() {
                base_stars.get_mut(v).expect("vertex of the base").insert(s.clone());
            }
        }
        for (v, star) in &stars {
            let image: BTreeSet<Simplex> =
                star.iter().map(|s| projection.image(s).expect("checked nondegenerate").1).collect();
            if image.len() != star.len() {
                return Err(not_a_covering(format!("projection is not injective on the star of {v}")));
            }
            let target = &base_stars[&projection.vertex(*v).expect("checked total")];
            if &image != target {
                return Err(not_a_covering(format!(
                    "star of {v} does not map onto the star of {}",
                    projection.vertex(*v).expect("checked total")
                )));
            }
        }

        let mut fibers: BTreeMap<usize, Vec<usize>> = base_vertices.iter().map(|v| (*v, Vec::new())).collect();
        for v in &total_vertices {
            fibers.get_mut(&projection.vertex(*v).expect("checked total")).expect("base vertex").push(*v);
        }
        if let Some((b, _)) = fibers.iter().find(|(_, f)| f.is_empty()) {
            return Err(not_a_covering(format!("base vertex {b} has an empty fiber")));
        }
        for component in components(&base) {
            let sizes: BTreeSet<usize> = component.iter().map(|b| fibers[b].len()).collect();
            if sizes.len() > 1 {
                return Err(not_a_covering(format!("fiber sizes {sizes:?} differ within a connected component")));
            }
        }

        Ok(CoveringMap { total, base, projection, stars, fibers })
    }

    pub fn total(&self) -> &SimplicialComplex {
        &self.total
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn projection(&self) -> &SimplicialMap {
        &self.projection
    }

    /// Total vertices over `b`, in increasing order.
    pub fn fiber(&self, b: usize) -> &[usize] {
        self.fibers.get(&b).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The number of sheets over the component of `b`.
    pub fn sheets(&self, b: usize) -> usize {
        self.fiber(b).len()
    }

    /// The unique simplex over `s` containing `basepoint`, where `basepoint` lies
    /// over the first vertex of `s`.
    pub fn lift_simplex(&self, s: &Simplex, basepoint: usize) -> Result<Simplex, CoverError> {
        let bad = || CoverError::BadBasepoint { vertex: basepoint, simplex: s.clone() };
        if !self.base.contains(s) || self.projection.vertex(basepoint) != Some(s.first_vertex()) {
            return Err(bad());
        }
        let star = self.stars.get(&basepoint).ok_or_else(bad)?;
        star.iter()
            .find(|t| self.projection.image(t).map(|(_, img)| &img == s).unwrap_or(false))
            .cloned()
            .ok_or_else(|| CoverError::NoLift(s.clone()))
    }

    /// For each base simplex, the lift through the smallest vertex over its first vertex.
    pub fn build_section(&self) -> Section {
        let assignment = self
            .base
            .all_simplices()
            .map(|s| {
                let basepoint = self.fiber(s.first_vertex())[0];
                let lift = self.lift_simplex(s, basepoint).expect("valid covers lift every simplex");
                (s.clone(), lift)
            })
            .collect();
        Section { assignment }
    }

    /// `P∘s = id`: every base simplex is assigned a total simplex lying over it.
    pub fn verify_section(&self, section: &Section) -> bool {
        let keys: BTreeSet<&Simplex> = section.assignment.keys().collect();
        let base: BTreeSet<&Simplex> = self.base.all_simplices().collect();
        keys == base
            && section.assignment.iter().all(|(b, t)| {
                self.total.contains(t) && self.projection.image(t).map(|(_, img)| &img == b).unwrap_or(false)
            })
    }

    /// `s_#`: sends `a·σ` to `±a·s(σ)`, signed so that the projection of the lift is `σ`
    /// with its own orientation.
    pub fn lift_chain(&self, section: &Section, c: &Chain) -> Result<Chain, CoverError> {
        let mut out = Chain::zero(c.degree());
        for (s, a) in c.terms() {
            let t = section.get(s).ok_or_else(|| CoverError::NoLift(s.clone()))?;
            let (sign, _) = self.projection.image(t).ok_or_else(|| CoverError::NoLift(s.clone()))?;
            out.add_term(t.clone(), if sign > 0 { a.clone() } else { -a.clone() });
        }
        Ok(out)
    }
}

fn components(x: &SimplicialComplex) -> Vec<Vec<usize>> {
    let verts: Vec<usize> = x.vertices().collect();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for e in x.simplices(1) {
        let a = find(&mut parent, index[&e.vertices()[0]]);
        let b = find(&mut parent, index[&e.vertices()[1]]);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, v) in verts.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(*v);
    }
    groups.into_values().collect()
}

/// An assignment of a total simplex to every base simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    assignment: BTreeMap<Simplex, Simplex>,
}

impl Section {
    pub fn from_assignment(assignment: BTreeMap<Simplex, Simplex>) -> Self {
        Section { assignment }
    }

    pub fn assignment(&self) -> &BTreeMap<Simplex, Simplex> {
        &self.assignment
    }

    pub fn get(&self, s: &Simplex) -> Option<&Simplex> {
        self.assignment.get(s)
    }

    pub fn with_choice(mut self, base: Simplex, lift: Simplex) -> Self {
        self.assignment.insert(base, lift);
        self
    }
}
