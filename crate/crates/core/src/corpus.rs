//! Bundled example complexes, shipped as JSON under `data/`.

use crate::complex::SimplicialComplex;
use crate::covering::CoveringMap;
use crate::json::{ComplexJson, CoverJson};

pub const TRIANGLE: &str = include_str!("../data/triangle.json");
pub const TETRAHEDRON_BOUNDARY: &str = include_str!("../data/tetrahedron_boundary.json");
pub const TORUS: &str = include_str!("../data/torus.json");
pub const GENUS_TWO: &str = include_str!("../data/genus_two.json");
pub const PROJECTIVE_PLANE: &str = include_str!("../data/projective_plane.json");
pub const DOUBLE_COVER: &str = include_str!("../data/double_cover.json");

fn load(text: &str) -> SimplicialComplex {
    let j: ComplexJson = serde_json::from_str(text).expect("bundled complex parses");
    SimplicialComplex::try_from(&j).expect("bundled complex is valid")
}

/// The closed 2-simplex.
pub fn triangle() -> SimplicialComplex {
    load(TRIANGLE)
}

/// ∂Δ³, a 2-sphere with four triangles.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    load(TETRAHEDRON_BOUNDARY)
}

/// The 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    load(TORUS)
}

/// Genus-2 surface: connected sum of two 7-vertex tori along a triangle
/// (11 vertices, 26 triangles).
pub fn genus_two() -> SimplicialComplex {
    load(GENUS_TWO)
}

/// The 6-vertex real projective plane (non-orientable).
pub fn projective_plane() -> SimplicialComplex {
    load(PROJECTIVE_PLANE)
}

/// The hexagon double-covering the triangle boundary, `v ↦ v mod 3`.
pub fn double_cover() -> CoveringMap {
    let j: CoverJson = serde_json::from_str(DOUBLE_COVER).expect("bundled cover parses");
    j.to_cover().expect("bundled cover is valid")
}

/// Every bundled complex with its name.
pub fn complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("triangle", triangle()),
        ("tetrahedron_boundary", tetrahedron_boundary()),
        ("torus", torus()),
        ("genus_two", genus_two()),
        ("projective_plane", projective_plane()),
    ]
}
