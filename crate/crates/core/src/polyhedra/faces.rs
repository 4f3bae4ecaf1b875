//! Faces, face lattices and f-vectors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{affine_dim, fm, tight_at, vrep, Inequality, Polyhedron};
use crate::error::{Error, Result};
use crate::lattice::dot;
use crate::serial::format_rational;

/// A nonempty face together with its closed set of tight inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Every inequality index tight on the whole face (0-based).
    pub active: BTreeSet<usize>,
    pub dim: usize,
    /// A point of the relative interior.
    pub witness: Vec<BigRational>,
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Face", 3)?;
        st.serialize_field("active", &self.active)?;
        st.serialize_field("dim", &self.dim)?;
        let w: Vec<String> = self.witness.iter().map(format_rational).collect();
        st.serialize_field("witness", &w)?;
        st.end()
    }
}

/// The face cut out by forcing every inequality in `forced` to equality,
/// or `None` when that system has no solution.
///
/// Feasibility is decided by Fourier–Motzkin elimination; the witness is
/// the barycenter of the face's vertices plus the sum of its rays.
pub fn face(p: &Polyhedron, forced: &BTreeSet<usize>) -> Result<Option<Face>> {
    if let Some(&bad) = forced.iter().find(|&&i| i >= p.len()) {
        return Err(Error::invalid(format!(
            "inequality index {bad} out of range for {} inequalities",
            p.len()
        )));
    }
    let mut system: Vec<Inequality> = p.inequalities.clone();
    system.extend(forced.iter().map(|&i| p.inequalities[i].reversed()));
    if !fm::is_feasible(system.iter().map(Inequality::fm)) {
        return Ok(None);
    }
    let restricted = Polyhedron::new(p.dim, system)?;
    let v = vrep(&restricted);
    debug_assert!(!v.is_empty(), "elimination and enumeration disagree");
    let Some(witness) = relative_interior_point(&v.vertices, &v.rays) else {
        return Ok(None);
    };
    let active = tight_at(p, &witness);
    let dim = affine_dim(p, &active);
    Ok(Some(Face {
        active,
        dim,
        witness,
    }))
}

fn relative_interior_point(
    vertices: &[Vec<BigRational>],
    rays: &[Vec<BigInt>],
) -> Option<Vec<BigRational>> {
    let first = vertices.first()?;
    let n = BigRational::from_integer(BigInt::from(vertices.len()));
    let mut w = vec![BigRational::zero(); first.len()];
    for v in vertices {
        for (x, y) in w.iter_mut().zip(v) {
            *x += y;
        }
    }
    for x in w.iter_mut() {
        *x /= &n;
    }
    for r in rays {
        for (x, y) in w.iter_mut().zip(r) {
            *x += BigRational::from_integer(y.clone());
        }
    }
    Some(w)
}

/// Face counts by dimension and the simplicity flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector {
    /// `counts[i]` is the number of `i`-dimensional faces, including the
    /// polyhedron itself as the last entry.
    pub counts: Vec<usize>,
    pub is_simple: bool,
}

impl FVector {
    pub fn dim(&self) -> usize {
        self.counts.len() - 1
    }
}

/// All nonempty faces of a pointed polyhedron, keyed by their closed
/// active sets.
///
/// Faces are found breadth-first from the polyhedron itself by
/// intersecting generator sets with the tight set of one inequality at a
/// time.
pub fn face_lattice(p: &Polyhedron) -> Result<Vec<Face>> {
    let v = vrep(p);
    if v.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if !v.is_pointed() {
        return Err(Error::LinealityPresent);
    }
    let nv = v.vertices.len();
    let ngens = nv + v.rays.len();
    // incidence[i][g]: generator g is tight on inequality i
    let incidence: Vec<Vec<bool>> = p
        .inequalities
        .iter()
        .map(|q| {
            let mut row = Vec::with_capacity(ngens);
            row.extend(v.vertices.iter().map(|x| q.slack(x).is_zero()));
            row.extend(v.rays.iter().map(|r| dot(&q.a, r).is_zero()));
            row
        })
        .collect();

    let all: Vec<bool> = vec![true; ngens];
    let mut seen: BTreeMap<Vec<bool>, ()> = BTreeMap::new();
    let mut queue = VecDeque::from([all.clone()]);
    seen.insert(all, ());
    while let Some(gens) = queue.pop_front() {
        for inc in &incidence {
            let next: Vec<bool> = gens.iter().zip(inc).map(|(a, b)| *a && *b).collect();
            if next == gens || !next[..nv].iter().any(|&b| b) {
                continue;
            }
            if seen.insert(next.clone(), ()).is_none() {
                queue.push_back(next);
            }
        }
    }

    let mut faces: Vec<Face> = seen
        .into_keys()
        .map(|gens| {
            let active: BTreeSet<usize> = incidence
                .iter()
                .enumerate()
                .filter(|(_, inc)| gens.iter().zip(inc.iter()).all(|(g, t)| !*g || *t))
                .map(|(i, _)| i)
                .collect();
            let members: Vec<Vec<BigRational>> = v
                .vertices
                .iter()
                .zip(&gens)
                .filter(|(_, &g)| g)
                .map(|(x, _)| x.clone())
                .collect();
            let rays: Vec<Vec<BigInt>> = v
                .rays
                .iter()
                .zip(&gens[nv..])
                .filter(|(_, &g)| g)
                .map(|(r, _)| r.clone())
                .collect();
            let witness = relative_interior_point(&members, &rays).expect("face has a vertex");
            let dim = affine_dim(p, &active);
            Face {
                active,
                dim,
                witness,
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.active.cmp(&b.active)));
    Ok(faces)
}

/// f-vector of a nonempty pointed polyhedron, counting the polyhedron
/// itself and excluding the empty face.
pub fn f_vector(p: &Polyhedron) -> Result<FVector> {
    let faces = face_lattice(p)?;
    let top = faces.iter().map(|f| f.dim).max().expect("at least the polyhedron");
    let mut counts = vec![0usize; top + 1];
    for f in &faces {
        counts[f.dim] += 1;
    }
    let facets: Vec<&Face> = faces.iter().filter(|f| f.dim + 1 == top).collect();
    let is_simple = faces.iter().filter(|f| f.dim == 0).all(|vertex| {
        let on = facets
            .iter()
            .filter(|facet| facet.active.is_subset(&vertex.active))
            .count();
        on == top
    });
    Ok(FVector { counts, is_simple })
}
