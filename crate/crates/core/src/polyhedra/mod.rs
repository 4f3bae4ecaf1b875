//! Rational polyhedra given by integer inequalities `a · p >= b`.
//!
//! A [`Polyhedron`] is its presentation: the same body may be described by
//! many inequality lists, and index-based operations ([`face`]) depend on
//! the list. The empty polyhedron is an ordinary value.

mod dd;
mod faces;
pub mod fm;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{dot, integer_kernel_basis, primitive_from_rational, to_rational, IntegerMatrix};
use crate::serial::{dec_int, dec_vec, format_rational};

pub use dd::{cone_generators, ConeGenerators};
pub use faces::{face, f_vector, face_lattice, Face, FVector};

/// One row `a · p >= b` of an H-representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "dec_vec")]
    pub a: Vec<BigInt>,
    #[serde(with = "dec_int")]
    pub b: BigInt,
}

impl Inequality {
    pub fn new(a: Vec<BigInt>, b: BigInt) -> Self {
        Self { a, b }
    }

    pub fn from_i64(a: &[i64], b: i64) -> Self {
        Self::new(a.iter().map(|&x| x.into()).collect(), b.into())
    }

    /// `a · p - b`, the slack at a rational point.
    pub fn slack(&self, p: &[BigRational]) -> BigRational {
        let lhs: BigRational = self
            .a
            .iter()
            .zip(p)
            .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
            .sum();
        lhs - BigRational::from_integer(self.b.clone())
    }

    pub fn slack_int(&self, p: &[BigInt]) -> BigInt {
        dot(&self.a, p) - &self.b
    }

    fn fm(&self) -> fm::Constraint {
        fm::Constraint::new(self.a.clone(), self.b.clone())
    }

    fn reversed(&self) -> Self {
        Self::new(self.a.iter().map(|x| -x).collect(), -&self.b)
    }
}

/// `{p in R^dim : a_i · p >= b_i for all i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Polyhedron {
    dim: usize,
    inequalities: Vec<Inequality>,
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            dim: usize,
            inequalities: Vec<Inequality>,
        }
        let raw = Raw::deserialize(d)?;
        Polyhedron::new(raw.dim, raw.inequalities).map_err(serde::de::Error::custom)
    }
}

impl Polyhedron {
    pub fn new(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        if let Some((i, ineq)) = inequalities.iter().enumerate().find(|(_, q)| q.a.len() != dim) {
            return Err(Error::invalid(format!(
                "inequality {i} has {} coefficients in dimension {dim}",
                ineq.a.len()
            )));
        }
        Ok(Self { dim, inequalities })
    }

    /// Literal constructor; panics on a dimension mismatch.
    pub fn from_i64(dim: usize, rows: &[(&[i64], i64)]) -> Self {
        let ineqs = rows.iter().map(|(a, b)| Inequality::from_i64(a, *b)).collect();
        Self::new(dim, ineqs).expect("inequality length matches dimension")
    }

    /// The interval `[lo, hi]` as `p >= lo, -p >= -hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Self::from_i64(1, &[(&[1], lo), (&[-1], -hi)])
    }

    /// `[0,1]^d`, ordered `p_1 >= 0, -p_1 >= -1, p_2 >= 0, ...`.
    pub fn cube(d: usize) -> Self {
        (0..d).fold(Self::point(), |acc, _| acc.product(&Self::interval(0, 1)))
    }

    /// Standard simplex `{p >= 0, -sum p >= -1}`.
    pub fn standard_simplex(d: usize) -> Self {
        let mut ineqs: Vec<Inequality> = (0..d).map(|i| unit_inequality(d, i, 1, 0)).collect();
        ineqs.push(Inequality::new(vec![BigInt::from(-1); d], BigInt::from(-1)));
        Self::new(d, ineqs).expect("simplex rows have length d")
    }

    /// The nonnegative orthant of `R^d`.
    pub fn orthant(d: usize) -> Self {
        let ineqs = (0..d).map(|i| unit_inequality(d, i, 1, 0)).collect();
        Self::new(d, ineqs).expect("orthant rows have length d")
    }

    /// The single point of `R^0`.
    pub fn point() -> Self {
        Self {
            dim: 0,
            inequalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn with_inequality(&self, ineq: Inequality) -> Result<Self> {
        let mut ineqs = self.inequalities.clone();
        ineqs.push(ineq);
        Self::new(self.dim, ineqs)
    }

    /// Inequality normals as the rows of an `n x dim` matrix.
    pub fn normals(&self) -> IntegerMatrix {
        let rows = self.inequalities.iter().map(|q| q.a.clone()).collect();
        IntegerMatrix::from_rows(self.dim, rows).expect("rows have length dim")
    }

    pub fn offsets(&self) -> Vec<BigInt> {
        self.inequalities.iter().map(|q| q.b.clone()).collect()
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        self.inequalities.iter().all(|q| !q.slack(p).is_negative())
    }

    pub fn contains_integer(&self, p: &[BigInt]) -> bool {
        self.inequalities.iter().all(|q| !q.slack_int(p).is_negative())
    }

    pub fn is_empty(&self) -> bool {
        !fm::is_feasible(self.inequalities.iter().map(Inequality::fm))
    }

    /// `m · P`, obtained by scaling every offset. `m = 0` yields
    /// `{a_i · p >= 0}`, the height-0 slice of the homogenization.
    pub fn dilate(&self, m: u64) -> Self {
        let m = BigInt::from(m);
        let ineqs = self
            .inequalities
            .iter()
            .map(|q| Inequality::new(q.a.clone(), &q.b * &m))
            .collect();
        Self {
            dim: self.dim,
            inequalities: ineqs,
        }
    }

    /// `P x Q`, with P's inequalities first.
    pub fn product(&self, other: &Self) -> Self {
        let dim = self.dim + other.dim;
        let left = self.inequalities.iter().map(|q| {
            let mut a = q.a.clone();
            a.resize(dim, BigInt::zero());
            Inequality::new(a, q.b.clone())
        });
        let right = other.inequalities.iter().map(|q| {
            let mut a = vec![BigInt::zero(); self.dim];
            a.extend(q.a.iter().cloned());
            Inequality::new(a, q.b.clone())
        });
        Self {
            dim,
            inequalities: left.chain(right).collect(),
        }
    }

    /// `{v : a_i · v >= 0}`.
    pub fn recession_cone(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Ok(self.dilate(0))
    }

    /// Preimage under `x -> M x + s`. For unimodular `M` this is the lattice
    /// image `M^{-1} (P - s)`.
    pub fn affine_preimage(&self, m: &IntegerMatrix, shift: &[BigInt]) -> Result<Self> {
        if m.rows() != self.dim || shift.len() != self.dim {
            return Err(Error::invalid("affine map does not match the dimension"));
        }
        let ineqs = self
            .inequalities
            .iter()
            .map(|q| {
                let a = (0..m.cols())
                    .map(|j| (0..m.rows()).map(|i| &q.a[i] * m.get(i, j)).sum())
                    .collect();
                Inequality::new(a, &q.b - dot(&q.a, shift))
            })
            .collect();
        Self::new(m.cols(), ineqs)
    }

    /// True when the recession cone is `{0}`, so every dilate is bounded.
    /// This is checked on the H-data and also holds for empty polyhedra.
    pub fn has_trivial_recession(&self) -> bool {
        let rows: Vec<Vec<BigInt>> = self.inequalities.iter().map(|q| q.a.clone()).collect();
        let g = cone_generators(self.dim, &rows);
        g.rays.is_empty() && g.lineality.is_empty()
    }
}

fn unit_inequality(d: usize, i: usize, coeff: i64, b: i64) -> Inequality {
    let mut a = vec![BigInt::zero(); d];
    a[i] = coeff.into();
    Inequality::new(a, b.into())
}

/// `conv(vertices) + cone(rays) + span(lineality)`.
///
/// With lineality present, `vertices` holds one representative of each
/// minimal face, reduced to vanish on the pivot columns of the lineality
/// basis; rays are reduced the same way. The polyhedron is empty exactly
/// when `vertices` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VRepresentation {
    pub vertices: Vec<Vec<BigRational>>,
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

impl VRepresentation {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
}

impl Serialize for VRepresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let fmt_int = |v: &Vec<Vec<BigInt>>| -> Vec<Vec<String>> {
            v.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
        };
        let vertices: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|p| p.iter().map(format_rational).collect())
            .collect();
        let mut st = s.serialize_struct("VRepresentation", 3)?;
        st.serialize_field("lineality", &fmt_int(&self.lineality))?;
        st.serialize_field("rays", &fmt_int(&self.rays))?;
        st.serialize_field("vertices", &vertices)?;
        st.end()
    }
}

/// Reduces `v` modulo the lineality basis (in Hermite form) so that it
/// vanishes on every pivot column.
fn reduce_mod_lineality(v: &mut [BigRational], lineality: &IntegerMatrix) {
    for i in 0..lineality.rows() {
        let row = lineality.row(i);
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if v[c].is_zero() {
            continue;
        }
        let f = &v[c] / BigRational::from_integer(row[c].clone());
        for (x, l) in v.iter_mut().zip(row) {
            *x -= &f * BigRational::from_integer(l.clone());
        }
    }
}

/// Exact vertex/ray/lineality enumeration by double description on the
/// homogenized system.
pub fn vrep(p: &Polyhedron) -> VRepresentation {
    let d = p.dim;
    let mut rows: Vec<Vec<BigInt>> = p
        .inequalities
        .iter()
        .map(|q| {
            let mut row = q.a.clone();
            row.push(-&q.b);
            row
        })
        .collect();
    let mut height = vec![BigInt::zero(); d + 1];
    height[d] = BigInt::one();
    rows.push(height);
    let gens = cone_generators(d + 1, &rows);

    let has_point = gens.rays.iter().any(|r| r[d].is_positive());
    if !has_point {
        return VRepresentation::default();
    }
    let lineality = integer_kernel_basis(&p.normals());

    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for g in &gens.rays {
        if g[d].is_positive() {
            let t = BigRational::from_integer(g[d].clone());
            let mut v: Vec<BigRational> = g[..d]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()) / &t)
                .collect();
            reduce_mod_lineality(&mut v, &lineality);
            vertices.push(v);
        } else {
            let mut v = to_rational(&g[..d]);
            reduce_mod_lineality(&mut v, &lineality);
            if v.iter().any(|x| !x.is_zero()) {
                rays.push(primitive_from_rational(&v));
            }
        }
    }
    vertices.sort();
    vertices.dedup();
    rays.sort();
    rays.dedup();
    VRepresentation {
        vertices,
        rays,
        lineality: lineality.row_vecs(),
    }
}

/// Integer points of a bounded polyhedron, in lexicographic order.
pub fn lattice_points(p: &Polyhedron) -> Result<Vec<Vec<BigInt>>> {
    let v = vrep(p);
    if v.is_empty() {
        return Ok(Vec::new());
    }
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    let d = p.dim;
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for j in 0..d {
        let min = v.vertices.iter().map(|x| &x[j]).min().expect("nonempty");
        let max = v.vertices.iter().map(|x| &x[j]).max().expect("nonempty");
        lo.push(min.ceil().to_integer());
        hi.push(max.floor().to_integer());
    }
    let mut out = Vec::new();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(out);
    }
    let mut cur = lo.clone();
    loop {
        if p.contains_integer(&cur) {
            out.push(cur.clone());
        }
        // odometer, last coordinate fastest, which keeps the output sorted
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                cur[j + 1..].clone_from_slice(&lo[j + 1..]);
                break;
            }
        }
    }
}

/// Number of lattice points in `r · P` for a polyhedron whose recession
/// cone is trivial; `r = 0` counts the origin alone.
pub(crate) fn count_dilate(p: &Polyhedron, r: u64) -> Result<usize> {
    if !p.has_trivial_recession() {
        return Err(Error::Unbounded);
    }
    if r == 0 {
        return Ok(1);
    }
    Ok(lattice_points(&p.dilate(r))?.len())
}

/// Indices of inequalities tight at a rational point.
pub(crate) fn tight_at(p: &Polyhedron, x: &[BigRational]) -> BTreeSet<usize> {
    p.inequalities
        .iter()
        .enumerate()
        .filter(|(_, q)| q.slack(x).is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Rational dimension of `{p : a_i · p = b_i, i in active}` inside `R^dim`.
pub(crate) fn affine_dim(p: &Polyhedron, active: &BTreeSet<usize>) -> usize {
    let rows: Vec<Vec<BigInt>> = active.iter().map(|&i| p.inequalities[i].a.clone()).collect();
    p.dim - crate::lattice::rank_of(&rows)
}
