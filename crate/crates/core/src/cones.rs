//! The homogenization cone of a polyhedron and its lattice semigroup.
//!
//! For `P = {a_i · p >= b_i}` the cone `C_P` lives in one more dimension,
//! with the extra coordinate as the grading. Its lattice points form a
//! finitely generated graded semigroup; the minimal generators are the
//! Hilbert basis, and the graded pieces are counted by lattice points of
//! the dilates `r · P`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{dot, integer_kernel_basis, primitive, rank_of, rref, to_rational, IntegerMatrix};
use crate::polyhedra::{cone_generators, count_dilate, Polyhedron};
use crate::serial::dec_vec;

/// `{y in R^dim : c · y >= 0 for every row c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    inequalities: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn new(dim: usize, inequalities: Vec<Vec<BigInt>>) -> Result<Self> {
        if inequalities.iter().any(|c| c.len() != dim) {
            return Err(Error::invalid("cone inequality has the wrong length"));
        }
        Ok(Self { dim, inequalities })
    }

    pub fn from_i64<R: AsRef<[i64]>>(dim: usize, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(dim, rows).expect("cone rows have length dim")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Vec<BigInt>] {
        &self.inequalities
    }

    pub fn contains(&self, y: &[BigInt]) -> bool {
        self.inequalities.iter().all(|c| !dot(c, y).is_negative())
    }

    /// Primitive extreme rays in lexicographic order, or `NotPointed`.
    pub fn extreme_rays(&self) -> Result<Vec<Vec<BigInt>>> {
        let g = cone_generators(self.dim, &self.inequalities);
        if !g.lineality.is_empty() {
            return Err(Error::NotPointed);
        }
        let mut rays: Vec<Vec<BigInt>> = g.rays.iter().map(|r| primitive(r)).collect();
        rays.sort();
        rays.dedup();
        Ok(rays)
    }
}

/// The closed cone over `P` at height 1: rows `(a_i, -b_i)` followed by
/// the height row `r >= 0`.
///
/// For empty `P` nothing lies above height 0.
pub fn homogenize(p: &Polyhedron) -> Cone {
    let d = p.dim();
    let mut rows: Vec<Vec<BigInt>> = p
        .inequalities()
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
    Cone {
        dim: d + 1,
        inequalities: rows,
    }
}

/// Placing triangulation of the cone spanned by `rays`, in the given order.
///
/// Each simplex is a list of ray indices. A ray already inside the current
/// cone is skipped; a ray leaving the current span is coned over every
/// simplex; otherwise it is joined to every boundary facet it sees.
fn placing_triangulation(rays: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut span: Vec<Vec<BigInt>> = Vec::new();
    for (idx, r) in rays.iter().enumerate() {
        if simplices.is_empty() {
            simplices.push(vec![idx]);
            span.push(r.clone());
            continue;
        }
        let mut extended = span.clone();
        extended.push(r.clone());
        if rank_of(&extended) > span.len() {
            for s in simplices.iter_mut() {
                s.push(idx);
            }
            span = extended;
            continue;
        }

        let mut facet_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for s in &simplices {
            for k in 0..s.len() {
                *facet_count.entry(without(s, k)).or_default() += 1;
            }
        }
        let mut added = Vec::new();
        for s in &simplices {
            for k in 0..s.len() {
                let facet = without(s, k);
                if facet_count[&facet] != 1 {
                    continue;
                }
                let normal = facet_normal(rays, s, &facet, s[k]);
                if dot(&normal, r).is_negative() {
                    let mut new = facet;
                    new.push(idx);
                    added.push(new);
                }
            }
        }
        simplices.extend(added);
    }
    simplices
}

fn without(s: &[usize], k: usize) -> Vec<usize> {
    let mut f: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
    f.sort_unstable();
    f
}

/// A vector in the span of simplex `s`, orthogonal to `facet` and positive
/// on the opposite ray.
fn facet_normal(rays: &[Vec<BigInt>], s: &[usize], facet: &[usize], opposite: usize) -> Vec<BigInt> {
    let gram: Vec<Vec<BigInt>> = facet
        .iter()
        .map(|&f| s.iter().map(|&j| dot(&rays[j], &rays[f])).collect())
        .collect();
    let k = integer_kernel_basis(&IntegerMatrix::from_rows(s.len(), gram).expect("rectangular"));
    debug_assert_eq!(k.rows(), 1);
    let c = k.row(0);
    let dim = rays[opposite].len();
    let mut n = vec![BigInt::zero(); dim];
    for (coef, &j) in c.iter().zip(s) {
        for (x, y) in n.iter_mut().zip(&rays[j]) {
            *x += coef * y;
        }
    }
    if dot(&n, &rays[opposite]).is_negative() {
        n.iter_mut().for_each(|x| *x = -&*x);
    }
    n
}

/// Lattice points `x = sum lambda_j g_j` with every `lambda_j in [0, 1)`.
fn parallelepiped_points(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = gens.len();
    let dim = gens[0].len();
    // pick k coordinates on which the generators are independent, and
    // invert that k x k block once
    let mut rows: Vec<Vec<BigRational>> = gens.iter().map(|g| to_rational(g)).collect();
    let pivots = rref(&mut rows);
    debug_assert_eq!(pivots.len(), k);
    let mut block: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> =
                pivots.iter().map(|&c| BigRational::from_integer(gens[i][c].clone())).collect();
            row.extend((0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    rref(&mut block);
    let inverse: Vec<Vec<BigRational>> = block.into_iter().map(|r| r[k..].to_vec()).collect();

    let lo: Vec<BigInt> = (0..dim)
        .map(|i| gens.iter().map(|g| g[i].clone().min(BigInt::zero())).sum())
        .collect();
    let hi: Vec<BigInt> = (0..dim)
        .map(|i| gens.iter().map(|g| g[i].clone().max(BigInt::zero())).sum())
        .collect();

    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        // lambda = x[pivots] * inverse
        let lambda: Vec<BigRational> = (0..k)
            .map(|j| {
                pivots
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| BigRational::from_integer(cur[c].clone()) * &inverse[i][j])
                    .sum()
            })
            .collect();
        let in_range = lambda
            .iter()
            .all(|l| !l.is_negative() && *l < BigRational::one());
        if in_range {
            let rebuilt: Vec<BigRational> = (0..dim)
                .map(|c| {
                    lambda
                        .iter()
                        .zip(gens)
                        .map(|(l, g)| l * BigRational::from_integer(g[c].clone()))
                        .sum()
                })
                .collect();
            if rebuilt == to_rational(&cur) {
                out.push(cur.clone());
            }
        }
        let mut j = dim;
        loop {
            if j == 0 {
                return out;
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

/// Minimal generating set of the semigroup `C ∩ Z^dim` of a pointed cone,
/// in lexicographic order.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<Vec<BigInt>>> {
    let rays = cone.extreme_rays()?;
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let mut candidates: BTreeSet<Vec<BigInt>> = rays.iter().cloned().collect();
    for simplex in placing_triangulation(&rays) {
        let gens: Vec<Vec<BigInt>> = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(
            parallelepiped_points(&gens)
                .into_iter()
                .filter(|x| x.iter().any(|c| !c.is_zero())),
        );
    }
    let candidates: Vec<Vec<BigInt>> = candidates.into_iter().collect();
    // x is reducible iff x - y lies in the cone for another candidate y
    let basis = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|y| {
                y != *x && {
                    let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    cone.contains(&diff)
                }
            })
        })
        .cloned()
        .collect();
    Ok(basis)
}

/// A lattice point `(point, degree)` of the homogenization cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GradedSemigroupElement {
    pub degree: u64,
    #[serde(with = "dec_vec")]
    pub point: Vec<BigInt>,
}

impl GradedSemigroupElement {
    pub fn new(point: Vec<BigInt>, degree: u64) -> Self {
        Self { degree, point }
    }

    pub fn from_i64(point: &[i64], degree: u64) -> Self {
        Self::new(point.iter().map(|&x| x.into()).collect(), degree)
    }

    /// The element as a vector of the cone's ambient space.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let mut v = self.point.clone();
        v.push(self.degree.into());
        v
    }
}

/// Hilbert basis of the homogenization cone, ordered by degree and then
/// lexicographically by point.
pub fn graded_generators(p: &Polyhedron) -> Result<Vec<GradedSemigroupElement>> {
    let d = p.dim();
    let mut out: Vec<GradedSemigroupElement> = hilbert_basis(&homogenize(p))?
        .into_iter()
        .map(|v| {
            let degree = v[d].to_u64().ok_or_else(|| Error::invalid("generator degree overflows u64"))?;
            Ok(GradedSemigroupElement::new(v[..d].to_vec(), degree))
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Dimension of the degree-`r` piece of the semigroup ring: the number of
/// lattice points of `r · P`.
pub fn hilbert_function(p: &Polyhedron, r: u64) -> Result<usize> {
    count_dilate(p, r)
}

/// `x^lhs - x^rhs` over the generator list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl Serialize for DegreeRelations {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<[&Vec<u32>; 2]> = self.binomials.iter().map(|b| [&b.lhs, &b.rhs]).collect();
        let mut st = s.serialize_struct("DegreeRelations", 4)?;
        st.serialize_field("binomials", &pairs)?;
        st.serialize_field("hilbert", &self.hilbert)?;
        st.serialize_field("kernel_dim", &self.kernel_dim)?;
        st.serialize_field("monomials", &self.monomials)?;
        st.end()
    }
}

/// Relations among generator monomials in a single degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRelations {
    /// Number of generator monomials of this degree.
    pub monomials: usize,
    /// Lattice points of `r · P`.
    pub hilbert: usize,
    /// `monomials - hilbert`.
    pub kernel_dim: usize,
    /// A spanning set of the relations, lexicographically ordered.
    pub binomials: Vec<Binomial>,
}

/// Generators and per-degree relations of the semigroup ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingPresentation {
    pub generators: Vec<GradedSemigroupElement>,
    pub relations: BTreeMap<u64, DegreeRelations>,
}

fn monomials_of_degree(degrees: &[u64], r: u64) -> Vec<Vec<u32>> {
    fn go(degrees: &[u64], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0u32;
        loop {
            let used = degrees[i] * e as u64;
            if used > left {
                break;
            }
            cur.push(e);
            go(degrees, i + 1, left - used, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if degrees.iter().all(|&d| d > 0) {
        go(degrees, 0, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Generators and a spanning set of binomial relations in degrees
/// `1..=max_degree` for a polyhedron with trivial recession cone.
pub fn relation_space(p: &Polyhedron, max_degree: u64) -> Result<RingPresentation> {
    if !p.has_trivial_recession() {
        return Err(Error::Unbounded);
    }
    let generators = graded_generators(p)?;
    let degrees: Vec<u64> = generators.iter().map(|g| g.degree).collect();
    let vectors: Vec<Vec<BigInt>> = generators.iter().map(GradedSemigroupElement::to_vector).collect();
    let mut relations = BTreeMap::new();
    for r in 1..=max_degree {
        let monomials = monomials_of_degree(&degrees, r);
        let mut by_image: BTreeMap<Vec<BigInt>, Vec<Vec<u32>>> = BTreeMap::new();
        for e in &monomials {
            let mut image = vec![BigInt::zero(); p.dim() + 1];
            for (&k, v) in e.iter().zip(&vectors) {
                for (x, y) in image.iter_mut().zip(v) {
                    *x += y * BigInt::from(k);
                }
            }
            by_image.entry(image).or_default().push(e.clone());
        }
        let mut binomials = Vec::new();
        for group in by_image.values_mut() {
            group.sort_by(|a, b| b.cmp(a));
            for other in &group[1..] {
                binomials.push(Binomial {
                    lhs: group[0].clone(),
                    rhs: other.clone(),
                });
            }
        }
        binomials.sort();
        let hilbert = hilbert_function(p, r)?;
        relations.insert(
            r,
            DegreeRelations {
                monomials: monomials.len(),
                hilbert,
                kernel_dim: monomials.len() - hilbert,
                binomials,
            },
        );
    }
    Ok(RingPresentation {
        generators,
        relations,
    })
}
