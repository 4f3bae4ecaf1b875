//! Linearized subtorus actions on `C^n` and their GIT quotients.
//!
//! `G ⊆ T^n` is given by cocharacters: the rows of an integer matrix `W`,
//! so that `G` acts coordinate-wise. The linearization `alpha` makes `G`
//! act on the extra variable `t` through the character `lambda^alpha`.
//! Everything about the quotient is read off the polyhedron
//! `{p : p · a_i >= alpha_i}`, where `a_i` is the image of the `i`-th
//! coordinate vector in `Z^n / rowlattice(W)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cones::graded_generators;
use crate::error::{Error, Result};
use crate::lattice::{dot, hnf, integer_kernel_basis, snf, IntegerMatrix};
use crate::polyhedra::{face, f_vector, vrep, Inequality, Polyhedron};
use crate::serial::{dec_vec, format_rational, DecInt};

/// A subtorus `G ⊆ T^n` with a linearization of its action on the trivial
/// bundle over `C^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedAction {
    n: usize,
    weights: IntegerMatrix,
    linearization: Vec<BigInt>,
}

impl LinearizedAction {
    /// Validates shapes and linear independence of the weight rows.
    /// Saturation is checked later, by [`quotient_projection`].
    pub fn new(n: usize, weights: IntegerMatrix, linearization: Vec<BigInt>) -> Result<Self> {
        let weights = if weights.rows() == 0 && weights.cols() != n {
            IntegerMatrix::zeros(0, n)
        } else {
            weights
        };
        if weights.cols() != n {
            return Err(Error::invalid(format!(
                "weights have {} columns but n = {n}",
                weights.cols()
            )));
        }
        if linearization.len() != n {
            return Err(Error::invalid(format!(
                "linearization has length {} but n = {n}",
                linearization.len()
            )));
        }
        if weights.rank() != weights.rows() {
            return Err(Error::invalid("weight rows are linearly dependent"));
        }
        Ok(Self {
            n,
            weights,
            linearization,
        })
    }

    pub fn from_i64<R: AsRef<[i64]>>(n: usize, weights: &[R], linearization: &[i64]) -> Result<Self> {
        let w = IntegerMatrix::from_rows(
            n,
            weights
                .iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )?;
        Self::new(n, w, linearization.iter().map(|&x| x.into()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &IntegerMatrix {
        &self.weights
    }

    pub fn linearization(&self) -> &[BigInt] {
        &self.linearization
    }
}

impl Serialize for LinearizedAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let lin: Vec<DecInt> = self.linearization.iter().cloned().map(DecInt).collect();
        let mut st = s.serialize_struct("LinearizedAction", 3)?;
        st.serialize_field("linearization", &lin)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("weights", &self.weights)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LinearizedAction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: usize,
            weights: IntegerMatrix,
            #[serde(with = "dec_vec")]
            linearization: Vec<BigInt>,
        }
        let raw = Raw::deserialize(d)?;
        LinearizedAction::new(raw.n, raw.weights, raw.linearization).map_err(serde::de::Error::custom)
    }
}

/// The images `a_i` of the coordinate vectors in the quotient lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    /// `n x d`; row `i` is `a_i`.
    pub a: IntegerMatrix,
    pub d: usize,
}

/// Computes `a_1, ..., a_n` in `Z^n / rowlattice(W) ≅ Z^d`.
///
/// The isomorphism comes from the Smith form of `W`, then is normalized so
/// that the columns of `A` are in Hermite form; the result depends only on
/// the row lattice of `W`.
pub fn quotient_projection(action: &LinearizedAction) -> Result<QuotientData> {
    let w = &action.weights;
    let k = w.rows();
    let n = action.n;
    let s = snf(w);
    let factors = s.invariant_factors();
    if factors.iter().any(|f| !f.is_one()) {
        return Err(Error::TorsionQuotient(factors.iter().map(ToString::to_string).collect()));
    }
    let v = s.v.expect("smith form carries a column transform");
    let raw = v.columns(k..n);
    let a = hnf(&raw.transpose()).d.transpose();
    debug_assert!(w.mul(&a).expect("shapes agree").is_zero());
    Ok(QuotientData { a, d: n - k })
}

/// The polyhedron `{p in R^d : p · a_i >= alpha_i}`, one inequality per
/// coordinate in coordinate order.
pub fn delta(action: &LinearizedAction) -> Result<Polyhedron> {
    let q = quotient_projection(action)?;
    delta_from(&q, action)
}

fn delta_from(q: &QuotientData, action: &LinearizedAction) -> Result<Polyhedron> {
    let ineqs = (0..action.n)
        .map(|i| Inequality::new(q.a.row(i).to_vec(), action.linearization[i].clone()))
        .collect();
    Polyhedron::new(q.d, ineqs)
}

/// Rebuilds the group from a presentation of a polyhedron: `W` is the
/// integer kernel of the transposed normal matrix, `alpha` the offsets.
pub fn group_from_delta(p: &Polyhedron) -> Result<LinearizedAction> {
    let a = p.normals();
    if a.rank() != p.dim() {
        return Err(Error::NonSpanning);
    }
    let w = integer_kernel_basis(&a.transpose());
    LinearizedAction::new(p.len(), w, p.offsets())
}

/// `x_1^{e_1} ... x_n^{e_n} t^t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    #[serde(with = "dec_vec")]
    pub x: Vec<BigInt>,
    pub t: u64,
}

impl Monomial {
    /// Value at `x` with `t = 1`.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        let mut value = BigRational::one();
        for (e, xi) in self.x.iter().zip(point) {
            if e.is_zero() {
                continue;
            }
            let e = e.to_i32().ok_or_else(|| Error::invalid("exponent too large to evaluate"))?;
            value *= xi.pow(e);
        }
        Ok(value)
    }
}

fn monomial_for(q: &QuotientData, action: &LinearizedAction, p: &[BigInt], r: u64) -> Result<Monomial> {
    if p.len() != q.d {
        return Err(Error::invalid(format!("point has length {} but d = {}", p.len(), q.d)));
    }
    let rb = BigInt::from(r);
    let mut x = Vec::with_capacity(action.n);
    for i in 0..action.n {
        let e = dot(p, q.a.row(i)) - &rb * &action.linearization[i];
        if e.is_negative() {
            return Err(Error::NotInSemigroup {
                index: i + 1,
                value: e.to_string(),
            });
        }
        x.push(e);
    }
    Ok(Monomial { x, t: r })
}

/// The `G`-invariant monomial attached to a lattice point `(p, r)` of the
/// homogenization cone: exponents `p · a_i - r alpha_i`.
pub fn invariant_monomial(action: &LinearizedAction, p: &[BigInt], r: u64) -> Result<Monomial> {
    let q = quotient_projection(action)?;
    monomial_for(&q, action, p, r)
}

/// A set of coordinates, stored 0-based and written 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support(BTreeSet<usize>);

impl Support {
    pub fn new(indices: BTreeSet<usize>) -> Self {
        Self(indices)
    }

    pub fn from_zero_based(indices: &[usize]) -> Self {
        Self(indices.iter().copied().collect())
    }

    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        indices
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::invalid("support indices are 1-based"))
            })
            .collect::<Result<BTreeSet<_>>>()
            .map(Self)
    }

    /// Coordinates at which a point vanishes.
    pub fn of_point(x: &[BigRational]) -> Self {
        Self(x.iter().enumerate().filter(|(_, v)| v.is_zero()).map(|(i, _)| i).collect())
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Support {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

fn check_support(support: &Support, n: usize) -> Result<()> {
    match support.0.iter().find(|&&i| i >= n) {
        Some(i) => Err(Error::invalid(format!("support index {} exceeds n = {n}", i + 1))),
        None => Ok(()),
    }
}

/// A point with vanishing set `A` is semistable iff the faces `F_i`,
/// `i in A`, have a common point.
pub fn is_semistable(action: &LinearizedAction, support: &Support) -> Result<bool> {
    check_support(support, action.n)?;
    let p = delta(action)?;
    Ok(face(&p, &support.0)?.is_some())
}

/// Inclusion-minimal supports whose faces do not meet. The unstable locus
/// is the union of the coordinate subspaces they cut out.
pub fn minimal_unstable_supports(action: &LinearizedAction) -> Result<Vec<Support>> {
    let n = action.n;
    if n > 24 {
        return Err(Error::invalid("support enumeration is limited to n <= 24"));
    }
    let p = delta(action)?;
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut minimal: Vec<u32> = Vec::new();
    for m in masks {
        if minimal.iter().any(|&u| u & !m == 0) {
            continue;
        }
        let set: BTreeSet<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        if face(&p, &set)?.is_none() {
            minimal.push(m);
        }
    }
    let mut out: Vec<Support> = minimal
        .into_iter()
        .map(|m| Support((0..n).filter(|i| m >> i & 1 == 1).collect()))
        .collect();
    out.sort_by_key(Support::one_based);
    Ok(out)
}

/// Coefficients of `sum_i f_i (q - 1)^i` in powers of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    /// `numbers[i]` is `b_{2i}`.
    pub numbers: Vec<i64>,
    /// False for unbounded polyhedra, where the numbers carry no claimed
    /// topological meaning.
    pub bounded: bool,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Even Betti numbers of the toric variety of a simple polyhedron.
pub fn betti(p: &Polyhedron) -> Result<BettiNumbers> {
    let f = f_vector(p)?;
    if !f.is_simple {
        return Err(Error::NotSimple);
    }
    let d = f.dim();
    let numbers = (0..=d)
        .map(|j| {
            (j..=d)
                .map(|i| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * f.counts[i] as i64 * binomial(i, j)
                })
                .sum()
        })
        .collect();
    Ok(BettiNumbers {
        numbers,
        bounded: vrep(p).is_bounded(),
    })
}

/// Number of torus orbits of each complex dimension, read off the
/// f-vector.
pub fn orbit_census(p: &Polyhedron) -> Result<BTreeMap<usize, usize>> {
    let f = f_vector(p)?;
    Ok(f.counts.into_iter().enumerate().collect())
}

/// One generator of the invariant ring evaluated at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: BigRational,
    pub degree: u64,
}

impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InvariantValue", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("value", &format_rational(&self.value))?;
        st.end()
    }
}

/// Evaluates the generators of degree at most `max_degree` at `x`, with
/// `t = 1`, in the order of [`graded_generators`].
pub fn evaluate_invariants(
    action: &LinearizedAction,
    x: &[BigRational],
    max_degree: u64,
) -> Result<Vec<InvariantValue>> {
    if x.len() != action.n {
        return Err(Error::invalid(format!("point has length {} but n = {}", x.len(), action.n)));
    }
    let q = quotient_projection(action)?;
    let p = delta_from(&q, action)?;
    graded_generators(&p)?
        .into_iter()
        .filter(|g| g.degree <= max_degree)
        .map(|g| {
            let m = monomial_for(&q, action, &g.point, g.degree)?;
            Ok(InvariantValue {
                value: m.evaluate(x)?,
                degree: g.degree,
            })
        })
        .collect()
}

/// Outcome of comparing two evaluated points in `Proj`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjRelation {
    /// `w_j = s^{deg_j} v_j` for every generator.
    Equal(BigRational),
    Distinct,
    /// The values are consistent with a common scalar over the algebraic
    /// closure, but no rational scalar exists.
    NoRationalWitness,
}

impl ProjRelation {
    pub fn is_equal(&self) -> bool {
        matches!(self, ProjRelation::Equal(_))
    }
}

fn rational_root(u: &BigRational, g: u32) -> Option<BigRational> {
    let root = |x: &BigInt| {
        let r = x.nth_root(g);
        (r.pow(g) == *x).then_some(r)
    };
    let n = root(&u.numer().abs())?;
    let d = root(u.denom())?;
    Some(BigRational::new(n, d))
}

fn pow_signed(q: &BigRational, e: i64) -> Result<BigRational> {
    let e = i32::try_from(e).map_err(|_| Error::invalid("degree too large"))?;
    Ok(q.pow(e))
}

/// Decides whether two evaluated points have the same image in `Proj`,
/// accepting only rational scalars as witnesses.
pub fn proj_equal(v: &[InvariantValue], w: &[InvariantValue]) -> Result<ProjRelation> {
    if v.len() != w.len() || v.iter().zip(w).any(|(a, b)| a.degree != b.degree) {
        return Err(Error::invalid("evaluations are not over the same generators"));
    }
    let all_zero = |xs: &[InvariantValue]| xs.iter().all(|x| x.degree == 0 || x.value.is_zero());
    if all_zero(v) || all_zero(w) {
        return Err(Error::AllZero);
    }
    let mut ratios: Vec<(u64, BigRational)> = Vec::new();
    for (a, b) in v.iter().zip(w) {
        if a.degree == 0 {
            if a.value != b.value {
                return Ok(ProjRelation::Distinct);
            }
            continue;
        }
        match (a.value.is_zero(), b.value.is_zero()) {
            (true, true) => {}
            (false, false) => ratios.push((a.degree, &b.value / &a.value)),
            _ => return Ok(ProjRelation::Distinct),
        }
    }

    // s^g for g = gcd of the degrees, via Bezout coefficients
    let (first_deg, first_q) = ratios[0].clone();
    let mut g = first_deg as i64;
    let mut u = first_q;
    for (deg, q) in &ratios[1..] {
        let e = g.extended_gcd(&(*deg as i64));
        u = pow_signed(&u, e.x)? * pow_signed(q, e.y)?;
        g = e.gcd;
    }
    let g = u32::try_from(g).map_err(|_| Error::invalid("degree too large"))?;
    let mut candidates = Vec::new();
    if let Some(r) = rational_root(&u, g) {
        if u.is_positive() {
            candidates.push(r.clone());
            if g % 2 == 0 {
                candidates.push(-r);
            }
        } else if g % 2 == 1 {
            candidates.push(-r);
        }
    }
    for s in candidates {
        let fits = ratios
            .iter()
            .map(|(deg, q)| pow_signed(&s, *deg as i64).map(|p| p == *q))
            .collect::<Result<Vec<bool>>>()?;
        if fits.into_iter().all(|b| b) {
            return Ok(ProjRelation::Equal(s));
        }
    }
    let lcm = ratios.iter().fold(1i64, |l, (d, _)| l.lcm(&(*d as i64)));
    let powers = ratios
        .iter()
        .map(|(d, q)| pow_signed(q, lcm / *d as i64))
        .collect::<Result<Vec<_>>>()?;
    if powers.windows(2).all(|p| p[0] == p[1]) {
        Ok(ProjRelation::NoRationalWitness)
    } else {
        Ok(ProjRelation::Distinct)
    }
}
