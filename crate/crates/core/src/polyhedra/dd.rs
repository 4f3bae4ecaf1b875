//! Double description conversion from `{y : H y >= 0}` to generators.
//!
//! Constraints are inserted in the given order. Lineality directions are
//! carried explicitly until a constraint cuts them; extreme rays are
//! combined pairwise under the combinatorial adjacency test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{dot, primitive};

/// Generators of a polyhedral cone: `cone(rays) + span(lineality)`.
///
/// Rays are primitive but not yet reduced modulo the lineality space.
#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

struct Ray {
    v: Vec<BigInt>,
    // indices of processed constraints tight on this ray, kept sorted
    tight: Vec<usize>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    intersect(small, big).len() == small.len()
}

fn combine(s: &BigInt, x: &[BigInt], t: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    let v: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| s * a + t * b).collect();
    primitive(&v)
}

/// Generators of `{y in R^dim : h . y >= 0 for every h in constraints}`.
pub fn cone_generators(dim: usize, constraints: &[Vec<BigInt>]) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = 1.into();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, h) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut hl0 = dot(h, &l0);
            if hl0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                hl0 = -hl0;
            }
            for l in lineality.iter_mut() {
                let hl = dot(h, l);
                if !hl.is_zero() {
                    *l = combine(&hl0, l, &-hl, &l0);
                }
            }
            for r in rays.iter_mut() {
                let hr = dot(h, &r.v);
                if !hr.is_zero() {
                    r.v = combine(&hl0, &r.v, &-hr, &l0);
                }
                r.tight.push(idx);
            }
            // l0 was orthogonal to every earlier constraint
            rays.push(Ray {
                v: primitive(&l0),
                tight: (0..idx).collect(),
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let mut new_rays: Vec<Ray> = Vec::new();
        for (i, p) in rays.iter().enumerate() {
            if !values[i].is_positive() {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if !values[j].is_negative() {
                    continue;
                }
                let common = intersect(&p.tight, &q.tight);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != i && k != j && is_subset(&common, &r.tight));
                if blocked {
                    continue;
                }
                let v = combine(&values[i], &q.v, &-&values[j], &p.v);
                let mut tight = common;
                tight.push(idx);
                new_rays.push(Ray { v, tight });
            }
        }
        for (r, val) in rays.into_iter().zip(values) {
            if val.is_zero() {
                let mut r = r;
                r.tight.push(idx);
                next.push(r);
            } else if val.is_positive() {
                next.push(r);
            }
        }
        next.extend(new_rays);
        rays = next;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}
