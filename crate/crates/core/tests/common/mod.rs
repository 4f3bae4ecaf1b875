//! Brute-force oracles and fixed corpora shared by the integration tests.
//! Nothing here calls into the code paths it is used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toricalc_core::git::{quotient_projection, LinearizedAction};
use toricalc_core::polyhedra::{Inequality, Polyhedron};

pub const SEED: u64 = 0x7011_c0de;

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| x.into()).collect()
}

pub fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("corpus entries are small")
}

pub fn weight_rows(act: &LinearizedAction) -> Vec<Vec<i64>> {
    let w = act.weights();
    (0..w.rows()).map(|i| w.row(i).iter().map(small).collect()).collect()
}

pub fn alpha(act: &LinearizedAction) -> Vec<i64> {
    act.linearization().iter().map(small).collect()
}

/// Calls `f` on every vector in `[0, max]^n`.
pub fn for_each_exponent(n: usize, max: i64, mut f: impl FnMut(&[i64])) {
    let mut e = vec![0i64; n];
    loop {
        f(&e);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if e[i] < max {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// `x^e t^r` is fixed by `G` iff every cocharacter pairs to zero with
/// the total weight `e + r alpha`.
pub fn is_invariant(w: &[Vec<i64>], alpha: &[i64], e: &[i64], r: i64) -> bool {
    w.iter().all(|row| {
        row.iter()
            .zip(e.iter().zip(alpha))
            .map(|(wi, (ei, ai))| wi * (ei + r * ai))
            .sum::<i64>()
            == 0
    })
}

/// Invariant monomials of degree `r` with every exponent at most `max`.
pub fn count_invariants_brute(act: &LinearizedAction, r: i64, max: i64) -> usize {
    let (w, a) = (weight_rows(act), alpha(act));
    let mut count = 0;
    for_each_exponent(act.n(), max, |e| {
        if is_invariant(&w, &a, e, r) {
            count += 1;
        }
    });
    count
}

/// Vanishing-set masks complementary to the supports of invariant
/// monomials of positive degree, within the given bounds. A coordinate
/// set `A` is semistable iff some invariant avoids it.
pub fn invariant_support_masks(act: &LinearizedAction, max_degree: i64, max_exp: i64) -> Vec<u32> {
    let (w, a) = (weight_rows(act), alpha(act));
    let mut masks = std::collections::BTreeSet::new();
    for r in 1..=max_degree {
        for_each_exponent(act.n(), max_exp, |e| {
            if is_invariant(&w, &a, e, r) {
                let m = e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u32, |m, (i, _)| m | 1 << i);
                masks.insert(m);
            }
        });
    }
    masks.into_iter().collect()
}

pub fn brute_semistable(masks: &[u32], support: u32) -> bool {
    masks.iter().any(|m| m & support == 0)
}

/// `{p : 0 <= p · a_i - r alpha_i <= max}`, the exponent box pulled back
/// to the quotient lattice.
pub fn bounded_slice(act: &LinearizedAction, r: i64, max: i64) -> Polyhedron {
    let q = quotient_projection(act).unwrap();
    let mut rows = Vec::new();
    for (i, ai) in act.linearization().iter().enumerate() {
        let a = q.a.row(i).to_vec();
        let lo = ai * BigInt::from(r);
        rows.push(Inequality::new(a.clone(), lo.clone()));
        rows.push(Inequality::new(a.iter().map(|x| -x).collect(), -(lo + max)));
    }
    Polyhedron::new(q.d, rows).unwrap()
}

pub fn cp1() -> LinearizedAction {
    LinearizedAction::from_i64(2, &[[1, 1]], &[-1, 0]).unwrap()
}

pub fn square_action() -> LinearizedAction {
    LinearizedAction::from_i64(4, &[[1, 1, 0, 0], [0, 0, 1, 1]], &[0, -1, 0, -1]).unwrap()
}

/// Scalar action on `C^n` with `t` of weight `alpha`.
pub fn scalar_action(n: usize, alpha: i64) -> LinearizedAction {
    let mut lin = vec![0i64; n];
    lin[0] = alpha;
    LinearizedAction::from_i64(n, &[vec![1i64; n]], &lin).unwrap()
}

/// Hand-picked actions followed by pseudo-random ones with `n <= 4`,
/// weights and linearization entries in `[-2, 2]`, keeping only those
/// with a torsion-free quotient.
pub fn action_corpus(random: usize) -> Vec<LinearizedAction> {
    let mut out = vec![cp1(), square_action()];
    for n in [1, 3] {
        for a in [1, 0, -1, -2] {
            out.push(scalar_action(n, a));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut made = 0;
    while made < random {
        let n = rng.gen_range(1..=4usize);
        let k = rng.gen_range(0..=n.min(2));
        let w: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let lin: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let Ok(act) = LinearizedAction::from_i64(n, &w, &lin) else { continue };
        if quotient_projection(&act).is_err() {
            continue;
        }
        out.push(act);
        made += 1;
    }
    out
}

/// Small bounded polyhedra in dimension 1 or 2: a random box cut by up to
/// two random half-planes, kept when nonempty.
pub fn polytope_corpus(count: usize, seed: u64) -> Vec<Polyhedron> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(1..=2usize);
        let mut p = Polyhedron::point();
        for _ in 0..d {
            let hi = rng.gen_range(1..=3);
            p = p.product(&Polyhedron::interval(0, hi));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let a: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            let b = rng.gen_range(-4..=1);
            p = p.with_inequality(Inequality::from_i64(&a, b)).unwrap();
        }
        if !p.is_empty() {
            out.push(p);
        }
    }
    out
}
