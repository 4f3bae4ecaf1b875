//! Rational feasibility of linear inequality systems by Fourier–Motzkin
//! elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `coeffs · x >= rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Self {
        Self { coeffs, rhs }
    }
}

enum Normalized {
    Trivial,
    Contradiction,
    Kept(Vec<BigInt>, BigInt),
}

fn normalize(c: Constraint) -> Normalized {
    if c.coeffs.iter().all(Zero::is_zero) {
        return if c.rhs.is_positive() {
            Normalized::Contradiction
        } else {
            Normalized::Trivial
        };
    }
    let g = c
        .coeffs
        .iter()
        .chain(std::iter::once(&c.rhs))
        .fold(BigInt::zero(), |g, x| g.gcd(x));
    let coeffs = c.coeffs.iter().map(|x| x / &g).collect();
    Normalized::Kept(coeffs, c.rhs / g)
}

/// Working set keyed by coefficient vector; only the tightest rhs is kept.
type System = BTreeMap<Vec<BigInt>, BigInt>;

fn insert(system: &mut System, c: Constraint) -> bool {
    match normalize(c) {
        Normalized::Trivial => true,
        Normalized::Contradiction => false,
        Normalized::Kept(coeffs, rhs) => {
            system
                .entry(coeffs)
                .and_modify(|r| {
                    if rhs > *r {
                        *r = rhs.clone();
                    }
                })
                .or_insert(rhs);
            true
        }
    }
}

/// Decides whether some rational `x` satisfies every constraint.
///
/// Equalities are expressed by the caller as two opposite inequalities.
pub fn is_feasible(constraints: impl IntoIterator<Item = Constraint>) -> bool {
    let mut system = System::new();
    let mut vars = 0;
    for c in constraints {
        vars = vars.max(c.coeffs.len());
        let mut c = c;
        c.coeffs.resize(vars, BigInt::zero());
        if !insert(&mut system, c) {
            return false;
        }
    }
    // pad earlier rows if a later row was longer
    let mut padded = System::new();
    for (mut coeffs, rhs) in system {
        coeffs.resize(vars, BigInt::zero());
        if !insert(&mut padded, Constraint::new(coeffs, rhs)) {
            return false;
        }
    }
    let mut system = padded;

    let mut remaining: Vec<usize> = (0..vars).collect();
    while !remaining.is_empty() {
        // eliminate the variable producing the fewest new rows
        let (slot, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let pos = system.keys().filter(|c| c[v].is_positive()).count();
                let neg = system.keys().filter(|c| c[v].is_negative()).count();
                pos * neg
            })
            .expect("remaining is nonempty");
        remaining.swap_remove(slot);

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = System::new();
        for (coeffs, rhs) in system {
            if coeffs[var].is_positive() {
                pos.push((coeffs, rhs));
            } else if coeffs[var].is_negative() {
                neg.push((coeffs, rhs));
            } else {
                next.insert(coeffs, rhs);
            }
        }
        for (pc, pr) in &pos {
            for (nc, nr) in &neg {
                let wp = -&nc[var];
                let wn = &pc[var];
                let coeffs: Vec<BigInt> = pc
                    .iter()
                    .zip(nc)
                    .map(|(x, y)| x * &wp + y * wn)
                    .collect();
                let rhs = pr * &wp + nr * wn;
                if !insert(&mut next, Constraint::new(coeffs, rhs)) {
                    return false;
                }
            }
        }
        system = next;
    }
    // every surviving row has zero coefficients and was checked on insert
    true
}
