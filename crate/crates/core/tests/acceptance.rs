//! Acceptance checks, one PASS/FAIL line each. Exits nonzero if any fail.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use toricalc_core::cones::{graded_generators, hilbert_basis, hilbert_function, homogenize, relation_space};
use toricalc_core::git::{
    betti, delta, evaluate_invariants, group_from_delta, is_semistable, minimal_unstable_supports,
    proj_equal, LinearizedAction, ProjRelation, Support,
};
use toricalc_core::lattice::IntegerMatrix;
use toricalc_core::polyhedra::{f_vector, lattice_points, vrep, Inequality, Polyhedron};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn degrees(p: &Polyhedron) -> Vec<u64> {
    graded_generators(p).unwrap().iter().map(|g| g.degree).collect()
}

fn one_based(s: &[Support]) -> Vec<Vec<usize>> {
    s.iter().map(Support::one_based).collect()
}

fn ray_and_orthants() -> Check {
    let gens = graded_generators(&Polyhedron::orthant(1)).unwrap();
    let got: Vec<(Vec<BigInt>, u64)> = gens.iter().map(|g| (g.point.clone(), g.degree)).collect();
    ensure!(got == vec![(ints(&[1]), 0), (ints(&[0]), 1)], "ray generators {got:?}");
    for d in 1..=3 {
        let trivial = LinearizedAction::new(d, IntegerMatrix::zeros(0, d), vec![BigInt::zero(); d]).unwrap();
        let p = delta(&trivial).unwrap();
        ensure!(p == Polyhedron::orthant(d), "trivial group in dim {d} gives {p:?}");
        let mut deg = degrees(&p);
        deg.sort();
        let mut want = vec![0; d];
        want.push(1);
        ensure!(deg == want, "orthant {d}: degrees {deg:?}");
    }
    Ok(())
}

fn unit_interval() -> Check {
    let p = Polyhedron::interval(0, 1);
    ensure!(degrees(&p) == vec![1, 1], "interval degrees {:?}", degrees(&p));
    let rel = relation_space(&p, 4).unwrap();
    for (deg, r) in &rel.relations {
        ensure!(r.kernel_dim == 0, "kernel in degree {deg} is {}", r.kernel_dim);
    }
    ensure!(rel.relations.len() == 4, "degrees covered {:?}", rel.relations.keys());
    for r in 0..=5 {
        let h = hilbert_function(&p, r).unwrap();
        ensure!(h == r as usize + 1, "h({r}) = {h}");
    }
    Ok(())
}

fn dilated_interval() -> Check {
    let unit = Polyhedron::interval(0, 1);
    for m in 1..=4u64 {
        let p = Polyhedron::interval(0, m as i64);
        for r in 0..=4u64 {
            let h = hilbert_function(&p, r).unwrap();
            ensure!(h == (m * r + 1) as usize, "[0,{m}] h({r}) = {h}");
            let v = hilbert_function(&unit, m * r).unwrap();
            ensure!(h == v, "[0,{m}] h({r}) = {h} but [0,1] h({}) = {v}", m * r);
        }
    }
    Ok(())
}

fn square() -> Check {
    let p = Polyhedron::cube(2);
    ensure!(degrees(&p) == vec![1; 4], "square degrees {:?}", degrees(&p));
    let rel = relation_space(&p, 2).unwrap();
    let pts: Vec<Vec<BigInt>> = rel.generators.iter().map(|g| g.point.clone()).collect();
    let two = &rel.relations[&2];
    ensure!(two.kernel_dim == 1, "degree-2 kernel {}", two.kernel_dim);
    ensure!(two.binomials.len() == 1, "binomials {:?}", two.binomials);
    let b = &two.binomials[0];
    let side = |e: &[u32]| -> BTreeSet<Vec<BigInt>> {
        e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| pts[i].clone()).collect()
    };
    let diag: BTreeSet<_> = [ints(&[0, 0]), ints(&[1, 1])].into();
    let anti: BTreeSet<_> = [ints(&[1, 0]), ints(&[0, 1])].into();
    let (l, r) = (side(&b.lhs), side(&b.rhs));
    ensure!((l == diag && r == anti) || (l == anti && r == diag), "binomial {b:?}");
    for r in 0..=4u64 {
        let h = hilbert_function(&p, r).unwrap();
        ensure!(h == ((r + 1) * (r + 1)) as usize, "h({r}) = {h}");
    }
    let act = square_action();
    ensure!(delta(&act).unwrap() == p, "square action polyhedron");
    let uns = one_based(&minimal_unstable_supports(&act).unwrap());
    ensure!(uns == vec![vec![1, 2], vec![3, 4]], "unstable {uns:?}");
    let b = betti(&p).unwrap();
    ensure!(b.numbers == vec![1, 2, 1], "betti {:?}", b.numbers);
    Ok(())
}

fn scalar_cases() -> Check {
    for n in [1usize, 3] {
        let all: Vec<usize> = (1..=n).collect();

        let case1 = scalar_action(n, 1);
        let p = delta(&case1).unwrap();
        ensure!(p.is_empty(), "n={n} alpha=1 not empty");
        let pos = graded_generators(&p).unwrap().iter().filter(|g| g.degree > 0).count();
        ensure!(pos == 0, "n={n} alpha=1 has {pos} positive-degree generators");
        let uns = one_based(&minimal_unstable_supports(&case1).unwrap());
        ensure!(uns == vec![Vec::<usize>::new()], "n={n} alpha=1 unstable {uns:?}");

        let case2 = scalar_action(n, 0);
        let p = delta(&case2).unwrap();
        let pts = lattice_points(&p).unwrap();
        ensure!(pts == vec![vec![BigInt::zero(); n - 1]], "n={n} alpha=0 points {pts:?}");
        let gens = graded_generators(&p).unwrap();
        ensure!(
            gens.len() == 1 && gens[0].degree == 1 && gens[0].point.iter().all(Zero::is_zero),
            "n={n} alpha=0 generators {gens:?}"
        );
        ensure!(minimal_unstable_supports(&case2).unwrap().is_empty(), "n={n} alpha=0 has unstable points");

        let case3 = scalar_action(n, -1);
        let p3 = delta(&case3).unwrap();
        ensure!(degrees(&p3) == vec![1; n], "n={n} alpha=-1 degrees {:?}", degrees(&p3));
        let uns = one_based(&minimal_unstable_supports(&case3).unwrap());
        ensure!(uns == vec![all.clone()], "n={n} alpha=-1 unstable {uns:?}");
        let b = betti(&p3).unwrap();
        ensure!(b.numbers == vec![1; n], "n={n} alpha=-1 betti {:?}", b.numbers);
        if n == 3 {
            let v = vrep(&p3);
            ensure!(v.vertices.len() == 3 && v.rays.is_empty(), "not a triangle: {v:?}");
            let d = |i: usize, j: usize| &v.vertices[i][j] - &v.vertices[0][j];
            let det = d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0);
            ensure!(det == BigRational::one() || det == -BigRational::one(), "edge determinant {det}");
            ensure!(v.vertices.iter().flatten().all(|x| x.is_integer()), "non-integral vertex");
        }

        let case4 = scalar_action(n, -2);
        let p4 = delta(&case4).unwrap();
        ensure!(p4 == p3.dilate(2), "n={n} alpha=-2 is not the doubled simplex");
        let want = if n == 3 { 6 } else { 1 };
        ensure!(degrees(&p4) == vec![1; want], "n={n} alpha=-2 degrees {:?}", degrees(&p4));
        let h = hilbert_function(&p4, 1).unwrap();
        ensure!(h == want, "n={n} alpha=-2 h(1) = {h}");
        let uns = one_based(&minimal_unstable_supports(&case4).unwrap());
        ensure!(uns == vec![all], "n={n} alpha=-2 unstable {uns:?}");
    }
    Ok(())
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn betti_suite() -> Check {
    let mut family: Vec<(String, Polyhedron)> = Vec::new();
    for d in 1..=3 {
        family.push((format!("simplex {d}"), Polyhedron::standard_simplex(d)));
        family.push((format!("cube {d}"), Polyhedron::cube(d)));
    }
    let pieces = [Polyhedron::standard_simplex(1), Polyhedron::standard_simplex(2), Polyhedron::cube(2)];
    for (i, a) in pieces.iter().enumerate() {
        for (j, b) in pieces.iter().enumerate() {
            if a.dim() + b.dim() <= 4 {
                family.push((format!("product {i}x{j}"), a.product(b)));
            }
        }
    }
    for (name, p) in &family {
        let b = betti(p).unwrap().numbers;
        let f0 = f_vector(p).unwrap().counts[0] as i64;
        ensure!(b[0] == 1, "{name}: b0 = {}", b[0]);
        ensure!(b.iter().sum::<i64>() == f0, "{name}: sum {b:?} vs f0 {f0}");
    }
    for a in &pieces {
        for b in &pieces {
            if a.dim() + b.dim() > 4 {
                continue;
            }
            let (ba, bb) = (betti(a).unwrap().numbers, betti(b).unwrap().numbers);
            let prod = betti(&a.product(b)).unwrap().numbers;
            ensure!(prod == poly_mul(&ba, &bb), "Kunneth: {ba:?} x {bb:?} gave {prod:?}");
        }
    }
    Ok(())
}

fn invariant_count_oracle() -> Check {
    for (idx, act) in action_corpus(40).iter().enumerate() {
        for r in 0..=3 {
            let brute = count_invariants_brute(act, r, 4);
            let via = lattice_points(&bounded_slice(act, r, 4)).unwrap().len();
            ensure!(brute == via, "action {idx} {act:?} r={r}: brute {brute} vs lattice {via}");
        }
    }
    Ok(())
}

fn semistability_oracle() -> Check {
    for (idx, act) in action_corpus(40).iter().enumerate() {
        let masks = invariant_support_masks(act, 6, 8);
        let n = act.n();
        for s in 0u32..(1 << n) {
            let support = Support::new((0..n).filter(|i| s >> i & 1 == 1).collect());
            let lib = is_semistable(act, &support).unwrap();
            let brute = brute_semistable(&masks, s);
            ensure!(lib == brute, "action {idx} {act:?} support {:?}: library {lib}, search {brute}", support.one_based());
        }
    }
    Ok(())
}

fn redundant_inequality() -> Check {
    let sq = Polyhedron::cube(2);
    let extra = sq.with_inequality(Inequality::from_i64(&[1, 0], -1)).unwrap();
    ensure!(graded_generators(&sq).unwrap() == graded_generators(&extra).unwrap(), "generators differ");
    for r in 0..=4 {
        ensure!(hilbert_function(&sq, r).unwrap() == hilbert_function(&extra, r).unwrap(), "h({r}) differs");
    }
    let (a, b) = (relation_space(&sq, 3).unwrap(), relation_space(&extra, 3).unwrap());
    for d in 1..=3u64 {
        ensure!(a.relations[&d].kernel_dim == b.relations[&d].kernel_dim, "kernel dim differs in degree {d}");
    }
    let (g4, g5) = (group_from_delta(&sq).unwrap(), group_from_delta(&extra).unwrap());
    for s in 0u32..(1 << 5) {
        let support = Support::new((0..5).filter(|i| s >> i & 1 == 1).collect());
        let with = is_semistable(&g5, &support).unwrap();
        let expect = if s & 0b10000 != 0 {
            false
        } else {
            is_semistable(&g4, &support).unwrap()
        };
        ensure!(with == expect, "support {:?}: {with} vs {expect}", support.one_based());
    }
    let uns = one_based(&minimal_unstable_supports(&g5).unwrap());
    ensure!(uns == vec![vec![1, 2], vec![3, 4], vec![5]], "unstable {uns:?}");
    Ok(())
}

fn hilbert_basis_suite() -> Check {
    for (idx, p) in polytope_corpus(20, SEED ^ 0x4b).iter().enumerate() {
        let cone = homogenize(p);
        let basis = hilbert_basis(&cone).map_err(|e| format!("cone {idx}: {e}"))?;
        let d = p.dim();
        let height = |x: &Vec<BigInt>| -> i64 { small(&x[d]) };
        let top = basis.iter().map(height).max().unwrap_or(0).max(3);
        let mut layers: BTreeMap<i64, Vec<Vec<BigInt>>> = BTreeMap::new();
        for h in 1..=top {
            let pts = lattice_points(&p.dilate(h as u64)).unwrap();
            let lifted = pts.into_iter().map(|mut x| {
                x.push(h.into());
                x
            });
            layers.insert(h, lifted.collect());
        }
        let basis_set: BTreeSet<Vec<BigInt>> = basis.iter().cloned().collect();
        for b in &basis {
            ensure!(cone.contains(b), "cone {idx}: {b:?} outside the cone");
            ensure!(height(b) >= 1, "cone {idx}: {b:?} has height zero");
            for h in 1..height(b) {
                for y in &layers[&h] {
                    let rest: Vec<BigInt> = b.iter().zip(y).map(|(u, v)| u - v).collect();
                    ensure!(!cone.contains(&rest), "cone {idx}: {b:?} = {y:?} + {rest:?}");
                }
            }
        }
        let mut decomposes: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for h in 1..=3 {
            for x in &layers[&h] {
                let ok = basis_set.contains(x)
                    || basis.iter().any(|b| {
                        let rest: Vec<BigInt> = x.iter().zip(b).map(|(u, v)| u - v).collect();
                        height(b) < h && decomposes.contains(&rest)
                    });
                ensure!(ok, "cone {idx}: {x:?} is not a sum of basis elements");
                decomposes.insert(x.clone());
            }
        }
    }
    Ok(())
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn separation() -> Check {
    let act = square_action();
    let points: Vec<Vec<BigRational>> = vec![
        vec![rat(1), rat(2), rat(3), rat(4)],
        vec![rat(1), rat(1), rat(1), rat(1)],
        vec![frac(1, 2), rat(-3), rat(2), frac(5, 7)],
        vec![rat(0), rat(1), rat(2), rat(0)],
    ];
    let scalars = [(rat(2), rat(5)), (frac(-1, 3), rat(7)), (frac(2, 9), frac(-4, 5))];
    for x in &points {
        let vx = evaluate_invariants(&act, x, 2).unwrap();
        for (l, m) in &scalars {
            let y = vec![&x[0] * l, &x[1] * l, &x[2] * m, &x[3] * m];
            let vy = evaluate_invariants(&act, &y, 2).unwrap();
            let rel = proj_equal(&vx, &vy).unwrap();
            ensure!(rel.is_equal(), "x = {x:?}, scalars {l}, {m}: {rel:?}");
        }
    }
    let ones = evaluate_invariants(&act, &points[1], 1).unwrap();
    let other = evaluate_invariants(&act, &[rat(1), rat(1), rat(1), rat(2)], 1).unwrap();
    let rel = proj_equal(&ones, &other).unwrap();
    ensure!(rel == ProjRelation::Distinct, "(1,1,1,1) vs (1,1,1,2): {rel:?}");
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("ray and orthant generators", ray_and_orthants),
        ("unit interval", unit_interval),
        ("dilated interval and Veronese", dilated_interval),
        ("unit square", square),
        ("scalar actions in all four linearization cases", scalar_cases),
        ("Betti numbers from f-vectors", betti_suite),
        ("invariant monomial counts against weight-zero scan", invariant_count_oracle),
        ("semistability against invariant search", semistability_oracle),
        ("redundant inequality invariance", redundant_inequality),
        ("Hilbert basis completeness and irreducibility", hilbert_basis_suite),
        ("separation by invariants", separation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
