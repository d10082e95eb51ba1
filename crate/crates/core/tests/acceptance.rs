//! The acceptance suite: each criterion runs once, in order, against its
//! time limit, and prints one PASS/FAIL line.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fitdiv::divisor::*;
use fitdiv::exterior::{check_cross, phi_formula_check, verify_phi_iso};
use fitdiv::fitting::{fitting_ideal, stabilize};
use fitdiv::oracle::{ideal_contains, ideal_equal};
use fitdiv::pkd::*;
use fitdiv::universal::*;
use fitdiv::{CoeffRing, GradedPoly, IdealGens, PolyMatrix, Presentation, RingSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;

type Outcome = Result<String, String>;

/// Id, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn worked_example() -> Outcome {
    let base = RingSpec::with_vars(CoeffRing::Integers, &[("a", 2)], 3).unwrap();
    let a = GradedPoly::var(&base, "a").unwrap();
    let d0 = Divisor::new(&base, vec![GradedPoly::zero(&base), -&a]).unwrap();
    let d1 = Divisor::point_power(&base, 2);
    let rank = intersection_rank(&d0, &d1).unwrap();
    ensure(rank == 1, format!("intersection rank {rank}"))?;
    ensure(!int_obstruction_ideal(&d0, &d1, 1).unwrap().is_nonzero(), "I_0 is nonzero")?;
    let i1 = int_obstruction_ideal(&d0, &d1, 2).unwrap();
    let expect = IdealGens::new(&base, vec![a.clone()]).unwrap();
    ensure(ideal_equal(&i1, &expect, None, 3).unwrap().holds, "I_1 differs from (a)")?;
    // a common point x = c of both divisors forces a = 0
    let sub = base.extend(&[fitdiv::Variable::new("c", 1)]).unwrap();
    let c = GradedPoly::var(&sub, "c").unwrap();
    let rels: Vec<GradedPoly> = [&d0, &d1].iter().map(|d| d.equation().embed(&sub).unwrap().eval(&c)).collect();
    let pi_a = a.embed(&sub).unwrap();
    ensure(ideal_contains(&IdealGens::new(&sub, rels).unwrap(), None, &pi_a).unwrap(), "a survives on Sub_1")?;
    Ok("rank 1, I_0 = 0, I_1 = (a), a = 0 on the common point".into())
}

fn golden_matrices() -> Outcome {
    let ring = RingSpec::with_vars(
        CoeffRing::Integers,
        &[("c01", 1), ("c02", 2), ("c11", 1), ("c12", 2), ("c13", 3)],
        6,
    )
    .unwrap();
    let v = |s: &str| GradedPoly::parse(&ring, s).unwrap();
    let d0 = Divisor::new(&ring, vec![v("c01"), v("c02")]).unwrap();
    let d1 = Divisor::new(&ring, vec![v("c11"), v("c12"), v("c13")]).unwrap();
    let display = [
        ["c02", "0", "0", "c13", "0"],
        ["c01", "c02", "0", "c12", "c13"],
        ["1", "c01", "c02", "c11", "c12"],
        ["0", "1", "c01", "1", "c11"],
        ["0", "0", "1", "0", "1"],
    ];
    let expect = PolyMatrix::from_fn(&ring, 5, 5, |i, j| v(display[i][j]));
    ensure(presentation_sylvester(&d0, &d1).unwrap().matrix() == &expect, "Sylvester matrix differs")?;

    let u = generic(3, 8);
    let vars: Vec<fitdiv::Variable> = (1..=5).map(|j| fitdiv::Variable::new(format!("v{j}"), j as u32)).collect();
    let ring = u.base().extend(&vars).unwrap();
    let e0 = u.embed(&ring).unwrap();
    let e1 = Divisor::new(&ring, (0..5).map(|j| GradedPoly::var_at(&ring, 3 + j)).collect()).unwrap();
    let c = laurent_coeffs(&e0, &e1, 8).unwrap();
    let display: [[i32; 5]; 5] = [[3, 4, 5, 6, 7], [2, 3, 4, 5, 6], [1, 2, 3, 4, 5], [0, 1, 2, 3, 4], [-1, 0, 1, 2, 3]];
    let shown = PolyMatrix::from_fn(&ring, 5, 5, |i, j| {
        let k = display[i][j];
        if k < 0 {
            GradedPoly::zero(&ring)
        } else {
            c[k as usize].clone()
        }
    });
    let phi = presentation_laurent(&e0, &e1).unwrap();
    ensure(phi.matrix().reversed() == shown, "Laurent matrix differs from the reversed display")?;
    Ok("Sylvester (2,3) entrywise; Laurent (3,5) after reversing rows and columns".into())
}

/// Random homogeneous `θ` compatible with generator degrees `0..p0`.
fn random_theta(rng: &mut StdRng, p: &Presentation, q0: usize) -> PolyMatrix {
    let ring = p.ring().clone();
    let shifts: Vec<u32> = (0..q0).map(|_| p.p0() as u32 + rng.gen_range(0..2)).collect();
    let mut m = PolyMatrix::zeros(&ring, p.p0(), q0);
    for i in 0..p.p0() {
        for (l, &e) in shifts.iter().enumerate() {
            m.set(i, l, random_homogeneous(rng, &ring, e - i as u32));
        }
    }
    m
}

fn presentation_independence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut ideals_checked = 0;
    for _ in 0..20 {
        let (d0, d1) = random_pair(&mut rng, 4, 6);
        let n = d0.base().trunc();
        let mu = presentation_mu(&d0, &d1).unwrap();
        let sylvester = presentation_sylvester(&d0, &d1).unwrap();
        let others = [
            presentation_pushout(&d0, &d1).unwrap(),
            sylvester.clone(),
            presentation_mu_mirror(&d0, &d1).unwrap(),
            presentation_laurent(&d0, &d1).unwrap(),
        ];
        let q0 = rng.gen_range(1..=2);
        let stabilized = [
            stabilize(&mu, q0, Some(&random_theta(&mut rng, &mu, q0))).unwrap(),
            stabilize(&sylvester, q0, Some(&random_theta(&mut rng, &sylvester, q0))).unwrap(),
        ];
        let top = d0.degree() + d1.degree();
        for j in 0..=top {
            let reference = fitting_ideal(&mu, j);
            for p in others.iter().chain(&stabilized) {
                let check = ideal_equal(&fitting_ideal(p, j), &reference, None, n).unwrap();
                ensure(
                    check.holds,
                    format!("I_{j} differs for degrees ({}, {}) at degree {:?}", d0.degree(), d1.degree(), check.first_failing_degree),
                )?;
                ideals_checked += 1;
            }
        }
    }
    Ok(format!("20 pairs, {ideals_checked} ideal comparisons"))
}

fn resultant_formula() -> Outcome {
    let mut signs = BTreeMap::new();
    for d0 in 1..=3 {
        for d1 in 1..=3 {
            let ring = root_ring(d0, d1);
            let roots = |p: &str, n: usize| -> Vec<GradedPoly> {
                (1..=n).map(|i| GradedPoly::var(&ring, &format!("{p}{i}")).unwrap()).collect()
            };
            let (a, b) = (roots("a", d0), roots("b", d1));
            let res = resultant(&Divisor::from_roots(&ring, &a).unwrap(), &Divisor::from_roots(&ring, &b).unwrap()).unwrap();
            let mut prod = GradedPoly::one(&ring);
            for ai in &a {
                for bj in &b {
                    prod = &prod * &(ai - bj);
                }
            }
            let sign = if res == prod {
                1
            } else if res == -&prod {
                -1
            } else {
                return Err(format!("({d0},{d1}): resultant is not ±∏(a_i - b_j)"));
            };
            signs.insert((d0, d1), sign);
        }
    }
    let eps = signs[&(1, 1)];
    for (&(d0, d1), &s) in &signs {
        let expect = if (d0 * d1) % 2 == 1 { eps } else { -eps };
        ensure(s == expect, format!("({d0},{d1}): sign {s} is not (-1)^(d0 d1)"))?;
    }
    let uniform = signs.values().all(|&s| s == eps);
    Ok(format!(
        "resultant = ∏(b_j - a_i) = (-1)^(d0 d1) ∏(a_i - b_j) on all 9 pairs; one sign fixed at (1,1) covers {}",
        if uniform { "every pair" } else { "odd d0 d1 only" }
    ))
}

const SETS: [(usize, usize, usize); 6] = [(1, 1, 1), (2, 2, 1), (2, 2, 2), (2, 3, 1), (3, 2, 1), (3, 3, 2)];

fn int_basis() -> Outcome {
    for (d0, d1, r) in SETS {
        let s = UniversalSetup::new(d0, d1, r, 6).unwrap();
        let rep =
            verify_int_basis(&s, 6, &[CoeffRing::Integers, CoeffRing::PrimeField(2), CoeffRing::PrimeField(3)]).unwrap();
        ensure(rep.passed, format!("({d0},{d1},{r}) first discrepancy {:?}", rep.first_discrepancy))?;
    }
    Ok("6 parameter sets, degrees 0..=6, over Z, F_2, F_3".into())
}

fn pi_split_mono() -> Outcome {
    for (d0, d1, r) in SETS {
        let s = UniversalSetup::new(d0, d1, r, 6).unwrap();
        ensure(pi_star_kills_ideal(&s).unwrap(), format!("({d0},{d1},{r}) π* does not kill the ideal"))?;
        let rep = verify_pi_split_mono(&s, 6).unwrap();
        ensure(rep.passed, format!("({d0},{d1},{r}) π* not injective"))?;
    }
    Ok("6 parameter sets, degrees 0..=6".into())
}

fn poincare_identity() -> Outcome {
    for (d0, d1, r) in [(2, 2, 1), (3, 3, 1), (3, 3, 2)] {
        let rep = verify_ps_identity(d0, d1, r, 10).unwrap();
        ensure(rep.holds, format!("({d0},{d1},{r}) fails at degree {:?}", rep.first_failing_degree))?;
        ensure(!rep.reversed_holds, format!("({d0},{d1},{r}) both orientations agree"))?;
        ensure(verify_ps_anchor(d0, d1, 10).holds, format!("anchor fails for ({d0},{d1})"))?;
    }
    Ok("PS(Int_r) - PS(Int_{r+1}) = w^{(d0-r)(d1-r)} PS(Sub_r) to degree 10; anchor holds".into())
}

fn pkd_ranks() -> Outcome {
    let mut cases = 0;
    for d in 1..=5 {
        for k in 0..=d.min(3) {
            let ctx = PkdContext::new(&generic(d, d as u32 + 1), k).unwrap();
            let up = ctx.ring().trunc();
            ensure(ctx.check_identities(), format!("d={d} k={k}: division chain identities"))?;
            let rep = verify_pkd_rank(&ctx, up).unwrap();
            ensure(rep.passed && rep.basis_size == (0..k).map(|i| d - i).product(), format!("d={d} k={k}: rank"))?;
            ensure(relator_families_agree(&ctx, up).unwrap().holds, format!("d={d} k={k}: relator families"))?;
            ensure(vandermonde_identity_holds(&ctx).unwrap(), format!("d={d} k={k}: v_j b_j != det B_j"))?;
            ensure(pkd_relators_det(&ctx).unwrap() == ctx.relators_b(), format!("d={d} k={k}: det quotient"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases (d <= 5, k <= 3), degrees up to d + 1"))
}

fn pkd_example() -> Outcome {
    let base = RingSpec::new(CoeffRing::Integers, vec![], 6).unwrap();
    let ctx = PkdContext::new(&Divisor::point_power(&base, 3), 2).unwrap();
    let size = pkd_basis(&ctx).unwrap().len();
    ensure(size == 6, format!("basis size {size}"))?;
    let dims = |k: CoeffRing| -> Vec<usize> { (0..=6).map(|e| sigma_invariants(&ctx, k, e).unwrap()).collect() };
    let q = dims(CoeffRing::Rationals);
    let f2 = dims(CoeffRing::PrimeField(2));
    ensure(q.iter().sum::<usize>() == 3, format!("Q invariants {q:?}"))?;
    ensure(f2.iter().sum::<usize>() == 4, format!("F_2 invariants {f2:?}"))?;
    ensure(f2[3] == q[3] + 1 && (0..=6).all(|e| e == 3 || f2[e] == q[e]), "extra F_2 class not in degree 3")?;
    Ok(format!("basis 6; invariants by degree Q {q:?}, F_2 {f2:?}"))
}

fn prop_cross() -> Outcome {
    let mut tensors = 0;
    for d in 1..=4 {
        for k in 1..=3 {
            let rep = check_cross(d, k).unwrap();
            ensure(rep.commutes, format!("d={d} k={k}: ψμ != alt"))?;
            ensure(rep.triangular, format!("d={d} k={k}: not unitriangular on A_0"))?;
            tensors += rep.tensors;
        }
    }
    Ok(format!("{tensors} basis tensors, d <= 4, k <= 3"))
}

fn phi_iso() -> Outcome {
    for (d, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (5, 3)] {
        let sub = SubRing::new(&generic(d, 6), k).unwrap();
        let rep = verify_phi_iso(&sub, d, 6).unwrap();
        ensure(rep.passed, format!("(d,k) = ({d},{k}) not an isomorphism"))?;
        let f = phi_formula_check(&sub, d).unwrap();
        ensure(f.global_sign == Some(1), format!("(d,k) = ({d},{k}) sign not uniform: {:?}", f.unsigned_signs))?;
        ensure(f.alternating_sign.is_some(), format!("(d,k) = ({d},{k}) alternating convention not uniform"))?;
    }
    Ok("5 cases to degree 6; φ(x^β) = (-1)^{|β|-k(k-1)/2} det(c_{k+i-γ_j}), global sign +1".into())
}

fn invariant_kernel() -> Outcome {
    for (d, k) in [(3, 2), (4, 2)] {
        let ctx = PkdContext::new(&generic(d, 6), k).unwrap();
        let rep = verify_invariant_kernel(&ctx, 6).unwrap();
        ensure(rep.passed, format!("(d,k) = ({d},{k}): {:?}", rep.rows.iter().find(|r| !r.lattices_equal)))?;
    }
    Ok("(3,2), (4,2) to degree 6 over Z".into())
}

fn thom_porteous() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7e11);
    let mut checked = 0;
    for _ in 0..15 {
        let (d0, d1) = random_pair(&mut rng, 4, 6);
        let mu = presentation_mu(&d0, &d1).unwrap();
        for r in 0..=d1.degree() {
            let det = thom_porteous_minor(&d0, &d1, r).unwrap();
            let ideal = fitting_ideal(&mu, r);
            ensure(
                ideal_contains(&ideal, None, &det).unwrap(),
                format!("det Ψ_{r} outside I_{r} for degrees ({}, {})", d0.degree(), d1.degree()),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} minors over 15 random pairs"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "worked example over Z[a]", 1, worked_example),
        (2, "golden presentation matrices", 1, golden_matrices),
        (3, "presentation independence of Fitting ideals", 60, presentation_independence),
        (4, "resultant product formula", 5, resultant_formula),
        (5, "monomial basis of Int_r", 300, int_basis),
        (6, "π* split monomorphism", 120, pi_split_mono),
        (7, "Poincaré series identity", 5, poincare_identity),
        (8, "P_k D rank and relators", 120, pkd_ranks),
        (9, "P_2 of 3[0]", 1, pkd_example),
        (10, "ψ_k μ_k = alt_k", 30, prop_cross),
        (11, "φ isomorphism and determinant formula", 120, phi_iso),
        (12, "invariant kernel", 120, invariant_kernel),
        (13, "Thom-Porteous membership", 60, thom_porteous),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (status, detail) = match outcome {
            Ok(_) if elapsed > limit => ("FAIL", "over the time limit".to_string()),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        println!("[{status}] {id:>2} {name} ({:.2}s, limit {}s): {detail}", elapsed.as_secs_f64(), limit.as_secs());
        if status == "FAIL" {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
