use fitdiv::divisor::Divisor;
use fitdiv::pkd::{
    dk_sigma_invariants, pkd_relators_det, relator_families_agree, vandermonde_identity_holds, verify_invariant_kernel,
    verify_pkd_rank, PkdContext,
};
use fitdiv::CoeffRing;

fn generic(d: usize, trunc: u32) -> Divisor {
    Divisor::tautological("u", d, CoeffRing::Integers, trunc).unwrap()
}

#[test]
fn generic_chains_and_ranks() {
    for d in 1..=5 {
        for k in 0..=d.min(3) {
            let ctx = PkdContext::new(&generic(d, d as u32 + 1), k).unwrap();
            assert!(ctx.check_identities(), "d={d} k={k}");
            assert_eq!(pkd_relators_det(&ctx).unwrap(), ctx.relators_b(), "d={d} k={k}");
            assert!(vandermonde_identity_holds(&ctx).unwrap());
            let up = ctx.ring().trunc();
            assert!(relator_families_agree(&ctx, up).unwrap().holds, "d={d} k={k}");
            let rep = verify_pkd_rank(&ctx, up).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }
}

#[test]
fn generic_invariant_kernel() {
    for (d, k) in [(3, 2), (4, 2), (3, 3), (4, 1)] {
        let ctx = PkdContext::new(&generic(d, 6), k).unwrap();
        let rep = verify_invariant_kernel(&ctx, 6).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}

#[test]
fn orbit_counts_ignore_characteristic() {
    let ctx = PkdContext::new(&generic(3, 6), 2).unwrap();
    for e in 0..=6 {
        let q = dk_sigma_invariants(&ctx, CoeffRing::Rationals, e).unwrap();
        for p in [2, 3] {
            assert_eq!(dk_sigma_invariants(&ctx, CoeffRing::PrimeField(p), e).unwrap(), q);
        }
    }
}


#[test]
fn listed_basis_spans_the_same_lattice() {
    use fitdiv::oracle::GradedLattice;
    use fitdiv::{GradedPoly, RingSpec};
    let base = RingSpec::new(CoeffRing::Integers, vec![], 6).unwrap();
    let ctx = PkdContext::new(&Divisor::point_power(&base, 3), 2).unwrap();
    let q = ctx.pkd_quotient().unwrap();
    let listed = ["1", "x0", "x1", "x0^2", "-x0^2 - x0*x1", "x0^2*x1"];
    let elems: Vec<GradedPoly> =
        listed.iter().map(|s| q.reduce(&GradedPoly::parse(ctx.ring(), s).unwrap()).unwrap()).collect();
    for e in 0..=3 {
        let part: Vec<GradedPoly> = elems.iter().map(|p| p.component(e)).filter(|p| !p.is_zero()).collect();
        let basis = q.degree_basis(e).unwrap();
        let lat = GradedLattice::from_elements(ctx.ring(), e, basis.clone(), &part).unwrap();
        assert_eq!(lat.rank(), basis.len());
        assert!(lat.echelon().is_saturated() && lat.echelon().torsion().is_empty());
        assert_eq!(lat.quotient_rank().free, 0);
    }
}
