use fitdiv::divisor::Divisor;
use fitdiv::exterior::{
    canonical_lift, mu_k, mu_kills_jk, phi_formula_check, phi_map, psi_k, sub_action, sub_action_on_lift,
    tensor_from_poly, tensor_to_poly, verify_phi_iso, wedge_basis, TensorElement, WedgeElement,
};
use fitdiv::oracle::ideal_contains;
use fitdiv::pkd::{invariant_jk_elements, symmetric_to_sub, PkdContext, SubRing};
use fitdiv::{CoeffRing, GradedPoly};

fn generic(d: usize, trunc: u32) -> Divisor {
    Divisor::tautological("u", d, CoeffRing::Integers, trunc).unwrap()
}

#[test]
fn phi_iso_generic() {
    for (d, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (5, 3)] {
        let sub = SubRing::new(&generic(d, 6), k).unwrap();
        let rep = verify_phi_iso(&sub, d, 6).unwrap();
        assert!(rep.passed, "{rep:?}");
        let f = phi_formula_check(&sub, d).unwrap();
        assert_eq!(f.global_sign, Some(1), "{f:?}");
    }
}

#[test]
fn mu_kills_generic() {
    for (d, k) in [(3, 2), (4, 2), (4, 3)] {
        let ctx = PkdContext::new(&generic(d, 6), k).unwrap();
        let rep = mu_kills_jk(&ctx, 6).unwrap();
        assert!(rep.check.holds, "{rep:?}");
    }
}

fn symmetric_samples(ctx: &PkdContext) -> Vec<GradedPoly> {
    let r = ctx.ring();
    let e1 = (0..ctx.k()).fold(GradedPoly::zero(r), |a, i| &a + &ctx.x(i));
    let p2 = (0..ctx.k()).fold(GradedPoly::zero(r), |a, i| &a + &ctx.x(i).pow(2));
    let u1 = GradedPoly::var(r, "u1").unwrap();
    vec![GradedPoly::one(r), e1.clone(), p2, &u1 * &e1]
}

#[test]
fn module_structure() {
    for (d, k) in [(3, 2), (4, 2)] {
        let div = generic(d, 8);
        let ctx = PkdContext::new(&div, k).unwrap();
        let sub = SubRing::new(&div, k).unwrap();
        let base = div.base();
        let dk = ctx.dk_quotient().unwrap();
        for s in symmetric_samples(&ctx) {
            let s_sub = symmetric_to_sub(&ctx, &sub, &s).unwrap();
            for beta in wedge_basis(d, k) {
                let w = WedgeElement::basis(base, d, &beta).unwrap();
                let act = sub_action(&ctx, &s, &w).unwrap();
                // another lift: add a tensor with a repeated factor, and a permuted copy
                let mut t = canonical_lift(&w).scale(&GradedPoly::from_i64(base, 2));
                let mut swapped = beta.clone();
                swapped.swap(0, 1);
                t.add_term(swapped, GradedPoly::one(base)).unwrap();
                t.add_term(vec![0; k], GradedPoly::var(base, "u1").unwrap()).unwrap();
                assert_eq!(mu_k(&t), w);
                assert_eq!(sub_action_on_lift(&ctx, &s, &t).unwrap(), act);
                // cross-module: multiplication on the image of alt
                let lhs = tensor_to_poly(&ctx, &psi_k(&act)).unwrap();
                let rhs = dk.reduce(&s.try_mul(&tensor_to_poly(&ctx, &psi_k(&w)).unwrap()).unwrap()).unwrap();
                assert_eq!(dk.reduce(&lhs).unwrap(), rhs);
                // linearity of phi
                let diff = phi_map(&sub, &act).unwrap().try_sub(&s_sub.try_mul(&phi_map(&sub, &w).unwrap()).unwrap()).unwrap();
                for e in 0..=8 {
                    let part = diff.component(e);
                    if !part.is_zero() {
                        assert!(ideal_contains(sub.ideal(), None, &part).unwrap(), "d={d} k={k} s={s} beta={beta:?}");
                    }
                }
            }
        }
        for e in 0..=5 {
            for s in invariant_jk_elements(&ctx, e).unwrap() {
                for beta in wedge_basis(d, k) {
                    let w = WedgeElement::basis(base, d, &beta).unwrap();
                    assert!(sub_action(&ctx, &s, &w).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn tensor_poly_roundtrip() {
    let div = generic(3, 8);
    let ctx = PkdContext::new(&div, 2).unwrap();
    let t = TensorElement::basis(div.base(), 3, &[2, 1]).unwrap();
    assert_eq!(tensor_from_poly(&ctx, &tensor_to_poly(&ctx, &t).unwrap()).unwrap(), t);
}
