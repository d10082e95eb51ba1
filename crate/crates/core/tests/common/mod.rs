#![allow(dead_code)]

use std::sync::Arc;

use fitdiv::divisor::Divisor;
use fitdiv::{CoeffRing, GradedPoly, RingSpec, Scalar};
use rand::rngs::StdRng;
use rand::Rng;

/// `Z[s, t]` with `deg s = 1`, `deg t = 2`.
pub fn st_ring(trunc: u32) -> Arc<RingSpec> {
    RingSpec::with_vars(CoeffRing::Integers, &[("s", 1), ("t", 2)], trunc).unwrap()
}

/// A random homogeneous element of degree `e` with small coefficients.
pub fn random_homogeneous(rng: &mut StdRng, ring: &Arc<RingSpec>, e: u32) -> GradedPoly {
    if e > ring.trunc() {
        return GradedPoly::zero(ring);
    }
    let terms: Vec<_> = ring
        .degree_basis(e)
        .unwrap()
        .into_iter()
        .map(|m| (m, Scalar::from_integer(rng.gen_range(-2i64..=2).into())))
        .collect();
    GradedPoly::from_terms(ring, terms)
}

/// A divisor of degree `d` whose `c_i` is homogeneous of degree `i`.
pub fn random_divisor(rng: &mut StdRng, ring: &Arc<RingSpec>, d: usize) -> Divisor {
    let cs = (1..=d).map(|i| random_homogeneous(rng, ring, i as u32)).collect();
    Divisor::new(ring, cs).unwrap()
}

pub fn random_pair(rng: &mut StdRng, max_degree: usize, max_trunc: u32) -> (Divisor, Divisor) {
    let trunc = rng.gen_range(3..=max_trunc);
    let ring = st_ring(trunc);
    let d0 = rng.gen_range(1..=max_degree);
    let d1 = rng.gen_range(1..=max_degree);
    (random_divisor(rng, &ring, d0), random_divisor(rng, &ring, d1))
}

/// `Z[a_1..a_{d0}, b_1..b_{d1}]`, all of degree one.
pub fn root_ring(d0: usize, d1: usize) -> Arc<RingSpec> {
    let names: Vec<String> = (1..=d0).map(|i| format!("a{i}")).chain((1..=d1).map(|j| format!("b{j}"))).collect();
    let vars: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    RingSpec::with_vars(CoeffRing::Integers, &vars, (d0 * d1) as u32).unwrap()
}

pub fn generic(d: usize, trunc: u32) -> Divisor {
    Divisor::tautological("u", d, CoeffRing::Integers, trunc).unwrap()
}
