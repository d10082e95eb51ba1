//! Fixtures shared by the benchmarks.

use fitdiv::divisor::Divisor;
use fitdiv::{CoeffRing, GradedPoly, RingSpec, Variable};

/// Tautological divisors of degrees `d0` and `d1` over one ring, with
/// coefficients `u1..` and `v1..`.
pub fn generic_pair(d0: usize, d1: usize, trunc: u32) -> (Divisor, Divisor) {
    let vars: Vec<Variable> = (1..=d0)
        .map(|i| Variable::new(format!("u{i}"), i as u32))
        .chain((1..=d1).map(|i| Variable::new(format!("v{i}"), i as u32)))
        .collect();
    let ring = RingSpec::new(CoeffRing::Integers, vars, trunc).expect("valid ring");
    let u = (0..d0).map(|i| GradedPoly::var_at(&ring, i)).collect();
    let v = (0..d1).map(|i| GradedPoly::var_at(&ring, d0 + i)).collect();
    (Divisor::new(&ring, u).expect("monic"), Divisor::new(&ring, v).expect("monic"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_shapes() {
        let (a, b) = generic_pair(2, 3, 6);
        assert_eq!((a.degree(), b.degree()), (2, 3));
        assert_eq!(a.base().nvars(), 5);
        assert_eq!(b.coeff(3).to_string(), "v3");
    }
}
