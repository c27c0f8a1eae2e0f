//! Exact numeric substrate: rationals, dense rational matrices, an exact
//! phase-one simplex and a reproducible random source.

mod lp;
mod matrix;
mod rational;
mod rng;

pub use lp::{lp_feasible, Feasibility, Relation};
pub use matrix::{nullspace, rank, rref, rref_with_column_order, EchelonBasis, Rref, RatMatrix};
pub use rational::{
    format_rational, from_f64_exact, parse_rational, product, ratio, sum, serde_rational, serde_rational_vec,
    to_f64, Rational,
};
pub use rng::{derive_seed, random_invertible_matrix, SeededRng};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// `n!` as an exact rational (used for simplex volumes).
pub fn factorial(n: u64) -> Rational {
    let mut acc = dashu_int::UBig::ONE;
    for i in 2..=n {
        acc *= dashu_int::UBig::from(i);
    }
    Rational::from(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Rational::ONE);
        assert_eq!(factorial(4), Rational::from(24));
    }
}
