use std::cmp::Ordering;

use proptest::prelude::*;
use starshape::exact::{nullspace, rank, ratio, rref, RatMatrix};
use starshape::monomial::{minimalize, revlex_compare, Colength, ExponentVector, MonomialIdeal};
use starshape::scheme::ProjPoint;
use starshape::{Rational, Shape};

fn exps(k: usize, max: u32) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(0..=max, k).prop_map(ExponentVector::new)
}

fn matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r).prop_map(|rows| RatMatrix::from_i64(&rows).unwrap())
    })
}

/// Artinian ideal: pure powers plus some random generators.
fn artinian(k: usize) -> impl Strategy<Value = MonomialIdeal> {
    (prop::collection::vec(1u32..6, k), prop::collection::vec(exps(k, 4), 0..5)).prop_map(move |(powers, extra)| {
        let pure = powers.iter().enumerate().map(|(i, &p)| ExponentVector::pure_power(k, i, p));
        minimalize(k, pure.chain(extra.into_iter().filter(|e| e.degree() > 0))).unwrap()
    })
}

/// Borel-fixed closure of a set of monomials: keep moving exponent to smaller variables.
fn borel_closure(k: usize, seeds: Vec<ExponentVector>) -> MonomialIdeal {
    let mut all = seeds.clone();
    let mut frontier = seeds;
    while let Some(u) = frontier.pop() {
        for j in 1..k {
            if let Some(v) = u.div_var(j) {
                for i in 0..j {
                    let w = v.times_var(i);
                    if !all.contains(&w) {
                        all.push(w.clone());
                        frontier.push(w);
                    }
                }
            }
        }
    }
    minimalize(k, all).unwrap()
}

proptest! {
    #[test]
    fn revlex_is_a_total_order_refining_degree(a in exps(3, 5), b in exps(3, 5), c in exps(3, 5)) {
        let ab = revlex_compare(&a, &b).unwrap();
        prop_assert_eq!(ab, revlex_compare(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if a.degree() != b.degree() {
            prop_assert_eq!(ab, a.degree().cmp(&b.degree()));
        }
        if ab != Ordering::Greater && revlex_compare(&b, &c).unwrap() != Ordering::Greater {
            prop_assert_ne!(revlex_compare(&a, &c).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        let kernel = nullspace(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Rational::ZERO));
        }
    }

    #[test]
    fn rref_has_identity_pivots_and_same_row_space(m in matrix()) {
        let r = rref(&m);
        for (k, &p) in r.pivot_columns.iter().enumerate() {
            for i in 0..r.pivot_columns.len() {
                let want = if i == k { Rational::ONE } else { Rational::ZERO };
                prop_assert_eq!(r.reduced.get(i, p), &want);
            }
        }
        let mut stacked = m.to_rows();
        stacked.extend(r.reduced.to_rows().into_iter().take(r.rank()));
        prop_assert_eq!(rank(&RatMatrix::from_rows(stacked).unwrap()), rank(&m));
        prop_assert_eq!(r.rank(), rank(&m));
    }

    #[test]
    fn point_normalization_is_idempotent(coords in prop::collection::vec(-9i64..=9, 3)) {
        prop_assume!(coords.iter().any(|&c| c != 0));
        let p = ProjPoint::from_i64(&coords).unwrap();
        let again = ProjPoint::new(p.coords().to_vec()).unwrap();
        prop_assert_eq!(&p, &again);
        let scaled = ProjPoint::new(coords.iter().map(|&c| ratio(-3 * c, 7)).collect()).unwrap();
        prop_assert_eq!(p, scaled);
    }

    #[test]
    fn colength_is_the_sum_of_the_hilbert_function(j in artinian(3)) {
        let Colength::Finite(c) = j.colength() else { panic!("pure powers present") };
        // Every standard monomial lies below the pure powers.
        let top: u32 = (0..3).map(|i| j.pure_power_threshold(i).unwrap()).sum();
        let total: u64 = (0..=top).map(|d| j.hilbert_function(d)).sum();
        prop_assert_eq!(c, total);
        prop_assert_eq!(j.hilbert_function(top + 1), 0);
        prop_assert_eq!(j.standard_monomials().unwrap().len() as u64, c);
    }

    #[test]
    fn membership_is_upward_closed(j in artinian(3), u in exps(3, 6), var in 0usize..3) {
        if j.contains(&u) {
            prop_assert!(j.contains(&u.times_var(var)));
        }
    }

    #[test]
    fn borel_pure_power_thresholds_are_nondecreasing(seeds in prop::collection::vec(exps(3, 3), 1..4)) {
        let seeds: Vec<_> = seeds.into_iter().filter(|e| e.degree() > 0).collect();
        prop_assume!(!seeds.is_empty());
        let mut with_last = seeds.clone();
        with_last.push(ExponentVector::pure_power(3, 2, 6));
        let j = borel_closure(3, with_last);
        prop_assert!(j.is_borel_fixed());
        let t: Vec<u32> = (0..3).map(|i| j.pure_power_threshold(i).unwrap()).collect();
        prop_assert!(t.windows(2).all(|w| w[0] <= w[1]), "{:?}", t);
    }

    #[test]
    fn shape_membership_is_monotone_and_matches_intercepts(
        j in artinian(2),
        q in prop::collection::vec(0i64..=12, 2),
        bump in 0usize..2,
    ) {
        let shape = Shape::from_ideal(&j).unwrap();
        let q: Vec<Rational> = q.iter().map(|&x| ratio(x, 2)).collect();
        if shape.contains(&q).unwrap() {
            let mut up = q.clone();
            up[bump] = up[bump].clone() + Rational::ONE;
            prop_assert!(shape.contains(&up).unwrap());
        }
        for (i, a) in shape.intercepts().unwrap().iter().enumerate() {
            let mut on_axis = vec![Rational::ZERO; 2];
            on_axis[i] = a.clone();
            prop_assert!(shape.contains(&on_axis).unwrap());
            on_axis[i] = a.clone() - ratio(1, 4);
            prop_assert!(!shape.contains(&on_axis).unwrap());
        }
    }
}
