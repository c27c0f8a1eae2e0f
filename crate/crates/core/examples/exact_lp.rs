//! The exact linear algebra underneath: rational RREF, kernels and the
//! phase-one simplex deciding Newton polytope membership.

use starshape::exact::{lp_feasible, nullspace, ratio, rref_with_column_order, Feasibility, Relation};
use starshape::monomial::ExponentVector;
use starshape::{MonomialIdeal, RatMatrix, Rational, Shape};

fn main() -> starshape::Result<()> {
    let a = RatMatrix::from_i64(&[vec![2, 4, 1], vec![1, 2, 3]])?;
    let e = rref_with_column_order(&a, &[2, 1, 0])?;
    println!("pivots scanning columns 2,1,0: {:?}", e.pivot_columns);
    println!("{:?}", e.reduced);
    for v in nullspace(&a) {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("kernel vector ({})", shown.join(", "));
    }

    // x + y >= 1, x - y = 1/3, x <= 1/2.
    let lp = RatMatrix::from_i64(&[vec![1, 1], vec![1, -1], vec![1, 0]])?;
    let b = [Rational::ONE, ratio(1, 3), ratio(1, 2)];
    match lp_feasible(&lp, &b, &[Relation::Ge, Relation::Eq, Relation::Le], true)? {
        Feasibility::Feasible(x) => println!("feasible at ({}, {})", x[0], x[1]),
        Feasibility::Infeasible => println!("infeasible"),
    }

    let j = MonomialIdeal::new(2, [[3, 0], [2, 2], [1, 3], [0, 4]].map(|g| ExponentVector::new(g.to_vec())))?;
    let shape = Shape::from_ideal(&j)?;
    for q in [[1, 3], [2, 1], [3, 1]] {
        let q: Vec<Rational> = q.iter().map(|&c| Rational::from(c)).collect();
        println!("({}, {}) in P(J): {}", q[0], q[1], shape.contains(&q)?);
    }
    Ok(())
}
