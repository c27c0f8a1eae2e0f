use super::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Sense of one linear constraint row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every constraint, in the caller's variables.
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Exact phase-one simplex with Bland's rule.
///
/// Decides whether `{x : a x (rel) b}` is nonempty, with `x >= 0` imposed
/// when `nonneg` is set and free variables otherwise.
pub fn lp_feasible(a: &RatMatrix, b: &[Rational], relations: &[Relation], nonneg: bool) -> Result<Feasibility> {
    let m = a.rows();
    if b.len() != m || relations.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{m} constraint rows but {} right-hand sides and {} relations",
            b.len(),
            relations.len()
        )));
    }
    let n = a.cols();
    let structural = if nonneg { n } else { 2 * n };

    // Normalize to b >= 0.
    let mut rows: Vec<(Vec<Rational>, Rational, Relation)> = Vec::with_capacity(m);
    for i in 0..m {
        let mut coeffs = Vec::with_capacity(structural);
        coeffs.extend(a.row(i).iter().cloned());
        if !nonneg {
            coeffs.extend(a.row(i).iter().map(|x| -x.clone()));
        }
        let (mut rhs, mut rel) = (b[i].clone(), relations[i]);
        if rhs < Rational::ZERO {
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
            rhs = -rhs;
            rel = rel.flipped();
        }
        rows.push((coeffs, rhs, rel));
    }

    let n_slack = rows.iter().filter(|r| r.2 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.2 != Relation::Le).count();
    let width = structural + n_slack + n_art;
    let mut tab = vec![vec![Rational::ZERO; width + 1]; m];
    let mut basis = vec![0usize; m];
    let mut is_art = vec![false; m];
    let (mut next_slack, mut next_art) = (structural, structural + n_slack);
    for (i, (coeffs, rhs, rel)) in rows.into_iter().enumerate() {
        tab[i][..structural].clone_from_slice(&coeffs);
        tab[i][width] = rhs;
        match rel {
            Relation::Le => {
                tab[i][next_slack] = Rational::ONE;
                basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                tab[i][next_slack] = -Rational::ONE;
                next_slack += 1;
                tab[i][next_art] = Rational::ONE;
                basis[i] = next_art;
                is_art[i] = true;
                next_art += 1;
            }
            Relation::Eq => {
                tab[i][next_art] = Rational::ONE;
                basis[i] = next_art;
                is_art[i] = true;
                next_art += 1;
            }
        }
    }

    // Objective row: reduced costs of minimizing the sum of artificials.
    let mut obj = vec![Rational::ZERO; width + 1];
    for i in (0..m).filter(|&i| is_art[i]) {
        for (o, t) in obj.iter_mut().zip(&tab[i]) {
            *o += t;
        }
    }
    for i in (0..m).filter(|&i| is_art[i]) {
        obj[basis[i]] = Rational::ZERO;
    }

    while let Some(enter) = (0..width).find(|&j| obj[j] > Rational::ZERO) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter] <= Rational::ZERO {
                continue;
            }
            let ratio = &tab[i][width] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::Internal("phase-one objective became unbounded".into()));
        };
        let inv = Rational::ONE / &tab[r][enter];
        for x in tab[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }

    if !obj[width].is_zero() {
        return Ok(Feasibility::Infeasible);
    }
    let mut values = vec![Rational::ZERO; structural];
    for (i, &v) in basis.iter().enumerate() {
        if v < structural {
            values[v] = tab[i][width].clone();
        }
    }
    let witness = if nonneg {
        values
    } else {
        (0..n).map(|j| &values[j] - &values[n + j]).collect()
    };
    Ok(Feasibility::Feasible(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn check(a: &RatMatrix, b: &[Rational], rel: &[Relation], x: &[Rational]) {
        let ax = a.mul_vec(x).unwrap();
        for i in 0..b.len() {
            match rel[i] {
                Relation::Le => assert!(ax[i] <= b[i]),
                Relation::Eq => assert_eq!(ax[i], b[i]),
                Relation::Ge => assert!(ax[i] >= b[i]),
            }
        }
    }

    #[test]
    fn simple_feasible_box() {
        let a = RatMatrix::from_i64(&[vec![1, 1], vec![1, -1]]).unwrap();
        let b = vec![Rational::from(2), Rational::from(-1)];
        let rel = [Relation::Ge, Relation::Le];
        match lp_feasible(&a, &b, &rel, true).unwrap() {
            Feasibility::Feasible(x) => {
                check(&a, &b, &rel, &x);
                assert!(x.iter().all(|v| *v >= Rational::ZERO));
            }
            Feasibility::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn contradictory_rows() {
        let a = RatMatrix::from_i64(&[vec![1, 1], vec![1, 1]]).unwrap();
        let b = vec![Rational::from(1), Rational::from(2)];
        let rel = [Relation::Le, Relation::Ge];
        assert_eq!(lp_feasible(&a, &b, &rel, true).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn nonnegativity_matters() {
        let a = RatMatrix::from_i64(&[vec![1]]).unwrap();
        let b = vec![Rational::from(-3)];
        let rel = [Relation::Eq];
        assert_eq!(lp_feasible(&a, &b, &rel, true).unwrap(), Feasibility::Infeasible);
        assert_eq!(
            lp_feasible(&a, &b, &rel, false).unwrap(),
            Feasibility::Feasible(vec![Rational::from(-3)])
        );
    }

    #[test]
    fn convex_combination_with_fractions() {
        // (1/2, 1/3) as a convex combination of (0,0), (1,0), (0,1).
        let a = RatMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        let b = vec![ratio(1, 2), ratio(1, 3), Rational::ONE];
        let rel = [Relation::Eq; 3];
        let Feasibility::Feasible(x) = lp_feasible(&a, &b, &rel, true).unwrap() else {
            panic!("expected feasible");
        };
        check(&a, &b, &rel, &x);
        let b2 = vec![ratio(2, 3), ratio(1, 2), Rational::ONE];
        assert_eq!(lp_feasible(&a, &b2, &rel, true).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn shape_errors() {
        let a = RatMatrix::from_i64(&[vec![1]]).unwrap();
        assert!(lp_feasible(&a, &[], &[Relation::Eq], true).is_err());
    }
}
