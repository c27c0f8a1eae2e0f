//! Six points on a conic have the same limiting triangle as a star
//! configuration of lines would predict for intercepts (2, 3), although
//! they are not one.

use starshape::cli::{CONIC_POINTS, CONIC_SCENARIO};
use starshape::invariants::verify_scheme;
use starshape::scheme::parse_points;
use starshape::{CornerSimplex, GinOptions, Rational};

fn main() -> starshape::Result<()> {
    let sch = parse_points(CONIC_POINTS)?;
    println!("bundled scheme {CONIC_SCENARIO}: {} points", sch.points().len());
    for target in [[2, 3], [2, 2]] {
        let w = CornerSimplex::new(target.iter().map(|&a| Rational::from(a)).collect())?;
        let report = verify_scheme(&sch, 4, Some(&w), &GinOptions::default(), None)?;
        println!("expected intercepts {target:?}");
        print!("{}", report.render());
        for r in &report.rows {
            println!("  m={} t_2/m = {:.3}", r.m, f64::from(r.t[1]) / f64::from(r.m));
        }
        println!();
    }
    Ok(())
}
