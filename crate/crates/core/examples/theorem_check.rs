//! Star configurations against their predicted limiting simplex.

use starshape::{verify_theorem, GinOptions, StarMode};

fn main() -> starshape::Result<()> {
    for (n, s, m_max) in [(2, 3, 4), (2, 4, 4), (3, 4, 3)] {
        let report = verify_theorem(n, s, m_max, StarMode::Vandermonde, &GinOptions::default(), None)?;
        print!("{}", report.render());
        println!();
    }
    Ok(())
}
