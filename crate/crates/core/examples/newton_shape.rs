//! Newton polygons of gin(I^(m)) for three general lines, written as SVG.

use starshape::shape::svg_2d;
use starshape::{build_star, compute_gin, CornerSimplex, GinOptions, Shape, StarMode};

fn main() -> starshape::Result<()> {
    let star = build_star(2, 3, StarMode::Vandermonde)?;
    let w = CornerSimplex::for_star(2, 3)?;
    println!("predicted simplex: intercepts {:?}, area {}", w.intercepts().iter().map(ToString::to_string).collect::<Vec<_>>(), w.volume());

    let dir = std::env::temp_dir().join("starshape-shapes");
    std::fs::create_dir_all(&dir)?;
    for m in 1..=6 {
        let res = compute_gin(&star.scheme(m)?, &GinOptions::default())?;
        let shape = Shape::of_gin(&res)?.scaled(m)?;
        let chain: Vec<String> = shape
            .hull_chain_2d()?
            .iter()
            .map(|[x, y]| format!("({x}, {y})"))
            .collect();
        println!("m={m}: area {:>6}  hull {}", shape.q_area_2d()?.to_string(), chain.join(" "));
        std::fs::write(dir.join(format!("star23_m{m}.svg")), svg_2d(&shape, Some(&w))?)?;
    }
    println!("pictures in {}", dir.display());
    Ok(())
}
