//! gin of a symbolic power of a star configuration.
//!
//! cargo run --release --example star_gin -- 2 4 3

use starshape::gin::verify_green;
use starshape::{build_star, compute_gin, GinOptions, StarMode};

fn main() -> starshape::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, s, m) = match args[..] {
        [n, s, m] => (n as usize, s as usize, m),
        _ => (2, 3, 2),
    };

    let star = build_star(n, s, StarMode::Vandermonde)?;
    println!("{} hyperplanes in P^{n} meet in {} points", s, star.points.len());
    let res = compute_gin(&star.scheme(m)?, &GinOptions::default())?;

    let gens: Vec<String> = res.artinian.generators().iter().map(ToString::to_string).collect();
    println!("gin(I^({m})) = ({})", gens.join(", "));
    println!("Hilbert function of S/I^({m}):");
    for row in &res.hf_table {
        println!("  d={:<3} {:>5}", row.degree, row.quotient_hf);
    }
    println!("colength {} (stop degree {})", res.colength, res.stop_degree);
    println!("Borel-fixed: {}, free of x{}: {}", res.min_generators.is_borel_fixed(), n + 1, verify_green(&res));
    Ok(())
}
