//! Initial degrees and Waldschmidt upper bounds alpha(I^(m))/m.

use starshape::gin::compute_gins;
use starshape::invariants::{asreg_estimate, waldschmidt_estimate};
use starshape::{build_star, GinOptions, StarMode};

fn main() -> starshape::Result<()> {
    for (n, s, m_max) in [(2, 3, 6), (2, 5, 4), (3, 4, 3)] {
        let sch = build_star(n, s, StarMode::Vandermonde)?.scheme(1)?;
        let ms: Vec<u32> = (1..=m_max).collect();
        let gins = compute_gins(&sch, &ms, &GinOptions::default(), None)?;
        let w = waldschmidt_estimate(&gins);
        let reg = asreg_estimate(&gins);
        println!("n={n} s={s}: expected Waldschmidt constant {s}/{n}");
        for (i, res) in gins.iter().enumerate() {
            println!(
                "  m={}  alpha={:<3} alpha/m={:<6} running min={:<6} reg/m={}",
                res.m,
                res.alpha(),
                w.ratios[i].to_string(),
                w.running_min[i].to_string(),
                reg[i]
            );
        }
    }
    Ok(())
}
