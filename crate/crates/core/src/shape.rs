//! Newton polytopes of Artinian monomial ideals, the bounded regions under
//! them, and the corner simplex they are compared with.
//!
//! For a monomial ideal `J` in `n` variables, `P(J)` is the convex hull of
//! its exponents plus the positive octant and `Q(J)` is the closure of the
//! rest of the octant. `Q(J)` is bounded exactly when `J` contains a power of
//! every variable.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    self, derive_seed, factorial, from_f64_exact, lp_feasible, ratio, to_f64, Feasibility, RatMatrix, Rational,
    Relation, SeededRng,
};
use crate::gin::GinResult;
use crate::monomial::MonomialIdeal;

/// Samples drawn per independently seeded chunk in [`Shape::q_volume_estimate`].
pub const SAMPLE_CHUNK: usize = 256;

/// The generators of a monomial ideal as points of `R^n`, possibly rescaled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    num_vars: usize,
    points: Vec<Vec<Rational>>,
    scale: Rational,
}

impl Shape {
    /// Validates that the points are nonempty, of length `num_vars`, with
    /// nonnegative coordinates and pairwise incomparable.
    pub fn new(num_vars: usize, points: Vec<Vec<Rational>>, scale: Rational) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a shape needs at least one generator".into()));
        }
        if scale <= Rational::ZERO {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
        }
        for p in &points {
            if p.len() != num_vars {
                return Err(Error::DimensionMismatch(format!("point of length {} in {num_vars} variables", p.len())));
            }
            if p.iter().any(|x| *x < Rational::ZERO) {
                return Err(Error::InvalidArgument("generator points must be nonnegative".into()));
            }
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                if dominated(p, q) || dominated(q, p) {
                    return Err(Error::InvalidArgument("generator points must be pairwise incomparable".into()));
                }
            }
        }
        Ok(Shape { num_vars, points, scale })
    }

    /// Unscaled shape of a monomial ideal's minimal generators.
    pub fn from_ideal(j: &MonomialIdeal) -> Result<Self> {
        let points = j
            .generators()
            .iter()
            .map(|g| g.exps().iter().map(|&e| Rational::from(e)).collect())
            .collect();
        Shape::new(j.num_vars(), points, Rational::ONE)
    }

    /// Unscaled shape of the Artinian reduction of a gin.
    pub fn of_gin(res: &GinResult) -> Result<Self> {
        Self::from_ideal(&res.artinian)
    }

    /// The shape with every point divided by `m`.
    pub fn scaled(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("scale divisor must be positive".into()));
        }
        let f = ratio(1, i64::from(m));
        Ok(Shape {
            num_vars: self.num_vars,
            points: self.points.iter().map(|p| p.iter().map(|x| x * &f).collect()).collect(),
            scale: &self.scale * &f,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Where `P` meets coordinate axis `var` (0-based). Only pure powers lie
    /// on an axis, so this is the smallest such generator.
    pub fn axis_intercept(&self, var: usize) -> Option<Rational> {
        self.points
            .iter()
            .filter(|p| p.iter().enumerate().all(|(i, x)| i == var || x.is_zero()))
            .map(|p| p[var].clone())
            .min()
    }

    /// All intercepts, or an error naming the first missing one.
    pub fn intercepts(&self) -> Result<Vec<Rational>> {
        (0..self.num_vars)
            .map(|i| {
                self.axis_intercept(i)
                    .ok_or_else(|| Error::Unbounded(format!("no pure power of x{} in the ideal", i + 1)))
            })
            .collect()
    }

    /// Exact membership of `q` in `P`: `q` dominates a convex combination of
    /// the generator points.
    pub fn contains(&self, q: &[Rational]) -> Result<bool> {
        if q.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!("query of length {} in {} variables", q.len(), self.num_vars)));
        }
        if self.points.iter().any(|p| dominated(p, q)) {
            return Ok(true);
        }
        Ok(self.hull_lp(q)?.is_feasible())
    }

    fn hull_lp(&self, q: &[Rational]) -> Result<Feasibility> {
        let k = self.points.len();
        let mut rows = Vec::with_capacity(self.num_vars + 1);
        for i in 0..self.num_vars {
            rows.push(self.points.iter().map(|p| p[i].clone()).collect());
        }
        rows.push(vec![Rational::ONE; k]);
        let a = RatMatrix::from_rows(rows)?;
        let mut b = q.to_vec();
        b.push(Rational::ONE);
        let mut rel = vec![Relation::Le; self.num_vars];
        rel.push(Relation::Eq);
        lp_feasible(&a, &b, &rel, true)
    }

    /// Vertices of the boundary of `P` in the plane, from the point on the
    /// second axis to the point on the first.
    pub fn hull_chain_2d(&self) -> Result<Vec<[Rational; 2]>> {
        self.require_plane()?;
        self.intercepts()?;
        let mut pts: Vec<[Rational; 2]> = self.points.iter().map(|p| [p[0].clone(), p[1].clone()]).collect();
        pts.sort();
        let mut chain: Vec<[Rational; 2]> = Vec::new();
        for p in pts {
            while chain.len() >= 2 && cross(&chain[chain.len() - 2], &chain[chain.len() - 1], &p) <= Rational::ZERO {
                chain.pop();
            }
            chain.push(p);
        }
        Ok(chain)
    }

    /// Exact area of `Q` for a plane shape.
    pub fn q_area_2d(&self) -> Result<Rational> {
        let chain = self.hull_chain_2d()?;
        // Polygon: origin, then the chain from the first axis back to the second.
        let mut poly = vec![[Rational::ZERO, Rational::ZERO]];
        poly.extend(chain.into_iter().rev());
        let mut twice = Rational::ZERO;
        for i in 0..poly.len() {
            let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
            twice += &p[0] * &q[1] - &q[0] * &p[1];
        }
        Ok(twice / Rational::from(2))
    }

    /// Monte Carlo estimate of the volume of `Q`, sampling the simplex spanned
    /// by the axis intercepts (which contains `Q`). Deterministic in `seed`.
    pub fn q_volume_estimate(&self, samples: usize, seed: u64) -> Result<VolumeEstimate> {
        let t = self.intercepts()?;
        if samples == 0 {
            return Err(Error::InvalidArgument("need at least one sample".into()));
        }
        let box_volume = exact::product(t.iter().cloned()) / factorial(self.num_vars as u64);
        let chunks = samples.div_ceil(SAMPLE_CHUNK);
        let outside: Result<Vec<usize>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = SeededRng::new(derive_seed(seed, c as u64));
                let count = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
                let mut hits = 0;
                for _ in 0..count {
                    let q = sample_simplex(&mut rng, &t);
                    if !self.contains(&q)? {
                        hits += 1;
                    }
                }
                Ok(hits)
            })
            .collect();
        let outside: usize = outside?.into_iter().sum();
        let frac = outside as f64 / samples as f64;
        let vol = to_f64(&box_volume);
        Ok(VolumeEstimate {
            estimate: vol * frac,
            stderr: vol * (frac * (1.0 - frac) / samples as f64).sqrt(),
            samples,
        })
    }

    fn require_plane(&self) -> Result<()> {
        if self.num_vars != 2 {
            return Err(Error::InvalidArgument(format!("plane operation on a shape in {} variables", self.num_vars)));
        }
        Ok(())
    }

    /// CSV listing of the generator points followed by the axis intercepts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind");
        for i in 1..=self.num_vars {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        for p in &self.points {
            out.push_str("generator");
            for x in p {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        }
        for i in 0..self.num_vars {
            if let Some(t) = self.axis_intercept(i) {
                out.push_str("intercept");
                for j in 0..self.num_vars {
                    let v = if i == j { t.clone() } else { Rational::ZERO };
                    let _ = write!(out, ",{v}");
                }
                out.push('\n');
            }
        }
        out
    }
}

/// `a <= b` coordinatewise.
fn dominated(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn cross(o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Uniform point of `conv(0, t_1 e_1, ..., t_n e_n)` as exact rationals.
fn sample_simplex(rng: &mut SeededRng, t: &[Rational]) -> Vec<Rational> {
    let e: Vec<f64> = (0..=t.len()).map(|_| -rng.unit_open().ln()).collect();
    let total: f64 = e.iter().sum();
    t.iter()
        .zip(&e)
        .map(|(ti, ei)| ti * from_f64_exact(ei / total).expect("finite sample"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// The simplex with one vertex at the origin and one on each positive axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSimplex {
    intercepts: Vec<Rational>,
}

impl CornerSimplex {
    pub fn new(intercepts: Vec<Rational>) -> Result<Self> {
        if intercepts.is_empty() {
            return Err(Error::InvalidArgument("simplex needs at least one axis".into()));
        }
        if intercepts.iter().any(|a| *a <= Rational::ZERO) {
            return Err(Error::InvalidArgument("simplex intercepts must be positive".into()));
        }
        Ok(CornerSimplex { intercepts })
    }

    /// The predicted limiting simplex of a star configuration of `s`
    /// hyperplanes in `P^n`: intercept `(s - i + 1) / (n - i + 1)` on axis `i`.
    pub fn for_star(n: usize, s: usize) -> Result<Self> {
        if n == 0 || s < n {
            return Err(Error::InvalidArgument(format!("need s >= n >= 1, got n = {n}, s = {s}")));
        }
        Self::new((1..=n).map(|i| ratio((s - i + 1) as i64, (n - i + 1) as i64)).collect())
    }

    pub fn dim(&self) -> usize {
        self.intercepts.len()
    }

    pub fn intercepts(&self) -> &[Rational] {
        &self.intercepts
    }

    /// Origin first, then the vertex on each axis.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut out = vec![vec![Rational::ZERO; n]];
        for (i, a) in self.intercepts.iter().enumerate() {
            let mut v = vec![Rational::ZERO; n];
            v[i] = a.clone();
            out.push(v);
        }
        out
    }

    pub fn volume(&self) -> Rational {
        exact::product(self.intercepts.iter().cloned()) / factorial(self.dim() as u64)
    }

    /// `sum x_i / a_i`; at least 1 exactly when `x` is outside the interior.
    pub fn facet_value(&self, x: &[Rational]) -> Rational {
        exact::sum(x.iter().zip(&self.intercepts).map(|(xi, ai)| xi / ai))
    }
}

/// True iff every generator point of `sh` lies on or beyond the slanted
/// facet of `w`, so that `P` misses the interior of `w`.
pub fn avoids_simplex_interior(sh: &Shape, w: &CornerSimplex) -> Result<bool> {
    Ok(facet_values(sh, w)?.iter().all(|v| *v >= Rational::ONE))
}

/// [`CornerSimplex::facet_value`] of every generator point.
pub fn facet_values(sh: &Shape, w: &CornerSimplex) -> Result<Vec<Rational>> {
    if sh.num_vars() != w.dim() {
        return Err(Error::DimensionMismatch(format!(
            "shape in {} variables against a simplex in {}",
            sh.num_vars(),
            w.dim()
        )));
    }
    Ok(sh.points().iter().map(|p| w.facet_value(p)).collect())
}

/// SVG picture of a plane shape: the region `Q` as a staircase, the boundary
/// chain of `P`, and optionally a corner simplex outline.
pub fn svg_2d(sh: &Shape, w: Option<&CornerSimplex>) -> Result<String> {
    let chain = sh.hull_chain_2d()?;
    let t = sh.intercepts()?;
    let mut extent = to_f64(&t[0]).max(to_f64(&t[1]));
    if let Some(w) = w {
        if w.dim() != 2 {
            return Err(Error::DimensionMismatch("the overlay simplex must be planar".into()));
        }
        extent = extent.max(to_f64(&w.intercepts()[0])).max(to_f64(&w.intercepts()[1]));
    }
    let size = 480.0;
    let margin = 30.0;
    let k = (size - 2.0 * margin) / (extent * 1.05);
    let px = |x: &Rational| margin + k * to_f64(x);
    let py = |y: &Rational| size - margin - k * to_f64(y);

    let mut pts: Vec<&Vec<Rational>> = sh.points().iter().collect();
    pts.sort();
    // Staircase outline: up the second axis, then right and down at each corner.
    let mut stair = format!("{:.2},{:.2}", px(&Rational::ZERO), py(&Rational::ZERO));
    let mut prev_y = pts[0][1].clone();
    let _ = write!(stair, " {:.2},{:.2}", px(&Rational::ZERO), py(&prev_y));
    for p in &pts[1..] {
        let _ = write!(stair, " {:.2},{:.2} {:.2},{:.2}", px(&p[0]), py(&prev_y), px(&p[0]), py(&p[1]));
        prev_y = p[1].clone();
    }
    let hull: Vec<String> = chain.iter().map(|p| format!("{:.2},{:.2}", px(&p[0]), py(&p[1]))).collect();

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let o = (px(&Rational::ZERO), py(&Rational::ZERO));
    let _ = writeln!(svg, r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, o.0, o.1, size - margin / 2.0, o.1);
    let _ = writeln!(svg, r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, o.0, o.1, o.0, margin / 2.0);
    let _ = writeln!(svg, r##"  <polygon points="{stair}" fill="#cfe3f7" stroke="#3a78b5" stroke-width="1"/>"##);
    let _ = writeln!(svg, r##"  <polyline points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##, hull.join(" "));
    if let Some(w) = w {
        let a = w.intercepts();
        let _ = writeln!(
            svg,
            r##"  <polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="#27ae60" stroke-width="2" stroke-dasharray="6 4"/>"##,
            o.0,
            o.1,
            px(&a[0]),
            o.1,
            o.0,
            py(&a[1])
        );
    }
    for p in sh.points() {
        let _ = writeln!(svg, r#"  <circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, px(&p[0]), py(&p[1]));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::ExponentVector;

    fn ideal(k: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(k, gens.iter().map(|g| ExponentVector::new(g.to_vec()))).unwrap()
    }

    fn q(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| ratio(a, b)).collect()
    }

    fn star23_m2() -> Shape {
        Shape::from_ideal(&ideal(2, &[&[3, 0], &[2, 2], &[1, 3], &[0, 4]])).unwrap()
    }

    #[test]
    fn scaling_divides_points() {
        let sh = star23_m2().scaled(2).unwrap();
        let want = vec![q(&[(3, 2), (0, 1)]), q(&[(1, 1), (1, 1)]), q(&[(1, 2), (3, 2)]), q(&[(0, 1), (2, 1)])];
        assert_eq!(sh.points(), want.as_slice());
        assert_eq!(sh.scale(), &ratio(1, 2));
        let single = Shape::from_ideal(&ideal(2, &[&[1, 1]])).unwrap();
        assert_eq!(single.scaled(1).unwrap().points(), single.points());
    }

    #[test]
    fn intercepts() {
        let sh = star23_m2();
        assert_eq!(sh.axis_intercept(0), Some(Rational::from(3)));
        assert_eq!(sh.axis_intercept(1), Some(Rational::from(4)));
        let half = sh.scaled(2).unwrap();
        assert_eq!(half.intercepts().unwrap(), vec![ratio(3, 2), Rational::from(2)]);
        let x1 = Shape::from_ideal(&ideal(2, &[&[1, 0]])).unwrap();
        assert_eq!(x1.axis_intercept(1), None);
        assert!(matches!(x1.intercepts(), Err(Error::Unbounded(_))));
    }

    #[test]
    fn membership() {
        let m2 = Shape::from_ideal(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert!(m2.contains(&q(&[(2, 1), (2, 1)])).unwrap());
        assert!(!m2.contains(&q(&[(1, 2), (1, 2)])).unwrap());
        assert!(m2.contains(&q(&[(3, 2), (1, 2)])).unwrap());
        assert!(star23_m2().contains(&q(&[(1, 1), (3, 1)])).unwrap());
        assert!(!star23_m2().contains(&q(&[(1, 1), (5, 2)])).unwrap());
        assert!(m2.contains(&q(&[(1, 1)])).is_err());
    }

    #[test]
    fn areas() {
        let m2 = Shape::from_ideal(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(m2.q_area_2d().unwrap(), Rational::from(2));
        // (2,2) and (1,3) lie above the segment from (0,4) to (3,0), so the
        // boundary of the hull is that single segment.
        assert_eq!(star23_m2().q_area_2d().unwrap(), Rational::from(6));
        assert_eq!(star23_m2().scaled(2).unwrap().q_area_2d().unwrap(), ratio(3, 2));
        assert!(Shape::from_ideal(&ideal(2, &[&[1, 0]])).unwrap().q_area_2d().is_err());
        let chain = star23_m2().hull_chain_2d().unwrap();
        assert_eq!(chain, vec![[Rational::ZERO, Rational::from(4)], [Rational::from(3), Rational::ZERO]]);
        let bent = Shape::from_ideal(&ideal(2, &[&[4, 0], &[1, 1], &[0, 4]])).unwrap();
        assert_eq!(bent.hull_chain_2d().unwrap().len(), 3);
        assert_eq!(bent.q_area_2d().unwrap(), Rational::from(4));
    }

    #[test]
    fn volume_estimate_of_unit_simplex() {
        let sh = Shape::from_ideal(&ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let est = sh.q_volume_estimate(2000, 7).unwrap();
        assert!((est.estimate - 1.0 / 6.0).abs() <= 3.0 * est.stderr + 1e-12);
        assert_eq!(est, sh.q_volume_estimate(2000, 7).unwrap());
    }

    #[test]
    fn star_simplices() {
        let w = CornerSimplex::for_star(2, 3).unwrap();
        assert_eq!(w.intercepts(), &[ratio(3, 2), Rational::from(2)]);
        assert_eq!(w.volume(), ratio(3, 2));
        let w = CornerSimplex::for_star(3, 3).unwrap();
        assert_eq!(w.intercepts(), &[Rational::ONE, Rational::ONE, Rational::ONE]);
        assert_eq!(w.volume(), ratio(1, 6));
        let w = CornerSimplex::for_star(3, 5).unwrap();
        assert_eq!(w.intercepts(), &[ratio(5, 3), Rational::from(2), Rational::from(3)]);
        assert_eq!(w.volume(), ratio(10, 6));
        assert_eq!(w.vertices().len(), 4);
        assert!(CornerSimplex::for_star(3, 2).is_err());
    }

    #[test]
    fn interior_avoidance() {
        let w = CornerSimplex::for_star(2, 3).unwrap();
        let m1 = Shape::from_ideal(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(facet_values(&m1, &w).unwrap(), vec![ratio(4, 3), ratio(7, 6), Rational::ONE]);
        assert!(avoids_simplex_interior(&m1, &w).unwrap());
        let inner = Shape::new(2, vec![q(&[(1, 2), (1, 2)])], Rational::ONE).unwrap();
        assert_eq!(w.facet_value(&inner.points()[0]), ratio(7, 12));
        assert!(!avoids_simplex_interior(&inner, &w).unwrap());
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(Shape::new(2, vec![], Rational::ONE).is_err());
        assert!(Shape::new(2, vec![q(&[(1, 1), (1, 1)]), q(&[(2, 1), (2, 1)])], Rational::ONE).is_err());
        assert!(Shape::new(2, vec![q(&[(1, 1)])], Rational::ONE).is_err());
    }

    #[test]
    fn svg_and_csv() {
        let sh = star23_m2().scaled(2).unwrap();
        let w = CornerSimplex::for_star(2, 3).unwrap();
        let svg = svg_2d(&sh, Some(&w)).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("polyline") && svg.trim_end().ends_with("</svg>"));
        let csv = sh.to_csv();
        assert!(csv.starts_with("kind,x1,x2\n"));
        assert!(csv.contains("generator,1/2,3/2"));
        assert!(csv.contains("intercept,3/2,0"));
    }
}
