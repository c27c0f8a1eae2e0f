//! Point configurations with a uniform multiplicity, star configurations,
//! and the differential conditions that cut out symbolic powers.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{self, binomial, nullspace, parse_rational, rank, RatMatrix, Rational, SeededRng};
use crate::monomial::{monomials_of_degree, ExponentVector};

/// Redraws allowed before a seeded star configuration is declared degenerate.
pub const MAX_STAR_ATTEMPTS: usize = 100;

/// A linear form `sum coeffs[i] * x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(with = "crate::exact::serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Rational::is_zero) {
            return Err(Error::Degenerate("hyperplane with all coefficients zero".into()));
        }
        Ok(Hyperplane { coeffs })
    }

    pub fn eval(&self, p: &ProjPoint) -> Rational {
        exact::sum(self.coeffs.iter().zip(&p.coords).map(|(a, b)| a * b))
    }
}

/// A point of projective space, scaled so that its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct ProjPoint {
    coords: Vec<Rational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(last) = coords.iter().rposition(|c| !c.is_zero()) else {
            return Err(Error::Degenerate("point with all coordinates zero".into()));
        };
        let inv = Rational::ONE / &coords[last];
        Ok(ProjPoint { coords: coords.into_iter().map(|c| c * &inv).collect() })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Number of homogeneous coordinates (`n + 1`).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Image under the linear map `g` acting on coordinate columns.
    pub fn transformed(&self, g: &RatMatrix) -> Result<ProjPoint> {
        ProjPoint::new(g.mul_vec(&self.coords)?)
    }
}

impl TryFrom<Vec<String>> for ProjPoint {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        ProjPoint::new(v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?)
    }
}

impl From<ProjPoint> for Vec<String> {
    fn from(p: ProjPoint) -> Self {
        p.coords.iter().map(|c| c.to_string()).collect()
    }
}

/// Distinct points of `P^dim`, each taken with the same multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPointScheme {
    dim: usize,
    multiplicity: u32,
    points: Vec<ProjPoint>,
}

impl FatPointScheme {
    pub fn new(dim: usize, points: Vec<ProjPoint>, multiplicity: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("ambient dimension must be at least 1".into()));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
        }
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} has {} coordinates, expected {}",
                    p.len(),
                    dim + 1
                )));
            }
            if !seen.insert(p) {
                return Err(Error::Degenerate(format!("point {i} is repeated")));
            }
        }
        Ok(FatPointScheme { dim, multiplicity, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// The same points with another multiplicity.
    pub fn with_multiplicity(&self, m: u32) -> Result<Self> {
        Self::new(self.dim, self.points.clone(), m)
    }

    /// Conditions imposed by one point: `C(n + m - 1, n)`.
    pub fn conditions_per_point(&self) -> u64 {
        binomial(self.dim as u64 + u64::from(self.multiplicity) - 1, self.dim as u64)
    }

    /// Degree of the scheme, the eventual value of its Hilbert function.
    pub fn degree(&self) -> u64 {
        self.points.len() as u64 * self.conditions_per_point()
    }

    /// Writes the point-file JSON format.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "dim": self.dim,
            "multiplicity": self.multiplicity,
            "points": self.points.iter().map(|p| Vec::<String>::from(p.clone())).collect::<Vec<_>>(),
        })
    }
}

/// How the hyperplanes of a star configuration are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StarMode {
    /// `h_j = sum_i j^i x_{i+1}` for `j = 1..s`; always in general position.
    Vandermonde,
    /// Integer coefficients drawn uniformly from `[-bound, bound]`.
    Seeded { seed: u64, bound: i64 },
}

/// `s` hyperplanes in `P^n` together with their `C(s, n)` intersection points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarConfiguration {
    pub n: usize,
    pub s: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub points: Vec<ProjPoint>,
    pub mode: StarMode,
}

impl StarConfiguration {
    /// The fat-point scheme of the intersection points with multiplicity `m`.
    pub fn scheme(&self, m: u32) -> Result<FatPointScheme> {
        FatPointScheme::new(self.n, self.points.clone(), m)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn intersect(hyperplanes: &[Hyperplane], n: usize) -> Result<Vec<ProjPoint>> {
    let mut points = Vec::new();
    let mut seen = HashSet::new();
    for subset in subsets(hyperplanes.len(), n) {
        let m = RatMatrix::from_rows(subset.iter().map(|&j| hyperplanes[j].coeffs.clone()).collect())?;
        let kernel = nullspace(&m);
        if kernel.len() != 1 {
            return Err(Error::Degenerate(format!("hyperplanes {subset:?} do not meet in a single point")));
        }
        let p = ProjPoint::new(kernel.into_iter().next().expect("one kernel vector"))?;
        if !seen.insert(p.clone()) {
            return Err(Error::Degenerate(format!("hyperplanes {subset:?} meet in an earlier point")));
        }
        points.push(p);
    }
    Ok(points)
}

/// Builds the star configuration of `s` general hyperplanes in `P^n`.
pub fn build_star(n: usize, s: usize, mode: StarMode) -> Result<StarConfiguration> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if s < n {
        return Err(Error::InvalidArgument(format!("need s >= n, got s = {s}, n = {n}")));
    }
    match mode {
        StarMode::Vandermonde => {
            let hyperplanes = (1..=s as i64)
                .map(|j| Hyperplane::new((0..=n as u32).map(|i| Rational::from(j.pow(i))).collect()))
                .collect::<Result<Vec<_>>>()?;
            let points = intersect(&hyperplanes, n)?;
            Ok(StarConfiguration { n, s, hyperplanes, points, mode })
        }
        StarMode::Seeded { seed, bound } => {
            if bound < 1 {
                return Err(Error::InvalidArgument(format!("coefficient bound must be positive, got {bound}")));
            }
            let mut rng = SeededRng::new(seed);
            for _ in 0..MAX_STAR_ATTEMPTS {
                let drawn: Result<Vec<Hyperplane>> = (0..s)
                    .map(|_| Hyperplane::new((0..=n).map(|_| Rational::from(rng.int_in(-bound, bound))).collect()))
                    .collect();
                let Ok(hyperplanes) = drawn else { continue };
                if let Ok(points) = intersect(&hyperplanes, n) {
                    return Ok(StarConfiguration { n, s, hyperplanes, points, mode });
                }
            }
            Err(Error::Degenerate(format!(
                "no valid star configuration after {MAX_STAR_ATTEMPTS} draws (n = {n}, s = {s}, bound = {bound})"
            )))
        }
    }
}

/// Falling factorial weight `prod a_i! / (a_i - b_i)!`, zero unless `b <= a`.
fn derivative_weight(a: &[u32], b: &[u32]) -> Option<u64> {
    let mut w: u64 = 1;
    for (&ai, &bi) in a.iter().zip(b) {
        if bi > ai {
            return None;
        }
        for t in 0..bi {
            w *= u64::from(ai - t);
        }
    }
    Some(w)
}

/// `(d^b x^a)(p)`.
pub fn derivative_at(a: &ExponentVector, b: &ExponentVector, p: &[Rational]) -> Rational {
    let Some(w) = derivative_weight(a.exps(), b.exps()) else {
        return Rational::ZERO;
    };
    let mut v = Rational::from(w);
    for ((&ai, &bi), x) in a.exps().iter().zip(b.exps()).zip(p) {
        let e = ai - bi;
        if e > 0 {
            if x.is_zero() {
                return Rational::ZERO;
            }
            v *= x.pow(e as usize);
        }
    }
    v
}

/// Order of the partial derivatives used as conditions in degree `d`.
///
/// Vanishing of all order-`m - 1` partials is equivalent to vanishing to
/// order `m` once `d >= m - 1` (Euler's relation). Below that no nonzero form
/// can vanish to order `m`, and the order-`d` partials, which are the
/// coefficients up to scale, encode exactly that.
pub fn condition_order(m: u32, d: u32) -> u32 {
    (m - 1).min(d)
}

/// Rows: one per (point, partial of order [`condition_order`]); columns: the
/// degree-`d` monomials in descending revlex order.
pub fn conditions_matrix(sch: &FatPointScheme, d: u32) -> RatMatrix {
    conditions_matrix_for(sch.points(), sch.dim(), sch.multiplicity(), d)
}

pub(crate) fn conditions_matrix_for(points: &[ProjPoint], n: usize, m: u32, d: u32) -> RatMatrix {
    let cols = monomials_of_degree(n + 1, d);
    let partials = monomials_of_degree(n + 1, condition_order(m, d));
    let mut mat = RatMatrix::zeros(points.len() * partials.len(), cols.len());
    let mut r = 0;
    for p in points {
        for b in &partials {
            for (c, a) in cols.iter().enumerate() {
                mat.set(r, c, derivative_at(a, b, p.coords()));
            }
            r += 1;
        }
    }
    mat
}

/// `dim I^(m)_d`.
pub fn hf_symbolic(sch: &FatPointScheme, d: u32) -> u64 {
    let total = binomial(u64::from(d) + sch.dim() as u64, sch.dim() as u64);
    total - rank(&conditions_matrix(sch, d)) as u64
}

/// `dim (S / I^(m))_d`.
pub fn hf_quotient(sch: &FatPointScheme, d: u32) -> u64 {
    rank(&conditions_matrix(sch, d)) as u64
}

/// A basis of `I^(m)_d`, coefficients indexed by descending-revlex monomials.
pub fn symbolic_basis(sch: &FatPointScheme, d: u32) -> Vec<Vec<Rational>> {
    nullspace(&conditions_matrix(sch, d))
}

fn file_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::PointFile { location: location.into(), message: message.into() }
}

fn positive_int(v: Option<&Value>, key: &str) -> Result<u64> {
    let v = v.ok_or_else(|| file_err(key, "missing"))?;
    match v.as_u64() {
        Some(x) if x >= 1 => Ok(x),
        _ => Err(file_err(key, format!("expected a positive integer, found {v}"))),
    }
}

/// Parses the point-file JSON format, reporting the location of any problem.
pub fn parse_points(text: &str) -> Result<FatPointScheme> {
    let root: Value = serde_json::from_str(text).map_err(|e| file_err("json", e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| file_err("root", "expected an object"))?;
    let dim = positive_int(obj.get("dim"), "dim")? as usize;
    let multiplicity = match obj.get("multiplicity") {
        None => 1,
        some => u32::try_from(positive_int(some, "multiplicity")?)
            .map_err(|_| file_err("multiplicity", "too large"))?,
    };
    let list = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| file_err("points", "expected an array of points"))?;
    if list.is_empty() {
        return Err(file_err("points", "no points given"));
    }
    let mut points: Vec<ProjPoint> = Vec::with_capacity(list.len());
    for (i, entry) in list.iter().enumerate() {
        let here = format!("points[{i}]");
        let coords = entry.as_array().ok_or_else(|| file_err(&here, "expected an array of coordinates"))?;
        if coords.len() != dim + 1 {
            return Err(file_err(&here, format!("has {} coordinates, expected {}", coords.len(), dim + 1)));
        }
        let mut values = Vec::with_capacity(coords.len());
        for (j, c) in coords.iter().enumerate() {
            let text = match c {
                Value::String(s) => s.clone(),
                Value::Number(num) if num.is_i64() || num.is_u64() => num.to_string(),
                other => return Err(file_err(format!("{here}[{j}]"), format!("expected a rational string, found {other}"))),
            };
            values.push(parse_rational(&text).map_err(|e| file_err(format!("{here}[{j}]"), e.to_string()))?);
        }
        let p = ProjPoint::new(values).map_err(|_| file_err(&here, "all coordinates are zero"))?;
        if let Some(k) = points.iter().position(|q| *q == p) {
            return Err(file_err(&here, format!("duplicate of points[{k}]")));
        }
        points.push(p);
    }
    FatPointScheme::new(dim, points, multiplicity)
}

/// Reads and validates a point file.
pub fn load_points(path: &Path) -> Result<FatPointScheme> {
    let text = std::fs::read_to_string(path).map_err(|e| file_err(path.display().to_string(), e.to_string()))?;
    parse_points(&text).map_err(|e| match e {
        Error::PointFile { location, message } => {
            file_err(format!("{}: {location}", path.display()), message)
        }
        other => other,
    })
}
