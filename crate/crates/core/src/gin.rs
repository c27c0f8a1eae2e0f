//! Generic initial ideals of symbolic powers in the degree reverse
//! lexicographic order.
//!
//! The main route works in the affine chart `x_{n+1} = 1` after a random
//! change of coordinates. When no transformed point lies on `x_{n+1} = 0`,
//! the last variable is a nonzerodivisor modulo the ideal, and the revlex
//! initial ideal is generated by the degree-compatible initial ideal of the
//! dehomogenized ideal. That ideal is read off by scanning monomials in
//! increasing order and testing each one's vector of local conditions
//! (all partials of order `< m` at every point) for independence from the
//! vectors already seen: independent monomials are standard, the first
//! dependent ones not divisible by earlier finds are minimal generators.
//!
//! [`gin_degree`] and [`gin_degree_via_kernel`] compute single homogeneous
//! slices directly from the condition matrix and serve as cross-checks.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, derive_seed, nullspace, random_invertible_matrix, rref_with_column_order, EchelonBasis, RatMatrix,
    Rational, SeededRng,
};
use crate::monomial::{monomials_of_degree, Colength, ExponentVector, MonomialIdeal};
use crate::scheme::{conditions_matrix_for, FatPointScheme, ProjPoint};

/// Bumped whenever the cached JSON layout or the algorithm output changes.
pub const CACHE_VERSION: u32 = 1;

/// Redraws of the coordinate change when a point lands at infinity.
const MAX_CHART_DRAWS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfRow {
    pub degree: u32,
    /// `dim I^(m)_d`.
    pub ideal_dim: u64,
    /// `dim (S / I^(m))_d`.
    pub quotient_hf: u64,
}

/// `gin(I^(m))` for one scheme and multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinResult {
    pub n: usize,
    pub m: u32,
    pub num_points: usize,
    /// Minimal generators in `n + 1` variables.
    pub min_generators: MonomialIdeal,
    /// The same generators with the (absent) last variable dropped.
    pub artinian: MonomialIdeal,
    pub hf_table: Vec<HfRow>,
    pub stop_degree: u32,
    #[serde(with = "u64_text")]
    pub colength: u64,
    pub seeds_used: [u64; 2],
}

mod u64_text {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl GinResult {
    /// Smallest `p` with `x_{var+1}^p` in the gin (0-based variable index).
    pub fn t(&self, var: usize) -> Option<u32> {
        self.artinian.pure_power_threshold(var)
    }

    /// `t_1, ..., t_n`.
    pub fn t_values(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.t(i).expect("artinian gin has every pure power")).collect()
    }

    /// Initial degree, from the Hilbert function table.
    pub fn alpha(&self) -> u32 {
        self.hf_table
            .iter()
            .find(|r| r.ideal_dim > 0)
            .map(|r| r.degree)
            .expect("the ideal is nonzero by the stop degree")
    }

    /// Largest degree of a minimal generator, which is the regularity of a
    /// Borel-fixed ideal and of the ideal it is the gin of.
    pub fn regularity(&self) -> u32 {
        self.min_generators.max_generator_degree().unwrap_or(0)
    }

    pub fn quotient_hf(&self, d: u32) -> u64 {
        match self.hf_table.get(d as usize) {
            Some(row) => row.quotient_hf,
            None => self.colength,
        }
    }
}

/// True iff no minimal generator involves the last variable.
pub fn verify_green(res: &GinResult) -> bool {
    let last = res.min_generators.num_vars().saturating_sub(1);
    res.min_generators.generators().iter().all(|g| g.exps()[last] == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinOptions {
    pub seed: u64,
    /// Entries of the coordinate change are drawn from `[-bound, bound]`.
    pub coeff_bound: i64,
    /// Independent seed pairs tried before giving up.
    pub max_attempts: usize,
    /// Run the homogeneous slice cross-check when the scheme imposes at most
    /// this many conditions.
    pub slice_check_limit: u64,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions { seed: 1, coeff_bound: 1000, max_attempts: 4, slice_check_limit: 120 }
    }
}

impl GinOptions {
    pub fn with_seed(seed: u64) -> Self {
        GinOptions { seed, ..Self::default() }
    }
}

/// Result of one affine scan under one coordinate change.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Scan {
    /// Standard monomials found in each degree `0..=stop`.
    new_standard: Vec<u64>,
    /// Minimal generators in `n` variables.
    generators: Vec<ExponentVector>,
    stop_degree: u32,
}

/// Draws a coordinate change that keeps every point off `x_{n+1} = 0`.
fn draw_chart(rng: &mut SeededRng, points: &[ProjPoint], bound: i64) -> Result<(RatMatrix, Vec<ProjPoint>)> {
    let k = points.first().map_or(0, ProjPoint::len);
    for _ in 0..MAX_CHART_DRAWS {
        let g = random_invertible_matrix(rng, k, bound)?;
        let moved = points.iter().map(|p| p.transformed(&g)).collect::<Result<Vec<_>>>()?;
        if moved.iter().all(|p| !p.coords()[k - 1].is_zero()) {
            return Ok((g, moved));
        }
    }
    Err(Error::Genericity(format!("every coordinate change put a point at infinity ({MAX_CHART_DRAWS} draws)")))
}

fn scan(points: &[ProjPoint], n: usize, m: u32, degree_cap: u32) -> Result<Scan> {
    // Affine coordinates (last coordinate is 1 after normalization).
    let betas: Vec<ExponentVector> = (0..m).flat_map(|k| monomials_of_degree(n, k)).collect();
    let width = points.len() * betas.len();
    let mut powers: Vec<Vec<Vec<Rational>>> = points
        .iter()
        .map(|p| p.coords()[..n].iter().map(|x| vec![Rational::ONE, x.clone()]).collect())
        .collect();

    let mut basis = EchelonBasis::new(width);
    let mut generators: Vec<ExponentVector> = Vec::new();
    let mut new_standard = Vec::new();
    let mut d = 0u32;
    loop {
        if d > degree_cap {
            return Err(Error::Internal(format!(
                "Hilbert function still growing at degree {d}, beyond the cap {degree_cap}"
            )));
        }
        for table in powers.iter_mut().flatten() {
            while table.len() <= d as usize {
                let next = &table[table.len() - 1] * &table[1];
                table.push(next);
            }
        }
        let mut found = 0u64;
        // Ascending revlex within the degree.
        for a in monomials_of_degree(n, d).into_iter().rev() {
            if generators.iter().any(|g| g.divides(&a)) {
                continue;
            }
            if basis.is_full() {
                generators.push(a);
                continue;
            }
            let v = local_conditions(&a, &betas, &powers);
            if basis.insert(v)? {
                found += 1;
            } else {
                generators.push(a);
            }
        }
        new_standard.push(found);
        if found == 0 {
            return Ok(Scan { new_standard, generators, stop_degree: d });
        }
        d += 1;
    }
}

/// Values of `d^b x^a` at every point, for every `b` in `betas`.
fn local_conditions(a: &ExponentVector, betas: &[ExponentVector], powers: &[Vec<Vec<Rational>>]) -> Vec<Rational> {
    let mut v = Vec::with_capacity(powers.len() * betas.len());
    for table in powers {
        for b in betas {
            if !b.divides(a) {
                v.push(Rational::ZERO);
                continue;
            }
            let mut weight = dashu_int::UBig::ONE;
            let mut value = Rational::ONE;
            for (i, (&ai, &bi)) in a.exps().iter().zip(b.exps()).enumerate() {
                for t in 0..bi {
                    weight *= dashu_int::UBig::from(ai - t);
                }
                let e = (ai - bi) as usize;
                if e > 0 {
                    value *= &table[i][e];
                }
            }
            v.push(value * Rational::from(weight));
        }
    }
    v
}

fn degree_cap(sch: &FatPointScheme) -> u32 {
    sch.multiplicity() * (sch.points().len() + sch.dim()) as u32
}

fn scan_with_seed(sch: &FatPointScheme, seed: u64, bound: i64) -> Result<(Scan, RatMatrix)> {
    let mut rng = SeededRng::new(seed);
    let (g, moved) = draw_chart(&mut rng, sch.points(), bound)?;
    let scan = scan(&moved, sch.dim(), sch.multiplicity(), degree_cap(sch))?;
    Ok((scan, g))
}

/// Degree-`d` monomials of `gin(I^(m))` from the homogeneous condition matrix
/// of the points moved by `g`.
///
/// A column is a pivot when scanning in increasing revlex order exactly when
/// its monomial is independent of all smaller ones modulo the ideal, so the
/// non-pivot columns are the leading monomials of the degree-`d` slice.
pub fn gin_degree(sch: &FatPointScheme, d: u32, g: &RatMatrix) -> Result<Vec<ExponentVector>> {
    let moved = moved_points(sch, g)?;
    let c = conditions_matrix_for(&moved, sch.dim(), sch.multiplicity(), d);
    let cols = monomials_of_degree(sch.dim() + 1, d);
    let ascending: Vec<usize> = (0..cols.len()).rev().collect();
    let e = rref_with_column_order(&c, &ascending)?;
    let mut is_pivot = vec![false; cols.len()];
    for &p in &e.pivot_columns {
        is_pivot[p] = true;
    }
    Ok(cols.into_iter().zip(is_pivot).filter(|(_, p)| !p).map(|(a, _)| a).collect())
}

/// Same slice as [`gin_degree`], via an explicit kernel basis reduced with
/// columns in decreasing revlex order.
pub fn gin_degree_via_kernel(sch: &FatPointScheme, d: u32, g: &RatMatrix) -> Result<Vec<ExponentVector>> {
    let moved = moved_points(sch, g)?;
    let c = conditions_matrix_for(&moved, sch.dim(), sch.multiplicity(), d);
    let cols = monomials_of_degree(sch.dim() + 1, d);
    let kernel = nullspace(&c);
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let k = RatMatrix::from_rows(kernel)?;
    let natural: Vec<usize> = (0..cols.len()).collect();
    let e = rref_with_column_order(&k, &natural)?;
    Ok(e.pivot_columns.iter().map(|&j| cols[j].clone()).collect())
}

fn moved_points(sch: &FatPointScheme, g: &RatMatrix) -> Result<Vec<ProjPoint>> {
    let k = sch.dim() + 1;
    if g.rows() != k || g.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "coordinate change is {}x{}, expected {k}x{k}",
            g.rows(),
            g.cols()
        )));
    }
    if g.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    sch.points().iter().map(|p| p.transformed(g)).collect()
}

/// Computes `gin(I^(m))` with two independent coordinate changes that must
/// agree, then checks the structural invariants of the result.
pub fn compute_gin(sch: &FatPointScheme, opts: &GinOptions) -> Result<GinResult> {
    if opts.max_attempts == 0 {
        return Err(Error::InvalidArgument("max_attempts must be at least 1".into()));
    }
    let mut last_mismatch = String::new();
    for attempt in 0..opts.max_attempts as u64 {
        let seeds = [derive_seed(opts.seed, 2 * attempt), derive_seed(opts.seed, 2 * attempt + 1)];
        let (a, b) = rayon::join(
            || scan_with_seed(sch, seeds[0], opts.coeff_bound),
            || scan_with_seed(sch, seeds[1], opts.coeff_bound),
        );
        let ((scan_a, g_a), (scan_b, _)) = (a?, b?);
        if scan_a != scan_b {
            last_mismatch = format!(
                "seeds {} and {} gave different generators ({} vs {})",
                seeds[0],
                seeds[1],
                scan_a.generators.len(),
                scan_b.generators.len()
            );
            continue;
        }
        let res = assemble(sch, scan_a, seeds)?;
        check_invariants(sch, &res)?;
        if sch.degree() <= opts.slice_check_limit {
            check_slice(sch, &res, &g_a)?;
        }
        return Ok(res);
    }
    Err(Error::Genericity(format!(
        "no agreeing pair of coordinate changes after {} attempts; last: {last_mismatch}",
        opts.max_attempts
    )))
}

fn assemble(sch: &FatPointScheme, scan: Scan, seeds: [u64; 2]) -> Result<GinResult> {
    let n = sch.dim();
    let artinian = MonomialIdeal::new(n, scan.generators)?;
    let min_generators = MonomialIdeal::new(n + 1, artinian.generators().iter().map(|g| g.with_last(0)))?;
    let mut hf_table = Vec::with_capacity(scan.new_standard.len());
    let mut total = 0u64;
    for (d, &found) in scan.new_standard.iter().enumerate() {
        total += found;
        let all = binomial(d as u64 + n as u64, n as u64);
        hf_table.push(HfRow { degree: d as u32, ideal_dim: all - total, quotient_hf: total });
    }
    Ok(GinResult {
        n,
        m: sch.multiplicity(),
        num_points: sch.points().len(),
        min_generators,
        artinian,
        hf_table,
        stop_degree: scan.stop_degree,
        colength: total,
        seeds_used: seeds,
    })
}

fn check_invariants(sch: &FatPointScheme, res: &GinResult) -> Result<()> {
    let fail = |what: String| Err(Error::Genericity(what));
    if !res.min_generators.is_borel_fixed() {
        return fail(format!("gin of multiplicity {} is not Borel-fixed", res.m));
    }
    if !verify_green(res) {
        return fail("a minimal generator involves the last variable".into());
    }
    if res.colength != sch.degree() || res.artinian.colength() != Colength::Finite(sch.degree()) {
        return fail(format!(
            "colength {} but the scheme has degree {}",
            res.colength,
            sch.degree()
        ));
    }
    for row in &res.hf_table {
        let monomial_side = res.min_generators.hilbert_function(row.degree);
        if monomial_side != row.quotient_hf {
            return fail(format!(
                "Hilbert functions differ in degree {}: {} standard monomials, {} independent conditions",
                row.degree, monomial_side, row.quotient_hf
            ));
        }
    }
    Ok(())
}

/// Recomputes the stop-degree slice homogeneously with the same coordinates.
fn check_slice(sch: &FatPointScheme, res: &GinResult, g: &RatMatrix) -> Result<()> {
    let d = res.stop_degree;
    let got = gin_degree(sch, d, g)?;
    let want: Vec<ExponentVector> = monomials_of_degree(sch.dim() + 1, d)
        .into_iter()
        .filter(|u| res.min_generators.contains(u))
        .collect();
    if got != want {
        return Err(Error::Genericity(format!(
            "homogeneous slice in degree {d} has {} leading monomials, expected {}",
            got.len(),
            want.len()
        )));
    }
    Ok(())
}

/// `gin(I^(m))` for every `m` in `ms`, computed in parallel.
pub fn compute_gins(
    sch: &FatPointScheme,
    ms: &[u32],
    opts: &GinOptions,
    cache: Option<&GinCache>,
) -> Result<Vec<GinResult>> {
    ms.par_iter()
        .map(|&m| {
            let s = sch.with_multiplicity(m)?;
            compute_gin_cached(&s, opts, cache)
        })
        .collect()
}

/// Content-addressed store of [`GinResult`] JSON documents.
#[derive(Clone, Debug)]
pub struct GinCache {
    dir: PathBuf,
}

impl GinCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(GinCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key over everything the result depends on.
    pub fn key(sch: &FatPointScheme, opts: &GinOptions) -> String {
        let material = serde_json::json!({
            "version": CACHE_VERSION,
            "scheme": sch.to_json(),
            "seed": opts.seed,
            "bound": opts.coeff_bound,
            "attempts": opts.max_attempts,
        });
        let digest = Sha256::digest(material.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("gin-{key}.json"))
    }

    /// A stored result, if present and readable.
    pub fn load(&self, key: &str) -> Option<GinResult> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes through a temporary file and renames, so readers never see a
    /// partial document.
    pub fn store(&self, key: &str, res: &GinResult) -> Result<()> {
        use std::io::Write;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string_pretty(res)?.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

/// [`compute_gin`] through an optional cache. Cached results are re-checked
/// against the scheme before use.
pub fn compute_gin_cached(sch: &FatPointScheme, opts: &GinOptions, cache: Option<&GinCache>) -> Result<GinResult> {
    let Some(cache) = cache else {
        return compute_gin(sch, opts);
    };
    let key = GinCache::key(sch, opts);
    if let Some(hit) = cache.load(&key) {
        if hit.m == sch.multiplicity() && hit.n == sch.dim() && check_invariants(sch, &hit).is_ok() {
            return Ok(hit);
        }
    }
    let res = compute_gin(sch, opts)?;
    cache.store(&key, &res)?;
    Ok(res)
}
