//! Initial degrees, Waldschmidt and regularity estimates, and the report
//! that checks a star configuration against its predicted limiting simplex.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, ratio, Rational};
use crate::gin::{compute_gins, verify_green, GinCache, GinOptions, GinResult};
use crate::scheme::{build_star, hf_symbolic, FatPointScheme, StarMode};
use crate::shape::{avoids_simplex_interior, facet_values, CornerSimplex, Shape};

/// Smallest degree in which the symbolic power has a nonzero form, computed
/// from ranks of condition matrices.
pub fn alpha(sch: &FatPointScheme) -> Result<u32> {
    let cap = sch.multiplicity() * (sch.points().len() + sch.dim()) as u32;
    (0..=cap)
        .find(|&d| hf_symbolic(sch, d) > 0)
        .ok_or_else(|| Error::Internal(format!("no form vanishing to order {} below degree {cap}", sch.multiplicity())))
}

/// Castelnuovo-Mumford regularity of a gin: its largest generator degree.
pub fn regularity(res: &GinResult) -> u32 {
    res.regularity()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaldschmidtEstimate {
    /// `alpha(I^(m)) / m` for each computed `m`.
    #[serde(with = "crate::exact::serde_rational_vec")]
    pub ratios: Vec<Rational>,
    #[serde(with = "crate::exact::serde_rational_vec")]
    pub running_min: Vec<Rational>,
}

impl WaldschmidtEstimate {
    /// Best upper bound for the Waldschmidt constant.
    pub fn upper_bound(&self) -> Option<&Rational> {
        self.running_min.last()
    }
}

/// `alpha / m` over a run of gins, in the order given.
pub fn waldschmidt_estimate(gins: &[GinResult]) -> WaldschmidtEstimate {
    let ratios: Vec<Rational> = gins.iter().map(|r| ratio(i64::from(r.alpha()), i64::from(r.m))).collect();
    let mut running_min = Vec::with_capacity(ratios.len());
    for r in &ratios {
        let next = match running_min.last() {
            Some(prev) if prev <= r => Rational::clone(prev),
            _ => r.clone(),
        };
        running_min.push(next);
    }
    WaldschmidtEstimate { ratios, running_min }
}

/// `reg(I^(m)) / m` over a run of gins.
pub fn asreg_estimate(gins: &[GinResult]) -> Vec<Rational> {
    gins.iter().map(|r| ratio(i64::from(r.regularity()), i64::from(r.m))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub m: u32,
    pub alpha: u32,
    /// Pure-power thresholds `t_1..t_n`.
    pub t: Vec<u32>,
    pub reg: u32,
    pub colength: u64,
    pub num_generators: usize,
    /// Exact area of the scaled region under the Newton polygon (plane only).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_rational")]
    pub area: Option<Rational>,
    /// Smallest facet value of a scaled generator against the target simplex.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_rational")]
    pub min_facet_value: Option<Rational>,
}

fn opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub num_points: usize,
    pub rows: Vec<ReportRow>,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(with = "crate::exact::serde_rational")]
    pub waldschmidt_min: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub asreg_estimate: Rational,
    /// Intercepts of the simplex the verdicts were checked against.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_rational_vec")]
    pub target: Option<Vec<Rational>>,
    pub notes: Vec<String>,
}

fn opt_rational_vec<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => crate::exact::serde_rational_vec::serialize(r, s),
        None => s.serialize_none(),
    }
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, &v)| !v).map(|(k, _)| k.as_str()).collect()
    }

    /// Plain-text table of the rows and verdicts.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.s {
            Some(s) => {
                let _ = writeln!(out, "star configuration n={} s={} ({} points)", self.n, s, self.num_points);
            }
            None => {
                let _ = writeln!(out, "point scheme in P^{} ({} points)", self.n, self.num_points);
            }
        }
        let _ = writeln!(out, "{:>3} {:>6} {:>14} {:>5} {:>9} {:>10}", "m", "alpha", "t", "reg", "colength", "area");
        for r in &self.rows {
            let t: Vec<String> = r.t.iter().map(u32::to_string).collect();
            let area = r.area.as_ref().map_or("-".to_string(), Rational::to_string);
            let _ = writeln!(
                out,
                "{:>3} {:>6} {:>14} {:>5} {:>9} {:>10}",
                r.m,
                r.alpha,
                t.join(","),
                r.reg,
                r.colength,
                area
            );
        }
        let _ = writeln!(out, "waldschmidt upper bound: {}", self.waldschmidt_min);
        let _ = writeln!(out, "asymptotic regularity estimate: {}", self.asreg_estimate);
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "{k}: {}", if *v { "pass" } else { "FAIL" });
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }

    /// CSV with columns `m, alpha, t_1..t_n, reg, colength`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,alpha");
        for i in 1..=self.n {
            let _ = write!(out, ",t_{i}");
        }
        out.push_str(",reg,colength\n");
        for r in &self.rows {
            let _ = write!(out, "{},{}", r.m, r.alpha);
            for t in &r.t {
                let _ = write!(out, ",{t}");
            }
            let _ = writeln!(out, ",{},{}", r.reg, r.colength);
        }
        out
    }
}

/// Rows, estimates and the checks that hold for every scheme.
fn base_report(n: usize, s: Option<usize>, num_points: usize, gins: &[GinResult], target: Option<&CornerSimplex>) -> Result<InvariantReport> {
    let mut rows = Vec::with_capacity(gins.len());
    for res in gins {
        let shape = Shape::of_gin(res)?.scaled(res.m)?;
        let area = if n == 2 { Some(shape.q_area_2d()?) } else { None };
        let min_facet_value = match target {
            Some(w) => facet_values(&shape, w)?.into_iter().min(),
            None => None,
        };
        rows.push(ReportRow {
            m: res.m,
            alpha: res.alpha(),
            t: res.t_values(),
            reg: res.regularity(),
            colength: res.colength,
            num_generators: res.artinian.generators().len(),
            area,
            min_facet_value,
        });
    }
    let wald = waldschmidt_estimate(gins);
    let asreg = asreg_estimate(gins);
    let mut verdicts = BTreeMap::new();
    verdicts.insert("alpha_is_t1".into(), rows.iter().all(|r| r.alpha == r.t[0]));
    verdicts.insert("reg_is_tn".into(), rows.iter().all(|r| r.reg == r.t[n - 1]));
    verdicts.insert("borel".into(), gins.iter().all(|g| g.min_generators.is_borel_fixed()));
    verdicts.insert("green".into(), gins.iter().all(verify_green));
    verdicts.insert("subadditivity".into(), subadditive(&rows));
    Ok(InvariantReport {
        n,
        s,
        num_points,
        rows,
        verdicts,
        waldschmidt_min: wald.upper_bound().cloned().unwrap_or(Rational::ZERO),
        asreg_estimate: asreg.into_iter().min().unwrap_or(Rational::ZERO),
        target: target.map(|w| w.intercepts().to_vec()),
        notes: Vec::new(),
    })
}

/// `alpha(k + l) <= alpha(k) + alpha(l)` whenever all three were computed.
fn subadditive(rows: &[ReportRow]) -> bool {
    let alpha: BTreeMap<u32, u32> = rows.iter().map(|r| (r.m, r.alpha)).collect();
    alpha.iter().all(|(&k, &ak)| {
        alpha.iter().all(|(&l, &al)| alpha.get(&(k + l)).is_none_or(|&akl| akl <= ak + al))
    })
}

/// Checks against a target simplex that make sense for any point scheme.
fn target_checks(report: &mut InvariantReport, gins: &[GinResult], w: &CornerSimplex) -> Result<()> {
    let a = w.intercepts();
    let axis = report
        .rows
        .iter()
        .all(|r| r.t.iter().zip(a).all(|(&t, ai)| ratio(i64::from(t), i64::from(r.m)) >= *ai));
    report.verdicts.insert("V2".into(), axis);
    let mut avoid = true;
    for res in gins {
        avoid &= avoids_simplex_interior(&Shape::of_gin(res)?.scaled(res.m)?, w)?;
    }
    report.verdicts.insert("V3".into(), avoid);
    Ok(())
}

/// Computes `gin(I^(m))` for `m = 1..=m_max` of a star configuration and
/// checks it against the predicted simplex.
///
/// Verdicts: `V1` vertex hits `t_i(n - i + 1) = s - i + 1`; `V2` axis bounds
/// `t_i(m) / m >= a_i`; `V3` no scaled generator inside the simplex; `V4`
/// colength equals `C(s, n) C(n + m - 1, n)`; `V5` (plane only) scaled areas
/// at least `C(s, 2) / 2` and nonincreasing from `m` to its multiples; plus the structural
/// checks shared with [`verify_scheme`]. Failures are reported, not raised.
pub fn verify_theorem(
    n: usize,
    s: usize,
    m_max: u32,
    mode: StarMode,
    opts: &GinOptions,
    cache: Option<&GinCache>,
) -> Result<InvariantReport> {
    if m_max < n as u32 {
        return Err(Error::InvalidArgument(format!("m_max must be at least n = {n}, got {m_max}")));
    }
    let star = build_star(n, s, mode)?;
    let sch = star.scheme(1)?;
    let ms: Vec<u32> = (1..=m_max).collect();
    let gins = compute_gins(&sch, &ms, opts, cache)?;
    star_report(n, s, &gins)
}

/// The star-configuration report for already computed gins (`m = 1, 2, ...`).
pub fn star_report(n: usize, s: usize, gins: &[GinResult]) -> Result<InvariantReport> {
    let w = CornerSimplex::for_star(n, s)?;
    let mut report = base_report(n, Some(s), binomial(s as u64, n as u64) as usize, gins, Some(&w))?;
    let row = |m: u32| report.rows.iter().find(|r| r.m == m);

    let v1 = (1..=n).all(|i| match row((n - i + 1) as u32) {
        Some(r) => r.t[i - 1] as usize == s - i + 1,
        None => false,
    });
    let v4 = report.rows.iter().all(|r| {
        r.colength == binomial(s as u64, n as u64) * binomial(n as u64 + u64::from(r.m) - 1, n as u64)
    });
    report.verdicts.insert("V1".into(), v1);
    target_checks(&mut report, gins, &w)?;
    report.verdicts.insert("V4".into(), v4);
    if n == 2 {
        let floor = ratio(binomial(s as u64, 2) as i64, 2);
        let areas: Vec<(u32, &Rational)> =
            report.rows.iter().filter_map(|r| r.area.as_ref().map(|a| (r.m, a))).collect();
        let bounded = areas.iter().all(|(_, a)| **a >= floor);
        // The gins form a graded family, so scaled regions can only shrink
        // from m to any multiple of m.
        let chain_monotone = areas
            .iter()
            .all(|(m, a)| areas.iter().all(|(k, b)| k % m != 0 || b <= a));
        let monotone = areas.windows(2).all(|p| p[1].1 <= p[0].1);
        report.verdicts.insert("V5".into(), bounded && chain_monotone);
        if !monotone {
            report.notes.push("scaled areas are not monotone in m (they are along multiples)".into());
        }
    }
    let wald_floor = ratio(s as i64, n as i64);
    report
        .verdicts
        .insert("waldschmidt_bound".into(), report.rows.iter().all(|r| ratio(i64::from(r.alpha), i64::from(r.m)) >= wald_floor));

    let a_n = (s - n + 1) as u32;
    let strict: Vec<u32> = report.rows.iter().filter(|r| r.t[n - 1] != r.m * a_n).map(|r| r.m).collect();
    if strict.is_empty() {
        report.notes.push(format!("t_n(m) = {a_n} m for every computed m"));
    } else {
        report.notes.push(format!("t_n(m) > {a_n} m for m in {strict:?}"));
    }
    Ok(report)
}

/// Report for an arbitrary point set. With a target simplex the axis-bound
/// and interior checks run against it, together with `volume` (`n!` times
/// its volume equals the number of points, as it must for a limiting shape)
/// and, in the plane, `area` (scaled areas never drop below its area).
pub fn verify_scheme(
    sch: &FatPointScheme,
    m_max: u32,
    target: Option<&CornerSimplex>,
    opts: &GinOptions,
    cache: Option<&GinCache>,
) -> Result<InvariantReport> {
    if m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    if let Some(w) = target {
        if w.dim() != sch.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected vertices give {} intercepts for a scheme in P^{}",
                w.dim(),
                sch.dim()
            )));
        }
    }
    let ms: Vec<u32> = (1..=m_max).collect();
    let gins = compute_gins(sch, &ms, opts, cache)?;
    scheme_report(sch, &gins, target)
}

/// [`verify_scheme`] on already computed gins.
pub fn scheme_report(sch: &FatPointScheme, gins: &[GinResult], target: Option<&CornerSimplex>) -> Result<InvariantReport> {
    let n = sch.dim();
    let mut report = base_report(n, None, sch.points().len(), gins, target)?;
    if let Some(w) = target {
        target_checks(&mut report, gins, w)?;
        let scaled_volume = w.volume() * crate::exact::factorial(n as u64);
        report
            .verdicts
            .insert("volume".into(), scaled_volume == Rational::from(sch.points().len()));
        if n == 2 {
            let floor = w.volume();
            report
                .verdicts
                .insert("area".into(), report.rows.iter().all(|r| r.area.as_ref().is_some_and(|a| *a >= floor)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::ProjPoint;

    fn conic(m: u32) -> FatPointScheme {
        let pts = (1..=6).map(|t| ProjPoint::from_i64(&[t * t, t, 1]).unwrap()).collect();
        FatPointScheme::new(2, pts, m).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let star = build_star(2, 3, StarMode::Vandermonde).unwrap();
        assert_eq!(alpha(&star.scheme(1).unwrap()).unwrap(), 2);
        assert_eq!(alpha(&star.scheme(2).unwrap()).unwrap(), 3);
        let star4 = build_star(2, 4, StarMode::Vandermonde).unwrap();
        assert_eq!(alpha(&star4.scheme(2).unwrap()).unwrap(), 4);
        assert_eq!(alpha(&conic(2)).unwrap(), 4);
    }

    #[test]
    fn star23_report() {
        let r = verify_theorem(2, 3, 2, StarMode::Vandermonde, &GinOptions::default(), None).unwrap();
        assert_eq!(r.rows[0].t, vec![2, 2]);
        assert_eq!(r.rows[1].t, vec![3, 4]);
        assert_eq!(r.waldschmidt_min, ratio(3, 2));
        assert_eq!(r.asreg_estimate, Rational::from(2));
        assert!(r.all_pass(), "{:?}", r.failed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["waldschmidt_min"], "3/2");
        assert_eq!(json["rows"][0]["colength"], 3);
        assert_eq!(json["verdicts"]["V1"], true);
    }

    #[test]
    fn star24_vertices_and_colengths() {
        let r = verify_theorem(2, 4, 2, StarMode::Vandermonde, &GinOptions::default(), None).unwrap();
        assert_eq!(r.rows[1].t[0], 4);
        assert_eq!(r.rows[0].t[1], 3);
        assert_eq!(r.rows.iter().map(|r| r.colength).collect::<Vec<_>>(), vec![6, 18]);
        assert!(r.verdicts["V1"] && r.verdicts["V4"]);
    }

    #[test]
    fn m_max_below_n_rejected() {
        assert!(verify_theorem(2, 4, 1, StarMode::Vandermonde, &GinOptions::default(), None).is_err());
    }

    #[test]
    fn conic_first_power() {
        let sch = conic(1);
        let good = CornerSimplex::new(vec![Rational::from(2), Rational::from(3)]).unwrap();
        let r = verify_scheme(&sch, 2, Some(&good), &GinOptions::default(), None).unwrap();
        assert_eq!(r.rows[0].alpha, 2);
        // Six points on a conic are a complete intersection of a conic and a
        // cubic, so the regularity of the ideal is 4.
        assert_eq!(r.rows[0].reg, 4);
        assert_eq!(r.rows[1].alpha, 4);
        assert!(r.all_pass(), "{:?}", r.failed());
        let wrong = CornerSimplex::new(vec![Rational::from(2), Rational::from(2)]).unwrap();
        let r = verify_scheme(&sch, 2, Some(&wrong), &GinOptions::default(), None).unwrap();
        assert!(!r.verdicts["volume"]);
        assert!(!r.all_pass());
    }

    #[test]
    fn waldschmidt_running_min() {
        let star = build_star(2, 3, StarMode::Vandermonde).unwrap();
        let gins = compute_gins(&star.scheme(1).unwrap(), &[1, 2], &GinOptions::default(), None).unwrap();
        let w = waldschmidt_estimate(&gins);
        assert_eq!(w.ratios, vec![Rational::from(2), ratio(3, 2)]);
        assert_eq!(w.running_min, vec![Rational::from(2), ratio(3, 2)]);
        assert_eq!(asreg_estimate(&gins), vec![Rational::from(2), Rational::from(2)]);
    }

    #[test]
    fn csv_columns() {
        let r = verify_theorem(2, 3, 2, StarMode::Vandermonde, &GinOptions::default(), None).unwrap();
        assert_eq!(r.to_csv(), "m,alpha,t_1,t_2,reg,colength\n1,2,2,2,2,3\n2,3,3,4,4,9\n");
        assert!(r.render().contains("V1: pass"));
    }
}
