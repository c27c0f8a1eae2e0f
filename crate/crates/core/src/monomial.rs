//! Exponent vectors, the degree reverse-lexicographic order and monomial
//! ideals viewed as staircases.
//!
//! Variables are indexed from 0 in code; variable 0 is the largest
//! (`x_1 > x_2 > ... > x_k`).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x^a`, stored as its exponent tuple with a cached degree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct ExponentVector {
    exps: Vec<u32>,
    degree: u32,
}

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        ExponentVector { exps, degree }
    }

    pub fn zero(num_vars: usize) -> Self {
        Self::new(vec![0; num_vars])
    }

    /// `x_var^power` in `num_vars` variables.
    pub fn pure_power(num_vars: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; num_vars];
        exps[var] = power;
        Self::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self * x_var`.
    pub fn times_var(&self, var: usize) -> Self {
        let mut exps = self.exps.clone();
        exps[var] += 1;
        ExponentVector { exps, degree: self.degree + 1 }
    }

    /// `self / x_var`, or `None` if `x_var` does not divide it.
    pub fn div_var(&self, var: usize) -> Option<Self> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[var] -= 1;
        Some(ExponentVector { exps, degree: self.degree - 1 })
    }

    /// The vector with the last coordinate removed.
    pub fn drop_last(&self) -> Self {
        Self::new(self.exps[..self.exps.len().saturating_sub(1)].to_vec())
    }

    /// The vector with `extra` appended as a new last coordinate.
    pub fn with_last(&self, extra: u32) -> Self {
        let mut exps = self.exps.clone();
        exps.push(extra);
        Self::new(exps)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(exps: Vec<u32>) -> Self {
        Self::new(exps)
    }
}

impl From<ExponentVector> for Vec<u32> {
    fn from(e: ExponentVector) -> Self {
        e.exps
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl fmt::Display for ExponentVector {
    /// Renders as `x1^3*x2`, or `1` for the unit monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn revlex_unchecked(u: &ExponentVector, v: &ExponentVector) -> Ordering {
    u.degree.cmp(&v.degree).then_with(|| {
        for (a, b) in u.exps.iter().zip(&v.exps).rev() {
            if a != b {
                // Smaller exponent at the last difference is the larger monomial.
                return b.cmp(a);
            }
        }
        Ordering::Equal
    })
}

/// Degree reverse-lexicographic comparison.
pub fn revlex_compare(u: &ExponentVector, v: &ExponentVector) -> Result<Ordering> {
    if u.num_vars() != v.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "comparing monomials in {} and {} variables",
            u.num_vars(),
            v.num_vars()
        )));
    }
    Ok(revlex_unchecked(u, v))
}

/// Revlex, with vectors of different lengths ordered by length first so that
/// the order is total on the whole type.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num_vars().cmp(&other.num_vars()).then_with(|| revlex_unchecked(self, other))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All degree-`d` monomials in `k` variables, in descending revlex order.
pub fn monomials_of_degree(k: usize, d: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(ExponentVector::zero(0));
        }
        return out;
    }
    let mut cur = vec![0u32; k];
    fill(&mut cur, 0, d, &mut out);
    out.sort_by(|a, b| revlex_unchecked(b, a));
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<ExponentVector>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(ExponentVector::new(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
}

/// Number of standard monomials, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

/// A monomial ideal given by its minimal generators.
///
/// Construction always minimalizes; generators are kept in descending
/// lexicographic order of their exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal", into = "RawIdeal")]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<ExponentVector>,
}

#[derive(Serialize, Deserialize)]
struct RawIdeal {
    num_vars: usize,
    generators: Vec<ExponentVector>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = Error;
    fn try_from(raw: RawIdeal) -> Result<Self> {
        MonomialIdeal::new(raw.num_vars, raw.generators)
    }
}

impl From<MonomialIdeal> for RawIdeal {
    fn from(j: MonomialIdeal) -> Self {
        RawIdeal { num_vars: j.num_vars, generators: j.gens }
    }
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, minimalized.
    pub fn new(num_vars: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let gens: Vec<ExponentVector> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::DimensionMismatch(format!(
                "generator {bad:?} does not have {num_vars} variables"
            )));
        }
        Ok(minimalize_unchecked(num_vars, gens))
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal { num_vars, gens: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True iff some generator divides `u`.
    pub fn contains(&self, u: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// Strong stability: every Borel move of a generator stays in the ideal.
    pub fn is_borel_fixed(&self) -> bool {
        self.gens.iter().all(|g| {
            (1..self.num_vars).all(|j| match g.div_var(j) {
                None => true,
                Some(h) => (0..j).all(|i| self.contains(&h.times_var(i))),
            })
        })
    }

    /// Number of degree-`d` monomials outside the ideal.
    pub fn hilbert_function(&self, d: u32) -> u64 {
        monomials_of_degree(self.num_vars, d).iter().filter(|u| !self.contains(u)).count() as u64
    }

    /// Smallest `p` with `x_var^p` in the ideal.
    pub fn pure_power_threshold(&self, var: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.exps.iter().enumerate().all(|(i, &e)| i == var || e == 0))
            .map(|g| g.exps[var])
            .min()
    }

    /// Largest degree of a minimal generator.
    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(ExponentVector::degree).max()
    }

    /// Smallest degree of a minimal generator.
    pub fn min_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(ExponentVector::degree).min()
    }

    /// All standard monomials, or `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<ExponentVector>> {
        let bounds: Vec<u32> = (0..self.num_vars).map(|v| self.pure_power_threshold(v)).collect::<Option<_>>()?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.num_vars];
        loop {
            let u = ExponentVector::new(cur.clone());
            if !self.contains(&u) {
                out.push(u);
            }
            // Odometer step inside the bounding box.
            let mut i = 0;
            loop {
                if i == self.num_vars {
                    return Some(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn colength(&self) -> Colength {
        match self.standard_monomials() {
            Some(s) => Colength::Finite(s.len() as u64),
            None => Colength::Infinite,
        }
    }
}

/// Removes every generator divisible by another one.
pub fn minimalize(num_vars: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(num_vars, gens)
}

fn minimalize_unchecked(num_vars: usize, mut gens: Vec<ExponentVector>) -> MonomialIdeal {
    // Ascending degree: a divisor always comes before its multiples.
    gens.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| b.exps.cmp(&a.exps)));
    gens.dedup();
    let mut kept: Vec<ExponentVector> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.exps.cmp(&a.exps));
    MonomialIdeal { num_vars, gens: kept }
}
