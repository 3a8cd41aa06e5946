//! Finite step-function calculus: distribution functions, decreasing
//! rearrangements, Hardy–Littlewood–Pólya submajorization, and Halperin
//! level functions.
//!
//! Everything here is exact: a step function is a finite list of
//! `(length, value)` pieces laid end to end from 0 (zero beyond), so every
//! integral is a finite sum. Sequences are the special case of unit lengths.
//!
//! The level function `f⁰` of a decreasing `f` against a weight `w` is the
//! `W`-time derivative of the least concave majorant of `F(t) = ∫₀ᵗ f`
//! re-parameterized by `s = W(t)`, times `w`. For step inputs this collapses
//! to a pool-adjacent-violators pass over cells: the ratio `f⁰/w` is the
//! antitonic regression of the per-cell ratios `∫f / ∫w` weighted by `∫w`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Function,
    Sequence,
}

/// The underlying measure space: `[0, γ)` with Lebesgue measure, or `ℕ`
/// with counting measure (where `γ` is ignored).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub gamma: f64,
    pub kind: Kind,
}

impl Domain {
    pub fn function(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::invalid_spec("gamma must be positive"));
        }
        Ok(Domain {
            gamma,
            kind: Kind::Function,
        })
    }

    pub fn sequence() -> Self {
        Domain {
            gamma: f64::INFINITY,
            kind: Kind::Sequence,
        }
    }
}

/// A finitely supported nonnegative step function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFunction {
    pieces: Vec<(f64, f64)>,
}

impl StepFunction {
    /// Build from `(length, value)` pieces; adjacent equal values are merged.
    pub fn new(pieces: Vec<(f64, f64)>) -> Result<Self> {
        for &(len, val) in &pieces {
            if !(len > 0.0 && len.is_finite()) {
                return Err(Error::invalid_spec("piece lengths must be positive and finite"));
            }
            if !(val >= 0.0 && val.is_finite()) {
                return Err(Error::invalid_spec("piece values must be ≥ 0 and finite"));
            }
        }
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (len, val) in pieces {
            match merged.last_mut() {
                Some(last) if last.1 == val => last.0 += len,
                _ => merged.push((len, val)),
            }
        }
        Ok(StepFunction { pieces: merged })
    }

    pub fn zero() -> Self {
        StepFunction { pieces: Vec::new() }
    }

    /// A sequence as a step function with unit lengths.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| (1.0, v)).collect())
    }

    /// `c·χ_(0,t)`.
    pub fn indicator(t: f64, c: f64) -> Result<Self> {
        Self::new(vec![(t, c)])
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|&(_, v)| v == 0.0)
    }

    /// Total length carried by pieces (zero pieces included).
    pub fn total_length(&self) -> f64 {
        self.pieces.iter().map(|&(l, _)| l).sum()
    }

    /// Measure of `{f > 0}`.
    pub fn support_measure(&self) -> f64 {
        self.pieces
            .iter()
            .filter(|&&(_, v)| v > 0.0)
            .map(|&(l, _)| l)
            .sum()
    }

    pub fn max_value(&self) -> f64 {
        self.pieces.iter().map(|&(_, v)| v).fold(0.0, f64::max)
    }

    /// `∫ f` (a finite sum).
    pub fn integral(&self) -> f64 {
        self.pieces.iter().map(|&(l, v)| l * v).sum()
    }

    /// `∫₀ᵗ f` for the function laid out piece by piece from 0.
    pub fn integral_to(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        let mut pos = 0.0;
        for &(len, val) in &self.pieces {
            if t <= pos + len {
                return acc + (t - pos) * val;
            }
            acc += len * val;
            pos += len;
        }
        acc
    }

    /// Value at `t` (zero beyond the pieces).
    pub fn value_at(&self, t: f64) -> f64 {
        let mut pos = 0.0;
        for &(len, val) in &self.pieces {
            if t < pos + len {
                return val;
            }
            pos += len;
        }
        0.0
    }

    /// Distribution function `d_f(λ) = μ{ |f| > λ }`. Requires `λ ≥ 0`
    /// (below zero the measure would be the whole domain, which a bare step
    /// function does not know).
    pub fn distribution(&self, lambda: f64) -> f64 {
        assert!(lambda >= 0.0, "distribution is evaluated at λ ≥ 0");
        self.pieces
            .iter()
            .filter(|&&(_, v)| v > lambda)
            .map(|&(l, _)| l)
            .sum()
    }

    /// Decreasing rearrangement: pieces sorted by value, equal values merged,
    /// trailing zeros trimmed. Equimeasurable with the input by construction.
    pub fn rearrange(&self) -> StepFunction {
        let mut pieces = self.pieces.clone();
        pieces.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("values are finite"));
        while pieces.last().map(|&(_, v)| v == 0.0).unwrap_or(false) {
            pieces.pop();
        }
        StepFunction::new(pieces).expect("sorted pieces stay valid")
    }

    pub fn is_decreasing(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0].1 >= w[1].1)
    }

    /// Scale values by `c ≥ 0`.
    pub fn scale(&self, c: f64) -> StepFunction {
        assert!(c >= 0.0 && c.is_finite());
        StepFunction::new(self.pieces.iter().map(|&(l, v)| (l, c * v)).collect())
            .expect("scaling preserves validity")
    }

    /// Pointwise sum of the two laid-out functions.
    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let mut cuts: Vec<f64> = Vec::new();
        let mut pos = 0.0;
        for &(l, _) in &self.pieces {
            pos += l;
            cuts.push(pos);
        }
        pos = 0.0;
        for &(l, _) in &other.pieces {
            pos += l;
            cuts.push(pos);
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut pieces = Vec::with_capacity(cuts.len());
        let mut prev = 0.0;
        for cut in cuts {
            if cut <= prev {
                continue;
            }
            let mid = 0.5 * (prev + cut);
            pieces.push((cut - prev, self.value_at(mid) + other.value_at(mid)));
            prev = cut;
        }
        StepFunction::new(pieces).expect("merged pieces stay valid")
    }

    /// Concatenate `other` after this function's pieces (disjoint supports).
    pub fn concat(&self, other: &StepFunction) -> StepFunction {
        let mut pieces = self.pieces.clone();
        pieces.extend_from_slice(&other.pieces);
        StepFunction::new(pieces).expect("concatenation stays valid")
    }

    /// Hardy–Littlewood–Pólya submajorization test: `self ≻ other`, i.e.
    /// `∫₀ᵗ other* ≤ ∫₀ᵗ self*` for all `t`. Both cumulatives are concave
    /// piecewise-linear, so checking the union of breakpoints decides it.
    pub fn submajorizes(&self, other: &StepFunction) -> bool {
        let g = self.rearrange();
        let f = other.rearrange();
        let mut cuts: Vec<f64> = Vec::new();
        let mut pos = 0.0;
        for &(l, _) in g.pieces() {
            pos += l;
            cuts.push(pos);
        }
        pos = 0.0;
        for &(l, _) in f.pieces() {
            pos += l;
            cuts.push(pos);
        }
        cuts.iter()
            .all(|&t| f.integral_to(t) <= g.integral_to(t) + 1e-12 * (1.0 + g.integral_to(t)))
    }
}

/// The level function `f⁰` of a decreasing step function against a weight,
/// stored through its block ratios: `f⁰ = ratio_j · w` on block `j`, so
/// `f⁰/w` is the nonincreasing step function of the ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelFunction {
    /// `(t-length, ∫ w over the block, ratio)` per level block.
    blocks: Vec<(f64, f64, f64)>,
}

impl LevelFunction {
    pub fn blocks(&self) -> &[(f64, f64, f64)] {
        &self.blocks
    }

    /// The nonincreasing ratio step `f⁰/w`.
    pub fn ratio_step(&self) -> StepFunction {
        StepFunction::new(self.blocks.iter().map(|&(l, _, r)| (l, r)).collect())
            .expect("ratios are valid piece values")
    }

    /// `∫ f⁰` (equals `∫ f` by construction).
    pub fn total_mass(&self) -> f64 {
        self.blocks.iter().map(|&(_, wm, r)| wm * r).sum()
    }

    /// `∫₀ᵗ f⁰` (needs the weight to integrate inside a block).
    pub fn integral_to(&self, t: f64, w: &Weight) -> f64 {
        let mut acc = 0.0;
        let mut pos = 0.0;
        for &(len, wm, r) in &self.blocks {
            if t <= pos + len {
                let partial = w.big_w_unchecked(t) - w.big_w_unchecked(pos);
                return acc + r * partial;
            }
            acc += r * wm;
            pos += len;
        }
        acc
    }

    /// `f⁰(t) = ratio(t)·w(t)`.
    pub fn value_at(&self, t: f64, w: &Weight) -> f64 {
        let mut pos = 0.0;
        for &(len, _, r) in &self.blocks {
            if t < pos + len {
                return r * w.eval(t);
            }
            pos += len;
        }
        0.0
    }
}

/// Halperin level function of a decreasing step function.
///
/// Splits the pieces of `f` at the weight's own breakpoints (each refined
/// cell is then an atomic pooling unit), computes per-cell ratios
/// `mass/∫w`, and pools adjacent violators until the ratios are
/// nonincreasing. The defining properties — `f⁰/w` nonincreasing,
/// `∫₀ᵗ f⁰ ≥ ∫₀ᵗ f` with equality at the end of the support, `f⁰ = f`
/// off the pooled intervals — hold exactly for the result.
pub fn level_function(f: &StepFunction, w: &Weight) -> Result<LevelFunction> {
    if !f.is_decreasing() {
        return Err(Error::precondition(
            "level_function expects a decreasing input; call rearrange first",
        ));
    }
    let total = f.total_length();
    if total > w.gamma() + 1e-12 * (1.0 + w.gamma()) {
        return Err(Error::precondition(format!(
            "support length {total} exceeds γ = {}",
            w.gamma()
        )));
    }

    // trailing zeros never move mass; drop them
    let mut pieces: Vec<(f64, f64)> = f.pieces().to_vec();
    while pieces.last().map(|&(_, v)| v == 0.0).unwrap_or(false) {
        pieces.pop();
    }
    if pieces.is_empty() {
        return Ok(LevelFunction { blocks: Vec::new() });
    }

    // refine at weight breakpoints so each cell sees one weight regime
    let support: f64 = pieces.iter().map(|&(l, _)| l).sum();
    let mut cuts = w.breakpoints_within(support);
    let mut pos = 0.0;
    for &(l, _) in &pieces {
        pos += l;
        cuts.push(pos);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * (1.0 + b.abs()));

    // stack-based pool-adjacent-violators on (length, ∫w, mass)
    let mut stack: Vec<(f64, f64, f64)> = Vec::with_capacity(cuts.len());
    let mut prev_cut = 0.0;
    for &cut in &cuts {
        if cut <= prev_cut {
            continue;
        }
        let len = cut - prev_cut;
        let v = f.value_at(0.5 * (prev_cut + cut));
        let wm = w.big_w_unchecked(cut) - w.big_w_unchecked(prev_cut);
        let mut block = (len, wm, v * len);
        while let Some(&(pl, pw, pm)) = stack.last() {
            // violator: previous ratio strictly below the incoming one
            if pm / pw < block.2 / block.1 {
                stack.pop();
                block = (pl + block.0, pw + block.1, pm + block.2);
            } else {
                break;
            }
        }
        stack.push(block);
        prev_cut = cut;
    }

    Ok(LevelFunction {
        blocks: stack
            .into_iter()
            .map(|(len, wm, mass)| (len, wm, mass / wm))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::INF;

    fn sf(pieces: &[(f64, f64)]) -> StepFunction {
        StepFunction::new(pieces.to_vec()).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let f = sf(&[(1.0, 1.0), (1.0, 3.0), (1.0, 2.0)]);
        assert_eq!(f.distribution(1.5), 2.0);
        assert_eq!(f.distribution(3.0), 0.0);
        assert_eq!(sf(&[(4.0, 1.0)]).distribution(0.0), 4.0);
    }

    #[test]
    fn rearrange_examples() {
        let f = sf(&[(1.0, 1.0), (1.0, 3.0), (1.0, 2.0)]);
        assert_eq!(
            f.rearrange().pieces(),
            &[(1.0, 3.0), (1.0, 2.0), (1.0, 1.0)]
        );
        let dec = sf(&[(1.0, 3.0), (2.0, 1.0)]);
        assert_eq!(dec.rearrange(), dec);
        assert_eq!(dec.rearrange().rearrange(), dec.rearrange());
    }

    #[test]
    fn rearrangement_is_equimeasurable() {
        let f = sf(&[(2.0, 1.0), (1.0, 5.0)]);
        let fstar = f.rearrange();
        assert_eq!(fstar.pieces(), &[(1.0, 5.0), (2.0, 1.0)]);
        for lambda in [0.5, 1.0, 3.0, 5.0] {
            assert_eq!(f.distribution(lambda), fstar.distribution(lambda));
        }
    }

    #[test]
    fn submajorization_examples() {
        let f = sf(&[(2.0, 1.0), (1.0, 5.0)]);
        assert!(f.submajorizes(&f));
        // χ_(0,2) ≺ 2χ_(0,1): min(t,2) ≤ 2·min(t,1)
        let chi2 = sf(&[(2.0, 1.0)]);
        let tall = sf(&[(1.0, 2.0)]);
        assert!(tall.submajorizes(&chi2));
        // 2χ_(0,2) ⊀ χ_(0,1): at t = 1, 2 > 1
        let wide = sf(&[(2.0, 2.0)]);
        let chi1 = sf(&[(1.0, 1.0)]);
        assert!(!chi1.submajorizes(&wide));
    }

    #[test]
    fn add_aligns_breakpoints() {
        let f = sf(&[(1.0, 1.0), (1.0, 2.0)]);
        let g = sf(&[(0.5, 3.0)]);
        let sum = f.add(&g);
        assert_eq!(sum.value_at(0.25), 4.0);
        assert_eq!(sum.value_at(0.75), 1.0);
        assert_eq!(sum.value_at(1.5), 2.0);
        assert!((sum.integral() - (f.integral() + g.integral())).abs() < 1e-14);
    }

    #[test]
    fn level_of_indicator_matches_identity() {
        // ((χ_(0,t))*)⁰ = (t·w/W(t))·χ_(0,t): the ratio block is t/W(t)
        for w in [
            Weight::constant(1.0, INF).unwrap(),
            Weight::power_decay(0.5, INF).unwrap(),
        ] {
            for t in [0.25, 1.0, 3.0] {
                let f = StepFunction::indicator(t, 1.0).unwrap();
                let level = level_function(&f, &w).unwrap();
                assert_eq!(level.blocks().len(), 1);
                let (len, _, ratio) = level.blocks()[0];
                assert_eq!(len, t);
                let expected = t / w.big_w(t).unwrap();
                assert!((ratio - expected).abs() <= 1e-15 * (1.0 + expected));
            }
        }
    }

    #[test]
    fn level_is_identity_when_ratio_already_decreasing() {
        let w = Weight::constant(1.0, INF).unwrap();
        let f = sf(&[(1.0, 2.0), (1.0, 1.0)]);
        let level = level_function(&f, &w).unwrap();
        assert_eq!(level.ratio_step(), f);
    }

    #[test]
    fn level_pools_increasing_ratio_region() {
        // f = χ_(0,2) against w = t^{−1/2}: f/w increases, one pooled block
        let w = Weight::power_decay(0.5, INF).unwrap();
        let f = sf(&[(1.0, 1.0), (1.0, 1.0), (2.0, 0.0)]);
        let level = level_function(&f.rearrange(), &w).unwrap();
        assert_eq!(level.blocks().len(), 1);
        let (_, _, ratio) = level.blocks()[0];
        assert!((ratio - 2.0 / w.big_w(2.0).unwrap()).abs() < 1e-15);
        assert!((level.total_mass() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn level_requires_decreasing_input() {
        let w = Weight::constant(1.0, INF).unwrap();
        let f = sf(&[(1.0, 1.0), (1.0, 2.0)]);
        assert!(level_function(&f, &w).is_err());
        assert!(level_function(&f.rearrange(), &w).is_ok());
    }

    #[test]
    fn level_refines_at_weight_breakpoints() {
        let w = Weight::tabulated(vec![(1.0, 2.0), (4.0, 1.0)], INF).unwrap();
        let f = sf(&[(2.0, 3.0)]);
        let level = level_function(&f, &w).unwrap();
        // f/w = 3/2 then 3: increasing, so one pooled block of ratio 2
        assert_eq!(level.blocks().len(), 1);
        assert!((level.blocks()[0].2 - 6.0 / 3.0).abs() < 1e-15);
        // mass is preserved exactly
        assert!((level.total_mass() - f.integral()).abs() < 1e-15);
    }
}
