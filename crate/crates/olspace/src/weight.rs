//! Weight functions `w` and their primitives `W(t) = ∫₀ᵗ w`.
//!
//! A weight is a decreasing, positive, locally integrable function on
//! `[0, γ)`. When `γ = ∞` the primitive must diverge (`∫₀^∞ w = ∞`);
//! constructors reject violations. On the sequence side the weight values
//! are the unit-cell averages `w(i) = W(i) − W(i−1)`, which makes the
//! sequence partial sums agree with `W` at the integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const INF: f64 = f64::INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    /// `w ≡ c`, `W(t) = c·t`.
    Constant { c: f64 },
    /// `w(t) = t^{−α}`, `α ∈ [0, 1)`, `W(t) = t^{1−α}/(1−α)`.
    PowerDecay { alpha: f64 },
    /// `w(t) = e^{−t} + c`, `W(t) = 1 − e^{−t} + c·t`. Needs `c > 0` on an
    /// infinite interval, otherwise `∫₀^∞ w = 1 < ∞`.
    ExpPlusConst { c: f64 },
    /// Decreasing positive step weight; the last value extends past the
    /// table, so the weight is defined on all of `[0, γ)`.
    Tabulated { pieces: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    family: WeightFamily,
    gamma: f64,
}

impl Weight {
    pub fn new(family: WeightFamily, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::invalid_spec("gamma must be positive"));
        }
        match &family {
            WeightFamily::Constant { c } => {
                if !(*c > 0.0 && c.is_finite()) {
                    return Err(Error::invalid_spec("constant weight needs c > 0"));
                }
            }
            WeightFamily::PowerDecay { alpha } => {
                if !(*alpha >= 0.0 && *alpha < 1.0) {
                    return Err(Error::invalid_spec("power-decay weight needs α ∈ [0, 1)"));
                }
            }
            WeightFamily::ExpPlusConst { c } => {
                if !(*c >= 0.0 && c.is_finite()) {
                    return Err(Error::invalid_spec("exp-plus-const weight needs c ≥ 0"));
                }
                if gamma.is_infinite() && *c == 0.0 {
                    return Err(Error::invalid_spec(
                        "a pure exponential has finite mass; on γ = ∞ the primitive must diverge",
                    ));
                }
            }
            WeightFamily::Tabulated { pieces } => {
                if pieces.is_empty() {
                    return Err(Error::invalid_spec("tabulated weight needs pieces"));
                }
                let mut prev = INF;
                for &(len, val) in pieces {
                    if !(len > 0.0 && len.is_finite()) || !(val > 0.0 && val.is_finite()) {
                        return Err(Error::invalid_spec(
                            "tabulated weight pieces need positive finite length and value",
                        ));
                    }
                    if val > prev {
                        return Err(Error::invalid_spec("tabulated weight must be decreasing"));
                    }
                    prev = val;
                }
            }
        }
        Ok(Weight { family, gamma })
    }

    pub fn constant(c: f64, gamma: f64) -> Result<Self> {
        Self::new(WeightFamily::Constant { c }, gamma)
    }
    pub fn power_decay(alpha: f64, gamma: f64) -> Result<Self> {
        Self::new(WeightFamily::PowerDecay { alpha }, gamma)
    }
    pub fn exp_plus_const(c: f64, gamma: f64) -> Result<Self> {
        Self::new(WeightFamily::ExpPlusConst { c }, gamma)
    }
    pub fn tabulated(pieces: Vec<(f64, f64)>, gamma: f64) -> Result<Self> {
        Self::new(WeightFamily::Tabulated { pieces }, gamma)
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `w(t)` for `t ∈ (0, γ)`; `w(0)` may be `∞` (power decay).
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match &self.family {
            WeightFamily::Constant { c } => *c,
            WeightFamily::PowerDecay { alpha } => {
                if *alpha == 0.0 {
                    1.0
                } else {
                    t.powf(-alpha)
                }
            }
            WeightFamily::ExpPlusConst { c } => (-t).exp() + c,
            WeightFamily::Tabulated { pieces } => {
                let mut acc = 0.0;
                for &(len, val) in pieces {
                    acc += len;
                    if t < acc {
                        return val;
                    }
                }
                pieces[pieces.len() - 1].1
            }
        }
    }

    /// `W(t) = ∫₀ᵗ w`, exact per family; `t` may equal `γ` when finite.
    pub fn big_w(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || t > self.gamma {
            return Err(Error::domain(format!(
                "W is defined on [0, γ = {}], got {t}",
                self.gamma
            )));
        }
        Ok(self.big_w_unchecked(t))
    }

    pub(crate) fn big_w_unchecked(&self, t: f64) -> f64 {
        match &self.family {
            WeightFamily::Constant { c } => c * t,
            WeightFamily::PowerDecay { alpha } => t.powf(1.0 - alpha) / (1.0 - alpha),
            WeightFamily::ExpPlusConst { c } => 1.0 - (-t).exp() + c * t,
            WeightFamily::Tabulated { pieces } => {
                let mut acc = 0.0;
                let mut w = 0.0;
                for &(len, val) in pieces {
                    if t <= acc + len {
                        return w + (t - acc) * val;
                    }
                    acc += len;
                    w += len * val;
                }
                w + (t - acc) * pieces[pieces.len() - 1].1
            }
        }
    }

    /// Inverse of the strictly increasing primitive: the `t` with `W(t) = s`.
    pub fn inv_big_w(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(Error::domain("W⁻¹ needs s ≥ 0".into()));
        }
        let t = match &self.family {
            WeightFamily::Constant { c } => s / c,
            WeightFamily::PowerDecay { alpha } => ((1.0 - alpha) * s).powf(1.0 / (1.0 - alpha)),
            WeightFamily::ExpPlusConst { .. } => {
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                while self.big_w_unchecked(hi) < s && hi < 1e300 {
                    hi *= 2.0;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.big_w_unchecked(mid) < s {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
            WeightFamily::Tabulated { pieces } => {
                let mut acc = 0.0;
                let mut w = 0.0;
                let mut t = None;
                for &(len, val) in pieces {
                    if s <= w + len * val {
                        t = Some(acc + (s - w) / val);
                        break;
                    }
                    acc += len;
                    w += len * val;
                }
                t.unwrap_or_else(|| acc + (s - w) / pieces[pieces.len() - 1].1)
            }
        };
        if t > self.gamma {
            return Err(Error::domain(format!(
                "W⁻¹({s}) = {t} lies beyond γ = {}",
                self.gamma
            )));
        }
        Ok(t)
    }

    /// Interior breakpoints of `w` in `(0, t)` (tabulated piece boundaries).
    pub(crate) fn breakpoints_within(&self, t: f64) -> Vec<f64> {
        match &self.family {
            WeightFamily::Tabulated { pieces } => {
                let mut out = Vec::new();
                let mut acc = 0.0;
                for &(len, _) in pieces {
                    acc += len;
                    if acc < t {
                        out.push(acc);
                    } else {
                        break;
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// Sequence weight `w(i) = W(i) − W(i−1)`, `i ≥ 1`.
    pub fn seq_w(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        self.big_w_unchecked(i as f64) - self.big_w_unchecked(i as f64 - 1.0)
    }

    /// `lim_{t→0+} t/W(t)`, decided analytically per family (several
    /// classification rules hinge on whether this limit vanishes).
    pub fn lim_t_over_w_at_zero(&self) -> f64 {
        match &self.family {
            WeightFamily::Constant { c } => 1.0 / c,
            WeightFamily::PowerDecay { alpha } => {
                if *alpha == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            WeightFamily::ExpPlusConst { c } => 1.0 / (1.0 + c),
            WeightFamily::Tabulated { pieces } => 1.0 / pieces[0].1,
        }
    }

    /// `lim_{t→0+} W(t)/t = w(0+)` (`∞` for genuine power decay).
    pub fn slope_at_zero(&self) -> f64 {
        let l = self.lim_t_over_w_at_zero();
        if l == 0.0 {
            INF
        } else {
            1.0 / l
        }
    }
}

// ---------------------------------------------------------------------------
// serde wire format ("inf" spells an infinite γ; JSON has no ∞ literal)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaSpec {
    Number(f64),
    Word(String),
}

impl GammaSpec {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            GammaSpec::Number(x) => Ok(*x),
            GammaSpec::Word(s) if s == "inf" => Ok(INF),
            GammaSpec::Word(s) => Err(Error::invalid_spec(format!(
                "gamma must be a number or \"inf\", got {s:?}"
            ))),
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x.is_infinite() {
            GammaSpec::Word("inf".to_string())
        } else {
            GammaSpec::Number(x)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightFamilySpec {
    Constant { c: f64, gamma: GammaSpec },
    PowerDecay { alpha: f64, gamma: GammaSpec },
    ExpPlusConst { c: f64, gamma: GammaSpec },
    Tabulated { pieces: Vec<(f64, f64)>, gamma: GammaSpec },
}

impl WeightFamilySpec {
    pub fn to_weight(&self) -> Result<Weight> {
        match self {
            WeightFamilySpec::Constant { c, gamma } => Weight::constant(*c, gamma.to_f64()?),
            WeightFamilySpec::PowerDecay { alpha, gamma } => {
                Weight::power_decay(*alpha, gamma.to_f64()?)
            }
            WeightFamilySpec::ExpPlusConst { c, gamma } => {
                Weight::exp_plus_const(*c, gamma.to_f64()?)
            }
            WeightFamilySpec::Tabulated { pieces, gamma } => {
                Weight::tabulated(pieces.clone(), gamma.to_f64()?)
            }
        }
    }

    pub fn from_weight(w: &Weight) -> Self {
        let gamma = GammaSpec::from_f64(w.gamma());
        match w.family() {
            WeightFamily::Constant { c } => WeightFamilySpec::Constant { c: *c, gamma },
            WeightFamily::PowerDecay { alpha } => WeightFamilySpec::PowerDecay {
                alpha: *alpha,
                gamma,
            },
            WeightFamily::ExpPlusConst { c } => WeightFamilySpec::ExpPlusConst { c: *c, gamma },
            WeightFamily::Tabulated { pieces } => WeightFamilySpec::Tabulated {
                pieces: pieces.clone(),
                gamma,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_w_examples() {
        let w = Weight::constant(1.0, INF).unwrap();
        assert_eq!(w.big_w(4.0).unwrap(), 4.0);
        let w = Weight::power_decay(0.5, INF).unwrap();
        assert_eq!(w.big_w(4.0).unwrap(), 4.0); // 2·√4
        let w = Weight::tabulated(vec![(1.0, 2.0), (1.0, 1.0)], INF).unwrap();
        assert_eq!(w.big_w(1.5).unwrap(), 2.5);
        assert_eq!(w.big_w(3.0).unwrap(), 4.0); // last value extends
        assert!(Weight::constant(1.0, 1.0).unwrap().big_w(2.0).is_err());
    }

    #[test]
    fn inv_big_w_round_trips() {
        for w in [
            Weight::constant(2.0, INF).unwrap(),
            Weight::power_decay(0.5, INF).unwrap(),
            Weight::exp_plus_const(0.5, INF).unwrap(),
            Weight::tabulated(vec![(1.0, 2.0), (2.0, 0.5)], INF).unwrap(),
        ] {
            for s in [0.1, 1.0, 2.5, 7.0] {
                let t = w.inv_big_w(s).unwrap();
                assert!((w.big_w_unchecked(t) - s).abs() < 1e-10 * (1.0 + s));
            }
        }
    }

    #[test]
    fn infinite_interval_needs_infinite_mass() {
        assert!(Weight::exp_plus_const(0.0, INF).is_err());
        assert!(Weight::exp_plus_const(0.0, 10.0).is_ok());
    }

    #[test]
    fn sequence_weights_sum_to_big_w() {
        let w = Weight::power_decay(0.5, INF).unwrap();
        let total: f64 = (1..=5).map(|i| w.seq_w(i)).sum();
        assert!((total - w.big_w(5.0).unwrap()).abs() < 1e-12);
        // geometric-looking sequence weight via a tabulated family
        let w = Weight::tabulated(vec![(1.0, 1.0), (1.0, 0.5), (1.0, 0.25)], INF).unwrap();
        assert_eq!(w.seq_w(1), 1.0);
        assert_eq!(w.seq_w(2), 0.5);
        assert_eq!(w.seq_w(3), 0.25);
    }

    #[test]
    fn zero_limits() {
        assert_eq!(Weight::constant(2.0, INF).unwrap().lim_t_over_w_at_zero(), 0.5);
        assert_eq!(Weight::power_decay(0.5, INF).unwrap().lim_t_over_w_at_zero(), 0.0);
        assert_eq!(Weight::power_decay(0.0, INF).unwrap().lim_t_over_w_at_zero(), 1.0);
    }

    #[test]
    fn gamma_spec_round_trip() {
        let spec: WeightFamilySpec =
            serde_json::from_str(r#"{"family":"power_decay","alpha":0.5,"gamma":"inf"}"#).unwrap();
        let w = spec.to_weight().unwrap();
        assert!(w.gamma().is_infinite());
        let back = serde_json::to_string(&WeightFamilySpec::from_weight(&w)).unwrap();
        assert!(back.contains("\"inf\""));
    }
}
