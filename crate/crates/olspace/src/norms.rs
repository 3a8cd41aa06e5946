//! Modulars and norms of Orlicz–Lorentz spaces and their Köthe duals.
//!
//! A [`SpaceSpec`] names one of the four spaces built from a generating
//! function `φ` and a weight `w`:
//!
//! * `Λ_{φ,w}` / `λ_{φ,w}` — the Orlicz–Lorentz function/sequence space with
//!   modular `ρ_{φ,w}(f) = ∫ φ(f*)·w` (resp. `α_{φ,w}(x) = Σ φ(x*(i))·w(i)`),
//! * `M_{φ,w}` / `m_{φ,w}` — the dual-side spaces with modulars
//!   `Q_{φ,w}(f) = ∫ φ((f*)⁰/w)·w` and
//!   `P_{φ,w}(f) = inf{ ∫ φ(f*/v)·v : v ≺ w, v > 0, v↓ }`.
//!
//! `P ≤ Q` always, with equality on indicator functions and whenever `φ` is
//! an N-function; both induce the same Luxemburg norm, so norm computations
//! on the dual side run through the exact `Q` while `P` stays available as
//! the independent convex program. All norms come from scalar searches over
//! exact modular evaluations: the Luxemburg norm by bisection of
//! `ε ↦ modular(f/ε)`, the Orlicz/Amemiya norm by golden-section on
//! `k ↦ (1 + P(kf))/k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orlicz::{ExtendedOrliczFunction, OrliczFunction, OrliczSpec};
use crate::rearrangement::{level_function, Kind, StepFunction};
use crate::solver::PerspectiveProblem;
use crate::weight::{Weight, WeightFamilySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lambda,
    M,
}

/// Generating function, stored per side: the Λ side needs a finite Orlicz
/// function, the dual side admits extended ones (conjugates in particular).
#[derive(Debug, Clone)]
pub enum SpacePhi {
    Lambda(OrliczFunction),
    M(ExtendedOrliczFunction),
}

/// A triple `(φ, w, kind)` plus a side, identifying `Λ_{φ,w}`, `λ_{φ,w}`,
/// `M_{φ,w}` or `m_{φ,w}`.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    phi: SpacePhi,
    weight: Weight,
    kind: Kind,
}

impl SpaceSpec {
    pub fn lambda(phi: OrliczFunction, weight: Weight, kind: Kind) -> Result<Self> {
        Self::validate(kind, &weight)?;
        Ok(SpaceSpec {
            phi: SpacePhi::Lambda(phi),
            weight,
            kind,
        })
    }

    pub fn m_side(phi: ExtendedOrliczFunction, weight: Weight, kind: Kind) -> Result<Self> {
        Self::validate(kind, &weight)?;
        Ok(SpaceSpec {
            phi: SpacePhi::M(phi),
            weight,
            kind,
        })
    }

    fn validate(kind: Kind, weight: &Weight) -> Result<()> {
        if kind == Kind::Sequence && weight.gamma().is_finite() {
            return Err(Error::invalid_spec(
                "sequence spaces live over the counting measure; use gamma = inf",
            ));
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        match self.phi {
            SpacePhi::Lambda(_) => Side::Lambda,
            SpacePhi::M(_) => Side::M,
        }
    }
    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn weight(&self) -> &Weight {
        &self.weight
    }
    pub fn gamma(&self) -> f64 {
        self.weight.gamma()
    }

    pub fn phi_finite(&self) -> Result<&OrliczFunction> {
        match &self.phi {
            SpacePhi::Lambda(phi) => Ok(phi),
            SpacePhi::M(_) => Err(Error::invalid_spec(
                "operation needs the Λ-side finite generating function",
            )),
        }
    }

    pub fn phi_extended(&self) -> Result<&ExtendedOrliczFunction> {
        match &self.phi {
            SpacePhi::M(phi) => Ok(phi),
            SpacePhi::Lambda(_) => Err(Error::invalid_spec(
                "operation needs the dual-side generating function",
            )),
        }
    }

    fn check_support(&self, f: &StepFunction) -> Result<()> {
        let total = f.total_length();
        let gamma = self.gamma();
        if self.kind == Kind::Function && total > gamma + 1e-12 * (1.0 + gamma) {
            return Err(Error::precondition(format!(
                "support length {total} exceeds γ = {gamma}"
            )));
        }
        if self.kind == Kind::Sequence {
            for &(len, _) in f.pieces() {
                if (len - len.round()).abs() > 1e-9 {
                    return Err(Error::precondition(
                        "sequence-space elements need integer piece lengths",
                    ));
                }
            }
        }
        Ok(())
    }

    /// The Luxemburg norm `inf{ε > 0 : modular(f/ε) ≤ 1}`, with the `ρ`/`α`
    /// modular on the Λ side and the `Q` modular on the dual side.
    pub fn luxemburg_norm(&self, f: &StepFunction) -> Result<f64> {
        let scaled = self.scaled_modular(f)?;
        Ok(luxemburg_norm(scaled))
    }

    /// Precompute the modular's level structure once and return
    /// `ε ↦ modular(f/ε)`: rearrangement and level blocks are positively
    /// homogeneous, so scaling only touches the generating function argument.
    pub fn scaled_modular<'a>(&'a self, f: &StepFunction) -> Result<impl Fn(f64) -> f64 + 'a> {
        self.check_support(f)?;
        let pairs: Vec<(f64, f64)> = match &self.phi {
            SpacePhi::Lambda(_) => {
                let fstar = f.rearrange();
                self.weighted_pairs(&fstar)
            }
            SpacePhi::M(_) => level_function(&f.rearrange(), &self.weight)?
                .blocks()
                .iter()
                .map(|&(_, wm, r)| (r, wm))
                .collect(),
        };
        let phi = self.phi.clone();
        Ok(move |eps: f64| {
            let mut total = 0.0;
            for &(v, wm) in &pairs {
                if v == 0.0 {
                    continue;
                }
                let val = match &phi {
                    SpacePhi::Lambda(p) => p.val(v / eps),
                    SpacePhi::M(p) => p.val(v / eps),
                };
                if val.is_infinite() {
                    return f64::INFINITY;
                }
                total += val * wm;
            }
            total
        })
    }

    /// `(value, ΔW)` pairs over the pieces of a decreasing step function.
    fn weighted_pairs(&self, fstar: &StepFunction) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(fstar.pieces().len());
        let mut pos = 0.0;
        for &(len, val) in fstar.pieces() {
            let next = pos + len;
            out.push((
                val,
                self.weight.big_w_unchecked(next) - self.weight.big_w_unchecked(pos),
            ));
            pos = next;
        }
        out
    }
}

/// `ρ_{φ,w}(f) = ∫ φ(f*)·w` — exact finite sum over the pieces of `f*`.
pub fn modular_rho(spec: &SpaceSpec, f: &StepFunction) -> Result<f64> {
    if spec.side() != Side::Lambda || spec.kind() != Kind::Function {
        return Err(Error::invalid_spec("ρ is the Λ-side function modular"));
    }
    lambda_modular(spec, f)
}

/// `α_{φ,w}(x) = Σ φ(x*(i))·w(i)` — the sequence modular.
pub fn modular_alpha(spec: &SpaceSpec, x: &StepFunction) -> Result<f64> {
    if spec.side() != Side::Lambda || spec.kind() != Kind::Sequence {
        return Err(Error::invalid_spec("α is the Λ-side sequence modular"));
    }
    lambda_modular(spec, x)
}

fn lambda_modular(spec: &SpaceSpec, f: &StepFunction) -> Result<f64> {
    spec.check_support(f)?;
    let phi = spec.phi_finite()?;
    let fstar = f.rearrange();
    let mut total = 0.0;
    for (v, wm) in spec.weighted_pairs(&fstar) {
        if v == 0.0 {
            continue;
        }
        let val = phi.val(v);
        if val.is_infinite() {
            return Ok(f64::INFINITY);
        }
        total += val * wm;
    }
    Ok(total)
}

/// `Q_{φ,w}(f) = ∫ φ((f*)⁰/w)·w`, exact through the level blocks; `∞`
/// propagates when a block ratio exceeds `b_φ`.
pub fn modular_q(spec: &SpaceSpec, f: &StepFunction) -> Result<f64> {
    spec.check_support(f)?;
    let phi = spec.phi_extended()?;
    let level = level_function(&f.rearrange(), spec.weight())?;
    let mut total = 0.0;
    for &(_, wm, r) in level.blocks() {
        if r == 0.0 {
            continue;
        }
        let val = phi.val(r);
        if val.is_infinite() {
            return Ok(f64::INFINITY);
        }
        total += val * wm;
    }
    Ok(total)
}

/// Outcome of the `P`-modular convex program.
#[derive(Debug, Clone)]
pub struct PSolution {
    pub value: f64,
    pub minimizer: StepFunction,
    pub iterations: usize,
}

/// `P_{φ,w}(f) = inf{ ∫ φ(f*/v)·v : v ≺ w, v > 0, v↓ }` by projected
/// gradient descent over a cell discretization of `[0, T]`.
///
/// Cells subdivide each piece of `f*` (refined at the weight's own
/// breakpoints), so every breakpoint is a cell boundary and the cumulative
/// caps are exact. On the sequence side cells are the integers. This is the
/// brute-force side of the `P = Q` checks: it never consults the level
/// function. Exhausting the iteration budget is a numerical failure carrying
/// the best value found (an upper bound on `P`).
pub fn modular_p(spec: &SpaceSpec, f: &StepFunction, n_panels: usize) -> Result<PSolution> {
    spec.check_support(f)?;
    let phi = spec.phi_extended()?;
    let fstar = f.rearrange();
    if fstar.is_zero() {
        return Ok(PSolution {
            value: 0.0,
            minimizer: StepFunction::zero(),
            iterations: 0,
        });
    }
    let support: f64 = fstar.total_length();
    if n_panels < fstar.pieces().len() {
        return Err(Error::precondition(
            "n_panels must be at least the number of pieces of f*",
        ));
    }

    // cell boundaries: piece ends, weight breakpoints, then even subdivision
    let mut cuts: Vec<f64> = spec.weight().breakpoints_within(support);
    let mut pos = 0.0;
    for &(len, _) in fstar.pieces() {
        pos += len;
        cuts.push(pos);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * (1.0 + b.abs()));
    let boundaries: Vec<f64> = if spec.kind() == Kind::Sequence {
        (1..=support.round() as usize).map(|i| i as f64).collect()
    } else {
        let mut bs = Vec::with_capacity(n_panels + cuts.len());
        let mut prev = 0.0;
        for &cut in &cuts {
            let m = ((n_panels as f64) * (cut - prev) / support).ceil().max(1.0) as usize;
            for j in 1..=m {
                bs.push(prev + (cut - prev) * j as f64 / m as f64);
            }
            prev = cut;
        }
        bs
    };

    let mut fvals = Vec::with_capacity(boundaries.len());
    let mut dts = Vec::with_capacity(boundaries.len());
    let mut caps = Vec::with_capacity(boundaries.len());
    let mut prev = 0.0;
    for &bd in &boundaries {
        fvals.push(fstar.value_at(0.5 * (prev + bd)));
        dts.push(bd - prev);
        caps.push(spec.weight().big_w_unchecked(bd));
        prev = bd;
    }

    let problem = PerspectiveProblem {
        phi,
        f: fvals,
        dt: dts.clone(),
        caps,
    };
    let out = problem.solve(10_000);
    let minimizer = StepFunction::new(dts.into_iter().zip(out.v).collect())
        .expect("solver output stays a valid step function");
    if !out.converged {
        return Err(Error::Numerical {
            message: "P-modular projected gradient exhausted its iteration budget".to_string(),
            best: out.value,
        });
    }
    Ok(PSolution {
        value: out.value,
        minimizer,
        iterations: out.iterations,
    })
}

/// Exact `∫ φ(f*/v)·v` for explicit step `v` — used to certify one-sided
/// bounds against candidate competitors without going through the solver.
pub fn perspective_objective(
    phi: &ExtendedOrliczFunction,
    fstar: &StepFunction,
    v: &StepFunction,
) -> f64 {
    let mut cuts: Vec<f64> = Vec::new();
    let mut pos = 0.0;
    for &(l, _) in fstar.pieces() {
        pos += l;
        cuts.push(pos);
    }
    pos = 0.0;
    for &(l, _) in v.pieces() {
        pos += l;
        cuts.push(pos);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let mut total = 0.0;
    let mut prev = 0.0;
    for &cut in &cuts {
        if cut <= prev {
            continue;
        }
        let mid = 0.5 * (prev + cut);
        let fv = fstar.value_at(mid);
        if fv > 0.0 {
            let vv = v.value_at(mid);
            if vv <= 0.0 {
                return f64::INFINITY;
            }
            let val = phi.val(fv / vv);
            if val.is_infinite() {
                return f64::INFINITY;
            }
            total += val * vv * (cut - prev);
        }
        prev = cut;
    }
    total
}

/// `inf{ε > 0 : modular(f/ε) ≤ 1}` for a nonincreasing `ε ↦ modular(f/ε)`
/// (∞ counts as "> 1", which handles finite-`b_φ` generating functions with
/// no special casing). Returns 0 when the modular never exceeds 1 and `∞`
/// when it never drops to 1.
pub fn luxemburg_norm(modular_at: impl Fn(f64) -> f64) -> f64 {
    let mut lo;
    let mut hi;
    if modular_at(1.0) <= 1.0 {
        hi = 1.0;
        lo = 0.5;
        let mut n = 0;
        while modular_at(lo) <= 1.0 {
            hi = lo;
            lo *= 0.5;
            n += 1;
            if n > 1100 {
                return 0.0;
            }
        }
    } else {
        lo = 1.0;
        hi = 2.0;
        let mut n = 0;
        while modular_at(hi) > 1.0 {
            lo = hi;
            hi *= 2.0;
            n += 1;
            if n > 1100 {
                return f64::INFINITY;
            }
        }
    }
    // invariant: modular(lo) > 1 ≥ modular(hi); the feasible set is right-closed
    for _ in 0..200 {
        if hi - lo <= 5e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if modular_at(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Orlicz (Amemiya) norm `inf_{k>0} (1 + P(kf))/k` by golden-section search
/// after geometric bracketing; uses `Q` in place of `P` when `φ` is an
/// N-function (they agree there) and the convex program otherwise.
pub fn orlicz_amemiya_norm(spec: &SpaceSpec, f: &StepFunction, n_panels: usize) -> Result<f64> {
    spec.check_support(f)?;
    let phi = spec.phi_extended()?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let use_q = phi.is_n_function();
    let modular = |k: f64| -> Result<f64> {
        let kf = f.scale(k);
        if use_q {
            modular_q(spec, &kf)
        } else {
            match modular_p(spec, &kf, n_panels) {
                Ok(sol) => Ok(sol.value),
                Err(Error::Numerical { best, .. }) => Ok(best),
                Err(e) => Err(e),
            }
        }
    };
    let g = |k: f64| -> Result<f64> { Ok((1.0 + modular(k)?) / k) };

    // geometric sweep to bracket the (unimodal) minimum
    let mut ks = vec![1.0f64];
    let mut best_k = 1.0;
    let mut best_g = g(1.0)?;
    for i in 1..=60 {
        for k in [2f64.powi(i), 2f64.powi(-i)] {
            let gv = g(k)?;
            ks.push(k);
            if gv < best_g {
                best_g = gv;
                best_k = k;
            }
        }
        if best_g.is_finite() && i > 4 {
            break;
        }
    }
    if !best_g.is_finite() {
        return Ok(f64::INFINITY);
    }
    let (mut lo, mut hi) = (best_k / 4.0, best_k * 4.0);
    const PHI_RATIO: f64 = 0.618_033_988_749_894_9;
    for _ in 0..120 {
        let m1 = hi - PHI_RATIO * (hi - lo);
        let m2 = lo + PHI_RATIO * (hi - lo);
        let (g1, g2) = (g(m1)?, g(m2)?);
        if g1 < g2 {
            hi = m2;
            if g1 < best_g {
                best_g = g1;
            }
        } else {
            lo = m1;
            if g2 < best_g {
                best_g = g2;
            }
        }
        if hi - lo <= 1e-9 * hi {
            break;
        }
    }
    Ok(best_g)
}

/// Fundamental function of the Λ side: `1/φ⁻¹(1/W(t))` with the inverse
/// restricted to `(a_φ, b_φ]`.
pub fn fundamental_lambda(spec: &SpaceSpec, t: f64) -> Result<f64> {
    let phi = spec.phi_finite()?;
    let w = fundamental_weight_arg(spec, t)?;
    Ok(1.0 / phi.inverse_upper(1.0 / w)?)
}

/// Fundamental function of the dual side: `(t/W(t)) / φ⁻¹(1/W(t))`, the
/// restricted inverse clamping to `b_φ` when `1/W(t)` exceeds every finite
/// value of `φ` (the jump case).
pub fn fundamental_m(spec: &SpaceSpec, t: f64) -> Result<f64> {
    let phi = spec.phi_extended()?;
    let w = fundamental_weight_arg(spec, t)?;
    Ok((t / w) / phi.inverse_upper(1.0 / w)?)
}

fn fundamental_weight_arg(spec: &SpaceSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) || t >= spec.gamma() {
        return Err(Error::domain(format!(
            "fundamental functions are defined for 0 < t < γ = {}, got {t}",
            spec.gamma()
        )));
    }
    if spec.kind() == Kind::Sequence {
        if (t - t.round()).abs() > 1e-9 || t < 1.0 {
            return Err(Error::domain(
                "sequence-side fundamental functions take integer t ≥ 1".to_string(),
            ));
        }
    }
    Ok(spec.weight().big_w_unchecked(t))
}

/// The distribution-function form of the `Λ_{1,w}` norm:
/// `‖f‖_{1,w} = ∫₀^∞ W(d_f(λ)) dλ`, an exact finite sum because `d_f` is a
/// step function of `λ`. Coincides with `∫ f*·w`.
pub fn lorentz_norm_distribution(w: &Weight, f: &StepFunction) -> f64 {
    let mut values: Vec<f64> = f
        .pieces()
        .iter()
        .map(|&(_, v)| v)
        .filter(|&v| v > 0.0)
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values.dedup();
    let mut total = 0.0;
    let mut prev = 0.0;
    for &v in &values {
        // d_f(λ) is constant on [prev, v): the measure of {f ≥ v}
        let measure: f64 = f
            .pieces()
            .iter()
            .filter(|&&(_, val)| val >= v)
            .map(|&(l, _)| l)
            .sum();
        total += (v - prev) * w.big_w_unchecked(measure);
        prev = v;
    }
    total
}

// ---------------------------------------------------------------------------
// serde wire format
// ---------------------------------------------------------------------------

/// Wire form of a [`SpaceSpec`]:
/// `{"orlicz":{...},"weight":{...,"gamma":...},"kind":"function","side":"lambda"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpecJson {
    pub orlicz: OrliczSpec,
    pub weight: WeightFamilySpec,
    pub kind: Kind,
    pub side: Side,
}

impl SpaceSpecJson {
    pub fn to_spec(&self) -> Result<SpaceSpec> {
        let weight = self.weight.to_weight()?;
        match self.side {
            Side::Lambda => SpaceSpec::lambda(self.orlicz.to_finite()?, weight, self.kind),
            Side::M => SpaceSpec::m_side(self.orlicz.to_extended()?, weight, self.kind),
        }
    }
}

impl std::str::FromStr for SpaceSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<SpaceSpec> {
        let json: SpaceSpecJson = serde_json::from_str(s)
            .map_err(|e| Error::invalid_spec(format!("malformed space spec: {e}")))?;
        json.to_spec()
    }
}
