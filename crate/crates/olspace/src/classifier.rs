//! Three-valued classification of Banach-space geometry for Orlicz–Lorentz
//! spaces.
//!
//! Each rule takes only the analytically decidable data of a `(φ, w, kind)`
//! triple — the growth report of `φ`, its constants `a`/`d`, the limit
//! `lim_{t→0+} t/W(t)` (computed per weight family, never extrapolated) and
//! weight regularity — and emits a verdict with the rule identifier and the
//! checked premises. A premise that cannot be decided forces `unknown`:
//! rules never guess.
//!
//! The "appropriate" doubling condition depends on the underlying measure
//! space: `Δ₂^∞` on a finite interval, full `Δ₂` on `[0, ∞)`, and `Δ₂⁰` for
//! sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{Side, SpaceSpec};
use crate::orlicz::{GrowthProbe, GrowthReport};
use crate::rearrangement::Kind;
use crate::verdict::Verdict3;
use crate::weight::{Weight, WeightFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Hash)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    Rnp,
    Sd2p,
    D2p,
    Ld2p,
    Dld2p,
    Dd2p,
    Daugavet,
    OrderContinuousSubspaceIsMIdeal,
    DualOctahedral,
    DualWeaklyOctahedral,
    DualLocallyOctahedral,
    IsometricallyL1,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Premise {
    pub name: String,
    pub verdict: Verdict3,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Entry {
    pub property: Property,
    pub verdict: Verdict3,
    pub rule: String,
    pub premises: Vec<Premise>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub entries: Vec<Entry>,
}

impl ClassificationReport {
    pub fn verdict(&self, property: Property) -> Verdict3 {
        self.entries
            .iter()
            .find(|e| e.property == property)
            .map(|e| e.verdict)
            .unwrap_or(Verdict3::Unknown)
    }

    pub fn entry(&self, property: Property) -> Option<&Entry> {
        self.entries.iter().find(|e| e.property == property)
    }

    /// Post-hoc coherence: the monotone implication chains between the
    /// diameter-two properties and their diametral strengthenings, plus
    /// the small-slice obstruction.
    pub fn validate_implications(&self) -> Result<()> {
        let v = |p| self.verdict(p);
        let chain = |a: Verdict3, b: Verdict3, what: &str| -> Result<()> {
            if a.holds() && b.fails() {
                return Err(Error::precondition(format!("implication {what} violated")));
            }
            Ok(())
        };
        chain(v(Property::Sd2p), v(Property::D2p), "SD2P ⇒ D2P")?;
        chain(v(Property::D2p), v(Property::Ld2p), "D2P ⇒ LD2P")?;
        chain(v(Property::Daugavet), v(Property::Dd2p), "Daugavet ⇒ DD2P")?;
        chain(v(Property::Dd2p), v(Property::Dld2p), "DD2P ⇒ DLD2P")?;
        if v(Property::Rnp).holds() && !v(Property::Dld2p).is_unknown() && v(Property::Dld2p).holds()
        {
            return Err(Error::precondition(
                "RNP and DLD2P cannot both hold (small slices)".into(),
            ));
        }
        if v(Property::Rnp).holds() && v(Property::Ld2p).holds() {
            return Err(Error::precondition(
                "RNP and LD2P cannot both hold (small slices)".into(),
            ));
        }
        Ok(())
    }
}

/// Everything the rules look at, computed once.
struct RuleData {
    growth: GrowthReport,
    appropriate: Verdict3,
    n_inf: Verdict3,
    nondegenerate: bool,
    linear: bool,
    d_finite: bool,
    lim_t_over_w: f64,
    kind: Kind,
}

impl RuleData {
    fn new(spec: &SpaceSpec) -> Result<Self> {
        let phi = spec.phi_finite().map_err(|_| {
            Error::invalid_spec("classification rules apply to Λ-side specs; no dual-side rule set exists")
        })?;
        let growth = phi.growth_report(&GrowthProbe::default());
        let appropriate = appropriate_delta2(&growth, spec.kind(), spec.gamma());
        Ok(RuleData {
            n_inf: growth.n_at_infinity,
            appropriate,
            growth,
            nondegenerate: phi.a() == 0.0,
            linear: phi.is_linear(),
            d_finite: phi.d().is_finite(),
            lim_t_over_w: spec.weight().lim_t_over_w_at_zero(),
            kind: spec.kind(),
        })
    }

    fn lim_zero(&self) -> Verdict3 {
        Verdict3::from_bool(self.lim_t_over_w == 0.0)
    }

    fn premises(&self) -> Vec<Premise> {
        vec![
            Premise {
                name: "appropriate_delta2".into(),
                verdict: self.appropriate,
                detail: format!(
                    "Δ₂⁰ {}, Δ₂^∞ {}, Δ₂ {}",
                    self.growth.delta2_zero, self.growth.delta2_inf, self.growth.delta2_full
                ),
            },
            Premise {
                name: "n_function_at_infinity".into(),
                verdict: self.n_inf,
                detail: "lim φ(u)/u at ∞".into(),
            },
            Premise {
                name: "lim_t_over_w_zero".into(),
                verdict: self.lim_zero(),
                detail: format!("lim t/W(t) at 0+ = {}", self.lim_t_over_w),
            },
            Premise {
                name: "nondegenerate".into(),
                verdict: Verdict3::from_bool(self.nondegenerate),
                detail: "a_φ = 0".into(),
            },
        ]
    }
}

/// The doubling condition that matches the measure space: `Δ₂⁰` for
/// sequences, `Δ₂^∞` on a finite interval, full `Δ₂` on `[0, ∞)`.
pub fn appropriate_delta2(growth: &GrowthReport, kind: Kind, gamma: f64) -> Verdict3 {
    match kind {
        Kind::Sequence => growth.delta2_zero,
        Kind::Function => {
            if gamma.is_finite() {
                growth.delta2_inf
            } else {
                growth.delta2_full
            }
        }
    }
}

/// Radon–Nikodým property.
///
/// Function spaces: RNP ⟺ (N-function at ∞ or `t/W(t) → 0`) and the
/// appropriate doubling condition. Sequence spaces: RNP ⟺ `Δ₂⁰`. Linear `φ`
/// is reported through the Lorentz-space form of the rule (same verdict).
pub fn classify_rnp(spec: &SpaceSpec) -> Result<Entry> {
    if spec.side() == Side::M {
        return Err(Error::invalid_spec(
            "no RNP rule is available for the dual-side spaces",
        ));
    }
    let data = RuleData::new(spec)?;
    let entry = rnp_entry(&data);
    Ok(entry)
}

fn rnp_entry(data: &RuleData) -> Entry {
    let (verdict, rule) = match data.kind {
        Kind::Sequence => (data.growth.delta2_zero, "rnp.sequence (RNP ⟺ Δ₂⁰)"),
        Kind::Function => {
            if data.linear {
                (
                    data.lim_zero(),
                    "rnp.lorentz (linear φ: RNP ⟺ t/W(t) → 0)",
                )
            } else {
                (
                    data.n_inf.or(data.lim_zero()).and(data.appropriate),
                    "rnp.function (RNP ⟺ (N at ∞ ∨ t/W → 0) ∧ appropriate Δ₂)",
                )
            }
        }
    };
    Entry {
        property: Property::Rnp,
        verdict,
        rule: rule.into(),
        premises: data.premises(),
        note: None,
    }
}

/// Diameter-two bundle: SD2P/D2P/LD2P for the space (shared by its
/// order-continuous subspace) and the dual octahedralities.
pub fn classify_d2p_bundle(spec: &SpaceSpec) -> Result<Vec<Entry>> {
    let data = RuleData::new(spec)?;
    Ok(d2p_entries(&data))
}

fn d2p_entries(data: &RuleData) -> Vec<Entry> {
    let rnp = rnp_entry(&data).verdict;
    let premises = data.premises();
    let triple = [Property::Sd2p, Property::D2p, Property::Ld2p];
    let duals = [
        Property::DualOctahedral,
        Property::DualWeaklyOctahedral,
        Property::DualLocallyOctahedral,
    ];
    let mut out = Vec::new();

    if rnp.holds() {
        // small slices exist, so no diameter-two property can survive
        for p in triple {
            out.push(Entry {
                property: p,
                verdict: Verdict3::Fails,
                rule: "d2p.rnp-small-slices (RNP gives slices of arbitrarily small diameter)"
                    .into(),
                premises: premises.clone(),
                note: None,
            });
        }
        let dual_verdict = if data.nondegenerate && data.n_inf.holds() {
            Verdict3::Fails
        } else {
            Verdict3::Unknown
        };
        for p in duals {
            out.push(Entry {
                property: p,
                verdict: dual_verdict,
                rule: "d2p.equivalence (nondegenerate N at ∞: Δ₂ decides D2Ps and dual octahedralities together)".into(),
                premises: premises.clone(),
                note: if dual_verdict.is_unknown() {
                    Some("the equivalence with the dual octahedralities is established for nondegenerate N-functions at infinity only".into())
                } else {
                    None
                },
            });
        }
    } else if data.nondegenerate && data.appropriate.fails() {
        for p in triple {
            out.push(Entry {
                property: p,
                verdict: Verdict3::Holds,
                rule: "d2p.no-delta2-sufficient (nondegenerate φ without the appropriate Δ₂ forces the SD2P)".into(),
                premises: premises.clone(),
                note: Some("holds for the space and for its order-continuous subspace".into()),
            });
        }
        for p in duals {
            out.push(Entry {
                property: p,
                verdict: Verdict3::Holds,
                rule: "d2p.duality (subspace D2Ps transfer to octahedralities of the Köthe dual)"
                    .into(),
                premises: premises.clone(),
                note: None,
            });
        }
    } else {
        let note = if !data.nondegenerate {
            "degenerate φ: the sufficiency rule covers nondegenerate generators only"
        } else if data.appropriate.is_unknown() {
            "the appropriate Δ₂ condition could not be decided from the data"
        } else {
            "Δ₂ holds but φ is not an N-function at ∞: only the RNP route could decide, and it does not apply"
        };
        for p in triple.into_iter().chain(duals) {
            out.push(Entry {
                property: p,
                verdict: Verdict3::Unknown,
                rule: "d2p.no-rule".into(),
                premises: premises.clone(),
                note: Some(note.into()),
            });
        }
    }
    out
}

/// Daugavet property and the diametral diameter-two properties, plus the
/// `L₁`-isometry label. Function-space rules only.
pub fn classify_daugavet(spec: &SpaceSpec) -> Result<Vec<Entry>> {
    if spec.kind() == Kind::Sequence {
        return Err(Error::invalid_spec(
            "the Daugavet rules cover function spaces; none is stated for sequences",
        ));
    }
    let data = RuleData::new(spec)?;
    let premises = data.premises();
    let trio = [Property::Daugavet, Property::Dd2p, Property::Dld2p];
    let mut out = Vec::new();
    let mut iso_note = None;

    let (trio_verdict, rule, iso_verdict): (Verdict3, &str, Verdict3) = if data.d_finite {
        (
            Verdict3::Fails,
            "daugavet.requires-linear (a diametral D2P forces φ to be linear; d_φ < ∞ refutes it)",
            Verdict3::Unknown,
        )
    } else if data.lim_zero().holds() {
        (
            Verdict3::Fails,
            "daugavet.rnp-obstruction (t/W → 0 gives the RNP, which rules the diametral D2Ps out)",
            Verdict3::Unknown,
        )
    } else {
        let (regular, sup) = weight_regular(spec.weight());
        if regular.holds() {
            let w1 = if spec.gamma() >= 1.0 {
                spec.weight().big_w_unchecked(1.0)
            } else {
                f64::NAN
            };
            iso_note = Some(if (w1 - 1.0).abs() < 1e-12 {
                format!(
                    "regular weight (sup W/(t·w) = {sup:.6}); W(1) = 1, so the norms agree outright"
                )
            } else {
                format!("regular weight (sup W/(t·w) = {sup:.6})")
            });
            (
                Verdict3::Unknown,
                "daugavet.l1-isometry (linear φ with a regular weight: the space is an isometric L₁, Daugavet status itself undecided)",
                Verdict3::Holds,
            )
        } else {
            iso_note = Some(
                "open: whether a Lorentz space whose weight is not known to be regular (with t/W(t) bounded away from 0) can carry the Daugavet property or a diametral D2P"
                    .into(),
            );
            (
                Verdict3::Unknown,
                "daugavet.open-problem (linear φ, weight regularity undecided: no rule applies)",
                Verdict3::Unknown,
            )
        }
    };

    for p in trio {
        out.push(Entry {
            property: p,
            verdict: trio_verdict,
            rule: rule.into(),
            premises: premises.clone(),
            note: if trio_verdict.is_unknown() {
                iso_note.clone()
            } else {
                None
            },
        });
    }
    out.push(Entry {
        property: Property::IsometricallyL1,
        verdict: iso_verdict,
        rule: if iso_verdict.holds() {
            "daugavet.l1-isometry".into()
        } else {
            "iso-l1.no-rule".into()
        },
        premises,
        note: iso_note,
    });
    Ok(out)
}

/// Whether the order-continuous subspace is an M-ideal: holds for every
/// nondegenerate `φ` (function and sequence alike); the degenerate case is
/// outside the rule's coverage.
pub fn classify_m_ideal(spec: &SpaceSpec) -> Result<Entry> {
    let data = RuleData::new(spec)?;
    Ok(Entry {
        property: Property::OrderContinuousSubspaceIsMIdeal,
        verdict: if data.nondegenerate {
            Verdict3::Holds
        } else {
            Verdict3::Unknown
        },
        rule: "mideal.nondegenerate (a_φ = 0 makes the order-continuous subspace an M-ideal)"
            .into(),
        premises: data.premises(),
        note: if data.nondegenerate {
            None
        } else {
            Some("degenerate φ lies outside the rule's coverage".into())
        },
    })
}

/// Regularity of a weight in the adopted sense `sup_t W(t)/(t·w(t)) < ∞`.
///
/// Decided analytically for the parametric families. For tabulated weights
/// the supremum over a finite interval is exact (piece-start right limits
/// dominate), while on `[0, ∞)` the tail beyond the table is extrapolation,
/// so the verdict degrades to unknown with the probed supremum reported.
pub fn weight_regular(w: &Weight) -> (Verdict3, f64) {
    match w.family() {
        WeightFamily::Constant { .. } => (Verdict3::Holds, 1.0),
        WeightFamily::PowerDecay { alpha } => (Verdict3::Holds, 1.0 / (1.0 - alpha)),
        WeightFamily::ExpPlusConst { c } => {
            let top = if w.gamma().is_finite() { w.gamma() } else { 1e6 };
            let mut sup: f64 = 1.0;
            let n = 4096;
            for i in 1..=n {
                let t = top * i as f64 / n as f64;
                sup = sup.max(w.big_w_unchecked(t) / (t * ((-t).exp() + c)));
            }
            (Verdict3::Holds, sup)
        }
        WeightFamily::Tabulated { pieces } => {
            // within a piece the ratio decreases, so piece starts dominate
            let mut sup: f64 = 1.0;
            let mut pos = 0.0;
            for &(len, val) in pieces {
                if pos > 0.0 {
                    sup = sup.max(w.big_w_unchecked(pos) / (pos * val));
                }
                pos += len;
                if pos >= w.gamma() {
                    break;
                }
            }
            if w.gamma().is_finite() {
                let g = w.gamma();
                sup = sup.max(w.big_w_unchecked(g) / (g * w.eval(g * (1.0 - 1e-12))));
                (Verdict3::Holds, sup)
            } else {
                (Verdict3::Unknown, sup)
            }
        }
    }
}

/// Full report for a Λ-side spec: RNP, the diameter-two bundle, M-ideal
/// status, and (for function spaces) the Daugavet family.
pub fn classify(spec: &SpaceSpec) -> Result<ClassificationReport> {
    let mut entries = vec![classify_rnp(spec)?];
    entries.extend(classify_d2p_bundle(spec)?);
    entries.push(classify_m_ideal(spec)?);
    if spec.kind() == Kind::Function {
        entries.extend(classify_daugavet(spec)?);
    }
    let report = ClassificationReport { entries };
    report.validate_implications()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::{OrliczFunction, INF};

    fn spec(phi: OrliczFunction, w: Weight) -> SpaceSpec {
        SpaceSpec::lambda(phi, w, Kind::Function).unwrap()
    }

    #[test]
    fn rnp_examples() {
        // u² with t^{−1/2} on [0, ∞): N at ∞ and Δ₂ hold
        let s = spec(
            OrliczFunction::power(2.0, 1.0).unwrap(),
            Weight::power_decay(0.5, INF).unwrap(),
        );
        assert!(classify_rnp(&s).unwrap().verdict.holds());

        // linear φ with w ≡ 1: t/W(t) → 1 > 0
        let s = spec(
            OrliczFunction::linear(1.0).unwrap(),
            Weight::constant(1.0, INF).unwrap(),
        );
        let e = classify_rnp(&s).unwrap();
        assert!(e.verdict.fails());
        assert!(e.rule.starts_with("rnp.lorentz"));

        // e^u − 1 on [0, ∞): Δ₂ fails
        let s = spec(
            OrliczFunction::exp_minus_one(),
            Weight::constant(1.0, INF).unwrap(),
        );
        assert!(classify_rnp(&s).unwrap().verdict.fails());

        // dual side is unsupported
        let m = SpaceSpec::m_side(
            OrliczFunction::power(2.0, 1.0).unwrap().conjugate(),
            Weight::constant(1.0, INF).unwrap(),
            Kind::Function,
        )
        .unwrap();
        assert!(classify_rnp(&m).is_err());
    }

    #[test]
    fn rnp_sequence_rule() {
        let s = SpaceSpec::lambda(
            OrliczFunction::exp_minus_one(),
            Weight::constant(1.0, INF).unwrap(),
            Kind::Sequence,
        )
        .unwrap();
        // Δ₂⁰ holds for e^u − 1, so the sequence space has the RNP
        assert!(classify_rnp(&s).unwrap().verdict.holds());
    }

    #[test]
    fn d2p_examples() {
        // e^u − 1 on [0, ∞): no Δ₂, so SD2P and the dual octahedralities hold
        let s = spec(
            OrliczFunction::exp_minus_one(),
            Weight::constant(1.0, INF).unwrap(),
        );
        let report = classify(&s).unwrap();
        assert!(report.verdict(Property::Sd2p).holds());
        assert!(report.verdict(Property::DualOctahedral).holds());

        // u² on [0, ∞): RNP kills the bundle
        let s = spec(
            OrliczFunction::power(2.0, 1.0).unwrap(),
            Weight::constant(1.0, INF).unwrap(),
        );
        let report = classify(&s).unwrap();
        assert!(report.verdict(Property::Ld2p).fails());
        assert!(report.verdict(Property::DualOctahedral).fails());

        // linear φ with W = 2√t: RNP holds via the Lorentz rule, bundle fails,
        // but the dual equivalence needs N at ∞ and stays unknown
        let s = spec(
            OrliczFunction::linear(1.0).unwrap(),
            Weight::power_decay(0.5, INF).unwrap(),
        );
        let report = classify(&s).unwrap();
        assert!(report.verdict(Property::Rnp).holds());
        assert!(report.verdict(Property::Ld2p).fails());
        assert!(report.verdict(Property::DualOctahedral).is_unknown());
    }

    #[test]
    fn daugavet_examples() {
        // nonlinear φ: the whole diametral family fails
        let s = spec(
            OrliczFunction::power(2.0, 1.0).unwrap(),
            Weight::power_decay(0.5, INF).unwrap(),
        );
        let report = classify(&s).unwrap();
        assert!(report.verdict(Property::Daugavet).fails());

        // φ = u, w ≡ 1: W(1) = 1, isometric L₁ with equal norms
        let s = spec(
            OrliczFunction::linear(1.0).unwrap(),
            Weight::constant(1.0, INF).unwrap(),
        );
        let report = classify(&s).unwrap();
        assert!(report.verdict(Property::IsometricallyL1).holds());
        assert!(report.verdict(Property::Daugavet).is_unknown());
        assert!(report
            .entry(Property::IsometricallyL1)
            .unwrap()
            .note
            .as_deref()
            .unwrap()
            .contains("W(1) = 1"));

        // φ = u with t^{−1/2}: the RNP route refutes the diametral family
        let s = spec(
            OrliczFunction::linear(1.0).unwrap(),
            Weight::power_decay(0.5, INF).unwrap(),
        );
        let report = classify(&s).unwrap();
        assert!(report.verdict(Property::Daugavet).fails());
    }

    #[test]
    fn m_ideal_examples() {
        let w = Weight::constant(1.0, INF).unwrap();
        for phi in [
            OrliczFunction::power(2.0, 1.0).unwrap(),
            OrliczFunction::exp_minus_one(),
        ] {
            let e = classify_m_ideal(&spec(phi, w.clone())).unwrap();
            assert!(e.verdict.holds());
        }
        let degenerate = OrliczFunction::linear_splice_power_with_slope(1.0, 2.0, 0.0).unwrap();
        let e = classify_m_ideal(&spec(degenerate, w)).unwrap();
        assert!(e.verdict.is_unknown());
    }

    #[test]
    fn weight_regular_examples() {
        let (v, sup) = weight_regular(&Weight::constant(2.0, INF).unwrap());
        assert!(v.holds());
        assert_eq!(sup, 1.0);
        let (v, sup) = weight_regular(&Weight::power_decay(0.5, INF).unwrap());
        assert!(v.holds());
        assert_eq!(sup, 2.0);
        // tabulated tail on an infinite interval: unknown beyond the probed range
        let (v, _) = weight_regular(&Weight::tabulated(vec![(1.0, 2.0), (1.0, 1.0)], INF).unwrap());
        assert!(v.is_unknown());
        let (v, _) =
            weight_regular(&Weight::tabulated(vec![(1.0, 2.0), (1.0, 1.0)], 2.0).unwrap());
        assert!(v.holds());
    }

    #[test]
    fn reports_are_coherent() {
        for (phi, w) in [
            (
                OrliczFunction::power(2.0, 1.0).unwrap(),
                Weight::constant(1.0, INF).unwrap(),
            ),
            (
                OrliczFunction::exp_minus_one(),
                Weight::power_decay(0.5, INF).unwrap(),
            ),
            (
                OrliczFunction::linear(1.0).unwrap(),
                Weight::constant(1.0, 1.0).unwrap(),
            ),
        ] {
            classify(&spec(phi, w)).unwrap().validate_implications().unwrap();
        }
    }
}
