//! Numerics for Orlicz–Lorentz spaces `Λ_{φ,w}` / `λ_{φ,w}` and their
//! Köthe duals `M_{φ,w}` / `m_{φ,w}`: rearrangement calculus, modulars,
//! Luxemburg and Orlicz (Amemiya) norms, fundamental functions, a rule
//! engine classifying geometric properties (Radon–Nikodým, diameter-two
//! family, Daugavet family, M-ideal status, dual octahedralities), and a
//! seeded verification harness that confirms the closed formulas against
//! independent brute-force oracles.
//!
//! ```
//! use olspace::prelude::*;
//!
//! // Λ_{φ,w} with φ(u) = u² and w(t) = t^{−1/2} on [0, ∞)
//! let phi = OrliczFunction::power(2.0, 1.0)?;
//! let w = Weight::power_decay(0.5, f64::INFINITY)?;
//! let space = SpaceSpec::lambda(phi, w, Kind::Function)?;
//!
//! // ‖χ_(0,4)‖ = 1/φ⁻¹(1/W(4)) = 2
//! let f = StepFunction::indicator(4.0, 1.0)?;
//! let norm = space.luxemburg_norm(&f)?;
//! assert!((norm - 2.0).abs() < 1e-9);
//! # Ok::<(), olspace::Error>(())
//! ```

pub mod classifier;
pub mod error;
pub mod norms;
pub mod orlicz;
pub mod rearrangement;
mod solver;
pub mod verdict;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::classifier::{classify, weight_regular, ClassificationReport, Property};
    pub use crate::error::{Error, Result};
    pub use crate::norms::{
        fundamental_lambda, fundamental_m, lorentz_norm_distribution, luxemburg_norm,
        modular_alpha, modular_p, modular_q, modular_rho, orlicz_amemiya_norm, Side, SpaceSpec,
    };
    pub use crate::orlicz::{ExtendedOrliczFunction, GrowthProbe, OrliczFunction};
    pub use crate::rearrangement::{level_function, Domain, Kind, StepFunction};
    pub use crate::verdict::Verdict3;
    pub use crate::verify::{run_suite, Suite};
    pub use crate::weight::Weight;
}

// The book's code fences run as doctests so the guide cannot drift from the
// API. Non-Rust fences are ignored by rustdoc.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(orlicz_functions, "../../../book/src/orlicz-functions.md");
    chapter!(rearrangements, "../../../book/src/rearrangements.md");
    chapter!(norms_and_modulars, "../../../book/src/norms-and-modulars.md");
    chapter!(classification, "../../../book/src/classification.md");
    chapter!(verification, "../../../book/src/verification.md");
    chapter!(cli, "../../../book/src/cli.md");
}
