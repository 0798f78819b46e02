//! Experiments around finite-support pairs `(f, g)` linked by Möbius inversion:
//! witness conditions and witness streams, verification of the identity
//! `f(z) = mu(y, z) f(y)`, support censuses, and windowed searches.

mod census;
mod conditions;
mod conjecture;
mod search;
mod verify;
mod witness;

pub use census::{support_census, SupportCensus, SupportVerdict};
pub use conditions::{check_witness_conditions, WitnessCheck, WitnessChecker};
pub use conjecture::{conjecture_experiment, CensusPair, ConjectureReport};
pub use search::{finite_support_pair_search, pair_search_with, PairSearchResult, SHELL_CAVEAT};
pub use verify::{invert_over_ideal, verify_theorem_conclusion, DEFAULT_WITNESS_BUDGET};
pub use witness::{
    witnesses, witnesses_with, FreshGround, FreshPrime, Scan, WitnessRegistry, WitnessStrategy,
    WitnessStream,
};

use serde_json::{json, Value};

use crate::poset::{join_encodings, Element};
use crate::scalar::GaussianRational;

/// A candidate `z` checked against the three witness conditions for `(y, S)`.
///
/// `predicted_fz` and `observed_fz` are filled in when a concrete function is
/// under test.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCertificate {
    pub y: Element,
    pub avoid_set: Vec<Element>,
    pub z: Element,
    pub cond_disjoint: bool,
    pub cond_factorize: bool,
    pub cond_nonzero: bool,
    pub mu_yz: GaussianRational,
    pub predicted_fz: Option<GaussianRational>,
    pub observed_fz: Option<GaussianRational>,
}

impl WitnessCertificate {
    pub fn all_conditions(&self) -> bool {
        self.cond_disjoint && self.cond_factorize && self.cond_nonzero
    }

    pub fn to_json(&self) -> Value {
        json!({
            "y": self.y.to_string(),
            "avoid_set": self.avoid_set.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "z": self.z.to_string(),
            "cond_disjoint": self.cond_disjoint,
            "cond_factorize": self.cond_factorize,
            "cond_nonzero": self.cond_nonzero,
            "mu_yz": self.mu_yz.to_string(),
            "predicted_fz": self.predicted_fz.as_ref().map(ToString::to_string),
            "observed_fz": self.observed_fz.as_ref().map(ToString::to_string),
        })
    }

    /// One-line rendering for terminals.
    pub fn summary(&self) -> String {
        let mut line = format!(
            "z={} mu(y,z)={} conditions=({},{},{})",
            self.z, self.mu_yz, self.cond_disjoint, self.cond_factorize, self.cond_nonzero
        );
        if let (Some(p), Some(o)) = (&self.predicted_fz, &self.observed_fz) {
            line.push_str(&format!(" predicted f(z)={p} observed f(z)={o}"));
        }
        line
    }
}

pub(crate) fn elements_json(items: &[Element]) -> Value {
    Value::Array(items.iter().map(|e| Value::String(e.to_string())).collect())
}

pub(crate) fn elements_text(items: &[Element]) -> String {
    join_encodings(items)
}
