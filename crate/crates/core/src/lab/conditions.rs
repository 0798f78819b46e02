use crate::error::{PosetError, Result};
use crate::incidence::IntervalFunction;
use crate::poset::{Element, PosetHandle};
use crate::scalar::GaussianRational;

use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCheck {
    /// `(ideal(z) \ ideal(y)) ∩ S = ∅`
    pub disjoint: bool,
    /// `mu(x, y) mu(y, z) = mu(x, z)` for every `x <= y`
    pub factorize: bool,
    /// `mu(y, z) != 0`
    pub nonzero: bool,
    pub mu_yz: GaussianRational,
}

impl WitnessCheck {
    pub fn all(&self) -> bool {
        self.disjoint && self.factorize && self.nonzero
    }
}

/// Checks witness conditions against one shared Möbius memo.
#[derive(Clone, Debug)]
pub struct WitnessChecker {
    poset: PosetHandle,
    mu: IntervalFunction,
}

impl WitnessChecker {
    pub fn new(poset: &PosetHandle) -> Self {
        Self {
            poset: poset.clone(),
            mu: IntervalFunction::mobius(poset),
        }
    }

    pub fn mobius(&self) -> &IntervalFunction {
        &self.mu
    }

    pub fn check(&self, y: &Element, avoid: &[Element], z: &Element) -> Result<WitnessCheck> {
        let p = &self.poset;
        if !p.lt(y, z)? {
            return Err(PosetError::NotStrictlyAbove {
                y: y.to_string(),
                z: z.to_string(),
            });
        }
        // s lies in ideal(z) \ ideal(y) exactly when s <= z and not s <= y.
        let mut disjoint = true;
        for s in avoid {
            if p.leq(s, z)? && !p.leq(s, y)? {
                disjoint = false;
                break;
            }
        }
        let mu_yz = self.mu.evaluate(y, z)?;
        let mut factorize = true;
        for x in p.ideal(y)? {
            let lhs = &self.mu.evaluate(&x, y)? * &mu_yz;
            if lhs != self.mu.evaluate(&x, z)? {
                factorize = false;
                break;
            }
        }
        Ok(WitnessCheck {
            disjoint,
            factorize,
            nonzero: !mu_yz.is_zero(),
            mu_yz,
        })
    }
}

pub fn check_witness_conditions(
    p: &PosetHandle,
    y: &Element,
    avoid: &[Element],
    z: &Element,
) -> Result<WitnessCheck> {
    for s in avoid {
        p.validate(s)?;
    }
    WitnessChecker::new(p).check(y, avoid, z)
}
