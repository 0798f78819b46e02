//! Strategies that propose candidate witnesses `z > y`, and the budgeted
//! stream that checks them.

use std::collections::{BTreeMap, BTreeSet};

use super::{WitnessCertificate, WitnessChecker};
use crate::arith::primes;
use crate::error::{PosetError, Result};
use crate::poset::{Element, Family, PosetHandle};

pub type Candidates<'a> = Box<dyn Iterator<Item = Element> + 'a>;

/// Proposes candidates `z > y` for a given avoid set, in a fixed order.
pub trait WitnessStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn candidates<'a>(&self, p: &'a PosetHandle, y: &Element, avoid: &[Element]) -> Result<Candidates<'a>>;
}

fn not_applicable(strategy: &str, p: &PosetHandle) -> PosetError {
    PosetError::InvalidInput(format!(
        "witness strategy `{strategy}` does not apply to the {} poset",
        p.family()
    ))
}

/// `z = y q` for ascending primes `q` dividing neither `y` nor any member of `S`.
/// Divisibility and multiset posets.
#[derive(Debug, Default, Clone, Copy)]
pub struct FreshPrime;

impl WitnessStrategy for FreshPrime {
    fn name(&self) -> &'static str {
        "fresh-prime"
    }

    fn candidates<'a>(&self, p: &'a PosetHandle, y: &Element, avoid: &[Element]) -> Result<Candidates<'a>> {
        p.validate(y)?;
        for s in avoid {
            p.validate(s)?;
        }
        match p.family() {
            Family::Divisibility => {
                let n = y.as_int().expect("validated");
                let members: Vec<u64> = avoid.iter().filter_map(Element::as_int).collect();
                Ok(Box::new(
                    primes()
                        .filter(move |q| n % q != 0 && members.iter().all(|m| m % q != 0))
                        .map_while(move |q| n.checked_mul(q))
                        .map(Element::Int),
                ))
            }
            Family::Multisets => {
                let base = y.as_multiset().expect("validated").to_vec();
                let used: BTreeSet<u64> = base
                    .iter()
                    .chain(avoid.iter().filter_map(Element::as_multiset).flatten())
                    .map(|&(q, _)| q)
                    .collect();
                Ok(Box::new(primes().filter(move |q| !used.contains(q)).map(move |q| {
                    let mut m: BTreeMap<u64, u32> = base.iter().copied().collect();
                    m.insert(q, 1);
                    Element::Multiset(m.into_iter().collect())
                })))
            }
            _ => Err(not_applicable(self.name(), p)),
        }
    }
}

/// `z = y ∪ {q}` for ascending ground elements `q` outside `y` and every member of `S`.
/// Subset posets.
#[derive(Debug, Default, Clone, Copy)]
pub struct FreshGround;

impl WitnessStrategy for FreshGround {
    fn name(&self) -> &'static str {
        "fresh-ground"
    }

    fn candidates<'a>(&self, p: &'a PosetHandle, y: &Element, avoid: &[Element]) -> Result<Candidates<'a>> {
        if p.family() != Family::Subsets {
            return Err(not_applicable(self.name(), p));
        }
        p.validate(y)?;
        for s in avoid {
            p.validate(s)?;
        }
        let base = y.as_set().expect("validated").to_vec();
        let used: BTreeSet<u64> = base
            .iter()
            .chain(avoid.iter().filter_map(Element::as_set).flatten())
            .copied()
            .collect();
        Ok(Box::new((1u64..).filter(move |q| !used.contains(q)).map(move |q| {
            Element::set(base.iter().copied().chain([q]))
        })))
    }
}

/// Every element strictly above `y`, in the poset's upward enumeration order.
/// Applies to every poset; the fallback for chains and explicit posets.
#[derive(Debug, Default, Clone, Copy)]
pub struct Scan;

impl WitnessStrategy for Scan {
    fn name(&self) -> &'static str {
        "scan"
    }

    fn candidates<'a>(&self, p: &'a PosetHandle, y: &Element, avoid: &[Element]) -> Result<Candidates<'a>> {
        p.validate(y)?;
        for s in avoid {
            p.validate(s)?;
        }
        Ok(p.upward_candidates(y))
    }
}

/// Witness strategies selectable by name.
pub struct WitnessRegistry {
    strategies: BTreeMap<&'static str, Box<dyn WitnessStrategy>>,
}

impl WitnessRegistry {
    pub fn with_builtins() -> Self {
        let mut reg = Self {
            strategies: BTreeMap::new(),
        };
        reg.register(Box::new(FreshPrime));
        reg.register(Box::new(FreshGround));
        reg.register(Box::new(Scan));
        reg
    }

    pub fn register(&mut self, strategy: Box<dyn WitnessStrategy>) {
        self.strategies.insert(strategy.name(), strategy);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.strategies.keys().copied()
    }

    pub fn get(&self, name: &str) -> Result<&dyn WitnessStrategy> {
        self.strategies
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| PosetError::Unknown {
                kind: "witness strategy",
                name: name.to_string(),
            })
    }

    /// The poset's own strategy.
    pub fn for_poset(&self, p: &PosetHandle) -> &dyn WitnessStrategy {
        self.get(p.witness_strategy())
            .expect("built-in posets name registered strategies")
    }
}

/// Certificates for candidates that pass all three conditions.
///
/// Stops after `count` certificates or after `budget` candidates have been
/// examined, whichever comes first. A short stream means the budget ran out,
/// not that no further witness exists.
pub struct WitnessStream<'a> {
    checker: WitnessChecker,
    y: Element,
    avoid: Vec<Element>,
    candidates: Candidates<'a>,
    remaining: usize,
    budget: usize,
    examined: usize,
    failed: bool,
}

impl<'a> WitnessStream<'a> {
    pub fn examined(&self) -> usize {
        self.examined
    }

    pub fn checker(&self) -> &WitnessChecker {
        &self.checker
    }
}

impl Iterator for WitnessStream<'_> {
    type Item = Result<WitnessCertificate>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.remaining == 0 {
            return None;
        }
        while self.examined < self.budget {
            let z = self.candidates.next()?;
            self.examined += 1;
            let check = match self.checker.check(&self.y, &self.avoid, &z) {
                Ok(c) => c,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            };
            if check.all() {
                self.remaining -= 1;
                return Some(Ok(WitnessCertificate {
                    y: self.y.clone(),
                    avoid_set: self.avoid.clone(),
                    z,
                    cond_disjoint: check.disjoint,
                    cond_factorize: check.factorize,
                    cond_nonzero: check.nonzero,
                    mu_yz: check.mu_yz,
                    predicted_fz: None,
                    observed_fz: None,
                }));
            }
        }
        None
    }
}

pub fn witnesses_with<'a>(
    p: &'a PosetHandle,
    strategy: &dyn WitnessStrategy,
    y: &Element,
    avoid: &[Element],
    count: usize,
    budget: usize,
) -> Result<WitnessStream<'a>> {
    let mut avoid = avoid.to_vec();
    avoid.sort();
    avoid.dedup();
    let candidates = strategy.candidates(p, y, &avoid)?;
    Ok(WitnessStream {
        checker: WitnessChecker::new(p),
        y: y.clone(),
        avoid,
        candidates,
        remaining: count,
        budget,
        examined: 0,
        failed: false,
    })
}

/// Witness stream using the poset's own strategy.
pub fn witnesses<'a>(
    p: &'a PosetHandle,
    y: &Element,
    avoid: &[Element],
    count: usize,
    budget: usize,
) -> Result<WitnessStream<'a>> {
    let registry = WitnessRegistry::with_builtins();
    witnesses_with(p, registry.for_poset(p), y, avoid, count, budget)
}
