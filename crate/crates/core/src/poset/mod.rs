//! Locally finite posets with a bottom element.
//!
//! Every family implements [`Poset`] and is reachable by name through a
//! [`PosetRegistry`]; callers hold a cheap, shareable [`PosetHandle`].

mod chain;
mod divisibility;
mod element;
mod explicit;
mod multisets;
mod subsets;
mod window;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use chain::Chain;
pub use divisibility::Divisibility;
pub use element::{join_encodings, split_encodings, Element};
pub use explicit::{ExplicitDocument, ExplicitPoset};
pub use multisets::Multisets;
pub use subsets::Subsets;
pub use window::{Window, WindowSpec, DEFAULT_ELEMENT_CAP};

use crate::error::{PosetError, Result};
use crate::lab::SupportVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Divisibility,
    Chain,
    Subsets,
    Multisets,
    Explicit,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Divisibility => "divisibility",
            Family::Chain => "chain",
            Family::Subsets => "subsets",
            Family::Multisets => "multisets",
            Family::Explicit => "explicit",
        })
    }
}

/// A locally finite poset with a bottom element.
///
/// Implementations must keep the canonical order of [`Element`] a linear
/// extension of `leq`; the Möbius recursion and the inverse solver both rely on
/// it. All returned element lists are sorted canonically.
pub trait Poset: Send + Sync + fmt::Debug {
    fn family(&self) -> Family;

    /// Registry name for built-ins, source label for explicit posets.
    fn name(&self) -> &str;

    /// Two handles with equal fingerprints describe the same poset.
    fn fingerprint(&self) -> String {
        self.family().to_string()
    }

    fn parse_element(&self, text: &str) -> Result<Element>;

    fn validate(&self, x: &Element) -> Result<()>;

    fn leq(&self, x: &Element, y: &Element) -> Result<bool>;

    fn bottom(&self) -> Element;

    /// `[x, y]`; `NotComparable` unless `x <= y`.
    fn interval(&self, x: &Element, y: &Element) -> Result<Vec<Element>>;

    /// Principal order ideal of `x`.
    fn ideal(&self, x: &Element) -> Result<Vec<Element>> {
        self.interval(&self.bottom(), x)
    }

    /// Elements of the bounded window, refusing more than `cap` of them.
    fn window_elements(&self, bound: u64, cap: u64) -> Result<Vec<Element>>;

    /// Smallest bound whose window contains `x`.
    fn window_extent(&self, x: &Element) -> Result<u64>;

    fn is_infinite(&self) -> bool {
        true
    }

    /// Every element strictly above `y`, each exactly once.
    fn upward_candidates<'a>(&'a self, y: &Element) -> Box<dyn Iterator<Item = Element> + 'a>;

    /// Closed-form Möbius value, independent of the recursion.
    fn closed_form_mobius(&self, x: &Element, y: &Element) -> Result<i64> {
        let _ = (x, y);
        Err(PosetError::NoClosedForm(self.family().to_string()))
    }

    /// Registry name of the witness strategy that realizes this family's
    /// construction of infinitely many witnesses.
    fn witness_strategy(&self) -> &'static str {
        "scan"
    }

    /// Analytic verdict on whether `{y : mu(x, y) != 0}` is finite, if one is known.
    fn mobius_support_certificate(&self, x: &Element) -> Option<(SupportVerdict, String)> {
        let _ = x;
        None
    }

    fn not_comparable(&self, x: &Element, y: &Element) -> PosetError {
        PosetError::NotComparable {
            x: x.to_string(),
            y: y.to_string(),
        }
    }

    fn invalid(&self, x: &Element, reason: &str) -> PosetError {
        PosetError::InvalidElement {
            family: self.family().to_string(),
            element: x.to_string(),
            reason: reason.to_string(),
        }
    }
}

/// Shared, immutable reference to a poset.
#[derive(Clone, Debug)]
pub struct PosetHandle(Arc<dyn Poset>);

impl PosetHandle {
    pub fn new<P: Poset + 'static>(poset: P) -> Self {
        Self(Arc::new(poset))
    }

    /// Looks up a built-in family in the default registry.
    pub fn builtin(name: &str) -> Result<Self> {
        PosetRegistry::with_builtins().create(name)
    }

    pub fn divisibility() -> Self {
        Self::new(Divisibility)
    }

    pub fn chain() -> Self {
        Self::new(Chain)
    }

    pub fn subsets() -> Self {
        Self::new(Subsets)
    }

    pub fn multisets() -> Self {
        Self::new(Multisets)
    }

    pub fn same_as(&self, other: &PosetHandle) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.fingerprint() == other.0.fingerprint()
    }

    pub fn ensure_same(&self, other: &PosetHandle) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(PosetError::PosetMismatch(self.name().to_string(), other.name().to_string()))
        }
    }

    /// Parses a comma-joined list of encodings.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<Element>> {
        split_encodings(text)
            .iter()
            .map(|s| self.parse_element(s))
            .collect()
    }

    /// Strict order.
    pub fn lt(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(x != y && self.leq(x, y)?)
    }
}

impl std::ops::Deref for PosetHandle {
    type Target = dyn Poset;
    fn deref(&self) -> &Self::Target {
        &*self.0
    }
}

type Factory = Box<dyn Fn() -> PosetHandle + Send + Sync>;

/// Built-in poset families selectable by name.
pub struct PosetRegistry {
    factories: BTreeMap<String, Factory>,
}

impl PosetRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register("divisibility", PosetHandle::divisibility);
        reg.register("chain", PosetHandle::chain);
        reg.register("subsets", PosetHandle::subsets);
        reg.register("multisets", PosetHandle::multisets);
        reg
    }

    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn() -> PosetHandle + Send + Sync + 'static,
    {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn create(&self, name: &str) -> Result<PosetHandle> {
        self.factories
            .get(name)
            .map(|f| f())
            .ok_or_else(|| PosetError::Unknown {
                kind: "poset",
                name: name.to_string(),
            })
    }
}

/// Shared helper: `NotComparable` unless `x <= y`.
pub(crate) fn require_leq(p: &dyn Poset, x: &Element, y: &Element) -> Result<()> {
    if p.leq(x, y)? {
        Ok(())
    } else {
        Err(p.not_comparable(x, y))
    }
}
