use std::fmt;

use super::{Element, PosetHandle};
use crate::error::{PosetError, Result};

/// Default limit on the number of elements a window may enumerate.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 20;

/// How a window is truncated. Both forms are downward-closed by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    /// Family-specific scalar bound: largest integer (divisibility, chain),
    /// largest ground element (subsets), largest integer image (multisets),
    /// or number of leading elements in canonical order (explicit).
    Bound(u64),
    /// The principal order ideal of an element.
    Ideal(Element),
}

/// A finite, downward-closed truncation of a poset.
#[derive(Clone, Debug)]
pub struct Window {
    poset: PosetHandle,
    spec: WindowSpec,
    cap: u64,
}

impl Window {
    pub fn bounded(poset: &PosetHandle, bound: u64) -> Self {
        Self {
            poset: poset.clone(),
            spec: WindowSpec::Bound(bound),
            cap: DEFAULT_ELEMENT_CAP,
        }
    }

    pub fn ideal(poset: &PosetHandle, top: Element) -> Result<Self> {
        poset.validate(&top)?;
        Ok(Self {
            poset: poset.clone(),
            spec: WindowSpec::Ideal(top),
            cap: DEFAULT_ELEMENT_CAP,
        })
    }

    /// The whole poset when it is finite, otherwise `None`.
    pub fn whole(poset: &PosetHandle) -> Option<Self> {
        (!poset.is_infinite()).then(|| Self::bounded(poset, u64::MAX))
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn poset(&self) -> &PosetHandle {
        &self.poset
    }

    pub fn spec(&self) -> &WindowSpec {
        &self.spec
    }

    /// Window elements in canonical order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        match &self.spec {
            WindowSpec::Bound(b) => self.poset.window_elements(*b, self.cap),
            WindowSpec::Ideal(top) => {
                let ideal = self.poset.ideal(top)?;
                if ideal.len() as u64 > self.cap {
                    return Err(PosetError::BoundTooLarge {
                        requested: ideal.len() as u128,
                        cap: self.cap,
                    });
                }
                Ok(ideal)
            }
        }
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        self.poset.validate(x)?;
        match &self.spec {
            WindowSpec::Bound(b) => Ok(self.poset.window_extent(x)? <= *b),
            WindowSpec::Ideal(top) => self.poset.leq(x, top),
        }
    }

    /// The default shell: twice the window's scalar extent.
    pub fn doubled(&self) -> Result<Window> {
        let extent = match &self.spec {
            WindowSpec::Bound(b) => *b,
            WindowSpec::Ideal(top) => self.poset.window_extent(top)?,
        };
        let bound = extent.saturating_mul(2).max(extent.saturating_add(1));
        Ok(Window {
            poset: self.poset.clone(),
            spec: WindowSpec::Bound(bound),
            cap: self.cap,
        })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            WindowSpec::Bound(b) if *b == u64::MAX => write!(f, "{} (whole)", self.poset.name()),
            WindowSpec::Bound(b) => write!(f, "{} bound {}", self.poset.name(), b),
            WindowSpec::Ideal(top) => write!(f, "{} ideal of {}", self.poset.name(), top),
        }
    }
}
