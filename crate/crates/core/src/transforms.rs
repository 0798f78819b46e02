//! Point functions `P -> C` and the transforms between them.
//!
//! Inputs have finite support. Outputs are [`EvaluableFunction`]s because the
//! transform of a finitely supported function is generally infinitely
//! supported; [`materialize`] restricts one to a window.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::incidence::IntervalFunction;
use crate::poset::{Element, PosetHandle, Window};
use crate::scalar::GaussianRational;

/// Finitely supported `f: P -> C`. Zero values are never stored.
#[derive(Clone, Debug)]
pub struct FiniteSupportFunction {
    poset: PosetHandle,
    entries: BTreeMap<Element, GaussianRational>,
}

impl PartialEq for FiniteSupportFunction {
    fn eq(&self, other: &Self) -> bool {
        self.poset.same_as(&other.poset) && self.entries == other.entries
    }
}

impl FiniteSupportFunction {
    pub fn zero(poset: &PosetHandle) -> Self {
        Self {
            poset: poset.clone(),
            entries: BTreeMap::new(),
        }
    }

    /// Validates every key and drops zero values. Repeated keys are summed.
    pub fn from_entries<I>(poset: &PosetHandle, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, GaussianRational)>,
    {
        let mut f = Self::zero(poset);
        for (x, v) in entries {
            poset.validate(&x)?;
            let slot = f.entries.entry(x).or_default();
            *slot += &v;
        }
        f.entries.retain(|_, v| !v.is_zero());
        Ok(f)
    }

    pub fn point_mass(poset: &PosetHandle, x: Element, value: GaussianRational) -> Result<Self> {
        Self::from_entries(poset, [(x, value)])
    }

    pub fn poset(&self) -> &PosetHandle {
        &self.poset
    }

    pub fn get(&self, x: &Element) -> GaussianRational {
        self.entries.get(x).cloned().unwrap_or_default()
    }

    /// Support in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &GaussianRational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(x, v)| (x.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self {
            poset: self.poset.clone(),
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.poset.ensure_same(&other.poset)?;
        let mut entries = self.entries.clone();
        for (x, v) in &other.entries {
            *entries.entry(x.clone()).or_default() += v;
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(Self {
            poset: self.poset.clone(),
            entries,
        })
    }

    /// The part of `self` supported inside `w`.
    pub fn restrict(&self, w: &Window) -> Result<Self> {
        self.poset.ensure_same(w.poset())?;
        let mut entries = BTreeMap::new();
        for (x, v) in &self.entries {
            if w.contains(x)? {
                entries.insert(x.clone(), v.clone());
            }
        }
        Ok(Self {
            poset: self.poset.clone(),
            entries,
        })
    }

    pub fn as_evaluable(&self) -> EvaluableFunction {
        let f = self.clone();
        EvaluableFunction::new(&self.poset, move |y| Ok(f.get(y)))
    }
}

type PointRule = dyn Fn(&Element) -> Result<GaussianRational> + Send + Sync;

/// A point function known only through an evaluation rule.
#[derive(Clone)]
pub struct EvaluableFunction {
    poset: PosetHandle,
    rule: Arc<PointRule>,
}

impl fmt::Debug for EvaluableFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvaluableFunction")
            .field("poset", &self.poset.name())
            .finish_non_exhaustive()
    }
}

impl EvaluableFunction {
    pub fn new<F>(poset: &PosetHandle, rule: F) -> Self
    where
        F: Fn(&Element) -> Result<GaussianRational> + Send + Sync + 'static,
    {
        Self {
            poset: poset.clone(),
            rule: Arc::new(rule),
        }
    }

    pub fn poset(&self) -> &PosetHandle {
        &self.poset
    }

    pub fn evaluate(&self, y: &Element) -> Result<GaussianRational> {
        self.poset.validate(y)?;
        (self.rule)(y)
    }
}

/// `y -> sum_{x <= y} a(x, y) h(x)`.
pub fn alpha_transform(h: &FiniteSupportFunction, a: &IntervalFunction) -> Result<EvaluableFunction> {
    h.poset().ensure_same(a.poset())?;
    let (h, a) = (h.clone(), a.clone());
    let poset = h.poset().clone();
    Ok(EvaluableFunction::new(&poset, move |y| {
        let mut acc = GaussianRational::zero();
        for (x, hx) in h.iter() {
            if h.poset().leq(x, y)? {
                acc += &a.evaluate(x, y)? * hx;
            }
        }
        Ok(acc)
    }))
}

/// `g(y) = sum_{x <= y} f(x)`.
pub fn zeta_transform(f: &FiniteSupportFunction) -> EvaluableFunction {
    alpha_transform(f, &IntervalFunction::zeta(f.poset())).expect("same poset by construction")
}

/// `f(y) = sum_{x <= y} mu(x, y) g(x)`.
pub fn mobius_inversion(g: &FiniteSupportFunction) -> EvaluableFunction {
    alpha_transform(g, &IntervalFunction::mobius(g.poset())).expect("same poset by construction")
}

/// Exact restriction of `e` to the window `w`.
pub fn materialize(e: &EvaluableFunction, w: &Window) -> Result<FiniteSupportFunction> {
    e.poset().ensure_same(w.poset())?;
    let mut entries = BTreeMap::new();
    for y in w.elements()? {
        let v = e.evaluate(&y)?;
        if !v.is_zero() {
            entries.insert(y, v);
        }
    }
    Ok(FiniteSupportFunction {
        poset: e.poset().clone(),
        entries,
    })
}
