//! The incidence algebra of a locally finite poset.
//!
//! An [`IntervalFunction`] is evaluated lazily on pairs `x <= y` and memoizes
//! what it computes. Clones share the memo. The Möbius recursion and the
//! inverse solver walk intervals in canonical order, which every [`Poset`]
//! keeps a linear extension of `<=`, so each step only reads entries that are
//! already known.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{PosetError, Result};
use crate::poset::{Element, Poset, PosetHandle};
use crate::scalar::GaussianRational;

pub type Rule = dyn Fn(&Element, &Element) -> GaussianRational + Send + Sync;

#[derive(Clone)]
enum Kind {
    Delta,
    Zeta,
    Mobius,
    Custom { name: String, rule: Arc<Rule> },
    Convolution(IntervalFunction, IntervalFunction),
    Inverse(IntervalFunction),
}

struct Inner {
    poset: PosetHandle,
    kind: Kind,
    memo: Mutex<HashMap<(Element, Element), GaussianRational>>,
}

#[derive(Clone)]
pub struct IntervalFunction(Arc<Inner>);

impl fmt::Debug for IntervalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntervalFunction")
            .field("poset", &self.poset().name())
            .field("name", &self.name())
            .finish()
    }
}

impl IntervalFunction {
    fn from_kind(poset: &PosetHandle, kind: Kind) -> Self {
        Self(Arc::new(Inner {
            poset: poset.clone(),
            kind,
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn delta(poset: &PosetHandle) -> Self {
        Self::from_kind(poset, Kind::Delta)
    }

    pub fn zeta(poset: &PosetHandle) -> Self {
        Self::from_kind(poset, Kind::Zeta)
    }

    pub fn mobius(poset: &PosetHandle) -> Self {
        Self::from_kind(poset, Kind::Mobius)
    }

    /// A user-supplied rule, assumed total on the intervals of `poset`.
    pub fn custom<F>(poset: &PosetHandle, name: &str, rule: F) -> Self
    where
        F: Fn(&Element, &Element) -> GaussianRational + Send + Sync + 'static,
    {
        Self::from_kind(
            poset,
            Kind::Custom {
                name: name.to_string(),
                rule: Arc::new(rule),
            },
        )
    }

    /// Named built-ins: `delta`, `zeta`, `mobius` (alias `mu`).
    pub fn by_name(poset: &PosetHandle, name: &str) -> Result<Self> {
        match name {
            "delta" => Ok(Self::delta(poset)),
            "zeta" => Ok(Self::zeta(poset)),
            "mobius" | "mu" => Ok(Self::mobius(poset)),
            other => Err(PosetError::Unknown {
                kind: "interval function",
                name: other.to_string(),
            }),
        }
    }

    pub fn poset(&self) -> &PosetHandle {
        &self.0.poset
    }

    pub fn name(&self) -> String {
        match &self.0.kind {
            Kind::Delta => "delta".into(),
            Kind::Zeta => "zeta".into(),
            Kind::Mobius => "mobius".into(),
            Kind::Custom { name, .. } => name.clone(),
            Kind::Convolution(a, b) => format!("({}*{})", a.name(), b.name()),
            Kind::Inverse(a) => format!("inv({})", a.name()),
        }
    }

    pub fn is_mobius(&self) -> bool {
        matches!(self.0.kind, Kind::Mobius)
    }

    pub fn is_zeta(&self) -> bool {
        matches!(self.0.kind, Kind::Zeta)
    }

    pub fn is_delta(&self) -> bool {
        matches!(self.0.kind, Kind::Delta)
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.0.kind, Kind::Custom { .. })
    }

    fn cached(&self, x: &Element, y: &Element) -> Option<GaussianRational> {
        let memo = self.0.memo.lock().unwrap_or_else(|e| e.into_inner());
        memo.get(&(x.clone(), y.clone())).cloned()
    }

    fn store(&self, x: &Element, y: &Element, v: GaussianRational) {
        let mut memo = self.0.memo.lock().unwrap_or_else(|e| e.into_inner());
        memo.insert((x.clone(), y.clone()), v);
    }

    /// Value on the interval `[x, y]`; `NotComparable` unless `x <= y`.
    pub fn evaluate(&self, x: &Element, y: &Element) -> Result<GaussianRational> {
        let p = self.poset();
        if !p.leq(x, y)? {
            return Err(p.not_comparable(x, y));
        }
        self.evaluate_unchecked(x, y)
    }

    fn evaluate_unchecked(&self, x: &Element, y: &Element) -> Result<GaussianRational> {
        match &self.0.kind {
            Kind::Delta => return Ok(if x == y { One::one() } else { Zero::zero() }),
            Kind::Zeta => return Ok(One::one()),
            _ => {}
        }
        if let Some(v) = self.cached(x, y) {
            return Ok(v);
        }
        let v = match &self.0.kind {
            Kind::Delta | Kind::Zeta => unreachable!(),
            Kind::Mobius => self.mobius_row(x, y)?,
            Kind::Custom { rule, .. } => rule(x, y),
            Kind::Convolution(a, b) => {
                let mut acc = GaussianRational::zero();
                for z in self.poset().interval(x, y)? {
                    let left = a.evaluate_unchecked(x, &z)?;
                    if left.is_zero() {
                        continue;
                    }
                    acc += &left * &b.evaluate_unchecked(&z, y)?;
                }
                acc
            }
            Kind::Inverse(a) => self.inverse_column(a, x, y)?,
        };
        self.store(x, y, v.clone());
        Ok(v)
    }

    /// `mu(x, z)` for every `z` in `[x, y]`, in canonical order; returns `mu(x, y)`.
    fn mobius_row(&self, x: &Element, y: &Element) -> Result<GaussianRational> {
        let p: &dyn Poset = &**self.poset();
        let interval = p.interval(x, y)?;
        let mut row: Vec<GaussianRational> = Vec::with_capacity(interval.len());
        for (i, z) in interval.iter().enumerate() {
            let value = match self.cached(x, z) {
                Some(v) => v,
                None => {
                    let v = if i == 0 {
                        GaussianRational::one()
                    } else {
                        let mut acc = GaussianRational::zero();
                        for (w, mu_w) in interval[..i].iter().zip(&row) {
                            if p.leq(w, z)? {
                                acc += mu_w;
                            }
                        }
                        -acc
                    };
                    self.store(x, z, v.clone());
                    v
                }
            };
            row.push(value);
        }
        Ok(row.pop().expect("interval contains y"))
    }

    /// `inv(a)(z, y)` for every `z` in `[x, y]`, from the top down; returns `inv(a)(x, y)`.
    ///
    /// Solves `sum_{z <= w <= y} a(z, w) b(w, y) = delta(z, y)` for `b(z, y)`.
    fn inverse_column(&self, a: &IntervalFunction, x: &Element, y: &Element) -> Result<GaussianRational> {
        let p: &dyn Poset = &**self.poset();
        let interval = p.interval(x, y)?;
        let n = interval.len();
        let mut column: Vec<Option<GaussianRational>> = vec![None; n];
        for i in (0..n).rev() {
            let z = &interval[i];
            if let Some(v) = self.cached(z, y) {
                column[i] = Some(v);
                continue;
            }
            let diag = a.evaluate_unchecked(z, z)?;
            let Some(diag_inv) = diag.recip() else {
                return Err(PosetError::NotInvertible(z.to_string()));
            };
            let v = if i == n - 1 {
                diag_inv
            } else {
                let mut acc = GaussianRational::zero();
                for (w, b_wy) in interval[i + 1..].iter().zip(&column[i + 1..]) {
                    if !p.leq(z, w)? {
                        continue;
                    }
                    let b_wy = b_wy.as_ref().expect("filled from the top down");
                    if b_wy.is_zero() {
                        continue;
                    }
                    acc += &a.evaluate_unchecked(z, w)? * b_wy;
                }
                -(&acc * &diag_inv)
            };
            self.store(z, y, v.clone());
            column[i] = Some(v);
        }
        Ok(column[0].take().expect("interval contains x"))
    }
}

/// `a * b`, evaluated lazily.
pub fn convolve(a: &IntervalFunction, b: &IntervalFunction) -> Result<IntervalFunction> {
    a.poset().ensure_same(b.poset())?;
    Ok(IntervalFunction::from_kind(
        a.poset(),
        Kind::Convolution(a.clone(), b.clone()),
    ))
}

/// Two-sided inverse of `a`; `NotInvertible` surfaces on evaluation.
pub fn invert(a: &IntervalFunction) -> IntervalFunction {
    IntervalFunction::from_kind(a.poset(), Kind::Inverse(a.clone()))
}

/// `mu_P(x, y)` by the defining recursion.
pub fn mobius_value(p: &PosetHandle, x: &Element, y: &Element) -> Result<GaussianRational> {
    IntervalFunction::mobius(p).evaluate(x, y)
}

/// Closed-form Möbius value for the built-in families.
pub fn closed_form_mobius(p: &PosetHandle, x: &Element, y: &Element) -> Result<i64> {
    p.closed_form_mobius(x, y)
}
