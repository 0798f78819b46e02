use std::collections::HashSet;

use num_traits::Zero;
use serde_json::{json, Value};

use super::elements_json;
use crate::error::{PosetError, Result};
use crate::incidence::IntervalFunction;
use crate::linalg::{normalize_integer, nullspace};
use crate::poset::{Element, PosetHandle, Window};
use crate::scalar::GaussianRational;
use crate::transforms::{alpha_transform, materialize, FiniteSupportFunction};

pub const SHELL_CAVEAT: &str = "verified only on shell";

/// Outcome of looking for `f` supported in a window whose transform vanishes on
/// the rest of the shell.
#[derive(Clone, Debug)]
pub struct PairSearchResult {
    pub window: String,
    pub shell: String,
    pub transform: String,
    /// Window elements, indexing the columns of `basis`.
    pub unknowns: Vec<Element>,
    pub equations: usize,
    pub nullspace_dimension: usize,
    /// Normalized nullspace basis, one vector per free unknown.
    pub basis: Vec<Vec<GaussianRational>>,
    /// `(f, g)` with `g` the transform of `f` materialized on the shell.
    pub candidate: Option<(FiniteSupportFunction, FiniteSupportFunction)>,
    pub caveat: &'static str,
}

impl PairSearchResult {
    pub fn to_json(&self) -> Value {
        let fn_json = |f: &FiniteSupportFunction| {
            let mut m = serde_json::Map::new();
            for (x, v) in f.iter() {
                m.insert(x.to_string(), Value::String(v.to_string()));
            }
            Value::Object(m)
        };
        json!({
            "window": self.window,
            "shell": self.shell,
            "transform": self.transform,
            "unknowns": elements_json(&self.unknowns),
            "equations": self.equations,
            "nullspace_dimension": self.nullspace_dimension,
            "basis": self.basis.iter()
                .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "candidate": self.candidate.as_ref().map(|(f, g)| json!({"f": fn_json(f), "g": fn_json(g)})),
            "caveat": self.caveat,
        })
    }
}

/// Search with `g = zeta-transform of f`.
pub fn finite_support_pair_search(p: &PosetHandle, w: &Window, shell: &Window) -> Result<PairSearchResult> {
    pair_search_with(&IntervalFunction::zeta(p), w, shell)
}

/// Solves `sum_{x in w, x <= y} beta(x, y) f(x) = 0` for every `y` in `shell \ w`.
pub fn pair_search_with(beta: &IntervalFunction, w: &Window, shell: &Window) -> Result<PairSearchResult> {
    let p = beta.poset();
    p.ensure_same(w.poset())?;
    p.ensure_same(shell.poset())?;
    let unknowns = w.elements()?;
    let shell_elems = shell.elements()?;
    for x in &unknowns {
        if !shell.contains(x)? {
            return Err(PosetError::WindowNotNested(format!("{x} lies in the window but not the shell")));
        }
    }
    if shell_elems.len() <= unknowns.len() {
        return Err(PosetError::WindowNotNested(format!(
            "shell has {} elements, window has {}",
            shell_elems.len(),
            unknowns.len()
        )));
    }

    let inside: HashSet<&Element> = unknowns.iter().collect();
    let mut rows = Vec::new();
    for y in shell_elems.iter().filter(|y| !inside.contains(y)) {
        let mut row = Vec::with_capacity(unknowns.len());
        for x in &unknowns {
            row.push(if p.leq(x, y)? { beta.evaluate(x, y)? } else { GaussianRational::zero() });
        }
        rows.push(row);
    }
    let basis: Vec<Vec<GaussianRational>> = nullspace(&rows, unknowns.len())
        .iter()
        .map(|v| normalize_integer(v))
        .collect();

    let candidate = match basis.first() {
        Some(v) => {
            let f = FiniteSupportFunction::from_entries(p, unknowns.iter().cloned().zip(v.iter().cloned()))?;
            let g = materialize(&alpha_transform(&f, beta)?, shell)?;
            Some((f, g))
        }
        None => None,
    };
    Ok(PairSearchResult {
        window: w.to_string(),
        shell: shell.to_string(),
        transform: beta.name(),
        unknowns,
        equations: rows.len(),
        nullspace_dimension: basis.len(),
        basis,
        candidate,
        caveat: SHELL_CAVEAT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_pair_is_found() {
        let p = PosetHandle::chain();
        let r = finite_support_pair_search(&p, &Window::bounded(&p, 2), &Window::bounded(&p, 4)).unwrap();
        assert_eq!(r.nullspace_dimension, 1);
        let (f, g) = r.candidate.unwrap();
        assert_eq!(f.get(&Element::Int(1)), 1.into());
        assert_eq!(f.get(&Element::Int(2)), (-1).into());
        assert_eq!(g.len(), 1);
        assert_eq!(g.get(&Element::Int(1)), 1.into());
    }

    #[test]
    fn divisors_of_six_admit_nothing() {
        let p = PosetHandle::divisibility();
        let w = Window::ideal(&p, Element::Int(6)).unwrap();
        let r = finite_support_pair_search(&p, &w, &Window::bounded(&p, 12)).unwrap();
        assert_eq!(r.nullspace_dimension, 0);
        assert!(r.candidate.is_none());
    }

    #[test]
    fn small_subsets_admit_nothing() {
        let p = PosetHandle::subsets();
        let r = finite_support_pair_search(&p, &Window::bounded(&p, 1), &Window::bounded(&p, 2)).unwrap();
        assert_eq!(r.nullspace_dimension, 0);
    }

    #[test]
    fn nesting_is_enforced() {
        let p = PosetHandle::chain();
        let err = finite_support_pair_search(&p, &Window::bounded(&p, 4), &Window::bounded(&p, 4)).unwrap_err();
        assert!(matches!(err, PosetError::WindowNotNested(_)));
        let err = finite_support_pair_search(&p, &Window::bounded(&p, 5), &Window::bounded(&p, 3)).unwrap_err();
        assert!(matches!(err, PosetError::WindowNotNested(_)));
    }
}
