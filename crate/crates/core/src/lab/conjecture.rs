use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{pair_search_with, support_census, PairSearchResult, SupportCensus};
use crate::error::{PosetError, Result};
use crate::incidence::{convolve, IntervalFunction};
use crate::poset::{Element, PosetHandle, Window};

/// `S_x` (support of `alpha(x, .)`) and `T_x` (support of `beta(x, .)`).
#[derive(Clone, Debug)]
pub struct CensusPair {
    pub s_x: SupportCensus,
    pub t_x: SupportCensus,
}

/// Side-by-side evidence for one `(alpha, beta)` pair. Takes no position on
/// whether the poset adheres to the uncertainty principle.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub poset: String,
    pub alpha: String,
    pub beta: String,
    pub inverse_intervals_checked: usize,
    pub censuses: Vec<CensusPair>,
    pub search: PairSearchResult,
}

impl ConjectureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "poset": self.poset,
            "alpha": self.alpha,
            "beta": self.beta,
            "inverse_intervals_checked": self.inverse_intervals_checked,
            "censuses": self.censuses.iter().map(|c| json!({
                "x": c.s_x.x.to_string(),
                "S_x": c.s_x.to_json(),
                "T_x": c.t_x.to_json(),
            })).collect::<Vec<_>>(),
            "search": self.search.to_json(),
        })
    }
}

/// `(a * b)(x, y) = delta(x, y)` on every interval inside `shell`.
fn check_inverse(a: &IntervalFunction, b: &IntervalFunction, shell: &Window) -> Result<usize> {
    let p = a.poset();
    let product = convolve(a, b)?;
    let mut checked = 0;
    for y in shell.elements()? {
        for x in p.ideal(&y)? {
            let v = product.evaluate(&x, &y)?;
            let ok = if x == y { v.is_one() } else { v.is_zero() };
            if !ok {
                return Err(PosetError::NotInverses {
                    left: a.name(),
                    right: b.name(),
                    x: x.to_string(),
                    y: y.to_string(),
                    value: v.to_string(),
                });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn conjecture_experiment(
    p: &PosetHandle,
    a: &IntervalFunction,
    b: &IntervalFunction,
    w: &Window,
    shell: &Window,
    sample_x: &[Element],
) -> Result<ConjectureReport> {
    p.ensure_same(a.poset())?;
    p.ensure_same(b.poset())?;
    let inverse_intervals_checked = check_inverse(a, b, shell)?;
    let censuses = sample_x
        .iter()
        .map(|x| {
            Ok(CensusPair {
                s_x: support_census(p, a, x, shell)?,
                t_x: support_census(p, b, x, shell)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let search = pair_search_with(b, w, shell)?;
    Ok(ConjectureReport {
        poset: p.name().to_string(),
        alpha: a.name(),
        beta: b.name(),
        inverse_intervals_checked,
        censuses,
        search,
    })
}
