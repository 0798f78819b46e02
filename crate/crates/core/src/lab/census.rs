use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{elements_json, elements_text};
use crate::error::{PosetError, Result};
use crate::incidence::IntervalFunction;
use crate::poset::{Element, Family, PosetHandle, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    FiniteCertified,
    InfiniteCertified,
    InconclusiveWindowOnly,
}

impl fmt::Display for SupportVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportVerdict::FiniteCertified => "finite-certified",
            SupportVerdict::InfiniteCertified => "infinite-certified",
            SupportVerdict::InconclusiveWindowOnly => "inconclusive-window-only",
        })
    }
}

/// `{y in window : x <= y, a(x, y) != 0}` plus whatever is known analytically
/// about the full set.
#[derive(Clone, Debug)]
pub struct SupportCensus {
    pub x: Element,
    pub function_kind: String,
    pub window: String,
    pub members: Vec<Element>,
    pub verdict: SupportVerdict,
    pub certificate_note: Option<String>,
}

impl SupportCensus {
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.to_string(),
            "function": self.function_kind,
            "window": self.window,
            "size": self.members.len(),
            "members": elements_json(&self.members),
            "verdict": self.verdict.to_string(),
            "certificate_note": self.certificate_note,
        })
    }

    pub fn members_text(&self) -> String {
        elements_text(&self.members)
    }
}

/// Only built-in analytic facts are used; anything else is reported as
/// window-only evidence.
fn certificate(p: &PosetHandle, a: &IntervalFunction, x: &Element) -> Option<(SupportVerdict, String)> {
    if p.family() == Family::Explicit {
        return None;
    }
    if a.is_mobius() {
        return p.mobius_support_certificate(x);
    }
    if a.is_delta() {
        return Some((
            SupportVerdict::FiniteCertified,
            format!("delta({x}, y) is nonzero only at y = {x}"),
        ));
    }
    if a.is_zeta() && p.is_infinite() {
        return Some((
            SupportVerdict::InfiniteCertified,
            format!("zeta({x}, y) = 1 on the infinite set of elements above {x}"),
        ));
    }
    None
}

pub fn support_census(
    p: &PosetHandle,
    a: &IntervalFunction,
    x: &Element,
    w: &Window,
) -> Result<SupportCensus> {
    p.ensure_same(a.poset())?;
    p.ensure_same(w.poset())?;
    if !w.contains(x)? {
        return Err(PosetError::ElementOutsideWindow(x.to_string()));
    }
    let mut members = Vec::new();
    for y in w.elements()? {
        if p.leq(x, &y)? && !a.evaluate(x, &y)?.is_zero() {
            members.push(y);
        }
    }
    let (verdict, note) = match certificate(p, a, x) {
        Some((v, note)) => (v, Some(note)),
        None => (SupportVerdict::InconclusiveWindowOnly, None),
    };
    Ok(SupportCensus {
        x: x.clone(),
        function_kind: a.name(),
        window: w.to_string(),
        members,
        verdict,
        certificate_note: note,
    })
}
