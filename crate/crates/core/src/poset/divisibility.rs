use super::{require_leq, Element, Family, Poset};
use crate::arith::{classical_mobius, divisors};
use crate::error::{PosetError, Result};
use crate::lab::SupportVerdict;

/// Positive integers ordered by divisibility.
#[derive(Debug, Clone, Copy, Default)]
pub struct Divisibility;

pub(super) fn parse_positive(p: &dyn Poset, text: &str) -> Result<u64> {
    let t = text.trim();
    match t.parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(PosetError::InvalidElement {
            family: p.family().to_string(),
            element: t.to_string(),
            reason: "expected a positive integer".into(),
        }),
    }
}

pub(super) fn int_of(p: &dyn Poset, x: &Element) -> Result<u64> {
    match x {
        Element::Int(n) if *n >= 1 => Ok(*n),
        Element::Int(_) => Err(p.invalid(x, "integers start at 1")),
        _ => Err(p.invalid(x, "expected an integer element")),
    }
}

pub(super) fn int_window(bound: u64, cap: u64) -> Result<Vec<Element>> {
    if bound > cap {
        return Err(PosetError::BoundTooLarge {
            requested: bound as u128,
            cap,
        });
    }
    Ok((1..=bound).map(Element::Int).collect())
}

impl Poset for Divisibility {
    fn family(&self) -> Family {
        Family::Divisibility
    }

    fn name(&self) -> &str {
        "divisibility"
    }

    fn parse_element(&self, text: &str) -> Result<Element> {
        parse_positive(self, text).map(Element::Int)
    }

    fn validate(&self, x: &Element) -> Result<()> {
        int_of(self, x).map(|_| ())
    }

    fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(int_of(self, y)? % int_of(self, x)? == 0)
    }

    fn bottom(&self) -> Element {
        Element::Int(1)
    }

    fn interval(&self, x: &Element, y: &Element) -> Result<Vec<Element>> {
        require_leq(self, x, y)?;
        let (a, b) = (int_of(self, x)?, int_of(self, y)?);
        Ok(divisors(b / a).into_iter().map(|d| Element::Int(a * d)).collect())
    }

    fn window_elements(&self, bound: u64, cap: u64) -> Result<Vec<Element>> {
        int_window(bound, cap)
    }

    fn window_extent(&self, x: &Element) -> Result<u64> {
        int_of(self, x)
    }

    fn upward_candidates<'a>(&'a self, y: &Element) -> Box<dyn Iterator<Item = Element> + 'a> {
        let Ok(n) = int_of(self, y) else {
            return Box::new(std::iter::empty());
        };
        Box::new((2u64..).map_while(move |k| n.checked_mul(k)).map(Element::Int))
    }

    fn closed_form_mobius(&self, x: &Element, y: &Element) -> Result<i64> {
        require_leq(self, x, y)?;
        classical_mobius(int_of(self, y)? / int_of(self, x)?)
    }

    fn witness_strategy(&self) -> &'static str {
        "fresh-prime"
    }

    fn mobius_support_certificate(&self, x: &Element) -> Option<(SupportVerdict, String)> {
        Some((
            SupportVerdict::InfiniteCertified,
            format!("mu({x}, {x}*q) = mu(q) = -1 for every prime q not dividing {x}"),
        ))
    }
}
