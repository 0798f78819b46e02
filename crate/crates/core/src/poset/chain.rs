use super::divisibility::{int_of, int_window, parse_positive};
use super::{require_leq, Element, Family, Poset};
use crate::error::Result;
use crate::lab::SupportVerdict;

/// Positive integers under the usual order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Chain;

impl Poset for Chain {
    fn family(&self) -> Family {
        Family::Chain
    }

    fn name(&self) -> &str {
        "chain"
    }

    fn parse_element(&self, text: &str) -> Result<Element> {
        parse_positive(self, text).map(Element::Int)
    }

    fn validate(&self, x: &Element) -> Result<()> {
        int_of(self, x).map(|_| ())
    }

    fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(int_of(self, x)? <= int_of(self, y)?)
    }

    fn bottom(&self) -> Element {
        Element::Int(1)
    }

    fn interval(&self, x: &Element, y: &Element) -> Result<Vec<Element>> {
        require_leq(self, x, y)?;
        Ok((int_of(self, x)?..=int_of(self, y)?).map(Element::Int).collect())
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
        Box::new((n.saturating_add(1)..=u64::MAX).map(Element::Int))
    }

    fn closed_form_mobius(&self, x: &Element, y: &Element) -> Result<i64> {
        require_leq(self, x, y)?;
        let (m, n) = (int_of(self, x)?, int_of(self, y)?);
        Ok(match n - m {
            0 => 1,
            1 => -1,
            _ => 0,
        })
    }

    fn mobius_support_certificate(&self, x: &Element) -> Option<(SupportVerdict, String)> {
        let n = int_of(self, x).ok()?;
        Some((
            SupportVerdict::FiniteCertified,
            format!(
                "chain Möbius function vanishes unless n - m is 0 or 1, so the support is {{{n}, {}}}",
                n + 1
            ),
        ))
    }
}
