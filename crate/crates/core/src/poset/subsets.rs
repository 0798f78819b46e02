use super::{require_leq, Element, Family, Poset};
use crate::error::{PosetError, Result};
use crate::lab::SupportVerdict;

/// Finite subsets of the positive integers under inclusion.
#[derive(Debug, Clone, Copy, Default)]
pub struct Subsets;

/// Largest ground-set size we are willing to expand into a power set.
const MAX_FREE_BITS: usize = 20;

fn set_of<'e>(p: &Subsets, x: &'e Element) -> Result<&'e [u64]> {
    let Element::Set(s) = x else {
        return Err(p.invalid(x, "expected a set element"));
    };
    if s.first() == Some(&0) {
        return Err(p.invalid(x, "ground elements start at 1"));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(p.invalid(x, "ground elements must be sorted and distinct"));
    }
    Ok(s)
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// All `base ∪ S` for `S` ranging over subsets of `free`.
fn unions_with_subsets<'a>(base: &'a [u64], free: &'a [u64]) -> impl Iterator<Item = Element> + 'a {
    let n = free.len();
    (0u64..(1u64 << n)).map(move |mask| {
        let extra = (0..n).filter(move |&i| mask >> i & 1 == 1).map(|i| free[i]);
        Element::set(base.iter().copied().chain(extra))
    })
}

fn too_large(bits: usize) -> PosetError {
    PosetError::BoundTooLarge {
        requested: 1u128 << bits.min(127),
        cap: 1u64 << MAX_FREE_BITS,
    }
}

impl Poset for Subsets {
    fn family(&self) -> Family {
        Family::Subsets
    }

    fn name(&self) -> &str {
        "subsets"
    }

    fn parse_element(&self, text: &str) -> Result<Element> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| PosetError::InvalidElement {
            family: "subsets".into(),
            element: text.trim().to_string(),
            reason: reason.into(),
        };
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| err("expected braces, e.g. {1,3}"))?;
        if inner.is_empty() {
            return Ok(Element::Set(Vec::new()));
        }
        let items = inner
            .split(',')
            .map(|s| match s.parse::<u64>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(err("ground elements are positive integers")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::set(items))
    }

    fn validate(&self, x: &Element) -> Result<()> {
        set_of(self, x).map(|_| ())
    }

    fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(is_subset(set_of(self, x)?, set_of(self, y)?))
    }

    fn bottom(&self) -> Element {
        Element::Set(Vec::new())
    }

    fn interval(&self, x: &Element, y: &Element) -> Result<Vec<Element>> {
        require_leq(self, x, y)?;
        let (a, b) = (set_of(self, x)?, set_of(self, y)?);
        let free: Vec<u64> = b.iter().copied().filter(|v| a.binary_search(v).is_err()).collect();
        if free.len() > MAX_FREE_BITS {
            return Err(too_large(free.len()));
        }
        let mut out: Vec<Element> = unions_with_subsets(a, &free).collect();
        out.sort();
        Ok(out)
    }

    fn window_elements(&self, bound: u64, cap: u64) -> Result<Vec<Element>> {
        if bound >= 64 || (1u64 << bound) > cap {
            return Err(PosetError::BoundTooLarge {
                requested: 1u128 << bound.min(127),
                cap,
            });
        }
        let ground: Vec<u64> = (1..=bound).collect();
        let mut out: Vec<Element> = unions_with_subsets(&[], &ground).collect();
        out.sort();
        Ok(out)
    }

    fn window_extent(&self, x: &Element) -> Result<u64> {
        Ok(set_of(self, x)?.last().copied().unwrap_or(0))
    }

    fn upward_candidates<'a>(&'a self, y: &Element) -> Box<dyn Iterator<Item = Element> + 'a> {
        let Ok(base) = set_of(self, y) else {
            return Box::new(std::iter::empty());
        };
        let base = base.to_vec();
        let top = base.last().copied().unwrap_or(0);
        // Supersets inside {1..top} first, then those whose maximum is top+1, top+2, ...
        let free_below = |m: u64, base: &[u64]| -> Vec<u64> {
            (1..m).filter(|v| base.binary_search(v).is_err()).collect()
        };
        let inside = {
            let base = base.clone();
            let free = free_below(top + 1, &base);
            (1u64..(1u64 << free.len().min(63))).map(move |mask| {
                let extra = (0..free.len()).filter(move |&i| mask >> i & 1 == 1).map(|i| free[i]);
                Element::set(base.iter().copied().chain(extra))
            })
        };
        let beyond = (top + 1..)
            .map_while(move |m| {
                let free = free_below(m, &base);
                (free.len() < 63).then(|| {
                    let mut with_m = base.clone();
                    with_m.push(m);
                    (0u64..(1u64 << free.len())).map(move |mask| {
                        let extra = (0..free.len())
                            .filter(move |&i| mask >> i & 1 == 1)
                            .map(|i| free[i]);
                        Element::set(with_m.iter().copied().chain(extra))
                    })
                })
            })
            .flatten();
        Box::new(inside.chain(beyond))
    }

    fn closed_form_mobius(&self, x: &Element, y: &Element) -> Result<i64> {
        require_leq(self, x, y)?;
        let diff = set_of(self, y)?.len() - set_of(self, x)?.len();
        Ok(if diff % 2 == 0 { 1 } else { -1 })
    }

    fn witness_strategy(&self) -> &'static str {
        "fresh-ground"
    }

    fn mobius_support_certificate(&self, x: &Element) -> Option<(SupportVerdict, String)> {
        Some((
            SupportVerdict::InfiniteCertified,
            format!("mu({x}, T) = (-1)^(|T|-|{x}|) is never zero and {x} has infinitely many supersets"),
        ))
    }
}
