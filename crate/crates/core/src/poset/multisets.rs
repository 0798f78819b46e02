use super::{require_leq, Element, Family, Poset};
use crate::arith::{factorize, is_prime, multiset_to_u64, validate_multiset};
use crate::error::{PosetError, Result};
use crate::lab::SupportVerdict;

/// Finite multisets over the primes, ordered by pointwise multiplicity.
/// Isomorphic to [`super::Divisibility`] through the integer image.
#[derive(Debug, Clone, Copy, Default)]
pub struct Multisets;

fn ms_of<'e>(p: &Multisets, x: &'e Element) -> Result<&'e [(u64, u32)]> {
    let Element::Multiset(m) = x else {
        return Err(p.invalid(x, "expected a multiset element"));
    };
    validate_multiset(m).map_err(|e| p.invalid(x, &e.to_string()))?;
    Ok(m)
}

fn multiplicity(m: &[(u64, u32)], p: u64) -> u32 {
    m.binary_search_by_key(&p, |&(q, _)| q)
        .map(|i| m[i].1)
        .unwrap_or(0)
}

fn pointwise_le(a: &[(u64, u32)], b: &[(u64, u32)]) -> bool {
    a.iter().all(|&(p, k)| multiplicity(b, p) >= k)
}

impl Poset for Multisets {
    fn family(&self) -> Family {
        Family::Multisets
    }

    fn name(&self) -> &str {
        "multisets"
    }

    /// `p^k` factors joined by `*`; `1` is the empty multiset. Repeated primes merge.
    fn parse_element(&self, text: &str) -> Result<Element> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: String| PosetError::InvalidElement {
            family: "multisets".into(),
            element: text.trim().to_string(),
            reason,
        };
        if t == "1" {
            return Ok(Element::Multiset(Vec::new()));
        }
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        for factor in t.split('*') {
            let (base, exp) = factor.split_once('^').unwrap_or((factor, "1"));
            let p: u64 = base.parse().map_err(|_| err(format!("bad factor `{factor}`")))?;
            let k: u32 = exp.parse().map_err(|_| err(format!("bad exponent in `{factor}`")))?;
            if !is_prime(p) {
                return Err(err(format!("{p} is not prime")));
            }
            if k == 0 {
                return Err(err("exponents must be >= 1".into()));
            }
            pairs.push((p, k));
        }
        pairs.sort_unstable();
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(pairs.len());
        for (p, k) in pairs {
            match merged.last_mut() {
                Some((q, j)) if *q == p => *j += k,
                _ => merged.push((p, k)),
            }
        }
        Ok(Element::Multiset(merged))
    }

    fn validate(&self, x: &Element) -> Result<()> {
        ms_of(self, x).map(|_| ())
    }

    fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(pointwise_le(ms_of(self, x)?, ms_of(self, y)?))
    }

    fn bottom(&self) -> Element {
        Element::Multiset(Vec::new())
    }

    fn interval(&self, x: &Element, y: &Element) -> Result<Vec<Element>> {
        require_leq(self, x, y)?;
        let (lo, hi) = (ms_of(self, x)?, ms_of(self, y)?);
        let mut acc: Vec<Vec<(u64, u32)>> = vec![Vec::new()];
        for &(p, top) in hi {
            let low = multiplicity(lo, p);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    (low..=top).map(move |k| {
                        let mut next = prefix.clone();
                        if k > 0 {
                            next.push((p, k));
                        }
                        next
                    })
                })
                .collect();
        }
        let mut out: Vec<Element> = acc.into_iter().map(Element::Multiset).collect();
        out.sort();
        Ok(out)
    }

    fn window_elements(&self, bound: u64, cap: u64) -> Result<Vec<Element>> {
        if bound > cap {
            return Err(PosetError::BoundTooLarge {
                requested: bound as u128,
                cap,
            });
        }
        Ok((1..=bound).map(|n| Element::Multiset(factorize(n))).collect())
    }

    fn window_extent(&self, x: &Element) -> Result<u64> {
        Ok(multiset_to_u64(ms_of(self, x)?).unwrap_or(u64::MAX))
    }

    fn upward_candidates<'a>(&'a self, y: &Element) -> Box<dyn Iterator<Item = Element> + 'a> {
        let Some(n) = ms_of(self, y).ok().and_then(multiset_to_u64) else {
            return Box::new(std::iter::empty());
        };
        Box::new(
            (2u64..)
                .map_while(move |k| n.checked_mul(k))
                .map(|m| Element::Multiset(factorize(m))),
        )
    }

    fn closed_form_mobius(&self, x: &Element, y: &Element) -> Result<i64> {
        require_leq(self, x, y)?;
        let (lo, hi) = (ms_of(self, x)?, ms_of(self, y)?);
        let mut sign = 1i64;
        for &(p, k) in hi {
            match k - multiplicity(lo, p) {
                0 => {}
                1 => sign = -sign,
                _ => return Ok(0),
            }
        }
        Ok(sign)
    }

    fn witness_strategy(&self) -> &'static str {
        "fresh-prime"
    }

    fn mobius_support_certificate(&self, x: &Element) -> Option<(SupportVerdict, String)> {
        Some((
            SupportVerdict::InfiniteCertified,
            format!("adding one copy of a fresh prime q to {x} gives mu = -1, as in the divisibility poset"),
        ))
    }
}
