use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::arith::{multiset_to_integer, multiset_to_u64};

/// A poset element in canonical encoding.
///
/// The derived equality is structural; [`Ord`] is the canonical order used for
/// every returned list. Within one family the canonical order is a linear
/// extension of the partial order: numeric for integers, size-then-lexicographic
/// for subsets, integer image for multisets, and topological rank for explicit
/// posets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    /// Divisibility and chain posets.
    Int(u64),
    /// Finite subsets of the positive integers, sorted and duplicate-free.
    Set(Vec<u64>),
    /// Finite multisets keyed by primes, sorted by prime, multiplicities >= 1.
    Multiset(Vec<(u64, u32)>),
    /// Element of an explicit poset; `rank` is its position in the canonical order.
    Node { rank: u32, name: Arc<str> },
}

impl Element {
    pub fn set<I: IntoIterator<Item = u64>>(items: I) -> Self {
        let mut v: Vec<u64> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Element::Set(v)
    }

    pub fn as_int(&self) -> Option<u64> {
        match self {
            Element::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&[u64]> {
        match self {
            Element::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_multiset(&self) -> Option<&[(u64, u32)]> {
        match self {
            Element::Multiset(m) => Some(m),
            _ => None,
        }
    }

    fn variant_index(&self) -> u8 {
        match self {
            Element::Int(_) => 0,
            Element::Set(_) => 1,
            Element::Multiset(_) => 2,
            Element::Node { .. } => 3,
        }
    }
}

fn multiset_image(m: &[(u64, u32)]) -> BigUint {
    multiset_to_integer(m).unwrap_or_else(|_| BigUint::from(0u32))
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => a.cmp(b),
            (Element::Set(a), Element::Set(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Element::Multiset(a), Element::Multiset(b)) => {
                match (multiset_to_u64(a), multiset_to_u64(b)) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    _ => multiset_image(a).cmp(&multiset_image(b)),
                }
                .then_with(|| a.cmp(b))
            }
            (Element::Node { rank: ra, name: na }, Element::Node { rank: rb, name: nb }) => {
                ra.cmp(rb).then_with(|| na.cmp(nb))
            }
            _ => self.variant_index().cmp(&other.variant_index()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(n) => write!(f, "{n}"),
            Element::Set(s) => {
                let items: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            Element::Multiset(m) if m.is_empty() => write!(f, "1"),
            Element::Multiset(m) => {
                let factors: Vec<String> = m
                    .iter()
                    .map(|&(p, k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
                    .collect();
                write!(f, "{}", factors.join("*"))
            }
            Element::Node { name, .. } => write!(f, "{name}"),
        }
    }
}

/// Splits a comma-joined list of encodings, keeping commas inside braces.
pub fn split_encodings(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Joins encodings with commas, the inverse of [`split_encodings`].
pub fn join_encodings<'a, I: IntoIterator<Item = &'a Element>>(items: I) -> String {
    items.into_iter().map(Element::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_order_by_size_then_lex() {
        let mut v = vec![Element::set([2]), Element::set([1, 2]), Element::set([]), Element::set([1])];
        v.sort();
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(text, vec!["{}", "{1}", "{2}", "{1,2}"]);
    }

    #[test]
    fn multisets_order_by_image() {
        let mut v = vec![
            Element::Multiset(vec![(5, 1)]),
            Element::Multiset(vec![(2, 2)]),
            Element::Multiset(vec![]),
            Element::Multiset(vec![(2, 1), (3, 1)]),
        ];
        v.sort();
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(text, vec!["1", "2^2", "5", "2*3"]);
    }

    #[test]
    fn brace_aware_split() {
        assert_eq!(split_encodings("{1},{1,2}, {}"), vec!["{1}", "{1,2}", "{}"]);
        assert_eq!(split_encodings("1,2,3"), vec!["1", "2", "3"]);
        assert!(split_encodings("").is_empty());
    }
}
