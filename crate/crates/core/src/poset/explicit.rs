use std::cmp::Reverse;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BinaryHeap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{require_leq, Element, Family, Poset};
use crate::error::{PosetError, Result};

/// On-disk form: `{"elements": ["a", ...], "covers": [["a", "b"], ...]}`.
///
/// A pair `[a, b]` states `a < b`; pairs implied by transitivity are accepted.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExplicitDocument {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// A finite poset given by elements and cover pairs.
///
/// Elements are stored in canonical order: a topological order of the cover
/// graph with ties broken by declaration order. Reachability is precomputed,
/// so a handle is freely shareable across threads.
#[derive(Debug, Clone)]
pub struct ExplicitPoset {
    label: String,
    names: Vec<Arc<str>>,
    index: HashMap<Arc<str>, u32>,
    /// `reach[i * n + j]` iff element `i <= j`.
    reach: Vec<bool>,
    fingerprint: String,
}

impl ExplicitPoset {
    pub fn from_json(label: &str, text: &str) -> Result<Self> {
        let doc: ExplicitDocument =
            serde_json::from_str(text).map_err(|e| PosetError::Document(e.to_string()))?;
        Self::from_document(label, &doc)
    }

    pub fn from_document(label: &str, doc: &ExplicitDocument) -> Result<Self> {
        let mut declared: HashMap<&str, usize> = HashMap::new();
        for (i, name) in doc.elements.iter().enumerate() {
            if name.is_empty() {
                return Err(PosetError::Document("element identifiers must be nonempty".into()));
            }
            if declared.insert(name.as_str(), i).is_some() {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        let n = doc.elements.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (a, b) in &doc.covers {
            let ia = *declared
                .get(a.as_str())
                .ok_or_else(|| PosetError::UnknownElementInCover(a.clone()))?;
            let ib = *declared
                .get(b.as_str())
                .ok_or_else(|| PosetError::UnknownElementInCover(b.clone()))?;
            if ia == ib {
                return Err(PosetError::CyclicCovers(a.clone()));
            }
            if !succ[ia].contains(&ib) {
                succ[ia].push(ib);
                indegree[ib] += 1;
            }
        }

        let minimal: Vec<String> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| doc.elements[i].clone())
            .collect();

        // Kahn's algorithm; the heap keeps ties in declaration order.
        let mut remaining = indegree.clone();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| remaining[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = heap.pop() {
            order.push(i);
            for &j in &succ[i] {
                remaining[j] -= 1;
                if remaining[j] == 0 {
                    heap.push(Reverse(j));
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| remaining[i] > 0).expect("some vertex is on a cycle");
            return Err(PosetError::CyclicCovers(doc.elements[stuck].clone()));
        }
        if minimal.len() != 1 {
            return Err(PosetError::NoUniqueBottom(minimal));
        }

        let mut rank_of = vec![0usize; n];
        for (rank, &i) in order.iter().enumerate() {
            rank_of[i] = rank;
        }
        let mut reach = vec![false; n * n];
        // Reverse topological sweep: everything above i is above its successors.
        for &i in order.iter().rev() {
            let ri = rank_of[i];
            reach[ri * n + ri] = true;
            for &j in &succ[i] {
                let rj = rank_of[j];
                for k in 0..n {
                    if reach[rj * n + k] {
                        reach[ri * n + k] = true;
                    }
                }
            }
        }

        let names: Vec<Arc<str>> = order.iter().map(|&i| Arc::from(doc.elements[i].as_str())).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(r, name)| (name.clone(), r as u32))
            .collect();
        let mut hasher = DefaultHasher::new();
        names.hash(&mut hasher);
        reach.hash(&mut hasher);
        let fingerprint = format!("explicit:{n}:{:016x}", hasher.finish());
        Ok(Self {
            label: label.to_string(),
            names,
            index,
            reach,
            fingerprint,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> Vec<Element> {
        (0..self.len()).map(|r| self.node(r)).collect()
    }

    fn node(&self, rank: usize) -> Element {
        Element::Node {
            rank: rank as u32,
            name: self.names[rank].clone(),
        }
    }

    fn rank(&self, x: &Element) -> Result<usize> {
        match x {
            Element::Node { rank, name }
                if (*rank as usize) < self.len() && self.names[*rank as usize] == *name =>
            {
                Ok(*rank as usize)
            }
            Element::Node { .. } => Err(self.invalid(x, "not an element of this poset")),
            _ => Err(self.invalid(x, "expected an identifier element")),
        }
    }

    fn le_rank(&self, a: usize, b: usize) -> bool {
        self.reach[a * self.len() + b]
    }
}

impl Poset for ExplicitPoset {
    fn family(&self) -> Family {
        Family::Explicit
    }

    fn name(&self) -> &str {
        &self.label
    }

    fn fingerprint(&self) -> String {
        self.fingerprint.clone()
    }

    fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        self.index
            .get(t)
            .map(|&r| self.node(r as usize))
            .ok_or_else(|| PosetError::InvalidElement {
                family: "explicit".into(),
                element: t.to_string(),
                reason: "unknown identifier".into(),
            })
    }

    fn validate(&self, x: &Element) -> Result<()> {
        self.rank(x).map(|_| ())
    }

    fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.le_rank(self.rank(x)?, self.rank(y)?))
    }

    fn bottom(&self) -> Element {
        self.node(0)
    }

    fn interval(&self, x: &Element, y: &Element) -> Result<Vec<Element>> {
        require_leq(self, x, y)?;
        let (a, b) = (self.rank(x)?, self.rank(y)?);
        Ok((a..=b)
            .filter(|&r| self.le_rank(a, r) && self.le_rank(r, b))
            .map(|r| self.node(r))
            .collect())
    }

    fn window_elements(&self, bound: u64, cap: u64) -> Result<Vec<Element>> {
        let k = (bound.min(self.len() as u64)) as usize;
        if k as u64 > cap {
            return Err(PosetError::BoundTooLarge {
                requested: k as u128,
                cap,
            });
        }
        Ok((0..k).map(|r| self.node(r)).collect())
    }

    fn window_extent(&self, x: &Element) -> Result<u64> {
        Ok(self.rank(x)? as u64 + 1)
    }

    fn is_infinite(&self) -> bool {
        false
    }

    fn upward_candidates<'a>(&'a self, y: &Element) -> Box<dyn Iterator<Item = Element> + 'a> {
        let Ok(a) = self.rank(y) else {
            return Box::new(std::iter::empty());
        };
        Box::new(
            (a + 1..self.len())
                .filter(move |&r| self.le_rank(a, r))
                .map(|r| self.node(r)),
        )
    }
}
