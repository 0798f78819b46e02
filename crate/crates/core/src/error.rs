use thiserror::Error;

use crate::lab::WitnessCertificate;

pub type Result<T, E = PosetError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("invalid element `{element}` for {family} poset: {reason}")]
    InvalidElement {
        family: String,
        element: String,
        reason: String,
    },
    #[error("not comparable: {x} is not below {y}")]
    NotComparable { x: String, y: String },
    #[error("window of {requested} elements exceeds the cap of {cap}")]
    BoundTooLarge { requested: u128, cap: u64 },
    #[error("cover relation contains a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("poset has no unique bottom element (minimal elements: {})", .0.join(", "))]
    NoUniqueBottom(Vec<String>),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover pair mentions unknown element `{0}`")]
    UnknownElementInCover(String),
    #[error("integer overflow while computing {0}")]
    Overflow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("operands live on different posets ({0} vs {1})")]
    PosetMismatch(String, String),
    #[error("interval function is not invertible: zero diagonal at {0}")]
    NotInvertible(String),
    #[error("no closed-form Möbius function for the {0} poset")]
    NoClosedForm(String),
    #[error("{z} is not strictly above {y}")]
    NotStrictlyAbove { y: String, z: String },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("witness stream exhausted after {} of {requested} certificates", .partial.len())]
    InsufficientWitnesses {
        requested: usize,
        partial: Vec<WitnessCertificate>,
    },
    #[error("f(z) = mu(y, z) f(y) fails at z = {z}: predicted {predicted}, observed {observed}")]
    IdentityViolated {
        z: String,
        predicted: String,
        observed: String,
    },
    #[error("element {0} lies outside the window")]
    ElementOutsideWindow(String),
    #[error("window is not strictly contained in the shell: {0}")]
    WindowNotNested(String),
    #[error("interval functions are not inverse: ({left}*{right})({x},{y}) = {value}")]
    NotInverses {
        left: String,
        right: String,
        x: String,
        y: String,
        value: String,
    },
    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),
    #[error("malformed document: {0}")]
    Document(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

impl PosetError {
    /// Operator mistakes (bad encodings, malformed documents, unknown names)
    /// as opposed to mathematical domain failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            PosetError::InvalidElement { .. }
                | PosetError::InvalidInput(_)
                | PosetError::ScalarParse(_)
                | PosetError::Document(_)
                | PosetError::Unknown { .. }
                | PosetError::DuplicateElement(_)
                | PosetError::UnknownElementInCover(_)
                | PosetError::CyclicCovers(_)
                | PosetError::NoUniqueBottom(_)
        )
    }
}
