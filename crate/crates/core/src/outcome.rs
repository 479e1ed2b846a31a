use serde::Serialize;

/// Result of an exhaustive (or sampled) property check: either the property
/// holds, or a witness falsifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Outcome<W> {
    Holds,
    Fails(W),
}

impl<W> Outcome<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Holds => None,
            Outcome::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Outcome<V> {
        match self {
            Outcome::Holds => Outcome::Holds,
            Outcome::Fails(w) => Outcome::Fails(f(w)),
        }
    }
}

impl<W> From<Result<(), W>> for Outcome<W> {
    fn from(r: Result<(), W>) -> Self {
        match r {
            Ok(()) => Outcome::Holds,
            Err(w) => Outcome::Fails(w),
        }
    }
}
