use std::fmt;

use serde::Serialize;

/// Which law a [`LawViolation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    IdentityTyping,
    MissingComposite,
    SpuriousComposite,
    CompositeTyping,
    LeftIdentity,
    RightIdentity,
    Associativity,
    PreservesEndpoints,
    PreservesIdentity,
    PreservesComposite,
    Naturality,
    MonadLeftUnit,
    MonadRightUnit,
    MonadAssociativity,
    MorphismUnit,
    MorphismMultiplication,
    StrictIdentity,
    StrictComposite,
    AlgebraUnit,
    AlgebraMultiplication,
    OplaxUnit,
    OplaxMultiplication,
    MonoidUnit,
    GroupInverse,
    ActionUnit,
    ActionComposite,
    ActionEndomorphism,
    Homomorphism,
    Equivariance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: Law,
    /// Ids of the objects/morphisms/elements at which the law fails.
    pub witness: Vec<String>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at ({})", self.law, self.witness.join(", "))
    }
}

/// Result of an exhaustive law check. Empty means every law holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push<S: Into<String>>(&mut self, law: Law, witness: impl IntoIterator<Item = S>) {
        self.violations.push(LawViolation {
            law,
            witness: witness.into_iter().map(Into::into).collect(),
        });
    }

    pub fn extend(&mut self, other: LawReport) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self) -> Option<&LawViolation> {
        self.violations.first()
    }

    /// Converts a nonempty report into an error carrying the first violation.
    pub fn into_result(self) -> crate::Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(crate::Error::Law(v.to_string())),
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "all laws hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    NotFull,
    NotFaithful,
    NotEssentiallySurjective,
    IsoClassCount,
    HomSetMismatch,
    TriangleIdentity,
    Naturality,
    NoUniversalArrow,
    NoCartesianLift,
    NotCommuting,
    Law,
    Missing,
}

/// Evidence attached to a negative [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub detail: String,
    /// Numeric evidence where the failure is a count mismatch (source, target).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<(usize, usize)>,
}

impl Witness {
    pub fn new(kind: WitnessKind, detail: impl Into<String>) -> Self {
        Self {
            kind,
            detail: detail.into(),
            counts: None,
        }
    }

    pub fn with_counts(mut self, source: usize, target: usize) -> Self {
        self.counts = Some((source, target));
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)?;
        if let Some((s, t)) = self.counts {
            write!(f, " ({s} vs {t})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn fail(kind: WitnessKind, detail: impl Into<String>) -> Self {
        Verdict::Fails(Witness::new(kind, detail))
    }

    /// Keeps the first failure.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Holds => other(),
            fail => fail,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails(w) => write!(f, "fails: {w}"),
        }
    }
}
