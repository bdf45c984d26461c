//! Validation reports shared by every checker in the crate.

use alloc::borrow::Cow;
use alloc::vec::Vec;
use core::fmt;

use crate::ids::{EdgeId, PathId, TermId};

/// The law a violation (or a counted check) belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    /// Table shape: totality, id ranges, endpoint consistency.
    Bookkeeping,
    /// Strict groupoid laws of the base identity structure.
    Groupoid,
    /// Cell labels must describe a partition of each hom-set.
    Partition,
    /// Units absorb up to cells.
    Typ1,
    /// Inverses cancel up to cells.
    Typ2,
    /// Associativity up to cells.
    Typ3,
    /// Composition respects cells.
    Typ4,
    /// Strictness on refl and functoriality of the path-to-edge table.
    IdtoEqv,
    /// Inverse laws that follow from the axioms.
    DerivedInverse,
    /// The path action of a morphism is a strict functor.
    ApFunctor,
    /// A morphism sends units into the unit cell.
    UnitPreservation,
    /// A morphism preserves composition up to cells.
    CompositionPreservation,
    /// A morphism sends cell-equal edges to cell-equal edges.
    CellCongruence,
    /// A morphism commutes with inversion up to cells.
    InverseLaw,
    /// `ua(idtoeqv(p)) = p`.
    RoundTrip1,
    /// `idtoeqv(ua(e))` lies in the cell of `e`.
    RoundTrip2,
    /// `ua` is constant on cells.
    UaCongruence,
    /// `ua_dst(phi(idtoeqv_src(p))) = ap(p)` and its edge-level variant.
    Square,
}

impl Law {
    pub const ALL: [Law; 18] = [
        Law::Bookkeeping,
        Law::Groupoid,
        Law::Partition,
        Law::Typ1,
        Law::Typ2,
        Law::Typ3,
        Law::Typ4,
        Law::IdtoEqv,
        Law::DerivedInverse,
        Law::ApFunctor,
        Law::UnitPreservation,
        Law::CompositionPreservation,
        Law::CellCongruence,
        Law::InverseLaw,
        Law::RoundTrip1,
        Law::RoundTrip2,
        Law::UaCongruence,
        Law::Square,
    ];

    /// Tag used in machine readable reports.
    pub const fn tag(self) -> &'static str {
        match self {
            Law::Bookkeeping => "Bookkeeping",
            Law::Groupoid => "Groupoid",
            Law::Partition => "Partition",
            Law::Typ1 => "Typ1",
            Law::Typ2 => "Typ2",
            Law::Typ3 => "Typ3",
            Law::Typ4 => "Typ4",
            Law::IdtoEqv => "IdtoEqv",
            Law::DerivedInverse => "DerivedInverse",
            Law::ApFunctor => "ApFunctor",
            Law::UnitPreservation => "UnitPreservation",
            Law::CompositionPreservation => "CompositionPreservation",
            Law::CellCongruence => "CellCongruence",
            Law::InverseLaw => "InverseLaw",
            Law::RoundTrip1 => "RoundTrip1",
            Law::RoundTrip2 => "RoundTrip2",
            Law::UaCongruence => "UaCongruence",
            Law::Square => "Square",
        }
    }

    /// Stable `L`-code for diagnostics.
    pub const fn code(self) -> &'static str {
        match self {
            Law::Bookkeeping => "L001",
            Law::Groupoid => "L002",
            Law::Partition => "L003",
            Law::Typ1 => "L101",
            Law::Typ2 => "L102",
            Law::Typ3 => "L103",
            Law::Typ4 => "L104",
            Law::IdtoEqv => "L105",
            Law::DerivedInverse => "L106",
            Law::ApFunctor => "L201",
            Law::UnitPreservation => "L202",
            Law::CompositionPreservation => "L203",
            Law::CellCongruence => "L204",
            Law::InverseLaw => "L205",
            Law::RoundTrip1 => "L301",
            Law::RoundTrip2 => "L302",
            Law::UaCongruence => "L303",
            Law::Square => "L304",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A concrete id that witnesses a violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Term(TermId),
    Path(PathId),
    Edge(EdgeId),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Term(t) => t.fmt(f),
            Witness::Path(p) => p.fmt(f),
            Witness::Edge(e) => e.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<Witness>,
    pub detail: Cow<'static, str>,
}

impl Violation {
    pub fn new(law: Law, witness: Vec<Witness>, detail: impl Into<Cow<'static, str>>) -> Self {
        Violation {
            law,
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.law, self.detail)?;
        if !self.witness.is_empty() {
            f.write_str(" (")?;
            for (i, w) in self.witness.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                w.fmt(f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Outcome of a checker: every violated law instance plus per-law counts of
/// the instances that were examined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
    checks: [u64; Law::ALL.len()],
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn into_violations(self) -> Vec<Violation> {
        self.violations
    }

    /// Number of law instances of `law` that were examined.
    pub fn checks(&self, law: Law) -> u64 {
        self.checks[law as usize]
    }

    /// Laws with at least one examined instance, in declaration order.
    pub fn check_counts(&self) -> impl Iterator<Item = (Law, u64)> + '_ {
        Law::ALL
            .iter()
            .map(|&law| (law, self.checks[law as usize]))
            .filter(|&(_, n)| n > 0)
    }

    pub fn total_checks(&self) -> u64 {
        self.checks.iter().sum()
    }

    pub fn count_of(&self, law: Law) -> usize {
        self.violations.iter().filter(|v| v.law == law).count()
    }

    pub(crate) fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub(crate) fn violate(
        &mut self,
        law: Law,
        witness: impl IntoIterator<Item = Witness>,
        detail: impl Into<Cow<'static, str>>,
    ) {
        self.violations
            .push(Violation::new(law, witness.into_iter().collect(), detail));
    }

    /// Records one examined instance of `law`.
    #[inline]
    pub(crate) fn tick(&mut self, law: Law) {
        self.checks[law as usize] += 1;
    }

    pub(crate) fn tick_n(&mut self, law: Law, n: u64) {
        self.checks[law as usize] += n;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        for (mine, theirs) in self.checks.iter_mut().zip(other.checks) {
            *mine += theirs;
        }
    }

    /// Sorts and deduplicates violations so reports do not depend on table
    /// insertion or traversal order.
    pub fn normalized(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid ({} checks)", self.total_checks());
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
