use core::fmt;

use crate::report::Witness;

macro_rules! dense_id {
    ($(#[$meta:meta])* $name:ident, $prefix:literal, $witness:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub const fn new(index: usize) -> Self {
                Self(index as u32)
            }

            #[inline]
            pub const fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }

        impl From<$name> for Witness {
            fn from(id: $name) -> Witness {
                Witness::$witness(id)
            }
        }
    };
}

dense_id!(
    /// A term of the carrier. Terms of a structure are numbered `0..n`.
    TermId,
    "t",
    Term
);
dense_id!(
    /// A base path `x = y`.
    PathId,
    "p",
    Path
);
dense_id!(
    /// An edge `x ~ y` of the equivalence layer.
    EdgeId,
    "e",
    Edge
);

/// Common surface of the two arrow kinds, so the groupoid and the
/// equivalence layer can share table storage and bookkeeping checks.
pub trait ArrowId: Copy + Ord + fmt::Debug + fmt::Display + Into<Witness> {
    /// Noun used in diagnostics.
    const KIND: &'static str;
    fn from_index(index: usize) -> Self;
    fn to_index(self) -> usize;
}

impl ArrowId for PathId {
    const KIND: &'static str = "path";
    fn from_index(index: usize) -> Self {
        PathId::new(index)
    }
    fn to_index(self) -> usize {
        self.index()
    }
}

impl ArrowId for EdgeId {
    const KIND: &'static str = "edge";
    fn from_index(index: usize) -> Self {
        EdgeId::new(index)
    }
    fn to_index(self) -> usize {
        self.index()
    }
}
