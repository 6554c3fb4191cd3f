//! Natural-number scalars used by the semantic layer.
//!
//! Valuations and evaluation are generic over the carrier so the same code runs
//! on machine words (fast fuzzing) and on arbitrary-precision integers (the CLI).

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, Unsigned};

/// A natural-number carrier for level values.
pub trait Natural:
    Unsigned + CheckedAdd + Ord + Clone + Debug + Display + From<u32> + Send + Sync + 'static
{
    /// `self + shift`, or `None` when the carrier overflows.
    fn add_shift(&self, shift: u32) -> Option<Self> {
        self.checked_add(&Self::from(shift))
    }
}

impl<T> Natural for T where
    T: Unsigned + CheckedAdd + Ord + Clone + Debug + Display + From<u32> + Send + Sync + 'static
{
}
