pub mod class;
pub mod perm;
pub mod series;
pub mod verify;

pub use class::{ClassError, ClassLab, Filter, PatternBasis, RefinedCountTable, Stat};
pub use perm::{parse_permutation, perm, Deflation, IndexSet, Interval, PermError, Permutation};
