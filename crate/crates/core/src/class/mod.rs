//! Cardinals, orbit censuses and class membership.

mod cardinal;
mod census;
mod member;
mod structural;

pub use self::cardinal::{card_le, card_mul, Cardinal};
pub use self::census::{support_cardinality, CensusError, OrbitCensus, OrbitSize};
pub use self::member::{class_member, ClassSpec, Mode};
pub use self::structural::{classify_structural, StructuralReport};
