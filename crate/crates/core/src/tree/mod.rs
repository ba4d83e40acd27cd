//! Ordinal trees in `O(n)` bits.

mod bp;
mod center;
mod choice;
mod height;
mod input;
mod store;

pub use bp::BalancedParens;
pub use center::tree_center;
pub use choice::ChoiceDictionary;
pub use height::HeightIterator;
pub use input::{Tree, TreeInput};
pub use store::{ClassificationStore, PreorderColors, COLOR_SLOT_FACTOR, SLOT_BITS};
