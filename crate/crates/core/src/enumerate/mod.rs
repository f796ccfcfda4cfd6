//! Exhaustive oracles: conjugacy classes of `A_q A_r` subgroups of small
//! symmetric groups, and the census of `A_p A_q A_r` groups of a given order.

mod census;
mod classes;

pub use census::{
    enumerate_variety_groups, enumerate_variety_groups_with, homomorphism_orbits, representative_id, Traversal,
    VarietyCensus,
};
pub use classes::{
    enumerate_primitive_classes, enumerate_transitive_classes, regular_elementary_abelian_8, regular_translations,
    ClassInventory, InventoryClass,
};
