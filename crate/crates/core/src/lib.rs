pub mod catalog;
pub mod chartab;
pub mod error;
pub mod gamma;
pub mod group;
pub mod lattice;
pub mod modular;
pub mod perm;
pub mod poset;
pub mod subgroup;
