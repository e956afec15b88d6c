//! Core model: amino-acid alphabet, contact-energy table, diamond-lattice
//! geometry, turn encoding/decoding, and the symmetry-fixing conventions that
//! every other module builds on.

mod amino;
mod conformation;
mod contact;
mod lattice;
mod sequence;

pub use amino::AminoAcid;
pub use conformation::{
    bit_labels, enumerate_valid, free_bit_count, random_valid, valid_conformation_count,
    Conformation,
};
pub use contact::ContactEnergyTable;
pub use lattice::{LatticeVec, BOND_DIRECTIONS};
pub use sequence::ProteinSequence;
