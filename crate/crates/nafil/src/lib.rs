//! Finite invertible loops as structure matrices (Cayley tables).
//!
//! A quasigroup's table is a Latin square; a loop additionally has a
//! two-sided identity, and an invertible loop gives every element a unique
//! two-sided inverse. The non-associative ones — NAFILs — are the subject
//! of this crate: it validates and analyzes tables, checks the classical
//! weak-associative and inverse identities (Moufang, Bol, IP, CIP, ...),
//! enumerates all reduced invertible loops of a given order by pruned
//! backtracking, and sorts the results into isomorphism classes.
//!
//! Start with [`table::LoopTable`] for single-table work,
//! [`identity`] for the equation language and the property catalog,
//! [`enumerate`] for searches and censuses, [`iso`] for canonical forms,
//! [`catalog`] for built-in tables, and [`format`] for file I/O. The
//! `examples/` directory shows one runnable program per capability; the
//! `nafil` binary wraps the same operations as subcommands.

pub mod catalog;
pub mod enumerate;
mod error;
pub mod format;
pub mod identity;
pub mod iso;
pub mod table;

pub use error::{Axis, Error, Result};
pub use table::{AxiomProfile, Classification, InverseMaps, LoopTable, Side, StructuralProfile};
