// SPDX-License-Identifier: Apache-2.0

//! Covering properties and selection games on finite lattices.

pub mod counterplay;
pub mod covers;
pub mod error;
pub mod format;
pub mod game;
pub mod lattice;
pub mod sample;

pub use error::{Error, Result};
pub use lattice::{Elem, FiniteLattice, Hypotheses, Lattice};
