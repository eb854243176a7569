//! A small computer-algebra kernel for finite unital rings.
//!
//! Rings are built by [`ring::Ring`] constructors (residues, finite
//! fields, matrix and triangular rings, products, explicit tables,
//! quotients) and studied with [`analysis`]. [`enumeration`] lists every
//! unital ring of a small order, and [`theorems`] turns classical facts
//! about unit groups into checks over populations of rings, including
//! the statement that a finite ring whose only unit is 1 is boolean.

pub mod analysis;
pub mod arith;
pub mod enumeration;
pub mod error;
pub mod expr;
pub mod ring;
pub mod theorems;

pub use error::{Result, RingError};
pub use ring::{Elem, Ring, RingKind, TableRing};
