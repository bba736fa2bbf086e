//! Hasse-Witt matrices, p-ranks and Prym constructions for curves of genus 2
//! and 3 over finite fields of odd characteristic.

pub mod gf;
pub mod mpoly;
pub mod hasse_witt;
pub mod prym;
pub mod search;
pub mod count;
pub mod acceptance;
