//! Quantum Schubert cell algebras `U_q^+[w]` and quantized nilradicals `U_q(n_J)`.

pub mod rigidity;
pub mod rootsys;
pub mod scalar;
pub mod shuffle;
pub mod uqplus;
pub mod words;
