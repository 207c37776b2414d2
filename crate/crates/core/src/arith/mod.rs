//! Integer, modular and fixed-point arithmetic used by the analysis modules.

pub mod factor;
pub mod fixed;
pub mod linsolve;
pub mod modp;
pub mod ntheory;
pub mod roots;
pub mod zpoly;
