//! Exact arithmetic over `Q` and number fields `Q[x]/(f)`.

pub mod factor;
pub mod isolate;
pub mod modp;
pub mod number_field;
pub mod qpoly;
pub mod rational;

pub use isolate::RootBox;
pub use number_field::{Field, FieldElement, NumberField, DEFAULT_IRREDUCIBILITY_BOUND};
pub use rational::Rational;
