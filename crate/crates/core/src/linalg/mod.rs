//! Dense linear algebra over number fields.

pub mod decompose;
pub mod kpoly;
pub mod matrix;
pub mod roots;

pub use decompose::{exp_nilpotent, is_semisimple, jordan_chevalley, log_unipotent};
pub use kpoly::KPoly;
pub use matrix::Matrix;
pub use roots::{adjoin_sqrt, field_automorphisms, roots_in_field, SqrtExtension};
