pub mod budget;
pub mod error;
pub mod fop;
pub mod logic;
pub mod par;
pub mod problems;
pub mod reductions;
pub mod structure;
pub mod text;
pub mod universality;

pub use budget::Budget;
pub use error::{Error, NormalFormViolation, Result};
pub use structure::{Relation, Structure, StructureSpace, Vocabulary};
