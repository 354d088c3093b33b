//! Formula syntax, parsing, evaluation and the second-order normal form.

mod eval;
mod formula;
mod normal_form;
mod parser;

pub use eval::{eval_fo, eval_so, eval_so2, is_numeric, so2_prefix, CompiledFormula};
pub(crate) use eval::{eval3, CTerm, Node};
pub use formula::{Formula, Quantifier, Term};
pub(crate) use normal_form::as_literal;
pub use normal_form::{validate_normal_form, NormalFormSentence};
pub use parser::parse_formula;
pub(crate) use parser::parse_formula_from;
