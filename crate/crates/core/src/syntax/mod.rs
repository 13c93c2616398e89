//! Types, terms, formulas and their concrete syntax.

pub mod formula;
pub mod infix;
pub mod parse;
pub mod print;
pub mod term;
pub mod types;

pub use formula::{alpha_eq_form, inst_type_form, subst_form, Formula};
pub use infix::{is_infix, register_infix};
pub use parse::{
    parse_form, parse_forms_jointly, parse_quotation, parse_term, parse_type, Antiquote,
    Quotation, Signature,
};
pub use print::{print_form, print_sequent, print_term, print_type};
pub use term::{alpha_eq, inst_type, subst_term, Term, TermKind, TermSubst, Var};
pub use types::{Type, TypeSubst};
