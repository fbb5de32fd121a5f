//! First-order logic over graphs: formulas, model checking, Hanf
//! equivalence and family recognizers.

mod battery;
mod eval;
mod formula;
mod hanf;
mod recognize;

pub use battery::{Battery, BatterySentence};
pub use eval::{evaluate, CompiledFormula};
pub use formula::{parse_formula, parse_sentence, quantifier_rank, DegCmp, Formula};
pub use hanf::{
    bounded_degree_qr_bound, fsv_radius, hanf_equiv, hanf_transfer, hanf_type, n_phi, HanfType, TransferDisagreement,
    TransferReport,
};
pub use recognize::{
    is_member, recognizer_sweep, Family, FormulaSource, OrderStats, Oracle, Recognizer, ThresholdReport,
};
