//! Exact lacunary generating functions of the two-variable Hermite
//! polynomials `H_n(x,y)`, together with the operator toolkit used to derive
//! and cross-check them.
//!
//! All symbolic work is exact over the rationals; only the roots-of-unity
//! evaluation in [`closed_form::nieto_truax`] uses floating point.

pub mod arith;
pub mod closed_form;
pub mod coeff_table;
pub mod error;
pub mod hermite;
pub mod hypergeom;
pub mod lacunary;
pub mod normal_order;
pub mod verify;

pub use arith::{BigInt, BigRational, BivarPoly, LambdaSeries, Term};
pub use closed_form::{
    closed_form_hk0, closed_form_hkl, rk_series, ClosedFormPlan, MuLambdaSeries,
};
pub use coeff_table::{CoeffTable, Support};
pub use error::{Error, Result};
pub use hermite::{hermite_coeff_table, hermite_egf, hermite_poly};
pub use hypergeom::{pfq_series, pochhammer, HypergeomSpec, MonomialArg};
pub use lacunary::{dilate, resum_parity_split, resum_residue_classes, shift, LacunaryIndex};
pub use normal_order::{
    apply_exp_op, crofton_check, normal_order, NormalOrderResult, SemiLinearOp,
};
pub use verify::{
    emit_series, run_verification, OutputFormat, SeriesKind, VerifyConfig, VerifyReport,
};
