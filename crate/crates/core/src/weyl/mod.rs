//! The Weyl algebra with polynomial or rational-function coefficients.

mod forms;
mod op;
mod text;

pub use forms::{
    apply_to_series, init_w, linear_change, phase_ring, restrict_xm0, shift_op, symbol, theta_form,
    theta_ring, theta_to_weyl, GrElement, RestrictedOp, WeightVector,
};
pub use op::{Coefficient, DOp, Permutable, ROp, WeylOp};
pub use text::{parse_dop, parse_rop};
