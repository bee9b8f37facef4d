//! Modular functions evaluated by q-series in MPFR arithmetic.
//!
//! Everything lives on lattices `[tau, 1]`. Values on `O_K` are taken at
//! `tau_K`, which is legitimate because `j` and `g_2 g_3 wp / Delta` have
//! weight zero.

mod curve;
mod cx;
mod series;
mod siegel;
mod value;

pub use curve::{curve_coefficients, weber_x, y_squared, WeberCurve};
pub use cx::Cx;
pub use series::{j_value, wp_prime_value, wp_value, C_value, J_value, QExpansions, MIN_IM_TAU};
pub use siegel::{fricke_value, siegel_value, RowVector, SiegelIndex};
pub use value::{err_bound, ComplexValue, EvalContext};
