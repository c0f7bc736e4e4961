//! Local-global machinery: dilation equalizers, descent of congruence words
//! from `Z[1/s]` to `Z`, dilation certificates, and the telescoping patch that
//! glues local factorizations over a covering of `Z`.

mod descent;
mod equalizer;
mod patch;

pub use descent::{descend_word, DescentBudget};
pub use equalizer::dilation_equalizer;
pub use patch::{dilation_factor, patch, CoveringData, DilationCert};
