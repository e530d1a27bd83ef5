//! Polynomial-time deciders for transitive inputs.
//!
//! Each routine checks its structural precondition and returns a certificate
//! that [`crate::search::verify`] accepts whenever the answer is yes.

mod colouring;
mod fig2;
mod hom;
mod ones_diag;

pub use colouring::{colour_underlying, dichromatic, kl_colour};
pub use fig2::{fig2_target, hom_fig2, FIG2_A, FIG2_B, FIG2_X, FIG2_Y};
pub use hom::{hom_asymmetric_target, hom_semicomplete_transitive, hom_symmetric_target};
pub use ones_diag::mpartition_ones_diag;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub(crate) fn require_transitive(g: &Digraph, role: &str) -> Result<()> {
    if g.is_transitive() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{role} is not transitive")))
    }
}
