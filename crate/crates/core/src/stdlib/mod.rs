//! The standard library: closed totality proofs for the arithmetic of the
//! default signature, and the schemes that build new ones from old.

mod base;
mod schemes;

pub use base::{
    base_library, base_statements, proof_coercion, proof_identity, proof_minus, proof_mult, proof_plus, proof_pred,
    proof_succ, proof_zero,
};
pub use schemes::{
    bang_coerce, bounded_product, bounded_sum, compose_scheme, lift_bangs, normalize_totality, shape_of,
    totality_shape, SchemeError, Totality,
};

use crate::kernel::{Kernel, KernelError};
use crate::theory::{h0, signature};

/// A kernel over the default signature and H₀ with every base proof
/// checked against its statement and registered for `use`.
pub fn std_kernel() -> Result<Kernel, (String, KernelError)> {
    let mut kernel = Kernel::new(signature(), h0());
    for (name, statement, script) in base_library() {
        let proof = kernel.check_claim(&script, &statement).map_err(|e| (name.to_string(), e))?;
        kernel.add_lemma(name, proof).map_err(|e| (name.to_string(), e))?;
    }
    Ok(kernel)
}
