//! Procrustean entanglement concentration for two entangled atomic
//! ensembles.
//!
//! The ensembles start in a two-mode squeezed state. Each is coupled to a
//! vacuum light mode through an effective (non-unitary) atom-light
//! beamsplitter, and the protocol succeeds when on-off detectors on both
//! light modes click. The crate builds the heralded two-mode atomic state in
//! a truncated Fock basis, with ideal or lossy detectors, and measures its
//! entanglement through the block-diagonal partial transpose.

pub mod eigen;
pub mod error;
pub mod fock;
pub mod lossy;
pub mod metrics;
pub mod oracle;
pub mod params;
pub mod protocol;
pub mod state;

pub use error::{Error, Result};
pub use lossy::{condition_on_clicks_lossy, success_probability_lossy, DetectorModel};
pub use metrics::{negativity, partial_transpose_blocks, tmss_negativity_closed, EntanglementReport, PtBlockSet};
pub use params::{InteractionStrength, SqueezingParams};
pub use protocol::{evaluate_point, heralded_entanglement, tmss_entanglement, PointOutcome};
pub use state::{
    apply_effective_beamsplitter, build_tmss, condition_on_clicks_ideal, success_probability_ideal,
    ConditionalAtomicState, JointAmplitudeTable, TmssVector, DEFAULT_N_MAX,
};
