//! LP relaxations built from signed certificates.

mod block;
mod certificate;
mod levels;
mod model;
mod sherali;

pub use block::{emit_nonneg_block, BlockFlows, BlockHooks, NonnegBlock};
pub use certificate::{extract_certificate, CertificateBlock, RelaxationCertificate};
pub use levels::{
    build_level_relaxation, build_level_relaxation_with, build_signed_reformulation,
    level_blocks, num_levels, size_bound, LevelOptions, RelaxMethod,
};
pub use model::{
    assemble, AssembleOptions, CertificateBlockModel, PsBlock, RelaxationModel,
    RelaxationSolution, SolveMode,
};
pub use sherali::{sherali_adams_1, SheraliAdams};
