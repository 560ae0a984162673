//! Hadamard rank and border rank of points.

pub mod certificate;
pub mod decompose;
pub mod rank;
pub mod solve;

pub use decompose::{
    decomposition_exists, decomposition_witness, pattern_system, verify_decomposition, zero_patterns, Existence,
    ExistenceReport, PatternResult, PatternStatus, WitnessOptions, ZeroPattern,
};
pub use solve::{solve_affine, solve_affine_rational, solve_projective, solve_zero_dimensional, Solution};
pub use rank::{
    border_rank, border_rank_with_cache, hadamard_rank, rank_obstruction, reduce_and_rank, replay_certificate,
    witnesses_rational, zero_pattern_reduce, InfeasibleRecord, RankCertificate, RankOptions, Reduction, Replay, Verdict,
};
pub use certificate::{point_from_repr, point_repr, CertificateJson, CoordRepr};
