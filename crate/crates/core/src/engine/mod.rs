//! Sequence generation in log space and empirical Benford statistics.

mod mantissa;
mod stats;
mod stream;
mod subseq;

pub use mantissa::{check_base, log_b_big, log_b_rational, mantissa, mantissa_exact};
pub use stats::{
    benford_probabilities, benford_stats, histogram_csv, kolmogorov, mantissa_sample, BenfordStats, MantissaSample,
};
pub use stream::{
    exact_prefix, exact_prefix_with_cap, exact_zero_indices, generate_log_stream, log_terms, resolve_mode,
    ExactLogStream, ExactTerm, FloatLogStream, LogStream, LogTerm, StreamMode, DEFAULT_EXACT_PREFIX_CAP,
};
pub use subseq::{subsequence_stream, IndexPoly, MAX_SUBSEQUENCE_INDEX};
