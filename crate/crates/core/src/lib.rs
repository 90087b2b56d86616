//! Desk-scale link analysis: column-stochastic link matrices, power-method
//! ranking with full convergence telemetry, and the spectral diagnostics
//! that explain when the iteration works.
//!
//! The pipeline is `graph` → `matrix` → `power`/`spectral` → `ranking`:
//! parse an edge list, build the sparse column-stochastic matrix (weights
//! `1/out-degree`, exact rationals with a derived float view), iterate
//! `I_n = H·I_{n-1}` until it converges or provably oscillates, and check
//! the spectrum (Gerschgorin bound, exact characteristic polynomial at desk
//! scale, λ₂ estimators) to see which outcome to expect. There is no
//! randomness anywhere: equal inputs produce equal bytes.

pub mod graph;
pub mod matrix;
mod poly;
pub mod power;
pub mod ranking;
pub mod report;
pub mod spectral;

pub use graph::{LinkGraph, PageId, ParseError, ValidationReport};
pub use matrix::{ColumnStochasticMatrix, MatrixError, StochasticVector};
pub use power::{
    compare_inits, convergence_profile, detect_period2, pagerank, pagerank_from_trace,
    power_iterate,
    InitialVector, IterationTrace, PagerankOptions, PowerError, Verdict,
};
pub use ranking::{normalize_stochastic, rank_pages, rank_pages_exact, RankTable};
pub use spectral::{
    char_poly, estimate_lambda2_deflation, estimate_lambda2_ratio, exact_stationary,
    gerschgorin_discs, is_realistic, poly_roots, spectral_bound, spectrum_report, CharPoly,
    GerschgorinDisc, SpectralError, SpectrumReport,
};
