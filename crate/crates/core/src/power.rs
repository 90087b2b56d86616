//! Power iteration with full telemetry.
//!
//! The engine runs `I_n = H·I_{n-1}` from a chosen stochastic start and
//! watches two exits besides exhaustion:
//!
//! * **convergence** — the L1 step residual `||I_n − I_{n−1}||_1` drops to
//!   the tolerance;
//! * **period-2 oscillation** — the bipartite failure mode where
//!   `||I_n − I_{n−2}||_1` reaches the tolerance while the step residual
//!   stays large. A run with a negative real second eigenvalue also shows
//!   shrinking `I_n − I_{n−2}` (the error flips sign every step), so the
//!   oscillation verdict additionally requires the residual to sit above
//!   [`OSCILLATION_PLATEAU_FACTOR`]·tol; genuine bipartite oscillation keeps
//!   the residual at Θ(1) forever.
//!
//! Only period 2 is detected. Longer periods (a 3-cycle under e1, say) run
//! the budget out and report as exhausted; the near-unity flag of the ratio
//! estimator is the diagnostic for those.
//!
//! Every iterate is stochastic (H preserves entry sums); the engine
//! validates each iterate and fails loudly on drift instead of returning
//! garbage.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{l1_distance, ColumnStochasticMatrix, MatrixError, StochasticVector, VectorError};
use crate::ranking::{rank_pages, RankTable, RankingError, DEFAULT_TIE_TOL};

/// An oscillation verdict requires the step residual to exceed this multiple
/// of the tolerance at the moment `||I_n − I_{n−2}||_1 ≤ tol`.
pub const OSCILLATION_PLATEAU_FACTOR: f64 = 1e3;

/// Iterates are retained in full below this dimension, residuals-only above.
pub const FULL_RETENTION_DIM: usize = 256;

#[derive(Debug, Error)]
pub enum PowerError {
    #[error("initial vector has length {len}, matrix needs {n}")]
    InitDimension { n: usize, len: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("iterate left the stochastic simplex ({0}); arithmetic drift")]
    Drift(#[from] VectorError),
    #[error("power iteration did not converge: {}", .trace.verdict())]
    NotConverged { trace: Box<IterationTrace> },
    #[error("fixed-point certificate failed: ||H·I − I||_1 = {residual:e} > {bound:e}")]
    CertificateFailed { residual: f64, bound: f64 },
    #[error("convergence profile needs retained iterates, but the trace kept residuals only")]
    NoRetainedIterates,
    #[error(transparent)]
    Ranking(#[from] RankingError),
}

/// Which iterates a trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Retention {
    Full,
    ResidualsOnly,
    /// Keep every k-th iterate (and I_0).
    Stride(usize),
}

impl Retention {
    fn keeps(&self, step: usize) -> bool {
        match *self {
            Retention::Full => true,
            Retention::ResidualsOnly => false,
            Retention::Stride(k) => step.is_multiple_of(k.max(1)),
        }
    }
}

/// The starting vector of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialVector {
    /// (1, 0, ..., 0) — the classical seed.
    E1,
    /// (1/n, ..., 1/n) — the default here.
    Uniform,
    Custom(StochasticVector),
}

impl InitialVector {
    pub fn resolve(&self, n: usize) -> Result<StochasticVector, PowerError> {
        match self {
            InitialVector::E1 => Ok(StochasticVector::e1(n)),
            InitialVector::Uniform => Ok(StochasticVector::uniform(n)),
            InitialVector::Custom(v) => {
                if v.len() != n {
                    return Err(PowerError::InitDimension { n, len: v.len() });
                }
                Ok(v.clone())
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InitialVector::E1 => "e1",
            InitialVector::Uniform => "uniform",
            InitialVector::Custom(_) => "custom",
        }
    }
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Converged { step: usize },
    Oscillating { period: usize, step: usize },
    Exhausted { max_iters: usize },
}

impl Verdict {
    pub fn is_converged(&self) -> bool {
        matches!(self, Verdict::Converged { .. })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Verdict::Converged { step } => write!(f, "converged at step {step}"),
            Verdict::Oscillating { period, step } => {
                write!(f, "oscillating with period {period}, detected at step {step}")
            }
            Verdict::Exhausted { max_iters } => write!(f, "exhausted after {max_iters} iterations"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSettings {
    pub tol: f64,
    pub max_iters: usize,
    pub init: String,
    pub retention: Retention,
}

/// Full history of one power-method run.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    settings: TraceSettings,
    /// Retained iterates as (step, vector); step 0 is the initial vector.
    iterates: Vec<(usize, StochasticVector)>,
    /// `residuals[k] = ||I_{k+1} − I_k||_1`; length equals steps taken.
    residuals: Vec<f64>,
    final_iterate: StochasticVector,
    verdict: Verdict,
}

impl IterationTrace {
    pub fn settings(&self) -> &TraceSettings {
        &self.settings
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    /// Number of matrix applications performed.
    pub fn steps(&self) -> usize {
        self.residuals.len()
    }

    /// `||I_step − I_{step−1}||_1`, for 1 ≤ step ≤ steps().
    pub fn residual_at(&self, step: usize) -> Option<f64> {
        if step == 0 {
            return None;
        }
        self.residuals.get(step - 1).copied()
    }

    pub fn iterates(&self) -> &[(usize, StochasticVector)] {
        &self.iterates
    }

    pub fn iterate_at(&self, step: usize) -> Option<&StochasticVector> {
        self.iterates
            .binary_search_by_key(&step, |&(s, _)| s)
            .ok()
            .map(|k| &self.iterates[k].1)
    }

    /// The last iterate computed, regardless of retention policy.
    pub fn final_iterate(&self) -> &StochasticVector {
        &self.final_iterate
    }

    /// TSV rows `n residual entries...` (tab-separated), one per retained
    /// iterate; the residual column is empty at n = 0.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for &(step, ref iterate) in &self.iterates {
            let residual = self
                .residual_at(step)
                .map(|r| format!("{r:.6e}"))
                .unwrap_or_default();
            out.push_str(&format!("{step}\t{residual}"));
            for x in iterate.as_slice() {
                out.push_str(&format!("\t{x:.6e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// True when the newest of `recent` has returned to the iterate two steps
/// back (within `tol`) while the step residual still sits above
/// [`OSCILLATION_PLATEAU_FACTOR`]·tol. Needs at least 3 iterates.
pub fn detect_period2(recent: &[StochasticVector], tol: f64) -> bool {
    let [.., back2, back1, newest] = recent else {
        return false;
    };
    period2_fired(newest, back1, back2, tol)
}

fn period2_fired(
    newest: &StochasticVector,
    back1: &StochasticVector,
    back2: &StochasticVector,
    tol: f64,
) -> bool {
    newest.l1_distance(back2) <= tol
        && newest.l1_distance(back1) > OSCILLATION_PLATEAU_FACTOR * tol
}

/// Runs the recursion `I_n = H·I_{n−1}` until it converges, oscillates, or
/// exhausts `max_iters`. Retention defaults to full history below
/// [`FULL_RETENTION_DIM`] pages and residuals-only above.
pub fn power_iterate(
    m: &ColumnStochasticMatrix,
    init: &InitialVector,
    tol: f64,
    max_iters: usize,
) -> Result<IterationTrace, PowerError> {
    let retention = if m.dim() < FULL_RETENTION_DIM {
        Retention::Full
    } else {
        Retention::ResidualsOnly
    };
    power_iterate_with_retention(m, init, tol, max_iters, retention)
}

pub fn power_iterate_with_retention(
    m: &ColumnStochasticMatrix,
    init: &InitialVector,
    tol: f64,
    max_iters: usize,
    retention: Retention,
) -> Result<IterationTrace, PowerError> {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_iters >= 1, "need at least one iteration");

    let settings = TraceSettings {
        tol,
        max_iters,
        init: init.kind().to_string(),
        retention,
    };
    let v0 = init.resolve(m.dim())?;
    let mut iterates = Vec::new();
    if retention.keeps(0) {
        iterates.push((0, v0.clone()));
    }

    let mut residuals = Vec::with_capacity(64);
    let mut back2: Option<StochasticVector> = None;
    let mut current = v0;

    for step in 1..=max_iters {
        let next = StochasticVector::new(m.matvec(current.as_slice())?)?;
        let residual = next.l1_distance(&current);
        residuals.push(residual);
        if retention.keeps(step) {
            iterates.push((step, next.clone()));
        }

        if residual <= tol {
            return Ok(IterationTrace {
                settings,
                iterates,
                residuals,
                final_iterate: next,
                verdict: Verdict::Converged { step },
            });
        }
        if let Some(ref b2) = back2 {
            if period2_fired(&next, &current, b2, tol) {
                return Ok(IterationTrace {
                    settings,
                    iterates,
                    residuals,
                    final_iterate: next,
                    verdict: Verdict::Oscillating { period: 2, step },
                });
            }
        }
        back2 = Some(std::mem::replace(&mut current, next));
    }

    Ok(IterationTrace {
        settings,
        iterates,
        residuals,
        final_iterate: current,
        verdict: Verdict::Exhausted { max_iters },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PagerankOptions {
    pub init: InitialVector,
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for PagerankOptions {
    fn default() -> Self {
        PagerankOptions {
            init: InitialVector::Uniform,
            tol: 1e-10,
            max_iters: 10_000,
        }
    }
}

/// Runs the power method and returns the fixed point as a ranking table.
///
/// On convergence the result carries the certificate
/// `||H·I − I||_1 ≤ 10·tol`; a run that oscillates or exhausts comes back as
/// [`PowerError::NotConverged`] with the trace attached so the caller can see
/// why.
pub fn pagerank(
    m: &ColumnStochasticMatrix,
    options: &PagerankOptions,
) -> Result<RankTable, PowerError> {
    let trace = power_iterate(m, &options.init, options.tol, options.max_iters)?;
    pagerank_from_trace(m, &trace, DEFAULT_TIE_TOL)
}

/// Turns an already-computed converged trace into a ranking table, checking
/// the fixed-point certificate against the trace's own tolerance.
pub fn pagerank_from_trace(
    m: &ColumnStochasticMatrix,
    trace: &IterationTrace,
    tie_tol: f64,
) -> Result<RankTable, PowerError> {
    if !trace.verdict().is_converged() {
        return Err(PowerError::NotConverged {
            trace: Box::new(trace.clone()),
        });
    }
    let fixed = trace.final_iterate();
    let image = m.matvec(fixed.as_slice())?;
    let certificate = l1_distance(&image, fixed.as_slice());
    let bound = 10.0 * trace.settings().tol;
    if certificate > bound {
        return Err(PowerError::CertificateFailed {
            residual: certificate,
            bound,
        });
    }
    Ok(rank_pages(m.labels(), fixed, tie_tol)?)
}

/// One row of a convergence profile: the distance to the reference vector
/// next to the matching power of |λ₂|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub step: usize,
    /// `||I_n − I||_1`
    pub error: f64,
    /// `|λ₂|^n`
    pub gap_power: f64,
    /// `error / gap_power` — settles to a constant when the error is carried
    /// by the λ₂ mode.
    pub ratio: f64,
}

/// Tabulates `||I_n − I||_1` against `lambda2_mag^n` for every retained
/// iterate.
pub fn convergence_profile(
    trace: &IterationTrace,
    reference: &StochasticVector,
    lambda2_mag: f64,
) -> Result<Vec<ProfileRow>, PowerError> {
    if trace.iterates().is_empty() {
        return Err(PowerError::NoRetainedIterates);
    }
    let rows = trace
        .iterates()
        .iter()
        .map(|&(step, ref iterate)| {
            let error = iterate.l1_distance(reference);
            let gap_power = lambda2_mag.powi(step as i32);
            ProfileRow {
                step,
                error,
                gap_power,
                ratio: error / gap_power,
            }
        })
        .collect();
    Ok(rows)
}

/// Outcome of one entry of [`compare_inits`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InitComparison {
    pub init: String,
    pub verdict: Verdict,
    pub steps_to_converge: Option<usize>,
}

/// Runs the power method once per initial vector and summarizes the verdicts
/// in input order.
pub fn compare_inits(
    m: &ColumnStochasticMatrix,
    inits: &[InitialVector],
    tol: f64,
    max_iters: usize,
) -> Result<Vec<InitComparison>, PowerError> {
    inits
        .iter()
        .map(|init| {
            let trace =
                power_iterate_with_retention(m, init, tol, max_iters, Retention::ResidualsOnly)?;
            let steps_to_converge = match trace.verdict() {
                Verdict::Converged { step } => Some(step),
                _ => None,
            };
            Ok(InitComparison {
                init: init.kind().to_string(),
                verdict: trace.verdict(),
                steps_to_converge,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tests::{eight_pages, four_cycle, two_cycle, valid_graph};
    use crate::matrix::ColumnStochasticMatrix;
    use proptest::prelude::*;

    fn fmt4(v: &StochasticVector) -> Vec<String> {
        v.as_slice().iter().map(|x| format!("{x:.4}")).collect()
    }

    #[test]
    fn eight_pages_converges_from_e1() {
        let m = eight_pages();
        let trace = power_iterate(&m, &InitialVector::E1, 1e-6, 10_000).unwrap();
        assert_eq!(trace.verdict(), Verdict::Converged { step: 98 });
        assert_eq!(trace.steps(), 98);
        assert!(trace.residual_at(98).unwrap() <= 1e-6);
        // the step-55 iterate matches the published display
        assert_eq!(
            fmt4(trace.iterate_at(55).unwrap()),
            ["0.0600", "0.0675", "0.0300", "0.0675", "0.0975", "0.2025", "0.1800", "0.2950"]
        );
    }

    #[test]
    fn four_cycle_oscillates_from_e1() {
        let m = four_cycle();
        let trace = power_iterate(&m, &InitialVector::E1, 1e-10, 10_000).unwrap();
        assert_eq!(trace.verdict(), Verdict::Oscillating { period: 2, step: 36 });
        // supports alternate between {0, 2} and {1, 3}
        let even = trace.iterate_at(34).unwrap();
        let odd = trace.iterate_at(35).unwrap();
        assert!(even[1] < 1e-9 && even[3] < 1e-9);
        assert!(odd[0] < 1e-9 && odd[2] < 1e-9);
    }

    #[test]
    fn four_cycle_converges_from_uniform() {
        let m = four_cycle();
        let trace = power_iterate(&m, &InitialVector::Uniform, 1e-10, 10_000).unwrap();
        assert_eq!(trace.verdict(), Verdict::Converged { step: 34 });
        assert_eq!(
            fmt4(trace.iterate_at(10).unwrap()),
            ["0.1667", "0.3333", "0.3333", "0.1667"]
        );
    }

    #[test]
    fn detect_period2_needs_a_plateau() {
        // constant sequence: converged, not oscillating
        let c = StochasticVector::uniform(4);
        assert!(!detect_period2(&[c.clone(), c.clone(), c.clone()], 1e-10));
        // too few iterates
        assert!(!detect_period2(&[c.clone(), c], 1e-10));

        // a genuine alternation fires
        let a = StochasticVector::new(vec![1.0, 0.0]).unwrap();
        let b = StochasticVector::new(vec![0.0, 1.0]).unwrap();
        assert!(detect_period2(&[a.clone(), b, a], 1e-10));
    }

    #[test]
    fn four_cycle_e1_fires_period2_by_step_22_at_loose_tol() {
        let m = four_cycle();
        let trace = power_iterate(&m, &InitialVector::E1, 1e-6, 10_000).unwrap();
        assert_eq!(trace.verdict(), Verdict::Oscillating { period: 2, step: 22 });
    }

    #[test]
    fn eight_pages_never_fires_period2() {
        let m = eight_pages();
        let trace = power_iterate(&m, &InitialVector::E1, 1e-10, 10_000).unwrap();
        assert!(trace.verdict().is_converged());
        // replay the detector over the full history: false at every step
        let iterates = trace.iterates();
        for w in iterates.windows(3) {
            let window: Vec<StochasticVector> = w.iter().map(|(_, v)| v.clone()).collect();
            assert!(!detect_period2(&window, 1e-10));
        }
    }

    #[test]
    fn pagerank_matches_the_published_eigenvector() {
        let m = eight_pages();
        let table = pagerank(&m, &PagerankOptions::default()).unwrap();
        let expect = [0.06, 0.0675, 0.03, 0.0675, 0.0975, 0.2025, 0.18, 0.295];
        for (a, b) in table.scores().as_slice().iter().zip(expect) {
            assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
        }
        assert_eq!(table.order_string(), "8 > 6 > 7 > 5 > 2 = 4 > 1 > 3");
    }

    #[test]
    fn pagerank_four_cycle_defaults_to_uniform_init() {
        let m = four_cycle();
        let table = pagerank(&m, &PagerankOptions::default()).unwrap();
        let expect = [1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0];
        for (a, b) in table.scores().as_slice().iter().zip(expect) {
            assert!((a - b).abs() <= 1e-8);
        }
    }

    #[test]
    fn pagerank_two_cycle_is_immediate_from_uniform() {
        let m = two_cycle();
        let opts = PagerankOptions::default();
        let trace = power_iterate(&m, &opts.init, opts.tol, opts.max_iters).unwrap();
        assert_eq!(trace.verdict(), Verdict::Converged { step: 1 });
        let table = pagerank(&m, &opts).unwrap();
        assert_eq!(table.scores().as_slice(), [0.5, 0.5]);
    }

    #[test]
    fn pagerank_failure_carries_the_trace() {
        let m = four_cycle();
        let err = pagerank(
            &m,
            &PagerankOptions {
                init: InitialVector::E1,
                ..PagerankOptions::default()
            },
        )
        .unwrap_err();
        match err {
            PowerError::NotConverged { trace } => {
                assert!(matches!(trace.verdict(), Verdict::Oscillating { period: 2, .. }));
            }
            other => panic!("expected NotConverged, got {other}"),
        }
    }

    #[test]
    fn profile_matches_published_gap_powers() {
        let m = eight_pages();
        let trace = power_iterate(&m, &InitialVector::E1, 1e-12, 10_000).unwrap();
        let reference = {
            let table = pagerank(&m, &PagerankOptions::default()).unwrap();
            table.scores().clone()
        };
        let rows = convergence_profile(&trace, &reference, 0.87).unwrap();
        let row = |step: usize| rows.iter().find(|r| r.step == step).unwrap();
        assert_eq!(format!("{:.4}", row(40).gap_power), "0.0038");
        assert_eq!(format!("{:.4}", row(45).gap_power), "0.0019");
        assert_eq!(format!("{:.4}", row(50).gap_power), "0.0009");
        assert_eq!(format!("{:.4}", row(55).gap_power), "0.0005");
    }

    #[test]
    fn profile_error_at_step_zero_is_init_distance() {
        let m = four_cycle();
        let trace = power_iterate(&m, &InitialVector::Uniform, 1e-10, 10_000).unwrap();
        let reference = StochasticVector::new(vec![1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0])
            .unwrap();
        let rows = convergence_profile(&trace, &reference, 0.5).unwrap();
        assert_eq!(rows[0].step, 0);
        assert!((rows[0].error - 1.0 / 3.0).abs() <= 1e-12);
        assert_eq!(rows[0].gap_power, 1.0);
    }

    #[test]
    fn profile_is_zero_when_start_is_the_fixed_point() {
        let m = two_cycle();
        let trace = power_iterate(&m, &InitialVector::Uniform, 1e-10, 10).unwrap();
        let reference = StochasticVector::uniform(2);
        for row in convergence_profile(&trace, &reference, 0.5).unwrap() {
            assert_eq!(row.error, 0.0);
        }
    }

    #[test]
    fn profile_requires_retained_iterates() {
        let m = eight_pages();
        let trace = power_iterate_with_retention(
            &m,
            &InitialVector::Uniform,
            1e-10,
            10_000,
            Retention::ResidualsOnly,
        )
        .unwrap();
        let reference = StochasticVector::uniform(8);
        assert!(matches!(
            convergence_profile(&trace, &reference, 0.87),
            Err(PowerError::NoRetainedIterates)
        ));
    }

    #[test]
    fn stride_retention_keeps_every_fifth_iterate() {
        let m = eight_pages();
        let trace = power_iterate_with_retention(
            &m,
            &InitialVector::E1,
            1e-10,
            10_000,
            Retention::Stride(5),
        )
        .unwrap();
        assert!(trace.iterates().iter().all(|(s, _)| s.is_multiple_of(5)));
        assert!(trace.iterate_at(55).is_some());
        assert!(trace.iterate_at(56).is_none());
    }

    #[test]
    fn compare_inits_on_four_cycle() {
        let m = four_cycle();
        // loose tolerance: 4-decimal agreement, where ten steps are enough
        let rows = compare_inits(&m, &[InitialVector::E1, InitialVector::Uniform], 1e-3, 10_000)
            .unwrap();
        assert_eq!(rows.len(), 2);
        assert!(matches!(rows[0].verdict, Verdict::Oscillating { .. }));
        assert_eq!(rows[0].steps_to_converge, None);
        assert!(matches!(rows[1].verdict, Verdict::Converged { .. }));
        assert!(rows[1].steps_to_converge.unwrap() <= 10);
    }

    #[test]
    fn compare_inits_on_eight_pages_records_both_step_counts() {
        let m = eight_pages();
        let rows = compare_inits(&m, &[InitialVector::E1, InitialVector::Uniform], 1e-10, 10_000)
            .unwrap();
        assert_eq!(rows[0].steps_to_converge, Some(164));
        assert_eq!(rows[1].steps_to_converge, Some(138));
    }

    #[test]
    fn single_iteration_budget_exhausts() {
        let m = four_cycle();
        let rows = compare_inits(&m, &[InitialVector::Uniform], 1e-10, 1).unwrap();
        assert_eq!(rows[0].verdict, Verdict::Exhausted { max_iters: 1 });
    }

    #[test]
    fn custom_init_dimension_is_checked() {
        let m = two_cycle();
        let bad = InitialVector::Custom(StochasticVector::uniform(3));
        assert!(matches!(
            power_iterate(&m, &bad, 1e-10, 10),
            Err(PowerError::InitDimension { n: 2, len: 3 })
        ));
    }

    #[test]
    fn trace_tsv_has_one_row_per_retained_iterate() {
        let m = four_cycle();
        let trace = power_iterate(&m, &InitialVector::Uniform, 1e-10, 10_000).unwrap();
        let tsv = trace.to_tsv();
        assert_eq!(tsv.lines().count(), trace.iterates().len());
        let first = tsv.lines().next().unwrap();
        assert!(first.starts_with("0\t\t")); // no residual at n = 0
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Iterates stay on the simplex and the verdict bookkeeping holds.
        #[test]
        fn trace_invariants(g in valid_graph(20), e1 in proptest::bool::ANY) {
            let m = ColumnStochasticMatrix::build(&g).unwrap();
            let init = if e1 { InitialVector::E1 } else { InitialVector::Uniform };
            let trace = power_iterate(&m, &init, 1e-10, 500).unwrap();
            for (_, v) in trace.iterates() {
                let sum: f64 = v.as_slice().iter().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-12);
            }
            match trace.verdict() {
                Verdict::Converged { step } => {
                    prop_assert_eq!(trace.steps(), step);
                    prop_assert!(trace.residual_at(step).unwrap() <= 1e-10);
                }
                Verdict::Oscillating { step, .. } => prop_assert_eq!(trace.steps(), step),
                Verdict::Exhausted { max_iters } => prop_assert_eq!(trace.steps(), max_iters),
            }
        }

        /// Any converged result satisfies the fixed-point certificate.
        #[test]
        fn fixed_point_certificate(g in valid_graph(20)) {
            let m = ColumnStochasticMatrix::build(&g).unwrap();
            match pagerank(&m, &PagerankOptions::default()) {
                Ok(table) => {
                    let image = m.matvec(table.scores().as_slice()).unwrap();
                    let cert = l1_distance(&image, table.scores().as_slice());
                    prop_assert!(cert <= 10.0 * 1e-10);
                }
                Err(PowerError::NotConverged { .. }) => {} // oscillation is a legal outcome
                Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
            }
        }
    }
}
