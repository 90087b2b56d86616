//! Spectral diagnostics: Gerschgorin discs, exact characteristic
//! polynomials, polynomial roots, and two ways to estimate λ₂.
//!
//! Everything here is deterministic. Exact-mode operations (characteristic
//! polynomial, stationary solve, disc radii) run in rational arithmetic;
//! the iterative estimators run in floats.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::{ColumnStochasticMatrix, MatrixError, StochasticVector};
use crate::poly::RatPoly;
use crate::power::{pagerank, IterationTrace, PagerankOptions, PowerError};

/// Largest dimension for which the exact characteristic polynomial is
/// attempted by default; rational coefficients grow combinatorially past
/// desk scale.
pub const EXACT_MODE_CAP: usize = 16;

/// Default gap tolerance for the realistic-matrix verdict: realistic means
/// |λ₂| < 1 − tol with a simple unit eigenvalue.
pub const DEFAULT_REALISTIC_TOL: f64 = 1e-9;

/// The deflation estimate carries roughly this much error, so above the
/// exact cap the verdict cannot resolve gaps smaller than it: the gap
/// tolerance is floored here and a sub-resolution gap reports as not
/// realistic.
pub const DEFLATION_VERDICT_RESOLUTION: f64 = 1e-3;

/// Default residual tolerance handed to [`poly_roots`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const DK_MAX_SWEEPS: usize = 1000;
const DK_DISPLACEMENT_TOL: f64 = 1e-12;
/// The ratio estimator needs this many residuals.
const RATIO_MIN_RESIDUALS: usize = 10;
/// Ratio estimates above this are flagged as near-unity (oscillation or a
/// vanishing gap).
const NEAR_UNITY: f64 = 0.99;
/// The deflation estimator averages norm ratios over this many steps;
/// divisible by the small rotation periods so complex pairs on the unit
/// circle average out exactly.
const DEFLATION_WINDOW: usize = 12;
/// Alignment threshold separating a settled real eigendirection from a
/// rotating (complex-pair) one.
const ALIGNMENT_REAL: f64 = 0.999;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("dimension {n} exceeds the exact-mode cap ({cap}); use the iterative λ2 estimators")]
    DimensionAboveCap { n: usize, cap: usize },
    #[error("characteristic polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error(
        "root finding did not converge: worst residual {worst:e} exceeds {bound:e} \
         (best iterates attached)"
    )]
    RootsNotConverged {
        worst: f64,
        bound: f64,
        best: Vec<Complex64>,
        residuals: Vec<f64>,
    },
    #[error("ratio estimator needs at least {need} residuals, trace has {got}")]
    TooFewResiduals { got: usize, need: usize },
    #[error("deflation estimator did not settle within {max_iters} iterations (last magnitude {last})")]
    EstimatorDidNotSettle { max_iters: usize, last: f64 },
    #[error("eigenvalue 1 is not simple: its fixed-point space has dimension {nullity}")]
    UnitEigenvalueNotSimple { nullity: usize },
    #[error("stationary solve produced mixed signs; eigenvalue 1 looks degenerate")]
    MixedSignStationary,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("λ2 estimation needs a converged stationary vector: {0}")]
    Power(#[from] Box<PowerError>),
}

impl From<PowerError> for SpectralError {
    fn from(e: PowerError) -> Self {
        SpectralError::Power(Box::new(e))
    }
}

/// Which orientation the discs are read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Rows of H itself.
    H,
    /// Rows of Hᵀ, i.e. columns of H. For a link matrix every disc on this
    /// side is exactly (center 0, radius 1).
    HTranspose,
}

/// A closed disc |z − center| ≤ radius containing eigenvalues; kept in
/// rational arithmetic so exactness claims stay checkable.
#[derive(Debug, Clone, PartialEq)]
pub struct GerschgorinDisc {
    center: BigRational,
    radius: BigRational,
}

impl GerschgorinDisc {
    pub fn center(&self) -> &BigRational {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn center_f64(&self) -> f64 {
        self.center.to_f64().unwrap()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64().unwrap()
    }

    /// |center| + radius, the disc's reach from the origin.
    pub fn bound(&self) -> BigRational {
        self.center.abs() + &self.radius
    }
}

/// One disc per row of the chosen orientation. Centers are always 0 here
/// because the matrix stores no diagonal.
pub fn gerschgorin_discs(m: &ColumnStochasticMatrix, side: Side) -> Vec<GerschgorinDisc> {
    let n = m.dim();
    let mut radii = vec![BigRational::zero(); n];
    match side {
        Side::H => {
            for j in 0..n {
                for &(i, ref w) in m.column(j) {
                    radii[i] += w.abs();
                }
            }
        }
        Side::HTranspose => {
            for (j, radius) in radii.iter_mut().enumerate() {
                *radius = m.column(j).iter().map(|(_, w)| w.abs()).sum();
            }
        }
    }
    radii
        .into_iter()
        .map(|radius| GerschgorinDisc {
            center: BigRational::zero(),
            radius,
        })
        .collect()
}

/// min over the two orientations of max(|center| + radius): every eigenvalue
/// magnitude is bounded by it. Exactly 1 for any link matrix.
pub fn spectral_bound(m: &ColumnStochasticMatrix) -> f64 {
    let side_bound = |side: Side| -> BigRational {
        gerschgorin_discs(m, side)
            .iter()
            .map(GerschgorinDisc::bound)
            .max()
            .unwrap_or_else(BigRational::zero)
    };
    side_bound(Side::H)
        .min(side_bound(Side::HTranspose))
        .to_f64()
        .unwrap()
}

/// Monic characteristic polynomial with exact rational coefficients,
/// ascending (c₀, c₁, ..., c_n = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<BigRational>,
}

impl CharPoly {
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Result<Self, SpectralError> {
        if coeffs.len() < 2 || !coeffs.last().unwrap().is_one() {
            return Err(SpectralError::NotMonic);
        }
        Ok(CharPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients ascending: `coefficients()[k]` multiplies λ^k.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> &BigRational {
        &self.coeffs[power]
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.to_ratpoly().eval(x)
    }

    /// Exact quotient by `divisor` (ascending coefficients), or None when a
    /// remainder is left.
    pub fn divide_exact(&self, divisor: &[BigRational]) -> Option<Vec<BigRational>> {
        self.to_ratpoly()
            .div_exact(&RatPoly::new(divisor.to_vec()))
            .map(|q| q.coeffs().to_vec())
    }

    pub fn to_f64_coefficients(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap()).collect()
    }

    fn to_ratpoly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }
}

/// Exact characteristic polynomial via the Faddeev–LeVerrier recurrence,
/// refusing dimensions above [`EXACT_MODE_CAP`].
pub fn char_poly(m: &ColumnStochasticMatrix) -> Result<CharPoly, SpectralError> {
    char_poly_capped(m, EXACT_MODE_CAP)
}

/// Same with a caller-chosen cap (`--exact` forces the attempt).
pub fn char_poly_capped(m: &ColumnStochasticMatrix, cap: usize) -> Result<CharPoly, SpectralError> {
    let n = m.dim();
    if n > cap {
        return Err(SpectralError::DimensionAboveCap {
            n,
            cap: cap.min(EXACT_MODE_CAP),
        });
    }
    let a = m.dense_rational();
    let mut aux = identity(n);
    let mut desc = Vec::with_capacity(n + 1);
    desc.push(BigRational::one());
    for k in 1..=n {
        let mut am = mat_mul(&a, &aux);
        let c = -trace(&am) / BigRational::from_integer(k.into());
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &c;
        }
        desc.push(c);
        aux = am;
    }
    // Cayley–Hamilton: the final auxiliary matrix vanishes
    debug_assert!(aux.iter().flatten().all(Zero::is_zero));
    desc.reverse();
    Ok(CharPoly { coeffs: desc })
}

fn identity(n: usize) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn trace(a: &[Vec<BigRational>]) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// A computed root with its residual |p(root)| against the full polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub residual: f64,
}

/// All roots of the polynomial, multiplicity included, sorted by descending
/// magnitude then ascending argument.
///
/// The polynomial is first split into exact square-free factors (Yun's
/// algorithm on the rational coefficients) so repeated eigenvalues do not
/// degrade the iteration; Durand–Kerner then runs per factor from the seeds
/// (0.4 + 0.9i)^k. Every returned root satisfies
/// |p(root)| ≤ tol·(1 + max|cᵢ|), otherwise the call fails with the best
/// iterates attached.
pub fn poly_roots(p: &CharPoly, tol: f64) -> Result<Vec<Root>, SpectralError> {
    let mut values: Vec<Complex64> = Vec::with_capacity(p.degree());
    for (factor, multiplicity) in p.to_ratpoly().square_free_decomposition() {
        let coeffs: Vec<f64> = factor
            .coeffs()
            .iter()
            .map(|c| c.to_f64().unwrap())
            .collect();
        let roots = durand_kerner(&coeffs);
        for root in roots {
            for _ in 0..multiplicity {
                values.push(root);
            }
        }
    }
    debug_assert_eq!(values.len(), p.degree());

    let pf = p.to_f64_coefficients();
    let max_coeff = pf.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let bound = tol * (1.0 + max_coeff);
    let residuals: Vec<f64> = values.iter().map(|&z| eval_complex(&pf, z).norm()).collect();
    let worst = residuals.iter().fold(0.0f64, |m, &r| m.max(r));
    if !worst.is_finite() || worst > bound {
        return Err(SpectralError::RootsNotConverged {
            worst,
            bound,
            best: values,
            residuals,
        });
    }

    let mut roots: Vec<Root> = values
        .into_iter()
        .zip(residuals)
        .map(|(value, residual)| Root { value, residual })
        .collect();
    roots.sort_by(|a, b| {
        b.value
            .norm()
            .partial_cmp(&a.value.norm())
            .unwrap()
            .then(a.value.arg().partial_cmp(&b.value.arg()).unwrap())
    });
    Ok(roots)
}

/// One synchronous Durand–Kerner pass per sweep (all roots updated from the
/// previous sweep's values, so the result is deterministic).
fn durand_kerner(monic_ascending: &[f64]) -> Vec<Complex64> {
    let degree = monic_ascending.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let coeffs: Vec<Complex64> = monic_ascending
        .iter()
        .map(|&c| Complex64::new(c, 0.0))
        .collect();
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (1..=degree as u32).map(|k| seed.powu(k)).collect();
    for _ in 0..DK_MAX_SWEEPS {
        let mut next = z.clone();
        let mut max_displacement = 0.0f64;
        for k in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates; nudge and let the next sweep separate them
                next[k] = z[k] + Complex64::new(1e-12, 1e-12);
                max_displacement = f64::MAX;
                continue;
            }
            let delta = eval_complex_c(&coeffs, z[k]) / denom;
            next[k] = z[k] - delta;
            max_displacement = max_displacement.max(delta.norm());
        }
        z = next;
        if max_displacement <= DK_DISPLACEMENT_TOL {
            break;
        }
    }
    z
}

fn eval_complex(coeffs_ascending: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs_ascending.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_complex_c(coeffs_ascending: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs_ascending.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Quality flag on a residual-ratio estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioFlag {
    Clean,
    /// Ratio ≈ 1: the run oscillates or the spectral gap is vanishing.
    NearUnity,
    /// Residuals reached exactly zero; the decay rate is below resolution.
    BelowResolution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEstimate {
    pub magnitude: f64,
    pub flag: RatioFlag,
}

/// |λ₂| from the geometric-mean ratio of successive residuals over the
/// final quarter of a run.
pub fn estimate_lambda2_ratio(trace: &IterationTrace) -> Result<RatioEstimate, SpectralError> {
    let residuals = trace.residuals();
    if residuals.last() == Some(&0.0) {
        return Ok(RatioEstimate {
            magnitude: 0.0,
            flag: RatioFlag::BelowResolution,
        });
    }
    if residuals.len() < RATIO_MIN_RESIDUALS {
        return Err(SpectralError::TooFewResiduals {
            got: residuals.len(),
            need: RATIO_MIN_RESIDUALS,
        });
    }
    let len = residuals.len();
    let start = 3 * len / 4;
    if residuals[start..].contains(&0.0) {
        return Ok(RatioEstimate {
            magnitude: 0.0,
            flag: RatioFlag::BelowResolution,
        });
    }
    let span = (len - 1 - start) as f64;
    let magnitude = (residuals[len - 1] / residuals[start]).powf(1.0 / span);
    let flag = if magnitude > NEAR_UNITY {
        RatioFlag::NearUnity
    } else {
        RatioFlag::Clean
    };
    Ok(RatioEstimate { magnitude, flag })
}

/// A λ₂ estimate from the deflated operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda2Estimate {
    Real(f64),
    /// Successive directions neither align nor anti-align: a complex pair
    /// is suspected and only the magnitude is reported.
    ComplexPairSuspected { magnitude: f64 },
}

impl Lambda2Estimate {
    pub fn magnitude(&self) -> f64 {
        match *self {
            Lambda2Estimate::Real(x) => x.abs(),
            Lambda2Estimate::ComplexPairSuspected { magnitude } => magnitude,
        }
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match *self {
            Lambda2Estimate::Real(x) => Some(Complex64::new(x, 0.0)),
            Lambda2Estimate::ComplexPairSuspected { .. } => None,
        }
    }
}

/// Applies the deflated operator B·v = H·v − I·(Σ v). The all-ones vector is
/// the left eigenvector for λ₁ = 1 and Σ I = 1, so B annihilates the λ₁
/// eigenspace exactly and leaves every other eigenpair untouched.
pub fn deflate_apply(
    m: &ColumnStochasticMatrix,
    stationary: &[f64],
    v: &[f64],
) -> Result<Vec<f64>, MatrixError> {
    let mut out = m.matvec(v)?;
    let mass: f64 = v.iter().sum();
    for (o, i) in out.iter_mut().zip(stationary) {
        *o -= i * mass;
    }
    Ok(out)
}

/// λ₂ by power iteration on the deflated operator: the magnitude comes from
/// norm ratios averaged over a [`DEFLATION_WINDOW`]-step window, the sign
/// from the alignment of successive directions. `tol` is the settle
/// tolerance on the magnitude.
pub fn estimate_lambda2_deflation(
    m: &ColumnStochasticMatrix,
    stationary: &StochasticVector,
    tol: f64,
    max_iters: usize,
) -> Result<Lambda2Estimate, SpectralError> {
    let n = m.dim();
    if stationary.len() != n {
        return Err(MatrixError::DimensionMismatch {
            n,
            len: stationary.len(),
        }
        .into());
    }
    // deterministic start with mass on every coordinate
    let mut v: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let norm0 = l2_norm(&v);
    v.iter_mut().for_each(|x| *x /= norm0);

    let mut ratios: Vec<f64> = Vec::new();
    let mut alignments: Vec<f64> = Vec::new();
    let mut previous: Option<f64> = None;
    let mut stable = 0usize;

    for _ in 0..max_iters {
        let w = deflate_apply(m, stationary.as_slice(), &v)?;
        let norm = l2_norm(&w);
        if norm < 1e-300 {
            // B annihilated the start vector: nothing beyond λ₁ resolves
            return Ok(Lambda2Estimate::Real(0.0));
        }
        let alignment = w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / norm;
        ratios.push(norm);
        alignments.push(alignment);
        v = w;
        v.iter_mut().for_each(|x| *x /= norm);

        if ratios.len() < DEFLATION_WINDOW {
            continue;
        }
        let window = &ratios[ratios.len() - DEFLATION_WINDOW..];
        let magnitude =
            (window.iter().map(|r| r.ln()).sum::<f64>() / DEFLATION_WINDOW as f64).exp();
        if let Some(prev) = previous {
            if (magnitude - prev).abs() <= tol * magnitude.max(f64::MIN_POSITIVE) {
                stable += 1;
            } else {
                stable = 0;
            }
        }
        previous = Some(magnitude);
        if stable >= 5 {
            let aligns = &alignments[alignments.len() - DEFLATION_WINDOW..];
            let estimate = if aligns.iter().all(|&a| a >= ALIGNMENT_REAL) {
                Lambda2Estimate::Real(magnitude)
            } else if aligns.iter().all(|&a| a <= -ALIGNMENT_REAL) {
                Lambda2Estimate::Real(-magnitude)
            } else {
                Lambda2Estimate::ComplexPairSuspected { magnitude }
            };
            return Ok(estimate);
        }
    }
    Err(SpectralError::EstimatorDidNotSettle {
        max_iters,
        last: previous.unwrap_or(0.0),
    })
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// How a λ₂ value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda2Method {
    Roots,
    Ratio,
    Deflation,
}

impl Lambda2Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Lambda2Method::Roots => "roots",
            Lambda2Method::Ratio => "ratio",
            Lambda2Method::Deflation => "deflation",
        }
    }
}

/// Verdict on the power method's applicability: eigenvalue 1 simple and
/// strictly dominant.
#[derive(Debug, Clone, PartialEq)]
pub struct RealisticVerdict {
    pub realistic: bool,
    /// 1 − |λ₂|.
    pub gap: f64,
    pub lambda2_magnitude: f64,
    /// Known value when the roots method ran, or a real deflation estimate.
    pub lambda2: Option<Complex64>,
    pub method: Lambda2Method,
    /// Exact-mode only: whether λ = 1 is a simple root.
    pub unit_root_simple: Option<bool>,
}

/// Decides whether the matrix has a simple, strictly dominant unit
/// eigenvalue. Up to [`EXACT_MODE_CAP`] the spectrum is computed exactly
/// (roots method, with the multiplicity of λ = 1 checked by exact division);
/// above it the deflation estimate is used.
pub fn is_realistic(m: &ColumnStochasticMatrix, tol: f64) -> Result<RealisticVerdict, SpectralError> {
    if m.dim() <= EXACT_MODE_CAP {
        let p = char_poly(m)?;
        let roots = poly_roots(&p, DEFAULT_ROOT_TOL)?;
        let unit_multiplicity = unit_root_multiplicity(&p);
        let lambda2 = if unit_multiplicity == 0 {
            roots.first().map(|r| r.value)
        } else {
            // drop the single root representing λ₁ = 1, keep the next largest
            let unit_idx = roots
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    let da = (a.value - Complex64::new(1.0, 0.0)).norm();
                    let db = (b.value - Complex64::new(1.0, 0.0)).norm();
                    da.partial_cmp(&db).unwrap()
                })
                .map(|(i, _)| i)
                .unwrap();
            roots
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != unit_idx)
                .map(|(_, r)| r.value)
                .next()
        };
        let lambda2_magnitude = lambda2.map_or(0.0, |z| z.norm());
        Ok(RealisticVerdict {
            realistic: unit_multiplicity == 1 && lambda2_magnitude < 1.0 - tol,
            gap: 1.0 - lambda2_magnitude,
            lambda2_magnitude,
            lambda2,
            method: Lambda2Method::Roots,
            unit_root_simple: Some(unit_multiplicity == 1),
        })
    } else {
        let table = pagerank(m, &PagerankOptions::default())?;
        let estimate = estimate_lambda2_deflation(m, table.scores(), 1e-6, 500)?;
        let lambda2_magnitude = estimate.magnitude();
        let effective_tol = tol.max(DEFLATION_VERDICT_RESOLUTION);
        Ok(RealisticVerdict {
            realistic: lambda2_magnitude < 1.0 - effective_tol,
            gap: 1.0 - lambda2_magnitude,
            lambda2_magnitude,
            lambda2: estimate.as_complex(),
            method: Lambda2Method::Deflation,
            unit_root_simple: None,
        })
    }
}

/// Exact multiplicity of the root λ = 1, by repeated exact division.
fn unit_root_multiplicity(p: &CharPoly) -> usize {
    let linear = RatPoly::new(vec![-BigRational::one(), BigRational::one()]);
    let mut current = RatPoly::new(p.coefficients().to_vec());
    let mut multiplicity = 0;
    while let Some(quotient) = current.div_exact(&linear) {
        multiplicity += 1;
        current = quotient;
        if current.degree().is_none() {
            break;
        }
    }
    multiplicity
}

/// The stochastic eigenvector for λ = 1 in exact rational arithmetic:
/// a null-space solve of (H − E) by Gaussian elimination, normalized to
/// entry sum 1. Errors when the fixed-point space is not one-dimensional.
#[allow(clippy::needless_range_loop)] // elimination reads as row/column indices
pub fn exact_stationary(m: &ColumnStochasticMatrix) -> Result<Vec<BigRational>, SpectralError> {
    let n = m.dim();
    let mut a = m.dense_rational();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= BigRational::one();
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..n {
        let Some(pivot_row) = (next_row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next_row, pivot_row);
        for r in next_row + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[next_row][col];
            for c in col..n {
                let delta = &a[next_row][c] * &factor;
                a[r][c] -= delta;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }

    let nullity = n - pivots.len();
    if nullity != 1 {
        return Err(SpectralError::UnitEigenvalueNotSimple { nullity });
    }
    let free_col = (0..n)
        .find(|c| !pivots.iter().any(|&(_, pc)| pc == *c))
        .expect("nullity 1 leaves one free column");

    let mut x = vec![BigRational::zero(); n];
    x[free_col] = BigRational::one();
    for &(pr, pc) in pivots.iter().rev() {
        let mut acc = BigRational::zero();
        for c in pc + 1..n {
            if !a[pr][c].is_zero() {
                acc += &a[pr][c] * &x[c];
            }
        }
        x[pc] = -acc / &a[pr][pc];
    }

    let sum: BigRational = x.iter().cloned().sum();
    if sum.is_zero() {
        return Err(SpectralError::MixedSignStationary);
    }
    let v: Vec<BigRational> = x.iter().map(|e| e / &sum).collect();
    if v.iter().any(Signed::is_negative) {
        return Err(SpectralError::MixedSignStationary);
    }
    Ok(v)
}

/// Everything the spectrum command reports.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Hᵀ-side discs (the ones that pin |λ| ≤ 1).
    pub discs: Vec<GerschgorinDisc>,
    /// min over both orientations of the worst disc reach.
    pub bound: f64,
    /// Present iff the dimension allowed exact mode (or it was forced).
    pub char_poly: Option<CharPoly>,
    pub roots: Option<Vec<Root>>,
    pub realistic: RealisticVerdict,
}

/// Assembles the full spectrum report. `force_exact` lifts the dimension cap
/// on the characteristic polynomial.
pub fn spectrum_report(
    m: &ColumnStochasticMatrix,
    force_exact: bool,
) -> Result<SpectrumReport, SpectralError> {
    let discs = gerschgorin_discs(m, Side::HTranspose);
    let bound = spectral_bound(m);
    let cap = if force_exact { usize::MAX } else { EXACT_MODE_CAP };
    let (char_poly, roots) = match char_poly_capped(m, cap) {
        Ok(p) => {
            let roots = poly_roots(&p, DEFAULT_ROOT_TOL)?;
            (Some(p), Some(roots))
        }
        Err(SpectralError::DimensionAboveCap { .. }) => (None, None),
        Err(other) => return Err(other),
    };
    let realistic = is_realistic(m, DEFAULT_REALISTIC_TOL)?;
    Ok(SpectrumReport {
        discs,
        bound,
        char_poly,
        roots,
        realistic,
    })
}
