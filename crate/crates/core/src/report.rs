//! Output documents for the command-line front end.
//!
//! Every command renders through here so output stays byte-deterministic:
//! text and TSV round display quantities to 4 decimals and use
//! `{:.6e}` for residual-scale diagnostics; JSON carries full precision plus
//! exact rationals where available, under a versioned `schema` field.

use num_rational::BigRational;
use serde::Serialize;

use crate::graph::ValidationReport;
use crate::power::{InitComparison, ProfileRow, Verdict};
use crate::ranking::{RankGroup, RankTable};
use crate::spectral::{Lambda2Method, RatioEstimate, RatioFlag, SpectrumReport};

fn snap(x: f64) -> f64 {
    // canonicalize -0.0 and iteration dust so text output never prints -0.0000
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

fn fmt4(x: f64) -> String {
    format!("{:.4}", snap(x))
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct ValidateDocument {
    pub schema: &'static str,
    pub input: String,
    pub pages: usize,
    pub edges: usize,
    pub dangling: Vec<String>,
    pub unreachable: Vec<String>,
    pub matrix_ready: bool,
}

impl ValidateDocument {
    pub fn new(input: &str, report: &ValidationReport) -> Self {
        ValidateDocument {
            schema: "linkrank/validate/v1",
            input: input.to_string(),
            pages: report.page_count,
            edges: report.edge_count,
            dangling: report.dangling.clone(),
            unreachable: report.unreachable.clone(),
            matrix_ready: report.matrix_ready(),
        }
    }

    pub fn to_text(&self) -> String {
        let list = |items: &[String]| {
            if items.is_empty() {
                "none".to_string()
            } else {
                items.join(", ")
            }
        };
        format!(
            "pages: {}\nedges: {}\ndangling (no out-links): {}\nunreachable (no in-links): {}\nmatrix-ready: {}\n",
            self.pages,
            self.edges,
            list(&self.dangling),
            list(&self.unreachable),
            if self.matrix_ready { "yes" } else { "no" },
        )
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "pages\t{}\nedges\t{}\ndangling\t{}\nunreachable\t{}\nmatrix_ready\t{}\n",
            self.pages,
            self.edges,
            self.dangling.join(","),
            self.unreachable.join(","),
            self.matrix_ready,
        )
    }
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct RankRun {
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct RankDocument {
    pub schema: &'static str,
    pub input: String,
    pub run: RankRun,
    pub labels: Vec<String>,
    pub scores: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores_exact: Option<Vec<String>>,
    pub groups: Vec<RankGroup>,
}

impl RankDocument {
    pub fn from_power(input: &str, table: &RankTable, steps: usize) -> Self {
        RankDocument {
            schema: "linkrank/rank/v1",
            input: input.to_string(),
            run: RankRun {
                method: "power",
                verdict: Some(Verdict::Converged { step: steps }),
                steps: Some(steps),
            },
            labels: table.labels().to_vec(),
            scores: table.scores().as_slice().to_vec(),
            scores_exact: None,
            groups: table.groups().to_vec(),
        }
    }

    pub fn from_exact(input: &str, table: &RankTable, exact: &[BigRational]) -> Self {
        RankDocument {
            schema: "linkrank/rank/v1",
            input: input.to_string(),
            run: RankRun {
                method: "exact",
                verdict: None,
                steps: None,
            },
            labels: table.labels().to_vec(),
            scores: table.scores().as_slice().to_vec(),
            scores_exact: Some(exact.iter().map(|r| r.to_string()).collect()),
            groups: table.groups().to_vec(),
        }
    }

    pub fn to_text(&self, table: &RankTable) -> String {
        let mut out = format!("ranking: {}\n\nrank  page  score\n", table.order_string());
        for (rank, group) in table.groups().iter().enumerate() {
            for label in &group.labels {
                let idx = table.labels().iter().position(|l| l == label).unwrap();
                out.push_str(&format!(
                    "{:>4}  {:>4}  {}\n",
                    rank + 1,
                    label,
                    fmt4(table.scores()[idx])
                ));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct DiscDto {
    pub center: f64,
    pub radius: f64,
    pub center_exact: String,
    pub radius_exact: String,
}

#[derive(Debug, Serialize)]
pub struct CharPolyDto {
    pub degree: usize,
    /// Exact coefficients as `p/q` strings, descending from λ^degree.
    pub coefficients: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RootDto {
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct Lambda2Dto {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
    pub magnitude: f64,
    pub method: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RealisticDto {
    pub realistic: bool,
    pub gap: f64,
    pub unit_root_simple: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct SpectrumDocument {
    pub schema: &'static str,
    pub input: String,
    pub dim: usize,
    pub discs_transpose: Vec<DiscDto>,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<CharPolyDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootDto>>,
    pub lambda2: Lambda2Dto,
    pub realistic: RealisticDto,
}

impl SpectrumDocument {
    pub fn new(input: &str, dim: usize, report: &SpectrumReport) -> Self {
        let discs_transpose = report
            .discs
            .iter()
            .map(|d| DiscDto {
                center: d.center_f64(),
                radius: d.radius_f64(),
                center_exact: d.center().to_string(),
                radius_exact: d.radius().to_string(),
            })
            .collect();
        let char_poly = report.char_poly.as_ref().map(|p| CharPolyDto {
            degree: p.degree(),
            coefficients: p
                .coefficients()
                .iter()
                .rev()
                .map(|c| c.to_string())
                .collect(),
        });
        let roots = report.roots.as_ref().map(|roots| {
            roots
                .iter()
                .map(|r| RootDto {
                    re: r.value.re,
                    im: r.value.im,
                    magnitude: r.value.norm(),
                    residual: r.residual,
                })
                .collect()
        });
        let lambda2 = Lambda2Dto {
            re: report.realistic.lambda2.map(|z| z.re),
            im: report.realistic.lambda2.map(|z| z.im),
            magnitude: report.realistic.lambda2_magnitude,
            method: report.realistic.method.as_str(),
        };
        let realistic = RealisticDto {
            realistic: report.realistic.realistic,
            gap: report.realistic.gap,
            unit_root_simple: report.realistic.unit_root_simple,
        };
        SpectrumDocument {
            schema: "linkrank/spectrum/v1",
            input: input.to_string(),
            dim,
            discs_transpose,
            bound: report.bound,
            char_poly,
            roots,
            lambda2,
            realistic,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dimension: {}\n", self.dim);

        let uniform = self
            .discs_transpose
            .windows(2)
            .all(|w| w[0].center_exact == w[1].center_exact && w[0].radius_exact == w[1].radius_exact);
        if uniform && !self.discs_transpose.is_empty() {
            let d = &self.discs_transpose[0];
            out.push_str(&format!(
                "gerschgorin discs (transpose rows): all (center {}, radius {})\n",
                d.center_exact, d.radius_exact
            ));
        } else {
            out.push_str("gerschgorin discs (transpose rows):\n");
            for d in &self.discs_transpose {
                out.push_str(&format!("  (center {}, radius {})\n", d.center_exact, d.radius_exact));
            }
        }
        out.push_str(&format!("spectral bound: {}\n", fmt4(self.bound)));

        if let Some(p) = &self.char_poly {
            out.push_str(&format!(
                "characteristic polynomial (degree {}, coefficients descending):\n  [{}]\n",
                p.degree,
                p.coefficients.join(", ")
            ));
        } else {
            out.push_str(
                "characteristic polynomial: skipped (dimension above exact-mode cap; see lambda2 estimate)\n",
            );
        }

        if let Some(roots) = &self.roots {
            out.push_str("roots (descending magnitude):\n");
            for r in roots {
                let im = format!("{:+.4}", snap(r.im));
                out.push_str(&format!(
                    "  {} {im}i   |root| = {}   residual {:.2e}\n",
                    fmt4(r.re),
                    fmt4(r.magnitude),
                    r.residual,
                ));
            }
        }

        match (self.lambda2.re, self.lambda2.im) {
            (Some(re), Some(im)) => {
                let im = format!("{:+.4}", snap(im));
                out.push_str(&format!(
                    "lambda2: {} {im}i  (method: {})\n",
                    fmt4(re),
                    self.lambda2.method
                ))
            }
            _ => out.push_str(&format!(
                "lambda2: magnitude {} (complex pair suspected, method: {})\n",
                fmt4(self.lambda2.magnitude),
                self.lambda2.method
            )),
        }
        let simple = match self.realistic.unit_root_simple {
            Some(true) => "yes",
            Some(false) => "no",
            None => "not checked",
        };
        out.push_str(&format!(
            "realistic: {}   gap: {}   unit root simple: {}\n",
            self.realistic.realistic,
            fmt4(self.realistic.gap),
            simple
        ));
        out
    }

    /// Root rows `re im magnitude residual` (tab-separated); empty when
    /// exact mode was skipped.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if let Some(roots) = &self.roots {
            for r in roots {
                out.push_str(&format!(
                    "{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}\n",
                    r.re, r.im, r.magnitude, r.residual
                ));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// diagnose
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct RatioDto {
    pub magnitude: f64,
    pub flag: &'static str,
}

impl RatioDto {
    pub fn new(est: &RatioEstimate) -> Self {
        RatioDto {
            magnitude: est.magnitude,
            flag: match est.flag {
                RatioFlag::Clean => "clean",
                RatioFlag::NearUnity => "near-unity",
                RatioFlag::BelowResolution => "below-resolution",
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DeflationDto {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    pub magnitude: f64,
    pub complex_pair_suspected: bool,
}

#[derive(Debug, Serialize)]
pub struct ProfileRowDto {
    pub n: usize,
    pub error: f64,
    pub gap_power: f64,
    pub ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct DiagnoseDocument {
    pub schema: &'static str,
    pub input: String,
    pub init: String,
    pub tol: f64,
    pub max_iters: usize,
    pub verdict: Verdict,
    pub steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2_ratio: Option<RatioDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2_ratio_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2_deflation: Option<DeflationDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2_deflation_error: Option<String>,
    /// |λ₂| rounded to two decimals, the base of the profile power column
    /// (matching the display convention of the worked examples).
    pub profile_base: f64,
    pub profile: Vec<ProfileRowDto>,
    pub compare_inits: Vec<InitComparison>,
}

impl DiagnoseDocument {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        input: &str,
        init: &str,
        tol: f64,
        max_iters: usize,
        verdict: Verdict,
        steps: usize,
        ratio: Result<&RatioEstimate, String>,
        deflation: Result<(&crate::spectral::Lambda2Estimate, Lambda2Method), String>,
        profile_base: f64,
        profile: &[ProfileRow],
        compare: Vec<InitComparison>,
    ) -> Self {
        let (lambda2_ratio, lambda2_ratio_error) = match ratio {
            Ok(est) => (Some(RatioDto::new(est)), None),
            Err(e) => (None, Some(e)),
        };
        let (lambda2_deflation, lambda2_deflation_error) = match deflation {
            Ok((est, _)) => (
                Some(DeflationDto {
                    value: est.as_complex().map(|z| z.re),
                    magnitude: est.magnitude(),
                    complex_pair_suspected: est.as_complex().is_none(),
                }),
                None,
            ),
            Err(e) => (None, Some(e)),
        };
        DiagnoseDocument {
            schema: "linkrank/diagnose/v1",
            input: input.to_string(),
            init: init.to_string(),
            tol,
            max_iters,
            verdict,
            steps,
            lambda2_ratio,
            lambda2_ratio_error,
            lambda2_deflation,
            lambda2_deflation_error,
            profile_base,
            profile: profile
                .iter()
                .map(|r| ProfileRowDto {
                    n: r.step,
                    error: r.error,
                    gap_power: r.gap_power,
                    ratio: r.ratio,
                })
                .collect(),
            compare_inits: compare,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "input: {}\ninit: {}   tol: {:e}   max iterations: {}\nrun: {}\n\nlambda2 estimates:\n",
            self.input, self.init, self.tol, self.max_iters, self.verdict,
        );
        match (&self.lambda2_ratio, &self.lambda2_ratio_error) {
            (Some(r), _) => out.push_str(&format!(
                "  ratio      {} ({})\n",
                fmt4(r.magnitude),
                r.flag
            )),
            (None, Some(e)) => out.push_str(&format!("  ratio      unavailable: {e}\n")),
            _ => {}
        }
        match (&self.lambda2_deflation, &self.lambda2_deflation_error) {
            (Some(d), _) => match d.value {
                Some(v) => out.push_str(&format!("  deflation  {} (real)\n", fmt4(v))),
                None => out.push_str(&format!(
                    "  deflation  magnitude {} (complex pair suspected)\n",
                    fmt4(d.magnitude)
                )),
            },
            (None, Some(e)) => out.push_str(&format!("  deflation  unavailable: {e}\n")),
            _ => {}
        }

        out.push_str(&format!(
            "\nconvergence profile (power column base {:.2}):\n{:>6}  {:>9}  {:>9}  {:>9}\n",
            self.profile_base,
            "n",
            "error",
            "base^n",
            "ratio"
        ));
        for row in &self.profile {
            out.push_str(&format!(
                "{:>6}  {:>9}  {:>9}  {:>9}\n",
                row.n,
                fmt4(row.error),
                fmt4(row.gap_power),
                fmt4(row.ratio)
            ));
        }

        out.push_str("\ninitial-vector comparison:\n");
        for row in &self.compare_inits {
            let steps = row
                .steps_to_converge
                .map(|s| format!(" ({s} steps)"))
                .unwrap_or_default();
            out.push_str(&format!("  {:<8} {}{}\n", row.init, row.verdict, steps));
        }
        out
    }

    /// Profile rows `n error base_power ratio` (tab-separated), machine
    /// precision.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.profile {
            out.push_str(&format!(
                "{}\t{:.6e}\t{:.6e}\t{:.6e}\n",
                row.n, row.error, row.gap_power, row.ratio
            ));
        }
        out
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}
