//! Stochastic normalization and tie-aware page ranking.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::StochasticVector;

/// Default tolerance for grouping float scores into ties.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankingError {
    #[error("cannot normalize: entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("scores/labels length mismatch: {scores} scores for {labels} labels")]
    LengthMismatch { scores: usize, labels: usize },
}

/// Pages sharing one score, labels sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankGroup {
    pub score: f64,
    pub labels: Vec<String>,
}

/// A stochastic score vector plus the grouped descending page order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    labels: Vec<String>,
    scores: StochasticVector,
    groups: Vec<RankGroup>,
}

impl RankTable {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn scores(&self) -> &StochasticVector {
        &self.scores
    }

    pub fn groups(&self) -> &[RankGroup] {
        &self.groups
    }

    pub fn group_labels(&self) -> Vec<Vec<String>> {
        self.groups.iter().map(|g| g.labels.clone()).collect()
    }

    /// Ranking on one line, ties joined by `=`: `8 > 6 > 7 > 5 > 2 = 4 > 1 > 3`.
    pub fn order_string(&self) -> String {
        self.groups
            .iter()
            .map(|g| g.labels.join(" = "))
            .collect::<Vec<_>>()
            .join(" > ")
    }

    /// TSV rows `rank label score` (tab-separated, 4 decimals); tied pages
    /// share a rank.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (rank, group) in self.groups.iter().enumerate() {
            for label in &group.labels {
                let idx = self.labels.iter().position(|l| l == label).unwrap();
                out.push_str(&format!("{}\t{}\t{:.4}\n", rank + 1, label, self.scores[idx]));
            }
        }
        out
    }
}

/// Scales a nonnegative vector to entry sum 1.
pub fn normalize_stochastic(v: &[f64]) -> Result<StochasticVector, RankingError> {
    for (index, &value) in v.iter().enumerate() {
        if value < 0.0 || value.is_nan() {
            return Err(RankingError::NegativeEntry {
                index,
                value: value.to_string(),
            });
        }
    }
    let sum: f64 = v.iter().sum();
    if sum <= 0.0 {
        return Err(RankingError::ZeroVector);
    }
    let scaled: Vec<f64> = v.iter().map(|x| x / sum).collect();
    Ok(StochasticVector::new(scaled).expect("scaled vector is stochastic"))
}

/// Exact-arithmetic counterpart of [`normalize_stochastic`].
pub fn normalize_stochastic_rational(
    v: &[BigRational],
) -> Result<Vec<BigRational>, RankingError> {
    for (index, value) in v.iter().enumerate() {
        if value.is_negative() {
            return Err(RankingError::NegativeEntry {
                index,
                value: value.to_string(),
            });
        }
    }
    let sum: BigRational = v.iter().cloned().sum();
    if sum.is_zero() {
        return Err(RankingError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &sum).collect())
}

/// Groups pages by score, descending. Float scores are chained: pages join a
/// group while consecutive sorted scores differ by at most `tie_tol`, so the
/// grouping can be non-transitive for pathological spacings (use
/// [`rank_pages_exact`] when exact scores are available).
pub fn rank_pages(
    labels: &[String],
    scores: &StochasticVector,
    tie_tol: f64,
) -> Result<RankTable, RankingError> {
    if labels.len() != scores.len() {
        return Err(RankingError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("scores are finite")
            .then_with(|| labels[a].cmp(&labels[b]))
    });

    let mut groups: Vec<RankGroup> = Vec::new();
    let mut prev_score = f64::INFINITY;
    for idx in order {
        let score = scores[idx];
        if !groups.is_empty() && (prev_score - score).abs() <= tie_tol {
            groups.last_mut().unwrap().labels.push(labels[idx].clone());
        } else {
            groups.push(RankGroup {
                score,
                labels: vec![labels[idx].clone()],
            });
        }
        prev_score = score;
    }
    for group in &mut groups {
        group.labels.sort();
    }
    Ok(RankTable {
        labels: labels.to_vec(),
        scores: scores.clone(),
        groups,
    })
}

/// Exact-tie ranking from rational scores: pages group iff their scores are
/// equal as rationals. Scores must already be stochastic.
pub fn rank_pages_exact(
    labels: &[String],
    scores: &[BigRational],
) -> Result<RankTable, RankingError> {
    if labels.len() != scores.len() {
        return Err(RankingError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then_with(|| labels[a].cmp(&labels[b])));

    let mut groups: Vec<RankGroup> = Vec::new();
    let mut prev: Option<&BigRational> = None;
    for idx in order {
        let score = &scores[idx];
        if prev == Some(score) {
            groups.last_mut().unwrap().labels.push(labels[idx].clone());
        } else {
            groups.push(RankGroup {
                score: score.to_f64().expect("score fits in f64"),
                labels: vec![labels[idx].clone()],
            });
        }
        prev = Some(score);
    }
    for group in &mut groups {
        group.labels.sort();
    }
    let float_scores: Vec<f64> = scores
        .iter()
        .map(|s| s.to_f64().expect("score fits in f64"))
        .collect();
    Ok(RankTable {
        labels: labels.to_vec(),
        scores: StochasticVector::new(float_scores).expect("rational scores are stochastic"),
        groups,
    })
}
