//! Sparse column-stochastic link matrices.
//!
//! Weights are exact rationals (`1/out-degree`, so every column sums to
//! exactly 1); a float view is derived from them for iteration. Storage is
//! column-major because both construction and the matrix-vector products
//! walk columns, and accumulation runs in a fixed ascending-column order so
//! results are bit-reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::LinkGraph;

/// Tolerance on the entry sum of a float stochastic vector.
pub const STOCHASTIC_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("page {label:?} has no out-links; its column cannot be made stochastic")]
    DanglingPage { label: String },
    #[error("dimension mismatch: matrix is {n}x{n} but vector has length {len}")]
    DimensionMismatch { n: usize, len: usize },
    #[error("column {col}: weights sum to {sum}, not 1")]
    ColumnSumNotOne { col: usize, sum: String },
    #[error("column {col}: diagonal entry is forbidden")]
    DiagonalEntry { col: usize },
    #[error("entry ({row},{col}): weight {weight} outside (0, 1]")]
    WeightOutOfRange { row: usize, col: usize, weight: String },
    #[error("entry ({row},{col}): row index out of bounds for dimension {n}")]
    RowOutOfBounds { row: usize, col: usize, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VectorError {
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("entries sum to {sum}, not 1 (tolerance {tol:e})")]
    SumNotOne { sum: f64, tol: f64 },
}

/// A nonnegative float vector with entry sum 1 (within [`STOCHASTIC_SUM_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticVector(Vec<f64>);

impl StochasticVector {
    pub fn new(entries: Vec<f64>) -> Result<Self, VectorError> {
        for (index, &value) in entries.iter().enumerate() {
            if value < 0.0 || value.is_nan() {
                return Err(VectorError::NegativeEntry { index, value });
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > STOCHASTIC_SUM_TOL {
            return Err(VectorError::SumNotOne {
                sum,
                tol: STOCHASTIC_SUM_TOL,
            });
        }
        Ok(StochasticVector(entries))
    }

    /// The standard basis vector (1, 0, ..., 0).
    pub fn e1(n: usize) -> Self {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        StochasticVector(v)
    }

    /// The uniform vector (1/n, ..., 1/n).
    pub fn uniform(n: usize) -> Self {
        StochasticVector(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn l1_distance(&self, other: &Self) -> f64 {
        l1_distance(&self.0, &other.0)
    }
}

impl std::ops::Index<usize> for StochasticVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Sparse column-stochastic matrix: column `j` holds weight
/// `1/out-degree(j)` at every row `j` links to, and nothing on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnStochasticMatrix {
    labels: Vec<String>,
    /// Per column: (row, weight) sorted by row. Empty columns are legal for
    /// hand-built matrices (the all-zero matrix) but never produced by
    /// [`build`](Self::build).
    columns: Vec<Vec<(usize, BigRational)>>,
    float_columns: Vec<Vec<(usize, f64)>>,
}

impl ColumnStochasticMatrix {
    /// Builds the matrix from a validated graph. Errors on the first
    /// dangling page (in index order).
    pub fn build(graph: &LinkGraph) -> Result<Self, MatrixError> {
        let n = graph.page_count();
        let links = graph.out_links();
        let mut columns = vec![Vec::new(); n];
        for (j, targets) in links.iter().enumerate() {
            if targets.is_empty() {
                return Err(MatrixError::DanglingPage {
                    label: graph.label(j).to_string(),
                });
            }
            let weight = BigRational::new(BigInt::one(), BigInt::from(targets.len()));
            columns[j] = targets.iter().map(|&i| (i, weight.clone())).collect();
        }
        Self::from_labeled_columns(graph.labels(), columns)
    }

    /// Builds from raw rational columns, checking every invariant: weights
    /// in (0, 1], no diagonal entries, and each nonempty column summing to
    /// exactly 1.
    pub fn from_labeled_columns(
        labels: Vec<String>,
        columns: Vec<Vec<(usize, BigRational)>>,
    ) -> Result<Self, MatrixError> {
        let n = labels.len();
        assert_eq!(columns.len(), n, "one column per label");
        let mut sorted = columns;
        for (col, entries) in sorted.iter_mut().enumerate() {
            entries.sort_by_key(|&(row, _)| row);
            let mut sum = BigRational::zero();
            for &(row, ref weight) in entries.iter() {
                if row >= n {
                    return Err(MatrixError::RowOutOfBounds { row, col, n });
                }
                if row == col {
                    return Err(MatrixError::DiagonalEntry { col });
                }
                if !weight.is_positive() || *weight > BigRational::one() {
                    return Err(MatrixError::WeightOutOfRange {
                        row,
                        col,
                        weight: weight.to_string(),
                    });
                }
                sum += weight;
            }
            if !entries.is_empty() && !sum.is_one() {
                return Err(MatrixError::ColumnSumNotOne {
                    col,
                    sum: sum.to_string(),
                });
            }
        }
        let float_columns = sorted
            .iter()
            .map(|entries| {
                entries
                    .iter()
                    .map(|&(row, ref w)| (row, w.to_f64().expect("weight fits in f64")))
                    .collect()
            })
            .collect();
        Ok(ColumnStochasticMatrix {
            labels,
            columns: sorted,
            float_columns,
        })
    }

    /// Like [`from_labeled_columns`](Self::from_labeled_columns) with labels
    /// "1", "2", ... assigned positionally.
    pub fn from_columns(columns: Vec<Vec<(usize, BigRational)>>) -> Result<Self, MatrixError> {
        let labels = (1..=columns.len()).map(|i| i.to_string()).collect();
        Self::from_labeled_columns(labels, columns)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn column(&self, j: usize) -> &[(usize, BigRational)] {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&BigRational> {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .ok()
            .map(|k| &self.columns[col][k].1)
    }

    fn check_dim(&self, len: usize) -> Result<(), MatrixError> {
        if len != self.dim() {
            return Err(MatrixError::DimensionMismatch { n: self.dim(), len });
        }
        Ok(())
    }

    /// H·v in floats. Accumulates column by column in ascending order.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>, MatrixError> {
        self.check_dim(v.len())?;
        let mut out = vec![0.0; v.len()];
        for (j, col) in self.float_columns.iter().enumerate() {
            let vj = v[j];
            for &(i, w) in col {
                out[i] += w * vj;
            }
        }
        Ok(out)
    }

    /// Hᵀ·v in floats.
    pub fn transpose_matvec(&self, v: &[f64]) -> Result<Vec<f64>, MatrixError> {
        self.check_dim(v.len())?;
        let out = self
            .float_columns
            .iter()
            .map(|col| col.iter().map(|&(i, w)| w * v[i]).sum())
            .collect();
        Ok(out)
    }

    /// H·v in exact rational arithmetic.
    pub fn matvec_rational(&self, v: &[BigRational]) -> Result<Vec<BigRational>, MatrixError> {
        self.check_dim(v.len())?;
        let mut out = vec![BigRational::zero(); v.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, ref w) in col {
                out[i] += w * &v[j];
            }
        }
        Ok(out)
    }

    /// Hᵀ·v in exact rational arithmetic.
    pub fn transpose_matvec_rational(
        &self,
        v: &[BigRational],
    ) -> Result<Vec<BigRational>, MatrixError> {
        self.check_dim(v.len())?;
        let out = self
            .columns
            .iter()
            .map(|col| col.iter().map(|&(i, ref w)| w * &v[i]).sum())
            .collect();
        Ok(out)
    }

    /// Dense rational copy, row-major. Exact-mode algorithms want it.
    pub fn dense_rational(&self) -> Vec<Vec<BigRational>> {
        let n = self.dim();
        let mut dense = vec![vec![BigRational::zero(); n]; n];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, ref w) in col {
                dense[i][j] = w.clone();
            }
        }
        dense
    }

    /// Debug dump: TSV rows `row col numerator denominator` (tab-separated),
    /// sorted by (col, row), for fixture diffing.
    pub fn dump_tsv(&self) -> String {
        let mut out = String::new();
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, ref w) in col {
                out.push_str(&format!("{i}\t{j}\t{}\t{}\n", w.numer(), w.denom()));
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::LinkGraph;
    use proptest::prelude::*;

    const EIGHT_PAGES: &str =
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/eight_pages.edges"));
    const FOUR_CYCLE: &str =
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/four_cycle.edges"));

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub(crate) fn eight_pages() -> ColumnStochasticMatrix {
        let g = LinkGraph::parse_edge_list(EIGHT_PAGES).unwrap();
        ColumnStochasticMatrix::build(&g).unwrap()
    }

    pub(crate) fn four_cycle() -> ColumnStochasticMatrix {
        let g = LinkGraph::parse_edge_list(FOUR_CYCLE).unwrap();
        ColumnStochasticMatrix::build(&g).unwrap()
    }

    pub(crate) fn two_cycle() -> ColumnStochasticMatrix {
        let g = LinkGraph::parse_edge_list("1 2\n2 1").unwrap();
        ColumnStochasticMatrix::build(&g).unwrap()
    }

    #[test]
    fn eight_page_column_for_page_4() {
        let m = eight_pages();
        // page 4 links to 2, 5, 6 with weight 1/3 each
        let col: Vec<(usize, BigRational)> = m.column(3).to_vec();
        assert_eq!(
            col,
            vec![(1, rat(1, 3)), (4, rat(1, 3)), (5, rat(1, 3))]
        );
    }

    #[test]
    fn two_cycle_matrix_is_swap() {
        let m = two_cycle();
        assert_eq!(m.entry(1, 0), Some(&rat(1, 1)));
        assert_eq!(m.entry(0, 1), Some(&rat(1, 1)));
        assert_eq!(m.entry(0, 0), None);
    }

    #[test]
    fn four_cycle_matrix_matches_hand_columns() {
        let m = four_cycle();
        let expect = [
            vec![(1, rat(1, 1))],
            vec![(0, rat(1, 2)), (2, rat(1, 2))],
            vec![(1, rat(1, 2)), (3, rat(1, 2))],
            vec![(2, rat(1, 1))],
        ];
        for (j, col) in expect.iter().enumerate() {
            assert_eq!(m.column(j), col.as_slice(), "column {j}");
        }
    }

    #[test]
    fn dangling_page_is_a_build_error() {
        let g = LinkGraph::parse_edge_list("1 2").unwrap();
        assert_eq!(
            ColumnStochasticMatrix::build(&g).unwrap_err(),
            MatrixError::DanglingPage { label: "2".into() }
        );
    }

    #[test]
    fn from_columns_rejects_bad_inputs() {
        // diagonal entry
        let err = ColumnStochasticMatrix::from_columns(vec![vec![(0, rat(1, 1))], vec![]])
            .unwrap_err();
        assert_eq!(err, MatrixError::DiagonalEntry { col: 0 });
        // column sum != 1
        let err = ColumnStochasticMatrix::from_columns(vec![vec![(1, rat(1, 2))], vec![]])
            .unwrap_err();
        assert!(matches!(err, MatrixError::ColumnSumNotOne { col: 0, .. }));
        // nonpositive weight
        let err = ColumnStochasticMatrix::from_columns(vec![
            vec![(1, rat(3, 2)), (1, rat(-1, 2))],
            vec![],
        ])
        .unwrap_err();
        assert!(matches!(err, MatrixError::WeightOutOfRange { .. }));
    }

    #[test]
    fn matvec_fixes_the_pagerank_vector() {
        let m = eight_pages();
        let i: Vec<f64> = [24.0, 27.0, 12.0, 27.0, 39.0, 81.0, 72.0, 118.0]
            .iter()
            .map(|x| x / 400.0)
            .collect();
        let hi = m.matvec(&i).unwrap();
        assert!(l1_distance(&hi, &i) <= 1e-12);

        // and exactly, in rational arithmetic
        let ir: Vec<BigRational> = [24, 27, 12, 27, 39, 81, 72, 118]
            .iter()
            .map(|&x| rat(x, 400))
            .collect();
        assert_eq!(m.matvec_rational(&ir).unwrap(), ir);
    }

    #[test]
    fn matvec_of_e1_is_first_column() {
        let m = eight_pages();
        let mut e1 = vec![0.0; 8];
        e1[0] = 1.0;
        let col = m.matvec(&e1).unwrap();
        let mut expect = vec![0.0; 8];
        expect[1] = 0.5;
        expect[2] = 0.5;
        assert_eq!(col, expect);
    }

    #[test]
    fn four_cycle_moves_uniform() {
        let m = four_cycle();
        let out = m.matvec(&[0.25; 4]).unwrap();
        assert_eq!(out, vec![0.125, 0.375, 0.375, 0.125]);
    }

    #[test]
    fn transpose_fixes_all_ones() {
        let m = eight_pages();
        let ones = vec![BigRational::one(); 8];
        assert_eq!(m.transpose_matvec_rational(&ones).unwrap(), ones);
        let onesf = vec![1.0; 8];
        assert_eq!(m.transpose_matvec(&onesf).unwrap(), onesf);
    }

    #[test]
    fn transpose_fixes_uniform_on_four_cycle() {
        let m = four_cycle();
        assert_eq!(m.transpose_matvec(&[0.25; 4]).unwrap(), vec![0.25; 4]);
    }

    #[test]
    fn matvec_of_zero_is_zero() {
        let m = four_cycle();
        assert_eq!(m.matvec(&[0.0; 4]).unwrap(), vec![0.0; 4]);
        assert_eq!(m.transpose_matvec(&[0.0; 4]).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = two_cycle();
        assert_eq!(
            m.matvec(&[1.0, 0.0, 0.0]).unwrap_err(),
            MatrixError::DimensionMismatch { n: 2, len: 3 }
        );
        assert!(m.transpose_matvec(&[1.0]).is_err());
    }

    #[test]
    fn dump_tsv_is_sorted_by_col_then_row() {
        let m = two_cycle();
        assert_eq!(m.dump_tsv(), "1\t0\t1\t1\n0\t1\t1\t1\n");
        let dump = eight_pages().dump_tsv();
        assert_eq!(dump.lines().count(), 17);
        let first: Vec<&str> = dump.lines().next().unwrap().split('\t').collect();
        assert_eq!(first, ["1", "0", "1", "2"]);
    }

    #[test]
    fn stochastic_vector_constructors() {
        let e1 = StochasticVector::e1(3);
        assert_eq!(e1.as_slice(), [1.0, 0.0, 0.0]);
        let u = StochasticVector::uniform(4);
        assert_eq!(u.as_slice(), [0.25; 4]);
        assert!(StochasticVector::new(vec![0.5, 0.6]).is_err());
        assert!(StochasticVector::new(vec![-0.1, 1.1]).is_err());
    }

    prop_compose! {
        /// A random valid link graph: every page gets at least one out-link.
        pub(crate) fn valid_graph(max_n: usize)
            (n in 2..=max_n)
            (targets in proptest::collection::vec(
                proptest::collection::vec(0..n - 1, 1..n), n))
            -> LinkGraph
        {
            let mut text = String::new();
            let mut seen = std::collections::HashSet::new();
            for (s, choices) in targets.iter().enumerate() {
                for &raw in choices {
                    // map 0..n-1 onto targets skipping the diagonal
                    let t = if raw >= s { raw + 1 } else { raw };
                    if seen.insert((s, t)) {
                        text.push_str(&format!("p{s} p{t}\n"));
                    }
                }
            }
            LinkGraph::parse_edge_list(&text).unwrap()
        }
    }

    proptest! {
        #[test]
        fn columns_sum_to_one(g in valid_graph(50)) {
            let m = ColumnStochasticMatrix::build(&g).unwrap();
            for j in 0..m.dim() {
                let sum: BigRational = m.column(j).iter().map(|(_, w)| w.clone()).sum();
                prop_assert!(sum.is_one());
                let fsum: f64 = m.column(j).iter().map(|(_, w)| w.to_f64().unwrap()).sum();
                prop_assert!((fsum - 1.0).abs() <= 1e-14);
            }
        }

        #[test]
        fn matvec_preserves_entry_sum(
            g in valid_graph(20),
            raw in proptest::collection::vec(0.0f64..10.0, 20),
        ) {
            let m = ColumnStochasticMatrix::build(&g).unwrap();
            let v = &raw[..m.dim()];
            let out = m.matvec(v).unwrap();
            let s_in: f64 = v.iter().sum();
            let s_out: f64 = out.iter().sum();
            prop_assert!((s_out - s_in).abs() <= 1e-12 * s_in.max(1.0));
        }

        #[test]
        fn transpose_is_adjoint(
            g in valid_graph(20),
            raw_u in proptest::collection::vec(-5.0f64..5.0, 20),
            raw_v in proptest::collection::vec(-5.0f64..5.0, 20),
        ) {
            let m = ColumnStochasticMatrix::build(&g).unwrap();
            let u = &raw_u[..m.dim()];
            let v = &raw_v[..m.dim()];
            let hu = m.matvec(u).unwrap();
            let htv = m.transpose_matvec(v).unwrap();
            let lhs: f64 = hu.iter().zip(v).map(|(a, b)| a * b).sum();
            let rhs: f64 = u.iter().zip(&htv).map(|(a, b)| a * b).sum();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        #[test]
        fn no_diagonal_entries(g in valid_graph(30)) {
            let m = ColumnStochasticMatrix::build(&g).unwrap();
            for j in 0..m.dim() {
                prop_assert!(m.column(j).iter().all(|&(i, _)| i != j));
            }
        }
    }
}
