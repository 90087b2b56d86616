//! Edge-list parsing and validation for page-link graphs.
//!
//! The input format is plain UTF-8 text: one `source target` pair per line,
//! labels separated by whitespace, `#` starting a comment line, blank lines
//! ignored. Page indices are assigned in order of first appearance.

use std::collections::HashSet;

use thiserror::Error;

/// A page: the label as read from the input plus its 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageId {
    pub label: String,
    pub index: usize,
}

/// A directed link graph with stable page labels.
///
/// Edges are kept in input order so serialization reproduces the source
/// text structure; duplicates are rejected at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pages: Vec<PageId>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `source target`, found {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: page {label:?} links to itself (self-citation is prohibited)")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge {from:?} -> {to:?}")]
    DuplicateEdge {
        line: usize,
        from: String,
        to: String,
    },
    #[error("input contains no edges")]
    Empty,
}

/// Findings from [`LinkGraph::validate`]. The graph can be turned into a
/// column-stochastic matrix iff `dangling` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub page_count: usize,
    pub edge_count: usize,
    /// Labels of pages with no outgoing links, in index order.
    pub dangling: Vec<String>,
    /// Labels of pages with no incoming links, in index order.
    pub unreachable: Vec<String>,
}

impl ValidationReport {
    pub fn matrix_ready(&self) -> bool {
        self.dangling.is_empty()
    }
}

impl LinkGraph {
    /// Parses an edge-list text into a graph.
    ///
    /// Rejects malformed lines, self-loops, and duplicate edges; does not
    /// enforce the no-dangling-page rule, which is reported by
    /// [`validate`](Self::validate) and enforced at matrix build.
    pub fn parse_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut pages: Vec<PageId> = Vec::new();
        let mut index_of = std::collections::HashMap::new();
        let mut edges = Vec::new();
        let mut seen = HashSet::new();

        let mut intern = |label: &str, pages: &mut Vec<PageId>| -> usize {
            *index_of.entry(label.to_string()).or_insert_with(|| {
                let index = pages.len();
                pages.push(PageId {
                    label: label.to_string(),
                    index,
                });
                index
            })
        };

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let [source, target] = tokens[..] else {
                return Err(ParseError::MalformedLine {
                    line,
                    found: content.to_string(),
                });
            };
            if source == target {
                return Err(ParseError::SelfLoop {
                    line,
                    label: source.to_string(),
                });
            }
            let s = intern(source, &mut pages);
            let t = intern(target, &mut pages);
            if !seen.insert((s, t)) {
                return Err(ParseError::DuplicateEdge {
                    line,
                    from: source.to_string(),
                    to: target.to_string(),
                });
            }
            edges.push((s, t));
        }

        if edges.is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(LinkGraph { pages, edges })
    }

    /// Renders the graph back to edge-list text. `parse_edge_list` of the
    /// result reproduces the graph exactly (edges stay in input order, so
    /// first-appearance indices are preserved).
    pub fn serialize_edge_list(&self) -> String {
        let mut out = String::new();
        for &(s, t) in &self.edges {
            out.push_str(&self.pages[s].label);
            out.push(' ');
            out.push_str(&self.pages[t].label);
            out.push('\n');
        }
        out
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn pages(&self) -> &[PageId] {
        &self.pages
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, index: usize) -> &str {
        &self.pages[index].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.pages.iter().map(|p| p.label.clone()).collect()
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.edges.iter().filter(|&&(s, _)| s == index).count()
    }

    /// Out-links of each page, grouped by source and sorted by target index.
    pub fn out_links(&self) -> Vec<Vec<usize>> {
        let mut links = vec![Vec::new(); self.pages.len()];
        for &(s, t) in &self.edges {
            links[s].push(t);
        }
        for targets in &mut links {
            targets.sort_unstable();
        }
        links
    }

    /// Reports dangling pages (no out-links), unreachable pages (no
    /// in-links), and size counts.
    pub fn validate(&self) -> ValidationReport {
        let n = self.pages.len();
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for &(s, t) in &self.edges {
            has_out[s] = true;
            has_in[t] = true;
        }
        let collect = |mask: &[bool]| {
            self.pages
                .iter()
                .filter(|p| !mask[p.index])
                .map(|p| p.label.clone())
                .collect()
        };
        ValidationReport {
            page_count: n,
            edge_count: self.edges.len(),
            dangling: collect(&has_out),
            unreachable: collect(&has_in),
        }
    }
}
