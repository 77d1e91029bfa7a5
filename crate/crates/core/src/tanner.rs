//! Structural analytics of parity-check matrices: girth, degree profiles,
//! and the girth-vs-blocklength trend report.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Bipartite adjacency of a parity-check matrix: checks are rows,
/// variables are columns.
pub struct TannerGraph {
    pub check_count: usize,
    pub variable_count: usize,
    /// Variables adjacent to each check.
    pub check_adj: Vec<Vec<usize>>,
    /// Checks adjacent to each variable.
    pub variable_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_matrix(h: &BitMatrix) -> Self {
        let mut check_adj = Vec::with_capacity(h.rows());
        let mut variable_adj = vec![Vec::new(); h.cols()];
        for r in 0..h.rows() {
            let support = h.row_support(r);
            for &c in &support {
                variable_adj[c].push(r);
            }
            check_adj.push(support);
        }
        TannerGraph {
            check_count: h.rows(),
            variable_count: h.cols(),
            check_adj,
            variable_adj,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.check_adj.iter().map(Vec::len).sum()
    }
}

/// Length (in edges) of the shortest cycle of the Tanner graph of `h`,
/// or `None` if the graph is acyclic.
///
/// Breadth-first search from every variable node; a non-tree edge closing
/// at depths d(u), d(w) witnesses a cycle of length d(u) + d(w) + 1
/// through the source. Parent-edge exclusion only, so parallel structure
/// is detected (multi-edges never arise here; duplicate generators are
/// rejected upstream).
pub fn girth(h: &BitMatrix) -> Option<u32> {
    let g = TannerGraph::from_matrix(h);
    let nv = g.variable_count;
    let nc = g.check_count;
    let total = nv + nc; // variables are 0..nv, checks nv..nv+nc
    let mut best: Option<u32> = None;
    let mut dist = vec![u32::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();

    let neighbors = |node: usize| -> &[usize] {
        if node < nv {
            &g.variable_adj[node]
        } else {
            &g.check_adj[node - nv]
        }
    };

    for src in 0..nv {
        dist.fill(u32::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            // Any cycle through src found from here on is no shorter than
            // one already recorded.
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break;
                }
            }
            for &raw in neighbors(u) {
                let w = if u < nv { raw + nv } else { raw };
                if w == parent[u] {
                    continue;
                }
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    let cycle = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}

/// Exact multisets of row and column weights, as weight -> count maps.
pub fn degree_profile(h: &BitMatrix) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let mut rows = BTreeMap::new();
    for r in 0..h.rows() {
        *rows.entry(h.row_weight(r)).or_insert(0) += 1;
    }
    let mut cols = BTreeMap::new();
    for w in h.column_weights() {
        *cols.entry(w).or_insert(0) += 1;
    }
    (rows, cols)
}

/// One row of the girth scaling report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GirthScalingRow {
    pub n: usize,
    pub girth_x: Option<u32>,
    pub girth_z: Option<u32>,
    pub check_degree: usize,
    /// log n / log(2 d_c), the theoretical growth quantity.
    pub log_ratio: f64,
}

/// Observed girths next to log n / log(2 d_c) for a family of codes.
/// Trend inspection only; carries no pass/fail semantics.
pub fn girth_scaling_report(codes: &[&CssCode]) -> Result<Vec<GirthScalingRow>> {
    if codes.len() < 2 {
        return Err(Error::Validation(
            "girth scaling report needs at least 2 codes".into(),
        ));
    }
    Ok(codes
        .iter()
        .map(|c| {
            let dc = c.hx.row_weight(0);
            GirthScalingRow {
                n: c.n,
                girth_x: c.girth_x,
                girth_z: c.girth_z,
                check_degree: dc,
                log_ratio: (c.n as f64).ln() / (2.0 * dc as f64).ln(),
            }
        })
        .collect())
}

pub fn render_report_text(rows: &[GirthScalingRow]) -> String {
    let mut out = String::from(format!(
        "{:>8} {:>8} {:>8} {:>5} {:>18}\n",
        "n", "girth_x", "girth_z", "d_c", "log n/log(2 d_c)"
    ));
    for r in rows {
        let fmt_g = |g: Option<u32>| g.map_or("inf".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{:>8} {:>8} {:>8} {:>5} {:>18.4}\n",
            r.n,
            fmt_g(r.girth_x),
            fmt_g(r.girth_z),
            r.check_degree,
            r.log_ratio
        ));
    }
    out
}

pub fn render_report_csv(rows: &[GirthScalingRow]) -> String {
    let mut out = String::from("n,girth_x,girth_z,d_c,log_ratio\n");
    for r in rows {
        let fmt_g = |g: Option<u32>| g.map_or("inf".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{},{},{},{},{:.6}\n",
            r.n,
            fmt_g(r.girth_x),
            fmt_g(r.girth_z),
            r.check_degree,
            r.log_ratio
        ));
    }
    out
}
