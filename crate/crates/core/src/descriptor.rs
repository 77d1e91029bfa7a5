//! Code descriptor files and matrix export formats.
//!
//! Descriptors store the generators, never the matrices: the parity
//! checks are rebuilt on load and verified against the recorded content
//! digest, so a descriptor is small and tamper-evident at the same time.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::code::{assemble_code, CssCode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::margulis::{CoprimePair, GeneratorSpec};
use crate::sim::hex_prefix;
use crate::sl2::{enumerate_group, GroupElement};
use crate::tanner;

pub const FORMAT_VERSION: u32 = 1;

/// JSON descriptor of a constructed code: generator data plus cached
/// parameters and the matrix content digest.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub format_version: u32,
    pub p: u32,
    pub eta: u32,
    pub pairs: Vec<CoprimePair>,
    /// Integer lifts as row-major (m, a, q, b) tuples.
    pub lifts: Vec<[i64; 4]>,
    /// Left-acting generators, row-major entries mod p.
    pub a: Vec<[u32; 4]>,
    /// Right-acting generators.
    pub b: Vec<[u32; 4]>,
    pub n: usize,
    pub k: usize,
    pub girth_x: Option<u32>,
    pub girth_z: Option<u32>,
    /// Column-weight histogram of hx (weight -> count).
    pub dv_profile: BTreeMap<usize, usize>,
    pub dc: usize,
    /// SHA-256 over the packed hx and hz words.
    pub matrix_digest: String,
}

/// SHA-256 hex digest of the packed parity-check pair.
pub fn matrix_digest(hx: &BitMatrix, hz: &BitMatrix) -> String {
    let mut hasher = Sha256::new();
    for m in [hx, hz] {
        for w in m.packed_words() {
            hasher.update(w.to_le_bytes());
        }
    }
    hex_prefix(&hasher.finalize(), 64)
}

impl CodeDescriptor {
    pub fn from_code(code: &CssCode) -> Self {
        let spec = &code.provenance;
        let (_, dv_profile) = tanner::degree_profile(&code.hx);
        CodeDescriptor {
            format_version: FORMAT_VERSION,
            p: spec.p,
            eta: spec.eta,
            pairs: spec.pairs.clone(),
            lifts: spec.lifts.iter().map(|l| l.c).collect(),
            a: spec.set_a.iter().map(|g| g.entries()).collect(),
            b: spec.set_b.iter().map(|g| g.entries()).collect(),
            n: code.n,
            k: code.k,
            girth_x: code.girth_x,
            girth_z: code.girth_z,
            dv_profile,
            dc: code.check_degree(),
            matrix_digest: matrix_digest(&code.hx, &code.hz),
        }
    }

    pub fn to_generator_spec(&self) -> Result<GeneratorSpec> {
        let to_elems = |raw: &[[u32; 4]]| -> Result<Vec<GroupElement>> {
            raw.iter().map(|&e| GroupElement::new(self.p, e)).collect()
        };
        Ok(GeneratorSpec {
            p: self.p,
            eta: self.eta,
            pairs: self.pairs.clone(),
            lifts: self
                .lifts
                .iter()
                .map(|&c| crate::margulis::IntegerLift { c, eta: self.eta })
                .collect(),
            set_a: to_elems(&self.a)?,
            set_b: to_elems(&self.b)?,
            inverse_collisions: Vec::new(),
        })
    }

    /// Short identifier used in CSV records.
    pub fn code_id(&self) -> String {
        format!(
            "p{}a{}b{}-{}",
            self.p,
            self.a.len(),
            self.b.len(),
            &self.matrix_digest[..6]
        )
    }

    /// Rebuild the code and check it against every cached field.
    pub fn verify(&self) -> Result<CssCode> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Integrity(format!(
                "unsupported format version {}",
                self.format_version
            )));
        }
        let spec = self.to_generator_spec()?;
        let index = enumerate_group(self.p)?;
        let code = assemble_code(&index, &spec)?;
        let digest = matrix_digest(&code.hx, &code.hz);
        if digest != self.matrix_digest {
            return Err(Error::Integrity(format!(
                "matrix digest mismatch: descriptor says {}, rebuilt {digest}",
                self.matrix_digest
            )));
        }
        let (_, dv) = tanner::degree_profile(&code.hx);
        if code.n != self.n
            || code.k != self.k
            || code.girth_x != self.girth_x
            || code.girth_z != self.girth_z
            || dv != self.dv_profile
            || code.check_degree() != self.dc
        {
            return Err(Error::Integrity(
                "cached parameters disagree with the rebuilt code".into(),
            ));
        }
        Ok(code)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Render a parity-check matrix in MacKay alist format.
///
/// Layout: "n_cols n_rows", max column/row degrees, the column and row
/// degree lists, then 1-based index lists per column and per row.
pub fn to_alist(h: &BitMatrix) -> String {
    let col_supports: Vec<Vec<usize>> = {
        let mut cols = vec![Vec::new(); h.cols()];
        for r in 0..h.rows() {
            for c in h.row_support(r) {
                cols[c].push(r);
            }
        }
        cols
    };
    let row_supports: Vec<Vec<usize>> = (0..h.rows()).map(|r| h.row_support(r)).collect();
    let max_col = col_supports.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_supports.iter().map(Vec::len).max().unwrap_or(0);

    let join = |v: &[usize], offset: usize| {
        v.iter()
            .map(|x| (x + offset).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut out = format!("{} {}\n{} {}\n", h.cols(), h.rows(), max_col, max_row);
    out.push_str(&join(
        &col_supports.iter().map(Vec::len).collect::<Vec<_>>(),
        0,
    ));
    out.push('\n');
    out.push_str(&join(
        &row_supports.iter().map(Vec::len).collect::<Vec<_>>(),
        0,
    ));
    out.push('\n');
    for col in &col_supports {
        out.push_str(&join(col, 1));
        out.push('\n');
    }
    for row in &row_supports {
        out.push_str(&join(row, 1));
        out.push('\n');
    }
    out
}

/// Parse the alist format written by [`to_alist`] (unpadded variant).
pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut nums = text.split_ascii_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::Validation(format!("alist: bad token {t:?}")))
    });
    let mut next = |what: &str| {
        nums.next()
            .ok_or_else(|| Error::Validation(format!("alist: missing {what}")))?
    };
    let cols = next("column count")?;
    let rows = next("row count")?;
    let _max_col = next("max column degree")?;
    let _max_row = next("max row degree")?;
    let col_degs: Vec<usize> = (0..cols).map(|_| next("column degree")).collect::<Result<_>>()?;
    let row_degs: Vec<usize> = (0..rows).map(|_| next("row degree")).collect::<Result<_>>()?;
    let mut m = BitMatrix::zeros(rows, cols);
    for (c, &d) in col_degs.iter().enumerate() {
        for _ in 0..d {
            let r = next("column entry")?;
            if r == 0 || r > rows {
                return Err(Error::Validation(format!("alist: row index {r} out of range")));
            }
            m.set(r - 1, c, true);
        }
    }
    // Row lists are redundant; read them to validate consistency.
    for (r, &d) in row_degs.iter().enumerate() {
        for _ in 0..d {
            let c = next("row entry")?;
            if c == 0 || c > cols || !m.get(r, c - 1) {
                return Err(Error::Validation(format!(
                    "alist: row list disagrees at ({r}, {c})"
                )));
            }
        }
    }
    Ok(m)
}

/// Sparse coordinate text: one "row col" pair per line, 0-based,
/// row-major order.
pub fn to_coords(h: &BitMatrix) -> String {
    let mut out = String::new();
    for r in 0..h.rows() {
        for c in h.row_support(r) {
            out.push_str(&format!("{r} {c}\n"));
        }
    }
    out
}
