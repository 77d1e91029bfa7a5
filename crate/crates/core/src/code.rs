//! Assembly of the left-right Cayley complex into a CSS pair and
//! computation of the code parameters.
//!
//! Column convention: the V0 block occupies columns [0, |G|), the V1 block
//! [|G|, 2|G|). H_X = [A | B] with A the left-action biadjacency and B the
//! right-action one; H_Z = [B^T | A^T]. Left and right actions commute,
//! which is exactly the CSS condition AB + BA = 0.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::margulis::GeneratorSpec;
use crate::sl2::{GroupElement, GroupIndex};
use crate::tanner;

/// A CSS code with its parity-check pair and computed parameters.
pub struct CssCode {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub n: usize,
    pub k: usize,
    /// Girth of the Tanner graph of hx / hz; None means acyclic.
    pub girth_x: Option<u32>,
    pub girth_z: Option<u32>,
    /// Row redundancies |G| - rank(hx), |G| - rank(hz).
    pub redundancy_x: usize,
    pub redundancy_z: usize,
    pub provenance: GeneratorSpec,
}

impl CssCode {
    pub fn check_degree(&self) -> usize {
        self.provenance.generator_count()
    }
}

fn check_generator_list(index: &GroupIndex, gens: &[GroupElement]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if g.modulus() != index.modulus() {
            return Err(Error::ModulusMismatch(g.modulus(), index.modulus()));
        }
        if gens[..i].contains(g) {
            return Err(Error::Validation(format!(
                "duplicate generator {g:?} would create a multi-edge"
            )));
        }
    }
    Ok(())
}

/// Biadjacency of the left-action Cayley graph: M[g][h] = 1 iff h = a*g
/// for some a in the set. Rows index checks, columns index variables.
pub fn build_left_biadjacency(index: &GroupIndex, gens: &[GroupElement]) -> Result<BitMatrix> {
    check_generator_list(index, gens)?;
    let n = index.order();
    let mut m = BitMatrix::zeros(n, n);
    for (gi, g) in index.elements().iter().enumerate() {
        for a in gens {
            let h = a.mul(g)?;
            m.set(gi, index.position(&h).expect("closed under multiplication"), true);
        }
    }
    Ok(m)
}

/// Biadjacency of the right-action Cayley graph: M[g][h] = 1 iff h = g*b.
pub fn build_right_biadjacency(index: &GroupIndex, gens: &[GroupElement]) -> Result<BitMatrix> {
    check_generator_list(index, gens)?;
    let n = index.order();
    let mut m = BitMatrix::zeros(n, n);
    for (gi, g) in index.elements().iter().enumerate() {
        for b in gens {
            let h = g.mul(b)?;
            m.set(gi, index.position(&h).expect("closed under multiplication"), true);
        }
    }
    Ok(m)
}

/// True iff hx * hz^T = 0 over GF(2).
pub fn css_check(hx: &BitMatrix, hz: &BitMatrix) -> Result<bool> {
    if hx.cols() != hz.cols() {
        return Err(Error::ShapeMismatch(format!(
            "css_check: hx has {} cols, hz has {}",
            hx.cols(),
            hz.cols()
        )));
    }
    Ok(hx.mat_mat(&hz.transpose())?.is_zero())
}

/// k = n - rank(hx) - rank(hz), with the row redundancies of both sides.
pub fn compute_dimension(hx: &BitMatrix, hz: &BitMatrix) -> (usize, usize, usize) {
    let rx = hx.rank();
    let rz = hz.rank();
    let n = hx.cols();
    (n - rx - rz, hx.rows() - rx, hz.rows() - rz)
}

/// Build the full CSS pair from a generator selection and verify it.
pub fn assemble_code(index: &GroupIndex, spec: &GeneratorSpec) -> Result<CssCode> {
    let a_mat = build_left_biadjacency(index, &spec.set_a)?;
    let b_mat = build_right_biadjacency(index, &spec.set_b)?;
    let hx = a_mat.hconcat(&b_mat)?;
    let hz = b_mat.transpose().hconcat(&a_mat.transpose())?;

    if !css_check(&hx, &hz)? {
        // Never expected for valid input; indicates an action-side bug.
        return Err(Error::CssCheck(format!(
            "hx * hz^T != 0 for p = {}, eta = {}",
            spec.p, spec.eta
        )));
    }

    let order = index.order();
    let dc = spec.generator_count();
    for (label, h) in [("hx", &hx), ("hz", &hz)] {
        for r in 0..h.rows() {
            if h.row_weight(r) != dc {
                return Err(Error::CssCheck(format!(
                    "{label} row {r} has weight {}, expected {dc}",
                    h.row_weight(r)
                )));
            }
        }
    }
    let (wa, wb) = (spec.set_a.len(), spec.set_b.len());
    let col_w = hx.column_weights();
    let colz_w = hz.column_weights();
    for v in 0..order {
        if col_w[v] != wa || col_w[order + v] != wb {
            return Err(Error::CssCheck(format!("hx column {v} degree off")));
        }
        if colz_w[v] != wb || colz_w[order + v] != wa {
            return Err(Error::CssCheck(format!("hz column {v} degree off")));
        }
    }

    let (k, redundancy_x, redundancy_z) = compute_dimension(&hx, &hz);
    let girth_x = tanner::girth(&hx);
    let girth_z = tanner::girth(&hz);
    Ok(CssCode {
        n: 2 * order,
        k,
        girth_x,
        girth_z,
        redundancy_x,
        redundancy_z,
        hx,
        hz,
        provenance: spec.clone(),
    })
}
