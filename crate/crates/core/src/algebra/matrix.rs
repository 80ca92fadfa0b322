use std::fmt;

use num_traits::Zero;

use super::{BiPoly, Rational, Ring, UniPoly, Var};
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Every division is exact in an integral domain; a failed exact division
/// therefore indicates a broken `Ring` implementation and panics.
pub fn det_bareiss<R: Ring>(rows: &[Vec<R>]) -> Result<R> {
    let n = check_square(rows)?;
    let mut m: Vec<Vec<R>> = rows.to_vec();
    let mut negate = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(m[0][0].zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = m[i][k].zero_like();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Determinant by Laplace expansion along the first row. Exponential; kept
/// as an independent route for small matrices.
pub fn det_cofactor<R: Ring>(rows: &[Vec<R>]) -> Result<R> {
    check_square(rows)?;
    Ok(laplace(rows))
}

fn laplace<R: Ring>(rows: &[Vec<R>]) -> R {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = rows[0][0].zero_like();
    for c in 0..n {
        if rows[0][c].is_zero_elem() {
            continue;
        }
        let minor: Vec<Vec<R>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = rows[0][c].mul(&laplace(&minor));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// The library's determinant route.
pub fn determinant<R: Ring>(rows: &[Vec<R>]) -> Result<R> {
    det_bareiss(rows)
}

fn check_square<R>(rows: &[Vec<R>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::validation("determinant of an empty matrix"));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::validation("determinant of a non-square matrix"));
    }
    Ok(n)
}

/// Rectangular matrix of univariate polynomials sharing one variable.
///
/// In a matrix representation, entry `(j, i)` is the coefficient of `v_j` in
/// the image of `v_i`: columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    var: Var,
    entries: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn from_rows(var: Var, rows: Vec<Vec<UniPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::validation("matrix must have positive dimensions"));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::validation("matrix rows have different lengths"));
        }
        let entries: Vec<UniPoly> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|e| !e.is_constant() && e.var() != var) {
            return Err(Error::validation(format!(
                "matrix entry in {} does not match matrix variable {var}",
                bad.var()
            )));
        }
        let entries = entries.into_iter().map(|e| e.with_var(var)).collect();
        Ok(PolyMatrix { rows: nrows, cols: ncols, var, entries })
    }

    /// Integer-entry matrix whose entries are given as coefficient lists.
    pub fn from_int_rows(var: Var, rows: &[&[&[i64]]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| UniPoly::from_ints(var, c)).collect())
            .collect();
        Self::from_rows(var, rows).expect("well-formed literal matrix")
    }

    pub fn zeros(n: usize, m: usize, var: Var) -> Self {
        PolyMatrix { rows: n, cols: m, var, entries: vec![UniPoly::zero(var); n * m] }
    }

    pub fn identity(n: usize, var: Var) -> Self {
        let mut m = Self::zeros(n, n, var);
        for i in 0..n {
            m.set(i, i, UniPoly::one(var));
        }
        m
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(var: Var, columns: Vec<Vec<UniPoly>>) -> Result<Self> {
        let n = columns.first().map_or(0, Vec::len);
        let rows = (0..n)
            .map(|j| columns.iter().map(|c| c.get(j).cloned().unwrap_or_else(|| UniPoly::zero(var))).collect())
            .collect();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::validation("columns have different lengths"));
        }
        Self::from_rows(var, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &UniPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: UniPoly) {
        self.entries[row * self.cols + col] = value.with_var(self.var);
    }

    pub fn row_vecs(&self) -> Vec<Vec<UniPoly>> {
        self.entries.chunks(self.cols).map(<[UniPoly]>::to_vec).collect()
    }

    /// Same entries, new variable (e.g. `u ↦ x`).
    pub fn with_var(&self, var: Var) -> Self {
        PolyMatrix {
            var,
            entries: self.entries.iter().map(|e| e.with_var(var)).collect(),
            ..*self
        }
    }

    /// Entrywise `var ↦ -var`.
    pub fn negate_var(&self) -> Self {
        PolyMatrix { entries: self.entries.iter().map(UniPoly::negate_var).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.var);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `J M J` with `J` the order-reversing permutation: the same map written
    /// in the reversed basis.
    pub fn reverse_basis(&self) -> Self {
        let mut t = Self::zeros(self.rows, self.cols, self.var);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(self.rows - 1 - r, self.cols - 1 - c, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::validation("matrix shapes differ"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(PolyMatrix { entries, ..self.clone() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::validation("matrix shapes are not compatible for multiplication"));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.var);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = UniPoly::zero(self.var);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(r, k).try_mul(other.get(k, c))?)?;
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::validation("power of a non-square matrix"));
        }
        let mut acc = Self::identity(self.rows, self.var);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn det(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::validation("determinant of a non-square matrix"));
        }
        determinant(&self.row_vecs())
    }

    /// Inverse of a matrix whose determinant is a nonzero constant, computed
    /// from the adjugate; the entries stay polynomial.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let det = self.det()?;
        if det.is_zero() || !det.is_constant() {
            return Err(Error::validation(format!(
                "matrix is not invertible over Q[{}]: determinant {det}",
                self.var
            )));
        }
        let inv_det = det.lead().recip();
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1, self.var).scale(&inv_det));
        }
        let rows = self.row_vecs();
        let mut out = Self::zeros(n, n, self.var);
        for r in 0..n {
            for c in 0..n {
                let minor: Vec<Vec<UniPoly>> = rows
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != r)
                    .map(|(_, row)| {
                        row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, e)| e.clone()).collect()
                    })
                    .collect();
                let mut cof = determinant(&minor)?;
                if (r + c) % 2 == 1 {
                    cof = -&cof;
                }
                // adjugate is the transposed cofactor matrix
                out.set(c, r, cof.scale(&inv_det));
            }
        }
        Ok(out)
    }

    /// `det(e·1 - M)` as a polynomial in `x, y`.
    ///
    /// Entries in `u` or `x` are read as polynomials in `x` with eigenvalue
    /// variable `y`; entries in `y` use eigenvalue variable `x`.
    pub fn characteristic_polynomial(&self) -> Result<BiPoly> {
        if !self.is_square() {
            return Err(Error::validation("characteristic polynomial of a non-square matrix"));
        }
        let (entry_var, eigen) = match self.var {
            Var::U | Var::X => (Var::X, BiPoly::y()),
            Var::Y => (Var::Y, BiPoly::x()),
            other => {
                return Err(Error::validation(format!(
                    "characteristic polynomial needs entries in u, x or y, not {other}"
                )))
            }
        };
        let n = self.rows;
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let e = BiPoly::from_uni(&self.get(r, c).with_var(entry_var))?;
                row.push(if r == c { &eigen - &e } else { -&e });
            }
            rows.push(row);
        }
        determinant(&rows)
    }

    /// `{"rank": n, "variable": "u", "entries": [[poly, ...], ...]}` with each
    /// polynomial as an array of `{"exps": [e], "num", "den"}` terms.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .row_vecs()
            .iter()
            .map(|r| serde_json::Value::Array(r.iter().map(uni_json).collect()))
            .collect();
        serde_json::json!({
            "rank": self.rows,
            "variable": self.var.name(),
            "entries": entries,
        })
    }
}

pub(crate) fn uni_json(p: &UniPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                serde_json::json!({
                    "exps": [k],
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect(),
    )
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[ ")?;
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{cell:>w$}", w = widths[c])?;
            }
            f.write_str(" ]")?;
        }
        Ok(())
    }
}
