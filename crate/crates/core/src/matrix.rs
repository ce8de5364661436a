//! Dense matrices of polynomials and their JSON dumps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Field, MultiPoly, Scalar, Space};

/// A rows x cols matrix of polynomials, row major. Entries of specialized
/// matrices are constant polynomials; one matrix kernel serves both the
/// symbolic and the specialized workflows.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    space: Space,
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zero(space: &Space, field: Field, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            space: space.clone(),
            field,
            rows,
            cols,
            entries: vec![MultiPoly::zero(space, field); rows * cols],
        }
    }

    pub fn from_rows(space: &Space, field: Field, rows_data: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for row in rows_data {
            if row.len() != cols {
                return Err(Error::Unsupported("ragged matrix rows".into()));
            }
            entries.extend(row);
        }
        Ok(PolyMatrix { space: space.clone(), field, rows, cols, entries })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &MultiPoly) {
        let e = &mut self.entries[i * self.cols + j];
        *e = e.add(p).expect("matrix entries share one space");
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.space, self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.space, self.field, rows.len(), cols.len());
        for (ri, &i) in rows.iter().enumerate() {
            for (ci, &j) in cols.iter().enumerate() {
                out.set(ri, ci, self.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix product (used by the composition-zero checks).
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Unsupported(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.space, self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(i, j, &a.mul(b)?);
                }
            }
        }
        Ok(out)
    }

    /// Substitute scalars for some variables in every entry.
    pub fn eval_vars(&self, values: &std::collections::BTreeMap<String, Scalar>) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.eval_vars(values))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            space: self.space.clone(),
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// All entries as constants, if the matrix is fully specialized.
    pub fn to_scalars(&self) -> Option<Vec<Vec<Scalar>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).constant_value()?);
            }
            out.push(row);
        }
        Some(out)
    }

    pub fn scale_column(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let e = self.get(i, j).mul_scalar(c);
            self.set(i, j, e);
        }
    }

    pub fn dump(&self, row_labels: Vec<String>, col_labels: Vec<String>) -> MatrixDump {
        MatrixDump {
            rows: self.rows,
            cols: self.cols,
            row_monomials: row_labels,
            col_monomials: col_labels,
            entries: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
                .collect(),
        }
    }
}

/// JSON-serializable matrix dump with canonical polynomial strings.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub row_monomials: Vec<String>,
    pub col_monomials: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDump {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dump serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, SpaceBuilder};

    #[test]
    fn product_and_dump() {
        let sp = SpaceBuilder::new().geometric("st", ["s", "t"]).build().unwrap();
        let p = |s: &str| parse_poly(s, &sp, Field::Rational).unwrap();
        let a = PolyMatrix::from_rows(&sp, Field::Rational, vec![vec![p("s"), p("t")]]).unwrap();
        let b = PolyMatrix::from_rows(&sp, Field::Rational, vec![vec![p("t")], vec![p("-s")]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.shape(), (1, 1));
        assert!(ab.get(0, 0).is_zero());

        let d = a.dump(vec!["1".into()], vec!["e0".into(), "e1".into()]);
        let json = d.to_json();
        assert!(json.contains("\"rows\":1"));
        assert!(json.contains("\"entries\":[[\"s\",\"t\"]]"));
    }
}
