//! Monomial bases of graded pieces S(d) on a product of projective spaces,
//! and the conversion of graded polynomial maps into scalar/parameter
//! matrices.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::{MatrixDump, PolyMatrix};
use crate::poly::{Field, Monomial, MultiDegree, MultiPoly, Space};

/// The monomial basis of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisIndex {
    pub twist: MultiDegree,
    /// Monomials in descending graded-lex order, parameter exponents zero.
    pub monomials: Vec<Monomial>,
}

impl BasisIndex {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// Expected dimension of S(d): the product of binomial(l_t + d_t, l_t), or
/// zero if any entry of d is negative.
pub fn basis_dim(space: &Space, d: &MultiDegree) -> usize {
    if !d.is_nonnegative() {
        return 0;
    }
    let mut total: u128 = 1;
    for (t, &l) in space.block_dims().iter().enumerate() {
        total *= binomial(l as u64 + d.get(t) as u64, l as u64);
    }
    total as usize
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exponent vectors of block-degree d over `width` variables, in descending
/// lex order (first variable's exponent decreasing).
fn compositions(d: i64, width: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut current = vec![0u32; width];
    fn rec(d: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == current.len() {
            current[pos] = d;
            out.push(current.clone());
            return;
        }
        for e in (0..=d).rev() {
            current[pos] = e;
            rec(d - e, pos + 1, current, out);
        }
        current[pos] = 0;
    }
    rec(d as u32, 0, &mut current, &mut out);
    out
}

/// All monomials of exact geometric multidegree `d`, in descending
/// graded-lex order on the concatenated exponent vector.
pub fn basis(space: &Space, d: &MultiDegree) -> BasisIndex {
    assert_eq!(d.len(), space.num_geometric_blocks(), "multidegree arity");
    if !d.is_nonnegative() {
        return BasisIndex { twist: d.clone(), monomials: Vec::new() };
    }
    let per_block: Vec<Vec<Vec<u32>>> = (0..space.num_geometric_blocks())
        .map(|t| compositions(d.get(t), space.geometric_range(t).len()))
        .collect();
    let mut monomials = Vec::with_capacity(basis_dim(space, d));
    let mut stack = vec![0usize; per_block.len()];
    'outer: loop {
        let mut exps = vec![0u32; space.num_vars()];
        for (t, &choice) in stack.iter().enumerate() {
            let range = space.geometric_range(t);
            for (off, &e) in per_block[t][choice].iter().enumerate() {
                exps[range.start + off] = e;
            }
        }
        monomials.push(Monomial(exps));
        // Odometer increment, last block fastest.
        for t in (0..stack.len()).rev() {
            stack[t] += 1;
            if stack[t] < per_block[t].len() {
                continue 'outer;
            }
            stack[t] = 0;
            if t == 0 {
                break 'outer;
            }
        }
    }
    debug_assert_eq!(monomials.len(), basis_dim(space, d));
    BasisIndex { twist: d.clone(), monomials }
}

/// A matrix of homogeneous polynomials between twisted free modules:
/// entry (i, j) is zero or homogeneous of multidegree d_j - k_i, where
/// d = column degrees and k = row degrees.
#[derive(Clone, Debug)]
pub struct GradedMap {
    space: Space,
    field: Field,
    row_degrees: Vec<MultiDegree>,
    col_degrees: Vec<MultiDegree>,
    entries: Vec<MultiPoly>,
}

impl GradedMap {
    pub fn new(
        space: &Space,
        field: Field,
        row_degrees: Vec<MultiDegree>,
        col_degrees: Vec<MultiDegree>,
        rows_data: Vec<Vec<MultiPoly>>,
    ) -> Result<Self> {
        let n = row_degrees.len();
        let c = col_degrees.len();
        if rows_data.len() != n || rows_data.iter().any(|r| r.len() != c) {
            return Err(Error::Unsupported("graded map shape mismatch".into()));
        }
        let mut entries = Vec::with_capacity(n * c);
        for (i, row) in rows_data.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                if !e.is_zero() {
                    let d = e.geometric_multidegree()?;
                    let want = col_degrees[j].sub(&row_degrees[i]);
                    if d != want {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({i},{j}) has multidegree {d}, expected {want}"
                        )));
                    }
                }
                entries.push(e);
            }
        }
        Ok(GradedMap {
            space: space.clone(),
            field,
            row_degrees,
            col_degrees,
            entries,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[MultiDegree] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[MultiDegree] {
        &self.col_degrees
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols() + j]
    }

    /// Degree of the minor on column subset `cols` (all rows).
    pub fn minor_degree(&self, cols: &[usize]) -> MultiDegree {
        let mut d = MultiDegree::zero(self.space.num_geometric_blocks());
        for &j in cols {
            d = d.add(&self.col_degrees[j]);
        }
        for k in &self.row_degrees {
            d = d.sub(k);
        }
        d
    }

    /// Determinant of the square submatrix on the given columns (all rows).
    pub fn minor(&self, cols: &[usize]) -> Result<MultiPoly> {
        let rows: Vec<usize> = (0..self.rows()).collect();
        let sub = self.as_poly_matrix().submatrix(&rows, cols);
        crate::cayley::det(&sub)
    }

    /// All maximal minors with their column subsets, subsets in ascending
    /// lexicographic order.
    pub fn maximal_minors(&self) -> Result<Vec<(Vec<usize>, MultiPoly)>> {
        let n = self.rows();
        let mut out = Vec::new();
        for cols in subsets(self.cols(), n) {
            let m = self.minor(&cols)?;
            out.push((cols, m));
        }
        Ok(out)
    }

    pub fn as_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_rows(
            &self.space,
            self.field,
            (0..self.rows())
                .map(|i| (0..self.cols()).map(|j| self.entry(i, j).clone()).collect())
                .collect(),
        )
        .expect("rectangular by construction")
    }

    /// Substitute scalars for some variables in every entry.
    pub fn eval_vars(&self, values: &std::collections::BTreeMap<String, crate::poly::Scalar>) -> Result<GradedMap> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.eval_vars(values))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMap {
            space: self.space.clone(),
            field: self.field,
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            entries,
        })
    }
}

/// All k-subsets of 0..n in ascending lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Rightmost position that can still be incremented.
        let mut i = k as isize - 1;
        while i >= 0 && cur[i as usize] == i as usize + n - k {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The matrix, in monomial bases, of the map
/// `(g_0, ..., g_s) -> sum g_i * images_i` restricted to total multidegree
/// `m`: rows are indexed by `basis(m)`, columns by the concatenation of
/// `basis(m - sources_i)` in input order. Entries are polynomials in the
/// parameter variables only.
#[derive(Clone, Debug)]
pub struct MapMatrix {
    pub matrix: PolyMatrix,
    pub row_basis: BasisIndex,
    /// One basis per image, in input order; empty bases contribute no columns.
    pub col_blocks: Vec<BasisIndex>,
}

impl MapMatrix {
    pub fn dump(&self) -> MatrixDump {
        let row_labels = self.row_basis.monomials.iter().map(|m| monomial_label(m, self.matrix.space())).collect();
        let mut col_labels = Vec::new();
        for b in &self.col_blocks {
            for m in &b.monomials {
                col_labels.push(monomial_label(m, self.matrix.space()));
            }
        }
        self.matrix.dump(row_labels, col_labels)
    }
}

fn monomial_label(m: &Monomial, space: &Space) -> String {
    let p = MultiPoly::from_terms(space, Field::Rational, [(m.clone(), Field::Rational.one())]);
    p.to_string()
}

pub fn matrix_of_map(
    space: &Space,
    field: Field,
    sources: &[MultiDegree],
    images: &[MultiPoly],
    m: &MultiDegree,
) -> Result<MapMatrix> {
    if sources.len() != images.len() {
        return Err(Error::Unsupported("sources/images length mismatch".into()));
    }
    for (i, img) in images.iter().enumerate() {
        if !img.is_zero() && img.geometric_multidegree()? != sources[i] {
            return Err(Error::NotHomogeneous(format!(
                "image {i} does not have its declared multidegree"
            )));
        }
    }
    let row_basis = basis(space, m);
    let row_index: HashMap<Monomial, usize> = row_basis
        .monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, mm)| (mm, i))
        .collect();
    let col_blocks: Vec<BasisIndex> = sources.iter().map(|e| basis(space, &m.sub(e))).collect();
    let total_cols: usize = col_blocks.iter().map(|b| b.dim()).sum();
    let mut matrix = PolyMatrix::zero(space, field, row_basis.dim(), total_cols);
    let mut col = 0;
    for (i, block) in col_blocks.iter().enumerate() {
        for mono in &block.monomials {
            let shifted = images[i].mul_monomial(mono);
            for (term, coeff) in shifted.terms() {
                let geo = term.geometric_part(space);
                let row = *row_index
                    .get(&geo)
                    .expect("shifted image stays in degree m");
                let param = term.parameter_part(space);
                let entry = MultiPoly::from_terms(space, field, [(param, coeff.clone())]);
                matrix.add_to(row, col, &entry);
            }
            col += 1;
        }
    }
    Ok(MapMatrix { matrix, row_basis, col_blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, SpaceBuilder};
    use crate::rng::SplitMix64;

    #[test]
    fn basis_dimensions() {
        // P^3 block at degree 5 has 56 monomials.
        let p3 = SpaceBuilder::new().geometric("g", ["X", "Y", "Z", "T"]).build().unwrap();
        let b = basis(&p3, &MultiDegree(vec![5]));
        assert_eq!(b.dim(), 56);

        // P^1 x P^1 at (8,5): 54 monomials.
        let pp = SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .geometric("uv", ["u", "v"])
            .build()
            .unwrap();
        assert_eq!(basis(&pp, &MultiDegree(vec![8, 5])).dim(), 54);

        // Negative degree: empty.
        assert_eq!(basis(&pp, &MultiDegree(vec![-1, 3])).dim(), 0);
    }

    #[test]
    fn basis_matches_exhaustive_enumeration() {
        let pp = SpaceBuilder::new()
            .geometric("st", ["s", "t", "r"])
            .geometric("uv", ["u", "v"])
            .build()
            .unwrap();
        for d1 in 0..4i64 {
            for d2 in 0..3i64 {
                let d = MultiDegree(vec![d1, d2]);
                let b = basis(&pp, &d);
                assert_eq!(b.dim(), basis_dim(&pp, &d));
                // Exhaustive: count all exponent vectors with the right degrees.
                let mut count = 0;
                for e0 in 0..=d1 as u32 {
                    for e1 in 0..=d1 as u32 {
                        for _e3 in 0..=d2 as u32 {
                            // remaining exponents are forced by homogeneity
                            if e0 + e1 <= d1 as u32 {
                                count += 1;
                            }
                        }
                    }
                }
                assert_eq!(b.dim(), count as usize);
                // Strictly descending order.
                for w in b.monomials.windows(2) {
                    assert!(w[0] > w[1]);
                }
            }
        }
    }

    #[test]
    fn sylvester_of_linear_forms() {
        let sp = SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .parameter("p", ["a0", "a1", "b0", "b1"])
            .build()
            .unwrap();
        let f0 = parse_poly("a0*s + a1*t", &sp, Field::Rational).unwrap();
        let f1 = parse_poly("b0*s + b1*t", &sp, Field::Rational).unwrap();
        let mm = matrix_of_map(
            &sp,
            Field::Rational,
            &[MultiDegree(vec![1]), MultiDegree(vec![1])],
            &[f0, f1],
            &MultiDegree(vec![1]),
        )
        .unwrap();
        assert_eq!(mm.matrix.shape(), (2, 2));
        let p = |s: &str| parse_poly(s, &sp, Field::Rational).unwrap();
        assert_eq!(*mm.matrix.get(0, 0), p("a0"));
        assert_eq!(*mm.matrix.get(0, 1), p("b0"));
        assert_eq!(*mm.matrix.get(1, 0), p("a1"));
        assert_eq!(*mm.matrix.get(1, 1), p("b1"));
    }

    #[test]
    fn column_scaling_is_per_block() {
        let sp = SpaceBuilder::new().geometric("st", ["s", "t"]).build().unwrap();
        let p = |s: &str| parse_poly(s, &sp, Field::Rational).unwrap();
        let d = [MultiDegree(vec![2]), MultiDegree(vec![1])];
        let images = [p("s^2 - t^2"), p("s + 2*t")];
        let scaled = [p("3*s^2 - 3*t^2"), p("s + 2*t")];
        let m = MultiDegree(vec![2]);
        let a = matrix_of_map(&sp, Field::Rational, &d, &images, &m).unwrap();
        let b = matrix_of_map(&sp, Field::Rational, &d, &scaled, &m).unwrap();
        let block0_cols = a.col_blocks[0].dim();
        for i in 0..a.matrix.rows() {
            for j in 0..a.matrix.cols() {
                let want = if j < block0_cols {
                    a.matrix.get(i, j).mul_scalar(&Field::Rational.from_i64(3))
                } else {
                    a.matrix.get(i, j).clone()
                };
                assert_eq!(*b.matrix.get(i, j), want);
            }
        }
    }

    #[test]
    fn evaluation_consistency() {
        // matrix * coords(g) = coords(sum g_i * images[i]) for random g.
        let sp = SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .geometric("uv", ["u", "v"])
            .build()
            .unwrap();
        let p = |s: &str| parse_poly(s, &sp, Field::Rational).unwrap();
        let images = [p("s*u + t*v"), p("s*v - 2*t*u")];
        let degs = [MultiDegree(vec![1, 1]), MultiDegree(vec![1, 1])];
        let m = MultiDegree(vec![2, 2]);
        let mm = matrix_of_map(&sp, Field::Rational, &degs, &images, &m).unwrap();

        let mut rng = SplitMix64::new(5);
        for _ in 0..10 {
            // Random g_i in basis(m - d_i).
            let mut combo = MultiPoly::zero(&sp, Field::Rational);
            let mut coords = Vec::new();
            for (i, block) in mm.col_blocks.iter().enumerate() {
                let mut g = MultiPoly::zero(&sp, Field::Rational);
                for mono in &block.monomials {
                    let c = Field::Rational.from_i64(rng.range_i64(-4, 4));
                    coords.push(c.clone());
                    g = g
                        .add(&MultiPoly::from_terms(&sp, Field::Rational, [(mono.clone(), c)]))
                        .unwrap();
                }
                combo = combo.add(&g.mul(&images[i]).unwrap()).unwrap();
            }
            // coords(combo) against matrix * coords.
            for (r, mono) in mm.row_basis.monomials.iter().enumerate() {
                let mut acc = Field::Rational.zero();
                for (c, coord) in coords.iter().enumerate() {
                    let entry = mm.matrix.get(r, c).constant_value().unwrap();
                    acc = acc.add(&entry.mul(coord));
                }
                assert_eq!(acc, combo.coefficient(mono));
            }
        }
    }

    #[test]
    fn matrix_of_map_rejects_wrong_degree_images() {
        let sp = SpaceBuilder::new().geometric("st", ["s", "t"]).build().unwrap();
        let p = |s: &str| parse_poly(s, &sp, Field::Rational).unwrap();
        let err = matrix_of_map(
            &sp,
            Field::Rational,
            &[MultiDegree(vec![2])],
            &[p("s + t")],
            &MultiDegree(vec![3]),
        );
        assert!(matches!(err, Err(crate::error::Error::NotHomogeneous(_))));
        let err = matrix_of_map(
            &sp,
            Field::Rational,
            &[MultiDegree(vec![2])],
            &[p("s^2 + t")],
            &MultiDegree(vec![3]),
        );
        assert!(matches!(err, Err(crate::error::Error::NotHomogeneous(_))));
    }

    #[test]
    fn subsets_order() {
        assert_eq!(subsets(4, 2), vec![
            vec![0, 1], vec![0, 2], vec![0, 3],
            vec![1, 2], vec![1, 3], vec![2, 3],
        ]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
