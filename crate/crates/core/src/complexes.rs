//! Graded pieces of Koszul and Eagon-Northcott complexes, and the
//! cohomology-vanishing combinatorics that selects valid twists.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{basis, subsets, BasisIndex, GradedMap};
use crate::matrix::{MatrixDump, PolyMatrix};
use crate::poly::{Field, MultiDegree, MultiPoly, Space};

/// A finite sequence of graded pieces with differentials of zero
/// composition. `terms[0]` is the rightmost term; `differentials[p]` maps
/// `terms[p+1]` to `terms[p]`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub space: Space,
    pub field: Field,
    /// Each term is a direct sum of graded pieces.
    pub terms: Vec<Vec<BasisIndex>>,
    pub differentials: Vec<PolyMatrix>,
}

impl FreeComplex {
    pub fn term_dim(&self, p: usize) -> usize {
        self.terms[p].iter().map(|b| b.dim()).sum()
    }

    /// Number of terms with nonzero dimension.
    pub fn nonempty_terms(&self) -> usize {
        self.terms.iter().filter(|t| t.iter().any(|b| b.dim() > 0)).count()
    }

    /// Checks d_{p} . d_{p+1} = 0 symbolically for every pair.
    pub fn composition_is_zero(&self) -> bool {
        for w in self.differentials.windows(2) {
            match w[0].mul(&w[1]) {
                Ok(prod) => {
                    if !prod.is_zero() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }

    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            term_twists: self
                .terms
                .iter()
                .map(|t| t.iter().map(|b| b.twist.0.clone()).collect())
                .collect(),
            term_dims: (0..self.terms.len()).map(|p| self.term_dim(p)).collect(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.dump(Vec::new(), Vec::new()))
                .collect(),
        }
    }
}

/// JSON dump: matrix dumps plus twist metadata.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub term_twists: Vec<Vec<Vec<i64>>>,
    pub term_dims: Vec<usize>,
    pub differentials: Vec<MatrixDump>,
}

/// Whether H^j of O(a) on a product of projective spaces of dimensions `l`
/// can be nonzero: per factor H^{j_t}(P^{l_t}, O(a_t)) is nonzero exactly
/// for (j_t = 0, a_t >= 0) or (j_t = l_t, a_t < -l_t), and the factor
/// contributions add up by the Kunneth formula.
pub fn cohomology_nonvanishing(l: &[usize], a: &MultiDegree, j: usize) -> bool {
    assert_eq!(l.len(), a.len());
    // Achievable j-sums, built factor by factor.
    let mut reachable = vec![false; j + 1];
    reachable[0] = true;
    for (t, &lt) in l.iter().enumerate() {
        let mut options = Vec::new();
        if a.get(t) >= 0 {
            options.push(0usize);
        }
        if a.get(t) < -(lt as i64) {
            options.push(lt);
        }
        let mut next = vec![false; j + 1];
        for jj in 0..=j {
            if reachable[jj] {
                for &o in &options {
                    if jj + o <= j {
                        next[jj + o] = true;
                    }
                }
            }
        }
        reachable = next;
    }
    reachable[j]
}

/// Multiplication map S(src) -> S(dst) by `f`, in monomial bases; entries are
/// parameter polynomials.
fn multiplication_block(
    space: &Space,
    field: Field,
    f: &MultiPoly,
    src: &BasisIndex,
    dst: &BasisIndex,
) -> PolyMatrix {
    use std::collections::HashMap;
    let mut row_index: HashMap<&crate::poly::Monomial, usize> = HashMap::new();
    for (i, m) in dst.monomials.iter().enumerate() {
        row_index.insert(m, i);
    }
    let mut out = PolyMatrix::zero(space, field, dst.dim(), src.dim());
    for (c, mono) in src.monomials.iter().enumerate() {
        let shifted = f.mul_monomial(mono);
        for (term, coeff) in shifted.terms() {
            let geo = term.geometric_part(space);
            let row = *row_index.get(&geo).expect("degree bookkeeping");
            let param = term.parameter_part(space);
            let entry = MultiPoly::from_terms(space, field, [(param, coeff.clone())]);
            out.add_to(row, c, &entry);
        }
    }
    out
}

/// Koszul complex of `f_0, ..., f_s` twisted by O(m), as global sections.
///
/// Term p is the direct sum of S(m - sum_{i in I} d_i) over p-subsets I in
/// ascending lexicographic order; the differential takes e_I to
/// sum_k (-1)^{k+1} f_{i_k} e_{I minus i_k}.
pub fn koszul(space: &Space, field: Field, forms: &[MultiPoly], m: &MultiDegree) -> Result<FreeComplex> {
    let degrees: Vec<MultiDegree> = forms
        .iter()
        .map(|f| f.geometric_multidegree())
        .collect::<Result<Vec<_>>>()?;
    let s1 = forms.len();
    let mut term_subsets: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut terms: Vec<Vec<BasisIndex>> = Vec::new();
    for p in 0..=s1 {
        let subs = subsets(s1, p);
        let pieces = subs
            .iter()
            .map(|sub| {
                let mut tw = m.clone();
                for &i in sub {
                    tw = tw.sub(&degrees[i]);
                }
                basis(space, &tw)
            })
            .collect();
        term_subsets.push(subs);
        terms.push(pieces);
    }
    let mut differentials = Vec::new();
    for p in 1..=s1 {
        let src_pieces = &terms[p];
        let dst_pieces = &terms[p - 1];
        let src_offsets = offsets(src_pieces);
        let dst_offsets = offsets(dst_pieces);
        let mut d = PolyMatrix::zero(
            space,
            field,
            dst_pieces.iter().map(BasisIndex::dim).sum(),
            src_pieces.iter().map(BasisIndex::dim).sum(),
        );
        for (si, sub) in term_subsets[p].iter().enumerate() {
            for (k, &ik) in sub.iter().enumerate() {
                let mut reduced = sub.clone();
                reduced.remove(k);
                let di = term_subsets[p - 1]
                    .iter()
                    .position(|t| *t == reduced)
                    .expect("subset bookkeeping");
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let f = if sign == 1 {
                    forms[ik].clone()
                } else {
                    forms[ik].neg()
                };
                let block = multiplication_block(space, field, &f, &src_pieces[si], &dst_pieces[di]);
                copy_block(&mut d, &block, dst_offsets[di], src_offsets[si]);
            }
        }
        differentials.push(d);
    }
    Ok(FreeComplex { space: space.clone(), field, terms, differentials })
}

fn offsets(pieces: &[BasisIndex]) -> Vec<usize> {
    let mut out = Vec::with_capacity(pieces.len());
    let mut acc = 0;
    for b in pieces {
        out.push(acc);
        acc += b.dim();
    }
    out
}

fn copy_block(target: &mut PolyMatrix, block: &PolyMatrix, row0: usize, col0: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let e = block.get(i, j);
            if !e.is_zero() {
                target.add_to(row0 + i, col0 + j, e);
            }
        }
    }
}

/// Eagon-Northcott complex of an n x (n+s) graded map, twisted by O(m), as
/// global sections.
///
/// Term E_p for p >= 1 is the direct sum over (I, alpha) of
/// S(m - sum_{j in I} d_j + sum_{i in alpha} k_i + sum_i k_i), where I runs
/// over (n+p-1)-subsets of the columns and alpha over multisets of p-1 rows;
/// E_0 = S(m). The rightmost differential multiplies by the maximal minors;
/// the higher ones contract one column index against one row index.
pub fn eagon_northcott(phi: &GradedMap, m: &MultiDegree) -> Result<FreeComplex> {
    let space = phi.space().clone();
    let field = phi.field();
    let n = phi.rows();
    let cols = phi.cols();
    if cols < n + 1 {
        return Err(Error::Unsupported(format!(
            "Eagon-Northcott needs at least {} columns, found {cols}",
            n + 1
        )));
    }
    let s = cols - n;
    let k_total = {
        let mut acc = MultiDegree::zero(space.num_geometric_blocks());
        for k in phi.row_degrees() {
            acc = acc.add(k);
        }
        acc
    };

    // Index sets per term: E_0 has the single empty marker.
    let mut term_index: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![vec![(Vec::new(), Vec::new())]];
    let mut terms: Vec<Vec<BasisIndex>> = vec![vec![basis(&space, m)]];
    for p in 1..=s + 1 {
        let col_subs = subsets(cols, n + p - 1);
        let row_multisets = multisets(n, p - 1);
        let mut idx = Vec::new();
        let mut pieces = Vec::new();
        for sub in &col_subs {
            for alpha in &row_multisets {
                let mut tw = m.add(&k_total);
                for &j in sub {
                    tw = tw.sub(&phi.col_degrees()[j]);
                }
                for &i in alpha {
                    tw = tw.add(&phi.row_degrees()[i]);
                }
                idx.push((sub.clone(), alpha.clone()));
                pieces.push(basis(&space, &tw));
            }
        }
        term_index.push(idx);
        terms.push(pieces);
    }

    let mut differentials = Vec::new();
    for p in 1..=s + 1 {
        let src_pieces = &terms[p];
        let dst_pieces = &terms[p - 1];
        let src_offsets = offsets(src_pieces);
        let dst_offsets = offsets(dst_pieces);
        let mut d = PolyMatrix::zero(
            &space,
            field,
            dst_pieces.iter().map(BasisIndex::dim).sum(),
            src_pieces.iter().map(BasisIndex::dim).sum(),
        );
        if p == 1 {
            // e_I -> Delta_I.
            for (si, (sub, _)) in term_index[1].iter().enumerate() {
                let minor = phi.minor(sub)?;
                if minor.is_zero() {
                    continue;
                }
                let block = multiplication_block(&space, field, &minor, &src_pieces[si], &dst_pieces[0]);
                copy_block(&mut d, &block, 0, src_offsets[si]);
            }
        } else {
            // e_I (x) y^alpha -> sum_t sum_{i in alpha} (-1)^{t+1}
            //   phi_{i, I[t]} e_{I minus I[t]} (x) y^{alpha - e_i}.
            for (si, (sub, alpha)) in term_index[p].iter().enumerate() {
                for (t, &jt) in sub.iter().enumerate() {
                    let mut reduced_sub = sub.clone();
                    reduced_sub.remove(t);
                    let sign_pos = t % 2 == 0;
                    let mut seen_rows = Vec::new();
                    for &i in alpha.iter() {
                        if seen_rows.contains(&i) {
                            continue;
                        }
                        seen_rows.push(i);
                        let entry = phi.entry(i, jt);
                        if entry.is_zero() {
                            continue;
                        }
                        let mut reduced_alpha = alpha.clone();
                        let pos = reduced_alpha.iter().position(|&r| r == i).unwrap();
                        reduced_alpha.remove(pos);
                        let di = term_index[p - 1]
                            .iter()
                            .position(|(s2, a2)| *s2 == reduced_sub && *a2 == reduced_alpha)
                            .expect("index bookkeeping");
                        let f = if sign_pos { entry.clone() } else { entry.neg() };
                        let block =
                            multiplication_block(&space, field, &f, &src_pieces[si], &dst_pieces[di]);
                        copy_block(&mut d, &block, dst_offsets[di], src_offsets[si]);
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(FreeComplex { space, field, terms, differentials })
}

/// Multisets of size k over 0..n, ascending (as sorted vectors, lex order).
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// A complex described by the twist shifts of its graded pieces: piece
/// `shift` of term p sits in degree m + shift once the complex is twisted
/// by O(m).
#[derive(Clone, Debug)]
pub struct ComplexTemplate {
    /// Projective dimensions of the geometric factors.
    pub block_dims: Vec<usize>,
    /// Per term, the multidegree shifts of its pieces.
    pub shifts: Vec<Vec<MultiDegree>>,
}

impl ComplexTemplate {
    /// Shifts of the Koszul complex of forms with the given degrees.
    pub fn koszul(block_dims: Vec<usize>, degrees: &[MultiDegree]) -> Self {
        let r = degrees.first().map_or(block_dims.len(), MultiDegree::len);
        let mut shifts = Vec::new();
        for p in 0..=degrees.len() {
            let pieces = subsets(degrees.len(), p)
                .into_iter()
                .map(|sub| {
                    let mut tw = MultiDegree::zero(r);
                    for &i in &sub {
                        tw = tw.sub(&degrees[i]);
                    }
                    tw
                })
                .collect();
            shifts.push(pieces);
        }
        ComplexTemplate { block_dims, shifts }
    }

    /// Shifts of the Eagon-Northcott complex of an n x (n+s) map with
    /// column degrees `d` and row degrees `k`.
    pub fn eagon_northcott(block_dims: Vec<usize>, d: &[MultiDegree], k: &[MultiDegree]) -> Self {
        let n = k.len();
        let s = d.len() - n;
        let r = d.first().map_or(block_dims.len(), MultiDegree::len);
        let mut k_total = MultiDegree::zero(r);
        for ki in k {
            k_total = k_total.add(ki);
        }
        let mut shifts = vec![vec![MultiDegree::zero(r)]];
        for p in 1..=s + 1 {
            let mut pieces = Vec::new();
            for sub in subsets(d.len(), n + p - 1) {
                for alpha in multisets(n, p - 1) {
                    let mut tw = k_total.clone();
                    for &j in &sub {
                        tw = tw.sub(&d[j]);
                    }
                    for &i in &alpha {
                        tw = tw.add(&k[i]);
                    }
                    pieces.push(tw);
                }
            }
            shifts.push(pieces);
        }
        ComplexTemplate { block_dims, shifts }
    }

    /// Report for one candidate twist.
    pub fn report(&self, m: &MultiDegree) -> TwistReport {
        let top: usize = self.block_dims.iter().sum();
        let mut failing = Vec::new();
        for (p, pieces) in self.shifts.iter().enumerate() {
            for shift in pieces {
                let a = m.add(shift);
                for j in 1..=top {
                    if cohomology_nonvanishing(&self.block_dims, &a, j) {
                        failing.push((p, j, a.clone()));
                    }
                }
            }
        }
        TwistReport { twist: m.clone(), valid: failing.is_empty(), failing }
    }
}

/// Outcome of the twist validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub twist: MultiDegree,
    pub valid: bool,
    /// (term index, cohomology degree j, offending multidegree)
    pub failing: Vec<(usize, usize, MultiDegree)>,
}

/// Smallest twist (lexicographically) inside the box `[lo, hi]` for which
/// every term of the template has vanishing higher cohomology.
pub fn min_valid_twist(
    template: &ComplexTemplate,
    lo: &MultiDegree,
    hi: &MultiDegree,
) -> Result<TwistReport> {
    let r = lo.len();
    if r != hi.len() || (0..r).any(|t| lo.get(t) > hi.get(t)) {
        return Err(Error::EmptySearchBox);
    }
    let mut current = lo.clone();
    loop {
        let report = template.report(&current);
        if report.valid {
            return Ok(report);
        }
        // Lexicographic increment, last coordinate fastest.
        let mut t = r;
        loop {
            if t == 0 {
                return Err(Error::NoValidTwist);
            }
            t -= 1;
            if current.get(t) < hi.get(t) {
                current.0[t] += 1;
                break;
            }
            current.0[t] = lo.get(t);
        }
    }
}

/// Default search box upper bound: the sum of all |entries| of the degree
/// sequences, plus the number of blocks.
pub fn default_search_bound(degree_seqs: &[MultiDegree], r: usize) -> MultiDegree {
    let total: i64 = degree_seqs.iter().flat_map(|d| d.0.iter().map(|e| e.abs())).sum();
    MultiDegree(vec![total + r as i64; r])
}
