//! The named resultants: Sylvester, Dixon, determinantal Sylvester,
//! determinantal Dixon, and the determinantal resultant of two
//! parameterized space curves.

use serde::Serialize;

use crate::cayley;
use crate::complexes::{eagon_northcott, min_valid_twist, ComplexTemplate, FreeComplex};
use crate::error::{Error, Result};
use crate::grading::{matrix_of_map, subsets, GradedMap, MapMatrix};
use crate::matrix::{MatrixDump, PolyMatrix};
use crate::poly::{gcd_many, MultiDegree, MultiPoly, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SquareDet,
    ComplexDet,
    GcdMinors,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SquareDet => "square_det",
            Method::ComplexDet => "complex_det",
            Method::GcdMinors => "gcd_minors",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub label: String,
    pub matrix: PolyMatrix,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl LabeledMatrix {
    fn from_map(label: &str, mm: &MapMatrix) -> Self {
        let dump = mm.dump();
        LabeledMatrix {
            label: label.to_string(),
            matrix: mm.matrix.clone(),
            row_labels: dump.row_monomials,
            col_labels: dump.col_monomials,
        }
    }

    pub fn dump(&self) -> MatrixDump {
        self.matrix.dump(self.row_labels.clone(), self.col_labels.clone())
    }
}

/// A computed resultant condition plus how it was obtained.
#[derive(Clone, Debug)]
pub struct ResultantOutput {
    /// Primitive-positive normalized condition polynomial.
    pub condition: MultiPoly,
    /// The determinant / minor-gcd before normalization.
    pub raw: MultiPoly,
    pub method: Method,
    pub twist: MultiDegree,
    pub matrices: Vec<LabeledMatrix>,
}

#[derive(Serialize)]
struct LabeledMatrixDump {
    label: String,
    #[serde(flatten)]
    matrix: MatrixDump,
}

#[derive(Serialize)]
struct ResultantDump {
    condition: String,
    method: &'static str,
    twist: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<LabeledMatrixDump>>,
}

impl ResultantOutput {
    pub fn to_json(&self, include_matrices: bool) -> String {
        let dump = ResultantDump {
            condition: self.condition.to_string(),
            method: self.method.as_str(),
            twist: self.twist.0.clone(),
            matrices: include_matrices.then(|| {
                self.matrices
                    .iter()
                    .map(|lm| LabeledMatrixDump { label: lm.label.clone(), matrix: lm.dump() })
                    .collect()
            }),
        };
        serde_json::to_string(&dump).expect("dump serializes")
    }
}

/// Multidegree supported on the listed blocks with the listed values.
fn degree_on_blocks(r: usize, assignments: &[(usize, i64)]) -> MultiDegree {
    let mut d = MultiDegree::zero(r);
    for &(b, v) in assignments {
        d.0[b] = v;
    }
    d
}

/// The unique geometric block of a projective line on which all listed
/// degrees live; every other block must carry degree zero everywhere.
fn single_p1_block(space: &Space, degrees: &[MultiDegree]) -> Result<usize> {
    let r = space.num_geometric_blocks();
    let mut active = None;
    for d in degrees {
        for t in 0..r {
            if d.get(t) != 0 {
                match active {
                    None => active = Some(t),
                    Some(a) if a == t => {}
                    Some(_) => {
                        return Err(Error::DegreeCondition(
                            "degrees spread over several geometric blocks".into(),
                        ))
                    }
                }
            }
        }
    }
    let t = active.ok_or_else(|| Error::DegreeCondition("all degrees are zero".into()))?;
    if space.geometric_range(t).len() != 2 {
        return Err(Error::DegreeCondition("expected a block of two variables".into()));
    }
    Ok(t)
}

/// The two geometric blocks of a product of two projective lines carrying
/// the given bidegrees.
fn two_p1_blocks(space: &Space, d: &MultiDegree) -> Result<(usize, usize)> {
    let r = space.num_geometric_blocks();
    let active: Vec<usize> = (0..r).filter(|&t| d.get(t) != 0).collect();
    if active.len() != 2 {
        return Err(Error::DegreeCondition(format!(
            "expected a bidegree on two blocks, found {d}"
        )));
    }
    for &t in &active {
        if space.geometric_range(t).len() != 2 {
            return Err(Error::DegreeCondition("expected blocks of two variables".into()));
        }
    }
    Ok((active[0], active[1]))
}

// ---------------------------------------------------------------------------
// Sylvester
// ---------------------------------------------------------------------------

/// Resultant of two binary forms as the determinant of the Sylvester matrix
/// at twist d0 + d1 - 1.
pub fn sylvester(f0: &MultiPoly, f1: &MultiPoly) -> Result<ResultantOutput> {
    let space = f0.space().clone();
    let field = f0.field();
    let e0 = f0.geometric_multidegree()?;
    let e1 = f1.geometric_multidegree()?;
    let block = single_p1_block(&space, &[e0.clone(), e1.clone()])?;
    let (d0, d1) = (e0.get(block), e1.get(block));
    if d0 < 1 || d1 < 1 {
        return Err(Error::DegreeCondition(format!("degrees ({d0},{d1}) must be >= 1")));
    }
    let r = space.num_geometric_blocks();
    let m = degree_on_blocks(r, &[(block, d0 + d1 - 1)]);
    let mm = matrix_of_map(&space, field, &[e0, e1], &[f0.clone(), f1.clone()], &m)?;
    debug_assert!(mm.matrix.is_square());
    let raw = cayley::det(&mm.matrix)?;
    Ok(ResultantOutput {
        condition: raw.normalize_primitive_positive(),
        raw,
        method: Method::SquareDet,
        twist: m,
        matrices: vec![LabeledMatrix::from_map("sylvester", &mm)],
    })
}

// ---------------------------------------------------------------------------
// Dixon
// ---------------------------------------------------------------------------

/// Resultant of three bihomogeneous forms of one bidegree on P^1 x P^1, as
/// the determinant of either square matrix at the twists (2d1-1, 3d2-1) and
/// (3d1-1, 2d2-1); both are built and cross-checked.
pub fn dixon(f0: &MultiPoly, f1: &MultiPoly, f2: &MultiPoly) -> Result<ResultantOutput> {
    let space = f0.space().clone();
    let field = f0.field();
    let d = f0.geometric_multidegree()?;
    for f in [f1, f2] {
        if f.geometric_multidegree()? != d {
            return Err(Error::DegreeCondition("bidegree mismatch".into()));
        }
    }
    let (ba, bb) = two_p1_blocks(&space, &d)?;
    let (d1, d2) = (d.get(ba), d.get(bb));
    if d1 < 1 || d2 < 1 {
        return Err(Error::DegreeCondition(format!("bidegree ({d1},{d2}) must be >= 1")));
    }
    let r = space.num_geometric_blocks();
    let sources = [d.clone(), d.clone(), d.clone()];
    let images = [f0.clone(), f1.clone(), f2.clone()];
    let twist_a = degree_on_blocks(r, &[(ba, 2 * d1 - 1), (bb, 3 * d2 - 1)]);
    let twist_b = degree_on_blocks(r, &[(ba, 3 * d1 - 1), (bb, 2 * d2 - 1)]);
    let mm_a = matrix_of_map(&space, field, &sources, &images, &twist_a)?;
    let mm_b = matrix_of_map(&space, field, &sources, &images, &twist_b)?;
    debug_assert!(mm_a.matrix.is_square() && mm_b.matrix.is_square());
    let det_a = cayley::det(&mm_a.matrix)?;
    let det_b = cayley::det(&mm_b.matrix)?;
    if !det_a.eq_up_to_sign(&det_b) {
        return Err(Error::Unsupported(
            "internal error: the two Dixon twists disagree".into(),
        ));
    }
    Ok(ResultantOutput {
        condition: det_a.normalize_primitive_positive(),
        raw: det_a,
        method: Method::SquareDet,
        twist: twist_a,
        matrices: vec![
            LabeledMatrix::from_map("dixon_first_twist", &mm_a),
            LabeledMatrix::from_map("dixon_second_twist", &mm_b),
        ],
    })
}

// ---------------------------------------------------------------------------
// Determinantal Sylvester
// ---------------------------------------------------------------------------

/// Degree metadata: the condition is homogeneous of degree
/// N_i = sum(d) - sum(k) - d_i in the entries of column i, with total degree
/// n*sum(d) - (n+1)*sum(k).
pub fn det_sylvester_degrees(d: &[i64], k: &[i64]) -> (Vec<i64>, i64) {
    let sd: i64 = d.iter().sum();
    let sk: i64 = k.iter().sum();
    let n = k.len() as i64;
    let per_col = d.iter().map(|di| sd - sk - di).collect();
    (per_col, n * sd - (n + 1) * sk)
}

/// Rank-drop condition for an n x (n+1) graded map over a projective line.
///
/// With equal row twists this is the determinant of one square matrix of
/// size sum(d_i - k); otherwise it is the determinant of the three-term
/// Eagon-Northcott complex at the smallest valid twist.
pub fn det_sylvester(phi: &GradedMap) -> Result<ResultantOutput> {
    let space = phi.space().clone();
    let field = phi.field();
    let n = phi.rows();
    if phi.cols() != n + 1 {
        return Err(Error::DegreeCondition(format!(
            "expected an n x (n+1) map, found {}x{}",
            n,
            phi.cols()
        )));
    }
    let mut all_degrees: Vec<MultiDegree> = phi.col_degrees().to_vec();
    all_degrees.extend(phi.row_degrees().iter().cloned());
    let block = single_p1_block(&space, &all_degrees)?;
    let d: Vec<i64> = phi.col_degrees().iter().map(|x| x.get(block)).collect();
    let k: Vec<i64> = phi.row_degrees().iter().map(|x| x.get(block)).collect();
    for &di in &d {
        for &kj in &k {
            if di - kj <= 0 {
                return Err(Error::DegreeCondition(format!(
                    "need d_i - k_j > 0, found {di} - {kj}"
                )));
            }
        }
    }
    let r = space.num_geometric_blocks();
    let all_equal = k.windows(2).all(|w| w[0] == w[1]);
    if all_equal {
        let kk = k[0];
        // Signed maximal minors: image i is (-1)^i * det(phi without column i).
        let mut sources = Vec::with_capacity(n + 1);
        let mut images = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let cols: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let minor = phi.minor(&cols)?;
            images.push(if i % 2 == 0 { minor } else { minor.neg() });
            sources.push(phi.minor_degree(&cols));
        }
        let m_val: i64 = d.iter().map(|di| di - kk).sum::<i64>() - 1;
        let m = degree_on_blocks(r, &[(block, m_val)]);
        let mm = matrix_of_map(&space, field, &sources, &images, &m)?;
        debug_assert!(mm.matrix.is_square());
        let raw = cayley::det(&mm.matrix)?;
        return Ok(ResultantOutput {
            condition: raw.normalize_primitive_positive(),
            raw,
            method: Method::SquareDet,
            twist: m,
            matrices: vec![LabeledMatrix::from_map("det_sylvester", &mm)],
        });
    }
    // Unequal twists: three-term complex at the smallest valid twist.
    let template = ComplexTemplate::eagon_northcott(
        space.block_dims(),
        phi.col_degrees(),
        phi.row_degrees(),
    );
    let lo = MultiDegree::zero(r);
    let hi = crate::complexes::default_search_bound(&all_degrees, r);
    let report = min_valid_twist(&template, &lo, &hi)?;
    let complex = eagon_northcott(phi, &report.twist)?;
    let raw = cayley::determinant_of_complex_raw(&complex)?;
    let matrices = complex_matrices(&complex);
    Ok(ResultantOutput {
        condition: raw.normalize_primitive_positive(),
        raw,
        method: Method::ComplexDet,
        twist: report.twist,
        matrices,
    })
}

/// Minor-gcd fallback for the determinantal Sylvester resultant: the gcd of
/// the maximal minors of the signed-minor map at the smallest valid twist.
/// The condition divides the output.
pub fn det_sylvester_gcd_minors(phi: &GradedMap, budget: usize) -> Result<ResultantOutput> {
    let space = phi.space().clone();
    let field = phi.field();
    let n = phi.rows();
    if phi.cols() != n + 1 {
        return Err(Error::DegreeCondition(format!(
            "expected an n x (n+1) map, found {}x{}",
            n,
            phi.cols()
        )));
    }
    let mut all_degrees: Vec<MultiDegree> = phi.col_degrees().to_vec();
    all_degrees.extend(phi.row_degrees().iter().cloned());
    single_p1_block(&space, &all_degrees)?;
    let template = ComplexTemplate::eagon_northcott(
        space.block_dims(),
        phi.col_degrees(),
        phi.row_degrees(),
    );
    let r = space.num_geometric_blocks();
    let lo = MultiDegree::zero(r);
    let hi = crate::complexes::default_search_bound(&all_degrees, r);
    let twist = min_valid_twist(&template, &lo, &hi)?.twist;
    let mut sources = Vec::with_capacity(n + 1);
    let mut images = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let cols: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
        let minor = phi.minor(&cols)?;
        images.push(if i % 2 == 0 { minor } else { minor.neg() });
        sources.push(phi.minor_degree(&cols));
    }
    let mm = matrix_of_map(&space, field, &sources, &images, &twist)?;
    let target = mm.row_basis.dim();
    let raw = cayley::gcd_of_maximal_minors(&mm.matrix, target, budget)?;
    Ok(ResultantOutput {
        condition: raw.normalize_primitive_positive(),
        raw,
        method: Method::GcdMinors,
        twist,
        matrices: vec![LabeledMatrix::from_map("det_sylvester_minors", &mm)],
    })
}

fn complex_matrices(c: &FreeComplex) -> Vec<LabeledMatrix> {
    c.differentials
        .iter()
        .enumerate()
        .map(|(i, d)| LabeledMatrix {
            label: format!("differential_{i}"),
            matrix: d.clone(),
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Determinantal Dixon
// ---------------------------------------------------------------------------

/// Rank-drop condition for an n x (n+2) map on P^1 x P^1 with all entries of
/// one bidegree (d1, d2): the determinant of either square matrix of size
/// (n+2)(n+1)d1d2, built from the maximal minors.
pub fn det_dixon(phi: &GradedMap) -> Result<ResultantOutput> {
    let space = phi.space().clone();
    let field = phi.field();
    let n = phi.rows();
    if phi.cols() != n + 2 {
        return Err(Error::DegreeCondition(format!(
            "expected an n x (n+2) map, found {}x{}",
            n,
            phi.cols()
        )));
    }
    if phi.row_degrees().iter().any(|k| k.0.iter().any(|&v| v != 0)) {
        return Err(Error::DegreeCondition("row twists must be zero".into()));
    }
    let d = phi.col_degrees()[0].clone();
    if phi.col_degrees().iter().any(|x| *x != d) {
        return Err(Error::DegreeCondition("all entries must share one bidegree".into()));
    }
    let (ba, bb) = two_p1_blocks(&space, &d)?;
    let (d1, d2) = (d.get(ba), d.get(bb));
    if d1 < 1 || d2 < 1 {
        return Err(Error::DegreeCondition(format!("bidegree ({d1},{d2}) must be >= 1")));
    }
    let r = space.num_geometric_blocks();
    let nn = n as i64;
    let mut sources = Vec::new();
    let mut images = Vec::new();
    for cols in subsets(n + 2, n) {
        images.push(phi.minor(&cols)?);
        sources.push(phi.minor_degree(&cols));
    }
    let twist_a = degree_on_blocks(r, &[(ba, (nn + 1) * d1 - 1), (bb, (nn + 2) * d2 - 1)]);
    let twist_b = degree_on_blocks(r, &[(ba, (nn + 2) * d1 - 1), (bb, (nn + 1) * d2 - 1)]);
    let mm_a = matrix_of_map(&space, field, &sources, &images, &twist_a)?;
    let mm_b = matrix_of_map(&space, field, &sources, &images, &twist_b)?;
    debug_assert!(mm_a.matrix.is_square() && mm_b.matrix.is_square());
    let det_a = cayley::det(&mm_a.matrix)?;
    let det_b = cayley::det(&mm_b.matrix)?;
    if !det_a.eq_up_to_sign(&det_b) {
        return Err(Error::Unsupported(
            "internal error: the two determinantal Dixon twists disagree".into(),
        ));
    }
    Ok(ResultantOutput {
        condition: det_a.normalize_primitive_positive(),
        raw: det_a,
        method: Method::SquareDet,
        twist: twist_a,
        matrices: vec![
            LabeledMatrix::from_map("det_dixon_first_twist", &mm_a),
            LabeledMatrix::from_map("det_dixon_second_twist", &mm_b),
        ],
    })
}

// ---------------------------------------------------------------------------
// Twist overrides: resultants as determinants of complexes
// ---------------------------------------------------------------------------

/// Resultant of the forms as the determinant of their Koszul complex at the
/// given twist; the twist is rejected when higher cohomology survives.
pub fn koszul_determinant(forms: &[MultiPoly], twist: &MultiDegree) -> Result<ResultantOutput> {
    let space = forms
        .first()
        .ok_or(Error::ZeroInput)?
        .space()
        .clone();
    let field = forms[0].field();
    let degrees: Vec<MultiDegree> = forms
        .iter()
        .map(|f| f.geometric_multidegree())
        .collect::<Result<Vec<_>>>()?;
    let template = ComplexTemplate::koszul(space.block_dims(), &degrees);
    let report = template.report(twist);
    if !report.valid {
        return Err(Error::DegreeCondition(format!(
            "twist {twist} is not valid for this complex"
        )));
    }
    let complex = crate::complexes::koszul(&space, field, forms, twist)?;
    let raw = cayley::determinant_of_complex_raw(&complex)?;
    let matrices = complex_matrices(&complex);
    Ok(ResultantOutput {
        condition: raw.normalize_primitive_positive(),
        raw,
        method: Method::ComplexDet,
        twist: twist.clone(),
        matrices,
    })
}

/// Determinantal resultant of a graded map as the determinant of its
/// Eagon-Northcott complex at the given twist.
pub fn eagon_northcott_determinant(phi: &GradedMap, twist: &MultiDegree) -> Result<ResultantOutput> {
    let template = ComplexTemplate::eagon_northcott(
        phi.space().block_dims(),
        phi.col_degrees(),
        phi.row_degrees(),
    );
    let report = template.report(twist);
    if !report.valid {
        return Err(Error::DegreeCondition(format!(
            "twist {twist} is not valid for this complex"
        )));
    }
    let complex = eagon_northcott(phi, twist)?;
    let raw = cayley::determinant_of_complex_raw(&complex)?;
    let matrices = complex_matrices(&complex);
    Ok(ResultantOutput {
        condition: raw.normalize_primitive_positive(),
        raw,
        method: Method::ComplexDet,
        twist: twist.clone(),
        matrices,
    })
}

// ---------------------------------------------------------------------------
// Two parameterized space curves
// ---------------------------------------------------------------------------

fn row_multidegree(forms: &[MultiPoly], which: &str) -> Result<MultiDegree> {
    let nonzero = forms
        .iter()
        .find(|p| !p.is_zero())
        .ok_or(Error::ZeroInput)?;
    let d = nonzero.geometric_multidegree()?;
    for p in forms {
        if !p.is_zero() && p.geometric_multidegree()? != d {
            return Err(Error::NotHomogeneous(format!("{which} mixes degrees")));
        }
    }
    Ok(d)
}

/// The 2 x 4 graded map whose rows are the two parameterizations.
pub fn curves_graded_map(f: &[MultiPoly; 4], g: &[MultiPoly; 4]) -> Result<GradedMap> {
    let space = f[0].space().clone();
    let field = f[0].field();
    let df = row_multidegree(f.as_slice(), "first parameterization")?;
    let dg = row_multidegree(g.as_slice(), "second parameterization")?;
    let r = space.num_geometric_blocks();
    let rows = vec![df.scale(-1), dg.scale(-1)];
    let cols = vec![MultiDegree::zero(r); 4];
    GradedMap::new(
        &space,
        field,
        rows,
        cols,
        vec![f.to_vec(), g.to_vec()],
    )
}

fn curve_degrees(f: &[MultiPoly; 4], g: &[MultiPoly; 4]) -> Result<(usize, usize, i64, i64)> {
    let space = f[0].space().clone();
    let df = row_multidegree(f.as_slice(), "first parameterization")?;
    let dg = row_multidegree(g.as_slice(), "second parameterization")?;
    let bf = single_p1_block(&space, std::slice::from_ref(&df))?;
    let bg = single_p1_block(&space, std::slice::from_ref(&dg))?;
    if bf == bg {
        return Err(Error::DegreeCondition(
            "the two parameterizations must use different variable blocks".into(),
        ));
    }
    let m = df.get(bf);
    let n = dg.get(bg);
    if m < 1 || n < 1 {
        return Err(Error::DegreeCondition(format!("degrees ({m},{n}) must be >= 1")));
    }
    Ok((bf, bg, m, n))
}

/// The six 2x2 minors f_i g_j - f_j g_i in lexicographic pair order.
pub fn curve_pair_minors(f: &[MultiPoly; 4], g: &[MultiPoly; 4]) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::with_capacity(6);
    for pair in subsets(4, 2) {
        let (i, j) = (pair[0], pair[1]);
        out.push(f[i].mul(&g[j])?.sub(&f[j].mul(&g[i])?)?);
    }
    Ok(out)
}

fn check_base_point_free(forms: &[MultiPoly], which: &str) -> Result<()> {
    let g = gcd_many(forms)?;
    if !g.is_constant() {
        return Err(Error::BasePoints(format!("{which}: common factor {g}")));
    }
    Ok(())
}

/// Rank-drop condition for the 2x4 matrix of two parameterizations: the
/// 9mn x 24mn matrix of the six minors at twist (3m-1, 3n-1), reduced by
/// the gcd of its maximal minors.
pub fn curves_res(f: &[MultiPoly; 4], g: &[MultiPoly; 4], budget: usize) -> Result<ResultantOutput> {
    let space = f[0].space().clone();
    let field = f[0].field();
    let (bf, bg, m, n) = curve_degrees(f, g)?;
    check_base_point_free(f, "first row")?;
    check_base_point_free(g, "second row")?;
    let minors = curve_pair_minors(f, g)?;
    let r = space.num_geometric_blocks();
    let bideg = degree_on_blocks(r, &[(bf, m), (bg, n)]);
    let sources = vec![bideg; 6];
    let twist = degree_on_blocks(r, &[(bf, 3 * m - 1), (bg, 3 * n - 1)]);
    let mm = matrix_of_map(&space, field, &sources, &minors, &twist)?;
    debug_assert_eq!(mm.matrix.rows() as i64, 9 * m * n);
    debug_assert_eq!(mm.matrix.cols() as i64, 24 * m * n);
    let target = (9 * m * n) as usize;
    let raw = cayley::gcd_of_maximal_minors(&mm.matrix, target, budget)?;
    Ok(ResultantOutput {
        condition: raw.normalize_primitive_positive(),
        raw,
        method: Method::GcdMinors,
        twist,
        matrices: vec![LabeledMatrix::from_map("curve_pair_minors", &mm)],
    })
}

/// Eagon-Northcott complex of the curve pair at twist (p, q); its
/// determinant equals the curve resultant for p >= 3m-1, q >= 3n-1.
pub fn curves_complex(f: &[MultiPoly; 4], g: &[MultiPoly; 4], p: i64, q: i64) -> Result<FreeComplex> {
    let (bf, bg, _, _) = curve_degrees(f, g)?;
    let phi = curves_graded_map(f, g)?;
    let r = f[0].space().num_geometric_blocks();
    let twist = degree_on_blocks(r, &[(bf, p), (bg, q)]);
    eagon_northcott(&phi, &twist)
}
