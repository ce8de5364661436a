//! Intersection detectors for families of space curves.
//!
//! Three input situations are supported: both families implicit, both
//! parameterized, and the mixed case. Each detector returns a condition
//! polynomial in the family parameters together with the guarantee it
//! carries: `Exact` conditions vanish exactly at intersecting parameter
//! pairs, `Divisor` conditions are vanishing-sound multiples of the exact
//! one (the true condition divides them).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cayley;
use crate::error::{Error, Result};
use crate::grading::{basis, matrix_of_map, GradedMap};
use crate::poly::{gcd_many, MultiDegree, MultiPoly, Scalar, Space};
use crate::resultants::{self, Method};

/// A family of space curves.
#[derive(Clone, Debug)]
pub enum CurveFamily {
    /// Four binary forms of one degree in a projective-line block, with
    /// parameters allowed in the coefficients.
    Parametric { forms: [MultiPoly; 4], degree: i64, block: usize },
    /// Implicit equations in the coordinates of projective three-space,
    /// sorted by descending degree.
    ImplicitList { forms: Vec<MultiPoly>, degrees: Vec<i64>, block: usize },
    /// An n x (n+1) matrix of forms whose maximal minors cut out the curves.
    HilbertBurch { map: GradedMap },
}

impl CurveFamily {
    /// Four forms of a common degree on one two-variable block.
    pub fn parametric(forms: [MultiPoly; 4]) -> Result<Self> {
        let nonzero = forms
            .iter()
            .find(|f| !f.is_zero())
            .ok_or(Error::ZeroInput)?;
        let (block, degree) = nonzero.single_block_degree()?;
        let space = nonzero.space();
        if space.geometric_range(block).len() != 2 {
            return Err(Error::DegreeCondition("parameterization block must be a line".into()));
        }
        for f in &forms {
            if !f.is_zero() {
                let (b, d) = f.single_block_degree()?;
                if b != block || d != degree {
                    return Err(Error::NotHomogeneous(
                        "parameterization coordinates must share one degree".into(),
                    ));
                }
            }
        }
        if degree < 1 {
            return Err(Error::DegreeCondition("parameterization degree must be >= 1".into()));
        }
        Ok(CurveFamily::Parametric { forms, degree, block })
    }

    /// Implicit equations; they are sorted by descending degree.
    pub fn implicit_list(forms: Vec<MultiPoly>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::ZeroInput);
        }
        let mut with_deg = Vec::new();
        let mut block = None;
        for f in forms {
            let (b, d) = f.single_block_degree()?;
            match block {
                None => {
                    let space = f.space();
                    if space.geometric_range(b).len() != 4 {
                        return Err(Error::DegreeCondition(
                            "implicit equations must live in a four-variable block".into(),
                        ));
                    }
                    block = Some(b)
                }
                Some(bb) if bb == b => {}
                Some(_) => {
                    return Err(Error::DegreeCondition(
                        "implicit equations must share one block".into(),
                    ))
                }
            }
            if d < 1 {
                return Err(Error::DegreeCondition("implicit equation of degree zero".into()));
            }
            with_deg.push((d, f));
        }
        with_deg.sort_by_key(|entry| std::cmp::Reverse(entry.0));
        let degrees = with_deg.iter().map(|(d, _)| *d).collect();
        let forms = with_deg.into_iter().map(|(_, f)| f).collect();
        Ok(CurveFamily::ImplicitList { forms, degrees, block: block.unwrap() })
    }

    pub fn hilbert_burch(map: GradedMap) -> Result<Self> {
        if map.cols() != map.rows() + 1 {
            return Err(Error::DegreeCondition(format!(
                "a Hilbert-Burch matrix is n x (n+1), found {}x{}",
                map.rows(),
                map.cols()
            )));
        }
        Ok(CurveFamily::HilbertBurch { map })
    }

    /// The implicit equations of a Hilbert-Burch family: the maximal minors.
    pub fn implicit_from_hilbert_burch(map: &GradedMap) -> Result<Vec<MultiPoly>> {
        Ok(map
            .maximal_minors()?
            .into_iter()
            .map(|(_, m)| m)
            .filter(|m| !m.is_zero())
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    /// Vanishes exactly at intersecting parameter values.
    Exact,
    /// The exact condition divides it; vanishing is sound, not sharp.
    Divisor,
}

impl Guarantee {
    pub fn as_str(self) -> &'static str {
        match self {
            Guarantee::Exact => "exact",
            Guarantee::Divisor => "divisor",
        }
    }
}

/// Detector output: the condition polynomial in the parameters.
///
/// An identically zero condition reports that every member pair intersects
/// (one family is contained in the other's surfaces).
#[derive(Clone, Debug)]
pub struct IntersectionCondition {
    pub condition: MultiPoly,
    pub guarantee: Guarantee,
    pub detector: &'static str,
    pub method: Method,
    pub matrix_shapes: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct ConditionDump {
    condition: String,
    guarantee: &'static str,
    detector: &'static str,
    method: &'static str,
    matrix_shapes: Vec<(usize, usize)>,
    always_intersecting: bool,
}

impl IntersectionCondition {
    pub fn always_intersecting(&self) -> bool {
        self.condition.is_zero()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ConditionDump {
            condition: self.condition.to_string(),
            guarantee: self.guarantee.as_str(),
            detector: self.detector,
            method: self.method.as_str(),
            matrix_shapes: self.matrix_shapes.clone(),
            always_intersecting: self.always_intersecting(),
        })
        .expect("dump serializes")
    }
}

/// Options shared by the detectors.
#[derive(Clone, Copy, Debug)]
pub struct DetectOptions {
    /// Stability budget for minor sampling.
    pub minors_budget: usize,
    /// Route the parametric/parametric detector through the curve-pair
    /// resultant at twist (3m-1, 3n-1) instead of (3m-3, 3n-3).
    pub use_curves_res: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions { minors_budget: 3, use_curves_res: false }
    }
}

/// Divides the four coordinates by their common factor over the full
/// coefficient ring, parameters included.
pub fn remove_base_points(family: &CurveFamily) -> Result<CurveFamily> {
    let CurveFamily::Parametric { forms, .. } = family else {
        return Err(Error::Unsupported("base points only apply to parameterizations".into()));
    };
    if forms.iter().all(|f| f.is_zero()) {
        return Err(Error::ZeroInput);
    }
    let g = gcd_many(forms)?;
    if g.is_constant() {
        return Ok(family.clone());
    }
    let reduced: Vec<MultiPoly> = forms
        .iter()
        .map(|f| f.div_exact(&g).ok_or(Error::DivisionNotExact))
        .collect::<Result<Vec<_>>>()?;
    CurveFamily::parametric([
        reduced[0].clone(),
        reduced[1].clone(),
        reduced[2].clone(),
        reduced[3].clone(),
    ])
}

fn implicit_data(family: &CurveFamily) -> Result<(Vec<MultiPoly>, Vec<i64>, usize)> {
    match family {
        CurveFamily::ImplicitList { forms, degrees, block } => {
            Ok((forms.clone(), degrees.clone(), *block))
        }
        CurveFamily::HilbertBurch { map } => {
            let forms = CurveFamily::implicit_from_hilbert_burch(map)?;
            let fam = CurveFamily::implicit_list(forms)?;
            implicit_data(&fam)
        }
        CurveFamily::Parametric { .. } => {
            Err(Error::Unsupported("expected an implicit family".into()))
        }
    }
}

/// Intersection condition for two implicit families: the map
/// `(g_i) -> sum g_i H_i` in degree delta, where delta is the sum of the
/// four greatest input degrees minus three. Exact when the matrix is a
/// single square determinant, divisor-guarantee otherwise.
pub fn detect_ii(c: &CurveFamily, d: &CurveFamily, opts: &DetectOptions) -> Result<IntersectionCondition> {
    let (mut forms, mut degrees, block_c) = implicit_data(c)?;
    let (forms_d, degrees_d, block_d) = implicit_data(d)?;
    if block_c != block_d {
        return Err(Error::SpaceMismatch);
    }
    forms.extend(forms_d);
    degrees.extend(degrees_d);
    if forms.len() < 4 {
        return Err(Error::DegreeCondition(format!(
            "need at least 4 equations in total, found {}",
            forms.len()
        )));
    }
    let space = forms[0].space().clone();
    let field = forms[0].field();
    let mut sorted = degrees.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let delta: i64 = sorted.iter().take(4).sum::<i64>() - 3;
    let r = space.num_geometric_blocks();
    let mut m = MultiDegree::zero(r);
    m.0[block_c] = delta;
    let sources: Vec<MultiDegree> = forms
        .iter()
        .map(|f| f.geometric_multidegree())
        .collect::<Result<Vec<_>>>()?;
    let mm = matrix_of_map(&space, field, &sources, &forms, &m)?;
    let shape = mm.matrix.shape();
    let target = basis(&space, &m).dim();
    if forms.len() == 4 && mm.matrix.is_square() {
        let raw = cayley::det(&mm.matrix)?;
        return Ok(IntersectionCondition {
            condition: raw.normalize_primitive_positive(),
            guarantee: Guarantee::Exact,
            detector: "ii",
            method: Method::SquareDet,
            matrix_shapes: vec![shape],
        });
    }
    let g = cayley::gcd_of_maximal_minors(&mm.matrix, target, opts.minors_budget)?;
    Ok(IntersectionCondition {
        condition: g.normalize_primitive_positive(),
        guarantee: Guarantee::Divisor,
        detector: "ii",
        method: Method::GcdMinors,
        matrix_shapes: vec![shape],
    })
}

fn parametric_forms(family: &CurveFamily) -> Result<(&[MultiPoly; 4], i64, usize)> {
    match family {
        CurveFamily::Parametric { forms, degree, block } => Ok((forms, *degree, *block)),
        _ => Err(Error::Unsupported("expected a parameterized family".into())),
    }
}

/// Intersection condition for two parameterized families via the six 2x2
/// minors of the combined 2x4 matrix at bidegree (3m-3, 3n-3); degenerate
/// degrees (m < 2 or n < 2) route through the curve-pair resultant, as does
/// the explicit option flag.
pub fn detect_pp(c: &CurveFamily, d: &CurveFamily, opts: &DetectOptions) -> Result<IntersectionCondition> {
    let (f, m, bf) = parametric_forms(c)?;
    let (g, n, bg) = parametric_forms(d)?;
    if bf == bg {
        return Err(Error::DegreeCondition(
            "the two parameterizations must use different blocks".into(),
        ));
    }
    let gf = gcd_many(f.as_slice())?;
    if !gf.is_constant() {
        return Err(Error::BasePoints(format!("first family: common factor {gf}")));
    }
    let gg = gcd_many(g.as_slice())?;
    if !gg.is_constant() {
        return Err(Error::BasePoints(format!("second family: common factor {gg}")));
    }
    if opts.use_curves_res || m < 2 || n < 2 {
        let out = resultants::curves_res(f, g, opts.minors_budget.max(3))?;
        let shape = out.matrices[0].matrix.shape();
        return Ok(IntersectionCondition {
            condition: out.condition,
            guarantee: Guarantee::Divisor,
            detector: "pp",
            method: Method::GcdMinors,
            matrix_shapes: vec![shape],
        });
    }
    let space = f[0].space().clone();
    let field = f[0].field();
    let minors = resultants::curve_pair_minors(f, g)?;
    let r = space.num_geometric_blocks();
    let mut bideg = MultiDegree::zero(r);
    bideg.0[bf] = m;
    bideg.0[bg] = n;
    let mut twist = MultiDegree::zero(r);
    twist.0[bf] = 3 * m - 3;
    twist.0[bg] = 3 * n - 3;
    let sources = vec![bideg; 6];
    let mm = matrix_of_map(&space, field, &sources, &minors, &twist)?;
    let shape = mm.matrix.shape();
    let target = basis(&space, &twist).dim();
    let g_out = cayley::gcd_of_maximal_minors(&mm.matrix, target, opts.minors_budget)?;
    Ok(IntersectionCondition {
        condition: g_out.normalize_primitive_positive(),
        guarantee: Guarantee::Divisor,
        detector: "pp",
        method: Method::GcdMinors,
        matrix_shapes: vec![shape],
    })
}

/// Intersection condition for a parameterized family against an implicit
/// one, by substituting the parameterization into the implicit data: two
/// equations give a Sylvester resultant, a Hilbert-Burch matrix gives the
/// determinantal Sylvester resultant. Both carry the exact guarantee.
pub fn detect_pi(c: &CurveFamily, d: &CurveFamily, _opts: &DetectOptions) -> Result<IntersectionCondition> {
    let (f, degree_m, _) = parametric_forms(c)?;
    let gf = gcd_many(f.as_slice())?;
    if !gf.is_constant() {
        return Err(Error::BasePoints(format!("parametric family: common factor {gf}")));
    }
    let space = f[0].space().clone();
    match d {
        CurveFamily::ImplicitList { forms, block, .. } => {
            if forms.len() != 2 {
                return Err(Error::NeedHilbertBurch);
            }
            let bindings = coordinate_bindings(&space, *block, f)?;
            let h0 = forms[0].substitute(&bindings)?;
            let h1 = forms[1].substitute(&bindings)?;
            if h0.is_zero() || h1.is_zero() {
                // A family contained in one of the surfaces: the remaining
                // binary form always has a projective root.
                return Ok(IntersectionCondition {
                    condition: MultiPoly::zero(&space, f[0].field()),
                    guarantee: Guarantee::Exact,
                    detector: "pi",
                    method: Method::SquareDet,
                    matrix_shapes: Vec::new(),
                });
            }
            let out = resultants::sylvester(&h0, &h1)?;
            let shape = out.matrices[0].matrix.shape();
            Ok(IntersectionCondition {
                condition: out.condition,
                guarantee: Guarantee::Exact,
                detector: "pi",
                method: out.method,
                matrix_shapes: vec![shape],
            })
        }
        CurveFamily::HilbertBurch { map } => {
            let block = single_block_of_map(map)?;
            let bindings = coordinate_bindings(&space, block, f)?;
            let n = map.rows();
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n + 1);
                for j in 0..=n {
                    row.push(map.entry(i, j).substitute(&bindings)?);
                }
                rows.push(row);
            }
            let r = space.num_geometric_blocks();
            let (_, _, pblock) = parametric_forms(c)?;
            // Degrees scale by the parameterization degree and move onto
            // the parameter-line block.
            let scale = |md: &MultiDegree| -> MultiDegree {
                let mut out = MultiDegree::zero(r);
                out.0[pblock] = md.0.iter().sum::<i64>() * degree_m;
                out
            };
            let row_degrees: Vec<MultiDegree> = map.row_degrees().iter().map(&scale).collect();
            let col_degrees: Vec<MultiDegree> = map.col_degrees().iter().map(&scale).collect();
            let phi = GradedMap::new(&space, f[0].field(), row_degrees, col_degrees, rows)?;
            let out = resultants::det_sylvester(&phi)?;
            let shape = out.matrices[0].matrix.shape();
            Ok(IntersectionCondition {
                condition: out.condition,
                guarantee: Guarantee::Exact,
                detector: "pi",
                method: out.method,
                matrix_shapes: vec![shape],
            })
        }
        CurveFamily::Parametric { .. } => {
            Err(Error::Unsupported("second family must be implicit".into()))
        }
    }
}

fn single_block_of_map(map: &GradedMap) -> Result<usize> {
    for i in 0..map.rows() {
        for j in 0..map.cols() {
            let e = map.entry(i, j);
            if !e.is_zero() {
                if let Ok((b, _)) = e.single_block_degree() {
                    return Ok(b);
                }
            }
        }
    }
    Err(Error::ZeroInput)
}

/// Bindings sending the coordinates of the implicit block to the four
/// parameterization forms.
fn coordinate_bindings(
    space: &Space,
    block: usize,
    f: &[MultiPoly; 4],
) -> Result<BTreeMap<String, MultiPoly>> {
    let range = space.geometric_range(block);
    if range.len() != 4 {
        return Err(Error::DegreeCondition(
            "implicit equations must live in a four-variable block".into(),
        ));
    }
    let mut bindings = BTreeMap::new();
    for (offset, i) in range.enumerate() {
        bindings.insert(space.var_name(i).to_string(), f[offset].clone());
    }
    Ok(bindings)
}

// ---------------------------------------------------------------------------
// Specialization
// ---------------------------------------------------------------------------

/// Evaluate a condition polynomial at bound parameter values.
pub fn evaluate_condition(cond: &MultiPoly, values: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    cond.evaluate(values)
}

/// Which detector a direct specialization should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetectorKind {
    ParametricParametric,
    ImplicitImplicit,
    ParametricImplicit,
}

fn specialize_family(family: &CurveFamily, values: &BTreeMap<String, Scalar>) -> Result<CurveFamily> {
    Ok(match family {
        CurveFamily::Parametric { forms, .. } => {
            let mut out = Vec::with_capacity(4);
            for f in forms.iter() {
                out.push(f.eval_vars(values)?);
            }
            CurveFamily::parametric([
                out[0].clone(),
                out[1].clone(),
                out[2].clone(),
                out[3].clone(),
            ])?
        }
        CurveFamily::ImplicitList { forms, .. } => {
            let forms = forms
                .iter()
                .map(|f| f.eval_vars(values))
                .collect::<Result<Vec<_>>>()?;
            CurveFamily::implicit_list(forms)?
        }
        CurveFamily::HilbertBurch { map } => {
            CurveFamily::HilbertBurch { map: map.eval_vars(values)? }
        }
    })
}

/// Substitute the parameter values first, then run the scalar matrix test
/// directly: a determinant test for the mixed detector, a rank-drop test
/// for the other two. Returns true when the specialized curves intersect.
pub fn specialize_detect(
    kind: DetectorKind,
    c: &CurveFamily,
    d: &CurveFamily,
    values: &BTreeMap<String, Scalar>,
    opts: &DetectOptions,
) -> Result<bool> {
    let cs = specialize_family(c, values)?;
    let ds = specialize_family(d, values)?;
    match kind {
        DetectorKind::ParametricImplicit => {
            let out = detect_pi(&cs, &ds, opts)?;
            let v = out
                .condition
                .constant_value()
                .ok_or_else(|| Error::UnboundParameter("condition not fully specialized".into()))?;
            Ok(v.is_zero())
        }
        DetectorKind::ParametricParametric => {
            let (f, m, bf) = parametric_forms(&cs)?;
            let (g, n, bg) = parametric_forms(&ds)?;
            let space = f[0].space().clone();
            let field = f[0].field();
            let minors = resultants::curve_pair_minors(f, g)?;
            let r = space.num_geometric_blocks();
            let mut bideg = MultiDegree::zero(r);
            bideg.0[bf] = m;
            bideg.0[bg] = n;
            let mut twist = MultiDegree::zero(r);
            let (t1, t2) = if m < 2 || n < 2 || opts.use_curves_res {
                (3 * m - 1, 3 * n - 1)
            } else {
                (3 * m - 3, 3 * n - 3)
            };
            twist.0[bf] = t1;
            twist.0[bg] = t2;
            let mm = matrix_of_map(&space, field, &vec![bideg; 6], &minors, &twist)?;
            let target = basis(&space, &twist).dim();
            Ok(cayley::rank(&mm.matrix) < target)
        }
        DetectorKind::ImplicitImplicit => {
            let (mut forms, _, block) = implicit_data(&cs)?;
            let (forms_d, _, block_d) = implicit_data(&ds)?;
            if block != block_d {
                return Err(Error::SpaceMismatch);
            }
            forms.extend(forms_d);
            if forms.len() < 4 {
                return Err(Error::DegreeCondition("need at least 4 equations".into()));
            }
            let space = forms[0].space().clone();
            let field = forms[0].field();
            let mut degs: Vec<i64> = forms
                .iter()
                .map(|f| f.single_block_degree().map(|(_, d)| d))
                .collect::<Result<Vec<_>>>()?;
            degs.sort_unstable_by(|a, b| b.cmp(a));
            let delta: i64 = degs.iter().take(4).sum::<i64>() - 3;
            let r = space.num_geometric_blocks();
            let mut m = MultiDegree::zero(r);
            m.0[block] = delta;
            let sources: Vec<MultiDegree> = forms
                .iter()
                .map(|f| f.geometric_multidegree())
                .collect::<Result<Vec<_>>>()?;
            let mm = matrix_of_map(&space, field, &sources, &forms, &m)?;
            let target = basis(&space, &m).dim();
            Ok(cayley::rank(&mm.matrix) < target)
        }
    }
}
