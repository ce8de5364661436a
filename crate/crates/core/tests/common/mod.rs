//! Shared fixtures and brute-force oracles for the acceptance suite.

#![allow(dead_code)]

use std::collections::BTreeMap;

use detres::grading::GradedMap;
use detres::poly::{parse_poly, Field, MultiDegree, MultiPoly, Scalar, SpaceBuilder};
use detres::rng::SplitMix64;
use detres::Space;

// ---------------------------------------------------------------------------
// The cubic-family / conic-family example and its expected answers.
// ---------------------------------------------------------------------------

/// The degree-9 intersection condition of the cubic/conic pair, in the
/// parameters l and m.
pub const CUBIC_CONIC_CONDITION: &str = "l^6*m^3 + 3*l^6*m^2 - 3*l^5*m^3 + 3*l^6*m - 6*l^5*m^2 - l^3*m^4 + l^6 - 3*l^5*m - 4*l^4*m^2 + 4*l^3*m^3 + 10*l^2*m^4 + 6*l*m^5 + m^6 - 5*l^4*m + 10*l^3*m^2 + 14*l^2*m^3 - 3*l*m^4 - 3*m^5 - l^4 + 5*l^3*m + 4*l^2*m^2 - 3*l*m^3 + 4*m^4 + l^3 - 2*l^2*m + 8*l*m^2 - m^3 + l*m + 2*m^2 - l + 4*m + 1";

/// The expected 6x6 matrix of the conic-against-determinantal-cubic route,
/// row major.
pub const EXPECTED_6X6: [[&str; 6]; 6] = [
    ["-1", "0", "l", "0", "-l^2", "0"],
    ["-l - 2", "-1", "2*l", "l", "-2*l^2 + 1", "-l^2"],
    [
        "-l - 2*m - 3",
        "-l - 2",
        "2*l*m + 3*l - m + 1",
        "2*l",
        "-2*l^2*m - 3*l^2 + 2*l*m + 2",
        "-2*l^2 + 1",
    ],
    [
        "-l*m - l - m - 2",
        "-l - 2*m - 3",
        "2*l*m + 2*l - m + 1",
        "2*l*m + 3*l - m + 1",
        "-2*l^2*m - 2*l^2 + 2*l*m + m + 2",
        "-2*l^2*m - 3*l^2 + 2*l*m + 2",
    ],
    [
        "-m^2 - 2*m - 1",
        "-l*m - l - m - 2",
        "l*m^2 + 2*l*m - m^2 + l - m",
        "2*l*m + 2*l - m + 1",
        "-l^2*m^2 - 2*l^2*m + 2*l*m^2 - l^2 + 2*l*m - m^2 + m + 1",
        "-2*l^2*m - 2*l^2 + 2*l*m + m + 2",
    ],
    [
        "0",
        "-m^2 - 2*m - 1",
        "0",
        "l*m^2 + 2*l*m - m^2 + l - m",
        "0",
        "-l^2*m^2 - 2*l^2*m + 2*l*m^2 - l^2 + 2*l*m - m^2 + m + 1",
    ],
];

/// Space for the parametric-cubic / implicit-conic route.
pub fn cubic_pi_space() -> Space {
    SpaceBuilder::new()
        .geometric("st", ["s", "t"])
        .geometric("xyzt", ["X", "Y", "Z", "T"])
        .parameter("params", ["l", "m"])
        .build()
        .unwrap()
}

/// Space for the parametric-conic / determinantal-cubic route.
pub fn conic_pi_space() -> Space {
    SpaceBuilder::new()
        .geometric("uv", ["u", "v"])
        .geometric("xyzt", ["X", "Y", "Z", "T"])
        .parameter("params", ["l", "m"])
        .build()
        .unwrap()
}

/// Space with both parameter lines.
pub fn pp_space() -> Space {
    SpaceBuilder::new()
        .geometric("st", ["s", "t"])
        .geometric("uv", ["u", "v"])
        .parameter("params", ["l", "m"])
        .build()
        .unwrap()
}

/// Space for the implicit/implicit route.
pub fn ii_space() -> Space {
    SpaceBuilder::new()
        .geometric("xyzt", ["X", "Y", "Z", "T"])
        .parameter("params", ["l", "m"])
        .build()
        .unwrap()
}

pub fn pq(sp: &Space, s: &str) -> MultiPoly {
    parse_poly(s, sp, Field::Rational).unwrap()
}

/// The cubic family (s^3, s^2 t - t^3, l s^2 t + s t^2, -s^3 + t^3).
pub fn cubic_forms(sp: &Space) -> [MultiPoly; 4] {
    [
        pq(sp, "s^3"),
        pq(sp, "s^2*t - t^3"),
        pq(sp, "l*s^2*t + s*t^2"),
        pq(sp, "-s^3 + t^3"),
    ]
}

/// The conic family (u v, m v^2 + u^2, m v^2, v^2).
pub fn conic_forms(sp: &Space) -> [MultiPoly; 4] {
    [
        pq(sp, "u*v"),
        pq(sp, "m*v^2 + u^2"),
        pq(sp, "m*v^2"),
        pq(sp, "v^2"),
    ]
}

/// The conic family implicitly: a quadric and a moving plane.
pub fn conic_implicit(sp: &Space) -> Vec<MultiPoly> {
    vec![pq(sp, "-X^2 + Y*T - Z*T"), pq(sp, "-m*T + Z")]
}

/// The 2x3 matrix of linear forms whose minors cut out the cubic family.
pub fn cubic_hilbert_burch(sp: &Space) -> GradedMap {
    let r = sp.num_geometric_blocks();
    let xyzt_block = (0..r)
        .find(|&t| sp.geometric_range(t).len() == 4)
        .expect("space has the coordinate block");
    let mut col = MultiDegree::zero(r);
    col.0[xyzt_block] = 1;
    GradedMap::new(
        sp,
        Field::Rational,
        vec![MultiDegree::zero(r); 2],
        vec![col; 3],
        vec![
            vec![
                pq(sp, "X"),
                pq(sp, "X + Y + T"),
                pq(sp, "-l*X - l*Y - l*T + Z"),
            ],
            vec![
                pq(sp, "X + Y + T"),
                pq(sp, "-l*X - l*Y - l*T + Z"),
                pq(sp, "X + T"),
            ],
        ],
    )
    .unwrap()
}

pub fn rational_values(l: i64, m: i64) -> BTreeMap<String, Scalar> {
    let mut v = BTreeMap::new();
    v.insert("l".to_string(), Field::Rational.from_i64(l));
    v.insert("m".to_string(), Field::Rational.from_i64(m));
    v
}

// ---------------------------------------------------------------------------
// Dense finite-field forms and exhaustive point searches.
// ---------------------------------------------------------------------------

/// A form over F_q in dense sparse-term representation: (coefficient,
/// exponent vector over the listed variables).
#[derive(Clone, Debug)]
pub struct FqForm {
    pub terms: Vec<(u64, Vec<u32>)>,
}

pub fn mod_mul(a: u64, b: u64, q: u64) -> u64 {
    a * b % q
}

pub fn mod_pow(mut b: u64, mut e: u32, q: u64) -> u64 {
    let mut acc = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, q);
        }
        b = mod_mul(b, b, q);
        e >>= 1;
    }
    acc
}

impl FqForm {
    /// Extract the exponents of `vars` from a fully specialized prime-field
    /// polynomial; all other variables must have exponent zero.
    pub fn from_poly(p: &MultiPoly, vars: &[usize], q: u64) -> FqForm {
        let mut terms = Vec::new();
        for (mono, c) in p.terms() {
            let mut exps = Vec::with_capacity(vars.len());
            let mut used: u64 = 0;
            for &v in vars {
                exps.push(mono.0[v]);
                used += mono.0[v] as u64;
            }
            assert_eq!(
                used,
                mono.total_degree(),
                "form involves variables outside the projection"
            );
            let value = match c {
                Scalar::Prime { value, .. } => *value,
                _ => panic!("prime field expected"),
            };
            let _ = q;
            terms.push((value, exps));
        }
        FqForm { terms }
    }

    pub fn eval(&self, point: &[u64], q: u64) -> u64 {
        let mut acc = 0u64;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (x, e) in point.iter().zip(exps) {
                // exponents are tiny; repeated multiplication beats pow
                for _ in 0..*e {
                    t = t * *x % q;
                }
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }
}

/// Streams the representatives of P^dim(F_q) (first nonzero coordinate one)
/// through `visit`, reusing one buffer; returns the first accepted point.
pub fn find_projective_point(
    dim: usize,
    q: u64,
    mut visit: impl FnMut(&[u64]) -> bool,
) -> Option<Vec<u64>> {
    let mut pt = vec![0u64; dim + 1];
    for lead in 0..=dim {
        for x in pt.iter_mut() {
            *x = 0;
        }
        pt[lead] = 1;
        let free = dim - lead;
        loop {
            if visit(&pt) {
                return Some(pt);
            }
            let mut carried_out = free == 0;
            let mut i = free;
            while i > 0 {
                i -= 1;
                let idx = lead + 1 + i;
                pt[idx] += 1;
                if pt[idx] < q {
                    break;
                }
                pt[idx] = 0;
                if i == 0 {
                    carried_out = true;
                }
            }
            if carried_out {
                break;
            }
        }
    }
    None
}

/// Materialized point list; only use for projective lines.
pub fn projective_points(dim: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    find_projective_point(dim, q, |pt| {
        out.push(pt.to_vec());
        false
    });
    out
}

/// First common zero of the forms in P^dim(F_q), if any. The first form is
/// evaluated everywhere; the rest only where the earlier ones vanish.
pub fn search_common_zero(forms: &[FqForm], dim: usize, q: u64) -> Option<Vec<u64>> {
    find_projective_point(dim, q, |pt| forms.iter().all(|f| f.eval(pt, q) == 0))
}

/// All values of a 4-tuple of binary forms on P^1(F_q).
pub fn sweep_p1(forms: &[FqForm; 4], q: u64) -> Vec<(Vec<u64>, [u64; 4])> {
    projective_points(1, q)
        .into_iter()
        .map(|pt| {
            let vals = [
                forms[0].eval(&pt, q),
                forms[1].eval(&pt, q),
                forms[2].eval(&pt, q),
                forms[3].eval(&pt, q),
            ];
            (pt, vals)
        })
        .collect()
}

/// Two nonzero 4-vectors over F_q are proportional iff all 2x2 minors vanish.
pub fn proportional(a: &[u64; 4], b: &[u64; 4], q: u64) -> bool {
    for i in 0..4 {
        for j in i + 1..4 {
            if !(mod_mul(a[i], b[j], q) + q - mod_mul(a[j], b[i], q)).is_multiple_of(q) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive intersection search for two parameterized curves over F_q:
/// a pair of parameter points where the image points coincide in P^3.
pub fn search_curve_intersection(
    f: &[FqForm; 4],
    g: &[FqForm; 4],
    q: u64,
) -> Option<(Vec<u64>, Vec<u64>)> {
    let fv = sweep_p1(f, q);
    let gv = sweep_p1(g, q);
    for (pf, a) in &fv {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        for (pg, b) in &gv {
            if b.iter().all(|&x| x == 0) {
                continue;
            }
            if proportional(a, b, q) {
                return Some((pf.clone(), pg.clone()));
            }
        }
    }
    None
}

/// Exhaustive search for a parameter point of `f` landing on the zero locus
/// of all the implicit forms.
pub fn search_point_on_implicit(f: &[FqForm; 4], implicit: &[FqForm], q: u64) -> Option<Vec<u64>> {
    'point: for pt in projective_points(1, q) {
        let img = [
            f[0].eval(&pt, q),
            f[1].eval(&pt, q),
            f[2].eval(&pt, q),
            f[3].eval(&pt, q),
        ];
        if img.iter().all(|&x| x == 0) {
            continue;
        }
        for h in implicit {
            if h.eval(&img, q) != 0 {
                continue 'point;
            }
        }
        return Some(pt.to_vec());
    }
    None
}

// ---------------------------------------------------------------------------
// Random instance generation.
// ---------------------------------------------------------------------------

/// Random dense form of the given degree in the variables of one block,
/// coefficients in F_q via integer literals.
pub fn random_form_fq(
    rng: &mut SplitMix64,
    sp: &Space,
    field: Field,
    vars: &[&str],
    degree: i64,
) -> MultiPoly {
    let mut p = MultiPoly::zero(sp, field);
    let exps = degree_exponents(vars.len(), degree as u32);
    for e in exps {
        let c = match field {
            Field::Prime(q) => rng.below(q) as i64,
            Field::Rational => rng.range_i64(-9, 9),
        };
        if c == 0 {
            continue;
        }
        let mono_str: Vec<String> = vars
            .iter()
            .zip(&e)
            .filter(|(_, &ee)| ee > 0)
            .map(|(v, &ee)| format!("{v}^{ee}"))
            .collect();
        let term = if mono_str.is_empty() {
            format!("{c}")
        } else {
            format!("{c}*{}", mono_str.join("*"))
        };
        let t = parse_poly(&term, sp, field).unwrap();
        p = p.add(&t).unwrap();
    }
    p
}

fn degree_exponents(width: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; width];
    fn rec(d: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = d;
            out.push(cur.clone());
            return;
        }
        for e in 0..=d {
            cur[pos] = e;
            rec(d - e, pos + 1, cur, out);
        }
        cur[pos] = 0;
    }
    if width > 0 {
        rec(d, 0, &mut cur, &mut out);
    }
    out
}

/// Variable indices of the block containing the named variable.
pub fn block_vars(sp: &Space, name: &str) -> Vec<usize> {
    let i = sp.var_index(name).unwrap();
    let b = sp.block_of_var(i);
    sp.block_range(b).collect()
}
