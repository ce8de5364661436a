//! Multivariate polynomial gcd.
//!
//! Recursive content/primitive-part reduction with a subresultant remainder
//! sequence on the highest occurring variable. Rational inputs are scaled to
//! integer coefficients first so the whole computation runs over `BigInt`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::engine::{gcd_spoly, FpRing, SPoly, ZRing};
use crate::poly::multipoly::MultiPoly;
use crate::poly::scalar::{Field, Scalar};
use crate::poly::space::{same_space, Monomial, Space};

/// Compress a set of polynomials onto the variables that actually occur,
/// so the engine works with short exponent vectors.
pub(crate) struct VarMap {
    /// engine index -> space variable index
    pub to_space: Vec<usize>,
}

impl VarMap {
    pub fn for_polys<'a>(polys: impl Iterator<Item = &'a MultiPoly>) -> VarMap {
        let mut seen: Option<Vec<bool>> = None;
        for p in polys {
            let s = seen.get_or_insert_with(|| vec![false; p.space().num_vars()]);
            for i in p.support_vars() {
                s[i] = true;
            }
        }
        let seen = seen.unwrap_or_default();
        VarMap {
            to_space: (0..seen.len()).filter(|&i| seen[i]).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.to_space.len()
    }

    pub fn compress(&self, m: &Monomial) -> Monomial {
        Monomial(self.to_space.iter().map(|&i| m.0[i]).collect())
    }

    pub fn expand(&self, m: &Monomial, nvars: usize) -> Monomial {
        let mut e = vec![0u32; nvars];
        for (j, &i) in self.to_space.iter().enumerate() {
            e[i] = m.0[j];
        }
        Monomial(e)
    }
}

/// Lcm of the coefficient denominators.
fn denominator_lcm(p: &MultiPoly) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        if let Some(r) = c.as_rational() {
            l = l.lcm(r.denom());
        }
    }
    l
}

/// Rational polynomial scaled to integer coefficients; the scale is dropped
/// (gcd is only defined up to a unit anyway for the callers here).
pub(crate) fn to_zpoly(p: &MultiPoly, map: &VarMap) -> SPoly<ZRing> {
    let ring = ZRing;
    let scale = denominator_lcm(p);
    let mut out = SPoly::zero();
    for (m, c) in p.terms() {
        let r = c.as_rational().expect("rational field");
        let v = r.numer() * (&scale / r.denom());
        out.add_term(map.compress(m), v, &ring);
    }
    out
}

pub(crate) fn from_zpoly(sp: &SPoly<ZRing>, space: &Space, map: &VarMap) -> MultiPoly {
    let n = space.num_vars();
    MultiPoly::from_terms(
        space,
        Field::Rational,
        sp.terms
            .iter()
            .map(|(m, c)| (map.expand(m, n), Scalar::Rational(BigRational::from_integer(c.clone())))),
    )
}

pub(crate) fn to_fppoly(p: &MultiPoly, map: &VarMap, ring: &FpRing) -> SPoly<FpRing> {
    let mut out = SPoly::zero();
    for (m, c) in p.terms() {
        match c {
            Scalar::Prime { value, .. } => out.add_term(map.compress(m), *value, ring),
            _ => unreachable!("prime field expected"),
        }
    }
    out
}

pub(crate) fn from_fppoly(sp: &SPoly<FpRing>, space: &Space, map: &VarMap, q: u64) -> MultiPoly {
    let n = space.num_vars();
    MultiPoly::from_terms(
        space,
        Field::Prime(q),
        sp.terms
            .iter()
            .map(|(m, c)| (map.expand(m, n), Scalar::Prime { value: *c, modulus: q })),
    )
}

/// Greatest common divisor, normalized primitive with positive leading
/// coefficient (monic over a prime field). `gcd(0, q)` is normalized `q`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    if !same_space(p.space(), q.space()) {
        return Err(Error::SpaceMismatch);
    }
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    if p.is_zero() {
        return Ok(q.normalize_primitive_positive());
    }
    if q.is_zero() {
        return Ok(p.normalize_primitive_positive());
    }
    let map = VarMap::for_polys([p, q].into_iter());
    let result = match p.field() {
        Field::Rational => {
            let ring = ZRing;
            let a = to_zpoly(p, &map);
            let b = to_zpoly(q, &map);
            let g = gcd_spoly(&a, &b, map.width(), &ring);
            from_zpoly(&g, p.space(), &map)
        }
        Field::Prime(qm) => {
            let ring = FpRing { q: qm };
            let a = to_fppoly(p, &map, &ring);
            let b = to_fppoly(q, &map, &ring);
            let g = gcd_spoly(&a, &b, map.width(), &ring);
            from_fppoly(&g, p.space(), &map, qm)
        }
    };
    Ok(result.normalize_primitive_positive())
}

/// Gcd of a list (normalized); zero for an empty or all-zero list.
pub fn gcd_many(polys: &[MultiPoly]) -> Result<MultiPoly> {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.normalize_primitive_positive(),
            Some(g) => {
                if g.is_one() {
                    return Ok(g);
                }
                gcd(&g, p)?
            }
        });
    }
    acc.ok_or(Error::ZeroInput)
}
