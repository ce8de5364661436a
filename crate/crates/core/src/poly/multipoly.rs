//! Sparse multivariate polynomials with block multigrading.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::scalar::{Field, Scalar};
use crate::poly::space::{same_space, Monomial, MultiDegree, Space};

/// A sparse polynomial over a [`Space`]. Terms are kept in graded-lex order
/// with no zero coefficients stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    space: Space,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.field == other.field && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(space: &Space, field: Field) -> Self {
        MultiPoly { space: space.clone(), field, terms: BTreeMap::new() }
    }

    pub fn one(space: &Space, field: Field) -> Self {
        Self::constant(space, field.one())
    }

    pub fn constant(space: &Space, c: Scalar) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(space.num_vars()), c);
        }
        MultiPoly { space: space.clone(), field, terms }
    }

    pub fn var(space: &Space, name: &str, field: Field) -> Result<Self> {
        let i = space.var_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(space.num_vars(), i), field.one());
        Ok(MultiPoly { space: space.clone(), field, terms })
    }

    pub fn from_terms(space: &Space, field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(space, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_constant() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_constant())
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(self.field.zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.field(), self.field);
        debug_assert_eq!(m.0.len(), self.space.num_vars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        MultiPoly { space: self.space.clone(), field: self.field, terms }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.space, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space, self.field);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect();
        MultiPoly { space: self.space.clone(), field: self.field, terms }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect();
        MultiPoly { space: self.space.clone(), field: self.field, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.space, self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same space");
            }
            base = base.mul(&base).expect("same space");
            e >>= 1;
        }
        acc
    }

    /// The common per-geometric-block degree of all terms, ignoring
    /// parameter exponents. Errors on zero input or non-homogeneous input.
    pub fn geometric_multidegree(&self) -> Result<MultiDegree> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroInput)?;
        let d = first.geometric_degrees(&self.space);
        for m in it {
            if m.geometric_degrees(&self.space) != d {
                return Err(Error::NotHomogeneous(format!("{self}")));
            }
        }
        Ok(d)
    }

    /// For a form supported on a single geometric block: (block index, degree).
    pub fn single_block_degree(&self) -> Result<(usize, i64)> {
        let d = self.geometric_multidegree()?;
        let nonzero: Vec<usize> = (0..d.len()).filter(|&t| d.get(t) != 0).collect();
        match nonzero.len() {
            1 => Ok((nonzero[0], d.get(nonzero[0]))),
            _ => Err(Error::NotHomogeneous(format!(
                "expected a form on a single geometric block, found multidegree {d}"
            ))),
        }
    }

    /// Degree in one variable.
    pub fn degree_in_var(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.space.num_vars();
        let mut seen = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    /// Simultaneous substitution. Every variable of `self` must either have a
    /// binding or exist (by name) in the common target space of the bindings.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
        let target: Space = match bindings.values().next() {
            Some(p) => p.space.clone(),
            None => self.space.clone(),
        };
        for p in bindings.values() {
            if !same_space(&p.space, &target) {
                return Err(Error::SpaceMismatch);
            }
            if p.field != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        // Per-variable image in the target space.
        let mut images: Vec<Option<MultiPoly>> = vec![None; self.space.num_vars()];
        for (i, name) in self.space.var_names().iter().enumerate() {
            if let Some(p) = bindings.get(name) {
                images[i] = Some(p.clone());
            }
        }
        let mut out = MultiPoly::zero(&target, self.field);
        let mut power_cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let mut acc = MultiPoly::constant(&target, coeff.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match power_cache.entry((i, e)) {
                    std::collections::btree_map::Entry::Occupied(entry) => entry.get().clone(),
                    std::collections::btree_map::Entry::Vacant(entry) => {
                        let base = match &images[i] {
                            Some(p) => p.clone(),
                            None => {
                                let name = self.space.var_name(i);
                                MultiPoly::var(&target, name, self.field)?
                            }
                        };
                        entry.insert(base.pow(e)).clone()
                    }
                };
                acc = acc.mul(&factor)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Substitute scalars for some variables; the result stays in the same space.
    pub fn eval_vars(&self, values: &BTreeMap<String, Scalar>) -> Result<MultiPoly> {
        let mut idx_values: Vec<Option<Scalar>> = vec![None; self.space.num_vars()];
        for (name, v) in values {
            let i = self.space.var_index(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            if v.field() != self.field {
                return Err(Error::FieldMismatch);
            }
            idx_values[i] = Some(v.clone());
        }
        let mut out = MultiPoly::zero(&self.space, self.field);
        for (mono, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut e = mono.0.clone();
            for (i, v) in idx_values.iter().enumerate() {
                if let Some(v) = v {
                    if e[i] > 0 {
                        c = c.mul(&v.pow(e[i]));
                        e[i] = 0;
                    }
                }
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    /// Full evaluation; every occurring variable must be bound.
    pub fn evaluate(&self, values: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let evaluated = self.eval_vars(values)?;
        evaluated.constant_value().ok_or_else(|| {
            let left = evaluated
                .support_vars()
                .first()
                .map(|&i| evaluated.space.var_name(i).to_string())
                .unwrap_or_default();
            Error::UnboundParameter(left)
        })
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.space, self.field);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(dm)?;
            let qc = rc.mul(&dc_inv);
            let t = MultiPoly::from_terms(&self.space, self.field, [(qm, qc)]);
            rem = rem.sub(&t.mul(divisor).ok()?).ok()?;
            quot = quot.add(&t).ok()?;
        }
        Some(quot)
    }

    /// Write `self = content * primitive` where the content collects
    /// everything not involving the variables of geometric block `wrt`.
    pub fn content_primitive(&self, wrt: usize) -> Result<(MultiPoly, MultiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let range = self.space.block_range(wrt);
        // Group coefficients by their exponents on the block.
        let mut groups: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let mut inside = vec![0u32; self.space.num_vars()];
            let mut outside = mono.0.clone();
            for i in range.clone() {
                inside[i] = mono.0[i];
                outside[i] = 0;
            }
            groups
                .entry(Monomial(inside))
                .or_insert_with(|| MultiPoly::zero(&self.space, self.field))
                .add_term(Monomial(outside), coeff.clone());
        }
        let mut content: Option<MultiPoly> = None;
        for g in groups.values() {
            content = Some(match content {
                None => g.clone(),
                Some(c) => crate::poly::gcd::gcd(&c, g)?,
            });
            if content.as_ref().unwrap().is_one() {
                break;
            }
        }
        let content = content.unwrap().normalize_primitive_positive();
        let primitive = self.div_exact(&content).ok_or(Error::DivisionNotExact)?;
        Ok((content, primitive))
    }

    /// Rational content of the coefficients: the positive rational c such
    /// that self/c has coprime integer coefficients.
    pub fn rational_content(&self) -> Option<BigRational> {
        if self.field != Field::Rational || self.is_zero() {
            return None;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            num_gcd = num_gcd.gcd(&r.numer().abs());
            den_lcm = den_lcm.lcm(r.denom());
        }
        Some(BigRational::new(num_gcd, den_lcm))
    }

    /// Primitive normalization: remove the rational content and make the
    /// graded-lex leading coefficient positive. Over a prime field the
    /// polynomial is made monic instead.
    pub fn normalize_primitive_positive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        match self.field {
            Field::Rational => {
                let content = self.rational_content().unwrap();
                let mut scale = Scalar::Rational(content.recip());
                let (_, lead) = self.leading().unwrap();
                if lead.mul(&scale).is_negative() {
                    scale = scale.neg();
                }
                self.mul_scalar(&scale)
            }
            Field::Prime(_) => {
                let (_, lead) = self.leading().unwrap();
                self.mul_scalar(&lead.inv().expect("leading coefficient is nonzero"))
            }
        }
    }

    /// Equal up to sign.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    /// Equal after primitive-positive normalization (i.e. up to a nonzero
    /// scalar multiple).
    pub fn eq_up_to_scalar(&self, other: &Self) -> bool {
        self.normalize_primitive_positive() == other.normalize_primitive_positive()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::poly::text::write_poly(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::space::SpaceBuilder;

    fn space() -> Space {
        SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .parameter("p", ["l"])
            .build()
            .unwrap()
    }

    fn pq(sp: &Space, text: &str) -> MultiPoly {
        crate::poly::text::parse_poly(text, sp, Field::Rational).unwrap()
    }

    #[test]
    fn add_examples() {
        let sp = space();
        assert_eq!(pq(&sp, "s").add(&pq(&sp, "t")).unwrap(), pq(&sp, "s + t"));
        let sum = pq(&sp, "s + t").add(&pq(&sp, "-s - t")).unwrap();
        assert!(sum.is_zero());
        assert_eq!(
            pq(&sp, "2/3*s^2").add(&pq(&sp, "1/3*s^2")).unwrap(),
            pq(&sp, "s^2")
        );
    }

    #[test]
    fn mul_examples() {
        let sp = space();
        assert_eq!(pq(&sp, "s").mul(&pq(&sp, "t")).unwrap(), pq(&sp, "s*t"));
        assert_eq!(
            pq(&sp, "s + t").mul(&pq(&sp, "s - t")).unwrap(),
            pq(&sp, "s^2 - t^2")
        );
        let prod = pq(&sp, "s^2*t").mul(&pq(&sp, "s*t^2")).unwrap();
        assert_eq!(prod.geometric_multidegree().unwrap(), MultiDegree(vec![6]));
    }

    #[test]
    fn mismatched_spaces_error() {
        let sp = space();
        let other = SpaceBuilder::new().geometric("uv", ["u", "v"]).build().unwrap();
        let p = pq(&sp, "s");
        let q = crate::poly::text::parse_poly("u", &other, Field::Rational).unwrap();
        assert_eq!(p.add(&q), Err(Error::SpaceMismatch));
        assert_eq!(p.mul(&q), Err(Error::SpaceMismatch));
    }

    #[test]
    fn geometric_multidegree_examples() {
        let sp = space();
        // Parameter exponents are ignored.
        let p = pq(&sp, "l*s^2*t + s^3");
        assert_eq!(p.geometric_multidegree().unwrap(), MultiDegree(vec![3]));
        assert!(matches!(
            pq(&sp, "s + s^2").geometric_multidegree(),
            Err(Error::NotHomogeneous(_))
        ));
        assert_eq!(
            MultiPoly::zero(&sp, Field::Rational).geometric_multidegree(),
            Err(Error::ZeroInput)
        );

        let two = SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .geometric("uv", ["u", "v"])
            .build()
            .unwrap();
        let p = crate::poly::text::parse_poly("u*v*s - v^2*t", &two, Field::Rational).unwrap();
        assert_eq!(p.geometric_multidegree().unwrap(), MultiDegree(vec![1, 2]));
    }

    #[test]
    fn substitute_examples() {
        let sp = space();
        // Identity binding.
        let p = pq(&sp, "s^2 + t");
        let mut b = BTreeMap::new();
        b.insert("s".to_string(), pq(&sp, "s"));
        assert_eq!(p.substitute(&b).unwrap(), p);

        // X^2 + Y at X:=s^2, Y:=t^4.
        let xy = SpaceBuilder::new().geometric("XY", ["X", "Y"]).build().unwrap();
        let q = crate::poly::text::parse_poly("X^2 + Y", &xy, Field::Rational).unwrap();
        let mut b = BTreeMap::new();
        b.insert("X".to_string(), pq(&sp, "s^2"));
        b.insert("Y".to_string(), pq(&sp, "t^4"));
        assert_eq!(q.substitute(&b).unwrap(), pq(&sp, "s^4 + t^4"));
    }

    #[test]
    fn substitution_degree_is_multiplicative() {
        // The cubic parameterization substituted into -m*T + Z.
        let sp = SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .parameter("p", ["l", "m"])
            .build()
            .unwrap();
        let xyzt = SpaceBuilder::new()
            .geometric("g", ["X", "Y", "Z", "T"])
            .parameter("p", ["l", "m"])
            .build()
            .unwrap();
        let param = |s: &str| crate::poly::text::parse_poly(s, &sp, Field::Rational).unwrap();
        let h = crate::poly::text::parse_poly("-m*T + Z", &xyzt, Field::Rational).unwrap();
        let mut b = BTreeMap::new();
        b.insert("X".into(), param("s^3"));
        b.insert("Y".into(), param("s^2*t - t^3"));
        b.insert("Z".into(), param("l*s^2*t + s*t^2"));
        b.insert("T".into(), param("-s^3 + t^3"));
        let sub = h.substitute(&b).unwrap();
        assert_eq!(sub, param("m*s^3 + l*s^2*t + s*t^2 - m*t^3"));
        assert_eq!(sub.geometric_multidegree().unwrap(), MultiDegree(vec![3]));
    }

    #[test]
    fn content_primitive_examples() {
        let sp = space();
        let (c, p) = pq(&sp, "l*s + l*t").content_primitive(0).unwrap();
        assert_eq!(c, pq(&sp, "l"));
        assert_eq!(p, pq(&sp, "s + t"));

        let (c, p) = pq(&sp, "s + t").content_primitive(0).unwrap();
        assert!(c.is_one());
        assert_eq!(p, pq(&sp, "s + t"));

        let sp2 = SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .parameter("p", ["m"])
            .build()
            .unwrap();
        let q = crate::poly::text::parse_poly("m^2*s^2 - s^2", &sp2, Field::Rational).unwrap();
        let (c, p) = q.content_primitive(0).unwrap();
        // Oracle: content * primitive reproduces the input.
        assert_eq!(c.mul(&p).unwrap(), q);
        assert_eq!(p, crate::poly::text::parse_poly("s^2", &sp2, Field::Rational).unwrap());
    }

    #[test]
    fn div_exact_and_normalization() {
        let sp = space();
        let a = pq(&sp, "s^2 - t^2");
        let b = pq(&sp, "s - t");
        assert_eq!(a.div_exact(&b).unwrap(), pq(&sp, "s + t"));
        assert!(a.div_exact(&pq(&sp, "s + 2*t")).is_none());
        let c = pq(&sp, "-2*s - 2*t");
        assert_eq!(c.normalize_primitive_positive(), pq(&sp, "s + t"));
    }

    fn random_poly(rng: &mut crate::rng::SplitMix64, sp: &Space, max_terms: u64) -> MultiPoly {
        let mut p = MultiPoly::zero(sp, Field::Rational);
        for _ in 0..rng.below(max_terms + 1) {
            let mono = Monomial((0..sp.num_vars()).map(|_| rng.below(3) as u32).collect());
            let c = Field::Rational
                .from_ratio(rng.range_i64(-6, 6), rng.range_i64(1, 3))
                .unwrap();
            p.add_term(mono, c);
        }
        p
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let sp = space();
        let mut rng = crate::rng::SplitMix64::new(0xA110);
        for _ in 0..1000 {
            let p = random_poly(&mut rng, &sp, 3);
            let q = random_poly(&mut rng, &sp, 3);
            let r = random_poly(&mut rng, &sp, 3);
            // commutativity
            assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
            assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
            // associativity
            assert_eq!(
                p.add(&q).unwrap().add(&r).unwrap(),
                p.add(&q.add(&r).unwrap()).unwrap()
            );
            assert_eq!(
                p.mul(&q).unwrap().mul(&r).unwrap(),
                p.mul(&q.mul(&r).unwrap()).unwrap()
            );
            // distributivity
            assert_eq!(
                p.mul(&q.add(&r).unwrap()).unwrap(),
                p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn degree_is_additive_on_products() {
        let sp = space();
        let mut rng = crate::rng::SplitMix64::new(0xA111);
        let mut checked = 0;
        while checked < 200 {
            // Build homogeneous factors by filtering a random polynomial to
            // one geometric degree.
            let a = random_poly(&mut rng, &sp, 4);
            let b = random_poly(&mut rng, &sp, 4);
            let pick = |p: &MultiPoly, rng: &mut crate::rng::SplitMix64| -> MultiPoly {
                let degs: Vec<MultiDegree> = p
                    .terms()
                    .map(|(m, _)| m.geometric_degrees(p.space()))
                    .collect();
                if degs.is_empty() {
                    return MultiPoly::zero(p.space(), p.field());
                }
                let target = &degs[rng.below(degs.len() as u64) as usize];
                MultiPoly::from_terms(
                    p.space(),
                    p.field(),
                    p.terms()
                        .filter(|(m, _)| m.geometric_degrees(p.space()) == *target)
                        .map(|(m, c)| (m.clone(), c.clone())),
                )
            };
            let ha = pick(&a, &mut rng);
            let hb = pick(&b, &mut rng);
            if ha.is_zero() || hb.is_zero() {
                continue;
            }
            let da = ha.geometric_multidegree().unwrap();
            let db = hb.geometric_multidegree().unwrap();
            let prod = ha.mul(&hb).unwrap();
            assert_eq!(prod.geometric_multidegree().unwrap(), da.add(&db));
            checked += 1;
        }
    }

    #[test]
    fn substitute_is_multiplicative() {
        // substitute(p*q) = substitute(p)*substitute(q)
        let sp = space();
        let target = SpaceBuilder::new()
            .geometric("uv", ["u", "v"])
            .parameter("p", ["l"])
            .build()
            .unwrap();
        let mut rng = crate::rng::SplitMix64::new(0xA112);
        let tp = |s: &str| crate::poly::text::parse_poly(s, &target, Field::Rational).unwrap();
        for _ in 0..100 {
            let p = random_poly(&mut rng, &sp, 3);
            let q = random_poly(&mut rng, &sp, 3);
            let mut bindings = BTreeMap::new();
            bindings.insert("s".to_string(), tp("u^2 - v^2"));
            bindings.insert("t".to_string(), tp("l*u*v + v^2"));
            bindings.insert("l".to_string(), tp("l"));
            let lhs = p.mul(&q).unwrap().substitute(&bindings).unwrap();
            let rhs = p
                .substitute(&bindings)
                .unwrap()
                .mul(&q.substitute(&bindings).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluate_and_eval_vars() {
        let sp = space();
        let p = pq(&sp, "l*s + 2*t");
        let mut vals = BTreeMap::new();
        vals.insert("l".to_string(), Field::Rational.from_i64(3));
        let fixed = p.eval_vars(&vals).unwrap();
        assert_eq!(fixed, pq(&sp, "3*s + 2*t"));
        assert!(matches!(p.evaluate(&vals), Err(Error::UnboundParameter(_))));
        vals.insert("s".to_string(), Field::Rational.from_i64(1));
        vals.insert("t".to_string(), Field::Rational.from_i64(-1));
        assert_eq!(p.evaluate(&vals).unwrap(), Field::Rational.from_i64(1));
    }
}
