//! Internal arithmetic kernel.
//!
//! The public [`MultiPoly`](crate::poly::MultiPoly) carries `Scalar`
//! coefficients; for the heavy inner loops (subresultant remainder
//! sequences, fraction-free elimination) we convert to sparse polynomials
//! over a raw coefficient ring: `BigInt` for the rational field after
//! clearing denominators, or `u64` residues for prime fields.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::space::Monomial;

pub(crate) trait Ring: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Exact division; `None` when the quotient is not in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// A gcd for content extraction. Fields return 1 for nonzero inputs.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Debug)]
pub(crate) struct ZRing;

impl Ring for ZRing {
    type Elem = BigInt;

    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct FpRing {
    pub q: u64,
}

impl Ring for FpRing {
    type Elem = u64;

    fn one(&self) -> u64 {
        1 % self.q
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.q as u128) as u64
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        if *b == 0 {
            return None;
        }
        // Field: division is always exact.
        let inv = mod_inv_u64(*b, self.q);
        Some(self.mul(a, &inv))
    }
    fn gcd(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 && *b == 0 {
            0
        } else {
            1 % self.q
        }
    }
}

fn mod_inv_u64(a: u64, q: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (q as i128, a as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    t.rem_euclid(q as i128) as u64
}

/// Sparse polynomial over a raw ring. No zero coefficients are stored.
#[derive(Debug)]
pub(crate) struct SPoly<R: Ring> {
    pub terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> Clone for SPoly<R> {
    fn clone(&self) -> Self {
        SPoly { terms: self.terms.clone() }
    }
}

impl<R: Ring> SPoly<R> {
    pub fn zero() -> Self {
        SPoly { terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: R::Elem, ring: &R) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(Monomial::one(nvars), c);
        }
        SPoly { terms }
    }

    pub fn one(nvars: usize, ring: &R) -> Self {
        Self::constant(nvars, ring.one(), ring)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: R::Elem, ring: &R) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = ring.add(e.get(), &c);
                if ring.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn sub(&self, other: &Self, ring: &R) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), ring.neg(c), ring);
        }
        out
    }

    pub fn neg(&self, ring: &R) -> Self {
        SPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self, ring: &R) -> Self {
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = SPoly::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                out.add_term(ma.mul(mb), ring.mul(ca, cb), ring);
            }
        }
        out
    }

    pub fn mul_term(&self, mono: &Monomial, c: &R::Elem, ring: &R) -> Self {
        if ring.is_zero(c) {
            return SPoly::zero();
        }
        SPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), ring.mul(k, c)))
                .collect(),
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    /// Exact polynomial division; `None` if not divisible.
    pub fn div_exact(&self, divisor: &Self, ring: &R) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SPoly::zero());
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = SPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(dm)?;
            let qc = ring.div_exact(rc, dc)?;
            let piece = divisor.mul_term(&qm, &qc, ring);
            quot.add_term(qm, qc, ring);
            rem = rem.sub(&piece, ring);
        }
        Some(quot)
    }

    pub fn degree_in(&self, x: usize) -> u32 {
        self.terms.keys().map(|m| m.0[x]).max().unwrap_or(0)
    }

    pub fn support_vars(&self, nvars: usize) -> Vec<bool> {
        let mut seen = vec![false; nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen
    }

    pub fn pow(&self, e: u32, nvars: usize, ring: &R) -> Self {
        let mut acc = SPoly::one(nvars, ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            base = base.mul(&base, ring);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Univariate view in one variable, coefficients again SPoly.
// ---------------------------------------------------------------------------

/// Dense coefficient list of `p` viewed as a polynomial in variable `x`;
/// the coefficients have zero exponent on `x`.
fn uni_coeffs<R: Ring>(p: &SPoly<R>, x: usize) -> Vec<SPoly<R>> {
    let d = p.degree_in(x) as usize;
    let mut out = vec![SPoly::zero(); d + 1];
    for (m, c) in &p.terms {
        let e = m.0[x] as usize;
        let mut reduced = m.clone();
        reduced.0[x] = 0;
        out[e].terms.insert(reduced, c.clone());
    }
    out
}

fn assemble<R: Ring>(coeffs: &[SPoly<R>], x: usize) -> SPoly<R> {
    let mut out = SPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        for (m, k) in &c.terms {
            let mut mono = m.clone();
            mono.0[x] += e as u32;
            out.terms.insert(mono, k.clone());
        }
    }
    out
}

fn uni_deg<R: Ring>(a: &[SPoly<R>]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn uni_trim<R: Ring>(a: &mut Vec<SPoly<R>>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in the x-view: returns r with
/// `lc(b)^(deg a - deg b + 1) * a = q*b + r` and `deg r < deg b`.
fn pseudo_rem<R: Ring>(a: &[SPoly<R>], b: &[SPoly<R>], ring: &R) -> Vec<SPoly<R>> {
    let da = uni_deg(a).expect("a nonzero");
    let db = uni_deg(b).expect("b nonzero");
    debug_assert!(da >= db);
    let lb = &b[db];
    let mut r: Vec<SPoly<R>> = a.to_vec();
    let mut reps = (da - db + 1) as u32;
    loop {
        uni_trim(&mut r);
        let dr = match uni_deg(&r) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let lr = r[dr].clone();
        // r = lb*r - lr * x^(dr-db) * b
        let mut next = vec![SPoly::zero(); dr + 1];
        for (i, c) in r.iter().enumerate() {
            next[i] = c.mul(lb, ring);
        }
        for (i, c) in b.iter().enumerate() {
            let idx = i + dr - db;
            next[idx] = next[idx].sub(&c.mul(&lr, ring), ring);
        }
        debug_assert!(next[dr].is_zero());
        r = next;
        reps -= 1;
    }
    if reps > 0 {
        let factor = lb.pow(reps, monomial_width(b), ring);
        for c in &mut r {
            *c = c.mul(&factor, ring);
        }
    }
    r
}

fn monomial_width<R: Ring>(p: &[SPoly<R>]) -> usize {
    p.iter()
        .flat_map(|c| c.terms.keys().next())
        .map(|m| m.0.len())
        .next()
        .unwrap_or(0)
}

/// Subresultant polynomial remainder sequence; returns the last nonzero
/// element (up to unit), assuming primitive inputs with deg a >= deg b >= 1
/// in x. A constant result signals coprime inputs.
fn subresultant_last<R: Ring>(
    mut a: Vec<SPoly<R>>,
    mut b: Vec<SPoly<R>>,
    nvars: usize,
    ring: &R,
) -> Vec<SPoly<R>> {
    let mut g = SPoly::one(nvars, ring);
    let mut h = SPoly::one(nvars, ring);
    loop {
        let da = uni_deg(&a).unwrap();
        let db = uni_deg(&b).unwrap();
        let delta = (da - db) as u32;
        let mut r = pseudo_rem(&a, &b, ring);
        uni_trim(&mut r);
        if r.is_empty() {
            return b;
        }
        if uni_deg(&r) == Some(0) {
            return vec![SPoly::one(nvars, ring)];
        }
        let divisor = g.mul(&h.pow(delta, nvars, ring), ring);
        a = b;
        b = r
            .into_iter()
            .map(|c| {
                c.div_exact(&divisor, ring)
                    .expect("subresultant division is exact")
            })
            .collect();
        uni_trim(&mut b);
        g = a[uni_deg(&a).unwrap()].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta, nvars, ring)
                .div_exact(&h.pow(delta - 1, nvars, ring), ring)
                .expect("subresultant h-update is exact"),
        };
    }
}

/// Content/primitive split with respect to variable `x`: the content is the
/// recursive gcd of the x-coefficients.
fn content_primitive_in<R: Ring>(
    p: &SPoly<R>,
    x: usize,
    nvars: usize,
    ring: &R,
) -> (SPoly<R>, SPoly<R>) {
    let coeffs = uni_coeffs(p, x);
    let mut content: Option<SPoly<R>> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        content = Some(match content {
            None => c.clone(),
            Some(acc) => gcd_spoly(&acc, c, nvars, ring),
        });
    }
    let content = content.expect("nonzero input");
    let primitive = p.div_exact(&content, ring).expect("content divides");
    (content, primitive)
}

/// Multivariate gcd by recursive content extraction plus subresultant PRS on
/// the highest occurring variable. The result is defined up to a unit.
pub(crate) fn gcd_spoly<R: Ring>(p: &SPoly<R>, q: &SPoly<R>, nvars: usize, ring: &R) -> SPoly<R> {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let sp = p.support_vars(nvars);
    let sq = q.support_vars(nvars);
    let x = (0..nvars).rev().find(|&i| sp[i] || sq[i]);
    let x = match x {
        None => {
            // Two constants.
            let a = p.terms.values().next().unwrap();
            let b = q.terms.values().next().unwrap();
            return SPoly::constant(nvars, ring.gcd(a, b), ring);
        }
        Some(x) => x,
    };
    let (cp, pp) = content_primitive_in(p, x, nvars, ring);
    let (cq, qq) = content_primitive_in(q, x, nvars, ring);
    let cont = gcd_spoly(&cp, &cq, nvars, ring);

    let ca = uni_coeffs(&pp, x);
    let cb = uni_coeffs(&qq, x);
    let (ca, cb) = if uni_deg(&ca) >= uni_deg(&cb) {
        (ca, cb)
    } else {
        (cb, ca)
    };
    let raw = if uni_deg(&cb) == Some(0) {
        // One input is free of x after content removal: primitive parts are coprime in x.
        vec![SPoly::one(nvars, ring)]
    } else {
        subresultant_last(ca, cb, nvars, ring)
    };
    let raw_poly = assemble(&raw, x);
    let (_, prim) = content_primitive_in(&raw_poly, x, nvars, ring);
    cont.mul(&prim, ring)
}

// ---------------------------------------------------------------------------
// Fraction-free determinant (Bareiss with full pivoting).
// ---------------------------------------------------------------------------

/// Exact determinant of a square matrix of sparse polynomials.
///
/// One-step Bareiss with full pivoting; the pivot choice prefers few-term
/// entries and low fill (Markowitz count), which matters a great deal on the
/// structured elimination matrices this crate produces.
pub(crate) fn bareiss_det<R: Ring>(mut m: Vec<Vec<SPoly<R>>>, nvars: usize, ring: &R) -> SPoly<R> {
    let n = m.len();
    if n == 0 {
        return SPoly::one(nvars, ring);
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = SPoly::one(nvars, ring);
    for k in 0..n {
        // Pivot search over the active region.
        let mut row_nnz = vec![0usize; n];
        let mut col_nnz = vec![0usize; n];
        for i in k..n {
            for j in k..n {
                if !m[i][j].is_zero() {
                    row_nnz[i] += 1;
                    col_nnz[j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if m[i][j].is_zero() {
                    continue;
                }
                let terms = m[i][j].num_terms();
                let fill = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                match best {
                    Some((_, _, bt, bf)) if (bt, bf) <= (terms, fill) => {}
                    _ => best = Some((i, j, terms, fill)),
                }
            }
        }
        let (pi, pj) = match best {
            Some((i, j, _, _)) => (i, j),
            None => return SPoly::zero(),
        };
        if pi != k {
            m.swap(pi, k);
            sign_flip = !sign_flip;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            sign_flip = !sign_flip;
        }
        if k == n - 1 {
            break;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let mik = std::mem::replace(&mut m[i][k], SPoly::zero());
            for j in k + 1..n {
                let t1 = m[i][j].mul(&pivot, ring);
                let prod = if mik.is_zero() || m[k][j].is_zero() {
                    t1
                } else {
                    t1.sub(&mik.mul(&m[k][j], ring), ring)
                };
                m[i][j] = prod
                    .div_exact(&prev, ring)
                    .expect("Bareiss division is exact");
            }
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg(ring)
    } else {
        det
    }
}
