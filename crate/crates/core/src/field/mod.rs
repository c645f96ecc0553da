//! Arithmetic in GF(p^n).
//!
//! Elements are stored as their integer literal: the polynomial-basis
//! coordinates read as base-p digits, lowest degree first. So in GF(2^3)
//! with modulus `x^3 + x + 1` the literal `6` is `x^2 + x`, and in a prime
//! field the literal is the residue itself.
//!
//! A field `GF(q^m)` with `q = p^k` is never built as a tower: it is the flat
//! field `GF(p^(k*m))`, and `GF(q)` is recovered as the set fixed by the
//! q-power Frobenius (`sub_degree = k` in every method that takes one).

mod gfp_poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;

pub use gfp_poly::{first_irreducible, is_irreducible};

/// Default upper bound on p^n for fields used in exhaustive work.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// Fields up to this size get discrete log/antilog tables.
const TABLE_CAP: u64 = 1 << 20;

/// One element of a field, as its integer literal in `[0, p^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable field description: `{ "p", "n", "modulus" }`, modulus
/// coefficients low-degree first including the leading 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

#[derive(Debug)]
struct Tables {
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip one reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    p: u32,
    n: u32,
    q: u64,
    id: u64,
    modulus: Vec<u32>,
    /// For p = 2: the modulus as a bit mask including x^n.
    binary_mask: Option<u64>,
    generator: Elem,
    order_factorization: Vec<(u64, u32)>,
    tables: Option<Tables>,
}

/// An immutable finite field GF(p^n). Cloning is cheap (shared state).
#[derive(Clone, Debug)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id && self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds GF(p^n) with the default cap. See [`FieldCtx::build`].
pub fn make_field(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    FieldCtx::build(p, n, modulus, DEFAULT_CAP)
}

fn fingerprint(p: u32, n: u32, modulus: &[u32]) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf29ce484222325;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    feed(p as u64);
    feed(n as u64);
    for &c in modulus {
        feed(c as u64);
    }
    h
}

impl FieldCtx {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::build(p, n, None, DEFAULT_CAP)
    }

    pub fn with_modulus(p: u32, n: u32, modulus: &[u32]) -> Result<Self> {
        Self::build(p, n, Some(modulus), DEFAULT_CAP)
    }

    /// Constructs GF(p^n). Without an explicit modulus, picks the monic
    /// irreducible of degree n whose coefficient vector is smallest as a
    /// base-p integer (so `x^3 + x + 1` for GF(2^3)). The generator is the
    /// first of `x, x+1, ...` (literals `p, p+1, ...`, wrapping) whose order
    /// is p^n - 1.
    pub fn build(p: u32, n: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Self> {
        if !nt::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::bad("extension degree must be at least 1"));
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::CapExceeded { size: u64::MAX, cap })?;
        if q > cap {
            return Err(Error::CapExceeded { size: q, cap });
        }
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                let wide: Vec<u64> = m.iter().map(|&c| c as u64).collect();
                let ok =
                    m.len() == n as usize + 1 && m.iter().all(|&c| c < p) && gfp_poly::is_irreducible(&wide, p as u64);
                if !ok {
                    return Err(Error::NotIrreducible { degree: n });
                }
                m.to_vec()
            }
            None => gfp_poly::first_irreducible(p as u64, n)
                .into_iter()
                .map(|c| c as u32)
                .collect(),
        };
        let binary_mask = (p == 2).then(|| {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        });
        let mut inner = Inner {
            p,
            n,
            q,
            id: fingerprint(p, n, &modulus),
            modulus,
            binary_mask,
            generator: Elem::ONE,
            order_factorization: nt::factorize(q - 1),
            tables: None,
        };
        inner.generator = find_generator(&inner);
        if q <= TABLE_CAP {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Self> {
        Self::with_modulus(desc.p, desc.n, &desc.modulus)
    }

    pub fn describe(&self) -> FieldDesc {
        FieldDesc {
            p: self.inner.p,
            n: self.inner.n,
            modulus: self.inner.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    /// Number of elements, p^n.
    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn size(&self) -> usize {
        self.inner.q as usize
    }

    /// Identifier shared by every context built from the same (p, n, modulus).
    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn generator(&self) -> Elem {
        self.inner.generator
    }

    /// Prime factorization of p^n - 1.
    pub fn order_factorization(&self) -> &[(u64, u32)] {
        &self.inner.order_factorization
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.inner.q as u32).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.inner.q as u32).map(Elem)
    }

    /// Element with the given literal, range-checked.
    pub fn elem(&self, literal: u64) -> Result<Elem> {
        if literal < self.inner.q {
            Ok(Elem(literal as u32))
        } else {
            Err(Error::Parse(format!(
                "literal {literal} out of range for a field of {} elements",
                self.inner.q
            )))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(nt::rem_euclid(c as i128, self.inner.p as u64) as u32)
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        let p = self.inner.p;
        if coords.len() != self.inner.n as usize || coords.iter().any(|&c| c >= p) {
            return Err(Error::Parse(format!("bad coordinate vector {coords:?}")));
        }
        Ok(Elem(coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)))
    }

    /// Parses an element literal: a decimal integer in `[0, p^n)` or `g^k`
    /// for a power of the fixed generator.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if let Some(k) = t.strip_prefix("g^") {
            let e: BigUint = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator exponent in {text:?}")))?;
            return Ok(self.pow_big(self.generator(), &e));
        }
        if t == "g" {
            return Ok(self.generator());
        }
        let v: u64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad element literal {text:?}")))?;
        self.elem(v)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.inner.binary_mask.is_some() {
            return Elem(a.0 ^ b.0);
        }
        let p = self.inner.p;
        if self.inner.n == 1 {
            return Elem((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut w) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.inner.binary_mask.is_some() {
            return a;
        }
        let p = self.inner.p;
        let (mut x, mut out, mut w) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * w;
            x /= p;
            w = w.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.inner.tables {
            Some(t) => Elem(t.exp[(t.log[a.index()] + t.log[b.index()]) as usize]),
            None => mul_slow(&self.inner, a, b),
        }
    }

    /// `c * a` for an integer c taken mod p.
    pub fn scale(&self, c: i64, a: Elem) -> Elem {
        self.mul(self.from_int(c), a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.tables {
            Some(t) => {
                let qm1 = (self.inner.q - 1) as u32;
                Elem(t.exp[((qm1 - t.log[a.index()]) % qm1) as usize])
            }
            None => self.pow(a, self.inner.q - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`. For nonzero a the exponent is reduced mod p^n - 1.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let qm1 = self.inner.q - 1;
        let e = e % qm1;
        match &self.inner.tables {
            Some(t) => {
                let l = t.log[a.index()] as u128 * e as u128 % qm1 as u128;
                Elem(t.exp[l as usize])
            }
            None => pow_slow(&self.inner, a, e),
        }
    }

    pub fn pow_big(&self, a: Elem, e: &BigUint) -> Elem {
        if a.is_zero() {
            return if e.is_zero() { Elem::ONE } else { Elem::ZERO };
        }
        let r = (e % (self.inner.q - 1)).to_u64().unwrap_or(0);
        self.pow(a, r)
    }

    /// `a^e` for a possibly negative exponent; `a` must be nonzero when e < 0.
    pub fn pow_signed(&self, a: Elem, e: i128) -> Elem {
        if a.is_zero() {
            debug_assert!(e >= 0, "negative power of zero");
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        self.pow(a, nt::rem_euclid(e, self.inner.q - 1))
    }

    /// Number of elements of the subfield GF(p^sub_degree); checks that
    /// sub_degree divides n. Returns `m = n / sub_degree`.
    pub fn check_subfield(&self, sub_degree: u32) -> Result<u32> {
        if sub_degree == 0 || self.inner.n % sub_degree != 0 {
            return Err(Error::InvalidSubfield {
                sub_degree,
                degree: self.inner.n,
            });
        }
        Ok(self.inner.n / sub_degree)
    }

    /// `p^sub_degree`, the order of the subfield.
    pub fn subfield_order(&self, sub_degree: u32) -> Result<u64> {
        self.check_subfield(sub_degree)?;
        Ok((self.inner.p as u64).pow(sub_degree))
    }

    /// `a^(q^i)` with `q = p^sub_degree`.
    pub fn frobenius(&self, a: Elem, sub_degree: u32, i: u64) -> Result<Elem> {
        self.check_subfield(sub_degree)?;
        Ok(self.frob_unchecked(a, sub_degree, i))
    }

    pub(crate) fn frob_unchecked(&self, a: Elem, sub_degree: u32, i: u64) -> Elem {
        let k = (sub_degree as u64 * i) % self.inner.n as u64;
        if k == 0 {
            return a;
        }
        self.pow(a, (self.inner.p as u64).pow(k as u32))
    }

    /// `Tr_{q^m/q}(a) = a + a^q + ... + a^(q^(m-1))`, `q = p^sub_degree`.
    pub fn trace(&self, a: Elem, sub_degree: u32) -> Result<Elem> {
        let m = self.check_subfield(sub_degree)?;
        Ok(self.trace_unchecked(a, sub_degree, m))
    }

    pub(crate) fn trace_unchecked(&self, a: Elem, sub_degree: u32, m: u32) -> Elem {
        (0..m as u64).fold(Elem::ZERO, |acc, i| {
            self.add(acc, self.frob_unchecked(a, sub_degree, i))
        })
    }

    /// `N_{q^m/q}(a) = a * a^q * ... * a^(q^(m-1))`.
    pub fn norm(&self, a: Elem, sub_degree: u32) -> Result<Elem> {
        let m = self.check_subfield(sub_degree)?;
        Ok((0..m as u64).fold(Elem::ONE, |acc, i| self.mul(acc, self.frob_unchecked(a, sub_degree, i))))
    }

    /// Trace down to the prime field, as a residue in `[0, p)`.
    pub fn abs_trace(&self, a: Elem) -> u32 {
        self.trace_unchecked(a, 1, self.inner.n).0
    }

    pub fn in_subfield(&self, a: Elem, sub_degree: u32) -> Result<bool> {
        Ok(self.frobenius(a, sub_degree, 1)? == a)
    }

    /// `mu_ell`: the ell-th roots of unity, ordered as `g^((q-1)/ell * i)`.
    pub fn subgroup_mu(&self, ell: u64) -> Result<Vec<Elem>> {
        let qm1 = self.inner.q - 1;
        if ell == 0 || qm1 % ell != 0 {
            return Err(Error::NotDivisor { ell, order: qm1 });
        }
        let step = self.pow(self.generator(), qm1 / ell);
        let mut out = Vec::with_capacity(ell as usize);
        let mut cur = Elem::ONE;
        for _ in 0..ell {
            out.push(cur);
            cur = self.mul(cur, step);
        }
        Ok(out)
    }

    /// The subfield GF(p^sub_degree), sorted by literal.
    pub fn subfield_members(&self, sub_degree: u32) -> Result<Vec<Elem>> {
        let order = self.subfield_order(sub_degree)?;
        let mut out = self.subgroup_mu(order - 1)?;
        out.push(Elem::ZERO);
        out.sort_unstable();
        Ok(out)
    }

    /// Checked arithmetic on context-tagged elements.
    pub fn arith(&self, op: ArithOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
        let ax = self.unwrap_elem(a)?;
        let bx = match b {
            Some(b) => Some(self.unwrap_elem(b)?),
            None => None,
        };
        let need_b = || bx.ok_or_else(|| Error::bad(format!("{op:?} needs two operands")));
        let out = match op {
            ArithOp::Add => self.add(ax, need_b()?),
            ArithOp::Sub => self.sub(ax, need_b()?),
            ArithOp::Mul => self.mul(ax, need_b()?),
            ArithOp::Neg => self.neg(ax),
            ArithOp::Inv => self.inv(ax)?,
        };
        Ok(self.tag(out))
    }

    pub fn tag(&self, a: Elem) -> FieldElement {
        FieldElement {
            value: a,
            ctx_id: self.inner.id,
        }
    }

    fn unwrap_elem(&self, a: FieldElement) -> Result<Elem> {
        if a.ctx_id != self.inner.id {
            return Err(Error::CtxMismatch);
        }
        Ok(a.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

/// An element bound to the field it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub value: Elem,
    pub ctx_id: u64,
}

fn mul_slow(f: &Inner, a: Elem, b: Elem) -> Elem {
    if let Some(mask) = f.binary_mask {
        let n = f.n;
        let (mut x, mut y, mut r) = (a.0 as u64, b.0 as u64, 0u64);
        while y != 0 {
            if y & 1 == 1 {
                r ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x >> n & 1 == 1 {
                x ^= mask;
            }
        }
        return Elem(r as u32);
    }
    let p = f.p as u64;
    let n = f.n as usize;
    let digits = |mut v: u32| {
        let mut d = vec![0u64; n];
        for slot in d.iter_mut() {
            *slot = (v % f.p) as u64;
            v /= f.p;
        }
        d
    };
    let (da, db) = (digits(a.0), digits(b.0));
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (n..2 * n - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..n {
            let t = c * f.modulus[i] as u64 % p;
            prod[k - n + i] = (prod[k - n + i] + p - t) % p;
        }
        prod[k] = 0;
    }
    Elem(prod[..n].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32)
}

fn pow_slow(f: &Inner, a: Elem, mut e: u64) -> Elem {
    let mut acc = Elem::ONE;
    let mut b = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(f, acc, b);
        }
        b = mul_slow(f, b, b);
        e >>= 1;
    }
    acc
}

fn find_generator(f: &Inner) -> Elem {
    let qm1 = f.q - 1;
    let start = if f.n > 1 { f.p as u64 } else { 1 };
    (0..qm1)
        .map(|k| Elem(((start - 1 + k) % qm1 + 1) as u32))
        .find(|&g| {
            f.order_factorization
                .iter()
                .all(|&(r, _)| pow_slow(f, g, qm1 / r) != Elem::ONE)
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &Inner) -> Tables {
    let qm1 = (f.q - 1) as usize;
    let mut exp = vec![0u32; 2 * qm1.max(1)];
    let mut log = vec![0u32; f.q as usize];
    let mut cur = Elem::ONE;
    for i in 0..qm1.max(1) {
        exp[i] = cur.0;
        log[cur.index()] = i as u32;
        cur = mul_slow(f, cur, f.generator);
    }
    for i in qm1..2 * qm1 {
        exp[i] = exp[i - qm1];
    }
    Tables { exp, log }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let f2 = make_field(2, 1, None).unwrap();
        assert_eq!(f2.generator(), Elem::ONE);
        assert_eq!(f2.modulus(), &[0, 1]);

        let f8 = make_field(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        assert_eq!(
            make_field(2, 3, Some(&[1, 0, 0, 1])),
            Err(Error::NotIrreducible { degree: 3 })
        );
        assert_eq!(make_field(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldCtx::build(2, 25, None, DEFAULT_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn arith_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(f7.mul(Elem(3), Elem(5)), Elem(1));
        assert_eq!(f7.pow(Elem(3), 6), Elem(1));
        assert_eq!(f7.pow(Elem(0), 0), Elem(1));
        assert_eq!(f7.pow(Elem(0), 5), Elem(0));

        let f4 = make_field(2, 2, None).unwrap();
        let w = Elem(2);
        assert_eq!(f4.add(w, w), Elem::ZERO);
        assert_eq!(f4.frobenius(w, 1, 1).unwrap(), Elem(3));
        assert_eq!(f4.trace(Elem::ONE, 1).unwrap(), Elem::ZERO);
        assert_eq!(f4.trace(w, 1).unwrap(), Elem::ONE);

        let f8 = make_field(2, 3, None).unwrap();
        // x * x^2 = x^3 = x + 1
        assert_eq!(f8.mul(Elem(2), Elem(4)), Elem(3));
    }

    #[test]
    fn checked_arith_rejects_foreign_elements() {
        let f7 = make_field(7, 1, None).unwrap();
        let f5 = make_field(5, 1, None).unwrap();
        let a = f7.tag(Elem(3));
        let b = f5.tag(Elem(2));
        assert_eq!(f7.arith(ArithOp::Add, a, Some(b)), Err(Error::CtxMismatch));
        assert_eq!(
            f7.arith(ArithOp::Inv, f7.tag(Elem::ZERO), None),
            Err(Error::DivisionByZero)
        );
        assert_eq!(f7.arith(ArithOp::Mul, a, Some(f7.tag(Elem(5)))).unwrap().value, Elem(1));
        // same parameters, separately built: compatible
        let f7b = make_field(7, 1, None).unwrap();
        assert!(f7b.arith(ArithOp::Neg, a, None).is_ok());
    }

    #[test]
    fn subfields_and_roots_of_unity() {
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(f7.subgroup_mu(2).unwrap(), vec![Elem(1), Elem(6)]);
        assert_eq!(f7.subgroup_mu(1).unwrap(), vec![Elem(1)]);
        assert!(matches!(f7.subgroup_mu(4), Err(Error::NotDivisor { .. })));

        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(f4.subfield_members(1).unwrap(), vec![Elem(0), Elem(1)]);
        assert_eq!(f4.subfield_members(2).unwrap().len(), 4);
        assert!(matches!(
            make_field(2, 6, None).unwrap().trace(Elem(5), 4),
            Err(Error::InvalidSubfield { .. })
        ));
    }

    #[test]
    fn literals() {
        let f = make_field(3, 2, None).unwrap();
        assert_eq!(f.parse_elem("5").unwrap(), Elem(5));
        assert_eq!(f.parse_elem("g^0").unwrap(), Elem::ONE);
        assert_eq!(f.parse_elem("g^1").unwrap(), f.generator());
        assert!(f.parse_elem("9").is_err());
        assert_eq!(f.coords(Elem(5)), vec![2, 1]);
        assert_eq!(f.from_coords(&[2, 1]).unwrap(), Elem(5));
    }

    #[test]
    fn slow_and_table_kernels_agree() {
        for &(p, n) in &[(2u32, 6u32), (3, 4), (5, 2), (7, 2), (2, 9)] {
            let f = make_field(p, n, None).unwrap();
            let inner = &f.inner;
            for a in f.elements().step_by(7) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, b), mul_slow(inner, a, b));
                }
                if !a.is_zero() {
                    assert_eq!(f.pow(a, 12345), pow_slow(inner, a, 12345 % (f.order() - 1)));
                }
            }
        }
    }
}
