//! Exact arithmetic in GF(p^m).
//!
//! A [`Field`] is a context: it owns the modulus and the lookup tables, while
//! elements are plain [`Elem`] values carrying the base-p little-endian integer
//! encoding of their coefficient vector. Multiplication goes through
//! discrete-log tables built from the primitive element, addition is done
//! digit-wise (XOR for p = 2, a full table for small q).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default upper bound on the field order.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

/// Largest q for which a full addition table is materialized.
const ADD_TABLE_MAX: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the cap {cap}")]
    CapExceeded { p: u64, m: u32, cap: u64 },
    #[error("value {value} is not an element of GF({q})")]
    ForeignElement { value: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("malformed field descriptor {0:?}, expected p^m")]
    BadDescriptor(String),
}

/// A field element in integer encoding: `sum c_i p^i` over its coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw encoding without range checking; see [`Field::elem`].
    pub const fn from_raw(value: u32) -> Self {
        Elem(value)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Inv,
    Neg,
}

/// GF(p^m) with the lexicographically smallest monic irreducible modulus.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, little-endian, `m + 1` coefficients.
    modulus: Vec<u32>,
    primitive: Elem,
    /// `exp[i] = primitive^i` for `i in 0..q-1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.m)
    }
}

impl FromStr for Field {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GfError::BadDescriptor(s.to_string());
        let (p, m) = s.trim().split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        Field::new(p, m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial helpers over GF(p), little-endian coefficient vectors.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `b`.
    pub fn rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        while r.len() > db {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Monic polynomial of degree `deg` whose lower coefficients encode `code` in base p.
    pub fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            c.push((code % p as u64) as u32);
            code /= p as u64;
        }
        c.push(1);
        c
    }

    /// Irreducibility by trial division against every monic polynomial of degree <= deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d);
            for code in 0..count {
                let g = monic_from_code(code, d, p);
                if rem_monic(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    /// Builds GF(p^m) under the default order cap.
    pub fn new(p: u64, m: u32) -> Result<Self, GfError> {
        Self::with_cap(p, m, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u64, m: u32, cap: u64) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= cap && q <= u32::MAX as u64)
            .ok_or(GfError::CapExceeded { p, m, cap })?;
        let (p, q) = (p as u32, q as u32);

        let modulus = (0..(p as u64).pow(m))
            .map(|code| poly::monic_from_code(code, m, p))
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            primitive: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: None,
        };
        field.neg = (0..q).map(|a| field.neg_digits(a)).collect();
        if q <= ADD_TABLE_MAX {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = Some(table);
        }
        field.primitive = field.find_primitive();
        field.build_log_tables();
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The order q = p^m.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Checked constructor from the integer encoding.
    pub fn elem(&self, value: u32) -> Result<Elem, GfError> {
        if value < self.q {
            Ok(Elem(value))
        } else {
            Err(GfError::ForeignElement { value, q: self.q })
        }
    }

    /// Embeds an integer through the prime subfield (`n mod p`).
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.q
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    /// Coefficient vector of `a`, exactly `m` entries.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, GfError> {
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(GfError::ForeignElement { value: c, q: self.p });
            }
            value = value * self.p as u64 + c as u64;
        }
        if coeffs.len() > self.m as usize || value >= self.q as u64 {
            return Err(GfError::ForeignElement { value: value as u32, q: self.q });
        }
        Ok(Elem(value as u32))
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    /// Multiplication through polynomial reduction; used to bootstrap the log tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let pa = self.coeffs(Elem(a));
        let pb = self.coeffs(Elem(b));
        let prod = poly::mul(&pa, &pb, self.p);
        let r = poly::rem_monic(&prod, &self.modulus, self.p);
        r.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Elem {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != 1))
            .map(Elem)
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let g = self.primitive.0;
        self.exp = vec![0; n.max(1)];
        self.log = vec![0; self.q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            self.exp[i] = cur;
            self.log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, g);
        }
    }

    /// The smallest element (by encoding) of multiplicative order q - 1.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.add {
            Some(t) => Elem(t[(a.0 * self.q + b.0) as usize]),
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// `a^e` with the convention `x^0 = 1` for every x, zero included.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % n) % n;
        Elem(self.exp[l as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplies `a` by an integer scalar through the prime subfield.
    pub fn scale_int(&self, a: Elem, n: i64) -> Elem {
        self.mul(a, self.from_int(n))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64, GfError> {
        if a.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Ok(n / num_integer::gcd(n, l))
    }

    /// Range-checked arithmetic entry point. `b` is the exponent for [`ArithOp::Pow`]
    /// and is ignored by the unary operations.
    pub fn arith(&self, op: ArithOp, a: Elem, b: Elem) -> Result<Elem, GfError> {
        let checked: &[Elem] = match op {
            ArithOp::Inv | ArithOp::Neg | ArithOp::Pow => &[a],
            _ => &[a, b],
        };
        if let Some(x) = checked.iter().find(|x| !self.contains(**x)) {
            return Err(GfError::ForeignElement { value: x.0, q: self.q });
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Pow => self.pow(a, b.0 as u64),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Neg => self.neg(a),
        })
    }
}
