//! Arithmetic in finite fields `F_q`, `q = p^d`, `p` odd.
//!
//! A [`Field`] is an immutable context. Elements are plain [`Elem`] handles
//! whose meaning depends on the field that created them: under the Zech
//! representation an element is a discrete logarithm with respect to a fixed
//! primitive element (or the zero marker `q - 1`), otherwise it is the packed
//! base-`p` integer `c_0 + c_1 p + ... + c_{d-1} p^{d-1}` of its coefficient
//! vector modulo the defining polynomial.
//!
//! The defining polynomial is the monic irreducible of degree `d` whose
//! coefficient vector `(c_{d-1}, ..., c_0)` is lexicographically least.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

mod embed;
mod poly;

pub use embed::{embed_subfield, Embedding};
pub use poly::{factor_univariate, UPoly};

/// Fields up to this order get Zech logarithm tables by default.
pub const DEFAULT_ZECH_LIMIT: u64 = 1 << 22;

/// Largest supported extension degree; bounded by the packed `u64` encoding.
pub const MAX_DEGREE: usize = 64;

const MAX_ORDER: u64 = 1 << 62;
const MAX_PRIME: u64 = 1 << 31;

/// Field element handle. Only meaningful together with the [`Field`] that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elem(u64);

impl Elem {
    /// Raw representation (a logarithm under Zech, a packed index otherwise).
    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }
}

/// Lookup tables for the Zech representation.
///
/// Logarithms live in `[0, q-1)`; the value `q - 1` stands for zero.
#[derive(Clone, Debug)]
pub struct ZechTables {
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl ZechTables {
    /// The multiplicative group order `q - 1`, which doubles as the zero marker.
    #[inline(always)]
    pub fn zero_marker(&self) -> u32 {
        self.order
    }

    #[inline(always)]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Product of two elements given as logarithms.
    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.order;
        if a == n || b == n {
            return n;
        }
        let s = a + b;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    /// Multiply a logarithm by `g^j` with `j < q - 1`.
    #[inline(always)]
    pub fn mul_by_power(&self, a: u32, j: u32) -> u32 {
        let n = self.order;
        if a == n {
            return n;
        }
        let s = a + j;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    /// Sum of two elements given as logarithms: `g^a + g^b = g^a (1 + g^(b-a))`.
    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let n = self.order;
        if a == n {
            return b;
        }
        if b == n {
            return a;
        }
        let diff = if b >= a { b - a } else { b + n - a };
        let z = self.zech[diff as usize];
        if z == n {
            return n;
        }
        let s = a + z;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    /// `zech[i] = log(1 + g^i)`, with the zero marker where `g^i = -1`.
    #[inline]
    pub fn zech_table(&self) -> &[u32] {
        &self.zech
    }

    /// Packed index of `g^log`.
    #[inline]
    pub fn exp(&self, log: u32) -> u32 {
        if log == self.order {
            0
        } else {
            self.exp[log as usize]
        }
    }

    /// Logarithm of the element with the given packed index.
    #[inline]
    pub fn log(&self, index: u32) -> u32 {
        self.log[index as usize]
    }
}

/// Immutable finite field context.
#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    d: u32,
    q: u64,
    /// Monic defining polynomial, ascending coefficients, length `d + 1`.
    modulus: Vec<u64>,
    zech: Option<ZechTables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.zech.is_some() == other.zech.is_some()
    }
}

impl Eq for Field {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += if k == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The field `F_{p^d}` with the default Zech limit.
    pub fn new(p: u64, d: u32) -> Result<Self> {
        Self::with_zech_limit(p, d, DEFAULT_ZECH_LIMIT)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// The field `F_{p^d}`, using Zech tables only when `q <= zech_limit`.
    pub fn with_zech_limit(p: u64, d: u32, zech_limit: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if p >= MAX_PRIME {
            return Err(Error::FieldTooLarge { p, d });
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let mut q: u64 = 1;
        for _ in 0..d {
            q = q.checked_mul(p).filter(|&v| v <= MAX_ORDER).ok_or(Error::FieldTooLarge { p, d })?;
        }
        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            let base = Field::with_zech_limit(p, 1, 0)?;
            lex_least_irreducible(&base, d)
        };
        let mut field = Field { p, d, q, modulus, zech: None };
        if q <= zech_limit && q <= u32::MAX as u64 {
            field.zech = Some(field.build_zech_tables());
        }
        Ok(field)
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Defining polynomial, ascending coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zech_tables(&self) -> Option<&ZechTables> {
        self.zech.as_ref()
    }

    pub fn is_zech(&self) -> bool {
        self.zech.is_some()
    }

    /// Whether elements of `self` and `other` are interchangeable.
    pub fn same_as(&self, other: &Field) -> bool {
        self == other
    }

    fn build_zech_tables(&self) -> ZechTables {
        let g = self.find_primitive_packed();
        let n = (self.q - 1) as u32;
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![n; self.q as usize];
        let t_index = if self.d == 1 { u64::MAX } else { self.p };
        let mut cur = 1u64;
        for i in 0..n {
            exp[i as usize] = cur as u32;
            log[cur as usize] = i;
            cur = if g == t_index { self.packed_mul_by_t(cur) } else { self.packed_mul(cur, g) };
        }
        let mut zech = vec![n; n as usize];
        for i in 0..n {
            let idx = exp[i as usize] as u64;
            let c0 = idx % self.p;
            let succ = idx - c0 + (c0 + 1) % self.p;
            zech[i as usize] = log[succ as usize];
        }
        ZechTables { order: n, exp, log, zech }
    }

    fn find_primitive_packed(&self) -> u64 {
        let n = self.q - 1;
        let factors = prime_factors(n);
        let start = if self.d == 1 { 2 } else { self.p };
        (start..self.q)
            .find(|&g| factors.iter().all(|&r| self.packed_pow(g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    // ---- packed (polynomial) arithmetic -------------------------------------

    #[inline]
    fn unpack(&self, mut v: u64, out: &mut [u64; MAX_DEGREE]) {
        for slot in out.iter_mut().take(self.d as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    #[inline]
    fn pack(&self, digits: &[u64]) -> u64 {
        digits[..self.d as usize].iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    fn packed_add(&self, a: u64, b: u64) -> u64 {
        if self.d == 1 {
            return (a + b) % self.p;
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        for i in 0..self.d as usize {
            x[i] = (x[i] + y[i]) % self.p;
        }
        self.pack(&x)
    }

    fn packed_neg(&self, a: u64) -> u64 {
        if self.d == 1 {
            return (self.p - a) % self.p;
        }
        let mut x = [0u64; MAX_DEGREE];
        self.unpack(a, &mut x);
        for c in x.iter_mut().take(self.d as usize) {
            *c = (self.p - *c) % self.p;
        }
        self.pack(&x)
    }

    fn packed_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.d == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let d = self.d as usize;
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                prod[k - d + i] = (prod[k - d + i] + c * (p - self.modulus[i])) % p;
            }
        }
        self.pack(&prod)
    }

    fn packed_mul_by_t(&self, a: u64) -> u64 {
        let d = self.d as usize;
        let p = self.p;
        let mut x = [0u64; MAX_DEGREE];
        self.unpack(a, &mut x);
        let top = x[d - 1];
        for i in (1..d).rev() {
            x[i] = (x[i - 1] + top * (p - self.modulus[i])) % p;
        }
        x[0] = (top * (p - self.modulus[0])) % p;
        self.pack(&x)
    }

    fn packed_pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.packed_mul(acc, base);
            }
            base = self.packed_mul(base, base);
            e >>= 1;
        }
        acc
    }

    // ---- public element API -------------------------------------------------

    #[inline]
    pub fn zero(&self) -> Elem {
        match &self.zech {
            Some(z) => Elem(z.order as u64),
            None => Elem(0),
        }
    }

    #[inline]
    pub fn one(&self) -> Elem {
        match &self.zech {
            Some(_) => Elem(0),
            None => Elem(1),
        }
    }

    #[inline]
    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.zero()
    }

    #[inline]
    pub fn is_one(&self, a: Elem) -> bool {
        a == self.one()
    }

    /// Element with the given packed coefficient index (`0 <= index < q`).
    pub fn from_index(&self, index: u64) -> Elem {
        debug_assert!(index < self.q);
        match &self.zech {
            Some(z) => Elem(z.log[index as usize] as u64),
            None => Elem(index),
        }
    }

    /// Packed coefficient index of an element; independent of the representation.
    pub fn to_index(&self, a: Elem) -> u64 {
        match &self.zech {
            Some(z) => z.exp(a.0 as u32) as u64,
            None => a.0,
        }
    }

    /// Coefficients `(c_0, ..., c_{d-1})` of `a` as a polynomial in the generator `t`.
    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        let mut x = [0u64; MAX_DEGREE];
        self.unpack(self.to_index(a), &mut x);
        x[..self.d as usize].to_vec()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elem {
        let mut x = [0u64; MAX_DEGREE];
        for (i, &c) in coeffs.iter().enumerate().take(self.d as usize) {
            x[i] = c % self.p;
        }
        self.from_index(self.pack(&x))
    }

    pub fn from_u64(&self, n: u64) -> Elem {
        self.from_index(n % self.p)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_index(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        let r = n.mod_floor(&BigInt::from(self.p));
        self.from_index(r.to_u64().expect("residue fits u64"))
    }

    /// The integer in `[0, p)` represented by `a`, if `a` lies in the prime field.
    pub fn as_prime(&self, a: Elem) -> Option<u64> {
        let idx = self.to_index(a);
        (idx < self.p).then_some(idx)
    }

    /// The generator `t` of the extension (the class of the polynomial variable).
    pub fn generator(&self) -> Elem {
        if self.d == 1 {
            self.from_index(0)
        } else {
            self.from_index(self.p)
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.zech {
            Some(z) => Elem(z.add(a.0 as u32, b.0 as u32) as u64),
            None => Elem(self.packed_add(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.zech {
            Some(z) => {
                if a.0 == z.order as u64 {
                    a
                } else {
                    let half = (z.order / 2) as u64;
                    Elem((a.0 + half) % z.order as u64)
                }
            }
            None => Elem(self.packed_neg(a.0)),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.zech {
            Some(z) => Elem(z.mul(a.0 as u32, b.0 as u32) as u64),
            None => Elem(self.packed_mul(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.zech {
            Some(z) => Elem(((z.order as u64) - a.0) % z.order as u64),
            None => self.pow(a, self.q - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply (`0^0 = 1`).
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        match &self.zech {
            Some(z) => {
                if e == 0 {
                    return self.one();
                }
                if a.0 == z.order as u64 {
                    return a;
                }
                let n = z.order as u128;
                Elem(((a.0 as u128 * (e as u128 % n)) % n) as u64)
            }
            None => Elem(self.packed_pow(a.0, e)),
        }
    }

    pub fn pow_big(&self, a: Elem, e: &BigUint) -> Elem {
        if let Some(z) = &self.zech {
            let r = (e % BigUint::from(z.order)).to_u64().unwrap_or(0);
            if e.is_zero() {
                return self.one();
            }
            if self.is_zero(a) {
                return a;
            }
            return Elem((a.0 as u128 * r as u128 % z.order as u128) as u64);
        }
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    pub fn quad_char(&self, a: Elem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        match &self.zech {
            Some(_) => {
                if a.0.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            None => {
                if self.is_one(self.pow(a, (self.q - 1) / 2)) {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// A square root of `a`, if it exists; the one with smaller packed index.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(a);
        }
        if self.quad_char(a) != 1 {
            return None;
        }
        let root = match &self.zech {
            Some(_) => Elem(a.0 / 2),
            None => self.tonelli_shanks(a),
        };
        let other = self.neg(root);
        Some(if self.to_index(other) < self.to_index(root) { other } else { root })
    }

    fn tonelli_shanks(&self, a: Elem) -> Elem {
        let mut s = 0u32;
        let mut odd = self.q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let nonresidue = (1..self.q)
            .map(|i| self.from_index(i))
            .find(|&z| self.quad_char(z) == -1)
            .expect("odd field has non-residues");
        let mut m = s;
        let mut c = self.pow(nonresidue, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        while !self.is_one(t) {
            let mut i = 0u32;
            let mut tt = t;
            while !self.is_one(tt) {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        match &self.zech {
            Some(_) => Elem(1),
            None => Elem(self.find_primitive_packed()),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while ord.is_multiple_of(r) && self.is_one(self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// All elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    /// Human-readable element: an integer for prime-field elements, else a
    /// polynomial in `t`.
    pub fn format(&self, a: Elem) -> String {
        if let Some(n) = self.as_prime(a) {
            return alloc::format!("{n}");
        }
        let coeffs = self.coeffs(a);
        let mut s = String::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (i, c) {
                (0, _) => write!(s, "{c}").unwrap(),
                (1, 1) => s.push('t'),
                (1, _) => write!(s, "{c}*t").unwrap(),
                (_, 1) => write!(s, "t^{i}").unwrap(),
                _ => write!(s, "{c}*t^{i}").unwrap(),
            }
        }
        s
    }
}

/// Lexicographically least monic irreducible of degree `d` over the prime field.
fn lex_least_irreducible(base: &Field, d: u32) -> Vec<u64> {
    let p = base.characteristic();
    let d = d as usize;
    let total = p.pow(d as u32);
    for n in 0..total {
        // n enumerates (c_{d-1}, ..., c_0) with c_{d-1} most significant.
        let mut coeffs = vec![0u64; d + 1];
        let mut v = n;
        for c in coeffs.iter_mut().take(d) {
            *c = v % p;
            v /= p;
        }
        coeffs[d] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let poly = UPoly::from_coeffs(base, coeffs.iter().map(|&c| base.from_u64(c)).collect());
        if poly.is_irreducible(base) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn create_prime_field() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn create_rejects_bad_characteristic() {
        assert_eq!(Field::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(2, 3), Err(Error::EvenCharacteristic));
        assert_eq!(Field::new(3, 0), Err(Error::ZeroDegree));
        assert!(matches!(Field::new(3, 60), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn f25_generator_has_full_order() {
        for limit in [DEFAULT_ZECH_LIMIT, 0] {
            let f = Field::with_zech_limit(5, 2, limit).unwrap();
            let g = f.primitive_element();
            assert!(f.is_one(f.pow(g, 24)));
            for k in 1..24 {
                assert!(!f.is_one(f.pow(g, k)));
            }
        }
    }

    #[test]
    fn small_prime_arithmetic() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.to_index(f.add(f.from_u64(3), f.from_u64(4))), 2);
        assert_eq!(f.to_index(f.pow(f.from_u64(2), 4)), 1);
        assert_eq!(f.div(f.one(), f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn f9_inverses_exhaustive() {
        for limit in [DEFAULT_ZECH_LIMIT, 0] {
            let f = Field::with_zech_limit(3, 2, limit).unwrap();
            for a in f.elements().skip(1) {
                assert!(f.is_one(f.mul(a, f.pow(a, 9 - 2))));
                assert!(f.is_one(f.mul(a, f.inv(a).unwrap())));
            }
        }
    }

    #[test]
    fn quadratic_character_small() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.quad_char(f.zero()), 0);
        assert_eq!(f.quad_char(f.from_u64(4)), 1);
        assert_eq!(f.quad_char(f.from_u64(2)), -1);
    }

    #[test]
    fn zech_tables_are_inverse_bijections() {
        let f = Field::new(3, 4).unwrap();
        let z = f.zech_tables().unwrap();
        for idx in 1..81u32 {
            assert_eq!(z.exp(z.log(idx)), idx);
        }
        for l in 0..80u32 {
            assert_eq!(z.log(z.exp(l)), l);
        }
    }

    #[test]
    fn representations_agree() {
        for (p, d) in [(3u64, 3u32), (5, 2), (7, 2), (3, 5)] {
            let zf = Field::new(p, d).unwrap();
            let pf = Field::with_zech_limit(p, d, 0).unwrap();
            let q = zf.order();
            for i in (0..q).step_by(7) {
                for j in (0..q).step_by(5) {
                    let (za, zb) = (zf.from_index(i), zf.from_index(j));
                    let (pa, pb) = (pf.from_index(i), pf.from_index(j));
                    assert_eq!(zf.to_index(zf.add(za, zb)), pf.to_index(pf.add(pa, pb)));
                    assert_eq!(zf.to_index(zf.mul(za, zb)), pf.to_index(pf.mul(pa, pb)));
                    assert_eq!(zf.to_index(zf.sub(za, zb)), pf.to_index(pf.sub(pa, pb)));
                    assert_eq!(zf.quad_char(za), pf.quad_char(pa));
                }
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        for limit in [DEFAULT_ZECH_LIMIT, 0] {
            let f = Field::with_zech_limit(7, 2, limit).unwrap();
            for a in f.elements() {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(f.mul(r, r), a),
                    None => assert_eq!(f.quad_char(a), -1),
                }
            }
        }
    }

    #[test]
    fn format_elements() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.format(f.from_u64(2)), "2");
        assert_eq!(f.format(f.from_coeffs(&[1, 2])), "2*t+1");
    }
}
