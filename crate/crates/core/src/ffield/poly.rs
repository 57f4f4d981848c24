//! Dense univariate polynomials over a [`Field`] and their factorization
//! (squarefree decomposition, distinct-degree, equal-degree splitting).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use super::{Elem, Field};
use crate::error::{Error, Result};

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one(f: &Field) -> Self {
        UPoly { coeffs: vec![f.one()] }
    }

    pub fn constant(f: &Field, c: Elem) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    /// The monomial `t`.
    pub fn x(f: &Field) -> Self {
        UPoly { coeffs: vec![f.zero(), f.one()] }
    }

    pub fn from_coeffs(f: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|&c| f.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, f: &Field, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or_else(|| f.zero())
    }

    pub fn lead(&self, f: &Field) -> Elem {
        self.coeffs.last().copied().unwrap_or_else(|| f.zero())
    }

    pub fn is_one(&self, f: &Field) -> bool {
        self.coeffs.len() == 1 && f.is_one(self.coeffs[0])
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(f, i), other.coeff(f, i))).collect();
        Self::from_coeffs(f, c)
    }

    pub fn neg(&self, f: &Field) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, f: &Field, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &Field, a: Elem) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().map(|&c| f.mul(c, a)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, f: &Field, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.lead(f))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![f.zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            quo[k] = c;
            if f.is_zero(c) {
                continue;
            }
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quo), Self::from_coeffs(f, rem)))
    }

    pub fn rem(&self, f: &Field, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(f, divisor)?.1)
    }

    /// Exact quotient; fails when the remainder is nonzero.
    pub fn div_exact(&self, f: &Field, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(f, divisor)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible("univariate remainder is nonzero".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, f: &Field) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(&l) => self.scale(f, f.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(f: &Field, a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_u64(i as u64), c)).collect();
        Self::from_coeffs(f, c)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Field, e: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(f, m)?;
        let mut acc = Self::one(f).rem(f, m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(f, &acc).rem(f, m)?;
            if e.bit(i) {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test: `gcd(f, t^{q^i} - t) = 1` for `i <= deg/2` and `f | t^{q^deg} - t`.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let m = self.monic(f);
        let q = BigUint::from(f.order());
        let x = Self::x(f);
        let mut h = x.clone();
        for i in 1..=n {
            h = h.powmod(f, &q, &m).expect("nonzero modulus");
            if i <= n / 2 && !Self::gcd(f, &h.sub(f, &x), &m).is_one(f) {
                return false;
            }
        }
        h.sub(f, &x).rem(f, &m).expect("nonzero modulus").is_zero()
    }

    /// Ordering used for deterministic factor lists: degree, then coefficients
    /// from the leading one down, compared by packed index.
    pub fn canonical_cmp(&self, f: &Field, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            let a = self.coeffs.iter().rev().map(|&c| f.to_index(c));
            let b = other.coeffs.iter().rev().map(|&c| f.to_index(c));
            a.cmp(b)
        })
    }

    /// All roots in the coefficient field, ascending by packed index, with multiplicity.
    pub fn roots(&self, f: &Field) -> Result<Vec<(Elem, u32)>> {
        let mut out: Vec<(Elem, u32)> = factor_univariate(f, self)?
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, m)| (f.neg(g.coeffs[0]), m))
            .collect();
        out.sort_by_key(|(r, _)| f.to_index(*r));
        Ok(out)
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self, f: &Field) -> Self {
        let p = f.characteristic() as usize;
        let e = f.order() / f.characteristic();
        let c = self.coeffs.iter().step_by(p).map(|&c| f.pow(c, e)).collect();
        Self::from_coeffs(f, c)
    }
}

/// Squarefree decomposition: pairs `(g_i, i)` with `f = lc * prod g_i^i`, `g_i` monic squarefree.
fn squarefree(f: &Field, poly: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    let poly = poly.monic(f);
    if poly.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = poly.derivative(f);
    let mut c = UPoly::gcd(f, &poly, &d);
    let mut w = poly.div_exact(f, &c).expect("gcd divides");
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = UPoly::gcd(f, &w, &c);
        let z = w.div_exact(f, &y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(f, &y).expect("gcd divides");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        let p = f.characteristic() as u32;
        for (g, m) in squarefree(f, &c.pth_root(f)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &Field, poly: &UPoly) -> Vec<(UPoly, usize)> {
    let mut out = Vec::new();
    let q = BigUint::from(f.order());
    let x = UPoly::x(f);
    let mut rest = poly.clone();
    let mut h = x.clone();
    let mut i = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(f, &q, &rest).expect("nonzero modulus");
        let g = UPoly::gcd(f, &h.sub(f, &x), &rest);
        if !g.is_one(f) {
            rest = rest.div_exact(f, &g).expect("gcd divides");
            h = h.rem(f, &rest).expect("nonzero modulus");
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(deg) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, deg));
    }
    out
}

/// The `counter`-th element of the deterministic splitting sequence: the
/// polynomial whose coefficients are the base-`q` digits of `counter`.
fn splitting_candidate(f: &Field, counter: u64, max_len: usize) -> UPoly {
    let q = f.order();
    let mut coeffs = Vec::new();
    let mut c = counter;
    while c > 0 && coeffs.len() < max_len {
        coeffs.push(f.from_index(c % q));
        c /= q;
    }
    UPoly::from_coeffs(f, coeffs)
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd characteristic) with a
/// deterministic candidate sequence.
fn equal_degree(f: &Field, poly: &UPoly, k: usize, out: &mut Vec<UPoly>) {
    let n = poly.degree().expect("nonzero");
    if n == k {
        out.push(poly.clone());
        return;
    }
    let exponent = (BigUint::from(f.order()).pow(k as u32) - BigUint::one()) >> 1;
    let one = UPoly::one(f);
    let mut counter = f.order();
    loop {
        counter += 1;
        let a = splitting_candidate(f, counter, n);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = UPoly::gcd(f, &a, poly);
        if g.is_one(f) {
            let b = a.powmod(f, &exponent, poly).expect("nonzero modulus").sub(f, &one);
            g = UPoly::gcd(f, &b, poly);
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = poly.div_exact(f, &g).expect("gcd divides");
            equal_degree(f, &g, k, out);
            equal_degree(f, &h.monic(f), k, out);
            return;
        }
    }
}

/// Factor a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. The leading coefficient is dropped.
pub fn factor_univariate(f: &Field, poly: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    for (sqf, mult) in squarefree(f, poly) {
        for (part, k) in distinct_degree(f, &sqf) {
            let mut pieces = Vec::new();
            equal_degree(f, &part, k, &mut pieces);
            for g in pieces {
                match out.iter_mut().find(|(h, _)| *h == g) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((g, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(f, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Field, c: &[i64]) -> UPoly {
        UPoly::from_coeffs(f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    fn expand(f: &Field, factors: &[(UPoly, u32)]) -> UPoly {
        factors.iter().fold(UPoly::one(f), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(f, g)))
    }

    #[test]
    fn t2_minus_1_over_f3() {
        let f = Field::new(3, 1).unwrap();
        let fac = factor_univariate(&f, &poly(&f, &[-1, 0, 1])).unwrap();
        assert_eq!(fac, vec![(poly(&f, &[1, 1]), 1), (poly(&f, &[-1, 1]), 1)]);
    }

    #[test]
    fn t2_plus_1_irreducible_over_f3() {
        let f = Field::new(3, 1).unwrap();
        let g = poly(&f, &[1, 0, 1]);
        assert_eq!(factor_univariate(&f, &g).unwrap(), vec![(g.clone(), 1)]);
        assert!(g.is_irreducible(&f));
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(factor_univariate(&f, &UPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn recovers_product_of_known_irreducibles() {
        let f = Field::new(5, 1).unwrap();
        // t + 1, t^2 + 2, t^3 + t + 1, and t + 1 again
        let parts = [poly(&f, &[1, 1]), poly(&f, &[2, 0, 1]), poly(&f, &[1, 1, 0, 1]), poly(&f, &[1, 1])];
        for g in &parts {
            assert!(g.is_irreducible(&f));
        }
        let prod = parts.iter().fold(UPoly::one(&f), |a, g| a.mul(&f, g)).scale(&f, f.from_u64(3));
        let fac = factor_univariate(&f, &prod).unwrap();
        assert_eq!(fac, vec![(parts[0].clone(), 2), (parts[1].clone(), 1), (parts[2].clone(), 1)]);
    }

    #[test]
    fn inseparable_power() {
        // (t^3 + 2)^3 over F_3 = t^9 + 2 ... p-th power structure
        let f = Field::new(3, 2).unwrap();
        let g = poly(&f, &[1, 1, 0, 1]);
        let cube = g.mul(&f, &g).mul(&f, &g);
        let fac = factor_univariate(&f, &cube).unwrap();
        let back = expand(&f, &fac);
        assert_eq!(back, cube.monic(&f));
        assert!(fac.iter().all(|(_, m)| *m % 3 == 0));
    }

    #[test]
    fn roots_over_extension() {
        let f = Field::new(3, 2).unwrap();
        // t^2 + 1 splits over F_9
        let r = poly(&f, &[1, 0, 1]).roots(&f).unwrap();
        assert_eq!(r.len(), 2);
        for (x, m) in r {
            assert_eq!(m, 1);
            assert!(f.is_zero(f.add(f.mul(x, x), f.one())));
        }
    }
}
