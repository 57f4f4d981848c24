//! Dense univariate polynomials over the integers, ascending coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// From coefficients listed highest degree first.
    pub fn from_descending(c: &[BigInt]) -> Self {
        Self::new(c.iter().rev().cloned().collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    /// `t^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        ZPoly { coeffs: c }
    }

    /// `t - a`.
    pub fn linear_root(a: &BigInt) -> Self {
        ZPoly { coeffs: vec![-a, BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `p(a t)`.
    pub fn scale_variable(&self, a: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= a;
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Quotient and remainder when the division is exact over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem_integral(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible("nonzero remainder".into()));
        }
        Ok(q)
    }

    /// Division in `Q[t]` that must stay in `Z[t]`; the remainder may be nonzero.
    pub fn divrem_integral(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quo = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible("leading coefficient".into()));
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * b;
            }
            quo[i] = qc;
        }
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`, with the power's
    /// sign kept positive so Sturm signs survive.
    pub fn sign_preserving_prem(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok(self.clone());
        };
        let lead = b.lead();
        let mut rem = self.coeffs.clone();
        for i in (0..=da - db).rev() {
            let c = rem[i + db].clone();
            for r in rem.iter_mut() {
                *r *= &lead;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[i + j] -= &c * bc;
            }
        }
        let mut out = Self::new(rem);
        if lead.is_negative() && (da - db + 1) % 2 == 1 {
            out = out.neg();
        }
        Ok(out)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.primitive(), b.primitive());
        while !b.is_zero() {
            let r = a.sign_preserving_prem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Product of the distinct irreducible factors, up to content.
    pub fn squarefree_part(&self) -> Self {
        let g = Self::gcd(self, &self.derivative());
        self.primitive().div_exact(&g).expect("gcd divides").primitive()
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &BigInt) -> Ordering {
        self.eval(x).cmp(&BigInt::zero())
    }

    /// Number of distinct real roots in `(a, b]`, by Sturm's theorem.
    pub fn count_real_roots(&self, a: &BigInt, b: &BigInt) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut seq = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].sign_preserving_prem(&seq[n - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            seq.push(r.neg().primitive_keep_sign());
        }
        let changes = |x: &BigInt| {
            let signs: Vec<Ordering> = seq.iter().map(|p| p.sign_at(x)).filter(|s| *s != Ordering::Equal).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a) - changes(b)
    }

    /// Divide by the positive content only.
    fn primitive_keep_sign(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }
}
