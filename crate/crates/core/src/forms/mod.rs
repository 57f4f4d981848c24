//! Homogeneous forms in `x, y, z` over `Z` and over finite fields, and dense
//! binary forms used for restrictions to lines.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};

mod binary;
mod parse;

pub use binary::{BinaryFactor, BinaryForm, SquareSplit};
pub use parse::parse_int_form;

/// Exponents of `x, y, z`.
pub type Monomial = [u32; 3];

/// Coefficient ring of a [`Form`].
pub trait Coefficients: Clone {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero_elem(&self) -> Self::Elem;
    fn one_elem(&self) -> Self::Elem;
    fn is_zero_elem(&self, a: &Self::Elem) -> bool;
    fn add_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg_elem(&self, a: &Self::Elem) -> Self::Elem;
    fn mul_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a`.
    fn div_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn elem_from_u64(&self, n: u64) -> Self::Elem;
    /// Whether elements of `self` and `other` can be mixed.
    fn compatible(&self, other: &Self) -> bool;
    fn format_elem(&self, a: &Self::Elem) -> String;
}

/// The integers, with [`BigInt`] coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Coefficients for Integers {
    type Elem = BigInt;

    fn zero_elem(&self) -> BigInt {
        BigInt::zero()
    }
    fn one_elem(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero_elem(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add_elems(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg_elem(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul_elems(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn div_elems(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn elem_from_u64(&self, n: u64) -> BigInt {
        BigInt::from(n)
    }
    fn compatible(&self, _: &Self) -> bool {
        true
    }
    fn format_elem(&self, a: &BigInt) -> String {
        alloc::format!("{a}")
    }
}

impl Coefficients for Arc<Field> {
    type Elem = Elem;

    fn zero_elem(&self) -> Elem {
        Field::zero(self)
    }
    fn one_elem(&self) -> Elem {
        Field::one(self)
    }
    fn is_zero_elem(&self, a: &Elem) -> bool {
        Field::is_zero(self, *a)
    }
    fn add_elems(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, *a, *b)
    }
    fn neg_elem(&self, a: &Elem) -> Elem {
        Field::neg(self, *a)
    }
    fn mul_elems(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn div_elems(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        Field::div(self, *a, *b).ok()
    }
    fn elem_from_u64(&self, n: u64) -> Elem {
        Field::from_u64(self, n)
    }
    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(self, other) || self.same_as(other)
    }
    fn format_elem(&self, a: &Elem) -> String {
        let s = Field::format(self, *a);
        if s.contains('t') {
            alloc::format!("({s})")
        } else {
            s
        }
    }
}

/// Graded reverse lexicographic comparison with `x > y > z`.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
    da.cmp(&db).then_with(|| {
        for i in (0..3).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Sparse homogeneous form in `x, y, z`.
#[derive(Clone, Debug)]
pub struct Form<R: Coefficients> {
    ring: R,
    degree: u32,
    terms: BTreeMap<Monomial, R::Elem>,
}

/// Form with integer coefficients.
pub type IntForm = Form<Integers>;
/// Form with coefficients in a finite field.
pub type ModForm = Form<Arc<Field>>;

impl<R: Coefficients> PartialEq for Form<R> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl<R: Coefficients> Form<R> {
    pub fn zero(ring: R, degree: u32) -> Self {
        Form { ring, degree, terms: BTreeMap::new() }
    }

    /// Build a form from terms; repeated monomials are summed.
    pub fn from_terms<I>(ring: R, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut f = Self::zero(ring, degree);
        for (m, c) in terms {
            if m.iter().sum::<u32>() != degree {
                return Err(Error::InvalidForm(alloc::format!("monomial {m:?} does not have degree {degree}")));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    pub fn monomial(ring: R, m: Monomial, c: R::Elem) -> Self {
        let degree = m.iter().sum();
        let mut f = Self::zero(ring, degree);
        f.add_term(m, c);
        f
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(ring: R, coeffs: [R::Elem; 3]) -> Self {
        let [a, b, c] = coeffs;
        let terms = [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)];
        Self::from_terms(ring, 1, terms).expect("degree-1 monomials")
    }

    /// The coordinate function `x`, `y` or `z` (index 0, 1, 2).
    pub fn variable(ring: R, index: usize) -> Self {
        let mut m = [0; 3];
        m[index] = 1;
        let one = ring.one_elem();
        Self::monomial(ring, m, one)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero_elem(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.ring.add_elems(old, &c);
                if self.ring.is_zero_elem(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero_elem())
    }

    /// Terms in descending grevlex order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, R::Elem)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.ring.compatible(&other.ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn check_same_degree(&self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.ring.neg_elem(c))).collect();
        Form { ring: self.ring.clone(), degree: self.degree, terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.degree);
        for (m, a) in &self.terms {
            out.add_term(*m, self.ring.mul_elems(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.ring.clone(), self.degree + other.degree);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                out.add_term(m, self.ring.mul_elems(a, b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::monomial(self.ring.clone(), [0, 0, 0], self.ring.one_elem());
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial(&self, index: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[index] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[index] -= 1;
            out.add_term(m2, self.ring.mul_elems(c, &self.ring.elem_from_u64(m[index] as u64)));
        }
        out
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check_compatible(divisor)?;
        let (lead_m, lead_c) = divisor.terms.iter().next_back().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero(self.ring.clone(), self.degree.saturating_sub(divisor.degree)));
        }
        if divisor.degree > self.degree {
            return Err(Error::NotDivisible("divisor degree exceeds dividend degree".into()));
        }
        let mut rem = self.clone();
        let mut quo = Self::zero(self.ring.clone(), self.degree - divisor.degree);
        // Lex order on the BTreeMap keys; the largest key of the remainder is
        // always cancelled by the largest key of the divisor.
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let shift = [m[0].checked_sub(lead_m[0]), m[1].checked_sub(lead_m[1]), m[2].checked_sub(lead_m[2])];
            let (Some(a), Some(b), Some(cz)) = (shift[0], shift[1], shift[2]) else {
                return Err(Error::NotDivisible("leading monomial not divisible".into()));
            };
            let coeff = self
                .ring
                .div_elems(&c, lead_c)
                .ok_or_else(|| Error::NotDivisible("coefficient not divisible".into()))?;
            let term = Self::monomial(self.ring.clone(), [a, b, cz], coeff.clone());
            rem = rem.sub(&divisor.mul(&term)?)?;
            quo.add_term([a, b, cz], coeff);
        }
        Ok(quo)
    }

    /// Substitute forms of a common degree for `x, y, z`.
    pub fn substitute(&self, subs: &[Form<R>; 3]) -> Result<Self> {
        let e = subs[0].degree;
        for s in subs {
            self.check_compatible(s)?;
            if s.degree != e {
                return Err(Error::DegreeMismatch { expected: e, found: s.degree });
            }
        }
        let n = self.degree as usize;
        let powers: Vec<Vec<Form<R>>> = subs
            .iter()
            .map(|s| {
                let mut v = Vec::with_capacity(n + 1);
                v.push(Self::monomial(self.ring.clone(), [0, 0, 0], self.ring.one_elem()));
                for i in 0..n {
                    let next = v[i].mul(s).expect("same ring");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(self.ring.clone(), self.degree * e);
        for (m, c) in &self.terms {
            let prod =
                powers[0][m[0] as usize].mul(&powers[1][m[1] as usize])?.mul(&powers[2][m[2] as usize])?.scale(c);
            for (mm, cc) in prod.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// `f o T`, i.e. `(f o T)(v) = f(T v)`.
    pub fn apply(&self, change: &LinearChange<R>) -> Result<Self> {
        let rows = change.row_forms();
        self.substitute(&rows)
    }
}

impl<R: Coefficients> fmt::Display for Form<R> {
    /// Canonical text: `c*x^a*y^b*z^c` joined by `+`, descending grevlex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}*x^{}*y^{}*z^{}", self.ring.format_elem(c), m[0], m[1], m[2])?;
        }
        Ok(())
    }
}

impl<R: Coefficients> Form<R> {
    /// Readable text such as `x^2 - 3*y*z + z^2`, in the canonical term order.
    pub fn pretty(&self) -> String {
        pretty_terms(
            self.sorted_terms()
                .iter()
                .map(|(m, c)| (self.ring.format_elem(c), [("x", m[0]), ("y", m[1]), ("z", m[2])])),
        )
    }
}

/// Joins `(coefficient, [(variable, exponent)])` terms, dropping unit
/// coefficients and zero exponents and folding signs into the separators.
pub(crate) fn pretty_terms<const N: usize>(terms: impl Iterator<Item = (String, [(&'static str, u32); N])>) -> String {
    let mut out = String::new();
    for (coeff, vars) in terms {
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff.as_str()),
        };
        let mut factors: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|&(v, e)| if e == 1 { v.into() } else { alloc::format!("{v}^{e}") })
            .collect();
        if mag != "1" || factors.is_empty() {
            factors.insert(0, mag.into());
        }
        let body = factors.join("*");
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&alloc::format!("-{body}")),
            (false, false) => out.push_str(&alloc::format!(" + {body}")),
            (false, true) => out.push_str(&alloc::format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl IntForm {
    /// Coefficientwise reduction into a field (residues in `[0, p)`).
    pub fn reduce_mod(&self, field: &Arc<Field>) -> ModForm {
        let mut out = ModForm::zero(field.clone(), self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, field.from_bigint(c));
        }
        out
    }

    /// Divide every coefficient by the integer `n`.
    pub fn divide_by_integer(&self, n: &BigInt) -> Result<Self> {
        let mut out = Self::zero(Integers, self.degree);
        for (m, c) in &self.terms {
            let q = Integers
                .div_elems(c, n)
                .ok_or_else(|| Error::NotDivisible(alloc::format!("coefficient {c} of {m:?} by {n}")))?;
            out.add_term(*m, q);
        }
        Ok(out)
    }

    pub fn from_i64_terms(degree: u32, terms: &[(Monomial, i64)]) -> Result<Self> {
        Self::from_terms(Integers, degree, terms.iter().map(|(m, c)| (*m, BigInt::from(*c))))
    }
}

impl ModForm {
    pub fn field(&self) -> &Arc<Field> {
        &self.ring
    }

    /// Value at a point (coordinates in the form's field).
    pub fn eval(&self, point: &[Elem; 3]) -> Elem {
        let f = &*self.ring;
        let n = self.degree as usize;
        let pows: Vec<Vec<Elem>> = point
            .iter()
            .map(|&v| {
                let mut row = Vec::with_capacity(n + 1);
                row.push(f.one());
                for i in 0..n {
                    row.push(f.mul(row[i], v));
                }
                row
            })
            .collect();
        self.terms.iter().fold(f.zero(), |acc, (m, &c)| {
            let t = f.mul(f.mul(pows[0][m[0] as usize], pows[1][m[1] as usize]), pows[2][m[2] as usize]);
            f.add(acc, f.mul(c, t))
        })
    }

    /// Integer lift with coefficients in `[0, p)`; the field must be prime.
    pub fn lift(&self) -> IntForm {
        let mut out = IntForm::zero(Integers, self.degree);
        for (m, &c) in &self.terms {
            let v = self.ring.as_prime(c).expect("lift requires prime-field coefficients");
            out.add_term(*m, BigInt::from(v));
        }
        out
    }

    /// Same form over a larger field of the same characteristic.
    pub fn extend_to(&self, target: &Arc<Field>, embedding: &crate::ffield::Embedding) -> ModForm {
        let mut out = ModForm::zero(target.clone(), self.degree);
        for (m, &c) in &self.terms {
            out.add_term(*m, embedding.apply(&self.ring, target, c));
        }
        out
    }

    /// Restriction to the line `line = 0`, parametrized by the reduced echelon
    /// kernel basis `(k1, k2)` of the line's coefficient vector:
    /// `g(s, t) = f(s k1 + t k2)`.
    pub fn restrict_to_line(&self, line: &ModForm) -> Result<BinaryForm> {
        if !self.ring.compatible(line.field()) {
            return Err(Error::ContextMismatch);
        }
        let [k1, k2] = line_kernel_basis(line)?;
        let f = &self.ring;
        let subs: [ModForm; 3] = core::array::from_fn(|i| ModForm::linear(f.clone(), [k1[i], k2[i], f.zero()]));
        let g = self.substitute(&subs)?;
        let n = self.degree as usize;
        let coeffs = (0..=n).map(|i| g.coeff(&[(n - i) as u32, i as u32, 0])).collect();
        Ok(BinaryForm::new(f.clone(), coeffs))
    }

    /// Set `x = 0` and view the result as a binary form in `(y, z)`.
    pub fn to_binary_at_x_zero(&self) -> BinaryForm {
        let n = self.degree as usize;
        let coeffs = (0..=n).map(|i| self.coeff(&[0, (n - i) as u32, i as u32])).collect();
        BinaryForm::new(self.ring.clone(), coeffs)
    }

    /// Coefficient vector `[a, b, c]` of a linear form.
    pub fn linear_coeffs(&self) -> Result<[Elem; 3]> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: self.degree });
        }
        Ok([self.coeff(&[1, 0, 0]), self.coeff(&[0, 1, 0]), self.coeff(&[0, 0, 1])])
    }
}

/// Kernel basis `(k1, k2)` of a line's coefficient vector in reduced echelon
/// form: the pivot is the first nonzero coordinate, the free coordinates are
/// the other two in increasing order.
pub fn line_kernel_basis(line: &ModForm) -> Result<[[Elem; 3]; 2]> {
    let f: &Field = line.field();
    let a = line.linear_coeffs()?;
    let pivot = (0..3).find(|&i| !f.is_zero(a[i])).ok_or(Error::ZeroLine)?;
    let inv = f.inv(a[pivot])?;
    let free: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let basis = [free[0], free[1]].map(|j| {
        let mut k = [f.zero(); 3];
        k[j] = f.one();
        k[pivot] = f.neg(f.mul(a[j], inv));
        k
    });
    Ok(basis)
}

/// Invertible 3x3 change of coordinates.
#[derive(Clone, Debug)]
pub struct LinearChange<R: Coefficients> {
    ring: R,
    m: [[R::Elem; 3]; 3],
}

impl<R: Coefficients> LinearChange<R> {
    /// Rejects matrices with zero determinant.
    pub fn new(ring: R, m: [[R::Elem; 3]; 3]) -> Result<Self> {
        let c = LinearChange { ring, m };
        if c.ring.is_zero_elem(&c.determinant()) {
            return Err(Error::SingularChange);
        }
        Ok(c)
    }

    pub fn identity(ring: R) -> Self {
        let m =
            core::array::from_fn(|i| core::array::from_fn(|j| if i == j { ring.one_elem() } else { ring.zero_elem() }));
        LinearChange { ring, m }
    }

    pub fn matrix(&self) -> &[[R::Elem; 3]; 3] {
        &self.m
    }

    pub fn determinant(&self) -> R::Elem {
        let r = &self.ring;
        let m = &self.m;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            r.add_elems(&r.mul_elems(&m[1][a], &m[2][b]), &r.neg_elem(&r.mul_elems(&m[1][c], &m[2][d])))
        };
        let t0 = r.mul_elems(&m[0][0], &minor(1, 2, 2, 1));
        let t1 = r.mul_elems(&m[0][1], &minor(0, 2, 2, 0));
        let t2 = r.mul_elems(&m[0][2], &minor(0, 1, 1, 0));
        r.add_elems(&r.add_elems(&t0, &r.neg_elem(&t1)), &t2)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let r = &self.ring;
        let m = core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                (0..3).fold(r.zero_elem(), |acc, k| r.add_elems(&acc, &r.mul_elems(&self.m[i][k], &other.m[k][j])))
            })
        });
        LinearChange { ring: r.clone(), m }
    }

    fn row_forms(&self) -> [Form<R>; 3] {
        core::array::from_fn(|i| Form::linear(self.ring.clone(), self.m[i].clone()))
    }
}

impl LinearChange<Arc<Field>> {
    pub fn inverse(&self) -> Result<Self> {
        let f: &Field = &self.ring;
        let det_inv = f.inv(self.determinant())?;
        let m = &self.m;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]))
        };
        let inv = core::array::from_fn(|i| core::array::from_fn(|j| f.mul(cof(j, i), det_inv)));
        Ok(LinearChange { ring: self.ring.clone(), m: inv })
    }

    /// `T v` for a point `v`.
    pub fn apply_point(&self, v: &[Elem; 3]) -> [Elem; 3] {
        let f: &Field = &self.ring;
        core::array::from_fn(|i| (0..3).fold(f.zero(), |acc, k| f.add(acc, f.mul(self.m[i][k], v[k]))))
    }

    /// The change `T` with `line o T = x`: `T` is the inverse of the matrix whose
    /// first row is the line and whose other rows are the standard basis
    /// vectors away from the line's first nonzero coordinate.
    pub fn sending_line_to_x(line: &ModForm) -> Result<Self> {
        let field = line.field().clone();
        let f: &Field = &field;
        let a = line.linear_coeffs()?;
        let pivot = (0..3).find(|&i| !f.is_zero(a[i])).ok_or(Error::ZeroLine)?;
        let mut rows = [[f.zero(); 3]; 3];
        rows[0] = a;
        for (r, j) in (1..).zip((0..3).filter(|&j| j != pivot)) {
            rows[r][j] = f.one();
        }
        LinearChange::new(field.clone(), rows)?.inverse()
    }

    /// Integer lift of the matrix entries (prime field only).
    pub fn lift(&self) -> LinearChange<Integers> {
        let m = core::array::from_fn(|i| {
            core::array::from_fn(|j| BigInt::from(self.ring.as_prime(self.m[i][j]).expect("prime field")))
        });
        LinearChange { ring: Integers, m }
    }
}

/// Normalize a projective point or line so that its first nonzero coordinate is 1.
pub fn normalize_first(f: &Field, v: &[Elem; 3]) -> Result<[Elem; 3]> {
    let i = (0..3).find(|&i| !f.is_zero(v[i])).ok_or(Error::ZeroInput)?;
    let inv = f.inv(v[i])?;
    Ok(v.map(|c| f.mul(c, inv)))
}

/// Normalize so that the last nonzero coordinate is 1.
pub fn normalize_last(f: &Field, v: &[Elem; 3]) -> Result<[Elem; 3]> {
    let i = (0..3).rev().find(|&i| !f.is_zero(v[i])).ok_or(Error::ZeroInput)?;
    let inv = f.inv(v[i])?;
    Ok(v.map(|c| f.mul(c, inv)))
}

#[cfg(test)]
mod tests;
