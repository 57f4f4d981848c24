use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::ffield::{factor_univariate, Elem, Field, UPoly};

/// Dense binary form `sum c_i s^(n-i) t^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

/// Result of [`BinaryForm::perfect_square_split`].
#[derive(Clone, Debug, PartialEq)]
pub enum SquareSplit {
    NotSquare,
    /// `g = unit * h^2`; `split_degree` is 1 when `unit` is a square in the
    /// field and 2 otherwise.
    Square {
        h: BinaryForm,
        unit: Elem,
        split_degree: u32,
    },
}

/// An irreducible factor of a binary form.
#[derive(Clone, Debug, PartialEq)]
pub enum BinaryFactor {
    /// The root `(1 : 0)`, i.e. the factor `t`.
    AtInfinity,
    /// Monic irreducible `phi(s)`; its roots give points `(sigma : 1)`.
    Finite(UPoly),
}

impl BinaryForm {
    /// `coeffs[i]` is the coefficient of `s^(n-i) t^i`; the degree is `coeffs.len() - 1`.
    pub fn new(field: Arc<Field>, coeffs: Vec<Elem>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs degree + 1 coefficients");
        BinaryForm { field, coeffs }
    }

    pub fn zero(field: Arc<Field>, degree: usize) -> Self {
        let z = field.zero();
        BinaryForm { field, coeffs: vec![z; degree + 1] }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.is_zero(c))
    }

    /// Text in the named variables, e.g. `2*y^2*z + z^3`.
    pub fn format_in(&self, vars: [&'static str; 2]) -> String {
        let n = self.degree() as u32;
        super::pretty_terms(self.coeffs.iter().enumerate().filter(|(_, &c)| !self.field.is_zero(c)).map(|(i, &c)| {
            let mut v = self.field.format(c);
            if v.contains('t') {
                v = alloc::format!("({v})");
            }
            (v, [(vars[0], n - i as u32), (vars[1], i as u32)])
        }))
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        BinaryForm::new(f.clone(), out)
    }

    pub fn scale(&self, c: Elem) -> BinaryForm {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        BinaryForm::new(self.field.clone(), coeffs)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree());
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        BinaryForm::new(f.clone(), coeffs)
    }

    pub fn eval(&self, s: Elem, t: Elem) -> Elem {
        let f = &self.field;
        let n = self.degree() as u64;
        self.coeffs.iter().enumerate().fold(f.zero(), |acc, (i, &c)| {
            let term = f.mul(f.pow(s, n - i as u64), f.pow(t, i as u64));
            f.add(acc, f.mul(c, term))
        })
    }

    /// Decide whether `g = u h^2` for a unit `u` and a binary form `h`
    /// normalized so that its first nonzero coefficient is 1.
    ///
    /// The coefficients of `h` are solved top-down from the first nonzero
    /// coefficient of `g`; the candidate is then re-expanded and compared.
    pub fn perfect_square_split(&self) -> SquareSplit {
        let f = &self.field;
        let n = self.degree();
        if n % 2 == 1 {
            return SquareSplit::NotSquare;
        }
        let k = n / 2;
        let Some(i0) = self.coeffs.iter().position(|&c| !f.is_zero(c)) else {
            return SquareSplit::NotSquare;
        };
        if i0 % 2 == 1 {
            return SquareSplit::NotSquare;
        }
        let j0 = i0 / 2;
        let unit = self.coeffs[i0];
        let unit_inv = f.inv(unit).expect("nonzero");
        let half = f.inv(f.from_u64(2)).expect("odd characteristic");
        let mut h = vec![f.zero(); k + 1];
        h[j0] = f.one();
        for j in j0 + 1..=k {
            // coefficient of index j0 + j in g/u equals 2 h_j0 h_j + sum over a, b in (j0, j)
            let target = f.mul(self.coeffs[j0 + j], unit_inv);
            let mut cross = f.zero();
            for a in j0 + 1..j {
                cross = f.add(cross, f.mul(h[a], h[j0 + j - a]));
            }
            h[j] = f.mul(f.sub(target, cross), half);
        }
        let h = BinaryForm::new(f.clone(), h);
        if h.mul(&h).scale(unit) != *self {
            return SquareSplit::NotSquare;
        }
        let split_degree = if f.quad_char(unit) == 1 { 1 } else { 2 };
        SquareSplit::Square { h, unit, split_degree }
    }

    /// Dehomogenization `g(s, 1)` as a univariate polynomial in `s`.
    pub fn dehomogenize(&self) -> UPoly {
        let n = self.degree();
        let coeffs = (0..=n).map(|i| self.coeffs[n - i]).collect();
        UPoly::from_coeffs(&self.field, coeffs)
    }

    /// Irreducible factors with multiplicity; `(1:0)` first, then the finite
    /// factors in canonical order. Empty for the zero form.
    pub fn factor(&self) -> Result<Vec<(BinaryFactor, u32)>> {
        let f = &self.field;
        let mut out = Vec::new();
        let Some(j0) = self.coeffs.iter().position(|&c| !f.is_zero(c)) else {
            return Ok(out);
        };
        if j0 > 0 {
            out.push((BinaryFactor::AtInfinity, j0 as u32));
        }
        let u = self.dehomogenize();
        if u.degree().unwrap_or(0) > 0 {
            for (g, m) in factor_univariate(f, &u)? {
                out.push((BinaryFactor::Finite(g), m));
            }
        }
        Ok(out)
    }

    /// Whether two binary forms share a projective root over the algebraic
    /// closure: the Sylvester resultant of the full coefficient vectors vanishes.
    pub fn have_common_root(&self, other: &BinaryForm) -> bool {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return true;
        }
        let (m, n) = (self.degree(), other.degree());
        if m + n == 0 {
            return false;
        }
        let size = m + n;
        let mut mat = vec![vec![f.zero(); size]; size];
        for r in 0..n {
            for (i, &c) in self.coeffs.iter().enumerate() {
                mat[r][r + i] = c;
            }
        }
        for r in 0..m {
            for (i, &c) in other.coeffs.iter().enumerate() {
                mat[n + r][r + i] = c;
            }
        }
        f.is_zero(crate::linalg::determinant(f, mat))
    }
}
