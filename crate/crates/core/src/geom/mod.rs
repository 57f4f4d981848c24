//! Tangency geometry of the branch sextic: tritangent lines, the
//! decomposition `f6 = f3^2 + l f5` along one, conic identities over `Z`,
//! and the good-reduction test.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Embedding, Field, UPoly};
use crate::forms::{
    line_kernel_basis, normalize_first, BinaryFactor, BinaryForm, IntForm, LinearChange, ModForm, SquareSplit,
};

mod smooth;

pub use smooth::{smoothness_check, SingularityReport};

/// A point where a tritangent touches the branch curve.
#[derive(Clone, Debug)]
pub struct ContactPoint {
    /// Field of definition of `point`.
    pub field: Arc<Field>,
    /// Normalized so that the first nonzero coordinate is 1.
    pub point: [Elem; 3],
    /// Multiplicity of the corresponding root of `h`; the contact order is twice this.
    pub multiplicity: u32,
    /// Number of conjugate points represented (degree of the factor of `h`).
    pub conjugates: u32,
}

/// A line whose restriction to the sextic is a unit times a square.
#[derive(Clone, Debug)]
pub struct TritangentCert {
    /// Over `F_{p^e}`, normalized so that the last nonzero coefficient is 1.
    pub line: ModForm,
    /// `f6|_line = unit * h^2` in the line's kernel-basis parameters.
    pub h: BinaryForm,
    pub unit: Elem,
    /// 1 if `unit` is a square in the line's field (the pull-back splits there), else 2.
    pub split_field_degree: u32,
    pub contacts: Vec<ContactPoint>,
    /// `(f3, f5)` over the line's field with `f6 = f3^2 + l f5`, when the split is rational.
    pub decomposition: Option<(ModForm, ModForm)>,
}

impl TritangentCert {
    /// Degree over `F_p` of the field the line is defined over.
    pub fn line_field_degree(&self) -> u32 {
        self.line.field().degree()
    }

    /// Re-check the identity and the contact points against `f6` (over `F_p`).
    pub fn verify(&self, f6: &ModForm) -> bool {
        let field = self.line.field();
        let Ok(emb) = Embedding::new(f6.field(), field) else {
            return false;
        };
        let g = f6.extend_to(field, &emb);
        let restricted = match g.restrict_to_line(&self.line) {
            Ok(r) => r,
            Err(_) => return false,
        };
        if self.h.mul(&self.h).scale(self.unit) != restricted {
            return false;
        }
        if let Some((f3, f5)) = &self.decomposition {
            let rhs = f3.mul(f3).and_then(|a| a.add(&self.line.mul(f5)?));
            if rhs.ok().as_ref() != Some(&g) {
                return false;
            }
        }
        self.contacts.iter().all(|c| {
            let Ok(e) = Embedding::new(field, &c.field) else {
                return false;
            };
            let cf: &Field = &c.field;
            cf.is_zero(self.line.extend_to(&c.field, &e).eval(&c.point))
                && cf.is_zero(g.extend_to(&c.field, &e).eval(&c.point))
        })
    }
}

/// All tritangent lines of `f6` (given over `F_p`) defined over `F_{p^e}`,
/// `e <= max_degree`, each listed once over its smallest field of definition.
///
/// Lines `a x + b y + c z` are enumerated as `(a, b, 1)`, `(a, 1, 0)`,
/// `(1, 0, 0)` with `a`, `b` in packed-index order.
pub fn find_tritangents(f6: &ModForm, max_degree: u32) -> Result<Vec<TritangentCert>> {
    let base = f6.field();
    if f6.is_zero() {
        return Err(Error::ZeroReduction(base.characteristic()));
    }
    let mut out = Vec::new();
    for e in 1..=max_degree {
        let field = Arc::new(Field::new(base.characteristic(), e)?);
        let emb = Embedding::new(base, &field)?;
        let g = f6.extend_to(&field, &emb);
        let f: &Field = &field;
        let q = f.order();
        let mut candidates: Vec<[Elem; 3]> = Vec::new();
        for a in 0..q {
            for b in 0..q {
                candidates.push([f.from_index(a), f.from_index(b), f.one()]);
            }
        }
        for a in 0..q {
            candidates.push([f.from_index(a), f.one(), f.zero()]);
        }
        candidates.push([f.one(), f.zero(), f.zero()]);
        for coeffs in candidates {
            if e > 1 && defined_over_smaller_field(f, &coeffs) {
                continue;
            }
            let line = ModForm::linear(field.clone(), coeffs);
            if let Some(cert) = tritangent_cert(&g, &line)? {
                out.push(cert);
            }
        }
    }
    Ok(out)
}

fn defined_over_smaller_field(f: &Field, coeffs: &[Elem; 3]) -> bool {
    let e = f.degree();
    (1..e).filter(|d| e.is_multiple_of(*d)).any(|d| {
        let pd = f.characteristic().pow(d);
        coeffs.iter().all(|&c| f.pow(c, pd) == c)
    })
}

/// Certificate for one line, or `None` if the restriction is not a unit times a square.
pub fn tritangent_cert(g: &ModForm, line: &ModForm) -> Result<Option<TritangentCert>> {
    let restricted = g.restrict_to_line(line)?;
    let SquareSplit::Square { h, unit, split_degree } = restricted.perfect_square_split() else {
        return Ok(None);
    };
    let contacts = contact_points(line, &h)?;
    let decomposition = if split_degree == 1 { Some(decompose_mod(g, line)?) } else { None };
    Ok(Some(TritangentCert { line: line.clone(), h, unit, split_field_degree: split_degree, contacts, decomposition }))
}

/// Roots of `h` mapped through the parametrization `s k1 + t k2` of the line.
fn contact_points(line: &ModForm, h: &BinaryForm) -> Result<Vec<ContactPoint>> {
    let field = line.field();
    let [k1, k2] = line_kernel_basis(line)?;
    let mut out = Vec::new();
    for (factor, mult) in h.factor()? {
        let cp = match factor {
            BinaryFactor::AtInfinity => ContactPoint {
                field: field.clone(),
                point: normalize_first(field, &k1)?,
                multiplicity: mult,
                conjugates: 1,
            },
            BinaryFactor::Finite(phi) => {
                let r = phi.degree().unwrap_or(1) as u32;
                let (ext, sigma, emb) = root_in_extension(field, &phi)?;
                let ef: &Field = &ext;
                let lift = |v: &[Elem; 3]| v.map(|c| emb.apply(field, ef, c));
                let (a, b) = (lift(&k1), lift(&k2));
                let pt: [Elem; 3] = core::array::from_fn(|i| ef.add(ef.mul(sigma, a[i]), b[i]));
                ContactPoint { field: ext.clone(), point: normalize_first(ef, &pt)?, multiplicity: mult, conjugates: r }
            }
        };
        out.push(cp);
    }
    Ok(out)
}

/// A root of the irreducible `phi` over `field`, in the extension of degree `deg phi`.
pub(crate) fn root_in_extension(field: &Arc<Field>, phi: &UPoly) -> Result<(Arc<Field>, Elem, Embedding)> {
    let r = phi.degree().ok_or(Error::ZeroPolynomial)? as u32;
    let ext = if r == 1 { field.clone() } else { Arc::new(Field::new(field.characteristic(), field.degree() * r)?) };
    let emb = Embedding::new(field, &ext)?;
    let lifted = UPoly::from_coeffs(&ext, phi.coeffs().iter().map(|&c| emb.apply(field, &ext, c)).collect());
    let root = lifted.roots(&ext)?.first().map(|x| x.0).ok_or(Error::ZeroPolynomial)?;
    Ok((ext, root, emb))
}

/// `(f3, f5)` with `g = f3^2 + line * f5` over the field of `g`.
///
/// Coordinates are changed so the line becomes `x`; then `f3 = r h` where
/// `g(0, y, z) = u h^2` and `r` is the square root of `u` with the smaller
/// packed index, and `f5 = (g - f3^2) / x`.
pub fn decompose_mod(g: &ModForm, line: &ModForm) -> Result<(ModForm, ModForm)> {
    let field = g.field().clone();
    let f: &Field = &field;
    let t = LinearChange::sending_line_to_x(line)?;
    let moved = g.apply(&t)?;
    let SquareSplit::Square { h, unit, .. } = moved.to_binary_at_x_zero().perfect_square_split() else {
        return Err(Error::NotTritangent);
    };
    let r = f.sqrt(unit).ok_or(Error::NonRationalSplit)?;
    let k = h.degree();
    let f3 = ModForm::from_terms(
        field.clone(),
        k as u32,
        h.coeffs().iter().enumerate().map(|(i, &c)| ([0, (k - i) as u32, i as u32], f.mul(r, c))),
    )?;
    let x = ModForm::variable(field.clone(), 0);
    let f5 = moved.sub(&f3.mul(&f3)?)?.exact_divide(&x)?;
    let back = t.inverse()?;
    Ok((f3.apply(&back)?, f5.apply(&back)?))
}

/// Integer lifts (coefficients in `[0, p)`) of the decomposition of `f6` along an `F_p` line.
pub fn decompose_along_line(f6: &IntForm, line: &ModForm) -> Result<(IntForm, IntForm)> {
    if line.field().degree() != 1 {
        return Err(Error::ContextMismatch);
    }
    let g = f6.reduce_mod(line.field());
    let (f3, f5) = decompose_mod(&g, line)?;
    Ok((f3.lift(), f5.lift()))
}

/// `f6 = c q3^2 + q2 q4` over `Z`: a conic `q2 = 0` touching the branch curve six times.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicCert {
    pub c: BigInt,
    pub q3: IntForm,
    pub q2: IntForm,
    pub q4: IntForm,
}

/// Exact check of the conic identity.
pub fn verify_conic_identity(cert: &ConicCert, f6: &IntForm) -> bool {
    let Ok(sq) = cert.q3.mul(&cert.q3) else {
        return false;
    };
    let rhs = cert.q2.mul(&cert.q4).and_then(|prod| sq.scale(&cert.c).add(&prod));
    rhs.is_ok_and(|r| r == *f6)
}

#[cfg(test)]
mod tests;
