use alloc::vec::Vec;

use super::{Elem, Field, UPoly};
use crate::error::{Error, Result};

/// Ring embedding `F_{p^d} -> F_{p^{de}}`, fixed by sending the generator of
/// the source to the root of its defining polynomial with the smallest packed
/// index in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    powers: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::ContextMismatch);
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::NotSubfield { source_degree: source.degree(), target_degree: target.degree() });
        }
        let modulus = UPoly::from_coeffs(target, source.modulus().iter().map(|&c| target.from_u64(c)).collect());
        let image = if source.degree() == 1 {
            target.zero()
        } else {
            modulus.roots(target)?.first().map(|r| r.0).ok_or(Error::ContextMismatch)?
        };
        let mut powers = Vec::with_capacity(source.degree() as usize);
        let mut cur = target.one();
        for _ in 0..source.degree() {
            powers.push(cur);
            cur = target.mul(cur, image);
        }
        Ok(Embedding { powers })
    }

    /// Image of `a` (an element of the source field).
    pub fn apply(&self, source: &Field, target: &Field, a: Elem) -> Elem {
        source
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(target.zero(), |acc, (&c, &pw)| target.add(acc, target.mul(target.from_u64(c), pw)))
    }
}

/// Embed one element of `F_{p^d}` into `F_{p^{de}}`.
pub fn embed_subfield(a: Elem, source: &Field, target: &Field) -> Result<Elem> {
    Ok(Embedding::new(source, target)?.apply(source, target, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Minimal polynomial of `a` over F_p via its Frobenius orbit, returned as
    /// prime-field residues.
    fn minimal_polynomial(f: &Field, a: Elem) -> Vec<u64> {
        let mut orbit = Vec::new();
        let mut x = a;
        loop {
            orbit.push(x);
            x = f.frobenius(x);
            if x == a {
                break;
            }
        }
        let mut poly = UPoly::one(f);
        for &r in &orbit {
            poly = poly.mul(f, &UPoly::from_coeffs(f, alloc::vec![f.neg(r), f.one()]));
        }
        poly.coeffs().iter().map(|&c| f.as_prime(c).expect("coefficients in F_p")).collect()
    }

    #[test]
    fn constants_embed_to_constants() {
        let f5 = Field::new(5, 1).unwrap();
        let f25 = Field::new(5, 2).unwrap();
        let img = embed_subfield(f5.from_u64(2), &f5, &f25).unwrap();
        assert_eq!(f25.to_index(img), 2);
    }

    #[test]
    fn generator_order_preserved() {
        let f9 = Field::new(3, 2).unwrap();
        let f81 = Field::new(3, 4).unwrap();
        let g = f9.primitive_element();
        let img = embed_subfield(g, &f9, &f81).unwrap();
        assert_eq!(f81.multiplicative_order(img).unwrap(), 8);
    }

    #[test]
    fn rejects_non_divisible_degree() {
        let f9 = Field::new(3, 2).unwrap();
        let f27 = Field::new(3, 3).unwrap();
        assert!(matches!(embed_subfield(f9.one(), &f9, &f27), Err(Error::NotSubfield { .. })));
    }

    #[test]
    fn embedding_is_homomorphism_and_preserves_minimal_polynomials() {
        let src = Field::new(5, 2).unwrap();
        let dst = Field::new(5, 4).unwrap();
        let emb = Embedding::new(&src, &dst).unwrap();
        let elems: Vec<Elem> = (0..50u64).map(|i| src.from_index((i * 7 + 3) % 25)).collect();
        for w in elems.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ea = emb.apply(&src, &dst, a);
            let eb = emb.apply(&src, &dst, b);
            assert_eq!(emb.apply(&src, &dst, src.add(a, b)), dst.add(ea, eb));
            assert_eq!(emb.apply(&src, &dst, src.mul(a, b)), dst.mul(ea, eb));
        }
        for &a in &elems {
            assert_eq!(minimal_polynomial(&src, a), minimal_polynomial(&dst, emb.apply(&src, &dst, a)));
        }
    }
}
