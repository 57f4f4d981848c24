//! Good reduction: does `{f, f_x, f_y, f_z}` have a common zero over the
//! algebraic closure?
//!
//! The plane is covered by the chart `x = 1`, the line `(0 : 1 : z)` and the
//! point `(0 : 0 : 1)`. In the chart, `z` is eliminated by Sylvester
//! resultants computed over `F_p[y]`; every singular point has a `y`
//! coordinate among the roots of their gcd, and each such root is followed
//! back to a common zero (or ruled out) by univariate gcds in `z`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::root_in_extension;
use crate::error::Result;
use crate::ffield::{factor_univariate, Elem, Embedding, Field, UPoly};
use crate::forms::{LinearChange, ModForm};

/// Outcome of [`smoothness_check`].
#[derive(Clone, Debug)]
pub enum SingularityReport {
    Smooth,
    /// A common zero of `f6` and its partials, over `field`.
    Singular {
        field: Arc<Field>,
        point: [Elem; 3],
    },
    Inconclusive(String),
}

impl SingularityReport {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SingularityReport::Smooth)
    }
}

enum Search {
    Clear,
    Found(Arc<Field>, [Elem; 3]),
    Degenerate,
}

/// Decide whether the plane curve `f6 = 0` (over `F_p`) is smooth.
pub fn smoothness_check(f6: &ModForm) -> Result<SingularityReport> {
    let field = f6.field().clone();
    let f: &Field = &field;
    // cyclic shifts: (T v)_i = v_{(i + s) mod 3}
    for shift in 0..3usize {
        let m: [[Elem; 3]; 3] =
            core::array::from_fn(|i| core::array::from_fn(|j| if j == (i + shift) % 3 { f.one() } else { f.zero() }));
        let t = LinearChange::new(field.clone(), m)?;
        let g = f6.apply(&t)?;
        match search(&g)? {
            Search::Clear => return Ok(SingularityReport::Smooth),
            Search::Found(ext, v) => {
                let point = core::array::from_fn(|i| v[(i + shift) % 3]);
                return Ok(SingularityReport::Singular { field: ext, point });
            }
            Search::Degenerate => continue,
        }
    }
    // Every elimination collapsed; look for a witness on a few specializations.
    let polys = with_partials(f6);
    for e in 1..=2 {
        let ext = Arc::new(Field::new(f.characteristic(), e)?);
        let emb = Embedding::new(f, &ext)?;
        for y in ext.elements() {
            if let Some(w) = common_zero_on_line(&polys, &ext, &emb, y)? {
                return Ok(SingularityReport::Singular { field: w.0, point: w.1 });
            }
        }
    }
    Ok(SingularityReport::Inconclusive("every resultant elimination vanished identically".into()))
}

fn with_partials(g: &ModForm) -> Vec<ModForm> {
    let mut polys = vec![g.clone(), g.partial(0), g.partial(1), g.partial(2)];
    polys.retain(|p| !p.is_zero());
    polys
}

fn search(g: &ModForm) -> Result<Search> {
    let field = g.field().clone();
    let f: &Field = &field;
    let polys = with_partials(g);

    // the point (0 : 0 : 1)
    if polys.iter().all(|p| p.coeff(&[0, 0, p.degree()]) == f.zero()) {
        return Ok(Search::Found(field.clone(), [f.zero(), f.zero(), f.one()]));
    }

    // the line (0 : 1 : z)
    let on_line: Vec<UPoly> = polys
        .iter()
        .map(|p| {
            let n = p.degree();
            UPoly::from_coeffs(f, (0..=n).map(|k| p.coeff(&[0, n - k, k])).collect())
        })
        .filter(|u| !u.is_zero())
        .collect();
    if on_line.is_empty() {
        return Ok(Search::Found(field.clone(), [f.zero(), f.one(), f.zero()]));
    }
    let h = gcd_all(f, &on_line);
    if h.degree().unwrap_or(0) > 0 {
        let (ext, z, _) = first_root(&field, &h)?;
        return Ok(Search::Found(ext.clone(), [ext.zero(), ext.one(), z]));
    }

    // the chart x = 1
    let biv: Vec<Vec<UPoly>> = polys.iter().map(chart_x).collect();
    let mut eliminated: Vec<UPoly> = Vec::new();
    for b in &biv {
        if b.len() == 1 {
            eliminated.push(b[0].clone());
        }
    }
    for i in 0..biv.len() {
        for j in i + 1..biv.len() {
            if biv[i].len() > 1 && biv[j].len() > 1 {
                let r = resultant_z(f, &biv[i], &biv[j]);
                if !r.is_zero() {
                    eliminated.push(r);
                }
            }
        }
    }
    if eliminated.is_empty() {
        return Ok(Search::Degenerate);
    }
    let gy = gcd_all(f, &eliminated);
    if gy.degree().unwrap_or(0) == 0 {
        return Ok(Search::Clear);
    }
    for (phi, _) in factor_univariate(f, &gy)? {
        let (ext, y0, emb) = root_in_extension(&field, &phi)?;
        if let Some(w) = common_zero_on_line(&polys, &ext, &emb, y0)? {
            return Ok(Search::Found(w.0, w.1));
        }
    }
    Ok(Search::Clear)
}

/// A common zero `(1 : y0 : z)` of `polys` (over `F_p`), with `y0` in `ext`.
fn common_zero_on_line(
    polys: &[ModForm],
    ext: &Arc<Field>,
    emb: &Embedding,
    y0: Elem,
) -> Result<Option<(Arc<Field>, [Elem; 3])>> {
    let base = polys[0].field();
    let e: &Field = ext;
    let specialized: Vec<UPoly> = polys
        .iter()
        .map(|p| {
            let b = chart_x(p);
            let coeffs = b
                .iter()
                .map(|cy| {
                    cy.coeffs().iter().rev().fold(e.zero(), |acc, &c| e.add(e.mul(acc, y0), emb.apply(base, e, c)))
                })
                .collect();
            UPoly::from_coeffs(e, coeffs)
        })
        .filter(|u| !u.is_zero())
        .collect();
    if specialized.is_empty() {
        return Ok(Some((ext.clone(), [e.one(), y0, e.zero()])));
    }
    let h = gcd_all(e, &specialized);
    if h.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let (top, z0, emb2) = first_root(ext, &h)?;
    let y = emb2.apply(e, &top, y0);
    Ok(Some((top.clone(), [top.one(), y, z0])))
}

/// Some root of a nonconstant `h` over `field`, in the smallest extension containing one.
fn first_root(field: &Arc<Field>, h: &UPoly) -> Result<(Arc<Field>, Elem, Embedding)> {
    let factors = factor_univariate(field, h)?;
    let phi = factors.iter().map(|(g, _)| g).min_by_key(|g| g.degree()).expect("nonconstant polynomial has a factor");
    root_in_extension(field, phi)
}

fn gcd_all(f: &Field, polys: &[UPoly]) -> UPoly {
    polys.iter().fold(UPoly::zero(), |acc, p| UPoly::gcd(f, &acc, p))
}

/// `g(1, y, z)` as a polynomial in `z` with coefficients in `F[y]`, trimmed.
fn chart_x(g: &ModForm) -> Vec<UPoly> {
    let f: &Field = g.field();
    let n = g.degree() as usize;
    let mut cols: Vec<Vec<Elem>> = vec![vec![f.zero(); n + 1]; n + 1];
    for (m, &c) in g.terms() {
        cols[m[2] as usize][m[1] as usize] = c;
    }
    let mut out: Vec<UPoly> = cols.into_iter().map(|c| UPoly::from_coeffs(f, c)).collect();
    while out.len() > 1 && out.last().is_some_and(|u| u.is_zero()) {
        out.pop();
    }
    out
}

/// Sylvester resultant in `z` of two polynomials over `F[y]`, by fraction-free elimination.
fn resultant_z(f: &Field, a: &[UPoly], b: &[UPoly]) -> UPoly {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut mat: Vec<Vec<UPoly>> = vec![vec![UPoly::zero(); size]; size];
    for r in 0..n {
        for (i, c) in a.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in b.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    let mut prev = UPoly::one(f);
    for k in 0..size {
        let Some(piv) = (k..size).find(|&i| !mat[i][k].is_zero()) else {
            return UPoly::zero();
        };
        mat.swap(k, piv);
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[k][k].mul(f, &mat[i][j]).sub(f, &mat[i][k].mul(f, &mat[k][j]));
                mat[i][j] = num.div_exact(f, &prev).expect("Bareiss division is exact");
            }
            mat[i][k] = UPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    mat[size - 1][size - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_detects_common_root() {
        let f = Field::prime(7).unwrap();
        let c = |v: &[u64]| UPoly::from_coeffs(&f, v.iter().map(|&x| f.from_u64(x)).collect());
        // z - y and z - 1 share a root exactly when y = 1
        let a = vec![c(&[0, 6]), c(&[1])];
        let b = vec![c(&[6]), c(&[1])];
        let r = resultant_z(&f, &a, &b);
        assert_eq!(r.degree(), Some(1));
        assert!(f.is_zero(r.eval(&f, f.one())));
    }
}
