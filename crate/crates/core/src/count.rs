//! Points on the double plane `w^2 = f6(x, y, z)` over `F_q`.
//!
//! A point `P` of the plane carries `1 + chi(f6(P))` points of the surface,
//! so `N = q^2 + q + 1 + sum_P chi(f6(P))`. The sum runs over the charts
//! `(1:y:z)`, `(0:1:z)` and `(0:0:1)`; the affine chart is split into rows of
//! fixed `y`, which is the unit of work for parallel callers.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::ffield::{Elem, Embedding, Field};
use crate::forms::ModForm;

/// Character sums of `f6` over the three charts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChartSums {
    pub affine: i128,
    pub line: i128,
    pub point: i128,
}

impl ChartSums {
    pub fn total(&self) -> i128 {
        self.affine + self.line + self.point
    }
}

/// Evaluates the character sum of a fixed sextic over a fixed field.
///
/// The coefficients lie in `F_p`, so the Frobenius `y -> y^p` permutes the
/// rows of the affine chart without changing their sums; only one row per
/// Frobenius orbit is evaluated, weighted by the orbit length.
pub struct ChartCounter {
    field: Arc<Field>,
    /// `rows[k][b]`: coefficient of `y^b z^k` in `f6(1, y, z)`.
    rows: [Vec<Elem>; 7],
    /// Coefficients of `f6(0, 1, z)` in `z`.
    line: Vec<Elem>,
    point: Elem,
    top: usize,
    /// Orbit representatives `y` with orbit lengths.
    reps: Vec<(Elem, u32)>,
    /// Zech table repeated twice, so a difference in `[0, 2(q-1))` needs no reduction.
    zech2: Vec<u32>,
}

const LANES: usize = 8;

impl ChartCounter {
    /// Prepare to count `f6` (given mod `p`) over `F_{p^d}`.
    pub fn new(f6: &ModForm, d: u32) -> Result<Self> {
        Self::over(f6, Arc::new(Field::new(f6.field().characteristic(), d)?))
    }

    /// Prepare to count over an explicit extension of the form's field.
    pub fn over(f6: &ModForm, field: Arc<Field>) -> Result<Self> {
        if f6.degree() != 6 {
            return Err(Error::DegreeMismatch { expected: 6, found: f6.degree() });
        }
        let base = f6.field();
        if f6.is_zero() {
            return Err(Error::ZeroReduction(base.characteristic()));
        }
        if base.degree() != 1 {
            return Err(Error::ContextMismatch);
        }
        let emb = Embedding::new(base, &field)?;
        let g = f6.extend_to(&field, &emb);
        let f: &Field = &field;
        let mut rows: [Vec<Elem>; 7] = core::array::from_fn(|k| alloc::vec![f.zero(); 7 - k]);
        let mut line = alloc::vec![f.zero(); 7];
        let mut point = f.zero();
        for (m, &c) in g.terms() {
            let (b, k) = (m[1] as usize, m[2] as usize);
            rows[k][b] = c;
            if m[0] == 0 {
                line[k] = c;
            }
            if m[2] == 6 {
                point = c;
            }
        }
        let top = (0..7).rev().find(|&k| rows[k].iter().any(|&c| !f.is_zero(c))).unwrap_or(0);
        let reps = frobenius_orbits(f);
        let zech2 = match f.zech_tables() {
            Some(zt) => zt.zech_table().iter().chain(zt.zech_table()).copied().collect(),
            None => Vec::new(),
        };
        Ok(ChartCounter { field, rows, line, point, top, reps, zech2 })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Number of affine work units (one per Frobenius orbit of `y`).
    pub fn row_count(&self) -> u64 {
        self.reps.len() as u64
    }

    /// Sum of `chi(f6(1, y, z))` over all `z` and all `y` in the orbits `rows`.
    pub fn affine_rows(&self, rows: Range<u64>) -> i128 {
        let f: &Field = &self.field;
        let mut coeffs = [f.zero(); 7];
        let mut total = 0i128;
        for &(y, weight) in &self.reps[rows.start as usize..rows.end as usize] {
            for (k, c) in coeffs.iter_mut().enumerate().take(self.top + 1) {
                *c = self.rows[k].iter().rev().fold(f.zero(), |acc, &a| f.add(f.mul(acc, y), a));
            }
            total += weight as i128 * self.row_sum(&coeffs[..=self.top]) as i128;
        }
        total
    }

    /// Sum of `chi(c(z))` over `z in F_q` for the polynomial with ascending coefficients `c`.
    fn row_sum(&self, c: &[Elem]) -> i64 {
        let f: &Field = &self.field;
        match f.zech_tables() {
            Some(zt) => zech_row_sum(zt.order(), &self.zech2, c),
            None => {
                let mut sum = 0i64;
                for z in f.elements() {
                    let v = c.iter().rev().fold(f.zero(), |acc, &a| f.add(f.mul(acc, z), a));
                    sum += f.quad_char(v) as i64;
                }
                sum
            }
        }
    }

    /// Character sums over the three charts, serially.
    pub fn chart_sums(&self) -> ChartSums {
        ChartSums {
            affine: self.affine_rows(0..self.row_count()),
            line: self.row_sum(&self.line) as i128,
            point: self.field.quad_char(self.point) as i128,
        }
    }

    /// Character sums of the line at infinity and the last point.
    pub fn boundary_sums(&self) -> ChartSums {
        ChartSums { affine: 0, line: self.row_sum(&self.line) as i128, point: self.field.quad_char(self.point) as i128 }
    }

    /// Point count from a character sum over the whole plane.
    pub fn count_from_sum(&self, chi_sum: i128) -> BigUint {
        let q = BigInt::from(self.field.order());
        let n = &q * &q + &q + BigInt::from(1u8) + BigInt::from(chi_sum);
        n.to_biguint().expect("point counts are nonnegative")
    }

    /// Exact `#S(F_q)`, serially.
    pub fn count(&self) -> BigUint {
        self.count_from_sum(self.chart_sums().total())
    }
}

/// Representatives of the Frobenius orbits on `F_q` with their lengths.
fn frobenius_orbits(f: &Field) -> Vec<(Elem, u32)> {
    let p = f.characteristic();
    let mut reps = alloc::vec![(f.zero(), 1)];
    match f.zech_tables() {
        Some(zt) => {
            let n = zt.order() as u64;
            for a in 0..n {
                let mut len = 1u32;
                let mut b = a * p % n;
                let mut minimal = true;
                while b != a {
                    if b < a {
                        minimal = false;
                        break;
                    }
                    len += 1;
                    b = b * p % n;
                }
                if minimal {
                    reps.push((f.from_index(zt.exp(a as u32) as u64), len));
                }
            }
        }
        None => {
            for i in 1..f.order() {
                let a = f.from_index(i);
                let mut len = 1u32;
                let mut b = f.frobenius(a);
                let mut minimal = true;
                while b != a {
                    if f.to_index(b) < i {
                        minimal = false;
                        break;
                    }
                    len += 1;
                    b = f.frobenius(b);
                }
                if minimal {
                    reps.push((a, len));
                }
            }
        }
    }
    reps
}

/// Character sum of a polynomial given by Zech logarithms `c` over all of `F_q`.
///
/// Horner's rule is a serial chain of table lookups, so `LANES` independent
/// values of `z = g^j` are carried side by side.
fn zech_row_sum(n: u32, zech2: &[u32], c: &[Elem]) -> i64 {
    let mut logs = [n; 7];
    for (l, e) in logs.iter_mut().zip(c) {
        *l = e.raw() as u32;
    }
    let top = c.len() - 1;
    let chi = |v: u32| -> i64 {
        if v == n {
            0
        } else {
            1 - 2 * (v & 1) as i64
        }
    };
    #[inline(always)]
    fn step(n: u32, zech2: &[u32], v: u32, j: u32, a: u32) -> u32 {
        let m = if v == n {
            return a;
        } else {
            let s = v + j;
            if s >= n {
                s - n
            } else {
                s
            }
        };
        if a == n {
            return m;
        }
        let z = zech2[(a + n - m) as usize];
        if z == n {
            return n;
        }
        let s = m + z;
        if s >= n {
            s - n
        } else {
            s
        }
    }
    let mut sum = chi(logs[0]);
    let mut j = 0u32;
    while j + LANES as u32 <= n {
        let mut v = [logs[top]; LANES];
        for k in (0..top).rev() {
            let a = logs[k];
            for (l, slot) in v.iter_mut().enumerate() {
                *slot = step(n, zech2, *slot, j + l as u32, a);
            }
        }
        sum += v.iter().map(|&x| chi(x)).sum::<i64>();
        j += LANES as u32;
    }
    while j < n {
        let mut v = logs[top];
        for k in (0..top).rev() {
            v = step(n, zech2, v, j, logs[k]);
        }
        sum += chi(v);
        j += 1;
    }
    sum
}

/// `#S(F_{p^d})` for `f6` given mod `p`.
pub fn count_points(f6: &ModForm, d: u32) -> Result<BigUint> {
    Ok(ChartCounter::new(f6, d)?.count())
}

/// `t = N - 1 - q^2`, with the Weil bound `|t| <= 22 q` enforced.
pub fn trace_from_count(n: &BigUint, q: &BigUint) -> Result<BigInt> {
    let q = BigInt::from(q.clone());
    let t = BigInt::from(n.clone()) - BigInt::from(1u8) - &q * &q;
    if t.abs() > &q * 22 {
        return Err(Error::WeilBoundViolated { trace: t.to_str_radix(10), q: q.to_str_radix(10) });
    }
    Ok(t)
}

/// Brute-force count straight from the definition, for testing.
pub fn count_points_naive(f6: &ModForm, field: &Arc<Field>) -> Result<u64> {
    let emb = Embedding::new(f6.field(), field)?;
    let g = f6.extend_to(field, &emb);
    let f: &Field = field;
    let mut n = 0i64;
    let mut visit = |pt: [Elem; 3]| n += 1 + f.quad_char(g.eval(&pt)) as i64;
    for y in f.elements() {
        for z in f.elements() {
            visit([f.one(), y, z]);
        }
    }
    for z in f.elements() {
        visit([f.zero(), f.one(), z]);
    }
    visit([f.zero(), f.zero(), f.one()]);
    Ok(n.to_u64().expect("nonnegative"))
}
