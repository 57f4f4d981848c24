//! Integer lattices: Smith normal form, membership, intersection forms and
//! chains of `p`-power index.
//!
//! Lattices are given by square integer bases whose columns span them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        let n = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Shape("columns have different lengths".into()));
        }
        let mut m = Self::zero(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length does not match".into()));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let (rank, det) = bareiss(self);
        Ok(if rank == self.rows { det } else { BigInt::zero() })
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        bareiss(self).0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row `a` += k * row `b`
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(b, j) * k;
            self.data[a * self.cols + j] += v;
        }
    }

    /// col `a` += k * col `b`
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, b) * k;
            self.data[i * self.cols + a] += v;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let idx = a * self.cols + j;
            self.data[idx] = -core::mem::take(&mut self.data[idx]);
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + a;
            self.data[idx] = -core::mem::take(&mut self.data[idx]);
        }
    }
}

impl fmt::Display for IntMatrix {
    /// Row-major decimal, e.g. `[[1, 0], [0, 3]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rank and, for full row-and-column rank, the determinant.
fn bareiss(m: &IntMatrix) -> (usize, BigInt) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if piv != r {
            a.swap_rows(piv, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a.get(r, c) * a.get(i, j) - a.get(i, c) * a.get(r, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, c, BigInt::zero());
        }
        prev = a.get(r, c).clone();
        r += 1;
    }
    (r, sign * prev)
}

/// `U M V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`, `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverses of `u` and `v`.
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form. The pivot at each stage is the entry of smallest
/// nonzero absolute value in the remaining block, ties broken row-major.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Each operation on d is mirrored on u (rows) or v (columns) and inverted on u_inv / v_inv.
    let row_swap = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a: usize, b: usize| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };
    let col_swap = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a: usize, b: usize, k: &BigInt| {
        d.add_row(a, b, k);
        u.add_row(a, b, k);
        ui.add_col(b, a, &-k);
    };
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a: usize, b: usize, k: &BigInt| {
        d.add_col(a, b, k);
        v.add_col(a, b, k);
        vi.add_row(b, a, &-k);
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            row_swap(&mut d, &mut u, &mut u_inv, t, pi);
            col_swap(&mut d, &mut v, &mut v_inv, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    col_add(&mut d, &mut v, &mut v_inv, j, t, &-q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(d.get(t, t))));
            match bad {
                Some(i) => row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SmithForm { u, d, v, u_inv, v_inv }
}

/// Integer coordinates `c` with `basis * c = x`, if `x` lies in the column span over `Z`.
pub fn membership(basis: &IntMatrix, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if x.len() != basis.rows {
        return Err(Error::Shape("vector length does not match the basis".into()));
    }
    let snf = smith_normal_form(basis);
    let y = snf.u.mul_vec(x)?;
    let mut w = vec![BigInt::zero(); basis.cols];
    for (i, yi) in y.iter().enumerate() {
        let di = if i < basis.cols { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !yi.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = yi.div_rem(&di);
            if !r.is_zero() {
                return Ok(None);
            }
            w[i] = q;
        }
    }
    Ok(Some(snf.v.mul_vec(&w)?))
}

/// Coordinates `C` with `outer * C = inner`, if every column of `inner` lies in `outer`.
pub fn coordinates(outer: &IntMatrix, inner: &IntMatrix) -> Result<Option<IntMatrix>> {
    let mut cols = Vec::with_capacity(inner.cols);
    for j in 0..inner.cols {
        match membership(outer, &inner.column(j))? {
            Some(c) => cols.push(c),
            None => return Ok(None),
        }
    }
    if cols.is_empty() {
        return Ok(Some(IntMatrix::zero(outer.cols, 0)));
    }
    IntMatrix::from_columns(&cols).map(Some)
}

/// Whether two bases span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    Ok(coordinates(a, b)?.is_some() && coordinates(b, a)?.is_some())
}

/// Symmetric integer matrix of intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(IntMatrix);

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Shape("intersection matrix must be square and symmetric".into()));
        }
        Ok(GramMatrix(m))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    /// `T^t M T`.
    pub fn congruent(&self, t: &IntMatrix) -> Result<Self> {
        GramMatrix::new(t.transpose().mul(&self.0)?.mul(t)?)
    }
}

/// Rank over `Q` and, when nondegenerate, the determinant.
pub fn gram_rank_disc(m: &GramMatrix) -> (usize, Option<BigInt>) {
    let (rank, det) = bareiss(&m.0);
    (rank, (rank == m.dim()).then_some(det))
}

/// Whether `d1 / d2` is a square in `Q*`.
pub fn square_class_equal(d1: &BigInt, d2: &BigInt) -> Result<bool> {
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::ZeroInput);
    }
    let prod = d1 * d2;
    Ok(prod.is_positive() && {
        let r = prod.sqrt();
        &r * &r == prod
    })
}

/// `Λ_1 ⊇ Λ_2 ⊇ ... ⊇ Λ_m` in `Z^n`, each given by an `n x n` basis (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeChain {
    pub p: BigInt,
    pub n: usize,
    pub bases: Vec<IntMatrix>,
}

impl LatticeChain {
    pub fn new(p: BigInt, bases: Vec<IntMatrix>) -> Result<Self> {
        let n = bases.first().map_or(0, |b| b.rows);
        if bases.is_empty() || bases.iter().any(|b| b.rows != n || b.cols != n) {
            return Err(Error::Shape("a chain needs at least one n x n basis".into()));
        }
        Ok(LatticeChain { p, n, bases })
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }
}

/// Basis `b_1..b_n` of `Λ_1` with `Λ_i = <b_1, ..., b_{n-1}, p^(i-1) b_n>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub p: BigInt,
    /// Columns are `b_1, ..., b_n`.
    pub basis: IntMatrix,
}

impl AdaptedBasis {
    /// Basis of `Λ_i` (1-based) read off from the adapted basis.
    pub fn level(&self, i: usize) -> IntMatrix {
        let n = self.basis.cols;
        let mut b = self.basis.clone();
        if n > 0 {
            let k = num_traits::pow(self.p.clone(), i.saturating_sub(1));
            for r in 0..b.rows {
                let v = b.get(r, n - 1) * &k;
                b.set(r, n - 1, v);
            }
        }
        b
    }
}

fn elementary_divisors(outer: &IntMatrix, inner: &IntMatrix) -> Result<Option<Vec<BigInt>>> {
    Ok(coordinates(outer, inner)?.map(|c| smith_normal_form(&c).divisors()))
}

fn is_cyclic_of_order(divs: &[BigInt], order: &BigInt) -> bool {
    match divs.split_last() {
        Some((last, rest)) => last == order && rest.iter().all(|d| d.is_one()),
        None => order.is_one(),
    }
}

/// Inclusion, index `p` at each step and condition iii.
///
/// Given index `p` steps, condition iii (`x` in `Λ_i` but not `Λ_{i+1}` implies
/// `p x` is not in `Λ_{i+2}`) holds exactly when `Λ_i / Λ_{i+2}` is cyclic.
pub fn verify_chain(chain: &LatticeChain) -> bool {
    check_chain(chain).is_ok()
}

fn check_chain(chain: &LatticeChain) -> Result<()> {
    let p = &chain.p;
    if p <= &BigInt::one() {
        return Err(Error::ChainViolation(format!("p = {p} is not a prime power base")));
    }
    for (i, b) in chain.bases.iter().enumerate() {
        if b.determinant()?.is_zero() {
            return Err(Error::ChainViolation(format!("basis {} is degenerate", i + 1)));
        }
    }
    for i in 0..chain.len().saturating_sub(1) {
        let divs = elementary_divisors(&chain.bases[i], &chain.bases[i + 1])?
            .ok_or_else(|| Error::ChainViolation(format!("lattice {} is not contained in lattice {}", i + 2, i + 1)))?;
        if !is_cyclic_of_order(&divs, p) {
            return Err(Error::ChainViolation(format!(
                "quotient of lattice {} by lattice {} has elementary divisors {divs:?}, not index p",
                i + 1,
                i + 2
            )));
        }
    }
    let p2 = p * p;
    for i in 0..chain.len().saturating_sub(2) {
        let divs = elementary_divisors(&chain.bases[i], &chain.bases[i + 2])?.expect("inclusions checked above");
        if !is_cyclic_of_order(&divs, &p2) {
            return Err(Error::ChainViolation(format!(
                "lattice {} / lattice {} is not cyclic: some x outside lattice {} has p x in lattice {}",
                i + 1,
                i + 3,
                i + 2,
                i + 3
            )));
        }
    }
    Ok(())
}

/// Adapted basis from the Smith form of the coordinates of `Λ_m` in `Λ_1`.
pub fn adapted_basis(chain: &LatticeChain) -> Result<AdaptedBasis> {
    check_chain(chain)?;
    let first = &chain.bases[0];
    let last = chain.bases.last().expect("chain is nonempty");
    let c = coordinates(first, last)?.expect("inclusions checked");
    let snf = smith_normal_form(&c);
    let divs = snf.divisors();
    let top = num_traits::pow(chain.p.clone(), chain.len() - 1);
    if let Some(bad) = divs.iter().enumerate().find(|&(i, d)| if i + 1 == divs.len() { d != &top } else { !d.is_one() })
    {
        return Err(Error::ChainViolation(format!(
            "elementary divisor d_{} = {} (expected 1, ..., 1, {top})",
            bad.0 + 1,
            bad.1
        )));
    }
    // first * c = last and u c v = d, so (first u^-1) d = last v spans the last lattice
    let adapted = AdaptedBasis { p: chain.p.clone(), basis: first.mul(&snf.u_inv)? };
    for (i, b) in chain.bases.iter().enumerate() {
        if !same_lattice(&adapted.level(i + 1), b)? {
            return Err(Error::ChainViolation(format!("adapted basis does not reproduce lattice {}", i + 1)));
        }
    }
    Ok(adapted)
}
