//! Characteristic polynomial of Frobenius on `H^2` from traces.
//!
//! With `k` eigenvalues known to equal `q` (classes defined over `F_q`), the
//! remaining factor `R` of degree `n = D - k = 2m` satisfies the functional
//! equation `a_{n-i} = eps q^{n-2i} a_i`, so its first `m` coefficients,
//! obtained from `m` power sums by Newton's identities, determine it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::zpoly::ZPoly;

/// A candidate characteristic polynomial `P = (t - q)^k R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPoly {
    pub q: BigInt,
    pub degree: usize,
    pub k: usize,
    /// Sign of the functional equation of `R`.
    pub sign: i8,
    /// Coefficients of `P`, highest degree first; `coeffs[0] = 1`.
    pub coeffs: Vec<BigInt>,
}

impl FrobeniusPoly {
    /// Build from an explicit polynomial (highest degree first).
    pub fn from_coeffs(q: BigInt, k: usize, sign: i8, coeffs: Vec<BigInt>) -> Self {
        FrobeniusPoly { q, degree: coeffs.len() - 1, k, sign, coeffs }
    }

    pub fn poly(&self) -> ZPoly {
        ZPoly::from_descending(&self.coeffs)
    }

    /// The factor `R = P / (t - q)^k`, highest degree first.
    pub fn unknown_factor(&self) -> Result<Vec<BigInt>> {
        let known = ZPoly::linear_root(&self.q).pow(self.k as u32);
        Ok(self.poly().div_exact(&known)?.descending())
    }
}

/// Eigenvalues of the form `q * zeta` with `zeta` a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBound {
    pub cyclotomic_degree: usize,
    /// `(n, multiplicity of Phi_n)`.
    pub per_n: Vec<(u64, u32)>,
    /// The bound from one prime is even for a genuine K3 surface; reported only.
    pub even: bool,
}

/// Newton's identities: coefficients `a_1..a_m` of a monic polynomial
/// `t^n + a_1 t^{n-1} + ...` from its power sums `s_1..s_m`.
pub fn coefficients_from_power_sums(s: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut a: Vec<BigInt> = Vec::with_capacity(s.len());
    for i in 1..=s.len() {
        let mut acc = s[i - 1].clone();
        for j in 1..i {
            acc += &a[j - 1] * &s[i - j - 1];
        }
        let (quo, rem) = (-acc).div_rem(&BigInt::from(i));
        if !rem.is_zero() {
            return Err(Error::InconsistentTraces(format!("Newton step {i} is not integral")));
        }
        a.push(quo);
    }
    Ok(a)
}

/// Newton's identities in reverse: power sums `s_1..s_count` of the roots of
/// the monic polynomial with coefficients `a = [1, a_1, ..., a_n]` (highest first).
pub fn power_sums(a: &[BigInt], count: usize) -> Vec<BigInt> {
    let n = a.len() - 1;
    let coef = |j: usize| if j <= n { a[j].clone() } else { BigInt::zero() };
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for d in 1..=count {
        let mut acc = coef(d) * BigInt::from(d);
        for j in 1..d.min(n + 1) {
            acc += coef(j) * &s[d - j - 1];
        }
        s.push(-acc);
    }
    s
}

/// Reconstruct `P = (t - q)^k R` from traces `t_1, t_2, ...` of Frobenius on `H^2`.
///
/// Exactly `m = (D - k) / 2` traces pin `R` down; any further traces are
/// checked against the result.
pub fn char_poly_from_traces(traces: &[BigInt], q: &BigInt, d: usize, k: usize, sign: i8) -> Result<FrobeniusPoly> {
    if k > d || !(d - k).is_multiple_of(2) {
        return Err(Error::InconsistentTraces(format!("D - k = {} - {} must be even and nonnegative", d, k)));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InconsistentTraces(format!("sign must be +1 or -1, got {sign}")));
    }
    let n = d - k;
    let m = n / 2;
    if traces.len() < m {
        return Err(Error::InconsistentTraces(format!("need {m} traces, got {}", traces.len())));
    }
    let kq = BigInt::from(k);
    let reduced: Vec<BigInt> = (0..m).map(|i| &traces[i] - &kq * q.pow(i as u32 + 1)).collect();
    let mut a = vec![BigInt::one()];
    a.extend(coefficients_from_power_sums(&reduced)?);
    a.resize(n + 1, BigInt::zero());
    let eps = BigInt::from(sign);
    if sign == -1 && m > 0 && !a[m].is_zero() {
        return Err(Error::InconsistentTraces("middle coefficient must vanish under the negative sign".into()));
    }
    for i in 0..m {
        a[n - i] = &eps * q.pow((n - 2 * i) as u32) * &a[i];
    }
    let r = ZPoly::from_descending(&a);
    let p = ZPoly::linear_root(q).pow(k as u32).mul(&r);
    let poly = FrobeniusPoly { q: q.clone(), degree: d, k, sign, coeffs: p.descending() };
    let predicted = power_sums(&poly.coeffs, traces.len());
    for (i, (t, s)) in traces.iter().zip(&predicted).enumerate().skip(m) {
        if t != s {
            return Err(Error::InconsistentTraces(format!("trace t_{} = {t} disagrees with {s}", i + 1)));
        }
    }
    Ok(poly)
}

/// Both signs of the functional equation, keeping those that give a
/// polynomial passing [`weil_validate`].
pub fn determine_sign(traces: &[BigInt], q: &BigInt, d: usize, k: usize) -> Vec<(i8, FrobeniusPoly)> {
    [1i8, -1]
        .into_iter()
        .filter_map(|s| char_poly_from_traces(traces, q, d, k, s).ok().map(|p| (s, p)))
        .filter(|(_, p)| weil_validate(p))
        .collect()
}

/// Outcome of the Weil checks on a candidate polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub monic: bool,
    /// `|P(0)| = q^D`.
    pub constant_term: bool,
    /// The stored sign's functional equation holds for `R`.
    pub reciprocity: bool,
    /// Every root has absolute value `q`, decided exactly.
    pub roots_on_circle: bool,
    /// Largest `| |lambda| / q - 1 |` over numerically computed roots; advisory.
    pub numeric_deviation: Option<f64>,
}

impl WeilReport {
    pub fn passed(&self) -> bool {
        self.monic && self.constant_term && self.reciprocity && self.roots_on_circle
    }
}

/// Run every check on `P`; only exact checks decide [`WeilReport::passed`].
pub fn weil_report(p: &FrobeniusPoly) -> WeilReport {
    let poly = p.poly();
    let monic = p.coeffs.first().is_some_and(|c| c.is_one()) && poly.degree() == Some(p.degree);
    let constant_term = poly.coeff(0).abs() == p.q.pow(p.degree as u32);
    let reciprocity = match p.unknown_factor() {
        Ok(r) => {
            let n = r.len() - 1;
            let eps = BigInt::from(p.sign);
            (0..=n / 2).all(|i| r[n - i] == &eps * p.q.pow((n - 2 * i) as u32) * &r[i])
        }
        Err(_) => false,
    };
    WeilReport {
        monic,
        constant_term,
        reciprocity,
        roots_on_circle: monic && roots_have_modulus(&poly, &p.q),
        numeric_deviation: numeric_root_deviation(&poly, &p.q),
    }
}

/// Integrality, `|P(0)| = q^D`, the functional equation and `|lambda| = q`.
pub fn weil_validate(p: &FrobeniusPoly) -> bool {
    weil_report(p).passed()
}

/// Whether every complex root of `f` has absolute value `q`.
///
/// Strip the real roots `+-q`; what is left must satisfy
/// `t^n f(q^2/t) = q^n f(t)` with `n = 2m`, hence `f(t) = t^m S(t + q^2/t)`,
/// and `|lambda| = q` exactly when `s = lambda + q^2/lambda` is real with
/// `|s| < 2q`. The last condition is a Sturm count.
pub fn roots_have_modulus(f: &ZPoly, q: &BigInt) -> bool {
    let mut g = f.clone();
    for r in [q.clone(), -q] {
        let lin = ZPoly::linear_root(&r);
        while g.eval(&r).is_zero() {
            g = g.div_exact(&lin).expect("root divides");
        }
    }
    let Some(n) = g.degree() else {
        return false;
    };
    if n % 2 == 1 {
        return false;
    }
    let c = g.coeffs();
    let lead = &c[n];
    for i in 0..=n {
        // t^n g(q^2/t) has coefficient c_{n-i} q^{2(n-i)} at t^i
        let lhs = &c[n - i] * q.pow(2 * (n - i) as u32);
        let rhs = &c[i] * q.pow(n as u32);
        if lhs != rhs {
            return false;
        }
    }
    let Ok(s) = trace_polynomial(&g, q) else {
        return false;
    };
    let sf = s.squarefree_part();
    let deg = sf.degree().unwrap_or(0);
    let two_q = q * 2;
    sf.count_real_roots(&-&two_q, &two_q) == deg && !lead.is_zero()
}

/// For `g` of degree `2m` with `t^{2m} g(q^2/t) = q^{2m} g(t)`, the `S` of
/// degree `m` with `g(t) = t^m S(t + q^2/t)`.
fn trace_polynomial(g: &ZPoly, q: &BigInt) -> Result<ZPoly> {
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let m = n / 2;
    let q2 = q * q;
    let base = ZPoly::new(vec![q2, BigInt::zero(), BigInt::one()]);
    let mut rest = g.clone();
    let mut s = vec![BigInt::zero(); m + 1];
    for j in (0..=m).rev() {
        // t^{m-j} (t^2 + q^2)^j has leading term t^{m+j}
        let c = rest.coeff(m + j);
        if c.is_zero() {
            continue;
        }
        let term = base.pow(j as u32).mul(&ZPoly::monomial(m - j)).scale(&c);
        rest = rest.sub(&term);
        s[j] = c;
    }
    if !rest.is_zero() {
        return Err(Error::NotDivisible("not a trace polynomial".into()));
    }
    Ok(ZPoly::new(s))
}

/// Largest relative deviation of numerically computed root moduli from `q`
/// (Aberth iteration on the squarefree part).
pub fn numeric_root_deviation(f: &ZPoly, q: &BigInt) -> Option<f64> {
    let sf = f.squarefree_part();
    let n = sf.degree()?;
    if n == 0 {
        return Some(0.0);
    }
    // Scale t = q u so the expected roots lie on the unit circle.
    let qf = q.to_f64()?;
    let lead = sf.lead().to_f64()?;
    let mut c: Vec<f64> = Vec::with_capacity(n + 1);
    let mut pw = 1.0f64;
    for a in sf.coeffs() {
        c.push(a.to_f64()? * pw / (lead * Float::powi(qf, n as i32)));
        pw *= qf;
    }
    let roots = aberth(&c)?;
    Some(roots.iter().map(|r| Float::abs(r.norm() - 1.0)).fold(0.0, f64::max))
}

fn aberth(c: &[f64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * (i as f64 + 0.25) / n as f64) * 1.1)
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-14 {
            return Some(z);
        }
    }
    z.iter().all(|r| r.re.is_finite() && r.im.is_finite()).then_some(z)
}

/// `phi(n)`.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The cyclotomic polynomial `Phi_n = prod_{d | n} (t^d - 1)^{mu(n/d)}`.
pub fn cyclotomic(n: u64) -> ZPoly {
    let mut num = ZPoly::one();
    let mut den = ZPoly::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let f = ZPoly::monomial(d as usize).sub(&ZPoly::one());
        match mobius(n / d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.div_exact(&den).expect("Mobius product is exact")
}

/// Count eigenvalues `q * zeta` by trial division of `P(q t)` by cyclotomic polynomials.
pub fn cyclotomic_part(p: &FrobeniusPoly) -> RankBound {
    let mut rest = p.poly().scale_variable(&p.q).primitive();
    let mut per_n = Vec::new();
    let mut total = 0usize;
    let d = p.degree as u64;
    for n in 1..=(2 * d * d).max(2) {
        let phi = euler_phi(n);
        if phi > d {
            continue;
        }
        let c = cyclotomic(n);
        let mut mult = 0u32;
        while rest.degree().unwrap_or(0) >= phi as usize {
            match rest.divrem_integral(&c) {
                Ok((quo, r)) if r.is_zero() => {
                    rest = quo;
                    mult += 1;
                }
                _ => break,
            }
        }
        if mult > 0 {
            per_n.push((n, mult));
            total += phi as usize * mult as usize;
        }
    }
    RankBound { cyclotomic_degree: total, per_n, even: total.is_multiple_of(2) }
}

/// `N_d = 1 + t_d + q^{2d}` with `t_d` the `d`-th power sum of the roots of `P`.
pub fn predicted_count(p: &FrobeniusPoly, d: usize) -> BigUint {
    let s = power_sums(&p.coeffs, d);
    let n = BigInt::one() + &s[d - 1] + p.q.pow(2 * d as u32);
    n.to_biguint().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    const EX1_TRACES: [i64; 10] = [15, 125, 0, 1625, -6250, -6250, -203125, 1265625, 7031250, 42968750];
    const EX1_R: [i64; 21] = [
        1,
        -5,
        -25,
        250,
        -250,
        -1875,
        12500,
        -31250,
        -156250,
        390625,
        5859375,
        9765625,
        -97656250,
        -488281250,
        4882812500,
        -18310546875,
        -61035156250,
        1525878906250,
        -3814697265625,
        -19073486328125,
        95367431640625,
    ];

    fn ex1() -> FrobeniusPoly {
        char_poly_from_traces(&big(&EX1_TRACES), &BigInt::from(5), 22, 2, 1).unwrap()
    }

    #[test]
    fn example_polynomial_p5() {
        let p = ex1();
        assert_eq!(p.unknown_factor().unwrap(), big(&EX1_R));
        assert!(weil_validate(&p));
        let signs: Vec<i8> = determine_sign(&big(&EX1_TRACES), &BigInt::from(5), 22, 2).iter().map(|s| s.0).collect();
        assert_eq!(signs, [1]);
        assert_eq!(cyclotomic_part(&p).cyclotomic_degree, 2);
        assert_eq!(predicted_count(&p, 7), BigUint::from(6103312501u64));
        assert_eq!(predicted_count(&p, 1), BigUint::from(41u32));
    }

    #[test]
    fn trivial_polynomials() {
        let q = BigInt::from(7);
        let p = char_poly_from_traces(&[], &q, 2, 2, 1).unwrap();
        assert_eq!(p.coeffs, big(&[1, -14, 49]));
        let full = FrobeniusPoly::from_coeffs(q.clone(), 22, 1, ZPoly::linear_root(&q).pow(22).descending());
        assert!(weil_validate(&full));
        assert_eq!(cyclotomic_part(&full).cyclotomic_degree, 22);
        assert_eq!(predicted_count(&full, 1), BigUint::from(1u32 + 22 * 7 + 49));
        let bad = ZPoly::linear_root(&q).pow(21).mul(&ZPoly::linear_root(&(&q * 2)));
        let bad = FrobeniusPoly::from_coeffs(q.clone(), 21, 1, bad.descending());
        assert!(!weil_validate(&bad));
    }

    #[test]
    fn zero_traces_leave_sign_open() {
        let q = BigInt::from(3);
        let both = determine_sign(&big(&[0]), &q, 2, 0);
        assert_eq!(both.len(), 2);
        assert_eq!(both[0].1.coeffs, big(&[1, 0, 9]));
        assert_eq!(both[1].1.coeffs, big(&[1, 0, -9]));
    }

    #[test]
    fn synthetic_signs_round_trip() {
        // (t - q)^2 * q^4 Phi_5(t/q) * (t^2 + q^2)(t^2 - qt + q^2): eps = +1.
        // (t - q)^2 * (t^2 - q^2) * q^4 Phi_8(t/q): eps = -1.
        let q = BigInt::from(5);
        let known = ZPoly::linear_root(&q).pow(2);
        let homog = |n: u64| {
            let c = cyclotomic(n);
            let deg = c.degree().unwrap();
            ZPoly::new(c.coeffs().iter().enumerate().map(|(i, a)| a * q.pow((deg - i) as u32)).collect())
        };
        let plus = known.mul(&homog(5)).mul(&homog(4)).mul(&homog(6));
        let minus = known.mul(&ZPoly::new(vec![-&q * &q, BigInt::zero(), BigInt::one()])).mul(&homog(8));
        for (poly, sign) in [(plus, 1i8), (minus, -1)] {
            let coeffs = poly.descending();
            let d = coeffs.len() - 1;
            let traces = power_sums(&coeffs, (d - 2) / 2 + 2);
            let found = determine_sign(&traces, &q, d, 2);
            assert_eq!(found.len(), 1, "sign {sign}");
            assert_eq!(found[0].0, sign);
            assert_eq!(found[0].1.coeffs, coeffs);
        }
    }

    #[test]
    fn newton_round_trip() {
        let a = big(&[1, -3, 7, 0, -11, 2]);
        let s = power_sums(&a, 5);
        assert_eq!(coefficients_from_power_sums(&s).unwrap(), a[1..].to_vec());
        assert!(coefficients_from_power_sums(&big(&[1, 0])).is_err());
    }

    #[test]
    fn negative_sign_requires_zero_middle() {
        let r = char_poly_from_traces(&big(&[3]), &BigInt::from(3), 2, 0, -1);
        assert!(matches!(r, Err(Error::InconsistentTraces(_))));
    }

    #[test]
    fn cyclotomic_basics() {
        assert_eq!(cyclotomic(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), ZPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).degree(), Some(4));
        assert_eq!(euler_phi(66), 20);
    }

    #[test]
    fn numeric_check_is_close_for_example() {
        let dev = numeric_root_deviation(&ex1().poly(), &BigInt::from(5)).unwrap();
        assert!(dev < 1e-6, "{dev}");
    }
}
