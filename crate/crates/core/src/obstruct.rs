//! Second-order lifting obstruction along a tritangent line.
//!
//! With `f6 = f3^2 + l f5 + p G` over `Z`, a split of the pull-back of the
//! line `l = 0` lifts to the reduction mod `p^2` exactly when `G` lies in the
//! ideal `(p, l, f3, f5)`. After moving the line to `x = 0` this is the
//! question whether the binary sextic `G(0, y, z)` is `f3 b3 + f5 c1` for a
//! binary cubic `b3` and a binary linear form `c1`: seven equations in six
//! unknowns over `F_p`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::forms::{BinaryForm, IntForm, LinearChange, ModForm};
use crate::geom::decompose_along_line;
use crate::linalg;

/// Whether the obstruction class vanishes.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `G(0, y, z) = f3 b3 + f5 c1` on the line.
    Vanishes {
        b3: BinaryForm,
        c1: BinaryForm,
    },
    Nonvanishing,
}

/// Everything needed to audit one obstruction computation.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub g: IntForm,
    /// `G`, `f3`, `f5` after `l -> x` and `x = 0`, as binary forms in `(y, z)`.
    pub g_bar: BinaryForm,
    pub f3_bar: BinaryForm,
    pub f5_bar: BinaryForm,
    /// 7 x 6 matrix: columns are `f3 * y^(3-i) z^i` (i = 0..3), then `f5 * y`, `f5 * z`.
    pub matrix: Vec<Vec<Elem>>,
    pub rhs: Vec<Elem>,
    pub verdict: Verdict,
}

impl ObstructionReport {
    pub fn vanishes(&self) -> bool {
        matches!(self.verdict, Verdict::Vanishes { .. })
    }
}

/// `G = (f6 - f3^2 - l f5) / p` with `l` lifted to `[0, p)`.
pub fn obstruction_g(f6: &IntForm, line: &ModForm, f3: &IntForm, f5: &IntForm) -> Result<IntForm> {
    let p = BigInt::from(line.field().characteristic());
    let l = line.lift();
    let num = f6.sub(&f3.mul(f3)?)?.sub(&l.mul(f5)?)?;
    num.divide_by_integer(&p).map_err(|_| {
        Error::NotDivisible("f6 - f3^2 - l f5 is not divisible by p; the decomposition is not valid".into())
    })
}

/// Decide whether `G` lies in `(p, l, f3, f5)`.
pub fn obstruction_vanishes(g: &IntForm, line: &ModForm, f3: &IntForm, f5: &IntForm) -> Result<ObstructionReport> {
    let field: Arc<Field> = line.field().clone();
    let f: &Field = &field;
    let t = LinearChange::sending_line_to_x(line)?;
    let bar = |h: &IntForm| -> Result<BinaryForm> { Ok(h.reduce_mod(&field).apply(&t)?.to_binary_at_x_zero()) };
    let (g_bar, f3_bar, f5_bar) = (bar(g)?, bar(f3)?, bar(f5)?);
    for (h, d) in [(&g_bar, 6), (&f3_bar, 3), (&f5_bar, 5)] {
        if h.degree() != d {
            return Err(Error::DegreeMismatch { expected: d as u32, found: h.degree() as u32 });
        }
    }
    if f3_bar.have_common_root(&f5_bar) {
        return Err(Error::CommonZeroOnLine);
    }
    let unit = |deg: usize, i: usize| {
        let mut c = alloc::vec![f.zero(); deg + 1];
        c[i] = f.one();
        BinaryForm::new(field.clone(), c)
    };
    let mut columns: Vec<BinaryForm> = (0..4).map(|i| f3_bar.mul(&unit(3, i))).collect();
    columns.extend((0..2).map(|i| f5_bar.mul(&unit(1, i))));
    let matrix: Vec<Vec<Elem>> = (0..7).map(|r| columns.iter().map(|c| c.coeffs()[r]).collect()).collect();
    let rhs = g_bar.coeffs().to_vec();
    let verdict = match linalg::solve(f, &matrix, &rhs) {
        Some(x) => {
            let b3 = BinaryForm::new(field.clone(), x[..4].to_vec());
            let c1 = BinaryForm::new(field.clone(), x[4..].to_vec());
            assert_eq!(f3_bar.mul(&b3).add(&f5_bar.mul(&c1)), g_bar, "witness must re-verify");
            Verdict::Vanishes { b3, c1 }
        }
        None => Verdict::Nonvanishing,
    };
    Ok(ObstructionReport { g: g.clone(), g_bar, f3_bar, f5_bar, matrix, rhs, verdict })
}

/// Decompose along the line, form `G` and decide the obstruction.
pub fn lifts_to_second_order(f6: &IntForm, line: &ModForm) -> Result<ObstructionReport> {
    let (f3, f5) = decompose_along_line(f6, line)?;
    let g = obstruction_g(f6, line, &f3, &f5)?;
    obstruction_vanishes(&g, line, &f3, &f5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::forms::Integers;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn fp(p: u64) -> Arc<Field> {
        Arc::new(Field::prime(p).unwrap())
    }

    fn random_form(rng: &mut StdRng, deg: u32, bound: i64) -> IntForm {
        let mut terms = Vec::new();
        for a in 0..=deg {
            for b in 0..=deg - a {
                terms.push(([a, b, deg - a - b], rng.gen_range(-bound..=bound)));
            }
        }
        IntForm::from_i64_terms(deg, &terms).unwrap()
    }

    fn ex3() -> (IntForm, ModForm) {
        let f = fp(3);
        (sextic_p3_rank3(), form("x + y + z").reduce_mod(&f))
    }

    #[test]
    fn ex3_is_nonvanishing() {
        let (f6, line) = ex3();
        let r = lifts_to_second_order(&f6, &line).unwrap();
        assert_eq!(r.verdict, Verdict::Nonvanishing);
        assert_eq!((r.matrix.len(), r.matrix[0].len()), (7, 6));
    }

    #[test]
    fn ex3_matches_reference_reduction() {
        let (f6, line) = ex3();
        let f = line.field().clone();
        let r = lifts_to_second_order(&f6, &line).unwrap();
        // reference values live in (x, y) with z = -x - y; ours in (y, z) with x = -y - z
        let to_ours = |s: &str| {
            let h = form(s).reduce_mod(&f);
            let subs = [form("-y - z").reduce_mod(&f), form("y").reduce_mod(&f), form("z").reduce_mod(&f)];
            h.substitute(&subs).unwrap().to_binary_at_x_zero()
        };
        let ref_f3 = to_ours("x^3 + x^2*y + x*y^2 + y^3");
        assert!(r.f3_bar == ref_f3 || r.f3_bar == ref_f3.scale(f.from_i64(-1)));
        let ref_g = to_ours("x^6 + 2*x^5*y + x^4*y^2 + 2*x*y^5 + y^6");
        let diff = r.g_bar.add(&ref_g.scale(f.from_i64(-1)));
        assert!(linalg::solve(&f, &r.matrix, diff.coeffs()).is_some());
    }

    #[test]
    fn ex2_lift_is_nonvanishing() {
        let line = ModForm::variable(fp(3), 0);
        let r = lifts_to_second_order(&sextic_p3_rank1_lifted(), &line).unwrap();
        assert!(!r.vanishes());
        assert!(!r.g.coeff(&[0, 2, 4]).eq(&BigInt::from(0)));
    }

    #[test]
    fn exact_identity_vanishes() {
        let mut rng = StdRng::seed_from_u64(11);
        let (f6, line) = ex3();
        let (f3, f5) = decompose_along_line(&f6, &line).unwrap();
        let l = line.lift();
        let base = f3.mul(&f3).unwrap().add(&l.mul(&f5).unwrap()).unwrap();
        assert!(obstruction_g(&base, &line, &f3, &f5).unwrap().is_zero());
        assert!(lifts_to_second_order(&base, &line).unwrap().vanishes());
        // adding p * M gives G = M
        let m = form("x*y^2*z^3");
        let shifted = base.add(&m.scale(&BigInt::from(3))).unwrap();
        assert_eq!(obstruction_g(&shifted, &line, &f3, &f5).unwrap(), m);
        // ideal members vanish
        for _ in 0..5 {
            let member = f3
                .mul(&random_form(&mut rng, 3, 9))
                .unwrap()
                .add(&f5.mul(&random_form(&mut rng, 1, 9)).unwrap())
                .unwrap()
                .add(&l.mul(&random_form(&mut rng, 5, 9)).unwrap())
                .unwrap()
                .add(&random_form(&mut rng, 6, 9).scale(&BigInt::from(3)))
                .unwrap();
            let f6 = base.add(&member.scale(&BigInt::from(3))).unwrap();
            let g = obstruction_g(&f6, &line, &f3, &f5).unwrap();
            assert!(obstruction_vanishes(&g, &line, &f3, &f5).unwrap().vanishes());
        }
    }

    #[test]
    fn invalid_decomposition_is_rejected() {
        let (f6, line) = ex3();
        let (f3, f5) = decompose_along_line(&f6, &line).unwrap();
        let bad = f5.add(&form("x^5")).unwrap();
        assert!(matches!(obstruction_g(&f6, &line, &f3, &bad), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn common_zero_is_reported() {
        let f = fp(5);
        // f3 = y^3 and f5 = y z^4 share (0 : 0 : 1) on x = 0
        let f3 = form("y^3");
        let f5 = form("y*z^4");
        let line = ModForm::variable(f.clone(), 0);
        let g = IntForm::zero(Integers, 6);
        assert!(matches!(obstruction_vanishes(&g, &line, &f3, &f5), Err(Error::CommonZeroOnLine)));
    }

    fn perturbed_verdict(rng: &mut StdRng, f6: &IntForm, line: &ModForm) -> bool {
        let p = BigInt::from(line.field().characteristic());
        let (f3, f5) = decompose_along_line(f6, line).unwrap();
        let f3 = f3.add(&random_form(rng, 3, 5).scale(&p)).unwrap();
        let f5 = f5.add(&random_form(rng, 5, 5).scale(&p)).unwrap();
        let g = obstruction_g(f6, line, &f3, &f5).unwrap();
        obstruction_vanishes(&g, line, &f3, &f5).unwrap().vanishes()
    }

    #[test]
    fn verdict_ignores_lift_choice() {
        let mut rng = StdRng::seed_from_u64(5);
        let (f6, line) = ex3();
        let ex2 = sextic_p3_rank1_lifted();
        let x = ModForm::variable(fp(3), 0);
        for _ in 0..20 {
            assert!(!perturbed_verdict(&mut rng, &f6, &line));
            assert!(!perturbed_verdict(&mut rng, &ex2, &x));
        }
    }

    #[test]
    fn verdict_ignores_coordinates() {
        let mut rng = StdRng::seed_from_u64(9);
        let (f6, line) = ex3();
        let f = line.field().clone();
        let mut done = 0;
        while done < 20 {
            let m = [[0; 3]; 3].map(|r: [u64; 3]| r.map(|_| f.from_u64(rng.gen_range(0..3))));
            let Ok(t) = LinearChange::new(f.clone(), m) else { continue };
            let ti = t.lift();
            let moved = f6.apply(&ti).unwrap();
            let moved_line = line.apply(&t).unwrap();
            let r = lifts_to_second_order(&moved, &moved_line).unwrap();
            assert!(!r.vanishes());
            done += 1;
        }
    }

    #[test]
    fn linear_algebra_matches_brute_force() {
        // every (b3, c1) over F_3 against the solver, on the rank-3 sextic and on ideal members
        let (f6, line) = ex3();
        let r = lifts_to_second_order(&f6, &line).unwrap();
        let f = line.field().clone();
        let mut rng = StdRng::seed_from_u64(3);
        let mut targets = alloc::vec![r.g_bar.clone()];
        for _ in 0..3 {
            let b: Vec<Elem> = (0..4).map(|_| f.from_u64(rng.gen_range(0..3))).collect();
            let c: Vec<Elem> = (0..2).map(|_| f.from_u64(rng.gen_range(0..3))).collect();
            targets
                .push(r.f3_bar.mul(&BinaryForm::new(f.clone(), b)).add(&r.f5_bar.mul(&BinaryForm::new(f.clone(), c))));
        }
        for target in targets {
            let mut brute = false;
            for idx in 0..729u64 {
                let digits: Vec<Elem> = (0..6).map(|i| f.from_u64(idx / 3u64.pow(i) % 3)).collect();
                let cand = r
                    .f3_bar
                    .mul(&BinaryForm::new(f.clone(), digits[..4].to_vec()))
                    .add(&r.f5_bar.mul(&BinaryForm::new(f.clone(), digits[4..].to_vec())));
                if cand == target {
                    brute = true;
                    break;
                }
            }
            assert_eq!(linalg::solve(&f, &r.matrix, target.coeffs()).is_some(), brute);
        }
    }
}
