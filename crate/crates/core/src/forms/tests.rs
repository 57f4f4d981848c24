use alloc::sync::Arc;
use alloc::vec::Vec;
use std::string::ToString;

use super::*;
use crate::fixtures::*;

fn fp(p: u64) -> Arc<Field> {
    Arc::new(Field::new(p, 1).unwrap())
}

fn pt(f: &Field, v: [i64; 3]) -> [Elem; 3] {
    v.map(|c| f.from_i64(c))
}

fn line(f: &Arc<Field>, v: [i64; 3]) -> ModForm {
    ModForm::linear(f.clone(), v.map(|c| f.from_i64(c)))
}

fn binary(f: &Arc<Field>, c: &[i64]) -> BinaryForm {
    BinaryForm::new(f.clone(), c.iter().map(|&v| f.from_i64(v)).collect())
}

#[test]
fn eval_at_branch_point() {
    let f = fp(5);
    let g = sextic_p5().reduce_mod(&f);
    assert!(f.is_zero(g.eval(&pt(&f, [1, 0, 0]))));
    let f3 = fp(3);
    let g3 = form(SEXTIC_P3_RANK1).reduce_mod(&f3);
    assert_eq!(g3.eval(&pt(&f3, [0, 1, 0])), f3.one());
}

#[test]
fn eval_homogeneity() {
    let f = fp(7);
    let g = sextic_p5().reduce_mod(&f);
    let p = pt(&f, [2, 3, 5]);
    let lam = f.from_u64(3);
    let scaled = p.map(|c| f.mul(c, lam));
    assert_eq!(g.eval(&scaled), f.mul(f.pow(lam, 6), g.eval(&p)));
}

#[test]
fn reduce_mod_examples() {
    let f = fp(3);
    assert_eq!(form("4*y^6").reduce_mod(&f), form("y^6").reduce_mod(&f));
    let g5 = sextic_p5().reduce_mod(&fp(5));
    assert_eq!(g5.coeff(&[5, 1, 0]), g5.field().one());
    let h = sextic_p3_rank3();
    assert!(h.sub(&h).unwrap().reduce_mod(&f).is_zero());
}

#[test]
fn canonical_serialization_is_grevlex() {
    let g = form("z^2 + x*y + x^2 - 3*y*z");
    assert_eq!(g.to_string(), "1*x^2*y^0*z^0+1*x^1*y^1*z^0+-3*x^0*y^1*z^1+1*x^0*y^0*z^2");
    assert_eq!(parse_int_form(&g.to_string(), 0).unwrap(), g);
    assert_eq!(IntForm::zero(Integers, 6).to_string(), "0");
}

#[test]
fn pretty_text_round_trips() {
    assert_eq!(form("-x^2 + x*y").pretty(), "-x^2 + x*y");
    assert_eq!(form("2*x^2*y - 3*y*z^2 + z^3").pretty(), "2*x^2*y - 3*y*z^2 + z^3");
    assert_eq!(IntForm::zero(Integers, 3).pretty(), "0");
    for s in [SEXTIC_P3_RANK3, CONIC1_Q4, CONIC2_Q4] {
        assert_eq!(form(&form(s).pretty()), form(s));
    }
}

#[test]
fn parse_rejects_garbage() {
    assert!(parse_int_form("x^2 + y", 0).is_err());
    assert!(parse_int_form("2*w", 0).is_err());
    assert!(parse_int_form("", 0).is_err());
}

#[test]
fn identity_change_is_noop() {
    let f = fp(5);
    let g = sextic_p5().reduce_mod(&f);
    assert_eq!(g.apply(&LinearChange::identity(f.clone())).unwrap(), g);
}

#[test]
fn singular_change_rejected() {
    let f = fp(5);
    let m = [[1, 2, 3], [2, 4, 6], [0, 0, 1]].map(|r| r.map(|v| f.from_i64(v)));
    assert!(matches!(LinearChange::new(f.clone(), m), Err(Error::SingularChange)));
}

#[test]
fn sending_plane_line_to_x_makes_square() {
    let f = fp(3);
    let g = sextic_p3_rank3().reduce_mod(&f);
    let l = line(&f, [1, 1, 1]);
    let t = LinearChange::sending_line_to_x(&l).unwrap();
    assert_eq!(l.apply(&t).unwrap(), ModForm::variable(f.clone(), 0));
    let moved = g.apply(&t).unwrap();
    assert!(matches!(moved.to_binary_at_x_zero().perfect_square_split(), SquareSplit::Square { .. }));
    let back = moved.apply(&t.inverse().unwrap()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn exact_divide_examples() {
    assert_eq!(form("x^2*y + x*y^2").exact_divide(&form("x + y")).unwrap(), form("x*y"));
    assert!(form("x^2").exact_divide(&form("y")).is_err());
    let f = fp(7);
    let a = sextic_p5().reduce_mod(&f);
    let b = form("x^2 + 3*y*z - z^2").reduce_mod(&f);
    assert_eq!(a.mul(&b).unwrap().exact_divide(&b).unwrap(), a);
}

#[test]
fn restriction_to_tritangent_is_square() {
    let f = fp(5);
    let g = sextic_p5().reduce_mod(&f);
    let r = g.restrict_to_line(&line(&f, [0, -2, 1])).unwrap();
    let SquareSplit::Square { h, split_degree, .. } = r.perfect_square_split() else {
        panic!("expected a square");
    };
    assert_eq!(split_degree, 1);
    // kernel basis of y + 2z (normalized pivot y): k1 = (1,0,0), k2 = (0,3,1)
    // roots of h at (1:0), (1:1), (0:1) map to (1:0:0), (1:3:1), (0:3:1) = (0:1:2)
    for (s, t) in [(1, 0), (1, 1), (0, 1)] {
        assert!(f.is_zero(h.eval(f.from_i64(s), f.from_i64(t))));
    }
    let [k1, k2] = line_kernel_basis(&line(&f, [0, -2, 1])).unwrap();
    assert_eq!(k1, pt(&f, [1, 0, 0]));
    assert_eq!(k2, pt(&f, [0, 3, 1]));
}

#[test]
fn restriction_to_x_is_not_square() {
    let f = fp(5);
    let g = sextic_p5().reduce_mod(&f);
    let r = g.restrict_to_line(&line(&f, [1, 0, 0])).unwrap();
    assert_eq!(r.perfect_square_split(), SquareSplit::NotSquare);
}

#[test]
fn restriction_keeps_factor() {
    let f = fp(5);
    let g = form("x*y*z^3*z + 0*x^6").reduce_mod(&f);
    // z^4*x*y restricted to y = 0 vanishes identically, to x + y = 0 keeps z^4
    assert!(g.restrict_to_line(&line(&f, [0, 1, 0])).unwrap().is_zero());
    let r = g.restrict_to_line(&line(&f, [1, 1, 0])).unwrap();
    // kernel basis k1 = (-1,1,0), k2 = (0,0,1): g(-s, s, t) = -s^2 t^4
    let expected = binary(&f, &[0, 0, 0, 0, -1, 0, 0]);
    assert_eq!(r, expected);
    assert!(matches!(g.restrict_to_line(&line(&f, [0, 0, 0])), Err(Error::ZeroLine)));
}

#[test]
fn square_split_examples() {
    let f = fp(5);
    let cube = binary(&f, &[1, 0, 0, 1]);
    let sq = cube.mul(&cube);
    assert_eq!(sq.perfect_square_split(), SquareSplit::Square { h: cube.clone(), unit: f.one(), split_degree: 1 });
    let twice = sq.scale(f.from_u64(2));
    assert_eq!(twice.perfect_square_split(), SquareSplit::Square { h: cube, unit: f.from_u64(2), split_degree: 2 });
}

#[test]
fn square_split_matches_exhaustive_search() {
    // every binary form of degree 2k over F_q, q <= 7, k <= 2, against brute force
    for p in [3u64, 5, 7] {
        let f = fp(p);
        for k in 1..=2usize {
            let n = 2 * k;
            // the set of all u * h^2 with h normalized
            let mut squares: Vec<Vec<u64>> = Vec::new();
            let total_h = p.pow(k as u32 + 1);
            for hidx in 0..total_h {
                let hc: Vec<Elem> = (0..=k).map(|i| f.from_u64(hidx / p.pow(i as u32) % p)).collect();
                let h = BinaryForm::new(f.clone(), hc);
                match h.coeffs().iter().position(|&c| !f.is_zero(c)) {
                    Some(i) if f.is_one(h.coeffs()[i]) => {}
                    _ => continue,
                }
                for u in 1..p {
                    let g = h.mul(&h).scale(f.from_u64(u));
                    squares.push(g.coeffs().iter().map(|&c| f.to_index(c)).collect());
                }
            }
            let total_g = p.pow(n as u32 + 1);
            for gidx in (0..total_g).step_by(if p == 7 { 3 } else { 1 }) {
                let gc: Vec<u64> = (0..=n).map(|i| gidx / p.pow(i as u32) % p).collect();
                let g = BinaryForm::new(f.clone(), gc.iter().map(|&c| f.from_u64(c)).collect());
                let brute = gidx != 0 && squares.contains(&gc);
                match g.perfect_square_split() {
                    SquareSplit::NotSquare => assert!(!brute, "missed square {gc:?} over F_{p}"),
                    SquareSplit::Square { h, unit, .. } => {
                        assert!(brute);
                        assert_eq!(h.mul(&h).scale(unit), g);
                    }
                }
            }
        }
    }
}

#[test]
fn binary_factor_roots() {
    let f = fp(5);
    // t * (s - t)^2 * (s^2 + 2 t^2)
    let a = binary(&f, &[0, 1]);
    let b = binary(&f, &[1, -1]);
    let c = binary(&f, &[1, 0, 2]);
    let g = a.mul(&b).mul(&b).mul(&c);
    let fac = g.factor().unwrap();
    assert_eq!(fac[0], (BinaryFactor::AtInfinity, 1));
    assert_eq!(fac.len(), 3);
    assert!(a.have_common_root(&g));
    assert!(!a.have_common_root(&c));
}

#[test]
fn common_root_detection_uses_full_coefficients() {
    let f = fp(3);
    // s^3 and s*t^2 share (0:1)
    assert!(binary(&f, &[1, 0, 0, 0]).have_common_root(&binary(&f, &[0, 0, 1, 0])));
    // s^2 + t^2 and s*t share nothing
    assert!(!binary(&f, &[1, 0, 1]).have_common_root(&binary(&f, &[0, 1, 0])));
}
