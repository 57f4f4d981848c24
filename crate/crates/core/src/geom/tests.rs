use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::fixtures::*;
use crate::forms::normalize_last;

fn fp(p: u64) -> Arc<Field> {
    Arc::new(Field::prime(p).unwrap())
}

fn coeffs(f: &Field, line: &ModForm) -> [u64; 3] {
    line.linear_coeffs().unwrap().map(|c| f.to_index(c))
}

fn has_line(certs: &[TritangentCert], want: [u64; 3]) -> bool {
    certs.iter().any(|c| c.line_field_degree() == 1 && coeffs(c.line.field(), &c.line) == want)
}

#[test]
fn tritangent_of_p5_example() {
    let f = fp(5);
    let g = sextic_p5().reduce_mod(&f);
    let certs = find_tritangents(&g, 1).unwrap();
    // z - 2y = 0 is stored as 3y + z
    let cert = certs.iter().find(|c| coeffs(&f, &c.line) == [0, 3, 1]).expect("z - 2y is tritangent");
    let mut pts: Vec<[u64; 3]> = cert.contacts.iter().map(|c| c.point.map(|v| c.field.to_index(v))).collect();
    pts.sort();
    assert_eq!(pts, [[0, 1, 2], [1, 0, 0], [1, 3, 1]]);
    assert_eq!(cert.split_field_degree, 1);
    for c in &certs {
        assert!(c.verify(&g));
    }
}

#[test]
fn tritangents_of_p3_examples() {
    let f = fp(3);
    let g2 = form(SEXTIC_P3_RANK1).reduce_mod(&f);
    assert!(has_line(&find_tritangents(&g2, 1).unwrap(), [1, 0, 0]));
    let g3 = sextic_p3_rank3().reduce_mod(&f);
    let certs = find_tritangents(&g3, 1).unwrap();
    assert!(has_line(&certs, [1, 1, 1]));
    assert!(certs.iter().all(|c| c.verify(&g3)));
}

#[test]
fn search_over_extension_lists_new_lines_only() {
    let f = fp(3);
    let g = form(SEXTIC_P3_RANK1).reduce_mod(&f);
    let over_1 = find_tritangents(&g, 1).unwrap();
    let over_2 = find_tritangents(&g, 2).unwrap();
    assert_eq!(over_2.iter().filter(|c| c.line_field_degree() == 1).count(), over_1.len());
    for c in over_2.iter().filter(|c| c.line_field_degree() == 2) {
        assert!(c.verify(&g));
        let a = c.line.linear_coeffs().unwrap();
        let lf = c.line.field();
        assert!(a.iter().any(|&v| lf.as_prime(v).is_none()));
    }
}

#[test]
fn tritangents_follow_coordinate_changes() {
    let f = fp(5);
    let g = sextic_p5().reduce_mod(&f);
    let m = [[1, 2, 0], [0, 1, 3], [1, 0, 1]].map(|r| r.map(|v| f.from_u64(v)));
    let t = LinearChange::new(f.clone(), m).unwrap();
    let moved = g.apply(&t).unwrap();
    let mut before: Vec<[u64; 3]> = find_tritangents(&g, 1)
        .unwrap()
        .iter()
        .map(|c| {
            let l = c.line.apply(&t).unwrap().linear_coeffs().unwrap();
            normalize_last(&f, &l).unwrap().map(|v| f.to_index(v))
        })
        .collect();
    let mut after: Vec<[u64; 3]> = find_tritangents(&moved, 1).unwrap().iter().map(|c| coeffs(&f, &c.line)).collect();
    before.sort();
    after.sort();
    assert_eq!(before, after);
}

#[test]
fn decomposition_of_ex2() {
    let f = fp(3);
    let f6 = sextic_p3_rank1_lifted();
    let x = ModForm::variable(f.clone(), 0);
    let (f3, f5) = decompose_along_line(&f6, &x).unwrap();
    let g = f6.reduce_mod(&f);
    let lhs = |a: &IntForm, b: &IntForm| {
        let a = a.reduce_mod(&f);
        a.mul(&a).unwrap().add(&x.mul(&b.reduce_mod(&f)).unwrap()).unwrap()
    };
    assert_eq!(lhs(&f3, &f5), g);
    // the reference pair is another valid decomposition
    assert_eq!(lhs(&form(EX2_F3), &form(EX2_F5)), g);
    // two decompositions differ by a multiple of the line
    let a = f3.reduce_mod(&f);
    let b = form(EX2_F3).reduce_mod(&f);
    let prod = a.sub(&b).unwrap().mul(&a.add(&b).unwrap()).unwrap();
    assert!(prod.exact_divide(&x).is_ok());
}

#[test]
fn decomposition_of_synthetic_identity() {
    let mut rng = StdRng::seed_from_u64(7);
    let f = fp(7);
    for _ in 0..10 {
        let rand_form = |rng: &mut StdRng, deg: u32| {
            let mut terms = Vec::new();
            for a in 0..=deg {
                for b in 0..=deg - a {
                    terms.push(([a, b, deg - a - b], rng.gen_range(-20..20i64)));
                }
            }
            IntForm::from_i64_terms(deg, &terms).unwrap()
        };
        let f3 = rand_form(&mut rng, 3);
        let f5 = rand_form(&mut rng, 5);
        let l = IntForm::from_i64_terms(1, &[([1, 0, 0], 2), ([0, 1, 0], 5), ([0, 0, 1], 1)]).unwrap();
        let f6 = f3.mul(&f3).unwrap().add(&l.mul(&f5).unwrap()).unwrap();
        let line = l.reduce_mod(&f);
        let (a, b) = decompose_along_line(&f6, &line).unwrap();
        let lhs = a.mul(&a).unwrap().add(&l.mul(&b).unwrap()).unwrap();
        assert_eq!(lhs.reduce_mod(&f), f6.reduce_mod(&f));
    }
}

#[test]
fn decomposition_rejects_non_tangent_line() {
    let f = fp(5);
    let line = ModForm::variable(f.clone(), 0);
    assert!(matches!(decompose_along_line(&sextic_p5(), &line), Err(Error::NotTritangent)));
}

#[test]
fn conic_identities() {
    let f6 = sextic_p3_rank3();
    let c1 = ConicCert { c: BigInt::from(1), q3: form(CONIC1_Q3), q2: form(CONIC1_Q2), q4: form(CONIC1_Q4) };
    let c2 = ConicCert { c: BigInt::from(4), q3: form(CONIC2_Q3), q2: form(CONIC2_Q2), q4: form(CONIC2_Q4) };
    assert!(verify_conic_identity(&c1, &f6));
    assert!(verify_conic_identity(&c2, &f6));
    let mut bad = c1.clone();
    bad.q4 = bad.q4.add(&form("z^4")).unwrap();
    assert!(!verify_conic_identity(&bad, &f6));
}

fn exhaustive_singular(g: &ModForm, e: u32) -> bool {
    let field = Arc::new(Field::new(g.field().characteristic(), e).unwrap());
    let emb = Embedding::new(g.field(), &field).unwrap();
    let polys: Vec<ModForm> =
        [g.clone(), g.partial(0), g.partial(1), g.partial(2)].iter().map(|p| p.extend_to(&field, &emb)).collect();
    let f: &Field = &field;
    let mut pts = Vec::new();
    for y in f.elements() {
        for z in f.elements() {
            pts.push([f.one(), y, z]);
        }
    }
    for z in f.elements() {
        pts.push([f.zero(), f.one(), z]);
    }
    pts.push([f.zero(), f.zero(), f.one()]);
    pts.iter().any(|pt| polys.iter().all(|p| f.is_zero(p.eval(pt))))
}

fn assert_witness(g: &ModForm, report: &SingularityReport) {
    let SingularityReport::Singular { field, point } = report else {
        panic!("expected singular, got {report:?}");
    };
    let emb = Embedding::new(g.field(), field).unwrap();
    for p in [g.clone(), g.partial(0), g.partial(1), g.partial(2)] {
        assert!(field.is_zero(p.extend_to(field, &emb).eval(point)));
    }
}

#[test]
fn smoothness_examples() {
    assert!(smoothness_check(&sextic_p3_rank3().reduce_mod(&fp(3))).unwrap().is_smooth());
    let f7 = fp(7);
    let fermat = form("x^6 + y^6 + z^6").reduce_mod(&f7);
    assert!(smoothness_check(&fermat).unwrap().is_smooth());
    assert!(!exhaustive_singular(&fermat, 1));
    let x6 = form("x^6").reduce_mod(&f7);
    let r = smoothness_check(&x6).unwrap();
    assert_witness(&x6, &r);
    let SingularityReport::Singular { point, .. } = r else { unreachable!() };
    assert!(f7.is_zero(point[0]));
}

#[test]
fn smoothness_matches_exhaustive_search() {
    let mut rng = StdRng::seed_from_u64(2024);
    for (i, p) in [3u64, 5].into_iter().cycle().take(20).enumerate() {
        let f = fp(p);
        let mut g = random_sextic(&mut rng, p as i64).reduce_mod(&f);
        if i % 2 == 1 {
            // force a singular point at a random rational point by a coordinate change
            let mut h = random_sextic(&mut rng, p as i64);
            for m in [[6, 0, 0], [5, 1, 0], [5, 0, 1]] {
                h = h.sub(&IntForm::monomial(crate::forms::Integers, m, h.coeff(&m))).unwrap();
            }
            let a = rng.gen_range(0..p);
            let b = rng.gen_range(0..p);
            let m = [[1, 0, 0], [a, 1, 0], [b, 0, 1]].map(|r| r.map(|v| f.from_u64(v)));
            g = h.reduce_mod(&f).apply(&LinearChange::new(f.clone(), m).unwrap()).unwrap();
            if g.is_zero() {
                continue;
            }
        }
        let report = smoothness_check(&g).unwrap();
        let brute = (1..=3).any(|e| exhaustive_singular(&g, e));
        match &report {
            SingularityReport::Smooth => assert!(!brute, "missed a singular point of {g}"),
            SingularityReport::Singular { .. } => assert_witness(&g, &report),
            SingularityReport::Inconclusive(why) => panic!("inconclusive: {why}"),
        }
        if brute {
            assert!(!report.is_smooth());
        }
    }
}
