//! Sextics used across unit tests.

use crate::forms::{parse_int_form, IntForm};

pub const SEXTIC_P5: &str = "x^5*y + x^4*y^2 + 2*x^3*y^3 + x^2*y^4 + x*y^5 + 4*y^6 \
    + 2*x^5*z + 2*x^4*z^2 + 4*x^3*z^3 + 2*x*z^5 + 4*z^6";

pub const SEXTIC_P3_RANK1: &str = "x^6 + 2*x^5*z + 2*x^4*y^2 + 2*x^4*z^2 + 2*x^3*y^3 \
    + 2*x^3*z^3 + 2*x^2*y^4 + 2*x^2*y^3*z + x^2*z^4 + x*y^3*z^2 + 2*x*z^5 + y^6";

pub const SEXTIC_P3_RANK3: &str = "4*x^6 + 2*x^5*y + 12*x^5*z + 2*x^4*y^2 + 4*x^4*y*z \
    + 12*x^4*z^2 + 24*x^3*y^3 - 57*x^3*y^2*z - 9*x^3*y*z^2 + 6*x^3*z^3 + 8*x^2*y^4 \
    - 5*x^2*y^3*z - 72*x^2*y^2*z^2 + 7*x^2*y*z^3 + 4*x^2*z^4 + 20*x*y^4*z - 52*x*y^3*z^2 \
    - 57*x*y^2*z^3 + 7*x*y*z^4 + 4*y^5*z - 7*y^4*z^2 - 18*y^3*z^3 + 7*y^2*z^4 + 12*y*z^5 + 2*z^6";

pub fn form(s: &str) -> IntForm {
    parse_int_form(s, 0).expect("fixture parses")
}

pub fn sextic_p5() -> IntForm {
    form(SEXTIC_P5)
}

/// The mod-3 representative plus `3 y^2 z^4`.
pub fn sextic_p3_rank1_lifted() -> IntForm {
    form(SEXTIC_P3_RANK1).add(&form("3*y^2*z^4")).unwrap()
}

pub fn sextic_p3_rank3() -> IntForm {
    form(SEXTIC_P3_RANK3)
}

/// Mod-3 reference decomposition `f6 = f3^2 + x f5` of the rank-1 sextic.
pub const EX2_F3: &str = "2*x^3 + 2*x^2*z + x*z^2 + 2*y^3";
pub const EX2_F5: &str = "2*x^3*y^2 + x^2*z^3 + 2*x*y^4 + 2*z^5";

pub const CONIC1_Q3: &str = "2*x^3 + 2*x^2*z + 2*y^2*z + y*z^2 + z^3";
pub const CONIC1_Q2: &str = "2*x^2 + 2*x*z + y*z + z^2";
pub const CONIC1_Q4: &str = "x^3*y + 2*x^3*z + x^2*y^2 + x^2*y*z + 2*x^2*z^2 + 12*x*y^3 - 34*x*y^2*z \
    - 9*x*y*z^2 - 2*x*z^3 + 4*y^4 - 15*y^3*z - 7*y^2*z^2 + 9*y*z^3 + z^4";
pub const CONIC2_Q3: &str = "x^3 + 2*x^2*y + 2*x^2*z + x*y^2 + x*y*z + x*z^2 + y^2*z + y*z^2 + z^3";
pub const CONIC2_Q2: &str = "x^2 + x*z + y*z + z^2";
pub const CONIC2_Q4: &str = "-14*x^3*y - 4*x^3*z - 22*x^2*y^2 - 22*x^2*y*z - 8*x^2*z^2 + 8*x*y^3 \
    - 61*x*y^2*z - 9*x*y*z^2 - 6*x*z^3 + 4*y^4 - 15*y^3*z - 11*y^2*z^2 + 6*y*z^3 - 2*z^4";

/// Pseudo-random integer sextic with coefficients in `[0, bound)`.
pub fn random_sextic(rng: &mut impl rand::Rng, bound: i64) -> IntForm {
    let mut terms = std::vec::Vec::new();
    for a in 0..=6u32 {
        for b in 0..=6 - a {
            terms.push(([a, b, 6 - a - b], rng.gen_range(0..bound)));
        }
    }
    IntForm::from_i64_terms(6, &terms).expect("homogeneous")
}
