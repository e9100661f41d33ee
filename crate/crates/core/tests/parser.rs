use std::sync::Arc;

use prmq::expr::{parse_form, parse_form_qn, render_form};
use prmq::gf::{Elem, GaloisField};
use prmq::projspace::ProjectiveSpace;
use prmq::quadric::{monomial_count, QuadraticForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn round_trip_on_the_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (q, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
        let field = Arc::new(GaloisField::with_order(q).unwrap());
        let space = Arc::new(ProjectiveSpace::new(field, n).unwrap());
        let m = monomial_count(n + 1);
        for _ in 0..10_000 {
            let c = (0..m).map(|_| Elem(rng.gen_range(0..q) as u8)).collect();
            let f = QuadraticForm::from_coeffs(space.clone(), c).unwrap();
            assert_eq!(parse_form(&render_form(&f), &space).unwrap(), f);
        }
    }
}

#[test]
fn whitespace_and_minus_signs() {
    let a = parse_form_qn("X0*X1+2*X2^2", 5, 2).unwrap();
    let b = parse_form_qn("  X0 * X1 \t-  3 * X2 ^ 2 ", 5, 2).unwrap();
    let c = parse_form_qn("X0*X1 \u{2212} 3*X2^2", 5, 2).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(parse_form_qn("X0*X1", 6, 2).is_err());
}
