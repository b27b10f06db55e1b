use num_bigint::BigInt;
use proptest::prelude::*;

use qdelannoy::congruence::verify_theorem2;
use qdelannoy::cyclotomic::CyclotomicTable;
use qdelannoy::orbits::{act, blocks, classify, predicted_sigma_shift, CornerFrame, PathClass};
use qdelannoy::paths::{LatticePath, Step};
use qdelannoy::qcore::{binomial, delannoy, q_binomial};
use qdelannoy::qdelannoy::{q_delannoy_rec, specialize_q1};
use qdelannoy::IntPoly;

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 0..=9).prop_map(|c| IntPoly::from_i64s(&c))
}

fn monic() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 0..=6).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64s(&c)
    })
}

fn steps() -> impl Strategy<Value = Vec<Step>> {
    prop::collection::vec(prop::sample::select(Step::ALL.to_vec()), 0..=12)
}

/// A path to `target` steered by `choices`; falls back to the only feasible
/// step once one coordinate is exhausted.
fn steer(target: (u32, u32), choices: &[u8]) -> LatticePath {
    let (mut rx, mut ry) = target;
    let mut out = Vec::new();
    let mut i = 0;
    while rx > 0 || ry > 0 {
        let s = match (rx > 0, ry > 0) {
            (true, false) => Step::E,
            (false, true) => Step::N,
            _ => Step::ALL[choices.get(i).copied().unwrap_or(0) as usize % 3],
        };
        i += 1;
        rx -= s.dx();
        ry -= s.dy();
        out.push(s);
    }
    LatticePath::new(out)
}

fn frame_and_path() -> impl Strategy<Value = (CornerFrame, LatticePath)> {
    (
        0u32..=3,
        0u32..=3,
        1u32..=5,
        prop::collection::vec(0u8..3, 0..=24),
    )
        .prop_map(|(h, k, n, ch)| {
            let f = CornerFrame::new(h, k, n).unwrap();
            let l = steer(f.target(), &ch);
            (f, l)
        })
}

proptest! {
    #[test]
    fn addition_is_a_commutative_group(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a + &IntPoly::zero(), a.clone());
        prop_assert!((&a + &(-a.clone())).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-b.clone()));
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &IntPoly::one(), a.clone());
        prop_assert!((&a * &IntPoly::zero()).is_zero());
    }

    #[test]
    fn degree_is_additive(a in poly(), b in poly()) {
        let prod = &a * &b;
        match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => prop_assert_eq!(prod.degree(), Some(da + db)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), x in -5i64..=5) {
        let x = BigInt::from(x);
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn division_by_monic_round_trips(a in poly(), m in monic()) {
        let (quot, rem) = a.divrem_monic(&m).unwrap();
        prop_assert_eq!(&(&quot * &m) + &rem, a);
        prop_assert!(rem.degree().is_none_or(|d| Some(d) < m.degree()));
    }

    #[test]
    fn decimal_and_json_forms_round_trip(a in poly()) {
        prop_assert_eq!(IntPoly::from_decimal_strings(&a.to_decimal_strings()).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPoly>(&json).unwrap(), a);
    }

    #[test]
    fn congruence_is_an_equivalence_compatible_with_ring_ops(
        a in poly(), b in poly(), c in poly(), n in 1u64..=24,
    ) {
        let mut t = CyclotomicTable::new();
        let ra = t.reduce_mod(&a, n).unwrap();
        prop_assert!(t.congruent(&a, &a, n).unwrap());
        prop_assert!(t.congruent(&a, &ra, n).unwrap());
        prop_assert_eq!(t.congruent(&a, &b, n).unwrap(), t.congruent(&b, &a, n).unwrap());
        let phi = t.phi(n).unwrap().clone();
        let shifted = &a + &(&c * &phi);
        prop_assert!(t.congruent(&a, &shifted, n).unwrap());
        let rb = t.reduce_mod(&b, n).unwrap();
        prop_assert_eq!(t.reduce_mod(&(&a + &b), n).unwrap(), t.reduce_mod(&(&ra + &rb), n).unwrap());
        prop_assert_eq!(t.reduce_mod(&(&a * &b), n).unwrap(), t.reduce_mod(&(&ra * &rb), n).unwrap());
        prop_assert_eq!(t.reduce_mod(&ra, n).unwrap(), ra);
    }

    #[test]
    fn sigma_splits_over_concatenation(a in steps(), b in steps()) {
        let (a, b) = (LatticePath::new(a), LatticePath::new(b));
        let joined = a.concat(&b);
        prop_assert_eq!(joined.sigma(), a.sigma() + b.sigma() + a.x() as u64 * b.y() as u64);
        prop_assert_eq!(joined.end(), (a.x() + b.x(), a.y() + b.y()));
    }

    #[test]
    fn text_form_round_trips(s in steps()) {
        let l = LatticePath::new(s);
        prop_assert_eq!(l.to_string().parse::<LatticePath>().unwrap(), l);
    }

    #[test]
    fn q_binomial_symmetry_and_specialization(h in 0usize..=20, k in 0usize..=20) {
        prop_assume!(k <= h);
        let qb = q_binomial(h, k as i64);
        prop_assert_eq!(&qb, &q_binomial(h, (h - k) as i64));
        prop_assert_eq!(qb.eval(&BigInt::from(1)), binomial(h as i64, k as i64));
        prop_assert!(qb.coeffs().iter().all(|c| *c >= BigInt::from(0)));
    }

    #[test]
    fn q_delannoy_symmetry_and_specialization(h in 0i64..=9, k in 0i64..=9) {
        let dq = q_delannoy_rec(h, k);
        prop_assert_eq!(&dq, &q_delannoy_rec(k, h));
        prop_assert_eq!(specialize_q1(h, k), delannoy(h, k));
        prop_assert_eq!(dq.degree(), Some((h * k) as usize));
    }

    #[test]
    fn three_term_congruence_holds(n in 1u64..=10, h in 0u64..=10, k in 0u64..=10) {
        let r = verify_theorem2(n, h, k).unwrap();
        prop_assert!(r.pass, "{}", r);
        prop_assert!(r.residue.is_zero());
    }

    #[test]
    fn action_has_period_n_and_exact_sigma_shift((f, l) in frame_and_path()) {
        let class = classify(&l, &f).unwrap();
        if class == PathClass::Q3 {
            prop_assert!(blocks(&l, &f).is_err());
        } else {
            let b = blocks(&l, &f).unwrap();
            prop_assert_eq!(b.reassemble(), l.clone());
            let image = act(&l, &f).unwrap();
            prop_assert_eq!(classify(&image, &f).unwrap(), class);
            prop_assert_eq!(image.sigma() as i64 - l.sigma() as i64, predicted_sigma_shift(&b));
            let mut cur = l.clone();
            for _ in 0..f.n {
                cur = act(&cur, &f).unwrap();
            }
            prop_assert_eq!(cur, l);
        }
    }
}
