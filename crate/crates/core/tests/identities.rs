use conevol_core::invariants::volume_formula;
use conevol_core::{
    covering_residual, existence_interval, rational_new, schlafli_residual, strand_length,
    two_bridge_volume, volume, volume_derivative, Evaluation, ExactScalar, Grade, PiScalar,
    Rational, TorusLinkParams,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_map(|(n, d)| rational_new(n, d).unwrap())
}

fn angle() -> impl Strategy<Value = ExactScalar> {
    rational().prop_map(PiScalar::angle)
}

fn any_scalar() -> impl Strategy<Value = ExactScalar> {
    (rational(), 0u8..=2).prop_map(|(c, g)| PiScalar::new(c, Grade::from_exponent(g).unwrap()))
}

fn pq() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=200, 1i64..=200)
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn rational_reconstructs(n in -1_000_000i64..=1_000_000, d in 1i64..=1_000_000) {
        let r = rational_new(n, d).unwrap();
        let back = rational_new(r.numer().clone(), r.denom().clone()).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert!(r.denom() > &0.into());
        prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), 1.into());
    }

    #[test]
    fn to_float_monotone_on_angles(a in angle(), b in angle()) {
        if a.try_lt(&b).unwrap() {
            prop_assert!(a.to_float().unwrap() <= b.to_float().unwrap());
        }
    }

    #[test]
    fn grades_stay_in_range(a in any_scalar(), b in any_scalar()) {
        for r in [a.try_add(&b), a.try_sub(&b), a.try_mul(&b)].into_iter().flatten() {
            prop_assert!(r.grade().exponent() <= 2);
        }
        let sum_ok = a.grade() == b.grade();
        prop_assert_eq!(a.try_add(&b).is_ok(), sum_ok);
        prop_assert_eq!(a.try_mul(&b).is_ok(), a.grade().exponent() + b.grade().exponent() <= 2);
    }

    #[test]
    fn volume_symmetric_in_p_q((p, q) in pq(), a in angle()) {
        let t = TorusLinkParams::new(p, q).unwrap();
        let s = TorusLinkParams::new(q, p).unwrap();
        let forced = Evaluation::Forced;
        prop_assert_eq!(volume(&t, &a, forced).unwrap(), volume(&s, &a, forced).unwrap());
        prop_assert_eq!(
            volume_formula(p as u64, q as u64, &a).unwrap(),
            volume_formula(q as u64, p as u64, &a).unwrap()
        );
    }

    #[test]
    fn covering_identity_everywhere((p, q) in pq(), a in angle()) {
        let t = TorusLinkParams::new(p, q).unwrap();
        prop_assert_eq!(covering_residual(&t, &a).unwrap(), ExactScalar::zero(Grade::Two));
    }

    #[test]
    fn two_bridge_matches_doubled_link(p in 1i64..=100, a in angle()) {
        let doubled = TorusLinkParams::new(2, 2 * p).unwrap();
        prop_assert_eq!(
            two_bridge_volume(p, &a, &a).unwrap(),
            volume(&doubled, &a, Evaluation::Forced).unwrap()
        );
    }

    #[test]
    fn schlafli_exact((p, q) in pq(), a in angle()) {
        let t = TorusLinkParams::new(p, q).unwrap();
        prop_assert_eq!(schlafli_residual(&t, &a).unwrap(), ExactScalar::zero(Grade::One));
    }

    #[test]
    fn boundary_is_degenerate((p, q) in pq()) {
        let t = TorusLinkParams::new(p, q).unwrap();
        let lower = existence_interval::<Rational>(&t).lower().clone();
        let forced = Evaluation::Forced;
        prop_assert_eq!(volume(&t, &lower, forced).unwrap(), ExactScalar::zero(Grade::Two));
        prop_assert_eq!(volume_derivative(&t, &lower, forced).unwrap(), ExactScalar::zero(Grade::One));
        prop_assert_eq!(strand_length(&t, &lower, forced).unwrap(), ExactScalar::zero(Grade::One));
    }

    #[test]
    fn interval_width_is_four_over_q((p, q) in pq()) {
        let t = TorusLinkParams::new(p, q).unwrap();
        let w = existence_interval::<Rational>(&t);
        prop_assert!(w.lower().try_lt(w.upper()).unwrap());
        prop_assert_eq!(w.width(), PiScalar::angle(rational_new(4, t.q() as i64).unwrap()));
    }

    #[test]
    fn volume_increases_inside_window((p, q) in pq(), s in 1i64..1000, u in 1i64..1000) {
        prop_assume!(s != u);
        let t = TorusLinkParams::new(p, q).unwrap();
        let w = existence_interval::<Rational>(&t);
        let lo = w.effective_lower().coeff().clone();
        let width = w.upper().coeff() - &lo;
        let at = |k: i64| PiScalar::angle(&lo + &width * rational_new(k, 1000).unwrap());
        let (a, b) = if s < u { (at(s), at(u)) } else { (at(u), at(s)) };
        let va = volume(&t, &a, Evaluation::Strict).unwrap();
        let vb = volume(&t, &b, Evaluation::Strict).unwrap();
        prop_assert!(va.try_lt(&vb).unwrap());
        prop_assert!(va.coeff() > &Rational::from_integer(0.into()));
    }
}

#[test]
fn large_parameters_stay_exact() {
    // p*q/2 * X^2 with p, q near the limit would overflow fixed-width integers.
    let t = TorusLinkParams::new(999_983, 1_000_000).unwrap();
    let w = existence_interval::<Rational>(&t);
    let mid =
        PiScalar::angle((w.lower().coeff() + w.upper().coeff()) / Rational::from_integer(2.into()));
    let v = volume(&t, &mid, Evaluation::Strict).unwrap();
    assert_eq!(
        covering_residual(&t, &mid).unwrap(),
        ExactScalar::zero(Grade::Two)
    );
    // X = 1/q * pi at the midpoint, so Vol = p / (2q) * pi^2.
    assert_eq!(
        v,
        PiScalar::new(rational_new(999_983, 2_000_000).unwrap(), Grade::Two)
    );
}
