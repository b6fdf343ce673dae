use alphacontent::arith::{
    lowering_factorial, raising_factorial, rat, Coefficient, Rational, TruncatedSeries, UniPoly,
};
use alphacontent::coefficients::nbi;
use alphacontent::growth::{cotransition_kernel, transition_kernel};
use alphacontent::jack::{s_r_closed, s_r_direct, s_r_lagrange, sigma_r_closed, sigma_r_direct};
use alphacontent::Partition;
use num_traits::{One, Zero};
use proptest::prelude::*;

const ORDER: u32 = 5;
const VARS: [&str; 2] = ["u", "v"];

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// A two-variable series with a few random low-degree terms.
fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(((0u32..=3, 0u32..=3), small_rational()), 0..6).prop_map(|terms| {
        let mut s = TruncatedSeries::zero(&VARS, ORDER);
        for ((i, j), c) in terms {
            if i + j <= ORDER {
                s.set(vec![i, j], c);
            }
        }
        s
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=5, 0..5).prop_map(Partition::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), a.zero_like());
        prop_assert_eq!(a.mul(&a.one_like()), a.clone());
    }

    #[test]
    fn unit_series_invert(a in series(), c in positive_rational()) {
        let mut u = a.clone();
        u.set(vec![0, 0], c);
        prop_assert_eq!(u.mul(&u.inverse().unwrap()), u.one_like());
    }

    #[test]
    fn exp_undoes_log(a in series()) {
        let mut s = a.clone();
        s.set(vec![0, 0], Rational::one());
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s.clone());
        let mut t = a;
        t.set(vec![0, 0], Rational::zero());
        prop_assert_eq!(t.exp().unwrap().log().unwrap(), t);
    }

    #[test]
    fn raising_is_signed_lowering(x in small_rational(), n in 0usize..8) {
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(raising_factorial(&x, n), sign.clone() * lowering_factorial(&(-x.clone()), n));
        let poly = UniPoly::x().add(&UniPoly::constant(x));
        prop_assert_eq!(raising_factorial(&poly, n), lowering_factorial(&poly.neg(), n).scale(&sign));
    }

    #[test]
    fn nbi_symmetric_in_p(n in 1u32..=10, p in 0i64..=10, k in 1i64..=10) {
        prop_assume!(p <= n as i64 && k <= n as i64);
        prop_assert_eq!(nbi(n, p, k).unwrap(), nbi(n, n as i64 - p, k).unwrap());
    }

    #[test]
    fn kernels_are_probability_measures(la in partition(), alpha in positive_rational()) {
        let up = transition_kernel(&la, &alpha).unwrap();
        prop_assert_eq!(up.total(), Rational::one());
        prop_assert_eq!(up.atoms.len(), la.addable_corners().len());
        prop_assert!(up.atoms.iter().all(|a| a.p > Rational::zero()));
        if !la.is_empty() {
            let down = cotransition_kernel(&la, &alpha).unwrap();
            prop_assert_eq!(down.total(), Rational::one());
            prop_assert_eq!(down.atoms.len(), la.removable_corners().len());
        }
    }

    #[test]
    fn moment_routes_agree(la in partition(), alpha in positive_rational(), r in 0u32..=6) {
        let direct = s_r_direct(&la, &alpha, r).unwrap();
        prop_assert_eq!(&direct, &s_r_closed(&la, &alpha, r).unwrap());
        prop_assert_eq!(&direct, &s_r_lagrange(&la, &alpha, r).unwrap());
        prop_assert_eq!(sigma_r_direct(&la, &alpha, r).unwrap(), sigma_r_closed(&la, &alpha, r).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution(la in partition()) {
        let c = la.conjugate();
        prop_assert_eq!(c.weight(), la.weight());
        prop_assert_eq!(c.conjugate(), la.clone());
        prop_assert_eq!(c.len() as u32, la.part(1));
    }
}
