use cantor_spectra::adic::{digit_at, hp_prefix, hp_word, series_prefix, EpWord, SignedWord};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn ep_word() -> impl Strategy<Value = EpWord> {
    (
        prop::collection::vec(0u64..4, 0..=6),
        prop::collection::vec(0u64..4, 1..=6),
    )
        .prop_map(|(pre, per)| EpWord::new(4, pre, per).unwrap())
}

fn signed_word(p: i64) -> impl Strategy<Value = SignedWord> {
    let digit = prop::sample::select(vec![-p, 0, p]);
    (
        prop::collection::vec(digit.clone(), 0..=6),
        prop::collection::vec(digit, 1..=6),
    )
        .prop_map(move |(pre, per)| SignedWord::new(&[-p, 0, p], pre, per).unwrap())
}

fn pi(x: i64) -> EpWord {
    EpWord::from_i64(x, 4).unwrap()
}

/// Shifts `w` by `n` places: `4^n w`.
fn shift(w: &EpWord, n: usize) -> EpWord {
    (0..n).fold(w.clone(), |acc, _| acc.scalar_mul(4))
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(a in ep_word(), b in ep_word(), c in ep_word()) {
        let ab = a.add(&b).unwrap();
        prop_assert_eq!(ab.add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(&ab, &b.add(&a).unwrap());
        prop_assert_eq!(ab.sub(&b).unwrap(), a.clone());
    }

    #[test]
    fn negation_is_inverse(a in ep_word()) {
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(a.neg().neg(), a.clone());
        prop_assert_eq!(a.scalar_mul(-1), a.neg());
    }

    #[test]
    fn integer_embedding_is_additive(x in -200i64..=200, y in -200i64..=200, k in -200i64..=200) {
        prop_assert_eq!(pi(x).add(&pi(y)).unwrap(), pi(x + y));
        prop_assert_eq!(pi(x).scalar_mul(k), pi(k * x));
        prop_assert_eq!(pi(x).to_integer(), Some(BigInt::from(x)));
    }

    #[test]
    fn scalar_multiplication_distributes(a in ep_word(), b in ep_word(), j in -30i64..=30, k in -30i64..=30) {
        prop_assert_eq!(a.add(&b).unwrap().scalar_mul(k), a.scalar_mul(k).add(&b.scalar_mul(k)).unwrap());
        prop_assert_eq!(a.scalar_mul(j + k), a.scalar_mul(j).add(&a.scalar_mul(k)).unwrap());
        prop_assert_eq!(a.scalar_mul(j).scalar_mul(k), a.scalar_mul(j * k));
    }

    #[test]
    fn powers_of_four_prepend_zeros(a in ep_word(), n in 0usize..5) {
        let shifted = a.scalar_mul(4i64.pow(n as u32));
        let mut expected = vec![0; n];
        expected.extend(a.prefix(30));
        prop_assert_eq!(shifted.prefix(30 + n), expected);
    }

    #[test]
    fn division_round_trips(a in ep_word(), half in -7i64..=7) {
        let d = 2 * half + 1;
        let q = a.div_by_coprime(d).unwrap();
        prop_assert!(q.is_canonical());
        prop_assert_eq!(q.scalar_mul(d), a.clone());
    }

    #[test]
    fn quotient_is_unique(a in ep_word(), other in ep_word(), half in -7i64..=7) {
        let d = 2 * half + 1;
        let q = a.div_by_coprime(d).unwrap();
        prop_assume!(other != q);
        prop_assert_ne!(other.scalar_mul(d), a);
    }

    #[test]
    fn results_are_canonical(a in ep_word(), b in ep_word(), k in -50i64..=50) {
        for w in [a.add(&b).unwrap(), a.neg(), a.scalar_mul(k), a.sub(&b).unwrap()] {
            prop_assert!(w.is_canonical());
            prop_assert_eq!(EpWord::parse(&w.to_string(), 4).unwrap(), w.clone());
        }
    }

    #[test]
    fn rho_is_an_ultrametric(a in ep_word(), b in ep_word(), c in ep_word()) {
        let ab = a.rho(&b).unwrap();
        let bc = b.rho(&c).unwrap();
        prop_assert!(a.rho(&c).unwrap() <= ab.clone().max(bc));
        prop_assert_eq!(ab.clone(), b.rho(&a).unwrap());
        prop_assert_eq!(ab.is_zero(), a == b);
    }

    #[test]
    fn translation_is_isometric(a in ep_word(), b in ep_word(), k in ep_word(), d in ep_word()) {
        let n = a.first_difference(&b).unwrap();
        prop_assume!(n.is_some());
        let n = n.unwrap();
        // k' - k is divisible by 4^{n+1}, so ρ(k, k') < ρ(a, b)
        let k2 = k.add(&shift(&d, n + 1)).unwrap();
        prop_assert!(k.rho(&k2).unwrap() < a.rho(&b).unwrap());
        prop_assert_eq!(
            a.add(&k).unwrap().rho(&b.add(&k2).unwrap()).unwrap(),
            a.rho(&b).unwrap()
        );
    }

    #[test]
    fn recoding_round_trips(a in ep_word(), s in 1usize..=4) {
        let r = a.block_recode(s).unwrap();
        prop_assert_eq!(r.base(), 4u64.pow(s as u32));
        for k in 0..10 {
            let expected: u64 = (0..s).map(|i| 4u64.pow(i as u32) * a.digit(k * s + i)).sum();
            prop_assert_eq!(r.digit(k), expected);
        }
        prop_assert_eq!(r.block_decode(s, 4).unwrap(), a);
    }

    #[test]
    fn digit_formula_matches_expansion(x in -100_000i64..=100_000, n in 1usize..=12) {
        prop_assert_eq!(digit_at(&BigInt::from(x), n).unwrap(), pi(x).digit(n - 1));
        let moved = BigInt::from(x) + BigInt::from(4).pow(n as u32) * 977;
        prop_assert_eq!(digit_at(&moved, n).unwrap(), pi(x).digit(n - 1));
    }

    #[test]
    fn series_matches_partial_sums(lambdas in prop::collection::vec(-200i64..=200, 1..=12)) {
        let n = lambdas.len();
        let fold = lambdas.iter().enumerate().fold(EpWord::zero(4).unwrap(), |acc, (i, &l)| {
            acc.add(&pi(l).scalar_mul(4i64.pow(i as u32))).unwrap()
        });
        prop_assert_eq!(series_prefix(&lambdas, n).unwrap(), fold.prefix(n));
        // later terms do not reach the first n digits
        let mut longer = lambdas.clone();
        longer.extend([123, -77, 5]);
        prop_assert_eq!(series_prefix(&longer, n).unwrap(), fold.prefix(n));
    }

    #[test]
    fn hp_scaling_identity(
        (p, omega) in prop::sample::select(vec![1i64, 3, 5, 7]).prop_flat_map(|p| (Just(p), signed_word(p)))
    ) {
        let h1 = hp_word(1, &omega.divide_digits(p).unwrap()).unwrap();
        let lhs = hp_prefix(p, &omega, 12).unwrap();
        prop_assert_eq!(&lhs, &h1.scalar_mul(p).prefix(12));
        prop_assert_eq!(&lhs, &hp_word(p, &omega).unwrap().prefix(12));
    }

    #[test]
    fn hp_separates_at_first_difference(u in signed_word(3), v in signed_word(3)) {
        let k = (0..40).find(|&i| u.digit(i) != v.digit(i));
        prop_assume!(k.is_some());
        let k = k.unwrap();
        let hu = hp_prefix(3, &u, k + 1).unwrap();
        let hv = hp_prefix(3, &v, k + 1).unwrap();
        prop_assert_eq!(&hu[..k], &hv[..k]);
        prop_assert_ne!(hu[k], hv[k]);
    }

    #[test]
    fn signed_text_round_trips(w in signed_word(15)) {
        prop_assert_eq!(SignedWord::parse(&w.to_string(), &[-15, 0, 15]).unwrap(), w.clone());
        prop_assert_eq!(SignedWord::parse_inferred(&w.to_literal()).unwrap().prefix(20), w.prefix(20));
    }
}
