mod common;

use cantor_spectra::adic::SignedWord;
use cantor_spectra::constructions::{thm47_label, DigitSet};
use cantor_spectra::decision::{
    core_bound, decay_profile, exists_infinite_expansion, expansion_along_prefix, expansion_type,
    is_spectrum_ep_label, measure_decay_exact, monte_carlo_survival, step, thm47_check,
    universal_game, Expansion, GameVerdict, PrefixOutcome, ResidueAutomaton,
};
use common::{classify, congruence_paths, value};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set(d: &[i64]) -> DigitSet {
    DigitSet::new(d).unwrap()
}

fn odd_digits() -> Vec<i64> {
    (-15..=15).filter(|d| d % 2 != 0).collect()
}

/// Every digit set of size one or two drawn from the odd digits in [-15, 15].
fn small_sets() -> Vec<DigitSet> {
    let d = odd_digits();
    let mut out: Vec<DigitSet> = d.iter().map(|&a| set(&[a])).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            out.push(set(&[d[i], d[j]]));
        }
    }
    out
}

/// All purely periodic words over `digits` with period length 1..=max_len.
fn periodic_words(digits: &[i64], max_len: usize) -> Vec<SignedWord> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| digits.iter().map(move |&d| [w.as_slice(), &[d]].concat()))
            .collect();
        out.extend(
            layer
                .iter()
                .map(|p| SignedWord::new(digits, vec![], p.clone()).unwrap()),
        );
    }
    out
}

#[test]
fn core_bound_and_step() {
    assert_eq!(core_bound(1), 1);
    assert_eq!(core_bound(3), 1);
    assert_eq!(core_bound(7), 2);
    assert_eq!(core_bound(15), 5);
    assert_eq!(step(-1, 3), Some(-1));
    assert_eq!(step(-1, 1), None);
    assert_eq!(step(7, 3), Some(1));
    assert_eq!(step(i64::MIN, 0), Some(i64::MIN / 4));
    assert_eq!(step(-6, 0), None);
}

#[test]
fn automaton_is_complete_on_the_core() {
    for c in small_sets() {
        let automaton = ResidueAutomaton::new(&c.with_zero()).unwrap();
        let b = automaton.bound();
        let mut expected = Vec::new();
        for r in -b..=b {
            for &d in &c.with_zero() {
                if (r - d).rem_euclid(4) == 0 {
                    let t = (r - d) / 4;
                    assert!(t.abs() <= b, "{c:?}: {r} -{d}-> {t}");
                    assert!(4 * t.abs() <= r.abs() + c.max_abs());
                    expected.push((r, d, t));
                }
            }
        }
        let got: Vec<(i64, i64, i64)> = automaton
            .edges()
            .iter()
            .map(|e| (e.from, e.digit, e.to))
            .collect();
        expected.sort_unstable();
        let mut sorted = got.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, expected);
    }
}

#[test]
fn transients_enter_the_core_quickly() {
    let lambdas: Vec<i64> = (-20_000..=20_000)
        .chain((20_000..=1_000_000).step_by(977))
        .chain((-1_000_000..=-20_000).step_by(983))
        .chain([1_000_000, -1_000_000])
        .collect();
    for c in [
        set(&[1, 3]),
        set(&[3, 15]),
        set(&[1, 7]),
        set(&[-13, 15]),
        set(&[1]),
    ] {
        let automaton = ResidueAutomaton::new(&c.with_zero()).unwrap();
        for &lambda in &lambdas {
            let abs = lambda.unsigned_abs();
            // ⌈log₄ |λ|⌉
            let log = (0..).find(|&j| 4u64.pow(j) >= abs).unwrap() as usize;
            let steps = automaton.core_entry_steps(lambda);
            assert!(steps <= log + 2, "{c:?} λ={lambda}: {steps} steps");
        }
    }
}

#[test]
fn digit_set_decisions() {
    assert!(exists_infinite_expansion(&set(&[1, 7])).is_none());
    assert!(exists_infinite_expansion(&set(&[1, 5])).is_none());
    let cert = exists_infinite_expansion(&set(&[1, 3])).unwrap();
    assert_eq!(cert.lambda, -1);
    assert_eq!(cert.cycle, vec![3]);
    assert!(exists_infinite_expansion(&set(&[3, 15])).is_some());

    assert!(universal_game(&set(&[3, 15])).seeker_wins());
    assert_eq!(
        universal_game(&set(&[1, 3])).verdict,
        GameVerdict::AdversaryWins
    );
}

#[test]
fn existential_search_agrees_with_label_decisions() {
    for c in small_sets() {
        let labels = periodic_words(c.digits(), 4);
        let decisions: Vec<bool> = labels
            .iter()
            .map(|l| is_spectrum_ep_label(l).unwrap().spectrum)
            .collect();
        match exists_infinite_expansion(&c) {
            None => assert!(
                decisions.iter().all(|&s| s),
                "{c:?}: no witness but a failing label"
            ),
            Some(cert) => {
                cert.replay(64).unwrap();
                if cert.cycle.len() <= 4 {
                    // realise the cycle: nonzero digits fix the label, zeros are free
                    let period: Vec<i64> = cert
                        .cycle
                        .iter()
                        .map(|&d| if d == 0 { c.digits()[0] } else { d })
                        .collect();
                    let label = SignedWord::new(c.digits(), vec![], period).unwrap();
                    assert!(!is_spectrum_ep_label(&label).unwrap().spectrum, "{c:?}");
                    assert!(decisions.iter().any(|&s| !s));
                }
            }
        }
    }
}

#[test]
fn failing_labels_come_with_replayable_witnesses() {
    let mut checked = 0;
    for c in small_sets() {
        for label in periodic_words(c.digits(), 3) {
            let decision = is_spectrum_ep_label(&label).unwrap();
            if let Some(w) = &decision.witness {
                w.replay(64).unwrap();
                let Expansion::Infinite { certificate } = expansion_type(&label, w.lambda).unwrap()
                else {
                    panic!("{label}: witness {} has no infinite expansion", w.lambda);
                };
                certificate.replay(64).unwrap();
                for (k, &d) in label.prefix(64).iter().enumerate() {
                    let omega = certificate.digit(k);
                    assert!(omega == 0 || omega == d);
                }
                checked += 1;
            }
            assert_eq!(decision.spectrum, decision.witness.is_none());
        }
    }
    assert!(checked > 100);
}

#[test]
fn seeker_strategies_survive_random_playouts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut winners = 0;
    for (c, playouts) in small_sets()
        .into_iter()
        .map(|c| (c, 20))
        .chain([(set(&[3, 15]), 1000)])
    {
        let game = universal_game(&c);
        let GameVerdict::SeekerWins { winning, .. } = &game.verdict else {
            continue;
        };
        // the seeker's answer is forced, so the existential search must agree
        assert!(exists_infinite_expansion(&c).is_some());
        winners += 1;
        let core = (2 * game.core_bound + 1) as usize;
        for _ in 0..playouts {
            let start = *winning.choose(&mut rng).unwrap();
            let labels: Vec<i64> = (0..1000)
                .map(|_| *c.digits().choose(&mut rng).unwrap())
                .collect();
            let accepting = game.playout(start, &labels).unwrap();
            let mut last = 0;
            for &k in accepting.iter().chain([&1000]) {
                assert!(k - last <= core, "{c:?}: gap {} from {start}", k - last);
                last = k;
            }
        }
        // no label can be a spectrum
        for label in periodic_words(c.digits(), 3) {
            assert!(
                !is_spectrum_ep_label(&label).unwrap().spectrum,
                "{c:?} {label}"
            );
        }
    }
    assert!(winners > 0);
}

/// Counts label prefixes in `C^k` leaving `λ` alive, straight from the
/// congruences. Also reports whether every alive prefix met an odd residue
/// at every level, i.e. a constrained choice each time.
fn decay_oracle(c: &[i64], lambda: i64, k: usize) -> (BigRational, bool) {
    let m = c.len();
    let mut alive = 0u64;
    let mut always_constrained = true;
    for index in 0..m.pow(k as u32) {
        let label: Vec<i64> = (0..k).map(|i| c[index / m.pow(i as u32) % m]).collect();
        let Some(path) = congruence_paths(&label, lambda, k).pop() else {
            continue;
        };
        if value(&path) == lambda as i128 {
            continue;
        }
        alive += 1;
        for j in 0..k {
            let residue = (lambda as i128 - value(&path[..j])) / 4i128.pow(j as u32);
            always_constrained &= residue % 2 != 0;
        }
    }
    let total = BigInt::from(m).pow(k as u32);
    (BigRational::new(alive.into(), total), always_constrained)
}

#[test]
fn decay_matches_enumeration_and_bound() {
    let sets: [&[i64]; 5] = [&[1, 3], &[3, 15], &[1, 5], &[-1, 1, 3], &[1, 3, 5]];
    let mut bounded = 0;
    for c in sets {
        let ds = set(c);
        let m = c.len() as i64;
        for lambda in -6..=6 {
            let profile = decay_profile(&ds, lambda, 7);
            for (k, measure) in profile.iter().enumerate().skip(1) {
                let (oracle, constrained) = decay_oracle(c, lambda, k);
                assert_eq!(*measure, oracle, "C={c:?} λ={lambda} k={k}");
                if constrained
                    && ds.digits().iter().any(|d| d.rem_euclid(4) == 1)
                    && ds.digits().iter().any(|d| d.rem_euclid(4) == 3)
                {
                    let bound = BigRational::new((m - 1).into(), m.into()).pow(k as i32 - 1);
                    assert!(*measure <= bound, "C={c:?} λ={lambda} k={k}");
                    bounded += 1;
                }
            }
        }
    }
    assert!(bounded > 0);
}

#[test]
fn decay_for_one_three() {
    for k in 0..=10 {
        assert_eq!(
            measure_decay_exact(&set(&[1, 3]), -1, k),
            BigRational::new(1.into(), BigInt::from(2).pow(k as u32))
        );
    }
    assert_eq!(
        measure_decay_exact(&set(&[1, 3]), 0, 5),
        BigRational::from_integer(0.into())
    );
}

#[test]
fn monte_carlo_tracks_the_exact_measure() {
    for (c, lambda, depth) in [(&[1, 3][..], -1, 6), (&[3, 15], 5, 8), (&[1, 3, 5], -3, 5)] {
        let ds = set(c);
        let exact = measure_decay_exact(&ds, lambda, depth).to_f64().unwrap();
        let est = monte_carlo_survival(&ds, lambda, depth, 20_000, 7).unwrap();
        let se = (exact * (1.0 - exact) / 20_000.0).sqrt().max(1e-9);
        assert!(
            (est.fraction - exact).abs() <= 4.0 * se,
            "{c:?}: {} vs {exact}",
            est.fraction
        );
        assert_eq!(
            est,
            monte_carlo_survival(&ds, lambda, depth, 20_000, 7).unwrap()
        );
    }
    assert!(monte_carlo_survival(&set(&[1]), 1, 3, 0, 0).is_err());
}

#[test]
fn thm47_family_and_deep_congruence_search() {
    for p in (1..=15).step_by(2) {
        let report = thm47_check(p, 8).unwrap();
        assert!(report.spectrum(), "p={p}");
        assert!(report.cycles.iter().all(|c| c.refuted));
    }
    for p in [1, 3, 5] {
        let label = thm47_label(p, 50).unwrap();
        for lambda in -200..=200 {
            let oracle = classify(&label, lambda, 50);
            match expansion_along_prefix(&label, lambda) {
                PrefixOutcome::Finite(_) => assert_eq!(oracle, Some(true), "p={p} λ={lambda}"),
                PrefixOutcome::Dead(_) => assert_eq!(oracle, None, "p={p} λ={lambda}"),
                PrefixOutcome::Alive(_) => assert_eq!(oracle, Some(false), "p={p} λ={lambda}"),
            }
        }
    }
}

fn ep_label() -> impl Strategy<Value = SignedWord> {
    let digit = prop::sample::select(odd_digits());
    (
        prop::collection::vec(digit.clone(), 0..=3),
        prop::collection::vec(digit, 1..=4),
    )
        .prop_map(|(pre, per)| SignedWord::from_digits(pre, per).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_type_agrees_with_congruences(label in ep_label()) {
        const DEPTH: usize = 50;
        let prefix = label.prefix(DEPTH);
        for lambda in -150i64..=150 {
            let paths = congruence_paths(&prefix, lambda, DEPTH);
            match expansion_type(&label, lambda).unwrap() {
                Expansion::Finite { digits } => {
                    prop_assert_eq!(value(&digits), lambda as i128);
                    prop_assert_eq!(classify(&prefix, lambda, DEPTH), Some(true));
                }
                Expansion::Infinite { certificate } => {
                    prop_assert!(certificate.replay(DEPTH).is_ok());
                    let digits: Vec<i64> = (0..DEPTH).map(|k| certificate.digit(k)).collect();
                    prop_assert_eq!(paths, vec![digits]);
                }
                Expansion::NotMember { depth } if depth <= DEPTH => {
                    prop_assert_eq!(congruence_paths(&prefix, lambda, depth - 1).len(), 1);
                    prop_assert!(congruence_paths(&prefix, lambda, depth).is_empty());
                }
                Expansion::NotMember { .. } => prop_assert_eq!(paths.len(), 1),
            }
        }
    }

    #[test]
    fn spectrum_decisions_are_consistent(label in ep_label()) {
        let decision = is_spectrum_ep_label(&label).unwrap();
        let infinite: Vec<i64> = (-300i64..=300)
            .filter(|&l| matches!(expansion_type(&label, l).unwrap(), Expansion::Infinite { .. }))
            .collect();
        match &decision.witness {
            None => prop_assert!(infinite.is_empty(), "{} has infinite expansions {:?}", label, infinite),
            Some(w) => {
                prop_assert!(w.replay(64).is_ok());
                let is_infinite = matches!(expansion_type(&label, w.lambda).unwrap(), Expansion::Infinite { .. });
                prop_assert!(is_infinite);
                if w.lambda.abs() <= 300 {
                    prop_assert!(infinite.contains(&w.lambda));
                }
            }
        }
    }
}
