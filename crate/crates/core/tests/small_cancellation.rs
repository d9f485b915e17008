mod common;

use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relhyp::smallcancel::{check_cstar, DehnReducer};
use relhyp::words::{close_word_set, w, WordSet};

use common::{conjugate_products, for_each_reduced_word, naive_cstar, random_reduced_word};

fn lambda_strategy() -> impl Strategy<Value = Rational64> {
    (1i64..=4, 2i64..=8).prop_filter_map("below one", |(p, q)| (p < q).then(|| Rational64::new(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cstar_agrees_with_linear_scan(seed in any::<u64>(), k in 1usize..=3, lambda in lambda_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<_> = (0..k).map(|i| random_reduced_word(&mut rng, 2, 3 + 4 * i + (seed % 5) as usize)).collect();
        let set = close_word_set(&WordSet::from_words(words));
        prop_assert_eq!(check_cstar(&set, lambda).0, naive_cstar(&set, lambda));
    }

    #[test]
    fn cstar_is_monotone_in_lambda(seed in any::<u64>(), lambda in lambda_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = close_word_set(&WordSet::from_words([random_reduced_word(&mut rng, 2, 9), random_reduced_word(&mut rng, 2, 11)]));
        if check_cstar(&set, lambda).0 {
            prop_assert!(check_cstar(&set, lambda + Rational64::new(1, 12)).0);
        }
    }
}

#[test]
fn torus_relator_fails_and_surface_relator_passes() {
    let torus = close_word_set(&WordSet::from_words([w("aba'b'")]));
    let surface = close_word_set(&WordSet::from_words([w("aba'b'cdc'd'")]));
    assert!(!check_cstar(&torus, Rational64::new(1, 6)).0);
    assert!(check_cstar(&surface, Rational64::new(1, 6)).0);
}

#[test]
fn dehn_matches_conjugate_enumeration_on_short_words() {
    let r = w("aba'b'cdc'd'");
    let trivial = conjugate_products(&[r.clone()], 4, 2, 6);
    let dehn = DehnReducer::new(&WordSet::from_words([r]), 4).unwrap();
    let mut count = 0;
    for_each_reduced_word(4, 6, |s| {
        let x = relhyp::words::Word::from_letters(s.to_vec());
        assert_eq!(dehn.is_trivial(&x), trivial.contains(&x), "{x}");
        count += 1;
    });
    // 1 + 8 * (1 + 7 + ... + 7^5)
    assert_eq!(count, 156_865);
}
