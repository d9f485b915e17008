//! C*(λ) words: generation, checking, the λ_n profile, piece ratios and
//! Dehn's algorithm.

use num_rational::Rational64;
use relhyp::smallcancel::{check_c_prime, check_cstar, cstar_profile, generate_cstar_words, DehnReducer};
use relhyp::words::{close_word_set, w, WordSet};

fn main() -> relhyp::Result<()> {
    let half = Rational64::new(1, 2);
    let gen = generate_cstar_words(half, &[10, 12, 14], 2, 11)?.complete()?;
    println!("representatives:");
    for r in &gen.representatives {
        println!("  {r}");
    }
    println!("closed set has {} words; C*(1/2) holds: {}", gen.words.len(), check_cstar(&gen.words, half).0);
    print!("{}", cstar_profile(&gen.words).to_csv());

    // a set that repeats a long subword fails, with a witness
    let bad = close_word_set(&WordSet::from_words([w("aabab'a'b"), w("aababbab")]));
    let (ok, witness) = check_cstar(&bad, half);
    if let Some(v) = witness {
        println!("overlapping pair: holds = {ok}; {} is shared by {} and {} (condition {})", v.subword, v.host, v.other, v.condition);
    }

    let (pieces, c_sixth) = check_c_prime(&close_word_set(&WordSet::from_words([w("aba'b'cdc'd'")])), Rational64::new(1, 6))?;
    println!("surface relator: largest piece ratio {}, C'(1/6) = {c_sixth}", pieces.lambda_measured);

    let dehn = DehnReducer::new(&WordSet::from_words([w("aba'b'cdc'd'")]), 4)?;
    for x in ["dcd'c'bab'a'", "aba'b'cd", "ab"] {
        println!("{x:>12} reduces to {:?}", dehn.reduce(&w(x)).to_string());
    }
    Ok(())
}
