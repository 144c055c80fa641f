mod common;

use common::{naive_invariant_factors, random_matrix};
use flag_torsion::homology::{smith_normal_form, smith_normal_form_big, IntMatrix};
use num_bigint::{BigInt, BigUint};
use rand::{rngs::StdRng, SeedableRng};

fn as_big(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().map(|x| BigInt::from(x.clone())).collect()
}

#[test]
fn ten_thousand_random_matrices_match_the_naive_reduction() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let rows = random_matrix(&mut rng, 8, 9);
        let m = IntMatrix::from_rows(&rows);
        let f = smith_normal_form(&m);
        let expected = naive_invariant_factors(&rows);
        assert_eq!(as_big(&f.factors), expected, "{rows:?}");
        assert_eq!(f.rank, expected.len());
        assert!(f
            .factors
            .windows(2)
            .all(|w| (&w[1] % &w[0]) == BigUint::from(0u8)));
    }
}

#[test]
fn big_path_agrees_with_word_path() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..500 {
        let rows = random_matrix(&mut rng, 6, 9);
        let m = IntMatrix::from_rows(&rows);
        assert_eq!(smith_normal_form(&m), smith_normal_form_big(&m));
    }
}

#[test]
fn huge_entries_escalate_without_wrapping() {
    let x = i64::MAX / 3;
    let rows = vec![vec![x, x - 1, 7], vec![x - 2, x, 11], vec![5, 3, x]];
    let f = smith_normal_form(&IntMatrix::from_rows(&rows));
    assert_eq!(as_big(&f.factors), naive_invariant_factors(&rows));
}
