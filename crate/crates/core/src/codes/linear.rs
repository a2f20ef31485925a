//! Systematicization of linear codes: rewrite a generator matrix so the
//! message appears verbatim on a set of information coordinates, turning any
//! locally correctable linear code into a locally decodable one.

use crate::error::{Error, Result};
use crate::f2::F2Matrix;

/// Given a full-row-rank generator `G`, return `(G', I)` where `G'` spans the
/// same row space and `(x . G')` restricted to the 1-based coordinates `I`
/// equals `x`. `I` is the pivot set of the row reduction.
pub fn systematicize(g: &F2Matrix) -> Result<(F2Matrix, Vec<usize>)> {
    let n = g.n_rows();
    let (reduced, rank, pivots) = g.row_reduce();
    if rank < n {
        return Err(Error::RankDeficient { rank, expected: n });
    }
    Ok((reduced, pivots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitWord;
    use crate::f2::F2Vec;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn codewords(g: &F2Matrix) -> BTreeSet<String> {
        let n = g.n_rows();
        (0..1u64 << n)
            .map(|mask| g.left_mul(&BitWord::from_mask(mask, n)).to_string())
            .collect()
    }

    #[test]
    fn already_systematic_passthrough() {
        // G = [I | A]
        let g =
            F2Matrix::from_bool_rows(&[&[true, false, true, true], &[false, true, false, true]]);
        let (gp, info) = systematicize(&g).unwrap();
        assert_eq!(info, vec![1, 2]);
        assert_eq!(gp, g);
    }

    #[test]
    fn repetition_row() {
        let g = F2Matrix::from_bool_rows(&[&[true, true]]);
        let (gp, info) = systematicize(&g).unwrap();
        assert_eq!(info, vec![1]);
        let y = gp.left_mul(&BitWord::from_mask(1, 1));
        assert!(y.bit(1));
    }

    #[test]
    fn rank_deficient_rejected() {
        let g = F2Matrix::from_bool_rows(&[&[true, true], &[true, true]]);
        assert_eq!(
            systematicize(&g),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn random_full_rank_recovery_and_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut tested = 0;
        while tested < 30 {
            let n = 4;
            let m = 8;
            let rows: Vec<F2Vec> = (0..n)
                .map(|_| {
                    F2Vec::from_bools(&(0..m).map(|_| rng.random::<bool>()).collect::<Vec<_>>())
                })
                .collect();
            let g = F2Matrix::from_rows(rows);
            let Ok((gp, info)) = systematicize(&g) else {
                continue;
            };
            tested += 1;
            // Exhaustive message recovery on the information coordinates.
            for mask in 0..1u64 << n {
                let x = BitWord::from_mask(mask, n);
                let y = gp.left_mul(&x);
                for (bit, &col) in info.iter().enumerate() {
                    assert_eq!(y.bit(col), x.bit(bit + 1));
                }
            }
            // Same row space means the same codeword set, hence distance.
            assert_eq!(codewords(&g), codewords(&gp));
        }
    }
}
