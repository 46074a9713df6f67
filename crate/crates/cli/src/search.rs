//! Search for Nijenhuis operators by exact torsion checks over structured
//! endomorphism families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trilie_core::compatible::{compatible_nijenhuis_check, CompatiblePair};
use trilie_core::{Matrix, Scalar};

fn is_scalar_multiple_of_identity(m: &Matrix) -> bool {
    let d = m.rows();
    let diag = m.at(0, 0).clone();
    for r in 0..d {
        for c in 0..d {
            let expected = if r == c { diag.clone() } else { Scalar::zero() };
            if m.at(r, c) != &expected {
                return false;
            }
        }
    }
    true
}

/// Draws candidates from three families (diagonals with a repeated
/// leading eigenvalue, plain diagonals, dense small-integer matrices)
/// and keeps those whose torsion vanishes exactly for both brackets.
/// Scalar multiples of the identity are skipped as trivial.
pub fn find_nijenhuis_operators(
    pair: &CompatiblePair,
    seed: u64,
    count: usize,
    attempts: usize,
) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = pair.dim();
    let mut found: Vec<Matrix> = Vec::new();
    for _ in 0..attempts {
        if found.len() >= count {
            break;
        }
        let family = rng.gen_range(0..3u8);
        let candidate = match family {
            0 => {
                let mut diag: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=5)).collect();
                let j = rng.gen_range(1..d);
                diag[0] = diag[j];
                Matrix::from_fn(d, d, |r, c| {
                    if r == c {
                        Scalar::from_int(diag[r])
                    } else {
                        Scalar::zero()
                    }
                })
            }
            1 => Matrix::from_fn(d, d, |r, c| {
                if r == c {
                    Scalar::from_int(rng.gen_range(-3..=5))
                } else {
                    Scalar::zero()
                }
            }),
            _ => Matrix::from_fn(d, d, |_, _| Scalar::from_int(rng.gen_range(-2..=2))),
        };
        if is_scalar_multiple_of_identity(&candidate) || found.contains(&candidate) {
            continue;
        }
        let ok = compatible_nijenhuis_check(pair, &candidate)
            .map(|r| r.is_nijenhuis())
            .unwrap_or(false);
        if ok {
            found.push(candidate);
        }
    }
    found
}
