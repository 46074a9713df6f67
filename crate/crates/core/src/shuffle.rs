//! Enumeration of (p,q)-shuffles with their signs.
//!
//! A (p,q)-shuffle is a permutation of {0,..,p+q-1} that is increasing on
//! its first p and last q positions. Shuffles are generated rather than
//! hard-coded, in lexicographic order of the first block, and the sign is
//! the permutation parity computed from the inversion count between the
//! two blocks.

/// One shuffle: the two increasing blocks and the parity sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub sign: i8,
}

/// All (p,q)-shuffles of {0,..,p+q-1}.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    let mut out = Vec::new();
    let mut first: Vec<usize> = (0..p).collect();
    loop {
        let in_first = {
            let mut mask = vec![false; n];
            for &i in &first {
                mask[i] = true;
            }
            mask
        };
        let second: Vec<usize> = (0..n).filter(|&i| !in_first[i]).collect();
        let mut inversions = 0usize;
        for &a in &first {
            for &b in &second {
                if a > b {
                    inversions += 1;
                }
            }
        }
        out.push(Shuffle {
            first: first.clone(),
            second,
            sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
        });
        // next p-combination of {0,..,n-1} in lex order
        if p == 0 {
            break;
        }
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if first[i] != i + n - p {
                break;
            }
        }
        if first[i] == i + n - p {
            break;
        }
        first[i] += 1;
        for j in i + 1..p {
            first[j] = first[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_binomial() {
        assert_eq!(shuffles(0, 0).len(), 1);
        assert_eq!(shuffles(0, 3).len(), 1);
        assert_eq!(shuffles(2, 0).len(), 1);
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(3, 1).len(), 4);
    }

    #[test]
    fn blocks_are_increasing_and_partition() {
        for sh in shuffles(2, 3) {
            assert!(sh.first.windows(2).all(|w| w[0] < w[1]));
            assert!(sh.second.windows(2).all(|w| w[0] < w[1]));
            let mut all: Vec<usize> = sh.first.iter().chain(&sh.second).copied().collect();
            all.sort_unstable();
            assert_eq!(all, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn signs_match_brute_force_parity() {
        for sh in shuffles(2, 2) {
            let perm: Vec<usize> = sh.first.iter().chain(&sh.second).copied().collect();
            let mut inv = 0;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            assert_eq!(sh.sign, if inv % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn transposition_shuffle_is_odd() {
        let sh = shuffles(1, 1);
        assert_eq!(sh[0].sign, 1);
        assert_eq!(sh[1].sign, -1);
        assert_eq!(sh[1].first, vec![1]);
    }
}
