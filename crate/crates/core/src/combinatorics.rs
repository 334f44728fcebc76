//! Index combinatorics for alternating structures: permutation parity of
//! 1-based index tuples and complementary-pair enumeration (unshuffles).

/// Sorts a 1-based index tuple and reports the sign of the sorting
/// permutation; `None` when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut inversions = 0usize;
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            if indices[i] == indices[j] {
                return None;
            }
            if indices[i] > indices[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    Some((sorted, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// All strictly increasing `len`-tuples over `1..=max`, lexicographically.
/// `len = 0` yields the single empty tuple; `len > max` yields nothing.
pub fn increasing_tuples(max: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(max: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..=max {
            cur.push(i);
            rec(max, len, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(max, len, 1, &mut cur, &mut out);
    out
}

/// All `len`-tuples over `1..=max` with repetition, lexicographically.
pub fn all_tuples(max: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(max: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 1..=max {
            cur.push(i);
            rec(max, len, cur, out);
            cur.pop();
        }
    }
    rec(max, len, &mut cur, &mut out);
    out
}

/// Splits `(1, ..., total)` into complementary increasing tuples `(I, J)` with
/// `|I| = k`, lexicographic in `I`, together with the parity of the
/// concatenation `(I, J)` relative to `(1, ..., total)`.
pub fn unshuffles(total: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>, i8)> {
    increasing_tuples(total, k)
        .into_iter()
        .map(|i_part| {
            let j_part: Vec<usize> = (1..=total).filter(|x| !i_part.contains(x)).collect();
            // I and J are each sorted, so every inversion of the concatenation
            // is a pair (i in I, j in J) with i > j.
            let mut inversions = 0usize;
            for &i in &i_part {
                for &j in &j_part {
                    if i > j {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            (i_part, j_part, sign)
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Parity by explicit transposition count, as an independent oracle.
    fn parity_by_transpositions(perm: &[usize]) -> i8 {
        let mut p = perm.to_vec();
        let mut sign = 1i8;
        for i in 0..p.len() {
            while p[i] != i {
                let j = p[i];
                p.swap(i, j);
                sign = -sign;
            }
        }
        sign
    }

    #[test]
    fn sort_examples() {
        assert_eq!(sort_with_sign(&[2, 1, 3]), Some((vec![1, 2, 3], -1)));
        assert_eq!(sort_with_sign(&[3, 2, 1]), Some((vec![1, 2, 3], -1)));
        assert_eq!(sort_with_sign(&[1, 1, 2]), None);
        assert_eq!(sort_with_sign(&[]), Some((vec![], 1)));
    }

    #[test]
    fn sort_sign_matches_transposition_parity() {
        // All permutations of (1..=4) via repeated next-permutation walk.
        let mut perms = vec![vec![1usize, 2, 3, 4]];
        while let Some(next) = next_permutation(perms.last().unwrap()) {
            perms.push(next);
        }
        assert_eq!(perms.len(), 24);
        for perm in perms {
            let zero_based: Vec<usize> = perm.iter().map(|x| x - 1).collect();
            let (sorted, sign) = sort_with_sign(&perm).unwrap();
            assert_eq!(sorted, vec![1, 2, 3, 4]);
            assert_eq!(sign, parity_by_transpositions(&zero_based), "{:?}", perm);
        }
    }

    fn next_permutation(p: &[usize]) -> Option<Vec<usize>> {
        let mut p = p.to_vec();
        let n = p.len();
        let i = (0..n - 1).rev().find(|&i| p[i] < p[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
        Some(p)
    }

    #[test]
    fn unshuffle_examples() {
        assert_eq!(
            unshuffles(3, 2),
            vec![
                (vec![1, 2], vec![3], 1),
                (vec![1, 3], vec![2], -1),
                (vec![2, 3], vec![1], 1),
            ]
        );
        assert_eq!(
            unshuffles(2, 1),
            vec![(vec![1], vec![2], 1), (vec![2], vec![1], -1)]
        );
        assert_eq!(unshuffles(3, 0), vec![(vec![], vec![1, 2, 3], 1)]);
    }

    #[test]
    fn unshuffle_signs_match_sort_oracle() {
        for total in 0..=6 {
            for k in 0..=total {
                let all = unshuffles(total, k);
                assert_eq!(all.len(), binomial(total, k) as usize);
                for (i_part, j_part, sign) in all {
                    let concat: Vec<usize> =
                        i_part.iter().chain(j_part.iter()).copied().collect();
                    let (sorted, s) = sort_with_sign(&concat).unwrap();
                    assert_eq!(sorted, (1..=total).collect::<Vec<_>>());
                    assert_eq!(s, sign);
                }
            }
        }
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(increasing_tuples(2, 3).is_empty());
        assert_eq!(all_tuples(3, 2).len(), 9);
        assert_eq!(binomial(6, 3), 20);
    }
}
