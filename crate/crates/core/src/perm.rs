//! Permutation signs.

/// Signature of a sequence of distinct labels relative to its increasing
/// rearrangement, or `None` if a label repeats.
pub fn sequence_sign(seq: &[usize]) -> Option<i8> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&k| seq[k]);
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return None;
    }
    Some(cycle_sign(&order))
}

/// Signature of a permutation of `0..len` given in one-line notation.
pub fn cycle_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether `seq` is a permutation of `1..=n`.
pub fn is_permutation_of_range(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    seq.iter().all(|&v| {
        (1..=n).contains(&v) && !std::mem::replace(&mut seen[v], true)
    })
}
