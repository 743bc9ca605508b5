//! k-subsets of `0..n` in lexicographic order, addressable by rank so that
//! contiguous rank ranges can be handed to separate workers.

/// `C(n, k)`, or `None` if it does not fit in a `u64`.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let mut v = next;
        loop {
            let rest = binomial(n - v - 1, k - slot - 1).unwrap_or(u64::MAX);
            if rank < rest {
                break;
            }
            rank -= rest;
            v += 1;
        }
        out.push(v);
        next = v + 1;
    }
    out
}

/// Advances `c` to the next k-subset of `0..n`; false after the last one.
pub fn advance(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}
