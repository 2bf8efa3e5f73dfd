use std::ops::ControlFlow;

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Visits every increasing `k`-combination of `0..n` whose first element is
/// `first`, in lexicographic order. Stops early on `ControlFlow::Break`.
pub fn for_each_with_first<B>(
    n: usize,
    k: usize,
    first: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if k == 0 || first >= n || n - first < k {
        return ControlFlow::Continue(());
    }
    let mut combo: Vec<usize> = (first..first + k).collect();
    loop {
        f(&combo)?;
        // Advance positions 1..k only; position 0 stays pinned.
        let mut i = k;
        loop {
            if i <= 1 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if combo[i] < n - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}
