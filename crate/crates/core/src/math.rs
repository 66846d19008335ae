//! Small combinatorial helpers.

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Fewest monochromatic triangles over all 2-colorings of K_n (Goodman):
/// `C(n,3) - floor(n/2 * floor((n-1)^2 / 4))`.
pub fn goodman_min_triangles(n: u64) -> u64 {
    let pairs = n.saturating_sub(1).pow(2) / 4;
    // floor(n/2 * pairs) without leaving the integers.
    binomial(n, 3) - (n * pairs) / 2
}
