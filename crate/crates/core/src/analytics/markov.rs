/// Exact distribution of the number of resets in the first `n` games, by
/// dynamic programming over the two defender states. Game 1 starts at the
/// center. Entry `k` is `P(S_n = k)`.
pub fn markov_oracle(n: u64, p: f64) -> Vec<f64> {
    let len = n as usize / 2 + 2;
    let mut center = vec![0.0; len];
    let mut circle = vec![0.0; len];
    center[0] = 1.0;
    for _ in 0..n {
        let mut next_center = vec![0.0; len];
        let mut next_circle = vec![0.0; len];
        for k in 0..len {
            next_circle[k] += center[k] + p * circle[k];
            if circle[k] != 0.0 {
                next_center[k + 1] += (1.0 - p) * circle[k];
            }
        }
        center = next_center;
        circle = next_circle;
    }
    let mut pmf: Vec<f64> = center.iter().zip(&circle).map(|(a, b)| a + b).collect();
    while pmf.len() > 1 && pmf.last() == Some(&0.0) {
        pmf.pop();
    }
    pmf
}

/// `percentage(n)` for every `n = 1..=n_max`, by tracking the probability
/// that the defender starts game `n` on the capture circle.
pub fn expected_percentage_curve(n_max: u64, p: f64) -> Vec<f64> {
    let mut on_circle = 0.0;
    let mut resets = 0.0;
    (1..=n_max)
        .map(|n| {
            resets += on_circle * (1.0 - p);
            on_circle = 1.0 - on_circle * (1.0 - p);
            100.0 * (n as f64 - resets) / n as f64
        })
        .collect()
}

/// `P(S_n > m)` summed directly from the oracle pmf.
pub fn oracle_tail(pmf: &[f64], m: u64) -> f64 {
    pmf.iter().skip(m as usize + 1).sum()
}
