//! k-subset enumeration in lexicographic order, with ranking support so the
//! enumeration can be split into independent chunks.

use crate::par;

const CHUNK: u64 = 2048;

/// `C(n, k)`, saturating at `u64::MAX`.
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

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let with_next = binomial(n - next - 1, remaining);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// Advances `combo` to the lexicographic successor among k-subsets of
/// `0..n`. Returns false once the last subset has been passed.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lexicographic iterator over k-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_combination(&mut succ, self.n) {
            self.current = Some(succ);
        }
        Some(cur)
    }
}

/// Scores every k-subset of `0..n` and returns the one with the smallest
/// score, ties going to the lexicographically smallest subset. Chunks are
/// scored in parallel and reduced in index order, so the result does not
/// depend on the worker count.
pub(crate) fn argmin_combination<F>(n: usize, k: usize, score: F) -> Option<(f64, Vec<usize>)>
where
    F: Fn(&[usize]) -> f64 + Sync + Send,
{
    let total = binomial(n, k);
    if total == 0 {
        return None;
    }
    let chunks = total.div_ceil(CHUNK) as usize;
    let per_chunk = par::map_range(chunks, |c| {
        let start = c as u64 * CHUNK;
        let count = CHUNK.min(total - start);
        let mut combo = unrank(n, k, start);
        let mut best = (score(&combo), combo.clone());
        for _ in 1..count {
            next_combination(&mut combo, n);
            let v = score(&combo);
            // Lexicographic order within the chunk: first strict minimum wins.
            if v < best.0 {
                best = (v, combo.clone());
            }
        }
        best
    });
    per_chunk
        .into_iter()
        .reduce(|acc, cand| if cand.0 < acc.0 { cand } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn unrank_matches_iteration() {
        for n in 0..9 {
            for k in 0..=n {
                for (r, combo) in Combinations::new(n, k).enumerate() {
                    assert_eq!(unrank(n, k, r as u64), combo);
                }
                assert_eq!(Combinations::new(n, k).count() as u64, binomial(n, k));
            }
        }
    }

    #[test]
    fn iteration_is_lexicographic() {
        let all: Vec<_> = Combinations::new(6, 3).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn argmin_breaks_ties_lexicographically() {
        // Every subset scores the same: the first one must win.
        let (v, c) = argmin_combination(20, 3, |_| 1.0).unwrap();
        assert_eq!((v, c), (1.0, vec![0, 1, 2]));
        // Across chunk boundaries too.
        let (_, c) = argmin_combination(20, 5, |c| if c[0] >= 3 { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(c, vec![3, 4, 5, 6, 7]);
    }
}
