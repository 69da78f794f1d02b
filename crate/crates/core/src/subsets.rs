//! Index subsets `I ⊆ [n]` with `|I| ∈ {3, 4}`.

use itertools::Itertools;

/// All sorted subsets of `{1..n}` of size 3, then of size 4.
pub fn subsets_34(n: usize) -> Vec<Vec<usize>> {
    [3, 4]
        .iter()
        .flat_map(|&k| (1..=n).combinations(k))
        .collect()
}

/// Applies the transposition `(k k+1)` to every element and re-sorts.
pub fn swap_adjacent(subset: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = subset
        .iter()
        .map(|&m| match m {
            m if m == k => k + 1,
            m if m == k + 1 => k,
            m => m,
        })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(subsets_34(3), vec![vec![1, 2, 3]]);
        assert_eq!(subsets_34(4).len(), 4 + 1);
        assert_eq!(subsets_34(6).len(), 20 + 15);
    }

    #[test]
    fn swapping() {
        assert_eq!(swap_adjacent(&[1, 3, 4], 2), vec![1, 2, 4]);
        assert_eq!(swap_adjacent(&[1, 2, 4], 1), vec![1, 2, 4]);
    }
}
