use crate::words::Letter;

/// Longest common extension of every pair of cyclic positions: calls
/// `f(x, y, l)` for `x < |c1|`, `y < |c2|`, where `l` is the length of the
/// longest common prefix of the two rotations read periodically, capped at
/// `cap`.
pub(crate) fn for_each_lce(c1: &[Letter], c2: &[Letter], cap: usize, mut f: impl FnMut(usize, usize, usize)) {
    let (n1, n2) = (c1.len(), c2.len());
    if n1 == 0 || n2 == 0 {
        return;
    }
    let len1 = n1 + cap;
    let len2 = n2 + cap;
    let s2: Vec<Letter> = (0..len2).map(|j| c2[j % n2]).collect();
    let mut next = vec![0usize; len2 + 1];
    let mut cur = vec![0usize; len2 + 1];
    for i in (0..len1).rev() {
        let a = c1[i % n1];
        for j in (0..len2).rev() {
            cur[j] = if a == s2[j] { next[j + 1] + 1 } else { 0 };
        }
        if i < n1 {
            for j in 0..n2 {
                f(i, j, cur[j].min(cap));
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn lce_reads_periodically() {
        let a = w("ab");
        let b = w("abab");
        let mut max = 0;
        for_each_lce(a.letters(), b.letters(), 2, |_, _, l| max = max.max(l));
        assert_eq!(max, 2);
        let mut at = Vec::new();
        for_each_lce(w("aab").letters(), w("ab").letters(), 3, |x, y, l| at.push((x, y, l)));
        assert!(at.contains(&(1, 0, 3)));
        assert!(at.contains(&(0, 0, 1)));
        assert!(at.contains(&(2, 0, 0)));
    }
}
