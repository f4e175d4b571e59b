//! Small helpers for permutations stored as image arrays.

pub fn is_permutation(image: &[usize]) -> bool {
    let n = image.len();
    let mut seen = vec![false; n];
    for &v in image {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Inverse of a permutation. The caller guarantees `image` is a permutation.
pub fn inverse(image: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; image.len()];
    for (i, &v) in image.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// `(f ∘ g)(x) = f(g(x))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}
