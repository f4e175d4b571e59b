//! Set-theoretical solutions of the Yang-Baxter equation on finite sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::magma::{FiniteMagma, SetMap, Verdict};

/// `r(x, y) = (u, v)`, stored row-major at `x·n + y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetSolution {
    size: usize,
    r: Vec<(usize, usize)>,
}

impl SetSolution {
    pub fn new(rows: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let n = rows.len();
        let mut r = Vec::with_capacity(n * n);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {x} has {} entries, expected {n}", row.len())));
            }
            for (y, (u, v)) in row.into_iter().enumerate() {
                if let Some(bad) = [u, v].into_iter().find(|&c| c >= n) {
                    return Err(Error::EntryOutOfRange {
                        row: x,
                        col: y,
                        value: bad,
                        size: n,
                    });
                }
                r.push((u, v));
            }
        }
        Ok(SetSolution { size: n, r })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let r = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .map(|(x, y)| {
                let out = f(x, y);
                assert!(out.0 < size && out.1 < size, "solution entry out of range");
                out
            })
            .collect();
        SetSolution { size, r }
    }

    pub fn swap(size: usize) -> Self {
        SetSolution::from_fn(size, |x, y| (y, x))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.r[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<(usize, usize)>> {
        self.r.chunks(self.size.max(1)).map(<[_]>::to_vec).collect()
    }
}

/// `(Id×r)(r×Id)(Id×r) = (r×Id)(Id×r)(r×Id)` on all triples.
pub fn is_ybe_solution(s: &SetSolution) -> Verdict {
    let n = s.size;
    for x in 0..n {
        for y in 0..n {
            let (a, b) = s.apply(x, y);
            for z in 0..n {
                let (u1, v1) = s.apply(y, z);
                let (u2, v2) = s.apply(x, u1);
                let (u3, v3) = s.apply(v2, v1);
                let (c, d) = s.apply(b, z);
                let (e, f) = s.apply(a, c);
                if (u2, u3, v3) != (e, f, d) {
                    return Verdict::fail("braid", vec![x, y, z]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Bijectivity of `r` on `X × X`.
pub fn is_invertible(s: &SetSolution) -> bool {
    let n = s.size;
    let mut seen = vec![false; n * n];
    s.r.iter().all(|&(u, v)| !std::mem::replace(&mut seen[u * n + v], true))
}

/// `r(x, y) = (x⋄y, x)`, for magmas whose left translations are bijective.
pub fn braided_from_rack(q: &FiniteMagma) -> Result<SetSolution> {
    for x in 0..q.size() {
        if !q.left_translation(x).is_bijective() {
            return Err(Error::NotAPermutation(format!("left translation by {x}")));
        }
    }
    Ok(SetSolution::from_fn(q.size(), |x, y| (q.op(x, y), x)))
}

/// `r(Ax, Ay) = (A×Id) r(Ax, y)` on all pairs.
pub fn is_braided_averaging(s: &SetSolution, a: &SetMap) -> Result<Verdict> {
    if a.len() != s.size || a.codomain() != s.size {
        return Err(Error::SizeMismatch(format!(
            "map on {} points, solution on {}",
            a.len(),
            s.size
        )));
    }
    for x in 0..s.size {
        let ax = a.apply(x);
        for y in 0..s.size {
            let (u, v) = s.apply(ax, y);
            if s.apply(ax, a.apply(y)) != (a.apply(u), v) {
                return Ok(Verdict::fail("braided-averaging", vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}
