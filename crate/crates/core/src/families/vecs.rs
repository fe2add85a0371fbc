//! Small helpers for exponent vectors.

use crate::error::{Error, Result};

/// All vectors in `N^dim` with coordinate sum at most `bound`, ordered by
/// sum and then lexicographically.
pub(crate) fn graded(dim: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for s in 0..=bound {
        let mut cur = Vec::with_capacity(dim);
        compositions(dim, s, &mut cur, &mut out);
    }
    out
}

fn compositions(dim: usize, s: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if cur.len() + 1 == dim {
        cur.push(s);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if dim == 0 {
        if s == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for first in 0..=s {
        cur.push(first);
        compositions(dim, s - first, cur, out);
        cur.pop();
    }
}

/// Number of vectors below `upper`, or `None` on overflow.
pub(crate) fn box_size(upper: &[u64]) -> Option<u64> {
    upper
        .iter()
        .try_fold(1u64, |acc, &u| acc.checked_mul(u.checked_add(1)?))
}

/// All vectors `v <= upper`, lexicographic.
pub(crate) fn box_vectors(upper: &[u64], limit: u64) -> Result<Vec<Vec<u64>>> {
    let size = box_size(upper).ok_or(Error::Overflow)?;
    if size > limit {
        return Err(Error::TooLarge(format!(
            "{size} divisor candidates exceed the budget of {limit}"
        )));
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = vec![0u64; upper.len()];
    loop {
        out.push(cur.clone());
        let mut i = upper.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < upper[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

pub(crate) fn le(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn add(a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn sub(b: &[u64], a: &[u64]) -> Option<Vec<u64>> {
    b.iter().zip(a).map(|(y, x)| y.checked_sub(*x)).collect()
}

pub(crate) fn norm(a: &[u64]) -> u64 {
    a.iter().sum()
}

/// Parse `(1,2,3)`, `[1,2,3]` or `1,2,3`.
pub(crate) fn parse_tuple(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .enumerate()
        .map(|(i, p)| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| Error::parse(i, format!("`{}`: {e}", p.trim())))
        })
        .collect()
}

/// Rank over `Q` by fraction-free elimination.
pub(crate) fn rank(vs: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vs
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let (a, b) = (rows[r][c], rows[i][c]);
            let pivot = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot) {
                *x = *x * a - y * b;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let v = graded(2, 2);
        let want: Vec<Vec<u64>> = vec![
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![0, 2],
            vec![1, 1],
            vec![2, 0],
        ];
        assert_eq!(v, want);
        assert_eq!(graded(0, 3), vec![Vec::<u64>::new()]);
        assert_eq!(graded(3, 4).len(), 35);
    }

    #[test]
    fn box_enumeration() {
        let v = box_vectors(&[1, 2], 100).unwrap();
        assert_eq!(v.len(), 6);
        assert_eq!(v[1], vec![0, 1]);
        assert!(box_vectors(&[10, 10], 50).is_err());
    }

    #[test]
    fn tuples() {
        assert_eq!(parse_tuple("(1, 2)").unwrap(), vec![1, 2]);
        assert_eq!(parse_tuple("[3]").unwrap(), vec![3]);
        assert_eq!(parse_tuple("4,5").unwrap(), vec![4, 5]);
        assert!(parse_tuple("(a)").is_err());
    }

    #[test]
    fn rank_over_q() {
        assert_eq!(rank(&[vec![1, 1, 0], vec![1, 0, 1]]), 2);
        assert_eq!(rank(&[vec![2, 0], vec![3, 0]]), 1);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4], vec![0, 1]]), 2);
    }
}
