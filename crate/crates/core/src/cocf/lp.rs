//! Exact two-phase simplex with Bland's rule, used to prune and reduce
//! constraint cells.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub(crate) type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Lp {
    Infeasible,
    Unbounded,
    Optimal(Q),
}

/// Minimizes `obj · z` over `A z = b, z ≥ 0`.
pub(crate) fn minimize(obj: &[Q], a: &[Vec<Q>], b: &[Q]) -> Lp {
    let m = a.len();
    let n = obj.len();
    // columns: z (n), artificials (m), rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i] < Q::zero();
        let sgn = if flip { -Q::one() } else { Q::one() };
        let mut row: Vec<Q> = a[i].iter().map(|x| x * sgn).collect();
        row.extend((0..m).map(|j| if j == i { Q::one() } else { Q::zero() }));
        row.push(b[i] * sgn);
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // phase one: minimize the sum of artificials
    let phase1: Vec<Q> = (0..n + m).map(|j| if j >= n { Q::one() } else { Q::zero() }).collect();
    if run(&mut t, &mut basis, &phase1, n + m, width).is_none() {
        unreachable!("phase one is bounded");
    }
    let infeas: Q = basis
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= n)
        .map(|(i, _)| t[i][width - 1])
        .sum();
    if infeas > Q::zero() {
        return Lp::Infeasible;
    }
    // drive artificials out of the basis or drop redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut full = obj.to_vec();
    full.extend((0..m).map(|_| Q::zero()));
    match run(&mut t, &mut basis, &full, n, width) {
        None => Lp::Unbounded,
        Some(v) => Lp::Optimal(v),
    }
}

fn pivot(t: &mut [Vec<Q>], basis: &mut [usize], r: usize, c: usize) {
    let p = t[r][c];
    for x in t[r].iter_mut() {
        *x /= p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= f * y;
            }
        }
    }
    basis[r] = c;
}

/// Simplex on columns `< allowed`; `None` when unbounded.
fn run(t: &mut [Vec<Q>], basis: &mut [usize], cost: &[Q], allowed: usize, width: usize) -> Option<Q> {
    loop {
        // reduced costs
        let reduced = |j: usize, t: &[Vec<Q>]| -> Q {
            let mut r = cost[j];
            for (i, &bv) in basis.iter().enumerate() {
                r -= cost[bv] * t[i][j];
            }
            r
        };
        let Some(enter) = (0..allowed).find(|&j| !basis.contains(&j) && reduced(j, t) < Q::zero()) else {
            let v = basis.iter().enumerate().map(|(i, &bv)| cost[bv] * t[i][width - 1]).sum();
            return Some(v);
        };
        let mut leave: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > Q::zero() {
                let ratio = row[width - 1] / row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        pivot(t, basis, r, enter);
    }
}

/// Minimizes `obj · x` over `x ≥ 0` with `rows[i] · x ≥ rhs[i]`.
pub(crate) fn minimize_ge(obj: &[i64], rows: &[(&[i64], i64)], n: usize) -> Lp {
    let m = rows.len();
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, (coeffs, c)) in rows.iter().enumerate() {
        let mut row: Vec<Q> = coeffs.iter().map(|&x| Q::from_integer(x as i128)).collect();
        row.extend((0..m).map(|j| if j == i { -Q::one() } else { Q::zero() }));
        a.push(row);
        b.push(Q::from_integer(*c as i128));
    }
    let mut full: Vec<Q> = obj.iter().map(|&x| Q::from_integer(x as i128)).collect();
    full.extend((0..m).map(|_| Q::zero()));
    debug_assert_eq!(obj.len(), n);
    minimize(&full, &a, &b)
}
