//! Exact linear arithmetic: one linear Diophantine equation over the
//! naturals, and Farkas certificates for infeasible systems `Ax = b, x >= 0`
//! over the rationals.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest smallest-coefficient for which the residue search is attempted.
pub const RESIDUE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("coefficient {0} is too large for the residue search")]
    TooLarge(BigInt),
}

/// Solves `sum a_i x_i = b` over `x in N^k`. Returns a witness, or `None`
/// when no natural solution exists.
pub fn solve_linear_nat(a: &[BigInt], b: &BigInt) -> Result<Option<Vec<BigInt>>, LinearError> {
    let k = a.len();
    let active: Vec<usize> = (0..k).filter(|&i| !a[i].is_zero()).collect();
    if active.is_empty() {
        return Ok(b.is_zero().then(|| vec![BigInt::zero(); k]));
    }
    let g = active.iter().fold(BigInt::zero(), |g, &i| g.gcd(&a[i]));
    if !b.is_multiple_of(&g) {
        return Ok(None);
    }
    let any_pos = active.iter().any(|&i| a[i].is_positive());
    let any_neg = active.iter().any(|&i| a[i].is_negative());
    if any_pos && any_neg {
        return Ok(Some(mixed_sign(a, b, &active, &g)));
    }
    if any_neg {
        let neg: Vec<BigInt> = a.iter().map(|x| -x).collect();
        return solve_linear_nat(&neg, &-b);
    }
    if b.is_negative() {
        return Ok(None);
    }
    same_sign(a, b, &active)
}

/// Integer combination `sum c_i a_i = g` over the active coefficients.
fn bezout(a: &[BigInt], active: &[usize]) -> (BigInt, Vec<BigInt>) {
    let mut c = vec![BigInt::zero(); a.len()];
    let mut g = BigInt::zero();
    for &i in active {
        if g.is_zero() {
            g = a[i].abs();
            c[i] = a[i].signum();
            continue;
        }
        let e = g.extended_gcd(&a[i]);
        for ci in c.iter_mut() {
            *ci *= &e.x;
        }
        c[i] = e.y.clone();
        g = e.gcd;
    }
    (g, c)
}

/// With coefficients of both signs every multiple of the gcd is reachable:
/// start from an integer solution and push negative coordinates up along
/// kernel vectors `|a_j| e_i + |a_i| e_j` pairing opposite signs.
fn mixed_sign(a: &[BigInt], b: &BigInt, active: &[usize], g: &BigInt) -> Vec<BigInt> {
    let (g2, c) = bezout(a, active);
    debug_assert_eq!(&g2, g);
    let scale = b / g;
    let mut x: Vec<BigInt> = c.into_iter().map(|ci| ci * &scale).collect();
    let pos = *active.iter().find(|&&i| a[i].is_positive()).unwrap();
    let neg = *active.iter().find(|&&i| a[i].is_negative()).unwrap();
    for &i in active {
        if !x[i].is_negative() {
            continue;
        }
        let j = if a[i].is_positive() { neg } else { pos };
        let (ai, aj) = (a[i].abs(), a[j].abs());
        let need = -x[i].clone();
        let steps = Integer::div_ceil(&need, &aj);
        x[i] += &steps * &aj;
        x[j] += &steps * &ai;
    }
    debug_assert!(x.iter().all(|v| !v.is_negative()));
    x
}

/// Positive coefficients: shortest paths over residues modulo the smallest
/// coefficient give the least reachable value in each residue class.
fn same_sign(a: &[BigInt], b: &BigInt, active: &[usize]) -> Result<Option<Vec<BigInt>>, LinearError> {
    let &base = active.iter().min_by_key(|&&i| &a[i]).unwrap();
    let m = a[base]
        .to_u64()
        .filter(|&m| m <= RESIDUE_LIMIT)
        .ok_or_else(|| LinearError::TooLarge(a[base].clone()))? as usize;
    let steps: Vec<(usize, usize, BigInt)> = active
        .iter()
        .filter(|&&i| i != base)
        .map(|&i| {
            let r = (&a[i] % m).to_usize().unwrap();
            (i, r, a[i].clone())
        })
        .collect();
    let mut dist: Vec<Option<BigInt>> = vec![None; m];
    let mut back: Vec<Option<(usize, usize)>> = vec![None; m];
    dist[0] = Some(BigInt::zero());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((BigInt::zero(), 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r].as_ref() != Some(&d) {
            continue;
        }
        for (i, step, val) in &steps {
            let nr = (r + step) % m;
            let nd = &d + val;
            if dist[nr].as_ref().is_none_or(|old| nd < *old) {
                dist[nr] = Some(nd.clone());
                back[nr] = Some((r, *i));
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let target = (b % m).to_usize().unwrap();
    let Some(d) = &dist[target] else {
        return Ok(None);
    };
    if d > b {
        return Ok(None);
    }
    let mut x = vec![BigInt::zero(); a.len()];
    let mut r = target;
    while let Some((prev, i)) = back[r] {
        x[i] += 1;
        r = prev;
    }
    x[base] = (b - d) / &a[base];
    Ok(Some(x))
}

/// Searches for `y` with `y^T A <= 0` and `y^T b > 0`, which proves that
/// `Ax = b` has no solution with `x >= 0`. Runs phase one of the simplex
/// method in exact arithmetic with Bland's rule; the certificate is read off
/// the reduced costs of the artificial columns and scaled to integers.
pub fn farkas_certificate(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    if m == 0 {
        return None;
    }
    let n = a[0].len();
    let width = n + m;
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut flip = vec![false; m];
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        flip[i] = b[i].is_negative();
        let s = if flip[i] { -BigInt::one() } else { BigInt::one() };
        let mut row: Vec<BigRational> = a[i].iter().map(|x| q(&(x * &s))).collect();
        row.extend((0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
        t.push(row);
        rhs.push(q(&(&b[i] * &s)));
    }
    let mut basis: Vec<usize> = (n..width).collect();
    // reduced costs for the objective "sum of artificials"
    let mut cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if j >= n {
                BigRational::zero()
            } else {
                -t.iter().map(|row| row[j].clone()).sum::<BigRational>()
            }
        })
        .collect();
    let mut value: BigRational = -rhs.iter().cloned().sum::<BigRational>();
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &rhs[i] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero
        let (r, _) = leave?;
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        rhs[r] = &rhs[r] / &piv;
        let prow = t[r].clone();
        let prhs = rhs[r].clone();
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    t[i][j] = &t[i][j] - &f * &prow[j];
                }
                rhs[i] = &rhs[i] - &f * &prhs;
            }
        }
        let f = cost[enter].clone();
        for j in 0..width {
            cost[j] = &cost[j] - &f * &prow[j];
        }
        value = &value - &f * &prhs;
        basis[r] = enter;
    }
    if !value.is_negative() {
        // optimum zero: feasible over the nonnegative rationals
        return None;
    }
    let y: Vec<BigRational> = (0..m)
        .map(|i| {
            let yi = BigRational::one() - &cost[n + i];
            if flip[i] {
                -yi
            } else {
                yi
            }
        })
        .collect();
    let denom = y.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let y: Vec<BigInt> = y.iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect();
    verify_farkas(a, b, &y).then_some(y)
}

/// Checks `y^T A <= 0` componentwise and `y^T b > 0`.
pub fn verify_farkas(a: &[Vec<BigInt>], b: &[BigInt], y: &[BigInt]) -> bool {
    if y.len() != a.len() || b.len() != a.len() {
        return false;
    }
    let n = a.first().map_or(0, |r| r.len());
    let cols_ok = (0..n).all(|j| {
        let s: BigInt = (0..a.len()).map(|i| &y[i] * &a[i][j]).sum();
        !s.is_positive()
    });
    let yb: BigInt = y.iter().zip(b).map(|(u, v)| u * v).sum();
    cols_ok && yb.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn brute(a: &[i64], b: i64, bound: i64) -> bool {
        let k = a.len();
        let mut x = vec![0i64; k];
        loop {
            if a.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == b {
                return true;
            }
            let mut i = 0;
            loop {
                if i == k {
                    return false;
                }
                x[i] += 1;
                if x[i] <= bound {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn linear_examples() {
        assert!(solve_linear_nat(&v(&[1, 2]), &BigInt::from(5)).unwrap().is_some());
        assert!(solve_linear_nat(&v(&[2]), &BigInt::from(3)).unwrap().is_none());
        assert!(solve_linear_nat(&v(&[2]), &BigInt::from(-4)).unwrap().is_none());
        assert!(solve_linear_nat(&v(&[-1]), &BigInt::from(-4)).unwrap().is_some());
        assert!(solve_linear_nat(&v(&[3, 5]), &BigInt::from(7)).unwrap().is_none());
        assert!(solve_linear_nat(&v(&[3, -5]), &BigInt::from(7)).unwrap().is_some());
        assert!(solve_linear_nat(&v(&[0, 0]), &BigInt::from(0)).unwrap().is_some());
        assert!(solve_linear_nat(&v(&[]), &BigInt::from(1)).unwrap().is_none());
    }

    #[test]
    fn linear_matches_brute_force() {
        // with |a_i| <= 4 and |b| <= 12, any solution has a witness below 40
        let coeffs = [-4, -3, -2, -1, 0, 1, 2, 3, 4];
        for &a1 in &coeffs {
            for &a2 in &coeffs {
                for b in -12..=12 {
                    let a = [a1, a2];
                    let got = solve_linear_nat(&v(&a), &BigInt::from(b)).unwrap();
                    if let Some(x) = &got {
                        let s: BigInt = x.iter().zip(v(&a)).map(|(p, q)| p * q).sum();
                        assert_eq!(s, BigInt::from(b));
                        assert!(x.iter().all(|t| !t.is_negative()));
                    }
                    assert_eq!(got.is_some(), brute(&a, b, 40), "{a:?} {b}");
                }
            }
        }
    }

    #[test]
    fn farkas_examples() {
        // x1 + x2 = -1 has no nonnegative solution
        let a = vec![v(&[1, 1])];
        let y = farkas_certificate(&a, &v(&[-1])).unwrap();
        assert!(verify_farkas(&a, &v(&[-1]), &y));
        // x1 = 1, x1 = 2
        let a = vec![v(&[1]), v(&[1])];
        assert!(farkas_certificate(&a, &v(&[1, 2])).is_some());
        // feasible system
        let a = vec![v(&[1, -1]), v(&[0, 1])];
        assert!(farkas_certificate(&a, &v(&[3, 2])).is_none());
        // x1 - x2 = 1, x2 - x1 = 1
        let a = vec![v(&[1, -1]), v(&[-1, 1])];
        assert!(farkas_certificate(&a, &v(&[1, 1])).is_some());
    }
}
