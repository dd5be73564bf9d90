//! Minimal solutions of `A z = c` over `N` by the completion procedure of
//! Contejean and Devie, run on the homogenized system `A z - c z0 = 0`
//! with `z0 ≤ 1`.

use std::collections::HashSet;

use super::CocfError;

/// Default bound on the number of candidate vectors examined.
pub const DEFAULT_SOLVER_LIMIT: usize = 2_000_000;

/// Solutions of `A z = c` over `N` are exactly `m + Σ basis*` for `m` in
/// `minimal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatSolutions {
    pub minimal: Vec<Vec<u64>>,
    pub basis: Vec<Vec<u64>>,
}

/// `a` has one row per equation and `n` columns.
pub fn solve_nat(a: &[Vec<i64>], c: &[i64], n: usize, limit: usize) -> Result<NatSolutions, CocfError> {
    run(a, c, n, limit, false)
}

/// Whether `A z = c` has a solution over `N`.
pub fn feasible_nat(a: &[Vec<i64>], c: &[i64], n: usize, limit: usize) -> Result<bool, CocfError> {
    Ok(!run(a, c, n, limit, true)?.minimal.is_empty())
}

fn run(a: &[Vec<i64>], c: &[i64], n: usize, limit: usize, first_only: bool) -> Result<NatSolutions, CocfError> {
    debug_assert!(a.iter().all(|r| r.len() == n) && a.len() == c.len());
    // columns of the homogenized matrix; index n is z0
    let cols: Vec<Vec<i64>> = (0..=n)
        .map(|j| a.iter().zip(c).map(|(row, ci)| if j < n { row[j] } else { -ci }).collect())
        .collect();
    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<i64>)> = (0..=n)
        .map(|j| {
            let mut z = vec![0u64; n + 1];
            z[j] = 1;
            (z, cols[j].clone())
        })
        .collect();
    let mut examined = 0usize;
    while !frontier.is_empty() {
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        let mut residuals = Vec::new();
        for (z, r) in &frontier {
            if r.iter().all(|&x| x == 0) {
                found.push(z.clone());
                if first_only && z[n] == 1 {
                    return Ok(split(found, n));
                }
            } else {
                residuals.push((z, r));
            }
        }
        for (z, r) in residuals {
            for (j, col) in cols.iter().enumerate() {
                let dot: i64 = r.iter().zip(col).map(|(x, y)| x * y).sum();
                if dot >= 0 {
                    continue;
                }
                let mut y = z.clone();
                y[j] += 1;
                if y[n] > 1 || found.iter().any(|b| b.iter().zip(&y).all(|(p, q)| p <= q)) {
                    continue;
                }
                next.insert(y);
            }
        }
        examined += next.len();
        if examined > limit {
            return Err(CocfError::SolverLimit(limit));
        }
        frontier = next
            .into_iter()
            .map(|z| {
                let r = (0..a.len())
                    .map(|i| z.iter().zip(&cols).map(|(&zj, col)| zj as i64 * col[i]).sum())
                    .collect();
                (z, r)
            })
            .collect();
    }
    Ok(split(found, n))
}

fn split(found: Vec<Vec<u64>>, n: usize) -> NatSolutions {
    let mut minimal = Vec::new();
    let mut basis = Vec::new();
    for mut z in found {
        let z0 = z.pop().expect("homogenizing coordinate");
        debug_assert_eq!(z.len(), n);
        if z0 == 1 {
            minimal.push(z);
        } else {
            basis.push(z);
        }
    }
    minimal.sort();
    basis.sort();
    NatSolutions { minimal, basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocf::semilinear::{box_points, LinearSet, SemilinearSet};

    fn solutions_in_box(a: &[Vec<i64>], c: &[i64], n: usize, bound: u64) -> Vec<Vec<u64>> {
        box_points(n, bound)
            .into_iter()
            .filter(|z| a.iter().zip(c).all(|(row, ci)| row.iter().zip(z).map(|(x, y)| x * *y as i64).sum::<i64>() == *ci))
            .collect()
    }

    fn check(a: &[Vec<i64>], c: &[i64], n: usize, bound: u64) -> NatSolutions {
        let s = solve_nat(a, c, n, DEFAULT_SOLVER_LIMIT).unwrap();
        let set = SemilinearSet::new(
            n,
            s.minimal.iter().map(|m| LinearSet::new(m.clone(), s.basis.clone())).collect(),
        )
        .unwrap();
        let brute = solutions_in_box(a, c, n, bound);
        assert_eq!(set.members_in_box(bound).into_iter().collect::<Vec<_>>(), brute);
        assert_eq!(feasible_nat(a, c, n, DEFAULT_SOLVER_LIMIT).unwrap(), !brute.is_empty() || !s.minimal.is_empty());
        s
    }

    #[test]
    fn classic_homogeneous() {
        // x + y = z + w
        let s = check(&[vec![1, 1, -1, -1]], &[0], 4, 4);
        assert_eq!(s.basis.len(), 4);
        assert_eq!(s.minimal, vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn inhomogeneous() {
        let s = check(&[vec![3, -2]], &[1], 2, 12);
        assert_eq!(s.minimal, vec![vec![1, 1]]);
        assert_eq!(s.basis, vec![vec![2, 3]]);
        check(&[vec![2, 4]], &[3], 2, 6);
        check(&[vec![1, 1, 0], vec![0, 1, -2]], &[5, 1], 3, 8);
        check(&[vec![1, -3, 2]], &[-1], 3, 7);
    }

    #[test]
    fn degenerate_shapes() {
        let s = solve_nat(&[], &[], 0, 10).unwrap();
        assert_eq!(s.minimal, vec![Vec::<u64>::new()]);
        let s = solve_nat(&[vec![]], &[2], 0, 10).unwrap();
        assert!(s.minimal.is_empty());
        check(&[], &[], 2, 3);
    }

    #[test]
    fn limit_reported() {
        assert_eq!(solve_nat(&[vec![97, -89]], &[1], 2, 10), Err(CocfError::SolverLimit(10)));
    }
}
