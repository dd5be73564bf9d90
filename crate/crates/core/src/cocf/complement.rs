//! Complement of a semilinear set in `N^k`. Components are split into
//! linear sets with independent periods, each of those is described by
//! linear equalities, inequalities and congruences, the negations are
//! multiplied out into conjunctions ("cells"), and every satisfiable cell
//! is turned back into linear sets through minimal Diophantine solutions.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::hilbert::{feasible_nat, solve_nat};
use super::lp::{minimize_ge, Lp};
use super::semilinear::{box_points, LinearSet, SemilinearSet, Vector};
use super::CocfError;

type Q = Ratio<i128>;

/// Constraint on `x ∈ N^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `coeffs · x = rhs`
    Eq { coeffs: Vec<i64>, rhs: i64 },
    /// `coeffs · x ≥ rhs`
    Ge { coeffs: Vec<i64>, rhs: i64 },
    /// `coeffs · x ≡ rhs (mod modulus)`
    Cong { coeffs: Vec<i64>, rhs: i64, modulus: i64 },
}

enum Normal {
    Always,
    Never,
    Atom(Atom),
}

impl Atom {
    pub fn holds(&self, x: &[u64]) -> bool {
        let dot = |c: &[i64]| c.iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>();
        match self {
            Atom::Eq { coeffs, rhs } => dot(coeffs) == *rhs as i128,
            Atom::Ge { coeffs, rhs } => dot(coeffs) >= *rhs as i128,
            Atom::Cong { coeffs, rhs, modulus } => (dot(coeffs) - *rhs as i128).mod_floor(&(*modulus as i128)) == 0,
        }
    }

    fn normalize(self) -> Normal {
        match self {
            Atom::Ge { coeffs, rhs } => {
                if coeffs.iter().all(|&c| c >= 0) && rhs <= 0 {
                    return Normal::Always;
                }
                if coeffs.iter().all(|&c| c <= 0) && rhs > 0 {
                    return Normal::Never;
                }
                let g = coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
                Normal::Atom(Atom::Ge {
                    coeffs: coeffs.iter().map(|c| c / g).collect(),
                    rhs: Integer::div_ceil(&rhs, &g),
                })
            }
            Atom::Cong { coeffs, rhs, modulus } => {
                let coeffs: Vec<i64> = coeffs.iter().map(|c| c.mod_floor(&modulus)).collect();
                let rhs = rhs.mod_floor(&modulus);
                let g = coeffs.iter().fold(modulus, |g, &c| g.gcd(&c));
                if rhs % g != 0 {
                    return Normal::Never;
                }
                if g == modulus {
                    return Normal::Always;
                }
                let m = modulus / g;
                let coeffs: Vec<i64> = coeffs.iter().map(|c| c / g).collect();
                let rhs = rhs / g;
                // scale by the unit giving the smallest coefficient vector
                let (coeffs, rhs) = (1..m)
                    .filter(|u| u.gcd(&m) == 1)
                    .map(|u| (coeffs.iter().map(|c| (c * u).mod_floor(&m)).collect::<Vec<_>>(), (rhs * u).mod_floor(&m)))
                    .min()
                    .unwrap_or((coeffs, rhs));
                Normal::Atom(Atom::Cong { coeffs, rhs, modulus: m })
            }
            eq @ Atom::Eq { .. } => Normal::Atom(eq),
        }
    }

    /// Alternatives whose disjunction is the negation.
    fn negate(&self) -> Vec<Atom> {
        let neg = |c: &[i64]| c.iter().map(|x| -x).collect::<Vec<_>>();
        match self {
            Atom::Eq { coeffs, rhs } => vec![
                Atom::Ge { coeffs: coeffs.clone(), rhs: rhs + 1 },
                Atom::Ge { coeffs: neg(coeffs), rhs: -rhs + 1 },
            ],
            Atom::Ge { coeffs, rhs } => vec![Atom::Ge { coeffs: neg(coeffs), rhs: -rhs + 1 }],
            Atom::Cong { coeffs, rhs, modulus } => (0..*modulus)
                .filter(|r| r != rhs)
                .map(|r| Atom::Cong { coeffs: coeffs.clone(), rhs: r, modulus: *modulus })
                .collect(),
        }
    }
}

fn q(x: i64) -> Q {
    Q::from_integer(x as i128)
}

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let lead = m[r][c];
        for x in m[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a family of vectors.
fn rank(vs: &[&Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Q>> = vs.iter().map(|v| v.iter().map(|&x| q(x as i64)).collect()).collect();
    echelon(&mut m).len()
}

/// Primitive integer relation among the vectors of a circuit.
fn circuit_relation(vs: &[&Vector]) -> Vec<i64> {
    let k = vs[0].len();
    // columns are the vectors
    let mut m: Vec<Vec<Q>> = (0..k).map(|i| vs.iter().map(|v| q(v[i] as i64)).collect()).collect();
    let pivots = echelon(&mut m);
    let free = (0..vs.len()).find(|c| !pivots.contains(c)).expect("dependent family");
    let mut lambda = vec![Q::zero(); vs.len()];
    lambda[free] = Q::one();
    for (row, &pc) in pivots.iter().enumerate() {
        lambda[pc] = -m[row][free];
    }
    let den = lambda.iter().fold(1i128, |l, x| l.lcm(x.denom()));
    let ints: Vec<i128> = lambda.iter().map(|x| (x * Q::from_integer(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |g, x| g.gcd(x));
    ints.iter().map(|x| (x / g) as i64).collect()
}

/// Linear sets with linearly independent periods covering `l` exactly.
pub fn simple_parts(l: &LinearSet) -> Vec<LinearSet> {
    let ps: Vec<&Vector> = l.periods.iter().collect();
    if rank(&ps) == ps.len() {
        return vec![l.clone()];
    }
    // shrink to a minimal dependent subfamily
    let mut idx: Vec<usize> = (0..ps.len()).collect();
    let mut i = 0;
    while i < idx.len() {
        let mut without = idx.clone();
        without.remove(i);
        let sub: Vec<&Vector> = without.iter().map(|&j| ps[j]).collect();
        if rank(&sub) < sub.len() {
            idx = without;
        } else {
            i += 1;
        }
    }
    let rel = circuit_relation(&idx.iter().map(|&j| ps[j]).collect::<Vec<_>>());
    // branch on the side with fewer pieces
    let pos: i64 = rel.iter().filter(|&&x| x > 0).sum();
    let neg: i64 = -rel.iter().filter(|&&x| x < 0).sum::<i64>();
    let sign = if pos <= neg { 1 } else { -1 };
    let mut out = Vec::new();
    for (t, &j) in idx.iter().enumerate() {
        let lam = rel[t] * sign;
        if lam <= 0 {
            continue;
        }
        let p = ps[j];
        let rest: Vec<Vector> = ps.iter().enumerate().filter(|(x, _)| *x != j).map(|(_, v)| (*v).clone()).collect();
        for c in 0..lam as u64 {
            let base = l.base.iter().zip(p).map(|(b, x)| b + c * x).collect();
            out.extend(simple_parts(&LinearSet::new(base, rest.clone())));
        }
    }
    out
}

/// Exact description of a linear set with independent periods.
pub fn constraints(l: &LinearSet) -> Vec<Atom> {
    let k = l.dim();
    let r = l.periods.len();
    // choose r independent coordinates
    let mut rows: Vec<usize> = Vec::new();
    for i in 0..k {
        let mut cand = rows.clone();
        cand.push(i);
        let mut m: Vec<Vec<Q>> = cand.iter().map(|&j| l.periods.iter().map(|p| q(p[j] as i64)).collect()).collect();
        if echelon(&mut m).len() == cand.len() {
            rows = cand;
        }
        if rows.len() == r {
            break;
        }
    }
    assert_eq!(rows.len(), r, "periods must be independent");
    // R = P[rows], inverse and determinant
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(t, &j)| {
            let mut row: Vec<Q> = l.periods.iter().map(|p| q(p[j] as i64)).collect();
            row.extend((0..r).map(|u| if u == t { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let mut det = Q::one();
    {
        // determinant by elimination on a copy
        let mut m: Vec<Vec<Q>> = aug.iter().map(|row| row[..r].to_vec()).collect();
        for c in 0..r {
            let p = (c..r).find(|&i| !m[i][c].is_zero()).expect("invertible");
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for i in c + 1..r {
                let f = m[i][c] / m[c][c];
                for j in c..r {
                    let v = m[c][j];
                    m[i][j] -= f * v;
                }
            }
        }
    }
    echelon(&mut aug);
    let d = det.to_integer();
    // adj = det * R^{-1}, an integer matrix
    let adj: Vec<Vec<i128>> = aug.iter().map(|row| row[r..].iter().map(|x| (x * det).to_integer()).collect()).collect();
    let dot_b = |coeffs: &[i128]| -> i128 { coeffs.iter().zip(&l.base).map(|(c, b)| c * *b as i128).sum() };
    let to_i64 = |v: Vec<i128>| v.into_iter().map(|x| i64::try_from(x).expect("coefficient fits")).collect::<Vec<_>>();
    let mut atoms = Vec::new();
    // coordinates outside `rows` follow from those in `rows`
    for j in (0..k).filter(|j| !rows.contains(j)) {
        // P_j adj
        let pa: Vec<i128> = (0..r).map(|u| (0..r).map(|t| l.periods[t][j] as i128 * adj[t][u]).sum()).collect();
        let mut coeffs = vec![0i128; k];
        coeffs[j] = d;
        for (u, &row) in rows.iter().enumerate() {
            coeffs[row] -= pa[u];
        }
        let rhs = dot_b(&coeffs);
        atoms.push(Atom::Eq { coeffs: to_i64(coeffs), rhs: rhs as i64 });
    }
    let sign = d.signum();
    for adj_row in adj.iter() {
        let mut coeffs = vec![0i128; k];
        for (u, &row) in rows.iter().enumerate() {
            coeffs[row] = adj_row[u];
        }
        let rhs = dot_b(&coeffs);
        atoms.push(Atom::Ge {
            coeffs: to_i64(coeffs.iter().map(|c| c * sign).collect()),
            rhs: (rhs * sign) as i64,
        });
        if d.abs() > 1 {
            atoms.push(Atom::Cong {
                coeffs: to_i64(coeffs),
                rhs: rhs as i64,
                modulus: d.abs() as i64,
            });
        }
    }
    atoms
        .into_iter()
        .filter_map(|a| match a.normalize() {
            Normal::Atom(a) => Some(a),
            Normal::Always => None,
            Normal::Never => unreachable!("the base satisfies every constraint"),
        })
        .collect()
}

type Cell = BTreeSet<Atom>;

/// Linear system over `(x, slacks, quotients)` equivalent to a cell.
fn cell_system(cell: &Cell, k: usize) -> (Vec<Vec<i64>>, Vec<i64>, usize) {
    let n = k + cell.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (t, a) in cell.iter().enumerate() {
        let mut row = vec![0i64; n];
        match a {
            Atom::Ge { coeffs, rhs: c } => {
                row[..k].copy_from_slice(coeffs);
                row[k + t] = -1;
                rhs.push(*c);
            }
            Atom::Cong { coeffs, rhs: c, modulus } => {
                // coefficients and residue are nonnegative after normalization
                row[..k].copy_from_slice(coeffs);
                row[k + t] = -modulus;
                rhs.push(*c);
            }
            Atom::Eq { coeffs, rhs: c } => {
                row[..k].copy_from_slice(coeffs);
                rhs.push(*c);
            }
        }
        rows.push(row);
    }
    (rows, rhs, n)
}

fn ge_rows(cell: &Cell) -> Vec<(&[i64], i64)> {
    cell.iter()
        .filter_map(|a| match a {
            Atom::Ge { coeffs, rhs } => Some((coeffs.as_slice(), *rhs)),
            _ => None,
        })
        .collect()
}

/// Sound test that every point of `cell` satisfies `a`: rationally for
/// inequalities, syntactically for congruences.
fn implies(cell: &Cell, a: &Atom, k: usize) -> bool {
    match a {
        Atom::Ge { coeffs, rhs } => match minimize_ge(coeffs, &ge_rows(cell), k) {
            Lp::Optimal(v) => v >= Ratio::from_integer(*rhs as i128),
            Lp::Infeasible => true,
            Lp::Unbounded => false,
        },
        _ => cell.contains(a),
    }
}

/// Drops implied inequalities and parallel weaker ones; `None` when the
/// cell is empty already over the rationals or by conflicting residues.
fn reduce_cell(cell: Cell, k: usize) -> Option<Cell> {
    let mut strongest: std::collections::BTreeMap<Vec<i64>, i64> = Default::default();
    let mut residues: std::collections::BTreeMap<(Vec<i64>, i64), i64> = Default::default();
    for a in &cell {
        match a {
            Atom::Ge { coeffs, rhs } => {
                let e = strongest.entry(coeffs.clone()).or_insert(*rhs);
                *e = (*e).max(*rhs);
            }
            Atom::Cong { coeffs, rhs, modulus } => {
                if let Some(r) = residues.insert((coeffs.clone(), *modulus), *rhs) {
                    if r != *rhs {
                        return None;
                    }
                }
            }
            Atom::Eq { .. } => unreachable!("cells hold negated atoms only"),
        }
    }
    let mut ge: Vec<(Vec<i64>, i64)> = strongest.into_iter().collect();
    let rows: Vec<(&[i64], i64)> = ge.iter().map(|(c, r)| (c.as_slice(), *r)).collect();
    if minimize_ge(&vec![0; k], &rows, k) == Lp::Infeasible {
        return None;
    }
    let mut i = 0;
    while i < ge.len() {
        let others: Vec<(&[i64], i64)> = ge
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (c, r))| (c.as_slice(), *r))
            .collect();
        let redundant = matches!(minimize_ge(&ge[i].0, &others, k),
            Lp::Optimal(v) if v >= Ratio::from_integer(ge[i].1 as i128));
        if redundant {
            ge.remove(i);
        } else {
            i += 1;
        }
    }
    let mut out: Cell = ge.into_iter().map(|(coeffs, rhs)| Atom::Ge { coeffs, rhs }).collect();
    out.extend(
        residues
            .into_iter()
            .map(|((coeffs, modulus), rhs)| Atom::Cong { coeffs, rhs, modulus }),
    );
    Some(out)
}

/// Largest number of residue vectors enumerated in consistency checks.
const RESIDUE_ENUMERATION: u64 = 1 << 16;
/// Points tried by the witness search before falling back to the solver.
const WITNESS_SEARCH: u64 = 1 << 12;

fn residues_consistent(cell: &Cell, k: usize) -> bool {
    let congs: Vec<(&Vec<i64>, i64, i64)> = cell
        .iter()
        .filter_map(|a| match a {
            Atom::Cong { coeffs, rhs, modulus } => Some((coeffs, *rhs, *modulus)),
            _ => None,
        })
        .collect();
    if congs.is_empty() {
        return true;
    }
    let l = congs.iter().fold(1i64, |l, (_, _, m)| l.lcm(m));
    if (l as u64).checked_pow(k as u32).is_none_or(|n| n > RESIDUE_ENUMERATION) {
        return true;
    }
    box_points(k, l as u64 - 1).iter().any(|x| {
        congs.iter().all(|(c, r, m)| {
            let dot: i64 = c.iter().zip(x).map(|(a, b)| a * *b as i64).sum();
            (dot - r).mod_floor(m) == 0
        })
    })
}

fn small_witness(cell: &Cell, k: usize) -> bool {
    let mut side = 1u64;
    while (side + 1).checked_pow(k as u32).is_some_and(|n| n <= WITNESS_SEARCH) && side < 64 {
        side += 1;
    }
    box_points(k, side - 1).iter().any(|x| cell.iter().all(|a| a.holds(x)))
}

fn cell_feasible(cell: &Cell, k: usize, limit: usize) -> Result<bool, CocfError> {
    if !residues_consistent(cell, k) {
        return Ok(false);
    }
    if small_witness(cell, k) {
        return Ok(true);
    }
    let (a, c, n) = cell_system(cell, k);
    feasible_nat(&a, &c, n, limit)
}

fn cell_to_linear(cell: &Cell, k: usize, limit: usize) -> Result<Vec<LinearSet>, CocfError> {
    let (a, c, n) = cell_system(cell, k);
    let sol = solve_nat(&a, &c, n, limit)?;
    let periods: Vec<Vector> = sol.basis.iter().map(|h| h[..k].to_vec()).collect();
    Ok(sol
        .minimal
        .iter()
        .map(|m| LinearSet::new(m[..k].to_vec(), periods.clone()))
        .collect())
}

/// `N^k \ s`.
pub fn semilinear_complement(s: &SemilinearSet, limit: usize) -> Result<SemilinearSet, CocfError> {
    let k = s.k;
    let simple: Vec<LinearSet> = s.components.iter().flat_map(simple_parts).collect();
    let simple = SemilinearSet { k, components: simple }.simplify().components;
    let mut cells: Vec<Cell> = vec![Cell::new()];
    for l in &simple {
        let alternatives: Vec<Atom> = constraints(l)
            .iter()
            .flat_map(Atom::negate)
            .filter_map(|a| match a.normalize() {
                Normal::Atom(a) => Some(a),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut next: Vec<Cell> = Vec::new();
        for cell in &cells {
            if alternatives.iter().any(|a| implies(cell, a, k)) {
                next.push(cell.clone());
                continue;
            }
            for a in &alternatives {
                let mut c = cell.clone();
                c.insert(a.clone());
                if let Some(c) = reduce_cell(c, k) {
                    if cell_feasible(&c, k, limit)? {
                        next.push(c);
                    }
                }
            }
        }
        // a cell whose atoms include another's describes a subset of it
        next.sort_by_key(|c| c.len());
        next.dedup();
        let mut kept: Vec<Cell> = Vec::new();
        for c in next {
            if !kept.iter().any(|d| d.is_subset(&c)) {
                kept.push(c);
            }
        }
        cells = kept;
        if cells.is_empty() {
            break;
        }
    }
    let mut components = Vec::new();
    for cell in &cells {
        components.extend(cell_to_linear(cell, k, limit)?);
    }
    Ok(SemilinearSet { k, components }.simplify())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocf::hilbert::DEFAULT_SOLVER_LIMIT;

    fn lin(base: &[u64], periods: &[&[u64]]) -> LinearSet {
        LinearSet::new(base.to_vec(), periods.iter().map(|p| p.to_vec()).collect())
    }

    fn check_complement(s: &SemilinearSet, bound: u64) -> SemilinearSet {
        let c = semilinear_complement(s, DEFAULT_SOLVER_LIMIT).unwrap();
        for v in box_points(s.k, bound) {
            assert_ne!(s.contains(&v).unwrap(), c.contains(&v).unwrap(), "{v:?} in {s:?} / {c:?}");
        }
        c
    }

    #[test]
    fn simple_parts_cover_exactly() {
        let l = lin(&[1, 0], &[&[1, 0], &[0, 1], &[1, 1], &[2, 3]]);
        let parts = simple_parts(&l);
        for p in &parts {
            let ps: Vec<&Vector> = p.periods.iter().collect();
            assert_eq!(rank(&ps), ps.len());
        }
        let whole = SemilinearSet { k: 2, components: vec![l] };
        let split = SemilinearSet { k: 2, components: parts };
        assert_eq!(whole.members_in_box(9), split.members_in_box(9));
        let l = lin(&[0], &[&[2], &[3]]);
        assert_eq!(
            SemilinearSet { k: 1, components: simple_parts(&l) }.members_in_box(20),
            SemilinearSet { k: 1, components: vec![l] }.members_in_box(20)
        );
    }

    #[test]
    fn constraints_describe_the_set() {
        for l in [
            lin(&[1, 2], &[&[2, 1], &[0, 3]]),
            lin(&[0, 1, 1], &[&[1, 1, 0]]),
            lin(&[3, 0, 2], &[]),
            lin(&[0, 0, 0], &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 3]]),
        ] {
            let atoms = constraints(&l);
            for v in box_points(l.dim(), 7) {
                assert_eq!(l.contains(&v), atoms.iter().all(|a| a.holds(&v)), "{v:?} {l:?} {atoms:?}");
            }
        }
    }

    #[test]
    fn spec_examples() {
        let all = SemilinearSet::universe(1);
        assert!(check_complement(&all, 10).is_empty());
        let even = SemilinearSet { k: 1, components: vec![lin(&[0], &[&[2]])] };
        let odd = check_complement(&even, 10);
        assert_eq!(odd.components, vec![lin(&[1], &[&[2]])]);
        let diag = SemilinearSet { k: 2, components: vec![lin(&[0, 0], &[&[1, 1]])] };
        check_complement(&diag, 6);
        assert_eq!(check_complement(&SemilinearSet::empty(2), 4), SemilinearSet::universe(2));
    }

    #[test]
    fn zero_dimension() {
        assert_eq!(
            semilinear_complement(&SemilinearSet::empty(0), DEFAULT_SOLVER_LIMIT).unwrap(),
            SemilinearSet::zero(0)
        );
        assert!(semilinear_complement(&SemilinearSet::zero(0), DEFAULT_SOLVER_LIMIT).unwrap().is_empty());
    }

    #[test]
    fn unions_in_three_dimensions() {
        let s = SemilinearSet {
            k: 3,
            components: vec![
                lin(&[0, 0, 0], &[&[1, 1, 0], &[0, 2, 1]]),
                lin(&[1, 0, 2], &[&[0, 0, 1], &[3, 0, 0]]),
                lin(&[2, 2, 2], &[&[1, 1, 1]]),
            ],
        };
        check_complement(&s, 6);
    }
}
