use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{gkp_normalize, ExtensionError, FiniteExtension, GkpInstance};
use crate::group::GroupElement;
use crate::json::JsonInt;

/// Smallest `m >= 0`, then smallest `l >= 1`, with
/// `rho(r g^m) = rho(r g^(m+l))`.
pub fn find_period<O: FiniteExtension + ?Sized>(
    r: &GroupElement,
    g: &GroupElement,
    o: &O,
) -> Result<(usize, usize), ExtensionError> {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut x = r.clone();
    for n in 0..=o.representatives().len() {
        let idx = o.rho(&x)?;
        if let Some(&m) = seen.get(&idx) {
            return Ok((m, n - m));
        }
        seen.insert(idx, n);
        x = x.mul(g)?;
    }
    Err(ExtensionError::Internal("no repetition among coset representatives".into()))
}

/// For `rho(g1 g2) = rho(g1)`, returns `h1, h2` in `H` and a representative
/// `r` with `g1 g2^t = h1 h2^t r` for all `t >= 0`.
pub fn move_right<O: FiniteExtension + ?Sized>(
    g1: &GroupElement,
    g2: &GroupElement,
    o: &O,
) -> Result<(GroupElement, GroupElement, GroupElement), ExtensionError> {
    let (h1, ri) = o.decompose(g1)?;
    if o.rho(&g1.mul(g2)?)? != ri {
        return Err(ExtensionError::MoveRightPrecondition);
    }
    let r = o.representatives()[ri].clone();
    let (h2, r2) = o.decompose(&r.mul(g2)?)?;
    if r2 != ri {
        return Err(ExtensionError::Internal("representatives are not a transversal".into()));
    }
    Ok((h1, h2, r))
}

/// How the exponent of an original power is recovered from a solution of
/// an emitted instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AffineEntry {
    /// `n = value`.
    Const { value: JsonInt },
    /// `n = offset + stride * x[var]`.
    Affine {
        var: usize,
        offset: JsonInt,
        stride: JsonInt,
    },
}

/// One entry per power of the original instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap(pub Vec<AffineEntry>);

impl AffineMap {
    pub fn identity(k: usize) -> Self {
        AffineMap(
            (0..k)
                .map(|var| AffineEntry::Affine {
                    var,
                    offset: JsonInt(BigInt::from(0)),
                    stride: JsonInt(BigInt::from(1)),
                })
                .collect(),
        )
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.0
            .iter()
            .map(|e| match e {
                AffineEntry::Const { value } => value.0.clone(),
                AffineEntry::Affine { var, offset, stride } => &offset.0 + &stride.0 * &x[*var],
            })
            .collect()
    }

    /// `self` after `inner`: `inner` maps the new variables to the
    /// intermediate ones that `self` reads.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap(
            self.0
                .iter()
                .map(|e| match e {
                    AffineEntry::Const { .. } => e.clone(),
                    AffineEntry::Affine { var, offset, stride } => match &inner.0[*var] {
                        AffineEntry::Const { value } => AffineEntry::Const {
                            value: JsonInt(&offset.0 + &stride.0 * &value.0),
                        },
                        AffineEntry::Affine {
                            var: v2,
                            offset: o2,
                            stride: s2,
                        } => AffineEntry::Affine {
                            var: *v2,
                            offset: JsonInt(&offset.0 + &stride.0 * &o2.0),
                            stride: JsonInt(&stride.0 * &s2.0),
                        },
                    },
                })
                .collect(),
        )
    }
}

/// A pure instance together with the map taking its solutions to solutions
/// of the instance it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureInstance {
    pub instance: GkpInstance,
    pub map: AffineMap,
}

/// Instances emitted by one purification step at the leftmost impure
/// position, each with its map into the parent's variables.
pub fn purify_step<O: FiniteExtension + ?Sized>(
    inst: &GkpInstance,
    o: &O,
) -> Result<Vec<(GkpInstance, AffineMap)>, ExtensionError> {
    let k = inst.k();
    let j = inst.purity_level(o)?;
    if j == k {
        return Ok(vec![(inst.clone(), AffineMap::identity(k))]);
    }
    let f = &inst.constants;
    let g = &inst.bases;
    let gj = &g[j];
    let (h, ri) = o.decompose(&f[j])?;
    let r = o.representatives()[ri].clone();
    let (m, l) = find_period(&r, gj, o)?;
    let rgm = r.mul(&gj.pow(&BigInt::from(m))?)?;
    let (h1, h2, r_prime) = move_right(&rgm, &gj.pow(&BigInt::from(l))?, o)?;
    let mut out = Vec::with_capacity(m + l);

    for s in 0..m {
        // n_{j+1} = s: the power disappears
        let (hs, rs) = o.decompose(&r.mul(&gj.pow(&BigInt::from(s))?)?)?;
        let merged = h.mul(&hs)?.mul(&o.representatives()[rs])?.mul(&f[j + 1])?;
        let mut constants = f[..j].to_vec();
        constants.push(merged);
        constants.extend_from_slice(&f[j + 2..]);
        let mut bases = g[..j].to_vec();
        bases.extend_from_slice(&g[j + 1..]);
        let mut map = Vec::with_capacity(k);
        for i in 0..k {
            map.push(match i.cmp(&j) {
                std::cmp::Ordering::Less => affine(i, 0, 1),
                std::cmp::Ordering::Equal => AffineEntry::Const {
                    value: JsonInt(BigInt::from(s)),
                },
                std::cmp::Ordering::Greater => affine(i - 1, 0, 1),
            });
        }
        out.push((GkpInstance::new(inst.group.clone(), constants, bases)?, AffineMap(map)));
    }
    for s in 0..l {
        // n_{j+1} = m + t l + s
        let (hs, rs) = o.decompose(&r_prime.mul(&gj.pow(&BigInt::from(s))?)?)?;
        let mut constants = f[..j].to_vec();
        constants.push(h.mul(&h1)?);
        constants.push(hs.mul(&o.representatives()[rs])?.mul(&f[j + 1])?);
        constants.extend_from_slice(&f[j + 2..]);
        let mut bases = g.clone();
        bases[j] = h2.clone();
        let map = (0..k)
            .map(|i| if i == j { affine(i, (m + s) as i64, l as i64) } else { affine(i, 0, 1) })
            .collect();
        out.push((GkpInstance::new(inst.group.clone(), constants, bases)?, AffineMap(map)));
    }
    Ok(out)
}

fn affine(var: usize, offset: i64, stride: i64) -> AffineEntry {
    AffineEntry::Affine {
        var,
        offset: JsonInt(BigInt::from(offset)),
        stride: JsonInt(BigInt::from(stride)),
    }
}

/// Pure instances whose solution sets, pushed through their maps, cover the
/// solution set of `inst`.
pub fn purify<O: FiniteExtension + ?Sized>(
    inst: &GkpInstance,
    o: &O,
) -> Result<Vec<PureInstance>, ExtensionError> {
    let mut done = Vec::new();
    let mut work = vec![(inst.clone(), AffineMap::identity(inst.k()))];
    while let Some((cur, map)) = work.pop() {
        let before = cur.impurity(o)?;
        if before == 0 {
            done.push(PureInstance { instance: cur, map });
            continue;
        }
        for (child, child_map) in purify_step(&cur, o)? {
            if child.impurity(o)? >= before {
                return Err(ExtensionError::Internal("purification did not reduce impurity".into()));
            }
            work.push((child, map.compose(&child_map)));
        }
    }
    done.reverse();
    Ok(done)
}

/// Outcome of [`decide_gkp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkpDecision {
    pub solvable: bool,
    /// Solution of the original instance, re-verified by evaluation.
    pub witness: Option<Vec<BigInt>>,
    /// Number of pure instances examined.
    pub pure_instances: usize,
}

/// Purifies, keeps the pure instances whose last constant lies in `H`,
/// normalizes them to knapsack over `H` and asks the subgroup decider.
pub fn decide_gkp<O: FiniteExtension + ?Sized>(
    inst: &GkpInstance,
    o: &O,
) -> Result<GkpDecision, ExtensionError> {
    inst.validate()?;
    let pure = purify(inst, o)?;
    let count = pure.len();
    for p in &pure {
        let last = p.instance.constants.last().expect("k + 1 constants");
        if !o.in_subgroup(last)? {
            continue;
        }
        let ks = gkp_normalize(&p.instance)?;
        if let Some(x) = o.decide_subgroup_knapsack(&ks.bases, &ks.target)? {
            if !p.instance.is_solution(&x)? {
                return Err(ExtensionError::Internal("subgroup witness does not solve the pure instance".into()));
            }
            let original = p.map.apply(&x);
            if !inst.is_solution(&original)? {
                return Err(ExtensionError::Internal("translated witness does not solve the instance".into()));
            }
            return Ok(GkpDecision {
                solvable: true,
                witness: Some(original),
                pure_instances: count,
            });
        }
    }
    Ok(GkpDecision {
        solvable: false,
        witness: None,
        pure_instances: count,
    })
}
