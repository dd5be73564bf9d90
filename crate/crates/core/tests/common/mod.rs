#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use grouppack::group::{GeneratorWord, GroupDescriptor, GroupElement};
use grouppack::hardness::ExponentialExpression;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(letters: &[i64]) -> GeneratorWord {
    GeneratorWord::new(letters.to_vec()).unwrap()
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

/// Runs the command line in-process: (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("grouppack").chain(args.iter().copied());
    let code = grouppack::harness::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Every point of `[lo, hi]^k`, first coordinate fastest.
pub fn grid(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| (lo..=hi).map(move |v| [vec![v], p.clone()].concat()))
            .collect();
    }
    out
}

pub fn heis_small<R: Rng + ?Sized>(rng: &mut R, c: i64) -> GroupElement {
    GroupElement::heis(rng.gen_range(-c..=c), rng.gen_range(-c..=c), rng.gen_range(-c..=c))
}

/// Expression of length `1..=max_len` over `H3(Z)` or `H3(Z) x Z`, with
/// variables from `{x, y, z}`. Half of the targets are planted with values
/// in `[-3, 3]`.
pub fn random_expression(rng: &mut impl Rng, max_len: usize) -> (ExponentialExpression, GroupElement) {
    let with_z = rng.gen_bool(0.5);
    let group = if with_z {
        GroupDescriptor::product(vec![GroupDescriptor::HeisZe { e: 0 }, GroupDescriptor::Z { n: 1 }])
    } else {
        GroupDescriptor::HeisZe { e: 0 }
    };
    let element = |rng: &mut dyn rand::RngCore| {
        let h = heis_small(rng, 2);
        if with_z {
            GroupElement::Product(vec![h, GroupElement::vector(&[rng.gen_range(-2..=2)])])
        } else {
            h
        }
    };
    let len = rng.gen_range(1..=max_len);
    let factors = (0..len)
        .map(|_| (element(rng), ["x", "y", "z"][rng.gen_range(0..3)].to_string()))
        .collect();
    let e = ExponentialExpression {
        group,
        factors,
        blocks: None,
    };
    let target = if rng.gen_bool(0.5) {
        let nu: BTreeMap<String, BigInt> = e
            .variables()
            .into_iter()
            .map(|x| (x, BigInt::from(rng.gen_range(-3..=3))))
            .collect();
        e.evaluate(&nu).unwrap()
    } else {
        element(rng)
    };
    (e, target)
}
