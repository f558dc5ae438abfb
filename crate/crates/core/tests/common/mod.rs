#![allow(dead_code)]

use std::collections::BTreeSet;

use hopfinv::comodule::{action_to_coaction, Comodule};
use hopfinv::exactlin::IntMatrix;
use hopfinv::hopf::GroupTable;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed;
pub const ENTRY_BOUND: i64 = 2;
pub const MAX_RANK: usize = 3;

/// Integer representation of a finite group, one matrix per element.
#[derive(Clone, Debug)]
pub struct Rep {
    pub label: String,
    pub group: GroupTable,
    pub reps: Vec<IntMatrix>,
}

impl Rep {
    pub fn rank(&self) -> usize {
        self.reps[0].rows()
    }

    pub fn comodule(&self) -> Comodule {
        action_to_coaction(&self.group, &self.reps).expect("corpus representations are valid")
    }
}

type Dense = Vec<Vec<i64>>;

fn mat(rows: &[&[i64]]) -> Dense {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn block_sum(blocks: &[&Dense]) -> Dense {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[off + i][off + j] = v;
            }
        }
        off += b.len();
    }
    out
}

/// Irreducible-ish building blocks given by the images of the generators.
fn atoms(group: &str) -> Vec<Vec<Dense>> {
    let swap = mat(&[&[0, 1], &[1, 0]]);
    match group {
        "Z2" => vec![vec![mat(&[&[1]])], vec![mat(&[&[-1]])], vec![swap]],
        "Z3" => vec![
            vec![mat(&[&[1]])],
            vec![mat(&[&[0, -1], &[1, -1]])],
            vec![mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])],
        ],
        "Z2xZ2" => {
            let mut out = Vec::new();
            for a in [1, -1] {
                for b in [1, -1] {
                    out.push(vec![mat(&[&[a]]), mat(&[&[b]])]);
                }
            }
            let i2 = identity(2);
            let neg = |m: &Dense| -> Dense { m.iter().map(|r| r.iter().map(|v| -v).collect()).collect() };
            out.push(vec![swap.clone(), i2.clone()]);
            out.push(vec![i2.clone(), swap.clone()]);
            out.push(vec![swap.clone(), swap.clone()]);
            out.push(vec![swap.clone(), neg(&i2)]);
            out.push(vec![neg(&i2), swap.clone()]);
            out.push(vec![swap.clone(), neg(&swap)]);
            out
        }
        _ => unreachable!(),
    }
}

/// Multisets of atoms with total rank at most `MAX_RANK`.
fn block_choices(atoms: &[Vec<Dense>]) -> Vec<Vec<usize>> {
    fn rec(atoms: &[Vec<Dense>], start: usize, rank: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for k in start..atoms.len() {
            let r = atoms[k][0].len();
            if rank + r <= MAX_RANK {
                cur.push(k);
                rec(atoms, k, rank + r, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(atoms, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Random unimodular `P` with its inverse, as a product of elementary
/// matrices `1 ± E_ij`.
fn random_unimodular(n: usize, steps: usize, rng: &mut ChaCha8Rng) -> (Dense, Dense) {
    let mut p = identity(n);
    let mut p_inv = identity(n);
    if n < 2 {
        return (p, p_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = identity(n);
        e[i][j] = c;
        let mut e_inv = identity(n);
        e_inv[i][j] = -c;
        p = mul(&p, &e);
        p_inv = mul(&e_inv, &p_inv);
    }
    (p, p_inv)
}

fn group_table(name: &str) -> GroupTable {
    GroupTable::by_name(name).expect("known group")
}

/// Images of every group element from images of the generators.
fn all_elements(name: &str, gens: &[Dense]) -> Vec<Dense> {
    let n = gens[0].len();
    match name {
        "Z2" => vec![identity(n), gens[0].clone()],
        "Z3" => vec![identity(n), gens[0].clone(), mul(&gens[0], &gens[0])],
        // element (g, h) is numbered 2g + h
        "Z2xZ2" => vec![identity(n), gens[1].clone(), gens[0].clone(), mul(&gens[0], &gens[1])],
        _ => unreachable!(),
    }
}

fn to_int(m: &Dense) -> IntMatrix {
    IntMatrix::from_rows(m)
}

/// Seed-fixed corpus of representations of ℤ/2, ℤ/3 and ℤ/2×ℤ/2 of rank at
/// most 3 with all matrix entries in `[−2, 2]`: block sums of small
/// representations conjugated by random unimodular matrices.
pub fn corpus(seed: u64, conjugates_per_block: usize) -> Vec<Rep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for name in ["Z2", "Z3", "Z2xZ2"] {
        let group = group_table(name);
        let atoms = atoms(name);
        let mut seen: BTreeSet<Vec<Dense>> = BTreeSet::new();
        for choice in block_choices(&atoms) {
            let ngens = atoms[0].len();
            let gens: Vec<Dense> = (0..ngens)
                .map(|g| {
                    let blocks: Vec<&Dense> = choice.iter().map(|&k| &atoms[k][g]).collect();
                    block_sum(&blocks)
                })
                .collect();
            let n = gens[0].len();
            let mut added = 0;
            for attempt in 0..conjugates_per_block * 4 {
                let steps = if attempt == 0 { 0 } else { rng.gen_range(1..=3) };
                let (p, p_inv) = random_unimodular(n, steps, &mut rng);
                let conj: Vec<Dense> = gens.iter().map(|g| mul(&mul(&p, g), &p_inv)).collect();
                if conj.iter().flatten().flatten().any(|v| v.abs() > ENTRY_BOUND) {
                    continue;
                }
                if !seen.insert(conj.clone()) {
                    continue;
                }
                let reps: Vec<IntMatrix> = all_elements(name, &conj).iter().map(to_int).collect();
                let label = format!("{name}#{} {:?}", seen.len(), conj);
                out.push(Rep {
                    label,
                    group: group.clone(),
                    reps,
                });
                added += 1;
                if added == conjugates_per_block {
                    break;
                }
            }
        }
    }
    out.shuffle(&mut rng);
    out.sort_by(|a, b| a.group.name().cmp(b.group.name()).then(a.rank().cmp(&b.rank())));
    out
}

/// ℤ with the sign action of ℤ/2.
pub fn sign_rep() -> Rep {
    Rep {
        label: "Z2 sign".into(),
        group: group_table("Z2"),
        reps: vec![IntMatrix::from_rows(&[vec![1]]), IntMatrix::from_rows(&[vec![-1]])],
    }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
