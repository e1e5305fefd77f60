//! Independent brute-force oracles and random matrix generators shared by the
//! integration suites.
#![allow(dead_code)]

use manyval::formula::Formula;
use manyval::matrix::{Matrix, Operation, Tuples, Value};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// A matrix with random tables for `neg/1` and `and/2`.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let k = rng.gen_range(1..n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let designated: Vec<Value> = idx[..k].iter().map(|&i| Value::new(i)).collect();
    let ops = vec![
        Operation::from_table("neg", 1, n, (0..n).map(|_| Value::new(rng.gen_range(0..n))).collect()),
        Operation::from_table(
            "and",
            2,
            n,
            (0..n * n).map(|_| Value::new(rng.gen_range(0..n))).collect(),
        ),
    ];
    Matrix::from_parts("R", names(n), &designated, ops).unwrap()
}

/// A random `n`-valued matrix built over a random `k`-valued one through a
/// surjection `p`, so that `p` is an epimorphism onto the small matrix.
/// Returns the big matrix, the small one and `p`.
pub fn random_inflated<R: Rng>(rng: &mut R, n: usize, k: usize) -> (Matrix, Matrix, Vec<usize>) {
    let small = random_matrix(rng, k);
    let mut p: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
    p.shuffle(rng);
    let fibre = |c: usize| -> Vec<usize> { (0..n).filter(|&x| p[x] == c).collect() };
    let fibres: Vec<Vec<usize>> = (0..k).map(fibre).collect();
    let ops = small
        .ops()
        .iter()
        .map(|op| {
            let table = Tuples::new(n, op.arity())
                .map(|t| {
                    let image: Vec<Value> = t.iter().map(|v| Value::new(p[v.index()])).collect();
                    let r = op.eval(&image).index();
                    Value::new(*fibres[r].choose(rng).unwrap())
                })
                .collect();
            Operation::from_table(op.name(), op.arity(), n, table)
        })
        .collect();
    let designated: Vec<Value> = (0..n)
        .filter(|&x| small.designates(Value::new(p[x])))
        .map(Value::new)
        .collect();
    (Matrix::from_parts("I", names(n), &designated, ops).unwrap(), small, p)
}

/// The same matrix with its values permuted: value `i` becomes `perm[i]`.
pub fn relabel(m: &Matrix, perm: &[usize]) -> Matrix {
    let n = m.len();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let ops = m
        .ops()
        .iter()
        .map(|op| {
            let table = Tuples::new(n, op.arity())
                .map(|t| {
                    let pre: Vec<Value> = t.iter().map(|v| Value::new(inv[v.index()])).collect();
                    Value::new(perm[op.eval(&pre).index()])
                })
                .collect();
            Operation::from_table(op.name(), op.arity(), n, table)
        })
        .collect();
    let designated: Vec<Value> = m.designated().map(|v| Value::new(perm[v.index()])).collect();
    Matrix::from_parts("P", names(n), &designated, ops).unwrap()
}

/// All restricted growth strings of length `n`: every set partition once.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, n, if b > max { b } else { max }, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    go(&mut vec![0], n, 0, &mut out);
    out
}

/// Congruence by definition: equivalent argument tuples give equivalent
/// results, and no class mixes designated with undesignated values.
pub fn brute_is_congruence(m: &Matrix, labels: &[usize]) -> bool {
    let n = m.len();
    for x in 0..n {
        for y in 0..n {
            if labels[x] == labels[y] && m.designates(Value::new(x)) != m.designates(Value::new(y)) {
                return false;
            }
        }
    }
    for op in m.ops() {
        let tuples: Vec<Vec<Value>> = Tuples::new(n, op.arity()).collect();
        for s in &tuples {
            for t in &tuples {
                if s.iter().zip(t).all(|(a, b)| labels[a.index()] == labels[b.index()])
                    && labels[op.eval(s).index()] != labels[op.eval(t).index()]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Every congruence, identity included, as block lists of value indices in
/// canonical order (blocks by first element).
pub fn brute_congruences(m: &Matrix) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = all_partitions(m.len())
        .into_iter()
        .filter(|l| brute_is_congruence(m, l))
        .map(|l| {
            let k = l.iter().max().unwrap() + 1;
            (0..k).map(|b| (0..l.len()).filter(|&i| l[i] == b).collect()).collect()
        })
        .collect();
    out.sort();
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Whether `f` (as indices) is a strong homomorphism, straight from the
/// definition. Operations are matched by name and arity.
pub fn brute_is_hom(m1: &Matrix, m2: &Matrix, f: &[usize]) -> bool {
    for v in m1.values() {
        if m1.designates(v) != m2.designates(Value::new(f[v.index()])) {
            return false;
        }
    }
    for op in m1.ops() {
        let Some(j) = m2.op_index(op.name(), op.arity()) else {
            return false;
        };
        let op2 = m2.op(j);
        for t in Tuples::new(m1.len(), op.arity()) {
            let image: Vec<Value> = t.iter().map(|v| Value::new(f[v.index()])).collect();
            if f[op.eval(&t).index()] != op2.eval(&image).index() {
                return false;
            }
        }
    }
    true
}

pub fn brute_isomorphisms(m1: &Matrix, m2: &Matrix) -> Vec<Vec<usize>> {
    if m1.len() != m2.len() {
        return vec![];
    }
    permutations(m1.len())
        .into_iter()
        .filter(|p| brute_is_hom(m1, m2, p))
        .collect()
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// `S(n, k)` by inclusion-exclusion: `k!·S(n,k) = Σ (-1)^j C(k,j) (k-j)^n`.
pub fn stirling_inclusion_exclusion(n: usize, k: usize) -> BigUint {
    let (mut plus, mut minus) = (BigUint::from(0u32), BigUint::from(0u32));
    for j in 0..=k {
        let term = binomial(k, j) * BigUint::from(k - j).pow(n as u32);
        if j % 2 == 0 {
            plus += term;
        } else {
            minus += term;
        }
    }
    let fact: BigUint = (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i);
    (plus - minus) / fact
}

pub fn bell_by_stirling(n: usize) -> BigUint {
    (0..=n).map(|k| stirling_inclusion_exclusion(n, k)).sum()
}

/// Every formula over `atoms` with `neg`, `and`, `or` up to `depth`.
pub fn formula_pool(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = vec![atoms.iter().map(|a| Formula::atom(*a)).collect()];
    let mut all = levels[0].clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        let prev_all = all.clone();
        let last = levels.last().unwrap();
        for f in last {
            next.push(Formula::neg(f.clone()));
        }
        // binary: at least one side from the last level
        for a in &prev_all {
            for b in &prev_all {
                if last.contains(a) || last.contains(b) {
                    next.push(Formula::and(a.clone(), b.clone()));
                    next.push(Formula::or(a.clone(), b.clone()));
                }
            }
        }
        all.extend(next.iter().cloned());
        levels.push(next);
    }
    all
}

/// Random formula over `atoms` with depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::atom(*atoms.choose(rng).unwrap());
    }
    match rng.gen_range(0..3) {
        0 => Formula::neg(random_formula(rng, atoms, depth - 1)),
        1 => Formula::and(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        _ => Formula::or(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
    }
}
