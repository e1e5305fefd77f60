mod common;

use common::*;
use manyval::algebra::{bell, factorial, induced_partition, stirling2, surjections};
use manyval::matrix::Value;
use manyval::semantics::{check_consequence_agreement, EntailOptions};
use manyval::{
    automorphisms, build_builtin, classify, direct_product, enumerate_congruences, factor_matrix, find_epimorphisms,
    find_isomorphism, is_congruence, CongruenceOptions, EpiOptions, MapKind, Matrix, Partition, ValueMap,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn blocks_of(p: &Partition) -> Vec<Vec<usize>> {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|v| v.index()).collect())
        .collect()
}

fn all_congruences(m: &Matrix) -> Vec<Vec<Vec<usize>>> {
    let opts = CongruenceOptions {
        include_identity: true,
        ..Default::default()
    };
    let mut got: Vec<_> = enumerate_congruences(m, &opts)
        .unwrap()
        .iter()
        .map(|c| blocks_of(c.partition()))
        .collect();
    got.sort();
    got
}

/// Random matrices of three kinds: plain, inflated over a smaller one, and
/// products of two small ones.
fn sample_matrices(seed: u64, count: usize) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 3 {
            0 => {
                let n = rng.gen_range(2..=5);
                random_matrix(&mut rng, n)
            }
            1 => {
                let n = rng.gen_range(3..=5);
                let k = rng.gen_range(2..n);
                random_inflated(&mut rng, n, k).0
            }
            _ => {
                let a = random_matrix(&mut rng, 2);
                let b = random_matrix(&mut rng, 2);
                direct_product(&a, &b).unwrap()
            }
        })
        .collect()
}

#[test]
fn congruences_match_brute_force() {
    for m in sample_matrices(11, 120) {
        let expected = brute_congruences(&m);
        assert_eq!(all_congruences(&m), expected, "matrix {m:?}");
        let proper = enumerate_congruences(&m, &CongruenceOptions::default()).unwrap();
        assert_eq!(proper.len(), expected.len() - 1);
        assert!(proper.iter().all(|c| !c.partition().is_identity()));
    }
}

#[test]
fn parallel_congruence_search_agrees() {
    for m in sample_matrices(12, 30) {
        let opts = CongruenceOptions {
            include_identity: true,
            jobs: 4,
            ..Default::default()
        };
        let par: Vec<Partition> = enumerate_congruences(&m, &opts)
            .unwrap()
            .into_iter()
            .map(|c| c.into_partition())
            .collect();
        let seq: Vec<Partition> = enumerate_congruences(
            &m,
            &CongruenceOptions {
                include_identity: true,
                ..Default::default()
            },
        )
        .unwrap()
        .into_iter()
        .map(|c| c.into_partition())
        .collect();
        assert_eq!(par, seq);
    }
}

#[test]
fn class_filter_matches_brute_force() {
    for m in sample_matrices(13, 45) {
        let all = brute_congruences(&m);
        for k in 1..=m.len() {
            let opts = CongruenceOptions {
                include_identity: true,
                classes: Some(k),
                ..Default::default()
            };
            let got = enumerate_congruences(&m, &opts).unwrap();
            assert_eq!(got.len(), all.iter().filter(|c| c.len() == k).count(), "{k} classes");
            assert!(got.iter().all(|c| c.partition().len() == k));
        }
    }
}

#[test]
fn congruence_check_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let m = random_matrix(&mut rng, 5);
        for labels in all_partitions(5) {
            let p = Partition::from_labels(m.name(), &labels);
            assert_eq!(is_congruence(&m, &p).unwrap().holds(), brute_is_congruence(&m, &labels));
        }
    }
}

#[test]
fn isomorphisms_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..80 {
        let n = rng.gen_range(2..=6);
        let a = if i % 2 == 0 {
            random_matrix(&mut rng, n)
        } else {
            random_inflated(&mut rng, n, 2).0
        };
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut perm[..], &mut rng);
        let b = if rng.gen_bool(0.7) {
            relabel(&a, &perm)
        } else {
            random_matrix(&mut rng, n)
        };
        let expected = brute_isomorphisms(&a, &b);
        match find_isomorphism(&a, &b) {
            Some(f) => {
                let idx: Vec<usize> = f.mapping().iter().map(|v| v.index()).collect();
                assert!(expected.contains(&idx));
                assert_eq!(f.kind, MapKind::Iso);
            }
            None => assert!(expected.is_empty()),
        }
        let autos: Vec<Vec<usize>> = automorphisms(&a)
            .iter()
            .map(|f| f.mapping().iter().map(|v| v.index()).collect())
            .collect();
        let mut brute_autos = brute_isomorphisms(&a, &a);
        brute_autos.sort();
        let mut autos_sorted = autos.clone();
        autos_sorted.sort();
        assert_eq!(autos_sorted, brute_autos);
    }
}

fn surjections_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        if (0..k).all(|t| f.contains(&t)) {
            out.push(f.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
        }
    }
}

#[test]
fn epimorphisms_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let n = rng.gen_range(3..=5);
        let k = rng.gen_range(2..n);
        let (big, small, p) = random_inflated(&mut rng, n, k);
        let mut expected: Vec<Vec<usize>> = surjections_of(n, k)
            .into_iter()
            .filter(|f| brute_is_hom(&big, &small, f))
            .collect();
        expected.sort();
        assert!(expected.contains(&p));
        let opts = EpiOptions {
            find_all: true,
            ..Default::default()
        };
        let mut got: Vec<Vec<usize>> = find_epimorphisms(&big, &small, &opts)
            .unwrap()
            .iter()
            .map(|f| f.mapping().iter().map(|v| v.index()).collect())
            .collect();
        got.sort();
        assert_eq!(got, expected);
        let first = find_epimorphisms(&big, &small, &EpiOptions::default()).unwrap();
        assert_eq!(first.len(), 1);
    }
}

#[test]
fn kernels_are_congruences_and_epis_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(2..n);
        let (big, small, p) = random_inflated(&mut rng, n, k);
        let f = ValueMap::raw(&big, &small, p.iter().map(|&x| Value::new(x)).collect()).unwrap();
        let f = classify(&big, &small, &f)
            .unwrap()
            .expect("inflation map is a homomorphism");
        assert_eq!(f.kind, MapKind::Epi);
        // the kernel is a congruence
        let ker = induced_partition(&f);
        let labels: Vec<usize> = (0..n).map(|x| ker.block_of(Value::new(x))).collect();
        assert!(brute_is_congruence(&big, &labels));
        let c = manyval::Congruence::verify(&big, ker.clone()).unwrap();
        // the projection onto the factor is an epimorphism
        let (factor, proj) = factor_matrix(&big, &c).unwrap();
        let proj_idx: Vec<usize> = proj.mapping().iter().map(|v| v.index()).collect();
        assert!(brute_is_hom(&big, &factor, &proj_idx));
        assert!(proj.is_surjective(factor.len()));
        // the factor is isomorphic to the image, through f on representatives
        let h: Vec<usize> = ker.blocks().iter().map(|b| p[b[0].index()]).collect();
        assert!(brute_is_hom(&factor, &small, &h));
        let iso = find_isomorphism(&factor, &small).unwrap();
        let composed = proj.then(&iso).unwrap();
        assert!(brute_is_hom(
            &big,
            &small,
            &composed.mapping().iter().map(|v| v.index()).collect::<Vec<_>>()
        ));
    }
}

#[test]
fn epimorphisms_preserve_consequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let atoms = ["A", "B", "C"];
    // random matrices with neg/and get `or` too, so formulas parse everywhere
    for round in 0..40 {
        let n = rng.gen_range(3..=5);
        let k = rng.gen_range(2..n);
        let (big, small, p) = random_inflated(&mut rng, n, k);
        let f = ValueMap::raw(&big, &small, p.iter().map(|&x| Value::new(x)).collect()).unwrap();
        let f = classify(&big, &small, &f).unwrap().unwrap();
        let suite: Vec<_> = (0..if round < 20 { 10 } else { 25 })
            .map(|_| {
                let prem = (0..rng.gen_range(0..3))
                    .map(|_| neg_and_formula(&mut rng, &atoms, 3))
                    .collect();
                (prem, neg_and_formula(&mut rng, &atoms, 3))
            })
            .collect();
        let report = check_consequence_agreement(&big, &small, &f, &suite, &EntailOptions::default()).unwrap();
        assert!(report.all_agree(), "{:?}", report.disagreements().next());
    }
}

fn neg_and_formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> manyval::Formula {
    use manyval::Formula;
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    if rng.gen_bool(0.4) {
        Formula::neg(neg_and_formula(rng, atoms, depth - 1))
    } else {
        Formula::and(
            neg_and_formula(rng, atoms, depth - 1),
            neg_and_formula(rng, atoms, depth - 1),
        )
    }
}

#[test]
fn builtin_epimorphism_preserves_consequence() {
    let (fc, nc) = (build_builtin("fc").unwrap(), build_builtin("nc").unwrap());
    let epi = find_epimorphisms(&fc, &nc, &EpiOptions::default()).unwrap().remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let atoms = ["A", "B"];
    let suite: Vec<_> = (0..500)
        .map(|_| {
            let prem = (0..rng.gen_range(0..3))
                .map(|_| random_formula(&mut rng, &atoms, 3))
                .collect();
            (prem, random_formula(&mut rng, &atoms, 3))
        })
        .collect();
    let report = check_consequence_agreement(&fc, &nc, &epi, &suite, &EntailOptions::default()).unwrap();
    assert!(report.all_agree());
    assert!(report.cases.iter().any(|c| c.holds_source));
    assert!(report.cases.iter().any(|c| !c.holds_source));
}

#[test]
fn counting_functions_match_closed_forms() {
    for n in 0..=30 {
        let mut bell_sum = BigUint::from(0u32);
        for k in 0..=n {
            let s = stirling_inclusion_exclusion(n, k);
            assert_eq!(stirling2(n, k), s, "S({n},{k})");
            assert_eq!(surjections(n, k), factorial(k) * &s);
            bell_sum += s;
        }
        assert_eq!(bell(n), bell_sum);
        assert_eq!(bell(n), bell_by_stirling(n));
    }
    for n in 0..=8 {
        assert_eq!(bell(n), BigUint::from(all_partitions(n).len()));
    }
}
