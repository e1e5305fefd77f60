//! Exact sizes of the naive search spaces for congruences, isomorphisms and
//! surjective maps.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::MAX_VALUES;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Stirling numbers of the second kind, `S(n, k)`, by
/// `S(n, k) = k·S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    // row[j] = S(i, j)
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Number of surjections from an `n`-set onto an `m`-set: `m!·S(n, m)`.
pub fn surjections(n: usize, m: usize) -> BigUint {
    factorial(m) * stirling2(n, m)
}

/// Search-space sizes for an `n`-valued matrix with `k` designated values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub n: usize,
    pub k: usize,
    /// `B_k`
    pub bell_designated: BigUint,
    /// `B_{n-k}`
    pub bell_undesignated: BigUint,
    /// `B_k · B_{n-k}` designation-respecting partitions.
    pub congruence_candidates: BigUint,
    /// `k! · (n-k)!` designation-respecting bijections.
    pub bijection_candidates: BigUint,
    /// Product of `m!·S(n, m)` over the requested class splits.
    pub surjection_candidates: Option<BigUint>,
}

pub fn search_space_stats(n: usize, k: usize) -> Result<SearchStats> {
    if n > MAX_VALUES {
        return Err(Error::domain(format!("at most {MAX_VALUES} values supported, got {n}")));
    }
    if !(0 < k && k < n) {
        return Err(Error::domain(format!(
            "need 0 < designated < values, got {k} designated of {n}"
        )));
    }
    let bell_designated = bell(k);
    let bell_undesignated = bell(n - k);
    Ok(SearchStats {
        n,
        k,
        congruence_candidates: &bell_designated * &bell_undesignated,
        bell_designated,
        bell_undesignated,
        bijection_candidates: factorial(k) * factorial(n - k),
        surjection_candidates: None,
    })
}

impl SearchStats {
    /// Adds the count of class-respecting surjections for a split given as
    /// `(source size, target size)` per class, e.g. `[(12, 6), (4, 3)]` for
    /// undesignated and designated values. Source sizes must add up to `n`.
    pub fn with_surjection_split(mut self, split: &[(usize, usize)]) -> Result<Self> {
        let total: usize = split.iter().map(|(s, _)| s).sum();
        if total != self.n {
            return Err(Error::domain(format!(
                "split sources add up to {total}, expected {}",
                self.n
            )));
        }
        if let Some((s, t)) = split.iter().find(|(s, t)| t > s || (*t == 0 && *s > 0)) {
            return Err(Error::domain(format!("no surjection from {s} onto {t} values")));
        }
        self.surjection_candidates = Some(split.iter().map(|&(s, t)| surjections(s, t)).product());
        Ok(self)
    }
}
