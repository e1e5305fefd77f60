//! Isomorphism, automorphism and epimorphism search.
//!
//! Isomorphisms are grown one value at a time. After each new pair the map is
//! checked to still be a partial isomorphism: every operation applied to
//! already-mapped arguments must agree with the map wherever the result is
//! mapped too, and must land outside the current range where it is not. A map
//! failing this has no extension to an isomorphism, so the branch is dropped.

use crate::algebra::congruence::{enumerate_congruences, factor_matrix, CongruenceOptions};
use crate::algebra::hom::check_signatures;
use crate::algebra::{MapKind, ValueMap};
use crate::budget::Budget;
use crate::error::{Error, Partial, Result};
use crate::matrix::{Matrix, Value};

/// Effort spent by an isomorphism search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsoStats {
    /// Partial maps that were checked.
    pub partial_maps: u64,
    /// Individual table lookups performed while checking.
    pub operations: u64,
}

struct IsoSearch<'a> {
    m1: &'a Matrix,
    m2: &'a Matrix,
    ops: Vec<(usize, usize)>,
    forward: Vec<Option<Value>>,
    backward: Vec<Option<Value>>,
    order: Vec<Value>,
    limit: usize,
    found: Vec<ValueMap>,
    stats: IsoStats,
}

impl IsoSearch<'_> {
    /// Checks all tuples over mapped values, `v` being the latest.
    fn partial_iso(&mut self, v: Value) -> bool {
        self.stats.partial_maps += 1;
        let mapped: Vec<Value> = self
            .order
            .iter()
            .copied()
            .filter(|u| self.forward[u.index()].is_some())
            .collect();
        for &(i, j) in &self.ops {
            let (op1, op2) = (self.m1.op(i), self.m2.op(j));
            let r = op1.arity();
            if r == 0 {
                continue;
            }
            let mut idx = vec![0usize; r];
            let mut args = vec![mapped[0]; r];
            let mut images = vec![v; r];
            'tuples: loop {
                // tuples without `v` matter too: their result may be `v`, or
                // their image the new value of `v`
                for k in 0..r {
                    images[k] = self.forward[args[k].index()].unwrap();
                }
                self.stats.operations += 2;
                let lhs = op1.eval(&args);
                let rhs = op2.eval(&images);
                match self.forward[lhs.index()] {
                    Some(image) if image != rhs => return false,
                    None if self.backward[rhs.index()].is_some() => return false,
                    _ => {}
                }
                // next tuple over `mapped`
                let mut k = r;
                loop {
                    if k == 0 {
                        break 'tuples;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < mapped.len() {
                        args[k] = mapped[idx[k]];
                        break;
                    }
                    idx[k] = 0;
                    args[k] = mapped[0];
                }
            }
        }
        true
    }

    fn extend(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            let mapping = self.forward.iter().map(|v| v.unwrap()).collect();
            self.found.push(ValueMap::unchecked(
                self.m1.name(),
                self.m2.name(),
                mapping,
                MapKind::Iso,
            ));
            return;
        }
        let v = self.order[depth];
        for w in self.m2.values() {
            if self.backward[w.index()].is_some() || self.m1.designates(v) != self.m2.designates(w) {
                continue;
            }
            self.forward[v.index()] = Some(w);
            self.backward[w.index()] = Some(v);
            if self.partial_iso(v) {
                self.extend(depth + 1);
            }
            self.forward[v.index()] = None;
            self.backward[w.index()] = None;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// Up to `limit` isomorphisms from `m1` to `m2`, in search order (values of
/// `m1` in declaration order, candidate images in declaration order).
pub fn isomorphisms_with_stats(m1: &Matrix, m2: &Matrix, limit: usize) -> (Vec<ValueMap>, IsoStats) {
    if m1.len() != m2.len() || m1.designated_count() != m2.designated_count() {
        return (Vec::new(), IsoStats::default());
    }
    let Ok(op_map) = check_signatures(m1, m2) else {
        return (Vec::new(), IsoStats::default());
    };
    let mut search = IsoSearch {
        m1,
        m2,
        ops: op_map.into_iter().enumerate().collect(),
        forward: vec![None; m1.len()],
        backward: vec![None; m2.len()],
        order: m1.values().collect(),
        limit,
        found: Vec::new(),
        stats: IsoStats::default(),
    };
    search.extend(0);
    (search.found, search.stats)
}

/// The first isomorphism in search order, if any.
pub fn find_isomorphism(m1: &Matrix, m2: &Matrix) -> Option<ValueMap> {
    isomorphisms_with_stats(m1, m2, 1).0.pop()
}

/// Every automorphism of `m`, identity first.
pub fn automorphisms(m: &Matrix) -> Vec<ValueMap> {
    isomorphisms_with_stats(m, m, usize::MAX).0
}

/// Options for [`find_epimorphisms`].
#[derive(Clone, Debug)]
pub struct EpiOptions {
    pub find_all: bool,
    pub budget: Budget,
    pub jobs: usize,
}

impl Default for EpiOptions {
    fn default() -> Self {
        EpiOptions {
            find_all: false,
            budget: Budget::default(),
            jobs: 1,
        }
    }
}

/// Epimorphisms from `m1` onto `m2`, one per congruence of `m1` whose factor
/// is isomorphic to `m2`, each the projection followed by that isomorphism.
///
/// An empty result means no epimorphism exists: every epimorphism factors
/// through the congruence its fibres form.
pub fn find_epimorphisms(m1: &Matrix, m2: &Matrix, options: &EpiOptions) -> Result<Vec<ValueMap>> {
    if m2.len() > m1.len() || m2.designated_count() > m1.designated_count() || check_signatures(m1, m2).is_err() {
        return Ok(Vec::new());
    }
    let congruence_options = CongruenceOptions {
        include_identity: m1.len() == m2.len(),
        classes: Some(m2.len()),
        budget: options.budget,
        jobs: options.jobs,
        ..Default::default()
    };
    let (congruences, exhausted) = match enumerate_congruences(m1, &congruence_options) {
        Ok(c) => (c, None),
        Err(Error::BudgetExhausted {
            cause,
            partial: Partial::Congruences(c),
        }) => (c, Some(cause)),
        Err(e) => return Err(e),
    };
    let mut found = Vec::new();
    for c in &congruences {
        let designated_blocks = c.partition().blocks().iter().filter(|b| m1.designates(b[0])).count();
        if designated_blocks != m2.designated_count() {
            continue;
        }
        let (factor, projection) = factor_matrix(m1, c)?;
        if let Some(iso) = find_isomorphism(&factor, m2) {
            let mut epi = projection.then(&iso)?;
            epi.kind = if m1.len() == m2.len() {
                MapKind::Iso
            } else {
                MapKind::Epi
            };
            found.push(epi);
            if !options.find_all {
                break;
            }
        }
    }
    match exhausted {
        Some(cause) if found.is_empty() || options.find_all => Err(Error::BudgetExhausted {
            cause,
            partial: Partial::Epimorphisms(found),
        }),
        _ => Ok(found),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{classify, induced_partition, is_strong_homomorphism};
    use crate::builtins::{ac2, bool2, fc, fde, nc};

    #[test]
    fn trivial_automorphism_groups() {
        for m in [nc(), fde(), bool2()] {
            let autos = automorphisms(&m);
            assert_eq!(autos, vec![ValueMap::identity(&m)], "{}", m.name());
        }
    }

    #[test]
    fn fde_and_ac2_are_not_isomorphic() {
        assert!(find_isomorphism(&fde(), &ac2()).is_none());
    }

    #[test]
    fn fc_onto_nc() {
        let (fc, nc) = (fc(), nc());
        let epis = find_epimorphisms(&fc, &nc, &EpiOptions::default()).unwrap();
        assert_eq!(epis.len(), 1);
        let epi = &epis[0];
        assert_eq!(epi.kind, MapKind::Epi);
        assert!(is_strong_homomorphism(&fc, &nc, epi).unwrap().holds());
        assert_eq!(induced_partition(epi).len(), 9);
        assert_eq!(classify(&fc, &nc, epi).unwrap().unwrap().kind, MapKind::Epi);
    }

    #[test]
    fn no_epimorphism_onto_a_bigger_matrix() {
        assert!(find_epimorphisms(&fde(), &nc(), &EpiOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn stats_are_counted() {
        let (autos, stats) = isomorphisms_with_stats(&nc(), &nc(), usize::MAX);
        assert_eq!(autos.len(), 1);
        assert!(stats.partial_maps > 0 && stats.operations > 0);
    }
}
