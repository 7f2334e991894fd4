use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::{bit, bits, canonical_cmp, ModCategory, Mask, SubcatError};

/// Default limit on the number of indecomposables for subset sweeps
/// (`2^22` candidate subsets).
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Tors,
    Torf,
    Wide,
}

impl ModCategory {
    pub fn is_of_kind(&self, kind: ClassKind, c: Mask) -> Result<bool, SubcatError> {
        Ok(match kind {
            ClassKind::Tors => self.is_torsion_class(c),
            ClassKind::Torf => self.is_torsion_free_class(c),
            ClassKind::Wide => self.is_wide(c)?,
        })
    }

    /// Tests every subset of the indecomposables; result in canonical order.
    pub fn enumerate_brute(&self, kind: ClassKind, cap: usize) -> Result<Vec<Mask>, SubcatError> {
        if self.len() > cap {
            return Err(SubcatError::TooLarge { count: self.len(), cap });
        }
        if kind == ClassKind::Wide {
            // Build the shared table once before the parallel sweep.
            self.map_table()?;
        }
        const CHUNK: u64 = 1 << 12;
        let total: u64 = 1 << self.len();
        let found: Result<Vec<Vec<Mask>>, SubcatError> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|k| {
                let mut out = Vec::new();
                for c in k * CHUNK..((k + 1) * CHUNK).min(total) {
                    if self.is_of_kind(kind, c)? {
                        out.push(c);
                    }
                }
                Ok(out)
            })
            .collect();
        let mut all: Vec<Mask> = found?.into_iter().flatten().collect();
        all.sort_by(|&a, &b| canonical_cmp(a, b));
        Ok(all)
    }

    /// Torsion (or torsion-free) classes reached from the zero class by
    /// repeatedly adjoining one indecomposable and closing. Every class `t`
    /// is reached this way by adjoining its members one at a time.
    pub fn enumerate_by_closure(&self, kind: ClassKind) -> Vec<Mask> {
        let close = |c: Mask| match kind {
            ClassKind::Tors => self.tors_closure(c),
            ClassKind::Torf => self.torf_closure(c),
            ClassKind::Wide => panic!("wide subcategories have no closure enumeration here"),
        };
        let mut seen: HashSet<Mask> = HashSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for e in bits(self.full() & !c) {
                let d = close(c | bit(e));
                if seen.insert(d) {
                    queue.push_back(d);
                }
            }
        }
        let mut all: Vec<Mask> = seen.into_iter().collect();
        all.sort_by(|&a, &b| canonical_cmp(a, b));
        all
    }

    /// Enumerates a kind of class: subset sweep when the category is within
    /// `cap`, otherwise closure generation (unavailable for wide).
    pub fn enumerate(&self, kind: ClassKind, cap: usize) -> Result<Vec<Mask>, SubcatError> {
        if self.len() <= cap || kind == ClassKind::Wide {
            self.enumerate_brute(kind, cap)
        } else {
            Ok(self.enumerate_by_closure(kind))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nakayama::AlgebraSpec;

    fn cat(spec: &str) -> ModCategory {
        ModCategory::new(spec.parse::<AlgebraSpec>().unwrap(), 2).unwrap()
    }

    #[test]
    fn catalan_counts_small() {
        for (n, count) in [(1, 2), (2, 5), (3, 14)] {
            let c = cat(&format!("linA:{n}"));
            let brute = c.enumerate_brute(ClassKind::Tors, 22).unwrap();
            assert_eq!(brute.len(), count);
            assert_eq!(brute, c.enumerate_by_closure(ClassKind::Tors));
            assert_eq!(brute[0], 0);
            assert_eq!(*brute.last().unwrap(), c.full());
        }
    }

    #[test]
    fn wide_counts_small() {
        assert_eq!(cat("linA:2").enumerate_brute(ClassKind::Wide, 22).unwrap().len(), 5);
        assert_eq!(cat("linA:3").enumerate_brute(ClassKind::Wide, 22).unwrap().len(), 14);
    }

    #[test]
    fn caps_are_enforced() {
        let c = cat("linA:3");
        assert_eq!(
            c.enumerate_brute(ClassKind::Tors, 5),
            Err(SubcatError::TooLarge { count: 6, cap: 5 })
        );
        assert_eq!(c.enumerate(ClassKind::Tors, 5).unwrap().len(), 14);
        assert!(c.enumerate(ClassKind::Wide, 5).is_err());
    }

    #[test]
    fn torf_matches_closure() {
        let c = cat("nakayama:linear:2,2,1");
        assert_eq!(
            c.enumerate_brute(ClassKind::Torf, 22).unwrap(),
            c.enumerate_by_closure(ClassKind::Torf)
        );
    }
}
