use std::collections::HashMap;

use serde::Serialize;

use super::{bit, bits, is_subset, ClassKind, ModCategory, Mask, SubcatError, SubcatSet};
use crate::lattice::{FinLattice, HasseArrow, LatticeError, Poset};
use crate::nakayama::{AlgebraSpec, Indec};

/// Torsion or torsion-free classes under inclusion.
#[derive(Debug, Clone)]
pub struct ClassLattice {
    kind: ClassKind,
    classes: Vec<Mask>,
    index: HashMap<Mask, usize>,
    lattice: FinLattice,
}

impl ClassLattice {
    pub fn build(cat: &ModCategory, kind: ClassKind, cap: usize) -> Result<Self, SubcatError> {
        let classes = cat.enumerate(kind, cap)?;
        Ok(Self::from_classes(kind, classes).expect("torsion classes form a lattice"))
    }

    /// Orders `classes` by inclusion; fails if that is not a lattice.
    pub fn from_classes(kind: ClassKind, classes: Vec<Mask>) -> Result<Self, LatticeError> {
        assert!(kind != ClassKind::Wide, "class lattices hold torsion or torsion-free classes");
        let poset = Poset::from_fn((0..classes.len()).collect(), |a, b| {
            is_subset(classes[a], classes[b])
        })?;
        let lattice = FinLattice::from_poset(poset)?;
        let index = classes.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Ok(Self { kind, classes, index, lattice })
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Mask] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> Mask {
        self.classes[i]
    }

    pub fn index_of(&self, c: Mask) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    /// Classes covering class `i`.
    pub fn covers(&self, i: usize) -> Vec<usize> {
        self.lattice.upper_covers(i).to_vec()
    }

    fn close(&self, cat: &ModCategory, c: Mask) -> Mask {
        match self.kind {
            ClassKind::Tors => cat.tors_closure(c),
            _ => cat.torf_closure(c),
        }
    }

    /// Covers of class `i` found without the order: the minimal classes among
    /// the closures of `t ∪ {e}` for `e ∉ t`.
    pub fn covers_by_closure(&self, cat: &ModCategory, i: usize) -> Vec<usize> {
        let t = self.classes[i];
        let mut cands: Vec<Mask> = bits(cat.full() & !t).map(|e| self.close(cat, t | bit(e))).collect();
        cands.sort_unstable();
        cands.dedup();
        let mut out: Vec<usize> = cands
            .iter()
            .filter(|&&c| !cands.iter().any(|&d| d != c && is_subset(d, c)))
            .map(|c| self.index[c])
            .collect();
        out.sort_unstable();
        out
    }

    /// Minimal (co-)extending modules of class `i`.
    pub fn extending(&self, cat: &ModCategory, i: usize) -> Result<Mask, SubcatError> {
        match self.kind {
            ClassKind::Tors => cat.minimal_extending(self.classes[i]),
            _ => cat.minimal_coextending(self.classes[i]),
        }
    }

    /// `Filt(t ∪ {b})`, i.e. `η_t(b)` or `ζ_f(b)`.
    pub fn extend_by(&self, cat: &ModCategory, i: usize, b: usize) -> Mask {
        cat.filt_closure(self.classes[i] | bit(b))
    }

    /// The brick labelling the Hasse arrow `src ⋗ dst`: the unique minimal
    /// (co-)extending module `b` of `dst` with `Filt(dst ∪ {b}) = src`.
    pub fn brick_label(&self, cat: &ModCategory, arrow: HasseArrow) -> Result<Option<usize>, SubcatError> {
        let target = self.classes[arrow.src];
        let mut found = bits(self.extending(cat, arrow.dst)?)
            .filter(|&b| self.extend_by(cat, arrow.dst, b) == target);
        let first = found.next();
        Ok(if found.next().is_some() { None } else { first })
    }

    pub fn to_json(&self, cat: &ModCategory) -> Result<ClassLatticeJson, SubcatError> {
        let arrows = self.lattice.hasse_arrows();
        let mut mu = Vec::with_capacity(arrows.len());
        let mut bricks = Vec::with_capacity(arrows.len());
        for &a in &arrows {
            mu.push(self.lattice.mu_label(a).ok());
            bricks.push(self.brick_label(cat, a)?.map(|b| cat.indec(b)));
        }
        Ok(ClassLatticeJson {
            algebra: cat.algebra().clone(),
            kind: self.kind,
            classes: self.classes.iter().map(|&c| cat.set(c)).collect(),
            covers: arrows.iter().map(|a| [a.dst, a.src]).collect(),
            mu,
            bricks,
        })
    }
}

/// Wire form of a class lattice: classes in canonical order, cover pairs
/// `[lower, upper]`, and per cover its μ label (a class index) and brick label.
#[derive(Debug, Clone, Serialize)]
pub struct ClassLatticeJson {
    pub algebra: AlgebraSpec,
    pub kind: ClassKind,
    pub classes: Vec<SubcatSet>,
    pub covers: Vec<[usize; 2]>,
    pub mu: Vec<Option<usize>>,
    pub bricks: Vec<Option<Indec>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin2() -> (ModCategory, ClassLattice) {
        let cat = ModCategory::new(AlgebraSpec::lin_a(2).unwrap(), 2).unwrap();
        let tl = ClassLattice::build(&cat, ClassKind::Tors, 22).unwrap();
        (cat, tl)
    }

    #[test]
    fn tamari_pentagon() {
        let (cat, tl) = lin2();
        // Canonical order: ∅, {S1}, {S2}, {S1, P1}, all.
        assert_eq!(tl.classes(), &[0, 1, 4, 3, 7]);
        assert_eq!(tl.lattice().hasse_arrows().len(), 5);
        assert_eq!(tl.covers(0), vec![1, 2]);
        assert_eq!(tl.covers(4), Vec::<usize>::new());
        assert_eq!(tl.covers(2), vec![4]);
        for i in 0..tl.len() {
            assert_eq!(tl.covers(i), tl.covers_by_closure(&cat, i));
        }
        let join = tl.lattice().bound(crate::lattice::BoundKind::Join, &[1, 2]).unwrap();
        assert_eq!(join, 4);
    }

    #[test]
    fn labels() {
        let (cat, tl) = lin2();
        let s1 = cat.index_of(Indec::simple(1)).unwrap();
        let p1 = cat.index_of(Indec::new(1, 2)).unwrap();
        let lab = |src, dst| tl.brick_label(&cat, HasseArrow { src, dst }).unwrap();
        assert_eq!(lab(1, 0), Some(s1));
        assert_eq!(lab(3, 1), Some(p1));
        assert_eq!(lab(4, 2), Some(s1));
        let json = tl.to_json(&cat).unwrap();
        assert_eq!(json.covers.len(), 5);
        assert!(json.bricks.iter().all(Option::is_some));
        assert_eq!(json.mu[0], Some(2));
    }
}
