//! Subcategories of `mod Λ` for a Nakayama algebra `Λ`, stored as bitmasks
//! over the indecomposables.
//!
//! Every class handled here (torsion, torsion-free, wide, filtration
//! closures) is closed under direct summands, so it is determined by its
//! indecomposable members.

mod classes;
mod enumerate;
mod maps;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linrep::OracleError;
use crate::nakayama::{AlgebraSpec, Indec};

pub use classes::{ClassLattice, ClassLatticeJson};
pub use enumerate::{ClassKind, DEFAULT_BRUTE_FORCE_CAP};
pub use maps::{ExtTable, MapRecord, MapTable, WIDE_SUMMAND_BOUND};

/// A set of indecomposables, bit `k` standing for the `k`-th indecomposable
/// of the category.
pub type Mask = u64;

/// Largest category a [`Mask`] can index.
pub const MAX_INDECS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubcatError {
    #[error("{0} indecomposables exceed the bitmask width of {MAX_INDECS}")]
    TooManyIndecs(usize),
    #[error("{count} objects exceed the enumeration cap {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("{0} is not an indecomposable of this algebra")]
    UnknownIndec(Indec),
    #[error("subcategory {0} is not closed under extensions")]
    NotExtensionClosed(String),
    #[error("subcategory {0} is not a torsion class")]
    NotTorsionClass(String),
    #[error("subcategory {0} is not a torsion-free class")]
    NotTorsionFreeClass(String),
    #[error("{brick} is not minimal extending for {class}")]
    NotMinimalExtending { brick: Indec, class: String },
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
}

/// Which side of a Hom-orthogonal to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `C^⊥ = {e | Hom(C, e) = 0}`
    Right,
    /// `^⊥C = {e | Hom(e, C) = 0}`
    Left,
}

/// Iterates the set bits of a mask, lowest first.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let k = m.trailing_zeros() as usize;
            m &= m - 1;
            k
        })
    })
}

#[inline]
pub const fn bit(k: usize) -> Mask {
    1 << k
}

#[inline]
pub const fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Canonical order on member sets: by size, then lexicographically on the
/// sorted list of member indices.
pub fn canonical_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| bits(a).cmp(bits(b)))
}

/// A subcategory given by its indecomposable members, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubcatSet {
    pub algebra: AlgebraSpec,
    pub members: Vec<Indec>,
}

impl SubcatSet {
    pub fn new(algebra: AlgebraSpec, mut members: Vec<Indec>) -> Self {
        members.sort();
        members.dedup();
        Self { algebra, members }
    }

    pub fn contains(&self, m: Indec) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for SubcatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubcatSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.members.len()))?;
        for m in &self.members {
            seq.serialize_element(m)?;
        }
        seq.end()
    }
}

/// The indecomposables of `mod Λ` with their quotient, submodule and Hom
/// incidence precomputed as masks.
#[derive(Debug)]
pub struct ModCategory {
    algebra: AlgebraSpec,
    p: u32,
    indecs: Vec<Indec>,
    index: HashMap<Indec, usize>,
    quot: Vec<Mask>,
    sub: Vec<Mask>,
    hom_out: Vec<Mask>,
    hom_in: Vec<Mask>,
    splits: Vec<Vec<(usize, usize)>>,
    by_len: Vec<usize>,
    bricks: Mask,
    maps: OnceLock<Result<MapTable, SubcatError>>,
    exts: OnceLock<Result<Option<ExtTable>, SubcatError>>,
}

impl ModCategory {
    /// Builds the category; `p` is the field used by oracle-backed tests.
    pub fn new(algebra: AlgebraSpec, p: u32) -> Result<Self, SubcatError> {
        if !crate::linrep::is_prime(p) {
            return Err(SubcatError::Oracle(OracleError::NotPrime(p)));
        }
        let indecs = algebra.indecomposables();
        let n = indecs.len();
        if n > MAX_INDECS {
            return Err(SubcatError::TooManyIndecs(n));
        }
        let index: HashMap<Indec, usize> =
            indecs.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let mask_of = |ms: Vec<Indec>| ms.iter().fold(0, |acc, m| acc | bit(index[m]));
        let quot = indecs.iter().map(|&m| mask_of(algebra.quotients(m, false))).collect();
        let sub = indecs.iter().map(|&m| mask_of(algebra.submodules(m, false))).collect();
        let mut hom_out = vec![0; n];
        let mut hom_in = vec![0; n];
        for (a, &x) in indecs.iter().enumerate() {
            for (b, &y) in indecs.iter().enumerate() {
                if algebra.hom_dim(x, y) > 0 {
                    hom_out[a] |= bit(b);
                    hom_in[b] |= bit(a);
                }
            }
        }
        let splits = indecs
            .iter()
            .map(|&m| {
                algebra
                    .splits(m)
                    .into_iter()
                    .map(|(q, s)| (index[&q], index[&s]))
                    .collect()
            })
            .collect();
        let mut by_len: Vec<usize> = (0..n).collect();
        by_len.sort_by_key(|&k| (indecs[k].len, k));
        let bricks = mask_of(indecs.iter().copied().filter(|&m| algebra.is_brick(m)).collect());
        Ok(Self {
            algebra,
            p,
            indecs,
            index,
            quot,
            sub,
            hom_out,
            hom_in,
            splits,
            by_len,
            bricks,
            maps: OnceLock::new(),
            exts: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn field(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn indecs(&self) -> &[Indec] {
        &self.indecs
    }

    pub fn indec(&self, k: usize) -> Indec {
        self.indecs[k]
    }

    pub fn index_of(&self, m: Indec) -> Result<usize, SubcatError> {
        self.index.get(&m).copied().ok_or(SubcatError::UnknownIndec(m))
    }

    pub fn full(&self) -> Mask {
        if self.len() == MAX_INDECS {
            Mask::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    pub fn bricks(&self) -> Mask {
        self.bricks
    }

    pub fn mask(&self, members: &[Indec]) -> Result<Mask, SubcatError> {
        members.iter().try_fold(0, |acc, &m| Ok(acc | bit(self.index_of(m)?)))
    }

    pub fn members(&self, m: Mask) -> Vec<Indec> {
        bits(m).map(|k| self.indecs[k]).collect()
    }

    pub fn set(&self, m: Mask) -> SubcatSet {
        SubcatSet::new(self.algebra.clone(), self.members(m))
    }

    pub fn set_mask(&self, s: &SubcatSet) -> Result<Mask, SubcatError> {
        self.mask(&s.members)
    }

    /// Human-readable member list, e.g. `{M(1,1), M(2,1)}`.
    pub fn label(&self, m: Mask) -> String {
        self.set(m).to_string()
    }

    pub fn hom_nonzero(&self, a: usize, b: usize) -> bool {
        self.hom_out[a] >> b & 1 == 1
    }

    /// Indecomposables receiving a nonzero map from `k`.
    pub fn hom_out(&self, k: usize) -> Mask {
        self.hom_out[k]
    }

    /// Indecomposables with a nonzero map into `k`.
    pub fn hom_in(&self, k: usize) -> Mask {
        self.hom_in[k]
    }

    /// All quotients of `k`, itself included.
    pub fn quotients(&self, k: usize) -> Mask {
        self.quot[k]
    }

    /// All submodules of `k`, itself included.
    pub fn submodules(&self, k: usize) -> Mask {
        self.sub[k]
    }

    /// Pairs `(quotient, submodule)` of the short exact sequences
    /// `0 -> sub -> M_k -> quot -> 0` with indecomposable ends.
    pub fn splits(&self, k: usize) -> &[(usize, usize)] {
        &self.splits[k]
    }

    /// Closure under indecomposable quotients. An indecomposable quotient of
    /// a sum of uniserials has simple top, so it is already a quotient of a
    /// single summand.
    pub fn gen_closure(&self, x: Mask) -> Mask {
        bits(x).fold(0, |acc, k| acc | self.quot[k])
    }

    pub fn sub_closure(&self, x: Mask) -> Mask {
        bits(x).fold(0, |acc, k| acc | self.sub[k])
    }

    /// `Filt(x)`: modules with a finite filtration whose factors lie in `x`.
    ///
    /// `M(i, l)` is filtered iff some quotient `M(i, t)` lies in `x` and the
    /// kernel `M(i + t, l - t)` is itself filtered; shorter modules are
    /// settled first.
    pub fn filt_closure(&self, x: Mask) -> Mask {
        let mut filt = 0;
        for &k in &self.by_len {
            if x >> k & 1 == 1
                || self.splits[k]
                    .iter()
                    .any(|&(q, s)| x >> q & 1 == 1 && filt >> s & 1 == 1)
            {
                filt |= bit(k);
            }
        }
        filt
    }

    pub fn filt_contains(&self, x: Mask, k: usize) -> bool {
        self.filt_closure(x) >> k & 1 == 1
    }

    /// `T(x) = Filt(Gen x)`, the smallest torsion class containing `x`.
    pub fn tors_closure(&self, x: Mask) -> Mask {
        let t = self.filt_closure(self.gen_closure(x));
        assert_eq!(
            self.filt_closure(self.gen_closure(t)),
            t,
            "torsion closure is not stable after one pass"
        );
        t
    }

    /// `F(x) = Filt(Sub x)`, the smallest torsion-free class containing `x`.
    pub fn torf_closure(&self, x: Mask) -> Mask {
        let f = self.filt_closure(self.sub_closure(x));
        assert_eq!(
            self.filt_closure(self.sub_closure(f)),
            f,
            "torsion-free closure is not stable after one pass"
        );
        f
    }

    pub fn is_extension_closed(&self, c: Mask) -> bool {
        self.filt_closure(c) == c
    }

    pub fn is_torsion_class(&self, c: Mask) -> bool {
        self.gen_closure(c) == c && self.is_extension_closed(c)
    }

    pub fn is_torsion_free_class(&self, c: Mask) -> bool {
        self.sub_closure(c) == c && self.is_extension_closed(c)
    }

    pub fn perp(&self, c: Mask, side: Side) -> Mask {
        let table = match side {
            Side::Right => &self.hom_out,
            Side::Left => &self.hom_in,
        };
        self.full() & !bits(c).fold(0, |acc, k| acc | table[k])
    }

    /// Objects of `c` that are simple in `c`: members admitting no short exact
    /// sequence with both ends nonzero and inside `c`.
    pub fn sim_in(&self, c: Mask) -> Result<Mask, SubcatError> {
        if !self.is_extension_closed(c) {
            return Err(SubcatError::NotExtensionClosed(self.label(c)));
        }
        Ok(self.sim_in_unchecked(c))
    }

    pub(crate) fn sim_in_unchecked(&self, c: Mask) -> Mask {
        bits(c)
            .filter(|&k| {
                !self.splits[k]
                    .iter()
                    .any(|&(q, s)| c >> q & 1 == 1 && c >> s & 1 == 1)
            })
            .fold(0, |acc, k| acc | bit(k))
    }

    /// Kernel and cokernel data of maps between small direct sums, built on
    /// first use.
    pub fn map_table(&self) -> Result<&MapTable, SubcatError> {
        self.maps
            .get_or_init(|| MapTable::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Extension middle terms between indecomposables, built on first use.
    /// `None` when the oracle cannot split middle terms for this algebra.
    pub fn ext_table(&self) -> Result<Option<&ExtTable>, SubcatError> {
        self.exts
            .get_or_init(|| match ExtTable::build(self) {
                Ok(t) => Ok(Some(t)),
                Err(SubcatError::Oracle(OracleError::Unsupported)) => Ok(None),
                Err(e) => Err(e),
            })
            .as_ref()
            .map(Option::as_ref)
            .map_err(Clone::clone)
    }

    /// Extension-closed and closed under kernels and cokernels of every map
    /// recorded in the [`MapTable`].
    pub fn is_wide(&self, c: Mask) -> Result<bool, SubcatError> {
        if !self.is_extension_closed(c) {
            return Ok(false);
        }
        Ok(self.map_table()?.closed(c))
    }

    /// Minimal extending modules of the torsion class `t`: bricks `b ∉ t`
    /// whose proper quotients lie in `t`, with `Hom(t, b) = 0`, and such that
    /// every nonsplit `0 -> b -> X -> T' -> 0` with `T'` an indecomposable of
    /// `t` has `X ∈ t`. The last condition needs extension data and is only
    /// imposed when [`Self::ext_table`] is available.
    pub fn minimal_extending(&self, t: Mask) -> Result<Mask, SubcatError> {
        let exts = self.ext_table()?;
        let mut out = 0;
        for b in bits(self.bricks & !t) {
            let proper = self.quot[b] & !bit(b);
            if !is_subset(proper, t) || self.hom_in[b] & t != 0 {
                continue;
            }
            if let Some(e) = exts {
                if !bits(t).all(|q| is_subset(e.middles(b, q), t)) {
                    continue;
                }
            }
            out |= bit(b);
        }
        Ok(out)
    }

    /// Minimal co-extending modules of the torsion-free class `f`, dual to
    /// [`Self::minimal_extending`].
    pub fn minimal_coextending(&self, f: Mask) -> Result<Mask, SubcatError> {
        let exts = self.ext_table()?;
        let mut out = 0;
        for b in bits(self.bricks & !f) {
            let proper = self.sub[b] & !bit(b);
            if !is_subset(proper, f) || self.hom_out[b] & f != 0 {
                continue;
            }
            if let Some(e) = exts {
                if !bits(f).all(|s| is_subset(e.middles(s, b), f)) {
                    continue;
                }
            }
            out |= bit(b);
        }
        Ok(out)
    }

    /// `η_t(b) = Filt(t ∪ {b})` for a minimal extending `b`.
    pub fn eta(&self, t: Mask, b: usize) -> Result<Mask, SubcatError> {
        if self.minimal_extending(t)? >> b & 1 == 0 {
            return Err(SubcatError::NotMinimalExtending {
                brick: self.indecs[b],
                class: self.label(t),
            });
        }
        Ok(self.filt_closure(t | bit(b)))
    }

    /// `ζ_f(b) = Filt(f ∪ {b})` for a minimal co-extending `b`.
    pub fn zeta(&self, f: Mask, b: usize) -> Result<Mask, SubcatError> {
        if self.minimal_coextending(f)? >> b & 1 == 0 {
            return Err(SubcatError::NotMinimalExtending {
                brick: self.indecs[b],
                class: self.label(f),
            });
        }
        Ok(self.filt_closure(f | bit(b)))
    }

    /// `α(t) = Filt(MCE(t^⊥))`.
    pub fn alpha(&self, t: Mask) -> Result<Mask, SubcatError> {
        if !self.is_torsion_class(t) {
            return Err(SubcatError::NotTorsionClass(self.label(t)));
        }
        Ok(self.filt_closure(self.minimal_coextending(self.perp(t, Side::Right))?))
    }

    /// `β(f) = Filt(ME(^⊥f))`.
    pub fn beta(&self, f: Mask) -> Result<Mask, SubcatError> {
        if !self.is_torsion_free_class(f) {
            return Err(SubcatError::NotTorsionFreeClass(self.label(f)));
        }
        Ok(self.filt_closure(self.minimal_extending(self.perp(f, Side::Left))?))
    }

    /// `α(t)` from its definition: members `X` of `t` such that every map
    /// `Y -> X` with `Y ∈ t` has kernel in `t`, with `Y` ranging over the
    /// sums recorded in the [`MapTable`].
    pub fn alpha_direct(&self, t: Mask) -> Result<Mask, SubcatError> {
        let table = self.map_table()?;
        Ok(bits(t)
            .filter(|&x| {
                table.records().iter().all(|r| {
                    r.dst != bit(x) || !r.dst_single || !is_subset(r.src, t) || is_subset(r.ker, t)
                })
            })
            .fold(0, |acc, x| acc | bit(x)))
    }

    /// `β(f)` from its definition, dual to [`Self::alpha_direct`].
    pub fn beta_direct(&self, f: Mask) -> Result<Mask, SubcatError> {
        let table = self.map_table()?;
        Ok(bits(f)
            .filter(|&x| {
                table.records().iter().all(|r| {
                    r.src != bit(x)
                        || !r.src_single
                        || !is_subset(r.dst, f)
                        || is_subset(r.coker, f)
                })
            })
            .fold(0, |acc, x| acc | bit(x)))
    }

    /// `t = T(MCE(t^⊥))`.
    pub fn is_widely_generated(&self, t: Mask) -> Result<bool, SubcatError> {
        let mce = self.minimal_coextending(self.perp(t, Side::Right))?;
        Ok(self.tors_closure(mce) == t)
    }

    /// `f = F(ME(^⊥f))`.
    pub fn is_widely_cogenerated(&self, f: Mask) -> Result<bool, SubcatError> {
        let me = self.minimal_extending(self.perp(f, Side::Left))?;
        Ok(self.torf_closure(me) == f)
    }

    /// Whether `t = T(M)` for one module `M`; the sum of all members of `t`
    /// is the largest candidate, so it decides the question.
    pub fn is_finitely_generated(&self, t: Mask) -> bool {
        self.tors_closure(t) == t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn lin2() -> ModCategory {
        ModCategory::new(AlgebraSpec::lin_a(2).unwrap(), 2).unwrap()
    }

    // Indices in linA:2: 0 = S1, 1 = P1, 2 = S2.
    const S1: Mask = 1;
    const P1: Mask = 2;
    const S2: Mask = 4;

    #[test]
    fn masks_and_labels() {
        let c = lin2();
        assert_eq!(c.len(), 3);
        assert_eq!(c.full(), 7);
        assert_eq!(c.mask(&[Indec::new(1, 2)]).unwrap(), P1);
        assert_eq!(c.label(S1 | S2), "{M(1,1), M(2,1)}");
        assert!(c.mask(&[Indec::new(2, 2)]).is_err());
        let json = serde_json::to_string(&c.set(P1 | S2)).unwrap();
        assert_eq!(json, r#"[{"top":1,"len":2},{"top":2,"len":1}]"#);
        assert_eq!(bits(0b1010).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(canonical_cmp(S2, S1 | P1), std::cmp::Ordering::Less);
        assert_eq!(canonical_cmp(S1 | S2, P1 | S2), std::cmp::Ordering::Less);
    }

    #[test]
    fn closures() {
        let c = lin2();
        assert_eq!(c.gen_closure(P1), P1 | S1);
        assert_eq!(c.sub_closure(P1), P1 | S2);
        assert_eq!(c.gen_closure(0), 0);
        assert!(c.filt_contains(S1 | S2, 1));
        assert!(!c.filt_contains(S1, 1));
        assert!(c.filt_contains(P1, 1));
        assert_eq!(c.tors_closure(S2), S2);
        assert_eq!(c.tors_closure(P1), P1 | S1);
        assert_eq!(c.tors_closure(S1 | S2), 7);
    }

    #[test]
    fn class_tests_and_perp() {
        let c = lin2();
        assert!(c.is_torsion_class(S1));
        assert!(!c.is_torsion_class(S2 | P1));
        assert!(c.is_torsion_class(7));
        assert!(c.is_torsion_free_class(S2 | P1));
        assert_eq!(c.perp(0, Side::Right), 7);
        assert_eq!(c.perp(S1, Side::Right), S2 | P1);
        assert_eq!(c.perp(7, Side::Right), 0);
        assert_eq!(c.perp(S2, Side::Left), S1 | P1);
    }

    #[test]
    fn simples_in_subcategories() {
        let c = lin2();
        assert_eq!(c.sim_in(7).unwrap(), S1 | S2);
        assert_eq!(c.sim_in(P1).unwrap(), P1);
        assert_eq!(c.sim_in(S2 | P1).unwrap(), S2 | P1);
        assert!(matches!(c.sim_in(S1 | S2), Err(SubcatError::NotExtensionClosed(_))));
    }

    #[test]
    fn wideness() {
        let c = lin2();
        assert!(c.is_wide(S1).unwrap());
        assert!(!c.is_wide(P1 | S1).unwrap());
        assert!(c.is_wide(P1).unwrap());
        assert!(c.is_wide(7).unwrap());
        assert!(c.is_wide(0).unwrap());
        assert!(!c.is_wide(P1 | S2).unwrap());
    }

    #[test]
    fn minimal_extending_examples() {
        let c = lin2();
        assert_eq!(c.minimal_extending(0).unwrap(), S1 | S2);
        assert_eq!(c.minimal_extending(S2).unwrap(), S1);
        // S2 fails: 0 -> S2 -> P1 -> S1 -> 0 leaves {S1}.
        assert_eq!(c.minimal_extending(S1).unwrap(), P1);
        assert_eq!(c.minimal_coextending(0).unwrap(), S1 | S2);
        assert_eq!(c.minimal_extending(7).unwrap(), 0);
    }

    #[test]
    fn eta_examples() {
        let c = lin2();
        assert_eq!(c.eta(0, 0).unwrap(), S1);
        assert_eq!(c.eta(S2, 0).unwrap(), 7);
        assert_eq!(c.eta(S1, 1).unwrap(), S1 | P1);
        assert!(c.eta(S1, 2).is_err());
        assert!(matches!(c.eta(S2, 1), Err(SubcatError::NotMinimalExtending { .. })));
    }

    #[test]
    fn alpha_beta_examples() {
        let c = lin2();
        assert_eq!(c.alpha(7).unwrap(), 7);
        assert_eq!(c.alpha(P1 | S1).unwrap(), P1);
        assert_eq!(c.alpha_direct(P1 | S1).unwrap(), P1);
        assert_eq!(c.beta(0).unwrap(), 0);
        assert!(c.alpha(S2 | P1).is_err());
    }

    #[test]
    fn generation() {
        let c = lin2();
        assert!(c.is_widely_generated(0).unwrap());
        for t in [0, S1, S2, S1 | P1, 7] {
            assert!(c.is_widely_generated(t).unwrap());
            assert!(c.is_finitely_generated(t));
        }
    }
}
