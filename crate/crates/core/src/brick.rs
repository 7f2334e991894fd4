//! Bricks, semibricks and monobricks.
//!
//! A semibrick is a set of pairwise Hom-orthogonal bricks. A monobrick is a
//! set of bricks in which every nonzero map between members is injective;
//! injectivity is read off the basis arrows, since two maps with the same
//! source and target can differ in whether they are injective.

use serde::Serialize;
use thiserror::Error;

use crate::nakayama::{AlgebraSpec, Indec};
use crate::subcat::{bit, bits, canonical_cmp, ModCategory, Mask, SubcatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrickError {
    #[error("{0} is not a brick")]
    NotABrick(Indec),
    #[error("{0} is not a semibrick")]
    NotSemibrick(String),
    #[error("{0} is not a monobrick")]
    NotMonobrick(String),
    #[error("{count} bricks exceed the enumeration cap {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error(transparent)]
    Subcat(#[from] SubcatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BrickKind {
    #[serde(rename = "semibrick")]
    Semibrick,
    #[serde(rename = "monobrick")]
    Monobrick,
    #[serde(rename = "cc-monobrick")]
    CcMonobrick,
}

/// A set of bricks tagged with the property it was produced for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrickSet {
    #[serde(skip)]
    pub algebra: AlgebraSpec,
    pub kind: BrickKind,
    pub members: Vec<Indec>,
}

impl BrickSet {
    pub fn new(cat: &ModCategory, kind: BrickKind, m: Mask) -> Self {
        Self { algebra: cat.algebra().clone(), kind, members: cat.members(m) }
    }
}

fn require_bricks(cat: &ModCategory, m: Mask) -> Result<(), BrickError> {
    match bits(m & !cat.bricks()).next() {
        Some(k) => Err(BrickError::NotABrick(cat.indec(k))),
        None => Ok(()),
    }
}

/// `a` and `b` admit only injective maps between them, in both directions.
fn mono_compatible(cat: &ModCategory, a: usize, b: usize) -> bool {
    let (x, y) = (cat.indec(a), cat.indec(b));
    let alg = cat.algebra();
    alg.hom_arrows(x, y).iter().all(|h| h.is_injective())
        && alg.hom_arrows(y, x).iter().all(|h| h.is_injective())
}

pub fn is_semibrick(cat: &ModCategory, m: Mask) -> Result<bool, BrickError> {
    require_bricks(cat, m)?;
    Ok(bits(m).all(|a| cat.hom_out(a) & m == bit(a)))
}

pub fn is_monobrick(cat: &ModCategory, m: Mask) -> Result<bool, BrickError> {
    require_bricks(cat, m)?;
    Ok(bits(m).all(|a| bits(m).all(|b| mono_compatible(cat, a, b))))
}

/// All subsets of the bricks whose members are pairwise `compatible`, found as
/// the cliques of the compatibility graph.
fn cliques(cat: &ModCategory, cap: usize, compatible: impl Fn(usize, usize) -> bool) -> Result<Vec<Mask>, BrickError> {
    let bricks: Vec<usize> = bits(cat.bricks()).collect();
    if bricks.len() > cap {
        return Err(BrickError::TooLarge { count: bricks.len(), cap });
    }
    let mut adj = vec![0 as Mask; cat.len()];
    for &a in &bricks {
        for &b in &bricks {
            if a != b && compatible(a, b) {
                adj[a] |= bit(b);
            }
        }
    }
    fn grow(current: Mask, candidates: Mask, adj: &[Mask], out: &mut Vec<Mask>) {
        out.push(current);
        for b in bits(candidates) {
            let later = candidates & !((bit(b) << 1) - 1);
            grow(current | bit(b), later & adj[b], adj, out);
        }
    }
    let mut out = Vec::new();
    grow(0, cat.bricks(), &adj, &mut out);
    out.sort_by(|&a, &b| canonical_cmp(a, b));
    Ok(out)
}

pub fn enumerate_semibricks(cat: &ModCategory, cap: usize) -> Result<Vec<Mask>, BrickError> {
    cliques(cat, cap, |a, b| !cat.hom_nonzero(a, b) && !cat.hom_nonzero(b, a))
}

pub fn enumerate_monobricks(cat: &ModCategory, cap: usize) -> Result<Vec<Mask>, BrickError> {
    cliques(cat, cap, |a, b| mono_compatible(cat, a, b))
}

/// A monobrick is cofinally closed when no brick outside it can be added
/// while keeping a monobrick and injecting into a member. A proper cofinal
/// extension contains such a brick, so single additions decide the question.
pub fn is_cofinally_closed(cat: &ModCategory, m: Mask) -> Result<bool, BrickError> {
    if !is_monobrick(cat, m)? {
        return Err(BrickError::NotMonobrick(cat.label(m)));
    }
    let alg = cat.algebra();
    Ok(!bits(cat.bricks() & !m).any(|b| {
        bits(m).all(|a| mono_compatible(cat, a, b))
            && bits(m).any(|a| {
                alg.hom_arrows(cat.indec(b), cat.indec(a)).iter().any(|h| h.is_injective())
            })
    }))
}

pub fn enumerate_cc_monobricks(cat: &ModCategory, cap: usize) -> Result<Vec<Mask>, BrickError> {
    let mut out = Vec::new();
    for m in enumerate_monobricks(cat, cap)? {
        if is_cofinally_closed(cat, m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// `Φ(S)`: the objects simple in the torsion-free class `F(S)`.
pub fn phi(cat: &ModCategory, s: Mask) -> Result<Mask, BrickError> {
    if !is_semibrick(cat, s)? {
        return Err(BrickError::NotSemibrick(cat.label(s)));
    }
    Ok(cat.sim_in(cat.torf_closure(s))?)
}
