use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FinLattice, LatticeError, Poset};

/// Wire form of a finite lattice: the full order relation plus its covers,
/// each pair written `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub leq: Vec<[usize; 2]>,
    pub covers: Vec<[usize; 2]>,
}

impl LatticeJson {
    pub fn from_lattice(l: &FinLattice) -> Self {
        let n = l.len();
        let leq = (0..n)
            .flat_map(|a| (0..n).map(move |b| [a, b]))
            .filter(|&[a, b]| l.leq(a, b))
            .collect();
        let covers = l.hasse_arrows().into_iter().map(|h| [h.dst, h.src]).collect();
        Self { n, leq, covers }
    }

    /// Rebuilds the lattice, rejecting cover lists that disagree with `leq`.
    pub fn to_lattice(&self) -> Result<FinLattice, LatticeError> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[a, b]| (a, b)).collect();
        let l = FinLattice::build(self.n, &pairs)?;
        let mut covers = self.covers.clone();
        covers.sort_unstable();
        let mut expected: Vec<[usize; 2]> =
            l.hasse_arrows().into_iter().map(|h| [h.dst, h.src]).collect();
        expected.sort_unstable();
        if let Some(&[lo, hi]) = covers.iter().find(|c| !expected.contains(c)) {
            return Err(LatticeError::NotACover { src: hi, dst: lo });
        }
        if let Some(&[lo, hi]) = expected.iter().find(|c| !covers.contains(c)) {
            return Err(LatticeError::NotACover { src: hi, dst: lo });
        }
        Ok(l)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph with one node per element and one edge per cover, drawn from
/// the larger element to the smaller. `node_label` and `edge_label` are
/// optional decorations.
pub fn lattice_to_dot(
    l: &FinLattice,
    node_label: impl Fn(usize) -> String,
    edge_label: Option<&dyn Fn(usize, usize) -> String>,
) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for x in 0..l.len() {
        let _ = writeln!(out, "  n{x} [label=\"{}\"];", escape(&node_label(x)));
    }
    for h in l.hasse_arrows() {
        match edge_label {
            Some(f) => {
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [label=\"{}\"];",
                    h.src,
                    h.dst,
                    escape(&f(h.src, h.dst))
                );
            }
            None => {
                let _ = writeln!(out, "  n{} -> n{};", h.src, h.dst);
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT digraph of a poset's cover relation, nodes named by poset id.
pub fn poset_to_dot(p: &Poset, node_label: impl Fn(usize) -> String) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for a in 0..p.len() {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", p.id(a), escape(&node_label(p.id(a))));
    }
    for (lo, hi) in p.cover_pairs() {
        let _ = writeln!(out, "  n{} -> n{};", p.id(hi), p.id(lo));
    }
    out.push_str("}\n");
    out
}
