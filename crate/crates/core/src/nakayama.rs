//! Nakayama algebras and their uniserial modules.
//!
//! Vertices are numbered `1..=n` and the quiver has arrows `i -> i+1`
//! (plus `n -> 1` in the cyclic case). The indecomposable `M(i, l)` has
//! top `S_i` and composition factors `S_i, S_{i+1}, ..., S_{i+l-1}` read
//! from top to socle, so its submodules are the tails of that sequence and
//! its quotients are the heads.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid Kupisch series {kupisch:?}: {reason}")]
    InvalidKupisch { kupisch: Vec<usize>, reason: String },
    #[error("cannot parse algebra `{0}` (expected `linA:<n>` or `nakayama:<linear|cyclic>:<c1,...,cn>`)")]
    Parse(String),
    #[error("{0} is not an indecomposable module of this algebra")]
    InvalidIndec(Indec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Linear,
    Cyclic,
}

/// A Nakayama algebra given by the shape of its quiver and its Kupisch series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    shape: Shape,
    kupisch: Vec<usize>,
}

/// Default upper bound on cyclic Kupisch entries, as a function of `n`.
pub fn default_cyclic_bound(n: usize) -> usize {
    2 * n + 1
}

impl AlgebraSpec {
    pub fn new(shape: Shape, kupisch: Vec<usize>) -> Result<Self, AlgebraError> {
        let bound = default_cyclic_bound(kupisch.len());
        Self::with_cyclic_bound(shape, kupisch, bound)
    }

    pub fn with_cyclic_bound(
        shape: Shape,
        kupisch: Vec<usize>,
        cyclic_bound: usize,
    ) -> Result<Self, AlgebraError> {
        let bad = |reason: String| AlgebraError::InvalidKupisch {
            kupisch: kupisch.clone(),
            reason,
        };
        let n = kupisch.len();
        if n == 0 {
            return Err(bad("empty series".into()));
        }
        match shape {
            Shape::Linear => {
                for (i, &c) in kupisch.iter().enumerate() {
                    if c == 0 || c > n - i {
                        return Err(bad(format!("c_{} = {c} must lie in 1..={}", i + 1, n - i)));
                    }
                }
                if kupisch[n - 1] != 1 {
                    return Err(bad("last entry must be 1".into()));
                }
                for i in 0..n - 1 {
                    if kupisch[i + 1] + 1 < kupisch[i] {
                        return Err(bad(format!("c_{} < c_{} - 1", i + 2, i + 1)));
                    }
                }
            }
            Shape::Cyclic => {
                for (i, &c) in kupisch.iter().enumerate() {
                    if c < 2 || c > cyclic_bound {
                        return Err(bad(format!(
                            "c_{} = {c} must lie in 2..={cyclic_bound}",
                            i + 1
                        )));
                    }
                }
                for i in 0..n {
                    if kupisch[(i + 1) % n] + 1 < kupisch[i] {
                        return Err(bad(format!(
                            "c_{} < c_{} - 1",
                            (i + 1) % n + 1,
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { shape, kupisch })
    }

    /// The path algebra of the linearly oriented `A_n` quiver.
    pub fn lin_a(n: usize) -> Result<Self, AlgebraError> {
        Self::new(Shape::Linear, (1..=n).rev().collect())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn kupisch(&self) -> &[usize] {
        &self.kupisch
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.kupisch.len()
    }

    pub fn is_hereditary_linear(&self) -> bool {
        self.shape == Shape::Linear
            && self.kupisch.iter().enumerate().all(|(i, &c)| c == self.n() - i)
    }

    /// Length of the indecomposable projective at vertex `i` (1-based).
    pub fn projective_len(&self, i: usize) -> usize {
        self.kupisch[i - 1]
    }

    /// Vertex reached from `i` after `k` arrows, or `None` when the linear
    /// quiver runs out.
    pub fn step(&self, i: usize, k: usize) -> Option<usize> {
        let n = self.n();
        match self.shape {
            Shape::Linear => (i + k <= n).then_some(i + k),
            Shape::Cyclic => Some((i - 1 + k) % n + 1),
        }
    }

    pub fn contains(&self, m: Indec) -> bool {
        m.top >= 1 && m.top <= self.n() && m.len >= 1 && m.len <= self.projective_len(m.top)
    }

    /// All indecomposables, ordered by top vertex and then by length.
    pub fn indecomposables(&self) -> Vec<Indec> {
        (1..=self.n())
            .flat_map(|i| (1..=self.projective_len(i)).map(move |l| Indec::new(i, l)))
            .collect()
    }

    /// Basis of `Hom(m, x)`: one arrow per admissible image length.
    ///
    /// Every nonzero map between uniserials is a quotient onto `M(m.top, t)`
    /// followed by the inclusion of the length-`t` submodule of `x`, which
    /// exists exactly when that submodule has top `m.top`.
    pub fn hom_arrows(&self, m: Indec, x: Indec) -> Vec<HomArrow> {
        (1..=m.len.min(x.len))
            .filter(|&t| self.step(x.top, x.len - t) == Some(m.top))
            .map(|t| HomArrow { src: m, dst: x, t })
            .collect()
    }

    pub fn hom_dim(&self, m: Indec, x: Indec) -> usize {
        self.hom_arrows(m, x).len()
    }

    /// Quotients `M(i, t)` of `M(i, l)`, shortest first.
    pub fn quotients(&self, m: Indec, proper: bool) -> Vec<Indec> {
        let top = if proper { m.len - 1 } else { m.len };
        (1..=top).map(|t| Indec::new(m.top, t)).collect()
    }

    /// Submodules `M(i + l - t, t)` of `M(i, l)`, shortest first.
    pub fn submodules(&self, m: Indec, proper: bool) -> Vec<Indec> {
        let top = if proper { m.len - 1 } else { m.len };
        (1..=top)
            .map(|t| Indec::new(self.step(m.top, m.len - t).expect("submodule vertex"), t))
            .collect()
    }

    /// Splits `M(i, l)` as an extension of its quotient `M(i, t)` by its
    /// submodule `M(i + t, l - t)`, for every `t` in `1..l`.
    pub fn splits(&self, m: Indec) -> Vec<(Indec, Indec)> {
        (1..m.len)
            .map(|t| {
                let sub_top = self.step(m.top, t).expect("submodule vertex");
                (Indec::new(m.top, t), Indec::new(sub_top, m.len - t))
            })
            .collect()
    }

    pub fn is_brick(&self, m: Indec) -> bool {
        self.hom_dim(m, m) == 1
    }

    /// Composition factors (as vertices) of `m`, top first.
    pub fn composition_factors(&self, m: Indec) -> Vec<usize> {
        (0..m.len)
            .map(|k| self.step(m.top, k).expect("composition factor"))
            .collect()
    }

    pub fn dim_vector(&self, m: Indec) -> Vec<usize> {
        let mut dims = vec![0; self.n()];
        for v in self.composition_factors(m) {
            dims[v - 1] += 1;
        }
        dims
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_hereditary_linear() {
            return write!(f, "linA:{}", self.n());
        }
        let shape = match self.shape {
            Shape::Linear => "linear",
            Shape::Cyclic => "cyclic",
        };
        let series: Vec<String> = self.kupisch.iter().map(|c| c.to_string()).collect();
        write!(f, "nakayama:{shape}:{}", series.join(","))
    }
}

impl FromStr for AlgebraSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = || AlgebraError::Parse(s.to_string());
        let s = s.trim();
        if let Some(n) = s.strip_prefix("linA:") {
            let n: usize = n.trim().parse().map_err(|_| parse_err())?;
            return Self::lin_a(n);
        }
        let rest = s.strip_prefix("nakayama:").ok_or_else(parse_err)?;
        let (shape, series) = rest.split_once(':').ok_or_else(parse_err)?;
        let shape = match shape {
            "linear" => Shape::Linear,
            "cyclic" => Shape::Cyclic,
            _ => return Err(parse_err()),
        };
        let kupisch = series
            .split(',')
            .map(|c| c.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| parse_err())?;
        Self::new(shape, kupisch)
    }
}

impl Serialize for AlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An indecomposable (uniserial) module, identified by top vertex and length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Indec {
    pub top: usize,
    pub len: usize,
}

impl Indec {
    pub const fn new(top: usize, len: usize) -> Self {
        Self { top, len }
    }

    pub const fn simple(top: usize) -> Self {
        Self { top, len: 1 }
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.top, self.len)
    }
}

/// A basis morphism between uniserials, determined by its image length `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomArrow {
    pub src: Indec,
    pub dst: Indec,
    pub t: usize,
}

impl HomArrow {
    pub fn is_injective(&self) -> bool {
        self.t == self.src.len
    }

    pub fn is_surjective(&self) -> bool {
        self.t == self.dst.len
    }

    /// Kernel of the arrow, if nonzero.
    pub fn kernel(&self, algebra: &AlgebraSpec) -> Option<Indec> {
        (self.t < self.src.len).then(|| {
            Indec::new(
                algebra.step(self.src.top, self.t).expect("kernel vertex"),
                self.src.len - self.t,
            )
        })
    }

    /// Cokernel of the arrow, if nonzero.
    pub fn cokernel(&self) -> Option<Indec> {
        (self.t < self.dst.len).then(|| Indec::new(self.dst.top, self.dst.len - self.t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: usize) -> Indec {
        Indec::simple(i)
    }

    #[test]
    fn parses_grammar() {
        let a: AlgebraSpec = "linA:3".parse().unwrap();
        assert_eq!(a.kupisch(), &[3, 2, 1]);
        let b: AlgebraSpec = "nakayama:linear:3,2,1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "linA:3");
        let c: AlgebraSpec = "nakayama:cyclic:3,3".parse().unwrap();
        assert_eq!(c.shape(), Shape::Cyclic);
        assert_eq!(c.to_string(), "nakayama:cyclic:3,3");
        assert!(matches!("linA:x".parse::<AlgebraSpec>(), Err(AlgebraError::Parse(_))));
        assert!(matches!("foo".parse::<AlgebraSpec>(), Err(AlgebraError::Parse(_))));
    }

    #[test]
    fn rejects_bad_kupisch() {
        assert!(AlgebraSpec::new(Shape::Linear, vec![2, 2]).is_err());
        assert!(AlgebraSpec::new(Shape::Linear, vec![3, 1, 1]).is_err());
        assert!(AlgebraSpec::new(Shape::Linear, vec![2, 2, 1]).is_ok());
        assert!(AlgebraSpec::new(Shape::Cyclic, vec![1, 2]).is_err());
        assert!(AlgebraSpec::new(Shape::Cyclic, vec![4, 2]).is_err());
        assert!(AlgebraSpec::new(Shape::Cyclic, vec![6, 6]).is_err());
        assert!(AlgebraSpec::with_cyclic_bound(Shape::Cyclic, vec![6, 6], 6).is_ok());
        assert!(AlgebraSpec::lin_a(0).is_err());
    }

    #[test]
    fn indecomposable_lists() {
        let a = AlgebraSpec::lin_a(2).unwrap();
        assert_eq!(
            a.indecomposables(),
            vec![Indec::new(1, 1), Indec::new(1, 2), Indec::new(2, 1)]
        );
        assert_eq!(AlgebraSpec::lin_a(3).unwrap().indecomposables().len(), 6);
        let c: AlgebraSpec = "nakayama:cyclic:3,3".parse().unwrap();
        assert_eq!(c.indecomposables().len(), 6);
    }

    #[test]
    fn hom_dims_small() {
        let a = AlgebraSpec::lin_a(2).unwrap();
        let p1 = Indec::new(1, 2);
        assert_eq!(a.hom_dim(p1, s(2)), 0);
        let arrows = a.hom_arrows(s(2), p1);
        assert_eq!(arrows.len(), 1);
        assert_eq!(arrows[0].t, 1);
        assert!(arrows[0].is_injective());
        assert!(!arrows[0].is_surjective());
        assert_eq!(a.hom_dim(p1, s(1)), 1);

        let c: AlgebraSpec = "nakayama:cyclic:3,3".parse().unwrap();
        let m = Indec::new(1, 3);
        let ts: Vec<usize> = c.hom_arrows(m, m).iter().map(|h| h.t).collect();
        assert_eq!(ts, vec![1, 3]);
        assert!(!c.is_brick(m));
        assert!(c.is_brick(Indec::new(1, 2)));
    }

    #[test]
    fn factors_of_p1() {
        let a = AlgebraSpec::lin_a(2).unwrap();
        let p1 = Indec::new(1, 2);
        assert_eq!(a.quotients(p1, false), vec![s(1), p1]);
        assert_eq!(a.submodules(p1, false), vec![s(2), p1]);
        assert!(a.quotients(s(1), true).is_empty());
        assert_eq!(a.splits(p1), vec![(s(1), s(2))]);
    }

    #[test]
    fn brick_rules() {
        for n in 1..=5 {
            let a = AlgebraSpec::lin_a(n).unwrap();
            assert!(a.indecomposables().into_iter().all(|m| a.is_brick(m)));
        }
        for series in [vec![3, 3], vec![2, 2, 2], vec![4, 3, 3], vec![5, 5]] {
            let c = AlgebraSpec::new(Shape::Cyclic, series).unwrap();
            for m in c.indecomposables() {
                assert_eq!(c.is_brick(m), m.len <= c.n(), "{m}");
            }
        }
    }

    #[test]
    fn arrow_kernels_and_cokernels() {
        let a = AlgebraSpec::lin_a(3).unwrap();
        let arrow = HomArrow { src: Indec::new(1, 3), dst: Indec::new(1, 2), t: 2 };
        assert_eq!(arrow.kernel(&a), Some(Indec::new(3, 1)));
        assert_eq!(arrow.cokernel(), None);
    }
}
