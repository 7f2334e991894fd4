use super::bits::Bits;
use super::LatticeError;

/// Largest poset accepted by the generic isomorphism search.
pub const ISOMORPHISM_SEARCH_LIMIT: usize = 20;

/// A finite partial order on `0..len`, each element carrying an external id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<usize>,
    /// `down[a]` holds every `b` with `b <= a`.
    down: Vec<Bits>,
    up: Vec<Bits>,
}

impl Poset {
    /// Reflexive-transitive closure of the given pairs `(a, b)` meaning `a <= b`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut down: Vec<Bits> = (0..n)
            .map(|a| {
                let mut b = Bits::new(n);
                b.insert(a);
                b
            })
            .collect();
        for &(a, b) in pairs {
            if a >= n {
                return Err(LatticeError::UnknownElement(a));
            }
            if b >= n {
                return Err(LatticeError::UnknownElement(b));
            }
            down[b].insert(a);
        }
        for k in 0..n {
            let row = down[k].clone();
            for d in down.iter_mut() {
                if d.contains(k) {
                    d.union_with(&row);
                }
            }
        }
        Self::from_down_sets((0..n).collect(), down)
    }

    /// Builds from a relation closure supplied as a predicate; `leq(a, b)` must
    /// already be reflexive and transitive.
    pub fn from_fn(ids: Vec<usize>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, LatticeError> {
        let n = ids.len();
        let down = (0..n)
            .map(|a| {
                let mut b = Bits::new(n);
                for x in 0..n {
                    if leq(x, a) {
                        b.insert(x);
                    }
                }
                b
            })
            .collect();
        Self::from_down_sets(ids, down)
    }

    fn from_down_sets(ids: Vec<usize>, down: Vec<Bits>) -> Result<Self, LatticeError> {
        let n = down.len();
        let mut up: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        for (a, d) in down.iter().enumerate() {
            if !d.contains(a) {
                return Err(LatticeError::NotAPoset(a, a));
            }
            for b in d.iter() {
                up[b].insert(a);
                if b != a && down[b].contains(a) {
                    return Err(LatticeError::NotAPoset(a, b));
                }
            }
        }
        for a in 0..n {
            for b in down[a].iter() {
                if !down[b].is_subset(&down[a]) {
                    return Err(LatticeError::NotAPoset(b, a));
                }
            }
        }
        Ok(Self { ids, down, up })
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    /// External id of element `a` (the identity unless built from a sub-selection).
    pub fn id(&self, a: usize) -> usize {
        self.ids[a]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub(crate) fn down_set(&self, a: usize) -> &Bits {
        &self.down[a]
    }

    pub(crate) fn up_set(&self, a: usize) -> &Bits {
        &self.up[a]
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.down[a]
            .iter()
            .filter(|&b| b != a)
            .filter(|&b| !self.down[a].iter().any(|c| c != a && c != b && self.leq(b, c)))
            .collect()
    }

    /// All cover pairs `(lower, upper)` in index order of the upper element.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.lower_covers(a).into_iter().map(move |b| (b, a)))
            .collect()
    }

    /// Number of elements in a longest strict chain.
    pub fn longest_chain(&self) -> usize {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| self.down[a].count());
        let mut best = vec![0usize; self.len()];
        for &a in &order {
            best[a] = 1 + self.down[a]
                .iter()
                .filter(|&b| b != a)
                .map(|b| best[b])
                .max()
                .unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Checks that `map` (indices of `self` to indices of `other`) is an order
    /// isomorphism. On failure returns a pair `(a, b)` whose relation is not
    /// preserved or reflected, or `(a, a)` when `map` is not a bijection at `a`.
    pub fn check_isomorphism(&self, other: &Poset, map: &[usize]) -> Result<(), (usize, usize)> {
        if map.len() != self.len() || self.len() != other.len() {
            return Err((map.len(), other.len()));
        }
        let mut seen = vec![false; other.len()];
        for (a, &fa) in map.iter().enumerate() {
            if fa >= other.len() || seen[fa] {
                return Err((a, a));
            }
            seen[fa] = true;
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq(a, b) != other.leq(map[a], map[b]) {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

/// Searches for an order isomorphism `p -> q` by backtracking.
///
/// Returns `Ok(Some(map))` with `map[a]` the image of `a`, `Ok(None)` when
/// the posets are not isomorphic, and [`LatticeError::TooLarge`] above
/// [`ISOMORPHISM_SEARCH_LIMIT`] elements.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Result<Option<Vec<usize>>, LatticeError> {
    if p.len() != q.len() {
        return Ok(None);
    }
    if p.len() > ISOMORPHISM_SEARCH_LIMIT {
        return Err(LatticeError::TooLarge(p.len()));
    }
    let signature = |s: &Poset, a: usize| (s.down[a].count(), s.up[a].count());
    let mut ps: Vec<_> = (0..p.len()).map(|a| signature(p, a)).collect();
    let mut qs: Vec<_> = (0..q.len()).map(|a| signature(q, a)).collect();
    let (p_sig, q_sig) = (ps.clone(), qs.clone());
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return Ok(None);
    }

    fn extend(
        p: &Poset,
        q: &Poset,
        p_sig: &[(usize, usize)],
        q_sig: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let a = map.len();
        if a == p.len() {
            return true;
        }
        for b in 0..q.len() {
            if used[b] || p_sig[a] != q_sig[b] {
                continue;
            }
            let consistent = map.iter().enumerate().all(|(x, &fx)| {
                p.leq(x, a) == q.leq(fx, b) && p.leq(a, x) == q.leq(b, fx)
            });
            if !consistent {
                continue;
            }
            map.push(b);
            used[b] = true;
            if extend(p, q, p_sig, q_sig, map, used) {
                return true;
            }
            map.pop();
            used[b] = false;
        }
        false
    }

    let mut map = Vec::with_capacity(p.len());
    let mut used = vec![false; q.len()];
    Ok(extend(p, q, &p_sig, &q_sig, &mut map, &mut used).then_some(map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn closure_and_cycles() {
        let p = chain(4);
        assert!(p.leq(0, 3));
        assert!(!p.leq(3, 0));
        assert_eq!(p.lower_covers(3), vec![2]);
        assert_eq!(p.longest_chain(), 4);
        assert!(matches!(
            Poset::from_pairs(2, &[(0, 1), (1, 0)]),
            Err(LatticeError::NotAPoset(..))
        ));
        assert!(matches!(
            Poset::from_pairs(2, &[(0, 5)]),
            Err(LatticeError::UnknownElement(5))
        ));
    }

    #[test]
    fn isomorphism_search() {
        let empty = Poset::from_pairs(0, &[]).unwrap();
        assert_eq!(poset_isomorphic(&empty, &empty).unwrap(), Some(vec![]));
        let antichain = Poset::from_pairs(2, &[]).unwrap();
        assert_eq!(poset_isomorphic(&chain(2), &antichain).unwrap(), None);
        // A 2+1 poset relabelled.
        let a = Poset::from_pairs(3, &[(0, 1)]).unwrap();
        let b = Poset::from_pairs(3, &[(2, 0)]).unwrap();
        let map = poset_isomorphic(&a, &b).unwrap().unwrap();
        assert!(a.check_isomorphism(&b, &map).is_ok());
        assert!(matches!(
            poset_isomorphic(&chain(21), &chain(21)),
            Err(LatticeError::TooLarge(21))
        ));
    }
}
