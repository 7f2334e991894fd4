use rayon::prelude::*;

use super::{bit, ModCategory, Mask, SubcatError};
use crate::linrep::{
    decompose, extension_middles, hom_elements, kernel_cokernel, realize, OracleError,
};

/// Largest number of indecomposable summands on either side of a map
/// examined by the wideness test.
pub const WIDE_SUMMAND_BOUND: usize = 2;

/// Hom spaces with at most this many elements are enumerated in full;
/// larger ones contribute a basis and its pairwise sums.
const HOM_ELEMENT_CAP: usize = 4096;

const EXT_CLASS_CAP: usize = 256;

/// Summands of kernels and cokernels of all maps `X -> Y` for one pair of
/// direct sums, as unions over the maps examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapRecord {
    pub src: Mask,
    pub dst: Mask,
    /// `X` is a single indecomposable (not a sum of two copies).
    pub src_single: bool,
    pub dst_single: bool,
    pub ker: Mask,
    pub coker: Mask,
}

#[derive(Debug, Clone)]
pub struct MapTable {
    records: Vec<MapRecord>,
    oracle: bool,
    maps_examined: usize,
}

impl MapTable {
    /// Records every map between sums of at most [`WIDE_SUMMAND_BOUND`]
    /// indecomposables using the matrix oracle. If the oracle cannot split
    /// kernels for this algebra, falls back to the basis arrows between
    /// indecomposables, whose kernels and cokernels are read off directly.
    pub(super) fn build(cat: &ModCategory) -> Result<Self, SubcatError> {
        match Self::from_oracle(cat) {
            Err(SubcatError::Oracle(OracleError::Unsupported)) => Ok(Self::from_arrows(cat)),
            other => other,
        }
    }

    fn from_oracle(cat: &ModCategory) -> Result<Self, SubcatError> {
        let n = cat.len();
        let mut sums: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        if WIDE_SUMMAND_BOUND >= 2 {
            for a in 0..n {
                for b in a..n {
                    sums.push(vec![a, b]);
                }
            }
        }
        let alg = cat.algebra();
        let p = cat.field();
        let reps = sums
            .iter()
            .map(|s| realize(alg, &cat_members(cat, s), p))
            .collect::<Result<Vec<_>, _>>()?;
        let mask_of = |ms: &[crate::nakayama::Indec]| -> Result<Mask, SubcatError> {
            cat.mask(ms)
        };

        let per_source: Vec<Result<(Vec<MapRecord>, usize), SubcatError>> = (0..sums.len())
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                let mut examined = 0;
                let src = sums[i].iter().fold(0, |m, &k| m | bit(k));
                for (j, dst_sum) in sums.iter().enumerate() {
                    let nonzero = sums[i]
                        .iter()
                        .any(|&a| dst_sum.iter().any(|&b| cat.hom_nonzero(a, b)));
                    if !nonzero {
                        continue;
                    }
                    let dst = dst_sum.iter().fold(0, |m, &k| m | bit(k));
                    let mut ker = 0;
                    let mut coker = 0;
                    for f in hom_elements(&reps[i], &reps[j], HOM_ELEMENT_CAP)? {
                        let (k, c) = kernel_cokernel(&reps[i], &reps[j], &f)?;
                        ker |= mask_of(&decompose(&k)?)?;
                        coker |= mask_of(&decompose(&c)?)?;
                        examined += 1;
                    }
                    if (ker | coker) & !(src | dst) != 0 {
                        out.push(MapRecord {
                            src,
                            dst,
                            src_single: sums[i].len() == 1,
                            dst_single: dst_sum.len() == 1,
                            ker,
                            coker,
                        });
                    }
                }
                Ok((out, examined))
            })
            .collect();

        let mut records = Vec::new();
        let mut maps_examined = 0;
        for r in per_source {
            let (rs, k) = r?;
            records.extend(rs);
            maps_examined += k;
        }
        Ok(Self { records, oracle: true, maps_examined })
    }

    /// Nonzero maps between uniserials factor through their image, and a
    /// linear combination of basis arrows has the kernel of the arrow with
    /// the longest image, so the basis arrows already cover every map between
    /// two indecomposables.
    fn from_arrows(cat: &ModCategory) -> Self {
        let alg = cat.algebra();
        let mut records = Vec::new();
        let mut maps_examined = 0;
        for (a, &x) in cat.indecs().iter().enumerate() {
            for (b, &y) in cat.indecs().iter().enumerate() {
                for arrow in alg.hom_arrows(x, y) {
                    maps_examined += 1;
                    let idx = |m| cat.index_of(m).expect("kernel is an indecomposable");
                    let ker = arrow.kernel(alg).map_or(0, |m| bit(idx(m)));
                    let coker = arrow.cokernel().map_or(0, |m| bit(idx(m)));
                    if (ker | coker) & !(bit(a) | bit(b)) != 0 {
                        records.push(MapRecord {
                            src: bit(a),
                            dst: bit(b),
                            src_single: true,
                            dst_single: true,
                            ker,
                            coker,
                        });
                    }
                }
            }
        }
        Self { records, oracle: false, maps_examined }
    }

    /// Records whose kernel or cokernel leaves the support of the map.
    pub fn records(&self) -> &[MapRecord] {
        &self.records
    }

    /// Whether the table came from the matrix oracle rather than arrows.
    pub fn oracle_backed(&self) -> bool {
        self.oracle
    }

    pub fn maps_examined(&self) -> usize {
        self.maps_examined
    }

    /// Every recorded map with both ends in `c` has kernel and cokernel in `c`.
    pub fn closed(&self, c: Mask) -> bool {
        self.records
            .iter()
            .all(|r| (r.src | r.dst) & !c != 0 || (r.ker | r.coker) & !c == 0)
    }
}

fn cat_members(cat: &ModCategory, idx: &[usize]) -> Vec<crate::nakayama::Indec> {
    idx.iter().map(|&k| cat.indec(k)).collect()
}

/// For each ordered pair `(sub, quot)` of indecomposables, the union of the
/// summands of all nonsplit middle terms `0 -> sub -> X -> quot -> 0`.
#[derive(Debug, Clone)]
pub struct ExtTable {
    n: usize,
    middles: Vec<Mask>,
    dims: Vec<usize>,
    truncated: bool,
}

impl ExtTable {
    pub(super) fn build(cat: &ModCategory) -> Result<Self, SubcatError> {
        let n = cat.len();
        let cells: Vec<Result<(Mask, usize, bool), SubcatError>> = (0..n * n)
            .into_par_iter()
            .map(|cell| {
                let (sub, quot) = (cell / n, cell % n);
                let e = extension_middles(
                    cat.algebra(),
                    cat.indec(sub),
                    cat.indec(quot),
                    cat.field(),
                    EXT_CLASS_CAP,
                )?;
                let mut mask = 0;
                for m in &e.middles {
                    mask |= cat.mask(m)?;
                }
                Ok((mask, e.dim, e.truncated))
            })
            .collect();
        let mut middles = Vec::with_capacity(n * n);
        let mut dims = Vec::with_capacity(n * n);
        let mut truncated = false;
        for c in cells {
            let (m, d, t) = c?;
            middles.push(m);
            dims.push(d);
            truncated |= t;
        }
        Ok(Self { n, middles, dims, truncated })
    }

    pub fn middles(&self, sub: usize, quot: usize) -> Mask {
        self.middles[sub * self.n + quot]
    }

    /// `dim Ext^1(quot, sub)`.
    pub fn dim(&self, sub: usize, quot: usize) -> usize {
        self.dims[sub * self.n + quot]
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }
}
