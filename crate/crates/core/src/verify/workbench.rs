use std::sync::OnceLock;

use crate::brick;
use crate::config::RunConfig;
use crate::nakayama::AlgebraSpec;
use crate::subcat::{ClassKind, ClassLattice, ModCategory, Mask};
use crate::Error;

type Cached<T> = OnceLock<Result<T, Error>>;

fn get<T>(cell: &Cached<T>, f: impl FnOnce() -> Result<T, Error>) -> Result<&T, Error> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

/// One algebra together with its enumerations, each computed on first use
/// and shared by all checks.
#[derive(Debug)]
pub struct Workbench {
    config: RunConfig,
    cat: ModCategory,
    tors: Cached<ClassLattice>,
    torf: Cached<ClassLattice>,
    wide: Cached<Vec<Mask>>,
    semibricks: Cached<Vec<Mask>>,
    monobricks: Cached<Vec<Mask>>,
    cc_monobricks: Cached<Vec<Mask>>,
}

impl Workbench {
    pub fn new(algebra: AlgebraSpec, config: RunConfig) -> Result<Self, Error> {
        let cat = ModCategory::new(algebra, config.field)?;
        Ok(Self {
            config,
            cat,
            tors: OnceLock::new(),
            torf: OnceLock::new(),
            wide: OnceLock::new(),
            semibricks: OnceLock::new(),
            monobricks: OnceLock::new(),
            cc_monobricks: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn category(&self) -> &ModCategory {
        &self.cat
    }

    pub fn tors(&self) -> Result<&ClassLattice, Error> {
        get(&self.tors, || Ok(ClassLattice::build(&self.cat, ClassKind::Tors, self.config.max_indecs)?))
    }

    pub fn torf(&self) -> Result<&ClassLattice, Error> {
        get(&self.torf, || Ok(ClassLattice::build(&self.cat, ClassKind::Torf, self.config.max_indecs)?))
    }

    pub fn wide(&self) -> Result<&[Mask], Error> {
        get(&self.wide, || Ok(self.cat.enumerate_brute(ClassKind::Wide, self.config.max_indecs)?))
            .map(Vec::as_slice)
    }

    pub fn semibricks(&self) -> Result<&[Mask], Error> {
        get(&self.semibricks, || Ok(brick::enumerate_semibricks(&self.cat, self.config.max_indecs)?))
            .map(Vec::as_slice)
    }

    pub fn monobricks(&self) -> Result<&[Mask], Error> {
        get(&self.monobricks, || Ok(brick::enumerate_monobricks(&self.cat, self.config.max_indecs)?))
            .map(Vec::as_slice)
    }

    pub fn cc_monobricks(&self) -> Result<&[Mask], Error> {
        get(&self.cc_monobricks, || {
            let mut out = Vec::new();
            for &m in self.monobricks()? {
                if brick::is_cofinally_closed(&self.cat, m)? {
                    out.push(m);
                }
            }
            Ok(out)
        })
        .map(Vec::as_slice)
    }
}
