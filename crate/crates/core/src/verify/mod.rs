//! Named checks over one algebra, each producing a [`CheckReport`].

mod checks;
mod workbench;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::nakayama::AlgebraSpec;
use crate::Error;

pub use workbench::Workbench;

/// How the kappa order compares elements; printed in every suite report.
pub const KAPPA_ORDER_READING: &str =
    "a <=_k b iff a <= b and ext_kappa(a) >= ext_kappa(b), ext_kappa = meet of kappa over the canonical join representation";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CheckId {
    #[serde(rename = "ORACLE")]
    Oracle,
    #[serde(rename = "SD")]
    Sd,
    #[serde(rename = "T5")]
    T5,
    #[serde(rename = "T1")]
    T1,
    #[serde(rename = "T2")]
    T2,
    #[serde(rename = "T6")]
    T6,
    #[serde(rename = "T11")]
    T11,
    #[serde(rename = "T8")]
    T8,
    #[serde(rename = "T9")]
    T9,
    #[serde(rename = "C2")]
    C2,
    #[serde(rename = "C3")]
    C3,
    #[serde(rename = "P2")]
    P2,
}

impl CheckId {
    /// Every check, in the order suites run them.
    pub const ALL: [CheckId; 12] = [
        CheckId::Oracle,
        CheckId::Sd,
        CheckId::T5,
        CheckId::T1,
        CheckId::T2,
        CheckId::T6,
        CheckId::T11,
        CheckId::T8,
        CheckId::T9,
        CheckId::C2,
        CheckId::C3,
        CheckId::P2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Oracle => "ORACLE",
            CheckId::Sd => "SD",
            CheckId::T5 => "T5",
            CheckId::T1 => "T1",
            CheckId::T2 => "T2",
            CheckId::T6 => "T6",
            CheckId::T11 => "T11",
            CheckId::T8 => "T8",
            CheckId::T9 => "T9",
            CheckId::C2 => "C2",
            CheckId::C3 => "C3",
            CheckId::P2 => "P2",
        }
    }

    /// Parses a comma-separated list, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<CheckId>, Error> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Self::ALL.to_vec());
        }
        let mut ids = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<CheckId>, _>>()?;
        ids.sort();
        ids.dedup();
        Ok(ids)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let id = match s.to_ascii_uppercase().as_str() {
            "ORACLE" => CheckId::Oracle,
            "SD" => CheckId::Sd,
            "T5" => CheckId::T5,
            "T1" => CheckId::T1,
            "T2" | "T18" | "T2/T18" => CheckId::T2,
            "T6" => CheckId::T6,
            "T11" => CheckId::T11,
            "T7" | "T8" | "T7/T8-FINITE" | "T8-FINITE" => CheckId::T8,
            "T9" => CheckId::T9,
            "C2" => CheckId::C2,
            "C3" => CheckId::C3,
            "P2" => CheckId::P2,
            _ => return Err(Error::UnknownCheck(s.to_string())),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub status: Status,
    pub counts: BTreeMap<String, Value>,
    /// The offending object on failure; some passing checks also attach the
    /// map they verified.
    pub witness: Option<Value>,
    /// Skip reasons and parts of the check that could not run.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub algebra: AlgebraSpec,
    pub kappa_order: &'static str,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

/// Accumulates counts and the first failure witness of one check.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    counts: BTreeMap<String, Value>,
    witness: Option<Value>,
    notes: Vec<String>,
    failed: bool,
}

impl Outcome {
    pub(crate) fn count(&mut self, key: &str, v: impl Into<Value>) {
        self.counts.insert(key.to_string(), v.into());
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Records a failure unless `ok`; only the first witness is kept.
    pub(crate) fn ensure(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        if !ok && !self.failed {
            self.failed = true;
            self.witness = Some(witness());
        }
        ok
    }

    pub(crate) fn attach(&mut self, witness: Value) {
        if !self.failed {
            self.witness = Some(witness);
        }
    }
}

impl Workbench {
    /// Runs one check. Enumeration caps turn into a skip; any other error is
    /// a failure whose witness is the error message.
    pub fn run_check(&self, id: CheckId) -> CheckReport {
        let start = Instant::now();
        let mut out = Outcome::default();
        let result = checks::run(self, id, &mut out);
        let status = match result {
            Ok(()) if out.failed => Status::Fail,
            Ok(()) => Status::Pass,
            Err(e) if e.is_cap_exceeded() => {
                out.note(format!("skipped: {e}"));
                Status::Skipped
            }
            Err(e) => {
                out.witness = Some(serde_json::json!({ "error": e.to_string() }));
                Status::Fail
            }
        };
        CheckReport {
            id,
            status,
            counts: out.counts,
            witness: out.witness,
            notes: out.notes,
            ms: start.elapsed().as_millis() as u64,
        }
    }

    /// Runs the given checks in canonical order.
    pub fn run_suite(&self, ids: &[CheckId]) -> SuiteReport {
        let mut ids = ids.to_vec();
        ids.sort();
        ids.dedup();
        SuiteReport {
            algebra: self.category().algebra().clone(),
            kappa_order: KAPPA_ORDER_READING,
            checks: ids.into_iter().map(|id| self.run_check(id)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ids_and_aliases() {
        assert_eq!("t18".parse::<CheckId>().unwrap(), CheckId::T2);
        assert_eq!("T7/T8-finite".parse::<CheckId>().unwrap(), CheckId::T8);
        assert_eq!(CheckId::parse_list("all").unwrap().len(), 12);
        assert_eq!(
            CheckId::parse_list("C3,T1,T2").unwrap(),
            vec![CheckId::T1, CheckId::T2, CheckId::C3]
        );
        assert!(matches!(CheckId::parse_list("T1,T99"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn lin2_suite_passes() {
        let wb = Workbench::new(AlgebraSpec::lin_a(2).unwrap(), Default::default()).unwrap();
        let report = wb.run_suite(&CheckId::ALL);
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        let t2 = report.checks.iter().find(|c| c.id == CheckId::T2).unwrap();
        assert_eq!(t2.counts["tors"], 5);
        assert_eq!(t2.counts["tors_covers"], 5);
        let t1 = report.checks.iter().find(|c| c.id == CheckId::T1).unwrap();
        assert_eq!(t1.witness.as_ref().unwrap().as_array().unwrap().len(), 5);
    }

    #[test]
    fn reports_are_deterministic() {
        let wb = Workbench::new("nakayama:linear:2,2,1".parse().unwrap(), Default::default()).unwrap();
        let strip = |mut r: SuiteReport| {
            r.checks.iter_mut().for_each(|c| c.ms = 0);
            r
        };
        let a = strip(wb.run_suite(&CheckId::ALL));
        let wb2 = Workbench::new("nakayama:linear:2,2,1".parse().unwrap(), Default::default()).unwrap();
        assert_eq!(a, strip(wb2.run_suite(&CheckId::ALL)));
    }
}
