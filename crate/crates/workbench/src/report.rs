//! Serializable report records.

use linset_core::fields::FieldTower;
use linset_core::linsets::{hypersurface_points, l_prime, LinearSet, SubspaceFamily};
use linset_core::ringline::RingPoint;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail { counterexample: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub t: u32,
    #[serde(flatten)]
    pub status: Status,
    pub cases: u64,
    pub witnesses: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail { .. })
    }

    pub fn skipped_for_budget(&self) -> bool {
        matches!(&self.status, Status::Skipped { reason } if reason.starts_with("budget"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub q: u32,
    pub t: u32,
    pub beta: String,
    pub scattered: bool,
    pub pseudoregulus: bool,
    pub orbit_id: Option<usize>,
}

impl CensusRow {
    pub const CSV_HEADER: &'static str = "q,t,beta_qpoly,scattered,pseudoregulus";

    pub fn csv(&self) -> String {
        format!("{},{},{},{},{}", self.q, self.t, self.beta, self.scattered, self.pseudoregulus)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearSetReport {
    pub q: u32,
    pub t: u32,
    #[serde(rename = "T")]
    pub ring_point: String,
    pub scattered: bool,
    pub size: usize,
    pub points: Vec<String>,
    pub l_prime_size: usize,
    pub hypersurface_size: usize,
}

impl LinearSetReport {
    pub fn new(tower: &FieldTower, t: &RingPoint) -> LinearSetReport {
        let b = LinearSet::of(tower, t);
        let theta = linset_core::linsets::theta(tower.t(), tower.q() as u64) as usize;
        let lp = l_prime(tower, t);
        LinearSetReport {
            q: tower.q(),
            t: tower.t(),
            ring_point: t.encode(tower).replace('\n', "/"),
            scattered: b.len() == theta,
            size: b.len(),
            points: b.points().iter().map(|p| p.encode(tower)).collect(),
            l_prime_size: lp.len(),
            hypersurface_size: hypersurface_points(tower, &SubspaceFamily::first(tower, t)).len(),
        }
    }
}
