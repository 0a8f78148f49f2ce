use std::time::Instant;

use fpknot_core::{enumerate, EnumLimits, EnumStats, Enumeration, Presentation, Word};
use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// Enumeration limits plus counters accumulated over one command.
#[derive(Debug)]
pub struct Ctx {
    pub limits: EnumLimits,
    pub stats: Stats,
    started: Instant,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub enumerations: usize,
    pub cosets_defined: usize,
    pub merges: usize,
    pub max_live: usize,
}

impl Stats {
    pub fn absorb(&mut self, s: &EnumStats) {
        self.enumerations += 1;
        self.cosets_defined += s.defined;
        self.merges += s.merges;
        self.max_live = self.max_live.max(s.max_live);
    }

    pub fn merge(&mut self, other: &Stats) {
        self.enumerations += other.enumerations;
        self.cosets_defined += other.cosets_defined;
        self.merges += other.merges;
        self.max_live = self.max_live.max(other.max_live);
    }
}

impl Ctx {
    pub fn new(limits: EnumLimits) -> Self {
        Ctx {
            limits,
            stats: Stats::default(),
            started: Instant::now(),
        }
    }

    pub fn enumerate(&mut self, p: &Presentation, subgroup: &[Word]) -> Result<Enumeration> {
        let e = enumerate(p, subgroup, self.limits)?;
        self.stats.absorb(&e.stats);
        Ok(e)
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.started.elapsed().as_secs_f64() * 1e3
    }
}

#[derive(Debug, Serialize)]
pub struct ReportStats {
    #[serde(flatten)]
    pub counts: Stats,
    /// The only field that differs between runs.
    pub wall_time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub params: Value,
    pub result: Value,
    pub stats: ReportStats,
}

impl Report {
    pub fn new(command: Vec<String>, params: Value, result: Value, ctx: &Ctx) -> Self {
        Report {
            command,
            params,
            result,
            stats: ReportStats {
                counts: ctx.stats,
                wall_time_ms: ctx.elapsed_ms(),
            },
        }
    }
}
