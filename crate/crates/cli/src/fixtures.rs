//! Expected tables shipped with the binary. A group stores the w-partition
//! as the tail after its first part; instantiating at n puts n - sum(tail)
//! in front, and shapes that fail to be partitions at small n are dropped.

use polaris_core::{Error, FrobeniusSeries, Partition, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct Group {
    pub w_tail: Vec<u32>,
    pub mults: Vec<(Vec<u32>, u64)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TheoremFixture {
    pub source: String,
    #[allow(dead_code)]
    pub note: Option<String>,
    pub entries: Vec<TheoremEntry>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TheoremEntry {
    pub kind: String,
    pub degree: u32,
    pub gen: String,
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilyFixture {
    pub source: String,
    pub family: String,
    #[allow(dead_code)]
    pub note: Option<String>,
    pub rows: Vec<FamilyRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilyRow {
    pub n: u32,
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableFixture {
    pub source: String,
    pub degree: u32,
    pub n: u32,
    #[allow(dead_code)]
    pub note: Option<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub gens: Vec<String>,
    #[serde(default)]
    pub gating: bool,
    /// Generators whose module is known to shrink at the fixture's n.
    /// Maps the generator to a one-line explanation carried into reports.
    #[serde(default)]
    pub degenerate: std::collections::BTreeMap<String, String>,
    pub groups: Vec<Group>,
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, raw: &str) -> Result<T> {
    serde_json::from_str(raw).map_err(|e| Error::Parse {
        input: name.to_string(),
        reason: format!("fixture does not deserialize: {e}"),
    })
}

pub fn theorem41() -> Result<TheoremFixture> {
    parse("theorem41.json", include_str!("../fixtures/theorem41.json"))
}

pub fn table1() -> Result<FamilyFixture> {
    parse("table1.json", include_str!("../fixtures/table1.json"))
}

pub fn table2() -> Result<TableFixture> {
    parse("table2.json", include_str!("../fixtures/table2.json"))
}

pub fn table3() -> Result<TableFixture> {
    parse("table3.json", include_str!("../fixtures/table3.json"))
}

/// Instantiates fixture groups at a concrete column count.
pub fn expand(groups: &[Group], n: u32) -> FrobeniusSeries {
    let mut entries = Vec::new();
    for group in groups {
        let tail_sum: u32 = group.w_tail.iter().sum();
        if tail_sum > n {
            continue;
        }
        let head = n - tail_sum;
        if group.w_tail.first().is_some_and(|&top| head < top) {
            continue;
        }
        let mut parts = Vec::with_capacity(group.w_tail.len() + 1);
        if head > 0 {
            parts.push(head);
        }
        parts.extend_from_slice(&group.w_tail);
        let lambda = Partition::new(parts);
        for (mu_parts, b) in &group.mults {
            entries.push(((lambda.clone(), Partition::new(mu_parts.clone())), *b));
        }
    }
    FrobeniusSeries::new(n, entries)
}
