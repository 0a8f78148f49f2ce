//! JSON file formats. Every writer is deterministic: struct fields keep
//! declaration order and maps are sorted.

use fpknot_core::{
    standardize, AbelianInvariants, CosetTable, Generator, GroupOrder, SesReport, SimpleGraph,
    TriangleClass,
};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};

/// Coset table, columns ordered generators then inverses, cosets 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub alphabet: Vec<String>,
    pub index: usize,
    pub table: Vec<Vec<usize>>,
}

impl From<&CosetTable> for TableJson {
    fn from(t: &CosetTable) -> Self {
        TableJson {
            alphabet: t
                .alphabet()
                .iter()
                .map(|g| g.as_str().to_string())
                .collect(),
            index: t.index(),
            table: t.rows_one_based(),
        }
    }
}

impl TableJson {
    /// Rebuild a standardized table. The subgroup generators are not part
    /// of the format, so the result records none.
    pub fn to_table(&self) -> Result<CosetTable> {
        let alphabet = self
            .alphabet
            .iter()
            .map(|s| Generator::new(s.as_str()))
            .collect::<fpknot_core::Result<Vec<_>>>()?;
        if self.table.len() != self.index {
            return Err(CliError::Input(format!(
                "index {} but {} rows",
                self.index,
                self.table.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.index);
        for row in &self.table {
            let row = row
                .iter()
                .map(|&x| {
                    x.checked_sub(1)
                        .filter(|&x| x < self.index)
                        .map(|x| x as u32)
                        .ok_or_else(|| CliError::Input(format!("coset {x} out of range")))
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        let t = standardize(&alphabet, &[], &rows, 0)?;
        if t.index() != self.index {
            return Err(CliError::Input("table is not transitive".into()));
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesJson {
    pub delta: i64,
    pub group_order: usize,
    pub kernel_order: usize,
    pub quotient_ok: bool,
    pub split: bool,
}

impl From<&SesReport> for SesJson {
    fn from(r: &SesReport) -> Self {
        SesJson {
            delta: r.delta,
            group_order: r.group_order,
            kernel_order: r.kernel_order,
            quotient_ok: r.quotient_ok,
            split: r.split,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub invariant_factors: Vec<u64>,
}

impl From<&AbelianInvariants> for InvariantsJson {
    fn from(a: &AbelianInvariants) -> Self {
        InvariantsJson {
            invariant_factors: a.factors().to_vec(),
        }
    }
}

/// A finite order or the string `"infinite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderJson(pub GroupOrder);

impl Serialize for OrderJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            GroupOrder::Finite(n) => s.serialize_u64(n),
            GroupOrder::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for OrderJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(OrderJson(GroupOrder::Finite(n))),
            Raw::S(s) if s == "infinite" => Ok(OrderJson(GroupOrder::Infinite)),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad order `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub kind: String,
    pub dyck_order: OrderJson,
    pub coxeter_order: OrderJson,
}

impl From<&TriangleClass> for TriangleJson {
    fn from(c: &TriangleClass) -> Self {
        TriangleJson {
            kind: c.kind.as_str().to_string(),
            dyck_order: OrderJson(c.dyck_order),
            coxeter_order: OrderJson(c.coxeter_order),
        }
    }
}

/// Undirected graph, edges as sorted `[i, j]` pairs with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&SimpleGraph> for GraphJson {
    fn from(g: &SimpleGraph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(SimpleGraph::new(self.n, &edges)?)
    }
}

pub fn to_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
