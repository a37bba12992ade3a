use serde::{Deserialize, Serialize};

use crate::ir::ResourceReport;

/// One row of a resource table: a subcircuit, how often it appears, and its cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceRow {
    pub name: String,
    pub count: String,
    pub resources: ResourceReport,
}

fn row(name: &str, count: String, gcx: usize, rz: usize, x: usize, h: usize, depth: usize) -> ResourceRow {
    ResourceRow {
        name: name.into(),
        count,
        resources: ResourceReport { gcx, rz, x, h, depth, ..Default::default() },
    }
}

/// Closed-form upper bounds for one plaquette evolution at dimension d with AND gating and
/// the full Z_2 × Z_d^4 rotation block. The last row is the whole plaquette.
pub fn qudit_resource_formulas(d: usize) -> Vec<ResourceRow> {
    let d4 = d.pow(4);
    let n = (d - 1).pow(4);
    vec![
        row("CC", "x1".into(), 2 * d4 + 4, 2 * d4, 1, 0, 4 * d4 + 5),
        row("AND", "x2".into(), 10, 0, 0, 0, 10),
        row("X-parity", "x2".into(), 3, 0, 0, 4, 3),
        row("term", format!("x{n}"), 2 * d4 + 30, 2 * d4, 1, 8, 4 * d4 + 31),
        row("plaquette", String::new(), n * (2 * d4 + 30), 2 * n * d4, n, 8 * n, n * (4 * d4 + 31)),
    ]
}

/// Qutrit plaquette table for the three-input ∨ and the corrected 82-word rotation block.
pub fn qutrit_resource_table() -> Vec<ResourceRow> {
    vec![
        row("CC", "x1".into(), 94, 82, 0, 0, 176),
        row("OR3", "x2".into(), 6, 0, 1, 0, 6),
        row("X-parity", "x2".into(), 3, 0, 0, 4, 3),
        row("term", "x16".into(), 112, 82, 2, 8, 194),
        row("plaquette", String::new(), 1792, 1312, 32, 128, 3104),
    ]
}
