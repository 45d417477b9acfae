//! Tabular outputs for the non-verification subcommands.

use std::fmt::Write as _;

use halphen::chilean::ChileanData;
use halphen::invariants::{char2_code, chilean_arrangements, degenerate_arrangements, enumerator_string, harbourne_chilean, harbourne_degenerate, log_chern, stated_arrangements};
use halphen::piclattice::{chilean_lattice, enumerate_minus1_generative, index3_lattice, table_rows};
use serde::Serialize;

use crate::config::Format;

/// A table with string cells, rendered as JSON records, CSV or aligned text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let recs: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|r| self.header.iter().cloned().zip(r.iter().map(|c| serde_json::Value::String(c.clone()))).collect())
                    .collect();
                let mut s = serde_json::to_string_pretty(&recs).expect("table serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|j| self.rows.iter().map(|r| r[j].chars().count()).chain([self.header[j].len()]).max().unwrap_or(0))
                    .collect();
                let mut s = String::new();
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    let _ = writeln!(s, "{}", cells.join("  ").trim_end());
                }
                s
            }
        }
    }
}

/// The 144 (-1)-classes: coefficients on e_0..e_9, degree, n, v_C, u_C and whether the row splits.
pub fn minus1() -> halphen::Result<Table> {
    let l = chilean_lattice()?;
    let g = enumerate_minus1_generative(&l)?;
    let mut t = Table::new(&["e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9", "deg", "n", "v_C", "u_C", "split"]);
    for r in table_rows(&g, &l)? {
        let mut row: Vec<String> = r.class.0.iter().map(|c| c.to_string()).collect();
        row.extend([r.deg.to_string(), r.n.to_string(), r.v_c.to_string(), r.u_c.to_string(), r.split.to_string()]);
        t.rows.push(row);
    }
    Ok(t)
}

/// The (-2)-classes of either lattice with their fiber.
pub fn minus2(index3: bool) -> halphen::Result<Table> {
    let l = if index3 { index3_lattice()? } else { chilean_lattice()? };
    let mut t = Table::new(&["column", "fiber", "e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"]);
    for (f, fib) in l.fibers().iter().enumerate() {
        for &j in fib {
            let mut row = vec![(j + 1).to_string(), (f + 1).to_string()];
            row.extend(l.minus2()[j].0.iter().map(|c| c.to_string()));
            t.rows.push(row);
        }
    }
    Ok(t)
}

fn counts(t: &std::collections::BTreeMap<usize, usize>) -> String {
    t.iter().map(|(n, c)| format!("t{n}={c}")).collect::<Vec<_>>().join(" ")
}

/// Stated and geometric log Chern data of the arrangements, and the Harbourne constants.
pub fn invariants() -> halphen::Result<Table> {
    let sym = ChileanData::symbolic()?;
    let [c, a1] = chilean_arrangements(&sym)?;
    let [a0, a2, a3] = degenerate_arrangements()?;
    let geo = [c.combinatorics()?, a0.combinatorics()?, a1.combinatorics()?, a2.combinatorics()?, a3.combinatorics()?];
    let mut t = Table::new(&["arrangement", "source", "t_n", "c1^2", "c2", "slope", "consistent"]);
    for ((name, stated, _), g) in stated_arrangements().iter().zip(&geo) {
        for (source, combo) in [("stated", stated.clone()), ("geometry", g.clone())] {
            let lc = log_chern(&combo, 9, 3);
            t.rows.push(vec![
                name.to_string(),
                source.to_string(),
                counts(&combo.t_counts),
                lc.c1sq.to_string(),
                lc.c2.to_string(),
                lc.slope().map_or("-".into(), |s| s.to_string()),
                combo.is_consistent().to_string(),
            ]);
        }
    }
    for (name, h) in [("harbourne configuration", harbourne_chilean()?), ("harbourne degenerate", harbourne_degenerate()?)] {
        t.rows.push(vec![name.into(), "geometry".into(), "-".into(), "-".into(), "-".into(), h.to_string(), "-".into()]);
    }
    Ok(t)
}

#[derive(Serialize)]
struct CodeReport {
    field: String,
    a: String,
    dimension: usize,
    weight_enumerator: String,
    coefficients: Vec<u64>,
}

/// The characteristic-2 code over GF(4^k).
pub fn code(k: usize, format: Format) -> halphen::Result<String> {
    let c = char2_code(k)?;
    let r = CodeReport {
        field: c.field.clone(),
        a: c.a.clone(),
        dimension: c.code.dimension,
        weight_enumerator: enumerator_string(&c.weight_enumerator),
        coefficients: c.weight_enumerator.clone(),
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
        Format::Csv => {
            let mut t = Table::new(&["weight", "count"]);
            for (w, n) in r.coefficients.iter().enumerate().filter(|(_, n)| **n > 0) {
                t.rows.push(vec![w.to_string(), n.to_string()]);
            }
            t.render(Format::Csv)
        }
        Format::Text => format!("{} with a = {}\ndimension {}\n{}\n", r.field, r.a, r.dimension, r.weight_enumerator),
    })
}

/// Which polynomials an export lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportPart {
    All,
    Conics,
    Lines,
    Sextic,
}

/// The symbolic configuration: JSON for everything, one polynomial per line for text.
pub fn export(part: ExportPart, format: Format) -> halphen::Result<String> {
    let d = ChileanData::symbolic()?;
    let text = |v: Vec<String>| v.join("\n") + "\n";
    Ok(match (part, format) {
        (ExportPart::All, _) | (_, Format::Json) => serde_json::to_string_pretty(&d.export()?).expect("export serializes") + "\n",
        (ExportPart::Conics, _) => text(d.conics().iter().map(|c| c.to_string()).collect()),
        (ExportPart::Lines, _) => {
            let nodes = d.fiber_nodes()?;
            text(d.dual_hesse_lines(&nodes)?.iter().map(|l| l.to_string()).collect())
        }
        (ExportPart::Sextic, _) => text(vec![d.special_members()?.sextic.to_string()]),
    })
}
