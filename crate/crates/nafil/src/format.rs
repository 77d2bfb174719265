//! The plain-text table format, streaming readers, and report emission.
//!
//! A table document is the order on one line followed by the rows, entries
//! space-separated. `#` starts a comment line; one or more blank lines
//! separate tables in a stream. Writing is canonical (no comments, no
//! trailing spaces), so write-then-read reproduces the table byte-exactly.

use std::io::BufRead;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{PropertyReport, Verdict};
use crate::table::LoopTable;

/// Serializes a table canonically: order line, then one line per row.
pub fn write_table(t: &LoopTable) -> String {
    let rows: Vec<Vec<u8>> = t.rows().map(|r| r.to_vec()).collect();
    write_rows(t.order(), &rows)
}

/// Same layout for a raw (possibly invalid) matrix.
pub fn write_rows(n: usize, rows: &[Vec<u8>]) -> String {
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Streaming reader: yields one table per blank-line-separated record.
pub struct TableReader<R> {
    reader: R,
    line_no: usize,
}

impl<R: BufRead> TableReader<R> {
    pub fn new(reader: R) -> Self {
        TableReader { reader, line_no: 0 }
    }

    fn read_line(&mut self) -> Result<Option<String>> {
        let mut buf = String::new();
        let bytes = self.reader.read_line(&mut buf).map_err(|e| Error::Format {
            line: self.line_no + 1,
            msg: e.to_string(),
        })?;
        if bytes == 0 {
            return Ok(None);
        }
        self.line_no += 1;
        Ok(Some(buf.trim_end_matches(['\n', '\r']).to_string()))
    }

    /// Next non-comment line; `skip_blank` controls whether blank lines are
    /// separators (between tables) or errors (inside one).
    fn next_data_line(&mut self, skip_blank: bool) -> Result<Option<String>> {
        loop {
            let Some(line) = self.read_line()? else {
                return Ok(None);
            };
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            if trimmed.is_empty() {
                if skip_blank {
                    continue;
                }
                return Err(Error::Format {
                    line: self.line_no,
                    msg: "blank line inside a table".to_string(),
                });
            }
            return Ok(Some(trimmed.to_string()));
        }
    }

    fn parse_entries(&self, line: &str) -> Result<Vec<u8>> {
        line.split_whitespace()
            .map(|tok| {
                let v: usize = tok.parse().map_err(|_| Error::Format {
                    line: self.line_no,
                    msg: format!("`{tok}` is not an integer"),
                })?;
                u8::try_from(v).map_err(|_| Error::Format {
                    line: self.line_no,
                    msg: format!("entry {v} is too large (maximum order is 255)"),
                })
            })
            .collect()
    }

    fn read_one(&mut self) -> Result<Option<LoopTable>> {
        let Some(header) = self.next_data_line(true)? else {
            return Ok(None);
        };
        let n: usize = header.trim().parse().map_err(|_| Error::Format {
            line: self.line_no,
            msg: format!("expected a table order, found `{}`", header.trim()),
        })?;
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::Format {
                line: self.line_no,
                msg: format!("table order {n} is out of range 1..=255"),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let Some(line) = self.next_data_line(false)? else {
                return Err(Error::Format {
                    line: self.line_no,
                    msg: format!("table truncated: expected {n} rows, found {}", rows.len()),
                });
            };
            rows.push(self.parse_entries(&line)?);
        }
        LoopTable::build(n, &rows).map(Some)
    }
}

impl<R: BufRead> Iterator for TableReader<R> {
    type Item = Result<LoopTable>;

    fn next(&mut self) -> Option<Self::Item> {
        self.read_one().transpose()
    }
}

/// Parses the first table in `text`.
pub fn read_table(text: &str) -> Result<LoopTable> {
    read_tables(text)?.into_iter().next().ok_or(Error::Format {
        line: 0,
        msg: "no table found in input".to_string(),
    })
}

/// Parses every table in `text`.
pub fn read_tables(text: &str) -> Result<Vec<LoopTable>> {
    TableReader::new(text.as_bytes()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Machine,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text_report(r: &PropertyReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("order: {}", r.order));
    line(format!("classification: {}", r.axioms.classification));
    line(format!("identity: {}", yes_no(r.axioms.has_identity)));
    line(format!("invertible: {}", yes_no(r.axioms.invertible)));
    line(format!("abelian: {}", yes_no(r.axioms.abelian)));
    match r.axioms.assoc_counterexample {
        None => line("associative: yes".to_string()),
        Some((a, b, c)) => line(format!(
            "associative: no (counterexample: ({a}*{b})*{c} != {a}*({b}*{c}))"
        )),
    }
    line(format!("unipotent: {}", yes_no(r.structural.unipotent)));
    line(format!(
        "power-associative: {}",
        yes_no(r.structural.power_associative)
    ));
    line(format!(
        "monassociative: {}",
        yes_no(r.structural.monassociative)
    ));
    line(format!("monogenic: {}", yes_no(r.structural.monogenic)));
    let generators = if r.structural.generators.is_empty() {
        "none".to_string()
    } else {
        r.structural
            .generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    line(format!("generators: {generators}"));
    line(format!(
        "element orders: {}",
        r.structural
            .element_orders
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    let p_orders: Vec<String> = r
        .structural
        .p_orders
        .iter()
        .map(|(l, rr)| {
            let f = |x: &Option<u8>| x.map_or("-".to_string(), |v| v.to_string());
            format!("{}/{}", f(l), f(rr))
        })
        .collect();
    line(format!("p-orders: {}", p_orders.join(" ")));
    for (name, verdict) in &r.verdicts {
        match verdict {
            Verdict::Holds => line(format!("{name}: holds")),
            Verdict::Fails(Some(c)) => line(format!("{name}: fails (counterexample: {c})")),
            Verdict::Fails(None) => line(format!("{name}: fails")),
            Verdict::InverseUnavailable => {
                line(format!("{name}: unavailable (no two-sided inverses)"))
            }
        }
    }
    out
}

#[derive(Serialize)]
struct MachineAxioms {
    identity: bool,
    invertible: bool,
    abelian: bool,
    associative: bool,
}

#[derive(Serialize)]
struct MachineStructural<'a> {
    unipotent: bool,
    power_associative: bool,
    monassociative: bool,
    monogenic: bool,
    generators: &'a [u8],
    element_orders: &'a [u8],
    p_orders: &'a [(Option<u8>, Option<u8>)],
}

struct MachineProperties<'a>(&'a [(&'static str, Verdict)]);

impl Serialize for MachineProperties<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, verdict) in self.0 {
            map.serialize_entry(name, &MachineVerdict(verdict))?;
        }
        map.end()
    }
}

struct MachineVerdict<'a>(&'a Verdict);

impl Serialize for MachineVerdict<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let with_cex = matches!(self.0, Verdict::Fails(Some(_)));
        let mut map = serializer.serialize_map(Some(if with_cex { 2 } else { 1 }))?;
        map.serialize_entry("holds", &self.0.holds())?;
        if let Verdict::Fails(Some(c)) = self.0 {
            map.serialize_entry("counterexample", &MachineCex(c))?;
        }
        map.end()
    }
}

struct MachineCex<'a>(&'a crate::identity::Counterexample);

impl Serialize for MachineCex<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.assignment.len() + 2))?;
        for (var, val) in &self.0.assignment {
            map.serialize_entry(&var.to_string(), val)?;
        }
        map.serialize_entry("lhs", &self.0.lhs)?;
        map.serialize_entry("rhs", &self.0.rhs)?;
        map.end()
    }
}

#[derive(Serialize)]
struct MachineReport<'a> {
    order: usize,
    classification: String,
    axioms: MachineAxioms,
    properties: MachineProperties<'a>,
    structural: MachineStructural<'a>,
}

fn machine_report(r: &PropertyReport) -> String {
    let report = MachineReport {
        order: r.order,
        classification: r.axioms.classification.to_string(),
        axioms: MachineAxioms {
            identity: r.axioms.has_identity,
            invertible: r.axioms.invertible,
            abelian: r.axioms.abelian,
            associative: r.axioms.associative,
        },
        properties: MachineProperties(&r.verdicts),
        structural: MachineStructural {
            unipotent: r.structural.unipotent,
            power_associative: r.structural.power_associative,
            monassociative: r.structural.monassociative,
            monogenic: r.structural.monogenic,
            generators: &r.structural.generators,
            element_orders: &r.structural.element_orders,
            p_orders: &r.structural.p_orders,
        },
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serialization is infallible");
    s.push('\n');
    s
}

/// Renders a property report as human-readable text or as one structured
/// JSON record with a frozen field set.
pub fn emit_report(r: &PropertyReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => text_report(r),
        ReportFormat::Machine => machine_report(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::identity::property_report;

    #[test]
    fn l5_serializes_to_the_published_document() {
        let t = builtin("L5").unwrap();
        assert_eq!(
            write_table(&t),
            "5\n1 2 3 4 5\n2 1 5 3 4\n3 4 1 5 2\n4 5 2 1 3\n5 3 4 2 1\n"
        );
    }

    #[test]
    fn trivial_table_round_trips() {
        let t = read_table("# trivial\n1\n1\n").unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(write_table(&t), "1\n1\n");
    }

    #[test]
    fn rsaip9_document_has_published_last_line() {
        let doc = write_table(&builtin("RSAIP9").unwrap());
        assert_eq!(doc.lines().count(), 10);
        assert_eq!(doc.lines().last().unwrap(), "9 5 6 7 8 4 3 2 1");
    }

    #[test]
    fn write_read_round_trip_is_byte_exact() {
        for name in ["L5", "L6", "LSAIP9", "RSAIP9"] {
            let t = builtin(name).unwrap();
            let doc = write_table(&t);
            let back = read_table(&doc).unwrap();
            assert_eq!(back, t);
            assert_eq!(write_table(&back), doc);
        }
    }

    #[test]
    fn reader_streams_multiple_tables() {
        let doc = format!(
            "# two fixtures\n{}\n\n{}",
            write_table(&builtin("L5").unwrap()),
            write_table(&builtin("L6").unwrap()),
        );
        let tables = read_tables(&doc).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].order(), 5);
        assert_eq!(tables[1].order(), 6);
    }

    #[test]
    fn malformed_documents_are_rejected_with_line_numbers() {
        assert!(matches!(
            read_table("3\n1 2\n2 1 3\n3 2 1\n"),
            Err(Error::BadDimensions { .. })
        ));
        assert!(matches!(
            read_table("x\n"),
            Err(Error::Format { line: 1, .. })
        ));
        assert!(matches!(
            read_table("3\n1 2 3\n"),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            read_table("2\n1 2\n\n2 1\n"),
            Err(Error::Format { line: 3, .. })
        ));
        assert!(matches!(read_table(""), Err(Error::Format { .. })));
    }

    #[test]
    fn text_report_contains_the_published_l5_lines() {
        let report = property_report(&builtin("L5").unwrap()).unwrap();
        let text = emit_report(&report, ReportFormat::Text);
        assert!(text.contains("classification: NAFIL"));
        assert!(text.contains("CIP: holds"));
        assert!(text.contains("LIP: fails (counterexample: x=2, y=3)"));
    }

    #[test]
    fn machine_report_schema_is_frozen() {
        let report = property_report(&builtin("L6").unwrap()).unwrap();
        let json = emit_report(&report, ReportFormat::Machine);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let top: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            top,
            ["order", "classification", "axioms", "properties", "structural"]
        );
        let axioms: Vec<&String> = v["axioms"].as_object().unwrap().keys().collect();
        assert_eq!(axioms, ["identity", "invertible", "abelian", "associative"]);
        let structural: Vec<&String> = v["structural"].as_object().unwrap().keys().collect();
        assert_eq!(
            structural,
            [
                "unipotent",
                "power_associative",
                "monassociative",
                "monogenic",
                "generators",
                "element_orders",
                "p_orders"
            ]
        );
        assert_eq!(v["structural"]["monassociative"], true);
        let props = v["properties"].as_object().unwrap();
        assert_eq!(props.len(), crate::identity::builtin_identities().len());
        for (_, verdict) in props {
            assert!(verdict.get("holds").is_some());
        }
    }
}
