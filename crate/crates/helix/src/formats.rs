//! On-disk formats: codebook JSON, trace JSON, and tube dumps.

use std::fs;
use std::path::Path;

use helix_core::codec::{
    builtin_table1, Codebook, Codeword, Color, DnaSequence, Provenance, Strand,
};
use helix_core::graph::{parse_dimacs, ParsedDimacs, Vertex};
use helix_core::solver::Trace;
use helix_core::tube::Tube;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The `table1` codebook in [`CodebookDoc`] form.
pub const TABLE1_JSON: &str = include_str!("../resources/table1.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodewordDoc {
    pub vertex: Vertex,
    pub color: Color,
    pub sequence: String,
}

/// `{n, k, length, provenance, entries: [{vertex, color, sequence}]}`.
/// `length` is null when codewords differ in length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodebookDoc {
    pub n: Vertex,
    pub k: Color,
    pub length: Option<usize>,
    pub provenance: Provenance,
    pub entries: Vec<CodewordDoc>,
}

impl From<&Codebook> for CodebookDoc {
    fn from(cb: &Codebook) -> Self {
        CodebookDoc {
            n: cb.vertex_count(),
            k: cb.color_count(),
            length: cb.length(),
            provenance: cb.provenance(),
            entries: cb
                .entries()
                .iter()
                .map(|cw| CodewordDoc {
                    vertex: cw.vertex,
                    color: cw.color,
                    sequence: cw.sequence.to_string(),
                })
                .collect(),
        }
    }
}

impl CodebookDoc {
    pub fn into_codebook(self) -> Result<Codebook> {
        let entries = self
            .entries
            .into_iter()
            .map(|e| {
                let sequence: DnaSequence = e.sequence.parse().map_err(|err| {
                    CliError::config(format!("codeword ({}, {}): {err}", e.vertex, e.color))
                })?;
                Ok(Codeword {
                    vertex: e.vertex,
                    color: e.color,
                    sequence,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cb = Codebook::from_entries(self.n, self.k, self.provenance, entries)?;
        if self.length.is_some() && self.length != cb.length() {
            return Err(CliError::config(format!(
                "declared length {:?} does not match codewords ({:?})",
                self.length,
                cb.length()
            )));
        }
        Ok(cb)
    }
}

pub fn codebook_to_json(cb: &Codebook) -> String {
    let mut out =
        serde_json::to_string_pretty(&CodebookDoc::from(cb)).expect("codebook serializes");
    out.push('\n');
    out
}

pub fn codebook_from_json(text: &str, context: &str) -> Result<Codebook> {
    let doc: CodebookDoc = serde_json::from_str(text).map_err(|source| CliError::Json {
        context: context.to_string(),
        source,
    })?;
    doc.into_codebook()
}

/// The embedded copy of the `table1` codebook.
pub fn embedded_table1() -> Codebook {
    let cb = codebook_from_json(TABLE1_JSON, "embedded table1").expect("embedded table1 parses");
    debug_assert_eq!(cb, builtin_table1());
    cb
}

pub fn read_codebook(path: &Path) -> Result<Codebook> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    codebook_from_json(&text, &path.display().to_string())
}

pub fn read_dimacs(path: &Path) -> Result<ParsedDimacs> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_dimacs(&text).map_err(|source| CliError::Dimacs {
        path: path.to_path_buf(),
        source,
    })
}

/// One trace object, or an array of them when several modes ran.
pub fn traces_to_json(traces: &[Trace]) -> String {
    let mut out = match traces {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("trace serializes");
    out.push('\n');
    out
}

/// Reads what [`traces_to_json`] wrote.
pub fn traces_from_json(text: &str) -> Result<Vec<Trace>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Box<Trace>),
        Many(Vec<Trace>),
    }
    let parsed: OneOrMany = serde_json::from_str(text).map_err(|source| CliError::Json {
        context: "trace".to_string(),
        source,
    })?;
    Ok(match parsed {
        OneOrMany::One(t) => vec![*t],
        OneOrMany::Many(ts) => ts,
    })
}

/// Debug dump of a tube: one token list per strand, repeated per multiplicity.
pub fn tube_to_json(tube: &Tube) -> String {
    let strands: Vec<&Strand> = tube
        .strands()
        .flat_map(|(s, m)| std::iter::repeat_n(s, m as usize))
        .collect();
    serde_json::to_string(&strands).expect("strands serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use helix_core::codec::generate_codebook;
    use helix_core::graph::builtin_graph;
    use helix_core::solver::{solve_incremental, SolveOptions};
    use helix_core::tube::Machine;

    #[test]
    fn embedded_table1_matches_builtin() {
        assert_eq!(embedded_table1(), builtin_table1());
        assert_eq!(TABLE1_JSON, codebook_to_json(&builtin_table1()));
    }

    #[test]
    fn codebook_json_shape() {
        let cb = generate_codebook(1, 2, 8, 4).unwrap();
        let value: serde_json::Value = serde_json::from_str(&codebook_to_json(&cb)).unwrap();
        assert_eq!(value["n"], 1);
        assert_eq!(value["k"], 2);
        assert_eq!(value["length"], 8);
        assert_eq!(value["provenance"]["generated"]["seed"], 4);
        assert_eq!(value["entries"][1]["color"], 1);
        assert_eq!(codebook_from_json(&codebook_to_json(&cb), "x").unwrap(), cb);
    }

    #[test]
    fn codebook_json_errors() {
        let bad_base = r#"{"n":1,"k":1,"length":4,"provenance":"external","entries":[{"vertex":1,"color":0,"sequence":"ACGX"}]}"#;
        assert!(matches!(
            codebook_from_json(bad_base, "x"),
            Err(CliError::Config(_))
        ));
        let missing = r#"{"n":1,"k":2,"length":4,"provenance":"external","entries":[{"vertex":1,"color":0,"sequence":"ACGT"}]}"#;
        assert!(matches!(
            codebook_from_json(missing, "x"),
            Err(CliError::Codebook(_))
        ));
        assert!(matches!(
            codebook_from_json("{", "x"),
            Err(CliError::Json { .. })
        ));
    }

    #[test]
    fn trace_json_round_trips() {
        let g = builtin_graph("c5").unwrap();
        let (_, trace) =
            solve_incremental(&g, 3, &builtin_table1(), &SolveOptions::default()).unwrap();
        let text = traces_to_json(std::slice::from_ref(&trace));
        assert_eq!(traces_from_json(&text).unwrap(), vec![trace.clone()]);
        let both = traces_to_json(&[trace.clone(), trace.clone()]);
        assert_eq!(traces_from_json(&both).unwrap().len(), 2);

        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&str> = value
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        let mut expected = vec![
            "graph",
            "k",
            "order",
            "mode",
            "construction",
            "steps",
            "op_totals",
            "peak_tube_size",
            "colorable",
            "solutions",
        ];
        expected.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, expected);
        assert_eq!(value["mode"], "incremental");
        assert_eq!(value["graph"]["m"], 5);
        assert_eq!(
            value["steps"][0]["per_color_after_append"],
            serde_json::json!([1, 1, 1])
        );
    }

    #[test]
    fn trace_reader_rejects_unknown_fields() {
        let g = builtin_graph("k3").unwrap();
        let (_, trace) =
            solve_incremental(&g, 3, &builtin_table1(), &SolveOptions::default()).unwrap();
        let mut value = serde_json::to_value(&trace).unwrap();
        value["surprise"] = serde_json::json!(1);
        assert!(traces_from_json(&value.to_string()).is_err());
    }

    #[test]
    fn tube_dump() {
        let mut m = Machine::new();
        let t = m.tube_with("t", [Strand::new(), Strand::new()].into_iter().collect());
        assert_eq!(tube_to_json(&t), "[[],[]]");
    }
}
