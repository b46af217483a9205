//! Interchange formats.
//!
//! Paths travel as CSV with header `t,value[,left,right]`, rows sorted by
//! strictly increasing `t`. The optional `left`/`right` columns carry jump
//! decorations; an empty cell means "no jump on that side". Floats are
//! written with 17 significant digits so a write/read cycle is bit-exact.
//!
//! Partition sequences are described in JSON as `{"T": 1.0, "base": 2,
//! "depth": 10}`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::sampled::{Decoration, SampledPath, Style};
use super::sequence::PartitionSequence;
use crate::error::{Error, Result};

fn parse_err(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_float(cell: &str, line: usize, field: &str) -> Result<f64> {
    let v: f64 = cell
        .trim()
        .parse()
        .map_err(|_| parse_err(line, field, format!("`{cell}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, field, "value is not finite"));
    }
    Ok(v)
}

/// Parse the CSV path format.
///
/// Without decorations the path is [`Style::ContinuousInterpolant`]; with any
/// decoration it is [`Style::Regulated`]. Use [`SampledPath::step`] on the
/// values directly when a cadlag step reading is wanted.
pub fn parse_path_csv(input: &str) -> Result<SampledPath> {
    read_path_csv(input.as_bytes())
}

pub fn read_path_csv<R: Read>(reader: R) -> Result<SampledPath> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, "header", e.to_string()))?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    let decorated = match names.as_slice() {
        ["t", "value"] => false,
        ["t", "value", "left", "right"] => true,
        _ => {
            return Err(parse_err(
                1,
                "header",
                format!("expected `t,value[,left,right]`, got `{}`", names.join(",")),
            ))
        }
    };

    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut decorations = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let line = row + 2;
        let rec = rec.map_err(|e| parse_err(line, "row", e.to_string()))?;
        let t = parse_float(&rec[0], line, "t")?;
        if let Some(&prev) = times.last() {
            if !(t > prev) {
                return Err(parse_err(line, "t", format!("{t} does not increase past {prev}")));
            }
        }
        let v = parse_float(&rec[1], line, "value")?;
        if decorated {
            let (l, r) = (&rec[2], &rec[3]);
            if !l.is_empty() || !r.is_empty() {
                let left = if l.is_empty() { v } else { parse_float(l, line, "left")? };
                let right = if r.is_empty() { v } else { parse_float(r, line, "right")? };
                if left != v || right != v {
                    decorations.push(Decoration {
                        time: t,
                        left,
                        right,
                    });
                }
            }
        }
        times.push(t);
        values.push(v);
    }
    if times.is_empty() {
        return Err(parse_err(2, "row", "no data rows"));
    }
    let grid = Partition::new(times).map_err(|e| parse_err(2, "t", e.to_string()))?;
    if decorations.is_empty() {
        SampledPath::continuous(grid, values)
    } else {
        SampledPath::regulated(grid, values, &decorations)
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write the CSV path format. Decoration columns are emitted whenever the
/// path has a jump or is a step path.
pub fn write_path_csv<W: Write>(path: &SampledPath, mut out: W) -> std::io::Result<()> {
    let decorated = path.has_jumps() || path.style() == Style::CadlagStep;
    if decorated {
        writeln!(out, "t,value,left,right")?;
    } else {
        writeln!(out, "t,value")?;
    }
    let (l, r) = (path.left_limits(), path.right_limits());
    for (i, (&t, &v)) in path.times().iter().zip(path.values()).enumerate() {
        if decorated {
            if l[i] != v || r[i] != v {
                writeln!(out, "{},{},{},{}", fmt17(t), fmt17(v), fmt17(l[i]), fmt17(r[i]))?;
            } else {
                writeln!(out, "{},{},,", fmt17(t), fmt17(v))?;
            }
        } else {
            writeln!(out, "{},{}", fmt17(t), fmt17(v))?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDescriptor {
    #[serde(rename = "T")]
    pub t_end: f64,
    pub base: u32,
    pub depth: u32,
}

impl SequenceDescriptor {
    pub fn build(&self) -> Result<PartitionSequence> {
        PartitionSequence::dyadic(self.t_end, self.base, self.depth)
    }
}

pub fn parse_sequence_json(input: &str) -> Result<PartitionSequence> {
    let d: SequenceDescriptor = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        field: "descriptor".into(),
        message: e.to_string(),
    })?;
    d.build()
}
