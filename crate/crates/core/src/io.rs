//! File formats of the batch surface: sampled densities and step data as
//! CSV, matrices as dense real CSV or `{re, im}` JSON, trajectories and
//! sweep tables as CSV, reports as JSON.

use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::boltzmann::{SweepRow, Trajectory};
use crate::classical::{MeasureSpace, SampledDensity, StepRearrangement};
use crate::error::{Error, Result};
use crate::quantum::{HermitianOperator, C64};

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

/// Read a sampled density from CSV columns `label, weight, value`.
/// A header row is detected by its non-numeric weight column.
pub fn read_sampled_density(reader: impl Read) -> Result<SampledDensity> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut cells = Vec::new();
    let mut values = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() < 3 {
            return Err(Error::Parse(format!("row {i}: expected label,weight,value")));
        }
        if i == 0 && record[1].trim().parse::<f64>().is_err() {
            continue; // header row
        }
        cells.push((record[0].to_string(), parse_f64(&record[1], "weight")?));
        values.push(parse_f64(&record[2], "value")?);
    }
    let space = MeasureSpace::new(cells)?;
    SampledDensity::new(space, values)
}

pub fn read_sampled_density_path(path: &Path) -> Result<SampledDensity> {
    read_sampled_density(std::fs::File::open(path)?)
}

pub fn write_sampled_density(writer: impl Write, f: &SampledDensity) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["label", "weight", "value"])?;
    for (cell, value) in f.space().cells().iter().zip(f.values()) {
        w.write_record([
            cell.label.as_str(),
            &format_float(cell.weight),
            &format_float(*value),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Read a step rearrangement from CSV columns `value, length`. A row with
/// length `inf` (value must be 0) marks the infinite tail.
pub fn read_step_rearrangement(reader: impl Read) -> Result<StepRearrangement> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut steps = Vec::new();
    let mut infinite_tail = false;
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::Parse(format!("row {i}: expected value,length")));
        }
        if i == 0 && record[0].trim().parse::<f64>().is_err() {
            continue;
        }
        if infinite_tail {
            return Err(Error::Parse("rows after the infinite tail marker".into()));
        }
        let value = parse_f64(&record[0], "value")?;
        let length = parse_f64(&record[1], "length")?;
        if length.is_infinite() {
            if value != 0.0 {
                return Err(Error::Parse(
                    "the infinite tail must carry value 0".into(),
                ));
            }
            infinite_tail = true;
        } else {
            steps.push((value, length));
        }
    }
    StepRearrangement::new(steps, infinite_tail)
}

pub fn read_step_rearrangement_path(path: &Path) -> Result<StepRearrangement> {
    read_step_rearrangement(std::fs::File::open(path)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

/// Read a Hermitian operator: dense real CSV (square, no header) or JSON
/// `{"re": [[..]], "im": [[..]]}`. JSON is detected by a leading brace.
pub fn read_hermitian(mut reader: impl Read) -> Result<HermitianOperator> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    if text.trim_start().starts_with('{') {
        let m: MatrixJson = serde_json::from_str(&text)?;
        let n = m.re.len();
        if m.re.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("re block is not square".into()));
        }
        if let Some(im) = &m.im {
            if im.len() != n || im.iter().any(|row| row.len() != n) {
                return Err(Error::Parse("im block does not match re".into()));
            }
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| {
            C64::new(m.re[i][j], m.im.as_ref().map_or(0.0, |im| im[i][j]))
        });
        return HermitianOperator::new(matrix);
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|s| parse_f64(s, &format!("matrix entry in row {i}")))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix is not square".into()));
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    HermitianOperator::from_real(n, &flat)
}

pub fn read_hermitian_path(path: &Path) -> Result<HermitianOperator> {
    read_hermitian(std::fs::File::open(path)?)
}

fn format_float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x}")
    }
}

/// Trajectory CSV: `t, f0.., h_plus, mass, <invariants>, llog1_modular`.
pub fn write_trajectory_csv(writer: impl Write, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let dim = traj.model.dimension();
    let mut header: Vec<String> = vec!["t".into()];
    header.extend((0..dim).map(|i| format!("f{i}")));
    header.push("h_plus".into());
    header.push("mass".into());
    header.extend(traj.model.invariant_names().iter().map(|s| format!("inv_{s}")));
    header.push("llog1_modular".into());
    w.write_record(&header)?;
    for s in &traj.samples {
        let mut row: Vec<String> = vec![format_float(s.t)];
        row.extend(s.densities.iter().map(|&d| format_float(d)));
        row.push(format_float(s.h_plus));
        row.push(format_float(s.mass));
        row.extend(s.invariants.iter().map(|&v| format_float(v)));
        row.push(format_float(s.llog1_modular));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Sweep CSV: one row per family member, the epsilon ladder flattened into
/// `h_eps_<eps>`, `trunc_<eps>`, `trunc_mass_<eps>` columns.
pub fn write_sweep_csv(writer: impl Write, rows: &[SweepRow], ladder: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = vec![
        "name".into(),
        "member".into(),
        "l1".into(),
        "llog1_modular".into(),
        "llogl_modular".into(),
        "h".into(),
        "h_plus".into(),
        "jensen_lower".into(),
    ];
    for eps in ladder {
        header.push(format!("h_eps_{eps}"));
        header.push(format!("trunc_{eps}"));
        header.push(format!("trunc_mass_{eps}"));
    }
    w.write_record(&header)?;
    for row in rows {
        let mut rec: Vec<String> = vec![
            row.name.clone(),
            row.member.to_string(),
            row.l1.to_string(),
            row.llog1_modular.to_string(),
            row.llogl_modular.to_string(),
            row.h.to_string(),
            row.h_plus.to_string(),
            row.jensen_lower.map_or(String::new(), format_float),
        ];
        for (he, te) in row.h_eps.iter().zip(&row.truncated) {
            rec.push(format_float(he.value));
            rec.push(format_float(te.value));
            rec.push(format_float(te.mass));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline; stable field order for byte-stable
/// reports.
pub fn write_json(writer: impl Write, value: &impl Serialize) -> Result<()> {
    let mut w = writer;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn to_json_string(value: &impl Serialize) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}
