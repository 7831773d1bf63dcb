use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A record every subcommand emits, one per parameter point.
pub trait Record: Serialize {
    fn header(&self) -> Vec<&'static str>;
    /// CSV rows; most records are one row, zero lists are one per zero.
    fn rows(&self, digits: usize) -> Vec<Vec<String>>;
    fn text(&self, digits: usize) -> String;
}

pub fn emit<R: Record>(
    records: &[R],
    format: Format,
    digits: usize,
    out: Option<&Path>,
) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, records)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            if let Some(first) = records.first() {
                csv.write_record(first.header())?;
            }
            for row in records.iter().flat_map(|r| r.rows(digits)) {
                csv.write_record(row)?;
            }
            csv.flush()?;
        }
        Format::Text => {
            for r in records {
                writeln!(w, "{}", r.text(digits))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
