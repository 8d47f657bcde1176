//! CSV emission of snapshot series and run manifests.
//!
//! All reals are written with 17 significant digits and LF line endings, so
//! a given series always produces the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fmt::real;
use crate::scenario::{save_config, ScenarioConfig};
use crate::solver::{run, Diagnostics, SnapshotSeries};

pub const CSV_HEADER: &str = "t,x,k";
pub const SUMMARY_HEADER: &str = "t,min,max,mean,total";

/// Prefix of the diagnostic lines a manifest appends to the config text.
pub const MANIFEST_PREFIX: &str = "manifest.";

fn nonempty(series: &SnapshotSeries) -> Result<()> {
    if series.snapshots.is_empty() {
        return Err(Error::Contract(
            "cannot write an empty snapshot series".into(),
        ));
    }
    Ok(())
}

/// Long format: one `t,x,k` row per node per snapshot.
pub fn csv_text(series: &SnapshotSeries) -> Result<String> {
    nonempty(series)?;
    let grid = &series.grid;
    let mut out = String::with_capacity(series.snapshots.len() * grid.n_nodes() * 40);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for snap in &series.snapshots {
        let t = real(snap.field.time);
        for (j, k) in snap.field.values.iter().enumerate() {
            let _ = writeln!(out, "{t},{},{}", real(grid.x(j)), real(*k));
        }
    }
    Ok(out)
}

pub fn summary_text(series: &SnapshotSeries) -> Result<String> {
    nonempty(series)?;
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for snap in &series.snapshots {
        let s = &snap.summary;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            real(s.time),
            real(s.min),
            real(s.max),
            real(s.mean),
            real(s.total)
        );
    }
    Ok(out)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_csv(series: &SnapshotSeries, path: impl AsRef<Path>) -> Result<()> {
    let text = csv_text(series)?;
    write_file(path.as_ref(), &text)
}

pub fn write_summary(series: &SnapshotSeries, path: impl AsRef<Path>) -> Result<()> {
    let text = summary_text(series)?;
    write_file(path.as_ref(), &text)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    /// File name relative to the output directory.
    pub file: String,
    pub rows: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    /// Canonical config text; replaying it reproduces the outputs.
    pub config: String,
    pub duration_seconds: f64,
    pub diagnostics: Diagnostics,
    pub snapshots: usize,
    pub outputs: Vec<OutputFile>,
}

impl RunManifest {
    pub fn to_text(&self) -> String {
        let mut out = self.config.clone();
        let d = &self.diagnostics;
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{MANIFEST_PREFIX}{k} = {v}");
        };
        kv("duration_seconds", format!("{:.6}", self.duration_seconds));
        kv("cfl_ratio", real(d.cfl_ratio));
        kv("steps", d.steps.to_string());
        kv("snapshots", self.snapshots.to_string());
        kv("max_abs_k", real(d.max_abs));
        match d.first_negative {
            None => kv("first_negative", "none".into()),
            Some(ev) => {
                kv("first_negative.step", ev.step.to_string());
                kv("first_negative.time", real(ev.time));
                kv("first_negative.node", ev.node.to_string());
                kv("first_negative.value", real(ev.value));
            }
        }
        for (i, f) in self.outputs.iter().enumerate() {
            kv(&format!("output.{i}.file"), f.file.clone());
            kv(&format!("output.{i}.rows"), f.rows.to_string());
            kv(&format!("output.{i}.sha256"), f.sha256.clone());
        }
        out
    }

    /// The config portion of a manifest (every line not starting with
    /// `manifest.`). Plain config text passes through unchanged.
    pub fn embedded_config(text: &str) -> String {
        text.lines()
            .filter(|l| !l.trim_start().starts_with(MANIFEST_PREFIX))
            .fold(String::new(), |mut s, l| {
                s.push_str(l);
                s.push('\n');
                s
            })
    }

    /// `(file, sha256)` pairs listed in a manifest text.
    pub fn digests(text: &str) -> Vec<(String, String)> {
        let mut files = Vec::new();
        let mut sums = Vec::new();
        for line in text.lines() {
            let Some(rest) = line
                .strip_prefix(MANIFEST_PREFIX)
                .and_then(|r| r.strip_prefix("output."))
            else {
                continue;
            };
            let Some((key, value)) = rest.split_once(" = ") else {
                continue;
            };
            if key.ends_with(".file") {
                files.push(value.to_string());
            } else if key.ends_with(".sha256") {
                sums.push(value.to_string());
            }
        }
        files.into_iter().zip(sums).collect()
    }
}

#[derive(Debug, Clone)]
pub struct RunOutputs {
    pub csv: PathBuf,
    pub summary: PathBuf,
    pub manifest: PathBuf,
    pub manifest_data: RunManifest,
    pub series: SnapshotSeries,
}

/// Runs `config` and writes `<name>.csv`, `<name>.summary.csv` and, last,
/// `<name>.manifest` into `out_dir` (created if missing).
pub fn execute(config: &ScenarioConfig, out_dir: impl AsRef<Path>) -> Result<RunOutputs> {
    let out_dir = out_dir.as_ref();
    let started = Instant::now();
    let series = run(config)?;
    let duration_seconds = started.elapsed().as_secs_f64();

    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let csv_name = format!("{}.csv", config.name);
    let summary_name = format!("{}.summary.csv", config.name);
    let csv = csv_text(&series)?;
    let summary = summary_text(&series)?;
    let csv_path = out_dir.join(&csv_name);
    let summary_path = out_dir.join(&summary_name);
    write_file(&csv_path, &csv)?;
    write_file(&summary_path, &summary)?;

    let manifest_data = RunManifest {
        config: save_config(config),
        duration_seconds,
        diagnostics: series.diagnostics,
        snapshots: series.snapshots.len(),
        outputs: vec![
            OutputFile {
                file: csv_name,
                rows: csv.lines().count() - 1,
                sha256: sha256_hex(csv.as_bytes()),
            },
            OutputFile {
                file: summary_name,
                rows: summary.lines().count() - 1,
                sha256: sha256_hex(summary.as_bytes()),
            },
        ],
    };
    let manifest_path = out_dir.join(format!("{}.manifest", config.name));
    write_file(&manifest_path, &manifest_data.to_text())?;

    Ok(RunOutputs {
        csv: csv_path,
        summary: summary_path,
        manifest: manifest_path,
        manifest_data,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{Field, Grid1D, Snapshot, Summary};

    fn single(values: Vec<f64>, length: f64) -> SnapshotSeries {
        let grid = Grid1D::new(length, values.len() - 1).unwrap();
        let field = Field::new(values, 0.0);
        SnapshotSeries {
            grid,
            snapshots: vec![Snapshot {
                summary: Summary::of(&field, &grid),
                field,
            }],
            diagnostics: Diagnostics {
                cfl_ratio: 0.4,
                first_negative: None,
                max_abs: 100.0,
                steps: 0,
            },
        }
    }

    #[test]
    fn smallest_grid_csv() {
        let s = single(vec![100.0; 3], 100.0);
        assert_eq!(
            csv_text(&s).unwrap(),
            "t,x,k\n0,0,100\n0,50,100\n0,100,100\n"
        );
    }

    #[test]
    fn summary_rows() {
        let s = single(vec![100.0; 101], 100.0);
        assert_eq!(
            summary_text(&s).unwrap(),
            "t,min,max,mean,total\n0,100,100,100,10000\n"
        );
        let z = single(vec![0.0; 101], 100.0);
        assert_eq!(
            summary_text(&z).unwrap(),
            "t,min,max,mean,total\n0,0,0,0,0\n"
        );
    }

    #[test]
    fn empty_series_creates_no_file() {
        let mut s = single(vec![1.0; 3], 1.0);
        s.snapshots.clear();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        assert!(matches!(write_csv(&s, &path), Err(Error::Contract(_))));
        assert!(!path.exists());
        assert!(matches!(write_summary(&s, &path), Err(Error::Contract(_))));
        assert!(!path.exists());
    }

    #[test]
    fn io_error_carries_path() {
        let s = single(vec![1.0; 3], 1.0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("x.csv");
        match write_csv(&s, &path) {
            Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
            other => panic!("expected io error, got {other:?}"),
        }
    }

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifest_strips_to_config() {
        let m = RunManifest {
            config: "name = x\necon.delta = 0.5\n".into(),
            duration_seconds: 0.1,
            diagnostics: single(vec![1.0; 3], 1.0).diagnostics,
            snapshots: 1,
            outputs: vec![OutputFile {
                file: "x.csv".into(),
                rows: 3,
                sha256: "ab".into(),
            }],
        };
        let text = m.to_text();
        assert_eq!(RunManifest::embedded_config(&text), m.config);
        assert_eq!(
            RunManifest::digests(&text),
            vec![("x.csv".to_string(), "ab".to_string())]
        );
        assert!(text.contains("manifest.first_negative = none\n"));
    }
}
