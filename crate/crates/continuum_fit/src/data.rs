use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{FitError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    #[serde(rename = "T")]
    pub t: f64,
    pub n_t: usize,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "sigma_E")]
    pub sigma: f64,
}

impl FitRecord {
    /// Lattice spacing `1/(T n_t)`.
    pub fn spacing(&self) -> f64 {
        1.0 / (self.t * self.n_t as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    OwnRun,
    Published,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitDataset {
    pub records: Vec<FitRecord>,
    pub provenance: Provenance,
}

impl FitDataset {
    /// Rejects non-positive errors, non-finite values and repeated `(T, n_t)`.
    pub fn new(records: Vec<FitRecord>, provenance: Provenance) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &records {
            if !(r.sigma > 0.0) || !r.e.is_finite() || !(r.t > 0.0) || r.n_t == 0 {
                return Err(FitError::InvalidRecord(format!("{r:?}")));
            }
            if !seen.insert((r.t.to_bits(), r.n_t)) {
                return Err(FitError::InvalidRecord(format!(
                    "duplicate (T, n_t) = ({}, {})",
                    r.t, r.n_t
                )));
            }
        }
        Ok(Self {
            records,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Distinct temperatures, ascending.
    pub fn temperatures(&self) -> Vec<f64> {
        let mut t: Vec<f64> = self.records.iter().map(|r| r.t).collect();
        t.sort_by(f64::total_cmp);
        t.dedup();
        t
    }
}

/// CSV with header `T,n_t,E,sigma_E`.
pub fn read_dataset<R: Read>(r: R, provenance: Provenance) -> Result<FitDataset> {
    let mut rd = csv::Reader::from_reader(r);
    let records = rd.deserialize().collect::<std::result::Result<Vec<FitRecord>, _>>()?;
    FitDataset::new(records, provenance)
}

pub fn write_dataset<W: Write>(d: &FitDataset, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in &d.records {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

/// `"3.2590(53)"` -> `(3.259, 0.0053)`.
pub fn parse_uncertainty(s: &str) -> Option<(f64, f64)> {
    let s = s.trim();
    let (value, rest) = s.split_once('(')?;
    let digits = rest.strip_suffix(')')?;
    let v: f64 = value.parse().ok()?;
    let err: u64 = digits.parse().ok()?;
    let decimals = value.split_once('.').map_or(0, |(_, f)| f.len());
    Some((v, err as f64 / 10f64.powi(decimals as i32)))
}

/// Shipped energy tables: name and SU(N), coupling.
pub const FIXTURES: [(&str, usize, f64); 6] = [
    ("lat_su2_g05", 2, 0.5),
    ("lat_su2_g10", 2, 1.0),
    ("lat_su2_g20", 2, 2.0),
    ("lat_su3_g05", 3, 0.5),
    ("lat_su3_g10", 3, 1.0),
    ("lat_su3_g20", 3, 2.0),
];

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/v1")
}

pub fn fixture_path(name: &str) -> Result<PathBuf> {
    if FIXTURES.iter().any(|(n, _, _)| *n == name) {
        Ok(data_dir().join(format!("{name}.csv")))
    } else {
        Err(FitError::UnknownFixture(name.into()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Checks a fixture against the `SHA256SUMS` manifest next to it.
pub fn verify_fixture(name: &str) -> Result<()> {
    let path = fixture_path(name)?;
    let bytes = std::fs::read(&path)?;
    let manifest = std::fs::read_to_string(data_dir().join("SHA256SUMS"))?;
    let file = format!("{name}.csv");
    let expected = manifest
        .lines()
        .filter_map(|l| l.split_once(char::is_whitespace))
        .find(|(_, f)| f.trim() == file)
        .map(|(h, _)| h.to_string())
        .ok_or_else(|| FitError::UnknownFixture(file.clone()))?;
    let got = sha256_hex(&bytes);
    if got != expected {
        return Err(FitError::ChecksumMismatch {
            file,
            expected,
            got,
        });
    }
    Ok(())
}

/// Verifies and reads one of the shipped tables.
pub fn load_fixture(name: &str) -> Result<FitDataset> {
    verify_fixture(name)?;
    let f = std::fs::File::open(fixture_path(name)?)?;
    read_dataset(f, Provenance::Published)
}
