use std::fs;
use std::path::{Path, PathBuf};

use lonesieve::sieve::SieveReport;
use sha2::{Digest, Sha256};

/// On-disk store of per-prime reports keyed by curve digest, prime and certified labels.
pub struct ReportCache {
    root: PathBuf,
}

pub fn labels_digest(labels: &[String]) -> String {
    let mut sorted = labels.to_vec();
    sorted.sort();
    let canonical = serde_json::to_string(&sorted).expect("serializable");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl ReportCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        ReportCache { root: root.into() }
    }

    pub fn path(&self, curve_digest: &str, p: u64, labels: &[String]) -> PathBuf {
        self.root.join(curve_digest).join(format!("p{p}-{}.json", &labels_digest(labels)[..16]))
    }

    pub fn load(&self, curve_digest: &str, p: u64, labels: &[String]) -> Option<SieveReport> {
        let path = self.path(curve_digest, p, labels);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<SieveReport>(&text) {
            Ok(r) if r.p == p && r.curve_digest == curve_digest => Some(r),
            _ => {
                log::warn!("ignoring unreadable cache entry {}", path.display());
                None
            }
        }
    }

    /// Writes through a temporary file and a rename so readers never see a partial entry.
    pub fn store(&self, report: &SieveReport, labels: &[String]) -> std::io::Result<()> {
        let path = self.path(&report.curve_digest, report.p, labels);
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;
        let mut clean = report.clone();
        clean.ms_elapsed = None;
        let tmp = dir.join(format!(".{}.{}.tmp", file_name(&path), std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(&clean).expect("serializable"))?;
        fs::rename(&tmp, &path)
    }
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}
