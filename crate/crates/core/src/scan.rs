//! Exhaustive agreement scan: embedding-based realizability versus the
//! closed-form family tables, over all admissible `(p, q)` up to a `|q|`
//! bound.
//!
//! Work items are independent `(p,q)` pairs; results are merged in
//! deterministic `(|q|, p)` order regardless of completion order. Setting
//! `PRISM_SCAN_CACHE` to a directory memoizes realizability results as JSON
//! lines keyed by `(p, q)`.

use crate::dtype::PrismParams;
use crate::embed::realizable;
use crate::error::{Error, Result};
use crate::families::pneg_membership;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

/// Name of the environment variable pointing at the memo directory.
pub const SCAN_CACHE_ENV: &str = "PRISM_SCAN_CACHE";
const CACHE_FILE: &str = "realizable.jsonl";

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub p: i64,
    pub q: i64,
    pub realizable: bool,
    pub changemakers: Vec<Vec<i64>>,
    pub families: Vec<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub qmax: i64,
    pub pairs_checked: usize,
    pub realizable_pairs: usize,
    pub member_pairs: usize,
    pub disagreements: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOutcome {
    pub summary: ScanSummary,
    pub rows: Vec<ScanRow>,
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    p: i64,
    q: i64,
    changemakers: Vec<Vec<i64>>,
}

struct Cache {
    path: PathBuf,
    entries: HashMap<(i64, i64), Vec<Vec<i64>>>,
}

impl Cache {
    fn open() -> Option<Cache> {
        let dir = std::env::var_os(SCAN_CACHE_ENV)?;
        let path = PathBuf::from(dir).join(CACHE_FILE);
        let mut entries = HashMap::new();
        if let Ok(text) = std::fs::read_to_string(&path) {
            for line in text.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                if let Ok(rec) = serde_json::from_str::<CacheLine>(line) {
                    entries.insert((rec.p, rec.q), rec.changemakers);
                }
            }
        }
        Some(Cache { path, entries })
    }

    fn append(&self, fresh: &[((i64, i64), Vec<Vec<i64>>)]) {
        if fresh.is_empty() {
            return;
        }
        if let Some(parent) = self.path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Ok(mut file) = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
        {
            for ((p, q), cms) in fresh {
                let line = serde_json::to_string(&CacheLine {
                    p: *p,
                    q: *q,
                    changemakers: cms.clone(),
                })
                .expect("cache line serializes");
                let _ = writeln!(file, "{line}");
            }
        }
    }
}

/// All admissible pairs for the scan: `q ∈ [−qmax, −1]`, odd `p` with
/// `1 < p < 4|q|` and `gcd(p, q) = 1`, ordered by `(|q|, p)`.
pub fn scan_pairs(qmax: i64) -> Vec<PrismParams> {
    let mut out = Vec::new();
    for qa in 1..=qmax {
        let q = -qa;
        let mut p = 3;
        while p < 4 * qa {
            if num_integer::gcd(p, qa) == 1 {
                out.push(PrismParams::new(p, q).expect("valid scan pair"));
            }
            p += 2;
        }
    }
    out
}

/// Run the scan with `jobs` worker threads (0 = rayon default).
pub fn scan(qmax: i64, jobs: usize) -> Result<ScanOutcome> {
    let pairs = scan_pairs(qmax);
    let cache = Cache::open();
    let compute = |pp: &PrismParams| -> Result<ScanRow> {
        let cms: Vec<Vec<i64>> = match cache
            .as_ref()
            .and_then(|c| c.entries.get(&(pp.p(), pp.q())))
        {
            Some(hit) => hit.clone(),
            None => realizable(pp)?
                .into_iter()
                .map(|c| c.sigma().to_vec())
                .collect(),
        };
        let fams = pneg_membership(pp)?;
        let realizable = !cms.is_empty();
        let member = !fams.is_empty();
        Ok(ScanRow {
            p: pp.p(),
            q: pp.q(),
            realizable,
            changemakers: cms,
            families: fams
                .iter()
                .map(|i| match i.r {
                    Some(r) => format!("{} (r={r})", i.tag),
                    None => i.tag.to_string(),
                })
                .collect(),
            agree: realizable == member,
        })
    };

    let rows: Vec<Result<ScanRow>> = if jobs == 1 {
        pairs.iter().map(compute).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| pairs.par_iter().map(compute).collect())
    };
    let rows: Vec<ScanRow> = rows.into_iter().collect::<Result<_>>()?;

    if let Some(cache) = &cache {
        let fresh: Vec<((i64, i64), Vec<Vec<i64>>)> = rows
            .iter()
            .filter(|r| !cache.entries.contains_key(&(r.p, r.q)))
            .map(|r| ((r.p, r.q), r.changemakers.clone()))
            .collect();
        cache.append(&fresh);
    }

    let summary = ScanSummary {
        qmax,
        pairs_checked: rows.len(),
        realizable_pairs: rows.iter().filter(|r| r.realizable).count(),
        member_pairs: rows.iter().filter(|r| !r.families.is_empty()).count(),
        disagreements: rows
            .iter()
            .filter(|r| !r.agree)
            .map(|r| (r.p, r.q))
            .collect(),
    };
    Ok(ScanOutcome { summary, rows })
}

/// CSV of the disagreement rows (header always present; body expected empty).
pub fn disagreement_csv(outcome: &ScanOutcome) -> String {
    let mut out = String::from("p,q,realizable,families\n");
    for row in outcome.rows.iter().filter(|r| !r.agree) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.p,
            row.q,
            row.realizable,
            row.families.join(" ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_qmax_5_agrees() {
        let outcome = scan(5, 1).unwrap();
        assert!(outcome.summary.disagreements.is_empty());
        assert!(outcome.summary.pairs_checked > 0);
        // P(3,-2) is the first realizable pair.
        let row = outcome
            .rows
            .iter()
            .find(|r| r.p == 3 && r.q == -2)
            .unwrap();
        assert!(row.realizable);
    }

    #[test]
    fn scan_qmax_0_is_empty() {
        let outcome = scan(0, 1).unwrap();
        assert_eq!(outcome.summary.pairs_checked, 0);
        assert!(outcome.rows.is_empty());
    }
}
