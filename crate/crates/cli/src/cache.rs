//! On-disk cache of symbolic Jack polynomials, one JSON file per degree,
//! in the directory named by `NABLA_CACHE_DIR`. Unset means no caching;
//! unreadable or inconsistent files are ignored and rewritten.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use jack_nabla::coeff::QAlpha;
use jack_nabla::jack::{JackCache, JackDegree};
use jack_nabla::partition::{partitions_of, Partition};
use jack_nabla::symfunc::SymFunc;
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "NABLA_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct StoredDegree {
    n: usize,
    jacks: Vec<StoredJack>,
}

#[derive(Serialize, Deserialize)]
struct StoredJack {
    lambda: Partition,
    terms: Vec<(Partition, QAlpha)>,
    norm: QAlpha,
}

fn dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn file(dir: &std::path::Path, n: usize) -> PathBuf {
    dir.join(format!("jacks-symbolic-{n}.json"))
}

fn decode(stored: StoredDegree, n: usize) -> Option<JackDegree<QAlpha>> {
    if stored.n != n {
        return None;
    }
    let mut polys = BTreeMap::new();
    let mut norms = BTreeMap::new();
    for j in stored.jacks {
        if j.lambda.size() != n || j.terms.iter().any(|(mu, _)| mu.size() != n) {
            return None;
        }
        norms.insert(j.lambda.clone(), j.norm);
        polys.insert(j.lambda, SymFunc::from_terms(j.terms));
    }
    let complete = partitions_of(n).iter().all(|l| polys.contains_key(l));
    complete.then_some(JackDegree { polys, norms })
}

/// Seed `jacks` from the cache directory; returns the degrees loaded.
pub fn load(jacks: &JackCache<QAlpha>) -> Vec<usize> {
    let Some(dir) = dir() else {
        return Vec::new();
    };
    let Ok(listing) = fs::read_dir(&dir) else {
        return Vec::new();
    };
    let mut loaded = Vec::new();
    for entry in listing.flatten() {
        let name = entry.file_name();
        let Some(n) = name
            .to_str()
            .and_then(|s| s.strip_prefix("jacks-symbolic-"))
            .and_then(|s| s.strip_suffix(".json"))
            .and_then(|s| s.parse::<usize>().ok())
        else {
            continue;
        };
        let parsed = fs::read_to_string(entry.path())
            .ok()
            .and_then(|text| serde_json::from_str::<StoredDegree>(&text).ok())
            .and_then(|s| decode(s, n));
        match parsed {
            Some(d) => {
                jacks.insert_degree(n, d);
                loaded.push(n);
            }
            None => eprintln!("warning: ignoring unreadable cache file {}", entry.path().display()),
        }
    }
    loaded.sort_unstable();
    loaded
}

/// Write every degree of `jacks` not in `skip`. Failures only warn.
pub fn store(jacks: &JackCache<QAlpha>, skip: &[usize]) {
    let Some(dir) = dir() else {
        return;
    };
    for (n, deg) in jacks.cached_degrees() {
        if skip.contains(&n) {
            continue;
        }
        let stored = StoredDegree {
            n,
            jacks: deg
                .polys
                .iter()
                .map(|(l, j)| StoredJack {
                    lambda: l.clone(),
                    terms: j.iter().map(|(mu, c)| (mu.clone(), c.clone())).collect(),
                    norm: deg.norms[l].clone(),
                })
                .collect(),
        };
        let target = file(&dir, n);
        let tmp = target.with_extension("json.tmp");
        let written = fs::create_dir_all(&dir)
            .and_then(|_| fs::write(&tmp, serde_json::to_string(&stored).expect("serializable")))
            .and_then(|_| fs::rename(&tmp, &target));
        if let Err(e) = written {
            eprintln!("warning: cannot write cache file {}: {e}", target.display());
        }
    }
}
