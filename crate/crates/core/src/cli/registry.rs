use std::sync::Arc;

use crate::cayley::{DehnOracle, FreeAbelian, FreeGroup, FreeProduct, GroupOracle};
use crate::error::{Error, Result};
use crate::words::{default_names, parse_presentation, w, WordSet};

/// A named group with generator names and its default parabolic subgroups.
pub struct GroupEntry {
    pub oracle: Arc<dyn GroupOracle>,
    pub names: Vec<String>,
    pub parabolics: Vec<Vec<usize>>,
}

fn rank_suffix(name: &str, prefix: &str) -> Result<Option<usize>> {
    if name == prefix {
        return Ok(Some(2));
    }
    match name.strip_prefix(prefix).and_then(|s| s.strip_prefix('-')) {
        Some(n) => n
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 1)
            .map(Some)
            .ok_or_else(|| Error::InvalidInput(format!("bad rank in group {name:?}"))),
        None => Ok(None),
    }
}

/// `free[-n]`, `abelian[-n]`, `surface` (genus 2), `zz-free-product`, or
/// `eo:<file>` for a presentation file read with Dehn's algorithm.
pub fn lookup_group(name: &str) -> Result<GroupEntry> {
    if let Some(n) = rank_suffix(name, "free")? {
        return Ok(GroupEntry {
            oracle: Arc::new(FreeGroup { rank: n }),
            names: default_names(n),
            parabolics: vec![vec![0]],
        });
    }
    if let Some(n) = rank_suffix(name, "abelian")? {
        return Ok(GroupEntry {
            oracle: Arc::new(FreeAbelian { rank: n }),
            names: default_names(n),
            parabolics: vec![vec![0]],
        });
    }
    match name {
        "surface" => {
            let rel = WordSet::from_words([w("aba'b'cdc'd'")]);
            Ok(GroupEntry {
                oracle: Arc::new(DehnOracle::new(&rel, 4)?),
                names: default_names(4),
                parabolics: vec![vec![0]],
            })
        }
        "zz-free-product" => {
            let z2 = || Arc::new(FreeAbelian { rank: 2 }) as Arc<dyn GroupOracle>;
            Ok(GroupEntry {
                oracle: Arc::new(FreeProduct::new(vec![z2(), z2()])),
                names: default_names(4),
                parabolics: vec![vec![0, 1], vec![2, 3]],
            })
        }
        _ => {
            let Some(path) = name.strip_prefix("eo:") else {
                return Err(Error::InvalidInput(format!("unknown group {name:?}")));
            };
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let p = parse_presentation(text.trim())?;
            let rel = WordSet::from_words(p.relators.iter().cloned());
            Ok(GroupEntry {
                oracle: Arc::new(DehnOracle::new(&rel, p.generator_count())?),
                names: p.names.clone(),
                parabolics: if p.parabolics.is_empty() { vec![vec![]] } else { p.parabolics },
            })
        }
    }
}

/// `default`, `none` (the trivial subgroup), or generator names with
/// subgroups separated by `;`, e.g. `a,b;c,d`.
pub fn parse_parabolics(spec: &str, entry: &GroupEntry) -> Result<Vec<Vec<usize>>> {
    match spec.trim() {
        "default" => Ok(entry.parabolics.clone()),
        "none" => Ok(vec![vec![]]),
        s => s
            .split(';')
            .map(|part| {
                part.split(',')
                    .map(|n| {
                        let n = n.trim();
                        entry
                            .names
                            .iter()
                            .position(|m| m == n)
                            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {n:?} in --parabolic")))
                    })
                    .collect()
            })
            .collect(),
    }
}
