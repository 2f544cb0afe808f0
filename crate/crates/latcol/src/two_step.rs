//! Two-orbit partitions from the node-transitive groups. The colour-fixing
//! group of a two-orbit partition is a maximal subgroup of every minimal
//! transitive group containing it, with index at most `2 |Stab_G(x)|`.
//! Candidates below each transitive `G` come either from its maximal
//! subgroups or from a low-index search over a presentation of `G`.
//!
//! Progress is appended to a checkpoint file as JSON lines so an interrupted
//! run resumes where it stopped.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use latcol_core::crystgeom::{hyperoctahedral_order, CrystGroup};
use latcol_core::fpgroup::{reidemeister_schreier, LowIndexSearch};
use latcol_core::maximal::{admissible_indices, MaximalSubgroups};
use latcol_core::orbits::orbit_partition;
use latcol_core::partitions::{analyze, canonical_certificate, PartitionCertificate};
use latcol_core::subgroups::AutContext;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CatalogError, Result};
use crate::pipeline::{enumerate_node_transitive, search_classes, Catalog, RunStats, TransitiveGroup};
use crate::schema::GroupJson;

#[derive(Clone, Debug)]
pub struct TwoStepConfig {
    pub dim: usize,
    pub jobs: usize,
    /// Applies separately to the census and to each transitive group.
    pub node_budget: u64,
    pub checkpoint: Option<PathBuf>,
    pub step: SubgroupStep,
}

/// How the two-orbit groups below a transitive group are found.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubgroupStep {
    /// Maximal subgroups of admissible index.
    #[default]
    Maximal,
    /// Every subgroup of index at most `2 |Stab_G(x)|`, by low-index search
    /// over a Reidemeister-Schreier presentation.
    LowIndex,
}

impl SubgroupStep {
    fn method(self) -> &'static str {
        match self {
            SubgroupStep::Maximal => "two-step-maximal",
            SubgroupStep::LowIndex => "two-step-low-index",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CheckpointLine {
    /// Size of the node-transitive census, which is recomputed on resume.
    Census { dim: usize, groups: usize },
    /// Two-orbit groups found below transitive group number `transitive`,
    /// one per certificate, out of `visited`.
    Transitive { transitive: usize, visited: usize, found: Vec<FoundJson> },
}

#[derive(Serialize, Deserialize)]
struct FoundJson {
    certificate: String,
    group: GroupJson,
}

#[derive(Default)]
struct Checkpoint {
    census: Option<usize>,
    done: BTreeMap<usize, (usize, Vec<FoundJson>)>,
}

fn read_checkpoint(path: &Path, dim: usize) -> Result<Checkpoint> {
    let mut cp = Checkpoint::default();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cp),
        Err(e) => return Err(CatalogError::io(path, e)),
    };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        match serde_json::from_str(line)? {
            CheckpointLine::Census { dim: d, groups } => {
                if d != dim {
                    return Err(CatalogError::Schema(format!("checkpoint is for dimension {d}")));
                }
                cp.census = Some(groups);
            }
            CheckpointLine::Transitive { transitive, visited, found } => {
                cp.done.insert(transitive, (visited, found));
            }
        }
    }
    Ok(cp)
}

struct Appender(Option<Mutex<std::fs::File>>);

impl Appender {
    fn open(path: Option<&Path>) -> Result<Self> {
        let Some(p) = path else { return Ok(Appender(None)) };
        let f = OpenOptions::new().create(true).append(true).open(p).map_err(|e| CatalogError::io(p, e))?;
        Ok(Appender(Some(Mutex::new(f))))
    }

    fn push(&self, line: &CheckpointLine, path: Option<&Path>) -> Result<()> {
        let Some(f) = &self.0 else { return Ok(()) };
        let mut text = serde_json::to_string(line)?;
        text.push('\n');
        let mut f = f.lock().expect("not poisoned");
        f.write_all(text.as_bytes())
            .and_then(|_| f.flush())
            .map_err(|e| CatalogError::io(path.unwrap_or(Path::new("checkpoint")), e))
    }
}

fn two_orbit_maximal(
    maximal: &MaximalSubgroups,
    ctx: &AutContext,
    g: &TransitiveGroup,
) -> latcol_core::Result<Vec<(PartitionCertificate, CrystGroup)>> {
    let stabilizer = hyperoctahedral_order(ctx.dim()) / g.group.index();
    let mut out = Vec::new();
    for h in maximal.maximal_subgroups(&g.group, &admissible_indices(stabilizer, 2))? {
        let p = orbit_partition(&h);
        if p.orbit_count() == 2 {
            out.push((canonical_certificate(&p), h));
        }
    }
    Ok(out)
}

/// Two-orbit groups of index at most `2 |Stab_G(x)|` in the transitive `g`.
fn two_orbit_low_index(
    ctx: &AutContext,
    g: &TransitiveGroup,
    node_budget: u64,
) -> latcol_core::Result<Vec<(PartitionCertificate, CrystGroup)>> {
    let stabilizer = hyperoctahedral_order(ctx.dim()) / g.group.index();
    let sub = reidemeister_schreier(ctx.presentation(), &g.table)?.simplify();
    let search = LowIndexSearch::new(&sub.presentation, 2 * stabilizer, node_budget);
    search_classes(&search, 1, |r| {
        let table = sub.induced_table(ctx.presentation(), &g.table, &r.coset_table)?;
        let h = ctx.group_from_table(&table)?;
        let p = orbit_partition(&h);
        Ok((p.orbit_count() == 2).then(|| (canonical_certificate(&p), h)))
    })
}

#[derive(Default)]
struct Found {
    visited: usize,
    groups: BTreeMap<PartitionCertificate, (usize, CrystGroup)>,
}

impl Found {
    fn offer(&mut self, k: usize, cert: PartitionCertificate, h: CrystGroup) {
        match self.groups.get(&cert) {
            Some((j, _)) if *j <= k => {}
            _ => {
                self.groups.insert(cert, (k, h));
            }
        }
    }

    fn merge(mut self, other: Found) -> Found {
        self.visited += other.visited;
        for (c, (k, h)) in other.groups {
            self.offer(k, c, h);
        }
        self
    }
}

/// The two-orbit catalog assembled from the node-transitive groups.
pub fn two_step_enumerate(cfg: &TwoStepConfig) -> Result<Catalog> {
    let ctx = AutContext::new(cfg.dim)?;
    let path = cfg.checkpoint.as_deref();
    let cp = match path {
        Some(p) => read_checkpoint(p, cfg.dim)?,
        None => Checkpoint::default(),
    };
    let out = Appender::open(path)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| CatalogError::Unsupported(format!("thread pool: {e}")))?;

    let transitive = enumerate_node_transitive(cfg.dim, cfg.jobs, cfg.node_budget)?;
    match cp.census {
        Some(n) if n != transitive.len() => {
            return Err(CatalogError::Schema(format!("checkpoint census has {n} groups, found {}", transitive.len())))
        }
        Some(_) => {}
        None => out.push(&CheckpointLine::Census { dim: cfg.dim, groups: transitive.len() }, path)?,
    }

    // first transitive group and its two-orbit group, per certificate
    let mut best = Found::default();
    for (&k, (visited, found)) in &cp.done {
        best.visited += visited;
        for f in found {
            let cert = PartitionCertificate::from_bytes(
                hex::decode(&f.certificate).map_err(|e| CatalogError::Schema(e.to_string()))?,
            );
            best.offer(k, cert, f.group.to_group(cfg.dim)?.0);
        }
    }

    let maximal = (cfg.step == SubgroupStep::Maximal).then(|| MaximalSubgroups::new(cfg.dim));
    let pending: Vec<usize> = (0..transitive.len()).filter(|k| !cp.done.contains_key(k)).collect();
    let fresh = pool.install(|| {
        pending
            .par_iter()
            .try_fold(Found::default, |mut acc, &k| {
                let found = match &maximal {
                    Some(m) => two_orbit_maximal(m, &ctx, &transitive[k]),
                    None => two_orbit_low_index(&ctx, &transitive[k], cfg.node_budget),
                }
                .map_err(|e| CatalogError::at_stage(e, &format!("subgroups of transitive group {k}")))?;
                let visited = found.len();
                let mut unique: BTreeMap<PartitionCertificate, CrystGroup> = BTreeMap::new();
                for (c, h) in found {
                    unique.entry(c).or_insert(h);
                }
                let line = CheckpointLine::Transitive {
                    transitive: k,
                    visited,
                    found: unique
                        .iter()
                        .map(|(c, h)| FoundJson { certificate: hex::encode(c.as_bytes()), group: GroupJson::from_group(h) })
                        .collect(),
                };
                out.push(&line, path)?;
                acc.visited += visited;
                for (c, h) in unique {
                    acc.offer(k, c, h);
                }
                Ok::<_, CatalogError>(acc)
            })
            .try_reduce(Found::default, |a, b| Ok(a.merge(b)))
    })?;
    let best = best.merge(fresh);
    let visited = best.visited;
    let first: Vec<CrystGroup> = best.groups.into_values().map(|(_, h)| h).collect();
    let mut records = pool.install(|| first.par_iter().map(analyze).collect::<latcol_core::Result<Vec<_>>>())?;
    records.sort_by(|a, b| a.certificate.cmp(&b.certificate));
    Ok(Catalog {
        dimension: cfg.dim,
        orbit_count: 2,
        method: cfg.step.method(),
        presentation: ctx.presentation().clone(),
        index_bound: 2 * hyperoctahedral_order(cfg.dim),
        records,
        stats: RunStats { subgroups_visited: visited, ..RunStats::default() },
    })
}
