//! Enumeration drivers: subgroups of `Aut(Z^d)` up to a bound, their orbit
//! partitions, and the records of the distinct partition classes.

use std::collections::BTreeMap;
use std::sync::Mutex;

use latcol_core::crystgeom::{hyperoctahedral_order, AffineMap, CrystGroup};
use latcol_core::fpgroup::{LowIndexSearch, Presentation, SubgroupRecord, DEFAULT_NODE_BUDGET};
use latcol_core::orbits::{orbit_partition, proposition1_check};
use latcol_core::partitions::{analyze, aut_partition_by_inclusion, canonical_form, PartitionCertificate, PartitionRecord};
use latcol_core::subgroups::AutContext;
use latcol_core::typed_search::TypedSearch;
use rayon::prelude::*;

use crate::error::{CatalogError, Result};
use crate::schema::{CatalogJson, Provenance, RecordJson, CATALOG_FORMAT};

pub const NODE_BUDGET_ENV: &str = "LATCOL_NODE_BUDGET";

/// Open search nodes handed to the worker pool per worker.
const SEEDS_PER_JOB: usize = 16;

/// `LATCOL_NODE_BUDGET` if set, otherwise the library default.
pub fn node_budget_from_env() -> Result<u64> {
    match std::env::var(NODE_BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CatalogError::Schema(format!("{NODE_BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub dim: usize,
    pub orbits: usize,
    /// Defaults to `orbits * 2^d d!`.
    pub max_index: Option<usize>,
    pub jobs: usize,
    pub node_budget: u64,
    /// Run the stabilizer-sum identity against `Aut(Z^d)` on every subgroup
    /// the search produces.
    pub check_proposition1: bool,
}

impl RunConfig {
    pub fn new(dim: usize, orbits: usize) -> Self {
        RunConfig { dim, orbits, max_index: None, jobs: 1, node_budget: DEFAULT_NODE_BUDGET, check_proposition1: false }
    }

    pub fn index_bound(&self) -> usize {
        self.max_index.unwrap_or(self.orbits * hyperoctahedral_order(self.dim))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub subgroups_visited: usize,
    pub proposition1_checked: usize,
    pub proposition1_failures: Vec<String>,
    /// Certificates whose inclusion-maximal group differs from the computed
    /// `Aut(Π)`.
    pub inclusion_mismatches: Vec<String>,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub dimension: usize,
    pub orbit_count: usize,
    pub method: &'static str,
    pub presentation: Presentation,
    pub index_bound: usize,
    /// Sorted by certificate.
    pub records: Vec<PartitionRecord>,
    pub stats: RunStats,
}

impl Catalog {
    pub fn to_json(&self) -> CatalogJson {
        CatalogJson {
            format: CATALOG_FORMAT.to_string(),
            dimension: self.dimension,
            orbit_count: self.orbit_count,
            provenance: Provenance {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                method: self.method.to_string(),
                presentation: self.presentation.to_text(),
                index_bound: self.index_bound,
                subgroups_visited: self.stats.subgroups_visited,
            },
            records: self.records.iter().map(RecordJson::from_record).collect(),
        }
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CatalogError::Unsupported(format!("thread pool: {e}")))
}

type SearchKey = (usize, Vec<u8>);

fn key(r: &SubgroupRecord) -> SearchKey {
    (r.index(), r.canonical_table_form.clone())
}

/// Runs a low-index search, mapping every class through `visit` on the
/// worker that found it. Results come back in the order of the classes'
/// canonical tables, whatever the worker count.
pub(crate) fn search_classes<T, F>(search: &LowIndexSearch<'_>, jobs: usize, visit: F) -> latcol_core::Result<Vec<T>>
where
    T: Send,
    F: Fn(&SubgroupRecord) -> latcol_core::Result<Option<T>> + Sync,
{
    let mut found: Vec<(SearchKey, T)> = Vec::new();
    let mut failure = None;
    let take = |r: SubgroupRecord, out: &mut Vec<(SearchKey, T)>, failure: &mut Option<latcol_core::Error>| {
        match visit(&r) {
            Ok(Some(t)) => out.push((key(&r), t)),
            Ok(None) => {}
            Err(e) => *failure = Some(e),
        }
    };
    if jobs <= 1 {
        search.for_each(|r| take(r, &mut found, &mut failure))?;
    } else {
        let seeds = search.split(jobs * SEEDS_PER_JOB, |r| take(r, &mut found, &mut failure))?;
        let chunks: Vec<latcol_core::Result<Vec<(SearchKey, T)>>> = seeds
            .par_iter()
            .map(|seed| {
                let mut out = Vec::new();
                let mut fail = None;
                search.explore(seed, |r| match visit(&r) {
                    Ok(Some(t)) => out.push((key(&r), t)),
                    Ok(None) => {}
                    Err(e) => fail = Some(e),
                })?;
                match fail {
                    Some(e) => Err(e),
                    None => Ok(out),
                }
            })
            .collect();
        for c in chunks {
            found.extend(c?);
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|(_, t)| t).collect())
}

struct Candidate {
    certificate: PartitionCertificate,
    group: CrystGroup,
    witness: AffineMap,
}

/// Every group of index at most the bound, reduced to one record per
/// partition class with exactly `cfg.orbits` colours.
pub fn enumerate_partitions(cfg: &RunConfig) -> Result<Catalog> {
    let ctx = AutContext::new(cfg.dim)?;
    let bound = cfg.index_bound();
    let full = CrystGroup::full(cfg.dim);
    let search = LowIndexSearch::new(ctx.presentation(), bound, cfg.node_budget);
    let failures = Mutex::new(Vec::new());
    let pool = thread_pool(cfg.jobs)?;
    let visited = pool
        .install(|| {
            search_classes(&search, cfg.jobs, |r| {
                let g = ctx.group_from_table(&r.coset_table)?;
                let mut checked = false;
                if cfg.check_proposition1 {
                    let report = proposition1_check(&full, &g)?;
                    if !report.holds() || report.index != r.index() {
                        failures.lock().expect("not poisoned").push(format!("{:?}", g.generators()));
                    }
                    checked = true;
                }
                let p = orbit_partition(&g);
                let candidate = (p.orbit_count() == cfg.orbits).then(|| {
                    let (certificate, witness) = canonical_form(&p);
                    Candidate { certificate, group: g, witness }
                });
                Ok(Some((checked, candidate)))
            })
        })
        .map_err(|e| CatalogError::at_stage(e, "low-index search"))?;
    let mut stats = RunStats {
        subgroups_visited: visited.len(),
        proposition1_checked: visited.iter().filter(|(c, _)| *c).count(),
        proposition1_failures: failures.into_inner().expect("not poisoned"),
        inclusion_mismatches: Vec::new(),
        nodes: search.nodes_spent(),
    };
    let candidates: Vec<Candidate> = visited.into_iter().filter_map(|(_, c)| c).collect();
    let records = pool.install(|| classify(&candidates, &mut stats))?;
    Ok(Catalog {
        dimension: cfg.dim,
        orbit_count: cfg.orbits,
        method: "low-index",
        presentation: ctx.presentation().clone(),
        index_bound: bound,
        records,
        stats,
    })
}

/// Groups candidates by certificate, keeps the first of each class as its
/// generating subgroup, computes its record and cross-checks `Aut(Π)`
/// against the inclusion-maximal group of the class.
fn classify(candidates: &[Candidate], stats: &mut RunStats) -> Result<Vec<PartitionRecord>> {
    let mut first: BTreeMap<&PartitionCertificate, &CrystGroup> = BTreeMap::new();
    for c in candidates {
        first.entry(&c.certificate).or_insert(&c.group);
    }
    let records: Vec<PartitionRecord> = first
        .par_iter()
        .map(|(_, g)| analyze(g))
        .collect::<latcol_core::Result<_>>()?;
    let triples: Vec<(CrystGroup, PartitionCertificate, AffineMap)> =
        candidates.iter().map(|c| (c.group.clone(), c.certificate.clone(), c.witness)).collect();
    let maximal = aut_partition_by_inclusion(&triples)?;
    for r in &records {
        if maximal.get(&r.certificate) != Some(&r.aut.conjugate_by(&r.witness)) {
            stats.inclusion_mismatches.push(hex::encode(r.certificate.as_bytes()));
        }
    }
    Ok(records)
}

/// A node-transitive subgroup with the coset table it came from.
#[derive(Clone, Debug)]
pub struct TransitiveGroup {
    pub group: CrystGroup,
    pub table: latcol_core::fpgroup::CosetTable,
}

/// The node-transitive subgroups of `Aut(Z^d)` up to conjugacy, in the
/// order the search finds them.
pub fn enumerate_node_transitive(dim: usize, jobs: usize, node_budget: u64) -> Result<Vec<TransitiveGroup>> {
    let ctx = AutContext::new(dim)?;
    let search = TypedSearch::new(&ctx, node_budget)?;
    let mut tables = Vec::new();
    search
        .for_each(1, |_, t| tables.push(t))
        .map_err(|e| CatalogError::at_stage(e, "node-transitive census"))?;
    let groups = thread_pool(jobs)?.install(|| {
        tables
            .into_par_iter()
            .map(|table| Ok(TransitiveGroup { group: ctx.group_from_table(&table)?, table }))
            .collect::<latcol_core::Result<_>>()
    })?;
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_has_three_two_colourings() {
        let cat = enumerate_partitions(&RunConfig::new(1, 2)).unwrap();
        assert_eq!(cat.records.len(), 3);
        assert!(cat.stats.inclusion_mismatches.is_empty());
    }

    #[test]
    fn budget_exhaustion_names_the_stage() {
        let mut cfg = RunConfig::new(2, 2);
        cfg.node_budget = 10;
        match enumerate_partitions(&cfg) {
            Err(CatalogError::BudgetExhausted { stage, budget }) => {
                assert_eq!(stage, "low-index search");
                assert_eq!(budget, 10);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }
}
