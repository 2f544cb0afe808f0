use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use latcol::{
    enumerate_node_transitive, enumerate_partitions, node_budget_from_env, render_svg, report_tables,
    two_step_enumerate, verify_catalog, CatalogError, CatalogJson, RunConfig, SubgroupStep, TwoStepConfig,
};

#[derive(Parser)]
#[command(name = "latcol", version, about = "Orbit partitions of the cubic lattices Z^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the partition classes with a given number of orbits.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        orbits: usize,
        /// Subgroup index bound; defaults to orbits * 2^d d!.
        #[arg(long)]
        max_index: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count the node-transitive subgroups of Aut(Z^d) up to conjugacy.
    Transitive {
        #[arg(long)]
        dim: usize,
        /// Required for d = 4.
        #[arg(long)]
        long_run: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Two-orbit partitions of Z^4 via the node-transitive groups, resumable.
    #[command(name = "d4-two-orbit")]
    D4TwoOrbit {
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long, default_value_t = 4, hide = true)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every record of a catalog.
    Verify { catalog: PathBuf },
    /// Draw a plane record as SVG.
    Render {
        #[arg(long)]
        catalog: PathBuf,
        /// Certificate in hex, or a unique prefix of one.
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 12)]
        window: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a catalog as a table.
    Report {
        #[arg(long)]
        catalog: PathBuf,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CatalogError> {
    let started = Instant::now();
    match cli.command {
        Command::Enumerate { dim, orbits, max_index, jobs, out } => {
            let cfg = RunConfig { max_index, jobs, node_budget: node_budget_from_env()?, ..RunConfig::new(dim, orbits) };
            let catalog = enumerate_partitions(&cfg)?;
            catalog.to_json().write(&out)?;
            eprintln!(
                "d={dim} n={orbits}: {} classes from {} subgroups of index <= {} in {:.2?}",
                catalog.records.len(),
                catalog.stats.subgroups_visited,
                catalog.index_bound,
                started.elapsed()
            );
            println!("{}", catalog.records.len());
        }
        Command::Transitive { dim, long_run, jobs } => {
            if dim >= 4 && !long_run {
                return Err(CatalogError::Unsupported("the d = 4 census needs --long-run".into()));
            }
            let groups = enumerate_node_transitive(dim, jobs, node_budget_from_env()?)?;
            for (k, g) in groups.iter().enumerate() {
                let (it, ik) = g.group.index_decomposition();
                println!("{:>5}  {it}*{ik}", k + 1);
            }
            println!("{} node-transitive groups", groups.len());
            eprintln!("census finished in {:.2?}", started.elapsed());
        }
        Command::D4TwoOrbit { checkpoint, dim, jobs, out } => {
            let cfg = TwoStepConfig { dim, jobs, node_budget: node_budget_from_env()?, checkpoint: Some(checkpoint), step: SubgroupStep::default() };
            let catalog = two_step_enumerate(&cfg)?;
            if let Some(out) = out {
                catalog.to_json().write(&out)?;
            }
            let count = |f: fn(&latcol_core::partitions::PartitionFlags) -> bool| {
                catalog.records.iter().filter(|r| f(&r.flags)).count()
            };
            println!(
                "{} classes, {} swap-symmetric, {} superposed",
                catalog.records.len(),
                count(|f| f.swap_symmetric),
                count(|f| f.superposed)
            );
            eprintln!("finished in {:.2?}", started.elapsed());
        }
        Command::Verify { catalog } => {
            let c = CatalogJson::read(&catalog)?;
            let report = verify_catalog(&c);
            for m in &report.mismatches {
                println!("record {} ({}): {}: {}", m.record + 1, m.certificate, m.check, m.detail);
            }
            println!("{} records checked, {} mismatches", report.records_checked, report.mismatches.len());
            if !report.passed() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Render { catalog, id, window, out } => {
            let c = CatalogJson::read(&catalog)?;
            let hits: Vec<_> = c.records.iter().filter(|r| r.certificate.starts_with(&id)).collect();
            let record = match hits.as_slice() {
                [r] => *r,
                _ => c.record(&id)?,
            };
            let p = record.certificate()?.decode()?;
            std::fs::write(&out, render_svg(&p, window)?).map_err(|e| CatalogError::Io { path: out.clone(), source: e })?;
        }
        Command::Report { catalog } => {
            print!("{}", report_tables(&CatalogJson::read(&catalog)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CatalogError::BudgetExhausted { .. } => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
