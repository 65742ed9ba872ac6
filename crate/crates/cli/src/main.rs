use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use grouplen_core::formations::Formation;
use grouplen_core::harness::{self, GroupSpec, VerifyConfig};
use grouplen_core::modrep::counterexample_chain;
use grouplen_core::structure::SigmaPartition;
use grouplen_core::Limits;

#[derive(Parser)]
#[command(name = "grouplen", version, about = "Fitting-type lengths of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report radicals, lengths and residuals of every group in a file.
    Analyze {
        file: PathBuf,
        /// σ-partition, e.g. `2,3|*` (per-prime by default).
        #[arg(long, default_value = "*")]
        sigma: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        /// Formation for residual lengths; may be repeated.
        #[arg(long)]
        formation: Vec<String>,
        /// Only the group with this name.
        #[arg(long)]
        group: Option<String>,
    },
    /// Run the verification suite over a group file and print the JSON report.
    Verify {
        file: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the chain of affine extensions and print its difference table.
    Construct {
        #[arg(long, default_value = "*")]
        sigma: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Defaults to `GROUPLEN_SEED`, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for the group file and the provenance JSON.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the bundled corpus.
    Corpus,
}

fn read_corpus(path: &Path) -> Result<Vec<GroupSpec>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    harness::parse_corpus(&text).with_context(|| format!("parsing {}", path.display()))
}

fn analyze(file: &Path, sigma: &str, primes: &[u64], formations: &[String], only: Option<&str>) -> Result<()> {
    let limits = Limits::default().with_env()?;
    let sigma: SigmaPartition = sigma.parse()?;
    let formations = formations
        .iter()
        .map(|f| f.parse::<Formation>())
        .collect::<grouplen_core::Result<Vec<_>>>()?;
    let specs = read_corpus(file)?;
    let mut reports = Vec::new();
    for spec in specs.iter().filter(|s| only.is_none_or(|n| s.name == n)) {
        reports.push(harness::analyze(spec, &sigma, primes, &formations, &limits)?);
    }
    if let Some(name) = only {
        if reports.is_empty() {
            bail!("no group named '{name}' in {}", file.display());
        }
    }
    println!("{}", serde_json::to_string_pretty(&reports)?);
    Ok(())
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var("GROUPLEN_SEED") {
        Ok(v) => Ok(Some(v.trim().parse().with_context(|| format!("GROUPLEN_SEED: '{v}' is not an integer"))?)),
        Err(_) => Ok(None),
    }
}

fn verify(file: &Path, config: Option<&Path>, out: Option<&Path>) -> Result<bool> {
    let mut cfg: VerifyConfig = match config {
        Some(p) => serde_json::from_str(&fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)
            .with_context(|| format!("parsing {}", p.display()))?,
        None => VerifyConfig::default(),
    };
    cfg.limits = cfg.limits.with_env()?;
    if let Some(seed) = env_seed()? {
        cfg.seed = seed;
    }
    let specs = read_corpus(file)?;
    let report = harness::verify(&specs, &cfg)?;
    let json = report.to_json();
    match out {
        Some(p) => fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{json}"),
    }
    let t = &report.summary.totals;
    eprintln!(
        "{} groups, {} checks: {} pass, {} fail, {} skipped, {} recorded",
        report.summary.groups, report.summary.checks, t.pass, t.fail, t.skipped, t.recorded
    );
    Ok(t.fail == 0)
}

fn construct(sigma: &str, p: u64, n: usize, seed: u64, out: &Path) -> Result<()> {
    let limits = Limits::default().with_env()?;
    let sigma: SigmaPartition = sigma.parse()?;
    let chain = counterexample_chain(&sigma, p, n, seed, &limits)?;
    let mut specs: Vec<GroupSpec> = chain
        .groups
        .iter()
        .enumerate()
        .map(|(k, g)| GroupSpec::from_group(&format!("G_{}", k + 1), g))
        .collect();
    for (k, m) in chain.m.iter().enumerate() {
        let mut spec = GroupSpec::from_group(&format!("M_{}", k + 1), m);
        spec.tags.push(format!("subgroup-of:G_{}", n + 1));
        specs.push(spec);
    }
    fs::create_dir_all(out)?;
    let stem = format!("chain_p{p}_n{n}");
    let group_file = out.join(format!("{stem}.grp"));
    let json_file = out.join(format!("{stem}.json"));
    let header = format!("# affine-extension chain: sigma {sigma}, p {p}, n {n}, seed {seed}\n\n");
    fs::write(&group_file, header + &harness::render_corpus(&specs))?;
    let provenance = serde_json::json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "sigma": sigma,
        "p": p,
        "n": n,
        "seed": seed,
        "primes": chain.primes,
        "group_file": group_file.file_name().map(|f| f.to_string_lossy()),
        "levels": chain.levels,
    });
    fs::write(&json_file, serde_json::to_string_pretty(&provenance)? + "\n")?;

    println!("{:>2} {:>4} {:>4} {:>10} {:>8} {:>9} {:>7} {:>7} {:>5}", "i", "p_i", "dim", "|G_i+1|", "|M_i|", "l_s(M_i)", "n_s(G)", "n_s(M)", "diff");
    for l in &chain.levels {
        println!(
            "{:>2} {:>4} {:>4} {:>10} {:>8} {:>9} {:>7} {:>7} {:>5}",
            l.i,
            l.prime,
            l.dimension,
            l.group_order,
            l.m_order,
            l.l_sigma_m.to_string(),
            l.n_sigma_g.to_string(),
            l.n_sigma_m.to_string(),
            l.difference
        );
    }
    println!("wrote {} and {}", group_file.display(), json_file.display());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            file,
            sigma,
            primes,
            formation,
            group,
        } => analyze(&file, &sigma, &primes, &formation, group.as_deref())?,
        Command::Verify { file, config, out } => {
            if !verify(&file, config.as_deref(), out.as_deref())? {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Construct { sigma, p, n, seed, out } => {
            let seed = match seed {
                Some(s) => s,
                None => env_seed()?.unwrap_or(0),
            };
            construct(&sigma, p, n, seed, &out)?
        }
        Command::Corpus => print!("{}", harness::BUNDLED_CORPUS),
    }
    Ok(ExitCode::SUCCESS)
}
