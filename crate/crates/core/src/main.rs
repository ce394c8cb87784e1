use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cbabc::harness::{
    self, compare_table, emit_plot_data, parse_list, runs_csv, Algorithm, CampaignConfig, CampaignStats, Layout,
    ProblemSpec, TSP_CYCLE_GRID,
};
use cbabc::tsp::{default_instance_seed, TspInstance};
use cbabc::{AbcConfig, Error, ReplacementTarget, Result};

#[derive(Parser)]
#[command(name = "cbabc", version, about = "Bee colony optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// MO/AE comparison on the continuous test functions.
    Bench(BenchArgs),
    /// Tour-length comparison over a grid of cycle budgets.
    Tsp(TspArgs),
    /// Write a random TSP instance file.
    GenInstance(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Abc,
    Cbabc,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Replace {
    PairWorst,
    PopulationWorst,
}

#[derive(Args)]
struct OptimizerArgs {
    /// Algorithms to compare, comma separated.
    #[arg(long, value_delimiter = ',', default_values = ["abc", "cbabc"])]
    algo: Vec<Algo>,
    /// Crossover probabilities for cbabc, comma separated.
    #[arg(long, default_value = "0.1,0.2,0.3")]
    pr: String,
    #[arg(long, value_enum, default_value = "pair-worst")]
    replace: Replace,
    /// Food sources; employed and onlooker bees get half each.
    #[arg(long, default_value_t = 20)]
    sn: usize,
    #[arg(long, default_value_t = 100)]
    limit: u32,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Objective value counted as success for AE.
    #[arg(long, default_value_t = 1e-5)]
    threshold: f64,
    /// Run sequentially instead of across threads.
    #[arg(long)]
    sequential: bool,
    /// Output directory.
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Test functions, comma separated.
    #[arg(long, default_value = "sphere,griewank,rastrigin,rosenbrock")]
    problem: String,
    #[arg(long, default_value_t = 30)]
    dim: usize,
    /// Maximum cycles.
    #[arg(long, default_value_t = 2000)]
    cycles: u64,
    /// Evaluation budget.
    #[arg(long, default_value_t = 20_000)]
    budget: u64,
    #[command(flatten)]
    opt: OptimizerArgs,
}

#[derive(Args)]
struct TspArgs {
    /// City counts of generated instances, comma separated.
    #[arg(long, default_value = "10,20,30", conflicts_with = "instance")]
    n: String,
    /// Instance file instead of generated instances.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Seed for generated instances; defaults to a fixed seed per city count.
    #[arg(long)]
    instance_seed: Option<u64>,
    #[arg(long, default_value = "500,1000,1500,2000,2500,3000")]
    cycles_grid: String,
    /// Evaluation budget; unlimited by default so the cycle grid governs.
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    opt: OptimizerArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

impl OptimizerArgs {
    fn algorithms(&self) -> Result<Vec<Algorithm>> {
        let prs: Vec<f64> = parse_list(&self.pr)?;
        let mut algos = Vec::new();
        for a in &self.algo {
            match a {
                Algo::Abc => algos.push(Algorithm::Abc),
                Algo::Cbabc => algos.extend(prs.iter().map(|&pr| Algorithm::CbAbc { pr })),
                Algo::Random => algos.push(Algorithm::RandomSearch),
            }
        }
        if algos.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        Ok(algos)
    }

    fn campaign(&self, problem: ProblemSpec, max_cycles: u64, eval_budget: u64) -> Result<CampaignConfig> {
        let base = AbcConfig {
            limit: self.limit,
            max_cycles,
            eval_budget,
            replacement: match self.replace {
                Replace::PairWorst => ReplacementTarget::PairWorst,
                Replace::PopulationWorst => ReplacementTarget::PopulationWorst,
            },
            seed: self.seed,
            ..AbcConfig::default().with_sn(self.sn)
        };
        Ok(CampaignConfig {
            problem,
            algorithms: self.algorithms()?,
            runs: self.runs,
            success_threshold: self.threshold,
            base,
            parallel: !self.sequential,
        })
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.into(), source })
}

fn prepare_out(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.into(), source })
}

fn emit_campaign(dir: &Path, stats: &CampaignStats) -> Result<()> {
    emit_plot_data(stats, dir.join(format!("plot_{}.csv", stats.problem)))?;
    write(&dir.join(format!("runs_{}.csv", stats.problem)), &runs_csv(stats))
}

fn bench(args: BenchArgs) -> Result<()> {
    let names: Vec<String> = parse_list(&args.problem)?;
    let specs = names.iter().map(|n| ProblemSpec::benchmark(n, args.dim)).collect::<Result<Vec<_>>>()?;
    prepare_out(&args.opt.out)?;
    let mut all = Vec::new();
    for spec in specs {
        let stats = harness::run_campaign(&args.opt.campaign(spec, args.cycles, args.budget)?)?;
        emit_campaign(&args.opt.out, &stats)?;
        all.push(stats);
    }
    let table = compare_table(&all, &Layout::Benchmark)?;
    write(&args.opt.out.join("bench_table.csv"), &table.to_csv())?;
    print!("{}", table.to_text());
    Ok(())
}

fn tsp(args: TspArgs) -> Result<()> {
    let grid: Vec<u64> = parse_list(&args.cycles_grid)?;
    let max_cycles = grid.iter().copied().max().unwrap_or(TSP_CYCLE_GRID[5]);
    let specs = match &args.instance {
        Some(path) => vec![ProblemSpec::tsp_file(path)?],
        None => parse_list::<usize>(&args.n)?
            .into_iter()
            .map(|n| ProblemSpec::tsp_generated(n, args.instance_seed.unwrap_or_else(|| default_instance_seed(n))))
            .collect::<Result<_>>()?,
    };
    prepare_out(&args.opt.out)?;
    let mut all = Vec::new();
    for spec in specs {
        let cfg = args.opt.campaign(spec, max_cycles, args.budget.unwrap_or(u64::MAX))?;
        let stats = harness::run_campaign(&cfg)?;
        emit_campaign(&args.opt.out, &stats)?;
        all.push(stats);
    }
    let table = compare_table(&all, &Layout::Tsp { cycles: grid })?;
    write(&args.opt.out.join("tsp_table.csv"), &table.to_csv())?;
    print!("{}", table.to_text());
    Ok(())
}

fn gen_instance(args: GenArgs) -> Result<()> {
    TspInstance::generate(args.n, args.seed)?.save(&args.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Tsp(args) => tsp(args),
        Command::GenInstance(args) => gen_instance(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
