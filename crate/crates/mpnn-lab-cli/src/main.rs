//! `mpnn-lab`: build graph-universe datasets, compute communication
//! capacities and lower bounds, analyze protocol tables, and run the
//! quantized message-passing simulator.
//!
//! Every subcommand that takes a `--seed` is byte-reproducible: the same
//! invocation produces identical output on any platform. The environment
//! variable `MPNN_LAB_THREADS` caps the worker-thread count.

mod config;
mod parse;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mpnn_lab::bounds::{main_bounds, Readout};
use mpnn_lab::capacity::{capacity_exact, capacity_upper_bound, gin_capacity, MpnnSchedule};
use mpnn_lab::enumeration::{enumerate_connected_graphs, enumerate_trees, CensusFamily};
use mpnn_lab::graph::text::{format_graphs, parse_graphs};
use mpnn_lab::protocol::{class_count_bound, min_monochromatic_partition, MAX_PARTITION_CELLS};
use mpnn_lab::simulator::{collision_rate, ReadoutMode};
use mpnn_lab::universe::{
    dataset_stats, generate_dataset, read_dataset, write_dataset, DatasetSpec, Universe,
};
use mpnn_lab::util::derive_seed;
use mpnn_lab::{CutConvention, GraphInstance, NodeSet};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "mpnn-lab",
    version,
    about = "Communication-capacity toolkit for message-passing networks",
    after_help = "Any subcommand accepts `--config FILE` with `key = value` lines; \
                  command-line flags override the file."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Graphs,
    Trees,
}

impl From<FamilyArg> for CensusFamily {
    fn from(arg: FamilyArg) -> CensusFamily {
        match arg {
            FamilyArg::Graphs => CensusFamily::ConnectedGraphs,
            FamilyArg::Trees => CensusFamily::Trees,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadoutArg {
    Majority,
    Consensus,
}

impl From<ReadoutArg> for Readout {
    fn from(arg: ReadoutArg) -> Readout {
        match arg {
            ReadoutArg::Majority => Readout::Majority,
            ReadoutArg::Consensus => Readout::Consensus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Undirected,
    Bidirectional,
}

impl From<ConventionArg> for CutConvention {
    fn from(arg: ConventionArg) -> CutConvention {
        match arg {
            ConventionArg::Undirected => CutConvention::Undirected,
            ConventionArg::Bidirectional => CutConvention::Bidirectional,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all isomorphism classes of a family on v nodes.
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        v: usize,
        /// Write the representatives in the graph text format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build or inspect glued-universe datasets.
    #[command(subcommand)]
    Universe(UniverseCommand),
    /// Exact and closed-form capacity of a schedule on a split graph.
    Capacity {
        /// Graph file in the text format (one graph per line).
        #[arg(long)]
        graph: PathBuf,
        /// Which line of the graph file to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Nodes of part A, e.g. `0,1,2`.
        #[arg(long, value_parser = parse::parse_node_list)]
        part_a: NodeSet,
        /// Nodes of part B; defaults to the complement of part A.
        #[arg(long, value_parser = parse::parse_node_list)]
        part_b: Option<NodeSet>,
        /// Schedule spec such as `d=3,w=2,m=2,gamma=0,s=2`.
        #[arg(long, value_parser = parse::parse_schedule)]
        schedule: MpnnSchedule,
        #[arg(long, value_enum, default_value = "bidirectional")]
        convention: ConventionArg,
    },
    /// Evaluate the lower bounds for one configuration.
    Bounds {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        readout: ReadoutArg,
        #[arg(long, default_value_t = 2)]
        s: u64,
        /// Edge probability for the expected-case graph bound.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Bounds for both readouts over a range of n.
    BoundSweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
        #[arg(long, default_value_t = 2)]
        s: u64,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Analyze a function table.
    #[command(subcommand)]
    Protocol(ProtocolCommand),
    /// Collision rate of a schedule on a dataset.
    Simulate {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_parser = parse::parse_schedule)]
        schedule: MpnnSchedule,
        #[arg(long, value_enum, default_value = "consensus")]
        mode: ReadoutModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use only the first N instances.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "bidirectional")]
        convention: ConventionArg,
    },
    /// Regenerate the class/degree/diameter summary for all 12 tasks.
    ReproduceTable {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the CSV to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Capacity (and optionally collision rate) over a depth/width grid.
    CapacityGrid {
        #[arg(long)]
        dataset: PathBuf,
        /// Depth grid, e.g. `2,3,4,5,6,7,8`.
        #[arg(long, default_value = "2,3,4,5,6,7,8")]
        depths: String,
        /// Width grid, e.g. `1,2,4,8,16`.
        #[arg(long, default_value = "1,2,4,8,16")]
        widths: String,
        /// Also run the simulator per cell.
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        s: u64,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "bidirectional")]
        convention: ConventionArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadoutModeArg {
    Majority,
    Consensus,
}

impl From<ReadoutModeArg> for ReadoutMode {
    fn from(arg: ReadoutModeArg) -> ReadoutMode {
        match arg {
            ReadoutModeArg::Majority => ReadoutMode::Majority,
            ReadoutModeArg::Consensus => ReadoutMode::Consensus,
        }
    }
}

#[derive(Subcommand)]
enum UniverseCommand {
    /// Sample a dataset from a universe and write it as JSONL.
    Build(UniverseBuildArgs),
    /// Summarize a dataset file.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        /// Family tag for the summary row; inferred from edge counts
        /// when omitted.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

#[derive(Args)]
struct UniverseBuildArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.9)]
    train_frac: f64,
    #[arg(long, default_value_t = 0.05)]
    valid_frac: f64,
    #[arg(long, default_value_t = 0.05)]
    test_frac: f64,
}

#[derive(Subcommand)]
enum ProtocolCommand {
    /// Distinct values, the class-count bound, and (on small tables)
    /// the exact minimum monochromatic partition, as JSON.
    Analyze {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value_t = 2)]
        s: u64,
    },
}

fn main() -> Result<()> {
    init_thread_pool()?;
    let args = config::expand_config_args(std::env::args().collect())?;
    let cli = Cli::parse_from(args);
    match cli.command {
        Command::Enumerate { family, v, out } => cmd_enumerate(family.into(), v, out),
        Command::Universe(UniverseCommand::Build(args)) => cmd_universe_build(args),
        Command::Universe(UniverseCommand::Stats {
            input,
            family,
            format,
        }) => cmd_universe_stats(&input, family, format),
        Command::Capacity {
            graph,
            index,
            part_a,
            part_b,
            schedule,
            convention,
        } => cmd_capacity(&graph, index, part_a, part_b, &schedule, convention.into()),
        Command::Bounds {
            family,
            n,
            readout,
            s,
            p,
            format,
        } => cmd_bounds(family.into(), n, readout.into(), s, p, format),
        Command::BoundSweep {
            family,
            n_min,
            n_max,
            step,
            s,
            p,
        } => cmd_bound_sweep(family.into(), n_min, n_max, step, s, p),
        Command::Protocol(ProtocolCommand::Analyze { table, s }) => cmd_protocol_analyze(&table, s),
        Command::Simulate {
            dataset,
            schedule,
            mode,
            seed,
            limit,
            convention,
        } => cmd_simulate(&dataset, &schedule, mode.into(), seed, limit, convention.into()),
        Command::ReproduceTable { samples, seed, out } => cmd_reproduce_table(samples, seed, out),
        Command::CapacityGrid {
            dataset,
            depths,
            widths,
            simulate,
            seed,
            s,
            limit,
            convention,
        } => cmd_capacity_grid(
            &dataset,
            &depths,
            &widths,
            simulate,
            seed,
            s,
            limit,
            convention.into(),
        ),
    }
}

fn init_thread_pool() -> Result<()> {
    if let Ok(value) = std::env::var("MPNN_LAB_THREADS") {
        let threads: usize = value
            .parse()
            .context("MPNN_LAB_THREADS must be a positive integer")?;
        if threads == 0 {
            bail!("MPNN_LAB_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("initializing the worker pool")?;
    }
    Ok(())
}

fn cmd_enumerate(family: CensusFamily, v: usize, out: Option<PathBuf>) -> Result<()> {
    let census = match family {
        CensusFamily::ConnectedGraphs => enumerate_connected_graphs(v)?,
        CensusFamily::Trees => enumerate_trees(v)?,
    };
    if let Some(path) = out {
        let text = format_graphs(census.representatives())?;
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("family,v,count");
    println!("{},{},{}", family, v, census.len());
    Ok(())
}

fn cmd_universe_build(args: UniverseBuildArgs) -> Result<()> {
    let universe = Universe::build(args.family.into(), args.n)?;
    let spec = DatasetSpec {
        size: args.size,
        seed: args.seed,
        fractions: [args.train_frac, args.valid_frac, args.test_frac],
    };
    let instances = generate_dataset(&universe, &spec)?;
    write_dataset(&instances, &args.out)?;
    eprintln!(
        "wrote {} instances ({} classes available) to {}",
        instances.len(),
        universe.class_count(),
        args.out.display()
    );
    Ok(())
}

fn infer_family(instances: &[GraphInstance]) -> CensusFamily {
    let all_trees = instances
        .iter()
        .all(|inst| inst.graph.edge_count() == inst.graph.n() - 1);
    if all_trees {
        CensusFamily::Trees
    } else {
        CensusFamily::ConnectedGraphs
    }
}

fn cmd_universe_stats(
    input: &PathBuf,
    family: Option<FamilyArg>,
    format: FormatArg,
) -> Result<()> {
    let instances = read_dataset(input)?;
    if instances.is_empty() {
        bail!("dataset {} is empty", input.display());
    }
    let family: CensusFamily = family
        .map(Into::into)
        .unwrap_or_else(|| infer_family(&instances));
    let n = instances[0].graph.n();
    let stats = dataset_stats(&instances);
    match format {
        FormatArg::Csv => {
            println!("family,n,classes,avg_degree,avg_diameter");
            println!(
                "{},{},{},{:.6},{:.6}",
                family, n, stats.classes_observed, stats.avg_degree, stats.avg_diameter
            );
        }
        FormatArg::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "family": family.to_string(),
                    "n": n,
                    "classes": stats.classes_observed,
                    "instances": stats.instances,
                    "avg_degree": stats.avg_degree,
                    "avg_degree_standard": stats.avg_degree_standard,
                    "avg_diameter": stats.avg_diameter,
                })
            );
        }
    }
    Ok(())
}

fn cmd_capacity(
    graph: &PathBuf,
    index: usize,
    part_a: NodeSet,
    part_b: Option<NodeSet>,
    schedule: &MpnnSchedule,
    convention: CutConvention,
) -> Result<()> {
    let text = std::fs::read_to_string(graph)
        .with_context(|| format!("reading {}", graph.display()))?;
    let graphs = parse_graphs(&text)?;
    let Some(g) = graphs.get(index) else {
        bail!("graph index {index} out of range ({} graphs)", graphs.len());
    };
    let part_b = part_b.unwrap_or_else(|| {
        (0..g.n()).filter(|&i| !part_a.contains(i)).collect()
    });
    let exact = capacity_exact(g, part_a, part_b, schedule)?;
    let cut = g.min_separating_cut(part_a, part_b, convention)?;
    let upper = capacity_upper_bound(schedule, cut);
    println!("exact,upper_bound,cut");
    println!("{exact},{upper},{cut}");
    Ok(())
}

fn cmd_bounds(
    family: CensusFamily,
    n: usize,
    readout: Readout,
    s: u64,
    p: Option<f64>,
    format: FormatArg,
) -> Result<()> {
    let report = main_bounds(n, family, readout, s, p)?;
    match format {
        FormatArg::Csv => {
            println!("family,n,s,readout,beta_both,bound_one,upper,vacuous");
            println!(
                "{},{},{},{},{:.6},{:.6},{:.6},{}",
                report.family,
                report.n,
                report.s,
                report.readout,
                report.beta_both,
                report.bound_one,
                report.upper_bound,
                report.vacuous
            );
        }
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}

fn cmd_bound_sweep(
    family: CensusFamily,
    n_min: usize,
    n_max: usize,
    step: usize,
    s: u64,
    p: Option<f64>,
) -> Result<()> {
    if step == 0 || n_min > n_max {
        bail!("need step >= 1 and n-min <= n-max");
    }
    println!("family,n,s,readout,bound,vacuous");
    let mut n = n_min;
    while n <= n_max {
        for readout in [Readout::Majority, Readout::Consensus] {
            let report = main_bounds(n, family, readout, s, p)?;
            println!(
                "{},{},{},{},{:.6},{}",
                report.family,
                report.n,
                report.s,
                report.readout,
                report.applicable_bound(),
                report.vacuous
            );
        }
        n += step;
    }
    Ok(())
}

fn cmd_protocol_analyze(table: &PathBuf, s: u64) -> Result<()> {
    let text = std::fs::read_to_string(table)
        .with_context(|| format!("reading {}", table.display()))?;
    let table = parse::parse_table(&text)?;
    let cells = table.rows() * table.cols();
    let min_partition = if cells <= MAX_PARTITION_CELLS {
        Some(min_monochromatic_partition(&table)?)
    } else {
        None
    };
    println!(
        "{}",
        serde_json::json!({
            "rows": table.rows(),
            "cols": table.cols(),
            "distinct_values": table.distinct_values(),
            "class_count_bound": class_count_bound(&table, s),
            "min_monochromatic_partition": min_partition,
        })
    );
    Ok(())
}

fn load_limited(dataset: &PathBuf, limit: Option<usize>) -> Result<Vec<GraphInstance>> {
    let mut instances = read_dataset(dataset)?;
    if let Some(limit) = limit {
        instances.truncate(limit);
    }
    Ok(instances)
}

fn cmd_simulate(
    dataset: &PathBuf,
    schedule: &MpnnSchedule,
    mode: ReadoutMode,
    seed: u64,
    limit: Option<usize>,
    convention: CutConvention,
) -> Result<()> {
    let instances = load_limited(dataset, limit)?;
    let report = collision_rate(&instances, schedule, mode, seed)?;
    // Universe members split over a single bridge.
    let capacity = capacity_upper_bound(schedule, convention.scale());
    println!("capacity,collision_rate,pairs_checked");
    println!("{},{:.6},{}", capacity, report.rate, report.pairs_checked);
    Ok(())
}

/// The 12 summary tasks: four graph universes and eight tree universes.
const TABLE_TASKS: [(CensusFamily, usize); 12] = [
    (CensusFamily::ConnectedGraphs, 6),
    (CensusFamily::ConnectedGraphs, 8),
    (CensusFamily::ConnectedGraphs, 10),
    (CensusFamily::ConnectedGraphs, 12),
    (CensusFamily::Trees, 8),
    (CensusFamily::Trees, 10),
    (CensusFamily::Trees, 12),
    (CensusFamily::Trees, 14),
    (CensusFamily::Trees, 16),
    (CensusFamily::Trees, 18),
    (CensusFamily::Trees, 20),
    (CensusFamily::Trees, 22),
];

fn cmd_reproduce_table(samples: u64, seed: u64, out: Option<PathBuf>) -> Result<()> {
    let mut lines = vec!["family,n,classes,avg_degree,avg_diameter,note".to_string()];
    for (task_index, (family, n)) in TABLE_TASKS.into_iter().enumerate() {
        let universe = Universe::build(family, n)?;
        let task_seed = derive_seed(seed, task_index as u64);
        let mut degree_sum = 0.0;
        let mut diameter_sum = 0.0;
        for i in 0..samples {
            let inst = universe.sample_instance(derive_seed(task_seed, i))?;
            degree_sum += 4.0 * inst.graph.edge_count() as f64 / n as f64;
            diameter_sum += inst
                .graph
                .diameter()
                .expect("universe members are connected") as f64;
        }
        let note = if family == CensusFamily::Trees && n == 22 {
            // t(11) = 235 forces 235*236/2 = 27730 classes; summaries
            // elsewhere often misprint this count as 22730.
            "count-27730-often-misprinted-as-22730"
        } else {
            ""
        };
        lines.push(format!(
            "{},{},{},{:.6},{:.6},{}",
            family,
            n,
            universe.class_count(),
            degree_sum / samples as f64,
            diameter_sum / samples as f64,
            note
        ));
    }
    let text = lines.join("\n") + "\n";
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn parse_grid(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|x| x.trim().parse::<u64>().context("bad grid value"))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_capacity_grid(
    dataset: &PathBuf,
    depths: &str,
    widths: &str,
    simulate: bool,
    seed: u64,
    s: u64,
    limit: Option<usize>,
    convention: CutConvention,
) -> Result<()> {
    let depths = parse_grid(depths)?;
    let widths = parse_grid(widths)?;
    let instances = if simulate {
        load_limited(dataset, limit)?
    } else {
        // The dataset must still exist and parse; the grid itself is
        // closed-form.
        load_limited(dataset, Some(1))?
    };
    if simulate {
        println!("d,w,capacity,collision_rate");
    } else {
        println!("d,w,capacity");
    }
    for &d in &depths {
        for &w in &widths {
            let capacity = gin_capacity(d as usize, w, convention.scale());
            if simulate {
                let schedule = MpnnSchedule::gin(d as usize, w, s)?;
                let report = collision_rate(
                    &instances,
                    &schedule,
                    ReadoutMode::Consensus,
                    derive_seed(seed, d << 32 | w),
                )?;
                println!("{d},{w},{capacity},{:.6}", report.rate);
            } else {
                println!("{d},{w},{capacity}");
            }
        }
    }
    Ok(())
}
