use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use motif_srp::datasets::{
    build_daily_user_graphs, build_emaileu_departments, build_synthetic_type_task,
    eligible_departments, embed_dataset, export_embeddings, read_department_labels,
    synthetic_users, DepartmentOptions, GraphSource, LabeledGraph, SyntheticTypeOptions, Task,
    DAY,
};
use motif_srp::static_motifs::TriadCode;
use motif_srp::synthetic::gen_synthetic;
use motif_srp::temporal_motifs::TemporalMotifId;
use motif_srp::{
    aggregate_static, count_motifs, read_temporal_edgelist, triad_census, write_temporal_edgelist,
    Error, SrpConfig, TemporalGraph,
};
use serde_json::{json, Map, Value};

use crate::report::{sidecar_path, Sidecar, TimeSpan};
use crate::{Command, CountArgs, DatasetArgs, EmbedArgs, EmbedOpts, Format, GenerateArgs, TaskArg};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

/// Bad input or configuration exits with 2, anything else with 1.
impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::Config(_)
            | Error::Validation(_) => 2,
            _ => 1,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Count(args) => cmd_count(&args),
        Command::Embed(args) => with_threads(args.opts.threads, || cmd_embed(&args)),
        Command::Dataset(args) => with_threads(args.opts.threads, || cmd_dataset(&args)),
        Command::Generate(args) => cmd_generate(&args),
    }
}

fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> CliResult<T> + Send) -> CliResult<T>
where
    T: Send,
{
    match threads {
        None => f(),
        Some(0) => Err(CliError::usage("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::runtime(format!("thread pool: {e}")))?
            .install(f),
    }
}

/// Reads an input edge list; any failure here is an input error.
fn read_input(path: &Path, keep_self_loops: bool) -> CliResult<TemporalGraph> {
    read_temporal_edgelist(path, !keep_self_loops).map_err(|e| match e {
        Error::Parse { .. } => CliError::usage(format!("{}: {e}", path.display())),
        other => CliError::usage(other.to_string()),
    })
}

fn srp_config(opts: &EmbedOpts) -> CliResult<SrpConfig> {
    let cfg = SrpConfig {
        epsilon: opts.epsilon,
        delta: opts.delta,
        replicas: opts.replicas,
        seed: opts.seed,
        variant: opts.variant.into(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_count(args: &CountArgs) -> CliResult<()> {
    if !args.static_census && args.delta <= 0 {
        return Err(CliError::usage(format!("--delta must be positive, got {}", args.delta)));
    }
    let g = read_input(&args.input, args.keep_self_loops)?;
    let rows: Vec<(String, String, u64)> = if args.static_census {
        let census = triad_census(&aggregate_static(&g));
        TriadCode::ALL
            .into_iter()
            .map(|c| (c.mnemonic().to_string(), c.mnemonic().to_string(), census.get(c)))
            .collect()
    } else {
        let counts = count_motifs(&g, args.delta);
        TemporalMotifId::all()
            .map(|id| (id.index().to_string(), id.to_string(), counts.get(id)))
            .collect()
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = match args.format {
        Format::Json => {
            let counts: Map<String, Value> =
                rows.iter().map(|(k, _, c)| (k.clone(), json!(c))).collect();
            let mut report = Map::new();
            report.insert("input".into(), json!(args.input.display().to_string()));
            report.insert(
                "family".into(),
                json!(if args.static_census { "static" } else { "temporal" }),
            );
            if !args.static_census {
                report.insert("delta".into(), json!(args.delta));
            }
            report.insert("nodes".into(), json!(g.node_count()));
            report.insert("edges".into(), json!(g.edge_count()));
            report.insert("counts".into(), Value::Object(counts));
            serde_json::to_writer_pretty(&mut out, &Value::Object(report))
                .map_err(std::io::Error::from)
                .and_then(|_| writeln!(out))
        }
        Format::Text => rows.iter().try_for_each(|(k, pattern, c)| {
            if k == pattern {
                writeln!(out, "{k}\t{c}")
            } else {
                writeln!(out, "{k}\t{pattern}\t{c}")
            }
        }),
    };
    written.map_err(|e| CliError::runtime(format!("writing report: {e}")))
}

fn cmd_embed(args: &EmbedArgs) -> CliResult<()> {
    let started = Instant::now();
    let cfg = srp_config(&args.opts)?;
    let graphs = args
        .inputs
        .iter()
        .map(|path| {
            let g = read_input(path, args.opts.keep_self_loops)?;
            Ok(LabeledGraph {
                source: GraphSource::Input {
                    name: path.display().to_string(),
                },
                graph: g,
                label: args.label,
                task: Task::TypeClassification,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut sidecar = Sidecar::new("embed", &cfg, &graphs);
    sidecar.inputs = args.inputs.iter().map(|p| p.display().to_string()).collect();
    sidecar.options.insert("label".into(), json!(args.label));
    embed_and_write(&graphs, &cfg, &args.opts.out, sidecar, started)
}

fn embed_and_write(
    graphs: &[LabeledGraph],
    cfg: &SrpConfig,
    out: &Path,
    mut sidecar: Sidecar,
    started: Instant,
) -> CliResult<()> {
    let records = embed_dataset(graphs, cfg)?;
    export_embeddings(&records, out).map_err(|e| CliError::runtime(e.to_string()))?;
    sidecar.wall_time_seconds = started.elapsed().as_secs_f64();
    let meta = sidecar_path(out);
    let file = File::create(&meta)
        .map_err(|e| CliError::runtime(format!("{}: {e}", meta.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, &sidecar)
        .map_err(std::io::Error::from)
        .and_then(|_| writeln!(w))
        .and_then(|_| w.flush())
        .map_err(|e| CliError::runtime(format!("{}: {e}", meta.display())))?;
    eprintln!(
        "wrote {} rows to {} ({:.2}s)",
        records.len(),
        out.display(),
        sidecar.wall_time_seconds
    );
    Ok(())
}

fn department_options(args: &DatasetArgs) -> CliResult<DepartmentOptions> {
    if args.window_days <= 0 || args.stride_days <= 0 {
        return Err(CliError::usage("--window-days and --stride-days must be positive"));
    }
    Ok(DepartmentOptions {
        min_size: args.min_size,
        window: args.window_days * DAY,
        stride: args.stride_days * DAY,
        min_edges: args.min_edges,
    })
}

struct EmailInputs {
    graphs: Vec<LabeledGraph>,
    span: Option<TimeSpan>,
    eligible: usize,
}

fn email_departments(args: &DatasetArgs) -> CliResult<EmailInputs> {
    let edges_path = args
        .edges
        .as_ref()
        .ok_or_else(|| CliError::usage("this task needs --edges"))?;
    let labels_path = args
        .labels
        .as_ref()
        .ok_or_else(|| CliError::usage("this task needs --labels (department label file)"))?;
    let opts = department_options(args)?;
    let edges = read_input(edges_path, args.opts.keep_self_loops)?;
    let labels = read_department_labels(labels_path).map_err(|e| CliError::usage(e.to_string()))?;
    let graphs = build_emaileu_departments(&edges, &labels, &opts)?;
    Ok(EmailInputs {
        graphs,
        span: TimeSpan::of(&edges),
        eligible: eligible_departments(&labels, opts.min_size).len(),
    })
}

fn user_graphs(args: &DatasetArgs) -> CliResult<Vec<LabeledGraph>> {
    let per_user: BTreeMap<String, TemporalGraph> = match args.synth_users {
        Some(users) => {
            if !args.user_files.is_empty() {
                return Err(CliError::usage("use either --user-file or --synth-users, not both"));
            }
            synthetic_users(users, args.days, args.opts.seed)?
        }
        None => {
            if args.user_files.is_empty() {
                return Err(CliError::usage(
                    "this task needs --user-file PATH (repeatable) or --synth-users N",
                ));
            }
            let mut map = BTreeMap::new();
            for path in &args.user_files {
                let g = read_input(path, args.opts.keep_self_loops)?;
                let user = g.id().to_string();
                if map.insert(user.clone(), g).is_some() {
                    return Err(CliError::usage(format!("duplicate user id `{user}`")));
                }
            }
            map
        }
    };
    Ok(build_daily_user_graphs(&per_user, DAY)?)
}

fn cmd_dataset(args: &DatasetArgs) -> CliResult<()> {
    let started = Instant::now();
    let cfg = srp_config(&args.opts)?;
    let mut options = Map::new();
    let mut span = None;
    let mut inputs = Vec::new();

    let graphs = match args.task {
        TaskArg::Synth => {
            if args.per_family == 0 {
                return Err(CliError::usage("--per-family must be at least 1"));
            }
            options.insert("per_family".into(), json!(args.per_family));
            build_synthetic_type_task(&SyntheticTypeOptions {
                per_family: args.per_family,
                seed: args.opts.seed,
                ..Default::default()
            })?
        }
        TaskArg::EmailDept => {
            let email = email_departments(args)?;
            insert_department_options(&mut options, args, email.eligible);
            span = email.span;
            inputs.extend(args.edges.iter().chain(&args.labels).map(|p| p.display().to_string()));
            email.graphs
        }
        TaskArg::UserId => {
            options.insert("day_length".into(), json!(DAY));
            if let Some(users) = args.synth_users {
                options.insert("synth_users".into(), json!(users));
                options.insert("days".into(), json!(args.days));
            }
            inputs.extend(args.user_files.iter().map(|p| p.display().to_string()));
            user_graphs(args)?
        }
        TaskArg::Type => {
            let email = email_departments(args)?;
            insert_department_options(&mut options, args, email.eligible);
            span = email.span;
            inputs.extend(args.edges.iter().chain(&args.labels).map(|p| p.display().to_string()));
            inputs.extend(args.user_files.iter().map(|p| p.display().to_string()));
            let switch = user_graphs(args)?;
            email
                .graphs
                .into_iter()
                .map(|g| LabeledGraph {
                    label: 0,
                    task: Task::TypeClassification,
                    ..g
                })
                .chain(switch.into_iter().map(|g| LabeledGraph {
                    label: 1,
                    task: Task::TypeClassification,
                    ..g
                }))
                .collect()
        }
    };

    let task_name = match args.task {
        TaskArg::Synth => "synth".to_string(),
        TaskArg::Type => Task::TypeClassification.to_string(),
        TaskArg::EmailDept => Task::DepartmentId.to_string(),
        TaskArg::UserId => Task::UserId.to_string(),
    };
    let mut sidecar = Sidecar::new("dataset", &cfg, &graphs);
    sidecar.task = Some(task_name);
    sidecar.options = options;
    sidecar.inputs = inputs;
    sidecar.input_time_span = span;
    embed_and_write(&graphs, &cfg, &args.opts.out, sidecar, started)
}

fn insert_department_options(options: &mut Map<String, Value>, args: &DatasetArgs, eligible: usize) {
    options.insert("window_days".into(), json!(args.window_days));
    options.insert("stride_days".into(), json!(args.stride_days));
    options.insert("min_edges".into(), json!(args.min_edges));
    options.insert("min_size".into(), json!(args.min_size));
    options.insert("eligible_departments".into(), json!(eligible));
}

fn cmd_generate(args: &GenerateArgs) -> CliResult<()> {
    let g = gen_synthetic(args.family.into(), args.nodes, args.edges, args.span, args.seed)?;
    let file = File::create(&args.out)
        .map_err(|e| CliError::runtime(format!("{}: {e}", args.out.display())))?;
    let mut w = BufWriter::new(file);
    write_temporal_edgelist(&g, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::runtime(format!("{}: {e}", args.out.display())))
}
