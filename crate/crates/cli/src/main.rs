//! Batch CLI over the induced-subdivision toolkit: analysis, generation,
//! search, certificate verification, and direct lemma execution.
//!
//! Exit codes: 0 success / valid, 1 not found / invalid certificate,
//! 2 hypothesis not met, 3 usage error, 4 budget exhausted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use indsub::certify::{verify_induced_subdivision, verify_subdivision, SubdivisionCertificate};
use indsub::generators::{gen_named, gen_planted, gen_regular_high_girth, PlantedParams};
use indsub::graph::load_graph;
use indsub::pipeline::{
    lemma_largesub, lemma_maxdegree, lemma_unbalanced, theorem_main, LargesubOutcome,
    PipelineReport,
};
use indsub::{ConstantsProfile, Error, Graph, RandomSource, VertexSet};

#[derive(Parser)]
#[command(name = "indsub", version, about = "Induced clique subdivisions in high-girth graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ProfileArgs {
    /// Constants profile: `paper`, `desk`, or `relaxed:<scale>`.
    #[arg(long, default_value = "desk")]
    profile: String,
    /// Per-key overrides `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl ProfileArgs {
    fn build(&self) -> Result<ConstantsProfile, Error> {
        let mut profile = ConstantsProfile::by_name(&self.profile)?;
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("bad override `{kv}`")))?;
            profile.set(k.trim(), v.trim())?;
        }
        profile.validate()?;
        Ok(profile)
    }

    fn echo(&self) -> String {
        let mut s = format!("profile={}", self.profile);
        for kv in &self.set {
            s.push_str(&format!(" set={kv}"));
        }
        s
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of a graph: order, size, girth, degeneracy,
    /// connectivity.
    Analyze { graph: PathBuf },
    /// Generate a graph (and, for planted instances, roles + manifest).
    Gen {
        /// `named:<name>`, `regular`, or `planted:<kind>`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 5)]
        girth: usize,
        #[arg(long, default_value_t = 20)]
        ratio: usize,
        #[arg(long, default_value_t = 0)]
        size: usize,
        /// Output graph file.
        #[arg(short, long)]
        out: PathBuf,
        /// Roles/manifest file (planted families).
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Search for a complete-graph subdivision.
    Find {
        graph: PathBuf,
        /// Order of the complete graph to subdivide (K_target).
        #[arg(long)]
        target: usize,
        #[arg(long, value_parser = ["plain", "induced"])]
        mode: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5_000_000)]
        budget: usize,
        #[command(flatten)]
        profile: ProfileArgs,
        /// Certificate output file.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Verify a certificate against a graph.
    Verify { graph: PathBuf, cert: PathBuf },
    /// Run one lemma of the pipeline.
    Lemma {
        /// `unbalanced`, `largesub`, `maxdegree`, or `main`.
        name: String,
        graph: PathBuf,
        /// Roles file naming the required vertex sets.
        #[arg(long)]
        roles: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Pipeline report output file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> ExitCode {
    match e.root() {
        Error::HypothesisNotMet(_) => ExitCode::from(2),
        Error::BudgetExhausted(_)
        | Error::TrialsExhausted(_)
        | Error::RoundsExhausted(_)
        | Error::AttemptsExhausted(_) => ExitCode::from(4),
        Error::NotFound(_) | Error::StructureViolation(_) | Error::LiftConflict(_) => {
            ExitCode::from(1)
        }
        _ => ExitCode::from(3),
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    load_graph(&text)
}

fn need_seed(seed: Option<u64>) -> Result<u64, Error> {
    seed.ok_or_else(|| Error::InvalidInput("randomized subcommands require --seed".into()))
}

fn write_artifact(path: &PathBuf, header: &str, body: &str) -> Result<(), Error> {
    let mut text = String::new();
    for line in header.lines() {
        text.push_str("# ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(body);
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze { graph } => {
            let g = read_graph(&graph)?;
            let girth = indsub::graph::girth(&g)
                .map(|x| x.to_string())
                .unwrap_or_else(|| "infinite".into());
            let ord = indsub::graph::degeneracy_ordering(&g);
            let kappa = indsub::connectivity::vertex_connectivity(&g);
            println!(
                "n={} m={} girth={} degeneracy={} connectivity={} mindeg={} maxdeg={}",
                g.n(),
                g.m(),
                girth,
                ord.degeneracy,
                kappa,
                g.min_degree(),
                g.max_degree()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            family,
            seed,
            n,
            d,
            girth,
            ratio,
            size,
            out,
            roles,
        } => {
            let header_base = format!(
                "cmd=gen family={family} n={n} d={d} girth={girth} ratio={ratio} size={size}"
            );
            if let Some(name) = family.strip_prefix("named:") {
                let g = gen_named(name)?;
                write_artifact(&out, &header_base, &g.to_edge_list())?;
                return Ok(ExitCode::SUCCESS);
            }
            let seed = need_seed(seed)?;
            let rng = RandomSource::new(seed);
            let header = format!("{header_base} seed={seed}");
            if family == "regular" {
                let g = gen_regular_high_girth(n, d, girth, &rng, 200)?;
                write_artifact(&out, &header, &g.to_edge_list())?;
                return Ok(ExitCode::SUCCESS);
            }
            if let Some(kind) = family.strip_prefix("planted:") {
                let params = PlantedParams {
                    d,
                    ratio,
                    size,
                    girth_floor: girth,
                };
                let inst = gen_planted(kind, &params, &rng)?;
                write_artifact(&out, &header, &inst.graph.to_edge_list())?;
                if let Some(roles_path) = roles {
                    write_artifact(&roles_path, &header, &inst.manifest_text())?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            Err(Error::UnknownName(format!("family `{family}`")))
        }
        Command::Find {
            graph,
            target,
            mode,
            seed,
            budget,
            profile,
            cert,
        } => {
            let g = read_graph(&graph)?;
            let prof = profile.build()?;
            let header = format!(
                "cmd=find target={target} mode={mode} budget={budget} {} seed={}",
                profile.echo(),
                seed.map(|s| s.to_string()).unwrap_or_else(|| "none".into())
            );
            let found: Option<SubdivisionCertificate> = match mode.as_str() {
                "plain" => match indsub::subdivision::find_subdivision(&g, target - 1, &prof) {
                    Ok(c) => Some(c),
                    Err(Error::NotFound(_)) | Err(Error::HypothesisNotMet(_)) => None,
                    Err(e) => return Err(e),
                },
                "induced" => indsub::certify::brute_force_induced(&g, target, budget)?,
                _ => unreachable!("clap validates the mode"),
            };
            match found {
                Some(c) => {
                    let report = verify_subdivision(&g, &c);
                    assert!(report.valid_plain);
                    if let Some(path) = cert {
                        write_artifact(&path, &header, &c.to_text())?;
                    }
                    println!("found: K_{target} subdivision on {} vertices", c.vertices().len());
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not found");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify { graph, cert } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", cert.display())))?;
            let c = SubdivisionCertificate::from_text(&text)?;
            let report = verify_induced_subdivision(&g, &c);
            println!(
                "plain: {}\ninduced: {}",
                if report.valid_plain { "yes" } else { "no" },
                if report.valid_induced { "yes" } else { "no" }
            );
            for v in report.violations.iter().take(10) {
                println!("violation: {:?} at {:?}", v.kind, v.witness);
            }
            if report.valid_induced {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Lemma {
            name,
            graph,
            roles,
            seed,
            d,
            profile,
            cert,
            report: report_path,
        } => {
            let g = read_graph(&graph)?;
            let prof = profile.build()?;
            let seed = need_seed(seed)?;
            let rng = RandomSource::new(seed);
            let header = format!("cmd=lemma name={name} d={d} seed={seed} {}", profile.echo());
            let mut report = PipelineReport::new();
            report.note(header.clone());
            // Every numeric constant of the run, for reproducibility.
            report.extend(&prof.echo_lines());
            let role_sets = match roles {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| {
                        Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                    })?;
                    indsub::generators::parse_roles(&text)?
                }
                None => Default::default(),
            };
            let need_role = |key: &str| -> Result<VertexSet, Error> {
                role_sets
                    .get(key)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("roles file must define `{key}`")))
            };
            let outcome: Result<SubdivisionCertificate, Error> = match name.as_str() {
                "unbalanced" => lemma_unbalanced(
                    &g,
                    &need_role("a")?,
                    &need_role("b")?,
                    d,
                    &prof,
                    &rng,
                    &mut report,
                ),
                "largesub" => match lemma_largesub(&g, &need_role("x")?, d, &prof, &rng, &mut report)
                {
                    Ok(LargesubOutcome::Certificate(c)) => Ok(c),
                    Ok(LargesubOutcome::Split { x_prime, y }) => {
                        report.note(format!(
                            "split: |X'| = {}, |Y| = {} (no certificate expected)",
                            x_prime.len(),
                            y.len()
                        ));
                        if let Some(path) = report_path.as_ref() {
                            write_artifact(path, &header, &report.text())?;
                        }
                        println!("split found: |X'| = {}, |Y| = {}", x_prime.len(), y.len());
                        return Ok(ExitCode::SUCCESS);
                    }
                    Err(e) => Err(e),
                },
                "maxdegree" => {
                    let u = match role_sets.get("u") {
                        Some(u) => u.clone(),
                        None => g.vertices().filter(|&v| g.degree(v) >= d).collect(),
                    };
                    lemma_maxdegree(&g, &u, d, &prof, &rng, &mut report)
                }
                "main" => theorem_main(&g, d, &prof, &rng, &mut report),
                other => Err(Error::UnknownName(format!("lemma `{other}`"))),
            };
            match outcome {
                Ok(c) => {
                    if let Some(path) = report_path {
                        write_artifact(&path, &header, &report.text())?;
                    }
                    if let Some(path) = cert {
                        write_artifact(&path, &header, &c.to_text())?;
                    }
                    println!(
                        "induced K_{} subdivision found on {} vertices",
                        c.order(),
                        c.vertices().len()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    report.note(format!("failure: {e}"));
                    if let Some(path) = report_path {
                        write_artifact(&path, &header, &report.text())?;
                    }
                    Err(e)
                }
            }
        }
    }
}
