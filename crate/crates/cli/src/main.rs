//! `cactuslab`: build the graph families, check the fragment lemmas, and
//! write or verify certificates.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use cactuslab_core::certificate::{
    certify_cactus_gc, certify_ka, certify_prism_gd, certify_search, Parameters,
};
use cactuslab_core::families::{build_g, fragment_a, fragment_c, fragment_d, gadget_i};
use cactuslab_core::search::{
    hamilton_cycle, hamilton_path, k_tree, k_walk, spanning_even_cactus, Budget, CactusConstraints,
    Goodness, SearchOutcome, Status,
};
use cactuslab_core::{
    check_lemma, verify_certificate, Certificate, Claim, DotStyle, Error, FragmentChart,
    FragmentKind, Graph, LemmaId, LemmaOptions, Verdict,
};
use clap::{Parser, Subcommand, ValueEnum};

const OK: u8 = 0;
const CLAIM_FAILS: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "cactuslab", version, about)]
struct Cli {
    /// Wall-clock budget per search, e.g. "90s" or "10m".
    #[arg(long, global = true, env = "CACTUSLAB_BUDGET", default_value = "5m")]
    budget: String,
    /// Omit timings so repeated runs produce identical bytes.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a family graph: I, A, C, D, GC or GD.
    Build {
        kind: String,
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a lemma check: L3, L4, L5C, L5D, L6, L7, L8, L9 or L10.
    Check {
        lemma: String,
        /// Fragment parameter for L5C and L5D.
        n: Option<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build and verify a certificate: kA, cactus_GC or prism_GD.
    Certify {
        target: String,
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every check of a certificate file.
    Verify { file: PathBuf },
    /// Run one search over a graph, chart or certificate JSON file.
    Search {
        #[arg(value_enum)]
        problem: Problem,
        file: PathBuf,
        /// Degree bound for k_tree, visit bound for k_walk.
        #[arg(long)]
        k: Option<usize>,
        /// Path endpoints for hamilton_path, or edge path ends for P_good.
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
        ends: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = GoodnessArg::Good)]
        goodness: GoodnessArg,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Vertices that must have block degree one.
        #[arg(long, value_delimiter = ',')]
        block_degree_1: Vec<String>,
        /// Write a certificate here when the search finds a witness.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a graph, chart or certificate JSON file as DOT.
    Export {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    #[value(name = "hamilton_cycle")]
    HamiltonCycle,
    #[value(name = "hamilton_path")]
    HamiltonPath,
    #[value(name = "k_walk")]
    KWalk,
    #[value(name = "k_tree")]
    KTree,
    #[value(name = "cactus")]
    Cactus,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoodnessArg {
    #[value(name = "good")]
    Good,
    #[value(name = "P_good")]
    PGood,
    #[value(name = "P1P2_good")]
    P1P2Good,
    #[value(name = "any")]
    Any,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Fragment { reason, .. } if reason.contains("out of budget") => BUDGET,
            Error::Fragment { .. } | Error::NotGoodCactus(_) => CLAIM_FAILS,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("cactuslab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let wall = humantime::parse_duration(&cli.budget)
        .map_err(|e| usage(format!("bad budget {:?}: {e}", cli.budget)))?;
    let ctx = Ctx {
        budget: Budget::wall(wall),
        deterministic: cli.deterministic,
    };
    match &cli.cmd {
        Cmd::Build {
            kind,
            n,
            out,
            format,
        } => cmd_build(kind, *n, out.as_deref(), *format),
        Cmd::Check {
            lemma,
            n,
            samples,
            seed,
        } => ctx.check(lemma, *n, *samples, *seed),
        Cmd::Certify { target, n, out } => ctx.certify(target, *n, out.as_deref()),
        Cmd::Verify { file } => cmd_verify(file),
        Cmd::Search {
            problem,
            file,
            k,
            ends,
            goodness,
            max_degree,
            block_degree_1,
            out,
        } => {
            let q = Query {
                problem: *problem,
                k: *k,
                ends: ends.as_ref().map(|e| (e[0].clone(), e[1].clone())),
                goodness: *goodness,
                max_degree: *max_degree,
                block_degree_1: block_degree_1.clone(),
            };
            ctx.search(&q, file, out.as_deref())
        }
        Cmd::Export { file, out } => cmd_export(file, out.as_deref()),
    }
}

struct Ctx {
    budget: Budget,
    deterministic: bool,
}

struct Query {
    problem: Problem,
    k: Option<usize>,
    ends: Option<(String, String)>,
    goodness: GoodnessArg,
    max_degree: Option<usize>,
    block_degree_1: Vec<String>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn need_n(n: Option<usize>, what: &str) -> Result<usize, Failure> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(usage(format!("{what} needs n >= 1"))),
        None => Err(usage(format!("{what} needs a parameter n"))),
    }
}

fn build_chart(kind: &str, n: Option<usize>) -> Result<FragmentChart, Failure> {
    let chart = match kind {
        "I" => gadget_i(),
        "A" => fragment_a(),
        "C" => fragment_c(need_n(n, kind)?)?,
        "D" => fragment_d(need_n(n, kind)?)?,
        "GC" => build_g(FragmentKind::C, need_n(n, kind)?)?,
        "GD" => build_g(FragmentKind::D, need_n(n, kind)?)?,
        _ => return Err(usage(format!("unknown kind {kind:?}; expected I, A, C, D, GC or GD"))),
    };
    if matches!(kind, "I" | "A") && n.is_some() {
        return Err(usage(format!("{kind} takes no parameter n")));
    }
    Ok(chart)
}

fn cmd_build(kind: &str, n: Option<usize>, out: Option<&Path>, format: Format) -> CmdResult {
    let chart = build_chart(kind, n)?;
    let text = match format {
        Format::Json => to_json(&chart)?,
        Format::Dot => chart.graph.to_dot(&chart.dot_style()),
    };
    emit(out, &text)?;
    Ok(OK)
}

fn read_certificate(file: &Path) -> Result<Certificate, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    Ok(Certificate::from_json(&text)?)
}

fn cmd_verify(file: &Path) -> CmdResult {
    let c = read_certificate(file)?;
    let checks = verify_certificate(&c)?;
    print!("{}", to_json(&checks)?);
    let ok = !checks.is_empty() && checks.values().all(|&b| b);
    Ok(if ok { OK } else { CLAIM_FAILS })
}

/// A graph file: plain graph JSON, a chart, or a certificate. Charts keep
/// their DOT styling.
fn read_graph(file: &Path) -> Result<(Graph, DotStyle), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let bad = |e: serde_json::Error| usage(format!("{}: {e}", file.display()));
    if v.get("embedding").is_some() {
        let chart: FragmentChart = serde_json::from_value(v).map_err(bad)?;
        let style = chart.dot_style();
        Ok((chart.graph, style))
    } else if v.get("schema_version").is_some() {
        Ok((Certificate::from_json(&text)?.graph, DotStyle::default()))
    } else {
        let g: Graph = serde_json::from_value(v).map_err(bad)?;
        Ok((g, DotStyle::default()))
    }
}

fn cmd_export(file: &Path, out: Option<&Path>) -> CmdResult {
    let (g, style) = read_graph(file)?;
    emit(out, &g.to_dot(&style))?;
    Ok(OK)
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Found => OK,
        Status::None => CLAIM_FAILS,
        Status::Timeout => BUDGET,
    }
}

impl Ctx {
    fn finish(&self, mut c: Certificate, out: Option<&Path>) -> CmdResult {
        if self.deterministic {
            c.timing = None;
        }
        emit(out, &to_json(&c)?)?;
        Ok(if c.holds() { OK } else { CLAIM_FAILS })
    }

    fn check(&self, lemma: &str, n: Option<usize>, samples: usize, seed: u64) -> CmdResult {
        let id: LemmaId = lemma.parse()?;
        if n.is_some() && !matches!(id, LemmaId::L5C | LemmaId::L5D) {
            return Err(usage(format!("{id} takes no parameter n")));
        }
        let opts = LemmaOptions {
            budget: self.budget,
            ns: n.into_iter().collect(),
            samples,
            seed,
        };
        let r = check_lemma(id, &opts)?;
        print!("{}", to_json(&r)?);
        Ok(match r.verdict {
            Verdict::Confirmed => OK,
            Verdict::Counterexample => CLAIM_FAILS,
            Verdict::Budget => BUDGET,
        })
    }

    fn certify(&self, target: &str, n: Option<usize>, out: Option<&Path>) -> CmdResult {
        let c = match target {
            "kA" => {
                if n.is_some() {
                    return Err(usage("kA takes no parameter n"));
                }
                certify_ka(self.budget)?
            }
            "cactus_GC" => certify_cactus_gc(need_n(n, target)?, self.budget)?,
            "prism_GD" => certify_prism_gd(need_n(n, target)?, self.budget)?,
            _ => {
                return Err(usage(format!(
                    "unknown target {target:?}; expected kA, cactus_GC or prism_GD"
                )))
            }
        };
        self.finish(c, out)
    }

    fn search(&self, q: &Query, file: &Path, out: Option<&Path>) -> CmdResult {
        let (g, _) = read_graph(file)?;
        let need_k = || q.k.ok_or_else(|| usage("this search needs --k"));
        let mut params = Parameters::default();
        let (claim, o): (Claim, SearchOutcome) = match q.problem {
            Problem::HamiltonCycle => (Claim::HamiltonCycle, hamilton_cycle(&g, self.budget)),
            Problem::HamiltonPath => {
                params.ends = q.ends.clone();
                let ends = q.ends.as_ref().map(|(a, b)| (a.as_str(), b.as_str()));
                (Claim::HamiltonPath, hamilton_path(&g, ends, self.budget)?)
            }
            Problem::KWalk => {
                params.k = Some(need_k()?);
                (Claim::KWalk, k_walk(&g, need_k()?, self.budget)?)
            }
            Problem::KTree => {
                params.k = Some(need_k()?);
                (Claim::KTree, k_tree(&g, need_k()?, self.budget)?)
            }
            Problem::Cactus => {
                let c = self.constraints(q)?;
                params.constraints = Some(c.clone());
                let o = spanning_even_cactus(&g, &c, self.budget)?;
                (Claim::SpanningGoodEvenCactus, o)
            }
        };
        let mut shown = o.clone();
        if self.deterministic {
            shown.elapsed = Duration::ZERO;
        }
        print!("{}", to_json(&shown)?);
        if let (Some(path), Some(c)) = (out, certify_search(&g, claim, params, &o)?) {
            self.finish(c, Some(path))?;
        }
        Ok(status_code(o.status))
    }

    fn constraints(&self, q: &Query) -> Result<CactusConstraints, Failure> {
        let mut c = match (q.goodness, &q.ends) {
            (GoodnessArg::PGood, Some((a, b))) => CactusConstraints::p_good(a, b),
            (GoodnessArg::PGood, None) => return Err(usage("P_good needs --ends FROM TO")),
            (_, Some(_)) => return Err(usage("--ends applies to P_good only")),
            (GoodnessArg::Good, None) => CactusConstraints::good(),
            (GoodnessArg::P1P2Good, None) => CactusConstraints::two_good(),
            (GoodnessArg::Any, None) => CactusConstraints {
                goodness: Goodness::Unrestricted,
                ..Default::default()
            },
        };
        if let Some(d) = q.max_degree {
            c = c.with_max_degree(d);
        }
        Ok(c.with_block_degree_1(&q.block_degree_1))
    }
}
