//! Command-line front end for conway-shadows.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use conway_shadows::euclid::{
    lyapunov_estimate, lyapunov_exact_periodic, lyapunov_series, relative_shadow_growth,
    relative_shadow_series, topograph_growth_exponent, topograph_growth_series, PathSpec,
};
use conway_shadows::markov::{
    fibonacci_branch_shadow, is_markov, is_shadow_markov, markov_tree, shadow_markov_tree,
};
use conway_shadows::mordell::{
    is_dual_mordell, is_mordell, mordell_branch, mordell_tree, pell_fundamental,
    shadow_mordell_tree, special_orbit_dual_tree, PellContext,
};
use conway_shadows::render::{tree_csv, tree_dot, tree_json, tree_svg, Labels, NodeValue};
use conway_shadows::topograph::{ap_inconsistencies, enumerate_with_limit, find_river, is_river_edge};
use conway_shadows::tree::DEFAULT_DEPTH_LIMIT;
use conway_shadows::verify::{run_suite, VerifyOptions};
use conway_shadows::{FaceTriple, PathWord, QuadForm, Tree};

const LN_PHI: f64 = 0.481_211_825_059_603_4;

const AFTER_HELP: &str = "\
Output formats:
  json  a report {command, parameters, outputs, checks: {passed, failed, details}};
        every integer is a decimal string
  csv   trees:            word,left,right,top,left_farey,right_farey,top_farey
        lyapunov, growth: step,value
        relative-growth:  step,value
        sequence:         the terms on one line, comma separated
  dot   trees only (Graphviz)
  svg   trees only, levels as rows

Tree words are read from the root: L keeps (left, top), R keeps (top, right).
Exit status is 0 when every check passed, 1 when a check failed and 2 on
usage or input errors.";

#[derive(Parser, Debug)]
#[command(name = "conway-shadows", version, about = "Conway topographs, Markov and Mordell triples and their dual-number shadows")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    /// Output format; defaults to json (csv for `sequence`).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Region labels for dot and svg output.
    #[arg(long, global = true, default_value = "values")]
    labels: Labels,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Values of a binary quadratic form a·x² + h·xy + b·y² on its topograph.
    Topograph {
        #[arg(long, allow_hyphen_values = true)]
        form: QuadForm,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Override the default depth cap.
        #[arg(long, default_value_t = DEFAULT_DEPTH_LIMIT)]
        depth_limit: usize,
        /// Describe the Conway river instead of drawing the tree.
        #[arg(long)]
        river: bool,
    },
    /// Markov triples x² + y² + z² = 3xyz from (1, 1, 1).
    Markov {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Shadow Markov triples over the dual integers from (1+ε, 1, 1+ε).
    ShadowMarkov {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Fundamental solution of p² − d·q² = 1.
    Pell {
        #[arg(long)]
        d: u64,
    },
    /// Mordell triples x² + y² + z² = 2xyz + 1 over the Euclid tree.
    Mordell {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Dual Mordell triples grown from the principal shadow at (1, 1, 2).
    ShadowMordell {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Dual orbit of (1+aε, 1+bε, 1+cε).
    SpecialShadow {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        c: BigInt,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Lyapunov function of the Euclid tree along a path.
    Lyapunov {
        /// Continued fraction, e.g. "1,1,1,..." or "[1; (2)]".
        #[arg(long, conflicts_with = "word", allow_hyphen_values = true)]
        cf: Option<String>,
        /// Path word, e.g. "LR" (repeated) or "LL(LR)".
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 40)]
        n: usize,
        /// Also report the exact value for this period word.
        #[arg(long)]
        exact_period: Option<PathWord>,
    },
    /// Growth exponent of |Q| along a path.
    Growth {
        #[arg(long, allow_hyphen_values = true)]
        form: QuadForm,
        #[arg(long, allow_hyphen_values = true)]
        path: PathSpec,
        #[arg(long, default_value_t = 40)]
        n: usize,
    },
    /// Relative growth of principal Mordell shadows along a path.
    RelativeGrowth {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        path: PathSpec,
        #[arg(long, default_value_t = 30)]
        n: usize,
    },
    /// Conway river of an indefinite form.
    River {
        #[arg(long, allow_hyphen_values = true)]
        form: QuadForm,
    },
    /// Integer sequences along distinguished branches.
    Sequence {
        name: SequenceName,
        #[arg(long)]
        n: usize,
        /// Pell parameter for mordell-branch.
        #[arg(long)]
        d: Option<u64>,
    },
    /// Exact invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 6, 7, 13])]
        d: Vec<u64>,
        #[arg(long, default_value_t = 30)]
        range: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SequenceName {
    ShadowFibonacci,
    MordellBranch,
}

#[derive(Default)]
struct Checks {
    passed: usize,
    failed: usize,
    details: Vec<Value>,
}

impl Checks {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        if passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.details
            .push(json!({ "name": name, "passed": passed, "detail": detail.into() }));
    }

    fn to_json(&self) -> Value {
        json!({ "passed": self.passed, "failed": self.failed, "details": self.details })
    }
}

struct Run {
    command: &'static str,
    parameters: Value,
    outputs: Value,
    /// Replaces the JSON report for non-json formats.
    text: Option<String>,
    checks: Checks,
}

impl Run {
    fn new(command: &'static str, parameters: Value) -> Self {
        Run {
            command,
            parameters,
            outputs: Value::Null,
            text: None,
            checks: Checks::default(),
        }
    }

    fn report(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "outputs": self.outputs,
            "checks": self.checks.to_json(),
        })
    }
}

fn text_only(format: Format, command: &str) -> Result<()> {
    if matches!(format, Format::Dot | Format::Svg) {
        bail!("{command} has no {format:?} output; use json or csv");
    }
    Ok(())
}

fn render_tree<T: NodeValue>(run: &mut Run, tree: &Tree<FaceTriple<T>>, format: Format, labels: Labels) {
    match format {
        Format::Json => run.outputs = json!({ "depth": tree.depth(), "nodes": tree_json(tree) }),
        Format::Csv => run.text = Some(tree_csv(tree)),
        Format::Dot => run.text = Some(tree_dot(tree, labels)),
        Format::Svg => run.text = Some(tree_svg(tree, labels)),
    }
}

fn series_csv(series: &[(usize, f64)]) -> String {
    let mut out = String::from("step,value\n");
    for (k, v) in series {
        let _ = writeln!(out, "{k},{v:.12}");
    }
    out
}

fn form_arg(q: &QuadForm) -> String {
    format!("{},{},{}", q.a, q.h, q.b)
}

fn path_from(cf: Option<String>, word: Option<String>) -> Result<PathSpec> {
    let spec = match (cf, word) {
        (Some(cf), None) => PathSpec::Cf(cf.parse()?),
        (None, Some(w)) => w.parse()?,
        (None, None) => PathSpec::golden(),
        (Some(_), Some(_)) => bail!("give either --cf or --word"),
    };
    Ok(spec)
}

fn run(cli: Cli) -> Result<Run> {
    let labels = cli.labels;
    let run = match cli.command {
        Command::Topograph { form, depth, depth_limit, river } => {
            let format = cli.format.unwrap_or(Format::Json);
            let params = json!({
                "form": form_arg(&form),
                "depth": depth,
                "river": river,
            });
            if river {
                text_only(format, "topograph --river")?;
                river_run("topograph", params, &form, format)?
            } else {
                let mut run = Run::new("topograph", params);
                let tree = enumerate_with_limit(&form, depth, depth_limit)?;
                let bad = ap_inconsistencies(&form, &tree);
                run.checks.record(
                    "arithmetic-progression",
                    bad.is_empty(),
                    format!("{} vertices checked", tree.len()),
                );
                render_tree(&mut run, &tree, format, labels);
                run
            }
        }
        Command::Markov { depth } => {
            let mut run = Run::new("markov", json!({ "depth": depth }));
            let tree = markov_tree(depth)?;
            run.checks.record(
                "markov-equation",
                tree.nodes().iter().all(is_markov),
                format!("{} nodes", tree.len()),
            );
            render_tree(&mut run, &tree, cli.format.unwrap_or(Format::Json), labels);
            run
        }
        Command::ShadowMarkov { depth } => {
            let mut run = Run::new("shadow-markov", json!({ "depth": depth }));
            let tree = shadow_markov_tree(depth)?;
            run.checks.record(
                "shadow-markov-equation",
                tree.nodes().iter().all(is_shadow_markov),
                format!("{} nodes", tree.len()),
            );
            render_tree(&mut run, &tree, cli.format.unwrap_or(Format::Json), labels);
            run
        }
        Command::Pell { d } => {
            let format = cli.format.unwrap_or(Format::Json);
            text_only(format, "pell")?;
            let mut run = Run::new("pell", json!({ "d": d.to_string() }));
            let s = pell_fundamental(d)?;
            run.checks.record("pell-equation", s.is_solution(), "p² − dq² = 1");
            run.outputs = json!({ "p": s.p.to_string(), "q": s.q.to_string() });
            if format == Format::Csv {
                run.text = Some(format!("d,p,q\n{d},{},{}\n", s.p, s.q));
            }
            run
        }
        Command::Mordell { d, m, depth } => {
            let params = json!({ "d": d.to_string(), "m": m.to_string(), "depth": depth });
            let mut run = Run::new("mordell", params);
            let ctx = PellContext::new(d, m)?;
            let tree = mordell_tree(&ctx, depth)?;
            run.checks.record(
                "mordell-equation",
                tree.nodes().iter().all(is_mordell),
                format!("{} nodes", tree.len()),
            );
            render_tree(&mut run, &tree, cli.format.unwrap_or(Format::Json), labels);
            run
        }
        Command::ShadowMordell { d, m, depth } => {
            let params = json!({ "d": d.to_string(), "m": m.to_string(), "depth": depth });
            let mut run = Run::new("shadow-mordell", params);
            let ctx = PellContext::new(d, m)?;
            let tree = shadow_mordell_tree(&ctx, depth)?;
            run.checks.record(
                "dual-mordell-equation",
                tree.nodes().iter().all(is_dual_mordell),
                format!("{} nodes", tree.len()),
            );
            render_tree(&mut run, &tree, cli.format.unwrap_or(Format::Json), labels);
            run
        }
        Command::SpecialShadow { a, b, c, depth } => {
            let params = json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "c": c.to_string(),
                "depth": depth,
            });
            let mut run = Run::new("special-shadow", params);
            let tree = special_orbit_dual_tree(&a, &b, &c, depth)?;
            let form = QuadForm::from_superbase(&a, &b, &c);
            let topo = enumerate_with_limit(&form, depth, DEFAULT_DEPTH_LIMIT)?;
            let matches = tree
                .nodes()
                .iter()
                .zip(topo.nodes())
                .all(|(s, t)| s.map(|x| x.sh.clone()) == *t && is_dual_mordell(s));
            run.checks.record(
                "shadows-are-topograph",
                matches,
                format!("shadows equal the topograph of {form}"),
            );
            render_tree(&mut run, &tree, cli.format.unwrap_or(Format::Json), labels);
            run
        }
        Command::Lyapunov { cf, word, n, exact_period } => {
            let format = cli.format.unwrap_or(Format::Json);
            text_only(format, "lyapunov")?;
            let spec = path_from(cf, word)?;
            let params = json!({
                "path": spec.to_string(),
                "n": n,
                "exact_period": exact_period.as_ref().map(|w| w.to_string()),
            });
            let mut run = Run::new("lyapunov", params);
            let estimate = lyapunov_estimate(&spec, n)?;
            run.checks.record(
                "spectrum-bound",
                estimate.value <= LN_PHI + 0.02,
                format!("{:.6} ≤ ln φ + 0.02", estimate.value),
            );
            let exact = match &exact_period {
                Some(w) if w.is_empty() => bail!("--exact-period needs a nonempty word"),
                Some(w) => Some(lyapunov_exact_periodic(w)),
                None => spec.exact_lyapunov(),
            };
            run.outputs = json!({ "estimate": estimate, "exact": exact });
            if format == Format::Csv {
                run.text = Some(series_csv(&lyapunov_series(&spec, n)));
            }
            run
        }
        Command::Growth { form, path, n } => {
            let format = cli.format.unwrap_or(Format::Json);
            text_only(format, "growth")?;
            let params = json!({ "form": form_arg(&form), "path": path.to_string(), "n": n });
            let mut run = Run::new("growth", params);
            let value = topograph_growth_exponent(&form, &path, n)?;
            run.outputs = json!({ "exponent": value, "twice_lyapunov": path.exact_lyapunov().map(|l| 2.0 * l) });
            if format == Format::Csv {
                run.text = Some(series_csv(&topograph_growth_series(&form, &path.word(n))?));
            }
            run
        }
        Command::RelativeGrowth { d, m, path, n } => {
            let format = cli.format.unwrap_or(Format::Json);
            text_only(format, "relative-growth")?;
            let params = json!({
                "d": d.to_string(),
                "m": m.to_string(),
                "path": path.to_string(),
                "n": n,
            });
            let mut run = Run::new("relative-growth", params);
            let ctx = PellContext::new(d, m)?;
            let value = relative_shadow_growth(&ctx, &path, n)?;
            run.outputs = json!({ "estimate": value, "lyapunov": path.exact_lyapunov() });
            if format == Format::Csv {
                run.text = Some(series_csv(&relative_shadow_series(&ctx, &path, n)?));
            }
            run
        }
        Command::River { form } => {
            let format = cli.format.unwrap_or(Format::Json);
            text_only(format, "river")?;
            river_run("river", json!({ "form": form_arg(&form) }), &form, format)?
        }
        Command::Sequence { name, n, d } => {
            let format = cli.format.unwrap_or(Format::Csv);
            text_only(format, "sequence")?;
            let (label, values) = match name {
                SequenceName::ShadowFibonacci => ("shadow-fibonacci", fibonacci_branch_shadow(n)),
                SequenceName::MordellBranch => {
                    let d = d.context("mordell-branch needs --d")?;
                    ("mordell-branch", mordell_branch(&PellContext::new(d, 1)?, n))
                }
            };
            let mut run = Run::new(
                "sequence",
                json!({ "name": label, "n": n, "d": d.map(|d| d.to_string()) }),
            );
            let strings: Vec<String> = values.iter().map(ToString::to_string).collect();
            if format == Format::Csv {
                run.text = Some(if strings.is_empty() {
                    String::new()
                } else {
                    format!("{}\n", strings.join(","))
                });
            }
            run.outputs = json!({ "values": strings });
            run
        }
        Command::Verify { suite, depth, d, range } => {
            let format = cli.format.unwrap_or(Format::Json);
            if format != Format::Json {
                bail!("verify reports JSON only");
            }
            let opts = VerifyOptions { depth, ds: d, range };
            let mut run = Run::new(
                "verify",
                json!({ "suite": suite, "depth": depth, "d": opts.ds, "range": range }),
            );
            let report = run_suite(&suite, &opts)?;
            for c in &report.checks {
                run.checks.record(&c.name, c.passed, c.detail.clone());
            }
            run
        }
    };
    Ok(run)
}

fn river_run(command: &'static str, params: Value, form: &QuadForm, format: Format) -> Result<Run> {
    let mut run = Run::new(command, params);
    let river = find_river(form)?;
    run.checks.record(
        "sign-change",
        !river.period.is_empty() && river.period_states.iter().all(is_river_edge),
        format!("{} river edges in one period", river.period_states.len()),
    );
    if format == Format::Csv {
        let mut out = String::from("word,left,right,top\n");
        let mut word = river.approach.clone();
        for (letter, t) in river.period.iter().zip(&river.period_states) {
            let _ = writeln!(out, "{word},{},{},{}", t.left, t.right, t.top);
            word.push(letter);
        }
        run.text = Some(out);
    }
    run.outputs = serde_json::to_value(&river)?;
    Ok(run)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(run) => {
            let text = match run.text {
                Some(ref text) => text.clone(),
                None => serde_json::to_string_pretty(&run.report()).expect("report is JSON") + "\n",
            };
            // a closed pipe is not an error for a filter-style tool
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if run.checks.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
