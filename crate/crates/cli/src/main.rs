use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use posetlab::arith::{classical_mobius, integer_to_multiset, multiset_to_integer};
use posetlab::document::{load_poset_file, resolve_poset, FunctionDocument};
use posetlab::lab::{
    conjecture_experiment, finite_support_pair_search, support_census, verify_theorem_conclusion,
    witnesses_with, WitnessCertificate, WitnessRegistry, DEFAULT_WITNESS_BUDGET,
};
use posetlab::{
    convolve, materialize, mobius_inversion, mobius_value, zeta_transform, Element, EvaluableFunction,
    FiniteSupportFunction, IntervalFunction, PosetError, PosetHandle, Window,
};

const SYNOPSIS: &str = "usage: posetlab <COMMAND> [--poset <name> | --poset-file <path>] [--json] [OPTIONS]
commands: mobius, classical-mobius, transform, invert-transform, convolve, witness,
          verify, census, search, conjecture, isomap
run `posetlab help <COMMAND>` for the options of one command";

#[derive(Parser, Debug)]
#[command(name = "posetlab", version, about = "Exact Möbius functions and inversion experiments on locally finite posets")]
struct Cli {
    /// Built-in poset (divisibility, chain, subsets, multisets) or a poset file.
    #[arg(long, global = true, conflicts_with = "poset_file")]
    poset: Option<String>,
    /// Explicit poset document: {"elements": [...], "covers": [[a, b], ...]}.
    #[arg(long, global = true)]
    poset_file: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Möbius function mu(x, y) by recursion.
    Mobius {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Classical number-theoretic mu(n).
    ClassicalMobius {
        #[arg(long)]
        n: u64,
    },
    /// Zeta transform g(y) = sum_{x <= y} f(x), materialized on a window.
    Transform(FunctionArgs),
    /// Möbius inversion f(y) = sum_{x <= y} mu(x, y) g(x), materialized on a window.
    InvertTransform(FunctionArgs),
    /// Evaluate a convolution of named interval functions on [x, y].
    Convolve {
        #[arg(long, default_value = "mobius")]
        left: String,
        #[arg(long, default_value = "zeta")]
        right: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Elements z > y satisfying the witness conditions for an avoid set.
    Witness {
        #[arg(long)]
        y: String,
        /// Comma-joined element encodings.
        #[arg(long, default_value = "")]
        avoid: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        budget: usize,
        /// Candidate strategy; defaults to the poset's own.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Check f(z) = mu(y, z) f(y) at witnesses for the inversion of a function document.
    Verify {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        budget: usize,
    },
    /// The set of y in a window with a(x, y) != 0, and whether it is finite.
    Census {
        #[arg(long)]
        x: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Interval function: mobius, zeta or delta.
        #[arg(long, default_value = "mobius")]
        function: String,
    },
    /// Nonzero f supported in a window whose zeta transform vanishes on the rest of a shell.
    Search {
        #[command(flatten)]
        window: WindowArgs,
        /// Shell bound; defaults to twice the window extent.
        #[arg(long)]
        shell_bound: Option<u64>,
    },
    /// Inverse check, censuses and pair search for a pair of interval functions.
    Conjecture {
        #[arg(long, default_value = "zeta")]
        alpha: String,
        #[arg(long, default_value = "mobius")]
        beta: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        shell_bound: Option<u64>,
        /// Comma-joined elements to take censuses at; defaults to the bottom.
        #[arg(long)]
        x: Option<String>,
    },
    /// Multiset <-> integer correspondence.
    Isomap {
        /// Multiset encoding such as 2^2*3.
        #[arg(long, conflicts_with = "to_multiset", required_unless_present = "to_multiset")]
        to_integer: Option<String>,
        #[arg(long)]
        to_multiset: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct FunctionArgs {
    /// Function document: {"poset": ..., "values": {"<element>": "<scalar>"}}.
    #[arg(long = "fn")]
    function: PathBuf,
    /// Window bound; defaults to the smallest window covering the support.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Args, Debug)]
struct WindowArgs {
    #[arg(long, conflicts_with = "window_ideal", required_unless_present = "window_ideal")]
    bound: Option<u64>,
    /// Use the ideal below this element as the window.
    #[arg(long)]
    window_ideal: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(PosetError),
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

type Outcome = Result<String, Failure>;

struct Context {
    poset: Option<(PosetHandle, String)>,
    json: bool,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let poset = match (&cli.poset, &cli.poset_file) {
            (Some(name), _) => Some((resolve_poset(name)?, name.clone())),
            (None, Some(path)) => Some((load_poset_file(path)?, path.display().to_string())),
            (None, None) => None,
        };
        Ok(Self { poset, json: cli.json })
    }

    fn poset(&self) -> Result<&PosetHandle, Failure> {
        self.poset
            .as_ref()
            .map(|(p, _)| p)
            .ok_or_else(|| Failure::Usage("this command needs --poset or --poset-file".into()))
    }

    fn element(&self, text: &str) -> Result<Element, Failure> {
        Ok(self.poset()?.parse_element(text)?)
    }

    fn window(&self, args: &WindowArgs) -> Result<Window, Failure> {
        let p = self.poset()?;
        match (&args.window_ideal, args.bound) {
            (Some(top), _) => Ok(Window::ideal(p, p.parse_element(top)?)?),
            (None, Some(b)) => Ok(Window::bounded(p, b)),
            (None, None) => Err(Failure::Usage("give --bound or --window-ideal".into())),
        }
    }

    fn shell(&self, w: &Window, bound: Option<u64>) -> Result<Window, Failure> {
        match bound {
            Some(b) => Ok(Window::bounded(self.poset()?, b)),
            None => Ok(w.doubled()?),
        }
    }

    /// Loads a function document. Without an explicit poset flag the document's
    /// own `poset` field selects the poset.
    fn function(&mut self, path: &PathBuf) -> Result<FiniteSupportFunction, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let doc = FunctionDocument::parse(&text)?;
        if self.poset.is_none() {
            self.poset = Some((resolve_poset(&doc.poset)?, doc.poset.clone()));
        }
        Ok(doc.to_function(self.poset()?)?)
    }

    fn label(&self) -> &str {
        self.poset.as_ref().map(|(_, l)| l.as_str()).unwrap_or("")
    }
}

fn render_function(ctx: &Context, f: &FiniteSupportFunction) -> String {
    if ctx.json {
        return FunctionDocument::from_function(ctx.label(), f).to_json_string();
    }
    if f.is_zero() {
        return "(zero function)".into();
    }
    f.iter().map(|(x, v)| format!("{x}\t{v}")).collect::<Vec<_>>().join("\n")
}

fn transformed(ctx: &mut Context, args: &FunctionArgs, op: fn(&FiniteSupportFunction) -> EvaluableFunction) -> Outcome {
    let f = ctx.function(&args.function)?;
    let p = ctx.poset()?.clone();
    let bound = match args.bound {
        Some(b) => b,
        None => f.support().map(|x| p.window_extent(x)).collect::<Result<Vec<_>, _>>()?.into_iter().max().unwrap_or(1),
    };
    let g = materialize(&op(&f), &Window::bounded(&p, bound))?;
    Ok(render_function(ctx, &g))
}

fn render_certificates(ctx: &Context, y: &Element, avoid: &[Element], certs: &[WitnessCertificate]) -> String {
    if ctx.json {
        let doc = json!({
            "y": y.to_string(),
            "avoid_set": avoid.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "certificates": certs.iter().map(WitnessCertificate::to_json).collect::<Vec<_>>(),
        });
        return serde_json::to_string_pretty(&doc).unwrap();
    }
    let mut lines = vec![format!("y={y} S={{{}}}", posetlab::poset::join_encodings(avoid))];
    lines.extend(certs.iter().map(WitnessCertificate::summary));
    lines.join("\n")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap()
}

fn run(cli: Cli) -> Outcome {
    let mut ctx = Context::new(&cli)?;
    match cli.command {
        Command::Mobius { x, y } => {
            let (x, y) = (ctx.element(&x)?, ctx.element(&y)?);
            let mu = mobius_value(ctx.poset()?, &x, &y)?;
            Ok(if ctx.json {
                pretty(&json!({"x": x.to_string(), "y": y.to_string(), "mu": mu.to_string()}))
            } else {
                mu.to_string()
            })
        }
        Command::ClassicalMobius { n } => {
            let mu = classical_mobius(n)?;
            Ok(if ctx.json { pretty(&json!({"n": n, "mu": mu})) } else { mu.to_string() })
        }
        Command::Transform(args) => transformed(&mut ctx, &args, zeta_transform),
        Command::InvertTransform(args) => transformed(&mut ctx, &args, mobius_inversion),
        Command::Convolve { left, right, x, y } => {
            let p = ctx.poset()?;
            let (a, b) = (IntervalFunction::by_name(p, &left)?, IntervalFunction::by_name(p, &right)?);
            let (x, y) = (ctx.element(&x)?, ctx.element(&y)?);
            let conv = convolve(&a, &b)?;
            let v = conv.evaluate(&x, &y)?;
            Ok(if ctx.json {
                pretty(&json!({"function": conv.name(), "x": x.to_string(), "y": y.to_string(), "value": v.to_string()}))
            } else {
                v.to_string()
            })
        }
        Command::Witness { y, avoid, count, budget, strategy } => {
            let p = ctx.poset()?;
            let y = p.parse_element(&y)?;
            let avoid = p.parse_elements(&avoid)?;
            let registry = WitnessRegistry::with_builtins();
            let strategy = match &strategy {
                Some(name) => registry.get(name)?,
                None => registry.for_poset(p),
            };
            let certs = witnesses_with(p, strategy, &y, &avoid, count, budget)?.collect::<Result<Vec<_>, _>>()?;
            let out = render_certificates(&ctx, &y, &avoid, &certs);
            if certs.len() < count {
                println!("{out}");
                return Err(Failure::Domain(PosetError::InsufficientWitnesses { requested: count, partial: certs }));
            }
            Ok(out)
        }
        Command::Verify { function, count, budget } => {
            let g = ctx.function(&function)?;
            let avoid: Vec<Element> = g.support().cloned().collect();
            match verify_theorem_conclusion(ctx.poset()?, &g, count, budget) {
                Ok(certs) => Ok(render_certificates(&ctx, &certs[0].y, &avoid, &certs)),
                Err(PosetError::InsufficientWitnesses { requested, partial }) => {
                    if let Some(first) = partial.first() {
                        println!("{}", render_certificates(&ctx, &first.y, &avoid, &partial));
                    }
                    Err(Failure::Domain(PosetError::InsufficientWitnesses { requested, partial }))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Census { x, window, function } => {
            let p = ctx.poset()?;
            let x = p.parse_element(&x)?;
            let w = ctx.window(&window)?;
            let census = support_census(p, &IntervalFunction::by_name(p, &function)?, &x, &w)?;
            if ctx.json {
                return Ok(pretty(&census.to_json()));
            }
            let mut lines = vec![
                format!("x: {}", census.x),
                format!("function: {}", census.function_kind),
                format!("window: {}", census.window),
                format!("members: {}", census.members_text()),
                format!("verdict: {}", census.verdict),
            ];
            if let Some(note) = &census.certificate_note {
                lines.push(format!("certificate: {note}"));
            }
            Ok(lines.join("\n"))
        }
        Command::Search { window, shell_bound } => {
            let w = ctx.window(&window)?;
            let shell = ctx.shell(&w, shell_bound)?;
            let r = finite_support_pair_search(ctx.poset()?, &w, &shell)?;
            if ctx.json {
                return Ok(pretty(&r.to_json()));
            }
            let mut lines = vec![
                format!("window: {}", r.window),
                format!("shell: {}", r.shell),
                format!("unknowns: {}", r.unknowns.len()),
                format!("equations: {}", r.equations),
                format!("nullspace dimension: {}", r.nullspace_dimension),
            ];
            for (i, v) in r.basis.iter().enumerate() {
                let v: Vec<String> = v.iter().map(ToString::to_string).collect();
                lines.push(format!("basis[{i}]: ({})", v.join(", ")));
            }
            if let Some((f, g)) = &r.candidate {
                let show = |h: &FiniteSupportFunction| {
                    h.iter().map(|(x, v)| format!("{x}:{v}")).collect::<Vec<_>>().join(" ")
                };
                lines.push(format!("candidate f: {}", show(f)));
                lines.push(format!("candidate g: {}", show(g)));
                lines.push(format!("note: {}", r.caveat));
            }
            Ok(lines.join("\n"))
        }
        Command::Conjecture { alpha, beta, window, shell_bound, x } => {
            let p = ctx.poset()?;
            let (a, b) = (IntervalFunction::by_name(p, &alpha)?, IntervalFunction::by_name(p, &beta)?);
            let w = ctx.window(&window)?;
            let shell = ctx.shell(&w, shell_bound)?;
            let xs = match &x {
                Some(list) => p.parse_elements(list)?,
                None => vec![p.bottom()],
            };
            let report = conjecture_experiment(p, &a, &b, &w, &shell, &xs)?;
            if ctx.json {
                return Ok(pretty(&report.to_json()));
            }
            let mut lines = vec![
                format!("alpha: {}  beta: {}", report.alpha, report.beta),
                format!("inverse check: {} intervals", report.inverse_intervals_checked),
            ];
            for c in &report.censuses {
                lines.push(format!("S_{}: {} ({})", c.s_x.x, c.s_x.members_text(), c.s_x.verdict));
                lines.push(format!("T_{}: {} ({})", c.t_x.x, c.t_x.members_text(), c.t_x.verdict));
            }
            lines.push(format!("pair search nullspace dimension: {}", report.search.nullspace_dimension));
            Ok(lines.join("\n"))
        }
        Command::Isomap { to_integer, to_multiset } => {
            let m = PosetHandle::multisets();
            let (multiset, integer) = match (to_integer, to_multiset) {
                (Some(text), _) => {
                    let e = m.parse_element(&text)?;
                    let n = multiset_to_integer(e.as_multiset().expect("multiset poset parses multisets"))?;
                    (e.to_string(), n.to_string())
                }
                (None, Some(n)) => (Element::Multiset(integer_to_multiset(n)?).to_string(), n.to_string()),
                (None, None) => return Err(Failure::Usage("give --to-integer or --to-multiset".into())),
            };
            Ok(if ctx.json {
                pretty(&json!({"multiset": multiset, "integer": integer}))
            } else {
                format!("{multiset} <-> {integer}")
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            eprintln!("{SYNOPSIS}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{SYNOPSIS}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
