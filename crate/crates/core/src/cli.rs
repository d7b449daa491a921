//! Command-line surface: every library operation as a scriptable
//! subcommand with exact output (plus 12-place decimal approximations for
//! reading convenience).
//!
//! Exit codes: 0 success, 1 domain errors, 2 usage errors.

use crate::error::{Error, Result};
use crate::number_core::{BetaContext, BetaNumber};
use crate::poly::Rat;
use crate::table_group::{self, BetaTable};
use crate::{sofic_graph, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "betafull",
    about = "Exact computations with beta-expansions, sofic beta-shifts, and their full groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (dot applies to `graph` only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Scan depth for classification-driven commands.
    #[arg(long, global = true, default_value_t = 64)]
    depth: usize,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct BetaArg {
    /// Beta spec: digits=1,1 | digits=3,(2) | rational=3/2
    #[arg(long)]
    beta: String,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy expansion digits of a point of [0, 1].
    Expand {
        #[command(flatten)]
        beta: BetaArg,
        /// The point, as an exact rational such as 1 or 3/7.
        #[arg(long)]
        x: String,
        /// Number of digits.
        #[arg(long)]
        n: usize,
    },
    /// First digits of the supremum sequence xi_beta.
    Xi {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long)]
        n: usize,
    },
    /// SFT / sofic / unknown classification of the shift.
    Classify {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// All admissible words of a given length, in lexicographic order.
    Words {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long)]
        n: usize,
    },
    /// Weight of the follower projection of a word.
    Kms {
        #[command(flatten)]
        beta: BetaArg,
        /// Comma-separated word, empty for the empty word.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Exact cylinder interval [l, r) of a word.
    Interval {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// K_0 of the associated algebra (K_1 is always 0).
    K0 {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Groupoid homology (H_0, H_1, H_{>=2}).
    Homology {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Left-resolving labeled graph of a sofic shift.
    Graph {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Presentation matrices M, B, R, S, L and the eta coefficients.
    Matrices {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Which Higman-Thompson group the full group is, if any.
    GroupClass {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Compare the full groups of two bases.
    Isomorphic {
        #[command(flatten)]
        beta: BetaArg,
        /// The other beta spec.
        #[arg(long)]
        other: String,
    },
    /// Generator words recoding an SFT shift as a full shift.
    Recode {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// Table calculus of the full group.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
}

#[derive(Args)]
struct BetaCheck {
    /// Optional: require the table file to live in this context.
    #[arg(long)]
    beta: Option<String>,
}

#[derive(Subcommand)]
enum TableAction {
    /// Check the two-row table conditions of a table file.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        beta: BetaCheck,
    },
    /// Compose two tables (the --with table is applied first).
    Compose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        with: PathBuf,
        #[command(flatten)]
        beta: BetaCheck,
    },
    /// Invert a table.
    Invert {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        beta: BetaCheck,
    },
    /// Canonical piecewise-linear form of a table.
    ToPl {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        beta: BetaCheck,
    },
    /// Evaluate the table's map at an exact rational point.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[command(flatten)]
        beta: BetaCheck,
    },
    /// The identity table of a context.
    Identity {
        #[command(flatten)]
        beta: BetaArg,
    },
    /// A seeded random valid table.
    Random {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
}

/// Parse arguments, dispatch, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.format == Format::Dot && !matches!(cli.command, Command::Graph { .. }) {
        eprintln!("error: --format dot applies only to the graph subcommand");
        return 2;
    }
    match dispatch(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, output + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else {
                println!("{output}");
            }
            0
        }
        Err(err) => {
            match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct ErrJson<'a> {
                        error: &'a str,
                        message: String,
                    }
                    let body = serde_json::to_string(&ErrJson {
                        error: err.code(),
                        message: err.to_string(),
                    })
                    .expect("error serializes");
                    eprintln!("{body}");
                }
                _ => eprintln!("error: {err}"),
            }
            1
        }
    }
}

fn parse_rational(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad number {t:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn read_table(path: &PathBuf) -> Result<BetaTable> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    BetaTable::from_json_str(&body)
}

fn read_table_checked(path: &PathBuf, beta: &Option<String>) -> Result<BetaTable> {
    let table = read_table(path)?;
    if let Some(spec) = beta {
        let wanted = BetaContext::new(spec)?;
        if !wanted.same_context(table.context()) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(table)
}

#[derive(Serialize)]
struct NumberOut {
    poly: Vec<String>,
    approx: String,
}

fn number_json(v: &BetaNumber) -> NumberOut {
    NumberOut {
        poly: v.poly_coeffs().iter().map(|c| c.to_string()).collect(),
        approx: v.to_decimal(12),
    }
}

fn number_text(v: &BetaNumber) -> String {
    match v.as_rational() {
        Some(r) => format!("{r}"),
        None => format!("{v} ~ {}", v.to_decimal(12)),
    }
}

fn digits_csv(digits: &[u32]) -> String {
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn dispatch(cli: &Cli) -> Result<String> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Expand { beta, x, n } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let x = ctx.from_rat(parse_rational(x)?);
            let digits = ctx.beta_expand(&x, *n)?;
            if json {
                #[derive(Serialize)]
                struct Out {
                    digits: Vec<u32>,
                }
                Ok(serde_json::to_string(&Out { digits }).expect("serializes"))
            } else {
                Ok(digits_csv(&digits))
            }
        }
        Command::Xi { beta, n } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let seq = ctx.xi_description(*n);
            if json {
                #[derive(Serialize)]
                struct PeriodOut {
                    preperiod: usize,
                    period: Vec<u32>,
                }
                #[derive(Serialize)]
                struct Out {
                    digits: Vec<u32>,
                    eventual_period: Option<PeriodOut>,
                }
                let out = Out {
                    digits: seq.prefix,
                    eventual_period: seq.eventual_period.map(|(preperiod, period)| PeriodOut {
                        preperiod,
                        period,
                    }),
                };
                Ok(serde_json::to_string(&out).expect("serializes"))
            } else {
                Ok(digits_csv(&seq.prefix))
            }
        }
        Command::Classify { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let class = ctx.classify_shift(cli.depth);
            Ok(serde_json::to_string(&class).expect("serializes"))
        }
        Command::Words { beta, n } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let words: Vec<String> = ctx
                .enumerate_words(*n)
                .iter()
                .map(|w| w.to_string())
                .collect();
            if json {
                #[derive(Serialize)]
                struct Out {
                    count: usize,
                    words: Vec<String>,
                }
                Ok(serde_json::to_string(&Out {
                    count: words.len(),
                    words,
                })
                .expect("serializes"))
            } else {
                Ok(words.join("\n"))
            }
        }
        Command::Kms { beta, word } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let w = ctx.word_from_str(word)?;
            let value = w.kms_value();
            if json {
                #[derive(Serialize)]
                struct Out {
                    value: NumberOut,
                    follower_index: usize,
                }
                Ok(serde_json::to_string(&Out {
                    value: number_json(&value),
                    follower_index: w.follower_index(),
                })
                .expect("serializes"))
            } else {
                Ok(number_text(&value))
            }
        }
        Command::Interval { beta, word } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let w = ctx.word_from_str(word)?;
            let (l, r) = (w.l_value(), w.r_value());
            if json {
                #[derive(Serialize)]
                struct Out {
                    l: NumberOut,
                    r: NumberOut,
                }
                Ok(serde_json::to_string(&Out {
                    l: number_json(&l),
                    r: number_json(&r),
                })
                .expect("serializes"))
            } else {
                Ok(format!("l = {}, r = {}", number_text(&l), number_text(&r)))
            }
        }
        Command::K0 { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let k0 = sofic_graph::k0_group(&ctx, cli.depth);
            if json {
                Ok(serde_json::to_string(&k0).expect("serializes"))
            } else {
                Ok(k0.to_string())
            }
        }
        Command::Homology { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let h = sofic_graph::homology(&ctx, cli.depth);
            if json {
                Ok(h.to_json())
            } else {
                Ok(h.to_string())
            }
        }
        Command::Graph { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let graph = sofic_graph::build_graph(&ctx)?;
            match cli.format {
                Format::Dot => Ok(graph.to_dot().trim_end().to_string()),
                Format::Json => Ok(graph.to_json()),
                Format::Text => {
                    let mut lines = vec![format!("vertices: {}", graph.vertices)];
                    for e in &graph.edges {
                        lines.push(format!("v{} --{}--> v{}", e.from, e.label, e.to));
                    }
                    Ok(lines.join("\n"))
                }
            }
        }
        Command::Matrices { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let m = sofic_graph::matrices(&ctx)?;
            if json {
                Ok(m.to_json())
            } else {
                let render = |name: &str, rows: &Vec<Vec<i64>>| {
                    let body = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect::<Vec<_>>()
                        .join("; ");
                    format!("{name} = [{body}]")
                };
                Ok([
                    render("M", &m.m),
                    render("B", &m.b),
                    render("R", &m.r),
                    render("S", &m.s),
                    render("L", &m.l),
                    format!(
                        "eta = ({})",
                        m.eta
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    format!("det(I-B) = det(I-M) = det(I-L) = {}", m.det_one_minus),
                ]
                .join("\n"))
            }
        }
        Command::GroupClass { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let class = sofic_graph::group_class(&ctx, cli.depth);
            if json {
                Ok(serde_json::to_string(&class).expect("serializes"))
            } else {
                Ok(class.to_string())
            }
        }
        Command::Isomorphic { beta, other } => {
            let a = BetaContext::new(&beta.beta)?;
            let b = BetaContext::new(other)?;
            let verdict = sofic_graph::is_isomorphic(&a, &b, cli.depth);
            if json {
                #[derive(Serialize)]
                struct Out {
                    isomorphic: sofic_graph::IsoVerdict,
                }
                Ok(serde_json::to_string(&Out { isomorphic: verdict }).expect("serializes"))
            } else {
                Ok(verdict.to_string())
            }
        }
        Command::Recode { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            let words = sofic_graph::recode_generators(&ctx)?;
            let rendered: Vec<String> = words.iter().map(Word::to_string).collect();
            if json {
                #[derive(Serialize)]
                struct Out {
                    generators: Vec<String>,
                }
                Ok(serde_json::to_string(&Out {
                    generators: rendered,
                })
                .expect("serializes"))
            } else {
                Ok(rendered
                    .iter()
                    .enumerate()
                    .map(|(i, w)| format!("T{} = {w}", i + 1))
                    .collect::<Vec<_>>()
                    .join("\n"))
            }
        }
        Command::Table { action } => table_dispatch(action, cli),
    }
}

fn table_dispatch(action: &TableAction, cli: &Cli) -> Result<String> {
    let json = cli.format == Format::Json;
    match action {
        TableAction::Validate { input, beta } => {
            let table = read_table_checked(input, &beta.beta)?;
            table.validate()?;
            if json {
                Ok(r#"{"ok":true}"#.to_string())
            } else {
                Ok("ok".to_string())
            }
        }
        TableAction::Compose { input, with, beta } => {
            let outer = read_table_checked(input, &beta.beta)?;
            let inner = read_table_checked(with, &beta.beta)?;
            Ok(table_group::compose(&outer, &inner)?.to_json_string())
        }
        TableAction::Invert { input, beta } => {
            Ok(read_table_checked(input, &beta.beta)?.invert().to_json_string())
        }
        TableAction::ToPl { input, beta } => {
            Ok(read_table_checked(input, &beta.beta)?.to_pl().to_json_string())
        }
        TableAction::Eval { input, x, beta } => {
            let table = read_table_checked(input, &beta.beta)?;
            let pl = table.to_pl();
            let point = table.context().from_rat(parse_rational(x)?);
            let value = pl.eval(&point)?;
            if json {
                #[derive(Serialize)]
                struct Out {
                    value: NumberOut,
                }
                Ok(serde_json::to_string(&Out {
                    value: number_json(&value),
                })
                .expect("serializes"))
            } else {
                Ok(number_text(&value))
            }
        }
        TableAction::Identity { beta } => {
            let ctx = BetaContext::new(&beta.beta)?;
            Ok(BetaTable::identity(&ctx)?.to_json_string())
        }
        TableAction::Random { beta, seed, size } => {
            let ctx = BetaContext::new(&beta.beta)?;
            Ok(table_group::random_table(&ctx, *seed, *size)?.to_json_string())
        }
    }
}
