//! Command dispatch for the `sgap` binary: every computation in the core
//! library wired to reproducible text, JSON or DOT output.
//!
//! Exit codes: 0 on success, 1 on validation failure, 2 on usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sgap_core::document::{
    emit_relation_literal, emit_sgap, generate_family, parse_relation_literal, parse_sgap,
    SgapDocument,
};
use sgap_core::free::{extend_morphism, Word};
use sgap_core::green::{eggbox_dot, eggbox_json, green_relations};
use sgap_core::kernels::{coequivalence_kernel_with_step, cotransitive_kernel};
use sgap_core::relations::{classify_apartness, FiniteRelation, FiniteSetoid, FiniteSubset};
use sgap_core::semigroup::{
    classify_compatibility, co_congruence_kernel_with_step, compatible_closure, congruence_closure,
    index_period, rees_factor, SemigroupWithApartness,
};
use sgap_core::suites;
use std::io::{Read, Write};

#[derive(Parser)]
#[command(name = "sgap", version, about = "Finite semigroups with apartness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a document is a valid semigroup with apartness.
    Validate { file: String },
    /// Report the classifier flags of the document's apartness.
    Classify { file: String },
    /// Kernel of a relation over the document's carrier.
    Kernel {
        #[arg(long, value_enum)]
        kind: KernelKind,
        /// Inline literal `n=3; pairs=(0,1)(1,2)` or `@file`.
        #[arg(long)]
        rel: String,
        file: String,
    },
    /// Closure of a relation over the document's carrier.
    Closure {
        #[arg(long, value_enum)]
        kind: ClosureKind,
        #[arg(long)]
        rel: String,
        file: String,
    },
    /// Classical Green's preorders and relations as JSON.
    Green { file: String },
    /// Co-Green quasiorders and relations as JSON.
    Cogreen { file: String },
    /// Egg-box structure of D-classes.
    Eggbox {
        #[arg(long, value_enum, default_value_t = EggboxFormat::Json)]
        format: EggboxFormat,
        file: String,
    },
    /// Rees factor by the ideal complementary to a co-ideal.
    Rees {
        /// Comma-separated member indices of the co-ideal.
        #[arg(long)]
        coideal: String,
        file: String,
    },
    /// Index, period and idempotent power of an element.
    Monogenic {
        #[arg(long)]
        element: usize,
        file: String,
    },
    /// Evaluate the free extension of a generator map on words.
    Free {
        /// Comma-separated images of the generators.
        #[arg(long)]
        map: String,
        /// Space-separated words, each a comma-separated index string.
        #[arg(long)]
        words: String,
        file: String,
    },
    /// Emit a built-in family as a document.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Run the oracle suites (all of them, or one by name).
    Oracle {
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelKind {
    Cotransitive,
    Coequivalence,
    Cocongruence,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureKind {
    Transitive,
    Equivalence,
    Compatible,
    Congruence,
}

#[derive(Clone, Copy, ValueEnum)]
enum EggboxFormat {
    Json,
    Dot,
}

/// Runs the CLI against explicit I/O streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful output, not errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(std::io::Error),
    Core(sgap_core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<sgap_core::Error> for CliError {
    fn from(e: sgap_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_semigroup(
    path: &str,
    stdin: &mut dyn Read,
) -> Result<(SgapDocument, SemigroupWithApartness), CliError> {
    let doc = parse_sgap(&read_input(path, stdin)?)?;
    let sg = doc.to_semigroup()?;
    Ok((doc, sg))
}

fn load_relation(spec: &str, n: usize, stdin: &mut dyn Read) -> Result<FiniteRelation, CliError> {
    let text = match spec.strip_prefix('@') {
        Some(path) => read_input(path, stdin)?,
        None => spec.to_owned(),
    };
    Ok(parse_relation_literal(text.trim(), Some(n))?)
}

fn rel_json(rel: &FiniteRelation) -> Value {
    json!({ "n": rel.carrier(), "pairs": rel.pairs() })
}

fn print_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("valid json")
    )?;
    Ok(())
}

fn dispatch(
    command: Command,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    match command {
        Command::Validate { file } => {
            load_semigroup(&file, stdin)?;
            writeln!(out, "OK")?;
            Ok(0)
        }
        Command::Classify { file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let report = classify_apartness(sg.setoid().apt(), sg.setoid().eq())?;
            let compat = classify_compatibility(sg.setoid().apt(), &sg)?;
            print_json(
                out,
                &json!({
                    "apartness": {
                        "symmetric": report.symmetric,
                        "cotransitive": report.cotransitive,
                        "coequivalence": report.coequivalence,
                        "co_congruence": compat.co_congruence,
                        "tight": report.tight,
                        "standard": report.standard,
                        "discrete": report.discrete,
                        "fine": report.fine,
                    }
                }),
            )?;
            Ok(0)
        }
        Command::Kernel { kind, rel, file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let relation = load_relation(&rel, sg.carrier(), stdin)?;
            let (result, kind_name) = match kind {
                KernelKind::Cotransitive => (cotransitive_kernel(&relation), "cotransitive"),
                KernelKind::Coequivalence => (
                    coequivalence_kernel_with_step(&relation, sg.setoid())?,
                    "coequivalence",
                ),
                KernelKind::Cocongruence => (
                    co_congruence_kernel_with_step(&relation, &sg)?,
                    "cocongruence",
                ),
            };
            print_json(
                out,
                &json!({
                    "kind": kind_name,
                    "kernel": rel_json(&result.kernel),
                    "literal": emit_relation_literal(&result.kernel),
                    "fixpoint_step": result.fixpoint_step,
                }),
            )?;
            Ok(0)
        }
        Command::Closure { kind, rel, file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let relation = load_relation(&rel, sg.carrier(), stdin)?;
            let (closed, kind_name) = match kind {
                ClosureKind::Transitive => (relation.transitive_closure(), "transitive"),
                ClosureKind::Equivalence => (
                    sgap_core::relations::equivalence_closure(&relation, sg.setoid().eq())?,
                    "equivalence",
                ),
                ClosureKind::Compatible => (compatible_closure(&relation, &sg)?, "compatible"),
                ClosureKind::Congruence => (congruence_closure(&relation, &sg)?, "congruence"),
            };
            print_json(
                out,
                &json!({
                    "kind": kind_name,
                    "closure": rel_json(&closed),
                    "literal": emit_relation_literal(&closed),
                }),
            )?;
            Ok(0)
        }
        Command::Green { file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let g = green_relations(&sg);
            print_json(
                out,
                &json!({
                    "leq_l": rel_json(&g.leq_l),
                    "leq_r": rel_json(&g.leq_r),
                    "leq_j": rel_json(&g.leq_j),
                    "l": rel_json(&g.l),
                    "r": rel_json(&g.r),
                    "j": rel_json(&g.j),
                    "h": rel_json(&g.h),
                    "d": rel_json(&g.d),
                }),
            )?;
            Ok(0)
        }
        Command::Cogreen { file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let g = green_relations(&sg);
            let q = sgap_core::green::co_green_quasiorders(&sg);
            print_json(
                out,
                &json!({
                    "succ_l": rel_json(&q.succ_l),
                    "succ_r": rel_json(&q.succ_r),
                    "succ_j": rel_json(&q.succ_j),
                    "co_l": rel_json(&g.co_l),
                    "co_r": rel_json(&g.co_r),
                    "co_j": rel_json(&g.co_j),
                    "co_h": rel_json(&g.co_h),
                    "co_d": rel_json(&g.co_d),
                }),
            )?;
            Ok(0)
        }
        Command::Eggbox { format, file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let g = green_relations(&sg);
            match format {
                EggboxFormat::Json => print_json(out, &eggbox_json(&g))?,
                EggboxFormat::Dot => write!(out, "{}", eggbox_dot(&sg, &g))?,
            }
            Ok(0)
        }
        Command::Rees { coideal, file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let members: Vec<usize> = if coideal.trim().is_empty() {
                Vec::new()
            } else {
                coideal
                    .split(',')
                    .map(|t| {
                        t.trim().parse().map_err(|_| {
                            CliError::Core(sgap_core::Error::Parse {
                                line: 0,
                                msg: format!("bad co-ideal index `{t}`"),
                            })
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            let set = FiniteSubset::from_members(sg.carrier(), &members)?;
            let factor = rees_factor(&sg, &set)?;
            let doc = SgapDocument::from_semigroup(Some("rees-factor"), &factor.semigroup);
            print_json(
                out,
                &json!({
                    "rees_congruence": rel_json(&factor.rees_congruence),
                    "kappa": rel_json(&factor.kappa),
                    "quotient": emit_sgap(&doc),
                }),
            )?;
            Ok(0)
        }
        Command::Monogenic { element, file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let data = index_period(&sg, element)?;
            print_json(
                out,
                &json!({
                    "index": data.index,
                    "period": data.period,
                    "idempotent_power": data.idempotent_power,
                    "orbit": data.orbit,
                }),
            )?;
            Ok(0)
        }
        Command::Free { map, words, file } => {
            let (_, sg) = load_semigroup(&file, stdin)?;
            let map: Vec<usize> = map
                .split(',')
                .map(|t| {
                    t.trim().parse().map_err(|_| {
                        CliError::Core(sgap_core::Error::Parse {
                            line: 0,
                            msg: format!("bad map image `{t}`"),
                        })
                    })
                })
                .collect::<Result<_, _>>()?;
            let parsed_words: Vec<Word> = words
                .split_whitespace()
                .map(|w| {
                    let letters: Result<Vec<usize>, CliError> = w
                        .split(',')
                        .map(|t| {
                            t.parse().map_err(|_| {
                                CliError::Core(sgap_core::Error::Parse {
                                    line: 0,
                                    msg: format!("bad letter `{t}` in word `{w}`"),
                                })
                            })
                        })
                        .collect();
                    Ok(Word::new(letters?)?)
                })
                .collect::<Result<_, CliError>>()?;
            let generators = FiniteSetoid::discrete(map.len());
            let values = extend_morphism(&generators, &map, &parsed_words, &sg)?;
            print_json(out, &json!({ "values": values }))?;
            Ok(0)
        }
        Command::Gen { family, output } => {
            let doc = generate_family(&family)?;
            let text = emit_sgap(&doc);
            match output {
                Some(path) if path != "-" => std::fs::write(path, text)?,
                _ => write!(out, "{text}")?,
            }
            Ok(0)
        }
        Command::Oracle { check } => {
            let outcomes = match check {
                Some(name) => match suites::run_by_name(&name) {
                    Some(outcome) => vec![outcome],
                    None => {
                        writeln!(
                            err,
                            "unknown check `{name}`; expected one of {}",
                            suites::SUITE_NAMES.join(", ")
                        )?;
                        return Ok(2);
                    }
                },
                None => suites::run_all(),
            };
            let mut all_passed = true;
            for outcome in &outcomes {
                writeln!(out, "{}", outcome.line())?;
                all_passed &= outcome.passed;
            }
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}
