//! `betwixt` command-line front end. Every subcommand prints JSON on stdout.
//!
//! Exit codes: 0 success or a positive verdict, 1 a negative verdict, 2 usage
//! errors and exceeded limits, 3 malformed input.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use betwixt::constructions::{block_signature, circuit_langs, xst_words, XstParams};
use betwixt::fo2::Fo2;
use betwixt::games::distinguishing_depth;
use betwixt::monoid::{definability_report, size_warning, FiniteMonoid, Monoid};
use betwixt::satgen::{
    bounded_sat_with, encode_tiling, reduce_th_to_bet, solve_tiling, tiling_witness, SatError,
    SatOptions, TilingInstance, TilingSolution,
};
use betwixt::tl::{btlinv_to_utlinv, tl_to_fo2, Tl};
use betwixt::{Alphabet, Dfa, Regex, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const MAX_WORD_LEN: usize = 64;
const MAX_DEPTH: usize = 8;

#[derive(Parser)]
#[command(name = "betwixt", version, about = "Definability, games and satisfiability for two-variable logic on words")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Alphabet: a string of single-character letters (`ab`) or a
    /// comma-separated list of names (`0,1,g1`). Inferred when omitted.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Definability report for a regular expression.
    Analyze {
        /// Regex text, or `@file`.
        regex: String,
    },
    /// Syntactic monoid with its multiplication table.
    Monoid { regex: String },
    /// Evaluate a sentence on a word.
    Eval {
        #[arg(long, value_enum, default_value = "fo2")]
        logic: Logic,
        formula: String,
        word: String,
    },
    /// Decide `≡_k` (or `≡_k^θ`) for two words.
    Equiv {
        #[arg(long)]
        depth: usize,
        /// Per-letter thresholds, e.g. `a=2,b=1`; unlisted letters get 1.
        #[arg(long)]
        theta: Option<String>,
        w1: String,
        w2: String,
    },
    /// Translate between formula classes.
    Translate {
        #[arg(long, value_enum)]
        from: Format,
        #[arg(long, value_enum)]
        to: Format,
        formula: String,
    },
    /// Bounded search for a model of a sentence.
    Sat {
        sentence: String,
        #[arg(long)]
        max_len: usize,
        /// Number of worker threads.
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Corridor tiling encoder.
    #[command(subcommand)]
    Tiling(TilingCommand),
    /// Word and language families.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Threshold block signature of a word over two letters.
    Congruence {
        #[arg(long)]
        threshold: usize,
        word: String,
    },
}

#[derive(Subcommand)]
enum TilingCommand {
    /// Print the clauses of the encoding.
    Encode(InstanceArg),
    /// Print a witness word, from a given solution or by search.
    Witness {
        #[command(flatten)]
        instance: InstanceArg,
        /// Solution JSON `{"rows": [[...], ...]}` or `@file`.
        #[arg(long)]
        solution: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_rows: usize,
    },
}

#[derive(Args)]
struct InstanceArg {
    /// Instance JSON, `@file`, or `-` for stdin.
    instance: String,
}

#[derive(Subcommand)]
enum GenerateCommand {
    Xst {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long = "S")]
        big_s: usize,
        #[arg(long = "T")]
        big_t: usize,
    },
    Circuit {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Logic {
    Fo2,
    Tl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    BtlInv,
    UtlInv,
    Tl,
    Fo2,
    Fo2Th,
    Fo2Bet,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn input(e: impl Display) -> Failure {
        Failure::Input(e.to_string())
    }

    fn usage(e: impl Display) -> Failure {
        Failure::Usage(e.to_string())
    }
}

/// JSON plus the exit verdict.
struct Output {
    value: Value,
    verdict: bool,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, verdict: true }
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_alphabet(spec: &str) -> Result<Alphabet, Failure> {
    let a = if spec.contains(',') {
        Alphabet::new(spec.split(',').map(str::trim))
    } else {
        Alphabet::from_chars(spec)
    };
    a.map_err(Failure::input)
}

/// Letter names in a word, for alphabet inference.
fn word_letters(text: &str) -> Result<Vec<String>, Failure> {
    let text = text.trim();
    if !text.contains(char::is_whitespace) && !text.contains('\'') {
        return Ok(text.chars().map(String::from).collect());
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        if let Some(q) = rest.strip_prefix('\'') {
            let close = q.find('\'').ok_or_else(|| Failure::input("unterminated quoted letter"))?;
            out.push(q[..close].to_string());
            rest = q[close + 1..].trim_start();
        } else {
            let end = rest
                .find(|c: char| c.is_whitespace() || c == '\'')
                .unwrap_or(rest.len());
            out.push(rest[..end].to_string());
            rest = rest[end..].trim_start();
        }
    }
    Ok(out)
}

/// The `--alphabet` flag if given, otherwise the sorted union of `seed` and
/// the letters of `words`.
fn resolve_alphabet(
    flag: Option<&str>,
    seed: &[String],
    words: &[&str],
) -> Result<Alphabet, Failure> {
    if let Some(spec) = flag {
        return parse_alphabet(spec);
    }
    let mut names: BTreeSet<String> = seed.iter().cloned().collect();
    for w in words {
        names.extend(word_letters(w)?);
    }
    if names.is_empty() {
        return Err(Failure::Usage("cannot infer an alphabet; pass --alphabet".into()));
    }
    Alphabet::new(names).map_err(Failure::input)
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, Failure> {
    let w = alphabet.parse_word(text).map_err(Failure::input)?;
    if w.len() > MAX_WORD_LEN {
        return Err(Failure::Usage(format!(
            "word of length {} exceeds the limit of {MAX_WORD_LEN}",
            w.len()
        )));
    }
    Ok(w)
}

fn regex_input(text: &str, flag: Option<&str>) -> Result<(Regex, Alphabet), Failure> {
    let text = read_source(text)?;
    match flag {
        Some(spec) => {
            let a = parse_alphabet(spec)?;
            let r = Regex::parse(text.trim(), &a).map_err(Failure::input)?;
            Ok((r, a))
        }
        None => Regex::parse_infer(text.trim()).map_err(Failure::input),
    }
}

fn warn_size(size: usize) {
    if let Some(msg) = size_warning(size) {
        eprintln!("{msg}");
    }
}

fn fo2_letters(text: &str) -> Vec<String> {
    Fo2::parse_infer(text)
        .map(|(_, a)| a.letters().to_vec())
        .unwrap_or_default()
}

fn tl_letters(text: &str) -> Vec<String> {
    Tl::parse_infer(text)
        .map(|(_, a)| a.letters().to_vec())
        .unwrap_or_default()
}

fn parse_theta(spec: Option<&str>, alphabet: &Alphabet) -> Result<Vec<u64>, Failure> {
    let mut theta = vec![1u64; alphabet.len()];
    let Some(spec) = spec else {
        return Ok(theta);
    };
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("bad theta entry `{item}`, expected letter=n")))?;
        let letter = alphabet
            .index_of(name.trim())
            .ok_or_else(|| Failure::Input(format!("theta names unknown letter `{name}`")))?;
        let v: u64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("bad theta value `{value}`")))?;
        if v == 0 {
            return Err(Failure::Input(format!("theta for `{name}` must be at least 1")));
        }
        theta[letter] = v;
    }
    Ok(theta)
}

fn word_json(alphabet: &Alphabet, w: &Word) -> Value {
    Value::String(alphabet.format_word(w))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let flag = cli.alphabet.as_deref();
    match &cli.command {
        Command::Analyze { regex } => {
            let (r, a) = regex_input(regex, flag)?;
            let report = definability_report(&r, &a);
            warn_size(report.monoid_size);
            Ok(serde_json::to_value(report).expect("report serializes").into())
        }
        Command::Monoid { regex } => {
            let (r, a) = regex_input(regex, flag)?;
            let m = FiniteMonoid::syntactic(&Dfa::from_regex(&r, &a));
            warn_size(m.size());
            Ok(serde_json::to_value(m.to_json()).expect("monoid serializes").into())
        }
        Command::Eval { logic, formula, word } => {
            let text = read_source(formula)?;
            let seed = match logic {
                Logic::Fo2 => fo2_letters(&text),
                Logic::Tl => tl_letters(&text),
            };
            let a = resolve_alphabet(flag, &seed, &[word])?;
            let w = parse_word(&a, word)?;
            let holds = match logic {
                Logic::Fo2 => {
                    let f = Fo2::parse(&text, &a).map_err(Failure::input)?;
                    if !f.is_sentence() {
                        return Err(Failure::Input("formula has free variables".into()));
                    }
                    f.holds(&w).map_err(Failure::input)?
                }
                Logic::Tl => Tl::parse(&text, &a).map_err(Failure::input)?.accepts(&w),
            };
            Ok(Output {
                value: Value::Bool(holds),
                verdict: holds,
            })
        }
        Command::Equiv { depth, theta, w1, w2 } => {
            if *depth > MAX_DEPTH {
                return Err(Failure::Usage(format!("depth {depth} exceeds the limit of {MAX_DEPTH}")));
            }
            let mut seed = Vec::new();
            if let Some(spec) = theta {
                seed.extend(spec.split(',').filter_map(|s| s.split_once('=')).map(|(n, _)| n.trim().to_string()));
            }
            let a = resolve_alphabet(flag, &seed, &[w1, w2])?;
            let (u, v) = (parse_word(&a, w1)?, parse_word(&a, w2)?);
            let theta = parse_theta(theta.as_deref(), &a)?;
            let found = distinguishing_depth(&u, &v, *depth, &theta);
            Ok(Output {
                value: json!({ "equivalent": found.is_none(), "depth": found }),
                verdict: found.is_none(),
            })
        }
        Command::Translate { from, to, formula } => translate(*from, *to, &read_source(formula)?, flag),
        Command::Sat { sentence, max_len, parallel } => {
            if *max_len > MAX_WORD_LEN {
                return Err(Failure::Usage(format!("--max-len exceeds the limit of {MAX_WORD_LEN}")));
            }
            let text = read_source(sentence)?;
            let a = resolve_alphabet(flag, &fo2_letters(&text), &[])?;
            let f = Fo2::parse(&text, &a).map_err(Failure::input)?;
            if !f.is_sentence() {
                return Err(Failure::Input("formula has free variables".into()));
            }
            let search = |opts| bounded_sat_with(&f, &a, *max_len, opts);
            let result = match parallel {
                Some(0) => return Err(Failure::usage("--parallel needs at least one worker")),
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(*n)
                    .build()
                    .map_err(Failure::usage)?
                    .install(|| search(SatOptions { parallel: true })),
                None => search(SatOptions::default()),
            };
            let found = result.map_err(|e| match e {
                SatError::TooMany(..) => Failure::usage(e),
                SatError::Eval(_) => Failure::input(e),
            })?;
            Ok(Output {
                value: json!({
                    "satisfiable": found.is_some(),
                    "witness": found.as_ref().map(|w| word_json(&a, w)),
                }),
                verdict: found.is_some(),
            })
        }
        Command::Tiling(cmd) => tiling(cmd),
        Command::Generate(GenerateCommand::Xst { r, s, big_s, big_t }) => {
            let p = XstParams { r: *r, s: *s, big_s: *big_s, big_t: *big_t };
            let x = xst_words(p).map_err(Failure::usage)?;
            Ok(json!({
                "alphabet": x.alphabet,
                "v": word_json(&x.alphabet, &x.v),
                "a": word_json(&x.alphabet, &x.bold_a),
                "b": word_json(&x.alphabet, &x.bold_b),
                "x": word_json(&x.alphabet, &x.x),
                "length": x.x.len(),
            })
            .into())
        }
        Command::Generate(GenerateCommand::Circuit { m }) => {
            let langs = circuit_langs(*m).map_err(Failure::usage)?;
            Ok(json!({
                "alphabet": langs.alphabet,
                "C": langs.c.to_text(&langs.alphabet),
                "T": langs.t.to_text(&langs.alphabet),
            })
            .into())
        }
        Command::Congruence { threshold, word } => {
            let a = parse_alphabet(flag.unwrap_or("ab"))?;
            if a.len() != 2 {
                return Err(Failure::usage("congruence needs a two-letter alphabet"));
            }
            let w = parse_word(&a, word)?;
            let sig = block_signature(&w, *threshold).map_err(Failure::usage)?;
            Ok(serde_json::to_value(sig).expect("signature serializes").into())
        }
    }
}

fn translate(from: Format, to: Format, text: &str, flag: Option<&str>) -> Result<Output, Failure> {
    match (from, to) {
        (Format::BtlInv, Format::UtlInv) | (Format::Tl, Format::Fo2) => {
            let (f, a) = match flag {
                Some(spec) => {
                    let a = parse_alphabet(spec)?;
                    (Tl::parse(text, &a).map_err(Failure::input)?, a)
                }
                None => Tl::parse_infer(text).map_err(Failure::input)?,
            };
            let out = if from == Format::BtlInv {
                btlinv_to_utlinv(&f).map_err(Failure::input)?.to_text(&a)
            } else {
                tl_to_fo2(&f).map_err(Failure::usage)?.to_text(&a)
            };
            Ok(json!({ "alphabet": a, "formula": out }).into())
        }
        (Format::Fo2Th, Format::Fo2Bet) => {
            let (f, a) = match flag {
                Some(spec) => {
                    let a = parse_alphabet(spec)?;
                    (Fo2::parse(text, &a).map_err(Failure::input)?, a)
                }
                None => Fo2::parse_infer(text).map_err(Failure::input)?,
            };
            let red = reduce_th_to_bet(&f, &a).map_err(|e| match e {
                betwixt::satgen::ReductionError::TooLarge(_) => Failure::usage(e),
                _ => Failure::input(e),
            })?;
            let counters: Vec<Value> = red
                .counters
                .iter()
                .map(|c| json!({ "letter": a.name(c.letter), "width": c.width }))
                .collect();
            Ok(json!({
                "alphabet": red.alphabet,
                "counters": counters,
                "formula": red.formula.to_text(&red.alphabet),
            })
            .into())
        }
        _ => Err(Failure::usage(
            "supported translations: btl-inv -> utl-inv, tl -> fo2, fo2-th -> fo2-bet",
        )),
    }
}

fn load_instance(arg: &InstanceArg) -> Result<TilingInstance, Failure> {
    let text = read_source(&arg.instance)?;
    let inst: TilingInstance = serde_json::from_str(&text).map_err(Failure::input)?;
    inst.validate().map_err(Failure::input)?;
    Ok(inst)
}

fn tiling(cmd: &TilingCommand) -> Result<Output, Failure> {
    match cmd {
        TilingCommand::Encode(arg) => {
            let inst = load_instance(arg)?;
            let enc = encode_tiling(&inst).map_err(Failure::input)?;
            let clauses: serde_json::Map<String, Value> = enc
                .clauses
                .iter()
                .map(|(name, f)| (name.to_string(), Value::String(f.to_text(&enc.alphabet))))
                .collect();
            Ok(json!({
                "alphabet": enc.alphabet,
                "size": enc.sentence().size(),
                "clauses": clauses,
            })
            .into())
        }
        TilingCommand::Witness { instance, solution, max_rows } => {
            let inst = load_instance(instance)?;
            let sol = match solution {
                Some(s) => {
                    let sol: TilingSolution =
                        serde_json::from_str(&read_source(s)?).map_err(Failure::input)?;
                    sol.check(&inst).map_err(Failure::input)?;
                    Some(sol)
                }
                None => solve_tiling(&inst, *max_rows).map_err(Failure::input)?,
            };
            let Some(sol) = sol else {
                return Ok(Output {
                    value: json!({ "solvable": false, "rows": null, "witness": null }),
                    verdict: false,
                });
            };
            let w = tiling_witness(&inst, &sol).map_err(Failure::input)?;
            let enc = encode_tiling(&inst).map_err(Failure::input)?;
            Ok(json!({
                "solvable": true,
                "rows": sol.rows,
                "witness": word_json(&enc.alphabet, &w),
                "length": w.len(),
            })
            .into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&out.value)
            } else {
                serde_json::to_string(&out.value)
            };
            let mut stdout = io::stdout().lock();
            // a closed pipe is not an error for a filter-style tool
            let _ = writeln!(stdout, "{}", text.expect("JSON values serialize"));
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
