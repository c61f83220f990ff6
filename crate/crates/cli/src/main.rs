//! Command-line frontend.  Every subcommand is batch-oriented and
//! deterministic: the same invocation produces byte-identical output, and
//! every countermodel can be written to a JSON witness file that `eval`
//! and `force` re-check.
//!
//! Exit codes: 0 for valid/accepted verdicts, 1 for countermodel/rejected,
//! 2 for usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use roughlogic::algebra3::{eval_prop, prop_consequence, PropVerdict, Three};
use roughlogic::kripke_semantics::{
    kripke_consequence_bounded_with_guard, KripkeVerdict, Node,
};
use roughlogic::proofcheck::{check_proof, ProofSystem};
use roughlogic::rough_semantics::{
    rough_consequence_bounded_with_guard, RoughVerdict, DEFAULT_SEARCH_GUARD,
};
use roughlogic::syntax::{
    expand_derived, normalize_modality, parse_in_language, parse_inferring,
    parse_inferring_in_language, translate_s, translate_t, Formula, Language,
    ModalityString, Signature,
};
use roughlogic::transfer::{to_kripke, to_rough};

use roughlogic_cli::formats::{
    read_json, sniff_is_rough, to_json_string, valuation_from_file, valuation_to_file,
    write_json, KripkeModelFile, ProofNodeFile, RoughModelFile, SigFile, ValuationFile,
};
use roughlogic_cli::suite;

#[derive(Parser)]
#[command(name = "roughlogic", disable_help_subcommand = true)]
#[command(about = "Three-valued logic with two negations: evaluation, search, proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and echo its canonical printing.
    Parse {
        formula: String,
        #[command(flatten)]
        sig: SigOpt,
        /// Require the formula to fit one language.
        #[arg(long, value_enum)]
        lang: Option<LangArg>,
    },
    /// Evaluate a formula on a model file or a propositional valuation file.
    Eval {
        formula: String,
        /// Rough or two-node model (JSON; the two are distinguished by shape).
        #[arg(long, conflicts_with = "valuation")]
        model: Option<PathBuf>,
        /// Propositional valuation (JSON object mapping atoms to 0, 1/2, 1).
        #[arg(long)]
        valuation: Option<PathBuf>,
    },
    /// Test whether a node of a two-node model forces a formula.
    Force {
        formula: String,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        node: NodeArg,
    },
    /// Decide a sequent, either over all propositional valuations or by
    /// bounded model search.
    Consequence {
        conclusion: String,
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Largest universe size tried in bounded mode.
        #[arg(long, default_value_t = 2)]
        max_universe: usize,
        /// Which model class bounded mode searches.
        #[arg(long, value_enum, default_value_t = SemanticsArg::Rough)]
        semantics: SemanticsArg,
        #[command(flatten)]
        sig: SigOpt,
        /// Write any countermodel to this file as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Translate between the two languages.
    Translate {
        formula: String,
        #[arg(long, value_enum)]
        dir: TranslateDir,
        #[command(flatten)]
        sig: SigOpt,
    },
    /// Collapse a string over ~ and D to its canonical modality.
    Normalize { string: String },
    /// Convert a model file between the rough and two-node presentations.
    Transfer {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum)]
        dir: TransferDir,
    },
    /// Check a derivation file against one of the two proof systems.
    CheckProof {
        proof: PathBuf,
        #[arg(long, value_enum)]
        system: SystemArg,
        #[command(flatten)]
        sig: SigOpt,
    },
    /// Run the full acceptance battery.
    Suite,
}

#[derive(Args)]
struct SigOpt {
    /// Signature file ({"relations": {"P": 1}}); inferred from the formulas
    /// when absent.
    #[arg(long)]
    sig: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum LangArg {
    D,
    Box,
}

impl From<LangArg> for Language {
    fn from(l: LangArg) -> Language {
        match l {
            LangArg::D => Language::Dual,
            LangArg::Box => Language::Box,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NodeArg {
    #[value(name = "1")]
    One,
    Half,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Prop,
    Bounded,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SemanticsArg {
    Rough,
    Kripke,
}

#[derive(Clone, Copy, ValueEnum)]
enum TranslateDir {
    T,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransferDir {
    ToKripke,
    ToRough,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    D,
    Box,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;
const REFUTED: ExitCode = ExitCode::FAILURE;

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Parse { formula, sig, lang } => {
            let f = parse_text(&formula, &sig, lang)?;
            println!("{f}");
            Ok(PASS)
        }
        Command::Eval {
            formula,
            model,
            valuation,
        } => {
            let value = match (model, valuation) {
                (Some(path), None) => eval_on_model(&formula, &path)?,
                (None, Some(path)) => {
                    let file: ValuationFile = read_json(&path)?;
                    let v = valuation_from_file(&file)?;
                    let mut sig = Signature::new();
                    let f = parse_inferring(&formula, &mut sig)?;
                    eval_prop(&expand_derived(&f), &v)?
                }
                _ => bail!("eval needs exactly one of --model and --valuation"),
            };
            println!("{value}");
            Ok(PASS)
        }
        Command::Force {
            formula,
            model,
            node,
        } => {
            let file: KripkeModelFile = read_json(&model)?;
            let k = file.to_model()?;
            let mut sig = Signature::new();
            let f = parse_inferring(&formula, &mut sig)?;
            let node = match node {
                NodeArg::One => Node::One,
                NodeArg::Half => Node::Half,
            };
            let forced = k.forces(node, &expand_derived(&f))?;
            println!("{forced}");
            Ok(PASS)
        }
        Command::Consequence {
            conclusion,
            premises,
            mode,
            max_universe,
            semantics,
            sig,
            witness,
        } => consequence(&premises, &conclusion, mode, max_universe, semantics, &sig, witness),
        Command::Translate { formula, dir, sig } => {
            let f = parse_text(&formula, &sig, None)?;
            let image = match dir {
                TranslateDir::T => translate_t(&f)?,
                TranslateDir::S => translate_s(&f)?,
            };
            println!("{image}");
            Ok(PASS)
        }
        Command::Normalize { string } => {
            let m = ModalityString::parse(&string)?;
            println!("{}", normalize_modality(&m).as_str());
            Ok(PASS)
        }
        Command::Transfer { input, output, dir } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let json = match dir {
                TransferDir::ToKripke => {
                    if !sniff_is_rough(&text)? {
                        bail!("to-kripke expects a rough model file");
                    }
                    let file: RoughModelFile = serde_json::from_str(&text)?;
                    let k = to_kripke(&file.to_interpretation()?)?;
                    to_json_string(&KripkeModelFile::from_model(&k))?
                }
                TransferDir::ToRough => {
                    if sniff_is_rough(&text)? {
                        bail!("to-rough expects a two-node model file");
                    }
                    let file: KripkeModelFile = serde_json::from_str(&text)?;
                    let m = to_rough(&file.to_model()?)?;
                    to_json_string(&RoughModelFile::from_interpretation(&m))?
                }
            };
            std::fs::write(&output, &json)
                .with_context(|| format!("writing {}", output.display()))?;
            print!("{json}");
            Ok(PASS)
        }
        Command::CheckProof { proof, system, sig } => {
            let file: ProofNodeFile = read_json(&proof)?;
            let mut signature = load_sig(&sig)?.unwrap_or_default();
            let tree = file.to_tree(&mut signature)?;
            let system = match system {
                SystemArg::D => ProofSystem::D,
                SystemArg::Box => ProofSystem::Box,
            };
            match check_proof(&tree, system) {
                Ok(sequent) => {
                    println!("accepted");
                    println!("{sequent}");
                    Ok(PASS)
                }
                Err(e) => {
                    println!("rejected");
                    println!("{e}");
                    Ok(REFUTED)
                }
            }
        }
        Command::Suite => {
            let results = suite::run_all();
            let mut all_pass = true;
            for r in &results {
                println!("{}", r.line());
                all_pass &= r.passed();
            }
            if all_pass {
                Ok(PASS)
            } else {
                Ok(REFUTED)
            }
        }
    }
}

fn load_sig(opt: &SigOpt) -> Result<Option<Signature>> {
    match &opt.sig {
        Some(path) => {
            let file: SigFile = read_json(path)?;
            Ok(Some(file.to_signature()?))
        }
        None => Ok(None),
    }
}

fn parse_text(text: &str, sig: &SigOpt, lang: Option<LangArg>) -> Result<Formula> {
    let f = match (load_sig(sig)?, lang) {
        (Some(sig), Some(lang)) => parse_in_language(text, &sig, lang.into())?,
        (Some(sig), None) => roughlogic::syntax::parse(text, &sig)?,
        (None, Some(lang)) => {
            let mut sig = Signature::new();
            parse_inferring_in_language(text, &mut sig, lang.into())?
        }
        (None, None) => {
            let mut sig = Signature::new();
            parse_inferring(text, &mut sig)?
        }
    };
    Ok(f)
}

fn eval_on_model(formula: &str, path: &PathBuf) -> Result<Three> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut sig = Signature::new();
    let f = expand_derived(&parse_inferring(formula, &mut sig)?);
    if sniff_is_rough(&text)? {
        let file: RoughModelFile = serde_json::from_str(&text)?;
        Ok(file.to_interpretation()?.valuate(&f)?)
    } else {
        let file: KripkeModelFile = serde_json::from_str(&text)?;
        Ok(file.to_model()?.value(&f)?)
    }
}

fn search_guard() -> Result<usize> {
    match std::env::var("ROUGHLOGIC_SEARCH_GUARD") {
        Ok(text) => text
            .parse()
            .map_err(|_| anyhow!("ROUGHLOGIC_SEARCH_GUARD must be a number, got {text:?}")),
        Err(_) => Ok(DEFAULT_SEARCH_GUARD),
    }
}

fn consequence(
    premise_texts: &[String],
    conclusion_text: &str,
    mode: ModeArg,
    max_universe: usize,
    semantics: SemanticsArg,
    sig_opt: &SigOpt,
    witness: Option<PathBuf>,
) -> Result<ExitCode> {
    let loaded = load_sig(sig_opt)?;
    let strict = loaded.is_some();
    let mut sig = loaded.unwrap_or_default();
    let parse_one = |text: &str, sig: &mut Signature| -> Result<Formula> {
        if strict {
            Ok(roughlogic::syntax::parse(text, sig)?)
        } else {
            Ok(parse_inferring(text, sig)?)
        }
    };
    let mut premises = Vec::new();
    for text in premise_texts {
        premises.push(parse_one(text, &mut sig)?);
    }
    let conclusion = parse_one(conclusion_text, &mut sig)?;

    match mode {
        ModeArg::Prop => match prop_consequence(&premises, &conclusion)? {
            PropVerdict::Valid => {
                println!("valid");
                Ok(PASS)
            }
            PropVerdict::Countermodel(v) => {
                println!("countermodel");
                for (atom, value) in &v {
                    println!("v({atom}) = {value}");
                }
                if let Some(path) = witness {
                    write_json(&path, &valuation_to_file(&v))?;
                }
                Ok(REFUTED)
            }
        },
        ModeArg::Bounded => {
            let guard = search_guard()?;
            match semantics {
                SemanticsArg::Rough => {
                    match rough_consequence_bounded_with_guard(
                        &premises,
                        &conclusion,
                        &sig,
                        max_universe,
                        guard,
                    )? {
                        RoughVerdict::Valid => {
                            println!("valid-up-to-bound({max_universe})");
                            Ok(PASS)
                        }
                        RoughVerdict::Countermodel(m) => {
                            let file = RoughModelFile::from_interpretation(&m);
                            println!("countermodel");
                            print!("{}", to_json_string(&file)?);
                            if let Some(path) = witness {
                                write_json(&path, &file)?;
                            }
                            Ok(REFUTED)
                        }
                    }
                }
                SemanticsArg::Kripke => {
                    match kripke_consequence_bounded_with_guard(
                        &premises,
                        &conclusion,
                        &sig,
                        max_universe,
                        guard,
                    )? {
                        KripkeVerdict::Valid => {
                            println!("valid-up-to-bound({max_universe})");
                            Ok(PASS)
                        }
                        KripkeVerdict::Countermodel(k) => {
                            let file = KripkeModelFile::from_model(&k);
                            println!("countermodel");
                            print!("{}", to_json_string(&file)?);
                            if let Some(path) = witness {
                                write_json(&path, &file)?;
                            }
                            Ok(REFUTED)
                        }
                    }
                }
            }
        }
    }
}
