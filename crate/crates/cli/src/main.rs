//! `rlie`: batch front end for restricted Lie algebra computations.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical failure, 2 on
//! unreadable or ill-formed input. A report is written in every case.

mod schema;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use restricted_lie::check::{DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_SEED};
use restricted_lie::crossed::{check_crossed_isomorphism, round_trip_isomorphism};
use restricted_lie::derivation::{beck_der, der, restricted_der, DerivationSpace};
use restricted_lie::extension::AbelianExtension;
use restricted_lie::long_exact::{eight_term, five_term, SequenceReport};
use restricted_lie::module::hom_w;
use restricted_lie::sequence::n_ab;
use restricted_lie::{CheckConfig, Report, RestrictedMorphism};
use serde_json::{json, Value};

use schema::{
    algebra_doc, build_extension, detect_kind, extension_doc, load, load_value, matrix_json, module_doc,
    AlgebraDoc, CrossedDoc, DocKind, ExtensionDoc, Loader, ModuleDoc, Ref, SequenceDoc, TwoFoldDoc,
};

#[derive(Parser)]
#[command(name = "rlie", version, about = "Restricted Lie algebras over F_p: verification and low-degree cohomology")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Element-quantified checks enumerate the space when p^n is at most this.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT, global = true)]
    exhaustive_limit: u64,
    /// Seed for sampled checks (decimal or 0x-prefixed hex).
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed, global = true)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify any input document (algebra, module, crossed module, sequence, extension, two-fold extension).
    Verify { input: PathBuf },
    /// Invariants of a module.
    Invariants { module: PathBuf },
    /// Restricted derivations of an algebra, or derivations into a module.
    Derivations { algebra: PathBuf, module: Option<PathBuf> },
    /// Beck derivations into a module, either over its own algebra or over the total algebra of a sequence.
    BeckDers {
        /// A module, or a sequence followed by a module over its base.
        first: PathBuf,
        second: Option<PathBuf>,
    },
    /// Homomorphisms of Beck modules.
    HomW { source: PathBuf, target: PathBuf },
    /// The Beck module N/<[N, N]>_p of a short exact sequence.
    Nab { sequence: PathBuf },
    /// Verify a crossed module.
    Crossed { crossed: PathBuf },
    /// Crossed module -> internal groupoid -> crossed module.
    GroupoidRoundtrip { crossed: PathBuf },
    /// Realise an abelian extension from cocycle data.
    ExtBuild { extension: PathBuf },
    /// Decide whether two abelian extensions are equivalent.
    ExtEquiv { first: PathBuf, second: PathBuf },
    /// Baer sum of two abelian extensions.
    BaerSum { first: PathBuf, second: PathBuf },
    /// Five-term sequence with per-node exactness verdicts.
    FiveTerm { sequence: PathBuf, module: PathBuf },
    /// Eight-term sequence with per-node exactness verdicts.
    EightTerm { sequence: PathBuf, module: PathBuf },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Invariants { .. } => "invariants",
            Command::Derivations { .. } => "derivations",
            Command::BeckDers { .. } => "beck-ders",
            Command::HomW { .. } => "hom-w",
            Command::Nab { .. } => "nab",
            Command::Crossed { .. } => "crossed",
            Command::GroupoidRoundtrip { .. } => "groupoid-roundtrip",
            Command::ExtBuild { .. } => "ext-build",
            Command::ExtEquiv { .. } => "ext-equiv",
            Command::BaerSum { .. } => "baer-sum",
            Command::FiveTerm { .. } => "five-term",
            Command::EightTerm { .. } => "eight-term",
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<restricted_lie::Error> for Failure {
    fn from(e: restricted_lie::Error) -> Self {
        Failure::Math(e.to_string())
    }
}

fn input<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Input)
}

struct Outcome {
    passed: bool,
    result: Value,
    text: String,
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn report_outcome(title: &str, report: Report, mut result: Value) -> Outcome {
    let passed = report.passed();
    let text = format!("{title}: {} ({})\n{report}", verdict(passed), report.mode());
    result["report"] = serde_json::to_value(&report).expect("reports serialise");
    Outcome { passed, result, text }
}

fn derivation_outcome(title: &str, d: &DerivationSpace) -> Outcome {
    let mut text = format!("{title}: dim {} ({})\n", d.dim(), d.mode());
    for (k, m) in d.basis().iter().enumerate() {
        let _ = writeln!(text, "basis {k}: {:?}", m.to_rows());
    }
    Outcome {
        passed: true,
        result: json!({
            "dim": d.dim(),
            "mode": d.mode(),
            "basis": d.basis().iter().map(matrix_json).collect::<Vec<_>>(),
        }),
        text,
    }
}

fn sequence_outcome(report: SequenceReport) -> Outcome {
    Outcome {
        passed: report.passed(),
        text: report.to_string(),
        result: serde_json::to_value(&report).expect("reports serialise"),
    }
}

fn load_module(path: &Path) -> Result<restricted_lie::module::BeckModule, Failure> {
    let doc: ModuleDoc = input(load(path))?;
    input(Loader::for_file(path).module(&Ref::Inline(doc)))
}

fn load_algebra(path: &Path) -> Result<restricted_lie::RestrictedLieAlgebra, Failure> {
    let doc: AlgebraDoc = input(load(path))?;
    input(Loader::for_file(path).algebra(&Ref::Inline(doc)))
}

fn load_sequence(path: &Path) -> Result<restricted_lie::sequence::ShortExactSequence, Failure> {
    let doc: SequenceDoc = input(load(path))?;
    input(Loader::for_file(path).sequence(&doc))
}

fn load_extension(path: &Path, cfg: &CheckConfig) -> Result<AbelianExtension, Failure> {
    let doc: ExtensionDoc = input(load(path))?;
    let (module, data) = input(Loader::for_file(path).extension_data(&doc))?;
    Ok(build_extension(&module, data, cfg)?)
}

fn verify(path: &Path, cfg: &CheckConfig) -> Result<Outcome, Failure> {
    let value = input(load_value(path))?;
    let loader = Loader::for_file(path);
    Ok(match detect_kind(&value) {
        DocKind::Algebra => {
            let l = input(loader.algebra(&Ref::Inline(input(load(path))?)))?;
            let result = json!({"kind": "algebra", "dim": l.dim(), "basis": l.labels()});
            report_outcome("restricted", l.verify_restricted(cfg), result)
        }
        DocKind::Module => {
            let b = input(loader.module(&Ref::Inline(input(load(path))?)))?;
            report_outcome("beck module", b.verify(cfg), json!({"kind": "module", "dim": b.dim()}))
        }
        DocKind::Crossed => {
            let doc: CrossedDoc = input(load(path))?;
            let x = input(loader.crossed(&doc))?;
            report_outcome("crossed module", x.verify(cfg), json!({"kind": "crossed"}))
        }
        DocKind::Sequence => {
            let doc: SequenceDoc = input(load(path))?;
            let seq = input(loader.sequence(&doc))?;
            report_outcome("short exact sequence", seq.verify(cfg), json!({"kind": "sequence"}))
        }
        DocKind::Extension => {
            let doc: ExtensionDoc = input(load(path))?;
            let (module, data) = input(loader.extension_data(&doc))?;
            match build_extension(&module, data, cfg) {
                Ok(e) => report_outcome("extension", e.verify(cfg), json!({"kind": "extension"})),
                Err(e) => Outcome {
                    passed: false,
                    text: format!("extension: FAIL\n{e}\n"),
                    result: json!({"kind": "extension", "error": e.to_string()}),
                },
            }
        }
        DocKind::TwoFold => {
            let doc: TwoFoldDoc = input(load(path))?;
            let x = input(loader.two_fold(&doc))?;
            report_outcome("two-fold extension", x.verify(cfg), json!({"kind": "two-fold"}))
        }
    })
}

fn run(command: &Command, cfg: &CheckConfig) -> Result<Outcome, Failure> {
    match command {
        Command::Verify { input } => verify(input, cfg),
        Command::Invariants { module } => {
            let b = load_module(module)?;
            let inv = b.module().invariants();
            let mut text = format!("invariants: dim {}\n", inv.dim());
            for v in inv.basis() {
                let _ = writeln!(text, "{v:?}");
            }
            let mut report = b.verify(cfg);
            report.checks.retain(|c| c.name == "f lands in invariants");
            let passed = report.passed();
            let _ = write!(text, "{report}");
            Ok(Outcome {
                passed,
                result: json!({"dim": inv.dim(), "basis": inv.basis(), "report": report}),
                text,
            })
        }
        Command::Derivations { algebra, module } => {
            let l = load_algebra(algebra)?;
            match module {
                None => Ok(derivation_outcome("restricted derivations", &restricted_der(&l, cfg))),
                Some(m) => {
                    let b = load_module(m)?;
                    if b.algebra() != &l {
                        return Err(Failure::Input("the module is over a different algebra".into()));
                    }
                    Ok(derivation_outcome("derivations", &der(&l, b.module())?))
                }
            }
        }
        Command::BeckDers { first, second } => {
            let (pi, b) = match second {
                None => {
                    let b = load_module(first)?;
                    (RestrictedMorphism::identity(b.algebra()), b)
                }
                Some(m) => {
                    let seq = load_sequence(first)?;
                    (seq.projection_morphism(), load_module(m)?)
                }
            };
            if pi.target() != b.algebra() {
                return Err(Failure::Input("the module is over a different algebra".into()));
            }
            Ok(derivation_outcome("beck derivations", &beck_der(&pi, &b, cfg)?))
        }
        Command::HomW { source, target } => {
            let (b1, b2) = (load_module(source)?, load_module(target)?);
            if b1.algebra() != b2.algebra() {
                return Err(Failure::Input("modules over different algebras".into()));
            }
            let h = hom_w(&b1, &b2)?;
            let mut text = format!("hom_w: dim {}\n", h.dim());
            for (k, m) in h.basis().iter().enumerate() {
                let _ = writeln!(text, "basis {k}: {:?}", m.to_rows());
            }
            Ok(Outcome {
                passed: true,
                result: json!({"dim": h.dim(), "basis": h.basis().iter().map(matrix_json).collect::<Vec<_>>()}),
                text,
            })
        }
        Command::Nab { sequence } => {
            let seq = load_sequence(sequence)?;
            let nab = n_ab(&seq, cfg)?;
            let text = format!(
                "N_ab: dim {} (N has dim {}, <[N, N]>_p has dim {})\n",
                nab.dim(),
                seq.kernel().dim(),
                nab.ideal.dim()
            );
            Ok(Outcome {
                passed: true,
                result: json!({
                    "dim": nab.dim(),
                    "ideal_dim": nab.ideal.dim(),
                    "module": serde_json::to_value(module_doc(&nab.module)).expect("documents serialise"),
                    "projection": matrix_json(nab.projection()),
                }),
                text,
            })
        }
        Command::Crossed { crossed } => {
            let doc: CrossedDoc = input(load(crossed))?;
            let x = input(Loader::for_file(crossed).crossed(&doc))?;
            Ok(report_outcome("crossed module", x.verify(cfg), json!({})))
        }
        Command::GroupoidRoundtrip { crossed } => {
            let doc: CrossedDoc = input(load(crossed))?;
            let x = input(Loader::for_file(crossed).crossed(&doc))?;
            let g = x.to_groupoid(cfg)?;
            let mut report = Report::new();
            report.absorb("groupoid", g.verify(cfg));
            let back = g.to_crossed_module(cfg)?;
            let (phi_m, phi_n) = round_trip_isomorphism(&x, &back)?;
            report.absorb("recovered", check_crossed_isomorphism(&x, &back, &phi_m, &phi_n, cfg)?);
            let result = json!({
                "arrows_dim": g.arrows().dim(),
                "objects_dim": g.objects().dim(),
                "phi_m": matrix_json(&phi_m),
                "phi_n": matrix_json(&phi_n),
            });
            Ok(report_outcome("groupoid round trip", report, result))
        }
        Command::ExtBuild { extension } => {
            let doc: ExtensionDoc = input(load(extension))?;
            let (module, data) = input(Loader::for_file(extension).extension_data(&doc))?;
            match build_extension(&module, data, cfg) {
                Ok(e) => {
                    let split = e.is_split(cfg)?;
                    let result = json!({
                        "algebra": serde_json::to_value(algebra_doc(e.algebra())).expect("documents serialise"),
                        "split": split,
                    });
                    let mut out = report_outcome("extension", e.verify(cfg), result);
                    out.text.push_str(&format!("split: {split}\n"));
                    Ok(out)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::ExtEquiv { first, second } => {
            let (e1, e2) = (load_extension(first, cfg)?, load_extension(second, cfg)?);
            let witness = e1.equivalence_to(&e2, cfg)?;
            let text = match &witness {
                Some(b) => format!("equivalent: yes\nwitness b: {:?}\n", b.to_rows()),
                None => "equivalent: no\n".to_string(),
            };
            Ok(Outcome {
                passed: witness.is_some(),
                result: json!({"equivalent": witness.is_some(), "witness": witness.as_ref().map(matrix_json)}),
                text,
            })
        }
        Command::BaerSum { first, second } => {
            let (e1, e2) = (load_extension(first, cfg)?, load_extension(second, cfg)?);
            let sum = e1.baer_sum(&e2, cfg)?;
            let doc = serde_json::to_value(extension_doc(&sum)).expect("documents serialise");
            let d = sum.data();
            let text = format!("baer sum: c = {:?}, omega = {:?}\n", d.c, d.omega);
            Ok(report_outcome("baer sum", sum.verify(cfg), json!({"extension": doc})).with_prefix(text))
        }
        Command::FiveTerm { sequence, module } => {
            let seq = load_sequence(sequence)?;
            let b = load_module(module)?;
            if b.algebra() != seq.base() {
                return Err(Failure::Input("the module is not over the base of the sequence".into()));
            }
            Ok(sequence_outcome(five_term(&seq, &b, cfg)?))
        }
        Command::EightTerm { sequence, module } => {
            let seq = load_sequence(sequence)?;
            let b = load_module(module)?;
            if b.algebra() != seq.base() {
                return Err(Failure::Input("the module is not over the base of the sequence".into()));
            }
            Ok(sequence_outcome(eight_term(&seq, &b, cfg)?))
        }
    }
}

impl Outcome {
    fn with_prefix(mut self, prefix: String) -> Self {
        self.text = prefix + &self.text;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = CheckConfig {
        exhaustive_limit: cli.exhaustive_limit,
        seed: cli.seed,
        ..CheckConfig::default()
    };
    let verb = cli.command.verb();
    let (code, doc, text) = match run(&cli.command, &cfg) {
        Ok(out) => (
            u8::from(!out.passed),
            json!({"command": verb, "passed": out.passed, "result": out.result}),
            out.text,
        ),
        Err(Failure::Input(msg)) => (
            2,
            json!({"command": verb, "passed": false, "error": {"kind": "input", "message": msg}}),
            format!("input error: {msg}\n"),
        ),
        Err(Failure::Math(msg)) => (
            1,
            json!({"command": verb, "passed": false, "error": {"kind": "mathematical", "message": msg}}),
            format!("FAIL: {msg}\n"),
        ),
    };
    if code == 2 && (cli.format == Format::Json || cli.output.is_some()) {
        eprint!("{text}");
    }
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("values serialise") + "\n",
        Format::Text => text,
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
