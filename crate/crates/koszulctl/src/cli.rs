use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use koszul_core::homology::{koszul_certificate, tor_table};
use koszul_core::hopf::{gmga_check, primitives, verify_shuffle_axioms, Coalgebra};
use koszul_core::milnor::{milnor_mod2, nonzero_steinberg_symbols, FieldSpec};
use koszul_core::quadratic::hilbert_product_check;
use koszul_core::tatecheck::{check_tate_type, check_vanishing_range, predict_heart_equivalence};
use koszul_core::weight::{fiber_functor, tensor_comodule, unipotence_check, validate, weight_filtration};
use koszul_core::{Error, Limits};

use crate::error::{CliError, ErrorKind};
use crate::formats::{ComoduleFile, HomTableFile, MilnorFile, PresentationFile, TorTableFile};
use crate::reports::*;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "koszulctl",
    version,
    about = "Quadratic algebras, Koszul certificates and friends over F_2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Highest degree to compute; also the degree cap.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quadratic dual presentation (V*, R^perp).
    Dual { presentation: PathBuf },
    /// Hilbert series of A, A^! and C, and the identity H_A(t) H_A!(-t) = 1.
    Hilbert { presentation: PathBuf },
    /// Bigraded Tor table of the reduced bar complex.
    Tor { presentation: PathBuf },
    /// Koszulity certificate up to --max-degree.
    KoszulCheck { presentation: PathBuf },
    /// Mod-2 Milnor K-theory of F_q (--q) or of explicit square-class data.
    Milnor {
        #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
        q: Option<u64>,
        spec: Option<PathBuf>,
    },
    /// Tate-type conditions and Beilinson-Soule vanishing on a hom table.
    TateCheck { table: PathBuf },
    /// Vanishing ranges for a variety of dimension --d.
    VanishCheck {
        /// Overrides the table's own "d".
        #[arg(long)]
        d: Option<u64>,
        table: PathBuf,
    },
    /// Hom table versus presentation, then Koszulity.
    Predict { presentation: PathBuf, table: PathBuf },
    /// Shuffle bialgebra axioms and primitive elements.
    HopfVerify {
        /// Number of letters; defaults to the presentation's, else 2.
        #[arg(long)]
        dim: Option<usize>,
        /// Also compute primitives of C(V, R) for this presentation.
        presentation: Option<PathBuf>,
    },
    /// Divided powers on a line against F_2[y_1, y_2, y_4, ...]/(squares).
    Gmga,
    /// Validate a comodule, or the tensor product of two.
    Comodule { first: PathBuf, second: Option<PathBuf> },
}

/// A finished report: what to print and whether the check passed.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, passed: bool) -> Self {
        let mut json = serde_json::to_value(report).expect("reports serialize");
        if let Value::Object(map) = &mut json {
            map.insert("tool_version".into(), Value::String(TOOL_VERSION.into()));
        }
        Outcome { json, text, passed }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, &e))?;
    serde_json::from_str(&text).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let n = cli.max_degree;
    let limits = Limits::with_max_degree(n);
    let presentation = |p: &Path| read_json::<PresentationFile>(p)?.to_presentation();

    Ok(match &cli.command {
        Command::Dual { presentation: p } => {
            let report = DualReport::new(&presentation(p)?.dual());
            Outcome::new(&report, report.text(), true)
        }
        Command::Hilbert { presentation: p } => {
            let q = presentation(p)?;
            let check = hilbert_product_check(&q, n, &limits)?;
            let report = HilbertReport::new(
                &check,
                q.algebra_dims(n, &limits)?.as_slice(),
                q.dual().algebra_dims(n, &limits)?.as_slice(),
                q.coalgebra_dims(n, &limits)?.as_slice(),
            );
            Outcome::new(&report, report.text(), report.passed)
        }
        Command::Tor { presentation: p } => {
            let t = tor_table(&presentation(p)?, n, &limits)?;
            let report = TorReport {
                max_degree: n,
                table: TorTableFile::from_table(&t),
            };
            Outcome::new(&report, report.text(), true)
        }
        Command::KoszulCheck { presentation: p } => {
            let report = KoszulReport::new(&koszul_certificate(&presentation(p)?, n, &limits)?);
            Outcome::new(&report, report.text(), report.positive)
        }
        Command::Milnor { q, spec } => {
            let field = match (q, spec) {
                (Some(q), _) => FieldSpec::FiniteField { q: *q },
                (None, Some(path)) => read_json::<MilnorFile>(path)?.to_spec()?,
                (None, None) => unreachable!("clap requires one of --q and a spec file"),
            };
            let r = milnor_mod2(&field, n, &limits)?;
            let report = MilnorReport {
                q: *q,
                steinberg_symbols: q.map(nonzero_steinberg_symbols).transpose()?,
                dims: r.dims.as_slice().to_vec(),
                presentation: PresentationFile::from_presentation(&r.presentation),
                koszul: KoszulReport::new(&r.koszul),
            };
            Outcome::new(&report, report.text(), report.koszul.positive)
        }
        Command::TateCheck { table } => {
            let t = read_json::<HomTableFile>(table)?.to_table()?;
            let report = TateCheckReport::new(&check_tate_type(&t));
            Outcome::new(&report, report.text(), report.passed)
        }
        Command::VanishCheck { d, table } => {
            let t = read_json::<HomTableFile>(table)?.to_table()?;
            let d = d.or(t.d).ok_or_else(|| {
                CliError::input("no variety dimension: pass --d or set \"d\" in the table".to_string())
            })?;
            let report = VanishCheckReport::new(&check_vanishing_range(&t, d));
            Outcome::new(&report, report.text(), report.passed)
        }
        Command::Predict { presentation: p, table } => {
            let q = presentation(p)?;
            let t = read_json::<HomTableFile>(table)?.to_table()?;
            let report = match predict_heart_equivalence(&q, &t, n, &limits) {
                Ok(prediction) => PredictReport::new(&prediction),
                Err(Error::HilbertMismatch { degree, table, algebra }) => {
                    PredictReport::mismatch(n, HilbertMismatch { degree, table, algebra })
                }
                Err(e) => return Err(e.into()),
            };
            Outcome::new(&report, report.text(), report.predicted)
        }
        Command::HopfVerify { dim, presentation: p } => {
            let q = p.as_deref().map(presentation).transpose()?;
            let dim = dim.or(q.as_ref().map(|q| q.dim_v())).unwrap_or(2);
            // the sweep enumerates words of every length up to n
            limits.ambient(dim, n)?;
            let axioms = verify_shuffle_axioms(dim, n);
            let prim = |c: &Coalgebra| -> Result<Vec<usize>, CliError> {
                (1..=n).map(|k| Ok(primitives(c, k, &limits)?.dim())).collect()
            };
            let tensor = prim(&Coalgebra::Tensor { dim })?;
            let divided_power = prim(&Coalgebra::DividedPower { dim })?;
            let quadratic = q.clone().map(|q| prim(&Coalgebra::Quadratic(q))).transpose()?;
            let concentrated =
                |v: &[usize], d1: usize| v.first().is_none_or(|&p| p == d1) && v.iter().skip(1).all(|&p| p == 0);
            let primitives_in_degree_one = concentrated(&tensor, dim)
                && concentrated(&divided_power, dim)
                && q.as_ref()
                    .zip(quadratic.as_deref())
                    .is_none_or(|(q, v)| concentrated(v, q.dim_v()));
            let report = HopfReport {
                dim,
                max_length: n,
                passed: axioms.passed() && primitives_in_degree_one,
                shuffle: ShuffleSummary::new(&axioms),
                primitives: PrimitiveDims {
                    tensor,
                    divided_power,
                    quadratic,
                },
                primitives_in_degree_one,
            };
            Outcome::new(&report, report.text(), report.passed)
        }
        Command::Gmga => {
            let report = GmgaFile::new(&gmga_check(n));
            Outcome::new(&report, report.text(), report.passed)
        }
        Command::Comodule { first, second } => {
            let load = |p: &Path| read_json::<ComoduleFile>(p)?.to_comodule();
            let m1 = load(first)?;
            let (m, tensor) = match second {
                None => (m1, None),
                Some(path) => {
                    let m2 = load(path)?;
                    for (m, path) in [(&m1, first), (&m2, path)] {
                        let v = validate(m, &limits)?;
                        if !v.passed() {
                            let report = ComoduleCheckReport::new(m, &v, &unipotence_check(m), None, None);
                            let text = format!("{}: factor is not a valid comodule\n{}", path.display(), report.text());
                            return Ok(Outcome::new(&report, text, false));
                        }
                    }
                    let product = match tensor_comodule(&m1, &m2, &limits) {
                        Err(Error::CoalgebraMismatch) => {
                            return Err(CliError::input(
                                "the two comodules are over different coalgebras".to_string(),
                            ))
                        }
                        other => other?,
                    };
                    let file = ComoduleFile::from_comodule(&product);
                    (product, Some(file))
                }
            };
            let validation = validate(&m, &limits)?;
            let (filtration, fiber) = if validation.passed() {
                let fiber = fiber_functor(&m, &limits)?
                    .into_iter()
                    .map(|(weight, dim)| FiberEntry { weight, dim })
                    .collect();
                (Some(weight_filtration(&m, &limits)?), Some(fiber))
            } else {
                (None, None)
            };
            let mut report =
                ComoduleCheckReport::new(&m, &validation, &unipotence_check(&m), filtration.as_ref(), fiber);
            report.tensor = tensor;
            Outcome::new(&report, report.text(), report.passed)
        }
    })
}

/// Parses `args`, runs the command, writes the report and returns the exit
/// code: 0 pass, 1 check failure, 2 malformed input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let rendered = outcome.render(cli.format);
    let written = match &cli.output {
        Some(path) => fs::write(path, rendered).map_err(|e| CliError::io(path, &e)),
        None => std::io::stdout()
            .lock()
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::new(ErrorKind::Io, format!("stdout: {e}"))),
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        1
    }
}
