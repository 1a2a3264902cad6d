//! Command-line front end. Exit codes: `0` when every condition passes, `1`
//! when some condition fails, `2` on input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::breen::{mapping_space_pi_i, MappingKind};
use crate::cplx::{check_mhc, spectral_sequence, stable_page, FilteredComplex};
use crate::error::{Error, Result};
use crate::io::{read_file, ComplexJson, FilteredJson, MhsJson, ModuleJson, VarietyJson};
use crate::mhs::check_shifted_mhs;
use crate::namhs::{build_sphere_namhs, deligne_shift, verify_computation, verify_constr};
use crate::rees::{annihilator_chain, check_a1_module, filtration_at_one, rees_of_filtration};
use crate::report::{push_a1, push_mhc, push_shift, push_truncated, shift_entry_json, ConditionReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Filtration {
    #[value(name = "W")]
    W,
    #[value(name = "F")]
    F,
}

#[derive(Debug, Parser)]
#[command(name = "rees-hodge", version, about = "Exact checks for filtered objects and mixed Hodge structures")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a pre-structure is an s-shifted mixed Hodge structure.
    CheckMhs {
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        shift: i64,
    },
    /// Check conditions Str and MHC on a complex.
    CheckMhc {
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        shift: i64,
    },
    /// Pages of the spectral sequence of the weight or Hodge filtration.
    Spectral {
        file: PathBuf,
        #[arg(long, value_enum, ignore_case = true)]
        filtration: Filtration,
        /// Last page to compute; defaults to the page where the sequence is stable.
        #[arg(long)]
        pages: Option<usize>,
    },
    /// Conversions between filtrations and graded modules.
    Rees {
        #[command(subcommand)]
        action: ReesAction,
    },
    /// Homotopy groups of mapping spaces between Eilenberg–MacLane objects.
    Breen {
        #[arg(long)]
        m: i64,
        #[arg(long = "mprime")]
        m_prime: i64,
        u_file: PathBuf,
        u_prime_file: PathBuf,
        #[arg(long = "pi", default_value_t = 0)]
        pi: i64,
    },
    /// The two-sphere example.
    Sphere {
        #[command(subcommand)]
        action: SphereAction,
    },
    /// Verify the mapping object from a variety into the two-sphere example.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// Solve h = w - i given two of the three, e.g. `--given h=-4,i=3`.
    Shift {
        #[arg(long)]
        given: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReesAction {
    /// Filtration JSON to graded module JSON.
    ToModule { file: PathBuf },
    /// Graded module JSON to filtration JSON, in the standard frame.
    ToFiltration { file: PathBuf },
    /// The chain Ann(t^m) of a graded module.
    Annihilators {
        file: PathBuf,
        #[arg(long)]
        max: Option<u32>,
    },
    /// Condition A1 for a graded module.
    A1 { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SphereAction {
    Build,
    Verify,
}

/// Output of a subcommand: a condition report or plain data.
enum Outcome {
    Report(ConditionReport),
    Data(Value),
}

fn run(command: &Command) -> Result<Outcome> {
    Ok(match command {
        Command::CheckMhs { file, shift } => {
            let h = read_file::<MhsJson>(file)?.build()?;
            let mut r = ConditionReport::new(file.display().to_string());
            push_shift(&mut r, "shifted-mhs", &check_shifted_mhs(&h, *shift));
            Outcome::Report(r)
        }
        Command::CheckMhc { file, shift } => {
            let c = read_file::<ComplexJson>(file)?.build()?;
            let mut r = ConditionReport::new(file.display().to_string());
            push_mhc(&mut r, "", &check_mhc(&c, *shift));
            Outcome::Report(r)
        }
        Command::Spectral { file, filtration, pages } => {
            let c = read_file::<ComplexJson>(file)?.build()?;
            let fc: FilteredComplex = match filtration {
                Filtration::W => c.weight_complex(),
                Filtration::F => c.hodge_complex(),
            };
            let r_max = pages.unwrap_or_else(|| stable_page(&fc).max(1));
            let pages: Vec<Value> = spectral_sequence(&fc, r_max)
                .iter()
                .map(|p| {
                    json!({
                        "r": p.r,
                        "dims": p.dims.iter().map(|((k, j), d)| json!({ "index": k, "degree": j, "dim": d })).collect::<Vec<_>>(),
                        "nonzero_differentials": p.differentials.iter().filter(|d| !d.matrix.is_zero())
                            .map(|d| json!({ "from": [d.from.0, d.from.1], "to": [d.to.0, d.to.1], "rank": d.matrix.rank() }))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let cohomology: Vec<Value> = fc.degrees().map(|j| json!({ "degree": j, "dim": fc.cohomology_dim(j) })).collect();
            Outcome::Data(json!({ "pages": pages, "cohomology": cohomology }))
        }
        Command::Rees { action } => match action {
            ReesAction::ToModule { file } => {
                let f = read_file::<FilteredJson>(file)?.build()?;
                Outcome::Data(serde_json::to_value(ModuleJson::from(&rees_of_filtration(&f).module()))?)
            }
            ReesAction::ToFiltration { file } => {
                let m = read_file::<ModuleJson>(file)?.build()?;
                if !m.is_torsion_free() {
                    return Err(Error::InvalidInput("a module with t-torsion is not the Rees module of a filtration".into()));
                }
                Outcome::Data(serde_json::to_value(FilteredJson::from(&filtration_at_one(&m.standard_frame())))?)
            }
            ReesAction::Annihilators { file, max } => {
                let m = read_file::<ModuleJson>(file)?.build()?;
                let m_max = max.unwrap_or(m.max_exponent() + 1).max(1);
                let chain: Vec<Value> = annihilator_chain(&m, m_max)
                    .iter()
                    .map(|s| json!({ "m": s.m, "dim": s.subspace.dim(), "graded_dims": s.graded_dims }))
                    .collect();
                Outcome::Data(json!({ "chain": chain }))
            }
            ReesAction::A1 { file } => {
                let m = read_file::<ModuleJson>(file)?.build()?;
                let mut r = ConditionReport::new(file.display().to_string());
                push_a1(&mut r, "A1", &check_a1_module(&m));
                Outcome::Report(r)
            }
        },
        Command::Breen { m, m_prime, u_file, u_prime_file, pi } => {
            let u = read_file::<MhsJson>(u_file)?.build()?;
            let up = read_file::<MhsJson>(u_prime_file)?.build()?;
            let res = mapping_space_pi_i(&u, *m, &up, *m_prime, *pi)?;
            Outcome::Data(json!({
                "kind": res.kind.name(),
                "m": res.m,
                "m_prime": res.m_prime,
                "pi": pi,
                "d": res.d,
                "power": format!("{:?}", res.power),
                "dim": res.dim(),
                "basis": res.basis.iter().map(|b| b.row_vectors()).collect::<Vec<_>>(),
                "ext": res.ext.as_ref().filter(|_| res.kind == MappingKind::ExtGroup)
                    .map(|e| json!({ "w0": e.w0, "f0w0": e.f0w0, "real_f0w0": e.real_f0w0 })),
            }))
        }
        Command::Sphere { action } => {
            let s = build_sphere_namhs()?;
            match action {
                SphereAction::Build => Outcome::Data(json!({
                    "U": MhsJson::from(&s.u),
                    "U_prime": MhsJson::from(&s.u_prime),
                    "U_prime_twist": MhsJson::from(&s.u_prime_twist),
                    "Q_prime": s.q_prime.row_vectors(),
                    "Q": s.q.row_vectors(),
                })),
                SphereAction::Verify => {
                    let c = verify_constr(&s)?;
                    let mut r = ConditionReport::new("sphere");
                    push_shift(&mut r, "shifted-mhs U", &c.u_shifted);
                    push_shift(&mut r, "shifted-mhs U'", &c.u_prime_shifted);
                    push_mhc(&mut r, "U[2]+U'[3] ", &c.graded);
                    r.push("U'[4] fails MHC", !c.u_prime_4.passes(), json!("U'[4] unexpectedly passes at shift 0"), json!({ "shift": 0 }));
                    push_mhc(&mut r, "U'[4] ", &c.u_prime_4_shift1);
                    push_mhc(&mut r, "U'(-D)[4] ", &c.twisted_4);
                    for (k, t) in &c.truncations {
                        push_truncated(&mut r, &format!("loop {k} "), t);
                    }
                    r.push("Q nonzero", c.q_prime_nonzero, Value::Null, Value::Null);
                    r.push("Q zero on Gr", c.q_vanishes_on_graded && c.inclusion_vanishes_on_graded, Value::Null, Value::Null);
                    Outcome::Report(r)
                }
            }
        }
        Command::Cohomology { file, dmax } => {
            let x = read_file::<VarietyJson>(file)?.build()?;
            let c = verify_computation(&x, *dmax)?;
            let mut r = ConditionReport::new(file.display().to_string());
            r.metadata.d_max = Some(c.d_max);
            for (name, ok) in c.conditions() {
                let witness = match name {
                    "A3" => crate::report::sub_mhs_json(&c.a3),
                    "MHC" | "Str" => json!(c.mhc_reports.iter().filter(|(_, m)| !m.passes()).map(|(n, _)| n).collect::<Vec<_>>()),
                    _ => Value::Null,
                };
                r.push(name, ok, witness, Value::Null);
            }
            let chain: Vec<Value> = c
                .annihilators
                .chain
                .iter()
                .map(|pieces| {
                    json!(pieces
                        .iter()
                        .filter(|p| p.dim > 0)
                        .map(|p| json!({ "m": p.m, "t_degree": p.t_degree, "x_degree": p.x_degree, "dim": p.dim }))
                        .collect::<Vec<_>>())
                })
                .collect();
            r.details = json!({
                "generators": c.ideal.generators.iter().map(|(e, q)| json!({ "e": e, "q": q.to_string() })).collect::<Vec<_>>(),
                "annihilator_chain": chain,
                "degree2_matches_cup": c.degree2_matches_cup,
                "H0E_is_mhs": c.pre.h0e_is_mhs.passes(),
                "H0F_is_1_shifted": c.pre.h0f_shift1.passes(),
                "H0F_failures_at_0": check_shifted_mhs(&c.pre.structures.h0f, 0).failures().into_iter().map(shift_entry_json).collect::<Vec<_>>(),
            });
            Outcome::Report(r)
        }
        Command::Shift { given } => {
            let (mut h, mut w, mut i) = (None, None, None);
            for part in given.split(',').filter(|p| !p.trim().is_empty()) {
                let (key, value) =
                    part.split_once('=').ok_or_else(|| Error::InvalidInput(format!("expected key=value, found {part:?}")))?;
                let value: i64 = value.trim().parse().map_err(|_| Error::InvalidInput(format!("{value:?} is not an integer")))?;
                let slot = match key.trim() {
                    "h" => &mut h,
                    "w" => &mut w,
                    "i" => &mut i,
                    other => return Err(Error::InvalidInput(format!("unknown key {other:?}; use h, w or i"))),
                };
                if slot.replace(value).is_some() {
                    return Err(Error::InvalidInput(format!("{key} given twice")));
                }
            }
            let (h, w, i) = deligne_shift(h, w, i)?;
            Outcome::Data(json!({ "h": h, "w": w, "i": i }))
        }
    })
}

fn render_data(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Text => match v {
            Value::Object(map) => map.iter().map(|(k, x)| format!("{k}: {x}")).collect::<Vec<_>>().join("\n"),
            other => other.to_string(),
        },
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn dispatch_to<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match run(&cli.command) {
        Ok(Outcome::Report(r)) => {
            let text = match cli.format {
                Format::Json => r.to_json(),
                Format::Text => r.to_text(),
            };
            let _ = writeln!(out, "{text}");
            r.exit_code()
        }
        Ok(Outcome::Data(v)) => {
            let _ = writeln!(out, "{}", render_data(&v, cli.format));
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    dispatch_to(argv, &mut std::io::stdout(), &mut std::io::stderr())
}
