//! The `k3chow` command line.
//!
//! Exit statuses: 0 success, 1 verification mismatch, 2 usage error,
//! 3 internal-consistency failure.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::char_classes::{Multidegree, SplitBundle};
use crate::chow_ring::AmbientSpace;
use crate::error::Error;
use crate::k3_families::{
    check_k3, family_for_genus, restricted_pairing, search_families_in, verify_paper, FamilySpec,
    SearchScope, VerificationReport,
};
use crate::render;
use crate::riemann_roch::{
    euler_char_ambient, euler_char_ambient_closed, euler_char_ci, k3_riemann_roch_h0,
    CompleteIntersection, SectionCount,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Tex,
}

#[derive(Debug, Parser)]
#[command(
    name = "k3chow",
    version,
    about = "Intersection theory for complete-intersection K3 families"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute the three reference constructions and compare with the printed values.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        /// Treat known misprints as failures.
        #[arg(long)]
        strict: bool,
    },
    /// The reference family of a given genus, with its full report.
    Family {
        #[arg(long)]
        genus: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Euler characteristics of a twist on the ambient and on a complete intersection.
    Chi {
        /// Factor dimensions, e.g. `1,3`.
        #[arg(long, allow_hyphen_values = true)]
        ambient: String,
        /// Split bundle, e.g. `1,1;1,3`.
        #[arg(long, allow_hyphen_values = true)]
        bundle: Option<String>,
        /// Multidegree of the twist, e.g. `1,1`.
        #[arg(long, allow_hyphen_values = true)]
        twist: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Enumerate K3 families of a given genus.
    Search {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        max_deg: i64,
        /// Also search `P^m x P^n` with `m > 1`.
        #[arg(long)]
        all_products: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

/// Result of the `chi` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiReport {
    pub ambient: AmbientSpace,
    pub bundle: Option<SplitBundle>,
    pub twist: Multidegree,
    pub ambient_hrr: i64,
    pub ambient_binomial: i64,
    pub koszul: Option<SectionCount>,
    pub k3_riemann_roch: Option<i64>,
    pub oracles: Vec<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: format!("INTERNAL: {}", message.into()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Overflow(_) => Failure::internal(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::VerifyPaper { format, strict } => cmd_verify_paper(format, strict, out, err),
        Command::Family { genus, format } => cmd_family(genus, format, out, err),
        Command::Chi {
            ambient,
            bundle,
            twist,
            format,
        } => cmd_chi(&ambient, bundle.as_deref(), &twist, format, out),
        Command::Search {
            genus,
            max_n,
            max_deg,
            all_products,
            format,
        } => {
            let scope = if all_products {
                SearchScope::TwoFactorProducts
            } else {
                SearchScope::LineTimesProjective
            };
            cmd_search(genus, max_n, max_deg, scope, format, out)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::internal(format!("writing output: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::internal(format!("serializing: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn render_reports(reports: &[VerificationReport], format: OutputFormat) -> Result<String, Failure> {
    match format {
        OutputFormat::Text => Ok(render::reports_text(reports)),
        OutputFormat::Json => to_json(&reports),
        OutputFormat::Tex => Ok(render::reports_tex(reports)),
    }
}

fn cmd_verify_paper(
    format: OutputFormat,
    strict: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let reports = verify_paper()?;
    emit(out, &render_reports(&reports, format)?)?;
    let mut failures = Vec::new();
    for r in &reports {
        if !r.certificate.passed {
            failures.push(format!("{}: certificate does not pass", r.case()));
        }
        for d in &r.discrepancies {
            if strict || !d.is_known() {
                failures.push(format!(
                    "{}: printed {} != computed {}",
                    d.location, d.paper_value, d.computed_value
                ));
            }
        }
    }
    if failures.is_empty() {
        return Ok(EXIT_OK);
    }
    for f in &failures {
        let _ = writeln!(err, "MISMATCH {f}");
    }
    Ok(EXIT_MISMATCH)
}

fn cmd_family(
    genus: i64,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let spec = family_for_genus(genus)?;
    let report = VerificationReport::build(&spec)?;
    let text = match format {
        OutputFormat::Text => render::report_text(&report),
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Tex => render::reports_tex(std::slice::from_ref(&report)),
    };
    emit(out, &text)?;
    let mut failures = Vec::new();
    if report.genus != genus {
        failures.push(format!("genus {} != requested {genus}", report.genus));
    }
    if report.moduli_dim != 18 {
        failures.push(format!("moduli dimension {} != 18", report.moduli_dim));
    }
    if !report.certificate.passed {
        failures.push("certificate does not pass".to_string());
    }
    for f in &failures {
        let _ = writeln!(err, "MISMATCH {f}");
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn parse_ambient(s: &str) -> Result<AmbientSpace, Failure> {
    let dims = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| Failure::usage(format!("cannot parse factor dimension from {tok:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AmbientSpace::new(&dims)?)
}

pub fn chi_report(
    ambient: &AmbientSpace,
    bundle: Option<&SplitBundle>,
    twist: &Multidegree,
) -> crate::error::Result<ChiReport> {
    twist.check_on(ambient)?;
    let ambient_hrr = euler_char_ambient(ambient, twist)?;
    let ambient_binomial = euler_char_ambient_closed(ambient, twist)?;
    if ambient_hrr != ambient_binomial {
        return Err(Error::Internal(format!(
            "HRR gives {ambient_hrr} but the binomial product gives {ambient_binomial}"
        )));
    }
    let mut oracles = vec![
        "hirzebruch-riemann-roch".to_string(),
        "binomial-product".to_string(),
    ];
    let mut koszul = None;
    let mut k3_rr = None;
    if let Some(bundle) = bundle {
        let s = CompleteIntersection::new(ambient.clone(), bundle.clone())?;
        let chi = euler_char_ci(&s, twist)?;
        koszul = Some(SectionCount::from_chi(twist.clone(), chi));
        oracles.push("koszul".to_string());
        if check_k3(ambient, bundle).passed {
            let pairing = restricted_pairing(ambient, bundle)?;
            let rr = k3_riemann_roch_h0(&s, twist, &pairing)?;
            if rr != chi {
                return Err(Error::Internal(format!(
                    "Koszul gives {chi} but K3 Riemann-Roch gives {rr}"
                )));
            }
            k3_rr = Some(rr);
            oracles.push("k3-riemann-roch".to_string());
        }
    }
    Ok(ChiReport {
        ambient: ambient.clone(),
        bundle: bundle.cloned(),
        twist: twist.clone(),
        ambient_hrr,
        ambient_binomial,
        koszul,
        k3_riemann_roch: k3_rr,
        oracles,
    })
}

fn chi_text(r: &ChiReport) -> String {
    let mut out = String::new();
    let t = r.twist.sheaf_label();
    let ts = format!("O_S({})", r.twist);
    out.push_str(&format!("ambient: {}\n", r.ambient));
    out.push_str(&format!(
        "chi(P, {t}) hirzebruch-riemann-roch: {}\n",
        r.ambient_hrr
    ));
    out.push_str(&format!(
        "chi(P, {t}) binomial-product: {}\n",
        r.ambient_binomial
    ));
    if let Some(b) = &r.bundle {
        out.push_str(&format!("bundle: {}\n", b.sheaf_label()));
    }
    if let Some(k) = &r.koszul {
        out.push_str(&format!("chi(S, {ts}) koszul: {}\n", k.chi));
        if k.vanishing_assumed {
            out.push_str("  read as h^0 assuming higher cohomology vanishes\n");
        }
    }
    match (&r.bundle, r.k3_riemann_roch) {
        (_, Some(v)) => out.push_str(&format!("h^0(S, {ts}) k3-riemann-roch: {v}\n")),
        (Some(_), None) => out.push_str("k3-riemann-roch: not applicable (K3 condition fails)\n"),
        (None, None) => {}
    }
    out.push_str(&format!("oracles: {}\n", r.oracles.join(", ")));
    out
}

fn chi_tex(r: &ChiReport) -> String {
    let mut rows = vec![
        format!("HRR on $P$ & ${}$ \\\\", r.ambient_hrr),
        format!("binomial product on $P$ & ${}$ \\\\", r.ambient_binomial),
    ];
    if let Some(k) = &r.koszul {
        rows.push(format!("Koszul on $S$ & ${}$ \\\\", k.chi));
    }
    if let Some(v) = r.k3_riemann_roch {
        rows.push(format!("K3 Riemann--Roch on $S$ & ${v}$ \\\\"));
    }
    format!(
        "\\begin{{tabular}}{{ll}}\nmethod & $\\chi(\\mathcal{{O}}({}))$ \\\\\n\\hline\n{}\n\\end{{tabular}}\n",
        r.twist,
        rows.join("\n")
    )
}

fn cmd_chi(
    ambient: &str,
    bundle: Option<&str>,
    twist: &str,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let ambient = parse_ambient(ambient)?;
    let bundle = bundle.map(|b| b.parse::<SplitBundle>()).transpose()?;
    let twist: Multidegree = twist.parse()?;
    let report = chi_report(&ambient, bundle.as_ref(), &twist)?;
    let text = match format {
        OutputFormat::Text => chi_text(&report),
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Tex => chi_tex(&report),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_search(
    genus: i64,
    max_n: u32,
    max_deg: i64,
    scope: SearchScope,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if genus < 2 {
        return Err(Failure::usage(format!("genus {genus} must be >= 2")));
    }
    if max_n < 1 || max_deg < 1 {
        return Err(Failure::usage("bounds --max-n and --max-deg must be >= 1"));
    }
    let found: Vec<FamilySpec> = search_families_in(scope, genus, max_n, max_deg);
    let text = match format {
        OutputFormat::Text if found.is_empty() => "none found\n".to_string(),
        OutputFormat::Text => {
            let mut s = String::new();
            for f in &found {
                s.push_str(&render::family_line(f));
                s.push('\n');
            }
            s
        }
        OutputFormat::Json => to_json(&found)?,
        OutputFormat::Tex => render::families_tex(&found),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}
