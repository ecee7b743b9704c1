//! Human-readable renderings of reports. JSON output goes through serde.

use std::fmt::Write;

use crate::k3_families::{CheckResult, FamilySpec, VerificationReport};

fn matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(i64::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn family_title(f: &FamilySpec) -> String {
    let label = match &f.label {
        Some(l) => format!("{}: ", l.case),
        None => String::new(),
    };
    format!(
        "{label}{}, E = {}, L = {}",
        f.ambient,
        f.bundle.sheaf_label(),
        f.polarization.sheaf_label()
    )
}

/// One line per family, for search results.
pub fn family_line(f: &FamilySpec) -> String {
    family_title(f)
}

fn check_line(out: &mut String, name: &str, check: &CheckResult) {
    let _ = writeln!(
        out,
        "    {name}: {} ({})",
        status(check.passed),
        check.detail
    );
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", family_title(&r.family));
    if let Some(label) = &r.family.label {
        if !label.description.is_empty() {
            let _ = writeln!(out, "  surfaces: {}", label.description);
        }
    }
    let _ = writeln!(
        out,
        "  genus: {} (g = {}), degree 2g-2 = {}",
        r.genus, r.degree_formula, r.degree
    );
    let _ = writeln!(
        out,
        "  fundamental class [S]: {}",
        r.pairing.fundamental_class()
    );
    let _ = writeln!(out, "  picard lattice: {}", matrix(&r.picard_lattice));
    let addends: Vec<String> = r
        .h0_normal
        .terms
        .iter()
        .map(|t| {
            let flag = if t.vanishing_assumed {
                ", vanishing assumed"
            } else {
                ""
            };
            format!("O_S({}): {}{flag}", t.twist, t.chi)
        })
        .collect();
    let _ = writeln!(
        out,
        "  h^0(N_S/P) = {} [{}]",
        r.h0_normal.total,
        addends.join("; ")
    );
    let _ = writeln!(out, "  h^0(T_P|S) = {}", r.h0_tangent);
    let _ = writeln!(out, "  moduli dimension = {}", r.moduli_dim);
    let c = &r.certificate;
    let _ = writeln!(out, "  certificate: {}", status(c.passed));
    check_line(&mut out, "k3 condition", &c.k3_condition);
    check_line(&mut out, "global generation", &c.global_generation);
    check_line(&mut out, "m_P surjective", &c.mp_surjective);
    for a in &c.assumptions {
        let _ = writeln!(out, "    assumed: {a}");
    }
    if r.discrepancies.is_empty() {
        let _ = writeln!(out, "  discrepancies: none");
    } else {
        let _ = writeln!(out, "  discrepancies:");
        for d in &r.discrepancies {
            let _ = writeln!(
                out,
                "    {}: printed {}, computed {}{}",
                d.location,
                d.paper_value,
                d.computed_value,
                if d.is_known() {
                    " (known misprint)"
                } else {
                    ""
                }
            );
        }
    }
    out
}

fn joined<T, F: Fn(&VerificationReport) -> T>(reports: &[VerificationReport], f: F) -> String
where
    T: ToString,
{
    reports
        .iter()
        .map(|r| f(r).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Full text for several reports, with a warning block for discrepancies and
/// a closing summary.
pub fn reports_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&report_text(r));
        out.push('\n');
    }
    let discrepancies: Vec<_> = reports.iter().flat_map(|r| &r.discrepancies).collect();
    if !discrepancies.is_empty() {
        let _ = writeln!(out, "WARNING: printed values differ from computed values");
        for d in discrepancies {
            let _ = writeln!(
                out,
                "  {}: printed {}, computed {}",
                d.location, d.paper_value, d.computed_value
            );
        }
        out.push('\n');
    }
    let _ = writeln!(out, "summary");
    let _ = writeln!(
        out,
        "  genus formula: {}",
        joined(reports, |r| r.degree_formula)
    );
    let _ = writeln!(
        out,
        "  picard lattice: {}",
        joined(reports, |r| matrix(&r.picard_lattice))
    );
    let _ = writeln!(
        out,
        "  h^0(N_S/P): {}",
        joined(reports, |r| r.h0_normal.total)
    );
    let _ = writeln!(out, "  h^0(T_P|S): {}", joined(reports, |r| r.h0_tangent));
    let _ = writeln!(
        out,
        "  moduli dimension: {}",
        joined(reports, |r| r.moduli_dim)
    );
    out
}

fn tex_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" & "))
        .collect();
    format!(
        "$\\begin{{pmatrix}} {} \\end{{pmatrix}}$",
        rows.join(" \\\\ ")
    )
}

fn tex_ambient(f: &FamilySpec) -> String {
    let factors: Vec<String> = f
        .ambient
        .dims()
        .iter()
        .map(|m| format!("\\mathbb{{P}}^{{{m}}}"))
        .collect();
    format!("${}$", factors.join("\\times "))
}

fn tex_bundle(f: &FamilySpec) -> String {
    let summands: Vec<String> = f
        .bundle
        .summands()
        .iter()
        .map(|s| format!("\\mathcal{{O}}({s})"))
        .collect();
    format!("${}$", summands.join("\\oplus "))
}

/// A `tabular` fragment with one row per report.
pub fn reports_tex(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{llllllll}\n");
    out.push_str(
        "Case & $P$ & $E$ & $g(a)$ & $\\mathrm{Pic}(S)$ & $h^0(N_{S/P})$ & $h^0(T_{P|S})$ & moduli \\\\\n",
    );
    out.push_str("\\hline\n");
    for r in reports {
        let case = r
            .family
            .label
            .as_ref()
            .map_or_else(|| "--".to_string(), |l| l.case.to_string());
        let addends: Vec<String> = r
            .h0_normal
            .terms
            .iter()
            .map(|t| t.chi.to_string())
            .collect();
        let _ = writeln!(
            out,
            "{case} & {} & {} & ${}$ & {} & ${} = {}$ & ${}$ & ${}$ \\\\",
            tex_ambient(&r.family),
            tex_bundle(&r.family),
            r.degree_formula,
            tex_matrix(&r.picard_lattice),
            addends.join("+"),
            r.h0_normal.total,
            r.h0_tangent,
            r.moduli_dim
        );
    }
    out.push_str("\\end{tabular}\n");
    out
}

/// Search results as a `tabular` fragment.
pub fn families_tex(families: &[FamilySpec]) -> String {
    let mut out = String::from("\\begin{tabular}{llll}\n$P$ & $E$ & $L$ & case \\\\\n\\hline\n");
    for f in families {
        let case = f
            .label
            .as_ref()
            .map_or_else(|| "--".into(), |l| l.case.to_string());
        let _ = writeln!(
            out,
            "{} & {} & $\\mathcal{{O}}({})$ & {case} \\\\",
            tex_ambient(f),
            tex_bundle(f),
            f.polarization
        );
    }
    out.push_str("\\end{tabular}\n");
    out
}
