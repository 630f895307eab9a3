//! JSON, CSV and plain-text renderings.

use std::io::Write;

use irrcount::counting::{PPoly, ZetaNumerators};
use irrcount::cyclo::CycloNum;
use irrcount::group::GroupStructure;
use irrcount::oracle::{InstanceInfo, OracleReport};
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// One count: the degree, the class, its canonical representative, and the value.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub n: usize,
    pub class: Vec<u64>,
    pub representative: String,
    pub value: String,
}

fn join(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn group(out: &mut dyn Write, gs: &GroupStructure, format: Format) -> std::io::Result<()> {
    let info = InstanceInfo::of(gs);
    let gens: Vec<String> = gs.generators().iter().map(|g| g.to_poly().to_text()).collect();
    match format {
        Format::Json => {
            let factors: Vec<_> =
                gens.iter().zip(gs.orders()).map(|(g, r)| json!({ "generator": g, "order": r })).collect();
            let doc = json!({
                "q": info.q,
                "modulus": info.modulus,
                "type": info.kind,
                "ell": info.ell,
                "t": info.t,
                "order": gs.order(),
                "exponent": gs.exponent(),
                "factors": factors,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["generator", "order"])?;
            for (g, r) in gens.iter().zip(gs.orders()) {
                w.write_record([g.clone(), r.to_string()])?;
            }
            w.flush()
        }
        Format::Pretty => {
            let orders: Vec<String> = gs.orders().iter().map(|r| format!("C{r}")).collect();
            writeln!(out, "|E| = {} = {}", gs.order(), orders.join(" x "))?;
            writeln!(out, "R = {}", gs.exponent())?;
            for (i, (g, r)) in gs.generators().iter().zip(gs.orders()).enumerate() {
                writeln!(out, "xi{} = <{}>  order {r}", i + 1, g.to_poly())?;
            }
            Ok(())
        }
    }
}

pub fn counts(
    out: &mut dyn Write,
    gs: &GroupStructure,
    quantity: &str,
    rows: &[Row],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let doc = json!({ "instance": InstanceInfo::of(gs), "quantity": quantity, "rows": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "class", "representative", "value"])?;
            for r in rows {
                w.write_record([r.n.to_string(), join(&r.class), r.representative.clone(), r.value.clone()])?;
            }
            w.flush()
        }
        Format::Pretty => {
            let width = rows.iter().map(|r| r.representative.len()).max().unwrap_or(0).max(14);
            writeln!(out, "{:>4}  {:<12}  {:<width$}  {quantity}", "n", "class", "representative")?;
            for r in rows {
                let class = format!("({})", join(&r.class));
                writeln!(out, "{:>4}  {:<12}  {:<width$}  {}", r.n, class, r.representative, r.value)?;
            }
            Ok(())
        }
    }
}

/// c as a sum of rational multiples of powers of w = ω_R.
fn cyclo_text(c: &CycloNum) -> String {
    let mut terms = Vec::new();
    for (k, a) in c.coeffs().iter().enumerate() {
        let coef = a.to_string();
        if coef == "0" {
            continue;
        }
        let w = if k == 1 { "w".to_string() } else { format!("w^{k}") };
        terms.push(match k {
            0 => coef,
            _ if coef == "1" => w,
            _ if coef == "-1" => format!("-{w}"),
            _ => format!("{coef}*{w}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn poly_text(p: &PPoly) -> String {
    let mut parts = vec!["1".to_string()];
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
        let c = cyclo_text(c);
        parts.push(match c.as_str() {
            "1" => z,
            "-1" => format!("-{z}"),
            _ if c.contains(' ') || c.contains('*') => format!("({c}){z}"),
            _ => format!("{c}{z}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

pub fn zeta(out: &mut dyn Write, gs: &GroupStructure, z: &ZetaNumerators, format: Format) -> std::io::Result<()> {
    let coeffs = |p: &PPoly| -> Vec<Vec<String>> { p.coeffs().iter().map(|c| c.to_strings()).collect() };
    match format {
        Format::Json => {
            let numerators: Vec<_> = z
                .numerators
                .iter()
                .map(|(j, p)| json!({ "index": j, "coefficients": coeffs(p), "text": poly_text(p) }))
                .collect();
            let doc = json!({
                "instance": InstanceInfo::of(gs),
                "root_order": gs.exponent(),
                "trivial": z.trivial,
                "numerators": numerators,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["index", "k", "coefficient"])?;
            for (j, p) in &z.numerators {
                for (k, c) in coeffs(p).iter().enumerate() {
                    w.write_record([join(&j.0), k.to_string(), c.join(" ")])?;
                }
            }
            w.flush()
        }
        Format::Pretty => {
            let poly = |v: &[i64]| -> String {
                v.iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                        match (k, c) {
                            (0, _) => c.to_string(),
                            (_, 1) => z,
                            (_, -1) => format!("-{z}"),
                            _ => format!("{c}{z}"),
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
                    .replace("+ -", "- ")
            };
            writeln!(out, "w = exp(2 pi i / {})", gs.exponent())?;
            writeln!(out, "trivial: ({}) / ({})", poly(&z.trivial.numerator), poly(&z.trivial.denominator))?;
            for (j, p) in &z.numerators {
                writeln!(out, "P{j}: {}", poly_text(p))?;
            }
            Ok(())
        }
    }
}

pub fn report(out: &mut dyn Write, report: &OracleReport, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(report)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["quantity", "n", "class", "representative", "oracle", "computed", "ok"])?;
            for c in &report.checks {
                w.write_record([
                    c.quantity.clone(),
                    c.n.to_string(),
                    join(&c.class.0),
                    c.representative.clone(),
                    c.expected.to_string(),
                    c.computed.to_string(),
                    c.ok.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Pretty => {
            let bad = report.checks.iter().filter(|c| !c.ok).count();
            writeln!(
                out,
                "{} checks (N for n <= {}, I for d <= {}), {} mismatches, {} ms: {}",
                report.checks.len(),
                report.n_max,
                report.d_max,
                bad,
                report.elapsed_ms,
                if report.passed { "pass" } else { "FAIL" }
            )
        }
    }
}
