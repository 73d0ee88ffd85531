//! Command implementations.

use multitrig::approx::{certify, ApproxTarget, BasisKind, Profile};
use multitrig::certificate;
use multitrig::dd::Dd;
use multitrig::decimal::{dd_to_decimal, f64_to_decimal};
use multitrig::dirichlet;
use multitrig::ext::{parse_rational, rational_to_dd};
use multitrig::identities::{self, IdentityReport};
use multitrig::multifun;
use multitrig::resolutions::resolve_all;
use num_rational::BigRational;
use num_traits::One;
use std::fmt::Write as _;
use std::path::Path;

pub enum CliError {
    Usage(String),
    Numeric(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn numeric(msg: impl std::fmt::Display) -> CliError {
    CliError::Numeric(msg.to_string())
}

type CmdResult = Result<String, CliError>;

fn parse_order(params: &[String], kind: &str) -> Result<u32, CliError> {
    params
        .first()
        .ok_or_else(|| usage(format!("{kind} requires an integer order")))?
        .parse::<u32>()
        .map_err(|_| usage(format!("{kind} order must be a nonnegative integer")))
}

fn parse_point(params: &[String], kind: &str) -> Result<(u32, BigRational), CliError> {
    if params.len() != 2 {
        return Err(usage(format!("{kind} requires: <r> <x>")));
    }
    let r = params[0]
        .parse::<u32>()
        .map_err(|_| usage("order r must be a nonnegative integer"))?;
    let x = parse_rational(&params[1]).ok_or_else(|| usage("x must be decimal or p/q"))?;
    Ok((r, x))
}

pub fn values(kind: &str, params: &[String], digits: usize) -> CmdResult {
    let line = match kind {
        "zeta" | "eta" | "lambda" | "beta" => {
            let s = parse_order(params, kind)?;
            let sv = match kind {
                "zeta" => dirichlet::zeta(s),
                "eta" => dirichlet::eta(s),
                "lambda" => dirichlet::lambda_fn(s),
                _ => dirichlet::beta_fn(s),
            }
            .map_err(|e| usage(e.to_string()))?;
            format!(
                "{kind}({s}) = {} (err <= {})",
                dd_to_decimal(sv.val.value(), digits),
                f64_to_decimal(sv.val.err(), 2)
            )
        }
        "catalan" => {
            let g = dirichlet::catalan();
            format!(
                "catalan = {} (err <= {})",
                dd_to_decimal(g.val.value(), digits),
                f64_to_decimal(g.val.err(), 2)
            )
        }
        "multicos" | "multisin" => {
            let (r, x) = parse_point(params, kind)?;
            if r == 0 {
                return Err(usage("order r must be at least 1"));
            }
            let x_dd = rational_to_dd(&x);
            let v = if kind == "multicos" {
                multifun::log_multicos(r, x_dd)
            } else {
                multifun::log_multisin(r, x_dd)
            }
            .map_err(|e| usage(e.to_string()))?;
            let name = if kind == "multicos" { "C" } else { "S" };
            format!(
                "log {name}_{r}({}) = {} (err <= {})",
                dd_to_decimal(x_dd, 6),
                dd_to_decimal(v.log_value.value(), digits),
                f64_to_decimal(v.log_value.err(), 2)
            )
        }
        other => return Err(usage(format!("unknown value kind '{other}'"))),
    };
    println!("{line}");
    Ok("printed 1 value".to_string())
}

fn report_passes(rep: &IdentityReport, tol_override: Option<f64>) -> bool {
    match tol_override {
        Some(t) => rep.residual <= t,
        None => rep.passes(),
    }
}

fn print_report(rep: &IdentityReport, tol_override: Option<f64>) -> bool {
    let ok = report_passes(rep, tol_override);
    println!(
        "{} {:<14} residual={} tol={} lhs={} rhs={}",
        if ok { "PASS" } else { "FAIL" },
        rep.id.to_string(),
        f64_to_decimal(rep.residual, 3),
        f64_to_decimal(tol_override.unwrap_or(rep.tolerance), 3),
        dd_to_decimal(rep.lhs.value(), 20),
        dd_to_decimal(rep.rhs.value(), 20),
    );
    ok
}

pub fn verify(suite: &str, tol: Option<f64>, certificate_path: Option<&Path>) -> CmdResult {
    if let Some(path) = certificate_path {
        return verify_certificate(path);
    }
    let mut all_ok = true;
    let mut count = 0usize;
    let mut first_fail: Option<String> = None;
    let mut check = |ok: bool, name: String| {
        count += 1;
        if !ok && first_fail.is_none() {
            first_fail = Some(name);
        }
        all_ok &= ok;
    };
    match suite {
        "identities" | "all" => {
            let reports = identities::identity_suite().map_err(numeric)?;
            for rep in &reports {
                let ok = print_report(rep, tol);
                check(ok, rep.id.to_string());
            }
        }
        "lemmas" | "resolutions" => {}
        other => return Err(usage(format!("unknown suite '{other}'"))),
    }
    if suite == "lemmas" || suite == "all" {
        for r in 0..=8 {
            let rep = identities::coslog_moment(r).map_err(numeric)?;
            let ok = print_report(&rep, tol);
            check(ok, rep.id.to_string());
        }
        let battery = identities::random_poly_battery(20, 0x5eed_0001).map_err(numeric)?;
        for item in &battery {
            let limit = tol.unwrap_or(1e-9);
            let ok = item.coslog_residual <= limit && item.cot_residual <= limit;
            println!(
                "{} lemma-battery {:<16} coslog={} cot={}",
                if ok { "PASS" } else { "FAIL" },
                item.label,
                f64_to_decimal(item.coslog_residual, 3),
                f64_to_decimal(item.cot_residual, 3),
            );
            check(ok, format!("lemma-battery {}", item.label));
        }
    }
    if suite == "resolutions" || suite == "all" {
        let res = resolve_all().map_err(numeric)?;
        for r in res.all() {
            let ok = match tol {
                Some(t) => r.winner_residual <= t,
                None => r.separation_ok(1e-9, 1e3),
            };
            println!(
                "{} resolution {:<18} winner: {} (residual={})",
                if ok { "PASS" } else { "FAIL" },
                r.key,
                r.winner,
                f64_to_decimal(r.winner_residual, 3),
            );
            for c in &r.rejected {
                match c.residual {
                    Some(v) => println!(
                        "       rejected: {} (residual={})",
                        c.reading,
                        f64_to_decimal(v, 3)
                    ),
                    None => println!("       rejected: {} (non-finite)", c.reading),
                }
            }
            check(ok, format!("resolution {}", r.key));
        }
    }
    if all_ok {
        Ok(format!("{count} checks passed"))
    } else {
        Err(numeric(format!(
            "first failing check: {}",
            first_fail.unwrap_or_default()
        )))
    }
}

fn verify_certificate(path: &Path) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed = certificate::parse(&text).map_err(numeric)?;
    let check = certificate::verify_parsed(&parsed);
    println!(
        "certificate {}: stored residual={} recomputed={} match={} bound_holds={}",
        path.display(),
        f64_to_decimal(check.stored_residual, 6),
        f64_to_decimal(check.recomputed_residual, 6),
        check.residual_matches,
        check.bound_holds,
    );
    if check.residual_matches && check.bound_holds {
        Ok("certificate verified".into())
    } else {
        Err(numeric("certificate residual or bound check failed"))
    }
}

#[allow(clippy::too_many_arguments)]
pub fn approximate(
    alpha: &str,
    basis: &str,
    x: &str,
    k0: u32,
    q: u32,
    n: u32,
    profile: &str,
    out: Option<&Path>,
) -> CmdResult {
    let alpha = parse_rational(alpha).ok_or_else(|| usage("alpha must be decimal or p/q"))?;
    let basis = BasisKind::parse(basis)
        .ok_or_else(|| usage("basis must be multicos | zetaBeta | multisin | lupuWu"))?;
    let x = if matches!(basis, BasisKind::ZetaBeta | BasisKind::LupuWu) {
        BigRational::one()
    } else {
        parse_rational(x).ok_or_else(|| usage("x must be decimal or p/q"))?
    };
    let target = ApproxTarget {
        alpha,
        basis,
        x,
        k0,
        q,
        n,
    };
    let profile = Profile::parse(profile).ok_or_else(|| usage("profile must be constant | bump"))?;
    target.validate().map_err(|e| usage(e.to_string()))?;
    let cert = certify(&target, profile, None).map_err(numeric)?;
    let json = certificate::to_json(&cert);
    let path = out.unwrap_or_else(|| Path::new("certificate.json"));
    std::fs::write(path, &json)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    let ladder: Vec<String> = cert
        .ladder
        .iter()
        .map(|(m, r)| format!("n={m}:{}", f64_to_decimal(*r, 3)))
        .collect();
    println!(
        "residual={} fittedK={} bound=K/n^q {} ladder=[{}]",
        f64_to_decimal(cert.residual, 6),
        f64_to_decimal(cert.fitted_k, 6),
        if cert.passes { "PASS" } else { "FAIL" },
        ladder.join(" ")
    );
    if let Some(res_no_log2) = cert.residual_without_log2 {
        println!(
            "residual-without-log2-term={}",
            f64_to_decimal(res_no_log2, 6)
        );
    }
    println!("certificate written to {}", path.display());
    if cert.passes {
        Ok("certificate PASS".into())
    } else {
        Err(numeric("certificate FAIL: residual above fitted bound"))
    }
}

struct TableRow {
    r: u32,
    lhs: Dd,
    rhs: Dd,
    residual: f64,
}

pub fn table(which: &str, rmax: u32, format: &str, out: Option<&Path>) -> CmdResult {
    let mut rows: Vec<TableRow> = Vec::new();
    match which {
        "eq1" => {
            if rmax > 10 {
                return Err(usage("eq1 supports rmax <= 10"));
            }
            for r in 2..=rmax.max(1) {
                if r < 2 {
                    continue;
                }
                let rep = identities::sinlog_moment(r).map_err(numeric)?;
                rows.push(TableRow {
                    r,
                    lhs: rep.lhs.value(),
                    rhs: rep.rhs.value(),
                    residual: rep.residual,
                });
            }
        }
        "lemma31" => {
            if rmax > 12 {
                return Err(usage("lemma31 supports rmax <= 12"));
            }
            for r in 0..=rmax {
                let rep = identities::coslog_moment(r).map_err(numeric)?;
                rows.push(TableRow {
                    r,
                    lhs: rep.lhs.value(),
                    rhs: rep.rhs.value(),
                    residual: rep.residual,
                });
            }
        }
        "eq114" => {
            if rmax > 12 {
                return Err(usage("eq114 supports rmax <= 12"));
            }
            for r in 2..=rmax.max(1) {
                if r < 2 {
                    continue;
                }
                let rep = identities::quarter_multicos_report(r).map_err(numeric)?;
                rows.push(TableRow {
                    r,
                    lhs: rep.lhs.value(),
                    rhs: rep.rhs.value(),
                    residual: rep.residual,
                });
            }
        }
        other => return Err(usage(format!("unknown table '{other}'"))),
    }
    let content = match format {
        "csv" => {
            let mut s = String::from("r,lhs,rhs,residual\n");
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    row.r,
                    dd_to_decimal(row.lhs, 32),
                    dd_to_decimal(row.rhs, 32),
                    f64_to_decimal(row.residual, 3)
                );
            }
            s
        }
        "json" => {
            let mut s = String::from("[\n");
            for (i, row) in rows.iter().enumerate() {
                let _ = write!(
                    s,
                    "  {{\"r\": {}, \"lhs\": \"{}\", \"rhs\": \"{}\", \"residual\": \"{}\"}}",
                    row.r,
                    dd_to_decimal(row.lhs, 32),
                    dd_to_decimal(row.rhs, 32),
                    f64_to_decimal(row.residual, 3)
                );
                s.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
            }
            s.push_str("]\n");
            s
        }
        other => return Err(usage(format!("unknown format '{other}'"))),
    };
    match out {
        Some(path) => std::fs::write(path, &content)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{content}"),
    }
    Ok(format!("{} table rows", rows.len()))
}
