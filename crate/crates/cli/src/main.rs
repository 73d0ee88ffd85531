//! `multitrig`: special values, identity verification, approximation
//! certificates, and reproducible tables.
//!
//! Exit codes: 0 success, 1 numeric failure, 2 usage error. Numeric output
//! (stdout and files) is byte-deterministic; the run manifest, which carries
//! wall time, goes to stderr.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

mod manifest;
mod run;

#[derive(Parser)]
#[command(
    name = "multitrig",
    version,
    about = "High-precision multiple sine/cosine special values, Dirichlet series, integral-identity verification, and rational approximation certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a special value with its error bound.
    Values {
        /// zeta | eta | lambda | beta | catalan | multicos | multisin
        kind: String,
        /// order s, or "r x" for multicos/multisin
        params: Vec<String>,
        /// significant digits to print
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// Run identity suites or re-verify a certificate file.
    Verify {
        /// all | identities | lemmas | resolutions
        #[arg(long, default_value = "all")]
        suite: String,
        /// strict residual tolerance override
        #[arg(long)]
        tol: Option<f64>,
        /// re-verify a certificate produced by `approximate`
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Build a rational-coefficient approximation certificate.
    Approximate {
        /// target real number (decimal or p/q)
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// multicos | zetaBeta | multisin | lupuWu
        #[arg(long)]
        basis: String,
        /// anchor in the basis domain (ignored for [0,1] bases)
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long, default_value_t = 1)]
        k0: u32,
        #[arg(long, default_value_t = 1)]
        q: u32,
        #[arg(long, default_value_t = 8)]
        n: u32,
        /// constant | bump
        #[arg(long, default_value = "constant")]
        profile: String,
        /// write the certificate here (default: certificate.json)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a reproducible identity table.
    Table {
        /// eq1 | lemma31 | eq114
        #[arg(long)]
        which: String,
        #[arg(long)]
        rmax: u32,
        /// csv | json
        #[arg(long, default_value = "csv")]
        format: String,
        /// output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    if let Err(msg) = multitrig::ext::validate_constants() {
        eprintln!("constant validation failed: {msg}");
        return ExitCode::from(1);
    }
    let outcome = match &cli.command {
        Command::Values {
            kind,
            params,
            digits,
        } => run::values(kind, params, *digits),
        Command::Verify {
            suite,
            tol,
            certificate,
        } => run::verify(suite, *tol, certificate.as_deref()),
        Command::Approximate {
            alpha,
            basis,
            x,
            k0,
            q,
            n,
            profile,
            out,
        } => run::approximate(alpha, basis, x, *k0, *q, *n, profile, out.as_deref()),
        Command::Table {
            which,
            rmax,
            format,
            out,
        } => run::table(which, *rmax, format, out.as_deref()),
    };
    let (code, summary) = match outcome {
        Ok(summary) => (0u8, summary),
        Err(run::CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            (2, "usage error".to_string())
        }
        Err(run::CliError::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            (1, "numeric failure".to_string())
        }
    };
    manifest::emit(&cli.command_echo(), started.elapsed(), code, &summary);
    ExitCode::from(code)
}

impl Cli {
    fn command_echo(&self) -> String {
        match &self.command {
            Command::Values {
                kind,
                params,
                digits,
            } => format!("values {kind} {} --digits {digits}", params.join(" ")),
            Command::Verify {
                suite,
                tol,
                certificate,
            } => {
                let mut s = format!("verify --suite {suite}");
                if let Some(t) = tol {
                    s.push_str(&format!(" --tol {t:e}"));
                }
                if let Some(c) = certificate {
                    s.push_str(&format!(" --certificate {}", c.display()));
                }
                s
            }
            Command::Approximate {
                alpha,
                basis,
                x,
                k0,
                q,
                n,
                profile,
                out,
            } => {
                let mut s = format!(
                    "approximate --alpha {alpha} --basis {basis} --x {x} --k0 {k0} --q {q} --n {n} --profile {profile}"
                );
                if let Some(o) = out {
                    s.push_str(&format!(" --out {}", o.display()));
                }
                s
            }
            Command::Table {
                which,
                rmax,
                format,
                out,
            } => {
                let mut s = format!("table --which {which} --rmax {rmax} --format {format}");
                if let Some(o) = out {
                    s.push_str(&format!(" --out {}", o.display()));
                }
                s
            }
        }
    }
}
