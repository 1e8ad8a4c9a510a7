//! The `tatecert` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error,
//! 3 work budget refusal.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::elliptic::{tate_curve, Point};
use crate::field::{is_irreducible_mod_p, is_prime_u64, Element, Fp, Poly, Rational};
use crate::fixture::{load_fixture, shipped_fixture_dir, Fixture};
use crate::scan::{
    low_degree_filter, scan_fp, GonalityTable, ScanError, ScanOptions, DEFAULT_BUDGET,
};
use crate::verify::verify_path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tatecert",
    version,
    about = "Torsion certificates for Tate normal form curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify fixtures (a directory of *.json files or a single file).
    Verify {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the order certificate of (0,0), or [k](0,0) with --k.
    Order {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Print the discriminant and j-invariant of a fixture's curve.
    Jinv {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Enumerate (b, c) over F_{p^d} where (0,0) has exact order N.
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defining polynomial of F_{p^d}, comma-separated, constant term first.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        /// Gonality to compare against when N is not in the built-in table.
        #[arg(long)]
        gonality: Option<u64>,
        /// Report every hit instead of only those below the gonality.
        #[arg(long)]
        no_filter: bool,
        /// Emit one line per Frobenius orbit instead of per hit.
        #[arg(long)]
        orbits: bool,
    },
    /// Test a polynomial over F_p for irreducibility.
    Irred {
        /// Comma-separated coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        minpoly: String,
        #[arg(long)]
        p: u64,
    },
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify { fixtures, report } => cmd_verify(fixtures, report, out),
        Command::Order { fixture, k } => cmd_order(&fixture, k, out),
        Command::Jinv { fixture } => cmd_jinv(&fixture, out),
        Command::Scan {
            p,
            ext,
            order,
            budget,
            jobs,
            out: out_path,
            modulus,
            gonality,
            no_filter,
            orbits,
        } => cmd_scan(
            ScanArgs {
                p,
                ext,
                order,
                budget,
                jobs,
                out_path,
                modulus,
                gonality,
                no_filter,
                orbits,
            },
            out,
        ),
        Command::Irred { minpoly, p } => cmd_irred(&minpoly, p, out),
    };
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn input_error(e: impl ToString) -> (i32, String) {
    (EXIT_INPUT, e.to_string())
}

fn write_out(out: &mut dyn Write, text: &str) -> CmdResult {
    writeln!(out, "{text}").map_err(input_error)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    fixtures: Option<PathBuf>,
    report: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let dir = fixtures.unwrap_or_else(shipped_fixture_dir);
    let rep = verify_path(&dir).map_err(input_error)?;
    if rep.fixtures.is_empty() {
        return Err(input_error(format!(
            "no fixtures found under {}",
            dir.display()
        )));
    }
    let text = rep.to_json();
    match report {
        Some(path) => {
            std::fs::write(&path, format!("{text}\n")).map_err(input_error)?;
            for f in &rep.fixtures {
                let status = if f.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {} ({})", f.label, f.source).map_err(input_error)?;
            }
        }
        None => {
            write_out(out, &text)?;
        }
    }
    Ok(if rep.has_input_errors() {
        EXIT_INPUT
    } else if rep.all_pass {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn load(path: &PathBuf) -> Result<Fixture, (i32, String)> {
    load_fixture(path).map_err(input_error)
}

fn point_json(p: &Point<Element<Rational>>) -> serde_json::Value {
    match p {
        Point::Infinity => json!("infinity"),
        Point::Affine { x, y } => json!({ "x": x.to_nested(), "y": y.to_nested() }),
    }
}

fn cmd_order(path: &PathBuf, k: Option<u64>, out: &mut dyn Write) -> CmdResult {
    let fixture = load(path)?;
    let curve = tate_curve(&fixture.params);
    let origin = curve.origin().map_err(input_error)?;
    if let Some(k) = k {
        let point = curve
            .scalar_mul(k, &origin)
            .map_err(|e| (EXIT_FAILURE, e.to_string()))?;
        return write_out(
            out,
            &json!({ "k": k, "point": point_json(&point) }).to_string(),
        );
    }
    match curve.verify_order(&origin, fixture.expected_order) {
        Ok(cert) => {
            write_out(out, &serde_json::to_string(&cert).map_err(input_error)?)?;
            Ok(if cert.pass { EXIT_OK } else { EXIT_FAILURE })
        }
        Err(e) => Err((EXIT_FAILURE, e.to_string())),
    }
}

fn cmd_jinv(path: &PathBuf, out: &mut dyn Write) -> CmdResult {
    let fixture = load(path)?;
    let inv = tate_curve(&fixture.params).invariants();
    let j = inv.j.as_ref().map(Element::to_nested);
    write_out(
        out,
        &json!({ "disc": inv.disc.to_nested(), "j": j }).to_string(),
    )
}

struct ScanArgs {
    p: u64,
    ext: u32,
    order: u64,
    budget: u128,
    jobs: Option<usize>,
    out_path: Option<PathBuf>,
    modulus: Option<Vec<u64>>,
    gonality: Option<u64>,
    no_filter: bool,
    orbits: bool,
}

fn scan_error(e: ScanError) -> (i32, String) {
    let code = match e {
        ScanError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    };
    (code, e.to_string())
}

fn cmd_scan(args: ScanArgs, out: &mut dyn Write) -> CmdResult {
    let mut table = GonalityTable::builtin();
    if let Some(g) = args.gonality {
        table = table.with(args.order, g);
    }
    // fail on an unknown level before doing any work
    if !args.no_filter && table.get(args.order).is_none() {
        return Err(scan_error(ScanError::UnknownLevel {
            n: args.order,
            known: table.known_levels(),
        }));
    }
    let opts = ScanOptions {
        budget: args.budget,
        jobs: args.jobs,
    };
    let mut result = scan_fp(args.p, args.ext, args.order, args.modulus.as_deref(), &opts)
        .map_err(scan_error)?;
    let low = if args.no_filter {
        None
    } else {
        result.hits = low_degree_filter(&result.hits, args.order, &table).map_err(scan_error)?;
        Some(result.hits.len())
    };

    let mut lines: Vec<String> = if args.orbits {
        result
            .orbits()
            .iter()
            .map(|orbit| {
                let members: Vec<serde_json::Value> = orbit
                    .iter()
                    .map(|h| serde_json::to_value(h).expect("hit serializes"))
                    .collect();
                json!({ "orbit": members }).to_string()
            })
            .collect()
    } else {
        result.hits.iter().map(|h| h.to_json_line()).collect()
    };
    lines.push(result.summary_json(low));
    let text = lines.join("\n") + "\n";
    match args.out_path {
        Some(path) => std::fs::write(path, text).map_err(input_error)?,
        None => out.write_all(text.as_bytes()).map_err(input_error)?,
    }
    Ok(EXIT_OK)
}

fn cmd_irred(minpoly: &str, p: u64, out: &mut dyn Write) -> CmdResult {
    if !is_prime_u64(p) {
        return Err(input_error(format!("{p} is not prime")));
    }
    let coeffs = minpoly
        .split(',')
        .map(|s| {
            let q: Rational = s.trim().parse().map_err(input_error)?;
            q.reduce_mod(p)
                .ok_or_else(|| input_error(format!("{p} divides the denominator of {q}")))
        })
        .collect::<Result<Vec<Fp>, _>>()?;
    let f = Poly::new(coeffs, Fp::new(0, p));
    if f.degree().unwrap_or(0) < 1 {
        return Err(input_error("polynomial must have degree >= 1 modulo p"));
    }
    let verdict = if is_irreducible_mod_p(&f) {
        "irreducible"
    } else {
        "reducible"
    };
    write_out(out, verdict)
}
