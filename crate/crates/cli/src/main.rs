//! `lcmat` — build exact GCD/LCM-style matrices, factor them, take
//! determinants by elimination and closed form, and run the identity suite.
//!
//! Exit codes: 0 success, 1 identity-check failure, 2 invalid request.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use lcmat::format::{
    emit_matrix, matrix_to_csv, matrix_to_json, matrix_to_latex, rat_to_latex, rat_to_string,
    EmitFormat,
};
use lcmat::verify::{render_jsonl, render_summary, suite_passed};
use lcmat::{
    bareiss_det, build_f1_factorization, build_f1_matrix, build_f2_factorization, build_f2_matrix,
    build_gcd_matrix, build_lcm_matrix, build_lcm_structure_product, closed_form_det, Claim,
    DetResult, Error, ExactMatrix, Factorization, FunctionSpec, FunctionTable, GKind, MatrixFamily,
    SuiteConfig,
};

#[derive(Parser)]
#[command(name = "lcmat", version, about = "Exact GCD/LCM matrix toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a matrix family and emit it
    Build {
        /// Family: gcd | lcm | f1 | f2 | cn | dn
        #[arg(long)]
        family: String,
        /// Function: one|id|mobius|liouville|big_omega|tau|sigma|phi|smith_g|user:p=v,...
        #[arg(long, default_value = "id")]
        g: String,
        /// Matrix order
        #[arg(long)]
        n: usize,
        /// csv | json | latex (default csv, or $LCMAT_FORMAT)
        #[arg(long)]
        format: Option<String>,
        /// Write here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Determinant by elimination and by closed form, flagging disagreement
    Det {
        /// Family: gcd | lcm | f1 | f2
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "id")]
        g: String,
        #[arg(long)]
        n: usize,
        /// csv | json | latex (default json, or $LCMAT_FORMAT)
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the factors of a family and their reassembled product
    Factor {
        /// Family: f1 | f2 | lcm (the lcm structure factorization)
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "id")]
        g: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the identity suite; JSON lines on stdout, summary on stderr
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Comma list of kinds; repeat the flag for user:... literals.
        /// Bare `user` draws a seeded random function.
        #[arg(long, default_values_t = [String::from("one,id,liouville")])]
        g: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `all` or a comma list of claim ids
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time closed-form vs elimination determinants over a range of n
    Bench {
        /// Family: gcd | lcm | f1 | f2
        #[arg(long, default_value = "f1")]
        family: String,
        #[arg(long, default_value = "id")]
        g: String,
        #[arg(long, default_value_t = 64)]
        max_n: usize,
        #[arg(long, default_value_t = 16)]
        step: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors, 0 on --help/--version
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AppResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn run(cli: Cli) -> AppResult<ExitCode> {
    match cli.cmd {
        Cmd::Build {
            family,
            g,
            n,
            format,
            output,
        } => {
            let format = resolve_format(format.as_deref(), EmitFormat::Csv)?;
            let matrix = build_any(&family, &g, n)?;
            emit(&emit_matrix(&matrix, format), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Det {
            family,
            g,
            n,
            format,
            output,
        } => {
            let format = resolve_format(format.as_deref(), EmitFormat::Json)?;
            run_det(&family, &g, n, format, output.as_deref())
        }
        Cmd::Factor {
            family,
            g,
            n,
            format,
            output,
        } => {
            let format = resolve_format(format.as_deref(), EmitFormat::Csv)?;
            let (factorization, g_label) = build_factorization(&family, &g, n)?;
            emit(
                &render_factorization(&factorization, &family, &g_label, format),
                output.as_deref(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            max_n,
            g,
            seed,
            claims,
            output,
        } => {
            let config = SuiteConfig {
                max_n,
                g_kinds: parse_g_list(&g)?,
                seed,
                claims: parse_claims(&claims)?,
            };
            let reports = lcmat::run_suite(&config)?;
            emit(&render_jsonl(&reports), output.as_deref())?;
            eprint!("{}", render_summary(&reports));
            Ok(if suite_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Bench {
            family,
            g,
            max_n,
            step,
            output,
        } => run_bench(&family, &g, max_n, step, output.as_deref()),
    }
}

fn resolve_format(flag: Option<&str>, default: EmitFormat) -> AppResult<EmitFormat> {
    match flag {
        Some(s) => Ok(s.parse()?),
        None => match std::env::var("LCMAT_FORMAT") {
            Ok(s) => Ok(s.parse()?),
            Err(_) => Ok(default),
        },
    }
}

fn emit(text: &str, output: Option<&Path>) -> AppResult<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn g_table(g: &str, n_max: usize) -> AppResult<(FunctionTable, String)> {
    let spec: FunctionSpec = g.parse()?;
    let table = FunctionTable::from_spec(&spec, n_max)?;
    Ok((table, spec.to_string()))
}

fn build_any(family: &str, g: &str, n: usize) -> AppResult<ExactMatrix> {
    match family {
        "cn" => {
            require_order(n)?;
            Ok(ExactMatrix::divisibility_matrix(n))
        }
        "dn" => {
            require_order(n)?;
            Ok(ExactMatrix::nondivisibility_matrix(n))
        }
        _ => {
            let fam: MatrixFamily = family.parse()?;
            let (table, _) = g_table(g, n.max(1))?;
            Ok(build_family_matrix(fam, &table, n)?)
        }
    }
}

fn require_order(n: usize) -> Result<(), Error> {
    if n == 0 {
        Err(Error::EmptyMatrix)
    } else {
        Ok(())
    }
}

fn build_family_matrix(
    fam: MatrixFamily,
    table: &FunctionTable,
    n: usize,
) -> Result<ExactMatrix, Error> {
    match fam {
        MatrixFamily::Gcd => build_gcd_matrix(n, table),
        MatrixFamily::Lcm => build_lcm_matrix(n, table),
        MatrixFamily::F1 => build_f1_matrix(n, table),
        MatrixFamily::F2 => build_f2_matrix(n, table),
    }
}

fn run_det(
    family: &str,
    g: &str,
    n: usize,
    format: EmitFormat,
    output: Option<&Path>,
) -> AppResult<ExitCode> {
    let fam: MatrixFamily = family.parse()?;
    let (table, g_label) = g_table(g, n.max(1))?;
    let matrix = build_family_matrix(fam, &table, n)?;
    let elimination = bareiss_det(&matrix);

    let mut results = vec![elimination.clone()];
    let mut agree = true;
    match closed_form_det(fam, n, &table) {
        Ok(closed) => {
            agree = closed.value == elimination.value;
            results.push(closed);
        }
        Err(Error::NoClosedForm { .. }) => {}
        Err(e) => return Err(e.into()),
    }

    emit(
        &render_det(fam, &g_label, n, &results, agree, format),
        output,
    )?;
    if agree {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: determinant methods disagree for family {fam} at n = {n}");
        Ok(ExitCode::from(1))
    }
}

fn render_det(
    fam: MatrixFamily,
    g_label: &str,
    n: usize,
    results: &[DetResult],
    agree: bool,
    format: EmitFormat,
) -> String {
    match format {
        EmitFormat::Json => {
            let results: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "value": rat_to_string(&r.value),
                        "method": r.method.as_str(),
                        "order": r.order,
                    })
                })
                .collect();
            serde_json::json!({
                "family": fam.as_str(),
                "g": g_label,
                "order": n,
                "results": results,
                "agree": agree,
            })
            .to_string()
                + "\n"
        }
        EmitFormat::Csv => {
            let mut out = String::from("method,value,order\n");
            for r in results {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    r.method.as_str(),
                    rat_to_string(&r.value),
                    r.order
                );
            }
            out
        }
        EmitFormat::Latex => {
            let mut out = String::from("\\begin{array}{lr}\n");
            for r in results {
                let _ = writeln!(
                    out,
                    "\\text{{{}}} & {}\\\\",
                    r.method.as_str().replace('_', "\\_"),
                    rat_to_latex(&r.value)
                );
            }
            out.push_str("\\end{array}\n");
            out
        }
    }
}

fn build_factorization(family: &str, g: &str, n: usize) -> AppResult<(Factorization, String)> {
    match family {
        "lcm" => Ok((build_lcm_structure_product(n)?, "id".to_string())),
        "f1" => {
            let (table, label) = g_table(g, n.max(1))?;
            Ok((build_f1_factorization(n, &table)?, label))
        }
        "f2" => {
            let (table, label) = g_table(g, n.max(1))?;
            Ok((build_f2_factorization(n, &table)?, label))
        }
        other => Err(format!("family `{other}` has no factorization; use f1, f2 or lcm").into()),
    }
}

fn render_factorization(
    f: &Factorization,
    family: &str,
    g_label: &str,
    format: EmitFormat,
) -> String {
    let product = f.product();
    match format {
        EmitFormat::Csv => {
            let mut out = String::new();
            for (name, m) in f.named_factors() {
                let _ = writeln!(out, "# {name}");
                out.push_str(&matrix_to_csv(m));
            }
            out.push_str("# product\n");
            out.push_str(&matrix_to_csv(&product));
            out
        }
        EmitFormat::Json => {
            let factors: Vec<serde_json::Value> = f
                .named_factors()
                .iter()
                .map(|(name, m)| {
                    serde_json::json!({
                        "name": name,
                        "matrix": serde_json::from_str::<serde_json::Value>(&matrix_to_json(m))
                            .expect("matrix json is valid"),
                    })
                })
                .collect();
            serde_json::json!({
                "family": family,
                "g": g_label,
                "order": f.order(),
                "factors": factors,
                "product": serde_json::from_str::<serde_json::Value>(&matrix_to_json(&product))
                    .expect("matrix json is valid"),
            })
            .to_string()
                + "\n"
        }
        EmitFormat::Latex => {
            let mut out = String::new();
            for (name, m) in f.named_factors() {
                let _ = writeln!(out, "% {name}");
                out.push_str(&matrix_to_latex(m));
            }
            out.push_str("% product\n");
            out.push_str(&matrix_to_latex(&product));
            out
        }
    }
}

fn parse_g_list(items: &[String]) -> AppResult<Vec<GKind>> {
    let mut out = Vec::new();
    for item in items {
        if item == "user" || item.starts_with("user:") {
            out.push(item.parse::<GKind>()?);
        } else {
            for part in item.split(',') {
                out.push(part.trim().parse::<GKind>()?);
            }
        }
    }
    Ok(out)
}

fn parse_claims(s: &str) -> AppResult<Vec<Claim>> {
    if s == "all" {
        return Ok(Claim::CATALOG.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        out.push(part.trim().parse::<Claim>()?);
    }
    Ok(out)
}

fn run_bench(
    family: &str,
    g: &str,
    max_n: usize,
    step: usize,
    output: Option<&Path>,
) -> AppResult<ExitCode> {
    if step == 0 || max_n == 0 {
        return Err("bench needs step ≥ 1 and max_n ≥ 1".into());
    }
    let fam: MatrixFamily = family.parse()?;
    let (table, g_label) = g_table(g, max_n)?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "# bench family={} g={g_label} (wall time; one untimed warm-up at n={step})",
        fam.as_str()
    );
    out.push_str("n,closed_us,bareiss_us,agree\n");

    // warm-up so the timed rows exclude first-touch costs
    let warm = build_family_matrix(fam, &table, step)?;
    let _ = bareiss_det(&warm);
    match closed_form_det(fam, step, &table) {
        Ok(_) | Err(Error::NoClosedForm { .. }) => {}
        Err(e) => return Err(e.into()),
    }

    let mut n = step;
    let mut all_agree = true;
    while n <= max_n {
        let matrix = build_family_matrix(fam, &table, n)?;
        let t0 = Instant::now();
        let elim = bareiss_det(&matrix);
        let elim_us = t0.elapsed().as_micros();

        let (closed_cell, agree) = {
            let t1 = Instant::now();
            match closed_form_det(fam, n, &table) {
                Ok(closed) => {
                    let closed_us = t1.elapsed().as_micros();
                    (closed_us.to_string(), closed.value == elim.value)
                }
                Err(Error::NoClosedForm { .. }) => ("-".to_string(), true),
                Err(e) => return Err(e.into()),
            }
        };
        all_agree &= agree;
        let _ = writeln!(out, "{n},{closed_cell},{elim_us},{agree}");
        n += step;
    }
    emit(&out, output)?;
    Ok(if all_agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
