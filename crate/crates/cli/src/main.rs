//! Command-line front end: parse a quiver file, dispatch to the engines,
//! and format the results.
//!
//! Exit status: 0 on success (an empty moduli space is a legitimate answer),
//! 1 on internal consistency failures, 2 on parse errors, 3 when the engines
//! disagree under `--method all`, 4 on infeasible inputs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quiver_moduli::betti::{
    admissible_decompositions, p_d, semi_admissible_decompositions,
    smooth_model_poincare_recursion, smooth_model_poincare_series, smooth_model_poincare_summation,
    sst_nonempty, PdCache, SlopeClass, SstCache,
};
use quiver_moduli::cells::{cell_report, hilb_poincare_cells};
use quiver_moduli::error::Error;
use quiver_moduli::hilbert::{hilb_nonempty, hilb_poincare_multipartitions, multipartitions};
use quiver_moduli::parse::{parse_quiver_file, QuiverFile};
use quiver_moduli::quiver::{
    euler_form, euler_form_vertex, frame, local_quiver, DimVector, PolystableType,
};
use quiver_moduli::selftest::{run_series_identity, run_suite, SuiteConfig};
use quiver_moduli::{PolyQ, RationalFunctionQ};

#[derive(Parser)]
#[command(
    name = "quivermod",
    about = "Exact Betti numbers of smooth models of quiver moduli",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Line-oriented key=value output with exponent:coefficient polynomials.
    #[arg(long, global = true)]
    machine: bool,
    /// Print only the final result line(s).
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Euler form values of the quiver (and of d when present).
    Euler { file: PathBuf },
    /// The rational function P_d of the datum (Q, Theta, d).
    Pd { file: PathBuf },
    /// Poincaré polynomial of the smooth model, by the chosen method(s).
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Cap vector for the series method, e.g. `2,2` (defaults to d).
        #[arg(long)]
        cap: Option<String>,
    },
    /// Trivial-stability shortcuts: non-emptiness and the multipartition
    /// formula for the Hilbert scheme.
    Hilb {
        file: PathBuf,
        /// List the multipartitions of S_{d,n}.
        #[arg(long)]
        list: bool,
    },
    /// Non-emptiness: the recursive criterion for the semistable moduli, and
    /// the explicit criterion for the Hilbert scheme when theta = 0.
    Nonempty { file: PathBuf },
    /// Cell decomposition listing: forest, relations, multipartition and
    /// dimension per cell.
    Cells { file: PathBuf },
    /// The framed quiver datum (Q^, d^).
    Frame { file: PathBuf },
    /// The local quiver (Q_xi, d_xi, n_xi) of a polystable type.
    LocalQuiver {
        file: PathBuf,
        /// A summand as multiplicity:entries, e.g. `--part 1:1,1,0`.
        /// Repeat once per summand.
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
    },
    /// Run the randomized cross-validation suite.
    Selftest {
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursion,
    Summation,
    Series,
    Multipartitions,
    Cells,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output {
        machine: cli.machine,
        quiet: cli.quiet,
    };
    match run(cli.command, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse { .. } => 2,
                Error::Input(_)
                | Error::Precondition(_)
                | Error::UndefinedSlope
                | Error::InfeasibleType(_) => 4,
                Error::Divisibility(_) | Error::Internal(_) => 1,
            };
            ExitCode::from(code)
        }
    }
}

struct Output {
    machine: bool,
    quiet: bool,
}

impl Output {
    /// Informational line, suppressed by --quiet and in machine mode.
    fn info(&self, text: impl AsRef<str>) {
        if !self.machine && !self.quiet {
            println!("{}", text.as_ref());
        }
    }

    /// Result line: `key=value` in machine mode, the human text otherwise.
    fn result(&self, key: &str, machine_value: impl AsRef<str>, human: impl AsRef<str>) {
        if self.machine {
            println!("{key}={}", machine_value.as_ref());
        } else {
            println!("{}", human.as_ref());
        }
    }
}

/// Exponent:coefficient pairs in descending exponent order.
fn machine_poly(p: &PolyQ) -> String {
    p.terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(e, c)| format!("{e}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn machine_rational(f: &RationalFunctionQ) -> (String, String) {
    (machine_poly(f.numerator()), machine_poly(f.denominator()))
}

fn load(path: &PathBuf) -> Result<QuiverFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_quiver_file(&text)
}

fn parse_cap(spec: &str, len: usize) -> Result<DimVector, Error> {
    let entries: Result<Vec<u32>, _> = spec.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let entries = entries.map_err(|_| Error::Input(format!("cannot parse cap vector `{spec}`")))?;
    if entries.len() != len {
        return Err(Error::Input(format!(
            "cap vector needs {len} entries, got {}",
            entries.len()
        )));
    }
    Ok(DimVector::new(entries))
}

fn parse_part(spec: &str, len: usize) -> Result<(u32, DimVector), Error> {
    let (mult, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Input(format!("part `{spec}` is not multiplicity:entries")))?;
    let z = mult
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::Input(format!("bad multiplicity in part `{spec}`")))?;
    let entries: Result<Vec<u32>, _> = rest.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let entries = entries.map_err(|_| Error::Input(format!("bad entries in part `{spec}`")))?;
    if entries.len() != len {
        return Err(Error::Input(format!(
            "part `{spec}` needs {len} entries, got {}",
            entries.len()
        )));
    }
    Ok((z, DimVector::new(entries)))
}

fn require_trivial_theta(file: &QuiverFile) -> Result<(), Error> {
    if matches!(&file.theta, Some(t) if !t.is_zero()) {
        return Err(Error::Precondition(
            "this command is the theta = 0 specialization; drop the theta line or set it to zero"
                .into(),
        ));
    }
    Ok(())
}

fn run(command: Command, out: &Output) -> Result<ExitCode, Error> {
    match command {
        Command::Euler { file } => euler_cmd(&load(&file)?, out),
        Command::Pd { file } => pd_cmd(&load(&file)?, out),
        Command::Betti { file, method, cap } => betti_cmd(&load(&file)?, method, cap, out),
        Command::Hilb { file, list } => hilb_cmd(&load(&file)?, list, out),
        Command::Nonempty { file } => nonempty_cmd(&load(&file)?, out),
        Command::Cells { file } => cells_cmd(&load(&file)?, out),
        Command::Frame { file } => frame_cmd(&load(&file)?, out),
        Command::LocalQuiver { file, parts } => local_quiver_cmd(&load(&file)?, &parts, out),
        Command::Selftest { instances, seed } => selftest_cmd(instances, seed, out),
    }
}

fn euler_cmd(file: &QuiverFile, out: &Output) -> Result<ExitCode, Error> {
    let q = &file.quiver;
    let v = q.vertex_count();
    out.info("Euler form matrix <i,j>:");
    let mut rows = Vec::new();
    for i in 0..v {
        let row: Vec<String> = (0..v)
            .map(|j| {
                euler_form(q, &DimVector::unit(v, i), &DimVector::unit(v, j))
                    .map(|x| x.to_string())
                    .unwrap_or_default()
            })
            .collect();
        out.info(format!("  {}: {}", q.vertex_name(i), row.join(" ")));
        rows.push(row.join(","));
    }
    if out.machine {
        println!("matrix={}", rows.join(";"));
    }
    if let Some(d) = &file.d {
        let dd = euler_form(q, d, d)?;
        out.result("euler_dd", dd.to_string(), format!("<d,d> = {dd}"));
        let per_vertex: Vec<String> = (0..v)
            .map(|i| format!("{}", euler_form_vertex(q, d, i)))
            .collect();
        out.result(
            "euler_d_vertex",
            per_vertex.join(","),
            format!("<d,i> per vertex: {}", per_vertex.join(" ")),
        );
        if let Some(n) = &file.n {
            let dim = n.dot(d) as i64 - dd;
            out.result("dimension", dim.to_string(), format!("n.d - <d,d> = {dim}"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pd_cmd(file: &QuiverFile, out: &Output) -> Result<ExitCode, Error> {
    let d = file.require_d()?;
    let theta = file.theta_or_zero();
    let cache = PdCache::new();
    let value = p_d(&file.quiver, &theta, d, &cache)?;
    let admissible = admissible_decompositions(&theta, d)?.len();
    let semi = semi_admissible_decompositions(&theta, d)?.len();
    out.info(format!(
        "{admissible} admissible and {semi} semi-admissible decompositions of {d}"
    ));
    if out.machine {
        let (num, den) = machine_rational(&value);
        println!("pd_num={num}");
        println!("pd_den={den}");
    } else {
        println!("P_d = {value}");
    }
    Ok(ExitCode::SUCCESS)
}

fn compute_by_method(
    file: &QuiverFile,
    method: Method,
    cap: Option<&DimVector>,
    cache: &PdCache,
) -> Result<PolyQ, Error> {
    let q = &file.quiver;
    let d = file.require_d()?;
    let n = file.require_n()?;
    let theta = file.theta_or_zero();
    match method {
        Method::Recursion => smooth_model_poincare_recursion(q, &theta, d, n, cache),
        Method::Summation => smooth_model_poincare_summation(q, &theta, d, n),
        Method::Series => match cap {
            None => smooth_model_poincare_series(q, &theta, d, n, cache),
            Some(cap) => {
                if !d.le(cap) {
                    return Err(Error::Input(format!("cap {cap} does not dominate d = {d}")));
                }
                let class = SlopeClass::of(&theta, d)?;
                let mut map = quiver_moduli::betti::series_engine(q, &theta, class, cap, n, cache)?;
                map.remove(d).ok_or_else(|| {
                    Error::Internal(format!("series engine produced no coefficient at {d}"))
                })
            }
        },
        Method::Multipartitions => {
            require_trivial_theta(file)?;
            hilb_poincare_multipartitions(q, d, n)
        }
        Method::Cells => {
            require_trivial_theta(file)?;
            hilb_poincare_cells(q, d, n)
        }
        Method::All => unreachable!("expanded by the caller"),
    }
}

fn betti_cmd(
    file: &QuiverFile,
    method: Method,
    cap: Option<String>,
    out: &Output,
) -> Result<ExitCode, Error> {
    let cap = match cap {
        Some(spec) => Some(parse_cap(&spec, file.quiver.vertex_count())?),
        None => None,
    };
    let cache = PdCache::new();
    if method != Method::All {
        let poly = compute_by_method(file, method, cap.as_ref(), &cache)?;
        out.result("poly", machine_poly(&poly), format!("P = {poly}"));
        return Ok(ExitCode::SUCCESS);
    }
    let theta = file.theta_or_zero();
    let mut methods = vec![
        (Method::Recursion, "recursion"),
        (Method::Summation, "summation"),
        (Method::Series, "series"),
    ];
    if theta.is_zero() {
        methods.push((Method::Multipartitions, "multipartitions"));
        methods.push((Method::Cells, "cells"));
    }
    let mut results = Vec::new();
    for (m, name) in methods {
        let poly = compute_by_method(file, m, cap.as_ref(), &cache)?;
        if out.machine {
            println!("{name}={}", machine_poly(&poly));
        } else {
            out.info(format!("method {name}: {poly}"));
        }
        results.push((name, poly));
    }
    let first = results[0].1.clone();
    if results.iter().any(|(_, p)| p != &first) {
        for (name, p) in &results {
            eprintln!("disagreement: {name} = {p}");
        }
        return Ok(ExitCode::from(3));
    }
    out.result("poly", machine_poly(&first), format!("P = {first}"));
    if first.is_zero() {
        out.result("empty", "true", "the moduli space is empty");
    }
    Ok(ExitCode::SUCCESS)
}

fn hilb_cmd(file: &QuiverFile, list: bool, out: &Output) -> Result<ExitCode, Error> {
    require_trivial_theta(file)?;
    let q = &file.quiver;
    let d = file.require_d()?;
    let n = file.require_n()?;
    let nonempty = hilb_nonempty(q, d, n)?;
    out.result(
        "hilb_nonempty",
        nonempty.to_string(),
        format!(
            "hilbert scheme: {}",
            if nonempty { "nonempty" } else { "empty" }
        ),
    );
    let set = multipartitions(q, d, n)?;
    out.result(
        "multipartition_count",
        set.len().to_string(),
        format!("|S_(d,n)| = {}", set.len()),
    );
    if list {
        for mp in &set {
            let human = mp.display();
            out.result("multipartition", human.replace(' ', ""), human);
        }
    }
    let poly = hilb_poincare_multipartitions(q, d, n)?;
    out.result("poly", machine_poly(&poly), format!("P = {poly}"));
    Ok(ExitCode::SUCCESS)
}

fn nonempty_cmd(file: &QuiverFile, out: &Output) -> Result<ExitCode, Error> {
    let q = &file.quiver;
    let d = file.require_d()?;
    let theta = file.theta_or_zero();
    let cache = SstCache::new();
    let sst = sst_nonempty(q, &theta, d, &cache)?;
    out.result(
        "sst_nonempty",
        sst.to_string(),
        format!(
            "semistable moduli: {}",
            if sst { "nonempty" } else { "empty" }
        ),
    );
    if theta.is_zero() {
        if let Some(n) = &file.n {
            let hilb = hilb_nonempty(q, d, n)?;
            out.result(
                "hilb_nonempty",
                hilb.to_string(),
                format!(
                    "hilbert scheme: {}",
                    if hilb { "nonempty" } else { "empty" }
                ),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cells_cmd(file: &QuiverFile, out: &Output) -> Result<ExitCode, Error> {
    require_trivial_theta(file)?;
    let q = &file.quiver;
    let d = file.require_d()?;
    let n = file.require_n()?;
    let report = cell_report(q, d, n)?;
    out.info(format!("cells of the hilbert scheme at d = {d}, n = {n}:"));
    let mut poly = PolyQ::zero();
    for (row, cell) in report.iter().enumerate() {
        let conditions: Vec<String> = cell
            .relations
            .iter()
            .filter(|r| !r.vacuous)
            .map(|r| r.display(q))
            .collect();
        if out.machine {
            println!(
                "cell={}|{}|{}|{}",
                cell.forest.display(),
                conditions.join(";"),
                cell.multipartition.display().replace(' ', ""),
                cell.dimension
            );
        } else {
            println!(
                "{:3} | {} | {} | {} | dim {}",
                row + 1,
                cell.forest.display(),
                conditions.join(", "),
                cell.multipartition.display(),
                cell.dimension
            );
        }
        poly = &poly + &PolyQ::q_power(cell.dimension as usize);
    }
    out.result(
        "count",
        report.len().to_string(),
        format!("total {} cells", report.len()),
    );
    out.result("poly", machine_poly(&poly), format!("P = {poly}"));
    Ok(ExitCode::SUCCESS)
}

fn frame_cmd(file: &QuiverFile, out: &Output) -> Result<ExitCode, Error> {
    let q = &file.quiver;
    let d = file.require_d()?;
    let n = file.require_n()?;
    let theta = file.theta_or_zero();
    let datum = frame(q, d, &theta, n)?;
    let qh = datum.extended_quiver();
    if out.machine {
        println!("vertices={}", qh.vertex_names().join(","));
        let arrows: Vec<String> = qh
            .arrows()
            .iter()
            .map(|a| format!("{}>{}", qh.vertex_name(a.source), qh.vertex_name(a.target)))
            .collect();
        println!("arrows={}", arrows.join(","));
        println!("dhat={}", datum.extended_dim());
        println!("coprime={}", datum.extended_is_coprime()?);
    } else {
        out.info("framed quiver (quiver file format):");
        for name in qh.vertex_names() {
            println!("vertex {name}");
        }
        for a in qh.arrows() {
            println!(
                "arrow {} {}",
                qh.vertex_name(a.source),
                qh.vertex_name(a.target)
            );
        }
        println!("# d^ = {}", datum.extended_dim());
        println!("# d^ coprime for theta^: {}", datum.extended_is_coprime()?);
    }
    Ok(ExitCode::SUCCESS)
}

fn local_quiver_cmd(
    file: &QuiverFile,
    part_specs: &[String],
    out: &Output,
) -> Result<ExitCode, Error> {
    let q = &file.quiver;
    let n = file.require_n()?;
    let v = q.vertex_count();
    let mut parts = Vec::new();
    let mut mults = Vec::new();
    for spec in part_specs {
        let (z, part) = parse_part(spec, v)?;
        mults.push(z);
        parts.push(part);
    }
    let xi = PolystableType::new(parts, mults)?;
    if let Some(d) = &file.d {
        if &xi.ambient() != d {
            return Err(Error::Input(format!(
                "polystable type sums to {}, but d = {d}",
                xi.ambient()
            )));
        }
    }
    let (local, d_xi, n_xi) = local_quiver(q, n, &xi)?;
    if out.machine {
        let arrows: Vec<String> = local
            .arrows()
            .iter()
            .map(|a| format!("{}>{}", a.source + 1, a.target + 1))
            .collect();
        println!("vertices={}", local.vertex_count());
        println!("arrows={}", arrows.join(","));
        println!("d_xi={d_xi}");
        println!("n_xi={n_xi}");
    } else {
        out.info("local quiver (quiver file format):");
        for name in local.vertex_names() {
            println!("vertex {name}");
        }
        for a in local.arrows() {
            println!(
                "arrow {} {}",
                local.vertex_name(a.source),
                local.vertex_name(a.target)
            );
        }
        println!("d {}", join_entries(&d_xi));
        println!("n {}", join_entries(&n_xi));
    }
    Ok(ExitCode::SUCCESS)
}

fn join_entries(d: &DimVector) -> String {
    d.entries()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn selftest_cmd(instances: usize, seed: u64, out: &Output) -> Result<ExitCode, Error> {
    let cfg = SuiteConfig {
        instances,
        seed,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    out.result(
        "engine_agreements",
        report.engine_agreements.to_string(),
        format!(
            "engine agreement: {}/{} instances",
            report.engine_agreements, report.instances
        ),
    );
    out.result(
        "coprime_identities",
        report.coprime_identities.to_string(),
        format!(
            "coprime bundle identity: {} coprime instances",
            report.coprime_identities
        ),
    );
    out.result(
        "structural_checks",
        report.structural_law_checks.to_string(),
        format!(
            "theta = 0 structural laws: {} cells over {} instances",
            report.structural_law_checks, report.trivial_theta_instances
        ),
    );
    let series = run_series_identity(20, 12, seed ^ 0xabcd)?;
    out.result(
        "series_identity",
        format!("{}", series.instances - series.failures.len()),
        format!(
            "series identity through q^-12: {}/{} instances",
            series.instances - series.failures.len(),
            series.instances
        ),
    );
    let mut ok = true;
    for failure in report.failures.iter().chain(&series.failures) {
        eprintln!("selftest failure: {failure}");
        ok = false;
    }
    if ok {
        out.result("selftest", "pass", "selftest: pass");
        Ok(ExitCode::SUCCESS)
    } else {
        out.result("selftest", "fail", "selftest: fail");
        Ok(ExitCode::from(1))
    }
}
