//! Command-line front end for the `gtlattice` library.
//!
//! Every subcommand builds the degree-`d` system, runs one pipeline stage,
//! and renders the result in the requested format.  Output is deterministic:
//! two runs with the same arguments produce byte-identical bytes.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 domain error (bad input),
//! 3 certification failure (including a failed `verify` run), 4 resource cap.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use gtlattice::{
    build_basis_with, minimal_generators_in_degree, quadric_generators, triple_to_monomial,
    verify_main_theorem, BasisConfig, BasisSystem, Caps, ConnectivityReport, Error, Int,
    MoveSet, SuitableBinomial, Triple, WMonomial, Wd,
};

#[derive(Parser)]
#[command(
    name = "gtlattice",
    version,
    about = "Monomial systems, lattice bases, and binomial generators for degree-d toric threefolds"
)]
struct Cli {
    /// Degree of the system (>= 4).
    #[arg(long, global = true, value_name = "N")]
    d: Option<i64>,
    /// Largest fiber degree examined by `verify` (2..=6).
    #[arg(long, global = true, default_value_t = 4, value_name = "N")]
    max_degree: usize,
    /// Output format; `mat` and `m2` apply to `export` (and `mat` to `basis`).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// JSON file replacing the special binomial chosen for selected anchors.
    #[arg(long, global = true, value_name = "PATH")]
    overrides: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// List the degree-d monomial system with exponent vectors.
    Monomials,
    /// Print the number of monomials in the system.
    Mu,
    /// Print the minimal binomial generating set of the lattice ideal.
    Generators,
    /// Build and certify the lattice basis of special binomials.
    Basis,
    /// Express a lattice vector, read from stdin, in the special basis.
    Reduce,
    /// Check fiber connectivity degree by degree.
    Verify,
    /// Emit a machine-readable artifact (json, mat, or m2).
    Export,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Mat,
    M2,
}

/// A terminal failure: message for stderr plus a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(context: &str, err: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("{context}: {err}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => 2,
            Error::Certification(_) => 3,
            Error::Resource(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gtlattice: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let d = cli
        .d
        .ok_or_else(|| Failure::domain("missing required option --d"))?;
    if d < 4 {
        return Err(Failure::domain("d must be >= 4"));
    }
    if !(2..=6).contains(&cli.max_degree) {
        return Err(Failure::domain("max-degree must be between 2 and 6"));
    }
    let wd = Wd::new(d)?;
    let caps = Caps {
        max_fiber_degree: cli.max_degree.max(4),
        ..Caps::default()
    };

    let output = match cli.command {
        Command::Monomials => cmd_monomials(&wd, cli.format)?,
        Command::Mu => cmd_mu(&wd, cli.format)?,
        Command::Generators => cmd_generators(&wd, &caps, cli.format)?,
        Command::Basis => cmd_basis(&wd, cli.overrides.as_deref(), cli.format)?,
        Command::Reduce => cmd_reduce(&wd, cli.overrides.as_deref(), cli.format)?,
        Command::Verify => {
            let report = verify_main_theorem(&wd, cli.max_degree, &caps)?;
            let rendered = render_verify(&report, cli.format)?;
            emit(cli.out.as_deref(), &rendered)?;
            if !report.passed {
                return Err(Failure {
                    code: 3,
                    message: format!("connectivity verification failed for d = {d}"),
                });
            }
            return Ok(());
        }
        Command::Export => cmd_export(&wd, &caps, cli.format)?,
    };
    emit(cli.out.as_deref(), &output)
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::io(&format!("cannot write {}", path.display()), e)),
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Mat => "mat",
        Format::M2 => "m2",
    };
    Failure::domain(format!("format {name} is not supported by {command}"))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_monomials(wd: &Wd, format: Format) -> Result<String, Failure> {
    let p = wd.params();
    match format {
        Format::Text => {
            let mut s = String::new();
            for &t in wd.triples() {
                let m = triple_to_monomial(p, t)?;
                let _ = writeln!(s, "w{t} = {m}");
            }
            let _ = writeln!(s, "mu = {}", wd.mu());
            Ok(s)
        }
        Format::Json => {
            let monomials: Vec<Value> = wd
                .triples()
                .iter()
                .map(|&t| {
                    let m = triple_to_monomial(p, t)?;
                    Ok(json!({
                        "triple": triple_json(t),
                        "exponents": [m.a, m.b, m.c, m.g],
                    }))
                })
                .collect::<Result<_, Error>>()?;
            Ok(pretty(json!({
                "schema": 1,
                "d": wd.d(),
                "mu": wd.mu(),
                "monomials": monomials,
            })))
        }
        f => Err(unsupported(f, "monomials")),
    }
}

fn cmd_mu(wd: &Wd, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(format!("{}\n", wd.mu())),
        Format::Json => Ok(pretty(json!({
            "schema": 1,
            "d": wd.d(),
            "mu": wd.mu(),
        }))),
        f => Err(unsupported(f, "mu")),
    }
}

/// Quadrics always, plus the degree-3 generators that the quadrics miss
/// (nonempty exactly when d is odd).
fn generating_set(wd: &Wd, caps: &Caps) -> Result<(Vec<SuitableBinomial>, Vec<SuitableBinomial>), Error> {
    let quadrics = quadric_generators(wd);
    let cubics = minimal_generators_in_degree(wd, 3, &MoveSet::new(quadrics.clone()), caps)?;
    Ok((quadrics, cubics))
}

fn cmd_generators(wd: &Wd, caps: &Caps, format: Format) -> Result<String, Failure> {
    let (quadrics, cubics) = generating_set(wd, caps)?;
    match format {
        Format::Text => {
            let mut s = String::new();
            for b in &quadrics {
                let _ = writeln!(s, "{b}");
            }
            for b in &cubics {
                let _ = writeln!(s, "{b}");
            }
            let _ = writeln!(s, "{} quadrics, {} cubics", quadrics.len(), cubics.len());
            Ok(s)
        }
        Format::Json => Ok(pretty(json!({
            "schema": 1,
            "d": wd.d(),
            "mu": wd.mu(),
            "quadrics": binomials_json(&quadrics),
            "cubics": binomials_json(&cubics),
        }))),
        f => Err(unsupported(f, "generators")),
    }
}

fn build_configured_basis(
    wd: &Wd,
    overrides: Option<&std::path::Path>,
) -> Result<BasisSystem, Failure> {
    let config = match overrides {
        None => BasisConfig::default(),
        Some(path) => parse_overrides(path)?,
    };
    Ok(build_basis_with(wd, &config)?)
}

fn cmd_basis(
    wd: &Wd,
    overrides: Option<&std::path::Path>,
    format: Format,
) -> Result<String, Failure> {
    let sys = build_configured_basis(wd, overrides)?;
    let m = sys.matrix();
    let snf = gtlattice::linalg::snf_invariant_factors(m);
    match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} x {}", m.rows(), m.cols());
            let anchors: Vec<String> = sys.anchors().iter().map(|t| t.to_string()).collect();
            let _ = writeln!(s, "anchors: {}", anchors.join(" "));
            for i in 0..m.rows() {
                let _ = writeln!(s, "{}", int_row(m.row_slice(i)));
            }
            let factors: Vec<String> = snf.iter().map(|f| f.to_string()).collect();
            let _ = writeln!(s, "SNF: {}", factors.join(" "));
            Ok(s)
        }
        Format::Json => Ok(pretty(json!({
            "schema": 1,
            "d": wd.d(),
            "anchors": sys.anchors().iter().map(|&t| triple_json(t)).collect::<Vec<_>>(),
            "matrix": matrix_json(m),
            "snf": snf.iter().map(int_json).collect::<Vec<_>>(),
        }))),
        Format::Mat => Ok(mat_format(m)),
        f => Err(unsupported(f, "basis")),
    }
}

fn cmd_reduce(
    wd: &Wd,
    overrides: Option<&std::path::Path>,
    format: Format,
) -> Result<String, Failure> {
    let mut input = String::new();
    std::io::stdin()
        .read_to_string(&mut input)
        .map_err(|e| Failure::io("cannot read stdin", e))?;
    let v: Vec<Int> = input
        .split_whitespace()
        .map(|tok| {
            tok.parse::<Int>()
                .map_err(|_| Failure::domain(format!("not an integer: {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != wd.mu() {
        return Err(Failure::domain(format!(
            "expected {} integers on stdin, got {}",
            wd.mu(),
            v.len()
        )));
    }
    let sys = build_configured_basis(wd, overrides)?;
    let coeffs = sys.reduce(&v)?;
    match format {
        Format::Text => Ok(format!("{}\n", int_row(&coeffs))),
        Format::Json => Ok(pretty(json!({
            "schema": 1,
            "d": wd.d(),
            "coefficients": coeffs.iter().map(int_json).collect::<Vec<_>>(),
        }))),
        f => Err(unsupported(f, "reduce")),
    }
}

fn cmd_export(wd: &Wd, caps: &Caps, format: Format) -> Result<String, Failure> {
    match format {
        Format::Mat => Ok(mat_format(&wd.exponent_matrix())),
        Format::M2 => m2_script(wd, caps),
        Format::Json => {
            let (quadrics, cubics) = generating_set(wd, caps)?;
            let sys = build_configured_basis(wd, None)?;
            Ok(pretty(json!({
                "schema": 1,
                "d": wd.d(),
                "mu": wd.mu(),
                "triples": wd.triples().iter().map(|&t| triple_json(t)).collect::<Vec<_>>(),
                "quadrics": binomials_json(&quadrics),
                "cubics": binomials_json(&cubics),
                "basis": {
                    "anchors": sys.anchors().iter().map(|&t| triple_json(t)).collect::<Vec<_>>(),
                    "matrix": matrix_json(sys.matrix()),
                },
            })))
        }
        f => Err(unsupported(f, "export")),
    }
}

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

fn render_verify(report: &ConnectivityReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(verify_text(report)),
        Format::Json => Ok(pretty(verify_json(report))),
        f => Err(unsupported(f, "verify")),
    }
}

fn verify_text(r: &ConnectivityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "d = {}, max degree = {}", r.d, r.max_degree);
    let _ = writeln!(s, "degree 2: {} quadric generators", r.quadrics.len());
    for summary in &r.degree_summaries {
        let _ = writeln!(
            s,
            "degree {}: {} fibers, {} disconnected, {} new generators",
            summary.degree, summary.fibers, summary.disconnected_fibers, summary.new_generators
        );
        if summary.degree == 3 {
            for fiber in &r.disconnected_cubic_fibers {
                let reps: Vec<String> =
                    fiber.representatives.iter().map(|m| m.to_string()).collect();
                let _ = writeln!(
                    s,
                    "  fiber (n={}, R={}, G={}, D={}): {} members in {} components: {}",
                    fiber.multidegree.n,
                    fiber.multidegree.r,
                    fiber.multidegree.gamma,
                    fiber.multidegree.delta,
                    fiber.size,
                    fiber.component_count,
                    reps.join(" | ")
                );
            }
        }
    }
    if r.d % 2 == 1 {
        let _ = writeln!(s, "closed-form degree-3 comparison:");
        let _ = writeln!(s, "  computed only: {}", monomial_list(&r.computed_only));
        let _ = writeln!(s, "  listed only: {}", monomial_list(&r.m3_only));
    }
    if r.passed {
        if r.d % 2 == 0 {
            let _ = writeln!(s, "PASS: all fibers connected (quadrics)");
        } else {
            let _ = writeln!(
                s,
                "PASS: obstructions confined to degree 3; quadrics and cubics connect degrees 4..{}",
                r.max_degree
            );
        }
    } else {
        let _ = writeln!(s, "FAIL: {}", verify_failure_reason(r));
    }
    s
}

fn verify_failure_reason(r: &ConnectivityReport) -> String {
    if r.d % 2 == 0 {
        let degrees: Vec<String> = r
            .degree_summaries
            .iter()
            .filter(|s| s.disconnected_fibers > 0)
            .map(|s| s.degree.to_string())
            .collect();
        format!(
            "quadrics leave disconnected fibers in degrees {}",
            degrees.join(", ")
        )
    } else if r
        .degree_summaries
        .iter()
        .any(|s| s.degree > 3 && s.disconnected_fibers > 0)
    {
        "quadrics and cubics leave disconnected fibers beyond degree 3".into()
    } else {
        "no degree-3 obstruction found, but d is odd".into()
    }
}

fn monomial_list(ms: &[WMonomial]) -> String {
    if ms.is_empty() {
        "(none)".into()
    } else {
        let items: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        items.join(", ")
    }
}

fn verify_json(r: &ConnectivityReport) -> Value {
    let degrees: Vec<Value> = r
        .degree_summaries
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "fibers": s.fibers,
                "disconnected": s.disconnected_fibers,
                "new_generators": s.new_generators,
            })
        })
        .collect();
    let fibers: Vec<Value> = r
        .disconnected_cubic_fibers
        .iter()
        .map(|f| {
            json!({
                "multidegree": [f.multidegree.n, f.multidegree.r, f.multidegree.gamma, f.multidegree.delta],
                "size": f.size,
                "components": f.component_count,
                "representatives": f.representatives.iter().map(monomial_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "schema": 1,
        "d": r.d,
        "max_degree": r.max_degree,
        "passed": r.passed,
        "quadrics": r.quadrics.len(),
        "cubic_generators": binomials_json(&r.cubic_generators),
        "degrees": degrees,
        "disconnected_cubic_fibers": fibers,
        "m3_comparison": {
            "computed_only": r.computed_only.iter().map(monomial_json).collect::<Vec<_>>(),
            "listed_only": r.m3_only.iter().map(monomial_json).collect::<Vec<_>>(),
        },
    })
}

/// Macaulay2 script: the ambient ring, the computed generating set, and a
/// resolution command, with a comment header mapping every variable.
fn m2_script(wd: &Wd, caps: &Caps) -> Result<String, Failure> {
    let (quadrics, cubics) = generating_set(wd, caps)?;
    let p = wd.params();
    let mu = wd.mu();
    let mut s = String::new();
    let _ = writeln!(s, "-- degree {} system, {} variables", wd.d(), mu);
    for (i, &t) in wd.triples().iter().enumerate() {
        let m = triple_to_monomial(p, t)?;
        let _ = writeln!(s, "-- w_{i} = w{t} = {m}");
    }
    let _ = writeln!(s, "R = QQ[w_0..w_{}];", mu - 1);
    let _ = writeln!(s, "I = ideal(");
    let terms: Vec<String> = quadrics
        .iter()
        .chain(&cubics)
        .map(|b| format!("  {}-{}", m2_monomial(wd, b.plus()), m2_monomial(wd, b.minus())))
        .collect();
    let _ = writeln!(s, "{}", terms.join(",\n"));
    let _ = writeln!(s, ");");
    let _ = writeln!(s, "betti res I");
    Ok(s)
}

fn m2_monomial(wd: &Wd, m: &WMonomial) -> String {
    let mut factors: Vec<String> = Vec::new();
    let mut i = 0;
    let ts = m.triples();
    while i < ts.len() {
        let mut e = 1;
        while i + e < ts.len() && ts[i + e] == ts[i] {
            e += 1;
        }
        let idx = wd.index_of(ts[i]).expect("monomial triple outside the system");
        if e == 1 {
            factors.push(format!("w_{idx}"));
        } else {
            factors.push(format!("w_{idx}^{e}"));
        }
        i += e;
    }
    factors.join("*")
}

/// Plain matrix interchange: a "rows cols" header line, then one
/// space-separated integer row per line.
fn mat_format(m: &gtlattice::IntMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let _ = writeln!(s, "{}", int_row(m.row_slice(i)));
    }
    s
}

fn int_row(row: &[Int]) -> String {
    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
    cells.join(" ")
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

fn triple_json(t: Triple) -> Value {
    json!([t.r, t.gamma, t.delta])
}

fn monomial_json(m: &WMonomial) -> Value {
    Value::Array(m.triples().iter().map(|&t| triple_json(t)).collect())
}

fn binomials_json(bs: &[SuitableBinomial]) -> Vec<Value> {
    bs.iter()
        .map(|b| {
            json!({
                "plus": monomial_json(b.plus()),
                "minus": monomial_json(b.minus()),
            })
        })
        .collect()
}

fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn matrix_json(m: &gtlattice::IntMatrix) -> Vec<Value> {
    (0..m.rows())
        .map(|i| Value::Array(m.row_slice(i).iter().map(int_json).collect()))
        .collect()
}

// ---------------------------------------------------------------------------
// Override file parsing
// ---------------------------------------------------------------------------

/// Override files map anchor keys `"r,gamma,delta"` to a replacement special
/// binomial: `{"1,0,0": {"plus": [[1,0,0],[1,0,2]], "minus": [[1,0,1],[1,0,1]]}}`.
fn parse_overrides(path: &std::path::Path) -> Result<BasisConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::io(&format!("cannot read {}", path.display()), e))?;
    let root: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::domain(format!("{}: invalid JSON: {e}", path.display())))?;
    let Value::Object(entries) = root else {
        return Err(Failure::domain(format!(
            "{}: expected a JSON object keyed by anchor",
            path.display()
        )));
    };
    let mut overrides = BTreeMap::new();
    for (key, entry) in entries {
        let anchor = parse_anchor_key(&key)
            .ok_or_else(|| Failure::domain(format!("invalid anchor key {key:?}")))?;
        let plus = override_monomial(&entry, "plus")
            .map_err(|e| Failure::domain(format!("anchor {key:?}: {e}")))?;
        let minus = override_monomial(&entry, "minus")
            .map_err(|e| Failure::domain(format!("anchor {key:?}: {e}")))?;
        // Validate suitability eagerly so the error names the anchor.
        SuitableBinomial::new(plus.clone(), minus.clone())
            .map_err(|e| Failure::domain(format!("anchor {key:?}: {e}")))?;
        overrides.insert(anchor, (plus, minus));
    }
    Ok(BasisConfig { overrides })
}

fn parse_anchor_key(key: &str) -> Option<Triple> {
    let parts: Vec<i64> = key
        .split(',')
        .map(|p| p.trim().parse::<i64>().ok())
        .collect::<Option<_>>()?;
    if parts.len() != 3 {
        return None;
    }
    Some(Triple::new(parts[0], parts[1], parts[2]))
}

fn override_monomial(entry: &Value, side: &str) -> Result<WMonomial, String> {
    let arr = entry
        .get(side)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("missing array field {side:?}"))?;
    let mut triples = Vec::with_capacity(arr.len());
    for item in arr {
        let coords: Option<Vec<i64>> = item
            .as_array()
            .map(|xs| xs.iter().map(Value::as_i64).collect::<Option<_>>())
            .flatten();
        match coords.as_deref() {
            Some([r, g, dl]) => triples.push(Triple::new(*r, *g, *dl)),
            _ => return Err(format!("{side:?} entries must be [r, gamma, delta] triples")),
        }
    }
    if triples.is_empty() {
        return Err(format!("{side:?} must not be empty"));
    }
    Ok(WMonomial::new(triples))
}
