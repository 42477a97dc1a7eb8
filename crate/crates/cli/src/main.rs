use std::cmp::Reverse;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use primform::algebra::parse_monomial;
use primform::catalog::CATALOG_ENV;
use primform::mirror::equivalent_up_to_permutation;
use primform::{
    compute, diagonal_symmetries, transpose, verify_record, Catalog, InvertiblePolynomial, MilnorData, Monomial,
    PrepotentialRecord, Rational, Term, WeightedPolynomial,
};

#[derive(Parser)]
#[command(name = "primform", version, about = "Primitive forms and prepotentials of weighted homogeneous singularities")]
struct Cli {
    /// Catalog file used in place of the bundled one.
    #[arg(long, global = true, env = CATALOG_ENV)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, central charge, Milnor number, basis and residue pairing.
    Info(Target),
    /// Solve for the primitive form and write the prepotential record.
    Compute {
        #[command(flatten)]
        target: Target,
        /// Truncation order in the unfolding parameters.
        #[arg(long, default_value_t = 4)]
        order: u32,
        /// Comma-separated monomial basis of the Jacobian algebra, e.g. "1,y,x".
        #[arg(long)]
        basis: Option<String>,
    },
    /// Re-check a stored prepotential record.
    Verify { path: PathBuf },
    /// Berglund-Hubsch transpose and the diagonal symmetry group.
    Mirror(Target),
    /// Check every catalog entry against its expected values.
    CatalogSelftest,
}

#[derive(Args)]
struct Target {
    /// Catalog name such as E12 or U12.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    singularity: Option<String>,
    /// Inline polynomial, e.g. "x^3 + y^7".
    #[arg(long)]
    poly: Option<String>,
    /// Comma-separated variable order for --poly.
    #[arg(long, requires = "poly")]
    vars: Option<String>,
    /// Comma-separated weights for --poly; inferred when omitted.
    #[arg(long, requires = "poly")]
    weights: Option<String>,
}

fn split(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

struct Resolved {
    name: String,
    f: WeightedPolynomial,
    basis: Option<Vec<Monomial>>,
}

fn resolve(target: &Target, catalog: &Catalog) -> Result<Resolved> {
    if let Some(name) = &target.singularity {
        let e = catalog.get(name).ok_or_else(|| anyhow!("unknown singularity {name}"))?;
        return Ok(Resolved { name: e.name.clone(), f: e.weighted()?, basis: e.explicit_basis()? });
    }
    let expr = target.poly.as_deref().expect("clap enforces --singularity or --poly");
    let vars = target.vars.as_deref().map(split);
    let weights = target
        .weights
        .as_deref()
        .map(|w| split(w).iter().map(|q| q.parse::<Rational>()).collect::<primform::Result<Vec<_>>>())
        .transpose()?;
    let f = WeightedPolynomial::parse(expr, vars, weights)?;
    Ok(Resolved { name: f.display(), f, basis: None })
}

fn emit(cli: &Cli, json: &impl Serialize, text: impl FnOnce() -> String) -> Result<()> {
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Text => text(),
    };
    match &cli.output {
        Some(p) => std::fs::write(p, out).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn rationals(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct InfoRecord {
    name: String,
    variables: Vec<String>,
    weights: Vec<Rational>,
    polynomial: String,
    central_charge: Rational,
    milnor_number: usize,
    basis: Vec<String>,
    degrees: Vec<Rational>,
    socle: String,
    eta: Vec<Vec<Rational>>,
}

fn info_record(name: &str, d: &MilnorData) -> InfoRecord {
    let f = d.polynomial();
    InfoRecord {
        name: name.to_string(),
        variables: f.variables().to_vec(),
        weights: f.weights().to_vec(),
        polynomial: f.display(),
        central_charge: d.central_charge().clone(),
        milnor_number: d.mu(),
        basis: d.basis_names(),
        degrees: d.degrees().to_vec(),
        socle: d.socle().display_with(f.variables()),
        eta: d.eta().to_vec(),
    }
}

fn info_text(r: &InfoRecord) -> String {
    let mut s = format!("{}: {}\n", r.name, r.polynomial);
    s += &format!("weights        {}\n", rationals(&r.weights));
    s += &format!("central charge {}\n", r.central_charge);
    s += &format!("Milnor number  {}\n", r.milnor_number);
    s += &format!("basis          {}\n", r.basis.join(", "));
    s += &format!("degrees        {}\n", rationals(&r.degrees));
    s += &format!("socle          {}\n", r.socle);
    for (i, row) in r.eta.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() && i <= j {
                s += &format!("eta({}, {}) = {v}\n", r.basis[i], r.basis[j]);
            }
        }
    }
    s
}

/// Graded-lex: by total degree, then larger exponents of earlier variables first.
fn sorted_terms(terms: &[Term]) -> Vec<&Term> {
    let mut v: Vec<&Term> = terms.iter().collect();
    v.sort_by_key(|t| (t.exponents.iter().sum::<u32>(), Reverse(t.exponents.clone())));
    v
}

fn term_text(t: &Term) -> String {
    let mono: Vec<String> = t
        .exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
        .collect();
    format!("{} {}", t.coeff, mono.join("*"))
}

fn record_text(r: &PrepotentialRecord) -> String {
    let mut s = format!("{} at order {}\n", r.singularity, r.order);
    s += &format!("basis        {}\n", r.basis.join(", "));
    s += &format!("flat degrees {}\n", rationals(&r.flat_degrees));
    s += &format!("F0 ({} terms)\n", r.terms.len());
    for t in sorted_terms(&r.terms) {
        s += &format!("  {}\n", term_text(t));
    }
    s += &format!(
        "checks: wdvv {:?}, euler {:?}, integrability {:?}\n",
        r.checks.wdvv, r.checks.euler, r.checks.integrability
    );
    s
}

#[derive(Serialize)]
struct MirrorRecord {
    name: String,
    #[serde(rename = "W")]
    w: String,
    #[serde(rename = "E_W")]
    matrix: Vec<Vec<u32>>,
    #[serde(rename = "W_T")]
    w_t: String,
    transpose_name: Option<String>,
    weights: Vec<Rational>,
    transpose_weights: Vec<Rational>,
    central_charge: Rational,
    aut_order: u64,
    generators: Vec<Vec<Rational>>,
    #[serde(rename = "j_W")]
    j: Vec<Rational>,
}

fn catalog_match(catalog: &Catalog, w: &InvertiblePolynomial) -> Option<String> {
    catalog.entries.iter().find_map(|e| {
        let other = InvertiblePolynomial::from_weighted(&e.weighted().ok()?).ok()?;
        equivalent_up_to_permutation(&other, w).then(|| e.name.clone())
    })
}

fn mirror_record(name: &str, f: &WeightedPolynomial, catalog: &Catalog) -> Result<MirrorRecord> {
    let w = InvertiblePolynomial::from_weighted(f)?;
    let wt = transpose(&w);
    let g = diagonal_symmetries(&w)?;
    let ft = wt.to_weighted()?;
    Ok(MirrorRecord {
        name: name.to_string(),
        w: w.display(),
        matrix: w.matrix().to_vec(),
        w_t: wt.display(),
        transpose_name: catalog_match(catalog, &wt),
        weights: f.weights().to_vec(),
        transpose_weights: ft.weights().to_vec(),
        central_charge: f.central_charge(),
        aut_order: g.order,
        generators: g.generators,
        j: g.j,
    })
}

fn mirror_text(r: &MirrorRecord) -> String {
    let mut s = format!("{}: W = {}\n", r.name, r.w);
    s += &format!("E_W            {:?}\n", r.matrix);
    s += &format!("W^T            {}", r.w_t);
    if let Some(n) = &r.transpose_name {
        s += &format!(" ({n})");
    }
    s += "\n";
    s += &format!("weights        {}\n", rationals(&r.weights));
    s += &format!("central charge {}\n", r.central_charge);
    s += &format!("|Aut(W)|       {}\n", r.aut_order);
    for g in &r.generators {
        s += &format!("generator      ({})\n", rationals(g));
    }
    s += &format!("j_W            ({})\n", rationals(&r.j));
    s
}

#[derive(Serialize)]
struct SelftestLine {
    name: String,
    ok: bool,
    problems: Vec<String>,
}

fn selftest(catalog: &Catalog) -> Vec<SelftestLine> {
    catalog
        .entries
        .iter()
        .map(|e| {
            let mut problems = Vec::new();
            let check = || -> Result<Vec<String>> {
                let mut p = Vec::new();
                let d = e.milnor()?;
                let Some(x) = &e.expected else { return Ok(p) };
                if let Some(c) = &x.central_charge {
                    if c != d.central_charge() {
                        p.push(format!("central charge {} != expected {c}", d.central_charge()));
                    }
                }
                if let Some(mu) = x.milnor_number {
                    if mu != d.mu() {
                        p.push(format!("Milnor number {} != expected {mu}", d.mu()));
                    }
                }
                if let Some(t) = &x.transpose {
                    let w = InvertiblePolynomial::from_weighted(d.polynomial())?;
                    let got = catalog_match(catalog, &transpose(&w));
                    if got.as_deref() != Some(t.as_str()) {
                        p.push(format!("transpose {got:?} != expected {t}"));
                    }
                }
                Ok(p)
            };
            match check() {
                Ok(p) => problems.extend(p),
                Err(err) => problems.push(err.to_string()),
            }
            SelftestLine { name: e.name.clone(), ok: problems.is_empty(), problems }
        })
        .collect()
}

fn load_record(path: &Path) -> Result<PrepotentialRecord> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Ok(true) when every check passed.
fn run(cli: &Cli) -> Result<bool> {
    let catalog = Catalog::load(cli.catalog.as_deref())?;
    match &cli.command {
        Command::Info(target) => {
            let r = resolve(target, &catalog)?;
            let d = match r.basis {
                Some(b) => MilnorData::with_basis(&r.f, b)?,
                None => MilnorData::new(&r.f)?,
            };
            let rec = info_record(&r.name, &d);
            emit(cli, &rec, || info_text(&rec))?;
            Ok(true)
        }
        Command::Compute { target, order, basis } => {
            let mut r = resolve(target, &catalog)?;
            if let Some(b) = basis {
                let vars = r.f.variables().to_vec();
                r.basis = Some(split(b).iter().map(|m| parse_monomial(m, &vars)).collect::<primform::Result<_>>()?);
            }
            let c = compute(&r.name, &r.f, r.basis, *order)?;
            let rec = c.record();
            emit(cli, &rec, || record_text(&rec))?;
            if !rec.checks.all_passed() {
                eprintln!("checks failed: {:?}", rec.checks);
            }
            Ok(rec.checks.all_passed())
        }
        Command::Verify { path } => {
            let rec = load_record(path)?;
            let report = verify_record(&rec)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(cli, &report, || {
                let c = &report.checks;
                let mut s = format!("wdvv {:?}\neuler {:?}\nintegrability {:?}\n", c.wdvv, c.euler, c.integrability);
                for d in &report.details {
                    s += &format!("  {d}\n");
                }
                s
            })?;
            Ok(report.passed())
        }
        Command::Mirror(target) => {
            let r = resolve(target, &catalog)?;
            let rec = mirror_record(&r.name, &r.f, &catalog)?;
            emit(cli, &rec, || mirror_text(&rec))?;
            Ok(true)
        }
        Command::CatalogSelftest => {
            let lines = selftest(&catalog);
            let ok = lines.iter().all(|l| l.ok);
            emit(cli, &lines, || {
                lines
                    .iter()
                    .map(|l| {
                        let status = if l.ok { "ok" } else { "FAIL" };
                        let mut line = format!("{:<5} {status}", l.name);
                        if !l.problems.is_empty() {
                            line += &format!(" {}", l.problems.join("; "));
                        }
                        line + "\n"
                    })
                    .collect()
            })?;
            if lines.is_empty() {
                bail!("catalog is empty");
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
