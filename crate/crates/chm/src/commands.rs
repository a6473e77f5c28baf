//! Command-line grammar and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use chm_core::census::{classify_census, Alphabet, CensusOptions, ClassLabel, DEFAULT_BUDGET};
use chm_core::equiv::{complex_equivalent, fingerprint, permutation_equivalent, Equivalence, EquivalenceCertificate, Monomial};
use chm_core::groupmap::{self, complete_rows, pairwise_admissibility, GroupMap, ResidueRow};
use chm_core::matrix::{Matrix6, N};
use chm_core::scan::{
    find_3x3_hadamard_submatrix, find_pattern_1oo2, find_rank1_2x3, h2_reducible, mub_obstruction, MubVerdict, ScanWitness,
};
use chm_core::torus::{
    classify_all, classify_array, common_solutions, CaseLabel, Classification, CommonVerdict, CountArray, Structure, Tag, Witness,
};
use chm_core::{catalog, CatalogName, UnitValue};

use crate::matfile::{format_matrix, format_token, parse_matrix, parse_token};
use crate::report::{Format, Report, Status};
use crate::workers;

#[derive(Debug, Parser)]
#[command(name = "chm", version, about = "Exact checks for order-6 complex Hadamard matrices with few distinct entries")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hadamard property of a matrix file.
    Verify { file: PathBuf },
    /// Structural scans; all of them when no flag is given.
    Scan(ScanArgs),
    /// Decide (complex) equivalence of two matrix files.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "complex")]
        mode: EquivArg,
    },
    /// Enumerate all CHMs over a finite alphabet.
    Census {
        /// Comma-separated entry tokens, e.g. "1,w,w2".
        #[arg(long)]
        alphabet: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Enumerate and classify count arrays.
    Arrays {
        #[arg(long)]
        structure: String,
        #[arg(long, value_enum, default_value = "all")]
        list: ListArg,
    },
    /// Common solutions of two count arrays.
    Pairs {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Residue-map row completion.
    Groupmap(GroupmapArgs),
    /// Monochromatic triangles in every 2-colouring of K_n.
    Ramsey {
        #[arg(long)]
        n: usize,
    },
    /// Print or write a built-in matrix.
    Catalog {
        /// S6_0, S6_1, H1, HAB or F6.
        name: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub rank1: bool,
    #[arg(long)]
    pub h3: bool,
    #[arg(long)]
    pub h2: bool,
    #[arg(long)]
    pub pattern1oo2: bool,
}

#[derive(Debug, Args)]
pub struct GroupmapArgs {
    #[arg(long = "mod")]
    pub modulus: u8,
    /// Fixed residue rows, `;`-separated, entries `,`-separated.
    #[arg(long)]
    pub fixed: String,
    /// Admissible inner-product multisets, same syntax.
    #[arg(long)]
    pub target: String,
    /// Multisets new rows are drawn from; defaults to the targets.
    #[arg(long)]
    pub rows: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EquivArg {
    Complex,
    Perm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ListArg {
    All,
    Nonsimple,
}

pub fn load_matrix(path: &Path) -> anyhow::Result<Matrix6> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn matrix_json(m: &Matrix6) -> Value {
    Value::Array((0..N).map(|i| Value::String(m.row(i).iter().map(format_token).collect::<Vec<_>>().join(" "))).collect())
}

fn tokens(v: &[UnitValue]) -> Vec<String> {
    v.iter().map(format_token).collect()
}

fn witness_json(w: &Option<ScanWitness>) -> Value {
    match w {
        Some(w) => json!({ "rows": w.rows, "cols": w.cols }),
        None => Value::Null,
    }
}

fn monomial_json(m: &Monomial) -> Value {
    json!({ "perm": m.perm, "phases": tokens(&m.phases) })
}

fn certificate_json(c: &EquivalenceCertificate, verified: bool) -> Value {
    json!({ "left": monomial_json(&c.left), "right": monomial_json(&c.right), "verified": verified })
}

fn parse_array(structure: Structure, s: &str) -> anyhow::Result<CountArray> {
    let n: Vec<u8> = s
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|t| t.trim().parse::<u8>().map_err(|_| anyhow!("malformed array `{s}`")))
        .collect::<anyhow::Result<_>>()?;
    Ok(CountArray::new(structure, &n)?)
}

fn parse_rows(s: &str) -> anyhow::Result<Vec<ResidueRow>> {
    s.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            let v: Vec<u8> = r
                .trim()
                .trim_start_matches('[')
                .trim_end_matches(']')
                .split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| anyhow!("malformed residue row `{r}`")))
                .collect::<anyhow::Result<_>>()?;
            v.try_into().map_err(|_| anyhow!("residue rows have six entries: `{r}`"))
        })
        .collect()
}

fn witness_value(w: &Option<Witness>) -> Value {
    match w {
        Some(w) => json!({
            "source": format!("{:?}", w.source).to_lowercase(),
            "angles": w.angles,
            "residual": w.residual,
        }),
        None => Value::Null,
    }
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "array": c.array.counts(),
        "original": chm_core::torus::original_equation(&c.array).to_string(),
        "pending": c.pending.terms.to_string(),
        "amount": c.pending.amount,
        "label": c.label.to_string(),
        "solutions": c.solutions.len(),
        "witness": witness_value(&c.witness),
        "rank1_excluded": c.rank1_excluded,
    })
}

fn group_key(label: &CaseLabel) -> Option<String> {
    match label {
        CaseLabel::NonSimple(Tag::N { group, .. }) => Some(format!("N.{group}")),
        CaseLabel::NonSimple(Tag::N5) => Some("N.5".into()),
        CaseLabel::NonSimple(Tag::Unlisted) => Some("unlisted".into()),
        CaseLabel::NonSimple(t) => Some(t.to_string()),
        _ => None,
    }
}

fn cmd_verify(r: &mut Report, file: &Path) -> anyhow::Result<()> {
    let m = load_matrix(file)?;
    let bad: Vec<[usize; 2]> = (0..N)
        .flat_map(|i| (i + 1..N).map(move |j| [i, j]))
        .filter(|&[i, j]| !m.row_inner_product(i, j).map(|s| s.is_zero()).unwrap_or(false))
        .collect();
    r.set("chm", bad.is_empty());
    r.set("mode", if m.is_exact() { "exact" } else { "float" });
    r.set("nonorthogonal_pairs", bad);
    if let Ok(d) = m.distinct_elements() {
        r.set("distinct", tokens(&d));
    }
    Ok(())
}

fn cmd_scan(r: &mut Report, a: &ScanArgs) -> anyhow::Result<()> {
    let m = load_matrix(&a.file)?;
    let all = !(a.rank1 || a.h3 || a.h2 || a.pattern1oo2);
    if all || a.rank1 {
        r.set("rank1_2x3", witness_json(&find_rank1_2x3(&m)));
    }
    if all || a.h3 {
        r.set("hadamard_3x3", witness_json(&find_3x3_hadamard_submatrix(&m)));
        let verdict = match mub_obstruction(&m) {
            MubVerdict::ExcludedBy3x3(_) => "excluded_by_3x3",
            MubVerdict::NoVerdict => "no_verdict",
        };
        r.set("mub_obstruction", verdict);
    }
    if all || a.h2 {
        let v = match h2_reducible(&m) {
            Some(c) => json!({
                "row_pairs": c.row_pairs,
                "col_pairs": c.col_pairs,
                "row_phases": tokens(&c.row_phases),
                "col_phases": tokens(&c.col_phases),
                "verified": c.verify(&m),
            }),
            None => Value::Null,
        };
        r.set("h2_certificate", v);
    }
    if all || a.pattern1oo2 {
        let v = match find_pattern_1oo2(&m) {
            Ok(w) => witness_json(&w),
            Err(e) => json!({ "error": e.to_string() }),
        };
        r.set("pattern_1oo2", v);
    }
    Ok(())
}

fn cmd_equiv(r: &mut Report, a: &Path, b: &Path, mode: EquivArg) -> anyhow::Result<()> {
    let (ma, mb) = (load_matrix(a)?, load_matrix(b)?);
    r.set("mode", if mode == EquivArg::Complex { "complex" } else { "perm" });
    r.set("fingerprint_equal", fingerprint(&ma) == fingerprint(&mb));
    match mode {
        EquivArg::Complex => match complex_equivalent(&ma, &mb) {
            Equivalence::Equivalent(c) => {
                r.set("equivalent", true).set("certificate", certificate_json(&c, c.verify(&ma, &mb)));
            }
            Equivalence::Inequivalent => {
                r.set("equivalent", false).set("certificate", Value::Null);
            }
            Equivalence::Advisory { equivalent } => {
                r.set("equivalent", equivalent).set("advisory", true).set("certificate", Value::Null);
            }
        },
        EquivArg::Perm => {
            let c = permutation_equivalent(&ma, &mb)?;
            r.set("equivalent", c.is_some());
            r.set("certificate", c.map(|c| certificate_json(&c, c.verify(&ma, &mb))).unwrap_or(Value::Null));
        }
    }
    Ok(())
}

pub fn parse_alphabet(s: &str) -> anyhow::Result<Alphabet> {
    let vals: Vec<UnitValue> =
        s.split(',').map(|t| parse_token(t.trim()).map_err(|e| anyhow!("alphabet: {e}"))).collect::<anyhow::Result<_>>()?;
    Ok(Alphabet::new(&vals)?)
}

fn cmd_census(r: &mut Report, alphabet: &str, budget: u64, timings: &mut Map<String, Value>) -> anyhow::Result<()> {
    let alpha = parse_alphabet(alphabet)?;
    let t = Instant::now();
    let rep = workers::census(&alpha, CensusOptions { budget, ..CensusOptions::default() }, workers::thread_count())?;
    timings.insert("search".into(), json!(t.elapsed().as_secs_f64() * 1e3));
    r.set("alphabet", tokens(&alpha.values()));
    r.set("count", rep.raw_count());
    r.set("nodes", rep.nodes);
    r.set("complete", rep.complete);
    if !rep.complete {
        r.status = Status::Incomplete;
        r.set("classes", Vec::<Value>::new());
        return Ok(());
    }
    let t = Instant::now();
    let classes: Vec<Value> = classify_census(&rep)?
        .iter()
        .map(|c| {
            let label = match c.label {
                ClassLabel::S6_0 => "S6_0",
                ClassLabel::H1 => "H1",
                ClassLabel::Other => "OTHER",
            };
            if c.label == ClassLabel::Other {
                eprintln!("warning: census class not equivalent to S6_0 or H1");
            }
            json!({
                "label": label,
                "members": c.members,
                "representative": matrix_json(&c.representative),
                "certificate": c.certificate.map(|x| certificate_json(&x, true)).unwrap_or(Value::Null),
            })
        })
        .collect();
    timings.insert("classify".into(), json!(t.elapsed().as_secs_f64() * 1e3));
    r.set("classes", classes);
    Ok(())
}

fn cmd_arrays(r: &mut Report, structure: &str, list: ListArg) -> anyhow::Result<()> {
    let s = Structure::parse(structure)?;
    let all = classify_all(s)?;
    r.set("structure", s.name());
    r.set("products", s.products());
    r.set("total", all.len());
    match list {
        ListArg::All => {
            r.set("arrays", all.iter().map(classification_json).collect::<Vec<_>>());
        }
        ListArg::Nonsimple => {
            let mut groups: Map<String, Value> = Map::new();
            let mut count = 0;
            for c in &all {
                if let Some(k) = group_key(&c.label) {
                    count += 1;
                    let e = groups.entry(k).or_insert_with(|| Value::Array(Vec::new()));
                    e.as_array_mut().expect("array").push(classification_json(c));
                }
            }
            // Canonical classes, so conjugate pairs count once.
            let classes: std::collections::BTreeSet<Vec<u8>> = all
                .iter()
                .filter(|c| matches!(c.label, CaseLabel::NonSimple(t) if t != Tag::Unlisted))
                .map(|c| c.array.canonical().counts().to_vec())
                .collect();
            r.set("nonsimple", count);
            r.set("listed_classes", classes.len());
            r.set("groups", groups);
        }
    }
    Ok(())
}

fn cmd_pairs(r: &mut Report, structure: &str, a: &str, b: &str) -> anyhow::Result<()> {
    let s = Structure::parse(structure)?;
    let (x, y) = (parse_array(s, a)?, parse_array(s, b)?);
    let v = common_solutions(&x, &y)?;
    r.set("a", json!({ "array": x.counts(), "label": classify_array(&x)?.label.to_string() }));
    r.set("b", json!({ "array": y.counts(), "label": classify_array(&y)?.label.to_string() }));
    let (verdict, w) = match v {
        CommonVerdict::NoCommon => ("no_common", None),
        CommonVerdict::SimpleOnlyCommon => ("simple_only_common", None),
        CommonVerdict::NonSimpleCommon(w) => ("nonsimple_common", Some(w)),
    };
    r.set("verdict", verdict).set("witness", witness_value(&w));
    Ok(())
}

fn cmd_groupmap(r: &mut Report, a: &GroupmapArgs) -> anyhow::Result<()> {
    let map = GroupMap::for_modulus(a.modulus)?;
    let fixed = parse_rows(&a.fixed)?;
    let targets = parse_rows(&a.target)?;
    let rows = match &a.rows {
        Some(s) => parse_rows(s)?,
        None => targets.clone(),
    };
    if fixed.is_empty() || targets.is_empty() || rows.is_empty() {
        bail!("fixed rows, targets and row multisets must be nonempty");
    }
    let c = complete_rows(&map, &fixed, &rows, &targets)?;
    let members: Vec<ResidueRow> = c.rows().copied().collect();
    let pairs = pairwise_admissibility(&map, &members, &targets)?;
    r.set("modulus", map.modulus());
    r.set("swaps", &c.swaps);
    r.set("orbits", c.orbits.iter().map(|o| json!({ "rep": o.rep, "members": o.members })).collect::<Vec<_>>());
    r.set("rejected", c.violations.len());
    let cert = c.violations.first().map(|v| json!({ "row": v.row, "against": v.against, "got": v.got }));
    r.set("contradiction", c.is_contradiction());
    r.set("first_violation", cert.unwrap_or(Value::Null));
    r.set(
        "pairwise",
        json!({
            "compatible": pairs.compatible,
            "failures": pairs.failures.len(),
            "contradiction": pairs.is_contradiction(),
        }),
    );
    r.set("fixed_sums", fixed.iter().map(|f| groupmap::residue_inner_product(&map, f, &[0; 6]).sum).collect::<Vec<_>>());
    Ok(())
}

fn cmd_ramsey(r: &mut Report, n: usize) -> anyhow::Result<()> {
    let v = workers::ramsey(n, workers::thread_count())?;
    r.set("n", n).set("holds", v.holds()).set("checked", v.checked);
    let ce = v.counterexample.as_ref().map(|c| {
        let edges: Vec<[usize; 3]> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| [i, j, c.color(i, j) as usize]).collect();
        json!({ "edges": edges, "triangle": groupmap::monochromatic_triangle(c) })
    });
    r.set("counterexample", ce.unwrap_or(Value::Null));
    Ok(())
}

fn cmd_catalog(
    r: &mut Report,
    name: &str,
    alpha: &Option<String>,
    beta: &Option<String>,
    out: &Option<PathBuf>,
) -> anyhow::Result<()> {
    let tok = |t: &Option<String>, what: &str| -> anyhow::Result<UnitValue> {
        let t = t.as_deref().ok_or_else(|| anyhow!("HAB needs --{what}"))?;
        parse_token(t).map_err(|e| anyhow!("--{what}: {e}"))
    };
    let cname = match name {
        "S6_0" => CatalogName::S6_0,
        "S6_1" => CatalogName::S6_1,
        "H1" => CatalogName::H1,
        "F6" => CatalogName::F6,
        "HAB" => CatalogName::HAB(tok(alpha, "alpha")?, tok(beta, "beta")?),
        other => bail!("unknown catalog name `{other}`"),
    };
    if !matches!(cname, CatalogName::HAB(..)) && (alpha.is_some() || beta.is_some()) {
        bail!("--alpha and --beta apply to HAB only");
    }
    let m = catalog(&cname)?;
    if let Some(path) = out {
        std::fs::write(path, format_matrix(&m)).with_context(|| format!("writing {}", path.display()))?;
        r.set("written", path.display().to_string());
    }
    r.set("name", cname.label()).set("matrix", matrix_json(&m)).set("chm", m.is_chm()?);
    Ok(())
}

/// Runs one invocation; `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: Vec<String>) -> anyhow::Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(argv);
    let mut timings = Map::new();
    match &cli.command {
        Command::Verify { file } => cmd_verify(&mut r, file)?,
        Command::Scan(a) => cmd_scan(&mut r, a)?,
        Command::Equiv { a, b, mode } => cmd_equiv(&mut r, a, b, *mode)?,
        Command::Census { alphabet, budget } => cmd_census(&mut r, alphabet, *budget, &mut timings)?,
        Command::Arrays { structure, list } => cmd_arrays(&mut r, structure, *list)?,
        Command::Pairs { structure, a, b } => cmd_pairs(&mut r, structure, a, b)?,
        Command::Groupmap(a) => cmd_groupmap(&mut r, a)?,
        Command::Ramsey { n } => cmd_ramsey(&mut r, *n)?,
        Command::Catalog { name, alpha, beta, out } => cmd_catalog(&mut r, name, alpha, beta, out)?,
    }
    if cli.timings {
        timings.insert("total".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        r.timings_ms = Some(timings);
    }
    Ok(r)
}
