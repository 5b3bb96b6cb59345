//! `charposet`: character posets of finite groups from the command line.

use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use charposet::catalog::{parse_group_expr, realize_group_with_cap, roster, GroupExpr};
use charposet::chartab::irr_table;
use charposet::error::Error;
use charposet::gamma::{
    build_gamma_poset, build_s_poset, scan_nontrivial_i, Analysis, Claim, Status,
    VerificationReport,
};
use charposet::group::{is_prime, p_log, GroupTable, DEFAULT_ORDER_CAP};
use charposet::lattice::enumerate_p_subgroups;
use charposet::subgroup::generating_set;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "charposet", version, about = "Components of p-subgroup and character posets")]
struct Cli {
    /// Emit one JSON document.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (verify and catalog-run only).
    #[arg(long, global = true)]
    csv: bool,
    /// Report wall-clock milliseconds instead of zero.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PrimeArgs {
    /// The prime p.
    #[arg(long, value_parser = parse_prime)]
    p: u64,
    /// Subgroups of order greater than p^e.
    #[arg(long, default_value_t = 0)]
    e: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetKind {
    Gamma,
    S,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible character table.
    Irr {
        expr: String,
        /// Show values as complex numbers rather than residues.
        #[arg(long)]
        complex: bool,
    },
    /// p-subgroups of order greater than p^e.
    Psubgroups {
        #[command(flatten)]
        prime: PrimeArgs,
        expr: String,
    },
    /// Connected components of a poset.
    Components {
        #[command(flatten)]
        prime: PrimeArgs,
        #[arg(long, value_enum, default_value = "gamma")]
        poset: PosetKind,
        expr: String,
    },
    /// Check one claim on one group.
    Verify {
        /// A, B, C, L2.3, L4.1, L4.2, L4.3, L4.4, L4.6 or Cor2.2.
        #[arg(long, value_parser = parse_claim)]
        theorem: Claim,
        #[command(flatten)]
        prime: PrimeArgs,
        expr: String,
    },
    /// Catalog p-groups whose subgroups of order p^k meet nontrivially.
    #[command(name = "scan-q1")]
    ScanQ1 {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 81)]
        max_order: usize,
    },
    /// Check every claim on every catalog group up to an order.
    #[command(name = "catalog-run")]
    CatalogRun {
        #[arg(long, default_value_t = 60)]
        max_order: usize,
    },
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s} is not an integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 3 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            failed: false,
        }
    }
}

fn order_cap() -> Result<usize, Failure> {
    match std::env::var("CHARPOSET_ORDER_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("CHARPOSET_ORDER_CAP must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn load(text: &str) -> Result<Arc<GroupTable>, Failure> {
    let expr = parse_group_expr(text).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))?;
    Ok(Arc::new(realize_group_with_cap(&expr, order_cap()?)?))
}

/// Left-aligned columns separated by two spaces, without trailing blanks.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat(' ').take(w - cell.chars().count()));
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(headers.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn complex_text(re: f64, im: f64) -> String {
    let fmt = |x: f64| {
        let s = format!("{:.4}", x);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    };
    let (r, i) = (fmt(re), fmt(im));
    match (r.as_str(), i.as_str()) {
        (_, "0") => r,
        ("0", "1") => "i".into(),
        ("0", "-1") => "-i".into(),
        ("0", _) => format!("{i}i"),
        (_, "1") => format!("{r}+i"),
        (_, "-1") => format!("{r}-i"),
        _ if im > 0.0 => format!("{r}+{i}i"),
        _ => format!("{r}{i}i"),
    }
}

/// The representative of `v mod q` closest to zero.
fn signed(v: u64, q: u64) -> i64 {
    if v > q / 2 {
        -((q - v) as i64)
    } else {
        v as i64
    }
}

fn irr(cli: &Cli, expr: &str, complex: bool) -> Result<Output, Failure> {
    let g = load(expr)?;
    let t = irr_table(&g)?;
    let classes = t.classes();
    let render = |values: &[u64]| -> Vec<String> {
        (0..classes.len())
            .map(|c| {
                if complex {
                    let (re, im) = t.complex_value(values, c);
                    complex_text(re, im)
                } else {
                    signed(values[c], t.modulus()).to_string()
                }
            })
            .collect()
    };
    if cli.json {
        let chars: Vec<Value> = t
            .chars()
            .iter()
            .map(|ch| {
                let values: Value = if complex {
                    render(&ch.values).into()
                } else {
                    ch.values.iter().map(|&v| signed(v, t.modulus())).collect::<Vec<_>>().into()
                };
                json!({ "id": ch.id, "degree": ch.degree, "values": values })
            })
            .collect();
        let cls: Vec<Value> = (0..classes.len())
            .map(|c| {
                let rep = classes.reps()[c];
                json!({ "representative": g.word_string(rep), "size": classes.sizes()[c], "element_order": g.elem_order(rep) })
            })
            .collect();
        return Ok(Output::ok(json_text(&json!({
            "group": g.label(),
            "order": g.order(),
            "modulus": t.modulus(),
            "classes": cls,
            "characters": chars,
        }))));
    }
    let mut headers = vec!["".to_string()];
    headers.extend((0..classes.len()).map(|c| format!("C{}", c + 1)));
    let mut rows = vec![
        std::iter::once("rep".to_string())
            .chain(classes.reps().iter().map(|&r| g.word_string(r)))
            .collect::<Vec<_>>(),
        std::iter::once("size".to_string())
            .chain(classes.sizes().iter().map(|s| s.to_string()))
            .collect(),
        std::iter::once("order".to_string())
            .chain(classes.reps().iter().map(|&r| g.elem_order(r).to_string()))
            .collect(),
    ];
    for ch in t.chars() {
        let mut row = vec![format!("X.{}", ch.id + 1)];
        row.extend(render(&ch.values));
        rows.push(row);
    }
    let mut text = format!("{}  order {}", g.label(), g.order());
    if !complex {
        text.push_str(&format!("  values mod {}", t.modulus()));
    }
    text.push('\n');
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    text.push_str(&table(&headers, &rows));
    Ok(Output::ok(text))
}

fn psubgroups(cli: &Cli, prime: &PrimeArgs, expr: &str) -> Result<Output, Failure> {
    let g = load(expr)?;
    let l = enumerate_p_subgroups(&g, prime.p, prime.e);
    let gens = |i: usize| -> Vec<String> {
        generating_set(l.node(i))
            .into_iter()
            .map(|x| g.word_string(x))
            .collect()
    };
    if cli.json {
        let nodes: Vec<Value> = (0..l.len())
            .map(|i| {
                json!({
                    "id": i,
                    "order": l.node(i).order(),
                    "sylow": l.sylow_ids().contains(&i),
                    "generators": gens(i),
                })
            })
            .collect();
        return Ok(Output::ok(json_text(&json!({
            "group": g.label(),
            "p": prime.p,
            "e": prime.e,
            "nodes": nodes,
            "covers": l.covers(),
        }))));
    }
    let rows: Vec<Vec<String>> = (0..l.len())
        .map(|i| {
            vec![
                i.to_string(),
                l.node(i).order().to_string(),
                if l.sylow_ids().contains(&i) { "yes" } else { "" }.to_string(),
                gens(i).join(", "),
            ]
        })
        .collect();
    let mut text = format!(
        "{}  p {}  e {}  subgroups {}  covers {}\n",
        g.label(),
        prime.p,
        prime.e,
        l.len(),
        l.covers().len()
    );
    text.push_str(&table(&["id", "order", "sylow", "generators"], &rows));
    Ok(Output::ok(text))
}

fn components(cli: &Cli, prime: &PrimeArgs, poset: PosetKind, expr: &str) -> Result<Output, Failure> {
    let g = load(expr)?;
    let (name, nodes, edges, part) = match poset {
        PosetKind::S => {
            let s = build_s_poset(&g, prime.p, prime.e);
            let l = s.lattice();
            ("s", l.len(), l.covers().len(), s.partition().clone())
        }
        PosetKind::Gamma => {
            let gamma = build_gamma_poset(&g, prime.p, prime.e)?;
            ("gamma", gamma.len(), gamma.edges().len(), gamma.partition().clone())
        }
    };
    if cli.json {
        return Ok(Output::ok(json_text(&json!({
            "group": g.label(),
            "p": prime.p,
            "e": prime.e,
            "poset": name,
            "nodes": nodes,
            "edges": edges,
            "components": part.count(),
            "component_sizes": part.component_sizes(),
        }))));
    }
    let rows = vec![vec![
        g.label().to_string(),
        prime.p.to_string(),
        prime.e.to_string(),
        name.to_string(),
        nodes.to_string(),
        edges.to_string(),
        part.count().to_string(),
    ]];
    Ok(Output::ok(table(
        &["group", "p", "e", "poset", "nodes", "edges", "components"],
        &rows,
    )))
}

fn flat(m: &std::collections::BTreeMap<String, i64>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_output(cli: &Cli, reports: &[VerificationReport]) -> Output {
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let text = if cli.json {
        serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
    } else if cli.csv {
        VerificationReport::to_csv(reports)
    } else {
        let mut headers = vec!["status", "claim", "group", "p", "e", "observed", "expected"];
        if cli.timings {
            headers.push("ms");
        }
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.status.to_string().to_uppercase(),
                    r.claim.to_string(),
                    r.group.clone(),
                    r.p.to_string(),
                    r.e.to_string(),
                ];
                if r.status == Status::Inapplicable {
                    row.push(r.note.clone());
                    row.push(String::new());
                } else {
                    row.push(flat(&r.observed));
                    row.push(flat(&r.expected));
                }
                if cli.timings {
                    row.push(r.millis.to_string());
                }
                row
            })
            .collect();
        let mut text = table(&headers, &rows);
        if reports.len() > 1 {
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            text.push_str(&format!(
                "{} checks: {} pass, {} fail, {} inapplicable\n",
                reports.len(),
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Inapplicable)
            ));
        }
        text
    };
    Output { text, failed }
}

fn finish(cli: &Cli, mut r: VerificationReport) -> VerificationReport {
    if !cli.timings {
        r.millis = 0;
    }
    r
}

fn verify(cli: &Cli, claim: Claim, prime: &PrimeArgs, expr: &str) -> Result<Output, Failure> {
    let g = load(expr)?;
    let r = Analysis::new(&g, prime.p, prime.e).verify(claim)?;
    Ok(report_output(cli, &[finish(cli, r)]))
}

fn catalog_groups(max_order: usize) -> Result<Vec<(GroupExpr, Arc<GroupTable>)>, Failure> {
    let cap = order_cap()?.min(max_order);
    let mut out = Vec::new();
    for expr in roster() {
        if expr.advertised_order().is_some_and(|n| n > max_order as u128) {
            continue;
        }
        match realize_group_with_cap(&expr, cap) {
            Ok(g) => out.push((expr, Arc::new(g))),
            Err(Error::ClosureCapExceeded { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn scan_q1(cli: &Cli, p: u64, k: u32, max_order: usize) -> Result<Output, Failure> {
    let exprs: Vec<GroupExpr> = catalog_groups(max_order)?
        .into_iter()
        .filter(|(_, g)| p_log(g.order(), p).is_some_and(|n| n >= k))
        .map(|(e, _)| e)
        .collect();
    let entries = scan_nontrivial_i(&exprs, p, k);
    if let Some(err) = entries.iter().find_map(|e| match &e.result {
        Err(err) if !matches!(err, Error::CrossCheckFailed(_)) => Some(err.clone()),
        _ => None,
    }) {
        return Err(err.into());
    }
    let failed = entries.iter().any(|e| e.result.is_err());
    let text = if cli.json {
        let rows: Vec<Value> = entries
            .iter()
            .map(|e| match &e.result {
                Ok(n) => json!({ "group": e.label, "intersection_order": n }),
                Err(err) => json!({ "group": e.label, "error": err.to_string() }),
            })
            .collect();
        json_text(&json!({ "p": p, "k": k, "max_order": max_order, "groups": rows }))
    } else {
        let rows: Vec<Vec<String>> = entries
            .iter()
            .map(|e| {
                vec![
                    e.label.clone(),
                    match &e.result {
                        Ok(n) => n.to_string(),
                        Err(err) => format!("error: {err}"),
                    },
                ]
            })
            .collect();
        table(&["group", "|I|"], &rows)
    };
    Ok(Output { text, failed })
}

fn prime_divisors(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&p| n as u64 % p == 0 && is_prime(p))
        .collect()
}

fn catalog_run(cli: &Cli, max_order: usize) -> Result<Output, Failure> {
    let groups = catalog_groups(max_order)?;
    let jobs: Vec<(Arc<GroupTable>, u64, u32)> = groups
        .iter()
        .flat_map(|(_, g)| {
            prime_divisors(g.order())
                .into_iter()
                .flat_map(move |p| [0, 1].map(|e| (g.clone(), p, e)))
        })
        .collect();
    let results: Vec<Result<Vec<VerificationReport>, Error>> = jobs
        .par_iter()
        .map(|(g, p, e)| {
            let a = Analysis::new(g, *p, *e);
            Claim::ALL.iter().map(|&c| a.verify(c)).collect()
        })
        .collect();
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?.into_iter().map(|r| finish(cli, r)));
    }
    reports.sort_by(|a, b| (&a.group, a.p, a.e, a.claim).cmp(&(&b.group, b.p, b.e, b.claim)));
    Ok(report_output(cli, &reports))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.csv && !matches!(cli.command, Command::Verify { .. } | Command::CatalogRun { .. }) {
        return Err(usage("--csv applies to verify and catalog-run only"));
    }
    match &cli.command {
        Command::Irr { expr, complex } => irr(cli, expr, *complex),
        Command::Psubgroups { prime, expr } => psubgroups(cli, prime, expr),
        Command::Components { prime, poset, expr } => components(cli, prime, *poset, expr),
        Command::Verify {
            theorem,
            prime,
            expr,
        } => verify(cli, *theorem, prime, expr),
        Command::ScanQ1 { p, k, max_order } => scan_q1(cli, *p, *k, *max_order),
        Command::CatalogRun { max_order } => catalog_run(cli, *max_order),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(u8::from(out.failed))
        }
        Err(f) => {
            eprintln!("charposet: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
