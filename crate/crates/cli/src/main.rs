//! `lietype`: command-line front end to the `lietype` library.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or input errors.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lietype::dltables::{DLTables, Group, CHECK_NAMES};
use lietype::rootdata::{BuiltinGroup, RootDatum};
use lietype::unipotent::{count_unipotent, series_breakdown, xcirc};
use lietype::weyl::{class_count, default_cap, CartanType, ElementStore, WeylGroup};
use lietype::Exec;

#[derive(Parser)]
#[command(name = "lietype", version, about = "Exact Deligne-Lusztig computations for finite groups of Lie type")]
struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Unipotent characters via Harish-Chandra series.
    #[command(subcommand)]
    Unipotent(UnipotentCmd),
    /// Root data, order polynomials and Z-sets.
    #[command(subcommand)]
    Rootdata(RootdataCmd),
    /// Rank-one Deligne-Lusztig tables.
    #[command(subcommand)]
    Dl(DlCmd),
    /// Weyl group combinatorics.
    #[command(subcommand)]
    Weyl(WeylCmd),
}

#[derive(Subcommand)]
enum UnipotentCmd {
    /// Count unipotent characters series by series.
    Census {
        #[arg(long = "type")]
        cartan: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Subcommand)]
enum RootdataCmd {
    /// Group order, torus orders and the identities relating them.
    Orders {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Elements `w` with `q phi0(lambda) - w(lambda)` in `n X`, with witnesses.
    Zset {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Comma-separated lattice coordinates.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Subcommand)]
enum DlCmd {
    /// Character table with every `R_w^theta` decomposed.
    Table {
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Check the identities the table must satisfy.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u64,
        #[arg(long, conflicts_with = "check")]
        all: bool,
        #[arg(long)]
        check: Option<String>,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Type of the relative Weyl group of a stable subset `J`.
    Relative {
        #[arg(long = "type")]
        cartan: String,
        /// Bourbaki node numbers (1-based), comma or space separated; empty for no nodes.
        #[arg(long = "J", default_value = "")]
        j: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Number of (twisted) conjugacy classes.
    Classes {
        #[arg(long = "type")]
        cartan: String,
        /// Also count by enumerating the group (subject to the cap).
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Order of the Weyl group.
    Order {
        #[arg(long = "type")]
        cartan: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

/// Result of a command: a document to print and whether verification passed.
struct Output {
    json: Value,
    csv: Option<Vec<Vec<String>>>,
    pretty: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, pretty: String) -> Output {
        Output { json, csv: None, pretty, ok: true }
    }

    fn with_csv(mut self, rows: Vec<Vec<String>>) -> Output {
        self.csv = Some(rows);
        self
    }
}

fn parse_type(s: &str) -> Result<CartanType> {
    s.parse().with_context(|| format!("invalid --type {s:?}"))
}

fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let n: usize = tok.parse().with_context(|| format!("invalid node {tok:?}"))?;
        if n == 0 || n > rank {
            bail!("node {n} out of range 1..={rank}");
        }
        out.push(n - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn display_nodes(j: &[usize]) -> String {
    let v: Vec<String> = j.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn unipotent_census(cartan: &str, exec: Exec) -> Result<Output> {
    let t = parse_type(cartan)?;
    let series = series_breakdown(&t, exec)?;
    let total = count_unipotent(&t, exec)?;
    let cuspidal = xcirc(&t).len();
    let json = json!({
        "schema": "lietype.census/1",
        "type": t.to_string(),
        "total": total,
        "cuspidal": cuspidal,
        "series": series.iter().map(|s| json!({
            "J": s.j.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "levi": s.levi,
            "relative": s.relative.to_string(),
            "cuspidals": s.cuspidals.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "irr_count": s.irr_count,
        })).collect::<Vec<_>>(),
    });
    let mut rows = vec![vec!["J".into(), "levi".into(), "relative".into(), "cuspidals".into(), "irr_count".into(), "size".into()]];
    let mut pretty = format!("{t}: {total} unipotent characters, {cuspidal} cuspidal\n");
    for s in &series {
        let cusp: Vec<String> = s.cuspidals.iter().map(|c| c.to_string()).collect();
        rows.push(vec![display_nodes(&s.j), s.levi.clone(), s.relative.to_string(), cusp.join(" "), s.irr_count.to_string(), s.size().to_string()]);
        pretty.push_str(&format!(
            "  J={:<16} levi={:<10} relative={:<10} cuspidal data={} x {} classes = {}\n",
            display_nodes(&s.j),
            s.levi,
            s.relative.to_string(),
            s.cuspidals.len(),
            s.irr_count,
            s.size()
        ));
    }
    Ok(Output::new(json, pretty).with_csv(rows))
}

fn parse_group(s: &str) -> Result<BuiltinGroup> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn rootdata_orders(group: &str) -> Result<Output> {
    let d = RootDatum::builtin(parse_group(group)?);
    let report = d.order_report();
    let mut json = serde_json::to_value(&report)?;
    json["schema"] = json!("lietype.orders/1");
    let mut pretty = format!("|{}| = {}\n", report.group, report.group_order);
    let mut rows = vec![vec!["element".into(), "length".into(), "torus_order".into()]];
    for t in &report.tori {
        pretty.push_str(&format!("  |T_{}| = {}\n", t.element, t.order));
        rows.push(vec![t.element.clone(), t.length.to_string(), t.order.to_string()]);
    }
    pretty.push_str(&format!(
        "steinberg identity: {}\nT1 factorization: {}\nq-valuation = N: {}\ntori divide |G|: {}\n",
        report.steinberg_identity, report.t1_factorization, report.valuation_equals_n, report.tori_divide_group_order
    ));
    let mut out = Output::new(json, pretty).with_csv(rows);
    out.ok = report.steinberg_identity && report.t1_factorization && report.valuation_equals_n && report.tori_divide_group_order;
    Ok(out)
}

fn rootdata_zset(group: &str, n: u64, q: u64, lambda: &str) -> Result<Output> {
    let d = RootDatum::builtin(parse_group(group)?);
    let lambda: Vec<i64> = lambda
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("invalid coordinate {t:?}")))
        .collect::<Result<_>>()?;
    let z = d.compute_z(&lambda, n, q)?;
    let json = json!({
        "schema": "lietype.zset/1",
        "group": d.name(),
        "lambda": lambda,
        "n": n,
        "q": q,
        "elements": z,
    });
    let mut pretty = format!("Z for lambda={lambda:?}, n={n}, q={q}: {} element(s)\n", z.len());
    let mut rows = vec![vec!["element".into(), "witness".into()]];
    for e in &z {
        pretty.push_str(&format!("  {} witness {:?}\n", e.label, e.witness));
        let w: Vec<String> = e.witness.iter().map(i64::to_string).collect();
        rows.push(vec![e.label.clone(), w.join(" ")]);
    }
    Ok(Output::new(json, pretty).with_csv(rows))
}

fn dl_group(s: &str) -> Result<Group> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn dl_table(group: &str, q: u64) -> Result<Output> {
    let t = DLTables::build(dl_group(group)?, q)?;
    let json = t.to_json();
    let mut header = vec!["character".to_string()];
    header.extend(t.classes.iter().map(|c| c.label.clone()));
    let mut rows = vec![header];
    let mut sizes = vec!["class size".to_string()];
    sizes.extend(t.classes.iter().map(|c| c.size.to_string()));
    rows.push(sizes);
    for (label, vals) in t.table.labels.iter().zip(&t.table.values) {
        let mut r = vec![label.clone()];
        r.extend(vals.iter().map(|v| v.to_string()));
        rows.push(r);
    }
    let mut pretty = format!("{}({q}), order {}, {} classes\n", t.group, t.order, t.num_classes());
    for (label, vals) in t.table.labels.iter().zip(&t.table.values) {
        let cells: Vec<String> = t.classes.iter().zip(vals).map(|(c, v)| format!("{}: {v}", c.label)).collect();
        pretty.push_str(&format!("  {label:<10} {}\n", cells.join(" | ")));
    }
    pretty.push_str("Deligne-Lusztig characters:\n");
    for e in &t.family {
        let parts: Vec<String> = e
            .mults
            .iter()
            .enumerate()
            .filter(|(_, m)| **m != 0)
            .map(|(i, m)| format!("{m:+} {}", t.table.labels[i]))
            .collect();
        pretty.push_str(&format!("  R_{}^{:?} = {}\n", t.datum.element_label(e.element), e.theta, parts.join(" ")));
    }
    Ok(Output::new(json, pretty).with_csv(rows))
}

fn dl_verify(group: &str, q: u64, all: bool, check: Option<&str>, exec: Exec) -> Result<Output> {
    let t = DLTables::build(dl_group(group)?, q)?;
    let suite = match (all, check) {
        (_, Some(name)) => {
            if !CHECK_NAMES.contains(&name) {
                bail!("unknown check {name:?}; expected one of {}", CHECK_NAMES.join(", "));
            }
            t.suite(vec![t.run_check(name, exec)?])
        }
        (true, None) => t.run_all(exec)?,
        (false, None) => bail!("pass --all or --check <name>"),
    };
    let mut pretty = String::new();
    let mut rows = vec![vec!["check".into(), "passed".into(), "detail".into()]];
    for o in &suite.outcomes {
        pretty.push_str(&format!("{} {:<14} {}\n", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail));
        rows.push(vec![o.name.clone(), o.passed.to_string(), o.detail.clone()]);
    }
    let ok = suite.all_passed();
    let mut out = Output::new(serde_json::to_value(&suite)?, pretty).with_csv(rows);
    out.ok = ok;
    Ok(out)
}

fn weyl_relative(cartan: &str, j: &str) -> Result<Output> {
    let t = parse_type(cartan)?;
    let g = WeylGroup::new(t);
    let nodes = parse_nodes(j, g.rank())?;
    let rel = g.relative_weyl_type(&nodes)?;
    let json = json!({
        "schema": "lietype.relative/1",
        "type": t.to_string(),
        "J": nodes.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "relative": rel.to_string(),
        "order": rel.order().to_string(),
    });
    Ok(Output::new(json, format!("{rel}\n")).with_csv(vec![vec!["type".into(), "J".into(), "relative".into()], vec![t.to_string(), display_nodes(&nodes), rel.to_string()]]))
}

fn weyl_classes(cartan: &str, brute: bool, exec: Exec) -> Result<Output> {
    let t = parse_type(cartan)?;
    let g = WeylGroup::new(t);
    let formula = if t.is_twisted() { None } else { Some(class_count(&t)?) };
    let counted = if brute || formula.is_none() {
        let store = ElementStore::enumerate(&g, default_cap(), exec)?;
        Some(g.class_count_bruteforce(&store) as u64)
    } else {
        None
    };
    let json = json!({
        "schema": "lietype.classes/1",
        "type": t.to_string(),
        "formula": formula,
        "enumerated": counted,
    });
    let value = formula.or(counted).expect("one count is always computed");
    let mut out = Output::new(json, format!("{value}\n"))
        .with_csv(vec![vec!["type".into(), "classes".into()], vec![t.to_string(), value.to_string()]]);
    if let (Some(a), Some(b)) = (formula, counted) {
        out.ok = a == b;
        out.pretty = format!("{a} (enumeration: {b})\n");
    }
    Ok(out)
}

fn weyl_order(cartan: &str) -> Result<Output> {
    let t = parse_type(cartan)?;
    let g = WeylGroup::new(t);
    let json = json!({ "schema": "lietype.weylorder/1", "type": t.to_string(), "order": g.order().to_string() });
    Ok(Output::new(json, format!("{}\n", g.order()))
        .with_csv(vec![vec!["type".into(), "order".into()], vec![t.to_string(), g.order().to_string()]]))
}

fn emit(out: &Output, format: Format) -> Result<()> {
    let stdout = std::io::stdout();
    let mut h = stdout.lock();
    match format {
        Format::Json => writeln!(h, "{}", serde_json::to_string_pretty(&out.json)?)?,
        Format::Pretty => write!(h, "{}", out.pretty)?,
        Format::Csv => {
            let rows = out.csv.as_ref().ok_or_else(|| anyhow!("no CSV form for this command"))?;
            let mut w = csv::Writer::from_writer(h);
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let (out, format) = match &cli.command {
        Command::Unipotent(UnipotentCmd::Census { cartan, fmt }) => (unipotent_census(cartan, exec)?, fmt.format),
        Command::Rootdata(RootdataCmd::Orders { group, fmt }) => (rootdata_orders(group)?, fmt.format),
        Command::Rootdata(RootdataCmd::Zset { group, n, q, lambda, fmt }) => (rootdata_zset(group, *n, *q, lambda)?, fmt.format),
        Command::Dl(DlCmd::Table { group, q, fmt }) => (dl_table(group, *q)?, fmt.format),
        Command::Dl(DlCmd::Verify { group, q, all, check, fmt }) => (dl_verify(group, *q, *all, check.as_deref(), exec)?, fmt.format),
        Command::Weyl(WeylCmd::Relative { cartan, j, fmt }) => (weyl_relative(cartan, j)?, fmt.format),
        Command::Weyl(WeylCmd::Classes { cartan, brute_force, fmt }) => (weyl_classes(cartan, *brute_force, exec)?, fmt.format),
        Command::Weyl(WeylCmd::Order { cartan, fmt }) => (weyl_order(cartan)?, fmt.format),
    };
    emit(&out, format)?;
    if !out.ok {
        for line in out.pretty.lines().filter(|l| l.starts_with("FAIL")) {
            eprintln!("{line}");
        }
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
