use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use kronlab::characters::kron_power_oracle;
use kronlab::tableaux::{count_all_kronecker_tableaux, in_regime};
use kronlab::{
    build_operator, character_table, count_kronecker_tableaux, egf_check, egf_rhs, from_pair, kron_power_nm1,
    kron_product, kron_product_via_operator, list_kronecker_tableaux, multiplicity_formula, partitions_of, to_pair,
    DecCyclePermutation, Error, KroneckerPair, KroneckerTableau, PartialStandardTableau, Partition, SchurSum,
};

const SCHEMA: &str = "kronlab/1";

#[derive(Parser)]
#[command(name = "kronlab", version, about = "Exact Kronecker products of symmetric-group characters")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Output format
    #[arg(long, global = true, value_enum, env = "KRONLAB_FORMAT", default_value = "json")]
    format: Format,
    /// Most Kronecker tableaux `tableaux list` will print
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_list: u64,
    /// Largest weight accepted by any command
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,
    /// Largest power or walk length accepted by any command
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    max_k: u64,
    /// Report timings on stderr
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KronMethod {
    Operator,
    Character,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PowerMethod {
    Operator,
    Character,
    Tableaux,
    Formula,
    Both,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of S_n
    Chartable { n: usize },
    /// Kronecker product s_lambda ⊙ s_mu
    Kron {
        lambda: Partition,
        mu: Partition,
        #[arg(long, value_enum, default_value = "operator")]
        method: KronMethod,
    },
    /// Print the operator attached to a truncated partition
    Operator { lambda_bar: Partition },
    /// k-th Kronecker power of s_(n-1,1), as an expansion of s_(n)
    Power {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value = "operator")]
        method: PowerMethod,
    },
    /// Count or list Kronecker tableaux
    Tableaux {
        #[command(subcommand)]
        action: TableauxAction,
    },
    /// Map walks (one per line, from a file or stdin) to tableau/permutation pairs
    Bijection {
        /// Walk file; `-` or absent reads stdin
        file: Option<String>,
        /// Read lines `n ; tableau ; permutation` and rebuild the walks
        #[arg(long)]
        inverse: bool,
    },
    /// Closed-form multiplicity of chi^lambda in the k-th power
    Formula { n: usize, k: usize, lambda: Partition },
    /// Truncated generating function for a truncated partition
    Egf {
        lambda_bar: Partition,
        #[arg(long)]
        order: usize,
        /// Compare every coefficient with the closed formula
        #[arg(long)]
        check: bool,
    },
    /// Cross-route agreement sweep over all weights up to n and powers up to k
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum TableauxAction {
    Count { mu: Partition, lambda: Partition, k: usize },
    List { mu: Partition, lambda: Partition, k: usize },
}

enum Failure {
    Disagree(String),
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn emit(&mut self, mut value: Value, ascii: impl FnOnce() -> String) {
        match self.format {
            Format::Json => {
                if let Value::Object(map) = &mut value {
                    map.insert("schema".into(), SCHEMA.into());
                }
                self.buf.push_str(&serde_json::to_string_pretty(&value).expect("serializable"));
                self.buf.push('\n');
            }
            Format::Ascii => {
                self.buf.push_str(&ascii());
                if !self.buf.ends_with('\n') {
                    self.buf.push('\n');
                }
            }
        }
    }
}

fn sum_json(f: &SchurSum) -> Value {
    serde_json::to_value(f).expect("serializable")
}

fn check_n(config: &Config, n: usize) -> Outcome {
    if n as u64 > config.max_n {
        return Err(Failure::Limit(format!("n = {n} exceeds --max-n {}", config.max_n)));
    }
    Ok(())
}

fn check_k(config: &Config, k: usize) -> Outcome {
    if k as u64 > config.max_k {
        return Err(Failure::Limit(format!("k = {k} exceeds --max-k {}", config.max_k)));
    }
    Ok(())
}

fn timed<T>(config: &Config, label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let v = f();
    if config.verbose {
        eprintln!("{label}: {:.3?}", start.elapsed());
    }
    v
}

/// Lines of `lambda: a  b: c` where the expansions differ.
fn diff(a: &SchurSum, b: &SchurSum, labels: (&str, &str)) -> String {
    let mut keys: Vec<&Partition> = a.iter().map(|(p, _)| p).chain(b.iter().map(|(p, _)| p)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|p| a.coeff(p) != b.coeff(p))
        .map(|p| format!("{p}: {} {}, {} {}", labels.0, a.coeff(p), labels.1, b.coeff(p)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_chartable(config: &Config, out: &mut Out, n: usize) -> Outcome {
    check_n(config, n)?;
    let table = timed(config, "character table", || character_table(n));
    out.emit(json!({ "command": "chartable", "table": &*table }), || table.to_ascii());
    Ok(())
}

fn cmd_kron(config: &Config, out: &mut Out, lambda: &Partition, mu: &Partition, method: KronMethod) -> Outcome {
    check_n(config, lambda.weight())?;
    let op = || timed(config, "operator route", || kron_product_via_operator(lambda, mu));
    let ch = || timed(config, "character route", || kron_product(lambda, mu));
    let base = json!({ "command": "kron", "lambda": lambda, "mu": mu });
    match method {
        KronMethod::Operator | KronMethod::Character => {
            let (name, f) = if method == KronMethod::Operator { ("operator", op()?) } else { ("character", ch()?) };
            let mut v = base;
            v["method"] = name.into();
            v["result"] = sum_json(&f);
            out.emit(v, || f.to_string());
            Ok(())
        }
        KronMethod::Both => {
            let (a, b) = (op()?, ch()?);
            let agree = a == b;
            let mut v = base;
            v["method"] = "both".into();
            v["agree"] = agree.into();
            v["results"] = json!({ "operator": sum_json(&a), "character": sum_json(&b) });
            out.emit(v, || {
                if agree {
                    format!("{a}\nagree: operator = character")
                } else {
                    format!("operator:  {a}\ncharacter: {b}\nDISAGREE")
                }
            });
            if agree {
                Ok(())
            } else {
                Err(Failure::Disagree(diff(&a, &b, ("operator", "character"))))
            }
        }
    }
}

fn cmd_operator(out: &mut Out, lambda_bar: &Partition) -> Outcome {
    let op = build_operator(lambda_bar).normalized();
    let terms: Vec<Value> = op.terms.iter().map(|t| json!({ "coeff": t.coeff.to_string(), "nus": &t.nus })).collect();
    out.emit(
        json!({ "command": "operator", "lambda_bar": lambda_bar, "display": op.to_string(), "terms": terms }),
        || op.to_string(),
    );
    Ok(())
}

/// The formula is only claimed for `n >= k + lambda_2`; the rest are
/// returned separately.
fn formula_power(n: usize, k: usize) -> Result<(SchurSum, Vec<Partition>), Error> {
    let mut f = SchurSum::zero(n);
    let mut outside = Vec::new();
    for lambda in partitions_of(n) {
        if in_regime(n, k, &lambda) {
            let c = multiplicity_formula(n, k, &lambda)?;
            f.add_term(lambda, c.into());
        } else {
            outside.push(lambda);
        }
    }
    Ok((f, outside))
}

fn tableaux_power(n: usize, k: usize) -> SchurSum {
    SchurSum::from_terms(
        n,
        count_all_kronecker_tableaux(&Partition::row(n), k).into_iter().map(|(p, c)| (p, BigInt::from(c))),
    )
}

fn cmd_power(config: &Config, out: &mut Out, n: usize, k: usize, method: PowerMethod) -> Outcome {
    check_n(config, n)?;
    check_k(config, k)?;
    let routes: &[PowerMethod] = match method {
        PowerMethod::Both => &[PowerMethod::Operator, PowerMethod::Character],
        PowerMethod::All => {
            &[PowerMethod::Operator, PowerMethod::Character, PowerMethod::Tableaux, PowerMethod::Formula]
        }
        PowerMethod::Operator => &[PowerMethod::Operator],
        PowerMethod::Character => &[PowerMethod::Character],
        PowerMethod::Tableaux => &[PowerMethod::Tableaux],
        PowerMethod::Formula => &[PowerMethod::Formula],
    };
    let mut results: Vec<(&str, SchurSum)> = Vec::new();
    let mut outside = Vec::new();
    for route in routes {
        let (name, f) = match route {
            PowerMethod::Operator => ("operator", timed(config, "operator route", || kron_power_nm1(n, k))?),
            PowerMethod::Character => ("character", timed(config, "character route", || kron_power_oracle(n, k))?),
            PowerMethod::Tableaux => ("tableaux", timed(config, "tableaux route", || tableaux_power(n, k))),
            _ => {
                let (f, rest) = timed(config, "formula route", || formula_power(n, k))?;
                outside = rest;
                ("formula", f)
            }
        };
        results.push((name, f));
    }

    // the formula is compared only where it is defined
    let reference = &results[0].1;
    let mut mismatches = Vec::new();
    for (name, f) in &results[1..] {
        let restricted = if *name == "formula" {
            SchurSum::from_terms(
                n,
                reference.iter().filter(|(p, _)| !outside.contains(p)).map(|(p, c)| (p.clone(), c.clone())),
            )
        } else {
            reference.clone()
        };
        if &restricted != f {
            mismatches.push(diff(&restricted, f, (results[0].0, name)));
        }
    }

    let mut v = json!({ "command": "power", "n": n, "k": k });
    v["results"] =
        results.iter().map(|(name, f)| (name.to_string(), sum_json(f))).collect::<serde_json::Map<_, _>>().into();
    if routes.contains(&PowerMethod::Formula) {
        v["outside_regime"] = json!(outside);
    }
    if results.len() > 1 {
        v["agree"] = mismatches.is_empty().into();
    }
    out.emit(v, || {
        let mut s: Vec<String> = results.iter().map(|(name, f)| format!("{name}: {f}")).collect();
        if !outside.is_empty() {
            let shown: Vec<String> = outside.iter().map(Partition::to_string).collect();
            s.push(format!("outside n >= k + lambda_2: {}", shown.join(" ")));
        }
        if results.len() > 1 {
            s.push(if mismatches.is_empty() { "agree".into() } else { "DISAGREE".into() });
        }
        s.join("\n")
    });
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagree(mismatches.join("\n")))
    }
}

fn cmd_tableaux(config: &Config, out: &mut Out, action: &TableauxAction) -> Outcome {
    match action {
        TableauxAction::Count { mu, lambda, k } => {
            check_n(config, mu.weight())?;
            check_k(config, *k)?;
            let c = timed(config, "transfer matrix", || count_kronecker_tableaux(mu, lambda, *k))?;
            out.emit(
                json!({ "command": "tableaux count", "mu": mu, "lambda": lambda, "k": k, "count": c.to_string() }),
                || c.to_string(),
            );
        }
        TableauxAction::List { mu, lambda, k } => {
            check_n(config, mu.weight())?;
            check_k(config, *k)?;
            let limit = usize::try_from(config.max_list).unwrap_or(usize::MAX);
            let walks = timed(config, "listing", || list_kronecker_tableaux(mu, lambda, *k, limit))?;
            let shown: Vec<String> = walks.iter().map(KroneckerTableau::to_string).collect();
            out.emit(
                json!({ "command": "tableaux list", "mu": mu, "lambda": lambda, "k": k, "count": walks.len(), "tableaux": shown }),
                || shown.join("\n"),
            );
        }
    }
    Ok(())
}

fn read_lines(file: Option<&str>) -> Result<Vec<(usize, String)>, Failure> {
    let reader: Box<dyn BufRead> = match file {
        None | Some("-") => Box::new(io::stdin().lock()),
        Some(path) => {
            Box::new(io::BufReader::new(std::fs::File::open(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?))
        }
    };
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Failure::Usage(e.to_string()))?;
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            lines.push((i + 1, trimmed.to_string()));
        }
    }
    Ok(lines)
}

fn pair_json(pair: &KroneckerPair) -> Value {
    json!({
        "tableau": &pair.tableau,
        "permutation": &pair.permutation,
        "display": { "tableau": pair.tableau.to_string(), "permutation": pair.permutation.to_string() },
    })
}

fn parse_pair_line(line: &str) -> Result<(usize, KroneckerPair), Error> {
    let fields: Vec<&str> = line.split(';').map(str::trim).collect();
    let [n, t, pi] = fields[..] else {
        return Err(Error::InvalidPair(format!("expected `n ; tableau ; permutation`, got `{line}`")));
    };
    let n = n.parse::<usize>().map_err(|_| Error::InvalidPair(format!("bad weight `{n}`")))?;
    let t: PartialStandardTableau = t.parse()?;
    let pi: DecCyclePermutation = pi.parse()?;
    Ok((n, KroneckerPair::new(t, pi)?))
}

fn cmd_bijection(config: &Config, out: &mut Out, file: Option<&str>, inverse: bool) -> Outcome {
    let lines = read_lines(file)?;
    let at = |no: usize| move |e: Error| Failure::from(Error::InvalidWalk(format!("line {no}: {e}")));
    let mut entries = Vec::new();
    let mut ascii = Vec::new();
    let mut failures = Vec::new();
    for (no, line) in lines {
        let (walk, pair) = if inverse {
            let (n, pair) = parse_pair_line(&line).map_err(at(no))?;
            check_n(config, n)?;
            check_k(config, pair.k())?;
            (from_pair(&pair, n).map_err(at(no))?, pair)
        } else {
            let walk: KroneckerTableau = line.parse().map_err(at(no))?;
            check_n(config, walk.weight())?;
            check_k(config, walk.length())?;
            let pair = to_pair(&walk).map_err(at(no))?;
            (walk, pair)
        };
        let (n, k) = (walk.weight(), walk.length());
        let round_trip =
            if inverse { to_pair(&walk).as_ref() == Ok(&pair) } else { from_pair(&pair, n).as_ref() == Ok(&walk) };
        if !round_trip {
            failures.push(format!("line {no}: round trip failed"));
        }
        let regime = in_regime(n, k, walk.final_shape());
        ascii.push(format!(
            "{walk}\n  T = {}  π = {}  round trip: {}",
            pair.tableau,
            pair.permutation,
            if round_trip { "ok" } else { "FAILED" }
        ));
        entries.push(json!({
            "line": no,
            "walk": walk.to_string(),
            "n": n,
            "k": k,
            "in_regime": regime,
            "pair": pair_json(&pair),
            "round_trip": round_trip,
        }));
    }
    out.emit(json!({ "command": "bijection", "entries": entries }), || ascii.join("\n"));
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagree(failures.join("\n")))
    }
}

fn cmd_formula(config: &Config, out: &mut Out, n: usize, k: usize, lambda: &Partition) -> Outcome {
    check_n(config, n)?;
    let c = multiplicity_formula(n, k, lambda)?;
    out.emit(json!({ "command": "formula", "n": n, "k": k, "lambda": lambda, "multiplicity": c.to_string() }), || {
        c.to_string()
    });
    Ok(())
}

fn cmd_egf(config: &Config, out: &mut Out, lambda_bar: &Partition, order: usize, check: bool) -> Outcome {
    check_k(config, order)?;
    let series = timed(config, "series", || egf_rhs(lambda_bar, order));
    let coeffs: Vec<String> = (0..=order).map(|i| series.egf_coeff(i).to_string()).collect();
    let mut v = json!({ "command": "egf", "lambda_bar": lambda_bar, "order": order, "egf_coefficients": coeffs });
    if !check {
        out.emit(v, || series.to_string());
        return Ok(());
    }
    let report = timed(config, "check", || egf_check(lambda_bar, order));
    v["report"] = serde_json::to_value(&report).expect("serializable");
    v["passed"] = report.passed().into();
    out.emit(v, || {
        let mut s = vec![series.to_string()];
        s.extend(report.rows.iter().map(|r| {
            format!("k={} n={} formula={} egf={} {}", r.k, r.n, r.formula, r.egf, if r.ok { "ok" } else { "FAIL" })
        }));
        s.push(if report.vanishes_below {
            "low-order coefficients vanish".into()
        } else {
            "low-order coefficients NONZERO".into()
        });
        s.push(if report.passed() { "pass".into() } else { "FAIL".into() });
        s.join("\n")
    });
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Disagree(format!("generating function check failed for {lambda_bar}")))
    }
}

fn cmd_verify(config: &Config, out: &mut Out, n_max: usize, k_max: usize) -> Outcome {
    check_n(config, n_max)?;
    check_k(config, k_max)?;
    let mut kron_rows = Vec::new();
    let mut power_rows = Vec::new();
    let mut ascii = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let parts = partitions_of(n);
        let mut bad = 0usize;
        for lambda in &parts {
            for mu in &parts {
                if kron_product_via_operator(lambda, mu)? != kron_product(lambda, mu)? {
                    bad += 1;
                    failures.push(format!("{lambda} ⊙ {mu}"));
                }
            }
        }
        let pairs = parts.len() * parts.len();
        ascii.push(format!("kron n={n}: {pairs} pairs, {}", if bad == 0 { "ok" } else { "FAIL" }));
        kron_rows.push(json!({ "n": n, "pairs": pairs, "mismatches": bad, "ok": bad == 0 }));
    }
    for n in 2..=n_max {
        for k in 0..=k_max {
            let op = kron_power_nm1(n, k)?;
            let ch = kron_power_oracle(n, k)?;
            let tab = tableaux_power(n, k);
            let (formula, outside) = formula_power(n, k)?;
            let formula_ok =
                partitions_of(n).iter().filter(|p| !outside.contains(p)).all(|p| formula.coeff(p) == op.coeff(p));
            let ok = op == ch && op == tab && formula_ok;
            if !ok {
                failures.push(format!("power n={n} k={k}"));
            }
            ascii.push(format!(
                "power n={n} k={k}: operator/character/tableaux {}, formula on {} shapes {}",
                if op == ch && op == tab { "agree" } else { "DISAGREE" },
                partitions_of(n).len() - outside.len(),
                if formula_ok { "agrees" } else { "DISAGREES" }
            ));
            power_rows.push(json!({
                "n": n,
                "k": k,
                "routes_agree": op == ch && op == tab,
                "formula_shapes": partitions_of(n).len() - outside.len(),
                "formula_agrees": formula_ok,
                "ok": ok,
            }));
        }
    }
    let passed = failures.is_empty();
    ascii.push(if passed { "all pass".into() } else { "FAIL".into() });
    out.emit(
        json!({ "command": "verify", "n": n_max, "k": k_max, "kron": kron_rows, "power": power_rows, "passed": passed }),
        || ascii.join("\n"),
    );
    if passed {
        Ok(())
    } else {
        Err(Failure::Disagree(failures.join("\n")))
    }
}

fn run(cli: &Cli, out: &mut Out) -> Outcome {
    let config = &cli.config;
    match &cli.command {
        Command::Chartable { n } => cmd_chartable(config, out, *n),
        Command::Kron { lambda, mu, method } => cmd_kron(config, out, lambda, mu, *method),
        Command::Operator { lambda_bar } => cmd_operator(out, lambda_bar),
        Command::Power { n, k, method } => cmd_power(config, out, *n, *k, *method),
        Command::Tableaux { action } => cmd_tableaux(config, out, action),
        Command::Bijection { file, inverse } => cmd_bijection(config, out, file.as_deref(), *inverse),
        Command::Formula { n, k, lambda } => cmd_formula(config, out, *n, *k, lambda),
        Command::Egf { lambda_bar, order, check } => cmd_egf(config, out, lambda_bar, *order, *check),
        Command::Verify { n, k } => cmd_verify(config, out, *n, *k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { format: cli.config.format, buf: String::new() };
    let result = run(&cli, &mut out);
    let _ = io::stdout().write_all(out.buf.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagree(msg)) => {
            eprintln!("disagreement:\n{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(3)
        }
    }
}
