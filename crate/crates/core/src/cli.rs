//! The `fano-acm` command line.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a valid query has a
//! negative answer (no ACM bundle, not admissible, no decomposition).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::acm::{self, Admissibility, AdmissibleTriple, Decomposition};
use crate::catalog::{self, RowCheck};
use crate::chow::{ChernData, FanoThreefold};
use crate::error::Error;
use crate::json::number;
use crate::rank2;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_NEGATIVE: u8 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "fano-acm",
    version,
    about = "ACM bundles and Chern-class calculus on the Fano threefolds V_3, V_4, V_5"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BundleArgs {
    /// Degree of V_d (3, 4 or 5).
    #[arg(long)]
    d: i64,
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    c1: BigInt,
    #[arg(long)]
    c2: BigInt,
    #[arg(long)]
    c3: BigInt,
}

impl BundleArgs {
    fn parse(&self) -> Result<(FanoThreefold, ChernData), Error> {
        let v = FanoThreefold::new(self.d)?;
        let c = ChernData::new(self.rank, self.c1.clone(), self.c2.clone(), self.c3.clone())?;
        Ok((v, c))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristic χ(F(t)) by Riemann–Roch.
    #[command(allow_negative_numbers = true)]
    Chi {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, default_value = "0")]
        twist: BigInt,
    },
    /// Chern classes of the twist F(t).
    #[command(allow_negative_numbers = true)]
    Twist {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long)]
        t: BigInt,
    },
    /// Which rank-two ACM bundle has Chern classes (c1, c2).
    #[command(allow_negative_numbers = true)]
    Classify2 {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        c1: BigInt,
        #[arg(long)]
        c2: BigInt,
    },
    /// Admissible first Chern classes for one rank, with forced c2, c3.
    #[command(allow_negative_numbers = true)]
    Admissible {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        rank: u32,
        /// Use the bound (r-1)/d ≤ c1 ≤ r.
        #[arg(long)]
        relaxed: bool,
    },
    /// Direct-sum witness for an admissible (rank, c1), with validation.
    #[command(allow_negative_numbers = true)]
    Witness {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        c1: i64,
    },
    /// All admissible triples for 3 ≤ r ≤ max-rank.
    #[command(allow_negative_numbers = true)]
    Census {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        max_rank: u32,
        #[arg(long)]
        relaxed: bool,
    },
    /// Recompute the small-rank table and report discrepancies.
    #[command(allow_negative_numbers = true)]
    VerifyTable {
        /// Only this degree; all of 3, 4, 5 if omitted.
        #[arg(long)]
        d: Option<i64>,
    },
    /// Brute-force every decomposition into catalog blocks.
    #[command(allow_negative_numbers = true)]
    Oracle {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        c1: i64,
        #[arg(long, default_value_t = acm::DEFAULT_ORACLE_BOUND)]
        bound: u32,
    },
}

/// Outcome of a subcommand: what to print and how to exit.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn negative(stdout: String, message: String) -> Self {
        Outcome {
            stdout,
            stderr: message,
            code: EXIT_NEGATIVE,
        }
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// writes to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    match dispatch(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            if !outcome.stderr.is_empty() {
                let _ = writeln!(err, "{}", outcome.stderr);
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Chi { bundle, twist } => {
            let (v, c) = bundle.parse()?;
            Ok(Outcome::ok(chi(format, v, &c, twist)))
        }
        Command::Twist { bundle, t } => {
            let (v, c) = bundle.parse()?;
            Ok(Outcome::ok(twist(format, v, &c, t)))
        }
        Command::Classify2 { d, c1, c2 } => classify2(format, FanoThreefold::new(*d)?, c1, c2),
        Command::Admissible { d, rank, relaxed } => {
            let v = FanoThreefold::new(*d)?;
            let triples =
                acm::enumerate_admissible(v, *rank, Admissibility::from_relaxed(*relaxed))?;
            Ok(Outcome::ok(triples_output(format, &triples)))
        }
        Command::Witness { d, rank, c1 } => witness(format, FanoThreefold::new(*d)?, *rank, *c1),
        Command::Census {
            d,
            max_rank,
            relaxed,
        } => {
            let v = FanoThreefold::new(*d)?;
            if *max_rank < 3 {
                return Err(Error::InvalidRank(*max_rank));
            }
            let mode = Admissibility::from_relaxed(*relaxed);
            let mut triples = Vec::new();
            for r in 3..=*max_rank {
                triples.extend(acm::enumerate_admissible(v, r, mode)?);
            }
            Ok(Outcome::ok(triples_output(format, &triples)))
        }
        Command::VerifyTable { d } => {
            let degrees = match d {
                Some(d) => vec![FanoThreefold::new(*d)?],
                None => FanoThreefold::ALL.to_vec(),
            };
            Ok(Outcome::ok(verify_table(format, &degrees)))
        }
        Command::Oracle { d, rank, c1, bound } => {
            oracle(format, FanoThreefold::new(*d)?, *rank, *c1, *bound)
        }
    }
}

fn to_json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn chern_cells(c: &ChernData) -> Vec<String> {
    vec![
        c.rank().to_string(),
        c.c1().to_string(),
        c.c2().to_string(),
        c.c3().to_string(),
    ]
}

fn chi(format: OutputFormat, v: FanoThreefold, c: &ChernData, t: &BigInt) -> String {
    let twisted = c.twist(v, t.clone());
    let value = twisted.euler_char(v);
    match format {
        OutputFormat::Human => format!("{v}: F = {c}\nF({t}) = {twisted}\nchi(F({t})) = {value}\n"),
        OutputFormat::Json => to_json_line(&json!({
            "d": v.degree(),
            "chern": c,
            "twist": number(t),
            "twisted": twisted,
            "chi": value,
        })),
        OutputFormat::Csv => {
            let mut row = vec![v.degree().to_string()];
            row.extend(chern_cells(c));
            row.push(t.to_string());
            row.push(value.to_string());
            to_csv(&["d", "rank", "c1", "c2", "c3", "twist", "chi"], [row])
        }
    }
}

fn twist(format: OutputFormat, v: FanoThreefold, c: &ChernData, t: &BigInt) -> String {
    let twisted = c.twist(v, t.clone());
    match format {
        OutputFormat::Human => format!("{v}: F = {c}\nF({t}) = {twisted}\n"),
        OutputFormat::Json => to_json_line(&json!({
            "d": v.degree(),
            "chern": c,
            "t": number(t),
            "twisted": twisted,
        })),
        OutputFormat::Csv => {
            let mut row = vec![v.degree().to_string()];
            row.extend(chern_cells(c));
            row.push(t.to_string());
            row.extend(chern_cells(&twisted).into_iter().skip(1));
            to_csv(
                &[
                    "d",
                    "rank",
                    "c1",
                    "c2",
                    "c3",
                    "t",
                    "c1_twisted",
                    "c2_twisted",
                    "c3_twisted",
                ],
                [row],
            )
        }
    }
}

fn classify2(
    format: OutputFormat,
    v: FanoThreefold,
    c1: &BigInt,
    c2: &BigInt,
) -> Result<Outcome, Error> {
    let verdict = rank2::classify_rank2(v, c1, c2);
    let chern = verdict.chern(v);
    let stdout = match format {
        OutputFormat::Human => {
            let mut s = format!("{v}: rank 2, (c1, c2) = ({c1}, {c2})\n");
            match (&verdict, &chern) {
                (rank2::Rank2Verdict::NoACMBundle, _) => s.push_str("kind: none\n"),
                (rank2::Rank2Verdict::SplitLineBundles(a, b), Some(c)) => {
                    s.push_str(&format!(
                        "kind: split, a={a}, b={b}\nbundle: {verdict} = {c}\n"
                    ));
                }
                (_, Some(c)) => {
                    let (_, t) = verdict.model().expect("indecomposable verdict");
                    s.push_str(&format!(
                        "kind: {}, t={t}\nbundle: {verdict} = {c}\n",
                        verdict.kind()
                    ));
                }
                _ => unreachable!("every positive verdict has Chern data"),
            }
            s
        }
        OutputFormat::Json => to_json_line(&json!({
            "d": v.degree(),
            "c1": number(c1),
            "c2": number(c2),
            "verdict": verdict.to_json(),
            "chern": chern,
        })),
        OutputFormat::Csv => {
            let (twist, a, b) = match &verdict {
                rank2::Rank2Verdict::SplitLineBundles(a, b) => {
                    (String::new(), a.to_string(), b.to_string())
                }
                rank2::Rank2Verdict::NoACMBundle => Default::default(),
                _ => (
                    verdict.model().expect("indecomposable").1.to_string(),
                    String::new(),
                    String::new(),
                ),
            };
            to_csv(
                &["d", "c1", "c2", "kind", "twist", "a", "b"],
                [vec![
                    v.degree().to_string(),
                    c1.to_string(),
                    c2.to_string(),
                    verdict.kind().to_string(),
                    twist,
                    a,
                    b,
                ]],
            )
        }
    };
    Ok(if verdict.is_none() {
        Outcome::negative(
            stdout,
            format!("no ACM rank-2 bundle on {v} has (c1, c2) = ({c1}, {c2})"),
        )
    } else {
        Outcome::ok(stdout)
    })
}

fn triples_output(format: OutputFormat, triples: &[AdmissibleTriple]) -> String {
    match format {
        OutputFormat::Human => {
            let mut s = String::new();
            for t in triples {
                s.push_str(&format!(
                    "V_{} r={} c1={}: (c1, c2, c3) = ({}, {}, {}), curve degree {}, genus {}, {}\n",
                    t.d,
                    t.rank,
                    t.c1,
                    t.c1,
                    t.c2,
                    t.c3,
                    t.curve_degree,
                    t.curve_genus,
                    t.existence()
                ));
            }
            s
        }
        OutputFormat::Json => {
            let items: Vec<Value> = triples
                .iter()
                .map(|t| {
                    let mut value = serde_json::to_value(t).expect("serializable triple");
                    value["existence"] = json!(t.existence());
                    value
                })
                .collect();
            to_json_line(&items)
        }
        OutputFormat::Csv => to_csv(
            &[
                "d",
                "rank",
                "c1",
                "c2",
                "c3",
                "curve_degree",
                "curve_genus",
                "strict",
                "existence",
            ],
            triples.iter().map(|t| {
                vec![
                    t.d.to_string(),
                    t.rank.to_string(),
                    t.c1.to_string(),
                    t.c2.to_string(),
                    t.c3.to_string(),
                    t.curve_degree.to_string(),
                    t.curve_genus.to_string(),
                    t.strict.to_string(),
                    t.existence().to_string(),
                ]
            }),
        ),
    }
}

fn decomposition_json(dec: &Decomposition, v: FanoThreefold) -> Value {
    json!({
        "blocks": dec.blocks(),
        "display": dec.to_string(),
        "chern": dec.total_chern(v).ok(),
    })
}

fn witness(format: OutputFormat, v: FanoThreefold, rank: u32, c1: i64) -> Result<Outcome, Error> {
    let dec = match acm::witness(v, rank, c1) {
        Ok(dec) => dec,
        Err(Error::NotAdmissible(reason)) => {
            let stdout = match format {
                OutputFormat::Human => {
                    format!("{v}: rank {rank}, c1 = {c1}\nnot admissible: {reason}\n")
                }
                OutputFormat::Json => to_json_line(&json!({
                    "d": v.degree(),
                    "rank": rank,
                    "c1": c1,
                    "admissible": false,
                    "reason": reason,
                })),
                OutputFormat::Csv => to_csv(
                    &["d", "rank", "c1", "decomposition", "c2", "c3", "valid"],
                    std::iter::empty(),
                ),
            };
            return Ok(Outcome::negative(
                stdout,
                format!("not admissible: {reason}"),
            ));
        }
        Err(e) => return Err(e),
    };
    let report = acm::validate_witness(v, &dec, rank, c1);
    let stdout = match format {
        OutputFormat::Human => {
            let mut s = format!(
                "{v}: rank {rank}, c1 = {c1}\nwitness: {dec}\nchern: {}\n",
                report.computed
            );
            for check in &report.checks {
                let mark = if check.passed { "pass" } else { "FAIL" };
                s.push_str(&format!("[{mark}] {}: {}\n", check.kind, check.detail));
            }
            s
        }
        OutputFormat::Json => to_json_line(&json!({
            "d": v.degree(),
            "rank": rank,
            "c1": c1,
            "admissible": true,
            "decomposition": decomposition_json(&dec, v),
            "report": report,
            "valid": report.passed(),
        })),
        OutputFormat::Csv => to_csv(
            &["d", "rank", "c1", "decomposition", "c2", "c3", "valid"],
            [vec![
                v.degree().to_string(),
                rank.to_string(),
                c1.to_string(),
                dec.to_string(),
                report.computed.c2().to_string(),
                report.computed.c3().to_string(),
                report.passed().to_string(),
            ]],
        ),
    };
    if report.passed() {
        Ok(Outcome::ok(stdout))
    } else {
        Ok(Outcome {
            stdout,
            stderr: "error: witness failed validation".to_string(),
            code: EXIT_INVALID,
        })
    }
}

const TABLE_HEADER: [&str; 11] = [
    "d",
    "d_set",
    "rank",
    "c1",
    "c2_printed",
    "c3_printed",
    "c2_computed",
    "c3_computed",
    "decomposition",
    "status",
    "row",
];

fn verify_table(format: OutputFormat, degrees: &[FanoThreefold]) -> String {
    let checks: Vec<(FanoThreefold, Vec<RowCheck>)> = degrees
        .iter()
        .map(|&v| (v, catalog::check_table1(v)))
        .collect();
    match format {
        OutputFormat::Human => {
            let mut s = String::new();
            for (v, rows) in &checks {
                let bad: Vec<_> = rows.iter().flat_map(|r| r.discrepancies.iter()).collect();
                s.push_str(&format!(
                    "{v}: {} rows checked, {} agree, {} discrepanc{}\n",
                    rows.len(),
                    rows.iter().filter(|r| r.passed()).count(),
                    bad.len(),
                    if bad.len() == 1 { "y" } else { "ies" }
                ));
                for r in rows {
                    s.push_str(&format!(
                        "  row {:>2}  r={} printed ({}, {}, {})  computed {}  {}  {}\n",
                        r.row,
                        r.rank,
                        r.printed_c1,
                        r.printed_c2,
                        r.printed_c3,
                        r.computed,
                        r.decomposition,
                        r.status()
                    ));
                }
                for x in bad {
                    s.push_str(&format!("  discrepancy: {x}\n"));
                }
            }
            s
        }
        OutputFormat::Json => {
            let items: Vec<Value> = checks
                .iter()
                .map(|(v, rows)| {
                    let discrepancies: Vec<_> =
                        rows.iter().flat_map(|r| r.discrepancies.iter()).collect();
                    json!({"d": v.degree(), "rows": rows, "discrepancies": discrepancies})
                })
                .collect();
            to_json_line(&items)
        }
        OutputFormat::Csv => to_csv(
            &TABLE_HEADER,
            checks.iter().flat_map(|(_, rows)| rows.iter()).map(|r| {
                vec![
                    r.d.to_string(),
                    r.d_set
                        .iter()
                        .map(u8::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                    r.rank.to_string(),
                    r.printed_c1.to_string(),
                    r.printed_c2.to_string(),
                    r.printed_c3.to_string(),
                    r.computed.c2().to_string(),
                    r.computed.c3().to_string(),
                    r.decomposition.clone(),
                    r.status(),
                    r.row.to_string(),
                ]
            }),
        ),
    }
}

fn oracle(
    format: OutputFormat,
    v: FanoThreefold,
    rank: u32,
    c1: i64,
    bound: u32,
) -> Result<Outcome, Error> {
    let found = acm::oracle_enumerate_bounded(v, rank, c1, bound)?;
    let stdout = match format {
        OutputFormat::Human => {
            let mut s = format!(
                "{v}: rank {rank}, c1 = {c1}, forced (c2, c3) = ({}, {})\n{} decompositions\n",
                acm::forced_c2(v, rank, c1),
                acm::forced_c3(v, rank, c1),
                found.len()
            );
            for dec in &found {
                let c = dec.total_chern(v).expect("oracle blocks are available");
                s.push_str(&format!("  {dec} = {c}\n"));
            }
            s
        }
        OutputFormat::Json => to_json_line(&json!({
            "d": v.degree(),
            "rank": rank,
            "c1": c1,
            "decompositions": found.iter().map(|dec| decomposition_json(dec, v)).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => to_csv(
            &["d", "rank", "c1", "decomposition", "c2", "c3"],
            found.iter().map(|dec| {
                let c = dec.total_chern(v).expect("oracle blocks are available");
                vec![
                    v.degree().to_string(),
                    rank.to_string(),
                    c1.to_string(),
                    dec.to_string(),
                    c.c2().to_string(),
                    c.c3().to_string(),
                ]
            }),
        ),
    };
    Ok(if found.is_empty() {
        Outcome::negative(
            stdout,
            format!("no decomposition into catalog blocks for rank {rank}, c1 = {c1} on {v}"),
        )
    } else {
        Outcome::ok(stdout)
    })
}
