//! Command-line front end. `run` parses arguments, executes one command and
//! returns what to print along with the exit status: 0 when every check
//! passes, 1 when a check fails or the deck is rejected, 2 for bad usage
//! or unreadable input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::folcheck::{
    self, bounded_degree_qr_bound, fsv_radius, hanf_equiv, hanf_transfer, hanf_type, n_phi, parse_sentence,
    quantifier_rank, recognizer_sweep, Battery, Family, FormulaSource, Recognizer,
};
use crate::graph::io::{emit_deck, emit_graph, emit_graph6, emit_pointed, parse_deck, parse_graph};
use crate::graph::{deck_any, enumerate_graphs, max_order_from_env, AnyGraph, Deck, Graph};
use crate::invariants;
use crate::neighborhoods::{create_neighborhoods, nd_from_deck, NeighborhoodDeck};
use crate::poly::{poly_to_json, MultiPoly};
use crate::reconstruct::{verify_reconstruction, Invariant, Reconstructor, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "deckwright", version, about = "Graph polynomials and their reconstruction from vertex-deleted decks")]
struct Cli {
    /// Output format; the default is text for `deck` and `enumerate`, JSON otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Seed for random colorings and the sentence battery.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a polynomial invariant of a graph directly.
    Poly(PolyArgs),
    /// Write the deck of a graph.
    Deck(DeckArgs),
    /// Reconstruct an invariant from a deck file alone.
    Reconstruct(ReconstructArgs),
    /// Compare reconstruction with direct computation over all small graphs.
    Verify(VerifyArgs),
    /// Recover the neighborhood deck of a graph from its deck.
    Nbd(NbdArgs),
    /// First-order logic tools.
    Fol {
        #[command(subcommand)]
        command: FolCommand,
    },
    /// List one graph per isomorphism class, in graph6.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    Tutte,
    Charpoly,
    Chromatic,
    Interlace,
    U,
    Ulab,
    Xi,
    Xilab,
    Xg,
    Bichromatic,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long, value_enum)]
    invariant: PolyKind,
    /// Graph file: graph6, or a colored edge list.
    #[arg(long)]
    graph: PathBuf,
    /// For `xg`: substitute each power sum by its value in this many commuting variables.
    #[arg(long)]
    truncate: Option<usize>,
    /// For `bichromatic`: number of colors.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// For `bichromatic`: colors `1..=y0` must be proper.
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<String>,
}

#[derive(Args, Debug)]
struct DeckArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Write the deck here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[arg(long)]
    deck: PathBuf,
    /// One of u, ulab, xi, xilab, interlace, rank, pmparity.
    #[arg(long)]
    invariant: Invariant,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    invariant: Invariant,
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    min_n: usize,
    /// Palette size for random edge colorings (ulab and xilab only).
    #[arg(long)]
    colors: Option<u8>,
    /// Random colorings per graph.
    #[arg(long, default_value_t = 20)]
    colorings: usize,
    /// Include per-graph timings in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct NbdArgs {
    #[arg(long)]
    deck: PathBuf,
    #[arg(long)]
    radius: usize,
}

#[derive(Args, Debug)]
struct FormulaInput {
    /// File holding one sentence.
    #[arg(long, conflicts_with = "formula")]
    formula_file: Option<PathBuf>,
    /// The sentence itself.
    #[arg(long)]
    formula: Option<String>,
}

#[derive(Subcommand, Debug)]
enum FolCommand {
    /// Truth of a sentence in a graph.
    Eval {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Quantifier rank of a sentence, macros expanded.
    Qr {
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Ball types of one graph, or equivalence of two.
    Hanf {
        #[arg(long, required = true, num_args = 1..=2)]
        graph: Vec<PathBuf>,
        #[arg(long)]
        d: usize,
    },
    /// Family membership of one graph, or a threshold sweep over all graphs.
    Recognize {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "corrected")]
        source: FormulaSource,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Check that Hanf-equivalent graphs agree on the battery.
    Transfer {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// List the seeded sentence battery.
    Battery,
    /// Radius and order bounds for a quantifier rank.
    Bounds {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long)]
        order: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    connected: bool,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

/// Exit status for an error: 1 when the input was well formed but rejected,
/// 2 when it could not be read or understood.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InconsistentDeck(_)
        | Error::OutsideDomain(_)
        | Error::NotUPolynomial
        | Error::NotULabPolynomial(_)
        | Error::SingularSubstitution(_)
        | Error::KellyInapplicable { .. } => 1,
        _ => 2,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    if let Some(t) = cli.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let text_default = matches!(cli.command, Command::Deck(_) | Command::Enumerate(_));
    let format = cli.format.unwrap_or(if text_default { Format::Text } else { Format::Json });
    match execute(&cli) {
        Ok(report) => {
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
                Format::Text => report.text,
            };
            Outcome { code: if report.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<AnyGraph> {
    parse_graph(&read(path)?)
}

fn read_plain(path: &Path) -> Result<Graph> {
    match read_graph(path)? {
        AnyGraph::Plain(g) => Ok(g),
        AnyGraph::Colored(_) => Err(Error::MixedColoring),
    }
}

fn read_deck(path: &Path) -> Result<Deck> {
    parse_deck(&read(path)?)
}

fn check_order_cap(n: usize) -> Result<()> {
    let limit = max_order_from_env();
    if n > limit {
        return Err(Error::OrderLimit { n, limit });
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Poly(a) => poly(a),
        Command::Deck(a) => deck_cmd(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Verify(a) => verify(a, cli.seed),
        Command::Nbd(a) => nbd(a),
        Command::Fol { command } => fol(command, cli.seed),
        Command::Enumerate(a) => enumerate(a),
    }
}

fn kind_name(k: PolyKind) -> String {
    k.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn parse_rational(s: &str, what: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::InvalidArgument(format!("{what} must be a rational like 3 or -1/2, got `{s}`")))
}

fn poly(a: &PolyArgs) -> Result<Report> {
    let g = read_graph(&a.graph)?;
    let id = emit_graph(&g);
    let name = kind_name(a.invariant);
    let p: MultiPoly = match a.invariant {
        PolyKind::Bichromatic => return bichromatic(a, g.base(), &id),
        PolyKind::Xg => {
            let xg = invariants::compute(&name, &g)?;
            match a.truncate {
                Some(k) => invariants::truncate_power_sums(&xg, k),
                None => xg,
            }
        }
        _ => invariants::compute(&name, &g)?,
    };
    let text = format!("{p}\n");
    Ok(Report::ok(json!({ "invariant": name, "graph": id, "poly": poly_to_json(&p) }), text))
}

fn bichromatic(a: &PolyArgs, g: &Graph, id: &str) -> Result<Report> {
    let (Some(x0), Some(y0)) = (&a.x0, &a.y0) else {
        return Err(Error::InvalidArgument("bichromatic needs --x0 and --y0".into()));
    };
    let x0 = parse_rational(x0, "--x0")?;
    let y0 = parse_rational(y0, "--y0")?;
    let value = invariants::bivariate_chromatic(g, &x0, &y0)?;
    let mut out = json!({ "invariant": "bichromatic", "graph": id, "x0": x0.to_string(), "y0": y0.to_string(), "value": value.to_string() });
    let as_count = |r: &BigRational| (r.is_integer() && !r.is_negative()).then(|| r.to_integer().to_u32()).flatten();
    if let (Some(x), Some(y)) = (as_count(&x0), as_count(&y0)) {
        if y <= x && x <= 6 {
            out["count"] = json!(invariants::bivariate_chromatic_count(g, x, y).to_string());
        }
    }
    Ok(Report::ok(out, format!("{value}\n")))
}

fn deck_cmd(a: &DeckArgs) -> Result<Report> {
    let g = read_graph(&a.graph)?;
    let d = deck_any(&g)?;
    let text = emit_deck(&d);
    let cards: Vec<String> = text.lines().skip(1).map(str::to_string).collect();
    let json = json!({ "n": d.order(), "colored": d.is_colored(), "cards": cards });
    if let Some(out) = &a.out {
        std::fs::write(out, &text).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
        return Ok(Report::ok(json, String::new()));
    }
    Ok(Report::ok(json, text))
}

fn reconstruct(a: &ReconstructArgs) -> Result<Report> {
    let d = read_deck(&a.deck)?;
    let mut r = Reconstructor::new();
    let result = a.invariant.reconstruct(&mut r, &d)?;
    let value = match a.invariant {
        Invariant::Rank | Invariant::PmParity => json!(result.coefficient(&Default::default()).to_string()),
        _ => poly_to_json(&result),
    };
    let json = json!({ "invariant": a.invariant, "n": d.order(), "result": value });
    Ok(Report::ok(json, format!("{result}\n")))
}

fn verify(a: &VerifyArgs, seed: u64) -> Result<Report> {
    let mut cfg = VerifyConfig::new(a.invariant, a.max_n);
    cfg.min_n = a.min_n;
    cfg.colors = a.colors;
    cfg.colorings = a.colorings;
    cfg.seed = seed;
    cfg.timing = a.timing;
    let report = verify_reconstruction(&cfg)?;
    let mut text = format!(
        "{}: {} graphs, {} checks, {} mismatches\n",
        report.invariant,
        report.graphs(),
        report.checks,
        report.mismatches.len()
    );
    for m in &report.mismatches {
        let _ = writeln!(text, "  {} {}", m.graph6, m.detail);
    }
    Ok(Report { json: to_json(&report), ok: report.passed(), text })
}

fn deck_entries(nd: &NeighborhoodDeck) -> Vec<Value> {
    nd.iter().map(|(f, c)| json!({ "ball": emit_pointed(f), "count": c })).collect()
}

fn deck_lines(nd: &NeighborhoodDeck) -> String {
    nd.iter().map(|(f, c)| format!("{c} x {}\n", emit_pointed(f))).collect()
}

fn nbd(a: &NbdArgs) -> Result<Report> {
    let d = read_deck(&a.deck)?;
    let nd = nd_from_deck(&d, a.radius)?;
    let recovered = create_neighborhoods(&nd, d.order())?;
    let json = json!({
        "n": d.order(),
        "radius": a.radius,
        "card_neighborhoods": deck_entries(&nd),
        "neighborhoods": deck_entries(&recovered),
    });
    Ok(Report::ok(json, deck_lines(&recovered)))
}

fn read_formula(input: &FormulaInput) -> Result<folcheck::Formula> {
    let text = match (&input.formula_file, &input.formula) {
        (Some(path), _) => read(path)?,
        (None, Some(text)) => text.clone(),
        (None, None) => return Err(Error::InvalidArgument("give --formula-file or --formula".into())),
    };
    parse_sentence(&text)
}

fn fol(cmd: &FolCommand, seed: u64) -> Result<Report> {
    match cmd {
        FolCommand::Eval { input, graph } => {
            let f = read_formula(input)?;
            let g = read_plain(graph)?;
            let holds = folcheck::evaluate(&g, &f)?;
            let json = json!({ "formula": f.to_string(), "graph": emit_graph6(&g), "rank": quantifier_rank(&f), "holds": holds });
            Ok(Report::ok(json, format!("{holds}\n")))
        }
        FolCommand::Qr { input } => {
            let f = read_formula(input)?;
            let rank = quantifier_rank(&f);
            let json = json!({ "formula": f.to_string(), "expanded": f.expand_macros().to_string(), "rank": rank });
            Ok(Report::ok(json, format!("{rank}\n")))
        }
        FolCommand::Hanf { graph, d } => {
            let gs = graph.iter().map(|p| read_plain(p)).collect::<Result<Vec<_>>>()?;
            let types: Vec<Value> = gs.iter().map(|g| json!(deck_entries(&hanf_type(g, *d)))).collect();
            if let [a, b] = gs.as_slice() {
                let eq = hanf_equiv(a, b, *d);
                let json = json!({ "radius": d, "equivalent": eq, "types": types });
                return Ok(Report::ok(json, format!("{eq}\n")));
            }
            let json = json!({ "radius": d, "type": types[0] });
            Ok(Report::ok(json, deck_lines(&hanf_type(&gs[0], *d))))
        }
        FolCommand::Recognize { family, source, graph, min_n, max_n } => {
            let r = Recognizer::new(*family, *source)?;
            if let Some(path) = graph {
                let g = read_plain(path)?;
                let member = folcheck::is_member(*family, &g);
                let sentence = r.sentence_holds(&g);
                let side = family.side_condition(&g);
                let json = json!({
                    "family": family,
                    "source": source,
                    "graph": emit_graph6(&g),
                    "member": member,
                    "sentence_holds": sentence,
                    "side_condition": side,
                    "accepted": sentence && side,
                });
                return Ok(Report { json, text: format!("{}\n", sentence && side), ok: member == (sentence && side) });
            }
            check_order_cap(*max_n)?;
            let report = recognizer_sweep(&[r], *min_n, *max_n)?.remove(0);
            let threshold = report.threshold.map_or("none".to_string(), |t| t.to_string());
            let text = format!("{} {}: threshold {threshold} within n <= {max_n}\n", report.family, report.source);
            Ok(Report { ok: report.threshold.is_some(), json: to_json(&report), text })
        }
        FolCommand::Transfer { k, max_n } => {
            check_order_cap(*max_n)?;
            let report = hanf_transfer(&Battery::generate(seed), *k, *max_n)?;
            let text = format!(
                "rank <= {k}, radius {}: {} equivalent pairs, {} disagreements\n",
                report.radius,
                report.equivalent_pairs,
                report.disagreements.len()
            );
            Ok(Report { ok: report.disagreements.is_empty(), json: to_json(&report), text })
        }
        FolCommand::Battery => {
            let battery = Battery::generate(seed);
            let entries: Vec<Value> = battery
                .sentences()
                .iter()
                .map(|s| json!({ "rank": s.rank(), "sentence": s.formula().to_string() }))
                .collect();
            let text = battery.sentences().iter().map(|s| format!("{}\t{}\n", s.rank(), s.formula())).collect();
            Ok(Report::ok(json!({ "seed": seed, "sentences": entries }), text))
        }
        FolCommand::Bounds { rank, degree, order } => {
            let radius = fsv_radius(*rank)?;
            let mut json = json!({ "rank": rank, "fsv_radius": radius });
            let mut text = format!("fsv_radius {radius}\n");
            if let Some(f) = degree {
                let np = n_phi(*f, *rank)?;
                json["n_phi"] = json!(np.to_string());
                let _ = writeln!(text, "n_phi {np}");
                if let Some(n) = order {
                    let b = bounded_degree_qr_bound(*f, *n)?;
                    json["qr_bound"] = json!(b);
                    let _ = writeln!(text, "qr_bound {b}");
                }
            }
            Ok(Report::ok(json, text))
        }
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<Report> {
    let graphs: Vec<String> = enumerate_graphs(a.n, a.connected)?.map(|g| emit_graph6(&g)).collect();
    let text = graphs.iter().map(|g| format!("{g}\n")).collect();
    Ok(Report::ok(json!({ "n": a.n, "connected": a.connected, "count": graphs.len(), "graphs": graphs }), text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("deckwright").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["verify", "--invariant", "nope", "--max-n", "4"]).code, 2);
        let help = run_args(&["--help"]);
        assert_eq!(help.code, 0);
        assert!(help.stdout.contains("reconstruct"));
    }

    #[test]
    fn bounds_and_qr() {
        let out = run_args(&["fol", "bounds", "--rank", "1", "--degree", "2", "--order", "5"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["fsv_radius"], 1);
        assert_eq!(v["n_phi"], "10");
        let out = run_args(&["fol", "qr", "--formula", "forall x. forall y. (!E(x,x) & (E(x,y) -> E(y,x)))"]);
        assert_eq!(serde_json::from_str::<Value>(&out.stdout).unwrap()["rank"], 2);
        assert_eq!(run_args(&["fol", "qr", "--formula", "E(x,y)"]).code, 2);
    }

    #[test]
    fn exit_codes_by_error() {
        assert_eq!(exit_code(&Error::inconsistent("x")), 1);
        assert_eq!(exit_code(&Error::parse(0, "x")), 2);
        assert_eq!(exit_code(&Error::OrderLimit { n: 10, limit: 9 }), 2);
    }
}
