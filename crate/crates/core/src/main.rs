use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use metakit::algorithms::{
    brute_min_height, build_min_height, build_min_height_spine, height, mergesort_traced, oracle_sort, quicksort_tree,
    rep_changer, sat_add, sum_sat, QuicksortInstance, QuicksortMutant, BRUTE_MAX_LEN, SUM_CAP,
};
use metakit::finrel::expr::Expr;
use metakit::finrel::{parse_fixtures, write_fixture, Carrier, Rel, DEFAULT_POWER_BOUND};
use metakit::inductive::{parse_term, Layer, Term, TermKind};
use metakit::laws::{self, GenConfig, Mutant, Status};
use metakit::metaphor::{checklist, derive_z};

const EXIT_FAIL: u8 = 1;
const EXIT_ALARM: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "metakit",
    version,
    about = "Executable relation algebra, law checking and divide-and-conquer certification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the law catalogue.
    Laws(LawsArgs),
    /// Run one of the algorithms on a term literal and print its trace.
    Demo(DemoArgs),
    /// Certify a divide-and-conquer instantiation at bounded size.
    Checklist(ChecklistArgs),
    /// Evaluate a relation expression over fixture relations.
    Rel(RelArgs),
}

#[derive(Args)]
struct LawsArgs {
    /// Largest carrier enumerated exhaustively.
    #[arg(long, default_value_t = 2)]
    max_size: usize,
    /// Largest carrier drawn at random.
    #[arg(long, default_value_t = 4)]
    random_max_size: usize,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, env = "METAKIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Depth bound of inductive carriers.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Largest alphabet of inductive carriers.
    #[arg(long, default_value_t = 3)]
    alphabet: usize,
    /// Exhaustive instance budget per law.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Only these law ids (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Add a deliberately wrong law to the run.
    #[arg(long, value_enum)]
    mutate: Option<LawMutant>,
    #[arg(long)]
    json: bool,
    /// Record wall time per law.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawMutant {
    WrongConverse,
    ConverseOrder,
    Associativity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Qsort,
    Msort,
    Minheight,
    Repchanger,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(value_enum)]
    algo: Algo,
    /// A list literal such as `[3,1,2]`.
    input: String,
    /// Seed value appended by the representation changer.
    #[arg(long, default_value_t = 5)]
    b: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Instantiation {
    Quicksort,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChecklistMutant {
    DropLeftBound,
}

#[derive(Args)]
struct ChecklistArgs {
    #[arg(value_enum)]
    which: Instantiation,
    #[arg(long, default_value_t = 3)]
    alphabet: usize,
    #[arg(long, default_value_t = 3)]
    maxlen: usize,
    #[arg(long, value_enum)]
    mutate: Option<ChecklistMutant>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RelArgs {
    /// Expression over the fixture names, e.g. `R ; conv R ; R`.
    expr: String,
    /// Fixture files; unnamed relations are called R, S, T, ... in order.
    #[arg(long = "fixture", short = 'f', required = true)]
    fixtures: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_POWER_BOUND)]
    power_bound: usize,
    /// Also report inclusion either way against this relation.
    #[arg(long)]
    compare: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run = match cli.cmd {
        Cmd::Laws(a) => cmd_laws(a),
        Cmd::Demo(a) => cmd_demo(a),
        Cmd::Checklist(a) => cmd_checklist(a),
        Cmd::Rel(a) => cmd_rel(a),
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cmd_laws(a: LawsArgs) -> Result<u8, String> {
    let cfg = GenConfig {
        max_size: a.max_size,
        random_max_size: a.random_max_size,
        samples: a.samples,
        seed: a.seed,
        depth: a.depth,
        alphabet: a.alphabet,
        budget: a.budget,
        timing: a.timing,
        ..GenConfig::default()
    };
    let mut selected = Vec::new();
    for id in &a.only {
        let law = laws::law(id).ok_or_else(|| format!("unknown law id {id:?}"))?;
        selected.push(law.clone());
    }
    if a.only.is_empty() && a.mutate.is_none() {
        selected = laws::catalogue().to_vec();
    }
    if let Some(m) = a.mutate {
        selected.push(laws::mutant_law(match m {
            LawMutant::WrongConverse => Mutant::WrongConverse,
            LawMutant::ConverseOrder => Mutant::ConverseOrder,
            LawMutant::Associativity => Mutant::Associativity,
        }));
    }
    let report = laws::run_laws(&selected, &cfg);
    if a.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    Ok(match report.status {
        Status::Pass | Status::PassVacuous => 0,
        Status::Fail => EXIT_FAIL,
        Status::Alarm => EXIT_ALARM,
    })
}

/// Payloads of a list term, head first.
fn list_of(t: &Term) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = t;
    while let (Layer::Inr(pair), Some(next)) = (&cur.layer, cur.kids.first()) {
        if let Layer::Pair(a, _) = &**pair {
            if let Layer::Atom(x) = **a {
                out.push(x);
            }
        }
        cur = next;
    }
    out
}

/// Largest value a demo literal may mention.
const LITERAL_MAX: usize = 1000;

fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    let nats = Carrier::range("N", LITERAL_MAX + 1);
    parse_term(TermKind::List, &nats, text).map(|t| list_of(&t)).map_err(|e| format!("input {text:?} {e}"))
}

fn show(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

fn verdict(ok: bool, what: &str) -> u8 {
    if ok {
        println!("OK");
        0
    } else {
        println!("MISMATCH: {what}");
        EXIT_FAIL
    }
}

fn cmd_demo(a: DemoArgs) -> Result<u8, String> {
    let xs = parse_list(&a.input)?;
    println!("input   {}", show(&xs));
    match a.algo {
        Algo::Qsort => {
            let tree = quicksort_tree(&xs);
            let out = tree.flatten();
            if xs.is_empty() {
                println!("tree    {tree}  (unit summand: nothing to divide)");
            } else {
                println!("tree    {tree}");
            }
            println!("output  {}", show(&out));
            let want = oracle_sort(&xs).map_err(|e| e.to_string())?;
            Ok(verdict(out == want && tree.is_search_tree(), "output differs from the sorted permutation"))
        }
        Algo::Msort => {
            let (out, tree) = mergesort_traced(&xs);
            match &tree {
                Some(t) => println!("tree    {t}"),
                None => println!("tree    none  (empty input)"),
            }
            println!("output  {}", show(&out));
            let want = oracle_sort(&xs).map_err(|e| e.to_string())?;
            Ok(verdict(out == want, "output differs from the sorted permutation"))
        }
        Algo::Minheight => {
            let spine = build_min_height_spine(&xs).map_err(|e| e.to_string())?;
            let tree = build_min_height(&xs).map_err(|e| e.to_string())?;
            println!("spine   {spine}");
            println!("tree    {tree}");
            println!("height  {}", height(&tree));
            if xs.len() > BRUTE_MAX_LEN {
                println!("UNCHECKED: the brute-force oracle stops at {BRUTE_MAX_LEN} leaves");
                return Ok(0);
            }
            let best = brute_min_height(&xs).map_err(|e| e.to_string())?;
            Ok(verdict(height(&tree) == best && tree.tips() == xs, &format!("the best height is {best}")))
        }
        Algo::Repchanger => {
            let out = rep_changer(a.b, &xs);
            let (before, after) = (sum_sat(&xs, SUM_CAP), sum_sat(&out, SUM_CAP));
            println!("output  {}", show(&out));
            println!("sum     {before} -> {after}  (b = {}, saturating at {SUM_CAP})", a.b);
            Ok(verdict(after == sat_add(a.b, before, SUM_CAP), "sum did not grow by b"))
        }
    }
}

fn cmd_checklist(a: ChecklistArgs) -> Result<u8, String> {
    let Instantiation::Quicksort = a.which;
    if a.maxlen < 2 {
        eprintln!("warning: lists shorter than 2 leave nothing to divide; the verdict is vacuous");
    }
    let mutant = a.mutate.map(|ChecklistMutant::DropLeftBound| QuicksortMutant::DropLeftBound);
    let qs = QuicksortInstance::new(a.alphabet, a.maxlen, mutant).map_err(|e| e.to_string())?;
    let report = checklist(&qs.input()).map_err(|e| e.to_string())?;
    let derived = if report.passed() && !report.vacuous { derive_z(&qs.input()).ok() } else { None };
    let matches_handwritten = derived.as_ref().map(|d| d.z == qs.divide_z() && d.end_to_end.holds);
    if a.json {
        let mut v = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        v["derived_z_matches"] = serde_json::json!(matches_handwritten);
        println!("{}", serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?);
    } else {
        println!("bound: {}", report.bound);
        for (label, c) in report.conditions() {
            println!("{label:<6} {:<4} {}", if c.holds { "PASS" } else { "FAIL" }, c.name);
            if let Some(w) = &c.witness {
                println!("       witness: {w}");
            }
        }
        match matches_handwritten {
            Some(true) => {
                println!("derived Z equals the handwritten divide step; the hylomorphism equals the sorting relation")
            }
            Some(false) => println!("derived Z differs from the handwritten divide step"),
            None => {}
        }
        let status = match (report.passed(), report.vacuous) {
            (true, true) => "PASS (vacuous)",
            (true, false) => "PASS",
            (false, _) => "FAIL",
        };
        println!("status: {status}");
    }
    Ok(if report.passed() && matches_handwritten != Some(false) { 0 } else { EXIT_FAIL })
}

fn cmd_rel(a: RelArgs) -> Result<u8, String> {
    let mut env: BTreeMap<String, Rel> = BTreeMap::new();
    let mut unnamed = ["R", "S", "T", "U", "V", "W"].into_iter();
    for path in &a.fixtures {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for nr in parse_fixtures(&text).map_err(|e| format!("{}: {e}", path.display()))? {
            let name = match nr.name {
                Some(n) => n,
                None => loop {
                    let n = unnamed.next().ok_or("too many unnamed relations")?;
                    if !env.contains_key(n) {
                        break n.to_string();
                    }
                },
            };
            env.insert(name, nr.rel);
        }
    }
    let expr = Expr::parse(&a.expr).map_err(|e| format!("in {:?} {e}", a.expr))?;
    let r = expr.eval(&env, a.power_bound).map_err(|e| format!("in {:?} {e}", a.expr))?;
    print!("{}", write_fixture(None, &r));
    let c = r.classify();
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!(
        "# entire: {}, simple: {}, surjective: {}, injective: {}, function: {}, difunctional: {}",
        yes(c.entire),
        yes(c.simple),
        yes(c.surjective),
        yes(c.injective),
        yes(c.function),
        yes(c.difunctional)
    );
    if r.is_endo() {
        println!(
            "# reflexive: {}, symmetric: {}, transitive: {}, equivalence: {}",
            yes(r.is_reflexive()),
            yes(r.is_symmetric()),
            yes(r.is_transitive()),
            yes(r.is_equivalence())
        );
    }
    if let Some(name) = &a.compare {
        let other = env.get(name).ok_or_else(|| format!("unknown relation {name:?}"))?;
        let within = r.included_in(other).map_err(|e| e.to_string())?;
        let covers = r.includes(other).map_err(|e| e.to_string())?;
        println!("# included in {name}: {}, includes {name}: {}", yes(within), yes(covers));
    }
    Ok(0)
}
