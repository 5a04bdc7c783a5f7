//! One PASS/FAIL line per acceptance criterion, driven through the `nilweight` binary.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use nilweight::{Limits, Perm, PermGroup};
use nilweight_cli::corpus::builtin_corpus;

const A5_LIMIT: Duration = Duration::from_secs(10);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const ORACLE_MAX_ORDER: u64 = 200;

#[derive(Debug, Default, Clone)]
struct Block {
    kind: String,
    fields: Vec<(String, String)>,
    rows: Vec<Vec<String>>,
}

impl Block {
    fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn all(&self, key: &str) -> Vec<&str> {
        self.fields.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
    }
}

struct Run {
    code: Option<i32>,
    blocks: Vec<Block>,
    status: String,
    elapsed: Duration,
}

impl Run {
    fn blocks(&self, kind: &str) -> Vec<&Block> {
        self.blocks.iter().filter(|b| b.kind == kind).collect()
    }
}

fn run(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nilweight")).args(args).args(["--format", "machine"]).output().expect("binary runs");
    let elapsed = start.elapsed();
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let mut blocks = Vec::new();
    let mut cur: Option<Block> = None;
    let mut status = String::new();
    for line in text.lines() {
        let cells: Vec<&str> = line.split('\t').collect();
        match (cells[0], cur.as_mut()) {
            ("block", None) => cur = Some(Block { kind: cells[1].into(), ..Default::default() }),
            ("end", Some(_)) => blocks.push(cur.take().unwrap()),
            ("row", Some(b)) => b.rows.push(cells[1..].iter().map(|s| s.to_string()).collect()),
            (k, Some(b)) => b.fields.push((k.into(), cells[1..].join("\t"))),
            ("status", None) => status = cells[1].into(),
            _ => {}
        }
    }
    Run { code: out.status.code(), blocks, status, elapsed }
}

fn order_of(generators: &str) -> u64 {
    let gens: Vec<&str> = generators.split(' ').collect();
    let degree = gens.iter().flat_map(|g| g.split(|c: char| !c.is_ascii_digit())).filter_map(|s| s.parse::<usize>().ok()).max().unwrap_or(1);
    let perms = gens.iter().map(|g| Perm::parse_cycles(degree, g)).collect::<Result<Vec<_>, _>>().unwrap();
    PermGroup::new(degree, perms).unwrap().order()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn a5_counterexample() -> Outcome {
    let r = run(&["verify-a", "--group", "A5", "--pi", "2,3,5"]);
    let b = r.blocks("verification");
    let b = b.first().ok_or("no verification block")?;
    let got = (b.get("lhs"), b.get("rhs"), b.get("verdict"));
    ensure(got == (Some("1"), Some("0"), Some("fails")), format!("got {got:?}"))?;
    ensure(b.all("hypothesis").contains(&"solvable Hall subgroup=unmet"), "Hall flag not unmet")?;
    ensure(r.code == Some(1) && r.status == "fail", "exit status")?;
    ensure(r.elapsed < A5_LIMIT, format!("took {:?}", r.elapsed))?;
    Ok(format!("lhs 1 rhs 0 fails, Hall flag unmet, {:.2?}", r.elapsed))
}

fn corpus_sweep() -> Outcome {
    let solvable: BTreeMap<String, bool> = builtin_corpus()
        .iter()
        .map(|d| {
            let g = d.build(Limits::default()).unwrap();
            (d.name.clone(), g.structure_flags().is_solvable)
        })
        .collect();
    let r = run(&["scan", "--mode", "a"]);
    let b = r.blocks("scan");
    let b = b.first().ok_or("no scan block")?;
    let (mut holds, mut excluded) = (0, 0);
    let mut seen = BTreeSet::new();
    for row in &b.rows {
        let (group, sigma, verdict, unmet) = (&row[0], &row[1], &row[5], row.get(6).map(String::as_str).unwrap_or(""));
        seen.insert(group.clone());
        let is_solvable = *solvable.get(group).ok_or(format!("unknown group {group}"))?;
        if verdict == "holds" {
            holds += 1;
        } else if !is_solvable && !unmet.is_empty() {
            excluded += 1;
        } else {
            return Err(format!("{group} sigma={sigma}: {verdict} ({unmet})"));
        }
    }
    ensure(seen.len() == solvable.len(), format!("scanned {} of {} groups", seen.len(), solvable.len()))?;
    ensure(r.elapsed < SWEEP_LIMIT, format!("took {:?}", r.elapsed))?;
    Ok(format!("{holds} holds, {excluded} excluded with hypotheses unmet, 0 failures, {:.1?}", r.elapsed))
}

fn s4_weights() -> Outcome {
    let a = run(&["verify-a", "--group", "S4", "--pi", "2"]);
    let v = a.blocks("verification");
    let v = v.first().ok_or("no verification block")?;
    ensure((v.get("lhs"), v.get("rhs"), v.get("verdict")) == (Some("2"), Some("2"), Some("holds")), "verify-a S4 is not 2 = 2")?;
    let w = run(&["weights", "--group", "S4", "--pi", "2"]);
    let b = w.blocks("weights");
    let b = b.first().ok_or("no weights block")?;
    let mut found: Vec<(String, String, String)> = b
        .rows
        .iter()
        .map(|row| {
            let cell = |p: &str| row.iter().find_map(|c| c.strip_prefix(p)).unwrap_or("").to_string();
            (cell("Q-order="), cell("normalizer-order="), cell("gamma-degree="))
        })
        .collect();
    found.sort();
    let want = [("4", "24", "2"), ("8", "8", "1")].map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()));
    ensure(found == want, format!("weights {found:?}"))?;
    Ok("2 = 2 with (V4, degree 2 of N/Q = S3) and (D8, trivial)".into())
}

fn s4_theorem_b() -> Outcome {
    let r = run(&["verify-b", "--group", "S4", "--pi", "3"]);
    let mut by_order: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for b in r.blocks("verification") {
        ensure(b.get("verdict") == Some("holds"), format!("{:?} not holds", b.get("subject")))?;
        let gens = b.get("subject").and_then(|s| s.strip_prefix("R=")).ok_or("no subject")?;
        let lhs = b.get("lhs").unwrap().parse().unwrap();
        let rhs = b.get("rhs").unwrap().parse().unwrap();
        by_order.entry(order_of(gens)).or_default().push((lhs, rhs));
    }
    let d8 = by_order.get(&8).map(|v| v.iter().filter(|p| **p == (1, 1)).count());
    ensure(d8 == Some(1), format!("D8 {:?}", by_order.get(&8)))?;
    ensure(by_order.get(&4).is_some_and(|v| v.iter().filter(|p| **p == (1, 1)).count() == 1 && v.iter().filter(|p| **p == (0, 0)).count() == 2), format!("order 4 {:?}", by_order.get(&4)))?;
    ensure(by_order.get(&2).is_some_and(|v| v.iter().all(|p| *p == (0, 0))), "C2 classes")?;
    let agg = r.blocks("aggregate");
    let agg = agg.first().ok_or("no aggregate block")?;
    ensure((agg.get("lhs-sum"), agg.get("partial-count")) == (Some("2"), Some("2")), "R-sum is not 2")?;
    Ok("D8 1=1, V4 1=1, C4 0=0, C2 classes 0=0, sum over R = 2".into())
}

fn bijection() -> Outcome {
    let mut n = 0;
    for (g, pi) in [("A4", "2"), ("C3^2:C2", "3")] {
        let r = run(&["bijection", "--group", g, "--pi", pi]);
        let blocks = r.blocks("verification");
        ensure(!blocks.is_empty(), format!("{g}: no reports"))?;
        for b in blocks {
            ensure(b.get("verdict") == Some("holds"), format!("{g}: {:?}", b.get("subject")))?;
            for k in ["well defined: true", "injective: true", "surjective: true"] {
                ensure(b.all("note").contains(&k), format!("{g}: missing {k}"))?;
            }
            n += 1;
        }
    }
    let suite = properties()?;
    let (state, checked) = suite.get("canonical-bijection").cloned().ok_or("property missing")?;
    ensure(state == "pass" && checked > 0, format!("corpus canonical-bijection {state} ({checked})"))?;
    Ok(format!("{n} explicit R, {checked} corpus instances"))
}

fn properties() -> Result<BTreeMap<String, (String, u64)>, String> {
    let r = properties_run();
    let b = r.blocks("properties");
    let b = b.first().ok_or("property run produced no results")?;
    Ok(b.rows
        .iter()
        .map(|row| {
            let checked = row.iter().find_map(|c| c.strip_prefix("checked=")).and_then(|s| s.parse().ok()).unwrap_or(0);
            (row[0].clone(), (row[1].clone(), checked))
        })
        .collect())
}

fn properties_run() -> &'static Run {
    static RUN: std::sync::OnceLock<Run> = std::sync::OnceLock::new();
    RUN.get_or_init(|| run(&["properties"]))
}

fn require(names: &[&str], min_checked: u64) -> Outcome {
    let rows = properties()?;
    let mut parts = Vec::new();
    for name in names {
        let (state, checked) = rows.get(*name).ok_or(format!("{name} missing"))?;
        ensure(state == "pass" && *checked >= min_checked.max(1), format!("{name}: {state}, checked {checked}"))?;
        parts.push(format!("{name} {checked}"));
    }
    Ok(parts.join(", "))
}

fn chartab_suite() -> Outcome {
    let n = builtin_corpus().len() as u64;
    require(&["table-orthogonality", "degree-sum", "degree-divides-order", "frobenius-reciprocity"], n)
}

fn pi_suite() -> Outcome {
    require(
        &[
            "partial-count",
            "vertex-degree-law",
            "glauberman-bijective",
            "glauberman-series-independent",
            "glauberman-equivariant",
            "vertex-orbit",
            "vertex-induction-count",
            "clifford-round-trip",
            "normalizer-counting",
        ],
        1,
    )
}

fn oracle() -> Outcome {
    let small = builtin_corpus().iter().filter(|d| d.build(Limits::default()).unwrap().order() <= ORACLE_MAX_ORDER).count() as u64;
    let out = require(&["oracle-order", "oracle-classes", "oracle-normalizers", "oracle-subgroups"], small)?;
    Ok(format!("{small} groups of order <= {ORACLE_MAX_ORDER}: {out}"))
}

fn example_216() -> Outcome {
    let r = properties_run();
    let b = r.blocks("example-216");
    let b = b.first().ok_or("example-216 not reported")?;
    let got = (b.get("order"), b.get("structure"), b.get("inertia-count"), b.get("group-count"));
    ensure(got == (Some("216"), Some("true"), Some("1"), Some("2")), format!("got {got:?}"))?;
    Ok("reconstructed; |I(G_tau|Q1,tau)| = 1, |I(G|Q1,tau)| = 2".into())
}

fn j4_skipped() -> Outcome {
    let r = properties_run();
    let b = r.blocks("skipped");
    let b = b.first().ok_or("no skipped block")?;
    ensure(b.rows.iter().any(|row| row[0] == "J4"), "J4 not listed")?;
    Ok("reported as permanently skipped".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("A5 counterexample", a5_counterexample),
        ("solvable corpus sweep", corpus_sweep),
        ("S4 sigma={2} weights", s4_weights),
        ("Theorem B per-R on S4", s4_theorem_b),
        ("canonical bijection", bijection),
        ("character-table property suite", chartab_suite),
        ("pi-theory property suite", pi_suite),
        ("oracle equivalence", oracle),
        ("order-216 Clifford/vertex example (optional)", example_216),
        ("J4 (not reproducible)", j4_skipped),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
