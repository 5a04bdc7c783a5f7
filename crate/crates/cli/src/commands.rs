use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use nilweight::lattice::carter_fiber;
use nilweight::partial::vertices;
use nilweight::properties::{clifford_vertex_example, properties_for_group, scan_group, summarize, PropertyReport, ScanMode, SigmaRange};
use nilweight::verify::{check_canonical_bijection, check_theorem_A, check_theorem_B, check_theorem_B_all, Verdict};
use nilweight::weights::enumerate_weights;
use nilweight::{Limits, Perm, PermGroup, PrimeSet, SubgroupRef};
use rayon::prelude::*;
use thiserror::Error;

use crate::cache::TableCache;
use crate::corpus::{builtin, builtin_corpus, parse_group_file, GroupDefinition, ParseError, SKIPPED};
use crate::report::{verification_block, Block, Format, Output};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] nilweight::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "nilweight", version, about = "Character tables, partial characters and nilpotent weights of permutation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Builtin group name or path to a group file.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Comma-separated primes.
    #[arg(long, global = true)]
    pub pi: Option<String>,
    /// Generators of R in cycle notation, separated by `;`.
    #[arg(long = "r", global = true)]
    pub r: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Directory for cached character tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest group order for subgroup-lattice computations.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Worker threads for `properties` and `scan`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Scan mode: `a` for Theorem A, `b` for Theorem B over all R.
    #[arg(long, global = true, default_value = "a")]
    pub mode: String,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Conjugacy classes.
    Classes,
    /// Ordinary character table.
    Chartab,
    /// Subgroup classes.
    Subgroups,
    /// Carter subgroup class.
    Carter,
    /// Irreducible partial characters on the --pi elements.
    Ipi,
    /// Vertices of the irreducible partial characters.
    Vertices,
    /// Nilpotent weights for --pi.
    Weights,
    /// Theorem A count comparison.
    VerifyA,
    /// Theorem B per-R comparison (all R classes unless --r is given).
    VerifyB,
    /// Canonical bijection for a normal Hall --pi subgroup.
    Bijection,
    /// Property suite over a group or the whole corpus.
    Properties,
    /// Verify over every prime set for a group or the whole corpus.
    Scan,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Classes => "classes",
            Command::Chartab => "chartab",
            Command::Subgroups => "subgroups",
            Command::Carter => "carter",
            Command::Ipi => "ipi",
            Command::Vertices => "vertices",
            Command::Weights => "weights",
            Command::VerifyA => "verify-a",
            Command::VerifyB => "verify-b",
            Command::Bijection => "bijection",
            Command::Properties => "properties",
            Command::Scan => "scan",
        }
    }
}

/// Parses `argv` (including the program name), runs, and returns the exit code and rendered output.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => (i32::from(out.failed), out.render(cli.format)),
        Err(e) => (2, format!("error: {e}\n")),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    limits: Limits,
    cache: Option<TableCache>,
}

impl Ctx<'_> {
    fn group_def(&self, name_or_path: &str) -> Result<GroupDefinition, CliError> {
        if let Some(d) = builtin(name_or_path) {
            return Ok(d);
        }
        let path = std::path::Path::new(name_or_path);
        if path.is_file() {
            return Ok(parse_group_file(&std::fs::read_to_string(path)?)?);
        }
        Err(CliError::Usage(format!("unknown builtin group or missing file: {name_or_path}")))
    }

    fn build(&self, d: &GroupDefinition) -> Result<Arc<PermGroup>, CliError> {
        let g = d.build(self.limits)?;
        Ok(g)
    }

    /// Table from the cache when configured; computed otherwise.
    fn with_table(&self, g: &Arc<PermGroup>) -> Result<(), CliError> {
        match &self.cache {
            Some(c) => c.load_or_compute(g).map(|_| ())?,
            None => g.character_table().map(|_| ())?,
        }
        Ok(())
    }

    fn group(&self) -> Result<Arc<PermGroup>, CliError> {
        let name_or_path = self.cli.group.as_deref().ok_or_else(|| CliError::Usage("--group is required".into()))?;
        self.build(&self.group_def(name_or_path)?)
    }

    /// The selected group, or the whole builtin corpus.
    fn corpus(&self) -> Result<Vec<Arc<PermGroup>>, CliError> {
        match &self.cli.group {
            Some(_) => Ok(vec![self.group()?]),
            None => builtin_corpus().iter().map(|d| self.build(d)).collect(),
        }
    }

    fn sigma(&self) -> Result<PrimeSet, CliError> {
        let text = self.cli.pi.as_deref().ok_or_else(|| CliError::Usage("--pi is required".into()))?;
        Ok(text.parse()?)
    }

    fn range(&self) -> Result<SigmaRange, CliError> {
        Ok(match &self.cli.pi {
            Some(_) => SigmaRange::Fixed(self.sigma()?),
            None => SigmaRange::All,
        })
    }

    fn r(&self, g: &Arc<PermGroup>) -> Result<Option<SubgroupRef>, CliError> {
        let Some(text) = &self.cli.r else { return Ok(None) };
        let gens = text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Perm::parse_cycles(g.degree(), s))
            .collect::<nilweight::Result<Vec<_>>>()?;
        for p in &gens {
            if !g.contains(p) {
                return Err(CliError::Usage(format!("--r generator {p} is not in {}", g.name())));
            }
        }
        Ok(Some(g.subgroup(&gens)?))
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.cli.jobs.max(1))
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} jobs: {e}", self.cli.jobs)))
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let mut limits = Limits::default();
    if let Some(b) = cli.bound {
        limits.lattice = b;
        limits.normalizer = limits.normalizer.max(b);
        limits.elements = limits.elements.max(b);
    }
    let cache = cli.cache_dir.as_ref().map(TableCache::new).transpose()?;
    let ctx = Ctx { cli, limits, cache };
    let mut out = Output { command: cli.command.name().into(), ..Default::default() };
    match cli.command {
        Command::Classes => classes(&ctx, &mut out)?,
        Command::Chartab => chartab(&ctx, &mut out)?,
        Command::Subgroups => subgroups(&ctx, &mut out)?,
        Command::Carter => carter(&ctx, &mut out)?,
        Command::Ipi => ipi(&ctx, &mut out)?,
        Command::Vertices => vertex_list(&ctx, &mut out)?,
        Command::Weights => weights(&ctx, &mut out)?,
        Command::VerifyA => {
            let g = ctx.group()?;
            ctx.with_table(&g)?;
            let r = check_theorem_A(&g, &ctx.sigma()?)?;
            out.failed = r.verdict == Verdict::Fails;
            out.blocks.push(verification_block(&r));
        }
        Command::VerifyB => verify_b(&ctx, &mut out)?,
        Command::Bijection => bijection(&ctx, &mut out)?,
        Command::Properties => properties(&ctx, &mut out)?,
        Command::Scan => scan(&ctx, &mut out)?,
    }
    Ok(out)
}

fn group_block(g: &PermGroup, kind: &str, headline: String) -> Block {
    Block::new(kind, headline).field("group", g.name()).field("order", g.order_big())
}

fn gens_text(gens: &[Perm]) -> String {
    if gens.is_empty() {
        "()".into()
    } else {
        gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn classes(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    let cd = g.class_data()?;
    let mut b = group_block(&g, "classes", format!("{} conjugacy classes of {} (order {})", cd.len(), g.name(), g.order()));
    b.push_field("count", cd.len());
    for (i, c) in cd.classes.iter().enumerate() {
        b.row([i.to_string(), format!("order={}", c.element_order), format!("size={}", c.size), c.representative.to_string()]);
    }
    out.blocks.push(b);
    Ok(())
}

fn chartab(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    ctx.with_table(&g)?;
    let t = g.character_table()?;
    let mut b = group_block(&g, "chartab", format!("character table of {} ({} irreducibles)", g.name(), t.len()));
    b.push_field("classes", t.len());
    b.push_field("class-sizes", t.class_sizes().iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    b.push_field("element-orders", t.element_orders().iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    for (i, chi) in t.irreducibles().iter().enumerate() {
        let mut cells = vec![format!("X.{}", i + 1)];
        cells.extend(chi.values().iter().map(ToString::to_string));
        b.row(cells);
    }
    out.blocks.push(b);
    Ok(())
}

fn subgroups(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    let lat = g.subgroup_lattice()?;
    let mut b = group_block(&g, "subgroups", format!("{} subgroup classes of {} ({} subgroups)", lat.len(), g.name(), lat.subgroup_count()));
    b.push_field("classes", lat.len());
    b.push_field("subgroups", lat.subgroup_count());
    for c in &lat.classes {
        b.row([
            c.id.to_string(),
            format!("order={}", c.order),
            format!("conjugates={}", c.class_size),
            format!("nilpotent={}", c.nilpotent),
            format!("solvable={}", c.solvable),
            gens_text(&c.rep_generators),
        ]);
    }
    out.blocks.push(b);
    Ok(())
}

fn carter(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    let id = g.carter_subgroups()?;
    let lat = g.subgroup_lattice()?;
    let c = &lat.classes[id];
    let gens = gens_text(&c.rep_generators);
    let b = group_block(&g, "carter", format!("Carter class: order {}, representative generators {gens}", c.order))
        .field("class", c.id)
        .field("carter-order", c.order)
        .field("conjugates", c.class_size)
        .field("generators", gens);
    out.blocks.push(b);
    Ok(())
}

fn ipi(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    ctx.with_table(&g)?;
    let sigma = ctx.sigma()?;
    let pt = g.partial_table(&sigma)?;
    let mut b = group_block(&g, "ipi", format!("{} irreducible partial characters of {} for sigma={sigma}", pt.len(), g.name()));
    b.push_field("sigma-classes", pt.sigma_classes.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(" "));
    b.push_field("count", pt.len());
    for (i, phi) in pt.members.iter().enumerate() {
        let mut cells = vec![format!("phi.{}", i + 1), format!("degree={}", phi.degree())];
        cells.extend(phi.values.iter().map(ToString::to_string));
        b.row(cells);
    }
    out.blocks.push(b);
    Ok(())
}

fn vertex_list(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    ctx.with_table(&g)?;
    let sigma = ctx.sigma()?;
    let pt = g.partial_table(&sigma)?;
    let v = vertices(&g, &sigma)?;
    let lat = g.subgroup_lattice()?;
    let mut b = group_block(&g, "vertices", format!("vertices of Iσ({}) for sigma={sigma}", g.name()));
    for (i, phi) in pt.members.iter().enumerate() {
        let q = &lat.classes[v[i]];
        b.row([
            format!("phi.{}", i + 1),
            format!("degree={}", phi.degree()),
            format!("vertex-class={}", q.id),
            format!("vertex-order={}", q.order),
            gens_text(&q.rep_generators),
        ]);
    }
    out.blocks.push(b);
    Ok(())
}

fn weights(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    ctx.with_table(&g)?;
    let sigma = ctx.sigma()?;
    let ws = enumerate_weights(&g, &sigma, true)?;
    let mut b = group_block(&g, "weights", format!("{} nilpotent weights of {} for sigma={sigma}", ws.len(), g.name()));
    b.push_field("count", ws.len());
    for w in &ws {
        b.row([
            format!("Q-class={}", w.q_class),
            format!("Q-order={}", w.q_order),
            format!("normalizer-order={}", w.normalizer_order),
            format!("gamma={}", w.gamma + 1),
            format!("gamma-degree={}", w.gamma_degree),
            gens_text(&w.q_generators),
        ]);
    }
    out.blocks.push(b);
    Ok(())
}

fn verify_b(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    ctx.with_table(&g)?;
    let sigma = ctx.sigma()?;
    if let Some(r) = ctx.r(&g)? {
        let rep = check_theorem_B(&g, &sigma, &r)?;
        out.failed = rep.verdict == Verdict::Fails;
        let mut b = verification_block(&rep);
        for e in carter_fiber(&g, &sigma, &r).unwrap_or_default() {
            b.push_field("fiber-class", e.class_id);
        }
        out.blocks.push(b);
        return Ok(());
    }
    let (reports, agg) = check_theorem_B_all(&g, &sigma)?;
    out.failed = reports.iter().any(|r| r.verdict == Verdict::Fails);
    out.blocks.extend(reports.iter().map(verification_block));
    let separable = g.is_sigma_separable(&sigma)?;
    if separable {
        out.failed |= !agg.holds();
    }
    let status = if !separable {
        "not computed"
    } else if agg.holds() {
        "holds"
    } else {
        "fails"
    };
    out.blocks.push(
        group_block(
            &g,
            "aggregate",
            format!(
                "sum over R: lhs {} (|Iσ(G)| = {}), rhs {} (nilpotent weights = {}): {status}",
                agg.lhs_sum, agg.partial_count, agg.rhs_sum, agg.weight_count
            ),
        )
        .field("lhs-sum", agg.lhs_sum)
        .field("partial-count", agg.partial_count)
        .field("rhs-sum", agg.rhs_sum)
        .field("weight-count", agg.weight_count)
        .field("aggregate", status),
    );
    Ok(())
}

fn bijection(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let g = ctx.group()?;
    ctx.with_table(&g)?;
    let sigma = ctx.sigma()?;
    let n = g.o_sigma(&sigma)?;
    let h = match g.hall_subgroup_any(&sigma.complement_in(g.order()))? {
        Some(h) => h,
        None => g.trivial_subgroup()?,
    };
    let rs: Vec<SubgroupRef> = match ctx.r(&g)? {
        Some(r) => vec![r],
        None => {
            let lat = g.subgroup_lattice()?;
            let within: Vec<SubgroupRef> = lat
                .classes
                .iter()
                .filter(|c| c.nilpotent)
                .filter_map(|c| c.members.iter().find(|m| m.is_subset(h.members())))
                .map(|m| g.subgroup_from_set(m.clone()))
                .collect();
            if within.is_empty() {
                vec![g.trivial_subgroup()?]
            } else {
                within
            }
        }
    };
    for r in rs {
        let rep = check_canonical_bijection(&g, &n, &h, &sigma, &r)?;
        out.failed |= rep.verdict == Verdict::Fails;
        out.blocks.push(verification_block(&rep));
    }
    Ok(())
}

fn properties(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let corpus = ctx.corpus()?;
    let range = ctx.range()?;
    let seed = ctx.cli.seed;
    for g in &corpus {
        ctx.with_table(g)?;
    }
    let parts: Vec<PropertyReport> = ctx.pool()?.install(|| corpus.par_iter().map(|g| properties_for_group(g, &range, seed)).collect());
    let mut rep = PropertyReport::default();
    for p in parts {
        rep.merge(p);
    }
    out.failed = !rep.all_pass();
    let mut b = Block::new("properties", format!("property suite over {} groups: {}", rep.groups.len(), if out.failed { "FAIL" } else { "all pass" }))
        .field("groups", rep.groups.join(" "))
        .field("seed", seed);
    for (name, t) in rep.iter() {
        let status = if t.passed() { "pass" } else { "fail" };
        b.row([name.to_string(), status.to_string(), format!("checked={}", t.checked), format!("excluded={}", t.excluded)]);
        for f in &t.failures {
            b.row([name.to_string(), "witness".to_string(), f.clone()]);
        }
    }
    out.blocks.push(b);
    if ctx.cli.group.is_none() {
        let ex = clifford_vertex_example()?;
        let ok = ex.structure_ok && ex.inertia_count == 1 && ex.group_count == 2;
        out.failed |= !ok;
        out.blocks.push(
            Block::new(
                "example-216",
                format!(
                    "order-216 example: |Iσ(G_τ|Q1,τ)| = {}, |Iσ(G|Q1,τ)| = {} ({})",
                    ex.inertia_count,
                    ex.group_count,
                    if ok { "pass" } else { "fail" }
                ),
            )
            .field("order", ex.order)
            .field("structure", ex.structure_ok)
            .field("inertia-index", ex.inertia_index)
            .field("inertia-count", ex.inertia_count)
            .field("group-count", ex.group_count),
        );
        let mut skipped = Block::new("skipped", "permanently skipped corpus entries");
        for (name, why) in SKIPPED {
            skipped.row([*name, *why]);
        }
        out.blocks.push(skipped);
    }
    Ok(())
}

fn scan(ctx: &Ctx, out: &mut Output) -> Result<(), CliError> {
    let mode = match ctx.cli.mode.as_str() {
        "a" | "A" => ScanMode::TheoremA,
        "b" | "B" => ScanMode::TheoremBAllR,
        other => return Err(CliError::Usage(format!("unknown scan mode {other:?}, expected a or b"))),
    };
    let corpus = ctx.corpus()?;
    let range = ctx.range()?;
    for g in &corpus {
        ctx.with_table(g)?;
    }
    let parts: Vec<nilweight::Result<Vec<_>>> = ctx.pool()?.install(|| corpus.par_iter().map(|g| scan_group(g, &range, mode)).collect());
    let mut reports = Vec::new();
    for p in parts {
        reports.extend(p?);
    }
    let (holds, fails, unmet) = summarize(&reports);
    out.failed = fails > 0;
    let mut b = Block::new("scan", format!("{} reports: {holds} holds, {fails} fails, {unmet} hypotheses-unmet", reports.len()))
        .field("reports", reports.len())
        .field("holds", holds)
        .field("fails", fails)
        .field("hypotheses-unmet", unmet);
    for r in &reports {
        b.row([
            r.group.clone(),
            r.sigma.to_string(),
            r.subject.clone().unwrap_or_else(|| "-".into()),
            format!("lhs={}", r.lhs),
            format!("rhs={}", r.rhs),
            r.verdict.to_string(),
            r.unmet().join(","),
        ]);
    }
    out.blocks.push(b);
    Ok(())
}
