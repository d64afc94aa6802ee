use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use loopforge::catalog::generate_loops_par;
use loopforge::holomorph::PairLabel;
use loopforge::properties::check_property_with;
use loopforge::smarandache::{classify, maximal_s_subgroups};
use loopforge::verify::{verify_with, Verdict};
use loopforge::{
    automorphism_group, build_s_holomorph, classify_s_holomorph, count_loops, full_holomorph, generate_loops,
    nucleus, parse_tables, s_subgroups, smarandache_automorphism_group, subloops, BolChirality, CayleyTable, Envelope,
    NucleusKind, Property, PropertyConfig, SmarandacheConfig, Subset, TheoremId, VerifyConfig,
};
use serde::Serialize;
use serde_json::{json, Value};

mod render;

#[derive(Parser)]
#[command(name = "loopforge", version, about = "Finite loop toolkit: properties, automorphisms, holomorphs, catalogs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide identity-based properties
    Check {
        #[command(flatten)]
        input: Input,
        /// Property tags, comma-separated or repeated; `all` for every tag
        #[arg(long = "prop", short = 'p', default_value = "all")]
        props: Vec<String>,
        /// Exit 1 if any property is false
        #[arg(long)]
        assert: bool,
        #[command(flatten)]
        config: Config,
    },
    /// Summarize a loop: identity, properties, automorphisms, Smarandache classes
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        config: Config,
    },
    /// Automorphism group
    Aut {
        #[command(flatten)]
        input: Input,
    },
    /// Left, right, middle nuclei, nucleus, centrum and center
    Nuclei {
        #[command(flatten)]
        input: Input,
    },
    /// All subloops
    Subloops {
        #[command(flatten)]
        input: Input,
    },
    /// The holomorph H(L) with its pair labelling
    Holomorph {
        #[command(flatten)]
        input: Input,
        /// Write the table here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sidecar JSON path (defaults to OUT.pairs.json when --out is given)
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Smarandache holomorphs H_S = G × SAUM for S-subgroups G
    SHolomorph {
        #[command(flatten)]
        input: Input,
        /// One S-subgroup, e.g. "0,1"; default is every S-subgroup
        #[arg(long)]
        subgroup: Option<String>,
        /// Also print each H_S table
        #[arg(long)]
        emit_table: bool,
        #[command(flatten)]
        config: Config,
    },
    /// S-subgroups and Smarandache classes
    Smarandache {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        assert: bool,
        #[command(flatten)]
        config: Config,
    },
    /// Enumerate loops of one order
    Generate {
        #[arg(long)]
        order: usize,
        /// One representative per isomorphism class
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        run: Run,
    },
    /// Check theorems on given loops; exit 3 on any inconsistency
    Verify {
        #[command(flatten)]
        input: Input,
        /// Theorem ids, comma-separated, or `all`
        #[arg(long = "theorem", default_value = "all")]
        theorems: String,
        #[command(flatten)]
        config: Config,
    },
    /// Check theorems on every catalog loop up to an order; exit 3 on any inconsistency
    Sweep {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Every normalized loop instead of one per isomorphism class
        #[arg(long)]
        all_normalized: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        config: Config,
        #[command(flatten)]
        run: Run,
    },
}

#[derive(Args)]
struct Input {
    /// Table file (may hold several tables); `-` reads stdin
    #[arg(long, short = 't', required_unless_present = "inline", conflicts_with = "inline")]
    table: Option<PathBuf>,
    /// Rows separated by ';', e.g. "0 1;1 0"
    #[arg(long)]
    inline: Option<String>,
    /// One JSON object per input loop
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone, Copy)]
struct Config {
    /// Exclude the whole loop as an S-subgroup (default)
    #[arg(long, overrides_with = "allow_whole")]
    proper_only: bool,
    /// Allow the whole loop as an S-subgroup
    #[arg(long, overrides_with = "proper_only")]
    allow_whole: bool,
    /// Bol identity underlying BRUCK
    #[arg(long, default_value = "left", value_parser = parse_chirality)]
    bruck: BolChirality,
}

impl Config {
    fn smarandache(&self) -> SmarandacheConfig {
        SmarandacheConfig {
            proper_only: !self.allow_whole,
            properties: PropertyConfig { bruck: self.bruck },
        }
    }

    fn verify(&self) -> VerifyConfig {
        VerifyConfig {
            smarandache: self.smarandache(),
        }
    }
}

#[derive(Args)]
struct Run {
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
    /// Raise the exhaustive-order cap (also LOOPFORGE_ENVELOPE)
    #[arg(long)]
    envelope: Option<usize>,
}

impl Run {
    fn envelope(&self) -> Envelope {
        self.envelope.map_or_else(Envelope::from_env, |max_order| Envelope { max_order })
    }

    fn init_pool(&self) -> anyhow::Result<()> {
        if let Some(n) = self.jobs {
            rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
        }
        Ok(())
    }
}

fn parse_chirality(s: &str) -> Result<BolChirality, String> {
    s.parse().map_err(|_| format!("expected left or right, got {s:?}"))
}

/// Ways a run can end other than success.
enum Failure {
    /// `--assert` saw a false property.
    Assert,
    /// A theorem check came out inconsistent.
    Inconsistent,
}

type Outcome = anyhow::Result<Option<Failure>>;

impl Input {
    fn load(&self) -> anyhow::Result<Vec<CayleyTable>> {
        let text = match (&self.table, &self.inline) {
            (_, Some(inline)) => inline_text(inline),
            (Some(p), None) if p.as_os_str() == "-" => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).context("reading stdin")?;
                s
            }
            (Some(p), None) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            (None, None) => bail!("no input: pass --table or --inline"),
        };
        let mut tables = parse_tables(&text)?;
        if tables.is_empty() {
            bail!("no table in input");
        }
        if let (Some(p), [t]) = (&self.table, tables.as_mut_slice()) {
            if t.name().is_none() && p.as_os_str() != "-" {
                if let Some(stem) = p.file_stem() {
                    *t = t.clone().with_name(stem.to_string_lossy());
                }
            }
        }
        Ok(tables)
    }
}

fn inline_text(inline: &str) -> String {
    let rows: Vec<&str> = inline.split(';').map(str::trim).filter(|r| !r.is_empty()).collect();
    format!("{}\n{}\n", rows.len(), rows.join("\n"))
}

fn emit_json(out: &mut impl Write, v: &impl Serialize) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn header(out: &mut impl Write, tables: &[CayleyTable], t: &CayleyTable) -> io::Result<()> {
    if tables.len() > 1 {
        writeln!(out, "== {} ==", t.label())?;
    }
    Ok(())
}

fn parse_props(specs: &[String]) -> anyhow::Result<(Vec<Property>, bool)> {
    let mut props = Vec::new();
    let mut all = false;
    for s in specs.iter().flat_map(|s| s.split(',')) {
        if s.trim().eq_ignore_ascii_case("all") {
            all = true;
            props.extend(Property::ALL);
        } else {
            props.push(s.parse()?);
        }
    }
    props.dedup();
    Ok((props, all))
}

fn check(input: &Input, props: &[String], assert: bool, config: &Config) -> Outcome {
    let tables = input.load()?;
    let (props, all) = parse_props(props)?;
    let mut out = io::stdout().lock();
    let mut any_false = false;
    for t in &tables {
        t.require_latin()?;
        let has_identity = t.identity_of().is_some();
        let mut results = serde_json::Map::new();
        header(&mut out, &tables, t)?;
        for &p in &props {
            if p.needs_identity() && !has_identity {
                if !all {
                    bail!("{p} needs a two-sided identity");
                }
                results.insert(p.tag().into(), Value::Null);
                if !input.json {
                    writeln!(out, "{p}: n/a (no two-sided identity)")?;
                }
                continue;
            }
            let r = check_property_with(t, p, &PropertyConfig { bruck: config.bruck })?;
            any_false |= !r.holds;
            if !input.json {
                writeln!(out, "{}", render::property_line(&r))?;
            }
            results.insert(p.tag().into(), serde_json::to_value(&r)?);
        }
        if input.json {
            emit_json(&mut out, &json!({ "loop": t.label(), "order": t.order(), "checks": results }))?;
        }
    }
    Ok((assert && any_false).then_some(Failure::Assert))
}

fn classify_cmd(input: &Input, config: &Config) -> Outcome {
    let tables = input.load()?;
    let mut out = io::stdout().lock();
    for t in &tables {
        t.require_latin()?;
        let identity = t.identity_of();
        let mut props = serde_json::Map::new();
        for p in Property::ALL {
            if identity.is_none() && p.needs_identity() {
                continue;
            }
            let r = check_property_with(t, p, &PropertyConfig { bruck: config.bruck })?;
            props.insert(p.tag().into(), Value::Bool(r.holds));
        }
        let (aum, sclass) = if identity.is_some() {
            (
                Some(automorphism_group(t)?.order()),
                Some(classify(t, &config.smarandache())?),
            )
        } else {
            (None, None)
        };
        let report = json!({
            "loop": t.label(),
            "order": t.order(),
            "latin": true,
            "identity": identity,
            "properties": props,
            "aum_order": aum,
            "smarandache": sclass,
        });
        if input.json {
            emit_json(&mut out, &report)?;
        } else {
            header(&mut out, &tables, t)?;
            write!(out, "{}", render::classify(t, &report))?;
        }
    }
    Ok(None)
}

fn aut(input: &Input) -> Outcome {
    let tables = input.load()?;
    let mut out = io::stdout().lock();
    for t in &tables {
        let g = automorphism_group(t)?;
        if input.json {
            emit_json(
                &mut out,
                &json!({ "loop": t.label(), "order": g.order(), "abelian": g.is_abelian(), "elements": g }),
            )?;
        } else {
            header(&mut out, &tables, t)?;
            writeln!(out, "|AUM| = {}{}", g.order(), if g.is_abelian() { " (abelian)" } else { "" })?;
            for (i, p) in g.elements().iter().enumerate() {
                writeln!(out, "{i:>4}  {p}")?;
            }
        }
    }
    Ok(None)
}

fn nuclei(input: &Input) -> Outcome {
    let tables = input.load()?;
    let mut out = io::stdout().lock();
    for t in &tables {
        let mut map = serde_json::Map::new();
        for k in NucleusKind::ALL {
            map.insert(k.name().into(), serde_json::to_value(nucleus(t, k)?)?);
        }
        if input.json {
            emit_json(&mut out, &json!({ "loop": t.label(), "nuclei": map }))?;
        } else {
            header(&mut out, &tables, t)?;
            for k in NucleusKind::ALL {
                writeln!(out, "{:<8} {}", k.name(), nucleus(t, k)?)?;
            }
        }
    }
    Ok(None)
}

fn subloops_cmd(input: &Input) -> Outcome {
    let tables = input.load()?;
    let mut out = io::stdout().lock();
    for t in &tables {
        let subs = subloops(t)?;
        if input.json {
            emit_json(&mut out, &json!({ "loop": t.label(), "subloops": subs }))?;
        } else {
            header(&mut out, &tables, t)?;
            for s in &subs {
                writeln!(out, "{:>3}  {s}", s.len())?;
            }
        }
    }
    Ok(None)
}

#[derive(Serialize)]
struct Sidecar<'a> {
    base: String,
    base_order: usize,
    aum_order: usize,
    order: usize,
    automorphisms: &'a loopforge::PermutationGroup,
    pairs: Vec<PairLabel>,
}

fn holomorph(input: &Input, out_path: Option<&Path>, sidecar: Option<&Path>) -> Outcome {
    let tables = input.load()?;
    let mut table_text = String::new();
    let mut sidecars = Vec::new();
    let mut out = io::stdout().lock();
    for t in &tables {
        let (h, lab) = full_holomorph(t)?;
        let car = Sidecar {
            base: t.label(),
            base_order: t.order(),
            aum_order: lab.automorphisms().order(),
            order: h.order(),
            automorphisms: lab.automorphisms(),
            pairs: lab.pairs(),
        };
        if input.json {
            emit_json(&mut out, &json!({ "loop": h.label(), "table": h.rows(), "labeling": car }))?;
        } else {
            if !table_text.is_empty() {
                table_text.push('\n');
            }
            table_text.push_str(&h.to_string());
        }
        sidecars.push(serde_json::to_value(&car)?);
    }
    let sidecar_value = if sidecars.len() == 1 {
        sidecars.pop().expect("one")
    } else {
        Value::Array(sidecars)
    };
    let sidecar = sidecar.map(Path::to_path_buf).or_else(|| {
        out_path.map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".pairs.json");
            PathBuf::from(s)
        })
    });
    if !input.json {
        match out_path {
            Some(p) => fs::write(p, &table_text).with_context(|| format!("writing {}", p.display()))?,
            None => out.write_all(table_text.as_bytes())?,
        }
    }
    if let Some(p) = sidecar {
        fs::write(&p, serde_json::to_string_pretty(&sidecar_value)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(None)
}

fn parse_subset(s: &str, n: usize) -> anyhow::Result<Subset> {
    let members = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| anyhow!("bad element {p:?} in subgroup")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Subset::new(members, n)?)
}

fn s_holomorph(input: &Input, subgroup: Option<&str>, emit_table: bool, config: &Config) -> Outcome {
    let tables = input.load()?;
    let mut out = io::stdout().lock();
    for t in &tables {
        let groups = match subgroup {
            Some(s) => vec![parse_subset(s, t.order())?],
            None => s_subgroups(t, &config.smarandache())?,
        };
        let mut entries = Vec::new();
        for g in &groups {
            let (h, _) = build_s_holomorph(t, g)?;
            let saum = smarandache_automorphism_group(t, g)?;
            let class = classify_s_holomorph(t, g)?;
            entries.push(json!({
                "subgroup": g,
                "saum_order": saum.order(),
                "order": h.order(),
                "labels": class.labels,
                "per_element": class.per_element,
                "matrix": class.matrix,
                "table": emit_table.then(|| h.rows()),
            }));
            if !input.json {
                if entries.len() == 1 {
                    header(&mut out, &tables, t)?;
                }
                write!(out, "{}", render::s_holomorph(g, saum.order(), &h, &class))?;
                if emit_table {
                    write!(out, "{h}")?;
                }
            }
        }
        if input.json {
            emit_json(&mut out, &json!({ "loop": t.label(), "s_holomorphs": entries }))?;
        } else if groups.is_empty() {
            header(&mut out, &tables, t)?;
            writeln!(out, "no S-subgroups")?;
        }
    }
    Ok(None)
}

fn smarandache_cmd(input: &Input, assert: bool, config: &Config) -> Outcome {
    let tables = input.load()?;
    let mut out = io::stdout().lock();
    let mut any_false = false;
    for t in &tables {
        let cfg = config.smarandache();
        let c = classify(t, &cfg)?;
        let maximal = maximal_s_subgroups(t, &cfg)?;
        any_false |= c.per_property.values().any(|r| !r.holds);
        if input.json {
            emit_json(
                &mut out,
                &json!({
                    "loop": t.label(),
                    "proper_only": cfg.proper_only,
                    "s_subgroups": c.s_subgroups,
                    "maximal": maximal,
                    "classes": c.per_property,
                }),
            )?;
        } else {
            header(&mut out, &tables, t)?;
            write!(out, "{}", render::smarandache(&c, &maximal))?;
        }
    }
    Ok((assert && any_false).then_some(Failure::Assert))
}

fn generate(order: usize, up_to_iso: bool, count_only: bool, json_mode: bool, run: &Run) -> Outcome {
    run.init_pool()?;
    let env = run.envelope();
    let mut out = BufWriter::new(io::stdout().lock());
    if count_only {
        let n = count_loops(order, up_to_iso, &env)?;
        if json_mode {
            emit_json(&mut out, &json!({ "order": order, "up_to_iso": up_to_iso, "count": n }))?;
        } else {
            writeln!(out, "{n}")?;
        }
        return Ok(None);
    }
    let mut write_one = |i: usize, t: &CayleyTable| -> anyhow::Result<()> {
        if json_mode {
            emit_json(&mut out, &json!({ "name": t.label(), "order": t.order(), "table": t.rows() }))
        } else {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{t}")?;
            Ok(())
        }
    };
    if run.jobs.is_some_and(|j| j > 1) {
        for (i, t) in generate_loops_par(order, up_to_iso, &env)?.iter().enumerate() {
            write_one(i, t)?;
        }
    } else {
        for (i, t) in generate_loops(order, up_to_iso, &env)?.enumerate() {
            write_one(i, &t)?;
        }
    }
    out.flush()?;
    Ok(None)
}

fn verify_cmd(input: &Input, theorems: &str, config: &Config) -> Outcome {
    let tables = input.load()?;
    let ids = TheoremId::parse_list(theorems)?;
    let mut out = io::stdout().lock();
    let mut inconsistent = false;
    for t in &tables {
        let mut reports = Vec::new();
        for &id in &ids {
            let r = verify_with(t, id, &config.verify())?;
            inconsistent |= r.verdict == Verdict::Inconsistent;
            if !input.json {
                write!(out, "{}", render::report(&r))?;
            }
            reports.push(r);
        }
        if input.json {
            if let [r] = reports.as_slice() {
                emit_json(&mut out, r)?;
            } else {
                emit_json(&mut out, &json!({ "loop": t.label(), "reports": reports }))?;
            }
        }
    }
    Ok(inconsistent.then_some(Failure::Inconsistent))
}

fn sweep_cmd(max_order: usize, theorems: &str, all_normalized: bool, json_mode: bool, config: &Config, run: &Run) -> Outcome {
    run.init_pool()?;
    let ids = TheoremId::parse_list(theorems)?;
    let summary = loopforge::sweep(max_order, &ids, !all_normalized, &config.verify(), &run.envelope())?;
    let mut out = BufWriter::new(io::stdout().lock());
    if json_mode {
        emit_json(&mut out, &summary)?;
    } else {
        write!(out, "{}", render::sweep(&summary))?;
    }
    out.flush()?;
    Ok((summary.total_inconsistent() > 0).then_some(Failure::Inconsistent))
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Check {
            input,
            props,
            assert,
            config,
        } => check(input, props, *assert, config),
        Command::Classify { input, config } => classify_cmd(input, config),
        Command::Aut { input } => aut(input),
        Command::Nuclei { input } => nuclei(input),
        Command::Subloops { input } => subloops_cmd(input),
        Command::Holomorph { input, out, sidecar } => holomorph(input, out.as_deref(), sidecar.as_deref()),
        Command::SHolomorph {
            input,
            subgroup,
            emit_table,
            config,
        } => s_holomorph(input, subgroup.as_deref(), *emit_table, config),
        Command::Smarandache { input, assert, config } => smarandache_cmd(input, *assert, config),
        Command::Generate {
            order,
            up_to_iso,
            count_only,
            json,
            run,
        } => generate(*order, *up_to_iso, *count_only, *json, run),
        Command::Verify {
            input,
            theorems,
            config,
        } => verify_cmd(input, theorems, config),
        Command::Sweep {
            max_order,
            theorems,
            all_normalized,
            json,
            config,
            run,
        } => sweep_cmd(*max_order, theorems, *all_normalized, *json, config, run),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Failure::Assert)) => ExitCode::from(1),
        Ok(Some(Failure::Inconsistent)) => ExitCode::from(3),
        Err(e) => {
            if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
