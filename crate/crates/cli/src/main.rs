//! Command-line interface: load and validate multiplication tables, run
//! property and classification pipelines, compute congruence lattices and
//! group data, construct named families, compare algebras, and search for
//! finite models.
//!
//! Exit codes: 0 success, 1 a requested assertion failed, 2 input error,
//! 3 resource cap reached.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use leftq::action;
use leftq::algebra::LeftQuasigroup;
use leftq::classify::{self, ReportLimits};
use leftq::congruence;
use leftq::construct;
use leftq::lqt::{self, TableFormat};
use leftq::perm::DEFAULT_GROUP_CAP;
use leftq::search::{self, AxiomSet, SearchSpec};
use leftq::term;

#[derive(Parser)]
#[command(
    name = "leftq",
    version,
    about = "Finite left quasigroups, racks and quandles"
)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
    /// Cap on the element count of the free algebra on two generators.
    #[arg(long, global = true, default_value_t = classify::FREE_ALGEBRA_CAP)]
    free_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum FormatArg {
    Lqt,
    Rig,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> TableFormat {
        match f {
            FormatArg::Lqt => TableFormat::Lqt,
            FormatArg::Rig => TableFormat::RigMatrix,
        }
    }
}

#[derive(Args)]
struct InputFile {
    /// Path of the table file.
    file: String,
    /// Input format; rig-matrix entries are 1-based.
    #[arg(long, value_enum, default_value = "lqt")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a table and report property flags.
    Check {
        #[command(flatten)]
        input: InputFile,
        /// Comma-separated flags that must hold (exit 1 otherwise).
        #[arg(long)]
        props: Option<String>,
    },
    /// Full classification report.
    Classify {
        #[command(flatten)]
        input: InputFile,
    },
    /// Congruence lattice with structural verdicts.
    Con {
        #[command(flatten)]
        input: InputFile,
    },
    /// Multiplication and displacement group summary.
    Groups {
        #[command(flatten)]
        input: InputFile,
    },
    /// Construct a named family member and emit its table.
    Make {
        #[command(subcommand)]
        kind: MakeKind,
    },
    /// Search for an isomorphism between two algebras.
    Iso {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "lqt")]
        format: FormatArg,
    },
    /// Check identities against an algebra.
    Verify {
        #[command(flatten)]
        input: InputFile,
        /// Identity in the term grammar, e.g. "(x*y)=(y*x)"; repeatable.
        #[arg(long = "identity", required = true)]
        identities: Vec<String>,
        /// Cap on the number of assignments per identity.
        #[arg(long, default_value_t = term::ASSIGNMENT_CAP)]
        assignment_cap: u64,
    },
    /// Enumerate finite models of axioms and identities.
    Search {
        #[arg(long)]
        order: usize,
        /// Comma-separated axioms: idempotent, rack, quandle, semimedial,
        /// medial, involutory, latin, unipotent.
        #[arg(long, default_value = "")]
        axioms: String,
        #[arg(long = "identity")]
        identities: Vec<String>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        up_to_iso: bool,
        /// Allow orders beyond the exhaustive bound.
        #[arg(long)]
        allow_large: bool,
        /// Worker threads for subtree parallelism.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the model stream to a file instead of stdout.
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum MakeKind {
    /// Projection algebra of the given order.
    Projection { n: usize },
    /// Cyclic permutation algebra of the given order.
    Cyclic { n: usize },
    /// Affine quandle over the cyclic group with multiplier k.
    Affine { n: usize, k: i64 },
    /// Dihedral quandle (affine with multiplier -1).
    Dihedral { n: usize },
    /// Subtraction algebra of the given order.
    Subtraction { n: usize },
    /// Left quasigroup with constant n-th translation powers.
    Constpow { n: usize, carrier: usize },
    /// Coset quandle from a group table file, a subgroup, and an automorphism.
    Coset {
        /// Group multiplication table (same layout as LQT, row i = i·j).
        group: String,
        /// Comma-separated subgroup element indices.
        #[arg(long)]
        subgroup: String,
        /// Automorphism as comma-separated images of every group element.
        #[arg(long)]
        aut: String,
    },
}

#[derive(Serialize, Deserialize)]
struct VerdictEntry {
    name: String,
    value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct WitnessEntry {
    name: String,
    data: Value,
}

#[derive(Serialize, Deserialize)]
struct Timings {
    total_ms: u128,
}

/// The machine-readable report every command produces.
#[derive(Serialize, Deserialize)]
struct Document {
    input: String,
    command: String,
    verdicts: Vec<VerdictEntry>,
    witnesses: Vec<WitnessEntry>,
    timings: Timings,
}

impl Document {
    fn new(input: impl Into<String>, command: impl Into<String>) -> Self {
        Document {
            input: input.into(),
            command: command.into(),
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            timings: Timings { total_ms: 0 },
        }
    }

    fn verdict(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.verdicts.push(VerdictEntry {
            name: name.into(),
            value: value.into(),
            detail: None,
        });
    }

    fn verdict_detail(
        &mut self,
        name: impl Into<String>,
        value: impl Into<Value>,
        detail: Option<String>,
    ) {
        self.verdicts.push(VerdictEntry {
            name: name.into(),
            value: value.into(),
            detail,
        });
    }

    fn witness(&mut self, name: impl Into<String>, data: Value) {
        self.witnesses.push(WitnessEntry {
            name: name.into(),
            data,
        });
    }

    fn render(&self, as_json: bool) {
        let mut text = String::new();
        if as_json {
            text = serde_json::to_string_pretty(self).expect("serializable report");
            text.push('\n');
        } else {
            text.push_str(&format!("== {} {}\n", self.command, self.input));
            for v in &self.verdicts {
                match &v.detail {
                    Some(d) => text.push_str(&format!("{}: {} ({d})\n", v.name, v.value)),
                    None => text.push_str(&format!("{}: {}\n", v.name, v.value)),
                }
            }
            for w in &self.witnesses {
                text.push_str(&format!("witness {}: {}\n", w.name, w.data));
            }
            text.push_str(&format!("elapsed: {} ms\n", self.timings.total_ms));
        }
        print_tolerant(&text);
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn print_tolerant(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

enum CmdError {
    Input(String),
    ResourceCap(String),
}

impl CmdError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CmdError::Input(_) => ExitCode::from(2),
            CmdError::ResourceCap(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Input(m) | CmdError::ResourceCap(m) => m,
        }
    }
}

fn load(input: &InputFile) -> Result<LeftQuasigroup, CmdError> {
    let text = std::fs::read_to_string(&input.file)
        .map_err(|e| CmdError::Input(format!("{}: {e}", input.file)))?;
    lqt::parse(&text, input.format.into())
        .map_err(|e| CmdError::Input(format!("{}: {e}", input.file)))
        .map(|q| q.with_name(input.file.clone()))
}

fn search_error(e: search::SearchError) -> CmdError {
    match e {
        search::SearchError::TooLarge { .. } => CmdError::ResourceCap(e.to_string()),
        search::SearchError::ZeroOrder => CmdError::Input(e.to_string()),
    }
}

fn congruence_error(e: congruence::CongruenceError) -> CmdError {
    match e {
        congruence::CongruenceError::TooLarge { .. }
        | congruence::CongruenceError::LatticeTooLarge { .. }
        | congruence::CongruenceError::Group(_) => CmdError::ResourceCap(e.to_string()),
        other => CmdError::Input(other.to_string()),
    }
}

/// Runs a command; `Ok(true)` means every requested assertion held.
fn run(cli: &Cli) -> Result<bool, CmdError> {
    let started = Instant::now();
    let mut ok = true;
    let mut doc;
    match &cli.command {
        Command::Check { input, props } => {
            let q = load(input)?;
            doc = Document::new(&input.file, "check");
            let flags = q.properties();
            doc.verdict("order", q.order() as u64);
            match props {
                None => {
                    let value = serde_json::to_value(&flags).expect("flags serialize");
                    if let Value::Object(map) = &value {
                        for (k, v) in map {
                            doc.verdict(k.clone(), v.clone());
                        }
                    }
                }
                Some(list) => {
                    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        match flags.get(name) {
                            Some(holds) => {
                                doc.verdict(name, holds);
                                ok &= holds;
                            }
                            None => {
                                return Err(CmdError::Input(format!("unknown property {name:?}")))
                            }
                        }
                    }
                }
            }
        }
        Command::Classify { input } => {
            let q = load(input)?;
            doc = Document::new(&input.file, "classify");
            let limits = ReportLimits {
                group_cap: cli.group_cap,
                free_cap: cli.free_cap,
            };
            let report = classify::classification_report(&q, limits);
            doc.verdict("connected", report.connected);
            doc.verdict("superconnected", report.superconnected);
            doc.verdict("projection_quotient_in_hs", report.p2_in_hs);
            doc.verdict("superfaithful", report.superfaithful);
            doc.verdict_detail(
                "malcev",
                serde_json::to_value(report.malcev.verdict).unwrap(),
                Some(format!("method: {}", report.malcev.method)),
            );
            for item in &report.consequences {
                doc.verdict_detail(
                    format!("consequence: {}", item.name),
                    item.passed,
                    item.detail.clone(),
                );
                ok &= item.passed;
            }
            if let Some(item) = &report.coset_reconstruction {
                doc.verdict_detail(item.name.clone(), item.passed, item.detail.clone());
                ok &= item.passed;
            }
            if let Some(item) = &report.unipotent_checks {
                doc.verdict_detail(item.name.clone(), item.passed, item.detail.clone());
                ok &= item.passed;
            }
            doc.witness(
                "report",
                serde_json::to_value(&report).expect("report serializes"),
            );
        }
        Command::Con { input } => {
            let q = load(input)?;
            doc = Document::new(&input.file, "con");
            let lattice = congruence::congruence_lattice(&q).map_err(congruence_error)?;
            doc.verdict("congruences", lattice.len() as u64);
            let uniform = congruence::is_uniform(&lattice);
            doc.verdict_detail("uniform", uniform.holds, uniform.witness);
            let regular = congruence::is_regular(&lattice);
            doc.verdict_detail("regular", regular.holds, regular.witness);
            match congruence::is_coherent(&q, &lattice) {
                Ok(coherent) => doc.verdict_detail("coherent", coherent.holds, coherent.witness),
                Err(e) => doc.verdict_detail("coherent", "skipped", Some(e.to_string())),
            }
            let flags = lattice
                .annotate(&q, cli.group_cap)
                .map_err(congruence_error)?;
            let mut list = Vec::new();
            for (c, f) in lattice.congruences().iter().zip(flags.iter()) {
                list.push(json!({
                    "partition": c.partition(),
                    "printed": c.to_string(),
                    "abelian": f.abelian,
                    "strongly_abelian": f.strongly_abelian,
                    "uniform_blocks": f.uniform_blocks,
                }));
            }
            doc.witness("congruences", Value::Array(list));
            let edges: Vec<Value> = lattice
                .hasse_edges()
                .into_iter()
                .map(|(i, j)| {
                    json!([
                        lattice.congruences()[i].to_string(),
                        lattice.congruences()[j].to_string()
                    ])
                })
                .collect();
            doc.witness("hasse_edges", Value::Array(edges));
        }
        Command::Groups { input } => {
            let q = load(input)?;
            doc = Document::new(&input.file, "groups");
            let cap = cli.group_cap;
            let to_cap = |e: leftq::perm::GroupError| CmdError::ResourceCap(e.to_string());
            let lm = action::lmlt(&q);
            doc.verdict("lmlt_order", lm.order(cap).map_err(to_cap)? as u64);
            doc.verdict("lmlt_transitive", lm.is_transitive());
            let dis = action::dis(&q, cap).map_err(to_cap)?;
            doc.verdict("dis_order", dis.group.order(cap).map_err(to_cap)? as u64);
            doc.verdict("dis_transitive", dis.group.is_transitive());
            doc.verdict("dis_regular", dis.group.is_regular(cap).map_err(to_cap)?);
            doc.verdict(
                "dis_orbits",
                action::orbit_partition(&q, &dis.group).to_string(),
            );
            doc.verdict("cayley_kernel", action::cayley_kernel(&q).to_string());
            let admissible =
                action::is_admissible(&q, &dis.group, Some(&dis.words), cap).map_err(to_cap)?;
            doc.verdict("dis_admissible", admissible.witness_admissible);
        }
        Command::Make { kind } => {
            let positivity = match kind {
                MakeKind::Projection { n }
                | MakeKind::Cyclic { n }
                | MakeKind::Dihedral { n }
                | MakeKind::Subtraction { n }
                | MakeKind::Affine { n, .. }
                | MakeKind::Constpow { n, .. } => *n,
                MakeKind::Coset { .. } => 1,
            };
            if positivity == 0 {
                return Err(CmdError::Input(
                    "the order parameter must be positive".into(),
                ));
            }
            let (q, label) = match kind {
                MakeKind::Projection { n } => (construct::projection(*n), "projection"),
                MakeKind::Cyclic { n } => (construct::cyclic_permutation(*n), "cyclic"),
                MakeKind::Affine { n, k } => (
                    construct::affine_cyclic(*n, *k).map_err(|e| CmdError::Input(e.to_string()))?,
                    "affine",
                ),
                MakeKind::Dihedral { n } => (
                    construct::affine_cyclic(*n, -1).map_err(|e| CmdError::Input(e.to_string()))?,
                    "dihedral",
                ),
                MakeKind::Subtraction { n } => (construct::subtraction(*n), "subtraction"),
                MakeKind::Constpow { n, carrier } => (
                    construct::constant_power(*n, *carrier)
                        .map_err(|e| CmdError::Input(e.to_string()))?,
                    "constpow",
                ),
                MakeKind::Coset {
                    group,
                    subgroup,
                    aut,
                } => {
                    let text = std::fs::read_to_string(group)
                        .map_err(|e| CmdError::Input(format!("{group}: {e}")))?;
                    let table = parse_group_table(&text)?;
                    let g = construct::FiniteGroupTable::from_table(&table)
                        .map_err(|e| CmdError::Input(e.to_string()))?;
                    let h = parse_index_list(subgroup)?;
                    let f = parse_index_list(aut)?;
                    (
                        construct::coset_quandle(&g, &h, &f)
                            .map_err(|e| CmdError::Input(e.to_string()))?,
                        "coset",
                    )
                }
            };
            if cli.json {
                doc = Document::new(label, "make");
                doc.verdict("order", q.order() as u64);
                doc.witness("lqt", Value::String(lqt::emit(&q)));
                doc.timings.total_ms = started.elapsed().as_millis();
                doc.render(true);
            } else {
                // bare table on stdout, pipeable into the other commands
                print_tolerant(&lqt::emit(&q));
            }
            return Ok(true);
        }
        Command::Iso { a, b, format } => {
            let qa = load(&InputFile {
                file: a.clone(),
                format: *format,
            })?;
            let qb = load(&InputFile {
                file: b.clone(),
                format: *format,
            })?;
            doc = Document::new(format!("{a} vs {b}"), "iso");
            match qa.find_isomorphism(&qb) {
                Ok(Some(map)) => {
                    doc.verdict("isomorphic", true);
                    doc.witness(
                        "isomorphism",
                        Value::Array(map.into_iter().map(|v| Value::from(v as u64)).collect()),
                    );
                }
                Ok(None) => doc.verdict("isomorphic", false),
                Err(e) => return Err(CmdError::ResourceCap(e.to_string())),
            }
        }
        Command::Verify {
            input,
            identities,
            assignment_cap,
        } => {
            let q = load(input)?;
            doc = Document::new(&input.file, "verify");
            for text in identities {
                let id = term::parse_identity(text)
                    .map_err(|e| CmdError::Input(format!("{text}: {e}")))?;
                let canon = term::canonical_form(&id);
                let check = term::satisfies_identity_capped(&q, &id, *assignment_cap)
                    .map_err(|e| CmdError::ResourceCap(e.to_string()))?;
                doc.verdict_detail(
                    format!("satisfies {id}"),
                    check.holds,
                    Some(format!("canonical: {}", canon.identity)),
                );
                ok &= check.holds;
                if let Some(cex) = check.counterexample {
                    let map: serde_json::Map<String, Value> = cex
                        .into_iter()
                        .map(|(v, x)| (v, Value::from(x as u64)))
                        .collect();
                    doc.witness("counterexample", Value::Object(map));
                }
            }
        }
        Command::Search {
            order,
            axioms,
            identities,
            limit,
            up_to_iso,
            allow_large,
            jobs,
            output,
        } => {
            let mut spec = SearchSpec::new(*order);
            spec.axioms = AxiomSet::parse(axioms).map_err(CmdError::Input)?;
            for text in identities {
                spec.identities.push(
                    term::parse_identity(text)
                        .map_err(|e| CmdError::Input(format!("{text}: {e}")))?,
                );
            }
            spec.limit = *limit;
            spec.up_to_iso = *up_to_iso;
            spec.allow_large = *allow_large;
            doc = Document::new(format!("order {order}"), "search");
            let mut stream = String::new();
            let stats = if *jobs > 1 {
                let (models, stats) =
                    search::search_parallel(&spec, *jobs).map_err(search_error)?;
                for q in &models {
                    stream.push_str(&lqt::emit(q));
                    stream.push('\n');
                }
                stats
            } else {
                search::search_foreach(&spec, &mut |q| {
                    stream.push_str(&lqt::emit(q));
                    stream.push('\n');
                    true
                })
                .map_err(search_error)?
            };
            match output {
                Some(path) => std::fs::write(path, &stream)
                    .map_err(|e| CmdError::Input(format!("{path}: {e}")))?,
                None => {
                    if !cli.json {
                        print_tolerant(&stream);
                    }
                }
            }
            doc.verdict("models", stats.models as u64);
            doc.verdict("nodes", stats.nodes);
            if cli.json {
                let blocks: Vec<Value> = stream
                    .split("\n\n")
                    .filter(|b| !b.trim().is_empty())
                    .map(|b| Value::String(b.trim_end().to_string() + "\n"))
                    .collect();
                doc.witness("models", Value::Array(blocks));
            }
        }
    }
    doc.timings.total_ms = started.elapsed().as_millis();
    doc.render(cli.json);
    Ok(ok)
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, CmdError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CmdError::Input(format!("bad index {s:?}")))
        })
        .collect()
}

fn parse_group_table(text: &str) -> Result<Vec<Vec<usize>>, CmdError> {
    let mut rows = Vec::new();
    let mut order: Option<usize> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match order {
            None => {
                order = Some(
                    line.parse()
                        .map_err(|_| CmdError::Input("expected group order".into()))?,
                )
            }
            Some(n) => {
                let row: Result<Vec<usize>, _> =
                    line.split_whitespace().map(str::parse::<usize>).collect();
                let row = row.map_err(|_| CmdError::Input("bad group table entry".into()))?;
                if row.len() != n {
                    return Err(CmdError::Input(format!("expected {n} entries per row")));
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
