//! Command line front end: loads a workspace document and runs one check or
//! construction, printing a human report followed by a fenced JSON block.
//!
//! Exit codes: 0 when the property holds, 1 when it fails (with a witness),
//! 2 for malformed input.

pub mod doc;
pub mod fixtures;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use concentra::catalg::{check_closed, is_normal_subconcentration, quotient_concentration, semidirect_category, induced_action, SubcategoryData};
use concentra::category::{FinCategory, Functor, MorphismId, Violation};
use concentra::concentration::{check_concentration_with, enumerate_concentrations, CheckOptions, MorphismPartition, Outcome, Verdict, ENUMERATION_BOUND};
use concentra::dirlim::{check_equivariant, check_semidirect_decomposition};
use concentra::groupoid::{codiscrete_cover, sample_theta, theta_concentration, theta_isomorphism, torsor_groupoid};
use concentra::lifting::{check_2_lifting, check_multivalued_fibration, externalize, pullback_concentration, verify_adjunction_triangles};
use concentra::monoid::{concentration_monoid, find_isomorphism, induced_hom, quotient_by_normal_submonoid, semidirect_monoid, FinMonoid};
use concentra::{Error, ObjectId};

use doc::{Document, LoadError, RawDocument};

pub const SEED_VAR: &str = "CONCENTRA_SEED";

#[derive(Debug, Parser)]
#[command(name = "concentra", version, about = "Concentration structures on finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category axioms and functor laws of every entry.
    Validate { doc: PathBuf },
    /// Decide the concentration axioms for a partition.
    CheckConc {
        doc: PathBuf,
        #[arg(long)]
        partition: String,
        /// Check k-existence for every 2 ≤ k ≤ max-n.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Also scan associativity witness by witness (at most 8 morphisms).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Cayley table of the concentration monoid.
    Monoid {
        doc: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Every concentration structure on a small category.
    EnumerateConc {
        doc: PathBuf,
        /// Needed when the document holds several categories.
        #[arg(long)]
        category: Option<String>,
        #[arg(long, default_value_t = ENUMERATION_BOUND)]
        bound: usize,
    },
    /// Pull a concentration back along a 2-lifting functor.
    Pullback {
        doc: PathBuf,
        #[arg(long)]
        functor: String,
        /// A concentration on the functor's target.
        #[arg(long)]
        partition: String,
    },
    /// The concentrating functor onto the one-object category of the monoid.
    Concentrate {
        doc: PathBuf,
        #[arg(long)]
        partition: String,
        /// Relabel through the least isomorphism onto this monoid.
        #[arg(long)]
        onto: Option<String>,
    },
    /// Normality of a sub-concentration and the quotient concentration.
    Quotient {
        doc: PathBuf,
        #[arg(long)]
        partition: String,
        /// Comma separated object labels of the subcategory.
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        /// Comma separated morphism labels of the subcategory.
        #[arg(long, value_delimiter = ',')]
        morphisms: Vec<String>,
    },
    /// Semidirect product of categories with concentration.
    Semidirect {
        doc: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        fiber_partition: String,
        #[arg(long)]
        base_partition: String,
        /// Write the product and its concentration as a new document.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Equivariant direct limit of a group diagram and its decomposition.
    Dirlim {
        doc: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        action: String,
    },
    /// Search for a monoid isomorphism.
    Iso {
        doc: Option<PathBuf>,
        /// A document monoid, a document partition or a built-in group.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Triangle identities of the adjunction at a concentration.
    Adjunction {
        doc: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Torsor groupoid model of a group, with a sampled base-point path family.
    GroupoidModel {
        doc: Option<PathBuf>,
        /// A document monoid or a built-in group.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        objects: usize,
        /// Also build the codiscrete cover over the one-object category.
        #[arg(long)]
        cover: bool,
    },
}

/// What one invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("concentra")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { stdout: text, stderr: String::new(), code }
            } else {
                Output { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Output {
            stdout: report.render(),
            stderr: String::new(),
            code: report.code,
        },
        Err(e) => Output {
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
            code: e.code,
        },
    }
}

struct Report {
    text: String,
    json: Map<String, Value>,
    code: i32,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            json: Map::new(),
            code: 0,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    fn verdict(&mut self, holds: bool) {
        self.set("holds", Value::Bool(holds));
        if !holds {
            self.code = 1;
        }
    }

    fn render(&self) -> String {
        let block = doc::compact_pretty(&Value::Object(self.json.clone()));
        format!("{}\n```json\n{block}\n```\n", self.text)
    }
}

#[derive(Debug)]
struct CmdError {
    code: i32,
    message: String,
}

impl From<LoadError> for CmdError {
    fn from(e: LoadError) -> Self {
        CmdError { code: 2, message: e.to_string() }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotConcentration(_)
            | Error::NotPreserving(..)
            | Error::NotTwoLifting(..)
            | Error::NotNormal(_)
            | Error::IncompatibleAction(_)
            | Error::Equivariance(_) => 1,
            _ => 2,
        };
        CmdError { code, message: e.to_string() }
    }
}

fn input(message: impl Into<String>) -> CmdError {
    CmdError { code: 2, message: message.into() }
}

type Cmd<T> = Result<T, CmdError>;

fn execute(command: &Command) -> Cmd<Report> {
    match command {
        Command::Validate { doc } => validate(doc),
        Command::CheckConc { doc, partition, max_n, exhaustive } => check_conc(&doc::load(doc)?, partition, *max_n, *exhaustive),
        Command::Monoid { doc, partition } => monoid(&doc::load(doc)?, partition),
        Command::EnumerateConc { doc, category, bound } => enumerate(&doc::load(doc)?, category.as_deref(), *bound),
        Command::Pullback { doc, functor, partition } => pullback(&doc::load(doc)?, functor, partition),
        Command::Concentrate { doc, partition, onto } => concentrate(&doc::load(doc)?, partition, onto.as_deref()),
        Command::Quotient { doc, partition, objects, morphisms } => quotient(&doc::load(doc)?, partition, objects, morphisms),
        Command::Semidirect {
            doc,
            action,
            fiber_partition,
            base_partition,
            output,
        } => semidirect(&doc::load(doc)?, action, fiber_partition, base_partition, output.as_deref()),
        Command::Dirlim { doc, diagram, action } => dirlim(&doc::load(doc)?, diagram, action),
        Command::Iso { doc, left, right } => iso(&optional_doc(doc.as_deref())?, left, right),
        Command::Adjunction { doc, partition } => adjunction(&doc::load(doc)?, partition),
        Command::GroupoidModel { doc, group, objects, cover } => groupoid_model(&optional_doc(doc.as_deref())?, group, *objects, *cover),
    }
}

fn optional_doc(path: Option<&Path>) -> Cmd<Document> {
    Ok(match path {
        Some(p) => doc::load(p)?,
        None => Document::default(),
    })
}

fn labels(cat: &FinCategory, ms: &[MorphismId]) -> Vec<String> {
    ms.iter().map(|&m| cat.label(m).to_string()).collect()
}

fn tuple(cat: &FinCategory, ms: &[MorphismId]) -> String {
    format!("({})", labels(cat, ms).join(", "))
}

fn classes_json(cat: &FinCategory, part: &MorphismPartition) -> Value {
    Value::from(part.classes().iter().map(|c| labels(cat, c)).collect::<Vec<_>>())
}

fn describe_violation(cat: &FinCategory, v: &Violation) -> String {
    let l = |m: &MorphismId| cat.label(*m).to_string();
    match v {
        Violation::IdentityEndpoints { object, identity } => {
            format!("identity {} of {} is not an endomorphism of it", l(identity), cat.object_label(*object))
        }
        Violation::MissingComposite { f, g } => format!("{} ∘ {} is composable but has no entry", l(f), l(g)),
        Violation::SpuriousComposite { f, g } => format!("{} ∘ {} has an entry but is not composable", l(f), l(g)),
        Violation::CompositeEndpoints { f, g, fg } => {
            format!("{} ∘ {} = {} has the wrong source or target", l(f), l(g), l(fg))
        }
        Violation::LeftUnit { f } => format!("id ∘ {} != {}", l(f), l(f)),
        Violation::RightUnit { f } => format!("{} ∘ id != {}", l(f), l(f)),
        Violation::Associativity { f, g, h } => {
            format!("({0} ∘ {1}) ∘ {2} != {0} ∘ ({1} ∘ {2})", l(f), l(g), l(h))
        }
    }
}

fn validate(path: &Path) -> Cmd<Report> {
    let raw = doc::read(path)?;
    let mut r = Report::new();
    let mut problems = Map::new();
    let mut monoids = std::collections::BTreeMap::new();
    for (name, m) in &raw.monoids {
        monoids.insert(name.clone(), Arc::new(doc::build_monoid(m, &format!("monoids.{name}"))?));
    }
    let mut broken = false;
    for (name, c) in &raw.categories {
        let cat = doc::build_category(c, &format!("categories.{name}"), &monoids)?;
        let report = cat.validate();
        if report.ok() {
            r.line(format!("category {name}: ok ({} objects, {} morphisms)", cat.num_objects(), cat.num_morphisms()));
        } else {
            broken = true;
            r.line(format!("category {name}: {} violation(s)", report.violations.len()));
            let list: Vec<String> = report.violations.iter().map(|v| describe_violation(&cat, v)).collect();
            for v in &list {
                r.line(format!("  {v}"));
            }
            problems.insert(format!("categories.{name}"), Value::from(list));
        }
    }
    if !broken {
        let document = Document::from_raw(&raw)?;
        for (name, f) in &document.functors {
            let report = f.check();
            if report.ok() {
                r.line(format!("functor {name}: ok"));
            } else {
                r.line(format!("functor {name}: {} violation(s)", report.violations.len()));
                let list: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                for v in &list {
                    r.line(format!("  {v}"));
                }
                problems.insert(format!("functors.{name}"), Value::from(list));
            }
        }
        for kind in ["partitions", "posets", "diagrams", "actions"] {
            let names: Vec<&String> = match kind {
                "partitions" => raw.partitions.keys().collect(),
                "posets" => raw.posets.keys().collect(),
                "diagrams" => raw.diagrams.keys().collect(),
                _ => raw.actions.keys().collect(),
            };
            for name in names {
                r.line(format!("{} {name}: ok", kind.trim_end_matches('s')));
            }
        }
    }
    let holds = problems.is_empty();
    r.line(if holds { "document is valid" } else { "document has violations" });
    r.set("command", json!("validate"));
    r.set("violations", Value::Object(problems));
    r.verdict(holds);
    Ok(r)
}

fn verdict_json(cat: &FinCategory, v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"verdict": "holds"}),
        Verdict::NotEvaluated => json!({"verdict": "not evaluated"}),
        Verdict::Fails(w) => json!({
            "verdict": "fails",
            "witness_count": w.len(),
            "witnesses": w.iter().take(WITNESS_LIMIT).map(|t| labels(cat, t)).collect::<Vec<_>>(),
        }),
    }
}

const WITNESS_LIMIT: usize = 5;

fn verdict_lines(r: &mut Report, cat: &FinCategory, name: &str, v: &Verdict) {
    r.line(format!("{name}: {v}"));
    for w in v.witnesses().iter().take(WITNESS_LIMIT) {
        r.line(format!("  witness {}", tuple(cat, w)));
    }
}

fn check_conc(doc: &Document, partition: &str, max_n: usize, exhaustive: bool) -> Cmd<Report> {
    let (cname, cat, part) = doc.partition(partition)?;
    let report = check_concentration_with(cat, part, max_n, CheckOptions { exhaustive })?;
    let mut r = Report::new();
    r.line(format!("category {cname}, partition {partition}: {}", part.describe(cat)));
    verdict_lines(&mut r, cat, "identity", &report.identity);
    verdict_lines(&mut r, cat, "composition", &report.composition);
    for (k, v) in &report.existence {
        verdict_lines(&mut r, cat, &format!("{k}-existence"), v);
    }
    verdict_lines(&mut r, cat, "associativity", &report.associativity);
    if let Some(v) = &report.exhaustive_associativity {
        verdict_lines(&mut r, cat, "associativity (witness level)", v);
    }
    let holds = report.all_hold();
    if holds {
        r.line("all axioms hold");
    } else if report.is_concentration() {
        r.line("concentration structure, but some k-existence axiom fails");
    } else {
        r.line("not a concentration structure");
    }
    let mut axioms = Map::new();
    axioms.insert("identity".into(), verdict_json(cat, &report.identity));
    axioms.insert("composition".into(), verdict_json(cat, &report.composition));
    for (k, v) in &report.existence {
        axioms.insert(format!("existence_{k}"), verdict_json(cat, v));
    }
    axioms.insert("associativity".into(), verdict_json(cat, &report.associativity));
    if let Some(v) = &report.exhaustive_associativity {
        axioms.insert("associativity_witness_level".into(), verdict_json(cat, v));
    }
    r.set("command", json!("check-conc"));
    r.set("category", json!(cname));
    r.set("partition", json!(partition));
    r.set("max_n", json!(max_n));
    r.set("axioms", Value::Object(axioms));
    r.set("is_concentration", json!(report.is_concentration()));
    r.verdict(holds);
    Ok(r)
}

/// Built-in groups of the same order that the monoid is isomorphic to.
fn identify(m: &FinMonoid) -> Vec<String> {
    let n = m.size();
    let mut names = vec![format!("Z{n}")];
    match n {
        4 => names.push("V4".into()),
        6 => names.push("S3".into()),
        24 => names.push("S4".into()),
        _ => {}
    }
    names
        .into_iter()
        .filter(|name| {
            FinMonoid::by_name(name)
                .and_then(|g| find_isomorphism(m, &g).ok().flatten())
                .is_some()
        })
        .collect()
}

fn cayley_lines(r: &mut Report, m: &FinMonoid) {
    let width = m.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let cell = |s: &str| format!("{s:>width$}");
    let header: Vec<String> = m.labels().iter().map(|l| cell(l)).collect();
    r.line(format!("{} | {}", cell("·"), header.join(" ")));
    r.line(format!("{}-+-{}", "-".repeat(width), "-".repeat(header.join(" ").chars().count())));
    for a in 0..m.size() {
        let row: Vec<String> = (0..m.size()).map(|b| cell(m.label(m.mul(a, b)))).collect();
        r.line(format!("{} | {}", cell(m.label(a)), row.join(" ")));
    }
}

fn monoid_json(m: &FinMonoid) -> Value {
    json!({
        "elements": m.labels(),
        "identity": m.identity(),
        "is_group": m.is_group(),
        "table": m.rows(),
    })
}

fn monoid(doc: &Document, partition: &str) -> Cmd<Report> {
    let (cname, cat, part) = doc.partition(partition)?;
    let cm = concentration_monoid(cat, part)?;
    let m = &cm.monoid;
    let mut r = Report::new();
    r.line(format!("concentration monoid of {cname} / {partition}: {} elements", m.size()));
    for (i, c) in part.classes().iter().enumerate() {
        r.line(format!("  {} = {{{}}}", m.label(i), labels(cat, c).join(", ")));
    }
    cayley_lines(&mut r, m);
    r.line(format!("group: {}", if m.is_group() { "yes" } else { "no" }));
    let ids = identify(m);
    if ids.is_empty() {
        r.line("not isomorphic to a built-in group of this order");
    } else {
        r.line(format!("isomorphic to {}", ids.join(", ")));
    }
    r.set("command", json!("monoid"));
    r.set("category", json!(cname));
    r.set("partition", json!(partition));
    r.set("classes", classes_json(cat, part));
    r.set("monoid", monoid_json(m));
    r.set("every_class_has_isomorphism", json!(cm.every_class_has_isomorphism));
    r.set("isomorphic_to", json!(ids));
    r.verdict(true);
    Ok(r)
}

fn enumerate(doc: &Document, category: Option<&str>, bound: usize) -> Cmd<Report> {
    let (name, cat) = match category {
        Some(c) => (c.to_string(), doc.category(c)?),
        None => {
            let (n, c) = doc.sole_category()?;
            (n.clone(), c)
        }
    };
    let found = enumerate_concentrations(cat, bound)?;
    let mut r = Report::new();
    r.line(format!("category {name}: {} morphisms", cat.num_morphisms()));
    r.line(format!("{} concentration structure(s)", found.len()));
    for p in &found {
        let trivial = if p.num_classes() == 1 { " (trivial)" } else { "" };
        r.line(format!("  {}{trivial}", p.describe(cat)));
    }
    r.set("command", json!("enumerate-conc"));
    r.set("category", json!(name));
    r.set("count", json!(found.len()));
    r.set("partitions", Value::from(found.iter().map(|p| classes_json(cat, p)).collect::<Vec<_>>()));
    r.verdict(true);
    Ok(r)
}

fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn pullback(doc: &Document, functor: &str, partition: &str) -> Cmd<Report> {
    let f = doc.functor(functor)?;
    let (tname, tcat, tpart) = doc.partition(partition)?;
    if !same_category(f.target(), tcat) {
        return Err(input(format!("partition {partition} is on {tname}, not on the target of {functor}")));
    }
    laws(f, functor)?;
    let mut r = Report::new();
    r.set("command", json!("pullback"));
    r.set("functor", json!(functor));
    r.set("partition", json!(partition));
    let (s, t) = (f.source(), f.target());
    if let Outcome::Fails((a, b)) = check_2_lifting(f)? {
        r.line(format!("{functor} is not 2-lifting"));
        r.line(format!(
            "  witness: {} ∘ {} is composable in the target but no lifts compose",
            t.label(a),
            t.label(b)
        ));
        r.set("two_lifting", json!(false));
        r.set("witness", json!([t.label(a), t.label(b)]));
        r.verdict(false);
        return Ok(r);
    }
    let part = pullback_concentration(f, tpart)?;
    let src_m = concentration_monoid(s, &part)?.monoid;
    let hom = induced_hom(f, &part, tpart)?;
    r.line(format!("{functor} is 2-lifting"));
    r.line(format!("pullback of {partition}: {}", part.describe(s)));
    r.line(format!("concentration monoid: {} elements", src_m.size()));
    r.line(format!("induced homomorphism is bijective: {}", hom.is_bijective()));
    r.set("two_lifting", json!(true));
    r.set("classes", classes_json(s, &part));
    r.set("monoid", monoid_json(&src_m));
    r.set("induced_hom", json!(hom.map()));
    r.set("induced_hom_bijective", json!(hom.is_bijective()));
    r.verdict(true);
    Ok(r)
}

fn laws(f: &Functor, name: &str) -> Cmd<()> {
    match f.check().violations.first() {
        None => Ok(()),
        Some(v) => Err(input(format!("functor {name} is not a functor: {v}"))),
    }
}

fn concentrate(doc: &Document, partition: &str, onto: Option<&str>) -> Cmd<Report> {
    let (cname, cat, part) = doc.partition(partition)?;
    let target = onto.map(|o| resolve_group(doc, o)).transpose()?;
    let f = externalize(cat, part, target.as_ref())?;
    let lifting = check_2_lifting(&f)?.holds();
    let t = f.target();
    let mut r = Report::new();
    r.line(format!("concentrating functor of {cname} / {partition} onto a one-object category with {} morphisms", t.num_morphisms()));
    let mut map = Map::new();
    for m in cat.morphisms() {
        r.line(format!("  {} ↦ {}", cat.label(m), t.label(f.mor(m))));
        map.insert(cat.label(m).into(), json!(t.label(f.mor(m))));
    }
    r.line(format!("2-lifting: {}", if lifting { "yes" } else { "no" }));
    r.set("command", json!("concentrate"));
    r.set("category", json!(cname));
    r.set("partition", json!(partition));
    r.set("onto", json!(onto));
    r.set("morphisms", Value::Object(map));
    r.set("two_lifting", json!(lifting));
    r.verdict(lifting);
    Ok(r)
}

fn quotient(doc: &Document, partition: &str, objects: &[String], morphisms: &[String]) -> Cmd<Report> {
    let (cname, cat, part) = doc.partition(partition)?;
    let sub = SubcategoryData::from_labels(cat, objects, morphisms)?;
    sub.validate(cat)?;
    let mut r = Report::new();
    r.set("command", json!("quotient"));
    r.set("category", json!(cname));
    r.set("partition", json!(partition));
    r.set("subcategory", json!({"objects": objects, "morphisms": labels(cat, sub.morphisms())}));
    r.line(format!("subcategory of {cname}: objects {{{}}}, morphisms {{{}}}", objects.join(", "), labels(cat, sub.morphisms()).join(", ")));
    if !check_closed(cat, part, &sub)? {
        r.line(format!("the restriction of {partition} is not a concentration structure"));
        r.set("closed", json!(false));
        r.verdict(false);
        return Ok(r);
    }
    r.set("closed", json!(true));
    r.line("closed: the restriction is a concentration structure");
    if let Outcome::Fails((f, h)) = is_normal_subconcentration(cat, part, &sub)? {
        r.line("not normal");
        r.line(format!("  witness: no conjugates of {} across {}", cat.label(h), cat.label(f)));
        r.set("normal", json!(false));
        r.set("witness", json!([cat.label(f), cat.label(h)]));
        r.verdict(false);
        return Ok(r);
    }
    let q = quotient_concentration(cat, part, &sub)?;
    let qm = concentration_monoid(cat, &q)?.monoid;
    let m = concentration_monoid(cat, part)?.monoid;
    let alg = quotient_by_normal_submonoid(&m, &concentra::catalg::sub_classes(part, &sub))?;
    let matches = find_isomorphism(&qm, &alg.monoid)?.is_some();
    r.line("normal");
    r.line(format!("quotient concentration: {}", q.describe(cat)));
    r.line(format!("quotient monoid: {} elements, isomorphic to the monoid quotient: {}", qm.size(), matches));
    r.set("normal", json!(true));
    r.set("classes", classes_json(cat, &q));
    r.set("monoid", monoid_json(&qm));
    r.set("matches_monoid_quotient", json!(matches));
    r.verdict(matches);
    Ok(r)
}

fn semidirect(doc: &Document, action: &str, fiber_partition: &str, base_partition: &str, output: Option<&Path>) -> Cmd<Report> {
    let act = doc
        .category_actions
        .get(action)
        .ok_or_else(|| input(format!("unknown category action {action:?}")))?;
    let (_, fcat, fpart) = doc.partition(fiber_partition)?;
    let (_, bcat, bpart) = doc.partition(base_partition)?;
    if !same_category(fcat, act.fiber()) || !same_category(bcat, act.base()) {
        return Err(input("the partitions must be on the fiber and on the base of the action"));
    }
    let mut r = Report::new();
    r.set("command", json!("semidirect"));
    r.set("action", json!(action));
    let (sd, part) = match semidirect_category(act, fpart, bpart) {
        Err(Error::IncompatibleAction(msg)) => {
            r.line(format!("the action is not compatible: {msg}"));
            r.set("compatible", json!(false));
            r.verdict(false);
            return Ok(r);
        }
        other => other?,
    };
    let cat = &sd.category;
    let m = concentration_monoid(cat, &part)?.monoid;
    let mf = concentration_monoid(act.fiber(), fpart)?.monoid;
    let mb = concentration_monoid(act.base(), bpart)?.monoid;
    let phi = induced_action(act, fpart, bpart)?;
    let expected = semidirect_monoid(&mf, &mb, &phi)?;
    let matches = find_isomorphism(&m, &expected)?.is_some();
    r.line(format!("semidirect product: {} objects, {} morphisms", cat.num_objects(), cat.num_morphisms()));
    r.line(format!("concentration: {}", part.describe(cat)));
    r.line(format!("concentration monoid: {} elements", m.size()));
    cayley_lines(&mut r, &m);
    r.line(format!("isomorphic to the semidirect product of the monoids: {matches}"));
    let ids = identify(&m);
    if !ids.is_empty() {
        r.line(format!("isomorphic to {}", ids.join(", ")));
    }
    r.set("compatible", json!(true));
    r.set("objects", json!(cat.object_labels()));
    r.set("morphisms", json!(cat.num_morphisms()));
    r.set("classes", classes_json(cat, &part));
    r.set("monoid", monoid_json(&m));
    r.set("matches_monoid_semidirect", json!(matches));
    r.set("isomorphic_to", json!(ids));
    if let Some(path) = output {
        let mut out = RawDocument::new();
        out.add_category("semidirect", cat);
        out.add_partition("semidirect", "semidirect", cat, &part);
        out.add_monoid("semidirect", &m);
        std::fs::write(path, out.to_json()).map_err(|e| input(format!("{}: {e}", path.display())))?;
        r.line(format!("wrote {}", path.display()));
    }
    r.verdict(matches);
    Ok(r)
}

fn dirlim(doc: &Document, diagram: &str, action: &str) -> Cmd<Report> {
    let (dposet, d) = doc
        .diagrams
        .get(diagram)
        .ok_or_else(|| input(format!("unknown diagram {diagram:?}")))?;
    let (aposet, a) = doc
        .poset_actions
        .get(action)
        .ok_or_else(|| input(format!("unknown poset action {action:?}")))?;
    if dposet != aposet {
        return Err(input(format!("diagram {diagram} is over {dposet}, action {action} over {aposet}")));
    }
    let mut r = Report::new();
    r.set("command", json!("dirlim"));
    r.set("diagram", json!(diagram));
    r.set("action", json!(action));
    if let Err(Error::Equivariance(msg)) = check_equivariant(d, a) {
        r.line(format!("the diagram is not equivariant: {msg}"));
        r.set("equivariant", json!(false));
        r.verdict(false);
        return Ok(r);
    }
    let dec = check_semidirect_decomposition(d, a)?;
    let poset = d.poset();
    r.line(format!("poset {dposet}: {} elements, maximum {}", poset.len(), poset.label(poset.maximum())));
    r.line(format!("acting group: {} elements", a.group().size()));
    r.line(format!("direct limit: {} elements ({})", dec.limit.size(), identify(&dec.limit).join(", ")));
    r.line(format!(
        "equivariant direct limit: {} elements ({})",
        dec.equivariant_limit.size(),
        identify(&dec.equivariant_limit).join(", ")
    ));
    cayley_lines(&mut r, &dec.equivariant_limit);
    r.line(format!("S_G decomposes as a semidirect product: {}", dec.psi_is_isomorphism));
    r.line(format!(
        "equivariant limit ≅ limit ⋊ G: {}",
        dec.monoid_isomorphism.is_some()
    ));
    r.set("equivariant", json!(true));
    r.set("limit", monoid_json(&dec.limit));
    r.set("equivariant_limit", monoid_json(&dec.equivariant_limit));
    r.set("induced_action", json!(dec.phi));
    r.set("psi_is_isomorphism", json!(dec.psi_is_isomorphism));
    r.set("monoid_isomorphism", json!(dec.monoid_isomorphism));
    r.verdict(dec.holds());
    Ok(r)
}

/// A document monoid, the concentration monoid of a document partition, or
/// a built-in group.
fn resolve_monoid(doc: &Document, name: &str) -> Cmd<FinMonoid> {
    if let Some(m) = doc.monoids.get(name) {
        return Ok((**m).clone());
    }
    if let Some((_, part)) = doc.partitions.get(name) {
        let (_, cat, _) = doc.partition(name)?;
        return Ok(concentration_monoid(cat, part)?.monoid);
    }
    FinMonoid::by_name(name).ok_or_else(|| input(format!("no monoid, partition or built-in group named {name:?}")))
}

fn resolve_group(doc: &Document, name: &str) -> Cmd<FinMonoid> {
    let m = resolve_monoid(doc, name)?;
    if !m.is_group() {
        return Err(input(format!("{name} is not a group")));
    }
    Ok(m)
}

fn iso(doc: &Document, left: &str, right: &str) -> Cmd<Report> {
    let a = resolve_monoid(doc, left)?;
    let b = resolve_monoid(doc, right)?;
    let map = find_isomorphism(&a, &b)?;
    let mut r = Report::new();
    r.line(format!("{left}: {} elements, {right}: {} elements", a.size(), b.size()));
    match &map {
        Some(map) => {
            r.line(format!("{left} ≅ {right}"));
            for (x, &y) in map.iter().enumerate() {
                r.line(format!("  {} ↦ {}", a.label(x), b.label(y)));
            }
        }
        None => r.line(format!("{left} and {right} are not isomorphic")),
    }
    r.set("command", json!("iso"));
    r.set("left", json!(left));
    r.set("right", json!(right));
    r.set("isomorphism", json!(map));
    r.verdict(map.is_some());
    Ok(r)
}

fn adjunction(doc: &Document, partition: &str) -> Cmd<Report> {
    let (cname, cat, part) = doc.partition(partition)?;
    let holds = verify_adjunction_triangles(cat, part)?;
    let mut r = Report::new();
    r.line(format!("unit at {cname} / {partition}: the concentrating functor"));
    r.line(format!("triangle identities: {}", if holds { "hold" } else { "fail" }));
    r.set("command", json!("adjunction"));
    r.set("category", json!(cname));
    r.set("partition", json!(partition));
    r.verdict(holds);
    Ok(r)
}

fn seed() -> Cmd<u64> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| input(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
    }
}

fn groupoid_model(doc: &Document, group: &str, objects: usize, cover: bool) -> Cmd<Report> {
    let g = resolve_group(doc, group)?;
    if objects == 0 {
        return Err(input("--objects must be at least 1"));
    }
    let seed = seed()?;
    let gpd = torsor_groupoid(&g, objects)?;
    let theta = sample_theta(&gpd, ObjectId(0), seed)?;
    let part = theta_concentration(&gpd, &theta)?;
    let hom = theta_isomorphism(&gpd, &theta)?;
    let to_g = find_isomorphism(hom.source(), &g)?.is_some();
    let mut r = Report::new();
    r.line(format!(
        "torsor groupoid of {group} on {objects} objects: {} morphisms (seed {seed})",
        gpd.num_morphisms()
    ));
    r.line(format!(
        "paths from {}: {}",
        gpd.object_label(theta.base()),
        labels(&gpd, theta.paths()).join(", ")
    ));
    r.line(format!("loop concentration: {} classes", part.num_classes()));
    r.line(format!("concentration monoid ≅ vertex group: {}", hom.is_bijective()));
    r.line(format!("concentration monoid ≅ {group}: {to_g}"));
    r.set("command", json!("groupoid-model"));
    r.set("group", json!(group));
    r.set("objects", json!(objects));
    r.set("seed", json!(seed));
    r.set("morphisms", json!(gpd.num_morphisms()));
    r.set("theta", json!(labels(&gpd, theta.paths())));
    r.set("classes", json!(part.num_classes()));
    r.set("vertex_group_isomorphism", json!(hom.map()));
    let mut holds = hom.is_bijective() && to_g;
    if cover {
        let c = codiscrete_cover(&g)?;
        let fibration = check_multivalued_fibration(&c.projection)?.holds();
        let m = concentration_monoid(&c.cover, &c.partition)?.monoid;
        let cover_iso = find_isomorphism(&m, &g)?.is_some();
        r.line(format!(
            "codiscrete cover: {} objects, {} morphisms, multivalued fibration: {fibration}, monoid ≅ {group}: {cover_iso}",
            c.cover.num_objects(),
            c.cover.num_morphisms()
        ));
        r.set("cover", json!({"objects": c.cover.num_objects(), "morphisms": c.cover.num_morphisms(), "fibration": fibration, "isomorphic": cover_iso}));
        holds &= fibration && cover_iso;
    }
    r.verdict(holds);
    Ok(r)
}
