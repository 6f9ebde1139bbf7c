use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wadakit::dsl::{parse_assignments, parse_presentation, parse_words, serialize_presentation, WordSyntax};
use wadakit::foxcalc::fox_jacobian;
use wadakit::freegroup::{stallings_fold, Generator, Word};
use wadakit::hnn::{
    amalgam_presentation, degree_bound_check, HnnError, hnn_presentation, induced_splitting, verify_fox_block_structure,
    SplittingData,
};
use wadakit::knotio::{builtin, fixture_names, wirtinger_from_pd, KnotFixture, PDCode};
use wadakit::reps::{representation_from_json, search_homs, trivial_rep, Representation, SearchOptions};
use wadakit::wada::{wada_invariant, WadaError};
use wadakit::{Epimorphism, ExactField, Field, Presentation, PrimeField, Rationals};

/// Free groups, Fox calculus and Wada's invariant for presented groups.
#[derive(Parser)]
#[command(name = "wadakit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation and print it in normal form.
    Parse(GroupInput),
    /// Abelianization and, for free rank one, the epimorphism onto Z.
    Abelianize(GroupInput),
    /// Fox Jacobian of the relators.
    Fox(GroupInput),
    /// Stallings graph, rank, index and basis of a subgroup of a free group.
    Fold(FoldArgs),
    /// Representations into GL(d, F_p).
    RepSearch(RepSearchArgs),
    /// Wada's invariant.
    Wada(WadaArgs),
    /// Genus and splitting-rank lower bounds.
    Bound(WadaArgs),
    /// HNN presentation of a splitting.
    HnnPresent(SplittingInput),
    /// The amalgam A_[from,to] of a splitting.
    HnnAmalgam(AmalgamArgs),
    /// The induced splitting over A_[0,n].
    HnnInduce(InduceArgs),
    /// Fox block structure and degree bound of a splitting.
    HnnCheck(CheckArgs),
    /// Wirtinger presentation from a PD code.
    KnotFromPd(PdArgs),
    /// Built-in example groups.
    Fixture(FixtureArgs),
}

#[derive(Args)]
struct GroupInput {
    /// Presentation text such as `< a, b | a b a = b a b >`, or `@FILE`.
    #[arg(long, short = 'p', conflicts_with = "fixture")]
    presentation: Option<String>,
    /// Name of a built-in fixture.
    #[arg(long)]
    fixture: Option<String>,
    /// Epimorphism onto Z as `a=1,b=0,...`; derived when omitted.
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Args)]
struct FoldArgs {
    /// Comma-separated subgroup generators.
    #[arg(long)]
    gens: String,
    /// Ambient alphabet for the index; defaults to the letters used.
    #[arg(long)]
    alphabet: Option<String>,
    /// Words to test for membership.
    #[arg(long = "member")]
    members: Vec<String>,
}

#[derive(Args)]
struct RepSearchArgs {
    #[command(flatten)]
    group: GroupInput,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    prime: u64,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    budget: Option<u128>,
    /// Restrict all images to one conjugacy class.
    #[arg(long)]
    same_class: bool,
}

#[derive(Args)]
struct RepInput {
    /// `trivial` or a path to a representation JSON file.
    #[arg(long, default_value = "trivial")]
    rep: String,
    /// `q` or `fp:P`.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct WadaArgs {
    #[command(flatten)]
    group: GroupInput,
    #[command(flatten)]
    rep: RepInput,
    /// Generator whose column is deleted.
    #[arg(long)]
    column: Option<String>,
}

#[derive(Args)]
struct SplittingInput {
    /// Built-in fixture with a splitting.
    #[arg(long, conflicts_with = "splitting")]
    fixture: Option<String>,
    /// Splitting JSON, inline or as a file path.
    #[arg(long)]
    splitting: Option<String>,
}

#[derive(Args)]
struct AmalgamArgs {
    #[command(flatten)]
    input: SplittingInput,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, allow_negative_numbers = true)]
    to: i64,
}

#[derive(Args)]
struct InduceArgs {
    #[command(flatten)]
    input: SplittingInput,
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: SplittingInput,
    #[command(flatten)]
    rep: RepInput,
    /// Check every representation into GL(dim, F_prime) instead of `--rep`.
    #[arg(long, requires = "prime")]
    search_dim: Option<usize>,
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Args)]
struct PdArgs {
    /// PD code text `X[1,4,2,5] X[3,6,4,1] ...` or JSON.
    pd: String,
}

#[derive(Args)]
struct FixtureArgs {
    /// Fixture name; omit to list all.
    name: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<Value, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

fn read_arg(s: &str) -> Result<String, Failure> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn load_fixture(name: &str) -> Result<KnotFixture, Failure> {
    builtin(name).map_err(usage)
}

impl GroupInput {
    fn presentation(&self) -> Result<(Presentation, Option<Epimorphism>), Failure> {
        match (&self.presentation, &self.fixture) {
            (Some(text), _) => Ok((parse_presentation(&read_arg(text)?).map_err(usage)?, None)),
            (None, Some(name)) => {
                let f = load_fixture(name)?;
                Ok((f.presentation, Some(f.epsilon)))
            }
            (None, None) => Err(usage("one of --presentation or --fixture is required")),
        }
    }

    fn with_epsilon(&self) -> Result<(Presentation, Epimorphism), Failure> {
        let (p, default) = self.presentation()?;
        let eps = match &self.epsilon {
            Some(text) => {
                let pairs = parse_assignments(text).map_err(usage)?;
                let mut values = Vec::new();
                for g in p.generators() {
                    let v = pairs.iter().find(|(h, _)| h == g).map(|(_, v)| *v);
                    values.push(v.ok_or_else(|| usage(format!("--epsilon has no value for `{g}`")))?);
                }
                if let Some((h, _)) = pairs.iter().find(|(h, _)| p.generator_index(h).is_none()) {
                    return Err(usage(format!("--epsilon names unknown generator `{h}`")));
                }
                Epimorphism::new(&p, values).map_err(domain)?
            }
            None => match default {
                Some(e) => e,
                None => p.epimorphism_to_z().map_err(domain)?,
            },
        };
        Ok((p, eps))
    }
}

fn epsilon_json(p: &Presentation, eps: &Epimorphism) -> Value {
    Value::Object(p.generators().iter().map(|g| (g.to_string(), json!(eps.value(g).unwrap_or(0)))).collect())
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "text": serialize_presentation(p),
        "generators": p.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "relators": p.relators().iter().map(|r| WordSyntax(r).to_string()).collect::<Vec<_>>(),
        "padding": p.padding(),
    })
}

fn words_json(ws: &[Word]) -> Value {
    json!(ws.iter().map(|w| WordSyntax(w).to_string()).collect::<Vec<_>>())
}

fn cmd_parse(g: &GroupInput) -> Outcome {
    let (p, _) = g.presentation()?;
    Ok(presentation_json(&p))
}

fn cmd_abelianize(g: &GroupInput) -> Outcome {
    let (p, _) = g.presentation()?;
    let mut v = serde_json::to_value(p.abelianize()).unwrap();
    v["epsilon"] = json!(p.epimorphism_to_z().ok().map(|e| epsilon_json(&p, &e)));
    Ok(v)
}

fn cmd_fox(g: &GroupInput) -> Outcome {
    let (p, _) = g.presentation()?;
    let jac = fox_jacobian(&p);
    Ok(json!({
        "generators": p.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "relators": p.relators().iter().map(|r| WordSyntax(r).to_string()).collect::<Vec<_>>(),
        "jacobian": serde_json::to_value(&jac).unwrap(),
    }))
}

fn cmd_fold(a: &FoldArgs) -> Outcome {
    let gens = parse_words(&a.gens).map_err(usage)?;
    let alphabet: Vec<Generator> = match &a.alphabet {
        Some(s) => s
            .split(',')
            .map(|n| Generator::new(n.trim()).map_err(usage))
            .collect::<Result<_, _>>()?,
        None => gens.iter().flat_map(Word::generators).collect::<std::collections::BTreeSet<_>>().into_iter().collect(),
    };
    if let Some(g) = gens.iter().flat_map(Word::generators).find(|g| !alphabet.contains(g)) {
        return Err(usage(format!("`{g}` is not in the alphabet")));
    }
    let graph = stallings_fold(&gens);
    let mut members = Vec::new();
    for m in &a.members {
        let w = parse_words(m).map_err(usage)?;
        let [w] = <[Word; 1]>::try_from(w).map_err(|_| usage("--member takes a single word"))?;
        let r = graph.contains(&w);
        members.push(json!({
            "word": WordSyntax(&w).to_string(),
            "contained": r.contained,
            "in_basis": r.in_basis,
        }));
    }
    Ok(json!({
        "rank": graph.rank(),
        "index": graph.index(&alphabet),
        "basis": words_json(&graph.basis()),
        "graph": serde_json::to_value(&graph).unwrap(),
        "membership": members,
    }))
}

fn cmd_rep_search(a: &RepSearchArgs) -> Outcome {
    let (p, _) = a.group.presentation()?;
    let mut options = SearchOptions { limit: a.limit, same_conjugacy_class: a.same_class, ..SearchOptions::default() };
    if let Some(b) = a.budget {
        options.budget = b;
    }
    let found = search_homs(&p, a.dim, a.prime, options).map_err(domain)?;
    Ok(json!({
        "dimension": a.dim,
        "field": PrimeField::new(a.prime).map_err(usage)?.kind(),
        "count": found.representations.len(),
        "exhaustive": found.exhaustive,
        "restricted_to_conjugacy_class": found.restricted_to_conjugacy_class,
        "representations": serde_json::to_value(&found.representations).unwrap(),
    }))
}

fn field_of(rep: &RepInput) -> Result<(ExactField, Option<Value>), Failure> {
    let requested = rep.field.as_deref().map(ExactField::parse).transpose().map_err(usage)?;
    if rep.rep == "trivial" {
        return Ok((requested.unwrap_or(ExactField::Rationals), None));
    }
    let text = fs::read_to_string(&rep.rep).map_err(|e| usage(format!("{}: {e}", rep.rep)))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", rep.rep)))?;
    let declared: ExactField =
        serde_json::from_value(v["field"].clone()).map_err(|e| usage(format!("{}: bad field: {e}", rep.rep)))?;
    if let Some(r) = requested {
        if r != declared {
            return Err(usage(format!("--field {r} disagrees with the representation's field {declared}")));
        }
    }
    Ok((declared, Some(v)))
}

fn load_rep<F: Field>(field: F, json: &Option<Value>, p: &Presentation) -> Result<Representation<F>, Failure> {
    match json {
        None => Ok(trivial_rep(p, field)),
        Some(v) => representation_from_json(field, v).map_err(usage),
    }
}

fn wada_generic<F: Field>(field: F, a: &WadaArgs, json: &Option<Value>, bound: bool) -> Outcome {
    let (p, eps) = a.group.with_epsilon()?;
    let alpha = load_rep(field, json, &p)?;
    match wadakit::reps::verify(&p, &alpha) {
        Ok(true) => {}
        Ok(false) => return Err(domain("the representation does not satisfy the relators")),
        Err(e) => return Err(domain(e)),
    }
    let column = match &a.column {
        Some(name) => Some(Generator::new(name).map_err(usage)?),
        None => None,
    };
    let padded = p.padded_for_minors();
    let r = wada_invariant(&padded, &eps, &alpha, column.as_ref()).map_err(domain)?;
    if !bound {
        return Ok(serde_json::to_value(r.report()).unwrap());
    }
    let (genus, rank) = match (r.genus_bound(), r.rank_bound()) {
        (Ok(g), Ok(k)) => (g, k),
        _ => return Err(domain(WadaError::ZeroInvariant)),
    };
    Ok(json!({
        "degree": r.degree,
        "dimension": r.dimension,
        "field": r.field,
        "genus_lower_bound": genus,
        "splitting_rank_lower_bound": rank,
    }))
}

fn cmd_wada(a: &WadaArgs, bound: bool) -> Outcome {
    let (field, json) = field_of(&a.rep)?;
    match field {
        ExactField::Rationals => wada_generic(Rationals, a, &json, bound),
        ExactField::Prime { p } => wada_generic(PrimeField::new(p).map_err(usage)?, a, &json, bound),
    }
}

impl SplittingInput {
    fn load(&self) -> Result<SplittingData, Failure> {
        match (&self.fixture, &self.splitting) {
            (Some(name), _) => load_fixture(name)?
                .splitting
                .ok_or_else(|| usage(format!("fixture `{name}` has no splitting"))),
            (None, Some(s)) => {
                let text = if s.trim_start().starts_with('{') {
                    s.clone()
                } else {
                    fs::read_to_string(s).map_err(|e| usage(format!("{s}: {e}")))?
                };
                let v: Value = serde_json::from_str(&text).map_err(usage)?;
                SplittingData::from_json(&v).map_err(|e| match e {
                    HnnError::Json(_) | HnnError::Parse(_) => usage(e),
                    e => domain(e),
                })
            }
            (None, None) => Err(usage("one of --fixture or --splitting is required")),
        }
    }
}

fn cmd_hnn_present(a: &SplittingInput) -> Outcome {
    let s = a.load()?;
    let (p, eps) = hnn_presentation(&s).map_err(domain)?;
    Ok(json!({
        "splitting": s.to_json(),
        "presentation": presentation_json(&p),
        "epsilon": epsilon_json(&p, &eps),
    }))
}

fn cmd_hnn_amalgam(a: &AmalgamArgs) -> Outcome {
    let s = a.input.load()?;
    let p = amalgam_presentation(&s, a.from, a.to).map_err(domain)?;
    let ab = serde_json::to_value(p.abelianize()).unwrap();
    Ok(json!({
        "from": a.from,
        "to": a.to,
        "generator_count": p.generators().len(),
        "relator_count": p.relators().len(),
        "presentation": presentation_json(&p),
        "abelianization": ab,
    }))
}

fn cmd_hnn_induce(a: &InduceArgs) -> Outcome {
    let s = a.input.load()?;
    let i = induced_splitting(&s, a.n).map_err(domain)?;
    let (p, eps) = hnn_presentation(&i).map_err(domain)?;
    Ok(json!({
        "n": a.n,
        "splitting": i.to_json(),
        "presentation": presentation_json(&p),
        "epsilon": epsilon_json(&p, &eps),
    }))
}

fn check_one<F: Field>(s: &SplittingData, alpha: &Representation<F>) -> Outcome {
    let block = verify_fox_block_structure(s, alpha).map_err(domain)?;
    let degree = degree_bound_check(s, alpha).map_err(domain)?;
    if !degree.holds {
        return Err(domain(format!("degree {:?} exceeds bound {}", degree.degree, degree.bound)));
    }
    Ok(json!({
        "dimension": alpha.dimension(),
        "field": alpha.field().kind(),
        "block_structure": block,
        "degree_bound": degree,
    }))
}

fn check_generic<F: Field>(field: F, s: &SplittingData, json: &Option<Value>) -> Outcome {
    let (p, _) = hnn_presentation(s).map_err(domain)?;
    let alpha = load_rep(field, json, &p)?;
    check_one(s, &alpha)
}

fn cmd_hnn_check(a: &CheckArgs) -> Outcome {
    let s = a.input.load()?;
    let checks = if let Some(d) = a.search_dim {
        let (p, _) = hnn_presentation(&s).map_err(domain)?;
        let found = search_homs(&p, d, a.prime.unwrap(), SearchOptions::default()).map_err(domain)?;
        found.representations.iter().map(|alpha| check_one(&s, alpha)).collect::<Result<Vec<_>, _>>()?
    } else {
        let (field, json) = field_of(&a.rep)?;
        vec![match field {
            ExactField::Rationals => check_generic(Rationals, &s, &json)?,
            ExactField::Prime { p } => check_generic(PrimeField::new(p).map_err(usage)?, &s, &json)?,
        }]
    };
    Ok(json!({
        "monomorphism": s.status(),
        "subgroup_rank": s.subgroup_rank(),
        "checks": checks,
    }))
}

fn cmd_knot_from_pd(a: &PdArgs) -> Outcome {
    let text = read_arg(&a.pd)?;
    let pd = if text.trim_start().starts_with(['[', '{']) {
        let v: Value = serde_json::from_str(&text).map_err(usage)?;
        PDCode::from_json(&v)
    } else {
        PDCode::parse_text(&text)
    }
    .map_err(usage)?;
    let (p, eps) = wirtinger_from_pd(&pd).map_err(domain)?;
    let alpha = trivial_rep(&p, Rationals);
    let r = wada_invariant(&p.padded_for_minors(), &eps, &alpha, None).map_err(domain)?;
    Ok(json!({
        "pd": pd.to_string(),
        "presentation": presentation_json(&p),
        "epsilon": epsilon_json(&p, &eps),
        "alexander": r.q.display_normalized().to_string(),
    }))
}

fn cmd_fixture(a: &FixtureArgs) -> Outcome {
    match &a.name {
        None => Ok(json!(fixture_names())),
        Some(name) => Ok(load_fixture(name)?.to_json()),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Parse(g) => cmd_parse(g),
        Command::Abelianize(g) => cmd_abelianize(g),
        Command::Fox(g) => cmd_fox(g),
        Command::Fold(a) => cmd_fold(a),
        Command::RepSearch(a) => cmd_rep_search(a),
        Command::Wada(a) => cmd_wada(a, false),
        Command::Bound(a) => cmd_wada(a, true),
        Command::HnnPresent(a) => cmd_hnn_present(a),
        Command::HnnAmalgam(a) => cmd_hnn_amalgam(a),
        Command::HnnInduce(a) => cmd_hnn_induce(a),
        Command::HnnCheck(a) => cmd_hnn_check(a),
        Command::KnotFromPd(a) => cmd_knot_from_pd(a),
        Command::Fixture(a) => cmd_fixture(a),
    }
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(v: &Value) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).unwrap());
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
    match run(&cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            emit(&json!({ "error": { "kind": "usage", "message": msg } }));
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            emit(&json!({ "error": { "kind": "domain", "message": msg } }));
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
