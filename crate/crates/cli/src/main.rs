//! `orbifukaya`: JSON in, checks and JSON out.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 on usage
//! errors, 3 when a file cannot be read, parsed or written.

mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use orbifukaya::ainf::category::{graded_dims, materialize, AInf};
use orbifukaya::ainf::check::{check_relations, check_relations_exhaustive, CheckOptions};
use orbifukaya::ainf::deform::{deform, maurer_cartan_check};
use orbifukaya::ainf::hochschild::{describe, Hochschild};
use orbifukaya::json::{
    self, ActionJson, CategoryJson, CochainSourceJson, ComplexJson, HochschildJson, SourceJson, TwDocumentJson,
};
use orbifukaya::orbit::{orbifold_pipeline, OrbitCategory};
use orbifukaya::report::Check;
use orbifukaya::surface::{builders, classify_dissection, DissectionClass, PolygonComplex};
use orbifukaya::twisted::{hom_cohomology, minimal_model, TwCategory};
use orbifukaya::worked::worked_example;
use orbifukaya::ainf::category::AInfCategory;

use report::{Failure, Input, Report};

/// `println!` that stops quietly when stdout is closed.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "orbifukaya", version, about = "Exact A∞ categories of dissected graded orbifold surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write a JSON report of the run.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Suppress the human-readable summary.
    #[arg(long, global = true)]
    quiet: bool,
    /// Print the JSON Schema of the command's input and exit.
    #[arg(long, global = true)]
    schema: bool,
    /// Largest arity of structure maps to compute or check.
    #[arg(long, global = true)]
    max_arity: Option<usize>,
    /// Longest chain fed to the relation checker.
    #[arg(long, global = true)]
    max_chain: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Topology and grading checks of a polygon complex.
    Validate {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Classify a dissection.
    Classify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Build the A∞ category of a dissection.
    Build {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the relation checker on the result.
        #[arg(long)]
        check: bool,
    },
    /// Check the A∞ relations of a category, complex or quiver.
    CheckAinf {
        #[arg(long = "in", alias = "cat")]
        input: Option<PathBuf>,
    },
    /// Minimal model of a full subcategory by homotopy transfer.
    MinimalModel {
        #[arg(long = "in", alias = "cat")]
        input: Option<PathBuf>,
        /// Comma-separated object names; all objects by default.
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hochschild cohomology in one degree.
    Hochschild {
        #[arg(long = "in", alias = "algebra")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        degree: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deform a category by a degree-2 cochain and check Maurer–Cartan.
    Deform {
        #[arg(long = "in", aliases = ["cat", "algebra"])]
        input: Option<PathBuf>,
        /// Cochain or Hochschild document; the first HH² representative by
        /// default.
        #[arg(long)]
        cochain: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The orbit category of a ℤ₂ action.
    Orbit {
        #[arg(long = "in", alias = "cover")]
        input: Option<PathBuf>,
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The double-cover pipeline for Dₙ^×.
    Pipeline {
        #[arg(long)]
        n: usize,
        /// Position of β; `n` by default.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Regenerate a worked example and check its recorded facts, or write a
    /// fixture complex.
    Examples {
        k: Option<usize>,
        /// Fixture to write instead, e.g. `star:3`, `cylinder:4`,
        /// `generator:4:3`, `double-cover:2`, `double-cover-action:2`.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify twisted complexes and report their endomorphism cohomology.
    Tw {
        #[arg(long = "in", alias = "verify")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced.
struct Outcome {
    lines: Vec<String>,
    checks: Vec<Check>,
    result: Value,
}

impl Outcome {
    fn new() -> Self {
        Outcome { lines: Vec::new(), checks: Vec::new(), result: Value::Null }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn result<T: Serialize>(&mut self, v: &T) {
        self.result = serde_json::to_value(v).expect("results serialize");
    }
}

struct Ctx {
    inputs: Vec<Input>,
    max_arity: Option<usize>,
    max_chain: Option<usize>,
}

impl Ctx {
    fn read(&mut self, path: &Option<PathBuf>, flag: &str) -> Result<String, Failure> {
        let path = path.as_ref().ok_or_else(|| Failure::Usage(format!("missing --{}", flag)))?;
        let input = Input::read(path)?;
        let text = input.text.clone();
        self.inputs.push(input);
        Ok(text)
    }

    fn parse<T: for<'de> serde::Deserialize<'de>>(&mut self, path: &Option<PathBuf>, flag: &str) -> Result<T, Failure> {
        let text = self.read(path, flag)?;
        json::parse(&text).map_err(|e| Failure::Io(format!("{}: {}", path.as_ref().unwrap().display(), e)))
    }

    fn category(&mut self, path: &Option<PathBuf>) -> Result<AInfCategory, Failure> {
        let src: SourceJson = self.parse(path, "in")?;
        src.category().map_err(Failure::Domain)
    }

    fn complex(&mut self, path: &Option<PathBuf>) -> Result<PolygonComplex, Failure> {
        let c: ComplexJson = self.parse(path, "in")?;
        c.to_complex().map_err(|e| Failure::Io(e.to_string()))
    }
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    if let Some(p) = path {
        write_text(p, &json::to_string(value))?;
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{}\n", text)).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))
}

fn dims(d: &BTreeMap<i64, usize>) -> String {
    if d.is_empty() {
        return "0".into();
    }
    d.iter().map(|(k, v)| format!("{}@{}", v, k)).collect::<Vec<_>>().join(" + ")
}

fn schema_of(cmd: &Command) -> String {
    match cmd {
        Command::Validate { .. } | Command::Classify { .. } | Command::Build { .. } => json::schema::<ComplexJson>(),
        Command::Deform { .. } => json::schema::<CochainSourceJson>(),
        Command::Orbit { .. } => json::schema::<ActionJson>(),
        Command::Tw { .. } => json::schema::<TwDocumentJson>(),
        Command::Pipeline { .. } | Command::Examples { .. } => json::schema::<ComplexJson>(),
        _ => json::schema::<SourceJson>(),
    }
}

fn run(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome, Failure> {
    let mut o = Outcome::new();
    match cmd {
        Command::Validate { input } => {
            let c = ctx.complex(input)?;
            match c.validate() {
                Ok(t) => {
                    o.check("topology", true, format!("χ = {}, {} boundary components", t.euler_characteristic, t.boundary_components));
                    o.line(format!(
                        "χ = {}, boundary components = {}, stops = {}, orbifold points = {}, connected = {}",
                        t.euler_characteristic, t.boundary_components, t.boundary_stops, t.orbifold_points, t.connected
                    ));
                    let ph = c.check_poincare_hopf();
                    o.check("Poincaré–Hopf", ph.holds, format!("residuals {:?}", ph.residuals));
                    o.result(&serde_json::json!({ "topology": t, "poincare_hopf": ph }));
                }
                Err(e) => {
                    o.check("topology", false, e.to_string());
                    o.line(format!("invalid: {}", e));
                }
            }
        }
        Command::Classify { input } => {
            let c = ctx.complex(input)?;
            let cl = classify_dissection(&c);
            let verdict = match cl.class {
                DissectionClass::Admissible | DissectionClass::DG | DissectionClass::Formal => "Admissible",
                other => other.name(),
            };
            o.line(verdict);
            o.line(format!("class: {}", cl.class.name()));
            for d in &cl.diagnostics {
                o.line(format!("  {}", d));
            }
            o.check("buildable", cl.class != DissectionClass::Invalid, cl.class.name());
            o.result(&cl);
        }
        Command::Build { input, out, check } => {
            let c = ctx.complex(input)?;
            let f = orbifukaya::fukaya::build_fukaya(&c).map_err(Failure::Domain)?;
            let cat = &f.category;
            o.line(format!(
                "{}: {} objects, {} morphisms, arities {:?}",
                f.classification.class.name(),
                cat.objects().len(),
                cat.basis().len(),
                cat.arities()
            ));
            if *check {
                relation_check(&mut o, cat, ctx);
            }
            write_json(out, &CategoryJson::from_category(cat))?;
            o.result(&serde_json::json!({ "classification": f.classification, "origins": f.origins }));
        }
        Command::CheckAinf { input } => {
            let cat = ctx.category(input)?;
            relation_check(&mut o, &cat, ctx);
        }
        Command::MinimalModel { input, objects, out } => {
            let cat = ctx.category(input)?;
            let objs: Vec<usize> = if objects.is_empty() {
                (0..cat.objects().len()).collect()
            } else {
                objects
                    .iter()
                    .map(|n| cat.object_index(n).ok_or_else(|| Failure::Usage(format!("unknown object `{}`", n))))
                    .collect::<Result<_, _>>()?
            };
            let max_arity = ctx.max_arity.unwrap_or(4);
            let mm = minimal_model(&cat, &objs, max_arity);
            let h = &mm.category;
            for x in 0..h.objects().len() {
                for y in 0..h.objects().len() {
                    let d = h.graded_dims(x, y);
                    if !d.is_empty() {
                        o.line(format!("H({}, {}) = {}", h.objects()[x], h.objects()[y], dims(&d)));
                    }
                }
            }
            let higher: Vec<String> = h
                .sorted_entries()
                .into_iter()
                .filter(|(t, _)| t.len() > 2)
                .map(|(t, v)| format!("μ{}({}) = {}", t.len(), h.tuple_name(t), h.vector_name(v)))
                .collect();
            if higher.is_empty() {
                o.line(format!("no transferred higher products up to arity {}", max_arity));
            }
            for s in &higher {
                o.line(s.clone());
            }
            let rel = check_relations(h, CheckOptions::new(max_arity, ctx.max_chain.unwrap_or(max_arity + 1)));
            o.check("A∞ relations", rel.passed(), format!("{} chains", rel.chains_checked));
            write_json(out, &CategoryJson::from_category(h))?;
            o.result(&serde_json::json!({ "arities": h.arities(), "higher_products": higher }));
        }
        Command::Hochschild { input, degree, out } => {
            let cat = ctx.category(input)?;
            let hh = Hochschild::new(&cat).cohomology(*degree, ctx.max_arity.unwrap_or(4));
            o.line(format!("dim = {}", hh.dimension));
            if hh.truncated {
                o.line(format!("  (cochains of arity above {} not included)", hh.by_arity.len() - 1));
            }
            for f in &hh.representatives {
                for e in describe(&cat, f) {
                    let out: Vec<String> = e.output.iter().map(|(n, c)| format!("{}·{}", c, n)).collect();
                    o.line(format!("  ({}) ↦ {}", e.inputs.join(", "), out.join(" + ")));
                }
            }
            let doc = HochschildJson::from_cohomology(&cat, &hh);
            write_json(out, &doc)?;
            o.result(&doc);
        }
        Command::Deform { input, cochain, out } => {
            let cat = ctx.category(input)?;
            let mt = match cochain {
                Some(_) => {
                    let src: CochainSourceJson = ctx.parse(cochain, "cochain")?;
                    src.to_cochain(&cat).map_err(|e| Failure::Io(e.to_string()))?
                }
                None => {
                    let hh = Hochschild::new(&cat).cohomology(2, ctx.max_arity.unwrap_or(4));
                    hh.representatives
                        .first()
                        .cloned()
                        .ok_or_else(|| Failure::Domain(orbifukaya::Error::BadParameter("HH² vanishes".into())))?
                }
            };
            let mc = maurer_cartan_check(&cat, &mt);
            o.check("Maurer–Cartan", mc.holds, mc.witness(&cat).unwrap_or_else(|| "residual 0".into()));
            o.line(if mc.holds { "Maurer–Cartan holds" } else { "Maurer–Cartan fails" });
            let d = deform(&cat, &mt).map_err(Failure::Domain)?;
            relation_check(&mut o, &d, ctx);
            write_json(out, &CategoryJson::from_category(&d))?;
            o.result(&serde_json::json!({ "perturbation": describe(&cat, &mt) }));
        }
        Command::Orbit { input, action, out } => {
            let cat = ctx.category(input)?;
            let a: ActionJson = ctx.parse(action, "action")?;
            let g = a.to_action(&cat).map_err(|e| Failure::Io(e.to_string()))?;
            let valid = g.validate_table(&cat);
            o.check("action", valid.is_ok(), valid.as_ref().err().map(|e| e.to_string()).unwrap_or_else(|| "strict involution".into()));
            valid.map_err(Failure::Domain)?;
            let orbit = OrbitCategory::new(&cat, g).map_err(Failure::Domain)?;
            let mut ok = true;
            for x in 0..cat.objects().len() {
                for y in 0..cat.objects().len() {
                    let mut expect = graded_dims(&cat, x, y);
                    for (d, k) in graded_dims(&cat, x, orbit.action().act_object(y)) {
                        *expect.entry(d).or_insert(0) += k;
                    }
                    ok &= graded_dims(&orbit, x, y) == expect;
                }
            }
            o.check("hom dimensions", ok, "dim (A/G)(X,Y) = Σ_g dim A(X,gY)");
            let max_arity = ctx.max_arity.unwrap_or(cat.max_arity().max(2));
            let rel = check_relations_exhaustive(&orbit, CheckOptions::new(max_arity, ctx.max_chain.unwrap_or(max_arity + 1)));
            o.check("A∞ relations", rel.passed(), format!("{} chains", rel.chains_checked));
            let table = materialize(&orbit, max_arity);
            o.line(format!("orbit category: {} objects, {} morphisms", table.objects().len(), table.basis().len()));
            write_json(out, &CategoryJson::from_category(&table))?;
            o.result(&serde_json::json!({ "morphisms": table.basis().len(), "chains_checked": rel.chains_checked }));
        }
        Command::Pipeline { n, m } => {
            let m = m.unwrap_or(*n);
            let max_arity = ctx.max_arity.unwrap_or((m + 1).max(4));
            let r = orbifold_pipeline(*n, m, max_arity).map_err(|e| match e {
                orbifukaya::Error::BadParameter(s) => Failure::Usage(s),
                e => Failure::Domain(e),
            })?;
            o.line(format!("generator: {}", r.generator.join(" ⊕ ")));
            if r.higher_products.is_empty() {
                o.line("no higher products beyond μ₂");
            }
            for h in &r.higher_products {
                o.line(h.clone());
            }
            o.line(format!("scope: {}", r.scope));
            o.checks.extend(r.checks.iter().cloned());
            o.result(&r);
        }
        Command::Examples { k, fixture, out } => match (k, fixture) {
            (Some(k), None) => {
                if !(1..=6).contains(k) {
                    return Err(Failure::Usage(format!("examples are numbered 1 to 6, got {}", k)));
                }
                let r = worked_example(*k, ctx.max_arity.unwrap_or(5)).map_err(Failure::Domain)?;
                o.line(format!("example {}: {}", k, r.class.name()));
                o.line(r.summary.clone());
                for h in &r.higher_products {
                    o.line(format!("  {}", h));
                }
                o.checks.extend(r.checks.iter().cloned());
                if out.is_some() {
                    let c = builders::example_dissection(*k).map_err(Failure::Domain)?;
                    write_json(out, &ComplexJson::from_complex(&c))?;
                }
                o.result(&r);
            }
            (None, Some(name)) => {
                let text = fixture_json(name)?;
                match out {
                    Some(p) => write_text(p, &text)?,
                    None => say!("{}", text),
                }
                o.check("fixture", true, name.clone());
            }
            _ => return Err(Failure::Usage("give either an example number or --fixture".into())),
        },
        Command::Tw { input, out } => {
            let doc: TwDocumentJson = ctx.parse(input, "in")?;
            let base = doc.base.category().map_err(Failure::Domain)?;
            let mut complexes = Vec::new();
            for c in &doc.complexes {
                match c.to_complex(&base) {
                    Ok(x) => {
                        o.check(&format!("{}: Maurer–Cartan", c.name), true, format!("{} entries", x.len()));
                        complexes.push(x);
                    }
                    Err(e) => o.check(&format!("{}: Maurer–Cartan", c.name), false, e.to_string()),
                }
            }
            let tw = TwCategory::new(&base, complexes);
            let mut ends = BTreeMap::new();
            for x in 0..tw.objects().len() {
                let h = hom_cohomology(&tw, x, x);
                o.line(format!("H•End({}) = {}  basis {}", tw.objects()[x], dims(&h.dims), h.representatives.join(", ")));
                ends.insert(tw.objects()[x].clone(), h);
            }
            if out.is_some() {
                let table = materialize(&tw, ctx.max_arity.unwrap_or(3));
                write_json(out, &CategoryJson::from_category(&table))?;
            }
            o.result(&ends);
        }
    }
    Ok(o)
}

fn relation_check(o: &mut Outcome, cat: &AInfCategory, ctx: &Ctx) {
    let max_arity = ctx.max_arity.unwrap_or(cat.max_arity().max(2));
    let opts = CheckOptions::new(max_arity, ctx.max_chain.unwrap_or(max_arity + 2));
    let rel = check_relations(cat, opts);
    let detail = match rel.violations.first() {
        None => format!("{} chains up to length {}", rel.chains_checked, opts.max_chain),
        Some(v) => format!("{} violations, first on ({}) = {}", rel.violations.len(), v.chain.join(", "), v.value),
    };
    o.line(format!("A∞ relations: {}", if rel.passed() { "pass" } else { "FAIL" }));
    o.check("A∞ relations", rel.passed(), detail);
}

fn fixture_json(name: &str) -> Result<String, Failure> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> Result<usize, Failure> {
        parts
            .get(i)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("fixture `{}` needs a numeric parameter", name)))
    };
    let complex = |c: orbifukaya::Result<PolygonComplex>| -> Result<String, Failure> {
        Ok(json::to_string(&ComplexJson::from_complex(&c.map_err(|e| Failure::Usage(e.to_string()))?)))
    };
    match parts[0] {
        "star" => complex(builders::orbifold_disk_star(num(1)?)),
        "cylinder" => complex(builders::cylinder_one_stop(num(1)?)),
        "generator" => complex(builders::orbifold_disk_generator(num(1)?, num(2)?)),
        "gamma-prime" => complex(builders::orbifold_disk_gamma_prime(num(1)?)),
        "double-cover" => complex(builders::double_cover_disk(num(1)?)),
        "annulus" => complex(builders::orbifold_annulus_figure()),
        "annulus-right" => complex(builders::orbifold_annulus_figure_right()),
        "example" => complex(builders::example_dissection(num(1)?)),
        "double-cover-action" => {
            let layout = builders::double_cover_layout(num(1)?).map_err(|e| Failure::Usage(e.to_string()))?;
            let f = orbifukaya::fukaya::build_fukaya(&layout.complex).map_err(Failure::Domain)?;
            let g = orbifukaya::orbit::rotation_action(&layout, &f, 180.0).map_err(Failure::Domain)?;
            Ok(json::to_string(&ActionJson::from_action(&f.category, &g)))
        }
        _ => Err(Failure::Usage(format!("unknown fixture `{}`", name))),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.schema {
        say!("{}", schema_of(&cli.command));
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let mut ctx = Ctx { inputs: Vec::new(), max_arity: cli.max_arity, max_chain: cli.max_chain };
    let outcome = run(&cli.command, &mut ctx);
    let (outcome, code) = match outcome {
        Ok(o) => {
            let code = if o.checks.iter().all(|c| c.passed) { 0 } else { 1 };
            (o, code)
        }
        Err(Failure::Domain(e)) => {
            let mut o = Outcome::new();
            o.check("run", false, e.to_string());
            o.line(format!("error: {}", e));
            (o, 1)
        }
        Err(f) => {
            eprintln!("orbifukaya: {}", f);
            return ExitCode::from(f.code());
        }
    };
    if !cli.quiet {
        for l in &outcome.lines {
            say!("{}", l);
        }
        for c in outcome.checks.iter().filter(|c| !c.passed) {
            say!("FAIL {}: {}", c.name, c.detail);
        }
    }
    if let Some(path) = &cli.report {
        let report = Report::new(&argv[1..], &ctx.inputs, outcome.checks, outcome.result, start.elapsed());
        if let Err(f) = write_text(path, &json::to_string(&report)) {
            eprintln!("orbifukaya: {}", f);
            return ExitCode::from(f.code());
        }
    }
    ExitCode::from(code)
}
