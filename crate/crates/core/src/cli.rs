//! Command-line driver.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cdga::{is_homotopic_to_identity, DgaMorphism, FreeCdga, HomotopyVerdict, ModuleView};
use crate::derivation::aq_cohomology_der;
use crate::dsl::{load, Model};
use crate::error::{Error, Result};
use crate::graded::DegreeWindow;
use crate::harrison::aq_cohomology_harrison;
use crate::mapping::{
    catalog_entries, haut_lie_algebra, mapping_space_homotopy, null_component_formula, pi_rational, space_catalog,
    trivial_map, SpaceModel,
};
use crate::report::{dims_answer, emit, lie_answer, Certification, Format, ResultRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "aqcdga", version, about = "André–Quillen cohomology of CDGAs over ℚ")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Der,
    Harrison,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a presentation file and report d² = 0 and minimality.
    Validate { file: String },
    /// Cohomology of an algebra on a degree window.
    Cohomology {
        input: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// André–Quillen cohomology H^*_AQ(A, M).
    Aq(AqArgs),
    /// Rational homotopy of a space, or of a mapping space with `--map`.
    Pi {
        input: String,
        #[arg(long)]
        n: i32,
        #[arg(long)]
        algebra: Option<String>,
        /// A morphism name from the file, or `trivial`.
        #[arg(long)]
        map: Option<String>,
        /// Domain space `X` of `F(X, Y)` for `--map trivial` (default: a point).
        #[arg(long)]
        space: Option<String>,
    },
    /// The Lie algebra H⁰_AQ(A, A) of the self-equivalence group.
    Haut {
        input: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        truncate: Option<i32>,
    },
    /// Decide whether an endomorphism is homotopic to the identity.
    HomotopicToId {
        file: String,
        #[arg(long)]
        morphism: String,
    },
    /// Catalog of standard models.
    Catalog {
        #[arg(value_parser = ["list"])]
        action: String,
    },
}

#[derive(Debug, Args)]
pub struct AqArgs {
    /// Presentation file or `catalog:NAME`.
    pub file: String,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub morphism: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, value_enum, default_value_t = Route::Der)]
    pub route: Route,
    /// Cut the coefficient module down to degrees `≤ top`.
    #[arg(long)]
    pub top: Option<i32>,
    #[arg(long)]
    pub length_bound: Option<usize>,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotMinimal(_)
        | Error::NotSimplyConnected(_)
        | Error::UnboundedModule
        | Error::HypothesisViolated(_)
        | Error::NotNilpotent { .. }
        | Error::NotAnAutomorphism(_) => EXIT_REFUSED,
        Error::RouteDisagreement { .. } => EXIT_DISAGREEMENT,
        _ => EXIT_INPUT,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok((mut record, code)) => {
            record.timing_ms = start.elapsed().as_millis() as u64;
            let stderr = if code == EXIT_OK { String::new() } else { refusal_note(&record) };
            Outcome { code, stdout: emit(&record, format), stderr }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn refusal_note(r: &ResultRecord) -> String {
    if r.diff.is_some() {
        "error: the two routes disagree on a certified degree\n".into()
    } else {
        format!("error: degrees {:?} are not certified\n", r.certification.uncertified_degrees)
    }
}

fn read_model(path: &str) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Semantic {
        line: 0,
        column: 0,
        message: format!("cannot read {path}: {e}"),
    })?;
    load(&text)
}

fn pick_algebra(model: &Model, name: Option<&str>) -> Result<FreeCdga> {
    match name {
        Some(n) => model.algebra(n),
        None => match model.algebras.as_slice() {
            [only] => Ok(only.clone()),
            _ => Err(Error::Semantic {
                line: 0,
                column: 0,
                message: "several algebras are defined; pass --algebra".into(),
            }),
        },
    }
}

/// `catalog:NAME` or a file holding an algebra.
fn space(input: &str, algebra: Option<&str>) -> Result<(SpaceModel, Option<Model>)> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok((space_catalog(name)?, None));
    }
    let model = read_model(input)?;
    let a = pick_algebra(&model, algebra)?;
    Ok((SpaceModel::from_model(a, input)?, Some(model)))
}

pub fn parse_window(s: &str) -> Result<DegreeWindow> {
    let bad = |reason: &str| Error::InvalidWindow { lo: 0, hi: 0, reason: format!("`{s}`: {reason}") };
    let (lo, hi) = s.split_once(':').ok_or_else(|| bad("expected lo:hi"))?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad("bad lower bound"))?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad("bad upper bound"))?;
    let w = DegreeWindow::new(lo, hi)?;
    check_cap(w)?;
    Ok(w)
}

/// `AQ_MAX_WINDOW` caps the number of degrees in any window.
fn check_cap(w: DegreeWindow) -> Result<()> {
    if let Some(cap) = std::env::var("AQ_MAX_WINDOW").ok().and_then(|v| v.trim().parse::<i64>().ok()) {
        let width = (w.hi - w.lo + 1) as i64;
        if width > cap {
            return Err(Error::HypothesisViolated(format!(
                "window {}:{} has {width} degrees; AQ_MAX_WINDOW is {cap}",
                w.lo, w.hi
            )));
        }
    }
    Ok(())
}

fn certified_all(w: DegreeWindow) -> Certification {
    Certification { window: Some(w), certified_degrees: w.degrees().collect(), ..Default::default() }
}

fn execute(cmd: &Command) -> Result<(ResultRecord, i32)> {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Cohomology { input, algebra, window } => {
            let (s, _) = space_or_any(input, algebra.as_deref())?;
            let w = parse_window(window)?;
            let h = s.cohomology(w)?;
            let q = json!({"command": "cohomology", "input": input, "algebra": s.name(), "window": window});
            Ok((ResultRecord::new(q, dims_answer(&h.dims), certified_all(w), &["complex"]), EXIT_OK))
        }
        Command::Aq(args) => aq(args),
        Command::Pi { input, n, algebra, map, space: x } => {
            pi(input, *n, algebra.as_deref(), map.as_deref(), x.as_deref())
        }
        Command::Haut { input, algebra, truncate } => {
            let (x, _) = space(input, algebra.as_deref())?;
            let r = haut_lie_algebra(&x, *truncate)?;
            let mut answer = lie_answer(&r.lie);
            answer["cutoff"] = json!(r.cutoff);
            let mut cert = certified_all(DegreeWindow::new(0, 0)?);
            if let Some(w) = r.hypothesis_window {
                cert.notes.push(format!("H^k vanishes for {}..={}, so truncation preserves H0", w.lo, w.hi));
            }
            let q = json!({"command": "haut", "input": input, "truncate": truncate});
            Ok((ResultRecord::new(q, answer, cert, &["der"]), EXIT_OK))
        }
        Command::HomotopicToId { file, morphism } => {
            let model = read_model(file)?;
            let f = model.morphism(morphism)?;
            let answer = match is_homotopic_to_identity(&f)? {
                HomotopyVerdict::Witness(g) => json!({"homotopic": true, "witness": g.format()}),
                HomotopyVerdict::No(reason) => json!({"homotopic": false, "reason": reason}),
            };
            let q = json!({"command": "homotopic-to-id", "input": file, "morphism": morphism});
            Ok((ResultRecord::new(q, answer, Certification::default(), &["exp"]), EXIT_OK))
        }
        Command::Catalog { .. } => {
            let entries: serde_json::Map<String, Value> =
                catalog_entries().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let q = json!({"command": "catalog list"});
            Ok((ResultRecord::new(q, json!({ "entries": entries }), Certification::default(), &[]), EXIT_OK))
        }
    }
}

/// Like [`space`] but accepts non-minimal algebras.
fn space_or_any(input: &str, algebra: Option<&str>) -> Result<(FreeCdga, Option<Model>)> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok((space_catalog(name)?.model, None));
    }
    let model = read_model(input)?;
    Ok((pick_algebra(&model, algebra)?, Some(model)))
}

fn validate(file: &str) -> Result<(ResultRecord, i32)> {
    let model = read_model(file)?;
    let mut algebras = serde_json::Map::new();
    for a in &model.algebras {
        algebras.insert(
            a.name().to_string(),
            json!({
                "generators": a.gens().len(),
                "d_squared_zero": a.check_d_squared().is_ok(),
                "minimal": a.is_minimal(),
                "simply_connected": a.is_simply_connected(),
            }),
        );
    }
    let morphisms: serde_json::Map<String, Value> = model
        .morphisms
        .iter()
        .map(|(n, f)| (n.clone(), json!(format!("{} -> {}", f.source().name(), f.target().name()))))
        .collect();
    let q = json!({"command": "validate", "input": file});
    let answer = json!({"algebras": algebras, "morphisms": morphisms});
    Ok((ResultRecord::new(q, answer, Certification::default(), &[]), EXIT_OK))
}

fn module_for(model: &Model, args: &AqArgs) -> Result<ModuleView> {
    let phi = match &args.morphism {
        Some(name) => {
            let f = model.morphism(name)?;
            if let Some(s) = &args.source {
                if f.source().name() != s {
                    return Err(Error::MismatchedGenerators);
                }
            }
            f
        }
        None => {
            let src = pick_algebra(model, args.source.as_deref())?;
            match args.target.as_deref().unwrap_or("Q") {
                "Q" => DgaMorphism::augmentation(&src),
                t if t == src.name() => DgaMorphism::identity(&src),
                t => {
                    return Err(Error::Semantic {
                        line: 0,
                        column: 0,
                        message: format!("pass --morphism to make {t} a module over {}", src.name()),
                    })
                }
            }
        }
    };
    let m = ModuleView::new(phi);
    Ok(match args.top {
        Some(t) => m.truncated(t),
        None => m,
    })
}

fn aq(args: &AqArgs) -> Result<(ResultRecord, i32)> {
    let model = match args.file.strip_prefix("catalog:") {
        Some(name) => Model { algebras: vec![space_catalog(name)?.model], morphisms: Vec::new() },
        None => read_model(&args.file)?,
    };
    let module = module_for(&model, args)?;
    let w = parse_window(&args.window)?;
    let q = json!({
        "command": "aq",
        "input": args.file,
        "source": module.source().name(),
        "target": module.label(),
        "window": args.window,
        "route": format!("{:?}", args.route).to_lowercase(),
    });
    let der = match args.route {
        Route::Harrison => None,
        _ => Some(aq_cohomology_der(&module, w)?),
    };
    let harrison = match args.route {
        Route::Der => None,
        _ => {
            let mut h = aq_cohomology_harrison(&module, w, args.length_bound)?;
            if args.inject_fault {
                if let Some(&t) = h.certified_degrees.first() {
                    *h.dims.entry(t).or_default() += 1;
                }
            }
            Some(h)
        }
    };
    let mut cert = Certification { window: Some(w), ..Default::default() };
    let (dims, routes): (BTreeMap<i32, usize>, Vec<&str>) = match (&der, &harrison) {
        (Some(d), None) => {
            cert.certified_degrees = w.degrees().collect();
            (d.dims.clone(), vec!["der"])
        }
        (_, Some(h)) => {
            cert.length_bound = Some(h.length_bound);
            cert.certified_degrees = h.certified_degrees.clone();
            cert.uncertified_degrees = w.degrees().filter(|t| !h.is_certified(*t)).collect();
            let dims = h.dims.iter().filter(|(t, _)| h.is_certified(**t)).map(|(t, d)| (*t, *d)).collect();
            (dims, if der.is_some() { vec!["der", "harrison"] } else { vec!["harrison"] })
        }
        (None, None) => unreachable!("at least one route runs"),
    };
    let mut record = ResultRecord::new(q, dims_answer(&dims), cert, &routes);
    if let (Some(d), Some(h)) = (&der, &harrison) {
        let bad: Vec<i32> = h.certified_degrees.iter().copied().filter(|t| d.dim(*t) != h.dim(*t)).collect();
        if !bad.is_empty() {
            record.answer = json!({
                "der": dims_answer(&d.dims)["dims"],
                "harrison": dims_answer(&h.dims)["dims"],
            });
            let diff: serde_json::Map<String, Value> = bad
                .iter()
                .map(|t| (t.to_string(), json!(format!("der {} vs harrison {}", d.dim(*t), h.dim(*t)))))
                .collect();
            record.diff = Some(Value::Object(diff));
            return Ok((record, EXIT_DISAGREEMENT));
        }
    }
    let code = if record.certification.uncertified_degrees.is_empty() { EXIT_OK } else { EXIT_REFUSED };
    Ok((record, code))
}

fn pi(input: &str, n: i32, algebra: Option<&str>, map: Option<&str>, x: Option<&str>) -> Result<(ResultRecord, i32)> {
    let w = DegreeWindow::new(-n, -n)?;
    check_cap(w)?;
    let mut cert = certified_all(w);
    let q = json!({"command": "pi", "input": input, "n": n, "map": map, "space": x});
    match map {
        None => {
            let (y, _) = space(input, algebra)?;
            let r = pi_rational(&y, n)?;
            let answer = json!({"space": y.name, "n": n, "dimension": r.dim, "generator_count": r.generator_count});
            Ok((ResultRecord::new(q, answer, cert, &["der", "indecomposables"]), EXIT_OK))
        }
        Some("trivial") => {
            let (y, file) = space(input, algebra)?;
            let xs = match x {
                None => space_catalog("point")?,
                Some(s) if s.starts_with("catalog:") => space(s, None)?.0,
                Some(s) => {
                    let m = file.ok_or_else(|| Error::UnknownCatalog(s.to_string()))?;
                    SpaceModel::from_model(m.algebra(s)?, input)?
                }
            };
            let r = mapping_space_homotopy(&y, &xs, &trivial_map(&y, &xs), n)?;
            let formula = null_component_formula(&y, &xs, n)?;
            if formula != r.dim {
                return Err(Error::RouteDisagreement { degree: -n, der: r.dim, harrison: formula });
            }
            cert.notes.extend(r.caveat.clone());
            let answer = json!({
                "mapping_space": format!("F({}, {})", xs.name, y.name),
                "basepoint": "trivial",
                "n": n,
                "dimension": r.dim,
                "null_component_formula": formula,
                "representatives": r.representatives,
            });
            Ok((ResultRecord::new(q, answer, cert, &["der", "null-component"]), EXIT_OK))
        }
        Some(name) => {
            if input.starts_with("catalog:") {
                return Err(Error::UnknownCatalog(format!("morphism {name} needs a presentation file")));
            }
            let model = read_model(input)?;
            let f = model.morphism(name)?;
            let y = SpaceModel::from_model(f.source().clone(), input)?;
            let xs = SpaceModel { name: f.target().name().into(), model: f.target().clone(), provenance: input.into() };
            let r = mapping_space_homotopy(&y, &xs, &f, n)?;
            cert.notes.extend(r.caveat.clone());
            let answer = json!({
                "mapping_space": format!("F({}, {})", xs.name, y.name),
                "basepoint": name,
                "n": n,
                "dimension": r.dim,
                "representatives": r.representatives,
            });
            Ok((ResultRecord::new(q, answer, cert, &["der"]), EXIT_OK))
        }
    }
}
