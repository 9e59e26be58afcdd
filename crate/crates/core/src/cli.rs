//! The `tensorrep` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors. `TENSORREP_TOL` sets the default tolerance of the
//! verification commands; `--tol` overrides it.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::anisorep::{
    constraint_residuals, equivariance_residual, full_constraint_residual, representation_spec,
    stress_equivariance_residual, Model, ModelKind, Residual,
};
use crate::isotropic::{functional_basis, generator_set, generators_json, invariants_json};
use crate::pointgroups::{group, GroupId};
use crate::structural::{
    characterized_group, half_step_rotation, o2_grid, stabilizer_matches, structural_set,
    zheng_frame, zheng_tensor_in_frame, Invariance, StructuralElement, StructuralPayload,
    StructuralSet, DEFAULT_GRID,
};
use crate::tensor2d::{OrthKind, OrthTransform, SkewTensor2, SymTensor2, Transformable, Vector2};
use crate::Error;

pub const TOL_ENV: &str = "TENSORREP_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "tensorrep", version, about = "2D point groups, structural tensors and anisotropic tensor functions")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Point groups
    #[command(subcommand)]
    Pg(PgCmd),
    /// Structural tensor sets
    #[command(subcommand)]
    St(StCmd),
    /// Per-group representations
    #[command(subcommand)]
    Rep(RepCmd),
    /// Isotropic bases and generators
    #[command(subcommand)]
    Iso(IsoCmd),
    /// Model files
    #[command(subcommand)]
    Model(ModelCmd),
}

#[derive(Subcommand, Debug)]
enum PgCmd {
    /// List the twelve groups
    List,
    /// Enumerate the elements of a finite group
    Elements { group: GroupId },
    /// Cayley table of a finite group
    Table { group: GroupId },
}

#[derive(Subcommand, Debug)]
enum StCmd {
    /// Show the structural set of a group
    Show { group: GroupId },
    /// Scan O(2) for the stabilizer of the set and compare it to the group
    Verify {
        group: GroupId,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Zheng's structural tensor P_n
    Zheng {
        n: usize,
        /// Check invariance over a group and non-invariance off it
        #[arg(long)]
        check: Option<GroupId>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Invariants, generators, slot actions and relations
    Spec { group: GroupId },
}

#[derive(clap::Args, Debug)]
struct Counts {
    #[arg(long = "vec", default_value_t = 0)]
    vectors: usize,
    #[arg(long = "sym", default_value_t = 0)]
    syms: usize,
    #[arg(long = "skew", default_value_t = 0)]
    skews: usize,
}

#[derive(Subcommand, Debug)]
enum IsoCmd {
    /// Functional basis
    Basis(Counts),
    /// Tensor generators
    Gens(Counts),
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    /// Constraint and equivariance residuals
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate psi(C) or T(C)
    Eval {
        file: PathBuf,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
    },
    /// Stress 2 dpsi/dC of a scalar model
    Stress {
        file: PathBuf,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
    },
}

struct Outcome {
    code: i32,
    text: String,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { code: 0, text }
    }

    fn verdict(pass: bool, text: String) -> Self {
        Outcome { code: if pass { 0 } else { 1 }, text }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn default_tol(fallback: f64) -> Result<f64, Error> {
    match std::env::var(TOL_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| usage(format!("{TOL_ENV} must be a positive number, got `{v}`"))),
        Err(_) => Ok(fallback),
    }
}

fn tolerance(flag: Option<f64>, fallback: f64) -> Result<f64, Error> {
    match flag {
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(usage(format!("--tol must be positive, got {t}"))),
        None => default_tol(fallback),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn element_json(q: &OrthTransform) -> Value {
    json!({
        "name": q.name(),
        "kind": match q.kind { OrthKind::Rotation => "rotation", OrthKind::Reflection => "reflection" },
        "angle": q.angle,
        "matrix": q.matrix().0,
    })
}

fn sym_json(t: &SymTensor2) -> Value {
    json!({ "c11": t.c11, "c22": t.c22, "c12": t.c12 })
}

fn sym_text(t: &SymTensor2) -> String {
    format!("[[{}, {}], [{}, {}]]", t.c11, t.c12, t.c12, t.c22)
}

fn residual_json(r: &Residual) -> Value {
    json!({
        "max": r.max,
        "element": r.element.map(|q| q.name()),
        "C": r.c.map(|c| [c.c11, c.c22, c.c12]),
    })
}

fn witness(r: &Residual) -> String {
    let mut out = String::new();
    if let Some(q) = r.element {
        out += &format!(" at Q = {}", q.name());
    }
    if let Some(c) = r.c {
        out += &format!("{} C = ({}, {}, {})", if r.element.is_some() { "," } else { " at" }, c.c11, c.c22, c.c12);
    }
    out
}

fn pg(cmd: PgCmd, format: Format) -> Result<Outcome, Error> {
    match cmd {
        PgCmd::List => {
            if format == Format::Json {
                let rows: Vec<Value> = GroupId::ALL
                    .iter()
                    .map(|id| {
                        json!({
                            "group": id.as_str(),
                            "order": id.order(),
                            "continuous": id.is_continuous(),
                            "generators": id.generators().iter().map(|q| q.name()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                return Ok(Outcome::ok(json_text(&Value::Array(rows))));
            }
            let mut out = String::new();
            for id in GroupId::ALL {
                let order = id.order().map_or("continuous".to_string(), |n| format!("order {n}"));
                let gens: Vec<String> = id.generators().iter().map(|q| q.name()).collect();
                let gens = if gens.is_empty() { "-".to_string() } else { gens.join(", ") };
                out += &format!("{:<7} {:<11} generators: {gens}\n", id.as_str(), order);
            }
            Ok(Outcome::ok(out))
        }
        PgCmd::Elements { group: id } => {
            let elements = group(id).enumerate_elements()?;
            if format == Format::Json {
                let rows: Vec<Value> = elements.iter().map(element_json).collect();
                return Ok(Outcome::ok(json_text(&Value::Array(rows))));
            }
            let mut out = String::new();
            for q in &elements {
                let m = q.matrix().0;
                let kind = match q.kind {
                    OrthKind::Rotation => "rotation",
                    OrthKind::Reflection => "reflection",
                };
                out += &format!(
                    "{:<6} {:<10} {:>7.2} deg  [[{:.6}, {:.6}], [{:.6}, {:.6}]]\n",
                    q.name(),
                    kind,
                    q.angle.to_degrees(),
                    m[0][0] + 0.0,
                    m[0][1] + 0.0,
                    m[1][0] + 0.0,
                    m[1][1] + 0.0
                );
            }
            Ok(Outcome::ok(out))
        }
        PgCmd::Table { group: id } => {
            let table = group(id).cayley_table()?;
            let text = match format {
                Format::Json => table.to_json()? + "\n",
                Format::Csv => table.to_csv()?,
                Format::Text => {
                    let w = table.names.iter().map(|n| n.len()).max().unwrap_or(1);
                    let mut out = format!("{:w$} |", "");
                    for n in &table.names {
                        out += &format!(" {n:>w$}");
                    }
                    out += "\n";
                    for (i, row) in table.entries.iter().enumerate() {
                        out += &format!("{:>w$} |", table.names[i]);
                        for &k in row {
                            out += &format!(" {:>w$}", table.names[k]);
                        }
                        out += "\n";
                    }
                    out
                }
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn payload_text(p: &StructuralPayload) -> String {
    match p {
        StructuralPayload::Vector(v) => format!("({}, {})", v.x, v.y),
        StructuralPayload::Symmetric(s) => sym_text(s),
        StructuralPayload::Skew(w) => format!("[[0, {}], [{}, 0]]", w.w, -w.w),
        StructuralPayload::Tensor(t) => format!("order {} {:?}", t.order(), t.components()),
    }
}

fn set_text(s: &StructuralSet) -> String {
    let mode = match s.invariance {
        Invariance::AsSet => "invariant as a set",
        Invariance::Individual => "each element invariant",
    };
    let mut out = format!("{} structural set ({mode}):\n", s.group);
    for e in &s.elements {
        out += &format!("  {:<4} {:?}: {}\n", e.label, e.kind(), payload_text(&e.payload));
    }
    out
}

fn sampled_note(grid: usize) -> String {
    format!(
        "note: sampled scan over {grid} rotations and {grid} reflections plus exact multiples of pi/12; \
         a surrogate for all of O(2)\n"
    )
}

fn st(cmd: StCmd, format: Format) -> Result<Outcome, Error> {
    match cmd {
        StCmd::Show { group: id } => {
            let s = structural_set(id);
            Ok(Outcome::ok(match format {
                Format::Json => s.to_json()? + "\n",
                _ => set_text(&s),
            }))
        }
        StCmd::Verify { group: id, grid, tol } => {
            let tol = tolerance(tol, 1e-9)?;
            let s = structural_set(id);
            let stab = characterized_group(&s, grid, tol)?;
            let ok = stabilizer_matches(id, &stab, grid)?;
            if format == Format::Json {
                let v = json!({
                    "group": id.as_str(),
                    "grid": grid,
                    "tol": tol,
                    "stabilizer_size": stab.len(),
                    "stabilizer": if id.is_continuous() { Value::Null } else {
                        Value::Array(stab.iter().map(|q| Value::String(q.name())).collect())
                    },
                    "pass": ok,
                    "sampled": true,
                });
                return Ok(Outcome::verdict(ok, json_text(&v)));
            }
            let mut out = if ok {
                let what = if id.is_continuous() { "sampled elements" } else { "elements" };
                format!("stabilizer = {id} ({} {what}): PASS\n", stab.len())
            } else if stab.len() <= 24 {
                let names: Vec<String> = stab.iter().map(|q| q.name()).collect();
                format!("stabilizer = {{{}}} ({} elements): FAIL, expected {id}\n", names.join(", "), stab.len())
            } else {
                format!("stabilizer has {} elements: FAIL, expected {id}\n", stab.len())
            };
            out += &sampled_note(grid);
            Ok(Outcome::verdict(ok, out))
        }
        StCmd::Zheng { n, check, tol } => zheng(n, check, tol, format),
    }
}

fn zheng(n: usize, check: Option<GroupId>, tol: Option<f64>, format: Format) -> Result<Outcome, Error> {
    let a1 = check.map_or(Vector2::I, zheng_frame);
    let p = zheng_tensor_in_frame(n, &a1)?;
    let frame = format!("a1 = ({}, {})", a1.x, a1.y);
    let Some(id) = check else {
        return Ok(Outcome::ok(match format {
            Format::Json => json_text(&json!({ "n": n, "frame": [a1.x, a1.y], "components": p.components() })),
            _ => format!("P{n} ({frame}), {} components:\n{:?}\n", p.components().len(), p.components()),
        }));
    };
    let tol = tolerance(tol, 1e-12)?;
    let mut elements = vec![StructuralElement::new(format!("P{n}"), StructuralPayload::Tensor(p.clone()))];
    if matches!(id, GroupId::C2 | GroupId::C3 | GroupId::C4 | GroupId::C6 | GroupId::Cinf) {
        elements.push(StructuralElement::new("eps", StructuralPayload::Skew(SkewTensor2::EPS)));
    }
    let set = StructuralSet { group: id, elements, invariance: Invariance::Individual };
    let g = group(id);
    let members: Vec<OrthTransform> = if id.is_continuous() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
        g.sample_elements(64, &mut rng)
    } else {
        g.elements.clone()
    };
    let deviation = |q: &OrthTransform| {
        set.elements
            .iter()
            .map(|e| e.payload.transformed(q).distance(&e.payload))
            .fold(0.0, f64::max)
    };
    let member_dev = members.iter().map(deviation).fold(0.0, f64::max);
    let grid = o2_grid(720)?;
    let outsiders: Vec<&OrthTransform> = grid.iter().filter(|q| !g.contains(q, 1e-9)).collect();
    let outsider_dev = outsiders.iter().map(|q| deviation(q)).fold(f64::INFINITY, f64::min);
    let half = half_step_rotation(id).map(|q| (q, deviation(&q)));
    let members_ok = member_dev <= tol;
    let outsiders_ok = outsiders.is_empty() || outsider_dev > tol;
    let half_ok = half.is_none_or(|(_, d)| d >= 0.1);
    let ok = members_ok && outsiders_ok && half_ok;
    let labels: Vec<&str> = set.labels();
    if format == Format::Json {
        let v = json!({
            "n": n,
            "frame": [a1.x, a1.y],
            "group": id.as_str(),
            "set": labels,
            "member_max_deviation": member_dev,
            "outsiders": outsiders.len(),
            "outsider_min_deviation": if outsiders.is_empty() { Value::Null } else { json!(outsider_dev) },
            "half_step": half.map(|(q, d)| json!({ "element": q.name(), "deviation": d })),
            "pass": ok,
        });
        return Ok(Outcome::verdict(ok, json_text(&v)));
    }
    let mut out = format!("P{n} in frame {frame}; set {{{}}} checked against {id}\n", labels.join(", "));
    let sampled = if id.is_continuous() { " sampled" } else { "" };
    out += &format!(
        "members: {}{sampled} elements, max deviation {member_dev:.3e}: {}\n",
        members.len(),
        pass(members_ok)
    );
    if outsiders.is_empty() {
        out += "non-members: none on the grid\n";
    } else {
        out += &format!(
            "non-members: {} grid elements, min deviation {outsider_dev:.3e}: {}\n",
            outsiders.len(),
            pass(outsiders_ok)
        );
    }
    if let Some((q, d)) = half {
        out += &format!("half step {}: deviation {d:.3e}: {}\n", q.name(), pass(half_ok));
    }
    out += &format!("result: {}\n", pass(ok));
    Ok(Outcome::verdict(ok, out))
}

fn rep(cmd: RepCmd, format: Format) -> Result<Outcome, Error> {
    let RepCmd::Spec { group: id } = cmd;
    let spec = representation_spec(id);
    Ok(Outcome::ok(match format {
        Format::Json => spec.to_json()? + "\n",
        _ => spec.to_text(),
    }))
}

fn iso(cmd: IsoCmd, format: Format) -> Result<Outcome, Error> {
    let text = match cmd {
        IsoCmd::Basis(c) => {
            let d = functional_basis(c.vectors, c.syms, c.skews);
            match format {
                Format::Json => invariants_json(&d)? + "\n",
                _ => d.iter().map(|x| format!("{x}\n")).collect(),
            }
        }
        IsoCmd::Gens(c) => {
            let d = generator_set(c.vectors, c.syms, c.skews);
            match format {
                Format::Json => generators_json(&d)? + "\n",
                _ => d.iter().map(|x| format!("{x}\n")).collect(),
            }
        }
    };
    Ok(Outcome::ok(text))
}

fn parse_c(text: &str) -> Result<SymTensor2, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let vals: Option<Vec<f64>> = parts.iter().map(|p| p.parse::<f64>().ok().filter(|x| x.is_finite())).collect();
    match vals.as_deref() {
        Some([c11, c22, c12]) => Ok(SymTensor2::new(*c11, *c22, *c12)),
        _ => Err(usage(format!("--C expects c11,c22,c12, got `{text}`"))),
    }
}

fn load_model(path: &PathBuf) -> Result<Model, Error> {
    Model::load(path)
}

/// Errors raised while evaluating a model during checks count as failures.
enum CheckError {
    Input(Error),
    Eval(Error),
}

fn model_check(path: PathBuf, samples: usize, seed: u64, tol: Option<f64>, format: Format) -> Result<Outcome, CheckError> {
    let tol = tolerance(tol, 1e-9).map_err(CheckError::Input)?;
    if samples == 0 {
        return Err(CheckError::Input(usage("--samples must be at least 1")));
    }
    let m = load_model(&path).map_err(CheckError::Input)?;
    let id = m.group();
    let relations = constraint_residuals(&m, samples, seed).map_err(CheckError::Eval)?;
    let full = full_constraint_residual(&m, samples, seed).map_err(CheckError::Eval)?;
    let eq = equivariance_residual(&m, samples, None, seed).map_err(CheckError::Eval)?;
    let stress = match m.kind {
        ModelKind::Scalar => Some(stress_equivariance_residual(&m, samples, None, seed).map_err(CheckError::Eval)?),
        ModelKind::Tensor => None,
    };
    let rel_ok = relations.iter().all(|r| r.residual.max <= tol);
    let full_ok = m.spec.actions.is_empty() || full.max <= tol;
    let eq_ok = eq.max <= tol;
    let stress_tol = tol.max(1e-8);
    let stress_ok = stress.as_ref().is_none_or(|s| s.max <= stress_tol);
    let ok = rel_ok && full_ok && eq_ok && stress_ok;
    let elements = if id.is_continuous() {
        format!("{} sampled elements", if id == GroupId::CinfV { 128 } else { 64 })
    } else {
        format!("{} elements", group(id).elements.len())
    };

    if format == Format::Json {
        let v = json!({
            "group": id.as_str(),
            "kind": m.kind,
            "symmetrized": m.symmetrized,
            "samples": samples,
            "seed": seed,
            "tol": tol,
            "relations": relations.iter().map(|r| json!({
                "relation": r.text,
                "residual": residual_json(&r.residual),
                "pass": r.residual.max <= tol,
            })).collect::<Vec<_>>(),
            "full_constraints": if m.spec.actions.is_empty() { Value::Null } else { residual_json(&full) },
            "equivariance": residual_json(&eq),
            "stress_equivariance": stress.as_ref().map(residual_json),
            "pass": ok,
        });
        return Ok(Outcome::verdict(ok, json_text(&v)));
    }
    let mut out = format!(
        "model {} ({}, {}) over {id}, {samples} samples, seed {seed}, tol {tol:e}\n",
        path.display(),
        match m.kind {
            ModelKind::Scalar => "scalar",
            ModelKind::Tensor => "tensor",
        },
        if m.symmetrized { "symmetrized" } else { "unsymmetrized" }
    );
    for r in &relations {
        out += &format!("relation {}: max {:.3e}{}: {}\n", r.text, r.residual.max, witness(&r.residual), pass(r.residual.max <= tol));
    }
    if !m.spec.actions.is_empty() {
        out += &format!("full constraint set: max {:.3e}{}: {}\n", full.max, witness(&full), pass(full_ok));
    }
    out += &format!("equivariance over {elements}: max {:.3e}{}: {}\n", eq.max, witness(&eq), pass(eq_ok));
    if let Some(s) = &stress {
        out += &format!(
            "stress equivariance (tol {stress_tol:e}): max {:.3e}{}: {}\n",
            s.max,
            witness(s),
            pass(stress_ok)
        );
    }
    out += &format!("result: {}\n", pass(ok));
    Ok(Outcome::verdict(ok, out))
}

fn model(cmd: ModelCmd, format: Format) -> Result<Outcome, Error> {
    match cmd {
        ModelCmd::Check { file, samples, seed, tol } => match model_check(file, samples, seed, tol, format) {
            Ok(o) => Ok(o),
            Err(CheckError::Input(e)) => Err(e),
            Err(CheckError::Eval(e)) => Ok(Outcome { code: 1, text: format!("evaluation failed: {e}\nresult: FAIL\n") }),
        },
        ModelCmd::Eval { file, c } => {
            let c = parse_c(&c)?;
            let m = load_model(&file)?;
            Ok(Outcome::ok(match m.kind {
                ModelKind::Scalar => {
                    let psi = m.eval_scalar(&c)?;
                    match format {
                        Format::Json => json_text(&json!({ "psi": psi })),
                        _ => format!("psi = {psi}\n"),
                    }
                }
                ModelKind::Tensor => {
                    let t = m.eval_tensor(&c)?;
                    match format {
                        Format::Json => json_text(&json!({ "T": sym_json(&t) })),
                        _ => format!("T = {}\n", sym_text(&t)),
                    }
                }
            }))
        }
        ModelCmd::Stress { file, c } => {
            let c = parse_c(&c)?;
            let m = load_model(&file)?;
            let t = m.stress(&c)?;
            Ok(Outcome::ok(match format {
                Format::Json => json_text(&json!({ "T": sym_json(&t) })),
                _ => format!("T = {}\n", sym_text(&t)),
            }))
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    let result = match cli.cmd {
        Cmd::Pg(c) => pg(c, format),
        Cmd::St(c) => st(c, format),
        Cmd::Rep(c) => rep(c, format),
        Cmd::Iso(c) => iso(c, format),
        Cmd::Model(c) => model(c, format),
    };
    match result {
        Ok(o) => {
            print!("{}", o.text);
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
