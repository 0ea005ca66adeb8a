use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use hamcomp::autgroup::{automorphism_group, sem_array_of};
use hamcomp::compression::{
    cycle_compression, ham_array_with, hamilton_compression_with, lcf, lcf_compressed, ubiquitous_from,
    Limits, Mode,
};
use hamcomp::families::{self, FamilyInstance, P3Variant};
use hamcomp::hamlift::HamCycle;
use hamcomp::Graph;

/// A failure carrying the process exit code.
#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl CommandError {
    pub fn input(message: impl Into<String>) -> CommandError {
        CommandError { code: 2, message: message.into() }
    }
}

impl From<hamcomp::Error> for CommandError {
    fn from(e: hamcomp::Error) -> CommandError {
        CommandError::input(e.to_string())
    }
}

pub type CommandResult = Result<Value, CommandError>;

#[derive(Debug, Clone, Default)]
pub struct FamilySpec {
    pub family: String,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub r: Option<u64>,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub t: Option<u32>,
    pub s: Vec<i64>,
    pub s_prime: Vec<i64>,
    pub t_set: Vec<i64>,
    pub neighbors: Vec<(u64, u64)>,
    pub variant: Option<String>,
    pub words: Vec<String>,
}

fn need<T: Copy>(v: Option<T>, name: &str, family: &str) -> Result<T, CommandError> {
    v.ok_or_else(|| CommandError::input(format!("family {family} needs --{name}")))
}

pub fn build_family(spec: &FamilySpec) -> Result<FamilyInstance, CommandError> {
    let f = spec.family.as_str();
    let inst = match f {
        "xmnr" => families::x_mnr(need(spec.m, "m", f)?, need(spec.n, "n", f)?, need(spec.r, "r", f)?)?,
        "yqp" => families::y_qp(need(spec.q, "q", f)?, need(spec.p, "p", f)?, spec.t.unwrap_or(2))?,
        "zqp" => families::z_qp(need(spec.q, "q", f)?, need(spec.p, "p", f)?, spec.t.unwrap_or(2))?,
        "gp" => families::generalized_petersen(need(spec.n, "n", f)?, need(spec.r, "r", f)?)?,
        "petersen" => families::petersen(),
        "circulant" => families::circulant(need(spec.n, "n", f)?, &spec.s)?,
        "triple" => families::metacirculant_triple_2p(need(spec.p, "p", f)?, &spec.s, &spec.s_prime, &spec.t_set)?,
        "orbit" => families::metacirculant_orbit(
            need(spec.m, "m", f)?,
            need(spec.n, "n", f)?,
            need(spec.r, "r", f)?,
            &spec.neighbors,
        )?,
        "cayleyp3" => {
            let variant: P3Variant = spec.variant.as_deref().unwrap_or("heisenberg").parse()?;
            let words: Vec<&str> = if spec.words.is_empty() {
                vec!["a", "A", "b", "B"]
            } else {
                spec.words.iter().map(String::as_str).collect()
            };
            families::cayley_p3(need(spec.p, "p", f)?, variant, &words)?
        }
        other => return Err(CommandError::input(format!("unknown family {other:?}"))),
    };
    Ok(inst)
}

fn sidecar(inst: &FamilyInstance) -> Value {
    json!({
        "schema": 1,
        "params": inst.params,
        "labeling": inst.labeling,
        "vertices": inst.graph.n(),
        "edges": inst.graph.edge_count(),
        "rho": inst.rho,
        "sigma": inst.sigma,
    })
}

/// Writes the edge list to `out` and the parameters to `out` + `.json`.
pub fn construct(spec: &FamilySpec, out: &Path) -> CommandResult {
    let inst = build_family(spec)?;
    let meta = sidecar(&inst);
    let mut side = out.as_os_str().to_owned();
    side.push(".json");
    let write_err = |e: std::io::Error| CommandError { code: 2, message: format!("{}: {e}", out.display()) };
    fs::write(out, inst.graph.to_edgelist()).map_err(write_err)?;
    fs::write(&side, serde_json::to_string_pretty(&meta).unwrap() + "\n").map_err(write_err)?;
    Ok(meta)
}

pub fn load_graph(path: &Path) -> Result<Graph, CommandError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CommandError::input(format!("{}: {e}", path.display())))?;
    Graph::parse_edgelist(&text).map_err(|e| CommandError::input(format!("{}: {e}", path.display())))
}

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn kappa(g: &Graph, mode: Mode, limits: Limits) -> CommandResult {
    let start = Instant::now();
    let r = hamilton_compression_with(g, mode, limits)?;
    Ok(json!({
        "schema": 1,
        "kappa": r.kappa,
        "exact": r.exact,
        "mode": r.mode,
        "certificate": r.certificate,
        "time_ms": millis(start),
    }))
}

pub fn sem(g: &Graph, cap: u64) -> CommandResult {
    let start = Instant::now();
    let group = automorphism_group(g, cap);
    let s = sem_array_of(&group);
    Ok(json!({
        "schema": 1,
        "sem": s.values(),
        "exact": s.exact,
        "witnesses": s.entries,
        "group_order": group.order.to_string(),
        "time_ms": millis(start),
    }))
}

pub fn ham(g: &Graph, limits: Limits) -> CommandResult {
    let start = Instant::now();
    let h = ham_array_with(g, limits.enumeration_limit)?;
    let s = sem_array_of(&automorphism_group(g, limits.group_cap));
    Ok(json!({
        "schema": 1,
        "ham": h.values,
        "exact": h.exact,
        "certificates": h.certificates,
        "sem": s.values(),
        "sem_exact": s.exact,
        "ubiquitous": ubiquitous_from(&h, &s),
        "time_ms": millis(start),
    }))
}

/// LCF word along `cycle`, or along the cycle certifying the lift-mode value.
pub fn lcf_report(g: &Graph, cycle: Option<Vec<usize>>) -> CommandResult {
    if g.regular_degree() != Some(3) {
        return Err(CommandError::input("LCF notation needs a cubic graph"));
    }
    let cert = match cycle {
        Some(seq) => cycle_compression(g, &HamCycle::new(g, seq)?)?,
        None => {
            let r = hamilton_compression_with(g, Mode::Lift, Limits::default())?;
            r.certificate.ok_or_else(|| CommandError { code: 1, message: "graph has no Hamilton cycle".into() })?
        }
    };
    let word = lcf(g, &cert.cycle)?;
    let compact = lcf_compressed(g, &cert)?;
    Ok(json!({
        "schema": 1,
        "kappa": cert.k,
        "lcf": compact.to_string(),
        "word": word,
        "cycle": cert.cycle,
    }))
}
