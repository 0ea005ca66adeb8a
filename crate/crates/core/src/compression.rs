//! Compression factors of Hamilton cycles, Hamilton compression, Ham arrays,
//! LCF notation and the closed-form predictors for metacirculants.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::autgroup::{
    automorphism_group, regular_subgroups_of, sample_elements, sem_array, find_isomorphism,
    is_cayley_of, GroupData, GroupTag, SemArray, Tristate, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::families::{self, FamilyInstance};
use crate::graph::Graph;
use crate::hamlift::{find_hamcycle, find_symmetric_hamcycle, for_each_hamcycle, HamCycle, DEFAULT_ENUMERATION_LIMIT};
use crate::numth::{divisors, factorize, gcd, inv_mod, is_prime, ord_mod, residue};
use crate::perm::Perm;

/// A Hamilton cycle together with the rotation realizing its compression factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionCertificate {
    #[serde(rename = "kappa")]
    pub k: usize,
    pub cycle: HamCycle,
    pub shift: usize,
    pub witness: Perm,
}

impl CompressionCertificate {
    /// Re-derives everything from the cycle and checks it matches.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fresh = cycle_compression(g, &self.cycle)?;
        let n = g.n();
        let rotation = position_rotation(&self.cycle, self.shift);
        if self.k * self.shift != n || fresh.k != self.k || rotation != self.witness {
            return Err(Error::InvalidCycle(format!(
                "certificate claims kappa {} with shift {}, cycle gives {}",
                self.k, self.shift, fresh.k
            )));
        }
        if !g.is_automorphism(&self.witness)? {
            return Err(Error::NotAutomorphism);
        }
        Ok(())
    }
}

/// The permutation moving the vertex at position `i` to position `i + s`.
fn position_rotation(c: &HamCycle, s: usize) -> Perm {
    let seq = c.seq();
    let n = seq.len();
    let mut images = vec![0; n];
    for i in 0..n {
        images[seq[i]] = seq[(i + s) % n];
    }
    Perm::new(images).expect("cycle visits every vertex once")
}

fn rotation_works(g: &Graph, seq: &[usize], pos: &[usize], s: usize) -> bool {
    let n = seq.len();
    let img = |v: usize| seq[(pos[v] + s) % n];
    g.edges().all(|(u, v)| g.has_edge(img(u), img(v)))
}

/// Every shift `s` in `1..=n` whose position rotation is an automorphism.
pub fn working_shifts(g: &Graph, c: &HamCycle) -> Result<Vec<usize>> {
    c.validate(g)?;
    let pos = c.positions();
    Ok((1..=g.n()).filter(|&s| rotation_works(g, c.seq(), &pos, s)).collect())
}

/// `kappa(g, c) = n / s` for the least working shift `s`.
pub fn cycle_compression(g: &Graph, c: &HamCycle) -> Result<CompressionCertificate> {
    c.validate(g)?;
    let n = g.n();
    let pos = c.positions();
    // Working shifts form a subgroup of Z_n, so the least one divides n.
    let divs = divisors(n as u64);
    let shift = divs
        .iter()
        .map(|&d| d as usize)
        .find(|&s| rotation_works(g, c.seq(), &pos, s))
        .expect("shift n always works");
    debug_assert_eq!(
        divs.iter()
            .rev()
            .map(|&k| k as usize)
            .find(|&k| rotation_works(g, c.seq(), &pos, n / k)),
        Some(n / shift),
        "least shift and max over divisors disagree"
    );
    Ok(CompressionCertificate {
        k: n / shift,
        cycle: c.clone(),
        shift,
        witness: position_rotation(c, shift),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lift,
    Exhaustive,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "lift" => Ok(Mode::Lift),
            "exhaustive" => Ok(Mode::Exhaustive),
            _ => Err(Error::InvalidParams(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest automorphism group whose elements are listed.
    pub group_cap: u64,
    /// Hamilton cycles enumerated before exhaustive mode gives up.
    pub enumeration_limit: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { group_cap: DEFAULT_CAP, enumeration_limit: DEFAULT_ENUMERATION_LIMIT }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Compression {
    pub kappa: usize,
    pub certificate: Option<CompressionCertificate>,
    /// False when the value is only a lower bound (capped group or enumeration).
    pub exact: bool,
    pub mode: Mode,
}

/// One generator per cyclic semiregular subgroup of order `k >= 2`, keyed by `k`.
pub fn semiregular_subgroup_reps(group: &GroupData) -> BTreeMap<usize, Vec<Perm>> {
    let scanned = match group.elements() {
        Some(e) => e.to_vec(),
        None => sample_elements(group),
    };
    let mut covered: HashSet<Perm> = HashSet::new();
    let mut reps: BTreeMap<usize, Vec<Perm>> = BTreeMap::new();
    for a in scanned {
        let Some(k) = a.semiregular_order() else { continue };
        if k < 2 || covered.contains(&a) {
            continue;
        }
        for j in 1..k {
            if gcd(j as u64, k as u64) == 1 {
                covered.insert(a.power(j as i64));
            }
        }
        reps.entry(k).or_default().push(a);
    }
    reps
}

pub fn hamilton_compression(g: &Graph, mode: Mode) -> Result<Compression> {
    hamilton_compression_with(g, mode, Limits::default())
}

pub fn hamilton_compression_with(g: &Graph, mode: Mode, limits: Limits) -> Result<Compression> {
    match mode {
        Mode::Lift => lift_compression(g, &automorphism_group(g, limits.group_cap)),
        Mode::Exhaustive => exhaustive_compression(g, limits.enumeration_limit),
    }
}

/// Descending sweep over the symmetry orders `k`, first success wins.
pub fn lift_compression(g: &Graph, group: &GroupData) -> Result<Compression> {
    let reps = semiregular_subgroup_reps(group);
    for (_, candidates) in reps.iter().rev() {
        for a in candidates {
            if let Some(c) = find_symmetric_hamcycle(g, a)? {
                let cert = cycle_compression(g, &c)?;
                return Ok(Compression {
                    kappa: cert.k,
                    certificate: Some(cert),
                    exact: !group.capped,
                    mode: Mode::Lift,
                });
            }
        }
    }
    let certificate = find_hamcycle(g).map(|c| cycle_compression(g, &c)).transpose()?;
    Ok(Compression {
        kappa: certificate.as_ref().map_or(0, |c| c.k),
        certificate,
        exact: !group.capped,
        mode: Mode::Lift,
    })
}

fn exhaustive_compression(g: &Graph, limit: u64) -> Result<Compression> {
    let mut best: Option<CompressionCertificate> = None;
    let mut err = None;
    let exhaustive = for_each_hamcycle(g, limit, |seq| {
        let c = HamCycle::new(g, seq.to_vec()).expect("enumerated cycles are valid");
        match cycle_compression(g, &c) {
            // Enumeration is in increasing canonical order, so ties keep the first.
            Ok(cert) if best.as_ref().is_none_or(|b| cert.k > b.k) => best = Some(cert),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Compression {
        kappa: best.as_ref().map_or(0, |c| c.k),
        certificate: best,
        exact: exhaustive,
        mode: Mode::Exhaustive,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamArray {
    pub exact: bool,
    /// Ascending; `[0]` for a non-hamiltonian graph.
    pub values: Vec<usize>,
    /// The least canonical cycle attaining each positive value.
    pub certificates: Vec<CompressionCertificate>,
}

pub fn ham_array(g: &Graph) -> Result<HamArray> {
    ham_array_with(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn ham_array_with(g: &Graph, limit: u64) -> Result<HamArray> {
    let mut by_k: BTreeMap<usize, CompressionCertificate> = BTreeMap::new();
    let mut err = None;
    let exhaustive = for_each_hamcycle(g, limit, |seq| {
        let c = HamCycle::new(g, seq.to_vec()).expect("enumerated cycles are valid");
        match cycle_compression(g, &c) {
            Ok(cert) => {
                by_k.entry(cert.k).or_insert(cert);
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let values = if by_k.is_empty() && exhaustive { vec![0] } else { by_k.keys().copied().collect() };
    Ok(HamArray { exact: exhaustive, values, certificates: by_k.into_values().collect() })
}

/// `Ham(g) = Sem(g)`, decided only when both arrays are exact.
pub fn ubiquitous_from(ham: &HamArray, sem: &SemArray) -> Tristate {
    if !ham.exact || !sem.exact {
        return Tristate::Unknown;
    }
    if ham.values == sem.values() {
        Tristate::Yes
    } else {
        Tristate::No
    }
}

pub fn is_ubiquitously_compressible(g: &Graph) -> Result<Tristate> {
    Ok(ubiquitous_from(&ham_array(g)?, &sem_array(g, DEFAULT_CAP)))
}

/// LCF word of a cubic graph along `c`: `d_i = j - i`, with `v_j` the chord
/// neighbour of `v_i`, normalized into `(-n/2, n/2]`.
pub fn lcf(g: &Graph, c: &HamCycle) -> Result<Vec<i64>> {
    if g.regular_degree() != Some(3) {
        return Err(Error::NotCubic);
    }
    c.validate(g)?;
    let n = g.n();
    let seq = c.seq();
    let pos = c.positions();
    Ok((0..n)
        .map(|i| {
            let (prev, next) = (seq[(i + n - 1) % n], seq[(i + 1) % n]);
            let chord = *g
                .neighbors(seq[i])
                .iter()
                .find(|&&w| w != prev && w != next)
                .expect("cubic vertex has a chord");
            let d = (pos[chord] + n - i) % n;
            if 2 * d > n {
                d as i64 - n as i64
            } else {
                d as i64
            }
        })
        .collect())
}

/// An LCF word written as a repeated block, e.g. `[5,-5]^4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lcf {
    pub block: Vec<i64>,
    pub repeats: usize,
}

impl Lcf {
    pub fn expand(&self) -> Vec<i64> {
        self.block.iter().copied().cycle().take(self.block.len() * self.repeats).collect()
    }

    pub fn to_graph(&self) -> Result<Graph> {
        graph_from_lcf(&self.expand())
    }
}

impl fmt::Display for Lcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.block.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))?;
        if self.repeats != 1 {
            write!(f, "^{}", self.repeats)?;
        }
        Ok(())
    }
}

impl FromStr for Lcf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lcf> {
        let bad = |msg: String| Error::InvalidParams(format!("LCF {s:?}: {msg}"));
        let s = s.trim();
        let (body, repeats) = match s.rsplit_once('^') {
            Some((b, r)) => (b.trim(), r.trim().parse::<usize>().map_err(|e| bad(e.to_string()))?),
            None => (s, 1),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| bad("expected [..]".into()))?;
        let block = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if repeats == 0 {
            return Err(bad("zero repeats".into()));
        }
        Ok(Lcf { block, repeats })
    }
}

/// Cubic graph on positions `0..n`: the cycle plus chords `i ~ i + d_i`.
pub fn graph_from_lcf(d: &[i64]) -> Result<Graph> {
    let n = d.len();
    if n < 4 {
        return Err(Error::InvalidParams(format!("LCF word of length {n}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for (i, &di) in d.iter().enumerate() {
        let j = (i as u64 + residue(di, n as u64)) as usize % n;
        let back = residue(d[j], n as u64) as usize;
        if j == i || j == (i + 1) % n || (j + 1) % n == i || (j + back) % n != i {
            return Err(Error::InvalidParams(format!("LCF entry {di} at position {i} is inconsistent")));
        }
        edges.push((i, j));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.regular_degree() != Some(3) {
        return Err(Error::NotCubic);
    }
    Ok(g)
}

/// The LCF word of the certified cycle as its period-`shift` block.
pub fn lcf_compressed(g: &Graph, cert: &CompressionCertificate) -> Result<Lcf> {
    let d = lcf(g, &cert.cycle)?;
    let s = cert.shift;
    if (0..d.len()).any(|i| d[i] != d[(i + s) % d.len()]) {
        return Err(Error::InvalidCycle(format!("LCF word is not periodic with period {s}")));
    }
    Ok(Lcf { block: d[..s].to_vec(), repeats: cert.k })
}

/// How the metacirculant predictor reads the undefined graph in its case table.
pub const TILDE_INTERPRETATION: &str =
    "Y_X read as the graph obtained by deleting every edge inside a rho-orbit";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetapqCase {
    Petersen,
    NonCayleyDisconnected,
    CayleyDisconnected,
    /// Connected, and not a Cayley graph of both a cyclic and a dihedral group.
    NotBothConnected,
    BothConnected,
}

impl MetapqCase {
    pub fn label(self) -> &'static str {
        match self {
            MetapqCase::Petersen => "i",
            MetapqCase::NonCayleyDisconnected => "ii",
            MetapqCase::CayleyDisconnected => "iii",
            MetapqCase::NotBothConnected => "iv",
            MetapqCase::BothConnected => "v",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetapqPrediction {
    pub q: usize,
    pub p: usize,
    /// `None` when the group was too large to decide the Cayley questions.
    pub kappa: Option<usize>,
    pub case: Option<MetapqCase>,
    pub tilde_connected: Option<bool>,
    pub interpretation: String,
}

fn petersen_like(g: &Graph) -> bool {
    g.n() == 10
        && g.regular_degree() == Some(3)
        && g.girth() == Some(5)
        && find_isomorphism(g, &families::petersen().graph).is_some()
}

/// Predicted Hamilton compression of a `(q,p)`-metacirculant given on a
/// `q x p` grid with `rho` rotating the rows.
pub fn predict_kappa_metapq(inst: &FamilyInstance) -> Result<MetapqPrediction> {
    predict_kappa_metapq_with(inst, DEFAULT_CAP)
}

pub fn predict_kappa_metapq_with(inst: &FamilyInstance, cap: u64) -> Result<MetapqPrediction> {
    let (q, p) = (inst.labeling.m, inst.labeling.n);
    if !(is_prime(q as u64) && is_prime(p as u64) && q < p) {
        return Err(Error::InvalidParams(format!("expected primes q < p on the grid, got {q} x {p}")));
    }
    if !inst.rho.is_semiregular(p) {
        return Err(Error::NotSemiregular);
    }
    let g = &inst.graph;
    let mut pred = MetapqPrediction {
        q,
        p,
        kappa: None,
        case: None,
        tilde_connected: None,
        interpretation: TILDE_INTERPRETATION.to_string(),
    };
    if petersen_like(g) {
        pred.kappa = Some(0);
        pred.case = Some(MetapqCase::Petersen);
        return Ok(pred);
    }
    let connected = g.remove_intra_orbit_edges(&inst.rho)?.is_connected();
    pred.tilde_connected = Some(connected);
    let group = automorphism_group(g, cap);
    let (kappa, case) = if !connected {
        match is_cayley_of(&group, g.n()) {
            Tristate::Yes => (q, MetapqCase::CayleyDisconnected),
            Tristate::No => (1, MetapqCase::NonCayleyDisconnected),
            Tristate::Unknown => return Ok(pred),
        }
    } else {
        let regular = regular_subgroups_of(&group, g.n(), false);
        match (regular.has_tag(GroupTag::Cyclic), regular.has_tag(GroupTag::Dihedral)) {
            (Tristate::Yes, Tristate::Yes) if q == 2 => (2 * p, MetapqCase::BothConnected),
            (Tristate::Unknown, _) | (_, Tristate::Unknown) => return Ok(pred),
            _ => (p, MetapqCase::NotBothConnected),
        }
    };
    pred.kappa = Some(kappa);
    pred.case = Some(case);
    Ok(pred)
}

/// Positions `j = r/(1-r)` and `j = 1/(r-1)` of the doubled edges in the
/// quotient of `X(m,n;r)` by `sigma`.
pub fn double_edge_positions(m: u64, n: u64, r: u64) -> Result<(u64, u64)> {
    if ord_mod(r, n)? != m {
        return Err(Error::InvalidParams(format!("ord of {r} mod {n} is not {m}")));
    }
    let r = r % n;
    let inv = inv_mod((r + n - 1) % n, n).map_err(|_| Error::NotAUnit { r: (r + n - 1) % n, n })?;
    // r/(1-r) = -r/(r-1)
    let first = (n - r * inv % n) % n;
    Ok((first, inv))
}

/// `n` if `S` contains a unit of `Z_n`, else 1, for `n = pq` with distinct primes.
pub fn predict_kappa_circulant(n: u64, s: &[i64]) -> Result<u64> {
    let f = factorize(n);
    if f.len() != 2 || f.iter().any(|&(_, e)| e != 1) {
        return Err(Error::InvalidParams(format!("{n} is not a product of two distinct primes")));
    }
    let set: std::collections::BTreeSet<u64> = s.iter().map(|&x| residue(x, n)).collect();
    if set.contains(&0) {
        return Err(Error::InvalidParams("0 in the connection set".into()));
    }
    if set.iter().any(|&x| !set.contains(&((n - x) % n))) {
        return Err(Error::Asymmetric(format!("connection set modulo {n}")));
    }
    if set.iter().fold(n, |acc, &x| gcd(acc, x)) != 1 {
        return Err(Error::Disconnected);
    }
    Ok(if set.iter().any(|&x| gcd(x, n) == 1) { n } else { 1 })
}
