//! Constructors for metacirculants and the related graph families.
//!
//! Every constructor uses the `v_i^j = i*n + j` numbering of [`GridLabeling`]
//! and returns the rotation `rho: v_i^j -> v_i^{j+1}` and, where the family has
//! one, the twisted rotation `sigma: v_i^j -> v_{i+1}^{r j}`. Both are checked to
//! be automorphisms, and `sigma rho sigma^-1 = rho^r` is checked exactly.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GridLabeling};
use crate::numth::{gcd, inv_mod, is_prime, ord_mod, pow_mod, primitive_root};
use crate::perm::Perm;

/// Constructor arguments, echoed verbatim into reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<u64>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u64>>,
    #[serde(rename = "S_prime", skip_serializing_if = "Option::is_none")]
    pub s_prime: Option<Vec<u64>>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t_set: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbors_of_origin: Option<Vec<(u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub encoding: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl FamilyParams {
    fn named(family: &str) -> FamilyParams {
        FamilyParams { family: family.to_string(), ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub labeling: GridLabeling,
    pub rho: Perm,
    pub sigma: Option<Perm>,
    pub params: FamilyParams,
}

impl FamilyInstance {
    fn checked(
        graph: Graph,
        labeling: GridLabeling,
        sigma_r: Option<u64>,
        params: FamilyParams,
    ) -> Result<FamilyInstance> {
        let rho = rotation(labeling);
        if !graph.is_automorphism(&rho)? {
            return Err(Error::InvalidParams(format!("{}: rho is not an automorphism", params.family)));
        }
        let sigma = match sigma_r {
            Some(r) => {
                let sigma = twisted_rotation(labeling, r);
                if !graph.is_automorphism(&sigma)? {
                    return Err(Error::InvalidParams(format!(
                        "{}: sigma is not an automorphism",
                        params.family
                    )));
                }
                let conj = sigma.compose(&rho)?.compose(&sigma.inverse())?;
                assert_eq!(conj, rho.power(r as i64), "sigma rho sigma^-1 != rho^r");
                Some(sigma)
            }
            None => None,
        };
        Ok(FamilyInstance { graph, labeling, rho, sigma, params })
    }

    /// The multiplier `r` of the twisted rotation, when present.
    pub fn r(&self) -> Option<u64> {
        self.sigma.as_ref().and(self.params.r)
    }
}

/// `v_i^j -> v_i^{j+1}`.
pub fn rotation(l: GridLabeling) -> Perm {
    Perm::from_fn(l.order(), |v| {
        let (i, j) = l.coords(v);
        l.vertex(i as i64, j as i64 + 1)
    })
}

/// `v_i^j -> v_{i+1}^{r j}`.
pub fn twisted_rotation(l: GridLabeling, r: u64) -> Perm {
    Perm::from_fn(l.order(), |v| {
        let (i, j) = l.coords(v);
        l.vertex(i as i64 + 1, ((j as u64 * r) % l.n as u64) as i64)
    })
}

/// `v_i^j -> v_{i+1}^{n-j}`; the extra prism automorphism.
pub fn prism_flip(l: GridLabeling) -> Perm {
    Perm::from_fn(l.order(), |v| {
        let (i, j) = l.coords(v);
        l.vertex(i as i64 + 1, -(j as i64))
    })
}

fn normalize_set(values: &[i64], n: u64) -> BTreeSet<u64> {
    values.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect()
}

fn check_symmetric(set: &BTreeSet<u64>, n: u64, what: &str) -> Result<()> {
    if set.contains(&0) {
        return Err(Error::InvalidParams(format!("{what} contains 0")));
    }
    if set.iter().any(|&x| !set.contains(&((n - x) % n))) {
        return Err(Error::Asymmetric(format!("{what} = {set:?} modulo {n}")));
    }
    Ok(())
}

/// `X(m, n; r)`: `v_i^j ~ v_i^{j + r^i}` and `v_i^j ~ v_{i+1}^j`.
pub fn x_mnr(m: u64, n: u64, r: u64) -> Result<FamilyInstance> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParams(format!("X(m,n;r) needs m, n >= 2, got m={m}, n={n}")));
    }
    let r = r % n;
    let ord = ord_mod(r, n)?;
    if ord != m {
        return Err(Error::InvalidParams(format!("{r} has order {ord} modulo {n}, expected {m}")));
    }
    let l = GridLabeling::new(m as usize, n as usize);
    let mut edges = Vec::new();
    for i in 0..m {
        let step = pow_mod(r, i, n) as i64;
        for j in 0..n as i64 {
            edges.push((l.vertex(i as i64, j), l.vertex(i as i64, j + step)));
            edges.push((l.vertex(i as i64, j), l.vertex(i as i64 + 1, j)));
        }
    }
    let mut params = FamilyParams::named("xmnr");
    params.m = Some(m);
    params.n = Some(n);
    params.r = Some(r);
    if gcd((r + n - 1) % n, n) != 1 {
        params.warnings.push(format!("r - 1 = {} is not a unit modulo {n}", (r + n - 1) % n));
    }
    FamilyInstance::checked(Graph::from_edges(l.order(), edges)?, l, Some(r), params)
}

/// Parameters shared by the `Y(q,p)` and `Z(q,p)` constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YzParams {
    pub lambda: u64,
    pub big_n: u64,
    pub r: u64,
}

pub fn yz_params(q: u64, p: u64, t: u32) -> Result<YzParams> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if t < 2 {
        return Err(Error::InvalidParams(format!("t must be at least 2, got {t}")));
    }
    let qt = q
        .checked_pow(t)
        .ok_or_else(|| Error::InvalidParams("q^t overflows".into()))?;
    if !(p - 1).is_multiple_of(qt) {
        return Err(Error::InvalidParams(format!("q^t = {qt} does not divide p - 1 = {}", p - 1)));
    }
    let big_n = (p - 1) / qt;
    if gcd(big_n, q) != 1 {
        return Err(Error::InvalidParams(format!("N = {big_n} is not coprime to q = {q}")));
    }
    let lambda = primitive_root(p)?;
    Ok(YzParams { lambda, big_n, r: pow_mod(lambda, big_n, p) })
}

/// `{+-x : x in <g>}` in the multiplicative group modulo `p`.
fn signed_subgroup(g: u64, p: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut x = 1;
    loop {
        out.insert(x);
        out.insert(p - x);
        x = x * g % p;
        if x == 1 {
            break;
        }
    }
    out
}

fn yz_graph(family: &str, q: u64, p: u64, t: u32, subgroup_exp: u64) -> Result<FamilyInstance> {
    let yz = yz_params(q, p, t)?;
    let base = signed_subgroup(pow_mod(yz.r, subgroup_exp, p), p);
    let l = GridLabeling::new(q as usize, p as usize);
    let mut edges = Vec::new();
    for i in 0..q {
        let twist = pow_mod(yz.r, i, p);
        for j in 0..p as i64 {
            edges.push((l.vertex(i as i64, j), l.vertex(i as i64 + 1, j)));
            for &x in &base {
                let step = (x * twist % p) as i64;
                edges.push((l.vertex(i as i64, j), l.vertex(i as i64, j + step)));
            }
        }
    }
    let graph = Graph::from_edges(l.order(), edges)?;
    let mut params = FamilyParams::named(family);
    params.q = Some(q);
    params.p = Some(p);
    params.t = Some(t);
    params.lambda = Some(yz.lambda);
    params.big_n = Some(yz.big_n);
    params.r = Some(yz.r);
    params.s = Some(base.into_iter().collect());
    let sigma = twisted_rotation(l, yz.r);
    let sigma_r = if graph.is_automorphism(&sigma)? {
        Some(yz.r)
    } else {
        params.warnings.push("sigma is not an automorphism of this graph".into());
        None
    };
    FamilyInstance::checked(graph, l, sigma_r, params)
}

/// `Y(q,p)`: intra-row steps `r^i R` with `R = +-<r^q>`.
pub fn y_qp(q: u64, p: u64, t: u32) -> Result<FamilyInstance> {
    yz_graph("yqp", q, p, t, q)
}

/// `Z(q,p)`: intra-row steps `r^i Q` with `Q = +-<r^(q^(t-1))>`.
pub fn z_qp(q: u64, p: u64, t: u32) -> Result<FamilyInstance> {
    yz_graph("zqp", q, p, t, q.pow(t - 1))
}

/// `Cay(Z_n, S)`.
pub fn circulant(n: u64, s: &[i64]) -> Result<FamilyInstance> {
    if n < 1 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    let set = normalize_set(s, n);
    check_symmetric(&set, n, "S")?;
    let edges = (0..n).flat_map(|u| set.iter().map(move |&x| (u as usize, ((u + x) % n) as usize)));
    let graph = Graph::from_edges(n as usize, edges)?;
    let mut params = FamilyParams::named("circulant");
    params.n = Some(n);
    params.s = Some(set.into_iter().collect());
    FamilyInstance::checked(graph, GridLabeling::new(1, n as usize), None, params)
}

/// `GP(n, r)`: outer cycle `v_0^j`, inner step-`r` cycles `v_1^j`, spokes.
pub fn generalized_petersen(n: u64, r: u64) -> Result<FamilyInstance> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("GP(n,r) needs n >= 3, got {n}")));
    }
    let mut r = r % n;
    if r == 0 {
        return Err(Error::InvalidParams("GP(n,r) needs r != 0 modulo n".into()));
    }
    if 2 * r > n {
        r = n - r;
    }
    if 2 * r == n {
        return Err(Error::InvalidParams(format!("GP({n},{r}) has a degenerate inner cycle")));
    }
    let l = GridLabeling::new(2, n as usize);
    let edges = (0..n as i64).flat_map(|j| {
        [
            (l.vertex(0, j), l.vertex(0, j + 1)),
            (l.vertex(1, j), l.vertex(1, j + r as i64)),
            (l.vertex(0, j), l.vertex(1, j)),
        ]
    });
    let graph = Graph::from_edges(l.order(), edges)?;
    let mut params = FamilyParams::named("gp");
    params.n = Some(n);
    params.r = Some(r);
    let r2 = r * r % n;
    let sigma_r = (r2 == 1 || r2 == n - 1).then_some(r);
    FamilyInstance::checked(graph, l, sigma_r, params)
}

pub fn petersen() -> FamilyInstance {
    generalized_petersen(5, 2).expect("GP(5,2) is valid")
}

/// The `[S, S', T]` graph on `2p` vertices: `v_0^j ~ v_0^{j+s}`, `v_1^j ~ v_1^{j+s'}`,
/// `v_0^j ~ v_1^{j+t}`.
pub fn metacirculant_triple_2p(p: u64, s: &[i64], s_prime: &[i64], t: &[i64]) -> Result<FamilyInstance> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let s = normalize_set(s, p);
    let s_prime = normalize_set(s_prime, p);
    let t = normalize_set(t, p);
    check_symmetric(&s, p, "S")?;
    check_symmetric(&s_prime, p, "S'")?;
    if t.is_empty() {
        return Err(Error::InvalidParams("T must be nonempty".into()));
    }
    let l = GridLabeling::new(2, p as usize);
    let mut edges = Vec::new();
    for j in 0..p as i64 {
        edges.extend(s.iter().map(|&x| (l.vertex(0, j), l.vertex(0, j + x as i64))));
        edges.extend(s_prime.iter().map(|&x| (l.vertex(1, j), l.vertex(1, j + x as i64))));
        edges.extend(t.iter().map(|&x| (l.vertex(0, j), l.vertex(1, j + x as i64))));
    }
    let graph = Graph::from_edges(l.order(), edges)?;
    // The least multiplier whose twisted rotation is an automorphism, if any.
    let mut sigma_r = None;
    for r in 1..p {
        if graph.is_automorphism(&twisted_rotation(l, r))? {
            sigma_r = Some(r);
            break;
        }
    }
    let mut params = FamilyParams::named("triple");
    params.p = Some(p);
    params.r = sigma_r;
    params.s = Some(s.into_iter().collect());
    params.s_prime = Some(s_prime.into_iter().collect());
    params.t_set = Some(t.into_iter().collect());
    if sigma_r.is_none() {
        params.warnings.push("no twisted rotation v_i^j -> v_(i+1)^(rj) is an automorphism".into());
    }
    FamilyInstance::checked(graph, l, sigma_r, params)
}

/// Graph whose edge set is the orbit of `{v_0^0 u : u in N0}` under `<rho, sigma>`.
///
/// `r` only needs to be a unit modulo `n`; `sigma^m` then fixes every `v_i^0`.
pub fn metacirculant_orbit(m: u64, n: u64, r: u64, neighbors: &[(u64, u64)]) -> Result<FamilyInstance> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParams(format!("needs m, n >= 2, got m={m}, n={n}")));
    }
    let r = r % n;
    inv_mod(r, n)?;
    let l = GridLabeling::new(m as usize, n as usize);
    let rho = rotation(l);
    let sigma = twisted_rotation(l, r);
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for &(i, j) in neighbors {
        let u = l.vertex(i as i64, j as i64);
        if u == 0 {
            return Err(Error::Loop(0));
        }
        if seen.insert(key(0, u)) {
            queue.push_back(key(0, u));
        }
    }
    while let Some((u, v)) = queue.pop_front() {
        for g in [&rho, &sigma] {
            let (a, b) = (g.apply(u), g.apply(v));
            if a == b {
                return Err(Error::Loop(a));
            }
            if seen.insert(key(a, b)) {
                queue.push_back(key(a, b));
            }
        }
    }
    let mut edges: Vec<_> = seen.into_iter().collect();
    edges.sort_unstable();
    let graph = Graph::from_edges(l.order(), edges)?;
    let mut params = FamilyParams::named("orbit");
    params.m = Some(m);
    params.n = Some(n);
    params.r = Some(r);
    params.neighbors_of_origin = Some(neighbors.to_vec());
    if ord_mod(r, n)? != m {
        params.warnings.push(format!("r = {r} does not have order m = {m} modulo {n}"));
    }
    FamilyInstance::checked(graph, l, Some(r), params)
}

/// The two non-abelian groups of order `p^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum P3Variant {
    /// Exponent-`p` extraspecial group: triples with
    /// `(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2)`, `a = (1,0,0)`, `b = (0,1,0)`.
    Heisenberg,
    /// `Z_{p^2} : Z_p` with `b a b^-1 = a^(1+p)`; elements `a^i b^j`.
    Modular,
}

impl std::str::FromStr for P3Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<P3Variant> {
        match s {
            "heisenberg" => Ok(P3Variant::Heisenberg),
            "modular" => Ok(P3Variant::Modular),
            _ => Err(Error::InvalidParams(format!("unknown group variant {s:?}"))),
        }
    }
}

/// A non-abelian group of order `p^3` with elements encoded as integers in `0..p^3`.
///
/// Encodings put the central coordinate in the lowest digit, so that left
/// multiplication by the central generator is `v_i^j -> v_i^{j+1}` on rows of length `p`.
#[derive(Debug, Clone, Copy)]
pub struct P3Group {
    pub p: u64,
    pub variant: P3Variant,
}

impl P3Group {
    pub fn order(&self) -> u64 {
        self.p.pow(3)
    }

    pub fn identity(&self) -> u64 {
        0
    }

    pub fn encoding(&self) -> &'static str {
        match self.variant {
            P3Variant::Heisenberg => "(x,y,z) -> z + p*x + p^2*y",
            P3Variant::Modular => "a^i b^j -> (i div p) + p*(i mod p) + p^2*j",
        }
    }

    // Heisenberg coordinates: (x, y, z). Modular: (i, j) with i mod p^2.
    fn decode(&self, e: u64) -> (u64, u64, u64) {
        let p = self.p;
        let (lo, mid, hi) = (e % p, (e / p) % p, e / (p * p));
        match self.variant {
            P3Variant::Heisenberg => (mid, hi, lo),
            P3Variant::Modular => (mid + p * lo, hi, 0),
        }
    }

    fn encode(&self, x: u64, y: u64, z: u64) -> u64 {
        let p = self.p;
        match self.variant {
            P3Variant::Heisenberg => (z % p) + p * (x % p) + p * p * (y % p),
            P3Variant::Modular => {
                let i = x % (p * p);
                i / p + p * (i % p) + p * p * (y % p)
            }
        }
    }

    pub fn mul(&self, g: u64, h: u64) -> u64 {
        let p = self.p;
        let (x1, y1, z1) = self.decode(g);
        let (x2, y2, z2) = self.decode(h);
        match self.variant {
            P3Variant::Heisenberg => self.encode(x1 + x2, y1 + y2, z1 + z2 + x1 * y2),
            P3Variant::Modular => {
                let p2 = p * p;
                // b^j a^k = a^(k (1+p)^j) b^j
                let twist = pow_mod(1 + p, y1, p2);
                self.encode((x1 + x2 * twist) % p2, y1 + y2, 0)
            }
        }
    }

    pub fn inv(&self, g: u64) -> u64 {
        // The group has exponent dividing p^2, so g^-1 = g^(p^2 - 1).
        let mut acc = self.identity();
        for _ in 0..self.p * self.p - 1 {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn a(&self) -> u64 {
        self.encode(1, 0, 0)
    }

    pub fn b(&self) -> u64 {
        self.encode(0, 1, 0)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, g: u64, h: u64) -> u64 {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(self.mul(gi, hi), self.mul(g, h))
    }

    /// Evaluates a word over `a`, `b` with `A`, `B` standing for inverses.
    pub fn eval_word(&self, word: &str) -> Result<u64> {
        let (a, b) = (self.a(), self.b());
        let mut acc = self.identity();
        for c in word.chars() {
            let g = match c {
                'a' => a,
                'b' => b,
                'A' => self.inv(a),
                'B' => self.inv(b),
                _ => return Err(Error::InvalidParams(format!("bad letter {c:?} in word {word:?}"))),
            };
            acc = self.mul(acc, g);
        }
        Ok(acc)
    }

    pub fn element_order(&self, g: u64) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

/// `Cay(G, S)` for a non-abelian group of order `p^3`, edges `g ~ g s`.
pub fn cayley_p3(p: u64, variant: P3Variant, words: &[&str]) -> Result<FamilyInstance> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParams(format!("p must be an odd prime, got {p}")));
    }
    let group = P3Group { p, variant };
    let set: BTreeSet<u64> = words.iter().map(|w| group.eval_word(w)).collect::<Result<_>>()?;
    if set.contains(&group.identity()) {
        return Err(Error::InvalidParams("connection set contains the identity".into()));
    }
    if set.iter().any(|&g| !set.contains(&group.inv(g))) {
        return Err(Error::Asymmetric(format!("words {words:?}")));
    }
    let order = group.order();
    let edges = (0..order).flat_map(|g| set.iter().map(move |&s| (g as usize, group.mul(g, s) as usize)));
    let graph = Graph::from_edges(order as usize, edges)?;
    let mut params = FamilyParams::named("cayleyp3");
    params.p = Some(p);
    params.variant = Some(format!("{variant:?}").to_lowercase());
    params.words = Some(words.iter().map(|w| w.to_string()).collect());
    params.s = Some(set.into_iter().collect());
    params.encoding = Some(group.encoding().to_string());
    FamilyInstance::checked(graph, GridLabeling::new((p * p) as usize, p as usize), None, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism(n: usize) -> Graph {
        let l = GridLabeling::new(2, n);
        let edges = (0..n as i64).flat_map(|j| {
            [
                (l.vertex(0, j), l.vertex(0, j + 1)),
                (l.vertex(1, j), l.vertex(1, j + 1)),
                (l.vertex(0, j), l.vertex(1, j)),
            ]
        });
        Graph::from_edges(2 * n, edges).unwrap()
    }

    #[test]
    fn x_mnr_basic() {
        let x = x_mnr(3, 7, 2).unwrap();
        assert_eq!(x.graph.n(), 21);
        assert_eq!(x.graph.edge_count(), 21 * 4 / 2);
        assert_eq!(x.graph.regular_degree(), Some(4));
        assert_eq!(x.sigma.as_ref().unwrap().order(), 3);
        assert!(x.params.warnings.is_empty());

        assert_eq!(x_mnr(2, 5, 4).unwrap().graph, prism(5));
        assert!(x_mnr(3, 7, 3).is_err());
        assert!(x_mnr(2, 8, 4).is_err());
        let even = x_mnr(2, 8, 7).unwrap();
        assert_eq!(even.graph, prism(8));
        assert_eq!(even.params.warnings.len(), 1);
    }

    #[test]
    fn x_2_8_3_is_gp_8_3() {
        // Direct adjacency comparison under the identical labeling.
        assert_eq!(x_mnr(2, 8, 3).unwrap().graph, generalized_petersen(8, 3).unwrap().graph);
    }

    #[test]
    fn tilde_of_x_is_triangles() {
        let x = x_mnr(3, 7, 2).unwrap();
        let tilde = x.graph.remove_intra_orbit_edges(&x.rho).unwrap();
        let (comp, count) = tilde.components();
        assert_eq!(count, 7);
        assert_eq!(tilde.regular_degree(), Some(2));
        // Components are the columns {v_i^j : i}.
        for v in 0..21 {
            assert_eq!(comp[v], comp[x.labeling.vertex(0, (v % 7) as i64)]);
        }
    }

    #[test]
    fn y_and_z() {
        let yz = yz_params(2, 13, 2).unwrap();
        assert_eq!(yz, YzParams { lambda: 2, big_n: 3, r: 8 });
        let y = y_qp(2, 13, 2).unwrap();
        assert_eq!(y.params.s, Some(vec![1, 12]));
        // Relabeling is the identity: row 1 steps are 8R = {5, 8}.
        assert_eq!(y.graph, generalized_petersen(13, 5).unwrap().graph);
        assert_eq!(y.sigma.as_ref().unwrap().order(), 4);

        let y5 = y_qp(2, 5, 2).unwrap();
        assert_eq!(yz_params(2, 5, 2).unwrap(), YzParams { lambda: 2, big_n: 1, r: 2 });
        assert_eq!(y5.graph, petersen().graph);

        let y19 = y_qp(3, 19, 2).unwrap();
        assert_eq!(y19.params.r, Some(4));
        assert_eq!(ord_mod(4, 19).unwrap(), 9);
        assert_eq!(y19.graph.n(), 57);
        assert_eq!(y19.graph.regular_degree(), Some(8));
        assert_eq!(y19.sigma.as_ref().unwrap().order(), 9);
        assert_eq!(z_qp(3, 19, 2).unwrap().graph, y19.graph);

        assert!(y_qp(2, 7, 2).is_err());
        assert!(y_qp(3, 19, 3).is_err());
        assert!(y_qp(2, 17, 2).is_err());
        assert_eq!(y_qp(3, 37, 2).unwrap().params.big_n, Some(4));
    }

    #[test]
    fn z_with_t_4() {
        let z = z_qp(2, 17, 4).unwrap();
        assert_eq!(z.graph.n(), 34);
        assert_eq!(z.graph.regular_degree(), Some(3));
        let y = y_qp(2, 17, 4).unwrap();
        assert_eq!(y.graph.regular_degree(), Some(9));
        assert_eq!(y.sigma.as_ref().unwrap().order(), 16);
    }

    #[test]
    fn circulants() {
        assert_eq!(circulant(15, &[1, 14]).unwrap().graph, Graph::cycle(15));
        let c = circulant(15, &[3, 12, 5, 10]).unwrap();
        assert!(c.graph.is_connected());
        assert_eq!(c.graph.regular_degree(), Some(4));
        assert_eq!(circulant(5, &[1, 4, 2, 3]).unwrap().graph, Graph::complete(5));
        assert!(matches!(circulant(15, &[1]), Err(Error::Asymmetric(_))));
        assert!(circulant(15, &[0]).is_err());
        assert_eq!(circulant(15, &[-1, 1]).unwrap().params.s, Some(vec![1, 14]));
    }

    #[test]
    fn petersen_family() {
        let p = petersen();
        assert_eq!(p.graph.n(), 10);
        assert_eq!(p.graph.edge_count(), 15);
        assert_eq!(p.graph.regular_degree(), Some(3));
        assert_eq!(p.graph.girth(), Some(5));
        assert!(p.sigma.is_some());
        assert_eq!(generalized_petersen(5, 1).unwrap().graph, prism(5));
        assert_eq!(generalized_petersen(5, 3).unwrap().graph, p.graph);
        assert!(generalized_petersen(5, 0).is_err());
        assert!(generalized_petersen(8, 4).is_err());
        assert!(generalized_petersen(7, 2).unwrap().sigma.is_none());
    }

    #[test]
    fn triples() {
        let t = metacirculant_triple_2p(5, &[1, 4], &[1, 4], &[0]).unwrap();
        assert_eq!(t.graph, prism(5));
        let t = metacirculant_triple_2p(5, &[1, 4], &[2, 3], &[0]).unwrap();
        assert_eq!(t.graph, petersen().graph);
        assert_eq!(t.params.r, Some(2));
        let t = metacirculant_triple_2p(7, &[1, 6], &[1, 6], &[0, 1, 6]).unwrap();
        assert_eq!(t.graph.regular_degree(), Some(5));
        assert!(t.sigma.is_some());
        assert!(matches!(
            metacirculant_triple_2p(5, &[1], &[1, 4], &[0]),
            Err(Error::Asymmetric(_))
        ));
        assert!(metacirculant_triple_2p(5, &[1, 4], &[1, 4], &[]).is_err());
        assert!(metacirculant_triple_2p(6, &[1, 5], &[1, 5], &[0]).is_err());
    }

    #[test]
    fn orbit_closure() {
        for (m, n, r) in [(3, 7, 2), (4, 5, 2), (2, 5, 4), (6, 7, 3)] {
            let nb = [(0, 1), (0, n - 1), (1, 0), (m - 1, 0)];
            let o = metacirculant_orbit(m, n, r, &nb).unwrap();
            assert_eq!(o.graph, x_mnr(m, n, r).unwrap().graph, "({m},{n},{r})");
        }
        let o = metacirculant_orbit(2, 13, 8, &[(1, 0), (0, 1), (0, 12)]).unwrap();
        assert_eq!(o.graph.regular_degree(), Some(3));
        assert!(o.graph.is_automorphism(o.sigma.as_ref().unwrap()).unwrap());
        assert_eq!(o.params.warnings.len(), 1);
        assert_eq!(o.graph, generalized_petersen(13, 5).unwrap().graph);
        assert!(matches!(metacirculant_orbit(2, 5, 2, &[(0, 0)]), Err(Error::Loop(0))));
        assert!(metacirculant_orbit(1, 5, 2, &[(0, 1)]).is_err());
        assert!(metacirculant_orbit(2, 6, 2, &[(0, 1)]).is_err());
    }

    #[test]
    fn p3_groups() {
        for variant in [P3Variant::Heisenberg, P3Variant::Modular] {
            let g = P3Group { p: 3, variant };
            let c = g.commutator(g.a(), g.b());
            assert_ne!(c, g.identity());
            assert_eq!(g.element_order(c), 3);
            // central, and the encoding puts it in the lowest digit
            for x in 0..27 {
                assert_eq!(g.mul(c, x), g.mul(x, c));
            }
            assert!(c == 1 || c == 2, "{variant:?}: c = {c}");
            for x in 0..27 {
                assert_eq!(g.mul(x, g.inv(x)), 0);
                for y in 0..27 {
                    for z in [0, 5, 13, 26] {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                    }
                }
            }
        }
        assert_eq!(P3Group { p: 3, variant: P3Variant::Heisenberg }.element_order(5), 3);
        let m = P3Group { p: 3, variant: P3Variant::Modular };
        assert_eq!(m.element_order(m.a()), 9);
        // non-abelian
        assert_ne!(m.mul(m.a(), m.b()), m.mul(m.b(), m.a()));
    }

    #[test]
    fn cayley_graphs_of_order_27() {
        for variant in [P3Variant::Heisenberg, P3Variant::Modular] {
            let x = cayley_p3(3, variant, &["a", "A", "b", "B"]).unwrap();
            assert_eq!(x.graph.n(), 27);
            assert_eq!(x.graph.regular_degree(), Some(4));
            assert!(x.graph.is_connected());
        }
        assert!(matches!(
            cayley_p3(3, P3Variant::Heisenberg, &["a", "b", "B"]),
            Err(Error::Asymmetric(_))
        ));
        assert!(cayley_p3(3, P3Variant::Heisenberg, &["aA"]).is_err());
        assert!(cayley_p3(4, P3Variant::Heisenberg, &["a", "A"]).is_err());
    }
}
