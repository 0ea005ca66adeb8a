//! Quotients by semiregular automorphisms, voltage lifting, and Hamilton cycle search.
//!
//! For a semiregular `alpha` of order `k`, every vertex is `alpha^e(rep)` for
//! the least vertex `rep` of its orbit; `e` is its exponent. An arc
//! `(U, V, s)` of the quotient records the edge orbit of `{rep_U, alpha^s(rep_V)}`.
//! A Hamilton cycle of the quotient whose voltages sum to a generator of
//! `Z_k` lifts to a Hamilton cycle of the graph on which `alpha` acts as a
//! rotation by `n/k` positions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numth::gcd;
use crate::perm::Perm;

/// Default number of Hamilton cycles enumerated before giving up on exhaustiveness.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HamCycle {
    seq: Vec<usize>,
}

impl HamCycle {
    pub fn new(g: &Graph, seq: Vec<usize>) -> Result<HamCycle> {
        let c = HamCycle { seq };
        c.validate(g)?;
        Ok(c)
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if self.seq.len() != n || n < 3 {
            return Err(Error::InvalidCycle(format!("length {} for {n} vertices", self.seq.len())));
        }
        let mut seen = vec![false; n];
        for &v in &self.seq {
            if v >= n || seen[v] {
                return Err(Error::InvalidCycle(format!("vertex {v} repeated or out of range")));
            }
            seen[v] = true;
        }
        for i in 0..n {
            let (u, v) = (self.seq[i], self.seq[(i + 1) % n]);
            if !g.has_edge(u, v) {
                return Err(Error::InvalidCycle(format!("{u} and {v} are not adjacent")));
            }
        }
        Ok(())
    }

    /// Rotated to start at the least vertex, oriented towards its lesser neighbour.
    pub fn canonical(&self) -> HamCycle {
        let n = self.seq.len();
        if n == 0 {
            return self.clone();
        }
        let start = (0..n).min_by_key(|&i| self.seq[i]).unwrap();
        let next = self.seq[(start + 1) % n];
        let prev = self.seq[(start + n - 1) % n];
        let seq = if next <= prev {
            (0..n).map(|i| self.seq[(start + i) % n]).collect()
        } else {
            (0..n).map(|i| self.seq[(start + n - i) % n]).collect()
        };
        HamCycle { seq }
    }

    /// Position of every vertex along the cycle.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

impl fmt::Debug for HamCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HamCycle{:?}", self.seq)
    }
}

/// Space-separated vertex ids.
impl fmt::Display for HamCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `{rep_from, alpha^voltage(rep_to)}` is an edge; `from <= to`, and loops
/// carry the lesser of `s` and `k - s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub voltage: usize,
}

/// One traversal of an arc; `reversed` walks it from `to` to `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub arc: usize,
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientCycle {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub k: usize,
    pub alpha: Perm,
    /// Least vertex of each orbit; orbits are numbered in this order.
    pub reps: Vec<usize>,
    pub orbit_of: Vec<usize>,
    pub exponent: Vec<usize>,
    /// Sorted by `(from, to, voltage)`.
    pub arcs: Vec<Arc>,
    arc_index: HashMap<Arc, usize>,
}

impl QuotientGraph {
    pub fn new(g: &Graph, alpha: &Perm) -> Result<QuotientGraph> {
        let n = g.n();
        if alpha.degree() != n {
            return Err(Error::DegreeMismatch(alpha.degree(), n));
        }
        let k = alpha.semiregular_order().ok_or(Error::NotSemiregular)?;
        if k < 2 {
            return Err(Error::NotSemiregular);
        }
        if !g.is_automorphism(alpha)? {
            return Err(Error::NotAutomorphism);
        }
        let orbits = alpha.orbits();
        let mut exponent = vec![0; n];
        for orbit in &orbits.orbits {
            for (e, &v) in orbit.iter().enumerate() {
                exponent[v] = e;
            }
        }
        let reps: Vec<usize> = orbits.orbits.iter().map(|o| o[0]).collect();
        let mut q = QuotientGraph {
            k,
            alpha: alpha.clone(),
            reps,
            orbit_of: orbits.orbit_of,
            exponent,
            arcs: Vec::new(),
            arc_index: HashMap::new(),
        };
        let arcs: BTreeSet<Arc> = g.edges().map(|(u, v)| q.locate(u, v).0).collect();
        q.arcs = arcs.into_iter().collect();
        q.arc_index = q.arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Ok(q)
    }

    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    /// The canonical arc of the edge orbit of `{u, v}`, and whether walking
    /// `u -> v` traverses it reversed.
    fn locate(&self, u: usize, v: usize) -> (Arc, bool) {
        let k = self.k;
        let (ou, ov) = (self.orbit_of[u], self.orbit_of[v]);
        let s = (self.exponent[v] + k - self.exponent[u]) % k;
        if ou < ov {
            (Arc { from: ou, to: ov, voltage: s }, false)
        } else if ou > ov {
            (Arc { from: ov, to: ou, voltage: (k - s) % k }, true)
        } else if s <= k - s {
            (Arc { from: ou, to: ou, voltage: s }, false)
        } else {
            (Arc { from: ou, to: ou, voltage: k - s }, true)
        }
    }

    fn step_ends(&self, step: Step) -> (usize, usize) {
        let a = self.arcs[step.arc];
        if step.reversed {
            (a.to, a.from)
        } else {
            (a.from, a.to)
        }
    }

    fn step_voltage(&self, step: Step) -> usize {
        let v = self.arcs[step.arc].voltage;
        if step.reversed {
            (self.k - v) % self.k
        } else {
            v
        }
    }

    pub fn net_voltage(&self, cycle: &QuotientCycle) -> usize {
        cycle.steps.iter().map(|&s| self.step_voltage(s)).sum::<usize>() % self.k
    }

    /// The same cycle walked backwards.
    pub fn reverse(&self, cycle: &QuotientCycle) -> QuotientCycle {
        QuotientCycle {
            steps: cycle
                .steps
                .iter()
                .rev()
                .map(|s| self.normalize(Step { arc: s.arc, reversed: !s.reversed }))
                .collect(),
        }
    }

    fn normalize(&self, step: Step) -> Step {
        let a = self.arcs[step.arc];
        if a.from == a.to && (2 * a.voltage).is_multiple_of(self.k) {
            Step { arc: step.arc, reversed: false }
        } else {
            step
        }
    }

    /// Checks that `cycle` is a closed walk through every orbit exactly once.
    fn check_cycle(&self, cycle: &QuotientCycle) -> Result<()> {
        let q = self.orbit_count();
        let bad = |msg: &str| Err(Error::InvalidCycle(format!("quotient cycle: {msg}")));
        if cycle.steps.len() != q {
            return bad("wrong length");
        }
        if cycle.steps.iter().any(|s| s.arc >= self.arcs.len()) {
            return bad("unknown arc");
        }
        let mut seen = vec![false; q];
        let start = self.step_ends(cycle.steps[0]).0;
        let mut at = start;
        for &s in &cycle.steps {
            let (from, to) = self.step_ends(s);
            if from != at || seen[from] {
                return bad("not a closed walk through distinct orbits");
            }
            seen[from] = true;
            at = to;
        }
        if at != start {
            return bad("walk does not close");
        }
        if q == 2 && cycle.steps[0].arc == cycle.steps[1].arc {
            return bad("uses one arc twice");
        }
        Ok(())
    }

    /// Lifts a quotient Hamilton cycle with generating net voltage.
    pub fn lift(&self, cycle: &QuotientCycle) -> Result<HamCycle> {
        self.check_cycle(cycle)?;
        let net = self.net_voltage(cycle);
        if gcd(net as u64, self.k as u64) != 1 {
            return Err(Error::NonGeneratingVoltage { voltage: net, k: self.k });
        }
        let n = self.orbit_of.len();
        let mut orbit = self.step_ends(cycle.steps[0]).0;
        let mut exp = 0;
        let mut seq = Vec::with_capacity(n);
        for _ in 0..self.k {
            for &s in &cycle.steps {
                seq.push(self.alpha.power(exp as i64).apply(self.reps[orbit]));
                exp = (exp + self.step_voltage(s)) % self.k;
                orbit = self.step_ends(s).1;
            }
        }
        debug_assert_eq!(exp, 0);
        Ok(HamCycle { seq })
    }

    /// Reads the first `n/k` steps of a lifted cycle back as a quotient cycle.
    pub fn project(&self, seq: &[usize]) -> Result<QuotientCycle> {
        let q = self.orbit_count();
        if seq.len() < q + 1 {
            return Err(Error::InvalidCycle("sequence shorter than the quotient".into()));
        }
        let mut steps = Vec::with_capacity(q);
        for i in 0..q {
            let (arc, reversed) = self.locate(seq[i], seq[i + 1]);
            let idx = *self
                .arc_index
                .get(&arc)
                .ok_or_else(|| Error::InvalidCycle(format!("{} {} is not an edge", seq[i], seq[i + 1])))?;
            steps.push(self.normalize(Step { arc: idx, reversed }));
        }
        Ok(QuotientCycle { steps })
    }

    /// Visits every Hamilton cycle of the quotient starting at orbit 0, arcs
    /// in `(orbit, voltage)` order. Both orientations are visited.
    pub fn for_each_cycle<B>(
        &self,
        mut visit: impl FnMut(&QuotientCycle, usize) -> ControlFlow<B>,
    ) -> Option<B> {
        let q = self.orbit_count();
        let k = self.k;
        if q == 1 {
            for (i, a) in self.arcs.iter().enumerate() {
                for reversed in [false, true] {
                    if reversed && (2 * a.voltage) % k == 0 {
                        continue;
                    }
                    let c = QuotientCycle { steps: vec![Step { arc: i, reversed }] };
                    let net = self.net_voltage(&c);
                    if let ControlFlow::Break(b) = visit(&c, net) {
                        return Some(b);
                    }
                }
            }
            return None;
        }
        // out[u]: (target orbit, traversal voltage, step), loops excluded.
        let mut out: Vec<Vec<(usize, usize, Step)>> = vec![Vec::new(); q];
        for (i, a) in self.arcs.iter().enumerate() {
            if a.from == a.to {
                continue;
            }
            out[a.from].push((a.to, a.voltage, Step { arc: i, reversed: false }));
            out[a.to].push((a.from, (k - a.voltage) % k, Step { arc: i, reversed: true }));
        }
        for o in &mut out {
            o.sort_by_key(|&(t, v, _)| (t, v));
        }
        let neighbors: Vec<Vec<usize>> = out
            .iter()
            .map(|o| {
                let mut v: Vec<usize> = o.iter().map(|x| x.0).collect();
                v.dedup();
                v
            })
            .collect();
        let mut state = QuotientDfs {
            q,
            k,
            out: &out,
            neighbors: &neighbors,
            visited: vec![false; q],
            steps: Vec::with_capacity(q),
        };
        state.visited[0] = true;
        state.run(0, 0, &mut visit)
    }
}

struct QuotientDfs<'a> {
    q: usize,
    k: usize,
    out: &'a [Vec<(usize, usize, Step)>],
    neighbors: &'a [Vec<usize>],
    visited: Vec<bool>,
    steps: Vec<Step>,
}

impl QuotientDfs<'_> {
    fn run<B>(
        &mut self,
        at: usize,
        sum: usize,
        visit: &mut impl FnMut(&QuotientCycle, usize) -> ControlFlow<B>,
    ) -> Option<B> {
        if self.steps.len() == self.q - 1 {
            for &(t, v, step) in &self.out[at] {
                if t != 0 || (self.q == 2 && step.arc == self.steps[0].arc) {
                    continue;
                }
                self.steps.push(step);
                let c = QuotientCycle { steps: self.steps.clone() };
                let r = visit(&c, (sum + v) % self.k);
                self.steps.pop();
                if let ControlFlow::Break(b) = r {
                    return Some(b);
                }
            }
            return None;
        }
        for &(t, v, step) in &self.out[at] {
            if self.visited[t] {
                continue;
            }
            self.visited[t] = true;
            self.steps.push(step);
            if self.viable(t) {
                if let Some(b) = self.run(t, (sum + v) % self.k, visit) {
                    return Some(b);
                }
            }
            self.steps.pop();
            self.visited[t] = false;
        }
        None
    }

    /// Unvisited orbits must be reachable from the path end and able to reach orbit 0.
    fn viable(&self, end: usize) -> bool {
        let remaining = self.visited.iter().filter(|&&v| !v).count();
        if remaining == 0 {
            return true;
        }
        let mut seen = vec![false; self.q];
        let mut stack = vec![end];
        seen[end] = true;
        let mut reached = 0;
        let mut touches_start = false;
        while let Some(u) = stack.pop() {
            for &w in &self.neighbors[u] {
                if w == 0 && u != end {
                    touches_start = true;
                }
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == remaining && touches_start
    }
}

pub fn quotient_with_voltages(g: &Graph, alpha: &Perm) -> Result<QuotientGraph> {
    QuotientGraph::new(g, alpha)
}

pub fn lift(qg: &QuotientGraph, cycle: &QuotientCycle) -> Result<HamCycle> {
    qg.lift(cycle)
}

/// A Hamilton cycle on which `alpha` acts as a rotation, if one exists.
pub fn find_symmetric_hamcycle(g: &Graph, alpha: &Perm) -> Result<Option<HamCycle>> {
    let qg = QuotientGraph::new(g, alpha)?;
    if g.n() < 3 {
        return Ok(None);
    }
    let k = qg.k as u64;
    let found = qg.for_each_cycle(|c, net| {
        if gcd(net as u64, k) == 1 {
            ControlFlow::Break(c.clone())
        } else {
            ControlFlow::Continue(())
        }
    });
    match found {
        Some(c) => {
            let cycle = qg.lift(&c)?;
            debug_assert!(cycle.validate(g).is_ok());
            Ok(Some(cycle.canonical()))
        }
        None => Ok(None),
    }
}

/// Backtracking Hamilton cycle search from vertex 0, visiting each cycle once
/// in canonical orientation (`seq[1] < seq[n-1]`).
struct HamDfs<'a> {
    g: &'a Graph,
    n: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    /// For vertices off the path: neighbours that are off the path, the end, or vertex 0.
    avail: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> HamDfs<'a> {
    fn new(g: &'a Graph) -> HamDfs<'a> {
        let n = g.n();
        HamDfs {
            g,
            n,
            path: Vec::with_capacity(n),
            on_path: vec![false; n],
            avail: (0..n).map(|v| g.degree(v)).collect(),
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    fn run<B>(&mut self, visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        if self.n < 3 || !self.g.is_connected() || self.g.degrees().iter().any(|&d| d < 2) {
            return None;
        }
        self.path.push(0);
        self.on_path[0] = true;
        self.extend(visit)
    }

    fn extend<B>(&mut self, visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        let end = *self.path.last().unwrap();
        if self.path.len() == self.n {
            if self.g.has_edge(end, 0) && self.path[1] < end {
                return match visit(&self.path) {
                    ControlFlow::Break(b) => Some(b),
                    ControlFlow::Continue(()) => None,
                };
            }
            return None;
        }
        // A neighbour of `end` with only two available neighbours, one being
        // `end`, must come next. Vertex 0 never retires, so it forces nothing.
        let mut forced = None;
        for &w in self.g.neighbors(end) {
            if end != 0 && !self.on_path[w] && self.avail[w] == 2 {
                if forced.is_some() {
                    return None;
                }
                forced = Some(w);
            }
        }
        for &x in self.g.neighbors(end) {
            if self.on_path[x] || forced.is_some_and(|f| f != x) {
                continue;
            }
            if let Some(b) = self.step(x, visit) {
                return Some(b);
            }
        }
        None
    }

    fn step<B>(&mut self, x: usize, visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        let end = *self.path.last().unwrap();
        // `end` stops being available to its neighbours unless it is vertex 0.
        let retire = end != 0;
        let mut ok = true;
        if retire {
            for &w in self.g.neighbors(end) {
                if !self.on_path[w] && w != x {
                    self.avail[w] -= 1;
                    if self.avail[w] < 2 {
                        ok = false;
                    }
                }
            }
        }
        self.path.push(x);
        self.on_path[x] = true;
        let mut result = None;
        if ok && self.viable() {
            result = self.extend(visit);
        }
        self.on_path[x] = false;
        self.path.pop();
        if retire {
            for &w in self.g.neighbors(end) {
                if !self.on_path[w] && w != x {
                    self.avail[w] += 1;
                }
            }
        }
        result
    }

    /// Off-path vertices are connected to the end and can still close at vertex 0.
    fn viable(&mut self) -> bool {
        let end = *self.path.last().unwrap();
        let remaining = self.n - self.path.len();
        if remaining == 0 {
            return true;
        }
        let second = self.path.get(1).copied();
        // Vertex 0 needs a closing neighbour off the path, greater than seq[1].
        let can_close = self
            .g
            .neighbors(0)
            .iter()
            .any(|&w| !self.on_path[w] && second.is_none_or(|s| w > s));
        if !can_close {
            return false;
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let mut stack = vec![end];
        self.stamp[end] = epoch;
        let mut reached = 0;
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if !self.on_path[w] && self.stamp[w] != epoch {
                    self.stamp[w] = epoch;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == remaining
    }
}

/// Visits each Hamilton cycle once (up to rotation and reflection), in
/// canonical form. Returns whether the enumeration was exhaustive.
pub fn for_each_hamcycle(g: &Graph, limit: u64, mut visit: impl FnMut(&[usize])) -> bool {
    let mut count = 0u64;
    let stopped = HamDfs::new(g).run(&mut |seq: &[usize]| {
        if count == limit {
            return ControlFlow::Break(());
        }
        count += 1;
        visit(seq);
        ControlFlow::Continue(())
    });
    stopped.is_none()
}

pub fn find_hamcycle(g: &Graph) -> Option<HamCycle> {
    HamDfs::new(g)
        .run(&mut |seq: &[usize]| ControlFlow::Break(HamCycle { seq: seq.to_vec() }))
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub cycles: Vec<HamCycle>,
    pub exhaustive: bool,
}

pub fn enumerate_hamcycles(g: &Graph, limit: u64) -> Enumeration {
    let mut cycles = Vec::new();
    let exhaustive = for_each_hamcycle(g, limit, |seq| cycles.push(HamCycle { seq: seq.to_vec() }));
    Enumeration { cycles, exhaustive }
}
