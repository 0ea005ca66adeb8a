//! Automorphism groups by individualization-refinement backtracking.
//!
//! A base `b_0, b_1, ...` is chosen by repeatedly individualizing the least
//! vertex of the first non-singleton cell of an equitable ordered partition.
//! For each level, from the deepest up, the orbit of `b_i` in the pointwise
//! stabilizer of `b_0..b_{i-1}` is found by searching for one automorphism per
//! new target; these coset representatives form a strong generating set, the
//! group order is the product of the orbit lengths, and every element is a
//! unique product of transversal elements.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::perm::Perm;

/// Default bound on the number of group elements that are listed explicitly.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// An ordered partition: `cells[c]` ascending, cells ordered by a label-invariant rule.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Partition {
    cell_of: Vec<u32>,
    cells: Vec<Vec<usize>>,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition::from_keys(&vec![0u64; n])
    }

    /// Cells are the classes of equal keys, ordered by key.
    fn from_keys(keys: &[u64]) -> Partition {
        let mut distinct: Vec<u64> = keys.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let cell_of: Vec<u32> = keys
            .iter()
            .map(|k| distinct.binary_search(k).unwrap() as u32)
            .collect();
        let mut cells = vec![Vec::new(); distinct.len()];
        for (v, &c) in cell_of.iter().enumerate() {
            cells[c as usize].push(v);
        }
        Partition { cell_of, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_of.len()
    }

    fn individualize(&self, v: usize) -> Partition {
        let keys: Vec<u64> = self
            .cell_of
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c as u64 + u64::from(u != v))
            .collect();
        Partition::from_keys(&keys)
    }

    /// Refines to the coarsest equitable partition below `self`.
    fn refine(mut self, g: &Graph) -> Partition {
        let n = self.cell_of.len();
        let mut sigs: Vec<(Vec<u32>, usize)> = Vec::with_capacity(n);
        loop {
            sigs.clear();
            for v in 0..n {
                let mut sig = Vec::with_capacity(g.degree(v) + 1);
                sig.push(self.cell_of[v]);
                let start = sig.len();
                sig.extend(g.neighbors(v).iter().map(|&w| self.cell_of[w]));
                sig[start..].sort_unstable();
                sigs.push((sig, v));
            }
            sigs.sort_unstable();
            let mut cell_of = vec![0u32; n];
            let mut count = 0u32;
            for (idx, (sig, v)) in sigs.iter().enumerate() {
                if idx > 0 && *sig != sigs[idx - 1].0 {
                    count += 1;
                }
                cell_of[*v] = count;
            }
            let cells = count as usize + 1;
            let stable = cells == self.cells.len();
            let mut grouped = vec![Vec::new(); cells];
            for (v, &c) in cell_of.iter().enumerate() {
                grouped[c as usize].push(v);
            }
            self = Partition { cell_of, cells: grouped };
            if stable || n == 0 {
                return self;
            }
        }
    }

    /// Cell sizes and the quotient matrix of an equitable partition.
    fn invariant(&self, g: &Graph) -> Vec<u32> {
        let mut out = Vec::new();
        for cell in &self.cells {
            out.push(cell.len() as u32);
            let mut nb: Vec<u32> = g.neighbors(cell[0]).iter().map(|&w| self.cell_of[w]).collect();
            nb.sort_unstable();
            out.push(u32::MAX);
            out.extend(nb);
        }
        out
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }
}

struct Level {
    partition: Partition,
    invariant: Vec<u32>,
    /// Cell branched on at this level and its least vertex (the base point).
    cell: usize,
    point: usize,
}

struct Search<'a> {
    graph: &'a Graph,
    levels: Vec<Level>,
    leaf: Partition,
    leaf_invariant: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a Graph) -> Search<'a> {
        let mut levels = Vec::new();
        let mut part = Partition::unit(graph.n()).refine(graph);
        while let Some(cell) = part.first_nonsingleton() {
            let point = part.cells[cell][0];
            let next = part.individualize(point).refine(graph);
            let invariant = part.invariant(graph);
            levels.push(Level { partition: part, invariant, cell, point });
            part = next;
        }
        let leaf_invariant = part.invariant(graph);
        Search { graph, levels, leaf: part, leaf_invariant }
    }

    fn invariant_at(&self, level: usize) -> &[u32] {
        if level == self.levels.len() {
            &self.leaf_invariant
        } else {
            &self.levels[level].invariant
        }
    }

    /// Depth-first search below a target node at `level` whose partition matches the base.
    fn extend(&self, level: usize, target: &Partition) -> Option<Perm> {
        if level == self.levels.len() {
            debug_assert!(target.is_discrete());
            let mut images = vec![0; self.graph.n()];
            for (c, cell) in self.leaf.cells.iter().enumerate() {
                images[cell[0]] = target.cells[c][0];
            }
            let perm = Perm::new(images).expect("leaf correspondence is a bijection");
            return self.graph.is_automorphism(&perm).unwrap().then_some(perm);
        }
        let cell = self.levels[level].cell;
        for &t in &target.cells[cell] {
            if let Some(p) = self.try_branch(level, target, t) {
                return Some(p);
            }
        }
        None
    }

    fn try_branch(&self, level: usize, target: &Partition, t: usize) -> Option<Perm> {
        let next = target.individualize(t).refine(self.graph);
        if next.invariant(self.graph) != self.invariant_at(level + 1) {
            return None;
        }
        self.extend(level + 1, &next)
    }
}

/// Schreier tree: for each point of the orbit of `root`, an element mapping `root` to it.
fn transversal(root: usize, gens: &[Perm], n: usize) -> Vec<(usize, Perm)> {
    let mut reps: Vec<(usize, Perm)> = vec![(root, Perm::identity(n))];
    let mut seen: HashSet<usize> = HashSet::from([root]);
    let mut idx = 0;
    while idx < reps.len() {
        let (x, ux) = reps[idx].clone();
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                reps.push((y, g.compose(&ux).unwrap()));
            }
        }
        idx += 1;
    }
    reps.sort_by_key(|(x, _)| *x);
    reps
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupData {
    pub generators: Vec<Perm>,
    /// All elements, sorted by image table, unless the order exceeds the cap.
    #[serde(skip)]
    pub elements: Option<Vec<Perm>>,
    pub order: u128,
    pub capped: bool,
    pub base: Vec<usize>,
    /// `transversals[i]` maps `base[i]` to each point of its basic orbit.
    #[serde(skip)]
    pub transversals: Vec<Vec<Perm>>,
}

impl GroupData {
    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    /// The largest power of the prime `p` dividing the order.
    pub fn sylow_order(&self, p: u128) -> u128 {
        let mut ord = self.order;
        let mut out = 1;
        while ord.is_multiple_of(p) {
            ord /= p;
            out *= p;
        }
        out
    }

    /// Orbit lengths of the pointwise base stabilizer chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.transversals.iter().map(Vec::len).collect()
    }
}

/// The automorphism group of `g`; elements are listed iff the order is at most `cap`.
pub fn automorphism_group(g: &Graph, cap: u64) -> GroupData {
    let n = g.n();
    let search = Search::new(g);
    let depth = search.levels.len();
    let mut generators: Vec<Perm> = Vec::new();
    let mut transversals: Vec<Vec<Perm>> = vec![Vec::new(); depth];

    for i in (0..depth).rev() {
        let level = &search.levels[i];
        let mut orbit: HashSet<usize> = transversal(level.point, &generators, n)
            .into_iter()
            .map(|(x, _)| x)
            .collect();
        for &t in &level.partition.cells[level.cell] {
            if orbit.contains(&t) {
                continue;
            }
            if let Some(p) = search.try_branch(i, &level.partition, t) {
                debug_assert_eq!(p.apply(level.point), t);
                generators.push(p);
                orbit = transversal(level.point, &generators, n)
                    .into_iter()
                    .map(|(x, _)| x)
                    .collect();
            }
        }
        transversals[i] = transversal(level.point, &generators, n)
            .into_iter()
            .map(|(_, u)| u)
            .collect();
    }

    let order: u128 = transversals
        .iter()
        .fold(1u128, |acc, t| acc.saturating_mul(t.len() as u128));
    let capped = order > cap as u128;
    let elements = (!capped).then(|| {
        let mut elems = vec![Perm::identity(n)];
        for t in transversals.iter().rev() {
            elems = t
                .iter()
                .flat_map(|u| elems.iter().map(move |h| u.compose(h).unwrap()))
                .collect();
        }
        elems.sort_unstable();
        elems
    });
    GroupData {
        generators,
        elements,
        order,
        capped,
        base: search.levels.iter().map(|l| l.point).collect(),
        transversals,
    }
}

pub fn is_automorphism(g: &Graph, a: &Perm) -> crate::Result<bool> {
    g.is_automorphism(a)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemEntry {
    pub order: usize,
    pub witness: Perm,
}

/// Orders of semiregular automorphisms with one witness each.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemArray {
    pub entries: Vec<SemEntry>,
    /// False when the group was too large to list and only a sample was scanned.
    pub exact: bool,
}

impl SemArray {
    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.order).collect()
    }
}

/// Elements to scan when the full list is unavailable: generators, transversal
/// elements and their powers.
pub(crate) fn sample_elements(group: &GroupData) -> Vec<Perm> {
    let n = group.generators.first().map_or(0, Perm::degree);
    let mut out: BTreeSet<Perm> = BTreeSet::from([Perm::identity(n)]);
    for p in group.generators.iter().chain(group.transversals.iter().flatten()) {
        let ord = p.order() as i64;
        for e in 1..=ord.min(64) {
            out.insert(p.power(e));
        }
    }
    out.into_iter().collect()
}

pub fn sem_array_of(group: &GroupData) -> SemArray {
    let scanned: Vec<Perm> = match group.elements() {
        Some(e) => e.to_vec(),
        None => sample_elements(group),
    };
    let mut by_order: std::collections::BTreeMap<usize, Perm> = Default::default();
    for p in scanned {
        if let Some(k) = p.semiregular_order() {
            by_order.entry(k).or_insert(p);
        }
    }
    SemArray {
        entries: by_order
            .into_iter()
            .map(|(order, witness)| SemEntry { order, witness })
            .collect(),
        exact: !group.capped,
    }
}

pub fn sem_array(g: &Graph, cap: u64) -> SemArray {
    let group = automorphism_group(g, cap);
    let mut sem = sem_array_of(&group);
    if sem.entries.is_empty() {
        sem.entries.push(SemEntry { order: 1, witness: Perm::identity(g.n()) });
    }
    sem
}

/// Isomorphism type tag for a regular subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupTag {
    Cyclic,
    Dihedral,
    Other,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularSubgroup {
    pub tag: GroupTag,
    #[serde(skip)]
    pub elements: Vec<Perm>,
}

impl RegularSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tristate {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct RegularSubgroups {
    /// `None` when the group was too large to enumerate.
    pub subgroups: Option<Vec<RegularSubgroup>>,
}

impl RegularSubgroups {
    pub fn has_tag(&self, tag: GroupTag) -> Tristate {
        match &self.subgroups {
            None => Tristate::Unknown,
            Some(s) if s.iter().any(|r| r.tag == tag) => Tristate::Yes,
            Some(_) => Tristate::No,
        }
    }
}

fn tag_of(elements: &[Perm]) -> GroupTag {
    let n = elements.len() as u64;
    let orders: Vec<u64> = elements.iter().map(Perm::order).collect();
    if orders.contains(&n) {
        return GroupTag::Cyclic;
    }
    if n >= 4 && n.is_multiple_of(2) {
        // Dihedral: an index-2 cyclic subgroup whose complement consists of involutions.
        for (x, &o) in elements.iter().zip(&orders) {
            if o != n / 2 {
                continue;
            }
            let rotations: HashSet<Perm> = (0..o as i64).map(|e| x.power(e)).collect();
            if elements
                .iter()
                .zip(&orders)
                .all(|(y, &oy)| rotations.contains(y) || oy == 2)
            {
                return GroupTag::Dihedral;
            }
        }
    }
    GroupTag::Other
}

struct RegularSearch<'a> {
    elements: &'a [Perm],
    index: HashMap<&'a Perm, usize>,
    fixed_point_free: Vec<bool>,
    by_image_of_zero: Vec<Vec<usize>>,
    identity: usize,
    n: usize,
    visited: HashSet<Vec<usize>>,
    found: Vec<Vec<usize>>,
    first_only: bool,
}

impl<'a> RegularSearch<'a> {
    fn new(elements: &'a [Perm], n: usize, first_only: bool) -> RegularSearch<'a> {
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let identity = index[&Perm::identity(n)];
        let fixed_point_free: Vec<bool> = elements
            .iter()
            .map(|p| p.images().iter().enumerate().all(|(i, &x)| i != x))
            .collect();
        let mut by_image_of_zero = vec![Vec::new(); n];
        for (i, p) in elements.iter().enumerate() {
            if fixed_point_free[i] {
                by_image_of_zero[p.apply(0)].push(i);
            }
        }
        RegularSearch {
            elements,
            index,
            fixed_point_free,
            by_image_of_zero,
            identity,
            n,
            visited: HashSet::new(),
            found: Vec::new(),
            first_only,
        }
    }

    /// Closure of `base` and `extra`, or `None` if it contains a non-identity
    /// element with a fixed point.
    fn closure(&self, base: &[usize], extra: usize) -> Option<Vec<usize>> {
        let mut set: HashSet<usize> = base.iter().copied().collect();
        let mut gens: Vec<usize> = base.iter().copied().filter(|&x| x != self.identity).collect();
        gens.push(extra);
        let mut queue: Vec<usize> = base.to_vec();
        if set.insert(extra) {
            queue.push(extra);
        }
        let mut idx = 0;
        while idx < queue.len() {
            let x = queue[idx];
            idx += 1;
            for &s in &gens {
                let y = self.index[&self.elements[x].compose(&self.elements[s]).unwrap()];
                if set.insert(y) {
                    if y != self.identity && !self.fixed_point_free[y] {
                        return None;
                    }
                    if set.len() > self.n {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        let mut v: Vec<usize> = set.into_iter().collect();
        v.sort_unstable();
        Some(v)
    }

    fn run(&mut self, current: Vec<usize>) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        if current.len() == self.n {
            self.found.push(current);
            return;
        }
        let covered: HashSet<usize> = current.iter().map(|&i| self.elements[i].apply(0)).collect();
        let target = (0..self.n).find(|v| !covered.contains(v)).expect("subgroup is not yet transitive");
        for &cand in &self.by_image_of_zero[target].clone() {
            if let Some(next) = self.closure(&current, cand) {
                if self.visited.insert(next.clone()) {
                    self.run(next);
                }
            }
        }
    }
}

/// All subgroups of `Aut(g)` acting regularly on the vertices.
pub fn regular_subgroups_of(group: &GroupData, n: usize, first_only: bool) -> RegularSubgroups {
    let Some(elements) = group.elements() else {
        return RegularSubgroups { subgroups: None };
    };
    if n == 0 {
        return RegularSubgroups { subgroups: Some(Vec::new()) };
    }
    let mut search = RegularSearch::new(elements, n, first_only);
    let start = vec![search.identity];
    search.run(start);
    let mut subgroups: Vec<RegularSubgroup> = search
        .found
        .into_iter()
        .map(|idx| {
            let elems: Vec<Perm> = idx.iter().map(|&i| elements[i].clone()).collect();
            RegularSubgroup { tag: tag_of(&elems), elements: elems }
        })
        .collect();
    subgroups.sort_by(|a, b| a.tag.cmp(&b.tag).then_with(|| a.elements.cmp(&b.elements)));
    RegularSubgroups { subgroups: Some(subgroups) }
}

pub fn regular_subgroups(g: &Graph, cap: u64) -> RegularSubgroups {
    regular_subgroups_of(&automorphism_group(g, cap), g.n(), false)
}

pub fn is_cayley_of(group: &GroupData, n: usize) -> Tristate {
    match regular_subgroups_of(group, n, true).subgroups {
        None => Tristate::Unknown,
        Some(s) if s.is_empty() => Tristate::No,
        Some(_) => Tristate::Yes,
    }
}

pub fn is_cayley(g: &Graph, cap: u64) -> Tristate {
    is_cayley_of(&automorphism_group(g, cap), g.n())
}

/// Backtracking isomorphism search for small graphs; returns `f` with `g.relabel(f) == h`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Perm> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut gd = g.degrees();
    let mut hd = h.degrees();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return None;
    }
    // Visit g in BFS order so each vertex after a component root has a mapped parent.
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut idx = start;
        while idx < order.len() {
            let u = order[idx];
            idx += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        parent: &[usize],
        g: &Graph,
        h: &Graph,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let candidates: Vec<usize> = if parent[v] == usize::MAX {
            (0..h.n()).collect()
        } else {
            h.neighbors(map[parent[v]]).to_vec()
        };
        for c in candidates {
            if used[c] || h.degree(c) != g.degree(v) {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&u| g.has_edge(v, u) == h.has_edge(c, map[u]));
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if go(k + 1, order, parent, g, h, map, used) {
                return true;
            }
            used[c] = false;
            map[v] = usize::MAX;
        }
        false
    }
    go(0, &order, &parent, g, h, &mut map, &mut used).then(|| Perm::new(map).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, petersen};

    /// Brute-force automorphism count over all n! permutations.
    fn brute_automorphisms(g: &Graph) -> Vec<Perm> {
        fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                if k.is_multiple_of(2) {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
        let mut all = Vec::new();
        heap(g.n(), &mut (0..g.n()).collect(), &mut all);
        let mut out: Vec<Perm> = all
            .into_iter()
            .map(|v| Perm::new(v).unwrap())
            .filter(|p| g.is_automorphism(p).unwrap())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn petersen_group() {
        let p = petersen().graph;
        let grp = automorphism_group(&p, DEFAULT_CAP);
        assert_eq!(grp.order, 120);
        assert!(!grp.capped);
        let elems = grp.elements().unwrap();
        assert_eq!(elems.len(), 120);
        assert!(elems.iter().all(|e| p.is_automorphism(e).unwrap()));
        assert!(grp.generators.iter().all(|e| p.is_automorphism(e).unwrap()));
        let comp = automorphism_group(&p.complement(), DEFAULT_CAP);
        assert_eq!(comp.order, 120);
        assert_eq!(comp.elements, grp.elements);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = vec![
            Graph::complete(4),
            Graph::cycle(6),
            Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap(),
            Graph::empty(4),
            families::generalized_petersen(4, 1).unwrap().graph,
            families::circulant(8, &[1, 7, 4]).unwrap().graph,
            Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)]).unwrap(),
        ];
        for g in graphs {
            let grp = automorphism_group(&g, DEFAULT_CAP);
            let brute = brute_automorphisms(&g);
            assert_eq!(grp.order, brute.len() as u128, "{g:?}");
            assert_eq!(grp.elements().unwrap(), brute.as_slice(), "{g:?}");
        }
    }

    #[test]
    fn cap_keeps_exact_order() {
        let k6 = Graph::complete(6);
        let grp = automorphism_group(&k6, 100);
        assert!(grp.capped);
        assert_eq!(grp.order, 720);
        assert!(grp.elements().is_none());
        let k30 = Graph::complete(30);
        let grp = automorphism_group(&k30, DEFAULT_CAP);
        let fact: u128 = (1..=30u128).product();
        assert_eq!(grp.order, fact);
    }

    #[test]
    fn x_mnr_sylow() {
        let x = families::x_mnr(3, 7, 2).unwrap();
        let grp = automorphism_group(&x.graph, DEFAULT_CAP);
        assert_eq!(grp.order % 21, 0);
        assert_eq!(grp.sylow_order(7), 7);
        assert!(is_automorphism(&x.graph, &x.rho).unwrap());
        let y = families::y_qp(2, 13, 2).unwrap();
        assert!(is_automorphism(&y.graph, y.sigma.as_ref().unwrap()).unwrap());
        let swap = Perm::from_cycles(10, &[&[0, 2]]).unwrap();
        assert!(!is_automorphism(&petersen().graph, &swap).unwrap());
        assert!(is_automorphism(&petersen().graph, &Perm::identity(9)).is_err());
    }

    #[test]
    fn sem_arrays() {
        let p = petersen().graph;
        assert_eq!(sem_array(&p, DEFAULT_CAP).values(), vec![1, 5]);
        assert_eq!(sem_array(&p.complement(), DEFAULT_CAP).values(), vec![1, 5]);
        // K4 oracle: scan all 24 permutations directly.
        let k4 = Graph::complete(4);
        let mut brute: Vec<usize> = brute_automorphisms(&k4)
            .iter()
            .filter_map(|p| p.semiregular_order())
            .collect();
        brute.sort();
        brute.dedup();
        assert_eq!(brute, vec![1, 2, 4]);
        let sem = sem_array(&k4, DEFAULT_CAP);
        assert_eq!(sem.values(), brute);
        assert!(sem.entries.iter().all(|e| e.witness.is_semiregular(e.order)));
        assert!(sem.exact);
        let partial = sem_array(&Graph::complete(7), 10);
        assert!(!partial.exact);
        assert!(partial.values().contains(&7));
    }

    #[test]
    fn regular_subgroup_search() {
        let prism = families::generalized_petersen(5, 1).unwrap().graph;
        let regs = regular_subgroups(&prism, DEFAULT_CAP);
        assert_eq!(regs.has_tag(GroupTag::Cyclic), Tristate::Yes);
        assert_eq!(regs.has_tag(GroupTag::Dihedral), Tristate::Yes);
        for r in regs.subgroups.as_ref().unwrap() {
            assert_eq!(r.order(), 10);
            assert!(r.elements.iter().all(|e| e.is_identity() || e.semiregular_order() == Some(e.order() as usize)));
            let images: HashSet<usize> = r.elements.iter().map(|e| e.apply(0)).collect();
            assert_eq!(images.len(), 10);
        }
        let pet = regular_subgroups(&petersen().graph, DEFAULT_CAP);
        assert!(pet.subgroups.unwrap().is_empty());
        assert_eq!(is_cayley(&petersen().graph, DEFAULT_CAP), Tristate::No);

        let x = families::x_mnr(3, 7, 2).unwrap().graph;
        let regs = regular_subgroups(&x, DEFAULT_CAP).subgroups.unwrap();
        assert!(regs.iter().any(|r| r.order() == 21));
        assert_eq!(is_cayley(&families::x_mnr(4, 5, 2).unwrap().graph, DEFAULT_CAP), Tristate::Yes);
        assert_eq!(is_cayley(&families::y_qp(2, 13, 2).unwrap().graph, DEFAULT_CAP), Tristate::No);
        assert_eq!(is_cayley(&Graph::complete(6), 10), Tristate::Unknown);

        // K4: regular subgroups are Z4 (three of them) and V4 (one, tagged dihedral).
        let k4 = regular_subgroups(&Graph::complete(4), DEFAULT_CAP).subgroups.unwrap();
        assert_eq!(k4.iter().filter(|r| r.tag == GroupTag::Cyclic).count(), 3);
        assert_eq!(k4.iter().filter(|r| r.tag == GroupTag::Dihedral).count(), 1);
    }

    #[test]
    fn isomorphism() {
        let y = families::y_qp(2, 5, 2).unwrap().graph;
        let p = petersen().graph;
        let f = find_isomorphism(&y, &p).unwrap();
        assert_eq!(y.relabel(&f).unwrap(), p);
        let prism = families::generalized_petersen(5, 1).unwrap().graph;
        assert!(find_isomorphism(&prism, &p).is_none());
        let shuffled = p.relabel(&Perm::from_cycles(10, &[&[0, 7, 3], &[1, 9]]).unwrap()).unwrap();
        let f = find_isomorphism(&p, &shuffled).unwrap();
        assert_eq!(p.relabel(&f).unwrap(), shuffled);
    }
}
