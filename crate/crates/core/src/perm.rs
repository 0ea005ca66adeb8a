use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::gcd;

/// A permutation of `0..n` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("image {x} repeated or out of range")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from an image function on `0..n`. Panics if the result is not a bijection.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Perm {
        Perm::new((0..n).map(f).collect()).expect("from_fn: not a bijection")
    }

    /// Builds from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Perm::new(images)
    }

    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn power(&self, e: i64) -> Perm {
        let n = self.degree();
        let mut images = vec![0; n];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % cycle.len()];
            }
        }
        Perm { images }
    }

    /// All cycles, each starting at its least point; cycles ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc / gcd(acc, l as u64) * l as u64)
    }

    pub fn orbits(&self) -> OrbitPartition {
        let orbits = self.cycles();
        let mut orbit_of = vec![0; self.degree()];
        for (id, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                orbit_of[x] = id;
            }
        }
        OrbitPartition { orbit_of, orbits }
    }

    /// True iff every orbit has length exactly `k`.
    pub fn is_semiregular(&self, k: usize) -> bool {
        k >= 1 && self.cycles().iter().all(|c| c.len() == k)
    }

    /// The common orbit length if all orbits have equal length.
    pub fn semiregular_order(&self) -> Option<usize> {
        let lens = self.cycle_lengths();
        let first = *lens.first()?;
        lens.iter().all(|&l| l == first).then_some(first)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// Space-separated image list.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::NotAPermutation(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::new(images)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Perm> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.images
    }
}

/// Orbits of a single permutation. Each orbit starts at its least point and
/// lists successive images; orbits are ordered by their least point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::new(v).unwrap())
    }

    #[test]
    fn basics() {
        let id = Perm::identity(5);
        assert_eq!(id.order(), 1);
        let six = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(six.order(), 6);
        assert!(six.compose(&six.inverse()).unwrap().is_identity());
        assert_eq!(six.power(6), Perm::identity(6));
        assert_eq!(six.power(-1), six.inverse());
        assert!(six.compose(&Perm::identity(5)).is_err());
        assert!(Perm::new(vec![0, 0]).is_err());
    }

    #[test]
    fn orbits_and_semiregularity() {
        assert_eq!(Perm::identity(4).orbits().len(), 4);
        assert!(Perm::identity(4).is_semiregular(1));

        let t = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
        let mut sizes: Vec<_> = t.cycle_lengths();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![2, 1, 1]);
        assert!(!t.is_semiregular(2));

        // v_i^j -> v_i^{j+1} on 3 rows of 7
        let rho = Perm::from_fn(21, |v| (v / 7) * 7 + (v % 7 + 1) % 7);
        let orb = rho.orbits();
        assert_eq!(orb.len(), 3);
        assert!(orb.orbits.iter().all(|o| o.len() == 7));
        assert_eq!(orb.orbits[1][0], 7);
        assert_eq!(orb.orbits[1][1], 8);
        assert!(rho.is_semiregular(7));
        assert_eq!(rho.semiregular_order(), Some(7));
    }

    #[test]
    fn text_format() {
        let p: Perm = "2 0 1".parse().unwrap();
        assert_eq!(p.to_string(), "2 0 1");
        assert!("0 2".parse::<Perm>().is_err());
        assert!("0 x".parse::<Perm>().is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[2,0,1]");
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }

    proptest! {
        #[test]
        fn conjugate_orders_match((a, b) in (1usize..12).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))) {
            let ab = a.compose(&b).unwrap();
            let ba = b.compose(&a).unwrap();
            prop_assert_eq!(ab.order(), ba.order());
        }

        #[test]
        fn order_is_minimal(a in (1usize..10).prop_flat_map(arb_perm)) {
            let ord = a.order() as i64;
            prop_assert!(a.power(ord).is_identity());
            for e in 1..ord {
                prop_assert!(!a.power(e).is_identity());
            }
        }

        #[test]
        fn semiregular_divides(a in (1usize..12).prop_flat_map(arb_perm), k in 1usize..12) {
            if a.is_semiregular(k) {
                prop_assert_eq!(a.degree() % k, 0);
                prop_assert_eq!(a.orbits().len() * k, a.degree());
            }
        }

        #[test]
        fn display_parse_round_trip(a in (1usize..20).prop_flat_map(arb_perm)) {
            prop_assert_eq!(a.to_string().parse::<Perm>().unwrap(), a);
        }
    }
}
