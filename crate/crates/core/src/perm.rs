//! Permutations and permutation groups.
//!
//! Products are read left to right: `p.then(q)` applies `p` first. A word
//! `x y` therefore evaluates to `x.then(y)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default largest degree for element enumeration.
pub const DEFAULT_DEGREE_LIMIT: usize = 12;

/// Bijection of `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Validation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || std::mem::replace(&mut touched[a], true) {
                    return Err(Error::Validation(format!(
                        "bad cycle {cycle:?} on {n} points"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn then_in_place(&mut self, other: &Permutation) {
        for i in self.images.iter_mut() {
            *i = other.images[*i];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            out.then_in_place(&base);
        }
        out
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
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
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_images(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation group given by generators; the element set is computed on
/// first use and cached.
#[derive(Debug)]
pub struct PermutationGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    degree_limit: usize,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        Self {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.clone(),
            degree_limit: self.degree_limit,
            elements,
        }
    }
}

impl PermutationGroup {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Validation(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        Ok(Self {
            name: name.into(),
            degree,
            generators,
            degree_limit: DEFAULT_DEGREE_LIMIT,
            elements: OnceLock::new(),
        })
    }

    /// The full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
        }
        Self::new(format!("S{n}"), n, gens).unwrap()
    }

    /// Cyclic group of order `k` on the fewest points: one cycle per prime-power part.
    pub fn cyclic(k: u64) -> Self {
        let parts = prime_power_parts(k);
        let degree: usize = parts.iter().map(|&(_, q)| q as usize).sum();
        let mut images: Vec<usize> = (0..degree).collect();
        let mut offset = 0;
        for &(_, q) in &parts {
            let q = q as usize;
            for i in 0..q {
                images[offset + i] = offset + (i + 1) % q;
            }
            offset += q;
        }
        let gens = if k > 1 {
            vec![Permutation::from_images(images).unwrap()]
        } else {
            Vec::new()
        };
        Self::new(format!("Z{k}"), degree, gens).unwrap()
    }

    pub fn with_degree_limit(mut self, limit: usize) -> Self {
        self.degree_limit = limit;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Breadth-first closure under right multiplication by generators,
    /// starting from the identity. Order is deterministic.
    pub fn elements(&self) -> Result<&[Permutation]> {
        if self.degree > self.degree_limit {
            return Err(Error::DegreeTooLarge {
                degree: self.degree,
                limit: self.degree_limit,
            });
        }
        Ok(self.elements.get_or_init(|| {
            let id = self.identity();
            let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
            let mut out = vec![id.clone()];
            let mut queue = VecDeque::from([id]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let y = x.then(g);
                    if seen.insert(y.clone()) {
                        out.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
            out
        }))
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.elements()?.len() as u64)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        Ok(self.elements()?.contains(p))
    }
}

/// Full element set of a permutation group.
pub fn enumerate_elements(g: &PermutationGroup) -> Result<&[Permutation]> {
    g.elements()
}

/// Elements of `S_n` in lexicographic order of their image arrays.
pub fn symmetric_group_elements(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// `[(p, p^e)]` for the prime factorization of `n`.
pub fn prime_power_parts(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Every Sylow subgroup is cyclic iff, for each prime `p` dividing `|G|`, some
/// element has order equal to the full `p`-part of `|G|`.
pub fn sylow_all_cyclic(g: &PermutationGroup) -> Result<bool> {
    let elements = g.elements()?;
    let orders: Vec<u64> = elements.iter().map(Permutation::order).collect();
    Ok(prime_power_parts(elements.len() as u64)
        .into_iter()
        .all(|(_, part)| orders.contains(&part)))
}
