//! Permutations of `{1..n}` and small permutation groups.
//!
//! Composition follows `(σ∘τ)(i) = σ(τ(i))`. Indices are 1-based at every
//! public boundary (cycle notation, [`Permutation::image`]) and 0-based
//! internally.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{self, GroupElement, DEFAULT_GROUP_CAP};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            img: (0..n).collect(),
        }
    }

    /// From 0-based images; `images[i]` is where `i` goes.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
        }
        Ok(Self { img: images })
    }

    /// From 1-based images, as printed in one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("0 in 1-based image list".into()));
        }
        Self::from_images(images.iter().map(|&j| j - 1).collect())
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut used = HashSet::new();
        for cycle in cycles {
            for &e in cycle {
                if e == 0 || e > n {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry {e} outside 1..={n}"
                    )));
                }
                if !used.insert(e) {
                    return Err(Error::InvalidPermutation(format!(
                        "entry {e} repeated across cycles"
                    )));
                }
            }
            for (i, &e) in cycle.iter().enumerate() {
                img[e - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self { img })
    }

    /// Parses cycle notation such as `"(2,5,3)(4,6,7)"`; `"()"` or `""` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("malformed cycle notation `{s}`")))?;
            let (inner, tail) = body;
            if !inner.is_empty() {
                let cycle = inner
                    .split(',')
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad cycle entry in `{s}`")))?;
                cycles.push(cycle);
            }
            rest = tail;
        }
        Self::from_cycles(n, &cycles)
    }

    /// Canonical cycles: each starts at its least element, cycles sorted by
    /// that element, fixed points dropped. 1-based.
    pub fn to_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.img.len()];
        let mut cycles = Vec::new();
        for start in 0..self.img.len() {
            if seen[start] || self.img[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.img[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.img[i - 1] + 1
    }

    /// 0-based image array.
    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.to_cycles()
            .iter()
            .fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.img.len(),
            other.img.len(),
            "composing permutations of different degree"
        );
        Self {
            img: other.img.iter().map(|&j| self.img[j]).collect(),
        }
    }

    fn inverse(&self) -> Self {
        let mut inv = vec![0; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            inv[j] = i;
        }
        Self { img: inv }
    }

    fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|e| e.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A permutation group stored with its generators and all of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Closure of `gens` in `S_n`.
    pub fn closure(n: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.degree() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: bad.degree(),
            });
        }
        let elements = group::closure(Permutation::identity(n), gens, cap)?;
        Ok(Self {
            n,
            generators: gens.to_vec(),
            elements,
        })
    }

    pub fn generated_by(n: usize, gens: &[Permutation]) -> Result<Self> {
        Self::closure(n, gens, DEFAULT_GROUP_CAP)
    }

    /// Wraps a set already known to be a group; the elements also serve as generators.
    pub fn from_elements(n: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if !group::is_closed(&elements) || !elements.iter().any(|g| g.is_identity()) {
            return Err(Error::InvalidPermutation(
                "element set is not a group".into(),
            ));
        }
        Ok(Self {
            n,
            generators: elements.clone(),
            elements,
        })
    }

    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
            elements: vec![Permutation::identity(n)],
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted, deduplicated element list.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        group::is_abelian(&self.generators)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn center(&self) -> PermGroup {
        let elements = group::center(&self.elements, &self.generators);
        PermGroup {
            n: self.n,
            generators: elements.clone(),
            elements,
        }
    }

    /// Whether `sub` (a subgroup of `self`) is normal in `self`.
    pub fn is_normal(&self, sub: &PermGroup) -> bool {
        group::is_normal(&self.generators, &sub.generators, &sub.elements)
    }

    /// Point stabilizer of the 1-based index `i`.
    pub fn stabilizer_of_index(&self, i: usize) -> PermGroup {
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.image(i) == i)
            .cloned()
            .collect();
        PermGroup {
            n: self.n,
            generators: elements.clone(),
            elements,
        }
    }

    /// Orbit of the 1-based point `i`, sorted.
    pub fn orbit_of_index(&self, i: usize) -> Vec<usize> {
        group::orbit(&self.elements, &i, |g, &j| g.image(j))
    }
}

/// All `g` in `elements` sent to the identity. `image_of` is checked to be a
/// homomorphism on a deterministic sample of pairs and the kernel is checked
/// to be normal.
pub fn kernel_of_map<G, F>(elements: &[G], image_of: F) -> Result<Vec<G>>
where
    G: GroupElement,
    F: Fn(&G) -> Permutation,
{
    let images: Vec<Permutation> = elements.iter().map(&image_of).collect();
    for (i, j) in group::sample_pairs(elements.len(), 10_000) {
        let lhs = image_of(&elements[i].compose(&elements[j]));
        let rhs = images[i].compose(&images[j]);
        if lhs != rhs {
            return Err(Error::NotHomomorphism(format!(
                "image of product {lhs} differs from product of images {rhs}"
            )));
        }
    }
    let kernel: Vec<G> = elements
        .iter()
        .zip(&images)
        .filter(|(_, img)| img.is_identity())
        .map(|(g, _)| g.clone())
        .collect();
    let members: HashSet<&G> = kernel.iter().collect();
    for g in elements {
        let g_inv = g.inverse();
        if kernel
            .iter()
            .any(|k| !members.contains(&g.compose(k).compose(&g_inv)))
        {
            return Err(Error::NotHomomorphism("kernel is not normal".into()));
        }
    }
    Ok(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn cycle_notation_round_trip() {
        let g3 = cyc(7, "(1,2,3,4,5,6,7)");
        assert_eq!(g3.to_string(), "(1,2,3,4,5,6,7)");
        assert_eq!(g3.image(7), 1);
        let g1 = cyc(7, "(2,7)(3,6)(4,5)");
        assert_eq!(g1.to_cycles(), vec![vec![2, 7], vec![3, 6], vec![4, 5]]);
        assert_eq!(cyc(7, "(5,3,2)(7,4,6)").to_string(), "(2,5,3)(4,6,7)");
        assert!(Permutation::from_cycles(4, &[]).unwrap().is_identity());
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert!(cyc(4, "()").is_identity());
    }

    #[test]
    fn malformed_cycles_rejected() {
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2").is_err());
        assert!(Permutation::parse_cycles(3, "(a)").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_convention() {
        // σ = (1,2), τ = (2,3): σ∘τ sends 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        let s = cyc(3, "(1,2)");
        let t = cyc(3, "(2,3)");
        assert_eq!(s.compose(&t).to_string(), "(1,2,3)");
    }

    #[test]
    fn small_group_facts() {
        let g1 = cyc(7, "(2,7)(3,6)(4,5)");
        let g2 = cyc(7, "(2,5,3)(4,6,7)");
        let g3 = cyc(7, "(1,2,3,4,5,6,7)");
        let n = PermGroup::generated_by(7, &[g2.clone(), g3.clone()]).unwrap();
        assert_eq!(n.order(), 21);
        assert!(!n.is_abelian());
        assert_eq!(
            PermGroup::generated_by(7, std::slice::from_ref(&g3))
                .unwrap()
                .order(),
            7
        );
        let g = PermGroup::generated_by(7, &[g1, g2, g3.clone()]).unwrap();
        assert_eq!(g.order(), 42);
        assert!(n.is_subgroup_of(&g));
        assert!(g.is_normal(&n));
        assert_eq!(g.center().order(), 1);
        let cyclic = PermGroup::generated_by(7, &[g3]).unwrap();
        assert_eq!(cyclic.center().order(), 7);
        assert_eq!(g.stabilizer_of_index(1).order(), 6);
        assert_eq!(g.orbit_of_index(1).len(), 7);
    }

    #[test]
    fn s3_has_trivial_center() {
        let s3 = PermGroup::generated_by(3, &[cyc(3, "(1,2)"), cyc(3, "(1,2,3)")]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.center().order(), 1);
    }

    #[test]
    fn closure_cap() {
        let s5 = [cyc(5, "(1,2)"), cyc(5, "(1,2,3,4,5)")];
        assert!(PermGroup::closure(5, &s5, 100)
            .unwrap_err()
            .is_cap_exceeded());
        assert_eq!(PermGroup::closure(5, &s5, 120).unwrap().order(), 120);
    }

    #[test]
    fn kernels() {
        let s3 = PermGroup::generated_by(3, &[cyc(3, "(1,2)"), cyc(3, "(1,2,3)")]).unwrap();
        let all = kernel_of_map(s3.elements(), |_| Permutation::identity(2)).unwrap();
        assert_eq!(all.len(), 6);
        let faithful = kernel_of_map(s3.elements(), |g| g.clone()).unwrap();
        assert_eq!(faithful.len(), 1);
        // sign map into S_2
        let sign = |g: &Permutation| {
            let odd = g.to_cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 1;
            if odd {
                cyc(2, "(1,2)")
            } else {
                Permutation::identity(2)
            }
        };
        assert_eq!(kernel_of_map(s3.elements(), sign).unwrap().len(), 3);
        // not a homomorphism
        let bogus = |g: &Permutation| {
            if g.image(1) == 2 {
                cyc(2, "(1,2)")
            } else {
                Permutation::identity(2)
            }
        };
        assert!(matches!(
            kernel_of_map(s3.elements(), bogus),
            Err(Error::NotHomomorphism(_))
        ));
    }
}
