//! Finite groups held as fully enumerated element sets.
//!
//! Every group in scope has at most a few thousand elements, so breadth-first
//! closure and brute-force checks are the algorithms of record.

use std::collections::{BTreeSet, HashSet};
use std::hash::Hash;

use crate::error::{Error, Result};

/// Default bound on the size of an enumerated group.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

pub trait GroupElement: Clone + Eq + Ord + Hash {
    /// `self ∘ other`, i.e. `other` acts first.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
}

/// Breadth-first closure of `gens`; the result is sorted.
pub fn closure<G: GroupElement>(identity: G, gens: &[G], cap: usize) -> Result<Vec<G>> {
    let mut seen: HashSet<G> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for g in gens {
                let t = g.compose(s);
                if !seen.contains(&t) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group closure",
                            cap: cap as u64,
                        });
                    }
                    seen.insert(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<G> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Exhaustive check that `elements` is closed under composition and inversion.
pub fn is_closed<G: GroupElement>(elements: &[G]) -> bool {
    let set: HashSet<&G> = elements.iter().collect();
    elements
        .iter()
        .all(|a| set.contains(&a.inverse()) && elements.iter().all(|b| set.contains(&a.compose(b))))
}

/// Closure check on a deterministic sample of at most `samples` pairs.
pub fn is_closed_sampled<G: GroupElement>(elements: &[G], samples: usize) -> bool {
    let set: HashSet<&G> = elements.iter().collect();
    let n = elements.len();
    if n == 0 {
        return false;
    }
    sample_pairs(n, samples).all(|(i, j)| set.contains(&elements[i].compose(&elements[j])))
}

/// Deterministic spread of index pairs; all pairs when `n * n <= samples`.
pub(crate) fn sample_pairs(n: usize, samples: usize) -> impl Iterator<Item = (usize, usize)> {
    let total = n * n;
    let count = total.min(samples.max(1));
    let exhaustive = count == total;
    (0..count).map(move |s| {
        let idx = if exhaustive {
            s
        } else {
            // Stride by a prime larger than any total in scope.
            ((s as u128 * 2_654_435_761u128) % total as u128) as usize
        };
        (idx / n, idx % n)
    })
}

pub fn commutes<G: GroupElement>(a: &G, b: &G) -> bool {
    a.compose(b) == b.compose(a)
}

pub fn is_abelian<G: GroupElement>(gens: &[G]) -> bool {
    gens.iter().all(|a| gens.iter().all(|b| commutes(a, b)))
}

/// Elements of `elements` commuting with every generator.
pub fn center<G: GroupElement>(elements: &[G], gens: &[G]) -> Vec<G> {
    elements
        .iter()
        .filter(|z| gens.iter().all(|g| commutes(*z, g)))
        .cloned()
        .collect()
}

/// `H` is normal in `<gens>` iff every conjugate of a generator of `H` by a
/// generator of the group lies in `H`.
pub fn is_normal<G: GroupElement>(group_gens: &[G], sub_gens: &[G], sub: &[G]) -> bool {
    let members: HashSet<&G> = sub.iter().collect();
    group_gens.iter().all(|g| {
        let g_inv = g.inverse();
        sub_gens
            .iter()
            .all(|h| members.contains(&g.compose(h).compose(&g_inv)))
    })
}

/// Orbit of `point` under an enumerated group acting through `act`.
pub fn orbit<G, P, F>(elements: &[G], point: &P, act: F) -> Vec<P>
where
    P: Clone + Ord,
    F: Fn(&G, &P) -> P,
{
    elements
        .iter()
        .map(|g| act(g, point))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Elements fixing `point`.
pub fn stabilizer<G, P, F>(elements: &[G], point: &P, act: F) -> Vec<G>
where
    G: Clone,
    P: PartialEq,
    F: Fn(&G, &P) -> P,
{
    elements
        .iter()
        .filter(|g| act(g, point) == *point)
        .cloned()
        .collect()
}
