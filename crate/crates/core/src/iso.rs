//! Isomorphism testing and automorphism enumeration by backtracking over
//! generator images.
//!
//! A candidate image assignment for a generating set is extended to the
//! generated subgroup by breadth-first search; a clash or a repeated image
//! prunes the branch. Images of a generator are restricted to elements of
//! the same order and the same conjugacy-class size.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::extension::section_action;
use crate::group::{Group, Homomorphism, Subgroup};

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

const UNSET: usize = usize::MAX;

/// Cheap isomorphism invariants; differing fingerprints certify a negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub center_order: usize,
    pub derived_lengths: Vec<usize>,
    /// Sorted (element order, class size) pairs, one per element.
    pub order_class_profile: Vec<(u32, usize)>,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut class_size = vec![0usize; g.order()];
    for class in g.conjugacy_classes() {
        for &x in class {
            class_size[x] = class.len();
        }
    }
    let mut profile: Vec<(u32, usize)> = (0..g.order())
        .map(|x| (g.element_orders()[x], class_size[x]))
        .collect();
    profile.sort_unstable();
    let mut derived = vec![g.order()];
    let mut cur = Subgroup::whole(g);
    loop {
        let next = g.commutator_subgroup(&cur, &cur);
        if next.order() == cur.order() {
            break;
        }
        derived.push(next.order());
        cur = next;
    }
    Fingerprint {
        order: g.order(),
        center_order: g.center().order(),
        derived_lengths: derived,
        order_class_profile: profile,
    }
}

struct Search<'a> {
    src: &'a Group,
    dst: &'a Group,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(src: &'a Group, dst: &'a Group, budget: u64) -> Search<'a> {
        let class_size = |g: &Group| {
            let mut out = vec![0usize; g.order()];
            for class in g.conjugacy_classes() {
                for &x in class {
                    out[x] = class.len();
                }
            }
            out
        };
        let (cs, cd) = (class_size(src), class_size(dst));
        let gens = src.generators().to_vec();
        let candidates = gens
            .iter()
            .map(|&s| {
                (0..dst.order())
                    .filter(|&y| dst.element_order(y) == src.element_order(s) && cd[y] == cs[s])
                    .collect()
            })
            .collect();
        Search { src, dst, gens, candidates, budget, nodes: 0 }
    }

    /// Extends images of the first `images.len()` generators to the
    /// subgroup they generate; `None` if that is not an injective homomorphism.
    fn extend(&self, images: &[usize]) -> Option<Vec<usize>> {
        let gens = &self.gens[..images.len()];
        let mut map = vec![UNSET; self.src.order()];
        let mut used = FixedBitSet::with_capacity(self.dst.order());
        map[0] = 0;
        used.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (j, &s) in gens.iter().enumerate() {
                let y = self.src.mul(x, s);
                let img = self.dst.mul(map[x], images[j]);
                if map[y] == UNSET {
                    if used.contains(img) {
                        return None;
                    }
                    used.insert(img);
                    map[y] = img;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Calls `visit` on every complete injective map; stops early when
    /// `visit` returns true. Returns whether it stopped early.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let mut images = Vec::with_capacity(self.gens.len());
        self.descend(&mut images, visit)
    }

    fn descend(&mut self, images: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let depth = images.len();
        if depth == self.gens.len() {
            let map = self.extend(images).expect("checked at previous level");
            return Ok(visit(&map));
        }
        for i in 0..self.candidates[depth].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded { budget: self.budget });
            }
            images.push(self.candidates[depth][i]);
            if self.extend(images).is_some() && self.descend(images, visit)? {
                return Ok(true);
            }
            images.pop();
        }
        Ok(false)
    }
}

/// Visits every isomorphism `src -> dst` (as image tables) until `visit`
/// returns true.
pub fn search_isomorphisms(
    src: &Group,
    dst: &Group,
    budget: u64,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if src.order() != dst.order() {
        return Ok(false);
    }
    let mut search = Search::new(src, dst, budget);
    search.run(&mut visit)
}

/// A witness isomorphism, or `None` if the groups are not isomorphic.
pub fn is_isomorphic(g: &Group, h: &Group, budget: u64) -> Result<Option<Homomorphism>> {
    if g.order() != h.order() || fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    let mut found = None;
    search_isomorphisms(g, h, budget, |map| {
        found = Some(map.to_vec());
        true
    })?;
    Ok(found.map(|m| Homomorphism::from_map_unchecked(m, h.order())))
}

/// Every automorphism as an image table, sorted (the identity comes first).
pub fn automorphisms(g: &Group, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    search_isomorphisms(g, g, budget, |map| {
        out.push(map.to_vec());
        false
    })?;
    out.sort();
    Ok(out)
}

pub fn count_automorphisms(g: &Group, budget: u64) -> Result<u64> {
    let mut count = 0u64;
    search_isomorphisms(g, g, budget, |_| {
        count += 1;
        false
    })?;
    Ok(count)
}

/// `Aut(G)` as a group, with `action[a]` the image table of automorphism `a`.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: Group,
    pub action: Vec<Vec<usize>>,
}

pub fn automorphism_group(g: &Group, budget: u64) -> Result<AutomorphismGroup> {
    let auts = automorphisms(g, budget)?;
    let n = auts.len();
    if n > g.order_cap() {
        return Err(Error::OrderCapExceeded { order: n, cap: g.order_cap() });
    }
    let index: HashMap<&[usize], usize> = auts.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let mut table = vec![0u32; n * n];
    for (i, a) in auts.iter().enumerate() {
        for (j, b) in auts.iter().enumerate() {
            // (a . b)(x) = a(b(x))
            let comp: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            table[i * n + j] = index[comp.as_slice()] as u32;
        }
    }
    let group = Group::from_table_unchecked(n, table, format!("Aut({})", g.label()), g.order_cap());
    Ok(AutomorphismGroup { group, action: auts })
}

/// Whether two normal sections `H1/K1` and `H2/K2` of `g` are isomorphic as
/// `g`-groups: same order, same centralizer, and an isomorphism of the
/// quotients commuting with conjugation by every generator of `g`.
pub fn sections_g_isomorphic(
    g: &Group,
    (h1, k1): (&Subgroup, &Subgroup),
    (h2, k2): (&Subgroup, &Subgroup),
    budget: u64,
) -> Result<bool> {
    if h1.order() / k1.order() != h2.order() / k2.order() {
        return Ok(false);
    }
    if g.centralizer_of_section(h1, k1) != g.centralizer_of_section(h2, k2) {
        return Ok(false);
    }
    let s1 = section_action(g, h1, k1);
    let s2 = section_action(g, h2, k2);
    if fingerprint(&s1.quotient) != fingerprint(&s2.quotient) {
        return Ok(false);
    }
    let gens = g.generators();
    search_isomorphisms(&s1.quotient, &s2.quotient, budget, |f| {
        gens.iter().all(|&x| {
            (0..f.len()).all(|q| f[s1.act(g, x, q)] == s2.act(g, x, f[q]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic, elementary_abelian, symmetric};

    #[test]
    fn self_isomorphism() {
        let g = symmetric(4, 512).unwrap();
        let w = is_isomorphic(&g, &g, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert_eq!(w.map().len(), 24);
        Homomorphism::new(&g, &g, w.map().to_vec()).unwrap();
    }

    #[test]
    fn c4_not_v4() {
        let c4 = cyclic(4).unwrap();
        let v4 = elementary_abelian(2, 2).unwrap();
        assert!(is_isomorphic(&c4, &v4, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
        assert_ne!(fingerprint(&c4), fingerprint(&v4));
    }

    // Brute force over all bijections fixing the identity.
    fn brute_aut_count(g: &Group) -> usize {
        fn rec(g: &Group, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let i = map.len();
            if i == g.order() {
                let ok = (0..i).all(|a| (0..i).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b])));
                if ok {
                    *count += 1;
                }
                return;
            }
            for y in 0..g.order() {
                if !used[y] {
                    used[y] = true;
                    map.push(y);
                    rec(g, map, used, count);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut count = 0;
        let mut used = vec![false; g.order()];
        used[0] = true;
        rec(g, &mut vec![0], &mut used, &mut count);
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let c3 = cyclic(3).unwrap();
        let v4 = elementary_abelian(2, 2).unwrap();
        assert_eq!(brute_aut_count(&c3), 2);
        assert_eq!(brute_aut_count(&v4), 6);
        assert_eq!(count_automorphisms(&c3, DEFAULT_SEARCH_BUDGET).unwrap(), 2);
        assert_eq!(count_automorphisms(&v4, DEFAULT_SEARCH_BUDGET).unwrap(), 6);
        let s3 = symmetric(3, 512).unwrap();
        assert_eq!(count_automorphisms(&s3, DEFAULT_SEARCH_BUDGET).unwrap() as usize, brute_aut_count(&s3));
        assert_eq!(automorphism_group(&Group::trivial(), DEFAULT_SEARCH_BUDGET).unwrap().group.order(), 1);
    }

    #[test]
    fn automorphism_group_is_a_group() {
        let aut = automorphism_group(&elementary_abelian(2, 2).unwrap(), DEFAULT_SEARCH_BUDGET).unwrap();
        aut.group.check_axioms().unwrap();
        assert!(is_isomorphic(&aut.group, &symmetric(3, 512).unwrap(), DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .is_some());
        assert!(aut.action[0].iter().enumerate().all(|(i, &x)| i == x));
    }

    #[test]
    fn budget_is_enforced() {
        let g = elementary_abelian(2, 4).unwrap();
        assert!(matches!(
            count_automorphisms(&g, 100),
            Err(Error::SearchBudgetExceeded { budget: 100 })
        ));
    }
}
