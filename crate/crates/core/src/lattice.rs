//! Subgroup lattices, normal subgroups, chief series, Frattini and normal
//! Hall subgroups.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::iso::sections_g_isomorphic;
use crate::numtheory::part;

pub const DEFAULT_LATTICE_BUDGET: usize = 200;

/// All subgroups of a group, sorted by (order, member list).
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    /// `overgroups[i]` holds every `j` with `subgroups[i] ⊆ subgroups[j]`.
    overgroups: Vec<FixedBitSet>,
    conjugacy_classes: Vec<Vec<usize>>,
}

/// Enumerates every subgroup: cyclic subgroups first, then joins with
/// cyclic subgroups until nothing new appears.
pub fn all_subgroups(g: &Group, budget: usize) -> Result<SubgroupLattice> {
    if g.order() > budget {
        return Err(Error::LatticeBudgetExceeded { order: g.order(), budget });
    }
    let mut found: HashMap<FixedBitSet, Subgroup> = HashMap::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for x in 0..g.order() {
        let c = g.closure(&[x]);
        if !found.contains_key(c.mask()) {
            found.insert(c.mask().clone(), c.clone());
            cyclic.push((x, c));
        }
    }
    let mut work: Vec<Subgroup> = found.values().cloned().collect();
    work.sort();
    while let Some(s) = work.pop() {
        for (x, c) in &cyclic {
            if c.is_subset(&s) {
                continue;
            }
            let j = g.join_elements(&s, &[*x]);
            if !found.contains_key(j.mask()) {
                found.insert(j.mask().clone(), j.clone());
                work.push(j);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found.into_values().collect();
    subgroups.sort();
    Ok(SubgroupLattice::from_sorted(g, subgroups))
}

impl SubgroupLattice {
    fn from_sorted(g: &Group, subgroups: Vec<Subgroup>) -> SubgroupLattice {
        let n = subgroups.len();
        let index: HashMap<FixedBitSet, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.mask().clone(), i)).collect();
        let mut overgroups = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i..n {
                let (a, b) = (&subgroups[i], &subgroups[j]);
                if b.order() % a.order() == 0 && a.is_subset(b) {
                    overgroups[i].insert(j);
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut conjugacy_classes = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = conjugacy_classes.len();
            let mut class = vec![i];
            class_of[i] = c;
            let mut head = 0;
            while head < class.len() {
                let s = &subgroups[class[head]];
                head += 1;
                for &x in g.generators() {
                    let t = g.conjugate_subgroup(s, x);
                    let j = index[t.mask()];
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        class.push(j);
                    }
                }
            }
            class.sort_unstable();
            conjugacy_classes.push(class);
        }
        SubgroupLattice { subgroups, index, overgroups, conjugacy_classes }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.mask()).copied()
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Indices of subgroups containing subgroup `i` (including `i`), ascending.
    pub fn overgroups(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.overgroups[i].ones()
    }

    /// Indices of subgroups contained in subgroup `i` (including `i`), ascending.
    pub fn subgroups_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..=i).filter(move |&j| self.overgroups[j].contains(i))
    }

    pub fn contains(&self, small: usize, big: usize) -> bool {
        self.overgroups[small].contains(big)
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.conjugacy_classes
    }

    /// Proper subgroups not contained in any other proper subgroup.
    pub fn maximal_subgroups(&self) -> Vec<usize> {
        let top = self.whole_index();
        (0..top)
            .filter(|&i| self.overgroups(i).all(|j| j == i || j == top))
            .collect()
    }

    /// Intersection of the maximal subgroups.
    pub fn frattini(&self) -> Subgroup {
        let mut out = self.subgroups[self.whole_index()].clone();
        for i in self.maximal_subgroups() {
            out = out.intersection(&self.subgroups[i]);
        }
        out
    }
}

pub fn frattini(g: &Group, budget: usize) -> Result<Subgroup> {
    Ok(all_subgroups(g, budget)?.frattini())
}

/// All normal subgroups, sorted by (order, member list). Computed from the
/// normal closures of single elements, closed under products, and cached on
/// the group.
pub fn normal_subgroups(g: &Group) -> &[Subgroup] {
    if let Some(n) = g.normals.get() {
        return n;
    }
    let mut seeds: Vec<Subgroup> = Vec::new();
    for class in g.conjugacy_classes() {
        let n = g.normal_closure(&class[..1]);
        if !seeds.contains(&n) {
            seeds.push(n);
        }
    }
    let mut found: HashMap<FixedBitSet, Subgroup> = HashMap::new();
    let mut work = Vec::new();
    for s in &seeds {
        if found.insert(s.mask().clone(), s.clone()).is_none() {
            work.push(s.clone());
        }
    }
    while let Some(n) = work.pop() {
        for s in &seeds {
            if s.is_subset(&n) {
                continue;
            }
            let j = g.join(&n, s);
            if !found.contains_key(j.mask()) {
                found.insert(j.mask().clone(), j.clone());
                work.push(j);
            }
        }
    }
    let mut list: Vec<Subgroup> = found.into_values().collect();
    list.sort();
    let _ = g.normals.set(list);
    g.normals.get().expect("just set")
}

/// Normal subgroups minimal among the nontrivial ones.
pub fn minimal_normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let normals = normal_subgroups(g);
    normals
        .iter()
        .filter(|n| !n.is_trivial())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subset(n))
        })
        .cloned()
        .collect()
}

/// An ascending series of normal subgroups with no normal subgroup strictly
/// between consecutive terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    pub terms: Vec<Subgroup>,
}

impl ChiefSeries {
    /// `(bottom, top)` pairs of consecutive terms.
    pub fn factors(&self) -> impl Iterator<Item = (&Subgroup, &Subgroup)> {
        self.terms.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors().map(|(k, h)| h.order() / k.order()).collect()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.order()).collect()
    }

    /// Pairs each factor with a distinct `g`-isomorphic factor of `other`.
    pub fn factors_match(&self, g: &Group, other: &ChiefSeries, budget: u64) -> Result<bool> {
        if self.terms.len() != other.terms.len() {
            return Ok(false);
        }
        let theirs: Vec<(&Subgroup, &Subgroup)> = other.factors().collect();
        let mut used = vec![false; theirs.len()];
        for (k, h) in self.factors() {
            let mut matched = false;
            for (i, &(k2, h2)) in theirs.iter().enumerate() {
                if !used[i] && sections_g_isomorphic(g, (h, k), (h2, k2), budget)? {
                    used[i] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Smallest (then lexicographically least) normal subgroup `M` of `g` with
/// `bottom < M ≤ top`; such an `M` is minimal over `bottom`.
fn least_normal_step(g: &Group, bottom: &Subgroup, top: &Subgroup) -> Subgroup {
    let mut best: Option<Subgroup> = None;
    for &x in top.elements() {
        if bottom.contains(x) {
            continue;
        }
        let mut seed = bottom.elements().to_vec();
        seed.push(x);
        let m = g.normal_closure(&seed);
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    }
    best.expect("top strictly contains bottom")
}

/// A chief series having `n` as a term, refined by least minimal-normal
/// steps below and above `n`.
pub fn chief_series_through(g: &Group, n: &Subgroup) -> Result<ChiefSeries> {
    g.check_normal(n)?;
    let mut terms = vec![Subgroup::trivial(g)];
    for top in [n.clone(), Subgroup::whole(g)] {
        while terms.last().expect("nonempty").order() < top.order() {
            let next = least_normal_step(g, terms.last().expect("nonempty"), &top);
            terms.push(next);
        }
    }
    Ok(ChiefSeries { terms })
}

pub fn chief_series(g: &Group) -> ChiefSeries {
    chief_series_through(g, &Subgroup::trivial(g)).expect("trivial subgroup is normal")
}

/// The normal Hall subgroup for a set of primes, if one exists. It is the
/// subgroup generated by all elements whose order involves only `primes`.
pub fn normal_hall_subgroup(g: &Group, primes: &[u64]) -> Option<Subgroup> {
    let target = part(g.order() as u64, |p| primes.contains(&p)) as usize;
    let pi_elements: Vec<usize> = (0..g.order())
        .filter(|&x| part(g.element_order(x) as u64, |p| primes.contains(&p)) == g.element_order(x) as u64)
        .collect();
    if pi_elements.len() != target {
        return None;
    }
    let h = g.closure(&pi_elements);
    (h.order() == target).then_some(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, symmetric};

    fn orders(list: &[Subgroup]) -> Vec<usize> {
        list.iter().map(|s| s.order()).collect()
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(all_subgroups(&Group::trivial(), 200).unwrap().len(), 1);
        assert_eq!(all_subgroups(&symmetric(3, 512).unwrap(), 200).unwrap().len(), 6);
        let s4 = all_subgroups(&symmetric(4, 512).unwrap(), 200).unwrap();
        assert_eq!(s4.len(), 30);
        assert_eq!(s4.conjugacy_classes().len(), 11);
        assert!(matches!(
            all_subgroups(&alternating(5, 512).unwrap(), 50),
            Err(Error::LatticeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn normal_subgroup_lists() {
        let s4 = symmetric(4, 512).unwrap();
        assert_eq!(orders(normal_subgroups(&s4)), vec![1, 4, 12, 24]);
        let a4 = alternating(4, 512).unwrap();
        assert_eq!(orders(normal_subgroups(&a4)), vec![1, 4, 12]);
        let c12 = cyclic(12).unwrap();
        assert_eq!(normal_subgroups(&c12).len(), all_subgroups(&c12, 200).unwrap().len());
        assert_eq!(orders(&minimal_normal_subgroups(&s4)), vec![4]);
        assert_eq!(orders(&minimal_normal_subgroups(&cyclic(6).unwrap())), vec![2, 3]);
        let a5 = alternating(5, 512).unwrap();
        assert_eq!(orders(&minimal_normal_subgroups(&a5)), vec![60]);
    }

    #[test]
    fn chief_series_of_s4_and_a4() {
        let s4 = symmetric(4, 512).unwrap();
        let cs = chief_series(&s4);
        assert_eq!(cs.orders(), vec![1, 4, 12, 24]);
        assert_eq!(cs.factor_orders(), vec![4, 3, 2]);
        let whole = Subgroup::whole(&s4);
        assert_eq!(chief_series_through(&s4, &whole).unwrap(), cs);
        let a4 = alternating(4, 512).unwrap();
        let v4 = normal_subgroups(&a4)[1].clone();
        assert_eq!(chief_series_through(&a4, &v4).unwrap().orders(), vec![1, 4, 12]);
        let c2 = s4.closure(&[1]);
        assert!(chief_series_through(&s4, &c2).is_err());
    }

    #[test]
    fn frattini_examples() {
        assert!(frattini(&Group::trivial(), 200).unwrap().is_trivial());
        assert!(frattini(&symmetric(4, 512).unwrap(), 200).unwrap().is_trivial());
        let d4 = dihedral(4).unwrap();
        let phi = frattini(&d4, 200).unwrap();
        assert_eq!(phi.order(), 2);
        assert_eq!(phi, d4.center());
    }

    #[test]
    fn hall_subgroups() {
        let s3 = symmetric(3, 512).unwrap();
        assert_eq!(normal_hall_subgroup(&s3, &[2, 3]).unwrap().order(), 6);
        assert_eq!(normal_hall_subgroup(&s3, &[3]).unwrap(), s3.derived_subgroup());
        assert!(normal_hall_subgroup(&s3, &[2]).is_none());
        assert!(normal_hall_subgroup(&s3, &[5]).unwrap().is_trivial());
    }
}
