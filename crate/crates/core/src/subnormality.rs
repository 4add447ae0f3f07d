//! Deciders for subnormality, Kegel (K-F-) subnormality, F-subnormality and
//! σ-subnormality, each returning a witness chain `A = A_0 ≤ ... ≤ A_n = G`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::Result;
use crate::formations::{Formation, SigmaPartition};
use crate::group::{Group, Subgroup};
use crate::lattice::{all_subgroups, SubgroupLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// `A_{i-1}` is normal in `A_i`.
    Normal,
    /// `A_i / core(A_i, A_{i-1})` passes the step predicate.
    FStep,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Normal => write!(f, "normal-step"),
            StepKind::FStep => write!(f, "f-step"),
        }
    }
}

/// Which steps a chain may take.
#[derive(Clone, Copy)]
pub enum StepRule<'a> {
    /// Normal steps only.
    Normal,
    /// Normal steps, or core-quotient in F.
    Kegel(&'a Formation),
    /// Core-quotient in F only.
    FOnly(&'a Formation),
    /// Normal steps, or σ-primary core-quotient.
    Sigma(&'a SigmaPartition),
}

impl StepRule<'_> {
    /// The tag of an admissible step `x ≤ y`, preferring a normal step.
    pub fn step(&self, g: &Group, x: &Subgroup, y: &Subgroup) -> Result<Option<StepKind>> {
        if !x.is_subset(y) {
            return Ok(None);
        }
        let normal_allowed = !matches!(self, StepRule::FOnly(_));
        if normal_allowed && g.is_normal_in(x, y) {
            return Ok(Some(StepKind::Normal));
        }
        let passes = match self {
            StepRule::Normal => false,
            StepRule::Kegel(f) | StepRule::FOnly(f) => {
                let core = g.core(y, x);
                let e = g.restrict(y);
                let q = e.group.quotient_group(&e.localize(&core))?;
                f.contains(&q)
            }
            StepRule::Sigma(sigma) => {
                let core = g.core(y, x);
                sigma.is_primary_order((y.order() / core.order()) as u64)
            }
        };
        Ok(passes.then_some(StepKind::FStep))
    }
}

/// An ascending chain with a tag per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub terms: Vec<Subgroup>,
    pub steps: Vec<StepKind>,
}

impl WitnessChain {
    /// Re-checks containment and every tagged step.
    pub fn validate(&self, g: &Group, rule: StepRule<'_>) -> Result<bool> {
        if self.terms.len() != self.steps.len() + 1 {
            return Ok(false);
        }
        if self.terms.last().map(|t| t.order()) != Some(g.order()) {
            return Ok(false);
        }
        for (w, &kind) in self.terms.windows(2).zip(&self.steps) {
            let (x, y) = (&w[0], &w[1]);
            if !x.is_subset(y) {
                return Ok(false);
            }
            let ok = match kind {
                StepKind::Normal => !matches!(rule, StepRule::FOnly(_)) && g.is_normal_in(x, y),
                StepKind::FStep => {
                    // evaluate the f-part alone
                    let f_only = match rule {
                        StepRule::Normal => return Ok(false),
                        StepRule::Kegel(f) | StepRule::FOnly(f) => StepRule::FOnly(f),
                        StepRule::Sigma(s) => StepRule::Sigma(s),
                    };
                    match f_only {
                        StepRule::Sigma(s) => {
                            let core = g.core(y, x);
                            s.is_primary_order((y.order() / core.order()) as u64)
                        }
                        _ => f_only.step(g, x, y)? == Some(StepKind::FStep),
                    }
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orders with step tags, e.g. `8 --f-step--> 24`.
    pub fn render(&self) -> String {
        let mut out = self.terms[0].order().to_string();
        for (t, k) in self.terms[1..].iter().zip(&self.steps) {
            out.push_str(&format!(" --{k}--> {}", t.order()));
        }
        out
    }
}

/// Breadth-first chain search over a subgroup lattice with memoised steps.
pub struct ChainSearch<'a> {
    g: &'a Group,
    lattice: &'a SubgroupLattice,
    rule: StepRule<'a>,
    memo: HashMap<(usize, usize), Option<StepKind>>,
}

impl<'a> ChainSearch<'a> {
    pub fn new(g: &'a Group, lattice: &'a SubgroupLattice, rule: StepRule<'a>) -> ChainSearch<'a> {
        ChainSearch { g, lattice, rule, memo: HashMap::new() }
    }

    fn edge(&mut self, i: usize, j: usize) -> Result<Option<StepKind>> {
        if let Some(&e) = self.memo.get(&(i, j)) {
            return Ok(e);
        }
        let e = self.rule.step(self.g, self.lattice.get(i), self.lattice.get(j))?;
        self.memo.insert((i, j), e);
        Ok(e)
    }

    /// A shortest chain from subgroup `from` up to subgroup `to`, ties
    /// broken by lattice index.
    pub fn witness(&mut self, from: usize, to: usize) -> Result<Option<WitnessChain>> {
        if !self.lattice.contains(from, to) {
            return Ok(None);
        }
        let mut prev: HashMap<usize, (usize, StepKind)> = HashMap::new();
        let mut seen = FixedBitSet::with_capacity(self.lattice.len());
        seen.insert(from);
        let mut queue = VecDeque::from([from]);
        while let Some(i) = queue.pop_front() {
            if i == to {
                break;
            }
            let next: Vec<usize> = self
                .lattice
                .overgroups(i)
                .filter(|&j| j != i && !seen.contains(j) && self.lattice.contains(j, to))
                .collect();
            for j in next {
                if let Some(kind) = self.edge(i, j)? {
                    seen.insert(j);
                    prev.insert(j, (i, kind));
                    queue.push_back(j);
                }
            }
        }
        if !seen.contains(to) {
            return Ok(None);
        }
        let mut terms = vec![to];
        let mut steps = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, kind) = prev[&cur];
            steps.push(kind);
            terms.push(p);
            cur = p;
        }
        terms.reverse();
        steps.reverse();
        Ok(Some(WitnessChain {
            terms: terms.into_iter().map(|i| self.lattice.get(i).clone()).collect(),
            steps,
        }))
    }

    /// Every subgroup with a chain up to subgroup `to`.
    pub fn reachable_to(&mut self, to: usize) -> Result<FixedBitSet> {
        let mut reach = FixedBitSet::with_capacity(self.lattice.len());
        reach.insert(to);
        let mut queue = VecDeque::from([to]);
        while let Some(j) = queue.pop_front() {
            let below: Vec<usize> = self.lattice.subgroups_of(j).filter(|&i| i != j && !reach.contains(i)).collect();
            for i in below {
                if self.edge(i, j)?.is_some() {
                    reach.insert(i);
                    queue.push_back(i);
                }
            }
        }
        Ok(reach)
    }
}

/// Subnormality by normal-closure descent: `N_0 = G`,
/// `N_{k+1} = ncl_{N_k}(A)`, positive iff the descent stops at `A`.
pub fn is_subnormal(g: &Group, a: &Subgroup) -> Option<WitnessChain> {
    let mut terms = vec![Subgroup::whole(g)];
    loop {
        let cur = terms.last().expect("nonempty");
        if cur == a {
            break;
        }
        let next = g.normal_closure_in(cur, a.elements());
        if next.order() == cur.order() {
            return None;
        }
        terms.push(next);
    }
    terms.reverse();
    let steps = vec![StepKind::Normal; terms.len() - 1];
    Some(WitnessChain { terms, steps })
}

fn chain_to_whole(g: &Group, a: &Subgroup, rule: StepRule<'_>, lattice_budget: usize) -> Result<Option<WitnessChain>> {
    let lattice = all_subgroups(g, lattice_budget)?;
    let from = lattice.index_of(a).expect("every subgroup is in the lattice");
    ChainSearch::new(g, &lattice, rule).witness(from, lattice.whole_index())
}

pub fn is_k_f_subnormal(g: &Group, a: &Subgroup, f: &Formation, lattice_budget: usize) -> Result<Option<WitnessChain>> {
    chain_to_whole(g, a, StepRule::Kegel(f), lattice_budget)
}

pub fn is_f_subnormal(g: &Group, a: &Subgroup, f: &Formation, lattice_budget: usize) -> Result<Option<WitnessChain>> {
    chain_to_whole(g, a, StepRule::FOnly(f), lattice_budget)
}

pub fn is_sigma_subnormal(
    g: &Group,
    a: &Subgroup,
    sigma: &SigmaPartition,
    lattice_budget: usize,
) -> Result<Option<WitnessChain>> {
    chain_to_whole(g, a, StepRule::Sigma(sigma), lattice_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::symmetric;
    use crate::lattice::normal_subgroups;

    fn transposition_subgroup(g: &Group) -> Subgroup {
        g.closure(&[(1..g.order()).find(|&x| g.element_order(x) == 2).unwrap()])
    }

    fn sylow2(g: &Group) -> Subgroup {
        let l = all_subgroups(g, 200).unwrap();
        l.subgroups().iter().find(|s| s.order() == 8).unwrap().clone()
    }

    #[test]
    fn subnormal_descent() {
        let s4 = symmetric(4, 512).unwrap();
        let whole = Subgroup::whole(&s4);
        assert!(is_subnormal(&s4, &whole).unwrap().steps.is_empty());
        let a4 = normal_subgroups(&s4)[2].clone();
        assert_eq!(is_subnormal(&s4, &a4).unwrap().render(), "12 --normal-step--> 24");
        let s3 = symmetric(3, 512).unwrap();
        assert!(is_subnormal(&s3, &transposition_subgroup(&s3)).is_none());
    }

    #[test]
    fn kegel_chains() {
        let s4 = symmetric(4, 512).unwrap();
        let u = Formation::supersoluble();
        let d4 = sylow2(&s4);
        let w = is_k_f_subnormal(&s4, &d4, &u, 200).unwrap().unwrap();
        assert_eq!(w.render(), "8 --f-step--> 24");
        assert!(w.validate(&s4, StepRule::Kegel(&u)).unwrap());
        let s3 = symmetric(3, 512).unwrap();
        let n = Formation::nilpotent();
        assert!(is_k_f_subnormal(&s3, &transposition_subgroup(&s3), &n, 200).unwrap().is_none());
        let whole = Subgroup::whole(&s3);
        assert!(is_k_f_subnormal(&s3, &whole, &n, 200).unwrap().unwrap().steps.is_empty());
    }

    #[test]
    fn f_subnormal_chains() {
        let s4 = symmetric(4, 512).unwrap();
        let u = Formation::supersoluble();
        assert!(is_f_subnormal(&s4, &sylow2(&s4), &u, 200).unwrap().is_some());
        let a4 = normal_subgroups(&s4)[2].clone();
        let n = Formation::nilpotent();
        let w = is_f_subnormal(&s4, &a4, &n, 200).unwrap().unwrap();
        assert_eq!(w.steps, vec![StepKind::FStep]);
        assert!(w.validate(&s4, StepRule::FOnly(&n)).unwrap());
    }

    #[test]
    fn sigma_chains() {
        let s4 = symmetric(4, 512).unwrap();
        let s23 = SigmaPartition::parse("[[2,3]]").unwrap();
        let lattice = all_subgroups(&s4, 200).unwrap();
        for a in lattice.subgroups() {
            assert!(is_sigma_subnormal(&s4, a, &s23, 200).unwrap().is_some());
        }
        let s3 = symmetric(3, 512).unwrap();
        let singles = SigmaPartition::singletons();
        assert!(is_sigma_subnormal(&s3, &transposition_subgroup(&s3), &singles, 200).unwrap().is_none());
    }
}
