//! Semidirect products: general `M ⋊ A`, the section construction
//! `[H/K](G/L)` under conjugation, and holomorphs.

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::iso::automorphisms;

/// A normal section `H/K` realised as a group, with the coset labelling
/// needed to act on it by conjugation.
pub struct SectionAction {
    pub quotient: Group,
    labels: Vec<u32>,
    reps: Vec<usize>,
}

impl SectionAction {
    /// The coset of `x r x^-1`, where `r` represents coset `q`.
    pub fn act(&self, g: &Group, x: usize, q: usize) -> usize {
        self.labels[g.conj(x, self.reps[q])] as usize
    }

    pub fn label(&self, x: usize) -> Option<usize> {
        match self.labels[x] {
            u32::MAX => None,
            l => Some(l as usize),
        }
    }
}

/// `H/K` as a group; the caller guarantees `K ⊴ H`.
pub fn section_action(g: &Group, h: &Subgroup, k: &Subgroup) -> SectionAction {
    let (labels, reps) = g.coset_labels(h, k);
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = labels[g.mul(a, b)];
        }
    }
    let inv = reps.iter().map(|&a| labels[g.inv(a)]).collect();
    let quotient = Group::from_parts(q, table, inv, format!("{}/{}", h.order(), k.order()), g.order_cap());
    SectionAction { quotient, labels, reps }
}

/// `M ⋊ A` where `action[a]` is the image table of the automorphism of `M`
/// induced by `a` (a left action). The pair `(m, a)` has index
/// `m * |A| + a`, and `(m1, a1)(m2, a2) = (m1 · a1(m2), a1 a2)`.
pub fn semidirect_product(normal: &Group, acting: &Group, action: &[Vec<usize>], cap: usize) -> Result<Group> {
    let (n, m) = (normal.order(), acting.order());
    if action.len() != m || action.iter().any(|a| a.len() != n) {
        return Err(Error::NotAGroup("action table has the wrong shape".into()));
    }
    let order = n * m;
    if order > cap {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    for &a in acting.generators() {
        let phi = &action[a];
        for &x in normal.generators() {
            for y in 0..n {
                if phi[normal.mul(x, y)] != normal.mul(phi[x], phi[y]) {
                    return Err(Error::NotAGroup(format!("action of {a} is not a homomorphism")));
                }
            }
        }
        for b in 0..m {
            let ab = &action[acting.mul(a, b)];
            if (0..n).any(|x| ab[x] != phi[action[b][x]]) {
                return Err(Error::NotAGroup(format!("action is not compatible on ({a}, {b})")));
            }
        }
    }
    if action[0].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(Error::NotAGroup("identity does not act trivially".into()));
    }
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (m1, a1) = (x / m, x % m);
        let act = &action[a1];
        for y in 0..order {
            let (m2, a2) = (y / m, y % m);
            table[x * order + y] = (normal.mul(m1, act[m2]) * m + acting.mul(a1, a2)) as u32;
        }
    }
    Ok(Group::from_table_unchecked(
        order,
        table,
        format!("{} : {}", normal.label(), acting.label()),
        cap,
    ))
}

/// The pair `(H/K, G/L)` with `G/L` acting on `H/K` by conjugation.
#[derive(Clone, Debug)]
pub struct SectionPair {
    pub normal: Group,
    pub acting: Group,
    /// `action[a]` is the image table of acting element `a`.
    pub action: Vec<Vec<usize>>,
}

impl SectionPair {
    pub fn product(&self, cap: usize) -> Result<Group> {
        semidirect_product(&self.normal, &self.acting, &self.action, cap)
    }
}

/// Builds the pair behind `[H/K](G/L)`.
///
/// `H` and `K` must be normal in `G` with `K ≤ H`, and `L` must be normal in
/// `G` and centralize `H/K`.
pub fn section_pair(g: &Group, h: &Subgroup, k: &Subgroup, l: &Subgroup) -> Result<SectionPair> {
    if !k.is_subset(h) {
        return Err(Error::NotASubgroup("bottom of the section is not inside the top".into()));
    }
    g.check_normal(h)?;
    g.check_normal(k)?;
    g.check_normal(l)?;
    for &y in &g.subgroup_generators(l) {
        for &x in h.elements() {
            if !k.contains(g.mul(g.inv(x), g.conj(y, x))) {
                return Err(Error::NotCentralized { element: x, by: y });
            }
        }
    }
    let order = (h.order() / k.order()) * (g.order() / l.order());
    if order > g.order_cap() {
        return Err(Error::OrderCapExceeded { order, cap: g.order_cap() });
    }
    let section = section_action(g, h, k);
    let top = section_action(g, &Subgroup::whole(g), l);
    let action = top
        .reps
        .iter()
        .map(|&rep| (0..section.quotient.order()).map(|q| section.act(g, rep, q)).collect())
        .collect();
    Ok(SectionPair { normal: section.quotient, acting: top.quotient, action })
}

/// `[H/K](G/L)`: the section `H/K` extended by `G/L` acting by conjugation,
/// under the requirements of [`section_pair`].
pub fn semidirect_section(g: &Group, h: &Subgroup, k: &Subgroup, l: &Subgroup) -> Result<Group> {
    let pair = section_pair(g, h, k, l)?;
    Ok(pair.product(g.order_cap())?.with_label(format!(
        "[{}/{}]({}/{})",
        h.order(),
        k.order(),
        g.order(),
        l.order()
    )))
}

/// `G ⋊ Aut(G)`.
pub fn holomorph(g: &Group, budget: u64) -> Result<Group> {
    let aut = crate::iso::automorphism_group(g, budget)?;
    let order = g.order() * aut.group.order();
    if order > g.order_cap() {
        return Err(Error::OrderCapExceeded { order, cap: g.order_cap() });
    }
    Ok(semidirect_product(g, &aut.group, &aut.action, g.order_cap())?.with_label(format!("Hol({})", g.label())))
}

/// `|Hol(G)| = |G| · |Aut(G)|` without building the group.
pub fn holomorph_order(g: &Group, budget: u64) -> Result<u64> {
    Ok(g.order() as u64 * automorphisms(g, budget)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic, elementary_abelian, symmetric};
    use crate::iso::{is_isomorphic, DEFAULT_SEARCH_BUDGET};

    fn iso(a: &Group, b: &Group) -> bool {
        is_isomorphic(a, b, DEFAULT_SEARCH_BUDGET).unwrap().is_some()
    }

    #[test]
    fn s3_from_a3_section() {
        let s3 = symmetric(3, 512).unwrap();
        let a3 = s3.derived_subgroup();
        let one = Subgroup::trivial(&s3);
        let c = s3.centralizer_of_section(&a3, &one);
        assert_eq!(c, a3);
        let x = semidirect_section(&s3, &a3, &one, &c).unwrap();
        x.check_axioms().unwrap();
        assert_eq!(x.order(), 6);
        assert!(iso(&x, &s3));
    }

    #[test]
    fn s4_from_v4_section() {
        let s4 = symmetric(4, 512).unwrap();
        let a4 = s4.derived_subgroup();
        let v4 = s4.commutator_subgroup(&a4, &a4);
        assert_eq!(v4.order(), 4);
        let one = Subgroup::trivial(&s4);
        let x = semidirect_section(&s4, &v4, &one, &v4).unwrap();
        assert_eq!(x.order(), 24);
        assert!(iso(&x, &s4));
    }

    #[test]
    fn trivial_section_is_quotient() {
        let s4 = symmetric(4, 512).unwrap();
        let a4 = s4.derived_subgroup();
        let x = semidirect_section(&s4, &a4, &a4, &a4).unwrap();
        assert!(iso(&x, &s4.quotient_group(&a4).unwrap()));
    }

    #[test]
    fn section_errors() {
        let s3 = symmetric(3, 512).unwrap();
        let a3 = s3.derived_subgroup();
        let one = Subgroup::trivial(&s3);
        assert!(matches!(
            semidirect_section(&s3, &a3, &one, &one),
            Ok(ref x) if x.order() == 18
        ));
        let whole = Subgroup::whole(&s3);
        assert!(matches!(
            semidirect_section(&s3, &a3, &one, &whole),
            Err(Error::NotCentralized { .. })
        ));
        let c2 = s3.closure(&[(1..6).find(|&x| s3.element_order(x) == 2).unwrap()]);
        assert!(matches!(semidirect_section(&s3, &c2, &one, &whole), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn holomorphs() {
        assert_eq!(holomorph(&Group::trivial(), DEFAULT_SEARCH_BUDGET).unwrap().order(), 1);
        let h = holomorph(&cyclic(3).unwrap(), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(h.order(), 6);
        assert!(iso(&h, &symmetric(3, 512).unwrap()));
        let v = holomorph(&elementary_abelian(2, 2).unwrap(), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(v.order(), 24);
        v.check_axioms().unwrap();
    }
}
