use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::families::{Family, Selector};
use crate::group::Group;
use crate::iso::{fingerprint, is_isomorphic, Fingerprint};
use crate::numtheory::{is_prime, prime_divisors};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: Group,
    /// Family selector, product selector, or source file.
    pub provenance: String,
}

/// A deterministic, isomorphism-deduplicated list of small groups.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub max_order: usize,
    pub user_files: usize,
    pub duplicates_dropped: usize,
}

fn base_families(max_order: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(Family::Cyclic(n));
        match n {
            6 => out.push(Family::Symmetric(3)),
            24 => out.push(Family::Symmetric(4)),
            12 => out.push(Family::Alternating(4)),
            60 => out.push(Family::Alternating(5)),
            _ => {}
        }
        if n % 2 == 0 && n >= 6 {
            out.push(Family::Dihedral(n / 2));
        }
        if n >= 8 && n.is_power_of_two() {
            out.push(Family::Quaternion(n));
        }
        let primes = prime_divisors(n as u64);
        if primes.len() == 1 && !is_prime(n as u64) {
            let p = primes[0] as usize;
            let k = std::iter::successors(Some(n), |m| (*m > 1).then_some(m / p)).count() - 1;
            out.push(Family::ElemAbelian { p, k });
        }
    }
    out
}

impl Catalog {
    /// Families up to `max_order`, pairwise direct products of the
    /// nontrivial ones, then `extra` groups; the first representative of
    /// each isomorphism class is kept and entries are sorted by order.
    pub fn generate(max_order: usize, order_cap: usize, extra: Vec<CatalogEntry>) -> Result<Catalog> {
        if max_order == 0 {
            return Err(Error::InvalidConfig("max_order must be positive".into()));
        }
        if max_order > order_cap {
            return Err(Error::OrderCapExceeded { order: max_order, cap: order_cap });
        }
        for e in &extra {
            if e.group.order() > max_order {
                return Err(Error::InvalidConfig(format!(
                    "{} has order {} above max_order {max_order}",
                    e.provenance,
                    e.group.order()
                )));
            }
        }
        let mut dedup = Dedup::default();
        let mut base = Vec::new();
        for fam in base_families(max_order) {
            let g = fam.build(order_cap)?.with_label(fam.to_string());
            if dedup.insert(&g)? {
                base.push((Selector::Family(fam), g));
            }
        }
        let mut candidates: Vec<(usize, usize, CatalogEntry)> = base
            .iter()
            .enumerate()
            .map(|(i, (sel, g))| (g.order(), i, CatalogEntry { group: g.clone(), provenance: sel.to_string() }))
            .collect();
        let nontrivial: Vec<&(Selector, Group)> = base.iter().filter(|(_, g)| g.order() > 1).collect();
        let mut products = Vec::new();
        for (i, (sa, a)) in nontrivial.iter().enumerate() {
            for (sb, b) in &nontrivial[i..] {
                if a.order() * b.order() > max_order {
                    continue;
                }
                let sel = Selector::Product(Box::new(sa.clone()), Box::new(sb.clone()));
                let g = a.direct_product(b)?.with_order_cap(order_cap).with_label(sel.to_string());
                products.push((g.order(), sel, g));
            }
        }
        products.sort_by_key(|(n, _, _)| *n);
        for (n, sel, g) in products {
            if dedup.insert(&g)? {
                let idx = candidates.len();
                candidates.push((n, idx, CatalogEntry { group: g, provenance: sel.to_string() }));
            }
        }
        candidates.sort_by_key(|(n, i, _)| (*n, *i));
        let mut entries: Vec<CatalogEntry> = candidates.into_iter().map(|(_, _, e)| e).collect();
        let user_files = extra.len();
        for e in extra {
            if dedup.insert(&e.group)? {
                entries.push(e);
            }
        }
        Ok(Catalog { entries, max_order, user_files, duplicates_dropped: dedup.dropped })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries whose order is at most `max_order`.
    pub fn restricted(&self, max_order: usize) -> Catalog {
        Catalog {
            entries: self.entries.iter().filter(|e| e.group.order() <= max_order).cloned().collect(),
            max_order: max_order.min(self.max_order),
            user_files: self.user_files,
            duplicates_dropped: self.duplicates_dropped,
        }
    }

    pub fn coverage(&self) -> String {
        let mut s = format!(
            "{} groups of order <= {}: cyclic, dihedral, quaternion, elementary abelian, sym(<=4), alt(<=5), pairwise direct products",
            self.entries.len(),
            self.max_order
        );
        if self.user_files > 0 {
            s.push_str(&format!(", {} user file(s)", self.user_files));
        }
        s.push_str("; up to isomorphism; not every group of these orders is present");
        s
    }
}

#[derive(Default)]
struct Dedup {
    buckets: HashMap<Fingerprint, Vec<Group>>,
    dropped: usize,
}

impl Dedup {
    /// True if `g` is new up to isomorphism.
    fn insert(&mut self, g: &Group) -> Result<bool> {
        let bucket = self.buckets.entry(fingerprint(g)).or_default();
        for h in bucket.iter() {
            if is_isomorphic(g, h, crate::iso::DEFAULT_SEARCH_BUDGET)?.is_some() {
                self.dropped += 1;
                return Ok(false);
            }
        }
        bucket.push(g.clone());
        Ok(true)
    }
}
