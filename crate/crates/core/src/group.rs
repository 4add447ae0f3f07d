//! Dense Cayley-table groups, subgroups and homomorphisms.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Every
//! group carries an order cap that constructions derived from it (products,
//! semidirect products, holomorphs) refuse to exceed.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: usize = 512;

/// Orders up to this bound get the full O(n^3) associativity check; larger
/// tables use Light's test over a generating set, which is also exact.
const FULL_ASSOCIATIVITY_CHECK: usize = 64;

pub struct Group {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    element_orders: Vec<u32>,
    label: String,
    order_cap: usize,
    generators: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<Vec<usize>>>,
    pub(crate) normals: OnceLock<Vec<Subgroup>>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            order: self.order,
            table: self.table.clone(),
            inv: self.inv.clone(),
            element_orders: self.element_orders.clone(),
            label: self.label.clone(),
            order_cap: self.order_cap,
            generators: self.generators.clone(),
            classes: self.classes.clone(),
            normals: self.normals.clone(),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    /// Builds a group from a full multiplication table, validating the group
    /// axioms. The identity is moved to index 0 if it sits elsewhere.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {x} in row {i} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let swap = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[swap(a) * n + swap(b)] = swap(rows[a][b]) as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g * n + h] == 0 && table[h * n + g] == 0)
                .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", swap(g))))?;
            inv[g] = h as u32;
        }
        let mut g = Group::raw(n, table, inv, vec![0; n], format!("table{n}"), DEFAULT_ORDER_CAP.max(n));
        g.check_associativity()
            .map_err(|(a, b, c)| {
                Error::NotAGroup(format!(
                    "associativity fails on ({}, {}, {})",
                    swap(a),
                    swap(b),
                    swap(c)
                ))
            })?;
        g.element_orders = compute_orders(&g);
        Ok(g)
    }

    /// Closes a set of permutations under composition. Elements are numbered
    /// in breadth-first order from the identity.
    pub fn from_permutation_gens(degree: usize, gens: &[Perm], cap: usize) -> Result<Group> {
        Ok(Self::from_permutation_gens_with_elements(degree, gens, cap)?.0)
    }

    /// As [`Group::from_permutation_gens`], also returning the permutation of
    /// each element index.
    pub fn from_permutation_gens_with_elements(
        degree: usize,
        gens: &[Perm],
        cap: usize,
    ) -> Result<(Group, Vec<Perm>)> {
        for p in gens {
            if p.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {p} has degree {}, expected {degree}",
                    p.degree()
                )));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index = std::collections::HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for s in gens {
                let y = x.then(s);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(Error::OrderCapExceeded { order: cap + 1, cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                table[a * n + b] = index[&pa.then(pb)] as u32;
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()] as u32).collect();
        let g = Group::from_parts(n, table, inv, format!("perm{degree}"), cap.max(n));
        Ok((g, elements))
    }

    /// Assembles a group from a table already known to satisfy the axioms
    /// with identity 0.
    pub(crate) fn from_parts(n: usize, table: Vec<u32>, inv: Vec<u32>, label: String, cap: usize) -> Group {
        let mut g = Group::raw(n, table, inv, vec![0; n], label, cap);
        g.element_orders = compute_orders(&g);
        g
    }

    /// As [`Group::from_parts`], computing inverses from the table.
    pub(crate) fn from_table_unchecked(n: usize, table: Vec<u32>, label: String, cap: usize) -> Group {
        let mut inv = vec![0u32; n];
        for g in 0..n {
            for h in 0..n {
                if table[g * n + h] == 0 {
                    inv[g] = h as u32;
                    break;
                }
            }
        }
        Group::from_parts(n, table, inv, label, cap)
    }

    fn raw(n: usize, table: Vec<u32>, inv: Vec<u32>, orders: Vec<u32>, label: String, cap: usize) -> Group {
        Group {
            order: n,
            table,
            inv,
            element_orders: orders,
            label,
            order_cap: cap,
            generators: OnceLock::new(),
            classes: OnceLock::new(),
            normals: OnceLock::new(),
        }
    }

    pub fn trivial() -> Group {
        Group::from_parts(1, vec![0], vec![0], "1".into(), DEFAULT_ORDER_CAP)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn with_order_cap(mut self, cap: usize) -> Group {
        self.order_cap = cap.max(self.order);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders[g] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, g);
        }
        x
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks identity, inverse and associativity laws, returning a failing
    /// triple for associativity.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::NotAGroup(format!("0 is not an identity for {g}")));
            }
            if self.mul(g, self.inv(g)) != 0 {
                return Err(Error::NotAGroup(format!("inverse of {g} is wrong")));
            }
        }
        self.check_associativity()
            .map_err(|(a, b, c)| Error::NotAGroup(format!("associativity fails on ({a}, {b}, {c})")))
    }

    fn check_associativity(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.order;
        let middles: Vec<usize> = if n <= FULL_ASSOCIATIVITY_CHECK {
            (0..n).collect()
        } else {
            let gens = self.greedy_generators();
            // Light's test is only exact if the generators reach everything
            // by right multiplication from the identity.
            if self.closure_raw(&gens).count_ones(..) != n {
                (0..n).collect()
            } else {
                gens
            }
        };
        for &b in &middles {
            for a in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// A small generating set, chosen greedily from elements of largest order.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| self.greedy_generators())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut pool: Vec<usize> = (1..self.order).collect();
        pool.sort_by_key(|&g| (std::cmp::Reverse(self.element_orders.get(g).copied().unwrap_or(0)), g));
        self.greedy_generators_from(&pool)
    }

    fn greedy_generators_from(&self, pool: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = FixedBitSet::with_capacity(self.order);
        current.insert(0);
        for &g in pool {
            if !current.contains(g) {
                gens.push(g);
                current = self.closure_raw(&gens);
            }
        }
        gens
    }

    fn closure_raw(&self, gens: &[usize]) -> FixedBitSet {
        let mut seed = FixedBitSet::with_capacity(self.order);
        seed.insert(0);
        self.closure_from_raw(seed, gens)
    }

    fn closure_from_raw(&self, mut set: FixedBitSet, gens: &[usize]) -> FixedBitSet {
        let mut queue: VecDeque<usize> = set.ones().collect();
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        Subgroup::from_mask(self.closure_raw(gens))
    }

    /// Greedy generating set of a subgroup.
    pub fn subgroup_generators(&self, s: &Subgroup) -> Vec<usize> {
        let mut pool: Vec<usize> = s.elements().iter().copied().filter(|&x| x != 0).collect();
        pool.sort_by_key(|&g| (std::cmp::Reverse(self.element_orders[g]), g));
        self.greedy_generators_from(&pool)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.is_subset(b) {
            return b.clone();
        }
        if b.is_subset(a) {
            return a.clone();
        }
        let mut gens = self.subgroup_generators(a);
        gens.extend(self.subgroup_generators(b));
        let mut seed = a.mask().clone();
        seed.union_with(b.mask());
        Subgroup::from_mask(self.closure_from_raw(seed, &gens))
    }

    /// The subgroup generated by a subgroup and extra elements.
    pub fn join_elements(&self, a: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = self.subgroup_generators(a);
        gens.extend_from_slice(extra);
        Subgroup::from_mask(self.closure_from_raw(a.mask().clone(), &gens))
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let gens = self.generators().to_vec();
            let mut seen = FixedBitSet::with_capacity(self.order);
            let mut classes = Vec::new();
            for x in 0..self.order {
                if seen.contains(x) {
                    continue;
                }
                seen.insert(x);
                let mut class = vec![x];
                let mut head = 0;
                while head < class.len() {
                    let y = class[head];
                    head += 1;
                    for &g in &gens {
                        let z = self.conj(g, y);
                        if !seen.contains(z) {
                            seen.insert(z);
                            class.push(z);
                        }
                    }
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&Subgroup::whole(self))
    }

    /// `g S g^-1`.
    pub fn conjugate_subgroup(&self, s: &Subgroup, g: usize) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        for &x in s.elements() {
            mask.insert(self.conj(g, x));
        }
        Subgroup::from_mask(mask)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.check_normal(h).is_ok()
    }

    /// Normality in the whole group, with a conjugation witness on failure.
    pub fn check_normal(&self, h: &Subgroup) -> Result<()> {
        for &g in self.generators() {
            for &x in h.elements() {
                if !h.contains(self.conj(g, x)) {
                    return Err(Error::NotNormal { element: x, by: g });
                }
            }
        }
        Ok(())
    }

    /// Whether `x` is a normal subgroup of `y`.
    pub fn is_normal_in(&self, x: &Subgroup, y: &Subgroup) -> bool {
        x.is_subset(y)
            && self
                .subgroup_generators(y)
                .iter()
                .all(|&g| x.elements().iter().all(|&a| x.contains(self.conj(g, a))))
    }

    /// Largest subgroup of `x` normal in `y`: the intersection of the
    /// `y`-conjugates of `x`.
    pub fn core(&self, y: &Subgroup, x: &Subgroup) -> Subgroup {
        let mut mask = x.mask().clone();
        for &g in y.elements() {
            let conj = self.conjugate_subgroup(x, g);
            mask.intersect_with(conj.mask());
        }
        Subgroup::from_mask(mask)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(s);
        let mut mask = FixedBitSet::with_capacity(self.order);
        for g in 0..self.order {
            if gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)) {
                mask.insert(g);
            }
        }
        Subgroup::from_mask(mask)
    }

    /// `{ g : g^-1 h g K = h K for all h in H }`.
    pub fn centralizer_of_section(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        for g in 0..self.order {
            let gi = self.inv(g);
            let ok = h.elements().iter().all(|&x| {
                // (x^-1)(g^-1 x g) must lie in K
                let c = self.mul(self.inv(x), self.mul(self.mul(gi, x), g));
                k.contains(c)
            });
            if ok {
                mask.insert(g);
            }
        }
        Subgroup::from_mask(mask)
    }

    /// Smallest normal subgroup containing `xs`.
    pub fn normal_closure(&self, xs: &[usize]) -> Subgroup {
        self.normal_closure_in(&Subgroup::whole(self), xs)
    }

    /// Smallest normal subgroup of `y` containing `xs`.
    pub fn normal_closure_in(&self, y: &Subgroup, xs: &[usize]) -> Subgroup {
        let ygens = self.subgroup_generators(y);
        let mut mask = FixedBitSet::with_capacity(self.order);
        mask.insert(0);
        let mut gens: Vec<usize> = Vec::new();
        let mut queue: VecDeque<usize> = xs.iter().copied().collect();
        let mut seen_conj = FixedBitSet::with_capacity(self.order);
        while let Some(x) = queue.pop_front() {
            if seen_conj.contains(x) {
                continue;
            }
            seen_conj.insert(x);
            if !mask.contains(x) {
                gens.push(x);
                mask = self.closure_from_raw(mask, &gens);
            }
            for &g in &ygens {
                let c = self.conj(g, x);
                if !seen_conj.contains(c) {
                    queue.push_back(c);
                }
            }
        }
        // Conjugates of every generator lie in the closure, so it is normal.
        Subgroup::from_mask(mask)
    }

    /// `[A, B]`, generated by all commutators `a b a^-1 b^-1`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        mask.insert(0);
        let mut gens = Vec::new();
        for &x in a.elements() {
            for &y in b.elements() {
                let c = self.commutator(x, y);
                if !mask.contains(c) {
                    gens.push(c);
                    mask = self.closure_from_raw(mask, &gens);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = Subgroup::whole(self);
        self.commutator_subgroup(&g, &g)
    }

    /// The subgroup as a standalone group, with its elements numbered in
    /// increasing parent order.
    pub fn restrict(&self, s: &Subgroup) -> Embedded {
        let elems = s.elements().to_vec();
        let m = elems.len();
        let mut local = vec![u32::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            local[x] = i as u32;
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = local[self.mul(a, b)];
            }
        }
        let inv = elems.iter().map(|&x| local[self.inv(x)]).collect();
        let group = Group::from_parts(m, table, inv, format!("{}<{m}>", self.label), self.order_cap);
        Embedded {
            group,
            to_parent: elems,
            local,
        }
    }

    /// Labels the left cosets of `n` inside `domain`, returning a label per
    /// element (`u32::MAX` outside `domain`) and coset representatives in
    /// increasing order.
    pub(crate) fn coset_labels(&self, domain: &Subgroup, n: &Subgroup) -> (Vec<u32>, Vec<usize>) {
        let mut labels = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for &x in domain.elements() {
            if labels[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in n.elements() {
                labels[self.mul(x, m)] = c;
            }
        }
        (labels, reps)
    }

    /// The quotient `G/N` together with the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, Homomorphism)> {
        self.check_normal(n)?;
        let (labels, reps) = self.coset_labels(&Subgroup::whole(self), n);
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = labels[self.mul(a, b)];
            }
        }
        let inv = reps.iter().map(|&a| labels[self.inv(a)]).collect();
        let group = Group::from_parts(q, table, inv, format!("{}/{}", self.label, n.order()), self.order_cap);
        let map = labels.iter().map(|&l| l as usize).collect();
        Ok((group, Homomorphism::from_map_unchecked(map, q)))
    }

    /// Order of `G/N` membership-tested without the projection.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<Group> {
        Ok(self.quotient(n)?.0)
    }

    /// Componentwise product; the pair `(a, b)` has index `a * |H| + b`.
    pub fn direct_product(&self, other: &Group) -> Result<Group> {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let cap = self.order_cap.max(other.order_cap);
        if order > cap {
            return Err(Error::OrderCapExceeded { order, cap });
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            let (a1, a2) = (a / m, a % m);
            for b in 0..order {
                let (b1, b2) = (b / m, b % m);
                table[a * order + b] = (self.mul(a1, b1) * m + other.mul(a2, b2)) as u32;
            }
        }
        let inv = (0..order)
            .map(|a| (self.inv(a / m) * m + other.inv(a % m)) as u32)
            .collect();
        Ok(Group::from_parts(
            order,
            table,
            inv,
            format!("{} x {}", self.label, other.label),
            cap,
        ))
    }

    /// Relabels the elements by a permutation of `1..order` (0 stays fixed).
    pub fn relabel(&self, perm: &[usize]) -> Group {
        assert_eq!(perm.len(), self.order);
        assert_eq!(perm[0], 0);
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        Group::from_table_unchecked(n, table, self.label.clone(), self.order_cap)
    }
}

fn compute_orders(g: &Group) -> Vec<u32> {
    (0..g.order)
        .map(|x| {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = g.mul(y, x);
                k += 1;
            }
            k
        })
        .collect()
}

/// A subgroup, stored as a set of element indices of its parent group.
#[derive(Clone)]
pub struct Subgroup {
    mask: FixedBitSet,
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_mask(mask: FixedBitSet) -> Subgroup {
        let elements = mask.ones().collect();
        Subgroup { mask, elements }
    }

    pub fn trivial(g: &Group) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(0);
        Subgroup::from_mask(mask)
    }

    pub fn whole(g: &Group) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert_range(..);
        Subgroup::from_mask(mask)
    }

    /// Validates that `elements` form a subgroup of `g`.
    pub fn from_elements(g: &Group, elements: &[usize]) -> Result<Subgroup> {
        let mut mask = FixedBitSet::with_capacity(g.order());
        for &x in elements {
            if x >= g.order() {
                return Err(Error::ElementOutOfRange { index: x, order: g.order() });
            }
            mask.insert(x);
        }
        if !mask.contains(0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let s = Subgroup::from_mask(mask);
        for &a in s.elements() {
            if !s.contains(g.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in s.elements() {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        if !g.order().is_multiple_of(s.order()) {
            return Err(Error::NotASubgroup("order does not divide the group order".into()));
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        Subgroup::from_mask(mask)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by order, then lexicographically by member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

/// A subgroup realised as its own group, with index maps to and from the parent.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: Group,
    to_parent: Vec<usize>,
    local: Vec<u32>,
}

impl Embedded {
    pub fn to_parent(&self, x: usize) -> usize {
        self.to_parent[x]
    }

    pub fn to_local(&self, x: usize) -> Option<usize> {
        match self.local.get(x) {
            Some(&l) if l != u32::MAX => Some(l as usize),
            _ => None,
        }
    }

    /// Image in the parent of a subgroup of the embedded group.
    pub fn lift(&self, s: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.local.len());
        for &x in s.elements() {
            mask.insert(self.to_parent[x]);
        }
        Subgroup::from_mask(mask)
    }

    /// A parent subgroup lying inside the embedding, in local indices.
    pub fn localize(&self, s: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.group.order());
        for &x in s.elements() {
            let l = self
                .to_local(x)
                .unwrap_or_else(|| panic!("element {x} is outside the embedded subgroup"));
            mask.insert(l);
        }
        Subgroup::from_mask(mask)
    }
}

/// A homomorphism given by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    map: Vec<usize>,
    target_order: usize,
}

impl Homomorphism {
    /// Checks the homomorphism law on all pairs.
    pub fn new(source: &Group, target: &Group, map: Vec<usize>) -> Result<Homomorphism> {
        if map.len() != source.order() {
            return Err(Error::NotAGroup("map length differs from source order".into()));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::ElementOutOfRange { index: x, order: target.order() });
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAGroup(format!("map is not multiplicative on ({a}, {b})")));
                }
            }
        }
        Ok(Homomorphism { map, target_order: target.order() })
    }

    pub(crate) fn from_map_unchecked(map: Vec<usize>, target_order: usize) -> Homomorphism {
        Homomorphism { map, target_order }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.map.len());
        for (x, &y) in self.map.iter().enumerate() {
            if y == 0 {
                mask.insert(x);
            }
        }
        Subgroup::from_mask(mask)
    }

    pub fn image(&self, s: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.target_order);
        for &x in s.elements() {
            mask.insert(self.map[x]);
        }
        Subgroup::from_mask(mask)
    }

    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.map.len());
        for (x, &y) in self.map.iter().enumerate() {
            if s.contains(y) {
                mask.insert(x);
            }
        }
        Subgroup::from_mask(mask)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target_order);
        self.map.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target_order);
        for &y in &self.map {
            seen.insert(y);
        }
        seen.count_ones(..) == self.target_order
    }
}
