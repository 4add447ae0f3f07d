//! Brute-force reference implementations, written against plain
//! permutation arithmetic and multiplication tables only.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// A group given by an explicit multiplication table.
pub struct Tab {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub e: usize,
}

pub type Set = BTreeSet<usize>;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The symmetric group on `k` points, with the list of permutations.
pub fn symmetric(k: usize) -> (Tab, Vec<Vec<usize>>) {
    let perms = permutations(k);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mul = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index[&(0..k).map(|i| b[a[i]]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    let e = index[&(0..k).collect::<Vec<_>>()];
    (Tab { n: perms.len(), mul, e }, perms)
}

impl Tab {
    pub fn inv(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul[a][b] == self.e).unwrap()
    }

    pub fn closure(&self, gens: &Set) -> Set {
        let mut s: Set = [self.e].into_iter().collect();
        s.extend(gens.iter().copied());
        loop {
            let mut grown = s.clone();
            for &a in &s {
                for &b in &s {
                    grown.insert(self.mul[a][b]);
                }
            }
            if grown.len() == s.len() {
                return s;
            }
            s = grown;
        }
    }

    pub fn whole(&self) -> Set {
        (0..self.n).collect()
    }

    pub fn trivial(&self) -> Set {
        [self.e].into_iter().collect()
    }

    /// Closures of all pairs, then closed under joins.
    pub fn subgroups(&self) -> Vec<Set> {
        let mut found: BTreeSet<Set> = BTreeSet::new();
        for a in 0..self.n {
            for b in a..self.n {
                found.insert(self.closure(&[a, b].into_iter().collect()));
            }
        }
        loop {
            let list: Vec<Set> = found.iter().cloned().collect();
            let before = found.len();
            for x in &list {
                for y in &list {
                    found.insert(self.closure(&x.union(y).copied().collect()));
                }
            }
            if found.len() == before {
                return found.into_iter().collect();
            }
        }
    }

    pub fn is_normal(&self, s: &Set) -> bool {
        (0..self.n).all(|g| s.iter().all(|&x| s.contains(&self.mul[self.mul[g][x]][self.inv(g)])))
    }

    pub fn normals(&self) -> Vec<Set> {
        self.subgroups().into_iter().filter(|s| self.is_normal(s)).collect()
    }

    pub fn commutator(&self, a: &Set, b: &Set) -> Set {
        let mut gens = Set::new();
        for &x in a {
            for &y in b {
                gens.insert(self.mul[self.mul[self.inv(x)][self.inv(y)]][self.mul[x][y]]);
            }
        }
        self.closure(&gens)
    }

    /// Elements `g` with `g h g^-1 h^-1 ∈ k` for all `h ∈ h_set`.
    pub fn centralizer_mod(&self, h_set: &Set, k: &Set) -> Set {
        (0..self.n)
            .filter(|&g| {
                h_set.iter().all(|&h| k.contains(&self.mul[self.mul[self.mul[g][h]][self.inv(g)]][self.inv(h)]))
            })
            .collect()
    }

    /// `G/N` nilpotent: the lower central series drops into `N`.
    pub fn quotient_nilpotent(&self, n: &Set) -> bool {
        let g = self.whole();
        let mut cur = g.clone();
        loop {
            if cur.is_subset(n) {
                return true;
            }
            let next = self.commutator(&cur, &g);
            let next: Set = self.closure(&next.union(n).copied().collect());
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    /// `G/N` supersoluble: a chain of normal subgroups from `N` to `G` with
    /// prime indices.
    pub fn quotient_supersoluble(&self, n: &Set) -> bool {
        let normals = self.normals();
        fn go(t: &Tab, normals: &[Set], cur: &Set) -> bool {
            if cur.len() == t.n {
                return true;
            }
            normals.iter().any(|m| {
                cur.is_subset(m) && m.len() > cur.len() && is_prime(m.len() / cur.len()) && go(t, normals, m)
            })
        }
        go(self, &normals, n)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.quotient_nilpotent(&self.trivial())
    }

    pub fn is_supersoluble(&self) -> bool {
        self.quotient_supersoluble(&self.trivial())
    }

    /// Intersection of the normal subgroups whose quotient passes `in_f`.
    pub fn residual(&self, in_f: impl Fn(&Tab, &Set) -> bool) -> Set {
        let mut out = self.whole();
        for n in self.normals() {
            if in_f(self, &n) {
                out = out.intersection(&n).copied().collect();
            }
        }
        out
    }

    fn coset_rep(&self, x: usize, k: &Set) -> usize {
        k.iter().map(|&y| self.mul[x][y]).min().unwrap()
    }

    /// `[H/K](G/C)` as a table on pairs of coset representatives.
    pub fn semidirect(&self, h: &Set, k: &Set, c: &Set) -> Tab {
        let hs: Vec<usize> = h.iter().map(|&x| self.coset_rep(x, k)).collect::<Set>().into_iter().collect();
        let gs: Vec<usize> = (0..self.n).map(|x| self.coset_rep(x, c)).collect::<Set>().into_iter().collect();
        let pairs: Vec<(usize, usize)> = hs.iter().flat_map(|&a| gs.iter().map(move |&b| (a, b))).collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().copied().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = pairs
            .iter()
            .map(|&(h1, g1)| {
                pairs
                    .iter()
                    .map(|&(h2, g2)| {
                        let conj = self.mul[self.mul[g1][h2]][self.inv(g1)];
                        let hh = self.coset_rep(self.mul[h1][conj], k);
                        let gg = self.coset_rep(self.mul[g1][g2], c);
                        index[&(hh, gg)]
                    })
                    .collect()
            })
            .collect();
        let e = index[&(self.coset_rep(self.e, k), self.coset_rep(self.e, c))];
        Tab { n: pairs.len(), mul, e }
    }

    /// Every maximal chain of normal subgroups from `1` to `top`.
    pub fn chief_chains(&self, top: &Set) -> Vec<Vec<Set>> {
        let normals = self.normals();
        fn go(normals: &[Set], cur: &Set, top: &Set, path: &mut Vec<Set>, out: &mut Vec<Vec<Set>>) {
            if cur == top {
                out.push(path.clone());
                return;
            }
            for m in normals {
                let covers = cur.is_subset(m)
                    && m.is_subset(top)
                    && m.len() > cur.len()
                    && !normals.iter().any(|x| cur.is_subset(x) && x.is_subset(m) && x.len() > cur.len() && x.len() < m.len());
                if covers {
                    path.push(m.clone());
                    go(normals, m, top, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        let start = self.trivial();
        go(&normals, &start, top, &mut vec![start.clone()], &mut out);
        out
    }

    /// Join of the normal subgroups all of whose chief factors `H/K` give
    /// `[H/K](G/C_G(H/K))` passing `in_f`.
    pub fn hypercentre(&self, in_f: impl Fn(&Tab) -> bool) -> Set {
        let mut out = self.trivial();
        for n in self.normals() {
            let ok = self.chief_chains(&n).iter().all(|chain| {
                chain.windows(2).all(|w| {
                    let c = self.centralizer_mod(&w[1], &w[0]);
                    in_f(&self.semidirect(&w[1], &w[0], &c))
                })
            });
            if ok {
                out = self.closure(&out.union(&n).copied().collect());
            }
        }
        out
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
