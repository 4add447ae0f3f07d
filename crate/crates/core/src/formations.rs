//! Formations, residuals, central chief factors and hypercentres.
//!
//! A normal section `H/K` of `G` is F-central when `[H/K](G/C_G(H/K))`
//! belongs to F. Testing only at the full centralizer is enough for the
//! hereditary built-in formations. The F-hypercentre is the join of all
//! normal subgroups whose chief factors below them are F-central.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::semidirect_section;
use crate::group::{Group, Subgroup};
use crate::lattice::{chief_series, chief_series_through, normal_hall_subgroup, normal_subgroups};
use crate::numtheory::{is_prime, prime_divisors};

/// A partition of the primes into finitely many listed classes; every prime
/// not listed forms its own class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct SigmaPartition {
    classes: Vec<BTreeSet<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaClass {
    Listed(usize),
    Singleton(u64),
}

impl SigmaPartition {
    /// Every prime in its own class.
    pub fn singletons() -> SigmaPartition {
        SigmaPartition::default()
    }

    pub fn new(classes: Vec<Vec<u64>>) -> Result<SigmaPartition> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for class in classes {
            let mut set = BTreeSet::new();
            for p in class {
                if !is_prime(p) {
                    return Err(Error::InvalidSigma(format!("{p} is not prime")));
                }
                if !seen.insert(p) {
                    return Err(Error::InvalidSigma(format!("{p} appears in two classes")));
                }
                set.insert(p);
            }
            // one-prime classes are implicit
            if set.len() > 1 {
                out.push(set);
            }
        }
        out.sort();
        Ok(SigmaPartition { classes: out })
    }

    /// Parses `[[2,3],[5]]`, optionally prefixed by `sigma =`.
    pub fn parse(s: &str) -> Result<SigmaPartition> {
        let body = s.trim();
        let body = body
            .strip_prefix("sigma")
            .map(|r| r.trim_start().trim_start_matches('=').trim())
            .unwrap_or(body);
        let classes: Vec<Vec<u64>> =
            serde_json::from_str(body).map_err(|e| Error::InvalidSigma(format!("{s:?}: {e}")))?;
        SigmaPartition::new(classes)
    }

    pub fn class_of(&self, p: u64) -> SigmaClass {
        self.classes
            .iter()
            .position(|c| c.contains(&p))
            .map(SigmaClass::Listed)
            .unwrap_or(SigmaClass::Singleton(p))
    }

    /// The primes of the class, restricted to those dividing `n`.
    pub fn class_primes_dividing(&self, class: SigmaClass, n: u64) -> Vec<u64> {
        prime_divisors(n).into_iter().filter(|&p| self.class_of(p) == class).collect()
    }

    /// Whether every prime divisor of `n` lies in one class.
    pub fn is_primary_order(&self, n: u64) -> bool {
        let classes: BTreeSet<SigmaClass> = prime_divisors(n).into_iter().map(|p| self.class_of(p)).collect();
        classes.len() <= 1
    }

    pub fn listed_classes(&self) -> &[BTreeSet<u64>] {
        &self.classes
    }
}

impl TryFrom<Vec<Vec<u64>>> for SigmaPartition {
    type Error = Error;
    fn try_from(v: Vec<Vec<u64>>) -> Result<Self> {
        SigmaPartition::new(v)
    }
}

impl From<SigmaPartition> for Vec<Vec<u64>> {
    fn from(s: SigmaPartition) -> Self {
        s.classes.into_iter().map(|c| c.into_iter().collect()).collect()
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let ps: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("[{}]", ps.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn is_soluble(g: &Group) -> bool {
    let mut cur = Subgroup::whole(g);
    while !cur.is_trivial() {
        let next = g.commutator_subgroup(&cur, &cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
    true
}

/// Lower central series reaches the identity.
pub fn is_nilpotent(g: &Group) -> bool {
    let whole = Subgroup::whole(g);
    let mut cur = whole.clone();
    while !cur.is_trivial() {
        let next = g.commutator_subgroup(&cur, &whole);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
    true
}

/// Every chief factor has prime order.
pub fn is_supersoluble(g: &Group) -> bool {
    chief_series(g)
        .factor_orders()
        .into_iter()
        .all(|n| is_prime(n as u64))
}

pub fn is_sigma_primary(g: &Group, sigma: &SigmaPartition) -> bool {
    sigma.is_primary_order(g.order() as u64)
}

/// A normal Hall subgroup exists for every class meeting `π(G)`.
pub fn is_sigma_nilpotent(g: &Group, sigma: &SigmaPartition) -> bool {
    let n = g.order() as u64;
    let classes: BTreeSet<SigmaClass> = prime_divisors(n).into_iter().map(|p| sigma.class_of(p)).collect();
    classes
        .into_iter()
        .all(|c| normal_hall_subgroup(g, &sigma.class_primes_dividing(c, n)).is_some())
}

type Predicate = Arc<dyn Fn(&Group) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum FormationKind {
    Nilpotent,
    Supersoluble,
    Soluble,
    SigmaNilpotent(SigmaPartition),
    Custom(Predicate),
}

/// A class of groups given by a membership predicate, with metadata flags.
#[derive(Clone)]
pub struct Formation {
    name: String,
    kind: FormationKind,
    pub hereditary: bool,
    pub saturated: bool,
}

impl fmt::Debug for Formation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Formation")
            .field("name", &self.name)
            .field("hereditary", &self.hereditary)
            .field("saturated", &self.saturated)
            .finish()
    }
}

impl Formation {
    pub fn nilpotent() -> Formation {
        Formation::builtin("nilpotent", FormationKind::Nilpotent)
    }

    pub fn supersoluble() -> Formation {
        Formation::builtin("supersoluble", FormationKind::Supersoluble)
    }

    pub fn soluble() -> Formation {
        Formation::builtin("soluble", FormationKind::Soluble)
    }

    pub fn sigma_nilpotent(sigma: SigmaPartition) -> Formation {
        let name = format!("sigma-nilpotent{sigma}");
        Formation { name, kind: FormationKind::SigmaNilpotent(sigma), hereditary: true, saturated: true }
    }

    /// A user predicate; the flags are taken on trust.
    pub fn custom(
        name: impl Into<String>,
        hereditary: bool,
        saturated: bool,
        membership: impl Fn(&Group) -> bool + Send + Sync + 'static,
    ) -> Formation {
        Formation { name: name.into(), kind: FormationKind::Custom(Arc::new(membership)), hereditary, saturated }
    }

    fn builtin(name: &str, kind: FormationKind) -> Formation {
        Formation { name: name.into(), kind, hereditary: true, saturated: true }
    }

    /// Parses `nilpotent | supersoluble | soluble | sigma-nilpotent`.
    pub fn from_selector(s: &str, sigma: Option<&SigmaPartition>) -> Result<Formation> {
        match s.trim() {
            "nilpotent" | "N" => Ok(Formation::nilpotent()),
            "supersoluble" | "U" => Ok(Formation::supersoluble()),
            "soluble" | "S" => Ok(Formation::soluble()),
            "sigma-nilpotent" => sigma
                .cloned()
                .map(Formation::sigma_nilpotent)
                .ok_or_else(|| Error::InvalidSigma("sigma-nilpotent needs a sigma partition".into())),
            other => Err(Error::UnknownFormation(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FormationKind {
        &self.kind
    }

    pub fn sigma(&self) -> Option<&SigmaPartition> {
        match &self.kind {
            FormationKind::SigmaNilpotent(s) => Some(s),
            _ => None,
        }
    }

    pub fn contains(&self, g: &Group) -> bool {
        match &self.kind {
            FormationKind::Nilpotent => is_nilpotent(g),
            FormationKind::Supersoluble => is_nilpotent(g) || is_supersoluble(g),
            FormationKind::Soluble => is_soluble(g),
            FormationKind::SigmaNilpotent(s) => is_sigma_nilpotent(g, s),
            FormationKind::Custom(p) => p(g),
        }
    }
}

/// N, U, S and N_σ (σ defaults to all singletons).
pub fn builtin_formations(sigma: Option<&SigmaPartition>) -> Vec<Formation> {
    vec![
        Formation::nilpotent(),
        Formation::supersoluble(),
        Formation::soluble(),
        Formation::sigma_nilpotent(sigma.cloned().unwrap_or_default()),
    ]
}

/// Intersection of the normal subgroups with quotient in `f`.
pub fn residual(g: &Group, f: &Formation) -> Result<Subgroup> {
    let mut out = Subgroup::whole(g);
    if f.contains(g) {
        return Ok(Subgroup::trivial(g));
    }
    for n in normal_subgroups(g) {
        if !out.is_subset(n) && f.contains(&g.quotient_group(n)?) {
            out = out.intersection(n);
        }
    }
    if !f.contains(&g.quotient_group(&out)?) {
        return Err(Error::FormationLawViolated { group: g.label().to_string(), formation: f.name().to_string() });
    }
    Ok(out)
}

/// Decides whether a chief factor (or normal section) `H/K` of `G` counts
/// as central for some notion of centrality.
pub trait CentralityTest: Sync {
    fn name(&self) -> String;
    fn is_central(&self, g: &Group, h: &Subgroup, k: &Subgroup) -> Result<bool>;
}

impl CentralityTest for Formation {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn is_central(&self, g: &Group, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        is_f_central(g, h, k, self)
    }
}

/// The section has prime order (or is trivial); a chief factor is then cyclic.
pub struct CyclicFactors;

impl CentralityTest for CyclicFactors {
    fn name(&self) -> String {
        "cyclic".into()
    }

    fn is_central(&self, _g: &Group, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        let n = h.order() / k.order();
        Ok(n == 1 || is_prime(n as u64))
    }
}

/// `[H/K](G/C_G(H/K))` is σ-primary; this only depends on its order.
pub struct SigmaCentral(pub SigmaPartition);

impl CentralityTest for SigmaCentral {
    fn name(&self) -> String {
        format!("sigma-central{}", self.0)
    }

    fn is_central(&self, g: &Group, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        let c = g.centralizer_of_section(h, k);
        let order = (h.order() / k.order()) * (g.order() / c.order());
        Ok(self.0.is_primary_order(order as u64))
    }
}

/// `[H/K](G/C_G(H/K)) ∈ F`.
pub fn is_f_central(g: &Group, h: &Subgroup, k: &Subgroup, f: &Formation) -> Result<bool> {
    let c = g.centralizer_of_section(h, k);
    Ok(f.contains(&semidirect_section(g, h, k, &c)?))
}

/// Memoises centrality decisions for sections of one group.
struct CentralityCache<'a> {
    test: &'a dyn CentralityTest,
    memo: HashMap<(FixedBitSet, FixedBitSet), bool>,
}

impl<'a> CentralityCache<'a> {
    fn new(test: &'a dyn CentralityTest) -> Self {
        CentralityCache { test, memo: HashMap::new() }
    }

    fn central(&mut self, g: &Group, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        let key = (h.mask().clone(), k.mask().clone());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = self.test.is_central(g, h, k)?;
        self.memo.insert(key, v);
        Ok(v)
    }

    fn hypercentral(&mut self, g: &Group, n: &Subgroup) -> Result<bool> {
        if n.is_trivial() {
            return Ok(true);
        }
        let series = chief_series_through(g, n)?;
        for (k, h) in series.factors() {
            if h.order() > n.order() {
                break;
            }
            if !self.central(g, h, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether every chief factor of `g` below `n` passes `test`.
pub fn is_hypercentral(g: &Group, n: &Subgroup, test: &dyn CentralityTest) -> Result<bool> {
    CentralityCache::new(test).hypercentral(g, n)
}

pub fn is_f_hypercentral(g: &Group, n: &Subgroup, f: &Formation) -> Result<bool> {
    is_hypercentral(g, n, f)
}

/// Join of all hypercentral normal subgroups, re-verified hypercentral.
pub fn hypercentre(g: &Group, test: &dyn CentralityTest) -> Result<Subgroup> {
    let mut cache = CentralityCache::new(test);
    let mut out = Subgroup::trivial(g);
    for n in normal_subgroups(g) {
        if !n.is_subset(&out) && cache.hypercentral(g, n)? {
            out = g.join(&out, n);
        }
    }
    if !cache.hypercentral(g, &out)? {
        return Err(Error::HypercentreNotHypercentral { group: g.label().to_string(), formation: test.name() });
    }
    Ok(out)
}

pub fn f_hypercentre(g: &Group, f: &Formation) -> Result<Subgroup> {
    hypercentre(g, f)
}

/// Whether every chief factor of `g` passes `test`.
pub fn all_chief_factors_central(g: &Group, test: &dyn CentralityTest) -> Result<bool> {
    let mut cache = CentralityCache::new(test);
    for (k, h) in chief_series(g).factors() {
        if !cache.central(g, h, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A normal subgroup containing its own centralizer.
pub fn is_large(g: &Group, n: &Subgroup) -> Result<bool> {
    g.check_normal(n)?;
    Ok(g.centralizer(n).is_subset(n))
}
