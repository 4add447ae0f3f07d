//! Exhaustive sweeps of the centralizer theorems, their corollaries and the
//! supporting lemmas over a catalog of small groups.

mod catalog;
mod lemmas;
mod report;

use std::time::Instant;

use rayon::prelude::*;

pub use catalog::{Catalog, CatalogEntry};
pub use lemmas::verify_lemma_suite;
pub use report::{exit_code, Failure, SkipReason, Tally, VerificationReport, Verdict};

use crate::error::{Error, Result};
use crate::formations::{
    f_hypercentre, hypercentre, is_nilpotent, is_sigma_nilpotent, residual, CentralityTest, CyclicFactors, Formation,
    SigmaCentral, SigmaPartition,
};
use crate::group::Group;
use crate::iso::{count_automorphisms, DEFAULT_SEARCH_BUDGET};
use crate::lattice::{all_subgroups, DEFAULT_LATTICE_BUDGET};
use crate::subnormality::{is_subnormal, ChainSearch, StepRule};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub lattice_budget: usize,
    pub search_budget: u64,
    /// Seed for sampled lemma checks.
    pub seed: u64,
    /// Fill `elapsed_ms`; off by default so reports are reproducible.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lattice_budget: DEFAULT_LATTICE_BUDGET,
            search_budget: DEFAULT_SEARCH_BUDGET,
            seed: 0,
            timing: false,
        }
    }
}

/// Runs `check` on every catalog group in parallel and merges the tallies
/// in catalog order. Errors escaping `check` become skips or failures.
pub(crate) fn sweep<F>(catalog: &Catalog, check: F) -> Tally
where
    F: Fn(usize, &Group, &mut Tally) -> Result<()> + Sync,
{
    catalog
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let mut t = Tally::default();
            if let Err(err) = check(i, &e.group, &mut t) {
                t.absorb(&e.group, err);
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

pub(crate) fn finish(
    claim: &str,
    formation: Option<&Formation>,
    sigma: Option<&SigmaPartition>,
    catalog: &Catalog,
    tally: Tally,
    start: Instant,
    opts: &VerifyOptions,
) -> VerificationReport {
    let sigma = sigma.or_else(|| formation.and_then(|f| f.sigma()));
    let mut r = VerificationReport::from_tally(
        claim,
        formation.map(|f| f.name().to_string()),
        sigma.map(|s| s.to_string()),
        catalog.coverage(),
        catalog.len(),
        tally,
    );
    if opts.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

fn require(cond: bool, f: &Formation, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not flagged {what}", f.name())))
    }
}

/// For each group with trivial F-hypercentre, `C_G(G^F) ≤ G^F`.
pub fn verify_theorem_b(catalog: &Catalog, f: &Formation, opts: &VerifyOptions) -> Result<VerificationReport> {
    require(f.saturated, f, "saturated")?;
    let start = Instant::now();
    let tally = sweep(catalog, |_, g, t| {
        if !f_hypercentre(g, f)?.is_trivial() {
            t.skip(SkipReason::HypothesisFailed);
            return Ok(());
        }
        let d = residual(g, f)?;
        let c = g.centralizer(&d);
        t.check(c.is_subset(&d), || {
            Failure::new(g, "centralizer of the residual is not inside it").residual(&d).centralizer(&c)
        });
        Ok(())
    });
    Ok(finish("theorem-b", Some(f), None, catalog, tally, start, opts))
}

/// One chain-based centralizer sweep: every subgroup reachable from the top
/// under `rule` is an instance; the hypothesis asks for a trivial
/// hypercentre (under `hyp`) in every overgroup, and the conclusion is
/// `C_G(S^F) ≤ S^F` for the residual formation `f`.
fn chain_sweep_group(
    g: &Group,
    rule: StepRule<'_>,
    f: &Formation,
    hyp: &dyn CentralityTest,
    opts: &VerifyOptions,
    t: &mut Tally,
) -> Result<()> {
    let lattice = all_subgroups(g, opts.lattice_budget)?;
    t.stat("subgroups-scanned", lattice.len() as u64);
    let reach = ChainSearch::new(g, &lattice, rule).reachable_to(lattice.whole_index())?;
    let mut z_trivial: Vec<Option<bool>> = vec![None; lattice.len()];
    for i in reach.ones() {
        let mut hypothesis = true;
        for j in lattice.overgroups(i) {
            let zt = match z_trivial[j] {
                Some(v) => v,
                None => {
                    let e = g.restrict(lattice.get(j));
                    let v = hypercentre(&e.group, hyp)?.is_trivial();
                    z_trivial[j] = Some(v);
                    v
                }
            };
            if !zt {
                hypothesis = false;
                break;
            }
        }
        if !hypothesis {
            t.skip(SkipReason::HypothesisFailed);
            continue;
        }
        let s = lattice.get(i);
        let e = g.restrict(s);
        let d = e.lift(&residual(&e.group, f)?);
        let c = g.centralizer(&d);
        t.check(c.is_subset(&d), || {
            Failure::new(g, "centralizer of the subgroup's residual is not inside it")
                .subgroup(s)
                .residual(&d)
                .centralizer(&c)
        });
    }
    Ok(())
}

/// For each K-F-subnormal `S` whose overgroups all have trivial
/// F-hypercentre, `C_G(S^F) ≤ S^F`.
pub fn verify_theorem_a(catalog: &Catalog, f: &Formation, opts: &VerifyOptions) -> Result<VerificationReport> {
    require(f.hereditary, f, "hereditary")?;
    require(f.saturated, f, "saturated")?;
    let start = Instant::now();
    let tally = sweep(catalog, |_, g, t| chain_sweep_group(g, StepRule::Kegel(f), f, f, opts, t));
    Ok(finish("theorem-a", Some(f), None, catalog, tally, start, opts))
}

/// Subnormal `S` with `C_G(S) = 1` satisfy `C_G(S^N) ≤ S^N`; the second
/// report checks that `C_G(S) = 1` already forces `Z_N(E) = 1` for every
/// overgroup `E`.
pub fn verify_schenkman(catalog: &Catalog, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let n = Formation::nilpotent();
    let parts = catalog
        .entries
        .par_iter()
        .map(|e| {
            let g = &e.group;
            let (mut main, mut bridge) = (Tally::default(), Tally::default());
            let run = |main: &mut Tally, bridge: &mut Tally| -> Result<()> {
                let lattice = all_subgroups(g, opts.lattice_budget)?;
                let mut z_trivial: Vec<Option<bool>> = vec![None; lattice.len()];
                for (i, s) in lattice.subgroups().iter().enumerate() {
                    if is_subnormal(g, s).is_none() {
                        continue;
                    }
                    if !g.centralizer(s).is_trivial() {
                        main.skip(SkipReason::HypothesisFailed);
                        continue;
                    }
                    let e = g.restrict(s);
                    let d = e.lift(&residual(&e.group, &n)?);
                    let c = g.centralizer(&d);
                    main.check(c.is_subset(&d), || {
                        Failure::new(g, "centralizer of the nilpotent residual is not inside it")
                            .subgroup(s)
                            .residual(&d)
                            .centralizer(&c)
                    });
                    let mut bad = None;
                    for j in lattice.overgroups(i) {
                        let zt = match z_trivial[j] {
                            Some(v) => v,
                            None => {
                                let v = f_hypercentre(&g.restrict(lattice.get(j)).group, &n)?.is_trivial();
                                z_trivial[j] = Some(v);
                                v
                            }
                        };
                        if !zt {
                            bad = Some(j);
                            break;
                        }
                    }
                    bridge.check(bad.is_none(), || {
                        let j = bad.expect("set on failure");
                        Failure::new(g, format!("overgroup of order {} has a nontrivial nilpotent hypercentre", lattice.get(j).order()))
                            .subgroup(s)
                    });
                }
                Ok(())
            };
            if let Err(err) = run(&mut main, &mut bridge) {
                main.absorb(g, err.clone());
                bridge.absorb(g, err);
            }
            (main, bridge)
        })
        .collect::<Vec<_>>();
    let (main, bridge) = parts
        .into_iter()
        .fold((Tally::default(), Tally::default()), |(a, b), (x, y)| (a.merge(x), b.merge(y)));
    Ok(vec![
        finish("schenkman", Some(&n), None, catalog, main, start, opts),
        finish("schenkman-bridging", Some(&n), None, catalog, bridge, start, opts),
    ])
}

/// When `G^F ∩ Z_F(G) = 1`, `|G/Z_F(G)| ≤ |G^F| · |Aut(G^F)|`. Checked
/// instances are tabulated in the notes with their slack.
pub fn verify_holomorph_bound(catalog: &Catalog, f: &Formation, opts: &VerifyOptions) -> Result<VerificationReport> {
    require(f.saturated, f, "saturated")?;
    let start = Instant::now();
    let tally = sweep(catalog, |_, g, t| {
        let u = residual(g, f)?;
        let z = f_hypercentre(g, f)?;
        if !u.intersection(&z).is_trivial() {
            t.skip(SkipReason::HypothesisFailed);
            return Ok(());
        }
        let aut = count_automorphisms(&g.restrict(&u).group, opts.search_budget)?;
        let lhs = (g.order() / z.order()) as u64;
        let rhs = u.order() as u64 * aut;
        if lhs == rhs {
            t.stat("tight", 1);
            if !u.is_trivial() {
                t.stat("tight-nontrivial-residual", 1);
            }
        }
        t.notes.push(format!("{}: |G/Z| = {lhs}, |U|*|Aut(U)| = {rhs}", g.label()));
        t.check(lhs <= rhs, || {
            Failure::new(g, format!("|G/Z| = {lhs} exceeds |U|*|Aut(U)| = {rhs}")).residual(&u).centralizer(&z)
        });
        Ok(())
    });
    Ok(finish("holomorph-bound", Some(f), None, catalog, tally, start, opts))
}

/// The supersoluble and σ-nilpotent specialisations, the σ-subnormal
/// versus K-N_σ-subnormal agreement, and N versus N_σ for singleton σ.
pub fn verify_section3(catalog: &Catalog, sigma: &SigmaPartition, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let u = Formation::supersoluble();
    let ns = Formation::sigma_nilpotent(sigma.clone());
    let sc = SigmaCentral(sigma.clone());
    let mut out = Vec::new();
    let runs: [(&str, &Formation, StepRule<'_>, &dyn CentralityTest); 4] = [
        ("section3-k-u-subnormal", &u, StepRule::Kegel(&u), &CyclicFactors),
        ("section3-u-subnormal", &u, StepRule::FOnly(&u), &CyclicFactors),
        ("section3-sigma-subnormal", &ns, StepRule::Sigma(sigma), &sc),
        ("section3-n-sigma-subnormal", &ns, StepRule::FOnly(&ns), &sc),
    ];
    for (claim, f, rule, hyp) in runs {
        let start = Instant::now();
        let tally = sweep(catalog, |_, g, t| chain_sweep_group(g, rule, f, hyp, opts, t));
        out.push(finish(claim, Some(f), Some(sigma), catalog, tally, start, opts));
    }

    let start = Instant::now();
    let tally = sweep(catalog, |_, g, t| {
        let lattice = all_subgroups(g, opts.lattice_budget)?;
        let top = lattice.whole_index();
        let a = ChainSearch::new(g, &lattice, StepRule::Sigma(sigma)).reachable_to(top)?;
        let b = ChainSearch::new(g, &lattice, StepRule::Kegel(&ns)).reachable_to(top)?;
        for (i, s) in lattice.subgroups().iter().enumerate() {
            let e = g.restrict(s);
            let zs = hypercentre(&e.group, &sc)?;
            let zf = f_hypercentre(&e.group, &ns)?;
            let (in_a, in_b) = (a.contains(i), b.contains(i));
            t.check(in_a == in_b && zs == zf, || {
                Failure::new(
                    g,
                    format!(
                        "sigma-subnormal={in_a}, K-N_sigma-subnormal={in_b}, |Z_sigma|={}, |Z_N_sigma|={}",
                        zs.order(),
                        zf.order()
                    ),
                )
                .subgroup(s)
            });
        }
        Ok(())
    });
    out.push(finish("sigma-subnormal-equivalence", Some(&ns), Some(sigma), catalog, tally, start, opts));

    let start = Instant::now();
    let singles = SigmaPartition::singletons();
    let tally = sweep(catalog, |_, g, t| {
        let (a, b) = (is_nilpotent(g), is_sigma_nilpotent(g, &singles));
        t.check(a == b, || Failure::new(g, format!("nilpotent={a}, singleton sigma-nilpotent={b}")));
        Ok(())
    });
    out.push(finish(
        "nilpotent-singletons-agreement",
        None,
        Some(&singles),
        catalog,
        tally,
        start,
        opts,
    ));
    Ok(out)
}

/// What `verify all` runs.
#[derive(Clone, Debug)]
pub struct VerifyPlan {
    pub formations: Vec<Formation>,
    pub sigmas: Vec<SigmaPartition>,
}

/// Every claim in a fixed order. Lemma sweeps run first; a formation whose
/// formation-law, hereditary or saturation sweep fails is dropped from the
/// theorem sweeps.
pub fn verify_all(catalog: &Catalog, plan: &VerifyPlan, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let mut sound = Vec::new();
    for f in &plan.formations {
        let reports = verify_lemma_suite(catalog, f, opts)?;
        let ok = reports
            .iter()
            .filter(|r| matches!(r.claim.as_str(), "formation-law" | "hereditary" | "saturation"))
            .all(|r| r.passed());
        out.extend(reports);
        if ok {
            sound.push(f);
        }
    }
    for f in &sound {
        out.push(verify_theorem_b(catalog, f, opts)?);
    }
    for f in &sound {
        out.push(verify_theorem_a(catalog, f, opts)?);
    }
    out.extend(verify_schenkman(catalog, opts)?);
    for f in &sound {
        out.push(verify_holomorph_bound(catalog, f, opts)?);
    }
    for s in &plan.sigmas {
        out.extend(verify_section3(catalog, s, opts)?);
    }
    Ok(out)
}

/// A verification target selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    TheoremA,
    TheoremB,
    Schenkman,
    HolomorphBound,
    Section3,
    Lemmas,
    All,
}

impl Claim {
    pub const NAMES: [&'static str; 7] =
        ["theorem-a", "theorem-b", "schenkman", "holomorph-bound", "section3", "lemmas", "all"];

    pub fn parse(s: &str) -> Result<Claim> {
        Ok(match s {
            "theorem-a" => Claim::TheoremA,
            "theorem-b" => Claim::TheoremB,
            "schenkman" => Claim::Schenkman,
            "holomorph-bound" => Claim::HolomorphBound,
            "section3" => Claim::Section3,
            "lemmas" => Claim::Lemmas,
            "all" => Claim::All,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown claim `{other}` (expected one of {})",
                    Claim::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Runs `claim` for every formation (or every σ-partition, for the σ sweeps)
/// in `plan`.
pub fn run_claim(claim: Claim, catalog: &Catalog, plan: &VerifyPlan, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    match claim {
        Claim::TheoremB => {
            for f in &plan.formations {
                out.push(verify_theorem_b(catalog, f, opts)?);
            }
        }
        Claim::TheoremA => {
            for f in &plan.formations {
                out.push(verify_theorem_a(catalog, f, opts)?);
            }
        }
        Claim::Schenkman => out.extend(verify_schenkman(catalog, opts)?),
        Claim::HolomorphBound => {
            for f in &plan.formations {
                out.push(verify_holomorph_bound(catalog, f, opts)?);
            }
        }
        Claim::Section3 => {
            for s in &plan.sigmas {
                out.extend(verify_section3(catalog, s, opts)?);
            }
        }
        Claim::Lemmas => {
            for f in &plan.formations {
                out.extend(verify_lemma_suite(catalog, f, opts)?);
            }
        }
        Claim::All => out = verify_all(catalog, plan, opts)?,
    }
    Ok(out)
}

impl VerifyPlan {
    /// N, U, S and N_σ for each σ, with `[[2,3]]` and all-singletons when
    /// `sigmas` is empty.
    pub fn standard(sigmas: Vec<SigmaPartition>) -> VerifyPlan {
        let sigmas = if sigmas.is_empty() {
            vec![SigmaPartition::new(vec![vec![2, 3]]).expect("valid partition"), SigmaPartition::singletons()]
        } else {
            sigmas
        };
        let mut formations = vec![Formation::nilpotent(), Formation::supersoluble(), Formation::soluble()];
        formations.extend(sigmas.iter().cloned().map(Formation::sigma_nilpotent));
        VerifyPlan { formations, sigmas }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Catalog {
        Catalog::generate(12, 512, vec![]).unwrap()
    }

    #[test]
    fn theorem_b_small() {
        let c = small();
        let r = verify_theorem_b(&c, &Formation::nilpotent(), &VerifyOptions::default()).unwrap();
        assert!(r.passed());
        assert!(r.checked > 0 && r.skipped > 0);
        assert_eq!(r.elapsed_ms, None);
    }

    #[test]
    fn theorem_a_small() {
        let r = verify_theorem_a(&small(), &Formation::supersoluble(), &VerifyOptions::default()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn holomorph_s3_tight() {
        let c = Catalog::generate(6, 512, vec![]).unwrap();
        let r = verify_holomorph_bound(&c, &Formation::nilpotent(), &VerifyOptions::default()).unwrap();
        assert!(r.passed());
        assert!(r.notes.iter().any(|n| n == "sym:3: |G/Z| = 6, |U|*|Aut(U)| = 6"));
        assert_eq!(r.stats.get("tight-nontrivial-residual"), Some(&1));
    }

    #[test]
    fn preconditions() {
        let f = Formation::custom("odd", false, false, |g| g.order() % 2 == 1);
        assert!(matches!(
            verify_theorem_b(&small(), &f, &VerifyOptions::default()),
            Err(Error::Precondition(_))
        ));
    }
}
