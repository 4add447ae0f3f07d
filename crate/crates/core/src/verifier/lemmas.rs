//! Property sweeps for the formation lemmas: formation axioms, centrality
//! of sections, hypercentre laws, the chief-factor characterisation and
//! supplements.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{finish, Catalog, Failure, SkipReason, Tally, VerificationReport, VerifyOptions};
use crate::error::{Error, Result};
use crate::extension::{section_pair, semidirect_product, semidirect_section};
use crate::formations::{
    all_chief_factors_central, f_hypercentre, is_f_central, is_f_hypercentral, residual, CentralityTest,
    CyclicFactors, Formation, FormationKind, SigmaCentral,
};
use crate::group::{Group, Subgroup};
use crate::iso::{automorphisms, is_isomorphic, sections_g_isomorphic};
use crate::lattice::{all_subgroups, chief_series, chief_series_through, normal_subgroups, ChiefSeries, SubgroupLattice};

const SAMPLE_PAIRS: usize = 48;
const MAX_SECTIONS: usize = 24;

struct Ctx<'a> {
    g: &'a Group,
    f: &'a Formation,
    opts: &'a VerifyOptions,
    normals: Vec<Subgroup>,
    series: ChiefSeries,
    lattice: Result<SubgroupLattice>,
    rng: ChaCha8Rng,
}

impl Ctx<'_> {
    fn lattice(&self) -> Result<&SubgroupLattice> {
        self.lattice.as_ref().map_err(|e| e.clone())
    }

    fn iso(&self, a: &Group, b: &Group) -> Result<bool> {
        Ok(is_isomorphic(a, b, self.opts.search_budget)?.is_some())
    }

    /// Pairs of distinct chief-series terms `(S, R)` with `S < R`.
    fn series_sections(&self) -> Vec<(Subgroup, Subgroup)> {
        let t = &self.series.terms;
        let mut out = Vec::new();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                out.push((t[i].clone(), t[j].clone()));
            }
        }
        out
    }

    fn sample_pairs(&mut self, n: usize, m: usize) -> Vec<(usize, usize)> {
        if n * m <= SAMPLE_PAIRS {
            return (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
        }
        let mut picks = index::sample(&mut self.rng, n * m, SAMPLE_PAIRS).into_vec();
        picks.sort_unstable();
        picks.into_iter().map(|x| (x / m, x % m)).collect()
    }
}

/// `Ok(None)` after recording an order-cap skip, so one oversized
/// construction does not end the sweep for the whole group.
fn capped<T>(t: &mut Tally, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::OrderCapExceeded { .. }) => {
            t.skip(SkipReason::OrderCap);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

type Check = fn(&mut Ctx<'_>, &mut Tally) -> Result<()>;

fn claims(f: &Formation) -> Vec<(&'static str, Check)> {
    let mut out: Vec<(&'static str, Check)> = vec![
        ("formation-law", formation_law),
        ("hereditary", hereditary),
        ("saturation", saturation),
        ("barnes-kegel", barnes_kegel),
        ("chief-factor-characterisation", characterisation),
        ("equivalent-pairs", equivalent_pairs),
        ("central-at-larger-kernel", central_larger_kernel),
        ("central-in-subgroups", central_in_subgroups),
        ("central-refinement", central_refinement),
        ("section-of-quotient", section_of_quotient),
        ("g-isomorphic-sections", g_isomorphic_sections),
        ("jordan-holder", jordan_holder),
        ("product-section", product_section),
        ("hypercentre-hypercentral", hypercentre_hypercentral),
        ("hypercentre-quotient", hypercentre_quotient),
        ("hypercentre-intersection", hypercentre_intersection),
        ("hypercentral-image", hypercentral_image),
        ("minimal-supplement", minimal_supplement),
        ("supplement-centralizer", supplement_centralizer),
    ];
    match f.kind() {
        FormationKind::SigmaNilpotent(_) => out.push(("sigma-central-coherence", sigma_coherence)),
        FormationKind::Supersoluble => out.push(("cyclic-factor-coherence", cyclic_coherence)),
        _ => {}
    }
    out
}

/// Every lemma sweep for `f`, one report per claim.
pub fn verify_lemma_suite(catalog: &Catalog, f: &Formation, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let list = claims(f);
    let per_group: Vec<Vec<Tally>> = catalog
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let g = &e.group;
            let mut ctx = Ctx {
                g,
                f,
                opts,
                normals: normal_subgroups(g).to_vec(),
                series: chief_series(g),
                lattice: all_subgroups(g, opts.lattice_budget),
                rng: ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
            };
            list.iter()
                .map(|(_, check)| {
                    let mut t = Tally::default();
                    if let Err(err) = check(&mut ctx, &mut t) {
                        t.absorb(g, err);
                    }
                    t
                })
                .collect()
        })
        .collect();
    let mut totals: Vec<Tally> = vec![Tally::default(); list.len()];
    for tallies in per_group {
        for (k, t) in tallies.into_iter().enumerate() {
            totals[k] = std::mem::take(&mut totals[k]).merge(t);
        }
    }
    Ok(list
        .iter()
        .zip(totals)
        .map(|((claim, _), t)| finish(claim, Some(f), None, catalog, t, start, opts))
        .collect())
}

/// `G/N ∈ F` exactly when `G^F ≤ N`.
fn formation_law(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let d = residual(c.g, c.f)?;
    for n in &c.normals {
        let in_f = c.f.contains(&c.g.quotient_group(n)?);
        t.check(in_f == d.is_subset(n), || {
            Failure::new(c.g, format!("quotient membership {in_f} disagrees with residual containment"))
                .subgroup(n)
                .residual(&d)
        });
    }
    Ok(())
}

fn hereditary(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    if !c.f.hereditary || !c.f.contains(c.g) {
        return Ok(());
    }
    for s in c.lattice()?.subgroups() {
        t.check(c.f.contains(&c.g.restrict(s).group), || {
            Failure::new(c.g, "subgroup of a member is not a member").subgroup(s)
        });
    }
    Ok(())
}

/// `G^F ≤ Φ(G)` forces `G ∈ F`.
fn saturation(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    if !c.f.saturated {
        return Ok(());
    }
    let phi = c.lattice()?.frattini();
    let d = residual(c.g, c.f)?;
    t.check(!d.is_subset(&phi) || d.is_trivial(), || {
        Failure::new(c.g, "residual lies in the Frattini subgroup of a non-member")
            .residual(&d)
            .subgroup(&phi)
    });
    Ok(())
}

fn barnes_kegel(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let member = c.f.contains(c.g);
    for (k, h) in c.series.factors() {
        if !member {
            t.skip(SkipReason::HypothesisFailed);
            continue;
        }
        t.check(is_f_central(c.g, h, k, c.f)?, || {
            Failure::new(c.g, format!("chief factor {}/{} of a member is eccentric", h.order(), k.order())).subgroup(h)
        });
    }
    Ok(())
}

/// Membership, centrality of every chief factor, and a hypercentral normal
/// subgroup with quotient in F all agree.
fn characterisation(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let a = c.f.contains(c.g);
    let b = all_chief_factors_central(c.g, c.f)?;
    let mut third = false;
    for n in &c.normals {
        if c.f.contains(&c.g.quotient_group(n)?) && is_f_hypercentral(c.g, n, c.f)? {
            third = true;
            break;
        }
    }
    t.check(a == b && b == third, || {
        Failure::new(c.g, format!("member={a}, all factors central={b}, hypercentral with quotient in F={third}"))
    });
    Ok(())
}

/// Transporting `M ⋊ A` along relabellings (and an automorphism of `M`)
/// compatible with the action gives an isomorphic product.
fn equivalent_pairs(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let cap = c.g.order_cap();
    for (k, h) in c.series.clone().factors() {
        let cent = c.g.centralizer_of_section(h, k);
        let pair = section_pair(c.g, h, k, &cent)?;
        let original = pair.product(cap)?;
        let (m, a) = (pair.normal.order(), pair.acting.order());
        let mut fm: Vec<usize> = (1..m).collect();
        fm.shuffle(&mut c.rng);
        fm.insert(0, 0);
        let mut ga: Vec<usize> = (1..a).collect();
        ga.shuffle(&mut c.rng);
        ga.insert(0, 0);
        let auts = automorphisms(&pair.normal, c.opts.search_budget)?;
        let alpha = &auts[c.rng.random_range(0..auts.len())];
        // f = relabel after alpha
        let f: Vec<usize> = (0..m).map(|x| fm[alpha[x]]).collect();
        let mut f_inv = vec![0; m];
        for (x, &y) in f.iter().enumerate() {
            f_inv[y] = x;
        }
        let normal = pair.normal.relabel(&fm);
        let acting = pair.acting.relabel(&ga);
        let mut action = vec![Vec::new(); a];
        for (b, act) in pair.action.iter().enumerate() {
            action[ga[b]] = (0..m).map(|y| f[act[f_inv[y]]]).collect();
        }
        let moved = semidirect_product(&normal, &acting, &action, cap)?;
        t.check(c.iso(&original, &moved)?, || {
            Failure::new(c.g, format!("equivalent pair on factor {}/{} gives a different product", h.order(), k.order()))
                .subgroup(h)
        });
    }
    Ok(())
}

/// For a chief factor `R/S` and normal `K ≤ L ≤ C_G(R/S)`,
/// `[R/S](G/K) ∈ F` implies `[R/S](G/L) ∈ F`.
fn central_larger_kernel(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    for (s, r) in c.series.clone().factors() {
        let cent = c.g.centralizer_of_section(r, s);
        let index = r.order() / s.order();
        let admissible: Vec<&Subgroup> = c
            .normals
            .iter()
            .filter(|k| k.is_subset(&cent) && index * (c.g.order() / k.order()) <= c.g.order_cap())
            .collect();
        let mut member = Vec::with_capacity(admissible.len());
        for k in &admissible {
            member.push(c.f.contains(&semidirect_section(c.g, r, s, k)?));
        }
        for (i, k) in admissible.iter().enumerate() {
            for (j, l) in admissible.iter().enumerate() {
                if i == j || !k.is_subset(l) {
                    continue;
                }
                if !member[i] {
                    t.skip(SkipReason::HypothesisFailed);
                    continue;
                }
                t.check(member[j], || {
                    Failure::new(c.g, format!("[R/S](G/K) in F but not [R/S](G/L) for |L| = {}", l.order()))
                        .subgroup(k)
                        .centralizer(l)
                });
            }
        }
    }
    Ok(())
}

/// Central sections of `G` restrict to central sections of every subgroup.
fn central_in_subgroups(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let lattice = c.lattice()?;
    for (s, r) in c.series_sections() {
        match capped(t, is_f_central(c.g, &r, &s, c.f))? {
            None => continue,
            Some(false) => {
                t.skip(SkipReason::HypothesisFailed);
                continue;
            }
            Some(true) => {}
        }
        for e in lattice.subgroups() {
            let emb = c.g.restrict(e);
            let h = emb.localize(&e.intersection(&r));
            let k = emb.localize(&e.intersection(&s));
            let Some(central) = capped(t, is_f_central(&emb.group, &h, &k, c.f))? else { continue };
            t.check(central, || {
                Failure::new(c.g, format!("section {}/{} is eccentric in a subgroup", r.order(), s.order())).subgroup(e)
            });
        }
    }
    Ok(())
}

/// A central section `R/S` splits at every normal `S ≤ T ≤ R` into
/// sections that are central for the same kernel `C_G(R/S)`.
fn central_refinement(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    for (s, r) in c.series_sections() {
        let cent = c.g.centralizer_of_section(&r, &s);
        match capped(t, semidirect_section(c.g, &r, &s, &cent))? {
            None => continue,
            Some(x) if !c.f.contains(&x) => {
                t.skip(SkipReason::HypothesisFailed);
                continue;
            }
            Some(_) => {}
        }
        for tt in &c.normals {
            if !s.is_subset(tt) || !tt.is_subset(&r) {
                continue;
            }
            let lower = c.f.contains(&semidirect_section(c.g, tt, &s, &cent)?);
            let upper = c.f.contains(&semidirect_section(c.g, &r, tt, &cent)?);
            t.check(lower && upper, || {
                Failure::new(c.g, format!("refinement at |T| = {} is eccentric", tt.order())).subgroup(tt)
            });
        }
    }
    Ok(())
}

/// `[H/K](G/C)` is unchanged by first factoring out a normal `N ≤ K`.
fn section_of_quotient(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    for (k, h) in c.series.clone().factors() {
        let whole = semidirect_section(c.g, h, k, &c.g.centralizer_of_section(h, k))?;
        for n in &c.normals {
            if !n.is_subset(k) {
                continue;
            }
            let (q, pi) = c.g.quotient(n)?;
            let (hq, kq) = (pi.image(h), pi.image(k));
            let inq = semidirect_section(&q, &hq, &kq, &q.centralizer_of_section(&hq, &kq))?;
            t.check(c.iso(&whole, &inq)?, || {
                Failure::new(c.g, format!("factor {}/{} changes modulo a normal subgroup", h.order(), k.order()))
                    .subgroup(n)
            });
        }
    }
    Ok(())
}

/// Chief factors from chief series through every normal subgroup.
fn many_factors(c: &Ctx<'_>) -> Result<Vec<(Subgroup, Subgroup)>> {
    let mut seen = BTreeSet::new();
    for n in &c.normals {
        for (k, h) in chief_series_through(c.g, n)?.factors() {
            seen.insert((h.clone(), k.clone()));
        }
    }
    Ok(seen.into_iter().take(MAX_SECTIONS).collect())
}

/// G-isomorphic sections have equal centralizers and isomorphic products.
fn g_isomorphic_sections(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let factors = many_factors(c)?;
    for (i, (h1, k1)) in factors.iter().enumerate() {
        for (h2, k2) in &factors[i + 1..] {
            if !sections_g_isomorphic(c.g, (h1, k1), (h2, k2), c.opts.search_budget)? {
                continue;
            }
            let (c1, c2) = (c.g.centralizer_of_section(h1, k1), c.g.centralizer_of_section(h2, k2));
            let ok = c1 == c2
                && c.iso(&semidirect_section(c.g, h1, k1, &c1)?, &semidirect_section(c.g, h2, k2, &c2)?)?;
            t.check(ok, || Failure::new(c.g, "G-isomorphic sections give different products").subgroup(h1).centralizer(&c1));
        }
    }
    Ok(())
}

/// Chief series through each normal subgroup match the canonical one
/// factor by factor up to G-isomorphism.
fn jordan_holder(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    for n in &c.normals {
        let other = chief_series_through(c.g, n)?;
        t.check(c.series.factors_match(c.g, &other, c.opts.search_budget)?, || {
            Failure::new(c.g, "chief series factors do not match").subgroup(n)
        });
    }
    Ok(())
}

/// `[MN/N](G/C_G(MN/N)) ≅ [M/(M∩N)](G/C_G(M/(M∩N)))` on sampled pairs.
fn product_section(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let k = c.normals.len();
    for (i, j) in c.sample_pairs(k, k) {
        let (m, n) = (&c.normals[i], &c.normals[j]);
        let mn = c.g.join(m, n);
        let mi = m.intersection(n);
        let Some(a) = capped(t, semidirect_section(c.g, &mn, n, &c.g.centralizer_of_section(&mn, n)))? else {
            continue;
        };
        let b = semidirect_section(c.g, m, &mi, &c.g.centralizer_of_section(m, &mi))?;
        t.check(c.iso(&a, &b)?, || Failure::new(c.g, "MN/N and M/(M∩N) give different products").subgroup(m).residual(n));
    }
    Ok(())
}

fn hypercentre_hypercentral(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let z = f_hypercentre(c.g, c.f)?;
    let mut largest = true;
    for n in &c.normals {
        if !n.is_subset(&z) && is_f_hypercentral(c.g, n, c.f)? {
            largest = false;
        }
    }
    t.check(largest, || Failure::new(c.g, "a hypercentral normal subgroup escapes the hypercentre").subgroup(&z));
    Ok(())
}

/// `Z_F(G)/N = Z_F(G/N)` for normal `N ≤ Z_F(G)`.
fn hypercentre_quotient(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let z = f_hypercentre(c.g, c.f)?;
    for n in &c.normals {
        if !n.is_subset(&z) {
            continue;
        }
        let (q, pi) = c.g.quotient(n)?;
        let zq = f_hypercentre(&q, c.f)?;
        t.check(pi.image(&z) == zq, || {
            Failure::new(c.g, format!("hypercentre of the quotient has order {}", zq.order())).subgroup(n).centralizer(&z)
        });
    }
    Ok(())
}

/// `Z_F(B) ∩ A ≤ Z_F(B ∩ A)` on sampled subgroup pairs.
fn hypercentre_intersection(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let lattice = c.lattice()?.clone();
    let zf: Vec<Subgroup> = lattice
        .subgroups()
        .iter()
        .map(|s| {
            let e = c.g.restrict(s);
            f_hypercentre(&e.group, c.f).map(|z| e.lift(&z))
        })
        .collect::<Result<_>>()?;
    let n = lattice.len();
    for (ia, ib) in c.sample_pairs(n, n) {
        let (a, b) = (lattice.get(ia), lattice.get(ib));
        let meet = lattice.index_of(&a.intersection(b)).expect("intersections are subgroups");
        t.check(zf[ib].intersection(a).is_subset(&zf[meet]), || {
            Failure::new(c.g, "Z_F(B) ∩ A is not inside Z_F(B ∩ A)").subgroup(a).residual(b)
        });
    }
    Ok(())
}

/// Images of hypercentral normal subgroups stay hypercentral.
fn hypercentral_image(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let k = c.normals.len();
    for (i, j) in c.sample_pairs(k, k) {
        let (b, n) = (c.normals[i].clone(), c.normals[j].clone());
        if !is_f_hypercentral(c.g, &b, c.f)? {
            t.skip(SkipReason::HypothesisFailed);
            continue;
        }
        let (q, pi) = c.g.quotient(&n)?;
        let img = pi.image(&b);
        t.check(is_f_hypercentral(&q, &img, c.f)?, || {
            Failure::new(c.g, "image of a hypercentral subgroup is not hypercentral").subgroup(&b).residual(&n)
        });
    }
    Ok(())
}

fn supplements<'l>(g: &Group, lattice: &'l SubgroupLattice, n: &Subgroup) -> Vec<&'l Subgroup> {
    lattice
        .subgroups()
        .iter()
        .filter(|u| n.order() * u.order() / n.intersection(u).order() == g.order())
        .collect()
}

/// Minimal supplements to `N` with `G/N ∈ F` lie in F.
fn minimal_supplement(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    if !c.f.saturated {
        return Ok(());
    }
    let lattice = c.lattice()?;
    for n in &c.normals {
        if !c.f.contains(&c.g.quotient_group(n)?) {
            t.skip(SkipReason::HypothesisFailed);
            continue;
        }
        let sup = supplements(c.g, lattice, n);
        for u in &sup {
            if sup.iter().any(|v| v.order() < u.order() && v.is_subset(u)) {
                continue;
            }
            t.check(c.f.contains(&c.g.restrict(u).group), || {
                Failure::new(c.g, "minimal supplement is not in the formation").subgroup(u).residual(n)
            });
        }
    }
    Ok(())
}

/// For `U ∈ F` with `NU = G`, `U ∩ C_G(N)` is normal and F-hypercentral.
fn supplement_centralizer(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    if !c.f.saturated {
        return Ok(());
    }
    let lattice = c.lattice()?;
    let z = f_hypercentre(c.g, c.f)?;
    for n in &c.normals {
        let cn = c.g.centralizer(n);
        for u in supplements(c.g, lattice, n) {
            if !c.f.contains(&c.g.restrict(u).group) {
                t.skip(SkipReason::HypothesisFailed);
                continue;
            }
            let zz = u.intersection(&cn);
            t.check(c.g.is_normal(&zz) && zz.is_subset(&z), || {
                Failure::new(c.g, "U ∩ C_G(N) is not a normal subgroup of the hypercentre")
                    .subgroup(u)
                    .residual(n)
                    .centralizer(&zz)
            });
        }
    }
    Ok(())
}

/// A named centrality test agrees with F-centrality on the chief factors of
/// every subgroup.
fn coherence(c: &mut Ctx<'_>, t: &mut Tally, test: &dyn CentralityTest) -> Result<()> {
    for e in c.lattice()?.subgroups() {
        let emb = c.g.restrict(e);
        for (k, h) in chief_series(&emb.group).factors() {
            let a = test.is_central(&emb.group, h, k)?;
            let b = is_f_central(&emb.group, h, k, c.f)?;
            t.check(a == b, || {
                Failure::new(c.g, format!("{}={a} but {}-central={b} on a factor of order {}", test.name(), c.f.name(), h.order() / k.order()))
                    .subgroup(e)
            });
        }
    }
    Ok(())
}

fn sigma_coherence(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    let sigma = c.f.sigma().cloned().unwrap_or_default();
    coherence(c, t, &SigmaCentral(sigma))
}

fn cyclic_coherence(c: &mut Ctx<'_>, t: &mut Tally) -> Result<()> {
    coherence(c, t, &CyclicFactors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formations::builtin_formations;

    #[test]
    fn suite_passes_on_small_catalog() {
        let catalog = Catalog::generate(12, 512, vec![]).unwrap();
        for f in builtin_formations(None) {
            for r in verify_lemma_suite(&catalog, &f, &VerifyOptions::default()).unwrap() {
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn minimal_supplements_in_s4() {
        let s4 = crate::families::symmetric(4, 512).unwrap();
        let lattice = all_subgroups(&s4, 200).unwrap();
        let a4 = normal_subgroups(&s4)[2].clone();
        let sup = supplements(&s4, &lattice, &a4);
        let minimal: Vec<_> = sup
            .iter()
            .filter(|u| !sup.iter().any(|v| v.order() < u.order() && v.is_subset(u)))
            .collect();
        let orders: Vec<usize> = minimal.iter().map(|u| u.order()).collect();
        assert_eq!(orders, [2, 2, 2, 2, 2, 2, 4, 4, 4]);
    }
}
