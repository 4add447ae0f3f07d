//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Thresholds are fixed constants below.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{symmetric, Set, Tab};
use formgroup::formations::{f_hypercentre, is_nilpotent, is_sigma_nilpotent, residual, Formation, SigmaPartition};
use formgroup::lattice::{all_subgroups, chief_series, normal_subgroups};
use formgroup::perm::Perm;
use formgroup::subnormality::{ChainSearch, StepRule};
use formgroup::verifier::{
    verify_holomorph_bound, verify_lemma_suite, verify_schenkman, verify_section3, verify_theorem_a,
    verify_theorem_b, Catalog, VerificationReport, VerifyOptions,
};
use formgroup::{Group, Result, Subgroup, DEFAULT_ORDER_CAP};

const THEOREM_B_MAX_ORDER: usize = 48;
const THEOREM_B_MIN_CHECKED: u64 = 100;
const THEOREM_B_WALL: Duration = Duration::from_secs(300);
const THEOREM_A_MAX_ORDER: usize = 24;
const THEOREM_A_MIN_CHECKED: u64 = 50;
const THEOREM_A_WALL: Duration = Duration::from_secs(600);
const DEFAULT_MAX_ORDER: usize = 48;
const LEMMA_MAX_ORDER: usize = 24;
const EQUIVALENCE_MAX_ORDER: usize = 24;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn sigma_23() -> SigmaPartition {
    SigmaPartition::new(vec![vec![2, 3]]).expect("valid partition")
}

fn formations() -> Vec<Formation> {
    vec![
        Formation::nilpotent(),
        Formation::supersoluble(),
        Formation::soluble(),
        Formation::sigma_nilpotent(sigma_23()),
        Formation::sigma_nilpotent(SigmaPartition::singletons()),
    ]
}

fn catalog(max_order: usize) -> Result<Catalog> {
    Catalog::generate(max_order, DEFAULT_ORDER_CAP, Vec::new())
}

fn failures(reports: &[VerificationReport]) -> usize {
    reports.iter().map(|r| r.failures.len()).sum()
}

fn theorem_b() -> Result<Outcome> {
    let cat = catalog(THEOREM_B_MAX_ORDER)?;
    let opts = VerifyOptions::default();
    let start = Instant::now();
    let mut reports = Vec::new();
    for f in formations() {
        reports.push(verify_theorem_b(&cat, &f, &opts)?);
    }
    let wall = start.elapsed();
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    let per: Vec<String> = reports.iter().map(|r| format!("{}={}", r.formation.as_deref().unwrap_or("?"), r.checked)).collect();
    let fails = failures(&reports);
    outcome(
        checked >= THEOREM_B_MIN_CHECKED && fails == 0 && wall <= THEOREM_B_WALL,
        format!(
            "checked {checked} (need >= {THEOREM_B_MIN_CHECKED}) [{}], failures {fails}, wall {:.1}s (limit {}s)",
            per.join(", "),
            wall.as_secs_f64(),
            THEOREM_B_WALL.as_secs()
        ),
    )
}

/// Downward closure from `G` by normal or core-quotient-in-F steps, computed
/// as a fixpoint over the whole lattice.
fn kegel_closure(g: &Group, f: &Formation, lattice: &formgroup::lattice::SubgroupLattice) -> Result<BTreeSet<usize>> {
    let mut reached: BTreeSet<usize> = [lattice.whole_index()].into_iter().collect();
    loop {
        let mut grew = false;
        for x in 0..lattice.len() {
            if reached.contains(&x) {
                continue;
            }
            let xs = lattice.get(x);
            for &y in &reached {
                if y == x || !lattice.contains(x, y) {
                    continue;
                }
                let ys = lattice.get(y);
                let ok = g.is_normal_in(xs, ys) || {
                    let e = g.restrict(ys);
                    let core = e.localize(&g.core(ys, xs));
                    f.contains(&e.group.quotient_group(&core)?)
                };
                if ok {
                    reached.insert(x);
                    grew = true;
                    break;
                }
            }
        }
        if !grew {
            return Ok(reached);
        }
    }
}

fn theorem_a() -> Result<Outcome> {
    let cat = catalog(THEOREM_A_MAX_ORDER)?;
    let opts = VerifyOptions::default();
    let fs = [Formation::nilpotent(), Formation::supersoluble()];
    let start = Instant::now();
    let mut reports = Vec::new();
    for f in &fs {
        reports.push(verify_theorem_a(&cat, f, &opts)?);
    }
    let wall = start.elapsed();

    let mut enumerated = 0usize;
    let mut mismatches = 0usize;
    for e in &cat.entries {
        let lattice = all_subgroups(&e.group, opts.lattice_budget)?;
        for f in &fs {
            let reach = ChainSearch::new(&e.group, &lattice, StepRule::Kegel(f)).reachable_to(lattice.whole_index())?;
            let engine: BTreeSet<usize> = reach.ones().collect();
            let oracle = kegel_closure(&e.group, f, &lattice)?;
            enumerated += engine.len();
            if engine != oracle {
                mismatches += 1;
            }
        }
    }

    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    let instances: u64 = reports.iter().map(|r| r.instances).sum();
    let fails = failures(&reports);
    outcome(
        checked >= THEOREM_A_MIN_CHECKED && fails == 0 && mismatches == 0 && wall <= THEOREM_A_WALL,
        format!(
            "hypothesis-satisfying {checked} (need >= {THEOREM_A_MIN_CHECKED}) of {instances} K-F-subnormal instances, \
             failures {fails}, enumeration mismatches {mismatches} over {enumerated} subgroups, wall {:.1}s (limit {}s)",
            wall.as_secs_f64(),
            THEOREM_A_WALL.as_secs()
        ),
    )
}

fn schenkman() -> Result<Outcome> {
    let cat = catalog(DEFAULT_MAX_ORDER)?;
    let reports = verify_schenkman(&cat, &VerifyOptions::default())?;
    let parts: Vec<String> = reports
        .iter()
        .map(|r| format!("{}: checked {}, failures {}", r.claim, r.checked, r.failures.len()))
        .collect();
    let ok = reports.len() == 2 && reports.iter().all(|r| r.failures.is_empty() && r.checked > 0);
    outcome(ok, parts.join("; "))
}

fn holomorph() -> Result<Outcome> {
    let cat = catalog(DEFAULT_MAX_ORDER)?;
    let opts = VerifyOptions::default();
    let mut reports = Vec::new();
    for f in formations() {
        reports.push(verify_holomorph_bound(&cat, &f, &opts)?);
    }
    let tight = reports[0].notes.iter().any(|n| n == "sym:3: |G/Z| = 6, |U|*|Aut(U)| = 6");
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    let budget: u64 = reports.iter().map(|r| r.budget_skips()).sum();
    let fails = failures(&reports);
    outcome(
        fails == 0 && tight && checked > 0,
        format!("checked {checked}, budget/cap skips {budget}, failures {fails}, S3/nilpotent tight 6 = 6: {tight}"),
    )
}

fn lemmas() -> Result<Outcome> {
    let cat = catalog(LEMMA_MAX_ORDER)?;
    let opts = VerifyOptions::default();
    let mut reports = Vec::new();
    for f in formations() {
        reports.extend(verify_lemma_suite(&cat, &f, &opts)?);
    }
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.failures.is_empty())
        .map(|r| format!("{}/{}", r.claim, r.formation.as_deref().unwrap_or("?")))
        .collect();
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    outcome(
        bad.is_empty(),
        format!("{} sweeps, {checked} checked instances, violations {} {:?}", reports.len(), failures(&reports), bad),
    )
}

fn engine_symmetric(k: usize) -> Result<(Group, Vec<Perm>)> {
    let cycle = Perm::from_cycles(k, &[(0..k).collect()])?;
    let swap = Perm::from_cycles(k, &[vec![0, 1]])?;
    Group::from_permutation_gens_with_elements(k, &[cycle, swap], DEFAULT_ORDER_CAP)
}

type PermSet = BTreeSet<Vec<usize>>;

fn engine_set(perms: &[Perm], s: &Subgroup) -> PermSet {
    s.elements().iter().map(|&x| perms[x].images().iter().map(|&i| i as usize).collect()).collect()
}

fn oracle_set(perms: &[Vec<usize>], s: &Set) -> PermSet {
    s.iter().map(|&x| perms[x].clone()).collect()
}

fn oracles() -> Result<Outcome> {
    let (t3, p3) = symmetric(3);
    let (t4, p4) = symmetric(4);
    let (g3, e3) = engine_symmetric(3)?;
    let (g4, e4) = engine_symmetric(4)?;

    let res_s3_n = oracle_set(&p3, &t3.residual(|t, n| t.quotient_nilpotent(n)));
    let res_s4_u = oracle_set(&p4, &t4.residual(|t, n| t.quotient_supersoluble(n)));
    let zu_s3 = oracle_set(&p3, &t3.hypercentre(Tab::is_supersoluble));
    let zn_s3 = oracle_set(&p3, &t3.hypercentre(Tab::is_nilpotent));
    let v4 = t4.residual(|t, n| t.quotient_supersoluble(n));
    let c_v4 = oracle_set(&p4, &t4.centralizer_mod(&v4, &t4.trivial()));
    let chains = t4.chief_chains(&t4.whole());
    let oracle_factors: Vec<usize> = chains[0].windows(2).map(|w| w[1].len() / w[0].len()).collect();

    let ev4 = normal_subgroups(&g4).iter().find(|n| n.order() == 4).cloned();
    let checks = [
        ("residual(S3,N)=A3", res_s3_n.len() == 3 && engine_set(&e3, &residual(&g3, &Formation::nilpotent())?) == res_s3_n),
        ("residual(S4,U)=V4", res_s4_u.len() == 4 && engine_set(&e4, &residual(&g4, &Formation::supersoluble())?) == res_s4_u),
        ("Z_U(S3)=S3", zu_s3.len() == 6 && engine_set(&e3, &f_hypercentre(&g3, &Formation::supersoluble())?) == zu_s3),
        ("Z_N(S3)=1", zn_s3.len() == 1 && engine_set(&e3, &f_hypercentre(&g3, &Formation::nilpotent())?) == zn_s3),
        (
            "C_S4(V4)=V4",
            c_v4 == oracle_set(&p4, &v4)
                && ev4.as_ref().is_some_and(|n| engine_set(&e4, n) == res_s4_u && engine_set(&e4, &g4.centralizer(n)) == c_v4),
        ),
        (
            "chief factors of S4 = (4,3,2)",
            chains.len() == 1 && oracle_factors == [4, 3, 2] && chief_series(&g4).factor_orders() == oracle_factors,
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    outcome(
        failed.is_empty(),
        format!("{} of {} values match the brute-force oracle exactly {:?}", checks.len() - failed.len(), checks.len(), failed),
    )
}

fn equivalence() -> Result<Outcome> {
    let cat = catalog(EQUIVALENCE_MAX_ORDER)?;
    let opts = VerifyOptions::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for sigma in [sigma_23(), SigmaPartition::singletons()] {
        let reports = verify_section3(&cat, &sigma, &opts)?;
        let eq = reports.iter().find(|r| r.claim == "sigma-subnormal-equivalence").expect("report present");
        ok &= eq.failures.is_empty() && eq.checked > 0 && eq.budget_skips() == 0;
        parts.push(format!("sigma {}: {} pairs, {} mismatches", sigma_label(&sigma), eq.checked, eq.failures.len()));
    }
    let whole = catalog(DEFAULT_MAX_ORDER)?;
    let singles = SigmaPartition::singletons();
    let disagree = whole.entries.iter().filter(|e| is_nilpotent(&e.group) != is_sigma_nilpotent(&e.group, &singles)).count();
    ok &= disagree == 0;
    parts.push(format!("nilpotent vs singleton sigma on {} groups: {disagree} disagreements", whole.len()));
    outcome(ok, parts.join("; "))
}

fn sigma_label(s: &SigmaPartition) -> String {
    let classes: Vec<String> = s.listed_classes().iter().map(|c| format!("{c:?}")).collect();
    if classes.is_empty() {
        "singletons".into()
    } else {
        classes.join("")
    }
}

fn determinism() -> Result<Outcome> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_formgroup"))
            .args(["verify", "all", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && a.status.code() == b.status.code();
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap_or(serde_json::Value::Null);
    let n = parsed["reports"].as_array().map_or(0, |r| r.len());
    outcome(
        same && n > 0,
        format!("{} bytes, {n} reports, exit {:?}, identical: {same}", a.stdout.len(), a.status.code()),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 8] = [
        ("theorem-b sweep", theorem_b),
        ("theorem-a sweep", theorem_a),
        ("schenkman", schenkman),
        ("holomorph bound", holomorph),
        ("lemma suite", lemmas),
        ("oracle cross-checks", oracles),
        ("equivalence sweeps", equivalence),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        all &= o.pass;
        println!(
            "criterion {} {name}: {} ({}; {:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
