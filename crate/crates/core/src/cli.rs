use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use formgroup::error::{Error, Result};
use formgroup::families::Selector;
use formgroup::formations::{
    f_hypercentre, is_nilpotent, is_soluble, is_supersoluble, residual, Formation, SigmaPartition,
};
use formgroup::group::{Group, Subgroup};
use formgroup::io::{dump_table, read_group_file};
use formgroup::iso::DEFAULT_SEARCH_BUDGET;
use formgroup::lattice::{chief_series, frattini, normal_subgroups, DEFAULT_LATTICE_BUDGET};
use formgroup::subnormality::{is_f_subnormal, is_k_f_subnormal, is_sigma_subnormal, is_subnormal, WitnessChain};
use formgroup::verifier::{self, exit_code, run_claim, Catalog, CatalogEntry, VerificationReport, VerifyOptions, VerifyPlan};
use formgroup::DEFAULT_ORDER_CAP;

pub const DEFAULT_MAX_ORDER: usize = 48;

#[derive(Parser, Debug)]
#[command(name = "formgroup", version, about = "Formation residuals, F-hypercentres and Kegel subnormality for small finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct Common {
    /// TOML config file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub formation: Option<String>,
    /// Sigma partition, e.g. `[[2,3],[5]]`; unlisted primes are singletons.
    #[arg(long, global = true)]
    pub sigma: Option<String>,
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    #[arg(long, global = true)]
    pub order_cap: Option<usize>,
    /// Automorphism/isomorphism search budget in backtracking nodes.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest group order whose subgroup lattice is enumerated.
    #[arg(long, global = true)]
    pub lattice_budget: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Group file(s); for `verify`, added to the catalog.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Record wall time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Members of the F-residual.
    Residual { source: Option<String> },
    /// Members of the F-hypercentre.
    Hypercentre { source: Option<String> },
    /// Witness chain for a subgroup given by generator indices, or NEGATIVE.
    Subnormal {
        source: Option<String>,
        /// Comma-separated element indices as printed by `group show`.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<usize>,
        #[arg(long, value_enum, default_value = "subnormal")]
        kind: SubnormalKind,
    },
    /// Run a verification sweep over the catalog.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupAction {
    Show {
        source: Option<String>,
        /// Also print the Cayley table in group-file format.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SubnormalKind {
    Subnormal,
    Kf,
    F,
    Sigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    TheoremA,
    TheoremB,
    Schenkman,
    HolomorphBound,
    Section3,
    Lemmas,
    All,
}

impl From<Claim> for verifier::Claim {
    fn from(c: Claim) -> verifier::Claim {
        match c {
            Claim::TheoremA => verifier::Claim::TheoremA,
            Claim::TheoremB => verifier::Claim::TheoremB,
            Claim::Schenkman => verifier::Claim::Schenkman,
            Claim::HolomorphBound => verifier::Claim::HolomorphBound,
            Claim::Section3 => verifier::Claim::Section3,
            Claim::Lemmas => verifier::Claim::Lemmas,
            Claim::All => verifier::Claim::All,
        }
    }
}

/// Config file contents; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub formation: Option<String>,
    pub sigma: Option<Vec<Vec<u64>>>,
    pub max_order: Option<usize>,
    pub order_cap: Option<usize>,
    pub budget: Option<u64>,
    pub lattice_budget: Option<usize>,
    pub inputs: Option<Vec<PathBuf>>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

/// Validated settings.
#[derive(Debug)]
pub struct Config {
    pub formation: Option<String>,
    pub sigma: Option<SigmaPartition>,
    pub max_order: usize,
    pub order_cap: usize,
    pub budget: u64,
    pub lattice_budget: usize,
    pub inputs: Vec<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub timing: bool,
}

impl Config {
    pub fn resolve(common: &Common) -> Result<Config> {
        let file = match &common.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)?;
                toml::from_str::<FileConfig>(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        let sigma = match (&common.sigma, file.sigma) {
            (Some(s), _) => Some(SigmaPartition::parse(s)?),
            (None, Some(classes)) => Some(SigmaPartition::new(classes)?),
            (None, None) => None,
        };
        let mut inputs = file.inputs.unwrap_or_default();
        inputs.extend(common.input.iter().cloned());
        let cfg = Config {
            formation: common.formation.clone().or(file.formation),
            sigma,
            max_order: common.max_order.or(file.max_order).unwrap_or(DEFAULT_MAX_ORDER),
            order_cap: common.order_cap.or(file.order_cap).unwrap_or(DEFAULT_ORDER_CAP),
            budget: common.budget.or(file.budget).unwrap_or(DEFAULT_SEARCH_BUDGET),
            lattice_budget: common.lattice_budget.or(file.lattice_budget).unwrap_or(DEFAULT_LATTICE_BUDGET),
            inputs,
            format: common.format.or(file.format).unwrap_or(Format::Text),
            seed: common.seed.or(file.seed).unwrap_or(0),
            timing: common.timing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let wants_sigma = self.formation.as_deref() == Some("sigma-nilpotent");
        match (&self.formation, &self.sigma) {
            (Some(_), None) if wants_sigma => {
                return Err(Error::InvalidConfig("formation sigma-nilpotent requires a sigma partition".into()))
            }
            (Some(f), Some(_)) if !wants_sigma => {
                return Err(Error::InvalidConfig(format!("a sigma partition is only meaningful for sigma-nilpotent, not {f}")))
            }
            _ => {}
        }
        if let Some(f) = &self.formation {
            Formation::from_selector(f, self.sigma.as_ref())?;
        }
        if self.budget == 0 || self.lattice_budget == 0 || self.order_cap == 0 || self.max_order == 0 {
            return Err(Error::InvalidConfig("budgets, caps and max_order must be positive".into()));
        }
        if self.max_order > self.order_cap {
            return Err(Error::InvalidConfig(format!(
                "max_order {} exceeds the order cap {}",
                self.max_order, self.order_cap
            )));
        }
        Ok(())
    }

    fn formation(&self) -> Result<Formation> {
        let name = self
            .formation
            .as_deref()
            .ok_or_else(|| Error::InvalidConfig("this command needs --formation".into()))?;
        Formation::from_selector(name, self.sigma.as_ref())
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions { lattice_budget: self.lattice_budget, search_budget: self.budget, seed: self.seed, timing: self.timing }
    }

    /// The configured formation and sigma, or the standard plan.
    fn plan(&self) -> Result<VerifyPlan> {
        let mut plan = VerifyPlan::standard(self.sigma.iter().cloned().collect());
        if self.formation.is_some() {
            plan.formations = vec![self.formation()?];
        }
        Ok(plan)
    }

    /// A selector, or else a group file path; falls back to `--input`.
    fn load_group(&self, source: Option<&str>) -> Result<Group> {
        match source {
            Some(s) => match Selector::parse(s) {
                Ok(sel) => Ok(sel.build(self.order_cap)?.with_label(sel.to_string())),
                Err(e) if !Path::new(s).exists() => Err(e),
                Err(_) => read_group_file(Path::new(s), self.order_cap),
            },
            None => match self.inputs.first() {
                Some(p) => read_group_file(p, self.order_cap),
                None => Err(Error::InvalidConfig("no group given (selector, file path or --input)".into())),
            },
        }
    }
}

fn members(s: &Subgroup) -> String {
    let v: Vec<String> = s.elements().iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn emit(out: &mut dyn Write, cfg: &Config, text: String, value: serde_json::Value) -> Result<()> {
    match cfg.format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))?,
    }
    Ok(())
}

fn group_show(out: &mut dyn Write, cfg: &Config, g: &Group, table: bool) -> Result<()> {
    let normals = normal_subgroups(g);
    let series = chief_series(g);
    let phi = frattini(g, cfg.lattice_budget).ok();
    let (nil, sup, sol) = (is_nilpotent(g), is_nilpotent(g) || is_supersoluble(g), is_soluble(g));
    let mut text = format!("group {}\norder {}\ncenter order {}\n", g.label(), g.order(), g.center().order());
    text.push_str("element orders:");
    for x in g.elements() {
        text.push_str(&format!(" {x}:{}", g.element_order(x)));
    }
    text.push('\n');
    text.push_str(&format!("normal subgroups ({}):\n", normals.len()));
    for n in normals {
        text.push_str(&format!("  order {} {}\n", n.order(), members(n)));
    }
    let orders: Vec<String> = series.orders().iter().map(|o| o.to_string()).collect();
    text.push_str(&format!("chief series orders {}\n", orders.join(",")));
    match &phi {
        Some(p) => text.push_str(&format!("frattini order {} {}\n", p.order(), members(p))),
        None => text.push_str("frattini unavailable (lattice budget)\n"),
    }
    text.push_str(&format!("nilpotent {nil}\nsupersoluble {sup}\nsoluble {sol}\n"));
    if table {
        text.push_str(&dump_table(g));
    }
    let value = json!({
        "label": g.label(),
        "order": g.order(),
        "center_order": g.center().order(),
        "element_orders": g.element_orders(),
        "normal_subgroups": normals.iter().map(|n| n.elements()).collect::<Vec<_>>(),
        "chief_series_orders": series.orders(),
        "chief_series": series.terms.iter().map(|t| t.elements()).collect::<Vec<_>>(),
        "frattini": phi.as_ref().map(|p| p.elements()),
        "nilpotent": nil,
        "supersoluble": sup,
        "soluble": sol,
        "table": if table { Some(g.table_rows()) } else { None },
    });
    emit(out, cfg, text, value)
}

fn chain_value(w: &WitnessChain) -> serde_json::Value {
    json!({
        "render": w.render(),
        "terms": w.terms.iter().map(|t| t.elements()).collect::<Vec<_>>(),
        "steps": w.steps,
    })
}

fn subnormal(out: &mut dyn Write, cfg: &Config, g: &Group, gens: &[usize], kind: SubnormalKind) -> Result<()> {
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(Error::ElementOutOfRange { index: bad, order: g.order() });
    }
    let a = g.closure(gens);
    let chain = match kind {
        SubnormalKind::Subnormal => is_subnormal(g, &a),
        SubnormalKind::Kf => is_k_f_subnormal(g, &a, &cfg.formation()?, cfg.lattice_budget)?,
        SubnormalKind::F => is_f_subnormal(g, &a, &cfg.formation()?, cfg.lattice_budget)?,
        SubnormalKind::Sigma => {
            let sigma = cfg
                .sigma
                .clone()
                .ok_or_else(|| Error::InvalidConfig("--kind sigma requires --sigma".into()))?;
            is_sigma_subnormal(g, &a, &sigma, cfg.lattice_budget)?
        }
    };
    let text = match &chain {
        Some(w) => {
            let mut s = format!("{}\n", w.render());
            for t in &w.terms {
                s.push_str(&format!("  order {} {}\n", t.order(), members(t)));
            }
            s
        }
        None => format!("NEGATIVE (subgroup of order {} {})\n", a.order(), members(&a)),
    };
    let value = json!({
        "subgroup": a.elements(),
        "positive": chain.is_some(),
        "chain": chain.as_ref().map(chain_value),
    });
    emit(out, cfg, text, value)
}

fn run_verify(cfg: &Config, claim: Claim) -> Result<Vec<VerificationReport>> {
    let mut extra = Vec::new();
    for p in &cfg.inputs {
        extra.push(CatalogEntry { group: read_group_file(p, cfg.order_cap)?, provenance: p.display().to_string() });
    }
    let catalog = Catalog::generate(cfg.max_order, cfg.order_cap, extra)?;
    run_claim(claim.into(), &catalog, &cfg.plan()?, &cfg.options())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = Config::resolve(&cli.common)?;
    match &cli.command {
        Command::Group { action: GroupAction::Show { source, table } } => {
            let g = cfg.load_group(source.as_deref())?;
            group_show(out, &cfg, &g, *table)?;
        }
        Command::Residual { source } => {
            let g = cfg.load_group(source.as_deref())?;
            let f = cfg.formation()?;
            let r = residual(&g, &f)?;
            let text = format!("{}-residual of {}: order {} {}\n", f.name(), g.label(), r.order(), members(&r));
            emit(out, &cfg, text, json!({"group": g.label(), "formation": f.name(), "order": r.order(), "members": r.elements()}))?;
        }
        Command::Hypercentre { source } => {
            let g = cfg.load_group(source.as_deref())?;
            let f = cfg.formation()?;
            let z = f_hypercentre(&g, &f)?;
            let text = format!("{}-hypercentre of {}: order {} {}\n", f.name(), g.label(), z.order(), members(&z));
            emit(out, &cfg, text, json!({"group": g.label(), "formation": f.name(), "order": z.order(), "members": z.elements()}))?;
        }
        Command::Subnormal { source, gens, kind } => {
            let g = cfg.load_group(source.as_deref())?;
            subnormal(out, &cfg, &g, gens, *kind)?;
        }
        Command::Verify { claim } => {
            let reports = run_verify(&cfg, *claim)?;
            let code = exit_code(&reports);
            let text: String = reports.iter().map(|r| r.to_text()).collect();
            emit(out, &cfg, text, json!({"reports": reports, "exit_code": code}))?;
            return Ok(code);
        }
    }
    Ok(0)
}

/// Runs the parsed command, writing results to `out` and errors to `err`;
/// returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::SearchBudgetExceeded { .. } | Error::LatticeBudgetExceeded { .. } | Error::OrderCapExceeded { .. } => 2,
                _ => 3,
            }
        }
    }
}
