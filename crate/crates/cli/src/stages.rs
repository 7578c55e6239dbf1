//! `stage`, `relabel` and `d`.

use clap::Args;
use normtower::graphs::{canonical_form, rigid_family, CanonicalForm, Graph};
use normtower::towerlab::{
    assemble_main, build_d, build_stage, check_conditions, d_report, e_for_target, relabel_by_e,
    vertex_level_check, ConditionReport, DReport, Factor, RepresentativePolicy, Shape, StageOptions,
    SubHeights, VertexCheck,
};
use normtower::{Error, Result, Tower};
use serde::Serialize;

use crate::report::Outcome;
use crate::{Budget, PolicyArg};

fn options(extended: bool, b: &Budget) -> StageOptions {
    let base = if extended {
        StageOptions::extended()
    } else {
        StageOptions::default()
    };
    StageOptions {
        search: b.search(),
        ..base
    }
}

#[derive(Args, Serialize, Debug)]
pub struct StageArgs {
    /// Stage index.
    #[arg(long)]
    pub n: usize,
    /// Allow the larger extended stage limit.
    #[arg(long)]
    pub extended: bool,
    /// Replace F_n by the full symmetric group before checking conditions.
    #[arg(long)]
    pub tamper: bool,
    /// Which member of the rigid family to use as the seed.
    #[arg(long, default_value_t = 0)]
    pub seed_index: usize,
    /// Also compute the automorphism group of the stage graph itself.
    #[arg(long)]
    pub vertex_check: bool,
}

#[derive(Serialize)]
struct StageReport {
    n: usize,
    max_stage: usize,
    seed_index: usize,
    seed: Graph,
    seed_canonical_form: CanonicalForm,
    components: usize,
    tampered: bool,
    height: usize,
    h_order: String,
    f_order: String,
    tower: Tower,
    conditions: ConditionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_check: Option<VertexCheck>,
}

pub fn stage(a: &StageArgs, b: &Budget) -> Result<Outcome> {
    let opts = options(a.extended, b);
    opts.check_stage(a.n)?;
    b.check_degree(1 << a.n)?;
    let family = rigid_family(a.seed_index + 1)?;
    let seed = family.members[a.seed_index].clone();
    let s = build_stage(&seed, a.n, &opts)?;
    let checked = if a.tamper { s.tampered() } else { s.clone() };
    let conditions = check_conditions(&checked, &opts.search);
    let vertex_check = if a.vertex_check {
        b.check_degree(s.graph.vertex_count())?;
        Some(vertex_level_check(&s)?)
    } else {
        None
    };
    let vertex_ok = vertex_check
        .as_ref()
        .map_or(true, |v| v.component_action_is_symmetric && v.component_blocks_preserved);
    let height = s.tower_height();
    let passed = height == a.n && conditions.all_passed && vertex_ok;
    let summary = format!(
        "n={} height={} conditions={}",
        a.n,
        height,
        if conditions.all_passed { "pass" } else { "fail" }
    );
    let report = StageReport {
        n: a.n,
        max_stage: opts.max_stage,
        seed_index: a.seed_index,
        seed_canonical_form: canonical_form(&seed),
        seed,
        components: 1 << a.n,
        tampered: a.tamper,
        height,
        h_order: s.h.order().to_string(),
        f_order: checked.f.order().to_string(),
        tower: s.tower.clone(),
        conditions,
        vertex_check,
    };
    Outcome::new(passed, &report, summary)
}

#[derive(Args, Serialize, Debug)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["beta", "identity", "e"])))]
pub struct RelabelArgs {
    /// Number of seed graphs minus one; stages run up to L-1.
    #[arg(long = "L", visible_alias = "l")]
    pub l: usize,
    /// Height of the unrelabeled assembly.
    #[arg(long)]
    pub alpha: usize,
    /// Target height; picks the identification that should produce it.
    #[arg(long)]
    pub beta: Option<usize>,
    /// Identify nothing.
    #[arg(long)]
    pub identity: bool,
    /// Explicit partition of 0..=L as JSON, e.g. [[0],[1,2],[3]].
    #[arg(long)]
    pub e: Option<String>,
    /// Which member of each class stands for the class.
    #[arg(long, value_enum, default_value_t = PolicyArg::Min)]
    pub policy: PolicyArg,
    /// Allow the larger extended stage limit.
    #[arg(long)]
    pub extended: bool,
}

#[derive(Serialize)]
struct AssemblySummary {
    degree: usize,
    factors: Vec<Factor>,
    ambient_class_sizes: Vec<usize>,
    height: usize,
    level_orders: Vec<String>,
    sub_heights: SubHeights,
}

#[derive(Serialize)]
struct RelabelReport {
    l: usize,
    alpha: usize,
    beta: Option<usize>,
    e: Vec<Vec<usize>>,
    policy: RepresentativePolicy,
    shape: Shape,
    predicted: Option<usize>,
    measured: usize,
    assembly: AssemblySummary,
    relabeled_degree: usize,
    relabeled_effective_seed: Vec<usize>,
    relabeled_level_orders: Vec<String>,
    shape_witness: Option<bool>,
    other_policy_measured: usize,
    representative_independent: bool,
}

pub fn relabel(a: &RelabelArgs, b: &Budget) -> Result<Outcome> {
    if a.l == 0 || a.alpha >= a.l {
        return Err(Error::invalid(format!("need alpha < L, got alpha={} L={}", a.alpha, a.l)));
    }
    let e = match (&a.beta, &a.e) {
        (Some(beta), _) => {
            if *beta == 0 || *beta >= a.l {
                return Err(Error::invalid(format!("beta must lie in [1, L), got {beta}")));
            }
            e_for_target(a.l, a.alpha, *beta)
        }
        (None, Some(text)) => serde_json::from_str::<Vec<Vec<usize>>>(text)
            .map_err(|err| Error::invalid(format!("--e: {err}")))?,
        (None, None) => e_for_target(a.l, a.alpha, a.alpha),
    };
    let opts = options(a.extended, b);
    opts.check_stage(a.l - 1)?;
    let family = rigid_family(a.l + 1)?;
    let assembly = assemble_main(&family, a.l, a.alpha, &opts)?;
    b.check_degree(assembly.degree())?;
    let tower = assembly.tower(&opts)?;
    let sub_heights = assembly.sub_heights(&opts)?;

    let policy: RepresentativePolicy = a.policy.into();
    let other = match policy {
        RepresentativePolicy::Min => RepresentativePolicy::Max,
        RepresentativePolicy::Max => RepresentativePolicy::Min,
    };
    let outcome = relabel_by_e(&assembly, &e, policy, &opts)?;
    let mirror = relabel_by_e(&assembly, &e, other, &opts)?;
    let representative_independent = mirror.measured == outcome.measured;
    let passed = tower.height == a.alpha
        && outcome.predicted == Some(outcome.measured)
        && outcome.shape_witness != Some(false)
        && representative_independent;
    let summary = format!(
        "L={} alpha={} assembled={} predicted={} measured={}",
        a.l,
        a.alpha,
        tower.height,
        outcome.predicted.map_or("none".to_string(), |p| p.to_string()),
        outcome.measured
    );
    let report = RelabelReport {
        l: a.l,
        alpha: a.alpha,
        beta: a.beta.or(if a.identity { Some(a.alpha) } else { None }),
        e,
        policy,
        shape: outcome.shape,
        predicted: outcome.predicted,
        measured: outcome.measured,
        assembly: AssemblySummary {
            degree: assembly.degree(),
            factors: assembly.factors.clone(),
            ambient_class_sizes: assembly.ambient_classes.iter().map(Vec::len).collect(),
            height: tower.height,
            level_orders: tower.orders().iter().map(u128::to_string).collect(),
            sub_heights,
        },
        relabeled_degree: outcome.assembly.degree(),
        relabeled_effective_seed: outcome.assembly.effective_seed.clone(),
        relabeled_level_orders: outcome.level_orders.clone(),
        shape_witness: outcome.shape_witness,
        other_policy_measured: mirror.measured,
        representative_independent,
    };
    Outcome::new(passed, &report, summary)
}

#[derive(Args, Serialize, Debug)]
pub struct DArgs {
    /// Stage of the underlying H block.
    #[arg(long)]
    pub n: usize,
    /// Expected tower height, 1 <= m < n.
    #[arg(long)]
    pub m: usize,
    /// Allow the larger extended stage limit.
    #[arg(long)]
    pub extended: bool,
}

pub fn d(a: &DArgs, b: &Budget) -> Result<Outcome> {
    if a.m == 0 || a.m >= a.n {
        return Err(Error::invalid(format!("need 1 <= m < n, got m={} n={}", a.m, a.n)));
    }
    let opts = options(a.extended, b);
    opts.check_stage(a.n)?;
    let dc = build_d(a.n, a.m, &opts)?;
    b.check_degree(dc.degree())?;
    let report: DReport = d_report(&dc, &opts)?;
    let passed = report.height == a.m && report.wreath_level_matches;
    let summary = format!("n={} m={} height={}", a.n, a.m, report.height);
    Outcome::new(passed, &report, summary)
}
