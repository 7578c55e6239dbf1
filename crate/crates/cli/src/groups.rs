//! `tower` and `pgl`.

use std::path::PathBuf;

use clap::Args;
use normtower::absgroup::{
    automorphism_tower, centreless_catalog, check_prop_2_3, named_group, FiniteGroup, GroupSpec,
    PropReport,
};
use normtower::projline::{galois_subgroup_indices, verify_lemma_2_4, Field, LemmaReport};
use normtower::{Error, Result};
use serde::Serialize;

use crate::report::{read_json, Outcome};
use crate::Budget;

#[derive(Args, Serialize, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["group", "input", "catalog"])))]
pub struct TowerArgs {
    /// Built-in group name, e.g. sym3, dihedral10, frobenius20.
    #[arg(long)]
    pub group: Option<String>,
    /// Group JSON: {"kind":"table",...}, {"kind":"perm",...} or {"kind":"named",...}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Run every centreless group of order at most 24 in the catalog.
    #[arg(long)]
    pub catalog: bool,
}

#[derive(Serialize)]
struct TowerEntry {
    name: Option<String>,
    order: usize,
    tau: usize,
    level_orders: Vec<usize>,
    complete: bool,
    prop: PropReport,
}

impl TowerEntry {
    fn passed(&self) -> bool {
        self.complete && self.prop.passed
    }
}

fn entry(name: Option<String>, g: &FiniteGroup, bound: usize) -> Result<TowerEntry> {
    let t = automorphism_tower(g, bound)?;
    let s = t.summary();
    Ok(TowerEntry {
        name,
        order: g.order(),
        tau: s.height,
        level_orders: s.level_orders,
        complete: s.complete,
        prop: check_prop_2_3(&t),
    })
}

pub fn tower(a: &TowerArgs, b: &Budget) -> Result<Outcome> {
    let bound = b.max_order as usize;
    if a.catalog {
        let entries = centreless_catalog()
            .iter()
            .map(|(name, g)| entry(Some(name.to_string()), g, bound))
            .collect::<Result<Vec<_>>>()?;
        let passed = entries.iter().all(TowerEntry::passed);
        let taus: Vec<String> = entries.iter().map(|e| e.tau.to_string()).collect();
        return Outcome::new(passed, &entries, format!("catalog taus {}", taus.join(",")));
    }
    let (name, g) = match (&a.group, &a.input) {
        (Some(name), _) => (
            Some(name.clone()),
            named_group(name).ok_or_else(|| Error::invalid(format!("unknown group name {name}")))?,
        ),
        (None, Some(path)) => (None, read_json::<GroupSpec>(path)?.build()?),
        (None, None) => unreachable!("clap requires a source"),
    };
    let e = entry(name, &g, bound)?;
    let summary = format!("order={} tau={}", e.order, e.tau);
    Outcome::new(e.passed(), &e, summary)
}

#[derive(Args, Serialize, Debug)]
pub struct PglArgs {
    /// Field size: a prime or one of 4, 8, 9, 16, 25, 27, 32.
    #[arg(long)]
    pub q: usize,
    /// Galois subgroup: trivial, full, its order, or all.
    #[arg(long = "H", visible_alias = "h", default_value = "all")]
    pub h: String,
}

#[derive(Serialize)]
struct PglReport {
    q: usize,
    field_degree: usize,
    subgroups: Vec<LemmaReport>,
}

pub fn pgl(a: &PglArgs, b: &Budget) -> Result<Outcome> {
    let n = Field::new(a.q)?.n;
    b.check_degree(a.q + 1)?;
    let ds: Vec<usize> = match a.h.as_str() {
        "all" => galois_subgroup_indices(a.q)?,
        "trivial" => vec![n],
        "full" => vec![1],
        other => {
            let order: usize = other
                .parse()
                .map_err(|_| Error::invalid(format!("--H expects trivial, full, all or an order, got {other}")))?;
            if order == 0 || n % order != 0 {
                return Err(Error::invalid(format!("no Galois subgroup of order {order} for q={}", a.q)));
            }
            vec![n / order]
        }
    };
    let search = b.search();
    let subgroups = ds
        .iter()
        .map(|&d| verify_lemma_2_4(a.q, d, &search))
        .collect::<Result<Vec<_>>>()?;
    let passed = subgroups.iter().all(|r| r.passed);
    let summary = format!(
        "q={} subgroups={} heights={:?}",
        a.q,
        subgroups.len(),
        subgroups.iter().map(|r| r.group_height).collect::<Vec<_>>()
    );
    Outcome::new(
        passed,
        &PglReport {
            q: a.q,
            field_degree: n,
            subgroups,
        },
        summary,
    )
}
