//! `graph` and `tree`.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use normtower::graphs::{
    aut_group, canonical_form, canonical_labeling, encode_tree, is_isomorphic, rigid_family,
    CanonicalForm, Graph, RigidFamily, TreeCode,
};
use normtower::normtrees::{
    build_normal, count_extensions, end_extend, extend_iso, validate_normal, NormalityReport,
    PartialTreeIso, Tree,
};
use normtower::{Error, PermGroup, Result};
use serde::Serialize;

use crate::report::{read_json, Outcome};
use crate::Budget;

/// Trees above this height are refused.
const MAX_TREE_HEIGHT: usize = 20;

#[derive(Args, Serialize, Debug)]
pub struct GraphArgs {
    #[command(subcommand)]
    pub op: GraphOp,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "snake_case")]
pub enum GraphOp {
    /// Automorphism group of a graph given as {"n":..,"edges":[[u,v],..]}.
    Aut {
        #[arg(long)]
        input: PathBuf,
    },
    /// Canonical form and canonical labeling.
    Canon {
        #[arg(long)]
        input: PathBuf,
    },
    /// Isomorphism test with a witness map.
    Iso {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// The first k connected asymmetric graphs, with certificates.
    Rigid {
        #[arg(long)]
        k: usize,
    },
    /// Graph coding of a rooted tree.
    EncodeTree {
        /// Tree JSON file.
        #[arg(long, required_unless_present = "height")]
        input: Option<PathBuf>,
        /// Use the complete binary tree of this height instead.
        #[arg(long, conflicts_with = "input")]
        height: Option<usize>,
    },
}

fn load_graph(path: &PathBuf, b: &Budget) -> Result<Graph> {
    let g: Graph = read_json(path)?;
    b.check_degree(g.vertex_count())?;
    Ok(g)
}

fn tree_height_ok(h: usize) -> Result<()> {
    if h > MAX_TREE_HEIGHT {
        return Err(Error::Budget {
            what: "tree height",
            limit: MAX_TREE_HEIGHT as u64,
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct AutReport {
    n: usize,
    order: String,
    group: PermGroup,
    canonical_form: CanonicalForm,
}

#[derive(Serialize)]
struct CanonReport {
    n: usize,
    canonical_form: CanonicalForm,
    labeling: Vec<usize>,
}

#[derive(Serialize)]
struct IsoReport {
    isomorphic: bool,
    map: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct EncodeReport {
    tree: Tree,
    code: TreeCode,
    graph_aut_order: String,
    tree_aut_order: Option<String>,
}

pub fn graph(a: &GraphArgs, b: &Budget) -> Result<Outcome> {
    match &a.op {
        GraphOp::Aut { input } => {
            let g = load_graph(input, b)?;
            let aut = aut_group(&g);
            let passed = aut.generators().iter().all(|p| g.is_automorphism(p));
            let report = AutReport {
                n: g.vertex_count(),
                order: aut.order().to_string(),
                canonical_form: canonical_form(&g),
                group: aut,
            };
            let summary = format!("n={} |Aut|={}", report.n, report.order);
            Outcome::new(passed, &report, summary)
        }
        GraphOp::Canon { input } => {
            let g = load_graph(input, b)?;
            let (form, labeling) = canonical_labeling(&g);
            let summary = format!("n={} form={}", form.n, form.code);
            let report = CanonReport {
                n: g.vertex_count(),
                canonical_form: form,
                labeling,
            };
            Outcome::new(true, &report, summary)
        }
        GraphOp::Iso { input, other } => {
            let (g, h) = (load_graph(input, b)?, load_graph(other, b)?);
            let map = is_isomorphic(&g, &h);
            let passed = map.as_ref().map_or(true, |m| g.is_isomorphism_to(&h, m));
            let report = IsoReport {
                isomorphic: map.is_some(),
                map,
            };
            let summary = format!("isomorphic={}", report.isomorphic);
            Outcome::new(passed, &report, summary)
        }
        GraphOp::Rigid { k } => {
            let family: RigidFamily = rigid_family(*k)?;
            let summary = format!("k={} members", family.len());
            Outcome::new(family.verify(), &family, summary)
        }
        GraphOp::EncodeTree { input, height } => {
            let tree = match (input, height) {
                (Some(path), _) => read_json::<Tree>(path)?,
                (None, Some(h)) => {
                    tree_height_ok(*h)?;
                    build_normal(*h)
                }
                (None, None) => unreachable!("clap requires a tree"),
            };
            tree_height_ok(tree.height())?;
            let code = encode_tree(&tree);
            b.check_degree(code.graph.vertex_count())?;
            let graph_aut = aut_group(&code.graph).order();
            let tree_aut = if tree.height() > 0 && tree.level_size(0) == 1 {
                let phi = PartialTreeIso::root_only(tree.clone(), tree.clone())?;
                Some(count_extensions(&phi)?)
            } else {
                None
            };
            let passed = tree_aut.map_or(true, |t| t == graph_aut);
            let summary = format!("nodes={} vertices={} |Aut|={graph_aut}", tree.node_count(), code.graph.vertex_count());
            let report = EncodeReport {
                tree,
                code,
                graph_aut_order: graph_aut.to_string(),
                tree_aut_order: tree_aut.map(|t| t.to_string()),
            };
            Outcome::new(passed, &report, summary)
        }
    }
}

#[derive(Args, Serialize, Debug)]
pub struct TreeArgs {
    /// Build the complete binary normal tree with this many levels.
    #[arg(long, required_unless_present = "input")]
    pub height: Option<usize>,
    /// Tree JSON file {"height":..,"parents":[[..],..]}.
    #[arg(long, conflicts_with = "height")]
    pub input: Option<PathBuf>,
    /// Add levels until the tree has this height.
    #[arg(long)]
    pub end_extend: Option<usize>,
    /// Extend the root-only map to a full isomorphism and count all extensions.
    #[arg(long)]
    pub extend_iso: bool,
    /// Target tree for --extend-iso; defaults to the mirror image of the source.
    #[arg(long, requires = "extend_iso")]
    pub other: Option<PathBuf>,
}

#[derive(Serialize)]
struct IsoSection {
    target: Tree,
    witness: Vec<Vec<usize>>,
    witness_is_full: bool,
    /// Number of full isomorphisms extending the root-only map.
    witness_count: String,
    /// `2^(2^k - 1)` for `k = 0..=height`, the orders of the stage groups.
    stage_group_orders: Vec<Option<String>>,
    /// Stage `k` whose group order equals the witness count, if any.
    matching_stage: Option<usize>,
}

#[derive(Serialize)]
struct TreeReport {
    tree: Tree,
    level_sizes: Vec<usize>,
    validation: NormalityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    extend_iso: Option<IsoSection>,
}

/// Reverses the order of every level.
fn mirror(t: &Tree) -> Tree {
    let parents = t
        .parents()
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let mut out = vec![None; level.len()];
            for (i, p) in level.iter().enumerate() {
                out[level.len() - 1 - i] = p.map(|p| t.level_size(k - 1) - 1 - p);
            }
            out
        })
        .collect();
    Tree::new(parents).expect("mirror of a tree is a tree")
}

fn stage_group_order(k: usize) -> Option<u128> {
    let exp = (1u64 << k) - 1;
    (exp < 128).then(|| 1u128 << exp)
}

pub fn tree(a: &TreeArgs, _b: &Budget) -> Result<Outcome> {
    let mut t = match (&a.input, a.height) {
        (Some(path), _) => read_json::<Tree>(path)?,
        (None, Some(h)) => {
            tree_height_ok(h)?;
            build_normal(h)
        }
        (None, None) => unreachable!("clap requires a tree"),
    };
    tree_height_ok(t.height())?;
    if let Some(m) = a.end_extend {
        tree_height_ok(m)?;
        t = end_extend(&t, m)?;
    }
    let validation = validate_normal(&t);
    let mut passed = validation.normal;
    let mut summary = format!("height={} normal={}", t.height(), validation.normal);

    let extend = if a.extend_iso {
        if t.height() == 0 {
            return Err(Error::invalid("--extend-iso needs a tree with a root"));
        }
        let target = match &a.other {
            Some(path) => read_json::<Tree>(path)?,
            None => mirror(&t),
        };
        let phi = PartialTreeIso::root_only(t.clone(), target.clone())?;
        let full = extend_iso(&phi)?;
        let count = count_extensions(&phi)?;
        let orders: Vec<Option<u128>> = (0..=t.height()).map(|k| stage_group_order(k)).collect();
        let matching_stage = orders.iter().position(|o| *o == Some(count));
        passed &= full.is_full();
        summary.push_str(&format!(" witness_count={count}"));
        Some(IsoSection {
            target,
            witness_is_full: full.is_full(),
            witness: full.map,
            witness_count: count.to_string(),
            stage_group_orders: orders.iter().map(|o| o.map(|o| o.to_string())).collect(),
            matching_stage,
        })
    } else {
        None
    };
    let report = TreeReport {
        level_sizes: t.level_sizes(),
        tree: t,
        validation,
        extend_iso: extend,
    };
    Outcome::new(passed, &report, summary)
}
