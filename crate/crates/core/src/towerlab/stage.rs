use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{aut_group, direct_sum, Graph};
use crate::grouptop::{normaliser_tower_with, SearchConfig, Tower};
use crate::perm::{Cell, CellTag, LabeledAction, PermGroup, Permutation};

/// Largest stage built unless extended.
pub const DEFAULT_MAX_STAGE: usize = 3;
/// Largest stage built with the extended budget.
pub const EXTENDED_MAX_STAGE: usize = 4;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageOptions {
    pub max_stage: usize,
    pub search: SearchConfig,
}

impl Default for StageOptions {
    fn default() -> Self {
        StageOptions {
            max_stage: DEFAULT_MAX_STAGE,
            search: SearchConfig::default(),
        }
    }
}

impl StageOptions {
    pub fn extended() -> Self {
        StageOptions {
            max_stage: EXTENDED_MAX_STAGE,
            ..Self::default()
        }
    }

    pub fn check_stage(&self, n: usize) -> Result<()> {
        if n > self.max_stage {
            return Err(Error::Budget {
                what: "stage",
                limit: self.max_stage as u64,
            });
        }
        Ok(())
    }
}

/// Component layout of stage `n`: `Δ_0 = {0}` and `Δ¹_β = [2^β, 2^(β+1))`,
/// so that `Δ_β = [0, 2^β)`.
pub fn stage_cells(n: usize) -> Vec<Cell> {
    let mut cells = vec![Cell {
        name: CellTag::Delta(0).to_string(),
        tag: CellTag::Delta(0),
        points: vec![0],
    }];
    for b in 0..n {
        cells.push(Cell {
            name: CellTag::DeltaOne(b).to_string(),
            tag: CellTag::DeltaOne(b),
            points: delta_one(b),
        });
    }
    cells
}

/// `Δ_β` in stage coordinates.
pub fn delta(b: usize) -> Vec<usize> {
    (0..1 << b).collect()
}

/// `Δ¹_γ` in stage coordinates.
pub fn delta_one(g: usize) -> Vec<usize> {
    ((1 << g)..(1 << (g + 1))).collect()
}

/// `F_0 on Δ_0 × ∏_{β<n} F_β on Δ¹_β`, given `F_0, …, F_{n-1}`.
pub fn h_group(n: usize, f: &[PermGroup]) -> PermGroup {
    let degree = 1 << n;
    let gens: Vec<Permutation> = (0..n)
        .flat_map(|b| f[b].generators().iter().map(move |g| g.shifted(1 << b, degree)))
        .collect();
    PermGroup::new(degree, gens).expect("factor degrees fit")
}

/// The groups `F_0, …, F_max` with the normaliser towers that produced them.
#[derive(Clone, Debug)]
pub struct StageTable {
    pub f: Vec<PermGroup>,
    pub towers: Vec<Tower>,
}

impl StageTable {
    /// Builds stages in order; stage `n` needs every earlier `F_β`.
    pub fn compute(max: usize, config: &SearchConfig) -> Result<Self> {
        let mut table = StageTable {
            f: Vec::new(),
            towers: Vec::new(),
        };
        table.extend_to(max, config)?;
        Ok(table)
    }

    fn extend_to(&mut self, max: usize, config: &SearchConfig) -> Result<()> {
        while self.f.len() <= max {
            let n = self.f.len();
            let h = h_group(n, &self.f);
            let tower = normaliser_tower_with(&PermGroup::symmetric(1 << n), &h, config)?;
            self.f.push(tower.terminal().clone());
            self.towers.push(tower);
        }
        Ok(())
    }

    pub fn max(&self) -> usize {
        self.f.len() - 1
    }

    pub fn h(&self, n: usize) -> PermGroup {
        h_group(n, &self.f)
    }
}

static CACHE: Mutex<Option<StageTable>> = Mutex::new(None);

/// Stage table computed with the default search configuration, shared
/// across calls in a process.
pub fn stage_table(max: usize) -> Result<StageTable> {
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    let table = guard.get_or_insert_with(|| StageTable {
        f: Vec::new(),
        towers: Vec::new(),
    });
    table.extend_to(max, &SearchConfig::default())?;
    Ok(StageTable {
        f: table.f[..=max].to_vec(),
        towers: table.towers[..=max].to_vec(),
    })
}

/// Stage `n` built over a rigid connected seed graph.
#[derive(Clone, Debug, Serialize)]
pub struct StageComplex {
    pub gamma: Graph,
    pub n: usize,
    /// `2^n` disjoint copies of the seed; copy `c` is component `c`.
    pub graph: Graph,
    /// `H_n` on components, with the `Δ_0`, `Δ¹_β` cells.
    pub components: LabeledAction,
    pub h: PermGroup,
    pub f: PermGroup,
    pub tower: Tower,
    /// `F_0, …, F_{n-1}`.
    #[serde(skip)]
    pub earlier: Vec<PermGroup>,
}

pub fn check_seed(gamma: &Graph) -> Result<()> {
    if gamma.vertex_count() == 0 || !gamma.is_connected() {
        return Err(Error::Precondition("seed graph must be connected and nonempty".into()));
    }
    if !aut_group(gamma).is_trivial() {
        return Err(Error::Precondition("seed graph must be rigid".into()));
    }
    Ok(())
}

pub fn build_stage(gamma: &Graph, n: usize, options: &StageOptions) -> Result<StageComplex> {
    options.check_stage(n)?;
    check_seed(gamma)?;
    let table = if options.search.backend == crate::grouptop::Backend::Auto {
        stage_table(n)?
    } else {
        StageTable::compute(n, &options.search)?
    };
    let h = table.h(n);
    let graph = direct_sum(&vec![gamma.clone(); 1 << n]).graph;
    Ok(StageComplex {
        gamma: gamma.clone(),
        n,
        graph,
        components: LabeledAction::new(h.clone(), stage_cells(n))?,
        h,
        f: table.f[n].clone(),
        tower: table.towers[n].clone(),
        earlier: table.f[..n].to_vec(),
    })
}

impl StageComplex {
    pub fn tower_height(&self) -> usize {
        self.tower.height
    }

    /// Negative control: `F_n` replaced by the full symmetric group.
    pub fn tampered(&self) -> StageComplex {
        let mut s = self.clone();
        s.f = PermGroup::symmetric(1 << self.n);
        s
    }
}

pub fn stage_tower_height(s: &StageComplex) -> usize {
    s.tower_height()
}

/// Vertex-level view: automorphisms of the stage graph, and the group they
/// induce on components.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexCheck {
    pub vertex_count: usize,
    pub aut_order: String,
    pub component_action_order: String,
    pub component_action_is_symmetric: bool,
    pub component_blocks_preserved: bool,
}

pub fn vertex_level_check(s: &StageComplex) -> Result<VertexCheck> {
    let aut = aut_group(&s.graph);
    let k = s.gamma.vertex_count();
    let comps = 1usize << s.n;
    let mut induced = Vec::new();
    let mut preserved = true;
    for g in aut.generators() {
        let mut images = vec![0; comps];
        for c in 0..comps {
            let target = g.apply(c * k) / k;
            images[c] = target;
            // Rigid seed: the copy must move as a block, vertex for vertex.
            preserved &= (0..k).all(|v| g.apply(c * k + v) == target * k + v);
        }
        induced.push(Permutation::from_images(images)?);
    }
    let action = PermGroup::new(comps, induced)?;
    Ok(VertexCheck {
        vertex_count: s.graph.vertex_count(),
        aut_order: aut.order().to_string(),
        component_action_order: action.order().to_string(),
        component_action_is_symmetric: action.same_group(&PermGroup::symmetric(comps)),
        component_blocks_preserved: preserved,
    })
}
