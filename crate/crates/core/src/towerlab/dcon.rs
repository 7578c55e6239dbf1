use serde::Serialize;

use super::stage::{stage_cells, stage_table, StageOptions, StageTable};
use crate::error::{Error, Result};
use crate::grouptop::{normaliser_tower_with, Backend, SearchConfig, Tower};
use crate::perm::{wreath_power, Cell, CellTag, LabeledAction, PermGroup, Permutation};

/// `D^n_m = H_n × F_m × F_m` on `2^n + 2·2^m` components. The two extra
/// copies are the cells `A_m` and `B_m`, placed after the stage-`n` cells.
#[derive(Clone, Debug, Serialize)]
pub struct DComplex {
    pub n: usize,
    pub m: usize,
    pub action: LabeledAction,
    /// Reindexing that lists `Δ_m`, `Δ¹_m`, `A_m`, `B_m`, then `Δ¹_γ` for
    /// `m < γ < n`: `reindex[x]` is the new position of component `x`.
    pub reindex: Vec<usize>,
}

pub(crate) fn table_for(max: usize, options: &StageOptions) -> Result<StageTable> {
    if options.search.backend == Backend::Auto {
        stage_table(max)
    } else {
        StageTable::compute(max, &options.search)
    }
}

pub fn build_d(n: usize, m: usize, options: &StageOptions) -> Result<DComplex> {
    if !(1 <= m && m < n) {
        return Err(Error::invalid(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    options.check_stage(n)?;
    let table = table_for(n, options)?;
    let size = 1usize << m;
    let base = 1usize << n;
    let degree = base + 2 * size;
    let mut gens: Vec<Permutation> = table
        .h(n)
        .generators()
        .iter()
        .map(|g| g.shifted(0, degree))
        .collect();
    for off in [base, base + size] {
        gens.extend(table.f[m].generators().iter().map(|g| g.shifted(off, degree)));
    }
    let mut cells = stage_cells(n);
    for (name, off) in [("A", base), ("B", base + size)] {
        cells.push(Cell {
            name: format!("{name}_{m}"),
            tag: CellTag::Other,
            points: (off..off + size).collect(),
        });
    }
    let action = LabeledAction::new(PermGroup::new(degree, gens)?, cells)?;

    // New order: [0, 2^(m+1)) stays, then A, B, then the rest of Δ_n.
    let mut order: Vec<usize> = (0..2 * size).collect();
    order.extend(base..degree);
    order.extend(2 * size..base);
    let mut reindex = vec![0; degree];
    for (new, &old) in order.iter().enumerate() {
        reindex[old] = new;
    }
    Ok(DComplex {
        n,
        m,
        action,
        reindex,
    })
}

impl DComplex {
    pub fn degree(&self) -> usize {
        self.action.degree()
    }

    pub fn ambient(&self) -> PermGroup {
        PermGroup::symmetric(self.degree())
    }

    pub fn tower(&self, config: &SearchConfig) -> Result<Tower> {
        normaliser_tower_with(&self.ambient(), &self.action.group, config)
    }

    /// The group in reindexed coordinates.
    pub fn reindexed(&self) -> LabeledAction {
        self.action.relabeled(&self.reindex)
    }

    /// Level `m` predicted by the rearrangement, in original coordinates:
    /// `F_m on Δ_m × (F_m wr Sym(3)) on Δ¹_m ∪ A ∪ B × ∏_{m<γ<n} F_γ on Δ¹_γ`.
    pub fn predicted_top(&self, table: &StageTable) -> PermGroup {
        let (n, m) = (self.n, self.m);
        let size = 1usize << m;
        let degree = self.degree();
        let mut gens: Vec<Permutation> = table.f[m]
            .generators()
            .iter()
            .map(|g| g.shifted(0, degree))
            .collect();
        let wr = wreath_power(&LabeledAction::single(table.f[m].clone(), CellTag::Other), 3);
        gens.extend(wr.group.generators().iter().map(|g| g.shifted(size, degree)));
        // In reindexed coordinates Δ¹_γ for γ > m starts at 2^γ + 2·2^m.
        for g in m + 1..n {
            let off = (1usize << g) + 2 * size;
            gens.extend(table.f[g].generators().iter().map(|x| x.shifted(off, degree)));
        }
        let mut back = vec![0; degree];
        for (old, &new) in self.reindex.iter().enumerate() {
            back[new] = old;
        }
        PermGroup::new(degree, gens)
            .expect("factor degrees fit")
            .relabeled(&back)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DReport {
    pub n: usize,
    pub m: usize,
    pub degree: usize,
    pub height: usize,
    pub level_orders: Vec<String>,
    pub wreath_level_matches: bool,
}

/// Tower of `D^n_m` in `Sym(components)` plus the check of its level `m`.
pub fn d_report(d: &DComplex, options: &StageOptions) -> Result<DReport> {
    let table = table_for(d.n, options)?;
    let tower = d.tower(&options.search)?;
    let wreath_level_matches = tower
        .levels
        .get(d.m)
        .is_some_and(|l| l.same_group(&d.predicted_top(&table)));
    Ok(DReport {
        n: d.n,
        m: d.m,
        degree: d.degree(),
        height: tower.height,
        level_orders: tower.orders().iter().map(|o| o.to_string()).collect(),
        wreath_level_matches,
    })
}
