use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Semantic identity of a cell, independent of where it sits in a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellTag {
    /// `Δ_β`: the components of the stage-β complex.
    Delta(usize),
    /// `Δ¹_γ`: the components of the doubled copy added at stage γ+1.
    DeltaOne(usize),
    /// Anything else (e.g. assembly factors).
    Other,
}

impl fmt::Display for CellTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellTag::Delta(b) => write!(f, "Delta_{b}"),
            CellTag::DeltaOne(g) => write!(f, "Delta1_{g}"),
            CellTag::Other => write!(f, "other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub tag: CellTag,
    pub points: Vec<usize>,
}

/// A permutation group with its domain partitioned into named cells.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabeledAction {
    pub group: PermGroup,
    pub cells: Vec<Cell>,
}

impl LabeledAction {
    pub fn new(group: PermGroup, cells: Vec<Cell>) -> Result<Self> {
        let n = group.degree();
        let mut seen = vec![false; n];
        let mut names = HashSet::new();
        for cell in &cells {
            if !names.insert(cell.name.as_str()) {
                return Err(Error::invalid(format!("duplicate cell name {}", cell.name)));
            }
            for &x in &cell.points {
                if x >= n || seen[x] {
                    return Err(Error::invalid(format!("cell {} is not disjoint", cell.name)));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("cells do not cover the domain"));
        }
        Ok(LabeledAction { group, cells })
    }

    /// The whole domain as one cell.
    pub fn single(group: PermGroup, tag: CellTag) -> Self {
        let points = (0..group.degree()).collect();
        let name = tag.to_string();
        LabeledAction {
            group,
            cells: vec![Cell { name, tag, points }],
        }
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn cell_by_tag(&self, tag: CellTag) -> Option<&Cell> {
        self.cells.iter().find(|c| c.tag == tag)
    }

    pub fn cell_by_name(&self, name: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.name == name)
    }

    /// Relabels the domain through a bijection, carrying cells along.
    pub fn relabeled(&self, map: &[usize]) -> LabeledAction {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let mut points: Vec<usize> = c.points.iter().map(|&x| map[x]).collect();
                points.sort_unstable();
                Cell {
                    name: c.name.clone(),
                    tag: c.tag,
                    points,
                }
            })
            .collect();
        LabeledAction {
            group: self.group.relabeled(map),
            cells,
        }
    }
}

/// Direct product acting on the disjoint union of the factors' domains.
/// Returns the product and the offset of each factor.
pub fn direct_product_with_offsets(actions: &[LabeledAction]) -> (LabeledAction, Vec<usize>) {
    let degree: usize = actions.iter().map(|a| a.degree()).sum();
    let mut offsets = Vec::with_capacity(actions.len());
    let mut gens = Vec::new();
    let mut cells = Vec::new();
    let mut offset = 0;
    for (i, a) in actions.iter().enumerate() {
        offsets.push(offset);
        gens.extend(a.group.generators().iter().map(|g| g.shifted(offset, degree)));
        for c in &a.cells {
            cells.push(Cell {
                name: format!("{i}:{}", c.name),
                tag: c.tag,
                points: c.points.iter().map(|&x| x + offset).collect(),
            });
        }
        offset += a.degree();
    }
    let group = PermGroup::new(degree, gens).expect("degrees agree");
    (LabeledAction { group, cells }, offsets)
}

pub fn direct_product(actions: &[LabeledAction]) -> LabeledAction {
    direct_product_with_offsets(actions).0
}

/// `F wr Sym(k)`: the direct product of the copies plus top permutations
/// exchanging them. Copies must be pairwise isomorphic permutation groups;
/// the exchanging maps are the isomorphism witnesses.
pub fn wreath_top(copies: &[LabeledAction]) -> Result<LabeledAction> {
    if copies.is_empty() {
        return Err(Error::invalid("wreath product needs at least one copy"));
    }
    let mut witnesses: Vec<Vec<usize>> = vec![(0..copies[0].degree()).collect()];
    for (i, c) in copies.iter().enumerate().skip(1) {
        let iso = crate::grouptop::perm_iso(&copies[0], c)
            .ok_or_else(|| Error::NotIsomorphic(format!("copy {i} differs from copy 0")))?;
        witnesses.push(iso.point_map);
    }
    Ok(wreath_from_witnesses(copies, &witnesses))
}

/// `k` identical copies of `action` wreathed by `Sym(k)`.
pub fn wreath_power(action: &LabeledAction, k: usize) -> LabeledAction {
    let copies = vec![action.clone(); k];
    let witnesses = vec![(0..action.degree()).collect::<Vec<_>>(); k];
    wreath_from_witnesses(&copies, &witnesses)
}

fn wreath_from_witnesses(copies: &[LabeledAction], witnesses: &[Vec<usize>]) -> LabeledAction {
    let (base, offsets) = direct_product_with_offsets(copies);
    let degree = base.degree();
    let m = copies[0].degree();
    let mut top = Vec::new();
    for i in 0..copies.len().saturating_sub(1) {
        // psi maps copy i onto copy i+1: psi = w_{i+1} ∘ w_i⁻¹.
        let mut inv_i = vec![0; m];
        for (x, &y) in witnesses[i].iter().enumerate() {
            inv_i[y] = x;
        }
        let mut images: Vec<usize> = (0..degree).collect();
        for y in 0..m {
            let z = witnesses[i + 1][inv_i[y]];
            images[offsets[i] + y] = offsets[i + 1] + z;
            images[offsets[i + 1] + z] = offsets[i] + y;
        }
        top.push(Permutation::from_images(images).expect("swap of copies"));
    }
    let group = base.group.join(&top).expect("degrees agree");
    LabeledAction {
        group,
        cells: base.cells,
    }
}
