use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::dcon::table_for;
use super::stage::{StageOptions, StageTable};
use crate::error::{Error, Result};
use crate::graphs::{canonical_form, CanonicalForm, RigidFamily};
use crate::grouptop::{normaliser_tower_with, perm_iso_groups, Tower};
use crate::perm::{Cell, CellTag, LabeledAction, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// One of the two copies of `F_β(Γ_β)` in `B_α`.
    BPair,
    /// `H_α(Γ_α)`; for `α = 0` this is `F_0(Γ_0)`.
    HBlock,
    /// `F_γ(Γ_{γ+1})`.
    FBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub kind: FactorKind,
    /// Index into the family of the seed graph as originally assigned.
    pub seed: usize,
    pub stage: usize,
    pub offset: usize,
    pub size: usize,
}

impl Factor {
    pub fn points(&self) -> Vec<usize> {
        (self.offset..self.offset + self.size).collect()
    }
}

/// The main construction on components: `B_α × H_α(Γ_α) × ∏_{α≤γ<L} F_γ(Γ_{γ+1})`.
#[derive(Clone, Debug, Serialize)]
pub struct Assembly {
    pub l: usize,
    pub alpha: usize,
    pub factors: Vec<Factor>,
    /// Seed graph of each family index after any identification: `effective_seed[i]`
    /// is the family member whose graph now stands for index `i`.
    pub effective_seed: Vec<usize>,
    /// Components grouped by isomorphism type of their graph.
    pub ambient_classes: Vec<Vec<usize>>,
    pub domain: LabeledAction,
    #[serde(skip)]
    pub family: RigidFamily,
}

pub fn manifest(l: usize, alpha: usize) -> Vec<Factor> {
    let mut factors = Vec::new();
    let mut push = |kind, seed, stage: usize| {
        factors.push(Factor {
            kind,
            seed,
            stage,
            offset: 0,
            size: 1 << stage,
        })
    };
    if alpha >= 1 {
        for b in 1..alpha {
            push(FactorKind::BPair, b, b);
            push(FactorKind::BPair, b, b);
        }
        push(FactorKind::HBlock, alpha, alpha);
    } else {
        push(FactorKind::HBlock, 0, 0);
    }
    for g in alpha..l {
        push(FactorKind::FBlock, g + 1, g);
    }
    let mut off = 0;
    for f in &mut factors {
        f.offset = off;
        off += f.size;
    }
    factors
}

fn factor_group(f: &Factor, table: &StageTable) -> PermGroup {
    match f.kind {
        FactorKind::HBlock => table.h(f.stage),
        FactorKind::BPair | FactorKind::FBlock => table.f[f.stage].clone(),
    }
}

fn product_on(factors: &[&Factor], table: &StageTable, degree: usize) -> PermGroup {
    let gens: Vec<Permutation> = factors
        .iter()
        .flat_map(|f| {
            factor_group(f, table)
                .generators()
                .iter()
                .map(|g| g.shifted(f.offset, degree))
                .collect::<Vec<_>>()
        })
        .collect();
    PermGroup::new(degree, gens).expect("factor degrees fit")
}

fn classes_for(factors: &[Factor], effective_seed: &[usize], family: &RigidFamily) -> Vec<Vec<usize>> {
    let forms: Vec<CanonicalForm> = family.members.iter().map(canonical_form).collect();
    let mut by_form: BTreeMap<&CanonicalForm, Vec<usize>> = BTreeMap::new();
    for f in factors {
        by_form
            .entry(&forms[effective_seed[f.seed]])
            .or_default()
            .extend(f.points());
    }
    let mut classes: Vec<Vec<usize>> = by_form.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

fn build(
    family: &RigidFamily,
    l: usize,
    alpha: usize,
    effective_seed: Vec<usize>,
    options: &StageOptions,
) -> Result<Assembly> {
    if alpha >= l {
        return Err(Error::invalid(format!("need alpha < L, got alpha={alpha}, L={l}")));
    }
    if family.len() < l + 1 {
        return Err(Error::Precondition(format!(
            "family has {} members, {} needed",
            family.len(),
            l + 1
        )));
    }
    options.check_stage(l - 1)?;
    let table = table_for(l - 1, options)?;
    let factors = manifest(l, alpha);
    let degree: usize = factors.iter().map(|f| f.size).sum();
    let group = product_on(&factors.iter().collect::<Vec<_>>(), &table, degree);
    let cells = factors
        .iter()
        .enumerate()
        .map(|(i, f)| Cell {
            name: format!("{i}:{:?}:seed{}:stage{}", f.kind, f.seed, f.stage),
            tag: CellTag::Other,
            points: f.points(),
        })
        .collect();
    let ambient_classes = classes_for(&factors, &effective_seed, family);
    Ok(Assembly {
        l,
        alpha,
        domain: LabeledAction::new(group, cells)?,
        factors,
        effective_seed,
        ambient_classes,
        family: family.clone(),
    })
}

pub fn assemble_main(
    family: &RigidFamily,
    l: usize,
    alpha: usize,
    options: &StageOptions,
) -> Result<Assembly> {
    build(family, l, alpha, (0..=l).collect(), options)
}

/// Tower heights of the three pieces of the construction, each inside the
/// product of symmetric groups on its own isomorphism classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubHeights {
    pub b: Option<usize>,
    pub h: usize,
    pub f_product: usize,
}

impl Assembly {
    pub fn h(&self) -> &PermGroup {
        &self.domain.group
    }

    pub fn degree(&self) -> usize {
        self.domain.degree()
    }

    pub fn ambient(&self) -> PermGroup {
        PermGroup::young(self.degree(), &self.ambient_classes)
    }

    pub fn tower(&self, options: &StageOptions) -> Result<Tower> {
        normaliser_tower_with(&self.ambient(), self.h(), &options.search)
    }

    fn sub_tower(&self, kinds: &[FactorKind], options: &StageOptions) -> Result<Option<usize>> {
        let chosen: Vec<&Factor> = self.factors.iter().filter(|f| kinds.contains(&f.kind)).collect();
        if chosen.is_empty() {
            return Ok(None);
        }
        let table = table_for(self.l - 1, options)?;
        let points: Vec<usize> = chosen.iter().flat_map(|f| f.points()).collect();
        let group = product_on(&chosen, &table, self.degree()).restricted_to(&points)?;
        let mut index = vec![usize::MAX; self.degree()];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let classes: Vec<Vec<usize>> = self
            .ambient_classes
            .iter()
            .map(|c| c.iter().filter(|&&x| index[x] != usize::MAX).map(|&x| index[x]).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        let ambient = PermGroup::young(points.len(), &classes);
        Ok(Some(normaliser_tower_with(&ambient, &group, &options.search)?.height))
    }

    pub fn sub_heights(&self, options: &StageOptions) -> Result<SubHeights> {
        Ok(SubHeights {
            b: self.sub_tower(&[FactorKind::BPair], options)?,
            h: self.sub_tower(&[FactorKind::HBlock], options)?.unwrap_or(0),
            f_product: self.sub_tower(&[FactorKind::FBlock], options)?.unwrap_or(0),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentativePolicy {
    #[default]
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Identity,
    /// `{β, α}` identified with `β < α`.
    Pair,
    /// `[α, β]` identified with `α < β`.
    Interval,
    Other,
}

/// `E` as a list of classes partitioning `0..=L`.
pub fn validate_partition(e: &[Vec<usize>], l: usize) -> Result<()> {
    let mut seen = vec![false; l + 1];
    for class in e {
        if class.is_empty() {
            return Err(Error::invalid("empty class in E"));
        }
        for &x in class {
            if x > l || seen[x] {
                return Err(Error::invalid(format!("E is not a partition of 0..={l}")));
            }
            seen[x] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::invalid(format!("E does not cover 0..={l}")));
    }
    Ok(())
}

/// Recognises the supported shapes and predicts the new height.
pub fn classify(e: &[Vec<usize>], l: usize, alpha: usize) -> (Shape, Option<usize>) {
    let big: Vec<Vec<usize>> = e
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    match big.as_slice() {
        [] => (Shape::Identity, Some(alpha)),
        [c] if c.len() == 2 && c[1] == alpha && c[0] >= 1 => (Shape::Pair, Some(c[0])),
        [c] if c[0] == alpha
            && c.windows(2).all(|w| w[1] == w[0] + 1)
            && *c.last().unwrap() < l =>
        {
            (Shape::Interval, Some(*c.last().unwrap()))
        }
        _ => (Shape::Other, None),
    }
}

/// The partition that realises target height `beta` from an assembly of height `alpha`.
pub fn e_for_target(l: usize, alpha: usize, beta: usize) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let joined: Vec<usize> = match beta.cmp(&alpha) {
        std::cmp::Ordering::Equal => Vec::new(),
        std::cmp::Ordering::Less => vec![beta, alpha],
        std::cmp::Ordering::Greater => (alpha..=beta).collect(),
    };
    if !joined.is_empty() {
        classes.push(joined.clone());
    }
    for i in 0..=l {
        if !joined.contains(&i) {
            classes.push(vec![i]);
        }
    }
    classes.sort();
    classes
}

#[derive(Clone, Debug, Serialize)]
pub struct RelabelOutcome {
    pub l: usize,
    pub alpha: usize,
    pub e: Vec<Vec<usize>>,
    pub policy: RepresentativePolicy,
    pub shape: Shape,
    pub predicted: Option<usize>,
    pub measured: usize,
    pub level_orders: Vec<String>,
    /// The relabeled group is permutation-isomorphic to the predicted shape.
    pub shape_witness: Option<bool>,
    #[serde(skip)]
    pub assembly: Assembly,
}

impl RelabelOutcome {
    pub fn consistent(&self) -> bool {
        self.predicted.map_or(true, |p| p == self.measured) && self.shape_witness != Some(false)
    }
}

/// Replaces every seed graph in an `E`-class by the class representative,
/// rebuilds the assembly, and measures the new tower height.
pub fn relabel_by_e(
    a: &Assembly,
    e: &[Vec<usize>],
    policy: RepresentativePolicy,
    options: &StageOptions,
) -> Result<RelabelOutcome> {
    validate_partition(e, a.l)?;
    let mut effective = a.effective_seed.clone();
    for class in e {
        let rep = match policy {
            RepresentativePolicy::Min => *class.iter().min().unwrap(),
            RepresentativePolicy::Max => *class.iter().max().unwrap(),
        };
        for &i in class {
            effective[i] = a.effective_seed[rep];
        }
    }
    let rebuilt = build(&a.family, a.l, a.alpha, effective, options)?;
    let tower = rebuilt.tower(options)?;
    let (shape, predicted) = classify(e, a.l, a.alpha);
    let shape_witness = predicted_shape(&rebuilt, shape, e, options)?
        .map(|g| perm_iso_groups(rebuilt.h(), &g).is_some());
    Ok(RelabelOutcome {
        l: a.l,
        alpha: a.alpha,
        e: e.to_vec(),
        policy,
        shape,
        predicted,
        measured: tower.height,
        level_orders: tower.orders().iter().map(|o| o.to_string()).collect(),
        shape_witness,
        assembly: rebuilt,
    })
}

/// The group the identification is expected to produce, built directly:
/// `B' × D^α_β × ∏F` for a pair, `B_α × H_β × ∏_{β≤γ<L} F_γ` for an interval.
fn predicted_shape(
    a: &Assembly,
    shape: Shape,
    e: &[Vec<usize>],
    options: &StageOptions,
) -> Result<Option<PermGroup>> {
    let table = table_for(a.l - 1, options)?;
    let beta = match classify(e, a.l, a.alpha) {
        (Shape::Pair | Shape::Interval, Some(b)) => b,
        _ => return Ok(None),
    };
    let mut blocks: Vec<PermGroup> = Vec::new();
    for b in 1..a.alpha {
        if shape == Shape::Pair && b == beta {
            continue;
        }
        blocks.push(table.f[b].clone());
        blocks.push(table.f[b].clone());
    }
    match shape {
        Shape::Pair => {
            let d = super::dcon::build_d(a.alpha, beta, options)?;
            blocks.push(d.action.group);
            for g in a.alpha..a.l {
                blocks.push(table.f[g].clone());
            }
        }
        Shape::Interval => {
            blocks.push(table.h(beta));
            for g in beta..a.l {
                blocks.push(table.f[g].clone());
            }
        }
        _ => return Ok(None),
    }
    let degree: usize = blocks.iter().map(|b| b.degree()).sum();
    let mut gens = Vec::new();
    let mut off = 0;
    for b in &blocks {
        gens.extend(b.generators().iter().map(|g| g.shifted(off, degree)));
        off += b.degree();
    }
    Ok(Some(PermGroup::new(degree, gens)?))
}
