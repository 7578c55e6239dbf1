use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

/// JSON input form of a group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Table { table: Vec<Vec<usize>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Named { name: String },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()),
            GroupSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::from_images(g.clone()))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_perm_group(&PermGroup::new(*degree, gens)?)
            }
            GroupSpec::Named { name } => super::catalog::named_group(name)
                .ok_or_else(|| Error::invalid(format!("unknown group name {name}"))),
        }
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("a group has at least one element"));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("table is not n×n over 0..n"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::invalid("no identity element"))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity)
                .ok_or_else(|| Error::invalid(format!("element {x} has no inverse")))?;
            if table[inverse[x]][x] != identity {
                return Err(Error::invalid(format!("element {x} has no two-sided inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            table,
            identity,
            inverse,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Table of a permutation group, elements sorted by image list.
    pub fn from_perm_group(p: &PermGroup) -> Result<Self> {
        if p.order() > 100_000 {
            return Err(Error::Budget {
                what: "group order for a multiplication table",
                limit: 100_000,
            });
        }
        let mut elems = p.elements();
        elems.sort_by(|a, b| a.images().cmp(b.images()));
        Ok(Self::from_elements(&elems, |a, b| a * b))
    }

    /// Builds the table of a closed set under `mul`; trusts the caller on
    /// the group axioms.
    pub(crate) fn from_elements<T, F>(elems: &[T], mul: F) -> Self
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&T, &T) -> T,
    {
        let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        let n = elems.len();
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).unwrap();
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n).find(|&y| table[x][y] == identity).unwrap();
        }
        let mut g = FiniteGroup {
            table,
            identity,
            inverse,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        g
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Repeatedly adds the element that enlarges the generated subgroup most;
    /// ties go to the smaller index.
    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut current = self.closure(&gens);
        while current.len() < n {
            let mut best = (0, usize::MAX);
            let mut in_current = vec![false; n];
            for &x in &current {
                in_current[x] = true;
            }
            for x in 0..n {
                if in_current[x] {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(x);
                let size = self.closure(&trial).len();
                if size > best.0 {
                    best = (size, x);
                }
            }
            gens.push(best.1);
            current = self.closure(&gens);
        }
        gens
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn is_centreless(&self) -> bool {
        self.center().len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// Size of the conjugacy class of `x`.
    pub fn class_size(&self, x: usize) -> usize {
        let mut seen = vec![false; self.order()];
        let mut count = 0;
        for g in 0..self.order() {
            let y = self.conj(g, x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
            }
        }
        count
    }

    /// Left regular representation: `g ↦ (x ↦ g x)`.
    pub fn regular_representation(&self) -> PermGroup {
        let n = self.order();
        let gens = self
            .generators
            .iter()
            .map(|&g| Permutation::from_images((0..n).map(|x| self.mul(g, x)).collect()).unwrap())
            .collect();
        PermGroup::new(n, gens).expect("regular action is faithful")
    }

    /// `C(S) = {x : x s = s x for all s ∈ S}`.
    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| set.iter().all(|&s| self.mul(x, s) == self.mul(s, x)))
            .collect()
    }

    /// `N(S) = {x : x S x⁻¹ = S}` for a subgroup given as a sorted list.
    pub fn normalizer(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        for &s in subgroup {
            member[s] = true;
        }
        (0..self.order())
            .filter(|&x| subgroup.iter().all(|&s| member[self.conj(x, s)]))
            .collect()
    }
}
