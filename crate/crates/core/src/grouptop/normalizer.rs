//! Normalisers inside an ambient permutation group.
//!
//! Two backends: a scan over every ambient element, and a backtrack search
//! over the ambient stabiliser chain pruned by the orbital structure of the
//! group being normalised.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{orbit_under, PermGroup, Permutation, StabChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    /// Exhaustive scan when the ambient group is small enough, else backtrack.
    Auto,
    Exhaustive,
    Backtrack,
    /// Run both and fail on disagreement.
    CrossCheck,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub backend: Backend,
    /// Largest ambient order scanned exhaustively under [`Backend::Auto`].
    pub exhaustive_limit: u128,
    /// Backtrack node cap; exceeding it is [`Error::Budget`].
    pub node_cap: u64,
    /// Maximum number of tower steps.
    pub max_tower_steps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            backend: Backend::Auto,
            exhaustive_limit: 50_000,
            node_cap: 20_000_000,
            max_tower_steps: 256,
        }
    }
}

impl SearchConfig {
    pub fn with_backend(backend: Backend) -> Self {
        SearchConfig {
            backend,
            ..SearchConfig::default()
        }
    }
}

/// `N_ambient(G)` with the default configuration.
pub fn normalizer(ambient: &PermGroup, group: &PermGroup) -> Result<PermGroup> {
    normalizer_with(ambient, group, &SearchConfig::default())
}

pub fn normalizer_with(
    ambient: &PermGroup,
    group: &PermGroup,
    config: &SearchConfig,
) -> Result<PermGroup> {
    if group.degree() != ambient.degree() {
        return Err(Error::DegreeMismatch {
            expected: ambient.degree(),
            found: group.degree(),
        });
    }
    if !group.is_subgroup_of(ambient) {
        return Err(Error::NotSubgroup);
    }
    match config.backend {
        Backend::Exhaustive => Ok(normalizer_exhaustive(ambient, group)),
        Backend::Backtrack => normalizer_backtrack(ambient, group, config.node_cap),
        Backend::Auto => {
            if ambient.order() <= config.exhaustive_limit {
                Ok(normalizer_exhaustive(ambient, group))
            } else {
                normalizer_backtrack(ambient, group, config.node_cap)
            }
        }
        Backend::CrossCheck => {
            let a = normalizer_exhaustive(ambient, group);
            let b = normalizer_backtrack(ambient, group, config.node_cap)?;
            if !a.same_group(&b) {
                return Err(Error::Inconsistent(format!(
                    "normalizer backends disagree: exhaustive order {}, backtrack order {}",
                    a.order(),
                    b.order()
                )));
            }
            Ok(b)
        }
    }
}

fn normalizer_exhaustive(ambient: &PermGroup, group: &PermGroup) -> PermGroup {
    let found = ambient.subgroup_by_filter(|a| group.is_normalized_by(a));
    found
        .join(group.generators())
        .expect("same degree")
}

/// G-orbits on ordered pairs. Any element normalising G permutes them,
/// preserving sizes.
pub(crate) struct Orbitals {
    n: usize,
    id: Vec<u32>,
    size: Vec<u32>,
}

impl Orbitals {
    pub(crate) fn new(group: &PermGroup) -> Self {
        let n = group.degree();
        let mut id = vec![u32::MAX; n * n];
        let mut size = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n * n {
            if id[start] != u32::MAX {
                continue;
            }
            let k = size.len() as u32;
            id[start] = k;
            queue.clear();
            queue.push(start);
            let mut i = 0;
            while i < queue.len() {
                let (x, y) = (queue[i] / n, queue[i] % n);
                for g in group.generators() {
                    let idx = g.apply(x) * n + g.apply(y);
                    if id[idx] == u32::MAX {
                        id[idx] = k;
                        queue.push(idx);
                    }
                }
                i += 1;
            }
            size.push(queue.len() as u32);
        }
        Orbitals { n, id, size }
    }

    #[inline]
    pub(crate) fn of(&self, x: usize, y: usize) -> u32 {
        self.id[x * self.n + y]
    }

    pub(crate) fn count(&self) -> usize {
        self.size.len()
    }

    pub(crate) fn size(&self, k: u32) -> u32 {
        self.size[k as usize]
    }

    pub(crate) fn sorted_sizes(&self) -> Vec<u32> {
        let mut s = self.size.clone();
        s.sort_unstable();
        s
    }
}

/// Partial bijection between the orbitals of two groups, with undo.
pub(crate) struct OrbitalMatch<'a> {
    src: &'a Orbitals,
    dst: &'a Orbitals,
    fwd: Vec<u32>,
    back: Vec<u32>,
    log: Vec<u32>,
}

impl<'a> OrbitalMatch<'a> {
    pub(crate) fn new(src: &'a Orbitals, dst: &'a Orbitals) -> Self {
        OrbitalMatch {
            src,
            dst,
            fwd: vec![u32::MAX; src.count()],
            back: vec![u32::MAX; dst.count()],
            log: Vec::new(),
        }
    }

    pub(crate) fn mark(&self) -> usize {
        self.log.len()
    }

    pub(crate) fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let o = self.log.pop().unwrap();
            let t = self.fwd[o as usize];
            self.fwd[o as usize] = u32::MAX;
            self.back[t as usize] = u32::MAX;
        }
    }

    pub(crate) fn reset(&mut self) {
        self.undo(0);
    }

    /// Records that the pair `(x, y)` maps to `(x2, y2)`.
    #[inline]
    pub(crate) fn bind(&mut self, x: usize, y: usize, x2: usize, y2: usize) -> bool {
        let o = self.src.of(x, y);
        let t = self.dst.of(x2, y2);
        let f = self.fwd[o as usize];
        if f != u32::MAX {
            return f == t;
        }
        if self.back[t as usize] != u32::MAX || self.src.size(o) != self.dst.size(t) {
            return false;
        }
        self.fwd[o as usize] = t;
        self.back[t as usize] = o;
        self.log.push(o);
        true
    }

    /// Binds all pairs between point `pts[j]` and `pts[..=j]`.
    pub(crate) fn bind_point(&mut self, pts: &[usize], images: &[usize], j: usize) -> bool {
        let (x, y) = (pts[j], images[j]);
        for k in 0..=j {
            if !self.bind(x, pts[k], y, images[k]) || !self.bind(pts[k], x, images[k], y) {
                return false;
            }
        }
        true
    }
}

struct Backtrack<'a> {
    group: &'a PermGroup,
    chain: StabChain,
    base: Vec<usize>,
    matcher: OrbitalMatch<'a>,
    images: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Backtrack<'_> {
    fn dfs(&mut self, j: usize, partial: &Permutation) -> Result<Option<Permutation>> {
        if j == self.base.len() {
            return Ok(self
                .group
                .is_normalized_by(partial)
                .then(|| partial.clone()));
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::Budget {
                what: "normalizer backtrack nodes",
                limit: self.cap,
            });
        }
        let level = &self.chain.levels()[j];
        let mut candidates: Vec<(usize, usize)> = level
            .orbit
            .iter()
            .map(|&x| (partial.apply(x), x))
            .collect();
        candidates.sort_unstable();
        for (y, x) in candidates {
            let u = self.chain.levels()[j].transversal[x].as_ref().unwrap();
            let next = partial * u;
            self.images[j] = y;
            let mark = self.matcher.mark();
            if self.matcher.bind_point(&self.base, &self.images, j) {
                if let Some(found) = self.dfs(j + 1, &next)? {
                    return Ok(Some(found));
                }
            }
            self.matcher.undo(mark);
        }
        Ok(None)
    }
}

fn normalizer_backtrack(ambient: &PermGroup, group: &PermGroup, cap: u64) -> Result<PermGroup> {
    let n = ambient.degree();
    if group.is_trivial() || ambient.generators().iter().all(|a| group.is_normalized_by(a)) {
        return Ok(ambient.clone());
    }
    let mut base = group.base();
    for x in 0..n {
        if !base.contains(&x) {
            base.push(x);
        }
    }
    let chain = ambient.chain_with_base(&base);
    debug_assert_eq!(chain.base(), base);
    let gchain = group.chain_with_base(&base);
    let orbitals = Orbitals::new(group);
    let mut search = Backtrack {
        group,
        chain,
        base: base.clone(),
        matcher: OrbitalMatch::new(&orbitals, &orbitals),
        images: base.clone(),
        nodes: 0,
        cap,
    };

    // Bottom-up: at level i, `found` generates a subgroup of N fixing base[..i].
    let mut found: Vec<Permutation> = Vec::new();
    for i in (0..base.len()).rev() {
        let mut known: Vec<Permutation> = found.clone();
        if let Some(level) = gchain.levels().get(i) {
            known.extend(level.generators.iter().cloned());
        }
        let b = base[i];
        let mut reached = orbit_under(&known, n, b);
        let mut dead: Vec<usize> = Vec::new();
        let mut targets = search.chain.levels()[i].orbit.clone();
        targets.sort_unstable();
        for x in targets {
            if reached.binary_search(&x).is_ok() {
                continue;
            }
            if !dead.is_empty() {
                let orb = orbit_under(&known, n, x);
                if orb.iter().any(|z| dead.contains(z)) {
                    continue;
                }
            }
            search.matcher.reset();
            search.images.copy_from_slice(&base);
            let mut ok = true;
            for k in 0..i {
                ok &= search.matcher.bind_point(&base, &search.images, k);
            }
            debug_assert!(ok);
            search.images[i] = x;
            let hit = if search.matcher.bind_point(&base, &search.images, i) {
                let u = search.chain.levels()[i].transversal[x].clone().unwrap();
                search.dfs(i + 1, &u)?
            } else {
                None
            };
            match hit {
                Some(g) => {
                    known.push(g.clone());
                    found.push(g);
                    reached = orbit_under(&known, n, b);
                }
                None => dead.push(x),
            }
        }
    }
    group.join(&found)
}
