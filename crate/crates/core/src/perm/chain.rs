//! Deterministic Schreier–Sims stabiliser chains.

use super::permutation::Permutation;

/// One level of a stabiliser chain: the pointwise stabiliser of the earlier
/// base points, its orbit of `base_point`, and coset representatives.
#[derive(Clone, Debug)]
pub struct Level {
    pub base_point: usize,
    pub generators: Vec<Permutation>,
    /// Orbit of `base_point` in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[x] = Some(u)` with `u(base_point) = x` for orbit points.
    pub transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: usize, generators: Vec<Permutation>) -> Self {
        let mut level = Level {
            base_point,
            generators,
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    let u = g * transversal[x].as_ref().expect("orbit point has transversal");
                    transversal[y] = Some(u);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.transversal[x].is_some()
    }

    pub fn representative(&self, x: usize) -> Option<&Permutation> {
        self.transversal[x].as_ref()
    }
}

/// A base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Runs Schreier–Sims on `generators`. The base starts with `prefix`
    /// (which may contain redundant points) and is extended by the least
    /// point moved by each generator or sifted residue that needs one.
    pub fn build(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut base: Vec<usize> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved_point().expect("non-identity"));
            }
        }

        let mut levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let gens = strong
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                    .cloned()
                    .collect();
                Level::new(degree, b, gens)
            })
            .collect();

        let mut chain = StabChain { degree, levels: Vec::new() };
        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut restart_at: Option<usize> = None;
            'scan: for oi in 0..levels[iu].orbit.len() {
                let x = levels[iu].orbit[oi];
                for si in 0..levels[iu].generators.len() {
                    let s = &levels[iu].generators[si];
                    let ux = levels[iu].transversal[x].as_ref().unwrap();
                    let sx = s.apply(x);
                    let usx = levels[iu].transversal[sx].as_ref().unwrap();
                    let sux = s * ux;
                    if &sux == usx {
                        continue;
                    }
                    let schreier = &usx.inverse() * &sux;
                    let (residue, stop) = sift_levels(&levels[iu + 1..], schreier);
                    let stop = stop + iu + 1;
                    if stop == levels.len() && residue.is_identity() {
                        continue;
                    }
                    if stop == levels.len() {
                        let b = residue.first_moved_point().expect("non-identity");
                        levels.push(Level::new(degree, b, Vec::new()));
                    }
                    for level in &mut levels[iu + 1..=stop] {
                        level.generators.push(residue.clone());
                        level.rebuild(degree);
                    }
                    restart_at = Some(stop);
                    break 'scan;
                }
            }
            match restart_at {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        chain.levels = levels;
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` through the chain; returns the residue and the index of the
    /// level where sifting stopped (`levels().len()` if it passed all).
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        sift_levels(&self.levels, g.clone())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, stop) = self.sift(g);
        stop == self.levels.len() && residue.is_identity()
    }

    /// All strong generators (union over levels), deduplicated in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Visits every group element exactly once.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        fn rec<F: FnMut(&Permutation)>(levels: &[Level], acc: &Permutation, f: &mut F) {
            match levels.split_first() {
                None => f(acc),
                Some((level, rest)) => {
                    for &x in &level.orbit {
                        let u = level.transversal[x].as_ref().unwrap();
                        let next = acc * u;
                        rec(rest, &next, f);
                    }
                }
            }
        }
        rec(&self.levels, &Permutation::identity(self.degree), &mut f);
    }
}

fn sift_levels(levels: &[Level], mut g: Permutation) -> (Permutation, usize) {
    for (i, level) in levels.iter().enumerate() {
        let y = g.apply(level.base_point);
        match &level.transversal[y] {
            None => return (g, i),
            Some(u) => g = &u.inverse() * &g,
        }
    }
    (g, levels.len())
}
