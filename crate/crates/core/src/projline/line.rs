use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};
use crate::grouptop::{normaliser_tower_with, SearchConfig};
use crate::perm::{PermGroup, Permutation};

/// The projective line over `GF(q)`: point `x < q` is `(x : 1)` and point
/// `q` is `∞ = (1 : 0)`.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    pub field: Field,
}

impl ProjectiveLine {
    /// Requires `q > 3`.
    pub fn new(q: usize) -> Result<Self> {
        if q <= 3 {
            return Err(Error::invalid(format!("q = {q}: need q > 3")));
        }
        Ok(ProjectiveLine {
            field: Field::new(q)?,
        })
    }

    pub fn q(&self) -> usize {
        self.field.q
    }

    pub fn infinity(&self) -> usize {
        self.field.q
    }

    pub fn point_count(&self) -> usize {
        self.field.q + 1
    }

    /// Normalised homogeneous coordinates (last nonzero coordinate 1).
    pub fn coordinates(&self, x: usize) -> (usize, usize) {
        if x == self.infinity() {
            (1, 0)
        } else {
            (x, 1)
        }
    }

    /// `x ↦ (a x + b) / (c x + d)`; `None` if singular.
    pub fn mobius(&self, a: usize, b: usize, c: usize, d: usize) -> Option<Permutation> {
        let f = &self.field;
        let det = f.add(f.mul(a, d), f.neg(f.mul(b, c)));
        if det == 0 {
            return None;
        }
        let images = (0..self.point_count())
            .map(|x| {
                let (x0, x1) = self.coordinates(x);
                let y0 = f.add(f.mul(a, x0), f.mul(b, x1));
                let y1 = f.add(f.mul(c, x0), f.mul(d, x1));
                if y1 == 0 {
                    self.infinity()
                } else {
                    f.mul(y0, f.inv(y1).unwrap())
                }
            })
            .collect();
        Some(Permutation::from_images(images).unwrap())
    }

    pub fn translation(&self) -> Permutation {
        self.mobius(1, 1, 0, 1).unwrap()
    }

    pub fn scaling(&self) -> Permutation {
        self.mobius(self.field.primitive, 0, 0, 1).unwrap()
    }

    pub fn inversion(&self) -> Permutation {
        self.mobius(0, 1, 1, 0).unwrap()
    }

    /// Frobenius on the line, `∞` fixed.
    pub fn frobenius(&self) -> Permutation {
        let q = self.q();
        let images = (0..=q)
            .map(|x| if x == q { q } else { self.field.frobenius(x) })
            .collect();
        Permutation::from_images(images).unwrap()
    }

    /// Frobenius on the `q` field points only.
    pub fn field_frobenius(&self) -> Permutation {
        Permutation::from_images((0..self.q()).map(|x| self.field.frobenius(x)).collect()).unwrap()
    }
}

/// `PGL(2,q)` on the `q+1` points, generated by `x+1`, `c x`, `1/x`.
pub fn pgl2(q: usize) -> Result<PermGroup> {
    let line = ProjectiveLine::new(q)?;
    PermGroup::new(
        line.point_count(),
        vec![line.translation(), line.scaling(), line.inversion()],
    )
}

/// `PΓL(2,q) = PGL(2,q) ⋊ Aut(GF(q))`.
pub fn pgammal2(q: usize) -> Result<PermGroup> {
    let line = ProjectiveLine::new(q)?;
    PermGroup::new(
        line.point_count(),
        vec![line.translation(), line.scaling(), line.inversion(), line.frobenius()],
    )
}

/// The Galois subgroup `⟨φ^d⟩` of order `n/d`, for `d` dividing `n`.
pub fn galois_subgroup_on_field(line: &ProjectiveLine, d: usize) -> Result<PermGroup> {
    let n = line.field.n;
    if d == 0 || n % d != 0 {
        return Err(Error::NotSubgroup);
    }
    PermGroup::new(line.q(), vec![line.field_frobenius().pow(d as u64)])
}

/// Divisors `d` of the field degree; `⟨φ^d⟩` runs over every Galois subgroup.
pub fn galois_subgroup_indices(q: usize) -> Result<Vec<usize>> {
    let n = Field::new(q)?.n;
    Ok((1..=n).filter(|d| n % d == 0).collect())
}

fn lift(g: &Permutation) -> Permutation {
    let mut images = g.images().to_vec();
    images.push(images.len());
    Permutation::from_images(images).unwrap()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LemmaReport {
    pub q: usize,
    pub p: usize,
    pub n: usize,
    /// `H = ⟨φ^d⟩`.
    pub d: usize,
    pub h_order: String,
    pub pgl_order: String,
    pub pgl_order_formula_holds: bool,
    pub pgammal_order: String,
    pub pgammal_order_formula_holds: bool,
    pub pgl_normal_with_index_n: bool,
    pub field_self_test: bool,
    pub centreless: bool,
    pub galois_orders: Vec<String>,
    pub group_orders: Vec<String>,
    pub galois_height: usize,
    pub group_height: usize,
    pub levels_match: bool,
    pub passed: bool,
}

/// Normaliser tower of `PGL(2,q) ⋊ H` in `PΓL(2,q)` against that of `H` in
/// `Aut(GF(q))`: level `α` must be `PGL(2,q) ⋊ N_α(H)`.
pub fn verify_lemma_2_4(q: usize, d: usize, config: &SearchConfig) -> Result<LemmaReport> {
    let line = ProjectiveLine::new(q)?;
    let f = &line.field;
    let (p, n) = (f.p, f.n);
    let pgl = pgl2(q)?;
    let pgammal = pgammal2(q)?;
    let h = galois_subgroup_on_field(&line, d)?;
    let galois = PermGroup::new(q, vec![line.field_frobenius()])?;

    let g0 = pgl.join(&h.generators().iter().map(lift).collect::<Vec<_>>())?;
    let tower = normaliser_tower_with(&pgammal, &g0, config)?;
    let gal_tower = normaliser_tower_with(&galois, &h, config)?;

    let levels_match = tower.height == gal_tower.height
        && tower.levels.iter().zip(&gal_tower.levels).all(|(level, nh)| {
            let expected = pgl
                .join(&nh.generators().iter().map(lift).collect::<Vec<_>>())
                .expect("same degree");
            level.same_group(&expected)
        });

    let qq = q as u128;
    let pgl_order_formula_holds = pgl.order() == qq * (qq - 1) * (qq + 1);
    let pgammal_order_formula_holds = pgammal.order() == n as u128 * pgl.order();
    let frob = line.frobenius();
    let pgl_normal_with_index_n = pgammal.generators().iter().all(|g| pgl.is_normalized_by(g))
        && pgammal.order() / pgl.order() == n as u128
        && (1..n).all(|i| !pgl.contains(&frob.pow(i as u64)));
    let centreless = g0.center().is_trivial();

    let passed = levels_match
        && pgl_order_formula_holds
        && pgammal_order_formula_holds
        && pgl_normal_with_index_n
        && centreless
        && f.self_test();
    Ok(LemmaReport {
        q,
        p,
        n,
        d,
        h_order: h.order().to_string(),
        pgl_order: pgl.order().to_string(),
        pgl_order_formula_holds,
        pgammal_order: pgammal.order().to_string(),
        pgammal_order_formula_holds,
        pgl_normal_with_index_n,
        field_self_test: f.self_test(),
        centreless,
        galois_orders: gal_tower.orders().iter().map(|o| o.to_string()).collect(),
        group_orders: tower.orders().iter().map(|o| o.to_string()).collect(),
        galois_height: gal_tower.height,
        group_height: tower.height,
        levels_match,
        passed,
    })
}
