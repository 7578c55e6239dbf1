use crate::error::{Error, Result};

/// `GF(p^n)` with elements encoded as base-`p` coefficient vectors:
/// `c_0 + c_1 p + … + c_{n-1} p^{n-1}` stands for `Σ c_i x^i`.
#[derive(Clone, Debug)]
pub struct Field {
    pub p: usize,
    pub n: usize,
    pub q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    /// An element of multiplicative order `q - 1`.
    pub primitive: usize,
}

/// Monic irreducible polynomial for each supported non-prime `q`, lowest
/// coefficient first, leading 1 omitted.
fn modulus(q: usize) -> Option<(usize, usize, &'static [usize])> {
    Some(match q {
        4 => (2, 2, &[1, 1]),        // x^2 + x + 1
        8 => (2, 3, &[1, 1, 0]),     // x^3 + x + 1
        9 => (3, 2, &[1, 0]),        // x^2 + 1
        16 => (2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
        25 => (5, 2, &[2, 1]),       // x^2 + x + 2
        27 => (3, 3, &[1, 2, 0]),    // x^3 + 2x + 1
        32 => (2, 5, &[1, 0, 1, 0, 0]), // x^5 + x^2 + 1
        _ => return None,
    })
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Largest prime field accepted.
pub const MAX_PRIME: usize = 251;

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        let (p, n, low): (usize, usize, Vec<usize>) = if is_prime(q) && q <= MAX_PRIME {
            (q, 1, vec![0])
        } else if let Some((p, n, low)) = modulus(q) {
            (p, n, low.to_vec())
        } else {
            return Err(Error::invalid(format!(
                "q = {q} is not a supported prime power (primes up to {MAX_PRIME}, or 4, 8, 9, 16, 25, 27, 32)"
            )));
        };
        let digits = |mut x: usize| -> Vec<usize> {
            (0..n)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let add: Vec<Vec<usize>> = (0..q)
            .map(|a| {
                let da = digits(a);
                (0..q)
                    .map(|b| {
                        let s: Vec<usize> = da.iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        let mul: Vec<Vec<usize>> = (0..q)
            .map(|a| {
                (0..q)
                    .map(|b| {
                        if n == 1 {
                            return a * b % p;
                        }
                        let (da, db) = (digits(a), digits(b));
                        let mut prod = vec![0; 2 * n - 1];
                        for i in 0..n {
                            for j in 0..n {
                                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                            }
                        }
                        // x^n = -(low), reduce from the top.
                        for k in (n..2 * n - 1).rev() {
                            let c = prod[k];
                            if c != 0 {
                                prod[k] = 0;
                                for (i, &l) in low.iter().enumerate() {
                                    prod[k - n + i] = (prod[k - n + i] + (p - l) * c) % p;
                                }
                            }
                        }
                        encode(&prod[..n])
                    })
                    .collect()
            })
            .collect();
        let mut field = Field {
            p,
            n,
            q,
            add,
            mul,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&g| field.mult_order(g) == q - 1)
            .ok_or_else(|| Error::Inconsistent(format!("GF({q}) has no primitive element")))?;
        Ok(field)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add[a][b] == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul[a][b] == 1)
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn mult_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut k = 1;
        let mut x = a;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    /// Multiplicative group is cyclic of order `q - 1`, and the tables
    /// satisfy the field axioms.
    pub fn self_test(&self) -> bool {
        let q = self.q;
        let mut powers = vec![false; q];
        let mut x = 1;
        for _ in 0..q - 1 {
            powers[x] = true;
            x = self.mul(x, self.primitive);
        }
        let cyclic = x == 1 && powers[1..].iter().all(|&b| b) && !powers[0];
        let distributive = (0..q).all(|a| {
            (0..q).all(|b| {
                (0..q).all(|c| self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c)))
            })
        });
        cyclic && distributive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_fields_pass_self_test() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32] {
            let f = Field::new(q).unwrap();
            assert!(f.self_test(), "GF({q})");
            assert_eq!(f.p.pow(f.n as u32), q);
        }
    }

    #[test]
    fn unsupported_orders() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(49).is_err());
        assert!(Field::new(1).is_err());
    }

    #[test]
    fn frobenius_order_is_degree() {
        let f = Field::new(16).unwrap();
        let mut k = 1;
        let iter = |a: usize| f.frobenius(a);
        while (0..16).any(|a| (0..k).fold(a, |x, _| iter(x)) != a) {
            k += 1;
        }
        assert_eq!(k, 4);
    }
}
