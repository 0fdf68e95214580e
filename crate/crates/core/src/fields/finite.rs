use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;

use super::{bigint_mod, Field};
use crate::error::{Error, Result};

/// Element of `GF(p^k)`: the base-`p` digits of the index are the
/// coefficients of a polynomial in the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElem(pub u32);

const MAX_ORDER: u64 = 1 << 16;

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// minimal polynomial of the generator, low to high, monic of degree k
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    gen_name: String,
}

/// `GF(p^k)` with log/antilog tables; the generator is a root of the
/// lexicographically smallest monic irreducible polynomial of degree `k`.
#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.k)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k && self.t.gen_name == other.t.gen_name
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.t.p, self.t.k, &self.t.gen_name).hash(state);
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// polynomial arithmetic over GF(p) on coefficient vectors, low to high
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for j in 0..=k {
            let sub = c * modulus[j] as u64 % p as u64;
            prod[i - k + j] = (prod[i - k + j] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let inv_lead = mod_inv(m[dm] as u64, p as u64);
    while r.len() > dm {
        let c = r.pop().unwrap() * inv_lead % p as u64;
        if c == 0 {
            continue;
        }
        let off = r.len() - dm;
        for j in 0..dm {
            r[off + j] = (r[off + j] + p as u64 - c * m[j] as u64 % p as u64) % p as u64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn digits(mut n: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut g = digits(code as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_generator(p, k, "u")
    }

    pub fn with_generator(p: u64, k: u32, gen_name: &str) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if k == 0 || (p as f64).powi(k as i32) > MAX_ORDER as f64 {
            return Err(Error::Resource(format!("GF({p}^{k}) exceeds the supported order {MAX_ORDER}")));
        }
        let p = p as u32;
        let q = p.pow(k);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|code| {
                    let mut f = digits(code, p, k);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        // smallest primitive element
        let mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return ((a as u64 * b as u64) % p as u64) as u32;
            }
            undigits(&poly_mulmod(&digits(a, p, k), &digits(b, p, k), &modulus, p), p)
        };
        let mut exp = Vec::new();
        for g in 1..q.max(2) {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = mul(x, g);
                if x == 1 || exp.len() > q as usize {
                    break;
                }
            }
            if exp.len() == (q - 1) as usize {
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Ok(FiniteField {
            t: Arc::new(Tables { p, k, q, modulus, exp, log, gen_name: gen_name.to_string() }),
        })
    }

    pub fn p(&self) -> u64 {
        self.t.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn order(&self) -> u64 {
        self.t.q as u64
    }

    pub fn generator_name(&self) -> &str {
        &self.t.gen_name
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> {
        (0..self.t.q).map(GfElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = GfElem> {
        (1..self.t.q).map(GfElem)
    }

    pub fn generator(&self) -> GfElem {
        if self.t.k == 1 {
            GfElem(self.t.exp[1 % self.t.exp.len()])
        } else {
            GfElem(self.t.p)
        }
    }

    /// Membership in the subfield `GF(p^d)`.
    pub fn in_subfield(&self, a: GfElem, d: u32) -> bool {
        self.pow(&a, (self.t.p as u64).pow(d)) == a
    }

    pub fn from_u64(&self, n: u64) -> GfElem {
        GfElem((n % self.t.p as u64) as u32)
    }
}

impl Field for FiniteField {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        GfElem(0)
    }

    fn one(&self) -> GfElem {
        GfElem(1)
    }

    fn is_zero(&self, a: &GfElem) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.t.p;
        if p == 2 {
            return GfElem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        GfElem(out)
    }

    fn neg(&self, a: &GfElem) -> GfElem {
        let p = self.t.p;
        if p == 2 {
            return *a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        GfElem(out)
    }

    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        if a.0 == 0 || b.0 == 0 {
            return GfElem(0);
        }
        let n = self.t.q - 1;
        let l = (self.t.log[a.0 as usize] + self.t.log[b.0 as usize]) % n;
        GfElem(self.t.exp[l as usize])
    }

    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.t.q - 1;
        let l = (n - self.t.log[a.0 as usize]) % n;
        Some(GfElem(self.t.exp[l as usize]))
    }

    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    fn from_int(&self, n: &BigInt) -> GfElem {
        GfElem(bigint_mod(n, self.t.p as u64) as u32)
    }

    fn format(&self, a: &GfElem) -> String {
        if self.t.k == 1 {
            return a.0.to_string();
        }
        let d = digits(a.0, self.t.p, self.t.k);
        let g = &self.t.gen_name;
        let terms: Vec<String> = (0..d.len())
            .rev()
            .filter(|&i| d[i] != 0)
            .map(|i| {
                let mono = match i {
                    0 => String::new(),
                    1 => g.clone(),
                    _ => format!("{g}^{i}"),
                };
                match (d[i], i) {
                    (c, 0) => c.to_string(),
                    (1, _) => mono,
                    (c, _) => format!("{c}*{mono}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn symbol(&self, name: &str) -> Option<GfElem> {
        (self.t.k > 1 && name == self.t.gen_name).then(|| GfElem(self.t.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_fixes_every_element() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 6), (7, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            assert!(q <= 64);
            for a in f.elements() {
                assert_eq!(f.pow(&a, q), a, "GF({p}^{k}) element {a:?}");
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf9() {
        let f = FiniteField::new(3, 2).unwrap();
        let els: Vec<_> = f.elements().collect();
        for a in &els {
            assert_eq!(f.add(a, &f.neg(a)), f.zero());
            if let Some(i) = f.inv(a) {
                assert_eq!(f.mul(a, &i), f.one());
            }
            for b in &els {
                for c in &els {
                    let lhs = f.mul(a, &f.add(b, c));
                    let rhs = f.add(&f.mul(a, b), &f.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn gf4_generator_satisfies_its_minimal_polynomial() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let u = f.symbol("u").unwrap();
        let v = f.add(&f.add(&f.mul(&u, &u), &u), &f.one());
        assert_eq!(v, f.zero());
        assert_eq!(f.format(&u), "u");
        assert_eq!(f.format(&f.add(&u, &f.one())), "u + 1");
        // u^3 = 1 in GF(4)
        assert_eq!(f.pow(&u, 3), f.one());
    }

    #[test]
    fn subfields() {
        let f = FiniteField::new(2, 2).unwrap();
        let inside: Vec<_> = f.elements().filter(|&a| f.in_subfield(a, 1)).collect();
        assert_eq!(inside, vec![GfElem(0), GfElem(1)]);
        let f = FiniteField::new(2, 4).unwrap();
        assert_eq!(f.elements().filter(|&a| f.in_subfield(a, 2)).count(), 4);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 20).is_err());
    }

    #[test]
    fn prime_field_residues() {
        let f = FiniteField::new(5, 1).unwrap();
        let seven = f.from_i64(7);
        let two = f.from_i64(2);
        assert_eq!(f.div(&seven, &two), Some(f.one()));
        assert_eq!(f.from_i64(-1), GfElem(4));
    }
}
