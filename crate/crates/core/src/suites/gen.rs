use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::ValuedField;
use crate::ratfun::{Polynomial, RationalFunction};

/// The generator for sample `i` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// A nonzero polynomial of degree at most `max_deg`; about a third of the
/// coefficients are zero.
pub fn random_poly<V: ValuedField>(rng: &mut ChaCha8Rng, k: &V, max_deg: usize, height: u32) -> Polynomial<V::Elem> {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let c: Vec<_> = (0..=deg)
            .map(|_| if rng.gen_bool(0.3) { k.zero() } else { k.random_element(rng, height) })
            .collect();
        let p = Polynomial::new(k, c);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_rat<V: ValuedField>(
    rng: &mut ChaCha8Rng,
    k: &V,
    num_deg: usize,
    den_deg: usize,
    height: u32,
) -> RationalFunction<V::Elem> {
    let n = random_poly(rng, k, num_deg, height);
    let d = random_poly(rng, k, den_deg, height);
    RationalFunction::normalize(k, n, d).expect("nonzero denominator")
}

/// `a`, or `1/a` when `v(a) < 0`: an element of the valuation ring.
pub fn integral<V: ValuedField>(k: &V, a: V::Elem) -> V::Elem {
    if k.in_valuation_ring(&a) {
        a
    } else {
        k.inv(&a).expect("nonzero")
    }
}

/// Every reduced `r/s` with `|r| ≤ bound`, `1 ≤ s ≤ bound`.
pub fn grid(bound: i64) -> Vec<BigRational> {
    let mut out = vec![BigRational::from_integer(0.into())];
    for s in 1..=bound {
        for r in -bound..=bound {
            if r != 0 && r.gcd(&s) == 1 {
                out.push(BigRational::new(BigInt::from(r), BigInt::from(s)));
            }
        }
    }
    out
}
