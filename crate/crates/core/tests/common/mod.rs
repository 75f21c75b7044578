//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use abkp_core::values::{int, rat};
use abkp_core::{Frame, Poly, ResidualPoly, ResidueField, ValuationChain};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(s: &str) -> Poly {
    s.parse().unwrap()
}

pub const PRIMES: [u64; 3] = [2, 3, 5];

/// A random small positive rational with denominator at most 3.
fn positive_step(rng: &mut Rng8) -> BigRational {
    let b = rng.gen_range(1..=3i64);
    rat(rng.gen_range(1..=2 * b), b)
}

/// Random monic `G != Y` of degree `m` over `k`; irreducible on request.
pub fn random_residual(rng: &mut Rng8, k: &ResidueField, m: usize, irreducible: bool) -> ResidualPoly {
    loop {
        let mut c: Vec<_> = (0..m).map(|_| k.element_at(rng.gen_range(0..k.order()))).collect();
        c.push(k.one());
        let g = ResidualPoly::new(k.clone(), c);
        if g.is_y() || (irreducible && !g.is_irreducible()) {
            continue;
        }
        return g;
    }
}

/// Extends `chain` by one level through a lifting of an irreducible
/// residual polynomial, keeping the new degree at most `max_deg`.
fn extend(rng: &mut Rng8, chain: &ValuationChain, max_deg: usize) -> Option<ValuationChain> {
    let top = chain.top().key.clone();
    let fr = Frame::build(chain, &top).ok()?;
    let en = fr.e() * fr.n();
    let ms: Vec<usize> = (1..=4).filter(|m| en * m > fr.n() && en * m <= max_deg).collect();
    let m = *ms.choose(rng)?;
    let g = random_residual(rng, fr.residue_field(), m, true);
    let q = fr.lift(&g).expect("lift of an irreducible G");
    let gamma = chain.eval(&q).finite().unwrap() + positive_step(rng);
    Some(chain.augment(&q, &gamma).expect("liftings are key polynomials"))
}

/// A valid chain over a random p in {2, 3, 5} of depth at most
/// `max_depth` (at most 2) and degrees at most 8.
pub fn random_chain(rng: &mut Rng8, max_depth: usize) -> ValuationChain {
    let p = *PRIMES.choose(rng).unwrap();
    let pi = p as i64;
    let b = rng.gen_range(1..=3i64);
    let gamma0 = rat(rng.gen_range(0..=2 * b), b);
    let center = int(rng.gen_range(-pi..=pi));
    let mut chain = ValuationChain::monomial(p, center, gamma0).unwrap();
    let depth = rng.gen_range(0..=max_depth);
    for _ in 0..depth {
        match extend(rng, &chain, 8) {
            Some(c) => chain = c,
            None => break,
        }
    }
    chain
}

/// A chain of exactly the requested depth (retrying seeds as needed).
pub fn random_chain_of_depth(rng: &mut Rng8, depth: usize) -> ValuationChain {
    loop {
        let c = random_chain(rng, depth);
        if c.depth() == depth {
            return c;
        }
    }
}

/// Random polynomial of degree at most `deg` with integer coefficients
/// bounded by `p^3`, occasionally divided by `p`.
pub fn random_poly(rng: &mut Rng8, p: u64, deg: usize) -> Poly {
    let h = (p * p * p) as i64;
    let d = rng.gen_range(0..=deg);
    let mut c: Vec<BigRational> = (0..=d).map(|_| int(rng.gen_range(-h..=h))).collect();
    if c.iter().all(|x| *x == int(0)) {
        c[d] = int(1);
    }
    let f = Poly::new(c);
    if rng.gen_bool(0.2) {
        f.scale(&rat(1, p as i64))
    } else {
        f
    }
}

pub fn random_nonzero_poly(rng: &mut Rng8, p: u64, deg: usize) -> Poly {
    loop {
        let f = random_poly(rng, p, deg);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_monic(rng: &mut Rng8, p: u64, deg: usize) -> Poly {
    let h = (p * p) as i64;
    let mut c: Vec<BigRational> = (0..deg).map(|_| int(rng.gen_range(-h..=h))).collect();
    c.push(int(1));
    Poly::new(c)
}

pub fn random_pairs(rng: &mut Rng8, p: u64, deg: usize, n: usize) -> Vec<(Poly, Poly)> {
    (0..n)
        .map(|_| (random_nonzero_poly(rng, p, deg), random_nonzero_poly(rng, p, deg)))
        .collect()
}

/// `(X - c)^2 + u p^s` with `s` odd and `u` a unit: irreducible and
/// ramified over `Q_p`.
pub fn ramified_quadratic(rng: &mut Rng8, p: u64) -> (Poly, BigRational, u32) {
    let pi = p as i64;
    let c = int(rng.gen_range(-pi * pi..=pi * pi));
    let s = 2 * rng.gen_range(0..=2u32) + 1;
    let u = loop {
        let u = rng.gen_range(-pi..=pi);
        if u % pi != 0 {
            break u;
        }
    };
    let shift = Poly::linear(c.clone());
    let f = &(&shift * &shift) + &Poly::constant(int(u * pi.pow(s)));
    (f, c, s)
}

/// Monic linear polynomials `X - a` with `|a| <= 9 p^2`, plus `X - a p^j`.
pub fn linear_catalog(p: u64) -> Vec<Poly> {
    let bound = 9 * (p * p) as i64;
    let mut out: Vec<Poly> = (-bound..=bound).map(|a| Poly::linear(int(a))).collect();
    for j in 3..6u32 {
        for a in [-1i64, 1] {
            out.push(Poly::linear(int(a * (p as i64).pow(j))));
        }
    }
    out
}
