//! Seeded generators of random ideals whose Newton trees are expressible
//! over the rationals with high probability.

#![allow(dead_code)]

use algebra_core::{BPoly, IdealGens, Rat};
use newton::{run, AnalysisResult, NewtonError, RunConfig};
use oracle::RandomSource;

fn small_nonzero(r: &mut RandomSource, bound: i64) -> Rat {
    loop {
        let c = r.range(-bound, bound);
        if c != 0 {
            return Rat::from(c);
        }
    }
}

fn coprime(a: u64, b: u64) -> bool {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

pub fn monomial(a: u32, b: u32) -> BPoly {
    BPoly::monomial(Rat::one(), a, b)
}

/// `y^p − c x^q`, or a smooth branch `y − c x − c' x^2`.
pub fn random_factor(r: &mut RandomSource) -> BPoly {
    if r.chance(0.25) {
        let c1 = small_nonzero(r, 4);
        let c2 = Rat::from(r.range(-3, 3));
        return BPoly::from_terms([((0, 1), Rat::one()), ((1, 0), -c1), ((2, 0), -c2)]);
    }
    loop {
        let p = r.range(1, 3) as u64;
        let q = r.range(1, 4) as u64;
        if coprime(p, q) {
            let c = small_nonzero(r, 4);
            return BPoly::from_terms([((0, p as u32), Rat::one()), ((q as u32, 0), -c)]);
        }
    }
}

/// A product of one to three factors from `pool`, times a small monomial.
pub fn random_element(r: &mut RandomSource, pool: &[BPoly]) -> BPoly {
    let k = r.range(1, 3);
    let mut f = monomial(r.range(0, 2) as u32, r.range(0, 2) as u32);
    for _ in 0..k {
        f = f.mul(&pool[r.index(pool.len())]);
    }
    if !f.vanishes_at_origin() || f.is_constant() {
        f = f.mul(&monomial(1, 0));
    }
    f
}

/// A pool of two or three random factors.
pub fn random_pool(r: &mut RandomSource) -> Vec<BPoly> {
    let n = r.range(2, 3);
    (0..n).map(|_| random_factor(r)).collect()
}

fn add_noise(r: &mut RandomSource, f: &BPoly) -> BPoly {
    let a = r.range(0, 10) as u32;
    let b = r.range(0, 10) as u32;
    if a + b < 10 {
        return f.clone();
    }
    f.add(&BPoly::monomial(small_nonzero(r, 5), a, b))
}

/// A random ideal of finite codimension: elements built from a shared pool
/// of factors, together with pure powers of `x` and `y`.
pub fn random_finite_ideal(r: &mut RandomSource) -> IdealGens {
    let pool = random_pool(r);
    let k = r.range(1, 3);
    let mut gens: Vec<BPoly> = (0..k).map(|_| random_element(r, &pool)).collect();
    gens.push(monomial(r.range(2, 9) as u32, 0));
    gens.push(monomial(0, r.range(2, 9) as u32));
    if r.chance(0.5) {
        let i = r.index(gens.len());
        gens[i] = add_noise(r, &gens[i]);
    }
    IdealGens::new(gens).expect("nonzero generators")
}

/// A random ideal of finite codimension times a random principal factor
/// and random monomial content, or left as it is.
pub fn random_ideal(r: &mut RandomSource) -> IdealGens {
    let base = random_finite_ideal(r);
    let mut factor = monomial(r.range(0, 2) as u32, r.range(0, 2) as u32);
    if r.chance(0.5) {
        let pool = random_pool(r);
        factor = factor.mul(&random_element(r, &pool));
    }
    if factor.is_constant() {
        base
    } else {
        base.times_poly(&factor).expect("nonzero factor")
    }
}

/// A random monomial ideal of finite codimension.
pub fn random_monomial_ideal(r: &mut RandomSource) -> IdealGens {
    let mut gens = vec![
        monomial(r.range(1, 12) as u32, 0),
        monomial(0, r.range(1, 12) as u32),
    ];
    for _ in 0..r.range(0, 4) {
        gens.push(monomial(r.range(1, 8) as u32, r.range(1, 8) as u32));
    }
    IdealGens::new(gens).expect("nonzero generators")
}

/// Runs the algorithm, treating ideals with irrational face roots as
/// outside the sampled domain.
pub fn analyse(i: &IdealGens) -> Result<Option<AnalysisResult>, String> {
    match run(i, RunConfig::default()) {
        Ok(a) => Ok(Some(a)),
        Err(NewtonError::GroundFieldInsufficient { .. }) => Ok(None),
        Err(e) => Err(format!("analysis of {} failed: {e}", ideal_text(i))),
    }
}

/// Generators of an ideal as text, for failure messages.
pub fn ideal_text(i: &IdealGens) -> String {
    let gens: Vec<String> = i
        .full_generators()
        .iter()
        .map(ToString::to_string)
        .collect();
    format!("({})", gens.join(", "))
}

/// Draws from `gen` until `count` samples fall in the sampled domain, with
/// a cap on the number of draws.
pub fn sample<T>(
    seed: u64,
    count: usize,
    mut gen: impl FnMut(&mut RandomSource) -> Option<T>,
) -> Vec<T> {
    let mut r = RandomSource::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count && draws < count * 20 {
        draws += 1;
        if let Some(t) = gen(&mut r) {
            out.push(t);
        }
    }
    out
}
