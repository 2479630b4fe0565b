//! Randomized properties of the Newton pipeline beyond the acceptance suites.

mod common;

use algebra_core::{IdealGens, Rat};
use common::{
    analyse, ideal_text, random_element, random_finite_ideal, random_ideal, random_monomial_ideal,
    random_pool, sample,
};
use newton::invariants::{is_finite_codim, lojasiewicz, mult_m, valuation_direct, valuation_nv};
use newton::process::processes_equivalent;
use newton::{NewtonError, RunConfig};
use oracle::{lojasiewicz_monomial_bruteforce, mult_oracle, RandomSource};

#[test]
fn valuations_are_additive_by_substitution() {
    let cases = sample(21, 200, |r| {
        let a = analyse(&random_ideal(r)).unwrap()?;
        if a.tree.vertices.is_empty() {
            return None;
        }
        let pool = random_pool(r);
        let (f, g) = (random_element(r, &pool), random_element(r, &pool));
        let v = r.index(a.tree.vertices.len());
        Some((a, v, f, g))
    });
    assert!(cases.len() >= 200);
    for (a, v, f, g) in &cases {
        let info = &a.layout.vertices[*v];
        let fg = f.mul(g);
        assert_eq!(
            valuation_direct(info, &fg),
            valuation_direct(info, f) + valuation_direct(info, g),
            "vertex {v}, f = {f}, g = {g}"
        );
    }
}

#[test]
fn valuations_are_additive_on_the_tree() {
    let cfg = RunConfig::default();
    let mut checked = 0;
    let mut r = RandomSource::new(22);
    while checked < 60 {
        let Some(a) = analyse(&random_finite_ideal(&mut r)).unwrap() else {
            continue;
        };
        let pool = random_pool(&mut r);
        let (f, g) = (random_element(&mut r, &pool), random_element(&mut r, &pool));
        let v = r.index(a.tree.vertices.len());
        let values = [&f, &g, &f.mul(&g)].map(|h| valuation_nv(&a, v, h, cfg));
        match values {
            [Ok(vf), Ok(vg), Ok(vfg)] => {
                assert_eq!(vfg, vf + vg, "vertex {v}, f = {f}, g = {g}");
                checked += 1;
            }
            [Err(NewtonError::GroundFieldInsufficient { .. }), ..]
            | [_, Err(NewtonError::GroundFieldInsufficient { .. }), _]
            | [_, _, Err(NewtonError::GroundFieldInsufficient { .. })] => {}
            other => panic!("valuation failed: {other:?}"),
        }
    }
}

#[test]
fn process_ignores_the_choice_of_generators() {
    let cases = sample(23, 200, |r| {
        let i = random_ideal(r);
        let a = analyse(&i).unwrap()?;
        Some((i, a, r.coeff(), r.index(2)))
    });
    assert!(cases.len() >= 200);
    for (i, a, c, pick) in &cases {
        let mut gens = i.full_generators();
        let k = gens.len();
        let (s, t) = (pick % k, (pick + 1) % k);
        let mixed = gens[s].add(&gens[t].scale(&Rat::from(*c)));
        gens[s] = if mixed.is_zero() {
            gens[s].clone()
        } else {
            mixed
        };
        gens.push(gens[t].mul(&common::monomial(1, 1)));
        let j = IdealGens::new(gens).unwrap();
        let b = analyse(&j).unwrap().expect("same face polynomials");
        assert!(
            processes_equivalent(&a.process, &b.process),
            "{} gives {} but {} gives {}",
            ideal_text(i),
            a.process,
            ideal_text(&j),
            b.process
        );
        assert!(a.tree.isomorphic(&b.tree), "{}", ideal_text(i));
    }
}

#[test]
fn order_multiplicity_matches_generic_elements() {
    let cases = sample(24, 200, |r| {
        let i = random_finite_ideal(r);
        let a = analyse(&i).unwrap()?;
        Some((i, a))
    });
    assert!(cases.len() >= 200);
    let mut r = RandomSource::new(25);
    for (i, a) in &cases {
        assert!(is_finite_codim(a));
        assert_eq!(
            mult_m(a).unwrap(),
            mult_oracle(i, &mut r),
            "{}",
            ideal_text(i)
        );
    }
}

#[test]
fn lojasiewicz_of_monomial_ideals_matches_brute_force() {
    const MAX_S: u64 = 30;
    let mut r = RandomSource::new(26);
    for _ in 0..200 {
        let i = random_monomial_ideal(&mut r);
        let a = analyse(&i).unwrap().expect("monomial ideals stay rational");
        let l = lojasiewicz(&a).unwrap();
        let brute = lojasiewicz_monomial_bruteforce(&i, MAX_S).unwrap();
        assert!(
            brute >= l,
            "{}: tree {l}, brute force {brute}",
            ideal_text(&i)
        );
        if *l.denom() <= MAX_S.into() {
            assert_eq!(brute, l, "{}", ideal_text(&i));
        }
    }
}
