//! Intersection multiplicities and generic-element multiplicities.
//!
//! The local intersection number of two coprime germs at the origin is the
//! `x`-order of their resultant in `y`, computed modulo primes, once the
//! line `x = 0` meets their common zero set only at the origin and both are
//! regular in `y`. A random
//! linear change `x ↦ x + c·y` moves that line to a random line through the
//! origin and makes the top-degree coefficient in `y` a nonzero constant, so
//! no other common zero and no zero at infinity lies over `x = 0`.

use algebra_core::{gcd, BPoly, IdealGens, Rat};

use crate::error::OracleError;
use crate::modular::sheared_resultant_order;
use crate::random::RandomSource;

/// Number of independent linear changes whose answers must agree.
pub const SHEARS: usize = 3;

/// Number of random draws used by the generic-element oracles.
pub const DRAWS: usize = 5;

/// Substitutes `x ↦ x + c·y` into `f`.
pub fn shear(f: &BPoly, c: &Rat) -> BPoly {
    let lin = BPoly::from_terms([((1, 0), Rat::one()), ((0, 1), c.clone())]);
    let max_a = f.deg_x().unwrap_or(0);
    let mut powers = vec![BPoly::one()];
    for k in 1..=max_a as usize {
        let next = powers[k - 1].mul(&lin);
        powers.push(next);
    }
    let mut out = BPoly::zero();
    for (&(a, b), coef) in f.terms() {
        out = out.add(&powers[a as usize].mul_monomial(0, b).scale(coef));
    }
    out
}

/// Intersection multiplicity at the origin of the curves `f = 0` and `g = 0`.
///
/// A common factor that does not vanish at the origin is a unit locally and
/// is removed when the resultant shows that `f` and `g` are not coprime.
pub fn intersection_mult(f: &BPoly, g: &BPoly, rnd: &mut RandomSource) -> Result<u64, OracleError> {
    if f.is_zero() || g.is_zero() || !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Err(OracleError::NotVanishingAtOrigin);
    }
    let shears: Vec<Rat> = (0..SHEARS).map(|_| Rat::from(rnd.coeff())).collect();
    if let Some(values) = sheared_orders(f, g, &shears) {
        return agree(values);
    }
    let common = gcd(f, g);
    if common.vanishes_at_origin() {
        return Err(OracleError::CommonFactor(common.to_string()));
    }
    let f = f.div_exact(&common).expect("gcd divides");
    let g = g.div_exact(&common).expect("gcd divides");
    sheared_orders(&f, &g, &shears)
        .ok_or_else(|| OracleError::CommonFactor("resultant vanished".into()))
        .and_then(agree)
}

fn sheared_orders(f: &BPoly, g: &BPoly, shears: &[Rat]) -> Option<Vec<u64>> {
    shears
        .iter()
        .map(|c| sheared_resultant_order(f, g, c))
        .collect()
}

fn agree(values: Vec<u64>) -> Result<u64, OracleError> {
    if values.iter().all(|&v| v == values[0]) {
        Ok(values[0])
    } else {
        Err(OracleError::ShearDisagreement(values))
    }
}

fn combination(gens: &[BPoly], rnd: &mut RandomSource) -> BPoly {
    gens.iter().fold(BPoly::zero(), |acc, g| {
        acc.add(&g.scale(&Rat::from(rnd.coeff())))
    })
}

/// Content-free generators with a locally invertible common factor removed,
/// or `NotFiniteCodim` when the ideal is not primary to the maximal ideal.
pub fn finite_codim_generators(i: &IdealGens) -> Result<Vec<BPoly>, OracleError> {
    if i.content() != (0, 0) {
        return Err(OracleError::NotFiniteCodim);
    }
    let common = algebra_core::gcd_many(i.generators());
    if common.vanishes_at_origin() {
        return Err(OracleError::NotFiniteCodim);
    }
    let gens: Vec<BPoly> = i
        .generators()
        .iter()
        .map(|g| g.div_exact(&common).expect("gcd divides"))
        .collect();
    if gens.iter().any(|g| !g.vanishes_at_origin()) {
        return Err(OracleError::NotFiniteCodim);
    }
    Ok(gens)
}

/// Hilbert–Samuel multiplicity of a finite-codimension ideal as the minimum,
/// over random pairs of generic combinations of the generators, of their
/// intersection multiplicity.
pub fn e_oracle(i: &IdealGens, rnd: &mut RandomSource) -> Result<u64, OracleError> {
    let gens = finite_codim_generators(i)?;
    let mut best: Option<u64> = None;
    let mut last_err = None;
    for _ in 0..DRAWS {
        let g1 = combination(&gens, rnd);
        let g2 = combination(&gens, rnd);
        match intersection_mult(&g1, &g2, rnd) {
            Ok(v) => best = Some(best.map_or(v, |b| b.min(v))),
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(OracleError::NoGenericDraw))
}

/// Order of the ideal, as the minimum order of random generic combinations
/// of the generators (monomial content included).
pub fn mult_oracle(i: &IdealGens, rnd: &mut RandomSource) -> u64 {
    let (a, b) = i.content();
    (0..DRAWS)
        .filter_map(|_| combination(i.generators(), rnd).order().ok())
        .min()
        .map_or(u64::MAX, |o| u64::from(o + a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::parse_poly;

    fn p(s: &str) -> BPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let mut r = RandomSource::new(1);
        assert_eq!(
            intersection_mult(&p("y^2-x^3"), &p("y"), &mut r).unwrap(),
            3
        );
        assert_eq!(intersection_mult(&p("x"), &p("y"), &mut r).unwrap(), 1);
        assert_eq!(intersection_mult(&p("y"), &p("x^5"), &mut r).unwrap(), 5);
        assert_eq!(
            intersection_mult(&p("x"), &p("y-1"), &mut r),
            Err(OracleError::NotVanishingAtOrigin)
        );
        assert!(matches!(
            intersection_mult(&p("x*y"), &p("x*(y-x)"), &mut r),
            Err(OracleError::CommonFactor(_))
        ));
        // Other intersections on the axis x = 0 must not be counted.
        assert_eq!(
            intersection_mult(&p("x"), &p("y*(y-1)"), &mut r).unwrap(),
            1
        );
    }

    #[test]
    fn shear_substitutes() {
        assert_eq!(shear(&p("x^2*y"), &Rat::from(2)), p("(x+2*y)^2*y"));
    }
}
