//! Closed formulas for monomial ideals.
//!
//! For a monomial ideal the integral closure is spanned by the monomials in
//! the convex hull of the exponents plus the positive quadrant. Writing the
//! content-free hull boundary as faces `pα + qβ = N` with `k` lattice steps
//! each, the closure factors as `x^a y^b ∏ I_(p,q)^k` where `I_(p,q)` is the
//! simple monomial ideal with the single face `pα + qβ = pq`, and the
//! multiplicity is `Σ N·k`, which equals twice the area under the boundary.

use std::fmt;

use algebra_core::{IdealGens, Rat};

use crate::error::OracleError;

/// One boundary segment of a monomial staircase hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFace {
    /// Coefficient of `α` in the supporting line.
    pub p: u64,
    /// Coefficient of `β` in the supporting line.
    pub q: u64,
    /// Level of the supporting line.
    pub n: u64,
    /// Number of lattice steps along the segment.
    pub steps: u64,
}

/// Zariski factorization and multiplicity of the closure of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialClosure {
    /// Exponents of the monomial factor `x^a y^b`.
    pub content: (u32, u32),
    /// Faces of the content-free hull, top to bottom.
    pub faces: Vec<MonomialFace>,
    /// Multiplicity `Σ N·k` of the content-free factor.
    pub e: u64,
    /// Twice the area under the content-free boundary, by the shoelace formula.
    pub area2: u64,
}

impl MonomialClosure {
    /// Multiplicity of the ideal itself, defined only without monomial content.
    pub fn e_of_ideal(&self) -> Option<u64> {
        (self.content == (0, 0)).then_some(self.e)
    }
}

/// Minimal monomial generators of the simple ideal with single face
/// `pα + qβ = pq`, ordered by decreasing power of `x`.
pub fn simple_monomial_generators(p: u64, q: u64) -> Vec<(u64, u64)> {
    let target = p * q;
    let mut gens = Vec::new();
    let mut last_beta = u64::MAX;
    for alpha in 0..=q {
        let beta = (target - p * alpha).div_ceil(q);
        if beta < last_beta {
            gens.push((alpha, beta));
            last_beta = beta;
        }
    }
    gens.reverse();
    gens
}

fn monomial_string(a: u64, b: u64) -> String {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{b}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Writes a simple monomial ideal as `(g1,g2,...)`.
pub fn simple_ideal_string(p: u64, q: u64) -> String {
    let gens: Vec<String> = simple_monomial_generators(p, q)
        .into_iter()
        .map(|(a, b)| monomial_string(a, b))
        .collect();
    format!("({})", gens.join(","))
}

impl fmt::Display for MonomialClosure {
    /// Juxtaposed product such as `(x,y)^3(x^3,y)`; a monomial factor comes
    /// first as a principal ideal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.content;
        if (a, b) != (0, 0) {
            write!(f, "({})", monomial_string(a.into(), b.into()))?;
        }
        for face in &self.faces {
            write!(f, "{}", simple_ideal_string(face.p, face.q))?;
            if face.steps > 1 {
                write!(f, "^{}", face.steps)?;
            }
        }
        Ok(())
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Vertices of the lower-left convex chain of a point set.
pub fn staircase_hull(points: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut pts = points.to_vec();
    pts.sort();
    let mut stair: Vec<(u64, u64)> = Vec::new();
    for p in pts {
        if stair.last().is_none_or(|l| p.1 < l.1) {
            stair.push(p);
        }
    }
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 as i128 - o.0 as i128) * (p.1 as i128 - o.1 as i128)
                - (a.1 as i128 - o.1 as i128) * (p.0 as i128 - o.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn faces_of(hull: &[(u64, u64)]) -> Vec<MonomialFace> {
    hull.windows(2)
        .map(|w| {
            let (a1, b1) = w[0];
            let (a2, b2) = w[1];
            let g = gcd_u64(a2 - a1, b1 - b2);
            let p = (b1 - b2) / g;
            let q = (a2 - a1) / g;
            MonomialFace {
                p,
                q,
                n: p * a1 + q * b1,
                steps: g,
            }
        })
        .collect()
}

/// Closure factorization and multiplicity of a monomial ideal.
pub fn monomial_closure(i: &IdealGens) -> Result<MonomialClosure, OracleError> {
    if !i.is_monomial() {
        return Err(OracleError::NotMonomial);
    }
    let pts: Vec<(u64, u64)> = i
        .generators()
        .iter()
        .map(|g| {
            let (a, b) = g.leading_exp().expect("nonzero");
            (u64::from(a), u64::from(b))
        })
        .collect();
    let hull = staircase_hull(&pts);
    let faces = faces_of(&hull);
    let e = faces.iter().map(|f| f.n * f.steps).sum();
    let area2 = hull
        .windows(2)
        .map(|w| w[1].0 * w[0].1 - w[0].0 * w[1].1)
        .sum();
    Ok(MonomialClosure {
        content: i.content(),
        faces,
        e,
        area2,
    })
}

/// Łojasiewicz exponent of a finite-codimension monomial ideal from its
/// characterization as the infimum of `r/s` with `(x,y)^r` inside the
/// closure of `I^s`, searched over `s ≤ max_s`.
pub fn lojasiewicz_monomial_bruteforce(i: &IdealGens, max_s: u64) -> Result<Rat, OracleError> {
    let closure = monomial_closure(i)?;
    if closure.content != (0, 0) {
        return Err(OracleError::NotFiniteCodim);
    }
    let inside = |alpha: u64, beta: u64, s: u64| {
        closure
            .faces
            .iter()
            .all(|f| f.p * alpha + f.q * beta >= s * f.n)
    };
    let mut best: Option<Rat> = None;
    for s in 1..=max_s {
        let mut r = 0;
        while !(0..=r).all(|a| inside(a, r - a, s)) {
            r += 1;
        }
        let cand = Rat::new(r as i64, s as i64);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    Ok(best.expect("max_s >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&str]) -> IdealGens {
        IdealGens::from_strs(gens).unwrap()
    }

    #[test]
    fn closure_examples() {
        let c = monomial_closure(&ideal(&["x^4", "y^6"])).unwrap();
        assert_eq!(
            c.faces,
            vec![MonomialFace {
                p: 3,
                q: 2,
                n: 12,
                steps: 2
            }]
        );
        assert_eq!(c.e, 24);
        assert_eq!(c.area2, 24);
        assert_eq!(c.to_string(), "(x^2,x*y^2,y^3)^2");
        let c = monomial_closure(&ideal(&["x", "y"])).unwrap();
        assert_eq!((c.e, c.to_string()), (1, "(x,y)".to_string()));
        let c = monomial_closure(&ideal(&["x^3*y", "x^6", "y^4"])).unwrap();
        assert_eq!(c.to_string(), "(x,y)^3(x^3,y)");
        assert_eq!(c.e, 18);
        assert!(monomial_closure(&ideal(&["x+y"])).is_err());
    }

    #[test]
    fn simple_generators() {
        assert_eq!(simple_ideal_string(1, 3), "(x^3,y)");
        assert_eq!(simple_ideal_string(2, 1), "(x,y^2)");
        assert_eq!(simple_ideal_string(5, 2), "(x^2,x*y^3,y^5)");
    }

    #[test]
    fn lojasiewicz_bruteforce() {
        for (a, b) in [(2u32, 3u32), (4, 6), (5, 5), (1, 7)] {
            let i = ideal(&[&format!("x^{a}"), &format!("y^{b}")]);
            assert_eq!(
                lojasiewicz_monomial_bruteforce(&i, 6).unwrap(),
                Rat::from(i64::from(a.max(b)))
            );
        }
    }
}
