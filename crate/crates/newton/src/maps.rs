//! Newton maps `σ_(p,q,μ): x = μ^{q'} x₁^p, y = x₁^q (y₁ + μ^{p'})` with the
//! canonical normalization `p p' − q q' = 1`, `p' ≤ q`, `q' < p`.

use std::cmp::Ordering;
use std::fmt;

use algebra_core::{BPoly, IdealGens, Rat, UPoly};

use crate::error::{NewtonError, Result};
use crate::geometry::weighted_order;

/// Root attached to a Newton map: an exact nonzero rational or the marker
/// for a generic value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mu {
    Value(Rat),
    Generic,
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mu::Value(r) => write!(f, "{r}"),
            Mu::Generic => write!(f, "GENERIC"),
        }
    }
}

impl Mu {
    /// Parses a rational or the literal `GENERIC`.
    pub fn parse(s: &str) -> Option<Mu> {
        if s.trim() == "GENERIC" {
            return Some(Mu::Generic);
        }
        s.parse::<Rat>()
            .ok()
            .filter(|r| !r.is_zero())
            .map(Mu::Value)
    }
}

/// A Newton map in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonMap {
    pub p: u64,
    pub q: u64,
    pub p_prime: u64,
    pub q_prime: u64,
    pub mu: Mu,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Builds the canonical Newton map for `(p, q, μ)`.
pub fn make_map(p: u64, q: u64, mu: Mu) -> Result<NewtonMap> {
    if p == 0 || q == 0 || gcd_u64(p, q) != 1 {
        return Err(NewtonError::NotCoprime(p, q));
    }
    if matches!(&mu, Mu::Value(r) if r.is_zero()) {
        return Err(NewtonError::ZeroMu);
    }
    let p_prime = (1..=q)
        .find(|&pp| (p as u128 * pp as u128) % q as u128 == 1 % q as u128)
        .expect("p is invertible modulo q");
    let q_prime = (p * p_prime - 1) / q;
    Ok(NewtonMap {
        p,
        q,
        p_prime,
        q_prime,
        mu,
    })
}

impl NewtonMap {
    /// The same face data with the generic marker.
    pub fn generic(&self) -> NewtonMap {
        NewtonMap {
            mu: Mu::Generic,
            ..self.clone()
        }
    }

    /// The concrete root, if any.
    pub fn value(&self) -> Option<&Rat> {
        match &self.mu {
            Mu::Value(r) => Some(r),
            Mu::Generic => None,
        }
    }

    /// Whether the map carries the generic marker.
    pub fn is_generic(&self) -> bool {
        self.mu == Mu::Generic
    }
}

impl fmt::Display for NewtonMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ({},{},{})", self.p, self.q, self.mu)
    }
}

/// Canonical order: `p/q` descending, then the generic marker, then `μ`
/// ascending.
impl Ord for NewtonMap {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(other.p) * u128::from(self.q);
        let rhs = u128::from(self.p) * u128::from(other.q);
        lhs.cmp(&rhs)
            .then_with(|| self.p.cmp(&other.p))
            .then_with(|| match (&self.mu, &other.mu) {
                (Mu::Generic, Mu::Generic) => Ordering::Equal,
                (Mu::Generic, Mu::Value(_)) => Ordering::Less,
                (Mu::Value(_), Mu::Generic) => Ordering::Greater,
                (Mu::Value(a), Mu::Value(b)) => a.cmp(b),
            })
    }
}

impl PartialOrd for NewtonMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total transform `f ∘ σ` for a concrete root, before any division.
pub fn total_transform(f: &BPoly, m: &NewtonMap) -> BPoly {
    let mu = m.value().expect("total_transform needs a concrete root");
    let c = mu.pow(m.p_prime as i64);
    let shift = UPoly::new(vec![c, Rat::one()]);
    let max_b = f.deg_y().unwrap_or(0) as usize;
    let mut shifts = vec![UPoly::one()];
    for k in 1..=max_b {
        let next = shifts[k - 1].mul(&shift);
        shifts.push(next);
    }
    let mut out = BPoly::zero();
    for (&(a, b), coef) in f.terms() {
        let scale = coef * &mu.pow(m.q_prime as i64 * i64::from(a));
        let xe = m.p * u64::from(a) + m.q * u64::from(b);
        let xe = u32::try_from(xe).expect("exponent fits in u32");
        for (j, s) in shifts[b as usize].coeffs().iter().enumerate() {
            if !s.is_zero() {
                out.add_term((xe, j as u32), &(&scale * s));
            }
        }
    }
    out
}

/// `f ∘ σ = x₁^k · f₁` with `x₁ ∤ f₁`.
pub fn apply_map_poly(f: &BPoly, m: &NewtonMap) -> (u64, BPoly) {
    let t = total_transform(f, m);
    let k = t.x_content();
    (u64::from(k), t.div_monomial(k, 0))
}

/// `x₁`-order of `f ∘ σ_(p,q,μ)` for a generic `μ`. Distinct monomials of
/// `f` with the same weighted degree differ in their `y`-degree, so their
/// images cannot cancel and the order is `min (pα + qβ)` over the support.
pub fn apply_map_poly_generic(f: &BPoly, p: u64, q: u64) -> u64 {
    weighted_order(f, p, q)
}

/// `σ(I) = (x₁^{N₀}) · I₁` with `I₁` free of `x`-content.
pub fn apply_map_ideal(i: &IdealGens, m: &NewtonMap) -> (u64, IdealGens) {
    let images: Vec<BPoly> = i
        .full_generators()
        .iter()
        .map(|g| total_transform(g, m))
        .collect();
    let raw = IdealGens::new(images).expect("images of nonzero generators are nonzero");
    let (n0, b) = raw.content();
    let i1 = IdealGens::new(
        raw.generators()
            .iter()
            .map(|g| g.mul_monomial(0, b))
            .collect(),
    )
    .expect("nonempty");
    (u64::from(n0), i1)
}
