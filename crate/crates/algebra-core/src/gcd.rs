//! Greatest common divisors and squarefree decomposition in `Q[x, y]`.
//!
//! Polynomials are viewed in `Q[x][y]`. The gcd is the product of the gcd of
//! the `x`-contents and the gcd of the primitive parts. The latter is `1`
//! when a reduction modulo a prime certifies it, and otherwise the primitive
//! part of the last subresultant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bpoly::BPoly;
use crate::rat::Rat;
use crate::upoly::UPoly;

/// A polynomial in `y` with coefficients in `Q[x]`; entry `k` multiplies `y^k`.
type YPoly = Vec<UPoly>;

fn content(p: &YPoly) -> UPoly {
    p.iter()
        .filter(|c| !c.is_zero())
        .fold(UPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive(p: &YPoly) -> YPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter()
        .map(|u| u.div_exact(&c).expect("content divides"))
        .collect()
}

const CHECK_PRIME: u64 = (1 << 31) - 1;
const CHECK_POINTS: [u64; 3] = [12_345, 987_654, 31_337];

fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % CHECK_PRIME;
        }
        a = a * a % CHECK_PRIME;
        e >>= 1;
    }
    r
}

fn mod_rat(r: &Rat) -> Option<u64> {
    let p = BigInt::from(CHECK_PRIME);
    let reduce = |n: &BigInt| n.mod_floor(&p).to_u64().expect("reduced below the prime");
    let den = reduce(r.denom());
    (den != 0).then(|| reduce(r.numer()) * mod_pow(den, CHECK_PRIME - 2) % CHECK_PRIME)
}

/// Image of `p(point, y)` modulo the check prime, or `None` when the leading
/// coefficient vanishes there or a denominator is not invertible.
fn image_at(p: &YPoly, point: u64) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        let mut acc = 0;
        for coef in c.coeffs().iter().rev() {
            acc = (acc * point + mod_rat(coef)?) % CHECK_PRIME;
        }
        out.push(acc);
    }
    (out.last().is_some_and(|&v| v != 0)).then_some(out)
}

fn mod_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let n = b.len() - 1;
        let inv = mod_pow(b[n], CHECK_PRIME - 2);
        while a.len() > n {
            let da = a.len() - 1;
            let f = a[da] * inv % CHECK_PRIME;
            for (k, &c) in b.iter().enumerate() {
                let idx = da - n + k;
                a[idx] = (a[idx] + CHECK_PRIME - f * c % CHECK_PRIME) % CHECK_PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Exact certificate that two `y`-primitive polynomials are coprime: at a
/// point where both leading coefficients survive modulo a prime, the degree
/// in `y` of any common factor is at most that of the gcd of the images.
fn certified_coprime(a: &YPoly, b: &YPoly) -> bool {
    CHECK_POINTS
        .iter()
        .any(|&pt| match (image_at(a, pt), image_at(b, pt)) {
            (Some(fa), Some(fb)) => mod_gcd_degree(fa, fb) == 0,
            _ => false,
        })
}

/// Dense polynomial in `x` with integer coefficients, lowest degree first
/// and no trailing zeros.
type ZPoly = Vec<BigInt>;

/// Polynomial in `y` over `Z[x]`.
type ZYPoly = Vec<ZPoly>;

fn z_trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(&mut out);
    out
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (k, c) in b.iter().enumerate() {
        out[k] -= c;
    }
    z_trim(&mut out);
    out
}

fn z_pow(a: &ZPoly, e: u32) -> ZPoly {
    (0..e).fold(vec![BigInt::one()], |acc, _| z_mul(&acc, a))
}

/// Exact quotient in `Z[x]`; the divisor must divide.
fn z_div_exact(a: &ZPoly, d: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    if r.is_empty() {
        return r;
    }
    let n = d.len() - 1;
    let lead = &d[n];
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(n).max(1)];
    while !r.is_empty() && r.len() > n {
        let k = r.len() - 1 - n;
        let (c, rem) = r[r.len() - 1].div_rem(lead);
        debug_assert!(rem.is_zero(), "inexact division in Z[x]");
        for (i, dc) in d.iter().enumerate() {
            r[k + i] -= &c * dc;
        }
        q[k] = c;
        z_trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact division in Z[x]");
    z_trim(&mut q);
    q
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b` over `Z[x]`.
fn z_prem(a: &ZYPoly, b: &ZYPoly) -> ZYPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = (a.len() - b.len() + 1) as u32;
    while r.len() > db && !r.is_empty() {
        let lr = r[r.len() - 1].clone();
        let shift = r.len() - 1 - db;
        let mut next: ZYPoly = r.iter().map(|c| z_mul(c, lb)).collect();
        for (k, c) in b.iter().enumerate() {
            next[k + shift] = z_sub(&next[k + shift], &z_mul(c, &lr));
        }
        while next.last().is_some_and(Vec::is_empty) {
            next.pop();
        }
        r = next;
        e -= 1;
    }
    let scale = z_pow(lb, e);
    r.iter().map(|c| z_mul(c, &scale)).collect()
}

/// Integer image of a `y`-polynomial over `Q[x]`, scaled by the common
/// denominator.
fn to_integer(p: &YPoly) -> ZYPoly {
    let lcm = p
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter()
        .map(|c| {
            let mut z: ZPoly = c
                .coeffs()
                .iter()
                .map(|r| r.numer() * (&lcm / r.denom()))
                .collect();
            z_trim(&mut z);
            z
        })
        .collect()
}

fn from_integer(p: &ZYPoly) -> YPoly {
    p.iter()
        .map(|c| UPoly::new(c.iter().map(|n| Rat::from_int(n.clone())).collect()))
        .collect()
}

/// Gcd of two `y`-primitive polynomials of positive degree by the
/// subresultant remainder sequence over `Z[x]`.
fn subresultant_gcd(a: YPoly, b: YPoly) -> YPoly {
    let (mut a, mut b) = (to_integer(&a), to_integer(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g: ZPoly = vec![BigInt::one()];
    let mut h: ZPoly = vec![BigInt::one()];
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = z_prem(&a, &b);
        if r.is_empty() {
            return primitive(&from_integer(&b));
        }
        if r.len() == 1 {
            return vec![UPoly::one()];
        }
        let divisor = z_mul(&g, &z_pow(&h, delta));
        a = b;
        b = r.iter().map(|c| z_div_exact(c, &divisor)).collect();
        g = a[a.len() - 1].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => z_div_exact(&z_pow(&g, delta), &z_pow(&h, delta - 1)),
        };
    }
}

/// Greatest common divisor in `Q[x, y]`, normalized by [`BPoly::normalized`].
///
/// The gcd of two zero polynomials is zero; the gcd of `f` and zero is `f`
/// normalized.
pub fn gcd(f: &BPoly, g: &BPoly) -> BPoly {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    if f.is_monomial() || g.is_monomial() {
        let a = f.x_content().min(g.x_content());
        let b = f.y_content().min(g.y_content());
        return BPoly::monomial(crate::Rat::one(), a, b);
    }
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    if large.div_exact(small).is_some() {
        return small.normalized();
    }
    let mut a: YPoly = f.normalized().to_y_coeffs();
    let mut b: YPoly = g.normalized().to_y_coeffs();
    let c = content(&a).gcd(&content(&b));
    a = primitive(&a);
    b = primitive(&b);
    let core = if a.len() <= 1 || b.len() <= 1 || certified_coprime(&a, &b) {
        vec![UPoly::one()]
    } else {
        subresultant_gcd(a, b)
    };
    let core: YPoly = core.iter().map(|u| u.mul(&c)).collect();
    BPoly::from_y_coeffs(&core).normalized()
}

/// Greatest common divisor of a list of polynomials.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a BPoly>>(polys: I) -> BPoly {
    let mut polys: Vec<&BPoly> = polys.into_iter().collect();
    polys.sort_by_key(|p| p.len());
    let mut acc = BPoly::zero();
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            return BPoly::one();
        }
    }
    acc
}

/// Squarefree decomposition `f = c · ∏ factor^multiplicity`.
///
/// Factors are normalized, squarefree and pairwise coprime, with one factor
/// per multiplicity. The list is sorted by the lexicographically greatest
/// monomial of each factor and then by multiplicity. The pure-`x` content is
/// decomposed with the univariate algorithm and the `y`-primitive part with
/// Yun's algorithm for `∂/∂y`.
///
/// # Panics
///
/// Panics on the zero polynomial.
pub fn squarefree_decompose(f: &BPoly) -> Vec<(BPoly, u32)> {
    assert!(!f.is_zero(), "squarefree_decompose of zero");
    let coeffs = f.to_y_coeffs();
    let cont = content(&coeffs);
    let prim = BPoly::from_y_coeffs(&primitive(&coeffs));
    let mut pieces: Vec<(BPoly, u32)> = cont
        .squarefree_decompose()
        .into_iter()
        .map(|(u, m)| (BPoly::from_upoly_x(&u), m))
        .collect();
    if prim.deg_y().unwrap_or(0) > 0 {
        let d = prim.diff_y();
        let c = gcd(&prim, &d);
        let mut w = prim.div_exact(&c).expect("gcd divides");
        let mut z = d.div_exact(&c).expect("gcd divides").sub(&w.diff_y());
        let mut i = 1;
        while !w.is_constant() {
            let a = gcd(&w, &z);
            w = w.div_exact(&a).expect("gcd divides");
            let y = z.div_exact(&a).expect("gcd divides");
            z = y.sub(&w.diff_y());
            if !a.is_constant() {
                pieces.push((a, i));
            }
            i += 1;
        }
    }
    let mut by_mult: std::collections::BTreeMap<u32, BPoly> = Default::default();
    for (p, m) in pieces {
        let e = by_mult.entry(m).or_insert_with(BPoly::one);
        *e = e.mul(&p);
    }
    let mut out: Vec<(BPoly, u32)> = by_mult
        .into_iter()
        .map(|(m, p)| (p.normalized(), m))
        .collect();
    out.sort_by_key(|a| (a.0.leading_exp(), a.1));
    out
}
