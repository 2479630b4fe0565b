//! The `x`-order of a resultant `Res_y(f, g)` computed modulo primes.
//!
//! The resultant is evaluated at enough points `x = a` by the Euclidean
//! algorithm over `F_p`, then interpolated. Reduction modulo `p` can only
//! raise the order, and only when `p` divides the lowest coefficient, so the
//! minimum over several large primes is the order over `Q`.

use algebra_core::{BPoly, Rat};
use num_bigint::{BigInt, Sign};

/// Primes used for the modular resultant: `2^61 − 1` and `2^31 − 1`.
pub const PRIMES: [u64; 2] = [(1 << 61) - 1, (1 << 31) - 1];

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(p)) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let (sign, digits) = r.to_u64_digits();
    let v = digits.first().copied().unwrap_or(0);
    if sign == Sign::Minus && v != 0 {
        p - v
    } else {
        v
    }
}

/// Image of a rational in `F_p`, or `None` when `p` divides its denominator.
pub fn reduce(r: &Rat, p: u64) -> Option<u64> {
    let den = reduce_int(r.denom(), p);
    (den != 0).then(|| mul(reduce_int(r.numer(), p), inv(den, p), p))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Coefficients in `y` of `f(a, y)` modulo `p`.
fn eval_x(f: &[(u32, u32, u64)], a: u64, p: u64, deg_y: usize) -> Vec<u64> {
    let mut out = vec![0; deg_y + 1];
    for &(i, j, c) in f {
        out[j as usize] = add(out[j as usize], mul(c, pow(a, u64::from(i), p), p), p);
    }
    trim(&mut out);
    out
}

/// Resultant over `F_p` of two nonzero univariate polynomials.
fn resultant_field(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> u64 {
    let mut acc = 1 % p;
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return mul(acc, pow(b[0], m as u64, p), p);
        }
        let lb_inv = inv(b[n], p);
        let mut r = a.clone();
        while r.len() > n {
            let dr = r.len() - 1;
            let factor = mul(r[dr], lb_inv, p);
            for (k, &c) in b.iter().enumerate() {
                let idx = dr - n + k;
                r[idx] = sub(r[idx], mul(factor, c, p), p);
            }
            trim(&mut r);
        }
        if r.is_empty() {
            return 0;
        }
        let k = r.len() - 1;
        if m % 2 == 1 && n % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = mul(acc, pow(b[n], (m - k) as u64, p), p);
        a = b;
        b = r;
    }
}

/// Coefficients of the polynomial of degree `< xs.len()` through the points,
/// for increasing nonnegative abscissas smaller than `p`.
fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let span = xs.iter().max().copied().unwrap_or(0) as usize;
    let mut inverses = vec![0u64; span + 1];
    if span >= 1 {
        inverses[1] = 1;
    }
    for d in 2..=span {
        let d64 = d as u64;
        inverses[d] = mul(p - p / d64, inverses[(p % d64) as usize], p);
    }
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = sub(dd[i], dd[i - 1], p);
            dd[i] = mul(num, inverses[(xs[i] - xs[i - level]) as usize], p);
        }
    }
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs · (x − xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coeffs[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = add(next[k + 1], coeffs[k], p);
            }
            next[k] = sub(next[k], mul(coeffs[k], xs[i], p), p);
        }
        next[0] = add(next[0], dd[i], p);
        coeffs = next;
    }
    coeffs
}

type Terms = Vec<(u32, u32, u64)>;

fn lift(h: &BPoly, p: u64) -> Option<Terms> {
    h.terms()
        .map(|(&(i, j), c)| reduce(c, p).map(|v| (i, j, v)))
        .collect()
}

/// Terms of `h(x + c·y, y)` modulo `p`.
fn shear_terms(h: &Terms, c: u64, p: u64) -> Terms {
    let top = h.iter().map(|t| t.0 + t.1).max().unwrap_or(0) as usize;
    let mut binom = vec![vec![1u64]];
    for n in 1..=top {
        let prev = &binom[n - 1];
        let mut row = vec![1u64; n + 1];
        for k in 1..n {
            row[k] = add(prev[k - 1], prev[k], p);
        }
        binom.push(row);
    }
    let mut dense = vec![vec![0u64; top + 1]; top + 1];
    for &(a, b, coef) in h {
        let (a, b) = (a as usize, b as usize);
        for k in 0..=a {
            let v = mul(coef, mul(binom[a][k], pow(c, k as u64, p), p), p);
            dense[a - k][b + k] = add(dense[a - k][b + k], v, p);
        }
    }
    let mut out = Vec::new();
    for (i, row) in dense.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                out.push((i as u32, j as u32, v));
            }
        }
    }
    out
}

/// `x`-order of the resultant of two term lists over `F_p`; the degree
/// bound is the product of total degrees.
fn order_of_terms(fr: &Terms, gr: &Terms, p: u64) -> Option<u64> {
    let deg_y = |t: &Terms| t.iter().map(|x| x.1).max().map(|d| d as usize);
    let total = |t: &Terms| t.iter().map(|x| x.0 + x.1).max().map(|d| d as usize);
    let (dyf, dyg) = (deg_y(fr)?, deg_y(gr)?);
    let bound = total(fr)? * total(gr)?;
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut a = 0u64;
    while xs.len() <= bound {
        if a > 4 * bound as u64 + 16 {
            return None;
        }
        let fa = eval_x(fr, a, p, dyf);
        let ga = eval_x(gr, a, p, dyg);
        if fa.len() == dyf + 1 && ga.len() == dyg + 1 {
            xs.push(a);
            ys.push(resultant_field(fa, ga, p));
        }
        a += 1;
    }
    let coeffs = interpolate(&xs, &ys, p);
    coeffs.iter().position(|&c| c != 0).map(|k| k as u64)
}

/// `x`-order of `Res_y(f, g)` modulo `p`; `None` when the prime is unusable
/// or the reduced resultant vanishes.
pub fn resultant_order_mod(f: &BPoly, g: &BPoly, p: u64) -> Option<u64> {
    order_of_terms(&lift(f, p)?, &lift(g, p)?, p)
}

/// `x`-order of `Res_y(f, g)` as the minimum over [`PRIMES`]; `None` when
/// the resultant vanishes modulo every prime.
pub fn resultant_order(f: &BPoly, g: &BPoly) -> Option<u64> {
    PRIMES
        .iter()
        .filter_map(|&p| resultant_order_mod(f, g, p))
        .min()
}

/// [`resultant_order`] of `f(x + c·y, y)` and `g(x + c·y, y)`, with the
/// substitution carried out modulo each prime. A prime is used only when both
/// sheared polynomials keep their full degree in `y`.
pub fn sheared_resultant_order(f: &BPoly, g: &BPoly, c: &Rat) -> Option<u64> {
    PRIMES
        .iter()
        .filter_map(|&p| {
            let c = reduce(c, p)?;
            let fr = shear_terms(&lift(f, p)?, c, p);
            let gr = shear_terms(&lift(g, p)?, c, p);
            let full = |t: &Terms, h: &BPoly| t.iter().map(|x| x.1).max() == h.total_degree();
            if !full(&fr, f) || !full(&gr, g) {
                return None;
            }
            order_of_terms(&fr, &gr, p)
        })
        .min()
}
