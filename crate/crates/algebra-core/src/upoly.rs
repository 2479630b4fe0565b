//! Dense univariate polynomials over [`Rat`].
//!
//! A [`UPoly`] stores coefficients in ascending degree order with no trailing
//! zeros, so the zero polynomial is the empty vector. Besides ring operations
//! this module provides Euclidean division, gcd, Yun's squarefree part and an
//! exact rational-root finder.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Univariate polynomial `c_0 + c_1 X + ... + c_n X^n` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from small integer coefficients in ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rat) -> Self {
        UPoly::new(vec![c])
    }

    /// The constant one.
    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    /// The monomial `c X^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    /// The linear polynomial `X - r`.
    pub fn linear_root(r: &Rat) -> Self {
        UPoly::new(vec![-r, Rat::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Coefficients in ascending degree order.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants and for zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Order at zero: smallest `k` with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rat::from(k as i64))
                .collect(),
        )
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Returns the monic associate (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &UPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &UPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &UPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    ///
    /// # Panics
    ///
    /// Panics when `d` is zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc_inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                let t = &c * b;
                r[k + j] -= &t;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Exact quotient when `d` divides `self`, otherwise `None`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Squarefree part (product of the distinct irreducible factors), monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return UPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun squarefree decomposition: returns `(factor, multiplicity)` pairs of
    /// monic, pairwise coprime, squarefree nonconstant factors.
    pub fn squarefree_decompose(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let c = f.gcd(&fp);
        let mut w = f.div_exact(&c).expect("gcd divides");
        let mut y = fp.div_exact(&c).expect("gcd divides");
        let mut z = y.sub(&w.derivative());
        let mut i = 1;
        while !w.is_constant() {
            let a = w.gcd(&z);
            w = w.div_exact(&a).expect("gcd divides");
            y = z.div_exact(&a).expect("gcd divides");
            z = y.sub(&w.derivative());
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().expect("nonzero").is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in ints.iter_mut() {
            *c = &*c / &g * &sign;
        }
        ints
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_univariate(self, "X", f)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `u` in the polynomial grammar using `var` as variable name.
pub fn fmt_univariate(u: &UPoly, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if u.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in u.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_changes(chain: &[UPoly], x: &Rat) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for p in chain {
        let s = p.eval(x).signum();
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Simplest fraction (smallest denominator) in the open interval `(lo, hi)`.
/// `hi = None` stands for `+infinity`.
fn simplest_between(lo: &Rat, hi: Option<&Rat>) -> Rat {
    let n = lo.floor();
    let next = Rat::from_int(&n + BigInt::one());
    match hi {
        None => next,
        Some(h) if &next < h => next,
        Some(h) => {
            let base = Rat::from_int(n);
            let lo_frac = lo - &base;
            let hi_frac = h - &base;
            let inner_lo = hi_frac.recip();
            let inner = if lo_frac.is_zero() {
                simplest_between(&inner_lo, None)
            } else {
                let inner_hi = lo_frac.recip();
                simplest_between(&inner_lo, Some(&inner_hi))
            };
            &base + &inner.recip()
        }
    }
}

/// Finds every rational root of `u` with its multiplicity.
///
/// Returns roots in ascending order and the residual factor that carries the
/// remaining (irrational or complex) roots, so that `u` equals the residual
/// times the product of `(X - r)^m` up to a nonzero constant.
///
/// Candidate roots are located by Sturm-sequence isolation of the real roots
/// of the squarefree part. For a primitive integer polynomial with leading
/// coefficient `a`, two distinct rationals with denominators dividing `a` are
/// at least `1/a^2` apart, so each isolating interval is shrunk below that
/// width and its simplest fraction is tested exactly. This finds the same
/// roots as enumerating divisors of the extreme coefficients, without having
/// to factor those integers.
///
/// # Panics
///
/// Panics on the zero polynomial.
pub fn rational_roots(u: &UPoly) -> (Vec<(Rat, u32)>, UPoly) {
    assert!(!u.is_zero(), "rational_roots of the zero polynomial");
    let mut found: Vec<Rat> = Vec::new();
    let sqf = u.squarefree_part();
    if !sqf.is_constant() {
        let ints = sqf.primitive_integer();
        let lead = ints.last().expect("nonconstant").abs();
        let sqf_int = UPoly::new(ints.iter().map(|c| Rat::from_int(c.clone())).collect());
        let chain = sturm_chain(&sqf_int);
        // Cauchy bound on the absolute value of every root.
        let bound = sqf_int
            .coeffs()
            .iter()
            .map(|c| (c / &Rat::from_int(lead.clone())).abs())
            .fold(Rat::zero(), |a, b| if b > a { b } else { a });
        let bound = &bound + &Rat::one();
        let min_width = Rat::new(BigInt::one(), &lead * &lead * BigInt::from(2));
        let mut stack = vec![(-&bound, bound.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
            if count == 0 {
                continue;
            }
            if sqf_int.eval(&hi).is_zero() {
                found.push(hi.clone());
            }
            if count == 1 && &hi - &lo < min_width {
                let cand = simplest_between(&lo, Some(&hi));
                if sqf_int.eval(&cand).is_zero() {
                    found.push(cand);
                }
                continue;
            }
            let mid = &(&lo + &hi) / &Rat::from(2);
            let left_hi = mid.clone();
            // The right endpoint of each piece is tested directly above, so
            // a root at `mid` is recorded when the left half is processed.
            stack.push((lo, left_hi));
            stack.push((mid, hi));
        }
    }
    found.sort();
    found.dedup();
    let mut residual = u.clone();
    let mut roots = Vec::new();
    for r in found {
        let lin = UPoly::linear_root(&r);
        let mut m = 0;
        while let Some(q) = residual.div_exact(&lin) {
            residual = q;
            m += 1;
        }
        debug_assert!(m > 0);
        roots.push((r, m));
    }
    (roots, residual)
}
