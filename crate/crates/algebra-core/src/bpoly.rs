//! Sparse bivariate polynomials over [`Rat`].
//!
//! A [`BPoly`] maps exponent pairs `(α, β)` (the exponents of `x` and `y`) to
//! nonzero rational coefficients. The key set is exactly the support.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::rat::Rat;
use crate::upoly::UPoly;

/// Exponent pair `(α, β)` of the monomial `x^α y^β`.
pub type Exp = (u32, u32);

/// Sparse polynomial in `x` and `y` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    terms: BTreeMap<Exp, Rat>,
}

impl BPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        BPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant one.
    pub fn one() -> Self {
        BPoly::constant(Rat::one())
    }

    /// The constant `c`.
    pub fn constant(c: Rat) -> Self {
        BPoly::monomial(c, 0, 0)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        BPoly::monomial(Rat::one(), 1, 0)
    }

    /// The variable `y`.
    pub fn y() -> Self {
        BPoly::monomial(Rat::one(), 0, 1)
    }

    /// The monomial `c x^a y^b`.
    pub fn monomial(c: Rat, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BPoly { terms }
    }

    /// Builds a polynomial from `(α, β, coefficient)` triples, adding repeats.
    pub fn from_terms<I: IntoIterator<Item = (Exp, Rat)>>(it: I) -> Self {
        let mut p = BPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// Adds `c x^α y^β` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, e: Exp, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// Iterates terms in increasing lexicographic `(α, β)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms, that is for the zero polynomial.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial is a nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// True when the polynomial has exactly one term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of `x^α y^β`.
    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Support of the polynomial.
    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().copied().collect()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    /// True when the polynomial vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Order at the origin: the minimal `α + β` over the support.
    pub fn order(&self) -> Result<u32, AlgebraError> {
        self.terms
            .keys()
            .map(|&(a, b)| a + b)
            .min()
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    /// Degree in `y` (`None` for zero).
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Degree in `x` (`None` for zero).
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// Total degree (`None` for zero).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// Largest power of `x` dividing the polynomial (zero polynomial gives 0).
    pub fn x_content(&self) -> u32 {
        self.terms.keys().map(|e| e.0).min().unwrap_or(0)
    }

    /// Largest power of `y` dividing the polynomial (zero polynomial gives 0).
    pub fn y_content(&self) -> u32 {
        self.terms.keys().map(|e| e.1).min().unwrap_or(0)
    }

    /// Divides by the monomial `x^a y^b`, which must divide the polynomial.
    ///
    /// # Panics
    ///
    /// Panics if some term is not divisible.
    pub fn div_monomial(&self, a: u32, b: u32) -> BPoly {
        BPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(al, be), c)| {
                    assert!(al >= a && be >= b, "monomial does not divide");
                    ((al - a, be - b), c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^a y^b`.
    pub fn mul_monomial(&self, a: u32, b: u32) -> BPoly {
        BPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(al, be), c)| ((al + a, be + b), c.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rat) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Sum.
    pub fn add(&self, other: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, &-c);
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> BPoly {
        self.scale(&-Rat::one())
    }

    /// Product.
    pub fn mul(&self, other: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> BPoly {
        let mut base = self.clone();
        let mut acc = BPoly::one();
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

    /// Partial derivative with respect to `y`.
    pub fn diff_y(&self) -> BPoly {
        BPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(&(a, b), c)| ((a, b - 1), c * &Rat::from(i64::from(b)))),
        )
    }

    /// Partial derivative with respect to `x`.
    pub fn diff_x(&self) -> BPoly {
        BPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(a, b), c)| ((a - 1, b), c * &Rat::from(i64::from(a)))),
        )
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            acc += &(c * &x.pow(i64::from(a)) * y.pow(i64::from(b)));
        }
        acc
    }

    /// Restriction to the line `x = 0`, as a polynomial in `y`.
    pub fn at_x_zero(&self) -> UPoly {
        let mut v = vec![Rat::zero(); self.deg_y().map_or(0, |d| d as usize + 1)];
        for (&(a, b), c) in &self.terms {
            if a == 0 {
                v[b as usize] = c.clone();
            }
        }
        UPoly::new(v)
    }

    /// Restriction to the line `y = 0`, as a polynomial in `x`.
    pub fn at_y_zero(&self) -> UPoly {
        let mut v = vec![Rat::zero(); self.deg_x().map_or(0, |d| d as usize + 1)];
        for (&(a, b), c) in &self.terms {
            if b == 0 {
                v[a as usize] = c.clone();
            }
        }
        UPoly::new(v)
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_upoly_x(u: &UPoly) -> BPoly {
        BPoly::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c.clone())),
        )
    }

    /// Embeds a univariate polynomial as a polynomial in `y`.
    pub fn from_upoly_y(u: &UPoly) -> BPoly {
        BPoly::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((0, k as u32), c.clone())),
        )
    }

    /// Coefficients in `y` as polynomials in `x`: entry `k` is the coefficient
    /// of `y^k`.
    pub fn to_y_coeffs(&self) -> Vec<UPoly> {
        let n = self.deg_y().map_or(0, |d| d as usize + 1);
        let mut dense: Vec<Vec<Rat>> = vec![Vec::new(); n];
        for (&(a, b), c) in &self.terms {
            let row = &mut dense[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, Rat::zero());
            }
            row[a as usize] = c.clone();
        }
        dense.into_iter().map(UPoly::new).collect()
    }

    /// Inverse of [`BPoly::to_y_coeffs`].
    pub fn from_y_coeffs(cs: &[UPoly]) -> BPoly {
        let mut p = BPoly::zero();
        for (b, u) in cs.iter().enumerate() {
            for (a, c) in u.coeffs().iter().enumerate() {
                p.add_term((a as u32, b as u32), c);
            }
        }
        p
    }

    /// Lexicographically greatest monomial with `x` before `y`.
    pub fn leading_exp(&self) -> Option<Exp> {
        self.terms.keys().next_back().copied()
    }

    /// Scales to integer coefficients with gcd one and positive coefficient on
    /// the lexicographically greatest monomial (`x` before `y`).
    pub fn normalized(&self) -> BPoly {
        let Some(lead) = self.leading_exp() else {
            return BPoly::zero();
        };
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self.terms.values().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&lcm / c.denom())))
        });
        let mut factor = Rat::new(lcm, g);
        if self.terms[&lead].is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact quotient `self / d` in `Q[x, y]`, or `None` when `d` does not divide.
    ///
    /// Uses division by leading terms in the lexicographic order with `y`
    /// before `x`, which terminates with a zero remainder exactly when `d`
    /// divides `self`.
    pub fn div_exact(&self, d: &BPoly) -> Option<BPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let key = |e: &Exp| (e.1, e.0);
        let (&dl, dc) = d.terms.iter().max_by_key(|(e, _)| key(e))?;
        let dc_inv = dc.recip();
        let mut r = self.clone();
        let mut q = BPoly::zero();
        while let Some((&rl, rc)) = r.terms.iter().max_by_key(|(e, _)| key(e)) {
            if rl.0 < dl.0 || rl.1 < dl.1 {
                return None;
            }
            let t = BPoly::monomial(rc * &dc_inv, rl.0 - dl.0, rl.1 - dl.1);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }
}

impl fmt::Display for BPoly {
    /// Prints terms by decreasing `y`-degree, then decreasing `x`-degree, in the
    /// same grammar accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse((e.1, e.0)));
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
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
            let mut parts = Vec::new();
            match e.0 {
                0 => {}
                1 => parts.push("x".to_string()),
                a => parts.push(format!("x^{a}")),
            }
            match e.1 {
                0 => {}
                1 => parts.push("y".to_string()),
                b => parts.push(format!("y^{b}")),
            }
            let mono = parts.join("*");
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
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
