//! Resultants with respect to `y`.
//!
//! The resultant is computed by the subresultant pseudo-remainder sequence
//! over the domain `Q[x]`, which returns exactly the determinant of the
//! Sylvester matrix whose rows list the shifts of `f` above the shifts of `g`.

use crate::bpoly::BPoly;
use crate::error::AlgebraError;
use crate::upoly::UPoly;

type YPoly = Vec<UPoly>;

fn deg(p: &YPoly) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: YPoly = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, c) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&c.mul(&lr));
        }
        while next.last().is_some_and(UPoly::is_zero) {
            next.pop();
        }
        r = next;
        e -= 1;
    }
    let scale = lb.pow(e as u32);
    r.iter().map(|c| c.mul(&scale)).collect()
}

fn exact_div(p: &YPoly, d: &UPoly) -> YPoly {
    p.iter()
        .map(|c| c.div_exact(d).expect("subresultant division is exact"))
        .collect()
}

/// Resultant of `f` and `g` with respect to `y`, as a polynomial in `x`.
///
/// When one argument has `y`-degree zero the resultant is that argument raised
/// to the `y`-degree of the other.
pub fn resultant_y(f: &BPoly, g: &BPoly) -> Result<UPoly, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Ok(UPoly::zero());
    }
    let mut a: YPoly = f.to_y_coeffs();
    let mut b: YPoly = g.to_y_coeffs();
    let (da, db) = (deg(&a), deg(&b));
    match (da, db) {
        (0, 0) => return Err(AlgebraError::BothConstantInY),
        (_, 0) => return Ok(b[0].pow(da as u32)),
        (0, _) => return Ok(a[0].pow(db as u32)),
        _ => {}
    }
    let mut sign = 1i32;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let mut g_ = UPoly::one();
    let mut h = UPoly::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(UPoly::zero());
        }
        b = exact_div(&r, &g_.mul(&h.pow(delta as u32)));
        g_ = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g_.clone(),
            _ => g_
                .pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("exact"),
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let lb = b[0].clone();
    let res = lb.pow(da).div_exact(&h.pow(da - 1)).expect("exact");
    Ok(if sign < 0 { res.neg() } else { res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> BPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            resultant_y(&p("y-x"), &p("y+x")).unwrap(),
            UPoly::from_ints(&[0, 2])
        );
        assert_eq!(
            resultant_y(&p("y^2-x^3"), &p("y")).unwrap(),
            UPoly::from_ints(&[0, 0, 0, -1])
        );
        assert_eq!(resultant_y(&p("y^2-x^3"), &p("1")).unwrap(), UPoly::one());
        assert_eq!(
            resultant_y(&p("x"), &p("2")),
            Err(AlgebraError::BothConstantInY)
        );
    }

    #[test]
    fn common_factor_gives_zero() {
        assert!(resultant_y(&p("(y-x)*(y+1)"), &p("(y-x)*y"))
            .unwrap()
            .is_zero());
    }
}
