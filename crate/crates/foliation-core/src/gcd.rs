//! Polynomial gcd and resultants via subresultant pseudo-remainder sequences,
//! with content/primitive-part recursion over the coefficient ring.
//!
//! Sign convention for `resultant`: the Sylvester-matrix determinant with
//! `f`'s coefficient rows on top.

use crate::poly::{MultiPoly, Var, ALL_VARS};
 

/// Univariate view: coefficient polynomials, lowest power first, trimmed.
fn univ(f: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let mut c = f.as_univariate(v);
    while c.last().map_or(false, |p| p.is_zero()) {
        c.pop();
    }
    c
}

fn deg(a: &[MultiPoly]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn trim(a: &mut Vec<MultiPoly>) {
    while a.last().map_or(false, |p| p.is_zero()) {
        a.pop();
    }
}

fn scale(a: &[MultiPoly], c: &MultiPoly) -> Vec<MultiPoly> {
    a.iter().map(|p| p * c).collect()
}

fn div_coeffs(a: &[MultiPoly], c: &MultiPoly) -> Vec<MultiPoly> {
    a.iter()
        .map(|p| {
            p.div_exact(c)
                .expect("subresultant recurrence: division must be exact")
        })
        .collect()
}

/// Pseudo-remainder of `a` by `b` (both univariate views, `b` nonzero):
/// `lc(b)^(deg a - deg b + 1) * a = q*b + r` with `deg r < deg b`.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let da = deg(a).expect("prem: zero dividend handled by caller");
    let db = deg(b).expect("prem: zero divisor");
    debug_assert!(da >= db);
    let lb = b.last().unwrap();
    let mut r = scale(a, &lb.pow(da - db + 1));
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let q = r
            .last()
            .unwrap()
            .div_exact(lb)
            .expect("pseudo-division step must divide exactly");
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let delta = &q * bc;
            r[i + shift] = &r[i + shift] - &delta;
        }
        trim(&mut r);
    }
    r
}

/// Content of `f` with respect to `v`: gcd of its coefficient polynomials,
/// normalized primitive. For `f` not involving `v` this is `pp(f)` itself.
fn content_in(f: &MultiPoly, v: Var) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for c in univ(f, v) {
        acc = poly_gcd(&acc, &c);
        if acc.is_constant() && !acc.is_zero() {
            return MultiPoly::one();
        }
    }
    acc
}

/// Greatest common divisor, primitive with positive leading rational.
/// `gcd(f, 0)` is the normalized primitive part of `f`; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.normalized_primitive();
    }
    if g.is_zero() {
        return f.normalized_primitive();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    // main variable: the canonically largest one occurring
    let v = ALL_VARS
        .iter()
        .rev()
        .copied()
        .find(|v| f.degree_in(*v).unwrap_or(0) > 0 || g.degree_in(*v).unwrap_or(0) > 0)
        .expect("non-constant polynomials have a variable");
    let (df, dg) = (f.degree_in(v).unwrap_or(0), g.degree_in(v).unwrap_or(0));
    if df == 0 {
        return poly_gcd(f, &content_in(g, v));
    }
    if dg == 0 {
        return poly_gcd(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = poly_gcd(&cf, &cg);
    let mut a = div_coeffs(&univ(f, v), &cf);
    let mut b = div_coeffs(&univ(g, v), &cg);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut gg = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let da = deg(&a).unwrap();
        let db = deg(&b).unwrap();
        let delta = da - db;
        let r = prem(&a, &b);
        if r.is_empty() {
            let pp = MultiPoly::from_univariate(&b, v);
            let pc = content_in(&pp, v);
            let prim = pp
                .div_exact(&pc)
                .expect("content divides")
                .normalized_primitive();
            return (&c * &prim).normalized_primitive();
        }
        if deg(&r) == Some(0) {
            return c.normalized_primitive();
        }
        a = b;
        let divisor = &gg * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        gg = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
    }
}

/// Resultant of `f` and `g` eliminating `v`, by the subresultant PRS.
/// Equals the Sylvester determinant with `f`'s coefficients in the top rows.
/// Zero exactly when `f` and `g` share a factor of positive degree in `v`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    let mut a = univ(f, v);
    let mut b = univ(g, v);
    let (da, db) = (deg(&a).unwrap(), deg(&b).unwrap());
    if da == 0 && db == 0 {
        return MultiPoly::one();
    }
    if da == 0 {
        return a[0].pow(db);
    }
    if db == 0 {
        return b[0].pow(da);
    }
    let mut sign_neg = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
    }
    let mut gg = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let da = deg(&a).unwrap();
        let db = deg(&b).unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return MultiPoly::zero();
        }
        a = b;
        let divisor = &gg * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        gg = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
        if deg(&b) == Some(0) {
            let da = deg(&a).unwrap();
            let res = if da == 1 {
                b[0].clone()
            } else {
                b[0].pow(da)
                    .div_exact(&h.pow(da - 1))
                    .expect("final subresultant division is exact")
            };
            return if sign_neg { -&res } else { res };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat_int, Rational};
    use num_traits::One;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(Var::Z)
    }

    #[test]
    fn gcd_of_factored_inputs() {
        // gcd(y*z*(y+z), y*z^2) = y*z
        let f = &(&y() * &z()) * &(&y() + &z());
        let g = &y() * &(&z() * &z());
        assert_eq!(poly_gcd(&f, &g), &y() * &z());
    }

    #[test]
    fn gcd_with_zero_is_primitive_part() {
        let f = (&x() + &y()).mul_scalar(&crate::poly::rat(6, 4));
        assert_eq!(poly_gcd(&f, &MultiPoly::zero()), &x() + &y());
        assert_eq!(poly_gcd(&MultiPoly::zero(), &MultiPoly::zero()), MultiPoly::zero());
    }

    #[test]
    fn gcd_coprime() {
        let f = &x() + &y();
        let g = &x() + &z();
        assert_eq!(poly_gcd(&f, &g), MultiPoly::one());
    }

    #[test]
    fn resultant_sylvester_sign() {
        // res_y(y^2 - z, y) = -z
        let f = &(&y() * &y()) - &z();
        let g = y();
        assert_eq!(resultant(&f, &g, Var::Y), -&z());
        // res_y(y - z, y + z) = 2z
        let f = &y() - &z();
        let g = &y() + &z();
        assert_eq!(resultant(&f, &g, Var::Y), z().mul_scalar(&rat_int(2)));
    }

    #[test]
    fn resultant_common_factor_is_zero() {
        let f = &(&y() - &z()) * &(&y() + &x());
        assert_eq!(resultant(&f, &f, Var::Y), MultiPoly::zero());
        let g = &(&y() - &z()) * &(&y() + &(&x() * &x()));
        assert_eq!(resultant(&f, &g, Var::Y), MultiPoly::zero());
    }

    #[test]
    fn resultant_constant_cases() {
        let c = MultiPoly::constant(rat_int(3));
        let g = &(&y() * &y()) + &MultiPoly::one();
        assert_eq!(resultant(&c, &g, Var::Y), MultiPoly::constant(rat_int(9)));
        assert_eq!(resultant(&g, &c, Var::Y), MultiPoly::constant(rat_int(9)));
        assert_eq!(
            resultant(&c, &c, Var::Y),
            MultiPoly::constant(Rational::one())
        );
    }

    #[test]
    fn resultant_matches_sylvester_3x3() {
        // res_y(a*y^2 + b, c*y + d) with symbolic-ish rational entries:
        // Sylvester [[a,0,b],[c,d,0],[0,c,d]] has det a*d^2 + b*c^2.
        let a = rat_int(2);
        let b = rat_int(5);
        let c = rat_int(3);
        let d = rat_int(7);
        let f = &(&y() * &y()).mul_scalar(&a) + &MultiPoly::constant(b.clone());
        let g = &y().mul_scalar(&c) + &MultiPoly::constant(d.clone());
        let expect = &a * &(&d * &d) + &(&b * &(&c * &c));
        assert_eq!(resultant(&f, &g, Var::Y), MultiPoly::constant(expect));
    }
}
