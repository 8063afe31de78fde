//! Projective and local representations of a foliation and the conversions
//! between them.
//!
//! A projective foliation is a homogeneous 1-form `A dx + B dy + C dz` with
//! `xA + yB + zC = 0` and coprime coefficients; it is normalized so equality
//! up to a nonzero rational scalar becomes structural equality. A local
//! foliation is a germ `a dy + b dz` in an affine chart.

use crate::error::Error;
use crate::gcd::poly_gcd;
use crate::parser::{format_form, format_field};
use crate::poly::{MultiPoly, Rational, Var};
use crate::Result;
use num_traits::{Signed, Zero};
use std::fmt;

/// Affine charts of the projective plane. Local coordinates are always
/// written `(y, z)`; the chart records which projective pair they name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Chart {
    /// x = 1, local (y, z) = (y/x, z/x)
    X1,
    /// y = 1, local (y, z) = (x/y, z/y)
    Y1,
    /// z = 1, local (y, z) = (x/z, y/z)
    Z1,
    /// coordinates produced by blow-ups or other substitutions
    Custom,
}

impl Chart {
    pub fn label(self) -> &'static str {
        match self {
            Chart::X1 => "x=1",
            Chart::Y1 => "y=1",
            Chart::Z1 => "z=1",
            Chart::Custom => "custom",
        }
    }

    /// Projective coordinates of a local point.
    pub fn embed(self, p: &(Rational, Rational)) -> Option<[Rational; 3]> {
        let one = || Rational::from(num_bigint::BigInt::from(1));
        match self {
            Chart::X1 => Some([one(), p.0.clone(), p.1.clone()]),
            Chart::Y1 => Some([p.0.clone(), one(), p.1.clone()]),
            Chart::Z1 => Some([p.0.clone(), p.1.clone(), one()]),
            Chart::Custom => None,
        }
    }
}

/// A foliation of CP2 as a normalized homogeneous 1-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjFoliation {
    a: MultiPoly,
    b: MultiPoly,
    c: MultiPoly,
    degree: usize,
}

impl ProjFoliation {
    /// Validate, clear the common factor, and normalize the scalar.
    pub fn new(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Result<ProjFoliation> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::DegenerateField);
        }
        let mut deg = None;
        for p in [&a, &b, &c] {
            if p.is_zero() {
                continue;
            }
            match (deg, p.is_homogeneous()) {
                (_, None) => {
                    return Err(Error::DegreeMismatch(
                        "1-form coefficients must be homogeneous".into(),
                    ))
                }
                (None, Some(d)) => deg = Some(d),
                (Some(d0), Some(d)) if d0 == d => {}
                _ => {
                    return Err(Error::DegreeMismatch(
                        "1-form coefficients must share one degree".into(),
                    ))
                }
            }
        }
        let euler = &(&(&MultiPoly::var(Var::X) * &a) + &(&MultiPoly::var(Var::Y) * &b))
            + &(&MultiPoly::var(Var::Z) * &c);
        if !euler.is_zero() {
            return Err(Error::DegreeMismatch(
                "Euler relation xA + yB + zC = 0 fails".into(),
            ));
        }
        let g = poly_gcd(&poly_gcd(&a, &b), &c);
        let (mut a, mut b, mut c) = if g.is_constant() {
            (a, b, c)
        } else {
            (
                a.div_exact(&g).expect("gcd divides"),
                b.div_exact(&g).expect("gcd divides"),
                c.div_exact(&g).expect("gcd divides"),
            )
        };
        // joint scalar normalization: integer coprime coefficients, leading
        // coefficient (of the first nonzero component) positive
        let joint = &(&a + &b.mul_monomial(&pad_marker(1))) + &c.mul_monomial(&pad_marker(2));
        let mut content = joint.rational_content();
        let lead = [&a, &b, &c]
            .iter()
            .find(|p| !p.is_zero())
            .and_then(|p| p.leading().map(|(_, c)| c.clone()))
            .expect("nonzero component exists");
        if lead.is_negative() {
            content = -content;
        }
        a = a.div_scalar(&content);
        b = b.div_scalar(&content);
        c = c.div_scalar(&content);
        let delta = [&a, &b, &c]
            .iter()
            .find_map(|p| p.is_homogeneous().filter(|_| !p.is_zero()))
            .expect("nonzero");
        if delta == 0 {
            return Err(Error::DegenerateField);
        }
        Ok(ProjFoliation {
            a,
            b,
            c,
            degree: delta - 1,
        })
    }

    pub fn coeff_dx(&self) -> &MultiPoly {
        &self.a
    }
    pub fn coeff_dy(&self) -> &MultiPoly {
        &self.b
    }
    pub fn coeff_dz(&self) -> &MultiPoly {
        &self.c
    }

    /// Number of tangencies with a generic line.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> [&MultiPoly; 3] {
        [&self.a, &self.b, &self.c]
    }
}

/// `t^k` in a spare variable, used to pack three polynomials into one for
/// joint content computation.
fn pad_marker(k: u16) -> crate::poly::Monomial {
    let mut m = crate::poly::Monomial::one();
    m.0[Var::T.index()] = k;
    m
}

impl fmt::Display for ProjFoliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut coeffs: Vec<MultiPoly> = vec![MultiPoly::zero(); crate::poly::NVARS];
        coeffs[Var::X.index()] = self.a.clone();
        coeffs[Var::Y.index()] = self.b.clone();
        coeffs[Var::Z.index()] = self.c.clone();
        f.write_str(&format_form(&coeffs))
    }
}

/// A foliation presented by a homogeneous polynomial vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldRep {
    pub p: MultiPoly,
    pub q: MultiPoly,
    pub r: MultiPoly,
    degree: usize,
}

impl VectorFieldRep {
    pub fn new(p: MultiPoly, q: MultiPoly, r: MultiPoly) -> Result<VectorFieldRep> {
        let mut deg = None;
        for f in [&p, &q, &r] {
            if f.is_zero() {
                continue;
            }
            match (deg, f.is_homogeneous()) {
                (_, None) => {
                    return Err(Error::DegreeMismatch(
                        "vector field components must be homogeneous".into(),
                    ))
                }
                (None, Some(d)) => deg = Some(d),
                (Some(d0), Some(d)) if d0 == d => {}
                _ => {
                    return Err(Error::DegreeMismatch(
                        "vector field components must share one degree".into(),
                    ))
                }
            }
        }
        match deg {
            None => Err(Error::DegenerateField),
            Some(d) => Ok(VectorFieldRep { p, q, r, degree: d }),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Display for VectorFieldRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut coeffs: Vec<MultiPoly> = vec![MultiPoly::zero(); crate::poly::NVARS];
        coeffs[Var::X.index()] = self.p.clone();
        coeffs[Var::Y.index()] = self.q.clone();
        coeffs[Var::Z.index()] = self.r.clone();
        f.write_str(&format_field(&coeffs))
    }
}

/// The 1-form of a vector field: the 3x3 determinant with rows
/// `(dx,dy,dz)`, `(x,y,z)`, `(P,Q,R)`, with the common factor cleared.
pub fn from_vector_field(v: &VectorFieldRep) -> Result<ProjFoliation> {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let z = MultiPoly::var(Var::Z);
    let a = &(&y * &v.r) - &(&z * &v.q);
    let b = &(&z * &v.p) - &(&x * &v.r);
    let c = &(&x * &v.q) - &(&y * &v.p);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::DegenerateField);
    }
    ProjFoliation::new(a, b, c)
}

/// `X + G * R` with `R` the radial field: the same foliation, different
/// representative.
pub fn radial_equivalent(v: &VectorFieldRep, g: &MultiPoly) -> Result<VectorFieldRep> {
    if !g.is_zero() {
        match g.is_homogeneous() {
            Some(d) if d + 1 == v.degree() => {}
            _ => {
                return Err(Error::DegreeMismatch(format!(
                    "radial multiplier must be homogeneous of degree {}",
                    v.degree().saturating_sub(1)
                )))
            }
        }
    }
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let z = MultiPoly::var(Var::Z);
    VectorFieldRep::new(
        &v.p + &(g * &x),
        &v.q + &(g * &y),
        &v.r + &(g * &z),
    )
}

/// A foliation germ `a dy + b dz` in an affine chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFoliation {
    pub chart: Chart,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub base_point: (Rational, Rational),
}

impl LocalFoliation {
    pub fn new(chart: Chart, a: MultiPoly, b: MultiPoly) -> Result<LocalFoliation> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateField);
        }
        for p in [&a, &b] {
            for v in p.support() {
                if v != Var::Y && v != Var::Z {
                    return Err(Error::ParseError(format!(
                        "local 1-form must use variables y,z only; found {v}"
                    )));
                }
            }
        }
        if !poly_gcd(&a, &b).is_constant() {
            return Err(Error::NonIsolatedSingularity);
        }
        Ok(LocalFoliation {
            chart,
            a,
            b,
            base_point: (Rational::zero(), Rational::zero()),
        })
    }

    /// Like `new`, but clears a common factor instead of failing.
    pub fn new_cleared(chart: Chart, a: MultiPoly, b: MultiPoly) -> Result<LocalFoliation> {
        let g = poly_gcd(&a, &b);
        if g.is_zero() {
            return Err(Error::DegenerateField);
        }
        if g.is_constant() {
            LocalFoliation::new(chart, a, b)
        } else {
            LocalFoliation::new(
                chart,
                a.div_exact(&g).expect("gcd divides"),
                b.div_exact(&g).expect("gcd divides"),
            )
        }
    }

    pub fn with_base_point(mut self, p: (Rational, Rational)) -> LocalFoliation {
        self.base_point = p;
        self
    }

    pub fn base_is_origin(&self) -> bool {
        self.base_point.0.is_zero() && self.base_point.1.is_zero()
    }

    /// Move the base point to the origin by translating coordinates.
    pub fn translated_to_origin(&self) -> LocalFoliation {
        if self.base_is_origin() {
            return self.clone();
        }
        LocalFoliation {
            chart: Chart::Custom,
            a: self.a.shift(Var::Y, &self.base_point.0).shift(Var::Z, &self.base_point.1),
            b: self.b.shift(Var::Y, &self.base_point.0).shift(Var::Z, &self.base_point.1),
            base_point: (Rational::zero(), Rational::zero()),
        }
    }

    /// Exchange the roles of y and z (and of dy and dz).
    pub fn swapped(&self) -> LocalFoliation {
        LocalFoliation {
            chart: Chart::Custom,
            a: self.b.swap_vars(Var::Y, Var::Z),
            b: self.a.swap_vars(Var::Y, Var::Z),
            base_point: (self.base_point.1.clone(), self.base_point.0.clone()),
        }
    }

    /// Is the origin a singular point?
    pub fn singular_at_origin(&self) -> bool {
        self.a.constant_term().is_zero() && self.b.constant_term().is_zero()
    }

    /// min(ord a, ord b) at the base point.
    pub fn multiplicity(&self) -> usize {
        let t = self.translated_to_origin();
        let oa = t.a.order_at_origin().unwrap_or(usize::MAX);
        let ob = t.b.order_at_origin().unwrap_or(usize::MAX);
        oa.min(ob)
    }

    /// Trace and determinant of the linear part of the dual vector field
    /// `b d/dy - a d/dz` at the base point.
    pub fn linear_part(&self) -> (Rational, Rational) {
        let t = self.translated_to_origin();
        let at = |p: &MultiPoly, v: Var| {
            p.derivative(v).constant_term()
        };
        let j11 = at(&t.b, Var::Y);
        let j12 = at(&t.b, Var::Z);
        let j21 = -at(&t.a, Var::Y);
        let j22 = -at(&t.a, Var::Z);
        let tr = &j11 + &j22;
        let det = &(&j11 * &j22) - &(&j12 * &j21);
        (tr, det)
    }

    /// Kernel direction `(vy, vz)` of the linear part, when the determinant
    /// vanishes but the linear part is nonzero.
    pub fn kernel_direction(&self) -> Option<(Rational, Rational)> {
        let t = self.translated_to_origin();
        let at = |p: &MultiPoly, v: Var| p.derivative(v).constant_term();
        let j11 = at(&t.b, Var::Y);
        let j12 = at(&t.b, Var::Z);
        let j21 = -at(&t.a, Var::Y);
        let j22 = -at(&t.a, Var::Z);
        // solve J v = 0
        if !j11.is_zero() || !j12.is_zero() {
            Some((j12.clone(), -j11.clone()))
        } else if !j21.is_zero() || !j22.is_zero() {
            Some((j22.clone(), -j21.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for LocalFoliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut coeffs: Vec<MultiPoly> = vec![MultiPoly::zero(); crate::poly::NVARS];
        coeffs[Var::Y.index()] = self.a.clone();
        coeffs[Var::Z.index()] = self.b.clone();
        f.write_str(&format_form(&coeffs))
    }
}

/// Restrict a projective foliation to an affine chart, clearing common
/// factors. Local coordinates are `(y, z)` in the chart's convention.
pub fn restrict_to_chart(f: &ProjFoliation, chart: Chart) -> LocalFoliation {
    let one = MultiPoly::one();
    let (a, b) = match chart {
        Chart::X1 => (
            f.b.substitute(&[(Var::X, one.clone())]),
            f.c.substitute(&[(Var::X, one)]),
        ),
        Chart::Y1 => {
            let sa = f.a.substitute(&[(Var::Y, one.clone())]);
            let sc = f.c.substitute(&[(Var::Y, one)]);
            (
                sa.substitute(&[(Var::X, MultiPoly::var(Var::Y))]),
                sc.substitute(&[(Var::X, MultiPoly::var(Var::Y))]),
            )
        }
        Chart::Z1 => {
            let sa = f.a.substitute(&[(Var::Z, one.clone())]);
            let sb = f.b.substitute(&[(Var::Z, one)]);
            let ren = [
                (Var::X, MultiPoly::var(Var::Y)),
                (Var::Y, MultiPoly::var(Var::Z)),
            ];
            (sa.substitute(&ren), sb.substitute(&ren))
        }
        Chart::Custom => panic!("cannot restrict to an unspecified chart"),
    };
    LocalFoliation::new_cleared(chart, a, b).expect("a valid foliation restricts to a valid germ")
}

/// Wedge-divisibility test: is the homogeneous curve `f = 0` invariant?
pub fn is_invariant(fol: &ProjFoliation, f: &MultiPoly) -> bool {
    assert!(!f.is_zero(), "invariance of the zero polynomial");
    assert!(f.is_homogeneous().is_some(), "curve equation must be homogeneous");
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);
    let fz = f.derivative(Var::Z);
    let (a, b, c) = (&fol.a, &fol.b, &fol.c);
    let w_xy = &(a * &fy) - &(b * &fx);
    let w_yz = &(b * &fz) - &(c * &fy);
    let w_zx = &(c * &fx) - &(a * &fz);
    w_xy.divisible_by(f) && w_yz.divisible_by(f) && w_zx.divisible_by(f)
}

/// Invariance of an affine curve `f(y,z) = 0` for a local germ.
pub fn is_invariant_local(l: &LocalFoliation, f: &MultiPoly) -> bool {
    assert!(!f.is_zero());
    let w = &(&l.a * &f.derivative(Var::Z)) - &(&l.b * &f.derivative(Var::Y));
    w.divisible_by(f)
}

/// Degree of the tangency divisor of `fol` with a non-invariant line.
pub fn degree_via_tangency(fol: &ProjFoliation, line: &MultiPoly) -> Result<usize> {
    if line.is_homogeneous() != Some(1) {
        return Err(Error::DegreeMismatch("tangency line must have degree 1".into()));
    }
    let al = line.coeff(&crate::poly::Monomial::var(Var::X));
    let be = line.coeff(&crate::poly::Monomial::var(Var::Y));
    let ga = line.coeff(&crate::poly::Monomial::var(Var::Z));
    let zero = Rational::zero();
    // two independent points spanning the line
    let (p0, p1): ([Rational; 3], [Rational; 3]) = if !ga.is_zero() {
        (
            [ga.clone(), zero.clone(), -al.clone()],
            [zero.clone(), ga.clone(), -be.clone()],
        )
    } else if !be.is_zero() {
        (
            [be.clone(), -al.clone(), zero.clone()],
            [zero.clone(), zero.clone(), Rational::from(num_bigint::BigInt::from(1))],
        )
    } else {
        (
            [zero.clone(), Rational::from(num_bigint::BigInt::from(1)), zero.clone()],
            [zero.clone(), zero.clone(), Rational::from(num_bigint::BigInt::from(1))],
        )
    };
    // parametrize: (x,y,z) = p0*s + p1*t with (s,t) = (T,U)
    let s = MultiPoly::var(Var::T);
    let t = MultiPoly::var(Var::U);
    let comp = |i: usize| &s.mul_scalar(&p0[i]) + &t.mul_scalar(&p1[i]);
    let subs = [
        (Var::X, comp(0)),
        (Var::Y, comp(1)),
        (Var::Z, comp(2)),
    ];
    // ds-coefficient of the pullback
    let mut alpha = MultiPoly::zero();
    for (i, coeff) in fol.coeffs().iter().enumerate() {
        if !p0[i].is_zero() {
            alpha = &alpha + &coeff.substitute(&subs).mul_scalar(&p0[i]);
        }
    }
    if alpha.is_zero() {
        return Err(Error::InvariantLine);
    }
    let h = alpha
        .div_exact(&t)
        .expect("Euler relation forces divisibility of the ds-coefficient by t");
    Ok(h.total_degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_form, parse_poly};
    use crate::poly::rat_int;

    pub fn proj_from_str(s: &str) -> ProjFoliation {
        let c = parse_form(s).unwrap();
        ProjFoliation::new(
            c[Var::X.index()].clone(),
            c[Var::Y.index()].clone(),
            c[Var::Z.index()].clone(),
        )
        .unwrap()
    }

    fn euler_projectivization() -> ProjFoliation {
        proj_from_str("-(y^2*z + x*y*(z - y))*dx + x^2*(z - y)*dy + x*y^2*dz")
    }

    #[test]
    fn vector_field_to_form() {
        // y d/dx gives z dy - y dz after clearing the common factor y
        let v = VectorFieldRep::new(
            MultiPoly::var(Var::Y),
            MultiPoly::zero(),
            MultiPoly::zero(),
        )
        .unwrap();
        let f = from_vector_field(&v).unwrap();
        let expect = proj_from_str("z*dy - y*dz");
        assert_eq!(f, expect);
    }

    #[test]
    fn radial_field_is_degenerate() {
        let v = VectorFieldRep::new(
            MultiPoly::var(Var::X),
            MultiPoly::var(Var::Y),
            MultiPoly::var(Var::Z),
        )
        .unwrap();
        assert_eq!(from_vector_field(&v), Err(Error::DegenerateField));
    }

    #[test]
    fn radial_equivalent_same_foliation() {
        // y d/dx with G = 1 (d = 1): (y+x) d/dx + y d/dy + z d/dz
        let v = VectorFieldRep::new(
            MultiPoly::var(Var::Y),
            MultiPoly::zero(),
            MultiPoly::zero(),
        )
        .unwrap();
        let w = radial_equivalent(&v, &MultiPoly::one()).unwrap();
        assert_eq!(from_vector_field(&v).unwrap(), from_vector_field(&w).unwrap());
        let id = radial_equivalent(&v, &MultiPoly::zero()).unwrap();
        assert_eq!(id, v);
    }

    #[test]
    fn restriction_to_charts() {
        let f = euler_projectivization();
        let l = restrict_to_chart(&f, Chart::X1);
        assert_eq!(l.a, parse_poly("z - y").unwrap());
        assert_eq!(l.b, parse_poly("y^2").unwrap());

        // z dy - y dz in chart y=1 is a regular point: the form is -dz
        let g = proj_from_str("z*dy - y*dz");
        let l = restrict_to_chart(&g, Chart::Y1);
        assert!(l.a.is_zero());
        assert_eq!(l.b, MultiPoly::constant(rat_int(-1)));
    }

    #[test]
    fn invariance_of_lines() {
        let f = euler_projectivization();
        assert!(is_invariant(&f, &MultiPoly::var(Var::Y)));
        assert!(is_invariant(&f, &MultiPoly::var(Var::X)));
        let g = proj_from_str("z*dy - y*dz");
        let l = parse_poly("x + y + z").unwrap();
        assert!(!is_invariant(&g, &l));
    }

    #[test]
    fn tangency_degree() {
        let f = euler_projectivization();
        let line = parse_poly("x + 2*y + 3*z").unwrap();
        assert_eq!(degree_via_tangency(&f, &line).unwrap(), 2);
        // invariant line errors
        assert_eq!(
            degree_via_tangency(&f, &MultiPoly::var(Var::Y)),
            Err(Error::InvariantLine)
        );
    }

    #[test]
    fn normalization_makes_scalar_equality_structural() {
        let f = proj_from_str("z*dy - y*dz");
        let g = proj_from_str("-2*z*dy + 2*y*dz");
        assert_eq!(f, g);
    }

    #[test]
    fn local_linear_part() {
        // dual field of (y+z^2) dy - z^13 dz has nilpotent linear part
        let a = parse_poly("y + z^2").unwrap();
        let b = parse_poly("-z^13").unwrap();
        let l = LocalFoliation::new(Chart::Custom, a, b).unwrap();
        let (tr, det) = l.linear_part();
        assert!(tr.is_zero() && det.is_zero());
        assert_eq!(l.multiplicity(), 1);
        assert!(l.singular_at_origin());
    }
}
