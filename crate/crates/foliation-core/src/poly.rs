//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! All polynomials live in the fixed ambient ring Q[x,y,z,t,u,v]; the
//! canonical term order is graded lexicographic with x < y < z < t < u < v.
//! Printing walks terms in descending order so output is stable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient. Always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Make a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Make an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// `sqrt(r)` if `r` is a perfect square in Q, else `None`.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Natural log of `|r|` as a float, safe for rationals far outside f64 range.
pub fn ln_abs(r: &Rational) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        if bits <= 52 {
            return (n.abs().to_string().parse::<f64>()).unwrap_or(1.0).ln();
        }
        // keep the top 52 bits as a mantissa, account for the shift
        let shift = bits - 52;
        let top: BigInt = n.abs() >> shift;
        let mant: f64 = top.to_string().parse().unwrap_or(1.0);
        mant.ln() + (shift as f64) * std::f64::consts::LN_2
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Variable symbols of the ambient ring, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    T,
    U,
    V,
}

pub const NVARS: usize = 6;
pub const ALL_VARS: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::T, Var::U, Var::V];

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
            Var::T => 3,
            Var::U => 4,
            Var::V => 5,
        }
    }

    pub fn from_index(i: usize) -> Var {
        ALL_VARS[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            "t" => Some(Var::T),
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// ties broken by the exponent of the earliest variable in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Monomial {
        let mut e = [0u16; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    /// Component-wise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (printing order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree of a term: the vanishing order at the origin.
    pub fn order_at_origin(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, v: Var) -> Option<usize> {
        self.terms.keys().map(|m| m.exp(v) as usize).max()
    }

    /// Variables actually occurring.
    pub fn support(&self) -> Vec<Var> {
        ALL_VARS
            .iter()
            .copied()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    /// Greatest monomial (graded-lex) and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> Option<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d == m.degree() => {}
                _ => return None,
            }
        }
        deg
    }

    /// Degree-`k` homogeneous part.
    pub fn homogeneous_part(&self, k: usize) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Lowest homogeneous part (the tangent cone carrier).
    pub fn lowest_part(&self) -> MultiPoly {
        match self.order_at_origin() {
            None => MultiPoly::zero(),
            Some(k) => self.homogeneous_part(k),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn mul_scalar(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn div_scalar(&self, c: &Rational) -> MultiPoly {
        assert!(!c.is_zero(), "division by zero scalar");
        self.map_coeffs(|x| x / c)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())))
    }

    pub fn pow(&self, n: usize) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let i = v.index();
        MultiPoly::from_terms(self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let e = m.0[i];
            let mut mm = *m;
            mm.0[i] -= 1;
            (mm, c * Rational::from(BigInt::from(e)))
        }))
    }

    /// Simultaneous substitution of polynomials for variables. Variables not
    /// bound are left alone.
    pub fn substitute(&self, bindings: &[(Var, MultiPoly)]) -> MultiPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let bound: Vec<Option<&MultiPoly>> = {
            let mut v: Vec<Option<&MultiPoly>> = vec![None; NVARS];
            for (var, p) in bindings {
                v[var.index()] = Some(p);
            }
            v
        };
        // cache powers per variable, computed on demand
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]; NVARS];
        let power = |i: usize, e: usize, base: &MultiPoly, cache: &mut Vec<Vec<MultiPoly>>| {
            while cache[i].len() <= e {
                let next = cache[i].last().unwrap() * base;
                cache[i].push(next);
            }
            cache[i][e].clone()
        };
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            let mut residual = Monomial::one();
            for i in 0..NVARS {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                match bound[i] {
                    None => residual.0[i] = m.0[i],
                    Some(p) => {
                        let pw = power(i, e, p, &mut powers);
                        term = &term * &pw;
                    }
                }
            }
            acc = &acc + &term.mul_monomial(&residual);
        }
        acc
    }

    /// Substitute rational values for some variables.
    pub fn eval_partial(&self, values: &[(Var, Rational)]) -> MultiPoly {
        let bindings: Vec<(Var, MultiPoly)> = values
            .iter()
            .map(|(v, c)| (*v, MultiPoly::constant(c.clone())))
            .collect();
        self.substitute(&bindings)
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            quot.add_term(qm, qc.clone());
            rem = &rem - &d.mul_monomial(&qm).mul_scalar(&qc);
        }
        Some(quot)
    }

    pub fn divisible_by(&self, d: &MultiPoly) -> bool {
        self.div_exact(d).is_some()
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial yields 1.
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// `self` divided by its content, with the leading (graded-lex greatest)
    /// coefficient made positive. The canonical representative up to Q*.
    pub fn normalized_primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut c = self.rational_content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// View as univariate in `v`: coefficient polynomials indexed by the
    /// exponent of `v` (each with the `v`-exponent cleared).
    pub fn as_univariate(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let d = match self.degree_in(v) {
            None => return vec![],
            Some(d) => d,
        };
        let mut coeffs = vec![MultiPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut mm = *m;
            mm.0[i] = 0;
            coeffs[e].add_term(mm, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(coeffs: &[MultiPoly], v: Var) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        let mut m = Monomial::one();
        for c in coeffs {
            for (cm, cc) in &c.terms {
                acc.add_term(cm.mul(&m), cc.clone());
            }
            m.0[v.index()] += 1;
        }
        acc
    }

    /// Coefficients of a polynomial that only involves `v`, lowest first.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<Rational>> {
        for s in self.support() {
            if s != v {
                return None;
            }
        }
        let d = self.degree_in(v).unwrap_or(0);
        let mut out = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize] = c.clone();
        }
        Some(out)
    }

    /// Shift `v -> v + c`.
    pub fn shift(&self, v: Var, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let binding = &MultiPoly::var(v) + &MultiPoly::constant(c.clone());
        self.substitute(&[(v, binding)])
    }

    /// Swap two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> MultiPoly {
        let (ia, ib) = (a.index(), b.index());
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            mm.0.swap(ia, ib);
            (mm, c.clone())
        }))
    }

    /// Rename `from -> to`; `to` must not occur in `self`.
    pub fn rename_var(&self, from: Var, to: Var) -> MultiPoly {
        debug_assert!(self.degree_in(to).unwrap_or(0) == 0 || from == to);
        self.swap_vars(from, to)
    }

    /// Homogenize with `filler` up to total degree `deg`. Terms of degree
    /// above `deg` are rejected (returns `None`).
    pub fn homogenize_with(&self, filler: Var, deg: usize) -> Option<MultiPoly> {
        let fi = filler.index();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > deg {
                return None;
            }
            let mut mm = *m;
            mm.0[fi] += (deg - d) as u16;
            out.add_term(mm, c.clone());
        }
        Some(out)
    }
}

impl Default for MultiPoly {
    fn default() -> Self {
        MultiPoly::zero()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(format_rational(&mag));
            }
            for v in ALL_VARS {
                let e = m.exp(v);
                if e == 1 {
                    factors.push(v.name().to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", v.name(), e));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// `p/q` with `/1` elided.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn grlex_order_descending() {
        // x^2 > x*y > x*z > y^2 > y*z > z^2 > x
        let p = &(&x() + &y()) * &(&x() + &z());
        let order: Vec<String> = p
            .terms_desc()
            .map(|(m, _)| MultiPoly::monomial(*m, Rational::one()).to_string())
            .collect();
        assert_eq!(order, vec!["x^2", "x*y", "x*z", "y*z"]);
    }

    #[test]
    fn substitute_example() {
        // x^2 - y*z with x -> x*y, y -> y^2, z -> x^2 - y*z gives y^3*z
        let f = &(&x() * &x()) - &(&y() * &z());
        let got = f.substitute(&[
            (Var::X, &x() * &y()),
            (Var::Y, &y() * &y()),
            (Var::Z, &(&x() * &x()) - &(&y() * &z())),
        ]);
        let expect = &(&(&y() * &y()) * &y()) * &z();
        assert_eq!(got, expect);
    }

    #[test]
    fn substitute_identity() {
        let f = &(&x() * &y()) + &MultiPoly::constant(rat(3, 2));
        let got = f.substitute(&[(Var::X, x()), (Var::Y, y())]);
        assert_eq!(got, f);
    }

    #[test]
    fn exact_division() {
        let f = &(&x() + &y()) * &(&x() - &y());
        let q = f.div_exact(&(&x() + &y())).unwrap();
        assert_eq!(q, &x() - &y());
        assert!(f.div_exact(&(&x() + &z())).is_none());
    }

    #[test]
    fn normalized_primitive_sign_and_content() {
        let f = (&x() + &y()).mul_scalar(&rat(-4, 6));
        let g = f.normalized_primitive();
        assert_eq!(g, &x() + &y());
    }

    #[test]
    fn display_elides_unit_coefficients() {
        let p = &(&x() * &x()) - &(&y().mul_scalar(&rat_int(2))) ;
        assert_eq!(p.to_string(), "x^2 - 2*y");
        let c = MultiPoly::constant(rat(1, 3));
        assert_eq!(c.to_string(), "1/3");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn homogenize_and_parts() {
        let f = &(&y() * &y()) + &z(); // y^2 + z
        let h = f.homogenize_with(Var::X, 2).unwrap();
        assert_eq!(h, &(&y() * &y()) + &(&x() * &z()));
        assert_eq!(f.lowest_part(), z());
        assert_eq!(f.is_homogeneous(), None);
        assert_eq!(h.is_homogeneous(), Some(2));
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }
}
