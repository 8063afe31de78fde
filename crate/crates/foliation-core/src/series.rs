//! Univariate truncated power series over Q.
//!
//! A series of truncation order `N` carries coefficients `c_0..=c_N` and is
//! trusted modulo `z^(N+1)`. Binary operations truncate to the smaller order.

use crate::error::Error;
use crate::poly::{MultiPoly, Rational, Var};
use crate::Result;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    pub variable: Var,
    /// `coefficients[k]` is the coefficient of `variable^k`; length = order+1.
    pub coefficients: Vec<Rational>,
    pub truncation_order: usize,
}

impl TruncSeries {
    pub fn new(variable: Var, mut coefficients: Vec<Rational>, order: usize) -> TruncSeries {
        coefficients.resize(order + 1, Rational::zero());
        TruncSeries {
            variable,
            coefficients,
            truncation_order: order,
        }
    }

    pub fn zero(variable: Var, order: usize) -> TruncSeries {
        TruncSeries::new(variable, vec![], order)
    }

    pub fn constant(variable: Var, c: Rational, order: usize) -> TruncSeries {
        TruncSeries::new(variable, vec![c], order)
    }

    /// The monomial `c * variable^k`.
    pub fn monomial(variable: Var, c: Rational, k: usize, order: usize) -> TruncSeries {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        TruncSeries::new(variable, coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.truncation_order
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: Rational) {
        assert!(k <= self.truncation_order, "coefficient beyond truncation");
        self.coefficients[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, `None` if zero to truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        let n = order.min(self.truncation_order);
        TruncSeries::new(self.variable, self.coefficients[..=n].to_vec(), n)
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &TruncSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> TruncSeries {
        assert_eq!(self.variable, rhs.variable, "series variable mismatch");
        let n = self.truncation_order.min(rhs.truncation_order);
        let coeffs = (0..=n).map(|k| f(&self.coeff(k), &rhs.coeff(k))).collect();
        TruncSeries::new(self.variable, coeffs, n)
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries::new(
            self.variable,
            self.coefficients.iter().map(|c| -c.clone()).collect(),
            self.truncation_order,
        )
    }

    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.variable, rhs.variable, "series variable mismatch");
        let n = self.truncation_order.min(rhs.truncation_order);
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() || i > n {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncSeries::new(self.variable, coeffs, n)
    }

    pub fn mul_scalar(&self, c: &Rational) -> TruncSeries {
        TruncSeries::new(
            self.variable,
            self.coefficients.iter().map(|a| a * c).collect(),
            self.truncation_order,
        )
    }

    /// Divide by `variable^k`: drop the first `k` coefficients (they must be
    /// zero) and lower the order by `k`.
    pub fn shift_down(&self, k: usize) -> TruncSeries {
        debug_assert!(self.coefficients[..k].iter().all(|c| c.is_zero()));
        TruncSeries::new(
            self.variable,
            self.coefficients[k..].to_vec(),
            self.truncation_order - k,
        )
    }

    /// Multiply by `variable^k` (order grows by k so no information is lost).
    pub fn shift_up(&self, k: usize) -> TruncSeries {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coefficients.iter().cloned());
        TruncSeries::new(self.variable, coeffs, self.truncation_order + k)
    }

    pub fn pow(&self, e: usize) -> TruncSeries {
        let mut acc = TruncSeries::constant(self.variable, Rational::from(BigInt::from(1)), self.truncation_order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> TruncSeries {
        if self.truncation_order == 0 {
            return TruncSeries::zero(self.variable, 0);
        }
        let coeffs = (1..=self.truncation_order)
            .map(|k| &self.coefficients[k] * Rational::from(BigInt::from(k)))
            .collect();
        TruncSeries::new(self.variable, coeffs, self.truncation_order - 1)
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn invert(&self) -> Result<TruncSeries> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::InsufficientTruncation(
                "cannot invert a series with zero constant term".into(),
            ));
        }
        let n = self.truncation_order;
        let mut inv = vec![Rational::zero(); n + 1];
        inv[0] = Rational::from(BigInt::from(1)) / &c0;
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeff(j) * &inv[k - j];
            }
            inv[k] = -s / &c0;
        }
        Ok(TruncSeries::new(self.variable, inv, n))
    }

    /// Composition `self(g)` where `g` has zero constant term.
    pub fn compose(&self, g: &TruncSeries) -> TruncSeries {
        assert!(g.coeff(0).is_zero(), "composition needs g(0) = 0");
        let n = self.truncation_order.min(g.truncation_order);
        let mut acc = TruncSeries::zero(g.variable, n);
        let mut gp = TruncSeries::constant(g.variable, Rational::from(BigInt::from(1)), n);
        for k in 0..=n {
            acc = acc.add(&gp.mul_scalar(&self.coeff(k)));
            if k < n {
                gp = gp.mul(&g.truncate(n));
            }
        }
        acc
    }

    /// Convert to a polynomial in `variable` (drops nothing: truncated data).
    pub fn to_poly(&self) -> MultiPoly {
        let mut f = MultiPoly::zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                let mut m = crate::poly::Monomial::one();
                m.0[self.variable.index()] = k as u16;
                f.add_term(m, c.clone());
            }
        }
        f
    }
}

/// Evaluate a polynomial in `(graph_var, series_var)` at
/// `graph_var = h(series_var)`, `series_var = series_var`.
pub fn poly_at_graph(p: &MultiPoly, graph_var: Var, h: &TruncSeries, series_var: Var) -> TruncSeries {
    debug_assert_eq!(h.variable, series_var);
    let n = h.truncation_order;
    for v in p.support() {
        assert!(
            v == graph_var || v == series_var,
            "poly_at_graph: unexpected variable {v}"
        );
    }
    // Horner in graph_var: p = sum_k graph_var^k * p_k(series_var)
    let rows = p.as_univariate(graph_var);
    let mut acc = TruncSeries::zero(series_var, n);
    for pk in rows.iter().rev() {
        let pk_series = poly_to_series(pk, series_var, n);
        acc = acc.mul(h).add(&pk_series);
    }
    acc
}

/// Truncate a univariate polynomial into a series.
pub fn poly_to_series(p: &MultiPoly, v: Var, order: usize) -> TruncSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (m, c) in p.terms() {
        let k = m.exp(v) as usize;
        debug_assert_eq!(m.degree(), k, "poly_to_series: polynomial not univariate");
        if k <= order {
            coeffs[k] = c.clone();
        }
    }
    TruncSeries::new(v, coeffs, order)
}

/// The elementary step of every term-by-term solver: solve `L * c = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearStep {
    /// The unique solution.
    Unique(Rational),
    /// `L = rhs = 0`: any value works; the designated choice is 0.
    Free,
}

pub fn series_solve_linear_step(l: &Rational, rhs: &Rational) -> Result<LinearStep> {
    if !l.is_zero() {
        Ok(LinearStep::Unique(rhs / l))
    } else if rhs.is_zero() {
        Ok(LinearStep::Free)
    } else {
        Err(Error::Obstruction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn linear_step_cases() {
        assert_eq!(
            series_solve_linear_step(&rat_int(2), &rat_int(4)).unwrap(),
            LinearStep::Unique(rat_int(2))
        );
        assert_eq!(
            series_solve_linear_step(&rat_int(0), &rat_int(0)).unwrap(),
            LinearStep::Free
        );
        assert_eq!(
            series_solve_linear_step(&rat_int(0), &rat_int(1)),
            Err(Error::Obstruction)
        );
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = TruncSeries::new(Var::Z, vec![rat_int(1), rat_int(1)], 5);
        let b = TruncSeries::new(Var::Z, vec![rat_int(1), rat_int(-1)], 3);
        let p = a.mul(&b);
        assert_eq!(p.truncation_order, 3);
        assert_eq!(p.coeff(0), rat_int(1));
        assert_eq!(p.coeff(1), rat_int(0));
        assert_eq!(p.coeff(2), rat_int(-1));
    }

    #[test]
    fn series_matches_poly_arithmetic() {
        // (1 + z + z^2)^2 truncated at order 3
        let z = MultiPoly::var(Var::Z);
        let p = &(&MultiPoly::one() + &z) + &(&z * &z);
        let sq_poly = &p * &p;
        let s = poly_to_series(&p, Var::Z, 3);
        let sq_series = s.mul(&s);
        for k in 0..=3 {
            let mut m = crate::poly::Monomial::one();
            m.0[Var::Z.index()] = k as u16;
            assert_eq!(sq_series.coeff(k), sq_poly.coeff(&m));
        }
    }

    #[test]
    fn invert_and_compose() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let s = TruncSeries::new(Var::Z, vec![rat_int(1), rat_int(-1)], 4);
        let inv = s.invert().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(k), rat_int(1));
        }
        // compose (1+w)^2 at w = z + z^2
        let f = TruncSeries::new(Var::Z, vec![rat_int(1), rat_int(2), rat_int(1)], 4);
        let g = TruncSeries::new(Var::Z, vec![rat_int(0), rat_int(1), rat_int(1)], 4);
        let c = f.compose(&g);
        // (1 + z + z^2)^2 = 1 + 2z + 3z^2 + 2z^3 + z^4
        assert_eq!(
            c.coefficients,
            vec![rat_int(1), rat_int(2), rat_int(3), rat_int(2), rat_int(1)]
        );
    }

    #[test]
    fn graph_evaluation() {
        // p(y,z) = y^2 - z at y = z + z^2: z^2 + 2 z^3 + z^4 - z
        let y = MultiPoly::var(Var::Y);
        let z = MultiPoly::var(Var::Z);
        let p = &(&y * &y) - &z;
        let h = TruncSeries::new(Var::Z, vec![rat_int(0), rat_int(1), rat_int(1)], 4);
        let s = poly_at_graph(&p, Var::Y, &h, Var::Z);
        assert_eq!(
            s.coefficients,
            vec![rat_int(0), rat_int(-1), rat_int(1), rat_int(2), rat_int(1)]
        );
        let _ = rat(1, 2);
    }
}
