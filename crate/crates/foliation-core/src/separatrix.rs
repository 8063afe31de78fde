//! Formal separatrix solvers and series-growth diagnostics.
//!
//! A separatrix of a germ `a dy + b dz` through the origin is a formal curve
//! `y = h(z)` with residual `a(h,z) h'(z) + b(h,z) = 0`. Solving is
//! term-by-term: the candidate coefficient at each order enters linearly, so
//! each step is a `series_solve_linear_step`. All intermediate residuals are
//! computed as exact polynomials, never as floats.

use crate::error::Error;
use crate::foliation::LocalFoliation;
use crate::poly::{ln_abs, MultiPoly, Rational, Var};
use crate::roots::rational_roots;
use crate::series::{poly_to_series, series_solve_linear_step, LinearStep, TruncSeries};
use crate::Result;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetSource {
    Eigendirection,
    Prescribed,
}

/// A truncated formal separatrix `y = h(z)` with solver metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatrixSeries {
    pub h: TruncSeries,
    pub initial_jet_source: JetSource,
    /// Orders where the linear step was degenerate and 0 was chosen.
    pub free_parameters: Vec<usize>,
    pub obstructed: bool,
}

impl SeparatrixSeries {
    /// The separatrix as the curve equation `y - h(z)` (truncated).
    pub fn curve_equation(&self) -> MultiPoly {
        &MultiPoly::var(Var::Y) - &self.h.to_poly()
    }
}

/// Exact residual polynomial `a(h,z) h'(z) + b(h,z)` for a polynomial `h`.
pub fn residual(l: &LocalFoliation, h: &MultiPoly) -> MultiPoly {
    debug_assert!(h.support().iter().all(|v| *v == Var::Z));
    let hp = h.derivative(Var::Z);
    let a_h = l.a.substitute(&[(Var::Y, h.clone())]);
    let b_h = l.b.substitute(&[(Var::Y, h.clone())]);
    &(&a_h * &hp) + &b_h
}

/// Derivative of the residual in the direction `z^k` (the coefficient-k
/// perturbation of `h`), as an exact polynomial.
fn direction_derivative(l: &LocalFoliation, h: &MultiPoly, k: usize) -> MultiPoly {
    let hp = h.derivative(Var::Z);
    let subs = [(Var::Y, h.clone())];
    let a_h = l.a.substitute(&subs);
    let ay_h = l.a.derivative(Var::Y).substitute(&subs);
    let by_h = l.b.derivative(Var::Y).substitute(&subs);
    let zk = MultiPoly::monomial(zmono(k), Rational::one());
    let mut d = &(&ay_h * &hp) * &zk;
    d = &d + &(&by_h * &zk);
    if k > 0 {
        let zk1 = MultiPoly::monomial(zmono(k - 1), Rational::from(BigInt::from(k)));
        d = &d + &(&a_h * &zk1);
    }
    d
}

fn zmono(k: usize) -> crate::poly::Monomial {
    let mut m = crate::poly::Monomial::one();
    m.0[Var::Z.index()] = k as u16;
    m
}

fn ord_z(p: &MultiPoly) -> Option<usize> {
    p.terms().map(|(m, _)| m.exp(Var::Z) as usize).min()
}

fn coeff_z(p: &MultiPoly, k: usize) -> Rational {
    p.coeff(&zmono(k))
}

/// Extend `initial_jet` to a separatrix series of order `n` for the germ at
/// the origin of `l`.
pub fn solve_separatrix(
    l: &LocalFoliation,
    initial_jet: &TruncSeries,
    n: usize,
) -> Result<SeparatrixSeries> {
    solve_with_source(l, initial_jet, n, JetSource::Prescribed)
}

pub(crate) fn solve_with_source(
    l: &LocalFoliation,
    initial_jet: &TruncSeries,
    n: usize,
    source: JetSource,
) -> Result<SeparatrixSeries> {
    assert!(l.base_is_origin(), "solve_separatrix expects an origin germ");
    assert_eq!(initial_jet.variable, Var::Z);
    let j0 = initial_jet.truncation_order;
    let mut h = initial_jet.to_poly();
    let mut free = Vec::new();
    for k in (j0 + 1)..=n.max(j0) {
        if k > n {
            break;
        }
        let e = residual(l, &h);
        let d = direction_derivative(l, &h, k);
        if d.is_zero() {
            // the order-k coefficient has no effect at any order
            free.push(k);
            continue;
        }
        let sigma = ord_z(&d).unwrap();
        let lead = coeff_z(&d, sigma);
        match ord_z(&e) {
            None => {
                // exactly invariant already; adding anything would break it
                let step = series_solve_linear_step(&lead, &Rational::zero())?;
                debug_assert_eq!(step, LinearStep::Unique(Rational::zero()));
            }
            Some(jstar) => {
                if sigma == jstar {
                    match series_solve_linear_step(&lead, &(-coeff_z(&e, jstar)))? {
                        LinearStep::Unique(c) => {
                            if !c.is_zero() {
                                h.add_term(zmono(k), c);
                            }
                        }
                        LinearStep::Free => free.push(k),
                    }
                } else if sigma > jstar {
                    if k > jstar + 1 {
                        // no later coefficient can reach the failing order
                        return Err(Error::Obstructed { order: jstar });
                    }
                    // this coefficient is blind to the failing order; leave 0
                }
                // sigma < jstar: the equation at order sigma reads lead*c = 0,
                // so the coefficient is forced to 0 and h is unchanged
            }
        }
    }
    let e = residual(l, &h);
    if let Some(j) = ord_z(&e) {
        if j <= n {
            return Err(Error::Obstructed { order: j });
        }
    }
    Ok(SeparatrixSeries {
        h: poly_to_series(&h, Var::Z, n),
        initial_jet_source: source,
        free_parameters: free,
        obstructed: false,
    })
}

/// The separatrix `y = 0`, when the y-axis is invariant.
pub fn axis_y_separatrix(l: &LocalFoliation, n: usize) -> Option<SeparatrixSeries> {
    if l.b.substitute(&[(Var::Y, MultiPoly::zero())]).is_zero() {
        Some(SeparatrixSeries {
            h: TruncSeries::zero(Var::Z, n),
            initial_jet_source: JetSource::Prescribed,
            free_parameters: vec![],
            obstructed: false,
        })
    } else {
        None
    }
}

/// Leading jets `c * z^k` (with nonzero rational `c`) from which a graph
/// separatrix can start: roots of the lowest-order balance equation.
pub fn graph_jet_candidates(l: &LocalFoliation, kmax: usize) -> Vec<TruncSeries> {
    let mut jets = Vec::new();
    for k in 1..=kmax {
        // substitute y = U z^k and read the lowest z-coefficient as a
        // polynomial in U
        let uzk = MultiPoly::monomial(
            {
                let mut m = zmono(k);
                m.0[Var::U.index()] = 1;
                m
            },
            Rational::one(),
        );
        let subs = [(Var::Y, uzk)];
        let a_s = l.a.substitute(&subs);
        let b_s = l.b.substitute(&subs);
        let kuzk1 = MultiPoly::monomial(
            {
                let mut m = zmono(k.saturating_sub(1));
                m.0[Var::U.index()] = 1;
                m
            },
            Rational::from(BigInt::from(k)),
        );
        let s = &(&a_s * &kuzk1) + &b_s;
        if s.is_zero() {
            continue;
        }
        let j0 = ord_z(&s).unwrap();
        let p: MultiPoly = MultiPoly::from_terms(
            s.terms()
                .filter(|(m, _)| (m.exp(Var::Z) as usize) == j0)
                .map(|(m, c)| {
                    let mut mm = *m;
                    mm.0[Var::Z.index()] = 0;
                    (mm, c.clone())
                }),
        );
        if p.degree_in(Var::U).unwrap_or(0) == 0 {
            continue;
        }
        let (roots, _) = rational_roots(&p.rename_var(Var::U, Var::Z), Var::Z);
        for (c, _) in roots {
            if !c.is_zero() {
                jets.push(TruncSeries::monomial(Var::Z, c, k, k));
            }
        }
    }
    jets
}

/// Order of tangency of two graph separatrices: the z-order of `h1 - h2`.
pub fn contact_order(h1: &SeparatrixSeries, h2: &SeparatrixSeries) -> Result<usize> {
    let d = h1.h.sub(&h2.h);
    match d.valuation() {
        Some(v) => Ok(v),
        None => Err(Error::Indistinguishable),
    }
}

/// Coefficients of the unique power-series solution `W` with `W(0) = beta` of
/// `(W - beta - alpha t W^d) * (c1 t W' + c2 W) + (W - beta)^2 = 0`,
/// `c1 = (d^2+1)/2`, `c2 = (d-1)/2`, computed through order `n - 1`
/// (so the residual vanishes mod `t^n`).
pub fn solve_w_ode(d: usize, alpha: &Rational, beta: &Rational, n: usize) -> Result<TruncSeries> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidParameters(
            "the nilpotent family needs an odd degree d >= 3".into(),
        ));
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidParameters(
            "alpha and beta must be nonzero".into(),
        ));
    }
    if n < 1 {
        return Err(Error::InvalidParameters(
            "series length must be at least 1".into(),
        ));
    }
    let two = Rational::from(BigInt::from(2));
    let c1 = Rational::from(BigInt::from((d * d + 1) as i64)) / &two;
    let c2 = Rational::from(BigInt::from((d - 1) as i64)) / &two;
    let t = MultiPoly::var(Var::T);
    let tm = |k: usize| {
        let mut m = crate::poly::Monomial::one();
        m.0[Var::T.index()] = k as u16;
        m
    };
    let beta_p = MultiPoly::constant(beta.clone());
    let residual = |w: &MultiPoly| -> MultiPoly {
        let wp = w.derivative(Var::T);
        let f = &(w - &beta_p) - &(&t.mul_scalar(alpha) * &w.pow(d));
        let g = &(&t * &wp).mul_scalar(&c1) + &w.mul_scalar(&c2);
        let sq = &(w - &beta_p) * &(w - &beta_p);
        &(&f * &g) + &sq
    };
    // derivative of the residual in the direction t^k:
    // [(1 - alpha t d W^(d-1)) G + (c1 k + c2) F + 2 (W - beta)] * t^k
    let direction = |w: &MultiPoly, k: usize| -> MultiPoly {
        let wp = w.derivative(Var::T);
        let f = &(w - &beta_p) - &(&t.mul_scalar(alpha) * &w.pow(d));
        let g = &(&t * &wp).mul_scalar(&c1) + &w.mul_scalar(&c2);
        let ad = alpha * Rational::from(BigInt::from(d as i64));
        let df = &MultiPoly::one() - &(&t.mul_scalar(&ad) * &w.pow(d - 1));
        let scale = &c1 * Rational::from(BigInt::from(k as i64)) + &c2;
        let inner = &(&(&df * &g) + &f.mul_scalar(&scale))
            + &(w - &beta_p).mul_scalar(&two);
        inner.mul_monomial(&tm(k))
    };
    let mut w = MultiPoly::constant(beta.clone());
    for k in 1..n {
        let e = residual(&w);
        let dd = direction(&w, k);
        if dd.is_zero() {
            return Err(Error::Obstructed { order: k });
        }
        let sigma = dd
            .terms()
            .map(|(m, _)| m.exp(Var::T) as usize)
            .min()
            .unwrap();
        let lead = dd.coeff(&tm(sigma));
        let rhs = -e.coeff(&tm(sigma));
        match series_solve_linear_step(&lead, &rhs)? {
            LinearStep::Unique(c) => {
                if !c.is_zero() {
                    w.add_term(tm(k), c);
                }
            }
            LinearStep::Free => {}
        }
    }
    let e = residual(&w);
    if let Some(j) = e.terms().map(|(m, _)| m.exp(Var::T) as usize).min() {
        if j < n {
            return Err(Error::Obstructed { order: j });
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    for (m, c) in w.terms() {
        coeffs[m.exp(Var::T) as usize] = c.clone();
    }
    Ok(TruncSeries::new(Var::T, coeffs, n - 1))
}

/// Diagnostic fit of series-coefficient growth.
#[derive(Debug, Clone)]
pub struct GevreyFit {
    /// Estimated Gevrey order: the exponent `s` in `|a_n| ~ C A^n (n!)^s`.
    pub s_hat: f64,
    /// Estimated `log A`.
    pub log_growth: f64,
    pub r_squared: f64,
    /// Smallest and largest coefficient index used.
    pub n_range: (usize, usize),
}

/// Least-squares fit of `log|a_n|` against `{1, n, log n!}` over the nonzero
/// coefficients with `n >= 1`. Purely a numeric diagnostic.
pub fn gevrey_fit(coefficients: &[Rational]) -> Result<GevreyFit> {
    let pts: Vec<(usize, f64)> = coefficients
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n, ln_abs(c)))
        .collect();
    if pts.len() < 20 {
        return Err(Error::TooFewTerms {
            needed: 20,
            got: pts.len(),
        });
    }
    let mut ln_fact = vec![0.0f64];
    for k in 1..=pts.last().unwrap().0 {
        let prev = *ln_fact.last().unwrap();
        ln_fact.push(prev + (k as f64).ln());
    }
    // normal equations for y = c0 + c1 * n + c2 * ln(n!)
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(n, y) in &pts {
        let row = [1.0, n as f64, ln_fact[n]];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y;
        }
    }
    let sol = solve3(&ata, &aty).ok_or_else(|| {
        Error::InsufficientTruncation("growth fit: singular normal equations".into())
    })?;
    let mean = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for &(n, y) in &pts {
        let fit = sol[0] + sol[1] * n as f64 + sol[2] * ln_fact[n];
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean) * (y - mean);
    }
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(GevreyFit {
        s_hat: sol[2],
        log_growth: sol[1],
        r_squared,
        n_range: (pts.first().unwrap().0, pts.last().unwrap().0),
    })
}

fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::Chart;
    use crate::parser::parse_poly;
    use crate::poly::{rat, rat_int};

    fn dulac(k: usize, lambda: i64) -> LocalFoliation {
        // z^(k+1) dy - y (1 + lambda z^k) dz
        let a = parse_poly(&format!("z^{}", k + 1)).unwrap();
        let b = parse_poly(&format!("-y*(1 + {lambda}*z^{k})")).unwrap();
        LocalFoliation::new(Chart::Custom, a, b).unwrap()
    }

    #[test]
    fn weak_separatrix_of_dulac_form_is_zero() {
        let l = dulac(2, 5);
        let s = solve_separatrix(&l, &TruncSeries::zero(Var::Z, 0), 20).unwrap();
        assert!(s.h.is_zero());
        assert!(!s.obstructed);
        assert!(residual(&l, &s.h.to_poly()).is_zero());
        assert!(axis_y_separatrix(&l, 20).is_some());
    }

    #[test]
    fn nilpotent_normal_form_separatrices() {
        // (y + z^2) dy - z^13 dz: the short branch starts with -z^2, the long
        // branch with z^12/12
        let a = parse_poly("y + z^2").unwrap();
        let b = parse_poly("-z^13").unwrap();
        let l = LocalFoliation::new(Chart::Custom, a, b).unwrap();
        let jets = graph_jet_candidates(&l, 14);
        assert!(!jets.is_empty());
        let s = solve_separatrix(&l, &TruncSeries::monomial(Var::Z, rat(1, 12), 12, 12), 40)
            .unwrap();
        assert_eq!(s.h.coeff(12), rat(1, 12));
        let res = residual(&l, &s.h.to_poly());
        assert!(res.is_zero() || res.order_at_origin().unwrap() > 40);

        let s2 =
            solve_separatrix(&l, &TruncSeries::monomial(Var::Z, rat_int(-1), 2, 2), 40).unwrap();
        assert_eq!(s2.h.coeff(2), rat_int(-1));
        assert_eq!(contact_order(&s, &s2).unwrap(), 2);
        assert!(contact_order(&s, &s).is_err());
    }

    #[test]
    fn obstruction_is_reported() {
        // y dy + dz: the residual h h' + 1 = 0 has no power series solution
        let l = LocalFoliation::new(Chart::Custom, MultiPoly::var(Var::Y), MultiPoly::one())
            .unwrap();
        let r = solve_separatrix(&l, &TruncSeries::zero(Var::Z, 0), 10);
        assert!(matches!(r, Err(Error::Obstructed { .. })));
    }

    #[test]
    fn w_ode_solves_and_leading_terms() {
        let w = solve_w_ode(3, &rat_int(1), &rat_int(1), 12).unwrap();
        assert_eq!(w.coeff(0), rat_int(1));
        // w_1 = alpha * beta^d
        assert_eq!(w.coeff(1), rat_int(1));
        assert!(solve_w_ode(4, &rat_int(1), &rat_int(1), 5).is_err());
        assert!(solve_w_ode(3, &rat_int(0), &rat_int(1), 5).is_err());
    }

    #[test]
    fn w_ode_scaling_law() {
        // W_{a,b}(t) = b * W_{1,1}(a b^(d-1) t) for d = 3: measured, not assumed
        let n = 16;
        let base = solve_w_ode(3, &rat_int(1), &rat_int(1), n).unwrap();
        let scaled = solve_w_ode(3, &rat_int(2), &rat_int(3), n).unwrap();
        let factor = rat_int(2) * rat_int(9);
        let mut pw = Rational::one();
        for k in 0..n {
            let expect = rat_int(3) * base.coeff(k) * pw.clone();
            assert_eq!(scaled.coeff(k), expect, "coefficient {k}");
            pw *= factor.clone();
        }
    }

    #[test]
    fn gevrey_fit_detects_factorial_growth() {
        let mut fact = Rational::one();
        let mut grow = Vec::new();
        let mut decay = Vec::new();
        let mut geom = Vec::new();
        let mut g = Rational::one();
        for n in 0..40usize {
            if n > 0 {
                fact *= rat_int(n as i64);
                g *= rat(3, 2);
            }
            grow.push(fact.clone());
            decay.push(Rational::one() / fact.clone());
            geom.push(g.clone());
        }
        let up = gevrey_fit(&grow).unwrap();
        assert!((up.s_hat - 1.0).abs() < 0.1, "s_hat = {}", up.s_hat);
        let down = gevrey_fit(&decay).unwrap();
        assert!((down.s_hat + 1.0).abs() < 0.1, "s_hat = {}", down.s_hat);
        let flat = gevrey_fit(&geom).unwrap();
        assert!(flat.s_hat.abs() < 0.1, "s_hat = {}", flat.s_hat);
        assert!(gevrey_fit(&grow[..10]).is_err());
    }
}
