//! Local singularity analysis: the singular-point census, Milnor numbers by
//! two independent routes (Fulton's recursive intersection-number axioms and
//! Macaulay-matrix colength), ideal membership, Tjurina numbers, and the
//! index calculus for separatrices.

use crate::error::Error;
use crate::foliation::{restrict_to_chart, Chart, LocalFoliation, ProjFoliation};
use crate::gcd::{poly_gcd, resultant};
use crate::poly::{rational_sqrt, Monomial, MultiPoly, Rational, Var};
use crate::roots::rational_roots;
use crate::separatrix::{graph_jet_candidates, solve_separatrix, SeparatrixSeries};
use crate::series::TruncSeries;
use crate::Result;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Classification of the linear part of the dual vector field at a singular
/// point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LinearClass {
    HyperbolicNonresonant,
    HyperbolicResonant,
    SaddleNode,
    Nilpotent,
    ZeroLinearPart,
}

impl LinearClass {
    pub fn name(self) -> &'static str {
        match self {
            LinearClass::HyperbolicNonresonant => "hyperbolic_nonresonant",
            LinearClass::HyperbolicResonant => "hyperbolic_resonant",
            LinearClass::SaddleNode => "saddle_node",
            LinearClass::Nilpotent => "nilpotent",
            LinearClass::ZeroLinearPart => "zero_linear_part",
        }
    }
}

fn linear_entries(l: &LocalFoliation) -> [Rational; 4] {
    let t = l.translated_to_origin();
    let at = |p: &MultiPoly, v: Var| p.derivative(v).constant_term();
    [
        at(&t.b, Var::Y),
        at(&t.b, Var::Z),
        -at(&t.a, Var::Y),
        -at(&t.a, Var::Z),
    ]
}

/// Classify the linear part at the base point.
pub fn classify_linear(l: &LocalFoliation) -> LinearClass {
    let j = linear_entries(l);
    let (tr, det) = l.linear_part();
    if j.iter().all(|c| c.is_zero()) {
        LinearClass::ZeroLinearPart
    } else if det.is_zero() && tr.is_zero() {
        LinearClass::Nilpotent
    } else if det.is_zero() {
        LinearClass::SaddleNode
    } else if eigen_ratio_rational(&tr, &det) {
        LinearClass::HyperbolicResonant
    } else {
        LinearClass::HyperbolicNonresonant
    }
}

/// Is the eigenvalue ratio a rational number? (`det != 0` assumed.) The
/// ratio is rational iff the trace vanishes (ratio -1) or the discriminant
/// `tr^2 - 4 det` is a rational square.
pub fn eigen_ratio_rational(tr: &Rational, det: &Rational) -> bool {
    if tr.is_zero() {
        return true;
    }
    let disc = tr * tr - Rational::from(BigInt::from(4)) * det;
    rational_sqrt(&disc).is_some()
}

/// Is the eigenvalue ratio a positive rational? This is exactly the
/// non-reduced hyperbolic case.
pub fn eigen_ratio_positive_rational(tr: &Rational, det: &Rational) -> bool {
    if det.is_zero() || !det.is_positive() {
        return false;
    }
    let disc = tr * tr - Rational::from(BigInt::from(4)) * det;
    rational_sqrt(&disc).is_some()
}

/// A reduced singularity: saddle-node, or nonzero eigenvalues whose ratio is
/// not a positive rational.
pub fn is_reduced(l: &LocalFoliation) -> bool {
    let (tr, det) = l.linear_part();
    match classify_linear(l) {
        LinearClass::SaddleNode => true,
        LinearClass::HyperbolicNonresonant | LinearClass::HyperbolicResonant => {
            !eigen_ratio_positive_rational(&tr, &det)
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Milnor number: Fulton's recursive algorithm
// ---------------------------------------------------------------------------

/// Intersection multiplicity of the two chart coefficients at the base
/// point, by Fulton's axioms for plane-curve intersection numbers.
pub fn milnor_fulton(l: &LocalFoliation) -> Result<usize> {
    let t = l.translated_to_origin();
    fulton_origin(&t.a, &t.b)
}

/// I(0; f, g) for plane curves through the origin.
pub fn fulton_origin(f: &MultiPoly, g: &MultiPoly) -> Result<usize> {
    let mut f = f.clone();
    let mut g = g.clone();
    let mut acc: usize = 0;
    loop {
        if f.is_zero() || g.is_zero() {
            return Err(Error::NonIsolatedSingularity);
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Ok(acc);
        }
        let fy = f.eval_partial(&[(Var::Z, Rational::zero())]);
        let gy = g.eval_partial(&[(Var::Z, Rational::zero())]);
        match (fy.is_zero(), gy.is_zero()) {
            (true, true) => return Err(Error::NonIsolatedSingularity),
            (true, false) => {
                // f = z*h: I(f,g) = I(z,g) + I(h,g) = ord_y g(y,0) + I(h,g)
                acc += gy.order_at_origin().expect("nonzero");
                f = f.div_exact(&MultiPoly::var(Var::Z)).expect("z divides");
            }
            (false, true) => {
                acc += fy.order_at_origin().expect("nonzero");
                g = g.div_exact(&MultiPoly::var(Var::Z)).expect("z divides");
            }
            (false, false) => {
                let r = fy.degree_in(Var::Y).unwrap_or(0);
                let s = gy.degree_in(Var::Y).unwrap_or(0);
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                    continue;
                }
                // kill the top y-coefficient of g(y,0)
                let a = fy.coeff(&ymono(r));
                let b = gy.coeff(&ymono(s));
                let factor = MultiPoly::monomial(ymono(s - r), &b / &a);
                g = &g - &(&f * &factor);
            }
        }
    }
}

fn ymono(k: usize) -> Monomial {
    let mut m = Monomial::one();
    m.0[Var::Y.index()] = k as u16;
    m
}

// ---------------------------------------------------------------------------
// Colength by Macaulay-matrix truncation
// ---------------------------------------------------------------------------

pub const DEFAULT_COLENGTH_CAP: usize = 220;

/// Local colength `dim O/(gens)` at `point`, by rank computations of
/// Macaulay matrices truncated at increasing degree bounds until two bounds
/// agree. The truncated dimension is nondecreasing in the bound, so
/// agreement between any two bounds certifies stabilization (Nakayama).
pub fn colength(gens: &[MultiPoly], point: &(Rational, Rational)) -> Result<usize> {
    colength_capped(gens, point, DEFAULT_COLENGTH_CAP)
}

pub fn colength_capped(
    gens: &[MultiPoly],
    point: &(Rational, Rational),
    cap: usize,
) -> Result<usize> {
    let shifted: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.shift(Var::Y, &point.0).shift(Var::Z, &point.1))
        .filter(|g| !g.is_zero())
        .collect();
    if shifted.is_empty() {
        return Err(Error::NotFinite { cap });
    }
    if shifted.iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(0);
    }
    let mut prev: Option<usize> = None;
    let mut bound = 2usize;
    loop {
        let d = bound.min(cap);
        let q = macaulay_quotient_dim(&shifted, d);
        if prev == Some(q) {
            return Ok(q);
        }
        if d == cap {
            return Err(Error::NotFinite { cap });
        }
        prev = Some(q);
        bound = if bound < 16 { bound * 2 } else { bound + 12 };
    }
}

/// dim of O/(gens + m^(d+1)): column count minus the rank of the truncated
/// multiplication matrix.
fn macaulay_quotient_dim(gens: &[MultiPoly], d: usize) -> usize {
    let idx = |i: usize, j: usize| -> u32 {
        // monomial y^i z^j, ordered by total degree then y-exponent
        let t = i + j;
        (t * (t + 1) / 2 + i) as u32
    };
    let ncols = (d + 1) * (d + 2) / 2;
    let mut rows: Vec<Vec<(u32, Rational)>> = Vec::new();
    for g in gens {
        let og = g.order_at_origin().expect("nonzero generator");
        if og > d {
            continue;
        }
        for mi in 0..=(d - og) {
            for mj in 0..=(d - og - mi) {
                let mut row: Vec<(u32, Rational)> = Vec::new();
                for (m, c) in g.terms() {
                    let i = m.exp(Var::Y) as usize + mi;
                    let j = m.exp(Var::Z) as usize + mj;
                    if i + j <= d {
                        row.push((idx(i, j), c.clone()));
                    }
                }
                if !row.is_empty() {
                    row.sort_by_key(|e| e.0);
                    rows.push(row);
                }
            }
        }
    }
    rows.sort_by_key(|r| r[0].0);
    let mut pivots: Vec<Option<Vec<(u32, Rational)>>> = vec![None; ncols];
    let mut rank = 0usize;
    for mut row in rows {
        loop {
            let Some(&(lead, ref lc)) = row.first() else {
                break;
            };
            match &pivots[lead as usize] {
                Some(p) => {
                    let lc = lc.clone();
                    row = row_subtract(&row, p, &lc);
                }
                None => {
                    let lc = lc.clone();
                    let monic: Vec<(u32, Rational)> =
                        row.iter().map(|(i, c)| (*i, c / &lc)).collect();
                    pivots[lead as usize] = Some(monic);
                    rank += 1;
                    break;
                }
            }
        }
    }
    ncols - rank
}

/// `row - c * pivot`, both sorted sparse vectors; the pivot is monic at
/// `row`'s leading index, so the leading entry cancels.
fn row_subtract(
    row: &[(u32, Rational)],
    pivot: &[(u32, Rational)],
    c: &Rational,
) -> Vec<(u32, Rational)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < pivot.len() {
        match (row.get(i), pivot.get(j)) {
            (Some(&(ri, ref rc)), Some(&(pi, ref pc))) => {
                if ri < pi {
                    out.push((ri, rc.clone()));
                    i += 1;
                } else if pi < ri {
                    out.push((pi, -(c * pc)));
                    j += 1;
                } else {
                    let v = rc - &(c * pc);
                    if !v.is_zero() {
                        out.push((ri, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some(&(ri, ref rc)), None) => {
                out.push((ri, rc.clone()));
                i += 1;
            }
            (None, Some(&(pi, ref pc))) => {
                out.push((pi, -(c * pc)));
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// Formal ideal membership by the nested-colength criterion: `f` lies in
/// `(gens)` at `point` iff adjoining it does not change the colength.
pub fn ideal_member(
    f: &MultiPoly,
    gens: &[MultiPoly],
    point: &(Rational, Rational),
) -> Result<bool> {
    let base = colength(gens, point)?;
    let mut extended = gens.to_vec();
    extended.push(f.clone());
    let ext = colength(&extended, point)?;
    Ok(base == ext)
}

/// Tjurina number: colength of `(f, df/dy, df/dz)` at `point`.
pub fn tjurina(f: &MultiPoly, point: &(Rational, Rational)) -> Result<usize> {
    colength(
        &[f.clone(), f.derivative(Var::Y), f.derivative(Var::Z)],
        point,
    )
}

// ---------------------------------------------------------------------------
// Index calculus
// ---------------------------------------------------------------------------

/// Camacho-Sad index of the smooth separatrix `y = h(z)` at the origin germ:
/// after the shear `y -> y + h(z)`, with the sheared form `A dy + B dz` and
/// `B = y * Bt`, this is `Res_{z=0}(-Bt(0,z)/A(0,z))`.
pub fn cs_index_smooth(l: &LocalFoliation, h: &SeparatrixSeries) -> Result<Rational> {
    assert!(l.base_is_origin(), "index computations expect origin germs");
    let n = h.h.truncation_order;
    let a0 = crate::series::poly_at_graph(&l.a, Var::Y, &h.h, Var::Z);
    let hp_poly = h.h.to_poly().derivative(Var::Z);
    let hp = crate::series::poly_to_series(&hp_poly, Var::Z, n);
    let ay = crate::series::poly_at_graph(&l.a.derivative(Var::Y), Var::Y, &h.h, Var::Z);
    let by = crate::series::poly_at_graph(&l.b.derivative(Var::Y), Var::Y, &h.h, Var::Z);
    let b1 = ay.mul(&hp).add(&by);
    residue_neg_ratio(&b1, &a0)
}

/// `Res_{z=0}(-num/den)` for truncated series, with explicit sufficiency
/// checks.
fn residue_neg_ratio(num: &TruncSeries, den: &TruncSeries) -> Result<Rational> {
    let n = num.truncation_order.min(den.truncation_order);
    let q = den.valuation().ok_or_else(|| {
        Error::InsufficientTruncation("denominator vanishes to the truncation order".into())
    })?;
    let p = match num.valuation() {
        // the true valuation exceeds the truncation, which is >= q: analytic
        None => return Ok(Rational::zero()),
        Some(p) => p,
    };
    if q == 0 || q <= p {
        return Ok(Rational::zero());
    }
    let want = q - 1 - p;
    let avail = (n - p).min(n - q);
    if want > avail {
        return Err(Error::InsufficientTruncation(format!(
            "residue needs ratio coefficient {want}, truncation supports {avail}"
        )));
    }
    let u = num.shift_down(p);
    let w = den.shift_down(q);
    let ratio = u.mul(&w.invert()?);
    Ok(-ratio.coeff(want))
}

/// GSV index of the smooth separatrix `y = h(z)`: the smaller of the
/// z-orders of `a(h(z),z)` and `b(h(z),z)`.
pub fn gsv_index_smooth(l: &LocalFoliation, h: &SeparatrixSeries) -> Result<usize> {
    assert!(l.base_is_origin(), "index computations expect origin germs");
    let a_h = crate::series::poly_at_graph(&l.a, Var::Y, &h.h, Var::Z);
    let b_h = crate::series::poly_at_graph(&l.b, Var::Y, &h.h, Var::Z);
    match (a_h.valuation(), b_h.valuation()) {
        (None, None) => Err(Error::InsufficientTruncation(
            "both restrictions vanish to the truncation order".into(),
        )),
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (Some(va), Some(vb)) => Ok(va.min(vb)),
    }
}

/// Which coordinate axis a divisor component or separatrix sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    /// the curve `y = 0` (a graph over z)
    YZero,
    /// the curve `z = 0` (a graph over y; handled by swapping coordinates)
    ZZero,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::YZero => "y=0",
            Axis::ZZero => "z=0",
        }
    }
}

/// CS index of an invariant coordinate axis; exact for polynomial germs.
pub fn cs_of_axis(l: &LocalFoliation, axis: Axis) -> Result<Rational> {
    let g = match axis {
        Axis::YZero => l.clone(),
        Axis::ZZero => l.swapped(),
    };
    let b0 = g.b.eval_partial(&[(Var::Y, Rational::zero())]);
    if !b0.is_zero() {
        return Err(Error::InsufficientTruncation(
            "axis is not invariant for the germ".into(),
        ));
    }
    let n = 2 * (g.a.total_degree().unwrap_or(1) + g.b.total_degree().unwrap_or(1)) + 4;
    let zero = SeparatrixSeries {
        h: TruncSeries::zero(Var::Z, n),
        initial_jet_source: crate::separatrix::JetSource::Prescribed,
        free_parameters: vec![],
        obstructed: false,
    };
    cs_index_smooth(&g, &zero)
}

/// GSV index of an invariant coordinate axis; exact for polynomial germs.
pub fn gsv_of_axis(l: &LocalFoliation, axis: Axis) -> Result<usize> {
    let g = match axis {
        Axis::YZero => l.clone(),
        Axis::ZZero => l.swapped(),
    };
    let a0 = g.a.eval_partial(&[(Var::Y, Rational::zero())]);
    let b0 = g.b.eval_partial(&[(Var::Y, Rational::zero())]);
    let ord = |p: &MultiPoly| p.order_at_origin();
    match (ord(&a0), ord(&b0)) {
        (None, None) => Err(Error::NonIsolatedSingularity),
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (Some(va), Some(vb)) => Ok(va.min(vb)),
    }
}

/// `(k, lambda)` of a saddle-node germ: Milnor number `k+1` and the CS index
/// `lambda` of the formal weak separatrix.
pub fn saddle_node_data(l: &LocalFoliation) -> Result<(usize, Rational)> {
    let t = l.translated_to_origin();
    if classify_linear(&t) != LinearClass::SaddleNode {
        return Err(Error::NotReduced);
    }
    let mu = milnor_fulton(&t)?;
    let weak = weak_separatrix(&t, 2 * mu + 10)?;
    let lambda = cs_index_smooth(&weak.germ, &weak.series)?;
    Ok((mu - 1, lambda))
}

/// A solved separatrix together with the (possibly swapped) germ it lives in.
pub struct OrientedSeparatrix {
    pub germ: LocalFoliation,
    pub series: SeparatrixSeries,
    pub swapped: bool,
}

/// The formal weak separatrix of a saddle-node: the branch tangent to the
/// kernel of the linear part.
pub fn weak_separatrix(l: &LocalFoliation, n: usize) -> Result<OrientedSeparatrix> {
    let t = l.translated_to_origin();
    let (vy, vz) = t.kernel_direction().ok_or(Error::NotReduced)?;
    if !vz.is_zero() {
        let slope = &vy / &vz;
        let jet = TruncSeries::new(Var::Z, vec![Rational::zero(), slope], 1);
        let series = solve_separatrix(&t, &jet, n)?;
        Ok(OrientedSeparatrix {
            germ: t,
            series,
            swapped: false,
        })
    } else {
        let s = t.swapped();
        let jet = TruncSeries::zero(Var::Z, 1);
        let series = solve_separatrix(&s, &jet, n)?;
        Ok(OrientedSeparatrix {
            germ: s,
            series,
            swapped: true,
        })
    }
}

/// Baum-Bott index of a reduced singularity, or of a nilpotent germ with a
/// computable full separatrix set.
///
/// Hyperbolic with eigenvalue data (tr, det): `2 + (tr^2 - 2 det)/det`.
/// Saddle-node of Milnor number `k+1` with weak residue `lambda`:
/// `2k + 2 + lambda`. Nilpotent with exactly two smooth graph branches:
/// `CS(C1)+CS(C2) + 2(GSV(C1)+GSV(C2)) - 2 (C1.C2)`.
pub fn bb_index_reduced(l: &LocalFoliation) -> Result<Rational> {
    let t = l.translated_to_origin();
    let (tr, det) = t.linear_part();
    match classify_linear(&t) {
        LinearClass::HyperbolicNonresonant | LinearClass::HyperbolicResonant => {
            let two = Rational::from(BigInt::from(2));
            Ok(&two + &((&(&tr * &tr) - &(&two * &det)) / &det))
        }
        LinearClass::SaddleNode => {
            let (k, lambda) = saddle_node_data(&t)?;
            Ok(Rational::from(BigInt::from(2 * k as i64 + 2)) + lambda)
        }
        LinearClass::Nilpotent => {
            let branches = nilpotent_branches(&t)?;
            if branches.len() != 2 {
                return Err(Error::NotReduced);
            }
            let (g1, s1) = &branches[0];
            let (g2, s2) = &branches[1];
            let cs = cs_index_smooth(g1, s1)? + cs_index_smooth(g2, s2)?;
            let gsv = gsv_index_smooth(g1, s1)? + gsv_index_smooth(g2, s2)?;
            let contact = crate::separatrix::contact_order(s1, s2)?;
            Ok(cs + Rational::from(BigInt::from(2 * gsv as i64 - 2 * contact as i64)))
        }
        LinearClass::ZeroLinearPart => Err(Error::NotReduced),
    }
}

/// The smooth graph branches of a nilpotent generalized saddle-node, all in
/// one orientation.
fn nilpotent_branches(t: &LocalFoliation) -> Result<Vec<(LocalFoliation, SeparatrixSeries)>> {
    let (_, vz) = t.kernel_direction().ok_or(Error::NotReduced)?;
    let oriented = if vz.is_zero() { t.swapped() } else { t.clone() };
    let mu = milnor_fulton(&oriented)?;
    let n = 2 * mu + 12;
    let mut found: Vec<(LocalFoliation, SeparatrixSeries)> = Vec::new();
    if let Some(s) = crate::separatrix::axis_y_separatrix(&oriented, n) {
        found.push((oriented.clone(), s));
    }
    for jet in graph_jet_candidates(&oriented, mu + 2) {
        if let Ok(s) = solve_separatrix(&oriented, &jet, n) {
            if !found.iter().any(|(_, t0)| t0.h == s.h) {
                found.push((oriented.clone(), s));
            }
        }
    }
    Ok(found)
}

pub use crate::separatrix::contact_order;

// ---------------------------------------------------------------------------
// Singular census
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SingularPoint {
    /// Projective coordinates, scaled so the first nonzero entry is 1.
    pub coordinates: [Rational; 3],
    pub chart: Chart,
    pub multiplicity: usize,
    pub milnor: usize,
    pub linear_class: LinearClass,
    /// (trace, determinant) of the linear part of the dual vector field.
    pub eigen_data: (Rational, Rational),
    /// The germ translated to the origin, ready for local analysis.
    pub germ: LocalFoliation,
}

#[derive(Debug, Clone)]
pub struct SingularCensus {
    pub points: Vec<SingularPoint>,
    pub milnor_mass_found: usize,
    pub milnor_mass_expected: usize,
    pub complete: bool,
}

/// All singular points with rational projective coordinates, with Milnor
/// numbers; completeness is certified by mass accounting against `d^2+d+1`.
pub fn singular_points(f: &ProjFoliation) -> Result<SingularCensus> {
    let d = f.degree();
    let expected = d * d + d + 1;
    let mut points: Vec<SingularPoint> = Vec::new();

    // chart x = 1 covers every point with x != 0
    let lx = restrict_to_chart(f, Chart::X1);
    for (y0, z0) in common_rational_zeros(&lx.a, &lx.b)? {
        points.push(analyze_point(&lx, Chart::X1, (y0, z0))?);
    }
    // chart y = 1 restricted to the line x = 0
    let ly = restrict_to_chart(f, Chart::Y1);
    let a0 = ly.a.eval_partial(&[(Var::Y, Rational::zero())]);
    let b0 = ly.b.eval_partial(&[(Var::Y, Rational::zero())]);
    for z0 in common_univariate_roots(&a0, &b0)? {
        points.push(analyze_point(&ly, Chart::Y1, (Rational::zero(), z0))?);
    }
    // the single remaining point (0:0:1)
    let at_001 = [
        (Var::X, Rational::zero()),
        (Var::Y, Rational::zero()),
        (Var::Z, Rational::one()),
    ];
    let singular_at_001 = f.coeffs().iter().all(|p| p.eval_partial(&at_001).is_zero());
    if singular_at_001 {
        let lz = restrict_to_chart(f, Chart::Z1);
        points.push(analyze_point(
            &lz,
            Chart::Z1,
            (Rational::zero(), Rational::zero()),
        )?);
    }

    let mass: usize = points.iter().map(|p| p.milnor).sum();
    Ok(SingularCensus {
        points,
        milnor_mass_found: mass,
        milnor_mass_expected: expected,
        complete: mass == expected,
    })
}

fn analyze_point(
    chart_form: &LocalFoliation,
    chart: Chart,
    p: (Rational, Rational),
) -> Result<SingularPoint> {
    let germ = chart_form
        .clone()
        .with_base_point(p.clone())
        .translated_to_origin();
    let multiplicity = germ.multiplicity();
    let milnor = milnor_fulton(&germ)?;
    let linear_class = classify_linear(&germ);
    let eigen_data = germ.linear_part();
    let coordinates = normalize_proj(chart.embed(&p).expect("named chart"));
    debug_assert!(milnor >= multiplicity);
    Ok(SingularPoint {
        coordinates,
        chart,
        multiplicity,
        milnor,
        linear_class,
        eigen_data,
        germ,
    })
}

fn normalize_proj(mut c: [Rational; 3]) -> [Rational; 3] {
    let lead = c.iter().find(|x| !x.is_zero()).cloned();
    if let Some(l) = lead {
        for x in &mut c {
            *x = &*x / &l;
        }
    }
    c
}

/// All common zeros with rational coordinates of two coprime polynomials in
/// (y, z): eliminate y by resultant, back-substitute, take the gcd.
pub fn common_rational_zeros(a: &MultiPoly, b: &MultiPoly) -> Result<Vec<(Rational, Rational)>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::NonIsolatedSingularity);
    }
    if !poly_gcd(a, b).is_constant() {
        return Err(Error::NonIsolatedSingularity);
    }
    let dya = a.degree_in(Var::Y).unwrap_or(0);
    let dyb = b.degree_in(Var::Y).unwrap_or(0);
    if dya == 0 && dyb == 0 {
        // both univariate in z and coprime: no common zeros
        return Ok(vec![]);
    }
    let r = if dya == 0 {
        a.clone()
    } else if dyb == 0 {
        b.clone()
    } else {
        resultant(a, b, Var::Y)
    };
    if r.is_zero() {
        return Err(Error::NonIsolatedSingularity);
    }
    let mut out = Vec::new();
    if r.is_constant() {
        return Ok(out);
    }
    let (zroots, _) = rational_roots(&r, Var::Z);
    for (z0, _) in zroots {
        let fa = a.eval_partial(&[(Var::Z, z0.clone())]);
        let fb = b.eval_partial(&[(Var::Z, z0.clone())]);
        let g = match (fa.is_zero(), fb.is_zero()) {
            (true, true) => return Err(Error::NonIsolatedSingularity),
            (true, false) => fb,
            (false, true) => fa,
            (false, false) => poly_gcd(&fa, &fb),
        };
        if g.is_constant() {
            continue;
        }
        let (yroots, _) = rational_roots(&g, Var::Y);
        for (y0, _) in yroots {
            out.push((y0, z0.clone()));
        }
    }
    Ok(out)
}

fn common_univariate_roots(a: &MultiPoly, b: &MultiPoly) -> Result<Vec<Rational>> {
    let g = match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::NonIsolatedSingularity),
        (true, false) => b.clone(),
        (false, true) => a.clone(),
        (false, false) => poly_gcd(a, b),
    };
    if g.is_constant() {
        return Ok(vec![]);
    }
    let (roots, _) = rational_roots(&g, Var::Z);
    Ok(roots.into_iter().map(|(r, _)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_form, parse_poly};
    use crate::poly::{rat, rat_int};

    fn proj(s: &str) -> ProjFoliation {
        let c = parse_form(s).unwrap();
        ProjFoliation::new(
            c[Var::X.index()].clone(),
            c[Var::Y.index()].clone(),
            c[Var::Z.index()].clone(),
        )
        .unwrap()
    }

    fn local(a: &str, b: &str) -> LocalFoliation {
        LocalFoliation::new(Chart::Custom, parse_poly(a).unwrap(), parse_poly(b).unwrap())
            .unwrap()
    }

    #[test]
    fn fulton_transverse_lines() {
        assert_eq!(milnor_fulton(&local("z", "y")).unwrap(), 1);
    }

    #[test]
    fn fulton_non_isolated_errors() {
        let a = parse_poly("y*z").unwrap();
        let b = parse_poly("y*(y+z)").unwrap();
        assert_eq!(fulton_origin(&a, &b), Err(Error::NonIsolatedSingularity));
    }

    #[test]
    fn colength_simple_cases() {
        let origin = (Rational::zero(), Rational::zero());
        assert_eq!(
            colength(&[parse_poly("y").unwrap(), parse_poly("z").unwrap()], &origin).unwrap(),
            1
        );
        // (y + a2 z^2 + a1 z^3, z^7) has colength 7 for any rational a_i
        let g1 = parse_poly("y + 2/3*z^2 - 5*z^3").unwrap();
        let g2 = parse_poly("z^7").unwrap();
        assert_eq!(colength(&[g1, g2], &origin).unwrap(), 7);
        // a unit has colength 0
        assert_eq!(
            colength(&[parse_poly("1 + y").unwrap()], &origin).unwrap(),
            0
        );
        // non-finite colength is reported
        assert!(matches!(
            colength_capped(&[parse_poly("y").unwrap()], &origin, 30),
            Err(Error::NotFinite { .. })
        ));
    }

    #[test]
    fn fulton_agrees_with_colength() {
        let origin = (Rational::zero(), Rational::zero());
        let cases = [
            ("z", "y"),
            ("z - y^2", "y^3"),
            ("y^2 - z^3", "z^2 - y^5"),
            ("y*z - z^3 - y^4", "y^3*z - y + z^2"),
        ];
        for (a, b) in cases {
            let l = local(a, b);
            let mu = milnor_fulton(&l).unwrap();
            let c = colength(&[l.a.clone(), l.b.clone()], &origin).unwrap();
            assert_eq!(mu, c, "case ({a}, {b})");
        }
    }

    #[test]
    fn tjurina_examples() {
        let origin = (Rational::zero(), Rational::zero());
        // smooth curve
        assert_eq!(tjurina(&parse_poly("y - z^2").unwrap(), &origin).unwrap(), 0);
        // cusp
        assert_eq!(
            tjurina(&parse_poly("y^2 - z^3").unwrap(), &origin).unwrap(),
            2
        );
        // two smooth branches with contact 2: tau = 2m - 1 = 3
        assert_eq!(
            tjurina(&parse_poly("y*(y - z^2)").unwrap(), &origin).unwrap(),
            3
        );
    }

    #[test]
    fn ideal_member_generator_case() {
        let origin = (Rational::zero(), Rational::zero());
        let g1 = parse_poly("y + z^2 + z^3").unwrap();
        let g2 = parse_poly("z^9").unwrap();
        let gens = [g1.clone(), g2];
        assert!(ideal_member(&g1, &gens, &origin).unwrap());
        assert!(!ideal_member(&parse_poly("y").unwrap(), &gens, &origin).unwrap());
    }

    #[test]
    fn cs_of_hyperbolic_separatrices() {
        // lambda1 z dy + lambda2 y dz with (2,3): CS(z=0) = -2/3, CS(y=0) = -3/2
        let l = local("2*z", "3*y");
        assert_eq!(cs_of_axis(&l, Axis::ZZero).unwrap(), rat(-2, 3));
        assert_eq!(cs_of_axis(&l, Axis::YZero).unwrap(), rat(-3, 2));
        assert_eq!(gsv_of_axis(&l, Axis::ZZero).unwrap(), 1);
    }

    #[test]
    fn dulac_form_indices() {
        // z^(k+1) dy - y(1 + lambda z^k) dz at (k, lambda) = (2, 5)
        let l = local("z^3", "-y*(1 + 5*z^2)");
        assert_eq!(cs_of_axis(&l, Axis::ZZero).unwrap(), rat_int(0));
        assert_eq!(cs_of_axis(&l, Axis::YZero).unwrap(), rat_int(5));
        assert_eq!(gsv_of_axis(&l, Axis::ZZero).unwrap(), 1);
        assert_eq!(gsv_of_axis(&l, Axis::YZero).unwrap(), 3);
        // saddle-node data: milnor = k+1 = 3, weak residue 5
        let (k, lambda) = saddle_node_data(&l).unwrap();
        assert_eq!(k, 2);
        assert_eq!(lambda, rat_int(5));
        // BB = 2k + 2 + lambda = 11
        assert_eq!(bb_index_reduced(&l).unwrap(), rat_int(11));
    }

    #[test]
    fn bb_hyperbolic() {
        // dual field of z dy + y dz is y d/dy - z d/dz: eigenvalues (1,-1)
        let l = local("z", "y");
        assert_eq!(bb_index_reduced(&l).unwrap(), rat_int(0));
    }

    #[test]
    fn census_euler_projectivization() {
        let f = proj("-(y^2*z + x*y*(z - y))*dx + x^2*(z - y)*dy + x*y^2*dz");
        let c = singular_points(&f).unwrap();
        assert!(c.complete);
        assert_eq!(c.points.len(), 3);
        assert_eq!(c.milnor_mass_expected, 7);
        let mut coords: Vec<String> = c
            .points
            .iter()
            .map(|p| {
                format!(
                    "({}:{}:{})",
                    p.coordinates[0], p.coordinates[1], p.coordinates[2]
                )
            })
            .collect();
        coords.sort();
        assert_eq!(coords, vec!["(0:0:1)", "(0:1:0)", "(1:0:0)"]);
    }

    #[test]
    fn census_mass_accounting_is_consistent() {
        let f = proj("-x*z*dx + y*z*dy + (x^2 - y^2)*dz");
        let c = singular_points(&f).unwrap();
        assert_eq!(c.complete, c.milnor_mass_found == c.milnor_mass_expected);
        assert!(!c.points.is_empty());
    }
}
