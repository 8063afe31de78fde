//! Point blow-ups, the reduction-of-singularities driver, divisor
//! bookkeeping, and the generalized-curve / second-type predicates.
//!
//! Both standard charts of a blow-up are written in the fixed local
//! variables (y, z): chart `(u, uv)` substitutes `(y, z) -> (y, y z)` and
//! carries the exceptional line as `y = 0`; chart `(uv, v)` substitutes
//! `(y, z) -> (y z, z)` and carries it as `z = 0`. Divisor components through
//! any singular point are therefore always coordinate axes.

use crate::error::Error;
use crate::foliation::LocalFoliation;
use crate::local::{
    bb_index_reduced, classify_linear, cs_of_axis, eigen_ratio_positive_rational, milnor_fulton,
    Axis, LinearClass,
};
use crate::poly::{MultiPoly, Rational, Var};
use crate::roots::rational_roots;
use crate::Result;
use num_bigint::BigInt;
use num_traits::Zero;

pub const DEFAULT_MAX_DEPTH: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupChart {
    /// `(y, z) -> (y, y z)`; exceptional line `y = 0`
    UUv,
    /// `(y, z) -> (y z, z)`; exceptional line `z = 0`
    UvV,
}

impl BlowupChart {
    pub fn label(self) -> &'static str {
        match self {
            BlowupChart::UUv => "(u,uv)",
            BlowupChart::UvV => "(uv,v)",
        }
    }

    pub fn exceptional_axis(self) -> Axis {
        match self {
            BlowupChart::UUv => Axis::YZero,
            BlowupChart::UvV => Axis::ZZero,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BlowupChartForm {
    pub chart_label: BlowupChart,
    pub form: LocalFoliation,
    /// Power of the exceptional coordinate divided out: multiplicity `m` in
    /// the non-dicritical case, `m + 1` in the dicritical one.
    pub divisor_exponent: usize,
    pub dicritical: bool,
}

/// Blow up the origin, returning the two standard chart forms.
pub fn blowup(l: &LocalFoliation) -> Result<(BlowupChartForm, BlowupChartForm)> {
    let t = l.translated_to_origin();
    if !t.singular_at_origin() {
        return Err(Error::RegularPoint);
    }
    let m = t.multiplicity();
    // tangent-cone test: dicritical iff y*a_m + z*b_m vanishes identically
    let am = t.a.homogeneous_part(m);
    let bm = t.b.homogeneous_part(m);
    let tangent = &(&MultiPoly::var(Var::Y) * &am) + &(&MultiPoly::var(Var::Z) * &bm);
    let dicritical = tangent.is_zero();
    let e = if dicritical { m + 1 } else { m };

    // chart (u, uv): y -> y, z -> y z
    let sub_a = [(Var::Z, &MultiPoly::var(Var::Y) * &MultiPoly::var(Var::Z))];
    let a_s = t.a.substitute(&sub_a);
    let b_s = t.b.substitute(&sub_a);
    let a_chart = &a_s + &(&MultiPoly::var(Var::Z) * &b_s);
    let b_chart = &MultiPoly::var(Var::Y) * &b_s;
    let ye = MultiPoly::var(Var::Y).pow(e);
    let form_a = LocalFoliation::new(
        crate::foliation::Chart::Custom,
        a_chart.div_exact(&ye).expect("divisor exponent divides"),
        b_chart.div_exact(&ye).expect("divisor exponent divides"),
    )?;

    // chart (uv, v): y -> y z, z -> z
    let sub_b = [(Var::Y, &MultiPoly::var(Var::Y) * &MultiPoly::var(Var::Z))];
    let a_s = t.a.substitute(&sub_b);
    let b_s = t.b.substitute(&sub_b);
    let a_chart2 = &MultiPoly::var(Var::Z) * &a_s;
    let b_chart2 = &(&MultiPoly::var(Var::Y) * &a_s) + &b_s;
    let ze = MultiPoly::var(Var::Z).pow(e);
    let form_b = LocalFoliation::new(
        crate::foliation::Chart::Custom,
        a_chart2.div_exact(&ze).expect("divisor exponent divides"),
        b_chart2.div_exact(&ze).expect("divisor exponent divides"),
    )?;

    Ok((
        BlowupChartForm {
            chart_label: BlowupChart::UUv,
            form: form_a,
            divisor_exponent: e,
            dicritical,
        },
        BlowupChartForm {
            chart_label: BlowupChart::UvV,
            form: form_b,
            divisor_exponent: e,
            dicritical,
        },
    ))
}

// ---------------------------------------------------------------------------
// Reduction tree
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafClass {
    HyperbolicNonresonant,
    /// nonzero eigenvalues with a rational, non-positive ratio
    Resonant,
    SaddleNode {
        k: usize,
        weak_in_divisor: bool,
    },
    Unresolved(UnresolvedReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnresolvedReason {
    DepthCap,
    IrrationalDirections,
}

impl LeafClass {
    pub fn describe(&self) -> String {
        match self {
            LeafClass::HyperbolicNonresonant => "hyperbolic".to_string(),
            LeafClass::Resonant => "resonant".to_string(),
            LeafClass::SaddleNode { k, weak_in_divisor } => format!(
                "saddle-node(k={k}, weak {})",
                if *weak_in_divisor {
                    "in divisor"
                } else {
                    "transversal"
                }
            ),
            LeafClass::Unresolved(UnresolvedReason::DepthCap) => "unresolved(depth)".to_string(),
            LeafClass::Unresolved(UnresolvedReason::IrrationalDirections) => {
                "unresolved(irrational point)".to_string()
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum NodeStatus {
    /// blown up; the named component was created at this point
    Blown { component: usize, dicritical: bool },
    Leaf(LeafClass),
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub germ: LocalFoliation,
    /// Divisor components through this point and the axis each one occupies.
    pub axes: Vec<(usize, Axis)>,
    pub lineage: String,
    pub depth: usize,
    pub multiplicity: usize,
    pub milnor: usize,
    pub eigen: (Rational, Rational),
    pub status: NodeStatus,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DivisorComponent {
    /// 1-based creation index: E_1, E_2, ...
    pub id: usize,
    pub self_intersection: i64,
    pub dicritical: bool,
    pub birth_lineage: String,
}

#[derive(Debug, Clone)]
pub struct ReductionTree {
    pub nodes: Vec<TreeNode>,
    pub components: Vec<DivisorComponent>,
    pub root: usize,
    pub depth_cap: usize,
    pub has_unresolved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypePredicates {
    pub is_generalized_curve: bool,
    pub is_second_type: bool,
}

/// Repeatedly blow up every non-reduced rational singular point until all
/// leaves are reduced or the depth cap is reached. The tree is returned even
/// when unresolved leaves remain; they are flagged.
pub fn reduce(l: &LocalFoliation, max_depth: usize) -> Result<ReductionTree> {
    let germ = l.translated_to_origin();
    if !germ.singular_at_origin() {
        return Err(Error::RegularPoint);
    }
    let mut tree = ReductionTree {
        nodes: Vec::new(),
        components: Vec::new(),
        root: 0,
        depth_cap: max_depth,
        has_unresolved: false,
    };
    let root = push_node(&mut tree, None, germ, vec![], "origin".to_string(), 0)?;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    while let Some(id) = queue.pop_front() {
        match classify_node(&tree.nodes[id]) {
            Some(leaf) => {
                if matches!(leaf, LeafClass::Unresolved(_)) {
                    tree.has_unresolved = true;
                }
                tree.nodes[id].status = NodeStatus::Leaf(leaf);
            }
            None => {
                if tree.nodes[id].depth >= max_depth {
                    tree.has_unresolved = true;
                    tree.nodes[id].status =
                        NodeStatus::Leaf(LeafClass::Unresolved(UnresolvedReason::DepthCap));
                    continue;
                }
                let children = blow_up_node(&mut tree, id)?;
                for c in children {
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(tree)
}

fn push_node(
    tree: &mut ReductionTree,
    parent: Option<usize>,
    germ: LocalFoliation,
    axes: Vec<(usize, Axis)>,
    lineage: String,
    depth: usize,
) -> Result<usize> {
    let id = tree.nodes.len();
    let multiplicity = germ.multiplicity();
    let milnor = milnor_fulton(&germ)?;
    let eigen = germ.linear_part();
    tree.nodes.push(TreeNode {
        id,
        parent,
        germ,
        axes,
        lineage,
        depth,
        multiplicity,
        milnor,
        eigen,
        status: NodeStatus::Leaf(LeafClass::Unresolved(UnresolvedReason::DepthCap)),
        children: vec![],
    });
    if let Some(p) = parent {
        tree.nodes[p].children.push(id);
    }
    Ok(id)
}

/// `Some(leaf)` when the node is reduced, `None` when it needs a blow-up.
fn classify_node(node: &TreeNode) -> Option<LeafClass> {
    let (tr, det) = node.eigen.clone();
    match classify_linear(&node.germ) {
        LinearClass::SaddleNode => {
            let weak = node
                .germ
                .kernel_direction()
                .expect("saddle-node has a kernel direction");
            let weak_in_divisor = node.axes.iter().any(|(_, axis)| match axis {
                // the axis y=0 is the z-coordinate line: tangent (0,1)
                Axis::YZero => weak.0.is_zero(),
                Axis::ZZero => weak.1.is_zero(),
            });
            Some(LeafClass::SaddleNode {
                k: node.milnor - 1,
                weak_in_divisor,
            })
        }
        LinearClass::HyperbolicNonresonant => Some(LeafClass::HyperbolicNonresonant),
        LinearClass::HyperbolicResonant => {
            if eigen_ratio_positive_rational(&tr, &det) {
                None // keep blowing up
            } else {
                Some(LeafClass::Resonant)
            }
        }
        LinearClass::Nilpotent | LinearClass::ZeroLinearPart => None,
    }
}

fn blow_up_node(tree: &mut ReductionTree, id: usize) -> Result<Vec<usize>> {
    let germ = tree.nodes[id].germ.clone();
    let axes = tree.nodes[id].axes.clone();
    let depth = tree.nodes[id].depth;
    let lineage = tree.nodes[id].lineage.clone();
    let (chart_a, chart_b) = blowup(&germ)?;

    let comp_id = tree.components.len() + 1;
    tree.components.push(DivisorComponent {
        id: comp_id,
        self_intersection: -1,
        dicritical: chart_a.dicritical,
        birth_lineage: lineage.clone(),
    });
    // every component through the blown-up point loses one self-intersection
    for (cid, _) in &axes {
        tree.components[*cid - 1].self_intersection -= 1;
    }
    tree.nodes[id].status = NodeStatus::Blown {
        component: comp_id,
        dicritical: chart_a.dicritical,
    };

    let mut children = Vec::new();

    // chart (u,uv): singular points sit on the exceptional line y = 0
    let fa = &chart_a.form;
    let pa = fa.a.eval_partial(&[(Var::Y, Rational::zero())]);
    let pb = fa.b.eval_partial(&[(Var::Y, Rational::zero())]);
    let (v_roots, lost) = roots_on_divisor(&pa, &pb)?;
    if lost {
        tree.has_unresolved = true;
        let dummy = push_node(
            tree,
            Some(id),
            fa.clone(),
            vec![(comp_id, Axis::YZero)],
            format!("{lineage}; (u,uv) at non-rational direction"),
            depth + 1,
        )?;
        tree.nodes[dummy].status =
            NodeStatus::Leaf(LeafClass::Unresolved(UnresolvedReason::IrrationalDirections));
        children.push(dummy);
    }
    for v0 in v_roots {
        let shifted = LocalFoliation {
            chart: crate::foliation::Chart::Custom,
            a: fa.a.shift(Var::Z, &v0),
            b: fa.b.shift(Var::Z, &v0),
            base_point: (Rational::zero(), Rational::zero()),
        };
        let mut child_axes = vec![(comp_id, Axis::YZero)];
        if v0.is_zero() {
            for (cid, axis) in &axes {
                if *axis == Axis::ZZero {
                    child_axes.push((*cid, Axis::ZZero));
                }
            }
        }
        let lin = format!("{lineage}; (u,uv) at v={v0}");
        let child = push_node(tree, Some(id), shifted, child_axes, lin, depth + 1)?;
        children.push(child);
    }

    // chart (uv,v): only the origin is new (the direction (0:1))
    let fb = &chart_b.form;
    if fb.singular_at_origin() {
        let mut child_axes = vec![(comp_id, Axis::ZZero)];
        for (cid, axis) in &axes {
            if *axis == Axis::YZero {
                child_axes.push((*cid, Axis::YZero));
            }
        }
        let lin = format!("{lineage}; (uv,v) at u=0");
        let child = push_node(tree, Some(id), fb.clone(), child_axes, lin, depth + 1)?;
        children.push(child);
    }
    Ok(children)
}

/// Rational roots shared by the two divisor restrictions, plus a flag when
/// non-rational common roots exist.
fn roots_on_divisor(pa: &MultiPoly, pb: &MultiPoly) -> Result<(Vec<Rational>, bool)> {
    let g = match (pa.is_zero(), pb.is_zero()) {
        (true, true) => return Err(Error::NonIsolatedSingularity),
        (true, false) => pb.clone(),
        (false, true) => pa.clone(),
        (false, false) => crate::gcd::poly_gcd(pa, pb),
    };
    if g.is_constant() {
        return Ok((vec![], false));
    }
    let (roots, complete) = rational_roots(&g, Var::Z);
    Ok((roots.into_iter().map(|(r, _)| r).collect(), !complete))
}

/// Generalized-curve and second-type predicates of a fully reduced tree.
pub fn type_predicates(tree: &ReductionTree) -> Result<TypePredicates> {
    if tree.has_unresolved {
        return Err(Error::Unresolved);
    }
    let mut generalized_curve = true;
    let mut second_type = true;
    for node in &tree.nodes {
        if let NodeStatus::Leaf(LeafClass::SaddleNode { weak_in_divisor, .. }) = &node.status {
            generalized_curve = false;
            if *weak_in_divisor {
                second_type = false;
            }
        }
    }
    if generalized_curve {
        debug_assert!(second_type);
    }
    Ok(TypePredicates {
        is_generalized_curve: generalized_curve,
        is_second_type: second_type,
    })
}

/// Leaf nodes with their classes.
pub fn leaves(tree: &ReductionTree) -> Vec<(&TreeNode, &LeafClass)> {
    tree.nodes
        .iter()
        .filter_map(|n| match &n.status {
            NodeStatus::Leaf(c) => Some((n, c)),
            _ => None,
        })
        .collect()
}

/// Verify the multiplicity-drop relation `mu = v^2 - v - 1 + sum(mu_c)` for
/// one non-dicritical blow-up at the origin.
pub fn milnor_blowup_check(l: &LocalFoliation) -> Result<bool> {
    let germ = l.translated_to_origin();
    let mu = milnor_fulton(&germ)?;
    let nu = germ.multiplicity();
    let (chart_a, chart_b) = blowup(&germ)?;
    if chart_a.dicritical {
        return Err(Error::InvalidParameters(
            "the blow-up is dicritical; the relation needs a non-dicritical one".into(),
        ));
    }
    let pa = chart_a.form.a.eval_partial(&[(Var::Y, Rational::zero())]);
    let pb = chart_a.form.b.eval_partial(&[(Var::Y, Rational::zero())]);
    let (v_roots, lost) = roots_on_divisor(&pa, &pb)?;
    if lost {
        return Err(Error::InvalidParameters(
            "the blow-up has singular points at non-rational directions".into(),
        ));
    }
    let mut mass = 0usize;
    for v0 in v_roots {
        let shifted = LocalFoliation {
            chart: crate::foliation::Chart::Custom,
            a: chart_a.form.a.shift(Var::Z, &v0),
            b: chart_a.form.b.shift(Var::Z, &v0),
            base_point: (Rational::zero(), Rational::zero()),
        };
        mass += milnor_fulton(&shifted)?;
    }
    if chart_b.form.singular_at_origin() {
        mass += milnor_fulton(&chart_b.form)?;
    }
    Ok(mu + 1 == nu * nu - nu + mass)
}

/// Sum of the CS indices of an invariant divisor component at all leaf
/// singular points lying on it; must equal the tracked self-intersection.
pub fn divisor_cs_sum(tree: &ReductionTree, component: usize) -> Result<Rational> {
    let comp = tree
        .components
        .get(
            component
                .checked_sub(1)
                .ok_or_else(|| Error::InvalidParameters("component ids are 1-based".into()))?,
        )
        .ok_or_else(|| Error::InvalidParameters(format!("no component E_{component}")))?;
    if comp.dicritical {
        return Err(Error::InvalidParameters(format!(
            "component E_{component} is dicritical (not invariant)"
        )));
    }
    let mut sum = Rational::zero();
    for node in &tree.nodes {
        let NodeStatus::Leaf(class) = &node.status else {
            continue;
        };
        if matches!(class, LeafClass::Unresolved(_)) {
            return Err(Error::Unresolved);
        }
        for (cid, axis) in &node.axes {
            if *cid == component {
                sum += cs_of_axis(&node.germ, *axis)?;
            }
        }
    }
    Ok(sum)
}

/// Baum-Bott index of an arbitrary isolated singularity, computed through
/// the reduction: a point with nonzero-determinant linear part contributes
/// `2 + (tr^2 - 2 det)/det`, a saddle-node `2k + 2 + lambda`, and a blow-up
/// with divisor exponent `e` satisfies `BB(p) = sum BB(children) + e^2`.
pub fn bb_via_reduction(l: &LocalFoliation, max_depth: usize) -> Result<Rational> {
    let germ = l.translated_to_origin();
    if !germ.singular_at_origin() {
        return Err(Error::RegularPoint);
    }
    bb_recurse(&germ, max_depth)
}

fn bb_recurse(germ: &LocalFoliation, fuel: usize) -> Result<Rational> {
    match classify_linear(germ) {
        LinearClass::SaddleNode
        | LinearClass::HyperbolicNonresonant
        | LinearClass::HyperbolicResonant => {
            // the trace/determinant residue holds for any nonzero determinant
            bb_index_reduced(germ)
        }
        LinearClass::Nilpotent | LinearClass::ZeroLinearPart => {
            if fuel == 0 {
                return Err(Error::DepthExceeded { cap: 0 });
            }
            let (chart_a, chart_b) = blowup(germ)?;
            let e = chart_a.divisor_exponent;
            let pa = chart_a.form.a.eval_partial(&[(Var::Y, Rational::zero())]);
            let pb = chart_a.form.b.eval_partial(&[(Var::Y, Rational::zero())]);
            let (v_roots, lost) = roots_on_divisor(&pa, &pb)?;
            if lost {
                return Err(Error::InvalidParameters(
                    "singular points at non-rational directions".into(),
                ));
            }
            let mut sum = Rational::from(BigInt::from((e * e) as i64));
            for v0 in v_roots {
                let shifted = LocalFoliation {
                    chart: crate::foliation::Chart::Custom,
                    a: chart_a.form.a.shift(Var::Z, &v0),
                    b: chart_a.form.b.shift(Var::Z, &v0),
                    base_point: (Rational::zero(), Rational::zero()),
                };
                sum += bb_recurse(&shifted, fuel - 1)?;
            }
            if chart_b.form.singular_at_origin() {
                sum += bb_recurse(&chart_b.form, fuel - 1)?;
            }
            Ok(sum)
        }
    }
}

/// ASCII rendering of the tree for terminal output.
pub fn render_tree(tree: &ReductionTree) -> String {
    let mut out = String::new();
    render_node(tree, tree.root, "", true, &mut out);
    for c in &tree.components {
        out.push_str(&format!(
            "E_{} self-intersection {}{}\n",
            c.id,
            c.self_intersection,
            if c.dicritical { " (dicritical)" } else { "" }
        ));
    }
    out
}

fn render_node(tree: &ReductionTree, id: usize, prefix: &str, last: bool, out: &mut String) {
    let node = &tree.nodes[id];
    let tag = match &node.status {
        NodeStatus::Blown {
            component,
            dicritical,
        } => format!(
            "blown up -> E_{component}{}",
            if *dicritical { " (dicritical)" } else { "" }
        ),
        NodeStatus::Leaf(c) => c.describe(),
    };
    let axes: Vec<String> = node
        .axes
        .iter()
        .map(|(cid, axis)| format!("E_{cid}@{}", axis.name()))
        .collect();
    let axes_str = if axes.is_empty() {
        String::new()
    } else {
        format!(" on [{}]", axes.join(","))
    };
    let connector = if prefix.is_empty() {
        ""
    } else if last {
        "`-- "
    } else {
        "|-- "
    };
    out.push_str(&format!(
        "{prefix}{connector}#{id} m={} mu={} {tag}{axes_str}\n",
        node.multiplicity, node.milnor
    ));
    let child_prefix = if prefix.is_empty() {
        String::new()
    } else if last {
        format!("{prefix}    ")
    } else {
        format!("{prefix}|   ")
    };
    let n = node.children.len();
    for (i, c) in node.children.iter().enumerate() {
        render_node(tree, *c, &child_prefix, i + 1 == n, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::Chart;
    use crate::parser::parse_poly;
    use crate::poly::rat_int;

    fn local(a: &str, b: &str) -> LocalFoliation {
        LocalFoliation::new(Chart::Custom, parse_poly(a).unwrap(), parse_poly(b).unwrap())
            .unwrap()
    }

    #[test]
    fn radial_germ_is_dicritical() {
        // z dy - y dz: tangent cone y z + z (-y) = 0
        let l = local("z", "-y");
        let (a, b) = blowup(&l).unwrap();
        assert!(a.dicritical && b.dicritical);
        assert_eq!(a.divisor_exponent, 2); // m + 1 with m = 1
    }

    #[test]
    fn non_dicritical_blowup_keeps_divisor_invariant() {
        let l = local("2*z", "3*y");
        let (a, b) = blowup(&l).unwrap();
        assert!(!a.dicritical);
        assert_eq!(a.divisor_exponent, 1);
        // chart (u,uv): y = 0 must be invariant, i.e. y | dz-coefficient
        assert!(a
            .form
            .b
            .eval_partial(&[(Var::Y, Rational::zero())])
            .is_zero());
        // chart (uv,v): z = 0 invariant, i.e. z | dy-coefficient
        assert!(b
            .form
            .a
            .eval_partial(&[(Var::Z, Rational::zero())])
            .is_zero());
    }

    #[test]
    fn blowup_regular_point_errors() {
        let l = local("1 + y", "z");
        assert!(matches!(blowup(&l), Err(Error::RegularPoint)));
    }

    #[test]
    fn chart_forms_agree_on_overlap() {
        // transition (y_A, z_A) = (y_B z_B, 1/y_B): the pulled-back chart-A
        // form must be proportional to the chart-B form after clearing
        // denominators. dy_A = z dy + y dz, dz_A = -dy/y^2.
        let cases = [
            local("2*z", "3*y"),
            local("z - y^2", "y^3 - z^2"),
            local("z + y^2 + y*z", "y - z^3"),
        ];
        for l in cases {
            let (ca, cb) = blowup(&l).unwrap();
            let dmax = ca
                .form
                .a
                .degree_in(Var::Z)
                .unwrap_or(0)
                .max(ca.form.b.degree_in(Var::Z).unwrap_or(0));
            // clear(p) = y^dmax * p(y z, 1/y), a polynomial
            let clear = |p: &MultiPoly| -> MultiPoly {
                let sub = p.substitute(&[
                    (Var::Y, &MultiPoly::var(Var::Y) * &MultiPoly::var(Var::Z)),
                    (Var::Z, MultiPoly::var(Var::U)),
                ]);
                let mut out = MultiPoly::zero();
                for (m, c) in sub.terms() {
                    let k = m.exp(Var::U) as usize;
                    let mut mm = *m;
                    mm.0[Var::U.index()] = 0;
                    mm.0[Var::Y.index()] += (dmax - k) as u16;
                    out.add_term(mm, c.clone());
                }
                out
            };
            let a_t = clear(&ca.form.a);
            let b_t = clear(&ca.form.b);
            let y = MultiPoly::var(Var::Y);
            let z = MultiPoly::var(Var::Z);
            // times y^2: dy-coefficient z y^2 a_t - b_t, dz-coefficient y^3 a_t
            let y2 = &y * &y;
            let dy_coeff = &(&(&z * &y2) * &a_t) - &b_t;
            let dz_coeff = &(&y2 * &y) * &a_t;
            let cross = &(&dy_coeff * &cb.form.b) - &(&dz_coeff * &cb.form.a);
            assert!(cross.is_zero(), "transition mismatch for {}", l);
        }
    }

    #[test]
    fn reduce_hyperbolic_is_single_leaf() {
        let l = local("2*z", "3*y");
        let tree = reduce(&l, 8).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(matches!(
            tree.nodes[0].status,
            NodeStatus::Leaf(LeafClass::Resonant)
        ));
        let p = type_predicates(&tree).unwrap();
        assert!(p.is_generalized_curve && p.is_second_type);
    }

    #[test]
    fn reduce_nilpotent_normal_form() {
        // (y + z^2) dy - z^13 dz (m = 2 family): over the last divisor a
        // corner, a resonant point with eigenvalues (-1, m), and a saddle-node
        let l = local("y + z^2", "-z^13");
        let tree = reduce(&l, 10).unwrap();
        let p = type_predicates(&tree).unwrap();
        assert!(!p.is_generalized_curve);
        assert!(p.is_second_type, "weak separatrix must be transversal");
        let leaf_classes: Vec<&LeafClass> = leaves(&tree).iter().map(|(_, c)| *c).collect();
        let saddles = leaf_classes
            .iter()
            .filter(|c| matches!(c, LeafClass::SaddleNode { .. }))
            .count();
        assert_eq!(saddles, 1);
        // a resonant point with eigenvalues (-1, m): m tr^2 == -(m-1)^2 det
        let m = 2i64;
        let found = leaves(&tree).iter().any(|(n, c)| {
            **c == LeafClass::Resonant && {
                let (tr, det) = n.eigen.clone();
                &tr * &tr * rat_int(m) == -det * rat_int((m - 1) * (m - 1))
            }
        });
        assert!(found, "expected a resonant leaf with eigenvalues (-1, m)");
    }

    #[test]
    fn milnor_relation_on_normal_form() {
        let l = local("y + z^2", "-z^13");
        assert!(milnor_blowup_check(&l).unwrap());
    }

    #[test]
    fn divisor_cs_sum_matches_self_intersection() {
        let cases = [
            local("2*z", "3*y"),
            local("z + y^2", "y + z^3"),
            local("y + z^2", "-z^13"),
        ];
        for l in cases {
            let tree = reduce(&l, 10).unwrap();
            for comp in &tree.components {
                if comp.dicritical {
                    continue;
                }
                let s = divisor_cs_sum(&tree, comp.id).unwrap();
                assert_eq!(
                    s,
                    Rational::from(BigInt::from(comp.self_intersection)),
                    "component E_{} of {}",
                    comp.id,
                    l
                );
            }
        }
    }

    #[test]
    fn bb_via_reduction_matches_direct_formula() {
        let l = local("2*z", "3*y");
        assert_eq!(
            bb_via_reduction(&l, 10).unwrap(),
            bb_index_reduced(&l).unwrap()
        );
        // nilpotent normal-form germ: the blow-up route must agree with the
        // two-separatrix route
        let g = local("y + z^2", "-z^13");
        let via_tree = bb_via_reduction(&g, 12).unwrap();
        let via_separatrices = bb_index_reduced(&g).unwrap();
        assert_eq!(via_tree, via_separatrices);
    }
}
