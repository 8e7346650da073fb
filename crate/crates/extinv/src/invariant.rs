//! Invariant spaces and generating invariants.
//!
//! Per-degree fixed spaces, the Reynolds averaging operator, a Molien-type
//! dimension oracle computed from exact characteristic polynomials (so it
//! is independent of the fixed-space computation it cross-checks), graded
//! subalgebra spans, and degreewise extraction of minimal algebra
//! generators with the degree bound `beta`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Ctx, SignRule, SkewPoly};
use crate::error::{Error, Result};
use crate::groups::{act, representation_matrix, FiniteMatrixGroup};
use crate::linalg::{MatrixQ, RowBasis};
use crate::rat::Rat;

/// Per-degree row bases of a graded subspace, each in coordinates of the
/// degree's graded basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    ctx: Ctx,
    components: BTreeMap<usize, RowBasis>,
}

impl GradedSubspace {
    pub fn new(ctx: &Ctx) -> Self {
        GradedSubspace { ctx: ctx.clone(), components: BTreeMap::new() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn insert(&mut self, d: usize, basis: RowBasis) {
        self.components.insert(d, basis);
    }

    pub fn component(&self, d: usize) -> Option<&RowBasis> {
        self.components.get(&d)
    }

    pub fn tracked_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn max_tracked_degree(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|(&d, b)| (d, b.dim())).collect()
    }
}

/// Homogeneous generators with their degrees; `beta` is the largest degree
/// present (0 for the empty set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<(usize, SkewPoly)>,
    beta: usize,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(usize, SkewPoly)>) -> Self {
        for (d, g) in &gens {
            debug_assert!(!g.is_zero(), "zero generator");
            debug_assert!(g.is_homogeneous_of(*d), "generator degree mismatch");
        }
        let beta = gens.iter().map(|(d, _)| *d).max().unwrap_or(0);
        GeneratorSet { gens, beta }
    }

    pub fn empty() -> Self {
        GeneratorSet { gens: Vec::new(), beta: 0 }
    }

    pub fn gens(&self) -> &[(usize, SkewPoly)] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.gens.iter().map(|(d, _)| *d).collect()
    }

    pub fn of_degree(&self, d: usize) -> impl Iterator<Item = &SkewPoly> {
        self.gens.iter().filter(move |(gd, _)| *gd == d).map(|(_, g)| g)
    }
}

/// Basis of the degree-`d` fixed space, as the joint kernel of
/// `rep(g) - I` over the group generators (generators suffice: a vector
/// fixed by the generators is fixed by every product).
pub fn fixed_space(group: &FiniteMatrixGroup, ctx: &Ctx, d: usize) -> Result<RowBasis> {
    if group.dim() != ctx.n() {
        return Err(Error::DimensionMismatch(format!(
            "group dimension {} vs {} variables",
            group.dim(),
            ctx.n()
        )));
    }
    let dim = ctx.graded_dim(d)?;
    let identity = MatrixQ::identity(dim);
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    for g in group.generator_matrices() {
        let rep = representation_matrix(g, ctx, d)?;
        let diff = rep.sub(&identity)?;
        stacked.extend(diff.row_iter().map(|r| r.to_vec()));
    }
    if stacked.is_empty() {
        return Ok(RowBasis::full(dim));
    }
    Ok(MatrixQ::from_rows(stacked, dim)?.kernel_basis())
}

/// Group-averaging Reynolds projection onto the invariants.
pub fn reynolds(group: &FiniteMatrixGroup, f: &SkewPoly) -> Result<SkewPoly> {
    let mut sum = SkewPoly::zero(f.ctx());
    for g in group.elements() {
        sum = sum.add(&act(g, f)?);
    }
    let scale = Rat::new(1.into(), (group.order() as i64).into());
    Ok(sum.scale(&scale))
}

/// Coefficients `[1, c1, ..., cn]` of the characteristic polynomial
/// `det(sI - A) = s^n + c1 s^(n-1) + ... + cn`, by the Faddeev-LeVerrier
/// recurrence (exact over the rationals).
pub fn char_poly(a: &MatrixQ) -> Result<Vec<Rat>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("characteristic polynomial".into()));
    }
    let n = a.rows();
    let mut coeffs = vec![Rat::one()];
    let mut m = MatrixQ::identity(n);
    for k in 1..=n {
        m = a.matmul(&m)?;
        let c = -m.trace() / Rat::from_integer((k as i64).into());
        for i in 0..n {
            *m.at_mut(i, i) += &c;
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Coefficients of `det(I - tA)` as a polynomial in `t` of degree `<= n`.
/// With `c` the characteristic coefficients, this is plainly `sum c_d t^d`.
pub fn det_one_minus_t(a: &MatrixQ) -> Result<Vec<Rat>> {
    char_poly(a)
}

/// Coefficients of `det(I + tA)`; the degree-`d` coefficient is the
/// elementary symmetric function of the eigenvalues, `(-1)^d c_d`.
pub fn det_one_plus_t(a: &MatrixQ) -> Result<Vec<Rat>> {
    Ok(char_poly(a)?
        .into_iter()
        .enumerate()
        .map(|(d, c)| if d % 2 == 1 { -c } else { c })
        .collect())
}

/// Truncated inverse of a power series with constant term 1.
fn invert_series(p: &[Rat], cap: usize) -> Vec<Rat> {
    debug_assert!(p[0].is_one());
    let mut q = vec![Rat::zero(); cap + 1];
    q[0] = Rat::one();
    for d in 1..=cap {
        let mut acc = Rat::zero();
        for k in 1..=d.min(p.len() - 1) {
            acc += &p[k] * &q[d - k];
        }
        q[d] = -acc;
    }
    q
}

/// Molien-type dimension series: coefficient `d` equals the dimension of
/// the degree-`d` invariant space. Exterior rule averages
/// `det(I + t A(g))`; the symmetric rule averages the truncated expansion
/// of `1 / det(I - t A(g))`. Unsupported for the skew rule.
pub fn molien_series(group: &FiniteMatrixGroup, ctx: &Ctx) -> Result<Vec<Rat>> {
    if group.dim() != ctx.n() {
        return Err(Error::DimensionMismatch("molien series".into()));
    }
    let cap = ctx.cap();
    let mut total = vec![Rat::zero(); cap + 1];
    match ctx.rule() {
        SignRule::Exterior => {
            for g in group.elements() {
                let p = det_one_plus_t(g)?;
                for (d, c) in p.into_iter().enumerate() {
                    if d <= cap {
                        total[d] += c;
                    }
                }
            }
        }
        SignRule::Symmetric => {
            for g in group.elements() {
                let p = det_one_minus_t(g)?;
                for (d, c) in invert_series(&p, cap).into_iter().enumerate() {
                    total[d] += c;
                }
            }
        }
        SignRule::SkewMinusOne => return Err(Error::UnsupportedRule("skew_minus_one")),
    }
    let scale = Rat::new(1.into(), (group.order() as i64).into());
    Ok(total.into_iter().map(|c| c * &scale).collect())
}

/// Span of `{x_i ∧ b}` for `b` running over a degree-`(d-1)` row basis:
/// the degree-`d` slice added by one multiplication with the maximal ideal.
pub fn raise_by_degree_one(ctx: &Ctx, below: &RowBasis, d: usize) -> Result<RowBasis> {
    let dim = ctx.graded_dim(d)?;
    let mut rows = Vec::new();
    for row in below.rows() {
        let b = SkewPoly::from_coords(ctx, d - 1, row)?;
        for i in 0..ctx.n() {
            let product = SkewPoly::variable(ctx, i)?.mul(&b)?;
            if !product.is_zero() {
                rows.push(product.to_coords(d)?);
            }
        }
    }
    RowBasis::from_rows(dim, rows)
}

/// Degree-`d` slice of the subalgebra generated by `gens` (with 1): spans
/// of all words in the generators, built degree by degree with each word
/// extended by one generator on the right.
pub fn subalgebra_graded_span(gens: &GeneratorSet, ctx: &Ctx, d: usize) -> Result<RowBasis> {
    Ok(subalgebra_spans(gens, ctx, d)?.pop().expect("span for every degree"))
}

/// Subalgebra spans for every degree `0..=max_d` (degree 0 is the scalar
/// line).
pub fn subalgebra_spans(gens: &GeneratorSet, ctx: &Ctx, max_d: usize) -> Result<Vec<RowBasis>> {
    if max_d > ctx.cap() {
        return Err(Error::DegreeAboveCap { degree: max_d, cap: ctx.cap() });
    }
    let mut spans = vec![RowBasis::full(1)];
    for d in 1..=max_d {
        let dim = ctx.graded_dim(d)?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for g in gens.of_degree(d) {
            rows.push(g.to_coords(d)?);
        }
        for e in 1..d {
            let span_e = &spans[e];
            if span_e.is_zero() {
                continue;
            }
            for g in gens.of_degree(d - e) {
                for row in span_e.rows() {
                    let w = SkewPoly::from_coords(ctx, e, row)?;
                    let product = w.mul(g)?;
                    if !product.is_zero() {
                        rows.push(product.to_coords(d)?);
                    }
                }
            }
        }
        spans.push(RowBasis::from_rows(dim, rows)?);
    }
    Ok(spans)
}

/// Append to `acc` the rows of `candidates` that are independent of the
/// accumulated span, returning the chosen rows; the originals (not their
/// reductions) are reported, so generators come out as rows of the
/// candidate basis.
fn pivot_complement(acc: &mut RowBasis, candidates: &RowBasis) -> Result<Vec<Vec<Rat>>> {
    let mut chosen = Vec::new();
    for row in candidates.rows() {
        if !acc.contains(row) {
            chosen.push(row.to_vec());
            let mut rows: Vec<Vec<Rat>> = acc.rows().map(|r| r.to_vec()).collect();
            rows.push(row.to_vec());
            *acc = RowBasis::from_rows(acc.ambient_dim(), rows)?;
        }
    }
    Ok(chosen)
}

/// Minimal homogeneous algebra generators of the invariant ring, degree by
/// degree up to the context cap: at each degree the new generators are a
/// canonical complement of what the earlier generators already span inside
/// the fixed space. Complete for the exterior rule; complete up to the cap
/// for the capped rules.
pub fn algebra_generators(group: &FiniteMatrixGroup, ctx: &Ctx) -> Result<GeneratorSet> {
    let cap = ctx.cap();
    let mut gens: Vec<(usize, SkewPoly)> = Vec::new();
    let mut spans: Vec<RowBasis> = vec![RowBasis::full(1)];
    for d in 1..=cap {
        let fixed = fixed_space(group, ctx, d)?;
        let dim = ctx.graded_dim(d)?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for e in 1..d {
            let span_e = &spans[e];
            if span_e.is_zero() {
                continue;
            }
            for (gd, g) in &gens {
                if *gd != d - e {
                    continue;
                }
                for row in span_e.rows() {
                    let w = SkewPoly::from_coords(ctx, e, row)?;
                    let product = w.mul(g)?;
                    if !product.is_zero() {
                        rows.push(product.to_coords(d)?);
                    }
                }
            }
        }
        let mut acc = RowBasis::from_rows(dim, rows)?;
        for row in pivot_complement(&mut acc, &fixed)? {
            gens.push((d, SkewPoly::from_coords(ctx, d, &row)?));
        }
        // generators now span the whole fixed space at this degree
        spans.push(fixed);
    }
    Ok(GeneratorSet::new(gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraCtx;
    use crate::rat::{rat, rat_int};

    fn group(entries: &[&[i64]], n: usize) -> FiniteMatrixGroup {
        let gens: Vec<MatrixQ> = entries.iter().map(|e| MatrixQ::from_i64(n, n, e)).collect();
        FiniteMatrixGroup::enumerate(&gens, 1000).unwrap()
    }

    fn swap_group() -> FiniteMatrixGroup {
        group(&[&[0, 1, 1, 0]], 2)
    }

    fn sign_group() -> FiniteMatrixGroup {
        group(&[&[1, 0, 0, -1]], 2)
    }

    fn two_copies_group() -> FiniteMatrixGroup {
        group(&[&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1]], 4)
    }

    #[test]
    fn fixed_space_swap_degree_one() {
        let ctx = AlgebraCtx::exterior(2);
        let f = fixed_space(&swap_group(), &ctx, 1).unwrap();
        assert_eq!(f, RowBasis::from_rows(2, vec![vec![rat_int(1), rat_int(1)]]).unwrap());
    }

    #[test]
    fn fixed_space_sign_degree_one() {
        let ctx = AlgebraCtx::exterior(2);
        let f = fixed_space(&sign_group(), &ctx, 1).unwrap();
        assert_eq!(f, RowBasis::from_rows(2, vec![vec![rat_int(1), rat_int(0)]]).unwrap());
    }

    #[test]
    fn fixed_space_two_copies_degree_two() {
        let ctx = AlgebraCtx::exterior(4);
        let f = fixed_space(&two_copies_group(), &ctx, 2).unwrap();
        assert_eq!(f.dim(), 2);
        // x1∧x2 and x3∧x4 span it
        let e12 = SkewPoly::variable(&ctx, 0)
            .unwrap()
            .mul(&SkewPoly::variable(&ctx, 1).unwrap())
            .unwrap();
        let e34 = SkewPoly::variable(&ctx, 2)
            .unwrap()
            .mul(&SkewPoly::variable(&ctx, 3).unwrap())
            .unwrap();
        assert!(f.contains(&e12.to_coords(2).unwrap()));
        assert!(f.contains(&e34.to_coords(2).unwrap()));
    }

    #[test]
    fn fixed_space_generators_match_all_elements() {
        // exhaustive cross-check of the generators-only shortcut
        let g = group(&[&[0, 1, 0, 1, 0, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 1, 0, 1, 0]], 3);
        let ctx = AlgebraCtx::exterior(3);
        for d in 0..=3 {
            let by_gens = fixed_space(&g, &ctx, d).unwrap();
            let dim = ctx.graded_dim(d).unwrap();
            let identity = MatrixQ::identity(dim);
            let mut rows = Vec::new();
            for m in g.elements() {
                let diff = representation_matrix(m, &ctx, d).unwrap().sub(&identity).unwrap();
                rows.extend(diff.row_iter().map(|r| r.to_vec()));
            }
            let by_all = MatrixQ::from_rows(rows, dim).unwrap().kernel_basis();
            assert_eq!(by_gens, by_all, "degree {d}");
        }
    }

    #[test]
    fn reynolds_averages_and_projects() {
        let ctx = AlgebraCtx::exterior(2);
        let g = swap_group();
        let x = SkewPoly::variable(&ctx, 0).unwrap();
        let y = SkewPoly::variable(&ctx, 1).unwrap();
        let avg = reynolds(&g, &x).unwrap();
        assert_eq!(avg, x.add(&y).scale(&rat(1, 2)));
        // projection: already-invariant input is unchanged
        assert_eq!(reynolds(&g, &avg).unwrap(), avg);
        // sign action kills the odd variable
        assert!(reynolds(&sign_group(), &y).unwrap().is_zero());
    }

    #[test]
    fn char_poly_diagonal() {
        let a = MatrixQ::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(char_poly(&a).unwrap(), vec![rat_int(1), rat_int(-5), rat_int(6)]);
        assert_eq!(
            det_one_plus_t(&a).unwrap(),
            vec![rat_int(1), rat_int(5), rat_int(6)]
        );
        assert_eq!(
            det_one_minus_t(&a).unwrap(),
            vec![rat_int(1), rat_int(-5), rat_int(6)]
        );
    }

    #[test]
    fn molien_trivial_group_binomials() {
        let ctx = AlgebraCtx::exterior(2);
        let g = FiniteMatrixGroup::trivial(2);
        assert_eq!(
            molien_series(&g, &ctx).unwrap(),
            vec![rat_int(1), rat_int(2), rat_int(1)]
        );
    }

    #[test]
    fn molien_swap_exterior() {
        let ctx = AlgebraCtx::exterior(2);
        assert_eq!(
            molien_series(&swap_group(), &ctx).unwrap(),
            vec![rat_int(1), rat_int(1), rat_int(0)]
        );
    }

    #[test]
    fn molien_two_copies_exterior() {
        let ctx = AlgebraCtx::exterior(4);
        assert_eq!(
            molien_series(&two_copies_group(), &ctx).unwrap(),
            vec![rat_int(1), rat_int(2), rat_int(2), rat_int(2), rat_int(1)]
        );
    }

    #[test]
    fn molien_symmetric_sign_action() {
        // invariants of y -> -y in Q[x, y]: dims 1, 1, 2, 2, 3 by degree
        let ctx = AlgebraCtx::symmetric(2, 4).unwrap();
        assert_eq!(
            molien_series(&sign_group(), &ctx).unwrap(),
            vec![rat_int(1), rat_int(1), rat_int(2), rat_int(2), rat_int(3)]
        );
    }

    #[test]
    fn molien_rejects_skew() {
        let ctx = AlgebraCtx::skew(2, 4).unwrap();
        assert!(molien_series(&swap_group(), &ctx).is_err());
    }

    #[test]
    fn molien_agrees_with_fixed_space_dims() {
        let groups = [swap_group(), sign_group(), two_copies_group()];
        for g in &groups {
            let ctx = AlgebraCtx::exterior(g.dim());
            let coeffs = molien_series(g, &ctx).unwrap();
            for d in 0..=ctx.cap() {
                let dim = fixed_space(g, &ctx, d).unwrap().dim();
                assert_eq!(coeffs[d], rat_int(dim as i64), "degree {d}");
            }
        }
    }

    #[test]
    fn subalgebra_span_exterior_square_vanishes() {
        let ctx = AlgebraCtx::exterior(2);
        let xy = SkewPoly::variable(&ctx, 0).unwrap().add(&SkewPoly::variable(&ctx, 1).unwrap());
        let gens = GeneratorSet::new(vec![(1, xy)]);
        assert!(subalgebra_graded_span(&gens, &ctx, 2).unwrap().is_zero());
    }

    #[test]
    fn subalgebra_span_two_variables() {
        let ctx = AlgebraCtx::exterior(2);
        let gens = GeneratorSet::new(vec![
            (1, SkewPoly::variable(&ctx, 0).unwrap()),
            (1, SkewPoly::variable(&ctx, 1).unwrap()),
        ]);
        let span = subalgebra_graded_span(&gens, &ctx, 2).unwrap();
        assert_eq!(span, RowBasis::full(1));
    }

    #[test]
    fn subalgebra_span_skew_square() {
        let ctx = AlgebraCtx::skew(2, 4).unwrap();
        let f = SkewPoly::variable(&ctx, 0).unwrap().add(&SkewPoly::variable(&ctx, 1).unwrap());
        let gens = GeneratorSet::new(vec![(1, f)]);
        let span = subalgebra_graded_span(&gens, &ctx, 2).unwrap();
        assert_eq!(span.dim(), 1);
        let sq = crate::text::parse_poly(&ctx, "x1^2 + x2^2").unwrap();
        assert!(span.contains(&sq.to_coords(2).unwrap()));
    }

    #[test]
    fn generators_swap() {
        let ctx = AlgebraCtx::exterior(2);
        let gens = algebra_generators(&swap_group(), &ctx).unwrap();
        assert_eq!(gens.beta(), 1);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens.gens()[0].1.to_string(), "x1 + x2");
    }

    #[test]
    fn generators_two_copies() {
        let ctx = AlgebraCtx::exterior_named(
            ["x1", "x2", "y1", "y2"].map(String::from).to_vec(),
        )
        .unwrap();
        let gens = algebra_generators(&two_copies_group(), &ctx).unwrap();
        assert_eq!(gens.degrees(), vec![1, 1, 2]);
        assert_eq!(gens.beta(), 2);
        let rendered: Vec<String> = gens.gens().iter().map(|(_, g)| g.to_string()).collect();
        assert_eq!(rendered, vec!["x1", "x2", "y1\u{2227}y2"]);
    }

    #[test]
    fn generators_kirkman_skew() {
        let ctx = AlgebraCtx::new(
            SignRule::SkewMinusOne,
            vec!["x".into(), "y".into()],
            4,
        )
        .unwrap();
        let gens = algebra_generators(&swap_group(), &ctx).unwrap();
        let rendered: Vec<String> = gens.gens().iter().map(|(_, g)| g.to_string()).collect();
        assert_eq!(rendered, vec!["x + y", "x^3 + y^3"]);
        assert_eq!(gens.beta(), 3);
    }

    #[test]
    fn generator_completeness_and_minimality() {
        let g = two_copies_group();
        let ctx = AlgebraCtx::exterior(4);
        let gens = algebra_generators(&g, &ctx).unwrap();
        for d in 1..=ctx.cap() {
            assert_eq!(
                subalgebra_graded_span(&gens, &ctx, d).unwrap(),
                fixed_space(&g, &ctx, d).unwrap(),
                "degree {d} completeness"
            );
        }
        for (i, (d, f)) in gens.gens().iter().enumerate() {
            let others = GeneratorSet::new(
                gens.gens()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect(),
            );
            let span = subalgebra_graded_span(&others, &ctx, *d).unwrap();
            assert!(
                !span.contains(&f.to_coords(*d).unwrap()),
                "generator {f} is redundant"
            );
        }
    }
}
