//! Subspace arrangements and their intersection ideals.
//!
//! A subspace is stored both by a spanning basis and by the linear forms
//! vanishing on it; the two determine each other as kernels. The
//! intersection ideal of an arrangement is computed degree by degree as the
//! intersection of the subspaces' linear ideals, and minimal generators are
//! extracted by graded Nakayama: new generators in degree `d` are a
//! canonical complement of the slice reachable from degree `d-1`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{Ctx, LinearForm, SignRule, SkewPoly};
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::invariant::{raise_by_degree_one, GeneratorSet, GradedSubspace};
use crate::linalg::{intersect_row_spaces, MatrixQ, RowBasis};
use crate::rat::Rat;

/// Linear forms vanishing on the span of the given vectors.
pub fn vanishing_forms(ambient_dim: usize, spanning: &[Vec<Rat>]) -> Result<RowBasis> {
    if spanning.is_empty() {
        return Ok(RowBasis::full(ambient_dim));
    }
    let m = MatrixQ::from_rows(spanning.to_vec(), ambient_dim)?;
    Ok(m.kernel_basis())
}

/// A linear subspace held in both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    span: RowBasis,
    forms: RowBasis,
}

impl Subspace {
    pub fn from_span(ambient_dim: usize, vectors: Vec<Vec<Rat>>) -> Result<Self> {
        let span = RowBasis::from_rows(ambient_dim, vectors)?;
        let forms = span.complement();
        Ok(Subspace { span, forms })
    }

    pub fn from_forms(ambient_dim: usize, vectors: Vec<Vec<Rat>>) -> Result<Self> {
        let forms = RowBasis::from_rows(ambient_dim, vectors)?;
        let span = forms.complement();
        Ok(Subspace { span, forms })
    }

    /// Both representations supplied by the caller; they must agree.
    pub fn from_span_and_forms(
        ambient_dim: usize,
        span: Vec<Vec<Rat>>,
        forms: Vec<Vec<Rat>>,
    ) -> Result<Self> {
        let built = Self::from_span(ambient_dim, span)?;
        let given = RowBasis::from_rows(ambient_dim, forms)?;
        if given != built.forms {
            return Err(Error::Problem(
                "supplied forms do not cut out the supplied span".into(),
            ));
        }
        Ok(built)
    }

    pub fn span(&self) -> &RowBasis {
        &self.span
    }

    pub fn forms(&self) -> &RowBasis {
        &self.forms
    }

    /// dim(span) + #forms = ambient, and the forms kill the span.
    pub fn check_consistent(&self) -> bool {
        self.span.dim() + self.forms.dim() == self.span.ambient_dim()
            && self.forms.rows().all(|f| {
                self.span
                    .rows()
                    .all(|v| f.iter().zip(v).map(|(a, b)| a * b).sum::<Rat>() == Rat::from_integer(0.into()))
            })
    }
}

/// A finite collection of subspaces of a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    subspaces: Vec<Subspace>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::EmptyInput("arrangement with no subspaces".into()));
        }
        for s in &subspaces {
            if s.span.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch("subspace ambient".into()));
            }
        }
        Ok(Arrangement { ambient_dim, subspaces })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

/// The group arrangement in `Q^(2n)`: one graph subspace per element, cut
/// out by the forms `y_i - sum_j A(g)_{i,j} x_j` in the variable order
/// `x_1..x_n, y_1..y_n`.
pub fn group_arrangement(group: &FiniteMatrixGroup) -> Result<Arrangement> {
    let n = group.dim();
    let ambient = 2 * n;
    let mut subspaces = Vec::with_capacity(group.order());
    for g in group.elements() {
        let mut forms = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![Rat::from_integer(0.into()); ambient];
            for (j, slot) in row.iter_mut().take(n).enumerate() {
                *slot = -g.at(i, j).clone();
            }
            row[n + i] = Rat::from_integer(1.into());
            forms.push(row);
        }
        subspaces.push(Subspace::from_forms(ambient, forms)?);
    }
    Arrangement::new(ambient, subspaces)
}

/// The ideal generated by a set of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearIdeal {
    forms: RowBasis,
}

impl LinearIdeal {
    pub fn new(forms: RowBasis) -> Self {
        LinearIdeal { forms }
    }

    pub fn forms(&self) -> &RowBasis {
        &self.forms
    }
}

/// Degree-`d` slice of the ideal generated by the forms: the span of
/// `m ∧ s` over basis monomials `m` of degree `d-1`. Left multiples
/// suffice since homogeneous ideals here are two-sided.
pub fn linear_ideal_component(ideal: &LinearIdeal, ctx: &Ctx, d: usize) -> Result<RowBasis> {
    if d == 0 {
        return Err(Error::DegreeAboveCap { degree: 0, cap: ctx.cap() });
    }
    let dim = ctx.graded_dim(d)?;
    if ideal.forms.is_zero() {
        return Ok(RowBasis::zero(dim));
    }
    if d == 1 {
        return Ok(ideal.forms.clone());
    }
    let mut rows = Vec::new();
    for form in ideal.forms.rows() {
        let s = LinearForm::new(form.to_vec()).to_poly(ctx);
        for m in ctx.graded_basis(d - 1)? {
            let product = SkewPoly::monomial(ctx, m, Rat::from_integer(1.into()))?.mul(&s)?;
            if !product.is_zero() {
                rows.push(product.to_coords(d)?);
            }
        }
    }
    RowBasis::from_rows(dim, rows)
}

/// A graded ideal given by its per-degree components, with optionally the
/// minimal generators extracted from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    components: GradedSubspace,
    gens: Option<GeneratorSet>,
}

impl GradedIdeal {
    pub fn new(components: GradedSubspace) -> Self {
        GradedIdeal { components, gens: None }
    }

    pub fn ctx(&self) -> &Ctx {
        self.components.ctx()
    }

    pub fn components(&self) -> &GradedSubspace {
        &self.components
    }

    pub fn component(&self, d: usize) -> Option<&RowBasis> {
        self.components.component(d)
    }

    pub fn gens(&self) -> Option<&GeneratorSet> {
        self.gens.as_ref()
    }

    pub fn set_gens(&mut self, gens: GeneratorSet) {
        self.gens = Some(gens);
    }

    /// Check the ideal property on the tracked range: one multiplication by
    /// degree-one elements stays inside the next component.
    pub fn check_ideal_property(&self) -> Result<bool> {
        let ctx = self.ctx();
        let Some(max) = self.components.max_tracked_degree() else {
            return Ok(true);
        };
        for d in 2..=max {
            let below = self.component(d - 1).expect("contiguous components");
            let here = self.component(d).expect("contiguous components");
            let raised = raise_by_degree_one(ctx, below, d)?;
            if !raised.is_subspace_of(here) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Intersection ideal of an arrangement, componentwise up to `max_d`:
/// degree `d` is the intersection over all subspaces of the degree-`d`
/// slices of their linear vanishing ideals.
pub fn intersection_ideal(arrangement: &Arrangement, ctx: &Ctx, max_d: usize) -> Result<GradedIdeal> {
    if ctx.n() != arrangement.ambient_dim() {
        return Err(Error::DimensionMismatch(
            "arrangement ambient vs context variables".into(),
        ));
    }
    if max_d > ctx.cap() {
        return Err(Error::DegreeAboveCap { degree: max_d, cap: ctx.cap() });
    }
    let mut components = GradedSubspace::new(ctx);
    components.insert(0, RowBasis::zero(1));
    for d in 1..=max_d {
        let mut slices = Vec::with_capacity(arrangement.len());
        for s in arrangement.subspaces() {
            let ideal = LinearIdeal::new(s.forms().clone());
            slices.push(linear_ideal_component(&ideal, ctx, d)?);
        }
        components.insert(d, intersect_row_spaces(&slices)?);
    }
    Ok(GradedIdeal::new(components))
}

/// Minimal generators of a graded ideal by graded Nakayama: in each degree
/// the decomposable part is one degree-one multiplication away from the
/// previous component, and new generators are a canonical pivot-complement
/// of it inside the component. Requires components tracked through the top
/// degree for the exterior rule.
pub fn minimal_generators(ideal: &GradedIdeal) -> Result<GeneratorSet> {
    let ctx = ideal.ctx();
    let Some(max) = ideal.components().max_tracked_degree() else {
        return Ok(GeneratorSet::empty());
    };
    if ctx.rule() == SignRule::Exterior && max < ctx.cap() {
        return Err(Error::DegreeAboveCap { degree: ctx.cap(), cap: max });
    }
    let mut gens: Vec<(usize, SkewPoly)> = Vec::new();
    for d in 1..=max {
        let component = ideal
            .component(d)
            .ok_or_else(|| Error::Problem(format!("missing ideal component at degree {d}")))?;
        let mut acc = if d == 1 {
            RowBasis::zero(ctx.graded_dim(1)?)
        } else {
            raise_by_degree_one(ctx, ideal.component(d - 1).expect("contiguous"), d)?
        };
        for row in component.rows() {
            if !acc.contains(row) {
                gens.push((d, SkewPoly::from_coords(ctx, d, row)?));
                let mut rows: Vec<Vec<Rat>> = acc.rows().map(|r| r.to_vec()).collect();
                rows.push(row.to_vec());
                acc = RowBasis::from_rows(acc.ambient_dim(), rows)?;
            }
        }
    }
    Ok(GeneratorSet::new(gens))
}

/// Rebuild ideal components from homogeneous generators by repeated
/// degree-one multiplication; used to check that extracted generators
/// regenerate the ideal.
pub fn regenerate_components(ctx: &Ctx, gens: &GeneratorSet, max_d: usize) -> Result<GradedSubspace> {
    let mut out = GradedSubspace::new(ctx);
    out.insert(0, RowBasis::zero(1));
    let mut prev = RowBasis::zero(1);
    for d in 1..=max_d {
        let dim = ctx.graded_dim(d)?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        if d >= 2 {
            rows.extend(
                raise_by_degree_one(ctx, &prev, d)?
                    .rows()
                    .map(|r| r.to_vec()),
            );
        }
        for g in gens.of_degree(d) {
            rows.push(g.to_coords(d)?);
        }
        let basis = RowBasis::from_rows(dim, rows)?;
        out.insert(d, basis.clone());
        prev = basis;
    }
    Ok(out)
}

/// Deterministic random arrangement for the property battery: `t`
/// subspaces with small integer entries (|entry| <= 3) and dimensions
/// uniform in `[1, ambient-1]`.
pub fn random_arrangement<R: Rng>(rng: &mut R, ambient_dim: usize, t: usize) -> Result<Arrangement> {
    assert!(ambient_dim >= 2, "need room for proper subspaces");
    let mut subspaces = Vec::with_capacity(t);
    while subspaces.len() < t {
        let dim = rng.random_range(1..ambient_dim);
        let vectors: Vec<Vec<Rat>> = (0..dim)
            .map(|_| {
                (0..ambient_dim)
                    .map(|_| Rat::from_integer(rng.random_range(-3i64..=3).into()))
                    .collect()
            })
            .collect();
        let s = Subspace::from_span(ambient_dim, vectors)?;
        if s.span().is_zero() {
            continue; // all-zero draw; redraw to keep the subspace proper
        }
        subspaces.push(s);
    }
    Arrangement::new(ambient_dim, subspaces)
}

/// A map collecting the per-degree dimensions of an ideal.
pub fn component_dims(ideal: &GradedIdeal) -> BTreeMap<usize, usize> {
    ideal.components().dims().into_iter().collect()
}

/// One trial of the seeded random-arrangement battery.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BatteryTrial {
    pub ambient: usize,
    pub subspace_count: usize,
    pub generator_degrees: Vec<usize>,
    pub max_degree: usize,
    pub within_bound: bool,
}

/// Seeded battery checking the generator-degree consequence of the
/// subspace-arrangement regularity bound: for `t` subspaces the minimal
/// generators of the intersection ideal live in degree at most `t`.
pub fn seeded_battery(seed: u64, trials: usize) -> Result<Vec<BatteryTrial>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let ambient = rng.random_range(3..=5);
        let t = rng.random_range(2..=4);
        let ctx = crate::algebra::AlgebraCtx::exterior(ambient);
        let arrangement = random_arrangement(&mut rng, ambient, t)?;
        let ideal = intersection_ideal(&arrangement, &ctx, ambient)?;
        let gens = minimal_generators(&ideal)?;
        out.push(BatteryTrial {
            ambient,
            subspace_count: t,
            generator_degrees: gens.degrees(),
            max_degree: gens.beta(),
            within_bound: gens.beta() <= t,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraCtx;
    use crate::rat::rat_int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect()
    }

    fn sign_line_group() -> FiniteMatrixGroup {
        FiniteMatrixGroup::enumerate(&[MatrixQ::from_i64(1, 1, &[-1])], 10).unwrap()
    }

    #[test]
    fn vanishing_forms_of_diagonal() {
        let forms = vanishing_forms(2, &vecs(&[&[1, 1]])).unwrap();
        assert_eq!(forms, RowBasis::from_rows(2, vecs(&[&[1, -1]])).unwrap());
    }

    #[test]
    fn vanishing_forms_of_full_space_empty() {
        let forms = vanishing_forms(2, &vecs(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(forms.is_zero());
    }

    #[test]
    fn vanishing_forms_of_origin_full() {
        let s = Subspace::from_span(2, Vec::new()).unwrap();
        assert_eq!(s.forms(), &RowBasis::full(2));
        assert!(s.check_consistent());
    }

    #[test]
    fn group_arrangement_trivial_group() {
        let arr = group_arrangement(&FiniteMatrixGroup::trivial(1)).unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(
            arr.subspaces()[0].forms(),
            &RowBasis::from_rows(2, vecs(&[&[1, -1]])).unwrap() // y - x up to scale
        );
    }

    #[test]
    fn group_arrangement_sign_line() {
        let arr = group_arrangement(&sign_line_group()).unwrap();
        assert_eq!(arr.len(), 2);
        let forms: Vec<&RowBasis> = arr.subspaces().iter().map(|s| s.forms()).collect();
        let y_minus_x = RowBasis::from_rows(2, vecs(&[&[-1, 1]])).unwrap();
        let y_plus_x = RowBasis::from_rows(2, vecs(&[&[1, 1]])).unwrap();
        assert!(forms.contains(&&y_minus_x));
        assert!(forms.contains(&&y_plus_x));
    }

    #[test]
    fn group_arrangement_swap_forms() {
        let swap = FiniteMatrixGroup::enumerate(&[MatrixQ::from_i64(2, 2, &[0, 1, 1, 0])], 10).unwrap();
        let arr = group_arrangement(&swap).unwrap();
        // non-identity element: y1 - x2, y2 - x1
        let expected = RowBasis::from_rows(
            4,
            vecs(&[&[0, -1, 1, 0], &[-1, 0, 0, 1]]),
        )
        .unwrap();
        assert!(arr.subspaces().iter().any(|s| s.forms() == &expected));
    }

    #[test]
    fn linear_ideal_degree_slices() {
        let ctx = AlgebraCtx::exterior_named(vec!["x".into(), "y".into()]).unwrap();
        // J = (y - x)
        let ideal = LinearIdeal::new(RowBasis::from_rows(2, vecs(&[&[-1, 1]])).unwrap());
        let d1 = linear_ideal_component(&ideal, &ctx, 1).unwrap();
        assert_eq!(d1, ideal.forms().clone());
        let d2 = linear_ideal_component(&ideal, &ctx, 2).unwrap();
        assert_eq!(d2, RowBasis::full(1), "x∧(y-x) = x∧y spans the top degree");
        let empty = LinearIdeal::new(RowBasis::zero(2));
        assert!(linear_ideal_component(&empty, &ctx, 2).unwrap().is_zero());
    }

    #[test]
    fn intersection_ideal_sign_line() {
        let ctx = AlgebraCtx::exterior_named(vec!["x".into(), "y".into()]).unwrap();
        let arr = group_arrangement(&sign_line_group()).unwrap();
        let ideal = intersection_ideal(&arr, &ctx, 2).unwrap();
        assert!(ideal.component(1).unwrap().is_zero());
        assert_eq!(ideal.component(2).unwrap(), &RowBasis::full(1));
        assert!(ideal.check_ideal_property().unwrap());
    }

    #[test]
    fn intersection_ideal_single_subspace_is_linear_ideal() {
        let ctx = AlgebraCtx::exterior(3);
        let s = Subspace::from_span(3, vecs(&[&[1, 1, 0]])).unwrap();
        let arr = Arrangement::new(3, vec![s.clone()]).unwrap();
        let ideal = intersection_ideal(&arr, &ctx, 3).unwrap();
        let linear = LinearIdeal::new(s.forms().clone());
        for d in 1..=3 {
            assert_eq!(
                ideal.component(d).unwrap(),
                &linear_ideal_component(&linear, &ctx, d).unwrap()
            );
        }
    }

    #[test]
    fn intersection_ideal_duplicates_are_idempotent() {
        let ctx = AlgebraCtx::exterior(3);
        let s = Subspace::from_span(3, vecs(&[&[1, 0, 1]])).unwrap();
        let once = intersection_ideal(&Arrangement::new(3, vec![s.clone()]).unwrap(), &ctx, 3).unwrap();
        let twice =
            intersection_ideal(&Arrangement::new(3, vec![s.clone(), s]).unwrap(), &ctx, 3).unwrap();
        assert_eq!(once.components(), twice.components());
    }

    #[test]
    fn minimal_generators_sign_line_single_quadric() {
        let ctx = AlgebraCtx::exterior_named(vec!["x".into(), "y".into()]).unwrap();
        let arr = group_arrangement(&sign_line_group()).unwrap();
        let ideal = intersection_ideal(&arr, &ctx, 2).unwrap();
        let gens = minimal_generators(&ideal).unwrap();
        assert_eq!(gens.degrees(), vec![2]);
        assert_eq!(gens.gens()[0].1.to_string(), "x\u{2227}y");
    }

    #[test]
    fn minimal_generators_principal_ideal() {
        let ctx = AlgebraCtx::exterior(2);
        // components of (x1): degree 1 span{x1}, degree 2 span{x1∧x2}
        let mut components = GradedSubspace::new(&ctx);
        components.insert(0, RowBasis::zero(1));
        components.insert(1, RowBasis::from_rows(2, vecs(&[&[1, 0]])).unwrap());
        components.insert(2, RowBasis::full(1));
        let ideal = GradedIdeal::new(components);
        let gens = minimal_generators(&ideal).unwrap();
        assert_eq!(gens.degrees(), vec![1]);
        assert_eq!(gens.gens()[0].1.to_string(), "x1");
    }

    #[test]
    fn minimal_generators_drop_decomposable_input() {
        // ideal generated by {x1, x1∧x2} has the same components as (x1)
        let ctx = AlgebraCtx::exterior(2);
        let x1 = SkewPoly::variable(&ctx, 0).unwrap();
        let x1x2 = x1.mul(&SkewPoly::variable(&ctx, 1).unwrap()).unwrap();
        let gens_in = GeneratorSet::new(vec![(1, x1), (2, x1x2)]);
        let comps = regenerate_components(&ctx, &gens_in, 2).unwrap();
        let gens = minimal_generators(&GradedIdeal::new(comps)).unwrap();
        assert_eq!(gens.degrees(), vec![1]);
    }

    #[test]
    fn regeneration_matches_components() {
        let ctx = AlgebraCtx::exterior(4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let arr = random_arrangement(&mut rng, 4, 3).unwrap();
            let ideal = intersection_ideal(&arr, &ctx, 4).unwrap();
            let gens = minimal_generators(&ideal).unwrap();
            let rebuilt = regenerate_components(&ctx, &gens, 4).unwrap();
            assert_eq!(&rebuilt, ideal.components());
        }
    }

    #[test]
    fn vanishing_property_on_group_arrangement() {
        // every component element of the intersection ideal maps to zero
        // under y_i -> sum_j A(g)_{i,j} x_j, for every group element
        let swap = FiniteMatrixGroup::enumerate(&[MatrixQ::from_i64(2, 2, &[0, 1, 1, 0])], 10).unwrap();
        let xy = AlgebraCtx::exterior(4);
        let x_ctx = AlgebraCtx::exterior(2);
        let arr = group_arrangement(&swap).unwrap();
        let ideal = intersection_ideal(&arr, &xy, 4).unwrap();
        for g in swap.elements() {
            // x_i -> x_i, y_i -> row i of A(g)
            let mut images: Vec<LinearForm> = (0..2)
                .map(|i| {
                    let mut c = vec![rat_int(0); 2];
                    c[i] = rat_int(1);
                    LinearForm::new(c)
                })
                .collect();
            for i in 0..2 {
                images.push(LinearForm::new(g.row(i).to_vec()));
            }
            for d in 1..=4 {
                for row in ideal.component(d).unwrap().rows() {
                    let f = SkewPoly::from_coords(&xy, d, row).unwrap();
                    let image = f.substitute(&x_ctx, &images).unwrap();
                    assert!(image.is_zero(), "ideal element survives phi_g at degree {d}");
                }
            }
        }
    }

    #[test]
    fn subext_degree_bound_on_seeded_battery() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let n = rng.random_range(3..=4);
            let t = rng.random_range(2..=3);
            let ctx = AlgebraCtx::exterior(n);
            let arr = random_arrangement(&mut rng, n, t).unwrap();
            let ideal = intersection_ideal(&arr, &ctx, n).unwrap();
            let gens = minimal_generators(&ideal).unwrap();
            assert!(
                gens.beta() <= t,
                "minimal generator of degree {} above the subspace count {t}",
                gens.beta()
            );
        }
    }
}
