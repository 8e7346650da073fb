//! The end-to-end elimination route to generating invariants, and the
//! checks built on top of it.
//!
//! The route: build the group arrangement in the doubled variable set,
//! intersect the linear ideals degreewise, extract minimal ideal
//! generators, set the `y`-variables to zero, project with the Reynolds
//! operator, and minimize against subalgebra spans of the produced set
//! itself. Alongside it live the direct Hilbert-ideal computation, the
//! degreewise elimination identity check, the Noether-bound report, the
//! square-free probe for the skew rule, and the symmetric-vs-exterior
//! bound-transference experiment.

use serde::Serialize;

use crate::algebra::{AlgebraCtx, Ctx, LinearForm, SignRule, SkewPoly};
use crate::arrangement::{
    group_arrangement, intersection_ideal, linear_ideal_component, minimal_generators,
    GradedIdeal, LinearIdeal,
};
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;
use crate::invariant::{
    algebra_generators, fixed_space, raise_by_degree_one, reynolds, subalgebra_graded_span,
    subalgebra_spans, GeneratorSet, GradedSubspace,
};
use crate::linalg::{intersect_row_spaces, sum_row_spaces, MatrixQ, RowBasis};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Arrangement,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Arrangement => "arrangement",
        })
    }
}

/// Exterior context on the doubled variable set `x_1..x_n, y_1..y_n`, with
/// the `y`-block names chosen to avoid clashing with the `x`-block.
pub fn doubled_context(x_ctx: &Ctx) -> Result<Ctx> {
    let n = x_ctx.n();
    if x_ctx.rule() != SignRule::Exterior {
        return Err(Error::UnsupportedRule(x_ctx.rule().name()));
    }
    let mut names: Vec<String> = x_ctx.names().to_vec();
    for i in 1..=n {
        let mut candidate = format!("y{i}");
        while names.contains(&candidate) {
            candidate.push('_');
        }
        names.push(candidate);
    }
    AlgebraCtx::exterior_named(names)
}

/// Components of the Hilbert ideal (the ideal generated by all
/// positive-degree invariants), built incrementally: each degree is one
/// multiplication step up from the previous one plus the new fixed space.
pub fn hilbert_ideal_direct(
    group: &FiniteMatrixGroup,
    ctx: &Ctx,
    max_d: usize,
) -> Result<GradedSubspace> {
    if max_d > ctx.cap() {
        return Err(Error::DegreeAboveCap { degree: max_d, cap: ctx.cap() });
    }
    let mut out = GradedSubspace::new(ctx);
    out.insert(0, RowBasis::zero(1));
    let mut prev: Option<RowBasis> = None;
    for d in 1..=max_d {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        if let Some(below) = &prev {
            rows.extend(raise_by_degree_one(ctx, below, d)?.rows().map(|r| r.to_vec()));
        }
        rows.extend(fixed_space(group, ctx, d)?.rows().map(|r| r.to_vec()));
        let basis = RowBasis::from_rows(ctx.graded_dim(d)?, rows)?;
        out.insert(d, basis.clone());
        prev = Some(basis);
    }
    Ok(out)
}

/// Substitute `x_i -> x_i`, `y_i -> 0` on each generator over the doubled
/// context; zero images are dropped, degrees are preserved.
pub fn eliminate_y(gens: &GeneratorSet, x_ctx: &Ctx) -> Result<GeneratorSet> {
    let n = x_ctx.n();
    let mut images = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut c = vec![Rat::from_integer(0.into()); n];
        c[i] = Rat::from_integer(1.into());
        images.push(LinearForm::new(c));
    }
    for _ in 0..n {
        images.push(LinearForm::zero(n));
    }
    let mut out = Vec::new();
    for (d, g) in gens.gens() {
        let image = g.substitute(x_ctx, &images)?;
        if !image.is_zero() {
            out.push((*d, image));
        }
    }
    Ok(GeneratorSet::new(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct GansubDegreeRow {
    pub degree: usize,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub equal: bool,
}

/// Per-degree comparison of the eliminated arrangement ideal against the
/// Hilbert ideal.
#[derive(Clone, Debug, Serialize)]
pub struct GansubReport {
    pub group_order: usize,
    pub variables: usize,
    pub rows: Vec<GansubDegreeRow>,
    pub all_equal: bool,
}

/// Check, degree by degree through the top of the doubled algebra, that
/// `(I + (y)) ∩ Λ(x)` has exactly the Hilbert ideal's components, by
/// canonical-basis equality after re-expressing the intersection in the
/// `x`-side coordinates.
pub fn check_gansub(group: &FiniteMatrixGroup, x_ctx: &Ctx) -> Result<GansubReport> {
    if x_ctx.rule() != SignRule::Exterior {
        return Err(Error::UnsupportedRule(x_ctx.rule().name()));
    }
    if group.dim() != x_ctx.n() {
        return Err(Error::DimensionMismatch("group vs context".into()));
    }
    let n = x_ctx.n();
    let xy_ctx = doubled_context(x_ctx)?;
    let arrangement = group_arrangement(group)?;
    let ideal = intersection_ideal(&arrangement, &xy_ctx, 2 * n)?;
    let hilbert = hilbert_ideal_direct(group, x_ctx, n)?;

    // the ideal (y_1, ..., y_n) as a linear ideal in the doubled algebra
    let mut y_forms = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![Rat::from_integer(0.into()); 2 * n];
        row[n + i] = Rat::from_integer(1.into());
        y_forms.push(row);
    }
    let y_ideal = LinearIdeal::new(RowBasis::from_rows(2 * n, y_forms)?);

    let mut rows = Vec::new();
    for d in 1..=2 * n {
        let i_d = ideal.component(d).expect("component computed").clone();
        let y_d = linear_ideal_component(&y_ideal, &xy_ctx, d)?;
        let summed = sum_row_spaces(&[i_d, y_d])?;
        let (lhs_dim, rhs_dim, equal) = if d <= n {
            let embed = embed_x_basis(x_ctx, &xy_ctx, d)?;
            let lhs_xy = intersect_row_spaces(&[summed, embed])?;
            let lhs = restrict_to_x(&lhs_xy, x_ctx, &xy_ctx, d)?;
            let rhs = hilbert.component(d).expect("component computed");
            (lhs.dim(), rhs.dim(), &lhs == rhs)
        } else {
            // the x-side is zero above its top degree; the intersection
            // must be zero as well
            let embed = RowBasis::zero(xy_ctx.graded_dim(d)?);
            let lhs_xy = intersect_row_spaces(&[summed, embed])?;
            (lhs_xy.dim(), 0, lhs_xy.is_zero())
        };
        rows.push(GansubDegreeRow { degree: d, lhs_dim, rhs_dim, equal });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(GansubReport {
        group_order: group.order(),
        variables: n,
        rows,
        all_equal,
    })
}

/// Span of the `x`-only monomials of degree `d` inside the doubled
/// degree-`d` graded piece.
fn embed_x_basis(x_ctx: &Ctx, xy_ctx: &Ctx, d: usize) -> Result<RowBasis> {
    let xy_basis = xy_ctx.graded_basis(d)?;
    let dim = xy_basis.len();
    let mut rows = Vec::new();
    for m in x_ctx.graded_basis(d)? {
        let mut exps = m.exponents().to_vec();
        exps.resize(xy_ctx.n(), 0);
        let extended = crate::algebra::Monomial::from_exponents(exps);
        let idx = xy_basis.binary_search(&extended).expect("x monomial embeds");
        let mut row = vec![Rat::from_integer(0.into()); dim];
        row[idx] = Rat::from_integer(1.into());
        rows.push(row);
    }
    RowBasis::from_rows(dim, rows)
}

/// Re-express vectors supported on the `x`-only monomials in the `x`-side
/// coordinates.
fn restrict_to_x(basis: &RowBasis, x_ctx: &Ctx, xy_ctx: &Ctx, d: usize) -> Result<RowBasis> {
    let xy_basis = xy_ctx.graded_basis(d)?;
    let x_basis = x_ctx.graded_basis(d)?;
    let mut position = vec![None; xy_basis.len()];
    for (xi, m) in x_basis.iter().enumerate() {
        let mut exps = m.exponents().to_vec();
        exps.resize(xy_ctx.n(), 0);
        let extended = crate::algebra::Monomial::from_exponents(exps);
        let idx = xy_basis.binary_search(&extended).expect("x monomial embeds");
        position[idx] = Some(xi);
    }
    let mut rows = Vec::new();
    for row in basis.rows() {
        let mut out = vec![Rat::from_integer(0.into()); x_basis.len()];
        for (i, v) in row.iter().enumerate() {
            if v == &Rat::from_integer(0.into()) {
                continue;
            }
            match position[i] {
                Some(xi) => out[xi] = v.clone(),
                None => {
                    return Err(Error::Problem(
                        "vector not supported on the x-side monomials".into(),
                    ))
                }
            }
        }
        rows.push(out);
    }
    RowBasis::from_rows(x_basis.len(), rows)
}

/// Generating invariants through the arrangement route: intersection ideal
/// of the group arrangement, minimal generators, `y`-elimination, Reynolds
/// projection, then removal of any generator lying in the subalgebra span
/// of the others. The fixed-space oracle is never consulted here.
pub fn invariant_generators_via_arrangement(
    group: &FiniteMatrixGroup,
    x_ctx: &Ctx,
) -> Result<GeneratorSet> {
    if x_ctx.rule() != SignRule::Exterior {
        return Err(Error::UnsupportedRule(x_ctx.rule().name()));
    }
    if group.dim() != x_ctx.n() {
        return Err(Error::DimensionMismatch("group vs context".into()));
    }
    let n = x_ctx.n();
    let xy_ctx = doubled_context(x_ctx)?;
    let arrangement = group_arrangement(group)?;
    let ideal: GradedIdeal = intersection_ideal(&arrangement, &xy_ctx, 2 * n)?;
    let ideal_gens = minimal_generators(&ideal)?;
    let eliminated = eliminate_y(&ideal_gens, x_ctx)?;
    let mut projected: Vec<(usize, SkewPoly)> = Vec::new();
    for (d, g) in eliminated.gens() {
        let r = reynolds(group, g)?;
        if !r.is_zero() {
            projected.push((*d, monic(&r)));
        }
    }
    projected.sort_by(|(da, fa), (db, fb)| da.cmp(db).then_with(|| cmp_polys(fa, fb)));
    projected.dedup();
    // drop anything the rest already spans; repeat until stable
    loop {
        let mut removed = false;
        for i in 0..projected.len() {
            let (d, f) = projected[i].clone();
            let others = GeneratorSet::new(
                projected
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect(),
            );
            let span = subalgebra_graded_span(&others, x_ctx, d)?;
            if span.contains(&f.to_coords(d)?) {
                projected.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    Ok(GeneratorSet::new(projected))
}

fn monic(f: &SkewPoly) -> SkewPoly {
    match f.terms().next() {
        Some((_, lead)) => f.scale(&lead.clone().recip()),
        None => f.clone(),
    }
}

fn cmp_polys(a: &SkewPoly, b: &SkewPoly) -> std::cmp::Ordering {
    let ka: Vec<_> = a.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let kb: Vec<_> = b.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    ka.cmp(&kb)
}

/// Outcome of a Noether-bound run with one of the two generator methods.
#[derive(Clone, Debug)]
pub struct NoetherReport {
    pub method: Method,
    pub rule: SignRule,
    pub cap: usize,
    pub group_order: usize,
    pub generators: GeneratorSet,
    pub beta: usize,
    pub bound: usize,
    /// `beta <= bound`. Asserted only under the exterior rule; the skew
    /// rule can fail the bound and merely reports it.
    pub pass: bool,
    /// Whether the bound is an assertion for this rule.
    pub asserted: bool,
    /// Fixed-space dimension per degree, 0..=cap.
    pub invariant_dims: Vec<usize>,
    /// Dimensions generated by the returned set per degree, 0..=cap.
    pub generated_dims: Vec<usize>,
    /// Generated dimensions match the fixed-space dimensions degreewise.
    pub dims_match: bool,
}

/// Run the chosen generator computation and report the degree bound.
pub fn noether_check(
    group: &FiniteMatrixGroup,
    ctx: &Ctx,
    method: Method,
) -> Result<NoetherReport> {
    let generators = match method {
        Method::Direct => algebra_generators(group, ctx)?,
        Method::Arrangement => invariant_generators_via_arrangement(group, ctx)?,
    };
    let cap = ctx.cap();
    let mut invariant_dims = Vec::with_capacity(cap + 1);
    for d in 0..=cap {
        invariant_dims.push(fixed_space(group, ctx, d)?.dim());
    }
    let spans = subalgebra_spans(&generators, ctx, cap)?;
    let generated_dims: Vec<usize> = spans.iter().map(|b| b.dim()).collect();
    let dims_match = generated_dims == invariant_dims;
    let beta = generators.beta();
    let bound = group.order();
    Ok(NoetherReport {
        method,
        rule: ctx.rule(),
        cap,
        group_order: group.order(),
        beta,
        bound,
        pass: beta <= bound,
        asserted: ctx.rule() == SignRule::Exterior,
        invariant_dims,
        generated_dims,
        dims_match,
        generators,
    })
}

/// One minimal generator above the group-order bound, with its square-free
/// status.
#[derive(Clone, Debug)]
pub struct SquarefreeEntry {
    pub degree: usize,
    pub generator: SkewPoly,
    pub squarefree: bool,
}

/// Report of the square-free probe over the skew rule.
#[derive(Clone, Debug)]
pub struct SquarefreeReport {
    pub group_order: usize,
    pub cap: usize,
    pub generators: GeneratorSet,
    pub entries: Vec<SquarefreeEntry>,
    /// Degrees above the bound where the fixed space still contains a
    /// nonzero square-free element, with the dimension of that slice.
    /// Reported, never asserted.
    pub squarefree_invariants_above_bound: Vec<(usize, usize)>,
}

/// For a signed-permutation group acting on the skew ring, report whether
/// the minimal invariant generators above degree `|G|` are square-free,
/// and search the fixed spaces above the bound for square-free elements.
pub fn squarefree_probe(group: &FiniteMatrixGroup, ctx: &Ctx) -> Result<SquarefreeReport> {
    if ctx.rule() != SignRule::SkewMinusOne {
        return Err(Error::UnsupportedRule(ctx.rule().name()));
    }
    if !group.is_signed_permutation() {
        return Err(Error::UnsupportedSubstitution(
            "square-free probe needs a signed-permutation group (squares ideal must be stable)"
                .into(),
        ));
    }
    let generators = algebra_generators(group, ctx)?;
    let bound = group.order();
    let entries: Vec<SquarefreeEntry> = generators
        .gens()
        .iter()
        .filter(|(d, _)| *d > bound)
        .map(|(d, g)| SquarefreeEntry {
            degree: *d,
            generator: g.clone(),
            squarefree: g.is_squarefree(),
        })
        .collect();
    let mut squarefree_invariants_above_bound = Vec::new();
    for d in bound + 1..=ctx.cap() {
        let basis = ctx.graded_basis(d)?;
        let dim = basis.len();
        let mut rows = Vec::new();
        for (i, m) in basis.iter().enumerate() {
            if m.is_squarefree() {
                let mut row = vec![Rat::from_integer(0.into()); dim];
                row[i] = Rat::from_integer(1.into());
                rows.push(row);
            }
        }
        let squarefree_slice = RowBasis::from_rows(dim, rows)?;
        let fixed = fixed_space(group, ctx, d)?;
        let both = intersect_row_spaces(&[fixed, squarefree_slice])?;
        if !both.is_zero() {
            squarefree_invariants_above_bound.push((d, both.dim()));
        }
    }
    Ok(SquarefreeReport {
        group_order: bound,
        cap: ctx.cap(),
        generators,
        entries,
        squarefree_invariants_above_bound,
    })
}

/// One row of the bound-transference table.
#[derive(Clone, Debug, Serialize)]
pub struct TransferRow {
    pub dim_v: usize,
    pub beta_sym: usize,
    pub beta_ext: usize,
}

/// Comparison of the symmetric and exterior degree bounds over growing
/// numbers of trivial-action copies.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub group_order: usize,
    pub w_dim: usize,
    pub rows: Vec<TransferRow>,
    pub max_beta_sym: usize,
    pub max_beta_ext: usize,
    pub pass: bool,
}

/// Block-diagonal action of the group on `copies` copies of its space
/// (trivial action on the multiplicity factor).
fn tensor_group(group: &FiniteMatrixGroup, copies: usize) -> Result<FiniteMatrixGroup> {
    let n = group.dim();
    let generators: Vec<MatrixQ> = group
        .generator_matrices()
        .map(|g| {
            let mut big = MatrixQ::zero(n * copies, n * copies);
            for b in 0..copies {
                for r in 0..n {
                    for c in 0..n {
                        *big.at_mut(b * n + r, b * n + c) = g.at(r, c).clone();
                    }
                }
            }
            big
        })
        .collect();
    FiniteMatrixGroup::enumerate(&generators, group.order())
}

/// For each multiplicity in `v_dims`, compute the symmetric-rule degree
/// bound (searching up to the classical bound `|G|`, which is complete)
/// and the exterior-rule degree bound by the direct method, then check
/// that the exterior bound never exceeds the symmetric one.
pub fn bound_transference_experiment(
    group: &FiniteMatrixGroup,
    v_dims: &[usize],
) -> Result<TransferReport> {
    if v_dims.is_empty() {
        return Err(Error::EmptyInput("transfer experiment with no multiplicities".into()));
    }
    let mut rows = Vec::new();
    for &m in v_dims {
        if m == 0 {
            return Err(Error::Problem("multiplicity 0 in transfer experiment".into()));
        }
        let tg = tensor_group(group, m)?;
        let vars = group.dim() * m;
        let sym_ctx = AlgebraCtx::symmetric(vars, group.order())?;
        let beta_sym = algebra_generators(&tg, &sym_ctx)?.beta();
        let ext_ctx = AlgebraCtx::exterior(vars);
        let beta_ext = algebra_generators(&tg, &ext_ctx)?.beta();
        rows.push(TransferRow { dim_v: m, beta_sym, beta_ext });
    }
    let max_beta_sym = rows.iter().map(|r| r.beta_sym).max().unwrap_or(0);
    let max_beta_ext = rows.iter().map(|r| r.beta_ext).max().unwrap_or(0);
    Ok(TransferReport {
        group_order: group.order(),
        w_dim: group.dim(),
        rows,
        max_beta_sym,
        max_beta_ext,
        pass: max_beta_ext <= max_beta_sym,
    })
}
