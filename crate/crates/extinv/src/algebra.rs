//! Graded algebras with three sign rules.
//!
//! The three rules share one representation (sparse exponent-vector terms
//! with rational coefficients) and differ only in the sign law:
//!
//! * `Exterior`: distinct variables anticommute and every square is zero;
//!   finite dimensional with top degree `n`.
//! * `SkewMinusOne`: distinct variables anticommute but squares survive;
//!   infinite dimensional, tracked up to an explicit degree cap.
//! * `Symmetric`: plain commutative polynomials, tracked up to a cap.
//!
//! The sign of a monomial product is the parity of inversions between
//! distinct variables when the concatenated factor word is sorted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{format_rat_abs, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignRule {
    Exterior,
    SkewMinusOne,
    Symmetric,
}

impl SignRule {
    pub fn name(self) -> &'static str {
        match self {
            SignRule::Exterior => "exterior",
            SignRule::SkewMinusOne => "skew_minus_one",
            SignRule::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for SignRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shared, immutable description of the algebra a polynomial lives in.
#[derive(Debug, PartialEq, Eq)]
pub struct AlgebraCtx {
    n: usize,
    names: Vec<String>,
    rule: SignRule,
    cap: usize,
}

pub type Ctx = Arc<AlgebraCtx>;

impl AlgebraCtx {
    pub fn new(rule: SignRule, names: Vec<String>, cap: usize) -> Result<Ctx> {
        let n = names.len();
        if n == 0 {
            return Err(Error::BadContext("need at least one variable".into()));
        }
        match rule {
            SignRule::Exterior => {
                if cap != n {
                    return Err(Error::BadContext(format!(
                        "exterior cap is forced to the variable count {n}, got {cap}"
                    )));
                }
            }
            SignRule::SkewMinusOne | SignRule::Symmetric => {
                if cap == 0 {
                    return Err(Error::BadContext(format!(
                        "{} rule needs a positive degree cap",
                        rule.name()
                    )));
                }
            }
        }
        Ok(Arc::new(AlgebraCtx { n, names, rule, cap }))
    }

    pub fn exterior(n: usize) -> Ctx {
        Self::new(SignRule::Exterior, default_names(n), n).expect("valid exterior context")
    }

    pub fn exterior_named(names: Vec<String>) -> Result<Ctx> {
        let cap = names.len();
        Self::new(SignRule::Exterior, names, cap)
    }

    pub fn skew(n: usize, cap: usize) -> Result<Ctx> {
        Self::new(SignRule::SkewMinusOne, default_names(n), cap)
    }

    pub fn symmetric(n: usize, cap: usize) -> Result<Ctx> {
        Self::new(SignRule::Symmetric, default_names(n), cap)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> SignRule {
        self.rule
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// All monomials of degree `d`, in the canonical order (ascending on
    /// the sorted variable-index word, so `x1^2` precedes `x1 x2`).
    pub fn graded_basis(self: &Ctx, d: usize) -> Result<Vec<Monomial>> {
        if d > self.cap {
            return Err(Error::DegreeAboveCap { degree: d, cap: self.cap });
        }
        let max_exp = match self.rule {
            SignRule::Exterior => 1,
            _ => d,
        };
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.n];
        fill_basis(&mut out, &mut exps, 0, d, max_exp);
        Ok(out)
    }

    pub fn graded_dim(self: &Ctx, d: usize) -> Result<usize> {
        Ok(self.graded_basis(d)?.len())
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn fill_basis(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, var: usize, remaining: usize, max_exp: usize) {
    if var + 1 == exps.len() {
        if remaining <= max_exp {
            exps[var] = remaining as u32;
            out.push(Monomial { exps: exps.clone() });
            exps[var] = 0;
        }
        return;
    }
    for e in (0..=remaining.min(max_exp)).rev() {
        exps[var] = e as u32;
        fill_basis(out, exps, var + 1, remaining - e, max_exp);
        exps[var] = 0;
    }
}

/// Exponent vector of a monomial. Ordered by total degree, then by the
/// canonical within-degree order used for every graded basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    fn valid_for(&self, ctx: &AlgebraCtx) -> bool {
        self.exps.len() == ctx.n
            && self.degree() <= ctx.cap
            && (ctx.rule != SignRule::Exterior || self.is_squarefree())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // same degree: the monomial with the larger exponent at the first
        // differing variable uses smaller variables, so it comes first
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match b.cmp(a) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Product of two monomials under a sign rule. `None` means the product is
/// zero (a repeated variable under the exterior rule).
fn mul_monomials(rule: SignRule, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    debug_assert_eq!(a.exps.len(), b.exps.len());
    if rule == SignRule::Exterior && a.exps.iter().zip(&b.exps).any(|(&x, &y)| x + y > 1) {
        return None;
    }
    let negative = match rule {
        SignRule::Symmetric => false,
        SignRule::Exterior | SignRule::SkewMinusOne => {
            // inversions between distinct variables: pairs (i in a, j in b)
            // with i > j
            let mut inversions: u64 = 0;
            let mut a_above: u64 = a.exps.iter().map(|&e| e as u64).sum();
            for (aj, bj) in a.exps.iter().zip(&b.exps) {
                a_above -= *aj as u64;
                inversions += *bj as u64 * a_above;
            }
            inversions % 2 == 1
        }
    };
    let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
    Some((negative, Monomial { exps }))
}

/// Sparse polynomial over an algebra context. Terms are kept in canonical
/// monomial order with no stored zero coefficients.
///
/// ```
/// use extinv::algebra::{AlgebraCtx, SkewPoly};
///
/// let ctx = AlgebraCtx::exterior(2);
/// let x = SkewPoly::variable(&ctx, 0)?;
/// let y = SkewPoly::variable(&ctx, 1)?;
/// assert_eq!(y.mul(&x)?, x.mul(&y)?.neg());
/// assert!(x.mul(&x)?.is_zero());
/// # Ok::<(), extinv::Error>(())
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rat>,
}

impl SkewPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        SkewPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rat::one())
    }

    pub fn constant(ctx: &Ctx, c: Rat) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.n()), c);
        }
        p
    }

    pub fn variable(ctx: &Ctx, i: usize) -> Result<Self> {
        if i >= ctx.n() {
            return Err(Error::BadMonomial(format!("variable index {i} out of range")));
        }
        Self::monomial(ctx, Monomial::variable(ctx.n(), i), Rat::one())
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: Rat) -> Result<Self> {
        if !m.valid_for(ctx) {
            return Err(Error::BadMonomial(format!("{:?} invalid for context", m.exps)));
        }
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(ctx: &Ctx, terms: I) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            if !m.valid_for(ctx) {
                return Err(Error::BadMonomial(format!("{:?} invalid for context", m.exps)));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest term degree, `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree of all terms, or `None` when the polynomial is
    /// zero or mixed-degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.terms.keys().all(|m| m.is_squarefree())
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_ctx(&self, other: &SkewPoly) {
        assert_eq!(self.ctx, other.ctx, "polynomials from different contexts");
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_same_ctx(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SkewPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, s: &Rat) -> SkewPoly {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        SkewPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Product in the context's algebra. Terms above the degree cap are
    /// truncated for the capped rules; the exterior rule annihilates them
    /// on its own.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        if self.ctx != other.ctx {
            return Err(Error::MismatchedContexts);
        }
        let rule = self.ctx.rule();
        let cap = self.ctx.cap();
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > cap {
                    continue;
                }
                if let Some((negative, m)) = mul_monomials(rule, ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Apply the algebra homomorphism sending each variable to the given
    /// linear form over `target`. Source and target must share the sign
    /// rule; under the skew rule every image must be a signed multiple of a
    /// single variable, with distinct variables mapping to distinct targets.
    pub fn substitute(&self, target: &Ctx, images: &[LinearForm]) -> Result<SkewPoly> {
        if images.len() != self.ctx.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ctx.n()
            )));
        }
        if self.ctx.rule() != target.rule() {
            return Err(Error::MismatchedContexts);
        }
        for img in images {
            if img.coeffs().len() != target.n() {
                return Err(Error::DimensionMismatch(
                    "image length vs target variable count".into(),
                ));
            }
        }
        if self.ctx.rule() == SignRule::SkewMinusOne {
            let mut seen = vec![false; target.n()];
            for img in images {
                match img.single_variable() {
                    Some((j, _)) => {
                        if seen[j] {
                            return Err(Error::UnsupportedSubstitution(
                                "two skew variables map to the same variable".into(),
                            ));
                        }
                        seen[j] = true;
                    }
                    None if img.is_zero() => {}
                    None => {
                        return Err(Error::UnsupportedSubstitution(
                            "skew substitution images must be signed multiples of a single variable"
                                .into(),
                        ));
                    }
                }
            }
        }
        let image_polys: Vec<SkewPoly> = images.iter().map(|f| f.to_poly(target)).collect();
        let mut out = SkewPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = SkewPoly::constant(target, c.clone());
            'factors: for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&image_polys[i])?;
                    if term.is_zero() {
                        break 'factors;
                    }
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Coordinates of a homogeneous polynomial of degree `d` with respect to
    /// `graded_basis(ctx, d)`.
    pub fn to_coords(&self, d: usize) -> Result<Vec<Rat>> {
        if !self.is_homogeneous_of(d) {
            return Err(Error::NotHomogeneous(d));
        }
        let basis = self.ctx.graded_basis(d)?;
        let mut coords = vec![Rat::zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis
                .binary_search(m)
                .map_err(|_| Error::BadMonomial("term not in graded basis".into()))?;
            coords[idx] = c.clone();
        }
        Ok(coords)
    }

    pub fn from_coords(ctx: &Ctx, d: usize, coords: &[Rat]) -> Result<SkewPoly> {
        let basis = ctx.graded_basis(d)?;
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a basis of size {}",
                coords.len(),
                basis.len()
            )));
        }
        SkewPoly::from_terms(ctx, basis.into_iter().zip(coords.iter().cloned()))
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c < &Rat::zero();
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = render_monomial(&self.ctx, m);
            let abs_is_unit = num_traits::Signed::abs(c).is_one();
            if mono.is_empty() {
                f.write_str(&format_rat_abs(c))?;
            } else if abs_is_unit {
                f.write_str(&mono)?;
            } else {
                write!(f, "{} {}", format_rat_abs(c), mono)?;
            }
        }
        Ok(())
    }
}

fn render_monomial(ctx: &AlgebraCtx, m: &Monomial) -> String {
    let sep = match ctx.rule() {
        SignRule::Exterior => "\u{2227}",
        _ => " ",
    };
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(ctx.name(i).to_string());
        } else {
            parts.push(format!("{}^{}", ctx.name(i), e));
        }
    }
    parts.join(sep)
}

/// Degree-one element given by its variable coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        LinearForm { coeffs: vec![Rat::zero(); n] }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some((index, coefficient))` when the form is a nonzero multiple of a
    /// single variable.
    pub fn single_variable(&self) -> Option<(usize, &Rat)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found
    }

    pub fn to_poly(&self, ctx: &Ctx) -> SkewPoly {
        assert_eq!(self.coeffs.len(), ctx.n(), "form length vs context");
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::variable(ctx.n(), i), c.clone()));
        SkewPoly::from_terms(ctx, terms).expect("degree-one terms are always valid")
    }

    pub fn from_poly(p: &SkewPoly) -> Result<LinearForm> {
        if !p.is_homogeneous_of(1) {
            return Err(Error::NotHomogeneous(1));
        }
        let mut coeffs = vec![Rat::zero(); p.ctx().n()];
        for (m, c) in p.terms() {
            let i = m.exponents().iter().position(|&e| e == 1).expect("degree one");
            coeffs[i] = c.clone();
        }
        Ok(LinearForm { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    fn var(ctx: &Ctx, i: usize) -> SkewPoly {
        SkewPoly::variable(ctx, i).unwrap()
    }

    #[test]
    fn exterior_one_transposition() {
        let ctx = AlgebraCtx::exterior(2);
        let (x, y) = (var(&ctx, 0), var(&ctx, 1));
        let yx = y.mul(&x).unwrap();
        assert_eq!(yx, x.mul(&y).unwrap().neg());
    }

    #[test]
    fn exterior_square_is_zero() {
        let ctx = AlgebraCtx::exterior(2);
        let x = var(&ctx, 0);
        assert!(x.mul(&x).unwrap().is_zero());
        let f = x.add(&var(&ctx, 1));
        assert!(f.mul(&f).unwrap().is_zero());
    }

    #[test]
    fn skew_square_of_sum() {
        // (x+y)^2 = x^2 + xy + yx + y^2 = x^2 + y^2
        let ctx = AlgebraCtx::skew(2, 4).unwrap();
        let f = var(&ctx, 0).add(&var(&ctx, 1));
        let sq = f.mul(&f).unwrap();
        let expected = SkewPoly::from_terms(
            &ctx,
            [
                (Monomial::from_exponents(vec![2, 0]), rat_int(1)),
                (Monomial::from_exponents(vec![0, 2]), rat_int(1)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn skew_cap_truncates() {
        let ctx = AlgebraCtx::skew(1, 2).unwrap();
        let x = var(&ctx, 0);
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2.max_degree(), Some(2));
        assert!(x2.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn substitute_diagonal_identification() {
        // y -> x over one exterior variable kills y - x
        let xy = AlgebraCtx::exterior_named(vec!["x".into(), "y".into()]).unwrap();
        let x_only = AlgebraCtx::exterior_named(vec!["x".into()]).unwrap();
        let f = var(&xy, 1).sub(&var(&xy, 0));
        let images = vec![
            LinearForm::new(vec![rat_int(1)]),
            LinearForm::new(vec![rat_int(1)]),
        ];
        assert!(f.substitute(&x_only, &images).unwrap().is_zero());
    }

    #[test]
    fn substitute_zero_image_kills_term() {
        let ctx = AlgebraCtx::exterior(2);
        let f = var(&ctx, 0).mul(&var(&ctx, 1)).unwrap();
        let images = vec![
            LinearForm::new(vec![rat_int(1), rat_int(0)]),
            LinearForm::zero(2),
        ];
        assert!(f.substitute(&ctx, &images).unwrap().is_zero());
    }

    #[test]
    fn skew_swap_flips_product() {
        let ctx = AlgebraCtx::skew(2, 4).unwrap();
        let xy = var(&ctx, 0).mul(&var(&ctx, 1)).unwrap();
        let images = vec![
            LinearForm::new(vec![rat_int(0), rat_int(1)]),
            LinearForm::new(vec![rat_int(1), rat_int(0)]),
        ];
        let got = xy.substitute(&ctx, &images).unwrap();
        assert_eq!(got, xy.neg());
    }

    #[test]
    fn skew_rejects_general_images() {
        let ctx = AlgebraCtx::skew(2, 4).unwrap();
        let x = var(&ctx, 0);
        let images = vec![
            LinearForm::new(vec![rat_int(1), rat_int(1)]),
            LinearForm::new(vec![rat_int(0), rat_int(1)]),
        ];
        assert!(matches!(
            x.substitute(&ctx, &images),
            Err(Error::UnsupportedSubstitution(_))
        ));
        let collide = vec![
            LinearForm::new(vec![rat_int(1), rat_int(0)]),
            LinearForm::new(vec![rat_int(2), rat_int(0)]),
        ];
        assert!(x.substitute(&ctx, &collide).is_err());
    }

    #[test]
    fn graded_basis_exterior() {
        let ctx = AlgebraCtx::exterior(2);
        assert_eq!(
            ctx.graded_basis(2).unwrap(),
            vec![Monomial::from_exponents(vec![1, 1])]
        );
        let ctx4 = AlgebraCtx::exterior(4);
        assert!(ctx4.graded_basis(5).is_err());
        assert_eq!(ctx4.graded_dim(2).unwrap(), 6);
    }

    #[test]
    fn graded_basis_skew_order() {
        // x^2, xy, y^2
        let ctx = AlgebraCtx::skew(2, 3).unwrap();
        let basis = ctx.graded_basis(2).unwrap();
        assert_eq!(
            basis,
            vec![
                Monomial::from_exponents(vec![2, 0]),
                Monomial::from_exponents(vec![1, 1]),
                Monomial::from_exponents(vec![0, 2]),
            ]
        );
        let mut sorted = basis.clone();
        sorted.sort();
        assert_eq!(basis, sorted, "basis must come out in canonical order");
    }

    #[test]
    fn coords_round_trip() {
        let ctx = AlgebraCtx::exterior(2);
        let f = var(&ctx, 0).add(&var(&ctx, 1));
        assert_eq!(f.to_coords(1).unwrap(), vec![rat_int(1), rat_int(1)]);
        assert_eq!(
            SkewPoly::zero(&ctx).to_coords(1).unwrap(),
            vec![rat_int(0), rat_int(0)]
        );
        let g = SkewPoly::from_coords(&ctx, 2, &[rat_int(1)]).unwrap();
        assert_eq!(g, var(&ctx, 0).mul(&var(&ctx, 1)).unwrap());
        assert!(f.add(&g).to_coords(1).is_err(), "mixed degrees rejected");
    }

    #[test]
    fn display_forms() {
        let ctx = AlgebraCtx::exterior(2);
        let f = var(&ctx, 0)
            .mul(&var(&ctx, 1))
            .unwrap()
            .scale(&rat(-1, 2))
            .add(&SkewPoly::one(&ctx));
        assert_eq!(f.to_string(), "1 - 1/2 x1\u{2227}x2");
        let skew = AlgebraCtx::skew(2, 3).unwrap();
        let g = var(&skew, 0).mul(&var(&skew, 0)).unwrap();
        assert_eq!(g.to_string(), "x1^2");
    }

    fn arb_poly(ctx: Ctx, max_terms: usize) -> impl Strategy<Value = SkewPoly> {
        let n = ctx.n();
        let cap = ctx.cap();
        let exp_max = if ctx.rule() == SignRule::Exterior { 1u32 } else { 2 };
        proptest::collection::vec(
            (proptest::collection::vec(0..=exp_max, n), -3i64..=3),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            let mut p = SkewPoly::zero(&ctx);
            for (exps, c) in terms {
                let m = Monomial::from_exponents(exps);
                if m.degree() <= cap {
                    p = p.add(&SkewPoly::monomial(&ctx, m, rat_int(c)).unwrap());
                }
            }
            p
        })
    }

    proptest! {
        #[test]
        fn associativity_exterior(
            (a, b, c) in {
                let ctx = AlgebraCtx::exterior(3);
                (arb_poly(ctx.clone(), 4), arb_poly(ctx.clone(), 4), arb_poly(ctx, 4))
            }
        ) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn associativity_skew_within_cap(
            (a, b, c) in {
                // cap high enough that no product truncates
                let ctx = AlgebraCtx::skew(3, 18).unwrap();
                (arb_poly(ctx.clone(), 3), arb_poly(ctx.clone(), 3), arb_poly(ctx, 3))
            }
        ) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn graded_commutativity_sign_law(
            (da, df, a, f) in (1usize..=2, 1usize..=2).prop_flat_map(|(da, df)| {
                let ctx = AlgebraCtx::exterior(4);
                let pick = move |d: usize, ctx: Ctx| {
                    let basis = ctx.graded_basis(d).unwrap();
                    (proptest::sample::subsequence(basis, 1..=3),
                     proptest::collection::vec(-3i64..=3, 3))
                        .prop_map(move |(monos, cs)| {
                            SkewPoly::from_terms(
                                &ctx,
                                monos.into_iter().zip(cs).map(|(m, c)| (m, rat_int(c))),
                            )
                            .unwrap()
                        })
                };
                (Just(da), Just(df), pick(da, ctx.clone()), pick(df, ctx))
            })
        ) {
            // a ∧ f = (-1)^{deg a * deg f} f ∧ a for homogeneous a, f
            let af = a.mul(&f).unwrap();
            let fa = f.mul(&a).unwrap();
            let expected = if (da * df) % 2 == 1 { fa.neg() } else { fa };
            prop_assert_eq!(af, expected);
        }

        #[test]
        fn skew_anticommutes_distinct_squares_survive(i in 0usize..3, j in 0usize..3) {
            let ctx = AlgebraCtx::skew(3, 6).unwrap();
            let xi = SkewPoly::variable(&ctx, i).unwrap();
            let xj = SkewPoly::variable(&ctx, j).unwrap();
            if i != j {
                prop_assert_eq!(xi.mul(&xj).unwrap(), xj.mul(&xi).unwrap().neg());
            } else {
                prop_assert!(!xi.mul(&xi).unwrap().is_zero());
            }
        }

        #[test]
        fn substitution_is_multiplicative(
            (f, g, imgs) in {
                let ctx = AlgebraCtx::exterior(3);
                (
                    arb_poly(ctx.clone(), 3),
                    arb_poly(ctx.clone(), 3),
                    proptest::collection::vec(
                        proptest::collection::vec(-2i64..=2, 3),
                        3,
                    ),
                )
            }
        ) {
            let ctx = AlgebraCtx::exterior(3);
            let images: Vec<LinearForm> = imgs
                .into_iter()
                .map(|cs| LinearForm::new(cs.into_iter().map(rat_int).collect()))
                .collect();
            let prod_then_sub = f.mul(&g).unwrap().substitute(&ctx, &images).unwrap();
            let sub_then_prod = f
                .substitute(&ctx, &images)
                .unwrap()
                .mul(&g.substitute(&ctx, &images).unwrap())
                .unwrap();
            prop_assert_eq!(prod_then_sub, sub_then_prod);
        }

        #[test]
        fn substitution_composes(
            (f, a, b) in {
                let ctx = AlgebraCtx::exterior(2);
                (
                    arb_poly(ctx, 3),
                    proptest::collection::vec(-2i64..=2, 4),
                    proptest::collection::vec(-2i64..=2, 4),
                )
            }
        ) {
            let ctx = AlgebraCtx::exterior(2);
            let form = |row: &[i64]| LinearForm::new(row.iter().map(|&v| rat_int(v)).collect());
            let ia = vec![form(&a[0..2]), form(&a[2..4])];
            let ib = vec![form(&b[0..2]), form(&b[2..4])];
            // composed images: substitute ib into each image of ia
            let composed: Vec<LinearForm> = ia
                .iter()
                .map(|img| {
                    LinearForm::from_poly(&img.to_poly(&ctx).substitute(&ctx, &ib).unwrap())
                        .unwrap()
                })
                .collect();
            let two_step = f.substitute(&ctx, &ia).unwrap().substitute(&ctx, &ib).unwrap();
            let one_step = f.substitute(&ctx, &composed).unwrap();
            prop_assert_eq!(two_step, one_step);
        }
    }
}
