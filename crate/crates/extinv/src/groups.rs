//! Finite matrix groups over the rationals and their action on graded
//! algebras.
//!
//! Groups are enumerated from generator matrices by breadth-first closure
//! under multiplication; the element acts on a polynomial by substituting
//! each variable with the corresponding row of its matrix (so `g . f` is
//! `f` composed with the matrix of `g`, a right action).

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::{Ctx, LinearForm, SkewPoly};
use crate::error::{Error, Result};
use crate::linalg::MatrixQ;

/// An explicit finite group of invertible rational matrices, closed under
/// multiplication, in deterministic discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<MatrixQ>,
    identity: usize,
    generators: Vec<usize>,
}

pub const DEFAULT_ENUMERATION_CAP: usize = 10_000;

impl FiniteMatrixGroup {
    /// Close the generators under multiplication. Fails if a generator is
    /// singular or the closure grows past `cap` elements.
    pub fn enumerate(generators: &[MatrixQ], cap: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::EmptyInput("group enumeration needs generators".into()));
        };
        let n = first.rows();
        for g in generators {
            if !g.is_square() || g.rows() != n {
                return Err(Error::DimensionMismatch(
                    "generators must be square matrices of equal size".into(),
                ));
            }
            if g.rank() != n {
                return Err(Error::NonInvertibleGenerator);
            }
        }
        let identity = MatrixQ::identity(n);
        let mut elements = vec![identity.clone()];
        let mut seen: HashMap<MatrixQ, usize> = HashMap::new();
        seen.insert(identity, 0);
        let mut next = 0usize;
        while next < elements.len() {
            let current = elements[next].clone();
            next += 1;
            for g in generators {
                let product = current.matmul(g)?;
                if seen.contains_key(&product) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(Error::EnumerationCapExceeded(cap));
                }
                seen.insert(product.clone(), elements.len());
                elements.push(product);
            }
        }
        let generator_indices = generators
            .iter()
            .map(|g| seen[g])
            .collect::<Vec<_>>();
        Ok(FiniteMatrixGroup {
            dim: n,
            elements,
            identity: 0,
            generators: generator_indices,
        })
    }

    pub fn trivial(n: usize) -> Self {
        Self::enumerate(&[MatrixQ::identity(n)], 2).expect("identity closes immediately")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MatrixQ] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MatrixQ {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    /// Indices of the original generators inside `elements`.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> impl Iterator<Item = &MatrixQ> {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    /// Multiplicative order of a single element.
    pub fn element_order(&self, i: usize) -> usize {
        let g = &self.elements[i];
        let mut power = g.clone();
        let mut order = 1;
        while power != MatrixQ::identity(self.dim) {
            power = power.matmul(g).expect("square");
            order += 1;
        }
        order
    }

    /// True when every element has exactly one nonzero entry per row and
    /// column (the shape that keeps the squares ideal stable under the skew
    /// rule).
    pub fn is_signed_permutation(&self) -> bool {
        self.elements.iter().all(|m| {
            let n = m.rows();
            let mut col_used = vec![false; n];
            for r in 0..n {
                let mut nonzero = 0;
                for (c, used) in col_used.iter_mut().enumerate() {
                    if !m.at(r, c).is_zero() {
                        nonzero += 1;
                        if *used {
                            return false;
                        }
                        *used = true;
                    }
                }
                if nonzero != 1 {
                    return false;
                }
            }
            true
        })
    }
}

/// Row `i` of the matrix as the image of variable `i`.
pub fn substitution_images(g: &MatrixQ) -> Vec<LinearForm> {
    g.row_iter().map(|row| LinearForm::new(row.to_vec())).collect()
}

/// Action of a group element on a polynomial: substitute each variable by
/// the corresponding row of the matrix. Degree preserving.
pub fn act(g: &MatrixQ, f: &SkewPoly) -> Result<SkewPoly> {
    let ctx = f.ctx();
    if !g.is_square() || g.rows() != ctx.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on {} variables",
            g.rows(),
            g.cols(),
            ctx.n()
        )));
    }
    f.substitute(ctx, &substitution_images(g))
}

/// Matrix of `act(g, .)` on the degree-`d` graded basis, column convention:
/// column `j` holds the coordinates of the image of the `j`-th basis
/// monomial.
pub fn representation_matrix(g: &MatrixQ, ctx: &Ctx, d: usize) -> Result<MatrixQ> {
    let basis = ctx.graded_basis(d)?;
    let dim = basis.len();
    let mut out = MatrixQ::zero(dim, dim);
    for (j, m) in basis.iter().enumerate() {
        let image = act(g, &SkewPoly::monomial(ctx, m.clone(), crate::rat::rat_int(1))?)?;
        for (i, c) in image.to_coords(d)?.into_iter().enumerate() {
            *out.at_mut(i, j) = c;
        }
    }
    Ok(out)
}
