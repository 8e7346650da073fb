//! Named example groups used by the built-in examples command and the
//! test batteries.

use crate::groups::FiniteMatrixGroup;
use crate::linalg::MatrixQ;

fn enumerate(n: usize, gens: &[&[i64]]) -> FiniteMatrixGroup {
    let gens: Vec<MatrixQ> = gens.iter().map(|e| MatrixQ::from_i64(n, n, e)).collect();
    FiniteMatrixGroup::enumerate(&gens, 1000).expect("battery groups are small and finite")
}

/// Z/2 swapping two variables.
pub fn z2_swap() -> FiniteMatrixGroup {
    enumerate(2, &[&[0, 1, 1, 0]])
}

/// Z/2 fixing the first variable and negating the second.
pub fn z2_sign() -> FiniteMatrixGroup {
    enumerate(2, &[&[1, 0, 0, -1]])
}

/// Z/2 negating a single variable.
pub fn z2_sign_flip_line() -> FiniteMatrixGroup {
    enumerate(1, &[&[-1]])
}

/// Z/2 acting as two copies of the sign representation plus two fixed
/// variables: diag(1, 1, -1, -1).
pub fn z2_two_copies() -> FiniteMatrixGroup {
    enumerate(4, &[&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1]])
}

/// Z/3 as the rational rotation companion matrix [[0,-1],[1,-1]].
pub fn z3_rotation() -> FiniteMatrixGroup {
    enumerate(2, &[&[0, -1, 1, -1]])
}

/// Z/2 x Z/2 as diagonal sign patterns on four variables.
pub fn klein_four_signs() -> FiniteMatrixGroup {
    enumerate(
        4,
        &[
            &[-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1],
        ],
    )
}

/// S3 permuting three variables, from adjacent transpositions.
pub fn s3_permutation() -> FiniteMatrixGroup {
    enumerate(
        3,
        &[
            &[0, 1, 0, 1, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 1, 0, 1, 0],
        ],
    )
}

/// D4 as signed 2x2 permutation matrices (rotation and reflection).
pub fn d4_signed() -> FiniteMatrixGroup {
    enumerate(2, &[&[0, -1, 1, 0], &[1, 0, 0, -1]])
}

/// The battery used by the cross-method and oracle checks.
pub fn battery() -> Vec<(&'static str, FiniteMatrixGroup)> {
    vec![
        ("z2_swap", z2_swap()),
        ("z2_sign", z2_sign()),
        ("z3_rotation", z3_rotation()),
        ("klein_four_signs", klein_four_signs()),
        ("s3_permutation", s3_permutation()),
        ("d4_signed", d4_signed()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_orders() {
        let expected = [2, 2, 3, 4, 6, 8];
        for ((name, group), want) in battery().iter().zip(expected) {
            assert_eq!(group.order(), want, "{name}");
        }
    }

    #[test]
    fn klein_group_is_not_cyclic() {
        let g = klein_four_signs();
        for i in 0..g.order() {
            assert!(g.element_order(i) <= 2);
        }
    }
}
