//! Finest direct-sum decomposition of `F_q^k` compatible with a family of
//! subspaces.
//!
//! A decomposition `V = U_1 ⊕ .. ⊕ U_r` is compatible with a subspace `S`
//! when `S = ⊕ (S ∩ U_t)`. Pieces are split along Fitting decompositions of
//! endomorphisms preserving every subspace of the family: an endomorphism
//! that is neither nilpotent nor invertible yields `ker φ^d ⊕ im φ^d`, and
//! a piece admits no such endomorphism exactly when it is indecomposable.
//! By Krull-Schmidt the number of indecomposable pieces does not depend on
//! the splitting order.
//!
//! Vectors are rows; a subspace is stored as a matrix whose rows form a
//! basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;
use crate::linear::Matrix;

/// Element count up to which the endomorphism algebra is enumerated
/// outright instead of sampled.
const ENUMERATE_LIMIT: u128 = 1 << 12;
const RANDOM_TRIALS: usize = 400;

pub(crate) fn span(field: PrimeField, dim: usize, rows: &[Vec<u32>]) -> Matrix {
    let data: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i64).collect())
        .collect();
    let m = Matrix::from_rows(field, dim, &data).expect("rows have length dim");
    let (r, pivots) = m.rref();
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

/// Rows `y` with `y · s = 0` for every basis row `s`: `v ∈ S ⟺ Q vᵀ = 0`.
fn annihilator(basis: &Matrix) -> Matrix {
    basis.null_space()
}

/// Coordinates (w.r.t. the rows of `piece`) of `S ∩ span(piece)`.
fn restrict(s: &Matrix, piece: &Matrix) -> Matrix {
    let d = piece.rows();
    if s.rows() == 0 {
        return Matrix::zeros(s.field(), 0, d);
    }
    let q = annihilator(s);
    if q.rows() == 0 {
        return Matrix::identity(s.field(), d);
    }
    // c · piece ∈ S  ⟺  Q · pieceᵀ · cᵀ = 0
    let eq = q.mul(&piece.transpose()).expect("shapes agree");
    eq.null_space()
}

/// Basis of `{φ : t·φ ∈ T for every t ∈ T, T in family}` as `d × d`
/// matrices acting on row vectors.
fn endomorphisms(field: PrimeField, d: usize, family: &[Matrix]) -> Vec<Matrix> {
    let mut eqs: Vec<Vec<i64>> = Vec::new();
    for t in family {
        if t.rows() == 0 || t.rows() == d {
            continue;
        }
        let q = annihilator(t);
        for a in 0..t.rows() {
            for b in 0..q.rows() {
                // Σ_{x,y} t[a][x] q[b][y] φ[x][y] = 0
                let mut row = vec![0i64; d * d];
                for x in 0..d {
                    let tx = t.get(a, x);
                    if tx == 0 {
                        continue;
                    }
                    for y in 0..d {
                        row[x * d + y] = field.mul(tx, q.get(b, y)) as i64;
                    }
                }
                eqs.push(row);
            }
        }
    }
    let basis = if eqs.is_empty() {
        Matrix::identity(field, d * d)
    } else {
        Matrix::from_rows(field, d * d, &eqs)
            .expect("rows have length d*d")
            .null_space()
    };
    (0..basis.rows())
        .map(|i| {
            let mut m = Matrix::zeros(field, d, d);
            for x in 0..d {
                for y in 0..d {
                    m.set(x, y, basis.get(i, x * d + y));
                }
            }
            m
        })
        .collect()
}

fn combination(field: PrimeField, d: usize, basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut m = Matrix::zeros(field, d, d);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for x in 0..d {
            for y in 0..d {
                let v = field.add(m.get(x, y), field.mul(c, b.get(x, y)));
                m.set(x, y, v);
            }
        }
    }
    m
}

/// `(ker φ^d, im φ^d)` as row bases when both are nonzero.
fn fitting_split(phi: &Matrix) -> Option<(Matrix, Matrix)> {
    let d = phi.rows();
    let rank = phi.rank();
    if rank == d {
        return None;
    }
    let mut power = phi.clone();
    for _ in 1..d {
        power = power.mul(phi).expect("square");
    }
    let (img, pivots) = power.rref();
    if pivots.is_empty() {
        return None;
    }
    let img = img.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
    let ker = power.transpose().null_space();
    Some((ker, img))
}

fn find_split(
    field: PrimeField,
    d: usize,
    basis: &[Matrix],
    rng: &mut ChaCha8Rng,
) -> Option<(Matrix, Matrix)> {
    let m = basis.len();
    if m <= 1 {
        return None;
    }
    for b in basis {
        if let Some(s) = fitting_split(b) {
            return Some(s);
        }
    }
    let q = field.order() as u128;
    let total = q.checked_pow(m as u32).unwrap_or(u128::MAX);
    if total <= ENUMERATE_LIMIT {
        for idx in 0..total {
            let mut coeffs = vec![0u32; m];
            let mut rest = idx;
            for c in coeffs.iter_mut() {
                *c = (rest % q) as u32;
                rest /= q;
            }
            if let Some(s) = fitting_split(&combination(field, d, basis, &coeffs)) {
                return Some(s);
            }
        }
        return None;
    }
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..m).map(|_| rng.gen_range(0..field.order())).collect();
        if let Some(s) = fitting_split(&combination(field, d, basis, &coeffs)) {
            return Some(s);
        }
    }
    None
}

/// Splits `F^dim` into indecomposable pieces compatible with every
/// subspace in `family`. Returns row bases of the pieces, in a
/// deterministic order.
pub(crate) fn finest_decomposition(
    field: PrimeField,
    dim: usize,
    family: &[Matrix],
) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pending = vec![Matrix::identity(field, dim)];
    let mut done = Vec::new();
    while let Some(piece) = pending.pop() {
        let d = piece.rows();
        if d <= 1 {
            done.push(piece);
            continue;
        }
        let local: Vec<Matrix> = family.iter().map(|s| restrict(s, &piece)).collect();
        let endo = endomorphisms(field, d, &local);
        match find_split(field, d, &endo, &mut rng) {
            Some((a, b)) => {
                pending.push(a.mul(&piece).expect("shapes agree"));
                pending.push(b.mul(&piece).expect("shapes agree"));
            }
            None => done.push(piece),
        }
    }
    done.sort_by_key(|m| m.to_rows());
    done
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> PrimeField {
        PrimeField::BINARY
    }

    #[test]
    fn no_constraints_splits_into_lines() {
        let pieces = finest_decomposition(gf2(), 3, &[]);
        assert_eq!(pieces.len(), 3);
    }

    #[test]
    fn lines_in_general_position_are_indecomposable() {
        // three distinct lines in F_2^2: the classic indecomposable triple
        let fam = vec![
            span(gf2(), 2, &[vec![1, 0]]),
            span(gf2(), 2, &[vec![0, 1]]),
            span(gf2(), 2, &[vec![1, 1]]),
        ];
        assert_eq!(finest_decomposition(gf2(), 2, &fam).len(), 1);
        assert_eq!(finest_decomposition(gf2(), 2, &fam[..2]).len(), 2);
    }

    #[test]
    fn pieces_are_compatible() {
        let fam = vec![
            span(gf2(), 3, &[vec![1, 1, 0]]),
            span(gf2(), 3, &[vec![0, 0, 1], vec![1, 1, 1]]),
        ];
        let pieces = finest_decomposition(gf2(), 3, &fam);
        let total: usize = pieces.iter().map(|p| p.rows()).sum();
        assert_eq!(total, 3);
        for s in &fam {
            let dims: usize = pieces.iter().map(|p| restrict(s, p).rows()).sum();
            assert_eq!(dims, s.rows());
        }
    }
}
