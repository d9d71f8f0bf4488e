//! Brute-force ground truth for small instances.
//!
//! Everything here enumerates: linear isometry groups of a poset metric,
//! poset automorphisms, hierarchical posets, and all codewords or all of
//! `F_q^n`. Each routine takes an explicit step budget and refuses to run
//! past it.

use crate::decomp::components_from_matrix;
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::field::PrimeField;
use crate::linear::{all_vectors, check_n, Code, Matrix, Vector};
use crate::poset::Poset;
use crate::subset::CoordSet;

/// A linear P-isometry `v -> v · matrix` with its induced order
/// automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub matrix: Matrix,
    /// `induced_map[i]` = the unique maximal element of `supp(T(e_i))`.
    pub induced_map: Vec<usize>,
}

impl Isometry {
    /// Computes the induced map; fails if some `T(e_i)` has no unique
    /// maximal support element.
    pub fn new(matrix: Matrix, poset: &Poset) -> Result<Self> {
        let n = poset.n();
        let mut induced_map = Vec::with_capacity(n);
        for i in 0..n {
            let maxes = poset.maximal_elements(matrix.row_support(i));
            if maxes.len() != 1 {
                return Err(Error::Invariant(format!(
                    "T(e_{}) has maximal support elements {maxes}",
                    i + 1
                )));
            }
            induced_map.push(maxes.min().expect("one element"));
        }
        Ok(Isometry {
            matrix,
            induced_map,
        })
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        v.mul_matrix(&self.matrix)
    }

    pub fn compose(&self, then: &Isometry, poset: &Poset) -> Result<Isometry> {
        Isometry::new(self.matrix.mul(&then.matrix)?, poset)
    }
}

/// Whether `v -> v · t` preserves the P-weight on every vector of `F_q^n`.
pub fn preserves_weight(t: &Matrix, poset: &Poset, budget: u128) -> Result<bool> {
    let n = poset.n();
    check_n(t.cols(), poset)?;
    check_n(t.rows(), poset)?;
    check_budget(pow_sat(t.field().order() as u128, n), budget)?;
    for v in all_vectors(t.field(), n) {
        let w = poset.ideal(v.support()).len();
        if poset.ideal(v.mul_matrix(t)?.support()).len() != w {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|G_P| = (q-1)^n · q^(#strict pairs)`.
pub fn triangular_group_order(poset: &Poset, field: PrimeField) -> u128 {
    let q = field.order() as u128;
    pow_sat(q - 1, poset.n()).saturating_mul(pow_sat(q, poset.strict_pair_count()))
}

/// All `T` with `T(e_j) = x_jj e_j + Σ_{i < j} x_ij e_i`, `x_jj != 0`.
pub fn enum_g_p(poset: &Poset, field: PrimeField, budget: u128) -> Result<Vec<Isometry>> {
    let total = triangular_group_order(poset, field);
    check_budget(total, budget)?;
    let n = poset.n();
    let q = field.order();
    let strict = poset.strict_pairs();
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut t = Matrix::zeros(field, n, n);
        for j in 0..n {
            t.set(j, j, (idx % (q as u128 - 1)) as u32 + 1);
            idx /= q as u128 - 1;
        }
        for &(i, j) in &strict {
            t.set(j, i, (idx % q as u128) as u32);
            idx /= q as u128;
        }
        out.push(Isometry {
            matrix: t,
            induced_map: (0..n).collect(),
        });
    }
    Ok(out)
}

/// All order automorphisms of the poset, as 0-indexed permutations.
pub fn enum_aut(poset: &Poset, budget: u128) -> Result<Vec<Vec<usize>>> {
    let n = poset.n();
    let total = (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b));
    check_budget(total, budget)?;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // preserve <= in both directions; comparability counts must match
    let mut used = vec![false; n];
    extend_aut(poset, &mut perm, &mut used, 0, &mut out);
    Ok(out)
}

fn extend_aut(
    poset: &Poset,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    pos: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let n = poset.n();
    if pos == n {
        out.push(perm.clone());
        return;
    }
    for img in 0..n {
        if used[img] {
            continue;
        }
        let ok = (0..pos).all(|a| {
            poset.leq(a, pos) == poset.leq(perm[a], img)
                && poset.leq(pos, a) == poset.leq(img, perm[a])
        });
        if !ok {
            continue;
        }
        perm[pos] = img;
        used[img] = true;
        extend_aut(poset, perm, used, pos + 1, out);
        used[img] = false;
    }
}

/// Permutation matrix of `e_i -> e_perm[i]`.
pub fn permutation_matrix(field: PrimeField, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(field, n, n);
    for (i, &p) in perm.iter().enumerate() {
        m.set(i, p, 1);
    }
    m
}

/// The full linear isometry group: products of an automorphism
/// permutation and a triangular map.
pub fn enum_gl_p(poset: &Poset, field: PrimeField, budget: u128) -> Result<Vec<Isometry>> {
    let auts = enum_aut(poset, budget)?;
    let g = triangular_group_order(poset, field);
    check_budget(g.saturating_mul(auts.len() as u128), budget)?;
    let tri = enum_g_p(poset, field, budget)?;
    let mut out = Vec::with_capacity(tri.len() * auts.len());
    for perm in &auts {
        let pm = permutation_matrix(field, perm);
        for t in &tri {
            // first the triangular map, then relabel coordinates
            let matrix = t.matrix.mul(&pm)?;
            out.push(Isometry {
                matrix,
                induced_map: perm.clone(),
            });
        }
    }
    Ok(out)
}

/// Largest degree of the decomposition determined by the inverse reduced
/// row echelon form of `T(C)`, over every isometry `T`.
pub fn brute_max_degree(code: &Code, poset: &Poset, budget: u128) -> Result<usize> {
    check_n(code.n(), poset)?;
    let base_null = code.generator().null_columns().len();
    let mut best = 0i64;
    for t in enum_gl_p(poset, code.field(), budget)? {
        let g = code.generator().mul(&t.matrix)?.row_reduce_inverse()?;
        let d = components_from_matrix(&g)?;
        // an isometry can also fill null columns, so the count may drop
        let degree = (d.components.len() + d.pointer_support.len()) as i64 - 1 - base_null as i64;
        best = best.max(degree);
    }
    Ok(best as usize)
}

/// One hierarchical poset per ordered set partition of `[n]`.
pub fn enum_hierarchical(n: usize, budget: u128) -> Result<Vec<Poset>> {
    check_budget(pow_sat(n as u128, n), budget)?;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut levels = vec![CoordSet::EMPTY; blocks];
        for (e, &l) in labels.iter().enumerate() {
            levels[l].insert(e);
        }
        if levels.iter().all(|l| !l.is_empty()) {
            out.push(Poset::hierarchical_from_levels(n, &levels)?);
        }
        // odometer over labels in [0, n)
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            labels[i] += 1;
            if labels[i] < n {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

/// The `<=`-minimal hierarchical posets above `poset`. There can be
/// several: with `1 < 2` and `3` isolated, both `{1,3} < {2}` and
/// `{1} < {2,3}` are minimal.
pub fn brute_minimal_upper(poset: &Poset, budget: u128) -> Result<Vec<Poset>> {
    let above: Vec<Poset> = enum_hierarchical(poset.n(), budget)?
        .into_iter()
        .filter(|q| poset.leq_poset(q).unwrap_or(false))
        .collect();
    Ok(above
        .iter()
        .filter(|q| {
            !above
                .iter()
                .any(|o| o != *q && o.leq_poset(q).unwrap_or(false))
        })
        .cloned()
        .collect())
}

/// The unique `<=`-greatest hierarchical poset below `poset`.
pub fn brute_lower_neighbor(poset: &Poset, budget: u128) -> Result<Poset> {
    let below: Vec<Poset> = enum_hierarchical(poset.n(), budget)?
        .into_iter()
        .filter(|q| q.leq_poset(poset).unwrap_or(false))
        .collect();
    extreme(&below, |a, b| b.leq_poset(a).unwrap_or(false))
}

fn extreme(candidates: &[Poset], before: impl Fn(&Poset, &Poset) -> bool) -> Result<Poset> {
    candidates
        .iter()
        .find(|c| candidates.iter().all(|o| before(c, o)))
        .cloned()
        .ok_or_else(|| Error::Invariant("no extreme element among candidates".into()))
}

/// `min_c d_P(y, c)` by scanning every codeword.
pub fn brute_nearest_distance(
    code: &Code,
    poset: &Poset,
    y: &Vector,
    budget: u128,
) -> Result<usize> {
    let mut best = usize::MAX;
    for c in code.codewords(budget)? {
        best = best.min(y.p_distance(&c, poset)?);
    }
    Ok(best)
}

/// Whether `fine` arises from `coarse` up to isometry: some `T` maps
/// `coarse`'s code onto `fine`'s, and `fine`'s partition refines the image
/// of `coarse`'s partition under the induced coordinate map.
pub fn brute_is_p_refinement(
    fine: &crate::decomp::Decomposition,
    coarse: &crate::decomp::Decomposition,
    poset: &Poset,
    budget: u128,
) -> Result<bool> {
    let coarse_part = coarse.partition();
    let fine_part = fine.partition();
    for t in enum_gl_p(poset, coarse.code.field(), budget)? {
        if !coarse.code.transform(&t.matrix)?.same_code(&fine.code) {
            continue;
        }
        let map = |s: CoordSet| -> CoordSet { s.iter().map(|i| t.induced_map[i]).collect() };
        let image = crate::decomp::PointedPartition {
            pointer: map(coarse_part.pointer),
            parts: coarse_part.parts.iter().map(|&p| map(p)).collect(),
        };
        if fine_part.is_refinement_of(&image) {
            return Ok(true);
        }
    }
    Ok(false)
}
