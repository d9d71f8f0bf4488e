//! Decompositions of a code into disjointly supported components, the
//! column-reduction canonical form, and maximal P-decompositions.
//!
//! A generator matrix determines a decomposition: null columns form the
//! pointer, and rows are grouped into connected components of the
//! "supports intersect" graph. Canonicalization applies isometries of the
//! triangular group (maps `e_j -> e_j - x e_r` with `r < j` in the poset)
//! to zero as many entries as possible, then reads off the decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linear::{check_n, Code, Matrix};
use crate::poset::Poset;
use crate::split;
use crate::subset::CoordSet;

/// A partition of `[n]` with a distinguished, possibly empty, pointer part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedPartition {
    pub pointer: CoordSet,
    pub parts: Vec<CoordSet>,
}

impl PointedPartition {
    pub fn new(n: usize, pointer: CoordSet, parts: Vec<CoordSet>) -> Result<Self> {
        let mut seen = pointer;
        for &p in &parts {
            if p.is_empty() || !p.is_disjoint(seen) {
                return Err(Error::Invariant(format!(
                    "part {p} is empty or overlaps earlier parts"
                )));
            }
            seen = seen.union(p);
        }
        if seen != CoordSet::full(n) {
            return Err(Error::Invariant(format!("parts do not cover [{n}]")));
        }
        Ok(PointedPartition { pointer, parts })
    }

    /// Whether `self` is reachable from `coarse` by splitting parts and
    /// moving coordinates into the pointer.
    pub fn is_refinement_of(&self, coarse: &PointedPartition) -> bool {
        coarse.pointer.is_subset(self.pointer)
            && self
                .parts
                .iter()
                .all(|f| coarse.parts.iter().any(|c| f.is_subset(*c)))
    }
}

/// Free-function form of [`PointedPartition::is_refinement_of`].
pub fn is_partition_refinement(fine: &PointedPartition, coarse: &PointedPartition) -> bool {
    fine.is_refinement_of(coarse)
}

/// One component subcode: full-length generator rows and their joint
/// support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub support: CoordSet,
    pub generators: Matrix,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn code(&self) -> Code {
        Code::new(self.generators.clone()).expect("component generators are independent rows")
    }
}

/// A code written as a direct sum of components with pairwise disjoint
/// supports, plus the pointer coordinates outside the code's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub code: Code,
    pub components: Vec<Component>,
    pub pointer_support: CoordSet,
}

impl Decomposition {
    pub fn partition(&self) -> PointedPartition {
        PointedPartition {
            pointer: self.pointer_support,
            parts: self.components.iter().map(|c| c.support).collect(),
        }
    }

    pub fn profile(&self) -> Profile {
        let n0 = self.pointer_support.len();
        Profile {
            pointer: (n0, n0),
            components: self
                .components
                .iter()
                .map(|c| (c.support.len(), c.dim()))
                .collect(),
        }
    }

    /// Checks the direct-sum and support invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.code.n();
        let mut seen = self.pointer_support;
        let mut rows = Vec::new();
        for c in &self.components {
            if c.dim() == 0 {
                return Err(Error::Invariant("component of dimension zero".into()));
            }
            if c.generators.support() != c.support {
                return Err(Error::Invariant(format!(
                    "component support {} differs from its generators' support",
                    c.support
                )));
            }
            if !c.support.is_disjoint(seen) {
                return Err(Error::Invariant(format!(
                    "component support {} overlaps pointer or another component",
                    c.support
                )));
            }
            seen = seen.union(c.support);
            rows.extend(c.generators.row_vectors());
        }
        if seen != CoordSet::full(n) {
            return Err(Error::Invariant("supports do not partition [n]".into()));
        }
        let sum = Matrix::from_vectors(self.code.field(), n, &rows)?;
        if sum.rank() != rows.len() || !sum.same_row_space(self.code.generator()) {
            return Err(Error::Invariant(
                "components do not sum directly to the code".into(),
            ));
        }
        Ok(())
    }
}

/// `[(n0, k0), (n1, k1), ..]` with `k0 = n0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    pub pointer: (usize, usize),
    pub components: Vec<(usize, usize)>,
}

impl Profile {
    pub fn entries(&self) -> Vec<(usize, usize)> {
        std::iter::once(self.pointer)
            .chain(self.components.iter().copied())
            .collect()
    }

    /// Component entries sorted, for comparison up to permutation.
    pub fn canonical(&self) -> Profile {
        let mut components = self.components.clone();
        components.sort_unstable();
        Profile {
            pointer: self.pointer,
            components,
        }
    }

    pub fn total_length(&self) -> usize {
        self.pointer.0 + self.components.iter().map(|c| c.0).sum::<usize>()
    }

    pub fn total_dimension(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .iter()
            .map(|(n, k)| format!("({n},{k})"))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The decomposition determined by a full-rank generator matrix: pointer =
/// null columns, components = connected components of the row graph with
/// edges between rows whose supports intersect.
pub fn components_from_matrix(g: &Matrix) -> Result<Decomposition> {
    let code = Code::new(g.clone())?;
    let k = g.rows();
    let supports: Vec<CoordSet> = (0..k).map(|i| g.row_support(i)).collect();
    // union-find over rows
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..k {
        for b in a + 1..k {
            if !supports[a].is_disjoint(supports[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..k {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, rows)) => rows.push(i),
            None => groups.push((root, vec![i])),
        }
    }
    let components = groups
        .into_iter()
        .map(|(_, rows)| {
            let generators = g.select_rows(&rows);
            Component {
                support: generators.support(),
                generators,
            }
        })
        .collect();
    Ok(Decomposition {
        code,
        components,
        pointer_support: g.null_columns(),
    })
}

/// Echelon basis of a set of column vectors in `F_q^k`, with each basis
/// vector's expression in terms of the spanning columns.
struct ColumnBasis {
    field: PrimeField,
    /// `(pivot row, vector, coefficients over the spanning set)`
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl ColumnBasis {
    /// Pivots sit at the smallest nonzero row index of each reduced vector.
    fn new(field: PrimeField, columns: &[Vec<u32>]) -> Self {
        let m = columns.len();
        let mut basis = ColumnBasis {
            field,
            rows: Vec::new(),
        };
        for (idx, col) in columns.iter().enumerate() {
            let mut comb = vec![0u32; m];
            comb[idx] = 1;
            let (mut v, mut comb) = basis.reduce(col.clone(), comb);
            let Some(p) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = field.inv(v[p]).expect("nonzero pivot");
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            for x in comb.iter_mut() {
                *x = field.mul(*x, inv);
            }
            basis.rows.push((p, v, comb));
        }
        basis
    }

    /// Reduces `v` to the representative of `v + span` vanishing at every
    /// pivot row, tracking `comb` as `v`'s expression minus the subtracted
    /// combination.
    fn reduce(&self, mut v: Vec<u32>, mut comb: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        for (p, b, bc) in &self.rows {
            let s = v[*p];
            if s == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.sub(*x, f.mul(s, y));
            }
            for (x, &y) in comb.iter_mut().zip(bc) {
                *x = f.sub(*x, f.mul(s, y));
            }
        }
        (v, comb)
    }
}

/// Coset reduction of column `r` of `g` modulo the columns strictly above
/// `r` in the poset. Returns the reduced column and coefficients `x_j`
/// (indexed like `above`) with `reduced = g_r - Σ x_j g_j`.
fn reduce_column(g: &Matrix, poset: &Poset, r: usize) -> Option<(Vec<u32>, Vec<usize>, Vec<u32>)> {
    let above: Vec<usize> = poset.strict_up(r).iter().collect();
    if above.is_empty() {
        return None;
    }
    let f = g.field();
    let cols: Vec<Vec<u32>> = above.iter().map(|&j| g.column(j)).collect();
    let basis = ColumnBasis::new(f, &cols);
    let (reduced, comb) = basis.reduce(g.column(r), vec![0; above.len()]);
    // comb holds -Σ x_j
    let x = comb.iter().map(|&c| f.neg(c)).collect();
    Some((reduced, above, x))
}

/// Result of canonicalization: `matrix = A · G · witness` for some
/// invertible row operation `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub matrix: Matrix,
    pub witness: Matrix,
    pub passes: usize,
}

/// Brings `g` to a P-canonical form.
///
/// Column `i` may be replaced by any vector of `F* g_i + W_i`, where `W_i`
/// spans the columns strictly above `i`, so the component structures
/// reachable by triangular isometries are the direct-sum decompositions of
/// `F_q^k` compatible with every `W_i` and `W_i + <g_i>`. The finest such
/// decomposition is computed first and each column is moved into its
/// block. Passes of coset reduction (columns right to left, replacing
/// column `r` by the canonical representative of `g_r + W_r`) followed by
/// re-echelonization then tidy the matrix; in block-adapted coordinates
/// they never merge blocks. Passes stop at a fixpoint or when a matrix
/// repeats.
pub fn canonical_form(g: &Matrix, poset: &Poset) -> Result<CanonicalForm> {
    check_n(g.cols(), poset)?;
    let n = g.cols();
    let f = g.field();
    let start = g.row_reduce_inverse()?;
    let (mut cur, mut witness) = split_into_blocks(&start, poset)?;
    let mut seen = std::collections::HashSet::new();
    let cap = (n * g.rows()).max(1) + 1;
    let mut passes = 0;
    loop {
        passes += 1;
        cur = cur.row_reduce_inverse()?;
        if !seen.insert(cur.clone()) || passes > cap {
            break;
        }
        let mut changed = false;
        for r in (0..n).rev() {
            let Some((reduced, above, x)) = reduce_column(&cur, poset, r) else {
                continue;
            };
            if reduced == cur.column(r) {
                continue;
            }
            cur.set_column(r, &reduced);
            // witness <- witness · (I - Σ x_j E_{j,r})
            for row in 0..n {
                let mut v = witness.get(row, r);
                for (&j, &xj) in above.iter().zip(&x) {
                    v = f.sub(v, f.mul(witness.get(row, j), xj));
                }
                witness.set(row, r, v);
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Ok(CanonicalForm {
        matrix: cur,
        witness,
        passes,
    })
}

/// Row basis change to the finest compatible block decomposition, then one
/// simultaneous column replacement moving each column into its block.
fn split_into_blocks(g: &Matrix, poset: &Poset) -> Result<(Matrix, Matrix)> {
    let f = g.field();
    let (k, n) = (g.rows(), g.cols());
    let columns: Vec<Vec<u32>> = (0..n).map(|i| g.column(i)).collect();
    let mut family = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut gens: Vec<Vec<u32>> = poset
            .strict_up(i)
            .iter()
            .map(|j| columns[j].clone())
            .collect();
        family.push(split::span(f, k, &gens));
        gens.push(columns[i].clone());
        family.push(split::span(f, k, &gens));
    }
    let pieces = split::finest_decomposition(f, k, &family);
    // rows of zt are the new basis vectors u_l; g = Σ g'_l u_l
    let mut zt_rows = Vec::with_capacity(k);
    let mut block_of_row = Vec::with_capacity(k);
    for (t, piece) in pieces.iter().enumerate() {
        for row in piece.to_rows() {
            zt_rows.push(row.into_iter().map(i64::from).collect::<Vec<_>>());
            block_of_row.push(t);
        }
    }
    let zt = Matrix::from_rows(f, k, &zt_rows)?;
    let moved = zt.transpose().inverse()?.mul(g)?;

    let mut out = moved.clone();
    let mut witness = Matrix::identity(f, n);
    for i in 0..n {
        let above: Vec<usize> = poset.strict_up(i).iter().collect();
        let cols: Vec<Vec<u32>> = above.iter().map(|&j| moved.column(j)).collect();
        let basis = ColumnBasis::new(f, &cols);
        let col = moved.column(i);
        let in_span = |v: &[u32]| {
            basis
                .reduce(v.to_vec(), vec![0; above.len()])
                .0
                .iter()
                .all(|&x| x == 0)
        };
        let rep = if in_span(&col) {
            vec![0; k]
        } else {
            let mut found = None;
            for t in 0..pieces.len() {
                let masked: Vec<u32> = col
                    .iter()
                    .zip(&block_of_row)
                    .map(|(&v, &b)| if b == t { v } else { 0 })
                    .collect();
                if masked.iter().any(|&v| v != 0) && !in_span(&masked) {
                    found = Some(masked);
                    break;
                }
            }
            found.ok_or_else(|| Error::Invariant("column fits no block".into()))?
        };
        if rep == col {
            continue;
        }
        let delta: Vec<u32> = col.iter().zip(&rep).map(|(&a, &b)| f.sub(a, b)).collect();
        let (rest, comb) = basis.reduce(delta, vec![0; above.len()]);
        if rest.iter().any(|&v| v != 0) {
            return Err(Error::Invariant(
                "block representative outside its coset".into(),
            ));
        }
        // comb = -x with delta = Σ x_j g_j, and T[j][i] = -x_j
        for (&j, &c) in above.iter().zip(&comb) {
            witness.set(j, i, c);
        }
        out.set_column(i, &rep);
    }
    Ok((out, witness))
}

/// Whether `g` is in generalized reduced row echelon form and no column
/// changes under coset reduction modulo the columns above it.
pub fn is_canonical(g: &Matrix, poset: &Poset) -> bool {
    if g.cols() != poset.n() || !g.is_generalized_rref() {
        return false;
    }
    (0..g.cols()).all(|r| match reduce_column(g, poset, r) {
        Some((reduced, _, _)) => reduced == g.column(r),
        None => true,
    })
}

/// Whether `t` lies in the triangular isometry group: invertible with
/// `t[j][i] != 0` only when `i <= j` in the poset, and nonzero diagonal.
pub fn in_triangular_group(t: &Matrix, poset: &Poset) -> bool {
    let n = poset.n();
    if t.rows() != n || t.cols() != n {
        return false;
    }
    (0..n).all(|j| t.get(j, j) != 0 && (0..n).all(|i| t.get(j, i) == 0 || poset.leq(i, j)))
}

/// A maximal P-decomposition with the isometry relating it to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDecomposition {
    pub original: Code,
    pub decomposition: Decomposition,
    /// `decomposition.code = original · witness`
    pub witness: Matrix,
}

impl PDecomposition {
    pub fn profile(&self) -> Profile {
        self.decomposition.profile()
    }

    /// `(r - 1) + |pointer of the transformed code| - |null columns of the
    /// original code|`.
    pub fn degree(&self) -> usize {
        let r = self.decomposition.components.len();
        let gained = self.decomposition.pointer_support.len()
            - self.original.generator().null_columns().len();
        r - 1 + gained
    }

    /// Checks the decomposition invariants and that the witness is a
    /// triangular P-isometry carrying the original code onto the
    /// decomposed one.
    pub fn validate(&self, poset: &Poset) -> Result<()> {
        self.decomposition.validate()?;
        if !in_triangular_group(&self.witness, poset) {
            return Err(Error::Invariant(
                "witness is not a triangular P-isometry".into(),
            ));
        }
        let image = self.original.transform(&self.witness)?;
        if !image.same_code(&self.decomposition.code) {
            return Err(Error::Invariant(
                "witness does not map the code onto its decomposition".into(),
            ));
        }
        Ok(())
    }
}

/// Canonical form followed by reading off components.
pub fn maximal_p_decomposition(code: &Code, poset: &Poset) -> Result<PDecomposition> {
    let cf = canonical_form(code.generator(), poset)?;
    let decomposition = components_from_matrix(&cf.matrix)?;
    Ok(PDecomposition {
        original: code.clone(),
        decomposition,
        witness: cf.witness,
    })
}

/// Degree of the maximal P-decomposition of `code`.
pub fn max_degree(code: &Code, poset: &Poset) -> Result<usize> {
    Ok(maximal_p_decomposition(code, poset)?.degree())
}

/// Serialized form of a P-decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub profile: Vec<(usize, usize)>,
    pub degree: usize,
    pub pointer_support: CoordSet,
    pub components: Vec<ComponentReport>,
    pub witness: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub support: CoordSet,
    pub generators: Vec<Vec<u32>>,
}

impl From<&PDecomposition> for DecompositionReport {
    fn from(pd: &PDecomposition) -> Self {
        let d = &pd.decomposition;
        DecompositionReport {
            q: d.code.q(),
            n: d.code.n(),
            k: d.code.k(),
            profile: pd.profile().entries(),
            degree: pd.degree(),
            pointer_support: d.pointer_support,
            components: d
                .components
                .iter()
                .map(|c| ComponentReport {
                    support: c.support,
                    generators: c.generators.to_rows(),
                })
                .collect(),
            witness: pd.witness.to_rows(),
        }
    }
}

impl DecompositionReport {
    /// Rebuilds the decomposition and re-checks its invariants, including
    /// consistency of the recorded profile.
    pub fn to_decomposition(&self) -> Result<(Decomposition, Matrix)> {
        let f = PrimeField::new(self.q as u64)?;
        let to_i64 = |rows: &[Vec<u32>]| -> Vec<Vec<i64>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| v as i64).collect())
                .collect()
        };
        let mut all_rows = Vec::new();
        let mut components = Vec::new();
        for c in &self.components {
            let generators = Matrix::from_rows(f, self.n, &to_i64(&c.generators))?;
            all_rows.extend(generators.row_vectors());
            components.push(Component {
                support: c.support,
                generators,
            });
        }
        let code = Code::new(Matrix::from_vectors(f, self.n, &all_rows)?)?;
        let d = Decomposition {
            code,
            components,
            pointer_support: self.pointer_support,
        };
        d.validate()?;
        if d.profile().entries() != self.profile || d.code.k() != self.k {
            return Err(Error::Invariant(
                "recorded profile disagrees with components".into(),
            ));
        }
        let witness = Matrix::from_rows(f, self.n, &to_i64(&self.witness))?;
        if witness.rows() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: witness.rows(),
            });
        }
        Ok((d, witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Vector;

    fn gf2() -> PrimeField {
        PrimeField::BINARY
    }

    fn m(rows: &[&str]) -> Matrix {
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| {
                let vals: Vec<i64> = r.bytes().map(|b| (b - b'0') as i64).collect();
                Vector::from_ints(gf2(), &vals)
            })
            .collect();
        Matrix::from_vectors(gf2(), rows[0].len(), &rows).unwrap()
    }

    fn set(items: &[usize]) -> CoordSet {
        CoordSet::from_one_indexed(items.iter().copied())
    }

    fn words(c: &Code) -> Vec<String> {
        let mut w: Vec<String> = c
            .codewords(1 << 10)
            .unwrap()
            .iter()
            .map(|v| v.compact())
            .collect();
        w.sort();
        w
    }

    fn sorted(ws: &[&str]) -> Vec<String> {
        let mut w: Vec<String> = ws.iter().map(|s| s.to_string()).collect();
        w.sort();
        w
    }

    fn p1() -> Poset {
        Poset::from_relations(6, &[(1, 2), (3, 4)]).unwrap()
    }

    fn p2() -> Poset {
        Poset::from_relations(6, &[(1, 2), (3, 4), (4, 5)]).unwrap()
    }

    fn example_g6() -> Matrix {
        m(&["001101", "101110", "110000"])
    }

    #[test]
    fn components_of_classical_and_inverse_forms() {
        let d1 = components_from_matrix(&m(&["10000", "01011", "00110"])).unwrap();
        assert_eq!(d1.pointer_support, CoordSet::EMPTY);
        assert_eq!(d1.components.len(), 2);
        assert_eq!(words(&d1.components[0].code()), sorted(&["00000", "10000"]));
        assert_eq!(
            words(&d1.components[1].code()),
            sorted(&["00000", "01011", "00110", "01101"])
        );
        let d2 = components_from_matrix(&m(&["01101", "00110", "10000"])).unwrap();
        assert_eq!(
            words(&d2.components[0].code()),
            sorted(&["00000", "01101", "00110", "01011"])
        );
        assert_eq!(words(&d2.components[1].code()), sorted(&["00000", "10000"]));
        assert_eq!(d2.profile().entries(), vec![(0, 0), (4, 2), (1, 1)]);
        d1.validate().unwrap();
        d2.validate().unwrap();
    }

    #[test]
    fn shared_column_gives_one_component() {
        let d = components_from_matrix(&m(&["1100", "1010", "1001"])).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.profile().entries(), vec![(0, 0), (4, 3)]);
    }

    #[test]
    fn transitive_row_grouping() {
        // rows 1 and 3 share nothing but are linked through row 2
        let d = components_from_matrix(&m(&["11000", "01100", "00110", "00001"])).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].support, set(&[1, 2, 3, 4]));
    }

    #[test]
    fn canonical_form_under_p1() {
        let cf = canonical_form(&example_g6(), &p1()).unwrap();
        assert!(is_canonical(&cf.matrix, &p1()));
        assert!(cf.matrix.null_columns().contains(2));
        let pd = maximal_p_decomposition(&Code::new(example_g6()).unwrap(), &p1()).unwrap();
        assert_eq!(
            pd.profile().canonical().entries(),
            vec![(1, 1), (1, 1), (4, 2)]
        );
        assert_eq!(pd.degree(), 2);
        pd.validate(&p1()).unwrap();
    }

    #[test]
    fn canonical_form_under_p2() {
        let code = Code::new(example_g6()).unwrap();
        let pd = maximal_p_decomposition(&code, &p2()).unwrap();
        assert_eq!(
            pd.profile().canonical().entries(),
            vec![(1, 1), (1, 1), (2, 1), (2, 1)]
        );
        assert_eq!(pd.degree(), 3);
        pd.validate(&p2()).unwrap();
        // same code as the printed G''
        let g2 = m(&["000101", "100010", "010000"]);
        assert!(pd.decomposition.code.generator().same_row_space(&g2));
    }

    #[test]
    fn antichain_canonical_form_is_inverse_rref() {
        let anti = Poset::antichain(6).unwrap();
        let cf = canonical_form(&example_g6(), &anti).unwrap();
        assert_eq!(cf.matrix, example_g6().row_reduce_inverse().unwrap());
        assert_eq!(cf.witness, Matrix::identity(gf2(), 6));
    }

    #[test]
    fn single_unit_vector_code() {
        let code = Code::new(m(&["1000"])).unwrap();
        let chain = Poset::chain(4).unwrap();
        let pd = maximal_p_decomposition(&code, &chain).unwrap();
        assert_eq!(pd.profile().entries(), vec![(3, 3), (1, 1)]);
        assert_eq!(pd.degree(), 0);
    }

    #[test]
    fn two_coordinate_code_degree() {
        // e1 + e3, incomparable coordinates: nothing to reduce
        let code = Code::new(m(&["101"])).unwrap();
        let anti = Poset::antichain(3).unwrap();
        assert_eq!(max_degree(&code, &anti).unwrap(), 0);
        let q = Poset::from_relations(3, &[(1, 3)]).unwrap();
        let pd = maximal_p_decomposition(&code, &q).unwrap();
        assert_eq!(pd.degree(), 1);
        assert_eq!(pd.profile().entries(), vec![(2, 2), (1, 1)]);
    }

    #[test]
    fn trivial_decomposition_profile() {
        let d = components_from_matrix(&m(&["1110", "0111"])).unwrap();
        assert_eq!(d.profile().entries(), vec![(0, 0), (4, 2)]);
    }

    #[test]
    fn refinement_examples() {
        let coarse = PointedPartition::new(4, CoordSet::EMPTY, vec![CoordSet::full(4)]).unwrap();
        let fine = PointedPartition::new(4, set(&[1, 3]), vec![set(&[2]), set(&[4])]).unwrap();
        assert!(fine.is_refinement_of(&coarse));
        assert!(!coarse.is_refinement_of(&fine));
        assert!(fine.is_refinement_of(&fine));
        let a = PointedPartition::new(2, CoordSet::EMPTY, vec![set(&[1, 2])]).unwrap();
        let b = PointedPartition::new(2, set(&[1]), vec![set(&[2])]).unwrap();
        assert!(!is_partition_refinement(&a, &b));
        assert!(PointedPartition::new(3, set(&[1]), vec![set(&[1, 2]), set(&[3])]).is_err());
        assert!(PointedPartition::new(3, set(&[1]), vec![set(&[2])]).is_err());
    }

    #[test]
    fn report_roundtrip_validates() {
        let code = Code::new(example_g6()).unwrap();
        let pd = maximal_p_decomposition(&code, &p2()).unwrap();
        let report = DecompositionReport::from(&pd);
        let json = serde_json::to_string(&report).unwrap();
        let back: DecompositionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let (d, w) = back.to_decomposition().unwrap();
        assert_eq!(d.profile(), pd.profile());
        assert_eq!(w, pd.witness);
        let mut broken = report.clone();
        broken.profile[0] = (0, 0);
        assert!(broken.to_decomposition().is_err());
    }

    #[test]
    fn rank_deficient_input_rejected() {
        assert!(components_from_matrix(&m(&["110", "110"])).is_err());
        assert!(canonical_form(&m(&["110", "110"]), &Poset::antichain(3).unwrap()).is_err());
    }
}
