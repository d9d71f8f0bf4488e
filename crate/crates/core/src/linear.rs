//! Vectors, dense matrices and linear codes over GF(p), the poset weight,
//! and the right-most-pivot echelon forms used to read off decompositions.

use std::fmt;

use rand::Rng;

use crate::error::{check_budget, pow_sat, Error, Result, DEFAULT_BUDGET};
use crate::field::{FieldElement, PrimeField};
use crate::poset::Poset;
use crate::subset::CoordSet;

/// A vector of `F_q^n`, stored as canonical residues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    field: PrimeField,
    coords: Vec<u32>,
}

impl Vector {
    pub fn zeros(field: PrimeField, n: usize) -> Self {
        Vector {
            field,
            coords: vec![0; n],
        }
    }

    /// Reduces every entry modulo `p`.
    pub fn from_ints(field: PrimeField, values: &[i64]) -> Self {
        Vector {
            field,
            coords: values.iter().map(|&v| field.reduce(v)).collect(),
        }
    }

    pub(crate) fn from_residues(field: PrimeField, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < field.order()));
        Vector { field, coords }
    }

    /// The `index`-th vector of `F_q^n` in lexicographic order, coordinate 1
    /// most significant.
    pub fn from_index(field: PrimeField, n: usize, mut index: u128) -> Self {
        let q = field.order() as u128;
        let mut coords = vec![0; n];
        for c in coords.iter_mut().rev() {
            *c = (index % q) as u32;
            index /= q;
        }
        Vector { field, coords }
    }

    /// Inverse of [`Vector::from_index`].
    pub fn index(&self) -> u128 {
        let q = self.field.order() as u128;
        self.coords.iter().fold(0, |acc, &c| acc * q + c as u128)
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        Vector {
            field,
            coords: (0..n).map(|_| rng.gen_range(0..field.order())).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn residues(&self) -> &[u32] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.field.elem(self.coords[i] as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> CoordSet {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn hamming_weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    /// `|<supp(v)>_P|`.
    pub fn p_weight(&self, poset: &Poset) -> Result<usize> {
        self.check_len(poset.n())?;
        Ok(poset.ideal(self.support()).len())
    }

    /// `w_P(self - other)`.
    pub fn p_distance(&self, other: &Vector, poset: &Poset) -> Result<usize> {
        self.sub(other)?.p_weight(poset)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.len(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ));
        }
        self.check_len(other.len())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(Vector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(Vector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Vector {
        let f = self.field;
        Vector {
            field: f,
            coords: self.coords.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Vector {
        let f = self.field;
        Vector {
            field: f,
            coords: self.coords.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// Coordinates at `coords`, ascending.
    pub fn restrict(&self, coords: CoordSet) -> Vector {
        Vector {
            field: self.field,
            coords: coords.iter().map(|i| self.coords[i]).collect(),
        }
    }

    /// Scatters `self` into coordinates `coords` of a zero vector of length `n`.
    pub fn extend(&self, coords: CoordSet, n: usize) -> Vector {
        let mut out = vec![0; n];
        for (v, i) in self.coords.iter().zip(coords.iter()) {
            out[i] = *v;
        }
        Vector {
            field: self.field,
            coords: out,
        }
    }

    /// `self · M` for a row vector.
    pub fn mul_matrix(&self, m: &Matrix) -> Result<Vector> {
        self.check_len(m.rows())?;
        let f = self.field;
        let mut out = vec![0u32; m.cols()];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(m.row(i)) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        Ok(Vector {
            field: f,
            coords: out,
        })
    }

    /// `M · selfᵀ`.
    pub fn syndrome(&self, m: &Matrix) -> Result<Vector> {
        self.check_len(m.cols())?;
        let f = self.field;
        let coords = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(&self.coords)
                    .fold(0, |acc, (&h, &y)| f.add(acc, f.mul(h, y)))
            })
            .collect();
        Ok(Vector { field: f, coords })
    }

    /// Residues concatenated without separators; only meaningful for `p < 10`.
    pub fn compact(&self) -> String {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector[{}]", self)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Iterates over all of `F_q^n` in lexicographic order.
pub fn all_vectors(field: PrimeField, n: usize) -> impl Iterator<Item = Vector> {
    let total = pow_sat(field.order() as u128, n);
    (0..total).map(move |i| Vector::from_index(field, n, i))
}

/// A dense `rows × cols` matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from integer rows, reducing modulo `p`. All rows must have
    /// length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vectors(field: PrimeField, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            if r.field() != field {
                return Err(Error::FieldMismatch(field.order(), r.field().order()));
            }
            data.extend_from_slice(r.residues());
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: (0..rows * cols)
                .map(|_| rng.gen_range(0..field.order()))
                .collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::from_residues(self.field, self.row(i).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[u32]) {
        for (i, &v) in col.iter().enumerate() {
            self.set(i, j, v);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_support(&self, i: usize) -> CoordSet {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Union of the row supports.
    pub fn support(&self) -> CoordSet {
        (0..self.rows).fold(CoordSet::EMPTY, |acc, i| acc.union(self.row_support(i)))
    }

    pub fn null_columns(&self) -> CoordSet {
        CoordSet::full(self.cols).difference(self.support())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Columns at `coords`, ascending.
    pub fn select_columns(&self, coords: CoordSet) -> Matrix {
        let cols: Vec<usize> = coords.iter().collect();
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: u32) {
        let f = self.field;
        for j in 0..self.cols {
            let v = f.mul(self.get(i, j), s);
            self.set(i, j, v);
        }
    }

    /// `row[dst] -= s * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, s: u32) {
        if s == 0 {
            return;
        }
        let f = self.field;
        for j in 0..self.cols {
            let v = f.sub(self.get(dst, j), f.mul(s, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// Gauss-Jordan elimination over the columns in `order`. Returns the
    /// pivot column of each of the first `rank` rows; remaining rows are
    /// zero. Pivots are normalized to 1.
    fn eliminate(&mut self, order: impl Iterator<Item = usize>) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        for j in order {
            let r = pivots.len();
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, j) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, j)).expect("pivot is nonzero");
            self.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let s = self.get(i, j);
                    self.sub_row(i, r, s);
                }
            }
            pivots.push(j);
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(0..self.cols).len()
    }

    /// Classical reduced row echelon form (left-most pivots); rows of zeros
    /// are kept at the bottom.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(0..self.cols);
        (m, pivots)
    }

    /// Inverse reduced row echelon form: `j(1) > j(2) > ... > j(k)` where
    /// `j(i)` is the right-most nonzero column of row `i`, each pivot column
    /// has a single nonzero entry, and pivots are normalized to 1.
    pub fn row_reduce_inverse(&self) -> Result<Matrix> {
        let mut m = self.clone();
        let pivots = m.eliminate((0..self.cols).rev());
        if pivots.len() < self.rows {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                rows: self.rows,
            });
        }
        Ok(m)
    }

    /// Right-most nonzero column of row `i`.
    pub fn right_pivot(&self, i: usize) -> Option<usize> {
        self.row_support(i).max()
    }

    /// Inverse reduced row echelon form as stated, without requiring pivot
    /// normalization.
    pub fn is_inverse_rref(&self) -> bool {
        let mut prev = usize::MAX;
        for i in 0..self.rows {
            match self.right_pivot(i) {
                Some(j) if j < prev => prev = j,
                _ => return false,
            }
        }
        self.pivot_columns_clean()
    }

    /// Some row permutation is in inverse reduced row echelon form.
    pub fn is_generalized_rref(&self) -> bool {
        let mut seen = CoordSet::EMPTY;
        for i in 0..self.rows {
            match self.right_pivot(i) {
                Some(j) if !seen.contains(j) => seen.insert(j),
                _ => return false,
            }
        }
        self.pivot_columns_clean()
    }

    fn pivot_columns_clean(&self) -> bool {
        (0..self.rows).all(|l| {
            let j = self.right_pivot(l).expect("checked nonzero");
            (0..self.rows).all(|i| i == l || self.get(i, j) == 0)
        })
    }

    /// Basis (as rows) of `{x : self · xᵀ = 0}`.
    pub fn null_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = self.field;
        let pivot_set: CoordSet = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set.contains(*j)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.eliminate(0..n);
        if pivots.len() < n {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                rows: n,
            });
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &Vector) -> Result<bool> {
        let mut rows = self.row_vectors();
        rows.push(v.clone());
        let m = Matrix::from_vectors(self.field, self.cols, &rows)?;
        Ok(m.rank() == self.rank())
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        if self.cols != other.cols || self.field != other.field {
            return false;
        }
        let r = self.rank();
        if r != other.rank() {
            return false;
        }
        let mut rows = self.row_vectors();
        rows.extend(other.row_vectors());
        Matrix::from_vectors(self.field, self.cols, &rows)
            .map(|m| m.rank() == r)
            .unwrap_or(false)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row_vector(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row_vector(i))?;
        }
        Ok(())
    }
}

/// An `[n, k]_q` linear code given by a full-rank generator matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Code {
    gen: Matrix,
}

impl Code {
    /// Rejects rank-deficient or empty generators.
    pub fn new(gen: Matrix) -> Result<Self> {
        if gen.rows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let rank = gen.rank();
        if rank < gen.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(Code { gen })
    }

    /// A uniformly random generator matrix of full rank `k`.
    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: k,
            });
        }
        loop {
            let g = Matrix::random(field, k, n, rng);
            if g.rank() == k {
                return Ok(Code { gen: g });
            }
        }
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn field(&self) -> PrimeField {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn q(&self) -> u32 {
        self.field().order()
    }

    pub fn support(&self) -> CoordSet {
        self.gen.support()
    }

    pub fn size(&self) -> u128 {
        pow_sat(self.q() as u128, self.k())
    }

    /// All codewords, lexicographic in the message. Errors when `q^k`
    /// exceeds `budget`.
    pub fn codewords(&self, budget: u128) -> Result<Vec<Vector>> {
        check_budget(self.size(), budget)?;
        let f = self.field();
        (0..self.size())
            .map(|i| Vector::from_index(f, self.k(), i).mul_matrix(&self.gen))
            .collect()
    }

    pub fn encode(&self, message: &Vector) -> Result<Vector> {
        message.mul_matrix(&self.gen)
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        self.gen.row_space_contains(v)
    }

    /// Image under `v -> v · t` for an `n × n` matrix `t`.
    pub fn transform(&self, t: &Matrix) -> Result<Code> {
        Code::new(self.gen.mul(t)?)
    }

    /// Minimum P-weight of a nonzero codeword, by exhaustive enumeration.
    pub fn min_distance(&self, poset: &Poset, budget: u128) -> Result<usize> {
        check_n(self.n(), poset)?;
        let words = self.codewords(budget)?;
        Ok(words
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| poset.ideal(c.support()).len())
            .min()
            .expect("k >= 1 so a nonzero codeword exists"))
    }

    pub fn min_distance_default(&self, poset: &Poset) -> Result<usize> {
        self.min_distance(poset, DEFAULT_BUDGET)
    }

    /// Parity-check matrix `H`, `(n-k) × n`, full rank, `G·Hᵀ = 0`.
    pub fn parity_check(&self) -> Matrix {
        self.gen.null_space()
    }

    pub fn same_code(&self, other: &Code) -> bool {
        self.gen.same_row_space(&other.gen)
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Code[{}, {}]_{} {:?}",
            self.n(),
            self.k(),
            self.q(),
            self.gen
        )
    }
}

pub(crate) fn check_n(n: usize, poset: &Poset) -> Result<()> {
    if poset.n() != n {
        return Err(Error::DimensionMismatch {
            expected: poset.n(),
            got: n,
        });
    }
    Ok(())
}
