//! Exact linear algebra over ℤ and ℤ/nℤ.
//!
//! Bead labelings of a colored diagram are the solutions of a homogeneous
//! system over ℤₙ. Their number is read off a Smith normal form: if
//! `U·M·V = diag(d₁,…,d_r,0,…)` then `x ↦ V⁻¹x` is a bijection of (ℤₙ)^cols
//! carrying solutions of `M·x ≡ 0` onto solutions of the diagonal system, so
//! the count is `n^(cols−r) · ∏ gcd(dᵢ, n)` for any modulus, prime or not.

use std::fmt;

use num_integer::{gcd, Integer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("modulus {0} is not prime; a field is required")]
    NonPrimeModulus(u64),
}

/// Dense row-major integer matrix. Zero rows or zero columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row-major data.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match {rows}x{cols}");
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows. An empty slice gives a 0×0 matrix.
    ///
    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Matrix product. Panics on a dimension mismatch or on i64 overflow.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                out.set(i, j, i64::try_from(acc).expect("matrix product overflows i64"));
            }
        }
        out
    }

    /// Representatives in `0..n` of every entry.
    pub fn normalized_mod(&self, n: u64) -> IntMatrix {
        let n = n as i64;
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.rem_euclid(n)).collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics if the matrix is not square.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|r| self.row(r).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `U·M·V = D` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_r`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }
}

/// Diagonalizes by unimodular row and column operations, tracking both
/// transforms. With a modulus every entry is kept in `0..n` after each
/// operation, which preserves the solution set of `M·x ≡ 0 (mod n)` and keeps
/// entries bounded.
struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    modulus: Option<i64>,
}

fn reduce(x: i128, modulus: Option<i64>) -> i64 {
    match modulus {
        Some(n) => x.rem_euclid(n as i128) as i64,
        None => i64::try_from(x).expect("Smith normal form entry overflows i64"),
    }
}

impl Reducer {
    fn new(m: &IntMatrix, modulus: Option<i64>) -> Self {
        let a = match modulus {
            Some(n) => m.normalized_mod(n as u64),
            None => m.clone(),
        };
        Reducer { u: IntMatrix::identity(m.rows), v: IntMatrix::identity(m.cols), a, modulus }
    }

    /// row[target] += q * row[source], applied to A and U.
    fn add_row(&mut self, target: usize, source: usize, q: i64) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let val = reduce(m.get(target, c) as i128 + q as i128 * m.get(source, c) as i128, self.modulus);
                m.set(target, c, val);
            }
        }
    }

    /// col[target] += q * col[source], applied to A and V.
    fn add_col(&mut self, target: usize, source: usize, q: i64) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                let val = reduce(m.get(r, target) as i128 + q as i128 * m.get(r, source) as i128, self.modulus);
                m.set(r, target, val);
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let val = reduce(-(m.get(r, c) as i128), self.modulus);
                m.set(r, c, val);
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties in row-major order.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..self.a.rows {
            for j in k..self.a.cols {
                let x = self.a.get(i, j).abs();
                if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(mut self) -> SnfResult {
        let limit = self.a.rows.min(self.a.cols);
        let mut k = 0;
        while k < limit {
            let Some((pi, pj)) = self.pivot(k) else { break };
            self.a.swap_rows(k, pi);
            self.u.swap_rows(k, pi);
            self.a.swap_cols(k, pj);
            self.v.swap_cols(k, pj);

            let p = self.a.get(k, k);
            let mut clean = true;
            for i in k + 1..self.a.rows {
                let q = self.a.get(i, k) / p;
                if q != 0 {
                    self.add_row(i, k, -q);
                }
                clean &= self.a.get(i, k) == 0;
            }
            for j in k + 1..self.a.cols {
                let q = self.a.get(k, j) / p;
                if q != 0 {
                    self.add_col(j, k, -q);
                }
                clean &= self.a.get(k, j) == 0;
            }
            if !clean {
                // a nonzero remainder is now strictly smaller than the pivot
                continue;
            }

            let offender = (k + 1..self.a.rows)
                .find(|&i| (k + 1..self.a.cols).any(|j| self.a.get(i, j) % p != 0));
            if let Some(i) = offender {
                self.add_row(k, i, 1);
                continue;
            }

            if p < 0 {
                self.negate_row(k);
            }
            k += 1;
        }
        SnfResult { d: self.a, u: self.u, v: self.v, rank: k }
    }
}

/// Smith normal form over ℤ. Deterministic: pivots are chosen as the
/// smallest nonzero absolute value, ties broken row-major.
///
/// Panics if an intermediate entry leaves the i64 range, which does not
/// happen for the small presentation matrices this crate produces.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    Reducer::new(m, None).run()
}

/// Diagonal form of `m` modulo `n`: `U·M·V ≡ D (mod n)` with `U`, `V`
/// invertible over ℤₙ. The diagonal need not satisfy the divisibility chain.
fn diagonalize_mod(m: &IntMatrix, n: u64) -> SnfResult {
    Reducer::new(m, Some(n as i64)).run()
}

/// Number of `x ∈ (ℤₙ)^cols` with `M·x ≡ 0 (mod n)`.
///
/// Panics if `n == 0`.
pub fn count_solutions_mod_n(m: &IntMatrix, n: u64) -> u128 {
    assert!(n >= 1, "modulus must be positive");
    let form = diagonalize_mod(m, n);
    let free = (m.cols() - form.rank) as u32;
    let mut count = (n as u128).pow(free);
    for i in 0..form.rank {
        count *= gcd(form.d.get(i, i) as u64, n) as u128;
    }
    count
}

/// Generators of the solution group `{x : M·x ≡ 0 (mod n)}`, as vectors with
/// entries in `0..n`. Their ℤₙ-span is exactly the solution set.
pub fn solution_generators_mod_n(m: &IntMatrix, n: u64) -> Vec<Vec<i64>> {
    let form = diagonalize_mod(m, n);
    let ni = n as i64;
    let mut gens = Vec::new();
    for i in 0..m.cols() {
        let scale = if i < form.rank {
            ni / gcd(form.d.get(i, i) as u64, n) as i64
        } else {
            1
        };
        let g: Vec<i64> = (0..m.cols()).map(|r| (form.v.get(r, i) * scale).rem_euclid(ni)).collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    gens
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo `n`, if `a` is a unit.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = (a as i64).rem_euclid(n as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u64)
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % n as u128) as u64;
        }
        base = (base as u128 * base as u128 % n as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank of `m` over the field ℤ_p, by Gauss–Jordan elimination.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, MathError> {
    if !is_prime(p) {
        return Err(MathError::NonPrimeModulus(p));
    }
    let mut a = m.normalized_mod(p);
    let pi = p as i64;
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(r) = (rank..a.rows()).find(|&r| a.get(r, c) != 0) else {
            continue;
        };
        a.swap_rows(rank, r);
        let inv = mod_pow(a.get(rank, c) as u64, p - 2, p) as i64;
        for j in 0..a.cols() {
            let val = a.get(rank, j) * inv % pi;
            a.set(rank, j, val);
        }
        for i in 0..a.rows() {
            let f = a.get(i, c);
            if i != rank && f != 0 {
                for j in 0..a.cols() {
                    let val = (a.get(i, j) - f * a.get(rank, j)).rem_euclid(pi);
                    a.set(i, j, val);
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Dimension of the null space of `m` over ℤ_p.
pub fn nullity_mod_p(m: &IntMatrix, p: u64) -> Result<usize, MathError> {
    Ok(m.cols() - rank_mod_p(m, p)?)
}
