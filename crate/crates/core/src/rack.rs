//! Finite racks stored as operation tables.
//!
//! Elements are `0..n` in the library API. Rack files and printed tables use
//! the 1-based rack-matrix convention: entry `(i, j)` is `k` when
//! `xᵢ ▷ xⱼ = x_k`.

use num_integer::{gcd, lcm};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("a rack needs at least one element")]
    Empty,
    #[error("row {} has {len} entries, expected {expected}", .row + 1)]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({}, {}) = {value} is outside 1..={size}", .row + 1, .col + 1)]
    EntryOutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("column {} is not a permutation", .column + 1)]
    ColumnNotBijective { column: usize },
    #[error("self-distributivity fails at (x{}, x{}, x{})", .i + 1, .j + 1, .l + 1)]
    SelfDistributivityFails { i: usize, j: usize, l: usize },
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("t = {t} is not a unit modulo {n}")]
    NotAUnit { t: u64, n: u64 },
    #[error("s = {s} violates s^2 = (1 - t)s modulo {n} for t = {t}")]
    SConditionFails { t: u64, s: u64, n: u64 },
}

/// Rack file contents: `{"n": 3, "table": [[1,3,2],[3,2,1],[2,1,3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

/// A validated finite rack.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rack {
    size: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    kink: Vec<usize>,
    rank: u64,
}

/// Order of a permutation, as the lcm of its cycle lengths.
pub fn permutation_order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

impl Rack {
    /// Validates a 0-based operation table `table[i][j] = i ▷ j`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Rack, RackError> {
        let n = table.len();
        if n == 0 {
            return Err(RackError::Empty);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(RackError::NotSquare { row: i, len: row.len(), expected: n });
            }
            if let Some(j) = row.iter().position(|&k| k >= n) {
                return Err(RackError::EntryOutOfRange { row: i, col: j, value: row[j] + 1, size: n });
            }
        }
        let flat: Vec<usize> = table.concat();
        let op = |i: usize, j: usize| flat[i * n + j];

        let mut inverse = vec![usize::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let k = op(i, j);
                if inverse[k * n + j] != usize::MAX {
                    return Err(RackError::ColumnNotBijective { column: j });
                }
                inverse[k * n + j] = i;
            }
        }

        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if op(op(i, j), l) != op(op(i, l), op(j, l)) {
                        return Err(RackError::SelfDistributivityFails { i, j, l });
                    }
                }
            }
        }

        let kink: Vec<usize> = (0..n).map(|i| op(i, i)).collect();
        let rank = permutation_order(&kink);
        Ok(Rack { size: n, table: flat, inverse, kink, rank })
    }

    /// Validates a rack matrix with 1-based entries, as printed.
    pub fn from_matrix(matrix: &[Vec<usize>]) -> Result<Rack, RackError> {
        let n = matrix.len();
        let mut table = Vec::with_capacity(n);
        for (i, row) in matrix.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, &k) in row.iter().enumerate() {
                if k == 0 || k > n {
                    return Err(RackError::EntryOutOfRange { row: i, col: j, value: k, size: n });
                }
                out.push(k - 1);
            }
            table.push(out);
        }
        Rack::from_table(&table)
    }

    pub fn from_file(file: &RackFile) -> Result<Rack, RackError> {
        if file.table.len() != file.n {
            return Err(RackError::NotSquare { row: file.table.len(), len: file.table.len(), expected: file.n });
        }
        Rack::from_matrix(&file.table)
    }

    pub fn to_file(&self) -> RackFile {
        RackFile { n: self.size, table: self.matrix() }
    }

    /// Constant action rack `x ▷ y = σ(x)` for a 0-based permutation σ.
    pub fn constant_action(perm: &[usize]) -> Result<Rack, RackError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(RackError::NotAPermutation(n));
            }
            seen[p] = true;
        }
        let table: Vec<Vec<usize>> = perm.iter().map(|&p| vec![p; n]).collect();
        Rack::from_table(&table)
    }

    /// The trivial quandle `x ▷ y = x` on `n` elements.
    pub fn trivial(n: usize) -> Rack {
        Rack::constant_action(&(0..n).collect::<Vec<_>>()).expect("identity is a permutation")
    }

    /// The (t,s)-rack on ℤₙ with `x ▷ y = tx + sy`.
    ///
    /// Element `i` (0-based) is the residue `i + 1 mod n`, so the last element
    /// is the residue 0, matching printed rack matrices.
    pub fn ts_rack(n: u64, t: u64, s: u64) -> Result<Rack, RackError> {
        let (t, s) = (t % n, s % n);
        if gcd(t, n) != 1 {
            return Err(RackError::NotAUnit { t, n });
        }
        if (s * s) % n != ((1 + n - t) % n * s) % n {
            return Err(RackError::SConditionFails { t, s, n });
        }
        let residue = |i: usize| (i as u64 + 1) % n;
        let index = |r: u64| ((r + n - 1) % n) as usize;
        let table: Vec<Vec<usize>> = (0..n as usize)
            .map(|i| (0..n as usize).map(|j| index((t * residue(i) + s * residue(j)) % n)).collect())
            .collect();
        Rack::from_table(&table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `i ▷ j`.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size + j]
    }

    /// `i ▷⁻¹ j`, the unique `z` with `z ▷ j = i`.
    #[inline]
    pub fn op_inv(&self, i: usize, j: usize) -> usize {
        self.inverse[i * self.size + j]
    }

    /// The kink map `π(x) = x ▷ x`.
    pub fn kink(&self, x: usize) -> usize {
        self.kink[x]
    }

    pub fn kink_permutation(&self) -> &[usize] {
        &self.kink
    }

    /// Rack rank: the order of the kink map.
    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn is_quandle(&self) -> bool {
        self.rank == 1
    }

    /// The rack matrix, 1-based.
    pub fn matrix(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.op(i, j) + 1).collect()).collect()
    }

    /// 0-based table rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|i| self.table[i * self.size..(i + 1) * self.size].to_vec()).collect()
    }
}
