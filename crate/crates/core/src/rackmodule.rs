//! Rack-module structures on ℤₙ over a finite rack.
//!
//! A structure assigns to every pair `(x, y)` a unit `t_{x,y}` and an element
//! `s_{x,y}` of ℤₙ. A bead `a` under an arc colored `x`, crossing under an arc
//! colored `y` with bead `b`, continues as `t_{x,y}·a + s_{x,y}·b`. The four
//! relation families below are exactly what makes this rule invariant under
//! blackboard-framed Reidemeister moves and the N-phone cord move.

use std::fmt;

use num_integer::gcd;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modmath::mod_inverse;
use crate::rack::Rack;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `t_{x▷y,z}·t_{x,y} = t_{x▷z,y▷z}·t_{x,z}`
    R1,
    /// `t_{x▷y,z}·s_{x,y} = s_{x▷z,y▷z}·t_{y,z}`
    R2,
    /// `s_{x▷y,z} = s_{x▷z,y▷z}·s_{y,z} + t_{x▷z,y▷z}·s_{x,z}`
    R3,
    /// `∏_{k<N} (t + s)_{πᵏx,πᵏx} = 1`
    R4,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn witness(relation: Relation, at: &[usize; 3]) -> String {
    match relation {
        Relation::R4 => format!("x{}", at[0] + 1),
        _ => format!("(x{}, x{}, x{})", at[0] + 1, at[1] + 1, at[2] + 1),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{matrix} must be {size}x{size} to match the rack")]
    Shape { matrix: &'static str, size: usize },
    #[error("{matrix} entry ({}, {}) = {value} is outside 0..{n}", .row + 1, .col + 1)]
    EntryOutOfRange { matrix: &'static str, row: usize, col: usize, value: u64, n: u64 },
    #[error("t(x{}, x{}) is not a unit modulo the ring size", .x + 1, .y + 1)]
    NonUnitT { x: usize, y: usize },
    #[error("relation {relation} fails at {}", witness(*.relation, .at))]
    RelationFails { relation: Relation, at: [usize; 3] },
}

/// Module file contents: `{"n": 3, "Mt": [[1,1],[1,1]], "Ms": [[1,2],[2,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub n: u64,
    #[serde(rename = "Mt")]
    pub mt: Vec<Vec<u64>>,
    #[serde(rename = "Ms")]
    pub ms: Vec<Vec<u64>>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile, ModuleError> {
        serde_json::from_str(text).map_err(|e| ModuleError::Schema(e.to_string()))
    }
}

/// A validated ℤ[X]-module structure on ℤₙ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleStructure {
    rack: Rack,
    n: u64,
    t: Vec<u64>,
    s: Vec<u64>,
}

/// Evaluates one relation instance on flat `m×m` coefficient arrays.
fn holds(rack: &Rack, n: u64, t: &[u64], s: &[u64], relation: Relation, [x, y, z]: [usize; 3]) -> bool {
    let m = rack.size();
    let at = |a: usize, b: usize| a * m + b;
    let mul = |a: u64, b: u64| a * b % n;
    let xy = rack.op(x, y);
    let xz = rack.op(x, z);
    let yz = rack.op(y, z);
    match relation {
        Relation::R1 => mul(t[at(xy, z)], t[at(x, y)]) == mul(t[at(xz, yz)], t[at(x, z)]),
        Relation::R2 => mul(t[at(xy, z)], s[at(x, y)]) == mul(s[at(xz, yz)], t[at(y, z)]),
        Relation::R3 => s[at(xy, z)] == (mul(s[at(xz, yz)], s[at(y, z)]) + mul(t[at(xz, yz)], s[at(x, z)])) % n,
        Relation::R4 => {
            let mut product = 1 % n;
            let mut p = x;
            for _ in 0..rack.rank() {
                product = mul(product, (t[at(p, p)] + s[at(p, p)]) % n);
                p = rack.kink(p);
            }
            product == 1 % n
        }
    }
}

/// Every relation instance, in checking order: all triples for R1, then R2,
/// then R3, then R4 for each `x`.
fn instances(m: usize) -> impl Iterator<Item = (Relation, [usize; 3])> {
    let triples = move || (0..m).flat_map(move |x| (0..m).flat_map(move |y| (0..m).map(move |z| [x, y, z])));
    [Relation::R1, Relation::R2, Relation::R3]
        .into_iter()
        .flat_map(move |r| triples().map(move |w| (r, w)))
        .chain((0..m).map(|x| (Relation::R4, [x, x, x])))
}

/// Variables read by a relation instance. Variable `2p` is `t` and `2p + 1`
/// is `s` at pair `p = x·m + y`.
fn variables(rack: &Rack, relation: Relation, [x, y, z]: [usize; 3]) -> Vec<usize> {
    let m = rack.size();
    let t = |a: usize, b: usize| 2 * (a * m + b);
    let s = |a: usize, b: usize| 2 * (a * m + b) + 1;
    let xy = rack.op(x, y);
    let xz = rack.op(x, z);
    let yz = rack.op(y, z);
    match relation {
        Relation::R1 => vec![t(xy, z), t(x, y), t(xz, yz), t(x, z)],
        Relation::R2 => vec![t(xy, z), s(x, y), s(xz, yz), t(y, z)],
        Relation::R3 => vec![s(xy, z), s(xz, yz), s(y, z), t(xz, yz), s(x, z)],
        Relation::R4 => {
            let mut vars = Vec::new();
            let mut p = x;
            for _ in 0..rack.rank() {
                vars.extend([t(p, p), s(p, p)]);
                p = rack.kink(p);
            }
            vars
        }
    }
}

fn flatten(matrix: &'static str, rows: &[Vec<u64>], m: usize, n: u64) -> Result<Vec<u64>, ModuleError> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(ModuleError::Shape { matrix, size: m });
    }
    let mut flat = Vec::with_capacity(m * m);
    for (row, r) in rows.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(ModuleError::EntryOutOfRange { matrix, row, col, value, n });
            }
            flat.push(value);
        }
    }
    Ok(flat)
}

fn unflatten(flat: &[u64], m: usize) -> Vec<Vec<u64>> {
    flat.chunks(m).map(<[u64]>::to_vec).collect()
}

impl ModuleStructure {
    /// Validates candidate arrays `M_t`, `M_s` (entries in `0..n`) over `rack`.
    ///
    /// Failures report the first violated condition: units of `M_t` in
    /// row-major order, then relation instances in the order R1, R2, R3
    /// over all triples `(x, y, z)` lexicographically, then R4 for each `x`.
    pub fn validate(rack: &Rack, n: u64, mt: &[Vec<u64>], ms: &[Vec<u64>]) -> Result<ModuleStructure, ModuleError> {
        if n < 2 {
            return Err(ModuleError::ModulusTooSmall(n));
        }
        let m = rack.size();
        let t = flatten("Mt", mt, m, n)?;
        let s = flatten("Ms", ms, m, n)?;
        if let Some(p) = t.iter().position(|&v| gcd(v, n) != 1) {
            return Err(ModuleError::NonUnitT { x: p / m, y: p % m });
        }
        for (relation, at) in instances(m) {
            if !holds(rack, n, &t, &s, relation, at) {
                return Err(ModuleError::RelationFails { relation, at });
            }
        }
        Ok(ModuleStructure { rack: rack.clone(), n, t, s })
    }

    pub fn from_file(rack: &Rack, file: &ModuleFile) -> Result<ModuleStructure, ModuleError> {
        ModuleStructure::validate(rack, file.n, &file.mt, &file.ms)
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile { n: self.n, mt: self.mt(), ms: self.ms() }
    }

    /// Builds a structure from the printed block matrix `[M_t | M_s]`.
    pub fn from_block_matrix(rack: &Rack, n: u64, block: &[Vec<u64>]) -> Result<ModuleStructure, ModuleError> {
        let m = rack.size();
        if block.len() != m || block.iter().any(|r| r.len() != 2 * m) {
            return Err(ModuleError::Shape { matrix: "[Mt|Ms]", size: m });
        }
        let mt: Vec<Vec<u64>> = block.iter().map(|r| r[..m].to_vec()).collect();
        let ms: Vec<Vec<u64>> = block.iter().map(|r| r[m..].to_vec()).collect();
        ModuleStructure::validate(rack, n, &mt, &ms)
    }

    /// The constant structure `t_{x,y} = t`, `s_{x,y} = s`.
    pub fn from_constants(rack: &Rack, n: u64, t: u64, s: u64) -> Result<ModuleStructure, ModuleError> {
        let m = rack.size();
        let n_safe = n.max(1);
        let mt = vec![vec![t % n_safe; m]; m];
        let ms = vec![vec![s % n_safe; m]; m];
        ModuleStructure::validate(rack, n, &mt, &ms)
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn t(&self, x: usize, y: usize) -> u64 {
        self.t[x * self.rack.size() + y]
    }

    pub fn s(&self, x: usize, y: usize) -> u64 {
        self.s[x * self.rack.size() + y]
    }

    pub fn mt(&self) -> Vec<Vec<u64>> {
        unflatten(&self.t, self.rack.size())
    }

    pub fn ms(&self) -> Vec<Vec<u64>> {
        unflatten(&self.s, self.rack.size())
    }

    /// Rows of `[M_t | M_s]`.
    pub fn block_matrix(&self) -> Vec<Vec<u64>> {
        let m = self.rack.size();
        (0..m)
            .map(|x| {
                let mut row = self.t[x * m..(x + 1) * m].to_vec();
                row.extend_from_slice(&self.s[x * m..(x + 1) * m]);
                row
            })
            .collect()
    }

    /// Coefficients `(t̄_{x,y}, s̄_{x,y})` at a negative crossing where the
    /// under arc leaves colored `x` under an arc colored `y`: the incoming
    /// bead is `t̄·a + s̄·b`.
    pub fn negative_coefficients(&self, x: usize, y: usize) -> (u64, u64) {
        let z = self.rack.op_inv(x, y);
        let inv = mod_inverse(self.t(z, y), self.n).expect("t entries are units");
        let sbar = (self.n - inv * self.s(z, y) % self.n) % self.n;
        (inv, sbar)
    }

    /// The rack `X × ℤₙ` with `(x,a) ▷ (y,b) = (x▷y, t_{x,y}a + s_{x,y}b)`;
    /// the pair `(x, a)` has index `x·n + a`.
    pub fn extension_rack(&self) -> Rack {
        Rack::from_table(&product_table(&self.rack, self.n, &self.t, &self.s)).expect("module structures give racks")
    }
}

impl fmt::Display for ModuleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.rack.size();
        for (i, row) in self.block_matrix().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cell = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            write!(f, "{} | {}", cell(&row[..m]), cell(&row[m..]))?;
        }
        Ok(())
    }
}

/// Operation table of the product `X × ℤₙ` for flat coefficient arrays,
/// whether or not they form a module structure.
pub fn product_table(rack: &Rack, n: u64, t: &[u64], s: &[u64]) -> Vec<Vec<usize>> {
    let m = rack.size();
    let nn = n as usize;
    (0..m * nn)
        .map(|i| {
            let (x, a) = (i / nn, (i % nn) as u64);
            (0..m * nn)
                .map(|j| {
                    let (y, b) = (j / nn, (j % nn) as u64);
                    let p = x * m + y;
                    rack.op(x, y) * nn + ((t[p] * a + s[p] * b) % n) as usize
                })
                .collect()
        })
        .collect()
}

/// The constant structure `t_{x,y} = t`, `s_{x,y} = s`, if valid.
pub fn ts_module_from_constants(rack: &Rack, n: u64, t: u64, s: u64) -> Result<ModuleStructure, ModuleError> {
    ModuleStructure::from_constants(rack, n, t, s)
}

struct Search<'a> {
    rack: &'a Rack,
    n: u64,
    units: Vec<u64>,
    /// Relation instances grouped by the last variable they read.
    checks: Vec<Vec<(Relation, [usize; 3])>>,
    limit: Option<usize>,
}

impl Search<'_> {
    fn new(rack: &Rack, n: u64, limit: Option<usize>) -> Search<'_> {
        let m = rack.size();
        let mut checks = vec![Vec::new(); 2 * m * m];
        for (relation, at) in instances(m) {
            let last = *variables(rack, relation, at).iter().max().expect("relations read variables");
            checks[last].push((relation, at));
        }
        let units = (1..n).filter(|&v| gcd(v, n) == 1).collect();
        Search { rack, n, units, checks, limit }
    }

    fn choices(&self, var: usize) -> Vec<u64> {
        if var % 2 == 0 {
            self.units.clone()
        } else {
            (0..self.n).collect()
        }
    }

    fn consistent(&self, t: &[u64], s: &[u64], var: usize) -> bool {
        self.checks[var].iter().all(|&(r, at)| holds(self.rack, self.n, t, s, r, at))
    }

    fn full(&self, found: &[(Vec<u64>, Vec<u64>)]) -> bool {
        self.limit.is_some_and(|k| found.len() >= k)
    }

    fn run(&self, var: usize, t: &mut Vec<u64>, s: &mut Vec<u64>, found: &mut Vec<(Vec<u64>, Vec<u64>)>) {
        if var == 2 * t.len() {
            found.push((t.clone(), s.clone()));
            return;
        }
        for v in self.choices(var) {
            if self.full(found) {
                return;
            }
            if var % 2 == 0 { t[var / 2] = v } else { s[var / 2] = v }
            if self.consistent(t, s, var) {
                self.run(var + 1, t, s, found);
            }
        }
    }

    /// Explores the subtree under a fixed `(t, s)` at the first pair.
    fn branch(&self, t0: u64, s0: u64) -> Vec<(Vec<u64>, Vec<u64>)> {
        let size = self.rack.size() * self.rack.size();
        let mut t = vec![0; size];
        let mut s = vec![0; size];
        let mut found = Vec::new();
        t[0] = t0;
        if !self.consistent(&t, &s, 0) {
            return found;
        }
        s[0] = s0;
        if self.consistent(&t, &s, 1) {
            self.run(2, &mut t, &mut s, &mut found);
        }
        found
    }
}

/// All module structures over `rack` on ℤₙ, sorted by the row-major entries
/// of `[M_t | M_s]`.
///
/// The search backtracks over pairs `(x, y)` in row-major order, choosing
/// `t_{x,y}` and then `s_{x,y}`, and checks each relation instance as soon as
/// every coefficient it reads is assigned. Subtrees under the first pair run
/// in parallel. With `limit = Some(k)` the first `k` structures in search
/// order are kept and then sorted.
pub fn search_module_structures(rack: &Rack, n: u64, limit: Option<usize>) -> Vec<ModuleStructure> {
    if n < 2 || limit == Some(0) {
        return Vec::new();
    }
    let search = Search::new(rack, n, limit);
    let roots: Vec<(u64, u64)> =
        search.units.iter().flat_map(|&t| (0..n).map(move |s| (t, s))).collect();
    let per_root: Vec<_> = roots.par_iter().map(|&(t, s)| search.branch(t, s)).collect();
    let mut found: Vec<(Vec<u64>, Vec<u64>)> = per_root.into_iter().flatten().collect();
    if let Some(k) = limit {
        found.truncate(k);
    }
    let mut out: Vec<ModuleStructure> =
        found.into_iter().map(|(t, s)| ModuleStructure { rack: rack.clone(), n, t, s }).collect();
    out.sort_by_cached_key(|r| r.block_matrix());
    out
}
