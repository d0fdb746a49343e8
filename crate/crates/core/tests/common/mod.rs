//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's search or linear-algebra code.

#![allow(dead_code)]

use rackmod::diagram::{LinkDiagram, Sign};
use rackmod::rack::Rack;
use rackmod::rackmodule::ModuleStructure;

/// Decodes `code` as a base-`n` digit vector of length `len`, most
/// significant digit first.
pub fn digits(mut code: u64, n: u64, len: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    for d in v.iter_mut().rev() {
        *d = code % n;
        code /= n;
    }
    v
}

/// Number of `x ∈ (ℤₙ)^cols` with `M·x ≡ 0`, by listing every vector.
pub fn brute_force_solutions(rows: &[Vec<i64>], cols: usize, n: u64) -> u64 {
    (0..n.pow(cols as u32))
        .filter(|&code| {
            let x = digits(code, n, cols);
            rows.iter().all(|r| r.iter().zip(&x).map(|(&a, &b)| a * b as i64).sum::<i64>().rem_euclid(n as i64) == 0)
        })
        .count() as u64
}

/// Rack colorings of `d` by listing every label vector.
pub fn brute_force_colorings(d: &LinkDiagram, x: &Rack) -> Vec<Vec<usize>> {
    let m = x.size() as u64;
    let arcs = d.arc_count();
    (0..m.pow(arcs as u32))
        .map(|code| digits(code, m, arcs).into_iter().map(|v| v as usize).collect::<Vec<_>>())
        .filter(|f| {
            d.crossings().iter().all(|c| {
                let (i, o, u) = (f[c.under_in], f[c.over], f[c.under_out]);
                match c.sign {
                    Sign::Positive => x.op(i, o) == u,
                    Sign::Negative => x.op(u, o) == i,
                }
            })
        })
        .collect()
}

/// Fox 3-colorings: labels in ℤ₃ with `2·over ≡ in + out` at every crossing.
pub fn fox_three_colorings(d: &LinkDiagram) -> usize {
    let arcs = d.arc_count();
    (0..3u64.pow(arcs as u32))
        .filter(|&code| {
            let f = digits(code, 3, arcs);
            d.crossings().iter().all(|c| (2 * f[c.over] + 6 - f[c.under_in] - f[c.under_out]) % 3 == 0)
        })
        .count()
}

/// Bead labelings of a colored diagram by listing every bead vector and
/// applying the crossing rule `out = t·in + s·over` (positive) or
/// `in = t·out + s·over` with coefficients at the outgoing label (negative).
pub fn brute_force_beads(d: &LinkDiagram, f: &[usize], r: &ModuleStructure) -> u64 {
    let n = r.modulus();
    let arcs = d.arc_count();
    (0..n.pow(arcs as u32))
        .filter(|&code| {
            let a = digits(code, n, arcs);
            d.crossings().iter().all(|c| {
                let y = f[c.over];
                match c.sign {
                    Sign::Positive => {
                        let x = f[c.under_in];
                        (r.t(x, y) * a[c.under_in] + r.s(x, y) * a[c.over]) % n == a[c.under_out]
                    }
                    Sign::Negative => {
                        let z = f[c.under_out];
                        (r.t(z, y) * a[c.under_out] + r.s(z, y) * a[c.over]) % n == a[c.under_in]
                    }
                }
            })
        })
        .count() as u64
}

/// Direct evaluation of the four relation families on raw arrays.
pub fn relations_hold(x: &Rack, n: u64, t: &[Vec<u64>], s: &[Vec<u64>]) -> bool {
    let m = x.size();
    let units = (0..m).all(|a| (0..m).all(|b| (1..n).any(|v| t[a][b] * v % n == 1)));
    if !units {
        return false;
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let (ab, ac, bc) = (x.op(a, b), x.op(a, c), x.op(b, c));
                if t[ab][c] * t[a][b] % n != t[ac][bc] * t[a][c] % n {
                    return false;
                }
                if t[ab][c] * s[a][b] % n != s[ac][bc] * t[b][c] % n {
                    return false;
                }
                if s[ab][c] != (s[ac][bc] * s[b][c] + t[ac][bc] * s[a][c]) % n {
                    return false;
                }
            }
        }
    }
    r4_holds(x, n, t, s)
}

pub fn r4_holds(x: &Rack, n: u64, t: &[Vec<u64>], s: &[Vec<u64>]) -> bool {
    let m = x.size();
    (0..m).all(|a| {
        let mut p = a;
        let mut prod = 1;
        for _ in 0..x.rank() {
            prod = prod * ((t[p][p] + s[p][p]) % n) % n;
            p = x.op(p, p);
        }
        prod == 1
    })
}

/// Linking number of components `i` and `j`: half the signed count of
/// crossings between them.
pub fn linking_number(d: &LinkDiagram, i: usize, j: usize) -> i64 {
    let sum: i64 = d
        .crossings()
        .iter()
        .filter(|c| {
            let (o, u) = (d.component_of(c.over), d.component_of(c.under_in));
            (o == i && u == j) || (o == j && u == i)
        })
        .map(|c| c.sign.value())
        .sum();
    sum / 2
}

pub fn ca12() -> Rack {
    Rack::constant_action(&[1, 0]).unwrap()
}

pub fn z3_structure() -> ModuleStructure {
    ModuleStructure::from_block_matrix(&ca12(), 3, &[vec![1, 1, 1, 2], vec![1, 1, 2, 1]]).unwrap()
}

pub fn census_quandle() -> Rack {
    Rack::from_matrix(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap()
}

pub fn census_quandle_structure() -> ModuleStructure {
    let block = [vec![4, 2, 3, 2, 1, 1], vec![1, 4, 2, 2, 2, 3], vec![1, 3, 4, 3, 2, 2]];
    ModuleStructure::from_block_matrix(&census_quandle(), 5, &block).unwrap()
}

pub fn census_rack() -> Rack {
    Rack::from_matrix(&[vec![2, 2, 2], vec![1, 1, 1], vec![3, 3, 3]]).unwrap()
}

pub fn census_rack_structure() -> ModuleStructure {
    let block = [vec![1, 1, 1, 0, 0, 4], vec![1, 1, 1, 0, 0, 4], vec![1, 1, 1, 0, 0, 0]];
    ModuleStructure::from_block_matrix(&census_rack(), 5, &block).unwrap()
}

pub fn hopf() -> LinkDiagram {
    LinkDiagram::parse(
        r#"{"name":"hopf","components":[["a"],["b"]],"crossings":[
            {"sign":1,"over":"b","under_in":"a","under_out":"a"},
            {"sign":1,"over":"a","under_in":"b","under_out":"b"}]}"#,
    )
    .unwrap()
}
