//! Bead labelings of colored diagrams and the enhanced counting invariants.
//!
//! For a coloring `f`, the bead labelings form the solution set of a
//! homogeneous linear system over ℤₙ with one equation per crossing and one
//! unknown per arc. The enhanced invariant records, for every coloring of
//! every framed representative, the size of that solution set as an exponent
//! of `u`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{enumerate_colorings, writhe_targets, RackColoring};
use crate::diagram::{Crossing, LinkDiagram, Sign};
use crate::modmath::{count_solutions_mod_n, nullity_mod_p, solution_generators_mod_n, IntMatrix, MathError};
use crate::rack::Rack;
use crate::rackmodule::ModuleStructure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnhancedError {
    #[error("labels do not color the diagram at crossing {crossing}")]
    InvalidColoring { crossing: usize },
    #[error("coloring has {got} labels, the diagram has {expected} arcs")]
    ColoringLength { got: usize, expected: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Coefficient matrix of the bead relations of a colored diagram: one row
/// per crossing, one column per arc, entries in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix {
    matrix: IntMatrix,
    modulus: u64,
}

impl PresentationMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn solution_count(&self) -> u128 {
        count_solutions_mod_n(&self.matrix, self.modulus)
    }
}

/// Builds the bead relations of `d` colored by `f`.
///
/// A positive crossing with `x = f(under_in)`, `y = f(over)` gives
/// `t_{x,y}·a_in + s_{x,y}·a_over − a_out`. A negative crossing is written
/// from the outgoing side: with `z = f(under_out)` it gives
/// `t_{z,y}·a_out + s_{z,y}·a_over − a_in`. Coefficients on a shared arc
/// add, so a kink contributes `t_{x,x} + s_{x,x} − 1` on one arc.
pub fn presentation_matrix(
    d: &LinkDiagram,
    f: &RackColoring,
    r: &ModuleStructure,
) -> Result<PresentationMatrix, EnhancedError> {
    let rack = r.rack();
    let labels = f.labels();
    if labels.len() != d.arc_count() {
        return Err(EnhancedError::ColoringLength { got: labels.len(), expected: d.arc_count() });
    }
    let n = r.modulus();
    let mut m = IntMatrix::zeros(d.crossings().len(), d.arc_count());
    for (k, x) in d.crossings().iter().enumerate() {
        let colored = [x.under_in, x.over, x.under_out].iter().all(|&a| labels[a] < rack.size());
        if !colored || !crossing_holds(rack, x, labels) {
            return Err(EnhancedError::InvalidColoring { crossing: k });
        }
        let y = labels[x.over];
        let (near, far) = match x.sign {
            Sign::Positive => (x.under_in, x.under_out),
            Sign::Negative => (x.under_out, x.under_in),
        };
        let c = labels[near];
        let mut add = |col: usize, v: i64| m.set(k, col, m.get(k, col) + v);
        add(near, r.t(c, y) as i64);
        add(x.over, r.s(c, y) as i64);
        add(far, -1);
    }
    Ok(PresentationMatrix { matrix: m.normalized_mod(n), modulus: n })
}

fn crossing_holds(rack: &Rack, x: &Crossing, labels: &[usize]) -> bool {
    let out = match x.sign {
        Sign::Positive => rack.op(labels[x.under_in], labels[x.over]),
        Sign::Negative => rack.op_inv(labels[x.under_in], labels[x.over]),
    };
    out == labels[x.under_out]
}

/// `|Hom(ℤ[f], R)|`, the number of bead labelings of the colored diagram.
pub fn bead_count(d: &LinkDiagram, f: &RackColoring, r: &ModuleStructure) -> Result<u128, EnhancedError> {
    Ok(presentation_matrix(d, f, r)?.solution_count())
}

/// A polynomial `Σ aᵢ·u^{bᵢ}` with nonnegative integer exponents, stored as
/// exponent → multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantPolynomial {
    terms: BTreeMap<u128, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub coeff: u64,
    pub exp: u128,
}

/// JSON form: `{"terms":[{"coeff":2,"exp":9}],"sumOfExponents":18}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<PolynomialTerm>,
    #[serde(rename = "sumOfExponents")]
    pub sum_of_exponents: u128,
}

impl InvariantPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u128>) -> Self {
        let mut p = Self::new();
        for e in exps {
            p.add_term(e, 1);
        }
        p
    }

    pub fn add_term(&mut self, exp: u128, coeff: u64) {
        if coeff > 0 {
            *self.terms.entry(exp).or_insert(0) += coeff;
        }
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u128, u64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the coefficients, the value at `u = 1`.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn min_exponent(&self) -> Option<u128> {
        self.terms.keys().next().copied()
    }

    pub fn sum_of_exponents(&self) -> u128 {
        self.terms.iter().map(|(&e, &c)| e * c as u128).sum()
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            terms: self.terms().map(|(exp, coeff)| PolynomialTerm { coeff, exp }).collect(),
            sum_of_exponents: self.sum_of_exponents(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Self {
        let mut p = Self::new();
        for t in &json.terms {
            p.add_term(t.exp, t.coeff);
        }
        p
    }
}

impl fmt::Display for InvariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}u^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ exponent · multiplicity`, which equals `Φᶻ` of the extension rack.
pub fn sum_of_exponents(p: &InvariantPolynomial) -> u128 {
    p.sum_of_exponents()
}

/// One coloring of one framed representative with its bead count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedEntry {
    pub writhe: Vec<u64>,
    pub coloring: RackColoring,
    pub bead_count: u128,
    /// Generators of the bead-labeling group, when requested.
    pub basis: Option<Vec<Vec<i64>>>,
}

/// The per-coloring breakdown behind the enhanced invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedMultiset {
    pub entries: Vec<EnhancedEntry>,
}

impl EnhancedMultiset {
    pub fn invariant(&self) -> InvariantPolynomial {
        InvariantPolynomial::from_exponents(self.entries.iter().map(|e| e.bead_count))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Colorings of every framed representative, paired with their presentation
/// matrices, in writhe-vector then coloring order. Kinks on component `j`
/// go at position `anchors[j]` of its arc list.
fn colored_representatives(
    d: &LinkDiagram,
    r: &ModuleStructure,
    anchors: &[usize],
) -> Vec<(Vec<u64>, RackColoring, PresentationMatrix)> {
    let rack = r.rack();
    let per_writhe: Vec<Vec<_>> = writhe_targets(d.component_count(), rack.rank())
        .into_par_iter()
        .map(|w| {
            let framed = d.framed_representative_at(&w, rack.rank(), anchors);
            enumerate_colorings(&framed, rack)
                .into_iter()
                .map(|f| {
                    let m = presentation_matrix(&framed, &f, r).expect("enumerated colorings are valid");
                    (w.clone(), f, m)
                })
                .collect()
        })
        .collect();
    per_writhe.into_iter().flatten().collect()
}

fn first_arcs(d: &LinkDiagram) -> Vec<usize> {
    vec![0; d.component_count()]
}

/// The enhanced multiset; bead-labeling generators are included when
/// `with_basis` is set.
pub fn enhanced_multiset(d: &LinkDiagram, r: &ModuleStructure, with_basis: bool) -> EnhancedMultiset {
    let entries = colored_representatives(d, r, &first_arcs(d))
        .into_iter()
        .map(|(writhe, coloring, m)| EnhancedEntry {
            writhe,
            coloring,
            bead_count: m.solution_count(),
            basis: with_basis.then(|| solution_generators_mod_n(m.matrix(), m.modulus())),
        })
        .collect();
    EnhancedMultiset { entries }
}

/// `Φ_{X,R}(L)`: `u^{|Hom(ℤ[f],R)|}` summed over all colorings of all framed
/// representatives. The rack is the one carried by `r`.
pub fn enhanced_invariant(d: &LinkDiagram, r: &ModuleStructure) -> InvariantPolynomial {
    enhanced_invariant_at(d, r, &first_arcs(d))
}

/// [`enhanced_invariant`] with the framing kinks of component `j` placed at
/// position `anchors[j]` of its arc list.
pub fn enhanced_invariant_at(d: &LinkDiagram, r: &ModuleStructure, anchors: &[usize]) -> InvariantPolynomial {
    InvariantPolynomial::from_exponents(
        colored_representatives(d, r, anchors).into_iter().map(|(_, _, m)| m.solution_count()),
    )
}

/// `Φ^dim_{X,R}(L)`: as [`enhanced_invariant`] with the dimension of the
/// bead space over the field ℤ_p as exponent.
pub fn dim_enhanced_invariant(d: &LinkDiagram, r: &ModuleStructure) -> Result<InvariantPolynomial, EnhancedError> {
    let p = r.modulus();
    let mut poly = InvariantPolynomial::new();
    for (_, _, m) in colored_representatives(d, r, &first_arcs(d)) {
        poly.add_term(nullity_mod_p(m.matrix(), p)? as u128, 1);
    }
    Ok(poly)
}
