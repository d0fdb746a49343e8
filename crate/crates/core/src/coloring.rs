//! Rack colorings of diagrams and the integral counting invariant.

use crate::diagram::{Crossing, LinkDiagram, Sign};
use crate::rack::Rack;

/// Rack labels of a diagram's arcs, indexed by arc number (0-based elements).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RackColoring {
    labels: Vec<usize>,
}

impl RackColoring {
    pub fn new(labels: Vec<usize>) -> Self {
        RackColoring { labels }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, arc: usize) -> usize {
        self.labels[arc]
    }
}

fn crossing_target(rack: &Rack, x: &Crossing, under_in: usize, over: usize) -> usize {
    match x.sign {
        Sign::Positive => rack.op(under_in, over),
        Sign::Negative => rack.op_inv(under_in, over),
    }
}

fn crossing_source(rack: &Rack, x: &Crossing, under_out: usize, over: usize) -> usize {
    match x.sign {
        Sign::Positive => rack.op_inv(under_out, over),
        Sign::Negative => rack.op(under_out, over),
    }
}

/// Checks every crossing relation directly.
pub fn is_valid_coloring(d: &LinkDiagram, rack: &Rack, labels: &[usize]) -> bool {
    labels.len() == d.arc_count()
        && labels.iter().all(|&l| l < rack.size())
        && d.crossings()
            .iter()
            .all(|x| crossing_target(rack, x, labels[x.under_in], labels[x.over]) == labels[x.under_out])
}

struct Search<'a> {
    rack: &'a Rack,
    crossings: &'a [Crossing],
    touching: Vec<Vec<usize>>,
    found: Vec<RackColoring>,
}

impl Search<'_> {
    /// Assigns `arc = value` and closes under forced consequences. Returns
    /// false on a contradiction.
    fn assign(&self, labels: &mut [Option<usize>], arc: usize, value: usize) -> bool {
        labels[arc] = Some(value);
        let mut queue = vec![arc];
        while let Some(a) = queue.pop() {
            for &k in &self.touching[a] {
                let x = &self.crossings[k];
                match (labels[x.under_in], labels[x.over], labels[x.under_out]) {
                    (Some(i), Some(o), Some(u)) => {
                        if crossing_target(self.rack, x, i, o) != u {
                            return false;
                        }
                    }
                    (Some(i), Some(o), None) => {
                        labels[x.under_out] = Some(crossing_target(self.rack, x, i, o));
                        queue.push(x.under_out);
                    }
                    (None, Some(o), Some(u)) => {
                        labels[x.under_in] = Some(crossing_source(self.rack, x, u, o));
                        queue.push(x.under_in);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn run(&mut self, labels: Vec<Option<usize>>) {
        let Some(free) = labels.iter().position(Option::is_none) else {
            self.found.push(RackColoring::new(labels.into_iter().map(Option::unwrap).collect()));
            return;
        };
        for value in 0..self.rack.size() {
            let mut next = labels.clone();
            if self.assign(&mut next, free, value) {
                self.run(next);
            }
        }
    }
}

/// All colorings of `d` by `rack`, in lexicographic order of the label
/// vector.
///
/// Branches on the lowest unlabeled arc and propagates labels forced by
/// crossings whose over arc and one under arc are known.
pub fn enumerate_colorings(d: &LinkDiagram, rack: &Rack) -> Vec<RackColoring> {
    let mut touching = vec![Vec::new(); d.arc_count()];
    for (k, x) in d.crossings().iter().enumerate() {
        for a in [x.under_in, x.over, x.under_out] {
            if !touching[a].contains(&k) {
                touching[a].push(k);
            }
        }
    }
    let mut search = Search { rack, crossings: d.crossings(), touching, found: Vec::new() };
    search.run(vec![None; d.arc_count()]);
    search.found
}

/// Every writhe vector in `(ℤ_N)^c`, in lexicographic order.
pub fn writhe_targets(components: usize, rank: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..components {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (0..rank).map(move |w| {
                    let mut v = prefix.clone();
                    v.push(w);
                    v
                })
            })
            .collect();
    }
    out
}

/// Coloring counts of the framed representative for each writhe vector
/// modulo the rack rank.
pub fn counts_by_writhe(d: &LinkDiagram, rack: &Rack) -> Vec<(Vec<u64>, usize)> {
    writhe_targets(d.component_count(), rack.rank())
        .into_iter()
        .map(|w| {
            let framed = d.framed_representative(&w, rack.rank());
            let count = enumerate_colorings(&framed, rack).len();
            (w, count)
        })
        .collect()
}

/// `Φᶻ_X(L)`: colorings summed over a full period of writhe vectors.
pub fn integral_counting_invariant(d: &LinkDiagram, rack: &Rack) -> u64 {
    counts_by_writhe(d, rack).iter().map(|&(_, c)| c as u64).sum()
}
