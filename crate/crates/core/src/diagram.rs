//! Oriented link diagrams as crossing lists.
//!
//! An arc runs from one undercrossing to the next along its component, so a
//! component with `k` undercrossings has exactly `k` arcs, listed in
//! traversal order: each arc is the `under_in` of the crossing that ends it
//! and the next arc is that crossing's `under_out`. A component with no
//! undercrossings is a single closed arc.
//!
//! Virtual crossings are not stored; colorings pass straight through them.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("crossing {crossing}: sign must be 1 or -1, got {value}")]
    InvalidSign { crossing: usize, value: i64 },
    #[error("component {component} is empty")]
    EmptyComponent { component: usize },
    #[error("arc {arc:?} appears more than once in the components")]
    DuplicateArc { arc: String },
    #[error("crossing {crossing}: arc {arc:?} does not belong to any component")]
    DanglingArc { crossing: usize, arc: String },
    #[error("component {component}, arc {arc:?}: {reason}")]
    InconsistentTraversal { component: usize, arc: String, reason: String },
    #[error("unknown arc {0:?}")]
    UnknownArc(String),
    #[error("arc {arc:?} is not on component {component}")]
    ArcNotOnComponent { arc: String, component: usize },
    #[error("component {component} out of range (diagram has {count})")]
    UnknownComponent { component: usize, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// A classical crossing. Arc fields are indices into [`LinkDiagram::arcs`].
///
/// At a positive crossing `label(under_out) = label(under_in) ▷ label(over)`;
/// at a negative one `▷⁻¹` replaces `▷`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: Sign,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

/// Per-component self-writhe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WritheVector(pub Vec<i64>);

impl WritheVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for WritheVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingFile {
    pub sign: i64,
    pub over: String,
    pub under_in: String,
    pub under_out: String,
}

/// The JSON document form of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(default)]
    pub name: String,
    #[serde(default, rename = "virtual")]
    pub is_virtual: bool,
    pub components: Vec<Vec<String>>,
    pub crossings: Vec<CrossingFile>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    name: String,
    is_virtual: bool,
    arcs: Vec<String>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    crossings: Vec<Crossing>,
}

impl LinkDiagram {
    /// Parses and validates a JSON diagram document.
    pub fn parse(text: &str) -> Result<LinkDiagram, DiagramError> {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| DiagramError::Schema(e.to_string()))?;
        LinkDiagram::from_file(&file)
    }

    pub fn from_file(file: &DiagramFile) -> Result<LinkDiagram, DiagramError> {
        let mut arcs = Vec::new();
        let mut index = HashMap::new();
        let mut components = Vec::with_capacity(file.components.len());
        let mut component_of = Vec::new();
        for (c, comp) in file.components.iter().enumerate() {
            if comp.is_empty() {
                return Err(DiagramError::EmptyComponent { component: c });
            }
            let mut seq = Vec::with_capacity(comp.len());
            for id in comp {
                if index.insert(id.clone(), arcs.len()).is_some() {
                    return Err(DiagramError::DuplicateArc { arc: id.clone() });
                }
                seq.push(arcs.len());
                arcs.push(id.clone());
                component_of.push(c);
            }
            components.push(seq);
        }

        let mut crossings = Vec::with_capacity(file.crossings.len());
        for (k, x) in file.crossings.iter().enumerate() {
            let sign = match x.sign {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                value => return Err(DiagramError::InvalidSign { crossing: k, value }),
            };
            let lookup = |id: &String| {
                index.get(id).copied().ok_or_else(|| DiagramError::DanglingArc { crossing: k, arc: id.clone() })
            };
            crossings.push(Crossing {
                sign,
                over: lookup(&x.over)?,
                under_in: lookup(&x.under_in)?,
                under_out: lookup(&x.under_out)?,
            });
        }

        let d = LinkDiagram {
            name: file.name.clone(),
            is_virtual: file.is_virtual,
            arcs,
            components,
            component_of,
            crossings,
        };
        d.check_traversal()?;
        Ok(d)
    }

    fn check_traversal(&self) -> Result<(), DiagramError> {
        let fail = |component: usize, arc: usize, reason: String| DiagramError::InconsistentTraversal {
            component,
            arc: self.arcs[arc].clone(),
            reason,
        };
        let mut ends: HashMap<usize, usize> = HashMap::new();
        let mut starts: HashSet<usize> = HashSet::new();
        for (k, x) in self.crossings.iter().enumerate() {
            if ends.insert(x.under_in, k).is_some() {
                return Err(fail(
                    self.component_of[x.under_in],
                    x.under_in,
                    "arc ends at more than one undercrossing".into(),
                ));
            }
            if !starts.insert(x.under_out) {
                return Err(fail(
                    self.component_of[x.under_out],
                    x.under_out,
                    "arc starts at more than one undercrossing".into(),
                ));
            }
        }
        for (c, comp) in self.components.iter().enumerate() {
            if comp.len() == 1 {
                let a = comp[0];
                if let Some(&k) = ends.get(&a) {
                    if self.crossings[k].under_out != a {
                        return Err(fail(c, a, format!("crossing {k} leads off the component")));
                    }
                }
                continue;
            }
            for (i, &a) in comp.iter().enumerate() {
                let next = comp[(i + 1) % comp.len()];
                match ends.get(&a) {
                    None => return Err(fail(c, a, "arc does not end at an undercrossing".into())),
                    Some(&k) if self.crossings[k].under_out != next => {
                        return Err(fail(
                            c,
                            a,
                            format!(
                                "crossing {k} continues to {:?}, but the component lists {:?} next",
                                self.arcs[self.crossings[k].under_out], self.arcs[next]
                            ),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        // every crossing's under strand is now pinned to a listed transition,
        // except a one-arc component whose only crossing starts it
        for (k, x) in self.crossings.iter().enumerate() {
            let c = self.component_of[x.under_out];
            if self.components[c].len() == 1 && x.under_in != x.under_out {
                return Err(fail(c, x.under_out, format!("crossing {k} enters a closed component")));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> DiagramFile {
        DiagramFile {
            name: self.name.clone(),
            is_virtual: self.is_virtual,
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&a| self.arcs[a].clone()).collect())
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|x| CrossingFile {
                    sign: x.sign.value(),
                    over: self.arcs[x.over].clone(),
                    under_in: self.arcs[x.under_in].clone(),
                    under_out: self.arcs[x.under_out].clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("diagram serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_virtual(&self) -> bool {
        self.is_virtual
    }

    /// Arc identifiers, indexed by arc number.
    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a == id)
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.component_of[arc]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn writhe_vector(&self) -> WritheVector {
        let mut w = vec![0; self.components.len()];
        for x in &self.crossings {
            let c = self.component_of[x.under_in];
            if self.component_of[x.over] == c {
                w[c] += x.sign.value();
            }
        }
        WritheVector(w)
    }

    fn fresh_arc_id(&self, base: &str) -> String {
        let mut id = format!("{base}'");
        while self.arcs.iter().any(|a| *a == id) {
            id.push('\'');
        }
        id
    }

    /// Adds a positive kink at the end of `arc` on `component`.
    ///
    /// The kink's over strand is the incoming arc, so a label `x` on `arc`
    /// continues as `x ▷ x`. The arc is split into `arc` and a new arc that
    /// takes over its old undercrossing end; a closed crossingless component
    /// stays a single arc that starts and ends at the new crossing.
    pub fn insert_positive_kink(&self, component: usize, arc: usize) -> Result<LinkDiagram, DiagramError> {
        if component >= self.components.len() {
            return Err(DiagramError::UnknownComponent { component, count: self.components.len() });
        }
        if arc >= self.arcs.len() {
            return Err(DiagramError::UnknownArc(format!("#{arc}")));
        }
        if self.component_of[arc] != component {
            return Err(DiagramError::ArcNotOnComponent { arc: self.arcs[arc].clone(), component });
        }
        let mut d = self.clone();
        match d.crossings.iter().position(|x| x.under_in == arc) {
            None => {
                d.crossings.push(Crossing { sign: Sign::Positive, over: arc, under_in: arc, under_out: arc });
            }
            Some(end) => {
                let new_arc = d.arcs.len();
                d.arcs.push(self.fresh_arc_id(&self.arcs[arc]));
                d.component_of.push(component);
                d.crossings[end].under_in = new_arc;
                d.crossings.push(Crossing { sign: Sign::Positive, over: arc, under_in: arc, under_out: new_arc });
                let comp = &mut d.components[component];
                let pos = comp.iter().position(|&a| a == arc).expect("arc is on its component");
                comp.insert(pos + 1, new_arc);
            }
        }
        Ok(d)
    }

    /// Same as [`insert_positive_kink`](Self::insert_positive_kink), by arc id.
    pub fn insert_positive_kink_at(&self, component: usize, arc: &str) -> Result<LinkDiagram, DiagramError> {
        let a = self.arc_index(arc).ok_or_else(|| DiagramError::UnknownArc(arc.to_string()))?;
        self.insert_positive_kink(component, a)
    }

    /// A diagram whose writhe vector is congruent to `target` modulo `rank`,
    /// obtained by adding positive kinks at the first arc of each component.
    pub fn framed_representative(&self, target: &[u64], rank: u64) -> LinkDiagram {
        let anchors = vec![0; self.components.len()];
        self.framed_representative_at(target, rank, &anchors)
    }

    /// As [`framed_representative`](Self::framed_representative), placing the
    /// kinks of component `j` at position `anchors[j]` of its arc list.
    ///
    /// Panics if `target` or `anchors` has the wrong length, an anchor is out
    /// of range, or `rank` is zero.
    pub fn framed_representative_at(&self, target: &[u64], rank: u64, anchors: &[usize]) -> LinkDiagram {
        assert_eq!(target.len(), self.components.len(), "target length");
        assert_eq!(anchors.len(), self.components.len(), "anchor count");
        assert!(rank > 0, "rack rank must be positive");
        let writhe = self.writhe_vector();
        let mut d = self.clone();
        for (j, (&w, &cur)) in target.iter().zip(writhe.as_slice()).enumerate() {
            let kinks = (w as i64 - cur).rem_euclid(rank as i64);
            let arc = self.components[j][anchors[j]];
            for _ in 0..kinks {
                d = d.insert_positive_kink(j, arc).expect("anchor arc is on its component");
            }
        }
        d
    }
}
