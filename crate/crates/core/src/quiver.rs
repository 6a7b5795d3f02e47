//! Finite quivers, their double quivers and the regular/sink split.
//!
//! Vertices and arrows are stored sorted by name (byte order), so comparing
//! ids compares names. Every regular vertex carries a *special* arrow: the
//! outgoing arrow whose CK2 relation is oriented into a rewrite rule.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("`{0}` is not a valid identifier")]
    BadIdentifier(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` uses undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("special arrow declared at undeclared vertex `{0}`")]
    UnknownSpecialVertex(String),
    #[error("special arrow `{0}` is not a declared arrow")]
    UnknownSpecialArrow(String),
    #[error("special arrow declared at sink `{0}`")]
    SpecialAtSink(String),
    #[error("special arrow `{arrow}` does not start at `{vertex}`")]
    SpecialWrongSource { vertex: String, arrow: String },
    #[error("vertex `{0}` has two special arrows")]
    DuplicateSpecial(String),
}

/// Unvalidated quiver description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    /// `(name, source, target)`
    pub arrows: Vec<(String, String, String)>,
    /// `(vertex, arrow)`
    pub special: Vec<(String, String)>,
}

impl RawQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_owned());
        self
    }

    pub fn arrow(mut self, name: &str, source: &str, target: &str) -> Self {
        self.arrows
            .push((name.to_owned(), source.to_owned(), target.to_owned()));
        self
    }

    pub fn special(mut self, vertex: &str, arrow: &str) -> Self {
        self.special.push((vertex.to_owned(), arrow.to_owned()));
        self
    }

    pub fn validate(self) -> Result<Quiver, QuiverError> {
        Quiver::validate(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Regular,
    Sink,
}

/// A letter of the double quiver: an arrow `α` or its ghost `α*`.
///
/// Letters order by arrow name, real before ghost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: ArrowId,
    pub ghost: bool,
}

impl Letter {
    pub fn real(arrow: ArrowId) -> Self {
        Letter { arrow, ghost: false }
    }

    pub fn ghost(arrow: ArrowId) -> Self {
        Letter { arrow, ghost: true }
    }

    pub fn star(self) -> Self {
        Letter {
            arrow: self.arrow,
            ghost: !self.ghost,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    special: Vec<Option<ArrowId>>,
    outgoing: Vec<Vec<ArrowId>>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// Validates a raw description. Regular vertices without a declared
    /// special arrow get the outgoing arrow with the least name.
    pub fn validate(raw: RawQuiver) -> Result<Quiver, QuiverError> {
        for name in raw.vertices.iter().chain(raw.arrows.iter().map(|a| &a.0)) {
            if !is_identifier(name) {
                return Err(QuiverError::BadIdentifier(name.clone()));
            }
        }
        let mut vertices = raw.vertices.clone();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuiverError::DuplicateVertex(w[0].clone()));
        }
        let vertex_index: BTreeMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i as u32)))
            .collect();

        let mut raw_arrows = raw.arrows.clone();
        raw_arrows.sort();
        if let Some(w) = raw_arrows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(QuiverError::DuplicateArrow(w[0].0.clone()));
        }
        let lookup = |arrow: &str, v: &str| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| QuiverError::DanglingEndpoint {
                    arrow: arrow.to_owned(),
                    vertex: v.to_owned(),
                })
        };
        let arrows = raw_arrows
            .iter()
            .map(|(name, s, t)| {
                Ok(Arrow {
                    name: name.clone(),
                    source: lookup(name, s)?,
                    target: lookup(name, t)?,
                })
            })
            .collect::<Result<Vec<_>, QuiverError>>()?;
        let arrow_index: BTreeMap<String, ArrowId> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ArrowId(i as u32)))
            .collect();

        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source.index()].push(ArrowId(i as u32));
        }

        let mut special: Vec<Option<ArrowId>> = vec![None; vertices.len()];
        for (v, a) in &raw.special {
            let vid = *vertex_index
                .get(v)
                .ok_or_else(|| QuiverError::UnknownSpecialVertex(v.clone()))?;
            let aid = *arrow_index
                .get(a)
                .ok_or_else(|| QuiverError::UnknownSpecialArrow(a.clone()))?;
            if outgoing[vid.index()].is_empty() {
                return Err(QuiverError::SpecialAtSink(v.clone()));
            }
            if arrows[aid.index()].source != vid {
                return Err(QuiverError::SpecialWrongSource {
                    vertex: v.clone(),
                    arrow: a.clone(),
                });
            }
            match special[vid.index()] {
                Some(prev) if prev != aid => return Err(QuiverError::DuplicateSpecial(v.clone())),
                _ => special[vid.index()] = Some(aid),
            }
        }
        for (v, out) in outgoing.iter().enumerate() {
            if special[v].is_none() {
                // outgoing lists are in name order already
                special[v] = out.first().copied();
            }
        }

        Ok(Quiver {
            vertices,
            arrows,
            special,
            outgoing,
            vertex_index,
            arrow_index,
        })
    }

    /// The description this quiver validates from, with every special
    /// arrow spelled out.
    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    (
                        a.name.clone(),
                        self.vertex_name(a.source).to_owned(),
                        self.vertex_name(a.target).to_owned(),
                    )
                })
                .collect(),
            special: self
                .vertex_ids()
                .filter_map(|v| {
                    self.special(v)
                        .map(|a| (self.vertex_name(v).to_owned(), self.arrow(a).name.clone()))
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    /// Arrows starting at `v`, in name order.
    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.index()]
    }

    pub fn class(&self, v: VertexId) -> VertexClass {
        if self.outgoing[v.index()].is_empty() {
            VertexClass::Sink
        } else {
            VertexClass::Regular
        }
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.class(v) == VertexClass::Regular
    }

    pub fn regular_vertices(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_regular(v)).collect()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| !self.is_regular(v)).collect()
    }

    pub fn special(&self, v: VertexId) -> Option<ArrowId> {
        self.special[v.index()]
    }

    pub fn is_special(&self, a: ArrowId) -> bool {
        self.special(self.arrow(a).source) == Some(a)
    }

    pub fn letter_source(&self, l: Letter) -> VertexId {
        let a = self.arrow(l.arrow);
        if l.ghost {
            a.target
        } else {
            a.source
        }
    }

    pub fn letter_target(&self, l: Letter) -> VertexId {
        let a = self.arrow(l.arrow);
        if l.ghost {
            a.source
        } else {
            a.target
        }
    }

    /// Letters of the double quiver: `α` then `α*` for each arrow in name order.
    pub fn double_quiver(&self) -> Vec<Letter> {
        self.arrow_ids()
            .flat_map(|a| [Letter::real(a), Letter::ghost(a)])
            .collect()
    }

    /// True when the quiver has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let mut indegree = vec![0usize; self.vertex_count()];
        for a in &self.arrows {
            indegree[a.target.index()] += 1;
        }
        let mut ready: Vec<VertexId> = self.vertex_ids().filter(|v| indegree[v.index()] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &a in self.outgoing(v) {
                let t = self.arrow(a).target;
                indegree[t.index()] -= 1;
                if indegree[t.index()] == 0 {
                    ready.push(t);
                }
            }
        }
        seen == self.vertex_count()
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source.index()), find(&mut parent, a.target.index()));
            parent[x] = y;
        }
        let mut groups: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
        for v in self.vertex_ids() {
            let r = find(&mut parent, v.index());
            groups.entry(r).or_default().insert(v);
        }
        groups.into_values().collect()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print_quiver(self))
    }
}

/// Standard small quivers.
pub mod families {
    use super::{Quiver, RawQuiver};

    /// One vertex, no arrows.
    pub fn point() -> Quiver {
        RawQuiver::new().vertex("v").validate().unwrap()
    }

    /// One vertex with a single loop `a`.
    pub fn loop_quiver() -> Quiver {
        rose(1)
    }

    /// One vertex `v` with `n` loops named `a`, `b`, `c`, ...
    pub fn rose(n: usize) -> Quiver {
        assert!(n <= 26);
        let mut raw = RawQuiver::new().vertex("v");
        for i in 0..n {
            let name = ((b'a' + i as u8) as char).to_string();
            raw = raw.arrow(&name, "v", "v");
        }
        raw.validate().unwrap()
    }

    /// The linear quiver `v1 -> v2 -> ... -> vn`, arrows `a1, ..., a(n-1)`;
    /// for `n = 2` the single arrow is named `a`.
    pub fn linear(n: usize) -> Quiver {
        assert!((1..=9).contains(&n));
        let mut raw = RawQuiver::new();
        for i in 1..=n {
            raw = raw.vertex(&format!("v{i}"));
        }
        for i in 1..n {
            let name = if n == 2 { "a".to_owned() } else { format!("a{i}") };
            raw = raw.arrow(&name, &format!("v{i}"), &format!("v{}", i + 1));
        }
        raw.validate().unwrap()
    }

    /// Two vertices `u -> w` joined by two parallel arrows `a`, `b`; `w` is a sink.
    pub fn parallel_pair() -> Quiver {
        RawQuiver::new()
            .vertex("u")
            .vertex("w")
            .arrow("a", "u", "w")
            .arrow("b", "u", "w")
            .validate()
            .unwrap()
    }

    /// Two disjoint copies of the A2 quiver.
    pub fn two_linear_pairs() -> Quiver {
        RawQuiver::new()
            .vertex("v1")
            .vertex("v2")
            .vertex("w1")
            .vertex("w2")
            .arrow("a", "v1", "v2")
            .arrow("b", "w1", "w2")
            .validate()
            .unwrap()
    }
}
