//! Van Kampen diagrams read off reversal traces, and the rewriting sequences
//! obtained by sweeping them face by face.

use std::fmt::Write as _;

use crate::presentation::{Orientation, Presentation};
use crate::reversing::{ReversalTrace, Side, StepError, StepKind};
use crate::word::{Alphabet, Gen, PositiveWord, SignedWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub gen: Gen,
}

/// A 2-cell. Both sides run from the same vertex to the same vertex;
/// `lower` spells the relation side read first in `orient`, `upper` the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rel: usize,
    pub orient: Orientation,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanKampenDiagram {
    pub vertex_count: usize,
    pub source: usize,
    pub sink: usize,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// Edge path spelling the first boundary word.
    pub top: Vec<usize>,
    /// Edge path spelling the second boundary word.
    pub bottom: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("the trace does not end at the empty word")]
    NotEmpty,
    #[error("the trace does not start at the expected word")]
    StartMismatch,
    #[error("the trace does not end at the expected word")]
    EndMismatch,
    #[error("only right reversal traces can be drawn")]
    LeftTrace,
    #[error("invalid trace: {0}")]
    Trace(#[from] StepError),
    #[error("no face can be crossed from the current path")]
    SweepStuck,
    #[error("sequences do not meet: {0:?} then {1:?}")]
    EndpointMismatch(PositiveWord, PositiveWord),
}

/// One relation applied at one offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewritingStep {
    pub offset: usize,
    pub rel: usize,
    /// `Forward` rewrites an occurrence of `lhs` into `rhs`.
    pub orient: Orientation,
    pub before: PositiveWord,
    pub after: PositiveWord,
}

impl RewritingStep {
    /// Checks that `after` is `before` with the relation applied at `offset`.
    pub fn verify(&self, p: &Presentation) -> bool {
        let Some(rel) = p.relation(self.rel) else { return false };
        let (from, to) = rel.sides(self.orient);
        let (b, o) = (self.before.letters(), self.offset);
        if o + from.len() > b.len() || &b[o..o + from.len()] != from.letters() {
            return false;
        }
        let mut expect = b[..o].to_vec();
        expect.extend_from_slice(to.letters());
        expect.extend_from_slice(&b[o + from.len()..]);
        expect == self.after.letters()
    }

    pub fn export(&self, k: usize, a: &Alphabet) -> String {
        format!(
            "step {k}: offset={} rel={} {} -> {}",
            self.offset,
            self.rel,
            a.show_positive(&self.before),
            a.show_positive(&self.after)
        )
    }
}

struct Builder {
    parent: Vec<usize>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    /// Current path: vertices and the edge between consecutive vertices.
    verts: Vec<usize>,
    path_edges: Vec<usize>,
}

impl Builder {
    fn start(w: &SignedWord) -> Self {
        let n = w.len();
        let mut b = Builder { parent: (0..=n).collect(), edges: Vec::new(), faces: Vec::new(), verts: (0..=n).collect(), path_edges: Vec::new() };
        for (k, l) in w.letters().iter().enumerate() {
            let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
            b.edges.push(Edge { from, to, gen: l.gen });
            b.path_edges.push(k);
        }
        b
    }

    fn vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    /// A fresh path spelling `w` from `from`; returns (vertices after
    /// `from`, edge ids). The last vertex is `end` when given.
    fn new_path(&mut self, from: usize, w: &PositiveWord, end: Option<usize>) -> (Vec<usize>, Vec<usize>) {
        let (mut vs, mut es) = (Vec::new(), Vec::new());
        let mut cur = from;
        for (k, &g) in w.letters().iter().enumerate() {
            let next = match end {
                Some(e) if k + 1 == w.len() => e,
                _ => self.vertex(),
            };
            self.edges.push(Edge { from: cur, to: next, gen: g });
            es.push(self.edges.len() - 1);
            vs.push(next);
            cur = next;
        }
        (vs, es)
    }

    fn apply(&mut self, step: &crate::reversing::ReversalStep) {
        let k = step.position;
        let (s, t) = &step.replaced;
        let (ls, lt) = (s.len(), t.len());
        let p = self.verts[k];
        let q = self.verts[k + ls + lt];
        match step.kind {
            StepKind::Cancel => {
                for j in 0..ls {
                    let (a, b) = (self.verts[k + j], self.verts[k + ls + lt - j]);
                    self.union(a, b);
                }
                self.verts.drain(k + 1..=k + ls + lt);
                self.path_edges.drain(k..k + ls + lt);
            }
            StepKind::Glue { rel, orient } => {
                let (sc, tc) = &step.inserted;
                let mut lower: Vec<usize> = self.path_edges[k..k + ls].iter().rev().copied().collect();
                let mut upper: Vec<usize> = self.path_edges[k + ls..k + ls + lt].to_vec();
                let (mid_v, mid_e) = match (sc.is_empty(), tc.is_empty()) {
                    (true, true) => {
                        self.union(p, q);
                        (vec![], vec![])
                    }
                    (true, false) => {
                        let (vs, es) = self.new_path(q, tc, Some(p));
                        upper.extend(&es);
                        let mut rv: Vec<usize> = vs[..vs.len() - 1].iter().rev().copied().collect();
                        rv.push(q);
                        (rv, es.into_iter().rev().collect())
                    }
                    (false, true) => {
                        let (vs, es) = self.new_path(p, sc, Some(q));
                        lower.extend(&es);
                        (vs, es)
                    }
                    (false, false) => {
                        let (vs, es) = self.new_path(p, sc, None);
                        let y = *vs.last().expect("non-empty");
                        let (ws, fs) = self.new_path(q, tc, Some(y));
                        lower.extend(&es);
                        upper.extend(&fs);
                        let mut verts = vs;
                        verts.extend(ws[..ws.len() - 1].iter().rev());
                        verts.push(q);
                        let mut edges = es;
                        edges.extend(fs.iter().rev());
                        (verts, edges)
                    }
                };
                self.faces.push(Face { rel, orient, lower, upper });
                let mut verts = self.verts[..=k].to_vec();
                verts.extend(&mid_v);
                verts.extend_from_slice(&self.verts[k + ls + lt + 1..]);
                self.verts = verts;
                let mut pe = self.path_edges[..k].to_vec();
                pe.extend(mid_e);
                pe.extend_from_slice(&self.path_edges[k + ls + lt..]);
                self.path_edges = pe;
            }
        }
    }

    fn finish(mut self, top: Vec<usize>, bottom: Vec<usize>, source: usize, sink: usize) -> VanKampenDiagram {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut index = vec![usize::MAX; n];
        let mut count = 0;
        for &r in &roots {
            if index[r] == usize::MAX {
                index[r] = count;
                count += 1;
            }
        }
        let vid = |v: usize| index[roots[v]];
        let mut edges: Vec<Edge> = Vec::new();
        let mut edge_map = vec![0usize; self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            let c = Edge { from: vid(e.from), to: vid(e.to), gen: e.gen };
            edge_map[i] = match edges.iter().position(|x| *x == c) {
                Some(j) => j,
                None => {
                    edges.push(c);
                    edges.len() - 1
                }
            };
        }
        let remap = |v: &[usize]| v.iter().map(|&e| edge_map[e]).collect::<Vec<_>>();
        let faces = self
            .faces
            .iter()
            .map(|f| Face { rel: f.rel, orient: f.orient, lower: remap(&f.lower), upper: remap(&f.upper) })
            .collect();
        VanKampenDiagram {
            vertex_count: count,
            source: vid(source),
            sink: vid(sink),
            edges,
            faces,
            top: remap(&top),
            bottom: remap(&bottom),
        }
    }
}

fn check_trace(p: &Presentation, trace: &ReversalTrace) -> Result<(), DiagramError> {
    if trace.side != Side::Right {
        return Err(DiagramError::LeftTrace);
    }
    trace.replay(p)?;
    Ok(())
}

/// The diagram of a trace certifying `u⁻¹v ↷ ε`, with top boundary `u` and
/// bottom boundary `v`.
pub fn build_diagram(
    p: &Presentation,
    trace: &ReversalTrace,
    u: &PositiveWord,
    v: &PositiveWord,
) -> Result<VanKampenDiagram, DiagramError> {
    if trace.start != u.inverse().concat(&v.to_signed()) {
        return Err(DiagramError::StartMismatch);
    }
    if !trace.end.is_empty() {
        return Err(DiagramError::NotEmpty);
    }
    check_trace(p, trace)?;
    let mut b = Builder::start(&trace.start);
    let top: Vec<usize> = (0..u.len()).rev().collect();
    let bottom: Vec<usize> = (u.len()..u.len() + v.len()).collect();
    for step in &trace.steps {
        b.apply(step);
    }
    let sink = b.verts[0];
    Ok(b.finish(top, bottom, u.len(), sink))
}

/// The diagram of a trace from `s⁻¹·r·r⁻¹·t` to `u·v⁻¹`, with top boundary
/// `s·u` and bottom boundary `t·v`. The two tails of the `r` edges are the
/// same vertex.
pub fn build_cube_diagram(
    p: &Presentation,
    trace: &ReversalTrace,
    s: Gen,
    r: Gen,
    t: Gen,
    u: &PositiveWord,
    v: &PositiveWord,
) -> Result<VanKampenDiagram, DiagramError> {
    let start = SignedWord(vec![
        crate::word::Letter::neg(s),
        crate::word::Letter::pos(r),
        crate::word::Letter::neg(r),
        crate::word::Letter::pos(t),
    ]);
    if trace.start != start {
        return Err(DiagramError::StartMismatch);
    }
    if trace.end != u.to_signed().concat(&v.inverse()) {
        return Err(DiagramError::EndMismatch);
    }
    check_trace(p, trace)?;
    let mut b = Builder::start(&start);
    b.union(1, 3);
    for step in &trace.steps {
        b.apply(step);
    }
    let mut top = vec![0];
    top.extend_from_slice(&b.path_edges[..u.len()]);
    let mut bottom = vec![3];
    bottom.extend(b.path_edges[u.len()..].iter().rev());
    let sink = b.verts[u.len()];
    Ok(b.finish(top, bottom, 1, sink))
}

impl VanKampenDiagram {
    pub fn spell(&self, path: &[usize]) -> PositiveWord {
        PositiveWord(path.iter().map(|&e| self.edges[e].gen).collect())
    }

    pub fn top_word(&self) -> PositiveWord {
        self.spell(&self.top)
    }

    pub fn bottom_word(&self) -> PositiveWord {
        self.spell(&self.bottom)
    }

    /// Checks that every face boundary spells its relation.
    pub fn verify(&self, p: &Presentation) -> bool {
        self.faces.iter().all(|f| {
            let Some(rel) = p.relation(f.rel) else { return false };
            let (a, b) = rel.sides(f.orient);
            let ends = |path: &[usize]| (self.edges[path[0]].from, self.edges[path[path.len() - 1]].to);
            self.spell(&f.lower) == *a
                && self.spell(&f.upper) == *b
                && ends(&f.lower) == ends(&f.upper)
                && connected(self, &f.lower)
                && connected(self, &f.upper)
        }) && connected(self, &self.top)
            && connected(self, &self.bottom)
    }

    pub fn export(&self, a: &Alphabet) -> String {
        let mut out = String::new();
        for (i, f) in self.faces.iter().enumerate() {
            let boundary = self.spell(&f.lower).inverse().concat(&self.spell(&f.upper).to_signed());
            let _ = writeln!(out, "face {i}: rel={} boundary={}", f.rel, a.show_signed(&boundary));
        }
        out
    }
}

fn connected(d: &VanKampenDiagram, path: &[usize]) -> bool {
    path.windows(2).all(|w| d.edges[w[0]].to == d.edges[w[1]].from)
}

/// Sweeps from the top boundary to the bottom one, crossing at each step the
/// earliest face whose lower side lies on the current path.
pub fn extract_rewriting_sequence(d: &VanKampenDiagram) -> Result<Vec<RewritingStep>, DiagramError> {
    let mut path = d.top.clone();
    let mut used = vec![false; d.faces.len()];
    let mut out = Vec::new();
    while path != d.bottom {
        let found = d.faces.iter().enumerate().find_map(|(i, f)| {
            if used[i] || f.lower.len() > path.len() {
                return None;
            }
            (0..=path.len() - f.lower.len()).find(|&o| path[o..o + f.lower.len()] == f.lower[..]).map(|o| (i, o))
        });
        let Some((i, o)) = found else {
            if d.spell(&path) == d.bottom_word() {
                break;
            }
            return Err(DiagramError::SweepStuck);
        };
        used[i] = true;
        let f = &d.faces[i];
        let before = d.spell(&path);
        let mut next = path[..o].to_vec();
        next.extend_from_slice(&f.upper);
        next.extend_from_slice(&path[o + f.lower.len()..]);
        path = next;
        out.push(RewritingStep { offset: o, rel: f.rel, orient: f.orient, before, after: d.spell(&path) });
    }
    Ok(out)
}

/// Concatenates two rewriting sequences that meet.
pub fn splice_sequences(left: &[RewritingStep], right: &[RewritingStep]) -> Result<Vec<RewritingStep>, DiagramError> {
    if let (Some(a), Some(b)) = (left.last(), right.first()) {
        if a.after != b.before {
            return Err(DiagramError::EndpointMismatch(a.after.clone(), b.before.clone()));
        }
    }
    Ok(left.iter().chain(right).cloned().collect())
}

/// Applies a rewriting sequence to `start`, checking every step.
pub fn replay_sequence(p: &Presentation, start: &PositiveWord, seq: &[RewritingStep]) -> Option<PositiveWord> {
    let mut cur = start.clone();
    for step in seq {
        if step.before != cur || !step.verify(p) {
            return None;
        }
        cur = step.after.clone();
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;
    use crate::reversing::{reverses_to_empty, Budget, EmptyCheck};

    fn w(s: &str) -> PositiveWord {
        PositiveWord(s.bytes().map(|b| (b - b'x') as usize).collect())
    }

    fn p1() -> Presentation {
        parse_presentation("gens: x y z\nrel: x y x = y x y\nrel: x y = y z = z x").unwrap()
    }

    fn diagram(p: &Presentation, u: &str, v: &str) -> VanKampenDiagram {
        let EmptyCheck::Yes(t) = reverses_to_empty(p, &w(u), &w(v), &Budget::default()) else { panic!() };
        build_diagram(p, &t, &w(u), &w(v)).unwrap()
    }

    #[test]
    fn worked_example_sequence() {
        let p = p1();
        let d = diagram(&p, "xxyx", "zxyz");
        assert_eq!(d.faces.len(), 3);
        assert!(d.verify(&p));
        assert_eq!(d.top_word(), w("xxyx"));
        assert_eq!(d.bottom_word(), w("zxyz"));
        let seq = extract_rewriting_sequence(&d).unwrap();
        let words: Vec<PositiveWord> = std::iter::once(seq[0].before.clone()).chain(seq.iter().map(|s| s.after.clone())).collect();
        assert_eq!(words, vec![w("xxyx"), w("xyxy"), w("zxxy"), w("zxyz")]);
        assert!(seq.iter().all(|s| s.verify(&p)));
        assert_eq!(seq.iter().map(|s| s.offset).collect::<Vec<_>>(), vec![1, 0, 2]);
    }

    #[test]
    fn trivial_and_single_face() {
        let p = p1();
        let d = diagram(&p, "x", "x");
        assert_eq!((d.faces.len(), d.edges.len()), (0, 1));
        assert!(extract_rewriting_sequence(&d).unwrap().is_empty());
        let d = diagram(&p, "xy", "yz");
        assert_eq!(d.faces.len(), 1);
        let seq = extract_rewriting_sequence(&d).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!((seq[0].offset, seq[0].rel, seq[0].orient), (0, 1, Orientation::Forward));
        assert_ne!(d.source, d.sink);
    }

    #[test]
    fn splicing() {
        let p = p1();
        let a = extract_rewriting_sequence(&diagram(&p, "xy", "yz")).unwrap();
        let b = extract_rewriting_sequence(&diagram(&p, "yz", "zx")).unwrap();
        let joined = splice_sequences(&a, &b).unwrap();
        assert_eq!(replay_sequence(&p, &w("xy"), &joined), Some(w("zx")));
        assert_eq!(splice_sequences(&[], &b).unwrap(), b);
        assert!(matches!(splice_sequences(&b, &b), Err(DiagramError::EndpointMismatch(..))));
    }

    #[test]
    fn rejects_non_empty_traces() {
        let p = p1();
        let EmptyCheck::Yes(t) = reverses_to_empty(&p, &w("xy"), &w("yz"), &Budget::default()) else { panic!() };
        assert_eq!(build_diagram(&p, &t, &w("xy"), &w("zx")), Err(DiagramError::StartMismatch));
    }
}
