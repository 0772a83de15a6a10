//! Right and left word reversing with replayable traces.
//!
//! Right reversing rewrites `s⁻¹t` into `s′·t′⁻¹` whenever `s·s′ ≡ t·t′` is a
//! relation, and deletes `s⁻¹s`. The search is a depth-first exploration of
//! relation choices: at each word, the leftmost `s⁻¹s` is treated first
//! (cancellation explored before any gluing relation), otherwise the leftmost
//! `s⁻¹t`. Words already visited are not expanded twice.
//!
//! Left reversing is obtained by mirroring: it rewrites `t·s⁻¹` into
//! `t′⁻¹·s′` whenever `s′·s ≡ t′·t`.

use std::collections::HashSet;

use crate::presentation::{Orientation, Presentation};
use crate::word::{Alphabet, Letter, PositiveWord, SignedWord};

/// Limits imposed on one reversal search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Total number of words expanded.
    pub max_steps: usize,
    /// Words longer than this are not expanded.
    pub max_word_length: usize,
    /// Number of alternative branches that may be opened.
    pub max_branches: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 100_000, max_word_length: 256, max_branches: 10_000 }
    }
}

impl Budget {
    pub fn with_steps(max_steps: usize) -> Self {
        Budget { max_steps, ..Budget::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Glue { rel: usize, orient: Orientation },
    Cancel,
}

/// One reversing step.
///
/// On the right the subword `s⁻¹·t` starting at `position` becomes
/// `s′·t′⁻¹`, where `replaced = (s, t)` and `inserted = (s′, t′)`. On the left
/// the subword `t·s⁻¹` becomes `t′⁻¹·s′`. A cancel step has `s = t` and both
/// inserted words empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReversalStep {
    pub kind: StepKind,
    pub position: usize,
    pub replaced: (PositiveWord, PositiveWord),
    pub inserted: (PositiveWord, PositiveWord),
}

impl ReversalStep {
    pub fn cancel(position: usize, s: PositiveWord) -> Self {
        ReversalStep {
            kind: StepKind::Cancel,
            position,
            replaced: (s.clone(), s),
            inserted: (PositiveWord::empty(), PositiveWord::empty()),
        }
    }

    pub fn is_glue(&self) -> bool {
        matches!(self.kind, StepKind::Glue { .. })
    }

    fn replaced_len(&self) -> usize {
        self.replaced.0.len() + self.replaced.1.len()
    }

    fn inserted_len(&self) -> usize {
        self.inserted.0.len() + self.inserted.1.len()
    }

    fn mirrored(&self, word_len: usize) -> ReversalStep {
        ReversalStep {
            kind: self.kind,
            position: word_len - self.position - self.replaced_len(),
            replaced: (self.replaced.0.reversed(), self.replaced.1.reversed()),
            inserted: (self.inserted.0.reversed(), self.inserted.1.reversed()),
        }
    }

    /// The step as one line of the trace export.
    pub fn export_line(&self) -> String {
        match self.kind {
            StepKind::Cancel => format!("cancel pos={}", self.position),
            StepKind::Glue { rel, orient } => {
                let (a, b) = (self.replaced.0.len(), self.replaced.1.len());
                let mut line = format!("glue pos={} rel={} orient={}", self.position, rel, orient.symbol());
                if (a, b) != (1, 1) {
                    line.push_str(&format!(" len={a}/{b}"));
                }
                line
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("the pattern does not occur at position {0}")]
    PatternMismatch(usize),
    #[error("unknown relation id {0}")]
    UnknownRelation(usize),
    #[error("relation {0} does not decompose as the step claims")]
    RelationMismatch(usize),
    #[error("step {index} failed: {source}")]
    AtStep { index: usize, source: Box<StepError> },
    #[error("replay ended at a different word")]
    EndMismatch,
}

fn replaced_subword(side: Side, step: &ReversalStep) -> Vec<Letter> {
    let (s, t) = &step.replaced;
    match side {
        Side::Right => s.inverse().concat(&t.to_signed()).0,
        Side::Left => t.to_signed().concat(&s.inverse()).0,
    }
}

fn inserted_subword(side: Side, step: &ReversalStep) -> Vec<Letter> {
    let (s, t) = &step.inserted;
    match side {
        Side::Right => s.to_signed().concat(&t.inverse()).0,
        Side::Left => t.inverse().concat(&s.to_signed()).0,
    }
}

/// Applies one step on the given side, validating it against `p`.
pub fn apply_step(
    p: &Presentation,
    w: &SignedWord,
    side: Side,
    step: &ReversalStep,
) -> Result<SignedWord, StepError> {
    let pattern = replaced_subword(side, step);
    let pos = step.position;
    if pattern.is_empty() || pos + pattern.len() > w.len() || w.0[pos..pos + pattern.len()] != pattern[..] {
        return Err(StepError::PatternMismatch(pos));
    }
    match step.kind {
        StepKind::Cancel => {
            if step.replaced.0 != step.replaced.1 || step.inserted_len() != 0 {
                return Err(StepError::PatternMismatch(pos));
            }
        }
        StepKind::Glue { rel, orient } => {
            let r = p.relation(rel).ok_or(StepError::UnknownRelation(rel))?;
            let (a, b) = r.sides(orient);
            let (s, t) = &step.replaced;
            let (sc, tc) = &step.inserted;
            let (left, right) = match side {
                Side::Right => (s.concat(sc), t.concat(tc)),
                Side::Left => (sc.concat(s), tc.concat(t)),
            };
            if &left != a || &right != b {
                return Err(StepError::RelationMismatch(rel));
            }
        }
    }
    let mut out = w.0[..pos].to_vec();
    out.extend(inserted_subword(side, step));
    out.extend_from_slice(&w.0[pos + pattern.len()..]);
    Ok(SignedWord(out))
}

/// Applies one right-reversing step.
pub fn reverse_step(p: &Presentation, w: &SignedWord, step: &ReversalStep) -> Result<SignedWord, StepError> {
    apply_step(p, w, Side::Right, step)
}

/// Applies one left-reversing step.
pub fn left_reverse_step(p: &Presentation, w: &SignedWord, step: &ReversalStep) -> Result<SignedWord, StepError> {
    apply_step(p, w, Side::Left, step)
}

/// A reversing sequence from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReversalTrace {
    pub side: Side,
    pub start: SignedWord,
    pub steps: Vec<ReversalStep>,
    pub end: SignedWord,
}

impl ReversalTrace {
    pub fn glue_count(&self) -> usize {
        self.steps.iter().filter(|s| s.is_glue()).count()
    }

    pub fn cancel_count(&self) -> usize {
        self.steps.len() - self.glue_count()
    }

    /// Every word along the trace, `start` first.
    pub fn words(&self, p: &Presentation) -> Result<Vec<SignedWord>, StepError> {
        let mut out = vec![self.start.clone()];
        let mut cur = self.start.clone();
        for (index, step) in self.steps.iter().enumerate() {
            cur = apply_step(p, &cur, self.side, step)
                .map_err(|e| StepError::AtStep { index, source: Box::new(e) })?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Replays the steps from `start` and checks that `end` is reached.
    pub fn replay(&self, p: &Presentation) -> Result<SignedWord, StepError> {
        let last = self.words(p)?.pop().expect("at least the start word");
        if last != self.end {
            return Err(StepError::EndMismatch);
        }
        Ok(last)
    }

    /// The same reversal read in the mirror: a right trace over `p` becomes a
    /// left trace over `p.mirror()` of the mirrored word, and back.
    pub fn mirror(&self) -> ReversalTrace {
        let mut len = self.start.len();
        let mut steps = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            steps.push(step.mirrored(len));
            len = len - step.replaced_len() + step.inserted_len();
        }
        ReversalTrace {
            side: match self.side {
                Side::Right => Side::Left,
                Side::Left => Side::Right,
            },
            start: self.start.mirror(),
            steps,
            end: self.end.mirror(),
        }
    }

    /// Groups each gluing step with the cancellations it immediately
    /// triggers one letter to its left, yielding gluing steps on longer
    /// words `u⁻¹v` with `u·u′ ≡ v·v′`.
    pub fn compact(&self) -> ReversalTrace {
        if self.side == Side::Left {
            return self.mirror().compact().mirror();
        }
        let mut steps: Vec<ReversalStep> = Vec::new();
        let mut i = 0;
        while i < self.steps.len() {
            let step = self.steps[i].clone();
            i += 1;
            if !step.is_glue() {
                steps.push(step);
                continue;
            }
            let anchor = step.position;
            let mut merged = step;
            // The inserted block currently occupies [start, start + len).
            let mut start = merged.position;
            while anchor > 0 && i < self.steps.len() {
                let next = &self.steps[i];
                if next.is_glue() || next.position != anchor - 1 {
                    break;
                }
                let s_len = merged.inserted.0.len();
                let t_len = merged.inserted.1.len();
                let end = start + s_len + t_len;
                let letter = next.replaced.0.letters()[0];
                if next.position + 1 == start && s_len > 0 {
                    // x⁻¹ just before the block cancels the first letter of s′.
                    merged.replaced.0 = merged.replaced.0.concat(&PositiveWord(vec![letter]));
                    merged.inserted.0 = PositiveWord(merged.inserted.0.letters()[1..].to_vec());
                    merged.position -= 1;
                    start -= 1;
                } else if next.position + 1 == end && t_len > 0 {
                    // The last letter of t′⁻¹ cancels the x just after the block.
                    merged.replaced.1 = merged.replaced.1.concat(&PositiveWord(vec![letter]));
                    merged.inserted.1 = PositiveWord(merged.inserted.1.letters()[1..].to_vec());
                } else {
                    break;
                }
                i += 1;
            }
            steps.push(merged);
        }
        ReversalTrace { side: self.side, start: self.start.clone(), steps, end: self.end.clone() }
    }

    /// `start:` line, one line per step, `end:` line.
    pub fn export(&self, a: &Alphabet) -> String {
        let mut out = format!("start: {}\n", a.show_signed(&self.start));
        for s in &self.steps {
            out.push_str(&s.export_line());
            out.push('\n');
        }
        out.push_str(&format!("end: {}\n", a.show_signed(&self.end)));
        out
    }
}

/// One distinct result of a reversal search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReversalOutcome {
    Empty(ReversalTrace),
    /// The end word is `u·v⁻¹` (right) or `v⁻¹·u` (left) with `u`, `v`
    /// positive and not both empty.
    Terminal { u: PositiveWord, v: PositiveWord, trace: ReversalTrace },
    /// A pattern is present but no relation applies to it.
    Stuck { word: SignedWord, trace: ReversalTrace },
    BudgetExceeded,
}

impl ReversalOutcome {
    pub fn trace(&self) -> Option<&ReversalTrace> {
        match self {
            ReversalOutcome::Empty(t) => Some(t),
            ReversalOutcome::Terminal { trace, .. } | ReversalOutcome::Stuck { trace, .. } => Some(trace),
            ReversalOutcome::BudgetExceeded => None,
        }
    }

    fn mirrored(self) -> ReversalOutcome {
        match self {
            ReversalOutcome::Empty(t) => ReversalOutcome::Empty(t.mirror()),
            ReversalOutcome::Terminal { u, v, trace } => {
                ReversalOutcome::Terminal { u: u.reversed(), v: v.reversed(), trace: trace.mirror() }
            }
            ReversalOutcome::Stuck { word, trace } => ReversalOutcome::Stuck { word: word.mirror(), trace: trace.mirror() },
            ReversalOutcome::BudgetExceeded => ReversalOutcome::BudgetExceeded,
        }
    }
}

struct Node {
    parent: Option<usize>,
    step: Option<ReversalStep>,
    word: SignedWord,
}

enum Shape {
    Empty,
    Terminal(PositiveWord, PositiveWord),
    Pattern(Vec<ReversalStep>),
}

fn shape(p: &Presentation, w: &SignedWord) -> Shape {
    let l = &w.0;
    if l.is_empty() {
        return Shape::Empty;
    }
    let mut first = None;
    for i in 0..l.len().saturating_sub(1) {
        if l[i].inverse && !l[i + 1].inverse {
            if l[i].gen == l[i + 1].gen {
                let s = l[i].gen;
                let mut opts = vec![ReversalStep::cancel(i, PositiveWord(vec![s]))];
                opts.extend(glue_options(p, i, s, s));
                return Shape::Pattern(opts);
            }
            first.get_or_insert(i);
        }
    }
    match first {
        Some(i) => Shape::Pattern(glue_options(p, i, l[i].gen, l[i + 1].gen).collect()),
        None => {
            let split = l.iter().position(|x| x.inverse).unwrap_or(l.len());
            let u = PositiveWord(l[..split].iter().map(|x| x.gen).collect());
            let v = PositiveWord(l[split..].iter().rev().map(|x| x.gen).collect());
            Shape::Terminal(u, v)
        }
    }
}

fn glue_options(p: &Presentation, pos: usize, s: usize, t: usize) -> impl Iterator<Item = ReversalStep> + '_ {
    p.right_entries(s, t).iter().map(move |e| ReversalStep {
        kind: StepKind::Glue { rel: e.rel, orient: e.orient },
        position: pos,
        replaced: (PositiveWord(vec![s]), PositiveWord(vec![t])),
        inserted: (e.s_comp.clone(), e.t_comp.clone()),
    })
}

fn splice(w: &SignedWord, step: &ReversalStep) -> SignedWord {
    let pos = step.position;
    let mut out = w.0[..pos].to_vec();
    out.extend(inserted_subword(Side::Right, step));
    out.extend_from_slice(&w.0[pos + step.replaced_len()..]);
    SignedWord(out)
}

fn trace_to(nodes: &[Node], mut id: usize) -> ReversalTrace {
    let end = nodes[id].word.clone();
    let mut steps = Vec::new();
    while let Some(parent) = nodes[id].parent {
        steps.push(nodes[id].step.clone().expect("non-root nodes carry a step"));
        id = parent;
    }
    steps.reverse();
    ReversalTrace { side: Side::Right, start: nodes[id].word.clone(), steps, end }
}

fn search(p: &Presentation, w: &SignedWord, budget: &Budget, stop_at_empty: bool) -> (Vec<ReversalOutcome>, usize) {
    let mut nodes = vec![Node { parent: None, step: None, word: w.clone() }];
    let mut stack = vec![0usize];
    let mut visited: HashSet<SignedWord> = HashSet::new();
    let mut seen_terminal: HashSet<(PositiveWord, PositiveWord)> = HashSet::new();
    let mut outcomes = Vec::new();
    let mut expanded = 0usize;
    let mut branches = 0usize;
    let mut exceeded = false;

    while let Some(id) = stack.pop() {
        if !visited.insert(nodes[id].word.clone()) {
            continue;
        }
        if expanded >= budget.max_steps {
            exceeded = true;
            break;
        }
        expanded += 1;
        match shape(p, &nodes[id].word) {
            Shape::Empty => {
                outcomes.push(ReversalOutcome::Empty(trace_to(&nodes, id)));
                if stop_at_empty {
                    return (outcomes, expanded);
                }
            }
            Shape::Terminal(u, v) => {
                if seen_terminal.insert((u.clone(), v.clone())) {
                    outcomes.push(ReversalOutcome::Terminal { u, v, trace: trace_to(&nodes, id) });
                }
            }
            Shape::Pattern(opts) if opts.is_empty() => {
                outcomes.push(ReversalOutcome::Stuck { word: nodes[id].word.clone(), trace: trace_to(&nodes, id) });
            }
            Shape::Pattern(mut opts) => {
                let extra = opts.len() - 1;
                if branches + extra > budget.max_branches {
                    exceeded = true;
                    opts.truncate(1 + budget.max_branches - branches);
                }
                branches += opts.len() - 1;
                for step in opts.into_iter().rev() {
                    let next = splice(&nodes[id].word, &step);
                    if next.len() > budget.max_word_length {
                        exceeded = true;
                        continue;
                    }
                    if visited.contains(&next) {
                        continue;
                    }
                    nodes.push(Node { parent: Some(id), step: Some(step), word: next });
                    stack.push(nodes.len() - 1);
                }
            }
        }
    }
    if exceeded {
        outcomes.push(ReversalOutcome::BudgetExceeded);
    }
    (outcomes, expanded)
}

/// All distinct outcomes of right reversing `w`, in discovery order, with a
/// trailing `BudgetExceeded` when some part of the search was cut off.
pub fn reverse_all(p: &Presentation, w: &SignedWord, budget: &Budget) -> Vec<ReversalOutcome> {
    search(p, w, budget, false).0
}

/// [`reverse_all`] together with the number of words expanded.
pub fn reverse_all_counted(p: &Presentation, w: &SignedWord, budget: &Budget) -> (Vec<ReversalOutcome>, usize) {
    search(p, w, budget, false)
}

/// The mirror of [`reverse_all`]: left reversing of `w` over `p`.
pub fn left_reverse_all(p: &Presentation, w: &SignedWord, budget: &Budget) -> Vec<ReversalOutcome> {
    search(&p.mirror(), &w.mirror(), budget, false)
        .0
        .into_iter()
        .map(ReversalOutcome::mirrored)
        .collect()
}

/// Answer of an emptiness query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmptyCheck {
    Yes(ReversalTrace),
    No,
    Unknown,
}

impl EmptyCheck {
    pub fn truth(&self) -> crate::Truth {
        match self {
            EmptyCheck::Yes(_) => crate::Truth::Yes,
            EmptyCheck::No => crate::Truth::No,
            EmptyCheck::Unknown => crate::Truth::Unknown,
        }
    }
}

fn empty_check(outcomes: Vec<ReversalOutcome>) -> EmptyCheck {
    let mut exceeded = false;
    for o in outcomes {
        match o {
            ReversalOutcome::Empty(t) => return EmptyCheck::Yes(t),
            ReversalOutcome::BudgetExceeded => exceeded = true,
            _ => {}
        }
    }
    if exceeded {
        EmptyCheck::Unknown
    } else {
        EmptyCheck::No
    }
}

/// Whether `u⁻¹v` right-reverses to ε.
pub fn reverses_to_empty(p: &Presentation, u: &PositiveWord, v: &PositiveWord, budget: &Budget) -> EmptyCheck {
    reverses_to_empty_counted(p, u, v, budget).0
}

/// [`reverses_to_empty`] together with the number of words expanded.
pub fn reverses_to_empty_counted(
    p: &Presentation,
    u: &PositiveWord,
    v: &PositiveWord,
    budget: &Budget,
) -> (EmptyCheck, usize) {
    let w = u.inverse().concat(&v.to_signed());
    let (outcomes, expanded) = search(p, &w, budget, true);
    (empty_check(outcomes), expanded)
}

/// Whether `u·v⁻¹` left-reverses to ε.
pub fn left_reverses_to_empty(p: &Presentation, u: &PositiveWord, v: &PositiveWord, budget: &Budget) -> EmptyCheck {
    let w = u.to_signed().concat(&v.inverse());
    match empty_check(search(&p.mirror(), &w.mirror(), budget, true).0) {
        EmptyCheck::Yes(t) => EmptyCheck::Yes(t.mirror()),
        other => other,
    }
}
