//! The strong cube condition and the completion procedures built on it.
//!
//! A failure is a triple `s, r, t` of generators together with a terminal
//! form `u·v⁻¹` of `s⁻¹·r·r⁻¹·t` for which `(su)⁻¹(tv)` does not reverse to
//! ε. Standard completion adds `su ≡ tv`. The Hurwitz-aware variant adds
//! `u ≡ v` instead when `s = t` and `u ≡ v` is a word-conjugacy relation,
//! and attaches a braid witness to every relation it adds otherwise.

use crate::backends::GroupBackend;
use crate::braid::BraidWord;
use crate::diagram::{build_cube_diagram, extract_rewriting_sequence};
use crate::hurwitz::{braid_for_relation, braid_for_rewriting_sequence, verify_braid, GSystem, Interpretation};
use crate::presentation::{word_conjugacy, Orientation, Presentation, Relation};
use crate::reversing::{reverse_all_counted, reverses_to_empty_counted, Budget, EmptyCheck, ReversalOutcome, ReversalTrace};
use crate::word::{Gen, Letter, PositiveWord, SignedWord};
use crate::Truth;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionBudget {
    /// Budget for each individual reversal.
    pub reversal: Budget,
    /// Total words expanded across all reversals of one run.
    pub total_steps: usize,
    /// Number of relations that may be added.
    pub max_rounds: usize,
    /// Add a relation for every failure found in a sweep before sweeping
    /// again, instead of restarting after the first one.
    pub batch: bool,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget {
            reversal: Budget { max_steps: 20_000, ..Budget::default() },
            total_steps: 2_000_000,
            max_rounds: 500,
            batch: false,
        }
    }
}

impl CompletionBudget {
    pub fn with_total_steps(total_steps: usize) -> Self {
        CompletionBudget { total_steps, ..CompletionBudget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeFailure {
    pub s: Gen,
    pub r: Gen,
    pub t: Gen,
    pub u: PositiveWord,
    pub v: PositiveWord,
    /// Trace of `s⁻¹·r·r⁻¹·t` ending at `u·v⁻¹`.
    pub evidence: ReversalTrace,
    /// The check of `(su)⁻¹(tv)` ran out of budget rather than failing.
    pub unknown: bool,
}

impl CubeFailure {
    pub fn su(&self) -> PositiveWord {
        self.u.prepend(self.s)
    }

    pub fn tv(&self) -> PositiveWord {
        self.v.prepend(self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeReport {
    pub failures: Vec<CubeFailure>,
    /// Some `s⁻¹rr⁻¹t` could not be fully enumerated.
    pub incomplete: bool,
    pub steps: usize,
}

impl CubeReport {
    pub fn verdict(&self) -> Truth {
        if self.failures.iter().any(|f| !f.unknown) {
            Truth::No
        } else if self.incomplete || !self.failures.is_empty() {
            Truth::Unknown
        } else {
            Truth::Yes
        }
    }
}

fn cube_word(s: Gen, r: Gen, t: Gen) -> SignedWord {
    SignedWord(vec![Letter::neg(s), Letter::pos(r), Letter::neg(r), Letter::pos(t)])
}

/// Terminal forms of `s⁻¹rr⁻¹t`, sorted, with an incompleteness flag.
fn cube_terminals(
    p: &Presentation,
    s: Gen,
    r: Gen,
    t: Gen,
    budget: &Budget,
) -> (Vec<(PositiveWord, PositiveWord, ReversalTrace)>, bool, usize) {
    let (outcomes, steps) = reverse_all_counted(p, &cube_word(s, r, t), budget);
    let mut incomplete = false;
    let mut terms = Vec::new();
    for o in outcomes {
        match o {
            ReversalOutcome::Terminal { u, v, trace } => terms.push((u, v, trace)),
            ReversalOutcome::BudgetExceeded => incomplete = true,
            _ => {}
        }
    }
    terms.sort_by(|a, b| a.0.shortlex_cmp(&b.0).then_with(|| a.1.shortlex_cmp(&b.1)));
    (terms, incomplete, steps)
}

/// All cube failures, triples in generator order.
pub fn cube_failures(p: &Presentation, budget: &Budget) -> CubeReport {
    let mut report = CubeReport { failures: Vec::new(), incomplete: false, steps: 0 };
    let m = p.generator_count();
    for s in 0..m {
        for r in 0..m {
            for t in 0..m {
                let (terms, incomplete, steps) = cube_terminals(p, s, r, t, budget);
                report.incomplete |= incomplete;
                report.steps += steps;
                for (u, v, evidence) in terms {
                    let (check, steps) = reverses_to_empty_counted(p, &u.prepend(s), &v.prepend(t), budget);
                    report.steps += steps;
                    match check {
                        EmptyCheck::Yes(_) => {}
                        EmptyCheck::No => report.failures.push(CubeFailure { s, r, t, u, v, evidence, unknown: false }),
                        EmptyCheck::Unknown => report.failures.push(CubeFailure { s, r, t, u, v, evidence, unknown: true }),
                    }
                }
            }
        }
    }
    report
}

/// Right completeness by the strong cube condition.
pub fn is_complete(p: &Presentation, budget: &Budget) -> Truth {
    cube_failures(p, budget).verdict()
}

/// Left completeness, checked on the mirrored presentation.
pub fn is_left_complete(p: &Presentation, budget: &Budget) -> Truth {
    is_complete(&p.mirror(), budget)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("diagram: {0}")]
    Diagram(#[from] crate::diagram::DiagramError),
    #[error("braid: {0}")]
    Hurwitz(#[from] crate::hurwitz::HurwitzError),
    #[error("the rewriting sequence does not reach the target word")]
    WrongEnd,
    #[error("the backend rejects the witness")]
    Rejected,
}

/// A braid carrying the letters of `su` to the letters of `tv`, read off the
/// diagram of the failure's evidence trace.
pub fn derive_witness(p: &Presentation, f: &CubeFailure) -> Result<BraidWord, WitnessError> {
    let d = build_cube_diagram(p, &f.evidence, f.s, f.r, f.t, &f.u, &f.v)?;
    let seq = extract_rewriting_sequence(&d)?;
    let end = seq.last().map(|s| s.after.clone()).unwrap_or_else(|| f.su());
    if end != f.tv() {
        return Err(WitnessError::WrongEnd);
    }
    Ok(braid_for_rewriting_sequence(&seq, f.u.len() + 1, p)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivergeReason {
    IterationCap,
    StepCap,
    /// Some failure would have needed a relation longer than the cap.
    RelationLengthCap,
    /// Some failures could not be decided within the per-reversal budget.
    ReversalBudget,
    WitnessUnavailable(String),
}

impl DivergeReason {
    pub fn describe(&self) -> String {
        match self {
            DivergeReason::IterationCap => "iteration cap".into(),
            DivergeReason::StepCap => "step cap".into(),
            DivergeReason::RelationLengthCap => "relation length cap".into(),
            DivergeReason::ReversalBudget => "reversal budget".into(),
            DivergeReason::WitnessUnavailable(e) => format!("witness unavailable: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionResult {
    Completed { presentation: Presentation, added: Vec<Relation> },
    Diverged { presentation: Presentation, added: Vec<Relation>, reason: DivergeReason },
}

impl CompletionResult {
    pub fn presentation(&self) -> &Presentation {
        match self {
            CompletionResult::Completed { presentation, .. } | CompletionResult::Diverged { presentation, .. } => {
                presentation
            }
        }
    }

    pub fn added(&self) -> &[Relation] {
        match self {
            CompletionResult::Completed { added, .. } | CompletionResult::Diverged { added, .. } => added,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, CompletionResult::Completed { .. })
    }
}

/// Options of the Hurwitz-aware completion.
#[derive(Clone, Copy, Default)]
pub struct HurwitzOptions<'a> {
    /// Relations longer than this are never added.
    pub max_relation_length: Option<usize>,
    /// When set, every derived witness is checked under the backend, reading
    /// generators through the interpretation.
    pub verify: Option<(&'a dyn GroupBackend, &'a Interpretation)>,
}

enum Mode<'a> {
    Standard,
    Hurwitz(HurwitzOptions<'a>),
}

/// Adds `su ≡ tv` for the first definite cube failure and starts over,
/// until a sweep finds none. With [`CompletionBudget::batch`] set, one sweep
/// adds a relation for every failure of the presentation it started from.
pub fn complete(p: &Presentation, budget: &CompletionBudget) -> CompletionResult {
    run(p, budget, Mode::Standard)
}

/// The completion that keeps every relation Hurwitz-compatible.
pub fn complete_hurwitz(p: &Presentation, budget: &CompletionBudget, options: HurwitzOptions<'_>) -> CompletionResult {
    run(p, budget, Mode::Hurwitz(options))
}

enum Scan {
    Added,
    Exhausted { unknown: bool, skipped: bool },
    Stop(DivergeReason),
}

fn run(p: &Presentation, budget: &CompletionBudget, mode: Mode<'_>) -> CompletionResult {
    let mut cur = p.clone();
    let mut added = Vec::new();
    let mut steps = 0usize;
    loop {
        let stop = match scan(&mut cur, &mut added, &mut steps, budget, &mode) {
            Scan::Added if added.len() >= budget.max_rounds => {
                if scan_is_clean(&cur, budget) {
                    None
                } else {
                    Some(DivergeReason::IterationCap)
                }
            }
            Scan::Added => continue,
            Scan::Exhausted { unknown: false, skipped: false } => None,
            Scan::Exhausted { unknown: true, .. } => Some(DivergeReason::ReversalBudget),
            Scan::Exhausted { skipped: true, .. } => Some(DivergeReason::RelationLengthCap),
            Scan::Stop(reason) => Some(reason),
        };
        return match stop {
            None => CompletionResult::Completed { presentation: cur, added },
            Some(reason) => CompletionResult::Diverged { presentation: cur, added, reason },
        };
    }
}

fn scan_is_clean(p: &Presentation, budget: &CompletionBudget) -> bool {
    cube_failures(p, &budget.reversal).verdict() == Truth::Yes
}

/// The per-reversal budget, shrunk to what is left of the total.
fn remaining(budget: &CompletionBudget, used: usize) -> Budget {
    let left = budget.total_steps.saturating_sub(used).max(1);
    Budget { max_steps: budget.reversal.max_steps.min(left), ..budget.reversal }
}

fn scan(
    p: &mut Presentation,
    added: &mut Vec<Relation>,
    steps: &mut usize,
    budget: &CompletionBudget,
    mode: &Mode<'_>,
) -> Scan {
    let m = p.generator_count();
    let snapshot = p.clone();
    let (mut unknown, mut skipped, mut grew) = (false, false, false);
    for s in 0..m {
        for r in 0..m {
            for t in 0..m {
                let local = remaining(budget, *steps);
                let (terms, incomplete, used) = cube_terminals(&snapshot, s, r, t, &local);
                *steps += used;
                unknown |= incomplete;
                if *steps > budget.total_steps {
                    return Scan::Stop(DivergeReason::StepCap);
                }
                for (u, v, evidence) in terms {
                    let (check, used) =
                        reverses_to_empty_counted(&snapshot, &u.prepend(s), &v.prepend(t), &remaining(budget, *steps));
                    *steps += used;
                    if *steps > budget.total_steps {
                        return Scan::Stop(DivergeReason::StepCap);
                    }
                    match check {
                        EmptyCheck::Yes(_) => continue,
                        EmptyCheck::Unknown => {
                            unknown = true;
                            continue;
                        }
                        EmptyCheck::No => {}
                    }
                    let failure = CubeFailure { s, r, t, u, v, evidence, unknown: false };
                    match add_for(p, &failure, mode) {
                        Ok(Some(rel)) => {
                            added.push(rel);
                            grew = true;
                            if !budget.batch || added.len() >= budget.max_rounds {
                                return Scan::Added;
                            }
                        }
                        Ok(None) => skipped = true,
                        Err(reason) => return Scan::Stop(reason),
                    }
                }
            }
        }
    }
    if grew {
        Scan::Added
    } else {
        Scan::Exhausted { unknown, skipped }
    }
}

/// Adds the relation a failure calls for; `Ok(None)` when it is skipped.
fn add_for(p: &mut Presentation, f: &CubeFailure, mode: &Mode<'_>) -> Result<Option<Relation>, DivergeReason> {
    let (su, tv) = (f.su(), f.tv());
    let (lhs, rhs, witness) = match mode {
        Mode::Standard => (su, tv, None),
        Mode::Hurwitz(opts) => {
            let reduced = f.s == f.t && !f.u.is_empty() && word_conjugacy(&f.u, &f.v).is_some();
            let (lhs, rhs) = if reduced { (f.u.clone(), f.v.clone()) } else { (su, tv) };
            if opts.max_relation_length.is_some_and(|cap| lhs.len().max(rhs.len()) > cap) {
                return Ok(None);
            }
            let witness = if reduced {
                None
            } else {
                let w = derive_witness(p, f).map_err(|e| DivergeReason::WitnessUnavailable(e.to_string()))?;
                if let Some((backend, interp)) = opts.verify {
                    let from = GSystem::new(lhs.letters().iter().map(|&g| interp.word(&SignedWord::gen(g))).collect());
                    let to = GSystem::new(rhs.letters().iter().map(|&g| interp.word(&SignedWord::gen(g))).collect());
                    match verify_braid(backend, &from, &w, &to) {
                        Ok(Truth::No) | Err(_) => {
                            return Err(DivergeReason::WitnessUnavailable(WitnessError::Rejected.to_string()))
                        }
                        _ => {}
                    }
                }
                Some(w)
            };
            (lhs, rhs, witness)
        }
    };
    match p.add_relation(lhs, rhs, witness) {
        Ok(Some(id)) => {
            close_class(p, id, matches!(mode, Mode::Hurwitz(_)));
            Ok(p.relation(id).cloned())
        }
        Ok(None) => Ok(None),
        Err(e) => Err(DivergeReason::WitnessUnavailable(e.to_string())),
    }
}

/// Relations sharing a side form a chain `a ≡ b ≡ c`; adds the implied
/// relations between the remaining pairs of the chain containing `id`.
/// In Hurwitz mode an implied relation is only added when it is
/// word-conjugacy or a witness can be composed from the chain.
fn close_class(p: &mut Presentation, id: usize, hurwitz: bool) {
    let mut pending = vec![id];
    while let Some(id) = pending.pop() {
        let new = p.relation(id).cloned().expect("just added");
        let others: Vec<Relation> = p.relations().iter().filter(|r| r.id != id).cloned().collect();
        for old in others {
            for (via_new, new_end) in [(&new.lhs, Orientation::Forward), (&new.rhs, Orientation::Backward)] {
                for old_orient in [Orientation::Forward, Orientation::Backward] {
                    let (start, mid) = old.sides(old_orient);
                    if mid != via_new || start == new.sides(new_end).1 {
                        continue;
                    }
                    let end = new.sides(new_end).1.clone();
                    let start = start.clone();
                    if p.find_relation(&start, &end).is_some() {
                        continue;
                    }
                    let witness = if !hurwitz || word_conjugacy(&start, &end).is_some() {
                        None
                    } else {
                        let n = start.len();
                        let first = braid_for_relation(&old, old_orient, 0, n);
                        let second = braid_for_relation(&new, new_end, 0, n);
                        match (first, second) {
                            (Some(Ok(a)), Some(Ok(b))) => Some(a.then(&b).expect("same strand count")),
                            _ => continue,
                        }
                    };
                    if let Ok(Some(added)) = p.add_relation(start, end, witness) {
                        pending.push(added);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    fn w(s: &str) -> PositiveWord {
        PositiveWord(s.bytes().map(|b| (b - b'x') as usize).collect())
    }

    fn p0() -> Presentation {
        parse_presentation("gens: x y z\nrel: x y x = y x y\nrel: x y = y z").unwrap()
    }

    fn p1() -> Presentation {
        parse_presentation("gens: x y z\nrel: x y x = y x y\nrel: x y = y z = z x").unwrap()
    }

    #[test]
    fn p1_is_complete_both_ways() {
        let b = Budget::default();
        assert_eq!(is_complete(&p1(), &b), Truth::Yes);
        assert_eq!(is_left_complete(&p1(), &b), Truth::Yes);
    }

    #[test]
    fn p0_records_the_expected_failure() {
        let report = cube_failures(&p0(), &Budget::default());
        assert_eq!(report.verdict(), Truth::No);
        assert!(report
            .failures
            .iter()
            .any(|f| (f.s, f.r, f.t, f.u.clone(), f.v.clone()) == (1, 0, 1, w("xy"), w("zx"))));
    }

    #[test]
    fn free_and_commuting_presentations_are_complete() {
        let free = parse_presentation("gens: x y").unwrap();
        assert!(cube_failures(&free, &Budget::default()).failures.is_empty());
        let ab = parse_presentation("gens: x y\nrel: x y = y x").unwrap();
        let r = complete(&ab, &CompletionBudget::default());
        assert!(r.is_completed());
        assert!(r.added().is_empty());
    }

    #[test]
    fn hurwitz_completion_of_p0_adds_one_relation() {
        let r = complete_hurwitz(&p0(), &CompletionBudget::default(), HurwitzOptions::default());
        assert!(r.is_completed(), "{r:?}");
        assert_eq!(r.added().len(), 1);
        assert!(r.added()[0].same_as(&w("xy"), &w("zx")));
        assert!(r.presentation().find_relation(&w("yz"), &w("zx")).is_some());
        assert_eq!(is_complete(r.presentation(), &Budget::default()), Truth::Yes);
    }

    #[test]
    fn standard_completion_of_p0_diverges() {
        let r = complete(&p0(), &CompletionBudget::with_total_steps(10_000));
        assert!(!r.is_completed());
        assert!(r.added().iter().any(|rel| rel.same_as(&w("yxy"), &w("yzx"))));
    }

    #[test]
    fn witness_for_reduced_failure() {
        let p = p0();
        let report = cube_failures(&p, &Budget::default());
        let f = report.failures.iter().find(|f| (f.s, f.r, f.t) == (1, 0, 1) && f.u == w("xy")).unwrap();
        let beta = derive_witness(&p, f).unwrap();
        assert_eq!(beta.strands(), 3);
    }
}
