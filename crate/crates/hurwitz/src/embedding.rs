//! A sufficient test for the positive monoid to embed in the group.

use std::collections::BTreeSet;

use crate::completion::{is_complete, is_left_complete};
use crate::presentation::{is_reducible, Presentation};
use crate::reversing::{reverse_all, Budget, ReversalOutcome};
use crate::word::PositiveWord;
use crate::Truth;

/// Whether no relation has a common first or last letter on its two sides.
pub fn condition_c(p: &Presentation) -> bool {
    !p.relations().iter().any(|r| is_reducible(&r.lhs, &r.rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureBudget {
    pub reversal: Budget,
    pub max_words: usize,
    pub max_word_length: usize,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget { reversal: Budget::default(), max_words: 256, max_word_length: 32 }
    }
}

/// Words in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key(usize, Vec<usize>);

fn key(w: &PositiveWord) -> Key {
    Key(w.len(), w.letters().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureResult {
    Closed(Vec<PositiveWord>),
    Diverged(Vec<PositiveWord>),
    NotApplicable { u: PositiveWord, v: PositiveWord },
}

impl ClosureResult {
    pub fn words(&self) -> Option<&[PositiveWord]> {
        match self {
            ClosureResult::Closed(w) | ClosureResult::Diverged(w) => Some(w),
            ClosureResult::NotApplicable { .. } => None,
        }
    }
}

fn sorted(set: &BTreeSet<Key>) -> Vec<PositiveWord> {
    set.iter().map(|k| PositiveWord(k.1.clone())).collect()
}

/// Closes `{ε} ∪ generators` under taking both components of every terminal
/// form of `u⁻¹v`, for `u, v` in the set. The result is sorted shortlex.
pub fn closure_er(p: &Presentation, budget: &ClosureBudget) -> ClosureResult {
    let mut set: BTreeSet<Key> = BTreeSet::new();
    set.insert(key(&PositiveWord::empty()));
    for g in 0..p.generator_count() {
        set.insert(key(&PositiveWord(vec![g])));
    }
    let mut done: BTreeSet<(Key, Key)> = BTreeSet::new();
    loop {
        let words = sorted(&set);
        let mut grew = false;
        for u in &words {
            for v in &words {
                if u == v || !done.insert((key(u), key(v))) {
                    continue;
                }
                let w = u.inverse().concat(&v.to_signed());
                let outcomes = reverse_all(p, &w, &budget.reversal);
                let mut terminal = false;
                let mut stuck = false;
                for o in outcomes {
                    match o {
                        ReversalOutcome::Empty(_) => terminal = true,
                        ReversalOutcome::Terminal { u: a, v: b, .. } => {
                            terminal = true;
                            for c in [a, b] {
                                if c.len() > budget.max_word_length {
                                    return ClosureResult::Diverged(sorted(&set));
                                }
                                grew |= set.insert(key(&c));
                            }
                        }
                        ReversalOutcome::Stuck { .. } => stuck = true,
                        ReversalOutcome::BudgetExceeded => return ClosureResult::Diverged(sorted(&set)),
                    }
                }
                if stuck && !terminal {
                    return ClosureResult::NotApplicable { u: u.clone(), v: v.clone() };
                }
                if set.len() > budget.max_words {
                    return ClosureResult::Diverged(sorted(&set));
                }
            }
        }
        if !grew {
            return ClosureResult::Closed(sorted(&set));
        }
    }
}

/// `Yes` when the presentation is complete on both sides, satisfies
/// [`condition_c`] and has a finite closure; never a definite `No`.
pub fn monoid_embeds(p: &Presentation, budget: &ClosureBudget) -> Truth {
    if !p.is_homogeneous() || !condition_c(p) {
        return Truth::Unknown;
    }
    if is_complete(p, &budget.reversal) != Truth::Yes || is_left_complete(p, &budget.reversal) != Truth::Yes {
        return Truth::Unknown;
    }
    match closure_er(p, budget) {
        ClosureResult::Closed(_) => Truth::Yes,
        _ => Truth::Unknown,
    }
}
