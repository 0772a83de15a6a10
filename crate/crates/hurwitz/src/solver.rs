//! Deciding Hurwitz equivalence of a generator system and a target system.
//!
//! The target's entries are matched to conjugates of the source entries, new
//! generators standing for the conjugates are introduced with word-conjugacy
//! relations, and the equivalence is read off a reversing diagram between
//! the two Coxeter words. The naive variant reverses in the expanded
//! presentation as it is; [`hurwitz_test`] first completes it.

use std::collections::HashMap;

use crate::backends::{reduced_words, BackendError, Conjugacy, GroupBackend, NormalForm};
use crate::braid::BraidWord;
use crate::completion::{complete_hurwitz, CompletionBudget, CompletionResult, HurwitzOptions};
use crate::diagram::{build_diagram, extract_rewriting_sequence, RewritingStep};
use crate::hurwitz::{
    braid_for_rewriting_sequence, conjugate_system, coxeter_element, coxeter_word, cycling_braid, verify_braid,
    GSystem, GeneratorSystem, Interpretation,
};
use crate::presentation::Presentation;
use crate::reversing::{reverses_to_empty, Budget, EmptyCheck};
use crate::word::{Alphabet, Gen, PositiveWord, SignedWord};
use crate::Truth;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("systems have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("generator {0} is not in the presentation")]
    UnknownGenerator(Gen),
    #[error("backend interprets {backend} generators, presentation has {presentation}")]
    BackendMismatch { backend: usize, presentation: usize },
    #[error("entry {0} is not the claimed conjugate")]
    MatchingInconsistent(usize),
    #[error(transparent)]
    Backend(#[from] BackendError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotEquivalentReason {
    CoxeterMismatch,
    NoConjugateMatching,
}

impl NotEquivalentReason {
    pub fn describe(self) -> &'static str {
        match self {
            NotEquivalentReason::CoxeterMismatch => "coxeter mismatch",
            NotEquivalentReason::NoConjugateMatching => "no conjugate matching",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotEquivalent(NotEquivalentReason),
    /// `g·beta` equals the target entrywise. The rewriting sequence is over
    /// `alphabet`, the alphabet of the expanded presentation.
    Equivalent { beta: BraidWord, rewriting: Vec<RewritingStep>, alphabet: Alphabet },
    Undecidable(String),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn witness(&self) -> Option<&BraidWord> {
        match self {
            Verdict::Equivalent { beta, .. } => Some(beta),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverBudget {
    /// Length bound for conjugator searches when matching entries.
    pub conjugator_bound: usize,
    pub reversal: Budget,
    pub completion: CompletionBudget,
    /// Overrides the relation length cap, which defaults to the system length.
    pub max_relation_length: Option<usize>,
    /// Length bound on the conjugators `hc_search` tries.
    pub hc_conjugator_bound: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            conjugator_bound: 4,
            reversal: Budget::default(),
            completion: CompletionBudget {
                reversal: Budget { max_steps: 2_000, ..Budget::default() },
                total_steps: 50_000,
                max_rounds: 100,
                batch: true,
            },
            max_relation_length: None,
            hc_conjugator_bound: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matching {
    /// Target entry `i` is `conjugators[i]⁻¹ · g[tau[i]] · conjugators[i]`.
    Matching { tau: Vec<usize>, conjugators: Vec<SignedWord> },
    NoMatching,
    Unknown,
}

/// Finds a perfect matching between target entries and conjugate source
/// entries, preferring short conjugators.
pub fn match_conjugates(
    g: &GSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
    bound: usize,
) -> Result<Matching, SolverError> {
    if g.len() != target.len() {
        return Err(SolverError::LengthMismatch(g.len(), target.len()));
    }
    let n = g.len();
    let mut cache: HashMap<(NormalForm, NormalForm), Conjugacy> = HashMap::new();
    // edges[i]: (j, conjugator) sorted by conjugator length, then j.
    let mut edges: Vec<Vec<(usize, Option<SignedWord>)>> = vec![Vec::new(); n];
    for (i, h) in target.entries.iter().enumerate() {
        let hn = backend.normal_form(h)?;
        for (j, s) in g.entries.iter().enumerate() {
            let key = (backend.normal_form(s)?, hn.clone());
            let c = match cache.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let c = backend.conjugacy_search(s, h, bound)?;
                    cache.insert(key, c.clone());
                    c
                }
            };
            match c {
                Conjugacy::Found(c) => edges[i].push((j, Some(c))),
                Conjugacy::Unknown => edges[i].push((j, None)),
                Conjugacy::NotConjugate => {}
            }
        }
        edges[i].sort_by_key(|(j, c)| (c.as_ref().map_or(usize::MAX, |c| c.len()), *j));
    }
    let mut tau = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(0, &edges, &mut tau, &mut used, false) {
        let conjugators = (0..n)
            .map(|i| edges[i].iter().find(|(j, _)| *j == tau[i]).and_then(|(_, c)| c.clone()).expect("found edge"))
            .collect();
        return Ok(Matching::Matching { tau, conjugators });
    }
    if assign(0, &edges, &mut tau, &mut used, true) {
        return Ok(Matching::Unknown);
    }
    Ok(Matching::NoMatching)
}

fn assign(
    i: usize,
    edges: &[Vec<(usize, Option<SignedWord>)>],
    tau: &mut [usize],
    used: &mut [bool],
    allow_unknown: bool,
) -> bool {
    if i == edges.len() {
        return true;
    }
    for (j, c) in &edges[i] {
        if used[*j] || (c.is_none() && !allow_unknown) {
            continue;
        }
        used[*j] = true;
        tau[i] = *j;
        if assign(i + 1, edges, tau, used, allow_unknown) {
            return true;
        }
        used[*j] = false;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedPresentation {
    pub base: Presentation,
    pub presentation: Presentation,
    /// Every generator of `presentation` as a word over the base generators.
    pub interpretation: Interpretation,
    pub new_generators: Vec<Gen>,
    /// Ids of the relations introduced for the new generators.
    pub new_relations: Vec<usize>,
    /// The generator standing for each target entry.
    pub entry_map: Vec<Gen>,
}

impl ExpandedPresentation {
    pub fn target_word(&self) -> PositiveWord {
        PositiveWord(self.entry_map.clone())
    }
}

const NAMES: [&str; 8] = ["z", "w", "v", "u", "t", "s", "r", "q"];

fn fresh_generator(p: &mut Presentation) -> Gen {
    match NAMES.iter().find(|n| p.alphabet().get(n).is_none()) {
        Some(name) => p.add_generator(name),
        None => p.add_generator("g"),
    }
}

/// Introduces a generator for each conjugate along every `Vᵢ`, together with
/// the word-conjugacy relation tying it to the previous one. Conjugates that
/// are already represented, including base generators, are reused.
pub fn expanded_presentation(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    tau: &[usize],
    conjugators: &[SignedWord],
    backend: &dyn GroupBackend,
) -> Result<ExpandedPresentation, SolverError> {
    let mut q = p.clone();
    let mut interp = Interpretation::identity(p.generator_count());
    let mut known: HashMap<NormalForm, Gen> = HashMap::new();
    for gen in 0..p.generator_count() {
        known.entry(backend.normal_form(&SignedWord::gen(gen))?).or_insert(gen);
    }
    let (mut new_generators, mut new_relations, mut entry_map) = (Vec::new(), Vec::new(), Vec::new());
    for (i, v) in conjugators.iter().enumerate() {
        let mut cur = g.entries[tau[i]];
        let mut value = SignedWord::gen(cur);
        for &l in v.free_reduce().letters() {
            value = value.conjugate_by(&SignedWord::letter(l));
            let nf = backend.normal_form(&value)?;
            let next = match known.get(&nf) {
                Some(&gen) => gen,
                None => {
                    let gen = fresh_generator(&mut q);
                    interp.images.push(value.clone());
                    known.insert(nf, gen);
                    new_generators.push(gen);
                    gen
                }
            };
            let a = l.gen;
            let (lhs, rhs) = if l.inverse {
                (PositiveWord(vec![a, cur]), PositiveWord(vec![next, a]))
            } else {
                (PositiveWord(vec![cur, a]), PositiveWord(vec![a, next]))
            };
            if lhs != rhs {
                if let Ok(Some(id)) = q.add_relation(lhs, rhs, None) {
                    new_relations.push(id);
                }
            }
            cur = next;
        }
        if backend.equal(&interp.word(&SignedWord::gen(cur)), &target.entries[i])? == Truth::No {
            return Err(SolverError::MatchingInconsistent(i));
        }
        entry_map.push(cur);
    }
    Ok(ExpandedPresentation {
        base: p.clone(),
        presentation: q,
        interpretation: interp,
        new_generators,
        new_relations,
        entry_map,
    })
}

fn check_inputs(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
) -> Result<(), SolverError> {
    if g.len() != target.len() {
        return Err(SolverError::LengthMismatch(g.len(), target.len()));
    }
    if backend.generator_count() != p.generator_count() {
        return Err(SolverError::BackendMismatch {
            backend: backend.generator_count(),
            presentation: p.generator_count(),
        });
    }
    if let Some(&bad) = g.entries.iter().find(|&&x| x >= p.generator_count()) {
        return Err(SolverError::UnknownGenerator(bad));
    }
    for e in &target.entries {
        backend.check(e)?;
    }
    Ok(())
}

/// Completed expanded presentations, keyed by presentation text and
/// relation cap. Sharing one cache across calls with the same backend and
/// budget avoids redoing identical completions.
#[derive(Debug, Default)]
pub struct SolverCache {
    completions: HashMap<(String, usize), (Presentation, Option<String>)>,
}

impl SolverCache {
    pub fn new() -> Self {
        SolverCache::default()
    }
}

/// The naive test: reverse in the expanded presentation without completing.
pub fn hurwitz_test_naive(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
    budget: &SolverBudget,
) -> Result<Verdict, SolverError> {
    run(p, g, target, backend, budget, None)
}

/// The test with Hurwitz-aware completion of the expanded presentation.
pub fn hurwitz_test(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
    budget: &SolverBudget,
) -> Result<Verdict, SolverError> {
    run(p, g, target, backend, budget, Some(&mut SolverCache::new()))
}

/// [`hurwitz_test`] reusing completions from `cache`.
pub fn hurwitz_test_cached(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
    budget: &SolverBudget,
    cache: &mut SolverCache,
) -> Result<Verdict, SolverError> {
    run(p, g, target, backend, budget, Some(cache))
}

fn run(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
    budget: &SolverBudget,
    cache: Option<&mut SolverCache>,
) -> Result<Verdict, SolverError> {
    check_inputs(p, g, target, backend)?;
    let source = g.to_gsystem();
    if backend.equal(&coxeter_element(&source), &coxeter_element(target))? == Truth::No {
        return Ok(Verdict::NotEquivalent(NotEquivalentReason::CoxeterMismatch));
    }
    let (tau, conjugators) = match match_conjugates(&source, target, backend, budget.conjugator_bound)? {
        Matching::Matching { tau, conjugators } => (tau, conjugators),
        Matching::NoMatching => return Ok(Verdict::NotEquivalent(NotEquivalentReason::NoConjugateMatching)),
        Matching::Unknown => return Ok(Verdict::Undecidable("conjugator search bound reached".into())),
    };
    let ex = expanded_presentation(p, g, target, &tau, &conjugators, backend)?;
    let u = coxeter_word(g);
    let v = ex.target_word();
    let mut note = String::new();
    let direct = reverses_to_empty(&ex.presentation, &u, &v, &budget.reversal);
    let settled = matches!(direct, EmptyCheck::Yes(_)) || cache.is_none();
    let q = match cache {
        Some(cache) if !settled => {
            let cap = budget.max_relation_length.unwrap_or(g.len());
            let key = (ex.presentation.to_text(), cap);
            let (q, diverged) = cache
                .completions
                .entry(key)
                .or_insert_with(|| {
                    let opts = HurwitzOptions { max_relation_length: Some(cap), verify: Some((backend, &ex.interpretation)) };
                    match complete_hurwitz(&ex.presentation, &budget.completion, opts) {
                        CompletionResult::Completed { presentation, .. } => (presentation, None),
                        CompletionResult::Diverged { presentation, reason, .. } => {
                            (presentation, Some(format!("completion diverged: {}", reason.describe())))
                        }
                    }
                })
                .clone();
            if let Some(d) = diverged {
                note = d;
            }
            q
        }
        _ => ex.presentation.clone(),
    };
    let check = if settled { direct } else { reverses_to_empty(&q, &u, &v, &budget.reversal) };
    let trace = match check {
        EmptyCheck::Yes(trace) => trace,
        EmptyCheck::No => return Ok(Verdict::Undecidable(join(&note, "reversal does not reach the empty word"))),
        EmptyCheck::Unknown => return Ok(Verdict::Undecidable(join(&note, "reversal budget exhausted"))),
    };
    let seq = match build_diagram(&q, &trace, &u, &v).and_then(|d| extract_rewriting_sequence(&d)) {
        Ok(seq) => seq,
        Err(e) => return Ok(Verdict::Undecidable(format!("diagram: {e}"))),
    };
    let beta = match braid_for_rewriting_sequence(&seq, g.len(), &q) {
        Ok(beta) => beta,
        Err(e) => return Ok(Verdict::Undecidable(format!("braid: {e}"))),
    };
    match verify_braid(backend, &source, &beta, target)? {
        Truth::Yes => Ok(Verdict::Equivalent { beta, rewriting: seq, alphabet: q.alphabet().clone() }),
        Truth::No => Ok(Verdict::Undecidable("derived braid fails verification".into())),
        Truth::Unknown => Ok(Verdict::Undecidable("derived braid could not be verified".into())),
    }
}

fn join(note: &str, msg: &str) -> String {
    if note.is_empty() {
        msg.to_string()
    } else {
        format!("{note}; {msg}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HcVerdict {
    /// `g·beta` equals `conjugator⁻¹·g′·conjugator` entrywise.
    HcEquivalent { beta: BraidWord, conjugator: SignedWord },
    NotHcEquivalent(String),
    Undecidable(String),
}

/// Best-effort search for a braid and a simultaneous conjugator.
///
/// Cyclic rotations of `g` are tried first: `g·(σₙ₋₁⋯σ₁)ᵏ` is the rotation
/// conjugated by the product of the last `k` entries. Then the target is
/// conjugated by every reduced word up to the budget's bound.
pub fn hc_search(
    p: &Presentation,
    g: &GeneratorSystem,
    target: &GSystem,
    backend: &dyn GroupBackend,
    budget: &SolverBudget,
) -> Result<HcVerdict, SolverError> {
    check_inputs(p, g, target, backend)?;
    let n = g.len();
    let cox = coxeter_element(&g.to_gsystem());
    let target_cox = coxeter_element(target);
    match backend.conjugacy_search(&cox, &target_cox, budget.hc_conjugator_bound.max(budget.conjugator_bound))? {
        Conjugacy::NotConjugate => return Ok(HcVerdict::NotHcEquivalent("coxeter classes differ".into())),
        Conjugacy::Unknown if backend.exact_conjugacy() => {
            return Ok(HcVerdict::Undecidable("coxeter classes undecided".into()))
        }
        _ => {}
    }
    let mut last = String::from("no candidate succeeded");
    let mut cache = SolverCache::new();
    for k in 0..n.max(1) {
        let mut rotated = g.entries.clone();
        rotated.rotate_right(k);
        let h = PositiveWord(g.entries[n - k..].to_vec()).to_signed();
        let cyc = cycling_braid(n.max(1)).power(k);
        match hurwitz_test_cached(p, &GeneratorSystem::new(rotated), target, backend, budget, &mut cache)? {
            Verdict::Equivalent { beta, .. } => {
                let beta = cyc.then(&beta).expect("same strand count");
                return Ok(HcVerdict::HcEquivalent { beta, conjugator: h });
            }
            Verdict::Undecidable(d) => last = d,
            Verdict::NotEquivalent(_) => {}
        }
    }
    for len in 1..=budget.hc_conjugator_bound {
        for h in reduced_words(p.generator_count(), len) {
            let shifted = conjugate_system(target, &h);
            if let Verdict::Equivalent { beta, .. } = hurwitz_test_cached(p, g, &shifted, backend, budget, &mut cache)? {
                return Ok(HcVerdict::HcEquivalent { beta, conjugator: h });
            }
        }
    }
    Ok(HcVerdict::Undecidable(last))
}

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Whether every generator system of the right-angled Artin group of
/// `graph` with a given Coxeter element lies in one Hurwitz-conjugation
/// class: true exactly for forests.
pub fn raag_full_hc_criterion(graph: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..graph.vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in &graph.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}
