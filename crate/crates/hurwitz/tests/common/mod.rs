#![allow(dead_code)]

use hurwitz::backends::{BraidBackend, FreeBackend, GroupBackend, PermBackend};
use hurwitz::hurwitz::{act_braid, coxeter_element, cycling_braid, GSystem};
use hurwitz::parse::parse_presentation;
use hurwitz::{Alphabet, BraidLetter, BraidWord, Letter, Presentation, SignedWord, Truth};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const GENS: usize = 3;

pub fn alphabet() -> Alphabet {
    Alphabet::from_names(["x", "y", "z"]).unwrap()
}

pub fn p1() -> Presentation {
    parse_presentation("gens: x y z\nrel: x y x = y x y\nrel: x y = y z = z x").unwrap()
}

pub fn p0() -> Presentation {
    parse_presentation("gens: x y z\nrel: x y x = y x y\nrel: x y = y z").unwrap()
}

pub fn b3() -> Presentation {
    parse_presentation("gens: x y\nrel: x y x = y x y").unwrap()
}

/// The three backends the action laws are exercised against, all over `x y z`.
pub fn backends() -> Vec<Box<dyn GroupBackend>> {
    let a = alphabet();
    vec![
        Box::new(FreeBackend::new(GENS)),
        Box::new(PermBackend::from_text("x = (1 2)\ny = (2 3 4)\nz = (1 4)(2 3)", &a).unwrap()),
        Box::new(BraidBackend::from_map(4, "x=1,y=2,z=3.-1", &a).unwrap()),
    ]
}

pub fn signed_word(max_len: usize) -> impl Strategy<Value = SignedWord> {
    prop::collection::vec((0..GENS, any::<bool>()), 1..=max_len).prop_map(|ls| {
        let letters = ls.into_iter().map(|(g, inv)| if inv { Letter::neg(g) } else { Letter::pos(g) }).collect();
        SignedWord(letters)
    })
}

pub fn system(max_len: usize) -> impl Strategy<Value = GSystem> {
    prop::collection::vec(signed_word(3), 2..=max_len).prop_map(GSystem::new)
}

/// A system together with a braid on the matching number of strands.
pub fn system_and_braid() -> impl Strategy<Value = (GSystem, BraidWord)> {
    system(5).prop_flat_map(|g| {
        let m = g.len();
        let braid = prop::collection::vec((1..m, any::<bool>()), 0..8)
            .prop_map(move |ls| BraidWord::new(m, ls.into_iter().map(|(index, inverse)| BraidLetter { index, inverse }).collect()).unwrap());
        (Just(g), braid)
    })
}

fn same(b: &dyn GroupBackend, x: &GSystem, y: &GSystem) -> bool {
    x.len() == y.len() && x.entries.iter().zip(&y.entries).all(|(p, q)| b.equal(p, q).unwrap() == Truth::Yes)
}

fn word(m: usize, letters: &[(usize, bool)]) -> BraidWord {
    BraidWord::new(m, letters.iter().map(|&(index, inverse)| BraidLetter { index, inverse }).collect()).unwrap()
}

/// Checks the four action laws for one system and braid under one backend.
pub fn action_laws(b: &dyn GroupBackend, g: &GSystem, beta: &BraidWord) -> Result<(), TestCaseError> {
    let m = g.len();
    let name = b.name();
    for i in 1..m {
        for j in 1..m {
            let (lhs, rhs) = if i + 1 == j {
                (word(m, &[(i, false), (j, false), (i, false)]), word(m, &[(j, false), (i, false), (j, false)]))
            } else if i + 1 < j {
                (word(m, &[(i, false), (j, false)]), word(m, &[(j, false), (i, false)]))
            } else {
                continue;
            };
            let (l, r) = (act_braid(g, &lhs).unwrap(), act_braid(g, &rhs).unwrap());
            prop_assert!(same(b, &l, &r), "{name}: braid relation {lhs} = {rhs} fails");
        }
    }
    let moved = act_braid(g, beta).unwrap();
    let back = act_braid(&moved, &beta.inverse()).unwrap();
    prop_assert!(same(b, &back, g), "{name}: inverse action of {beta}");
    prop_assert_eq!(
        b.equal(&coxeter_element(&moved), &coxeter_element(g)).unwrap(),
        Truth::Yes,
        "{}: coxeter element moved by {}",
        name,
        beta
    );
    let cycled = act_braid(g, &cycling_braid(m)).unwrap();
    let last = &g.entries[m - 1];
    let mut expected = vec![last.clone()];
    expected.extend(g.entries[..m - 1].iter().map(|e| e.conjugate_by(last)));
    prop_assert!(same(b, &cycled, &GSystem::new(expected)), "{name}: cycling law");
    Ok(())
}

/// Every sequence of `len` letters drawn from `0..gens`.
pub fn tuples(gens: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..gens).map(move |g| {
                    let mut t = s.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}
