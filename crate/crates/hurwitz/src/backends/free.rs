use super::{bfs_conjugator, BackendError, Conjugacy, GroupBackend, NormalForm};
use crate::word::{free_reduce, SignedWord};
use crate::Truth;

/// The free group on `m` generators.
#[derive(Clone, Debug)]
pub struct FreeBackend {
    m: usize,
}

impl FreeBackend {
    pub fn new(m: usize) -> Self {
        FreeBackend { m }
    }
}

/// Splits a freely reduced word as `p·c·p⁻¹` with `c` cyclically reduced.
pub fn cyclic_reduction(w: &SignedWord) -> (SignedWord, SignedWord) {
    let w = free_reduce(w);
    let l = w.letters();
    let mut k = 0;
    while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inv() {
        k += 1;
    }
    (SignedWord(l[..k].to_vec()), SignedWord(l[k..l.len() - k].to_vec()))
}

impl GroupBackend for FreeBackend {
    fn name(&self) -> String {
        "free".to_string()
    }

    fn generator_count(&self) -> usize {
        self.m
    }

    fn normal_form(&self, w: &SignedWord) -> Result<NormalForm, BackendError> {
        self.check(w)?;
        Ok(NormalForm::Free(free_reduce(w)))
    }

    fn equal(&self, a: &SignedWord, b: &SignedWord) -> Result<Truth, BackendError> {
        Ok(Truth::from_bool(self.normal_form(a)? == self.normal_form(b)?))
    }

    fn conjugacy_search(&self, g: &SignedWord, h: &SignedWord, bound: usize) -> Result<Conjugacy, BackendError> {
        self.check(g)?;
        self.check(h)?;
        if let Some(c) = bfs_conjugator(self, g, h, bound)? {
            return Ok(Conjugacy::Found(c));
        }
        let (p, gc) = cyclic_reduction(g);
        let (q, hc) = cyclic_reduction(h);
        if gc.len() != hc.len() {
            return Ok(Conjugacy::NotConjugate);
        }
        let n = gc.len();
        for k in 0..n.max(1) {
            let rotated: Vec<_> = gc.letters()[k..].iter().chain(&gc.letters()[..k]).copied().collect();
            if rotated == hc.0 {
                let a = SignedWord(gc.letters()[..k].to_vec());
                let c = free_reduce(&p.concat(&a).concat(&q.inverse()));
                return Ok(Conjugacy::Found(c));
            }
        }
        Ok(Conjugacy::NotConjugate)
    }

    fn exact_conjugacy(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn sw(v: &[(usize, bool)]) -> SignedWord {
        SignedWord(v.iter().map(|&(g, i)| Letter { gen: g, inverse: i }).collect())
    }

    #[test]
    fn equality_is_free_reduction() {
        let f = FreeBackend::new(2);
        assert_eq!(f.equal(&sw(&[(0, false), (1, false)]), &sw(&[(1, false), (0, false)])).unwrap(), Truth::No);
        assert_eq!(f.equal(&sw(&[(0, false), (0, true)]), &SignedWord::empty()).unwrap(), Truth::Yes);
        assert!(f.normal_form(&sw(&[(2, false)])).is_err());
    }

    #[test]
    fn conjugacy_beyond_the_bound_is_exact() {
        let f = FreeBackend::new(2);
        let g = sw(&[(0, false), (1, false), (1, false)]);
        let h = sw(&[(0, true), (1, true), (1, false), (1, false), (0, false), (1, false), (0, false)]);
        match f.conjugacy_search(&g, &h, 0).unwrap() {
            Conjugacy::Found(c) => assert_eq!(free_reduce(&g.conjugate_by(&c)), free_reduce(&h)),
            other => panic!("{other:?}"),
        }
        let y = sw(&[(1, false)]);
        assert_eq!(f.conjugacy_search(&g, &y, 2).unwrap(), Conjugacy::NotConjugate);
    }
}
