//! Real roots of a generalized Cartan matrix and the inversion lists Theta_w.

use crate::cartan::{gcm_to_coxeter, GeneralizedCartanMatrix};
use crate::coxeter::{CoxeterSystem, Gen, WeylElement};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

/// Root written in the basis of simple roots; coefficient i is the
/// multiplicity of alpha_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(n: usize, i: Gen) -> Result<Root> {
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange(i, n));
        }
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Ok(Root(v))
    }

    /// All coefficients >= 0 or all <= 0, not all zero.
    pub fn sign(&self) -> Option<bool> {
        let pos = self.0.iter().any(|&c| c > 0);
        let neg = self.0.iter().any(|&c| c < 0);
        match (pos, neg) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }
}

/// Simple reflection: s_j(sum_i n_i alpha_i) = sum_{i != j} n_i alpha_i
/// - (n_j + sum_{i != j} n_i a[i][j]) alpha_j.
pub fn act_simple(a: &GeneralizedCartanMatrix, j: Gen, r: &Root) -> Result<Root> {
    if j == 0 || j > a.n {
        return Err(Error::GeneratorOutOfRange(j, a.n));
    }
    if r.0.len() != a.n {
        return Err(Error::InvalidParameter(format!(
            "root has {} coefficients, matrix rank is {}",
            r.0.len(),
            a.n
        )));
    }
    let mut out = r.0.clone();
    let mut cross = 0i64;
    for i in 1..=a.n {
        if i != j {
            cross += r.0[i - 1] * a.entry(i, j);
        }
    }
    out[j - 1] = -(r.0[j - 1] + cross);
    Ok(Root(out))
}

/// Action of a group element through any reduced word: the product
/// s_{i_1} s_{i_2} ... s_{i_k} applies s_{i_k} first.
pub fn act(a: &GeneralizedCartanMatrix, w: &WeylElement, r: &Root) -> Result<Root> {
    let mut cur = r.clone();
    for &g in w.word().iter().rev() {
        cur = act_simple(a, g, &cur)?;
    }
    Ok(cur)
}

/// Ordered inversion list of w = s_{i_1} ... s_{i_k}:
/// [alpha_{i_1}, s_{i_1} alpha_{i_2}, ..., s_{i_1}...s_{i_{k-1}} alpha_{i_k}].
/// As a set this is independent of the reduced word and has size l(w).
pub fn theta(a: &GeneralizedCartanMatrix, w: &WeylElement) -> Result<Vec<Root>> {
    let word = w.word();
    let mut out = Vec::with_capacity(word.len());
    for t in 0..word.len() {
        let mut r = Root::simple(a.n, word[t])?;
        for &g in word[..t].iter().rev() {
            r = act_simple(a, g, &r)?;
        }
        out.push(r);
    }
    Ok(out)
}

/// Result of the bounded commutation probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Commutation {
    /// Some w with l(w) <= bound has both roots in Theta_w.
    pub commutes: bool,
    /// The ball of the given radius was searched without success and the
    /// group was not exhausted, so "false" is only known up to the bound.
    pub bound_exhausted: bool,
}

/// Searches the weak-order ball of the given radius for an element whose
/// inversion set contains both roots.
pub fn commutes(
    a: &GeneralizedCartanMatrix,
    alpha: &Root,
    beta: &Root,
    bound: usize,
) -> Result<Commutation> {
    let sys = CoxeterSystem::new(gcm_to_coxeter(a))?;
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    let mut queue: VecDeque<WeylElement> = VecDeque::new();
    seen.insert(vec![]);
    queue.push_back(sys.identity());
    let mut truncated = false;
    while let Some(u) = queue.pop_front() {
        let th = theta(a, &u)?;
        if th.contains(alpha) && th.contains(beta) {
            return Ok(Commutation {
                commutes: true,
                bound_exhausted: false,
            });
        }
        if u.length() == bound {
            truncated = true;
            continue;
        }
        for s in 1..=sys.rank() {
            let us = sys.multiply(&u, &sys.generator(s)?)?;
            if us.length() == u.length() + 1 && !seen.contains(us.word()) {
                seen.insert(us.word().to_vec());
                queue.push_back(us);
            }
        }
    }
    Ok(Commutation {
        commutes: false,
        bound_exhausted: truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::GeneralizedCartanMatrix;

    fn gcm(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }
    fn free2() -> GeneralizedCartanMatrix {
        gcm(&[&[2, -2], &[-2, 2]])
    }

    #[test]
    fn act_simple_frozen() {
        let a = free2();
        let r = act_simple(&a, 1, &Root::simple(2, 2).unwrap()).unwrap();
        assert_eq!(r, Root(vec![2, 1])); // alpha_2 + 2 alpha_1
    }

    #[test]
    fn act_composed_frozen() {
        let a = free2();
        let sys = CoxeterSystem::new(gcm_to_coxeter(&a)).unwrap();
        let w = sys.element(&[1, 2]).unwrap();
        let r = act(&a, &w, &Root::simple(2, 1).unwrap()).unwrap();
        assert_eq!(r, Root(vec![3, 2])); // 3 alpha_1 + 2 alpha_2
    }

    #[test]
    fn theta_frozen() {
        let a = free2();
        let sys = CoxeterSystem::new(gcm_to_coxeter(&a)).unwrap();
        let w = sys.element(&[1, 2]).unwrap();
        assert_eq!(
            theta(&a, &w).unwrap(),
            vec![Root(vec![1, 0]), Root(vec![2, 1])]
        );
    }

    #[test]
    fn commutes_frozen() {
        let a = free2();
        let al = Root::simple(2, 1).unwrap();
        let be = Root::simple(2, 2).unwrap();
        let c = commutes(&a, &al, &be, 6).unwrap();
        assert!(!c.commutes);
        assert!(c.bound_exhausted);
        // in A2 both simple roots sit in Theta of the longest element
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        let c = commutes(&a2, &Root::simple(2, 1).unwrap(), &Root::simple(2, 2).unwrap(), 3)
            .unwrap();
        assert!(c.commutes);
        // finite group exhausted below the bound: definitive false has no flag
        let a1xa1 = gcm(&[&[2, 0], &[0, 2]]);
        let c = commutes(
            &a1xa1,
            &Root(vec![1, 1]),
            &Root::simple(2, 1).unwrap(),
            50,
        )
        .unwrap();
        assert!(!c.commutes);
        assert!(!c.bound_exhausted);
    }

    #[test]
    fn theta_is_reduced_word_independent_and_positive() {
        use std::collections::BTreeSet;
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        let sys = CoxeterSystem::new(gcm_to_coxeter(&a2)).unwrap();
        let w = sys.element(&[1, 2, 1]).unwrap();
        let th = theta(&a2, &w).unwrap();
        assert_eq!(th.len(), w.length());
        for r in &th {
            assert_eq!(r.sign(), Some(true));
        }
        let as_set: BTreeSet<Vec<i64>> = th.iter().map(|r| r.0.clone()).collect();
        // other reduced word by hand: theta over [2,1,2]
        let mut by_other = vec![];
        let word = [2usize, 1, 2];
        for t in 0..3 {
            let mut r = Root::simple(2, word[t]).unwrap();
            for &g in word[..t].iter().rev() {
                r = act_simple(&a2, g, &r).unwrap();
            }
            by_other.push(r.0);
        }
        let other_set: BTreeSet<Vec<i64>> = by_other.into_iter().collect();
        assert_eq!(as_set, other_set);
    }
}
