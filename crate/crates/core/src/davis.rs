//! Coset posets of finite-type standard parabolics (the face poset of the
//! Davis-type complex), the longest-element functor, and the contractibility
//! checks behind it.

use crate::coxeter::{CoxeterSystem, Gen, WeakBall, WeylElement};
use crate::error::{Error, Result};
use crate::homology::{homology_trivial, nerve_homology, HomologyGroup};
use crate::poset::FinPoset;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Coset w W_I, I of finite type, stored by its minimal-length representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DavisNode {
    pub min_rep: WeylElement,
    pub subset: BTreeSet<Gen>,
}

impl fmt::Display for DavisNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = self
            .subset
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{}W{{{set}}}", self.min_rep)
    }
}

/// All cosets w W_I with I finite type and l(minimal representative) <= radius,
/// ordered by w1 W_I1 <= w2 W_I2 iff I1 is a subset of I2 and both name cosets
/// inside the same W_I2-coset.
pub fn davis_poset(sys: &CoxeterSystem, radius: usize) -> Result<FinPoset<DavisNode>> {
    let ball = sys.weak_ball(radius, 1_000_000)?;
    davis_poset_in(sys, &ball)
}

fn finite_subsets(sys: &CoxeterSystem) -> Result<Vec<BTreeSet<Gen>>> {
    Ok(sys.finite_type_subsets()?.items().to_vec())
}

/// Minimal coset representative of u W_I by greedy right descents inside I.
fn min_rep(sys: &CoxeterSystem, u: &WeylElement, subset: &BTreeSet<Gen>) -> Result<WeylElement> {
    let mut cur = u.clone();
    loop {
        let mut advanced = false;
        for &i in subset {
            let gi = sys.generator(i)?;
            let next = sys.multiply(&cur, &gi)?;
            if next.length() < cur.length() {
                cur = next;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(cur);
        }
    }
}

fn davis_poset_in(sys: &CoxeterSystem, ball: &WeakBall) -> Result<FinPoset<DavisNode>> {
    let subsets = finite_subsets(sys)?;
    // min-rep table: ball element x subset -> ball index of its coset min rep
    let mut table: Vec<Vec<usize>> = vec![vec![0; subsets.len()]; ball.len()];
    for (ei, e) in ball.elems.iter().enumerate() {
        for (si, sub) in subsets.iter().enumerate() {
            let m = min_rep(sys, e, sub)?;
            table[ei][si] = ball.id_of(&m).expect("min rep stays in the ball");
        }
    }
    let mut nodes: Vec<(usize, usize)> = vec![]; // (ball index, subset index)
    for si in 0..subsets.len() {
        for ei in 0..ball.len() {
            if table[ei][si] == ei {
                nodes.push((ei, si));
            }
        }
    }
    nodes.sort_by_key(|&(ei, si)| {
        (
            subsets[si].len(),
            subsets[si].iter().copied().collect::<Vec<_>>(),
            ei,
        )
    });
    let items: Vec<DavisNode> = nodes
        .iter()
        .map(|&(ei, si)| DavisNode {
            min_rep: ball.elems[ei].clone(),
            subset: subsets[si].clone(),
        })
        .collect();
    let n = items.len();
    let mut leq = vec![vec![false; n]; n];
    for (a, &(ea, sa)) in nodes.iter().enumerate() {
        for (b, &(eb, sb)) in nodes.iter().enumerate() {
            leq[a][b] = subsets[sa].is_subset(&subsets[sb]) && table[ea][sb] == eb;
        }
    }
    FinPoset::from_leq_matrix(items, &leq)
}

/// Longest element of the coset: minimal representative times the longest
/// element of W_I.
pub fn functor_l(sys: &CoxeterSystem, node: &DavisNode) -> Result<WeylElement> {
    Ok(sys.coset_reps(&node.min_rep, &node.subset)?.longest)
}

#[derive(Debug, Clone, Serialize)]
pub struct CombinReport {
    pub v: Vec<Gen>,
    pub w: Vec<Gen>,
    pub poset_size: usize,
    pub core_size: usize,
    /// Reduced homology of the dismantled core (homotopy equivalent to the
    /// full interval preimage), dimensions 0..=3.
    pub homology: Vec<HomologyGroup>,
    pub pass: bool,
}

/// Builds the preimage of the weak-order interval [v, w] under the
/// longest-element functor on the coset poset, and certifies contractibility:
/// a one-point dismantle core, or else vanishing reduced homology to dim 3.
pub fn check_combin(sys: &CoxeterSystem, v: &WeylElement, w: &WeylElement) -> Result<CombinReport> {
    if !sys.weak_leq(v, w)? {
        return Err(Error::NotComparable(format!("{v} is not below {w}")));
    }
    let ball = sys.weak_ball(w.length(), 1_000_000)?;
    let davis = davis_poset_in(sys, &ball)?;
    let (vi, wi) = (
        ball.id_of(v).expect("v within ball"),
        ball.id_of(w).expect("w within ball"),
    );
    let mut keep = vec![];
    for (i, node) in davis.items().iter().enumerate() {
        let long = functor_l(sys, node)?;
        match ball.id_of(&long) {
            Some(li) if ball.leq(vi, li) && ball.leq(li, wi) => keep.push(i),
            _ => {}
        }
    }
    let sub = davis.subposet(&keep);
    let (core, _) = sub.dismantle_core();
    let homology = nerve_homology(&core, 3)?;
    let pass = core.len() == 1 || homology_trivial(&homology, core.len());
    Ok(CombinReport {
        v: v.word().to_vec(),
        w: w.word().to_vec(),
        poset_size: sub.len(),
        core_size: core.len(),
        homology,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub base: String,
    pub fiber_size: usize,
    pub core_size: usize,
    pub homology: Vec<HomologyGroup>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PullbackReport {
    pub fibers: Vec<FiberReport>,
    pub pass: bool,
}

/// Checks contractibility of every comma fiber i | F of a monotone map,
/// optionally restricted to a chosen list of target indices.
pub fn check_pullback<S: Clone, T: fmt::Display>(
    src: &FinPoset<S>,
    dst: &FinPoset<T>,
    f: &[usize],
    over: Option<&[usize]>,
) -> Result<PullbackReport> {
    crate::poset::validate_poset_map(src, dst, f)?;
    let all: Vec<usize> = (0..dst.len()).collect();
    let over = over.unwrap_or(&all);
    let mut fibers = vec![];
    for &i in over {
        let fib = crate::poset::comma_fiber(src, dst, f, i)?;
        let (core, _) = fib.dismantle_core();
        let homology = nerve_homology(&core, 3)?;
        let pass = core.len() == 1 || homology_trivial(&homology, core.len());
        fibers.push(FiberReport {
            base: dst.items()[i].to_string(),
            fiber_size: fib.len(),
            core_size: core.len(),
            homology,
            pass,
        });
    }
    let pass = fibers.iter().all(|f| f.pass);
    Ok(PullbackReport { fibers, pass })
}

/// The longest-element functor from the radius-truncated coset poset to the
/// weak order, with fibers evaluated over elements of length <= radius.
pub fn check_pullback_davis_l(sys: &CoxeterSystem, radius: usize) -> Result<PullbackReport> {
    let davis = davis_poset(sys, radius)?;
    let mut longs = vec![];
    let mut max_len = radius;
    for node in davis.items() {
        let l = functor_l(sys, node)?;
        max_len = max_len.max(l.length());
        longs.push(l);
    }
    let ball = sys.weak_ball(max_len, 1_000_000)?;
    let target = FinPoset::new(ball.elems.clone(), |a, b| {
        ball.leq(ball.id_of(a).unwrap(), ball.id_of(b).unwrap())
    })?;
    let f: Vec<usize> = longs.iter().map(|l| ball.id_of(l).unwrap()).collect();
    let over: Vec<usize> = (0..ball.len())
        .filter(|&i| ball.elems[i].length() <= radius)
        .collect();
    check_pullback(&davis, &target, &f, Some(&over))
}
