//! Finite posets: validation, dismantling, comma fibers, transport, DOT.

use crate::error::{Error, Result};

/// Finite poset over an element payload.  The relation is stored as bitset
/// rows: `row[i]` holds the up-set of i (all j with i <= j).
#[derive(Debug, Clone)]
pub struct FinPoset<T> {
    items: Vec<T>,
    rows: Vec<Vec<u64>>,
}

fn bit(rows: &[Vec<u64>], i: usize, j: usize) -> bool {
    rows[i][j / 64] >> (j % 64) & 1 == 1
}

impl<T> FinPoset<T> {
    pub fn new(items: Vec<T>, rel: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = items.len();
        let blocks = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; blocks]; n];
        for i in 0..n {
            for j in 0..n {
                if rel(&items[i], &items[j]) {
                    rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self::from_bits(items, rows)
    }

    /// Builds from an explicit relation matrix (leq[i][j]), with validation.
    pub fn from_leq_matrix(items: Vec<T>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = items.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset(format!(
                "relation matrix must be {n} x {n}"
            )));
        }
        let blocks = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; blocks]; n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self::from_bits(items, rows)
    }

    fn from_bits(items: Vec<T>, rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = items.len();
        for i in 0..n {
            if !bit(&rows, i, i) {
                return Err(Error::InvalidPoset(format!("relation not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && bit(&rows, i, j) && bit(&rows, j, i) {
                    return Err(Error::InvalidPoset(format!(
                        "relation not antisymmetric at ({i},{j})"
                    )));
                }
            }
        }
        // transitivity: i <= j forces up(j) subset of up(i)
        for i in 0..n {
            for j in 0..n {
                if bit(&rows, i, j) {
                    for b in 0..rows[i].len() {
                        if rows[j][b] & !rows[i][b] != 0 {
                            return Err(Error::InvalidPoset(format!(
                                "relation not transitive through ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(FinPoset { items, rows })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
    pub fn items(&self) -> &[T] {
        &self.items
    }
    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit(&self.rows, i, j)
    }
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn up_strict(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.lt(i, j)).collect()
    }
    pub fn down_strict(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.lt(j, i)).collect()
    }

    /// Hasse diagram: pairs (i, j) with i covered by j.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j) && !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&g| (0..self.len()).all(|i| self.leq(i, g)))
    }
    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&g| (0..self.len()).all(|i| self.leq(g, i)))
    }

    pub fn subposet(&self, keep: &[usize]) -> FinPoset<T>
    where
        T: Clone,
    {
        let items: Vec<T> = keep.iter().map(|&i| self.items[i].clone()).collect();
        let n = keep.len();
        let blocks = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; blocks]; n];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.leq(i, j) {
                    rows[a][b / 64] |= 1 << (b % 64);
                }
            }
        }
        FinPoset { items, rows }
    }

    /// An element is removable when its strict up-set has a minimum or its
    /// strict down-set has a maximum.
    pub fn removable_point(&self) -> Option<usize> {
        for x in 0..self.len() {
            let up = self.up_strict(x);
            if !up.is_empty() && up.iter().any(|&m| up.iter().all(|&z| self.leq(m, z))) {
                return Some(x);
            }
            let down = self.down_strict(x);
            if !down.is_empty() && down.iter().any(|&m| down.iter().all(|&z| self.leq(z, m))) {
                return Some(x);
            }
        }
        None
    }

    /// Iteratively deletes removable points (lowest index first).  Returns the
    /// core and the surviving original indices.  A one-point core certifies
    /// contractibility of the order complex.
    pub fn dismantle_core(&self) -> (FinPoset<T>, Vec<usize>)
    where
        T: Clone,
    {
        let mut keep: Vec<usize> = (0..self.len()).collect();
        let mut cur = self.subposet(&keep);
        while let Some(x) = cur.removable_point() {
            keep.remove(x);
            cur = self.subposet(&keep);
        }
        (cur, keep)
    }

    /// All chains (totally ordered subsets) with at most `max_len` elements,
    /// each listed in increasing poset order.
    pub fn chains(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![];
        let mut stack: Vec<Vec<usize>> = (0..self.len()).map(|i| vec![i]).collect();
        while let Some(c) = stack.pop() {
            if c.len() > max_len {
                continue;
            }
            out.push(c.clone());
            if c.len() == max_len {
                continue;
            }
            let last = *c.last().unwrap();
            for j in 0..self.len() {
                if self.lt(last, j) {
                    let mut e = c.clone();
                    e.push(j);
                    stack.push(e);
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_dot(&self, label: impl Fn(usize, &T) -> String) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, t) in self.items.iter().enumerate() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", i, label(i, t)));
        }
        for (i, j) in self.covers() {
            s.push_str(&format!("  n{i} -> n{j};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Poset isomorphism by refinement plus backtracking; intended for small
    /// posets (tests and core comparisons).
    pub fn is_isomorphic_to<U>(&self, other: &FinPoset<U>) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let sig = |p_leq: &dyn Fn(usize, usize) -> bool, i: usize| -> (usize, usize) {
            (
                (0..n).filter(|&j| j != i && p_leq(j, i)).count(),
                (0..n).filter(|&j| j != i && p_leq(i, j)).count(),
            )
        };
        let sleq = |i: usize, j: usize| self.leq(i, j);
        let oleq = |i: usize, j: usize| other.leq(i, j);
        let ssig: Vec<_> = (0..n).map(|i| sig(&sleq, i)).collect();
        let osig: Vec<_> = (0..n).map(|i| sig(&oleq, i)).collect();
        {
            let mut a = ssig.clone();
            let mut b = osig.clone();
            a.sort();
            b.sort();
            if a != b {
                return false;
            }
        }
        fn backtrack<A, B>(
            p: &FinPoset<A>,
            q: &FinPoset<B>,
            ssig: &[(usize, usize)],
            osig: &[(usize, usize)],
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            at: usize,
        ) -> bool {
            let n = p.len();
            if at == n {
                return true;
            }
            for cand in 0..n {
                if used[cand] || ssig[at] != osig[cand] {
                    continue;
                }
                let ok = (0..at).all(|prev| {
                    let pc = map[prev].unwrap();
                    p.leq(at, prev) == q.leq(cand, pc) && p.leq(prev, at) == q.leq(pc, cand)
                });
                if !ok {
                    continue;
                }
                map[at] = Some(cand);
                used[cand] = true;
                if backtrack(p, q, ssig, osig, map, used, at + 1) {
                    return true;
                }
                map[at] = None;
                used[cand] = false;
            }
            false
        }
        backtrack(
            self,
            other,
            &ssig,
            &osig,
            &mut vec![None; n],
            &mut vec![false; n],
            0,
        )
    }
}

/// Checks that `f` (index map) is monotone from `src` to `dst`.
pub fn validate_poset_map<S, T>(src: &FinPoset<S>, dst: &FinPoset<T>, f: &[usize]) -> Result<()> {
    if f.len() != src.len() {
        return Err(Error::NotOrderPreserving(format!(
            "map has {} entries for a source of size {}",
            f.len(),
            src.len()
        )));
    }
    for &v in f {
        if v >= dst.len() {
            return Err(Error::NotOrderPreserving(format!(
                "image index {v} out of range for target of size {}",
                dst.len()
            )));
        }
    }
    for i in 0..src.len() {
        for j in 0..src.len() {
            if src.leq(i, j) && !dst.leq(f[i], f[j]) {
                return Err(Error::NotOrderPreserving(format!(
                    "source {i} <= {j} but images are unrelated"
                )));
            }
        }
    }
    Ok(())
}

/// Comma fiber i | F = {j in src : i <= F(j)}, as a subposet of the source.
pub fn comma_fiber<S: Clone, T>(
    src: &FinPoset<S>,
    dst: &FinPoset<T>,
    f: &[usize],
    i: usize,
) -> Result<FinPoset<S>> {
    validate_poset_map(src, dst, f)?;
    if i >= dst.len() {
        return Err(Error::InvalidParameter(format!(
            "fiber base {i} out of range"
        )));
    }
    let keep: Vec<usize> = (0..src.len()).filter(|&j| dst.leq(i, f[j])).collect();
    Ok(src.subposet(&keep))
}

/// Grothendieck-type transport poset of a functor X from a poset to finite
/// sets: elements are pairs (i, x in X(i)), with (i, x) <= (j, y) iff i <= j
/// and X(i <= j)(x) = y.  The assignment must be functorial.
pub fn transport<T: Clone>(
    base: &FinPoset<T>,
    sizes: &[usize],
    map: &dyn Fn(usize, usize, usize) -> usize,
) -> Result<FinPoset<(usize, usize)>> {
    if sizes.len() != base.len() {
        return Err(Error::NotFunctorial(format!(
            "{} set sizes for a base of size {}",
            sizes.len(),
            base.len()
        )));
    }
    for i in 0..base.len() {
        for j in 0..base.len() {
            if !base.leq(i, j) {
                continue;
            }
            for x in 0..sizes[i] {
                let y = map(i, j, x);
                if y >= sizes[j] {
                    return Err(Error::NotFunctorial(format!(
                        "image of ({i},{x}) under {i}<={j} is out of range"
                    )));
                }
                if i == j && y != x {
                    return Err(Error::NotFunctorial(format!(
                        "identity transition at {i} moves {x}"
                    )));
                }
                for k in 0..base.len() {
                    if base.leq(j, k) && map(j, k, y) != map(i, k, x) {
                        return Err(Error::NotFunctorial(format!(
                            "transitions through {i}<={j}<={k} disagree at {x}"
                        )));
                    }
                }
            }
        }
    }
    let mut elems: Vec<(usize, usize)> = vec![];
    for (i, &s) in sizes.iter().enumerate() {
        for x in 0..s {
            elems.push((i, x));
        }
    }
    FinPoset::new(elems, |&(i, x), &(j, y)| base.leq(i, j) && map(i, j, x) == y)
}

/// Convenience: poset on 0..n-1 from an explicit leq predicate.
pub fn poset_from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinPoset<usize>> {
    FinPoset::new((0..n).collect(), |&a, &b| leq(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinPoset<usize> {
        poset_from_leq(n, |a, b| a <= b).unwrap()
    }
    fn antichain(n: usize) -> FinPoset<usize> {
        poset_from_leq(n, |a, b| a == b).unwrap()
    }
    /// Proper nonempty subsets of {1,2,3} by inclusion: a hexagon circle.
    pub fn hexagon() -> FinPoset<u8> {
        let items: Vec<u8> = vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110];
        FinPoset::new(items, |&a, &b| a & b == a).unwrap()
    }

    #[test]
    fn validation_rejects_non_posets() {
        assert!(poset_from_leq(2, |_, _| true).is_err()); // not antisymmetric
        assert!(poset_from_leq(2, |a, b| a < b).is_err()); // not reflexive
        assert!(FinPoset::new(vec![0usize, 1, 2], |&a, &b| {
            a == b || (a == 0 && b == 1) || (a == 1 && b == 2)
        })
        .is_err()); // not transitive
    }

    #[test]
    fn dismantle_chain_and_antichain() {
        let (core, kept) = chain(3).dismantle_core();
        assert_eq!(core.len(), 1);
        assert_eq!(kept.len(), 1);
        let (core, _) = antichain(2).dismantle_core();
        assert_eq!(core.len(), 2); // no removable point
    }

    #[test]
    fn hexagon_has_no_removable_point() {
        let h = hexagon();
        assert!(h.removable_point().is_none());
        let (core, _) = h.dismantle_core();
        assert_eq!(core.len(), 6);
    }

    #[test]
    fn dismantle_poset_with_greatest_is_point() {
        // subsets of {1,2}: has greatest, dismantles to a point
        let items: Vec<u8> = vec![0b00, 0b01, 0b10, 0b11];
        let p = FinPoset::new(items, |&a, &b| a & b == a).unwrap();
        let (core, _) = p.dismantle_core();
        assert_eq!(core.len(), 1);
    }

    #[test]
    fn comma_fiber_examples() {
        // identity map on a 2-chain: fiber over top is {top}
        let c = chain(2);
        let f: Vec<usize> = vec![0, 1];
        let fib = comma_fiber(&c, &c, &f, 1).unwrap();
        assert_eq!(fib.len(), 1);
        // antichain {a,b} -> 3-chain, both to bottom: fiber over 1 is empty
        let a = antichain(2);
        let c3 = chain(3);
        let f = vec![0, 0];
        let fib = comma_fiber(&a, &c3, &f, 1).unwrap();
        assert!(fib.is_empty());
        assert_eq!(comma_fiber(&a, &c3, &f, 0).unwrap().len(), 2);
    }

    #[test]
    fn transport_validates_functoriality() {
        let c = chain(2);
        // X(0) = {0,1}, X(1) = {0}; collapse map is functorial
        let t = transport(&c, &[2, 1], &|i, j, x| if i == j { x } else { 0 }).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.covers().len(), 2); // both points of X(0) sit under (1,0)
        // out of range transition: identity shape but X(1) has one point
        assert!(transport(&c, &[2, 1], &|_, _, x| x).is_err());
        // identity transition must fix points
        assert!(transport(&c, &[2, 2], &|_, _, _| 0).is_err());
    }

    #[test]
    fn iso_and_dot() {
        let a = chain(3);
        let b = poset_from_leq(3, |x, y| x >= y).unwrap(); // reversed chain
        assert!(a.is_isomorphic_to(&b));
        assert!(!a.is_isomorphic_to(&antichain(3)));
        let dot = a.to_dot(|i, _| format!("v{i}"));
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("digraph"));
    }

    #[test]
    fn chains_enumeration() {
        let c = chain(3);
        // nonempty chains in a 3-chain: 3 + 3 + 1
        assert_eq!(c.chains(3).len(), 7);
        assert_eq!(hexagon().chains(3).len(), 6 + 6);
    }
}
