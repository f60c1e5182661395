//! Coxeter systems and their word problem.
//!
//! Elements are kept as ShortLex-least reduced words.  Reduction follows the
//! classical solution of the word problem: a word is reduced unless some
//! sequence of braid moves (replacing an alternating run s_i s_j s_i ... of
//! length m[i][j] by the run starting with s_j) exposes an adjacent equal
//! pair, which is then deleted.

use crate::cartan::{Bond, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::poset::FinPoset;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Generator index, 1-based: s_1, ..., s_n.
pub type Gen = usize;

#[derive(Debug)]
struct SystemInner {
    matrix: CoxeterMatrix,
}

/// A Coxeter system (W, S) described by its Coxeter matrix.  Cheap to clone.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    inner: Arc<SystemInner>,
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.matrix == other.inner.matrix
    }
}
impl Eq for CoxeterSystem {}

/// Group element, stored as its canonical (ShortLex-least) reduced word.
#[derive(Debug, Clone)]
pub struct WeylElement {
    sys: CoxeterSystem,
    word: Vec<Gen>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.sys == other.sys
    }
}
impl Eq for WeylElement {}
impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}
impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WeylElement {
    /// ShortLex on canonical words; used only for deterministic container order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            for g in &self.word {
                write!(f, "s{g}")?;
            }
            Ok(())
        }
    }
}

impl WeylElement {
    pub fn word(&self) -> &[Gen] {
        &self.word
    }
    pub fn length(&self) -> usize {
        self.word.len()
    }
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }
}

/// ShortLex comparison of plain words.
fn shortlex_less(a: &[Gen], b: &[Gen]) -> bool {
    (a.len(), a) < (b.len(), b)
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Result<Self> {
        matrix.check_validated()?;
        Ok(CoxeterSystem {
            inner: Arc::new(SystemInner { matrix }),
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.inner.matrix
    }

    pub fn rank(&self) -> usize {
        self.inner.matrix.n
    }

    pub fn bond(&self, i: Gen, j: Gen) -> Bond {
        self.inner.matrix.bond(i, j)
    }

    fn check_gen(&self, i: Gen) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::GeneratorOutOfRange(i, self.rank()));
        }
        Ok(())
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            sys: self.clone(),
            word: vec![],
        }
    }

    pub fn generator(&self, i: Gen) -> Result<WeylElement> {
        self.check_gen(i)?;
        Ok(WeylElement {
            sys: self.clone(),
            word: vec![i],
        })
    }

    /// Canonical form of an arbitrary word in the generators.
    pub fn element(&self, word: &[Gen]) -> Result<WeylElement> {
        for &g in word {
            self.check_gen(g)?;
        }
        let mut acc = vec![];
        for &g in word {
            acc = self.mult_gen(&acc, g);
        }
        Ok(WeylElement {
            sys: self.clone(),
            word: acc,
        })
    }

    /// Alias of `element` under the name callers usually look for.
    pub fn normal_form(&self, word: &[Gen]) -> Result<WeylElement> {
        self.element(word)
    }

    /// All words reachable from `word` by braid moves (same length).  If some
    /// reachable word has an adjacent equal pair, returns it via `Err(word)`.
    fn braid_closure(&self, word: &[Gen]) -> std::result::Result<HashSet<Vec<Gen>>, Vec<Gen>> {
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue: VecDeque<Vec<Gen>> = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        if word.windows(2).any(|p| p[0] == p[1]) {
            return Err(word.to_vec());
        }
        while let Some(w) = queue.pop_front() {
            for p in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[p], w[p + 1]);
                if a == b {
                    continue;
                }
                let m = match self.bond(a, b) {
                    Bond::Finite(m) => m as usize,
                    Bond::Inf => continue,
                };
                if p + m > w.len() {
                    continue;
                }
                let alternating = (0..m).all(|t| w[p + t] == if t % 2 == 0 { a } else { b });
                if !alternating {
                    continue;
                }
                let mut nb = w.clone();
                for t in 0..m {
                    nb[p + t] = if t % 2 == 0 { b } else { a };
                }
                if !seen.contains(&nb) {
                    if nb.windows(2).any(|q| q[0] == q[1]) {
                        return Err(nb);
                    }
                    seen.insert(nb.clone());
                    queue.push_back(nb);
                }
            }
        }
        Ok(seen)
    }

    /// Canonical word of w * s_g, given the canonical (reduced) word of w.
    fn mult_gen(&self, word: &[Gen], g: Gen) -> Vec<Gen> {
        let mut cand = word.to_vec();
        cand.push(g);
        match self.braid_closure(&cand) {
            Ok(closure) => closure
                .into_iter()
                .min_by(|a, b| {
                    if shortlex_less(a, b) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                })
                .unwrap(),
            Err(with_pair) => {
                let p = with_pair
                    .windows(2)
                    .position(|q| q[0] == q[1])
                    .expect("pair present");
                let mut shorter = with_pair;
                shorter.drain(p..p + 2);
                // shorter is reduced: l(ws) = l(w) - 1 exactly
                match self.braid_closure(&shorter) {
                    Ok(closure) => closure
                        .into_iter()
                        .min_by(|a, b| {
                            if shortlex_less(a, b) {
                                std::cmp::Ordering::Less
                            } else {
                                std::cmp::Ordering::Greater
                            }
                        })
                        .unwrap(),
                    Err(w) => unreachable!("deletion produced non-reduced word {w:?}"),
                }
            }
        }
    }

    pub fn multiply(&self, v: &WeylElement, w: &WeylElement) -> Result<WeylElement> {
        if v.sys != *self || w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        let mut acc = v.word.clone();
        for &g in &w.word {
            acc = self.mult_gen(&acc, g);
        }
        Ok(WeylElement {
            sys: self.clone(),
            word: acc,
        })
    }

    pub fn inverse(&self, w: &WeylElement) -> Result<WeylElement> {
        if w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        let mut rev = w.word.clone();
        rev.reverse();
        // the reversed word is reduced; only canonicalization is needed
        self.element(&rev)
    }

    /// All reduced words for w (the braid-move closure of its canonical word).
    pub fn reduced_expressions(&self, w: &WeylElement) -> Result<BTreeSet<Vec<Gen>>> {
        if w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        match self.braid_closure(&w.word) {
            Ok(closure) => Ok(closure.into_iter().collect()),
            Err(bad) => unreachable!("canonical word was not reduced: {bad:?}"),
        }
    }

    /// Weak order: v <= w iff w = v x with l(w) = l(v) + l(x).
    pub fn weak_leq(&self, v: &WeylElement, w: &WeylElement) -> Result<bool> {
        if v.sys != *self || w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        if v.word.len() > w.word.len() {
            return Ok(false);
        }
        let x = self.multiply(&self.inverse(v)?, w)?;
        Ok(v.word.len() + x.word.len() == w.word.len())
    }

    /// Meet in the weak order (W is a complete meet-semilattice).
    pub fn meet(&self, v: &WeylElement, w: &WeylElement) -> Result<WeylElement> {
        if v.sys != *self || w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        // BFS over the common lower bounds; they are prefix-closed, so every
        // one is reachable from e through cover steps inside the set.
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue: VecDeque<WeylElement> = VecDeque::new();
        let e = self.identity();
        seen.insert(vec![]);
        queue.push_back(e.clone());
        let mut maximal: Vec<WeylElement> = vec![];
        while let Some(u) = queue.pop_front() {
            let mut extended = false;
            for s in 1..=self.rank() {
                let us = WeylElement {
                    sys: self.clone(),
                    word: self.mult_gen(&u.word, s),
                };
                if us.word.len() != u.word.len() + 1 {
                    continue;
                }
                if !self.weak_leq(&us, v)? || !self.weak_leq(&us, w)? {
                    continue;
                }
                extended = true;
                if !seen.contains(&us.word) {
                    seen.insert(us.word.clone());
                    queue.push_back(us);
                }
            }
            if !extended {
                maximal.push(u);
            }
        }
        maximal.sort();
        maximal.dedup();
        assert!(
            maximal.len() == 1,
            "weak order meet is not unique: {maximal:?}"
        );
        Ok(maximal.pop().unwrap())
    }

    /// Right descents: i with l(w s_i) < l(w); equivalently the set of last
    /// letters over all reduced words of w.
    pub fn descent_type(&self, w: &WeylElement) -> Result<BTreeSet<Gen>> {
        if w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        let mut out = BTreeSet::new();
        for s in 1..=self.rank() {
            if self.mult_gen(&w.word, s).len() < w.word.len() {
                out.insert(s);
            }
        }
        Ok(out)
    }

    /// Whether the standard parabolic subgroup W_I is finite, by the
    /// classification of diagrams with finite components.
    pub fn is_finite_type(&self, subset: &BTreeSet<Gen>) -> Result<bool> {
        for &i in subset {
            self.check_gen(i)?;
        }
        for comp in self.diagram_components(subset) {
            if !self.component_is_finite(&comp) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn diagram_components(&self, subset: &BTreeSet<Gen>) -> Vec<Vec<Gen>> {
        let verts: Vec<Gen> = subset.iter().copied().collect();
        let mut seen: HashSet<Gen> = HashSet::new();
        let mut comps = vec![];
        for &v in &verts {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &verts {
                    if !seen.contains(&y) && self.bond(x, y) != Bond::Finite(2) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// Classification of connected diagrams with finite Coxeter group:
    /// A, B/C, D, E6-E8, F4, H3, H4, and the dihedral I2(m).
    fn component_is_finite(&self, comp: &[Gen]) -> bool {
        let k = comp.len();
        let edges: Vec<(Gen, Gen, Bond)> = comp
            .iter()
            .enumerate()
            .flat_map(|(p, &x)| {
                comp[p + 1..]
                    .iter()
                    .map(move |&y| (x, y, self.bond(x, y)))
                    .filter(|&(_, _, b)| b != Bond::Finite(2))
            })
            .collect();
        if edges.iter().any(|&(_, _, b)| b == Bond::Inf) {
            return false;
        }
        if k == 1 {
            return true;
        }
        if k == 2 {
            return true; // I2(m), m finite
        }
        if edges.len() != k - 1 {
            return false; // connected with a cycle
        }
        let deg = |v: Gen| edges.iter().filter(|&&(x, y, _)| x == v || y == v).count();
        let degrees: Vec<usize> = comp.iter().map(|&v| deg(v)).collect();
        if degrees.iter().any(|&d| d >= 4) {
            return false;
        }
        let branches: Vec<Gen> = comp
            .iter()
            .zip(&degrees)
            .filter(|&(_, &d)| d == 3)
            .map(|(&v, _)| v)
            .collect();
        if branches.len() >= 2 {
            return false;
        }
        let heavy: Vec<&(Gen, Gen, Bond)> = edges
            .iter()
            .filter(|&&(_, _, b)| b > Bond::Finite(3))
            .collect();
        if let [b] = branches[..] {
            if !heavy.is_empty() {
                return false;
            }
            // lengths of the three arms from the branch vertex
            let mut arms: Vec<usize> = edges
                .iter()
                .filter(|&&(x, y, _)| x == b || y == b)
                .map(|&(x, y, _)| {
                    let mut prev = b;
                    let mut cur = if x == b { y } else { x };
                    let mut len = 1;
                    loop {
                        let next = edges
                            .iter()
                            .filter(|&&(p, q, _)| (p == cur || q == cur) && p != prev && q != prev)
                            .map(|&(p, q, _)| if p == cur { q } else { p })
                            .next();
                        match next {
                            Some(nx) => {
                                prev = cur;
                                cur = nx;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort();
            return match arms[..] {
                [1, 1, _] => true,                      // D_n
                [1, 2, c] => (2..=4).contains(&c),      // E6, E7, E8
                _ => false,
            };
        }
        // path: order the labels from one endpoint
        let start = comp[degrees.iter().position(|&d| d == 1).expect("path endpoint")];
        let mut labels = vec![];
        let mut prev = None;
        let mut cur = start;
        loop {
            let step = edges
                .iter()
                .filter(|&&(x, y, _)| (x == cur || y == cur) && Some(x) != prev && Some(y) != prev)
                .map(|&(x, y, b)| (if x == cur { y } else { x }, b))
                .next();
            match step {
                Some((nx, b)) => {
                    labels.push(b);
                    prev = Some(cur);
                    cur = nx;
                }
                None => break,
            }
        }
        debug_assert_eq!(labels.len(), k - 1);
        match heavy.len() {
            0 => true, // A_n
            1 => {
                let pos = labels
                    .iter()
                    .position(|&b| b > Bond::Finite(3))
                    .expect("heavy edge on path");
                let at_end = pos == 0 || pos == k - 2;
                match labels[pos] {
                    Bond::Finite(4) if at_end => true,  // B_n
                    Bond::Finite(4) => k == 4,          // F4
                    Bond::Finite(5) if at_end => k <= 4, // H3, H4
                    _ => false,
                }
            }
            _ => false,
        }
    }

    /// All finite-type subsets of the generating set, as an inclusion poset.
    pub fn finite_type_subsets(&self) -> Result<FinPoset<BTreeSet<Gen>>> {
        let n = self.rank();
        if n > 20 {
            return Err(Error::SizeLimit(format!(
                "finite_type_subsets enumerates 2^{n} subsets"
            )));
        }
        let mut subsets: Vec<BTreeSet<Gen>> = vec![];
        for mask in 0u32..(1 << n) {
            let set: BTreeSet<Gen> = (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            if self.is_finite_type(&set)? {
                subsets.push(set);
            }
        }
        subsets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        FinPoset::new(subsets, |a, b| a.is_subset(b))
    }

    /// Longest element of a finite-type standard parabolic, by greedy ascent.
    pub fn longest_element(&self, subset: &BTreeSet<Gen>) -> Result<WeylElement> {
        if !self.is_finite_type(subset)? {
            return Err(Error::NotFiniteType(subset.iter().copied().collect()));
        }
        let mut u = self.identity();
        loop {
            let mut advanced = false;
            for &i in subset {
                let ui = self.mult_gen(&u.word, i);
                if ui.len() > u.word.len() {
                    u.word = ui;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Ok(u);
            }
        }
    }

    /// Minimal and longest representatives of the coset w W_I (I finite type).
    pub fn coset_reps(&self, w: &WeylElement, subset: &BTreeSet<Gen>) -> Result<CosetReps> {
        if w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        if !self.is_finite_type(subset)? {
            return Err(Error::NotFiniteType(subset.iter().copied().collect()));
        }
        let mut min = w.clone();
        loop {
            let mut advanced = false;
            for &i in subset {
                let mi = self.mult_gen(&min.word, i);
                if mi.len() < min.word.len() {
                    min.word = mi;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        let w0 = self.longest_element(subset)?;
        let longest = self.multiply(&min, &w0)?;
        debug_assert_eq!(longest.length(), min.length() + w0.length());
        Ok(CosetReps { min, longest })
    }

    /// The longest element of W_I below w in the weak order (well-defined:
    /// the prefixes of w that lie in W_I are closed under join).
    pub fn restrict(&self, w: &WeylElement, subset: &BTreeSet<Gen>) -> Result<WeylElement> {
        if w.sys != *self {
            return Err(Error::SystemMismatch);
        }
        for &i in subset {
            self.check_gen(i)?;
        }
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue: VecDeque<WeylElement> = VecDeque::new();
        seen.insert(vec![]);
        queue.push_back(self.identity());
        let mut maximal: Vec<WeylElement> = vec![];
        while let Some(u) = queue.pop_front() {
            let mut extended = false;
            for &s in subset {
                let us = WeylElement {
                    sys: self.clone(),
                    word: self.mult_gen(&u.word, s),
                };
                if us.word.len() != u.word.len() + 1 || !self.weak_leq(&us, w)? {
                    continue;
                }
                extended = true;
                if !seen.contains(&us.word) {
                    seen.insert(us.word.clone());
                    queue.push_back(us);
                }
            }
            if !extended {
                maximal.push(u);
            }
        }
        maximal.sort();
        maximal.dedup();
        assert!(
            maximal.len() == 1,
            "restriction to a parabolic is not unique: {maximal:?}"
        );
        Ok(maximal.pop().unwrap())
    }

    /// Ball of the weak order up to the given length, with the order relation
    /// precomputed.  Elements come in ShortLex-of-canonical-word order.
    pub fn weak_ball(&self, radius: usize, cap: usize) -> Result<WeakBall> {
        let mut elems: Vec<WeylElement> = vec![self.identity()];
        let mut index: HashMap<Vec<Gen>, usize> = HashMap::new();
        index.insert(vec![], 0);
        let mut parents: Vec<Vec<usize>> = vec![vec![]];
        let mut at = 0;
        while at < elems.len() {
            let u = elems[at].clone();
            if u.word.len() < radius {
                for s in 1..=self.rank() {
                    let us = self.mult_gen(&u.word, s);
                    if us.len() != u.word.len() + 1 {
                        continue;
                    }
                    let id = *index.entry(us.clone()).or_insert_with(|| {
                        elems.push(WeylElement {
                            sys: self.clone(),
                            word: us,
                        });
                        parents.push(vec![]);
                        elems.len() - 1
                    });
                    if !parents[id].contains(&at) {
                        parents[id].push(at);
                    }
                    if elems.len() > cap {
                        return Err(Error::SizeLimit(format!(
                            "weak ball exceeds cap of {cap} elements"
                        )));
                    }
                }
            }
            at += 1;
        }
        // sort by ShortLex, remap
        let mut order: Vec<usize> = (0..elems.len()).collect();
        order.sort_by(|&a, &b| elems[a].cmp(&elems[b]));
        let mut rank_of = vec![0usize; elems.len()];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new;
        }
        let sorted: Vec<WeylElement> = order.iter().map(|&o| elems[o].clone()).collect();
        let sorted_parents: Vec<Vec<usize>> = order
            .iter()
            .map(|&o| parents[o].iter().map(|&p| rank_of[p]).collect())
            .collect();
        let words = sorted.len();
        let blocks = words.div_ceil(64);
        let mut down: Vec<Vec<u64>> = vec![vec![0u64; blocks]; words];
        for i in 0..words {
            down[i][i / 64] |= 1 << (i % 64);
            let ps = sorted_parents[i].clone();
            for p in ps {
                let (head, tail) = down.split_at_mut(i);
                for (b, blk) in head[p].iter().enumerate() {
                    tail[0][b] |= blk;
                }
            }
        }
        let index = sorted
            .iter()
            .enumerate()
            .map(|(i, w)| (w.word.clone(), i))
            .collect();
        Ok(WeakBall {
            sys: self.clone(),
            elems: sorted,
            index,
            down,
        })
    }
}

/// Minimal and longest representatives of a coset w W_I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetReps {
    pub min: WeylElement,
    pub longest: WeylElement,
}

/// Weak-order ball with precomputed order relation (as down-set bitsets).
pub struct WeakBall {
    pub sys: CoxeterSystem,
    pub elems: Vec<WeylElement>,
    index: HashMap<Vec<Gen>, usize>,
    down: Vec<Vec<u64>>,
}

impl WeakBall {
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn id_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w.word()).copied()
    }
    /// elems[i] <= elems[j] in the weak order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j][i / 64] >> (i % 64) & 1 == 1
    }
    pub fn downset(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.leq(i, j)).collect()
    }
}
