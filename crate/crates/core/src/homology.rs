//! Reduced simplicial homology of order complexes, over the integers.
//!
//! Boundary matrices of the chain complex of a poset's order complex are put
//! into Smith normal form with arbitrary-precision entries, so ranks and
//! torsion are exact.

use crate::error::{Error, Result};
use crate::poset::FinPoset;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const NONZERO_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub dim: usize,
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Diagonal of the Smith normal form (nonzero entries, in divisibility order).
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag: Vec<BigUint> = vec![];
    let mut t = 0;
    loop {
        // find a nonzero entry of minimal absolute value in the t.. submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        // clear row and column t by remainder steps
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                for j in t..cols {
                    let sub = &q * &m[t][j];
                    m[i][j] -= sub;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i); // remainder is smaller; repeat
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                for i in t..rows {
                    let sub = &q * &m[i][t];
                    m[i][j] -= sub;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
        }
        // enforce divisibility: pivot must divide the rest of the submatrix
        let mut fixed = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if (&m[i][j] % &m[t][t]).is_zero() {
                    continue;
                }
                for jj in t..cols {
                    let add = m[i][jj].clone();
                    m[t][jj] += add;
                }
                fixed = true;
                break 'scan;
            }
        }
        if fixed {
            continue; // redo elimination at the same position
        }
        diag.push(m[t][t].abs().to_biguint().unwrap());
        t += 1;
        if t >= rows || t >= cols {
            break;
        }
    }
    diag
}

/// Reduced homology of the order complex in dimensions 0..=max_dim.
pub fn nerve_homology<T>(p: &FinPoset<T>, max_dim: usize) -> Result<Vec<HomologyGroup>> {
    // chains with k+1 elements are the k-simplices; we need them up to
    // dimension max_dim + 1 for the image part of H_{max_dim}
    let chains = p.chains(max_dim + 2);
    let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![vec![]; max_dim + 2];
    for c in &chains {
        by_dim[c.len() - 1].push(c);
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> = by_dim
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &c)| (c, i)).collect())
        .collect();
    let nonzeros: usize = by_dim
        .iter()
        .enumerate()
        .map(|(k, v)| v.len() * (k + 1))
        .sum();
    if nonzeros > NONZERO_CAP {
        return Err(Error::SizeLimit(format!(
            "boundary matrices have {nonzeros} nonzeros, cap is {NONZERO_CAP}"
        )));
    }
    // boundary_k: C_k -> C_{k-1}, as dense integer matrices; C_{-1} = Z with
    // the augmentation in position 0 (reduced homology)
    let boundary = |k: usize| -> Vec<Vec<BigInt>> {
        let srcs = &by_dim[k];
        if k == 0 {
            return vec![srcs.iter().map(|_| BigInt::from(1)).collect()];
        }
        let dst_index = &index[k - 1];
        let mut m = vec![vec![BigInt::zero(); srcs.len()]; by_dim[k - 1].len()];
        for (col, c) in srcs.iter().enumerate() {
            for drop in 0..c.len() {
                let mut face: Vec<usize> = (*c).clone();
                face.remove(drop);
                let row = dst_index[&face];
                m[row][col] += if drop % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    };
    let mut ranks = vec![0usize; max_dim + 3];
    let mut torsions: Vec<Vec<BigUint>> = vec![vec![]; max_dim + 3];
    for k in 0..=max_dim + 1 {
        if by_dim[k].is_empty() {
            continue;
        }
        let d = smith_diagonal(boundary(k));
        ranks[k] = d.len();
        torsions[k] = d.into_iter().filter(|u| *u > BigUint::from(1u8)).collect();
    }
    let mut out = vec![];
    for k in 0..=max_dim {
        let ck = by_dim[k].len();
        let rank = ck.saturating_sub(ranks[k]).saturating_sub(ranks[k + 1]);
        out.push(HomologyGroup {
            dim: k,
            rank,
            torsion: torsions[k + 1].clone(),
        });
    }
    Ok(out)
}

/// True when the poset is nonempty and all listed reduced groups vanish.
pub fn homology_trivial(groups: &[HomologyGroup], poset_len: usize) -> bool {
    poset_len > 0 && groups.iter().all(|g| g.is_trivial())
}
