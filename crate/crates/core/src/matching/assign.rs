//! One-to-one pairing of two contour sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve_core::InvariantSignature;
use crate::error::{Error, Result};

use super::align::{best_alignment_with, AlignConfig, AlignmentResult};
use super::descriptor::{descriptor_distance, ContourDescriptor};

/// Environment variable capping the worker threads used for pairwise costs.
pub const THREADS_ENV: &str = "CENTROAFFINE_THREADS";

#[derive(Clone, Debug)]
pub struct MatchItem {
    pub descriptor: ContourDescriptor,
    pub signature: InvariantSignature,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assignment {
    /// Repeatedly take the cheapest remaining pair.
    #[default]
    Greedy,
    /// Minimum total cost (Hungarian method).
    Optimal,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchConfig {
    pub assignment: Assignment,
    pub align: AlignConfig,
}

#[derive(Clone, Debug)]
pub struct MatchedPair {
    pub a: usize,
    pub b: usize,
    pub cost: f64,
    pub alignment: AlignmentResult,
}

#[derive(Clone, Debug)]
pub struct MatchOutcome {
    pub pairs: Vec<MatchedPair>,
    pub unmatched_a: Vec<usize>,
    pub unmatched_b: Vec<usize>,
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

/// Pairs contours of `set_a` with contours of `set_b`. The cost of a pair is
/// the descriptor distance plus the alignment objective of the signatures.
pub fn match_contours(set_a: &[MatchItem], set_b: &[MatchItem], cfg: &MatchConfig) -> Result<MatchOutcome> {
    if set_a.is_empty() || set_b.is_empty() {
        return Err(Error::NoMatch("both contour sets must be nonempty".into()));
    }
    let (na, nb) = (set_a.len(), set_b.len());
    let compute = || -> Vec<Result<(f64, AlignmentResult)>> {
        (0..na * nb)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / nb, k % nb);
                let al = best_alignment_with(&set_a[i].signature, &set_b[j].signature, &cfg.align)?;
                Ok((descriptor_distance(&set_a[i].descriptor, &set_b[j].descriptor) + al.objective, al))
            })
            .collect()
    };
    let results = match thread_count() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };
    // a pair whose signatures cannot be aligned is simply not a candidate
    let mut cost = vec![f64::INFINITY; na * nb];
    let mut aligns: Vec<Option<AlignmentResult>> = vec![None; na * nb];
    for (k, r) in results.into_iter().enumerate() {
        if let Ok((c, al)) = r {
            cost[k] = c;
            aligns[k] = Some(al);
        }
    }
    let chosen = match cfg.assignment {
        Assignment::Greedy => greedy(&cost, na, nb),
        Assignment::Optimal => hungarian(&cost, na, nb),
    };
    let pairs: Vec<MatchedPair> = chosen
        .into_iter()
        .filter(|&(i, j)| cost[i * nb + j].is_finite())
        .map(|(i, j)| MatchedPair {
            a: i,
            b: j,
            cost: cost[i * nb + j],
            alignment: aligns[i * nb + j].clone().expect("finite cost has an alignment"),
        })
        .collect();
    if pairs.is_empty() {
        return Err(Error::NoMatch("no pair of signatures could be aligned".into()));
    }
    let unmatched_a = (0..na).filter(|i| !pairs.iter().any(|p| p.a == *i)).collect();
    let unmatched_b = (0..nb).filter(|j| !pairs.iter().any(|p| p.b == *j)).collect();
    Ok(MatchOutcome { pairs, unmatched_a, unmatched_b })
}

/// Cheapest-first pairing; ties go to the smaller row, then column.
pub fn greedy(cost: &[f64], na: usize, nb: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..na * nb).filter(|&k| cost[k].is_finite()).collect();
    order.sort_by(|&x, &y| cost[x].total_cmp(&cost[y]).then(x.cmp(&y)));
    let mut used_a = vec![false; na];
    let mut used_b = vec![false; nb];
    let mut out = Vec::new();
    for k in order {
        let (i, j) = (k / nb, k % nb);
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            out.push((i, j));
        }
    }
    out.sort_unstable();
    out
}

/// Minimum-cost assignment of a rectangular cost matrix (row-major,
/// `na × nb`). Infinite entries are replaced by a large finite penalty.
pub fn hungarian(cost: &[f64], na: usize, nb: usize) -> Vec<(usize, usize)> {
    let finite_max = cost.iter().filter(|c| c.is_finite()).fold(0.0f64, |m, c| m.max(c.abs()));
    let big = (finite_max + 1.0) * (na.max(nb) as f64 + 1.0);
    let transpose = na > nb;
    let (n, m) = if transpose { (nb, na) } else { (na, nb) };
    let at = |i: usize, j: usize| {
        let c = if transpose { cost[j * nb + i] } else { cost[i * nb + j] };
        if c.is_finite() {
            c
        } else {
            big
        }
    };
    // potentials method, 1-based with a virtual column 0
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out: Vec<(usize, usize)> = (1..=m)
        .filter(|&j| p[j] != 0)
        .map(|j| if transpose { (j - 1, p[j] - 1) } else { (p[j] - 1, j - 1) })
        .collect();
    out.sort_unstable();
    out
}
