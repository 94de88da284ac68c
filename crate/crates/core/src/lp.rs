//! Exact rational simplex method.
//!
//! Two-phase primal simplex with Bland's rule, dense tableau, no tolerances.
//! Problems here are tiny (tens of variables), so the O(n^3)-per-pivot dense
//! update is fine.

use crate::{rat_one, rat_zero, Rat};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

/// Maximize `objective . x` subject to the constraints and `x >= 0`.
pub fn maximize(objective: &[Rat], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();

    // Columns: n structural, then one slack/surplus per inequality, then
    // artificials. Rows normalized to nonnegative rhs.
    let mut rows: Vec<(Vec<Rat>, Relation, Rat)> = constraints
        .iter()
        .map(|c| {
            assert_eq!(c.coeffs.len(), n);
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (
                    c.coeffs.iter().map(|x| -x.clone()).collect(),
                    flipped,
                    -c.rhs.clone(),
                )
            } else {
                (c.coeffs.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    let n_slack = rows
        .iter()
        .filter(|(_, r, _)| *r != Relation::Eq)
        .count();
    // Artificials are needed for Eq and Ge rows.
    let n_art = rows
        .iter()
        .filter(|(_, r, _)| *r != Relation::Le)
        .count();
    let total = n + n_slack + n_art;

    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut slack_idx = n;
    let mut art_idx = n + n_slack;
    for (coeffs, rel, rhs) in rows.drain(..) {
        let mut row = vec![rat_zero(); total + 1];
        row[..n].clone_from_slice(&coeffs);
        row[total] = rhs;
        match rel {
            Relation::Le => {
                row[slack_idx] = rat_one();
                basis.push(slack_idx);
                slack_idx += 1;
            }
            Relation::Ge => {
                row[slack_idx] = -rat_one();
                slack_idx += 1;
                row[art_idx] = rat_one();
                basis.push(art_idx);
                art_idx += 1;
            }
            Relation::Eq => {
                row[art_idx] = rat_one();
                basis.push(art_idx);
                art_idx += 1;
            }
        }
        tab.push(row);
    }

    // Phase 1: minimize sum of artificials, i.e. maximize -sum.
    if n_art > 0 {
        let mut obj = vec![rat_zero(); total];
        for j in n + n_slack..total {
            obj[j] = -rat_one();
        }
        let val = run_simplex(&mut tab, &mut basis, &obj, total);
        match val {
            Some(v) if v.is_zero() => {}
            Some(_) => return LpOutcome::Infeasible,
            None => unreachable!("phase 1 is bounded"),
        }
        // Pivot any artificial still in the basis out (degenerate), or drop its row.
        for r in 0..basis.len() {
            if basis[r] >= n + n_slack {
                if let Some(j) = (0..n + n_slack).find(|&j| !tab[r][j].is_zero()) {
                    pivot(&mut tab, &mut basis, r, j, total);
                }
            }
        }
    }

    // Phase 2.
    let mut obj = vec![rat_zero(); total];
    obj[..n].clone_from_slice(objective);
    // Forbid artificials from re-entering.
    let limit = n + n_slack;
    match run_simplex_limited(&mut tab, &mut basis, &obj, total, limit) {
        None => LpOutcome::Unbounded,
        Some(value) => {
            let mut point = vec![rat_zero(); n];
            for (r, &b) in basis.iter().enumerate() {
                if b < n {
                    point[b] = tab[r][total].clone();
                }
            }
            LpOutcome::Optimal { value, point }
        }
    }
}

/// Feasibility of `constraints` with `x >= 0`.
pub fn feasible(n_vars: usize, constraints: &[Constraint]) -> bool {
    matches!(
        maximize(&vec![rat_zero(); n_vars], constraints),
        LpOutcome::Optimal { .. }
    )
}

fn run_simplex(
    tab: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &[Rat],
    total: usize,
) -> Option<Rat> {
    run_simplex_limited(tab, basis, obj, total, obj.len())
}

/// Simplex iterations with entering variables restricted to indices `< limit`.
/// Returns the optimal objective value, or None when unbounded.
fn run_simplex_limited(
    tab: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &[Rat],
    total: usize,
    limit: usize,
) -> Option<Rat> {
    loop {
        // Reduced costs: c_j - c_B . B^-1 A_j (tableau is kept in canonical form).
        let mut entering = None;
        for j in 0..limit {
            if basis.contains(&j) {
                continue;
            }
            let mut red = obj[j].clone();
            for (r, &b) in basis.iter().enumerate() {
                if !obj[b].is_zero() && !tab[r][j].is_zero() {
                    let t = &obj[b] * &tab[r][j];
                    red = &red - &t;
                }
            }
            if red.is_positive() {
                entering = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(j) = entering else {
            let mut val = rat_zero();
            for (r, &b) in basis.iter().enumerate() {
                if !obj[b].is_zero() {
                    let t = &obj[b] * &tab[r][total];
                    val = &val + &t;
                }
            }
            return Some(val);
        };
        // Ratio test, Bland tie-break on basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..tab.len() {
            if tab[r][j].is_positive() {
                let ratio = &tab[r][total] / &tab[r][j];
                match &leave {
                    Some((lr, best)) => {
                        if ratio < *best || (ratio == *best && basis[r] < basis[*lr]) {
                            leave = Some((r, ratio));
                        }
                    }
                    None => leave = Some((r, ratio)),
                }
            }
        }
        let Some((r, _)) = leave else {
            return None;
        };
        pivot(tab, basis, r, j, total);
    }
}

fn pivot(tab: &mut [Vec<Rat>], basis: &mut [usize], r: usize, j: usize, total: usize) {
    let inv = tab[r][j].recip();
    for x in tab[r].iter_mut() {
        *x = &*x * &inv;
    }
    for i in 0..tab.len() {
        if i != r && !tab[i][j].is_zero() {
            let f = tab[i][j].clone();
            for c in 0..=total {
                let t = &tab[r][c] * &f;
                tab[i][c] = &tab[i][c] - &t;
            }
        }
    }
    basis[r] = j;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, rat};

    #[test]
    fn simple_max() {
        // max x + y st x + 2y <= 4, 3x + y <= 6
        let out = maximize(
            &[rat(1), rat(1)],
            &[
                Constraint {
                    coeffs: vec![rat(1), rat(2)],
                    relation: Relation::Le,
                    rhs: rat(4),
                },
                Constraint {
                    coeffs: vec![rat(3), rat(1)],
                    relation: Relation::Le,
                    rhs: rat(6),
                },
            ],
        );
        match out {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, frac(14, 5));
                assert_eq!(point, vec![frac(8, 5), frac(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible() {
        let out = maximize(
            &[rat(0)],
            &[
                Constraint {
                    coeffs: vec![rat(1)],
                    relation: Relation::Ge,
                    rhs: rat(2),
                },
                Constraint {
                    coeffs: vec![rat(1)],
                    relation: Relation::Le,
                    rhs: rat(1),
                },
            ],
        );
        assert!(matches!(out, LpOutcome::Infeasible));
    }

    #[test]
    fn unbounded() {
        let out = maximize(
            &[rat(1)],
            &[Constraint {
                coeffs: vec![rat(1)],
                relation: Relation::Ge,
                rhs: rat(0),
            }],
        );
        assert!(matches!(out, LpOutcome::Unbounded));
    }

    #[test]
    fn equality_system() {
        // x + y = 3, x - y = 1, feasible at (2,1)
        let out = maximize(
            &[rat(0), rat(0)],
            &[
                Constraint {
                    coeffs: vec![rat(1), rat(1)],
                    relation: Relation::Eq,
                    rhs: rat(3),
                },
                Constraint {
                    coeffs: vec![rat(1), rat(-1)],
                    relation: Relation::Eq,
                    rhs: rat(1),
                },
            ],
        );
        match out {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, vec![rat(2), rat(1)]),
            other => panic!("{other:?}"),
        }
    }
}
