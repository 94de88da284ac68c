//! Small exact linear algebra: Gaussian elimination over Q, integer kernels
//! via unimodular column reduction, determinants.
//!
//! Everything here is dense and sized for rank <= ~40 systems; clarity over
//! asymptotics.

use crate::{rat_one, rat_zero, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type RatMatrix = Vec<Vec<Rat>>;

/// Reduced row echelon form, in place. Returns the pivot column per row.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Unique(Vec<Rat>),
    /// System is consistent but underdetermined; the value is the kernel dimension.
    Underdetermined(usize),
    Inconsistent,
}

pub fn solve(a: &RatMatrix, b: &[Rat]) -> SolveOutcome {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return SolveOutcome::Inconsistent;
    }
    if pivots.len() < cols {
        return SolveOutcome::Underdetermined(cols - pivots.len());
    }
    let mut x = vec![rat_zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][cols].clone();
    }
    SolveOutcome::Unique(x)
}

/// Basis of the rational kernel of `a`.
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rat>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![rat_zero(); cols];
        v[free] = rat_one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: RatMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { rat_one() } else { rat_zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // a singular A still yields pivots in the identity half; require all n
    // pivots within the first n columns
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det(a: &RatMatrix) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = rat_one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return rat_zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let delta = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
    }
    d
}

pub fn det_i64(a: &[Vec<i64>]) -> BigInt {
    let m: RatMatrix = a
        .iter()
        .map(|r| r.iter().map(|&x| crate::rat(x)).collect())
        .collect();
    let d = det(&m);
    debug_assert!(d.is_integer());
    d.to_integer()
}

/// Basis of the integer kernel lattice `{ x in Z^n : A x = 0 }`, computed by
/// unimodular column operations. Deterministic.
pub fn int_kernel_basis(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    // Work on big integers: [A; I] columns, reduce A part to column echelon.
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| BigInt::from(a[i][j])).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let col_swap = |m: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize| {
        for row in m.iter_mut() {
            row.swap(c1, c2);
        }
        for row in u.iter_mut() {
            row.swap(c1, c2);
        }
    };
    // add q * column c1 to column c2
    let col_addmul =
        |m: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize, q: &BigInt| {
            for row in m.iter_mut() {
                let t = &row[c1] * q;
                row[c2] += t;
            }
            for row in u.iter_mut() {
                let t = &row[c1] * q;
                row[c2] += t;
            }
        };
    let mut lead = 0usize;
    for r in 0..rows {
        if lead == cols {
            break;
        }
        loop {
            // find column with nonzero entry in row r at or after `lead`
            let Some(c) = (lead..cols).find(|&c| !m[r][c].is_zero()) else {
                break;
            };
            col_swap(&mut m, &mut u, lead, c);
            // euclidean reduction across remaining columns
            let mut again = false;
            for c in lead + 1..cols {
                if !m[r][c].is_zero() {
                    let q = -(&m[r][c] / &m[r][lead]);
                    col_addmul(&mut m, &mut u, lead, c, &q);
                    if !m[r][c].is_zero() {
                        again = true;
                    }
                }
            }
            if !again {
                lead += 1;
                break;
            }
            // continue with the smallest remaining nonzero entry as pivot
            let best = (lead..cols)
                .filter(|&c| !m[r][c].is_zero())
                .min_by_key(|&c| m[r][c].abs())
                .unwrap();
            col_swap(&mut m, &mut u, lead, best);
        }
    }
    // kernel basis = columns of u past `lead`
    let mut basis: Vec<Vec<i64>> = (lead..cols)
        .map(|c| {
            (0..cols)
                .map(|i| i64::try_from(&u[i][c]).expect("kernel entry overflows i64"))
                .collect()
        })
        .collect();
    for v in basis.iter_mut() {
        normalize_sign(v);
    }
    basis.sort();
    basis
}

fn normalize_sign(v: &mut [i64]) {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        if first < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// Scale a rational vector to a primitive integer vector (direction preserved).
pub fn primitive_direction(v: &[Rat]) -> Vec<i64> {
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        g = BigInt::from(1);
    }
    ints.iter()
        .map(|x| i64::try_from(x / &g).expect("primitive direction overflows i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn solve_unique() {
        let a = rm(&[&[1, 2], &[3, 4]]);
        match solve(&a, &[rat(5), rat(11)]) {
            SolveOutcome::Unique(x) => assert_eq!(x, vec![rat(1), rat(2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solve_inconsistent_and_under() {
        let a = rm(&[&[1, 1], &[2, 2]]);
        assert!(matches!(
            solve(&a, &[rat(1), rat(3)]),
            SolveOutcome::Inconsistent
        ));
        assert!(matches!(
            solve(&a, &[rat(1), rat(2)]),
            SolveOutcome::Underdetermined(1)
        ));
    }

    #[test]
    fn det_and_inverse() {
        let a = rm(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        assert_eq!(det(&a), rat(24));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], crate::frac(1, 2));
        assert!(inverse(&rm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn integer_kernel() {
        // kernel of (1,1,1) is rank 2, generated by differences of basis vectors
        let k = int_kernel_basis(&[vec![1, 1, 1]]);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        // determinant-style sanity: (2,0) kernel in Z^2 is the y-axis
        let k = int_kernel_basis(&[vec![2, 0]]);
        assert_eq!(k, vec![vec![0, 1]]);
    }

    #[test]
    fn primitive_dir() {
        assert_eq!(
            primitive_direction(&[crate::frac(1, 2), crate::frac(-3, 4)]),
            vec![2, -3]
        );
        assert_eq!(primitive_direction(&[rat(0), rat(6), rat(-9)]), vec![0, 2, -3]);
    }
}
