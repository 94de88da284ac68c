//! Rank bookkeeping for K3 Picard lattices: the hyperbolic plane U plus
//! negative-definite ADE root lattices from singular fibers, plus the
//! Mordell-Weil contribution. Gram matrices use the negated Cartan matrices.

use crate::elliptic::FiberType;
use crate::matrix;
use crate::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RootLattice {
    A(usize),
    D(usize),
    E(usize),
}

impl RootLattice {
    pub fn rank(&self) -> usize {
        match self {
            RootLattice::A(n) | RootLattice::D(n) | RootLattice::E(n) => *n,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RootLattice::A(n) => format!("A_{n}"),
            RootLattice::D(n) => format!("D_{n}"),
            RootLattice::E(n) => format!("E_{n}"),
        }
    }

    /// Dynkin diagram edges on nodes 0..rank.
    fn edges(&self) -> Vec<(usize, usize)> {
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1));
        match *self {
            RootLattice::A(n) => chain(n).collect(),
            RootLattice::D(n) => {
                assert!(n >= 4, "D_n needs n >= 4");
                let mut e: Vec<_> = chain(n - 1).collect();
                e.push((n - 3, n - 1));
                e
            }
            RootLattice::E(n) => {
                assert!((6..=8).contains(&n), "E_n needs n in 6..8");
                let mut e: Vec<_> = chain(n - 1).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Negated Cartan matrix: -2 on the diagonal, +1 per diagram edge.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
        }
        for (i, j) in self.edges() {
            g[i][j] = 1;
            g[j][i] = 1;
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSLattice {
    pub summands: Vec<RootLattice>,
    pub mw_rank: usize,
    /// Orders of the cyclic torsion factors of the Mordell-Weil group.
    pub mw_torsion: Vec<usize>,
}

impl NSLattice {
    pub fn new(summands: Vec<RootLattice>, mw_rank: usize, mw_torsion: Vec<usize>) -> Self {
        NSLattice {
            summands,
            mw_rank,
            mw_torsion,
        }
    }

    pub fn rank(&self) -> usize {
        2 + self.summands.iter().map(|s| s.rank()).sum::<usize>() + self.mw_rank
    }

    /// Block-diagonal Gram of the explicit part U + summands (Mordell-Weil
    /// generators carry no canonical Gram data here).
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = 2 + self.summands.iter().map(|s| s.rank()).sum::<usize>();
        let mut g = vec![vec![0i64; n]; n];
        g[0][1] = 1;
        g[1][0] = 1;
        let mut off = 2;
        for s in &self.summands {
            let block = s.gram();
            for i in 0..s.rank() {
                for j in 0..s.rank() {
                    g[off + i][off + j] = block[i][j];
                }
            }
            off += s.rank();
        }
        g
    }

    /// Signature (positive, negative) of the explicit Gram block.
    pub fn signature(&self) -> (usize, usize) {
        let g: Vec<Vec<Rat>> = self
            .gram_matrix()
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        symmetric_signature(&g)
    }

    /// Determinant of the explicit Gram block.
    pub fn discriminant(&self) -> BigInt {
        let d = matrix::det(
            &self
                .gram_matrix()
                .iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<Vec<Rat>>>(),
        );
        d.to_integer()
    }

    pub fn label(&self) -> String {
        let mut parts = vec!["U".to_string()];
        parts.extend(self.summands.iter().map(|s| s.label()));
        parts.join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label(),
            "rank": self.rank(),
            "mw_rank": self.mw_rank,
            "mw_torsion": self.mw_torsion,
            "signature": {
                "positive": self.signature().0,
                "negative": self.signature().1,
            },
            "discriminant": self.discriminant().to_string(),
        })
    }
}

/// Lattice spanned by U, the fiber root lattices, and the Mordell-Weil part.
pub fn assemble_lattice(
    fiber_types: &[FiberType],
    mw_rank: usize,
    mw_torsion: Vec<usize>,
) -> NSLattice {
    let summands = fiber_types
        .iter()
        .filter_map(|t| t.root_lattice())
        .collect();
    NSLattice::new(summands, mw_rank, mw_torsion)
}

/// Signature of a symmetric rational matrix by congruence reduction.
fn symmetric_signature(g: &[Vec<Rat>]) -> (usize, usize) {
    let n = g.len();
    let mut m: Vec<Vec<Rat>> = g.to_vec();
    let mut pos = 0;
    let mut neg = 0;
    let mut start = 0;
    while start < n {
        // find a nonzero diagonal entry at or after start
        let pivot = (start..n).find(|&i| !m[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // all diagonal zero: find off-diagonal nonzero and merge
                let mut found = None;
                'outer: for i in start..n {
                    for j in i + 1..n {
                        if !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break; // remaining block is zero
                };
                // row/col add to create a nonzero diagonal entry at i
                for k in 0..n {
                    let t = m[j][k].clone();
                    m[i][k] = &m[i][k] + &t;
                }
                for k in 0..n {
                    let t = m[k][j].clone();
                    m[k][i] = &m[k][i] + &t;
                }
                continue;
            }
        };
        m.swap(start, pivot);
        for row in m.iter_mut() {
            row.swap(start, pivot);
        }
        let d = m[start][start].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in start + 1..n {
            if m[i][start].is_zero() {
                continue;
            }
            let f = &m[i][start] / &d;
            for k in 0..n {
                let t = &m[start][k] * &f;
                m[i][k] = &m[i][k] - &t;
            }
            for k in 0..n {
                let t = &m[k][start] * &f;
                m[k][i] = &m[k][i] - &t;
            }
        }
        start += 1;
    }
    (pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane() {
        let l = NSLattice::new(vec![], 0, vec![]);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.gram_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(l.signature(), (1, 1));
        assert_eq!(l.discriminant(), BigInt::from(-1));
    }

    #[test]
    fn single_roots() {
        assert_eq!(RootLattice::A(1).gram(), vec![vec![-2]]);
        assert_eq!(
            RootLattice::A(2).gram(),
            vec![vec![-2, 1], vec![1, -2]]
        );
        // |det Cartan|: A_n -> n+1, D_n -> 4, E_6 -> 3, E_7 -> 2, E_8 -> 1
        let cartan_det = |l: RootLattice| {
            let g: Vec<Vec<Rat>> = l
                .gram()
                .iter()
                .map(|r| r.iter().map(|&x| rat(-x)).collect())
                .collect();
            matrix::det(&g).to_integer()
        };
        assert_eq!(cartan_det(RootLattice::A(5)), BigInt::from(6));
        assert_eq!(cartan_det(RootLattice::D(5)), BigInt::from(4));
        assert_eq!(cartan_det(RootLattice::D(10)), BigInt::from(4));
        assert_eq!(cartan_det(RootLattice::E(6)), BigInt::from(3));
        assert_eq!(cartan_det(RootLattice::E(7)), BigInt::from(2));
        assert_eq!(cartan_det(RootLattice::E(8)), BigInt::from(1));
    }

    #[test]
    fn named_rank_19_lattices() {
        let combos = [
            vec![RootLattice::E(7), RootLattice::D(10)],
            vec![RootLattice::E(6), RootLattice::A(11)],
            vec![RootLattice::E(6), RootLattice::E(6), RootLattice::A(5)],
            vec![RootLattice::A(7), RootLattice::D(5), RootLattice::D(5)],
        ];
        for summands in combos {
            let l = NSLattice::new(summands, 0, vec![]);
            assert_eq!(l.rank(), 19);
            assert_eq!(l.signature(), (1, 18));
        }
    }

    #[test]
    fn mordell_weil_contribution() {
        let l = NSLattice::new(
            vec![RootLattice::D(6), RootLattice::D(5), RootLattice::A(5)],
            1,
            vec![2],
        );
        assert_eq!(l.rank(), 19);
        assert_eq!(l.label(), "U + D_6 + D_5 + A_5");
        // signature only sees the explicit block
        assert_eq!(l.signature(), (1, 17));
    }

    #[test]
    fn assemble_from_fibers() {
        let fibers = [
            FiberType::IVStar,
            FiberType::IVStar,
            FiberType::I(6),
            FiberType::I(1),
            FiberType::I(1),
        ];
        let l = assemble_lattice(&fibers, 0, vec![]);
        assert_eq!(
            l.summands,
            vec![RootLattice::E(6), RootLattice::E(6), RootLattice::A(5)]
        );
        assert_eq!(l.rank(), 19);
    }
}
