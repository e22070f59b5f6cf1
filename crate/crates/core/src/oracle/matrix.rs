//! Dense matrices over a [`Field`] and the fat-point condition matrix.

use super::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    rows: Vec<Vec<F>>,
    cols: usize,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: Vec<Vec<F>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.rows[i]
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = a[rank][col].inv().expect("nonzero pivot is invertible");
            let pivot_row: Vec<F> = a[rank].iter().map(|v| v.clone() * inv.clone()).collect();
            for row in a.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *v = v.clone() - factor.clone() * p.clone();
                }
            }
            a[rank] = pivot_row;
            rank += 1;
            if rank == a.len() {
                break;
            }
        }
        rank
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Exponents `(a, b)` of the affine monomials `x^a y^b`, `a + b ≤ d`,
/// by total degree.
pub fn monomials(d: u32) -> Vec<(u32, u32)> {
    (0..=d)
        .flat_map(|t| (0..=t).rev().map(move |a| (a, t - a)))
        .collect()
}

/// Rows: for each point `(u, v)` with multiplicity `m` and each `i + j < m`,
/// the coefficient of `x^i y^j` in `f(x + u, y + v)` as a linear form in the
/// coefficients of `f`, namely `C(a,i) C(b,j) u^(a-i) v^(b-j)` on column
/// `x^a y^b`. Binomials are built by Pascal's rule inside the field.
pub fn condition_matrix<F: Field>(
    d: u32,
    multiplicities: &[u32],
    points: &[(F, F)],
    context: &F,
) -> Matrix<F> {
    assert_eq!(multiplicities.len(), points.len(), "one multiplicity per point");
    let cols = monomials(d);
    let n = d as usize;
    let zero = context.embed(0);
    let one = context.embed(1);

    let mut binom = vec![vec![zero.clone(); n + 1]; n + 1];
    for a in 0..=n {
        binom[a][0] = one.clone();
        for i in 1..=a {
            binom[a][i] = binom[a - 1][i - 1].clone() + binom[a - 1][i].clone();
        }
    }
    let powers = |base: &F| {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = one.clone();
        for _ in 0..=n {
            out.push(acc.clone());
            acc = acc * base.clone();
        }
        out
    };

    let mut rows = Vec::new();
    for (&mult, (u, v)) in multiplicities.iter().zip(points) {
        let pu = powers(u);
        let pv = powers(v);
        for total in 0..mult {
            for i in (0..=total).rev() {
                let j = total - i;
                let row = cols
                    .iter()
                    .map(|&(a, b)| {
                        if a < i || b < j {
                            zero.clone()
                        } else {
                            let (a, b, i, j) = (a as usize, b as usize, i as usize, j as usize);
                            binom[a][i].clone()
                                * binom[b][j].clone()
                                * pu[a - i].clone()
                                * pv[b - j].clone()
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    Matrix::new(rows, cols.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::field::{ModP, DEFAULT_PRIME};
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(0), vec![(0, 0)]);
        assert_eq!(monomials(2), vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
        assert_eq!(monomials(5).len(), 21);
    }

    #[test]
    fn rank_over_rationals() {
        let a = Matrix::new(
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]],
            3,
        );
        assert_eq!(a.rank(), 2);
        assert_eq!(a.kernel_dimension(), 1);
        let empty: Matrix<Rational> = Matrix::new(vec![], 4);
        assert_eq!(empty.kernel_dimension(), 4);
    }

    #[test]
    fn taylor_rows_match_direct_derivatives() {
        // f = x^2 y at (u, v) = (2, 3): f(2,3) = 12, ∂x f = 2xy = 12, ∂y f = x^2 = 4
        let ctx = q(0);
        let a = condition_matrix(3, &[2], &[(q(2), q(3))], &ctx);
        let cols = monomials(3);
        let idx = cols.iter().position(|&e| e == (2, 1)).unwrap();
        assert_eq!(a.row(0)[idx], q(12));
        assert_eq!(a.row(1)[idx], q(12));
        assert_eq!(a.row(2)[idx], q(4));
    }

    #[test]
    fn rational_and_modular_ranks_agree() {
        // integer points in general enough position
        let pts = [(0i64, 1i64), (2, 7), (5, 3), (11, 4), (3, 13), (8, 9), (17, 2)];
        let mults = [2u32, 2, 1, 1, 1, 1, 1];
        let rat: Vec<(Rational, Rational)> = pts.iter().map(|&(u, v)| (q(u), q(v))).collect();
        let modp: Vec<(ModP, ModP)> = pts
            .iter()
            .map(|&(u, v)| (ModP::new(u as u64, DEFAULT_PRIME), ModP::new(v as u64, DEFAULT_PRIME)))
            .collect();
        for d in 0..6 {
            let a = condition_matrix(d, &mults, &rat, &q(0));
            let b = condition_matrix(d, &mults, &modp, &ModP::new(0, DEFAULT_PRIME));
            assert_eq!(a.rank(), b.rank(), "degree {d}");
        }
    }

    #[test]
    fn characteristic_is_handled_by_pascal_binomials() {
        // in F_3, C(3,1) = 0: the row for ∂x at a point kills x^3's linear term
        let p = 3;
        let ctx = ModP::new(0, p);
        let a = condition_matrix(2, &[2], &[(ModP::new(1, p), ModP::new(1, p))], &ctx);
        assert_eq!(a.rows(), 3);
        assert_eq!(a.cols(), 6);
    }
}
