//! Small dense integer matrices: products, characteristic polynomials and
//! Smith normal form with transforms.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cyclotomic::Rational;
use crate::qpoly::QPoly;

/// Row-major integer matrix. Matrices acting on lattices use the column
/// convention: column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds from rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMat { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = IntMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a != 0 {
                    for j in 0..o.cols {
                        m[(i, j)] += a * o[(k, j)];
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn add(&self, o: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &IntMat) -> IntMat {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, c: i64) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMat::identity(self.rows)
    }

    /// Multiplicative order, if finite and at most `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Inverse of a finite-order matrix, as its power of order minus one.
    pub fn finite_order_inverse(&self) -> Option<IntMat> {
        let n = self.order(720)?;
        let mut p = IntMat::identity(self.rows);
        for _ in 1..n {
            p = p.mul(self);
        }
        Some(p)
    }

    /// Characteristic polynomial `det(q I - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> QPoly {
        assert!(self.is_square());
        charpoly_rational(&self.to_rational())
    }

    pub fn det(&self) -> i64 {
        let cp = self.charpoly();
        let n = self.rows;
        let c0 = cp.coeff(0);
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let v = c0.to_integer() * sign;
        i64::try_from(v).expect("determinant fits in i64")
    }

    fn to_rational(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&a| Rational::from_integer(a.into())).collect()).collect()
    }

    /// Basis (as columns) of the rational kernel, scaled to integer vectors.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let mut a = self.to_rational();
        let (r, c) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else { continue };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..r {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..c {
                        let d = &f * &a[row][j];
                        a[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == r {
                break;
            }
        }
        let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); c];
                v[f] = Rational::from_integer(1.into());
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[k][f].clone();
                }
                let den = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
                v.iter().map(|x| i64::try_from((x * Rational::from_integer(den.clone())).to_integer()).expect("small kernel")).collect()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_rows().iter().map(|r| format!("{r:?}")).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `det(q I - A)` for a square rational matrix.
pub fn charpoly_rational(a: &[Vec<Rational>]) -> QPoly {
    let n = a.len();
    let zero = Rational::zero();
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = Rational::from_integer(1.into());
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    let mut m = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        let mut next = matmul_rat(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul_rat(a, &m);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    QPoly::new(coeffs)
}

fn matmul_rat(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

/// Smith normal form `U M V = D` with `U`, `V` unimodular and `D` diagonal,
/// nonnegative, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub diag: Vec<i128>,
}

pub fn smith_normal_form(m: &IntMat) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Vec<Vec<i128>> = m.to_rows().iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut u = ident128(r);
    let mut v = ident128(c);
    let mut t = 0;
    while t < r.min(c) {
        // choose the smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..r {
            let f = a[i][t] / a[t][t];
            if f != 0 {
                row_axpy(&mut a, i, t, -f);
                row_axpy(&mut u, i, t, -f);
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..c {
            let f = a[t][j] / a[t][t];
            if f != 0 {
                col_axpy(&mut a, j, t, -f);
                col_axpy(&mut v, j, t, -f);
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility into the rest of the block
        let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % a[t][t] != 0));
        if let Some(i) = bad {
            row_axpy(&mut a, t, i, 1);
            row_axpy(&mut u, t, i, 1);
            continue;
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diag = (0..r.min(c)).map(|i| a[i][i]).collect();
    Smith { u, v, diag }
}

fn ident128(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn swap_cols(a: &mut [Vec<i128>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += f * row_k
fn row_axpy(a: &mut [Vec<i128>], i: usize, k: usize, f: i128) {
    let rk = a[k].clone();
    for (x, y) in a[i].iter_mut().zip(rk) {
        *x += f * y;
    }
}

/// col_j += f * col_k
fn col_axpy(a: &mut [Vec<i128>], j: usize, k: usize, f: i128) {
    for row in a.iter_mut() {
        row[j] += f * row[k];
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<i128>]) -> Option<Vec<Vec<i128>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
            r.extend((0..n).map(|_| Rational::zero()));
            r
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = Rational::from_integer(1.into());
    }
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..2 * n {
                    let d = &f * &a[col][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| if x.is_integer() { i128::try_from(x.to_integer()).ok() } else { None })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMat {
        IntMat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn charpoly_small() {
        assert_eq!(mat(&[&[-1]]).charpoly(), QPoly::from_ints(&[1, 1]));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).charpoly(), QPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(mat(&[&[2, 1], &[1, 3]]).det(), 5);
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&mat(&[&[4, 0], &[0, 6]]));
        assert_eq!(s.diag, vec![2, 12]);
        let s = smith_normal_form(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn kernel_basis() {
        let k = mat(&[&[1, -1]]).kernel();
        assert_eq!(k, vec![vec![1, 1]]);
    }

    fn to128(m: &IntMat) -> Vec<Vec<i128>> {
        m.to_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
    }

    fn mul128(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        a.iter()
            .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, bk)| x * bk[j]).sum()).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn smith_is_a_factorization(entries in prop::collection::vec(-9i64..10, 9)) {
            let m = IntMat::from_rows(&entries.chunks(3).map(|c| c.to_vec()).collect::<Vec<_>>());
            let s = smith_normal_form(&m);
            let d = mul128(&mul128(&s.u, &to128(&m)), &s.v);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
                }
            }
            for w in s.diag.windows(2) {
                prop_assert!(w[0] >= 0 && (w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0));
            }
            prop_assert!(unimodular_inverse(&s.u).is_some());
            prop_assert!(unimodular_inverse(&s.v).is_some());
            let prod: i128 = s.diag.iter().product();
            prop_assert_eq!(prod, (m.det() as i128).abs());
        }

        #[test]
        fn charpoly_constant_term_is_signed_det(entries in prop::collection::vec(-5i64..6, 4)) {
            let m = IntMat::from_rows(&[entries[..2].to_vec(), entries[2..].to_vec()]);
            let expect = entries[0] * entries[3] - entries[1] * entries[2];
            prop_assert_eq!(m.det(), expect);
        }
    }
}
