//! Column-style Hermite normal form and integer linear systems.
//!
//! `H = M·U` with `U` unimodular. `H` is in lower column-echelon form: the
//! pivot of column `c` sits in row `pivot_rows[c]`, pivot rows strictly
//! increase, entries above a pivot are zero, pivots are positive, and entries
//! left of a pivot lie in `[0, pivot)`. Columns past the rank are zero.

use num::{BigInt, Integer, One, Signed, Zero};

use super::matrix::{IntMatrix, IntVector, QMatrix};
use super::rational::extended_gcd;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Row index holding the pivot of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Applies the column operation `(col_a, col_b) <- (col_a, col_b)·[[p, q], [r, s]]`.
fn combine_columns(m: &mut IntMatrix, a: usize, b: usize, t: [&BigInt; 4]) {
    let [p, q, r, s] = t;
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        let y = m[(i, b)].clone();
        m[(i, a)] = &x * p + &y * r;
        m[(i, b)] = &x * q + &y * s;
    }
}

/// `col_target -= factor * col_source`.
fn subtract_column(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for i in 0..m.rows() {
        let delta = &m[(i, source)] * factor;
        m[(i, target)] -= delta;
    }
}

fn negate_column(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        m[(i, c)] = -&m[(i, c)];
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();

    for i in 0..rows {
        let c = pivot_rows.len();
        if c == cols {
            break;
        }
        for k in c + 1..cols {
            if h[(i, k)].is_zero() {
                continue;
            }
            if h[(i, c)].is_zero() {
                h.swap_cols(c, k);
                u.swap_cols(c, k);
                continue;
            }
            let (a, b) = (h[(i, c)].clone(), h[(i, k)].clone());
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                subtract_column(&mut h, k, c, &q);
                subtract_column(&mut u, k, c, &q);
                continue;
            }
            let (g, x, y) = extended_gcd(&a, &b);
            let (bg, ag) = (-(&b / &g), &a / &g);
            combine_columns(&mut h, c, k, [&x, &bg, &y, &ag]);
            combine_columns(&mut u, c, k, [&x, &bg, &y, &ag]);
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            negate_column(&mut h, c);
            negate_column(&mut u, c);
        }
        let pivot = h[(i, c)].clone();
        for k in 0..c {
            let q = h[(i, k)].div_floor(&pivot);
            if !q.is_zero() {
                subtract_column(&mut h, k, c, &q);
                subtract_column(&mut u, k, c, &q);
            }
        }
        pivot_rows.push(i);
    }
    HermiteForm { h, u, pivot_rows }
}

/// All integer solutions of `M·r = b`: `particular + span_Z(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: IntVector,
    pub kernel: Vec<IntVector>,
}

/// Flip the sign so the first nonzero entry is positive.
fn sign_normalize(mut v: IntVector) -> IntVector {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    v
}

pub fn integer_solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<IntegerSolution>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let form = hermite_normal_form(m);
    let rank = form.rank();
    let mut y: IntVector = vec![BigInt::zero(); m.cols()];
    let mut next_pivot = 0;
    for (i, rhs) in b.iter().enumerate() {
        let known = next_pivot;
        let partial = (0..known).fold(BigInt::zero(), |acc, c| acc + &form.h[(i, c)] * &y[c]);
        if next_pivot < rank && form.pivot_rows[next_pivot] == i {
            let residual = rhs - partial;
            let pivot = &form.h[(i, next_pivot)];
            if !residual.is_multiple_of(pivot) {
                return Ok(None);
            }
            y[next_pivot] = residual / pivot;
            next_pivot += 1;
        } else if &partial != rhs {
            return Ok(None);
        }
    }
    let particular = form.u.mul_vec(&y)?;
    let mut kernel: Vec<IntVector> = (rank..m.cols()).map(|c| form.u.column(c)).collect();
    size_reduce(&mut kernel);
    let kernel = kernel.into_iter().map(sign_normalize).collect();
    Ok(Some(IntegerSolution { particular, kernel }))
}

fn norm_key(v: &[BigInt]) -> (BigInt, BigInt) {
    let max = v.iter().map(|x| x.abs()).max().unwrap_or_default();
    let l1 = v.iter().map(|x| x.abs()).sum();
    (max, l1)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

/// `v - t·k` with `t` the nearest integer to the projection coefficient.
/// Returns false when `t = 0`; otherwise the euclidean norm strictly drops.
fn project_out(v: &mut IntVector, k: &[BigInt]) -> bool {
    let kk = dot(k, k);
    if kk.is_zero() {
        return false;
    }
    let t = round_div(&dot(v, k), &kk);
    if t.is_zero() {
        return false;
    }
    for (x, y) in v.iter_mut().zip(k) {
        *x -= &t * y;
    }
    true
}

/// Pairwise size reduction of a lattice basis until no vector can be
/// shortened by another. Spans the same lattice.
fn size_reduce(basis: &mut [IntVector]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j {
                    let k = basis[j].clone();
                    changed |= project_out(&mut basis[i], &k);
                }
            }
        }
    }
}

/// Shrinks `v` by adding integer multiples of kernel vectors: rounded
/// projections first, then unit steps while the (max-norm, l1-norm) pair
/// strictly decreases. Deterministic; the result is a local minimum, not
/// necessarily the shortest representative.
pub fn reduce_modulo_kernel(mut v: IntVector, kernel: &[IntVector]) -> IntVector {
    let mut kernel = kernel.to_vec();
    size_reduce(&mut kernel);
    let mut moved = true;
    while moved {
        moved = false;
        for k in &kernel {
            moved |= project_out(&mut v, k);
        }
    }
    let mut best = norm_key(&v);
    loop {
        let mut improved = false;
        for k in &kernel {
            for sign in [1i32, -1] {
                loop {
                    let candidate: IntVector = if sign > 0 {
                        v.iter().zip(k).map(|(a, b)| a + b).collect()
                    } else {
                        v.iter().zip(k).map(|(a, b)| a - b).collect()
                    };
                    let key = norm_key(&candidate);
                    if key < best {
                        best = key;
                        v = candidate;
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !improved {
            return v;
        }
    }
}

/// Unimodular matrix whose last column is the primitive vector `c`.
pub fn complete_to_unimodular(c: &[BigInt]) -> Result<IntMatrix> {
    let d = c.len();
    let row = IntMatrix::from_vec(1, d, c.to_vec())?;
    let form = hermite_normal_form(&row);
    if form.rank() != 1 || !form.h[(0, 0)].is_one() {
        return Err(Error::NotPrimitive);
    }
    // c^T·V = e_1^T, so the first row of V^{-1} is c^T.
    let w = QMatrix::from_int(&form.u)
        .inverse()?
        .to_int()
        .expect("inverse of a unimodular matrix is integral");
    let wt = w.transpose();
    Ok(IntMatrix::from_fn(d, d, |i, j| wt[(i, (j + 1) % d)].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn iv(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        let f = hermite_normal_form(&id);
        assert_eq!((f.h, f.u), (id.clone(), id));

        let f = hermite_normal_form(&im(&[&[2, 4]]));
        assert_eq!(f.h, im(&[&[2, 0]]));
        assert_eq!(f.u, im(&[&[1, -2], &[0, 1]]));

        let d = im(&[&[2, 0], &[0, 3]]);
        let f = hermite_normal_form(&d);
        assert_eq!(f.h, d);
        assert_eq!(f.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_reduces_left_of_pivot() {
        let m = im(&[&[3, 1], &[5, 7]]);
        let f = hermite_normal_form(&m);
        assert_eq!(m.mul_mat(&f.u).unwrap(), f.h);
        assert!(f.u.is_unimodular());
        assert_eq!(f.h[(0, 1)], BigInt::zero());
        assert!(f.h[(1, 0)] >= BigInt::zero() && f.h[(1, 0)] < f.h[(1, 1)]);
    }

    #[test]
    fn solve_examples() {
        let s = integer_solve(&im(&[&[2, 0], &[0, 3]]), &iv(&[4, 9]))
            .unwrap()
            .unwrap();
        assert_eq!(s.particular, iv(&[2, 3]));
        assert!(s.kernel.is_empty());

        let s = integer_solve(&im(&[&[2, 4]]), &iv(&[6])).unwrap().unwrap();
        assert_eq!(s.particular, iv(&[3, 0]));
        assert_eq!(s.kernel, vec![iv(&[2, -1])]);

        assert_eq!(integer_solve(&im(&[&[2, 4]]), &iv(&[3])).unwrap(), None);
    }

    #[test]
    fn solve_rejects_wrong_rhs_length() {
        assert!(integer_solve(&im(&[&[2, 4]]), &iv(&[1, 2])).is_err());
    }

    #[test]
    fn inconsistent_rank_deficient_system() {
        // rows 2 and 1 are proportional but the right-hand sides are not
        let m = im(&[&[1, 2], &[2, 4]]);
        assert_eq!(integer_solve(&m, &iv(&[1, 3])).unwrap(), None);
        let s = integer_solve(&m, &iv(&[1, 2])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&s.particular).unwrap(), iv(&[1, 2]));
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn completion_has_requested_last_column() {
        for c in [iv(&[1, -1]), iv(&[0, 1]), iv(&[3, 5, 7]), iv(&[6, 10, 15])] {
            let u = complete_to_unimodular(&c).unwrap();
            assert!(u.is_unimodular());
            assert_eq!(u.column(c.len() - 1), c);
        }
        assert!(complete_to_unimodular(&iv(&[2, 4])).is_err());
    }

    #[test]
    fn reduction_stays_in_coset() {
        let kernel = vec![iv(&[2, -1])];
        let r = reduce_modulo_kernel(iv(&[13, -5]), &kernel);
        // (13,-5) - 4*(2,-1) = (5,-1) -> max 5 ; -5*(2,-1) = (3,0) -> max 3 ; -6 -> (1,1)
        assert_eq!(r, iv(&[1, 1]));
    }

    #[test]
    fn reduction_jumps_over_far_cosets() {
        let far = BigInt::from(10).pow(15u32);
        let v = vec![&far + 2, &far - 1];
        // an unreduced kernel basis: the second vector is 882 times the first plus e_1
        let kernel = vec![iv(&[1, 1]), iv(&[883, 882])];
        let r = reduce_modulo_kernel(v, &kernel);
        assert!(r.iter().all(|x| x.abs() <= BigInt::from(1)), "{r:?}");
    }
}
