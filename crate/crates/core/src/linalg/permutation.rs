use num::{One, Zero};

use super::matrix::{Matrix, QMatrix};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Permutation of `{0, ..., d-1}` stored as its image array.
///
/// The associated matrix `P` sends `e_i` to `e_{image[i]}`, so `P[image[i]][i] = 1`
/// and `(P·A)` has row `image[i]` equal to row `i` of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            image: (0..d).collect(),
        }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..d).collect();
        image.swap(a, b);
        Permutation { image }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    /// `self ∘ other`: first `other`, then `self`. Its matrix is `P_self · P_other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn matrix<T: Clone + Zero + One>(&self) -> Matrix<T> {
        let d = self.dim();
        Matrix::from_fn(d, d, |r, c| {
            if self.image[c] == r {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// `P·A` computed by moving rows.
    pub fn permute_rows<T: Clone>(&self, a: &Matrix<T>) -> Matrix<T> {
        let inv = self.inverse();
        Matrix::from_fn(a.rows(), a.cols(), |r, c| a[(inv.image[r], c)].clone())
    }

    /// `P·x` for a vector.
    pub fn permute_vec<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..x.len()).map(|r| x[inv.image[r]].clone()).collect()
    }

    /// All permutations of `{0..d-1}` in lexicographic order of image arrays.
    pub fn all_lexicographic(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..d).collect();
        loop {
            out.push(Permutation {
                image: current.clone(),
            });
            if !next_permutation(&mut current) {
                return out;
            }
        }
    }

    pub fn qmatrix(&self) -> QMatrix {
        self.matrix::<Rational>()
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
    }

    #[test]
    fn lexicographic_enumeration() {
        let all = Permutation::all_lexicographic(3);
        let images: Vec<Vec<usize>> = all.iter().map(|p| p.image().to_vec()).collect();
        assert_eq!(
            images,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(Permutation::all_lexicographic(5).len(), 120);
    }

    #[test]
    fn matrix_conventions_agree() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let a = QMatrix::from_fn(3, 3, |i, j| int((3 * i + j) as i64));
        assert_eq!(p.permute_rows(&a), p.qmatrix().mul_mat(&a).unwrap());
        let q = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            p.compose(&q).qmatrix(),
            p.qmatrix().mul_mat(&q.qmatrix()).unwrap()
        );
        assert_eq!(
            p.inverse().qmatrix(),
            p.qmatrix().inverse().unwrap()
        );
        let x = vec![int(10), int(20), int(30)];
        assert_eq!(p.permute_vec(&x), p.qmatrix().mul_vec(&x).unwrap());
    }
}
