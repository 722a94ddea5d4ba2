//! Random instance generators shared by the property and acceptance tests.
#![allow(dead_code)]

use cubetile::linalg::rational::{common_denominator, rat};
use cubetile::periodic::PeriodicTiling;
use cubetile::{IntMatrix, Lattice, Permutation, QMatrix, QVector, Rational};
use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= pmax`, `1 <= q <= qmax`.
pub fn rational<R: Rng>(rng: &mut R, pmax: i64, qmax: i64) -> Rational {
    rat(rng.random_range(-pmax..=pmax), rng.random_range(1..=qmax))
}

pub fn permutation<R: Rng>(rng: &mut R, d: usize) -> Permutation {
    let mut image: Vec<usize> = (0..d).collect();
    image.shuffle(rng);
    Permutation::new(image).unwrap()
}

pub fn lower_unitriangular<R: Rng>(rng: &mut R, d: usize, pmax: i64, qmax: i64) -> QMatrix {
    QMatrix::from_fn(d, d, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => rational(rng, pmax, qmax),
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Less => Rational::zero(),
    })
}

pub fn nonsingular_int_matrix<R: Rng>(rng: &mut R, d: usize, bound: i64) -> IntMatrix {
    loop {
        let m = IntMatrix::from_fn(d, d, |_, _| BigInt::from(rng.random_range(-bound..=bound)));
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn nonsingular_rational_matrix<R: Rng>(rng: &mut R, d: usize, pmax: i64, qmax: i64) -> QMatrix {
    loop {
        let m = QMatrix::from_fn(d, d, |_, _| rational(rng, pmax, qmax));
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn unimodular<R: Rng>(rng: &mut R, d: usize) -> IntMatrix {
    // product of a few elementary column operations
    let mut u = IntMatrix::identity(d);
    for _ in 0..3 * d {
        let (a, b) = (rng.random_range(0..d), rng.random_range(0..d));
        if a == b {
            continue;
        }
        let k = BigInt::from(rng.random_range(-2..=2));
        for i in 0..d {
            let delta = &u[(i, b)] * &k;
            u[(i, a)] += delta;
        }
    }
    if rng.random_bool(0.5) {
        u.swap_cols(0, d - 1);
    }
    u
}

/// `A = P^{-1}·G·R^{-1}`, which admits the certificate `(P, R, G)`.
pub fn feasible_instance<R: Rng>(rng: &mut R, d: usize) -> (QMatrix, Permutation, IntMatrix, QMatrix) {
    let p = permutation(rng, d);
    let g = lower_unitriangular(rng, d, 8, 8);
    let r = nonsingular_int_matrix(rng, d, 3);
    let r_inv = QMatrix::from_int(&r).inverse().unwrap();
    let a = p.inverse().qmatrix().mul_mat(&g).unwrap().mul_mat(&r_inv).unwrap();
    (a, p, r, g)
}

fn quarter<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.random_range(0..4), 4)
}

/// A tiling of shifted columns (`d = 2`) or of layers of shifted columns
/// (`d = 3`), with periods up to 4, shifts in `(1/4)Z` and a random
/// relabeling of the axes. Returns it with the diagonal lattice
/// `diag(1/den_i)` containing every translate.
pub fn shifted_column_tiling<R: Rng>(rng: &mut R, d: usize) -> (PeriodicTiling, Lattice) {
    assert!(d == 2 || d == 3);
    let shift: Vec<Rational> = (0..d).map(|_| quarter(rng)).collect();
    let p1 = rng.random_range(1..=4usize);
    let p2 = if d == 3 { rng.random_range(1..=4usize) } else { 1 };
    let beta: Vec<Rational> = (0..p1).map(|_| quarter(rng)).collect();
    let alpha: Vec<Vec<Rational>> = (0..p1).map(|_| (0..p2).map(|_| quarter(rng)).collect()).collect();

    let mut periods = vec![p1 as i64];
    let mut offsets = Vec::new();
    if d == 2 {
        periods.push(1);
        for (n1, b) in beta.iter().enumerate() {
            offsets.push(vec![Rational::from_integer(n1.into()), b.clone()]);
        }
    } else {
        periods.extend([p2 as i64, 1]);
        for (n1, (b, row)) in beta.iter().zip(&alpha).enumerate() {
            for (n2, a) in row.iter().enumerate() {
                offsets.push(vec![
                    Rational::from_integer(n1.into()),
                    Rational::from_integer(n2.into()) + b,
                    a.clone(),
                ]);
            }
        }
    }
    let sigma = permutation(rng, d);
    let offsets: Vec<QVector> = offsets
        .iter()
        .map(|t| {
            let moved: Vec<Rational> = t.iter().zip(&shift).map(|(a, b)| a + b).collect();
            sigma.permute_vec(&moved)
        })
        .collect();
    let diag: Vec<Rational> = sigma
        .permute_vec(&periods)
        .into_iter()
        .map(|p| Rational::from_integer(p.into()))
        .collect();
    let lattice = Lattice::new(QMatrix::diagonal(&diag)).unwrap();
    let constraint: Vec<Rational> = (0..d)
        .map(|i| {
            let den = common_denominator(offsets.iter().map(|t| &t[i]));
            Rational::new(BigInt::one(), den)
        })
        .collect();
    let tiling = PeriodicTiling::new(lattice, offsets).unwrap();
    (tiling, Lattice::new(QMatrix::diagonal(&constraint)).unwrap())
}

/// Rows `(1,-γ2,-γ3,-γ4), (1,1-γ2,-α3,-α4), (1,-γ2,1-γ3,-β4), (0,0,0,1)`.
pub fn case_one_matrix(params: &[Rational; 6]) -> QMatrix {
    let [g2, g3, a3, g4, a4, b4] = params;
    let one = Rational::one();
    let zero = Rational::zero();
    QMatrix::from_rows(vec![
        vec![one.clone(), -g2, -g3, -g4],
        vec![one.clone(), &one - g2, -a3, -a4],
        vec![one.clone(), -g2, &one - g3, -b4],
        vec![zero.clone(), zero.clone(), zero, one],
    ])
    .unwrap()
}
