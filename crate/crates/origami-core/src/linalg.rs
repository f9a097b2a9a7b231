//! Dense exact linear algebra over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type QMat = Vec<Vec<Q>>;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn zeros(r: usize, c: usize) -> QMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn from_int(m: &[Vec<i64>]) -> QMat {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn cols(m: &QMat) -> usize {
    m.first().map(|r| r.len()).unwrap_or(0)
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let (r, k, c) = (a.len(), b.len(), cols(b));
    let mut out = zeros(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

pub fn transpose(a: &QMat) -> QMat {
    let c = cols(a);
    (0..c).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn sub(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect())
        .collect()
}

pub fn hcat(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().chain(y.iter()).cloned().collect())
        .collect()
}

pub fn is_zero(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(a: &mut QMat) -> Vec<usize> {
    let (r, c) = (a.len(), cols(a));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
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
    }
    pivots
}

pub fn rank(a: &QMat) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of `{x : a x = 0}` as columns of the returned matrix.
pub fn kernel(a: &QMat) -> QMat {
    let c = cols(a);
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
    let mut basis = zeros(c, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[f][k] = Q::one();
        for (row, &p) in pivots.iter().enumerate() {
            basis[p][k] = -m[row][f].clone();
        }
    }
    basis
}

/// Some `x` with `a x = b` (columns of `b` solved together), if consistent.
pub fn solve(a: &QMat, b: &QMat) -> Option<QMat> {
    let c = cols(a);
    let bc = cols(b);
    let mut m = hcat(a, b);
    let pivots = rref(&mut m);
    if pivots.iter().any(|&p| p >= c) {
        return None;
    }
    let mut x = zeros(c, bc);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..bc {
            x[p][j] = m[row][c + j].clone();
        }
    }
    Some(x)
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    if n != cols(a) {
        return None;
    }
    let x = solve(a, &identity(n))?;
    (mul(a, &x) == identity(n)).then_some(x)
}

pub fn det(a: &QMat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

/// Restriction of `m` to an invariant subspace with basis columns `k`:
/// the matrix `r` with `m k = k r`.
pub fn restrict(m: &QMat, k: &QMat) -> Option<QMat> {
    let mk = mul(m, k);
    let r = solve(k, &mk)?;
    (mul(k, &r) == mk).then_some(r)
}

/// Columns scaled to primitive integer vectors.
pub fn integral_columns(k: &QMat) -> QMat {
    let t = transpose(k);
    let scaled: QMat = t
        .into_iter()
        .map(|col| {
            let den = col
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let ints: Vec<BigInt> = col.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
            let g = ints
                .iter()
                .fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.abs()));
            let g = if g.is_zero() { BigInt::one() } else { g };
            ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
        })
        .collect();
    transpose(&scaled)
}

pub fn to_i64(m: &QMat) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}
