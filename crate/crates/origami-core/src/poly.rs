//! Integer polynomials: characteristic polynomials, factorization over `Z`
//! (Zassenhaus), Sturm sequences and Galois tests for reciprocal
//! polynomials.
//!
//! Polynomials are coefficient vectors, constant term first.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, QMat, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        if c.is_empty() {
            c.push(BigInt::zero());
        }
        ZPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::new(c)
    }

    /// `x^deg p(1/x) = p`.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    /// `(x − 1)^deg`.
    pub fn is_unipotent_charpoly(&self) -> bool {
        let d = self.degree();
        let target = (0..d).fold(ZPoly::from_i64(&[1]), |acc, _| acc.mul(&ZPoly::from_i64(&[-1, 1])));
        *self == target
    }

    fn to_q(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn coefficients(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() && !(first && i == 0) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            match i {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "{}x", coef)?,
                _ => write!(f, "{}x^{}", coef, i)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<Q>);

impl QPoly {
    fn new(mut c: Vec<Q>) -> Self {
        while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        if c.is_empty() {
            c.push(Q::zero());
        }
        QPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_zero()
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn monic(&self) -> QPoly {
        let l = self.0.last().unwrap().clone();
        QPoly(self.0.iter().map(|c| c / &l).collect())
    }

    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let mut r = self.0.clone();
        let dd = d.degree();
        let lc = d.0.last().unwrap().clone();
        if r.len() < d.0.len() {
            return (QPoly::new(vec![Q::zero()]), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] / &lc;
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            quo[k] = c;
        }
        r.truncate(dd.max(1));
        (QPoly::new(quo), QPoly::new(r))
    }

    fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn to_z(&self) -> Option<ZPoly> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(ZPoly::new)
    }
}

/// Characteristic polynomial `det(x I − m)` (Faddeev–LeVerrier).
pub fn char_poly_q(m: &QMat) -> Vec<Q> {
    let n = m.len();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut mk = linalg::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = linalg::mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = linalg::mul(m, &mk);
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + &am[i][i]);
        c[n - k] = -tr / Q::from_integer(BigInt::from(k));
    }
    c
}

/// Characteristic polynomial of a matrix whose char poly is integral.
pub fn char_poly(m: &QMat) -> Option<ZPoly> {
    QPoly::new(char_poly_q(m)).to_z()
}

// Arithmetic in F_p[x], p an odd prime below 2^31.

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn fp_is_zero(a: &Fp) -> bool {
    a.len() == 1 && a[0] == 0
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn fp_from_z(f: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(f.0.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    fp_trim(c)
}

fn fp_divrem(a: &Fp, d: &Fp, p: u64) -> (Fp, Fp) {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return (vec![0], a.clone());
    }
    let mut r = a.clone();
    let inv = inv_mod(*d.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * inv % p;
        if c != 0 {
            for (j, &x) in d.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * x % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(dd.max(1));
    (fp_trim(q), fp_trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&x| x * inv % p).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !fp_is_zero(&b) {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if fp_is_zero(&a) {
        a
    } else {
        fp_monic(&a, p)
    }
}

fn fp_powmod(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    r
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
}

fn fp_squarefree(f: &Fp, p: u64) -> bool {
    let d = fp_derivative(f, p);
    !fp_is_zero(&d) && fp_gcd(f, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(k, product of the degree-k irreducible factors)`.
fn fp_ddf(f: &Fp, p: u64) -> Vec<(usize, Fp)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut k = 0;
    while f.len() - 1 >= 2 * (k + 1) {
        k += 1;
        h = fp_powmod(&h, p as u128, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((k, g.clone()));
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
        }
    }
    if f.len() > 1 {
        out.push((f.len() - 1, f));
    }
    out
}

/// Splits a product of degree-`k` irreducibles (Cantor–Zassenhaus).
fn fp_edf(g: &Fp, k: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let d = g.len() - 1;
    if d == k {
        return vec![g.clone()];
    }
    let e = (((p as u128).pow(k as u32)) - 1) / 2;
    loop {
        let a: Fp = fp_trim((0..d).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e, g, p), &vec![1], p);
        let h = fp_gcd(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let rest = fp_divrem(g, &h, p).0;
            let mut out = fp_edf(&h, k, p, rng);
            out.extend(fp_edf(&fp_monic(&rest, p), k, p, rng));
            return out;
        }
    }
}

fn fp_factor(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (k, g) in fp_ddf(&fp_monic(f, p), p) {
        out.extend(fp_edf(&g, k, p, &mut rng));
    }
    out
}

/// Degrees of the irreducible factors of `f mod p`, sorted descending, or
/// `None` if `p` divides the leading coefficient or the reduction is not
/// squarefree.
pub fn factor_pattern_mod(f: &ZPoly, p: u64) -> Option<Vec<usize>> {
    let fp = fp_from_z(f, p);
    if fp.len() != f.0.len() || !fp_squarefree(&fp, p) {
        return None;
    }
    let mut degs = Vec::new();
    for (k, g) in fp_ddf(&fp_monic(&fp, p), p) {
        degs.extend(std::iter::repeat(k).take((g.len() - 1) / k));
    }
    degs.sort_unstable_by(|a, b| b.cmp(a));
    Some(degs)
}

pub fn primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// Hensel lifting and recombination for monic squarefree f.

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn z_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn z_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    z_mod(&c, m)
}

fn fp_to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Extended gcd in F_p[x]: `s a + t b = 1`.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], vec![0]);
    let (mut t0, mut t1): (Fp, Fp) = (vec![0], vec![1]);
    while !fp_is_zero(&r1) {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(r0[0], p);
    (
        s0.iter().map(|&x| x * inv % p).collect(),
        t0.iter().map(|&x| x * inv % p).collect(),
    )
}

/// Lifts `f ≡ g h (mod p)` with `g` monic to modulus `p^k`.
fn hensel_two(f: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp_xgcd(g, h, p);
    let pb = BigInt::from(p);
    let (mut gz, mut hz) = (fp_to_z(g), fp_to_z(h));
    let mut m = pb.clone();
    let pk = pb.pow(k);
    while m < pk {
        let gh = z_mul_mod(&gz, &hz, &(&m * &pb));
        let n = f.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                (d / &m).mod_floor(&pb)
            })
            .collect();
        let e = fp_trim(e.iter().map(|x| x.to_u64().unwrap()).collect());
        let et = fp_mul(&e, &t, p);
        let (qq, dg) = fp_divrem(&et, g, p);
        let dh = fp_trim({
            let a = fp_mul(&e, &s, p);
            let b = fp_mul(&qq, h, p);
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
                .collect()
        });
        let next = &m * &pb;
        let add = |base: &mut Vec<BigInt>, d: &Fp| {
            if base.len() < d.len() {
                base.resize(d.len(), BigInt::zero());
            }
            for (i, &x) in d.iter().enumerate() {
                base[i] = (&base[i] + &m * BigInt::from(x)).mod_floor(&next);
            }
        };
        add(&mut gz, &dg);
        add(&mut hz, &dh);
        m = next;
    }
    (gz, hz)
}

fn hensel_multi(f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![z_mod(f, &BigInt::from(p).pow(k))];
    }
    let g = &factors[0];
    let h = factors[1..].iter().skip(1).fold(factors[1].clone(), |acc, x| fp_mul(&acc, x, p));
    let (gz, hz) = hensel_two(f, g, &h, p, k);
    let mut out = vec![gz];
    out.extend(hensel_multi(&hz, &factors[1..], p, k));
    out
}

fn z_divides(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let (q, r) = f.to_q().divrem(&g.to_q());
    if !r.is_zero() {
        return None;
    }
    q.to_z()
}

/// Irreducible factors of a monic squarefree `f`, each monic.
fn factor_squarefree_monic(f: &ZPoly) -> Vec<ZPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let p = primes()
        .find(|&p| fp_squarefree(&fp_from_z(f, p), p))
        .unwrap();
    let modp = fp_factor(&fp_from_z(f, p), p);
    if modp.len() == 1 {
        return vec![f.clone()];
    }
    // Coefficients of monic factors are bounded by 2^deg · Σ|f_i|.
    let bound: BigInt = f.0.iter().map(|c| c.abs()).sum::<BigInt>() << f.degree();
    let mut k = 1u32;
    while BigInt::from(p).pow(k) <= &bound * 2 {
        k += 1;
    }
    let pk = BigInt::from(p).pow(k);
    let mut lifted = hensel_multi(&f.0, &modp, p, k);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let prod = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| z_mul_mod(&acc, &lifted[i], &pk));
            let cand = ZPoly::new(prod.iter().map(|c| sym_mod(c, &pk)).collect());
            if let Some(q) = z_divides(&rest, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
            }
            None => size += 1,
        }
    }
    out.push(rest);
    out.sort();
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factorization of a monic integer polynomial into monic irreducibles
/// with multiplicities.
pub fn factor_monic(f: &ZPoly) -> Vec<(ZPoly, usize)> {
    assert!(f.is_monic(), "factor_monic needs a monic polynomial");
    let mut out: BTreeMap<ZPoly, usize> = BTreeMap::new();
    // Yun's squarefree decomposition over Q; monic factors are integral.
    let fq = f.to_q();
    let mut a = fq.gcd(&fq.derivative());
    let mut b = fq.divrem(&a).0;
    let mut c = fq.derivative().divrem(&a).0;
    let mut d = {
        let bd = b.derivative();
        QPoly::new(sub_q(&c.0, &bd.0))
    };
    let mut i = 1;
    loop {
        if b.degree() == 0 {
            break;
        }
        a = if d.is_zero() { b.clone() } else { b.gcd(&d) };
        let part = a.monic().to_z().expect("monic factor of monic integer polynomial");
        if part.degree() > 0 {
            for g in factor_squarefree_monic(&part) {
                *out.entry(g).or_insert(0) += i;
            }
        }
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        let bd = b.derivative();
        d = QPoly::new(sub_q(&c.0, &bd.0));
        i += 1;
    }
    out.into_iter().collect()
}

fn sub_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect()
}

pub fn is_irreducible(f: &ZPoly) -> bool {
    let fs = factor_monic(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Number of distinct real roots (Sturm).
pub fn real_root_count(f: &ZPoly) -> usize {
    let f = f.to_q();
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
        let n = seq.len();
        let r = seq[n - 2].divrem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(QPoly::new(r.0.into_iter().map(|c| -c).collect()));
    }
    let changes = |signs: Vec<i8>| {
        let s: Vec<i8> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |x: &Q| -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    };
    let at_pos: Vec<i8> = seq.iter().map(|p| sign(p.0.last().unwrap())).collect();
    let at_neg: Vec<i8> = seq
        .iter()
        .map(|p| {
            let s = sign(p.0.last().unwrap());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

/// All roots real (counted with multiplicity).
pub fn is_real_rooted(f: &ZPoly) -> bool {
    factor_monic(f).iter().all(|(g, _)| real_root_count(g) == g.degree())
}

/// `q` with `p(x) = x^d q(x + 1/x)` for reciprocal `p` of degree `2d`.
pub fn trace_polynomial(p: &ZPoly) -> Option<ZPoly> {
    let n = p.degree();
    if n % 2 == 1 || !p.is_reciprocal() {
        return None;
    }
    let d = n / 2;
    // V_0 = 2, V_1 = y, V_{k+1} = y V_k − V_{k−1}: x^k + x^{-k} = V_k(x + 1/x).
    let y = ZPoly::from_i64(&[0, 1]);
    let mut v: Vec<ZPoly> = vec![ZPoly::from_i64(&[2]), y.clone()];
    for k in 1..d {
        let next = sub_z(&y.mul(&v[k]), &v[k - 1]);
        v.push(next);
    }
    let mut q = ZPoly::new(vec![p.0[d].clone()]);
    for k in 1..=d {
        let term = ZPoly::new(v[k].0.iter().map(|c| c * &p.0[d + k]).collect());
        q = add_z(&q, &term);
    }
    Some(q)
}

fn add_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.0.len().max(b.0.len());
    ZPoly::new(
        (0..n)
            .map(|i| a.0.get(i).cloned().unwrap_or_default() + b.0.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn sub_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    add_z(a, &ZPoly::new(b.0.iter().map(|c| -c).collect()))
}

/// Resultant via the Sylvester determinant.
pub fn resultant(a: &ZPoly, b: &ZPoly) -> BigInt {
    let (m, n) = (a.degree(), b.degree());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = linalg::zeros(size, size);
    for i in 0..n {
        for (j, c) in a.0.iter().rev().enumerate() {
            s[i][i + j] = Q::from_integer(c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in b.0.iter().rev().enumerate() {
            s[n + i][i + j] = Q::from_integer(c.clone());
        }
    }
    linalg::det(&s).to_integer()
}

pub fn discriminant(f: &ZPoly) -> BigInt {
    let d = f.degree();
    let r = resultant(f, &f.derivative());
    let sign = if (d * (d.saturating_sub(1)) / 2) % 2 == 1 { -1 } else { 1 };
    r * sign / f.lc()
}

pub fn is_square(x: &BigInt) -> bool {
    if x.sign() == Sign::Minus {
        return false;
    }
    let r = x.sqrt();
    &r * &r == *x
}

pub fn is_rational_square(x: &BigRational) -> bool {
    is_square(x.numer()) && is_square(x.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaloisVerdict {
    FullHyperoctahedral,
    NotFull,
    Heuristic { samples: usize },
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisEvidence {
    pub half_degree: usize,
    pub trace_polynomial: String,
    pub trace_irreducible: bool,
    pub trace_discriminant_square: Option<bool>,
    /// `q(2) q(−2)`, the product of the `y_i² − 4`.
    pub delta_product: String,
    pub delta_product_square_class_trivial: bool,
    /// A prime where `p` factors as one quadratic times linears.
    pub flip_prime: Option<u64>,
    pub primes_sampled: usize,
    /// Factorization patterns seen, as counts.
    pub patterns: BTreeMap<String, usize>,
}

/// Minimum number of primes for the sampled verdict.
pub const HEURISTIC_PRIMES: usize = 200;
/// Primes tried when looking for a flip witness.
pub const FLIP_SEARCH_PRIMES: usize = 5000;

/// Galois group of a monic reciprocal irreducible `p` of degree `2d`
/// versus the hyperoctahedral group of order `2^d d!`.
pub fn galois_verdict(p: &ZPoly) -> (GaloisVerdict, GaloisEvidence) {
    let mut ev = GaloisEvidence::default();
    let Some(q) = trace_polynomial(p) else {
        return (GaloisVerdict::NotFull, ev);
    };
    let d = q.degree();
    ev.half_degree = d;
    ev.trace_polynomial = q.to_string();
    ev.trace_irreducible = is_irreducible(&q);
    if !ev.trace_irreducible || !is_irreducible(p) {
        return (GaloisVerdict::NotFull, ev);
    }
    let disc = discriminant(&q);
    if d == 3 {
        ev.trace_discriminant_square = Some(is_square(&disc));
        if is_square(&disc) {
            return (GaloisVerdict::NotFull, ev);
        }
    }
    let dp = q.eval(&BigInt::from(2)) * q.eval(&BigInt::from(-2));
    ev.delta_product = dp.to_string();
    ev.delta_product_square_class_trivial = is_square(&dp) || (d >= 2 && is_square(&(&dp * &disc)));
    if ev.delta_product_square_class_trivial {
        return (GaloisVerdict::NotFull, ev);
    }
    let mut flip = vec![2];
    flip.extend(std::iter::repeat(1).take(2 * d - 2));
    let limit = if d <= 3 { FLIP_SEARCH_PRIMES } else { HEURISTIC_PRIMES };
    for prime in primes() {
        if ev.primes_sampled >= limit && (d > 3 || ev.flip_prime.is_some()) {
            break;
        }
        let Some(pat) = factor_pattern_mod(p, prime) else {
            continue;
        };
        ev.primes_sampled += 1;
        if pat == flip && ev.flip_prime.is_none() {
            ev.flip_prime = Some(prime);
        }
        if d > 3 {
            let key = pat.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            *ev.patterns.entry(key).or_insert(0) += 1;
        } else if ev.flip_prime.is_some() {
            break;
        }
    }
    let verdict = if d > 3 {
        GaloisVerdict::Heuristic {
            samples: ev.primes_sampled,
        }
    } else if ev.flip_prime.is_some() {
        GaloisVerdict::FullHyperoctahedral
    } else {
        GaloisVerdict::Inconclusive
    };
    (verdict, ev)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchingReport {
    pub dimension: usize,
    /// Integer coefficients, constant term first.
    pub char_poly: Vec<String>,
    pub char_poly_text: String,
    pub factors: Vec<(String, usize)>,
    pub reciprocal: bool,
    pub irreducible: bool,
    pub real_rooted: bool,
    pub galois_verdict: GaloisVerdict,
    pub galois_evidence: Option<GaloisEvidence>,
    pub unipotent: bool,
    pub rank_minus_identity: usize,
    pub image_isotropic: bool,
    pub image_lagrangian: bool,
    /// `M = I`: nothing to test.
    pub degenerate: bool,
}

impl PinchingReport {
    pub fn galois_pinching(&self) -> bool {
        self.irreducible
            && self.real_rooted
            && matches!(
                self.galois_verdict,
                GaloisVerdict::FullHyperoctahedral | GaloisVerdict::Heuristic { .. }
            )
            && self.galois_evidence.as_ref().map(|e| e.flip_prime.is_some()).unwrap_or(false)
    }

    /// Unipotent with `rank(M − I)` different from half the dimension.
    pub fn unipotent_non_lagrangian(&self) -> bool {
        self.unipotent && !self.degenerate && self.rank_minus_identity * 2 != self.dimension
    }
}

/// Checks `M` on a space with symplectic form `form` (Gram matrix) for the
/// Galois-pinching and unipotent non-Lagrangian criteria.
pub fn pinching_report(m: &QMat, form: &QMat) -> crate::Result<PinchingReport> {
    let n = m.len();
    let preserved = linalg::mul(&linalg::mul(&linalg::transpose(m), form), m) == *form;
    if !preserved {
        return Err(crate::Error::Verification("matrix does not preserve the form".into()));
    }
    let cp = char_poly(m).ok_or_else(|| crate::Error::Verification("characteristic polynomial is not integral".into()))?;
    let factors = factor_monic(&cp);
    let irreducible = factors.len() == 1 && factors[0].1 == 1;
    let unipotent = cp.is_unipotent_charpoly();
    let diff = linalg::sub(m, &linalg::identity(n));
    let mut rr = diff.clone();
    let piv = linalg::rref(&mut rr);
    let rank = piv.len();
    // Image of M − I: span of its columns.
    let img: QMat = {
        let t = linalg::transpose(&diff);
        let mut t2 = t.clone();
        let p = linalg::rref(&mut t2);
        linalg::transpose(&t2[..p.len()].to_vec())
    };
    let image_isotropic = rank == 0 || linalg::is_zero(&linalg::mul(&linalg::mul(&linalg::transpose(&img), form), &img));
    let (galois_verdict, galois_evidence) = if irreducible && cp.is_reciprocal() {
        let (v, e) = galois_verdict(&cp);
        (v, Some(e))
    } else {
        (GaloisVerdict::NotFull, None)
    };
    Ok(PinchingReport {
        dimension: n,
        char_poly: cp.coefficients(),
        char_poly_text: cp.to_string(),
        factors: factors.iter().map(|(f, k)| (f.to_string(), *k)).collect(),
        reciprocal: cp.is_reciprocal(),
        irreducible,
        real_rooted: is_real_rooted(&cp),
        galois_verdict,
        galois_evidence,
        unipotent,
        rank_minus_identity: rank,
        image_isotropic: rank > 0 && image_isotropic,
        image_lagrangian: rank > 0 && image_isotropic && 2 * rank == n,
        degenerate: rank == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn char_poly_small() {
        let m = linalg::from_int(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(char_poly(&m).unwrap(), zp(&[1, -3, 1]));
        assert_eq!(char_poly(&linalg::identity(3)).unwrap(), zp(&[-1, 3, -3, 1]));
    }

    #[test]
    fn factoring() {
        // (x^2 + 1)(x^3 - 2)(x - 1)^2
        let f = zp(&[1, 0, 1]).mul(&zp(&[-2, 0, 0, 1])).mul(&zp(&[-1, 1])).mul(&zp(&[-1, 1]));
        let fs = factor_monic(&f);
        assert_eq!(fs, vec![(zp(&[-2, 0, 0, 1]), 1), (zp(&[-1, 1]), 2), (zp(&[1, 0, 1]), 1)]);
        // Irreducible over Z, splits modulo every prime.
        assert!(is_irreducible(&zp(&[1, 0, -10, 0, 1])));
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 − 2x + 2)
        assert_eq!(factor_monic(&zp(&[4, 0, 0, 0, 1])).len(), 2);
        assert!(is_irreducible(&zp(&[-1, -1, 0, 0, 0, 1]).mul(&zp(&[1])))); // x^5 - x - 1
    }

    #[test]
    fn sturm() {
        assert_eq!(real_root_count(&zp(&[-2, 0, 1])), 2);
        assert_eq!(real_root_count(&zp(&[1, 0, 1])), 0);
        assert!(is_real_rooted(&zp(&[-1, 1]).mul(&zp(&[-1, 1]))));
        assert!(!is_real_rooted(&zp(&[-2, 0, 0, 1])));
    }

    #[test]
    fn trace_poly_and_disc() {
        // x^2 − 3x + 1 = x (y − 3)
        assert_eq!(trace_polynomial(&zp(&[1, -3, 1])).unwrap(), zp(&[-3, 1]));
        // x^4 + 1 = x^2 (y^2 − 2)
        assert_eq!(trace_polynomial(&zp(&[1, 0, 0, 0, 1])).unwrap(), zp(&[-2, 0, 1]));
        assert_eq!(discriminant(&zp(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(discriminant(&zp(&[-1, -1, 0, 1])), BigInt::from(-23));
    }

    #[test]
    fn galois_full_in_degree_two() {
        // Reciprocal with trace polynomial y^2 − 5y + 1.
        let q = zp(&[1, -5, 1]);
        // p = x^2 q(x + 1/x) = x^4 − 5x^3 + 3x^2 − 5x + 1
        let p = zp(&[1, -5, 3, -5, 1]);
        assert_eq!(trace_polynomial(&p).unwrap(), q);
        let (v, e) = galois_verdict(&p);
        assert_eq!(v, GaloisVerdict::FullHyperoctahedral, "{:?}", e);
    }
}
