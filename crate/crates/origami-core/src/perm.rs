//! Permutations of `{1..n}`.
//!
//! Multiplication is right to left: `p.compose(&q)` maps `i` to `p(q(i))`,
//! so `(1,2)(2,3) = (1,2,3)`. Many libraries use the opposite order; every
//! formula in this crate assumes this one.
//!
//! Points are 1-based in every external format. Internally images are stored
//! 0-based.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1..n}` with explicit degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u32>,
}

/// Multiset of cycle lengths, fixed points included, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    pub lengths: Vec<usize>,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Number of cycles of the given length.
    pub fn count(&self, len: usize) -> usize {
        self.lengths.iter().filter(|&&l| l == len).count()
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            img: (0..n as u32).collect(),
        }
    }

    /// The standard cycle `(1,2,...,n)`.
    pub fn standard_cycle(n: usize) -> Self {
        Permutation {
            img: (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images0(img: Vec<u32>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            let x = x as usize;
            if x >= n {
                return Err(Error::Parse(format!("image {} out of range 1..{}", x + 1, n)));
            }
            if seen[x] {
                return Err(Error::Parse(format!("image {} repeated", x + 1)));
            }
            seen[x] = true;
        }
        Ok(Permutation { img })
    }

    /// Builds from 1-based images.
    pub fn from_images(img: &[usize]) -> Result<Self> {
        let mut v = Vec::with_capacity(img.len());
        for &x in img {
            if x == 0 {
                return Err(Error::Parse("point 0 is not allowed (points are 1-based)".into()));
            }
            v.push((x - 1) as u32);
        }
        Self::from_images0(v)
    }

    /// Unchecked constructor for hot paths that already guarantee bijectivity.
    pub(crate) fn from_raw(img: Vec<u32>) -> Self {
        debug_assert!(Self::from_images0(img.clone()).is_ok());
        Permutation { img }
    }

    /// Builds from a list of disjoint cycles given as 1-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<Option<u32>> = vec![None; n];
        let mut used = vec![false; n];
        for c in cycles {
            for &x in c.iter() {
                if x == 0 || x > n {
                    return Err(Error::Parse(format!("point {} out of range 1..{}", x, n)));
                }
                if used[x - 1] {
                    return Err(Error::Parse(format!("repeated point {}", x)));
                }
                used[x - 1] = true;
            }
            for k in 0..c.len() {
                img[c[k] - 1] = Some((c[(k + 1) % c.len()] - 1) as u32);
            }
        }
        Ok(Permutation {
            img: img
                .into_iter()
                .enumerate()
                .map(|(i, x)| x.unwrap_or(i as u32))
                .collect(),
        })
    }

    /// Single cycle on 1-based points; other points fixed.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        Self::from_cycles(n, &[points])
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut img: Vec<u32> = (0..n as u32).collect();
        img.shuffle(rng);
        Permutation { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply0(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images0(&self) -> &[u32] {
        &self.img
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// `self ∘ q`, i.e. `i ↦ self(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Self> {
        self.check_degree(q)?;
        Ok(self.mul(q))
    }

    /// Same as [`compose`](Self::compose) but panics on degree mismatch.
    pub fn mul(&self, q: &Permutation) -> Self {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Permutation {
            img: q.img.iter().map(|&x| self.img[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { img: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// `p q p⁻¹ q⁻¹`.
    pub fn commutator(&self, q: &Permutation) -> Result<Self> {
        self.check_degree(q)?;
        Ok(self.mul(q).mul(&self.inverse()).mul(&q.inverse()))
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate(&self, by: &Permutation) -> Result<Self> {
        self.check_degree(by)?;
        Ok(by.mul(self).mul(&by.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles as 1-based points, each starting at its least point,
    /// ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths }
    }

    /// True iff the permutation is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut x = 0usize;
        for k in 1..=n {
            x = self.img[x] as usize;
            if x == 0 {
                return k == n;
            }
        }
        false
    }

    /// Order as a permutation (lcm of cycle lengths).
    pub fn order(&self) -> num_bigint::BigUint {
        use num_integer::Integer;
        self.cycle_type()
            .lengths
            .iter()
            .fold(num_bigint::BigUint::from(1u32), |acc, &l| {
                acc.lcm(&num_bigint::BigUint::from(l))
            })
    }

    pub fn is_even(&self) -> bool {
        let ct = self.cycle_type();
        ct.lengths.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    /// Number of moved points.
    pub fn support_size(&self) -> usize {
        self.img.iter().enumerate().filter(|(i, &x)| *i as u32 != x).count()
    }

    /// Disjoint-cycle notation with fixed points omitted; `""` for the identity.
    pub fn render_cycles(&self) -> String {
        let mut s = String::new();
        for c in self.cycles() {
            if c.len() < 2 {
                continue;
            }
            s.push('(');
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&x.to_string());
            }
            s.push(')');
        }
        s
    }

    /// Parses disjoint-cycle notation such as `(1,3)(2,4,5)`. Whitespace is
    /// ignored; points omitted are fixed; `()` and `""` denote the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chars = text.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            if c != '(' {
                return Err(Error::Parse(format!("expected '(' but found '{}'", c)));
            }
            let mut body = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                body.push(c);
            }
            if !closed {
                return Err(Error::Parse("unterminated cycle".into()));
            }
            if body.is_empty() {
                continue;
            }
            let mut cyc = Vec::new();
            for tok in body.split(',') {
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point '{}'", tok)))?;
                cyc.push(x);
            }
            cycles.push(cyc);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render_cycles();
        if s.is_empty() {
            write!(f, "()[n={}]", self.degree())
        } else {
            write!(f, "{}[n={}]", s, self.degree())
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_cycles())
    }
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    n: usize,
    images: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermJson {
            n: self.degree(),
            images: self.images(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PermJson::deserialize(d)?;
        if j.images.len() != j.n {
            return Err(serde::de::Error::custom("images length differs from n"));
        }
        Permutation::from_images(&j.images).map_err(serde::de::Error::custom)
    }
}
