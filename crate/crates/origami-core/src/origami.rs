//! Origamis as permutation pairs `(h, v)`.
//!
//! `h(i) = j` glues the right side of square `i` to the left side of `j`;
//! `v(i) = j` glues the top side of `i` to the bottom side of `j`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

/// Zero orders (descending) and genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumSignature {
    pub zero_orders: Vec<usize>,
    pub genus: usize,
}

impl StratumSignature {
    /// True iff every zero order is even, so spin parity is defined.
    pub fn all_even(&self) -> bool {
        self.zero_orders.iter().all(|k| k % 2 == 0)
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero_orders.is_empty() {
            return f.write_str("H(0)");
        }
        let parts: Vec<String> = self.zero_orders.iter().map(|k| k.to_string()).collect();
        write!(f, "H({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentTag {
    Hyperelliptic,
    OddSpin,
    EvenSpin,
    Connected,
    NotApplicable,
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Self> {
        if h.degree() != v.degree() {
            return Err(Error::DegreeMismatch(h.degree(), v.degree()));
        }
        if h.degree() == 0 {
            return Err(Error::Precondition("origami needs at least one square".into()));
        }
        Ok(Origami { h, v })
    }

    /// Like [`new`](Self::new) but also rejects disconnected pairs.
    pub fn new_connected(h: Permutation, v: Permutation) -> Result<Self> {
        let o = Self::new(h, v)?;
        if !o.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(o)
    }

    pub fn torus() -> Self {
        Origami {
            h: Permutation::identity(1),
            v: Permutation::identity(1),
        }
    }

    pub fn n(&self) -> usize {
        self.h.degree()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [self.h.apply0(x), self.v.apply0(x)] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// `[h, v] = h v h⁻¹ v⁻¹`; its cycles are the vertex classes.
    pub fn commutator(&self) -> Permutation {
        self.h.commutator(&self.v).expect("degrees agree")
    }

    pub fn stratum(&self) -> Result<StratumSignature> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut zero_orders: Vec<usize> = self
            .commutator()
            .cycle_type()
            .lengths
            .into_iter()
            .filter(|&l| l >= 2)
            .map(|l| l - 1)
            .collect();
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        let genus = 1 + zero_orders.iter().sum::<usize>() / 2;
        Ok(StratumSignature { zero_orders, genus })
    }

    pub fn genus(&self) -> Result<usize> {
        Ok(self.stratum()?.genus)
    }

    /// (horizontal, vertical) cylinder counts.
    pub fn cylinder_counts(&self) -> (usize, usize) {
        (self.h.cycles().len(), self.v.cycles().len())
    }

    /// h, v and [h,v] are n-cycles with n = 2g − 1 ≥ 3.
    pub fn is_minimal_11(&self) -> bool {
        let n = self.n();
        n >= 3
            && n % 2 == 1
            && self.h.is_full_cycle()
            && self.v.is_full_cycle()
            && self.commutator().is_full_cycle()
    }

    /// Simultaneous conjugation `(r h r⁻¹, r v r⁻¹)`: square `i` is renamed `r(i)`.
    pub fn conjugate(&self, r: &Permutation) -> Result<Self> {
        Ok(Origami {
            h: self.h.conjugate(r)?,
            v: self.v.conjugate(r)?,
        })
    }

    /// `(h⁻¹, v⁻¹)`, the image under `−I`.
    pub fn rotate_half_turn(&self) -> Self {
        Origami {
            h: self.h.inverse(),
            v: self.v.inverse(),
        }
    }

    pub fn canonical_form(&self) -> Result<Self> {
        Ok(self.canonical_with_relabelling()?.0)
    }

    /// Canonical representative and a relabelling `r` with
    /// `self.conjugate(r) == canonical`.
    pub fn canonical_with_relabelling(&self) -> Result<(Self, Permutation)> {
        let (key, map) = canonical_key_with_map(self.h.images0(), self.v.images0())
            .ok_or(Error::Disconnected)?;
        let n = self.n();
        let h = Permutation::from_raw(key[..n].iter().map(|&x| x as u32).collect());
        let v = Permutation::from_raw(key[n..].iter().map(|&x| x as u32).collect());
        Ok((Origami { h, v }, Permutation::from_raw(map)))
    }

    /// Compact canonical key: canonical h images followed by v images (0-based).
    pub fn canonical_key(&self) -> Result<Vec<u16>> {
        canonical_key_with_map(self.h.images0(), self.v.images0())
            .map(|(k, _)| k)
            .ok_or(Error::Disconnected)
    }

    pub fn equivalent(&self, other: &Origami) -> Result<bool> {
        if self.n() != other.n() {
            return Ok(false);
        }
        Ok(self.canonical_key()? == other.canonical_key()?)
    }

    /// A relabelling `r` with `self.conjugate(r) == other`, if one exists.
    pub fn isomorphism_to(&self, other: &Origami) -> Result<Option<Permutation>> {
        if self.n() != other.n() {
            return Ok(None);
        }
        let (ca, ra) = self.canonical_with_relabelling()?;
        let (cb, rb) = other.canonical_with_relabelling()?;
        if ca != cb {
            return Ok(None);
        }
        // ra self ra⁻¹ = c = rb other rb⁻¹, so rb⁻¹ ra maps self to other.
        Ok(Some(rb.inverse().mul(&ra)))
    }

    /// Every relabelling `r` with `self.conjugate(r) == other` (for connected
    /// origamis at most `n` of them, one per image of square 1).
    pub fn isomorphisms_to(&self, other: &Origami) -> Vec<Permutation> {
        let n = self.n();
        if other.n() != n || !self.is_connected() {
            return Vec::new();
        }
        let mut out = Vec::new();
        'base: for b in 0..n {
            let mut map = vec![u32::MAX; n];
            let mut used = vec![false; n];
            map[0] = b as u32;
            used[b] = true;
            let mut stack = vec![0usize];
            while let Some(x) = stack.pop() {
                let fx = map[x] as usize;
                for (y, fy) in [
                    (self.h.apply0(x), other.h.apply0(fx)),
                    (self.v.apply0(x), other.v.apply0(fx)),
                ] {
                    if map[y] == u32::MAX {
                        if used[fy] {
                            continue 'base;
                        }
                        map[y] = fy as u32;
                        used[fy] = true;
                        stack.push(y);
                    } else if map[y] as usize != fy {
                        continue 'base;
                    }
                }
            }
            out.push(Permutation::from_raw(map));
        }
        out
    }

    /// Vertex classes as lists of 0-based squares whose bottom-left corner is
    /// the vertex. Going once around a vertex sends the corner of `j` to the
    /// corner of `v h v⁻¹ h⁻¹ (j)`.
    pub fn vertex_classes(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.n();
        let hi = self.h.inverse();
        let vi = self.v.inverse();
        let step = |j: usize| self.v.apply0(self.h.apply0(vi.apply0(hi.apply0(j))));
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for s in 0..n {
            if class_of[s] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut c = Vec::new();
            let mut x = s;
            while class_of[x] == usize::MAX {
                class_of[x] = id;
                c.push(x);
                x = step(x);
            }
            classes.push(c);
        }
        (classes, class_of)
    }

    /// Text line format `n=<int>; h=<cycles>; v=<cycles>`.
    pub fn to_line(&self) -> String {
        format!("n={}; h={}; v={}", self.n(), self.h, self.v)
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut h: Option<&str> = None;
        let mut v: Option<&str> = None;
        for part in line.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{}'", part)))?;
            match key.trim() {
                "n" => {
                    n = Some(
                        val.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad square count '{}'", val)))?,
                    )
                }
                "h" => h = Some(val),
                "v" => v = Some(val),
                other => return Err(Error::Parse(format!("unknown key '{}'", other))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        let h = Permutation::parse_cycles(h.ok_or_else(|| Error::Parse("missing h".into()))?, n)?;
        let v = Permutation::parse_cycles(v.ok_or_else(|| Error::Parse("missing v".into()))?, n)?;
        Origami::new(h, v)
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl FromStr for Origami {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Origami::parse_line(s)
    }
}

#[derive(Serialize, Deserialize)]
struct OrigamiJson {
    n: usize,
    h: Vec<usize>,
    v: Vec<usize>,
}

impl Serialize for Origami {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrigamiJson {
            n: self.n(),
            h: self.h.images(),
            v: self.v.images(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Origami {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OrigamiJson::deserialize(d)?;
        if j.h.len() != j.n || j.v.len() != j.n {
            return Err(serde::de::Error::custom("image lists must have length n"));
        }
        let h = Permutation::from_images(&j.h).map_err(serde::de::Error::custom)?;
        let v = Permutation::from_images(&j.v).map_err(serde::de::Error::custom)?;
        Origami::new(h, v).map_err(serde::de::Error::custom)
    }
}

/// BFS relabelling from every base square; returns the lexicographically
/// least `(h', v')` image list and the map old label → new label.
/// `None` if the pair is not transitive.
pub(crate) fn canonical_key_with_map(h: &[u32], v: &[u32]) -> Option<(Vec<u16>, Vec<u32>)> {
    let n = h.len();
    const UNSET: u32 = u32::MAX;
    let mut best: Option<(Vec<u16>, Vec<u32>)> = None;
    let mut map = vec![UNSET; n];
    let mut order = vec![0u32; n];
    let mut cand = vec![0u16; 2 * n];
    for base in 0..n {
        map.iter_mut().for_each(|m| *m = UNSET);
        map[base] = 0;
        order[0] = base as u32;
        let mut next = 1usize;
        let mut head = 0usize;
        while head < next {
            let x = order[head] as usize;
            head += 1;
            for y in [h[x] as usize, v[x] as usize] {
                if map[y] == UNSET {
                    map[y] = next as u32;
                    order[next] = y as u32;
                    next += 1;
                }
            }
        }
        if next != n {
            return None;
        }
        // Fill the candidate in comparison order, bailing out once it loses.
        let mut ord = std::cmp::Ordering::Equal;
        for i in 0..2 * n {
            let old = order[i % n] as usize;
            let val = if i < n { map[h[old] as usize] } else { map[v[old] as usize] } as u16;
            cand[i] = val;
            if ord == std::cmp::Ordering::Equal {
                if let Some((b, _)) = &best {
                    ord = val.cmp(&b[i]);
                    if ord == std::cmp::Ordering::Greater {
                        break;
                    }
                } else {
                    ord = std::cmp::Ordering::Less;
                }
            }
        }
        if ord == std::cmp::Ordering::Less {
            best = Some((cand.clone(), map.clone()));
        }
    }
    best
}
