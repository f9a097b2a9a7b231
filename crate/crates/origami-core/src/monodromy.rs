//! Monodromy groups `⟨h, v⟩ ≤ Sym(n)`: stabilizer chains, block systems,
//! classification by degree and order, and an explicit 3-cycle for the
//! odd-genus AMN origamis.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::Origami;
use crate::perm::Permutation;
use crate::spin::standardizing_relabelling;

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[γ]` maps the base point to `γ`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut l = Level {
            base,
            gens: Vec::new(),
            transversal: vec![None; n],
            orbit: Vec::new(),
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.base] = Some(Permutation::identity(n));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let g = self.orbit[k];
            for s in &self.gens {
                let d = s.apply0(g);
                if self.transversal[d].is_none() {
                    let u = s.mul(self.transversal[g].as_ref().unwrap());
                    self.transversal[d] = Some(u);
                    self.orbit.push(d);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set built by deterministic Schreier–Sims.
pub struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &[Permutation]) -> Result<Self> {
        let n = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Precondition("no generators".into()))?;
        if let Some(g) = gens.iter().find(|g| g.degree() != n) {
            return Err(Error::DegreeMismatch(n, g.degree()));
        }
        let mut chain = StabilizerChain { n, levels: Vec::new() };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply0(l.base) == l.base) {
                let b = (0..n).find(|&x| g.apply0(x) != x).unwrap();
                chain.levels.push(Level::new(b, n));
            }
        }
        // Level i keeps the generators fixing the first i base points.
        let bases: Vec<usize> = chain.levels.iter().map(|l| l.base).collect();
        for (i, l) in chain.levels.iter_mut().enumerate() {
            l.gens = gens
                .iter()
                .filter(|g| bases[..i].iter().all(|&b| g.apply0(b) == b))
                .cloned()
                .collect();
            l.rebuild(n);
        }
        chain.complete();
        Ok(chain)
    }

    fn complete(&mut self) {
        let n = self.n;
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lv = i as usize;
            let orbit = self.levels[lv].orbit.clone();
            let gens = self.levels[lv].gens.clone();
            for &b in &orbit {
                for s in &gens {
                    let sb = s.apply0(b);
                    let ub = self.levels[lv].transversal[b].as_ref().unwrap();
                    let usb = self.levels[lv].transversal[sb].as_ref().unwrap();
                    let h = usb.inverse().mul(s).mul(ub);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.strip_from(h, lv + 1);
                    if j < self.levels.len() || !res.is_identity() {
                        if j == self.levels.len() {
                            let b = (0..n).find(|&x| res.apply0(x) != x).unwrap();
                            self.levels.push(Level::new(b, n));
                        }
                        for l in lv + 1..=j {
                            self.levels[l].gens.push(res.clone());
                            self.levels[l].rebuild(n);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it went all the way through).
    fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, l) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply0(l.base);
            match &l.transversal[b] {
                None => return (g, j),
                Some(u) => g = u.inverse().mul(&g),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (res, j) = self.strip_from(g.clone(), 0);
        j == self.levels.len() && res.is_identity()
    }
}

pub fn group_order(gens: &[Permutation]) -> Result<BigUint> {
    Ok(StabilizerChain::new(gens)?.order())
}

/// Order by listing every element. Gives up past `limit` elements.
pub fn closure_order(gens: &[Permutation], limit: usize) -> Result<usize> {
    let n = gens.first().map(|g| g.degree()).unwrap_or(0);
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.compose(&x)?;
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::LimitExceeded(limit));
                }
                queue.push(y);
            }
        }
    }
    Ok(seen.len())
}

pub fn is_transitive(gens: &[Permutation]) -> bool {
    let Some(n) = gens.first().map(|g| g.degree()) else {
        return false;
    };
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply0(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockSystem {
    pub block_size: usize,
    /// Blocks of 1-based points, each sorted, ordered by least element.
    pub blocks: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Finest block system in which `0` and `w` share a block.
fn minimal_block(gens: &[Permutation], n: usize, w: usize) -> BlockSystem {
    let mut parent: Vec<usize> = (0..n).collect();
    parent[w] = 0;
    let mut queue = vec![(0usize, w)];
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let x = find(&mut parent, g.apply0(a));
            let y = find(&mut parent, g.apply0(b));
            if x != y {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                parent[hi] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = find(&mut parent, x);
        blocks[r].push(x + 1);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    BlockSystem {
        block_size: blocks[0].len(),
        blocks,
    }
}

/// Distinct nontrivial block systems of the form "minimal block containing
/// `{1, ω}`". Empty iff the group is primitive.
pub fn block_systems(gens: &[Permutation]) -> Result<Vec<BlockSystem>> {
    if !is_transitive(gens) {
        return Err(Error::Precondition("group is not transitive".into()));
    }
    let n = gens[0].degree();
    let mut out = BTreeSet::new();
    for w in 1..n {
        let bs = minimal_block(gens, n, w);
        if bs.block_size < n {
            out.insert(bs);
        }
    }
    Ok(out.into_iter().collect())
}

pub fn is_primitive(gens: &[Permutation]) -> Result<bool> {
    Ok(block_systems(gens)?.is_empty())
}

/// Origami on the blocks induced by a block system of `(h, v)`.
pub fn quotient_origami(o: &Origami, bs: &BlockSystem) -> Result<Origami> {
    let mut block_of = vec![usize::MAX; o.n()];
    for (k, b) in bs.blocks.iter().enumerate() {
        for &x in b {
            block_of[x - 1] = k;
        }
    }
    let induced = |p: &Permutation| -> Result<Permutation> {
        let img: Vec<usize> = bs.blocks.iter().map(|b| block_of[p.apply0(b[0] - 1)] + 1).collect();
        for b in &bs.blocks {
            let t = block_of[p.apply0(b[0] - 1)];
            if b.iter().any(|&x| block_of[p.apply0(x - 1)] != t) {
                return Err(Error::Precondition("partition is not preserved".into()));
            }
        }
        Permutation::from_images(&img)
    };
    Origami::new(induced(o.h())?, induced(o.v())?)
}

/// A block system of the monodromy whose quotient is equivalent to `base`.
pub fn cover_of(o: &Origami, base: &Origami) -> Result<Option<BlockSystem>> {
    for bs in block_systems(&[o.h().clone(), o.v().clone()])? {
        if bs.blocks.len() == base.n() && quotient_origami(o, &bs)?.equivalent(base)? {
            return Ok(Some(bs));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupName {
    Cyclic(usize),
    Dihedral(usize),
    AGL1(usize),
    Alt(usize),
    Sym(usize),
    PSL(usize, u64),
    PGL(usize, u64),
    PGammaL28,
    PSL2_11,
    M11,
    M23,
    Other(String),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Cyclic(n) => write!(f, "C{}", n),
            GroupName::Dihedral(n) => write!(f, "D{}", n),
            GroupName::AGL1(p) => write!(f, "AGL(1,{})", p),
            GroupName::Alt(n) => write!(f, "Alt({})", n),
            GroupName::Sym(n) => write!(f, "Sym({})", n),
            GroupName::PSL(d, q) => write!(f, "PSL({},{})", d, q),
            GroupName::PGL(d, q) => write!(f, "PGL({},{})", d, q),
            GroupName::PGammaL28 => write!(f, "PGammaL(2,8)"),
            GroupName::PSL2_11 => write!(f, "PSL(2,11)"),
            GroupName::M11 => write!(f, "M11"),
            GroupName::M23 => write!(f, "M23"),
            GroupName::Other(o) => write!(f, "Other({})", o),
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `q = p^e` with `p` prime.
fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn gl_orders(d: usize, q: u64) -> (BigUint, BigUint) {
    let qb = BigUint::from(q);
    let mut pgl = qb.pow((d * (d - 1) / 2) as u32);
    for i in 2..=d {
        pgl *= qb.pow(i as u32) - BigUint::one();
    }
    let g = (d as u64).gcd(&(q - 1));
    let psl = &pgl / BigUint::from(g);
    (psl, pgl)
}

/// Every `(d, q)` with `d ≥ 2` and `(q^d − 1)/(q − 1) = n`.
pub fn projective_parameters(n: usize) -> Vec<(usize, u64)> {
    let n = n as u64;
    let mut out = Vec::new();
    for q in 2..n {
        if !is_prime_power(q) {
            continue;
        }
        // 1 + q + ... + q^(d-1)
        let (mut sum, mut pw, mut d) = (1u64, 1u64, 1usize);
        while sum < n {
            pw *= q;
            sum += pw;
            d += 1;
        }
        if sum == n && d >= 2 {
            out.push((d, q));
        }
    }
    out
}

/// Every name in the list whose degree and order match. Alternating and
/// symmetric groups come first.
pub fn candidate_names(n: usize, order: &BigUint) -> Vec<GroupName> {
    let mut out = Vec::new();
    let nf = factorial(n);
    if n >= 3 && *order == &nf / 2u32 {
        out.push(GroupName::Alt(n));
    }
    if *order == nf {
        out.push(GroupName::Sym(n));
    }
    if *order == BigUint::from(n) {
        out.push(GroupName::Cyclic(n));
    }
    if n >= 3 && *order == BigUint::from(2 * n) {
        out.push(GroupName::Dihedral(n));
    }
    if is_prime(n as u64) && *order == BigUint::from(n * (n - 1)) {
        out.push(GroupName::AGL1(n));
    }
    for (d, q) in projective_parameters(n) {
        let (psl, pgl) = gl_orders(d, q);
        if *order == psl {
            out.push(GroupName::PSL(d, q));
        } else if *order == pgl {
            out.push(GroupName::PGL(d, q));
        }
    }
    let o = order.to_u64();
    match (n, o) {
        (9, Some(1512)) => out.push(GroupName::PGammaL28),
        (11, Some(660)) => out.push(GroupName::PSL2_11),
        (11, Some(7920)) => out.push(GroupName::M11),
        (23, Some(10200960)) => out.push(GroupName::M23),
        _ => {}
    }
    out.dedup();
    out
}

pub fn classify(gens: &[Permutation]) -> Result<GroupName> {
    let chain = StabilizerChain::new(gens)?;
    let order = chain.order();
    Ok(candidate_names(chain.degree(), &order)
        .into_iter()
        .next()
        .unwrap_or_else(|| GroupName::Other(order.to_string())))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupAnalysis {
    #[serde(with = "biguint_string")]
    pub order: BigUint,
    pub transitive: bool,
    pub primitive: bool,
    pub minimal_block_systems: Vec<BlockSystem>,
    pub classification: GroupName,
    /// Further names sharing degree and order, if any.
    pub also_matches: Vec<GroupName>,
}

pub fn analyze(gens: &[Permutation]) -> Result<GroupAnalysis> {
    let chain = StabilizerChain::new(gens)?;
    let order = chain.order();
    let transitive = is_transitive(gens);
    let blocks = if transitive { block_systems(gens)? } else { Vec::new() };
    let mut names = candidate_names(chain.degree(), &order);
    let classification = if names.is_empty() {
        GroupName::Other(order.to_string())
    } else {
        names.remove(0)
    };
    Ok(GroupAnalysis {
        order,
        transitive,
        primitive: transitive && blocks.is_empty(),
        minimal_block_systems: blocks,
        classification,
        also_matches: names,
    })
}

pub fn analyze_origami(o: &Origami) -> Result<GroupAnalysis> {
    analyze(&[o.h().clone(), o.v().clone()])
}

pub(crate) mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A 3-cycle in `⟨h, v⟩` for an odd-genus AMN origami, in the origami's own
/// labels. Verified to be a 3-cycle and a group element.
pub fn amn_three_cycle(o: &Origami) -> Result<Permutation> {
    let n = o.n();
    if n < 5 || !o.is_minimal_11() {
        return Err(Error::Precondition("needs a minimal [1,1]-origami".into()));
    }
    let r = standardizing_relabelling(o.h())?;
    let s = o.conjugate(&r)?;
    let c = three_cycle_standard(s.v())?;
    let c = c.conjugate(&r.inverse())?;
    let chain = StabilizerChain::new(&[o.h().clone(), o.v().clone()])?;
    if !chain.contains(&c) {
        return Err(Error::Verification(format!("{} is not in the monodromy group", c)));
    }
    Ok(c)
}

/// Same as [`amn_three_cycle`] with `h = (1, ..., n)` assumed.
pub fn three_cycle_standard(v: &Permutation) -> Result<Permutation> {
    let n = v.degree();
    let sigma = Permutation::standard_cycle(n);
    let rho = v.inverse().mul(&sigma).mul(v);
    let sr = sigma.mul(&rho);
    let rs = rho.mul(&sigma);
    let beta = if rho.apply(1) != n {
        sr.conjugate(&rs)?
    } else {
        let step = sigma.inverse().mul(&rho);
        let t = rho.inverse().apply(1);
        let allowed = |x: usize| x == t || (x % 2 == 1 && x != 1);
        let alpha = (0..n as i64)
            .map(|p| rs.conjugate(&step.pow(-p)).unwrap())
            .find(|a| {
                let moved: Vec<usize> = (1..=n).filter(|&x| a.apply(x) != x).collect();
                moved.contains(&t) && moved.iter().all(|&x| allowed(x))
            })
            .ok_or_else(|| Error::Verification("no suitable conjugate of rho sigma".into()))?;
        sr.conjugate(&alpha)?
    };
    let c = sr.inverse().mul(&beta);
    if c.cycle_type().lengths.first() != Some(&3) || c.support_size() != 3 {
        return Err(Error::Verification(format!("expected a 3-cycle, got {}", c)));
    }
    Ok(c)
}
