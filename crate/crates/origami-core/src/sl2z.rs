//! The SL(2,Z) action on origamis, orbits and Veech stabilizers.
//!
//! `T = [[1,1],[0,1]]` acts by `(h, v) ↦ (h, v h⁻¹)` and `S = [[1,0],[1,1]]`
//! by `(h, v) ↦ (h v⁻¹, v)`. A word acts on the left: its last letter is
//! applied first, and its matrix is the product of its letters in order.
//! Square `i` of the image is the piece of square `i` containing its
//! lower-right corner (for `T`, `S⁻¹`) or lower-left corner (`T⁻¹`, `S`)
//! after cutting and regluing.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::monodromy;
use crate::origami::{canonical_key_with_map, ComponentTag, Origami};
use crate::perm::Permutation;
use crate::spin;
use crate::symmetry;

pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat_inv(a: &Mat2) -> Mat2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    T,
    TInv,
    S,
    SInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::T, Letter::TInv, Letter::S, Letter::SInv];

    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::T => [[1, 1], [0, 1]],
            Letter::TInv => [[1, -1], [0, 1]],
            Letter::S => [[1, 0], [1, 1]],
            Letter::SInv => [[1, 0], [-1, 1]],
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::T => 'T',
            Letter::TInv => 't',
            Letter::S => 'S',
            Letter::SInv => 's',
        }
    }

    pub fn apply(self, o: &Origami) -> Origami {
        let (h, v) = apply_raw(self, o.h().images0(), o.v().images0());
        Origami::new(Permutation::from_raw(h), Permutation::from_raw(v)).expect("degrees agree")
    }
}

fn apply_raw(l: Letter, h: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = h.len();
    let inv = |p: &[u32]| {
        let mut q = vec![0u32; n];
        for (i, &x) in p.iter().enumerate() {
            q[x as usize] = i as u32;
        }
        q
    };
    match l {
        Letter::T => {
            let hi = inv(h);
            (h.to_vec(), (0..n).map(|i| v[hi[i] as usize]).collect())
        }
        Letter::TInv => (h.to_vec(), (0..n).map(|i| v[h[i] as usize]).collect()),
        Letter::S => {
            let vi = inv(v);
            ((0..n).map(|i| h[vi[i] as usize]).collect(), v.to_vec())
        }
        Letter::SInv => ((0..n).map(|i| h[v[i] as usize]).collect(), v.to_vec()),
    }
}

pub fn act_t(o: &Origami) -> Origami {
    Letter::T.apply(o)
}

pub fn act_t_inv(o: &Origami) -> Origami {
    Letter::TInv.apply(o)
}

pub fn act_s(o: &Origami) -> Origami {
    Letter::S.apply(o)
}

pub fn act_s_inv(o: &Origami) -> Origami {
    Letter::SInv.apply(o)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2ZWord {
    pub letters: Vec<Letter>,
}

impl SL2ZWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        SL2ZWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn matrix(&self) -> Mat2 {
        self.letters.iter().fold(IDENTITY, |m, l| mat_mul(&m, &l.matrix()))
    }

    /// The matrix, or `None` if an entry leaves `i64`.
    pub fn checked_matrix(&self) -> Option<Mat2> {
        let mut m = IDENTITY;
        for l in &self.letters {
            let b = l.matrix();
            let mut c = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = m[i][0].checked_mul(b[0][j])?.checked_add(m[i][1].checked_mul(b[1][j])?)?;
                }
            }
            m = c;
        }
        Some(m)
    }

    pub fn inverse(&self) -> Self {
        SL2ZWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self · other`: `other` acts first.
    pub fn then_after(&self, other: &SL2ZWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        SL2ZWord::new(letters).reduced()
    }

    /// Free reduction.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        SL2ZWord::new(out)
    }

    pub fn apply(&self, o: &Origami) -> Origami {
        self.letters.iter().rev().fold(o.clone(), |x, l| l.apply(&x))
    }

    pub fn power(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        SL2ZWord::new(letters)
    }
}

impl fmt::Display for SL2ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SL2ZWord {
    type Err = Error;

    /// Letters `T`, `t` (= T⁻¹), `S`, `s` (= S⁻¹); whitespace ignored; `1`
    /// or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            letters.push(match c {
                'T' => Letter::T,
                't' => Letter::TInv,
                'S' => Letter::S,
                's' => Letter::SInv,
                '1' => continue,
                _ => return Err(Error::Parse(format!("bad word letter {:?}", c))),
            });
        }
        Ok(SL2ZWord::new(letters))
    }
}

impl Serialize for SL2ZWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SL2ZWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A word in `T^±1, S^±1` with the given matrix (Euclidean reduction).
pub fn word_for_matrix(m: &Mat2) -> Result<SL2ZWord> {
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 {
        return Err(Error::Precondition("matrix is not in SL(2,Z)".into()));
    }
    // Left-multiply by elementary letters until upper triangular; record
    // their inverses.
    let mut cur = *m;
    let mut prefix: Vec<Letter> = Vec::new();
    let push = |cur: &mut Mat2, l: Letter, k: i64, prefix: &mut Vec<Letter>| {
        // cur <- l^k cur, prefix gets l^-k
        let (step, undo) = if k >= 0 { (l, l.inverse()) } else { (l.inverse(), l) };
        for _ in 0..k.abs() {
            *cur = mat_mul(&step.matrix(), cur);
            prefix.push(undo);
        }
    };
    while cur[1][0] != 0 {
        let (a, c) = (cur[0][0], cur[1][0]);
        if a == 0 {
            // c = ±1: make a = 1, then clear c.
            push(&mut cur, Letter::T, c, &mut prefix);
            push(&mut cur, Letter::SInv, c, &mut prefix);
        } else if a.abs() >= c.abs() {
            push(&mut cur, Letter::TInv, a / c, &mut prefix);
        } else {
            push(&mut cur, Letter::SInv, c / a, &mut prefix);
        }
    }
    // m = prefix · cur, with cur = ±T^b.
    let mut letters = prefix;
    if cur[0][0] == -1 {
        // −I = (T S⁻¹ T)²
        letters.extend_from_slice(&[Letter::T, Letter::SInv, Letter::T, Letter::T, Letter::SInv, Letter::T]);
        cur = mat_mul(&[[-1, 0], [0, -1]], &cur);
    }
    let b = cur[0][1];
    let l = if b >= 0 { Letter::T } else { Letter::TInv };
    letters.extend(std::iter::repeat(l).take(b.unsigned_abs() as usize));
    let w = SL2ZWord::new(letters).reduced();
    debug_assert_eq!(w.matrix(), *m);
    Ok(w)
}

/// `r` with `o.conjugate(r) == word.apply(o)`, if the word stabilizes `o`.
pub fn stabilizing_relabelling(o: &Origami, word: &SL2ZWord) -> Result<Permutation> {
    o.isomorphism_to(&word.apply(o))?.ok_or(Error::NotStabilizing)
}

/// Orbit under `T^±1, S^±1` as a Schreier graph on canonical keys.
pub struct OrbitGraph {
    pub n: usize,
    pub keys: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, u32>,
    /// BFS tree: `parent[x] = (p, a)` with `a(p) ≅ x`.
    pub parent: Vec<Option<(u32, Letter)>>,
    /// `edges[x][k]` is the index of `Letter::ALL[k]` applied to `x`.
    pub edges: Vec<[u32; 4]>,
    pub complete: bool,
}

fn key_halves(key: &[u16]) -> (Vec<u32>, Vec<u32>) {
    let n = key.len() / 2;
    (
        key[..n].iter().map(|&x| x as u32).collect(),
        key[n..].iter().map(|&x| x as u32).collect(),
    )
}

fn key_to_origami(key: &[u16]) -> Origami {
    let (h, v) = key_halves(key);
    Origami::new(Permutation::from_raw(h), Permutation::from_raw(v)).expect("valid key")
}

impl OrbitGraph {
    /// BFS from `seed`; stops once more than `limit` members are known.
    pub fn build(seed: &Origami, limit: Option<usize>) -> Result<Self> {
        let n = seed.n();
        let start = seed.canonical_key()?;
        let mut g = OrbitGraph {
            n,
            keys: vec![start.clone()],
            index: HashMap::from([(start, 0u32)]),
            parent: vec![None],
            edges: Vec::new(),
            complete: true,
        };
        let mut frontier: Vec<u32> = vec![0];
        while !frontier.is_empty() {
            let images: Vec<[Vec<u16>; 4]> = frontier
                .par_iter()
                .map(|&x| {
                    let (h, v) = key_halves(&g.keys[x as usize]);
                    Letter::ALL.map(|l| {
                        let (h2, v2) = apply_raw(l, &h, &v);
                        canonical_key_with_map(&h2, &v2).expect("connected").0
                    })
                })
                .collect();
            let mut next = Vec::new();
            for (&x, imgs) in frontier.iter().zip(images) {
                let mut row = [0u32; 4];
                for (k, key) in imgs.into_iter().enumerate() {
                    let id = match g.index.get(&key) {
                        Some(&id) => id,
                        None => {
                            let id = g.keys.len() as u32;
                            g.index.insert(key.clone(), id);
                            g.keys.push(key);
                            g.parent.push(Some((x, Letter::ALL[k])));
                            next.push(id);
                            id
                        }
                    };
                    row[k] = id;
                }
                debug_assert_eq!(g.edges.len(), x as usize);
                g.edges.push(row);
            }
            if let Some(lim) = limit {
                if g.keys.len() > lim {
                    g.complete = false;
                    break;
                }
            }
            frontier = next;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, o: &Origami) -> Result<bool> {
        Ok(o.n() == self.n && self.index.contains_key(&o.canonical_key()?))
    }

    pub fn member(&self, i: usize) -> Origami {
        key_to_origami(&self.keys[i])
    }

    /// Word carrying the seed to member `x`.
    pub fn path(&self, mut x: u32) -> SL2ZWord {
        let mut letters = Vec::new();
        while let Some((p, a)) = self.parent[x as usize] {
            letters.push(a);
            x = p;
        }
        SL2ZWord::new(letters)
    }

    /// Sorted canonical lines of all members.
    pub fn member_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.keys.par_iter().map(|k| key_to_origami(k).to_line()).collect();
        lines.sort();
        lines
    }

    /// Schreier generators `path(y)⁻¹ · a · path(x)`, shortest first, one
    /// per matrix, skipping those with matrix `I` or overflowing entries.
    pub fn schreier_words(&self, budget: Option<usize>) -> Vec<SL2ZWord> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (x, row) in self.edges.iter().enumerate() {
            for (k, &y) in row.iter().enumerate() {
                let a = Letter::ALL[k];
                if self.parent[y as usize] == Some((x as u32, a)) {
                    continue;
                }
                let mut letters = self.path(y).inverse().letters;
                letters.push(a);
                letters.extend(self.path(x as u32).letters);
                let w = SL2ZWord::new(letters).reduced();
                if let Some(m) = w.checked_matrix() {
                    if m != IDENTITY {
                        out.push((m, w));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.1.cmp(&b.1)));
        let mut out: Vec<SL2ZWord> = out.into_iter().filter(|(m, _)| seen.insert(*m)).map(|(_, w)| w).collect();
        if let Some(b) = budget {
            out.truncate(b);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerElement {
    pub word: SL2ZWord,
    pub matrix: Mat2,
    pub relabelling: Permutation,
}

/// Elements of the Veech group of `seed` from the Schreier generators of
/// its orbit graph, each with the relabelling `r` such that
/// `seed.conjugate(r) == word.apply(seed)`.
pub fn veech_stabilizer(seed: &Origami, budget: Option<usize>, limit: Option<usize>) -> Result<Vec<StabilizerElement>> {
    let g = OrbitGraph::build(seed, limit)?;
    if !g.complete {
        return Err(Error::LimitExceeded(limit.unwrap_or(0)));
    }
    g.schreier_words(budget)
        .into_iter()
        .map(|word| {
            let relabelling = stabilizing_relabelling(seed, &word)?;
            Ok(StabilizerElement {
                matrix: word.matrix(),
                word,
                relabelling,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub stratum: String,
    /// From a member with a single horizontal cylinder, when defined.
    pub spin_parity: Option<u8>,
    pub component: ComponentTag,
    pub monodromy: String,
    pub monodromy_order: String,
    pub double_cover: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitRecord {
    /// Canonical line of the seed.
    pub seed: String,
    pub size: usize,
    pub complete: bool,
    pub invariants: OrbitInvariants,
    #[serde(skip)]
    pub members: Vec<String>,
}

impl OrbitRecord {
    pub fn contains_line(&self, canonical_line: &str) -> bool {
        self.members.binary_search_by(|m| m.as_str().cmp(canonical_line)).is_ok()
    }
}

fn invariants_of(o: &Origami, single_cylinder: Option<&Origami>) -> Result<OrbitInvariants> {
    let stratum = o.stratum()?;
    let analysis = monodromy::analyze_origami(o)?;
    let double_cover = symmetry::minus_identity_symmetric(o)?.symmetric;
    let spin_parity = match single_cylinder {
        Some(x) if stratum.all_even() && !stratum.zero_orders.is_empty() => Some(spin::spin_parity(x)?),
        _ => None,
    };
    let hyp = match single_cylinder {
        Some(x) => symmetry::is_hyperelliptic(x)?,
        None => false,
    };
    let component = if stratum.zero_orders.is_empty() {
        ComponentTag::NotApplicable
    } else if hyp {
        ComponentTag::Hyperelliptic
    } else {
        match spin_parity {
            Some(1) => ComponentTag::OddSpin,
            Some(_) => ComponentTag::EvenSpin,
            None => ComponentTag::Connected,
        }
    };
    Ok(OrbitInvariants {
        stratum: stratum.to_string(),
        spin_parity,
        component,
        monodromy: analysis.classification.to_string(),
        monodromy_order: analysis.order.to_string(),
        double_cover,
    })
}

/// Orbit of `seed`, with invariants computed on the seed and re-checked on
/// up to ten members chosen by a fixed-seed generator.
pub fn orbit(seed: &Origami, limit: Option<usize>) -> Result<OrbitRecord> {
    let g = OrbitGraph::build(seed, limit)?;
    record_from_graph(&g)
}

fn record_from_graph(g: &OrbitGraph) -> Result<OrbitRecord> {
    let seed = g.member(0);
    let members = g.member_lines();
    let single = if seed.h().is_full_cycle() {
        Some(seed.clone())
    } else {
        members
            .iter()
            .map(|l| Origami::parse_line(l))
            .find(|x| x.as_ref().map(|x| x.h().is_full_cycle()).unwrap_or(false))
            .transpose()?
    };
    let invariants = invariants_of(&seed, single.as_ref())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sample: Vec<&String> = members.choose_multiple(&mut rng, 10).collect();
    for line in sample {
        let x = Origami::parse_line(line)?;
        let ok = x.stratum()?.to_string() == invariants.stratum
            && monodromy::group_order(&[x.h().clone(), x.v().clone()])?.to_string() == invariants.monodromy_order
            && symmetry::minus_identity_symmetric(&x)?.symmetric == invariants.double_cover;
        if !ok {
            return Err(Error::Verification(format!("orbit invariant differs at {}", line)));
        }
    }
    Ok(OrbitRecord {
        seed: seed.to_line(),
        size: g.len(),
        complete: g.complete,
        invariants,
        members,
    })
}

/// On-disk orbit store: `<hash>.orbit` holds sorted member lines and
/// `<hash>.json` the metadata, where `<hash>` is the SHA-256 of the seed's
/// canonical line. Writers hold an exclusive lock on `<hash>.lock`.
#[derive(Clone, Debug)]
pub struct OrbitCache {
    dir: PathBuf,
}

impl OrbitCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(OrbitCache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(canonical_line: &str) -> String {
        hex::encode(Sha256::digest(canonical_line.as_bytes()))
    }

    fn paths(&self, key: &str) -> (PathBuf, PathBuf, PathBuf) {
        (
            self.dir.join(format!("{}.orbit", key)),
            self.dir.join(format!("{}.json", key)),
            self.dir.join(format!("{}.lock", key)),
        )
    }

    fn lock_file(path: &Path) -> Result<File> {
        Ok(OpenOptions::new().create(true).truncate(false).write(true).open(path)?)
    }

    pub fn load(&self, seed: &Origami) -> Result<Option<OrbitRecord>> {
        let line = seed.canonical_form()?.to_line();
        let (orbit_path, meta_path, lock_path) = self.paths(&Self::key(&line));
        if !meta_path.exists() {
            return Ok(None);
        }
        let lock = Self::lock_file(&lock_path)?;
        lock.lock_shared()?;
        let mut rec: OrbitRecord = serde_json::from_reader(BufReader::new(File::open(&meta_path)?))?;
        rec.members = BufReader::new(File::open(&orbit_path)?)
            .lines()
            .collect::<std::io::Result<Vec<_>>>()?;
        lock.unlock()?;
        if rec.seed != line || rec.members.len() != rec.size {
            return Err(Error::Verification(format!("cache entry for {} is inconsistent", line)));
        }
        Ok(Some(rec))
    }

    pub fn store(&self, rec: &OrbitRecord) -> Result<()> {
        let (orbit_path, meta_path, lock_path) = self.paths(&Self::key(&rec.seed));
        let lock = Self::lock_file(&lock_path)?;
        lock.lock()?;
        let tmp = orbit_path.with_extension("orbit.tmp");
        {
            let mut f = std::io::BufWriter::new(File::create(&tmp)?);
            for m in &rec.members {
                writeln!(f, "{}", m)?;
            }
            f.flush()?;
        }
        fs::rename(&tmp, &orbit_path)?;
        let tmp = meta_path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(rec)?)?;
        fs::rename(&tmp, &meta_path)?;
        lock.unlock()?;
        Ok(())
    }
}

/// Orbit through the cache: complete orbits are stored, hits skip the BFS.
pub fn orbit_cached(seed: &Origami, limit: Option<usize>, cache: Option<&OrbitCache>) -> Result<OrbitRecord> {
    if let Some(c) = cache {
        if let Some(rec) = c.load(seed)? {
            return Ok(rec);
        }
    }
    let rec = orbit(seed, limit)?;
    if let Some(c) = cache {
        if rec.complete {
            c.store(&rec)?;
        }
    }
    Ok(rec)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub orbits: Vec<OrbitRecord>,
    /// Orbit index of each input.
    pub assignment: Vec<usize>,
    /// Number of orbits per component.
    pub per_component: BTreeMap<ComponentTag, usize>,
}

/// Groups `origamis` into SL(2,Z) orbits, computing each orbit once.
pub fn orbit_partition(origamis: &[Origami], limit: Option<usize>, cache: Option<&OrbitCache>) -> Result<OrbitPartition> {
    let mut orbits: Vec<OrbitRecord> = Vec::new();
    let mut assignment = Vec::with_capacity(origamis.len());
    for o in origamis {
        let line = o.canonical_form()?.to_line();
        if let Some(i) = orbits.iter().position(|r| r.contains_line(&line)) {
            assignment.push(i);
            continue;
        }
        let rec = orbit_cached(o, limit, cache)?;
        if !rec.complete {
            return Err(Error::LimitExceeded(limit.unwrap_or(0)));
        }
        assignment.push(orbits.len());
        orbits.push(rec);
    }
    let mut per_component = BTreeMap::new();
    for r in &orbits {
        *per_component.entry(r.invariants.component).or_insert(0) += 1;
    }
    Ok(OrbitPartition {
        orbits,
        assignment,
        per_component,
    })
}
