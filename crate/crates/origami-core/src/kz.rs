//! Integral homology of an origami and the action of affine stabilizer
//! elements on it.
//!
//! Edges: `σ_i` (index `i`) is the bottom side of square `i`, oriented
//! rightwards; `ζ_i` (index `n + i`) is its left side, oriented upwards.
//! Square `i` has boundary `σ_i + ζ_{h(i)} − σ_{v(i)} − ζ_i`.

use std::collections::VecDeque;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, QMat, Q};
use crate::origami::Origami;
use crate::perm::Permutation;
use crate::poly::PinchingReport;
use crate::sl2z::{self, Letter, Mat2, SL2ZWord};

pub type IMat = Vec<Vec<i64>>;

#[derive(Clone, Debug)]
pub struct HomologyModel {
    origami: Origami,
    vertex_of: Vec<usize>,
    vertex_count: usize,
    /// Basis cycles as edge chains of length `2n`.
    basis: Vec<Vec<i64>>,
    /// Edges outside tree and cotree; coordinate `k` is the coefficient on
    /// `leftover[k]` after reduction.
    leftover: Vec<usize>,
    /// Cotree faces in parent-first order with the edge to their parent.
    cotree: Vec<(usize, usize)>,
    intersection: IMat,
    holonomy: Vec<[i64; 2]>,
}

fn dual_ends(o: &Origami, e: usize, vi: &Permutation, hi: &Permutation) -> (usize, usize) {
    let n = o.n();
    if e < n {
        (vi.apply0(e), e)
    } else {
        (hi.apply0(e - n), e - n)
    }
}

impl HomologyModel {
    pub fn new(o: &Origami) -> Result<Self> {
        Self::build(o, None)
    }

    /// Same space, different tree/cotree choice: the basis changes, the
    /// invariants do not.
    pub fn with_seed(o: &Origami, seed: u64) -> Result<Self> {
        Self::build(o, Some(seed))
    }

    fn build(o: &Origami, seed: Option<u64>) -> Result<Self> {
        if !o.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = o.n();
        let (classes, vertex_of) = o.vertex_classes();
        let nv = classes.len();
        let (h, v) = (o.h(), o.v());
        let (hi, vi) = (h.inverse(), v.inverse());
        let tail = |e: usize| vertex_of[e % n];
        let head = |e: usize| {
            if e < n {
                vertex_of[h.apply0(e)]
            } else {
                vertex_of[v.apply0(e - n)]
            }
        };
        let mut edges: Vec<usize> = (0..2 * n).collect();
        if let Some(s) = seed {
            edges.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
        }

        // Spanning tree of the 1-skeleton.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for &e in &edges {
            adj[tail(e)].push((e, head(e)));
            adj[head(e)].push((e, tail(e)));
        }
        let mut in_tree = vec![false; 2 * n];
        let mut parent: Vec<Option<usize>> = vec![None; nv];
        let mut seen = vec![false; nv];
        let root = edges.first().map(|&e| tail(e)).unwrap_or(0);
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(e, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    in_tree[e] = true;
                    parent[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        // Chain from vertex x down the tree to the root.
        let to_root = |mut x: usize| {
            let mut c = vec![0i64; 2 * n];
            while let Some(e) = parent[x] {
                if tail(e) == x {
                    c[e] += 1;
                    x = head(e);
                } else {
                    c[e] -= 1;
                    x = tail(e);
                }
            }
            c
        };

        // Dual spanning tree on the remaining edges.
        let mut fadj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &e in &edges {
            if in_tree[e] {
                continue;
            }
            let (a, b) = dual_ends(o, e, &vi, &hi);
            if a != b {
                fadj[a].push((e, b));
                fadj[b].push((e, a));
            }
        }
        let mut in_cotree = vec![false; 2 * n];
        let mut fseen = vec![false; n];
        let froot = edges.first().map(|&e| e % n).unwrap_or(0);
        fseen[froot] = true;
        let mut cotree = Vec::with_capacity(n.saturating_sub(1));
        let mut queue = VecDeque::from([froot]);
        while let Some(f) = queue.pop_front() {
            for &(e, g) in &fadj[f] {
                if !fseen[g] {
                    fseen[g] = true;
                    in_cotree[e] = true;
                    cotree.push((g, e));
                    queue.push_back(g);
                }
            }
        }
        if cotree.len() + 1 != n {
            return Err(Error::Verification("dual graph of the complement is disconnected".into()));
        }
        let leftover: Vec<usize> = (0..2 * n).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
        let basis: Vec<Vec<i64>> = leftover
            .iter()
            .map(|&e| {
                let mut c = to_root(head(e));
                let t = to_root(tail(e));
                for (x, y) in c.iter_mut().zip(&t) {
                    *x -= y;
                }
                c[e] += 1;
                c
            })
            .collect();
        let holonomy = basis.iter().map(|c| chain_holonomy(c, n)).collect();
        let mut model = HomologyModel {
            origami: o.clone(),
            vertex_of,
            vertex_count: nv,
            basis,
            leftover,
            cotree,
            intersection: Vec::new(),
            holonomy,
        };
        model.intersection = model.compute_intersection()?;
        Ok(model)
    }

    pub fn origami(&self) -> &Origami {
        &self.origami
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn genus(&self) -> usize {
        self.basis.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn intersection(&self) -> &IMat {
        &self.intersection
    }

    pub fn intersection_q(&self) -> QMat {
        linalg::from_int(&self.intersection)
    }

    /// Rows `(∫dx, ∫dy)` of the basis cycles.
    pub fn holonomy(&self) -> &[[i64; 2]] {
        &self.holonomy
    }

    pub fn face_boundary(&self, i: usize) -> Vec<i64> {
        let n = self.origami.n();
        let mut c = vec![0i64; 2 * n];
        c[i] += 1;
        c[n + self.origami.h().apply0(i)] += 1;
        c[self.origami.v().apply0(i)] -= 1;
        c[n + i] -= 1;
        c
    }

    pub fn is_cycle(&self, c: &[i64]) -> bool {
        let n = self.origami.n();
        let mut d = vec![0i64; self.vertex_count];
        for (e, &x) in c.iter().enumerate() {
            let (t, hd) = if e < n {
                (self.vertex_of[e], self.vertex_of[self.origami.h().apply0(e)])
            } else {
                (self.vertex_of[e - n], self.vertex_of[self.origami.v().apply0(e - n)])
            };
            d[hd] += x;
            d[t] -= x;
        }
        d.iter().all(|&x| x == 0)
    }

    /// Coordinates of a cycle in the basis.
    pub fn coordinates(&self, c: &[i64]) -> Result<Vec<i64>> {
        if c.len() != 2 * self.origami.n() || !self.is_cycle(c) {
            return Err(Error::Precondition("chain is not a cycle".into()));
        }
        let mut c = c.to_vec();
        for &(f, e) in &self.cotree {
            let b = self.face_boundary(f);
            let k = c[e] * b[e];
            if k != 0 {
                for (x, y) in c.iter_mut().zip(&b) {
                    *x -= k * y;
                }
            }
        }
        Ok(self.leftover.iter().map(|&e| c[e]).collect())
    }

    /// Chain `Σ a_i σ_i + Σ b_i ζ_i` from 1-based labelled terms.
    pub fn chain(&self, sigma: &[(usize, i64)], zeta: &[(usize, i64)]) -> Vec<i64> {
        let n = self.origami.n();
        let mut c = vec![0i64; 2 * n];
        for &(i, k) in sigma {
            c[i - 1] += k;
        }
        for &(i, k) in zeta {
            c[n + i - 1] += k;
        }
        c
    }

    fn compute_intersection(&self) -> Result<IMat> {
        let o = &self.origami;
        let n = o.n();
        let g2 = self.rank();
        let (hi, vi) = (o.h().inverse(), o.v().inverse());
        // Fundamental cycles of the dual graph, as dual-edge chains.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for e in 0..2 * n {
            let (a, b) = dual_ends(o, e, &vi, &hi);
            adj[a].push((e, b));
            adj[b].push((e, a));
        }
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut tree = vec![false; 2 * n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for &(e, g) in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    tree[e] = true;
                    parent[g] = Some(e);
                    queue.push_back(g);
                }
            }
        }
        let to_root = |mut f: usize| {
            let mut c = vec![0i64; 2 * n];
            while let Some(e) = parent[f] {
                let (a, b) = dual_ends(o, e, &vi, &hi);
                if a == f {
                    c[e] += 1;
                    f = b;
                } else {
                    c[e] -= 1;
                    f = a;
                }
            }
            c
        };
        let duals: Vec<Vec<i64>> = (0..2 * n)
            .filter(|&e| !tree[e])
            .map(|e| {
                let (a, b) = dual_ends(o, e, &vi, &hi);
                let mut w = to_root(b);
                for (x, y) in w.iter_mut().zip(to_root(a)) {
                    *x -= y;
                }
                w[e] += 1;
                w
            })
            .collect();
        // A dual crossing of σ_i is homotopic to ζ_{v⁻¹(i)} through the
        // square below; a crossing of ζ_i to σ_{h⁻¹(i)} through the square
        // on the left.
        let mut classes = linalg::zeros(g2, duals.len());
        for (k, w) in duals.iter().enumerate() {
            let mut p = vec![0i64; 2 * n];
            for i in 0..n {
                p[n + vi.apply0(i)] += w[i];
                p[hi.apply0(i)] += w[n + i];
            }
            for (j, x) in self.coordinates(&p)?.into_iter().enumerate() {
                classes[j][k] = linalg::q(x);
            }
        }
        // Rightward crossing upward counts +1.
        let mut pairing = linalg::zeros(g2, duals.len());
        for (i, z) in self.basis.iter().enumerate() {
            for (k, w) in duals.iter().enumerate() {
                let s: i64 = (0..n).map(|j| z[j] * w[j] - z[n + j] * w[n + j]).sum();
                pairing[i][k] = linalg::q(s);
            }
        }
        let c = linalg::solve(&classes, &linalg::identity(g2))
            .ok_or_else(|| Error::Verification("dual cycles do not span homology".into()))?;
        let form = linalg::mul(&pairing, &c);
        let form = linalg::to_i64(&form).ok_or_else(|| Error::Verification("non-integral intersection".into()))?;
        let qf = linalg::from_int(&form);
        let antisym = (0..g2).all(|i| (0..g2).all(|j| form[i][j] == -form[j][i]));
        if !antisym || !linalg::det(&qf).is_one() {
            return Err(Error::Verification("intersection form is not unimodular symplectic".into()));
        }
        Ok(form)
    }

    /// Integer basis of the lattice of zero-holonomy classes, as columns.
    pub fn zero_holonomy_basis(&self) -> IMat {
        let rows: IMat = (0..2).map(|r| self.holonomy.iter().map(|h| h[r]).collect()).collect();
        integer_kernel(&rows)
    }
}

fn chain_holonomy(c: &[i64], n: usize) -> [i64; 2] {
    [c[..n].iter().sum(), c[n..].iter().sum()]
}

/// Lattice basis (columns) of `{x ∈ Z^m : a x = 0}` by unimodular column
/// reduction.
pub fn integer_kernel(a: &[Vec<i64>]) -> IMat {
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    let mut w: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i128).collect()).collect();
    let col_op = |w: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, dst: usize, src: usize, k: i128| {
        for row in w.iter_mut() {
            row[dst] -= k * row[src];
        }
        for row in u.iter_mut() {
            row[dst] -= k * row[src];
        }
    };
    let swap = |w: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in w.iter_mut() {
            row.swap(x, y);
        }
        for row in u.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut rank = 0;
    for r in 0..a.len() {
        loop {
            let nz: Vec<usize> = (rank..m).filter(|&j| w[r][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap(&mut w, &mut u, rank, j);
                    rank += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| w[r][j].abs()).unwrap();
            swap(&mut w, &mut u, rank, p);
            for j in rank + 1..m {
                if w[r][j] != 0 {
                    let k = w[r][j] / w[r][rank];
                    col_op(&mut w, &mut u, j, rank, k);
                }
            }
        }
    }
    u.iter().map(|row| row[rank..].iter().map(|&x| x as i64).collect()).collect()
}

/// Image of an edge chain under the shear-and-recut map of one letter,
/// from `(h, v)` to `letter.apply((h, v))`.
fn letter_chain_map(l: Letter, h: &Permutation, v: &Permutation, c: &[i64]) -> Vec<i64> {
    let n = h.degree();
    let (hi, vi) = (h.inverse(), v.inverse());
    let mut out = vec![0i64; 2 * n];
    for i in 0..n {
        let (s, z) = (c[i], c[n + i]);
        match l {
            Letter::T => {
                out[i] += s + z;
                out[n + h.apply0(i)] += z;
            }
            Letter::TInv => {
                let j = hi.apply0(i);
                out[i] += s;
                out[j] -= z;
                out[n + j] += z;
            }
            Letter::S => {
                out[n + i] += s + z;
                out[v.apply0(i)] += s;
            }
            Letter::SInv => {
                let j = vi.apply0(i);
                out[n + i] += z;
                out[n + j] -= s;
                out[j] += s;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymplecticAction {
    pub word: SL2ZWord,
    pub word_matrix: Mat2,
    /// Columns are images of basis cycles.
    pub matrix_full: IMat,
    pub matrix_taut: IMat,
    #[serde(with = "qmat_strings")]
    pub matrix_zero: QMat,
}

/// Action of a stabilizing word on `H_1`, given the relabelling `r` with
/// `o.conjugate(r) == word.apply(o)`.
pub fn action(model: &HomologyModel, word: &SL2ZWord, relabelling: &Permutation) -> Result<SymplecticAction> {
    let o = &model.origami;
    let n = o.n();
    let image = word.apply(o);
    if o.conjugate(relabelling)? != image {
        return Err(Error::NotStabilizing);
    }
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(model.rank());
    for z in &model.basis {
        let mut cur = o.clone();
        let mut c = z.clone();
        for &l in word.letters.iter().rev() {
            c = letter_chain_map(l, cur.h(), cur.v(), &c);
            cur = l.apply(&cur);
        }
        // Square r(i) of the image is square i of o.
        let back: Vec<i64> = (0..2 * n)
            .map(|e| {
                let (off, i) = if e < n { (0, e) } else { (n, e - n) };
                c[off + relabelling.apply0(i)]
            })
            .collect();
        cols.push(model.coordinates(&back)?);
    }
    let g2 = model.rank();
    let full: IMat = (0..g2).map(|i| (0..g2).map(|j| cols[j][i]).collect()).collect();
    let fq = linalg::from_int(&full);
    let form = model.intersection_q();
    if linalg::mul(&linalg::mul(&linalg::transpose(&fq), &form), &fq) != form {
        return Err(Error::Verification("action does not preserve the intersection form".into()));
    }
    let a = word.matrix();
    for (j, col) in cols.iter().enumerate() {
        let hz = model.holonomy[j];
        let hm = (0..g2).fold([0i64; 2], |acc, i| {
            [acc[0] + col[i] * model.holonomy[i][0], acc[1] + col[i] * model.holonomy[i][1]]
        });
        let expect = [a[0][0] * hz[0] + a[0][1] * hz[1], a[1][0] * hz[0] + a[1][1] * hz[1]];
        if hm != expect {
            return Err(Error::Verification("holonomy is not equivariant".into()));
        }
    }
    let taut = linalg::restrict(&fq, &tautological_basis(model))
        .ok_or_else(|| Error::Verification("tautological plane is not invariant".into()))?;
    let matrix_taut = linalg::to_i64(&taut).ok_or_else(|| Error::Verification("non-integral tautological block".into()))?;
    if matrix_taut != vec![a[0].to_vec(), a[1].to_vec()] {
        return Err(Error::Verification("tautological block differs from the word matrix".into()));
    }
    let k = linalg::from_int(&model.zero_holonomy_basis());
    let matrix_zero = linalg::restrict(&fq, &k)
        .ok_or_else(|| Error::Verification("zero-holonomy subspace is not invariant".into()))?;
    Ok(SymplecticAction {
        word: word.clone(),
        word_matrix: a,
        matrix_full: full,
        matrix_taut,
        matrix_zero,
    })
}

/// Action of the Veech group element with the given matrix.
pub fn action_for_matrix(model: &HomologyModel, m: &Mat2) -> Result<SymplecticAction> {
    let word = sl2z::word_for_matrix(m)?;
    let r = sl2z::stabilizing_relabelling(&model.origami, &word)?;
    action(model, &word, &r)
}

/// Basis `u` of the tautological plane normalised so that `hol(u) = I`.
pub fn tautological_basis(model: &HomologyModel) -> QMat {
    let hol: QMat = model.holonomy.iter().map(|h| vec![linalg::q(h[0]), linalg::q(h[1])]).collect();
    let qinv = linalg::inverse(&model.intersection_q()).expect("unimodular form");
    let t = linalg::mul(&qinv, &hol);
    let norm = linalg::inverse(&linalg::mul(&linalg::transpose(&hol), &t)).expect("holonomy pairing is nondegenerate");
    linalg::mul(&t, &norm)
}

/// Intersection form on the zero-holonomy lattice basis.
pub fn zero_holonomy_form(model: &HomologyModel) -> QMat {
    let k = linalg::from_int(&model.zero_holonomy_basis());
    linalg::mul(&linalg::mul(&linalg::transpose(&k), &model.intersection_q()), &k)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionSplit {
    #[serde(with = "qmat_strings")]
    pub plus: QMat,
    #[serde(with = "qmat_strings")]
    pub minus: QMat,
    #[serde(with = "qmat_strings")]
    pub plus_form: QMat,
    #[serde(with = "qmat_strings")]
    pub minus_form: QMat,
}

/// Word with matrix `−I`.
pub fn minus_identity_word() -> SL2ZWord {
    SL2ZWord::new(vec![Letter::T, Letter::SInv, Letter::T]).power(2)
}

/// Restricts `act` to the `±1` eigenspaces of the involution `rho` inside
/// the zero-holonomy subspace.
pub fn split_by_involution(model: &HomologyModel, rho: &SymplecticAction, act: &SymplecticAction) -> Result<InvolutionSplit> {
    let r = &rho.matrix_zero;
    let d = r.len();
    if linalg::mul(r, r) != linalg::identity(d) {
        return Err(Error::Precondition("rho is not an involution".into()));
    }
    let form = zero_holonomy_form(model);
    let eig = |s: i64| {
        let shifted: QMat = (0..d)
            .map(|i| (0..d).map(|j| if i == j { &r[i][j] - linalg::q(s) } else { r[i][j].clone() }).collect())
            .collect();
        linalg::integral_columns(&linalg::kernel(&shifted))
    };
    let (ep, em) = (eig(1), eig(-1));
    let g = model.genus();
    if linalg::cols(&ep) + 1 != g || linalg::cols(&em) + 1 != g {
        return Err(Error::Verification("eigenspaces do not have dimension g - 1".into()));
    }
    let block = |e: &QMat| {
        linalg::restrict(&act.matrix_zero, e).ok_or_else(|| Error::Verification("block decomposition fails".into()))
    };
    let restrict_form = |e: &QMat| linalg::mul(&linalg::mul(&linalg::transpose(e), &form), e);
    Ok(InvolutionSplit {
        plus: block(&ep)?,
        minus: block(&em)?,
        plus_form: restrict_form(&ep),
        minus_form: restrict_form(&em),
    })
}

pub fn to_strings(m: &QMat) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub(crate) mod qmat_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &QMat, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_strings(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QMat, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|r| r.iter().map(|x| x.parse::<Q>().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

pub fn is_identity(m: &QMat) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    pub block: String,
    /// Words whose product was tested, acting right to left.
    pub words: Vec<SL2ZWord>,
    pub matrices: Vec<Mat2>,
    pub report: PinchingReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub block: String,
    pub pinching_found: bool,
    pub unipotent_nonlagrangian_found: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KzSurvey {
    pub origami: String,
    pub genus: usize,
    pub stabilizer_words: usize,
    pub reports: Vec<BlockReport>,
    pub summary: Vec<BlockVerdict>,
}

/// Tests the first `words` Veech group elements, and products of pairs of
/// them, on the zero-holonomy block or on the two `−I` eigenblocks.
pub fn survey(o: &Origami, words: usize, split_involution: bool, limit: Option<usize>) -> Result<KzSurvey> {
    let model = HomologyModel::new(o)?;
    let stab = sl2z::veech_stabilizer(o, Some(words), limit)?;
    let acts: Vec<SymplecticAction> = stab
        .iter()
        .map(|e| action(&model, &e.word, &e.relabelling))
        .collect::<Result<_>>()?;
    let mut blocks: Vec<(String, Vec<QMat>, QMat)> = Vec::new();
    if split_involution {
        let w = minus_identity_word();
        let r = sl2z::stabilizing_relabelling(o, &w)
            .map_err(|_| Error::Precondition("origami is not -I symmetric".into()))?;
        let rho = action(&model, &w, &r)?;
        let splits: Vec<InvolutionSplit> = acts
            .iter()
            .map(|a| split_by_involution(&model, &rho, a))
            .collect::<Result<_>>()?;
        let form = |f: fn(&InvolutionSplit) -> &QMat| {
            splits.first().map(|s| f(s).clone()).unwrap_or_default()
        };
        blocks.push(("plus".into(), splits.iter().map(|s| s.plus.clone()).collect(), form(|s| &s.plus_form)));
        blocks.push(("minus".into(), splits.iter().map(|s| s.minus.clone()).collect(), form(|s| &s.minus_form)));
    } else {
        blocks.push(("zero".into(), acts.iter().map(|a| a.matrix_zero.clone()).collect(), zero_holonomy_form(&model)));
    }
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for (name, mats, form) in blocks {
        let mut verdict = BlockVerdict {
            block: name.clone(),
            pinching_found: false,
            unipotent_nonlagrangian_found: false,
        };
        for (i, m) in mats.iter().enumerate() {
            let r = crate::poly::pinching_report(m, &form)?;
            verdict.pinching_found |= r.galois_pinching();
            verdict.unipotent_nonlagrangian_found |= r.unipotent_non_lagrangian();
            reports.push(BlockReport {
                block: name.clone(),
                words: vec![acts[i].word.clone()],
                matrices: vec![acts[i].word_matrix],
                report: r,
            });
        }
        'pairs: for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                if verdict.pinching_found {
                    break 'pairs;
                }
                let r = crate::poly::pinching_report(&linalg::mul(&mats[i], &mats[j]), &form)?;
                if r.galois_pinching() {
                    verdict.pinching_found = true;
                    reports.push(BlockReport {
                        block: name.clone(),
                        words: vec![acts[i].word.clone(), acts[j].word.clone()],
                        matrices: vec![acts[i].word_matrix, acts[j].word_matrix],
                        report: r,
                    });
                }
            }
        }
        summary.push(verdict);
    }
    Ok(KzSurvey {
        origami: o.to_line(),
        genus: model.genus(),
        stabilizer_words: acts.len(),
        reports,
        summary,
    })
}
