//! Spin parity of single-horizontal-cylinder origamis in even strata.
//!
//! Relabel so `h = (1,...,n)`. Generators are the core curve `c0` of the
//! cylinder and, for each square `i`, the straight arc `c_i` inside the
//! cylinder joining the bottom of square `v(i)` to the top of square `i`.
//! Every generator has index 0, so `Φ(c) = 1`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{Origami, StratumSignature};
use crate::perm::Permutation;

/// F2 vectors over at most 128 generators.
type Vec2 = u128;

/// Symmetric zero-diagonal Gram matrix over F2 with Φ values of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSpaceF2 {
    pub gram: Vec<Vec<u8>>,
    pub phi: Vec<u8>,
}

impl QuadraticSpaceF2 {
    pub fn new(gram: Vec<Vec<u8>>, phi: Vec<u8>) -> Result<Self> {
        let m = phi.len();
        if m > 128 {
            return Err(Error::Precondition("at most 128 generators supported".into()));
        }
        if gram.len() != m || gram.iter().any(|r| r.len() != m) {
            return Err(Error::Precondition("gram must be m x m".into()));
        }
        for i in 0..m {
            if gram[i][i] & 1 != 0 {
                return Err(Error::Precondition("gram diagonal must vanish".into()));
            }
            for j in 0..m {
                if (gram[i][j] ^ gram[j][i]) & 1 != 0 {
                    return Err(Error::Precondition("gram must be symmetric".into()));
                }
            }
        }
        Ok(QuadraticSpaceF2 { gram, phi })
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    fn rows(&self) -> Vec<Vec2> {
        self.gram
            .iter()
            .map(|r| r.iter().enumerate().fold(0, |acc, (j, &b)| acc | (((b & 1) as Vec2) << j)))
            .collect()
    }

    fn phi_mask(&self) -> Vec2 {
        self.phi
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &b)| acc | (((b & 1) as Vec2) << j))
    }

    /// Bilinear pairing of two coordinate vectors.
    pub fn pairing(&self, x: &[u8], y: &[u8]) -> u8 {
        pair(&self.rows(), pack(x), pack(y))
    }

    /// `Σ x_i φ_i + Σ_{i<j} x_i x_j gram_ij (mod 2)`.
    pub fn phi_hat(&self, x: &[u8]) -> u8 {
        phi_hat(&self.rows(), self.phi_mask(), pack(x))
    }
}

fn pack(x: &[u8]) -> Vec2 {
    x.iter()
        .enumerate()
        .fold(0, |acc, (j, &b)| acc | (((b & 1) as Vec2) << j))
}

fn pair(rows: &[Vec2], x: Vec2, y: Vec2) -> u8 {
    let mut acc = 0u32;
    let mut bits = x;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        acc ^= (rows[i] & y).count_ones() & 1;
    }
    acc as u8
}

fn phi_hat(rows: &[Vec2], phi: Vec2, x: Vec2) -> u8 {
    let mut acc = (phi & x).count_ones() & 1;
    let mut bits = x;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        // Only j > i.
        let upper = if i + 1 >= 128 { 0 } else { x & (!0u128 << (i + 1)) };
        acc ^= (rows[i] & upper).count_ones() & 1;
    }
    acc as u8
}

/// Result of symplectic pair extraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArfResult {
    pub arf: u8,
    pub pairs: usize,
}

/// Arf invariant by greedy hyperbolic-pair extraction in the given order.
fn arf_core(space: &QuadraticSpaceF2, order: &[usize]) -> Result<ArfResult> {
    let rows = space.rows();
    let phi = space.phi_mask();
    let mut vs: Vec<Vec2> = order.iter().map(|&i| 1u128 << i).collect();
    let mut arf = 0u8;
    let mut pairs = 0usize;
    loop {
        let mut found = None;
        'outer: for a in 0..vs.len() {
            for b in 0..vs.len() {
                if a != b && pair(&rows, vs[a], vs[b]) == 1 {
                    found = Some((a, b));
                    break 'outer;
                }
            }
        }
        let Some((a, b)) = found else { break };
        let u = vs[a];
        let w = vs[b];
        arf ^= phi_hat(&rows, phi, u) & phi_hat(&rows, phi, w);
        pairs += 1;
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        vs.swap_remove(hi);
        vs.swap_remove(lo);
        for x in vs.iter_mut() {
            let xw = pair(&rows, *x, w);
            let xu = pair(&rows, *x, u);
            if xw == 1 {
                *x ^= u;
            }
            if xu == 1 {
                *x ^= w;
            }
        }
    }
    for &x in &vs {
        if phi_hat(&rows, phi, x) != 0 {
            return Err(Error::Verification(
                "leftover radical vector has nonzero quadratic value".into(),
            ));
        }
    }
    Ok(ArfResult { arf, pairs })
}

/// Arf invariant; with `expected_pairs`, also checks the number of extracted
/// hyperbolic pairs.
pub fn arf(space: &QuadraticSpaceF2, expected_pairs: Option<usize>) -> Result<u8> {
    let order: Vec<usize> = (0..space.dim()).collect();
    finish(arf_core(space, &order)?, expected_pairs)
}

/// Arf invariant with a random generator order.
pub fn arf_shuffled<R: Rng>(space: &QuadraticSpaceF2, expected_pairs: Option<usize>, rng: &mut R) -> Result<u8> {
    let mut order: Vec<usize> = (0..space.dim()).collect();
    order.shuffle(rng);
    finish(arf_core(space, &order)?, expected_pairs)
}

fn finish(r: ArfResult, expected_pairs: Option<usize>) -> Result<u8> {
    if let Some(e) = expected_pairs {
        if r.pairs != e {
            return Err(Error::Verification(format!(
                "extracted {} hyperbolic pairs, expected {}",
                r.pairs, e
            )));
        }
    }
    Ok(r.arf)
}

/// Relabelling `r` with `r h r⁻¹ = (1,...,n)`, for `h` an n-cycle.
pub fn standardizing_relabelling(h: &Permutation) -> Result<Permutation> {
    if !h.is_full_cycle() {
        return Err(Error::Precondition("h must be a single cycle".into()));
    }
    let n = h.degree();
    let mut img = vec![0u32; n];
    let mut x = 0usize;
    for k in 0..n {
        img[x] = k as u32;
        x = h.apply0(x);
    }
    Ok(Permutation::from_raw(img))
}

/// The generator space `c0, c1, ..., cn`.
pub fn side_curve_space(o: &Origami) -> Result<QuadraticSpaceF2> {
    check_preconditions(o)?;
    let r = standardizing_relabelling(o.h())?;
    let v = o.v().conjugate(&r)?;
    let n = o.n();
    let m = n + 1;
    let mut gram = vec![vec![0u8; m]; m];
    for i in 1..m {
        gram[0][i] = 1;
        gram[i][0] = 1;
    }
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (i as i64 - j as i64, v.apply(i) as i64 - v.apply(j) as i64);
            if a * b < 0 {
                gram[i][j] = 1;
            }
        }
    }
    QuadraticSpaceF2::new(gram, vec![1; m])
}

fn check_preconditions(o: &Origami) -> Result<StratumSignature> {
    let s = o.stratum()?;
    if !o.h().is_full_cycle() {
        return Err(Error::Precondition("spin needs a single horizontal cylinder".into()));
    }
    if s.zero_orders.is_empty() || !s.all_even() {
        return Err(Error::Precondition("spin needs all zero orders even and genus >= 2".into()));
    }
    Ok(s)
}

/// Spin parity (0 even, 1 odd) of a single-horizontal-cylinder origami.
pub fn spin_parity(o: &Origami) -> Result<u8> {
    let s = check_preconditions(o)?;
    arf(&side_curve_space(o)?, Some(s.genus))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpinReport {
    pub parity: u8,
    pub genus: usize,
    pub stratum: String,
}

pub fn spin_report(o: &Origami) -> Result<SpinReport> {
    let s = check_preconditions(o)?;
    Ok(SpinReport {
        parity: spin_parity(o)?,
        genus: s.genus,
        stratum: s.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::tau_with_top_row;
    use rand::SeedableRng;

    fn origami_with_top_row(top: &[usize]) -> Origami {
        let n = top.len();
        Origami::new(Permutation::standard_cycle(n), tau_with_top_row(top).unwrap()).unwrap()
    }

    #[test]
    fn hyperbolic_planes() {
        let h = QuadraticSpaceF2::new(vec![vec![0, 1], vec![1, 0]], vec![0, 0]).unwrap();
        assert_eq!(arf(&h, Some(1)).unwrap(), 0);
        let o = QuadraticSpaceF2::new(vec![vec![0, 1], vec![1, 0]], vec![1, 1]).unwrap();
        assert_eq!(arf(&o, Some(1)).unwrap(), 1);
        assert!(arf(&o, Some(2)).is_err());
    }

    #[test]
    fn radical_with_nonzero_value_is_rejected() {
        let s = QuadraticSpaceF2::new(vec![vec![0]], vec![1]).unwrap();
        assert!(arf(&s, None).is_err());
    }

    #[test]
    fn malformed_gram_is_rejected() {
        assert!(QuadraticSpaceF2::new(vec![vec![1]], vec![0]).is_err());
        assert!(QuadraticSpaceF2::new(vec![vec![0, 1], vec![0, 0]], vec![0, 0]).is_err());
    }

    /// Intersection table of the worked genus-g example whose top row is
    /// `2g-1, 2g-2, 1, 3, 2, 5, 4, ...`, with wrapping representatives.
    fn wrapped_table(g: usize) -> QuadraticSpaceF2 {
        let n = 2 * g - 1;
        let m = n + 1;
        let mut gram = vec![vec![0u8; m]; m];
        for i in 1..m {
            gram[0][i] = 1;
            gram[i][0] = 1;
        }
        for j in (2..n).step_by(2) {
            gram[j][j + 1] = 1;
            gram[j + 1][j] = 1;
        }
        QuadraticSpaceF2::new(gram, vec![1; m]).unwrap()
    }

    fn example_top_row(g: usize) -> Vec<usize> {
        let n = 2 * g - 1;
        let mut top = vec![n, n - 1, 1];
        for a in (2..n - 1).step_by(2) {
            top.push(a + 1);
            top.push(a);
        }
        top
    }

    #[test]
    fn worked_example_is_odd_in_both_conventions() {
        for g in [3, 5, 7] {
            let o = origami_with_top_row(&example_top_row(g));
            assert!(o.is_minimal_11());
            assert_eq!(arf(&wrapped_table(g), Some(g)).unwrap(), 1);
            assert_eq!(spin_parity(&o).unwrap(), 1);
        }
    }

    #[test]
    fn wrapped_table_is_straight_arcs_shifted_by_core() {
        // The two arcs crossing the vertical side differ from the straight
        // ones by the core curve.
        for g in [3, 5, 7] {
            let n = 2 * g - 1;
            let o = origami_with_top_row(&example_top_row(g));
            let s = side_curve_space(&o).unwrap();
            let basis: Vec<Vec<u8>> = (0..=n)
                .map(|i| {
                    let mut e = vec![0u8; n + 1];
                    e[i] = 1;
                    if i == n || i == n - 1 {
                        e[0] = 1;
                    }
                    e
                })
                .collect();
            let w = wrapped_table(g);
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(s.pairing(&basis[i], &basis[j]), w.gram[i][j], "g={} ({},{})", g, i, j);
                }
                assert_eq!(s.phi_hat(&basis[i]), 1);
            }
        }
    }

    #[test]
    fn paired_examples_with_eleven_squares_are_odd() {
        let s = Permutation::standard_cycle(11);
        for t in ["(1,3,8,11,6,2,9,10,7,5,4)", "(1,3,10,9,6,2,11,8,7,5,4)"] {
            let o = Origami::new(s.clone(), Permutation::parse_cycles(t, 11).unwrap()).unwrap();
            assert_eq!(spin_parity(&o).unwrap(), 1, "{}", t);
        }
    }

    #[test]
    fn swapping_two_pairs_flips_parity() {
        let odd = origami_with_top_row(&[9, 8, 1, 3, 2, 5, 4, 7, 6]);
        let even = origami_with_top_row(&[9, 8, 1, 3, 2, 7, 6, 5, 4]);
        assert_eq!(spin_parity(&odd).unwrap(), 1);
        assert_eq!(spin_parity(&even).unwrap(), 0);
    }

    #[test]
    fn two_zero_examples_with_fourteen_squares() {
        let h = Permutation::standard_cycle(14);
        let o1 = Origami::new(
            h.clone(),
            Permutation::parse_cycles("(1,2,11,5,9,14,4,12,7,8,6,13,10,3)", 14).unwrap(),
        )
        .unwrap();
        let o2 = Origami::new(
            h,
            Permutation::parse_cycles("(1,3,6,14,12,7,11,8,5,9,4,2,10,13)", 14).unwrap(),
        )
        .unwrap();
        assert_eq!(o1.stratum().unwrap().zero_orders, vec![6, 6]);
        assert_eq!(spin_parity(&o1).unwrap(), 1);
        assert_eq!(spin_parity(&o2).unwrap(), 0);
    }

    #[test]
    fn order_independence_on_random_shuffles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let o = origami_with_top_row(&[9, 8, 1, 3, 2, 7, 6, 5, 4]);
        let s = side_curve_space(&o).unwrap();
        for _ in 0..20 {
            assert_eq!(arf_shuffled(&s, Some(5), &mut rng).unwrap(), 0);
        }
    }

    #[test]
    fn quadratic_law() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let o = origami_with_top_row(&[9, 8, 1, 3, 2, 5, 4, 7, 6]);
        let s = side_curve_space(&o).unwrap();
        for _ in 0..1000 {
            let x: Vec<u8> = (0..s.dim()).map(|_| rng.gen_range(0..2)).collect();
            let y: Vec<u8> = (0..s.dim()).map(|_| rng.gen_range(0..2)).collect();
            let xy: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
            assert_eq!(s.phi_hat(&xy), s.phi_hat(&x) ^ s.phi_hat(&y) ^ s.pairing(&x, &y));
        }
    }

    #[test]
    fn core_pairs_with_every_arc() {
        let o = origami_with_top_row(&[9, 8, 1, 3, 2, 5, 4, 7, 6]);
        let s = side_curve_space(&o).unwrap();
        assert!((1..s.dim()).all(|i| s.gram[0][i] == 1));
    }

    #[test]
    fn preconditions() {
        let x = Origami::parse_line("n=5; h=(2,3,4); v=(1,2,3,5,4)").unwrap();
        assert!(spin_parity(&x).is_err());
        assert!(spin_parity(&Origami::torus()).is_err());
    }
}
