//! Symmetry under `−I`: orientation double covers and their quotients.
//!
//! `−I` sends `(h, v)` to `(h⁻¹, v⁻¹)`. A relabelling `ρ` with
//! `ρ h ρ⁻¹ = h⁻¹` and `ρ v ρ⁻¹ = v⁻¹` is the half-turn taking square `i`
//! onto square `ρ(i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::origami::Origami;
use crate::perm::Permutation;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoints {
    pub fixed_squares: usize,
    pub fixed_vertical_edges: usize,
    pub fixed_horizontal_edges: usize,
    pub fixed_zeros: usize,
}

impl FixedPoints {
    pub fn total(&self) -> usize {
        self.fixed_squares + self.fixed_vertical_edges + self.fixed_horizontal_edges + self.fixed_zeros
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    pub genus: usize,
    /// Orders at the images of fixed points: `k - 1` for a fixed zero of
    /// order `k`, `-1` for every other fixed point. Sorted descending.
    pub branch_orders: Vec<i64>,
    /// Orders `2k` at images of swapped pairs of zeros of order `k`.
    pub swapped_zero_orders: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub symmetric: bool,
    pub rho: Option<Permutation>,
    pub is_involution: bool,
    pub fixed_points: Option<FixedPoints>,
    pub quotient: Option<Quotient>,
}

/// Decides symmetry by canonical forms, then recovers `ρ`, preferring an
/// involution among all realizing relabellings.
pub fn minus_identity_symmetric(o: &Origami) -> Result<InvolutionReport> {
    let rot = o.rotate_half_turn();
    let symmetric = o.canonical_key()? == rot.canonical_key()?;
    if !symmetric {
        return Ok(InvolutionReport {
            symmetric,
            rho: None,
            is_involution: false,
            fixed_points: None,
            quotient: None,
        });
    }
    let candidates = rho_candidates(o, &rot)?;
    let rho = candidates
        .iter()
        .find(|r| r.mul(r).is_identity())
        .or_else(|| candidates.first())
        .cloned()
        .ok_or_else(|| Error::Verification("canonical forms agree but no relabelling found".into()))?;
    let is_involution = rho.mul(&rho).is_identity();
    let mut report = InvolutionReport {
        symmetric,
        rho: Some(rho),
        is_involution,
        fixed_points: None,
        quotient: None,
    };
    if is_involution {
        report.fixed_points = Some(fixed_points(o, report.rho.as_ref().unwrap()));
        if report.rho.as_ref().map(|r| !r.is_identity() || o.n() > 1).unwrap_or(false) {
            report.quotient = quotient_data(o, &report).ok();
        }
    }
    Ok(report)
}

/// For `h` an n-cycle the candidates are the n rotations of the cylinder;
/// otherwise all relabellings onto `(h⁻¹, v⁻¹)`.
fn rho_candidates(o: &Origami, rot: &Origami) -> Result<Vec<Permutation>> {
    if o.h().is_full_cycle() {
        let n = o.n();
        let r = crate::spin::standardizing_relabelling(o.h())?;
        let ri = r.inverse();
        let mut out = Vec::new();
        for i in 0..n {
            // In standard labels, ρ_i(j) = 2i - j (mod n).
            let img: Vec<u32> = (0..n).map(|j| ((2 * i + 2 * n - j) % n) as u32).collect();
            let std_rho = Permutation::from_raw(img);
            let rho = ri.mul(&std_rho).mul(&r);
            if o.conjugate(&rho)? == *rot {
                out.push(rho);
            }
        }
        Ok(out)
    } else {
        Ok(o.isomorphisms_to(rot))
    }
}

fn fixed_points(o: &Origami, rho: &Permutation) -> FixedPoints {
    let n = o.n();
    let (classes, class_of) = o.vertex_classes();
    let mut fp = FixedPoints::default();
    for i in 0..n {
        let r = rho.apply0(i);
        if r == i {
            fp.fixed_squares += 1;
        }
        if r == o.h().apply0(i) {
            fp.fixed_vertical_edges += 1;
        }
        if r == o.v().apply0(i) {
            fp.fixed_horizontal_edges += 1;
        }
    }
    // The bottom-left corner of square i goes to the top-right corner of
    // ρ(i), which is the bottom-left corner of v(h(ρ(i))).
    for c in &classes {
        let i = c[0];
        let image = o.v().apply0(o.h().apply0(rho.apply0(i)));
        if class_of[image] == class_of[i] {
            fp.fixed_zeros += 1;
        }
    }
    fp
}

/// Genus and singularity orders of the quotient by an involutive `ρ`.
pub fn quotient_data(o: &Origami, report: &InvolutionReport) -> Result<Quotient> {
    let rho = report
        .rho
        .as_ref()
        .filter(|_| report.symmetric)
        .ok_or_else(|| Error::Precondition("origami is not symmetric".into()))?;
    if !rho.mul(rho).is_identity() {
        return Err(Error::Precondition("rho is not an involution".into()));
    }
    if o.n() == 1 {
        return Err(Error::Precondition("the torus with trivial rho is excluded".into()));
    }
    let g = o.genus()?;
    let fp = fixed_points(o, rho);
    let b = fp.total();
    if 2 * g + 2 < b || (2 * g + 2 - b) % 4 != 0 {
        return Err(Error::Verification(format!(
            "non-integral quotient genus: g={} fixed points={}",
            g, b
        )));
    }
    let genus = (2 * g + 2 - b) / 4;
    let (classes, class_of) = o.vertex_classes();
    let mut branch_orders = Vec::new();
    let mut swapped = Vec::new();
    let mut seen = vec![false; classes.len()];
    for (id, c) in classes.iter().enumerate() {
        if seen[id] {
            continue;
        }
        let k = c.len() as i64 - 1;
        let i = c[0];
        let image = class_of[o.v().apply0(o.h().apply0(rho.apply0(i)))];
        seen[id] = true;
        if image == id {
            branch_orders.push(k - 1);
        } else {
            seen[image] = true;
            if k > 0 {
                swapped.push(2 * k);
            }
        }
    }
    let other = fp.fixed_squares + fp.fixed_vertical_edges + fp.fixed_horizontal_edges;
    branch_orders.extend(std::iter::repeat(-1).take(other));
    branch_orders.sort_unstable_by(|a, b| b.cmp(a));
    swapped.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Quotient {
        genus,
        branch_orders,
        swapped_zero_orders: swapped,
    })
}

/// True iff an involutive `−I` symmetry with genus-0 quotient exists.
pub fn is_hyperelliptic(o: &Origami) -> Result<bool> {
    if o.genus()? < 2 {
        return Ok(false);
    }
    let r = minus_identity_symmetric(o)?;
    Ok(r.quotient.map(|q| q.genus == 0).unwrap_or(false))
}

/// Number of members of the unmodified construction fixed by `−I`.
pub fn double_cover_census(family: Family, g: usize) -> Result<usize> {
    use rayon::prelude::*;
    let members = families::enumerate(family, g)?;
    let flags: Vec<bool> = members
        .par_iter()
        .map(|m| minus_identity_symmetric(&m.origami).map(|r| r.symmetric))
        .collect::<Result<_>>()?;
    Ok(flags.into_iter().filter(|&b| b).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(line: &str) -> Origami {
        Origami::parse_line(line).unwrap()
    }

    #[test]
    fn genus_three_double_cover() {
        let x = o("n=5; h=(1,2,3,4,5); v=(1,3,4,2,5)");
        let r = minus_identity_symmetric(&x).unwrap();
        assert!(r.symmetric && r.is_involution);
        assert_eq!(r.rho.clone().unwrap(), Permutation::parse_cycles("(1,3)(4,5)", 5).unwrap());
        let q = r.quotient.unwrap();
        assert_eq!(q.genus, 1);
        assert_eq!(q.branch_orders, vec![3, -1, -1, -1]);
    }

    #[test]
    fn nine_square_members() {
        // Slots 4,6,8 give a double cover with genus-2 quotient.
        let x = o("n=9; h=(1,2,3,4,5,6,7,8,9); v=(1,3,4,7,8,2,5,6,9)");
        let r = minus_identity_symmetric(&x).unwrap();
        assert!(r.symmetric && r.is_involution);
        let q = r.quotient.unwrap();
        assert_eq!((q.genus, q.branch_orders), (2, vec![7, -1, -1, -1]));
        // Slots 4,8,6 do not.
        let t = families::tau_for_choice(Family::AmnOdd, 5, &families::Choice { slots: vec![4, 8, 6], k: None }).unwrap();
        let y = Origami::new(Permutation::standard_cycle(9), t).unwrap();
        assert!(!minus_identity_symmetric(&y).unwrap().symmetric);
    }

    #[test]
    fn torus_is_symmetric_but_has_no_quotient() {
        let t = Origami::torus();
        let r = minus_identity_symmetric(&t).unwrap();
        assert!(r.symmetric);
        assert!(r.rho.as_ref().unwrap().is_identity());
        assert!(quotient_data(&t, &r).is_err());
    }

    #[test]
    fn hyperelliptic_pattern_has_genus_zero_quotient() {
        for g in 3..=6 {
            let x = Origami::new(Permutation::standard_cycle(2 * g - 1), families::hyperelliptic_tau(g)).unwrap();
            assert!(is_hyperelliptic(&x).unwrap(), "g={}", g);
        }
        let x = o("n=5; h=(1,2,3,4,5); v=(1,3,4,2,5)");
        assert!(!is_hyperelliptic(&x).unwrap());
    }

    #[test]
    fn non_full_cycle_h_uses_general_search() {
        // Three horizontal cylinders; symmetry decided via all isomorphisms.
        let x = o("n=5; h=(2,3,4); v=(1,2,3,5,4)");
        let r = minus_identity_symmetric(&x).unwrap();
        if let Some(rho) = r.rho {
            assert_eq!(x.conjugate(&rho).unwrap(), x.rotate_half_turn());
        }
    }
}
