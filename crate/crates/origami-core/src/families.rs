//! The five constructions of minimal [1,1]-origamis and their modified
//! variants.
//!
//! Every construction fixes `h = (1,2,...,2g-1)` and builds `τ` through its
//! top row: `top[i]` is the square whose top side is glued to the bottom of
//! square `i`, so `τ(top[i]) = i`. Pairs `(a+1, a)` with `a` even are placed
//! above slots `(s, s+1)`; the pair placed next is always the reversed label
//! pair of the slot just covered.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{ComponentTag, Origami};
use crate::perm::Permutation;
use crate::spin;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    AmnOdd,
    AmnEven,
    GenOddEven,
    GenEvenOdd,
    GenEvenEven,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::AmnOdd,
        Family::AmnEven,
        Family::GenOddEven,
        Family::GenEvenOdd,
        Family::GenEvenEven,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::AmnOdd => "amn-odd",
            Family::AmnEven => "amn-even",
            Family::GenOddEven => "gen-odd-even",
            Family::GenEvenOdd => "gen-even-odd",
            Family::GenEvenEven => "gen-even-even",
        }
    }

    /// Whether the family exists at genus `g`.
    pub fn supports(self, g: usize) -> bool {
        match self {
            Family::AmnOdd => g >= 3 && g % 2 == 1,
            Family::GenOddEven => g >= 5 && g % 2 == 1,
            Family::AmnEven | Family::GenEvenOdd | Family::GenEvenEven => g >= 4 && g % 2 == 0,
        }
    }

    fn check(self, g: usize) -> Result<()> {
        if self.supports(g) {
            Ok(())
        } else {
            Err(Error::IncompatibleGenus {
                family: self.id().into(),
                genus: g,
            })
        }
    }

    /// Families defined at genus `g`.
    pub fn at_genus(g: usize) -> Vec<Family> {
        Family::ALL.into_iter().filter(|f| f.supports(g)).collect()
    }

    /// Labels excluded from the move set `Q = {2..2g-1} \ P`.
    pub fn p_set(self) -> &'static [usize] {
        match self {
            Family::AmnOdd | Family::AmnEven => &[],
            Family::GenOddEven => &[4, 5, 6, 7, 8, 9],
            Family::GenEvenOdd | Family::GenEvenEven => &[4, 5, 6, 7],
        }
    }

    /// The component all unmodified members lie in.
    pub fn expected_component(self) -> Option<ComponentTag> {
        match self {
            Family::AmnOdd | Family::GenEvenOdd => Some(ComponentTag::OddSpin),
            Family::GenOddEven | Family::GenEvenEven => Some(ComponentTag::EvenSpin),
            Family::AmnEven => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.id() == norm || format!("{:?}", f).to_ascii_lowercase() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown family '{}'", s)))
    }
}

/// Slot heads in placement order. For [`Family::AmnEven`], `slots` is the
/// choice for the genus `g-1` origami and `k` the moved odd label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Choice {
    pub slots: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.slots.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))?;
        if let Some(k) = self.k {
            write!(f, ";k={}", k)?;
        }
        Ok(())
    }
}

/// Fixed top-row entries, closing slot and free slot heads of a placement
/// construction.
struct Layout {
    n: usize,
    fixed: Vec<(usize, usize)>,
    closing: usize,
    free: Vec<usize>,
}

fn layout(family: Family, g: usize) -> Layout {
    let n = 2 * g - 1;
    let (fixed, closing, first_free): (Vec<(usize, usize)>, usize, usize) = match family {
        Family::AmnOdd | Family::AmnEven => (vec![(3, 1)], 1, 4),
        Family::GenOddEven => (
            [9, 6, 1, 8, 7, 5, 4].iter().enumerate().map(|(i, &l)| (i + 1, l)).collect(),
            8,
            10,
        ),
        Family::GenEvenOdd => (
            [4, 6, 1, 5, 7].iter().enumerate().map(|(i, &l)| (i + 1, l)).collect(),
            6,
            8,
        ),
        Family::GenEvenEven => (
            [7, 5, 1, 6, 4].iter().enumerate().map(|(i, &l)| (i + 1, l)).collect(),
            6,
            8,
        ),
    };
    Layout {
        n,
        fixed,
        closing,
        free: (first_free..n).step_by(2).collect(),
    }
}

fn tau_from_top(top: &[usize]) -> Permutation {
    // τ(top[i]) = i.
    let n = top.len();
    let mut img = vec![0u32; n];
    for (i, &l) in top.iter().enumerate() {
        img[l - 1] = i as u32;
    }
    Permutation::from_raw(img)
}

/// Top row of τ (1-based labels, position 1 first).
pub fn top_row(tau: &Permutation) -> Vec<usize> {
    tau.inverse().images()
}

/// τ with the given top row.
pub fn tau_with_top_row(top: &[usize]) -> Result<Permutation> {
    Ok(tau_from_top(&Permutation::from_images(top)?.images()))
}

impl Layout {
    /// Places `(3,2)` on `slots[0]`, then the reversed pair of each covered
    /// slot on the next one, and the last pair on the closing slot.
    fn place_chain(&self, slots: &[usize]) -> Result<Permutation> {
        let mut sorted = slots.to_vec();
        sorted.sort_unstable();
        if sorted != self.free {
            return Err(Error::InvalidChoice(format!(
                "slot heads must be an ordering of {:?}, got {:?}",
                self.free, slots
            )));
        }
        let mut top = vec![0usize; self.n];
        for &(pos, l) in &self.fixed {
            top[pos - 1] = l;
        }
        let mut pair = (3usize, 2usize);
        for &s in slots.iter().chain(std::iter::once(&self.closing)) {
            top[s - 1] = pair.0;
            top[s] = pair.1;
            pair = (s + 1, s);
        }
        Ok(tau_from_top(&top))
    }

    /// Pair-to-slot bijection: `assignment[j]` is the slot receiving the pair
    /// `(a+1, a)` with `a = pair_heads[j]`.
    fn place_free(&self, assignment: &[usize]) -> Permutation {
        let mut top = vec![0usize; self.n];
        for &(pos, l) in &self.fixed {
            top[pos - 1] = l;
        }
        for (a, &s) in self.pair_heads().iter().zip(assignment) {
            top[s - 1] = a + 1;
            top[s] = *a;
        }
        tau_from_top(&top)
    }

    fn pair_heads(&self) -> Vec<usize> {
        std::iter::once(2).chain(self.free.iter().copied()).collect()
    }

    fn all_slots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = std::iter::once(self.closing).chain(self.free.iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

/// All orderings of `items` in lexicographic order.
fn permutations_lex(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

fn sigma(g: usize) -> Permutation {
    Permutation::standard_cycle(2 * g - 1)
}

/// τ of an AmnEven member from its genus `g-1` base `eta` and label `k`.
fn amn_even_tau(eta: &Permutation, k: usize) -> Permutation {
    let n = eta.degree() + 2;
    let mut img: Vec<usize> = eta.images();
    img.push(0);
    img.push(0);
    let eta_k = eta.apply(k);
    img[k - 1] = n;
    img[n - 1] = n - 1;
    img[n - 2] = eta_k;
    Permutation::from_images(&img).expect("valid extension")
}

/// Valid values of `k` for the AmnEven extension of `eta`.
pub fn amn_even_k_values(eta: &Permutation) -> Vec<usize> {
    let n_prev = eta.degree();
    let excluded = eta.inverse().apply(1);
    (3..=n_prev).step_by(2).filter(|&k| k != excluded).collect()
}

/// τ from the slot-placement model.
pub fn tau_for_choice(family: Family, g: usize, choice: &Choice) -> Result<Permutation> {
    family.check(g)?;
    match family {
        Family::AmnEven => {
            let eta = tau_for_choice(Family::AmnOdd, g - 1, &Choice { slots: choice.slots.clone(), k: None })?;
            let k = choice
                .k
                .ok_or_else(|| Error::InvalidChoice("amn-even needs k".into()))?;
            if !amn_even_k_values(&eta).contains(&k) {
                return Err(Error::InvalidChoice(format!("k={} not allowed for this base", k)));
            }
            Ok(amn_even_tau(&eta, k))
        }
        _ => {
            if choice.k.is_some() {
                return Err(Error::InvalidChoice("k only applies to amn-even".into()));
            }
            layout(family, g).place_chain(&choice.slots)
        }
    }
}

/// τ read off the displayed cycle formula of each construction.
pub fn tau_closed_form(family: Family, g: usize, choice: &Choice) -> Result<Permutation> {
    family.check(g)?;
    let n = 2 * g - 1;
    let expected = layout(family, g).free;
    let c = &choice.slots;
    if family != Family::AmnEven {
        let mut sorted = c.clone();
        sorted.sort_unstable();
        if sorted != expected {
            return Err(Error::InvalidChoice(format!("expected an ordering of {:?}", expected)));
        }
    }
    // c_i + 1 on alternating positions, starting either with +0 or +1.
    let alt = |start_plus: usize| -> Vec<usize> {
        c.iter().enumerate().map(|(i, &x)| x + (i + start_plus) % 2).collect()
    };
    let cyc: Vec<usize> = match family {
        Family::AmnOdd => [vec![1, 3], alt(0), vec![2], alt(1)].concat(),
        Family::GenOddEven => [vec![1, 3], alt(0), vec![8, 4, 7, 5, 6, 2], alt(1), vec![9]].concat(),
        Family::GenEvenOdd => [vec![1, 3], alt(0), vec![6, 2], alt(1), vec![7, 5, 4]].concat(),
        Family::GenEvenEven => [vec![1, 3], alt(0), vec![6, 4, 5, 2], alt(1), vec![7]].concat(),
        Family::AmnEven => {
            let eta = tau_closed_form(Family::AmnOdd, g - 1, &Choice { slots: c.clone(), k: None })?;
            let k = choice
                .k
                .ok_or_else(|| Error::InvalidChoice("amn-even needs k".into()))?;
            if !amn_even_k_values(&eta).contains(&k) {
                return Err(Error::InvalidChoice(format!("k={} not allowed for this base", k)));
            }
            // Insert 2g-1, 2g-2 after k in the cycle of η.
            let mut out = Vec::with_capacity(n);
            let mut x = 1;
            loop {
                out.push(x);
                if x == k {
                    out.push(n);
                    out.push(n - 1);
                }
                x = eta.apply(x);
                if x == 1 {
                    break;
                }
            }
            out
        }
    };
    Permutation::cycle(n, &cyc)
}

/// Every construction choice of the family in lexicographic order.
pub fn choices(family: Family, g: usize) -> Result<Vec<Choice>> {
    family.check(g)?;
    match family {
        Family::AmnEven => {
            let mut out = Vec::new();
            for base in choices(Family::AmnOdd, g - 1)? {
                let eta = tau_for_choice(Family::AmnOdd, g - 1, &base)?;
                for k in amn_even_k_values(&eta) {
                    out.push(Choice { slots: base.slots.clone(), k: Some(k) });
                }
            }
            Ok(out)
        }
        _ => Ok(permutations_lex(&layout(family, g).free)
            .into_iter()
            .map(|slots| Choice { slots, k: None })
            .collect()),
    }
}

/// A constructed member.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Member {
    pub choice: Choice,
    pub origami: Origami,
}

/// Members of the unmodified construction, in choice order.
pub fn enumerate(family: Family, g: usize) -> Result<Vec<Member>> {
    let s = sigma(g);
    choices(family, g)?
        .into_iter()
        .map(|choice| {
            let tau = tau_for_choice(family, g, &choice)?;
            Ok(Member {
                origami: Origami::new(s.clone(), tau)?,
                choice,
            })
        })
        .collect()
}

/// Parses a CSV choice. For the chain families a missing last slot is filled
/// in since it is forced; for amn-even the last entry is `k`.
pub fn parse_choice(family: Family, g: usize, csv: &str) -> Result<Choice> {
    family.check(g)?;
    let mut vals = Vec::new();
    for tok in csv.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        vals.push(
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad choice entry '{}'", tok)))?,
        );
    }
    let (mut slots, k, free) = if family == Family::AmnEven {
        let k = vals
            .pop()
            .ok_or_else(|| Error::InvalidChoice("amn-even choice must end with k".into()))?;
        (vals, Some(k), layout(Family::AmnOdd, g - 1).free)
    } else {
        (vals, None, layout(family, g).free)
    };
    if slots.len() + 1 == free.len() {
        if let Some(&last) = free.iter().find(|x| !slots.contains(x)) {
            slots.push(last);
        }
    }
    Ok(Choice { slots, k })
}

/// Member of the modified construction, indexed by the pair-to-slot bijection.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModifiedMember {
    /// `assignment[j]` is the slot head receiving the j-th pair.
    pub assignment: Vec<usize>,
    pub origami: Origami,
}

/// All `(|Q|/2)!` single-cylinder origamis of the modified construction.
/// Not defined for amn-even, which is built by extension rather than placement.
pub fn enumerate_modified(family: Family, g: usize) -> Result<Vec<ModifiedMember>> {
    family.check(g)?;
    if family == Family::AmnEven {
        return Err(Error::IncompatibleGenus {
            family: "amn-even (modified)".into(),
            genus: g,
        });
    }
    let lay = layout(family, g);
    let s = sigma(g);
    permutations_lex(&lay.all_slots())
        .into_iter()
        .map(|assignment| {
            let tau = lay.place_free(&assignment);
            Ok(ModifiedMember {
                origami: Origami::new(s.clone(), tau)?,
                assignment,
            })
        })
        .collect()
}

/// The hyperelliptic τ of the modified amn-odd construction:
/// top row `3,2,1,2g-1,2g-2,...,5,4`.
pub fn hyperelliptic_tau(g: usize) -> Permutation {
    let n = 2 * g - 1;
    let mut top = vec![3, 2, 1];
    let mut a = n;
    while a >= 4 {
        top.push(a);
        a -= 1;
    }
    tau_from_top(&top)
}

/// Closed-form component counts for an unmodified construction.
pub fn formula_counts(family: Family, g: usize) -> Result<BTreeMap<ComponentTag, BigUint>> {
    family.check(g)?;
    let fact = |m: usize| -> BigUint { (1..=m).fold(BigUint::one(), |a, x| a * BigUint::from(x)) };
    let mut m = BTreeMap::new();
    match family {
        Family::AmnOdd => {
            m.insert(ComponentTag::OddSpin, fact(g - 2));
            m.insert(ComponentTag::EvenSpin, BigUint::zero());
        }
        Family::AmnEven => {
            let f = fact(g - 4);
            let odd = BigUint::from(3 * (g - 3) * (g - 3) + 1) * &f / BigUint::from(4u32);
            let even = BigUint::from((g / 2 - 1) * (g / 2 - 2)) * &f;
            m.insert(ComponentTag::OddSpin, odd);
            m.insert(ComponentTag::EvenSpin, even);
        }
        Family::GenOddEven => {
            m.insert(ComponentTag::OddSpin, BigUint::zero());
            m.insert(ComponentTag::EvenSpin, fact(g - 5));
        }
        Family::GenEvenOdd => {
            m.insert(ComponentTag::OddSpin, fact(g - 4));
            m.insert(ComponentTag::EvenSpin, BigUint::zero());
        }
        Family::GenEvenEven => {
            m.insert(ComponentTag::OddSpin, BigUint::zero());
            m.insert(ComponentTag::EvenSpin, fact(g - 4));
        }
    }
    Ok(m)
}

/// Total member count `(g-2)!`, `(g-3)(g-3)!`, `(g-5)!` or `(g-4)!`.
pub fn formula_total(family: Family, g: usize) -> Result<BigUint> {
    family.check(g)?;
    let fact = |m: usize| -> BigUint { (1..=m).fold(BigUint::one(), |a, x| a * BigUint::from(x)) };
    Ok(match family {
        Family::AmnOdd => fact(g - 2),
        Family::AmnEven => BigUint::from(g - 3) * fact(g - 3),
        Family::GenOddEven => fact(g - 5),
        Family::GenEvenOdd | Family::GenEvenEven => fact(g - 4),
    })
}

/// Parity predicted for an amn-even member: even iff `k ≡ 1 (mod 4)` and
/// `η(k) ≡ 2 (mod 4)`.
pub fn amn_even_spin_predicate(g: usize, choice: &Choice) -> Result<ComponentTag> {
    let eta = tau_for_choice(Family::AmnOdd, g - 1, &Choice { slots: choice.slots.clone(), k: None })?;
    let k = choice
        .k
        .ok_or_else(|| Error::InvalidChoice("amn-even needs k".into()))?;
    Ok(predicate_from_values(k, eta.apply(k)))
}

pub fn predicate_from_values(k: usize, eta_k: usize) -> ComponentTag {
    if k % 4 == 1 && eta_k % 4 == 2 {
        ComponentTag::EvenSpin
    } else {
        ComponentTag::OddSpin
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub family: Family,
    pub genus: usize,
    pub modified: bool,
    pub total: usize,
    pub counts: BTreeMap<ComponentTag, usize>,
    pub formula_values: BTreeMap<ComponentTag, BigUint>,
    pub agree: bool,
}

fn tag_of(parity: u8) -> ComponentTag {
    if parity == 1 {
        ComponentTag::OddSpin
    } else {
        ComponentTag::EvenSpin
    }
}

/// Spin census of the unmodified construction with closed-form comparison.
pub fn census(family: Family, g: usize) -> Result<Census> {
    use rayon::prelude::*;
    let members = enumerate(family, g)?;
    let tags: Vec<ComponentTag> = members
        .par_iter()
        .map(|m| spin::spin_parity(&m.origami).map(tag_of))
        .collect::<Result<_>>()?;
    let mut counts = BTreeMap::new();
    counts.insert(ComponentTag::OddSpin, 0);
    counts.insert(ComponentTag::EvenSpin, 0);
    for t in tags {
        *counts.entry(t).or_insert(0) += 1;
    }
    let formula_values = formula_counts(family, g)?;
    let agree = formula_values
        .iter()
        .all(|(t, v)| BigUint::from(*counts.get(t).unwrap_or(&0)) == *v);
    Ok(Census {
        family,
        genus: g,
        modified: false,
        total: members.len(),
        counts,
        formula_values,
        agree,
    })
}

/// Census of the modified construction. Hyperelliptic members are tallied
/// separately; expected values follow the split of the single-cylinder set.
pub fn census_modified(family: Family, g: usize) -> Result<Census> {
    use rayon::prelude::*;
    let members = enumerate_modified(family, g)?;
    let tags: Vec<ComponentTag> = members
        .par_iter()
        .map(|m| -> Result<ComponentTag> {
            if crate::symmetry::is_hyperelliptic(&m.origami)? {
                return Ok(ComponentTag::Hyperelliptic);
            }
            spin::spin_parity(&m.origami).map(tag_of)
        })
        .collect::<Result<_>>()?;
    let mut counts = BTreeMap::new();
    for t in [ComponentTag::Hyperelliptic, ComponentTag::OddSpin, ComponentTag::EvenSpin] {
        counts.insert(t, 0);
    }
    for t in tags {
        *counts.entry(t).or_insert(0) += 1;
    }
    let total = members.len();
    let half = BigUint::from(total / 2);
    let mut formula_values = BTreeMap::new();
    if family == Family::AmnOdd {
        let hyp_parity = ((g + 1) / 2 % 2) as u8;
        formula_values.insert(ComponentTag::Hyperelliptic, BigUint::one());
        formula_values.insert(tag_of(hyp_parity), &half - BigUint::one());
        formula_values.insert(tag_of(1 - hyp_parity), half);
    } else {
        formula_values.insert(ComponentTag::Hyperelliptic, BigUint::zero());
        formula_values.insert(ComponentTag::OddSpin, half.clone());
        formula_values.insert(ComponentTag::EvenSpin, half);
    }
    let agree = formula_values
        .iter()
        .all(|(t, v)| BigUint::from(*counts.get(t).unwrap_or(&0)) == *v);
    Ok(Census {
        family,
        genus: g,
        modified: true,
        total,
        counts,
        formula_values,
        agree,
    })
}

/// Checks `Σ t_i o_i = (2(m-2)+1)!` and `Σ i t_i o_i = (m-1)(m-2)(2(m-2))!`
/// with `t_i = C(m-2,i) C(m-1,i) i!` and `o_i = (m-1)!(m-2)!/i!`.
pub fn counting_identity_check(m: usize) -> Result<bool> {
    if m < 3 {
        return Err(Error::Precondition("counting identity needs m >= 3".into()));
    }
    let fact = |k: usize| -> BigUint { (1..=k).fold(BigUint::one(), |a, x| a * BigUint::from(x)) };
    let binom = |a: usize, b: usize| -> BigUint { fact(a) / (fact(b) * fact(a - b)) };
    let mut s0 = BigUint::zero();
    let mut s1 = BigUint::zero();
    for i in 0..=m - 2 {
        let t = binom(m - 2, i) * binom(m - 1, i) * fact(i);
        let o = fact(m - 1) * fact(m - 2) / fact(i);
        let to = t * o;
        s1 += BigUint::from(i) * &to;
        s0 += to;
    }
    let rhs0 = fact(2 * (m - 2) + 1);
    let rhs1 = BigUint::from((m - 1) * (m - 2)) * fact(2 * (m - 2));
    Ok(s0 == rhs0 && s1 == rhs1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn ch(slots: &[usize]) -> Choice {
        Choice { slots: slots.to_vec(), k: None }
    }

    #[test]
    fn nine_square_amn_odd_example() {
        let t = tau_for_choice(Family::AmnOdd, 5, &ch(&[4, 6, 8])).unwrap();
        assert_eq!(t, cyc(9, "(1,3,4,7,8,2,5,6,9)"));
        assert_eq!(top_row(&t), vec![9, 8, 1, 3, 2, 5, 4, 7, 6]);
        assert_eq!(tau_closed_form(Family::AmnOdd, 5, &ch(&[4, 6, 8])).unwrap(), t);
    }

    #[test]
    fn amn_even_extension_example() {
        let c = Choice { slots: vec![4, 6, 8], k: Some(7) };
        let t = tau_for_choice(Family::AmnEven, 6, &c).unwrap();
        assert_eq!(t, cyc(11, "(1,3,4,7,11,10,8,2,5,6,9)"));
        assert_eq!(tau_closed_form(Family::AmnEven, 6, &c).unwrap(), t);
        assert_eq!(amn_even_spin_predicate(6, &c).unwrap(), ComponentTag::OddSpin);
    }

    #[test]
    fn generalised_examples() {
        let t = tau_for_choice(Family::GenOddEven, 7, &ch(&[12, 10])).unwrap();
        assert_eq!(t, cyc(13, "(1,3,12,11,8,4,7,5,6,2,13,10,9)"));
        let t = tau_for_choice(Family::GenEvenOdd, 6, &ch(&[8, 10])).unwrap();
        assert_eq!(t, cyc(11, "(1,3,8,11,6,2,9,10,7,5,4)"));
        let t = tau_for_choice(Family::GenEvenEven, 6, &ch(&[8, 10])).unwrap();
        assert_eq!(t, cyc(11, "(1,3,8,11,6,4,5,2,9,10,7)"));
    }

    #[test]
    fn predicate_by_congruence() {
        assert_eq!(predicate_from_values(5, 6), ComponentTag::EvenSpin);
        assert_eq!(predicate_from_values(7, 8), ComponentTag::OddSpin);
        assert_eq!(predicate_from_values(5, 8), ComponentTag::OddSpin);
    }

    #[test]
    fn closed_form_matches_placement_through_genus_eight() {
        for g in 3..=8 {
            for f in Family::at_genus(g) {
                for c in choices(f, g).unwrap() {
                    assert_eq!(
                        tau_for_choice(f, g, &c).unwrap(),
                        tau_closed_form(f, g, &c).unwrap(),
                        "{} g={} {:?}",
                        f,
                        g,
                        c
                    );
                }
            }
        }
    }

    #[test]
    fn counts_and_minimality() {
        for g in 3..=8 {
            for f in Family::at_genus(g) {
                let ms = enumerate(f, g).unwrap();
                assert_eq!(BigUint::from(ms.len()), formula_total(f, g).unwrap(), "{} g={}", f, g);
                let mut keys = std::collections::HashSet::new();
                for m in &ms {
                    assert!(m.origami.is_minimal_11(), "{} g={} {:?}", f, g, m.choice);
                    assert_eq!(m.origami.stratum().unwrap().zero_orders, vec![2 * g - 2]);
                    assert!(keys.insert(m.origami.canonical_key().unwrap()));
                }
            }
        }
    }

    #[test]
    fn only_one_amn_origami_in_genus_three() {
        assert_eq!(enumerate(Family::AmnOdd, 3).unwrap().len(), 1);
    }

    #[test]
    fn incompatible_genus() {
        assert!(enumerate(Family::AmnOdd, 4).is_err());
        assert!(enumerate(Family::GenOddEven, 3).is_err());
        assert!(enumerate(Family::AmnEven, 2).is_err());
    }

    #[test]
    fn choice_parsing() {
        let c = parse_choice(Family::GenOddEven, 7, "12").unwrap();
        assert_eq!(c.slots, vec![12, 10]);
        let c = parse_choice(Family::AmnEven, 6, "4,6,8,7").unwrap();
        assert_eq!(c, Choice { slots: vec![4, 6, 8], k: Some(7) });
        assert!(tau_for_choice(Family::AmnOdd, 5, &ch(&[4, 4, 8])).is_err());
    }

    #[test]
    fn hyperelliptic_pattern() {
        assert_eq!(top_row(&hyperelliptic_tau(4)), vec![3, 2, 1, 7, 6, 5, 4]);
    }

    #[test]
    fn counting_identity() {
        for m in [3, 4, 10] {
            assert!(counting_identity_check(m).unwrap());
        }
        assert!(counting_identity_check(2).is_err());
    }
}
