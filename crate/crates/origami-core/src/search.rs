//! Exhaustive search over minimal [1,1]-origamis with `h = (1, ..., n)`.

use rayon::prelude::*;

use crate::monodromy::{analyze, GroupAnalysis};
use crate::origami::Origami;
use crate::perm::Permutation;

/// Every n-cycle `v` with `[σ, v]` an n-cycle, `σ = (1, ..., n)`.
pub fn minimal_11_verticals(n: usize) -> Vec<Permutation> {
    if n < 3 {
        return Vec::new();
    }
    let sigma = Permutation::standard_cycle(n);
    let sigma_inv = sigma.inverse();
    // Fix the cycle as (1, a_1, ..., a_{n-1}); split the work on a_1.
    (1..n as u32)
        .into_par_iter()
        .flat_map_iter(|first| {
            let rest: Vec<u32> = (1..n as u32).filter(|&x| x != first).collect();
            let mut out = Vec::new();
            let mut order = rest.clone();
            let mut c = vec![0usize; order.len()];
            let mut img = vec![0u32; n];
            let mut emit = |order: &[u32], out: &mut Vec<Permutation>| {
                img[0] = first;
                let mut prev = first;
                for &x in order {
                    img[prev as usize] = x;
                    prev = x;
                }
                img[prev as usize] = 0;
                let v = Permutation::from_raw(img.clone());
                let vi = v.inverse();
                // [σ, v] = σ v σ⁻¹ v⁻¹
                let comm = sigma.mul(&v).mul(&sigma_inv).mul(&vi);
                if comm.is_full_cycle() {
                    out.push(v);
                }
            };
            emit(&order, &mut out);
            // Heap's algorithm over the remaining entries.
            let mut i = 0;
            while i < order.len() {
                if c[i] < i {
                    if i % 2 == 0 {
                        order.swap(0, i);
                    } else {
                        order.swap(c[i], i);
                    }
                    emit(&order, &mut out);
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            out
        })
        .collect()
}

/// Least image vector among the conjugates `σ^k v σ^-k`.
pub fn rotation_representative(v: &Permutation) -> Permutation {
    let n = v.degree();
    let s = Permutation::standard_cycle(n);
    (0..n as i64)
        .map(|k| v.conjugate(&s.pow(k)).unwrap())
        .min_by(|a, b| a.images0().cmp(b.images0()))
        .unwrap()
}

/// One vertical per class under conjugation by powers of `σ`, sorted.
pub fn minimal_11_classes(n: usize) -> Vec<Permutation> {
    let mut reps: Vec<Permutation> = minimal_11_verticals(n)
        .into_par_iter()
        .filter(|v| rotation_representative(v) == *v)
        .collect();
    reps.sort_by(|a, b| a.images0().cmp(b.images0()));
    reps
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn element_order(p: &Permutation) -> u64 {
    p.cycle_type().lengths.iter().fold(1u64, |a, &l| a / gcd(a, l as u64) * l as u64)
}

/// Cheap necessary test: every short word in `h, v` has an order in
/// `allowed`.
pub fn short_words_have_orders(h: &Permutation, v: &Permutation, allowed: &[u64]) -> bool {
    let letters = [h.clone(), v.clone(), h.inverse(), v.inverse()];
    let mut frontier = vec![h.clone(), v.clone()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            if !allowed.contains(&element_order(w)) {
                return false;
            }
            for l in &letters {
                next.push(w.mul(l));
            }
        }
        frontier = next;
    }
    frontier.iter().all(|w| allowed.contains(&element_order(w)))
}

/// Verticals (one per rotation class) whose monodromy group has the given
/// order, with their analyses. `prefilter` lists admissible element orders.
pub fn search_by_order(n: usize, orders: &[u64], prefilter: Option<&[u64]>) -> Vec<(Origami, GroupAnalysis)> {
    let sigma = Permutation::standard_cycle(n);
    let mut found: Vec<(Origami, GroupAnalysis)> = minimal_11_classes(n)
        .into_par_iter()
        .filter(|v| prefilter.map(|a| short_words_have_orders(&sigma, v, a)).unwrap_or(true))
        .filter_map(|v| {
            let a = analyze(&[sigma.clone(), v.clone()]).ok()?;
            let o: u64 = a.order.to_string().parse().unwrap_or(u64::MAX);
            orders.contains(&o).then(|| (Origami::new(sigma.clone(), v).unwrap(), a))
        })
        .collect();
    found.sort_by(|a, b| a.0.v().images0().cmp(b.0.v().images0()));
    found
}

/// Element orders occurring in M11.
pub const M11_ELEMENT_ORDERS: [u64; 8] = [1, 2, 3, 4, 5, 6, 8, 11];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_five_count() {
        let vs = minimal_11_verticals(5);
        assert!(vs.iter().all(|v| Origami::new(Permutation::standard_cycle(5), v.clone()).unwrap().is_minimal_11()));
        // 4! candidate cycles, filtered.
        assert!(!vs.is_empty() && vs.len() <= 24);
        let classes = minimal_11_classes(5);
        assert!(classes.len() * 5 >= vs.len());
    }
}
