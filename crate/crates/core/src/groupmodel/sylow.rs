use super::{CayleyGroup, Subgroup};
use crate::error::{check_limit, Error, Result};
use crate::gf::{prime_divisors, valuation};

/// A Sylow `u`-subgroup, grown inside successive normalizers with
/// elements scanned in index order.
pub fn sylow_subgroup(g: &CayleyGroup, u: u64) -> Subgroup {
    let target = (u as usize).pow(valuation(g.order() as u64, u));
    let mut p = g.trivial_subgroup();
    while p.order() < target {
        let mask = p.mask(g.order());
        let x = (0..g.order() as u32)
            .find(|&x| {
                !mask[x as usize]
                    && mask[g.pow(x, u) as usize]
                    && p.elements().iter().all(|&y| mask[g.conj(y, x) as usize])
            })
            .expect("a p-subgroup below Sylow order has a normalizing p-element outside it");
        let mut gens = p.elements().to_vec();
        gens.push(x);
        p = g.generate(&gens);
    }
    p
}

/// `AB = BA` as sets.
pub fn is_permutable(g: &CayleyGroup, a: &Subgroup, b: &Subgroup) -> bool {
    let mut ab: Vec<u32> = a.elements().iter().flat_map(|&x| b.elements().iter().map(move |&y| g.mul(x, y))).collect();
    let mut ba: Vec<u32> = b.elements().iter().flat_map(|&y| a.elements().iter().map(move |&x| g.mul(y, x))).collect();
    ab.sort_unstable();
    ab.dedup();
    ba.sort_unstable();
    ba.dedup();
    ab == ba
}

/// Largest normal `u`-subgroup: the core of a Sylow `u`-subgroup.
pub fn o_prime(g: &CayleyGroup, u: u64) -> Subgroup {
    let p = sylow_subgroup(g, u);
    let mask = p.mask(g.order());
    let core: Vec<u32> =
        p.elements().iter().copied().filter(|&x| (0..g.order() as u32).all(|y| mask[g.conj(x, y) as usize])).collect();
    g.generate(&core)
}

/// Product of the `O_u` over the primes dividing the order.
pub fn fitting_subgroup(g: &CayleyGroup) -> Subgroup {
    let gens: Vec<u32> =
        prime_divisors(g.order() as u64).into_iter().flat_map(|u| o_prime(g, u).elements().to_vec()).collect();
    g.generate(&gens)
}

fn conjugates(g: &CayleyGroup, s: &Subgroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for x in 0..g.order() as u32 {
        let mut c: Vec<u32> = s.elements().iter().map(|&y| g.conj(y, x)).collect();
        c.sort_unstable();
        let c = Subgroup(c);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Pairwise permutable Sylow subgroups, one per prime divisor in increasing
/// order. The first is the canonical Sylow subgroup; later ones are searched
/// among conjugates with backtracking.
pub fn sylow_system(g: &CayleyGroup, limit: u64) -> Result<Vec<(u64, Subgroup)>> {
    check_limit("table order", g.order() as u64, limit)?;
    let primes = prime_divisors(g.order() as u64);
    let options: Vec<Vec<Subgroup>> = primes
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let s = sylow_subgroup(g, u);
            if i == 0 {
                vec![s]
            } else {
                conjugates(g, &s)
            }
        })
        .collect();

    fn search(g: &CayleyGroup, options: &[Vec<Subgroup>], chosen: &mut Vec<Subgroup>) -> bool {
        let k = chosen.len();
        if k == options.len() {
            return true;
        }
        for cand in &options[k] {
            if chosen.iter().all(|c| is_permutable(g, c, cand)) {
                chosen.push(cand.clone());
                if search(g, options, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut chosen = Vec::new();
    if !search(g, &options, &mut chosen) {
        return Err(Error::NoSystemFound);
    }
    Ok(primes.into_iter().zip(chosen).collect())
}
