//! Permutation groups: stabilizer chains, orbits, blocks, conjugacy in
//! `S_n`, and normal structure.

mod blocks;
mod conjugacy;
mod group;
mod normal;
mod perm;

pub use blocks::{is_primitive, minimal_block, primitivity, Primitivity};
pub use conjugacy::{are_conjugate, conjugators_between, cycle_type_histogram, subgroup_conjugate};
pub use group::{PermGroup, PermGroupFile};
pub use normal::{
    class_representatives, fitting_subgroup, in_variety, is_nilpotent, minimal_normal_subgroups, normal_closure,
    normalizer, o_coprime, o_prime, sylow_subgroup, verbal_subgroup,
};
pub use perm::Perm;

/// Builds a group from cycle strings such as `"(1 2 3)"`.
pub fn from_cycles(degree: usize, cycles: &[&str]) -> crate::Result<PermGroup> {
    let gens = cycles.iter().map(|c| Perm::parse_cycles(degree, c)).collect::<crate::Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn bsgs_examples() {
        assert_eq!(from_cycles(5, &["(1 2 3 4 5)", "(1 2)"]).unwrap().order_u64(), 120);
        let a4 = from_cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)", "(2 3 4)"]).unwrap();
        assert_eq!(a4.order_u64(), 12);
        assert_eq!(oracle::closure_size(4, a4.generators()), 12);
        assert_eq!(PermGroup::new(4, vec![]).unwrap().order_u64(), 1);
        assert!(matches!(PermGroup::new(4, vec![Perm::identity(3)]), Err(crate::Error::DegreeMismatch { .. })));
    }

    #[test]
    fn chain_invariants() {
        let g = PermGroup::symmetric(6);
        let base = g.base();
        for (lvl, _) in base.iter().enumerate() {
            for s in g.strong_generators(lvl) {
                assert!(base[..lvl].iter().all(|&b| s.image(b) == b));
            }
        }
        let prod: u64 = g.transversal_sizes().iter().map(|&t| t as u64).product();
        assert_eq!(prod, 720);
        assert_eq!(g.elements().unwrap().len(), 720);
    }

    #[test]
    fn orbit_examples() {
        let g = from_cycles(4, &["(1 2 3)"]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3]]);
        assert!(!g.is_transitive());
        assert!(from_cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)", "(2 3 4)"]).unwrap().is_transitive());
        assert_eq!(PermGroup::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn membership_matches_products() {
        let g = from_cycles(6, &["(1 2 3)(4 5)", "(2 6)"]).unwrap();
        let elements = g.elements().unwrap();
        let set: std::collections::HashSet<_> = elements.iter().cloned().collect();
        let all = PermGroup::symmetric(6).elements().unwrap();
        for x in &all {
            assert_eq!(g.contains(x), set.contains(x));
        }
    }

    #[test]
    fn json_roundtrip_is_canonical() {
        let g = from_cycles(3, &["(1 2 3)", "(1 2)"]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"degree":3,"generators":[[2,1,3],[2,3,1]]}"#);
        let back: PermGroup = serde_json::from_str(&json).unwrap();
        assert!(back.same_group(&g));
    }
}
