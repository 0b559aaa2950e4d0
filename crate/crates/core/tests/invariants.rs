//! Exhaustive cross-module invariants that are too heavy for inline unit
//! tests but still fast enough to run on every build.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use reid_tai::{weights_of, Permutation};

/// Everything is immutable after construction, so analysis can fan out
/// across threads.
#[test]
fn core_types_are_shareable() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<reid_tai::Permutation>();
    assert_send_sync::<reid_tai::CycleType>();
    assert_send_sync::<reid_tai::PermutationGroup>();
    assert_send_sync::<reid_tai::MultiplicationTable>();
    assert_send_sync::<reid_tai::WeightVector>();
    assert_send_sync::<reid_tai::AgeReport>();
    assert_send_sync::<reid_tai::Verdict>();
    assert_send_sync::<reid_tai::EndoCertificate>();
    assert_send_sync::<reid_tai::AnalysisReport>();
}

fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(|images| Permutation::from_images(images).unwrap())
}

/// The lcm-of-cycle-lengths order matches the smallest positive power that
/// reaches the identity, for every one of the 720 elements of S_6.
#[test]
fn order_matches_iteration_on_all_of_s6() {
    for g in all_permutations(6) {
        let mut power = g.clone();
        let mut k = BigUint::one();
        while !power.is_identity() {
            power = power.compose(&g).unwrap();
            k += BigUint::one();
        }
        assert_eq!(g.order(), k, "order mismatch for {g}");
        // And no smaller positive power is the identity, by construction of
        // the loop above.
    }
}

/// Weight vectors are well-formed on all of S_6: n weights, all below the
/// modulus, each cycle contributing a full arithmetic progression.
#[test]
fn weight_vectors_are_well_formed_on_all_of_s6() {
    for g in all_permutations(6) {
        let w = weights_of(&g);
        assert_eq!(w.weights().len(), 6);
        for weight in w.weights() {
            assert!(weight < w.modulus());
        }
        assert_eq!(&g.order(), w.modulus());
        for cycle in g.cycles() {
            // m = n_j · m_j exactly
            let n_j = BigUint::from(cycle.len());
            let m_j = w.modulus() / &n_j;
            assert_eq!(&n_j * &m_j, *w.modulus());
        }
        if g.is_identity() {
            assert_eq!(w.modulus(), &BigUint::one());
            assert!(w.weights().iter().all(|x| x.is_zero()));
        }
    }
}
