use proptest::prelude::*;

use twrack::autos::{twisted_act, Automorphism};
use twrack::classifier::{self, ClassDescriptor, Outcome, XInfo};
use twrack::ffield::Field;
use twrack::matgrp::{psl_order, Kind, Mat, Mats};
use twrack::oracle;
use twrack::rack::{self, Rack};
use twrack::weyl::{self, Signature};

fn random_sl(m: &Mats, gens: &[Mat], word: &[usize]) -> Mat {
    let mut g = m.identity();
    for &i in word {
        g = m.canon(&m.mul(&g, &gens[i % gens.len()])).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_text_round_trips(n in 2usize..12, pick in any::<prop::sample::Index>()) {
        let reps = weyl::conjugacy_reps(n).unwrap();
        let (s, _) = &reps[pick.index(reps.len())];
        prop_assert_eq!(&Signature::parse(n, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn twisted_action_stays_in_orbit(word in prop::collection::vec(0usize..8, 0..12), start in 0usize..3) {
        let m = Mats::new(&Field::of_order(3).unwrap(), 3);
        let psi = Automorphism::theta(&m, true);
        let gens = oracle::projective_generators(&m, Kind::SL).unwrap();
        let xs = ["1,0,0;0,1,0;0,0,1", "1,1,0;0,1,0;0,0,1", "1,0,0;0,1,0;0,0,2"];
        let orb = rack::orbit_enumerate(&m.parse(xs[start]).unwrap(), &gens, &psi, 100_000, 1).unwrap();
        prop_assert_eq!(psl_order(3, 3).unwrap() as usize % orb.len(), 0);
        let g = random_sl(&m, &gens, &word);
        let y = twisted_act(&psi, &g, &orb.base);
        prop_assert!(orb.contains(&y));
        // closed under the rack operation
        let rk = orb.rack();
        let z = &orb.elements[word.len() % orb.len()];
        prop_assert!(orb.contains(&rk.op(&y, z)));
    }

    #[test]
    fn classification_is_stable_under_x_refinement(n in 3usize..9, qi in 0usize..6, pick in any::<prop::sample::Index>()) {
        let q = [3u64, 5, 7, 9, 11, 13][qi];
        let reps = weyl::conjugacy_reps(n).unwrap();
        let (s, _) = &reps[pick.index(reps.len())];
        let weak = classifier::classify(&ClassDescriptor::new(s.clone(), q, XInfo::default()).unwrap()).unwrap();
        // refining x can only strengthen the verdict
        for b in classifier::x_branches(s) {
            let v = classifier::classify_branch(s, q, b).unwrap();
            if weak.outcome == Outcome::TypeD {
                prop_assert_eq!(v.outcome, Outcome::TypeD);
            }
        }
    }
}
