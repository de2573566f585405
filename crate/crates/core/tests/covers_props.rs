use monodromy::covers::{
    deform, enumerate_signatures, find_delta11, signature_of, validate_witness, ClassVector, InertiaType,
};
use proptest::prelude::*;

fn class_vector(d: u8, max_len: usize) -> impl Strategy<Value = ClassVector> {
    prop::collection::vec(1..d, 2..max_len).prop_map(move |mut v| {
        // Append one entry to make the sum vanish, then pad if the fix-up
        // would need a zero.
        let s: u32 = v.iter().map(|&h| h as u32).sum::<u32>() % d as u32;
        if s == 0 {
            v.extend([1, d - 1]);
        } else {
            v.push(d - s as u8);
        }
        ClassVector::new(d, v).unwrap()
    })
}

#[test]
fn signature_count_matches_inertia_pairs() {
    for g in 1..=50usize {
        let pairs = (0..=g + 2).filter(|&d1| (d1 + 2 * (g + 2 - d1)) % 3 == 0).count();
        assert_eq!(enumerate_signatures(g as u32).len(), pairs, "g = {g}");
    }
}

#[test]
fn signature_round_trip_small_types() {
    for d1 in 0..=30usize {
        for d2 in 0..=30 - d1 {
            if d1 + d2 < 3 || (d1 + 2 * d2) % 3 != 0 {
                continue;
            }
            let t = InertiaType::trielliptic(d1, d2).unwrap();
            let sig = signature_of(&t).unwrap();
            let (r, s) = (sig.r as i64, sig.s as i64);
            assert_eq!((2 * r - s + 1, 2 * s - r + 1), (d1 as i64, d2 as i64));
            assert_eq!(sig.inertia_type().unwrap(), t);
        }
    }
}

#[test]
fn delta11_in_hypothesis_range() {
    for g in 4..=20 {
        for sig in enumerate_signatures(g) {
            let t = sig.inertia_type().unwrap();
            let w = find_delta11(&t).unwrap();
            validate_witness(&w, &t).unwrap();
        }
    }
    for g in 3..=20 {
        let t = InertiaType::hyperelliptic(g).unwrap();
        validate_witness(&find_delta11(&t).unwrap(), &t).unwrap();
    }
}

proptest! {
    #[test]
    fn genus_is_additive(
        (a, b) in (2u8..=3).prop_flat_map(|d| (class_vector(d, 12), class_vector(d, 12)))
    ) {
        match deform(&a, &b) {
            Ok(glued) => {
                prop_assert_eq!(glued.genus(), a.genus() + b.genus());
                prop_assert_eq!(glued.len(), a.len() + b.len() - 2);
            }
            Err(_) => prop_assert!((a.last() + b.first()) % a.d() != 0),
        }
    }

    #[test]
    fn relabelings(v in class_vector(3, 20), shift in 0usize..20) {
        prop_assert_eq!(v.negate().negate(), v.clone());
        let mut rotated = v.entries().to_vec();
        let k = shift % rotated.len();
        rotated.rotate_left(k);
        let w = ClassVector::new(3, rotated).unwrap();
        prop_assert_eq!(w.canonicalize(), v.canonicalize());
        let (t, n) = (v.inertia_type(), v.negate().inertia_type());
        prop_assert_eq!(t.counts()[0], n.counts()[1]);
        if let (Ok(s), Ok(sn)) = (signature_of(&t), signature_of(&n)) {
            prop_assert_eq!((s.r, s.s), (sn.s, sn.r));
        }
    }
}
