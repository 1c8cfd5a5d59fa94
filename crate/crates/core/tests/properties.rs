use std::collections::{BTreeSet, HashMap};

use hecke_wgraph::coxeter::{IdealE, Side};
use hecke_wgraph::parabolic::ParabolicModule;
use hecke_wgraph::{
    CoxeterMatrix, CoxeterSystem, Elem, Gen, HeckeAlgebra, HeckeModule, RTable, Scalar, Variant,
    WeightFunction,
};
use proptest::prelude::*;

fn system(m: CoxeterMatrix) -> CoxeterSystem {
    CoxeterSystem::build(m).unwrap()
}

fn reduced_words(sys: &CoxeterSystem, w: Elem, memo: &mut HashMap<Elem, Vec<Vec<Gen>>>) -> Vec<Vec<Gen>> {
    if w == Elem::IDENTITY {
        return vec![Vec::new()];
    }
    if let Some(hit) = memo.get(&w) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for s in sys.descents(w, Side::Left).iter() {
        for tail in reduced_words(sys, sys.lmul(s, w), memo) {
            let mut word = vec![s];
            word.extend(tail);
            out.push(word);
        }
    }
    memo.insert(w, out.clone());
    out
}

/// Products of all subwords of a word, by brute force.
fn subword_products(sys: &CoxeterSystem, word: &[Gen]) -> BTreeSet<Elem> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << word.len()) {
        let picked: Vec<Gen> = (0..word.len()).filter(|i| mask & (1 << i) != 0).map(|i| word[i]).collect();
        out.insert(sys.canonical(&picked).unwrap());
    }
    out
}

#[test]
fn canonical_form_is_multiplicative() {
    for m in [CoxeterMatrix::type_a(3), CoxeterMatrix::type_b(3), CoxeterMatrix::dihedral(7)] {
        let sys = system(m);
        for a in sys.elements() {
            for b in sys.elements() {
                let mut word = sys.word(a).to_vec();
                word.extend_from_slice(sys.word(b));
                assert_eq!(sys.mul(a, b), sys.canonical(&word).unwrap());
            }
        }
    }
}

#[test]
fn length_counts_inversions_a3() {
    let sys = system(CoxeterMatrix::type_a(3));
    assert_eq!(sys.num_positive_roots(), 6);
    for w in sys.elements() {
        assert_eq!(sys.length(w), sys.inversion_count(w), "{}", sys.format(w));
    }
}

#[test]
fn principal_ideals_have_pos_equal_complement() {
    for m in [CoxeterMatrix::type_a(3), CoxeterMatrix::type_b(3)] {
        let sys = system(m);
        for w in sys.elements() {
            let e = IdealE::principal(&sys, w);
            assert!(e.pos(&sys).is_ok(), "Pos mismatch for ideal of {}", sys.format(w));
        }
    }
}

#[test]
fn coset_factorization_is_a_length_additive_bijection() {
    let sys = system(CoxeterMatrix::type_a(3));
    for j in sys.generators().subsets() {
        let reps = sys.min_coset_reps(j);
        let sub = sys.parabolic_subgroup(j);
        assert_eq!(reps.len() * sub.len(), sys.order());
        let mut hit = BTreeSet::new();
        for &d in &reps {
            for &u in &sub {
                let w = sys.mul(d, u);
                assert_eq!(sys.length(w), sys.length(d) + sys.length(u));
                assert_eq!(sys.coset_factorize(w, j), (d, u));
                hit.insert(w);
            }
        }
        assert_eq!(hit.len(), sys.order());
    }
}

#[test]
fn generator_cases_partition_s() {
    let sys = system(CoxeterMatrix::type_a(3));
    for j in sys.generators().subsets() {
        for sigma in sys.min_coset_reps(j) {
            for s in 0..sys.rank() {
                assert!(sys.classify_parabolic(s, sigma, j).is_ok());
            }
        }
    }
    for w in sys.elements() {
        let e = IdealE::principal(&sys, w);
        let pos = e.pos(&sys).unwrap();
        for j in pos.subsets() {
            for &y in e.members() {
                for s in 0..sys.rank() {
                    assert!(e.classify(&sys, s, y, j).is_ok());
                }
            }
        }
    }
}

#[test]
fn bruhat_order_matches_subwords_a3() {
    let sys = system(CoxeterMatrix::type_a(3));
    let mut memo = HashMap::new();
    for w in sys.elements() {
        let words = reduced_words(&sys, w, &mut memo);
        let mut below = BTreeSet::new();
        for word in &words {
            below.extend(subword_products(&sys, word));
        }
        for u in sys.elements() {
            assert_eq!(sys.bruhat_leq(u, w), below.contains(&u), "{} <= {}", sys.format(u), sys.format(w));
        }
    }
}

#[test]
fn weight_is_independent_of_the_reduced_word() {
    let sys = system(CoxeterMatrix::type_b(3));
    let weights = WeightFunction::from_units(2, &[vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap();
    let alg = HeckeAlgebra::new(&sys, weights).unwrap();
    let mut memo = HashMap::new();
    for w in sys.elements() {
        for word in reduced_words(&sys, w, &mut memo) {
            let q = word.iter().fold(Scalar::one(), |acc, &s| &acc * alg.q_s(s));
            assert_eq!(q, alg.q_of(w));
        }
    }
    let a3 = system(CoxeterMatrix::type_a(3));
    let alg = HeckeAlgebra::equal_parameters(&a3);
    let mut memo = HashMap::new();
    for w in a3.elements() {
        let n = reduced_words(&a3, w, &mut memo).len();
        assert!(n >= 1);
        assert_eq!(alg.q_of(w), Scalar::q_pow(a3.length(w) as i32));
    }
}

#[test]
fn classical_r_degrees_equal_length_difference() {
    let sys = system(CoxeterMatrix::type_a(3));
    let alg = HeckeAlgebra::equal_parameters(&sys);
    let table = RTable::classical(&alg);
    for x in sys.elements() {
        for w in sys.elements() {
            let r = table.get(x, w);
            if sys.bruhat_leq(x, w) {
                let (top, _) = r.leading().unwrap();
                assert_eq!(top.doubled()[0], 2 * (sys.length(w) - sys.length(x)) as i32);
            } else {
                assert!(r.is_zero());
            }
        }
    }
}

#[test]
fn varphi_commutes_with_bar_a3() {
    let sys = system(CoxeterMatrix::type_a(3));
    let alg = HeckeAlgebra::equal_parameters(&sys);
    for j in sys.generators().subsets() {
        for variant in [Variant::MinusOne, Variant::Qs] {
            let m = ParabolicModule::new(&alg, j, variant);
            for w in sys.elements() {
                let t = alg.t(w);
                assert_eq!(m.varphi(&alg.bar(&t)), m.involution(&m.varphi(&t)).unwrap());
            }
        }
    }
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i32..=6, -4i64..=4), 0..5).prop_map(|terms| {
        let pairs: Vec<(Vec<i32>, i64)> = terms.into_iter().map(|(d, c)| (vec![d], c)).collect();
        Scalar::from_pairs(&pairs).unwrap()
    })
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn bar_and_phi_are_commuting_involutions(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.phi().phi(), a.clone());
        prop_assert_eq!(a.bar().phi(), a.phi().bar());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a * &b).phi(), &a.phi() * &b.phi());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let text = a.to_string();
        let back: Scalar = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn hecke_bar_is_multiplicative(x in 0usize..48, y in 0usize..48, cx in scalar(), cy in scalar()) {
        let sys = system(CoxeterMatrix::type_b(3));
        let weights = WeightFunction::from_units(2, &[vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap();
        let alg = HeckeAlgebra::new(&sys, weights).unwrap();
        let mut h = alg.t(Elem::from_index(x)).scale(&cx);
        h.add_term(Elem::IDENTITY, &Scalar::one());
        let k = alg.t(Elem::from_index(y)).scale(&cy);
        prop_assert_eq!(alg.bar(&alg.mul(&h, &k)), alg.mul(&alg.bar(&h), &alg.bar(&k)));
        prop_assert_eq!(alg.bar(&alg.bar(&h)), h);
    }

    #[test]
    fn random_words_reduce_consistently(word in prop::collection::vec(0usize..3, 0..30)) {
        let sys = system(CoxeterMatrix::type_b(3));
        let w = sys.canonical(&word).unwrap();
        let folded = word.iter().rev().fold(Elem::IDENTITY, |acc, &s| sys.lmul(s, acc));
        prop_assert_eq!(w, folded);
        prop_assert_eq!(sys.length(w) % 2, word.len() % 2);
        prop_assert!(sys.bruhat_leq(Elem::IDENTITY, w));
    }
}
