//! Property tests over randomized exact inputs: linear-algebra laws, the
//! structural invariants of the bigraded complex, spectral-sequence
//! monotonicity and convergence, classification invariance under basis
//! change, and lossless serialization.

use nilhodge_core::acs::{
    complex_frame, is_integrable, split_differential, AlmostComplexStructure,
};
use nilhodge_core::cdga::{betti_numbers, CEComplex};
use nilhodge_core::input::{parse_input, serialize_input, AnalysisInput, InputDocument};
use nilhodge_core::linalg::{congruence_signature, ExactMatrix, Subspace};
use nilhodge_core::sampling::{
    change_basis_pair, random_invertible, random_presentation_and_j, XorShift64,
};
use nilhodge_core::scalar::{rational, GaussianRational};
use nilhodge_core::spectral::{build_filtration, e1_explicit, page, stabilize};
use proptest::prelude::*;

fn gaussian_strategy() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussianRational::new(rational(a, b), rational(c, d)))
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(gaussian_strategy(), rows * cols).prop_map(move |entries| {
        let mut m = ExactMatrix::zeros(rows, cols);
        for (idx, v) in entries.into_iter().enumerate() {
            m.set(idx / cols, idx % cols, v);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_of_conjugate_transpose(m in matrix_strategy(3, 4)) {
        prop_assert_eq!(m.rank(), m.conj_transpose().rank());
    }

    #[test]
    fn rank_nullity(m in matrix_strategy(4, 5)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().basis() {
            prop_assert!(m.apply(v).iter().all(GaussianRational::is_zero));
        }
    }

    #[test]
    fn subspace_modularity(
        a in proptest::collection::vec(proptest::collection::vec(gaussian_strategy(), 5), 0..4),
        b in proptest::collection::vec(proptest::collection::vec(gaussian_strategy(), 5), 0..4),
    ) {
        let u = Subspace::span(5, a);
        let v = Subspace::span(5, b);
        let (sum, inter) = u.sum_intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + inter.dim(), u.dim() + v.dim());
        prop_assert!(u.is_contained_in(&sum));
        prop_assert!(inter.is_contained_in(&u));
        prop_assert!(inter.is_contained_in(&v));
    }

    #[test]
    fn scalar_string_round_trip(z in gaussian_strategy()) {
        let s = z.to_string();
        let back: GaussianRational = s.parse().unwrap();
        prop_assert_eq!(back, z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn signature_is_congruence_invariant(seed in any::<u64>()) {
        let mut rng = XorShift64::new(seed);
        // random symmetric rational matrix
        let mut m = ExactMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in r..4 {
                let v = GaussianRational::from_rational(rational(rng.int_in(-3, 3), rng.int_in(1, 2)));
                m.set(r, c, v.clone());
                m.set(c, r, v);
            }
        }
        let p = random_invertible(&mut rng);
        let conjugated = p.transpose().mul(&m).mul(&p);
        prop_assert_eq!(
            congruence_signature(&m).unwrap(),
            congruence_signature(&conjugated).unwrap()
        );
    }

    #[test]
    fn differential_squares_to_zero_on_random_presentations(seed in any::<u64>()) {
        let mut rng = XorShift64::new(seed);
        let (pres, _) = random_presentation_and_j(&mut rng);
        let validated = pres.validate(false).unwrap();
        let ce = CEComplex::build(&validated).unwrap();
        for n in 0..4 {
            prop_assert!(ce.d[n + 1].mul(&ce.d[n]).is_zero());
        }
        // Poincare duality of the Betti numbers on nilpotent presentations
        let betti = betti_numbers(&ce);
        prop_assert_eq!(betti[0], 1);
        prop_assert_eq!(betti[4], 1);
        prop_assert_eq!(betti[1], betti[3]);
    }

    #[test]
    fn bigraded_structure_invariants(seed in any::<u64>()) {
        let mut rng = XorShift64::new(seed);
        let (pres, j) = random_presentation_and_j(&mut rng);
        let validated = pres.validate(false).unwrap();
        let ce = CEComplex::build(&validated).unwrap();
        let acs = AlmostComplexStructure::new("random", j).unwrap();
        let frame = complex_frame(&acs).unwrap();
        let b = split_differential(&frame, &ce).unwrap();
        prop_assert!(b.reassembles_differential());
        prop_assert!(b.conjugation_symmetry_holds());
        let relations = nilhodge_core::acs::verify_d2_relations(&b);
        prop_assert!(relations.all_hold());
        // integrable iff mubar = 0, and then delbar^2 = 0 as well
        let delbar_sq_zero = b.delbar.compose(&b.delbar).is_zero();
        if is_integrable(&b) {
            prop_assert!(delbar_sq_zero);
        }
        prop_assert_eq!(is_integrable(&b), b.mubar.is_zero() && delbar_sq_zero);
    }

    #[test]
    fn pages_monotone_and_convergent(seed in any::<u64>()) {
        let mut rng = XorShift64::new(seed);
        let (pres, j) = random_presentation_and_j(&mut rng);
        let validated = pres.validate(false).unwrap();
        let ce = CEComplex::build(&validated).unwrap();
        let betti = betti_numbers(&ce);
        let acs = AlmostComplexStructure::new("random", j).unwrap();
        let frame = complex_frame(&acs).unwrap();
        let b = split_differential(&frame, &ce).unwrap();
        let f = build_filtration(&b).unwrap();
        let stab = stabilize(&f, &betti).unwrap();
        prop_assert!(stab.delta_consistent);
        let mut prev = page(&f, 1).unwrap().dims;
        for r in 2..=4 {
            let cur = page(&f, r).unwrap().dims;
            for p in 0..3 {
                for q in 0..3 {
                    prop_assert!(cur[p][q] <= prev[p][q]);
                }
            }
            prev = cur;
        }
        let stable_sums: [usize; 5] = {
            let mut t = [0usize; 5];
            for p in 0..3 {
                for q in 0..3 {
                    t[p + q] += stab.stable_dims[p][q];
                }
            }
            t
        };
        prop_assert_eq!(stable_sums, betti);
    }

    #[test]
    fn first_page_is_stable_under_opposite_structure(seed in any::<u64>()) {
        // Conjugation carries the (mubar, delbar) quotient description at
        // (p,q) to the (mu, del) description at (q,p); the opposite
        // structure -J swaps both the frames and the operator roles, so its
        // first page reproduces the original grid slot by slot.
        let mut rng = XorShift64::new(seed);
        let (pres, j) = random_presentation_and_j(&mut rng);
        let validated = pres.validate(false).unwrap();
        let ce = CEComplex::build(&validated).unwrap();
        let acs = AlmostComplexStructure::new("random", j).unwrap();
        let frame = complex_frame(&acs).unwrap();
        let frame_op = complex_frame(&acs.opposite()).unwrap();
        let e1 = e1_explicit(&split_differential(&frame, &ce).unwrap());
        let e1_op = e1_explicit(&split_differential(&frame_op, &ce).unwrap());
        prop_assert_eq!(e1, e1_op);
    }

    #[test]
    fn classification_is_basis_invariant(seed in any::<u64>()) {
        let mut rng = XorShift64::new(seed);
        let corpus = nilhodge_core::corpus::builtin_corpus();
        let entry = &corpus[(rng.int_in(0, 4)) as usize];
        let report = nilhodge_core::analyze(&entry.input).unwrap();
        let p = random_invertible(&mut rng);
        let pres = entry.input.presentation().unwrap();
        let (moved, j_moved) = change_basis_pair(&pres, &entry.input.j, &p);
        let moved_input = AnalysisInput {
            name: "moved".to_string(),
            dimension: 4,
            brackets: moved.bracket_entries(),
            j: j_moved,
            metric: None,
            allow_non_nilpotent: false,
            include_harmonic: false,
        };
        let moved_report = nilhodge_core::analyze(&moved_input).unwrap();
        prop_assert_eq!(&report.classification.class, &moved_report.classification.class);
        prop_assert_eq!(&report.classification.type_label, &moved_report.classification.type_label);
        prop_assert_eq!(report.diamond, moved_report.diamond);
        prop_assert_eq!(report.betti, moved_report.betti);
        prop_assert_eq!(report.pages.first_stable, moved_report.pages.first_stable);
        prop_assert_eq!(report.invariants.sigma, moved_report.invariants.sigma);
    }

    #[test]
    fn input_documents_round_trip(seed in any::<u64>()) {
        let mut rng = XorShift64::new(seed);
        let (pres, j) = random_presentation_and_j(&mut rng);
        let input = AnalysisInput {
            name: format!("roundtrip-{seed}"),
            dimension: 4,
            brackets: pres.bracket_entries(),
            j,
            metric: None,
            allow_non_nilpotent: false,
            include_harmonic: rng.int_in(0, 1) == 1,
        };
        let doc = InputDocument::Analysis(input);
        let text = serialize_input(&doc);
        let parsed = parse_input(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(serialize_input(&parsed), text);
    }
}
