//! Property tests for the invariants listed per module, run against the
//! embedded corpus and the oracles in `common`.

mod common;

use proptest::prelude::*;

use common::*;
use rackmod::census::builtin_table;
use rackmod::coloring::{counts_by_writhe, enumerate_colorings, integral_counting_invariant, is_valid_coloring};
use rackmod::diagram::LinkDiagram;
use rackmod::enhanced::{dim_enhanced_invariant, enhanced_invariant, enhanced_multiset, presentation_matrix};
use rackmod::modmath::nullity_mod_p;
use rackmod::rack::Rack;
use rackmod::rackmodule::{search_module_structures, ModuleStructure};

fn corpus() -> Vec<LinkDiagram> {
    builtin_table().into_iter().map(|e| e.diagram).collect()
}

fn small_corpus() -> Vec<LinkDiagram> {
    corpus().into_iter().filter(|d| d.crossings().len() <= 6).collect()
}

fn racks() -> Vec<Rack> {
    vec![
        ca12(),
        census_quandle(),
        census_rack(),
        Rack::constant_action(&[1, 2, 0]).unwrap(),
        Rack::ts_rack(4, 1, 2).unwrap(),
    ]
}

fn structures() -> Vec<ModuleStructure> {
    vec![z3_structure(), census_quandle_structure(), census_rack_structure()]
}

/// A corpus diagram with a few extra kinks at chosen arcs.
fn kinked(index: usize, kinks: &[(usize, usize)]) -> LinkDiagram {
    let all = small_corpus();
    let mut d = all[index % all.len()].clone();
    for &(c, a) in kinks {
        let c = c % d.component_count();
        let comp = &d.components()[c];
        let arc = comp[a % comp.len()];
        d = d.insert_positive_kink(c, arc).unwrap();
    }
    d
}

fn kinks() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..3, 0usize..12), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(index in 0usize..64, ks in kinks()) {
        let d = kinked(index, &ks);
        let again = LinkDiagram::parse(&d.to_json()).unwrap();
        prop_assert_eq!(again.to_file(), d.to_file());
        prop_assert_eq!(again.writhe_vector(), d.writhe_vector());
    }

    #[test]
    fn kink_adds_one_crossing_and_one_arc(index in 0usize..64, ks in kinks(), c in 0usize..3, a in 0usize..12) {
        let d = kinked(index, &ks);
        let c = c % d.component_count();
        let comp = &d.components()[c];
        let k = d.insert_positive_kink(c, comp[a % comp.len()]).unwrap();
        prop_assert_eq!(k.crossings().len(), d.crossings().len() + 1);
        let closed = d.crossings().iter().all(|x| d.component_of(x.under_in) != c);
        let grown = if closed { 0 } else { 1 };
        prop_assert_eq!(k.components()[c].len(), comp.len() + grown);
        for j in 0..d.component_count() {
            let bump = if j == c { 1 } else { 0 };
            prop_assert_eq!(k.writhe_vector().as_slice()[j], d.writhe_vector().as_slice()[j] + bump);
        }
    }

    #[test]
    fn framed_representative_hits_target(index in 0usize..64, n in 1u64..5, w in prop::collection::vec(0u64..5, 3)) {
        let d = kinked(index, &[]);
        let target: Vec<u64> = w[..d.component_count()].iter().map(|v| v % n).collect();
        let f = d.framed_representative(&target, n);
        for (got, want) in f.writhe_vector().as_slice().iter().zip(&target) {
            prop_assert_eq!(got.rem_euclid(n as i64) as u64, *want);
        }
    }

    #[test]
    fn colorings_match_brute_force(index in 0usize..64, ks in kinks(), r in 0usize..5) {
        let d = kinked(index, &ks);
        let x = &racks()[r];
        prop_assume!((x.size() as f64).powi(d.arc_count() as i32) <= 1e6);
        let got: Vec<Vec<usize>> = enumerate_colorings(&d, x).iter().map(|f| f.labels().to_vec()).collect();
        prop_assert!(got.iter().all(|f| is_valid_coloring(&d, x, f)));
        prop_assert_eq!(got, brute_force_colorings(&d, x));
    }

    #[test]
    fn phone_cord_move_keeps_counts(index in 0usize..64, c in 0usize..3, r in 0usize..5) {
        let d = kinked(index, &[]);
        let x = &racks()[r];
        let c = c % d.component_count();
        let mut moved = d.clone();
        for _ in 0..x.rank() {
            moved = moved.insert_positive_kink(c, d.components()[c][0]).unwrap();
        }
        prop_assert_eq!(enumerate_colorings(&moved, x).len(), enumerate_colorings(&d, x).len());
        prop_assert_eq!(integral_counting_invariant(&moved, x), integral_counting_invariant(&d, x));
    }

    #[test]
    fn bead_counts_match_brute_force(index in 0usize..64, ks in kinks(), which in 0usize..3) {
        let d = kinked(index, &ks);
        let r = &structures()[which];
        prop_assume!((r.modulus() as f64).powi(d.arc_count() as i32) <= 1e6);
        for f in enumerate_colorings(&d, r.rack()) {
            let m = presentation_matrix(&d, &f, r).unwrap();
            prop_assert_eq!(m.solution_count(), brute_force_beads(&d, f.labels(), r) as u128);
        }
    }

    #[test]
    fn prime_counts_are_powers_of_nullity(index in 0usize..64, ks in kinks(), which in 0usize..3) {
        let d = kinked(index, &ks);
        let r = &structures()[which];
        let p = r.modulus();
        for f in enumerate_colorings(&d, r.rack()) {
            let m = presentation_matrix(&d, &f, r).unwrap();
            let k = nullity_mod_p(m.matrix(), p).unwrap() as u32;
            prop_assert_eq!(m.solution_count(), (p as u128).pow(k));
        }
    }

    #[test]
    fn negative_rule_inverts_positive_rule(which in 0usize..80, n in prop::sample::select(vec![3u64, 5])) {
        let x = if n == 3 { ca12() } else { census_quandle() };
        let found = search_module_structures(&x, n, None);
        let r = &found[which % found.len()];
        for a in 0..x.size() {
            for b in 0..x.size() {
                let (tb, sb) = r.negative_coefficients(x.op(a, b), b);
                for g in 0..n {
                    for h in 0..n {
                        let out = (r.t(a, b) * g + r.s(a, b) * h) % n;
                        prop_assert_eq!((tb * out + sb * h) % n, g);
                    }
                }
            }
        }
    }
}

#[test]
fn quandles_need_no_framing() {
    let x = census_quandle();
    for d in corpus() {
        let plain = enumerate_colorings(&d, &x).len() as u64;
        assert_eq!(counts_by_writhe(&d, &x).len(), 1);
        assert_eq!(integral_counting_invariant(&d, &x), plain);
    }
}

#[test]
fn multiset_projects_to_invariant() {
    for r in structures() {
        for d in small_corpus() {
            let ms = enhanced_multiset(&d, &r, false);
            assert_eq!(ms.invariant(), enhanced_invariant(&d, &r));
            assert_eq!(ms.len() as u64, integral_counting_invariant(&d, r.rack()));
        }
    }
}

#[test]
fn dimension_invariant_matches_counts() {
    for r in structures() {
        let p = r.modulus() as u128;
        for d in small_corpus() {
            let counts: Vec<(u128, u64)> = enhanced_invariant(&d, &r).terms().collect();
            let dims: Vec<(u128, u64)> = dim_enhanced_invariant(&d, &r).unwrap().terms().collect();
            let lifted: Vec<(u128, u64)> = dims.iter().map(|&(k, c)| (p.pow(k as u32), c)).collect();
            assert_eq!(lifted, counts, "{}", d.name());
        }
    }
}

#[test]
fn basis_spans_the_bead_space() {
    let r = z3_structure();
    for d in small_corpus().into_iter().filter(|d| d.arc_count() <= 7) {
        for e in enhanced_multiset(&d, &r, true).entries {
            let basis = e.basis.unwrap();
            let mut span = std::collections::BTreeSet::new();
            span.insert(vec![0i64; e.coloring.labels().len()]);
            for g in &basis {
                let current: Vec<Vec<i64>> = span.iter().cloned().collect();
                for v in current {
                    for k in 1..3 {
                        span.insert(v.iter().zip(g).map(|(a, b)| (a + k * b) % 3).collect());
                    }
                }
            }
            assert_eq!(span.len() as u128, e.bead_count, "{}", d.name());
        }
    }
}

#[test]
fn module_search_output_validates() {
    for (x, n) in [(Rack::trivial(1), 5), (ca12(), 5), (census_rack(), 5), (census_quandle(), 3)] {
        let found = search_module_structures(&x, n, None);
        assert!(found.windows(2).all(|w| w[0].block_matrix() < w[1].block_matrix()));
        for r in found {
            assert!(relations_hold(&x, n, &r.mt(), &r.ms()));
            assert_eq!(ModuleStructure::validate(&x, n, &r.mt(), &r.ms()), Ok(r.clone()));
            assert!(Rack::from_table(&r.extension_rack().table()).is_ok());
        }
    }
}
