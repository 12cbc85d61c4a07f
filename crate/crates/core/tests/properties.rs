use cayspec::cayley::{build_adjacency, validate_connection_set, DEFAULT_DENSE_CAP};
use cayspec::characters::{l_index_census, CharacterTable};
use cayspec::matrix::Matrix;
use cayspec::nullity::max_multiplicity_bound;
use cayspec::numtheory::{divisors, euler_phi, ramanujan_direct, ramanujan_hoelder};
use cayspec::oracle::{oracle_spectrum, symmetric_eigenvalues, OracleOptions, DEFAULT_EIGEN_TOL};
use cayspec::spectrum::{group_spectrum, tensor_spectrum, DEFAULT_GAP_TOL};
use cayspec::{ConnectionSet, Factor, FactorElement, GroupElement, GroupSpec, Spectrum};
use proptest::prelude::*;

fn factor_strategy() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (2u64..=12).prop_map(Factor::Cyclic),
        prop::sample::select(vec![3u64, 5, 7, 9]).prop_map(Factor::Dihedral),
    ]
}

/// Group with at most one dihedral factor and order at most 256, plus a
/// random inverse-closed, identity-free connection set.
fn graph_strategy(max_order: u64) -> impl Strategy<Value = (GroupSpec, ConnectionSet)> {
    prop::collection::vec(factor_strategy(), 1..=3)
        .prop_filter("order and dihedral count", move |fs| {
            fs.iter().map(Factor::order).product::<u64>() <= max_order
                && fs.iter().filter(|f| matches!(f, Factor::Dihedral(_))).count() <= 1
        })
        .prop_flat_map(|fs| {
            let masks: Vec<_> = fs
                .iter()
                .map(|f| prop::collection::vec(any::<bool>(), f.order() as usize))
                .collect();
            (Just(fs), masks)
        })
        .prop_map(|(fs, masks)| {
            let group = GroupSpec::new(fs.clone()).unwrap();
            let sets = fs
                .iter()
                .zip(masks)
                .map(|(f, mask)| {
                    let mut set: Vec<FactorElement> = f
                        .elements()
                        .into_iter()
                        .zip(mask)
                        .filter(|(x, keep)| *keep && *x != f.identity())
                        .flat_map(|(x, _)| [x, f.inverse(&x)])
                        .collect();
                    if set.is_empty() {
                        let x = f.element_at(1);
                        set = vec![x, f.inverse(&x)];
                    }
                    set
                })
                .collect();
            let s = validate_connection_set(&group, sets).unwrap();
            (group, s)
        })
}

fn factor_graph(f: &Factor, set: &[FactorElement]) -> (GroupSpec, ConnectionSet) {
    let g = GroupSpec::new(vec![*f]).unwrap();
    let s = validate_connection_set(&g, vec![set.to_vec()]).unwrap();
    (g, s)
}

#[test]
fn totient_divisor_sum() {
    for n in 1..=2000u64 {
        let total: u64 = divisors(n).unwrap().into_iter().map(|d| euler_phi(d).unwrap()).sum();
        assert_eq!(total, n);
    }
}

proptest! {
    #[test]
    fn ramanujan_forms_agree(n in 1u64..3000, r in 0u64..6000) {
        let h = ramanujan_hoelder(r, n).unwrap() as f64;
        let d = ramanujan_direct(r, n, 1e-6).unwrap();
        prop_assert!((h - d).abs() < 1e-6);
    }

    #[test]
    fn adjacency_is_symmetric_regular_loop_free((g, s) in graph_strategy(256)) {
        let a = build_adjacency(&g, &s, DEFAULT_DENSE_CAP).unwrap();
        let n = a.size();
        prop_assert_eq!(n as u64, g.order());
        for i in 0..n {
            prop_assert_eq!(a.get(i, i), 0.0);
            let row: f64 = a.row(i).iter().sum();
            prop_assert_eq!(row as usize, s.size());
            for j in 0..n {
                prop_assert_eq!(a.get(i, j), a.get(j, i));
            }
        }
        prop_assert_eq!(build_adjacency(&g, &s, DEFAULT_DENSE_CAP).unwrap(), a);
    }

    #[test]
    fn adjacency_is_kronecker_product((g, s) in graph_strategy(256)) {
        let whole = build_adjacency(&g, &s, DEFAULT_DENSE_CAP).unwrap();
        let kron = g
            .factors()
            .iter()
            .zip(s.factor_sets())
            .map(|(f, set)| {
                let (fg, fs) = factor_graph(f, set);
                build_adjacency(&fg, &fs, DEFAULT_DENSE_CAP).unwrap()
            })
            .reduce(|a, b| a.kron(&b))
            .unwrap();
        prop_assert_eq!(whole, kron);
    }

    #[test]
    fn group_and_tensor_spectra_agree((g, s) in graph_strategy(256)) {
        let whole = group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap();
        let parts: Vec<Spectrum> = g
            .factors()
            .iter()
            .zip(s.factor_sets())
            .map(|(f, set)| {
                let (fg, fs) = factor_graph(f, set);
                group_spectrum(&fg, &fs, DEFAULT_GAP_TOL).unwrap()
            })
            .collect();
        let tensor = tensor_spectrum(&parts, DEFAULT_GAP_TOL).unwrap();
        prop_assert!(whole.approx_eq(&tensor, 1e-6), "{:?} vs {:?}", whole, tensor);
        prop_assert_eq!(whole.order() as u64, g.order());
        prop_assert!(whole.check_trace_identities(s.size()).is_ok());
    }

    #[test]
    fn group_spectrum_matches_oracle((g, s) in graph_strategy(72)) {
        let closed = group_spectrum(&g, &s, DEFAULT_GAP_TOL).unwrap();
        let oracle = oracle_spectrum(&g, &s, &OracleOptions::default()).unwrap();
        prop_assert!(closed.approx_eq(&oracle, 1e-6), "{:?} vs {:?}", closed, oracle);
        // Perron value of a regular graph
        prop_assert!((oracle.pairs()[0].value - s.size() as f64).abs() < 1e-7);
    }

    #[test]
    fn eigensolver_backward_checks(
        n in 1usize..=32,
        seed in prop::collection::vec(-1.0f64..1.0, 32 * 32),
    ) {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = seed[i * 32 + j];
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        let values = symmetric_eigenvalues(&m, DEFAULT_EIGEN_TOL).unwrap();
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        let sum: f64 = values.iter().sum();
        let sq: f64 = values.iter().map(|x| x * x).sum();
        prop_assert!((sum - m.trace()).abs() < 1e-9 * n as f64);
        prop_assert!((sq - m.frobenius_norm_sq()).abs() < 1e-8 * n as f64);
    }

    #[test]
    fn multiplicity_bound_ignores_entry_order(
        entries in prop::collection::vec((-20i64..20, 1usize..10), 1..12),
        shuffle_seed in any::<u64>(),
    ) {
        let a: Vec<(f64, usize)> = entries.iter().map(|&(v, m)| (v as f64, m)).collect();
        let mut b = a.clone();
        let len = b.len();
        for i in 0..len {
            let j = ((shuffle_seed >> (i % 60)) as usize + i * 7) % len;
            b.swap(i, j);
        }
        let sa = Spectrum::from_entries(a, true, 0.0);
        let sb = Spectrum::from_entries(b, true, 0.0);
        prop_assert_eq!(max_multiplicity_bound(&sa).unwrap(), max_multiplicity_bound(&sb).unwrap());
    }

    #[test]
    fn census_idempotent_on_duplicates((g, s) in graph_strategy(128)) {
        let table = CharacterTable::for_group(&g).unwrap();
        let realized: Vec<GroupElement> = s.realized();
        let mut doubled = realized.clone();
        doubled.extend(realized.iter().take(3).cloned());
        let a = l_index_census(&table, &realized).unwrap();
        let b = l_index_census(&table, &doubled).unwrap();
        prop_assert_eq!(&a, &b);
        let linear = table.characters().iter().filter(|c| c.degree() == 1).count();
        prop_assert!(a.total() <= linear);
        prop_assert!(a.count(cayspec::characters::RootOfUnity::ONE) >= 1);
    }

    #[test]
    fn spectrum_json_round_trips(
        entries in prop::collection::vec((-1.0e6f64..1.0e6, 1usize..50), 0..20),
    ) {
        let s = Spectrum::from_entries(entries, false, DEFAULT_GAP_TOL);
        let back = Spectrum::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }
}
