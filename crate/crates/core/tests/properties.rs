use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trivsrc::chartab::{
    builtin_table, dihedral_character_table, dixon_character_table, match_tables, CharTable,
};
use trivsrc::domestic::{
    brauer_7b_solve, predict_7b, DomesticBlockInput, Fusion, InvolutionValues, SIGNS,
};
use trivsrc::exactnum::{rat, CycNum};
use trivsrc::permgroup::{a5_group, builtin_group, Perm, PermGroup};
use trivsrc::tsct::{assemble_tsct, builtin_tsct, tsct_d4v, verify_tsct};

fn cyc() -> impl Strategy<Value = CycNum> {
    (
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 9, 12, 15]),
        prop::collection::vec((-4i64..5, 1i64..4), 16),
    )
        .prop_map(|(n, cs)| {
            let mut x = CycNum::zero();
            for (k, (a, b)) in cs.into_iter().take(n as usize).enumerate() {
                x = x.add(&CycNum::root_of_unity(n, k as i64).scale(&rat(a, b)));
            }
            x
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyc_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&CycNum::one()), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn cyc_galois_and_serialization(a in cyc(), b in cyc(), k in prop::sample::select(vec![1i64, 7, 11, 13, 17, 19, 23, 29, 31, 37])) {
        prop_assert_eq!(a.mul(&b).galois(k), a.galois(k).mul(&b.galois(k)));
        prop_assert_eq!(a.add(&b).galois(k), a.galois(k).add(&b.galois(k)));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(CycNum::parse_canonical(&a.canonical_string()).unwrap(), a.clone());
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CycNum>(&j).unwrap(), a.clone());
        let n = a.mul(&a.conj());
        let (re, im) = n.to_complex();
        prop_assert!(re >= -1e-9 && im.abs() < 1e-9);
    }
}

fn sample_tables() -> Vec<(String, CharTable)> {
    let mut v: Vec<(String, CharTable)> = ["v4", "a4", "a5"]
        .iter()
        .map(|n| (n.to_string(), builtin_table(n).unwrap()))
        .collect();
    for k in [3, 5, 7, 9] {
        v.push((format!("d4v:{k}"), dihedral_character_table(k).unwrap()));
    }
    let s4 = PermGroup::from_generators(
        4,
        vec![
            Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(4, &[&[1, 2]]).unwrap(),
        ],
    )
    .unwrap();
    v.push(("s4".into(), dixon_character_table(Arc::new(s4)).unwrap()));
    let q8ish = PermGroup::from_generators(
        8,
        vec![
            Perm::from_cycles(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]).unwrap(),
            Perm::from_cycles(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]]).unwrap(),
        ],
    )
    .unwrap();
    v.push(("q8".into(), dixon_character_table(Arc::new(q8ish)).unwrap()));
    v
}

fn sum_sq(t: &CharTable) -> u64 {
    t.degrees().iter().map(|d| d * d).sum()
}

#[test]
fn every_table_satisfies_orthogonality() {
    for (name, t) in sample_tables() {
        t.check_orthogonality()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        t.check_column_orthogonality()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(sum_sq(&t), t.order() as u64, "{name}");
        assert_eq!(
            t.classes().iter().map(|c| c.size).sum::<usize>(),
            t.order(),
            "{name}"
        );
        for i in 0..t.num_classes() {
            assert_eq!(
                t.order() % t.degree(i) as usize,
                0,
                "{name}: degree divides order"
            );
        }
    }
}

#[test]
fn dixon_agrees_with_closed_forms() {
    for name in ["v4", "a4", "a5"] {
        let d = dixon_character_table(Arc::new(builtin_group(name).unwrap())).unwrap();
        assert!(
            match_tables(&d, &builtin_table(name).unwrap()).is_some(),
            "{name}"
        );
    }
    for v in [3, 5, 7] {
        let g = builtin_group(&format!("d4v:{v}")).unwrap();
        let d = dixon_character_table(Arc::new(g)).unwrap();
        assert!(
            match_tables(&d, &dihedral_character_table(v).unwrap()).is_some(),
            "d4v:{v}"
        );
    }
}

#[test]
fn frobenius_reciprocity_in_a5() {
    let g = a5_group();
    let big = builtin_table("a5").unwrap();
    let e = |p: Perm| g.index_of(&p).unwrap();
    let c = |cy: &[&[usize]]| e(Perm::from_cycles(5, cy).unwrap());
    let subgroups = [
        vec![c(&[&[1, 2, 3]]), c(&[&[1, 2], &[3, 4]])],
        vec![c(&[&[1, 2, 3, 4, 5]]), c(&[&[2, 5], &[3, 4]])],
        vec![c(&[&[1, 2, 3]]), c(&[&[1, 2], &[4, 5]])],
        vec![c(&[&[1, 2], &[3, 4]]), c(&[&[1, 3], &[2, 4]])],
        vec![c(&[&[1, 2, 3, 4, 5]])],
    ];
    for gens in subgroups {
        let h = g.subgroup_generated(&gens);
        let hg = g.subgroup_as_group(&h);
        let sub = dixon_character_table(Arc::new(hg)).unwrap();
        for psi in sub.irr() {
            let ind = big.induce(psi, &sub).unwrap();
            for chi in big.irr() {
                let res = big.restrict(chi, &sub).unwrap();
                assert_eq!(
                    big.inner_product(&ind, chi).unwrap(),
                    sub.inner_product(psi, &res).unwrap()
                );
            }
        }
    }
}

fn random_group(rng: &mut ChaCha8Rng) -> PermGroup {
    let deg = rng.gen_range(3..=6);
    let k = rng.gen_range(1..=2);
    let gens: Vec<Perm> = (0..k)
        .map(|_| {
            let mut v: Vec<usize> = (0..deg).collect();
            v.shuffle(rng);
            Perm::from_images(&v).unwrap()
        })
        .collect();
    PermGroup::from_generators(deg, gens).unwrap()
}

#[test]
fn random_groups_produce_valid_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7215);
    let (mut done, mut assembled) = (0, 0);
    while done < 25 {
        let g = random_group(&mut rng);
        if g.order() > 120 {
            continue;
        }
        let order = g.order();
        let t = dixon_character_table(Arc::new(g)).unwrap();
        t.check_orthogonality().unwrap();
        t.check_column_orthogonality().unwrap();
        assert_eq!(sum_sq(&t), order as u64);
        match assemble_tsct(&t) {
            Ok(ts) => {
                assert!(verify_tsct(&ts).all_passed(), "order {order}");
                assembled += 1;
            }
            Err(trivsrc::Error::Unsupported(_)) => {}
            Err(e) => panic!("order {order}: {e}"),
        }
        done += 1;
    }
    assert!(assembled >= 10, "only {assembled} groups in scope");
}

#[test]
fn brauer_7b_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for fusion in [Fusion::I, Fusion::II, Fusion::III] {
        let (mut ok, mut ambiguous) = (0, 0);
        for _ in 0..100 {
            let n = [0; 3].map(|_| rng.gen_range(1..=3));
            let mut rows = SIGNS;
            rows.shuffle(&mut rng);
            let vals = predict_7b(fusion, n, &rows);
            let input = DomesticBlockInput {
                degrees: [1; 4],
                involutions: vals
                    .iter()
                    .enumerate()
                    .map(|(k, v)| InvolutionValues {
                        name: format!("2{}", (b'a' + k as u8) as char),
                        values: *v,
                    })
                    .collect(),
                fusion,
                characters: None,
            };
            match brauer_7b_solve(&input) {
                Ok(s) => {
                    assert_eq!(predict_7b(fusion, s.n, &s.signs), vals, "{fusion:?} {n:?}");
                    ok += 1;
                }
                Err(trivsrc::Error::Ambiguous(_)) => ambiguous += 1,
                Err(e) => panic!("{fusion:?} {n:?} {rows:?}: {e}"),
            }
        }
        assert_eq!(ok + ambiguous, 100);
        assert!(ok > 0, "{fusion:?}: no unique solution in 100 samples");
    }
}

#[test]
fn brauer_7b_unit_multiplicities_are_unique() {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let d = 6usize.wrapping_sub(a + b + c);
                if a != b && b != c && a != c && d < 4 && d != a && d != b && d != c {
                    perms.push([a, b, c, d]);
                }
            }
        }
    }
    assert_eq!(perms.len(), 24);
    for fusion in [Fusion::I, Fusion::II, Fusion::III] {
        for p in &perms {
            let rows = p.map(|i| SIGNS[i]);
            let vals = predict_7b(fusion, [1, 1, 1], &rows);
            let input = DomesticBlockInput {
                degrees: [1; 4],
                involutions: vals
                    .iter()
                    .map(|v| InvolutionValues {
                        name: "2a".into(),
                        values: *v,
                    })
                    .collect(),
                fusion,
                characters: None,
            };
            let s = brauer_7b_solve(&input).unwrap_or_else(|e| panic!("{fusion:?} {p:?}: {e}"));
            assert_eq!(s.alpha, p.iter().position(|&i| i == 0).unwrap());
            assert_eq!(s.n, [1, 1, 1]);
        }
    }
}

#[test]
fn every_single_entry_perturbation_is_detected() {
    let mut tables = vec![
        builtin_tsct("v4").unwrap(),
        builtin_tsct("a4").unwrap(),
        builtin_tsct("a5").unwrap(),
    ];
    tables.push(tsct_d4v(3).unwrap());
    for t in tables {
        assert!(verify_tsct(&t).all_passed());
        for i in 0..t.entries.len() {
            for j in 0..t.entries[i].len() {
                let mut bad = t.clone();
                bad.entries[i][j] = bad.entries[i][j].add(&CycNum::one());
                assert!(
                    !verify_tsct(&bad).all_passed(),
                    "{:?} entry ({i},{j}) perturbation undetected",
                    t.table.group().name()
                );
            }
        }
    }
}

#[test]
fn row_swaps_within_a_vertex_keep_validity_but_cross_vertex_swaps_fail() {
    let t = builtin_tsct("a5").unwrap();
    let mut bad = t.clone();
    let (a, b) = (0, t.rows.len() - 1);
    bad.entries.swap(a, b);
    assert!(!verify_tsct(&bad).all_passed());
}
