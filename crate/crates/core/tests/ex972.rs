mod common;

use std::collections::BTreeMap;

use trivsrc::blocks::block_partition;
use trivsrc::chartab::{character_table, match_matrices};
use trivsrc::permgroup::ex972_group;
use trivsrc::tsct::{assemble_tsct, verify_tsct};

#[test]
fn order_972_pipeline() {
    let g = ex972_group();
    assert_eq!((g.order(), g.classes().len(), g.exponent()), (972, 39, 18));
    let t = character_table(&g).unwrap();
    let mut degs: BTreeMap<u64, usize> = BTreeMap::new();
    for d in t.degrees() {
        *degs.entry(d).or_default() += 1;
    }
    assert_eq!(
        degs,
        BTreeMap::from([(1, 9), (3, 3), (4, 18), (6, 6), (12, 3)])
    );
    let m = common::ex972_match(&t);

    let blocks = block_partition(&t).unwrap();
    let mut prof: BTreeMap<u32, usize> = BTreeMap::new();
    for b in &blocks {
        *prof.entry(b.defect).or_default() += 1;
    }
    assert_eq!(prof, BTreeMap::from([(0, 21), (1, 3), (2, 3)]));
    let mut b0: Vec<usize> = blocks[0].irr.iter().map(|&i| m.rows[i] + 1).collect();
    b0.sort_unstable();
    assert_eq!(b0, vec![1, 4, 5, 10]);

    let ts = assemble_tsct(&t).unwrap();
    assert!(verify_tsct(&ts).all_passed());
    assert_eq!(ts.vertices.len(), 3);
    let (q2, q3) = (&ts.vertices[1], &ts.vertices[2]);
    assert_eq!((q2.normalizer.order(), q2.quotient.group.order()), (36, 18));
    let lin = character_table(&q2.quotient.group)
        .unwrap()
        .degrees()
        .iter()
        .filter(|&&d| d == 1)
        .count();
    assert_eq!(lin, 6);
    assert_eq!((q3.normalizer.order(), q3.quotient.group.order()), (36, 9));
    assert!(q3.quotient.group.is_abelian());
    assert_eq!(q3.quotient.group.exponent(), 3);

    let (labels, mat, meta) = common::ex972_assembled_local(&ts, &m);
    let mut c2: Vec<Vec<usize>> = labels
        .iter()
        .zip(&ts.rows.iter().filter(|r| r.vertex != 0).collect::<Vec<_>>())
        .filter(|(_, r)| r.vertex == 1)
        .map(|(l, _)| l.clone())
        .collect();
    c2.sort();
    let mut want = vec![
        vec![1, 4, 5, 10],
        vec![3, 7, 8, 12],
        vec![2, 6, 9, 11],
        vec![32],
        vec![36],
        vec![35],
    ];
    want.sort();
    assert_eq!(c2, want);

    let reference = common::ex972_local_rows();
    let ref_mat: Vec<Vec<_>> = reference.iter().map(|(_, e)| e.clone()).collect();
    let ref_meta: Vec<usize> = (0..15).map(|j| if j < 6 { 1 } else { 2 }).collect();
    let mm =
        match_matrices(&mat, &meta, &ref_mat, &ref_meta).expect("local blocks match the reference");
    for (i, &k) in mm.rows.iter().enumerate() {
        if meta.len() == 15 && labels[i].len() > 1 {
            assert_eq!(labels[i], reference[k].0, "row {i}");
        }
    }
}
