//! One pass/fail line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trivsrc::blocks::block_partition;
use trivsrc::chartab::{
    builtin_table, character_table, dihedral_character_table, dixon_character_table,
    match_matrices, match_tables, CharTable, VirtualCharacter,
};
use trivsrc::domestic::{
    brauer_7b_solve, predict_7b, DomesticBlockInput, Fusion, InvolutionValues, SIGNS,
};
use trivsrc::exactnum::CycNum;
use trivsrc::permgroup::{builtin_group, dihedral_group, dihedral_rs, ex972_group};
use trivsrc::tsct::{
    assemble_tsct, builtin_tsct, compare_tsct, d4v_identities, tsct_d4v, verify_tsct, TSCTable,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let t0 = Instant::now();
    let x = f();
    let dt = t0.elapsed();
    if dt > limit {
        return Err(format!("{what} took {dt:?} (limit {limit:?})"));
    }
    Ok(x)
}

fn dixon(g: trivsrc::permgroup::PermGroup) -> Result<CharTable, String> {
    ok(dixon_character_table(Arc::new(g)), "dixon")
}

fn criterion_1() -> Outcome {
    for name in ["v4", "a4", "a5"] {
        let g = ok(builtin_group(name), name)?;
        let d = timed(Duration::from_secs(1), name, || dixon(g))??;
        ensure!(
            match_tables(&d, &ok(builtin_table(name), name)?).is_some(),
            "{name}: Dixon table differs from reference"
        );
    }
    for v in [3, 5, 7, 9] {
        let g = ok(dihedral_group(v), "dihedral")?;
        let d = timed(Duration::from_secs(1), "dihedral", || dixon(g))??;
        let c = ok(dihedral_character_table(v), "closed form")?;
        ensure!(
            match_tables(&d, &c).is_some(),
            "D_4v v={v}: closed form differs from Dixon"
        );
    }
    Ok("V4, A4, A5 reproduced; D_4v closed form = Dixon for v = 3, 5, 7, 9".into())
}

fn criterion_2() -> Outcome {
    for name in ["v4", "a4", "a5"] {
        let t = ok(builtin_table(name), name)?;
        let a = ok(assemble_tsct(&t), name)?;
        let b = ok(builtin_tsct(name), name)?;
        ensure!(
            a.rows.len() == b.rows.len(),
            "{name}: size {} vs {}",
            a.rows.len(),
            b.rows.len()
        );
        let m = compare_tsct(&a, &b).map_err(|e| format!("{name}: {e}"))?;
        for (i, &k) in m.rows.iter().enumerate() {
            ensure!(
                a.rows[i].vertex == b.rows[k].vertex,
                "{name}: row {i} changes vertex"
            );
            for (j, &l) in m.columns.iter().enumerate() {
                ensure!(
                    a.entries[i][j] == b.entries[k][l],
                    "{name}: entry ({i},{j}) differs"
                );
            }
        }
    }
    Ok("assembled V4, A4, A5 tables equal the reference tables entrywise (rows ordered within vertices)".into())
}

/// Re-expresses a table over `target`, an ordinary table of the same group
/// with its own row order, by matching irreducibles as class functions.
fn rebase(ts: &TSCTable, target: &CharTable) -> Result<TSCTable, String> {
    let src = &ts.table;
    ensure!(
        src.group().elements() == target.group().elements(),
        "different element enumerations"
    );
    let value_at =
        |i: usize, c: usize| src.value(i, src.column_of_element(target.classes()[c].rep));
    let map: Vec<usize> = (0..src.num_classes())
        .map(|i| {
            (0..target.num_classes())
                .find(|&k| (0..target.num_classes()).all(|c| target.value(k, c) == value_at(i, c)))
                .ok_or_else(|| format!("irreducible {i} has no counterpart"))
        })
        .collect::<Result<_, _>>()?;
    let mut out = ts.clone();
    out.table = target.clone();
    for r in &mut out.rows {
        r.character = VirtualCharacter {
            coeffs: r
                .character
                .coeffs
                .iter()
                .map(|(&i, &c)| (map[i], c))
                .collect(),
        };
    }
    Ok(out)
}

fn criterion_3() -> Outcome {
    for v in [3usize, 5, 7, 9] {
        let t = ok(dihedral_character_table(v), "table")?;
        let blocks = ok(block_partition(&t), "blocks")?;
        ensure!(
            blocks.len() == v.div_ceil(2),
            "v={v}: {} blocks",
            blocks.len()
        );
        let ts = ok(tsct_d4v(v), "tsct_d4v")?;
        ensure!(
            verify_tsct(&ts).all_passed(),
            "v={v}: closed form fails verification"
        );
        let pims: Vec<Vec<usize>> = ts
            .vertex_rows(0)
            .iter()
            .map(|&r| ts.rows[r].character.constituents())
            .collect();
        ensure!(
            pims.contains(&vec![0, 1, 2, 3]),
            "v={v}: no PIM chi1+chi2+chi3+chi4"
        );
        for i in 2..=v.div_ceil(2) {
            ensure!(
                pims.contains(&vec![i + 2, v + 4 - i]),
                "v={v}: PIM chi{}+chi{} missing",
                i + 3,
                v + 5 - i
            );
        }
        let (e33, half) = d4v_identities(&ts);
        ensure!(e33 && half, "v={v}: T33 = T31 {e33}, 2 T31 = T11 {half}");
        let assembled = ok(assemble_tsct(&t), "assemble")?;
        compare_tsct(&assembled, &ts)
            .map_err(|e| format!("v={v}: assembled vs closed form: {e}"))?;
        let g = ok(dihedral_group(v), "group")?;
        let via_dixon = ok(assemble_tsct(&dixon(g)?), "assemble via Dixon")?;
        let rebased = rebase(&via_dixon, &ts.table)?;
        compare_tsct(&rebased, &ts).map_err(|e| format!("v={v}: Dixon route: {e}"))?;
    }
    Ok("block counts, PIMs, T33 = T31 = T11/2, assembled = closed form for v = 3, 5, 7, 9".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let g = ex972_group();
    ensure!(
        (g.order(), g.classes().len(), g.exponent()) == (972, 39, 18),
        "order/classes/exponent"
    );
    let t = ok(character_table(&g), "table")?;
    let mut degs: BTreeMap<u64, usize> = BTreeMap::new();
    for d in t.degrees() {
        *degs.entry(d).or_default() += 1;
    }
    ensure!(
        degs == BTreeMap::from([(1, 9), (3, 3), (4, 18), (6, 6), (12, 3)]),
        "degree multiset {degs:?}"
    );
    let m = common::ex972_match(&t);
    let blocks = ok(block_partition(&t), "blocks")?;
    let mut prof: BTreeMap<u32, usize> = BTreeMap::new();
    for b in &blocks {
        *prof.entry(b.defect).or_default() += 1;
    }
    ensure!(
        blocks.len() == 27 && prof == BTreeMap::from([(0, 21), (1, 3), (2, 3)]),
        "block profile {prof:?}"
    );
    let mut b0deg: Vec<u64> = blocks[0].irr.iter().map(|&i| t.degree(i)).collect();
    b0deg.sort_unstable();
    ensure!(b0deg == [1, 1, 1, 3], "B0 degrees {b0deg:?}");
    ensure!(
        t.trivial_row().is_some_and(|r| blocks[0].irr.contains(&r)),
        "trivial character outside B0"
    );

    let ts = ok(assemble_tsct(&t), "assemble")?;
    ensure!(verify_tsct(&ts).all_passed(), "verification failed");
    ensure!(ts.vertices.len() == 3, "{} vertices", ts.vertices.len());
    let (q2, q3) = (&ts.vertices[1], &ts.vertices[2]);
    ensure!(
        (q2.normalizer.order(), q2.quotient.group.order()) == (36, 18),
        "N(Q2)"
    );
    let lin = ok(character_table(&q2.quotient.group), "N(Q2)/Q2")?
        .degrees()
        .iter()
        .filter(|&&d| d == 1)
        .count();
    ensure!(lin == 6, "abelianization of N(Q2)/Q2 has order {lin}");
    ensure!(
        (q3.normalizer.order(), q3.quotient.group.order()) == (36, 9),
        "N(Q3)"
    );
    ensure!(
        q3.quotient.group.is_abelian() && q3.quotient.group.exponent() == 3,
        "N(Q3)/Q3 not elementary abelian"
    );

    let (labels, mat, meta) = common::ex972_assembled_local(&ts, &m);
    let local_vertices: Vec<usize> = ts
        .rows
        .iter()
        .filter(|r| r.vertex != 0)
        .map(|r| r.vertex)
        .collect();
    let mut c2: Vec<Vec<usize>> = labels
        .iter()
        .zip(&local_vertices)
        .filter(|(_, &v)| v == 1)
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
    ensure!(c2 == want, "C2-vertex characters {c2:?}");
    let reference = common::ex972_local_rows();
    let ref_mat: Vec<Vec<CycNum>> = reference.iter().map(|(_, e)| e.clone()).collect();
    let ref_meta: Vec<usize> = (0..15).map(|j| if j < 6 { 1 } else { 2 }).collect();
    let mm = match_matrices(&mat, &meta, &ref_mat, &ref_meta)
        .ok_or("local blocks differ from the reference")?;
    for (i, &k) in mm.rows.iter().enumerate() {
        if labels[i].len() > 1 {
            ensure!(
                labels[i] == reference[k].0,
                "row {i} label {:?} vs {:?}",
                labels[i],
                reference[k].0
            );
        }
    }
    let dt = start.elapsed();
    ensure!(dt < Duration::from_secs(60), "took {dt:?}");
    Ok(format!(
        "order 972 pipeline matches in {:.2}s",
        dt.as_secs_f64()
    ))
}

fn check_7b(input: &DomesticBlockInput, what: &str) -> Result<(), String> {
    let s = ok(brauer_7b_solve(input), what)?;
    ensure!(s.n == [1, 1, 1], "{what}: n = {:?}", s.n);
    ensure!(
        s.signs[s.alpha] == [1, 1, 1],
        "{what}: alpha row not all-positive"
    );
    let mut got = s.signs.to_vec();
    got.sort();
    let mut want = SIGNS.to_vec();
    want.sort();
    ensure!(got == want, "{what}: sign rows {:?}", s.signs);
    Ok(())
}

fn involution_input(
    t: &CharTable,
    chars: [usize; 4],
    cols: &[usize],
    fusion: Fusion,
) -> DomesticBlockInput {
    DomesticBlockInput {
        degrees: chars.map(|i| t.degree(i)),
        involutions: cols
            .iter()
            .map(|&c| InvolutionValues {
                name: t.classes()[c].name.clone(),
                values: chars.map(|i| t.value(i, c).try_i64().expect("rational involution value")),
            })
            .collect(),
        fusion,
        characters: Some(chars.map(|i| i + 1)),
    }
}

fn criterion_5() -> Outcome {
    let v4 = ok(builtin_table("v4"), "v4")?;
    let id = v4.identity_column();
    let cols: Vec<usize> = (0..4).filter(|&c| c != id).collect();
    check_7b(
        &involution_input(&v4, [0, 1, 2, 3], &cols, Fusion::III),
        "V4",
    )?;
    for v in [3usize, 9] {
        let t = ok(dihedral_character_table(v), "table")?;
        let g = t.group();
        let (r, s) = dihedral_rs(g);
        let rv = g.pow(r, v as i64);
        let cols: Vec<usize> = [s, g.mul(s, rv), rv]
            .iter()
            .map(|&x| t.column_of_element(x))
            .collect();
        let b0 = &ok(block_partition(&t), "blocks")?[0];
        ensure!(b0.irr.len() == 4, "D_4v B0 has {} characters", b0.irr.len());
        let chars = [b0.irr[0], b0.irr[1], b0.irr[2], b0.irr[3]];
        check_7b(
            &involution_input(&t, chars, &cols, Fusion::III),
            &format!("D_4v v={v}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7b);
    let mut unique = 0;
    for fusion in [Fusion::I, Fusion::II, Fusion::III] {
        for _ in 0..100 {
            let n = [0; 3].map(|_| rng.gen_range(1..=4));
            let mut rows = SIGNS;
            rows.shuffle(&mut rng);
            let vals = predict_7b(fusion, n, &rows);
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
            match brauer_7b_solve(&input) {
                Ok(s) => {
                    ensure!(
                        predict_7b(fusion, s.n, &s.signs) == vals,
                        "{fusion:?} {n:?}: round trip failed"
                    );
                    unique += 1;
                }
                Err(trivsrc::Error::Ambiguous(_)) => {}
                Err(e) => return Err(format!("{fusion:?} {n:?}: {e}")),
            }
        }
    }
    Ok(format!(
        "V4 and D_4v (v = 3, 9) recover n = (1,1,1); 300 random round trips ({unique} unique)"
    ))
}

fn all_tables() -> Result<Vec<(String, TSCTable)>, String> {
    let mut out = Vec::new();
    for name in ["v4", "a4", "a5"] {
        out.push((
            name.to_string(),
            ok(assemble_tsct(&ok(builtin_table(name), name)?), name)?,
        ));
        out.push((format!("{name} (reference)"), ok(builtin_tsct(name), name)?));
        out.push((
            format!("{name} (Dixon)"),
            ok(assemble_tsct(&dixon(ok(builtin_group(name), name)?)?), name)?,
        ));
    }
    for v in [3, 5, 7, 9] {
        out.push((format!("d4v:{v}"), ok(tsct_d4v(v), "d4v")?));
        out.push((
            format!("d4v:{v} (Dixon)"),
            ok(assemble_tsct(&dixon(ok(dihedral_group(v), "d4v")?)?), "d4v")?,
        ));
    }
    out.push((
        "ex972".into(),
        ok(
            assemble_tsct(&ok(character_table(&ex972_group()), "ex972")?),
            "ex972",
        )?,
    ));
    Ok(out)
}

fn criterion_6() -> Outcome {
    let tables = all_tables()?;
    for (name, ts) in &tables {
        ok(ts.table.check_orthogonality(), name)?;
        ok(ts.table.check_column_orthogonality(), name)?;
        let r = verify_tsct(ts);
        for c in &r.checks {
            ensure!(
                c.passed,
                "{name}: {} failed: {}",
                c.name,
                c.witness.clone().unwrap_or_default()
            );
        }
        for needed in [
            "species",
            "pim_vanishing",
            "zero_pattern",
            "trivial_row",
            "degree_column",
            "gram",
            "lifted_reps",
        ] {
            ensure!(
                r.checks.iter().any(|c| c.name == needed),
                "{name}: check {needed} not run"
            );
        }
    }
    Ok(format!(
        "{} tables pass orthogonality and every table invariant",
        tables.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut tables = Vec::new();
    for name in ["v4", "a4", "a5"] {
        tables.push(ok(builtin_tsct(name), name)?);
    }
    tables.push(ok(tsct_d4v(3), "d4v")?);
    tables.push(ok(tsct_d4v(5), "d4v")?);
    let mut count = 0;
    for t in &tables {
        for i in 0..t.entries.len() {
            for j in 0..t.entries[i].len() {
                let mut bad = t.clone();
                bad.entries[i][j] = bad.entries[i][j].add(&CycNum::one());
                ensure!(
                    !verify_tsct(&bad).all_passed(),
                    "{:?}: +1 at ({i},{j}) undetected",
                    t.table.group().name()
                );
                count += 1;
            }
        }
    }
    Ok(format!("all {count} single-entry perturbations flagged"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("character tables", criterion_1),
        ("base-case trivial source tables", criterion_2),
        ("dihedral family", criterion_3),
        ("order-972 example", criterion_4),
        ("Brauer sign equations", criterion_5),
        ("table invariants", criterion_6),
        ("fault injection", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t0.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {}: PASS  {name} ({dt:.2}s): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({dt:.2}s): {msg}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
