//! Shared fixtures: the order-972 reference data transcribed as integer pairs.
#![allow(dead_code)]

use trivsrc::chartab::{match_matrices, CharTable, TableMatch};
use trivsrc::exactnum::CycNum;
use trivsrc::tsct::TSCTable;

fn pair(tok: &str) -> CycNum {
    let (a, b) = tok.split_once(',').expect("a,b token");
    let w = CycNum::root_of_unity(3, 1);
    CycNum::from_int(a.parse().unwrap()).add(&w.mul(&CycNum::from_int(b.parse().unwrap())))
}

/// Reference ordinary table of the order-972 group: column names and rows.
pub fn ex972_reference() -> (Vec<String>, Vec<Vec<CycNum>>) {
    let txt = include_str!("../data/ex972_chartab.txt");
    let mut names = Vec::new();
    let mut rows = Vec::new();
    for l in txt.lines() {
        if let Some(r) = l.strip_prefix("# classes:") {
            names = r.split_whitespace().map(String::from).collect();
        } else if !l.starts_with('#') && !l.trim().is_empty() {
            rows.push(l.split_whitespace().map(pair).collect());
        }
    }
    (names, rows)
}

/// Matches a computed table onto the reference; `rows[i]` is the 0-based
/// reference index of computed row `i`.
pub fn ex972_match(t: &CharTable) -> TableMatch {
    let (names, rows) = ex972_reference();
    let orders: Vec<u32> = names
        .iter()
        .map(|n| n.trim_end_matches(char::is_alphabetic).parse().unwrap())
        .collect();
    let mine: Vec<u32> = t.classes().iter().map(|c| c.elt_order).collect();
    match_matrices(t.irr(), &mine, &rows, &orders).expect("computed table matches the reference")
}

/// Reference rows of the C2- and V4-vertex blocks: 1-based labels and 15 entries.
pub fn ex972_local_rows() -> Vec<(Vec<usize>, Vec<CycNum>)> {
    include_str!("../data/ex972_tsct_t2_t3.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let label = it
                .next()
                .unwrap()
                .split('+')
                .map(|x| x.parse().unwrap())
                .collect();
            (label, it.map(pair).collect())
        })
        .collect()
}

/// Rows of vertices 2 and 3 restricted to their own columns, with labels
/// translated to reference indices (1-based, sorted).
pub fn ex972_assembled_local(
    ts: &TSCTable,
    m: &TableMatch,
) -> (Vec<Vec<usize>>, Vec<Vec<CycNum>>, Vec<usize>) {
    let cols: Vec<usize> = (0..ts.columns.len())
        .filter(|&j| ts.columns[j].vertex >= 1)
        .collect();
    let mut labels = Vec::new();
    let mut mat = Vec::new();
    for (i, r) in ts.rows.iter().enumerate() {
        if r.vertex == 0 {
            continue;
        }
        let mut l: Vec<usize> = r
            .character
            .constituents()
            .iter()
            .map(|&k| m.rows[k] + 1)
            .collect();
        l.sort_unstable();
        labels.push(l);
        mat.push(cols.iter().map(|&j| ts.entries[i][j].clone()).collect());
    }
    let meta = cols.iter().map(|&j| ts.columns[j].vertex).collect();
    (labels, mat, meta)
}
