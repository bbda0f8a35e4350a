//! Trivial source character tables at p = 2 for groups whose Sylow
//! 2-subgroup is trivial, of order 2, or a Klein four group.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::blocks::{block_partition, defect1_trivial_source_rows};
use crate::chartab::{
    builtin_elements, builtin_table, character_table, dihedral_character_table, render_grid,
    CharTable, CharTableJson, VirtualCharacter,
};
use crate::domestic::{self, DomesticBlockInput, Fusion, InvolutionValues, VertexKind};
use crate::error::{Error, Result};
use crate::exactnum::{rat, CycAccum, CycNum};
use crate::permgroup::{dihedral_rs, Perm, PermGroup, SubgroupClassInfo};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsRow {
    pub vertex: usize,
    pub character: VirtualCharacter,
    /// Index of the matched local irreducible for maximal-vertex rows.
    pub local: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsColumn {
    pub vertex: usize,
    /// Lifted 2'-element of `N_G(Q_v)`, as an element index of the group.
    pub rep: usize,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct TSCTable {
    pub table: CharTable,
    pub vertices: Vec<SubgroupClassInfo>,
    pub rows: Vec<TsRow>,
    pub columns: Vec<TsColumn>,
    pub entries: Vec<Vec<CycNum>>,
}

fn value_at(t: &CharTable, chi: &VirtualCharacter, col: usize) -> CycNum {
    let mut acc = CycAccum::new(1);
    for (&i, &k) in &chi.coeffs {
        acc.add_scaled(t.value(i, col), &rat(k, 1));
    }
    acc.finish()
}

/// `τ_{Q,s}` of a trivial source module with character `chi`, for `|Q| ≤ 2`:
/// the value of `chi` at `x·s` where `Q = ⟨x⟩`.
pub fn species_value(
    t: &CharTable,
    chi: &VirtualCharacter,
    q: &SubgroupClassInfo,
    s: usize,
) -> Result<CycNum> {
    let g = t.group();
    if q.order() > 2 {
        return Err(Error::Invalid(
            "species formula needs |Q| ≤ 2; use the local table".into(),
        ));
    }
    if !q.normalizer.contains(s) {
        return Err(Error::Invalid(
            "element does not normalize the vertex".into(),
        ));
    }
    if g.element_order(s).is_multiple_of(2) {
        return Err(Error::Invalid("element is not of odd order".into()));
    }
    let x = q
        .subgroup
        .elements()
        .iter()
        .copied()
        .find(|&e| e != g.identity())
        .unwrap_or(g.identity());
    assert_eq!(
        g.mul(x, s),
        g.mul(s, x),
        "odd-order normalizer element centralizes an involution"
    );
    Ok(value_at(t, chi, t.column_of_element(g.mul(x, s))))
}

/// `⟨Res_N χ, Inf λ⟩_N` for `N = N_G(Q)` and `λ` a character of `N/Q`.
fn local_multiplicity(
    t: &CharTable,
    chi: &[CycNum],
    q: &SubgroupClassInfo,
    lt: &CharTable,
    lam: usize,
) -> CycNum {
    let g = t.group();
    let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
    for &n in q.normalizer.elements() {
        let loc = q.local_index(g, n).expect("normalizer element");
        let key = (
            t.column_of_element(n),
            lt.column_of_element(q.quotient.projection[loc]),
        );
        *counts.entry(key).or_insert(0) += 1;
    }
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort_unstable();
    let mut acc = CycAccum::new(1);
    let nn = q.normalizer.order() as i64;
    for ((c, d), k) in keys {
        acc.add_product(&chi[c], &lt.value(lam, d).conj(), &rat(k, nn));
    }
    acc.finish()
}

fn local_values(q: &SubgroupClassInfo, g: &PermGroup, lt: &CharTable, lam: usize) -> Vec<CycNum> {
    q.p_prime_reps
        .iter()
        .map(|&s| {
            let loc = q.local_index(g, s).expect("rep in normalizer");
            lt.value(lam, lt.column_of_element(q.quotient.projection[loc]))
                .clone()
        })
        .collect()
}

/// Lexicographically first injective assignment of candidates.
fn first_matching(cands: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn go(cands: &[Vec<usize>], i: usize, used: &mut Vec<usize>) -> bool {
        if i == cands.len() {
            return true;
        }
        for &c in &cands[i] {
            if !used.contains(&c) {
                used.push(c);
                if go(cands, i + 1, used) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    let mut used = Vec::new();
    go(cands, 0, &mut used).then_some(used)
}

fn subconjugacy(g: &PermGroup, vs: &[SubgroupClassInfo]) -> Vec<Vec<bool>> {
    vs.iter()
        .map(|a| {
            vs.iter()
                .map(|b| g.is_subconjugate(&b.subgroup, &a.subgroup))
                .collect()
        })
        .collect()
}

impl TSCTable {
    pub fn group(&self) -> &PermGroup {
        self.table.group()
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Column indices belonging to vertex `v`.
    pub fn vertex_columns(&self, v: usize) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&j| self.columns[j].vertex == v)
            .collect()
    }

    pub fn vertex_rows(&self, v: usize) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i].vertex == v)
            .collect()
    }

    /// The sub-matrix `T_{i,v}`.
    pub fn block(&self, i: usize, v: usize) -> Vec<Vec<CycNum>> {
        let cols = self.vertex_columns(v);
        self.vertex_rows(i)
            .iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect()
    }

    fn columns_for(t: &CharTable, vertices: &[SubgroupClassInfo]) -> Vec<TsColumn> {
        let mut cols = Vec::new();
        for (v, q) in vertices.iter().enumerate() {
            for &s in &q.p_prime_reps {
                cols.push(TsColumn {
                    vertex: v,
                    rep: s,
                    name: t.classes()[t.column_of_element(s)].name.clone(),
                });
            }
        }
        cols
    }
}

// ---------------------------------------------------------------------------
// assembly

struct RowDraft {
    vertex: usize,
    character: VirtualCharacter,
}

/// Builds the trivial source character table of the table's group from its
/// ordinary character table.
pub fn assemble_tsct(table: &CharTable) -> Result<TSCTable> {
    let g = table.group();
    let vertices = g.two_subgroup_classes()?;
    let r = vertices.len() - 1;
    let sylow_order = vertices[r].order();
    let c2: Vec<usize> = (1..vertices.len())
        .filter(|&v| vertices[v].order() == 2)
        .collect();
    let vertex_of_column = |col: usize| -> Option<usize> {
        c2.iter()
            .copied()
            .find(|&v| table.column_of_element(vertices[v].generators[0]) == col)
    };

    let mut drafts: Vec<RowDraft> = Vec::new();
    for b in block_partition(table)? {
        match b.defect {
            0 => drafts.push(RowDraft {
                vertex: 0,
                character: VirtualCharacter::irr(b.irr[0]),
            }),
            1 => {
                let d = defect1_trivial_source_rows(&b, table)?;
                let v = vertex_of_column(d.involution_class).ok_or_else(|| {
                    Error::Structural("defect group involution has no vertex class".into())
                })?;
                drafts.push(RowDraft {
                    vertex: 0,
                    character: d.pim,
                });
                drafts.push(RowDraft {
                    vertex: v,
                    character: d.simple,
                });
            }
            2 => {
                if sylow_order != 4 || b.irr.len() != 4 {
                    return Err(Error::Structural(format!(
                        "defect-2 block with {} characters",
                        b.irr.len()
                    )));
                }
                let input = domestic_input(table, &vertices, &b.irr)?;
                let order = input_order(&vertices, g);
                let data = domestic::transport(&input)?;
                for row in data.rows {
                    let vertex = match row.vertex {
                        VertexKind::Trivial => 0,
                        VertexKind::Maximal => r,
                        VertexKind::C2 => {
                            let k = row.involution.ok_or_else(|| {
                                Error::Structural("C2 row without a class".into())
                            })?;
                            order[k]
                        }
                    };
                    let pairs: Vec<(usize, i64)> =
                        (0..4).map(|j| (b.irr[j], row.coeffs[j])).collect();
                    drafts.push(RowDraft {
                        vertex,
                        character: VirtualCharacter::from_pairs(&pairs),
                    });
                }
            }
            d => return Err(Error::Unsupported(format!("block of defect {d}"))),
        }
    }
    // group rows by vertex, keeping block order inside each vertex
    drafts.sort_by_key(|d| d.vertex);

    for (v, q) in vertices.iter().enumerate() {
        let n = drafts.iter().filter(|d| d.vertex == v).count();
        if n != q.p_prime_reps.len() {
            return Err(Error::Structural(format!(
                "vertex Q{} has {n} trivial source rows but {} lifted 2'-classes",
                v + 1,
                q.p_prime_reps.len()
            )));
        }
    }

    let columns = TSCTable::columns_for(table, &vertices);
    let sub = subconjugacy(g, &vertices);
    let mut rows: Vec<TsRow> = drafts
        .into_iter()
        .map(|d| TsRow {
            vertex: d.vertex,
            character: d.character,
            local: None,
        })
        .collect();
    let mut entries = vec![vec![CycNum::zero(); columns.len()]; rows.len()];
    for (i, row) in rows.iter().enumerate() {
        for (j, col) in columns.iter().enumerate() {
            let q = &vertices[col.vertex];
            if !sub[row.vertex][col.vertex] || q.order() > 2 {
                continue;
            }
            entries[i][j] = species_value(table, &row.character, q, col.rep)?;
        }
    }

    if sylow_order == 4 {
        let q = &vertices[r];
        let lt = character_table(&q.quotient.group)?;
        let maxrows = (0..rows.len())
            .filter(|&i| rows[i].vertex == r)
            .collect::<Vec<_>>();
        let mut cands = Vec::new();
        for &i in &maxrows {
            let vals = rows[i].character.values(table);
            let c: Vec<usize> = (0..lt.num_classes())
                .filter(|&l| {
                    local_multiplicity(table, &vals, q, &lt, l)
                        .try_i64()
                        .is_some_and(|m| m >= 1)
                })
                .collect();
            if c.is_empty() {
                return Err(Error::Structural(format!(
                    "no local irreducible under the restriction of {}",
                    rows[i].character.label()
                )));
            }
            cands.push(c);
        }
        let m = first_matching(&cands).ok_or_else(|| {
            Error::Structural("maximal-vertex rows cannot be matched to local irreducibles".into())
        })?;
        let cols = (0..columns.len())
            .filter(|&j| columns[j].vertex == r)
            .collect::<Vec<_>>();
        for (&i, &l) in maxrows.iter().zip(&m) {
            rows[i].local = Some(l);
            for (&j, val) in cols.iter().zip(local_values(q, g, &lt, l)) {
                entries[i][j] = val;
            }
        }
    }

    let t = TSCTable {
        table: table.clone(),
        vertices,
        rows,
        columns,
        entries,
    };
    let report = verify_tsct(&t);
    if let Some(f) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Structural(format!(
            "assembled table fails {}: {}",
            f.name,
            f.witness.clone().unwrap_or_default()
        )));
    }
    Ok(t)
}

/// C2 vertices in the order handed to the block analysis (the lone class first in fusion case II).
fn input_order(vertices: &[SubgroupClassInfo], g: &PermGroup) -> Vec<usize> {
    let p = &vertices[vertices.len() - 1].subgroup;
    let mut c2: Vec<(usize, usize)> = (1..vertices.len() - 1)
        .map(|v| {
            let cl = g.class_of(vertices[v].generators[0]);
            let hits = p
                .elements()
                .iter()
                .filter(|&&x| x != g.identity() && g.class_of(x) == cl)
                .count();
            (hits, v)
        })
        .collect();
    c2.sort_unstable();
    c2.into_iter().map(|(_, v)| v).collect()
}

fn domestic_input(
    t: &CharTable,
    vertices: &[SubgroupClassInfo],
    irr: &[usize],
) -> Result<DomesticBlockInput> {
    let g = t.group();
    let order = input_order(vertices, g);
    let mut involutions = Vec::new();
    for &v in &order {
        let col = t.column_of_element(vertices[v].generators[0]);
        let mut values = [0i64; 4];
        for (k, &i) in irr.iter().enumerate() {
            values[k] = t
                .value(i, col)
                .try_i64()
                .ok_or_else(|| Error::Structural("irrational value at an involution".into()))?;
        }
        involutions.push(InvolutionValues {
            name: t.classes()[col].name.clone(),
            values,
        });
    }
    let mut degrees = [0u64; 4];
    for (k, &i) in irr.iter().enumerate() {
        degrees[k] = t.degree(i);
    }
    Ok(DomesticBlockInput {
        degrees,
        fusion: Fusion::from_count(involutions.len())?,
        involutions,
        characters: Some([irr[0] + 1, irr[1] + 1, irr[2] + 1, irr[3] + 1]),
    })
}

// ---------------------------------------------------------------------------
// closed form for D_{4v}

/// `ζ_{2v}^{mj} + ζ_{2v}^{-mj}`.
fn dihedral_cos(v: usize, m: usize, j: usize) -> CycNum {
    let n = 2 * v as u32;
    let e = (m * j) as i64;
    CycNum::root_of_unity(n, e).add(&CycNum::root_of_unity(n, -e))
}

/// Even `m` in the row order of the `⟨r^v⟩` block: 2, v−1, 4, v−3, …
pub fn d4v_q3_order(v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 2;
    while out.len() < (v - 1) / 2 {
        for m in [k, v + 1 - k] {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        k += 2;
    }
    out.truncate((v - 1) / 2);
    out
}

/// `Triv_2(D_{4v})` from closed formulas, vertices `1, ⟨sr^v⟩, ⟨r^v⟩, ⟨s⟩, ⟨s, r^v⟩`.
pub fn tsct_d4v(v: usize) -> Result<TSCTable> {
    if v < 3 || v.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "v must be odd and at least 3, got {v}"
        )));
    }
    let table = dihedral_character_table(v)?;
    let g = table.group();
    let (r, s) = dihedral_rs(g);
    let rv = g.pow(r, v as i64);
    let srv = g.mul(s, rv);
    let h = v.div_ceil(2);
    let evens: Vec<usize> = (0..h).map(|k| g.pow(r, 2 * k as i64)).collect();
    let one = [g.identity()];
    let vertices = vec![
        SubgroupClassInfo::new(g, &[], Some(&evens))?,
        SubgroupClassInfo::new(g, &[srv], Some(&one))?,
        SubgroupClassInfo::new(g, &[rv], Some(&evens))?,
        SubgroupClassInfo::new(g, &[s], Some(&one))?,
        SubgroupClassInfo::new(g, &[s, rv], Some(&one))?,
    ];
    let rname = |k: usize| {
        if k == 0 {
            "1".to_string()
        } else {
            format!("r^{}", 2 * k)
        }
    };
    let mut columns = Vec::new();
    for (vi, q) in vertices.iter().enumerate() {
        for k in 0..q.p_prime_reps.len() {
            columns.push(TsColumn {
                vertex: vi,
                rep: q.p_prime_reps[k],
                name: rname(k),
            });
        }
    }
    let ncol = columns.len();
    let int = CycNum::from_int;
    // column layout: [Q1: h][Q2: 1][Q3: h][Q4: 1][Q5: 1]
    let (q2c, q3s, q4c, q5c) = (h, h + 1, 2 * h + 1, 2 * h + 2);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut push = |vertex: usize, chars: &[usize], vals: Vec<CycNum>, rows: &mut Vec<TsRow>| {
        rows.push(TsRow {
            vertex,
            character: VirtualCharacter::sum_of(chars),
            local: None,
        });
        entries.push(vals);
    };
    let zero_row = || vec![CycNum::zero(); ncol];

    let mut e = zero_row();
    (0..h).for_each(|k| e[k] = int(4));
    push(0, &[0, 1, 2, 3], e, &mut rows);
    for m in 1..h {
        let mut e = zero_row();
        for k in 0..h {
            e[k] = dihedral_cos(v, m, 2 * k).scale(&rat(2, 1));
        }
        push(0, &[3 + m, 3 + v - m], e, &mut rows);
    }
    let mut e = zero_row();
    (0..h).for_each(|k| e[k] = int(2));
    e[q2c] = int(2);
    push(1, &[0, 3], e, &mut rows);
    let mut e = zero_row();
    for k in 0..h {
        e[k] = int(2);
        e[q3s + k] = int(2);
    }
    push(2, &[0, 2], e, &mut rows);
    for m in d4v_q3_order(v) {
        let mut e = zero_row();
        for k in 0..h {
            e[k] = dihedral_cos(v, m, 2 * k);
            e[q3s + k] = dihedral_cos(v, m, 2 * k);
        }
        push(2, &[3 + m], e, &mut rows);
    }
    let mut e = zero_row();
    (0..h).for_each(|k| e[k] = int(2));
    e[q4c] = int(2);
    push(3, &[0, 1], e, &mut rows);
    push(4, &[0], vec![CycNum::one(); ncol], &mut rows);
    let _ = q5c;
    if let Some(last) = rows.last_mut() {
        last.local = Some(0);
    }
    Ok(TSCTable {
        table,
        vertices,
        rows,
        columns,
        entries,
    })
}

/// The two block identities `T_{3,3} = T_{3,1}` and `2·T_{3,1} = T_{1,1}`
/// (the latter up to a row permutation) of a `Triv_2(D_{4v})` table whose
/// vertex 3 is `⟨r^v⟩`.
pub fn d4v_identities(t: &TSCTable) -> (bool, bool) {
    let t31 = t.block(2, 0);
    let t33 = t.block(2, 2);
    let t11 = t.block(0, 0);
    let mut doubled: Vec<Vec<CycNum>> = t31
        .iter()
        .map(|r| r.iter().map(|x| x.scale(&rat(2, 1))).collect())
        .collect();
    let mut t11s = t11.clone();
    doubled.sort();
    t11s.sort();
    (t33 == t31, doubled == t11s)
}

// ---------------------------------------------------------------------------
// builtin tables in the classical layout

/// `v4`, `a4`, `a5` with the rows, columns and entries of the classical tables.
pub fn builtin_tsct(name: &str) -> Result<TSCTable> {
    let table = builtin_table(name)?;
    let g = table.group();
    let els = builtin_elements(name)?;
    let el = |n: &str| -> usize {
        g.index_of(&els.iter().find(|(k, _)| *k == n).expect("named element").1)
            .unwrap()
    };
    let i = CycNum::from_int;
    let w = CycNum::root_of_unity(3, 1);
    let w2 = CycNum::root_of_unity(3, 2);
    let eta = |k| CycNum::root_of_unity(5, k);
    let ints = |v: &[i64]| v.iter().map(|&x| i(x)).collect::<Vec<_>>();
    // (vertex generators, column reps by name)
    let (vspec, rowspec): (
        Vec<(Vec<&str>, Vec<&str>)>,
        Vec<(usize, Vec<usize>, Option<usize>, Vec<CycNum>)>,
    ) = match name {
        "v4" => (
            vec![
                (vec![], vec!["1"]),
                (vec!["a"], vec!["1"]),
                (vec!["b"], vec!["1"]),
                (vec!["ab"], vec!["1"]),
                (vec!["a", "b"], vec!["1"]),
            ],
            vec![
                (0, vec![1, 2, 3, 4], None, ints(&[4, 0, 0, 0, 0])),
                (1, vec![1, 2], None, ints(&[2, 2, 0, 0, 0])),
                (2, vec![1, 3], None, ints(&[2, 0, 2, 0, 0])),
                (3, vec![1, 4], None, ints(&[2, 0, 0, 2, 0])),
                (4, vec![1], Some(0), ints(&[1, 1, 1, 1, 1])),
            ],
        ),
        "a4" => {
            let z = || i(0);
            let o = || i(1);
            (
                vec![
                    (vec![], vec!["1", "c", "bc²"]),
                    (vec!["a"], vec!["1"]),
                    (vec!["a", "b"], vec!["1", "c", "bc²"]),
                ],
                vec![
                    (0, vec![1, 4], None, ints(&[4, 1, 1, 0, 0, 0, 0])),
                    (
                        0,
                        vec![2, 4],
                        None,
                        vec![i(4), w.clone(), w2.clone(), z(), z(), z(), z()],
                    ),
                    (
                        0,
                        vec![3, 4],
                        None,
                        vec![i(4), w2.clone(), w.clone(), z(), z(), z(), z()],
                    ),
                    (1, vec![1, 2, 3, 4], None, ints(&[6, 0, 0, 2, 0, 0, 0])),
                    (2, vec![1], Some(0), ints(&[1; 7])),
                    (
                        2,
                        vec![2],
                        Some(1),
                        vec![o(), w.clone(), w2.clone(), o(), o(), w.clone(), w2.clone()],
                    ),
                    (
                        2,
                        vec![3],
                        Some(2),
                        vec![o(), w2.clone(), w.clone(), o(), o(), w2.clone(), w.clone()],
                    ),
                ],
            )
        }
        "a5" => {
            let z = || i(0);
            let o = || i(1);
            let a = eta(1).add(&eta(4)).neg();
            let sa = eta(2).add(&eta(3)).neg();
            (
                vec![
                    (vec![], vec!["1", "d", "ad", "(ad)²"]),
                    (vec!["a"], vec!["1"]),
                    (vec!["a", "b"], vec!["1", "c", "c²"]),
                ],
                vec![
                    (0, vec![1, 2, 3, 5], None, ints(&[12, 0, 2, 2, 0, 0, 0, 0])),
                    (
                        0,
                        vec![3, 5],
                        None,
                        vec![i(8), i(-1), sa.clone(), a.clone(), z(), z(), z(), z()],
                    ),
                    (
                        0,
                        vec![2, 5],
                        None,
                        vec![i(8), i(-1), a.clone(), sa.clone(), z(), z(), z(), z()],
                    ),
                    (0, vec![4], None, ints(&[4, 1, -1, -1, 0, 0, 0, 0])),
                    (1, vec![1, 5], None, ints(&[6, 0, 1, 1, 2, 0, 0, 0])),
                    (2, vec![1], Some(0), ints(&[1; 8])),
                    (
                        2,
                        vec![5],
                        Some(1),
                        vec![i(5), i(-1), z(), z(), o(), o(), w.clone(), w2.clone()],
                    ),
                    (
                        2,
                        vec![5],
                        Some(2),
                        vec![i(5), i(-1), z(), z(), o(), o(), w2.clone(), w.clone()],
                    ),
                ],
            )
        }
        _ => {
            return Err(Error::Invalid(format!(
                "no builtin trivial source table named {name}"
            )))
        }
    };
    let mut vertices = Vec::new();
    let mut columns = Vec::new();
    for (v, (gens, reps)) in vspec.iter().enumerate() {
        let gi: Vec<usize> = gens.iter().map(|n| el(n)).collect();
        let ri: Vec<usize> = reps.iter().map(|n| el(n)).collect();
        vertices.push(SubgroupClassInfo::new(g, &gi, Some(&ri))?);
        for (k, &s) in ri.iter().enumerate() {
            columns.push(TsColumn {
                vertex: v,
                rep: s,
                name: reps[k].to_string(),
            });
        }
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (v, chars, local, vals) in rowspec {
        let idx: Vec<usize> = chars.iter().map(|c| c - 1).collect();
        rows.push(TsRow {
            vertex: v,
            character: VirtualCharacter::sum_of(&idx),
            local,
        });
        entries.push(vals);
    }
    Ok(TSCTable {
        table,
        vertices,
        rows,
        columns,
        entries,
    })
}

// ---------------------------------------------------------------------------
// verification

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<22} {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  ({w})"));
            }
            out.push('\n');
        }
        out
    }
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> std::result::Result<(), String>) {
        let r = f();
        self.checks.push(Check {
            name,
            passed: r.is_ok(),
            witness: r.err(),
        });
    }
}

fn cell(t: &TSCTable, i: usize, j: usize) -> String {
    format!(
        "row {} ({}), column {} (Q{} {})",
        i + 1,
        t.rows[i].character.label(),
        j + 1,
        t.columns[j].vertex + 1,
        t.columns[j].name
    )
}

/// Checks the structural invariants of a trivial source character table.
pub fn verify_tsct(t: &TSCTable) -> VerifyReport {
    let mut ck = Checker { checks: Vec::new() };
    let g = t.group();
    let tab = &t.table;
    let nv = t.vertices.len();

    ck.run("square", || {
        let n = t.rows.len();
        if t.columns.len() != n || t.entries.len() != n || t.entries.iter().any(|r| r.len() != n) {
            return Err(format!("{} rows, {} columns", n, t.columns.len()));
        }
        Ok(())
    });
    if !ck.checks[0].passed {
        return VerifyReport { checks: ck.checks };
    }
    let n = t.rows.len();

    ck.run("lifted_reps", || {
        for (v, q) in t.vertices.iter().enumerate() {
            let cols = t.vertex_columns(v);
            if cols.len() != q.p_prime_reps.len() {
                return Err(format!(
                    "Q{} has {} columns for {} 2'-classes",
                    v + 1,
                    cols.len(),
                    q.p_prime_reps.len()
                ));
            }
            let mut seen = Vec::new();
            for &j in &cols {
                let s = t.columns[j].rep;
                if !q.normalizer.contains(s) || g.element_order(s).is_multiple_of(2) {
                    return Err(format!(
                        "column {} is not an odd-order element of N(Q{})",
                        j + 1,
                        v + 1
                    ));
                }
                let cl = q.normalizer_group.class_of(q.local_index(g, s).unwrap());
                if seen.contains(&cl) {
                    return Err(format!("column {} repeats an N(Q{})-class", j + 1, v + 1));
                }
                seen.push(cl);
            }
        }
        Ok(())
    });

    ck.run("rows_per_vertex", || {
        for (v, q) in t.vertices.iter().enumerate() {
            let k = t.vertex_rows(v).len();
            if k != q.p_prime_reps.len() {
                return Err(format!(
                    "Q{} has {k} rows, expected {}",
                    v + 1,
                    q.p_prime_reps.len()
                ));
            }
        }
        if t.rows.iter().any(|r| r.vertex >= nv) {
            return Err("row with unknown vertex".into());
        }
        Ok(())
    });

    let sub = subconjugacy(g, &t.vertices);
    ck.run("zero_pattern", || {
        for i in 0..n {
            for j in 0..n {
                if !sub[t.rows[i].vertex][t.columns[j].vertex] && !t.entries[i][j].is_zero() {
                    return Err(cell(t, i, j));
                }
            }
        }
        Ok(())
    });

    ck.run("trivial_row", || {
        let triv = tab.trivial_row().ok_or("table has no trivial character")?;
        let want = VirtualCharacter::irr(triv);
        let i = t
            .rows
            .iter()
            .position(|r| r.character == want)
            .ok_or("no row for the trivial character")?;
        if t.rows[i].vertex != nv - 1 {
            return Err("trivial module not on the Sylow vertex".into());
        }
        match t.entries[i].iter().position(|x| !x.is_one()) {
            Some(j) => Err(cell(t, i, j)),
            None => Ok(()),
        }
    });

    ck.run("degree_column", || {
        let j = (0..n)
            .find(|&j| t.columns[j].vertex == 0 && t.columns[j].rep == g.identity())
            .ok_or("no column (Q1, 1)")?;
        for i in 0..n {
            if t.entries[i][j] != CycNum::from_int(t.rows[i].character.degree(tab)) {
                return Err(cell(t, i, j));
            }
        }
        Ok(())
    });

    ck.run("brauer_quotient_dims", || {
        for j in (0..n).filter(|&j| t.columns[j].rep == g.identity()) {
            for i in 0..n {
                if !t.entries[i][j].try_i64().is_some_and(|x| x >= 0) {
                    return Err(cell(t, i, j));
                }
            }
        }
        Ok(())
    });

    ck.run("diagonal_positive", || {
        for j in (0..n).filter(|&j| t.columns[j].rep == g.identity()) {
            for i in t.vertex_rows(t.columns[j].vertex) {
                if !t.entries[i][j].try_i64().is_some_and(|x| x > 0) {
                    return Err(cell(t, i, j));
                }
            }
        }
        Ok(())
    });

    ck.run("pim_vanishing", || {
        for i in t.vertex_rows(0) {
            let vals = t.rows[i].character.values(tab);
            for c in 0..tab.num_classes() {
                if tab.classes()[c].elt_order.is_multiple_of(2) && !vals[c].is_zero() {
                    return Err(format!(
                        "{} at {}",
                        t.rows[i].character.label(),
                        tab.classes()[c].name
                    ));
                }
            }
        }
        Ok(())
    });

    ck.run("gram", || {
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (&t.rows[a].character, &t.rows[b].character);
                let ab: i64 = x
                    .coeffs
                    .iter()
                    .map(|(i, c)| c * y.coeffs.get(i).unwrap_or(&0))
                    .sum();
                let ba: i64 = y
                    .coeffs
                    .iter()
                    .map(|(i, c)| c * x.coeffs.get(i).unwrap_or(&0))
                    .sum();
                if ab < 0 || ab != ba {
                    return Err(format!("⟨{}, {}⟩ = {ab}", x.label(), y.label()));
                }
            }
            if t.rows[a].character.coeffs.values().any(|&c| c < 0) || t.rows[a].character.is_zero()
            {
                return Err(format!("row {} is not a character", a + 1));
            }
        }
        Ok(())
    });

    ck.run("species", || {
        for j in 0..n {
            let q = &t.vertices[t.columns[j].vertex];
            if q.order() > 2 {
                continue;
            }
            for i in 0..n {
                let want = species_value(tab, &t.rows[i].character, q, t.columns[j].rep)
                    .map_err(|e| e.to_string())?;
                if t.entries[i][j] != want {
                    return Err(format!(
                        "{}: {} ≠ {}",
                        cell(t, i, j),
                        t.entries[i][j].pretty(),
                        want.pretty()
                    ));
                }
            }
        }
        Ok(())
    });

    ck.run("local_table", || {
        let r = nv - 1;
        let q = &t.vertices[r];
        if q.order() <= 2 {
            return Ok(());
        }
        let lt = character_table(&q.quotient.group).map_err(|e| e.to_string())?;
        let cols = t.vertex_columns(r);
        let locals: Vec<Vec<CycNum>> = (0..lt.num_classes())
            .map(|l| local_values(q, g, &lt, l))
            .collect();
        let mut used = Vec::new();
        for i in t.vertex_rows(r) {
            let got: Vec<CycNum> = cols.iter().map(|&j| t.entries[i][j].clone()).collect();
            let vals = t.rows[i].character.values(tab);
            let l = (0..lt.num_classes())
                .find(|&l| {
                    locals[l] == got
                        && !used.contains(&l)
                        && local_multiplicity(tab, &vals, q, &lt, l)
                            .try_i64()
                            .is_some_and(|m| m >= 1)
                })
                .ok_or_else(|| {
                    format!(
                        "row {} ({}) matches no unused local irreducible",
                        i + 1,
                        t.rows[i].character.label()
                    )
                })?;
            used.push(l);
        }
        Ok(())
    });

    VerifyReport { checks: ck.checks }
}

// ---------------------------------------------------------------------------
// comparison

/// Row and column correspondence between two tables of the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsctMatch {
    pub vertices: Vec<usize>,
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
}

/// Checks that two tables over the same group and the same ordinary table
/// agree up to reordering of vertices, rows and columns; species pairs are
/// matched by conjugacy.
pub fn compare_tsct(a: &TSCTable, b: &TSCTable) -> std::result::Result<TsctMatch, String> {
    let (ga, gb) = (a.group(), b.group());
    if ga.order() != gb.order() || a.table.irr() != b.table.irr() {
        return Err("different groups or ordinary tables".into());
    }
    for (ca, cb) in a.table.classes().iter().zip(b.table.classes()) {
        if ga.element(ca.rep) != gb.element(cb.rep)
            && gb.class_of(gb.index_of(ga.element(ca.rep)).unwrap_or(0)) != gb.class_of(cb.rep)
        {
            return Err("ordinary tables use different column classes".into());
        }
    }
    if a.size() != b.size() || a.vertices.len() != b.vertices.len() {
        return Err(format!("sizes {} and {}", a.size(), b.size()));
    }
    let map = |x: usize| {
        gb.index_of(ga.element(x))
            .ok_or("element outside the other group".to_string())
    };
    let mut vmap = Vec::new();
    let mut conj = Vec::new();
    for (v, qa) in a.vertices.iter().enumerate() {
        let els = qa
            .subgroup
            .elements()
            .iter()
            .map(|&x| map(x))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let s = gb.subgroup_from_elements(&els).map_err(|e| e.to_string())?;
        let (w, c) = b
            .vertices
            .iter()
            .enumerate()
            .find_map(|(w, qb)| gb.subgroup_conjugator(&s, &qb.subgroup).map(|c| (w, c)))
            .ok_or(format!("vertex Q{} has no counterpart", v + 1))?;
        vmap.push(w);
        conj.push(c);
    }
    let mut cmap = Vec::new();
    for (j, col) in a.columns.iter().enumerate() {
        let w = vmap[col.vertex];
        let qb = &b.vertices[w];
        let s = gb.conj(map(col.rep)?, conj[col.vertex]);
        let ls = qb
            .local_index(gb, s)
            .ok_or("conjugated rep leaves the normalizer")?;
        let cl = qb.normalizer_group.class_of(ls);
        let k = (0..b.columns.len())
            .find(|&k| {
                b.columns[k].vertex == w
                    && qb
                        .normalizer_group
                        .class_of(qb.local_index(gb, b.columns[k].rep).unwrap())
                        == cl
            })
            .ok_or(format!("column {} has no counterpart", j + 1))?;
        cmap.push(k);
    }
    let mut used = vec![false; b.size()];
    let mut rmap = Vec::new();
    for (i, ra) in a.rows.iter().enumerate() {
        let k = (0..b.size())
            .find(|&k| {
                !used[k]
                    && b.rows[k].vertex == vmap[ra.vertex]
                    && b.rows[k].character == ra.character
                    && (0..a.size()).all(|j| a.entries[i][j] == b.entries[k][cmap[j]])
            })
            .ok_or(format!(
                "row {} ({}) has no counterpart",
                i + 1,
                ra.character.label()
            ))?;
        used[k] = true;
        rmap.push(k);
    }
    Ok(TsctMatch {
        vertices: vmap,
        rows: rmap,
        columns: cmap,
    })
}

// ---------------------------------------------------------------------------
// serialization and rendering

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub order: usize,
    pub normalizer_order: usize,
    pub generators: Vec<Vec<usize>>,
    pub p_prime_reps: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowJson {
    /// 1-based vertex index.
    pub vertex: usize,
    pub char: BTreeMap<String, i64>,
    /// 1-based local label.
    pub local: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TsctJson {
    pub table: CharTableJson,
    pub vertices: Vec<VertexJson>,
    pub rows: Vec<RowJson>,
    pub entries: Vec<Vec<CycNum>>,
}

impl TSCTable {
    pub fn to_json(&self) -> TsctJson {
        let g = self.group();
        let perm = |x: usize| g.element(x).one_based();
        TsctJson {
            table: self.table.to_json(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(v, q)| VertexJson {
                    order: q.order(),
                    normalizer_order: q.normalizer.order(),
                    generators: q.generators.iter().map(|&x| perm(x)).collect(),
                    p_prime_reps: q.p_prime_reps.iter().map(|&x| perm(x)).collect(),
                    column_names: Some(
                        self.vertex_columns(v)
                            .iter()
                            .map(|&j| self.columns[j].name.clone())
                            .collect(),
                    ),
                })
                .collect(),
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    vertex: r.vertex + 1,
                    char: r.character.to_json(),
                    local: r.local.map(|l| l + 1),
                })
                .collect(),
            entries: self.entries.clone(),
        }
    }

    pub fn from_json(j: &TsctJson) -> Result<TSCTable> {
        let table = CharTable::from_json(&j.table)?;
        let g = table.group();
        let elt = |p: &[usize]| -> Result<usize> {
            let perm = Perm::from_one_based(p)?;
            g.index_of(&perm)
                .ok_or_else(|| Error::Invalid(format!("{perm} is not in the group")))
        };
        let mut vertices = Vec::new();
        let mut columns = Vec::new();
        for (v, vj) in j.vertices.iter().enumerate() {
            let gens = vj
                .generators
                .iter()
                .map(|p| elt(p))
                .collect::<Result<Vec<_>>>()?;
            let reps = vj
                .p_prime_reps
                .iter()
                .map(|p| elt(p))
                .collect::<Result<Vec<_>>>()?;
            let q = SubgroupClassInfo::new(g, &gens, Some(&reps))?;
            if q.order() != vj.order || q.normalizer.order() != vj.normalizer_order {
                return Err(Error::Invalid(format!(
                    "vertex Q{} disagrees with its declared orders",
                    v + 1
                )));
            }
            for (k, &s) in reps.iter().enumerate() {
                let name = match &vj.column_names {
                    Some(n) => n
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::Parse("too few column names".into()))?,
                    None => table.classes()[table.column_of_element(s)].name.clone(),
                };
                columns.push(TsColumn {
                    vertex: v,
                    rep: s,
                    name,
                });
            }
            vertices.push(q);
        }
        let mut rows = Vec::new();
        for r in &j.rows {
            if r.vertex == 0 || r.vertex > vertices.len() || r.local == Some(0) {
                return Err(Error::Parse(
                    "row vertex and local labels are 1-based".into(),
                ));
            }
            rows.push(TsRow {
                vertex: r.vertex - 1,
                character: VirtualCharacter::from_json(&r.char)?,
                local: r.local.map(|l| l - 1),
            });
        }
        Ok(TSCTable {
            table,
            vertices,
            rows,
            columns,
            entries: j.entries.clone(),
        })
    }

    /// Block layout: vertex groups of columns separated by `|`, row groups by rules.
    pub fn render_text(&self) -> String {
        let nv = self.vertices.len();
        let groups: Vec<Vec<usize>> = (0..nv).map(|v| self.vertex_columns(v)).collect();
        let header = |first: &str, f: &dyn Fn(usize) -> String| -> Vec<String> {
            let mut out = vec![first.to_string()];
            for (v, cols) in groups.iter().enumerate() {
                out.push("|".into());
                out.extend((0..cols.len()).map(|k| if k == 0 { f(v) } else { String::new() }));
            }
            out
        };
        let mut cells = vec![
            header("Q_v", &|v| {
                format!("Q{} (|Q|={})", v + 1, self.vertices[v].order())
            }),
            header("|N_v|", &|v| {
                self.vertices[v].normalizer.order().to_string()
            }),
        ];
        let mut names = vec!["n_j".to_string()];
        for cols in &groups {
            names.push("|".into());
            names.extend(cols.iter().map(|&j| self.columns[j].name.clone()));
        }
        cells.push(names);
        let mut rules = vec![3];
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].vertex);
        let mut prev = None;
        for &i in &order {
            if prev.is_some() && prev != Some(self.rows[i].vertex) {
                rules.push(cells.len());
            }
            prev = Some(self.rows[i].vertex);
            let mut row = vec![self.rows[i].character.label()];
            for cols in &groups {
                row.push("|".into());
                row.extend(cols.iter().map(|&j| self.entries[i][j].pretty()));
            }
            cells.push(row);
        }
        render_grid(&cells, &rules)
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("char,vertex");
        for c in &self.columns {
            out.push_str(&format!(",Q{}:{}", c.vertex + 1, c.name));
        }
        out.push('\n');
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!("{},Q{}", r.character.label(), r.vertex + 1));
            for x in &self.entries[i] {
                out.push(',');
                out.push_str(&x.canonical_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Convenience: assemble from the group via its Dixon table.
pub fn assemble_from_group(g: &PermGroup) -> Result<TSCTable> {
    let t = crate::chartab::dixon_character_table(Arc::new(g.clone()))?;
    assemble_tsct(&t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_verify() {
        for name in ["v4", "a4", "a5"] {
            let t = builtin_tsct(name).unwrap();
            let r = verify_tsct(&t);
            assert!(r.all_passed(), "{name}\n{}", r.render());
        }
    }

    #[test]
    fn assembled_matches_builtin() {
        for name in ["v4", "a4", "a5"] {
            let b = builtin_tsct(name).unwrap();
            let a = assemble_tsct(&b.table).unwrap();
            compare_tsct(&a, &b).unwrap_or_else(|e| panic!("{name}: {e}\n{}", a.render_text()));
        }
    }

    #[test]
    fn d4v_closed_form() {
        for v in [3, 5, 7, 9] {
            let t = tsct_d4v(v).unwrap();
            let r = verify_tsct(&t);
            assert!(r.all_passed(), "v={v}\n{}", r.render());
            assert_eq!(d4v_identities(&t), (true, true));
            let a = assemble_tsct(&t.table).unwrap();
            compare_tsct(&a, &t).unwrap_or_else(|e| panic!("v={v}: {e}"));
        }
        assert_eq!(d4v_q3_order(9), vec![2, 8, 4, 6]);
        assert_eq!(d4v_q3_order(7), vec![2, 6, 4]);
    }

    #[test]
    fn species_examples() {
        let t = tsct_d4v(5).unwrap();
        let q4 = &t.vertices[3];
        let v = species_value(&t.table, &VirtualCharacter::sum_of(&[0, 1]), q4, 0).unwrap();
        assert_eq!(v, CycNum::from_int(2));
        let a4 = builtin_tsct("a4").unwrap();
        let v = species_value(
            &a4.table,
            &VirtualCharacter::sum_of(&[0, 1, 2, 3]),
            &a4.vertices[1],
            0,
        )
        .unwrap();
        assert_eq!(v, CycNum::from_int(2));
    }

    #[test]
    fn json_roundtrip() {
        let t = builtin_tsct("a5").unwrap();
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back = TSCTable::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back.render_text(), t.render_text());
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), s);
    }
}
