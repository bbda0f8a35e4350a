//! Klein-four defect blocks: from the four ordinary characters alone, decide the
//! Morita class (kV4, kA4 or B0(kA5)) and write down the characters of all
//! trivial source modules of the block.
//!
//! Characters are addressed by their position 0..4 in the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Brauer's sign matrix; row 0 is the all-positive row.
pub const SIGNS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoritaClass {
    #[serde(rename = "kV4")]
    KV4,
    #[serde(rename = "kA4")]
    KA4,
    #[serde(rename = "B0(kA5)")]
    KA5,
}

impl std::fmt::Display for MoritaClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MoritaClass::KV4 => "kV4",
            MoritaClass::KA4 => "kA4",
            MoritaClass::KA5 => "B0(kA5)",
        })
    }
}

/// How the three involutions of the defect group fuse in the ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fusion {
    /// All three conjugate.
    I,
    /// One class on its own (listed first), the other two fused.
    II,
    /// Three distinct classes.
    III,
}

impl Fusion {
    pub fn classes(self) -> usize {
        match self {
            Fusion::I => 1,
            Fusion::II => 2,
            Fusion::III => 3,
        }
    }

    pub fn from_count(n: usize) -> Result<Fusion> {
        match n {
            1 => Ok(Fusion::I),
            2 => Ok(Fusion::II),
            3 => Ok(Fusion::III),
            _ => Err(Error::Invalid(format!(
                "{n} involution classes in a Klein four group"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionValues {
    #[serde(rename = "class")]
    pub name: String,
    pub values: [i64; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomesticBlockInput {
    pub degrees: [u64; 4],
    #[serde(default)]
    pub involutions: Vec<InvolutionValues>,
    pub fusion: Fusion,
    /// Optional 1-based table indices of the four characters, used for labels only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<[usize; 4]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Trivial,
    C2,
    Maximal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRow {
    pub vertex: VertexKind,
    /// Coefficients on the four input characters.
    pub coeffs: [i64; 4],
    /// Index of the local module within this vertex kind.
    pub local_label: Option<usize>,
    /// For C2 rows: index into the input involution list of the attached class.
    pub involution: Option<usize>,
}

impl BlockRow {
    pub fn label(&self, chars: Option<[usize; 4]>) -> String {
        let names = chars.unwrap_or([1, 2, 3, 4]);
        let mut s = String::new();
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by_key(|&i| names[i]);
        for i in order {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("χ{}", names[i]));
        }
        s
    }

    /// Value at an involution class.
    pub fn value_at(&self, inv: &InvolutionValues) -> i64 {
        (0..4).map(|i| self.coeffs[i] * inv.values[i]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialSourceBlockData {
    pub morita_class: MoritaClass,
    pub rows: Vec<BlockRow>,
    /// Notes such as two C2 rows sharing one fused involution class.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

// ---------------------------------------------------------------------------

/// Degree pattern of a Klein-four defect block.
pub fn classify_morita_class(degrees: &[u64; 4]) -> Result<MoritaClass> {
    let mut d = *degrees;
    d.sort_unstable();
    let [a, b, c, e] = d;
    if a == 0 {
        return Err(Error::Classification("zero degree".into()));
    }
    if a == e {
        Ok(MoritaClass::KV4)
    } else if e == a + b + c {
        Ok(MoritaClass::KA4)
    } else if b > a && e + a == b + c {
        Ok(MoritaClass::KA5)
    } else {
        Err(Error::Classification(format!(
            "degrees {degrees:?} fit none of kV4, kA4, B0(kA5)"
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution7B {
    pub n: [i64; 3],
    /// Sign row of each input character (a row of [`SIGNS`]).
    pub signs: [[i64; 3]; 4],
    pub alpha: usize,
}

fn perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Predicted involution values for a candidate solution.
pub fn predict_7b(fusion: Fusion, n: [i64; 3], signs: &[[i64; 3]; 4]) -> Vec<[i64; 4]> {
    let col = |f: &dyn Fn(&[i64; 3]) -> i64| -> [i64; 4] {
        [f(&signs[0]), f(&signs[1]), f(&signs[2]), f(&signs[3])]
    };
    match fusion {
        Fusion::I => vec![col(&|e| e[0] * n[0] + e[1] * n[1] + e[2] * n[2])],
        Fusion::II => vec![col(&|e| e[0] * n[0]), col(&|e| e[1] * n[1] + e[2] * n[2])],
        Fusion::III => vec![
            col(&|e| e[0] * n[0]),
            col(&|e| e[1] * n[1]),
            col(&|e| e[2] * n[2]),
        ],
    }
}

/// Brauer's Proposition 7B: recover `n_1, n_2, n_3 > 0` and the sign pattern
/// from the involution values of a kV4-class block.
pub fn brauer_7b_solve(input: &DomesticBlockInput) -> Result<Solution7B> {
    let f = input.fusion;
    if input.involutions.len() != f.classes() {
        return Err(Error::Invalid(format!(
            "fusion case {f:?} needs {} involution classes, got {}",
            f.classes(),
            input.involutions.len()
        )));
    }
    let vals: Vec<[i64; 4]> = input.involutions.iter().map(|x| x.values).collect();
    let mut found: Vec<(Vec<i64>, Solution7B)> = Vec::new();
    for p in perms4() {
        // character i carries sign row p[i]
        let signs = [SIGNS[p[0]], SIGNS[p[1]], SIGNS[p[2]], SIGNS[p[3]]];
        let row_of = |r: usize| p.iter().position(|&x| x == r).unwrap();
        let cand: Option<[i64; 3]> = match f {
            Fusion::I => {
                let v = |r: usize| vals[0][row_of(r)];
                let two = [v(0) + v(1), v(0) + v(2), v(0) + v(3)];
                if two.iter().all(|x| x % 2 == 0) {
                    Some([two[0] / 2, two[1] / 2, two[2] / 2])
                } else {
                    None
                }
            }
            Fusion::II => {
                let n1 = vals[0][row_of(0)];
                let (s, t) = (vals[1][row_of(0)], vals[1][row_of(2)]);
                if (s + t) % 2 == 0 {
                    Some([n1, (s + t) / 2, (s - t) / 2])
                } else {
                    None
                }
            }
            Fusion::III => Some([vals[0][row_of(0)], vals[1][row_of(0)], vals[2][row_of(0)]]),
        };
        let Some(n) = cand else { continue };
        if n.iter().any(|&x| x <= 0) || predict_7b(f, n, &signs) != vals {
            continue;
        }
        let alpha = row_of(0);
        let key = match f {
            Fusion::I => {
                let mut s = n.to_vec();
                s.sort_unstable();
                std::iter::once(alpha as i64).chain(s).collect()
            }
            Fusion::II => vec![alpha as i64, n[0], n[1].min(n[2]), n[1].max(n[2])],
            Fusion::III => vec![alpha as i64, n[0], n[1], n[2]],
        };
        if !found.iter().any(|(k, _)| *k == key) {
            found.push((key, Solution7B { n, signs, alpha }));
        }
    }
    match found.len() {
        0 => Err(Error::Classification(
            "no solution of Brauer's sign equations".into(),
        )),
        1 => Ok(found.pop().unwrap().1),
        k => Err(Error::Ambiguous(format!(
            "{k} inequivalent solutions of Brauer's sign equations"
        ))),
    }
}

fn coeffs_of(idx: &[usize]) -> [i64; 4] {
    let mut c = [0; 4];
    for &i in idx {
        c[i] += 1;
    }
    c
}

pub fn transport_kv4(input: &DomesticBlockInput) -> Result<TrivialSourceBlockData> {
    if classify_morita_class(&input.degrees)? != MoritaClass::KV4 {
        return Err(Error::Classification(
            "degrees are not those of a kV4-class block".into(),
        ));
    }
    let sol = brauer_7b_solve(input)?;
    let a = sol.alpha;
    let mut rows = vec![BlockRow {
        vertex: VertexKind::Trivial,
        coeffs: [1; 4],
        local_label: Some(0),
        involution: None,
    }];
    let mut notes = Vec::new();
    let mut attached: Vec<usize> = Vec::new();
    let mut others: Vec<usize> = (0..4).filter(|&j| j != a).collect();
    // β, γ, δ carry the + sign in column 1, 2, 3 respectively
    others.sort_by_key(|&j| sol.signs[j].iter().position(|&s| s == 1));
    for (lab, &j) in others.iter().enumerate() {
        let row = BlockRow {
            vertex: VertexKind::C2,
            coeffs: coeffs_of(&[a, j]),
            local_label: Some(lab),
            involution: None,
        };
        let pos: Vec<usize> = (0..input.involutions.len())
            .filter(|&c| row.value_at(&input.involutions[c]) > 0)
            .collect();
        if pos.len() != 1 {
            return Err(Error::Structural(format!(
                "row {} is positive at {} involution classes",
                row.label(input.characters),
                pos.len()
            )));
        }
        attached.push(pos[0]);
        rows.push(BlockRow {
            involution: Some(pos[0]),
            ..row
        });
    }
    for c in 0..input.involutions.len() {
        let k = attached.iter().filter(|&&x| x == c).count();
        if k > 1 {
            notes.push(format!(
                "{k} C2-vertex rows attach to the fused involution class {}",
                input.involutions[c].name
            ));
        }
    }
    rows.push(BlockRow {
        vertex: VertexKind::Maximal,
        coeffs: coeffs_of(&[a]),
        local_label: Some(0),
        involution: None,
    });
    Ok(TrivialSourceBlockData {
        morita_class: MoritaClass::KV4,
        rows,
        notes,
    })
}

fn attach_single_c2(input: &DomesticBlockInput, row: BlockRow) -> Result<BlockRow> {
    if input.involutions.is_empty() {
        return Ok(row);
    }
    let pos: Vec<usize> = (0..input.involutions.len())
        .filter(|&c| row.value_at(&input.involutions[c]) > 0)
        .collect();
    if pos.len() != 1 {
        return Err(Error::Structural(format!(
            "C2-vertex row is positive at {} involution classes",
            pos.len()
        )));
    }
    Ok(BlockRow {
        involution: Some(pos[0]),
        ..row
    })
}

pub fn transport_ka4(input: &DomesticBlockInput) -> Result<TrivialSourceBlockData> {
    if classify_morita_class(&input.degrees)? != MoritaClass::KA4 {
        return Err(Error::Classification(
            "degrees are not those of a kA4-class block".into(),
        ));
    }
    let total: u64 = input.degrees.iter().sum();
    let d = (0..4)
        .find(|&i| 2 * input.degrees[i] == total)
        .expect("classified");
    let abc: Vec<usize> = (0..4).filter(|&i| i != d).collect();
    let mut rows = Vec::new();
    for (lab, &x) in abc.iter().enumerate() {
        rows.push(BlockRow {
            vertex: VertexKind::Trivial,
            coeffs: coeffs_of(&[x, d]),
            local_label: Some(lab),
            involution: None,
        });
    }
    rows.push(attach_single_c2(
        input,
        BlockRow {
            vertex: VertexKind::C2,
            coeffs: [1; 4],
            local_label: Some(0),
            involution: None,
        },
    )?);
    for (lab, &x) in abc.iter().enumerate() {
        rows.push(BlockRow {
            vertex: VertexKind::Maximal,
            coeffs: coeffs_of(&[x]),
            local_label: Some(lab),
            involution: None,
        });
    }
    Ok(TrivialSourceBlockData {
        morita_class: MoritaClass::KA4,
        rows,
        notes: vec![],
    })
}

pub fn transport_ka5(input: &DomesticBlockInput) -> Result<TrivialSourceBlockData> {
    if classify_morita_class(&input.degrees)? != MoritaClass::KA5 {
        return Err(Error::Classification(
            "degrees are not those of a B0(kA5)-class block".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..4).collect();
    idx.sort_by_key(|&i| (input.degrees[i], i));
    let (a, d) = (idx[0], idx[3]);
    let mut bg = [idx[1], idx[2]];
    bg.sort_unstable();
    let (b, g) = (bg[0], bg[1]);
    let t = |c: &[usize], lab| BlockRow {
        vertex: VertexKind::Trivial,
        coeffs: coeffs_of(c),
        local_label: Some(lab),
        involution: None,
    };
    let m = |c: &[usize], lab| BlockRow {
        vertex: VertexKind::Maximal,
        coeffs: coeffs_of(c),
        local_label: Some(lab),
        involution: None,
    };
    let rows = vec![
        t(&[a, b, g, d], 0),
        t(&[g, d], 1),
        t(&[b, d], 2),
        attach_single_c2(
            input,
            BlockRow {
                vertex: VertexKind::C2,
                coeffs: coeffs_of(&[a, d]),
                local_label: Some(0),
                involution: None,
            },
        )?,
        m(&[a], 0),
        m(&[d], 1),
        m(&[d], 2),
    ];
    Ok(TrivialSourceBlockData {
        morita_class: MoritaClass::KA5,
        rows,
        notes: vec![],
    })
}

/// Classifies and dispatches to the matching transport rule.
pub fn transport(input: &DomesticBlockInput) -> Result<TrivialSourceBlockData> {
    match classify_morita_class(&input.degrees)? {
        MoritaClass::KV4 => transport_kv4(input),
        MoritaClass::KA4 => transport_ka4(input),
        MoritaClass::KA5 => transport_ka5(input),
    }
}
