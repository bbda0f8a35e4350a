//! Ordinary character tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{lcm_u64, rat, CycAccum, CycNum, Rat};
use crate::permgroup::{self, GroupFile, Perm, PermGroup};

/// Values of a class function, one per column of some table.
pub type ClassFunction = Vec<CycNum>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// Element index in the table's group.
    pub rep: usize,
    pub size: usize,
    pub elt_order: u32,
    pub name: String,
}

/// Integer combination of irreducible characters, keyed by 0-based row index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirtualCharacter {
    pub coeffs: BTreeMap<usize, i64>,
}

impl VirtualCharacter {
    pub fn irr(i: usize) -> Self {
        Self::from_pairs(&[(i, 1)])
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        let mut v = VirtualCharacter::default();
        for &(i, c) in pairs {
            *v.coeffs.entry(i).or_insert(0) += c;
        }
        v.coeffs.retain(|_, c| *c != 0);
        v
    }

    /// Sum of the listed irreducibles, each with coefficient 1.
    pub fn sum_of(idx: &[usize]) -> Self {
        Self::from_pairs(&idx.iter().map(|&i| (i, 1)).collect::<Vec<_>>())
    }

    pub fn add(&self, other: &VirtualCharacter) -> VirtualCharacter {
        let mut pairs: Vec<(usize, i64)> = self.coeffs.iter().map(|(&i, &c)| (i, c)).collect();
        pairs.extend(other.coeffs.iter().map(|(&i, &c)| (i, c)));
        Self::from_pairs(&pairs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constituents(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn values(&self, t: &CharTable) -> ClassFunction {
        (0..t.num_classes())
            .map(|c| {
                let mut acc = CycAccum::new(1);
                for (&i, &k) in &self.coeffs {
                    acc.add_scaled(&t.irr[i][c], &rat(k, 1));
                }
                acc.finish()
            })
            .collect()
    }

    pub fn degree(&self, t: &CharTable) -> i64 {
        self.coeffs
            .iter()
            .map(|(&i, &k)| k * t.degree(i) as i64)
            .sum()
    }

    /// Label with 1-based indices, e.g. `χ1+χ4`.
    pub fn label(&self) -> String {
        let mut s = String::new();
        for (n, (&i, &c)) in self.coeffs.iter().enumerate() {
            if c < 0 {
                s.push('-');
            } else if n > 0 {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("χ{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// JSON form: 1-based index strings to coefficients.
    pub fn to_json(&self) -> BTreeMap<String, i64> {
        self.coeffs
            .iter()
            .map(|(&i, &c)| ((i + 1).to_string(), c))
            .collect()
    }

    pub fn from_json(m: &BTreeMap<String, i64>) -> Result<Self> {
        let mut pairs = Vec::new();
        for (k, &c) in m {
            let i: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad character index {k}")))?;
            if i == 0 {
                return Err(Error::Parse("character indices are 1-based".into()));
            }
            pairs.push((i - 1, c));
        }
        Ok(Self::from_pairs(&pairs))
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    group: Arc<PermGroup>,
    classes: Vec<ClassInfo>,
    /// Group class index -> column.
    col_of_class: Vec<usize>,
    irr: Vec<Vec<CycNum>>,
    names: Vec<String>,
}

impl CharTable {
    /// Validates shape, degrees and exact row orthogonality.
    pub fn new(
        group: Arc<PermGroup>,
        classes: Vec<ClassInfo>,
        irr: Vec<Vec<CycNum>>,
        names: Option<Vec<String>>,
    ) -> Result<CharTable> {
        let k = classes.len();
        if k != group.classes().len() {
            return Err(Error::Invalid(format!(
                "table has {k} columns but the group has {} classes",
                group.classes().len()
            )));
        }
        let mut col_of_class = vec![usize::MAX; k];
        for (c, ci) in classes.iter().enumerate() {
            let gc = group.class_of(ci.rep);
            if col_of_class[gc] != usize::MAX {
                return Err(Error::Invalid("two columns for the same class".into()));
            }
            let cl = &group.classes()[gc];
            if cl.size != ci.size || cl.order != ci.elt_order {
                return Err(Error::Invalid(format!(
                    "column {} has wrong size or element order",
                    ci.name
                )));
            }
            col_of_class[gc] = c;
        }
        if irr.len() != k || irr.iter().any(|r| r.len() != k) {
            return Err(Error::Invalid("character table is not square".into()));
        }
        let names = names.unwrap_or_else(|| (1..=k).map(|i| format!("χ{i}")).collect());
        if names.len() != k {
            return Err(Error::Invalid("wrong number of row names".into()));
        }
        let t = CharTable {
            group,
            classes,
            col_of_class,
            irr,
            names,
        };
        t.check_orthogonality()?;
        Ok(t)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<PermGroup> {
        self.group.clone()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn irr(&self) -> &[Vec<CycNum>] {
        &self.irr
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.irr[i]
    }

    pub fn value(&self, i: usize, c: usize) -> &CycNum {
        &self.irr[i][c]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.irr[i][self.identity_column()]
            .try_i64()
            .expect("degree is an integer") as u64
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.num_classes()).map(|i| self.degree(i)).collect()
    }

    pub fn identity_column(&self) -> usize {
        self.col_of_class[0]
    }

    /// Column containing the given element of the table's group.
    pub fn column_of_element(&self, g: usize) -> usize {
        self.col_of_class[self.group.class_of(g)]
    }

    pub fn column_of_perm(&self, p: &Perm) -> Option<usize> {
        self.group.index_of(p).map(|g| self.column_of_element(g))
    }

    /// Column of the inverse class.
    pub fn inverse_column(&self, c: usize) -> usize {
        self.column_of_element(self.group.inv(self.classes[c].rep))
    }

    pub fn exponent(&self) -> u32 {
        self.classes
            .iter()
            .fold(1u64, |a, c| lcm_u64(a, c.elt_order as u64)) as u32
    }

    pub fn trivial_row(&self) -> Option<usize> {
        (0..self.num_classes()).find(|&i| self.irr[i].iter().all(|x| x.is_one()))
    }

    /// `(1/|G|) Σ |C| f(C) conj(g(C))`.
    pub fn inner_product(&self, f: &[CycNum], g: &[CycNum]) -> Result<CycNum> {
        if f.len() != self.num_classes() || g.len() != self.num_classes() {
            return Err(Error::Invalid("class function length mismatch".into()));
        }
        let mut acc = CycAccum::new(1);
        let n = self.order() as i64;
        for c in 0..self.num_classes() {
            acc.add_product(&f[c], &g[c].conj(), &rat(self.classes[c].size as i64, n));
        }
        Ok(acc.finish())
    }

    /// Coefficients of a class function on the irreducibles; fails unless
    /// all of them are rational integers.
    pub fn decompose(&self, f: &[CycNum]) -> Result<VirtualCharacter> {
        let mut pairs = Vec::new();
        for i in 0..self.num_classes() {
            let ip = self.inner_product(f, &self.irr[i])?;
            let k = ip.try_i64().ok_or_else(|| {
                Error::Invalid(format!("non-integral multiplicity {ip} of χ{}", i + 1))
            })?;
            pairs.push((i, k));
        }
        Ok(VirtualCharacter::from_pairs(&pairs))
    }

    pub fn check_orthogonality(&self) -> Result<()> {
        let k = self.num_classes();
        let idc = self.identity_column();
        let mut sq = 0u64;
        for i in 0..k {
            let d = self.irr[i][idc]
                .try_i64()
                .filter(|&d| d > 0)
                .ok_or_else(|| {
                    Error::Invalid(format!("degree of row {} is not a positive integer", i + 1))
                })?;
            sq += (d * d) as u64;
        }
        if sq != self.order() as u64 {
            return Err(Error::Invalid(
                "sum of squared degrees differs from the group order".into(),
            ));
        }
        let conj: Vec<Vec<CycNum>> = self
            .irr
            .iter()
            .map(|r| r.iter().map(|x| x.conj()).collect())
            .collect();
        let n = self.order() as i64;
        for i in 0..k {
            for j in i..k {
                let mut acc = CycAccum::new(1);
                for c in 0..k {
                    acc.add_product(
                        &self.irr[i][c],
                        &conj[j][c],
                        &rat(self.classes[c].size as i64, n),
                    );
                }
                let v = acc.finish();
                let want = if i == j {
                    CycNum::one()
                } else {
                    CycNum::zero()
                };
                if v != want {
                    return Err(Error::Invalid(format!(
                        "rows {} and {} violate orthogonality ({v})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_χ χ(g_c) conj(χ(g_d)) = δ_cd |C_G(g_c)|`.
    pub fn check_column_orthogonality(&self) -> Result<()> {
        let k = self.num_classes();
        for c in 0..k {
            for d in c..k {
                let mut acc = CycAccum::new(1);
                for i in 0..k {
                    acc.add_product(&self.irr[i][c], &self.irr[i][d].conj(), &Rat::one());
                }
                let want = if c == d {
                    CycNum::from_int((self.order() / self.classes[c].size) as i64)
                } else {
                    CycNum::zero()
                };
                if acc.finish() != want {
                    return Err(Error::Invalid(format!(
                        "columns {c} and {d} violate orthogonality"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `ω_χ(Ĉ) = |C| χ(g) / χ(1)`.
    pub fn central_character(&self, i: usize, c: usize) -> CycNum {
        self.irr[i][c].scale(&rat(self.classes[c].size as i64, self.degree(i) as i64))
    }

    /// Column of this table (group H) -> column of `big` (group G ≥ H).
    pub fn fusion_into(&self, big: &CharTable) -> Result<Vec<usize>> {
        self.classes
            .iter()
            .map(|ci| {
                big.column_of_perm(self.group.element(ci.rep))
                    .ok_or_else(|| Error::Invalid("not a subgroup of the target group".into()))
            })
            .collect()
    }

    pub fn restrict(&self, f: &[CycNum], sub: &CharTable) -> Result<ClassFunction> {
        let fus = sub.fusion_into(self)?;
        Ok(fus.iter().map(|&c| f[c].clone()).collect())
    }

    /// Induces `psi` (a class function of `sub`) to this table's group.
    pub fn induce(&self, psi: &[CycNum], sub: &CharTable) -> Result<ClassFunction> {
        let fus = sub.fusion_into(self)?;
        let mut acc: Vec<CycAccum> = (0..self.num_classes()).map(|_| CycAccum::new(1)).collect();
        for (d, &c) in fus.iter().enumerate() {
            acc[c].add_scaled(&psi[d], &rat(sub.classes[d].size as i64, 1));
        }
        let (g, h) = (self.order() as i64, sub.order() as i64);
        Ok(acc
            .into_iter()
            .enumerate()
            .map(|(c, a)| a.finish().scale(&rat(g, self.classes[c].size as i64 * h)))
            .collect())
    }

    /// Inflates `nu` from `quot` along `projection` (indexed by this
    /// table's group elements, valued in `quot`'s group elements).
    pub fn inflate(
        &self,
        nu: &[CycNum],
        quot: &CharTable,
        projection: &[usize],
    ) -> Result<ClassFunction> {
        if projection.len() != self.order() || nu.len() != quot.num_classes() {
            return Err(Error::Invalid("mismatched quotient data".into()));
        }
        self.classes
            .iter()
            .map(|ci| {
                let q = projection[ci.rep];
                if q >= quot.order() {
                    return Err(Error::Invalid("projection image outside quotient".into()));
                }
                Ok(nu[quot.column_of_element(q)].clone())
            })
            .collect()
    }

    /// Applies `ζ ↦ ζ^k` to every entry.
    pub fn galois_conjugate(&self, k: i64) -> Vec<Vec<CycNum>> {
        self.irr
            .iter()
            .map(|r| r.iter().map(|x| x.galois(k)).collect())
            .collect()
    }

    pub fn with_names(
        mut self,
        rows: Option<Vec<String>>,
        cols: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(r) = rows {
            if r.len() != self.num_classes() {
                return Err(Error::Invalid("wrong number of row names".into()));
            }
            self.names = r;
        }
        if let Some(c) = cols {
            if c.len() != self.num_classes() {
                return Err(Error::Invalid("wrong number of column names".into()));
            }
            for (ci, n) in self.classes.iter_mut().zip(c) {
                ci.name = n;
            }
        }
        Ok(self)
    }

    // -- rendering ------------------------------------------------------

    pub fn render_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut head = vec![String::new()];
        head.extend(self.classes.iter().map(|c| c.name.clone()));
        cells.push(head);
        let mut sizes = vec!["size".to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        cells.push(sizes);
        for (i, r) in self.irr.iter().enumerate() {
            let mut row = vec![self.names[i].clone()];
            row.extend(r.iter().map(|x| x.pretty()));
            cells.push(row);
        }
        render_grid(&cells, &[2])
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("char");
        for c in &self.classes {
            out.push(',');
            out.push_str(&c.name);
        }
        out.push('\n');
        for (i, r) in self.irr.iter().enumerate() {
            out.push_str(&self.names[i]);
            for x in r {
                out.push(',');
                out.push_str(&x.canonical_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> CharTableJson {
        CharTableJson {
            order: self.order(),
            group: Some(GroupFile::from_group(&self.group)),
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    rep: self.group.element(c.rep).one_based(),
                    size: c.size,
                    elt_order: c.elt_order,
                    name: Some(c.name.clone()),
                })
                .collect(),
            irr: self.irr.clone(),
            names: Some(self.names.clone()),
        }
    }

    pub fn from_json(j: &CharTableJson) -> Result<CharTable> {
        if j.classes.is_empty() {
            return Err(Error::Parse("table has no classes".into()));
        }
        let degree = j.classes[0].rep.len();
        let reps = j
            .classes
            .iter()
            .map(|c| {
                if c.rep.len() != degree {
                    return Err(Error::Parse(
                        "class representatives of different degrees".into(),
                    ));
                }
                Perm::from_one_based(&c.rep)
            })
            .collect::<Result<Vec<_>>>()?;
        let group = match &j.group {
            Some(gf) => gf.build()?,
            // class representatives always generate the whole group
            None => PermGroup::from_generators(
                degree,
                reps.iter().filter(|p| !p.is_identity()).cloned().collect(),
            )?,
        };
        if group.order() != j.order {
            return Err(Error::Invalid(format!(
                "declared order {} but group has order {}",
                j.order,
                group.order()
            )));
        }
        let mut classes = Vec::new();
        for (c, p) in j.classes.iter().zip(&reps) {
            let rep = group
                .index_of(p)
                .ok_or_else(|| Error::Invalid(format!("representative {p} not in group")))?;
            classes.push(ClassInfo {
                rep,
                size: c.size,
                elt_order: c.elt_order,
                name: c.name.clone().unwrap_or_default(),
            });
        }
        let auto = class_names(&classes.iter().map(|c| c.elt_order).collect::<Vec<_>>());
        for (c, n) in classes.iter_mut().zip(auto) {
            if c.name.is_empty() {
                c.name = n;
            }
        }
        CharTable::new(Arc::new(group), classes, j.irr.clone(), j.names.clone())
    }
}

/// Aligns a grid of strings into columns, with a horizontal rule before each row index in `rules`.
pub(crate) fn render_grid(cells: &[Vec<String>], rules: &[usize]) -> String {
    let ncol = cells.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut w = vec![0usize; ncol];
    for r in cells {
        for (j, s) in r.iter().enumerate() {
            w[j] = w[j].max(s.chars().count());
        }
    }
    let mut out = String::new();
    for (i, r) in cells.iter().enumerate() {
        if rules.contains(&i) {
            let total: usize = w.iter().sum::<usize>() + 2 * ncol.saturating_sub(1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
        let mut line = String::new();
        for (j, s) in r.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            let pad = w[j] - s.chars().count();
            if j == 0 {
                line.push_str(s);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str(&" ".repeat(pad));
                line.push_str(s);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub rep: Vec<usize>,
    pub size: usize,
    pub elt_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharTableJson {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFile>,
    pub classes: Vec<ClassJson>,
    pub irr: Vec<Vec<CycNum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// GAP-style class names: element order followed by a letter per column.
pub fn class_names(orders: &[u32]) -> Vec<String> {
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    orders
        .iter()
        .map(|&o| {
            let k = seen.entry(o).or_insert(0);
            let name = format!("{o}{}", letters(*k));
            *k += 1;
            name
        })
        .collect()
}

fn letters(mut k: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push((b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.iter().rev().collect()
}

fn classes_of_group(g: &PermGroup) -> Vec<ClassInfo> {
    let orders: Vec<u32> = g.classes().iter().map(|c| c.order).collect();
    let names = class_names(&orders);
    g.classes()
        .iter()
        .zip(names)
        .map(|(c, name)| ClassInfo {
            rep: c.rep,
            size: c.size,
            elt_order: c.order,
            name,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Dixon

mod modp {
    pub fn pow(mut b: u64, mut e: u64, q: u64) -> u64 {
        let mut r = 1u64;
        b %= q;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, q: u64) -> u64 {
        pow(a, q - 2, q)
    }

    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    pub fn primitive_root(q: u64) -> u64 {
        let mut fs = Vec::new();
        let mut m = q - 1;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                fs.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            fs.push(m);
        }
        (2..q)
            .find(|&g| fs.iter().all(|&f| pow(g, (q - 1) / f, q) != 1))
            .unwrap_or(1)
    }

    /// Row-reduces in place, drops zero rows, returns pivot columns.
    pub fn rref(rows: &mut Vec<Vec<u64>>, q: u64) -> Vec<usize> {
        let ncol = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncol {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let iv = inv(rows[r][c], q);
            for x in rows[r].iter_mut() {
                *x = *x * iv % q;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncol {
                        rows[i][j] = (rows[i][j] + q - f * rows[r][j] % q) % q;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : m x = 0}`.
    pub fn nullspace(mut m: Vec<Vec<u64>>, ncol: usize, q: u64) -> Vec<Vec<u64>> {
        let piv = rref(&mut m, q);
        let free: Vec<usize> = (0..ncol).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; ncol];
                x[f] = 1;
                for (i, &p) in piv.iter().enumerate() {
                    x[p] = (q - m[i][f]) % q;
                }
                x
            })
            .collect()
    }
}

pub const DIXON_PRIME_CAP: u64 = 1_000_000;

/// Smallest prime `q ≡ 1 (mod exponent)` with `q > 2√|G|`.
pub fn dixon_prime(order: usize, exponent: u32) -> Result<u64> {
    let e = exponent as u64;
    let mut q = e + 1;
    while q < DIXON_PRIME_CAP {
        if q * q > 4 * order as u64 && modp::is_prime(q) {
            return Ok(q);
        }
        q += e;
    }
    Err(Error::Unsupported(format!(
        "no Dixon prime below {DIXON_PRIME_CAP}"
    )))
}

/// Burnside–Dixon: common eigenvectors of the class matrices over `F_q`,
/// lifted to `Q(ζ_e)` through a fixed primitive root.
pub fn dixon_character_table(group: Arc<PermGroup>) -> Result<CharTable> {
    let g = &*group;
    let k = g.classes().len();
    let order = g.order();
    let exp = g.exponent();
    let q = dixon_prime(order, exp)?;
    let reps: Vec<usize> = g.classes().iter().map(|c| c.rep).collect();
    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size as u64).collect();

    // c[r][s][t] = #{x ∈ C_r : x⁻¹ z_t ∈ C_s}
    let mut cst = vec![vec![vec![0u64; k]; k]; k];
    for t in 0..k {
        for x in 0..order {
            let y = g.mul(g.inv(x), reps[t]);
            cst[g.class_of(x)][g.class_of(y)][t] += 1;
        }
    }

    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    for r in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for sp in spaces {
            if sp.len() == 1 {
                next.push(sp);
                continue;
            }
            let d = sp.len();
            let piv: Vec<usize> = sp
                .iter()
                .map(|b| b.iter().position(|&x| x != 0).unwrap())
                .collect();
            let images: Vec<Vec<u64>> = sp
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|s| (0..k).fold(0u64, |a, t| (a + cst[r][s][t] % q * b[t]) % q))
                        .collect()
                })
                .collect();
            // matrix of M_r on the subspace, in the RREF basis
            let a: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|j| images[j][piv[i]]).collect())
                .collect();
            let mut parts = Vec::new();
            let mut total = 0;
            for lam in 0..q {
                let m: Vec<Vec<u64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                if i == j {
                                    (a[i][j] + q - lam) % q
                                } else {
                                    a[i][j]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ns = modp::nullspace(m, d, q);
                if ns.is_empty() {
                    continue;
                }
                let mut vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|y| {
                        (0..k)
                            .map(|t| (0..d).fold(0u64, |acc, j| (acc + y[j] * sp[j][t]) % q))
                            .collect()
                    })
                    .collect();
                modp::rref(&mut vecs, q);
                total += vecs.len();
                parts.push(vecs);
                if total == d {
                    break;
                }
            }
            if total != d {
                return Err(Error::Structural(
                    "class matrix not diagonalizable mod q".into(),
                ));
            }
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Structural(
            "eigenspace splitting did not terminate in lines".into(),
        ));
    }

    let inv_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();
    let powers: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let m = g.element_order(x) as usize;
            let mut cur = 0usize;
            let mut v = Vec::with_capacity(m);
            for _ in 0..m {
                v.push(g.class_of(cur));
                cur = g.mul(cur, x);
            }
            v
        })
        .collect();
    let prim = modp::primitive_root(q);
    let zeta = modp::pow(prim, (q - 1) / exp as u64, q);
    let gm = order as u64 % q;
    let dmax = (order as f64).sqrt().floor() as u64 + 1;

    let mut rows = Vec::with_capacity(k);
    for sp in &spaces {
        let v = &sp[0];
        if v[0] == 0 {
            return Err(Error::Structural(
                "eigenvector with zero identity coordinate".into(),
            ));
        }
        let n0 = modp::inv(v[0], q);
        let w: Vec<u64> = v.iter().map(|&x| x * n0 % q).collect();
        let s = (0..k).fold(0u64, |a, t| {
            (a + w[t] * w[inv_class[t]] % q * modp::inv(sizes[t] % q, q)) % q
        });
        let d2 = gm * modp::inv(s, q) % q;
        let deg = (1..=dmax)
            .find(|&d| d * d % q == d2 && d * d <= order as u64)
            .ok_or_else(|| Error::Structural("no degree satisfies the square relation".into()))?;
        let chi: Vec<u64> = (0..k)
            .map(|t| deg * w[t] % q * modp::inv(sizes[t] % q, q) % q)
            .collect();
        let mut row = Vec::with_capacity(k);
        for t in 0..k {
            let m = powers[t].len() as u64;
            let zm = modp::pow(zeta, exp as u64 / m, q);
            let minv = modp::inv(m % q, q);
            let mut coeffs = vec![0i64; m as usize];
            for (e, slot) in coeffs.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (j, &cls) in powers[t].iter().enumerate() {
                    let ex = (m - (e as u64 * j as u64) % m) % m;
                    acc = (acc + chi[cls] * modp::pow(zm, ex, q)) % q;
                }
                let a = acc * minv % q;
                if a > deg {
                    return Err(Error::Structural(
                        "eigenvalue multiplicity exceeds the degree".into(),
                    ));
                }
                *slot = a as i64;
            }
            row.push(CycNum::from_int_coeffs(m as u32, &coeffs));
        }
        rows.push(row);
    }
    sort_rows(&mut rows);
    CharTable::new(group.clone(), classes_of_group(&group), rows, None)
}

/// Trivial row first, then by degree, then by the value vector.
fn sort_rows(rows: &mut [Vec<CycNum>]) {
    rows.sort_by(|a, b| {
        let ta = a.iter().all(|x| x.is_one());
        let tb = b.iter().all(|x| x.is_one());
        tb.cmp(&ta)
            .then_with(|| a[0].cmp(&b[0]))
            .then_with(|| a.cmp(b))
    });
}

pub fn character_table(group: &PermGroup) -> Result<CharTable> {
    dixon_character_table(Arc::new(group.clone()))
}

// ---------------------------------------------------------------------------
// closed forms and builtins

/// Table of `D_{4v}` over the columns `1, r, …, r^v, s, sr`.
pub fn dihedral_character_table(v: usize) -> Result<CharTable> {
    let g = permgroup::dihedral_group(v)?;
    let (r, s) = permgroup::dihedral_rs(&g);
    let n = 2 * v;
    let mut reps: Vec<usize> = (0..=v).map(|j| g.pow(r, j as i64)).collect();
    reps.push(s);
    reps.push(g.mul(s, r));
    let mut names: Vec<String> = vec!["1".into(), "r".into()];
    names.extend((2..=v).map(|j| format!("r^{j}")));
    names.push("s".into());
    names.push("sr".into());
    let classes: Vec<ClassInfo> = reps
        .iter()
        .zip(names)
        .map(|(&x, name)| {
            let c = &g.classes()[g.class_of(x)];
            ClassInfo {
                rep: x,
                size: c.size,
                elt_order: c.order,
                name,
            }
        })
        .collect();
    let one = CycNum::one;
    let m1 = || CycNum::from_int(-1);
    let alt = |j: usize| if j.is_multiple_of(2) { one() } else { m1() };
    let mut irr = Vec::new();
    // χ1..χ4 on r^j, then s, sr
    let lin: [(bool, i64, i64); 4] = [(false, 1, 1), (true, 1, -1), (false, -1, -1), (true, -1, 1)];
    for (sign_r, vs, vsr) in lin {
        let mut row: Vec<CycNum> = (0..=v)
            .map(|j| if sign_r { alt(j) } else { one() })
            .collect();
        row.push(CycNum::from_int(vs));
        row.push(CycNum::from_int(vsr));
        irr.push(row);
    }
    for m in 1..v {
        let mut row: Vec<CycNum> = (0..=v)
            .map(|j| {
                let e = (m * j) as i64;
                CycNum::root_of_unity(n as u32, -e).add(&CycNum::root_of_unity(n as u32, e))
            })
            .collect();
        row.push(CycNum::zero());
        row.push(CycNum::zero());
        irr.push(row);
    }
    CharTable::new(Arc::new(g), classes, irr, None)
}

fn table_from_rows(
    g: PermGroup,
    cols: &[(Perm, &str)],
    irr: Vec<Vec<CycNum>>,
) -> Result<CharTable> {
    let classes = cols
        .iter()
        .map(|(p, name)| {
            let x = g.index_of(p).expect("builtin rep in group");
            let c = &g.classes()[g.class_of(x)];
            ClassInfo {
                rep: x,
                size: c.size,
                elt_order: c.order,
                name: name.to_string(),
            }
        })
        .collect();
    CharTable::new(Arc::new(g), classes, irr, None)
}

fn ints(v: &[i64]) -> Vec<CycNum> {
    v.iter().map(|&x| CycNum::from_int(x)).collect()
}

/// Named elements of the builtin groups, in the product convention of this crate.
pub fn builtin_elements(name: &str) -> Result<Vec<(&'static str, Perm)>> {
    let cyc = |d: usize, c: &[&[usize]]| Perm::from_cycles(d, c).unwrap();
    Ok(match name {
        "v4" => {
            let a = cyc(4, &[&[1, 2], &[3, 4]]);
            let b = cyc(4, &[&[1, 3], &[2, 4]]);
            vec![
                ("1", Perm::identity(4)),
                ("a", a.clone()),
                ("b", b.clone()),
                ("ab", a.mul(&b)),
            ]
        }
        "a4" => {
            let a = cyc(4, &[&[1, 2], &[3, 4]]);
            let b = cyc(4, &[&[1, 3], &[2, 4]]);
            let c = cyc(4, &[&[1, 2, 3]]);
            let bc2 = b.mul(&c).mul(&c);
            vec![
                ("1", Perm::identity(4)),
                ("a", a),
                ("c", c),
                ("bc²", bc2),
                ("b", b),
            ]
        }
        "a5" => {
            let a = cyc(5, &[&[1, 2], &[3, 4]]);
            let b = cyc(5, &[&[1, 3], &[2, 4]]);
            let c = cyc(5, &[&[1, 2, 3]]);
            let d = cyc(5, &[&[1, 3, 5]]);
            let ad = a.mul(&d);
            let ad2 = ad.mul(&ad);
            let c2 = c.mul(&c);
            vec![
                ("1", Perm::identity(5)),
                ("a", a),
                ("d", d),
                ("ad", ad),
                ("(ad)²", ad2),
                ("b", b),
                ("c", c),
                ("c²", c2),
            ]
        }
        _ => return Err(Error::Invalid(format!("no builtin table named {name}"))),
    })
}

pub fn builtin_element(name: &str, elt: &str) -> Perm {
    builtin_elements(name)
        .unwrap()
        .into_iter()
        .find(|(n, _)| *n == elt)
        .unwrap()
        .1
}

/// Hard-coded tables of `v4`, `a4`, `a5` in the classical row/column order.
pub fn builtin_table(name: &str) -> Result<CharTable> {
    let els = builtin_elements(name)?;
    let w = CycNum::root_of_unity(3, 1);
    let w2 = CycNum::root_of_unity(3, 2);
    match name {
        "v4" => table_from_rows(
            permgroup::v4_group(),
            &els[..4]
                .iter()
                .map(|(n, p)| (p.clone(), *n))
                .collect::<Vec<_>>(),
            vec![
                ints(&[1, 1, 1, 1]),
                ints(&[1, 1, -1, -1]),
                ints(&[1, -1, 1, -1]),
                ints(&[1, -1, -1, 1]),
            ],
        ),
        "a4" => {
            let one = CycNum::one();
            table_from_rows(
                permgroup::a4_group(),
                &els[..4]
                    .iter()
                    .map(|(n, p)| (p.clone(), *n))
                    .collect::<Vec<_>>(),
                vec![
                    ints(&[1, 1, 1, 1]),
                    vec![one.clone(), one.clone(), w.clone(), w2.clone()],
                    vec![one.clone(), one, w2, w],
                    ints(&[3, -1, 0, 0]),
                ],
            )
        }
        "a5" => {
            let eta = |k| CycNum::root_of_unity(5, k);
            let a = eta(1).add(&eta(4)).neg();
            let sa = eta(2).add(&eta(3)).neg();
            let i = CycNum::from_int;
            table_from_rows(
                permgroup::a5_group(),
                &els[..5]
                    .iter()
                    .map(|(n, p)| (p.clone(), *n))
                    .collect::<Vec<_>>(),
                vec![
                    ints(&[1, 1, 1, 1, 1]),
                    vec![i(3), i(-1), i(0), a.clone(), sa.clone()],
                    vec![i(3), i(-1), i(0), sa, a],
                    ints(&[4, 0, 1, -1, -1]),
                    ints(&[5, 1, -1, 0, 0]),
                ],
            )
        }
        _ => Err(Error::Invalid(format!("no builtin table named {name}"))),
    }
}

// ---------------------------------------------------------------------------
// matching

/// `galois(a[i][j]) == b[rows[i]][cols[j]]` for all `i, j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatch {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub galois: u32,
}

fn units_mod(n: u32) -> Vec<u32> {
    (1..=n.max(1))
        .filter(|&k| num_integer::gcd(k, n) == 1 || n == 1)
        .collect()
}

/// Finds row and column permutations plus a Galois automorphism carrying
/// table `a` onto table `b`. Column matching respects element order and
/// class size.
pub fn match_tables(a: &CharTable, b: &CharTable) -> Option<TableMatch> {
    let ka = a.col_meta();
    let kb = b.col_meta();
    match_matrices(a.irr(), &ka, b.irr(), &kb)
}

impl CharTable {
    fn col_meta(&self) -> Vec<(u32, usize)> {
        self.classes.iter().map(|c| (c.elt_order, c.size)).collect()
    }
}

/// Matrix version of [`match_tables`]; `meta` are per-column invariants that must agree.
pub fn match_matrices<M: Ord + Clone>(
    a: &[Vec<CycNum>],
    ma: &[M],
    b: &[Vec<CycNum>],
    mb: &[M],
) -> Option<TableMatch> {
    let nr = a.len();
    if nr != b.len() || ma.len() != mb.len() {
        return None;
    }
    let nc = ma.len();
    if a.iter().chain(b).any(|r| r.len() != nc) {
        return None;
    }
    let cond = a
        .iter()
        .chain(b)
        .flatten()
        .fold(1u64, |e, x| lcm_u64(e, x.conductor() as u64)) as u32;
    let mut sorted_b: Vec<Vec<CycNum>> = (0..nc)
        .map(|j| b.iter().map(|r| r[j].clone()).collect())
        .collect();
    for col in sorted_b.iter_mut() {
        col.sort();
    }
    for k in units_mod(cond) {
        let ag: Vec<Vec<CycNum>> = a
            .iter()
            .map(|r| r.iter().map(|x| x.galois(k as i64)).collect())
            .collect();
        let cands: Vec<Vec<usize>> = (0..nc)
            .map(|j| {
                let mut col: Vec<CycNum> = ag.iter().map(|r| r[j].clone()).collect();
                col.sort();
                (0..nc)
                    .filter(|&l| ma[j] == mb[l] && sorted_b[l] == col)
                    .collect()
            })
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut order: Vec<usize> = (0..nc).collect();
        order.sort_by_key(|&j| (cands[j].len(), j));
        let rowcand: Vec<Vec<bool>> = vec![vec![true; nr]; nr];
        let mut cols = vec![usize::MAX; nc];
        let mut used = vec![false; nc];
        if let Some(rows) = backtrack(&ag, b, &cands, &order, 0, &mut cols, &mut used, rowcand) {
            return Some(TableMatch {
                rows,
                cols,
                galois: k,
            });
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &[Vec<CycNum>],
    b: &[Vec<CycNum>],
    cands: &[Vec<usize>],
    order: &[usize],
    pos: usize,
    cols: &mut Vec<usize>,
    used: &mut Vec<bool>,
    rowcand: Vec<Vec<bool>>,
) -> Option<Vec<usize>> {
    let nr = a.len();
    if pos == order.len() {
        let mut rows = vec![usize::MAX; nr];
        let mut taken = vec![false; nr];
        for i in 0..nr {
            let j = (0..nr).find(|&j| rowcand[i][j] && !taken[j])?;
            taken[j] = true;
            rows[i] = j;
        }
        return Some(rows);
    }
    let j = order[pos];
    for &l in &cands[j] {
        if used[l] {
            continue;
        }
        let mut rc = rowcand.clone();
        let mut ok = true;
        for i in 0..nr {
            for r in 0..nr {
                if rc[i][r] && a[i][j] != b[r][l] {
                    rc[i][r] = false;
                }
            }
            if !rc[i].iter().any(|&x| x) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        cols[j] = l;
        used[l] = true;
        if let Some(r) = backtrack(a, b, cands, order, pos + 1, cols, used, rc) {
            return Some(r);
        }
        used[l] = false;
        cols[j] = usize::MAX;
    }
    None
}
