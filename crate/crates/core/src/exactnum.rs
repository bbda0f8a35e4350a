//! Exact rationals and cyclotomic numbers.
//!
//! A [`CycNum`] is stored in the power basis of `Q(ζ_n)` reduced modulo the
//! cyclotomic polynomial `Φ_n`, with `n` the smallest conductor containing the
//! value. Equality of canonical forms is equality of numbers.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rat = BigRational;

/// Builds `n/d` (panics if `d == 0`).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed cyclotomic number: {0}")]
    Malformed(String),
}

// ---------------------------------------------------------------------------
// elementary number theory

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    for p in prime_factors(n) {
        result = result / p * (p - 1);
    }
    result
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn field_conductor(m: u32) -> u32 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

// ---------------------------------------------------------------------------
// cached cyclotomic data

struct Embedding {
    // pivot rows (indices into the φ(n) coordinates) and the inverse of the
    // square submatrix on those rows
    rows: Vec<usize>,
    inv: Vec<Vec<Rat>>,
    // columns: ζ_m^j written in the reduced basis of Q(ζ_n)
    cols: Vec<Vec<Rat>>,
}

thread_local! {
    static CYCLO: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
    static EMBED: RefCell<HashMap<(u32, u32), Rc<Embedding>>> = RefCell::new(HashMap::new());
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_poly(n: u32) -> Rc<Vec<i64>> {
    if let Some(p) = CYCLO.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = poly_div_exact(&num, &den);
    }
    let p = Rc::new(num);
    CYCLO.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for i in (db..=da).rev() {
        let c = a[i];
        if c != 0 {
            q[i - db] = c;
            for j in 0..=db {
                a[i - db + j] -= c * b[j];
            }
        }
    }
    debug_assert!(a.iter().all(|&x| x == 0));
    q
}

/// Reduces a dense coefficient vector (index = exponent of ζ_n) modulo Φ_n.
/// The result has length φ(n).
fn reduce_dense(n: u32, v: &mut Vec<Rat>) {
    let phi = cyclotomic_poly(n);
    let k = phi.len() - 1;
    for i in (k..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], Rat::zero());
        for j in 0..k {
            if phi[j] != 0 {
                let t = &c * rat_int(phi[j]);
                v[i - k + j] -= t;
            }
        }
    }
    v.truncate(k);
    while v.len() < k {
        v.push(Rat::zero());
    }
}

fn embedding(n: u32, m: u32) -> Rc<Embedding> {
    if let Some(e) = EMBED.with(|c| c.borrow().get(&(n, m)).cloned()) {
        return e;
    }
    let phin = euler_phi(n) as usize;
    let phim = euler_phi(m) as usize;
    let step = n / m;
    let mut cols = Vec::with_capacity(phim);
    for j in 0..phim {
        let mut v = vec![Rat::zero(); n as usize];
        v[((j as u32 * step) % n) as usize] = Rat::one();
        reduce_dense(n, &mut v);
        cols.push(v);
    }
    // choose independent rows of the φ(n)×φ(m) matrix
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut rows = Vec::new();
    for r in 0..phin {
        let mut row: Vec<Rat> = (0..phim).map(|j| cols[j][r].clone()).collect();
        for (p, b) in &basis {
            if !row[*p].is_zero() {
                let f = row[*p].clone() / &b[*p];
                for (x, y) in row.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            basis.push((p, row));
            rows.push(r);
            if rows.len() == phim {
                break;
            }
        }
    }
    assert_eq!(
        rows.len(),
        phim,
        "embedding Q(ζ_{m}) -> Q(ζ_{n}) not injective"
    );
    let sub: Vec<Vec<Rat>> = rows
        .iter()
        .map(|&r| (0..phim).map(|j| cols[j][r].clone()).collect())
        .collect();
    let inv = invert(sub);
    let e = Rc::new(Embedding { rows, inv, cols });
    EMBED.with(|c| c.borrow_mut().insert((n, m), e.clone()));
    e
}

fn invert(mut a: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let k = a.len();
    let mut inv: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..k {
        let piv = (col..k)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &f;
            inv[col][j] = &inv[col][j] / &f;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                for j in 0..k {
                    let t = &g * &a[col][j];
                    a[r][j] -= t;
                    let t = &g * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}

/// If the reduced vector `x` of `Q(ζ_n)` lies in `Q(ζ_m)`, returns its reduced
/// coordinates there.
fn try_descend(n: u32, m: u32, x: &[Rat]) -> Option<Vec<Rat>> {
    let e = embedding(n, m);
    let c: Vec<Rat> = e
        .inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(&e.rows)
                .fold(Rat::zero(), |acc, (a, &r)| acc + a * &x[r])
        })
        .collect();
    for (r, xr) in x.iter().enumerate() {
        let mut s = Rat::zero();
        for (j, cj) in c.iter().enumerate() {
            if !cj.is_zero() && !e.cols[j][r].is_zero() {
                s += cj * &e.cols[j][r];
            }
        }
        if &s != xr {
            return None;
        }
    }
    Some(c)
}

// ---------------------------------------------------------------------------
// CycNum

/// An element of a cyclotomic field, always held in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycNum {
    n: u32,
    coeffs: Vec<(u32, Rat)>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            n: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(rat_int(k))
    }

    pub fn from_rat(r: Rat) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            CycNum {
                n: 1,
                coeffs: vec![(0, r)],
            }
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as u32;
        let mut v = vec![Rat::zero(); n as usize];
        v[e as usize] = Rat::one();
        Self::from_dense(n, v)
    }

    /// Builds `Σ c_e ζ_n^e` from a dense coefficient vector of any length
    /// (exponents are taken modulo `n`).
    pub fn from_dense(n: u32, coeffs: Vec<Rat>) -> Self {
        let mut v = vec![Rat::zero(); n as usize];
        for (e, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                v[e % n as usize] += c;
            }
        }
        Self::canonical(n, v)
    }

    /// Builds `Σ c_e ζ_n^e` from integer coefficients.
    pub fn from_int_coeffs(n: u32, coeffs: &[i64]) -> Self {
        Self::from_dense(n, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn canonical(n: u32, mut v: Vec<Rat>) -> Self {
        if n == 1 {
            let c: Rat = v.into_iter().sum();
            return Self::from_rat(c);
        }
        reduce_dense(n, &mut v);
        let (n, v) = minimize(n, v);
        let coeffs = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c))
            .collect();
        CycNum { n, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Nonzero coefficients in the reduced power basis, by exponent.
    pub fn coeffs(&self) -> &[(u32, Rat)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs.len() == 1 && self.coeffs[0].1.is_one()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.n != 1 {
            return None;
        }
        Some(
            self.coeffs
                .first()
                .map(|c| c.1.clone())
                .unwrap_or_else(Rat::zero),
        )
    }

    /// The value as a rational integer, if it is one.
    pub fn try_integer(&self) -> Option<BigInt> {
        let r = self.as_rat()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    pub fn try_i64(&self) -> Option<i64> {
        self.try_integer().and_then(|b| b.to_i64())
    }

    fn add_into(&self, l: u32, dense: &mut [Rat], scale: Option<&Rat>) {
        let step = l / self.n;
        for (e, c) in &self.coeffs {
            let idx = ((e * step) % l) as usize;
            match scale {
                Some(s) => dense[idx] += c * s,
                None => dense[idx] += c,
            }
        }
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let l = self.n.lcm(&other.n);
        let mut dense = vec![Rat::zero(); l as usize];
        self.add_into(l, &mut dense, None);
        other.add_into(l, &mut dense, None);
        Self::canonical(l, dense)
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        if r.is_zero() {
            return Self::zero();
        }
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        if let Some(r) = other.as_rat() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rat() {
            return other.scale(&r);
        }
        let l = self.n.lcm(&other.n);
        let (sa, sb) = (l / self.n, l / other.n);
        let mut dense = vec![Rat::zero(); l as usize];
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let idx = ((ea * sa + eb * sb) % l) as usize;
                dense[idx] += ca * cb;
            }
        }
        Self::canonical(l, dense)
    }

    pub fn pow(&self, k: u32) -> CycNum {
        let mut acc = CycNum::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^k` (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> CycNum {
        if self.n == 1 {
            return self.clone();
        }
        let n = self.n as i64;
        assert!(k.gcd(&n) == 1, "galois exponent not a unit");
        let mut dense = vec![Rat::zero(); self.n as usize];
        for (e, c) in &self.coeffs {
            dense[((*e as i64 * k).rem_euclid(n)) as usize] += c;
        }
        Self::canonical(self.n, dense)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// Multiplicative inverse (norm trick over the Galois group).
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Self::from_rat(r.recip()));
        }
        let n = self.n as i64;
        let mut others = CycNum::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = others.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&others).as_rat().expect("norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Floating-point value `(re, im)` for display and sanity checks.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.coeffs {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * (*e as f64) / (self.n as f64);
            re += x * a.cos();
            im += x * a.sin();
        }
        (re, im)
    }

    /// Canonical string `a+b*z(n)^k+…`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if *e == 0 {
                s.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            s.push_str(&format!("z({})", self.n));
            if *e != 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }

    /// Parses the output of [`CycNum::canonical_string`] (terms may come in any
    /// order, the result is canonicalized).
    pub fn parse_canonical(s: &str) -> Result<CycNum, CycError> {
        let bad = || CycError::Malformed(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut depth = 0;
        for i in 0..bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start => {
                    terms.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        let mut acc = CycNum::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let (coef, root) = match body.find("z(") {
                None => (body, None),
                Some(p) => {
                    let c = body[..p].trim_end_matches('*');
                    (c, Some(&body[p..]))
                }
            };
            let c: Rat = if coef.is_empty() {
                Rat::one()
            } else {
                coef.parse::<Rat>().map_err(|_| bad())?
            };
            let c = if sign < 0 { -c } else { c };
            let term = match root {
                None => CycNum::from_rat(c),
                Some(r) => {
                    let close = r.find(')').ok_or_else(bad)?;
                    let n: u32 = r[2..close].parse().map_err(|_| bad())?;
                    if n == 0 {
                        return Err(bad());
                    }
                    let rest = &r[close + 1..];
                    let k: i64 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    };
                    CycNum::root_of_unity(n, k).scale(&c)
                }
            };
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Human-oriented rendering: ω = ζ_3, η = ζ_5, i = ζ_4, otherwise ζn.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            let sym = root_symbol(self.n, *e);
            if sym.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    if a.is_integer() {
                        s.push_str(&a.to_string());
                    } else {
                        s.push_str(&format!("({a})"));
                    }
                }
                s.push_str(&sym);
            }
        }
        s
    }

    fn to_json_pairs(&self) -> Vec<(u32, [serde_json::Value; 2])> {
        self.coeffs
            .iter()
            .map(|(e, c)| (*e, [bigint_json(c.numer()), bigint_json(c.denom())]))
            .collect()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<CycNum, CycError> {
        let bad = |m: &str| CycError::Malformed(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected object"))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .filter(|&n| n >= 1 && n <= u32::MAX as u64)
            .ok_or_else(|| bad("missing conductor"))? as u32;
        let c = obj
            .get("c")
            .and_then(|x| x.as_object())
            .ok_or_else(|| bad("missing coefficients"))?;
        let mut dense = vec![Rat::zero(); n as usize];
        for (k, pair) in c {
            let e: u32 = k.parse().map_err(|_| bad("bad exponent"))?;
            if e >= n {
                return Err(bad("exponent out of range"));
            }
            let arr = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("bad coefficient"))?;
            let num = json_bigint(&arr[0]).ok_or_else(|| bad("bad numerator"))?;
            let den = json_bigint(&arr[1]).ok_or_else(|| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(CycError::DivisionByZero);
            }
            dense[e as usize] += Rat::new(num, den);
        }
        Ok(Self::canonical(n, dense))
    }
}

fn minimize(mut n: u32, mut v: Vec<Rat>) -> (u32, Vec<Rat>) {
    loop {
        if v.iter().skip(1).all(|c| c.is_zero()) {
            let c = v.into_iter().next().unwrap_or_else(Rat::zero);
            return (1, vec![c]);
        }
        let mut changed = false;
        for p in prime_factors(n) {
            let t = field_conductor(n / p);
            if t == n {
                continue;
            }
            if let Some(c) = try_descend(n, t, &v) {
                n = t;
                v = c;
                changed = true;
                break;
            }
        }
        if !changed {
            return (n, v);
        }
    }
}

fn superscript(k: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if k == 1 {
        return String::new();
    }
    k.to_string()
        .chars()
        .map(|c| D[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn root_symbol(n: u32, e: u32) -> String {
    if e == 0 {
        return String::new();
    }
    match n {
        3 => format!("ω{}", superscript(e)),
        4 => format!("i{}", superscript(e)),
        5 => format!("η{}", superscript(e)),
        9 if e.is_multiple_of(3) => format!("ω{}", superscript(e / 3)),
        15 => {
            // ζ_15^e = ω^a η^b with 5a + 3b ≡ e (mod 15)
            let a = (2 * e) % 3;
            let b = (2 * e) % 5;
            let mut s = String::new();
            if a > 0 {
                s.push_str(&format!("ω{}", superscript(a)));
            }
            if b > 0 {
                s.push_str(&format!("η{}", superscript(b)));
            }
            s
        }
        _ => format!(
            "ζ{}{}",
            n,
            if e == 1 {
                String::new()
            } else {
                format!("^{e}")
            }
        ),
    }
}

fn bigint_json(b: &BigInt) -> serde_json::Value {
    match b.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(b.to_string()),
    }
}

fn json_bigint(v: &serde_json::Value) -> Option<BigInt> {
    if let Some(x) = v.as_i64() {
        return Some(BigInt::from(x));
    }
    if let Some(x) = v.as_u64() {
        return Some(BigInt::from(x));
    }
    v.as_str().and_then(|s| s.parse().ok())
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [(u32, [serde_json::Value; 2])]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (e, pair) in self.0 {
                    m.serialize_entry(&e.to_string(), pair)?;
                }
                m.end()
            }
        }
        let pairs = self.to_json_pairs();
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("c", &Coeffs(&pairs))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CycNum::from_json_value(&v).map_err(D::Error::custom)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl From<i64> for CycNum {
    fn from(k: i64) -> Self {
        CycNum::from_int(k)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl std::ops::$tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $f(self, o: &CycNum) -> CycNum {
                self.$m(o)
            }
        }
        impl std::ops::$tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        let mut acc = CycAccum::new(1);
        for x in iter {
            acc.add(&x);
        }
        acc.finish()
    }
}

/// Dense accumulator in a fixed field, canonicalized once at the end.
#[derive(Clone, Debug)]
pub struct CycAccum {
    n: u32,
    v: Vec<Rat>,
}

impl CycAccum {
    pub fn new(n: u32) -> Self {
        CycAccum {
            n,
            v: vec![Rat::zero(); n as usize],
        }
    }

    fn grow(&mut self, m: u32) {
        if self.n.is_multiple_of(m) {
            return;
        }
        let l = self.n.lcm(&m);
        let step = l / self.n;
        let mut w = vec![Rat::zero(); l as usize];
        for (e, c) in self.v.drain(..).enumerate() {
            w[e * step as usize] = c;
        }
        self.n = l;
        self.v = w;
    }

    pub fn add(&mut self, x: &CycNum) {
        self.grow(x.n);
        x.add_into(self.n, &mut self.v, None);
    }

    pub fn add_scaled(&mut self, x: &CycNum, r: &Rat) {
        self.grow(x.n);
        x.add_into(self.n, &mut self.v, Some(r));
    }

    /// Adds `r·x·y`.
    pub fn add_product(&mut self, x: &CycNum, y: &CycNum, r: &Rat) {
        if x.is_zero() || y.is_zero() || r.is_zero() {
            return;
        }
        self.grow(x.n);
        self.grow(y.n);
        let (sx, sy) = (self.n / x.n, self.n / y.n);
        for (ex, cx) in &x.coeffs {
            let t = cx * r;
            for (ey, cy) in &y.coeffs {
                let idx = ((ex * sx + ey * sy) % self.n) as usize;
                self.v[idx] += &t * cy;
            }
        }
    }

    pub fn finish(self) -> CycNum {
        CycNum::canonical(self.n, self.v)
    }
}
