//! 2-blocks via central characters reduced into a finite field of characteristic 2.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::chartab::{CharTable, VirtualCharacter};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::permgroup::nu2;

/// Fixed defining polynomials of `GF(2^d)`, bit `i` = coefficient of `x^i`.
pub const GF2_POLYS: [u32; 12] = [
    0b11, 0b111, 0b1011, 0b10011, 0b100101, 0b1011011, 0b10000011, 0x11D, 0x211, 0x46F, 0x805,
    0x10EB,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2 {
    pub d: u32,
    poly: u32,
}

impl Gf2 {
    pub fn new(d: u32) -> Result<Gf2> {
        if d == 0 || d > 12 {
            return Err(Error::Unsupported(format!(
                "GF(2^{d}) outside the tabulated range"
            )));
        }
        Ok(Gf2 {
            d,
            poly: GF2_POLYS[d as usize - 1],
        })
    }

    pub fn size(&self) -> u32 {
        1 << self.d
    }

    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        if self.d == 1 {
            return a & b & 1;
        }
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.d) != 0 {
                a ^= self.poly;
            }
        }
        r
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn order(&self, a: u32) -> u64 {
        let n = (self.size() - 1) as u64;
        let mut best = n;
        for f in crate::exactnum::divisors(n as u32) {
            if self.pow(a, f as u64) == 1 {
                best = best.min(f as u64);
            }
        }
        best
    }

    /// Smallest generator of the multiplicative group (as a bit pattern).
    pub fn primitive_element(&self) -> u32 {
        let n = (self.size() - 1) as u64;
        (1..self.size())
            .find(|&a| self.order(a) == n)
            .expect("field has a primitive element")
    }
}

/// Ring map `Z_(2)[ζ_E] → GF(2^d)` sending `ζ_E` to a fixed element of order
/// the odd part of `E` (so 2-power roots of unity go to 1).
#[derive(Clone, Debug)]
pub struct Reduction {
    pub field: Gf2,
    pub exponent: u32,
    theta: u32,
}

impl Reduction {
    pub fn new(exponent: u32) -> Result<Reduction> {
        let m = exponent >> exponent.trailing_zeros();
        let d = (1..=12u32)
            .find(|&d| ((1u64 << d) - 1).is_multiple_of(m as u64))
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "odd part {m} of the exponent needs a field beyond GF(2^12)"
                ))
            })?;
        let field = Gf2::new(d)?;
        let g = field.primitive_element();
        let theta = field.pow(g, ((1u64 << d) - 1) / m as u64);
        Ok(Reduction {
            field,
            exponent,
            theta,
        })
    }

    pub fn reduce(&self, x: &CycNum) -> Result<u32> {
        let n = x.conductor();
        if !self.exponent.is_multiple_of(n) {
            return Err(Error::Invalid(format!(
                "conductor {n} does not divide the exponent"
            )));
        }
        let step = (self.exponent / n) as u64;
        let mut acc = 0u32;
        for (e, c) in x.coeffs() {
            if c.denom().is_even() {
                return Err(Error::Structural(format!("{x} is not integral at 2")));
            }
            // odd denominators are units mod 2
            let odd = (c.numer().abs() % 2u32).to_u32().unwrap_or(0) == 1;
            if odd {
                acc ^= self.field.pow(self.theta, *e as u64 * step);
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// Row indices of the character table, increasing.
    pub irr: Vec<usize>,
    pub defect: u32,
    /// Column of the defect group's involution, for defect-1 blocks.
    pub involution_class: Option<usize>,
}

/// Columns of odd element order.
pub fn p_regular_classes(t: &CharTable) -> Vec<usize> {
    (0..t.num_classes())
        .filter(|&c| t.classes()[c].elt_order % 2 == 1)
        .collect()
}

pub fn block_defect(irr: &[usize], t: &CharTable) -> u32 {
    let a = nu2(t.order() as u64);
    let m = irr.iter().map(|&i| nu2(t.degree(i))).min().unwrap_or(a);
    a - m
}

/// Partition of the irreducibles into 2-blocks; the principal block comes
/// first, the rest by smallest member.
pub fn block_partition(t: &CharTable) -> Result<Vec<Block>> {
    let red = Reduction::new(t.exponent())?;
    let k = t.num_classes();
    let mut keys: Vec<(Vec<u32>, usize)> = Vec::with_capacity(k);
    for i in 0..k {
        let key = (0..k)
            .map(|c| red.reduce(&t.central_character(i, c)))
            .collect::<Result<Vec<_>>>()?;
        keys.push((key, i));
    }
    let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for (key, i) in keys {
        match groups.iter_mut().find(|(k2, _)| *k2 == key) {
            Some((_, v)) => v.push(i),
            None => groups.push((key, vec![i])),
        }
    }
    let triv = t
        .trivial_row()
        .ok_or_else(|| Error::Invalid("table has no trivial character".into()))?;
    let mut blocks: Vec<Block> = groups
        .into_iter()
        .map(|(_, irr)| {
            let defect = block_defect(&irr, t);
            Block {
                irr,
                defect,
                involution_class: None,
            }
        })
        .collect();
    blocks.sort_by_key(|b| (!b.irr.contains(&triv), b.irr[0]));
    for b in blocks.iter_mut() {
        if b.defect == 1 {
            b.involution_class = Some(defect1_trivial_source_rows(b, t)?.involution_class);
        }
    }
    Ok(blocks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect1Rows {
    pub simple: VirtualCharacter,
    pub pim: VirtualCharacter,
    pub involution_class: usize,
}

/// The two trivial source characters of a defect-1 block: the PIM (sum of
/// both characters) and the simple module with vertex the defect group,
/// identified by its positive value at that involution.
pub fn defect1_trivial_source_rows(b: &Block, t: &CharTable) -> Result<Defect1Rows> {
    if b.irr.len() != 2 {
        return Err(Error::Structural(format!(
            "defect-1 block with {} characters",
            b.irr.len()
        )));
    }
    let invs: Vec<usize> = (0..t.num_classes())
        .filter(|&c| t.classes()[c].elt_order == 2)
        .collect();
    let mut hits = Vec::new();
    for &i in &b.irr {
        for &c in &invs {
            if t.value(i, c).try_integer().is_some_and(|v| v.is_positive()) {
                hits.push((i, c));
            }
        }
    }
    if hits.len() != 1 {
        return Err(Error::Structural(format!(
            "expected one positive involution value in block {:?}, found {}",
            b.irr.iter().map(|i| i + 1).collect::<Vec<_>>(),
            hits.len()
        )));
    }
    let (i, c) = hits[0];
    Ok(Defect1Rows {
        simple: VirtualCharacter::irr(i),
        pim: VirtualCharacter::sum_of(&b.irr),
        involution_class: c,
    })
}

/// Whether a class function vanishes on every class of even element order.
pub fn vanishes_off_regular(t: &CharTable, f: &[CycNum]) -> bool {
    (0..t.num_classes()).all(|c| t.classes()[c].elt_order % 2 == 1 || f[c].is_zero())
}
