//! Brute-force permutation groups: every element is enumerated.
//!
//! Products are read left to right: `a.mul(b)` applies `a` first, then `b`.
//! Conjugation is `x^g = g⁻¹ x g`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 5000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let d = images.len();
        if d > u16::MAX as usize {
            return Err(Error::Invalid("degree too large".into()));
        }
        let mut seen = vec![false; d];
        for &i in images {
            if i >= d || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&i| i as u16).collect(),
        })
    }

    /// From 1-based images, the file format convention.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::Invalid(format!(
                "point 0 in 1-based permutation {images:?}"
            )));
        }
        Perm::from_images(&images.iter().map(|&i| i - 1).collect::<Vec<_>>())
    }

    /// From 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut im: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                let q = c[(k + 1) % c.len()];
                if p == 0 || p > degree || q == 0 || q > degree || touched[p - 1] {
                    return Err(Error::Invalid(format!("bad cycle {c:?}")));
                }
                touched[p - 1] = true;
                im[p - 1] = q - 1;
            }
        }
        Perm::from_images(&im)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// First element of the class in enumeration order.
    pub rep: usize,
    pub size: usize,
    pub order: u32,
    pub elements: Vec<usize>,
}

/// Subset of a group's elements (indices), kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    fn from_members(member: Vec<bool>) -> Subgroup {
        let elements = (0..member.len()).filter(|&i| member[i]).collect();
        Subgroup { elements, member }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member[g]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    gen_idx: Vec<usize>,
    name: Option<String>,
}

/// Regular action of `K/Q` on cosets together with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// `projection[k]` = quotient element index of the coset of element `k`.
    pub projection: Vec<usize>,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        Self::with_bound(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Invalid(format!("generator {g} has wrong degree")));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &generators {
                let y = x.mul(g);
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::OrderBound(bound));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let gen_idx = generators.iter().map(|g| index[g]).collect();
        let mut grp = PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            orders,
            classes: Vec::new(),
            class_of: Vec::new(),
            gen_idx,
            name: None,
        };
        grp.compute_classes();
        Ok(grp)
    }

    pub fn named(mut self, name: &str) -> PermGroup {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    fn compute_classes(&mut self) {
        let n = self.elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<ConjClass> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut elems = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &self.gen_idx {
                    let y = self.conj(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        elems.push(y);
                        queue.push_back(y);
                    }
                }
            }
            elems.sort_unstable();
            raw.push(ConjClass {
                rep: start,
                size: elems.len(),
                order: self.orders[start],
                elements: elems,
            });
        }
        raw.sort_by_key(|c| (c.order, c.size, c.rep));
        for (i, c) in raw.iter().enumerate() {
            for &e in &c.elements {
                class_of[e] = i;
            }
        }
        self.classes = raw;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        let p = self.elements[self.inverses[g]]
            .mul(&self.elements[x])
            .mul(&self.elements[g]);
        self.index[&p]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let ord = self.orders[a] as i64;
        let k = k.rem_euclid(ord);
        let mut p = Perm::identity(self.degree);
        for _ in 0..k {
            p = p.mul(&self.elements[a]);
        }
        self.index[&p]
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn exponent(&self) -> u32 {
        self.orders
            .iter()
            .fold(1u32, |a, &b| num_integer::lcm(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Splits `a` into commuting 2-part and 2'-part, both powers of `a`.
    pub fn p_part(&self, a: usize) -> (usize, usize) {
        let m = self.orders[a] as i64;
        let mut two = 1i64;
        while m % (two * 2) == 0 {
            two *= 2;
        }
        let odd = m / two;
        // e ≡ 1 mod two, e ≡ 0 mod odd
        let e = (0..m)
            .find(|&e| e % two == 1 % two && e % odd == 0)
            .unwrap_or(0);
        let f = (0..m)
            .find(|&f| f % two == 0 && f % odd == 1 % odd)
            .unwrap_or(0);
        (self.pow(a, e), self.pow(a, f))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(vec![true; self.order()])
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut m = vec![false; self.order()];
        m[0] = true;
        Subgroup::from_members(m)
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_members(member)
    }

    /// Checks closure; returns the subgroup if the set is one.
    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Result<Subgroup> {
        let mut member = vec![false; self.order()];
        for &e in elems {
            member[e] = true;
        }
        let s = Subgroup::from_members(member);
        for &a in s.elements() {
            for &b in s.elements() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::Invalid("element set is not a subgroup".into()));
                }
            }
        }
        if !s.contains(0) {
            return Err(Error::Invalid("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut member = vec![false; self.order()];
        for &x in h.elements() {
            member[self.conj(x, g)] = true;
        }
        Subgroup::from_members(member)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut member = vec![false; self.order()];
        for g in 0..self.order() {
            member[g] = h.elements().iter().all(|&x| h.contains(self.conj(x, g)));
        }
        Subgroup::from_members(member)
    }

    pub fn centralizer(&self, xs: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order()];
        for g in 0..self.order() {
            member[g] = xs.iter().all(|&x| self.mul(x, g) == self.mul(g, x));
        }
        Subgroup::from_members(member)
    }

    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subset_of(k)
            && k.elements()
                .iter()
                .all(|&g| h.elements().iter().all(|&x| h.contains(self.conj(x, g))))
    }

    /// First `g` (enumeration order) with `a^g = b`.
    pub fn subgroup_conjugator(&self, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        (0..self.order()).find(|&g| a.elements().iter().all(|&x| b.contains(self.conj(x, g))))
    }

    pub fn is_conjugate_subgroup(&self, a: &Subgroup, b: &Subgroup) -> bool {
        self.subgroup_conjugator(a, b).is_some()
    }

    /// Whether some conjugate of `a` lies in `b`.
    pub fn is_subconjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        if !b.order().is_multiple_of(a.order()) {
            return false;
        }
        (0..self.order()).any(|g| a.elements().iter().all(|&x| b.contains(self.conj(x, g))))
    }

    /// The subgroup as a group of its own, generated greedily from its
    /// elements in enumeration order.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        let mut gens: Vec<usize> = Vec::new();
        let mut cur = self.trivial_subgroup();
        for &x in h.elements() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.subgroup_generated(&gens);
                if cur.order() == h.order() {
                    break;
                }
            }
        }
        let perms = gens.iter().map(|&g| self.elements[g].clone()).collect();
        PermGroup::with_bound(self.degree, perms, usize::MAX).expect("subgroup of a valid group")
    }

    /// Quotient by a normal subgroup: the regular action on its cosets.
    pub fn quotient(&self, q: &Subgroup) -> Result<Quotient> {
        if !self.is_normal_in(q, &self.whole()) {
            return Err(Error::Invalid("quotient by a non-normal subgroup".into()));
        }
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &x in q.elements() {
                coset[self.mul(g, x)] = id;
            }
        }
        let action = |k: usize| -> Perm {
            let im: Vec<usize> = reps.iter().map(|&r| coset[self.mul(r, k)]).collect();
            Perm::from_images(&im).expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = self.gen_idx.iter().map(|&g| action(g)).collect();
        let group = PermGroup::with_bound(reps.len(), gens, usize::MAX)?;
        let mut projection = vec![0usize; n];
        // elements in one coset act identically, so evaluate once per coset
        let mut by_coset = vec![usize::MAX; reps.len()];
        for k in 0..n {
            let c = coset[k];
            if by_coset[c] == usize::MAX {
                by_coset[c] = group.index_of(&action(k)).expect("image lies in quotient");
            }
            projection[k] = by_coset[c];
        }
        Ok(Quotient { group, projection })
    }

    /// A Sylow 2-subgroup, for 2-parts up to 4.
    pub fn sylow_2_subgroup(&self) -> Result<Subgroup> {
        let two = two_part(self.order());
        match two {
            1 => Ok(self.trivial_subgroup()),
            2 => {
                let x = (0..self.order())
                    .find(|&g| self.orders[g] == 2)
                    .expect("Cauchy");
                Ok(self.subgroup_generated(&[x]))
            }
            4 => {
                if let Some(x) = (0..self.order()).find(|&g| self.orders[g] == 4) {
                    let _ = x;
                    return Err(Error::Unsupported(
                        "cyclic Sylow 2-subgroup of order 4".into(),
                    ));
                }
                let inv: Vec<usize> = (0..self.order()).filter(|&g| self.orders[g] == 2).collect();
                for (i, &x) in inv.iter().enumerate() {
                    for &y in &inv[i + 1..] {
                        if self.mul(x, y) == self.mul(y, x) {
                            return Ok(self.subgroup_generated(&[x, y]));
                        }
                    }
                }
                Err(Error::Structural("no Klein four subgroup found".into()))
            }
            t => Err(Error::Unsupported(format!(
                "Sylow 2-subgroup of order {t} (> 4)"
            ))),
        }
    }

    /// Representatives of the classes of 2-subgroups, by increasing order.
    pub fn two_subgroup_classes(&self) -> Result<Vec<SubgroupClassInfo>> {
        let p = self.sylow_2_subgroup()?;
        let mut out = vec![SubgroupClassInfo::new(self, &[], None)?];
        if p.order() == 1 {
            return Ok(out);
        }
        let mut invs: Vec<usize> = p.elements().iter().copied().filter(|&g| g != 0).collect();
        // one representative per G-class of involutions meeting P, in class order
        invs.sort_by_key(|&x| (self.class_of(x), x));
        let mut seen = Vec::new();
        for &x in &invs {
            let c = self.class_of(x);
            if !seen.contains(&c) {
                seen.push(c);
                out.push(SubgroupClassInfo::new(self, &[x], None)?);
            }
        }
        if p.order() == 4 {
            let gens: Vec<usize> = p
                .elements()
                .iter()
                .copied()
                .filter(|&g| g != 0)
                .take(2)
                .collect();
            out.push(SubgroupClassInfo::new(self, &gens, None)?);
        }
        Ok(out)
    }
}

pub fn two_part(n: usize) -> usize {
    let mut t = 1;
    while n.is_multiple_of(t * 2) {
        t *= 2;
    }
    t
}

pub fn nu2(n: u64) -> u32 {
    if n == 0 {
        return 0;
    }
    n.trailing_zeros()
}

/// One class of 2-subgroups with its local data.
#[derive(Clone, Debug)]
pub struct SubgroupClassInfo {
    pub subgroup: Subgroup,
    /// Generators as element indices of the ambient group.
    pub generators: Vec<usize>,
    pub normalizer: Subgroup,
    /// `N_G(Q)` as a group of its own.
    pub normalizer_group: PermGroup,
    /// `N_G(Q)/Q`; the projection is indexed by `normalizer_group` elements.
    pub quotient: Quotient,
    /// Odd-order elements of `N_G(Q)` (ambient indices), one per 2'-class of the quotient.
    pub p_prime_reps: Vec<usize>,
    /// For each rep, the class of its image in the quotient.
    pub quotient_classes: Vec<usize>,
}

impl SubgroupClassInfo {
    /// Builds the local data for `Q = ⟨gens⟩`. If `reps` is given it must be a
    /// full set of lifted 2'-class representatives; otherwise they are chosen
    /// in the quotient's class order.
    pub fn new(g: &PermGroup, gens: &[usize], reps: Option<&[usize]>) -> Result<SubgroupClassInfo> {
        let subgroup = g.subgroup_generated(gens);
        if two_part(subgroup.order()) != subgroup.order() {
            return Err(Error::Invalid("vertex is not a 2-subgroup".into()));
        }
        let normalizer = g.normalizer(&subgroup);
        let (normalizer_group, quotient) = if subgroup.order() == 1 {
            let ng = g.clone();
            let proj = (0..g.order()).collect();
            (
                ng.clone(),
                Quotient {
                    group: ng,
                    projection: proj,
                },
            )
        } else {
            let ng = g.subgroup_as_group(&normalizer);
            let qn: Vec<usize> = subgroup
                .elements()
                .iter()
                .map(|&x| ng.index_of(g.element(x)).unwrap())
                .collect();
            let qs = ng.subgroup_from_elements(&qn)?;
            let quot = ng.quotient(&qs)?;
            (ng, quot)
        };
        let to_local = |x: usize| normalizer_group.index_of(g.element(x));
        let qgrp = &quotient.group;
        let odd_classes: Vec<usize> = (0..qgrp.classes().len())
            .filter(|&c| qgrp.classes()[c].order % 2 == 1)
            .collect();
        let (p_prime_reps, quotient_classes) = match reps {
            Some(r) => {
                let mut qc = Vec::new();
                for &s in r {
                    let loc = to_local(s)
                        .ok_or_else(|| Error::Invalid("rep outside normalizer".into()))?;
                    if g.element_order(s).is_multiple_of(2) {
                        return Err(Error::Invalid("rep of even order".into()));
                    }
                    qc.push(qgrp.class_of(quotient.projection[loc]));
                }
                let mut sorted = qc.clone();
                sorted.sort_unstable();
                if sorted != odd_classes {
                    return Err(Error::Invalid(
                        "reps do not cover the 2'-classes of the quotient".into(),
                    ));
                }
                (r.to_vec(), qc)
            }
            None => {
                let mut reps = Vec::new();
                for &c in &odd_classes {
                    let target = qgrp.classes()[c].rep;
                    let pre = normalizer
                        .elements()
                        .iter()
                        .copied()
                        .find(|&x| quotient.projection[to_local(x).unwrap()] == target)
                        .expect("projection is onto");
                    reps.push(g.p_part(pre).1);
                }
                (reps, odd_classes)
            }
        };
        Ok(SubgroupClassInfo {
            subgroup,
            generators: gens.to_vec(),
            normalizer,
            normalizer_group,
            quotient,
            p_prime_reps,
            quotient_classes,
        })
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    /// Index of an ambient element inside `normalizer_group`.
    pub fn local_index(&self, g: &PermGroup, x: usize) -> Option<usize> {
        self.normalizer_group.index_of(g.element(x))
    }
}

// ---------------------------------------------------------------------------
// constructors

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup) -> GroupFile {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.one_based()).collect(),
            name: g.name().map(String::from),
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|im| {
                if im.len() != self.degree {
                    return Err(Error::Invalid(
                        "generator length differs from degree".into(),
                    ));
                }
                Perm::from_one_based(im)
            })
            .collect::<Result<Vec<_>>>()?;
        let g = PermGroup::from_generators(self.degree, gens)?;
        Ok(match &self.name {
            Some(n) => g.named(n),
            None => g,
        })
    }
}

pub fn group_from_generators(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
    PermGroup::from_generators(degree, generators)
}

fn cyc(d: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(d, cycles).expect("valid builtin cycle")
}

pub fn v4_group() -> PermGroup {
    PermGroup::from_generators(
        4,
        vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])],
    )
    .unwrap()
    .named("v4")
}

pub fn a4_group() -> PermGroup {
    PermGroup::from_generators(4, vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 2, 3]])])
        .unwrap()
        .named("a4")
}

pub fn a5_group() -> PermGroup {
    PermGroup::from_generators(5, vec![cyc(5, &[&[1, 2], &[3, 4]]), cyc(5, &[&[1, 3, 5]])])
        .unwrap()
        .named("a5")
}

/// `D_{4v}` on `2v` points: `r` the `2v`-cycle, `s` the reflection `i ↦ -i`.
pub fn dihedral_group(v: usize) -> Result<PermGroup> {
    if v < 3 || v.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "D_4v needs odd v >= 3, got {v}"
        )));
    }
    let n = 2 * v;
    let r = Perm::from_images(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>())?;
    let s = Perm::from_images(&(0..n).map(|i| (n - i) % n).collect::<Vec<_>>())?;
    Ok(PermGroup::from_generators(n, vec![r, s])?.named(&format!("d4v:{v}")))
}

/// The generators `r`, `s` of [`dihedral_group`] as element indices.
pub fn dihedral_rs(g: &PermGroup) -> (usize, usize) {
    let gens = g.generators();
    (g.index_of(&gens[0]).unwrap(), g.index_of(&gens[1]).unwrap())
}

/// `C_3^4 ⋊ A_4`, order 972, on 12 points.
pub fn ex972_group() -> PermGroup {
    let d = 12;
    let mut gens = vec![
        cyc(d, &[&[1, 2, 3]]),
        cyc(d, &[&[4, 5, 6]]),
        cyc(d, &[&[7, 8, 9]]),
        cyc(d, &[&[10, 11, 12]]),
    ];
    // A4 acting on the four blocks: (1,2)(3,4) and (2,3,4)
    gens.push(cyc(
        d,
        &[&[1, 4], &[2, 5], &[3, 6], &[7, 10], &[8, 11], &[9, 12]],
    ));
    gens.push(cyc(d, &[&[4, 7, 10], &[5, 8, 11], &[6, 9, 12]]));
    PermGroup::from_generators(d, gens).unwrap().named("ex972")
}

/// Resolves a builtin group name: `v4`, `a4`, `a5`, `d4v:<v>`, `ex972`.
pub fn builtin_group(name: &str) -> Result<PermGroup> {
    match name {
        "v4" => Ok(v4_group()),
        "a4" => Ok(a4_group()),
        "a5" => Ok(a5_group()),
        "ex972" => Ok(ex972_group()),
        _ => {
            if let Some(v) = name.strip_prefix("d4v:") {
                let v: usize = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad d4v parameter in {name}")))?;
                dihedral_group(v)
            } else {
                Err(Error::Invalid(format!("unknown builtin group {name}")))
            }
        }
    }
}
