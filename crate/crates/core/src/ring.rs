//! Finite associative unital rings given by structure constants over an
//! additive generating set.
//!
//! Elements are `usize` indices. Index order is the lexicographic order of
//! coefficient vectors and is part of the public contract: witnesses reported
//! anywhere in the crate refer to this order.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::abelian::{present_quotient, present_subgroup, Radix};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Index of a ring element in enumeration order.
pub type RingElem = usize;

const TABLE_LIMIT: usize = 1024;

/// Recipe for building a ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescription {
    /// The integers modulo `n`.
    Zmod { n: u64 },
    /// Direct product of rings.
    Product { factors: Vec<RingDescription> },
    /// `Z/n[x]/(f)` for a monic `f`, coefficients listed from the constant term up.
    PolyQuotient { n: u64, coefficients: Vec<u64> },
    /// Upper triangular `size x size` matrices over the field with `q` elements.
    UpperTriangular { q: u64, size: u64 },
    /// Raw structure constants: `mul_table[i][j]` is the coefficient vector of `b_i * b_j`.
    StructureConstants {
        additive_orders: Vec<u64>,
        mul_table: Vec<Vec<Vec<u64>>>,
        one: Vec<u64>,
    },
}

impl RingDescription {
    pub fn zmod(n: u64) -> Self {
        RingDescription::Zmod { n }
    }

    pub fn product(factors: Vec<RingDescription>) -> Self {
        RingDescription::Product { factors }
    }

    pub fn poly_quotient(n: u64, coefficients: Vec<u64>) -> Self {
        RingDescription::PolyQuotient { n, coefficients }
    }

    pub fn upper_triangular(q: u64, size: u64) -> Self {
        RingDescription::UpperTriangular { q, size }
    }

    /// Short human-readable label such as `zmod(6)`.
    pub fn label(&self) -> String {
        match self {
            RingDescription::Zmod { n } => format!("zmod({n})"),
            RingDescription::Product { factors } => format!(
                "product({})",
                factors
                    .iter()
                    .map(|f| f.label())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            RingDescription::PolyQuotient { n, coefficients } => {
                format!("poly_quotient({n},{})", poly_label(coefficients))
            }
            RingDescription::UpperTriangular { q, size } => format!("upper_triangular({q},{size})"),
            RingDescription::StructureConstants {
                additive_orders, ..
            } => format!("structure_constants({additive_orders:?})"),
        }
    }
}

fn poly_label(coefficients: &[u64]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coefficients.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{e}"),
        };
        terms.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// A validated finite ring.
#[derive(Clone)]
pub struct FiniteRing {
    radix: Radix,
    products: Vec<usize>,
    product_coeffs: Vec<Vec<u64>>,
    one: usize,
    commutative: bool,
    table: Option<Vec<u32>>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.radix == other.radix
            && self.product_coeffs == other.product_coeffs
            && self.one == other.one
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("additive_orders", &self.radix.orders())
            .field("order", &self.order())
            .field("commutative", &self.commutative)
            .finish()
    }
}

/// Builds and validates a ring from a recipe under default limits.
pub fn build_ring(desc: &RingDescription) -> Result<FiniteRing> {
    build_ring_with(desc, &Limits::default())
}

pub fn build_ring_with(desc: &RingDescription, limits: &Limits) -> Result<FiniteRing> {
    let (orders, table, one) = raw_constants(desc, limits)?;
    FiniteRing::from_structure_constants(&orders, &table, &one, limits)
}

type RawConstants = (Vec<u64>, Vec<Vec<Vec<u64>>>, Vec<u64>);

fn raw_constants(desc: &RingDescription, limits: &Limits) -> Result<RawConstants> {
    match desc {
        RingDescription::Zmod { n } => {
            if *n == 0 {
                return Err(Error::InvalidParameter("zmod needs n >= 1".into()));
            }
            Ok((vec![*n], vec![vec![vec![1 % n]]], vec![1 % n]))
        }
        RingDescription::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::InvalidParameter("product of no rings".into()));
            }
            let parts = factors
                .iter()
                .map(|f| raw_constants(f, limits))
                .collect::<Result<Vec<_>>>()?;
            let k: usize = parts.iter().map(|p| p.0.len()).sum();
            let mut orders = Vec::with_capacity(k);
            let mut table = vec![vec![vec![0; k]; k]; k];
            let mut one = Vec::with_capacity(k);
            let mut offset = 0;
            for (o, t, u) in &parts {
                let kk = o.len();
                for i in 0..kk {
                    for j in 0..kk {
                        for l in 0..kk {
                            table[offset + i][offset + j][offset + l] = t[i][j][l];
                        }
                    }
                }
                orders.extend_from_slice(o);
                one.extend_from_slice(u);
                offset += kk;
            }
            Ok((orders, table, one))
        }
        RingDescription::PolyQuotient { n, coefficients } => poly_quotient_constants(*n, coefficients),
        RingDescription::UpperTriangular { q, size } => upper_triangular_constants(*q, *size, limits),
        RingDescription::StructureConstants {
            additive_orders,
            mul_table,
            one,
        } => Ok((additive_orders.clone(), mul_table.clone(), one.clone())),
    }
}

fn poly_quotient_constants(n: u64, coefficients: &[u64]) -> Result<RawConstants> {
    if n == 0 {
        return Err(Error::InvalidParameter("poly_quotient needs n >= 1".into()));
    }
    if coefficients.len() < 2 {
        return Err(Error::InvalidParameter(
            "poly_quotient needs a polynomial of degree >= 1".into(),
        ));
    }
    let d = coefficients.len() - 1;
    if coefficients[d] % n != 1 % n || (n > 1 && coefficients[d] % n != 1) {
        return Err(Error::InvalidParameter(format!(
            "polynomial {} is not monic",
            poly_label(coefficients)
        )));
    }
    let f: Vec<u64> = coefficients.iter().map(|c| c % n).collect();
    let reduce = |mut p: Vec<u64>| -> Vec<u64> {
        for e in (d..p.len()).rev() {
            let c = p[e] % n;
            p[e] = 0;
            if c == 0 {
                continue;
            }
            for k in 0..d {
                let idx = e - d + k;
                p[idx] = (p[idx] + (n - c) * f[k]) % n;
            }
        }
        p.truncate(d);
        p
    };
    let mut table = vec![vec![vec![0; d]; d]; d];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut p = vec![0; 2 * d];
            p[i + j] = 1 % n;
            *cell = reduce(p);
        }
    }
    let mut one = vec![0; d];
    one[0] = 1 % n;
    Ok((vec![n; d], table, one))
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..).find(|p| p * p > q || q % p == 0).map_or(q, |p| if p * p > q { q } else { p })
}

fn upper_triangular_constants(q: u64, size: u64, limits: &Limits) -> Result<RawConstants> {
    if size == 0 {
        return Err(Error::InvalidParameter("upper_triangular needs size >= 1".into()));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let p = smallest_prime_factor(q);
    let mut k = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let positions = size * (size + 1) / 2;
    let total = (q as u128).checked_pow(positions as u32).unwrap_or(u128::MAX);
    limits.check_elements("upper triangular ring", total)?;
    let (field_orders, field_table, field_one) = finite_field_constants(p, k, limits)?;
    let fd = field_orders.len();
    let size = size as usize;
    let pos: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (i..size).map(move |j| (i, j)))
        .collect();
    let index = |i: usize, j: usize| pos.iter().position(|&x| x == (i, j)).unwrap();
    let dim = pos.len() * fd;
    let mut table = vec![vec![vec![0; dim]; dim]; dim];
    for (a, &(i, j)) in pos.iter().enumerate() {
        for (b, &(jj, l)) in pos.iter().enumerate() {
            if j != jj {
                continue;
            }
            let c = index(i, l);
            for fa in 0..fd {
                for fb in 0..fd {
                    let prod = &field_table[fa][fb];
                    for fc in 0..fd {
                        table[a * fd + fa][b * fd + fb][c * fd + fc] = prod[fc];
                    }
                }
            }
        }
    }
    let mut one = vec![0; dim];
    for i in 0..size {
        let c = index(i, i);
        for fc in 0..fd {
            one[c * fd + fc] = field_one[fc];
        }
    }
    Ok((vec![p; dim], table, one))
}

/// Structure constants of the field with `p^k` elements, using the
/// lexicographically first monic polynomial of degree `k` that yields a field.
fn finite_field_constants(p: u64, k: u32, limits: &Limits) -> Result<RawConstants> {
    if k == 1 {
        return raw_constants(&RingDescription::zmod(p), limits);
    }
    let count = p.pow(k);
    for code in 0..count {
        let mut coeffs: Vec<u64> = (0..k).map(|e| (code / p.pow(e)) % p).collect();
        coeffs.push(1);
        let (o, t, u) = poly_quotient_constants(p, &coeffs)?;
        let ring = FiniteRing::from_structure_constants(&o, &t, &u, limits)?;
        if ring.units().len() == ring.order() - 1 {
            return Ok((o, t, u));
        }
    }
    Err(Error::InvalidParameter(format!(
        "no field of order {p}^{k} found"
    )))
}

impl FiniteRing {
    /// Validates raw structure constants and builds the ring.
    ///
    /// Every invariant is checked eagerly: coefficient ranges, well-definedness
    /// of the bilinear extension, associativity on basis triples and unity.
    pub fn from_structure_constants(
        orders: &[u64],
        table: &[Vec<Vec<u64>>],
        one: &[u64],
        limits: &Limits,
    ) -> Result<Self> {
        let radix = Radix::new(orders, limits.max_elements, "ring")?;
        let k = orders.len();
        let bad = |msg: String| Err(Error::InvalidStructure(msg));
        if table.len() != k || table.iter().any(|row| row.len() != k) {
            return bad(format!("multiplication table must be {k}x{k}"));
        }
        if one.len() != k {
            return bad(format!("unity must have {k} coefficients"));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.len() != k {
                    return bad(format!("b{i}*b{j} must have {k} coefficients"));
                }
                if let Some((l, c)) = v.iter().enumerate().find(|(l, &c)| c >= orders[*l]) {
                    return bad(format!(
                        "coefficient {c} of b{i}*b{j} out of range for coordinate {l} (order {})",
                        orders[l]
                    ));
                }
            }
        }
        if let Some((l, c)) = one.iter().enumerate().find(|(l, &c)| c >= orders[*l]) {
            return bad(format!("unity coefficient {c} out of range for coordinate {l}"));
        }

        let products: Vec<usize> = table
            .iter()
            .flat_map(|row| row.iter().map(|v| radix.encode(v)))
            .collect();
        let product_coeffs: Vec<Vec<u64>> = table.iter().flat_map(|row| row.iter().cloned()).collect();

        for i in 0..k {
            for j in 0..k {
                let x = products[i * k + j];
                if radix.scale(x, orders[i]) != 0 || radix.scale(x, orders[j]) != 0 {
                    return bad(format!(
                        "b{i}*b{j} is not annihilated by the additive orders {} and {}",
                        orders[i], orders[j]
                    ));
                }
            }
        }

        let mut ring = FiniteRing {
            one: radix.encode(one),
            radix,
            products,
            product_coeffs,
            commutative: false,
            table: None,
        };

        for i in 0..k {
            let b = ring.radix.unit(i);
            if ring.mul_slow(ring.one, b) != b || ring.mul_slow(b, ring.one) != b {
                return bad(format!("unity does not act as identity on b{i}"));
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let (bi, bj, bl) = (ring.radix.unit(i), ring.radix.unit(j), ring.radix.unit(l));
                    let left = ring.mul_slow(ring.mul_slow(bi, bj), bl);
                    let right = ring.mul_slow(bi, ring.mul_slow(bj, bl));
                    if left != right {
                        return bad(format!(
                            "associativity fails on basis triple (b{i}, b{j}, b{l})"
                        ));
                    }
                }
            }
        }
        ring.commutative = (0..k).all(|i| (0..k).all(|j| ring.products[i * k + j] == ring.products[j * k + i]));
        let n = ring.order();
        if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = ring.mul_slow(x, y) as u32;
                }
            }
            ring.table = Some(t);
        }
        Ok(ring)
    }

    fn mul_slow(&self, x: usize, y: usize) -> usize {
        let k = self.radix.dim();
        let xc = self.radix.decode(x);
        let yc = self.radix.decode(y);
        let mut acc = vec![0u64; k];
        for i in 0..k {
            if xc[i] == 0 {
                continue;
            }
            for j in 0..k {
                if yc[j] == 0 {
                    continue;
                }
                let c = xc[i] * yc[j];
                let prod = &self.product_coeffs[i * k + j];
                for l in 0..k {
                    if prod[l] != 0 {
                        acc[l] = (acc[l] + c * prod[l]) % self.radix.orders()[l];
                    }
                }
            }
        }
        self.radix.encode(&acc)
    }

    /// `|R|`.
    #[inline]
    pub fn order(&self) -> usize {
        self.radix.size()
    }

    /// Additive orders `n_1..n_k` of the generators `b_1..b_k`.
    pub fn additive_orders(&self) -> &[u64] {
        self.radix.orders()
    }

    /// Number of additive generators.
    pub fn basis_len(&self) -> usize {
        self.radix.dim()
    }

    /// The additive generator `b_i` as an element.
    pub fn basis_element(&self, i: usize) -> RingElem {
        self.radix.unit(i)
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> Range<RingElem> {
        0..self.order()
    }

    pub fn zero(&self) -> RingElem {
        0
    }

    pub fn one(&self) -> RingElem {
        self.one
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn coeffs(&self, x: RingElem) -> Vec<u64> {
        self.radix.decode(x)
    }

    /// Coefficient `i` of `x`.
    pub fn coeff(&self, x: RingElem, i: usize) -> u64 {
        self.radix.digit(x, i)
    }

    /// Element with the given coefficients (reduced modulo the additive orders).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<RingElem> {
        if coeffs.len() != self.basis_len() {
            return Err(Error::InvalidParameter(format!(
                "ring element needs {} coefficients, got {}",
                self.basis_len(),
                coeffs.len()
            )));
        }
        Ok(self.radix.encode(coeffs))
    }

    #[inline]
    pub fn add(&self, x: RingElem, y: RingElem) -> RingElem {
        self.radix.add(x, y)
    }

    #[inline]
    pub fn neg(&self, x: RingElem) -> RingElem {
        self.radix.neg(x)
    }

    #[inline]
    pub fn sub(&self, x: RingElem, y: RingElem) -> RingElem {
        self.radix.sub(x, y)
    }

    #[inline]
    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        match &self.table {
            Some(t) => t[x * self.order() + y] as usize,
            None => self.mul_slow(x, y),
        }
    }

    pub fn pow(&self, x: RingElem, n: u32) -> RingElem {
        (0..n).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// Integer multiple `c * x`.
    pub fn scale(&self, x: RingElem, c: u64) -> RingElem {
        self.radix.scale(x, c)
    }

    /// Additive subgroup generated by `gens`.
    pub fn additive_span(&self, gens: &[RingElem]) -> ElemSet {
        self.radix.span(gens)
    }

    pub(crate) fn radix(&self) -> &Radix {
        &self.radix
    }

    /// Renders an element as its coefficient vector (`2` or `(1,0,1)`).
    pub fn format_element(&self, x: RingElem) -> String {
        format_coeffs(&self.coeffs(x))
    }

    pub fn is_central(&self, x: RingElem) -> bool {
        (0..self.basis_len()).all(|i| {
            let b = self.basis_element(i);
            self.mul(x, b) == self.mul(b, x)
        })
    }

    /// Left and right annihilators `l_R(a) = {x : xa = 0}` and `r_R(a) = {x : ax = 0}`.
    pub fn annihilators(&self, a: RingElem) -> (ElemSet, RightIdeal) {
        let l = ElemSet::from_indices(self.order(), self.elements().filter(|&x| self.mul(x, a) == 0));
        let r = ElemSet::from_indices(self.order(), self.elements().filter(|&x| self.mul(a, x) == 0));
        let gens = self.radix.greedy_generators(&r);
        (l, RightIdeal { elements: r, generators: gens })
    }

    /// Right annihilator of an arbitrary set: `{x : Xx = 0}`.
    pub fn right_annihilator_of(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.order(),
            self.elements().filter(|&x| set.iter().all(|s| self.mul(s, x) == 0)),
        )
    }

    /// Left annihilator of an arbitrary set: `{x : xX = 0}`.
    pub fn left_annihilator_of(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.order(),
            self.elements().filter(|&x| set.iter().all(|s| self.mul(x, s) == 0)),
        )
    }

    /// The right ideal `gR + hR + ...`.
    pub fn right_ideal_generated(&self, gens: &[RingElem]) -> RightIdeal {
        let additive: Vec<RingElem> = gens
            .iter()
            .flat_map(|&g| (0..self.basis_len()).map(move |i| (g, i)))
            .map(|(g, i)| self.mul(g, self.basis_element(i)))
            .collect();
        RightIdeal {
            elements: self.additive_span(&additive),
            generators: gens.to_vec(),
        }
    }

    /// The left ideal `Rg + Rh + ...`.
    pub fn left_ideal_generated(&self, gens: &[RingElem]) -> ElemSet {
        let additive: Vec<RingElem> = gens
            .iter()
            .flat_map(|&g| (0..self.basis_len()).map(move |i| (g, i)))
            .map(|(g, i)| self.mul(self.basis_element(i), g))
            .collect();
        self.additive_span(&additive)
    }

    /// The two-sided ideal `RgR + ...`.
    pub fn two_sided_ideal_generated(&self, gens: &[RingElem]) -> ElemSet {
        let k = self.basis_len();
        let additive: Vec<RingElem> = gens
            .iter()
            .flat_map(|&g| {
                (0..k).flat_map(move |i| (0..k).map(move |j| (g, i, j)))
            })
            .map(|(g, i, j)| self.mul(self.mul(self.basis_element(i), g), self.basis_element(j)))
            .collect();
        self.additive_span(&additive)
    }

    pub fn is_two_sided_ideal(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set.iter().all(|x| {
                (0..self.basis_len()).all(|i| {
                    let b = self.basis_element(i);
                    set.contains(self.mul(x, b)) && set.contains(self.mul(b, x))
                }) && set.iter().all(|y| set.contains(self.add(x, y)))
            })
    }

    /// All idempotents, in enumeration order.
    pub fn idempotents(&self) -> Vec<RingElem> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// All units, in enumeration order.
    pub fn units(&self) -> Vec<RingElem> {
        self.elements()
            .filter(|&u| self.inverse(u).is_some())
            .collect()
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, u: RingElem) -> Option<RingElem> {
        self.elements()
            .find(|&v| self.mul(u, v) == self.one && self.mul(v, u) == self.one)
    }

    /// Presents the subring-like set `elements` (closed under `+` and `*`,
    /// with its own identity `unity`) as a ring of its own.
    ///
    /// Returns the ring and the embedding of its elements into `self`.
    pub fn corner_ring(
        &self,
        elements: &ElemSet,
        unity: RingElem,
        limits: &Limits,
    ) -> Result<(FiniteRing, Vec<RingElem>)> {
        let gens: Vec<Vec<u64>> = self
            .radix
            .greedy_generators(elements)
            .into_iter()
            .map(|g| self.coeffs(g))
            .collect();
        let (orders, basis) = present_subgroup(self.radix.orders(), &gens)?;
        let basis: Vec<RingElem> = basis.iter().map(|v| self.radix.encode(v)).collect();
        let local = Radix::new(&orders, limits.max_elements, "subring")?;
        let mut embed = vec![0usize; local.size()];
        let mut back = vec![usize::MAX; self.order()];
        for (li, slot) in embed.iter_mut().enumerate() {
            let c = local.decode(li);
            let x = c
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&ci, &b)| self.add(acc, self.scale(b, ci)));
            *slot = x;
            back[x] = li;
        }
        if embed.len() != elements.len() || embed.iter().any(|&x| !elements.contains(x)) {
            return Err(Error::Inconsistent("subgroup presentation mismatch".into()));
        }
        let coords = |x: RingElem| -> Result<Vec<u64>> {
            match back[x] {
                usize::MAX => Err(Error::InvalidStructure(
                    "set is not closed under multiplication".into(),
                )),
                li => Ok(local.decode(li)),
            }
        };
        let k = basis.len();
        let mut table = vec![vec![vec![]; k]; k];
        for i in 0..k {
            for j in 0..k {
                table[i][j] = coords(self.mul(basis[i], basis[j]))?;
            }
        }
        let ring = FiniteRing::from_structure_constants(&orders, &table, &coords(unity)?, limits)?;
        Ok((ring, embed))
    }

    /// The quotient ring `R/I` for a two-sided ideal `I`, with the projection
    /// `R -> R/I` as a lookup table.
    pub fn quotient_ring(&self, ideal: &ElemSet, limits: &Limits) -> Result<(FiniteRing, Vec<RingElem>)> {
        if !self.is_two_sided_ideal(ideal) {
            return Err(Error::InvalidParameter("not a two-sided ideal".into()));
        }
        let k = self.basis_len();
        let mut rel: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                let mut row = vec![0i128; k];
                row[i] = self.radix.orders()[i] as i128;
                row
            })
            .collect();
        for g in self.radix.greedy_generators(ideal) {
            rel.push(self.coeffs(g).into_iter().map(i128::from).collect());
        }
        let q = present_quotient(&rel, k)?;
        let lifts: Vec<RingElem> = q.lifts.iter().map(|l| self.radix.encode_signed(l)).collect();
        let project = |x: RingElem| -> Vec<u64> {
            let c: Vec<i128> = self.coeffs(x).into_iter().map(i128::from).collect();
            q.project(&c)
        };
        let qk = lifts.len();
        let mut table = vec![vec![vec![]; qk]; qk];
        for i in 0..qk {
            for j in 0..qk {
                table[i][j] = project(self.mul(lifts[i], lifts[j]));
            }
        }
        let ring = FiniteRing::from_structure_constants(&q.orders, &table, &project(self.one), limits)?;
        let projection = self
            .elements()
            .map(|x| ring.radix.encode(&project(x)))
            .collect();
        Ok((ring, projection))
    }

    /// Decomposes a commutative ring into local factors `Re_1 x ... x Re_s`.
    pub fn local_decomposition(&self, limits: &Limits) -> Result<LocalDecomposition> {
        if !self.commutative {
            return Err(Error::NotCommutative);
        }
        let idem = self.idempotents();
        let primitive: Vec<RingElem> = idem
            .iter()
            .copied()
            .filter(|&e| {
                e != 0
                    && !idem
                        .iter()
                        .any(|&f| f != 0 && f != e && self.mul(f, e) == f)
            })
            .collect();
        let sum = primitive.iter().fold(0, |acc, &e| self.add(acc, e));
        if sum != self.one {
            return Err(Error::Inconsistent(
                "primitive idempotents do not sum to one".into(),
            ));
        }
        for (i, &e) in primitive.iter().enumerate() {
            for &f in &primitive[i + 1..] {
                if self.mul(e, f) != 0 {
                    return Err(Error::Inconsistent(
                        "primitive idempotents are not orthogonal".into(),
                    ));
                }
            }
        }
        let mut factors = Vec::new();
        let mut embeddings = Vec::new();
        for &e in &primitive {
            let set = ElemSet::from_indices(self.order(), self.elements().map(|r| self.mul(r, e)));
            let (ring, embed) = self.corner_ring(&set, e, limits)?;
            if !ring.is_local() {
                return Err(Error::Inconsistent("factor ring is not local".into()));
            }
            factors.push(ring);
            embeddings.push(embed);
        }
        Ok(LocalDecomposition {
            idempotents: primitive,
            factors,
            embeddings,
        })
    }

    /// A ring is local when its non-units form an additive group (hence the
    /// unique maximal ideal).
    pub fn is_local(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        let units: ElemSet = ElemSet::from_indices(self.order(), self.units());
        let non_units: Vec<RingElem> = self.elements().filter(|&x| !units.contains(x)).collect();
        let set = ElemSet::from_indices(self.order(), non_units.iter().copied());
        non_units
            .iter()
            .all(|&x| non_units.iter().all(|&y| set.contains(self.add(x, y))))
    }

    /// Raw structure-constant description of this ring.
    pub fn to_description(&self) -> RingDescription {
        let k = self.basis_len();
        RingDescription::StructureConstants {
            additive_orders: self.radix.orders().to_vec(),
            mul_table: (0..k)
                .map(|i| (0..k).map(|j| self.product_coeffs[i * k + j].clone()).collect())
                .collect(),
            one: self.coeffs(self.one),
        }
    }
}

pub(crate) fn format_coeffs(c: &[u64]) -> String {
    match c {
        [] => "0".into(),
        [x] => x.to_string(),
        _ => format!(
            "({})",
            c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        ),
    }
}

/// A right ideal as a canonical element set plus the generators it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightIdeal {
    pub elements: ElemSet,
    pub generators: Vec<RingElem>,
}

impl RightIdeal {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: RingElem) -> bool {
        self.elements.contains(x)
    }

    pub fn to_vec(&self) -> Vec<RingElem> {
        self.elements.to_vec()
    }
}

/// Primitive orthogonal idempotents of a commutative ring with the local
/// factor rings `Re_i`.
#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    pub idempotents: Vec<RingElem>,
    pub factors: Vec<FiniteRing>,
    /// `embeddings[i][x]` is the element of `R` corresponding to `x` in `Re_i`.
    pub embeddings: Vec<Vec<RingElem>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> FiniteRing {
        build_ring(&RingDescription::zmod(n)).unwrap()
    }

    #[test]
    fn zmod_arithmetic() {
        let r = zmod(4);
        assert_eq!(r.additive_orders(), &[4]);
        assert_eq!(r.coeffs(r.one()), vec![1]);
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(r.elements().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(zmod(6).mul(2, 5), 4);
    }

    #[test]
    fn annihilators_in_zmod() {
        assert_eq!(zmod(4).annihilators(2).1.to_vec(), vec![0, 2]);
        assert_eq!(zmod(6).annihilators(3).1.to_vec(), vec![0, 2, 4]);
        for n in 2..8 {
            let r = zmod(n);
            assert_eq!(r.annihilators(r.one()).1.to_vec(), vec![0]);
        }
    }

    #[test]
    fn idempotents_and_units() {
        assert_eq!(zmod(6).idempotents(), vec![0, 1, 3, 4]);
        assert_eq!(zmod(4).idempotents(), vec![0, 1]);
        assert_eq!(zmod(4).units(), vec![1, 3]);
    }

    #[test]
    fn local_decomposition_of_z6() {
        let r = zmod(6);
        let d = r.local_decomposition(&Limits::default()).unwrap();
        assert_eq!(d.idempotents, vec![3, 4]);
        let orders: Vec<_> = d.factors.iter().map(FiniteRing::order).collect();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn local_decomposition_of_z4_and_field() {
        let d = zmod(4).local_decomposition(&Limits::default()).unwrap();
        assert_eq!(d.idempotents, vec![1]);
        let f4 = build_ring(&RingDescription::poly_quotient(2, vec![1, 1, 1])).unwrap();
        let d = f4.local_decomposition(&Limits::default()).unwrap();
        assert_eq!(d.idempotents, vec![f4.one()]);
        assert_eq!(d.factors[0].order(), 4);
    }

    #[test]
    fn local_decomposition_needs_commutativity() {
        let ut = build_ring(&RingDescription::upper_triangular(2, 2)).unwrap();
        assert_eq!(
            ut.local_decomposition(&Limits::default()).unwrap_err(),
            Error::NotCommutative
        );
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            build_ring(&RingDescription::zmod(0)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_ring(&RingDescription::poly_quotient(2, vec![1, 1, 0])),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_ring(&RingDescription::upper_triangular(6, 2)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // b0 = 1, b1 with b1*b1 = b0 + b1 over Z/2 is fine (F4); break associativity
        // by making b1 act oddly on the left of b0.
        let desc = RingDescription::StructureConstants {
            additive_orders: vec![2, 2],
            mul_table: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]],
            one: vec![0, 1],
        };
        let err = build_ring(&desc).unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)), "{err}");
    }

    #[test]
    fn upper_triangular_over_f4() {
        let r = build_ring(&RingDescription::upper_triangular(4, 2)).unwrap();
        assert_eq!(r.order(), 64);
        assert!(!r.is_commutative());
    }

    #[test]
    fn quotient_ring_of_z12() {
        let r = zmod(12);
        let ideal = r.right_ideal_generated(&[4]).elements;
        let (q, proj) = r.quotient_ring(&ideal, &Limits::default()).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.mul(proj[3], proj[3]), proj[9]);
    }
}
