//! Finite right modules over finite rings and their submodule calculus.
//!
//! A module is stored as invariant factors `d_1..d_t` of its generators plus
//! one `t x t` action matrix per additive generator of the ring (row-vector
//! convention, `m * b_i = m A_i`). Everything else is computed element-wise.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{present_quotient, present_subgroup, Radix};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ring::{FiniteRing, LocalDecomposition, RingElem};

/// Index of a module element in enumeration order.
pub type ModElem = usize;

const ACT_TABLE_LIMIT: usize = 1 << 22;

/// Recipe for building a module over a given ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDescription {
    /// The ring as a right module over itself.
    Regular,
    /// Raw presentation: one `t x t` matrix per additive ring generator.
    ActionMatrices {
        invariant_factors: Vec<u64>,
        action: Vec<Vec<Vec<u64>>>,
    },
    DirectSum { summands: Vec<ModuleDescription> },
    /// `R/I` for the right ideal generated by the given elements (coefficient vectors).
    CyclicQuotient { ideal_generators: Vec<Vec<u64>> },
}

impl ModuleDescription {
    pub fn label(&self) -> String {
        match self {
            ModuleDescription::Regular => "R".into(),
            ModuleDescription::ActionMatrices {
                invariant_factors, ..
            } => format!("matrices{invariant_factors:?}"),
            ModuleDescription::DirectSum { summands } if summands.is_empty() => "0".into(),
            ModuleDescription::DirectSum { summands } => summands
                .iter()
                .map(|s| s.label())
                .collect::<Vec<_>>()
                .join(" + "),
            ModuleDescription::CyclicQuotient { ideal_generators } => format!(
                "R/({})",
                ideal_generators
                    .iter()
                    .map(|g| crate::ring::format_coeffs(g))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// Outcome of a decision procedure together with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Decision<W> {
    pub fn yes(witness: Option<W>) -> Self {
        Decision {
            holds: true,
            witness,
        }
    }

    pub fn no(witness: Option<W>) -> Self {
        Decision {
            holds: false,
            witness,
        }
    }
}

/// A validated finite right module.
#[derive(Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    radix: Radix,
    action: Vec<Vec<Vec<u64>>>,
    basis_act: Vec<Vec<u32>>,
    act_table: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("invariant_factors", &self.radix.orders())
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.radix == other.radix && self.action == other.action
    }
}

pub(crate) fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Builds and validates a module over `ring` under default limits.
pub fn build_module(ring: &Arc<FiniteRing>, desc: &ModuleDescription) -> Result<FiniteModule> {
    build_module_with(ring, desc, &Limits::default())
}

pub fn build_module_with(
    ring: &Arc<FiniteRing>,
    desc: &ModuleDescription,
    limits: &Limits,
) -> Result<FiniteModule> {
    match desc {
        ModuleDescription::Regular => FiniteModule::regular(ring, limits),
        ModuleDescription::ActionMatrices {
            invariant_factors,
            action,
        } => FiniteModule::from_action_matrices(ring, invariant_factors, action, limits),
        ModuleDescription::DirectSum { summands } => {
            let parts = summands
                .iter()
                .map(|s| build_module_with(ring, s, limits))
                .collect::<Result<Vec<_>>>()?;
            FiniteModule::direct_sum(ring, &parts, limits)
        }
        ModuleDescription::CyclicQuotient { ideal_generators } => {
            let gens = ideal_generators
                .iter()
                .map(|c| ring.from_coeffs(c))
                .collect::<Result<Vec<_>>>()?;
            let ideal = ring.right_ideal_generated(&gens);
            let regular = FiniteModule::regular(ring, limits)?;
            let n = Submodule::new(ideal.elements, vec![]);
            Ok(regular.quotient(&n, limits)?.module)
        }
    }
}

impl FiniteModule {
    /// Validates a raw presentation.
    pub fn from_action_matrices(
        ring: &Arc<FiniteRing>,
        factors: &[u64],
        action: &[Vec<Vec<u64>>],
        limits: &Limits,
    ) -> Result<Self> {
        let radix = Radix::new(factors, limits.max_elements, "module")?;
        let k = ring.basis_len();
        let t = factors.len();
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        if action.len() != k {
            return bad(format!("expected {k} action matrices, one per ring generator"));
        }
        for (i, a) in action.iter().enumerate() {
            if a.len() != t || a.iter().any(|row| row.len() != t) {
                return bad(format!("action matrix for b{i} must be {t}x{t}"));
            }
            for p in 0..t {
                for q in 0..t {
                    let v = a[p][q];
                    if v >= factors[q] {
                        return bad(format!(
                            "entry ({p},{q}) of the matrix for b{i} is out of range"
                        ));
                    }
                    if (factors[p] as u128 * v as u128) % factors[q] as u128 != 0 {
                        return bad(format!(
                            "entry ({p},{q}) of the matrix for b{i} violates d_{p} * a = 0 mod d_{q}"
                        ));
                    }
                    if (ring.additive_orders()[i] as u128 * v as u128) % factors[q] as u128 != 0 {
                        return bad(format!(
                            "generator g{p} times b{i} is not killed by the additive order of b{i}"
                        ));
                    }
                }
            }
        }
        let mut basis_act = Vec::with_capacity(k);
        for a in action {
            let table: Vec<u32> = (0..radix.size())
                .map(|m| {
                    let c = radix.decode(m);
                    let out: Vec<u64> = (0..t)
                        .map(|q| {
                            let n = factors[q] as u128;
                            ((0..t).map(|p| c[p] as u128 * a[p][q] as u128).sum::<u128>() % n) as u64
                        })
                        .collect();
                    radix.encode(&out) as u32
                })
                .collect();
            basis_act.push(table);
        }
        let mut module = FiniteModule {
            ring: ring.clone(),
            radix,
            action: action.to_vec(),
            basis_act,
            act_table: None,
        };
        let one = ring.one();
        for p in 0..t {
            let g = module.radix.unit(p);
            if module.act_slow(g, one) != g {
                return bad(format!("unity does not fix generator g{p}"));
            }
            for i in 0..k {
                for j in 0..k {
                    let (bi, bj) = (ring.basis_element(i), ring.basis_element(j));
                    let lhs = module.act_slow(module.act_slow(g, bi), bj);
                    let rhs = module.act_slow(g, ring.mul(bi, bj));
                    if lhs != rhs {
                        return bad(format!(
                            "(g{p} * b{i}) * b{j} != g{p} * (b{i} * b{j})"
                        ));
                    }
                }
            }
        }
        let n = module.order();
        let r = ring.order();
        if n * r <= ACT_TABLE_LIMIT {
            let mut table = vec![0u32; n * r];
            for m in 0..n {
                for a in 0..r {
                    table[m * r + a] = module.act_slow(m, a) as u32;
                }
            }
            module.act_table = Some(table);
        }
        Ok(module)
    }

    /// `R_R`.
    pub fn regular(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<Self> {
        let k = ring.basis_len();
        let action: Vec<Vec<Vec<u64>>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|p| ring.coeffs(ring.mul(ring.basis_element(p), ring.basis_element(i))))
                    .collect()
            })
            .collect();
        Self::from_action_matrices(ring, ring.additive_orders(), &action, limits)
    }

    /// The zero module.
    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Self::from_action_matrices(ring, &[], &vec![vec![]; ring.basis_len()], &Limits::default())
            .expect("zero module is always valid")
    }

    pub fn direct_sum(ring: &Arc<FiniteRing>, parts: &[FiniteModule], limits: &Limits) -> Result<Self> {
        if parts.iter().any(|p| !same_ring(&p.ring, ring)) {
            return Err(Error::RingMismatch);
        }
        let factors: Vec<u64> = parts.iter().flat_map(|p| p.radix.orders().to_vec()).collect();
        let t = factors.len();
        let k = ring.basis_len();
        let mut action = vec![vec![vec![0u64; t]; t]; k];
        let mut offset = 0;
        for p in parts {
            let tt = p.radix.dim();
            for (i, a) in action.iter_mut().enumerate() {
                for r in 0..tt {
                    for c in 0..tt {
                        a[offset + r][offset + c] = p.action[i][r][c];
                    }
                }
            }
            offset += tt;
        }
        Self::from_action_matrices(ring, &factors, &action, limits)
    }

    fn act_slow(&self, m: ModElem, r: RingElem) -> ModElem {
        let mut out = 0;
        for i in 0..self.ring.basis_len() {
            let c = self.ring.coeff(r, i);
            if c != 0 {
                out = self.radix.add(out, self.radix.scale(self.basis_act[i][m] as usize, c));
            }
        }
        out
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// `|M|`.
    #[inline]
    pub fn order(&self) -> usize {
        self.radix.size()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.radix.orders()
    }

    pub fn action_matrices(&self) -> &[Vec<Vec<u64>>] {
        &self.action
    }

    /// Number of additive generators `t`.
    pub fn rank(&self) -> usize {
        self.radix.dim()
    }

    /// The generator `g_p` as an element.
    pub fn generator(&self, p: usize) -> ModElem {
        self.radix.unit(p)
    }

    pub fn elements(&self) -> std::ops::Range<ModElem> {
        0..self.order()
    }

    pub fn coeffs(&self, m: ModElem) -> Vec<u64> {
        self.radix.decode(m)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<ModElem> {
        if c.len() != self.rank() {
            return Err(Error::InvalidParameter(format!(
                "module element needs {} coefficients",
                self.rank()
            )));
        }
        Ok(self.radix.encode(c))
    }

    pub fn format_element(&self, m: ModElem) -> String {
        crate::ring::format_coeffs(&self.coeffs(m))
    }

    #[inline]
    pub fn add(&self, x: ModElem, y: ModElem) -> ModElem {
        self.radix.add(x, y)
    }

    #[inline]
    pub fn neg(&self, x: ModElem) -> ModElem {
        self.radix.neg(x)
    }

    #[inline]
    pub fn sub(&self, x: ModElem, y: ModElem) -> ModElem {
        self.radix.sub(x, y)
    }

    pub fn scale(&self, x: ModElem, c: u64) -> ModElem {
        self.radix.scale(x, c)
    }

    /// `m * r`.
    #[inline]
    pub fn act(&self, m: ModElem, r: RingElem) -> ModElem {
        match &self.act_table {
            Some(t) => t[m * self.ring.order() + r] as usize,
            None => self.act_slow(m, r),
        }
    }

    /// `m * b_i` for the ring generator `b_i`.
    #[inline]
    pub fn act_basis(&self, m: ModElem, i: usize) -> ModElem {
        self.basis_act[i][m] as usize
    }

    pub fn additive_order(&self, m: ModElem) -> u64 {
        self.radix.element_order(m)
    }

    pub(crate) fn radix(&self) -> &Radix {
        &self.radix
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::new(self.order())
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::new(ElemSet::from_indices(self.order(), [0]), vec![])
    }

    pub fn whole(&self) -> Submodule {
        Submodule::new(
            ElemSet::full(self.order()),
            (0..self.rank()).map(|p| self.generator(p)).collect(),
        )
    }

    /// True when `set` contains 0 and is closed under `+` and the scalar action.
    pub fn is_submodule(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set.iter().all(|x| {
                (0..self.ring.basis_len()).all(|i| set.contains(self.act_basis(x, i)))
            })
            && self.radix.span(&self.radix.greedy_generators(set)).len() == set.len()
    }

    /// `Ma` as a raw element set.
    pub fn raw_scalar_image(&self, a: RingElem) -> ElemSet {
        ElemSet::from_indices(self.order(), self.elements().map(|m| self.act(m, a)))
    }

    /// `l_M(a)` as a raw element set.
    pub fn raw_scalar_kernel(&self, a: RingElem) -> ElemSet {
        ElemSet::from_indices(self.order(), self.elements().filter(|&m| self.act(m, a) == 0))
    }

    /// `Ma`; fails with [`Error::NotSubmoduleClosed`] if it is not a submodule.
    pub fn scalar_image(&self, a: RingElem) -> Result<Submodule> {
        self.closed(self.raw_scalar_image(a))
    }

    /// `l_M(a) = {m : ma = 0}`; fails with [`Error::NotSubmoduleClosed`] if it is not a submodule.
    pub fn scalar_kernel(&self, a: RingElem) -> Result<Submodule> {
        self.closed(self.raw_scalar_kernel(a))
    }

    fn closed(&self, set: ElemSet) -> Result<Submodule> {
        let closed = self.ring.is_commutative()
            || set
                .iter()
                .all(|x| (0..self.ring.basis_len()).all(|i| set.contains(self.act_basis(x, i))));
        if !closed {
            return Err(Error::NotSubmoduleClosed);
        }
        let gens = self.radix.greedy_generators(&set);
        Ok(Submodule::new(set, gens))
    }

    /// `mR`.
    pub fn cyclic_submodule(&self, m: ModElem) -> Submodule {
        let set = ElemSet::from_indices(self.order(), self.ring.elements().map(|a| self.act(m, a)));
        Submodule::new(set, vec![m])
    }

    /// Right annihilator of an element, `{a : ma = 0}`.
    pub fn element_annihilator(&self, m: ModElem) -> ElemSet {
        ElemSet::from_indices(
            self.ring.order(),
            self.ring.elements().filter(|&a| self.act(m, a) == 0),
        )
    }

    /// `Ann_R(M)`.
    pub fn annihilator(&self) -> ElemSet {
        ElemSet::from_indices(
            self.ring.order(),
            self.ring
                .elements()
                .filter(|&a| (0..self.rank()).all(|p| self.act(self.generator(p), a) == 0)),
        )
    }

    /// Smallest submodule containing `gens`.
    pub fn submodule_generated(&self, gens: &[ModElem]) -> Submodule {
        let additive: Vec<ModElem> = gens
            .iter()
            .flat_map(|&g| (0..self.ring.basis_len()).map(move |i| (g, i)))
            .map(|(g, i)| self.act_basis(g, i))
            .collect();
        Submodule::new(self.radix.span(&additive), gens.to_vec())
    }

    pub fn sum(&self, n: &Submodule, k: &Submodule) -> Submodule {
        let mut set = self.empty_set();
        for x in n.iter() {
            for y in k.iter() {
                set.insert(self.add(x, y));
            }
        }
        let mut gens = n.generators.clone();
        gens.extend_from_slice(&k.generators);
        Submodule::new(set, gens)
    }

    pub fn intersect(&self, n: &Submodule, k: &Submodule) -> Submodule {
        let set = n.set.intersection(&k.set);
        let gens = self.radix.greedy_generators(&set);
        Submodule::new(set, gens)
    }

    /// Distinct cyclic submodules, sorted by (size, elements).
    pub fn cyclic_submodules(&self) -> Vec<Submodule> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for m in self.elements() {
            let c = self.cyclic_submodule(m);
            if seen.insert(c.set.clone()) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.set.cmp(&b.set)));
        out
    }

    /// The full submodule lattice, built by iterated joins of cyclic
    /// submodules starting from `{0}`, sorted by (size, elements).
    pub fn all_submodules(&self, limits: &Limits) -> Result<Vec<Submodule>> {
        let cyclics = self.cyclic_submodules();
        let zero = self.zero_submodule();
        let mut seen: HashSet<ElemSet> = HashSet::new();
        seen.insert(zero.set.clone());
        let mut found = vec![zero.clone()];
        let mut stack = vec![zero];
        while let Some(n) = stack.pop() {
            for c in &cyclics {
                if c.set.is_subset(&n.set) {
                    continue;
                }
                let s = self.sum(&n, c);
                if !seen.contains(&s.set) {
                    seen.insert(s.set.clone());
                    found.push(s.clone());
                    stack.push(s);
                    if found.len() > limits.max_submodules {
                        return Err(Error::ResourceLimit(format!(
                            "submodule lattice exceeds {} submodules",
                            limits.max_submodules
                        )));
                    }
                }
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.set.cmp(&b.set)));
        Ok(found)
    }

    /// Greedy R-module generating set: repeatedly adds the element with the
    /// largest cyclic submodule not yet covered.
    pub fn generating_set(&self) -> Vec<ModElem> {
        let cyc: Vec<ElemSet> = self.elements().map(|m| self.cyclic_submodule(m).set).collect();
        let mut gens = Vec::new();
        let mut covered = self.zero_submodule();
        while covered.len() < self.order() {
            let m = self
                .elements()
                .filter(|&m| !covered.contains(m))
                .max_by(|&a, &b| cyc[a].len().cmp(&cyc[b].len()).then(b.cmp(&a)))
                .expect("uncovered element exists");
            gens.push(m);
            covered = self.sum(&covered, &Submodule::new(cyc[m].clone(), vec![m]));
        }
        gens
    }

    /// `M/N` with the projection and coset representatives.
    pub fn quotient(&self, n: &Submodule, limits: &Limits) -> Result<QuotientModule> {
        let t = self.rank();
        let mut rel: Vec<Vec<i128>> = (0..t)
            .map(|i| {
                let mut row = vec![0i128; t];
                row[i] = self.radix.orders()[i] as i128;
                row
            })
            .collect();
        for g in self.radix.greedy_generators(&n.set) {
            rel.push(self.coeffs(g).into_iter().map(i128::from).collect());
        }
        let q = present_quotient(&rel, t)?;
        let project = |m: ModElem| -> Vec<u64> {
            let c: Vec<i128> = self.coeffs(m).into_iter().map(i128::from).collect();
            q.project(&c)
        };
        let lifts: Vec<ModElem> = q.lifts.iter().map(|l| self.radix.encode_signed(l)).collect();
        let action: Vec<Vec<Vec<u64>>> = (0..self.ring.basis_len())
            .map(|i| lifts.iter().map(|&l| project(self.act_basis(l, i))).collect())
            .collect();
        let module = FiniteModule::from_action_matrices(&self.ring, &q.orders, &action, limits)?;
        let projection: Vec<ModElem> = self.elements().map(|m| module.radix.encode(&project(m))).collect();
        let mut representatives = vec![usize::MAX; module.order()];
        for (m, &p) in projection.iter().enumerate() {
            if representatives[p] == usize::MAX {
                representatives[p] = m;
            }
        }
        let kernel = projection.iter().filter(|&&p| p == 0).count();
        if kernel != n.len() || module.order() * n.len() != self.order() {
            return Err(Error::Inconsistent("quotient presentation mismatch".into()));
        }
        Ok(QuotientModule {
            module,
            projection,
            representatives,
        })
    }

    /// A submodule presented as a module in its own right.
    pub fn present_submodule(&self, n: &Submodule, limits: &Limits) -> Result<PresentedSubmodule> {
        let gens: Vec<Vec<u64>> = self
            .radix
            .greedy_generators(&n.set)
            .into_iter()
            .map(|g| self.coeffs(g))
            .collect();
        let (orders, basis) = present_subgroup(self.radix.orders(), &gens)?;
        let basis: Vec<ModElem> = basis.iter().map(|v| self.radix.encode(v)).collect();
        self.present_on_basis(&self.ring, &orders, &basis, |x, i| self.act_basis(x, i), n, limits)
    }

    /// Builds a module on a subgroup with basis `basis`, where ring generator
    /// `i` of `ring` acts through `act`.
    fn present_on_basis(
        &self,
        ring: &Arc<FiniteRing>,
        orders: &[u64],
        basis: &[ModElem],
        act: impl Fn(ModElem, usize) -> ModElem,
        expected: &Submodule,
        limits: &Limits,
    ) -> Result<PresentedSubmodule> {
        let local = Radix::new(orders, limits.max_elements, "submodule")?;
        let mut embedding = vec![0usize; local.size()];
        let mut back = vec![u32::MAX; self.order()];
        for (li, slot) in embedding.iter_mut().enumerate() {
            let c = local.decode(li);
            let x = c
                .iter()
                .zip(basis)
                .fold(0, |acc, (&ci, &b)| self.add(acc, self.scale(b, ci)));
            *slot = x;
            back[x] = li as u32;
        }
        if embedding.len() != expected.len() || embedding.iter().any(|&x| !expected.contains(x)) {
            return Err(Error::Inconsistent("subgroup presentation mismatch".into()));
        }
        let action: Vec<Vec<Vec<u64>>> = (0..ring.basis_len())
            .map(|i| {
                basis
                    .iter()
                    .map(|&h| match back[act(h, i)] {
                        u32::MAX => Err(Error::NotSubmoduleClosed),
                        li => Ok(local.decode(li as usize)),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let module = FiniteModule::from_action_matrices(ring, orders, &action, limits)?;
        Ok(PresentedSubmodule { module, embedding })
    }

    /// Searches the lattice for a complement of `n`; the first complement in
    /// enumeration order is returned as witness.
    pub fn is_direct_summand(&self, n: &Submodule, limits: &Limits) -> Result<Decision<Submodule>> {
        if n.len() == 1 {
            return Ok(Decision::yes(Some(self.whole())));
        }
        if n.len() == self.order() {
            return Ok(Decision::yes(Some(self.zero_submodule())));
        }
        for k in self.all_submodules(limits)? {
            if n.len() * k.len() == self.order() && n.set.intersection_len(&k.set) == 1 {
                return Ok(Decision::yes(Some(k)));
            }
        }
        Ok(Decision::no(None))
    }

    /// RD-purity: `Na = Ma ∩ N` for every scalar `a`. The witness on failure is
    /// the first offending scalar.
    pub fn is_rd_pure(&self, n: &Submodule) -> Result<Decision<RingElem>> {
        if !self.ring.is_commutative() {
            return Err(Error::NotCommutative);
        }
        for a in self.ring.elements() {
            let na = ElemSet::from_indices(self.order(), n.iter().map(|x| self.act(x, a)));
            let ma = self.raw_scalar_image(a);
            if na != ma.intersection(&n.set) {
                return Ok(Decision::no(Some(a)));
            }
        }
        Ok(Decision::yes(None))
    }

    /// Components `M e_i` over the local factor rings `R e_i`.
    pub fn localize(&self, decomposition: &LocalDecomposition, limits: &Limits) -> Result<Vec<FiniteModule>> {
        if !self.ring.is_commutative() {
            return Err(Error::NotCommutative);
        }
        let mut out = Vec::new();
        for ((&e, factor), embed) in decomposition
            .idempotents
            .iter()
            .zip(&decomposition.factors)
            .zip(&decomposition.embeddings)
        {
            let set = self.raw_scalar_image(e);
            let component = Submodule::new(set, vec![]);
            let gens: Vec<Vec<u64>> = self
                .radix
                .greedy_generators(&component.set)
                .into_iter()
                .map(|g| self.coeffs(g))
                .collect();
            let (orders, basis) = present_subgroup(self.radix.orders(), &gens)?;
            let basis: Vec<ModElem> = basis.iter().map(|v| self.radix.encode(v)).collect();
            let factor = Arc::new(factor.clone());
            let scalars: Vec<RingElem> = (0..factor.basis_len())
                .map(|i| embed[factor.basis_element(i)])
                .collect();
            let presented = self.present_on_basis(
                &factor,
                &orders,
                &basis,
                |x, i| self.act(x, scalars[i]),
                &component,
                limits,
            )?;
            out.push(presented.module);
        }
        Ok(out)
    }
}

/// A submodule: canonical element set plus the generators it was built from.
///
/// Equality and hashing use the element set only.
#[derive(Clone)]
pub struct Submodule {
    set: ElemSet,
    generators: Vec<ModElem>,
}

impl Submodule {
    pub fn new(set: ElemSet, generators: Vec<ModElem>) -> Self {
        Submodule { set, generators }
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn generators(&self) -> &[ModElem] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// True for `{0}`.
    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn contains(&self, m: ModElem) -> bool {
        self.set.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = ModElem> + '_ {
        self.set.iter()
    }

    pub fn elements(&self) -> Vec<ModElem> {
        self.set.to_vec()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.set.is_subset(&other.set)
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.set.hash(state);
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{:?}", self.set)
    }
}

/// `M/N` presented as a module, with projection data.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: FiniteModule,
    /// `projection[m]` is the class of `m`.
    pub projection: Vec<ModElem>,
    /// First element of each coset in enumeration order.
    pub representatives: Vec<ModElem>,
}

/// A submodule presented as a module, with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct PresentedSubmodule {
    pub module: FiniteModule,
    /// `embedding[x]` is the parent element corresponding to `x`.
    pub embedding: Vec<ModElem>,
}

/// Extends generator images to an R-linear map, checking consistency on
/// every edge of the additive Cayley graph.
pub(crate) struct Extender<'a> {
    pub src: &'a FiniteModule,
    pub dst: &'a FiniteModule,
    pub gens: Vec<ModElem>,
    gen_moves: Vec<Vec<ModElem>>,
}

impl<'a> Extender<'a> {
    pub fn new(src: &'a FiniteModule, dst: &'a FiniteModule, gens: Vec<ModElem>) -> Self {
        let k = src.ring.basis_len();
        let gen_moves = gens
            .iter()
            .map(|&g| (0..k).map(|j| src.act_basis(g, j)).collect())
            .collect();
        Extender {
            src,
            dst,
            gens,
            gen_moves,
        }
    }

    /// Value table of the map defined by `images` on the submodule generated
    /// by the first `images.len()` generators (`u32::MAX` outside it), or
    /// `None` if the assignment is inconsistent.
    pub fn extend(&self, images: &[ModElem], nodes: &mut u64) -> Option<Vec<u32>> {
        let k = self.src.ring.basis_len();
        let img_moves: Vec<Vec<ModElem>> = images
            .iter()
            .map(|&y| (0..k).map(|j| self.dst.act_basis(y, j)).collect())
            .collect();
        let mut map = vec![u32::MAX; self.src.order()];
        map[0] = 0;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            *nodes += 1;
            let fx = map[x] as usize;
            for l in 0..images.len() {
                for j in 0..k {
                    let nx = self.src.add(x, self.gen_moves[l][j]);
                    let ny = self.dst.add(fx, img_moves[l][j]) as u32;
                    match map[nx] {
                        u32::MAX => {
                            map[nx] = ny;
                            stack.push(nx);
                        }
                        v if v != ny => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(map)
    }
}

/// Decides `A ≅ B` as right modules; the witness is the bijection as a value table.
pub fn is_isomorphic(a: &FiniteModule, b: &FiniteModule, limits: &Limits) -> Result<Decision<Vec<ModElem>>> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(Error::RingMismatch);
    }
    if a.order() != b.order() {
        return Ok(Decision::no(None));
    }
    let histogram = |m: &FiniteModule| {
        let mut h: Vec<u64> = m.elements().map(|x| m.additive_order(x)).collect();
        h.sort_unstable();
        h
    };
    if histogram(a) != histogram(b) {
        return Ok(Decision::no(None));
    }
    let ring = a.ring.clone();
    for r in ring.elements() {
        if a.raw_scalar_kernel(r).len() != b.raw_scalar_kernel(r).len() {
            return Ok(Decision::no(None));
        }
    }
    if a.is_trivial() {
        return Ok(Decision::yes(Some(vec![0])));
    }
    let ext = Extender::new(a, b, a.generating_set());
    let gen_ann: Vec<ElemSet> = ext.gens.iter().map(|&g| a.element_annihilator(g)).collect();
    let gen_ord: Vec<u64> = ext.gens.iter().map(|&g| a.additive_order(g)).collect();
    let candidates: Vec<Vec<ModElem>> = (0..ext.gens.len())
        .map(|l| {
            b.elements()
                .filter(|&y| b.additive_order(y) == gen_ord[l] && b.element_annihilator(y) == gen_ann[l])
                .collect()
        })
        .collect();
    let mut nodes = 0u64;
    let mut images = Vec::new();
    let found = iso_search(&ext, &candidates, &mut images, &mut nodes, limits)?;
    Ok(match found {
        Some(map) => Decision::yes(Some(map.into_iter().map(|v| v as usize).collect())),
        None => Decision::no(None),
    })
}

fn iso_search(
    ext: &Extender,
    candidates: &[Vec<ModElem>],
    images: &mut Vec<ModElem>,
    nodes: &mut u64,
    limits: &Limits,
) -> Result<Option<Vec<u32>>> {
    let level = images.len();
    for &y in &candidates[level] {
        if *nodes > limits.max_search_nodes {
            return Err(Error::ResourceLimit(format!(
                "isomorphism search exceeded {} nodes",
                limits.max_search_nodes
            )));
        }
        images.push(y);
        if let Some(map) = ext.extend(images, nodes) {
            let defined: Vec<u32> = map.iter().copied().filter(|&v| v != u32::MAX).collect();
            let injective = defined.iter().filter(|&&v| v == 0).count() == 1;
            if injective {
                if level + 1 == candidates.len() {
                    images.pop();
                    return Ok(Some(map));
                }
                if let Some(m) = iso_search(ext, candidates, images, nodes, limits)? {
                    images.pop();
                    return Ok(Some(m));
                }
            }
        }
        images.pop();
    }
    Ok(None)
}
