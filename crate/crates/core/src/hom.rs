//! Homomorphism groups, endomorphism rings and the annihilator calculus
//! between a module and its endomorphism ring.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::abelian::{present_subgroup, Radix};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{same_ring, Extender, FiniteModule, ModElem, Submodule};
use crate::ring::{FiniteRing, RingElem};

/// Upper bound on the number of candidate matrices for the exhaustive route.
pub const MATRIX_ROUTE_CAP: u128 = 1 << 20;

/// An R-linear map, stored as its `t_A x t_B` matrix together with the full
/// value table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleHom {
    matrix: Vec<Vec<u64>>,
    values: Vec<u32>,
    target_factors: Vec<u64>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleHom{:?}", self.matrix)
    }
}

impl ModuleHom {
    pub(crate) fn from_values(src: &FiniteModule, dst: &FiniteModule, values: Vec<u32>) -> Self {
        let matrix = (0..src.rank())
            .map(|p| dst.coeffs(values[src.generator(p)] as usize))
            .collect();
        ModuleHom {
            matrix,
            values,
            target_factors: dst.invariant_factors().to_vec(),
        }
    }

    /// Builds a map from its matrix, checking the additive congruences and
    /// commutation with every ring generator.
    pub fn from_matrix(src: &FiniteModule, dst: &FiniteModule, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if !same_ring(src.ring(), dst.ring()) {
            return Err(Error::RingMismatch);
        }
        let (ds, dt) = (src.invariant_factors(), dst.invariant_factors());
        if matrix.len() != ds.len() || matrix.iter().any(|r| r.len() != dt.len()) {
            return Err(Error::InvalidParameter(format!(
                "hom matrix must be {}x{}",
                ds.len(),
                dt.len()
            )));
        }
        for (p, row) in matrix.iter().enumerate() {
            for (q, &v) in row.iter().enumerate() {
                if v >= dt[q] || (ds[p] as u128 * v as u128) % dt[q] as u128 != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({p},{q}) is not an additive hom between the cyclic factors"
                    )));
                }
            }
        }
        let values = values_from_matrix(src, dst, &matrix);
        let hom = ModuleHom {
            matrix,
            values,
            target_factors: dt.to_vec(),
        };
        if !hom.commutes(src, dst) {
            return Err(Error::InvalidParameter("matrix is not R-linear".into()));
        }
        Ok(hom)
    }

    /// `m ↦ m·a`, when that map is R-linear.
    pub fn scalar(m: &FiniteModule, a: RingElem) -> Option<Self> {
        let values = m.elements().map(|x| m.act(x, a) as u32).collect();
        let hom = ModuleHom::from_values(m, m, values);
        hom.commutes(m, m).then_some(hom)
    }

    pub fn identity(m: &FiniteModule) -> Self {
        ModuleHom::from_values(m, m, m.elements().map(|x| x as u32).collect())
    }

    pub fn zero(src: &FiniteModule, dst: &FiniteModule) -> Self {
        ModuleHom::from_values(src, dst, vec![0; src.order()])
    }

    fn commutes(&self, src: &FiniteModule, dst: &FiniteModule) -> bool {
        (0..src.rank()).all(|p| {
            let g = src.generator(p);
            (0..src.ring().basis_len())
                .all(|i| self.apply(src.act_basis(g, i)) == dst.act_basis(self.apply(g), i))
        })
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, m: ModElem) -> ModElem {
        self.values[m] as usize
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn target_order(&self) -> usize {
        self.target_factors.iter().product::<u64>() as usize
    }

    /// `{m : φ(m) = 0}`.
    pub fn kernel(&self) -> Submodule {
        let set = ElemSet::from_indices(
            self.values.len(),
            (0..self.values.len()).filter(|&m| self.values[m] == 0),
        );
        Submodule::new(set, vec![])
    }

    /// `φ(M)`, generated by the images of the source generators.
    pub fn image(&self) -> Submodule {
        let set = ElemSet::from_indices(self.target_order(), self.values.iter().map(|&v| v as usize));
        let gen_images = self.matrix.iter().map(|row| encode(&self.target_factors, row)).collect();
        Submodule::new(set, gen_images)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleHom) -> ModuleHom {
        let values: Vec<u32> = inner.values.iter().map(|&v| self.values[v as usize]).collect();
        let matrix = inner
            .matrix
            .iter()
            .map(|row| {
                (0..self.target_factors.len())
                    .map(|q| {
                        let d = self.target_factors[q] as u128;
                        (row.iter()
                            .zip(&self.matrix)
                            .map(|(&a, r)| a as u128 * r[q] as u128)
                            .sum::<u128>()
                            % d) as u64
                    })
                    .collect()
            })
            .collect();
        ModuleHom {
            matrix,
            values,
            target_factors: self.target_factors.clone(),
        }
    }
}

fn encode(factors: &[u64], coeffs: &[u64]) -> ModElem {
    factors
        .iter()
        .zip(coeffs)
        .fold(0usize, |acc, (&d, &c)| acc * d as usize + c as usize)
}

fn values_from_matrix(src: &FiniteModule, dst: &FiniteModule, matrix: &[Vec<u64>]) -> Vec<u32> {
    let rows: Vec<ModElem> = matrix.iter().map(|r| encode(dst.invariant_factors(), r)).collect();
    src.elements()
        .map(|m| {
            src.coeffs(m)
                .iter()
                .zip(&rows)
                .fold(0, |acc, (&c, &r)| dst.add(acc, dst.scale(r, c))) as u32
        })
        .collect()
}

/// All R-linear maps `A → B`, sorted by matrix.
///
/// Images are assigned to an R-generating set of `A`; each candidate image
/// `y` of a generator `g` must satisfy `r_R(g) ⊆ r_R(y)`, and partial
/// assignments are extended and checked before descending.
pub fn hom_module(a: &FiniteModule, b: &FiniteModule, limits: &Limits) -> Result<Vec<ModuleHom>> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.is_trivial() || b.is_trivial() {
        return Ok(vec![ModuleHom::zero(a, b)]);
    }
    let ring = a.ring();
    let ext = Extender::new(a, b, a.generating_set());
    let candidates: Vec<Vec<ModElem>> = ext
        .gens
        .iter()
        .map(|&g| {
            let ann = a.element_annihilator(g);
            let ann_gens = ring.radix().greedy_generators(&ann);
            b.elements()
                .filter(|&y| ann_gens.iter().all(|&r| b.act(y, r) == 0))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut images = Vec::new();
    hom_search(&ext, &candidates, &mut images, &mut nodes, limits, &mut out)?;
    let mut homs: Vec<ModuleHom> = out.into_iter().map(|v| ModuleHom::from_values(a, b, v)).collect();
    homs.sort_by(|x, y| x.matrix.cmp(&y.matrix));
    Ok(homs)
}

fn hom_search(
    ext: &Extender,
    candidates: &[Vec<ModElem>],
    images: &mut Vec<ModElem>,
    nodes: &mut u64,
    limits: &Limits,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    let level = images.len();
    for &y in &candidates[level] {
        if *nodes > limits.max_search_nodes {
            return Err(Error::ResourceLimit(format!(
                "hom search exceeded {} nodes",
                limits.max_search_nodes
            )));
        }
        images.push(y);
        if let Some(map) = ext.extend(images, nodes) {
            if level + 1 == candidates.len() {
                out.push(map);
                if out.len() > limits.max_homs {
                    return Err(Error::ResourceLimit(format!(
                        "Hom group exceeds {} maps",
                        limits.max_homs
                    )));
                }
            } else {
                hom_search(ext, candidates, images, nodes, limits, out)?;
            }
        }
        images.pop();
    }
    Ok(())
}

/// All R-linear maps `A → B` by filtering every additive-hom matrix.
///
/// Independent of [`hom_module`]; used to cross-check it on small inputs.
pub fn hom_module_exhaustive(a: &FiniteModule, b: &FiniteModule, limits: &Limits) -> Result<Vec<ModuleHom>> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let (ds, dt) = (a.invariant_factors(), b.invariant_factors());
    let mut cells = Vec::new();
    let mut total: u128 = 1;
    for &dp in ds {
        for &dq in dt {
            let g = crate::abelian::gcd(dp, dq);
            cells.push((dq / g, g));
            total = total.saturating_mul(g as u128);
        }
    }
    if total > MATRIX_ROUTE_CAP {
        return Err(Error::ResourceLimit(format!(
            "{total} candidate matrices exceed the exhaustive route cap"
        )));
    }
    let t = dt.len();
    let mut counter = vec![0u64; cells.len()];
    let mut out = Vec::new();
    loop {
        let matrix: Vec<Vec<u64>> = (0..ds.len())
            .map(|p| (0..t).map(|q| counter[p * t + q] * cells[p * t + q].0).collect())
            .collect();
        let values = values_from_matrix(a, b, &matrix);
        let hom = ModuleHom {
            matrix,
            values,
            target_factors: dt.to_vec(),
        };
        if hom.commutes(a, b) {
            out.push(hom);
            if out.len() > limits.max_homs {
                return Err(Error::ResourceLimit(format!("Hom group exceeds {} maps", limits.max_homs)));
            }
        }
        let mut i = cells.len();
        loop {
            if i == 0 {
                out.sort_by(|x, y| x.matrix.cmp(&y.matrix));
                return Ok(out);
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < cells[i].1 {
                break;
            }
            counter[i] = 0;
        }
    }
}

/// `S = End_R(M)` presented as a [`FiniteRing`] with multiplication `st = s ∘ t`.
#[derive(Clone)]
pub struct EndoRing {
    ring: Arc<FiniteRing>,
    homs: Vec<ModuleHom>,
    index: HashMap<Vec<Vec<u64>>, RingElem>,
}

impl fmt::Debug for EndoRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EndoRing").field("ring", &self.ring).finish()
    }
}

/// Computes `End_R(M)` and presents it as a ring.
pub fn end_ring(m: &FiniteModule, limits: &Limits) -> Result<EndoRing> {
    let endos = hom_module(m, m, limits)?;
    let factors = m.invariant_factors();
    let t = factors.len();
    let ambient: Vec<u64> = (0..t * t).map(|i| factors[i % t]).collect();
    let flat = |h: &ModuleHom| -> Vec<u64> { h.matrix.iter().flatten().copied().collect() };

    // Greedy additive generators of the endomorphism group.
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> {
        x.iter().zip(y).zip(&ambient).map(|((a, b), d)| (a + b) % d).collect()
    };
    let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; t * t]]);
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for h in &endos {
        let v = flat(h);
        if span.contains(&v) {
            continue;
        }
        let mut frontier: Vec<Vec<u64>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y = add(&x, &v);
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
        gens.push(v);
    }
    let (orders, basis) = present_subgroup(&ambient, &gens)?;
    let radix = Radix::new(&orders, limits.max_homs.max(1), "endomorphism ring")?;
    if radix.size() != endos.len() {
        return Err(Error::Inconsistent("endomorphism group presentation mismatch".into()));
    }
    let to_matrix = |v: &[u64]| -> Vec<Vec<u64>> { v.chunks(t.max(1)).map(|c| c.to_vec()).collect() };
    let by_matrix: HashMap<Vec<Vec<u64>>, &ModuleHom> = endos.iter().map(|h| (h.matrix.clone(), h)).collect();
    let mut homs = Vec::with_capacity(radix.size());
    for s in 0..radix.size() {
        let c = radix.decode(s);
        let mut v = vec![0u64; t * t];
        for (ci, b) in c.iter().zip(&basis) {
            for (k, x) in v.iter_mut().enumerate() {
                *x = ((*x as u128 + *ci as u128 * b[k] as u128) % ambient[k] as u128) as u64;
            }
        }
        let mat = if t == 0 { vec![] } else { to_matrix(&v) };
        match by_matrix.get(&mat) {
            Some(h) => homs.push((*h).clone()),
            None => return Err(Error::Inconsistent("endomorphism basis leaves the Hom group".into())),
        }
    }
    let index: HashMap<Vec<Vec<u64>>, RingElem> =
        homs.iter().enumerate().map(|(s, h)| (h.matrix.clone(), s)).collect();
    let k = orders.len();
    let basis_elems: Vec<RingElem> = (0..k).map(|i| radix.unit(i)).collect();
    let table: Vec<Vec<Vec<u64>>> = basis_elems
        .iter()
        .map(|&si| {
            basis_elems
                .iter()
                .map(|&sj| radix.decode(index[&homs[si].compose(&homs[sj]).matrix]))
                .collect()
        })
        .collect();
    let one = radix.decode(index[&ModuleHom::identity(m).matrix]);
    let ring = FiniteRing::from_structure_constants(&orders, &table, &one, limits)?;
    Ok(EndoRing {
        ring: Arc::new(ring),
        homs,
        index,
    })
}

impl EndoRing {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.homs.len()
    }

    /// The map corresponding to a ring element.
    pub fn hom(&self, s: RingElem) -> &ModuleHom {
        &self.homs[s]
    }

    pub fn homs(&self) -> &[ModuleHom] {
        &self.homs
    }

    /// The ring element corresponding to a map.
    pub fn element_of(&self, h: &ModuleHom) -> Option<RingElem> {
        self.index.get(&h.matrix).copied()
    }

    /// `l_S(X) = {φ : φ(X) = 0}`.
    pub fn left_annihilator_in_s(&self, x: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&s| x.iter().all(|m| self.homs[s].apply(m) == 0)),
        )
    }

    /// `r_M(Φ) = {m : φ(m) = 0 for all φ ∈ Φ}`.
    pub fn r_m_of_set(&self, phis: &ElemSet) -> ElemSet {
        let n = self.homs.first().map_or(1, |h| h.values.len());
        ElemSet::from_indices(n, (0..n).filter(|&m| phis.iter().all(|s| self.homs[s].apply(m) == 0)))
    }

    /// `r_S(I) = {ψ : φψ = 0 for all φ ∈ I}`.
    pub fn right_annihilator_in_s(&self, ideal: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.order(),
            self.ring
                .elements()
                .filter(|&psi| ideal.iter().all(|phi| self.ring.mul(phi, psi) == 0)),
        )
    }
}

/// `Σ { φ(M) : φ ∈ Hom(M, N) }` for a submodule `N` of `M`.
pub fn trace(m: &FiniteModule, n: &Submodule, limits: &Limits) -> Result<Submodule> {
    let mut acc = m.zero_submodule();
    for h in hom_module(m, m, limits)? {
        let img = h.image();
        if img.is_subset(n) && !img.is_subset(&acc) {
            acc = m.sum(&acc, &img);
        }
    }
    Ok(acc)
}

/// `Rej_M(X) = ∩ { ker γ : γ ∈ Hom(X, M) }`, a submodule of `X`.
pub fn reject(x: &FiniteModule, m: &FiniteModule, limits: &Limits) -> Result<Submodule> {
    let mut acc = x.whole();
    for h in hom_module(x, m, limits)? {
        if acc.is_zero() {
            break;
        }
        acc = x.intersect(&acc, &h.kernel());
    }
    Ok(acc)
}

/// `M` cogenerates `X` when `Rej_M(X) = 0`.
pub fn cogenerates(m: &FiniteModule, x: &FiniteModule, limits: &Limits) -> Result<bool> {
    Ok(reject(x, m, limits)?.is_zero())
}
