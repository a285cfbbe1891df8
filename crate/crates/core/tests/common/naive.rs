//! A deliberately simple evaluator used as an oracle.
//!
//! It copies the raw addition and action tables out of the library objects and
//! from then on works only with those tables: sets are sorted vectors, every
//! quantifier is a plain loop, submodules come from brute-force closure, and
//! homomorphisms are found by trying every tuple of generator images.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use modreg::{FiniteModule, FiniteRing};

pub type Set = BTreeSet<usize>;

/// Ring given by full tables.
#[derive(Debug, Clone)]
pub struct NRing {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl NRing {
    pub fn from_ring(r: &FiniteRing) -> Self {
        let n = r.order();
        NRing {
            n,
            add: (0..n).map(|x| (0..n).map(|y| r.add(x, y)).collect()).collect(),
            mul: (0..n).map(|x| (0..n).map(|y| r.mul(x, y)).collect()).collect(),
            zero: r.zero(),
            one: r.one(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.mul[x][y] == self.mul[y][x]))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul[acc][x])
    }

    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).any(|y| self.mul[self.mul[a][y]][a] == a))
    }

    pub fn is_strongly_regular(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).any(|y| self.mul[self.mul[a][a]][y] == a))
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|a| a == self.zero || (1..=self.n).all(|k| self.pow(a, k) != self.zero))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.mul[e][e] == e).collect()
    }
}

/// Module given by full tables over an [`NRing`].
#[derive(Debug, Clone)]
pub struct NModule {
    pub ring: NRing,
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    /// `act[m][r] = m r`.
    pub act: Vec<Vec<usize>>,
    pub zero: usize,
}

impl NModule {
    pub fn from_module(m: &FiniteModule) -> Self {
        let ring = NRing::from_ring(m.ring());
        let n = m.order();
        NModule {
            n,
            add: (0..n).map(|x| (0..n).map(|y| m.add(x, y)).collect()).collect(),
            act: (0..n).map(|x| (0..ring.n).map(|r| m.act(x, r)).collect()).collect(),
            zero: (0..n).find(|&x| m.add(x, x) == x).unwrap(),
            ring,
        }
    }

    pub fn all(&self) -> Set {
        (0..self.n).collect()
    }

    pub fn zero_set(&self) -> Set {
        [self.zero].into_iter().collect()
    }

    /// `{ m a : m in M }`.
    pub fn image(&self, a: usize) -> Set {
        (0..self.n).map(|m| self.act[m][a]).collect()
    }

    /// `{ m : m a = 0 }`.
    pub fn kernel(&self, a: usize) -> Set {
        (0..self.n).filter(|&m| self.act[m][a] == self.zero).collect()
    }

    /// `{ x a : x in s }`.
    pub fn set_times(&self, s: &Set, a: usize) -> Set {
        s.iter().map(|&x| self.act[x][a]).collect()
    }

    /// Smallest subset containing `gens` and closed under addition and action.
    pub fn span(&self, gens: &Set) -> Set {
        let mut set = Set::new();
        let mut queue: VecDeque<usize> = std::iter::once(self.zero).chain(gens.iter().copied()).collect();
        while let Some(x) = queue.pop_front() {
            if !set.insert(x) {
                continue;
            }
            for &y in &set {
                queue.push_back(self.add[x][y]);
            }
            for r in 0..self.ring.n {
                queue.push_back(self.act[x][r]);
            }
        }
        set
    }

    pub fn cyclic(&self, m: usize) -> Set {
        (0..self.ring.n).map(|r| self.act[m][r]).collect()
    }

    pub fn is_submodule(&self, s: &Set) -> bool {
        s.contains(&self.zero)
            && s.iter().all(|&x| s.iter().all(|&y| s.contains(&self.add[x][y])))
            && s.iter().all(|&x| (0..self.ring.n).all(|r| s.contains(&self.act[x][r])))
    }

    pub fn sum(&self, a: &Set, b: &Set) -> Set {
        a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| self.add[x][y]).collect()
    }

    /// Every submodule, by closing `{0}` under "add one element and span".
    pub fn submodules(&self) -> Vec<Set> {
        let mut found: Vec<Set> = vec![self.zero_set()];
        let mut i = 0;
        while i < found.len() {
            let base = found[i].clone();
            for m in 0..self.n {
                if base.contains(&m) {
                    continue;
                }
                let mut g = base.clone();
                g.insert(m);
                let s = self.span(&g);
                if !found.contains(&s) {
                    found.push(s);
                }
            }
            i += 1;
        }
        found
    }

    /// Module structure on a submodule, with elements renumbered.
    pub fn restrict(&self, s: &Set) -> NModule {
        let elems: Vec<usize> = s.iter().copied().collect();
        let idx = |x: usize| elems.iter().position(|&e| e == x).unwrap();
        NModule {
            ring: self.ring.clone(),
            n: elems.len(),
            add: elems.iter().map(|&x| elems.iter().map(|&y| idx(self.add[x][y])).collect()).collect(),
            act: elems.iter().map(|&x| (0..self.ring.n).map(|r| idx(self.act[x][r])).collect()).collect(),
            zero: idx(self.zero),
        }
    }

    /// Quotient by a submodule, cosets numbered by their least element.
    pub fn quotient(&self, s: &Set) -> NModule {
        let neg = |x: usize| (0..self.n).find(|&y| self.add[x][y] == self.zero).unwrap();
        let rep = |x: usize| (0..self.n).find(|&y| s.contains(&self.add[x][neg(y)])).unwrap();
        let reps: Vec<usize> = (0..self.n).map(rep).collect::<BTreeSet<_>>().into_iter().collect();
        let idx = |x: usize| reps.iter().position(|&e| e == rep(x)).unwrap();
        NModule {
            ring: self.ring.clone(),
            n: reps.len(),
            add: reps.iter().map(|&x| reps.iter().map(|&y| idx(self.add[x][y])).collect()).collect(),
            act: reps.iter().map(|&x| (0..self.ring.n).map(|r| idx(self.act[x][r])).collect()).collect(),
            zero: idx(self.zero),
        }
    }

    /// Module generators chosen in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.zero_set();
        for m in 0..self.n {
            if !span.contains(&m) {
                gens.push(m);
                span = self.span(&gens.iter().copied().collect());
            }
        }
        gens
    }

    /// Every R-linear map `self -> other`, as value tables.
    pub fn homs_to(&self, other: &NModule) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(f) = self.extend(other, &gens, &images) {
                out.push(f);
            }
            let mut k = 0;
            loop {
                if k == images.len() {
                    return out;
                }
                images[k] += 1;
                if images[k] < other.n {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    /// Extends `gens[i] -> images[i]` to a map on all of `self`, or `None`
    /// when the assignment is inconsistent.
    fn extend(&self, other: &NModule, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut f: Vec<Option<usize>> = vec![None; self.n];
        let mut queue: VecDeque<(usize, usize)> = std::iter::once((self.zero, other.zero))
            .chain(gens.iter().copied().zip(images.iter().copied()))
            .collect();
        while let Some((x, fx)) = queue.pop_front() {
            if let Some(v) = f[x] {
                if v != fx {
                    return None;
                }
                continue;
            }
            f[x] = Some(fx);
            for r in 0..self.ring.n {
                queue.push_back((self.act[x][r], other.act[fx][r]));
            }
            for y in 0..self.n {
                if let Some(fy) = f[y] {
                    queue.push_back((self.add[x][y], other.add[fx][fy]));
                }
            }
        }
        let f: Vec<usize> = f.into_iter().collect::<Option<_>>()?;
        let linear = (0..self.n).all(|x| {
            (0..self.n).all(|y| f[self.add[x][y]] == other.add[f[x]][f[y]])
                && (0..self.ring.n).all(|r| f[self.act[x][r]] == other.act[f[x]][r])
        });
        linear.then_some(f)
    }

    pub fn isomorphic(&self, other: &NModule) -> bool {
        self.n == other.n
            && self
                .homs_to(other)
                .iter()
                .any(|f| f.iter().collect::<BTreeSet<_>>().len() == self.n)
    }

    pub fn endomorphisms(&self) -> Vec<Vec<usize>> {
        self.homs_to(self)
    }

    fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
        g.iter().map(|&x| f[x]).collect()
    }

    // Properties, as first counterexamples (None means the property holds).

    /// `(m, a, r)` with `m a a = 0` and `m r a != 0`.
    pub fn reduced_witness(&self) -> Option<(usize, usize, usize)> {
        let rn = self.ring.n;
        for m in 0..self.n {
            for a in 0..rn {
                if self.act[self.act[m][a]][a] != self.zero {
                    continue;
                }
                for r in 0..rn {
                    if self.act[self.act[m][r]][a] != self.zero {
                        return Some((m, a, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_rigid(&self) -> bool {
        (0..self.n).all(|m| {
            (0..self.ring.n).all(|a| self.act[self.act[m][a]][a] != self.zero || self.act[m][a] == self.zero)
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let rn = self.ring.n;
        (0..self.n).all(|m| {
            (0..rn).all(|a| {
                (0..rn).all(|b| {
                    self.act[self.act[m][b]][a] != self.zero || self.act[self.act[m][a]][b] == self.zero
                })
            })
        })
    }

    pub fn is_ifp(&self) -> bool {
        let rn = self.ring.n;
        (0..self.n).all(|m| {
            (0..rn).all(|a| self.act[m][a] != self.zero || (0..rn).all(|r| self.act[self.act[m][r]][a] == self.zero))
        })
    }

    /// First `a` with `M a != M a^n` for some `n`.
    pub fn co_reduced_witness(&self) -> Option<usize> {
        (0..self.ring.n).find(|&a| {
            let ma = self.image(a);
            (2..=self.n + 1).any(|k| self.image(self.ring.pow(a, k)) != ma)
        })
    }

    pub fn weakly_morphic_witness(&self) -> Option<usize> {
        (0..self.ring.n).find(|&a| {
            let q = self.quotient(&self.image(a));
            let k = self.restrict(&self.kernel(a));
            !q.isomorphic(&k)
        })
    }

    pub fn weakly_endoregular_witness(&self) -> Option<usize> {
        (0..self.ring.n).find(|&a| {
            let ma = self.image(a);
            let l = self.kernel(a);
            ma.intersection(&l).count() != 1 || self.sum(&ma, &l) != self.all()
        })
    }

    /// First `m` such that no `a` has `mR = Ma = Ma^2`.
    pub fn jt_witness(&self) -> Option<usize> {
        (0..self.n).find(|&m| {
            let mr = self.cyclic(m);
            !(0..self.ring.n).any(|a| self.image(a) == mr && self.image(self.ring.mul[a][a]) == mr)
        })
    }

    pub fn is_summand(&self, s: &Set, lattice: &[Set]) -> bool {
        lattice
            .iter()
            .any(|k| s.intersection(k).count() == 1 && self.sum(s, k) == self.all())
    }

    pub fn strongly_f_regular_witness(&self) -> Option<usize> {
        let lattice = self.submodules();
        (0..self.n).find(|&m| !self.is_summand(&self.cyclic(m), &lattice))
    }

    pub fn f_regular_witness(&self) -> Option<usize> {
        (0..self.n).find(|&m| {
            let c = self.cyclic(m);
            (0..self.ring.n).any(|a| self.set_times(&c, a) != self.set_times(&c, self.ring.mul[a][a]))
        })
    }

    pub fn is_simple(&self) -> bool {
        self.submodules().len() == 2
    }

    /// Every component `M e`, over primitive idempotents `e`, is zero or simple.
    pub fn is_almost_locally_simple(&self) -> bool {
        let ids = self.ring.idempotents();
        let primitive = ids.iter().copied().filter(|&e| {
            e != self.ring.zero && ids.iter().all(|&f| f == self.ring.zero || f == e || self.ring.mul[f][e] != f)
        });
        primitive.into_iter().all(|e| {
            let me = self.image(e);
            me.len() == 1 || self.restrict(&me).is_simple()
        })
    }

    pub fn is_morphic(&self) -> bool {
        self.endomorphisms().iter().all(|f| {
            let img: Set = f.iter().copied().collect();
            let ker: Set = (0..self.n).filter(|&x| f[x] == self.zero).collect();
            self.quotient(&img).isomorphic(&self.restrict(&ker))
        })
    }

    pub fn is_endoregular(&self) -> bool {
        let s = self.endomorphisms();
        s.iter()
            .all(|f| s.iter().any(|g| Self::compose(f, &Self::compose(g, f)) == *f))
    }

    pub fn is_abelian_endoregular(&self) -> bool {
        let s = self.endomorphisms();
        s.iter()
            .all(|f| s.iter().any(|g| Self::compose(&Self::compose(f, f), g) == *f))
    }

    pub fn is_duo(&self) -> bool {
        self.endomorphisms()
            .iter()
            .all(|f| (0..self.n).all(|m| self.cyclic(m).contains(&f[m])))
    }

    pub fn is_multiplication(&self) -> bool {
        let r = NModule::regular(&self.ring);
        let ideals = r.submodules();
        self.submodules().iter().all(|n| {
            ideals.iter().any(|i| {
                let mut prod = self.zero_set();
                for m in 0..self.n {
                    for &a in i {
                        prod.insert(self.act[m][a]);
                    }
                }
                self.span(&prod) == *n
            })
        })
    }

    pub fn regular(ring: &NRing) -> NModule {
        NModule {
            ring: ring.clone(),
            n: ring.n,
            add: ring.add.clone(),
            act: ring.mul.clone(),
            zero: ring.zero,
        }
    }
}

/// Exhaustive search for a ring isomorphism (bijection preserving both tables).
pub fn rings_isomorphic(a: &NRing, b: &NRing) -> bool {
    if a.n != b.n || a.is_commutative() != b.is_commutative() {
        return false;
    }
    // Additive generators of `a`, chosen in index order.
    let mut gens = Vec::new();
    let mut span: Set = [a.zero].into_iter().collect();
    for x in 0..a.n {
        if !span.contains(&x) {
            gens.push(x);
            loop {
                let next: Set = span
                    .iter()
                    .flat_map(|&u| gens.iter().map(move |&g| (u, g)))
                    .map(|(u, g)| a.add[u][g])
                    .chain(span.iter().copied())
                    .collect();
                if next == span {
                    break;
                }
                span = next;
            }
        }
    }
    let mut images = vec![0usize; gens.len()];
    loop {
        if let Some(f) = extend_additive(a, b, &gens, &images) {
            let bijective = f.iter().collect::<BTreeSet<_>>().len() == a.n;
            if bijective
                && f[a.one] == b.one
                && (0..a.n).all(|x| (0..a.n).all(|y| f[a.mul[x][y]] == b.mul[f[x]][f[y]]))
            {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == images.len() {
                return false;
            }
            images[k] += 1;
            if images[k] < b.n {
                break;
            }
            images[k] = 0;
            k += 1;
        }
    }
}

fn extend_additive(a: &NRing, b: &NRing, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut f: Vec<Option<usize>> = vec![None; a.n];
    f[a.zero] = Some(b.zero);
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..a.n {
            let Some(fx) = f[x] else { continue };
            for (&g, &fg) in gens.iter().zip(images) {
                let y = a.add[x][g];
                let fy = b.add[fx][fg];
                match f[y] {
                    None => {
                        f[y] = Some(fy);
                        changed = true;
                    }
                    Some(v) if v != fy => return None,
                    _ => {}
                }
            }
        }
    }
    let f: Vec<usize> = f.into_iter().collect::<Option<_>>()?;
    (0..a.n)
        .all(|x| (0..a.n).all(|y| f[a.add[x][y]] == b.add[f[x]][f[y]]))
        .then_some(f)
}
