//! Finite abelian group plumbing: mixed-radix element indexing and Smith
//! normal form based presentations of subgroups and quotients of
//! `Z/d_1 + ... + Z/d_t`.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Mixed-radix coordinates over cyclic factors `Z/n_1 + ... + Z/n_k`.
///
/// Element indices enumerate coefficient vectors lexicographically: the first
/// coordinate is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Radix {
    orders: Vec<u64>,
    weights: Vec<usize>,
    size: usize,
}

impl Radix {
    pub fn new(orders: &[u64], cap: usize, what: &str) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidParameter(format!(
                "{what}: additive order {bad} must be positive"
            )));
        }
        let mut size: u128 = 1;
        for &n in orders {
            size = size.saturating_mul(n as u128);
            if size > cap as u128 {
                return Err(Error::ResourceLimit(format!(
                    "{what} has more than {cap} elements"
                )));
            }
        }
        let mut weights = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * orders[i + 1] as usize;
        }
        Ok(Radix {
            orders: orders.to_vec(),
            weights,
            size: size as usize,
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Index of the `i`-th generator (coefficient vector `e_i`).
    #[inline]
    pub fn unit(&self, i: usize) -> usize {
        if self.orders[i] == 1 {
            0
        } else {
            self.weights[i]
        }
    }

    #[inline]
    pub fn digit(&self, idx: usize, i: usize) -> u64 {
        ((idx / self.weights[i]) as u64) % self.orders[i]
    }

    pub fn decode_into(&self, idx: usize, out: &mut [u64]) {
        for (i, o) in out.iter_mut().enumerate().take(self.orders.len()) {
            *o = self.digit(idx, i);
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        self.decode_into(idx, &mut v);
        v
    }

    /// Encodes arbitrary non-negative integers, reducing each modulo its order.
    pub fn encode(&self, coeffs: &[u64]) -> usize {
        coeffs
            .iter()
            .zip(&self.orders)
            .zip(&self.weights)
            .map(|((&c, &n), &w)| (c % n) as usize * w)
            .sum()
    }

    /// Encodes signed integers, reducing each modulo its order.
    pub fn encode_signed(&self, coeffs: &[i128]) -> usize {
        coeffs
            .iter()
            .zip(&self.orders)
            .zip(&self.weights)
            .map(|((&c, &n), &w)| c.rem_euclid(n as i128) as usize * w)
            .sum()
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for i in 0..self.orders.len() {
            let n = self.orders[i];
            let s = self.digit(x, i) + self.digit(y, i);
            out += (if s >= n { s - n } else { s }) as usize * self.weights[i];
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        let mut out = 0;
        for i in 0..self.orders.len() {
            let d = self.digit(x, i);
            if d != 0 {
                out += (self.orders[i] - d) as usize * self.weights[i];
            }
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn scale(&self, x: usize, c: u64) -> usize {
        let mut out = 0;
        for i in 0..self.orders.len() {
            let n = self.orders[i];
            out += ((self.digit(x, i) * (c % n)) % n) as usize * self.weights[i];
        }
        out
    }

    /// Additive order of element `x`.
    pub fn element_order(&self, x: usize) -> u64 {
        (0..self.dim()).fold(1, |acc, i| {
            let n = self.orders[i];
            let d = self.digit(x, i);
            lcm(acc, n / gcd(n, d))
        })
    }

    /// The subgroup generated by `gens`, as an element set.
    pub fn span(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::new(self.size);
        set.insert(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Greedy additive generating set of a subgroup given by its elements.
    pub fn greedy_generators(&self, subgroup: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = ElemSet::from_indices(self.size, [0]);
        for x in subgroup.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = self.span(&gens);
                if span.len() == subgroup.len() {
                    break;
                }
            }
        }
        gens
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

type Mat = Vec<Vec<i128>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// `left * a * right = diag` with `left`, `right` unimodular.
pub(crate) struct Smith {
    pub diag: Vec<i128>,
    pub left: Mat,
    pub right: Mat,
    pub right_inv: Mat,
}

/// Smith normal form over the integers, with transforms.
pub(crate) fn smith(a: &[Vec<i128>], ncols: usize) -> Smith {
    let m = a.len();
    let n = ncols;
    let mut a: Mat = a.to_vec();
    let mut left = identity(m);
    let mut right = identity(n);
    let mut right_inv = identity(n);

    let swap_cols = |a: &mut Mat, right: &mut Mat, right_inv: &mut Mat, i: usize, j: usize| {
        if i == j {
            return;
        }
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in right.iter_mut() {
            row.swap(i, j);
        }
        right_inv.swap(i, j);
    };
    // col_j += q * col_t
    let add_col = |a: &mut Mat, right: &mut Mat, right_inv: &mut Mat, j: usize, t: usize, q: i128| {
        if q == 0 {
            return;
        }
        for row in a.iter_mut() {
            row[j] += q * row[t];
        }
        for row in right.iter_mut() {
            row[j] += q * row[t];
        }
        for c in 0..right_inv[t].len() {
            let v = right_inv[j][c];
            right_inv[t][c] -= q * v;
        }
    };
    // row_i += q * row_t
    let add_row = |a: &mut Mat, left: &mut Mat, i: usize, t: usize, q: i128| {
        if q == 0 {
            return;
        }
        for c in 0..a[i].len() {
            let v = a[t][c];
            a[i][c] += q * v;
        }
        for c in 0..left[i].len() {
            let v = left[t][c];
            left[i][c] += q * v;
        }
    };

    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, &mut right, &mut right_inv, t, pj);

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / p;
                add_row(&mut a, &mut left, i, t, -q);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                add_col(&mut a, &mut right, &mut right_inv, j, t, -q);
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            if let Some(i) = offender {
                add_row(&mut a, &mut left, t, i, 1);
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for v in a[t].iter_mut() {
                *v = -*v;
            }
            for v in left[t].iter_mut() {
                *v = -*v;
            }
        }
        diag.push(a[t][t]);
    }
    Smith {
        diag,
        left,
        right,
        right_inv,
    }
}

/// Presentation of `Z^n / L` for a full-rank lattice `L`.
pub(crate) struct QuotientPresentation {
    /// Orders of the new cyclic generators (all > 1).
    pub orders: Vec<u64>,
    /// Integer lift of each generator in `Z^n`.
    pub lifts: Vec<Vec<i128>>,
    /// Column `i` maps `Z^n` coordinates onto generator `i`.
    proj: Vec<Vec<i128>>,
}

impl QuotientPresentation {
    /// Coordinates (reduced) of the class of `x` in the quotient.
    pub fn project(&self, x: &[i128]) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.proj)
            .map(|(&s, col)| {
                let v: i128 = x.iter().zip(col).map(|(a, b)| a * b).sum();
                v.rem_euclid(s as i128) as u64
            })
            .collect()
    }
}

/// Presents `Z^n / rowspace(relations)`; the relations must have full rank `n`.
pub(crate) fn present_quotient(relations: &[Vec<i128>], n: usize) -> Result<QuotientPresentation> {
    if n == 0 {
        return Ok(QuotientPresentation {
            orders: vec![],
            lifts: vec![],
            proj: vec![],
        });
    }
    let s = smith(relations, n);
    if s.diag.len() < n || s.diag.contains(&0) {
        return Err(Error::Inconsistent(
            "relation lattice is not of full rank".into(),
        ));
    }
    let mut orders = Vec::new();
    let mut lifts = Vec::new();
    let mut proj = Vec::new();
    for i in 0..n {
        let d = s.diag[i];
        if d == 1 {
            continue;
        }
        orders.push(u64::try_from(d).map_err(|_| Error::Inconsistent("negative invariant".into()))?);
        lifts.push(s.right_inv[i].clone());
        proj.push((0..n).map(|r| s.right[r][i]).collect());
    }
    Ok(QuotientPresentation {
        orders,
        lifts,
        proj,
    })
}

/// Cyclic decomposition of the subgroup of `Z/d_1 + ... + Z/d_t` generated by `gens`.
///
/// Returns the orders of a basis and the basis vectors themselves
/// (reduced coordinates in the ambient group).
pub(crate) fn present_subgroup(ambient: &[u64], gens: &[Vec<u64>]) -> Result<(Vec<u64>, Vec<Vec<u64>>)> {
    let t = ambient.len();
    let s = gens.len();
    if s == 0 {
        return Ok((vec![], vec![]));
    }
    let mut stacked: Mat = gens
        .iter()
        .map(|g| g.iter().map(|&c| c as i128).collect())
        .collect();
    for (i, &d) in ambient.iter().enumerate() {
        let mut row = vec![0i128; t];
        row[i] = d as i128;
        stacked.push(row);
    }
    let sm = smith(&stacked, t);
    let rank = sm.diag.iter().filter(|&&d| d != 0).count();
    let kernel: Mat = sm.left[rank..]
        .iter()
        .map(|row| row[..s].to_vec())
        .collect();
    let q = present_quotient(&kernel, s)?;
    let basis = q
        .lifts
        .iter()
        .map(|c| {
            (0..t)
                .map(|k| {
                    let v: i128 = c
                        .iter()
                        .zip(gens)
                        .map(|(&ci, g)| ci * g[k] as i128)
                        .sum();
                    v.rem_euclid(ambient[k] as i128) as u64
                })
                .collect()
        })
        .collect();
    Ok((q.orders, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radix_is_lexicographic() {
        let r = Radix::new(&[2, 3], 100, "t").unwrap();
        let all: Vec<_> = (0..r.size()).map(|i| r.decode(i)).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
        assert_eq!(r.add(r.encode(&[1, 2]), r.encode(&[1, 2])), r.encode(&[0, 1]));
        assert_eq!(r.element_order(r.encode(&[1, 1])), 6);
    }

    #[test]
    fn smith_of_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        // left * a * right == diag
        let mul = |x: &Mat, y: &Mat| -> Mat {
            (0..x.len())
                .map(|i| {
                    (0..y[0].len())
                        .map(|j| (0..y.len()).map(|k| x[i][k] * y[k][j]).sum())
                        .collect()
                })
                .collect()
        };
        let d = mul(&mul(&s.left, &a), &s.right);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
        assert_eq!(mul(&s.right, &s.right_inv), identity(3));
    }

    #[test]
    fn subgroup_of_z2_z4() {
        // <(1,1)> in Z/2 + Z/4 is cyclic of order 4
        let (orders, basis) = present_subgroup(&[2, 4], &[vec![1, 1]]).unwrap();
        assert_eq!(orders, vec![4]);
        assert_eq!(basis.len(), 1);
        // the whole group from redundant generators
        let (orders, _) = present_subgroup(&[2, 4], &[vec![1, 0], vec![0, 1], vec![1, 3]]).unwrap();
        assert_eq!(orders.iter().product::<u64>(), 8);
        assert_eq!(orders, vec![2, 4]);
    }

    #[test]
    fn quotient_of_z4_by_two() {
        let q = present_quotient(&[vec![4], vec![2]], 1).unwrap();
        assert_eq!(q.orders, vec![2]);
        assert_eq!(q.project(&[3]), vec![1]);
    }
}
