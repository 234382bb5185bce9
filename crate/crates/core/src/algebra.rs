//! Lie algebras with exact rational structure constants, the triangular
//! families t0(n), st(n), t(n), t_gamma(n) and g4.8(b), and the reduction of
//! the parameter matrix gamma to canonical form.
//!
//! Indices are 1-based throughout, matching the matrix enumeration of basis
//! elements `e[i,j]`. All index conventions (strict pair enumeration and the
//! conjugate index kappa = n - k + 1) live in this module.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::scalar_rank;
#[cfg(test)]
use crate::rat;
use crate::scalar::{rat_from_str, rat_to_string};
use crate::vars::{VarKind, VariableTable};
use crate::Rat;

/// Conjugate index: kappa = n - k + 1.
pub fn kappa(n: usize, k: usize) -> usize {
    n - k + 1
}

/// Strictly upper pairs (i, j), i < j, in row-major order.
pub fn strict_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            v.push((i, j));
        }
    }
    v
}

/// Position of the strict pair (i, j) in `strict_pairs(n)` (0-based).
pub fn strict_pair_position(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i) - 1
}

/// Position of the pair (i, j), i <= j, in `upper_pairs(n)` (0-based).
pub fn upper_pair_position(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    (i - 1) * (n + 1) - i * (i - 1) / 2 + (j - i)
}

/// Non-strict upper pairs (i, j), i <= j, in row-major order.
pub fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in i..=n {
            v.push((i, j));
        }
    }
    v
}

/// Family tag carried by constructor-built algebras; enables the closed-form
/// invariant route.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    TGamma(TriangularSpec),
    T { n: usize },
    G48 { b: Rat },
}

/// A single failing Jacobi triple with its residual vector.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Nonzero coordinates of the Jacobi sum, as (basis index, coefficient).
    pub residual: Vec<(usize, Rat)>,
}

/// Finite-dimensional Lie algebra given by structure constants.
///
/// Brackets are stored only for i < j; antisymmetry is implicit.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    basis_labels: Vec<String>,
    coord_names: Vec<String>,
    coord_kinds: Vec<VarKind>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    family: Option<Family>,
}

impl LieAlgebra {
    pub fn new(
        dim: usize,
        basis_labels: Vec<String>,
        coord_names: Vec<String>,
        coord_kinds: Vec<VarKind>,
        bracket_rows: Vec<((usize, usize), Vec<(usize, Rat)>)>,
        family: Option<Family>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::SpecError("dimension must be positive".into()));
        }
        if basis_labels.len() != dim || coord_names.len() != dim || coord_kinds.len() != dim {
            return Err(Error::SpecError("label count must equal dimension".into()));
        }
        let mut brackets = BTreeMap::new();
        for ((i, j), terms) in bracket_rows {
            if i == 0 || j == 0 || i > dim || j > dim || i >= j {
                return Err(Error::SpecError(format!(
                    "bracket indices ({i},{j}) out of range or not i < j"
                )));
            }
            let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, c) in terms {
                if k == 0 || k > dim {
                    return Err(Error::SpecError(format!("bracket target {k} out of range")));
                }
                let e = row.entry(k).or_insert_with(Rat::zero);
                *e += c;
            }
            let row: Vec<(usize, Rat)> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !row.is_empty() && brackets.insert((i, j), row).is_some() {
                return Err(Error::SpecError(format!("duplicate bracket ({i},{j})")));
            }
        }
        Ok(LieAlgebra {
            dim,
            basis_labels,
            coord_names,
            coord_kinds,
            brackets,
            family,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.basis_labels[i - 1]
    }

    pub fn coord_name(&self, i: usize) -> &str {
        &self.coord_names[i - 1]
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    /// Structure constant c_{ij}^k (any index order).
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rat {
        for (m, v) in self.bracket(i, j) {
            if m == k {
                return v;
            }
        }
        Rat::zero()
    }

    /// The bracket [e_i, e_j] as (basis index, coefficient) pairs.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        }
    }

    /// Bracket of two coefficient vectors.
    fn bracket_vec(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for ((i, j), terms) in &self.brackets {
            let coef = &a[i - 1] * &b[j - 1] - &a[j - 1] * &b[i - 1];
            if coef.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[k - 1] += &coef * c;
            }
        }
        out
    }

    /// Check the Jacobi identity on all triples. An empty list means the
    /// structure constants are consistent.
    pub fn validate(&self) -> Vec<JacobiViolation> {
        let mut violations = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); self.dim];
            v[i - 1] = Rat::one();
            v
        };
        for i in 1..=self.dim {
            for j in i + 1..=self.dim {
                for k in j + 1..=self.dim {
                    let ei = unit(i);
                    let ej = unit(j);
                    let ek = unit(k);
                    let mut sum = self.bracket_vec(&self.bracket_vec(&ei, &ej), &ek);
                    for (idx, val) in self
                        .bracket_vec(&self.bracket_vec(&ej, &ek), &ei)
                        .into_iter()
                        .enumerate()
                    {
                        sum[idx] += val;
                    }
                    for (idx, val) in self
                        .bracket_vec(&self.bracket_vec(&ek, &ei), &ej)
                        .into_iter()
                        .enumerate()
                    {
                        sum[idx] += val;
                    }
                    let residual: Vec<(usize, Rat)> = sum
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(idx, c)| (idx + 1, c))
                        .collect();
                    if !residual.is_empty() {
                        violations.push(JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        violations
    }

    /// Dimension of the center, solved as an exact rational linear system.
    pub fn center_dim(&self) -> usize {
        let mut rows = Vec::new();
        for j in 1..=self.dim {
            for k in 1..=self.dim {
                let mut row = Vec::with_capacity(self.dim);
                let mut nonzero = false;
                for i in 1..=self.dim {
                    let c = self.c(i, j, k);
                    nonzero |= !c.is_zero();
                    row.push(c);
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        self.dim - scalar_rank(rows)
    }

    /// Fresh variable table with the dual coordinates registered in basis
    /// order (ids `0..dim`).
    pub fn base_table(&self) -> VariableTable {
        let mut table = VariableTable::new();
        for i in 0..self.dim {
            table.add(
                self.coord_kinds[i].clone(),
                self.coord_names[i].clone(),
                Some(self.basis_labels[i].clone()),
            );
        }
        table
    }
}

/// The data (n, s, gamma) of the solvable algebra t_gamma(n): nilradical
/// t0(n) plus s nilindependent elements acting as diag(gamma_p1..gamma_pn).
///
/// Rows of gamma are scaled to integers on construction; this is legal
/// because gamma is only defined up to row scaling and shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSpec {
    n: usize,
    s: usize,
    gamma: Vec<Vec<Rat>>,
}

impl TriangularSpec {
    pub fn new(n: usize, gamma: Vec<Vec<Rat>>) -> Result<Self> {
        let s = gamma.len();
        if n < 2 {
            return Err(Error::SpecError("n must be at least 2".into()));
        }
        if s > n - 1 {
            return Err(Error::SpecError(format!(
                "s = {s} nilindependent elements exceed n - 1 = {}",
                n - 1
            )));
        }
        let mut scaled = Vec::with_capacity(s);
        for row in &gamma {
            if row.len() != n {
                return Err(Error::SpecError("gamma rows must have length n".into()));
            }
            let mut l = num_bigint::BigInt::one();
            for c in row {
                l = l.lcm(c.denom());
            }
            let factor = Rat::from_integer(l);
            scaled.push(row.iter().map(|c| c * &factor).collect::<Vec<Rat>>());
        }
        // the rows of gamma and the all-ones row must be linearly independent
        let mut m: Vec<Vec<Rat>> = scaled.clone();
        m.push(vec![Rat::one(); n]);
        if scalar_rank(m) != s + 1 {
            return Err(Error::SpecError(
                "gamma rows and the all-ones row must be linearly independent".into(),
            ));
        }
        Ok(TriangularSpec {
            n,
            s,
            gamma: scaled,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Integer-scaled gamma grid.
    pub fn gamma(&self) -> &[Vec<Rat>] {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.n * (self.n - 1) / 2 + self.s
    }

    /// The difference matrix d_pk = gamma_p,kappa - gamma_p,k for
    /// k = 1..[n/2]; its rank is s'.
    pub fn diff_matrix(&self) -> Vec<Vec<Rat>> {
        let h = self.n / 2;
        self.gamma
            .iter()
            .map(|row| {
                (1..=h)
                    .map(|k| &row[kappa(self.n, k) - 1] - &row[k - 1])
                    .collect()
            })
            .collect()
    }

    /// Rank of the difference matrix by exact Gaussian elimination.
    pub fn diff_rank(&self) -> usize {
        scalar_rank(self.diff_matrix())
    }
}

/// Reduced form of the parameter matrix together with the derived data
/// (s', k_q, alpha, beta, Delta) and the row transform that produced it.
#[derive(Clone, Debug)]
pub struct ReducedGamma {
    pub gamma: Vec<Vec<Rat>>,
    pub s_prime: usize,
    /// Pivot columns k_1 < ... < k_{s'} within `1..=n/2`.
    pub k_list: Vec<usize>,
    /// `alpha[q][k-1]` = -sum_{k'=1..k} (gamma_q,kappa' - gamma_q,k') for the
    /// pivot rows q = 1..s'.
    pub alpha: Vec<Vec<Rat>>,
    /// `beta[&k][q]` for k in `1..=n/2` outside k_list.
    pub beta: BTreeMap<usize, Vec<Rat>>,
    pub delta: Rat,
    /// Invertible row transform: gamma = lambda * original + mu * ones.
    pub lambda: Vec<Vec<Rat>>,
    pub mu: Vec<Rat>,
    n: usize,
    s: usize,
}

impl ReducedGamma {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Verify the reduced-form conditions directly:
    /// gamma_qk = gamma_q,kappa for k < k_q; gamma_q,kappa_q - gamma_q,k_q = 1;
    /// gamma_p,k_q = gamma_p,kappa_q for p != q; and gamma_pk = gamma_p,kappa
    /// for p > s' and all k <= [n/2].
    pub fn check_reduced_conditions(&self) -> bool {
        let n = self.n;
        let h = n / 2;
        if self.k_list.len() != self.s_prime || self.s_prime > h.min(self.s) {
            return false;
        }
        if self.k_list.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if self.k_list.iter().any(|&k| k < 1 || k > h) {
            return false;
        }
        let d = |p: usize, k: usize| -> Rat {
            &self.gamma[p - 1][kappa(n, k) - 1] - &self.gamma[p - 1][k - 1]
        };
        for (q, &kq) in self.k_list.iter().enumerate() {
            let q = q + 1;
            for k in 1..kq {
                if !d(q, k).is_zero() {
                    return false;
                }
            }
            if d(q, kq) != Rat::one() {
                return false;
            }
            for p in 1..=self.s {
                if p != q && !d(p, kq).is_zero() {
                    return false;
                }
            }
        }
        for p in self.s_prime + 1..=self.s {
            for k in 1..=h {
                if !d(p, k).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Execute the row reduction of the parameter matrix: permute, scale and
/// combine rows until the reduced-form conditions hold. Pivots are chosen as
/// the smallest eligible row index for determinism.
pub fn reduce_gamma(spec: &TriangularSpec) -> Result<ReducedGamma> {
    let n = spec.n();
    let s = spec.s();
    let h = n / 2;
    let mut g: Vec<Vec<Rat>> = spec.gamma().to_vec();
    let mut lambda: Vec<Vec<Rat>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut k_list = Vec::new();
    let mut q = 0usize;
    for k in 1..=h {
        let kap = kappa(n, k);
        let d_of = |row: &[Rat]| -> Rat { &row[kap - 1] - &row[k - 1] };
        let Some(p) = (q..s).find(|&p| !d_of(&g[p]).is_zero()) else {
            continue;
        };
        g.swap(q, p);
        lambda.swap(q, p);
        let d = d_of(&g[q]);
        let inv = Rat::one() / &d;
        for c in g[q].iter_mut() {
            *c *= &inv;
        }
        for c in lambda[q].iter_mut() {
            *c *= &inv;
        }
        for p2 in 0..s {
            if p2 == q {
                continue;
            }
            let d2 = d_of(&g[p2]);
            if d2.is_zero() {
                continue;
            }
            for idx in 0..n {
                let delta = &d2 * &g[q][idx];
                g[p2][idx] -= delta;
            }
            for idx in 0..s {
                let delta = &d2 * &lambda[q][idx];
                lambda[p2][idx] -= delta;
            }
        }
        k_list.push(k);
        q += 1;
        if q == s {
            break;
        }
    }
    let s_prime = q;
    // alpha_qk over the reduced rows, beta and Delta from the pivot columns
    let mut alpha = Vec::with_capacity(s_prime);
    for row in g.iter().take(s_prime) {
        let mut acc = Rat::zero();
        let mut a = Vec::with_capacity(h);
        for k in 1..=h {
            acc -= &row[kappa(n, k) - 1] - &row[k - 1];
            a.push(acc.clone());
        }
        alpha.push(a);
    }
    let delta_matrix: Vec<Vec<Rat>> = (0..s_prime)
        .map(|qq| k_list.iter().map(|&kq| alpha[qq][kq - 1].clone()).collect())
        .collect();
    let delta = scalar_det(&delta_matrix);
    if s_prime > 0 && delta.is_zero() {
        return Err(Error::SpecError(
            "degenerate reduction: Delta vanished".into(),
        ));
    }
    let mut beta = BTreeMap::new();
    for k in 1..=h {
        if k_list.contains(&k) {
            continue;
        }
        let mut row = Vec::with_capacity(s_prime);
        for q_col in 0..s_prime {
            let mut m = delta_matrix.clone();
            for (qq, entry) in m.iter_mut().enumerate() {
                entry[q_col] = alpha[qq][k - 1].clone();
            }
            let dqk = scalar_det(&m);
            row.push(-dqk / &delta);
        }
        beta.insert(k, row);
    }
    Ok(ReducedGamma {
        gamma: g,
        s_prime,
        k_list,
        alpha,
        beta,
        delta,
        lambda,
        mu: vec![Rat::zero(); s],
        n,
        s,
    })
}

/// Determinant of a small dense rational matrix by cofactor expansion.
pub fn scalar_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Rat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &scalar_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Build t_gamma(n): basis `e[i,j]` (i < j, row-major) then `f[1..s]`, with
/// brackets `[e_ij, e_i'j'] = delta_i'j e_ij' - delta_ij' e_i'j` and
/// [f_p, e_ij] = (gamma_pi - gamma_pj) e_ij.
pub fn build_t_gamma(spec: &TriangularSpec) -> LieAlgebra {
    let n = spec.n();
    let s = spec.s();
    let pairs = strict_pairs(n);
    let np = pairs.len();
    let dim = np + s;
    let mut labels = Vec::with_capacity(dim);
    let mut coords = Vec::with_capacity(dim);
    let mut kinds = Vec::with_capacity(dim);
    for &(i, j) in &pairs {
        labels.push(format!("e[{i},{j}]"));
        coords.push(format!("x[{j},{i}]"));
        kinds.push(VarKind::CoordMatrix {
            i: j as u32,
            j: i as u32,
        });
    }
    for p in 1..=s {
        labels.push(format!("f[{p}]"));
        coords.push(format!("x[{p},0]"));
        kinds.push(VarKind::CoordNil { p: p as u32 });
    }
    let mut rows: Vec<((usize, usize), Vec<(usize, Rat)>)> = Vec::new();
    for a in 0..np {
        let (i, j) = pairs[a];
        for b in a + 1..np {
            let (i2, j2) = pairs[b];
            let mut terms = Vec::new();
            if i2 == j {
                terms.push((strict_pair_position(i, j2, n) + 1, Rat::one()));
            }
            if i == j2 {
                terms.push((strict_pair_position(i2, j, n) + 1, -Rat::one()));
            }
            if !terms.is_empty() {
                rows.push(((a + 1, b + 1), terms));
            }
        }
        // [e_ij, f_p] = -(gamma_pi - gamma_pj) e_ij
        for p in 1..=s {
            let w = &spec.gamma()[p - 1][j - 1] - &spec.gamma()[p - 1][i - 1];
            if !w.is_zero() {
                rows.push(((a + 1, np + p), vec![(a + 1, w)]));
            }
        }
    }
    LieAlgebra::new(
        dim,
        labels,
        coords,
        kinds,
        rows,
        Some(Family::TGamma(spec.clone())),
    )
    .expect("family construction is well-formed")
}

/// The nilpotent algebra of strictly upper triangular matrices: s = 0.
pub fn build_t0(n: usize) -> Result<LieAlgebra> {
    Ok(build_t_gamma(&TriangularSpec::new(n, Vec::new())?))
}

/// Special upper triangular matrices st(n) = t_gamma(n) with s = n - 1 and
/// gamma_pi = (n-p)/n for i <= p, -p/n otherwise.
pub fn build_st(n: usize) -> Result<LieAlgebra> {
    Ok(build_t_gamma(&st_spec(n)?))
}

/// The gamma data of st(n).
pub fn st_spec(n: usize) -> Result<TriangularSpec> {
    if n < 2 {
        return Err(Error::SpecError("n must be at least 2".into()));
    }
    let gamma = (1..n)
        .map(|p| {
            (1..=n)
                .map(|i| {
                    if i <= p {
                        Rat::new((n as i64 - p as i64).into(), (n as i64).into())
                    } else {
                        Rat::new((-(p as i64)).into(), (n as i64).into())
                    }
                })
                .collect()
        })
        .collect();
    TriangularSpec::new(n, gamma)
}

/// Non-strictly upper triangular matrices t(n): basis `e[i,j]`, i <= j, with
/// the same matrix-unit bracket; the center is spanned by the trace
/// `e[1,1] + ... + e[n,n]`.
pub fn build_t(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::SpecError("n must be at least 2".into()));
    }
    let pairs = upper_pairs(n);
    let np = pairs.len();
    let pos = |i: usize, j: usize| -> usize {
        pairs
            .iter()
            .position(|&(a, b)| a == i && b == j)
            .expect("pair in range")
    };
    let mut labels = Vec::with_capacity(np);
    let mut coords = Vec::with_capacity(np);
    let mut kinds = Vec::with_capacity(np);
    for &(i, j) in &pairs {
        labels.push(format!("e[{i},{j}]"));
        coords.push(format!("x[{j},{i}]"));
        kinds.push(VarKind::CoordMatrix {
            i: j as u32,
            j: i as u32,
        });
    }
    let mut rows = Vec::new();
    for a in 0..np {
        let (i, j) = pairs[a];
        for b in a + 1..np {
            let (i2, j2) = pairs[b];
            let mut terms: BTreeMap<usize, Rat> = BTreeMap::new();
            if i2 == j {
                *terms.entry(pos(i, j2) + 1).or_insert_with(Rat::zero) += Rat::one();
            }
            if i == j2 {
                *terms.entry(pos(i2, j) + 1).or_insert_with(Rat::zero) -= Rat::one();
            }
            let terms: Vec<(usize, Rat)> =
                terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                rows.push(((a + 1, b + 1), terms));
            }
        }
    }
    LieAlgebra::new(np, labels, coords, kinds, rows, Some(Family::T { n }))
}

/// The four-dimensional solvable algebra with brackets `[e2,e3] = e1`,
/// `[e1,e4] = (1+b) e1`, `[e2,e4] = e2`, `[e3,e4] = b e3`.
pub fn build_g48(b: Rat) -> LieAlgebra {
    let labels: Vec<String> = (1..=4).map(|i| format!("e{i}")).collect();
    let coords: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
    let kinds: Vec<VarKind> = (1..=4).map(|i| VarKind::CoordPlain { index: i }).collect();
    let one_plus_b = Rat::one() + &b;
    let mut rows: Vec<((usize, usize), Vec<(usize, Rat)>)> = vec![
        ((2, 3), vec![(1, Rat::one())]),
        ((2, 4), vec![(2, Rat::one())]),
    ];
    if !one_plus_b.is_zero() {
        rows.push(((1, 4), vec![(1, one_plus_b)]));
    }
    if !b.is_zero() {
        rows.push(((3, 4), vec![(3, b.clone())]));
    }
    LieAlgebra::new(4, labels, coords, kinds, rows, Some(Family::G48 { b }))
        .expect("fixed table is well-formed")
}

// ---------------------------------------------------------------------------
// JSON interchange format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermEntry {
    pub k: usize,
    pub c: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BracketRow {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TableFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FamilyFile {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

/// Either a family shorthand or an explicit structure-constant table.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum AlgebraFile {
    Family(FamilyFile),
    Table(TableFile),
}

fn parse_rat(s: &str) -> Result<Rat> {
    rat_from_str(s).ok_or_else(|| Error::ParseError(format!("bad rational literal {s:?}")))
}

fn label_ok(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !first.is_ascii_alphabetic() {
        return false;
    }
    let rest: String = chars.collect();
    if let Some(open) = rest.find('[') {
        let (head, tail) = rest.split_at(open);
        if !head.chars().all(|c| c.is_ascii_alphanumeric()) {
            return false;
        }
        let Some(inner) = tail.strip_prefix('[').and_then(|t| t.strip_suffix(']')) else {
            return false;
        };
        inner
            .split(',')
            .all(|part| !part.is_empty() && part.chars().all(|c| c.is_ascii_digit()))
    } else {
        rest.chars().all(|c| c.is_ascii_alphanumeric())
    }
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseError(format!("algebra JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<LieAlgebra> {
        match self {
            AlgebraFile::Family(f) => f.build(),
            AlgebraFile::Table(t) => t.build(),
        }
    }
}

impl FamilyFile {
    pub fn build(&self) -> Result<LieAlgebra> {
        let need_n = || {
            self.n
                .ok_or_else(|| Error::SpecError(format!("family {:?} needs n", self.family)))
        };
        match self.family.as_str() {
            "t0" => build_t0(need_n()?),
            "t" => build_t(need_n()?),
            "st" => build_st(need_n()?),
            "t_gamma" => {
                let n = need_n()?;
                let gamma_txt = self
                    .gamma
                    .as_ref()
                    .ok_or_else(|| Error::SpecError("t_gamma needs gamma".into()))?;
                let gamma = gamma_txt
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(build_t_gamma(&TriangularSpec::new(n, gamma)?))
            }
            "g48" => {
                let b = self
                    .b
                    .as_ref()
                    .ok_or_else(|| Error::SpecError("g48 needs b".into()))?;
                Ok(build_g48(parse_rat(b)?))
            }
            other => Err(Error::SpecError(format!("unknown family {other:?}"))),
        }
    }
}

impl TableFile {
    pub fn build(&self) -> Result<LieAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::SpecError("basis label count must equal dim".into()));
        }
        for l in &self.basis {
            if !label_ok(l) {
                return Err(Error::SpecError(format!("invalid basis label {l:?}")));
            }
        }
        let coords: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        let kinds: Vec<VarKind> = (1..=self.dim)
            .map(|i| VarKind::CoordPlain { index: i as u32 })
            .collect();
        let mut rows = Vec::new();
        for row in &self.brackets {
            let terms = row
                .terms
                .iter()
                .map(|t| Ok((t.k, parse_rat(&t.c)?)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(((row.i, row.j), terms));
        }
        LieAlgebra::new(self.dim, self.basis.clone(), coords, kinds, rows, None)
    }
}

impl LieAlgebra {
    /// Serializable form: the family shorthand when available, otherwise the
    /// full structure-constant table.
    pub fn to_file(&self) -> AlgebraFile {
        match &self.family {
            Some(Family::TGamma(spec)) if spec.s() == 0 => AlgebraFile::Family(FamilyFile {
                family: "t0".into(),
                n: Some(spec.n()),
                gamma: None,
                b: None,
            }),
            Some(Family::TGamma(spec)) => AlgebraFile::Family(FamilyFile {
                family: "t_gamma".into(),
                n: Some(spec.n()),
                gamma: Some(
                    spec.gamma()
                        .iter()
                        .map(|row| row.iter().map(rat_to_string).collect())
                        .collect(),
                ),
                b: None,
            }),
            Some(Family::T { n }) => AlgebraFile::Family(FamilyFile {
                family: "t".into(),
                n: Some(*n),
                gamma: None,
                b: None,
            }),
            Some(Family::G48 { b }) => AlgebraFile::Family(FamilyFile {
                family: "g48".into(),
                n: None,
                gamma: None,
                b: Some(rat_to_string(b)),
            }),
            None => AlgebraFile::Table(self.to_table_file()),
        }
    }

    pub fn to_table_file(&self) -> TableFile {
        TableFile {
            dim: self.dim,
            basis: self.basis_labels.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), terms)| BracketRow {
                    i,
                    j,
                    terms: terms
                        .iter()
                        .map(|(k, c)| TermEntry {
                            k: *k,
                            c: rat_to_string(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g48_satisfies_jacobi() {
        let alg = build_g48(rat(-1));
        assert!(alg.validate().is_empty());
        // [e1, e4] = (1+b) e1 = 0 for b = -1
        assert!(alg.bracket(1, 4).is_empty());
        let alg = build_g48(Rat::new(1.into(), 2.into()));
        assert!(alg.validate().is_empty());
    }

    #[test]
    fn abelian_and_broken_tables() {
        let abelian = LieAlgebra::new(
            3,
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec!["x1".into(), "x2".into(), "x3".into()],
            (1..=3).map(|i| VarKind::CoordPlain { index: i }).collect(),
            vec![],
            None,
        )
        .unwrap();
        assert!(abelian.validate().is_empty());
        assert_eq!(abelian.center_dim(), 3);

        // [e1,e2]=e2, [e1,e3]=e3, [e2,e3]=e1 violates Jacobi with residual 2e1
        let bad = LieAlgebra::new(
            3,
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec!["x1".into(), "x2".into(), "x3".into()],
            (1..=3).map(|i| VarKind::CoordPlain { index: i }).collect(),
            vec![
                ((1, 2), vec![(2, Rat::one())]),
                ((1, 3), vec![(3, Rat::one())]),
                ((2, 3), vec![(1, Rat::one())]),
            ],
            None,
        )
        .unwrap();
        let violations = bad.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(
            violations[0],
            JacobiViolation {
                i: 1,
                j: 2,
                k: 3,
                residual: vec![(1, rat(2))],
            }
        );
    }

    #[test]
    fn t_gamma_brackets() {
        // n=3, s=1, gamma=(-1,0,b): isomorphic to g4.8^b under
        // e1 ~ e13, e2 ~ e12, e3 ~ e23, e4 ~ f
        let b = rat(-1);
        let spec = TriangularSpec::new(3, vec![vec![rat(-1), rat(0), b.clone()]]).unwrap();
        let alg = build_t_gamma(&spec);
        assert!(alg.validate().is_empty());
        // basis order: e12, e13, e23, f
        // [e12, e23] = e13
        assert_eq!(alg.bracket(1, 3), vec![(2, Rat::one())]);
        // [e13, f] = -(gamma_1 - gamma_3) e13 = (b + 1) e13 = 0 for b = -1
        assert!(alg.bracket(2, 4).is_empty());
        // [e12, f] = -(gamma_1 - gamma_2) e12 = e12
        assert_eq!(alg.bracket(1, 4), vec![(1, Rat::one())]);

        // n=4, s=1, gamma=(1,0,0,1): [f,e14]=0, [f,e23]=0, [f,e12]=e12
        let spec = TriangularSpec::new(4, vec![vec![rat(1), rat(0), rat(0), rat(1)]]).unwrap();
        let alg = build_t_gamma(&spec);
        let f = alg.dim(); // f is the last basis element
        let e14 = strict_pair_position(1, 4, 4) + 1;
        let e23 = strict_pair_position(2, 3, 4) + 1;
        let e12 = strict_pair_position(1, 2, 4) + 1;
        assert!(alg.bracket(f, e14).is_empty());
        assert!(alg.bracket(f, e23).is_empty());
        assert_eq!(alg.bracket(f, e12), vec![(e12, Rat::one())]);
    }

    #[test]
    fn t0_and_t_families() {
        // n = 2: a single basis element, abelian
        let t02 = build_t0(2).unwrap();
        assert_eq!(t02.dim(), 1);
        assert!(t02.validate().is_empty());
        assert_eq!(t02.center_dim(), 1);

        let t03 = build_t0(3).unwrap();
        assert_eq!(t03.dim(), 3);
        // the only nonzero bracket is [e12, e23] = e13
        assert_eq!(t03.bracket(1, 3), vec![(2, Rat::one())]);
        assert!(t03.bracket(1, 2).is_empty());
        assert!(t03.bracket(2, 3).is_empty());
        assert_eq!(t03.center_dim(), 1);

        // t(2): [e11,e12]=e12, [e12,e22]=e12, center = trace
        let t2 = build_t(2).unwrap();
        assert_eq!(t2.dim(), 3);
        assert_eq!(t2.bracket(1, 2), vec![(2, Rat::one())]);
        assert_eq!(t2.bracket(2, 3), vec![(2, Rat::one())]);
        assert_eq!(t2.center_dim(), 1);
        assert!(t2.validate().is_empty());

        let t3 = build_t(3).unwrap();
        assert!(t3.validate().is_empty());
        assert_eq!(t3.center_dim(), 1);
    }

    #[test]
    fn families_satisfy_jacobi_up_to_7() {
        for n in 2..=7 {
            assert!(build_t0(n).unwrap().validate().is_empty(), "t0({n})");
            assert!(build_t(n).unwrap().validate().is_empty(), "t({n})");
            if n >= 2 {
                assert!(build_st(n).unwrap().validate().is_empty(), "st({n})");
            }
        }
    }

    #[test]
    fn st_matches_t_gamma_bracket_by_bracket() {
        for n in 2..=5 {
            let st = build_st(n).unwrap();
            let spec = st_spec(n).unwrap();
            let tg = build_t_gamma(&spec);
            assert_eq!(st.dim(), tg.dim());
            for i in 1..=st.dim() {
                for j in 1..=st.dim() {
                    assert_eq!(st.bracket(i, j), tg.bracket(i, j), "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        // s = 0: trivial
        let spec = TriangularSpec::new(4, vec![]).unwrap();
        let red = reduce_gamma(&spec).unwrap();
        assert_eq!(red.s_prime, 0);
        assert!(red.k_list.is_empty());
        assert!(red.check_reduced_conditions());

        // n=4, s=1, gamma=(0,1,0,0): k1 = 2, row scaled by -1
        let spec = TriangularSpec::new(4, vec![vec![rat(0), rat(1), rat(0), rat(0)]]).unwrap();
        let red = reduce_gamma(&spec).unwrap();
        assert_eq!(red.s_prime, 1);
        assert_eq!(red.k_list, vec![2]);
        assert_eq!(red.gamma[0], vec![rat(0), rat(-1), rat(0), rat(0)]);
        assert!(red.check_reduced_conditions());
        assert_eq!(red.s_prime, spec.diff_rank());

        // st(n): s' = [n/2]
        for n in 2..=6 {
            let spec = st_spec(n).unwrap();
            let red = reduce_gamma(&spec).unwrap();
            assert_eq!(red.s_prime, n / 2, "st({n})");
            assert!(red.check_reduced_conditions(), "st({n})");
            assert_eq!(red.s_prime, spec.diff_rank());
        }
    }

    #[test]
    fn reduction_transform_reproduces_gamma() {
        let spec = TriangularSpec::new(
            5,
            vec![
                vec![rat(1), rat(0), rat(2), rat(-1), rat(3)],
                vec![rat(0), rat(1), rat(1), rat(0), rat(-2)],
            ],
        )
        .unwrap();
        let red = reduce_gamma(&spec).unwrap();
        assert!(red.check_reduced_conditions());
        // gamma_reduced = lambda * gamma + mu * ones
        for p in 0..spec.s() {
            for i in 0..spec.n() {
                let mut acc = red.mu[p].clone();
                for p2 in 0..spec.s() {
                    acc += &red.lambda[p][p2] * &spec.gamma()[p2][i];
                }
                assert_eq!(acc, red.gamma[p][i]);
            }
        }
        assert_eq!(red.s_prime, spec.diff_rank());
    }

    #[test]
    fn center_of_g48() {
        assert_eq!(build_g48(rat(-1)).center_dim(), 1);
        assert_eq!(build_g48(Rat::new(1.into(), 2.into())).center_dim(), 0);
    }

    #[test]
    fn json_round_trip() {
        let alg = build_g48(Rat::new((-1).into(), 3.into()));
        let file = alg.to_file();
        let text = file.to_json();
        let back = AlgebraFile::from_json(&text).unwrap().build().unwrap();
        assert_eq!(back.dim(), 4);
        assert_eq!(back.bracket(3, 4), alg.bracket(3, 4));

        let table = alg.to_table_file();
        let text = AlgebraFile::Table(table).to_json();
        let back = AlgebraFile::from_json(&text).unwrap().build().unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(back.bracket(i, j), alg.bracket(i, j));
            }
        }
    }
}
