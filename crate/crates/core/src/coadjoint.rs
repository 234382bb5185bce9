//! Coadjoint machinery: adjoint matrices, exact exponentials of nilpotent or
//! integer-diagonal generators, the inner automorphism matrix B(theta), and
//! fundamental lifted invariants.
//!
//! Two constructions are provided. The generic one multiplies exponentials of
//! the adjoint matrices in second canonical coordinates (nilpotent generators
//! in basis order, then exponentials of diagonal generators with negated
//! parameter). The triangular one conjugates the coordinate matrix X by a
//! symbolic triangular group element B and is far cheaper for t_gamma(n).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::algebra::{build_t_gamma, strict_pair_position, LieAlgebra, TriangularSpec};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::vars::{VarId, VarKind, VariableTable};
use crate::{Mat, Rat, RatFn};

/// Fundamental lifted invariant: one entry per basis direction, as rational
/// functions of the dual coordinates and the essential group parameters.
#[derive(Clone, Debug)]
pub struct LiftedInvariantSet {
    pub entries: Vec<(String, RatFn)>,
    /// Essential group parameters: those actually occurring in some entry.
    pub params: Vec<VarId>,
    pub coords: Vec<VarId>,
    pub table: VariableTable,
    pub dim: usize,
}

impl LiftedInvariantSet {
    pub fn entry(&self, label: &str) -> Option<&RatFn> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, f)| f)
    }
}

/// Matrix of ad_{e_i}: column j holds the coordinates of [e_i, e_j].
pub fn adjoint_matrix(alg: &LieAlgebra, i: usize) -> Result<Mat> {
    let n = alg.dim();
    if i == 0 || i > n {
        return Err(Error::IndexError(format!("generator {i} of {n}")));
    }
    let mut m = Mat::zero(n, n);
    for j in 1..=n {
        for (k, c) in alg.bracket(i, j) {
            m[(k - 1, j - 1)] = RatFn::constant(c);
        }
    }
    Ok(m)
}

fn constant_entries(m: &Mat) -> Result<Vec<Vec<Rat>>> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(m[(i, j)].as_constant().ok_or_else(|| {
                Error::UnsupportedGenerator("adjoint matrix must be constant".into())
            })?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn const_mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn is_zero_mat(m: &[Vec<Rat>]) -> bool {
    m.iter().all(|row| row.iter().all(|c| c.is_zero()))
}

/// Exact exponential `exp(t m)` for a constant matrix `m`.
///
/// Nilpotent matrices give the finite series in `t`. Diagonal matrices with
/// rational entries give diagonal powers of the reified exponential `T`
/// associated with `t`; a common denominator `q` of the diagonal is absorbed
/// by reading `T` as `exp(t/q)`, so only integer powers of `T` ever occur.
pub fn exp_ad(m: &Mat, t: VarId, table: &mut VariableTable) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::ShapeError(format!(
            "exp of {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let rows = constant_entries(m)?;
    // nilpotency: some power up to n vanishes
    let mut powers: Vec<Vec<Vec<Rat>>> = vec![rows.clone()];
    let mut nilpotent_at = if is_zero_mat(&rows) { Some(0) } else { None };
    if nilpotent_at.is_none() {
        for r in 2..=n {
            let next = const_mat_mul(powers.last().unwrap(), &rows);
            if is_zero_mat(&next) {
                nilpotent_at = Some(r);
                break;
            }
            powers.push(next);
        }
    }
    if let Some(index) = nilpotent_at {
        let mut out = Mat::identity(n);
        let mut factorial = Rat::one();
        for (r, mp) in powers.iter().take(index.saturating_sub(1)).enumerate() {
            let r = r + 1;
            factorial *= Rat::from_integer((r as i64).into());
            let theta_pow =
                Polynomial::term(Rat::one() / &factorial, Monomial::var(t).pow(r as u32));
            let scale = RatFn::from_poly(theta_pow);
            for i in 0..n {
                for j in 0..n {
                    if !mp[i][j].is_zero() {
                        let term = &scale * &RatFn::constant(mp[i][j].clone());
                        out[(i, j)] = &out[(i, j)] + &term;
                    }
                }
            }
        }
        return Ok(out);
    }
    // diagonal with rational entries
    for i in 0..n {
        for j in 0..n {
            if i != j && !rows[i][j].is_zero() {
                return Err(Error::UnsupportedGenerator(
                    "adjoint matrix is neither nilpotent nor diagonal".into(),
                ));
            }
        }
    }
    let mut q = num_bigint::BigInt::one();
    for i in 0..n {
        q = num_integer::Integer::lcm(&q, rows[i][i].denom());
    }
    let index = match table.kind(t) {
        VarKind::Theta { index } => *index,
        _ => t.0,
    };
    let big_t = table.theta_exp(index);
    let q_rat = Rat::from_integer(q);
    let mut out = Mat::identity(n);
    for i in 0..n {
        let e = &rows[i][i] * &q_rat;
        debug_assert!(e.denom().is_one());
        let k: i64 = e
            .numer()
            .try_into()
            .map_err(|_| Error::UnsupportedGenerator("diagonal exponent too large".into()))?;
        out[(i, i)] = RatFn::var(big_t).pow(k)?;
    }
    Ok(out)
}

fn occurring_params(entries: &[(String, RatFn)], table: &VariableTable) -> Vec<VarId> {
    let mut seen: BTreeSet<VarId> = BTreeSet::new();
    for (_, f) in entries {
        for v in f.vars() {
            if table.kind(v).is_parameter() {
                seen.insert(v);
            }
        }
    }
    seen.into_iter().collect()
}

enum GeneratorClass {
    Central,
    Nilpotent,
    Diagonal,
}

fn classify(m: &Mat) -> Result<GeneratorClass> {
    let n = m.rows();
    let rows = constant_entries(m)?;
    if is_zero_mat(&rows) {
        return Ok(GeneratorClass::Central);
    }
    let mut p = rows.clone();
    for _ in 2..=n {
        p = const_mat_mul(&p, &rows);
        if is_zero_mat(&p) {
            return Ok(GeneratorClass::Nilpotent);
        }
    }
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || rows[i][j].is_zero()));
    if diagonal {
        Ok(GeneratorClass::Diagonal)
    } else {
        Err(Error::UnsupportedGenerator(
            "adjoint matrix is neither nilpotent nor diagonal".into(),
        ))
    }
}

/// Generic fundamental lifted invariant: I = x . B(theta) with
/// B = prod_{nilpotent i} exp(theta_i ad_i) * prod_{diagonal p} exp(-theta_p ad_p).
/// Parameters of central directions never occur and are pruned.
pub fn lifted_generic(alg: &LieAlgebra) -> Result<LiftedInvariantSet> {
    let dim = alg.dim();
    let mut table = alg.base_table();
    let mut nilpotent = Vec::new();
    let mut diagonal = Vec::new();
    for i in 1..=dim {
        let ad = adjoint_matrix(alg, i)?;
        match classify(&ad)? {
            GeneratorClass::Central => {}
            GeneratorClass::Nilpotent => nilpotent.push((i, ad)),
            GeneratorClass::Diagonal => diagonal.push((i, ad)),
        }
    }
    let mut b = Mat::identity(dim);
    for (i, ad) in &nilpotent {
        let theta = table.add(
            VarKind::Theta { index: *i as u32 },
            format!("theta[{i}]"),
            None,
        );
        b = b.mul(&exp_ad(ad, theta, &mut table)?)?;
    }
    for (i, ad) in &diagonal {
        let theta = table.add(
            VarKind::Theta { index: *i as u32 },
            format!("theta[{i}]"),
            None,
        );
        let neg = Mat::from_fn(dim, dim, |r, c| -&ad[(r, c)]);
        b = b.mul(&exp_ad(&neg, theta, &mut table)?)?;
    }
    let mut entries = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut acc = RatFn::zero();
        for i in 0..dim {
            if b[(i, j)].is_zero() {
                continue;
            }
            acc = &acc + &(&RatFn::var(VarId(i as u32)) * &b[(i, j)]);
        }
        entries.push((format!("I[{}]", j + 1), acc));
    }
    let params = occurring_params(&entries, &table);
    Ok(LiftedInvariantSet {
        params,
        coords: (0..dim as u32).map(VarId).collect(),
        entries,
        table,
        dim,
    })
}

/// Triangular fundamental lifted invariant: the strictly lower entries of
/// B X B^{-1} for a symbolic B in T_gamma(n), plus the nilindependent entries
/// I_p0 = x_p0 + sum_{j<i} (B^{-1} Gamma_p B)_{ji} x_ij.
///
/// Inessential parameters (`b[1,n]` when gamma_p1 = gamma_pn for all p) cancel
/// during expansion and are pruned by the occurrence check.
pub fn lifted_triangular(spec: &TriangularSpec) -> Result<LiftedInvariantSet> {
    let n = spec.n();
    let s = spec.s();
    let alg = build_t_gamma(spec);
    let dim = alg.dim();
    let mut table = alg.base_table();
    let mut bvar = std::collections::BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let id = table.add(
                VarKind::GroupB {
                    i: i as u32,
                    j: j as u32,
                },
                format!("b[{i},{j}]"),
                None,
            );
            bvar.insert((i, j), id);
        }
    }
    let evar: Vec<VarId> = (1..=s)
        .map(|p| table.add(VarKind::GroupE { p: p as u32 }, format!("E[{p}]"), None))
        .collect();
    // diagonal entry prod_p E_p^{gamma_pi} as a Laurent monomial
    let diag_entry = |i: usize| -> RatFn {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for p in 0..s {
            let g = &spec.gamma()[p][i - 1];
            debug_assert!(g.denom().is_one());
            let k: i64 = g.numer().try_into().expect("small exponent");
            match k.cmp(&0) {
                std::cmp::Ordering::Greater => num.push((evar[p], k as u32)),
                std::cmp::Ordering::Less => den.push((evar[p], (-k) as u32)),
                std::cmp::Ordering::Equal => {}
            }
        }
        RatFn::new(
            Polynomial::term(Rat::one(), Monomial::from_pairs(num)),
            Polynomial::term(Rat::one(), Monomial::from_pairs(den)),
        )
        .expect("monomial denominator")
    };
    let b = Mat::from_fn(n, n, |r, c| {
        if r == c {
            diag_entry(r + 1)
        } else if r < c {
            RatFn::var(bvar[&(r + 1, c + 1)])
        } else {
            RatFn::zero()
        }
    });
    let binv = b.invert_upper_triangular()?;
    let coord = |i: usize, j: usize| -> VarId {
        // x_ij is dual to e_ji, stored at the basis position of the pair (j, i)
        VarId(strict_pair_position(j, i, n) as u32)
    };
    let x = Mat::from_fn(n, n, |r, c| {
        if r > c {
            RatFn::var(coord(r + 1, c + 1))
        } else {
            RatFn::zero()
        }
    });
    let conj = b.mul(&x)?.mul(&binv)?;
    let mut entries = Vec::with_capacity(dim);
    for i in 2..=n {
        for j in 1..i {
            entries.push((format!("I[{i},{j}]"), conj[(i - 1, j - 1)].clone()));
        }
    }
    for p in 1..=s {
        let gamma_diag = Mat::from_fn(n, n, |r, c| {
            if r == c {
                RatFn::constant(spec.gamma()[p - 1][r].clone())
            } else {
                RatFn::zero()
            }
        });
        let m = binv.mul(&gamma_diag)?.mul(&b)?;
        let mut acc = RatFn::var(VarId((n * (n - 1) / 2 + p - 1) as u32));
        for j in 1..=n {
            for i in j + 1..=n {
                if m[(j - 1, i - 1)].is_zero() {
                    continue;
                }
                acc = &acc + &(&m[(j - 1, i - 1)] * &RatFn::var(coord(i, j)));
            }
        }
        entries.push((format!("I[{p},0]"), acc));
    }
    let params = occurring_params(&entries, &table);
    Ok(LiftedInvariantSet {
        params,
        coords: (0..dim as u32).map(VarId).collect(),
        entries,
        table,
        dim,
    })
}
