//! Parameter elimination by normalization: impose constraints on lifted
//! invariants, solve for group parameters, substitute, and read off a
//! fundamental set of invariants together with the coadjoint rank.
//!
//! The engine runs three phases:
//! 1. hint consumption: caller-supplied (entry, constant) constraints, each
//!    solved linearly for one group parameter;
//! 2. greedy zero-normalization: entries are set to 0 and solved for a
//!    parameter occurring linearly, smallest entries first;
//! 3. multiplicative elimination: entries that have become a single monomial
//!    in the exponential parameters times a parameter-free function are
//!    combined through an integer kernel of their exponent matrix, which
//!    yields the remaining invariants as integer power products.
//!
//! Exponential parameters reify group exponentials and are units, so they are
//! never solved to zero. If parameters survive all phases the engine reports
//! the residual entries instead of guessing.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{kappa, LieAlgebra, ReducedGamma, TriangularSpec};
use crate::coadjoint::{lifted_generic, lifted_triangular, LiftedInvariantSet};
use crate::error::{Error, Result};
use crate::grammar::print_ratfn;
use crate::poly::Monomial;
use crate::ratfun::solve_linear_for;
use crate::vars::{PrintSpace, VarId, VarKind, VariableTable};
use crate::{Poly, Rat, RatFn};

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub entry: String,
    pub constant: Rat,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct NormalizationResult {
    pub basis: Vec<RatFn>,
    pub basis_labels: Vec<String>,
    /// Rank of the coadjoint representation: the number of constraints spent.
    pub rho: usize,
    /// Number of functionally independent invariants, dim - rho.
    pub n_g: usize,
    pub trace: Vec<TraceStep>,
    pub table: VariableTable,
}

struct Entry {
    label: String,
    value: RatFn,
    consumed: bool,
}

fn is_exp_kind(kind: &VarKind) -> bool {
    matches!(kind, VarKind::GroupE { .. } | VarKind::ThetaExp { .. })
}

fn params_of(value: &RatFn, table: &VariableTable) -> Vec<VarId> {
    value
        .vars()
        .into_iter()
        .filter(|v| table.kind(*v).is_parameter())
        .collect()
}

/// Cancel the known factors (numerators and denominators of earlier
/// solutions) out of both sides of a fraction by exact trial division.
/// Substitution chains multiply entries by the same few polynomials over and
/// over, and eagerly removing them keeps intermediate sizes tame; this stays
/// far short of a general gcd.
fn cancel_known_factors(f: RatFn, factors: &[Poly]) -> RatFn {
    if f.is_zero() || f.is_polynomial() {
        return f;
    }
    let mut num = f.num().clone();
    let mut den = f.den().clone();
    let mut changed = false;
    loop {
        let mut progress = false;
        for g in factors {
            loop {
                let Some(n2) = num.exact_div(g) else { break };
                let Some(d2) = den.exact_div(g) else { break };
                num = n2;
                den = d2;
                progress = true;
                changed = true;
            }
        }
        if !progress {
            break;
        }
    }
    if changed {
        RatFn::new(num, den).expect("denominator stays nonzero")
    } else {
        f
    }
}

/// Split the parameter part off a monomial; returns (param pairs, coord part).
fn split_monomial(m: &Monomial, table: &VariableTable) -> (Vec<(VarId, u32)>, Monomial) {
    let mut params = Vec::new();
    let mut plain = Vec::new();
    for &(v, e) in m.pairs() {
        if table.kind(v).is_parameter() {
            params.push((v, e));
        } else {
            plain.push((v, e));
        }
    }
    (params, Monomial::from_pairs(plain))
}

/// Decompose `p` as (uniform parameter monomial) * (parameter-free part).
fn uniform_param_part(p: &Poly, table: &VariableTable) -> Option<(Vec<(VarId, u32)>, Poly)> {
    let mut shared: Option<Vec<(VarId, u32)>> = None;
    let mut free = Poly::zero();
    for (m, c) in p.terms() {
        let (params, plain) = split_monomial(m, table);
        match &shared {
            None => shared = Some(params),
            Some(s) if *s == params => {}
            _ => return None,
        }
        free.add_term(plain, c.clone());
    }
    Some((shared.unwrap_or_default(), free))
}

/// Entry as (exp-var exponent vector, parameter-free rational part), when it
/// is a single monomial in exponential parameters times a parameter-free
/// function.
fn exp_homogeneous(value: &RatFn, table: &VariableTable) -> Option<(BTreeMap<VarId, i64>, RatFn)> {
    let (mn, num_free) = uniform_param_part(value.num(), table)?;
    let (md, den_free) = uniform_param_part(value.den(), table)?;
    let mut w: BTreeMap<VarId, i64> = BTreeMap::new();
    for (v, e) in mn {
        if !is_exp_kind(table.kind(v)) {
            return None;
        }
        *w.entry(v).or_insert(0) += e as i64;
    }
    for (v, e) in md {
        if !is_exp_kind(table.kind(v)) {
            return None;
        }
        *w.entry(v).or_insert(0) -= e as i64;
    }
    w.retain(|_, e| *e != 0);
    let part = RatFn::new(num_free, den_free).ok()?;
    Some((w, part))
}

/// Primitive integer basis of { c : c W = 0 } for an integer matrix given by
/// rows; computed by exact Gaussian elimination over the rationals.
fn integer_left_kernel(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let cols = rows[0].len();
    // transpose: kernel of W^T x = 0 in the entry space
    let mut a: Vec<Vec<Rat>> = (0..cols)
        .map(|j| {
            (0..m)
                .map(|i| Rat::from_integer(rows[i][j].into()))
                .collect()
        })
        .collect();
    let mut pivot_col = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rat::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..m {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivot_col.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..m {
        if pivot_col.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); m];
        v[free] = Rat::one();
        for (row_idx, &pc) in pivot_col.iter().enumerate() {
            v[pc] = -a[row_idx][free].clone();
        }
        // clear denominators and divide by the content
        let mut l = num_bigint::BigInt::one();
        for x in &v {
            l = l.lcm(x.denom());
        }
        let mut ints: Vec<num_bigint::BigInt> =
            v.iter().map(|x| x.numer() * &l / x.denom()).collect();
        let mut g = num_bigint::BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        if !g.is_zero() && !g.is_one() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in ints.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        basis.push(
            ints.into_iter()
                .map(|x| i64::try_from(&x).expect("small kernel entries"))
                .collect(),
        );
    }
    basis
}

/// Eliminate group parameters from a lifted invariant set. Hints are consumed
/// first, in order; each pins one entry to a constant and solves one group
/// parameter linearly.
pub fn normalize(
    lifted: &LiftedInvariantSet,
    hints: &[(String, Rat)],
) -> Result<NormalizationResult> {
    let table = lifted.table.clone();
    let mut entries: Vec<Entry> = lifted
        .entries
        .iter()
        .map(|(label, value)| Entry {
            label: label.clone(),
            value: value.clone(),
            consumed: false,
        })
        .collect();
    let dim = lifted.dim;
    let mut trace = Vec::new();
    let mut rho = 0usize;

    let stuck = |entries: &[Entry]| -> Error {
        Error::NormalizationStuck {
            residual: entries
                .iter()
                .filter(|e| !e.consumed && !params_of(&e.value, &table).is_empty())
                .map(|e| {
                    format!(
                        "{} = {}",
                        e.label,
                        print_ratfn(&e.value, &table, PrintSpace::Dual)
                    )
                })
                .collect(),
        }
    };

    // known cancellation candidates: solution numerators and denominators
    let mut factors: Vec<Poly> = Vec::new();
    let note_factor = |factors: &mut Vec<Poly>, p: &Poly| {
        if !p.is_constant() && !factors.contains(p) {
            factors.push(p.clone());
        }
    };

    // cancellation candidates drawn from the current solution map: the
    // numerators and denominators of the fully rewritten right-hand sides
    fn map_factors(final_map: &BTreeMap<VarId, RatFn>) -> Vec<Poly> {
        let mut factors: Vec<Poly> = Vec::new();
        for rhs in final_map.values() {
            for p in [rhs.num(), rhs.den()] {
                if !p.is_constant() && !factors.contains(p) {
                    factors.push(p.clone());
                }
            }
        }
        factors
    }

    // simultaneous application of the accumulated solutions to one value,
    // cancelling known factors after every intermediate accumulation
    fn refresh(value: &RatFn, final_map: &BTreeMap<VarId, RatFn>) -> Result<RatFn> {
        if !value.vars().iter().any(|v| final_map.contains_key(v)) {
            return Ok(value.clone());
        }
        let factors = map_factors(final_map);
        value.substitute_with(final_map, &|f| cancel_known_factors(f, &factors))
    }

    // apply one solved parameter everywhere; fails on singular substitution
    fn apply(
        entries: &mut [Entry],
        target: usize,
        v: VarId,
        solution: &RatFn,
        factors: &[Poly],
    ) -> std::result::Result<(), ()> {
        let mut binding = BTreeMap::new();
        binding.insert(v, solution.clone());
        let mut updated = Vec::new();
        for (idx, e) in entries.iter().enumerate() {
            if e.consumed || idx == target {
                continue;
            }
            if !e.value.contains_var(v) {
                continue;
            }
            match e.value.substitute(&binding) {
                Ok(nv) => updated.push((idx, cancel_known_factors(nv, factors))),
                Err(_) => return Err(()),
            }
        }
        for (idx, nv) in updated {
            entries[idx].value = nv;
        }
        entries[target].consumed = true;
        Ok(())
    }

    // Parameters whose mirror entry stays unconstrained are reserved for the
    // later nilindependent constraints: for b[i,j] that is the entry I[j,i].
    // Solving them early would entangle every subsequent substitution.
    let hinted: BTreeSet<&str> = hints.iter().map(|(l, _)| l.as_str()).collect();
    let reserved: BTreeSet<VarId> = lifted
        .params
        .iter()
        .copied()
        .filter(|v| match table.kind(*v) {
            VarKind::GroupB { i, j } => {
                let mirror = format!("I[{j},{i}]");
                !hinted.contains(mirror.as_str()) && entries.iter().any(|e| e.label == mirror)
            }
            _ => false,
        })
        .collect();

    // Phase 1: hints. Solutions are not substituted into the other entries
    // right away; they accumulate in a fully back-substituted map and every
    // entry is refreshed once at the end of the phase. Sequential updates of
    // the large nilindependent entries would otherwise inflate intermediate
    // fractions badly. A solution solved from a refreshed entry can only
    // mention parameters that are still unsolved, so inserting it keeps the
    // map final after rewriting the stored right-hand sides.
    let mut final_map: BTreeMap<VarId, RatFn> = BTreeMap::new();
    for (label, c) in hints {
        let Some(target) = entries.iter().position(|e| &e.label == label) else {
            return Err(Error::SpecError(format!(
                "hint references unknown entry {label}"
            )));
        };
        if entries[target].consumed {
            return Err(Error::SpecError(format!("hint repeats entry {label}")));
        }
        // Detached shortcut: a reserved parameter occurring linearly in this
        // entry and nowhere else that matters never needs its solved value at
        // all. The entry is consumed against it directly; if the parameter
        // were secretly needed later it would resurface as a parametric
        // residual and be reported, never silently dropped.
        if c.is_zero() {
            let stale = entries[target].value.clone();
            let mut shortcut = None;
            for v in params_of(&stale, &table) {
                if !reserved.contains(&v)
                    || final_map.contains_key(&v)
                    || stale.num().degree_in(v) != 1
                    || stale.den().degree_in(v) != 0
                    || final_map.values().any(|r| r.contains_var(v))
                {
                    continue;
                }
                let hinted_elsewhere = entries.iter().enumerate().any(|(idx, e)| {
                    idx != target
                        && !e.consumed
                        && !hinted.contains(e.label.as_str())
                        && e.value.contains_var(v)
                });
                if hinted_elsewhere {
                    continue;
                }
                let coeff = RatFn::from_poly(stale.num().coeff_of(v, 1));
                let Ok(coeff_r) = refresh(&coeff, &final_map) else {
                    continue;
                };
                if coeff_r.is_zero() {
                    continue;
                }
                shortcut = Some(v);
                break;
            }
            if let Some(v) = shortcut {
                entries[target].consumed = true;
                trace.push(TraceStep {
                    entry: label.clone(),
                    constant: c.clone(),
                    detail: format!(
                        "{label} = 0 determines {}; its value is needed nowhere else",
                        table.display(v, PrintSpace::Dual)
                    ),
                });
                rho += 1;
                continue;
            }
        }
        let refreshed = match refresh(&entries[target].value, &final_map) {
            Ok(v) => v,
            Err(_) => return Err(stuck(&entries)),
        };
        entries[target].value = refreshed;
        let eq = &entries[target].value - &RatFn::constant(c.clone());
        // rank candidates by how small their solution is: the structured
        // eliminations produce compact determinant ratios, and picking those
        // keeps every later substitution tame
        let mut cands: Vec<((usize, usize, usize, usize, u32), VarId, RatFn)> = Vec::new();
        for v in params_of(&entries[target].value, &table) {
            if eq.num().degree_in(v) != 1 {
                continue;
            }
            let Ok(solution) = solve_linear_for(&eq, v) else {
                continue;
            };
            let kind_rank = usize::from(is_exp_kind(table.kind(v)));
            let reserve_rank = usize::from(reserved.contains(&v));
            let occurrences = entries
                .iter()
                .enumerate()
                .filter(|(idx, e)| !e.consumed && *idx != target && e.value.contains_var(v))
                .count();
            cands.push((
                (kind_rank, reserve_rank, solution.size(), occurrences, v.0),
                v,
                solution,
            ));
        }
        cands.sort_by(|a, b| a.0.cmp(&b.0));
        let mut done = false;
        for (_, v, solution) in cands {
            if is_exp_kind(table.kind(v)) && solution.is_zero() {
                continue;
            }
            // rewrite stored solutions that mention the newly solved variable
            let mut just = BTreeMap::new();
            just.insert(v, solution.clone());
            let rewrite_factors = map_factors(&final_map);
            let mut rewritten = Vec::new();
            let mut ok = true;
            for (w, rhs) in &final_map {
                if rhs.contains_var(v) {
                    match rhs.substitute_with(&just, &|f| cancel_known_factors(f, &rewrite_factors))
                    {
                        Ok(nv) => rewritten.push((*w, nv)),
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if !ok {
                continue;
            }
            for (w, nv) in rewritten {
                final_map.insert(w, nv);
            }
            final_map.insert(v, solution.clone());
            entries[target].consumed = true;
            trace.push(TraceStep {
                entry: label.clone(),
                constant: c.clone(),
                detail: format!(
                    "{label} = {c} solved for {} = {}",
                    table.display(v, PrintSpace::Dual),
                    print_ratfn(&solution, &table, PrintSpace::Dual)
                ),
            });
            rho += 1;
            done = true;
            break;
        }
        if !done {
            return Err(stuck(&entries));
        }
    }
    // fold the accumulated solutions into every surviving entry at once
    if !final_map.is_empty() {
        for f in map_factors(&final_map) {
            note_factor(&mut factors, &f);
        }
        let mut folded = Vec::new();
        for (idx, e) in entries.iter().enumerate() {
            if e.consumed {
                continue;
            }
            match refresh(&e.value, &final_map) {
                Ok(nv) => folded.push((idx, nv)),
                Err(_) => return Err(stuck(&entries)),
            }
        }
        for (idx, nv) in folded {
            entries[idx].value = nv;
        }
    }

    // Phase 2: greedy zero-normalizations
    loop {
        let mut cands: Vec<(usize, usize, u32, usize, VarId)> = Vec::new();
        for (idx, e) in entries.iter().enumerate() {
            if e.consumed {
                continue;
            }
            for v in params_of(&e.value, &table) {
                if e.value.num().degree_in(v) == 1 {
                    cands.push((e.value.size(), idx, v.0, idx, v));
                }
            }
        }
        cands.sort();
        let mut progressed = false;
        for (_, _, _, idx, v) in cands {
            let Ok(solution) = solve_linear_for(&entries[idx].value, v) else {
                continue;
            };
            if is_exp_kind(table.kind(v)) && solution.is_zero() {
                continue;
            }
            let label = entries[idx].label.clone();
            note_factor(&mut factors, solution.num());
            note_factor(&mut factors, solution.den());
            if apply(&mut entries, idx, v, &solution, &factors).is_ok() {
                trace.push(TraceStep {
                    entry: label.clone(),
                    constant: Rat::zero(),
                    detail: format!(
                        "{label} = 0 solved for {} = {}",
                        table.display(v, PrintSpace::Dual),
                        print_ratfn(&solution, &table, PrintSpace::Dual)
                    ),
                });
                rho += 1;
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }

    // Phase 3: multiplicative elimination of exponential parameters
    let parametric: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.consumed && !params_of(&e.value, &table).is_empty())
        .map(|(idx, _)| idx)
        .collect();
    let mut products: Vec<(String, RatFn)> = Vec::new();
    if !parametric.is_empty() {
        let mut decomposed = Vec::with_capacity(parametric.len());
        for &idx in &parametric {
            match exp_homogeneous(&entries[idx].value, &table) {
                Some(d) => decomposed.push(d),
                None => return Err(stuck(&entries)),
            }
        }
        let vars: BTreeSet<VarId> = decomposed
            .iter()
            .flat_map(|(w, _)| w.keys().copied())
            .collect();
        let vars: Vec<VarId> = vars.into_iter().collect();
        let w_rows: Vec<Vec<i64>> = decomposed
            .iter()
            .map(|(w, _)| {
                vars.iter()
                    .map(|v| w.get(v).copied().unwrap_or(0))
                    .collect()
            })
            .collect();
        let kernel = integer_left_kernel(&w_rows);
        let rank = parametric.len() - kernel.len();
        for (t, combo) in kernel.iter().enumerate() {
            let mut acc = RatFn::one();
            let mut pieces = Vec::new();
            for (i, &c) in combo.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                acc = cancel_known_factors(&acc * &decomposed[i].1.pow(c)?, &factors);
                pieces.push(format!("{}^{}", entries[parametric[i]].label, c));
            }
            trace.push(TraceStep {
                entry: format!("J[{}]", t + 1),
                constant: Rat::one(),
                detail: format!("invariant combination {}", pieces.join("*")),
            });
            products.push((format!("J[{}]", t + 1), acc));
        }
        trace.push(TraceStep {
            entry: "exp-parameters".into(),
            constant: Rat::one(),
            detail: format!(
                "eliminated {} exponential parameter(s) from {} monomial entries",
                rank,
                parametric.len()
            ),
        });
        for &idx in &parametric {
            entries[idx].consumed = true;
        }
        rho += rank;
    }

    // remaining entries must be parameter-free
    for e in &entries {
        if !e.consumed && !params_of(&e.value, &table).is_empty() {
            return Err(stuck(&entries));
        }
    }
    let mut basis = Vec::new();
    let mut basis_labels = Vec::new();
    for e in &entries {
        if !e.consumed {
            basis.push(e.value.clone());
            basis_labels.push(e.label.clone());
        }
    }
    for (label, value) in products {
        basis.push(value);
        basis_labels.push(label);
    }
    let n_g = dim - rho;
    debug_assert_eq!(n_g, basis.len());
    Ok(NormalizationResult {
        basis,
        basis_labels,
        rho,
        n_g,
        trace,
        table,
    })
}

/// The normalization plan for triangular algebras: zero constraints on every
/// strictly-lower entry off the significant part of the secondary diagonal,
/// then zero constraints on `I[q,0]` for the pivot rows q <= s'.
pub fn triangular_hints(spec: &TriangularSpec, reduced: &ReducedGamma) -> Vec<(String, Rat)> {
    let n = spec.n();
    let h = n / 2;
    let mut hints = Vec::new();
    let anti = |i: usize, j: usize| -> bool { j <= h && i == kappa(n, j) };
    // row kappa systems: columns below the antidiagonal index
    for k in 2..=(n + 1) / 2 {
        let row = kappa(n, k);
        for j in 1..k {
            if !anti(row, j) {
                hints.push((format!("I[{row},{j}]"), Rat::zero()));
            }
        }
    }
    // row kappa systems: columns above the antidiagonal index
    for k in 1..=h {
        let row = kappa(n, k);
        for j in k + 1..row {
            if !anti(row, j) {
                hints.push((format!("I[{row},{j}]"), Rat::zero()));
            }
        }
    }
    // top rows
    for k in 2..=h {
        for j in 1..k {
            if !anti(k, j) {
                hints.push((format!("I[{k},{j}]"), Rat::zero()));
            }
        }
    }
    for q in 1..=reduced.s_prime {
        hints.push((format!("I[{q},0]"), Rat::zero()));
    }
    hints
}

/// End-to-end normalization for an algebra: the triangular route (reduce
/// gamma, build the triangular lifted set, run the hint plan, translate the
/// nilindependent coordinates back through the recorded row transform) when a
/// t_gamma family tag is present, the generic route otherwise.
pub fn invariants_by_normalization(alg: &LieAlgebra) -> Result<NormalizationResult> {
    match alg.family() {
        Some(crate::algebra::Family::TGamma(spec)) => {
            let reduced = crate::algebra::reduce_gamma(spec)?;
            let red_spec = TriangularSpec::new(spec.n(), reduced.gamma.clone())?;
            let lifted = lifted_triangular(&red_spec)?;
            let hints = triangular_hints(&red_spec, &reduced);
            let mut result = normalize(&lifted, &hints)?;
            let s = spec.s();
            if s > 0 {
                // the lifted set used f~_q = rho_q * sum_p lambda_qp f_p; its
                // dual coordinate expands accordingly in original coordinates
                let np = spec.n() * (spec.n() - 1) / 2;
                let mut bindings = BTreeMap::new();
                for q in 0..s {
                    // rho_q: the integer rescaling applied by TriangularSpec
                    let mut l = num_bigint::BigInt::one();
                    for c in &reduced.gamma[q] {
                        l = l.lcm(c.denom());
                    }
                    let rho_q = Rat::from_integer(l);
                    let mut p = Poly::zero();
                    for (pp, coef) in reduced.lambda[q].iter().enumerate() {
                        let scaled = coef * &rho_q;
                        if !scaled.is_zero() {
                            p.add_term(Monomial::var(VarId((np + pp) as u32)), scaled);
                        }
                    }
                    bindings.insert(VarId((np + q) as u32), RatFn::from_poly(p));
                }
                for f in result.basis.iter_mut() {
                    *f = f.substitute(&bindings)?;
                }
            }
            Ok(result)
        }
        _ => normalize(&lifted_generic(alg)?, &[]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_g48, build_t, build_t0, reduce_gamma};
    use crate::coadjoint::lifted_generic;
    use crate::grammar::parse_ratfn;
    use crate::rat;

    #[test]
    fn integer_kernel_bases() {
        // single relation 2c1 + 3c2 = 0
        let k = integer_left_kernel(&[vec![2], vec![3]]);
        assert_eq!(k, vec![vec![3, -2]]);
        // full-rank exponent matrix has no kernel
        assert!(integer_left_kernel(&[vec![1, 0], vec![0, 1]]).is_empty());
        // one dependent row
        let k = integer_left_kernel(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(k.len(), 1);
        let c = &k[0];
        assert_eq!(c[0] + c[2], 0);
        assert_eq!(c[1] + c[2], 0);
    }

    #[test]
    fn g48_case_b_minus_one() {
        let alg = build_g48(rat(-1));
        let result = invariants_by_normalization(&alg).unwrap();
        assert_eq!(result.rho, 2);
        assert_eq!(result.n_g, 2);
        let table = &result.table;
        let x1 = parse_ratfn("x1", table).unwrap();
        let second = parse_ratfn("x4 - x2*x3/x1", table).unwrap();
        assert!(result.basis.contains(&x1));
        assert!(result.basis.contains(&second));
    }

    #[test]
    fn g48_case_b_not_minus_one() {
        for b in [
            rat(1),
            rat(0),
            Rat::new(1.into(), 2.into()),
            Rat::new((-1).into(), 3.into()),
            Rat::new(2.into(), 3.into()),
        ] {
            let alg = build_g48(b.clone());
            let result = invariants_by_normalization(&alg).unwrap();
            assert_eq!(result.n_g, 0, "b = {b}");
            assert!(result.basis.is_empty());
        }
    }

    #[test]
    fn abelian_keeps_all_coordinates() {
        use crate::vars::VarKind;
        let abelian = LieAlgebra::new(
            3,
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec!["x1".into(), "x2".into(), "x3".into()],
            (1..=3).map(|i| VarKind::CoordPlain { index: i }).collect(),
            vec![],
            None,
        )
        .unwrap();
        let lifted = lifted_generic(&abelian).unwrap();
        let result = normalize(&lifted, &[]).unwrap();
        assert_eq!(result.rho, 0);
        assert_eq!(result.n_g, 3);
    }

    #[test]
    fn t0_counts() {
        for n in 2..=6 {
            let alg = build_t0(n).unwrap();
            let result = invariants_by_normalization(&alg).unwrap();
            assert_eq!(result.n_g, n / 2, "t0({n})");
            for f in &result.basis {
                assert!(params_of(f, &result.table).is_empty());
            }
        }
    }

    #[test]
    fn t0_4_hint_plan() {
        // zero hints exactly on (3,1), (4,2), (4,3), (2,1)
        let spec = TriangularSpec::new(4, vec![]).unwrap();
        let red = reduce_gamma(&spec).unwrap();
        let hints = triangular_hints(&spec, &red);
        let labels: Vec<&str> = hints.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels.len(), 4);
        for l in ["I[3,1]", "I[4,2]", "I[4,3]", "I[2,1]"] {
            assert!(labels.contains(&l), "{l} missing from {labels:?}");
        }
    }

    #[test]
    fn t_n_counts() {
        for n in 2..=4 {
            let alg = build_t(n).unwrap();
            let result = invariants_by_normalization(&alg).unwrap();
            assert_eq!(result.n_g, (n + 1) / 2, "t({n})");
        }
    }

    #[test]
    fn non_unit_pivot_difference_goes_through_kernel() {
        // gamma = (0,0,3,2): antidiagonal exponents 2 and 3 share no entry
        // divisor, so the invariant only appears as an integer power product
        let spec = TriangularSpec::new(4, vec![vec![rat(0), rat(0), rat(3), rat(2)]]).unwrap();
        let alg = crate::algebra::build_t_gamma(&spec);
        let result = invariants_by_normalization(&alg).unwrap();
        assert_eq!(result.n_g, 1);
        assert_eq!(result.basis.len(), 1);
        // the surviving invariant is parameter-free and nonconstant
        assert!(!result.basis[0].is_constant());
    }

    #[test]
    fn hint_plan_shapes() {
        // st(n): [n/2] nilindependent zero hints, none when s' = 0
        for n in 3..=6 {
            let spec = crate::algebra::st_spec(n).unwrap();
            let reduced = reduce_gamma(&spec).unwrap();
            let red_spec = TriangularSpec::new(n, reduced.gamma.clone()).unwrap();
            let hints = triangular_hints(&red_spec, &reduced);
            let p0_hints = hints.iter().filter(|(l, _)| l.ends_with(",0]")).count();
            assert_eq!(p0_hints, n / 2, "st({n})");
        }
        // s' = 0: gamma symmetric across the antidiagonal
        let spec = TriangularSpec::new(4, vec![vec![rat(1), rat(0), rat(0), rat(1)]]).unwrap();
        let reduced = reduce_gamma(&spec).unwrap();
        assert_eq!(reduced.s_prime, 0);
        let hints = triangular_hints(&spec, &reduced);
        assert!(hints.iter().all(|(l, _)| !l.ends_with(",0]")));
    }

    #[test]
    fn st_counts() {
        for n in 3..=5 {
            let alg = crate::algebra::build_st(n).unwrap();
            let result = invariants_by_normalization(&alg).unwrap();
            assert_eq!(result.n_g, (n - 1) / 2, "st({n})");
        }
    }
}
