//! Spherical functions Phi^mu_lambda restricted to A, recovered from the
//! approximants psi^d Q_nu by an exact triangular eigen-solve of R.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bottoms::{
    binomial, bottom, degree_vectors, enumerate_pg_mu, label_info, runs, subsets, topo_sort, Family, LabelInfo, MuSpec,
    SpectrumLabel,
};
use crate::casimir::{DiagFunc, DiagSpan, RadialOperator};
use crate::error::{Error, Result};
use crate::intertwiners::{engine_q_bottom, psi, q_lambda_h_entry, q_ladder_entry};
use crate::linalg::{g_nullspace, q_identity, q_mul, QMat};
use crate::rootdata::{dominance_leq, restrict_to_a, RankPair, Weight};
use crate::trigring::{q, GaussRational, TrigPoly, Q};

fn pochhammer(x: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * (x + q(i as i64)))
}

fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::one(), |acc, i| acc * q(i as i64))
}

/// Coefficients c_0..c_i with phi_i = sum_j c_j psi_j.
pub fn zonal_coefficients(ctx: &RankPair, i: usize) -> Result<Vec<Q>> {
    let (n, m) = (ctx.n as i64, ctx.m as i64);
    if i > ctx.n {
        return Err(Error::IndexOutOfRange { index: i, max: ctx.n });
    }
    let ii = i as i64;
    let l = pochhammer(&q(-n), i) / pochhammer(&q(-m), i) * q(if i % 2 == 0 { 1 } else { -1 });
    Ok((0..=i)
        .map(|j| {
            let jj = j as i64;
            let sign = q(if j % 2 == 0 { 1 } else { -1 });
            let k = sign * pochhammer(&q(ii + 1 - jj), j) * pochhammer(&q(m + n + 2 - ii - jj), j)
                / (pochhammer(&q(n + 1 - jj), j) * pochhammer(&q(n + 1 - jj), j));
            &l * k
        })
        .collect())
}

/// The zonal spherical function phi_i with its psi-coefficients.
pub fn zonal_phi(ctx: &RankPair, i: usize) -> Result<(DiagFunc, Vec<Q>)> {
    let coeffs = zonal_coefficients(ctx, i)?;
    let mut f = TrigPoly::zero(ctx.n);
    for (j, c) in coeffs.iter().enumerate() {
        f += &psi(ctx.n, j).scale_q(c);
    }
    Ok((DiagFunc::scalar(1, f), coeffs))
}

/// Coefficients l k_j (j = 0..i) of Phi_{nu_i} over the ladder approximants
/// Q_{nu_j} for mu = w_1 + b w_n.
pub fn ladder_coefficients(ctx: &RankPair, i: usize, b: u32) -> Result<Vec<Q>> {
    let (n, m, b) = (ctx.n as i64, ctx.m as i64, b as i64);
    if i >= ctx.n {
        return Err(Error::IndexOutOfRange { index: i, max: ctx.n - 1 });
    }
    let ii = i as i64;
    let base = q(m + n + b - 2 * ii + 1);
    let sign_i = q(if i % 2 == 0 { 1 } else { -1 });
    let l = sign_i / Q::from_integer((binomial(ctx.n - 1, i) as i64).into()) * pochhammer(&base, i) / pochhammer(&q(-m), i);
    Ok((0..=i)
        .map(|j| {
            let d = i - j;
            let sign = q(if d % 2 == 0 { 1 } else { -1 });
            let k = sign * pochhammer(&q(n - ii), d) * pochhammer(&q(n + b - ii), d) / (factorial(d) * pochhammer(&base, d));
            &l * k
        })
        .collect())
}

/// Ladder approximant Q_{nu_i} for mu = w_s + b w_n, entries over the wedge basis.
pub fn ladder_q(mu: &MuSpec, i: usize) -> Result<DiagFunc> {
    let Family::Wedge { s, .. } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    subsets(mu.ctx.n, s).iter().map(|h| q_ladder_entry(mu, i, h)).collect::<Result<Vec<_>>>().map(DiagFunc::new)
}

/// Closed-form Phi_{nu_i} for mu = w_1 + b w_n.
pub fn ladder_phi_closed_form(ctx: &RankPair, i: usize, b: u32) -> Result<DiagFunc> {
    let mu = MuSpec::wedge(*ctx, 1, b)?;
    let coeffs = ladder_coefficients(ctx, i, b)?;
    let mut acc = DiagFunc::new(vec![TrigPoly::zero(ctx.n); ctx.n]);
    for (j, c) in coeffs.iter().enumerate() {
        acc = acc.add(&ladder_q(&mu, j)?.scale_q(c));
    }
    Ok(acc)
}

/// The coset permutation w with w(j) = h_j for j <= s and the complement after.
pub fn coset_permutation(n: usize, h: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = h.to_vec();
    w.extend((1..=n).filter(|x| !h.contains(x)));
    w
}

/// entry_H(t) = first(t_{w(1)}, ..., t_{w(n)}).
pub fn weyl_fill(mu: &MuSpec, first_entry: &TrigPoly, target: &[usize]) -> Result<TrigPoly> {
    let Family::Wedge { s, .. } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    if target.len() != s {
        return Err(Error::InvalidMu(format!("target must have {s} elements")));
    }
    let map: Vec<usize> = coset_permutation(mu.ctx.n, target).iter().map(|x| x - 1).collect();
    Ok(first_entry.permute_vars(&map))
}

/// Diagonal of Q_nu for the bottom element with index `idx`.
pub fn bottom_q(mu: &MuSpec, idx: usize) -> Result<DiagFunc> {
    let n = mu.ctx.n;
    match mu.family {
        Family::Wedge { s, .. } => {
            let hs = subsets(n, s);
            let h = hs.get(idx).ok_or(Error::IndexOutOfRange { index: idx, max: hs.len() })?;
            let first = q_lambda_h_entry(mu, &runs(h), &vec![0; n])?;
            hs.iter().map(|t| weyl_fill(mu, &first, t)).collect::<Result<Vec<_>>>().map(DiagFunc::new)
        }
        Family::RankOne { .. } => Ok(DiagFunc::new(engine_q_bottom(mu, idx, &vec![0; n])?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBasisElement {
    pub info: LabelInfo,
    pub func: DiagFunc,
}

fn psi_power(n: usize, degrees: &[u32]) -> TrigPoly {
    let mut p = TrigPoly::one(n);
    for (i, &d) in degrees.iter().enumerate() {
        if d > 0 {
            p = &p * &psi(n, i + 1).pow(d);
        }
    }
    p
}

fn alpha1(w: &Weight) -> Q {
    w.alpha_coords()[0].clone()
}

/// Labels of P_G^+(mu) with |d| <= bound, closed downward under dominance.
pub fn closed_labels(mu: &MuSpec, degree_bound: u32) -> Vec<LabelInfo> {
    let targets = enumerate_pg_mu(mu, degree_bound);
    let bots = bottom(mu);
    let a1: Vec<Q> = bots.iter().map(alpha1).collect();
    let lo = a1.iter().min().cloned().unwrap();
    let hi = a1.iter().max().cloned().unwrap();
    let spread = (hi - lo).to_integer();
    let extra: u32 = spread.try_into().unwrap_or(0);
    let mut out = Vec::new();
    for (idx, nu) in bots.iter().enumerate() {
        for d in degree_vectors(mu.ctx.n, degree_bound + extra) {
            let info = label_info(mu, SpectrumLabel { bottom_index: idx, bottom: nu.clone(), degrees: d });
            if targets.iter().any(|t| dominance_leq(&info.weight, &t.weight)) {
                out.push(info);
            }
        }
    }
    topo_sort(out)
}

/// F-basis psi^d Q_nu for every label of the downward-closed set.
pub fn build_f_basis(mu: &MuSpec, degree_bound: u32) -> Result<Vec<FBasisElement>> {
    let labels = closed_labels(mu, degree_bound);
    let mut cache: HashMap<usize, DiagFunc> = HashMap::new();
    let n = mu.ctx.n;
    let mut out = Vec::new();
    for info in labels {
        let idx = info.label.bottom_index;
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(idx) {
            e.insert(bottom_q(mu, idx)?);
        }
        let func = cache[&idx].mul_poly(&psi_power(n, &info.label.degrees));
        out.push(FBasisElement { info, func });
    }
    Ok(out)
}

/// Distinct A-restrictions of the labels: the leading-exponent independence argument.
pub fn leading_exponents_distinct(ctx: &RankPair, basis: &[FBasisElement]) -> Result<bool> {
    let mut seen = std::collections::BTreeSet::new();
    for f in basis {
        if !seen.insert(restrict_to_a(ctx, &f.info.weight)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalFunction {
    pub label: SpectrumLabel,
    pub weight: Weight,
    #[serde(serialize_with = "crate::bottoms::ser_q")]
    pub eigenvalue: Q,
    #[serde(skip)]
    pub entries: DiagFunc,
    /// (index into the F-basis, coefficient)
    #[serde(skip)]
    pub expansion: Vec<(usize, GaussRational)>,
}

/// F-basis, R-matrix and eigen-solve for a fixed mu and degree bound.
pub struct SphericalSolver {
    pub mu: MuSpec,
    pub basis: Vec<FBasisElement>,
    /// r_matrix[i][j]: coefficient of F_i in R(F_j).
    pub r_matrix: Vec<Vec<GaussRational>>,
    below: Vec<Vec<bool>>,
}

impl SphericalSolver {
    pub fn new(mu: &MuSpec, degree_bound: u32) -> Result<Self> {
        let basis = build_f_basis(mu, degree_bound)?;
        let funcs: Vec<DiagFunc> = basis.iter().map(|b| b.func.clone()).collect();
        let span = DiagSpan::new(&funcs)?;
        let op = RadialOperator::new(mu)?;
        let k = basis.len();
        let mut r_matrix = vec![vec![GaussRational::zero(); k]; k];
        for (j, f) in funcs.iter().enumerate() {
            let coeffs = span.solve(&op.apply(f)?)?;
            for (i, c) in coeffs.into_iter().enumerate() {
                r_matrix[i][j] = c;
            }
        }
        let below = (0..k)
            .map(|i| (0..k).map(|j| dominance_leq(&basis[j].info.weight, &basis[i].info.weight)).collect())
            .collect();
        Ok(SphericalSolver { mu: *mu, basis, r_matrix, below })
    }

    pub fn index_of(&self, label: &SpectrumLabel) -> Option<usize> {
        self.basis.iter().position(|b| b.info.label.bottom_index == label.bottom_index && b.info.label.degrees == label.degrees)
    }

    /// R(F_j) has no component along F_i unless lambda_i precedes lambda_j in dominance.
    pub fn is_triangular(&self) -> bool {
        let k = self.basis.len();
        (0..k).all(|i| (0..k).all(|j| self.r_matrix[i][j].is_zero() || self.below[j][i]))
    }

    pub fn diagonal_matches_eigenvalues(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, b)| self.r_matrix[i][i] == GaussRational::from_q(b.info.eigenvalue.clone()))
    }

    pub fn solve_index(&self, p: usize) -> Result<SphericalFunction> {
        let info = &self.basis[p].info;
        let support: Vec<usize> = (0..self.basis.len()).filter(|&j| self.below[p][j]).collect();
        let c = GaussRational::from_q(info.eigenvalue.clone());
        let rows: Vec<Vec<GaussRational>> = support
            .iter()
            .map(|&i| {
                support.iter().map(|&j| if i == j { &self.r_matrix[i][j] - &c } else { self.r_matrix[i][j].clone() }).collect()
            })
            .collect();
        let ns = g_nullspace(&rows, support.len());
        if ns.len() != 1 {
            return Err(Error::EigenspaceNotOneDimensional(ns.len()));
        }
        let x = &ns[0];
        let dim = self.basis[p].func.dim();
        let mut entries = DiagFunc::new(vec![TrigPoly::zero(self.mu.ctx.n); dim]);
        for (pos, &j) in support.iter().enumerate() {
            if !x[pos].is_zero() {
                entries = entries.add(&self.basis[j].func.scale(&x[pos]));
            }
        }
        let at0 = entries.eval_at_zero();
        if at0[0].is_zero() || at0.iter().any(|v| v != &at0[0]) {
            return Err(Error::BadNormalization);
        }
        let norm = at0[0].inv().unwrap();
        let entries = entries.scale(&norm);
        let expansion = support
            .iter()
            .enumerate()
            .filter(|(pos, _)| !x[*pos].is_zero())
            .map(|(pos, &j)| (j, &x[pos] * &norm))
            .collect();
        Ok(SphericalFunction {
            label: info.label.clone(),
            weight: info.weight.clone(),
            eigenvalue: info.eigenvalue.clone(),
            entries,
            expansion,
        })
    }

    pub fn solve(&self, label: &SpectrumLabel) -> Result<SphericalFunction> {
        let p = self.index_of(label).ok_or_else(|| Error::UnknownLabel(format!("{:?}", label.degrees)))?;
        self.solve_index(p)
    }

    /// Spherical functions for every label with |d| <= bound.
    pub fn solve_all(&self, degree_bound: u32) -> Result<Vec<SphericalFunction>> {
        (0..self.basis.len())
            .filter(|&p| self.basis[p].info.label.sph_degree() <= degree_bound)
            .map(|p| self.solve_index(p))
            .collect()
    }
}

pub fn solve_phi(mu: &MuSpec, label: &SpectrumLabel) -> Result<SphericalFunction> {
    SphericalSolver::new(mu, label.sph_degree())?.solve(label)
}

/// s_i of the reduced Weyl group as (n+m) x (n+m) matrices.
pub fn weyl_generator(ctx: &RankPair, i: usize) -> Result<QMat> {
    let (n, big_n) = (ctx.n, ctx.big_n());
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let mut s = q_identity(big_n);
    let last = |k: usize| big_n - 1 - k;
    if i < n {
        let (a, b) = (i - 1, i);
        for (x, y) in [(a, b), (last(a), last(b))] {
            s[x][x] = q(0);
            s[y][y] = q(0);
            s[x][y] = q(1);
            s[y][x] = q(1);
        }
    } else {
        let (a, b) = (n - 1, last(n - 1));
        s[a][a] = q(0);
        s[b][b] = q(0);
        s[a][b] = q(1);
        s[b][a] = q(1);
    }
    Ok(s)
}

/// n_w = blockdiag(P_w, I, L P_w L) for a permutation w of 1..n.
pub fn n_w(ctx: &RankPair, w: &[usize]) -> QMat {
    let (n, big_n) = (ctx.n, ctx.big_n());
    let mut m = q_identity(big_n);
    for j in 0..n {
        m[j][j] = q(0);
        m[big_n - 1 - j][big_n - 1 - j] = q(0);
    }
    for j in 0..n {
        let wj = w[j] - 1;
        m[wj][j] = q(1);
        m[big_n - 1 - wj][big_n - 1 - j] = q(1);
    }
    m
}

fn diag_a(ctx: &RankPair) -> Vec<Vec<i32>> {
    let (n, big_n) = (ctx.n, ctx.big_n());
    (0..big_n)
        .map(|k| {
            let mut e = vec![0; n];
            if k < n {
                e[k] = 1;
            } else if k >= big_n - n {
                e[big_n - 1 - k] = -1;
            }
            e
        })
        .collect()
}

/// g^{-1} a_t g for a signed permutation matrix g, as exponent vectors of the
/// diagonal entries; `None` if the result is not diagonal.
fn conjugate_torus(ctx: &RankPair, g: &QMat) -> Option<Vec<Vec<i32>>> {
    let big_n = ctx.big_n();
    let a = diag_a(ctx);
    let mut out = Vec::with_capacity(big_n);
    for i in 0..big_n {
        let k = (0..big_n).find(|&k| !g[k][i].is_zero())?;
        if (0..big_n).filter(|&k| !g[k][i].is_zero()).count() != 1 {
            return None;
        }
        out.push(a[k].clone());
    }
    Some(out)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 1..=n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(cur, n, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidReport {
    pub quadratic: bool,
    pub commuting: bool,
    pub a_braid: bool,
    pub c_braid: bool,
    pub conjugation: bool,
}

impl BraidReport {
    pub fn all(&self) -> bool {
        self.quadratic && self.commuting && self.a_braid && self.c_braid && self.conjugation
    }
}

pub fn braid_report(ctx: &RankPair) -> Result<BraidReport> {
    let n = ctx.n;
    let s: Vec<QMat> = (1..=n).map(|i| weyl_generator(ctx, i)).collect::<Result<_>>()?;
    let id = q_identity(ctx.big_n());
    let mul = |ms: &[&QMat]| ms.iter().skip(1).fold(ms[0].clone(), |acc, m| q_mul(&acc, m));
    let quadratic = s.iter().all(|x| q_mul(x, x) == id);
    let mut commuting = true;
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 1 {
                commuting &= q_mul(&s[i], &s[j]) == q_mul(&s[j], &s[i]);
            }
        }
    }
    let mut a_braid = true;
    for i in 0..n.saturating_sub(2) {
        a_braid &= mul(&[&s[i + 1], &s[i], &s[i + 1]]) == mul(&[&s[i], &s[i + 1], &s[i]]);
    }
    let c_braid = n < 2 || mul(&[&s[n - 2], &s[n - 1], &s[n - 2], &s[n - 1]]) == mul(&[&s[n - 1], &s[n - 2], &s[n - 1], &s[n - 2]]);
    let mut conjugation = true;
    let base = diag_a(ctx);
    for (i, si) in s.iter().enumerate() {
        let Some(conj) = conjugate_torus(ctx, si) else {
            conjugation = false;
            continue;
        };
        let expect: Vec<Vec<i32>> = base
            .iter()
            .map(|e| {
                let mut f = e.clone();
                if i + 1 < n {
                    f.swap(i, i + 1);
                } else {
                    f[n - 1] = -f[n - 1];
                }
                f
            })
            .collect();
        conjugation &= conj == expect;
    }
    for w in permutations(n) {
        let g = n_w(ctx, &w);
        let Some(conj) = conjugate_torus(ctx, &g) else {
            conjugation = false;
            continue;
        };
        // a_{(t_{w(1)}, ..., t_{w(n)})}
        let expect: Vec<Vec<i32>> = base
            .iter()
            .map(|e| {
                let mut f = vec![0; n];
                for (j, x) in e.iter().enumerate() {
                    if *x != 0 {
                        f[w[j] - 1] = *x;
                    }
                }
                f
            })
            .collect();
        conjugation &= conj == expect;
    }
    Ok(BraidReport { quadratic, commuting, a_braid, c_braid, conjugation })
}

pub fn braid_check(ctx: &RankPair) -> Result<bool> {
    Ok(braid_report(ctx)?.all())
}

/// n_w for adjacent transpositions agrees with the corresponding s_i.
pub fn n_w_matches_generators(ctx: &RankPair) -> Result<bool> {
    let n = ctx.n;
    for i in 1..n {
        let mut w: Vec<usize> = (1..=n).collect();
        w.swap(i - 1, i);
        if n_w(ctx, &w) != weyl_generator(ctx, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::apply_radial;
    use crate::intertwiners::{lambda_h_vector, lower_orbit, mat_elem, psi_elem, MTypeBasis};
    use crate::trigring::{qf, GaussRational as G};

    fn ctx(n: usize, m: usize) -> RankPair {
        RankPair::new(n, m).unwrap()
    }

    #[test]
    fn zonal_examples() {
        let (phi, _) = zonal_phi(&ctx(1, 2), 1).unwrap();
        let expect = &psi(1, 1).scale_q(&qf(3, 2)) - &TrigPoly::from_q(1, qf(1, 2));
        assert_eq!(phi.entries[0], expect);
        for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 5)] {
            let c = ctx(n, m);
            let mu = MuSpec::wedge(c, 0, 0).unwrap();
            assert_eq!(zonal_phi(&c, 0).unwrap().0.entries[0], TrigPoly::one(n));
            for i in 0..=n {
                let (phi, _) = zonal_phi(&c, i).unwrap();
                assert_eq!(phi.eval_at_zero()[0], G::one());
                let d = 2 * i as i64 * (m + n - i + 1) as i64;
                assert_eq!(apply_radial(&mu, &phi).unwrap(), phi.scale_q(&q(d)));
            }
        }
    }

    #[test]
    fn solver_reproduces_zonal() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
            let c = ctx(n, m);
            let mu = MuSpec::wedge(c, 0, 0).unwrap();
            let solver = SphericalSolver::new(&mu, 1).unwrap();
            for i in 1..=n {
                let mut d = vec![0; n];
                d[i - 1] = 1;
                let label = SpectrumLabel { bottom_index: 0, bottom: Weight::zero(&c), degrees: d };
                let phi = solver.solve(&label).unwrap();
                assert_eq!(phi.entries, zonal_phi(&c, i).unwrap().0);
            }
        }
    }

    #[test]
    fn ladder_closed_form_matches_solver() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
            let c = ctx(n, m);
            for b in 0..2 {
                let wedge = SphericalSolver::new(&MuSpec::wedge(c, 1, b).unwrap(), 0).unwrap();
                let rank_one = SphericalSolver::new(&MuSpec::rank_one(c, 1, b), 0).unwrap();
                for i in 0..n {
                    let closed = ladder_phi_closed_form(&c, i, b).unwrap();
                    let bot = bottom(&MuSpec::wedge(c, 1, b).unwrap())[i].clone();
                    let label = SpectrumLabel { bottom_index: i, bottom: bot, degrees: vec![0; n] };
                    assert_eq!(wedge.solve(&label).unwrap().entries, closed, "wedge n={n} m={m} b={b} i={i}");
                    assert_eq!(rank_one.solve(&label).unwrap().entries, closed, "rankone n={n} m={m} b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn solved_functions_are_eigenfunctions() {
        for (n, m) in [(2, 2), (2, 3)] {
            let c = ctx(n, m);
            for mu in [MuSpec::rank_one(c, 2, 1), MuSpec::wedge(c, 1, 1).unwrap(), MuSpec::wedge(c, 2, 0).unwrap()] {
                let solver = SphericalSolver::new(&mu, 1).unwrap();
                assert!(solver.is_triangular());
                assert!(solver.diagonal_matches_eigenvalues());
                if mu.is_wedge() {
                    assert!(leading_exponents_distinct(&c, &solver.basis).unwrap());
                }
                let op = RadialOperator::new(&mu).unwrap();
                for phi in solver.solve_all(1).unwrap() {
                    let r = op.apply(&phi.entries).unwrap();
                    assert_eq!(r, phi.entries.scale_q(&phi.eigenvalue));
                    assert!(phi.entries.eval_at_zero().iter().all(|v| v == &G::one()));
                    let p = solver.index_of(&phi.label).unwrap();
                    assert!(phi.expansion.iter().any(|(j, c)| *j == p && !c.is_zero()));
                }
            }
        }
    }

    #[test]
    fn bottom_mu_is_its_own_spherical_function() {
        let c = ctx(2, 3);
        for mu in [MuSpec::rank_one(c, 2, 1), MuSpec::wedge(c, 2, 1).unwrap(), MuSpec::wedge(c, 1, 0).unwrap()] {
            let solver = SphericalSolver::new(&mu, 0).unwrap();
            let first = solver.basis.iter().position(|b| b.info.weight == mu.weight()).unwrap();
            let phi = solver.solve_index(first).unwrap();
            let q0 = &solver.basis[first].func;
            let s = q0.eval_at_zero()[0].inv().unwrap();
            assert_eq!(phi.entries, q0.scale(&s));
        }
    }

    #[test]
    fn weyl_fill_examples() {
        let c = ctx(3, 4);
        let mu = MuSpec::wedge(c, 2, 1).unwrap();
        let first = q_ladder_entry(&mu, 1, &[1, 2]).unwrap();
        assert_eq!(weyl_fill(&mu, &first, &[1, 2]).unwrap(), first);
        for h in subsets(3, 2) {
            assert_eq!(weyl_fill(&mu, &first, &h).unwrap(), q_ladder_entry(&mu, 1, &h).unwrap());
        }
        let x = &TrigPoly::cos(3, 0) * &TrigPoly::sin(3, 2).pow(2);
        let w = coset_permutation(3, &[2, 3]);
        let fwd: Vec<usize> = w.iter().map(|x| x - 1).collect();
        let mut inv = vec![0; 3];
        for (i, &j) in fwd.iter().enumerate() {
            inv[j] = i;
        }
        assert_eq!(x.permute_vars(&fwd).permute_vars(&inv), x);
    }

    #[test]
    fn weyl_fill_matches_engine_entries() {
        for (n, m) in [(2, 3), (3, 3)] {
            let c = ctx(n, m);
            for s in 1..n {
                let mu = MuSpec::wedge(c, s, 1).unwrap();
                let basis = MTypeBasis::for_mu(&mu);
                for (idx, h) in subsets(n, s).iter().enumerate() {
                    let filled = bottom_q(&mu, idx).unwrap();
                    let first: Vec<usize> = (1..=s).collect();
                    let top = lambda_h_vector(&c, &runs(h), &vec![0; n], 1, &first).unwrap();
                    let imgs = lower_orbit(&c, &top, &basis).unwrap();
                    let e0 = mat_elem(&c, &imgs[0], &imgs[0]).unwrap();
                    let ratio = &filled.entries[0].eval_at_zero() / &e0.eval_at_zero();
                    for (k, img) in imgs.iter().enumerate() {
                        let e = mat_elem(&c, img, img).unwrap();
                        assert_eq!(e.scale(&ratio), filled.entries[k], "H={h:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn rank_one_first_entry_shape() {
        // cos^a t_1 prod (psi^{(1)}_{i-1})^{a_i} cos^b t_N, up to a constant
        let c = ctx(3, 4);
        let mu = MuSpec::rank_one(c, 2, 1);
        for (idx, comp) in crate::bottoms::compositions(2, 3).iter().enumerate() {
            let q0 = &bottom_q(&mu, idx).unwrap().entries[0];
            let mut expect = crate::intertwiners::cos_h_det(3, &[], 1);
            expect = &expect * &TrigPoly::from_cos_monomial(&[2, 0, 0]);
            for (i, &a) in comp.iter().enumerate() {
                expect = &expect * &psi_elem(3, i, &[1]).unwrap().pow(a);
            }
            let s = &q0.eval_at_zero() / &expect.eval_at_zero();
            assert_eq!(expect.scale(&s), *q0);
        }
    }

    #[test]
    fn braid_relations() {
        for n in 1..=3 {
            for m in [n, n + 1, n + 2] {
                let c = ctx(n, m);
                let r = braid_report(&c).unwrap();
                assert!(r.all(), "{n} {m} {r:?}");
                assert!(n_w_matches_generators(&c).unwrap());
            }
        }
    }

    #[test]
    fn ladder_coefficient_values() {
        let c = ctx(2, 2);
        let co = ladder_coefficients(&c, 1, 0).unwrap();
        assert_eq!(co, vec![qf(-1, 2), qf(3, 2)]);
        assert_eq!(ladder_coefficients(&c, 0, 3).unwrap(), vec![q(1)]);
    }
}
