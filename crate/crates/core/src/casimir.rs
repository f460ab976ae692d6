//! Radial part R of the Casimir operator acting on diagonal End_M(V_mu^K)-valued
//! trigonometric polynomials.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bottoms::{Family, MuSpec};
use crate::error::{Error, Result};
use crate::intertwiners::MTypeBasis;
use crate::linalg::{q_mul, q_transpose, q_zeros, QMat, SpanSolver, SparseVec};
use crate::rootdata::RankPair;
use crate::trigring::{q, qf, GaussRational, TrigPoly, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootKind {
    /// f_j
    Short(usize),
    /// f_j - f_k
    MiddleMinus(usize, usize),
    /// f_j + f_k
    MiddlePlus(usize, usize),
    /// 2 f_j
    Long(usize),
}

/// Restricted root beta with the positive roots e_p - e_q (p < q) restricting to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedRoot {
    pub kind: RootKind,
    pub beta: Vec<i32>,
    pub constituents: Vec<(usize, usize)>,
}

impl RestrictedRoot {
    pub fn multiplicity(&self) -> usize {
        self.constituents.len()
    }
    pub fn is_short(&self) -> bool {
        matches!(self.kind, RootKind::Short(_))
    }
}

pub fn restricted_roots(ctx: &RankPair) -> Vec<RestrictedRoot> {
    let (n, m, big_n) = (ctx.n, ctx.m, ctx.big_n());
    let unit = |j: usize, c: i32| {
        let mut v = vec![0; n];
        v[j - 1] = c;
        v
    };
    let mut out = Vec::new();
    for j in 1..=n {
        if m > n {
            let mut cons = Vec::new();
            for l in 1..=m - n {
                cons.push((j, n + l));
                cons.push((n + l, big_n + 1 - j));
            }
            out.push(RestrictedRoot { kind: RootKind::Short(j), beta: unit(j, 1), constituents: cons });
        }
    }
    for j in 1..=n {
        for k in j + 1..=n {
            let mut minus = unit(j, 1);
            minus[k - 1] = -1;
            out.push(RestrictedRoot {
                kind: RootKind::MiddleMinus(j, k),
                beta: minus,
                constituents: vec![(j, k), (big_n + 1 - k, big_n + 1 - j)],
            });
            let mut plus = unit(j, 1);
            plus[k - 1] = 1;
            out.push(RestrictedRoot {
                kind: RootKind::MiddlePlus(j, k),
                beta: plus,
                constituents: vec![(j, big_n + 1 - k), (k, big_n + 1 - j)],
            });
        }
    }
    for j in 1..=n {
        out.push(RestrictedRoot { kind: RootKind::Long(j), beta: unit(j, 2), constituents: vec![(j, big_n + 1 - j)] });
    }
    out
}

fn unit_matrix(size: usize, i: usize, j: usize) -> QMat {
    let mut m = q_zeros(size, size);
    m[i - 1][j - 1] = Q::one();
    m
}

fn sigma(ctx: &RankPair, k: usize) -> usize {
    let big_n = ctx.big_n();
    if k <= ctx.n || k > big_n - ctx.n {
        big_n + 1 - k
    } else {
        k
    }
}

/// X_alpha = E_pq + E_{sigma p, sigma q}.
pub fn x_alpha(ctx: &RankPair, p: usize, qq: usize) -> QMat {
    let size = ctx.big_n();
    let mut m = unit_matrix(size, p, qq);
    let (sp, sq) = (sigma(ctx, p), sigma(ctx, qq));
    m[sp - 1][sq - 1] += Q::one();
    m
}

/// Ad(u*) applied to an element, written as `mat / sqrt(2)^k` with k in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatedElement {
    pub mat: QMat,
    pub over_sqrt2: bool,
}

/// u = P / sqrt(2) + D with P = [[I,0,L],[0,0,0],[-L,0,I]] and D the middle identity.
fn u_parts(ctx: &RankPair) -> (QMat, QMat) {
    let (n, big_n) = (ctx.n, ctx.big_n());
    let mut p = q_zeros(big_n, big_n);
    let mut d = q_zeros(big_n, big_n);
    for i in 1..=n {
        p[i - 1][i - 1] = q(1);
        p[i - 1][big_n - i] = q(1);
        p[big_n - i][i - 1] = q(-1);
        p[big_n - i][big_n - i] = q(1);
    }
    for i in n + 1..=big_n - n {
        d[i - 1][i - 1] = q(1);
    }
    (p, d)
}

pub fn ad_u_star(ctx: &RankPair, x: &QMat) -> Result<ConjugatedElement> {
    let (p, d) = u_parts(ctx);
    let (pt, dt) = (q_transpose(&p), q_transpose(&d));
    let a = q_mul(&q_mul(&pt, x), &p);
    let b1 = q_mul(&q_mul(&pt, x), &d);
    let b2 = q_mul(&q_mul(&dt, x), &p);
    let c = q_mul(&q_mul(&dt, x), &d);
    let b: QMat = b1.iter().zip(&b2).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
    let zero = |m: &QMat| m.iter().all(|r| r.iter().all(|x| x.is_zero()));
    let out = if zero(&b) {
        let half = qf(1, 2);
        ConjugatedElement {
            mat: a.iter().zip(&c).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x * &half + y).collect()).collect(),
            over_sqrt2: false,
        }
    } else if zero(&a) && zero(&c) {
        ConjugatedElement { mat: b, over_sqrt2: true }
    } else {
        return Err(Error::CheckFailed("conjugate mixes rational and irrational parts".into()));
    };
    let n = ctx.n;
    let big_n = ctx.big_n();
    for i in 0..big_n {
        for j in 0..big_n {
            if (i < n) != (j < n) && !out.mat[i][j].is_zero() {
                return Err(Error::NonBlockDiagonal);
            }
        }
    }
    Ok(out)
}

/// (Ad(u*) X_alpha, Ad(u*) X_{-alpha}) for the positive root e_p - e_q.
pub fn build_x_alpha(ctx: &RankPair, p: usize, qq: usize) -> Result<(ConjugatedElement, ConjugatedElement)> {
    if p >= qq || qq > ctx.big_n() {
        return Err(Error::IndexOutOfRange { index: qq, max: ctx.big_n() });
    }
    Ok((ad_u_star(ctx, &x_alpha(ctx, p, qq))?, ad_u_star(ctx, &x_alpha(ctx, qq, p))?))
}

/// pi_mu of a block-diagonal element: derivation of the A-block on the model plus
/// b tr(A); the D-block acts trivially.
pub fn pi_mu(basis: &MTypeBasis, x: &QMat) -> Result<QMat> {
    let n = basis.n;
    let big = x.len();
    for i in 0..big {
        for j in 0..big {
            if (i < n) != (j < n) && !x[i][j].is_zero() {
                return Err(Error::NonBlockDiagonal);
            }
        }
    }
    let d = basis.dim();
    let mut out = q_zeros(d, d);
    for i in 1..=n {
        for j in 1..=n {
            let c = &x[i - 1][j - 1];
            if c.is_zero() {
                continue;
            }
            let a = basis.action(i, j);
            for r in 0..d {
                for s in 0..d {
                    if !a[r][s].is_zero() {
                        out[r][s] += c * &a[r][s];
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Representation matrices pi_mu(Ad(u*) X_{+-alpha}) for every constituent.
#[derive(Clone, Debug)]
pub struct KRep {
    pub basis: MTypeBasis,
    pub matrices: Vec<(RestrictedRoot, Vec<(QMat, QMat)>)>,
}

impl KRep {
    pub fn new(mu: &MuSpec) -> Result<Self> {
        let basis = MTypeBasis::for_mu(mu);
        let mut matrices = Vec::new();
        for root in restricted_roots(&mu.ctx) {
            let mut mats = Vec::new();
            for &(p, qq) in &root.constituents {
                let (xp, xm) = build_x_alpha(&mu.ctx, p, qq)?;
                mats.push((pi_mu(&basis, &xp.mat)?, pi_mu(&basis, &xm.mat)?));
            }
            matrices.push((root, mats));
        }
        Ok(KRep { basis, matrices })
    }
}

/// Diagonal End_M(V_mu^K)-valued function, one entry per M-type label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagFunc {
    pub entries: Vec<TrigPoly>,
}

impl DiagFunc {
    pub fn new(entries: Vec<TrigPoly>) -> Self {
        DiagFunc { entries }
    }
    pub fn scalar(dim: usize, p: TrigPoly) -> Self {
        DiagFunc { entries: vec![p; dim] }
    }
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
    pub fn scale(&self, c: &GaussRational) -> Self {
        DiagFunc { entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }
    pub fn scale_q(&self, c: &Q) -> Self {
        DiagFunc { entries: self.entries.iter().map(|e| e.scale_q(c)).collect() }
    }
    pub fn mul_poly(&self, p: &TrigPoly) -> Self {
        DiagFunc { entries: self.entries.iter().map(|e| e * p).collect() }
    }
    pub fn add(&self, o: &DiagFunc) -> Self {
        DiagFunc { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &DiagFunc) -> Self {
        DiagFunc { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }
    pub fn eval_at_zero(&self) -> Vec<GaussRational> {
        self.entries.iter().map(|e| e.eval_at_zero()).collect()
    }
    fn to_sparse(&self) -> SparseVec<(usize, Vec<i32>)> {
        let mut v = SparseVec::new();
        for (k, e) in self.entries.iter().enumerate() {
            for (exp, c) in e.terms() {
                v.insert((k, exp.clone()), c.clone());
            }
        }
        v
    }
}

/// Omega_m on each M-type, from the dual of the trace form on the torus
/// {diag(D, M_1, L D L) : 2 tr D + tr M_1 = 0} of m.
pub fn omega_m_values(ctx: &RankPair, basis: &MTypeBasis) -> Vec<Q> {
    let (n, m) = (ctx.n, ctx.m);
    // coordinates (D_1..D_n, M_1..M_{m-n}); Gram matrix of the trace form is diag(2,..,2,1,..,1)
    let gram_inv: Vec<Q> = (0..m).map(|i| if i < n { qf(1, 2) } else { q(1) }).collect();
    let normal: Vec<Q> = (0..m).map(|i| if i < n { q(2) } else { q(1) }).collect();
    let normal_dual: Vec<Q> = normal.iter().zip(&gram_inv).map(|(a, b)| a * b).collect();
    let normal_norm: Q = normal.iter().zip(&normal_dual).map(|(a, b)| a * b).sum();
    (0..basis.dim())
        .map(|k| {
            let c = basis.m_weight(k);
            let chi: Vec<Q> = (0..m).map(|i| if i < n { Q::from_integer(c[i].into()) } else { Q::zero() }).collect();
            let h: Vec<Q> = chi.iter().zip(&gram_inv).map(|(a, b)| a * b).collect();
            let along: Q = normal.iter().zip(&h).map(|(a, b)| a * b).sum::<Q>() / &normal_norm;
            let hp: Vec<Q> = h.iter().zip(&normal_dual).map(|(x, y)| x - &along * y).collect();
            chi.iter().zip(&hp).map(|(a, b)| a * b).sum()
        })
        .collect()
}

/// Closed form of the Omega_m scalar for mu = w_s + b w_n.
pub fn omega_m_scalar(mu: &MuSpec) -> Result<Q> {
    let Family::Wedge { s, b } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    let (n, m, s, b) = (mu.ctx.n as i64, mu.ctx.m as i64, s as i64, b as i64);
    let num = 2 * s * s + ((2 * b - 1) * n + (-2 * b - 1) * m) * s + b * b * n * n - b * b * m * n;
    Ok(-Q::new(num.into(), (2 * n + 2 * m).into()))
}

struct RootData {
    c: QMat,
    row_sums: Vec<Q>,
    beta: Vec<i32>,
    mult: i64,
    cos: TrigPoly,
    sin: TrigPoly,
    denom: TrigPoly,
}

/// The radial part R for a fixed mu, prepared once and applied many times.
pub struct RadialOperator {
    pub ctx: RankPair,
    pub basis: MTypeBasis,
    pub omega_m: Vec<Q>,
    roots: Vec<RootData>,
}

impl RadialOperator {
    pub fn new(mu: &MuSpec) -> Result<Self> {
        let krep = KRep::new(mu)?;
        let n = mu.ctx.n;
        let d = krep.basis.dim();
        let mut roots = Vec::new();
        for (root, mats) in &krep.matrices {
            let mut c = q_zeros(d, d);
            for (xp, xm) in mats {
                for k in 0..d {
                    for l in 0..d {
                        if !xp[k][l].is_zero() && !xm[l][k].is_zero() {
                            c[k][l] += &xp[k][l] * &xm[l][k];
                        }
                    }
                }
            }
            if root.is_short() {
                let half = qf(1, 2);
                for row in c.iter_mut() {
                    for x in row.iter_mut() {
                        *x *= &half;
                    }
                }
            }
            let row_sums = c.iter().map(|r| r.iter().sum()).collect();
            let sin = TrigPoly::sin_linear(&root.beta);
            roots.push(RootData {
                row_sums,
                c,
                beta: root.beta.clone(),
                mult: root.multiplicity() as i64,
                cos: TrigPoly::cos_linear(&root.beta),
                denom: (&sin * &sin).scale_q(&q(2)),
                sin,
            });
        }
        debug_assert!(roots.iter().all(|r| r.beta.len() == n));
        Ok(RadialOperator { ctx: mu.ctx, omega_m: omega_m_values(&mu.ctx, &krep.basis), basis: krep.basis, roots })
    }

    pub fn apply(&self, f: &DiagFunc) -> Result<DiagFunc> {
        let n = self.ctx.n;
        let d = self.basis.dim();
        if f.dim() != d {
            return Err(Error::FactorMismatch);
        }
        let mut out = Vec::with_capacity(d);
        for k in 0..d {
            let fk = &f.entries[k];
            let mut acc = fk.scale_q(&self.omega_m[k]);
            for j in 0..n {
                acc -= &fk.d_dt(j).d_dt(j).scale_q(&qf(1, 2));
            }
            for r in &self.roots {
                let mut num = fk.scale_q(&(&r.row_sums[k] * q(2)));
                let mut mix = TrigPoly::zero(n);
                for l in 0..d {
                    if !r.c[k][l].is_zero() {
                        mix += &f.entries[l].scale_q(&r.c[k][l]);
                    }
                }
                num -= &(&r.cos * &mix).scale_q(&q(2));
                let first = &(&r.cos * &r.sin) * &fk.d_dir(&r.beta);
                num -= &first.scale_q(&q(r.mult));
                acc += &num.exact_div(&r.denom)?;
            }
            out.push(acc);
        }
        Ok(DiagFunc { entries: out })
    }
}

pub fn apply_radial(mu: &MuSpec, f: &DiagFunc) -> Result<DiagFunc> {
    RadialOperator::new(mu)?.apply(f)
}

/// Exact span of a family of diagonal functions.
pub struct DiagSpan {
    solver: SpanSolver<(usize, Vec<i32>)>,
}

impl DiagSpan {
    pub fn new(basis: &[DiagFunc]) -> Result<Self> {
        let mut solver = SpanSolver::new();
        for f in basis {
            solver.push(f.to_sparse())?;
        }
        Ok(DiagSpan { solver })
    }
    pub fn push(&mut self, f: &DiagFunc) -> Result<()> {
        self.solver.push(f.to_sparse())
    }
    pub fn len(&self) -> usize {
        self.solver.len()
    }
    pub fn is_empty(&self) -> bool {
        self.solver.is_empty()
    }
    pub fn solve(&self, g: &DiagFunc) -> Result<Vec<GaussRational>> {
        self.solver.solve(&g.to_sparse())
    }
}

pub fn expand_in_basis(g: &DiagFunc, basis: &[DiagFunc]) -> Result<Vec<GaussRational>> {
    DiagSpan::new(basis)?.solve(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bottoms::{bottom, subsets};
    use crate::intertwiners::{psi, q_ladder_entry};
    use crate::rootdata::casimir_eigenvalue;
    use crate::trigring::GaussRational as G;
    use proptest::prelude::*;

    fn ctx(n: usize, m: usize) -> RankPair {
        RankPair::new(n, m).unwrap()
    }

    #[test]
    fn root_counts() {
        for (n, m) in [(1, 1), (1, 3), (2, 2), (2, 5), (3, 4)] {
            let c = ctx(n, m);
            let total: usize = restricted_roots(&c).iter().map(|r| r.multiplicity()).sum();
            assert_eq!(total, 2 * n * (m - n) + 2 * n * (n - 1) + n);
            for r in restricted_roots(&c) {
                let expect = match r.kind {
                    RootKind::Short(_) => 2 * (m - n),
                    RootKind::Long(_) => 1,
                    _ => 2,
                };
                assert_eq!(r.multiplicity(), expect);
            }
        }
        assert!(restricted_roots(&ctx(3, 3)).iter().all(|r| !r.is_short()));
    }

    #[test]
    fn conjugated_elements_are_block_diagonal() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 5)] {
            let c = ctx(n, m);
            for r in restricted_roots(&c) {
                for &(p, qq) in &r.constituents {
                    let (a, b) = build_x_alpha(&c, p, qq).unwrap();
                    assert_eq!(a.over_sqrt2, r.is_short());
                    assert_eq!(b.over_sqrt2, r.is_short());
                }
            }
        }
    }

    #[test]
    fn brackets_commute_with_conjugation() {
        let c = ctx(2, 3);
        for r in restricted_roots(&c) {
            for &(p, qq) in &r.constituents {
                let xp = x_alpha(&c, p, qq);
                let xm = x_alpha(&c, qq, p);
                let br = crate::linalg::q_sub(&q_mul(&xp, &xm), &q_mul(&xm, &xp));
                let direct = ad_u_star(&c, &br).unwrap();
                let (a, b) = build_x_alpha(&c, p, qq).unwrap();
                let mut via = crate::linalg::q_sub(&q_mul(&a.mat, &b.mat), &q_mul(&b.mat, &a.mat));
                if a.over_sqrt2 {
                    via = crate::linalg::q_scale(&via, &qf(1, 2));
                }
                assert!(!direct.over_sqrt2);
                assert_eq!(direct.mat, via);
            }
        }
    }

    #[test]
    fn pi_mu_examples() {
        let c = ctx(3, 3);
        let mu = MuSpec::wedge(c, 2, 1).unwrap();
        let basis = MTypeBasis::for_mu(&mu);
        let mut diag = q_zeros(6, 6);
        for (i, t) in [(0, 2), (1, 3), (2, 5)] {
            diag[i][i] = q(t);
        }
        let m = pi_mu(&basis, &diag).unwrap();
        for k in 0..basis.dim() {
            let h = basis.subset(k);
            let expect: i64 = h.iter().map(|&x| [2, 3, 5][x - 1]).sum::<i64>() + 10;
            assert_eq!(m[k][k], q(expect));
        }
        let ident = crate::linalg::q_identity(6);
        let m = pi_mu(&basis, &ident).unwrap();
        for k in 0..3 {
            assert_eq!(m[k][k], q(2 + 3));
        }
        let mut off = q_zeros(6, 6);
        off[0][4] = q(1);
        assert_eq!(pi_mu(&basis, &off), Err(Error::NonBlockDiagonal));
    }

    #[test]
    fn omega_m_matches_closed_form() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 5)] {
            let c = ctx(n, m);
            for s in 0..=n {
                for b in 0..3 {
                    let mu = MuSpec::wedge(c, s, b).unwrap();
                    let basis = MTypeBasis::for_mu(&mu);
                    let scalar = omega_m_scalar(&mu).unwrap();
                    for v in omega_m_values(&c, &basis) {
                        assert_eq!(v, scalar);
                    }
                }
            }
        }
        assert_eq!(omega_m_scalar(&MuSpec::wedge(ctx(2, 3), 0, 0).unwrap()).unwrap(), q(0));
        assert_eq!(omega_m_scalar(&MuSpec::wedge(ctx(2, 3), 1, 0).unwrap()).unwrap(), qf(3, 10));
        assert_eq!(omega_m_scalar(&MuSpec::wedge(ctx(2, 2), 0, 1).unwrap()).unwrap(), q(0));
    }

    #[test]
    fn rank_one_circle() {
        // n = m = 1: R = -1/2 d^2 - cot(2t) d
        let mu = MuSpec::wedge(ctx(1, 1), 0, 0).unwrap();
        let f = DiagFunc::scalar(1, psi(1, 1));
        let r = apply_radial(&mu, &f).unwrap();
        let expect = &psi(1, 1).scale_q(&q(4)) - &TrigPoly::from_q(1, q(2));
        assert_eq!(r.entries[0], expect);
        let one = DiagFunc::scalar(1, TrigPoly::one(1));
        assert!(apply_radial(&mu, &one).unwrap().is_zero());
    }

    #[test]
    fn one_two_zonal() {
        // n=1, m=2: phi_1 = (3 cos^2 t - 1)/2 with eigenvalue 6
        let mu = MuSpec::rank_one(ctx(1, 2), 0, 0);
        let phi = &psi(1, 1).scale_q(&qf(3, 2)) - &TrigPoly::from_q(1, qf(1, 2));
        let r = apply_radial(&mu, &DiagFunc::scalar(1, phi.clone())).unwrap();
        assert_eq!(r.entries[0], phi.scale_q(&q(6)));
    }

    #[test]
    fn zonal_recurrence() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
            let mu = MuSpec::wedge(ctx(n, m), 0, 0).unwrap();
            let op = RadialOperator::new(&mu).unwrap();
            let basis: Vec<DiagFunc> = (0..=n).map(|i| DiagFunc::scalar(1, psi(n, i))).collect();
            for i in 0..=n {
                let r = op.apply(&basis[i]).unwrap();
                let coeffs = expand_in_basis(&r, &basis).unwrap();
                for (j, cj) in coeffs.iter().enumerate() {
                    let expect = if j == i {
                        2 * i as i64 * (m + n - i + 1) as i64
                    } else if j + 1 == i {
                        -2 * ((n - i + 1) as i64).pow(2)
                    } else {
                        0
                    };
                    assert_eq!(cj, &G::from_int(expect), "n={n} m={m} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn ladder_recurrence_spot() {
        let c = ctx(2, 3);
        for s in 0..=2 {
            for b in 0..2 {
                let mu = MuSpec::wedge(c, s, b).unwrap();
                let op = RadialOperator::new(&mu).unwrap();
                let hs = subsets(2, s);
                let q_i = |i: usize| DiagFunc::new(hs.iter().map(|h| q_ladder_entry(&mu, i, h).unwrap()).collect());
                for i in 0..=2 - s {
                    let nu = crate::rootdata::Weight::fundamental(&c, s + i)
                        .add(&crate::rootdata::Weight::fundamental(&c, 5 - i))
                        .add(&crate::rootdata::Weight::fundamental(&c, 2).scale(b as i64));
                    let cnu = casimir_eigenvalue(&c, &nu).unwrap();
                    let mut expect = q_i(i).scale_q(&cnu);
                    if i > 0 {
                        let coef = 2 * (2 - s - i + 1) as i64 * (b as i64 + 2 - s as i64 - i as i64 + 1);
                        expect = expect.sub(&q_i(i - 1).scale_q(&q(coef)));
                    }
                    assert_eq!(op.apply(&q_i(i)).unwrap(), expect, "s={s} b={b} i={i}");
                }
            }
        }
        let _ = bottom;
    }

    #[test]
    fn non_divisible_input() {
        let mu = MuSpec::wedge(ctx(1, 1), 0, 0).unwrap();
        let f = DiagFunc::scalar(1, TrigPoly::sin(1, 0));
        assert_eq!(apply_radial(&mu, &f), Err(Error::NonDivisible));
    }

    #[test]
    fn expand_unit_vectors() {
        let basis: Vec<DiagFunc> = (0..=2).map(|i| DiagFunc::scalar(1, psi(2, i))).collect();
        for (j, f) in basis.iter().enumerate() {
            let c = expand_in_basis(f, &basis).unwrap();
            for (k, ck) in c.iter().enumerate() {
                assert_eq!(ck, &G::from_int((j == k) as i64));
            }
        }
        let stray = DiagFunc::scalar(1, TrigPoly::cos(2, 0));
        assert_eq!(expand_in_basis(&stray, &basis), Err(Error::NotInSpan));
    }

    proptest! {
        #[test]
        fn radial_is_linear(a in -3i64..4, b in -3i64..4, i in 0usize..3, j in 0usize..3) {
            let mu = MuSpec::wedge(ctx(2, 3), 0, 0).unwrap();
            let op = RadialOperator::new(&mu).unwrap();
            let f = DiagFunc::scalar(1, psi(2, i));
            let g = DiagFunc::scalar(1, psi(2, j));
            let lhs = op.apply(&f.scale_q(&q(a)).add(&g.scale_q(&q(b)))).unwrap();
            let rhs = op.apply(&f).unwrap().scale_q(&q(a)).add(&op.apply(&g).unwrap().scale_q(&q(b)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
