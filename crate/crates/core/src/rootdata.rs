//! Weight lattice of A_{n+m-1}, restriction to the torus A, Casimir
//! eigenvalues and the dominance order.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trigring::{q, qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankPair {
    pub n: usize,
    pub m: usize,
}

impl RankPair {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m < n {
            return Err(Error::InvalidRankPair { n, m });
        }
        Ok(RankPair { n, m })
    }
    /// n + m, the size of the defining representation.
    pub fn big_n(&self) -> usize {
        self.n + self.m
    }
    /// Number of fundamental weights, n + m - 1.
    pub fn rank(&self) -> usize {
        self.n + self.m - 1
    }
}

/// Weight stored in omega-coordinates with its epsilon image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    omega: Vec<i64>,
    eps: Vec<Q>,
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.omega.serialize(s)
    }
}

impl Weight {
    pub fn from_omega(ctx: &RankPair, omega: Vec<i64>) -> Result<Self> {
        if omega.len() != ctx.rank() {
            return Err(Error::RankMismatch);
        }
        let big_n = ctx.big_n();
        let mut eps = vec![Q::zero(); big_n];
        for (i, a) in omega.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let w = omega_in_eps(ctx, i + 1)?;
            for k in 0..big_n {
                eps[k] += &w[k] * q(*a);
            }
        }
        Ok(Weight { omega, eps })
    }
    pub fn zero(ctx: &RankPair) -> Self {
        Self::from_omega(ctx, vec![0; ctx.rank()]).unwrap()
    }
    /// omega_i with the convention omega_0 = omega_{n+m} = 0.
    pub fn fundamental(ctx: &RankPair, i: usize) -> Self {
        let mut v = vec![0; ctx.rank()];
        if i >= 1 && i < ctx.big_n() {
            v[i - 1] = 1;
        }
        Self::from_omega(ctx, v).unwrap()
    }
    /// lambda_i = omega_i + omega_{n+m-i}.
    pub fn spherical_generator(ctx: &RankPair, i: usize) -> Self {
        Self::fundamental(ctx, i).add(&Self::fundamental(ctx, ctx.big_n() - i))
    }
    pub fn omega(&self) -> &[i64] {
        &self.omega
    }
    pub fn eps(&self) -> &[Q] {
        &self.eps
    }
    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            omega: self.omega.iter().zip(&o.omega).map(|(a, b)| a + b).collect(),
            eps: self.eps.iter().zip(&o.eps).map(|(a, b)| a + b).collect(),
        }
    }
    pub fn sub(&self, o: &Weight) -> Weight {
        Weight {
            omega: self.omega.iter().zip(&o.omega).map(|(a, b)| a - b).collect(),
            eps: self.eps.iter().zip(&o.eps).map(|(a, b)| a - b).collect(),
        }
    }
    pub fn scale(&self, k: i64) -> Weight {
        Weight { omega: self.omega.iter().map(|a| a * k).collect(), eps: self.eps.iter().map(|a| a * q(k)).collect() }
    }
    pub fn is_dominant(&self) -> bool {
        self.omega.iter().all(|a| *a >= 0)
    }
    /// Coordinates in the simple-root basis: the j-th is eps_1 + .. + eps_j.
    pub fn alpha_coords(&self) -> Vec<Q> {
        let mut acc = Q::zero();
        let mut out = Vec::with_capacity(self.eps.len() - 1);
        for e in &self.eps[..self.eps.len() - 1] {
            acc += e;
            out.push(acc.clone());
        }
        out
    }
    /// Recover omega-coordinates from eps-coordinates: a_i = eps_i - eps_{i+1}.
    pub fn omega_from_eps(eps: &[Q]) -> Vec<Q> {
        eps.windows(2).map(|w| &w[0] - &w[1]).collect()
    }
}

pub fn omega_in_eps(ctx: &RankPair, i: usize) -> Result<Vec<Q>> {
    let big_n = ctx.big_n();
    if i == 0 || i >= big_n {
        return Err(Error::IndexOutOfRange { index: i, max: big_n - 1 });
    }
    let shift = qf(i as i64, big_n as i64);
    Ok((1..=big_n).map(|k| if k <= i { Q::one() - &shift } else { -shift.clone() }).collect())
}

/// Simple root alpha_j = eps_j - eps_{j+1} in eps-coordinates.
pub fn simple_root_eps(ctx: &RankPair, j: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); ctx.big_n()];
    v[j - 1] = Q::one();
    v[j] = -Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)
}

pub fn inner(ctx: &RankPair, a: &Weight, b: &Weight) -> Result<Q> {
    if a.eps.len() != ctx.big_n() || b.eps.len() != ctx.big_n() {
        return Err(Error::RankMismatch);
    }
    Ok(dot(&a.eps, &b.eps))
}

pub fn rho(ctx: &RankPair) -> Weight {
    Weight::from_omega(ctx, vec![1; ctx.rank()]).unwrap()
}

/// c_lambda = <lambda, lambda> + 2 <lambda, rho>.
pub fn casimir_eigenvalue(ctx: &RankPair, l: &Weight) -> Result<Q> {
    let r = rho(ctx);
    Ok(inner(ctx, l, l)? + q(2) * inner(ctx, l, &r)?)
}

/// lambda' <= lambda iff lambda - lambda' is a non-negative integer root combination.
pub fn dominance_leq(lp: &Weight, l: &Weight) -> bool {
    if lp.eps.len() != l.eps.len() {
        return false;
    }
    l.sub(lp).alpha_coords().iter().all(|c| c.is_integer() && !c.is_negative())
}

pub fn weyl_dim(ctx: &RankPair, l: &Weight) -> Result<u128> {
    if !l.is_dominant() {
        return Err(Error::NotDominant);
    }
    let lr = l.add(&rho(ctx));
    let r = rho(ctx);
    let big_n = ctx.big_n();
    let mut num = Q::one();
    let mut den = Q::one();
    for i in 0..big_n {
        for j in i + 1..big_n {
            num *= &lr.eps[i] - &lr.eps[j];
            den *= &r.eps[i] - &r.eps[j];
        }
    }
    let d = num / den;
    debug_assert!(d.is_integer());
    Ok(u128::try_from(d.to_integer()).expect("dimension overflow"))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RestrictionToA {
    pub coeffs: Vec<i64>,
}

/// omega_i|_A = omega_{n+m-i}|_A = i (t_1 + .. + t_i) for i <= n.
pub fn restrict_to_a(ctx: &RankPair, l: &Weight) -> Result<RestrictionToA> {
    let (n, m) = (ctx.n, ctx.m);
    let mut coeffs = vec![0i64; n];
    for (idx, a) in l.omega.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        let k = idx + 1;
        let i = if k <= n {
            k
        } else if k >= m {
            ctx.big_n() - k
        } else {
            return Err(Error::OutsideLattice);
        };
        for c in coeffs.iter_mut().take(i) {
            *c += a;
        }
    }
    Ok(RestrictionToA { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: usize, m: usize) -> RankPair {
        RankPair::new(n, m).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_in_eps(&ctx(1, 2), 1).unwrap(), vec![qf(2, 3), qf(-1, 3), qf(-1, 3)]);
        assert_eq!(omega_in_eps(&ctx(1, 1), 1).unwrap(), vec![qf(1, 2), qf(-1, 2)]);
        assert!(omega_in_eps(&ctx(1, 1), 2).is_err());
        assert!(omega_in_eps(&ctx(1, 1), 0).is_err());
    }

    #[test]
    fn omega_alpha_duality() {
        for (n, m) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 4)] {
            let c = ctx(n, m);
            for i in 1..c.big_n() {
                let w = omega_in_eps(&c, i).unwrap();
                assert!(w.iter().fold(Q::zero(), |s, x| s + x).is_zero());
                for j in 1..c.big_n() {
                    let expect = if i == j { Q::one() } else { Q::zero() };
                    assert_eq!(dot(&w, &simple_root_eps(&c, j)), expect);
                }
            }
        }
    }

    #[test]
    fn inner_and_rho() {
        let c = ctx(1, 1);
        let w = Weight::fundamental(&c, 1);
        assert_eq!(inner(&c, &w, &w).unwrap(), qf(1, 2));
        assert!(inner(&c, &w, &Weight::zero(&c)).unwrap().is_zero());
        assert_eq!(rho(&c), w);
        assert_eq!(rho(&c).eps(), &[qf(1, 2), qf(-1, 2)]);
        let c3 = ctx(1, 2);
        assert_eq!(rho(&c3).omega(), &[1, 1]);
        let other = ctx(2, 2);
        assert_eq!(inner(&c, &w, &Weight::zero(&other)), Err(Error::RankMismatch));
    }

    #[test]
    fn casimir_examples() {
        let c = ctx(1, 1);
        assert_eq!(casimir_eigenvalue(&c, &Weight::fundamental(&c, 1).scale(2)).unwrap(), q(4));
        let c = ctx(2, 3);
        assert_eq!(casimir_eigenvalue(&c, &Weight::spherical_generator(&c, 1)).unwrap(), q(10));
        assert!(casimir_eigenvalue(&c, &Weight::zero(&c)).unwrap().is_zero());
        for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 5)] {
            let c = ctx(n, m);
            for i in 1..=n {
                let d = 2 * i * (m + n - i + 1);
                assert_eq!(casimir_eigenvalue(&c, &Weight::spherical_generator(&c, i)).unwrap(), q(d as i64));
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let c = ctx(2, 3);
        let l1 = Weight::spherical_generator(&c, 1);
        let z = Weight::zero(&c);
        assert!(dominance_leq(&z, &l1));
        assert!(l1.alpha_coords().iter().all(|a| a.is_one()));
        assert!(dominance_leq(&l1, &l1));
        let nu1 = Weight::from_omega(&c, vec![0, 1, 0, 1]).unwrap();
        let nu0 = Weight::fundamental(&c, 1);
        assert!(dominance_leq(&nu0, &nu1));
        assert!(!dominance_leq(&nu1, &nu0));
        // omega_1 and 0 differ by a non-integral root combination
        assert!(!dominance_leq(&z, &nu0));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(&ctx(1, 1), &Weight::fundamental(&ctx(1, 1), 1).scale(2)).unwrap(), 3);
        let c = ctx(1, 2);
        assert_eq!(weyl_dim(&c, &Weight::from_omega(&c, vec![1, 1]).unwrap()).unwrap(), 8);
        let c = ctx(2, 3);
        assert_eq!(weyl_dim(&c, &Weight::spherical_generator(&c, 1)).unwrap(), 24);
        for (n, m) in [(1, 1), (1, 4), (2, 2), (3, 3), (2, 5)] {
            let c = ctx(n, m);
            let adj = Weight::spherical_generator(&c, 1);
            assert_eq!(weyl_dim(&c, &adj).unwrap() as usize, (n + m) * (n + m) - 1);
        }
        let bad = Weight::from_omega(&c, vec![-1, 0, 0, 0]).unwrap();
        assert_eq!(weyl_dim(&c, &bad), Err(Error::NotDominant));
    }

    #[test]
    fn restriction_examples() {
        let c = ctx(3, 4);
        assert_eq!(restrict_to_a(&c, &Weight::fundamental(&c, 1)).unwrap().coeffs, vec![1, 0, 0]);
        assert_eq!(restrict_to_a(&c, &Weight::fundamental(&c, 2)).unwrap().coeffs, vec![1, 1, 0]);
        assert_eq!(restrict_to_a(&c, &Weight::spherical_generator(&c, 2)).unwrap().coeffs, vec![2, 2, 0]);
        let c = ctx(1, 3);
        assert_eq!(restrict_to_a(&c, &Weight::fundamental(&c, 2)), Err(Error::OutsideLattice));
        let c = ctx(2, 2);
        assert_eq!(restrict_to_a(&c, &Weight::fundamental(&c, 2)).unwrap().coeffs, vec![1, 1]);
    }

    #[test]
    fn round_trip_omega_eps() {
        let c = ctx(2, 3);
        let w = Weight::from_omega(&c, vec![3, -1, 0, 2]).unwrap();
        let back = Weight::omega_from_eps(w.eps());
        assert_eq!(back, vec![q(3), q(-1), q(0), q(2)]);
    }

    fn arb_lattice_weight(c: RankPair) -> impl Strategy<Value = Weight> {
        proptest::collection::vec(0i64..4, c.rank()).prop_map(move |mut v| {
            for k in c.n + 1..c.m {
                v[k - 1] = 0;
            }
            Weight::from_omega(&c, v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn restriction_is_additive(a in arb_lattice_weight(RankPair { n: 2, m: 4 }), b in arb_lattice_weight(RankPair { n: 2, m: 4 })) {
            let c = ctx(2, 4);
            let ra = restrict_to_a(&c, &a).unwrap().coeffs;
            let rb = restrict_to_a(&c, &b).unwrap().coeffs;
            let rs = restrict_to_a(&c, &a.add(&b)).unwrap().coeffs;
            prop_assert_eq!(rs, ra.iter().zip(&rb).map(|(x, y)| x + y).collect::<Vec<_>>());
        }

        #[test]
        fn dominance_is_a_partial_order(ws in proptest::collection::vec(proptest::collection::vec(0i64..3, 3), 1..7)) {
            let c = ctx(2, 2);
            let ws: Vec<Weight> = ws.into_iter().map(|v| Weight::from_omega(&c, v).unwrap()).collect();
            for a in &ws {
                prop_assert!(dominance_leq(a, a));
                for b in &ws {
                    if dominance_leq(a, b) && dominance_leq(b, a) {
                        prop_assert_eq!(a, b);
                    }
                    for d in &ws {
                        if dominance_leq(a, b) && dominance_leq(b, d) {
                            prop_assert!(dominance_leq(a, d));
                        }
                    }
                }
            }
        }
    }
}
