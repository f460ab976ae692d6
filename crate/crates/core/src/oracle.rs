//! Brute-force representation theory used to cross-check the combinatorics:
//! Freudenthal multiplicities, branching to K by peeling, tensor products and
//! M-type distinctness.
//!
//! Characters are handled in GL-polynomial form: a weight is an integer vector
//! (partition coordinates), so SU(N) weights are fixed up to adding (1,..,1).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bottoms::{enumerate_pg_mu, MuSpec};
use crate::error::{Error, Result};
use crate::intertwiners::MTypeBasis;
use crate::rootdata::{RankPair, Weight};

pub const DEFAULT_CAP: u128 = 100_000;

pub type Char = BTreeMap<Vec<i64>, i64>;

/// Full character of an irreducible, keyed by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub highest: Vec<i64>,
    pub weights: Char,
}

impl CharacterTable {
    pub fn dim(&self) -> i64 {
        self.weights.values().sum()
    }
    pub fn multiplicity(&self, w: &[i64]) -> i64 {
        self.weights.get(w).copied().unwrap_or(0)
    }
}

/// Partition coordinates of a G-weight: p_i = a_i + .. + a_{N-1}, p_N = 0.
pub fn partition_of(w: &Weight) -> Vec<i64> {
    let a = w.omega();
    let mut p = vec![0i64; a.len() + 1];
    for i in (0..a.len()).rev() {
        p[i] = p[i + 1] + a[i];
    }
    p
}

pub fn weight_of_partition(ctx: &RankPair, p: &[i64]) -> Result<Weight> {
    Weight::from_omega(ctx, p.windows(2).map(|w| w[0] - w[1]).collect())
}

/// dim of the GL_k irreducible with highest weight `p` (non-increasing).
pub fn gl_dim(p: &[i64]) -> u128 {
    let k = p.len();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        for j in i + 1..k {
            num *= (p[i] - p[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

fn dominated(mu: &[i64], la: &[i64]) -> bool {
    let (mut a, mut b) = (0, 0);
    for (x, y) in mu.iter().zip(la) {
        a += x;
        b += y;
        if a > b {
            return false;
        }
    }
    a == b
}

fn sorted_desc(w: &[i64]) -> Vec<i64> {
    let mut v = w.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Non-increasing vectors of length k with entries in [lo, hi] summing to `total`.
fn dominant_candidates(k: usize, total: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, rem: i64, lo: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = (k - cur.len()) as i64;
        for x in (lo..=cap).rev() {
            if rem - x < lo * (left - 1) || rem - x > x * (left - 1) {
                continue;
            }
            cur.push(x);
            rec(k, rem - x, lo, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, total, lo, hi, &mut Vec::new(), &mut out);
    out
}

fn distinct_permutations(w: &[i64]) -> Vec<Vec<i64>> {
    let mut v = w.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return out;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
}

/// Freudenthal recursion for the GL_k irreducible with highest weight `p`.
pub fn freudenthal_gl(p: &[i64], cap: u128) -> Result<CharacterTable> {
    let k = p.len();
    let dim = gl_dim(p);
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let total: i64 = p.iter().sum();
    let (lo, hi) = (*p.last().unwrap_or(&0), *p.first().unwrap_or(&0));
    let mut dom: Vec<Vec<i64>> = dominant_candidates(k, total, lo, hi).into_iter().filter(|m| dominated(m, p)).collect();
    let depth = |m: &[i64]| -> i64 {
        let (mut acc, mut s) = (0, 0);
        for (x, y) in p.iter().zip(m) {
            s += x - y;
            acc += s;
        }
        acc
    };
    dom.sort_by_key(|m| depth(m));
    let rho: Vec<i64> = (0..k).map(|i| (k - 1 - i) as i64).collect();
    let norm = |v: &[i64]| -> i64 { v.iter().zip(&rho).map(|(a, r)| (a + r) * (a + r)).sum() };
    let top = norm(p);
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for m in &dom {
        if m == p {
            mult.insert(m.clone(), 1);
            continue;
        }
        let lookup = |w: &[i64], mult: &BTreeMap<Vec<i64>, i64>| -> Option<i64> {
            let s = sorted_desc(w);
            if !dominated(&s, p) {
                return None;
            }
            Some(mult.get(&s).copied().unwrap_or(0))
        };
        let mut acc = 0i64;
        for i in 0..k {
            for j in i + 1..k {
                let mut w = m.clone();
                loop {
                    w[i] += 1;
                    w[j] -= 1;
                    let Some(x) = lookup(&w, &mult) else { break };
                    acc += x * (w[i] - w[j]);
                }
            }
        }
        let den = top - norm(m);
        if den <= 0 || (2 * acc) % den != 0 {
            return Err(Error::CheckFailed("Freudenthal denominator".into()));
        }
        mult.insert(m.clone(), 2 * acc / den);
    }
    let mut weights = Char::new();
    for (d, c) in mult {
        if c == 0 {
            continue;
        }
        for w in distinct_permutations(&d) {
            weights.insert(w, c);
        }
    }
    Ok(CharacterTable { highest: p.to_vec(), weights })
}

/// Freudenthal for a G-weight of SU(n+m).
pub fn freudenthal(ctx: &RankPair, l: &Weight, cap: u128) -> Result<CharacterTable> {
    if !l.is_dominant() {
        return Err(Error::NotDominant);
    }
    let _ = ctx;
    freudenthal_gl(&partition_of(l), cap)
}

fn add_scaled(acc: &mut Char, ch: &Char, c: i64) {
    for (w, x) in ch {
        let e = acc.entry(w.clone()).or_insert(0);
        *e += c * x;
        if *e == 0 {
            acc.remove(w);
        }
    }
}

/// Decompose a character into irreducibles of GL_{k_1} x .. x GL_{k_r} by peeling
/// lexicographically largest weights.
pub fn peel(ch: &Char, blocks: &[usize], cap: u128) -> Result<BTreeMap<Vec<i64>, i64>> {
    let mut rem = ch.clone();
    let mut out = BTreeMap::new();
    while let Some((w, c)) = rem.iter().next_back().map(|(w, c)| (w.clone(), *c)) {
        if c < 0 {
            return Err(Error::NegativeMultiplicity);
        }
        let mut prod: Char = [(Vec::new(), 1i64)].into_iter().collect();
        let mut start = 0;
        for &k in blocks {
            let part = &w[start..start + k];
            if part.windows(2).any(|x| x[0] < x[1]) {
                return Err(Error::CheckFailed("peeled weight is not block dominant".into()));
            }
            let bc = freudenthal_gl(part, cap)?;
            let mut next = Char::new();
            for (a, x) in &prod {
                for (b, y) in &bc.weights {
                    let mut v = a.clone();
                    v.extend_from_slice(b);
                    *next.entry(v).or_insert(0) += x * y;
                }
            }
            prod = next;
            start += k;
        }
        add_scaled(&mut rem, &prod, -c);
        *out.entry(w).or_insert(0) += c;
    }
    Ok(out)
}

fn normalize_mod_det(v: &[i64]) -> Vec<i64> {
    let last = *v.last().unwrap();
    v.iter().map(|x| x - last).collect()
}

/// [V_lambda^G |_K : V_mu^K].
pub fn branch_multiplicity(ctx: &RankPair, l: &Weight, mu: &MuSpec, cap: u128) -> Result<i64> {
    let ch = freudenthal(ctx, l, cap)?;
    let k_types = peel(&ch.weights, &[ctx.n, ctx.m], cap)?;
    let target = normalize_mod_det(&partition_of(&mu.weight()));
    Ok(k_types.iter().filter(|(w, _)| normalize_mod_det(w) == target).map(|(_, c)| *c).sum())
}

/// V_{w_c} (x) V_{w_{N-d}} = sum_i V_{w_{c-i} + w_{N-d+i}}, with w_0 = w_N = 0.
pub fn tensor_check_gdec(ctx: &RankPair, c: usize, d: usize, cap: u128) -> Result<bool> {
    let big_n = ctx.big_n();
    if c > big_n - d || d > big_n {
        return Err(Error::IndexOutOfRange { index: c, max: big_n - d });
    }
    let ones = |k: usize| -> Vec<i64> { (0..big_n).map(|i| (i < k) as i64).collect() };
    let a = freudenthal_gl(&ones(c), cap)?;
    let b = freudenthal_gl(&ones(big_n - d), cap)?;
    let mut prod = Char::new();
    for (x, p) in &a.weights {
        for (y, q) in &b.weights {
            let w: Vec<i64> = x.iter().zip(y).map(|(u, v)| u + v).collect();
            *prod.entry(w).or_insert(0) += p * q;
        }
    }
    let got = peel(&prod, &[big_n], cap)?;
    let mut expect = BTreeMap::new();
    for i in 0..=c.min(d) {
        let w: Vec<i64> = ones(c - i).iter().zip(ones(big_n - d + i)).map(|(u, v)| u + v).collect();
        *expect.entry(w).or_insert(0i64) += 1;
    }
    Ok(got == expect)
}

/// M-torus characters of the M-type basis, read off from the diagonal E_ii action.
pub fn m_type_characters(mu: &MuSpec) -> Vec<Vec<i64>> {
    let basis = MTypeBasis::for_mu(mu);
    (0..basis.dim())
        .map(|k| {
            (1..=basis.n)
                .map(|i| {
                    let w = basis.apply_e_label(i, i, &basis.labels[k]).map(|(c, _)| c.to_integer()).unwrap_or_default();
                    i64::try_from(w).unwrap() + basis.b as i64
                })
                .collect()
        })
        .collect()
}

pub fn m_type_check(mu: &MuSpec) -> bool {
    let chars = m_type_characters(mu);
    let set: BTreeSet<_> = chars.iter().collect();
    set.len() == chars.len()
}

/// Dominant weights of SU(n+m) with omega-coordinate sum at most `bound`.
pub fn dominant_box(ctx: &RankPair, bound: i64) -> Vec<Weight> {
    let r = ctx.rank();
    let mut out = Vec::new();
    fn rec(r: usize, rem: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in 0..=rem {
            cur.push(x);
            rec(r, rem - x, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(r, bound, &mut Vec::new(), &mut raw);
    for v in raw {
        out.push(Weight::from_omega(ctx, v).unwrap());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub tested: usize,
    pub multiplicity_free: bool,
    pub agrees: bool,
    pub monotone: bool,
}

/// Compare branch multiplicities with the enumerated spectrum on all dominant
/// weights whose omega-sum is at most `bound`.
pub fn membership_report(mu: &MuSpec, bound: i64, cap: u128) -> Result<MembershipReport> {
    let ctx = mu.ctx;
    let spectrum: BTreeSet<Weight> =
        enumerate_pg_mu(mu, (bound / 2 + 1) as u32).into_iter().map(|i| i.weight).collect();
    let mut mults = BTreeMap::new();
    let mut report = MembershipReport { tested: 0, multiplicity_free: true, agrees: true, monotone: true };
    for l in dominant_box(&ctx, bound) {
        let c = branch_multiplicity(&ctx, &l, mu, cap)?;
        report.tested += 1;
        report.multiplicity_free &= c == 0 || c == 1;
        report.agrees &= (c == 1) == spectrum.contains(&l);
        mults.insert(l, c);
    }
    for (l, c) in &mults {
        for i in 1..=ctx.n {
            let up = l.add(&Weight::spherical_generator(&ctx, i));
            if let Some(c2) = mults.get(&up) {
                report.monotone &= c2 >= c;
            }
        }
    }
    Ok(report)
}
