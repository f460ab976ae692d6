//! Bottoms B(mu) and the degree-filtered spectrum P_G^+(mu) for
//! mu = a w_1 + b w_n and mu = w_s + b w_n.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{casimir_eigenvalue, dominance_leq, RankPair, Weight};
use crate::trigring::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// mu = a w_1 + b w_n
    RankOne { a: u32, b: u32 },
    /// mu = w_s + b w_n
    Wedge { s: usize, b: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MuSpec {
    pub ctx: RankPair,
    pub family: Family,
}

impl fmt::Display for MuSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::RankOne { a, b } => write!(f, "rankone:{a},{b}"),
            Family::Wedge { s, b } => write!(f, "wedge:{s},{b}"),
        }
    }
}

impl MuSpec {
    pub fn new(ctx: RankPair, family: Family) -> Result<Self> {
        if let Family::Wedge { s, .. } = family {
            if s > ctx.n {
                return Err(Error::InvalidMu(format!("s={s} exceeds n={}", ctx.n)));
            }
        }
        Ok(MuSpec { ctx, family })
    }
    pub fn rank_one(ctx: RankPair, a: u32, b: u32) -> Self {
        MuSpec { ctx, family: Family::RankOne { a, b } }
    }
    pub fn wedge(ctx: RankPair, s: usize, b: u32) -> Result<Self> {
        Self::new(ctx, Family::Wedge { s, b })
    }
    /// Parses `rankone:a,b` or `wedge:s,b`.
    pub fn parse(ctx: RankPair, text: &str) -> Result<Self> {
        let bad = || Error::InvalidMu(text.to_string());
        let (tag, rest) = text.split_once(':').ok_or_else(bad)?;
        let (x, y) = rest.split_once(',').ok_or_else(bad)?;
        let x: u32 = x.trim().parse().map_err(|_| bad())?;
        let y: u32 = y.trim().parse().map_err(|_| bad())?;
        match tag.trim() {
            "rankone" => Ok(Self::rank_one(ctx, x, y)),
            "wedge" => Self::wedge(ctx, x as usize, y),
            _ => Err(bad()),
        }
    }
    pub fn b(&self) -> u32 {
        match self.family {
            Family::RankOne { b, .. } | Family::Wedge { b, .. } => b,
        }
    }
    pub fn is_wedge(&self) -> bool {
        matches!(self.family, Family::Wedge { .. })
    }
    /// The highest weight mu read as a G-weight.
    pub fn weight(&self) -> Weight {
        let c = &self.ctx;
        let wn = Weight::fundamental(c, c.n).scale(self.b() as i64);
        match self.family {
            Family::RankOne { a, .. } => Weight::fundamental(c, 1).scale(a as i64).add(&wn),
            Family::Wedge { s, .. } => Weight::fundamental(c, s).add(&wn),
        }
    }
    /// dim V_mu^K.
    pub fn dim_k(&self) -> usize {
        match self.family {
            Family::RankOne { a, .. } => binomial(a as usize + self.ctx.n - 1, self.ctx.n - 1),
            Family::Wedge { s, .. } => binomial(self.ctx.n, s),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Compositions of `a` into `n` parts, starting with (a,0,..,0), descending lexicographically.
pub fn compositions(a: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(rem: u32, n: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=rem).rev() {
            cur.push(x);
            rec(rem - x, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a, n, &mut Vec::new(), &mut out);
    out
}

/// s-subsets of {1..n} in lexicographic order.
pub fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < s - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, s, &mut Vec::new(), &mut out);
    out
}

/// Maximal runs [p..q] of a sorted set, reported as (y, x) = (p - 1, q).
pub fn runs(h: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < h.len() {
        let p = h[i];
        let mut q = p;
        while i + 1 < h.len() && h[i + 1] == q + 1 {
            i += 1;
            q += 1;
        }
        out.push((p - 1, q));
        i += 1;
    }
    out
}

/// lambda_H = sum_k (w_{x_k} + w_{n+m-y_k}) + b w_n.
pub fn lambda_h(ctx: &RankPair, h: &[usize], b: u32) -> Weight {
    let mut w = Weight::fundamental(ctx, ctx.n).scale(b as i64);
    for (y, x) in runs(h) {
        w = w.add(&Weight::fundamental(ctx, x)).add(&Weight::fundamental(ctx, ctx.big_n() - y));
    }
    w
}

pub fn rank_one_bottom_element(ctx: &RankPair, comp: &[u32], b: u32) -> Weight {
    let mut w = Weight::fundamental(ctx, ctx.n).scale(b as i64);
    for (idx, a) in comp.iter().enumerate() {
        let i = idx + 1;
        let pair = Weight::fundamental(ctx, i).add(&Weight::fundamental(ctx, ctx.big_n() + 1 - i));
        w = w.add(&pair.scale(*a as i64));
    }
    w
}

pub fn bottom_rank_one(mu: &MuSpec) -> Result<Vec<Weight>> {
    let Family::RankOne { a, b } = mu.family else {
        return Err(Error::InvalidMu("expected the rank-one family".into()));
    };
    Ok(compositions(a, mu.ctx.n).iter().map(|c| rank_one_bottom_element(&mu.ctx, c, b)).collect())
}

pub fn bottom_wedge(mu: &MuSpec) -> Result<Vec<Weight>> {
    let Family::Wedge { s, b } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    Ok(subsets(mu.ctx.n, s).iter().map(|h| lambda_h(&mu.ctx, h, b)).collect())
}

pub fn bottom(mu: &MuSpec) -> Vec<Weight> {
    match mu.family {
        Family::RankOne { .. } => bottom_rank_one(mu).unwrap(),
        Family::Wedge { .. } => bottom_wedge(mu).unwrap(),
    }
}

/// Spectrum label: bottom element plus spherical degrees d_1..d_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumLabel {
    pub bottom_index: usize,
    pub bottom: Weight,
    pub degrees: Vec<u32>,
}

impl Serialize for SpectrumLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SpectrumLabel", 2)?;
        st.serialize_field("bottom", self.bottom.omega())?;
        st.serialize_field("degrees", &self.degrees)?;
        st.end()
    }
}

impl SpectrumLabel {
    pub fn weight(&self, ctx: &RankPair) -> Weight {
        let mut w = self.bottom.clone();
        for (i, d) in self.degrees.iter().enumerate() {
            if *d > 0 {
                w = w.add(&Weight::spherical_generator(ctx, i + 1).scale(*d as i64));
            }
        }
        w
    }
    pub fn sph_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelInfo {
    pub weight: Weight,
    #[serde(serialize_with = "ser_q")]
    pub eigenvalue: Q,
    pub label: SpectrumLabel,
}

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::trigring::q_to_string(x))
}

/// Degree vectors d in N^n with |d| <= bound.
pub fn degree_vectors(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=bound {
        let mut v = compositions(total, n);
        v.reverse();
        out.extend(v);
    }
    out
}

pub fn label_info(mu: &MuSpec, label: SpectrumLabel) -> LabelInfo {
    let weight = label.weight(&mu.ctx);
    let eigenvalue = casimir_eigenvalue(&mu.ctx, &weight).unwrap();
    LabelInfo { weight, eigenvalue, label }
}

/// Topological sort by dominance, smaller weights first, ties broken lexicographically.
pub fn topo_sort(items: Vec<LabelInfo>) -> Vec<LabelInfo> {
    let k = items.len();
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && dominance_leq(&items[i].weight, &items[j].weight) {
                below[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    let mut ready: BTreeSet<(Vec<i64>, Vec<u32>, usize)> = BTreeSet::new();
    for i in 0..k {
        if indeg[i] == 0 {
            ready.insert((items[i].weight.omega().to_vec(), items[i].label.degrees.clone(), i));
        }
    }
    let mut order = Vec::with_capacity(k);
    while let Some(first) = ready.iter().next().cloned() {
        ready.remove(&first);
        let i = first.2;
        order.push(i);
        for &j in &below[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert((items[j].weight.omega().to_vec(), items[j].label.degrees.clone(), j));
            }
        }
    }
    let mut slots: Vec<Option<LabelInfo>> = items.into_iter().map(Some).collect();
    order.into_iter().map(|i| slots[i].take().unwrap()).collect()
}

pub fn enumerate_pg_mu(mu: &MuSpec, degree_bound: u32) -> Vec<LabelInfo> {
    let b = bottom(mu);
    let mut items = Vec::new();
    for (idx, nu) in b.iter().enumerate() {
        for d in degree_vectors(mu.ctx.n, degree_bound) {
            items.push(label_info(mu, SpectrumLabel { bottom_index: idx, bottom: nu.clone(), degrees: d }));
        }
    }
    topo_sort(items)
}

/// Decompose lambda as bottom + spherical part, if possible.
pub fn decompose(mu: &MuSpec, l: &Weight) -> Option<SpectrumLabel> {
    let ctx = &mu.ctx;
    let (n, big_n) = (ctx.n, ctx.big_n());
    for (idx, nu) in bottom(mu).iter().enumerate() {
        let diff = l.sub(nu);
        let om = diff.omega();
        let mut d = Vec::with_capacity(n);
        let mut ok = true;
        for i in 1..=n {
            let mut c = om[i - 1];
            if i == big_n - i {
                if c % 2 != 0 {
                    ok = false;
                    break;
                }
                c /= 2;
            }
            if c < 0 {
                ok = false;
                break;
            }
            d.push(c as u32);
        }
        if !ok {
            continue;
        }
        let cand = SpectrumLabel { bottom_index: idx, bottom: nu.clone(), degrees: d };
        if cand.weight(ctx) == *l {
            return Some(cand);
        }
    }
    None
}

/// Generators xi_1..xi_{2n+1} of the extended weight monoid for mu = a w_1 + b w_n.
/// The K-part is recorded as coefficients of (w_1, w_n); for n = 1 these coincide.
fn monoid_generators(ctx: &RankPair) -> Vec<(Weight, (i64, i64))> {
    let n = ctx.n;
    let big_n = ctx.big_n();
    let w = |i: usize| Weight::fundamental(ctx, i);
    let mut gens = Vec::new();
    for i in 1..n {
        gens.push((Weight::spherical_generator(ctx, i), (0, 0)));
    }
    gens.push((w(1), (1, 0)));
    for i in 2..n {
        gens.push((w(i).add(&w(big_n + 1 - i)), (1, 0)));
    }
    gens.push((w(ctx.m + 1), (1, -1)));
    gens.push((w(ctx.m), (0, -1)));
    gens.push((w(n), (0, 1)));
    gens
}

pub fn extended_monoid_check(mu: &MuSpec, l: &Weight) -> Result<bool> {
    let Family::RankOne { a, b } = mu.family else {
        return Err(Error::InvalidMu("expected the rank-one family".into()));
    };
    let ctx = &mu.ctx;
    let merge = ctx.n == 1;
    let key = |k: (i64, i64)| if merge { (k.0 + k.1, 0) } else { k };
    let gens: Vec<(Vec<i64>, (i64, i64))> = monoid_generators(ctx)
        .into_iter()
        .map(|(g, k)| (g.omega().to_vec(), key(k)))
        .filter(|(g, k)| g.iter().any(|x| *x != 0) || *k != (0, 0))
        .collect();
    let target = key((a as i64, b as i64));
    if l.omega().iter().any(|x| *x < 0) {
        return Ok(false);
    }
    fn dfs(gens: &[(Vec<i64>, (i64, i64))], idx: usize, rem: &mut Vec<i64>, k: (i64, i64), target: (i64, i64)) -> bool {
        if idx == gens.len() {
            return rem.iter().all(|x| *x == 0) && k == target;
        }
        let (g, gk) = &gens[idx];
        let mut count = 0i64;
        let mut kk = k;
        loop {
            if dfs(gens, idx + 1, rem, kk, target) {
                for (r, x) in rem.iter_mut().zip(g) {
                    *r += x * count;
                }
                return true;
            }
            if g.iter().all(|x| *x == 0) {
                break;
            }
            if g.iter().zip(rem.iter()).any(|(x, r)| x > r) {
                break;
            }
            for (r, x) in rem.iter_mut().zip(g) {
                *r -= x;
            }
            count += 1;
            kk = (kk.0 + gk.0, kk.1 + gk.1);
        }
        for (r, x) in rem.iter_mut().zip(g) {
            *r += x * count;
        }
        false
    }
    let mut rem = l.omega().to_vec();
    Ok(dfs(&gens, 0, &mut rem, (0, 0), target))
}
