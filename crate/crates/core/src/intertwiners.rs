//! K-intertwiners into tensor products of fundamental representations and the
//! matrix-element engine <pi(a_t) v, w>.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bottoms::{compositions, runs, subsets, Family, MuSpec};
use crate::error::{Error, Result};
use crate::linalg::{q_zeros, QMat};
use crate::rootdata::RankPair;
use crate::trigring::{q, GaussRational, TrigPoly, Q};

/// Sorted, distinct indices from 1..=n+m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WedgeLabel {
    pub indices: Vec<u8>,
}

/// Sorts in place and returns the sign of the sorting permutation, or `None`
/// when an index repeats.
pub fn sort_sign(seq: &mut [u8]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if seq.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl WedgeLabel {
    pub fn new(indices: Vec<u8>) -> Option<Self> {
        indices.windows(2).all(|w| w[0] < w[1]).then_some(WedgeLabel { indices })
    }
    /// e_{s_1} ^ e_{s_2} ^ ... as (sign, sorted label).
    pub fn from_wedge(seq: &[u8]) -> Option<(i64, WedgeLabel)> {
        let mut v = seq.to_vec();
        let sign = sort_sign(&mut v)?;
        Some((sign, WedgeLabel { indices: v }))
    }
    pub fn degree(&self) -> usize {
        self.indices.len()
    }
    pub fn contains(&self, i: u8) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
    fn mask(&self) -> u64 {
        self.indices.iter().fold(0u64, |acc, i| acc | (1u64 << i))
    }
}

/// Sparse element of a tensor product of exterior powers of C^{n+m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    factors: Vec<usize>,
    terms: BTreeMap<Vec<WedgeLabel>, GaussRational>,
}

impl TensorVector {
    pub fn zero(factors: Vec<usize>) -> Self {
        TensorVector { factors, terms: BTreeMap::new() }
    }
    /// The unit of the tensor algebra (no factors).
    pub fn unit() -> Self {
        let mut t = Self::zero(Vec::new());
        t.terms.insert(Vec::new(), GaussRational::one());
        t
    }
    pub fn basis(label: WedgeLabel) -> Self {
        let mut t = Self::zero(vec![label.degree()]);
        t.terms.insert(vec![label], GaussRational::one());
        t
    }
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<WedgeLabel>, &GaussRational)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, labels: Vec<WedgeLabel>, c: GaussRational) {
        debug_assert!(labels.iter().map(|l| l.degree()).eq(self.factors.iter().copied()));
        match self.terms.entry(labels) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }
    pub fn tensor(&self, o: &TensorVector) -> TensorVector {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&o.factors);
        let mut out = TensorVector::zero(factors);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut k = a.clone();
                k.extend(b.iter().cloned());
                out.terms.insert(k, ca * cb);
            }
        }
        out
    }
    pub fn tensor_power(&self, k: u32) -> TensorVector {
        (0..k).fold(TensorVector::unit(), |acc, _| acc.tensor(self))
    }
    pub fn scale(&self, c: &GaussRational) -> TensorVector {
        if c.is_zero() {
            return TensorVector::zero(self.factors.clone());
        }
        TensorVector { factors: self.factors.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }
    pub fn add(&self, o: &TensorVector) -> Result<TensorVector> {
        if self.factors != o.factors {
            return Err(Error::FactorMismatch);
        }
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }
    pub fn sub(&self, o: &TensorVector) -> Result<TensorVector> {
        self.add(&o.scale(&-GaussRational::one()))
    }
    /// Hermitian inner product, linear in the first argument.
    pub fn inner(&self, o: &TensorVector) -> Result<GaussRational> {
        if self.factors != o.factors {
            return Err(Error::FactorMismatch);
        }
        let mut acc = GaussRational::zero();
        for (k, v) in &self.terms {
            if let Some(w) = o.terms.get(k) {
                acc += &(v * &w.conj());
            }
        }
        Ok(acc)
    }
    /// Deterministic JSON: factor degrees plus the sorted term list.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                serde_json::json!({
                    "labels": k.iter().map(|l| &l.indices).collect::<Vec<_>>(),
                    "re": crate::trigring::q_to_string(&c.re),
                    "im": crate::trigring::q_to_string(&c.im),
                })
            })
            .collect();
        serde_json::json!({ "factors": self.factors, "terms": terms })
    }
    pub fn norm_sq(&self) -> Q {
        self.terms.values().map(|c| c.norm_sq()).sum()
    }
    /// Action of the matrix unit E_{ij} (1-based) as a derivation.
    pub fn apply_e(&self, i: u8, j: u8) -> TensorVector {
        let mut out = TensorVector::zero(self.factors.clone());
        for (labels, c) in &self.terms {
            for (f, l) in labels.iter().enumerate() {
                if !l.contains(j) {
                    continue;
                }
                if i == j {
                    out.add_term(labels.clone(), c.clone());
                    continue;
                }
                if l.contains(i) {
                    continue;
                }
                let seq: Vec<u8> = l.indices.iter().map(|&x| if x == j { i } else { x }).collect();
                let (sign, nl) = WedgeLabel::from_wedge(&seq).unwrap();
                let mut nk = labels.clone();
                nk[f] = nl;
                out.add_term(nk, c.scale(&q(sign)));
            }
        }
        out
    }
}

fn index_sum(p: &[u8]) -> i64 {
    p.iter().map(|&x| x as i64).sum()
}

fn parity(x: i64) -> i64 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn range(lo: usize, hi: usize) -> Vec<u8> {
    (lo..=hi).map(|x| x as u8).collect()
}

fn k_subsets(items: &[u8], k: usize) -> Vec<Vec<u8>> {
    fn rec(items: &[u8], k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn minus(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

fn check_subset(ctx: &RankPair, h: &[usize]) -> Result<()> {
    if h.windows(2).any(|w| w[0] >= w[1]) || h.iter().any(|&x| x == 0 || x > ctx.n) {
        return Err(Error::InvalidMu(format!("{h:?} is not a subset of 1..{}", ctx.n)));
    }
    Ok(())
}

/// v^{H,k} = sum (-1)^{b(P)+b(Q)} e_H^e_P^e_Q (x) e_{N\P}^e_{M\Q}.
pub fn v_hk(ctx: &RankPair, u: usize, h: &[usize], k: usize) -> Result<TensorVector> {
    check_subset(ctx, h)?;
    let s = h.len();
    let (n, big_n) = (ctx.n, ctx.big_n());
    if k > u || s + u > big_n || u - k > ctx.m || k > n - s {
        return Err(Error::IndexOutOfRange { index: k, max: u.min(n - s) });
    }
    let hh: Vec<u8> = h.iter().map(|&x| x as u8).collect();
    let nn = range(1, n);
    let mm = range(n + 1, big_n);
    let mut out = TensorVector::zero(vec![s + u, big_n - u]);
    for p in k_subsets(&minus(&nn, &hh), k) {
        for qq in k_subsets(&mm, u - k) {
            let mut first = hh.clone();
            first.extend(&p);
            first.extend(&qq);
            let (sign, l1) = WedgeLabel::from_wedge(&first).unwrap();
            let mut second = minus(&nn, &p);
            second.extend(minus(&mm, &qq));
            let l2 = WedgeLabel::new(second).unwrap();
            let c = sign * parity(index_sum(&p) + index_sum(&qq));
            out.add_term(vec![l1, l2], GaussRational::from_int(c));
        }
    }
    Ok(out)
}

/// v'_i = v^{emptyset, i} with u = i.
pub fn k_fixed_vector(ctx: &RankPair, i: usize) -> Result<TensorVector> {
    if i > ctx.n {
        return Err(Error::IndexOutOfRange { index: i, max: ctx.n });
    }
    v_hk(ctx, i, &[], i)
}

/// e_1 ^ ... ^ e_n.
pub fn e_n_vector(ctx: &RankPair) -> TensorVector {
    TensorVector::basis(WedgeLabel::new(range(1, ctx.n)).unwrap())
}

/// w_i = sum_{|P|=i-1} (-1)^{b(P)} e_1^e_P (x) e_{N\P}^e_M for 1 <= i <= n.
pub fn w_vector(ctx: &RankPair, i: usize) -> Result<TensorVector> {
    if i == 0 || i > ctx.n {
        return Err(Error::IndexOutOfRange { index: i, max: ctx.n });
    }
    v_hk(ctx, i - 1, &[1], i - 1)
}

/// v_mu = (x)_i w_i^{(x) a_i} (x) e_N^{(x) b}.
pub fn rank_one_highest_vector(ctx: &RankPair, comp: &[u32], a: u32, b: u32) -> Result<TensorVector> {
    if comp.len() != ctx.n || comp.iter().sum::<u32>() != a {
        return Err(Error::CompositionMismatch);
    }
    let mut v = TensorVector::unit();
    for (idx, &ai) in comp.iter().enumerate() {
        if ai > 0 {
            v = v.tensor(&w_vector(ctx, idx + 1)?.tensor_power(ai));
        }
    }
    Ok(v.tensor(&e_n_vector(ctx).tensor_power(b)))
}

/// Ladder embedding j_W(e_H) = v^{H,i} (x) e_N^b for mu = w_s + b w_n.
pub fn ladder_vector(ctx: &RankPair, h: &[usize], i: usize, b: u32) -> Result<TensorVector> {
    Ok(v_hk(ctx, i, h, i)?.tensor(&e_n_vector(ctx).tensor_power(b)))
}

fn permutations(s: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == used.len() {
            let mut inv = 0;
            for i in 0..cur.len() {
                for j in i + 1..cur.len() {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), parity(inv)));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; s], &mut out);
    out
}

/// Run data (y_k, x_k) of a bottom element lambda_H together with the block
/// lengths x_k - y_k that partition {1..s}.
fn run_blocks(run_data: &[(usize, usize)]) -> Vec<(usize, usize, usize)> {
    let mut start = 0;
    run_data
        .iter()
        .map(|&(y, x)| {
            let len = x - y;
            let r = (start, len, y);
            start += len;
            r
        })
        .collect()
}

/// Image of e_{target} under the composite intertwiner w o u for the bottom
/// element with runs `run_data`, tensored with e_N^b and the K-fixed vectors v'_i^{d_i}.
pub fn lambda_h_vector(
    ctx: &RankPair,
    run_data: &[(usize, usize)],
    degrees: &[u32],
    b: u32,
    target: &[usize],
) -> Result<TensorVector> {
    check_subset(ctx, target)?;
    let s = target.len();
    let blocks = run_blocks(run_data);
    if blocks.iter().map(|b| b.1).sum::<usize>() != s {
        return Err(Error::InvalidMu("runs do not match |H|".into()));
    }
    let nn = range(1, ctx.n);
    let big_n = ctx.big_n();
    let mm = range(ctx.n + 1, big_n);
    let mut factors = Vec::new();
    for &(_, len, y) in &blocks {
        factors.push(len + y);
        factors.push(big_n - y);
    }
    let mut acc = TensorVector::zero(factors);
    for (sigma, sgn) in permutations(s) {
        let mut v = TensorVector::unit();
        for &(start, len, y) in &blocks {
            let hs: Vec<u8> = (start..start + len).map(|j| target[sigma[j]] as u8).collect();
            let mut block = TensorVector::zero(vec![len + y, big_n - y]);
            for p in k_subsets(&minus(&nn, &hs), y) {
                let mut first = hs.clone();
                first.extend(&p);
                let (sign, l1) = WedgeLabel::from_wedge(&first).unwrap();
                let mut second = minus(&nn, &p);
                second.extend(&mm);
                let l2 = WedgeLabel::new(second).unwrap();
                block.add_term(vec![l1, l2], GaussRational::from_int(sign * parity(index_sum(&p))));
            }
            v = v.tensor(&block);
        }
        acc = acc.add(&v.scale(&GaussRational::from_int(sgn)))?;
    }
    let mut out = acc.tensor(&e_n_vector(ctx).tensor_power(b));
    for (i, &d) in degrees.iter().enumerate() {
        if d > 0 {
            out = out.tensor(&k_fixed_vector(ctx, i + 1)?.tensor_power(d));
        }
    }
    Ok(out)
}

/// Ordered M-type basis of V_mu^K. Each label is an exponent vector in N^n:
/// the indicator of H for the wedge family, the composition for the rank-one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MTypeBasis {
    pub n: usize,
    pub wedge: bool,
    pub b: u32,
    pub labels: Vec<Vec<u32>>,
}

impl MTypeBasis {
    pub fn for_mu(mu: &MuSpec) -> Self {
        let n = mu.ctx.n;
        match mu.family {
            Family::Wedge { s, b } => MTypeBasis {
                n,
                wedge: true,
                b,
                labels: subsets(n, s)
                    .into_iter()
                    .map(|h| {
                        let mut v = vec![0u32; n];
                        for x in h {
                            v[x - 1] = 1;
                        }
                        v
                    })
                    .collect(),
            },
            Family::RankOne { a, b } => MTypeBasis { n, wedge: false, b, labels: compositions(a, n) },
        }
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn index_of(&self, label: &[u32]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
    /// The subset H encoded by a wedge label.
    pub fn subset(&self, k: usize) -> Vec<usize> {
        self.labels[k].iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i + 1).collect()
    }
    /// M-torus character exponents t_1^{c_1} ... t_n^{c_n}.
    pub fn m_weight(&self, k: usize) -> Vec<u32> {
        self.labels[k].iter().map(|x| x + self.b).collect()
    }
    /// E_{ij} (1-based, i != j allowed equal) applied to a basis label, ignoring the
    /// determinant twist.
    pub fn apply_e_label(&self, i: usize, j: usize, label: &[u32]) -> Option<(Q, Vec<u32>)> {
        let (i0, j0) = (i - 1, j - 1);
        if i == j {
            return (label[i0] > 0).then(|| (Q::from_integer(label[i0].into()), label.to_vec()));
        }
        if label[j0] == 0 || (self.wedge && label[i0] > 0) {
            return None;
        }
        let mut nl = label.to_vec();
        nl[j0] -= 1;
        nl[i0] += 1;
        if self.wedge {
            let (lo, hi) = (i0.min(j0), i0.max(j0));
            let between: u32 = label[lo + 1..hi].iter().sum();
            Some((q(parity(between as i64)), nl))
        } else {
            Some((Q::from_integer(label[j0].into()), nl))
        }
    }
    /// Matrix of pi_mu(E_{ij}) in this basis (columns are images), including the
    /// determinant twist b on the diagonal.
    pub fn action(&self, i: usize, j: usize) -> QMat {
        let d = self.dim();
        let mut m = q_zeros(d, d);
        for k in 0..d {
            if let Some((c, nl)) = self.apply_e_label(i, j, &self.labels[k]) {
                let l = self.index_of(&nl).expect("label closed under E_ij");
                m[l][k] += c;
            }
            if i == j {
                m[k][k] += Q::from_integer(self.b.into());
            }
        }
        m
    }
}

/// Images j(x) of every M-type basis vector, obtained by lowering from the
/// K-highest weight vector `v`.
pub fn lower_orbit(ctx: &RankPair, v: &TensorVector, basis: &MTypeBasis) -> Result<Vec<TensorVector>> {
    let n = ctx.n;
    for j in (1..ctx.big_n()).filter(|&j| j != n) {
        if !v.apply_e(j as u8, (j + 1) as u8).is_zero() {
            return Err(Error::OrbitMismatch(format!("E_{{{j},{}}} does not annihilate the input", j + 1)));
        }
    }
    let d = basis.dim();
    let mut images: Vec<Option<TensorVector>> = vec![None; d];
    images[0] = Some(v.clone());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let k = queue[head];
        head += 1;
        for j in 1..n {
            let Some((c, nl)) = basis.apply_e_label(j + 1, j, &basis.labels[k]) else {
                continue;
            };
            let Some(l) = basis.index_of(&nl) else {
                return Err(Error::OrbitMismatch("label left the basis".into()));
            };
            if images[l].is_some() {
                continue;
            }
            let img = images[k].as_ref().unwrap().apply_e((j + 1) as u8, j as u8);
            if img.is_zero() {
                return Err(Error::OrbitMismatch(format!("lowering vanished at label {:?}", basis.labels[k])));
            }
            images[l] = Some(img.scale(&GaussRational::from_q(c.recip())));
            queue.push(l);
        }
    }
    if queue.len() != d {
        return Err(Error::OrbitMismatch(format!("reached {} of {d} labels", queue.len())));
    }
    Ok(images.into_iter().map(Option::unwrap).collect())
}

/// pi_mu of a matrix unit of gl(n+m) restricted to the block-diagonal Levi:
/// indices in the N-block act through the model, the M-block acts trivially.
fn model_e(basis: &MTypeBasis, n: usize, i: usize, j: usize) -> QMat {
    if i <= n && j <= n {
        basis.action(i, j)
    } else {
        q_zeros(basis.dim(), basis.dim())
    }
}

fn apply_model(images: &[TensorVector], m: &QMat, k: usize) -> Result<TensorVector> {
    let mut acc = TensorVector::zero(images[0].factors.clone());
    for (l, row) in m.iter().enumerate() {
        if !row[k].is_zero() {
            acc = acc.add(&images[l].scale(&GaussRational::from_q(row[k].clone())))?;
        }
    }
    Ok(acc)
}

/// Checks pi_W(X) o j = j o pi_mu(X) for the Chevalley generators of k.
pub fn intertwiner_check(ctx: &RankPair, basis: &MTypeBasis, images: &[TensorVector]) -> Result<()> {
    let n = ctx.n;
    let big_n = ctx.big_n();
    let mut gens: Vec<Vec<(usize, usize, i64)>> = Vec::new();
    for j in (1..big_n).filter(|&j| j != n) {
        gens.push(vec![(j, j + 1, 1)]);
        gens.push(vec![(j + 1, j, 1)]);
    }
    for j in 1..big_n {
        gens.push(vec![(j, j, 1), (j + 1, j + 1, -1)]);
    }
    for g in gens {
        let d = basis.dim();
        let mut model = q_zeros(d, d);
        for &(i, j, c) in &g {
            let e = model_e(basis, n, i, j);
            for r in 0..d {
                for s in 0..d {
                    model[r][s] += &e[r][s] * q(c);
                }
            }
        }
        for (k, img) in images.iter().enumerate() {
            let mut lhs = TensorVector::zero(img.factors.clone());
            for &(i, j, c) in &g {
                lhs = lhs.add(&img.apply_e(i as u8, j as u8).scale(&GaussRational::from_int(c)))?;
            }
            let rhs = apply_model(images, &model, k)?;
            if !lhs.sub(&rhs)?.is_zero() {
                return Err(Error::CheckFailed(format!("intertwining fails for {g:?} at label {k}")));
            }
        }
    }
    Ok(())
}

type ClassKey = Vec<(u32, u32, u64)>;

fn class_of(labels: &[WedgeLabel], n: usize, big_n: usize) -> ClassKey {
    labels
        .iter()
        .map(|l| {
            let mask = l.mask();
            let (mut doubles, mut singles, mut middle) = (0u32, 0u32, 0u64);
            for k in 1..=n {
                let a = mask >> k & 1;
                let b = mask >> (big_n + 1 - k) & 1;
                match a + b {
                    2 => doubles |= 1 << k,
                    1 => singles |= 1 << k,
                    _ => {}
                }
            }
            for k in n + 1..=big_n - n {
                middle |= mask & (1u64 << k);
            }
            (doubles, singles, middle)
        })
        .collect()
}

fn trig_monomial(cache: &mut HashMap<(usize, u32, u32), TrigPoly>, n: usize, cos: &[u32], sin: &[u32]) -> TrigPoly {
    let mut out = TrigPoly::one(n);
    for k in 0..n {
        if cos[k] == 0 && sin[k] == 0 {
            continue;
        }
        let f = cache
            .entry((k, cos[k], sin[k]))
            .or_insert_with(|| &TrigPoly::cos(n, k).pow(cos[k]) * &TrigPoly::sin(n, k).pow(sin[k]))
            .clone();
        out = &out * &f;
    }
    out
}

/// <pi(a_t) v, w> for a_t acting by e_k -> cos t_k e_k + i sin t_k e_{n+m+1-k} (k <= n),
/// e_{n+m+1-k} -> i sin t_k e_k + cos t_k e_{n+m+1-k}, fixing the middle indices.
pub fn mat_elem(ctx: &RankPair, v: &TensorVector, w: &TensorVector) -> Result<TrigPoly> {
    if v.factors != w.factors {
        return Err(Error::FactorMismatch);
    }
    let (n, big_n) = (ctx.n, ctx.big_n());
    let mut by_class: HashMap<ClassKey, Vec<(&Vec<WedgeLabel>, GaussRational)>> = HashMap::new();
    for (labels, c) in &w.terms {
        by_class.entry(class_of(labels, n, big_n)).or_default().push((labels, c.conj()));
    }
    let mut acc: BTreeMap<(Vec<u32>, Vec<u32>), GaussRational> = BTreeMap::new();
    for (li, ci) in &v.terms {
        let Some(partners) = by_class.get(&class_of(li, n, big_n)) else {
            continue;
        };
        for (lj, cj) in partners {
            let mut cos = vec![0u32; n];
            let mut sin = vec![0u32; n];
            let mut sign = 1i64;
            let mut swaps = 0i64;
            for (a, bl) in li.iter().zip(lj.iter()) {
                let mask_a = a.mask();
                let mut seq = a.indices.clone();
                for x in seq.iter_mut() {
                    let p = *x as usize;
                    let k = if p <= n {
                        p
                    } else if p > big_n - n {
                        big_n + 1 - p
                    } else {
                        continue;
                    };
                    let partner = big_n + 1 - p;
                    if mask_a >> partner & 1 == 1 {
                        continue;
                    }
                    if bl.contains(*x) {
                        cos[k - 1] += 1;
                    } else {
                        sin[k - 1] += 1;
                        swaps += 1;
                        *x = partner as u8;
                    }
                }
                sign *= sort_sign(&mut seq).expect("distinct after swap");
                debug_assert_eq!(seq, bl.indices);
            }
            let c = &(&(ci * cj) * &GaussRational::i_pow(swaps)) * &GaussRational::from_int(sign);
            let e = acc.entry((cos, sin)).or_insert_with(GaussRational::zero);
            *e += &c;
        }
    }
    let mut cache = HashMap::new();
    let mut out = TrigPoly::zero(n);
    for ((cos, sin), c) in acc {
        if !c.is_zero() {
            out += &trig_monomial(&mut cache, n, &cos, &sin).scale(&c);
        }
    }
    Ok(out)
}

/// psi_i^{(H)} = sum over i-subsets I of N \ H of prod cos^2 t_I.
pub fn psi_elem(n: usize, i: usize, h: &[usize]) -> Result<TrigPoly> {
    if i + h.len() > n {
        return Err(Error::IndexOutOfRange { index: i, max: n - h.len().min(n) });
    }
    let rest: Vec<u8> = (1..=n as u8).filter(|x| !h.contains(&(*x as usize))).collect();
    let mut out = TrigPoly::zero(n);
    for sub in k_subsets(&rest, i) {
        let mut e = vec![0u32; n];
        for x in sub {
            e[x as usize - 1] = 2;
        }
        out += &TrigPoly::from_cos_monomial(&e);
    }
    Ok(out)
}

pub fn psi(n: usize, i: usize) -> TrigPoly {
    psi_elem(n, i, &[]).unwrap()
}

/// cos t_H cos^b t_N.
pub fn cos_h_det(n: usize, h: &[usize], b: u32) -> TrigPoly {
    let mut e = vec![b; n];
    for &x in h {
        e[x - 1] += 1;
    }
    TrigPoly::from_cos_monomial(&e)
}

/// Closed-form ladder entry cos t_H cos^b t_N psi_i^{(H)}.
pub fn q_ladder_entry(mu: &MuSpec, i: usize, h: &[usize]) -> Result<TrigPoly> {
    let Family::Wedge { s, b } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    check_subset(&mu.ctx, h)?;
    if h.len() != s {
        return Err(Error::InvalidMu(format!("|H| must be {s}")));
    }
    let n = mu.ctx.n;
    Ok(&cos_h_det(n, h, b) * &psi_elem(n, i, h)?)
}

/// Engine ladder entry C(n-s,i) <pi(a_t) j(e_H), j(e_H)> / |j(e_H)|^2.
pub fn engine_ladder_entry(mu: &MuSpec, i: usize, h: &[usize]) -> Result<TrigPoly> {
    let Family::Wedge { s, b } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    let x = ladder_vector(&mu.ctx, h, i, b)?;
    let num = mat_elem(&mu.ctx, &x, &x)?;
    let pre = Q::from_integer(crate::bottoms::binomial(mu.ctx.n - s, i).into());
    Ok(num.scale_q(&(pre / x.norm_sq())))
}

/// First diagonal entry f of Q for the bottom element with runs `run_data`
/// and spherical degrees d, for H = {1..s}.
pub fn q_lambda_h_entry(mu: &MuSpec, run_data: &[(usize, usize)], degrees: &[u32]) -> Result<TrigPoly> {
    let Family::Wedge { s, b } = mu.family else {
        return Err(Error::InvalidMu("expected the wedge family".into()));
    };
    let n = mu.ctx.n;
    let blocks = run_blocks(run_data);
    if blocks.iter().map(|b| b.1).sum::<usize>() != s {
        return Err(Error::InvalidMu("runs do not match s".into()));
    }
    let first: Vec<usize> = (1..=s).collect();
    let mut prefix = cos_h_det(n, &first, b);
    for (i, &d) in degrees.iter().enumerate() {
        prefix = &prefix * &psi(n, i + 1).pow(d);
    }
    let mut sum = TrigPoly::zero(n);
    for (sigma, _) in permutations(s) {
        let mut term = TrigPoly::one(n);
        for &(start, len, y) in &blocks {
            let set: Vec<usize> = (start..start + len).map(|j| sigma[j] + 1).collect();
            term = &term * &psi_elem(n, y, &set)?;
        }
        sum += &term;
    }
    Ok(&prefix * &sum)
}

/// Runs of the subset H as (y, x) pairs.
pub fn runs_of(h: &[usize]) -> Vec<(usize, usize)> {
    runs(h)
}

/// Engine diagonal of Q for the bottom element with index `idx`, one entry per
/// M-type label: <pi(a_t) j(x), j(x)> / |j(x)|^2.
pub fn engine_q_bottom(mu: &MuSpec, idx: usize, degrees: &[u32]) -> Result<Vec<TrigPoly>> {
    let ctx = &mu.ctx;
    let basis = MTypeBasis::for_mu(mu);
    let top = match mu.family {
        Family::RankOne { a, b } => {
            let comp = compositions(a, ctx.n)
                .into_iter()
                .nth(idx)
                .ok_or(Error::IndexOutOfRange { index: idx, max: basis.dim() })?;
            let mut v = rank_one_highest_vector(ctx, &comp, a, b)?;
            for (i, &d) in degrees.iter().enumerate() {
                if d > 0 {
                    v = v.tensor(&k_fixed_vector(ctx, i + 1)?.tensor_power(d));
                }
            }
            v
        }
        Family::Wedge { s, b } => {
            let h = subsets(ctx.n, s).into_iter().nth(idx).ok_or(Error::IndexOutOfRange { index: idx, max: basis.dim() })?;
            let first: Vec<usize> = (1..=s).collect();
            lambda_h_vector(ctx, &runs(&h), degrees, b, &first)?
        }
    };
    let images = lower_orbit(ctx, &top, &basis)?;
    images
        .iter()
        .map(|x| Ok(mat_elem(ctx, x, x)?.scale_q(&x.norm_sq().recip())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bottoms::binomial;
    use crate::trigring::{qf, GaussRational as G};
    use proptest::prelude::*;

    fn ctx(n: usize, m: usize) -> RankPair {
        RankPair::new(n, m).unwrap()
    }

    fn lbl(v: &[u8]) -> WedgeLabel {
        WedgeLabel::new(v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(WedgeLabel::from_wedge(&[2, 1]), Some((-1, lbl(&[1, 2]))));
        assert_eq!(WedgeLabel::from_wedge(&[3, 1, 2]), Some((1, lbl(&[1, 2, 3]))));
        assert_eq!(WedgeLabel::from_wedge(&[1, 1]), None);
    }

    #[test]
    fn small_v_hk() {
        let c = ctx(1, 1);
        let v = v_hk(&c, 1, &[], 1).unwrap();
        let mut expect = TensorVector::zero(vec![1, 1]);
        expect.add_term(vec![lbl(&[1]), lbl(&[2])], G::from_int(-1));
        assert_eq!(v, expect);
        let v0 = v_hk(&ctx(2, 3), 0, &[1], 0).unwrap();
        assert_eq!(v0.len(), 1);
        assert_eq!(v0.terms().next().unwrap().0, &vec![lbl(&[1]), lbl(&[1, 2, 3, 4, 5])]);
    }

    #[test]
    fn corollary_gram() {
        for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
            let c = ctx(n, m);
            for s in 0..=n {
                for u in 0..=n - s {
                    let hs = subsets(n, s);
                    for h in &hs {
                        for hp in &hs {
                            for k in 0..=u {
                                for kp in 0..=u {
                                    let a = v_hk(&c, u, h, k).unwrap();
                                    let b = v_hk(&c, u, hp, kp).unwrap();
                                    let expect = if h == hp && k == kp {
                                        (binomial(n - s, k) * binomial(m, u - k)) as i64
                                    } else {
                                        0
                                    };
                                    assert_eq!(a.inner(&b).unwrap(), G::from_int(expect));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn v_hk_are_intertwiners() {
        for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            let c = ctx(n, m);
            for s in 0..=n {
                let mu = MuSpec::wedge(c, s, 0).unwrap();
                let basis = MTypeBasis::for_mu(&mu);
                for u in 0..=n - s {
                    for k in 0..=u {
                        let images: Vec<_> = (0..basis.dim()).map(|i| v_hk(&c, u, &basis.subset(i), k).unwrap()).collect();
                        intertwiner_check(&c, &basis, &images).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn g_intertwiner_splits_as_in_remark() {
        // rho^0(e_J) = sum_k (-1)^k e_J ^ e_k (x) e_{all \ k}
        let c = ctx(2, 3);
        let big_n = c.big_n();
        let rho0 = |j: &[u8]| {
            let mut out = TensorVector::zero(vec![j.len() + 1, big_n - 1]);
            for k in 1..=big_n as u8 {
                let mut first = j.to_vec();
                first.push(k);
                if let Some((sign, l1)) = WedgeLabel::from_wedge(&first) {
                    let l2 = lbl(&(1..=big_n as u8).filter(|x| *x != k).collect::<Vec<_>>());
                    out.add_term(vec![l1, l2], G::from_int(sign * parity(k as i64)));
                }
            }
            out
        };
        for s in 0..2 {
            for h in subsets(2, s) {
                let hh: Vec<u8> = h.iter().map(|x| *x as u8).collect();
                let sum = v_hk(&c, 1, &h, 1).unwrap().add(&v_hk(&c, 1, &h, 0).unwrap()).unwrap();
                assert_eq!(rho0(&hh), sum);
                let (c1, c0) = (G::from_int(c.m as i64), G::from_int(-((2 - s) as i64)));
                let v1 = v_hk(&c, 1, &h, 1).unwrap().scale(&c1).add(&v_hk(&c, 1, &h, 0).unwrap().scale(&c0)).unwrap();
                assert_eq!(sum.inner(&v1).unwrap(), G::zero());
                for j in k_subsets(&range(1, big_n), s) {
                    assert_eq!(rho0(&j).inner(&v1).unwrap(), G::zero());
                }
            }
        }
    }

    #[test]
    fn k_fixed_examples() {
        let c = ctx(2, 3);
        let v0 = k_fixed_vector(&c, 0).unwrap();
        assert_eq!(v0.len(), 1);
        for n in 1..=3 {
            let c = ctx(n, n + 1);
            for i in 0..=n {
                let v = k_fixed_vector(&c, i).unwrap();
                assert_eq!(v.norm_sq(), Q::from_integer((binomial(n, i) as i64).into()));
                assert_eq!(mat_elem(&c, &v, &v).unwrap(), psi(n, i));
            }
        }
    }

    #[test]
    fn highest_vector_examples() {
        let c = ctx(1, 2);
        let w = w_vector(&c, 1).unwrap();
        assert_eq!(w.terms().next().unwrap().0, &vec![lbl(&[1]), lbl(&[1, 2, 3])]);
        let c = ctx(3, 4);
        let v = rank_one_highest_vector(&c, &[0, 0, 0], 0, 2).unwrap();
        assert_eq!(v, e_n_vector(&c).tensor_power(2));
        assert_eq!(rank_one_highest_vector(&c, &[1, 0, 0], 2, 0), Err(Error::CompositionMismatch));
        for comp in compositions(2, 3) {
            let v = rank_one_highest_vector(&c, &comp, 2, 1).unwrap();
            for j in (1..c.big_n()).filter(|&j| j != 3) {
                assert!(v.apply_e(j as u8, j as u8 + 1).is_zero());
            }
        }
    }

    #[test]
    fn lowering_in_two_variables() {
        let c = ctx(2, 3);
        let mu = MuSpec::rank_one(c, 1, 0);
        let basis = MTypeBasis::for_mu(&mu);
        let v = rank_one_highest_vector(&c, &[1, 0], 1, 0).unwrap();
        let imgs = lower_orbit(&c, &v, &basis).unwrap();
        assert_eq!(imgs.len(), 2);
        // E_11 and E_22 weights of the lowered vector match x_2
        let e22 = imgs[1].apply_e(2, 2);
        let e11 = imgs[1].apply_e(1, 1);
        assert!(e22.sub(&imgs[1].scale(&G::from_int(2))).unwrap().is_zero());
        assert!(e11.sub(&imgs[1]).unwrap().is_zero());
        intertwiner_check(&c, &basis, &imgs).unwrap();
    }

    #[test]
    fn rank_one_orbits_intertwine() {
        for (n, m) in [(2, 2), (2, 3), (3, 3)] {
            let c = ctx(n, m);
            for a in 1..3 {
                let mu = MuSpec::rank_one(c, a, 1);
                let basis = MTypeBasis::for_mu(&mu);
                for comp in compositions(a, n) {
                    let v = rank_one_highest_vector(&c, &comp, a, 1).unwrap();
                    let imgs = lower_orbit(&c, &v, &basis).unwrap();
                    intertwiner_check(&c, &basis, &imgs).unwrap();
                }
            }
        }
    }

    #[test]
    fn lower_orbit_rejects_non_highest() {
        let c = ctx(2, 2);
        let mu = MuSpec::wedge(c, 1, 0).unwrap();
        let basis = MTypeBasis::for_mu(&mu);
        let v = ladder_vector(&c, &[2], 0, 0).unwrap();
        assert!(matches!(lower_orbit(&c, &v, &basis), Err(Error::OrbitMismatch(_))));
    }

    #[test]
    fn wedge_orbit_matches_direct_ladder() {
        for (n, m) in [(2, 3), (3, 3)] {
            let c = ctx(n, m);
            for s in 0..=n {
                let mu = MuSpec::wedge(c, s, 1).unwrap();
                let basis = MTypeBasis::for_mu(&mu);
                for i in 0..=n - s {
                    let first: Vec<usize> = (1..=s).collect();
                    let v = ladder_vector(&c, &first, i, 1).unwrap();
                    let imgs = lower_orbit(&c, &v, &basis).unwrap();
                    for (k, img) in imgs.iter().enumerate() {
                        assert_eq!(img, &ladder_vector(&c, &basis.subset(k), i, 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn mat_elem_identity_and_mismatch() {
        let c = ctx(2, 3);
        let v = lambda_h_vector(&c, &[(0, 1), (2, 3)], &[0, 0], 0, &[1, 2]).unwrap();
        let me = mat_elem(&c, &v, &v).unwrap();
        assert_eq!(me.eval_at_zero(), G::from_q(v.norm_sq()));
        let w = e_n_vector(&c);
        assert_eq!(mat_elem(&c, &v, &w), Err(Error::FactorMismatch));
    }

    #[test]
    fn mat_elem_single_vector() {
        // <a_t e_1, e_1> = cos t_1 and <a_t e_1, e_{n+m}> = i sin t_1
        let c = ctx(1, 2);
        let e1 = TensorVector::basis(lbl(&[1]));
        let e3 = TensorVector::basis(lbl(&[3]));
        assert_eq!(mat_elem(&c, &e1, &e1).unwrap(), TrigPoly::cos(1, 0));
        assert_eq!(mat_elem(&c, &e1, &e3).unwrap(), TrigPoly::sin(1, 0).scale(&G::i()));
        let e2 = TensorVector::basis(lbl(&[2]));
        assert_eq!(mat_elem(&c, &e2, &e2).unwrap(), TrigPoly::one(1));
        let e13 = TensorVector::basis(lbl(&[1, 3]));
        assert_eq!(mat_elem(&c, &e13, &e13).unwrap(), TrigPoly::one(1));
    }

    #[test]
    fn ladder_entries_match_closed_form() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
            let c = ctx(n, m);
            for s in 0..=n {
                for b in 0..2 {
                    let mu = MuSpec::wedge(c, s, b).unwrap();
                    for h in subsets(n, s) {
                        for i in 0..=n - s {
                            let closed = q_ladder_entry(&mu, i, &h).unwrap();
                            assert_eq!(engine_ladder_entry(&mu, i, &h).unwrap(), closed);
                            assert_eq!(closed.eval_at_zero(), G::from_int(binomial(n - s, i) as i64));
                        }
                    }
                    let off = ladder_vector(&c, &subsets(n, s)[0], 0, b).unwrap();
                    for h in subsets(n, s).into_iter().skip(1) {
                        let other = ladder_vector(&c, &h, 0, b).unwrap();
                        assert!(mat_elem(&c, &off, &other).unwrap().is_zero());
                    }
                }
            }
        }
        let mu = MuSpec::wedge(ctx(3, 3), 0, 0).unwrap();
        for i in 0..=3 {
            assert_eq!(q_ladder_entry(&mu, i, &[]).unwrap(), psi(3, i));
        }
    }

    #[test]
    fn lambda_h_entry_matches_engine() {
        for (n, m) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
            let c = ctx(n, m);
            for s in 0..=n {
                for b in 0..2 {
                    let mu = MuSpec::wedge(c, s, b).unwrap();
                    for h in subsets(n, s) {
                        let degs = vec![0u32; n];
                        let rd = runs(&h);
                        let f = q_lambda_h_entry(&mu, &rd, &degs).unwrap();
                        let first: Vec<usize> = (1..=s).collect();
                        let v = lambda_h_vector(&c, &rd, &degs, b, &first).unwrap();
                        let e = mat_elem(&c, &v, &v).unwrap();
                        let e0 = e.eval_at_zero();
                        assert!(!e0.is_zero());
                        let normalized = e.scale(&(&f.eval_at_zero() / &e0));
                        assert_eq!(normalized, f, "n={n} m={m} H={h:?} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_h_entry_special_cases() {
        let c = ctx(3, 4);
        // single run starting at 1: s! times the ladder entry
        let mu = MuSpec::wedge(c, 2, 1).unwrap();
        let f = q_lambda_h_entry(&mu, &[(1, 3)], &[0, 0, 0]).unwrap();
        let l = q_ladder_entry(&mu, 1, &[1, 2]).unwrap();
        assert_eq!(f, l.scale_q(&q(2)));
        let mu0 = MuSpec::wedge(c, 0, 2).unwrap();
        let f0 = q_lambda_h_entry(&mu0, &[], &[1, 0, 1]).unwrap();
        assert_eq!(f0, &(&cos_h_det(3, &[], 2) * &psi(3, 1)) * &psi(3, 3));
        let f_mu = q_lambda_h_entry(&mu, &[(0, 2)], &[0, 0, 0]).unwrap();
        assert_eq!(f_mu, cos_h_det(3, &[1, 2], 1).scale_q(&q(2)));
    }

    #[test]
    fn lambda_h_vectors_intertwine() {
        let c = ctx(3, 3);
        for s in 1..=3 {
            let mu = MuSpec::wedge(c, s, 1).unwrap();
            let basis = MTypeBasis::for_mu(&mu);
            for h in subsets(3, s) {
                let rd = runs(&h);
                let images: Vec<_> =
                    (0..basis.dim()).map(|k| lambda_h_vector(&c, &rd, &[1, 0, 0], 1, &basis.subset(k)).unwrap()).collect();
                intertwiner_check(&c, &basis, &images).unwrap();
                let orbit = lower_orbit(&c, &images[0], &basis).unwrap();
                assert_eq!(orbit, images);
            }
        }
    }

    #[test]
    fn psi_identities() {
        let n = 3;
        assert_eq!(psi(2, 1), &TrigPoly::from_cos_monomial(&[2, 0]) + &TrigPoly::from_cos_monomial(&[0, 2]));
        for h in [vec![], vec![1], vec![2, 3]] {
            for j in (1..=n).filter(|j| !h.contains(j)) {
                let mut hj = h.clone();
                hj.push(j);
                hj.sort();
                for i in 1..=n - hj.len() {
                    let lhs = &psi_elem(n, i, &hj).unwrap()
                        + &(&TrigPoly::from_cos_monomial(&unit(n, j)) * &psi_elem(n, i - 1, &hj).unwrap());
                    assert_eq!(lhs, psi_elem(n, i, &h).unwrap());
                }
            }
            for i in 1..=n - h.len() {
                let mut sum = TrigPoly::zero(n);
                for j in (1..=n).filter(|j| !h.contains(j)) {
                    let mut hj = h.clone();
                    hj.push(j);
                    hj.sort();
                    sum += &(&TrigPoly::from_cos_monomial(&unit(n, j)) * &psi_elem(n, i - 1, &hj).unwrap());
                }
                assert_eq!(sum, psi_elem(n, i, &h).unwrap().scale_q(&q(i as i64)));
            }
        }
        assert!(psi_elem(2, 2, &[1]).is_err());
    }

    fn unit(n: usize, j: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        e[j - 1] = 2;
        e
    }

    #[test]
    fn model_actions() {
        let c = ctx(3, 3);
        let mu = MuSpec::wedge(c, 2, 1).unwrap();
        let basis = MTypeBasis::for_mu(&mu);
        // E_12 on e_2 ^ e_3 gives e_1 ^ e_3
        let k = basis.index_of(&[0, 1, 1]).unwrap();
        let l = basis.index_of(&[1, 0, 1]).unwrap();
        assert_eq!(basis.action(1, 2)[l][k], q(1));
        let mut tr = q_zeros(3, 3);
        for i in 1..=3 {
            let a = basis.action(i, i);
            for r in 0..3 {
                tr[r][r] += &a[r][r];
            }
        }
        for r in 0..3 {
            assert_eq!(tr[r][r], q(2 + 3));
        }
        let sym = MTypeBasis::for_mu(&MuSpec::rank_one(c, 2, 0));
        let k = sym.index_of(&[2, 0, 0]).unwrap();
        let l = sym.index_of(&[1, 1, 0]).unwrap();
        assert_eq!(sym.action(2, 1)[l][k], q(2));
        assert_eq!(qf(1, 2) + qf(1, 2), q(1));
    }

    proptest! {
        #[test]
        fn mat_elem_at_zero_is_norm(n in 1usize..4, extra in 0usize..2, s_seed in 0usize..4, i_seed in 0usize..4, b in 0u32..2) {
            let c = ctx(n, n + extra);
            let s = s_seed % (n + 1);
            let i = i_seed % (n - s + 1);
            let h: Vec<usize> = (1..=s).collect();
            let v = ladder_vector(&c, &h, i, b).unwrap();
            let me = mat_elem(&c, &v, &v).unwrap();
            prop_assert_eq!(me.eval_at_zero(), G::from_q(v.norm_sq()));
            prop_assert!(me.is_real());
        }
    }
}
