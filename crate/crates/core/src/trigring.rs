//! Exact trigonometric polynomials in t_1..t_n.
//!
//! A [`TrigPoly`] is a Laurent polynomial in z_j = e^{i t_j} with Gaussian
//! rational coefficients. cos t_j = (z_j + 1/z_j)/2 and i sin t_j = (z_j - 1/z_j)/2,
//! so every real trigonometric polynomial with rational coefficients lives here
//! and exact division is ordinary Laurent division.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_from_str(s: &str) -> Option<Q> {
    s.parse::<Q>().ok()
}

pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // Fall back to a scaled division for huge operands.
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 60;
        let sn: BigInt = x.numer() >> shift.max(0) as usize;
        let sd: BigInt = x.denom() >> shift.max(0) as usize;
        sn.to_f64().unwrap_or(0.0) / sd.to_f64().unwrap_or(1.0)
    }
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRational {
    pub re: Q,
    pub im: Q,
}

impl GaussRational {
    pub fn new(re: Q, im: Q) -> Self {
        GaussRational { re, im }
    }
    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }
    pub fn one() -> Self {
        Self::new(Q::one(), Q::zero())
    }
    pub fn i() -> Self {
        Self::new(Q::zero(), Q::one())
    }
    pub fn from_int(n: i64) -> Self {
        Self::new(q(n), Q::zero())
    }
    pub fn from_q(x: Q) -> Self {
        Self::new(x, Q::zero())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }
    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        let d = self.norm_sq();
        if d.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &d, -(&self.im / &d)))
    }
    pub fn scale(&self, x: &Q) -> Self {
        Self::new(&self.re * x, &self.im * x)
    }
    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => Self::new(Q::zero(), q(-1)),
        }
    }
    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", q_to_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", q_to_string(&self.im))
        } else {
            write!(f, "{}{}{}i", q_to_string(&self.re), if self.im.is_negative() { "" } else { "+" }, q_to_string(&self.im))
        }
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}
impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}
impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRational::from_q(&self.re * &o.re);
        }
        GaussRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}
impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn div(self, o: &GaussRational) -> GaussRational {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}
impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}
impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}
impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, o: GaussRational) -> GaussRational {
        &self + &o
    }
}
impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: GaussRational) -> GaussRational {
        &self - &o
    }
}
impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: GaussRational) -> GaussRational {
        &self * &o
    }
}
impl Div for GaussRational {
    type Output = GaussRational;
    fn div(self, o: GaussRational) -> GaussRational {
        &self / &o
    }
}
impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, o: &GaussRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, o: &GaussRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

pub type Exponent = Vec<i32>;

/// Laurent polynomial in z_1..z_n over Q(i); z_j = e^{i t_j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussRational>,
}

fn add_term(map: &mut BTreeMap<Exponent, GaussRational>, e: Exponent, c: &GaussRational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&e);
            }
        }
        None => {
            map.insert(e, c.clone());
        }
    }
}

impl TrigPoly {
    pub fn zero(nvars: usize) -> Self {
        TrigPoly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: GaussRational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }
    pub fn from_q(nvars: usize, c: Q) -> Self {
        Self::constant(nvars, GaussRational::from_q(c))
    }
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRational::one())
    }
    pub fn monomial(nvars: usize, e: Exponent, c: GaussRational) -> Self {
        assert_eq!(e.len(), nvars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TrigPoly { nvars, terms }
    }
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Exponent, GaussRational)>) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            add_term(&mut terms, e, &c);
        }
        TrigPoly { nvars, terms }
    }

    /// cos(v . t) for an integer vector v.
    pub fn cos_linear(v: &[i32]) -> Self {
        let nv: Exponent = v.iter().map(|x| -x).collect();
        let h = GaussRational::from_q(qf(1, 2));
        Self::from_terms(v.len(), [(v.to_vec(), h.clone()), (nv, h)])
    }
    /// sin(v . t) for an integer vector v.
    pub fn sin_linear(v: &[i32]) -> Self {
        let nv: Exponent = v.iter().map(|x| -x).collect();
        // (z^v - z^-v) / (2i) = -i/2 z^v + i/2 z^-v
        Self::from_terms(
            v.len(),
            [
                (v.to_vec(), GaussRational::new(Q::zero(), qf(-1, 2))),
                (nv, GaussRational::new(Q::zero(), qf(1, 2))),
            ],
        )
    }
    pub fn cos(nvars: usize, j: usize) -> Self {
        let mut v = vec![0; nvars];
        v[j] = 1;
        Self::cos_linear(&v)
    }
    pub fn sin(nvars: usize, j: usize) -> Self {
        let mut v = vec![0; nvars];
        v[j] = 1;
        Self::sin_linear(&v)
    }

    /// Product of cos(t_j)^{e_j}.
    pub fn from_cos_monomial(exps: &[u32]) -> Self {
        let n = exps.len();
        let mut p = Self::one(n);
        for (j, &e) in exps.iter().enumerate() {
            if e > 0 {
                p = &p * &Self::cos(n, j).pow(e);
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussRational)> {
        self.terms.iter()
    }
    pub fn coeff(&self, e: &[i32]) -> GaussRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussRational::zero)
    }
    /// Lexicographically largest exponent.
    pub fn leading(&self) -> Option<(&Exponent, &GaussRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        TrigPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }
    pub fn scale_q(&self, c: &Q) -> Self {
        self.scale(&GaussRational::from_q(c.clone()))
    }
    pub fn shift(&self, e: &[i32]) -> Self {
        TrigPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone())).collect(),
        }
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// d/dt_j = i z_j d/dz_j.
    pub fn d_dt(&self, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[j] != 0 {
                let f = GaussRational::new(Q::zero(), q(e[j] as i64));
                terms.insert(e.clone(), c * &f);
            }
        }
        TrigPoly { nvars: self.nvars, terms }
    }

    /// Directional derivative sum_j v_j d/dt_j.
    pub fn d_dir(&self, v: &[i32]) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let s: i64 = e.iter().zip(v).map(|(a, b)| (*a as i64) * (*b as i64)).sum();
            if s != 0 {
                terms.insert(e.clone(), c * &GaussRational::new(Q::zero(), q(s)));
            }
        }
        TrigPoly { nvars: self.nvars, terms }
    }

    /// Complex conjugate for real t: conjugate coefficients, invert z.
    pub fn conj(&self) -> Self {
        TrigPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.conj())).collect(),
        }
    }
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn eval_at_zero(&self) -> GaussRational {
        let mut s = GaussRational::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    pub fn eval_f64(&self, t: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let phase: f64 = e.iter().zip(t).map(|(a, b)| *a as f64 * b).sum();
            let (cr, ci) = c.to_f64();
            let (s, co) = phase.sin_cos();
            re += cr * co - ci * s;
            im += cr * s + ci * co;
        }
        (re, im)
    }

    /// result(t) = self(t_{map[0]}, .., t_{map[n-1]}).
    pub fn permute_vars(&self, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (j, &x) in e.iter().enumerate() {
                ne[map[j]] += x;
            }
            add_term(&mut terms, ne, c);
        }
        TrigPoly { nvars: self.nvars, terms }
    }

    fn exponent_box(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for j in 0..self.nvars {
                lo[j] = lo[j].min(e[j]);
                hi[j] = hi[j].max(e[j]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient num/den in the Laurent ring, or `NonDivisible`.
    pub fn exact_div(&self, den: &TrigPoly) -> Result<TrigPoly> {
        assert_eq!(self.nvars, den.nvars);
        let (dlo, dhi) = den.exponent_box().expect("division by zero TrigPoly");
        let Some((nlo, nhi)) = self.exponent_box() else {
            return Ok(Self::zero(self.nvars));
        };
        let qlo: Vec<i32> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let qhi: Vec<i32> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        if qlo.iter().zip(&qhi).any(|(a, b)| a > b) {
            return Err(Error::NonDivisible);
        }
        let (dle, dlc) = den.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dinv = dlc.inv().unwrap();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = re.iter().zip(&dle).map(|(a, b)| a - b).collect();
            if qe.iter().enumerate().any(|(j, x)| *x < qlo[j] || *x > qhi[j]) {
                return Err(Error::NonDivisible);
            }
            let qc = &rc * &dinv;
            for (de, dc) in &den.terms {
                let e: Vec<i32> = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                add_term(&mut rem, e, &-(&qc * dc));
            }
            quot.insert(qe, qc);
        }
        Ok(TrigPoly { nvars: self.nvars, terms: quot })
    }

    /// Rewrite as a polynomial in cos t_1..cos t_n with rational coefficients.
    pub fn to_cos_poly(&self) -> Result<CosPoly> {
        let n = self.nvars;
        let mut rem = self.clone();
        let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        let mut cache: BTreeMap<Vec<u32>, TrigPoly> = BTreeMap::new();
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().any(|x| *x < 0) || !c.is_real() {
                return Err(Error::NotCosPolynomial);
            }
            let ce: Vec<u32> = e.iter().map(|x| *x as u32).collect();
            // prod (z+1/z)^e has leading coefficient 1; (2cos)^e = that product.
            let basis = cache
                .entry(ce.clone())
                .or_insert_with(|| {
                    let tot: u32 = ce.iter().sum();
                    TrigPoly::from_cos_monomial(&ce).scale_q(&Q::from_integer(BigInt::from(2).pow(tot)))
                })
                .clone();
            rem = &rem - &basis.scale(&c);
            let tot: u32 = ce.iter().sum();
            let coef = &c.re * Q::from_integer(BigInt::from(2).pow(tot));
            out.insert(ce, coef);
        }
        let _ = n;
        Ok(CosPoly { nvars: self.nvars, terms: out.into_iter().filter(|(_, v)| !v.is_zero()).collect() })
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson { exp: e.clone(), re: q_to_string(&c.re), im: q_to_string(&c.im) })
            .collect()
    }

    pub fn from_json(nvars: usize, terms: &[TermJson]) -> Option<Self> {
        let mut out = Self::zero(nvars);
        for t in terms {
            if t.exp.len() != nvars {
                return None;
            }
            let c = GaussRational::new(q_from_str(&t.re)?, q_from_str(&t.im)?);
            add_term(&mut out.terms, t.exp.clone(), &c);
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub re: String,
    pub im: String,
}

impl<'a> Add<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn add(self, o: &TrigPoly) -> TrigPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_term(&mut terms, e.clone(), c);
        }
        TrigPoly { nvars: self.nvars, terms }
    }
}
impl<'a> Sub<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn sub(self, o: &TrigPoly) -> TrigPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_term(&mut terms, e.clone(), &-c);
        }
        TrigPoly { nvars: self.nvars, terms }
    }
}
impl<'a> Mul<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn mul(self, o: &TrigPoly) -> TrigPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_term(&mut terms, e, &(c1 * c2));
            }
        }
        TrigPoly { nvars: self.nvars, terms }
    }
}
impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(&GaussRational::from_int(-1))
    }
}
impl AddAssign<&TrigPoly> for TrigPoly {
    fn add_assign(&mut self, o: &TrigPoly) {
        assert_eq!(self.nvars, o.nvars);
        for (e, c) in &o.terms {
            add_term(&mut self.terms, e.clone(), c);
        }
    }
}
impl SubAssign<&TrigPoly> for TrigPoly {
    fn sub_assign(&mut self, o: &TrigPoly) {
        assert_eq!(self.nvars, o.nvars);
        for (e, c) in &o.terms {
            add_term(&mut self.terms, e.clone(), &-c);
        }
    }
}

/// Polynomial in cos t_1..cos t_n with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl CosPoly {
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut terms: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            *terms.entry(e).or_insert_with(Q::zero) += c;
        }
        terms.retain(|_, v| !v.is_zero());
        CosPoly { nvars, terms }
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn to_trig(&self) -> TrigPoly {
        let mut p = TrigPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            p += &TrigPoly::from_cos_monomial(e).scale_q(c);
        }
        p
    }
    /// Human-readable form such as `3*c1^2 - 1`, with c_j = cos t_j.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(j, x)| if *x == 1 { format!("c{}", j + 1) } else { format!("c{}^{}", j + 1, x) })
                .collect();
            let cs = q_to_string(c);
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else if *c == -Q::one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", cs, mono.join("*"))
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}
