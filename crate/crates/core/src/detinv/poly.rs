use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::echelon::{inv_mod, mul_mod, LARGE_PRIME};

/// Exponent vector, ordered graded-lexicographically with `x₀ > x₁ > …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `nvars` variables, in decreasing term order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Mono(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Mono(Vec::new()));
        }
        return out;
    }
    rec(nvars, 0, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// `C(n + k − 1, k)`: number of monomials of degree `k` in `n` variables.
pub fn monomial_count(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    let mut c: u128 = 1;
    for i in 0..d as u128 {
        c = c * (nvars as u128 + i) / (i + 1);
    }
    usize::try_from(c).unwrap_or(usize::MAX)
}

/// Sparse polynomial over ℚ in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(Mono::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Mono::var(nvars, i), BigRational::one())
    }

    pub fn term(m: Mono, c: BigRational) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, BigRational)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::mismatch("polynomial term", nvars, m.0.len()));
            }
            p.add_term(m, &c);
        }
        Ok(p)
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

    /// Terms in decreasing term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    fn check_same(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            out.add_term(n, &(c * BigRational::from_integer(BigInt::from(e))));
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Value modulo the large prime at a point given by residues.
    pub fn eval_mod(&self, point: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = rational_residue(c);
            for (&x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = mul_mod(t, x);
                }
            }
            acc = (acc + t) % LARGE_PRIME;
        }
        acc
    }

    /// Replaces `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Poly::zero(target);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{e}", name(i)) })
                .collect();
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&format!("{a}*"));
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// `c mod p` for a rational with denominator prime to `p`.
pub fn rational_residue(c: &BigRational) -> u64 {
    let p = BigInt::from(LARGE_PRIME);
    let to_u64 = |x: &BigInt| -> u64 {
        let r = ((x % &p) + &p) % &p;
        u64::try_from(&r).expect("residue fits")
    };
    let num = to_u64(c.numer());
    let den = to_u64(c.denom());
    mul_mod(num, inv_mod(den))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("x{i}")))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("x{i}")))
    }
}

/// JSON form: `{"nvars": n, "terms": [[[e₀, …], "p/q"], …]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            nvars: p.nvars,
            terms: p.terms().map(|(m, c)| (m.0.clone(), c.to_string())).collect(),
        }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Poly> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for (e, c) in j.terms {
            let c: BigRational = c
                .parse()
                .map_err(|_| Error::BadInput(format!("coefficient `{c}` is not a rational number")))?;
            terms.push((Mono(e), c));
        }
        Poly::from_terms(j.nvars, terms)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Poly::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::echelon::rat;

    #[test]
    fn monomial_enumeration() {
        let ms = monomials(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms.len(), monomial_count(3, 2));
        assert_eq!(ms[0], Mono(vec![2, 0, 0]));
        assert_eq!(ms[5], Mono(vec![0, 0, 2]));
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert_eq!(monomials(0, 0).len(), 1);
        assert_eq!(monomial_count(4, 3), 20);
        assert_eq!(monomial_count(9, 4), 495);
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&Mono(vec![1, 1])), rat(2));
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(sq.derivative(0), x.scale(&rat(2)).add(&y.scale(&rat(2))));
        assert_eq!(sq.eval(&[rat(1), rat(2)]), rat(9));
        assert_eq!(sq.eval_mod(&[1, 2]), 9);
        assert!(sq.is_homogeneous());
        assert!(!sq.add(&Poly::one(2)).is_homogeneous());
        let sub = sq.substitute(&[y.clone(), x.clone()]);
        assert_eq!(sub, sq);
        assert_eq!(s.pow(3).eval(&[rat(1), rat(1)]), rat(8));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = Poly::var(1, 0);
        let p = x.add(&x.neg());
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn display_and_json() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).sub(&y.scale(&rat(3)));
        assert_eq!(p.to_string(), "x0^2 - 3*x1");
        let text = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Poly>(r#"{"nvars":2,"terms":[[[1],"1"]]}"#).is_err());
        let half: Poly = serde_json::from_str(r#"{"nvars":1,"terms":[[[1],"1/2"]]}"#).unwrap();
        assert_eq!(half.eval_mod(&[2]), 1);
    }
}
