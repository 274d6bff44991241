//! Sparse multivariate polynomials over `ℚ` in the parameters `a_1, ..., a_n`.
//!
//! Terms are kept sorted by degree-reverse-lexicographic order, largest first,
//! with `a_1 > a_2 > ... > a_n`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Fp;

/// Parameters plus one auxiliary variable for the saturation trick.
pub const MAX_POLY_VARS: usize = 18;

/// An exponent vector with cached total degree, ordered by degrevlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exps {
    deg: u32,
    e: [u16; MAX_POLY_VARS],
}

impl Exps {
    pub const ONE: Exps = Exps { deg: 0, e: [0; MAX_POLY_VARS] };

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_POLY_VARS];
        e[i] = 1;
        Exps { deg: 1, e }
    }

    pub fn from_slice(v: &[u16]) -> Self {
        assert!(v.len() <= MAX_POLY_VARS);
        let mut e = [0; MAX_POLY_VARS];
        e[..v.len()].copy_from_slice(v);
        Exps { deg: v.iter().map(|&x| x as u32).sum(), e }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn get(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn as_slice(&self) -> &[u16; MAX_POLY_VARS] {
        &self.e
    }

    pub fn mul(&self, o: &Exps) -> Exps {
        let mut e = [0; MAX_POLY_VARS];
        for k in 0..MAX_POLY_VARS {
            e[k] = self.e[k] + o.e[k];
        }
        Exps { deg: self.deg + o.deg, e }
    }

    pub fn divides(&self, o: &Exps) -> bool {
        self.deg <= o.deg && (0..MAX_POLY_VARS).all(|k| self.e[k] <= o.e[k])
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, o: &Exps) -> Exps {
        let mut e = [0; MAX_POLY_VARS];
        for k in 0..MAX_POLY_VARS {
            e[k] = o.e[k] - self.e[k];
        }
        Exps { deg: o.deg - self.deg, e }
    }

    pub fn lcm(&self, o: &Exps) -> Exps {
        let mut e = [0; MAX_POLY_VARS];
        let mut deg = 0;
        for k in 0..MAX_POLY_VARS {
            e[k] = self.e[k].max(o.e[k]);
            deg += e[k] as u32;
        }
        Exps { deg, e }
    }

    pub fn is_coprime(&self, o: &Exps) -> bool {
        (0..MAX_POLY_VARS).all(|k| self.e[k] == 0 || o.e[k] == 0)
    }

    /// Bitmask of the variables with positive exponent.
    pub fn support(&self) -> u32 {
        (0..MAX_POLY_VARS).fold(0, |m, k| if self.e[k] > 0 { m | (1 << k) } else { m })
    }
}

impl Ord for Exps {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for k in (0..MAX_POLY_VARS).rev() {
            match self.e[k].cmp(&o.e[k]) {
                Ordering::Equal => continue,
                // Smaller exponent in the last differing variable wins.
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Exps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_POLY_VARS).rev().find(|&k| self.e[k] > 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

/// A polynomial with rational coefficients; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    terms: Vec<(Exps, BigRational)>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { terms: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            RatPoly { terms: vec![(Exps::ONE, c)] }
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The parameter `a_{i+1}` (0-based index `i`).
    pub fn var(i: usize) -> Self {
        RatPoly { terms: vec![(Exps::var(i), rat(1))] }
    }

    pub fn monomial(e: Exps, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            RatPoly { terms: vec![(e, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates and sorting.
    pub fn from_terms<I: IntoIterator<Item = (Exps, BigRational)>>(it: I) -> Self {
        let mut v: Vec<(Exps, BigRational)> = it.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exps, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        RatPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exps, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.deg == 0)
    }

    /// The constant term's value when the polynomial is a (possibly zero) constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(e, c)] if e.deg == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Exps, BigRational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.deg).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    /// Number of variables actually used (one past the highest index).
    pub fn used_vars(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| (0..MAX_POLY_VARS).rev().find(|&k| e.e[k] > 0).map_or(0, |k| k + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |m, (e, _)| m | e.support())
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RatPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Exps, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RatPoly {
            terms: self.terms.iter().map(|(e, c)| (e.mul(m), c * k)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match self.terms[i].0.cmp(&o.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &o.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        RatPoly { terms: out }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `self - k·m·o`, the core reduction step.
    pub fn sub_scaled(&self, k: &BigRational, m: &Exps, o: &Self) -> Self {
        self.add(&o.mul_term(m, &-k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let mut acc = RatPoly::zero();
        for (e, c) in &small.terms {
            acc = acc.add(&big.mul_term(e, c));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = RatPoly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Integer content-free form with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den_lcm = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if nums[0].is_negative() { -BigInt::one() } else { BigInt::one() };
        let k = sign * g;
        RatPoly {
            terms: self
                .terms
                .iter()
                .zip(nums)
                .map(|((e, _), x)| (*e, BigRational::from_integer(x / &k)))
                .collect(),
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Evaluates modulo `p`; `None` if a coefficient's denominator vanishes mod `p`.
    pub fn eval_mod(&self, fp: Fp, point: &[u64]) -> Option<u64> {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = fp.from_rational(c)?;
            for (k, &x) in point.iter().enumerate().take(MAX_POLY_VARS) {
                let ex = e.e[k];
                if ex > 0 {
                    t = fp.mul(t, fp.pow(x, ex as u64));
                }
            }
            acc = fp.add(acc, t);
        }
        Some(acc)
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, x) in point.iter().enumerate().take(MAX_POLY_VARS) {
                let ex = e.e[k];
                if ex > 0 {
                    t *= num_traits::pow(x.clone(), ex as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Renames variable `i` to `map[i]`.
    pub fn rename_vars(&self, map: &[usize]) -> Self {
        RatPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut ne = [0u16; MAX_POLY_VARS];
            for (k, &x) in e.e.iter().enumerate() {
                if x > 0 {
                    ne[map[k]] += x;
                }
            }
            (Exps { deg: e.deg, e: ne }, c.clone())
        }))
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        RatPoly::from_terms(self.terms.iter().filter(|(e, _)| e.e[i] > 0).map(|(e, c)| {
            let mut ne = *e;
            ne.e[i] -= 1;
            ne.deg -= 1;
            (ne, c * rat(e.e[i] as i64))
        }))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (v, &x) in e.e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("a{}", v + 1)),
                    _ => factors.push(format!("a{}^{}", v + 1, x)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// Parses `poly := ["-"] term (("+"|"-") term)*`,
/// `term := factor ("*" factor)*`, `factor := INT ["/" INT] | "a" INT ["^" INT]`.
impl FromStr for RatPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let byte_at = |p: usize| toks.get(p).map_or(s.len(), |&(b, _)| b);
        let peek = |p: usize| toks.get(p).map(|&(_, c)| c);
        let read_int = |pos: &mut usize| -> Result<BigInt> {
            let start = *pos;
            while peek(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            if start == *pos {
                return Err(Error::parse(byte_at(start), "expected an integer"));
            }
            let digits: String = toks[start..*pos].iter().map(|&(_, c)| c).collect();
            digits.parse::<BigInt>().map_err(|e| Error::parse(byte_at(start), e.to_string()))
        };
        let mut pos = 0usize;
        let mut terms = Vec::new();
        if toks.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        loop {
            let mut sign = rat(1);
            match peek(pos) {
                Some('-') => {
                    sign = rat(-1);
                    pos += 1;
                }
                Some('+') if !terms.is_empty() => pos += 1,
                _ => {}
            }
            let mut coef = sign;
            let mut exps = [0u16; MAX_POLY_VARS];
            loop {
                match peek(pos) {
                    Some('a') | Some('A') => {
                        pos += 1;
                        let v = read_int(&mut pos)?;
                        let v: usize = v.try_into().map_err(|_| Error::parse(byte_at(pos), "bad index"))?;
                        if v == 0 || v > MAX_POLY_VARS {
                            return Err(Error::parse(byte_at(pos), format!("parameter index {v} out of range")));
                        }
                        let mut x = 1u16;
                        if peek(pos) == Some('^') {
                            pos += 1;
                            let k = read_int(&mut pos)?;
                            x = k.try_into().map_err(|_| Error::parse(byte_at(pos), "exponent too large"))?;
                        }
                        exps[v - 1] += x;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let num = read_int(&mut pos)?;
                        let mut val = BigRational::from_integer(num);
                        if peek(pos) == Some('/') {
                            pos += 1;
                            let den = read_int(&mut pos)?;
                            if den.is_zero() {
                                return Err(Error::parse(byte_at(pos), "zero denominator"));
                            }
                            val /= BigRational::from_integer(den);
                        }
                        coef *= val;
                    }
                    _ => return Err(Error::parse(byte_at(pos), "expected a factor")),
                }
                if peek(pos) == Some('*') {
                    pos += 1;
                } else {
                    break;
                }
            }
            terms.push((Exps::from_slice(&exps), coef));
            match peek(pos) {
                None => break,
                Some('+') | Some('-') => {}
                Some(c) => return Err(Error::parse(byte_at(pos), format!("unexpected '{c}'"))),
            }
        }
        Ok(RatPoly::from_terms(terms))
    }
}

/// Exact division, gcds and squarefree parts.
impl RatPoly {
    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &RatPoly) -> Option<RatPoly> {
        let (dl, dc) = d.leading()?.clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.leading().cloned() {
            if !dl.divides(&e) {
                return None;
            }
            let m = dl.quotient_of(&e);
            let k = c / &dc;
            rem = rem.sub_scaled(&k, &m, d);
            quot.push((m, k));
        }
        Some(RatPoly::from_terms(quot))
    }

    fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e.e[v]).max().unwrap_or(0)
    }

    /// Coefficients with respect to `a_{v+1}`, keyed by power.
    fn coefficients_in(&self, v: usize) -> std::collections::BTreeMap<u16, RatPoly> {
        let mut out: std::collections::BTreeMap<u16, Vec<(Exps, BigRational)>> = Default::default();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest.e[v] = 0;
            rest.deg -= u32::from(e.e[v]);
            out.entry(e.e[v]).or_default().push((rest, c.clone()));
        }
        out.into_iter().map(|(k, t)| (k, RatPoly::from_terms(t))).collect()
    }

    fn content_in(&self, v: usize) -> RatPoly {
        self.coefficients_in(v).values().fold(RatPoly::zero(), |g, c| g.gcd(c))
    }

    fn lead_coeff_in(&self, v: usize) -> RatPoly {
        self.coefficients_in(v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(RatPoly::zero)
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `a_{v+1}`.
    fn pseudo_rem(&self, b: &RatPoly, v: usize) -> RatPoly {
        let db = b.degree_in(v);
        let lb = b.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lead_coeff_in(v);
            let mut shift = Exps::ONE;
            shift.e[v] = dr - db;
            shift.deg = u32::from(dr - db);
            r = r.mul(&lb).sub(&lr.mul(b).mul_term(&shift, &rat(1)));
        }
        r
    }

    /// Greatest common divisor, normalized by [`RatPoly::primitive`];
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || o.is_constant() {
            return RatPoly::one();
        }
        let v = self.used_vars().max(o.used_vars()) - 1;
        let (da, db) = (self.degree_in(v), o.degree_in(v));
        if da == 0 {
            return self.gcd(&o.content_in(v));
        }
        if db == 0 {
            return o.gcd(&self.content_in(v));
        }
        let (ca, cb) = (self.content_in(v), o.content_in(v));
        let c = ca.gcd(&cb);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = o.div_exact(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.degree_in(v) > 0 {
            let r = a.pseudo_rem(&b, v);
            a = b;
            b = if r.is_zero() { r } else { r.div_exact(&r.content_in(v)).expect("content divides").primitive() };
        }
        let g = if b.is_zero() { a.div_exact(&a.content_in(v)).expect("content divides") } else { RatPoly::one() };
        c.mul(&g).primitive()
    }

    /// The product of the distinct irreducible factors (up to a constant).
    pub fn squarefree_part(&self) -> RatPoly {
        if self.is_constant() {
            return self.primitive();
        }
        let mut g = RatPoly::zero();
        for v in 0..self.used_vars() {
            let d = self.derivative(v);
            if !d.is_zero() {
                g = if g.is_zero() { self.gcd(&d) } else { g.gcd(&d) };
            }
        }
        // In characteristic zero gcd(f, ∂f) collects exactly the repeated factors.
        let g = self.gcd(&g);
        self.div_exact(&g).expect("gcd divides").primitive()
    }
}
