//! Prime-field arithmetic and evaluation points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Primes just above `2^31`; products of two residues fit in a `u64`.
pub const DEFAULT_PRIMES: [u64; 3] = [2_147_483_659, 2_147_483_693, 2_147_483_713];

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Arithmetic modulo a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "modulus must fit in 32 bits");
        Fp { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }

    /// Reduces a rational; `None` when `p` divides the denominator.
    pub fn from_rational(self, v: &BigRational) -> Option<u64> {
        let den = self.from_bigint(v.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(v.numer()), self.inv(den)))
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn random<R: Rng>(self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng>(self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Field operations shared by the Gröbner kernel and sparse elimination.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// A residue carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    v: u64,
    fp: Fp,
}

impl Zp {
    pub fn new(v: u64, fp: Fp) -> Self {
        Zp { v: v % fp.modulus(), fp }
    }

    pub fn value(self) -> u64 {
        self.v
    }
}

impl Coeff for Zp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add(&self, o: &Self) -> Self {
        Zp { v: self.fp.add(self.v, o.v), fp: self.fp }
    }
    fn sub(&self, o: &Self) -> Self {
        Zp { v: self.fp.sub(self.v, o.v), fp: self.fp }
    }
    fn mul(&self, o: &Self) -> Self {
        Zp { v: self.fp.mul(self.v, o.v), fp: self.fp }
    }
    fn neg(&self) -> Self {
        Zp { v: self.fp.neg(self.v), fp: self.fp }
    }
    fn inv(&self) -> Self {
        Zp { v: self.fp.inv(self.v), fp: self.fp }
    }
}

/// A point of `𝔸ⁿ` over `ℚ` or over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum FieldPoint {
    Rational {
        #[serde(with = "rational_strings")]
        coords: Vec<BigRational>,
    },
    Modular {
        p: u64,
        coords: Vec<u64>,
    },
}

impl FieldPoint {
    pub fn rational_from_ints(coords: &[i64]) -> Self {
        FieldPoint::Rational {
            coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    pub fn modular(p: u64, coords: Vec<u64>) -> Self {
        let fp = Fp::new(p);
        FieldPoint::Modular {
            p,
            coords: coords.into_iter().map(|c| c % fp.modulus()).collect(),
        }
    }

    pub fn modular_from_ints(p: u64, coords: &[i64]) -> Self {
        let fp = Fp::new(p);
        FieldPoint::Modular {
            p,
            coords: coords.iter().map(|&c| fp.from_i64(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FieldPoint::Rational { coords } => coords.len(),
            FieldPoint::Modular { coords, .. } => coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Characteristic: 0 for `ℚ`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldPoint::Rational { .. } => 0,
            FieldPoint::Modular { p, .. } => *p,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldPoint::Rational { coords } => coords.iter().all(Zero::is_zero),
            FieldPoint::Modular { coords, .. } => coords.iter().all(|&c| c == 0),
        }
    }
}

impl std::fmt::Display for FieldPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldPoint::Rational { coords } => {
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "({}) over Q", parts.join(", "))
            }
            FieldPoint::Modular { p, coords } => {
                let fp = Fp::new(*p);
                let parts: Vec<String> = coords.iter().map(|&c| fp.lift(c).to_string()).collect();
                write!(f, "({}) over F_{p}", parts.join(", "))
            }
        }
    }
}

mod rational_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| t.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect()
    }
}
