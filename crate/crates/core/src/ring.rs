//! Exact commutative rings selected at run time.
//!
//! A [`Ring`] is a validated [`RingSpec`]; a [`RingElement`] is a value that
//! knows which ring it lives in, so arithmetic needs no context object.
//! Mixing elements of different rings is a programming error and panics.
//!
//! Supported rings are `ℤ`, `ℚ`, `ℤ/n` for `n ≥ 2`, and polynomial rings
//! over `ℤ` or `ℤ/n` in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use smallvec::SmallVec;

use crate::error::{config, usage, Error, Result};

/// Description of a ring, as written on the command line.
///
/// Grammar: `int`, `rat`, `zmod:<n>`, `poly:<base>:<k>` where `<base>` is
/// `int` or `zmod:<n>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    Modular(u64),
    Polynomial { base: Box<RingSpec>, num_vars: usize },
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Integers | RingSpec::Rationals => Ok(()),
            RingSpec::Modular(n) if *n >= 2 => Ok(()),
            RingSpec::Modular(n) => config(format!("modulus must be at least 2, got {n}")),
            RingSpec::Polynomial { base, num_vars } => {
                if *num_vars == 0 || *num_vars > u16::MAX as usize {
                    return config(format!("polynomial ring needs 1..=65535 variables, got {num_vars}"));
                }
                match base.as_ref() {
                    RingSpec::Integers => Ok(()),
                    RingSpec::Modular(_) => base.validate(),
                    other => config(format!("polynomial coefficients must be int or zmod, got {other}")),
                }
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "int"),
            RingSpec::Rationals => write!(f, "rat"),
            RingSpec::Modular(n) => write!(f, "zmod:{n}"),
            RingSpec::Polynomial { base, num_vars } => write!(f, "poly:{base}:{num_vars}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = parse_spec_parts(&parts).ok_or_else(|| {
            Error::Config(format!(
                "cannot parse ring spec `{s}` (expected int, rat, zmod:<n> or poly:<base>:<k>)"
            ))
        })?;
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_spec_parts(parts: &[&str]) -> Option<RingSpec> {
    match parts {
        ["int"] => Some(RingSpec::Integers),
        ["rat"] => Some(RingSpec::Rationals),
        ["zmod", n] => n.parse().ok().map(RingSpec::Modular),
        ["poly", base @ .., k] if !base.is_empty() => {
            let base = parse_spec_parts(base)?;
            Some(RingSpec::Polynomial { base: Box::new(base), num_vars: k.parse().ok()? })
        }
        _ => None,
    }
}

/// A validated ring: the factory for its elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    spec: RingSpec,
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Ring { spec })
    }

    pub fn integers() -> Self {
        Ring { spec: RingSpec::Integers }
    }

    pub fn rationals() -> Self {
        Ring { spec: RingSpec::Rationals }
    }

    pub fn modular(n: u64) -> Result<Self> {
        Ring::new(RingSpec::Modular(n))
    }

    pub fn polynomial(base: &Ring, num_vars: usize) -> Result<Self> {
        Ring::new(RingSpec::Polynomial { base: Box::new(base.spec.clone()), num_vars })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn zero(&self) -> RingElement {
        self.int(0)
    }

    pub fn one(&self) -> RingElement {
        self.int(1)
    }

    /// The image of an integer literal.
    pub fn int(&self, k: i64) -> RingElement {
        self.from_bigint(&BigInt::from(k))
    }

    pub fn from_bigint(&self, k: &BigInt) -> RingElement {
        RingElement(match &self.spec {
            RingSpec::Integers => Repr::Int(k.clone()),
            RingSpec::Rationals => Repr::Rat(BigRational::from_integer(k.clone())),
            RingSpec::Modular(n) => Repr::Mod { value: reduce_bigint(k, *n), modulus: *n },
            RingSpec::Polynomial { base, num_vars } => {
                Repr::Poly(Box::new(Poly::constant(modulus_of(base), *num_vars as u16, k.clone())))
            }
        })
    }

    /// `num / den`, defined whenever `den` maps to a unit.
    pub fn fraction(&self, num: i64, den: i64) -> Result<RingElement> {
        let d = self.int(den);
        match d.try_invert() {
            Some(inv) => Ok(self.int(num) * inv),
            None => usage(format!("{den} is not a unit in {}", self.spec)),
        }
    }

    /// The `i`-th polynomial variable.
    pub fn var(&self, i: usize) -> Result<RingElement> {
        match &self.spec {
            RingSpec::Polynomial { base, num_vars } if i < *num_vars => {
                let mut terms = BTreeMap::new();
                terms.insert(Monomial::var(i as u16), BigInt::one());
                Ok(RingElement(Repr::Poly(Box::new(Poly {
                    modulus: modulus_of(base),
                    num_vars: *num_vars as u16,
                    terms,
                }))))
            }
            RingSpec::Polynomial { num_vars, .. } => {
                usage(format!("variable index {i} out of range for {num_vars} variables"))
            }
            other => usage(format!("{other} has no variables")),
        }
    }

    /// Draws an element from a bounded, reproducible distribution.
    ///
    /// `ℤ/n` is uniform; `ℤ` draws from `[-9, 9]`; `ℚ` draws numerators from
    /// `[-9, 9]` and denominators from `[1, 9]`; polynomials have at most
    /// three terms of degree at most two.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        match &self.spec {
            RingSpec::Integers => self.int(rng.gen_range(-9..=9)),
            RingSpec::Rationals => {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=9);
                RingElement(Repr::Rat(BigRational::new(num.into(), den.into())))
            }
            RingSpec::Modular(n) => RingElement(Repr::Mod { value: rng.gen_range(0..*n), modulus: *n }),
            RingSpec::Polynomial { base, num_vars } => {
                let base_ring = Ring { spec: (**base).clone() };
                let mut acc = self.zero();
                for _ in 0..rng.gen_range(0..=3) {
                    let mut term = self.from_bigint(&base_ring.sample(rng).to_bigint().unwrap());
                    for _ in 0..rng.gen_range(0..=2) {
                        term *= self.var(rng.gen_range(0..*num_vars)).unwrap();
                    }
                    acc += term;
                }
                acc
            }
        }
    }

    /// Draws until a unit comes up. `1` is in the support of every
    /// distribution above, so this terminates with probability one.
    pub fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        loop {
            let x = self.sample(rng);
            if x.is_unit() {
                return x;
            }
        }
    }

    /// Every element, for finite rings.
    pub fn elements(&self) -> Option<Vec<RingElement>> {
        match self.spec {
            RingSpec::Modular(n) if n <= 1 << 16 => {
                Some((0..n).map(|value| RingElement(Repr::Mod { value, modulus: n })).collect())
            }
            _ => None,
        }
    }

    /// Parses a scalar literal: an integer, `a/b`, or a variable `x<i>`.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        if let Some(idx) = s.strip_prefix('x') {
            let i: usize = idx.parse().map_err(|_| Error::Usage(format!("bad variable `{s}`")))?;
            return self.var(i);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| Error::Usage(format!("bad literal `{s}`")))?;
            let den: BigInt = den.trim().parse().map_err(|_| Error::Usage(format!("bad literal `{s}`")))?;
            let inv = self
                .from_bigint(&den)
                .try_invert()
                .ok_or_else(|| Error::Usage(format!("denominator of `{s}` is not a unit in {}", self.spec)))?;
            return Ok(self.from_bigint(&num) * inv);
        }
        let k: BigInt = s.parse().map_err(|_| Error::Usage(format!("bad literal `{s}`")))?;
        Ok(self.from_bigint(&k))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ring::new(s.parse()?)
    }
}

fn modulus_of(base: &RingSpec) -> Option<u64> {
    match base {
        RingSpec::Modular(n) => Some(*n),
        _ => None,
    }
}

fn reduce_bigint(k: &BigInt, n: u64) -> u64 {
    k.mod_floor(&BigInt::from(n)).to_u64().unwrap()
}

/// An element of some [`Ring`]. Equality is exact and structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
    Poly(Box<Poly>),
}

impl RingElement {
    pub fn zero_like(&self) -> RingElement {
        self.int_like(0)
    }

    pub fn one_like(&self) -> RingElement {
        self.int_like(1)
    }

    /// The integer `k` in the same ring as `self`.
    pub fn int_like(&self, k: i64) -> RingElement {
        RingElement(match &self.0 {
            Repr::Int(_) => Repr::Int(k.into()),
            Repr::Rat(_) => Repr::Rat(BigRational::from_integer(k.into())),
            Repr::Mod { modulus, .. } => {
                Repr::Mod { value: k.rem_euclid(*modulus as i64) as u64, modulus: *modulus }
            }
            Repr::Poly(p) => Repr::Poly(Box::new(Poly::constant(p.modulus, p.num_vars, k.into()))),
        })
    }

    /// The ring this element lives in.
    pub fn ring(&self) -> Ring {
        let spec = match &self.0 {
            Repr::Int(_) => RingSpec::Integers,
            Repr::Rat(_) => RingSpec::Rationals,
            Repr::Mod { modulus, .. } => RingSpec::Modular(*modulus),
            Repr::Poly(p) => RingSpec::Polynomial {
                base: Box::new(match p.modulus {
                    Some(n) => RingSpec::Modular(n),
                    None => RingSpec::Integers,
                }),
                num_vars: p.num_vars as usize,
            },
        };
        Ring { spec }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => v.is_zero(),
            Repr::Rat(v) => v.is_zero(),
            Repr::Mod { value, .. } => *value == 0,
            Repr::Poly(p) => p.terms.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    pub fn is_unit(&self) -> bool {
        self.try_invert().is_some()
    }

    /// The multiplicative inverse, or `None` when `self` is not a unit.
    ///
    /// Units are `±1` in `ℤ`, nonzero values in `ℚ`, residues coprime to the
    /// modulus in `ℤ/n`, and constants that are units of the coefficient ring
    /// in a polynomial ring.
    pub fn try_invert(&self) -> Option<RingElement> {
        match &self.0 {
            Repr::Int(v) => (v.abs().is_one()).then(|| self.clone()),
            Repr::Rat(v) => (!v.is_zero()).then(|| RingElement(Repr::Rat(v.recip()))),
            Repr::Mod { value, modulus } => {
                inverse_mod(*value, *modulus).map(|inv| RingElement(Repr::Mod { value: inv, modulus: *modulus }))
            }
            Repr::Poly(p) => {
                if p.terms.len() != 1 {
                    return None;
                }
                let (mono, coeff) = p.terms.iter().next().unwrap();
                if !mono.0.is_empty() {
                    return None;
                }
                let inv = match p.modulus {
                    None => coeff.abs().is_one().then(|| coeff.clone())?,
                    Some(n) => BigInt::from(inverse_mod(reduce_bigint(coeff, n), n)?),
                };
                Some(RingElement(Repr::Poly(Box::new(Poly::constant(p.modulus, p.num_vars, inv)))))
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The integer value in `ℤ` (or an integral rational), the residue in `ℤ/n`; `None` otherwise.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Int(v) => Some(v.clone()),
            Repr::Mod { value, .. } => Some(BigInt::from(*value)),
            Repr::Rat(v) if v.is_integer() => Some(v.to_integer()),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Rat(v) => Some(v.clone()),
            Repr::Int(v) => Some(BigRational::from_integer(v.clone())),
            _ => None,
        }
    }

    /// Polynomial terms as (sorted variable indices with repetition, coefficient).
    pub fn poly_terms(&self) -> Option<Vec<(Vec<u16>, BigInt)>> {
        match &self.0 {
            Repr::Poly(p) => Some(p.terms.iter().map(|(m, c)| (m.0.to_vec(), c.clone())).collect()),
            _ => None,
        }
    }

    fn binary(&self, rhs: &RingElement, op: Op) -> RingElement {
        RingElement(match (&self.0, &rhs.0) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Repr::Mod { value: a, modulus: n }, Repr::Mod { value: b, modulus: m }) if n == m => {
                let (a, b, n128) = (*a as u128, *b as u128, *n as u128);
                let value = match op {
                    Op::Add => (a + b) % n128,
                    Op::Sub => (a + n128 - b) % n128,
                    Op::Mul => (a * b) % n128,
                } as u64;
                Repr::Mod { value, modulus: *n }
            }
            (Repr::Poly(a), Repr::Poly(b)) if a.modulus == b.modulus && a.num_vars == b.num_vars => {
                Repr::Poly(Box::new(match op {
                    Op::Add => a.add(b, false),
                    Op::Sub => a.add(b, true),
                    Op::Mul => a.mul(b),
                }))
            }
            _ => panic!("ring mismatch: {} vs {}", self.ring(), rhs.ring()),
        })
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

fn inverse_mod(value: u64, modulus: u64) -> Option<u64> {
    let egcd = (value as i128).extended_gcd(&(modulus as i128));
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(modulus as i128) as u64)
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(v) => write!(f, "{v}"),
            Repr::Rat(v) => write!(f, "{v}"),
            Repr::Mod { value, .. } => write!(f, "{value}"),
            Repr::Poly(p) => p.fmt(f),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement(match &self.0 {
            Repr::Int(v) => Repr::Int(-v),
            Repr::Rat(v) => Repr::Rat(-v),
            Repr::Mod { value, modulus } => Repr::Mod { value: (modulus - value) % modulus, modulus: *modulus },
            Repr::Poly(p) => Repr::Poly(Box::new(p.negate())),
        })
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:expr, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.binary(rhs, $op)
            }
        }
        impl $trait<RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.binary(&rhs, $op)
            }
        }
        impl $trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.binary(rhs, $op)
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.binary(&rhs, $op)
            }
        }
        impl $assign_trait<&RingElement> for RingElement {
            fn $assign_method(&mut self, rhs: &RingElement) {
                *self = self.binary(rhs, $op);
            }
        }
        impl $assign_trait<RingElement> for RingElement {
            fn $assign_method(&mut self, rhs: RingElement) {
                *self = self.binary(&rhs, $op);
            }
        }
    };
}

forward_binop!(Add, add, Op::Add, AddAssign, add_assign);
forward_binop!(Sub, sub, Op::Sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, Op::Mul, MulAssign, mul_assign);

/// Sorted variable indices with repetition; `x0²x3` is `[0, 0, 3]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    fn one() -> Self {
        Monomial(SmallVec::new())
    }

    fn var(i: u16) -> Self {
        let mut v = SmallVec::new();
        v.push(i);
        Monomial(v)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Sparse polynomial with no zero coefficients; coefficients are reduced
/// into `[0, n)` when the base is `ℤ/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Poly {
    modulus: Option<u64>,
    num_vars: u16,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    fn constant(modulus: Option<u64>, num_vars: u16, k: BigInt) -> Self {
        let mut p = Poly { modulus, num_vars, terms: BTreeMap::new() };
        p.accumulate(Monomial::one(), k);
        p
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        match self.modulus {
            Some(n) => c.mod_floor(&BigInt::from(n)),
            None => c,
        }
    }

    fn accumulate(&mut self, mono: Monomial, c: BigInt) {
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = match self.modulus {
                    Some(n) => c.mod_floor(&BigInt::from(n)),
                    None => c,
                };
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                let sum = match self.modulus {
                    Some(n) => sum.mod_floor(&BigInt::from(n)),
                    None => sum,
                };
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn add(&self, other: &Poly, subtract: bool) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), if subtract { -c } else { c.clone() });
        }
        out
    }

    fn negate(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.normalize(-c))).collect();
        Poly { modulus: self.modulus, num_vars: self.num_vars, terms }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly { modulus: self.modulus, num_vars: self.num_vars, terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            let mut idx = 0;
            while idx < m.0.len() {
                let v = m.0[idx];
                let run = m.0[idx..].iter().take_while(|&&w| w == v).count();
                if run == 1 {
                    write!(f, "*x{v}")?;
                } else {
                    write!(f, "*x{v}^{run}")?;
                }
                idx += run;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_rings() -> Vec<Ring> {
        vec![
            Ring::integers(),
            Ring::rationals(),
            Ring::modular(97).unwrap(),
            Ring::modular(2).unwrap(),
            Ring::modular(4).unwrap(),
            "poly:zmod:2:3".parse().unwrap(),
            "poly:int:2".parse().unwrap(),
        ]
    }

    #[test]
    fn modular_literal_reduces() {
        let r = Ring::modular(97).unwrap();
        assert_eq!(r.int(98), r.one());
        assert_eq!(r.int(-1), r.int(96));
    }

    #[test]
    fn zero_is_additive_identity() {
        let r = Ring::integers();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = r.sample(&mut rng);
            assert_eq!(&x + &r.int(0), x);
        }
    }

    #[test]
    fn characteristic_two_polynomials() {
        let r: Ring = "poly:zmod:2:3".parse().unwrap();
        let x0 = r.var(0).unwrap();
        assert!((&x0 + &x0).is_zero());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(matches!(Ring::modular(1), Err(Error::Config(_))));
        assert!(matches!("poly:rat:2".parse::<Ring>(), Err(Error::Config(_))));
        assert!(matches!("poly:int:0".parse::<Ring>(), Err(Error::Config(_))));
        assert!(matches!("zmod".parse::<Ring>(), Err(Error::Config(_))));
    }

    #[test]
    fn spec_grammar_round_trips() {
        for s in ["int", "rat", "zmod:97", "poly:zmod:97:3", "poly:int:27"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn inverses() {
        let r = Ring::modular(97).unwrap();
        assert_eq!(r.int(2).try_invert(), Some(r.int(49)));
        assert_eq!(Ring::integers().int(1).try_invert(), Some(Ring::integers().int(1)));
        assert_eq!(Ring::integers().int(-1).try_invert(), Some(Ring::integers().int(-1)));
        assert_eq!(Ring::integers().int(2).try_invert(), None);
        assert_eq!(Ring::modular(4).unwrap().int(2).try_invert(), None);
        let q = Ring::rationals();
        assert_eq!(q.int(3).try_invert(), Some(q.fraction(1, 3).unwrap()));
        assert_eq!(q.zero().try_invert(), None);
        let p: Ring = "poly:zmod:5:2".parse().unwrap();
        assert_eq!(p.int(2).try_invert(), Some(p.int(3)));
        assert_eq!(p.var(0).unwrap().try_invert(), None);
    }

    #[test]
    fn modular_non_units_share_a_factor() {
        // brute-force oracle: x is a unit iff some k has xk = 1
        for n in [2u64, 4, 6, 9, 12] {
            let r = Ring::modular(n).unwrap();
            for x in r.elements().unwrap() {
                let brute = r.elements().unwrap().iter().any(|k| (&x * k).is_one());
                assert_eq!(x.is_unit(), brute, "{x} mod {n}");
                if !brute {
                    let v = x.to_bigint().unwrap();
                    assert_ne!(v.gcd(&BigInt::from(n)), BigInt::one());
                }
            }
        }
    }

    #[test]
    fn ring_axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in all_rings() {
            for _ in 0..200 {
                let (a, b, c) = (r.sample(&mut rng), r.sample(&mut rng), r.sample(&mut rng));
                assert_eq!((&a + &b) + &c, &a + (&b + &c), "{r}");
                assert_eq!(&a * (&b + &c), &a * &b + &a * &c, "{r}");
                assert_eq!(&a * &b, &b * &a, "{r}");
                assert_eq!(&a + &b, &b + &a, "{r}");
                assert_eq!((&a * &b) * &c, &a * (&b * &c), "{r}");
                assert_eq!(&r.one() * &a, a, "{r}");
                assert!((&a + &(-&a)).is_zero(), "{r}");
                if let Some(inv) = a.try_invert() {
                    assert!((&a * &inv).is_one(), "{r}");
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        for r in all_rings() {
            let draw = |seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..50).map(|_| r.sample(&mut rng)).collect::<Vec<_>>()
            };
            assert_eq!(draw(9), draw(9));
        }
        let two = Ring::modular(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let v = two.sample(&mut rng).to_bigint().unwrap();
            assert!(v == BigInt::zero() || v == BigInt::one());
        }
        let q = Ring::rationals();
        for _ in 0..10_000 {
            let v = q.sample(&mut rng).to_rational().unwrap();
            assert!(v.denom().is_positive());
        }
    }

    #[test]
    fn parse_elements() {
        let q = Ring::rationals();
        assert_eq!(q.parse_element("2/6").unwrap(), q.fraction(1, 3).unwrap());
        let m = Ring::modular(97).unwrap();
        assert_eq!(m.parse_element("1/2").unwrap(), m.int(49));
        assert!(Ring::integers().parse_element("1/2").is_err());
        let p: Ring = "poly:int:3".parse().unwrap();
        assert_eq!(p.parse_element("x2").unwrap(), p.var(2).unwrap());
    }

    #[test]
    fn polynomial_display_and_pow() {
        let p: Ring = "poly:int:2".parse().unwrap();
        let x = p.var(0).unwrap();
        let y = p.var(1).unwrap();
        let e = (&x + &y).pow(2);
        assert_eq!(e, &x * &x + p.int(2) * &x * &y + &y * &y);
        assert_eq!((&x * &x * &p.int(3)).to_string(), "3*x0^2");
    }
}
