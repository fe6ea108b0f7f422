//! Split composition algebras: `K`, `K × K`, `mat(2, K)` and the Zorn algebra
//! of split octonions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::matrix::Matrix;
use crate::report::CheckLog;
use crate::ring::{Ring, RingElement};

/// A unital algebra with a multiplicative quadratic form and its conjugation.
pub trait CompositionAlgebra {
    type Elem: Clone + PartialEq + fmt::Display;

    fn name(&self) -> &'static str;
    fn ring(&self) -> &Ring;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, k: &RingElement) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn q(&self, a: &Self::Elem) -> RingElement;
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `⟨a, b⟩ = q(a + b) − q(a) − q(b)`.
    fn polar(&self, a: &Self::Elem, b: &Self::Elem) -> RingElement {
        self.q(&self.add(a, b)) - self.q(a) - self.q(b)
    }
}

/// `K` itself, `q(x) = x²`, trivial conjugation.
#[derive(Clone, Debug)]
pub struct Base(pub Ring);

impl CompositionAlgebra for Base {
    type Elem = RingElement;

    fn name(&self) -> &'static str {
        "base"
    }
    fn ring(&self) -> &Ring {
        &self.0
    }
    fn one(&self) -> RingElement {
        self.0.one()
    }
    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a + b
    }
    fn scale(&self, a: &RingElement, k: &RingElement) -> RingElement {
        a * k
    }
    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a * b
    }
    fn q(&self, a: &RingElement) -> RingElement {
        a * a
    }
    fn conj(&self, a: &RingElement) -> RingElement {
        a.clone()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        self.0.sample(rng)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair(pub RingElement, pub RingElement);

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// `K × K`, `q(x, y) = xy`, conjugation swaps.
#[derive(Clone, Debug)]
pub struct Doubled(pub Ring);

impl CompositionAlgebra for Doubled {
    type Elem = Pair;

    fn name(&self) -> &'static str {
        "doubled"
    }
    fn ring(&self) -> &Ring {
        &self.0
    }
    fn one(&self) -> Pair {
        Pair(self.0.one(), self.0.one())
    }
    fn add(&self, a: &Pair, b: &Pair) -> Pair {
        Pair(&a.0 + &b.0, &a.1 + &b.1)
    }
    fn scale(&self, a: &Pair, k: &RingElement) -> Pair {
        Pair(&a.0 * k, &a.1 * k)
    }
    fn mul(&self, a: &Pair, b: &Pair) -> Pair {
        Pair(&a.0 * &b.0, &a.1 * &b.1)
    }
    fn q(&self, a: &Pair) -> RingElement {
        &a.0 * &a.1
    }
    fn conj(&self, a: &Pair) -> Pair {
        Pair(a.1.clone(), a.0.clone())
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Pair {
        Pair(self.0.sample(rng), self.0.sample(rng))
    }
}

/// `mat(2, K)`, `q = det`, conjugation is the adjugate.
#[derive(Clone, Debug)]
pub struct Matrix2(pub Ring);

impl CompositionAlgebra for Matrix2 {
    type Elem = Matrix;

    fn name(&self) -> &'static str {
        "matrix2"
    }
    fn ring(&self) -> &Ring {
        &self.0
    }
    fn one(&self) -> Matrix {
        Matrix::identity(&self.0, 2)
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a + b
    }
    fn scale(&self, a: &Matrix, k: &RingElement) -> Matrix {
        a.scale(k)
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a * b
    }
    fn q(&self, a: &Matrix) -> RingElement {
        a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0)
    }
    fn conj(&self, a: &Matrix) -> Matrix {
        Matrix::from_rows(vec![
            vec![a.get(1, 1).clone(), -a.get(0, 1)],
            vec![-a.get(1, 0), a.get(0, 0).clone()],
        ])
        .expect("2x2")
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        Matrix::from_fn(2, 2, |_, _| self.0.sample(rng))
    }
}

/// A split octonion `(α x; y β)` with `α, β ∈ K` and `x, y ∈ K³`.
///
/// Coordinates are ordered `(α, x₁, x₂, x₃, y₁, y₂, y₃, β)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZornElement {
    pub a11: RingElement,
    pub x: [RingElement; 3],
    pub y: [RingElement; 3],
    pub a22: RingElement,
}

fn dot(a: &[RingElement; 3], b: &[RingElement; 3]) -> RingElement {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross(a: &[RingElement; 3], b: &[RingElement; 3]) -> [RingElement; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn vmap(a: &[RingElement; 3], f: impl Fn(&RingElement) -> RingElement) -> [RingElement; 3] {
    [f(&a[0]), f(&a[1]), f(&a[2])]
}

fn vzip(a: &[RingElement; 3], b: &[RingElement; 3], f: impl Fn(&RingElement, &RingElement) -> RingElement) -> [RingElement; 3] {
    [f(&a[0], &b[0]), f(&a[1], &b[1]), f(&a[2], &b[2])]
}

impl ZornElement {
    pub fn new(a11: RingElement, x: [RingElement; 3], y: [RingElement; 3], a22: RingElement) -> Self {
        ZornElement { a11, x, y, a22 }
    }

    pub fn from_ints(ring: &Ring, a11: i64, x: [i64; 3], y: [i64; 3], a22: i64) -> Self {
        ZornElement {
            a11: ring.int(a11),
            x: x.map(|k| ring.int(k)),
            y: y.map(|k| ring.int(k)),
            a22: ring.int(a22),
        }
    }

    pub fn scalar(k: &RingElement) -> Self {
        let z = k.zero_like();
        ZornElement {
            a11: k.clone(),
            x: [z.clone(), z.clone(), z.clone()],
            y: [z.clone(), z.clone(), z],
            a22: k.clone(),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::scalar(&ring.zero())
    }

    pub fn one(ring: &Ring) -> Self {
        Self::scalar(&ring.one())
    }

    pub fn coords(&self) -> [RingElement; 8] {
        let [x1, x2, x3] = self.x.clone();
        let [y1, y2, y3] = self.y.clone();
        [self.a11.clone(), x1, x2, x3, y1, y2, y3, self.a22.clone()]
    }

    pub fn from_coords(c: &[RingElement]) -> Self {
        assert_eq!(c.len(), 8, "a Zorn element has 8 coordinates");
        ZornElement {
            a11: c[0].clone(),
            x: [c[1].clone(), c[2].clone(), c[3].clone()],
            y: [c[4].clone(), c[5].clone(), c[6].clone()],
            a22: c[7].clone(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.a11.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(RingElement::is_zero)
    }

    pub fn sample<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Self {
        let c: Vec<RingElement> = (0..8).map(|_| ring.sample(rng)).collect();
        Self::from_coords(&c)
    }

    /// `q = αβ − x·y`.
    pub fn q(&self) -> RingElement {
        &self.a11 * &self.a22 - dot(&self.x, &self.y)
    }

    /// `⟨a, b⟩ = αβ′ + α′β − x·y′ − x′·y`, the polarization of `q`.
    pub fn polar(&self, other: &ZornElement) -> RingElement {
        &self.a11 * &other.a22 + &other.a11 * &self.a22 - dot(&self.x, &other.y) - dot(&other.x, &self.y)
    }

    /// `⟨a, 1⟩ = α + β`.
    pub fn trace(&self) -> RingElement {
        &self.a11 + &self.a22
    }

    /// `(β, −x, −y, α)`.
    pub fn conj(&self) -> ZornElement {
        ZornElement {
            a11: self.a22.clone(),
            x: vmap(&self.x, |v| -v),
            y: vmap(&self.y, |v| -v),
            a22: self.a11.clone(),
        }
    }

    pub fn scale(&self, k: &RingElement) -> ZornElement {
        ZornElement {
            a11: &self.a11 * k,
            x: vmap(&self.x, |v| v * k),
            y: vmap(&self.y, |v| v * k),
            a22: &self.a22 * k,
        }
    }

    pub(crate) fn mul_impl(&self, o: &ZornElement, mutated: bool) -> ZornElement {
        let mut yy = cross(&self.y, &o.y);
        if mutated {
            yy = vmap(&yy, |v| -v);
        }
        let xx = cross(&self.x, &o.x);
        ZornElement {
            a11: &self.a11 * &o.a11 + dot(&self.x, &o.y),
            x: [0, 1, 2].map(|i| &self.a11 * &o.x[i] + &self.x[i] * &o.a22 - &yy[i]),
            y: [0, 1, 2].map(|i| &self.y[i] * &o.a11 + &self.a22 * &o.y[i] + &xx[i]),
            a22: &self.a22 * &o.a22 + dot(&self.y, &o.x),
        }
    }
}

impl Add for &ZornElement {
    type Output = ZornElement;
    fn add(self, o: &ZornElement) -> ZornElement {
        ZornElement {
            a11: &self.a11 + &o.a11,
            x: vzip(&self.x, &o.x, |a, b| a + b),
            y: vzip(&self.y, &o.y, |a, b| a + b),
            a22: &self.a22 + &o.a22,
        }
    }
}

impl Sub for &ZornElement {
    type Output = ZornElement;
    fn sub(self, o: &ZornElement) -> ZornElement {
        self + &-o
    }
}

impl Neg for &ZornElement {
    type Output = ZornElement;
    fn neg(self) -> ZornElement {
        self.scale(&self.a11.int_like(-1))
    }
}

impl Mul for &ZornElement {
    type Output = ZornElement;
    fn mul(self, o: &ZornElement) -> ZornElement {
        self.mul_impl(o, false)
    }
}

impl fmt::Display for ZornElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.x;
        let [d, e, g] = &self.y;
        write!(f, "({}, ({a}, {b}, {c}), ({d}, {e}, {g}), {})", self.a11, self.a22)
    }
}

impl fmt::Debug for ZornElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The Zorn algebra `Z(K)`. `mutated` flips the sign of the `y × y′` term,
/// which breaks the composition law; it exists to prove the suite can fail.
#[derive(Clone, Debug)]
pub struct Zorn {
    ring: Ring,
    mutated: bool,
}

impl Zorn {
    pub fn new(ring: Ring) -> Self {
        Zorn { ring, mutated: false }
    }

    #[doc(hidden)]
    pub fn mutated(ring: Ring) -> Self {
        Zorn { ring, mutated: true }
    }
}

impl CompositionAlgebra for Zorn {
    type Elem = ZornElement;

    fn name(&self) -> &'static str {
        "zorn"
    }
    fn ring(&self) -> &Ring {
        &self.ring
    }
    fn one(&self) -> ZornElement {
        ZornElement::one(&self.ring)
    }
    fn add(&self, a: &ZornElement, b: &ZornElement) -> ZornElement {
        a + b
    }
    fn scale(&self, a: &ZornElement, k: &RingElement) -> ZornElement {
        a.scale(k)
    }
    fn mul(&self, a: &ZornElement, b: &ZornElement) -> ZornElement {
        a.mul_impl(b, self.mutated)
    }
    fn q(&self, a: &ZornElement) -> RingElement {
        a.q()
    }
    fn conj(&self, a: &ZornElement) -> ZornElement {
        a.conj()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ZornElement {
        ZornElement::sample(&self.ring, rng)
    }
}

/// Checks the composition law and the ten standard identities on `trials`
/// sampled triples.
pub fn composition_suite<A: CompositionAlgebra, R: Rng + ?Sized>(alg: &A, trials: usize, rng: &mut R) -> CheckLog {
    let mut log = CheckLog::new();
    let one = alg.one();
    for _ in 0..trials {
        let (x, y, z) = (alg.sample(rng), alg.sample(rng), alg.sample(rng));
        let w = || vec![("x", x.to_string()), ("y", y.to_string()), ("z", z.to_string())];
        let m = |a: &A::Elem, b: &A::Elem| alg.mul(a, b);
        let (xc, yc) = (alg.conj(&x), alg.conj(&y));
        let xy = m(&x, &y);
        let (qx, qy) = (alg.q(&x), alg.q(&y));

        log.record("q(xy) = q(x)q(y)", alg.q(&xy) == &qx * &qy, w);
        let by_trace = alg.add(&alg.scale(&one, &alg.polar(&x, &one)), &alg.scale(&x, &alg.ring().int(-1)));
        log.record("conj(x) = <x,1>1 - x", xc == by_trace, w);
        log.record("conj(conj(x)) = x", alg.conj(&xc) == x, w);
        let lhs = alg.polar(&xy, &z);
        log.record("<xy,z> = <y,conj(x)z>", lhs == alg.polar(&y, &m(&xc, &z)), w);
        log.record("<xy,z> = <x,z conj(y)>", lhs == alg.polar(&x, &m(&z, &yc)), w);
        log.record("q(conj(x)) = q(x)", alg.q(&xc) == qx, w);
        log.record("x^2 y = x(xy)", m(&m(&x, &x), &y) == m(&x, &xy), w);
        log.record("conj(1) = 1", alg.conj(&one) == one, w);
        log.record("x y^2 = (xy)y", m(&x, &m(&y, &y)) == m(&xy, &y), w);
        log.record("conj(x)conj(y) = conj(yx)", m(&xc, &yc) == alg.conj(&m(&y, &x)), w);
        log.record("x(conj(x)y) = q(x)y", m(&x, &m(&xc, &y)) == alg.scale(&y, &qx), w);
        let qx1 = alg.scale(&one, &qx);
        log.record("x conj(x) = conj(x)x = q(x)1", m(&x, &xc) == qx1 && m(&xc, &x) == qx1, w);
        log.record("(xy)conj(y) = q(y)x", m(&xy, &yc) == alg.scale(&x, &qy), w);
    }
    log
}
