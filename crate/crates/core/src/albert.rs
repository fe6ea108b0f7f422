//! The split Albert algebra as a cubic norm structure.
//!
//! An element is the Hermitian matrix
//!
//! ```text
//! ( α₁   c₃   c̄₂ )
//! ( c̄₃   α₂   c₁ )
//! ( c₂   c̄₁   α₃ )
//! ```
//!
//! over the Zorn algebra. The standard basis has 27 vectors: `α₁, α₂, α₃`,
//! then the eight Zorn coordinates of `c₁`, of `c₂` and of `c₃`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use crate::composition::ZornElement;
use crate::error::{usage, Error, Result};
use crate::matrix::Matrix;
use crate::report::CheckLog;
use crate::ring::{Ring, RingElement, RingSpec};

pub const DIM: usize = 27;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlbertElement {
    pub alpha: [RingElement; 3],
    pub c: [ZornElement; 3],
}

/// Cyclic index triples `(i, j, k)`.
const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

impl AlbertElement {
    pub fn new(alpha: [RingElement; 3], c: [ZornElement; 3]) -> Self {
        AlbertElement { alpha, c }
    }

    pub fn diag(a: RingElement, b: RingElement, c: RingElement) -> Self {
        let ring = a.ring();
        let z = ZornElement::zero(&ring);
        AlbertElement { alpha: [a, b, c], c: [z.clone(), z.clone(), z] }
    }

    pub fn scalar(k: &RingElement) -> Self {
        Self::diag(k.clone(), k.clone(), k.clone())
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::scalar(&ring.zero())
    }

    pub fn one(ring: &Ring) -> Self {
        Self::scalar(&ring.one())
    }

    /// The `i`-th standard basis vector.
    pub fn basis(ring: &Ring, i: usize) -> Self {
        assert!(i < DIM, "basis index {i} out of range");
        let mut v = vec![ring.zero(); DIM];
        v[i] = ring.one();
        Self::from_coords(&v)
    }

    pub fn coords(&self) -> Vec<RingElement> {
        let mut v: Vec<RingElement> = self.alpha.to_vec();
        for c in &self.c {
            v.extend(c.coords());
        }
        v
    }

    pub fn from_coords(v: &[RingElement]) -> Self {
        assert_eq!(v.len(), DIM, "an Albert element has 27 coordinates");
        AlbertElement {
            alpha: [v[0].clone(), v[1].clone(), v[2].clone()],
            c: [0, 1, 2].map(|k| ZornElement::from_coords(&v[3 + 8 * k..11 + 8 * k])),
        }
    }

    pub fn ring(&self) -> Ring {
        self.alpha[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(RingElement::is_zero)
    }

    pub fn sample<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Self {
        let v: Vec<RingElement> = (0..DIM).map(|_| ring.sample(rng)).collect();
        Self::from_coords(&v)
    }

    /// Parses `diag(a,b,c)`, a single scalar `k` (meaning `k·1`), or 27
    /// comma-separated scalars in basis order.
    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("diag(").and_then(|t| t.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return usage(format!("diag needs three entries, got `{s}`"));
            }
            let e: Vec<RingElement> = parts.iter().map(|p| ring.parse_element(p)).collect::<Result<_>>()?;
            return Ok(Self::diag(e[0].clone(), e[1].clone(), e[2].clone()));
        }
        let parts: Vec<&str> = s.split(',').collect();
        match parts.len() {
            1 => Ok(Self::scalar(&ring.parse_element(parts[0])?)),
            DIM => {
                let v: Vec<RingElement> = parts.iter().map(|p| ring.parse_element(p)).collect::<Result<_>>()?;
                Ok(Self::from_coords(&v))
            }
            n => usage(format!("an Albert literal has 1 or 27 scalars, got {n}")),
        }
    }

    pub fn scale(&self, k: &RingElement) -> Self {
        AlbertElement { alpha: self.alpha.clone().map(|a| a * k), c: self.c.clone().map(|c| c.scale(k)) }
    }

    pub(crate) fn sharp_impl(&self, mutated: bool) -> Self {
        let a = &self.alpha;
        let c = &self.c;
        let mut alpha = a.clone();
        let mut out_c = c.clone();
        for (i, j, k) in CYCLIC {
            alpha[i] = &a[j] * &a[k] - c[i].q();
            let drop = mutated && i == 2;
            out_c[i] = if drop { (&c[j] * &c[k]).conj() } else { &(&c[j] * &c[k]).conj() - &c[i].scale(&a[i]) };
        }
        AlbertElement { alpha, c: out_c }
    }

    /// `x^#`.
    pub fn sharp(&self) -> Self {
        self.sharp_impl(false)
    }

    /// `x × y = (x + y)^# − x^# − y^#`.
    pub fn cross(&self, other: &Self) -> Self {
        &(&(self + other).sharp() - &self.sharp()) - &other.sharp()
    }

    /// `N = α₁α₂α₃ + ⟨1, c₁c₂c₃⟩ − Σ αᵢ q(cᵢ)`.
    pub fn norm(&self) -> RingElement {
        let a = &self.alpha;
        let c = &self.c;
        let mut n = &a[0] * &a[1] * &a[2] + (&(&c[0] * &c[1]) * &c[2]).trace();
        for i in 0..3 {
            n -= &a[i] * c[i].q();
        }
        n
    }

    /// `T(x, y) = Σ αᵢβᵢ + Σ ⟨cᵢ, dᵢ⟩`.
    pub fn trace_form(&self, other: &Self) -> RingElement {
        let mut t = self.alpha[0].zero_like();
        for i in 0..3 {
            t += &self.alpha[i] * &other.alpha[i];
            t += self.c[i].polar(&other.c[i]);
        }
        t
    }

    /// `T(1, x) = α₁ + α₂ + α₃`.
    pub fn trace(&self) -> RingElement {
        &self.alpha[0] + &self.alpha[1] + &self.alpha[2]
    }

    /// `U_x(y) = T(x, y) x − x^# × y`.
    pub fn u_op(&self, y: &Self) -> Self {
        &self.scale(&self.trace_form(y)) - &self.sharp().cross(y)
    }

    /// `N(x)⁻¹ x^#` when `N(x)` is a unit.
    pub fn try_invert(&self) -> Option<Self> {
        Some(self.sharp().scale(&self.norm().try_invert()?))
    }
}

impl Add for &AlbertElement {
    type Output = AlbertElement;
    fn add(self, o: &AlbertElement) -> AlbertElement {
        AlbertElement {
            alpha: [0, 1, 2].map(|i| &self.alpha[i] + &o.alpha[i]),
            c: [0, 1, 2].map(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl Sub for &AlbertElement {
    type Output = AlbertElement;
    fn sub(self, o: &AlbertElement) -> AlbertElement {
        AlbertElement {
            alpha: [0, 1, 2].map(|i| &self.alpha[i] - &o.alpha[i]),
            c: [0, 1, 2].map(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl Neg for &AlbertElement {
    type Output = AlbertElement;
    fn neg(self) -> AlbertElement {
        self.scale(&self.alpha[0].int_like(-1))
    }
}

impl fmt::Display for AlbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.alpha;
        write!(f, "{{alpha: ({a}, {b}, {c}), c1: {}, c2: {}, c3: {}}}", self.c[0], self.c[1], self.c[2])
    }
}

impl fmt::Debug for AlbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The Gram matrix of `T` in the standard basis. It is a signed permutation
/// matrix, so it is its own inverse over every ring.
pub fn trace_gram(ring: &Ring) -> Matrix {
    let basis: Vec<AlbertElement> = (0..DIM).map(|i| AlbertElement::basis(ring, i)).collect();
    Matrix::from_fn(DIM, DIM, |i, j| basis[i].trace_form(&basis[j]))
}

/// A linear map of `A` whose norm-preservation has been decided.
#[derive(Clone, PartialEq, Eq)]
pub struct NormPreservingMap {
    matrix: Matrix,
}

/// Outcome of [`validate_norm_preserving`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Accepted(NormPreservingMap),
    /// `N(Mx) − N(x)` (scaled by `D³` over `ℚ`) has this nonzero term.
    Rejected { monomial: String, coefficient: String },
}

impl Validation {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Validation::Accepted(_))
    }
}

impl NormPreservingMap {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.matrix.ring()
    }

    pub fn identity(ring: &Ring) -> Self {
        NormPreservingMap { matrix: Matrix::identity(ring, DIM) }
    }

    pub fn apply(&self, x: &AlbertElement) -> AlbertElement {
        AlbertElement::from_coords(&self.matrix.apply(&x.coords()))
    }

    /// `g ∘ h`.
    pub fn compose(&self, h: &NormPreservingMap) -> NormPreservingMap {
        NormPreservingMap { matrix: &self.matrix * &h.matrix }
    }

    /// The `T`-adjoint `g^†`, with `T(g x, y) = T(x, g^† y)`.
    pub fn dagger(&self) -> Result<NormPreservingMap> {
        let g = trace_gram(&self.ring());
        let g_inv = g
            .try_inverse()
            .ok_or_else(|| Error::Internal("the Gram matrix of T is not invertible".into()))?;
        Ok(NormPreservingMap { matrix: &(&g_inv * &self.matrix.transpose()) * &g })
    }

    pub fn inverse(&self) -> Result<NormPreservingMap> {
        let m = self
            .matrix
            .try_inverse()
            .ok_or_else(|| Error::Internal("a norm-preserving map is not invertible".into()))?;
        Ok(NormPreservingMap { matrix: m })
    }

    /// `g^{−†} = (g⁻¹)^†`.
    pub fn inverse_dagger(&self) -> Result<NormPreservingMap> {
        self.inverse()?.dagger()
    }
}

impl fmt::Debug for NormPreservingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormPreservingMap({})", self.matrix)
    }
}

/// `αᵢ ↦ μᵢ⁻² αᵢ`, `cᵢ ↦ μᵢ cᵢ` for units with `μ₁μ₂μ₃ = 1`, validated symbolically.
pub fn e6_torus(mu: [&RingElement; 3]) -> Result<NormPreservingMap> {
    let inv: Vec<RingElement> = mu
        .iter()
        .map(|m| m.try_invert().ok_or_else(|| Error::Usage(format!("{m} is not a unit"))))
        .collect::<Result<_>>()?;
    if !(mu[0] * mu[1] * mu[2]).is_one() {
        return usage("torus parameters must multiply to 1");
    }
    let mut diag = Vec::with_capacity(DIM);
    for v in &inv {
        diag.push(v * v);
    }
    for m in mu {
        diag.extend(std::iter::repeat_n((*m).clone(), 8));
    }
    match validate_norm_preserving(&Matrix::diagonal(&diag))? {
        Validation::Accepted(g) => Ok(g),
        Validation::Rejected { monomial, .. } => {
            Err(Error::Internal(format!("torus element failed norm validation at {monomial}")))
        }
    }
}

/// Decides `N(M x) = N(x)` as a polynomial identity in 27 indeterminates.
///
/// Scalars must be integers, residues or rationals; over `ℚ` the matrix is
/// first scaled to `D·M` with integer entries and `N(D M x) = D³ N(x)` is
/// checked instead.
pub fn validate_norm_preserving(m: &Matrix) -> Result<Validation> {
    if m.rows() != DIM || m.cols() != DIM {
        return usage(format!("expected a 27x27 matrix, got {}x{}", m.rows(), m.cols()));
    }
    let ring = m.ring();
    let (base, scale) = match ring.spec() {
        RingSpec::Integers | RingSpec::Modular(_) => (ring.clone(), BigInt::one()),
        RingSpec::Rationals => {
            let mut d = BigInt::one();
            for e in m.entries() {
                d = d.lcm(e.to_rational().expect("rational").denom());
            }
            (Ring::integers(), d)
        }
        RingSpec::Polynomial { .. } => {
            return usage("symbolic validation needs integer, modular or rational scalars");
        }
    };
    let poly = Ring::polynomial(&base, DIM)?;
    let lift = |e: &RingElement| -> RingElement {
        let k = match e.to_rational() {
            Some(r) => (r * &scale).to_integer(),
            None => e.to_bigint().expect("integral scalar"),
        };
        poly.from_bigint(&k)
    };
    let lifted = Matrix::from_fn(DIM, DIM, |i, j| lift(m.get(i, j)));
    let vars: Vec<RingElement> = (0..DIM).map(|i| poly.var(i).expect("27 variables")).collect();
    let x = AlbertElement::from_coords(&vars);
    let image = AlbertElement::from_coords(&lifted.apply(&vars));
    let diff = image.norm() - x.norm() * poly.from_bigint(&(&scale * &scale * &scale));
    let terms = diff.poly_terms().expect("polynomial");
    Ok(match terms.into_iter().next() {
        None => Validation::Accepted(NormPreservingMap { matrix: m.clone() }),
        Some((vars, coef)) => Validation::Rejected {
            monomial: if vars.is_empty() {
                "1".into()
            } else {
                vars.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join("*")
            },
            coefficient: coef.to_string(),
        },
    })
}

/// The cubic norm structure axioms, the derived identities, and the
/// quadratic Jordan laws, on `trials` sampled elements.
pub fn cubic_identity_suite<R: Rng + ?Sized>(ring: &Ring, trials: usize, mutated: bool, rng: &mut R) -> CheckLog {
    let sharp = |x: &AlbertElement| x.sharp_impl(mutated);
    let cross = |x: &AlbertElement, y: &AlbertElement| &(&sharp(&(x + y)) - &sharp(x)) - &sharp(y);
    let t = |x: &AlbertElement, y: &AlbertElement| x.trace_form(y);
    let n = |x: &AlbertElement| x.norm();
    let one = AlbertElement::one(ring);
    let mut log = CheckLog::new();
    for _ in 0..trials {
        let (x, y, z) = (AlbertElement::sample(ring, rng), AlbertElement::sample(ring, rng), AlbertElement::sample(ring, rng));
        let w = || vec![("x", x.to_string()), ("y", y.to_string()), ("z", z.to_string())];
        let (xs, ys) = (sharp(&x), sharp(&y));
        let (nx, ny) = (n(&x), n(&y));
        let xy = cross(&x, &y);

        log.record("1# = 1", sharp(&one) == one, w);
        log.record("1 × x = T(1,x)1 - x", cross(&one, &x) == &one.scale(&t(&one, &x)) - &x, w);
        log.record("N(1) = 1", n(&one).is_one(), w);
        log.record("N(x+y) = N(x) + T(x#,y) + T(x,y#) + N(y)", n(&(&x + &y)) == &nx + t(&xs, &y) + t(&x, &ys) + &ny, w);
        log.record("x## = N(x)x", sharp(&xs) == x.scale(&nx), w);
        log.record("N(x#) = N(x)^2", n(&xs) == &nx * &nx, w);

        let trilinear = t(&xy, &z);
        log.record(
            "T(x×y,z) = T(x,y×z) = T(z×x,y)",
            trilinear == t(&x, &cross(&y, &z)) && trilinear == t(&cross(&z, &x), &y),
            w,
        );
        log.record("T(1,x×y) = T(1,x)T(1,y) - T(x,y)", t(&one, &xy) == t(&one, &x) * t(&one, &y) - t(&x, &y), w);
        log.record("x#×(x×y) = T(x#,y)x + N(x)y", cross(&xs, &xy) == &x.scale(&t(&xs, &y)) + &y.scale(&nx), w);
        log.record("x×(x#×y) = T(x,y)x# + N(x)y", cross(&x, &cross(&xs, &y)) == &xs.scale(&t(&x, &y)) + &y.scale(&nx), w);
        log.record(
            "(x×y)# + x#×y# = T(x,y#)x + T(x#,y)y",
            &sharp(&xy) + &cross(&xs, &ys) == &x.scale(&t(&x, &ys)) + &y.scale(&t(&xs, &y)),
            w,
        );
        log.record("T(x#,x) = 3N(x)", t(&xs, &x) == ring.int(3) * &nx, w);
        log.record("N(x×y) = T(x#,y)T(x,y#) - N(x)N(y)", n(&xy) == t(&xs, &y) * t(&x, &ys) - &nx * &ny, w);
        let (tx, txs) = (t(&one, &x), t(&one, &xs));
        let rhs = &(&one.scale(&(&tx * &txs - &nx)) - &x.scale(&txs)) - &xs.scale(&tx);
        log.record("x#×x = T(1,x)T(1,x#)1 - N(x)1 - T(1,x#)x - T(1,x)x#", cross(&xs, &x) == rhs, w);

        let u = |a: &AlbertElement, b: &AlbertElement| &a.scale(&t(a, b)) - &cross(&sharp(a), b);
        log.record("N(U_x y) = N(x)^2 N(y)", n(&u(&x, &y)) == &nx * &nx * &ny, w);
        log.record("U_1 y = y", u(&one, &y) == y, w);
        if let Some(inv) = nx.try_invert() {
            let x_inv = xs.scale(&inv);
            log.record("U_x(x^-1) = x", u(&x, &x_inv) == x, w);
            log.record("N(x)N(x^-1) = 1", (&nx * n(&x_inv)).is_one(), w);
        }
    }
    log
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn examples() {
        let z = Ring::integers();
        let one = AlbertElement::one(&z);
        assert_eq!(one.sharp(), one);
        assert!(one.norm().is_one());
        assert_eq!(one.trace_form(&one), z.int(3));
        let d = AlbertElement::diag(z.int(2), z.int(3), z.int(5));
        assert_eq!(d.sharp(), AlbertElement::diag(z.int(15), z.int(10), z.int(6)));
        assert_eq!(d.norm(), z.int(30));
        let u = ZornElement::one(&z);
        let c = AlbertElement::new([z.zero(), z.zero(), z.zero()], [u.clone(), u.clone(), u]);
        assert_eq!(c.norm(), z.int(2));
        let x = AlbertElement::diag(z.int(2), z.int(1), z.int(1));
        assert_eq!(x.u_op(&one), AlbertElement::diag(z.int(4), z.int(1), z.int(1)));
    }

    #[test]
    fn inverses() {
        let r = q();
        assert_eq!(AlbertElement::one(&r).try_invert(), Some(AlbertElement::one(&r)));
        let d = AlbertElement::diag(r.int(2), r.int(3), r.int(5));
        let expect = AlbertElement::diag(r.fraction(1, 2).unwrap(), r.fraction(1, 3).unwrap(), r.fraction(1, 5).unwrap());
        assert_eq!(d.try_invert(), Some(expect));
        let z4 = Ring::modular(4).unwrap();
        assert_eq!(AlbertElement::diag(z4.int(2), z4.int(1), z4.int(1)).try_invert(), None);
    }

    #[test]
    fn cross_has_closed_form() {
        // x × y in components, derived by expanding the sharp of a sum
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = Ring::modular(97).unwrap();
        for _ in 0..30 {
            let (x, y) = (AlbertElement::sample(&r, &mut rng), AlbertElement::sample(&r, &mut rng));
            let got = x.cross(&y);
            for (i, j, k) in CYCLIC {
                let a = &x.alpha[j] * &y.alpha[k] + &x.alpha[k] * &y.alpha[j] - x.c[i].polar(&y.c[i]);
                assert_eq!(got.alpha[i], a);
                let c = &(&(&x.c[j] * &y.c[k]) + &(&y.c[j] * &x.c[k])).conj()
                    - &(&x.c[i].scale(&y.alpha[i]) + &y.c[i].scale(&x.alpha[i]));
                assert_eq!(got.c[i], c);
            }
        }
    }

    #[test]
    fn suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for r in [Ring::modular(97).unwrap(), Ring::modular(2).unwrap(), Ring::integers()] {
            let log = cubic_identity_suite(&r, 60, false, &mut rng);
            assert!(log.all_passed(), "{r}: {:?}", log.checks());
            assert!(log.checks().len() >= 16);
        }
    }

    #[test]
    fn mutation_is_caught() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let log = cubic_identity_suite(&Ring::modular(97).unwrap(), 20, true, &mut rng);
        assert!(!log.find("N(x#) = N(x)^2").unwrap().passed());
    }

    #[test]
    fn validation() {
        let r = Ring::modular(97).unwrap();
        assert!(validate_norm_preserving(&Matrix::identity(&r, DIM)).unwrap().is_accepted());
        let twice = Matrix::identity(&r, DIM).scale(&r.int(2));
        match validate_norm_preserving(&twice).unwrap() {
            Validation::Rejected { coefficient, .. } => assert_ne!(coefficient, "0"),
            other => panic!("{other:?}"),
        }
        assert!(validate_norm_preserving(&Matrix::identity(&r, 3)).is_err());
        let z = Ring::integers();
        // swapping c₁ with c₂ alone breaks N; a transposition of two diagonal slots too
        let mut swap = Matrix::identity(&z, DIM);
        swap.set(0, 0, z.zero());
        swap.set(1, 1, z.zero());
        swap.set(0, 1, z.one());
        swap.set(1, 0, z.one());
        assert!(!validate_norm_preserving(&swap).unwrap().is_accepted());
    }

    #[test]
    fn torus() {
        let r = q();
        let mu = [r.int(2), r.int(3), r.fraction(1, 6).unwrap()];
        let g = e6_torus([&mu[0], &mu[1], &mu[2]]).unwrap();
        assert!(g.apply(&AlbertElement::one(&r)).norm().is_one());
        let one = r.one();
        assert_eq!(e6_torus([&one, &one, &one]).unwrap(), NormPreservingMap::identity(&r));
        let z97 = Ring::modular(97).unwrap();
        assert!(e6_torus([&z97.int(2), &z97.int(2), &z97.int(73)]).is_ok());
        assert!(e6_torus([&z97.int(2), &z97.int(2), &z97.int(2)]).is_err());
        let z = Ring::integers();
        assert!(e6_torus([&z.int(2), &z.int(1), &z.int(1)]).is_err());
    }

    #[test]
    fn dagger_properties() {
        let r = q();
        let mu = [r.int(2), r.int(3), r.fraction(1, 6).unwrap()];
        let g = e6_torus([&mu[0], &mu[1], &mu[2]]).unwrap();
        let gd = g.dagger().unwrap();
        let basis: Vec<AlbertElement> = (0..DIM).map(|i| AlbertElement::basis(&r, i)).collect();
        for x in &basis {
            for y in &basis {
                assert_eq!(g.apply(x).trace_form(y), x.trace_form(&gd.apply(y)));
            }
        }
        assert_eq!(gd.dagger().unwrap(), g);
        assert_eq!(NormPreservingMap::identity(&r).dagger().unwrap(), NormPreservingMap::identity(&r));
        let gid = g.inverse_dagger().unwrap();
        assert!(validate_norm_preserving(gid.matrix()).unwrap().is_accepted());
        assert_eq!(gid.inverse_dagger().unwrap(), g);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let x = AlbertElement::sample(&r, &mut rng);
            assert_eq!(g.apply(&x.sharp()), gid.apply(&x).sharp());
        }
    }
}
