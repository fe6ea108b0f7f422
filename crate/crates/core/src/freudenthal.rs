//! The module `W = K × A × K × A × K`, its quartic form `Θ`, and the
//! automorphisms generated by `t_±(a)`, `d(u)` and `[g]`.
//!
//! Automorphisms are stored as the images of the 57 generators of `W`:
//! `(1,0,0,0,0)`, `(0,eᵢ,0,0,0)`, `(0,0,1,0,0)`, `(0,0,0,eᵢ,0)`, `(0,0,0,0,1)`.
//! `W` is not abelian, so a 56×56 matrix would lose the `s`-coordinate; the
//! table is a faithful, canonical representation of any automorphism that
//! respects `⊕` and `·`.

use std::fmt;

use rand::Rng;

use crate::albert::{AlbertElement, NormPreservingMap, DIM};
use crate::error::{usage, Error, Result};
use crate::report::CheckLog;
use crate::ring::{Ring, RingElement};

/// Number of generators of `W`.
pub const GENERATORS: usize = 2 * DIM + 3;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FVector {
    pub r: RingElement,
    pub b: AlbertElement,
    pub s: RingElement,
    pub c: AlbertElement,
    pub t: RingElement,
}

impl FVector {
    pub fn new(r: RingElement, b: AlbertElement, s: RingElement, c: AlbertElement, t: RingElement) -> Self {
        FVector { r, b, s, c, t }
    }

    pub fn zero(ring: &Ring) -> Self {
        let z = AlbertElement::zero(ring);
        FVector { r: ring.zero(), b: z.clone(), s: ring.zero(), c: z, t: ring.zero() }
    }

    /// `(r, 0, s, 0, t)` for small integers.
    pub fn scalars(ring: &Ring, r: i64, s: i64, t: i64) -> Self {
        FVector { r: ring.int(r), s: ring.int(s), t: ring.int(t), ..Self::zero(ring) }
    }

    pub fn ring(&self) -> Ring {
        self.r.ring()
    }

    pub fn sample<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Self {
        FVector {
            r: ring.sample(rng),
            b: AlbertElement::sample(ring, rng),
            s: ring.sample(rng),
            c: AlbertElement::sample(ring, rng),
            t: ring.sample(rng),
        }
    }

    /// Coordinates in generator order: `r`, 27 of `b`, `s`, 27 of `c`, `t`.
    pub fn coords(&self) -> Vec<RingElement> {
        let mut v = Vec::with_capacity(GENERATORS);
        v.push(self.r.clone());
        v.extend(self.b.coords());
        v.push(self.s.clone());
        v.extend(self.c.coords());
        v.push(self.t.clone());
        v
    }

    pub fn from_coords(v: &[RingElement]) -> Self {
        assert_eq!(v.len(), GENERATORS, "an element of W has 57 coordinates");
        FVector {
            r: v[0].clone(),
            b: AlbertElement::from_coords(&v[1..1 + DIM]),
            s: v[1 + DIM].clone(),
            c: AlbertElement::from_coords(&v[2 + DIM..2 + 2 * DIM]),
            t: v[2 + 2 * DIM].clone(),
        }
    }

    /// The `j`-th generator.
    pub fn generator(ring: &Ring, j: usize) -> Self {
        let mut v = vec![ring.zero(); GENERATORS];
        v[j] = ring.one();
        Self::from_coords(&v)
    }

    /// Parses 57 comma-separated scalars.
    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.len() != GENERATORS {
            return usage(format!("an element of W has 57 scalars, got {}", parts.len()));
        }
        let v: Vec<RingElement> = parts.iter().map(|p| ring.parse_element(p)).collect::<Result<_>>()?;
        Ok(Self::from_coords(&v))
    }

    /// `(r + r′, b + b′, s + s′ − t r′ − T(c, b′), c + c′, t + t′)`.
    pub fn dotplus(&self, o: &FVector) -> FVector {
        FVector {
            r: &self.r + &o.r,
            b: &self.b + &o.b,
            s: &self.s + &o.s - &self.t * &o.r - self.c.trace_form(&o.b),
            c: &self.c + &o.c,
            t: &self.t + &o.t,
        }
    }

    /// `(rk, bk, sk², ck, tk)`.
    pub fn scale(&self, k: &RingElement) -> FVector {
        FVector { r: &self.r * k, b: self.b.scale(k), s: &self.s * k * k, c: self.c.scale(k), t: &self.t * k }
    }

    /// `(0, 0, 2s + rt + T(b, c), 0, 0)`.
    pub fn tau(&self) -> FVector {
        let ring = self.ring();
        FVector {
            s: ring.int(2) * &self.s + &self.r * &self.t + self.b.trace_form(&self.c),
            ..FVector::zero(&ring)
        }
    }

    /// `Θ = s² + s T(b,c) + rst + T(b#, c#) − r N(c) + t N(b)`.
    pub fn theta(&self) -> RingElement {
        let (r, s, t) = (&self.r, &self.s, &self.t);
        s * s + s * self.b.trace_form(&self.c) + r * s * t + self.b.sharp().trace_form(&self.c.sharp())
            - r * self.c.norm()
            + t * self.b.norm()
    }

    /// Whether only `r` may be nonzero.
    pub fn on_r_line(&self) -> bool {
        self.b.is_zero() && self.s.is_zero() && self.c.is_zero() && self.t.is_zero()
    }

    /// Whether only `t` may be nonzero.
    pub fn on_t_line(&self) -> bool {
        self.r.is_zero() && self.b.is_zero() && self.s.is_zero() && self.c.is_zero()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r: {}, b: {}, s: {}, c: {}, t: {})", self.r, self.b, self.s, self.c, self.t)
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `t₊(a)` in closed form.
pub fn t_plus(a: &AlbertElement, v: &FVector) -> FVector {
    let (a_s, n) = (a.sharp(), a.norm());
    let (r, b, s, c, t) = (&v.r, &v.b, &v.s, &v.c, &v.t);
    FVector {
        r: r + a.trace_form(b) + a_s.trace_form(c) - &n * t,
        b: &(b + &a.cross(c)) - &a_s.scale(t),
        s: s - a.trace_form(&c.sharp()) + a_s.trace_form(c) * t - &n * t * t,
        c: c - &a.scale(t),
        t: t.clone(),
    }
}

/// `t₋(a)` in closed form.
pub fn t_minus(a: &AlbertElement, v: &FVector) -> FVector {
    let (a_s, n) = (a.sharp(), a.norm());
    let (r, b, s, c, t) = (&v.r, &v.b, &v.s, &v.c, &v.t);
    FVector {
        r: r.clone(),
        b: b + &a.scale(r),
        s: s - a.trace_form(&b.sharp()) - a_s.trace_form(b) * r - &n * r * r,
        c: &(c + &a.cross(b)) + &a_s.scale(r),
        t: t - a.trace_form(c) - a_s.trace_form(b) - &n * r,
    }
}

/// `d(u)` in closed form; `u_inv` must be `u⁻¹`.
pub fn d_map(u: &RingElement, u_inv: &RingElement, v: &FVector) -> FVector {
    FVector {
        r: u.pow(3) * &v.r,
        b: v.b.scale(u),
        s: v.s.clone(),
        c: v.c.scale(u_inv),
        t: u_inv.pow(3) * &v.t,
    }
}

/// One generator of a provenance word.
#[derive(Clone, PartialEq, Eq)]
pub enum Letter {
    TPlus(AlbertElement),
    TMinus(AlbertElement),
    D { u: RingElement, u_inv: RingElement },
    /// `[g]` with `g^{−†}` precomputed.
    L { g: Box<NormPreservingMap>, g_inv_dagger: Box<NormPreservingMap> },
}

impl Letter {
    pub fn apply(&self, v: &FVector) -> FVector {
        match self {
            Letter::TPlus(a) => t_plus(a, v),
            Letter::TMinus(a) => t_minus(a, v),
            Letter::D { u, u_inv } => d_map(u, u_inv, v),
            Letter::L { g, g_inv_dagger } => FVector {
                b: g.apply(&v.b),
                c: g_inv_dagger.apply(&v.c),
                ..v.clone()
            },
        }
    }

    fn inverse(&self) -> Result<Letter> {
        Ok(match self {
            Letter::TPlus(a) => Letter::TPlus(-a),
            Letter::TMinus(a) => Letter::TMinus(-a),
            Letter::D { u, u_inv } => Letter::D { u: u_inv.clone(), u_inv: u.clone() },
            Letter::L { g, g_inv_dagger } => Letter::L {
                g: Box::new(g.inverse()?),
                g_inv_dagger: Box::new(g_inv_dagger.inverse()?),
            },
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::TPlus(a) => write!(f, "t+({a})"),
            Letter::TMinus(a) => write!(f, "t-({a})"),
            Letter::D { u, .. } => write!(f, "d({u})"),
            Letter::L { .. } => write!(f, "[g]"),
        }
    }
}

/// An automorphism of `W` built from generators, stored as its table of
/// generator images together with the word it came from.
///
/// Equality compares tables only.
#[derive(Clone)]
pub struct FAutomorphism {
    ring: Ring,
    images: Vec<FVector>,
    /// `word[0] ∘ word[1] ∘ …`; the last letter acts first.
    word: Vec<Letter>,
}

impl PartialEq for FAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for FAutomorphism {}

impl fmt::Debug for FAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(ToString::to_string).collect();
        write!(f, "FAutomorphism[{}]", w.join(" "))
    }
}

impl FAutomorphism {
    pub fn identity(ring: &Ring) -> Self {
        FAutomorphism {
            ring: ring.clone(),
            images: (0..GENERATORS).map(|j| FVector::generator(ring, j)).collect(),
            word: vec![],
        }
    }

    fn from_letter(ring: &Ring, letter: Letter) -> Self {
        FAutomorphism {
            ring: ring.clone(),
            images: (0..GENERATORS).map(|j| letter.apply(&FVector::generator(ring, j))).collect(),
            word: vec![letter],
        }
    }

    /// `t₊(a)` (`plus = true`) or `t₋(a)`.
    pub fn root(plus: bool, a: &AlbertElement) -> Self {
        let letter = if plus { Letter::TPlus(a.clone()) } else { Letter::TMinus(a.clone()) };
        Self::from_letter(&a.ring(), letter)
    }

    pub fn d(u: &RingElement) -> Result<Self> {
        let u_inv = u.try_invert().ok_or_else(|| Error::Usage(format!("d({u}) needs a unit")))?;
        Ok(Self::from_letter(&u.ring(), Letter::D { u: u.clone(), u_inv }))
    }

    pub fn lmap(g: &NormPreservingMap) -> Result<Self> {
        let gid = g.inverse_dagger()?;
        Ok(Self::from_letter(&g.ring(), Letter::L { g: Box::new(g.clone()), g_inv_dagger: Box::new(gid) }))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn images(&self) -> &[FVector] {
        &self.images
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Applies the table: decompose `v` as
    /// `(r,0,0,0,0) ⊕ (0,b,0,0,0) ⊕ (0,0,s,0,0) ⊕ (0,0,0,c,0) ⊕ (0,0,0,0,t)`,
    /// expand `b` and `c` over the basis with `·`, and recombine images with `⊕`.
    /// The central generator is scaled linearly.
    pub fn apply(&self, v: &FVector) -> FVector {
        let coords = v.coords();
        let s_index = 1 + DIM;
        let mut acc = FVector::zero(&self.ring);
        for (j, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let term = if j == s_index {
                let img = &self.images[j];
                FVector {
                    r: &img.r * x,
                    b: img.b.scale(x),
                    s: &img.s * x,
                    c: img.c.scale(x),
                    t: &img.t * x,
                }
            } else {
                self.images[j].scale(x)
            };
            acc = acc.dotplus(&term);
        }
        acc
    }

    /// Applies the provenance word letter by letter in closed form.
    pub fn apply_word(&self, v: &FVector) -> FVector {
        self.word.iter().rev().fold(v.clone(), |acc, l| l.apply(&acc))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FAutomorphism) -> FAutomorphism {
        FAutomorphism {
            ring: self.ring.clone(),
            images: other.images.iter().map(|v| self.apply(v)).collect(),
            word: self.word.iter().chain(&other.word).cloned().collect(),
        }
    }

    /// Composes a sequence, the first element outermost.
    pub fn product(ring: &Ring, factors: &[&FAutomorphism]) -> FAutomorphism {
        factors.iter().fold(Self::identity(ring), |acc, f| acc.compose(f))
    }

    /// The inverse, rebuilt from the inverted word.
    pub fn inverse(&self) -> Result<FAutomorphism> {
        let mut out = Self::identity(&self.ring);
        for letter in &self.word {
            out = Self::from_letter(&self.ring, letter.inverse()?).compose(&out);
        }
        Ok(out)
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &FAutomorphism) -> Result<FAutomorphism> {
        Ok(self.compose(g).compose(&self.inverse()?))
    }

    pub fn fixes_center(&self) -> bool {
        let j = 1 + DIM;
        self.images[j] == FVector::generator(&self.ring, j)
    }

    /// `g` maps the line `K×0×0×0×0` (plus) or `0×0×0×0×K` (minus) into
    /// itself, as does `g⁻¹`.
    pub fn in_parabolic(&self, plus: bool) -> Result<bool> {
        let inv = self.inverse()?;
        let (j, on_line): (usize, fn(&FVector) -> bool) =
            if plus { (0, FVector::on_r_line) } else { (GENERATORS - 1, FVector::on_t_line) };
        Ok(on_line(&self.images[j]) && on_line(&inv.images[j]))
    }

    /// The `U⁻` parameter: the `b`-part of `g(1,0,0,0,0)`.
    pub fn minus_parameter(&self) -> AlbertElement {
        self.images[0].b.clone()
    }

    /// The `U⁺` parameter: minus the `c`-part of `g(0,0,0,0,1)`.
    pub fn plus_parameter(&self) -> AlbertElement {
        -&self.images[GENERATORS - 1].c
    }

    /// Parses a word such as `t+:diag(1,2,3);d:5;t-:1;l:2,3,1/6`, read as a
    /// product whose last letter acts first. Albert literals follow
    /// [`AlbertElement::parse`]; `l:μ₁,μ₂,μ₃` is the torus element of `E₆`.
    pub fn parse_word(ring: &Ring, word: &str) -> Result<FAutomorphism> {
        let mut factors = Vec::new();
        for part in word.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (head, arg) = part
                .split_once(':')
                .ok_or_else(|| Error::Usage(format!("letter `{part}` needs the form name:argument")))?;
            let f = match head {
                "t+" => Self::root(true, &AlbertElement::parse(ring, arg)?),
                "t-" => Self::root(false, &AlbertElement::parse(ring, arg)?),
                "d" => Self::d(&ring.parse_element(arg)?)?,
                "l" => {
                    let mu: Vec<RingElement> = arg.split(',').map(|m| ring.parse_element(m)).collect::<Result<_>>()?;
                    if mu.len() != 3 {
                        return usage("l: takes three torus parameters");
                    }
                    Self::lmap(&crate::albert::e6_torus([&mu[0], &mu[1], &mu[2]])?)?
                }
                _ => return usage(format!("unknown generator `{head}` (expected t+, t-, d or l)")),
            };
            factors.push(f);
        }
        let refs: Vec<&FAutomorphism> = factors.iter().collect();
        Ok(Self::product(ring, &refs))
    }
}

/// The module laws of `W`, `Θ`-invariance of every generator type, and
/// agreement between table application and the closed forms.
pub fn freudenthal_suite<R: Rng + ?Sized>(ring: &Ring, trials: usize, rng: &mut R) -> CheckLog {
    let mut log = CheckLog::new();
    let zero = FVector::zero(ring);
    for _ in 0..trials {
        let (u, v, w) = (FVector::sample(ring, rng), FVector::sample(ring, rng), FVector::sample(ring, rng));
        let (k, l) = (ring.sample(rng), ring.sample(rng));
        let a = AlbertElement::sample(ring, rng);
        let unit = ring.sample_unit(rng);
        let mu1 = ring.sample_unit(rng);
        let mu2 = ring.sample_unit(rng);
        let mu3 = (&mu1 * &mu2).try_invert().expect("product of units");
        let wit = || {
            vec![
                ("u", u.to_string()),
                ("v", v.to_string()),
                ("w", w.to_string()),
                ("k", k.to_string()),
                ("a", a.to_string()),
                ("unit", unit.to_string()),
                ("mu", format!("({mu1}, {mu2}, {mu3})")),
            ]
        };

        log.record("(u ⊕ v) ⊕ w = u ⊕ (v ⊕ w)", u.dotplus(&v).dotplus(&w) == u.dotplus(&v.dotplus(&w)), wit);
        log.record("v ⊕ 0 = 0 ⊕ v = v", v.dotplus(&zero) == v && zero.dotplus(&v) == v, wit);
        let (uv, vu) = (u.dotplus(&v), v.dotplus(&u));
        log.record(
            "u ⊕ v and v ⊕ u differ only in s",
            uv.r == vu.r && uv.b == vu.b && uv.c == vu.c && uv.t == vu.t,
            wit,
        );
        log.record("(v·k)·l = v·(kl)", v.scale(&k).scale(&l) == v.scale(&(&k * &l)), wit);
        log.record("(u ⊕ v)·k = u·k ⊕ v·k", uv.scale(&k) == u.scale(&k).dotplus(&v.scale(&k)), wit);
        log.record("v·1 = v", v.scale(&ring.one()) == v, wit);
        log.record("Θ(v·k) = Θ(v)k^4", v.scale(&k).theta() == v.theta() * k.pow(4), wit);

        let gens: Vec<(&str, Result<FAutomorphism>)> = vec![
            ("t+", Ok(FAutomorphism::root(true, &a))),
            ("t-", Ok(FAutomorphism::root(false, &a))),
            ("d", FAutomorphism::d(&unit)),
            ("[g]", crate::albert::e6_torus([&mu1, &mu2, &mu3]).and_then(|g| FAutomorphism::lmap(&g))),
        ];
        for (name, f) in gens {
            let f = match f {
                Ok(f) => f,
                Err(e) => {
                    log.fail(&format!("construct {name}"), e.to_string());
                    continue;
                }
            };
            let fv = f.apply(&v);
            log.record(&format!("Θ({name} v) = Θ(v)"), fv.theta() == v.theta(), wit);
            log.record(&format!("{name}: table application = closed form"), fv == f.apply_word(&v), wit);
            log.record(&format!("{name} fixes the center"), f.fixes_center(), wit);
            log.record(
                &format!("{name}(u ⊕ v) = {name}(u) ⊕ {name}(v)"),
                f.apply(&uv) == f.apply(&u).dotplus(&fv),
                wit,
            );
        }
    }
    log
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::e6_torus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z97() -> Ring {
        Ring::modular(97).unwrap()
    }

    #[test]
    fn dotplus_examples() {
        let r = Ring::integers();
        let v = FVector::scalars(&r, 1, 0, 0);
        let w = FVector::scalars(&r, 0, 0, 1);
        assert_eq!(v.dotplus(&w), FVector::scalars(&r, 1, 0, 1));
        assert_eq!(w.dotplus(&v), FVector::scalars(&r, 1, -1, 1));
        assert_eq!(FVector::scalars(&r, 1, 1, 1).scale(&r.int(-1)), FVector::scalars(&r, -1, 1, -1));
    }

    #[test]
    fn tau_and_theta_examples() {
        let r = Ring::integers();
        assert_eq!(FVector::zero(&r).tau(), FVector::zero(&r));
        assert_eq!(FVector::scalars(&r, 0, 1, 0).tau(), FVector::scalars(&r, 0, 2, 0));
        assert_eq!(FVector::scalars(&r, 1, 0, 1).tau(), FVector::scalars(&r, 0, 1, 0));
        assert!(FVector::scalars(&r, 0, 1, 0).theta().is_one());
        assert_eq!(FVector::scalars(&r, 1, 1, 1).theta(), r.int(2));
    }

    #[test]
    fn root_examples() {
        let r = z97();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(FAutomorphism::root(true, &AlbertElement::zero(&r)), FAutomorphism::identity(&r));
        let a = AlbertElement::sample(&r, &mut rng);
        let b = AlbertElement::sample(&r, &mut rng);
        let img = t_plus(&a, &FVector::scalars(&r, 0, 0, 1));
        let n = a.norm();
        assert_eq!(img, FVector::new(-&n, -&a.sharp(), -&n, -&a, r.one()));
        for plus in [true, false] {
            let sum = FAutomorphism::root(plus, &a).compose(&FAutomorphism::root(plus, &b));
            assert_eq!(sum, FAutomorphism::root(plus, &(&a + &b)));
        }
        let (p, m) = (FAutomorphism::root(true, &a), FAutomorphism::root(false, &b));
        assert_ne!(p.compose(&m), m.compose(&p));
    }

    #[test]
    fn d_examples() {
        let r = z97();
        assert_eq!(FAutomorphism::d(&r.one()).unwrap(), FAutomorphism::identity(&r));
        let (u, v) = (r.int(3), r.int(5));
        let duv = FAutomorphism::d(&u).unwrap().compose(&FAutomorphism::d(&v).unwrap());
        assert_eq!(duv, FAutomorphism::d(&(&u * &v)).unwrap());
        assert!(FAutomorphism::d(&r.zero()).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = AlbertElement::sample(&r, &mut rng);
        let d = FAutomorphism::d(&u).unwrap();
        let lhs = d.conjugate(&FAutomorphism::root(true, &a)).unwrap();
        assert_eq!(lhs, FAutomorphism::root(true, &a.scale(&(&u * &u))));
        let lhs = d.conjugate(&FAutomorphism::root(false, &a)).unwrap();
        let ui = u.try_invert().unwrap();
        assert_eq!(lhs, FAutomorphism::root(false, &a.scale(&(&ui * &ui))));
    }

    #[test]
    fn lmap_conjugation() {
        let r = Ring::rationals();
        let mu = [r.int(2), r.int(3), r.fraction(1, 6).unwrap()];
        let g = e6_torus([&mu[0], &mu[1], &mu[2]]).unwrap();
        let lg = FAutomorphism::lmap(&g).unwrap();
        assert_eq!(FAutomorphism::lmap(&NormPreservingMap::identity(&r)).unwrap(), FAutomorphism::identity(&r));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = AlbertElement::sample(&r, &mut rng);
        let lhs = lg.conjugate(&FAutomorphism::root(false, &a)).unwrap();
        assert_eq!(lhs, FAutomorphism::root(false, &g.apply(&a)));
        let lhs = lg.conjugate(&FAutomorphism::root(true, &a)).unwrap();
        assert_eq!(lhs, FAutomorphism::root(true, &g.inverse_dagger().unwrap().apply(&a)));
        for _ in 0..50 {
            let v = FVector::sample(&r, &mut rng);
            assert_eq!(lg.apply(&v).theta(), v.theta());
        }
    }

    #[test]
    fn table_and_extension_agree() {
        let r = z97();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = AlbertElement::sample(&r, &mut rng);
        let b = AlbertElement::sample(&r, &mut rng);
        let f = FAutomorphism::root(true, &a).compose(&FAutomorphism::root(false, &b));
        let g = FAutomorphism::root(false, &b).compose(&FAutomorphism::root(true, &a));
        let h = FAutomorphism::d(&r.int(7)).unwrap();
        assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        assert_eq!(f.compose(&FAutomorphism::identity(&r)), f);
        let mut differ = false;
        for _ in 0..50 {
            let v = FVector::sample(&r, &mut rng);
            assert_eq!(f.apply(&v), f.apply_word(&v));
            differ |= f.apply(&v) != g.apply(&v);
        }
        assert_eq!(differ, f != g);
        assert_eq!(f.inverse().unwrap().compose(&f), FAutomorphism::identity(&r));
    }

    #[test]
    fn parabolic_lines() {
        let r = z97();
        let a = AlbertElement::diag(r.int(1), r.int(2), r.int(3));
        let p = FAutomorphism::root(true, &a);
        assert!(p.in_parabolic(true).unwrap());
        assert!(!p.in_parabolic(false).unwrap());
        assert_eq!(p.images()[0], FVector::scalars(&r, 1, 0, 0));
        for i in 0..DIM {
            let img = &p.images()[1 + i];
            assert_eq!(img.b, AlbertElement::basis(&r, i));
            assert!(img.s.is_zero() && img.c.is_zero() && img.t.is_zero());
        }
        assert_eq!(p.plus_parameter(), a);
        assert_eq!(FAutomorphism::root(false, &a).minus_parameter(), a);
    }

    #[test]
    fn words() {
        let r = z97();
        let w = FAutomorphism::parse_word(&r, "t+:1;t-:-1;t+:1").unwrap();
        let v = FVector::sample(&r, &mut ChaCha8Rng::seed_from_u64(5));
        let expect = FVector::new(
            -&v.t,
            -&v.c,
            &v.s + v.b.trace_form(&v.c) + &v.r * &v.t,
            v.b.clone(),
            v.r.clone(),
        );
        assert_eq!(w.apply(&v), expect);
        assert!(FAutomorphism::parse_word(&r, "q:1").is_err());
        assert!(FAutomorphism::parse_word(&r, "d:0").is_err());
        assert!(FAutomorphism::parse_word(&r, "l:2,2,73").is_ok());
    }

    #[test]
    fn suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let log = freudenthal_suite(&z97(), 20, &mut rng);
        assert!(log.all_passed(), "{:?}", log.checks());
    }
}
