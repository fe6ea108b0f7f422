//! Clifford algebras of free quadratic modules.
//!
//! Monomials are bitmasks over the basis in a fixed order; the product of two
//! monomials is straightened once, when the space is built, with
//! `eᵢeⱼ = B(eᵢ,eⱼ) − eⱼeᵢ` for `i > j` and `eᵢ² = q(eᵢ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{usage, Error, Result};
use crate::report::CheckLog;
use crate::ring::{Ring, RingElement};

/// Spaces are limited to rank 8, i.e. 256 monomials.
pub const MAX_RANK: usize = 8;

type Terms = Vec<(u16, RingElement)>;

pub struct QuadraticSpace {
    ring: Ring,
    labels: Vec<String>,
    q: Vec<RingElement>,
    /// `B(eᵢ, eⱼ)`, with `2q(eᵢ)` on the diagonal.
    b: Vec<Vec<RingElement>>,
    table: Vec<Terms>,
    reversed: Vec<Terms>,
}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticSpace({})", self.labels.join(", "))
    }
}

impl QuadraticSpace {
    /// `off_diagonal` lists `(i, j, B(eᵢ, eⱼ))` for `i ≠ j`; unlisted pairs
    /// are orthogonal.
    pub fn new(
        ring: &Ring,
        labels: Vec<String>,
        q: Vec<RingElement>,
        off_diagonal: &[(usize, usize, RingElement)],
    ) -> Result<Arc<Self>> {
        let n = labels.len();
        if n > MAX_RANK {
            return usage(format!("Clifford spaces are limited to rank {MAX_RANK}, got {n}"));
        }
        if q.len() != n {
            return usage("one q-value per basis vector");
        }
        let mut b = vec![vec![ring.zero(); n]; n];
        for (i, qi) in q.iter().enumerate() {
            b[i][i] = ring.int(2) * qi;
        }
        for (i, j, v) in off_diagonal {
            if i == j || *i >= n || *j >= n {
                return usage(format!("bad off-diagonal entry ({i}, {j})"));
            }
            if !b[*i][*j].is_zero() && b[*i][*j] != *v {
                return usage(format!("B is not symmetric at ({i}, {j})"));
            }
            b[*i][*j] = v.clone();
            b[*j][*i] = v.clone();
        }
        let mut space = QuadraticSpace { ring: ring.clone(), labels, q, b, table: vec![], reversed: vec![] };
        space.build_tables();
        Ok(Arc::new(space))
    }

    /// `K e₋ ⊕ M₀ ⊕ K e₊` with `q = x₋x₊ + q₀(x₀)`, where `q₀` is the split
    /// form of the given rank: `x₁x₂ + x₃x₄ + …`, plus `x_r²` when the rank is odd.
    pub fn split(ring: &Ring, m0_rank: usize) -> Result<Arc<Self>> {
        let n = m0_rank + 2;
        let mut labels = vec!["e-".to_string()];
        labels.extend((1..=m0_rank).map(|i| format!("f{i}")));
        labels.push("e+".into());
        let mut q = vec![ring.zero(); n];
        let mut off = vec![(0, n - 1, ring.one())];
        for k in (0..m0_rank / 2).map(|k| 1 + 2 * k) {
            off.push((k, k + 1, ring.one()));
        }
        if m0_rank % 2 == 1 {
            q[m0_rank] = ring.one();
        }
        Self::new(ring, labels, q, &off)
    }

    /// `⊕ K e₋ᵢ ⊕ K eᵢ` with `q = Σ x₋ᵢxᵢ`, ordered `e₋₁ … e₋d e₁ … e_d`.
    pub fn hyperbolic(ring: &Ring, d: usize) -> Result<Arc<Self>> {
        let mut labels: Vec<String> = (1..=d).map(|i| format!("e-{i}")).collect();
        labels.extend((1..=d).map(|i| format!("e{i}")));
        let off: Vec<_> = (0..d).map(|i| (i, d + i, ring.one())).collect();
        Self::new(ring, labels, vec![ring.zero(); 2 * d], &off)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn q_value(&self, i: usize) -> &RingElement {
        &self.q[i]
    }

    pub fn bilinear(&self, i: usize, j: usize) -> &RingElement {
        &self.b[i][j]
    }

    /// `q(Σ xᵢeᵢ)`.
    pub fn q_of(&self, x: &[RingElement]) -> RingElement {
        let mut acc = self.ring.zero();
        for i in 0..x.len() {
            acc += &x[i] * &x[i] * &self.q[i];
            for j in i + 1..x.len() {
                acc += &x[i] * &x[j] * &self.b[i][j];
            }
        }
        acc
    }

    fn mono_times_gen(&self, mask: u16, j: usize) -> Terms {
        if mask == 0 {
            return vec![(1 << j, self.ring.one())];
        }
        let last = 15 - mask.leading_zeros() as usize;
        let prefix = mask & !(1 << last);
        if last < j {
            return vec![(mask | 1 << j, self.ring.one())];
        }
        if last == j {
            return vec![(prefix, self.q[j].clone())];
        }
        let mut out = Vec::new();
        if !self.b[last][j].is_zero() {
            out.push((prefix, self.b[last][j].clone()));
        }
        for (m, c) in self.mono_times_gen(prefix, j) {
            out.push((m | 1 << last, -c));
        }
        out
    }

    fn build_tables(&mut self) {
        let size = 1usize << self.rank();
        let mut table: Vec<Terms> = vec![Vec::new(); size * size];
        for b in 0..size {
            for a in 0..size {
                table[a * size + b] = if b == 0 {
                    vec![(a as u16, self.ring.one())]
                } else {
                    let j = b.trailing_zeros() as usize;
                    let rest = b & !(1 << j);
                    let mut acc: BTreeMap<u16, RingElement> = BTreeMap::new();
                    for (m, c) in self.mono_times_gen(a as u16, j) {
                        for (m2, c2) in &table[m as usize * size + rest] {
                            *acc.entry(*m2).or_insert_with(|| self.ring.zero()) += &c * c2;
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                };
            }
        }
        self.table = table;
        self.reversed = (0..size)
            .map(|mask| {
                let mut cur: BTreeMap<u16, RingElement> = BTreeMap::from([(0u16, self.ring.one())]);
                for j in (0..self.rank()).rev().filter(|j| mask >> j & 1 == 1) {
                    let mut next = BTreeMap::new();
                    for (m, c) in &cur {
                        for (m2, c2) in &self.table[*m as usize * size + (1 << j)] {
                            *next.entry(*m2).or_insert_with(|| self.ring.zero()) += c * c2;
                        }
                    }
                    cur = next;
                }
                cur.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
    }

    fn product(&self, a: u16, b: u16) -> &Terms {
        &self.table[(a as usize) << self.rank() | b as usize]
    }
}

#[derive(Clone)]
pub struct CliffordElement {
    space: Arc<QuadraticSpace>,
    terms: BTreeMap<u16, RingElement>,
}

impl PartialEq for CliffordElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for CliffordElement {}

impl CliffordElement {
    fn from_map(space: &Arc<QuadraticSpace>, mut terms: BTreeMap<u16, RingElement>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        CliffordElement { space: space.clone(), terms }
    }

    pub fn zero(space: &Arc<QuadraticSpace>) -> Self {
        Self::from_map(space, BTreeMap::new())
    }

    pub fn scalar(space: &Arc<QuadraticSpace>, k: &RingElement) -> Self {
        Self::from_map(space, BTreeMap::from([(0, k.clone())]))
    }

    pub fn one(space: &Arc<QuadraticSpace>) -> Self {
        Self::scalar(space, &space.ring.one())
    }

    /// The sorted monomial `e_{i₁}⋯e_{i_k}` for the bits of `mask`.
    pub fn monomial(space: &Arc<QuadraticSpace>, mask: u16) -> Self {
        Self::from_map(space, BTreeMap::from([(mask, space.ring.one())]))
    }

    pub fn generator(space: &Arc<QuadraticSpace>, i: usize) -> Self {
        Self::monomial(space, 1 << i)
    }

    /// `Σ xᵢeᵢ`.
    pub fn vector(space: &Arc<QuadraticSpace>, x: &[RingElement]) -> Self {
        assert_eq!(x.len(), space.rank(), "vector length must match the rank");
        Self::from_map(space, x.iter().enumerate().map(|(i, c)| (1u16 << i, c.clone())).collect())
    }

    pub fn sample<R: Rng + ?Sized>(space: &Arc<QuadraticSpace>, rng: &mut R) -> Self {
        let terms = (0..1u16 << space.rank()).map(|m| (m, space.ring.sample(rng))).collect();
        Self::from_map(space, terms)
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn coefficient(&self, mask: u16) -> RingElement {
        self.terms.get(&mask).cloned().unwrap_or_else(|| self.space.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, &RingElement)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn even_part(&self) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.count_ones() % 2 == 0).map(|(m, c)| (*m, c.clone())).collect();
        Self::from_map(&self.space, terms)
    }

    /// Coordinates in the module basis, if the element lies in `M`.
    pub fn as_vector(&self) -> Option<Vec<RingElement>> {
        if self.terms.keys().any(|m| m.count_ones() != 1) {
            return None;
        }
        Some((0..self.space.rank()).map(|i| self.coefficient(1 << i)).collect())
    }

    pub fn scale(&self, k: &RingElement) -> Self {
        Self::from_map(&self.space, self.terms.iter().map(|(m, c)| (*m, c * k)).collect())
    }

    fn check_space(&self, other: &Self) {
        assert!(Arc::ptr_eq(&self.space, &other.space), "Clifford elements of different spaces");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_space(other);
        let ring = &self.space.ring;
        let mut acc = vec![ring.zero(); 1 << self.space.rank()];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (m, c) in self.space.product(*ma, *mb) {
                    acc[*m as usize] += &cab * c;
                }
            }
        }
        Self::from_map(&self.space, acc.into_iter().enumerate().map(|(m, c)| (m as u16, c)).collect())
    }

    /// The anti-automorphism fixing `M`: reverses every monomial.
    pub fn main_involution(&self) -> Self {
        let ring = &self.space.ring;
        let mut acc: BTreeMap<u16, RingElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (m2, c2) in &self.space.reversed[*m as usize] {
                *acc.entry(*m2).or_insert_with(|| ring.zero()) += c * c2;
            }
        }
        Self::from_map(&self.space, acc)
    }

    /// Even, `α(g)g = gα(g) = 1`, and `g eᵢ g⁻¹ ∈ M` for every basis vector.
    pub fn spin_check(&self) -> bool {
        if !self.is_even() {
            return false;
        }
        let inv = self.main_involution();
        let one = Self::one(&self.space);
        if inv.mul(self) != one || self.mul(&inv) != one {
            return false;
        }
        (0..self.space.rank()).all(|i| self.mul(&Self::generator(&self.space, i)).mul(&inv).as_vector().is_some())
    }

    /// Coordinates of `g m g⁻¹`, with `g⁻¹ = α(g)`.
    pub fn conjugate_vector(&self, m: &[RingElement]) -> Result<Vec<RingElement>> {
        let v = Self::vector(&self.space, m);
        self.mul(&v).mul(&self.main_involution()).as_vector().ok_or_else(|| {
            Error::Internal(format!("conjugate of a module vector left the module under {self}"))
        })
    }

    /// The matrix of `m ↦ g m g⁻¹` on `M`, column `i` being the image of `eᵢ`.
    pub fn vector_action(&self) -> Result<Vec<Vec<RingElement>>> {
        let n = self.space.rank();
        let ring = &self.space.ring;
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![ring.zero(); n];
            e[i] = ring.one();
            cols.push(self.conjugate_vector(&e)?);
        }
        Ok((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
    }
}

impl std::ops::Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, o: &CliffordElement) -> CliffordElement {
        self.check_space(o);
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            *terms.entry(*m).or_insert_with(|| self.space.ring.zero()) += c;
        }
        CliffordElement::from_map(&self.space, terms)
    }
}

impl std::ops::Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        CliffordElement::from_map(&self.space, self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }
}

impl std::ops::Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, o: &CliffordElement) -> CliffordElement {
        self + &(-o)
    }
}

impl std::ops::Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, o: &CliffordElement) -> CliffordElement {
        CliffordElement::mul(self, o)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<&str> = (0..self.space.rank())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| self.space.labels[i].as_str())
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The split form `x₁x₂ + x₃x₄ + …`, with `x_r²` last when the length `r` is odd.
pub fn split_form(x: &[RingElement]) -> RingElement {
    let ring = x.first().map(RingElement::ring).unwrap_or_else(Ring::integers);
    let mut acc = ring.zero();
    for pair in x.chunks(2) {
        acc += match pair {
            [a, b] => a * b,
            [a] => a * a,
            _ => unreachable!(),
        };
    }
    acc
}

/// `B₀(x, y) = q₀(x + y) − q₀(x) − q₀(y)`.
pub fn split_polar(x: &[RingElement], y: &[RingElement]) -> RingElement {
    let sum: Vec<RingElement> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    split_form(&sum) - split_form(x) - split_form(y)
}

/// Clifford root element `1 + p e∓` in a space built by [`QuadraticSpace::split`].
pub fn split_root(space: &Arc<QuadraticSpace>, plus: bool, p: &[RingElement]) -> CliffordElement {
    let n = space.rank();
    let mut full = vec![space.ring.zero(); n];
    full[1..n - 1].clone_from_slice(p);
    let e = CliffordElement::generator(space, if plus { 0 } else { n - 1 });
    &CliffordElement::one(space) + &CliffordElement::vector(space, &full).mul(&e)
}

/// Associativity, `v² = q(v)`, the involution, and the root subgroups of the
/// split spaces used by the Spin realizations.
pub fn clifford_suite<R: Rng + ?Sized>(ring: &Ring, trials: usize, rng: &mut R) -> Result<CheckLog> {
    let mut log = CheckLog::new();
    let mut spaces = Vec::new();
    for r in 1..=5 {
        spaces.push((format!("split M0 rank {r}"), QuadraticSpace::split(ring, r)?));
    }
    spaces.push(("hyperbolic rank 8".to_string(), QuadraticSpace::hyperbolic(ring, 4)?));
    for (name, space) in &spaces {
        let n = space.rank();
        let one = CliffordElement::one(space);
        for _ in 0..trials {
            let a = CliffordElement::sample(space, rng);
            let b = CliffordElement::sample(space, rng);
            let c = CliffordElement::sample(space, rng);
            let v: Vec<RingElement> = (0..n).map(|_| ring.sample(rng)).collect();
            let wit = || vec![("space", name.clone()), ("a", a.to_string()), ("b", b.to_string()), ("c", c.to_string())];
            log.record(&format!("{name}: (ab)c = a(bc)"), a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), wit);
            log.record(&format!("{name}: 1a = a1 = a"), one.mul(&a) == a && a.mul(&one) == a, wit);
            let vv = CliffordElement::vector(space, &v);
            log.record(
                &format!("{name}: v^2 = q(v)"),
                vv.mul(&vv) == CliffordElement::scalar(space, &space.q_of(&v)),
                || vec![("space", name.clone()), ("v", vv.to_string())],
            );
            log.record(
                &format!("{name}: α(ab) = α(b)α(a)"),
                a.mul(&b).main_involution() == b.main_involution().mul(&a.main_involution()),
                wit,
            );
            log.record(&format!("{name}: α(α(a)) = a"), a.main_involution().main_involution() == a, wit);
            let (ae, be) = (a.even_part(), b.even_part());
            log.record(&format!("{name}: even part is closed"), ae.mul(&be).is_even(), wit);
            if name.starts_with("split") {
                let p: Vec<RingElement> = (0..n - 2).map(|_| ring.sample(rng)).collect();
                let p2: Vec<RingElement> = (0..n - 2).map(|_| ring.sample(rng)).collect();
                let sum: Vec<RingElement> = p.iter().zip(&p2).map(|(x, y)| x + y).collect();
                let pw = || vec![("space", name.clone()), ("p", format!("{p:?}")), ("p2", format!("{p2:?}"))];
                for plus in [true, false] {
                    let sign = if plus { "+" } else { "-" };
                    let t = split_root(space, plus, &p);
                    log.record(
                        &format!("{name}: t{sign}(p)t{sign}(p') = t{sign}(p+p')"),
                        t.mul(&split_root(space, plus, &p2)) == split_root(space, plus, &sum),
                        pw,
                    );
                    log.record(&format!("{name}: t{sign}(p) is in Spin"), t.spin_check(), pw);
                }
            }
        }
    }
    Ok(log)
}
