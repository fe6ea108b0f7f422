//! Weyl triples `t₊(x) t₋(y) t₊(z)`, their squares, and the conjugation
//! action on root parameters.
//!
//! Every closed-form statement is also checked extensionally: a triple is
//! Weyl when conjugation by `w` sends sampled elements of `U^±` into `U^∓`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::albert::AlbertElement;
use crate::clifford::{split_form, split_polar, CliffordElement};
use crate::error::{Error, Result};
use crate::freudenthal::{FAutomorphism, FVector};
use crate::groups::{GroupElement, Kind, Param, Realization};
use crate::matrix::Matrix;
use crate::report::CheckLog;
use crate::ring::{Ring, RingElement};
use crate::root_data::{coroot_pairing, RootSystem, RootType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub x: Param,
    pub y: Param,
    pub z: Param,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t+({}) t-({}) t+({})", self.x, self.y, self.z)
    }
}

/// A constructed Weyl element with its factors.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub triple: Triple,
    pub g1: GroupElement,
    pub g2: GroupElement,
    pub g3: GroupElement,
    pub w: GroupElement,
    pub w_inv: GroupElement,
}

/// Result of [`is_weyl_triple`]: both routes agreed on `weyl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCheck {
    pub weyl: bool,
    pub diagnosis: String,
}

fn matrix_inverse(m: &Matrix) -> Option<Matrix> {
    m.try_inverse()
}

/// `q₀(x)` and its inverse, if a unit.
fn q0_unit(x: &[RingElement]) -> Option<(RingElement, RingElement)> {
    let q = split_form(x);
    q.try_invert().map(|inv| (q, inv))
}

/// Whether `x` lies on the constructible locus: `x` invertible, `q₀(x)` a
/// unit, `N(x)` a unit, or `y(xz − y)` a unit for the `BC₁` triple.
pub fn unit_condition(real: &Realization, x: &Param) -> bool {
    completion(real, x).is_some()
}

/// The unique `(y, z)` completing `t₊(x)` to a Weyl triple, from the closed-form
/// criterion. For the adjoint `SO₃` this is the completion with `u = v = 0`;
/// there it is not unique when `2` is a zero divisor.
pub fn completion(real: &Realization, x: &Param) -> Option<(Param, Param)> {
    let m1 = -real.ring().one();
    match real.kind() {
        Kind::Sl(_) | Kind::Sp(_) | Kind::SpinDd(_) => {
            let inv = matrix_inverse(x.as_matrix())?;
            Some((Param::Matrix(inv.scale(&m1)), x.clone()))
        }
        Kind::SpinB(_) | Kind::SpinD1(_) => {
            let (_, qi) = q0_unit(x.as_vector())?;
            Some((x.scale(&qi), x.clone()))
        }
        Kind::E7 => {
            let inv = x.as_albert().try_invert()?;
            Some((Param::Albert(-&inv), x.clone()))
        }
        Kind::So3Adj => {
            let inv = x.as_scalar().try_invert()?;
            Some((Param::Scalar(-inv), x.clone()))
        }
        Kind::Sl3Bc1 => {
            let [a, b, c] = x.as_triple().clone();
            let d = &a * &c - &b;
            let (bi, di) = (b.try_invert()?, d.try_invert()?);
            let y = [-(&c * &di), di.clone(), -(&a * &bi)];
            let z = [&a * &d * &bi, b.clone(), &b * &c * &di];
            Some((Param::Triple(y), Param::Triple(z)))
        }
    }
}

/// Alias of [`completion`] under the name used for unique Weyl extensions.
pub fn unique_extension(real: &Realization, x: &Param) -> Option<(Param, Param)> {
    completion(real, x)
}

/// The closed-form criterion for `t₊(x) t₋(y) t₊(z)` to be Weyl.
pub fn criterion(real: &Realization, t: &Triple) -> bool {
    if real.kind() == Kind::So3Adj {
        let Some(yi) = t.y.as_scalar().try_invert() else { return false };
        let x0 = -yi;
        let two = real.ring().int(2);
        let small = |u: &RingElement| (u * u).is_zero() && (&two * u).is_zero();
        return small(&(t.x.as_scalar() - &x0)) && small(&(t.z.as_scalar() - &x0));
    }
    match completion(real, &t.x) {
        Some((y, z)) => y == t.y && z == t.z,
        None => false,
    }
}

/// `w t_±(p) w⁻¹`, and its parameter if it lies in `U^∓`.
pub fn conjugate_root(real: &Realization, we: &WeylElement, plus: bool, p: &Param) -> Result<Option<Param>> {
    let t = real.root_element(plus, p)?;
    let c = real.product(&[&we.w, &t, &we.w_inv]);
    Ok(real.extract_root(!plus, &c))
}

fn assemble(real: &Realization, t: &Triple) -> Result<WeylElement> {
    let g1 = real.root_element(true, &t.x)?;
    let g2 = real.root_element(false, &t.y)?;
    let g3 = real.root_element(true, &t.z)?;
    let w = real.product(&[&g1, &g2, &g3]);
    let w_inv = real.product(&[&real.inverse(&g3)?, &real.inverse(&g2)?, &real.inverse(&g1)?]);
    Ok(WeylElement { triple: t.clone(), g1, g2, g3, w, w_inv })
}

/// Both routes of the Weyl test; an [`Error::Internal`] if they disagree.
pub fn is_weyl_triple(real: &Realization, t: &Triple, probes: &[Param]) -> Result<TripleCheck> {
    let closed = criterion(real, t);
    let we = assemble(real, t)?;
    let mut failure = None;
    // A zero probe says nothing, and small rings sample zero often.
    let fixed = default_x(real);
    'outer: for p in std::iter::once(&fixed).chain(probes) {
        for plus in [true, false] {
            if conjugate_root(real, &we, plus, p)?.is_none() {
                failure = Some(format!("w t{}({p}) w^-1 is not in U{}", sign(plus), sign(!plus)));
                break 'outer;
            }
        }
    }
    let extensional = failure.is_none();
    if closed != extensional {
        return Err(Error::Internal(format!(
            "closed-form criterion says {closed} but conjugation says {extensional} for {t} in {}",
            real.kind()
        )));
    }
    let diagnosis = failure.unwrap_or_else(|| if closed { "swaps U+ and U-".into() } else { "no probes".into() });
    Ok(TripleCheck { weyl: closed, diagnosis })
}

fn sign(plus: bool) -> &'static str {
    if plus {
        "+"
    } else {
        "-"
    }
}

/// `w = t₊(x) t₋(y) t₊(z)` with `(y, z)` from [`completion`], or `None`
/// off the constructible locus.
pub fn build_weyl(real: &Realization, x: &Param) -> Result<Option<WeylElement>> {
    let Some((y, z)) = completion(real, x) else { return Ok(None) };
    assemble(real, &Triple { x: x.clone(), y, z }).map(Some)
}

/// Builds `t₊(x) t₋(y) t₊(z)` for an explicit triple without checking it.
pub fn build_triple(real: &Realization, t: &Triple) -> Result<WeylElement> {
    assemble(real, t)
}

/// The conjugation formulas in closed form, where they are known:
/// `−x⁻¹px⁻¹` / `−xpx` for the matrix kinds, the `B₀`–`q₀` expressions for
/// split Spin, and `−U_{x⁻¹}(a)` / `−U_x(a)` for `E₇`.
pub fn closed_conjugate(real: &Realization, x: &Param, plus: bool, p: &Param) -> Option<Param> {
    match real.kind() {
        Kind::Sl(_) | Kind::Sp(_) | Kind::SpinDd(_) => {
            let (xm, pm) = (x.as_matrix(), p.as_matrix());
            let m = if plus {
                let xi = matrix_inverse(xm)?;
                &(&xi * pm) * &xi
            } else {
                &(xm * pm) * xm
            };
            Some(Param::Matrix(-&m))
        }
        Kind::SpinB(_) | Kind::SpinD1(_) => {
            let (xv, a) = (x.as_vector(), p.as_vector());
            let (q, qi) = q0_unit(xv)?;
            let b = split_polar(xv, a);
            let out = if plus {
                let c1 = &qi * &qi * &b;
                xv.iter().zip(a).map(|(xi, ai)| &c1 * xi - &qi * ai).collect()
            } else {
                xv.iter().zip(a).map(|(xi, ai)| &b * xi - &q * ai).collect()
            };
            Some(Param::Vector(out))
        }
        Kind::E7 => {
            let (xa, a) = (x.as_albert(), p.as_albert());
            let u = if plus { xa.try_invert()?.u_op(a) } else { xa.u_op(a) };
            Some(Param::Albert(-&u))
        }
        Kind::So3Adj | Kind::Sl3Bc1 => None,
    }
}

/// The parameter `f(p)` with `w t_±(p) w⁻¹ = t_∓(f(p))`, found by computing the
/// conjugate; checked against [`closed_conjugate`] when a closed form exists.
pub fn weyl_conjugate_root(real: &Realization, we: &WeylElement, plus: bool, p: &Param) -> Result<Param> {
    let found = conjugate_root(real, we, plus, p)?.ok_or_else(|| {
        Error::Internal(format!("w t{}({p}) w^-1 is not a root element of U{}", sign(plus), sign(!plus)))
    })?;
    if let Some(expected) = closed_conjugate(real, &we.triple.x, plus, p) {
        if expected != found {
            return Err(Error::Internal(format!(
                "conjugation of t{}({p}): computed {found}, closed form {expected}",
                sign(plus)
            )));
        }
    }
    Ok(found)
}

/// `w²`, whether it equals `α∨(−1)`, and whether it commutes with the probes.
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub square: GroupElement,
    pub equals_coroot: Option<bool>,
    pub central: bool,
}

pub fn weyl_square(real: &Realization, we: &WeylElement, probes: &[GroupElement]) -> SquareReport {
    let square = real.mul(&we.w, &we.w);
    let equals_coroot = real.coroot_minus_one().map(|c| c == square);
    let central = probes.iter().all(|g| real.mul(&square, g) == real.mul(g, &square));
    SquareReport { square, equals_coroot, central }
}

/// The default constructible point of each kind: `x = I`, `q₀(x) = 1`,
/// `x = e₁₂ − e₂₁ + e₃₄ − e₄₃`, `x = 1`, or `(1, 1, 2)`.
pub fn default_x(real: &Realization) -> Param {
    let ring = real.ring();
    match real.kind() {
        Kind::Sl(d) | Kind::Sp(d) => Param::Matrix(Matrix::identity(ring, d)),
        Kind::SpinDd(d) => {
            let mut m = Matrix::zeros(ring, d, d);
            for k in (0..d).step_by(2) {
                m.set(k, k + 1, ring.one());
                m.set(k + 1, k, -ring.one());
            }
            Param::Matrix(m)
        }
        Kind::SpinB(_) | Kind::SpinD1(_) => {
            let Param::Vector(mut v) = real.zero_param() else { unreachable!() };
            v[0] = ring.one();
            if v.len() > 1 {
                v[1] = ring.one();
            }
            Param::Vector(v)
        }
        Kind::E7 => Param::Albert(AlbertElement::one(ring)),
        Kind::So3Adj => Param::Scalar(ring.one()),
        Kind::Sl3Bc1 => Param::Triple([ring.one(), ring.one(), ring.int(2)]),
    }
}

/// Samples a constructible `x`, falling back to [`default_x`] after 200 misses.
pub fn sample_constructible<R: Rng + ?Sized>(real: &Realization, rng: &mut R) -> Param {
    for _ in 0..200 {
        let x = real.sample_param(rng);
        if unit_condition(real, &x) {
            return x;
        }
    }
    default_x(real)
}

/// The element form of `w` given by the closed formulas, where one exists:
/// `x e₋ + q₀(x)⁻¹ x e₊` for split Spin, the displayed antidiagonal matrix for
/// the `BC₁` triple.
pub fn displayed_w(real: &Realization, x: &Param) -> Option<GroupElement> {
    match real.kind() {
        Kind::SpinB(_) | Kind::SpinD1(_) => {
            let s = real.space()?;
            let n = s.rank();
            let (_, qi) = q0_unit(x.as_vector())?;
            let mut full = vec![real.ring().zero(); n];
            full[1..n - 1].clone_from_slice(x.as_vector());
            let xv = CliffordElement::vector(s, &full);
            let em = CliffordElement::generator(s, 0);
            let ep = CliffordElement::generator(s, n - 1);
            Some(GroupElement::Clifford(&xv.mul(&em) + &xv.mul(&ep).scale(&qi)))
        }
        Kind::Sl3Bc1 => {
            let [a, b, c] = x.as_triple().clone();
            let d = &a * &c - &b;
            let (bi, di) = (b.try_invert()?, d.try_invert()?);
            let z = real.ring().zero();
            Some(GroupElement::Matrix(
                Matrix::from_rows(vec![
                    vec![z.clone(), z.clone(), b.clone()],
                    vec![z.clone(), -(&d * &bi), z.clone()],
                    vec![di, z.clone(), z],
                ])
                .ok()?,
            ))
        }
        _ => None,
    }
}

/// `w(r,b,s,c,t) = (−N t, −N U_{x⁻¹}(c), s + T(b,c) + rt, N⁻¹U_x(b), N⁻¹r)`.
pub fn e7_weyl_action(x: &AlbertElement, v: &FVector) -> Option<FVector> {
    let n = x.norm();
    let ni = n.try_invert()?;
    let xi = x.try_invert()?;
    Some(FVector::new(
        -(&n * &v.t),
        -&xi.u_op(&v.c).scale(&n),
        &v.s + v.b.trace_form(&v.c) + &v.r * &v.t,
        x.u_op(&v.b).scale(&ni),
        &ni * &v.r,
    ))
}

/// The identities around a Weyl triple `w = g₁g₂g₃`: `g₁^w, ʷg₃ ∈ U₋` with
/// `w = g₂ g₃ g₁^w = ʷg₃ g₁ g₂`, `w⁻¹ = g₃⁻¹g₂⁻¹g₁⁻¹` is again a Weyl triple,
/// and `w` inverts the torus.
pub fn weyl_identities_check(
    real: &Realization,
    we: &WeylElement,
    lambdas: &[RingElement],
    probes: &[Param],
    log: &mut CheckLog,
) -> Result<()> {
    let name = real.kind();
    let g1w = real.product(&[&we.w_inv, &we.g1, &we.w]);
    let wg3 = real.product(&[&we.w, &we.g3, &we.w_inv]);
    let wit = || vec![("triple", we.triple.to_string())];
    log.record(&format!("{name}: g1^w and w·g3 lie in U-"), real.extract_root(false, &g1w).is_some() && real.extract_root(false, &wg3).is_some(), wit);
    log.record(&format!("{name}: w = g2 g3 g1^w"), real.product(&[&we.g2, &we.g3, &g1w]) == we.w, wit);
    log.record(&format!("{name}: w = (w·g3) g1 g2"), real.product(&[&wg3, &we.g1, &we.g2]) == we.w, wit);
    let inv = Triple { x: we.triple.z.neg(), y: we.triple.y.neg(), z: we.triple.x.neg() };
    let check = is_weyl_triple(real, &inv, probes)?;
    log.record(&format!("{name}: w^-1 = g3^-1 g2^-1 g1^-1 is a Weyl triple"), check.weyl, wit);
    for lam in lambdas {
        let h = real.torus_element(lam)?;
        let hi = real.torus_element(&lam.try_invert().expect("torus parameters are units"))?;
        log.record(
            &format!("{name}: w h(λ) w^-1 = h(λ^-1)"),
            real.product(&[&we.w, &h, &we.w_inv]) == hi,
            || vec![("triple", we.triple.to_string()), ("lambda", lam.to_string())],
        );
    }
    Ok(())
}

/// Number of sampled group elements a square is tested against for centrality.
pub const CENTRALITY_PROBES: usize = 50;

/// [`CENTRALITY_PROBES`] root elements, alternating between `U₊` and `U₋`.
pub fn centrality_probes<R: Rng + ?Sized>(real: &Realization, rng: &mut R) -> Result<Vec<GroupElement>> {
    (0..CENTRALITY_PROBES).map(|i| real.root_element(i % 2 == 0, &real.sample_param(rng))).collect()
}

/// The per-realization Weyl suite: `trials` constructible samples, each with
/// `probes` root parameters per sign.
pub fn weyl_suite<R: Rng + ?Sized>(real: &Realization, trials: usize, probes: usize, rng: &mut R) -> Result<CheckLog> {
    let mut log = CheckLog::new();
    let name = real.kind();
    let ring = real.ring().clone();
    let mut xs = vec![default_x(real)];
    xs.extend((0..trials).map(|_| sample_constructible(real, rng)));
    for x in xs {
        let ps: Vec<Param> = (0..probes).map(|_| real.sample_param(rng)).collect();
        let wit = || vec![("x", x.to_string())];
        let Some(we) = build_weyl(real, &x)? else {
            log.fail(&format!("{name}: sampled x is constructible"), x.to_string());
            continue;
        };
        let check = is_weyl_triple(real, &we.triple, &ps)?;
        log.record(&format!("{name}: t+(x) t-(y) t+(z) is Weyl by criterion and by conjugation"), check.weyl, wit);
        log.record(
            &format!("{name}: factors lie in U+, U-, U+"),
            real.in_parabolic(&we.g1, true)? && real.in_parabolic(&we.g2, false)? && real.in_parabolic(&we.g3, true)?,
            wit,
        );
        log.record(&format!("{name}: w is in the group"), real.is_member(&we.w)?, wit);

        let wrong_y = we.triple.y.add(false, &real.sample_param(rng));
        if wrong_y != we.triple.y {
            let bad = Triple { y: wrong_y, ..we.triple.clone() };
            let check = is_weyl_triple(real, &bad, &ps);
            log.record(&format!("{name}: perturbed triple is judged alike by both routes"), check.is_ok(), || {
                vec![("triple", bad.to_string()), ("error", check.err().map(|e| e.to_string()).unwrap_or_default())]
            });
        }

        let has_closed = closed_conjugate(real, &x, true, &real.zero_param()).is_some();
        for plus in [true, false] {
            for p in &ps {
                let res = weyl_conjugate_root(real, &we, plus, p);
                let what = if has_closed { "with f in closed form" } else { "for some f" };
                log.record(
                    &format!("{name}: w t{}(p) w^-1 = t{}(f(p)) {what}", sign(plus), sign(!plus)),
                    res.is_ok(),
                    || vec![("x", x.to_string()), ("p", p.to_string()), ("error", res.err().map(|e| e.to_string()).unwrap_or_default())],
                );
            }
        }

        let root_probes = centrality_probes(real, rng)?;
        let sq = weyl_square(real, &we, &root_probes);
        if let Some(eq) = sq.equals_coroot {
            log.record(&format!("{name}: w^2 = coroot(-1)"), eq, || vec![("x", x.to_string()), ("w^2", sq.square.to_string())]);
            log.record(&format!("{name}: w^2 commutes with root elements"), sq.central, wit);
        }

        if let Some(dw) = displayed_w(real, &x) {
            log.record(&format!("{name}: w matches its displayed form"), dw == we.w, wit);
        }
        if real.kind() == Kind::E7 {
            let v = FVector::sample(&ring, rng);
            let ok = e7_weyl_action(x.as_albert(), &v).as_ref() == Some(&we.w.as_e7().apply(&v));
            log.record(&format!("{name}: w acts by the displayed formula"), ok, wit);
        }
        let lambdas = vec![ring.sample_unit(rng), ring.sample_unit(rng)];
        weyl_identities_check(real, &we, &lambdas, &ps, &mut log)?;
    }
    Ok(log)
}

/// Cases of the square formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareCase {
    Even,
    OddReduced,
    OddDoubled,
}

impl SquareCase {
    pub fn of(parity: i64, doubled_is_root: bool) -> Self {
        match (parity % 2 == 0, doubled_is_root) {
            (true, _) => SquareCase::Even,
            (false, false) => SquareCase::OddReduced,
            (false, true) => SquareCase::OddDoubled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareVerdict {
    pub alpha: String,
    pub beta: String,
    pub parity: i64,
    pub case: SquareCase,
    /// Pairs `(p, w² · p)` observed on sampled parameters.
    pub observed: Vec<(String, String)>,
    pub holds: bool,
}

/// `I + p E_ij` in `SL_n`.
pub fn sl_root(ring: &Ring, n: usize, i: usize, j: usize, p: &RingElement) -> Matrix {
    let mut m = Matrix::identity(ring, n);
    m.set(i, j, p.clone());
    m
}

/// `t_ij(u) t_ji(−u⁻¹) t_ij(u)`.
pub fn sl_weyl(ring: &Ring, n: usize, i: usize, j: usize, u: &RingElement) -> Matrix {
    let ui = u.try_invert().expect("Weyl parameter must be a unit");
    let a = sl_root(ring, n, i, j, u);
    &(&a * &sl_root(ring, n, j, i, &-ui)) * &a
}

/// The square formula in `SL₃` for all pairs of roots, and in the `BC₁`
/// triple model for the long root acting on the ultrashort and long parameters.
pub fn square_formula_check<R: Rng + ?Sized>(
    ring: &Ring,
    trials: usize,
    rng: &mut R,
) -> Result<(CheckLog, Vec<SquareVerdict>)> {
    let mut log = CheckLog::new();
    let mut verdicts = Vec::new();
    let a2 = RootSystem::build(RootType::A, 2)?;
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    for &(ai, aj) in &pairs {
        let alpha = a2.vector(&[(1, ai), (-1, aj)]);
        let u = ring.sample_unit(rng);
        let w = sl_weyl(ring, 3, ai, aj, &u);
        let w2 = &w * &w;
        let w2i = w2.try_inverse().expect("w^2 is invertible");
        for &(bi, bj) in &pairs {
            let beta = a2.vector(&[(1, bi), (-1, bj)]);
            let parity = coroot_pairing(&beta, &alpha)?;
            let case = SquareCase::of(parity, a2.contains(&beta.scale(2)));
            let mut observed = Vec::new();
            let mut holds = true;
            for _ in 0..trials {
                let p = ring.sample(rng);
                let conj = &(&w2 * &sl_root(ring, 3, bi, bj, &p)) * &w2i;
                let q = conj.get(bi, bj).clone();
                let expected = if case == SquareCase::Even { p.clone() } else { -&p };
                let ok = conj == sl_root(ring, 3, bi, bj, &q) && q == expected;
                holds &= ok;
                log.record(
                    &format!("SL3: w_a^2 acts on t_b by the parity of <b, a^v> (case {case:?})"),
                    ok,
                    || vec![("alpha", a2.label(&alpha)), ("beta", a2.label(&beta)), ("p", p.to_string()), ("image", q.to_string())],
                );
                if observed.len() < 3 {
                    observed.push((p.to_string(), q.to_string()));
                }
            }
            verdicts.push(SquareVerdict { alpha: a2.label(&alpha), beta: a2.label(&beta), parity, case, observed, holds });
        }
    }

    let bc = RootSystem::build(RootType::BC, 1)?;
    let short = bc.vector(&[(1, 1)]);
    let long = short.scale(2);
    let real = Realization::new(Kind::Sl3Bc1, ring)?;
    for _ in 0..trials.max(1) {
        let y = ring.sample_unit(rng);
        let z = ring.zero();
        let x = Param::Triple([z.clone(), y.clone(), z.clone()]);
        let xm = Param::Triple([z.clone(), -y.try_invert().expect("unit"), z.clone()]);
        let we = build_triple(&real, &Triple { x: x.clone(), y: xm, z: x })?;
        let w2 = real.mul(&we.w, &we.w);
        let w2i = real.inverse(&w2)?;
        for (beta, plus) in [(short.clone(), true), (long.clone(), true), (short.scale(-1), false), (long.scale(-1), false)] {
            let parity = coroot_pairing(&beta, &long)?;
            let case = SquareCase::of(parity, bc.contains(&beta.scale(2)));
            let p = if beta == long || beta == long.scale(-1) {
                Param::Triple([z.clone(), ring.sample(rng), z.clone()])
            } else {
                real.sample_param(rng)
            };
            let conj = real.product(&[&w2, &real.root_element(plus, &p)?, &w2i]);
            let got = real.extract_root(plus, &conj);
            let m1 = -ring.one();
            let expected = match case {
                SquareCase::Even => p.clone(),
                SquareCase::OddReduced => p.neg(),
                SquareCase::OddDoubled => p.scale(&m1),
            };
            let ok = got.as_ref() == Some(&expected);
            log.record(
                &format!("BC1: long-root w^2 acts on t_b by case {case:?}"),
                ok,
                || vec![("beta", bc.label(&beta)), ("p", p.to_string()), ("image", format!("{got:?}"))],
            );
            if verdicts.iter().all(|v| v.beta != bc.label(&beta) || v.alpha != bc.label(&long)) {
                verdicts.push(SquareVerdict {
                    alpha: bc.label(&long),
                    beta: bc.label(&beta),
                    parity,
                    case,
                    observed: vec![(p.to_string(), got.map(|g| g.to_string()).unwrap_or_default())],
                    holds: ok,
                });
            }
        }
    }
    Ok((log, verdicts))
}

/// Braid relations in `SL₃` (`m = 3`) and commuting Weyl elements of
/// orthogonal roots in `SL₄` (`m = 2`), for sampled unit parameters.
pub fn braid_check<R: Rng + ?Sized>(ring: &Ring, trials: usize, rng: &mut R) -> CheckLog {
    let mut log = CheckLog::new();
    for k in 0..trials.max(1) {
        let (u, v) = if k == 0 { (ring.one(), ring.one()) } else { (ring.sample_unit(rng), ring.sample_unit(rng)) };
        let wa = sl_weyl(ring, 3, 0, 1, &u);
        let wb = sl_weyl(ring, 3, 1, 2, &v);
        log.record(
            "SL3: w_a(u) w_b(v) w_a(u) = w_b(v) w_a(u) w_b(v)",
            &(&wa * &wb) * &wa == &(&wb * &wa) * &wb,
            || vec![("u", u.to_string()), ("v", v.to_string())],
        );
        let wa = sl_weyl(ring, 4, 0, 1, &u);
        let wc = sl_weyl(ring, 4, 2, 3, &v);
        log.record("SL4: w_{e0-e1} and w_{e2-e3} commute", &wa * &wc == &wc * &wa, || {
            vec![("u", u.to_string()), ("v", v.to_string())]
        });
    }
    log
}

/// Displayed `w` and `w²` for `t₊(x+u) t₋(−x⁻¹) t₊(x+v)` in the adjoint `SO₃`.
pub fn so3_displayed(x: &RingElement, u: &RingElement, v: &RingElement) -> Option<(Matrix, Matrix)> {
    let ring = x.ring();
    let xi = x.try_invert()?;
    let xi2 = &xi * &xi;
    let (z, one) = (ring.zero(), ring.one());
    let w = Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), -(x * x)],
        vec![u * &xi2, -one.clone(), v.clone()],
        vec![-&xi2, z.clone(), z.clone()],
    ])
    .ok()?;
    let uv = u + v;
    let w2 = Matrix::from_rows(vec![
        vec![one.clone(), z.clone(), z.clone()],
        vec![&uv * &xi2, one.clone(), uv.clone()],
        vec![z.clone(), z, one],
    ])
    .ok()?;
    Some((w, w2))
}

/// Whether `t₋(a)` conjugates every `t₊(x)`, `x ∈ xs`, into `U₊`.
pub fn so3_normalizes(real: &Realization, a: &RingElement, xs: &[RingElement]) -> Result<bool> {
    let t = real.root_element(false, &Param::Scalar(a.clone()))?;
    let ti = real.inverse(&t)?;
    for x in xs {
        let c = real.product(&[&t, &real.root_element(true, &Param::Scalar(x.clone()))?, &ti]);
        if real.extract_root(true, &c).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The adjoint `SO₃` exception: `t₋(a)` normalizes `U₊` exactly when
/// `a² = 2a = 0`; the displayed `w`, `w²` agree with the products; and the
/// example `u = 2, v = 0, x = 1` over `ℤ/4` has `w² ≠ I`.
pub fn so3_normalizer_check<R: Rng + ?Sized>(ring: &Ring, trials: usize, rng: &mut R) -> Result<CheckLog> {
    let mut log = CheckLog::new();
    let real = Realization::new(Kind::So3Adj, ring)?;
    let two = ring.int(2);
    let small = |a: &RingElement| (a * a).is_zero() && (&two * a).is_zero();
    let candidates: Vec<RingElement> = match ring.elements() {
        Some(all) => all,
        None => {
            let mut v = vec![ring.zero(), ring.one(), ring.int(2)];
            v.extend((0..trials).map(|_| ring.sample(rng)));
            v
        }
    };
    let mut xs = vec![ring.one()];
    xs.extend((0..3).map(|_| ring.sample(rng)));
    for a in &candidates {
        let ok = so3_normalizes(&real, a, &xs)? == small(a);
        log.record("t-(a) normalizes U+ iff a^2 = 2a = 0", ok, || vec![("a", a.to_string())]);
    }
    let smalls: Vec<RingElement> = candidates.iter().filter(|a| small(a)).cloned().collect();
    if ring.elements().is_none() {
        log.assert("over an infinite domain only a = 0 normalizes", smalls.iter().all(RingElement::is_zero));
    }
    for _ in 0..trials.max(1) {
        let x = ring.sample_unit(rng);
        for u in &smalls {
            for v in &smalls {
                let wit = || vec![("x", x.to_string()), ("u", u.to_string()), ("v", v.to_string())];
                let xi = x.try_invert().expect("unit");
                let t = Triple { x: Param::Scalar(&x + u), y: Param::Scalar(-xi), z: Param::Scalar(&x + v) };
                let we = build_triple(&real, &t)?;
                let (dw, dw2) = so3_displayed(&x, u, v).expect("x is a unit");
                log.record("w = t+(x+u) t-(-x^-1) t+(x+v) matches the displayed matrix", *we.w.as_matrix() == dw, wit);
                let w2 = we.w.as_matrix() * we.w.as_matrix();
                log.record("w^2 matches the displayed matrix", w2 == dw2, wit);
                log.record("w^2 = I iff u + v = 0", w2.is_identity() == (u + v).is_zero(), wit);
                let probes = vec![real.sample_param(rng), Param::Scalar(ring.one())];
                log.record("t+(x+u) t-(-x^-1) t+(x+v) is Weyl", is_weyl_triple(&real, &t, &probes)?.weyl, wit);
            }
        }
    }
    let z4 = Ring::modular(4)?;
    let so3_4 = Realization::new(Kind::So3Adj, &z4)?;
    log.assert("over Z/4, t-(2) normalizes U+", so3_normalizes(&so3_4, &z4.int(2), &[z4.one()])?);
    let t = Triple { x: Param::Scalar(z4.int(3)), y: Param::Scalar(-z4.one()), z: Param::Scalar(z4.one()) };
    let w = build_triple(&so3_4, &t)?.w;
    let w2 = w.as_matrix() * w.as_matrix();
    let expect = Matrix::from_ints(&z4, &[&[1, 0, 0], &[2, 1, 2], &[0, 0, 1]])?;
    log.assert("over Z/4 with u = 2, v = 0, x = 1: w^2 = [[1,0,0],[2,1,2],[0,0,1]] != I", w2 == expect && !w2.is_identity());
    let q = Ring::rationals();
    let so3_q = Realization::new(Kind::So3Adj, &q)?;
    log.assert("over Q, t-(1) does not normalize U+", !so3_normalizes(&so3_q, &q.one(), &[q.one()])?);
    Ok(log)
}

/// Outcome of the ultrashort example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bc1Report {
    pub x: String,
    pub y: String,
    pub z: String,
    pub constructible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_squared: Option<String>,
    pub w_matches_display: bool,
    pub square_matches_display: bool,
    pub is_weyl: bool,
    pub square_central: bool,
}

/// Builds the Weyl triple of `t₊(x, y, z)` in the `BC₁` model, compares `w`
/// and `w²` with the displayed matrices, and tests whether `w²` is central.
pub fn bc1_counterexample<R: Rng + ?Sized>(
    ring: &Ring,
    x: &RingElement,
    y: &RingElement,
    z: &RingElement,
    rng: &mut R,
) -> Result<Bc1Report> {
    let real = Realization::new(Kind::Sl3Bc1, ring)?;
    let p = Param::Triple([x.clone(), y.clone(), z.clone()]);
    let mut report = Bc1Report {
        x: x.to_string(),
        y: y.to_string(),
        z: z.to_string(),
        constructible: false,
        w: None,
        w_squared: None,
        w_matches_display: false,
        square_matches_display: false,
        is_weyl: false,
        square_central: false,
    };
    let Some(we) = build_weyl(&real, &p)? else { return Ok(report) };
    report.constructible = true;
    let w = we.w.as_matrix();
    let w2 = w * w;
    let d = x * z - y;
    let ratio = y * &d.try_invert().expect("unit by construction");
    let yi = y.try_invert().expect("unit by construction");
    let display_w2 = Matrix::diagonal(&[ratio.clone(), &d * &d * &yi * &yi, ratio]);
    report.w_matches_display = displayed_w(&real, &p).as_ref() == Some(&we.w);
    report.square_matches_display = w2 == display_w2;
    let mut probes = vec![real.sample_param(rng), Param::Triple([ring.one(), ring.zero(), ring.zero()])];
    probes.push(real.sample_param(rng));
    report.is_weyl = is_weyl_triple(&real, &we.triple, &probes)?.weyl;
    let mut elems = Vec::new();
    for q in &probes {
        elems.push(real.root_element(true, q)?);
        elems.push(real.root_element(false, q)?);
    }
    let w2g = GroupElement::Matrix(w2.clone());
    report.square_central = elems.iter().all(|g| real.mul(&w2g, g) == real.mul(g, &w2g));
    report.w = Some(w.to_string());
    report.w_squared = Some(w2.to_string());
    Ok(report)
}

/// Compares [`unique_extension`] with an exhaustive search over all `(y, z)`
/// in `SL₂` over a finite ring.
pub fn unique_extension_bruteforce(ring: &Ring) -> Result<CheckLog> {
    let mut log = CheckLog::new();
    let real = Realization::new(Kind::Sl(1), ring)?;
    let elems = ring.elements().ok_or_else(|| Error::Usage("exhaustive search needs a finite ring".into()))?;
    let scalar = |a: &RingElement| Param::Matrix(Matrix::diagonal(std::slice::from_ref(a)));
    let probes: Vec<Param> = elems.iter().map(scalar).collect();
    for x in &elems {
        let mut found = Vec::new();
        for y in &elems {
            for z in &elems {
                let t = Triple { x: scalar(x), y: scalar(y), z: scalar(z) };
                if is_weyl_triple(&real, &t, &probes)?.weyl {
                    found.push((scalar(y), scalar(z)));
                }
            }
        }
        let expected: Vec<(Param, Param)> = unique_extension(&real, &scalar(x)).into_iter().collect();
        log.record(
            &format!("SL2 over {}: unique_extension agrees with exhaustive search", ring.spec()),
            found == expected,
            || vec![("x", x.to_string()), ("found", format!("{found:?}")), ("expected", format!("{expected:?}"))],
        );
    }
    Ok(log)
}

/// `w` for `E₇` with `x = 1` applied through the table, as a convenience.
pub fn e7_w0(ring: &Ring) -> FAutomorphism {
    let one = AlbertElement::one(ring);
    let p = FAutomorphism::root(true, &one);
    p.compose(&FAutomorphism::root(false, &-&one)).compose(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(5)
    }

    fn scalar(ring: &Ring, a: i64) -> Param {
        Param::Matrix(Matrix::diagonal(&[ring.int(a)]))
    }

    #[test]
    fn sl2_examples() {
        let q = Ring::rationals();
        let real = Realization::new(Kind::Sl(1), &q).unwrap();
        let probes = vec![scalar(&q, 1), scalar(&q, 3)];
        let t = Triple { x: scalar(&q, 1), y: scalar(&q, -1), z: scalar(&q, 1) };
        assert!(is_weyl_triple(&real, &t, &probes).unwrap().weyl);
        let t = Triple { x: scalar(&q, 1), y: scalar(&q, 1), z: scalar(&q, 1) };
        assert!(!is_weyl_triple(&real, &t, &probes).unwrap().weyl);
        let we = build_weyl(&real, &scalar(&q, 1)).unwrap().unwrap();
        assert_eq!(*we.w.as_matrix(), Matrix::from_ints(&q, &[&[0, 1], &[-1, 0]]).unwrap());
        let sq = weyl_square(&real, &we, &[]);
        assert_eq!(sq.equals_coroot, Some(true));
        let (y, z) = unique_extension(&real, &scalar(&q, 2)).unwrap();
        assert_eq!((y, z), (Param::Matrix(Matrix::diagonal(&[q.fraction(-1, 2).unwrap()])), scalar(&q, 2)));
        let zr = Ring::integers();
        let real_z = Realization::new(Kind::Sl(1), &zr).unwrap();
        assert!(unique_extension(&real_z, &scalar(&zr, 2)).is_none());
    }

    #[test]
    fn sl4_conjugation_with_identity() {
        let q = Ring::rationals();
        let real = Realization::new(Kind::Sl(2), &q).unwrap();
        let we = build_weyl(&real, &default_x(&real)).unwrap().unwrap();
        let mut r = rng();
        for plus in [true, false] {
            let p = real.sample_param(&mut r);
            assert_eq!(weyl_conjugate_root(&real, &we, plus, &p).unwrap(), p.neg());
        }
    }

    #[test]
    fn e7_examples() {
        let r = Ring::modular(97).unwrap();
        let real = Realization::new(Kind::E7, &r).unwrap();
        let we = build_weyl(&real, &default_x(&real)).unwrap().unwrap();
        assert_eq!(*we.w.as_e7(), e7_w0(&r));
        let mut g = rng();
        let a = AlbertElement::sample(&r, &mut g);
        let f = weyl_conjugate_root(&real, &we, true, &Param::Albert(a.clone())).unwrap();
        assert_eq!(f, Param::Albert(-&a));
        let sq = weyl_square(&real, &we, &[]);
        assert_eq!(sq.equals_coroot, Some(true));
        let h = real.torus_element(&r.int(5)).unwrap();
        let hi = real.torus_element(&r.int(5).try_invert().unwrap()).unwrap();
        assert_eq!(real.product(&[&we.w, &h, &we.w_inv]), hi);
        let n1 = AlbertElement::diag(r.int(2), r.int(3), r.int(2 * 3).try_invert().unwrap());
        assert!(n1.norm().is_one());
        let (y, z) = unique_extension(&real, &Param::Albert(n1.clone())).unwrap();
        assert_eq!((y, z), (Param::Albert(-&n1.sharp()), Param::Albert(n1)));
    }

    #[test]
    fn spin_examples() {
        let r = Ring::modular(97).unwrap();
        let real = Realization::new(Kind::SpinB(1), &r).unwrap();
        let x = Param::Vector(vec![r.one()]);
        let we = build_weyl(&real, &x).unwrap().unwrap();
        assert_eq!(Some(we.w.clone()), displayed_w(&real, &x));
        assert_eq!(weyl_square(&real, &we, &[]).equals_coroot, Some(true));
        let real = Realization::new(Kind::SpinDd(4), &r).unwrap();
        let we = build_weyl(&real, &default_x(&real)).unwrap().unwrap();
        assert_eq!(we.triple.y, default_x(&real));
        assert_eq!(weyl_square(&real, &we, &[]).equals_coroot, Some(true));
    }

    #[test]
    fn bc1_examples() {
        let q = Ring::rationals();
        let real = Realization::new(Kind::Sl3Bc1, &q).unwrap();
        let (y, z) = completion(&real, &default_x(&real)).unwrap();
        let ints = |v: [i64; 3]| Param::Triple(v.map(|a| q.int(a)));
        assert_eq!((y, z), (ints([-2, 1, -1]), ints([1, 1, 2])));
        let mut g = rng();
        let rep = bc1_counterexample(&q, &q.int(1), &q.int(2), &q.int(5), &mut g).unwrap();
        assert!(rep.constructible && rep.w_matches_display && rep.square_matches_display && rep.is_weyl);
        assert!(!rep.square_central);
        assert_eq!(rep.w_squared.as_deref(), Some("[[2/3, 0, 0], [0, 9/4, 0], [0, 0, 2/3]]"));
        let rep = bc1_counterexample(&q, &q.int(1), &q.int(1), &q.int(2), &mut g).unwrap();
        assert!(rep.square_central && rep.w_squared.as_deref() == Some("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"));
        let rep = bc1_counterexample(&q, &q.int(1), &q.int(1), &q.int(1), &mut g).unwrap();
        assert!(!rep.constructible);
    }

    #[test]
    fn playground_checks() {
        let q = Ring::rationals();
        let mut g = rng();
        let (log, verdicts) = square_formula_check(&q, 5, &mut g).unwrap();
        assert!(log.all_passed(), "{:?}", log.checks());
        let v = verdicts.iter().find(|v| v.alpha == "e0 - e1" && v.beta == "e1 - e2");
        if let Some(v) = v {
            assert_eq!((v.parity, v.case), (-1, SquareCase::OddReduced));
        }
        assert!(verdicts.iter().any(|v| v.case == SquareCase::OddDoubled && v.holds));
        assert!(braid_check(&Ring::modular(97).unwrap(), 10, &mut g).all_passed());
    }

    #[test]
    fn so3_exception() {
        let mut g = rng();
        for ring in [Ring::modular(4).unwrap(), Ring::modular(2).unwrap(), Ring::rationals()] {
            let log = so3_normalizer_check(&ring, 4, &mut g).unwrap();
            assert!(log.all_passed(), "{}: {:?}", ring.spec(), log.checks().iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unique_extension_exhaustive() {
        for n in [2, 3] {
            let log = unique_extension_bruteforce(&Ring::modular(n).unwrap()).unwrap();
            assert!(log.all_passed(), "{:?}", log.checks());
        }
    }

    #[test]
    fn suites_pass_small() {
        let r = Ring::modular(97).unwrap();
        let mut g = rng();
        for kind in Kind::all() {
            let real = Realization::new(kind, &r).unwrap();
            let trials = if kind == Kind::E7 { 2 } else { 4 };
            let log = weyl_suite(&real, trials, 2, &mut g).unwrap();
            assert!(log.all_passed(), "{kind}: {:?}", log.checks().iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        }
    }
}
