//! Rank-one realizations: `SL₂d`, `Sp₂d`, the Spin groups of split forms,
//! `E₇` acting on `W`, the adjoint `SO₃`, and `SL₃` with the `BC₁` grading.
//!
//! Matrix models act on column vectors. For `SL` and `Sp` the basis lists
//! `M₋` before `M₊`, so `t₊(p) = [[I, p], [0, I]]` and `P⁺` is the stabilizer
//! of `M₋`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::albert::AlbertElement;
use crate::clifford::{split_root, CliffordElement, QuadraticSpace};
use crate::error::{config, usage, Error, Result};
use crate::freudenthal::FAutomorphism;
use crate::matrix::Matrix;
use crate::ring::{Ring, RingElement};

/// Largest `d` for `sl`, `sp`, `spindd`; largest `n` for `spinb`, `spind1`.
pub const MAX_D: usize = 4;
pub const MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Sl(usize),
    Sp(usize),
    SpinB(usize),
    SpinD1(usize),
    SpinDd(usize),
    E7,
    So3Adj,
    Sl3Bc1,
}

impl Kind {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Kind::Sl(d) | Kind::Sp(d) => (1..=MAX_D).contains(&d),
            Kind::SpinB(n) => (1..=MAX_N).contains(&n),
            Kind::SpinD1(n) => (3..=MAX_N).contains(&n),
            Kind::SpinDd(d) => d <= MAX_D && d >= 4 && d.is_power_of_two(),
            Kind::E7 | Kind::So3Adj | Kind::Sl3Bc1 => true,
        };
        if ok {
            Ok(self)
        } else {
            config(format!(
                "realization {self} is out of range (sl/sp: 1 ≤ d ≤ {MAX_D}; spinb: 1 ≤ n ≤ {MAX_N}; \
                 spind1: n = 3; spindd: d a power of two with 4 ≤ d ≤ {MAX_D})"
            ))
        }
    }

    /// Whether the root is ultrashort, so the square formula does not apply.
    pub fn is_ultrashort(self) -> bool {
        self == Kind::Sl3Bc1
    }

    /// All selectors accepted by the CLI, at the largest bounds.
    pub fn all() -> Vec<Kind> {
        let mut out = Vec::new();
        out.extend((1..=MAX_D).map(Kind::Sl));
        out.extend((1..=MAX_D).map(Kind::Sp));
        out.extend((1..=MAX_N).map(Kind::SpinB));
        out.push(Kind::SpinD1(3));
        out.push(Kind::SpinDd(4));
        out.extend([Kind::E7, Kind::So3Adj, Kind::Sl3Bc1]);
        out
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Sl(d) => write!(f, "sl:{d}"),
            Kind::Sp(d) => write!(f, "sp:{d}"),
            Kind::SpinB(n) => write!(f, "spinb:{n}"),
            Kind::SpinD1(n) => write!(f, "spind1:{n}"),
            Kind::SpinDd(d) => write!(f, "spindd:{d}"),
            Kind::E7 => write!(f, "e7"),
            Kind::So3Adj => write!(f, "so3adj"),
            Kind::Sl3Bc1 => write!(f, "sl3bc1"),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let num = || -> Result<usize> {
            arg.ok_or_else(|| Error::Usage(format!("realization `{head}` needs a parameter, e.g. {head}:2")))?
                .parse()
                .map_err(|_| Error::Usage(format!("bad realization parameter in `{s}`")))
        };
        let kind = match head {
            "sl" => Kind::Sl(num()?),
            "sp" => Kind::Sp(num()?),
            "spinb" => Kind::SpinB(num()?),
            "spind1" => Kind::SpinD1(num()?),
            "spindd" => Kind::SpinDd(num()?),
            "e7" | "so3adj" | "sl3bc1" if arg.is_some() => {
                return usage(format!("realization `{head}` takes no parameter"))
            }
            "e7" => Kind::E7,
            "so3adj" => Kind::So3Adj,
            "sl3bc1" => Kind::Sl3Bc1,
            _ => {
                return usage(format!(
                    "unknown realization `{s}` (expected sl:d, sp:d, spinb:n, spind1:n, spindd:d, e7, so3adj, sl3bc1)"
                ))
            }
        };
        kind.validate()
    }
}

/// A root-subgroup parameter.
#[derive(Clone, PartialEq, Eq)]
pub enum Param {
    /// `SL`, `Sp` (symmetric), `SpinDd` (alternating).
    Matrix(Matrix),
    /// `M₀` coordinates for `SpinB` and `SpinD1`.
    Vector(Vec<RingElement>),
    Albert(AlbertElement),
    /// `SO₃` with `M = K`.
    Scalar(RingElement),
    /// `(x, y, z)` with `y` central.
    Triple([RingElement; 3]),
}

impl Param {
    pub fn as_matrix(&self) -> &Matrix {
        match self {
            Param::Matrix(m) => m,
            _ => panic!("parameter is not a matrix"),
        }
    }

    pub fn as_vector(&self) -> &[RingElement] {
        match self {
            Param::Vector(v) => v,
            _ => panic!("parameter is not a vector"),
        }
    }

    pub fn as_albert(&self) -> &AlbertElement {
        match self {
            Param::Albert(a) => a,
            _ => panic!("parameter is not an Albert element"),
        }
    }

    pub fn as_scalar(&self) -> &RingElement {
        match self {
            Param::Scalar(a) => a,
            _ => panic!("parameter is not a scalar"),
        }
    }

    pub fn as_triple(&self) -> &[RingElement; 3] {
        match self {
            Param::Triple(t) => t,
            _ => panic!("parameter is not a triple"),
        }
    }

    /// Linear scaling; triples use the quadratic action `(xk, yk², zk)`.
    pub fn scale(&self, k: &RingElement) -> Param {
        match self {
            Param::Matrix(m) => Param::Matrix(m.scale(k)),
            Param::Vector(v) => Param::Vector(v.iter().map(|x| x * k).collect()),
            Param::Albert(a) => Param::Albert(a.scale(k)),
            Param::Scalar(a) => Param::Scalar(a * k),
            Param::Triple([x, y, z]) => Param::Triple([x * k, y * k * k, z * k]),
        }
    }

    /// The group law of `U^±`: `t_±(p) t_±(o) = t_±(p.add(plus, o))`. For
    /// triples this is `(x+x′, y+y′+xz′, z+z′)` in `U⁺` and
    /// `(x+x′, y+y′+zx′, z+z′)` in `U⁻`; otherwise plain addition.
    pub fn add(&self, plus: bool, o: &Param) -> Param {
        match (self, o) {
            (Param::Matrix(a), Param::Matrix(b)) => Param::Matrix(a + b),
            (Param::Vector(a), Param::Vector(b)) => Param::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Param::Albert(a), Param::Albert(b)) => Param::Albert(a + b),
            (Param::Scalar(a), Param::Scalar(b)) => Param::Scalar(a + b),
            (Param::Triple([x, y, z]), Param::Triple([x2, y2, z2])) => {
                let cross = if plus { x * z2 } else { z * x2 };
                Param::Triple([x + x2, y + y2 + cross, z + z2])
            }
            _ => panic!("parameters of different shapes"),
        }
    }

    /// The inverse in the root subgroup.
    pub fn neg(&self) -> Param {
        match self {
            Param::Triple([x, y, z]) => Param::Triple([-x, x * z - y, -z]),
            other => other.scale(&-other.ring().one()),
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Param::Matrix(m) => m.ring(),
            Param::Vector(v) => v[0].ring(),
            Param::Albert(a) => a.ring(),
            Param::Scalar(a) => a.ring(),
            Param::Triple(t) => t[0].ring(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Param::Matrix(m) => m.is_zero(),
            Param::Vector(v) => v.iter().all(RingElement::is_zero),
            Param::Albert(a) => a.is_zero(),
            Param::Scalar(a) => a.is_zero(),
            Param::Triple(t) => t.iter().all(RingElement::is_zero),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[RingElement]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Param::Matrix(m) => write!(f, "{m}"),
            Param::Vector(v) => write!(f, "({})", join(v)),
            Param::Albert(a) => write!(f, "{a}"),
            Param::Scalar(a) => write!(f, "{a}"),
            Param::Triple(t) => write!(f, "({})", join(t)),
        }
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum GroupElement {
    Matrix(Matrix),
    Clifford(CliffordElement),
    E7(FAutomorphism),
}

impl GroupElement {
    pub fn as_matrix(&self) -> &Matrix {
        match self {
            GroupElement::Matrix(m) => m,
            _ => panic!("not a matrix element"),
        }
    }

    pub fn as_clifford(&self) -> &CliffordElement {
        match self {
            GroupElement::Clifford(c) => c,
            _ => panic!("not a Clifford element"),
        }
    }

    pub fn as_e7(&self) -> &FAutomorphism {
        match self {
            GroupElement::E7(f) => f,
            _ => panic!("not an E7 element"),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Matrix(m) => write!(f, "{m}"),
            GroupElement::Clifford(c) => write!(f, "{c}"),
            GroupElement::E7(g) => {
                let imgs: Vec<String> = g.images().iter().map(ToString::to_string).collect();
                write!(f, "[{}]", imgs.join(", "))
            }
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A realization bound to a ring.
#[derive(Clone, Debug)]
pub struct Realization {
    kind: Kind,
    ring: Ring,
    space: Option<Arc<QuadraticSpace>>,
}

impl Realization {
    pub fn new(kind: Kind, ring: &Ring) -> Result<Self> {
        let kind = kind.validate()?;
        let space = match kind {
            Kind::SpinB(n) => Some(QuadraticSpace::split(ring, 2 * n - 1)?),
            Kind::SpinD1(n) => Some(QuadraticSpace::split(ring, 2 * n - 2)?),
            Kind::SpinDd(d) => Some(QuadraticSpace::hyperbolic(ring, d)?),
            _ => None,
        };
        Ok(Realization { kind, ring: ring.clone(), space })
    }

    pub fn parse(selector: &str, ring: &Ring) -> Result<Self> {
        Self::new(selector.parse()?, ring)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn space(&self) -> Option<&Arc<QuadraticSpace>> {
        self.space.as_ref()
    }

    fn spin_space(&self) -> &Arc<QuadraticSpace> {
        self.space.as_ref().expect("Spin realizations carry a space")
    }

    /// Size of the matrix model, if any.
    fn matrix_size(&self) -> Option<usize> {
        match self.kind {
            Kind::Sl(d) | Kind::Sp(d) => Some(2 * d),
            Kind::So3Adj | Kind::Sl3Bc1 => Some(3),
            _ => None,
        }
    }

    /// `d` for matrix-parameterized kinds, the rank of `M₀` for split Spin.
    fn param_size(&self) -> usize {
        match self.kind {
            Kind::Sl(d) | Kind::Sp(d) | Kind::SpinDd(d) => d,
            Kind::SpinB(_) | Kind::SpinD1(_) => self.spin_space().rank() - 2,
            _ => 0,
        }
    }

    pub fn identity(&self) -> GroupElement {
        if let Some(n) = self.matrix_size() {
            return GroupElement::Matrix(Matrix::identity(&self.ring, n));
        }
        match self.kind {
            Kind::E7 => GroupElement::E7(FAutomorphism::identity(&self.ring)),
            _ => GroupElement::Clifford(CliffordElement::one(self.spin_space())),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (a, b) {
            (GroupElement::Matrix(x), GroupElement::Matrix(y)) => GroupElement::Matrix(x * y),
            (GroupElement::Clifford(x), GroupElement::Clifford(y)) => GroupElement::Clifford(x.mul(y)),
            (GroupElement::E7(x), GroupElement::E7(y)) => GroupElement::E7(x.compose(y)),
            _ => panic!("group elements of different realizations"),
        }
    }

    pub fn product(&self, factors: &[&GroupElement]) -> GroupElement {
        factors.iter().fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(match g {
            GroupElement::Matrix(m) => GroupElement::Matrix(
                m.try_inverse().ok_or_else(|| Error::Internal(format!("group element {m} is not invertible")))?,
            ),
            GroupElement::Clifford(c) => GroupElement::Clifford(c.main_involution()),
            GroupElement::E7(f) => GroupElement::E7(f.inverse()?),
        })
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        Ok(self.product(&[g, h, &self.inverse(g)?]))
    }

    pub fn zero_param(&self) -> Param {
        let z = self.ring.zero();
        match self.kind {
            Kind::Sl(d) | Kind::Sp(d) | Kind::SpinDd(d) => Param::Matrix(Matrix::zeros(&self.ring, d, d)),
            Kind::SpinB(_) | Kind::SpinD1(_) => Param::Vector(vec![z; self.param_size()]),
            Kind::E7 => Param::Albert(AlbertElement::zero(&self.ring)),
            Kind::So3Adj => Param::Scalar(z),
            Kind::Sl3Bc1 => Param::Triple([z.clone(), z.clone(), z]),
        }
    }

    pub fn sample_param<R: Rng + ?Sized>(&self, rng: &mut R) -> Param {
        let ring = &self.ring;
        match self.kind {
            Kind::Sl(d) => Param::Matrix(Matrix::from_fn(d, d, |_, _| ring.sample(rng))),
            Kind::Sp(d) => {
                let mut m = Matrix::zeros(ring, d, d);
                for i in 0..d {
                    for j in i..d {
                        let v = ring.sample(rng);
                        m.set(i, j, v.clone());
                        m.set(j, i, v);
                    }
                }
                Param::Matrix(m)
            }
            Kind::SpinDd(d) => {
                let mut m = Matrix::zeros(ring, d, d);
                for i in 0..d {
                    for j in i + 1..d {
                        let v = ring.sample(rng);
                        m.set(i, j, v.clone());
                        m.set(j, i, -v);
                    }
                }
                Param::Matrix(m)
            }
            Kind::SpinB(_) | Kind::SpinD1(_) => Param::Vector((0..self.param_size()).map(|_| ring.sample(rng)).collect()),
            Kind::E7 => Param::Albert(AlbertElement::sample(ring, rng)),
            Kind::So3Adj => Param::Scalar(ring.sample(rng)),
            Kind::Sl3Bc1 => Param::Triple([ring.sample(rng), ring.sample(rng), ring.sample(rng)]),
        }
    }

    /// Checks the shape and the symmetry constraints of a parameter.
    pub fn validate_param(&self, p: &Param) -> Result<()> {
        let ok = match (self.kind, p) {
            (Kind::Sl(d), Param::Matrix(m)) => m.rows() == d && m.cols() == d,
            (Kind::Sp(d), Param::Matrix(m)) => m.rows() == d && m.cols() == d && m.transpose() == *m,
            (Kind::SpinDd(d), Param::Matrix(m)) => {
                m.rows() == d
                    && m.cols() == d
                    && (m + &m.transpose()).is_zero()
                    && (0..d).all(|i| m.get(i, i).is_zero())
            }
            (Kind::SpinB(_) | Kind::SpinD1(_), Param::Vector(v)) => v.len() == self.param_size(),
            (Kind::E7, Param::Albert(_)) | (Kind::So3Adj, Param::Scalar(_)) | (Kind::Sl3Bc1, Param::Triple(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            usage(format!("{p} is not a root parameter of {}", self.kind))
        }
    }

    /// Parses a parameter: rows separated by `;` for matrices, otherwise
    /// comma-separated scalars; `e7` takes an Albert literal.
    pub fn parse_param(&self, s: &str) -> Result<Param> {
        let scalars = |t: &str| -> Result<Vec<RingElement>> {
            t.split(',').map(|x| self.ring.parse_element(x.trim())).collect()
        };
        let p = match self.kind {
            Kind::Sl(_) | Kind::Sp(_) | Kind::SpinDd(_) => {
                let rows: Vec<Vec<RingElement>> = s.split(';').map(scalars).collect::<Result<_>>()?;
                Param::Matrix(Matrix::from_rows(rows)?)
            }
            Kind::SpinB(_) | Kind::SpinD1(_) => Param::Vector(scalars(s)?),
            Kind::E7 => Param::Albert(AlbertElement::parse(&self.ring, s)?),
            Kind::So3Adj => Param::Scalar(self.ring.parse_element(s.trim())?),
            Kind::Sl3Bc1 => {
                let v = scalars(s)?;
                let t: [RingElement; 3] =
                    v.try_into().map_err(|_| Error::Usage("sl3bc1 parameters are triples x,y,z".into()))?;
                Param::Triple(t)
            }
        };
        self.validate_param(&p)?;
        Ok(p)
    }

    /// `t₊(p)` (`plus = true`) or `t₋(p)`.
    pub fn root_element(&self, plus: bool, p: &Param) -> Result<GroupElement> {
        self.validate_param(p)?;
        let ring = &self.ring;
        Ok(match self.kind {
            Kind::Sl(d) | Kind::Sp(d) => {
                let (i, z, m) = (Matrix::identity(ring, d), Matrix::zeros(ring, d, d), p.as_matrix());
                GroupElement::Matrix(if plus {
                    Matrix::from_blocks(&i, m, &z, &i)?
                } else {
                    Matrix::from_blocks(&i, &z, m, &i)?
                })
            }
            Kind::SpinB(_) | Kind::SpinD1(_) => GroupElement::Clifford(split_root(self.spin_space(), plus, p.as_vector())),
            Kind::SpinDd(_) => GroupElement::Clifford(self.spindd_root(plus, p.as_matrix(), false)),
            Kind::E7 => GroupElement::E7(FAutomorphism::root(plus, p.as_albert())),
            Kind::So3Adj => {
                let x = p.as_scalar();
                let (one, zero, two) = (ring.one(), ring.zero(), ring.int(2));
                let xx = x * x;
                let rows = if plus {
                    vec![
                        vec![one.clone(), -(&two * x), -&xx],
                        vec![zero.clone(), one.clone(), x.clone()],
                        vec![zero.clone(), zero, one],
                    ]
                } else {
                    vec![
                        vec![one.clone(), zero.clone(), zero.clone()],
                        vec![-x, one.clone(), zero],
                        vec![-&xx, &two * x, one],
                    ]
                };
                GroupElement::Matrix(Matrix::from_rows(rows)?)
            }
            Kind::Sl3Bc1 => {
                let [x, y, z] = p.as_triple().clone();
                let (one, zero) = (ring.one(), ring.zero());
                let rows = if plus {
                    vec![vec![one.clone(), x, y], vec![zero.clone(), one.clone(), z], vec![zero.clone(), zero, one]]
                } else {
                    vec![vec![one.clone(), zero.clone(), zero.clone()], vec![x, one.clone(), zero], vec![y, z, one]]
                };
                GroupElement::Matrix(Matrix::from_rows(rows)?)
            }
        })
    }

    /// `∏_{i<j} (1 + p_ij e_{∓i} e_{∓j})`, lexicographic or reversed.
    pub fn spindd_root(&self, plus: bool, p: &Matrix, reversed: bool) -> CliffordElement {
        let space = self.spin_space();
        let d = p.rows();
        let offset = if plus { 0 } else { d };
        let mut pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        if reversed {
            pairs.reverse();
        }
        let one = CliffordElement::one(space);
        pairs.into_iter().fold(one.clone(), |acc, (i, j)| {
            let mono = CliffordElement::monomial(space, 1 << (offset + i) | 1 << (offset + j));
            acc.mul(&(&one + &mono.scale(p.get(i, j))))
        })
    }

    /// Reads off the parameter of `g` if `g = t_±(p)` for some `p`.
    pub fn extract_root(&self, plus: bool, g: &GroupElement) -> Option<Param> {
        let ring = &self.ring;
        let p = match (self.kind, g) {
            (Kind::Sl(d) | Kind::Sp(d), GroupElement::Matrix(m)) => {
                Param::Matrix(if plus { m.block(0, d, d, d) } else { m.block(d, 0, d, d) })
            }
            (Kind::SpinB(_) | Kind::SpinD1(_), GroupElement::Clifford(c)) => {
                let n = self.spin_space().rank();
                Param::Vector(
                    (1..n - 1)
                        .map(|k| if plus { -c.coefficient(1 | 1 << k) } else { c.coefficient(1 << k | 1 << (n - 1)) })
                        .collect(),
                )
            }
            (Kind::SpinDd(d), GroupElement::Clifford(c)) => {
                let offset = if plus { 0 } else { d };
                Param::Matrix(Matrix::from_fn(d, d, |i, j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => c.coefficient(1 << (offset + i) | 1 << (offset + j)),
                    std::cmp::Ordering::Greater => -c.coefficient(1 << (offset + j) | 1 << (offset + i)),
                    std::cmp::Ordering::Equal => ring.zero(),
                }))
            }
            (Kind::E7, GroupElement::E7(f)) => {
                Param::Albert(if plus { f.plus_parameter() } else { f.minus_parameter() })
            }
            (Kind::So3Adj, GroupElement::Matrix(m)) => {
                Param::Scalar(if plus { m.get(1, 2).clone() } else { -m.get(1, 0) })
            }
            (Kind::Sl3Bc1, GroupElement::Matrix(m)) => Param::Triple(if plus {
                [m.get(0, 1).clone(), m.get(0, 2).clone(), m.get(1, 2).clone()]
            } else {
                [m.get(1, 0).clone(), m.get(2, 0).clone(), m.get(2, 1).clone()]
            }),
            _ => return None,
        };
        match self.root_element(plus, &p) {
            Ok(h) if h == *g => Some(p),
            _ => None,
        }
    }

    /// The standard torus element for the unit `λ`.
    pub fn torus_element(&self, lambda: &RingElement) -> Result<GroupElement> {
        let inv = lambda.try_invert().ok_or_else(|| Error::Usage(format!("torus parameter {lambda} is not a unit")))?;
        let ring = &self.ring;
        Ok(match self.kind {
            Kind::Sl(d) | Kind::Sp(d) => {
                let mut diag = vec![lambda.clone(); d];
                diag.extend(vec![inv; d]);
                GroupElement::Matrix(Matrix::diagonal(&diag))
            }
            Kind::So3Adj | Kind::Sl3Bc1 => GroupElement::Matrix(Matrix::diagonal(&[lambda.clone(), ring.one(), inv])),
            Kind::SpinB(_) | Kind::SpinD1(_) => {
                let s = self.spin_space();
                let (em, ep) = (CliffordElement::generator(s, 0), CliffordElement::generator(s, s.rank() - 1));
                GroupElement::Clifford(&em.mul(&ep).scale(lambda) + &ep.mul(&em).scale(&inv))
            }
            Kind::SpinDd(d) => {
                let s = self.spin_space();
                let mut acc = CliffordElement::scalar(s, &lambda.pow((d / 2) as u32));
                for i in 0..d {
                    let (em, ep) = (CliffordElement::generator(s, i), CliffordElement::generator(s, d + i));
                    acc = acc.mul(&(&ep.mul(&em).scale(&inv) + &em.mul(&ep)));
                }
                GroupElement::Clifford(acc)
            }
            Kind::E7 => GroupElement::E7(FAutomorphism::d(lambda)?),
        })
    }

    /// Expected `p′` with `h t_±(p) h⁻¹ = t_±(p′)` for the torus element `h` of `λ`.
    pub fn torus_action(&self, plus: bool, p: &Param, lambda: &RingElement) -> Param {
        let l = if plus { lambda.clone() } else { lambda.try_invert().expect("torus parameter is a unit") };
        match self.kind {
            Kind::So3Adj | Kind::Sl3Bc1 => p.scale(&l),
            _ => p.scale(&(&l * &l)),
        }
    }

    /// `α∨(−1)`: `−I`, `−1`, `∏(e₋ᵢeᵢ − eᵢe₋ᵢ)`, `d(−1)`, or `I` for the adjoint
    /// `SO₃`. Not defined for the ultrashort root.
    pub fn coroot_minus_one(&self) -> Option<GroupElement> {
        let ring = &self.ring;
        let m1 = -ring.one();
        Some(match self.kind {
            Kind::Sl(d) | Kind::Sp(d) => GroupElement::Matrix(Matrix::identity(ring, 2 * d).scale(&m1)),
            Kind::SpinB(_) | Kind::SpinD1(_) => GroupElement::Clifford(CliffordElement::scalar(self.spin_space(), &m1)),
            Kind::SpinDd(d) => {
                let s = self.spin_space();
                let mut acc = CliffordElement::one(s);
                for i in 0..d {
                    let (em, ep) = (CliffordElement::generator(s, i), CliffordElement::generator(s, d + i));
                    acc = acc.mul(&(&em.mul(&ep) - &ep.mul(&em)));
                }
                GroupElement::Clifford(acc)
            }
            Kind::E7 => GroupElement::E7(FAutomorphism::d(&m1).expect("-1 is a unit")),
            Kind::So3Adj => self.identity(),
            Kind::Sl3Bc1 => return None,
        })
    }

    /// Membership in `P⁺` (`plus = true`) or `P⁻`.
    pub fn in_parabolic(&self, g: &GroupElement, plus: bool) -> Result<bool> {
        Ok(match (self.kind, g) {
            (Kind::Sl(d) | Kind::Sp(d), GroupElement::Matrix(m)) => {
                let inv = m.try_inverse().ok_or_else(|| Error::Internal("singular group element".into()))?;
                let block = |x: &Matrix| if plus { x.block(d, 0, d, d) } else { x.block(0, d, d, d) };
                block(m).is_zero() && block(&inv).is_zero()
            }
            (Kind::So3Adj, GroupElement::Matrix(m)) => {
                if plus {
                    m.get(1, 0).is_zero() && m.get(2, 0).is_zero()
                } else {
                    m.get(0, 2).is_zero() && m.get(1, 2).is_zero()
                }
            }
            (Kind::Sl3Bc1, GroupElement::Matrix(m)) => {
                let pos: [(usize, usize); 3] = if plus { [(1, 0), (2, 0), (2, 1)] } else { [(0, 1), (0, 2), (1, 2)] };
                pos.iter().all(|&(i, j)| m.get(i, j).is_zero())
            }
            (Kind::SpinB(_) | Kind::SpinD1(_), GroupElement::Clifford(c)) => {
                let n = self.spin_space().rank();
                let j = if plus { 0 } else { n - 1 };
                let action = c.vector_action()?;
                (0..n).all(|i| i == j || action[i][j].is_zero())
            }
            (Kind::SpinDd(d), GroupElement::Clifford(c)) => {
                let action = c.vector_action()?;
                let (cols, rows) = if plus { (0..d, d..2 * d) } else { (d..2 * d, 0..d) };
                cols.clone().all(|j| rows.clone().all(|i| action[i][j].is_zero()))
            }
            (Kind::E7, GroupElement::E7(f)) => f.in_parabolic(plus)?,
            _ => return usage("group element does not belong to this realization"),
        })
    }

    /// Membership in the group: determinant one and preservation of the
    /// relevant form, `spin_check`, or an automorphism of `W` fixing the center.
    pub fn is_member(&self, g: &GroupElement) -> Result<bool> {
        let ring = &self.ring;
        Ok(match (self.kind, g) {
            (Kind::Sl(_) | Kind::Sl3Bc1, GroupElement::Matrix(m)) => m.det()?.is_one(),
            (Kind::Sp(d), GroupElement::Matrix(m)) => {
                let (i, z) = (Matrix::identity(ring, d), Matrix::zeros(ring, d, d));
                let j = Matrix::from_blocks(&z, &i, &i.scale(&-ring.one()), &z)?;
                m.det()?.is_one() && &(&m.transpose() * &j) * m == j
            }
            (Kind::So3Adj, GroupElement::Matrix(m)) => {
                let q = |v: &[RingElement]| &v[0] * &v[2] + &v[1] * &v[1];
                let col = |j: usize| (0..3).map(|i| m.get(i, j).clone()).collect::<Vec<_>>();
                let e = |j: usize| (0..3).map(|i| if i == j { ring.one() } else { ring.zero() }).collect::<Vec<_>>();
                let polar = |a: &[RingElement], b: &[RingElement]| {
                    let s: Vec<RingElement> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    q(&s) - q(a) - q(b)
                };
                m.det()?.is_one()
                    && (0..3).all(|i| q(&col(i)) == q(&e(i)))
                    && (0..3).all(|i| (i + 1..3).all(|j| polar(&col(i), &col(j)) == polar(&e(i), &e(j))))
            }
            (Kind::SpinB(_) | Kind::SpinD1(_) | Kind::SpinDd(_), GroupElement::Clifford(c)) => c.spin_check(),
            (Kind::E7, GroupElement::E7(f)) => f.fixes_center(),
            _ => false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_realizations(ring: &Ring) -> Vec<Realization> {
        Kind::all().into_iter().map(|k| Realization::new(k, ring).unwrap()).collect()
    }

    #[test]
    fn selectors() {
        assert_eq!("sl:2".parse::<Kind>().unwrap(), Kind::Sl(2));
        assert_eq!("e7".parse::<Kind>().unwrap(), Kind::E7);
        assert!(matches!("spindd:3".parse::<Kind>(), Err(Error::Config(_))));
        assert!(matches!("sl:9".parse::<Kind>(), Err(Error::Config(_))));
        assert!(matches!("gl:2".parse::<Kind>(), Err(Error::Usage(_))));
        assert!(matches!("sl".parse::<Kind>(), Err(Error::Usage(_))));
        for k in Kind::all() {
            assert_eq!(k.to_string().parse::<Kind>().unwrap(), k);
        }
        let r = Ring::modular(97).unwrap();
        let spin = Realization::parse("spinb:1", &r).unwrap();
        assert_eq!(spin.space().unwrap().rank(), 3);
        assert_eq!(Realization::parse("sl:1", &Ring::rationals()).unwrap().identity().as_matrix().rows(), 2);
    }

    #[test]
    fn root_examples() {
        let r = Ring::modular(4).unwrap();
        let so3 = Realization::new(Kind::So3Adj, &r).unwrap();
        let t = so3.root_element(false, &Param::Scalar(r.one())).unwrap();
        assert_eq!(*t.as_matrix(), Matrix::from_ints(&r, &[&[1, 0, 0], &[-1, 1, 0], &[-1, 2, 1]]).unwrap());
        let q = Ring::rationals();
        let sl = Realization::new(Kind::Sl(2), &q).unwrap();
        let t = sl.root_element(true, &Param::Matrix(Matrix::identity(&q, 2))).unwrap();
        let expect = Matrix::from_ints(&q, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(*t.as_matrix(), expect);
        let sp = Realization::new(Kind::Sp(2), &q).unwrap();
        assert!(sp.root_element(true, &Param::Matrix(Matrix::from_ints(&q, &[&[0, 1], &[0, 0]]).unwrap())).is_err());
    }

    #[test]
    fn roots_torus_and_parabolics() {
        let r = Ring::modular(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for real in all_realizations(&r) {
            let name = real.kind().to_string();
            let id = real.identity();
            assert!(real.in_parabolic(&id, true).unwrap() && real.in_parabolic(&id, false).unwrap(), "{name}");
            for plus in [true, false] {
                assert_eq!(real.root_element(plus, &real.zero_param()).unwrap(), id, "{name}");
                for _ in 0..3 {
                    let (p, q) = (real.sample_param(&mut rng), real.sample_param(&mut rng));
                    let (tp, tq) = (real.root_element(plus, &p).unwrap(), real.root_element(plus, &q).unwrap());
                    assert_eq!(real.mul(&tp, &tq), real.root_element(plus, &p.add(plus, &q)).unwrap(), "{name}");
                    assert_eq!(real.extract_root(plus, &tp), Some(p.clone()), "{name}");
                    assert!(real.is_member(&tp).unwrap(), "{name}");
                    assert_eq!(real.inverse(&tp).unwrap(), real.root_element(plus, &p.neg()).unwrap(), "{name}");
                    assert!(real.in_parabolic(&tp, plus).unwrap(), "{name}");
                    let lam = r.sample_unit(&mut rng);
                    let h = real.torus_element(&lam).unwrap();
                    assert!(real.is_member(&h).unwrap(), "{name}");
                    let conj = real.conjugate(&h, &tp).unwrap();
                    assert_eq!(real.extract_root(plus, &conj), Some(real.torus_action(plus, &p, &lam)), "{name}");
                }
            }
            assert_eq!(real.torus_element(&r.one()).unwrap(), id, "{name}");
            assert!(real.torus_element(&r.zero()).is_err());
        }
    }

    #[test]
    fn opposite_parabolic_excludes_generic_roots() {
        let q = Ring::rationals();
        let sl = Realization::new(Kind::Sl(1), &q).unwrap();
        let t = sl.root_element(true, &Param::Matrix(Matrix::identity(&q, 1))).unwrap();
        assert!(sl.in_parabolic(&t, true).unwrap());
        assert!(!sl.in_parabolic(&t, false).unwrap());
        let r = Ring::modular(97).unwrap();
        let e7 = Realization::new(Kind::E7, &r).unwrap();
        let a = AlbertElement::diag(r.one(), r.int(2), r.int(3));
        let t = e7.root_element(true, &Param::Albert(a)).unwrap();
        assert!(e7.in_parabolic(&t, true).unwrap() && !e7.in_parabolic(&t, false).unwrap());
    }

    #[test]
    fn spindd_factor_order() {
        let r = Ring::modular(97).unwrap();
        let real = Realization::new(Kind::SpinDd(4), &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for plus in [true, false] {
            let p = real.sample_param(&mut rng);
            let m = p.as_matrix();
            assert_eq!(real.spindd_root(plus, m, false), real.spindd_root(plus, m, true));
        }
    }

    #[test]
    fn bc1_central_direction_commutes() {
        let q = Ring::rationals();
        let real = Realization::new(Kind::Sl3Bc1, &q).unwrap();
        let a = real.root_element(true, &Param::Triple([q.zero(), q.int(3), q.zero()])).unwrap();
        let b = real.root_element(true, &Param::Triple([q.zero(), q.int(-7), q.zero()])).unwrap();
        assert_eq!(real.mul(&a, &b), real.mul(&b, &a));
    }
}
