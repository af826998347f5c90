//! Catalog of linear relations between the sums, each evaluated as an exact
//! residual `LHS - RHS` that vanishes whenever the hypotheses hold.
//!
//! Residuals read each displayed relation top to bottom: left side minus
//! right side. Points violating a hypothesis get a separate verdict instead
//! of a residual, so an empty hypothesis set can never masquerade as a pass.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::polyfun::Tables;
use crate::rational::{
    binom, coprime, int, is_even, mod_inverse, pairwise_coprime, pow_i, ratio, Rational,
};
use crate::sums::{
    classical_sum, generalized_sum, mikolas_shifted_s, s1_pq, s2_pq, s35_pq, s4_pq, s_p, s_pq,
    ClassicalKind, FunctionSpec, SumSpec, Weight,
};
use crate::polyfun::Family;

macro_rules! identity_ids {
    ($($variant:ident => $token:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IdentityId {
            $($variant,)*
        }

        const ID_TOKENS: &[(IdentityId, &str)] = &[$((IdentityId::$variant, $token),)*];
    };
}

identity_ids! {
    Eq0 => "eq-0",
    MultB => "mult-B",
    MultEOdd => "mult-E-odd",
    MultEEven => "mult-E-even",
    MultEbarEven => "mult-Ebar-even",
    Lemma27 => "lemma-27",
    Lemma11 => "lemma-11",
    ClassicalDedekind => "classical-dedekind",
    Hb0 => "hb-0",
    Hb12 => "hb-12",
    Hb34 => "hb-34",
    Hb5 => "hb-5",
    RpS => "rp-S",
    ThreeTerm12 => "three-term-12",
    Goldberg12a => "goldberg-12a",
    CorS15 => "cor-S-15",
    RpS12 => "rp-s12",
    RpS12Coprime => "rp-s12-coprime",
    ThreeTerm29 => "three-term-29",
    Eq30 => "eq-30",
    Hb12From30 => "hb-12-from-30",
    S1TwoTerm => "s1-two-term",
    CorS12 => "cor-s12",
    RpS543 => "rp-s543",
    ThreeTerm10 => "three-term-10",
    Red13a => "red-13a",
    Red13b => "red-13b",
    Red13c => "red-13c",
    CorRpS5 => "cor-rp-s5",
    CorS3S4 => "cor-s3s4",
    Hom14 => "hom-14",
    Hom35 => "hom-35",
    Hom4 => "hom-4",
    MikolasShifted => "mikolas-shifted",
    MikolasFinal => "mikolas-final",
}

/// Where a sweep draws an integer parameter from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `1..=modulus_max`
    Modulus,
    /// `1..=order_max`
    Order,
    /// `0..=order_max`
    Degree,
    /// `1..=factor_max`, the multiplication-formula factor
    Factor,
    /// `1..=dilation_max`
    Dilation,
    /// `0..order_max`, a relation index below an order
    Index,
}

/// Free parameters of an identity: integers with their sweep domains, then
/// rational shifts.
#[derive(Debug, Clone, Copy)]
pub struct Schema {
    pub ints: &'static [(&'static str, Domain)],
    pub rats: &'static [&'static str],
}

use Domain::{Degree, Dilation, Factor, Index, Modulus, Order};

const PQ_ABC_XYZ: Schema = Schema {
    ints: &[("p", Order), ("q", Order), ("a", Modulus), ("b", Modulus), ("c", Modulus)],
    rats: &["x", "y", "z"],
};
const ABC_XYZ: Schema = Schema {
    ints: &[("a", Modulus), ("b", Modulus), ("c", Modulus)],
    rats: &["x", "y", "z"],
};
const ABC: Schema = Schema {
    ints: &[("a", Modulus), ("b", Modulus), ("c", Modulus)],
    rats: &[],
};
const AC: Schema = Schema {
    ints: &[("a", Modulus), ("c", Modulus)],
    rats: &[],
};
const BC: Schema = Schema {
    ints: &[("b", Modulus), ("c", Modulus)],
    rats: &[],
};
const P_AC_XZ: Schema = Schema {
    ints: &[("p", Order), ("a", Modulus), ("c", Modulus)],
    rats: &["x", "z"],
};
const HOM: Schema = Schema {
    ints: &[
        ("p", Order),
        ("q", Order),
        ("a", Modulus),
        ("b", Modulus),
        ("c", Modulus),
        ("d", Dilation),
    ],
    rats: &["x", "y", "z"],
};

/// Verdict on the hypotheses of an identity at one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypotheses {
    /// Positivity, coprimality and order ranges.
    pub structural: bool,
    /// Parity conditions (the ones the necessity probes drop).
    pub parity: bool,
}

impl Hypotheses {
    pub fn applicable(self) -> bool {
        self.structural && self.parity
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub id: IdentityId,
    pub params: Params,
    pub applicable: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub residual: Option<Rational>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.residual.as_ref().is_some_and(Zero::is_zero)
    }
}

fn ser_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl IdentityId {
    pub fn all() -> impl Iterator<Item = IdentityId> {
        ID_TOKENS.iter().map(|(id, _)| *id)
    }

    pub fn token(self) -> &'static str {
        ID_TOKENS
            .iter()
            .find(|(id, _)| *id == self)
            .map(|(_, t)| *t)
            .expect("every identity has a token")
    }

    pub fn schema(self) -> Schema {
        use IdentityId::*;
        match self {
            Eq0 => Schema {
                ints: &[("p", Order), ("q", Order)],
                rats: &["X", "Y"],
            },
            MultB | MultEOdd => Schema {
                ints: &[("n", Degree), ("r", Factor)],
                rats: &["x"],
            },
            MultEEven => Schema {
                ints: &[("n", Order), ("r", Factor)],
                rats: &["x"],
            },
            MultEbarEven => Schema {
                ints: &[("p", Order), ("r", Factor)],
                rats: &["x"],
            },
            Lemma27 | Lemma11 => Schema {
                ints: &[("p", Degree), ("a", Modulus), ("c", Modulus)],
                rats: &["x", "z"],
            },
            ClassicalDedekind | Hb0 | Hb12 | Hb34 | Hb5 | Red13a | Hb12From30 => AC,
            Red13b | Red13c => BC,
            S1TwoTerm => Schema {
                ints: &[("a", Modulus), ("b", Modulus)],
                rats: &[],
            },
            RpS | RpS12 | RpS12Coprime | RpS543 => PQ_ABC_XYZ,
            ThreeTerm12 | ThreeTerm29 | ThreeTerm10 => ABC_XYZ,
            Goldberg12a | Eq30 => ABC,
            CorS15 | CorS12 | CorRpS5 => P_AC_XZ,
            CorS3S4 => Schema {
                ints: &[("q", Order), ("b", Modulus), ("c", Modulus)],
                rats: &["y", "z"],
            },
            Hom14 | Hom35 | Hom4 => HOM,
            MikolasShifted => Schema {
                ints: &[
                    ("m", Order),
                    ("r", Index),
                    ("a", Modulus),
                    ("b", Modulus),
                    ("c", Modulus),
                ],
                rats: &["x", "y", "z"],
            },
            MikolasFinal => Schema {
                ints: &[
                    ("m", Order),
                    ("r", Index),
                    ("a", Modulus),
                    ("b", Modulus),
                    ("c", Modulus),
                ],
                rats: &[],
            },
        }
    }

    /// Polynomial degree that covers every function evaluated by the residual.
    pub fn required_degree(self, params: &Params) -> usize {
        let get = |n: &str| {
            params
                .get(n)
                .and_then(crate::rational::to_i64)
                .map(|v| v.max(0) as usize)
                .unwrap_or(0)
        };
        get("p") + get("q") + get("n") + get("m") + 2
    }

    /// Checks hypotheses on the integer parameters of `params`.
    pub fn hypotheses(self, params: &Params) -> Result<Hypotheses> {
        use IdentityId::*;
        let id = self.token();
        let i = |n: &str| params.int(id, n);
        let pos = |vals: &[i64]| vals.iter().all(|v| *v >= 1);
        let h = |structural: bool, parity: bool| Ok(Hypotheses { structural, parity });
        match self {
            Eq0 => h(i("p")? >= 1 && i("q")? >= 1, true),
            MultB => h(i("n")? >= 0 && i("r")? >= 1, true),
            MultEOdd => h(i("n")? >= 0 && i("r")? >= 1, !is_even(i("r")?)),
            MultEEven => h(i("n")? >= 1 && i("r")? >= 1, is_even(i("r")?)),
            MultEbarEven => h(i("p")? >= 1 && i("r")? >= 1, is_even(i("r")?)),
            Lemma27 | Lemma11 => {
                let (p, a, c) = (i("p")?, i("a")?, i("c")?);
                let parity = !is_even(a) && (is_even(c) == (self == Lemma27));
                h(p >= 0 && pos(&[a, c]) && coprime(a, c), parity)
            }
            ClassicalDedekind | Hb0 | Hb12 | Hb34 | Hb5 | Red13a | Hb12From30 => {
                let (a, c) = (i("a")?, i("c")?);
                let parity = match self {
                    Hb0 => !is_even(a + c),
                    Hb12 => is_even(a),
                    Hb34 => !is_even(c),
                    Hb5 => is_even(a + c),
                    Hb12From30 => is_even(c),
                    _ => true,
                };
                h(pos(&[a, c]) && coprime(a, c), parity)
            }
            Red13b | Red13c => {
                let (b, c) = (i("b")?, i("c")?);
                h(pos(&[b, c]) && coprime(b, c), true)
            }
            S1TwoTerm => {
                let (a, b) = (i("a")?, i("b")?);
                h(pos(&[a, b]) && coprime(a, b), !is_even(a) && !is_even(b))
            }
            RpS | RpS12 | RpS12Coprime | RpS543 | ThreeTerm12 | ThreeTerm29 | ThreeTerm10
            | Goldberg12a | Eq30 => {
                let (a, b, c) = (i("a")?, i("b")?, i("c")?);
                let orders_ok = match self {
                    RpS | RpS12 | RpS12Coprime | RpS543 => i("p")? >= 1 && i("q")? >= 1,
                    _ => true,
                };
                let needs_coprime = self != RpS12;
                let structural =
                    orders_ok && pos(&[a, b, c]) && (!needs_coprime || pairwise_coprime(a, b, c));
                let parity = match self {
                    RpS | ThreeTerm12 | Goldberg12a => is_even(a + b + c),
                    RpS12 | RpS12Coprime | ThreeTerm29 | Eq30 => is_even(c),
                    _ => is_even(a + c),
                };
                h(structural, parity)
            }
            CorS15 | CorS12 | CorRpS5 => {
                let (p, a, c) = (i("p")?, i("a")?, i("c")?);
                let parity = match self {
                    CorS15 => !is_even(a + c),
                    CorS12 => is_even(c),
                    _ => !is_even(a) && !is_even(c),
                };
                h(p >= 1 && pos(&[a, c]) && coprime(a, c), parity)
            }
            CorS3S4 => {
                let (q, b, c) = (i("q")?, i("b")?, i("c")?);
                h(q >= 1 && pos(&[b, c]) && coprime(b, c), !is_even(c))
            }
            Hom14 | Hom35 | Hom4 => {
                let (a, b, c, d) = (i("a")?, i("b")?, i("c")?, i("d")?);
                let parity = match self {
                    Hom14 => is_even(a + b + c),
                    Hom35 => is_even(a + c),
                    _ => is_even(a + b),
                };
                h(i("p")? >= 1 && i("q")? >= 1 && pos(&[a, b, c, d]), parity)
            }
            MikolasShifted | MikolasFinal => {
                let (m, r, a, b, c) = (i("m")?, i("r")?, i("a")?, i("b")?, i("c")?);
                h(
                    m >= 1 && (0..m).contains(&r) && pos(&[a, b, c]) && pairwise_coprime(a, b, c),
                    true,
                )
            }
        }
    }

    /// `LHS - RHS` at `params`, ignoring the hypotheses.
    pub fn residual(self, t: &Tables, params: &Params) -> Result<Rational> {
        let v = View {
            t,
            params,
            id: self.token(),
        };
        residual(self, &v)
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ID_TOKENS
            .iter()
            .find(|(_, t)| *t == s)
            .map(|(id, _)| *id)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Evaluates an identity at a parameter point.
///
/// Missing parameters and non-integer values in integer slots are errors;
/// hypothesis failures yield `applicable = false` with no residual.
pub fn check_identity(t: &Tables, id: IdentityId, params: &Params) -> Result<IdentityCheck> {
    let schema = id.schema();
    for (name, _) in schema.ints {
        params.int(id.token(), name)?;
    }
    for name in schema.rats {
        params.rat(id.token(), name)?;
    }
    let hyp = id.hypotheses(params)?;
    let residual = if hyp.applicable() {
        Some(id.residual(t, params)?)
    } else {
        None
    };
    Ok(IdentityCheck {
        id,
        params: params.clone(),
        applicable: hyp.applicable(),
        residual,
    })
}

struct View<'a> {
    t: &'a Tables,
    params: &'a Params,
    id: &'a str,
}

impl View<'_> {
    fn i(&self, n: &str) -> Result<i64> {
        self.params.int(self.id, n)
    }

    fn o(&self, n: &str) -> Result<usize> {
        let v = self.i(n)?;
        usize::try_from(v).map_err(|_| Error::Precondition(format!("{n} must be non-negative")))
    }

    fn r(&self, n: &str) -> Result<Rational> {
        self.params.rat(self.id, n)
    }

    fn b(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.t.bernoulli_fun(n, x)
    }

    fn e(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.t.euler_fun(n, x)
    }
}

fn bi(n: i64, k: i64) -> Rational {
    Rational::from_integer(binom(n, k))
}

fn sign(k: i64) -> Rational {
    if is_even(k) {
        int(1)
    } else {
        int(-1)
    }
}

fn fr(num: i64, den: i64) -> Rational {
    ratio(num, den)
}

fn cl(kind: ClassicalKind, a: i64, c: i64) -> Result<Rational> {
    classical_sum(kind, a, c)
}

/// Right-hand side of the product formula for `q = 1` (Takács' lemma).
pub fn product_formula_q1_rhs(t: &Tables, p: usize, x: &Rational, y: &Rational) -> Result<Rational> {
    let xy = x + y;
    let mut acc = Rational::zero();
    for j in 0..=p + 1 {
        acc += bi(p as i64 + 1, j as i64) * t.bernoulli_fun(p + 1 - j, y)? * t.bernoulli_fun(j, x)?;
    }
    acc += int(p as i64) * t.bernoulli_fun(p + 1, &xy)?;
    acc -= int(p as i64 + 1) * t.bernoulli_fun(p, &xy)? * t.bernoulli_fun(1, x)?;
    Ok(acc)
}

/// Right-hand side of the product formula for `p = 1`, written for
/// `(r+1) B_r(Y) B_1(Y+X)`.
pub fn product_formula_p1_rhs(t: &Tables, r: usize, x: &Rational, y: &Rational) -> Result<Rational> {
    let yx = y + x;
    let mut acc = Rational::zero();
    for j in 0..=r + 1 {
        acc += bi(r as i64 + 1, j as i64)
            * sign(j as i64)
            * t.bernoulli_fun(r + 1 - j, &yx)?
            * t.bernoulli_fun(j, x)?;
    }
    acc += int(r as i64) * t.bernoulli_fun(r + 1, y)?;
    acc += int(r as i64 + 1) * t.bernoulli_fun(r, y)? * t.bernoulli_fun(1, x)?;
    Ok(acc)
}

/// Both sides of the product formula for `B_p(X+Y) B_q(Y)`.
pub fn product_formula_sides(
    t: &Tables,
    p: usize,
    q: usize,
    x: &Rational,
    y: &Rational,
) -> Result<(Rational, Rational)> {
    let (pi, qi) = (p as i64, q as i64);
    let n = pi + qi;
    let xy = x + y;
    let lhs = bi(n, qi) * t.bernoulli_fun(p, &xy)? * t.bernoulli_fun(q, y)?;
    let mut rhs = Rational::zero();
    for j in 0..=n {
        let coef = bi(n, j) * bi(n - 1 - j, qi - 1);
        if coef.is_zero() {
            continue;
        }
        rhs += coef * t.bernoulli_fun((n - j) as usize, y)? * t.bernoulli_fun(j as usize, x)?;
    }
    for h in 0..=qi {
        let coef = bi(n, h) * bi(n - 1 - h, pi - 1) * sign(h);
        if coef.is_zero() {
            continue;
        }
        rhs += coef * t.bernoulli_fun((n - h) as usize, &xy)? * t.bernoulli_fun(h as usize, x)?;
    }
    Ok((lhs, rhs))
}

/// Single-function sum `sum_{mu<modulus} w(mu) E_p(c (mu+x)/modulus + z)`.
fn euler_line_sum(
    t: &Tables,
    p: usize,
    c: i64,
    modulus: i64,
    x: &Rational,
    z: &Rational,
    alternating: bool,
) -> Result<Rational> {
    let mut acc = Rational::zero();
    for mu in 0..modulus {
        let arg = int(c) * (int(mu) + x) / int(modulus) + z;
        let v = t.euler_fun(p, &arg)?;
        if alternating && mu % 2 == 1 {
            acc -= v;
        } else {
            acc += v;
        }
    }
    Ok(acc)
}

/// `S(a,b,c) = sum_{mu=1}^{c-1} (-1)^(mu+1) E_0(a mu/c) E_0(b mu/c)`.
fn goldberg_s(t: &Tables, a: i64, b: i64, c: i64) -> Result<Rational> {
    let z = int(0);
    let mut spec = SumSpec::new(
        c,
        Weight::AlternatingMu,
        &z,
        FunctionSpec::new(Family::EulerFun, 0, a),
        FunctionSpec::new(Family::EulerFun, 0, b),
    );
    spec.start = 1;
    Ok(-generalized_sum(t, &spec)?)
}

fn residual(id: IdentityId, v: &View<'_>) -> Result<Rational> {
    use IdentityId::*;
    let t = v.t;
    match id {
        Eq0 => {
            let (lhs, rhs) = product_formula_sides(t, v.o("p")?, v.o("q")?, &v.r("X")?, &v.r("Y")?)?;
            Ok(lhs - rhs)
        }
        MultB => {
            let (n, r, x) = (v.o("n")?, v.i("r")?, v.r("x")?);
            let mut s = Rational::zero();
            for k in 0..r {
                s += v.b(n, &((&x + int(k)) / int(r)))?;
            }
            Ok(v.b(n, &x)? - pow_i(r, n as i64 - 1) * s)
        }
        MultEOdd => {
            let (n, r, x) = (v.o("n")?, v.i("r")?, v.r("x")?);
            let mut s = Rational::zero();
            for k in 0..r {
                s += sign(k) * v.e(n, &((&x + int(k)) / int(r)))?;
            }
            Ok(v.e(n, &x)? - pow_i(r, n as i64) * s)
        }
        MultEEven => {
            let (n, r, x) = (v.o("n")?, v.i("r")?, v.r("x")?);
            if n == 0 {
                return Err(Error::Precondition("n must be at least 1".into()));
            }
            let mut s = Rational::zero();
            for k in 0..r {
                s += sign(k) * v.b(n, &((&x + int(k)) / int(r)))?;
            }
            Ok(v.e(n - 1, &x)? + fr(2, n as i64) * pow_i(r, n as i64 - 1) * s)
        }
        MultEbarEven => {
            let (p, r, x) = (v.o("p")?, v.i("r")?, v.r("x")?);
            if p == 0 {
                return Err(Error::Precondition("p must be at least 1".into()));
            }
            let mut s = Rational::zero();
            for k in 0..r {
                s += sign(k) * t.bbar_fun(p, &((&x + int(k)) / int(r)))?;
            }
            Ok(-fr(p as i64, 2) * t.ebar_fun(p - 1, &x)? - pow_i(r, p as i64 - 1) * s)
        }
        Lemma27 | Lemma11 => {
            let (p, a, c) = (v.o("p")?, v.i("a")?, v.i("c")?);
            let (x, z) = (v.r("x")?, v.r("z")?);
            let lhs = euler_line_sum(t, p, c, a, &x, &z, id == Lemma11)?;
            let rhs = pow_i(a, -(p as i64)) * v.e(p, &(int(a) * &z + int(c) * &x))?;
            Ok(lhs - rhs)
        }
        ClassicalDedekind => {
            let (a, c) = (v.i("a")?, v.i("c")?);
            let lhs = cl(ClassicalKind::Dedekind, a, c)? + cl(ClassicalKind::Dedekind, c, a)?;
            let rhs = fr(-1, 4) + fr(1, 12) * (fr(a, c) + fr(c, a) + fr(1, a * c));
            Ok(lhs - rhs)
        }
        Hb0 => {
            let (a, c) = (v.i("a")?, v.i("c")?);
            Ok(cl(ClassicalKind::S, a, c)? + cl(ClassicalKind::S, c, a)? - int(1))
        }
        Hb12 => {
            let (a, c) = (v.i("a")?, v.i("c")?);
            let lhs = cl(ClassicalKind::S1, a, c)? - int(2) * cl(ClassicalKind::S2, c, a)?;
            Ok(lhs - (fr(1, 2) - fr(1, 2) * (fr(1, a * c) + fr(c, a))))
        }
        Hb34 => {
            let (a, c) = (v.i("a")?, v.i("c")?);
            let lhs = int(2) * cl(ClassicalKind::S3, a, c)? - cl(ClassicalKind::S4, c, a)?;
            Ok(lhs - (int(1) - fr(a, c)))
        }
        Hb5 => {
            let (a, c) = (v.i("a")?, v.i("c")?);
            let lhs = cl(ClassicalKind::S5, a, c)? + cl(ClassicalKind::S5, c, a)?;
            Ok(lhs - (fr(1, 2) - fr(1, 2 * a * c)))
        }
        RpS => {
            let (p, q) = (v.i("p")?, v.i("q")?);
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let ny = -&y;
            let lhs = pow_i(a, 1 - p) * pow_i(b, 1 - q) * s_pq(t, p as usize, q as usize, a, b, c, &x, &y, &z)?;
            let mut rhs = Rational::zero();
            for j in 1..=p {
                rhs += bi(p - 1, j - 1)
                    * pow_i(a, 1 - j)
                    * pow_i(c, 1 + j - p - q)
                    * s_pq(t, (p + q - j) as usize, j as usize, c, -a, b, &z, &x, &y)?;
            }
            for h in 1..=q {
                rhs += bi(q - 1, h - 1)
                    * sign(h)
                    * pow_i(b, 1 - h)
                    * pow_i(c, 1 + h - p - q)
                    * s_pq(t, (p + q - h) as usize, h as usize, c, b, a, &z, &ny, &x)?;
            }
            Ok(lhs - rhs)
        }
        ThreeTerm12 => {
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            Ok(s_pq(t, 1, 1, a, b, c, &x, &y, &z)? - s_pq(t, 1, 1, c, -a, b, &z, &x, &y)?
                + s_pq(t, 1, 1, c, b, a, &z, &(-&y), &x)?)
        }
        Goldberg12a => {
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            Ok(goldberg_s(t, a, b, c)? + goldberg_s(t, c, a, b)? + goldberg_s(t, c, b, a)? - int(1))
        }
        CorS15 => {
            let (p, a, c) = (v.i("p")?, v.i("a")?, v.i("c")?);
            let (x, z) = (v.r("x")?, v.r("z")?);
            let pu = p as usize;
            let lhs = int(a) * pow_i(c, p) * s_p(t, pu, a, c, &x, &z)?
                + int(c) * pow_i(a, p) * s_p(t, pu, c, a, &z, &x)?;
            let mut rhs = Rational::zero();
            for j in 1..=p {
                rhs += bi(p - 1, j - 1)
                    * pow_i(a, p + 1 - j)
                    * pow_i(c, j)
                    * v.e((p - j) as usize, &z)?
                    * v.e((j - 1) as usize, &x)?;
            }
            Ok(lhs - rhs)
        }
        RpS12 | RpS12Coprime => {
            let (p, q) = (v.i("p")?, v.i("q")?);
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let ny = -&y;
            let lhs = pow_i(a, 1 - p) * pow_i(b, 1 - q) * s2_pq(t, p as usize, q as usize, a, b, c, &x, &y, &z)?;
            let mut first = Rational::zero();
            for j in 0..=p {
                first += bi(p, j)
                    * pow_i(a, 1 - j)
                    * pow_i(c, 1 + j - p - q)
                    * s1_pq(t, (p + q - j) as usize, j as usize, c, -a, b, &z, &x, &y)?;
            }
            let mut second = Rational::zero();
            for h in 0..=q {
                second += bi(q, h)
                    * sign(h)
                    * pow_i(b, 1 - h)
                    * pow_i(c, 1 + h - p - q)
                    * s1_pq(t, (p + q - h) as usize, h as usize, c, b, a, &z, &ny, &x)?;
            }
            Ok(lhs + fr(q, 2) * first + fr(p, 2) * second)
        }
        ThreeTerm29 => {
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let lhs = s1_pq(t, 1, 1, c, b, a, &z, &(-&y), &x)?
                - s1_pq(t, 1, 1, c, -a, b, &z, &x, &y)?
                - int(2) * s2_pq(t, 1, 1, a, b, c, &x, &y, &z)?;
            let rhs = fr(a, b * c) * v.e(1, &(int(b) * &z + int(c) * &y))?
                + fr(b, a * c) * v.e(1, &(int(a) * &z + int(c) * &x))?;
            Ok(lhs - rhs)
        }
        Eq30 => {
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let o = int(0);
            let lhs = s1_pq(t, 1, 1, c, b, a, &o, &o, &o)?
                - s1_pq(t, 1, 1, c, -a, b, &o, &o, &o)?
                - int(2) * s2_pq(t, 1, 1, a, b, c, &o, &o, &o)?;
            Ok(lhs + fr(1, 2 * c) * (fr(a, b) + fr(b, a)))
        }
        Hb12From30 => {
            // s1(c,a) and s2(a,c) recovered from the generalized sums
            let (a, c) = (v.i("a")?, v.i("c")?);
            let o = int(0);
            let s1_ca = s1_pq(t, 1, 1, c, 1, a, &o, &o, &o)? + fr(1, 2);
            let s2_ac = s2_pq(t, 1, 1, a, 1, c, &o, &o, &o)? - fr(1, 4);
            Ok(s1_ca - int(2) * s2_ac - (fr(1, 2) - fr(1, 2) * (fr(a, c) + fr(1, a * c))))
        }
        S1TwoTerm => {
            let (a, b) = (v.i("a")?, v.i("b")?);
            let inv = |u: i64, m: i64| {
                mod_inverse(u, m).ok_or_else(|| Error::Precondition(format!("{u} is not invertible mod {m}")))
            };
            let (a_inv, b_inv) = (inv(a, b)?, inv(b, a)?);
            let lhs = cl(ClassicalKind::S1, 2 * a_inv, b)? + cl(ClassicalKind::S1, 2 * b_inv, a)?;
            Ok(lhs - (fr(1, 2) - fr(1, 4) * (fr(a, b) + fr(b, a))))
        }
        CorS12 => {
            let (p, a, c) = (v.i("p")?, v.i("a")?, v.i("c")?);
            let (x, z) = (v.r("x")?, v.r("z")?);
            let o = int(0);
            let pu = p as usize;
            let lhs = int(p * c) * pow_i(a, p) * s1_pq(t, pu, 1, c, 1, a, &z, &o, &x)?
                - int(2 * a) * pow_i(c, p) * s2_pq(t, pu, 1, a, 1, c, &x, &o, &z)?;
            let mut rhs = Rational::zero();
            for j in 0..=p {
                rhs += bi(p, j)
                    * pow_i(a, p + 1 - j)
                    * pow_i(c, j)
                    * v.e((p - j) as usize, &z)?
                    * v.b(j as usize, &x)?;
            }
            rhs += int(p) * v.e(pu, &(int(a) * &z + int(c) * &x))?;
            Ok(lhs - rhs)
        }
        RpS543 => {
            let (p, q) = (v.i("p")?, v.i("q")?);
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let ny = -&y;
            let lhs = pow_i(a, 1 - p) * pow_i(b, 1 - q) * s35_pq(t, p as usize, q as usize, a, b, c, &x, &y, &z)?;
            let mut first = Rational::zero();
            for j in 1..=p {
                first += bi(p - 1, j - 1)
                    * pow_i(a, 1 - j)
                    * pow_i(c, 1 + j - p - q)
                    * s4_pq(t, (p + q - j) as usize, j as usize, c, -a, b, &z, &x, &y)?;
            }
            let mut second = Rational::zero();
            for h in 0..=q {
                second += bi(q, h)
                    * sign(h)
                    * pow_i(b, 1 - h)
                    * pow_i(c, 1 + h - p - q)
                    * s35_pq(t, (p + q - h) as usize, h as usize, c, b, a, &z, &ny, &x)?;
            }
            Ok(lhs - (-fr(q, 2) * first + second))
        }
        ThreeTerm10 => {
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let lhs = s35_pq(t, 1, 1, a, b, c, &x, &y, &z)?
                + fr(1, 2) * s4_pq(t, 1, 1, c, -a, b, &z, &x, &y)?
                + s35_pq(t, 1, 1, c, b, a, &z, &(-&y), &x)?;
            let rhs = fr(b, a * c) * v.e(1, &(int(c) * &x + int(a) * &z))?;
            Ok(lhs - rhs)
        }
        Red13a => {
            let (a, c) = (v.i("a")?, v.i("c")?);
            let o = int(0);
            Ok(s35_pq(t, 1, 1, a, 1, c, &o, &o, &o)? - (cl(ClassicalKind::S5, a, c)? - fr(1, 2)))
        }
        Red13b => {
            let (b, c) = (v.i("b")?, v.i("c")?);
            let o = int(0);
            Ok(s35_pq(t, 1, 1, 1, b, c, &o, &o, &o)? - (cl(ClassicalKind::S3, b, c)? - fr(1, 2)))
        }
        Red13c => {
            let (b, c) = (v.i("b")?, v.i("c")?);
            let o = int(0);
            Ok(s4_pq(t, 1, 1, c, -1, b, &o, &o, &o)? - (int(1) - cl(ClassicalKind::S4, c, b)?))
        }
        CorRpS5 => {
            let (p, a, c) = (v.i("p")?, v.i("a")?, v.i("c")?);
            let (x, z) = (v.r("x")?, v.r("z")?);
            let o = int(0);
            let pu = p as usize;
            let lhs = int(a) * pow_i(c, p) * s35_pq(t, pu, 1, a, 1, c, &x, &o, &z)?
                + int(c) * pow_i(a, p) * s35_pq(t, pu, 1, c, 1, a, &z, &o, &x)?;
            let mut sum = Rational::zero();
            for j in 1..=p {
                sum += bi(p - 1, j - 1)
                    * pow_i(a, p + 1 - j)
                    * pow_i(c, j)
                    * v.e((p - j) as usize, &z)?
                    * v.e((j - 1) as usize, &x)?;
            }
            let rhs = -fr(1, 2) * sum + v.e(pu, &(int(a) * &z + int(c) * &x))?;
            Ok(lhs - rhs)
        }
        CorS3S4 => {
            let (q, b, c) = (v.i("q")?, v.i("b")?, v.i("c")?);
            let (y, z) = (v.r("y")?, v.r("z")?);
            let qu = q as usize;
            let lhs = int(2 * b) * pow_i(c, q) * crate::sums::s_q3(t, qu, b, c, &y, &z)?
                - int(q * c) * pow_i(b, q) * crate::sums::s_q4(t, qu, c, b, &z, &y)?;
            let mut rhs = Rational::zero();
            for h in 0..=q {
                rhs += bi(q, h)
                    * pow_i(b, q + 1 - h)
                    * pow_i(c, h)
                    * v.e((q - h) as usize, &z)?
                    * v.b(h as usize, &y)?;
            }
            Ok(lhs - int(2) * rhs)
        }
        Hom14 | Hom35 | Hom4 => {
            let (p, q) = (v.o("p")?, v.o("q")?);
            let (a, b, c, d) = (v.i("a")?, v.i("b")?, v.i("c")?, v.i("d")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let f = match id {
                Hom14 => s_pq,
                Hom35 => s35_pq,
                _ => s4_pq,
            };
            Ok(f(t, p, q, d * a, d * b, d * c, &x, &y, &z)? - int(d) * f(t, p, q, a, b, c, &x, &y, &z)?)
        }
        MikolasShifted => {
            let (m, r) = (v.i("m")?, v.i("r")?);
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let (x, y, z) = (v.r("x")?, v.r("y")?, v.r("z")?);
            let ny = -&y;
            let s = |p: i64, q: i64, a: i64, b: i64, c: i64, x: &Rational, y: &Rational, z: &Rational| {
                mikolas_shifted_s(t, p as usize, q as usize, a, b, c, x, y, z)
            };
            let lhs = bi(m + 1, r + 1) * pow_i(a, r + 1) * pow_i(b, m - r) * pow_i(c, m) * s(m - r, r + 1, a, b, c, &x, &y, &z)?
                - sign(r) * pow_i(c, m + 1) * v.b((m + 1) as usize, &(int(b) * &x - int(a) * &y))?;
            let mut rhs = Rational::zero();
            for j in 0..=m - r {
                rhs += bi(m + 1, j) * bi(m - j, r) * pow_i(a, m + 1 - j) * pow_i(c, j) * pow_i(b, m)
                    * s(m + 1 - j, j, c, -a, b, &z, &x, &y)?;
            }
            for h in 0..=r + 1 {
                rhs += bi(m + 1, h) * bi(m - h, m - 1 - r) * sign(h) * pow_i(b, m + 1 - h) * pow_i(c, h) * pow_i(a, m)
                    * s(m + 1 - h, h, c, b, a, &z, &ny, &x)?;
            }
            Ok(lhs - rhs)
        }
        MikolasFinal => {
            let (m, r) = (v.i("m")?, v.i("r")?);
            let (a, b, c) = (v.i("a")?, v.i("b")?, v.i("c")?);
            let s = |p: i64, q: i64, a: i64, b: i64, c: i64| {
                crate::sums::mikolas_s(t, p as usize, q as usize, a, b, c)
            };
            let mut lhs = bi(m + 1, r + 1) * pow_i(a, r + 1) * pow_i(b, m - r) * pow_i(c, m) * s(m - r, r + 1, a, b, c)?;
            for j in 1..=m - r {
                lhs += bi(m + 1, j) * bi(m - j, r) * sign(j + 1) * pow_i(a, m + 1 - j) * pow_i(c, j) * pow_i(b, m)
                    * s(m + 1 - j, j, c, a, b)?;
            }
            for j in 1..=r + 1 {
                lhs += bi(m + 1, j) * bi(m - j, m - 1 - r) * sign(j + 1) * pow_i(b, m + 1 - j) * pow_i(c, j) * pow_i(a, m)
                    * s(m + 1 - j, j, c, b, a)?;
            }
            let o = int(0);
            let rhs = (sign(r) * pow_i(c, m + 1) + bi(m, r) * pow_i(a, m + 1) + bi(m, r + 1) * pow_i(b, m + 1))
                * v.b((m + 1) as usize, &o)?
                - int(m + 1) * bi(m - 1, r) * pow_i(a * b, m) * int(c) * v.b(m as usize, &o)?;
            Ok(lhs - rhs)
        }
    }
}
