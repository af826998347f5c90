//! One kernel for every weighted double-function sum over residues, plus
//! the named sums built on it.
//!
//! A sum is
//!
//! ```text
//!   sum_{mu=start}^{c-1} w(mu) f1(a (mu+z)/c ± x) f2(b (mu+z)/c ± y)
//! ```
//!
//! with `w` either 1 or `(-1)^mu` and `f1`, `f2` periodic Bernoulli or Euler
//! functions (optionally the bar variants). All arguments of one factor share
//! the denominator `c * den(z) * den(x)`, so every term is accumulated as an
//! integer over one fixed denominator and reduced once at the end.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::polyfun::{floor_split, sawtooth, Family, Tables};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSign {
    Plus,
    Minus,
}

/// One factor `f(m (mu+z)/c ± shift)` of a sum.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub family: Family,
    pub order: usize,
    pub multiplier: i64,
    pub shift: Rational,
    pub shift_sign: ShiftSign,
}

impl FunctionSpec {
    pub fn new(family: Family, order: usize, multiplier: i64) -> Self {
        FunctionSpec {
            family,
            order,
            multiplier,
            shift: Rational::zero(),
            shift_sign: ShiftSign::Plus,
        }
    }

    pub fn plus(mut self, shift: &Rational) -> Self {
        self.shift = shift.clone();
        self.shift_sign = ShiftSign::Plus;
        self
    }

    pub fn minus(mut self, shift: &Rational) -> Self {
        self.shift = shift.clone();
        self.shift_sign = ShiftSign::Minus;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    None,
    AlternatingMu,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumSpec {
    pub modulus: i64,
    pub weight: Weight,
    pub inner_shift: Rational,
    pub first: FunctionSpec,
    pub second: FunctionSpec,
    /// Lower summation index, 0 or 1.
    pub start: u32,
}

impl SumSpec {
    /// A sum from `mu = 0` with the given weight, inner shift and factors.
    pub fn new(
        modulus: i64,
        weight: Weight,
        inner_shift: &Rational,
        first: FunctionSpec,
        second: FunctionSpec,
    ) -> Self {
        SumSpec {
            modulus,
            weight,
            inner_shift: inner_shift.clone(),
            first,
            second,
            start: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.modulus < 1 {
            return Err(Error::Precondition(format!(
                "modulus must be positive, got {}",
                self.modulus
            )));
        }
        if self.start > 1 {
            return Err(Error::Precondition("start index must be 0 or 1".into()));
        }
        for f in [&self.first, &self.second] {
            if f.multiplier == 0 {
                return Err(Error::Precondition("multipliers must be nonzero".into()));
            }
        }
        Ok(())
    }
}

/// Precomputed affine numerator `num0 + mu * step` over a fixed denominator.
struct Factor<'a> {
    spec: &'a FunctionSpec,
    num: BigInt,
    step: BigInt,
    den: BigInt,
    dpow: Vec<BigInt>,
}

impl<'a> Factor<'a> {
    fn new(spec: &'a FunctionSpec, c: i64, z: &Rational, start: u32) -> Self {
        let (zn, zd) = (z.numer(), z.denom());
        let (xn, xd) = (spec.shift.numer(), spec.shift.denom());
        let m = BigInt::from(spec.multiplier);
        let c = BigInt::from(c);
        let sign = match spec.shift_sign {
            ShiftSign::Plus => BigInt::one(),
            ShiftSign::Minus => -BigInt::one(),
        };
        // m (mu zd + zn) xd + s c zd xn  over  c zd xd
        let den = &c * zd * xd;
        let step = &m * xd * zd;
        let num0 = &m * xd * zn + sign * &c * zd * xn;
        let num = num0 + &step * BigInt::from(start);
        let mut dpow = Vec::with_capacity(spec.order + 1);
        dpow.push(BigInt::one());
        for k in 1..=spec.order {
            let next = &dpow[k - 1] * &den;
            dpow.push(next);
        }
        Factor {
            spec,
            num,
            step,
            den,
            dpow,
        }
    }

    fn value(&self, tables: &Tables) -> BigInt {
        tables.eval_over_fixed_denom(
            self.spec.family,
            self.spec.order,
            &self.num,
            &self.den,
            &self.dpow,
        )
    }

    fn advance(&mut self) {
        self.num += &self.step;
    }

    fn denominator(&self, tables: &Tables) -> BigInt {
        tables.table(self.spec.family.kind()).common_denom(self.spec.order)
            * &self.dpow[self.spec.order]
    }
}

fn check_order(tables: &Tables, f: &FunctionSpec) -> Result<()> {
    let max = tables.table(f.family.kind()).max_degree();
    if f.order > max {
        return Err(Error::DegreeOutOfRange {
            requested: f.order,
            max,
        });
    }
    Ok(())
}

/// Exact value of the sum described by `spec`. The empty range is 0.
pub fn generalized_sum(tables: &Tables, spec: &SumSpec) -> Result<Rational> {
    spec.validate()?;
    check_order(tables, &spec.first)?;
    check_order(tables, &spec.second)?;
    let c = spec.modulus;
    let mut f1 = Factor::new(&spec.first, c, &spec.inner_shift, spec.start);
    let mut f2 = Factor::new(&spec.second, c, &spec.inner_shift, spec.start);
    let mut acc = BigInt::zero();
    for mu in i64::from(spec.start)..c {
        let v1 = f1.value(tables);
        if !v1.is_zero() {
            let term = v1 * f2.value(tables);
            if spec.weight == Weight::AlternatingMu && mu % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        f1.advance();
        f2.advance();
    }
    let den = f1.denominator(tables) * f2.denominator(tables);
    Ok(Rational::new(acc, den))
}

/// The classical sums, each evaluated from its literal definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalKind {
    Dedekind,
    S,
    S1,
    S2,
    S3,
    S4,
    S5,
}

fn parity_sign(n: &BigInt) -> i64 {
    if (n % 2u32).is_zero() {
        1
    } else {
        -1
    }
}

/// Classical Dedekind sum `s(a,c)` and the Hardy–Berndt sums `S, s1..s5`,
/// summed over `1 <= mu <= c-1`.
pub fn classical_sum(kind: ClassicalKind, a: i64, c: i64) -> Result<Rational> {
    if c < 1 {
        return Err(Error::Precondition(format!(
            "modulus must be positive, got {c}"
        )));
    }
    let mut acc = Rational::zero();
    for mu in 1..c {
        let frac = Rational::new(BigInt::from(mu), BigInt::from(c));
        let amu = Rational::new(BigInt::from(a * mu), BigInt::from(c));
        let fl = floor_split(&amu).floor;
        let mu_sign = if mu % 2 == 0 { 1 } else { -1 };
        let term = match kind {
            ClassicalKind::Dedekind => sawtooth(&frac) * sawtooth(&amu),
            ClassicalKind::S => int(-mu_sign * parity_sign(&fl)),
            ClassicalKind::S1 => sawtooth(&frac) * int(parity_sign(&fl)),
            ClassicalKind::S2 => sawtooth(&amu) * sawtooth(&frac) * int(mu_sign),
            ClassicalKind::S3 => sawtooth(&amu) * int(mu_sign),
            ClassicalKind::S4 => int(parity_sign(&fl)),
            ClassicalKind::S5 => sawtooth(&frac) * int(mu_sign * parity_sign(&fl)),
        };
        acc += term;
    }
    Ok(acc)
}

fn euler_order(p: usize) -> Result<usize> {
    p.checked_sub(1)
        .ok_or_else(|| Error::Precondition("Euler index must be at least 1".into()))
}

use Family::{BernoulliBar as Bbar, BernoulliFun as Bfun, EulerBar as Ebar, EulerFun as Efun};

fn zero() -> Rational {
    Rational::zero()
}

/// Hall–Wilson–Zagier sum `sum_{v<c} Bbar_p(a(v+z)/c - x) Bbar_q(b(v+z)/c - y)`.
#[allow(clippy::too_many_arguments)]
pub fn hwz_s(
    t: &Tables,
    p: usize,
    q: usize,
    a: i64,
    b: i64,
    c: i64,
    x: &Rational,
    y: &Rational,
    z: &Rational,
) -> Result<Rational> {
    let spec = SumSpec::new(
        c,
        Weight::None,
        z,
        FunctionSpec::new(Bbar, p, a).minus(x),
        FunctionSpec::new(Bbar, q, b).minus(y),
    );
    generalized_sum(t, &spec)
}

/// Carlitz sum `sum_{v<c} B_p(a(v+y)/c + x) (((v+y)/c))`.
pub fn carlitz_s(t: &Tables, p: usize, a: i64, c: i64, x: &Rational, y: &Rational) -> Result<Rational> {
    let spec = SumSpec::new(
        c,
        Weight::None,
        y,
        FunctionSpec::new(Bfun, p, a).plus(x),
        FunctionSpec::new(Bbar, 1, 1),
    );
    generalized_sum(t, &spec)
}

/// Rademacher sum `sum_{v<c} ((a(v+y)/c + x)) (((v+y)/c))`.
pub fn rademacher_s(t: &Tables, a: i64, c: i64, x: &Rational, y: &Rational) -> Result<Rational> {
    let spec = SumSpec::new(
        c,
        Weight::None,
        y,
        FunctionSpec::new(Bbar, 1, a).plus(x),
        FunctionSpec::new(Bbar, 1, 1),
    );
    generalized_sum(t, &spec)
}

/// Mikolás sum `sum_{v<c} B_p(av/c) B_q(bv/c)`.
pub fn mikolas_s(t: &Tables, p: usize, q: usize, a: i64, b: i64, c: i64) -> Result<Rational> {
    mikolas_shifted_s(t, p, q, a, b, c, &zero(), &zero(), &zero())
}

/// Shifted Mikolás sum `sum_{v<c} B_p(a(v+z)/c + x) B_q(b(v+z)/c + y)`,
/// with the plain periodic Bernoulli function on both factors.
#[allow(clippy::too_many_arguments)]
pub fn mikolas_shifted_s(
    t: &Tables,
    p: usize,
    q: usize,
    a: i64,
    b: i64,
    c: i64,
    x: &Rational,
    y: &Rational,
    z: &Rational,
) -> Result<Rational> {
    let spec = SumSpec::new(
        c,
        Weight::None,
        z,
        FunctionSpec::new(Bfun, p, a).plus(x),
        FunctionSpec::new(Bfun, q, b).plus(y),
    );
    generalized_sum(t, &spec)
}

/// Apostol sum `sum_{v<c} Bbar_p(av/c) ((v/c))`.
pub fn apostol_s(t: &Tables, p: usize, a: i64, c: i64) -> Result<Rational> {
    let spec = SumSpec::new(
        c,
        Weight::None,
        &zero(),
        FunctionSpec::new(Bbar, p, a),
        FunctionSpec::new(Bbar, 1, 1),
    );
    generalized_sum(t, &spec)
}

/// The five two-factor families generalizing `S, s1..s5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HigherKind {
    /// `(-1)^mu E_{p-1} E_{q-1}`
    S,
    /// `E_{p-1} B_q`
    S1,
    /// `(-1)^mu B_p B_q`
    S2,
    /// `(-1)^mu E_{p-1} B_q`
    S35,
    /// `E_{p-1} E_{q-1}`
    S4,
}

impl HigherKind {
    fn factors(self, p: usize, q: usize, bar: bool) -> Result<(Weight, Family, usize, Family, usize)> {
        let (e, b) = if bar { (Ebar, Bbar) } else { (Efun, Bfun) };
        Ok(match self {
            HigherKind::S => (Weight::AlternatingMu, e, euler_order(p)?, e, euler_order(q)?),
            HigherKind::S1 => (Weight::None, e, euler_order(p)?, b, q),
            HigherKind::S2 => (Weight::AlternatingMu, b, p, b, q),
            HigherKind::S35 => (Weight::AlternatingMu, e, euler_order(p)?, b, q),
            HigherKind::S4 => (Weight::None, e, euler_order(p)?, e, euler_order(q)?),
        })
    }
}

/// Arguments shared by the two-factor sums `(p, q, a, b, c : x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairArgs {
    pub p: usize,
    pub q: usize,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl PairArgs {
    #[allow(clippy::too_many_arguments)]
    pub fn new(p: usize, q: usize, a: i64, b: i64, c: i64, x: &Rational, y: &Rational, z: &Rational) -> Self {
        PairArgs {
            p,
            q,
            a,
            b,
            c,
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
        }
    }
}

/// Higher-order sum with `+x, +y` shifts over `0 <= mu <= c-1`.
pub fn higher_sum(t: &Tables, kind: HigherKind, args: &PairArgs) -> Result<Rational> {
    let (w, f1, o1, f2, o2) = kind.factors(args.p, args.q, false)?;
    let spec = SumSpec::new(
        args.c,
        w,
        &args.z,
        FunctionSpec::new(f1, o1, args.a).plus(&args.x),
        FunctionSpec::new(f2, o2, args.b).plus(&args.y),
    );
    generalized_sum(t, &spec)
}

/// Bar variant: `Ebar`/`Bbar` factors with `-x, -y` shifts.
///
/// The `S35` bar sum carries the weight `(-1)^mu` like its unbarred
/// counterpart.
pub fn higher_bar_sum(t: &Tables, kind: HigherKind, args: &PairArgs) -> Result<Rational> {
    let (w, f1, o1, f2, o2) = kind.factors(args.p, args.q, true)?;
    let spec = SumSpec::new(
        args.c,
        w,
        &args.z,
        FunctionSpec::new(f1, o1, args.a).minus(&args.x),
        FunctionSpec::new(f2, o2, args.b).minus(&args.y),
    );
    generalized_sum(t, &spec)
}

macro_rules! pair_wrappers {
    ($($(#[$m:meta])* $name:ident => $kind:ident, $bar:expr;)*) => {
        $(
            $(#[$m])*
            #[allow(clippy::too_many_arguments)]
            pub fn $name(
                t: &Tables,
                p: usize,
                q: usize,
                a: i64,
                b: i64,
                c: i64,
                x: &Rational,
                y: &Rational,
                z: &Rational,
            ) -> Result<Rational> {
                let args = PairArgs::new(p, q, a, b, c, x, y, z);
                if $bar {
                    higher_bar_sum(t, HigherKind::$kind, &args)
                } else {
                    higher_sum(t, HigherKind::$kind, &args)
                }
            }
        )*
    };
}

pair_wrappers! {
    /// `S_{p,q}(a,b,c:x,y,z) = sum (-1)^mu E_{p-1}(a(mu+z)/c+x) E_{q-1}(b(mu+z)/c+y)`.
    s_pq => S, false;
    /// `sum E_{p-1}(a(mu+z)/c+x) B_q(b(mu+z)/c+y)`.
    s1_pq => S1, false;
    /// `sum (-1)^mu B_p(a(mu+z)/c+x) B_q(b(mu+z)/c+y)`.
    s2_pq => S2, false;
    /// `sum (-1)^mu E_{p-1}(a(mu+z)/c+x) B_q(b(mu+z)/c+y)`.
    s35_pq => S35, false;
    /// `sum E_{p-1}(a(mu+z)/c+x) E_{q-1}(b(mu+z)/c+y)`.
    s4_pq => S4, false;
    s_pq_bar => S, true;
    s1_bar => S1, true;
    s2_bar => S2, true;
    s35_bar => S35, true;
    s4_bar => S4, true;
}

/// `S_p(a,c:x,z) = S_{p,1}(a,1,c:x,0,z)`.
pub fn s_p(t: &Tables, p: usize, a: i64, c: i64, x: &Rational, z: &Rational) -> Result<Rational> {
    s_pq(t, p, 1, a, 1, c, x, &zero(), z)
}

/// `S^(1)_p(a,c:x,z) = S^(1)_{p,1}(a,1,c:x,0,z)`.
pub fn s_p1(t: &Tables, p: usize, a: i64, c: i64, x: &Rational, z: &Rational) -> Result<Rational> {
    s1_pq(t, p, 1, a, 1, c, x, &zero(), z)
}

/// `S^(2)_p(a,c:x,z) = S^(2)_{p,1}(a,1,c:x,0,z)`.
pub fn s_p2(t: &Tables, p: usize, a: i64, c: i64, x: &Rational, z: &Rational) -> Result<Rational> {
    s2_pq(t, p, 1, a, 1, c, x, &zero(), z)
}

/// `S^(5)_p(a,c:x,z) = S^(3,5)_{p,1}(a,1,c:x,0,z)`.
pub fn s_p5(t: &Tables, p: usize, a: i64, c: i64, x: &Rational, z: &Rational) -> Result<Rational> {
    s35_pq(t, p, 1, a, 1, c, x, &zero(), z)
}

/// `S^(3)_q(b,c:y,z) = sum_{mu<c} (-1)^mu B_q(b(mu+z)/c+y) E_0((mu+z)/c)`.
pub fn s_q3(t: &Tables, q: usize, b: i64, c: i64, y: &Rational, z: &Rational) -> Result<Rational> {
    s35_pq(t, 1, q, 1, b, c, &zero(), y, z)
}

/// `S^(4)_q(c,b:z,y) = sum_{mu<b} E_{q-1}(c(mu+y)/b+z) E_0((mu+y)/b)`.
pub fn s_q4(t: &Tables, q: usize, c: i64, b: i64, z: &Rational, y: &Rational) -> Result<Rational> {
    s4_pq(t, q, 1, c, 1, b, z, &zero(), y)
}

/// Every sum reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumName {
    Classical(ClassicalKind),
    Hwz,
    Carlitz,
    Rademacher,
    Mikolas,
    Apostol,
    Pair(HigherKind),
    PairBar(HigherKind),
    Sp,
    Sp1,
    Sp2,
    Sp5,
    Sq3,
    Sq4,
}

const SUM_TOKENS: &[(&str, SumName)] = &[
    ("dedekind", SumName::Classical(ClassicalKind::Dedekind)),
    ("S", SumName::Classical(ClassicalKind::S)),
    ("s1", SumName::Classical(ClassicalKind::S1)),
    ("s2", SumName::Classical(ClassicalKind::S2)),
    ("s3", SumName::Classical(ClassicalKind::S3)),
    ("s4", SumName::Classical(ClassicalKind::S4)),
    ("s5", SumName::Classical(ClassicalKind::S5)),
    ("hwz", SumName::Hwz),
    ("carlitz", SumName::Carlitz),
    ("rademacher", SumName::Rademacher),
    ("mikolas", SumName::Mikolas),
    ("apostol", SumName::Apostol),
    ("Spq", SumName::Pair(HigherKind::S)),
    ("S1pq", SumName::Pair(HigherKind::S1)),
    ("S2pq", SumName::Pair(HigherKind::S2)),
    ("S35pq", SumName::Pair(HigherKind::S35)),
    ("S4pq", SumName::Pair(HigherKind::S4)),
    ("Spq-bar", SumName::PairBar(HigherKind::S)),
    ("S1pq-bar", SumName::PairBar(HigherKind::S1)),
    ("S2pq-bar", SumName::PairBar(HigherKind::S2)),
    ("S35pq-bar", SumName::PairBar(HigherKind::S35)),
    ("S4pq-bar", SumName::PairBar(HigherKind::S4)),
    ("Sp", SumName::Sp),
    ("Sp1", SumName::Sp1),
    ("Sp2", SumName::Sp2),
    ("Sp5", SumName::Sp5),
    ("Sq3", SumName::Sq3),
    ("Sq4", SumName::Sq4),
];

impl SumName {
    pub fn all() -> impl Iterator<Item = SumName> {
        SUM_TOKENS.iter().map(|(_, n)| *n)
    }

    pub fn token(self) -> &'static str {
        SUM_TOKENS
            .iter()
            .find(|(_, n)| *n == self)
            .map(|(t, _)| *t)
            .expect("every sum has a token")
    }

    /// Integer parameters the sum needs; rational shifts default to 0.
    pub fn int_params(self) -> &'static [&'static str] {
        match self {
            SumName::Classical(_) => &["a", "c"],
            SumName::Hwz | SumName::Pair(_) | SumName::PairBar(_) => &["p", "q", "a", "b", "c"],
            SumName::Carlitz | SumName::Apostol => &["p", "a", "c"],
            SumName::Rademacher => &["a", "c"],
            SumName::Mikolas => &["p", "q", "a", "b", "c"],
            SumName::Sp | SumName::Sp1 | SumName::Sp2 | SumName::Sp5 => &["p", "a", "c"],
            SumName::Sq3 | SumName::Sq4 => &["q", "b", "c"],
        }
    }

    /// Largest polynomial degree the evaluation touches.
    pub fn required_degree(self, params: &Params) -> usize {
        let get = |n: &str| {
            params
                .get(n)
                .and_then(crate::rational::to_i64)
                .map(|v| v.max(0) as usize)
                .unwrap_or(0)
        };
        get("p").max(get("q")).max(1)
    }

    pub fn evaluate(self, t: &Tables, params: &Params) -> Result<Rational> {
        let owner = self.token();
        let i = |n: &str| params.int(owner, n);
        let order = |n: &str| -> Result<usize> {
            let v = params.int(owner, n)?;
            usize::try_from(v)
                .map_err(|_| Error::Precondition(format!("order {n} must be non-negative")))
        };
        let x = params.rat_or_zero("x");
        let y = params.rat_or_zero("y");
        let z = params.rat_or_zero("z");
        match self {
            SumName::Classical(k) => classical_sum(k, i("a")?, i("c")?),
            SumName::Hwz => hwz_s(t, order("p")?, order("q")?, i("a")?, i("b")?, i("c")?, &x, &y, &z),
            SumName::Carlitz => carlitz_s(t, order("p")?, i("a")?, i("c")?, &x, &y),
            SumName::Rademacher => rademacher_s(t, i("a")?, i("c")?, &x, &y),
            SumName::Mikolas => mikolas_s(t, order("p")?, order("q")?, i("a")?, i("b")?, i("c")?),
            SumName::Apostol => apostol_s(t, order("p")?, i("a")?, i("c")?),
            SumName::Pair(k) | SumName::PairBar(k) => {
                let args = PairArgs::new(order("p")?, order("q")?, i("a")?, i("b")?, i("c")?, &x, &y, &z);
                if matches!(self, SumName::Pair(_)) {
                    higher_sum(t, k, &args)
                } else {
                    higher_bar_sum(t, k, &args)
                }
            }
            SumName::Sp => s_p(t, order("p")?, i("a")?, i("c")?, &x, &z),
            SumName::Sp1 => s_p1(t, order("p")?, i("a")?, i("c")?, &x, &z),
            SumName::Sp2 => s_p2(t, order("p")?, i("a")?, i("c")?, &x, &z),
            SumName::Sp5 => s_p5(t, order("p")?, i("a")?, i("c")?, &x, &z),
            SumName::Sq3 => s_q3(t, order("q")?, i("b")?, i("c")?, &y, &z),
            SumName::Sq4 => s_q4(t, order("q")?, i("c")?, i("b")?, &z, &y),
        }
    }
}

impl FromStr for SumName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SUM_TOKENS
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, n)| *n)
            .ok_or_else(|| Error::UnknownSum(s.to_string()))
    }
}

impl fmt::Display for SumName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}
