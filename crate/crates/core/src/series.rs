//! Truncated bivariate power series in `X, Y` and the generating functions
//! built from the bar-variant and Hall–Wilson–Zagier sums.
//!
//! The third variable is always eliminated through `Z = -X - Y`, so the three
//! cyclic generating functions live in one basis and add coefficientwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyfun::Tables;
use crate::rational::{factorial, int, is_integer, pairwise_coprime, pow_i, ratio, Rational};
use crate::sums::{hwz_s, s_pq_bar};

fn rat_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Polynomial in `X, Y` with every monomial of total degree above `N` dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    max_total_degree: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

/// A series variable, for substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl TruncatedSeries {
    pub fn zero(n: u32) -> Self {
        TruncatedSeries {
            max_total_degree: n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: u32, c: Rational) -> Self {
        Self::monomial(n, 0, 0, c)
    }

    pub fn monomial(n: u32, i: u32, j: u32, c: Rational) -> Self {
        let mut s = Self::zero(n);
        s.add_term(i, j, c);
        s
    }

    /// `alpha X + beta Y`.
    pub fn linear(n: u32, alpha: Rational, beta: Rational) -> Self {
        let mut s = Self::zero(n);
        s.add_term(1, 0, alpha);
        s.add_term(0, 1, beta);
        s
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if i + j > self.max_total_degree || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.max_total_degree != other.max_total_degree {
            return Err(Error::DegreeMismatch {
                left: self.max_total_degree as usize,
                right: other.max_total_degree as usize,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.max_total_degree);
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i, j, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let mut out = Self::zero(self.max_total_degree);
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &other.coeffs {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.max_total_degree, int(1));
        for _ in 0..k {
            out = out.mul(self).expect("same degree");
        }
        out
    }

    /// Replaces `var` by `alpha X + beta Y`.
    pub fn substitute(&self, var: Var, alpha: &Rational, beta: &Rational) -> Self {
        let n = self.max_total_degree;
        let form = Self::linear(n, alpha.clone(), beta.clone());
        let mut out = Self::zero(n);
        for (&(i, j), c) in &self.coeffs {
            let (replaced, kept) = match var {
                Var::X => (i, Self::monomial(n, 0, j, c.clone())),
                Var::Y => (j, Self::monomial(n, i, 0, c.clone())),
            };
            let term = form.pow(replaced).mul(&kept).expect("same degree");
            out = out.add(&term).expect("same degree");
        }
        out
    }

    /// Terms of total degree exactly `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        let mut out = Self::zero(self.max_total_degree);
        for (&(i, j), c) in &self.coeffs {
            if i + j == deg {
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    /// Every monomial up to the truncation degree, zeros included, ordered by
    /// `(i + j, i)`.
    pub fn dense(&self) -> Vec<(u32, u32, Rational)> {
        let mut out = Vec::new();
        for deg in 0..=self.max_total_degree {
            for i in 0..=deg {
                out.push((i, deg - i, self.coeff(i, deg - i)));
            }
        }
        out
    }

    /// One line `i j num/den` per monomial, ordered by `(i + j, i)`.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        for (i, j, c) in self.dense() {
            let _ = writeln!(s, "{i} {j} {}", rat_string(&c));
        }
        s
    }
}

/// Laurent-truncated series: exponents `>= -1` per variable, total degree
/// at most `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    max_total_degree: i32,
    coeffs: BTreeMap<(i32, i32), Rational>,
}

impl LaurentSeries {
    pub const EXPONENT_FLOOR: i32 = -1;

    pub fn max_total_degree(&self) -> i32 {
        self.max_total_degree
    }

    pub fn coeff(&self, i: i32, j: i32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.coeffs.iter()
    }

    /// Dense listing ordered by `(i + j, i)`, starting at total degree `-2`.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        for deg in -2..=self.max_total_degree {
            for i in Self::EXPONENT_FLOOR..=deg - Self::EXPONENT_FLOOR {
                let j = deg - i;
                let _ = writeln!(s, "{i} {j} {}", rat_string(&self.coeff(i, j)));
            }
        }
        s
    }
}

/// Parameters of the three-term generating-function reciprocity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    #[serde(serialize_with = "ser_rat")]
    pub x: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub y: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub z: Rational,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl OmegaParams {
    pub fn new(a: i64, b: i64, c: i64, d: i64, x: Rational, y: Rational, z: Rational) -> Self {
        OmegaParams { a, b, c, d, x, y, z }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a < 1 || self.b < 1 || self.c < 1 || self.d < 1 {
            return Err(Error::Precondition("a, b, c, d must be positive".into()));
        }
        if self.d % 2 != 0 {
            return Err(Error::Precondition(format!("d = {} must be even", self.d)));
        }
        if !pairwise_coprime(self.a, self.b, self.c) {
            return Err(Error::Precondition("a, b, c must be pairwise coprime".into()));
        }
        Ok(())
    }
}

/// The three cyclic slot arrangements `(a b c | x y z | X Y Z)`,
/// `(c a b | z x y | Z X Y)` and `(b c a | y z x | Y Z X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Permutation {
    First,
    Second,
    Third,
}

impl Permutation {
    pub const ALL: [Permutation; 3] = [Permutation::First, Permutation::Second, Permutation::Third];
}

struct Slots {
    alpha: i64,
    beta: i64,
    modulus: i64,
    sx: Rational,
    sy: Rational,
    sz: Rational,
    /// `(U, V)` as coefficient pairs over `(X, Y)`.
    u: (i64, i64),
    v: (i64, i64),
}

fn slots(p: &OmegaParams, perm: Permutation) -> Slots {
    const X: (i64, i64) = (1, 0);
    const Y: (i64, i64) = (0, 1);
    const Z: (i64, i64) = (-1, -1);
    let (da, db, dc) = (p.d * p.a, p.d * p.b, p.d * p.c);
    let (x, y, z) = (p.x.clone(), p.y.clone(), p.z.clone());
    match perm {
        Permutation::First => Slots { alpha: da, beta: db, modulus: dc, sx: x, sy: y, sz: z, u: X, v: Y },
        Permutation::Second => Slots { alpha: dc, beta: da, modulus: db, sx: z, sy: x, sz: y, u: Z, v: X },
        Permutation::Third => Slots { alpha: db, beta: dc, modulus: da, sx: y, sy: z, sz: x, u: Y, v: Z },
    }
}

/// Table degree needed to build the series through total degree `n`.
pub fn omega_required_degree(n: u32) -> usize {
    n as usize + 2
}

/// The `(p, q)` summand of one cyclic generating function, homogeneous of
/// total degree `p + q - 2`.
pub fn omega_term(
    t: &Tables,
    params: &OmegaParams,
    perm: Permutation,
    p: u32,
    q: u32,
    n: u32,
) -> Result<TruncatedSeries> {
    if p == 0 || q == 0 {
        return Err(Error::Precondition("orders p, q start at 1".into()));
    }
    let s = slots(params, perm);
    let sum = s_pq_bar(t, p as usize, q as usize, s.alpha, s.beta, s.modulus, &s.sx, &s.sy, &s.sz)?;
    let weight = Rational::new(BigInt::from(p * q), factorial(p) * factorial(q) * BigInt::from(4));
    let u = TruncatedSeries::linear(n, ratio(s.u.0, s.alpha), ratio(s.u.1, s.alpha));
    let v = TruncatedSeries::linear(n, ratio(s.v.0, s.beta), ratio(s.v.1, s.beta));
    Ok(u.pow(p - 1).mul(&v.pow(q - 1))?.scale(&(weight * sum)))
}

/// One cyclic generating function truncated at total degree `n`.
pub fn omega_series(t: &Tables, params: &OmegaParams, perm: Permutation, n: u32) -> Result<TruncatedSeries> {
    params.validate()?;
    let mut out = TruncatedSeries::zero(n);
    for p in 1..=n + 1 {
        for q in 1..=n + 2 - p {
            out = out.add(&omega_term(t, params, perm, p, q, n)?)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParityClass {
    /// `a0 + b0 + c0` even, right side `-1/4`.
    Even,
    /// `a0 + b0 + c0` odd, right side `1/4`.
    Odd,
    /// Witnesses of both parities exist.
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_rat")]
    pub r: Rational,
    pub a0: i64,
    pub b0: i64,
    pub c0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub parity_class: Option<ParityClass>,
    /// First witness found, scanning `R = (x + k)/(da)` for increasing `k`.
    pub witness: Option<Witness>,
}

fn as_i64(r: &Rational) -> i64 {
    i64::try_from(r.to_integer()).expect("offset fits in i64")
}

/// Decides whether `(x, y, z) = (da, db, dc) R + (a0, b0, c0)` for some real
/// `R` and integers `a0, b0, c0`.
pub fn omega_membership(
    x: &Rational,
    y: &Rational,
    z: &Rational,
    da: i64,
    db: i64,
    dc: i64,
) -> MembershipVerdict {
    let mut witness = None;
    let (mut even, mut odd) = (false, false);
    for k in 0..da {
        let r = (x + int(k)) / int(da);
        let b0 = y - int(db) * &r;
        let c0 = z - int(dc) * &r;
        if !is_integer(&b0) || !is_integer(&c0) {
            continue;
        }
        let a0 = x - int(da) * &r;
        let w = Witness {
            r,
            a0: as_i64(&a0),
            b0: as_i64(&b0),
            c0: as_i64(&c0),
        };
        if (w.a0 + w.b0 + w.c0) % 2 == 0 {
            even = true;
        } else {
            odd = true;
        }
        witness.get_or_insert(w);
    }
    let parity_class = match (even, odd) {
        (true, true) => Some(ParityClass::Ambiguous),
        (true, false) => Some(ParityClass::Even),
        (false, true) => Some(ParityClass::Odd),
        (false, false) => None,
    };
    MembershipVerdict {
        member: witness.is_some(),
        parity_class,
        witness,
    }
}

impl MembershipVerdict {
    /// Stated right-hand constant; `None` when the parity class is ambiguous.
    pub fn rhs(&self) -> Option<Rational> {
        match self.parity_class {
            None => Some(Rational::zero()),
            Some(ParityClass::Even) => Some(ratio(-1, 4)),
            Some(ParityClass::Odd) => Some(ratio(1, 4)),
            Some(ParityClass::Ambiguous) => None,
        }
    }

    pub fn branch(&self) -> &'static str {
        match self.parity_class {
            None => "non-member",
            Some(ParityClass::Ambiguous) => "ambiguous",
            Some(_) => "member",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaReport {
    pub params: OmegaParams,
    pub degree: u32,
    pub verdict: MembershipVerdict,
    /// Sum of the three cyclic series.
    pub lhs: TruncatedSeries,
    /// `lhs` minus the stated constant; absent when the verdict is ambiguous.
    pub residual: Option<TruncatedSeries>,
    pub status: CheckStatus,
}

impl OmegaReport {
    pub fn lhs_constant(&self) -> Rational {
        self.lhs.coeff(0, 0)
    }

    /// Residual coefficients grouped by total degree, zeros included.
    pub fn residual_by_degree(&self) -> Vec<DegreeRow> {
        let Some(res) = &self.residual else {
            return Vec::new();
        };
        let mut out: Vec<DegreeRow> = Vec::new();
        for (i, j, c) in res.dense() {
            match out.last_mut() {
                Some((deg, v)) if *deg == i + j => v.push((i, j, c)),
                _ => out.push((i + j, vec![(i, j, c)])),
            }
        }
        out
    }

    /// First nonzero residual coefficient in `(i + j, i)` order.
    pub fn first_nonzero(&self) -> Option<(u32, u32, Rational)> {
        self.residual
            .as_ref()?
            .dense()
            .into_iter()
            .find(|(_, _, c)| !c.is_zero())
    }
}

/// Adds the three cyclic series and compares against the stated constant,
/// degree by degree.
/// Total degree with its `(i, j, coefficient)` entries.
pub type DegreeRow = (u32, Vec<(u32, u32, Rational)>);

pub fn check_omega_reciprocity(t: &Tables, params: &OmegaParams, n: u32) -> Result<OmegaReport> {
    params.validate()?;
    let d = params.d;
    let verdict = omega_membership(
        &params.x,
        &params.y,
        &params.z,
        d * params.a,
        d * params.b,
        d * params.c,
    );
    let mut lhs = TruncatedSeries::zero(n);
    for perm in Permutation::ALL {
        lhs = lhs.add(&omega_series(t, params, perm, n)?)?;
    }
    let residual = verdict
        .rhs()
        .map(|rhs| lhs.sub(&TruncatedSeries::constant(n, rhs)))
        .transpose()?;
    let status = match &residual {
        None => CheckStatus::Indeterminate,
        Some(r) if r.is_zero() => CheckStatus::Pass,
        Some(_) => CheckStatus::Fail,
    };
    Ok(OmegaReport {
        params: params.clone(),
        degree: n,
        verdict,
        lhs,
        residual,
        status,
    })
}

/// Hall–Wilson–Zagier generating function in its own leading variables:
/// `sum_{p,q>=0} s_{p,q}(a b c | x y z) (X/a)^(p-1) (Y/b)^(q-1) / (p! q!)`,
/// truncated at total degree `n`.
#[allow(clippy::too_many_arguments)]
pub fn hwz_g_series(
    t: &Tables,
    a: i64,
    b: i64,
    c: i64,
    x: &Rational,
    y: &Rational,
    z: &Rational,
    n: u32,
) -> Result<LaurentSeries> {
    if !pairwise_coprime(a, b, c) || a < 1 || b < 1 || c < 1 {
        return Err(Error::Precondition("a, b, c must be pairwise coprime positive integers".into()));
    }
    let mut coeffs = BTreeMap::new();
    for p in 0..=n + 2 {
        for q in 0..=n + 2 - p {
            let s = hwz_s(t, p as usize, q as usize, a, b, c, x, y, z)?;
            if s.is_zero() {
                continue;
            }
            let (i, j) = (p as i64 - 1, q as i64 - 1);
            let scale = Rational::new(BigInt::one(), factorial(p) * factorial(q)) * pow_i(a, -i) * pow_i(b, -j);
            coeffs.insert((i as i32, j as i32), s * scale);
        }
    }
    Ok(LaurentSeries {
        max_total_degree: n as i32,
        coeffs,
    })
}
