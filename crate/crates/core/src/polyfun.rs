//! Bernoulli and Euler polynomials, their periodic extensions and the
//! "bar" variants that are modified at integer arguments.
//!
//! Coefficients are computed once for a fixed maximum degree and frozen.
//! Every polynomial is also stored as integer numerators over a common
//! denominator, so that evaluation at `r/d` reduces to integer Horner steps
//! and a single division. The sum kernel relies on that form.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{binom, factorial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyKind {
    Bernoulli,
    Euler,
}

/// Which periodic function acts on a linear argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `B_n(x - [x])`.
    BernoulliFun,
    /// Same as `BernoulliFun` except that order 1 is the sawtooth, which is 0 at integers.
    BernoulliBar,
    /// `(-1)^[x] E_n(x - [x])`.
    EulerFun,
    /// Same as `EulerFun` except that order 0 vanishes at integers.
    EulerBar,
}

impl Family {
    pub fn kind(self) -> PolyKind {
        match self {
            Family::BernoulliFun | Family::BernoulliBar => PolyKind::Bernoulli,
            Family::EulerFun | Family::EulerBar => PolyKind::Euler,
        }
    }

    /// True when the value at an integer argument is forced to zero.
    fn vanishes_at_integers(self, order: usize) -> bool {
        matches!(
            (self, order),
            (Family::BernoulliBar, 1) | (Family::EulerBar, 0)
        )
    }
}

#[derive(Debug, Clone)]
struct ScaledPoly {
    /// `numer[i]` is the coefficient of `x^i` times `denom`.
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl ScaledPoly {
    fn from_coeffs(coeffs: &[Rational]) -> Self {
        let denom = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        ScaledPoly { numer, denom }
    }
}

/// Dense coefficient table for `B_0..B_max` or `E_0..E_max`.
#[derive(Debug, Clone)]
pub struct PolyTable {
    kind: PolyKind,
    max_degree: usize,
    coeffs: Vec<Vec<Rational>>,
    scaled: Vec<ScaledPoly>,
}

impl PolyTable {
    fn new(kind: PolyKind, coeffs: Vec<Vec<Rational>>) -> Self {
        let scaled = coeffs.iter().map(|c| ScaledPoly::from_coeffs(c)).collect();
        PolyTable {
            kind,
            max_degree: coeffs.len() - 1,
            coeffs,
            scaled,
        }
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    /// Monomial coefficients of the degree-`n` polynomial, constant term first.
    pub fn coeffs(&self, n: usize) -> Result<&[Rational]> {
        self.check(n)?;
        Ok(&self.coeffs[n])
    }

    /// Evaluates the polynomial itself (not its periodic extension).
    pub fn eval(&self, n: usize, x: &Rational) -> Result<Rational> {
        let c = self.coeffs(n)?;
        Ok(c.iter()
            .rev()
            .fold(Rational::zero(), |acc, k| acc * x + k))
    }

    /// Common denominator `L_n` of the degree-`n` coefficients.
    pub(crate) fn common_denom(&self, n: usize) -> &BigInt {
        &self.scaled[n].denom
    }

    /// `sum_i L_n c_i r^i d^(n-i)`, so that `P_n(r/d) = result / (L_n d^n)`.
    /// `dpow[k]` must hold `d^k` for `k <= n`.
    pub(crate) fn eval_scaled(&self, n: usize, r: &BigInt, dpow: &[BigInt]) -> BigInt {
        let k = &self.scaled[n].numer;
        let mut acc = k[n].clone();
        for i in (0..n).rev() {
            acc *= r;
            acc += &k[i] * &dpow[n - i];
        }
        acc
    }
}

fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max + 1);
    b.push(Rational::one());
    for n in 1..=max {
        // sum_{k<=n} C(n+1,k) B_k = 0
        let s = (0..n).fold(Rational::zero(), |acc, k| {
            acc + Rational::from_integer(binom(n as i64 + 1, k as i64)) * &b[k]
        });
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Builds the Bernoulli and Euler tables valid up to `max_degree`.
///
/// Euler coefficients come from `E_{n-1}(x) = (2/n)(B_n(x) - 2^n B_n(x/2))`.
pub fn build_tables(max_degree: usize) -> (PolyTable, PolyTable) {
    let numbers = bernoulli_numbers(max_degree + 1);
    let bern: Vec<Vec<Rational>> = (0..=max_degree + 1)
        .map(|n| {
            (0..=n)
                .map(|k| Rational::from_integer(binom(n as i64, k as i64)) * &numbers[n - k])
                .collect()
        })
        .collect();

    let euler: Vec<Vec<Rational>> = (0..=max_degree)
        .map(|m| {
            let n = m + 1;
            let scale = Rational::new(BigInt::from(2), BigInt::from(n));
            (0..=m)
                .map(|k| {
                    let two_pow = BigInt::one() << (n - k);
                    let factor = Rational::from_integer(BigInt::one() - two_pow);
                    &scale * &bern[n][k] * factor
                })
                .collect()
        })
        .collect();

    let half = Rational::new(BigInt::from(-1), BigInt::from(2));
    assert_eq!(euler[0], vec![Rational::one()], "E_0 must be 1");
    if max_degree >= 1 {
        assert_eq!(euler[1], vec![half, Rational::one()], "E_1 must be x - 1/2");
    }

    let mut bern = bern;
    bern.truncate(max_degree + 1);
    (
        PolyTable::new(PolyKind::Bernoulli, bern),
        PolyTable::new(PolyKind::Euler, euler),
    )
}

/// `x = floor + frac` with `0 <= frac < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorSplit {
    pub floor: BigInt,
    pub frac: Rational,
}

pub fn floor_split(x: &Rational) -> FloorSplit {
    let floor = x.numer().div_floor(x.denom());
    let frac = x - Rational::from_integer(floor.clone());
    FloorSplit { floor, frac }
}

/// `((x))`: `x - [x] - 1/2` off the integers and 0 on them.
pub fn sawtooth(x: &Rational) -> Rational {
    let FloorSplit { frac, .. } = floor_split(x);
    if frac.is_zero() {
        Rational::zero()
    } else {
        frac - Rational::new(BigInt::one(), BigInt::from(2))
    }
}

/// Frozen Bernoulli and Euler tables plus evaluation of the periodic functions.
#[derive(Debug, Clone)]
pub struct Tables {
    bernoulli: PolyTable,
    euler: PolyTable,
}

impl Tables {
    pub fn new(max_degree: usize) -> Self {
        let (bernoulli, euler) = build_tables(max_degree);
        Tables { bernoulli, euler }
    }

    pub fn max_degree(&self) -> usize {
        self.bernoulli.max_degree.min(self.euler.max_degree)
    }

    pub fn bernoulli(&self) -> &PolyTable {
        &self.bernoulli
    }

    pub fn euler(&self) -> &PolyTable {
        &self.euler
    }

    pub(crate) fn table(&self, kind: PolyKind) -> &PolyTable {
        match kind {
            PolyKind::Bernoulli => &self.bernoulli,
            PolyKind::Euler => &self.euler,
        }
    }

    pub fn eval(&self, family: Family, n: usize, x: &Rational) -> Result<Rational> {
        let table = self.table(family.kind());
        table.check(n)?;
        let FloorSplit { floor, frac } = floor_split(x);
        if frac.is_zero() && family.vanishes_at_integers(n) {
            return Ok(Rational::zero());
        }
        let v = table.eval(n, &frac)?;
        match family.kind() {
            PolyKind::Euler if floor.is_odd() => Ok(-v),
            _ => Ok(v),
        }
    }

    /// `B_n(x - [x])`.
    pub fn bernoulli_fun(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.eval(Family::BernoulliFun, n, x)
    }

    pub fn bbar_fun(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.eval(Family::BernoulliBar, n, x)
    }

    /// `(-1)^[x] E_n(x - [x])`.
    pub fn euler_fun(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.eval(Family::EulerFun, n, x)
    }

    pub fn ebar_fun(&self, n: usize, x: &Rational) -> Result<Rational> {
        self.eval(Family::EulerBar, n, x)
    }

    /// Evaluates a family at `num/den` (`den > 0`, not necessarily reduced)
    /// and returns the numerator over the fixed denominator
    /// `common_denom(n) * den^n`. `dpow[k] = den^k`.
    pub(crate) fn eval_over_fixed_denom(
        &self,
        family: Family,
        n: usize,
        num: &BigInt,
        den: &BigInt,
        dpow: &[BigInt],
    ) -> BigInt {
        let (q, r) = num.div_mod_floor(den);
        if r.is_zero() && family.vanishes_at_integers(n) {
            return BigInt::zero();
        }
        let v = self.table(family.kind()).eval_scaled(n, &r, dpow);
        match family.kind() {
            PolyKind::Euler if q.is_odd() => -v,
            _ => v,
        }
    }
}

/// Symmetric partial sum of the Fourier series of the Bernoulli function
/// of order `p`, over `0 < |m| <= terms`.
pub fn fourier_partial(p: u32, x: f64, terms: u64) -> Result<f64> {
    if p == 0 {
        return Err(Error::Domain("Fourier series needs p >= 1".into()));
    }
    if p == 1 && (x - x.round()).abs() < 1e-9 {
        return Err(Error::Domain(
            "order-1 Fourier series is excluded at integer arguments".into(),
        ));
    }
    let pf = factorial(p).to_f64().unwrap_or(f64::INFINITY);
    let two_pi_p = (2.0 * PI).powi(p as i32);
    // pairing m with -m: even p gives 2cos/m^p, odd p gives 2i sin/m^p
    let mut acc = 0.0;
    for m in (1..=terms).rev() {
        let mf = m as f64;
        let theta = 2.0 * PI * mf * x;
        let t = if p.is_multiple_of(2) { theta.cos() } else { theta.sin() };
        acc += t / mf.powi(p as i32);
    }
    // 1/i^p contributes (-1)^(p/2) once the i from the odd pairing cancels
    let sign = if (p / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(-pf / two_pi_p * sign * 2.0 * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn tables() -> Tables {
        Tables::new(10)
    }

    #[test]
    fn low_degree_coefficients() {
        let (b, e) = build_tables(2);
        assert_eq!(b.coeffs(0).unwrap(), &[int(1)]);
        assert_eq!(b.coeffs(1).unwrap(), &[ratio(-1, 2), int(1)]);
        // Bernoulli-number recurrence gives B_2 = 1/6
        assert_eq!(b.coeffs(2).unwrap(), &[ratio(1, 6), int(-1), int(1)]);
        assert_eq!(e.coeffs(2).unwrap(), &[int(0), int(-1), int(1)]);
        assert!(matches!(
            b.coeffs(3),
            Err(Error::DegreeOutOfRange { requested: 3, max: 2 })
        ));
    }

    #[test]
    fn bernoulli_numbers_match_known_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[6], ratio(1, 42));
        assert_eq!(b[12], ratio(-691, 2730));
        assert_eq!(b[11], int(0));
    }

    #[test]
    fn floor_split_examples() {
        let s = floor_split(&ratio(7, 3));
        assert_eq!((s.floor, s.frac), (BigInt::from(2), ratio(1, 3)));
        let s = floor_split(&ratio(-1, 2));
        assert_eq!((s.floor, s.frac), (BigInt::from(-1), ratio(1, 2)));
        let s = floor_split(&int(3));
        assert_eq!((s.floor, s.frac), (BigInt::from(3), int(0)));
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&ratio(7, 3)), ratio(-1, 6));
        assert_eq!(sawtooth(&int(2)), int(0));
        assert_eq!(sawtooth(&ratio(-1, 6)), ratio(1, 3));
    }

    #[test]
    fn periodic_function_examples() {
        let t = tables();
        assert_eq!(t.bernoulli_fun(1, &int(0)).unwrap(), ratio(-1, 2));
        assert_eq!(t.bernoulli_fun(1, &ratio(1, 2)).unwrap(), int(0));
        assert_eq!(t.bernoulli_fun(2, &ratio(5, 2)).unwrap(), ratio(-1, 12));

        assert_eq!(t.bbar_fun(1, &int(0)).unwrap(), int(0));
        assert_eq!(t.bbar_fun(2, &ratio(1, 3)).unwrap(), ratio(-1, 18));
        assert_eq!(t.bbar_fun(0, &ratio(-7, 5)).unwrap(), int(1));

        assert_eq!(t.euler_fun(1, &int(0)).unwrap(), ratio(-1, 2));
        assert_eq!(t.euler_fun(0, &ratio(1, 3)).unwrap(), int(1));
        assert_eq!(t.euler_fun(0, &ratio(3, 2)).unwrap(), int(-1));

        assert_eq!(t.ebar_fun(0, &int(5)).unwrap(), int(0));
        assert_eq!(t.ebar_fun(0, &ratio(1, 2)).unwrap(), int(1));
        // E_3(0) = 1/4 and the floor 2 contributes no sign
        assert_eq!(t.ebar_fun(3, &int(2)).unwrap(), ratio(1, 4));
        assert_eq!(t.ebar_fun(2, &int(3)).unwrap(), int(0));
    }

    #[test]
    fn sawtooth_is_bbar_one() {
        let t = tables();
        for num in -13..13 {
            let x = ratio(num, 6);
            assert_eq!(sawtooth(&x), t.bbar_fun(1, &x).unwrap());
        }
    }

    #[test]
    fn out_of_range_degree_is_an_error() {
        let t = Tables::new(3);
        assert!(t.bernoulli_fun(4, &int(0)).is_err());
        assert!(t.euler_fun(4, &int(0)).is_err());
        assert!(t.euler_fun(3, &int(0)).is_ok());
    }

    #[test]
    fn fixed_denominator_evaluation_matches_rational() {
        let t = tables();
        let fams = [
            Family::BernoulliFun,
            Family::BernoulliBar,
            Family::EulerFun,
            Family::EulerBar,
        ];
        for fam in fams {
            for n in 0..=6usize {
                for num in -20i64..20 {
                    let den = BigInt::from(6);
                    let dpow: Vec<BigInt> = (0..=n).map(|k| num_traits::pow(den.clone(), k)).collect();
                    let got = t.eval_over_fixed_denom(fam, n, &BigInt::from(num), &den, &dpow);
                    let fixed = t.table(fam.kind()).common_denom(n) * &dpow[n];
                    let want = t.eval(fam, n, &ratio(num, 6)).unwrap();
                    assert_eq!(Rational::new(got, fixed), want, "{fam:?} {n} {num}/6");
                }
            }
        }
    }

    #[test]
    fn fourier_domain() {
        assert!(fourier_partial(1, 2.0, 10).is_err());
        assert!(fourier_partial(0, 0.3, 10).is_err());
        assert!(fourier_partial(2, 0.0, 10).is_ok());
    }

    #[test]
    fn fourier_examples() {
        let v = fourier_partial(2, 0.0, 10_000).unwrap();
        assert!((v - 1.0 / 6.0).abs() <= 1e-4);
        let v = fourier_partial(2, 0.25, 10_000).unwrap();
        assert!((v + 1.0 / 48.0).abs() <= 1e-4);
        let v = fourier_partial(1, 0.5, 100_000).unwrap();
        assert!(v.abs() <= 1e-3);
        // odd order away from the discontinuity
        let v = fourier_partial(3, 0.2, 10_000).unwrap();
        let exact = tables().bernoulli_fun(3, &ratio(1, 5)).unwrap();
        assert!((v - exact.to_f64().unwrap()).abs() <= 1e-6);
    }
}
