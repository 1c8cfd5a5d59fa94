//! The coefficient ring `Z[Γ]`.
//!
//! `Γ` is realized as `Z^r` with the lexicographic order. Exponents are kept
//! in half-step units (the stored vector is `2γ`) so that `q_s^{1/2}` stays
//! integral. Coefficients are `i64` and every operation is overflow-checked.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};

/// Largest supported rank of `Γ`.
pub const MAX_GAMMA_RANK: usize = 8;

/// A point of `Γ`, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent([i32; MAX_GAMMA_RANK]);

impl Exponent {
    pub const ZERO: Exponent = Exponent([0; MAX_GAMMA_RANK]);

    pub fn from_doubled(doubled: &[i32]) -> Result<Self> {
        if doubled.len() > MAX_GAMMA_RANK {
            return Err(Error::InvalidWeights(format!(
                "exponent vector of length {} exceeds the supported rank {MAX_GAMMA_RANK}",
                doubled.len()
            )));
        }
        let mut v = [0; MAX_GAMMA_RANK];
        v[..doubled.len()].copy_from_slice(doubled);
        Ok(Exponent(v))
    }

    /// Builds an exponent from whole `γ` units.
    pub fn from_units(units: &[i32]) -> Result<Self> {
        let doubled: Vec<i32> = units.iter().map(|u| 2 * u).collect();
        Self::from_doubled(&doubled)
    }

    /// `k` whole units along the first axis.
    pub fn units(k: i32) -> Self {
        let mut v = [0; MAX_GAMMA_RANK];
        v[0] = 2 * k;
        Exponent(v)
    }

    pub fn doubled(&self) -> &[i32; MAX_GAMMA_RANK] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|d| d % 2 == 0)
    }

    /// Sum of the coordinates in half-step units.
    pub fn half_steps(&self) -> i64 {
        self.0.iter().map(|&d| d as i64).sum()
    }

    /// Number of leading coordinates needed to write this exponent.
    pub fn used_rank(&self) -> usize {
        self.0.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1)
    }

    /// `γ/2`, if it is again a half-step vector.
    fn halved(&self) -> Option<Self> {
        if self.0.iter().any(|d| d % 2 != 0) {
            return None;
        }
        let mut v = self.0;
        v.iter_mut().for_each(|d| *d /= 2);
        Some(Exponent(v))
    }

    fn fmt_coord(d: i32) -> String {
        if d % 2 == 0 {
            (d / 2).to_string()
        } else {
            format!("{d}/2")
        }
    }

    fn fmt_with_rank(&self, rank: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if rank <= 1 {
            let d = self.0[0];
            match d {
                2 => write!(f, "q"),
                _ if d % 2 == 0 => write!(f, "q^{}", d / 2),
                _ => write!(f, "q^({d}/2)"),
            }
        } else {
            let coords: Vec<String> = self.0[..rank].iter().map(|&d| Self::fmt_coord(d)).collect();
            write!(f, "q^({})", coords.join(","))
        }
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        let mut v = self.0;
        v.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        Exponent(v)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        self + (-rhs)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        let mut v = self.0;
        v.iter_mut().for_each(|a| *a = -*a);
        Exponent(v)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.used_rank().max(1)])
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow in Z[Γ]")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow in Z[Γ]")
}

/// An element of `Z[Γ]`: a finite sum of monomials `c q^γ`, no zero terms stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Exponent, i64>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(c: i64) -> Self {
        Scalar::monomial(Exponent::ZERO, c)
    }

    pub fn monomial(e: Exponent, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Scalar { terms }
    }

    /// `q^k` in the rank-one (equal parameter) realization.
    pub fn q_pow(k: i32) -> Self {
        Scalar::monomial(Exponent::units(k), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, i64)>>(terms: I) -> Self {
        let mut s = Scalar::zero();
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn add_term(&mut self, e: Exponent, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &i64)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exponent::ZERO) == Some(&1)
    }

    /// The constant term, if this scalar is an integer.
    pub fn as_int(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Exponent::ZERO).copied(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<(Exponent, i64)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, *c))
    }

    pub fn trailing(&self) -> Option<(Exponent, i64)> {
        self.terms.iter().next().map(|(e, c)| (*e, *c))
    }

    /// Largest coordinate count used by any exponent.
    pub fn used_rank(&self) -> usize {
        self.terms.keys().map(|e| e.used_rank()).max().unwrap_or(0)
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        if c == 0 {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, v)| (*e, checked_mul(*v, c))).collect() }
    }

    pub fn shift(&self, by: Exponent) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, v)| (*e + by, *v)).collect() }
    }

    /// `q^γ ↦ q^{-γ}`.
    pub fn bar(&self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, v)| (-*e, *v)).collect() }
    }

    /// The sign twist: a monomial with `k` half-steps picks up `(-1)^k`.
    pub fn phi(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, if e.half_steps() % 2 == 0 { *v } else { -*v }))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(Exponent::is_integral)
    }

    /// True when every exponent is integral and at least `min`.
    pub fn exponents_at_least(&self, min: Exponent) -> bool {
        self.terms.keys().all(|e| e.is_integral() && *e >= min)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0, |acc, c| checked_add(acc, *c))
    }

    /// Exact quotient `self / d`, if it exists in `Z[Γ]`.
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        let (d_lead, d_lc) = d.leading()?;
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (d_trail, _) = d.trailing()?;
        let (n_trail, _) = self.trailing()?;
        // Under a monomial order the quotient's trailing exponent is fixed.
        let floor = n_trail - d_trail;
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while let Some((r_lead, r_lc)) = rem.leading() {
            let e = r_lead - d_lead;
            if e < floor || r_lc % d_lc != 0 {
                return None;
            }
            let c = r_lc / d_lc;
            quot.add_term(e, c);
            rem = &rem - &d.shift(e).scale_int(c);
        }
        Some(quot)
    }

    /// A square root in `Z[Γ]` with positive leading coefficient, if one exists.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (lead, lc) = self.leading()?;
        let (trail, _) = self.trailing()?;
        let root_lc = isqrt(lc)?;
        let root_lead = lead.halved()?;
        let floor = trail.halved()?;
        let mut root = Scalar::monomial(root_lead, root_lc);
        loop {
            let rem = self - &(&root * &root);
            let Some((r_lead, r_lc)) = rem.leading() else {
                return Some(root);
            };
            // rem's leading term must come from 2 * root_lead * t
            let e = r_lead - root_lead;
            let denom = 2 * root_lc;
            if e < floor || e >= root.trailing()?.0 || r_lc % denom != 0 {
                return None;
            }
            root.add_term(e, r_lc / denom);
        }
    }

    /// Rendering with an explicit rank of `Γ`.
    pub fn display(&self, rank: usize) -> ScalarDisplay<'_> {
        ScalarDisplay { scalar: self, rank }
    }

    /// `[doubled exponent vector, coefficient]` pairs in ascending exponent order.
    pub fn to_pairs(&self, rank: usize) -> Vec<(Vec<i32>, i64)> {
        let rank = rank.max(1);
        self.terms.iter().map(|(e, c)| (e.doubled()[..rank].to_vec(), *c)).collect()
    }

    pub fn from_pairs(pairs: &[(Vec<i32>, i64)]) -> Result<Scalar> {
        let mut s = Scalar::zero();
        for (d, c) in pairs {
            s.add_term(Exponent::from_doubled(d)?, *c);
        }
        Ok(s)
    }
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea + *eb, checked_mul(*ca, *cb));
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale_int(-1)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, *c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -*c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::int(c)
    }
}

pub struct ScalarDisplay<'a> {
    scalar: &'a Scalar,
    rank: usize,
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, &c)) in self.scalar.terms.iter().rev().enumerate() {
            let constant = e.is_zero();
            if c < 0 {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let a = c.unsigned_abs();
            if constant {
                write!(f, "{a}")?;
            } else {
                if a != 1 {
                    write!(f, "{a}")?;
                }
                e.fmt_with_rank(self.rank, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(self.used_rank()).fmt(f)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Parses the output of [`Scalar::display`], e.g. `q^2-2q+1`, `q^(1/2)`, `q^(1,-1/2)+3`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Config(format!("cannot parse scalar {s:?}: {why}"));
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = Scalar::zero();
        let mut i = 0;
        while i < src.len() {
            let mut sign = 1i64;
            if src[i] == '+' || src[i] == '-' {
                if src[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("expected + or -"));
            }
            let start = i;
            while i < src.len() && src[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                src[start..i].iter().collect::<String>().parse().map_err(|_| bad("coefficient"))?
            } else {
                1
            };
            let mut exp = Exponent::ZERO;
            if i < src.len() && src[i] == 'q' {
                i += 1;
                exp = Exponent::units(1);
                if i < src.len() && src[i] == '^' {
                    i += 1;
                    if i < src.len() && src[i] == '(' {
                        let close = src[i..].iter().position(|&c| c == ')').ok_or_else(|| bad("unclosed ("))? + i;
                        let inner: String = src[i + 1..close].iter().collect();
                        let mut doubled = Vec::new();
                        for part in inner.split(',') {
                            doubled.push(parse_half(part).ok_or_else(|| bad("exponent"))?);
                        }
                        exp = Exponent::from_doubled(&doubled)?;
                        i = close + 1;
                    } else {
                        let start = i;
                        if i < src.len() && src[i] == '-' {
                            i += 1;
                        }
                        while i < src.len() && src[i].is_ascii_digit() {
                            i += 1;
                        }
                        let k: i32 = src[start..i].iter().collect::<String>().parse().map_err(|_| bad("exponent"))?;
                        exp = Exponent::units(k);
                    }
                }
            } else if i == start {
                return Err(bad("expected a term"));
            }
            out.add_term(exp, sign * coeff);
        }
        Ok(out)
    }
}

fn parse_half(part: &str) -> Option<i32> {
    match part.split_once('/') {
        Some((n, "2")) => n.parse().ok(),
        Some(_) => None,
        None => part.parse::<i32>().ok().map(|k| 2 * k),
    }
}

/// A weight function `L: W -> Γ`, given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    rank: usize,
    values: Vec<Exponent>,
}

impl WeightFunction {
    /// Builds a weight function from per-generator vectors in whole `γ` units.
    pub fn from_units(rank: usize, values: &[Vec<i32>]) -> Result<Self> {
        if rank == 0 || rank > MAX_GAMMA_RANK {
            return Err(Error::InvalidWeights(format!("rank {rank} outside 1..={MAX_GAMMA_RANK}")));
        }
        let mut out = Vec::with_capacity(values.len());
        for v in values {
            if v.len() != rank {
                return Err(Error::InvalidWeights(format!("weight {v:?} does not have length {rank}")));
            }
            out.push(Exponent::from_units(v)?);
        }
        Ok(WeightFunction { rank, values: out })
    }

    /// Equal parameters: `Γ = Z` and `L(s) = 1` for every generator.
    pub fn equal(n: usize) -> Self {
        WeightFunction { rank: 1, values: vec![Exponent::units(1); n] }
    }

    /// One independent unit vector per class of generators joined by odd bonds.
    pub fn generic(matrix: &CoxeterMatrix) -> Self {
        let classes = matrix.odd_classes();
        let rank = classes.iter().max().map_or(1, |c| c + 1);
        let values = classes
            .iter()
            .map(|&c| {
                let mut units = vec![0; rank];
                units[c] = 1;
                Exponent::from_units(&units).expect("rank bounded by generator count")
            })
            .collect();
        WeightFunction { rank, values }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, s: usize) -> Exponent {
        self.values[s]
    }

    /// `q_s = q^{L(s)}`.
    pub fn q_s(&self, s: usize) -> Scalar {
        Scalar::monomial(self.values[s], 1)
    }

    pub fn units(&self, s: usize) -> Vec<i32> {
        self.values[s].doubled()[..self.rank].iter().map(|d| d / 2).collect()
    }

    /// Checks `L(s) >= 0` and constancy along odd bonds.
    pub fn validate(&self, matrix: &CoxeterMatrix) -> Result<()> {
        if self.values.len() != matrix.rank() {
            return Err(Error::InvalidWeights(format!(
                "{} weights given for {} generators",
                self.values.len(),
                matrix.rank()
            )));
        }
        for (s, v) in self.values.iter().enumerate() {
            if *v < Exponent::ZERO {
                return Err(Error::InvalidWeights(format!("L(s{}) is negative", s + 1)));
            }
        }
        for s in 0..matrix.rank() {
            for t in s + 1..matrix.rank() {
                if matches!(matrix.get(s, t), Some(m) if m % 2 == 1) && self.values[s] != self.values[t] {
                    return Err(Error::InvalidWeights(format!(
                        "generators {} and {} are joined by an odd bond but carry different weights",
                        s + 1,
                        t + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The sign twist needs every `L(s)` nonzero with an odd coordinate sum.
    pub fn phi_compatible(&self) -> Result<()> {
        for (s, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::PhiUndefined(format!("L(s{}) = 0", s + 1)));
            }
            if (v.half_steps() / 2) % 2 == 0 {
                return Err(Error::PhiUndefined(format!(
                    "L(s{}) has an even coordinate sum, so q_s^(1/2) is not sign-twisted",
                    s + 1
                )));
            }
        }
        Ok(())
    }

    /// Membership `r ∈ q_s Z[Γ]`, read as: every exponent of `r` is at least `L(s)`.
    pub fn in_qs_ideal(&self, r: &Scalar, s: usize) -> bool {
        r.exponents_at_least(self.values[s])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("q-1") + Scalar::one(), Scalar::q_pow(1));
        assert_eq!(p("q-1") * p("q+1"), p("q^2-1"));
        let a = p("3q^2-q+7-q^-3");
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(Scalar::q_pow(1).bar(), Scalar::q_pow(-1));
        assert_eq!(p("q-1").bar(), p("q^-1-1"));
    }

    #[test]
    fn phi_examples() {
        let half = Scalar::monomial(Exponent::from_doubled(&[1]).unwrap(), 1);
        assert_eq!(half.phi(), -&half);
        assert_eq!(Scalar::q_pow(1).phi(), Scalar::q_pow(1));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["q^2-2q+1", "q^(1/2)", "3-q^-1", "0", "-q+2q^(-3/2)"] {
            assert_eq!(p(s).to_string(), s);
        }
        let v = p("q^(1,0)-q^(0,1/2)");
        assert_eq!(v.display(2).to_string(), "q^(1,0)-q^(0,1/2)");
        assert_eq!(v.used_rank(), 2);
    }

    #[test]
    fn exact_division() {
        let a = p("q^3-1");
        let b = p("q-1");
        assert_eq!(a.div_exact(&b), Some(p("q^2+q+1")));
        assert_eq!(p("q^2+1").div_exact(&b), None);
        assert_eq!(p("q^-1-q^2").div_exact(&p("q^-1")), Some(p("1-q^3")));
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(p("q^2-2q+1").sqrt_exact(), Some(p("q-1")));
        assert_eq!(p("q^2+2q^3+q^4").sqrt_exact(), Some(p("q^2+q")));
        assert_eq!(p("q^2+1").sqrt_exact(), None);
        assert_eq!(p("4").sqrt_exact(), Some(p("2")));
    }

    #[test]
    fn qs_ideal_membership() {
        let w = WeightFunction::equal(2);
        assert!(w.in_qs_ideal(&Scalar::q_pow(2), 0));
        assert!(!w.in_qs_ideal(&p("q+1"), 0));
        assert!(w.in_qs_ideal(&Scalar::zero(), 0));
    }
}
