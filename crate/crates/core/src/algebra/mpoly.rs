use std::collections::hash_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use dashu::base::{Gcd, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;
use num_complex::Complex64;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::numeric::{ComplexValue, Numeric};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// The six indeterminates used anywhere in the engine.
///
/// Only `S` may carry negative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    S,
    U,
    T,
    A,
    B,
    C,
}

impl Var {
    /// Display order inside a printed term.
    pub const ALL: [Var; 6] = [Var::S, Var::U, Var::T, Var::A, Var::B, Var::C];

    /// Slot in the exponent vector; slot order is the lex order t > u > s > a > b > c.
    pub const fn slot(self) -> usize {
        match self {
            Var::T => 0,
            Var::U => 1,
            Var::S => 2,
            Var::A => 3,
            Var::B => 4,
            Var::C => 5,
        }
    }

    pub const fn name(self) -> char {
        match self {
            Var::S => 's',
            Var::U => 'u',
            Var::T => 't',
            Var::A => 'a',
            Var::B => 'b',
            Var::C => 'c',
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == c)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub type Monomial = [i32; 6];

const ONE_MONO: Monomial = [0; 6];

fn mono_add(a: &Monomial, b: &Monomial) -> Monomial {
    let mut r = *a;
    for i in 0..6 {
        r[i] += b[i];
    }
    r
}

fn mono_sub(a: &Monomial, b: &Monomial) -> Monomial {
    let mut r = *a;
    for i in 0..6 {
        r[i] -= b[i];
    }
    r
}

fn mono_divides(d: &Monomial, m: &Monomial) -> bool {
    (0..6).all(|i| m[i] >= d[i])
}

/// Sparse multivariate polynomial over the rationals, Laurent in `s`.
///
/// Terms are kept sorted in strictly decreasing lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, ExactScalar)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: vec![(ONE_MONO, c)],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(ExactScalar::from(n))
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    /// `v^e`; negative `e` is only meaningful for `s`.
    pub fn var_pow(v: Var, e: i32) -> Self {
        assert!(e >= 0 || v == Var::S, "only s may have a negative exponent");
        let mut m = ONE_MONO;
        m[v.slot()] = e;
        MPoly {
            terms: vec![(m, ExactScalar::one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, ExactScalar> = BTreeMap::new();
        for (m, c) in terms {
            assert!(
                (0..6).all(|i| i == Var::S.slot() || m[i] >= 0),
                "negative exponent outside s"
            );
            *acc.entry(m).or_default() += &c;
        }
        Self::from_sorted_map(acc)
    }

    fn from_sorted_map(acc: BTreeMap<Monomial, ExactScalar>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { terms }
    }

    fn from_unsorted(mut terms: Vec<(Monomial, ExactScalar)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0).reverse());
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, ExactScalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ONE_MONO)
    }

    pub fn constant_value(&self) -> Option<ExactScalar> {
        match self.terms.as_slice() {
            [] => Some(ExactScalar::zero()),
            [(m, c)] if *m == ONE_MONO => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Leading term in lex order t > u > s > a > b > c.
    pub fn leading(&self) -> Option<&(Monomial, ExactScalar)> {
        self.terms.first()
    }

    /// Variables that actually occur, in display order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.iter().any(|(m, _)| m[v.slot()] != 0))
            .collect()
    }

    pub fn degree(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m[v.slot()]).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m[v.slot()]).min()
    }

    pub fn scale(&self, c: &ExactScalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiply by `s^k` (or any other variable for `k >= 0`).
    pub fn shift(&self, v: Var, k: i32) -> MPoly {
        let i = v.slot();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = *m;
                m[i] += k;
                assert!(m[i] >= 0 || v == Var::S, "shift produced a negative exponent");
                (m, c.clone())
            })
            .collect();
        // a uniform shift in one slot preserves lex order
        MPoly { terms }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn mul_impl(&self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if self.terms.len() == 1 || rhs.terms.len() == 1 {
            let (big, (m0, c0)) = if self.terms.len() == 1 {
                (rhs, &self.terms[0])
            } else {
                (self, &rhs.terms[0])
            };
            let terms = big.terms.iter().map(|(m, c)| (mono_add(m, m0), c * c0)).collect();
            // multiplication by a monomial is monotone for lex order
            return MPoly { terms };
        }
        if self.is_integral() && rhs.is_integral() {
            let mut acc: FxHashMap<Monomial, IBig> = FxHashMap::default();
            acc.reserve(self.terms.len() * rhs.terms.len() / 2);
            for (ma, ca) in &self.terms {
                let ca = ca.numerator();
                for (mb, cb) in &rhs.terms {
                    let prod = ca * cb.numerator();
                    match acc.entry(mono_add(ma, mb)) {
                        std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(prod);
                        }
                    }
                }
            }
            let terms = acc.into_iter().map(|(m, c)| (m, ExactScalar::from(c))).collect();
            return MPoly::from_unsorted(terms);
        }
        let mut acc: FxHashMap<Monomial, RBig> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(mono_add(ma, mb)).or_default() += ca.as_rbig() * cb.as_rbig();
            }
        }
        let terms = acc.into_iter().map(|(m, c)| (m, ExactScalar::from(c))).collect();
        MPoly::from_unsorted(terms)
    }

    fn add_impl(&self, rhs: &MPoly, negate_rhs: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &rhs.terms;
        let fix = |c: &ExactScalar| if negate_rhs { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, fix(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_rhs {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (*m, fix(c))));
        MPoly { terms: out }
    }

    /// Exact quotient `self / den`; fails loudly when the division leaves a remainder.
    ///
    /// Both operands are first shifted so the smallest `s` exponent is zero;
    /// since `s` is a unit the quotient is then an ordinary polynomial and lex
    /// division terminates.
    pub fn exact_div(&self, den: &MPoly) -> Result<MPoly> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if let Some(c) = den.constant_value() {
            return Ok(self.scale(&c.recip()?));
        }
        let sn = self.min_degree(Var::S).unwrap_or(0);
        let sd = den.min_degree(Var::S).unwrap_or(0);
        let num = self.shift(Var::S, -sn);
        let d = den.shift(Var::S, -sd);
        let (lm, lc) = d.terms[0].clone();
        let lc_inv = lc.recip()?;
        let mut rem: BTreeMap<Monomial, ExactScalar> = num.terms.into_iter().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !mono_divides(&lm, &m) {
                return Err(Error::NotDivisible(format!("{self} by {den}")));
            }
            let qm = mono_sub(&m, &lm);
            let qc = &c * &lc_inv;
            for (dm, dc) in &d.terms[1..] {
                let key = mono_add(dm, &qm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Ok(MPoly { terms: quotient }.shift(Var::S, sn - sd))
    }

    /// Coefficients with respect to `v` (which must have nonnegative exponents),
    /// indexed by exponent.
    pub fn coefficients_in(&self, v: Var) -> Vec<MPoly> {
        let i = v.slot();
        let deg = self.degree(v).unwrap_or(0).max(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, ExactScalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            assert!(m[i] >= 0, "coefficients_in needs nonnegative exponents");
            let mut m2 = *m;
            m2[i] = 0;
            buckets[m[i] as usize].push((m2, c.clone()));
        }
        // stripping the variable keeps the relative order within one bucket
        buckets.into_iter().map(|terms| MPoly { terms }).collect()
    }

    /// Inverse of [`MPoly::coefficients_in`].
    pub fn from_coefficients(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &c.shift(v, k as i32);
            }
        }
        acc
    }

    /// Substitute a rational number for `v`.
    pub fn eval_var(&self, v: Var, value: &ExactScalar) -> Result<MPoly> {
        let i = v.slot();
        let neg = self.min_degree(v).unwrap_or(0) < 0;
        if neg && value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = if neg { Some(value.recip()?) } else { None };
        let mut cache: BTreeMap<i32, ExactScalar> = BTreeMap::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m[i];
            let p = cache
                .entry(e)
                .or_insert_with(|| {
                    if e >= 0 {
                        value.pow(e as usize)
                    } else {
                        inv.as_ref().unwrap().pow((-e) as usize)
                    }
                })
                .clone();
            let mut m2 = *m;
            m2[i] = 0;
            terms.push((m2, c * &p));
        }
        let mut acc: BTreeMap<Monomial, ExactScalar> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += &c;
        }
        Ok(MPoly::from_sorted_map(acc))
    }

    /// Substitute a polynomial for `v`; `v` must occur with nonnegative exponents only.
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let coeffs = self.coefficients_in(v);
        // Horner in v
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// The image under `s -> 1/s`.
    pub fn reflect_s(&self) -> MPoly {
        let i = Var::S.slot();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = *m;
                m[i] = -m[i];
                (m, c.clone())
            })
            .collect();
        MPoly::from_unsorted(terms)
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> ExactScalar {
        let mut g = UBig::ZERO;
        let mut l = UBig::ONE;
        for (_, c) in &self.terms {
            g = (&g).gcd(c.numerator().unsigned_abs());
            let d = c.denominator();
            l = &l / (&l).gcd(d) * d;
        }
        if g == UBig::ZERO {
            return ExactScalar::zero();
        }
        ExactScalar::from_rbig(RBig::from_parts(IBig::from(g), l))
    }

    /// Content with the sign of the leading coefficient, so that
    /// `self = signed_content * primitive` with `primitive` having positive
    /// integer coefficients gcd 1 and positive leading coefficient.
    pub fn signed_content(&self) -> ExactScalar {
        let c = self.content();
        match self.terms.first() {
            Some((_, lc)) if lc.is_negative() => -c,
            _ => c,
        }
    }

    pub fn eval_complex(&self, values: &[(Var, ComplexValue)], num: &Numeric) -> Result<ComplexValue> {
        let lookup = |v: Var| values.iter().find(|(w, _)| *w == v).map(|(_, z)| z);
        let mut powers: FxHashMap<(usize, i32), ComplexValue> = FxHashMap::default();
        let mut acc = num.zero();
        for (m, c) in &self.terms {
            let mut term = num.from_scalar(c);
            for v in Var::ALL {
                let e = m[v.slot()];
                if e == 0 {
                    continue;
                }
                let z = lookup(v).ok_or(Error::MissingVariable(v.name()))?;
                let p = match powers.entry((v.slot(), e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(slot) => slot.insert(num.powi(z, e)?),
                };
                term = &term * &*p;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Double precision evaluation, used only for seeding iterative solvers.
    pub fn eval_c64(&self, values: &[(Var, Complex64)]) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(c.to_f64(), 0.0);
            for v in Var::ALL {
                let e = m[v.slot()];
                if e == 0 {
                    continue;
                }
                let z = values
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, z)| *z)
                    .ok_or(Error::MissingVariable(v.name()))?;
                if e < 0 && z == Complex64::new(0.0, 0.0) {
                    return Err(Error::DivisionByZero);
                }
                term *= z.powi(e);
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_impl(rhs)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        self.add_impl(&rhs, false)
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self.add_impl(&rhs, true)
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        self.mul_impl(&rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> Self {
        MPoly::from_int(n)
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m[v.slot()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    /// Canonical text: decreasing lex order, e.g. `-u^3 + 2*s^-1*u - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if *m == ONE_MONO {
                a.to_string()
            } else if a.is_one() {
                fmt_monomial(m)
            } else {
                format!("{}*{}", a, fmt_monomial(m))
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_poly(s)
    }
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
