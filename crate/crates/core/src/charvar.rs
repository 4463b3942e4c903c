//! Trace polynomials in `a = tr x = tr y`, `b = tr xy` and the polynomials Φ_m
//! cutting out the non-abelian characters of J(2, 2m).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::numeric::abs_f64;
use crate::algebra::roots::polynomial_roots;
use crate::algebra::{ComplexValue, MPoly, Numeric, Var};
use crate::error::Result;
use crate::riley::riley_polynomial_closed;
use crate::words::{commutator_w, omega_word, Gen, GroupWord, Letter, TwistKnot};

fn a() -> MPoly {
    MPoly::var(Var::A)
}

fn b() -> MPoly {
    MPoly::var(Var::B)
}

/// An element of the algebra generated by `X`, `Y` with `X² = aX - 1`, `Y² = aY - 1`,
/// written over alternating words. The key `(first, len)` names the alternating word of
/// length `len` starting with `first`; `len = 0` is the identity.
#[derive(Clone, Debug, Default)]
struct AlgebraElement {
    terms: BTreeMap<(Gen, usize), MPoly>,
}

impl AlgebraElement {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Gen::X, 0), MPoly::one());
        AlgebraElement { terms }
    }

    fn add_to(&mut self, key: (Gen, usize), c: MPoly) {
        let key = if key.1 == 0 { (Gen::X, 0) } else { key };
        let e = self.terms.entry(key).or_insert_with(MPoly::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn times_gen(&self, g: Gen) -> Self {
        let mut out = AlgebraElement::default();
        for (&(first, len), c) in &self.terms {
            if len == 0 {
                out.add_to((g, 1), c.clone());
                continue;
            }
            let last = if len % 2 == 1 { first } else { first.other() };
            if last != g {
                out.add_to((first, len + 1), c.clone());
            } else {
                // u g g = a (u g) - u
                out.add_to((first, len), c * &a());
                out.add_to((first, len - 1), -c.clone());
            }
        }
        out
    }

    fn times_letter(&self, l: Letter) -> Self {
        let prod = self.times_gen(l.gen);
        if !l.inverse {
            return prod;
        }
        // g^-1 = a - g
        let mut out = AlgebraElement::default();
        for (&k, c) in &self.terms {
            out.add_to(k, c * &a());
        }
        for (k, c) in prod.terms {
            out.add_to(k, -c);
        }
        out
    }

    fn trace(&self, cache: &mut TraceTable) -> MPoly {
        self.terms.iter().fold(MPoly::zero(), |acc, (&(_, len), c)| {
            &acc + &(c * &cache.alternating(len))
        })
    }
}

/// Traces of alternating words, which depend only on the length.
struct TraceTable {
    even: Vec<MPoly>,
    odd: Vec<MPoly>,
}

impl TraceTable {
    fn new() -> Self {
        TraceTable {
            even: vec![MPoly::from(2), b()],
            odd: vec![a()],
        }
    }

    fn alternating(&mut self, len: usize) -> MPoly {
        let k = len / 2;
        while self.even.len() <= k + 1 {
            let n = self.even.len();
            let next = &(&b() * &self.even[n - 1]) - &self.even[n - 2];
            self.even.push(next);
        }
        if len.is_multiple_of(2) {
            return self.even[k].clone();
        }
        // tr X(YX)^j = a tr (XY)^j - tr X(YX)^(j-1)
        while self.odd.len() <= k {
            let j = self.odd.len();
            let next = &(&a() * &self.even[j]) - &self.odd[j - 1];
            self.odd.push(next);
        }
        self.odd[k].clone()
    }
}

fn trace_of_letters(letters: &[Letter], table: &mut TraceTable) -> MPoly {
    let mut e = AlgebraElement::one();
    for &l in letters {
        e = e.times_letter(l);
    }
    e.trace(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePolynomial {
    pub word: GroupWord,
    pub poly: MPoly,
}

/// `tr ρ(word)` as a polynomial in `a`, `b`.
pub fn trace_polynomial(w: &GroupWord) -> TracePolynomial {
    TracePolynomial {
        word: w.clone(),
        poly: trace_of_letters(w.letters(), &mut TraceTable::new()),
    }
}

/// `I_w = tr ρ(y x^-1 y^-1 x)`.
pub fn commutator_trace() -> MPoly {
    trace_polynomial(&commutator_w()).poly
}

/// `c(a, b) = I_{w²} = I_w² - 2`.
pub fn commutator_square_trace() -> MPoly {
    let iw = commutator_trace();
    &(&iw * &iw) - &MPoly::from(2)
}

/// `a² - b - 2`.
pub fn abelian_locus() -> MPoly {
    &(&(&a() * &a()) - &b()) - &MPoly::from(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharVarPolynomial {
    pub m: i64,
    pub phi_m: MPoly,
}

fn omega_letters(m: i64) -> Vec<Letter> {
    if m == 0 {
        return Vec::new();
    }
    omega_word(&TwistKnot::new(m).expect("nonzero m")).letters().to_vec()
}

/// `Σ (-1)^i I_{Λ^(i)}` over `i < count`, deleting two end letters at each step.
fn alternating_traces(letters: &[Letter], count: usize, table: &mut TraceTable) -> MPoly {
    let mut acc = MPoly::zero();
    for i in 0..count {
        let t = trace_of_letters(&letters[i..letters.len() - i], table);
        acc = if i % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `Φ_m` straight from Le's alternating sum over the end-letter deletions of Ω_m.
pub fn char_var_direct_le(m: i64) -> CharVarPolynomial {
    if m == 0 {
        return CharVarPolynomial { m, phi_m: MPoly::one() };
    }
    let letters = omega_letters(m);
    let k = letters.len() / 2 - 1;
    let mut table = TraceTable::new();
    let sum = alternating_traces(&letters, k + 1, &mut table);
    let tail = if k.is_multiple_of(2) {
        MPoly::from(-1)
    } else {
        MPoly::one()
    };
    CharVarPolynomial { m, phi_m: &sum + &tail }
}

/// `R = I_Ω - I_Ω' + I_Ω'' - I_Ω'''` for `Ω = Ω_j`, the empty word having trace 2.
pub fn le_block(j: i64) -> MPoly {
    alternating_traces(&omega_letters(j), 4, &mut TraceTable::new())
}

/// `R^+_m = le_block(m + 2)` for m ≥ 0 and `R^-_m = le_block(m - 2)` for m ≤ 0.
pub fn r_sequence(m: i64, positive: bool) -> MPoly {
    if positive {
        le_block(m + 2)
    } else {
        le_block(m - 2)
    }
}

/// `Φ_m` from the base cases and the linear recurrence `r_{i+2} = c r_{i+1} - r_i`.
pub fn char_var_polynomial(m: i64) -> CharVarPolynomial {
    let phi_m1 = {
        let a2 = &a() * &a();
        &(&(&(&(&b() * &b()) - &(&a2 * &b())) + &(&a2 * &MPoly::from(2))) - &b()) - &MPoly::one()
    };
    let base = |j: i64| match j {
        0 => MPoly::one(),
        1 => &b() - &MPoly::one(),
        -1 => phi_m1.clone(),
        _ => unreachable!(),
    };
    if (-1..=1).contains(&m) {
        return CharVarPolynomial { m, phi_m: base(m) };
    }
    // blocks Ω_start, Ω_{start ± 2}, ..., Ω_m, then the base case they stop at
    let step = if m > 0 { 2 } else { -2 };
    let start = if m > 0 { 2 + (m % 2) } else { -2 + (m % 2) };
    let terms = ((m - start) / step + 1) as usize;
    let c = commutator_square_trace();
    let mut r = vec![le_block(start)];
    if terms > 1 {
        r.push(le_block(start + step));
    }
    while r.len() < terms {
        let n = r.len();
        let next = &(&c * &r[n - 1]) - &r[n - 2];
        r.push(next);
    }
    let tail = base(start - step);
    let phi_m = r.iter().fold(tail, |acc, t| &acc + t);
    CharVarPolynomial { m, phi_m }
}

/// `(a, b)` of the Riley representation at `(s, u)`: `a = √s + 1/√s`, `b = tr ρ(x)ρ(y)`.
pub fn riley_character(s: &ComplexValue, u: &ComplexValue, num: &Numeric) -> Result<(ComplexValue, ComplexValue)> {
    let r = num.sqrt(s);
    let a = &r + &num.recip(&r)?;
    // ρ(x) = [[s, 1], [0, 1]] / √s, ρ(y) = [[s, 0], [-s u, 1]] / √s
    let tr = &(s * s) - &(s * u) + num.one();
    Ok((a, num.div(&tr, s)?))
}

/// `max |Φ_m(a, b)|` over the characters of all roots `u` of `φ(s, u)` at the given `s`.
pub fn riley_consistency_residual(m: i64, s: &ComplexValue, num: &Numeric, seed: u64) -> Result<f64> {
    let k = TwistKnot::new(m)?;
    let phi = riley_polynomial_closed(&k).phi;
    let coeffs = phi
        .coefficients_in(Var::U)
        .iter()
        .map(|c| c.eval_complex(&[(Var::S, s.clone())], num))
        .collect::<Result<Vec<_>>>()?;
    let big_phi = char_var_polynomial(m).phi_m;
    let mut worst = 0.0f64;
    for u in polynomial_roots(&coeffs, num, seed)? {
        let (a, b) = riley_character(s, &u, num)?;
        let v = big_phi.eval_complex(&[(Var::A, a), (Var::B, b)], num)?;
        worst = worst.max(abs_f64(&v));
    }
    Ok(worst)
}
