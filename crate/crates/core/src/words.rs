//! Words in the free group on `x`, `y`, the twist knot presentations and
//! Fox free differential calculus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::PolyMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::X => Gen::Y,
            Gen::Y => Gen::X,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const X: Letter = Letter {
        gen: Gen::X,
        inverse: false,
    };
    pub const Y: Letter = Letter {
        gen: Gen::Y,
        inverse: false,
    };
    pub const XI: Letter = Letter {
        gen: Gen::X,
        inverse: true,
    };
    pub const YI: Letter = Letter {
        gen: Gen::Y,
        inverse: true,
    };

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn to_char(self) -> char {
        match (self.gen, self.inverse) {
            (Gen::X, false) => 'x',
            (Gen::X, true) => 'X',
            (Gen::Y, false) => 'y',
            (Gen::Y, true) => 'Y',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'X' => Some(Letter::XI),
            'y' => Some(Letter::Y),
            'Y' => Some(Letter::YI),
            _ => None,
        }
    }
}

/// Freely reduced word; text form uses `x`, `X` = x^-1, `y`, `Y`, and `1` for the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

/// Cancel adjacent inverse pairs.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        GroupWord {
            letters: free_reduce(letters),
        }
    }

    pub fn gen(g: Gen) -> Self {
        GroupWord {
            letters: vec![Letter { gen: g, inverse: false }],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// The word read backwards (`←w`).
    pub fn reverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Every letter replaced by its inverse, order kept (`w̄`).
    pub fn bar(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, rhs: &GroupWord) -> Self {
        let mut v = self.letters.clone();
        v.extend_from_slice(&rhs.letters);
        GroupWord::from_letters(&v)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.letters);
        }
        GroupWord::from_letters(&v)
    }

    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters.iter().filter(|l| l.gen == g).map(|l| l.exponent()).sum()
    }

    /// Evaluate under a homomorphism given by the images of the four letters.
    pub fn evaluate(&self, images: &LetterImages) -> Result<PolyMatrix> {
        let mut acc = PolyMatrix::identity(images.x.dim());
        for l in &self.letters {
            acc = acc.mul(images.get(*l))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let s: String = self.letters.iter().map(|l| l.to_char()).collect();
        write!(f, "{s}")
    }
}

impl FromStr for GroupWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(GroupWord::identity());
        }
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter `{c}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord::from_letters(&letters))
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Matrices assigned to `x`, `x^-1`, `y`, `y^-1`.
#[derive(Clone, Debug)]
pub struct LetterImages {
    pub x: PolyMatrix,
    pub x_inv: PolyMatrix,
    pub y: PolyMatrix,
    pub y_inv: PolyMatrix,
}

impl LetterImages {
    fn get(&self, l: Letter) -> &PolyMatrix {
        match (l.gen, l.inverse) {
            (Gen::X, false) => &self.x,
            (Gen::X, true) => &self.x_inv,
            (Gen::Y, false) => &self.y,
            (Gen::Y, true) => &self.y_inv,
        }
    }
}

/// The commutator `w = [y, x^-1] = y x^-1 y^-1 x`.
pub fn commutator_w() -> GroupWord {
    GroupWord::from_letters(&[Letter::Y, Letter::XI, Letter::YI, Letter::X])
}

/// A twist knot in the normal form J(2, 2m), m != 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistKnot {
    pub m: i64,
    pub source_sign: i64,
    pub source_n: i64,
    /// Human readable normalization steps, empty when the input already was J(2, 2m).
    pub trail: Vec<String>,
}

impl TwistKnot {
    /// The knot J(2, 2m) itself.
    pub fn new(m: i64) -> Result<Self> {
        normalize_twist_knot(2 * m, 2)
    }

    pub fn name(&self) -> String {
        format!("J(2,{})", 2 * self.m)
    }

    pub fn source_name(&self) -> String {
        format!("J({},{})", self.source_sign, self.source_n)
    }

    /// u-degree of the Riley polynomial.
    pub fn riley_degree(&self) -> u32 {
        if self.m > 0 {
            (2 * self.m - 1) as u32
        } else {
            (2 * -self.m) as u32
        }
    }
}

impl fmt::Display for TwistKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Map J(sign, n) to the even model J(2, 2m) with the same knot group.
pub fn normalize_twist_knot(n: i64, sign: i64) -> Result<TwistKnot> {
    let mut trail = Vec::new();
    let n2 = match sign {
        2 => n,
        -2 => {
            trail.push(format!("J(-2,{n}) is isotopic to J(2,{})", n + 1));
            n + 1
        }
        _ => {
            return Err(Error::Parse(format!(
                "twist knots are J(2,n) or J(-2,n), got J({sign},{n})"
            )))
        }
    };
    if n2 == 0 || n2 == 1 {
        return Err(Error::Unknot { sign, n });
    }
    let m = if n2 % 2 == 0 {
        n2 / 2
    } else {
        let k = (n2 - 1) / 2;
        trail.push(format!(
            "J(2,{n2}) has the same group as J(2,{}) (swap x and y)",
            -2 * k
        ));
        -k
    };
    Ok(TwistKnot {
        m,
        source_sign: sign,
        source_n: n,
        trail,
    })
}

/// Parse `J(2,n)`, `J(-2,n)` or one of the Rolfsen names 3_1, 4_1, 5_2, 6_1, 7_2, 8_1.
pub fn parse_knot_spec(raw: &str) -> Result<TwistKnot> {
    let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let alias = match t.as_str() {
        "3_1" => Some(2),
        "4_1" => Some(-2),
        "5_2" => Some(4),
        "6_1" => Some(-4),
        "7_2" => Some(6),
        "8_1" => Some(-6),
        _ => None,
    };
    if let Some(n) = alias {
        return normalize_twist_knot(n, 2);
    }
    let inner = t
        .strip_prefix("J(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("unrecognized knot `{raw}`")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("unrecognized knot `{raw}`")))?;
    let sign: i64 = a.parse().map_err(|_| Error::Parse(format!("bad J sign in `{raw}`")))?;
    let n: i64 = b
        .parse()
        .map_err(|_| Error::Parse(format!("bad J parameter in `{raw}`")))?;
    normalize_twist_knot(n, sign)
}

/// The relator `w^m x w^-m y^-1`.
pub fn presentation_word(k: &TwistKnot) -> GroupWord {
    let w = commutator_w();
    w.pow(k.m)
        .mul(&GroupWord::gen(Gen::X))
        .mul(&w.pow(-k.m))
        .mul(&GroupWord::gen(Gen::Y).inverse())
}

/// The word Ω_m: `w^m` for m < 0 and `x^-1 w̄^(m-1) y^-1` for m > 0.
pub fn omega_word(k: &TwistKnot) -> GroupWord {
    let w = commutator_w();
    if k.m < 0 {
        w.pow(k.m)
    } else {
        GroupWord::from_letters(&[Letter::XI])
            .mul(&w.bar().pow(k.m - 1))
            .mul(&GroupWord::from_letters(&[Letter::YI]))
    }
}

/// The longitude `(←w)^m w^m` and its exponent-sum correction, which is zero for twist knots.
pub fn longitude_word(k: &TwistKnot) -> (GroupWord, i64) {
    let w = commutator_w();
    let lambda = w.reverse().pow(k.m).mul(&w.pow(k.m));
    let correction = -lambda.exponent_sum(Gen::X) - lambda.exponent_sum(Gen::Y);
    (lambda, correction)
}

/// Integer combination of group words.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: GroupWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        GroupRingElement { terms }
    }

    pub fn one() -> Self {
        Self::word(GroupWord::identity())
    }

    pub fn terms(&self) -> &BTreeMap<GroupWord, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: GroupWord, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -*c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Image under a matrix representation of the free group.
    pub fn evaluate(&self, images: &LetterImages) -> Result<PolyMatrix> {
        let dim = images.x.dim();
        let mut acc = PolyMatrix::zero(dim);
        for (w, c) in &self.terms {
            let m = w.evaluate(images)?;
            acc = acc.add(&m.scale_scalar(&(*c).into()))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| match c {
                1 => w.to_string(),
                -1 => format!("-{w}"),
                _ => format!("{c}*{w}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Fox derivative with the left convention `d(uv) = du + u dv`.
pub fn fox_derivative(r: &GroupWord, g: Gen) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix: Vec<Letter> = Vec::new();
    for &l in r.letters() {
        if l.gen == g {
            if l.inverse {
                let mut p = prefix.clone();
                p.push(l);
                out.add_term(GroupWord::from_letters(&p), -1);
            } else {
                out.add_term(GroupWord::from_letters(&prefix), 1);
            }
        }
        prefix.push(l);
    }
    out
}

/// `sum_g (dr/dg)(g - 1) - (r - 1)`; zero for every word.
pub fn fundamental_identity_residual(r: &GroupWord) -> GroupRingElement {
    let mut lhs = GroupRingElement::zero();
    for g in [Gen::X, Gen::Y] {
        let gm1 = GroupRingElement::word(GroupWord::gen(g)).sub(&GroupRingElement::one());
        lhs = lhs.add(&fox_derivative(r, g).mul(&gm1));
    }
    let rm1 = GroupRingElement::word(r.clone()).sub(&GroupRingElement::one());
    lhs.sub(&rm1)
}

/// The closed form `w^m (1 + (1 - x)(1 + w^-1 + ... + w^(-m+1))(x^-1 - x^-1 y))`, m > 0.
pub fn fox_x_closed_form(m: i64) -> GroupRingElement {
    assert!(m > 0);
    let w = commutator_w();
    let one = GroupRingElement::one();
    let x = GroupRingElement::word(GroupWord::gen(Gen::X));
    let mut geometric = GroupRingElement::zero();
    for j in 0..m {
        geometric = geometric.add(&GroupRingElement::word(w.pow(-j)));
    }
    let xi = GroupWord::gen(Gen::X).inverse();
    let tail = GroupRingElement::word(xi.clone()).sub(&GroupRingElement::word(xi.mul(&GroupWord::gen(Gen::Y))));
    let inner = one.add(&one.sub(&x).mul(&geometric).mul(&tail));
    GroupRingElement::word(w.pow(m)).mul(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_operations() {
        let c = commutator_w();
        assert_eq!(c.to_string(), "yXYx");
        assert_eq!(c.reverse().to_string(), "xYXy");
        assert_eq!(c.bar(), c.reverse().inverse());
        assert_eq!(c.inverse().inverse(), c);
        assert_eq!(w("xXyYx").to_string(), "x");
        assert_eq!(w("1"), GroupWord::identity());
        assert!("xz".parse::<GroupWord>().is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_twist_knot(2, 2).unwrap().m, 1);
        assert_eq!(normalize_twist_knot(-2, 2).unwrap().m, -1);
        assert_eq!(normalize_twist_knot(3, 2).unwrap().m, -1);
        assert_eq!(normalize_twist_knot(1, -2).unwrap().m, 1);
        assert_eq!(normalize_twist_knot(-3, -2).unwrap().m, -1);
        for (n, s) in [(0, 2), (1, 2), (0, -2), (-1, -2)] {
            assert!(matches!(normalize_twist_knot(n, s), Err(Error::Unknot { .. })));
        }
        assert_eq!(parse_knot_spec("6_1").unwrap().m, -2);
        assert_eq!(parse_knot_spec("J(-2, 5)").unwrap().m, 3);
        assert!(parse_knot_spec("J(3,4)").is_err());
    }

    #[test]
    fn omega_words() {
        let k = |m| TwistKnot::new(m).unwrap();
        assert_eq!(omega_word(&k(1)).to_string(), "XY");
        assert_eq!(omega_word(&k(-1)).to_string(), "XyxY");
        assert_eq!(omega_word(&k(2)).to_string(), "XYxyXY");
    }

    #[test]
    fn longitudes() {
        let (l, c) = longitude_word(&TwistKnot::new(1).unwrap());
        assert_eq!(l.to_string(), "xYXyyXYx");
        assert_eq!(c, 0);
        let (l, c) = longitude_word(&TwistKnot::new(-1).unwrap());
        assert_eq!(l.len(), 8);
        assert_eq!(c, 0);
    }

    #[test]
    fn fox_examples() {
        assert_eq!(fox_derivative(&w("xy"), Gen::X), GroupRingElement::one());
        let d = fox_derivative(&commutator_w(), Gen::X);
        let expected = GroupRingElement::word(w("yXY")).sub(&GroupRingElement::word(w("yX")));
        assert_eq!(d, expected);
    }
}
