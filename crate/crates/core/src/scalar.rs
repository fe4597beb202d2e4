//! Exact arithmetic in the field Q(i)(q) and the q-numbers built from it.
//!
//! A [`Scalar`] is stored as `q^shift * num / den` where neither `num` nor `den`
//! is divisible by `q`, `den` is monic and `gcd(num, den) = 1`.  This makes the
//! representation canonical, so structural equality is field equality, and it
//! keeps Laurent polynomials (`den = 1`) free of gcd computations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(GaussRat { re: self.re.recip(), im: BigRational::zero() });
        }
        let n = self.norm();
        Ok(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Square root inside Q(i), if it exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        if self.im.is_zero() {
            if let Some(r) = rat_sqrt(&self.re) {
                return Some(GaussRat { re: r, im: BigRational::zero() });
            }
            if let Some(r) = rat_sqrt(&-self.re.clone()) {
                return Some(GaussRat { re: BigRational::zero(), im: r });
            }
            return None;
        }
        let r = rat_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&self.re + &r) / &two, (&self.re - &r) / &two] {
            if let Some(x) = rat_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.im / (&two * &x);
                let g = GaussRat { re: x, im: y };
                if &(&g * &g) == self {
                    return Some(g);
                }
            }
        }
        None
    }
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat { re: &self.re * &o.re, im: BigRational::zero() };
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl GaussRat {
    /// Expression form accepted by [`parse_scalar`]; parenthesized when it is a sum.
    pub fn to_expr(&self) -> String {
        if self.im.is_zero() {
            return rat_str(&self.re);
        }
        let imag = if self.im.is_one() {
            String::from("i")
        } else if (-self.im.clone()).is_one() {
            String::from("-i")
        } else {
            alloc::format!("{}*i", rat_str(&self.im))
        };
        if self.re.is_zero() {
            return imag;
        }
        if imag.starts_with('-') {
            alloc::format!("({}{})", rat_str(&self.re), imag)
        } else {
            alloc::format!("({}+{})", rat_str(&self.re), imag)
        }
    }
}

/// Dense univariate polynomial over Q(i), lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<GaussRat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![GaussRat::one()])
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn monomial(c: GaussRat, deg: usize) -> Self {
        let mut v = vec![GaussRat::zero(); deg + 1];
        v[deg] = c;
        let mut p = Poly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lead(&self) -> Option<&GaussRat> {
        self.0.last()
    }

    /// Exponent of the largest power of q dividing the polynomial.
    pub fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Poly(self.0[k..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussRat::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            match (self.0.get(k), o.0.get(k)) {
                (Some(a), Some(b)) => v.push(a + b),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let mut v = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (a_i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b_i, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                v[a_i + b_i] = &v[a_i + b_i] + &t;
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.clone();
        if r.0.len() <= dd {
            return (Poly::zero(), r);
        }
        let mut qv = vec![GaussRat::zero(); r.0.len() - dd];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.lead().unwrap() * &lead_inv;
            let k = rd - dd;
            for (j, dc) in d.0.iter().enumerate() {
                r.0[k + j] = &r.0[k + j] - &(&c * dc);
            }
            qv[k] = c;
            r.trim();
        }
        let mut qp = Poly(qv);
        qp.trim();
        (qp, r)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            if y.degree() == Some(0) {
                return Poly::one();
            }
            let (_, r) = x.divrem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_one(&self) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in &self.0 {
            acc = &acc + c;
        }
        acc
    }

    /// Square root in Q(i)[q], if it exists.
    pub fn sqrt(&self) -> Option<Poly> {
        let d = self.degree()?;
        if d % 2 == 1 {
            return None;
        }
        let m = d / 2;
        let lead = self.lead().unwrap().sqrt()?;
        let two_lead_inv = (&lead + &lead).inv().ok()?;
        let mut s = vec![GaussRat::zero(); m + 1];
        s[m] = lead;
        for k in (0..m).rev() {
            // coefficient of q^{m+k} in s^2 determines s[k]
            let mut acc = self.0[m + k].clone();
            for a in (k + 1)..=m {
                let b = m + k - a;
                if b > k && b <= m {
                    acc = &acc - &(&s[a] * &s[b]);
                }
            }
            s[k] = &acc * &two_lead_inv;
        }
        let p = Poly(s);
        if &p.mul(&p) == self {
            Some(p)
        } else {
            None
        }
    }
}

/// An element of Q(i)(q) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { shift: 0, num: Poly::one(), den: Poly::one() }
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Scalar { shift: e, num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { shift: 0, num: Poly(vec![c]), den: Poly::one() }
    }

    /// `c * q^e`.
    pub fn monomial(c: GaussRat, e: i64) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { shift: e, num: Poly(vec![c]), den: Poly::one() }
    }

    /// Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn laurent(terms: &[(i64, i64)]) -> Self {
        let mut acc = Scalar::zero();
        for &(e, c) in terms {
            acc += &Scalar::monomial(GaussRat::from_int(c), e);
        }
        acc
    }

    /// Builds `num/den` from ordinary polynomials; errors if `den = 0`.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize(0, num, den))
    }

    fn normalize(shift: i64, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let vn = num.valuation();
        let vd = den.valuation();
        let mut num = if vn > 0 { num.shift_down(vn) } else { num };
        let mut den = if vd > 0 { den.shift_down(vd) } else { den };
        let shift = shift + vn as i64 - vd as i64;
        if !den.is_one() {
            let g = Poly::gcd(&num, &den);
            if !g.is_one() {
                num = num.divrem(&g).0;
                den = den.divrem(&g).0;
            }
            let l = den.lead().unwrap().clone();
            if !l.is_one() {
                let li = l.inv().unwrap();
                num = num.scale(&li);
                den = den.scale(&li);
            }
        }
        Scalar { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a power of q.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The constant in Q(i) if this scalar does not depend on q.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        if self.shift == 0 && self.num.0.len() == 1 && self.den.is_one() {
            Some(self.num.0[0].clone())
        } else {
            None
        }
    }

    /// Numerator as an ordinary polynomial in q.
    pub fn numerator(&self) -> Poly {
        if self.shift > 0 {
            self.num.shift_up(self.shift as usize)
        } else {
            self.num.clone()
        }
    }

    /// Monic denominator as an ordinary polynomial in q.
    pub fn denominator(&self) -> Poly {
        if self.shift < 0 {
            self.den.shift_up((-self.shift) as usize)
        } else {
            self.den.clone()
        }
    }

    /// Laurent coefficients `(exponent, coefficient)` when `is_laurent`.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, GaussRat)>> {
        if !self.den.is_one() {
            return None;
        }
        Some(
            self.num
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.shift + k as i64, c.clone()))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Scalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Substitutes `q -> q^d`.
    pub fn substitute_q_power(&self, d: u32) -> Self {
        let spread = |p: &Poly| {
            if d == 1 || p.0.len() <= 1 {
                return p.clone();
            }
            let mut v = vec![GaussRat::zero(); (p.0.len() - 1) * d as usize + 1];
            for (k, c) in p.0.iter().enumerate() {
                v[k * d as usize] = c.clone();
            }
            Poly(v)
        };
        Scalar::normalize(self.shift * d as i64, spread(&self.num), spread(&self.den))
    }

    /// Value at q = 1; fails with `PoleAtOne` outside the local ring at q - 1.
    pub fn eval_at_one(&self) -> Result<GaussRat> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne);
        }
        self.num.eval_one().div(&d)
    }

    /// Square root inside Q(i)(q), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.shift % 2 != 0 {
            return None;
        }
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Scalar::normalize(self.shift / 2, n, d))
    }

    /// Canonical expression string; `parse_scalar(to_expr(x)) == x`.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        if self.den.is_one() {
            return laurent_expr(self.shift, &self.num);
        }
        let n = self.numerator();
        let d = self.denominator();
        let ns = laurent_expr(0, &n);
        let nterms = n.0.iter().filter(|c| !c.is_zero()).count();
        let single_coeff_ok = nterms == 1 && !ns.contains('+') && !ns[1..].contains('-');
        let ns = if single_coeff_ok { ns } else { alloc::format!("({ns})") };
        alloc::format!("{}/({})", ns, laurent_expr(0, &d))
    }
}

fn laurent_expr(shift: i64, p: &Poly) -> String {
    let mut out = String::new();
    for (k, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = shift + k as i64;
        let qpart = match e {
            0 => String::new(),
            1 => String::from("q"),
            _ => alloc::format!("q^{e}"),
        };
        let term = if qpart.is_empty() {
            c.to_expr()
        } else if c.is_one() {
            qpart
        } else if (-c).is_one() {
            alloc::format!("-{qpart}")
        } else {
            alloc::format!("{}*{}", c.to_expr(), qpart)
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.shift, &self.num, &self.den).cmp(&(other.shift, &other.num, &other.den))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - m) as usize);
        let b = o.num.shift_up((o.shift - m) as usize);
        if self.den == o.den {
            return Scalar::normalize(m, a.add(&b), self.den.clone());
        }
        let num = a.mul(&o.den).add(&b.mul(&self.den));
        Scalar::normalize(m, num, self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &o.neg()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            return Scalar { shift, num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = if o.den.is_one() { Poly::one() } else { Poly::gcd(&self.num, &o.den) };
        let g2 = if self.den.is_one() { Poly::one() } else { Poly::gcd(&o.num, &self.den) };
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.divrem(&g1).0, o.den.divrem(&g1).0)
        };
        let (n2, d1) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.divrem(&g2).0, self.den.divrem(&g2).0)
        };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        let l = den.lead().unwrap().clone();
        if !l.is_one() {
            let li = l.inv().unwrap();
            num = num.scale(&li);
            den = den.scale(&li);
        }
        Scalar { shift, num, den }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

/// Balanced q-number `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn q_number(n: i64, d: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    if n < 0 {
        return q_number(-n, d).neg();
    }
    let mut acc = Scalar::zero();
    let mut e = -(n - 1);
    while e <= n - 1 {
        acc += &Scalar::q_pow(d * e);
        e += 2;
    }
    acc
}

/// `[n]_{q^d}!`.
pub fn q_factorial(n: i64, d: i64) -> Scalar {
    let mut acc = Scalar::one();
    for k in 1..=n {
        acc = &acc * &q_number(k, d);
    }
    acc
}

/// Balanced q-binomial coefficient at base `q^d`; zero for `k < 0` or `k > n`.
pub fn q_binomial(n: i64, k: i64, d: i64) -> Scalar {
    if k < 0 || k > n || n < 0 {
        return Scalar::zero();
    }
    // Pascal rule [n,k] = v^k [n-1,k] + v^{-(n-k)} [n-1,k-1] with v = q^d.
    let mut row = vec![Scalar::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let mut t = Scalar::zero();
            if j < m {
                t += &(&Scalar::q_pow(d * j) * &row[j as usize]);
            }
            if j > 0 {
                t += &(&Scalar::q_pow(-d * (m - j)) * &row[(j - 1) as usize]);
            }
            next.push(t);
        }
        row = next;
    }
    row[k as usize].clone()
}

/// `q_i - q_i^{-1}` for `q_i = q^d`.
pub fn q_diff(d: i64) -> Scalar {
    &Scalar::q_pow(d) - &Scalar::q_pow(-d)
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let p = crate::param::parse_param_poly(s)?;
    p.as_scalar()
        .ok_or_else(|| Error::Parse(alloc::format!("expression `{s}` contains parameters")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities() {
        let q = Scalar::q();
        let one = Scalar::one();
        assert_eq!(&(&q - &one) + &one, q);
        let a = &(&q * &q) - &one;
        let b = &q - &one;
        assert_eq!(a.div(&b).unwrap(), &q + &one);
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 1, 1), Scalar::laurent(&[(1, 1), (-1, 1)]));
        assert_eq!(q_binomial(3, 1, 1), Scalar::laurent(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(q_binomial(5, 0, 2), Scalar::one());
        assert_eq!(q_binomial(4, 2, 1), q_factorial(4, 1).div(&(&q_factorial(2, 1) * &q_factorial(2, 1))).unwrap());
    }

    #[test]
    fn evaluation_at_one() {
        let q = Scalar::q();
        let one = Scalar::one();
        assert_eq!(q.eval_at_one().unwrap(), GaussRat::one());
        let r = (&(&q * &q) - &one).div(&(&q - &one)).unwrap();
        assert_eq!(r.eval_at_one().unwrap(), GaussRat::from_int(2));
        let p = one.div(&(&q - &one)).unwrap();
        assert_eq!(p.eval_at_one(), Err(Error::PoleAtOne));
    }

    #[test]
    fn printing() {
        let q = Scalar::q();
        let one = Scalar::one();
        let p = one.div(&(&q - &one)).unwrap();
        assert_eq!(p.to_expr(), "1/(q-1)");
        assert_eq!(Scalar::laurent(&[(1, 1), (-1, 1)]).to_expr(), "q+q^-1");
        assert_eq!(Scalar::laurent(&[(0, -2)]).to_expr(), "-2");
    }

    #[test]
    fn square_roots() {
        let c = Scalar::q_pow(2);
        assert_eq!(c.sqrt(), Some(Scalar::q()));
        assert_eq!(Scalar::q().sqrt(), None);
        let s = Scalar::laurent(&[(2, 1), (1, 2), (0, 1)]);
        assert_eq!(s.sqrt(), Some(Scalar::laurent(&[(1, 1), (0, 1)])));
        assert_eq!(Scalar::from_int(-4).sqrt(), Some(Scalar::from_gauss(GaussRat::new(BigRational::zero(), BigRational::from_integer(BigInt::from(2))))));
    }
}
