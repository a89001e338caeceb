//! Exact scalars: Laurent polynomials over `Z` and reduced rational functions in `q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[inline]
fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer coefficient overflow")
}

#[inline]
fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

/// Laurent polynomial `sum c_k q^(low + k)`; zero is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    low: i32,
    c: Vec<i64>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly::default()
    }

    pub fn one() -> LPoly {
        LPoly::monomial(1, 0)
    }

    pub fn constant(a: i64) -> LPoly {
        LPoly::monomial(a, 0)
    }

    pub fn monomial(a: i64, e: i32) -> LPoly {
        if a == 0 {
            LPoly::zero()
        } else {
            LPoly { low: e, c: vec![a] }
        }
    }

    pub fn q_pow(e: i32) -> LPoly {
        LPoly::monomial(1, e)
    }

    /// From coefficients of `q^low, q^(low+1), ...`.
    pub fn from_coeffs(low: i32, c: Vec<i64>) -> LPoly {
        let mut p = LPoly { low, c };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.low += lead as i32;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.c == [1]
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i32) -> i64 {
        let k = e - self.low;
        if k < 0 || k as usize >= self.c.len() {
            0
        } else {
            self.c[k as usize]
        }
    }

    /// `Some((a, e))` when the polynomial is `a q^e`.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        (self.c.len() == 1).then(|| (self.c[0], self.low))
    }

    pub fn shift(&self, e: i32) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            low: self.low + e,
            c: self.c.clone(),
        }
    }

    pub fn scale(&self, a: i64) -> LPoly {
        if a == 0 {
            return LPoly::zero();
        }
        LPoly {
            low: self.low,
            c: self.c.iter().map(|&x| ck_mul(x, a)).collect(),
        }
    }

    /// `self += q^e * other`.
    pub fn add_shifted(&mut self, other: &LPoly, e: i32) {
        if other.is_zero() {
            return;
        }
        let olow = other.low + e;
        if self.is_zero() {
            self.low = olow;
            self.c.clear();
            self.c.extend_from_slice(&other.c);
            return;
        }
        if olow < self.low {
            let pad = (self.low - olow) as usize;
            self.c.splice(0..0, std::iter::repeat(0).take(pad));
            self.low = olow;
        }
        let start = (olow - self.low) as usize;
        let need = start + other.c.len();
        if need > self.c.len() {
            self.c.resize(need, 0);
        }
        for (k, &x) in other.c.iter().enumerate() {
            self.c[start + k] = ck_add(self.c[start + k], x);
        }
        self.normalize();
    }

    /// `self += a q^e`.
    pub fn add_monomial(&mut self, a: i64, e: i32) {
        if a == 0 {
            return;
        }
        if self.is_zero() {
            self.low = e;
            self.c.clear();
            self.c.push(a);
            return;
        }
        if e < self.low {
            let pad = (self.low - e) as usize;
            self.c.splice(0..0, std::iter::repeat(0).take(pad));
            self.low = e;
        }
        let k = (e - self.low) as usize;
        if k >= self.c.len() {
            self.c.resize(k + 1, 0);
        }
        self.c[k] = ck_add(self.c[k], a);
        self.normalize();
    }

    pub fn mul_ref(&self, other: &LPoly) -> LPoly {
        if self.is_zero() || other.is_zero() {
            return LPoly::zero();
        }
        let mut c = vec![0i64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = ck_add(c[i + j], ck_mul(a, b));
            }
        }
        LPoly::from_coeffs(self.low + other.low, c)
    }

    /// Substitute `q -> q^{-1}`.
    pub fn bar(&self) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        let mut c = self.c.clone();
        c.reverse();
        LPoly {
            low: -self.high(),
            c,
        }
    }

    /// Ordinary polynomial obtained by multiplying with `q^{-low}`.
    pub fn to_poly_shifted(&self) -> (Poly, i32) {
        (Poly::from_coeffs(self.c.clone()), self.low)
    }

    pub fn content(&self) -> i64 {
        self.c.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// Evaluation at an integer modulo a prime.
    pub fn eval_mod(&self, q: u64, p: u64) -> u64 {
        let qinv = mod_pow(q, p - 2, p);
        let base = if self.low >= 0 {
            mod_pow(q, self.low as u64, p)
        } else {
            mod_pow(qinv, (-self.low) as u64, p)
        };
        let mut acc = 0u64;
        let mut pw = base;
        for &x in &self.c {
            let xm = x.rem_euclid(p as i64) as u64;
            acc = (acc + (xm as u128 * pw as u128 % p as u128) as u64) % p;
            pw = (pw as u128 * q as u128 % p as u128) as u64;
        }
        acc
    }
}

pub fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.c.len()).rev() {
            let a = self.c[k];
            if a == 0 {
                continue;
            }
            let e = self.low + k as i32;
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.unsigned_abs();
            write!(f, "{sign}")?;
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, e) => write!(f, "q^{e}")?,
                (m, 1) => write!(f, "{m}q")?,
                (m, e) => write!(f, "{m}q^{e}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, o: &LPoly) -> LPoly {
        let mut r = self.clone();
        r.add_shifted(o, 0);
        r
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, o: &LPoly) -> LPoly {
        let mut r = self.clone();
        r.add_shifted(&o.scale(-1), 0);
        r
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, o: &LPoly) -> LPoly {
        self.mul_ref(o)
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        self.scale(-1)
    }
}

/// Ordinary polynomial in `Z[q]`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    c: Vec<i64>,
}

impl Poly {
    pub fn from_coeffs(mut c: Vec<i64>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(a: i64) -> Poly {
        Poly::from_coeffs(vec![a])
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.c.is_empty()).then(|| self.c.len() - 1)
    }

    pub fn lc(&self) -> i64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn content(&self) -> i64 {
        self.c.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn to_lpoly(&self) -> LPoly {
        LPoly::from_coeffs(0, self.c.clone())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut c = vec![0i64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = ck_add(c[i + j], ck_mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, a: i64) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|&x| ck_mul(x, a)).collect())
    }

    pub fn div_int(&self, a: i64) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|&x| x / a).collect())
    }

    /// Exact quotient `self / d` in `Z[q]`, if it exists.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::default());
        }
        let dn = d.c.len();
        if self.c.len() < dn {
            return None;
        }
        let mut r: Vec<i128> = self.c.iter().map(|&x| x as i128).collect();
        let lc = d.lc() as i128;
        let mut q = vec![0i64; r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dn - 1];
            if top == 0 {
                continue;
            }
            if top % lc != 0 {
                return None;
            }
            let f = top / lc;
            q[k] = i64::try_from(f).expect("integer coefficient overflow");
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] -= f * dj as i128;
            }
        }
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        Some(Poly::from_coeffs(q))
    }

    fn primitive_part(&self) -> Poly {
        let g = self.content();
        if g == 0 {
            return self.clone();
        }
        let g = if self.lc() < 0 { -g } else { g };
        self.div_int(g)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        let pa = a.primitive_part();
        let pb = b.primitive_part();
        let x = gcd_i128(&pa.c, &pb.c).unwrap_or_else(|| gcd_big(&pa.c, &pb.c));
        let g = Poly::from_coeffs(
            prim128(x)
                .into_iter()
                .map(|t| i64::try_from(t).expect("integer coefficient overflow"))
                .collect(),
        );
        if g.lc() < 0 {
            g.scale(-1)
        } else {
            g
        }
    }
}

fn trim128(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn prim128(v: Vec<i128>) -> Vec<i128> {
    let v = trim128(v);
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g <= 1 {
        return v;
    }
    v.into_iter().map(|x| x / g).collect()
}

/// Primitive PRS in `i128`, `None` on overflow.
fn gcd_i128(a: &[i64], b: &[i64]) -> Option<Vec<i128>> {
    let mut x: Vec<i128> = a.iter().map(|&t| t as i128).collect();
    let mut y: Vec<i128> = b.iter().map(|&t| t as i128).collect();
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y)?;
        x = y;
        y = prim128(r);
    }
    Some(x)
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut r = a.to_vec();
    let lb = *b.last().unwrap();
    while r.len() >= b.len() {
        let lr = *r.last().unwrap();
        let shift = r.len() - b.len();
        let g = lr.gcd(&lb);
        let (fr, fb) = (lb / g, lr / g);
        for x in r.iter_mut() {
            *x = x.checked_mul(fr)?;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].checked_sub(fb.checked_mul(bj)?)?;
        }
        r = trim128(r);
        r = prim128(r);
        if r.is_empty() {
            break;
        }
    }
    Some(r)
}

/// Same PRS with arbitrary-precision coefficients; the result is returned in `i128`.
fn gcd_big(a: &[i64], b: &[i64]) -> Vec<i128> {
    use num_bigint::BigInt;
    fn prim(v: Vec<BigInt>) -> Vec<BigInt> {
        let mut v = v;
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g <= BigInt::one() {
            return v;
        }
        v.into_iter().map(|x| x / &g).collect()
    }
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - b.len();
            let g = lr.gcd(&lb);
            let (fr, fb) = (&lb / &g, &lr / &g);
            for x in r.iter_mut() {
                *x *= &fr;
            }
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &fb * bj;
            }
            r = prim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    let mut x: Vec<BigInt> = a.iter().map(|&t| BigInt::from(t)).collect();
    let mut y: Vec<BigInt> = b.iter().map(|&t| BigInt::from(t)).collect();
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = prim(r);
    }
    prim(x)
        .into_iter()
        .map(|t| i128::try_from(t).expect("integer coefficient overflow"))
        .collect()
}

/// Element of `Q(q)` in lowest terms with a denominator of positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QScalar {
    num: Vec<i64>,
    den: Vec<i64>,
}

impl QScalar {
    pub fn zero() -> QScalar {
        QScalar {
            num: vec![],
            den: vec![1],
        }
    }

    pub fn one() -> QScalar {
        QScalar::int(1)
    }

    pub fn int(a: i64) -> QScalar {
        QScalar::from_polys(Poly::constant(a), Poly::one())
    }

    pub fn q_pow(e: i32) -> QScalar {
        QScalar::from_lpoly(&LPoly::q_pow(e))
    }

    pub fn from_lpoly(p: &LPoly) -> QScalar {
        QScalar::from_laurent(p, &Poly::one())
    }

    /// `p / d` with `p` Laurent and `d` ordinary.
    pub fn from_laurent(p: &LPoly, d: &Poly) -> QScalar {
        let (n, low) = p.to_poly_shifted();
        let d = if low < 0 {
            let mut c = vec![0i64; (-low) as usize];
            c.extend_from_slice(d.coeffs());
            Poly::from_coeffs(c)
        } else {
            d.clone()
        };
        let n = if low > 0 {
            let mut c = vec![0i64; low as usize];
            c.extend_from_slice(n.coeffs());
            Poly::from_coeffs(c)
        } else {
            n
        };
        QScalar::from_polys(n, d)
    }

    pub fn from_polys(num: Poly, den: Poly) -> QScalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QScalar::zero();
        }
        let g = Poly::gcd(&num, &den);
        let mut n = num.exact_div(&g).expect("gcd divides numerator");
        let mut d = den.exact_div(&g).expect("gcd divides denominator");
        let c = n.content().gcd(&d.content());
        if c > 1 {
            n = n.div_int(c);
            d = d.div_int(c);
        }
        if d.lc() < 0 {
            n = n.scale(-1);
            d = d.scale(-1);
        }
        QScalar { num: n.c, den: d.c }
    }

    pub fn num(&self) -> Poly {
        Poly::from_coeffs(self.num.clone())
    }

    pub fn den(&self) -> Poly {
        Poly::from_coeffs(self.den.clone())
    }

    pub fn num_coeffs(&self) -> &[i64] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[i64] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num == [1] && self.den == [1]
    }

    /// Laurent form when the denominator is a monomial `c q^k`, with `c = 1`.
    pub fn as_laurent(&self) -> Option<LPoly> {
        let nz: Vec<usize> = (0..self.den.len()).filter(|&k| self.den[k] != 0).collect();
        if nz.len() != 1 || self.den[nz[0]] != 1 {
            return None;
        }
        Some(LPoly::from_coeffs(-(nz[0] as i32), self.num.clone()))
    }

    pub fn inv(&self) -> QScalar {
        assert!(!self.is_zero(), "inverse of zero");
        QScalar::from_polys(self.den(), self.num())
    }

    /// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
    pub fn qint(n: u32, d: u32) -> QScalar {
        QScalar::from_lpoly(&qint_lpoly(n, d))
    }

    /// `[n]_{q^d}!`.
    pub fn qfact(n: u32, d: u32) -> QScalar {
        QScalar::from_lpoly(&qfact_lpoly(n, d))
    }

    /// `q - q^{-1}`.
    pub fn qhat() -> QScalar {
        QScalar::from_lpoly(&LPoly::from_coeffs(-1, vec![-1, 0, 1]))
    }

    pub fn pow(&self, k: u32) -> QScalar {
        let mut r = QScalar::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Evaluation modulo a prime, `None` if the denominator vanishes there.
    pub fn eval_mod(&self, q: u64, p: u64) -> Option<u64> {
        let n = LPoly::from_coeffs(0, self.num.clone()).eval_mod(q, p);
        let d = LPoly::from_coeffs(0, self.den.clone()).eval_mod(q, p);
        if d == 0 {
            None
        } else {
            Some((n as u128 * mod_pow(d, p - 2, p) as u128 % p as u128) as u64)
        }
    }
}

/// `[n]_{q^d}` as a Laurent polynomial.
pub fn qint_lpoly(n: u32, d: u32) -> LPoly {
    let mut p = LPoly::zero();
    if n == 0 {
        return p;
    }
    let (n, d) = (n as i32, d as i32);
    let mut e = -(n - 1) * d;
    for _ in 0..n {
        p.add_monomial(1, e);
        e += 2 * d;
    }
    p
}

pub fn qfact_lpoly(n: u32, d: u32) -> LPoly {
    let mut p = LPoly::one();
    for k in 1..=n {
        p = p.mul_ref(&qint_lpoly(k, d));
    }
    p
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num().to_lpoly() + &o.num().to_lpoly();
            return QScalar::from_laurent(&n, &self.den());
        }
        let n = &self.num().mul(&o.den()).to_lpoly() + &o.num().mul(&self.den()).to_lpoly();
        QScalar::from_laurent(&n, &self.den().mul(&o.den()))
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.iter().map(|&x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        self + &(-o)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        QScalar::from_polys(self.num().mul(&o.num()), self.den().mul(&o.den()))
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, o: &QScalar) -> QScalar {
        self * &o.inv()
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(QScalar);
owned_ops!(LPoly);

impl Div for QScalar {
    type Output = QScalar;
    fn div(self, o: QScalar) -> QScalar {
        &self / &o
    }
}

fn fmt_poly(c: &[i64]) -> String {
    format!("{}", LPoly::from_coeffs(0, c.to_vec()))
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.as_laurent() {
            return write!(f, "{l}");
        }
        write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for LPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.c).cmp(&(other.low, &other.c))
    }
}
