//! Finite field tower `F_p ⊂ F_q ⊂ F_{q^t}`.
//!
//! Elements of both `F_q` and `F_{q^t}` are identified with an integer index.
//! An `F_q` element `Σ c_i x^i` (digits `c_i < p`) has index `Σ c_i p^i`; an
//! `F_{q^t}` element `Σ a_j y^j` (coefficients `a_j ∈ F_q`) has index
//! `Σ index(a_j) q^j`. Index order is the lexicographic order on the
//! little-endian coefficient vectors read from the top coefficient down, so
//! index 0 is zero and index 1 is one.

use crate::error::{parse_err, Error, Result};

/// Largest `q^t` for which log/antilog tables are built.
pub const TABLE_LIMIT: u64 = 1 << 20;
const MAX_BASE_ORDER: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Scalar arithmetic used by the generic polynomial routines.
pub(crate) trait Scalars {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

struct PrimeField {
    p: u32,
}

impl Scalars for PrimeField {
    fn order(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        // a^(p-2)
        let mut r = 1u64;
        let mut b = a as u64 % self.p as u64;
        let mut k = self.p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            k >>= 1;
        }
        r as u32
    }
}

// Polynomials are little-endian coefficient vectors without trailing zeros.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem<S: Scalars>(s: &S, mut a: Vec<u32>, m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = s.inv(m[dm]);
    trim(&mut a);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = s.mul(a[top], lead_inv);
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            a[shift + i] = s.sub(a[shift + i], s.mul(c, mi));
        }
        trim(&mut a);
    }
    a
}

fn poly_mul<S: Scalars>(s: &S, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = s.add(out[i + j], s.mul(ai, bj));
        }
    }
    trim(&mut out);
    out
}

fn poly_mulmod<S: Scalars>(s: &S, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    poly_rem(s, poly_mul(s, a, b), m)
}

fn poly_powmod<S: Scalars>(s: &S, base: &[u32], mut k: u64, m: &[u32]) -> Vec<u32> {
    let mut result = poly_rem(s, vec![1], m);
    let mut b = poly_rem(s, base.to_vec(), m);
    while k > 0 {
        if k & 1 == 1 {
            result = poly_mulmod(s, &result, &b, m);
        }
        b = poly_mulmod(s, &b, &b, m);
        k >>= 1;
    }
    result
}

fn poly_sub<S: Scalars>(s: &S, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            s.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_gcd<S: Scalars>(s: &S, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(s, a, &b);
        a = b;
        b = r;
    }
    a
}

/// Rabin's irreducibility test for a monic polynomial.
pub(crate) fn is_irreducible<S: Scalars>(s: &S, m: &[u32]) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let order = s.order() as u64;
    let primes = prime_factors(d as u64);
    // frob[i] = x^(s^i) mod m
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(poly_rem(s, x.clone(), m));
    for i in 1..=d {
        let next = poly_powmod(s, &frob[i - 1], order, m);
        frob.push(next);
    }
    if frob[d] != poly_rem(s, x.clone(), m) {
        return false;
    }
    primes.iter().all(|&r| {
        let h = poly_sub(s, &frob[d / r as usize], &x);
        poly_gcd(s, &h, m).len() == 1
    })
}

/// The monic irreducible polynomial of the given degree whose lower
/// coefficients have the least index.
fn least_irreducible<S: Scalars>(s: &S, degree: usize) -> Vec<u32> {
    let order = s.order() as u64;
    let mut low: u64 = 0;
    loop {
        let mut m = Vec::with_capacity(degree + 1);
        let mut rest = low;
        for _ in 0..degree {
            m.push((rest % order) as u32);
            rest /= order;
        }
        m.push(1);
        if is_irreducible(s, &m) {
            return m;
        }
        low += 1;
    }
}

fn digits(mut index: u64, radix: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (index % radix) as u32;
            index /= radix;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], radix: u64) -> u64 {
    ds.iter().rev().fold(0u64, |acc, &d| acc * radix + d as u64)
}

/// Find an element of multiplicative order `n - 1` by the given multiplication.
fn find_primitive(n: u64, mul: impl Fn(u64, u64) -> u64) -> u64 {
    let pow = |x: u64, mut k: u64| {
        let mut r = 1u64;
        let mut b = x;
        while k > 0 {
            if k & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            k >>= 1;
        }
        r
    };
    let group = n - 1;
    let primes = prime_factors(group);
    (1..n)
        .find(|&c| primes.iter().all(|&r| pow(c, group / r) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

/// The field `F_q = F_p[x]/(f)`.
#[derive(Debug, Clone)]
pub struct BaseField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
    negs: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl BaseField {
    fn new(p: u32, e: u32) -> Result<Self> {
        let q64 = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q64 > MAX_BASE_ORDER {
            return Err(Error::DegreeOutOfRange(format!(
                "base field order {p}^{e} exceeds {MAX_BASE_ORDER}"
            )));
        }
        let q = q64 as u32;
        let prime = PrimeField { p };
        let modulus = least_irreducible(&prime, e as usize);
        let slow_mul = |a: u64, b: u64| {
            let pa: Vec<u32> = digits(a, p as u64, e as usize);
            let pb: Vec<u32> = digits(b, p as u64, e as usize);
            let mut r = poly_mulmod(&prime, &pa, &pb, &modulus);
            r.resize(e as usize, 0);
            undigits(&r, p as u64)
        };
        let (log, exp) = if q == 2 {
            (vec![0, 0], vec![1, 1])
        } else {
            let g = find_primitive(q as u64, slow_mul);
            let mut exp = vec![0u32; 2 * (q as usize - 1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u64;
            for i in 0..(q as usize - 1) {
                exp[i] = x as u32;
                exp[i + q as usize - 1] = x as u32;
                log[x as usize] = i as u32;
                x = slow_mul(x, g);
            }
            (log, exp)
        };
        let negs = (0..q as u64)
            .map(|a| {
                let d: Vec<u32> = digits(a, p as u64, e as usize)
                    .into_iter()
                    .map(|c| prime.neg(c))
                    .collect();
                undigits(&d, p as u64) as u32
            })
            .collect();
        let mut field = BaseField {
            p,
            e,
            q,
            modulus,
            log,
            exp,
            negs,
            add_table: None,
        };
        if p != 2 && e > 1 && q <= 256 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// The modulus `f` over `F_p`, little-endian, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else {
            self.negs[a as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Inverse of a nonzero element.
    ///
    /// Panics on zero; callers check.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_q");
        let l = self.log[a as usize];
        if l == 0 {
            1
        } else {
            self.exp[(self.q - 1 - l) as usize]
        }
    }

    pub fn digits_of(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.p as u64, self.e as usize)
    }
}

impl Scalars for BaseField {
    fn order(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        BaseField::add(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        BaseField::neg(self, a)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        BaseField::mul(self, a, b)
    }
    fn inv(&self, a: u32) -> u32 {
        BaseField::inv(self, a)
    }
}

/// An element of `F_{q^t}`, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqtElem(u32);

impl FqtElem {
    pub const ZERO: FqtElem = FqtElem(0);
    pub const ONE: FqtElem = FqtElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
struct ExtTables {
    log: Vec<u32>,
    exp: Vec<u32>,
    // zech[k] = log(1 + g^k), u32::MAX when 1 + g^k = 0
    zech: Option<Vec<u32>>,
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^t}` with `F_q = F_p[x]/(f)` and
/// `F_{q^t} = F_q[y]/(g)`. The `F_q`-basis of `F_{q^t}` is `1, y, …, y^{t-1}`.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldTower {
    base: BaseField,
    t: u32,
    size: u32,
    modulus: Vec<u32>,
    tables: Option<ExtTables>,
    primitive: FqtElem,
}

impl FieldTower {
    /// Builds the tower for `q = p^e` and top degree `t`, choosing the least
    /// monic irreducible moduli.
    pub fn new(p: u64, e: u32, t: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::DegreeOutOfRange("e must be at least 1".into()));
        }
        if t < 2 {
            return Err(Error::DegreeOutOfRange("t must be at least 2".into()));
        }
        if e as u64 * t as u64 > 64 {
            return Err(Error::DegreeOutOfRange(format!("e·t = {} exceeds 64", e * t)));
        }
        let size = (p as u128).pow(e * t);
        if size > u32::MAX as u128 {
            return Err(Error::DegreeOutOfRange(format!(
                "q^t = {size} does not fit an element index"
            )));
        }
        let base = BaseField::new(p as u32, e)?;
        let modulus = least_irreducible(&base, t as usize);
        let mut tower = FieldTower {
            base,
            t,
            size: size as u32,
            modulus,
            tables: None,
            primitive: FqtElem::ONE,
        };
        let slow = |a: u64, b: u64| tower.mul_slow(FqtElem(a as u32), FqtElem(b as u32)).0 as u64;
        let primitive = FqtElem(find_primitive(size as u64, slow) as u32);
        tower.primitive = primitive;
        if (size as u64) <= TABLE_LIMIT {
            let n1 = size as usize - 1;
            let mut exp = vec![0u32; 2 * n1];
            let mut log = vec![0u32; size as usize];
            let mut x = FqtElem::ONE;
            for i in 0..n1 {
                exp[i] = x.0;
                exp[i + n1] = x.0;
                log[x.0 as usize] = i as u32;
                x = tower.mul_slow(x, primitive);
            }
            let zech = if p == 2 {
                None
            } else {
                let z = (0..n1)
                    .map(|k| {
                        let s = tower.add(FqtElem::ONE, FqtElem(exp[k]));
                        if s.is_zero() {
                            u32::MAX
                        } else {
                            log[s.0 as usize]
                        }
                    })
                    .collect();
                Some(z)
            };
            tower.tables = Some(ExtTables { log, exp, zech });
        }
        Ok(tower)
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    pub fn e(&self) -> u32 {
        self.base.e
    }

    pub fn q(&self) -> u32 {
        self.base.q
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `q^t`.
    pub fn order(&self) -> u32 {
        self.size
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    /// The modulus `g` over `F_q`, little-endian, monic (coefficients are `F_q` indices).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> FqtElem {
        self.primitive
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elem(&self, index: u32) -> Option<FqtElem> {
        (index < self.size).then_some(FqtElem(index))
    }

    /// The generator `y` of `F_{q^t}` over `F_q`.
    pub fn y(&self) -> FqtElem {
        FqtElem(self.q())
    }

    /// Embeds a base field element.
    pub fn from_base(&self, c: u32) -> FqtElem {
        debug_assert!(c < self.q());
        FqtElem(c)
    }

    pub fn is_in_base(&self, x: FqtElem) -> bool {
        x.0 < self.q()
    }

    pub fn coeffs(&self, x: FqtElem) -> Vec<u32> {
        digits(x.0 as u64, self.q() as u64, self.t as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FqtElem {
        debug_assert_eq!(c.len(), self.t as usize);
        FqtElem(undigits(c, self.q() as u64) as u32)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqtElem> + '_ {
        (0..self.size).map(FqtElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqtElem> + '_ {
        (1..self.size).map(FqtElem)
    }

    /// Nonzero elements of the base field `F_q` as elements of `F_{q^t}`.
    pub fn base_nonzero(&self) -> impl Iterator<Item = FqtElem> + '_ {
        (1..self.q()).map(FqtElem)
    }

    #[inline]
    pub fn add(&self, a: FqtElem, b: FqtElem) -> FqtElem {
        if self.base.p == 2 {
            return FqtElem(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if let Some(ExtTables { log, exp, zech: Some(zech) }) = &self.tables {
            let n1 = self.size - 1;
            let la = log[a.0 as usize];
            let lb = log[b.0 as usize];
            let d = if lb >= la { lb - la } else { lb + n1 - la };
            let z = zech[d as usize];
            if z == u32::MAX {
                return FqtElem::ZERO;
            }
            let s = la + z;
            return FqtElem(exp[if s >= n1 { s - n1 } else { s } as usize]);
        }
        let q = self.q() as u64;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.t {
            out += self.base.add((x % q) as u32, (y % q) as u32) as u64 * place;
            x /= q;
            y /= q;
            place *= q;
        }
        FqtElem(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: FqtElem) -> FqtElem {
        if self.base.p == 2 {
            return a;
        }
        let c: Vec<u32> = self.coeffs(a).into_iter().map(|c| self.base.neg(c)).collect();
        self.from_coeffs(&c)
    }

    #[inline]
    pub fn sub(&self, a: FqtElem, b: FqtElem) -> FqtElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqtElem, b: FqtElem) -> FqtElem {
        if a.is_zero() || b.is_zero() {
            return FqtElem::ZERO;
        }
        match &self.tables {
            Some(t) => FqtElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FqtElem, b: FqtElem) -> FqtElem {
        let mut r = poly_mulmod(&self.base, &self.coeffs(a), &self.coeffs(b), &self.modulus);
        r.resize(self.t as usize, 0);
        self.from_coeffs(&r)
    }

    pub fn try_inv(&self, a: FqtElem) -> Result<FqtElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                if l == 0 {
                    FqtElem::ONE
                } else {
                    FqtElem(t.exp[(self.size - 1 - l) as usize])
                }
            }
            None => self.pow(a, self.size as u64 - 2),
        })
    }

    /// Inverse of a nonzero element; panics on zero.
    #[inline]
    pub fn inv(&self, a: FqtElem) -> FqtElem {
        self.try_inv(a).expect("inverse of zero in F_{q^t}")
    }

    pub fn div(&self, a: FqtElem, b: FqtElem) -> Result<FqtElem> {
        Ok(self.mul(a, self.try_inv(b)?))
    }

    pub fn pow(&self, a: FqtElem, k: u64) -> FqtElem {
        if k == 0 {
            return FqtElem::ONE;
        }
        if a.is_zero() {
            return FqtElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let n1 = (self.size - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (k % n1)) % n1;
            return FqtElem(t.exp[l as usize]);
        }
        let mut r = FqtElem::ONE;
        let mut b = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    /// `x^(q^i)`; `i` is taken modulo `t`.
    pub fn frobenius(&self, x: FqtElem, i: u32) -> FqtElem {
        let i = i % self.t;
        let mut y = x;
        for _ in 0..i {
            y = self.pow(y, self.q() as u64);
        }
        y
    }

    /// `x^((q^t - 1)/(q - 1))`, an element of `F_q`.
    pub fn norm(&self, x: FqtElem) -> FqtElem {
        if x.is_zero() {
            return FqtElem::ZERO;
        }
        let theta = (self.size as u64 - 1) / (self.q() as u64 - 1);
        self.pow(x, theta)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: FqtElem) -> u64 {
        assert!(!x.is_zero());
        let n1 = self.size as u64 - 1;
        let mut ord = n1;
        for r in prime_factors(n1) {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == FqtElem::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// Base-field element as comma-separated base-p digits, little-endian.
    pub fn encode_base(&self, c: u32) -> String {
        self.base
            .digits_of(c)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn decode_base(&self, s: &str) -> Result<u32> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != self.e() as usize {
            return Err(parse_err(format!(
                "F_q coefficient {s:?} needs {} digits",
                self.e()
            )));
        }
        let mut ds = Vec::with_capacity(parts.len());
        for part in parts {
            let d: u32 = part
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad digit {part:?}")))?;
            if d >= self.p() {
                return Err(parse_err(format!("digit {d} not below p = {}", self.p())));
            }
            ds.push(d);
        }
        Ok(undigits(&ds, self.p() as u64) as u32)
    }

    /// Text form: `F_q` coefficients separated by `;`, each as comma-separated
    /// base-p digits, both little-endian. In `F_8`, `"1;0;1"` is `1 + y²`.
    pub fn encode(&self, x: FqtElem) -> String {
        self.coeffs(x)
            .iter()
            .map(|&c| self.encode_base(c))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn decode(&self, s: &str) -> Result<FqtElem> {
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != self.t as usize {
            return Err(parse_err(format!(
                "element {s:?} needs {} coefficients",
                self.t
            )));
        }
        let coeffs = parts
            .iter()
            .map(|p| self.decode_base(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_coeffs(&coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute-force irreducibility: no monic factor of degree 1..=d/2.
    fn brute_irreducible(p: u32, m: &[u32]) -> bool {
        let s = PrimeField { p };
        let d = m.len() - 1;
        for k in 1..=d / 2 {
            for low in 0..(p as u64).pow(k as u32) {
                let mut f = digits(low, p as u64, k);
                f.push(1);
                if poly_rem(&s, m.to_vec(), &f).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn least_cubic_over_f2_is_y3_y_1() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        assert_eq!(t.modulus(), &[1, 1, 0, 1]);
        // exhaustive scan of the 8 monic cubics
        let irreducible: Vec<u64> = (0..8)
            .filter(|&low| {
                let mut m = digits(low, 2, 3);
                m.push(1);
                brute_irreducible(2, &m)
            })
            .collect();
        assert_eq!(irreducible, vec![3, 5]);
    }

    #[test]
    fn least_cubic_over_f3_matches_brute_force() {
        let t = FieldTower::new(3, 1, 3).unwrap();
        let first = (0..27u64)
            .find(|&low| {
                let mut m = digits(low, 3, 3);
                m.push(1);
                brute_irreducible(3, &m)
            })
            .unwrap();
        let mut expected = digits(first, 3, 3);
        expected.push(1);
        assert_eq!(t.modulus(), expected.as_slice());
        assert_eq!(t.order(), 27);
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u32, 3, 5] {
            let s = PrimeField { p };
            for d in 1..=4usize {
                for low in 0..(p as u64).pow(d as u32) {
                    let mut m = digits(low, p as u64, d);
                    m.push(1);
                    assert_eq!(is_irreducible(&s, &m), brute_irreducible(p, &m), "{p} {m:?}");
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FieldTower::new(4, 1, 3).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
        assert!(matches!(FieldTower::new(2, 1, 1), Err(Error::DegreeOutOfRange(_))));
        assert!(matches!(FieldTower::new(2, 0, 3), Err(Error::DegreeOutOfRange(_))));
        assert!(matches!(FieldTower::new(2, 8, 9), Err(Error::DegreeOutOfRange(_))));
    }

    #[test]
    fn y_cubed_in_f8() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        let y = t.y();
        let y3 = t.mul(t.mul(y, y), y);
        assert_eq!(y3, t.add(y, FqtElem::ONE));
    }

    #[test]
    fn base_field_f4() {
        let t = FieldTower::new(2, 2, 2).unwrap();
        assert_eq!(t.q(), 4);
        assert_eq!(t.base().modulus(), &[1, 1, 1]);
        let f = t.base();
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn identities_and_inverses() {
        for (p, e, tt) in [(2, 1, 3), (3, 1, 3), (2, 2, 2), (3, 1, 4)] {
            let t = FieldTower::new(p, e, tt).unwrap();
            for x in t.elements() {
                assert_eq!(t.mul(x, FqtElem::ONE), x);
                assert_eq!(t.add(x, t.neg(x)), FqtElem::ZERO);
                if !x.is_zero() {
                    assert_eq!(t.inv(t.inv(x)), x);
                    assert_eq!(t.mul(t.inv(x), x), FqtElem::ONE);
                }
            }
            assert_eq!(t.try_inv(FqtElem::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e, tt) in [(2, 1, 3), (3, 1, 3), (2, 2, 2), (3, 1, 4)] {
            let t = FieldTower::new(p, e, tt).unwrap();
            let els: Vec<_> = t.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(t.mul(a, b), t.mul(b, a));
                    assert_eq!(t.add(a, b), t.add(b, a));
                }
            }
            // distributivity on a stride to keep it quick at 81
            for &a in els.iter().step_by(3) {
                for &b in &els {
                    for &c in els.iter().step_by(5) {
                        assert_eq!(
                            t.mul(a, t.add(b, c)),
                            t.add(t.mul(a, b), t.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let t = FieldTower::new(3, 1, 3).unwrap();
        for a in t.elements() {
            for b in t.elements() {
                assert_eq!(t.mul(a, b), t.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn frobenius_basics() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        assert_eq!(t.frobenius(t.y(), 1), t.mul(t.y(), t.y()));
        for tw in [FieldTower::new(2, 1, 3).unwrap(), FieldTower::new(3, 1, 3).unwrap()] {
            for x in tw.elements() {
                assert_eq!(tw.frobenius(x, 0), x);
                assert_eq!(tw.frobenius(x, tw.t()), x);
            }
            let fixed: Vec<_> = tw.elements().filter(|&x| tw.frobenius(x, 1) == x).collect();
            assert_eq!(fixed.len() as u32, tw.q());
            assert!(fixed.iter().all(|&x| tw.is_in_base(x)));
        }
    }

    #[test]
    fn norm_examples() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        assert!(t.nonzero().all(|x| t.norm(x) == FqtElem::ONE));
        let t = FieldTower::new(3, 1, 3).unwrap();
        assert_eq!(t.norm(FqtElem::ONE), FqtElem::ONE);
        let minus_one = t.neg(FqtElem::ONE);
        for x in t.nonzero() {
            let is_square = t.nonzero().any(|r| t.mul(r, r) == x);
            if !is_square {
                assert_eq!(t.pow(x, 13), minus_one);
            }
        }
    }

    #[test]
    fn norm_multiplicative_and_onto() {
        let t = FieldTower::new(3, 1, 4).unwrap();
        let mut image = std::collections::BTreeSet::new();
        for a in t.nonzero() {
            image.insert(t.norm(a));
            for b in t.nonzero().step_by(7) {
                assert_eq!(t.norm(t.mul(a, b)), t.mul(t.norm(a), t.norm(b)));
            }
        }
        let base: std::collections::BTreeSet<_> = t.base_nonzero().collect();
        assert_eq!(image, base);
    }

    #[test]
    fn enumeration_order() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        let els: Vec<_> = t.elements().collect();
        assert_eq!(els.len(), 8);
        assert_eq!(els[0], FqtElem::ZERO);
        assert_eq!(els[1], FqtElem::ONE);
        assert_eq!(FieldTower::new(3, 1, 3).unwrap().elements().count(), 27);
    }

    #[test]
    fn text_encoding() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        let x = t.decode("1;0;1").unwrap();
        assert_eq!(x, t.add(FqtElem::ONE, t.mul(t.y(), t.y())));
        assert_eq!(t.encode(x), "1;0;1");
        assert!(t.decode("1;0").is_err());
        assert!(t.decode("1;2;0").is_err());
        let t4 = FieldTower::new(2, 2, 2).unwrap();
        let z = t4.decode("0,1;1,0").unwrap();
        assert_eq!(t4.encode(z), "0,1;1,0");
        assert_eq!(t4.coeffs(z), vec![2, 1]);
    }

    #[test]
    fn untabled_tower_is_consistent() {
        // 2^21 elements: above the table limit
        let t = FieldTower::new(2, 1, 21).unwrap();
        assert!(!t.has_tables());
        let a = t.y();
        let b = t.add(t.pow(a, 5), FqtElem::ONE);
        assert_eq!(t.mul(t.inv(b), b), FqtElem::ONE);
        assert_eq!(t.frobenius(b, 21), b);
        assert!(t.is_in_base(t.norm(b)));
    }
}
