//! Polynomial arithmetic over a prime field F_p with word-size p.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub type FpPoly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, f: &mut FpPoly) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn monic(&self, f: &[u64]) -> FpPoly {
        let mut f = f.to_vec();
        self.trim(&mut f);
        if let Some(&lc) = f.last() {
            let inv = self.inv(lc);
            for c in f.iter_mut() {
                *c = self.mul(*c, inv);
            }
        }
        f
    }

    pub fn sub_poly(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out: FpPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn add_poly(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out: FpPoly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.trim(&mut out);
        out
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        let mut b = b.to_vec();
        self.trim(&mut b);
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        self.trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = self.mul(r[dr], inv);
            let shift = dr - db;
            for (i, &bi) in b.iter().enumerate() {
                r[i + shift] = self.sub(r[i + shift], self.mul(c, bi));
            }
            q[shift] = c;
            self.trim(&mut r);
        }
        self.trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        self.trim(&mut x);
        self.trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        self.trim(&mut r0);
        self.trim(&mut r1);
        let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        let sc = |v: &FpPoly| {
            let mut v: FpPoly = v.iter().map(|&c| self.mul(c, inv)).collect();
            self.trim(&mut v);
            v
        };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        let mut out: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn powmod(&self, base: &[u64], exp: &BigUint, m: &[u64]) -> FpPoly {
        let mut result: FpPoly = vec![1];
        let base = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.rem(&self.mul_poly(&result, &result), m);
            if exp.bit(i) {
                result = self.rem(&self.mul_poly(&result, &base), m);
            }
        }
        if m.len() == 1 {
            return Vec::new();
        }
        result
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x: FpPoly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f.clone(), deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&f, &self.sub_poly(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<FpPoly> {
        let f = self.monic(f);
        let n = f.len() - 1;
        if n == d {
            return vec![f];
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        loop {
            let a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            let mut a = a;
            self.trim(&mut a);
            if a.len() <= 1 {
                continue;
            }
            let b = self.powmod(&a, &exp, &f);
            let g = self.gcd(&f, &self.sub_poly(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(&f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let df = self.derivative(f);
        if df.is_empty() {
            return false;
        }
        self.gcd(f, &df).len() == 1
    }
}

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

/// Reduces an integer to `[0, p)`.
pub fn reduce_bigint(c: &num_bigint::BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let r = c.mod_floor(&num_bigint::BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}
