//! Low-degree factor search for integer polynomials (Zassenhaus: modular
//! factorization, Hensel lifting, bounded recombination).
//!
//! Only factors up to a caller-chosen degree are recovered. That is all the
//! number-field code needs: irreducibility tests up to a bound, and the
//! degree-`d` factors of a norm polynomial when extracting roots in a field
//! of degree `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;

use super::modp::{is_prime, reduce_bigint, Fp, FpPoly};
use super::qpoly;
use super::rational::Rational;

pub type ZPoly = Vec<BigInt>;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Rescales a monic rational polynomial `f` to a monic integer polynomial
/// `D^n f(t/D)`; roots are multiplied by the returned `D`.
pub fn monic_integer_scaling(f: &[Rational]) -> (ZPoly, BigInt) {
    let f = qpoly::monic(f);
    let n = f.len() - 1;
    let mut d = BigInt::one();
    for c in &f {
        d = d.lcm(c.denom());
    }
    // Coefficient of t^i becomes c_i * D^(n-i).
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in f.iter().enumerate() {
        let v = c * Rational::from_integer(num_traits::pow(d.clone(), n - i));
        debug_assert!(v.is_integer());
        out.push(v.to_integer());
    }
    (out, d)
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic integer polynomial; `None` when it does not divide.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &c * bi;
        }
        q[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn to_fp(a: &[BigInt], fp: &Fp) -> FpPoly {
    let mut out: FpPoly = a.iter().map(|c| reduce_bigint(c, fp.p)).collect();
    fp.trim(&mut out);
    out
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn from_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g·h (mod p)` (g, h monic, coprime mod p) to `mod p^k`.
fn hensel_two(f: &[BigInt], g: &FpPoly, h: &FpPoly, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = fp.ext_gcd(g, h);
    let p = BigInt::from(fp.p);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut pj = p.clone();
    for _ in 1..k {
        // e = (f - g h) / p^j mod p
        let gh = zmul(&gz, &hz);
        let mut diff: ZPoly = (0..f.len().max(gh.len()))
            .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        trim(&mut diff);
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = to_fp(&e, fp);
        if !e.is_empty() {
            let es = fp.mul_poly(&e, &s);
            let (q, dh) = fp.divrem(&es, h);
            let dg = fp.add_poly(&fp.mul_poly(&e, &t), &fp.mul_poly(&q, g));
            for (i, c) in dg.iter().enumerate() {
                gz[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in dh.iter().enumerate() {
                hz[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &p;
    }
    (gz, hz)
}

/// Lifts a full modular factorization of monic `f` to `mod p^k`.
fn hensel_multi(f: &[BigInt], factors: &[FpPoly], fp: &Fp, k: u32) -> Vec<ZPoly> {
    let modulus = num_traits::pow(BigInt::from(fp.p), k as usize);
    let mut out = Vec::with_capacity(factors.len());
    let mut target = f.to_vec();
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            out.push(reduce_mod(&target, &modulus));
            break;
        }
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, g| fp.mul_poly(&acc, g));
        let (g, h) = hensel_two(&target, &factors[i], &rest, fp, k);
        out.push(reduce_mod(&g, &modulus));
        target = reduce_mod(&h, &modulus);
    }
    out
}

fn norm_bound(f: &[BigInt]) -> BigInt {
    // sum of |coefficients| bounds the 2-norm
    f.iter().map(|c| c.abs()).sum()
}

fn choose_prime(f: &[BigInt]) -> (Fp, Vec<FpPoly>) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(Fp, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut cand = 32771u64;
    while tried < 4 {
        cand += 2;
        if !is_prime(cand) {
            continue;
        }
        let fp = Fp::new(cand);
        let fm = to_fp(f, &fp);
        if fm.len() != f.len() || !fp.is_squarefree(&fm) {
            continue;
        }
        tried += 1;
        let mut factors = Vec::new();
        for (g, d) in fp.distinct_degree(&fm) {
            factors.extend(fp.equal_degree(&g, d, &mut rng));
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((fp, factors));
        }
    }
    best.expect("no admissible prime")
}

fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    // visits k-subsets of 0..n in lexicographic order; stops when `visit` returns true
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All monic irreducible factors over ℤ of degree `≤ max_degree` of a monic
/// squarefree integer polynomial.
pub fn small_degree_factors(f: &[BigInt], max_degree: usize) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 0 || max_degree == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.to_vec()];
    }
    let (fp, mods) = choose_prime(f);
    let mod_degrees: Vec<usize> = mods.iter().map(|g| g.len() - 1).collect();
    let bound = norm_bound(f) * BigInt::from(2u32).pow(max_degree.min(n) as u32) * 2 + 1;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifted = hensel_multi(f, &mods, &fp, k);
    let mut alive: Vec<bool> = vec![true; mods.len()];
    let mut remaining = f.to_vec();
    let mut found = Vec::new();
    let mut card = 1;
    loop {
        let live: Vec<usize> = (0..mods.len()).filter(|&i| alive[i]).collect();
        if card > live.len() {
            break;
        }
        let min_sum: usize = {
            let mut ds: Vec<usize> = live.iter().map(|&i| mod_degrees[i]).collect();
            ds.sort();
            ds.iter().take(card).sum()
        };
        if min_sum > max_degree {
            break;
        }
        let mut hit: Option<(Vec<usize>, ZPoly)> = None;
        for_each_subset(live.len(), card, |sub| {
            let deg: usize = sub.iter().map(|&j| mod_degrees[live[j]]).sum();
            if deg > max_degree {
                return false;
            }
            let mut g: ZPoly = vec![BigInt::one()];
            for &j in sub {
                g = reduce_mod(&zmul(&g, &lifted[live[j]]), &pk);
            }
            let mut g: ZPoly = g.iter().map(|c| symmetric_mod(c, &pk)).collect();
            trim(&mut g);
            if !g.last().is_some_and(|c| c.is_one()) {
                return false;
            }
            if let Some(q) = zdiv_exact(&remaining, &g) {
                hit = Some((sub.iter().map(|&j| live[j]).collect(), g));
                remaining = q;
                return true;
            }
            false
        });
        match hit {
            Some((used, g)) => {
                for i in used {
                    alive[i] = false;
                }
                found.push(g);
            }
            None => card += 1,
        }
    }
    found
}

/// True when no factor of degree in `1..=bound` (and `≤ deg/2`) exists.
pub fn is_irreducible_up_to(f: &[Rational], bound: usize) -> bool {
    let Some(n) = qpoly::degree(f) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !qpoly::is_squarefree(f) {
        return false;
    }
    let (z, _) = monic_integer_scaling(f);
    let limit = (n / 2).min(bound);
    small_degree_factors(&z, limit).is_empty()
}

/// Rational roots of a nonzero rational polynomial (each listed once).
pub fn rational_roots(f: &[Rational]) -> Vec<Rational> {
    let Some(n) = qpoly::degree(f) else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let sf = qpoly::squarefree_part(f);
    let (z, d) = monic_integer_scaling(&sf);
    let mut roots: Vec<Rational> = small_degree_factors(&z, 1)
        .into_iter()
        .map(|g| Rational::new(-g[0].clone(), d.clone()))
        .collect();
    roots.sort();
    roots
}

/// Monic irreducible rational factors of exact degree `e`.
pub fn rational_factors_of_degree(f: &[Rational], e: usize) -> Vec<Vec<Rational>> {
    let sf = qpoly::squarefree_part(f);
    let (z, d) = monic_integer_scaling(&sf);
    let dr = Rational::from_integer(d);
    small_degree_factors(&z, e)
        .into_iter()
        .filter(|g| g.len() == e + 1)
        .map(|g| {
            // undo the scaling t -> D t: coefficient i gets divided by D^(e-i)
            g.iter()
                .enumerate()
                .map(|(i, c)| {
                    Rational::from_integer(c.clone()) / num_traits::pow(dr.clone(), e - i)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};

    fn zp(cs: &[i64]) -> ZPoly {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn finds_rational_roots() {
        // (2t - 1)(t + 3)(t^2 + 1) made monic
        let f = qpoly::mul(
            &qpoly::mul(&[rat(-1, 2), int(1)], &[int(3), int(1)]),
            &[int(1), int(0), int(1)],
        );
        assert_eq!(rational_roots(&f), vec![int(-3), rat(1, 2)]);
    }

    #[test]
    fn quadratic_factors_of_quartic() {
        // (t^2 - 2)(t^2 + 1)
        let f = zp(&[-2, 0, -1, 0, 1]);
        let mut fs = small_degree_factors(&f, 2);
        fs.sort();
        assert_eq!(fs, vec![zp(&[-2, 0, 1]), zp(&[1, 0, 1])]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible_up_to(&[int(1), int(0), int(1)], 8));
        assert!(is_irreducible_up_to(
            &[int(1), int(0), int(0), int(0), int(1)],
            8
        ));
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(!is_irreducible_up_to(
            &[int(4), int(0), int(0), int(0), int(1)],
            8
        ));
        assert!(!is_irreducible_up_to(&[int(-4), int(0), int(1)], 8));
    }

    #[test]
    fn swinnerton_dyer_like_product_is_recovered() {
        // (t^2 - 2)(t^2 - 3)(t - 5)
        let f = zmul(&zmul(&zp(&[-2, 0, 1]), &zp(&[-3, 0, 1])), &zp(&[-5, 1]));
        let mut fs = small_degree_factors(&f, 2);
        fs.sort();
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&zp(&[-5, 1])));
    }
}
