//! Exact complex root counting in axis-parallel rectangles with rational
//! corners, used to pin a complex embedding of a number field.

use num_traits::{One, Signed, Zero};

use super::qpoly::{self, QPoly};
use super::rational::{int, Rational};

/// Axis-parallel rectangle `[re_lo, re_hi] × [im_lo, im_hi]` in ℂ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBox {
    pub re_lo: Rational,
    pub re_hi: Rational,
    pub im_lo: Rational,
    pub im_hi: Rational,
}

type Complex = (Rational, Rational);

fn cmul(a: &Complex, b: &Complex) -> Complex {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// `f(z0 + s·dz)` as a pair of real polynomials in `s`.
fn restrict_to_segment(f: &[Rational], z0: &Complex, dz: &Complex) -> (QPoly, QPoly) {
    // Horner with complex-coefficient polynomials in s
    let mut acc: Vec<Complex> = Vec::new();
    for c in f.iter().rev() {
        // acc = acc * (z0 + s dz) + c
        let mut next: Vec<Complex> = vec![(Rational::zero(), Rational::zero()); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            let t0 = cmul(a, z0);
            let t1 = cmul(a, dz);
            next[i].0 += t0.0;
            next[i].1 += t0.1;
            next[i + 1].0 += t1.0;
            next[i + 1].1 += t1.1;
        }
        next[0].0 += c;
        acc = next;
    }
    let re = qpoly::trimmed(acc.iter().map(|c| c.0.clone()).collect());
    let im = qpoly::trimmed(acc.iter().map(|c| c.1.clone()).collect());
    (re, im)
}

struct Sturm {
    chain: Vec<QPoly>,
}

impl Sturm {
    fn new(p: &[Rational]) -> Self {
        let mut chain = vec![qpoly::trimmed(p.to_vec()), qpoly::derivative(p)];
        while !chain.last().unwrap().is_empty() {
            let n = chain.len();
            let (_, r) = qpoly::divrem(&chain[n - 2], &chain[n - 1]);
            chain.push(qpoly::scale(&r, &int(-1)));
        }
        chain.pop();
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| {
                let v = qpoly::eval(p, x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in `(a, b)` for `a`, `b` not roots.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// A rational point in `(l, r)` avoiding roots of `p`.
fn split_point(p: &[Rational], l: &Rational, r: &Rational) -> Rational {
    let mut k = 2i64;
    loop {
        let m = l + (r - l) * Rational::new(1.into(), k.into());
        let m = if k == 2 {
            m
        } else {
            m + (r - l) * Rational::new(1.into(), (k * k).into())
        };
        if !qpoly::eval(p, &m).is_zero() {
            return m;
        }
        k += 1;
    }
}

/// Nonzero-valued sample points on `[0, 1]` separating every root of `p` in `[0, 1]`.
fn separating_samples(p: &[Rational]) -> Vec<Rational> {
    let zero = Rational::zero();
    let one = Rational::one();
    let mut sf = qpoly::squarefree_part(p);
    let root0 = qpoly::eval(&sf, &zero).is_zero();
    let root1 = qpoly::eval(&sf, &one).is_zero();
    if root0 {
        sf = qpoly::divrem(&sf, &[zero.clone(), one.clone()]).0;
    }
    if root1 {
        sf = qpoly::divrem(&sf, &[-one.clone(), one.clone()]).0;
    }
    let sturm = Sturm::new(&sf);
    // isolate interior roots into intervals with non-root endpoints
    let mut work = vec![(zero.clone(), one.clone())];
    let mut isolated = Vec::new();
    while let Some((l, r)) = work.pop() {
        let c = sturm.count(&l, &r);
        if c == 0 {
            continue;
        }
        let must_refine_left = root0 && l.is_zero();
        let must_refine_right = root1 && r.is_one();
        if c == 1 && !must_refine_left && !must_refine_right {
            isolated.push((l, r));
            continue;
        }
        let m = split_point(&sf, &l, &r);
        work.push((l, m.clone()));
        work.push((m, r));
    }
    isolated.sort();
    let mut samples = Vec::new();
    if !root0 {
        samples.push(zero.clone());
    }
    for (l, r) in &isolated {
        if *l > zero && samples.last() != Some(l) {
            samples.push(l.clone());
        }
        if *r < one {
            samples.push(r.clone());
        }
    }
    if !root1 && samples.last() != Some(&one) {
        samples.push(one.clone());
    }
    if samples.is_empty() {
        samples.push(split_point(p, &zero, &one));
    }
    samples.dedup();
    samples
}

fn quadrant(re: &Rational, im: &Rational) -> i32 {
    match (re.is_positive(), im.is_positive()) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

/// Number of roots of `f` (with multiplicity) strictly inside the box, or
/// `None` if a root lies on the boundary.
pub fn count_roots_in_box(f: &[Rational], b: &RootBox) -> Option<usize> {
    let corners: [Complex; 4] = [
        (b.re_lo.clone(), b.im_lo.clone()),
        (b.re_hi.clone(), b.im_lo.clone()),
        (b.re_hi.clone(), b.im_hi.clone()),
        (b.re_lo.clone(), b.im_hi.clone()),
    ];
    let mut quadrants = Vec::new();
    for i in 0..4 {
        let z0 = &corners[i];
        let z1 = &corners[(i + 1) % 4];
        let dz = (&z1.0 - &z0.0, &z1.1 - &z0.1);
        let (p, q) = restrict_to_segment(f, z0, &dz);
        let g = qpoly::gcd(&p, &q);
        if qpoly::degree(&g).unwrap_or(0) > 0 {
            let sf = qpoly::squarefree_part(&g);
            let zero = Rational::zero();
            let one = Rational::one();
            if qpoly::eval(&sf, &zero).is_zero()
                || qpoly::eval(&sf, &one).is_zero()
                || Sturm::new(&sf).count(&zero, &one) > 0
            {
                return None;
            }
        }
        if p.is_empty() && q.is_empty() {
            return None;
        }
        let both = qpoly::mul(&p, &q);
        let samples = if both.is_empty() {
            vec![Rational::new(1.into(), 2.into())]
        } else {
            separating_samples(&both)
        };
        for s in samples {
            quadrants.push(quadrant(&qpoly::eval(&p, &s), &qpoly::eval(&q, &s)));
        }
    }
    let n = quadrants.len();
    let mut quarter_turns = 0i32;
    for i in 0..n {
        let d = (quadrants[(i + 1) % n] - quadrants[i]).rem_euclid(4);
        quarter_turns += match d {
            0 => 0,
            1 => 1,
            3 => -1,
            _ => return None,
        };
    }
    debug_assert!(quarter_turns % 4 == 0);
    Some((quarter_turns / 4) as usize)
}

impl RootBox {
    pub fn new(re_lo: Rational, re_hi: Rational, im_lo: Rational, im_hi: Rational) -> Self {
        RootBox {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        }
    }

    /// Halves the longer side, keeping the half that still holds exactly one
    /// root of `f`.
    pub fn refine(&self, f: &[Rational]) -> Option<RootBox> {
        let wide = (&self.re_hi - &self.re_lo) >= (&self.im_hi - &self.im_lo);
        for k in 0..8i64 {
            // nudge the cut off-centre if a root sits on it
            let t = Rational::new((1000 + k).into(), 2000.into());
            let (a, b) = if wide {
                let m = &self.re_lo + (&self.re_hi - &self.re_lo) * &t;
                (
                    RootBox::new(
                        self.re_lo.clone(),
                        m.clone(),
                        self.im_lo.clone(),
                        self.im_hi.clone(),
                    ),
                    RootBox::new(
                        m,
                        self.re_hi.clone(),
                        self.im_lo.clone(),
                        self.im_hi.clone(),
                    ),
                )
            } else {
                let m = &self.im_lo + (&self.im_hi - &self.im_lo) * &t;
                (
                    RootBox::new(
                        self.re_lo.clone(),
                        self.re_hi.clone(),
                        self.im_lo.clone(),
                        m.clone(),
                    ),
                    RootBox::new(
                        self.re_lo.clone(),
                        self.re_hi.clone(),
                        m,
                        self.im_hi.clone(),
                    ),
                )
            };
            match (count_roots_in_box(f, &a), count_roots_in_box(f, &b)) {
                (Some(1), Some(0)) => return Some(a),
                (Some(0), Some(1)) => return Some(b),
                _ => continue,
            }
        }
        None
    }

    /// Rectangular enclosure of `{p(z) : z in box}` for a rational polynomial `p`.
    pub fn eval_enclosure(&self, p: &[Rational]) -> RootBox {
        let z = Interval2 {
            re: (self.re_lo.clone(), self.re_hi.clone()),
            im: (self.im_lo.clone(), self.im_hi.clone()),
        };
        let mut acc = Interval2::point(Rational::zero(), Rational::zero());
        for c in p.iter().rev() {
            acc = acc.mul(&z);
            acc.re.0 += c;
            acc.re.1 += c;
        }
        RootBox::new(acc.re.0, acc.re.1, acc.im.0, acc.im.1)
    }
}

#[derive(Clone)]
struct Interval2 {
    re: (Rational, Rational),
    im: (Rational, Rational),
}

fn imul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    let ps = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = ps.iter().min().unwrap().clone();
    let hi = ps.iter().max().unwrap().clone();
    (lo, hi)
}

impl Interval2 {
    fn point(re: Rational, im: Rational) -> Self {
        Interval2 {
            re: (re.clone(), re),
            im: (im.clone(), im),
        }
    }

    fn mul(&self, o: &Interval2) -> Interval2 {
        let rr = imul(&self.re, &o.re);
        let ii = imul(&self.im, &o.im);
        let ri = imul(&self.re, &o.im);
        let ir = imul(&self.im, &o.re);
        Interval2 {
            re: (&rr.0 - &ii.1, &rr.1 - &ii.0),
            im: (&ri.0 + &ir.0, &ri.1 + &ir.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    fn bx(a: i64, b: i64, c: i64, d: i64) -> RootBox {
        RootBox::new(int(a), int(b), int(c), int(d))
    }

    #[test]
    fn counts_roots_of_x_squared_plus_one() {
        let f = vec![int(1), int(0), int(1)];
        assert_eq!(count_roots_in_box(&f, &bx(-2, 2, -2, 2)), Some(2));
        assert_eq!(count_roots_in_box(&f, &bx(-1, 1, 0, 2)), Some(1));
        let upper = RootBox::new(rat(-1, 2), rat(1, 2), rat(1, 2), rat(3, 2));
        assert_eq!(count_roots_in_box(&f, &upper), Some(1));
        assert_eq!(count_roots_in_box(&f, &bx(1, 2, 1, 2)), Some(0));
        // root i on the edge im = 1
        assert_eq!(count_roots_in_box(&f, &bx(-1, 1, 1, 2)), None);
    }

    #[test]
    fn counts_real_roots_inside() {
        // (x - 1)(x - 3)(x + 5)
        let f = qpoly::mul(
            &qpoly::mul(&[int(-1), int(1)], &[int(-3), int(1)]),
            &[int(5), int(1)],
        );
        assert_eq!(
            count_roots_in_box(&f, &RootBox::new(rat(1, 2), int(4), int(-1), int(1))),
            Some(2)
        );
        assert_eq!(count_roots_in_box(&f, &bx(-6, 4, -1, 1)), Some(3));
    }

    #[test]
    fn refine_keeps_the_root() {
        let f = vec![int(-2), int(0), int(1)];
        let mut b = RootBox::new(int(1), int(2), rat(-1, 2), rat(1, 2));
        for _ in 0..14 {
            b = b.refine(&f).unwrap();
        }
        assert!(b.re_lo > rat(14, 10) && b.re_hi < rat(143, 100));
    }
}
