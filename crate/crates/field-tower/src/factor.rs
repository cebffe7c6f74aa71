//! Univariate factorization over Q (modular factorization at a prime above
//! the coefficient bound, then recombination) and over towers (norm
//! reduction).

use std::sync::Arc;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ring::{Rational, Ring};
use crate::tower::{AlgebraicNumber, Tower};
use crate::upoly::UPoly;

type ZPoly = Vec<BigInt>;

fn trim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn modp(a: &BigInt, p: &BigInt) -> BigInt {
    a.mod_floor(p)
}

fn pmul(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    for c in v.iter_mut() {
        *c = modp(c, p);
    }
    trim(&mut v);
    v
}

fn psub(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut v: ZPoly =
        (0..n).map(|k| modp(&(a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)), p)).collect();
    trim(&mut v);
    v
}

fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    modp(&e.x, p)
}

fn pdivrem(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let il = inv_mod(&b[db], p);
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = modp(&r[k], p);
        if c.is_zero() {
            continue;
        }
        let f = modp(&(c * &il), p);
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] = modp(&(&r[k - db + j] - &f * bj), p);
        }
        q[k - db] = f;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn pmonic(a: &[BigInt], p: &BigInt) -> ZPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let il = inv_mod(l, p);
            a.iter().map(|c| modp(&(c * &il), p)).collect()
        }
    }
}

fn pgcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ZPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

fn ppowmod(base: &[BigInt], e: &BigUint, m: &[BigInt], p: &BigInt) -> ZPoly {
    let mut acc: ZPoly = vec![BigInt::one()];
    let mut b = pdivrem(base, m, p).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = pdivrem(&pmul(&acc, &b, p), m, p).1;
        }
        if i + 1 < bits {
            b = pdivrem(&pmul(&b, &b, p), m, p).1;
        }
    }
    acc
}

fn is_probable_prime(n: &BigUint, rng: &mut ChaCha8Rng) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigUint::from(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0;
    while (&d % &two).is_zero() {
        d >>= 1;
        r += 1;
    }
    'witness: for _ in 0..24 {
        let a = rng.gen_biguint_range(&two, &nm1);
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct-degree then equal-degree splitting of a squarefree monic
/// polynomial modulo the prime `p`.
fn factor_mod_p(f: &[BigInt], p: &BigInt, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let pu = p.to_biguint().unwrap();
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x: ZPoly = vec![BigInt::zero(), BigInt::one()];
    let mut h = x.clone();
    let mut d = 1;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            out.push(rest.clone());
            break;
        }
        h = ppowmod(&h, &pu, &rest, p);
        let g = pgcd(&rest, &psub(&h, &x, p), p);
        if g.len() > 1 {
            for part in equal_degree(&g, d, p, rng) {
                out.push(part);
            }
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
        d += 1;
    }
    out
}

fn equal_degree(f: &[BigInt], d: usize, p: &BigInt, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let pu = p.to_biguint().unwrap();
    let e = (pu.pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: ZPoly = (0..n).map(|_| BigInt::from(rng.gen_biguint_below(&pu))).collect();
        let mut a = a;
        trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let mut b = ppowmod(&a, &e, f, p);
        if b.is_empty() {
            b = vec![BigInt::zero()];
        }
        b[0] = modp(&(&b[0] - BigInt::one()), p);
        trim(&mut b);
        let g = pgcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = pdivrem(f, &g, p).0;
            let mut v = equal_degree(&g, d, p, rng);
            v.extend(equal_degree(&pmonic(&q, p), d, p, rng));
            return v;
        }
    }
}

fn symmetric(c: &BigInt, p: &BigInt) -> BigInt {
    let c = modp(c, p);
    let half: BigInt = p >> 1;
    if c > half {
        c - p
    } else {
        c
    }
}

fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(f: &[BigInt]) -> ZPoly {
    let c = content(f);
    let sign = if f.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    f.iter().map(|x| x / &c * &sign).collect()
}

/// Exact division in Z[t]; `None` when `b` does not divide `a`.
fn zdiv(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (qq, rr) = r[k].div_rem(&b[db]);
        if !rr.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= &qq * bj;
        }
        q[k - db] = qq;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors in Z[t] of a squarefree primitive integer polynomial
/// (coefficients from degree 0), each primitive with positive leading
/// coefficient.
pub fn factor_integer_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut f = primitive(f);
    trim(&mut f);
    if f.len() <= 2 {
        return vec![f];
    }
    let mut out = Vec::new();
    // Rational roots at the origin are split off first.
    if f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
        if f.len() <= 2 {
            out.push(f);
            return out;
        }
    }
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let lc = f[n].abs();
    let bound: BigInt = (BigInt::one() << n) * norm * &lc * 2 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut p = bound.to_biguint().unwrap();
    if (&p % 2u32).is_zero() {
        p += 1u32;
    }
    let df: ZPoly = f.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    let pb = loop {
        if is_probable_prime(&p, &mut rng) {
            let pb = BigInt::from_biguint(Sign::Plus, p.clone());
            if !modp(&f[n], &pb).is_zero() {
                let fm: ZPoly = f.iter().map(|c| modp(c, &pb)).collect();
                let dm: ZPoly = {
                    let mut v: ZPoly = df.iter().map(|c| modp(c, &pb)).collect();
                    trim(&mut v);
                    v
                };
                if pgcd(&fm, &dm, &pb).len() == 1 {
                    break pb;
                }
            }
        }
        p += 2u32;
    };
    let fm = pmonic(&f.iter().map(|c| modp(c, &pb)).collect::<Vec<_>>(), &pb);
    let mut modular = factor_mod_p(&fm, &pb, &mut rng);
    let mut rest = f;
    let mut k = 1;
    while 2 * k <= modular.len() {
        let mut found = None;
        for s in subsets(modular.len(), k) {
            let lc = rest.last().unwrap().clone();
            let mut g: ZPoly = vec![lc.clone()];
            for &i in &s {
                g = pmul(&g, &modular[i], &pb);
            }
            let mut g: ZPoly = g.iter().map(|c| symmetric(c, &pb)).collect();
            trim(&mut g);
            let g = primitive(&g);
            if let Some(q) = zdiv(&rest, &g) {
                found = Some((s, g, q));
                break;
            }
        }
        match found {
            Some((s, g, q)) => {
                out.push(g);
                rest = primitive(&q);
                for &i in s.iter().rev() {
                    modular.remove(i);
                }
            }
            None => k += 1,
        }
    }
    out.push(rest);
    out
}

fn to_integer_poly(u: &UPoly<Rational>) -> ZPoly {
    let den = u.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    u.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect()
}

/// Monic irreducible factors over Q with multiplicities, sorted by degree
/// then coefficients. Constants are omitted.
pub fn factor_rational(u: &UPoly<Rational>) -> Vec<(UPoly<Rational>, u32)> {
    let mut out = Vec::new();
    for (s, m) in u.squarefree_decomposition() {
        for g in factor_integer_squarefree(&to_integer_poly(&s)) {
            let g = UPoly::new(g.into_iter().map(Rational::from_integer).collect()).monic();
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| cmp_rational_coeffs(&a.0, &b.0))
    });
    out
}

fn cmp_rational_coeffs(a: &UPoly<Rational>, b: &UPoly<Rational>) -> std::cmp::Ordering {
    a.coeffs().cmp(b.coeffs())
}

fn to_rational_poly(u: &UPoly<AlgebraicNumber>) -> Option<UPoly<Rational>> {
    let v: Option<Vec<Rational>> = u.coeffs().iter().map(|c| c.as_rational()).collect();
    v.map(UPoly::new)
}

/// Monic irreducible factors over the tower with multiplicities.
pub fn factor_over(tower: &Arc<Tower>, u: &UPoly<AlgebraicNumber>) -> Vec<(UPoly<AlgebraicNumber>, u32)> {
    if tower.is_rational() {
        let q = to_rational_poly(u).expect("rational coefficients over Q");
        return factor_rational(&q)
            .into_iter()
            .map(|(g, m)| (g.map(|c| AlgebraicNumber::in_tower(tower, c.clone())), m))
            .collect();
    }
    let u = u.map(|c| c.lift(tower));
    let mut out = Vec::new();
    for (s, m) in u.squarefree_decomposition() {
        for g in factor_squarefree_tower(tower, &s) {
            out.push((g, m));
        }
    }
    out.sort_by_key(|(g, _)| g.degree());
    out
}

/// Norm reduction for a squarefree monic polynomial over the top level.
fn factor_squarefree_tower(tower: &Arc<Tower>, u: &UPoly<AlgebraicNumber>) -> Vec<UPoly<AlgebraicNumber>> {
    if u.degree().unwrap_or(0) <= 1 {
        return vec![u.monic()];
    }
    let below = tower.prefix(tower.depth() - 1);
    let alpha = tower.generator();
    for s in 0i64.. {
        let shift = alpha.clone() * AlgebraicNumber::from_int(s);
        let shifted = u.shift(&-shift.clone());
        let norm = top_norm(tower, &below, &shifted);
        if !norm.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        let mut rest = shifted.clone();
        for (ni, _) in factor_over(&below, &norm) {
            let ni = ni.map(|c| c.lift(tower));
            let g = rest.gcd(&ni);
            if g.degree().unwrap_or(0) >= 1 {
                rest = rest.div_rem(&g).0;
                out.push(g.shift(&shift).monic());
            }
        }
        return out;
    }
    unreachable!()
}

/// `Res_z(m(z), u(z, t))` where the top generator of `tower` is replaced by
/// an indeterminate `z`; the result has coefficients one level down.
fn top_norm(tower: &Arc<Tower>, below: &Arc<Tower>, u: &UPoly<AlgebraicNumber>) -> UPoly<AlgebraicNumber> {
    let m = tower.top_minpoly();
    let dm = m.degree().unwrap();
    let du = u.degree().unwrap();
    let npts = dm * du + 1;
    // Each coefficient of u as a polynomial in z over the level below.
    let uz: Vec<Vec<AlgebraicNumber>> = u.coeffs().iter().map(|c| c.top_coefficients(tower)).collect();
    let mut points = Vec::with_capacity(npts);
    for k in 0..npts {
        let t0 = AlgebraicNumber::in_tower(below, Rational::from_integer(BigInt::from(k as i64)));
        let mut acc: Vec<AlgebraicNumber> = Vec::new();
        let mut pow = AlgebraicNumber::one();
        for cz in &uz {
            for (j, c) in cz.iter().enumerate() {
                if acc.len() <= j {
                    acc.resize(j + 1, AlgebraicNumber::zero());
                }
                acc[j] = acc[j].clone() + c.clone() * pow.clone();
            }
            pow = pow * t0.clone();
        }
        let uz0 = UPoly::new(acc);
        let r = m.resultant(&uz0);
        points.push((t0, r));
    }
    UPoly::interpolate(&points).map(|c| c.lift(below))
}

/// Roots of `u` lying in the field of `tower`, with multiplicities.
pub fn roots_in_field(tower: &Arc<Tower>, u: &UPoly<AlgebraicNumber>) -> Vec<(AlgebraicNumber, u32)> {
    factor_over(tower, u)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, m)| (-g.coeff(0), m))
        .collect()
}
