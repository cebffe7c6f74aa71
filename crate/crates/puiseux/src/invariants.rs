use std::sync::Arc;

use field_tower::{rat, AlgebraicNumber, Field, Ring, Tower, UPoly};
use local_algebra::milnor_number;
use poly_core::Mono;
use wh_factor::KPoly;

use crate::expansion::Branch;
use crate::series::{self, mul_trunc, Series};
use crate::{base_tower, branches, PuiseuxError};

/// Least `k >= 0` such that after `x -> x + k*y` the tangent cone of `g`
/// does not contain the line `x = 0`; both germs are transformed.
pub(crate) fn make_y_general(f: &KPoly, g: &KPoly) -> (KPoly, KPoly) {
    let k = shear_for(g);
    (shear(f, k), shear(g, k))
}

fn shear_for(g: &KPoly) -> i64 {
    let ord = g.ord().unwrap_or(0);
    let cone = g.filter(|m| m.degree() == ord);
    (0i64..)
        .find(|&k| {
            let at = AlgebraicNumber::from_int(k);
            !cone.terms().fold(AlgebraicNumber::zero(), |acc, (m, c)| acc + c.clone() * at.pow(m.x)).is_zero()
        })
        .unwrap()
}

fn shear(f: &KPoly, k: i64) -> KPoly {
    if k == 0 {
        return f.clone();
    }
    let px = KPoly::x().add(&KPoly::y().scale(&AlgebraicNumber::from_int(k)));
    f.substitute(&px, &KPoly::y()).expect("shear is an automorphism")
}

/// Trace from the top of `tower` down to depth `base`.
fn trace_down(a: &AlgebraicNumber, tower: &Arc<Tower>, base: usize) -> AlgebraicNumber {
    let mut cur = a.clone();
    let mut t = tower.clone();
    while t.depth() > base {
        let m = t.top_minpoly();
        let e = m.degree().unwrap();
        // power sums of the roots of m by Newton's identities
        let mut s = vec![AlgebraicNumber::from_int(e as i64)];
        for k in 1..e {
            let mut v = -(AlgebraicNumber::from_int(k as i64) * m.coeff(e - k));
            for i in 1..k {
                v = v - m.coeff(e - i) * s[k - i].clone();
            }
            s.push(v);
        }
        let coeffs = cur.top_coefficients(&t);
        cur = coeffs.iter().zip(&s).fold(AlgebraicNumber::zero(), |acc, (c, p)| acc + c.clone() * p.clone());
        t = t.prefix(t.depth() - 1);
    }
    cur
}

/// Product of `y - y_sigma` over the conjugates of the branch over the
/// field of `base`, truncated above x-degree `xdeg`. With `base` equal to
/// the branch tower this is the Weierstrass polynomial of the branch
/// itself.
pub fn orbit_polynomial(b: &Branch, base: &Arc<Tower>, xdeg: usize) -> KPoly {
    let n = b.ramification as usize;
    let deg = n * b.conjugates(base);
    let k = n * xdeg;
    let y = b.y_series(k);
    let lambda_inv = b.scale.inv().expect("nonzero scale");
    let lambda_pows: Vec<AlgebraicNumber> = (0..=xdeg).map(|e| lambda_inv.pow(e as u32)).collect();
    // p_j = trace of y^j, as a series in x
    let mut sums: Vec<Vec<AlgebraicNumber>> = Vec::with_capacity(deg + 1);
    sums.push(Vec::new());
    let mut pow = UPoly::constant(AlgebraicNumber::one());
    for _ in 1..=deg {
        pow = mul_trunc(&pow, &y, k);
        let mut p = vec![AlgebraicNumber::zero(); xdeg + 1];
        for (e, slot) in p.iter_mut().enumerate() {
            let c = pow.coeff(e * n);
            if !c.is_zero() {
                let t = trace_down(&(c * lambda_pows[e].clone()), &b.tower, base.depth());
                *slot = t * AlgebraicNumber::from_int(n as i64);
            }
        }
        sums.push(p);
    }
    // elementary symmetric functions: j e_j = sum (-1)^(i-1) e_(j-i) p_i
    let mut el: Vec<Vec<AlgebraicNumber>> = vec![{
        let mut one = vec![AlgebraicNumber::zero(); xdeg + 1];
        one[0] = AlgebraicNumber::one();
        one
    }];
    for j in 1..=deg {
        let mut acc = vec![AlgebraicNumber::zero(); xdeg + 1];
        for i in 1..=j {
            let prod = mul_trunc(&UPoly::new(el[j - i].clone()), &UPoly::new(sums[i].clone()), xdeg);
            for (a, c) in acc.iter_mut().zip(prod.coeffs()) {
                *a = if i % 2 == 1 { a.clone() + c.clone() } else { a.clone() - c.clone() };
            }
        }
        let inv = AlgebraicNumber::from_int(j as i64).inv().unwrap();
        el.push(acc.into_iter().map(|a| a * inv.clone()).collect());
    }
    let mut out = KPoly::zero();
    for (j, e) in el.iter().enumerate() {
        for (i, c) in e.iter().enumerate() {
            if !c.is_zero() {
                let c = if j % 2 == 1 { -c.clone() } else { c.clone() };
                out.add_term(Mono::new(i as u32, (deg - j) as u32), c);
            }
        }
    }
    out
}

/// Quotient of `g` by the polynomial `p` monic in y, with coefficients
/// truncated above x-degree `xdeg`.
fn divide_monic(g: &KPoly, p: &KPoly, xdeg: usize) -> KPoly {
    let rows = |h: &KPoly| -> Vec<Series> {
        let dy = h.terms().map(|(m, _)| m.y).max().unwrap_or(0) as usize;
        let mut r = vec![vec![AlgebraicNumber::zero(); xdeg + 1]; dy + 1];
        for (m, c) in h.terms() {
            if (m.x as usize) <= xdeg {
                r[m.y as usize][m.x as usize] = c.clone();
            }
        }
        r.into_iter().map(UPoly::new).collect()
    };
    let mut rem = rows(g);
    let pr = rows(p);
    let dp = pr.len() - 1;
    let mut quot = vec![UPoly::zero(); rem.len().saturating_sub(dp)];
    for d in (dp..rem.len()).rev() {
        let c = rem[d].clone();
        if c.is_zero() {
            continue;
        }
        for (i, pc) in pr.iter().enumerate() {
            let t = mul_trunc(&c, pc, xdeg);
            rem[d - dp + i] = rem[d - dp + i].sub(&t);
        }
        quot[d - dp] = c;
    }
    let mut out = KPoly::zero();
    for (j, s) in quot.iter().enumerate() {
        for (i, c) in s.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.add_term(Mono::new(i as u32, j as u32), c.clone());
            }
        }
    }
    out
}

/// Topological type of one class of conjugate branches.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchClass {
    pub characteristic_exponents: Vec<u32>,
    /// Number of conjugate branches over the field of the germ.
    pub conjugates: usize,
}

/// Branch classes with their intersection numbers.
///
/// `intersections[a][b]` for `a != b` sums `i(B, B')` over all branches B
/// of class a and B' of class b; the diagonal sums over ordered pairs of
/// distinct conjugates inside one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalData {
    pub branches: Vec<BranchClass>,
    pub intersections: Vec<Vec<u64>>,
}

impl TopologicalData {
    /// Representation independent of the order of the classes.
    pub fn canonical(&self) -> Vec<(BranchClass, u64, Vec<u64>)> {
        let mut out: Vec<(BranchClass, u64, Vec<u64>)> = self
            .branches
            .iter()
            .enumerate()
            .map(|(a, c)| {
                let mut row: Vec<u64> =
                    (0..self.branches.len()).filter(|&b| b != a).map(|b| self.intersections[a][b]).collect();
                row.sort();
                (c.clone(), self.intersections[a][a], row)
            })
            .collect();
        out.sort();
        out
    }
}

/// Characteristic exponents and intersection numbers of all branches of
/// an isolated singularity, developed to `mu + 2` and further when needed.
pub fn topological_data(f: &KPoly) -> Result<TopologicalData, PuiseuxError> {
    let mu = milnor_number(f)?.mu.finite().ok_or(PuiseuxError::NotIsolated)?;
    let base = base_tower(f);
    let k = shear_for(f);
    // the germ is (mu+1)-determined
    let g = shear(f, k).jet(mu as i64 + 1);
    let mut l = rat(mu as i64 + 2, 1);
    for _ in 0..4 {
        match data_at(&g, &base, &l) {
            Err(PuiseuxError::InsufficientDevelopment) => l = l * rat(2, 1),
            other => return other,
        }
    }
    Err(PuiseuxError::InsufficientDevelopment)
}

fn data_at(g: &KPoly, base: &Arc<Tower>, l: &field_tower::Rational) -> Result<TopologicalData, PuiseuxError> {
    let bs = branches(g, l)?;
    let mut classes = Vec::new();
    for b in &bs {
        let ce = b.characteristic_exponents()?;
        classes.push(BranchClass { characteristic_exponents: ce.exponents, conjugates: b.conjugates(base) });
    }
    let xdeg = l.floor().to_integer().try_into().unwrap_or(0usize);
    let orbit: Vec<KPoly> = bs.iter().map(|b| orbit_polynomial(b, base, xdeg)).collect();
    let n = bs.len();
    let mut inter = vec![vec![0u64; n]; n];
    for (a, ba) in bs.iter().enumerate() {
        let k = ba.reliable_degree();
        let ya = ba.y_series(k);
        for b in 0..n {
            let h = if a == b {
                if classes[a].conjugates == 1 {
                    continue;
                }
                let own = orbit_polynomial(ba, &ba.tower, xdeg);
                divide_monic(&orbit[a], &own, xdeg)
            } else {
                orbit[b].clone()
            };
            let v = series::evaluate(&h, &ba.scale, ba.ramification, &ya, k);
            let o = series::order(&v).ok_or(PuiseuxError::InsufficientDevelopment)?;
            inter[a][b] = o as u64 * classes[a].conjugates as u64;
        }
    }
    Ok(TopologicalData { branches: classes, intersections: inter })
}
