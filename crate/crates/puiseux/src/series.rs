//! Truncated power series in one variable over a tower.

use field_tower::{AlgebraicNumber, Ring, UPoly};
use wh_factor::KPoly;

pub type Series = UPoly<AlgebraicNumber>;

/// Product modulo `t^(k+1)`.
pub fn mul_trunc(a: &Series, b: &Series, k: usize) -> Series {
    let (ac, bc) = (a.coeffs(), b.coeffs());
    let mut out = vec![AlgebraicNumber::zero(); (ac.len() + bc.len()).saturating_sub(1).min(k + 1)];
    for (i, x) in ac.iter().enumerate().take(k + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bc.iter().enumerate().take(k + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    UPoly::new(out)
}

/// Powers `s^0, ..., s^e` modulo `t^(k+1)`.
pub fn powers(s: &Series, e: usize, k: usize) -> Vec<Series> {
    let mut out = vec![UPoly::constant(AlgebraicNumber::one())];
    for i in 1..=e {
        let next = mul_trunc(&out[i - 1], s, k);
        out.push(next);
    }
    out
}

pub fn order(s: &Series) -> Option<usize> {
    s.coeffs().iter().position(|c| !c.is_zero())
}

/// `f(scale * t^n, y(t))` modulo `t^(k+1)`.
pub fn evaluate(f: &KPoly, scale: &AlgebraicNumber, n: u32, y: &Series, k: usize) -> Series {
    let ymax = f.terms().map(|(m, _)| m.y).max().unwrap_or(0) as usize;
    let ypow = powers(y, ymax, k);
    let mut acc = vec![AlgebraicNumber::zero(); k + 1];
    for (m, c) in f.terms() {
        let shift = (m.x * n) as usize;
        if shift > k {
            continue;
        }
        let coeff = c.clone() * scale.pow(m.x);
        for (j, v) in ypow[m.y as usize].coeffs().iter().enumerate() {
            if j + shift > k {
                break;
            }
            if !v.is_zero() {
                acc[j + shift] = acc[j + shift].clone() + coeff.clone() * v.clone();
            }
        }
    }
    UPoly::new(acc)
}
