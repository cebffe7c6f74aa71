use field_tower::{Ring, UPoly};
use poly_core::ParamPoly;

use crate::NormalFormError;

/// Determinant by fraction-free elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<ParamPoly>>) -> ParamPoly {
    let n = m.len();
    if n == 0 {
        return ParamPoly::one();
    }
    let mut sign = false;
    let mut prev = ParamPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return ParamPoly::zero() };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = ParamPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `u` (degree p) and `v` (degree q), size p+q.
pub fn sylvester_matrix(u: &UPoly<ParamPoly>, v: &UPoly<ParamPoly>) -> Vec<Vec<ParamPoly>> {
    let p = u.degree().unwrap_or(0);
    let q = v.degree().unwrap_or(0);
    let n = p + q;
    let mut rows = Vec::with_capacity(n);
    let row = |g: &UPoly<ParamPoly>, deg: usize, shift: usize| {
        let mut r = vec![ParamPoly::zero(); n];
        for k in 0..=deg {
            r[shift + k] = g.coeff(deg - k);
        }
        r
    };
    for s in 0..q {
        rows.push(row(u, p, s));
    }
    for s in 0..p {
        rows.push(row(v, q, s));
    }
    rows
}

pub fn resultant(u: &UPoly<ParamPoly>, v: &UPoly<ParamPoly>) -> ParamPoly {
    bareiss_determinant(sylvester_matrix(u, v))
}

/// `res(u, u') / lc(u)`; 1 for linear `u`.
pub fn parametric_discriminant(u: &UPoly<ParamPoly>) -> Result<ParamPoly, NormalFormError> {
    match u.degree() {
        None | Some(0) => Err(NormalFormError::ConstantInT),
        Some(1) => Ok(ParamPoly::one()),
        Some(_) => {
            let r = resultant(u, &u.derivative());
            Ok(r.exact_div(&u.leading()).expect("leading coefficient divides the resultant"))
        }
    }
}
