use poly_core::{Field, Mono, Poly};

/// Standard basis of an ideal of the local ring for the negative degree
/// ordering refined by x > y.
///
/// When the lead ideal contains all monomials of some degree `D`, the ideal
/// itself contains `m^D` and every generator is kept truncated below `D`.
#[derive(Clone, Debug)]
pub struct StandardBasis<C> {
    generators: Vec<Poly<C>>,
    leads: Vec<Mono>,
    truncation: Option<u32>,
}

impl<C: Field> StandardBasis<C> {
    /// The generators, truncated below the truncation degree when there is
    /// one; in that case they span the ideal only together with `m^D`.
    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    /// Standard basis of the ideal enlarged by `extra`.
    pub fn extend(&self, extra: &[Poly<C>]) -> StandardBasis<C> {
        let mut gens = self.generators.clone();
        if let Some(d) = self.truncation {
            gens.extend(Mono::of_degree(d).map(|m| Poly::term(C::one(), m)));
        }
        gens.extend(extra.iter().cloned());
        standard_basis(&gens)
    }

    /// Lead monomials of the generators; they generate the lead ideal.
    pub fn lead_ideal(&self) -> &[Mono] {
        &self.leads
    }

    /// The least `D` with `m^D` inside the ideal, when the ideal has finite
    /// colength.
    pub fn power_of_maximal_ideal(&self) -> Option<u32> {
        self.truncation
    }

    pub fn in_lead_ideal(&self, m: &Mono) -> bool {
        self.leads.iter().any(|l| l.divides(m))
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.truncation.is_some()
    }

    /// Monomials outside the lead ideal in display order, if finitely many.
    pub fn complement(&self) -> Option<Vec<Mono>> {
        let d = self.truncation?;
        let mut out = Vec::new();
        for k in 0..d {
            out.extend(Mono::of_degree(k).filter(|m| !self.in_lead_ideal(m)));
        }
        out.sort();
        Some(out)
    }

    /// Normal form of `f`: no term of the result is divisible by a lead
    /// monomial when the ideal has finite colength; otherwise only the lead
    /// term is guaranteed reduced (weak normal form).
    pub fn normal_form(&self, f: &Poly<C>) -> Poly<C> {
        match self.truncation {
            Some(d) => full_reduce(f, &self.generators, d).0,
            None => mora_reduce(f, &self.generators),
        }
    }

    /// Full reduction with its trace, available in finite colength:
    /// `f = sum q_i g_i + r + h` with every term of `h` of degree at least
    /// the truncation degree, so `h` lies in the ideal.
    pub fn reduce_with_cofactors(&self, f: &Poly<C>) -> Option<Reduction<C>> {
        let d = self.truncation?;
        let (remainder, quotients) = full_reduce(f, &self.generators, d);
        Some(Reduction { remainder, quotients, truncation: d })
    }

    pub fn contains(&self, f: &Poly<C>) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Quotients and remainder of a full reduction modulo `m^truncation`.
#[derive(Clone, Debug)]
pub struct Reduction<C> {
    pub remainder: Poly<C>,
    pub quotients: Vec<Poly<C>>,
    pub truncation: u32,
}

fn ecart<C: Field>(p: &Poly<C>) -> u32 {
    p.degree().unwrap_or(0) - p.ord().unwrap_or(0)
}

fn cancel_lead<C: Field>(h: &Poly<C>, g: &Poly<C>) -> (C, Mono) {
    let (lm, lc) = h.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let c = lc.div(&gc).expect("nonzero lead");
    (c, gm.quotient(&lm).expect("divisible"))
}

/// Mora's weak normal form with the ecart selection strategy: returns `h`
/// with `u*f - h` in the ideal for some unit `u`, and the lead of `h` not
/// divisible by any lead of `basis`.
pub fn mora_reduce<C: Field>(f: &Poly<C>, basis: &[Poly<C>]) -> Poly<C> {
    let mut h = f.clone();
    let mut extra: Vec<Poly<C>> = Vec::new();
    loop {
        let Some((lm, _)) = h.lead() else { return h };
        let mut best: Option<(u32, &Poly<C>)> = None;
        for g in basis.iter().chain(extra.iter()) {
            let gm = g.lead().expect("nonzero").0;
            if gm.divides(&lm) {
                let e = ecart(g);
                if best.is_none_or(|(b, _)| e < b) {
                    best = Some((e, g));
                }
            }
        }
        let Some((e, g)) = best else { return h };
        let g = g.clone();
        if e > ecart(&h) {
            extra.push(h.clone());
        }
        let (c, m) = cancel_lead(&h, &g);
        h = h.sub(&g.mul_term(&c, &m));
    }
}

/// Reduction of every term modulo `basis` and `m^d`.
fn full_reduce<C: Field>(f: &Poly<C>, basis: &[Poly<C>], d: u32) -> (Poly<C>, Vec<Poly<C>>) {
    let mut h = f.jet(d as i64 - 1);
    let mut rem = Poly::zero();
    let mut quotients = vec![Poly::zero(); basis.len()];
    while let Some((lm, lc)) = h.lead() {
        match basis.iter().position(|g| g.lead().expect("nonzero").0.divides(&lm)) {
            Some(i) => {
                let (c, m) = cancel_lead(&h, &basis[i]);
                h = h.sub(&basis[i].mul_term(&c, &m)).jet(d as i64 - 1);
                quotients[i].add_term(m, c);
            }
            None => {
                rem.add_term(lm, lc.clone());
                h.add_term(lm, -lc);
            }
        }
    }
    (rem, quotients)
}

/// Least `D` such that every monomial of degree `D` lies in the ideal
/// generated by `leads`, if the lead ideal has finite colength.
fn covered_degree(leads: &[Mono]) -> Option<u32> {
    let a = leads.iter().filter(|m| m.y == 0).map(|m| m.x).min()?;
    let b = leads.iter().filter(|m| m.x == 0).map(|m| m.y).min()?;
    (0..=a + b).find(|&k| Mono::of_degree(k).all(|m| leads.iter().any(|l| l.divides(&m))))
}

fn spoly<C: Field>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    let (fm, fc) = f.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let l = fm.lcm(&gm);
    let a = f.mul_term(&gc, &fm.quotient(&l).unwrap());
    let b = g.mul_term(&fc, &gm.quotient(&l).unwrap());
    a.sub(&b)
}

/// Local standard basis of the ideal generated by `gens`.
///
/// Pairs are treated by increasing degree of the lcm of their leads. As
/// soon as the current leads cover a full degree `D`, the ideal contains
/// `m^D` and the rest of the computation runs modulo `m^D`.
pub fn standard_basis<C: Field>(gens: &[Poly<C>]) -> StandardBasis<C> {
    let mut basis: Vec<Poly<C>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut trunc: Option<u32> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let retruncate = |basis: &mut Vec<Poly<C>>, trunc: &mut Option<u32>| {
        let leads: Vec<Mono> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.lead().unwrap().0).collect();
        if let Some(d) = covered_degree(&leads) {
            if trunc.is_none_or(|t| d < t) {
                *trunc = Some(d);
                for g in basis.iter_mut() {
                    *g = g.jet(d as i64 - 1);
                }
            }
        }
    };
    retruncate(&mut basis, &mut trunc);
    loop {
        if pairs.is_empty() {
            break;
        }
        let pos = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                match (basis[i].lead(), basis[j].lead()) {
                    (Some((a, _)), Some((b, _))) => a.lcm(&b).degree(),
                    _ => 0,
                }
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        if basis[i].is_zero() || basis[j].is_zero() {
            continue;
        }
        let (li, lj) = (basis[i].lead().unwrap().0, basis[j].lead().unwrap().0);
        if let Some(d) = trunc {
            if li.lcm(&lj).degree() >= d {
                continue;
            }
        }
        let s = spoly(&basis[i], &basis[j]);
        let live: Vec<Poly<C>> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
        let h = match trunc {
            Some(d) => full_reduce(&s, &live, d).0,
            None => mora_reduce(&s, &live),
        };
        if h.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(h.monic());
        for i in 0..k {
            if !basis[i].is_zero() {
                pairs.push((i, k));
            }
        }
        retruncate(&mut basis, &mut trunc);
    }
    let mut live: Vec<Poly<C>> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    // drop generators whose lead is a multiple of an earlier or smaller lead
    live.sort_by_key(|g| g.lead().unwrap().0);
    let mut kept: Vec<Poly<C>> = Vec::new();
    for g in live {
        let m = g.lead().unwrap().0;
        if !kept.iter().any(|k| k.lead().unwrap().0.divides(&m)) {
            kept.push(g);
        }
    }
    let leads = kept.iter().map(|g| g.lead().unwrap().0).collect();
    if let Some(d) = trunc {
        kept = kept.into_iter().map(|g| g.jet(d as i64 - 1)).collect();
    }
    StandardBasis { generators: kept, leads, truncation: trunc }
}
