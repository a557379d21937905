//! The sums S_i(β) = Σ_(a ∈ A_(i+)) μ(a)(a ⋆ β)/a and their f-coprime parts S_i^*(β).
//!
//! Write a = θ^i + Σ_(j<i) c_j θ^j. Since C_a is F_q-linear in a,
//! a ⋆ β = β(C_(θ^i) + Σ c_j C_(θ^j)) = Σ_M G_M(x) c^M with G_M ∈ A[x] independent of a, so
//! L_i·S_i(β) = Σ_M G_M · Σ_a μ(a) c(a)^M (L_i/a). The inner moments only depend on the
//! total degree of M, are shared by every β of bounded x-degree, and are accumulated one
//! coordinate at a time over the q^i monic polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::mu::MuTable;
use crate::algebra::{Fe, Field, Poly, RatFunc, XPoly};
use crate::drinfeld::{carlitz_act, carlitz_l};
use crate::error::{Error, Result};

/// Exponent vector on the coordinates c_0..c_(i−1): sorted (coordinate, exponent) pairs.
pub type Mono = Vec<(usize, u32)>;

/// T_M·L_i = Σ_a μ(a) c(a)^M (L_i/a) for every |M| ≤ D.
#[derive(Debug)]
pub struct Moments {
    pub i: usize,
    pub max_deg: u32,
    pub l_i: Poly,
    pub values: HashMap<Mono, Poly>,
}

/// Monomials on coordinates < k of total degree ≤ dmax, with the index map used to fold in
/// coordinate k−1.
struct Layout {
    monos: Vec<Vec<Mono>>,
    /// expand[k][j] = parent indices in monos[k] of (monos[k−1][j], e) for e = 0, 1, …
    expand: Vec<Vec<Vec<usize>>>,
}

impl Layout {
    fn new(i: usize, dmax: u32) -> Layout {
        let mut monos: Vec<Vec<Mono>> = vec![vec![Vec::new()]];
        let mut expand = vec![Vec::new()];
        for k in 1..=i {
            let mut next = Vec::new();
            let mut ex = Vec::new();
            for m in &monos[k - 1] {
                let used: u32 = m.iter().map(|p| p.1).sum();
                let mut slots = Vec::new();
                for e in 0..=dmax - used {
                    let mut mm = m.clone();
                    if e > 0 {
                        mm.push((k - 1, e));
                    }
                    slots.push(next.len());
                    next.push(mm);
                }
                ex.push(slots);
            }
            monos.push(next);
            expand.push(ex);
        }
        Layout { monos, expand }
    }
}

struct Dfs<'a> {
    field: &'a Field,
    q: usize,
    i: usize,
    level: &'a [Poly],
    l_i: &'a Poly,
    len: usize,
    exclude: Option<&'a Poly>,
    layout: &'a Layout,
    /// c^e for c ∈ F_q, e ≤ dmax.
    powers: Vec<Vec<Fe>>,
}

type Acc = Option<Vec<Vec<Fe>>>;

impl Dfs<'_> {
    fn leaf(&self, code: usize) -> Acc {
        let mu = &self.level[code];
        if mu.is_zero() {
            return None;
        }
        let a = Poly::from_monic_code(self.field, self.i, code as u64);
        if let Some(f) = self.exclude {
            if f.divides(&a) {
                return None;
            }
        }
        let quo = self.l_i.div_exact(&a).expect("a divides L_i");
        let v = &quo * mu;
        let mut dense = v.coeffs().to_vec();
        dense.resize(self.len, Fe::ZERO);
        Some(vec![dense])
    }

    /// Moments of the subtree where c_(k−1), …, c_0 are free and the higher digits give `prefix`.
    fn node(&self, k: usize, prefix: usize) -> Acc {
        if k == 0 {
            return self.leaf(prefix);
        }
        let step = self.q.pow(k as u32 - 1);
        let children: Vec<(usize, Acc)> = if k == self.i && k > 1 {
            (0..self.q).into_par_iter().map(|c| (c, self.node(k - 1, prefix + c * step))).collect()
        } else {
            (0..self.q).map(|c| (c, self.node(k - 1, prefix + c * step))).collect()
        };
        self.fold(k, children)
    }

    fn fold(&self, k: usize, children: Vec<(usize, Acc)>) -> Acc {
        let f = self.field;
        let mut out: Acc = None;
        for (c, child) in children {
            let Some(child) = child else { continue };
            let out = out.get_or_insert_with(|| vec![vec![Fe::ZERO; self.len]; self.layout.monos[k].len()]);
            for (j, v) in child.iter().enumerate() {
                for (e, &slot) in self.layout.expand[k][j].iter().enumerate() {
                    let w = self.powers[c][e];
                    if w.is_zero() {
                        continue;
                    }
                    let dst = &mut out[slot];
                    if w == Fe::ONE {
                        for (d, &s) in dst.iter_mut().zip(v) {
                            *d = f.add(*d, s);
                        }
                    } else {
                        for (d, &s) in dst.iter_mut().zip(v) {
                            *d = f.add(*d, f.mul(w, s));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Computes all moments of total degree ≤ dmax over A_(i+) (excluding multiples of `exclude`).
pub fn moments(mu: &MuTable, i: usize, dmax: u32, exclude: Option<&Poly>) -> Result<Moments> {
    mu.require(i)?;
    let field = mu.field();
    let l_i = carlitz_l(field, i);
    let len = l_i.degree().expect("nonzero") + 1;
    let q = field.size() as usize;
    let layout = Layout::new(i, dmax);
    let powers = field.elements().map(|c| (0..=dmax).map(|e| field.pow(c, e as u64)).collect()).collect();
    let dfs = Dfs { field, q, i, level: mu.level(i), l_i: &l_i, len, exclude, layout: &layout, powers };
    let acc = dfs.node(i, 0);
    let mut values = HashMap::new();
    if let Some(acc) = acc {
        for (m, v) in layout.monos[i].iter().zip(acc) {
            let p = Poly::from_coeffs(field, v);
            if !p.is_zero() {
                values.insert(m.clone(), p);
            }
        }
    }
    Ok(Moments { i, max_deg: dmax, l_i, values })
}

/// a ⋆ β = Σ_M G_M c^M for a = θ^i + Σ c_j θ^j, as the map M ↦ G_M.
pub fn star_expansion(beta: &XPoly, i: usize) -> BTreeMap<Mono, XPoly> {
    let field = beta.field();
    let basis: Vec<XPoly> = (0..=i).map(|j| carlitz_act(field, &Poly::theta(field).pow(j as u64))).collect();
    let mut out: BTreeMap<Mono, XPoly> = BTreeMap::new();
    // y^m for m = 0..=deg β, built incrementally
    let mut ypow: BTreeMap<Mono, XPoly> = BTreeMap::from([(Vec::new(), XPoly::one(field))]);
    let deg = beta.degree().unwrap_or(0);
    for m in 0..=deg {
        if m > 0 {
            let mut next: BTreeMap<Mono, XPoly> = BTreeMap::new();
            for (mono, g) in &ypow {
                add_into(&mut next, mono.clone(), g.mul_x(&basis[i]));
                for (j, bj) in basis.iter().enumerate().take(i) {
                    add_into(&mut next, bump(mono, j), g.mul_x(bj));
                }
            }
            ypow = next;
        }
        let c = beta.coeff(m);
        if c.is_zero() {
            continue;
        }
        for (mono, g) in &ypow {
            add_into(&mut out, mono.clone(), g.scale(&c));
        }
    }
    out.retain(|_, g| !g.is_zero());
    out
}

fn bump(m: &Mono, j: usize) -> Mono {
    let mut out = m.clone();
    match out.iter_mut().find(|p| p.0 == j) {
        Some(p) => p.1 += 1,
        None => {
            out.push((j, 1));
            out.sort_unstable();
        }
    }
    out
}

fn add_into(map: &mut BTreeMap<Mono, XPoly>, k: Mono, v: XPoly) {
    match map.get_mut(&k) {
        Some(e) => *e = e.add_x(&v),
        None => {
            map.insert(k, v);
        }
    }
}

/// Assembles L_i·S_i(β) from moments; integral when β ∈ A[x].
pub fn assemble(beta: &XPoly, m: &Moments) -> Result<XPoly> {
    let field = beta.field();
    let deg = beta.degree().unwrap_or(0) as u32;
    if deg > m.max_deg {
        return Err(Error::InvalidArgument(format!("moments of degree {} cannot serve deg_x beta = {deg}", m.max_deg)));
    }
    let mut acc = XPoly::zero(field);
    for (mono, g) in star_expansion(beta, m.i) {
        if let Some(t) = m.values.get(&mono) {
            acc = acc.add_x(&g.scale_poly(t));
        }
    }
    Ok(acc)
}

/// Caches moments per (i, excluded prime) so several β share one pass over A_(i+).
pub struct SumEngine {
    mu: Arc<MuTable>,
    dmax: u32,
    cache: Mutex<HashMap<(usize, Option<Poly>), Arc<Moments>>>,
}

impl SumEngine {
    pub fn new(mu: Arc<MuTable>, dmax: u32) -> SumEngine {
        SumEngine { mu, dmax, cache: Mutex::new(HashMap::new()) }
    }

    pub fn mu(&self) -> &Arc<MuTable> {
        &self.mu
    }

    fn moments(&self, i: usize, exclude: Option<&Poly>, need: u32) -> Result<Arc<Moments>> {
        let key = (i, exclude.cloned());
        if let Some(m) = self.cache.lock().expect("cache lock").get(&key) {
            if m.max_deg >= need {
                return Ok(m.clone());
            }
        }
        let m = Arc::new(moments(&self.mu, i, need.max(self.dmax), exclude)?);
        self.cache.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }

    /// (L_i·S_i(β), L_i); zero for i < 0 is the caller's business.
    pub fn s_scaled(&self, beta: &XPoly, i: usize) -> Result<(XPoly, Poly)> {
        let deg = beta.degree().unwrap_or(0) as u32;
        let m = self.moments(i, None, deg)?;
        Ok((assemble(beta, &m)?, m.l_i.clone()))
    }

    pub fn s(&self, beta: &XPoly, i: usize) -> Result<XPoly> {
        let (num, l) = self.s_scaled(beta, i)?;
        Ok(divide_by(&num, &l))
    }

    /// S_i^*(β): the sum restricted to a with f ∤ a.
    pub fn s_star(&self, beta: &XPoly, i: usize, f: &Poly) -> Result<XPoly> {
        let deg = beta.degree().unwrap_or(0) as u32;
        let m = self.moments(i, Some(f), deg)?;
        Ok(divide_by(&assemble(beta, &m)?, &m.l_i))
    }
}

pub(crate) fn divide_by(num: &XPoly, den: &Poly) -> XPoly {
    let inv = RatFunc::new(Poly::one(den.field()), den.clone()).expect("nonzero");
    num.scale(&inv)
}

/// S_i(β) straight from the definition, in K[x]. Used as an oracle.
pub fn s_naive(mu: &MuTable, beta: &XPoly, i: usize, exclude: Option<&Poly>) -> Result<XPoly> {
    mu.require(i)?;
    let field = mu.field();
    let mut acc = XPoly::zero(field);
    for (code, m) in mu.level(i).iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let a = Poly::from_monic_code(field, i, code as u64);
        if exclude.is_some_and(|f| f.divides(&a)) {
            continue;
        }
        let coef = RatFunc::new(m.clone(), a.clone())?;
        acc = acc.add_x(&crate::drinfeld::star(&a, beta).scale(&coef));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_xpoly;
    use crate::algebra::FiniteField;
    use crate::drinfeld::DrinfeldModule;

    fn family(q: u32) -> (Field, DrinfeldModule) {
        let f = FiniteField::prime(q).unwrap();
        let g = Poly::from_ints(&f, &[1, 0, 2, 1]);
        let phi = DrinfeldModule::new(&f, vec![g, Poly::from_ints(&f, &[1, 1])]).unwrap();
        (f, phi)
    }

    #[test]
    fn engine_matches_definition() {
        let (f, phi) = family(3);
        let mu = Arc::new(MuTable::build(&phi, 3).unwrap());
        let eng = SumEngine::new(mu.clone(), 2);
        for s in ["1", "x", "x^2", "x+T", "T*x^2+2"] {
            let beta = parse_xpoly(&f, s).unwrap();
            for i in 0..=3 {
                assert_eq!(eng.s(&beta, i).unwrap(), s_naive(&mu, &beta, i, None).unwrap(), "beta = {s}, i = {i}");
            }
            let p = Poly::from_ints(&f, &[1, 1]);
            assert_eq!(eng.s_star(&beta, 2, &p).unwrap(), s_naive(&mu, &beta, 2, Some(&p)).unwrap());
        }
    }

    #[test]
    fn s0_and_carlitz_s1() {
        let f = FiniteField::prime(3).unwrap();
        let c = DrinfeldModule::carlitz(&f);
        let eng = SumEngine::new(Arc::new(MuTable::build(&c, 2).unwrap()), 1);
        let x = XPoly::x(&f);
        assert_eq!(eng.s(&x, 0).unwrap(), x);
        // Σ_c 1/(θ+c) = −1/(θ³−θ) over F_3
        let t = Poly::theta(&f);
        let expect = RatFunc::new(Poly::from_ints(&f, &[-1]), &t.pow(3) - &t).unwrap();
        assert_eq!(eng.s(&XPoly::one(&f), 1).unwrap(), XPoly::constant(expect));
    }

    #[test]
    fn expansion_recombines() {
        let f = FiniteField::prime(2).unwrap();
        let beta = parse_xpoly(&f, "x^2+T*x+1").unwrap();
        let ex = star_expansion(&beta, 3);
        for code in 0..8u64 {
            let a = Poly::from_monic_code(&f, 3, code);
            let mut acc = XPoly::zero(&f);
            for (m, g) in &ex {
                let w = m.iter().fold(Fe::ONE, |w, &(j, e)| f.mul(w, f.pow(a.coeff(j), e as u64)));
                acc = acc.add_x(&g.scale_fe(w));
            }
            assert_eq!(acc, crate::drinfeld::star(&a, &beta));
        }
    }
}
