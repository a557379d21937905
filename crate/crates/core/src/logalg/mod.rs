//! Log-algebraicity: the polynomial ℰ_φ(β, z) = exp_φ(ℒ_φ(β, z)) = Σ E_i(β) z^(q^i) ∈ A[x, z].

pub mod mu;
pub mod sums;

use std::fmt;
use std::sync::Arc;

pub use mu::MuTable;
pub use sums::{s_naive, SumEngine};

use crate::algebra::{Poly, XPoly};
use crate::drinfeld::{carlitz_l_table, j0_upper, DrinfeldModule, Ratio};
use crate::error::{Error, Result};

/// Indices past the stopping bound that are computed and required to vanish.
pub const MARGIN: usize = 2;

/// A Drinfeld module together with its μ table and the S_i engine.
pub struct LogAlgebra {
    phi: DrinfeldModule,
    engine: SumEngine,
}

impl LogAlgebra {
    /// Sieves μ to `depth`; moments are kept for x-degrees up to `dmax`.
    pub fn new(phi: &DrinfeldModule, depth: usize, dmax: u32) -> Result<LogAlgebra> {
        let mu = Arc::new(MuTable::build(phi, depth)?);
        Ok(LogAlgebra::with_table(phi, mu, dmax))
    }

    pub fn with_table(phi: &DrinfeldModule, mu: Arc<MuTable>, dmax: u32) -> LogAlgebra {
        LogAlgebra { phi: phi.clone(), engine: SumEngine::new(mu, dmax) }
    }

    pub fn phi(&self) -> &DrinfeldModule {
        &self.phi
    }

    pub fn mu(&self) -> &Arc<MuTable> {
        self.engine.mu()
    }

    pub fn engine(&self) -> &SumEngine {
        &self.engine
    }

    /// S_i(β), zero for negative i.
    pub fn s(&self, beta: &XPoly, i: i64) -> Result<XPoly> {
        if i < 0 {
            return Ok(XPoly::zero(beta.field()));
        }
        self.engine.s(beta, i as usize)
    }

    pub fn s_star(&self, beta: &XPoly, i: i64, f: &Poly) -> Result<XPoly> {
        if i < 0 {
            return Ok(XPoly::zero(beta.field()));
        }
        self.engine.s_star(beta, i as usize, f)
    }

    /// E_i^*(β) = Σ_j α_j f^(q^j) S_(i−j)^*(β)^(q^j).
    pub fn e_star(&self, beta: &XPoly, i: usize, f: &Poly) -> Result<XPoly> {
        let field = beta.field();
        let n = field.degree();
        let alpha = self.phi.exp_coeffs(i)?;
        let mut acc = XPoly::zero(field);
        for (j, a) in alpha.iter().enumerate() {
            let s = self.s_star(beta, (i - j) as i64, f)?.scale_poly(f).pow_char_power(n * j as u32);
            acc = acc.add_x(&s.scale(a));
        }
        Ok(acc)
    }
}

/// How the coefficients E_0..E_n are obtained from the sums S_i.
pub trait EStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn coefficients(&self, alg: &LogAlgebra, beta: &XPoly, n: usize) -> Result<Vec<XPoly>>;
}

/// L_i E_i = L_i S_i − Σ_(j≥1) (β_j L_j)(L_i/L_j) E_(i−j)^(q^j), all inside A[x]; dividing by
/// L_i must be exact, which is the integrality statement itself.
pub struct LogRecursion;

impl EStrategy for LogRecursion {
    fn name(&self) -> &'static str {
        "log-recursion"
    }

    fn describe(&self) -> &'static str {
        "invert S_i = sum_j beta_j E_(i-j)^(q^j) with integral numerators and exact division"
    }

    fn coefficients(&self, alg: &LogAlgebra, beta: &XPoly, n: usize) -> Result<Vec<XPoly>> {
        if !beta.is_integral() {
            return Err(Error::InvalidArgument("log-recursion needs beta in A[x]".into()));
        }
        let field = beta.field();
        let deg = field.degree();
        let b = alg.phi().log_numerators(n);
        let l = carlitz_l_table(field, n);
        let mut es: Vec<XPoly> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let (mut num, l_i) = alg.engine().s_scaled(beta, i)?;
            for j in 1..=i {
                if b[j].is_zero() {
                    continue;
                }
                let w = &b[j] * &l_i.div_exact(&l[j]).expect("L_j | L_i");
                let term = es[i - j].pow_char_power(deg * j as u32).scale_poly(&w);
                num = num.sub_x(&term);
            }
            let mut e = XPoly::zero(field);
            for (k, c) in num.terms() {
                let c = c.num();
                let quo = c.div_exact(&l_i).ok_or_else(|| {
                    Error::TheoremViolation(format!("E_{i} has a non-integral coefficient at x^{k}"))
                })?;
                e.add_term(*k, &quo.into());
            }
            es.push(e);
        }
        Ok(es)
    }
}

/// E_i = Σ_j α_j S_(i−j)^(q^j) in K[x], the defining sum.
pub struct ExpSum;

impl EStrategy for ExpSum {
    fn name(&self) -> &'static str {
        "exp-sum"
    }

    fn describe(&self) -> &'static str {
        "E_i = sum_j alpha_j S_(i-j)^(q^j) over K"
    }

    fn coefficients(&self, alg: &LogAlgebra, beta: &XPoly, n: usize) -> Result<Vec<XPoly>> {
        let field = beta.field();
        let deg = field.degree();
        let alpha = alg.phi().exp_coeffs(n)?;
        let s: Vec<XPoly> = (0..=n).map(|i| alg.s(beta, i as i64)).collect::<Result<_>>()?;
        Ok((0..=n)
            .map(|i| {
                (0..=i).fold(XPoly::zero(field), |acc, j| {
                    acc.add_x(&s[i - j].pow_char_power(deg * j as u32).scale(&alpha[j]))
                })
            })
            .collect())
    }
}

/// All registered strategies; the first is the default.
pub fn e_strategies() -> Vec<Box<dyn EStrategy>> {
    vec![Box::new(LogRecursion), Box::new(ExpSum)]
}

pub fn e_strategy(name: &str) -> Result<Box<dyn EStrategy>> {
    e_strategies().into_iter().find(|s| s.name() == name).ok_or_else(|| {
        let known: Vec<_> = e_strategies().iter().map(|s| s.name()).collect();
        Error::InvalidArgument(format!("unknown strategy '{name}' (known: {})", known.join(", ")))
    })
}

/// i_max = ⌊r·(J(β) + d_0/(q−1))⌋.
pub fn stopping_index(phi: &DrinfeldModule, beta: &XPoly) -> usize {
    let j = j0_upper(beta);
    let (q, r, d0) = (phi.q() as i64, phi.rank() as i64, phi.d0() as i64);
    let bound = Ratio::new(r * (j.num * (q - 1) + d0 * j.den), j.den * (q - 1));
    bound.floor() as usize
}

#[derive(Clone, Debug)]
pub struct LogAlgResult {
    pub beta: XPoly,
    pub q: u64,
    pub i_max: usize,
    /// E_0..E_(i_max + MARGIN), all in A[x].
    pub e: Vec<XPoly>,
    pub strategy: &'static str,
}

impl LogAlgResult {
    /// Nonzero terms (z-exponent q^i, E_i).
    pub fn terms(&self) -> Vec<(u64, &XPoly)> {
        let mut qi = 1u64;
        let mut out = Vec::new();
        for e in &self.e {
            if !e.is_zero() {
                out.push((qi, e));
            }
            qi = qi.saturating_mul(self.q);
        }
        out
    }

    /// q^(i_max), the certified bound on deg_z.
    pub fn z_degree_bound(&self) -> u64 {
        self.q.saturating_pow(self.i_max as u32)
    }

    /// The actual z-degree (0 when ℰ vanishes).
    pub fn z_degree(&self) -> u64 {
        self.terms().last().map_or(0, |t| t.0)
    }
}

impl fmt::Display for LogAlgResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(qi, e)| {
                let z = if *qi == 1 { "z".to_string() } else { format!("z^{qi}") };
                let single = e.terms().len() == 1 && e.terms().values().all(|c| c.num().coeffs().iter().filter(|c| !c.is_zero()).count() == 1);
                match (e.to_string().as_str(), single) {
                    ("1", _) => z,
                    (s, true) => format!("{s}*{z}"),
                    (s, false) => format!("({s})*{z}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Computes ℰ_φ(β, z) with the given strategy, asserting integrality and the vanishing margin.
pub fn log_algebraic_poly_with(alg: &LogAlgebra, beta: &XPoly, strategy: &dyn EStrategy) -> Result<LogAlgResult> {
    if !beta.is_integral() {
        return Err(Error::InvalidArgument("beta must have coefficients in A".into()));
    }
    let phi = alg.phi();
    let i_max = stopping_index(phi, beta);
    let n = i_max + MARGIN;
    alg.mu().require(n)?;
    let e = strategy.coefficients(alg, beta, n)?;
    for (i, ei) in e.iter().enumerate() {
        if !ei.is_integral() {
            return Err(Error::TheoremViolation(format!("E_{i} is not in A[x]: {ei}")));
        }
        if i > i_max && !ei.is_zero() {
            return Err(Error::TheoremViolation(format!("E_{i} = {ei} past the stopping index {i_max}")));
        }
    }
    Ok(LogAlgResult { beta: beta.clone(), q: phi.q(), i_max, e, strategy: strategy.name() })
}

/// ℰ_φ(β, z) with a freshly sieved μ table and the default strategy.
pub fn log_algebraic_poly(phi: &DrinfeldModule, beta: &XPoly) -> Result<LogAlgResult> {
    let depth = stopping_index(phi, beta) + MARGIN;
    let dmax = beta.degree().unwrap_or(0) as u32;
    let alg = LogAlgebra::new(phi, depth, dmax)?;
    log_algebraic_poly_with(&alg, beta, &LogRecursion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_xpoly;
    use crate::algebra::{Field, FiniteField};

    fn golden() -> (Field, DrinfeldModule) {
        let f = FiniteField::prime(5).unwrap();
        let g = Poly::from_ints(&f, &[0, 0, 0, 0, 2, 1]);
        (f.clone(), DrinfeldModule::new(&f, vec![g, Poly::theta(&f)]).unwrap())
    }

    #[test]
    fn carlitz_one_is_z() {
        let f = FiniteField::prime(3).unwrap();
        let c = DrinfeldModule::carlitz(&f);
        let res = log_algebraic_poly(&c, &XPoly::one(&f)).unwrap();
        assert_eq!(res.to_string(), "z");
        assert_eq!(res.i_max, 0);
    }

    #[test]
    fn golden_family() {
        let (f, phi) = golden();
        let alg = LogAlgebra::new(&phi, 5, 2).unwrap();
        let one = log_algebraic_poly_with(&alg, &XPoly::one(&f), &LogRecursion).unwrap();
        // b_5 = 1 (coefficient of θ^5 in g)
        assert_eq!(one.to_string(), "z + z^5");
        let x = log_algebraic_poly_with(&alg, &XPoly::x(&f), &LogRecursion).unwrap();
        // b_4 = 2: xz + (x^5 − 2x)z^5
        assert_eq!(x.e[1], parse_xpoly(&f, "x^5+3*x").unwrap());
        assert_eq!(x.e[0], XPoly::x(&f));
    }

    #[test]
    fn strategies_agree() {
        let f = FiniteField::prime(3).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[1, 2]), Poly::from_ints(&f, &[2, 0, 1])]).unwrap();
        let alg = LogAlgebra::new(&phi, 6, 2).unwrap();
        for s in ["1", "x", "x^2", "x+T"] {
            let beta = parse_xpoly(&f, s).unwrap();
            let a = log_algebraic_poly_with(&alg, &beta, &LogRecursion).unwrap();
            let b = log_algebraic_poly_with(&alg, &beta, e_strategy("exp-sum").unwrap().as_ref()).unwrap();
            assert_eq!(a.e, b.e, "beta = {s}");
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(e_strategies()[0].name(), "log-recursion");
        assert!(e_strategy("nope").is_err());
    }

    #[test]
    fn stopping_index_examples() {
        let (f, phi) = golden();
        // r(J + d_0/(q−1)) = 2(0 + 5/4)
        assert_eq!(stopping_index(&phi, &XPoly::one(&f)), 2);
        assert_eq!(stopping_index(&phi, &XPoly::x(&f)), 3);
    }
}
