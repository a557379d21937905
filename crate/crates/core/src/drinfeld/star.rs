//! The Carlitz action on K[x], the ⋆-operation, and the size bound J(β).

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Field, Poly, XPoly};
use crate::twisted::{PolyRing, TwistedPoly};

/// C_a as an element of A[τ].
pub fn carlitz_twisted(field: &Field, a: &Poly) -> TwistedPoly<PolyRing> {
    let ring = PolyRing::new(field);
    let c_theta = TwistedPoly::new(&ring, vec![Poly::theta(field), Poly::one(field)]);
    c_theta.eval_poly_at(a, usize::MAX)
}

/// C_a(x) = Σ_k [a]_k x^(q^k).
pub fn carlitz_act(field: &Field, a: &Poly) -> XPoly {
    XPoly::from_poly_terms(field, carlitz_twisted(field, a).additive_terms())
}

/// (a ⋆ β)(x) = β(C_a(x)).
pub fn star(a: &Poly, beta: &XPoly) -> XPoly {
    beta.compose(&carlitz_act(a.field(), a))
}

/// A nonnegative rational number in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Ratio {
        assert!(den > 0);
        let g = crate::algebra::field::gcd_u64(num.unsigned_abs(), den as u64).max(1) as i64;
        Ratio { num: num / g, den: den / g }
    }

    pub fn floor(self) -> i64 {
        self.num.div_euclid(self.den)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Ratio {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// J(β) = max over nonzero coefficients c_i x^i of deg c_i + i/(q−1); an upper bound for j_0(β).
/// Zero maps to 0. Coefficients must lie in A.
pub fn j0_upper(beta: &XPoly) -> Ratio {
    let q = beta.field().size() as i64;
    let best = beta
        .terms()
        .iter()
        .map(|(&i, c)| {
            debug_assert!(c.is_integral(), "J(β) needs A-coefficients");
            c.num().degree().unwrap_or(0) as i64 * (q - 1) + i as i64
        })
        .max()
        .unwrap_or(0);
    Ratio::new(best.max(0), q - 1)
}
