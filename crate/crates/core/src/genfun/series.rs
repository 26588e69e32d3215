use crate::arith::{rat, BiPoly};
use crate::umemura::{compute_entries, RValue};

/// `F = sum_n a_n lambda^{-n}` truncated after `lambda^{-N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    pub r: RValue,
    /// `coeffs[n]` multiplies `lambda^{-n}`.
    pub coeffs: Vec<BiPoly>,
}

impl LambdaSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent::truncated(0, self.coeffs.clone(), -(self.order() as i64))
    }
}

pub fn truncated_f(order: usize, r: &RValue) -> LambdaSeries {
    LambdaSeries { r: r.clone(), coeffs: compute_entries(order, r).entries }
}

/// Laurent series in `lambda` with `BiPoly` coefficients. Coefficients are
/// known for every exponent `>= valid_to` (all exponents when `valid_to` is
/// `None`); unknown tails are dropped by every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    top: i64,
    /// `coeffs[k]` multiplies `lambda^{top - k}`.
    coeffs: Vec<BiPoly>,
    valid_to: Option<i64>,
}

impl Laurent {
    pub fn exact(top: i64, coeffs: Vec<BiPoly>) -> Self {
        Self { top, coeffs, valid_to: None }
    }

    pub fn truncated(top: i64, coeffs: Vec<BiPoly>, valid_to: i64) -> Self {
        let mut s = Self { top, coeffs, valid_to: Some(valid_to) };
        s.coeffs.truncate((top - valid_to + 1).max(0) as usize);
        s
    }

    pub fn monomial(c: BiPoly, exponent: i64) -> Self {
        Self::exact(exponent, vec![c])
    }

    pub fn valid_to(&self) -> Option<i64> {
        self.valid_to
    }

    pub fn coeff(&self, e: i64) -> BiPoly {
        if e > self.top {
            return BiPoly::zero();
        }
        self.coeffs.get((self.top - e) as usize).cloned().unwrap_or_else(BiPoly::zero)
    }

    fn lowest_stored(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Known `(exponent, coefficient)` pairs from the top down.
    pub fn known_terms(&self) -> Vec<(i64, BiPoly)> {
        let low = self.valid_to.unwrap_or(self.lowest_stored());
        (low..=self.top).rev().map(|e| (e, self.coeff(e))).collect()
    }

    fn build(top: i64, low: i64, valid_to: Option<i64>, f: impl Fn(i64) -> BiPoly) -> Laurent {
        let coeffs = if low > top { Vec::new() } else { (low..=top).rev().map(f).collect() };
        Laurent { top, coeffs, valid_to }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let valid_to = max_opt(self.valid_to, other.valid_to);
        let top = self.top.max(other.top);
        let mut low = self.lowest_stored().min(other.lowest_stored());
        if let Some(v) = valid_to {
            low = low.max(v);
        }
        Laurent::build(top, low, valid_to, |e| &self.coeff(e) + &other.coeff(e))
    }

    pub fn neg(&self) -> Laurent {
        Laurent { top: self.top, coeffs: self.coeffs.iter().map(|c| -c).collect(), valid_to: self.valid_to }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let valid_to = max_opt(self.valid_to.map(|v| v + other.top), other.valid_to.map(|v| v + self.top));
        let top = self.top + other.top;
        let mut low = self.lowest_stored() + other.lowest_stored();
        if let Some(v) = valid_to {
            low = low.max(v);
        }
        Laurent::build(top, low, valid_to, |e| {
            let mut acc = BiPoly::zero();
            for (k, a) in self.coeffs.iter().enumerate() {
                let ea = self.top - k as i64;
                let eb = e - ea;
                if eb <= other.top && eb >= other.lowest_stored() {
                    acc += &(a * &other.coeff(eb));
                }
            }
            acc
        })
    }

    /// Coefficientwise multiplication by a polynomial in `(r, t)`.
    pub fn scale(&self, p: &BiPoly) -> Laurent {
        Laurent { top: self.top, coeffs: self.coeffs.iter().map(|c| p * c).collect(), valid_to: self.valid_to }
    }

    /// Multiplication by `lambda^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent { top: self.top + k, coeffs: self.coeffs.clone(), valid_to: self.valid_to.map(|v| v + k) }
    }

    pub fn differentiate_t(&self) -> Laurent {
        Laurent {
            top: self.top,
            coeffs: self.coeffs.iter().map(BiPoly::differentiate_t).collect(),
            valid_to: self.valid_to,
        }
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Residual `lambda^2 F - (3/4) t lambda F - t lambda F_t - t(t/8 - r) F^2 - lambda^2`
/// of the Riccati equation, one coefficient per determined order, from
/// `lambda^2` down to `lambda^{2-N}`.
pub fn riccati_residual_of(f: &LambdaSeries) -> Vec<(i64, BiPoly)> {
    let t = BiPoly::t();
    let series = f.to_laurent();
    let lam2_f = series.shift(2);
    let lin = series.shift(1).scale(&t.scalar_mul(&rat(3, 4)));
    let deriv = series.differentiate_t().shift(1).scale(&t);
    let quad = series.mul(&series).scale(&(&t * &f.r.t_over_8_minus_r()));
    let constant = Laurent::monomial(BiPoly::one(), 2);
    let residual = lam2_f.sub(&lin).sub(&deriv).sub(&quad).sub(&constant);
    residual.known_terms()
}

pub fn riccati_formal_residual(order: usize, r: &RValue) -> Vec<(i64, BiPoly)> {
    riccati_residual_of(&truncated_f(order, r))
}
