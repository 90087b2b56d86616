//! Exact univariate polynomial arithmetic over the rationals.
//!
//! Just enough for characteristic-polynomial work: division, GCD, and
//! square-free decomposition (Yun), all exact.

use num_rational::BigRational;
use num_traits::Zero;

/// Coefficients ascending (c₀, c₁, ..., c_d); the zero polynomial is the
/// empty vector and a nonzero one never stores a zero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        RatPoly::new(coeffs)
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lead) => RatPoly::new(self.coeffs.iter().map(|c| c / lead).collect()),
        }
    }

    #[cfg(test)]
    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d_deg];
        while rem.len() >= divisor.coeffs.len() {
            if rem.last().unwrap().is_zero() {
                rem.pop();
                continue;
            }
            let k = rem.len() - 1 - d_deg;
            let factor = rem.last().unwrap() / &d_lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let val = dc * &factor;
                rem[k + j] -= val;
            }
            quot[k] = factor;
            // the top coefficient cancels exactly
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Exact quotient, or None when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic GCD by the Euclidean algorithm.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's square-free decomposition: returns monic pairwise-coprime
    /// factors with multiplicities so that the monic part of `self` equals
    /// the product of `factor^multiplicity`.
    pub fn square_free_decomposition(&self) -> Vec<(RatPoly, usize)> {
        let p = self.monic();
        match p.degree() {
            None | Some(0) => return Vec::new(),
            Some(1) => return vec![(p, 1)],
            _ => {}
        }
        let dp = p.derivative();
        let g = RatPoly::gcd(&p, &dp);
        if g.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let mut b = p.div_exact(&g).expect("gcd divides p");
        let c = dp.div_exact(&g).expect("gcd divides p'");
        let mut d = sub(&c, &b.derivative());
        let mut out = Vec::new();
        let mut multiplicity = 1;
        while b.degree() > Some(0) {
            let a = RatPoly::gcd(&b, &d);
            if a.degree() > Some(0) {
                out.push((a.clone(), multiplicity));
            }
            b = b.div_exact(&a).expect("a divides b");
            let c_next = d.div_exact(&a).expect("a divides d");
            d = sub(&c_next, &b.derivative());
            multiplicity += 1;
        }
        out
    }
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let len = a.coeffs.len().max(b.coeffs.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in a.coeffs.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        out[i] -= c;
    }
    RatPoly::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    fn ints(coeffs: &[i64]) -> RatPoly {
        poly(&coeffs.iter().map(|&c| (c, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn division_recovers_factors() {
        // (x^2 - 1)(x + 2) = x^3 + 2x^2 - x - 2
        let p = ints(&[-2, -1, 2, 1]);
        let q = p.div_exact(&ints(&[-1, 0, 1])).unwrap();
        assert_eq!(q, ints(&[2, 1]));
        assert!(p.div_exact(&ints(&[5, 1])).is_none()); // x + 5 leaves a remainder
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let g = RatPoly::gcd(&ints(&[-1, 1]), &ints(&[1, 1]));
        assert_eq!(g, ints(&[1]));
    }

    #[test]
    fn gcd_finds_common_factor() {
        // gcd((x-1)^2 (x+3), (x-1)(x+5)) = x - 1
        let a = ints(&[-1, 1]).mul(&ints(&[-1, 1])).mul(&ints(&[3, 1]));
        let b = ints(&[-1, 1]).mul(&ints(&[5, 1]));
        assert_eq!(RatPoly::gcd(&a, &b), ints(&[-1, 1]));
    }

    #[test]
    fn square_free_decomposition_of_repeated_factors() {
        // x^3 (x - 1)^2
        let p = ints(&[0, 0, 0, 1])
            .mul(&ints(&[-1, 1]))
            .mul(&ints(&[-1, 1]));
        let sf = p.square_free_decomposition();
        assert_eq!(sf, vec![(ints(&[-1, 1]), 2), (ints(&[0, 1]), 3)]);
        // multiply back
        let mut product = ints(&[1]);
        for (factor, mult) in &sf {
            for _ in 0..*mult {
                product = product.mul(factor);
            }
        }
        assert_eq!(product, p);
    }

    #[test]
    fn square_free_input_passes_through() {
        let p = ints(&[-1, 0, 1]); // (x-1)(x+1)
        assert_eq!(p.square_free_decomposition(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn double_pair_splits() {
        // (x^2 - 1)^2
        let p = ints(&[1, 0, -2, 0, 1]);
        assert_eq!(p.square_free_decomposition(), vec![(ints(&[-1, 0, 1]), 2)]);
    }

    #[test]
    fn eval_horner() {
        let p = poly(&[(1, 4), (0, 1), (-5, 4), (0, 1), (1, 1)]);
        assert!(p.eval(&BigRational::from_integer(1.into())).is_zero());
        assert!(p
            .eval(&BigRational::new(BigInt::from(1), BigInt::from(2)))
            .is_zero());
    }

    #[test]
    fn derivative_shifts_and_scales() {
        let p = ints(&[7, 3, 0, 2]); // 2x^3 + 3x + 7
        assert_eq!(p.derivative(), ints(&[3, 0, 6]));
    }
}
