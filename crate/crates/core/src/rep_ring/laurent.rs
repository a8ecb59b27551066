use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::root_system::{Weight, WeylElement, WeylGroup};

/// An element of `R(T) = Z[Λ]`: finitely many weights with nonzero integer
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Weight, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank))
    }

    pub fn monomial(w: Weight) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: Weight, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(rank: usize, c: i64) -> Self {
        Self::term(Weight::zero(rank), BigInt::from(c))
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn exponents(&self) -> Vec<Weight> {
        self.terms.keys().cloned().collect()
    }

    /// If the polynomial is an integer constant, returns it.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    pub fn shift(&self, by: &Weight) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(w, c)| (w.add(by), c.clone())).collect() }
    }

    /// `w·p`: permutes exponents through the lattice action.
    pub fn act(&self, group: &WeylGroup, w: WeylElement) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (group.act_unchecked(w, e), c.clone())))
    }

    /// Evaluates at a point of the torus given per lattice coordinate.
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (w, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(w.coords()) {
                if e >= 0 {
                    m *= num_traits::pow::pow(x.clone(), e as usize);
                } else {
                    m /= num_traits::pow::pow(x.clone(), (-e) as usize);
                }
            }
            acc += m;
        }
        acc
    }

    /// Evaluates with every coordinate set to `+1` or `-1`.
    pub fn eval_signs(&self, signs: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (w, c) in &self.terms {
            let odd_neg = w.coords().iter().zip(signs).filter(|(&e, &s)| s < 0 && e.rem_euclid(2) == 1).count();
            if odd_neg % 2 == 1 {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    fn leading(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn exponent_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for w in it {
            for (k, &e) in w.0.iter().enumerate() {
                lo[k] = lo[k].min(e);
                hi[k] = hi[k].max(e);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent ring.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (ld, cd) = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.term_count() == 1 {
            let mut q = Self::zero();
            for (w, c) in &self.terms {
                let (qc, r) = c.div_rem(cd);
                if !r.is_zero() {
                    return None;
                }
                q.terms.insert(w.sub(ld), qc);
            }
            return Some(q);
        }
        // any quotient exponent lies in [min(a) - min(d), max(a) - max(d)]
        let (alo, ahi) = self.exponent_box()?;
        let (dlo, dhi) = d.exponent_box()?;
        let qlo: Vec<i64> = alo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let qhi: Vec<i64> = ahi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        if qlo.iter().zip(&qhi).any(|(l, h)| l > h) {
            return None;
        }
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((le, lc)) = rem.leading() {
            let qe = le.sub(ld);
            if qe.0.iter().enumerate().any(|(k, &e)| e < qlo[k] || e > qhi[k]) {
                return None;
            }
            let (qc, r) = lc.div_rem(cd);
            if !r.is_zero() {
                return None;
            }
            let step = LaurentPoly::term(qe, qc);
            rem = &rem - &(&step * d);
            q = &q + &step;
        }
        Some(q)
    }

    /// Maximal absolute value of the coefficients.
    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for LaurentPoly {
    /// One `exponents:coefficient` token per term, lexicographic in the
    /// exponents, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let tokens: Vec<String> = self.terms.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        f.write_str(&tokens.join(" "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.add(wb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(e: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(Weight(e.to_vec()))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &x(&[1]) - &x(&[1]);
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_is_sorted() {
        let p = &x(&[1, 0]) + &x(&[-1, 1]);
        assert_eq!(p.to_string(), "-1,1:1 1,0:1");
    }

    #[test]
    fn divides_geometric_sum() {
        let one = LaurentPoly::one(1);
        let num = &(&x(&[3]) - &one) * &x(&[-2]);
        let den = &x(&[1]) - &one;
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, &(&(&x(&[0]) + &x(&[-1])) + &x(&[-2])) + &LaurentPoly::zero());
    }

    #[test]
    fn detects_non_divisibility() {
        let one = LaurentPoly::one(1);
        assert!(one.exact_div(&(&x(&[1]) - &one)).is_none());
        assert!(LaurentPoly::constant(1, 3).exact_div(&LaurentPoly::constant(1, 2)).is_none());
        assert!(one.exact_div(&LaurentPoly::zero()).is_none());
    }

    #[test]
    fn sign_evaluation() {
        // σ = x + x⁻¹ at x = 1 and x = -1
        let sigma = &x(&[1]) + &x(&[-1]);
        assert_eq!(sigma.eval_signs(&[1]), BigInt::from(2));
        assert_eq!(sigma.eval_signs(&[-1]), BigInt::from(-2));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-3i64..4, -3i64..4), -4i64..5), 0..6).prop_map(|terms| {
            LaurentPoly::from_terms(terms.into_iter().map(|((a, b), c)| (Weight(vec![a, b]), BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b), Some(a));
        }

        #[test]
        fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
