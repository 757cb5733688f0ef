use std::fmt;

use super::{check_variables, mobius_words, tail_mask, word_count, BooleanFunction, MAX_VARIABLES};
use crate::error::{Error, Result};

/// Algebraic normal form: the coefficient of monomial `prod_{j in m} x_{j+1}`
/// sits at bit `m`, packed like a truth table. Mask 0 is the constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnfPolynomial {
    n: usize,
    coeffs: Vec<u64>,
}

impl AnfPolynomial {
    pub(crate) fn from_raw(n: usize, coeffs: Vec<u64>) -> Self {
        AnfPolynomial { n, coeffs }
    }

    /// Polynomial whose monomials are exactly `masks`.
    pub fn from_monomials(n: usize, masks: &[u64]) -> Result<Self> {
        check_variables(n, MAX_VARIABLES)?;
        let mut coeffs = vec![0u64; word_count(n)];
        for &m in masks {
            if m >> n != 0 {
                return Err(Error::dimension(n, 64 - m.leading_zeros()));
            }
            coeffs[(m >> 6) as usize] ^= 1 << (m & 63);
        }
        debug_assert_eq!(coeffs[0] & !tail_mask(n), 0);
        Ok(AnfPolynomial { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u64) -> bool {
        assert!(
            mask >> self.n == 0,
            "monomial mask {mask:#b} wider than n = {}",
            self.n
        );
        self.coeffs[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    /// Masks of the monomials present, ascending.
    pub fn monomials(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (k, &w) in self.coeffs.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as u64;
                out.push(((k as u64) << 6) | b);
                w &= w - 1;
            }
        }
        out
    }

    /// Largest monomial size; 0 for constants (including the zero polynomial).
    pub fn degree(&self) -> usize {
        self.monomials()
            .into_iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the polynomial everywhere.
    pub fn to_function(&self) -> BooleanFunction {
        let mut table = self.coeffs.clone();
        mobius_words(self.n, &mut table);
        BooleanFunction::from_raw(self.n, table)
    }
}

/// Writes `1 + x1 + x2x3`, with `0` for the zero polynomial.
impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monomials = self.monomials();
        if monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == 0 {
                f.write_str("1")?;
            }
            for j in 0..self.n {
                if m >> j & 1 == 1 {
                    write!(f, "x{}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPolynomial(n={}, {})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inclusion-exclusion: `a_m = xor of f(x) over x subset of m`.
    fn brute_anf(bits: &[u8]) -> Vec<u8> {
        (0..bits.len())
            .map(|m| {
                (0..bits.len())
                    .filter(|&x| x & m == x)
                    .fold(0u8, |acc, x| acc ^ bits[x])
            })
            .collect()
    }

    fn anf_bits(a: &AnfPolynomial) -> Vec<u8> {
        (0..1u64 << a.n()).map(|m| a.coeff(m) as u8).collect()
    }

    #[test]
    fn constant_one() {
        let anf = BooleanFunction::one(3).unwrap().to_anf();
        assert_eq!(anf.monomials(), vec![0]);
        assert_eq!(anf.degree(), 0);
        assert_eq!(anf.to_string(), "1");
    }

    #[test]
    fn x1_plus_x2x3() {
        let f = BooleanFunction::from_fn(3, |x| (x & 1) ^ ((x >> 1) & (x >> 2) & 1) == 1).unwrap();
        let anf = f.to_anf();
        assert_eq!(anf.monomials(), vec![0b001, 0b110]);
        assert_eq!(anf.degree(), 2);
        assert_eq!(anf.to_string(), "x1 + x2x3");
    }

    #[test]
    fn worked_example_matches_inclusion_exclusion() {
        let bits = [1, 1, 0, 1, 1, 0, 0, 0];
        let f = BooleanFunction::from_bits(3, &bits).unwrap();
        let anf = f.to_anf();
        let expected = brute_anf(&bits);
        assert_eq!(anf_bits(&anf), expected);
        // 1 + x2 + x1x2 + x1x3
        assert_eq!(expected, vec![1, 0, 1, 1, 0, 1, 0, 0]);
        assert_eq!(anf.to_string(), "1 + x2 + x1x2 + x1x3");
        assert_eq!(anf.degree(), 2);
    }

    #[test]
    fn mobius_involution_exhaustive_n3() {
        for t in 0u64..256 {
            let f = BooleanFunction::from_words(3, vec![t]).unwrap();
            let anf = f.to_anf();
            assert_eq!(anf_bits(&anf), brute_anf(&f.to_bits()));
            assert_eq!(anf.to_function(), f);
            let mut raw = anf.coeffs().to_vec();
            mobius_words(3, &mut raw);
            assert_eq!(raw, f.words());
        }
    }

    #[test]
    fn multiword_tables_match_oracle() {
        // n = 8 spans four words, exercising the cross-word strides.
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let bits: Vec<u8> = (0..256)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state & 1) as u8
            })
            .collect();
        let f = BooleanFunction::from_bits(8, &bits).unwrap();
        assert_eq!(anf_bits(&f.to_anf()), brute_anf(&bits));
        assert_eq!(f.to_anf().to_function(), f);
    }

    #[test]
    fn degrees_of_linear_and_full_monomial() {
        for n in 1..=8 {
            for omega in 0..1u64 << n {
                let l = BooleanFunction::from_fn(n, |x| (x & omega).count_ones() % 2 == 1).unwrap();
                assert!(l.degree() <= 1);
            }
            let all = (1u64 << n) - 1;
            let and = BooleanFunction::from_fn(n, |x| x == all).unwrap();
            assert_eq!(and.degree(), n);
            assert_eq!(and.to_anf().monomials(), vec![all]);
        }
    }

    #[test]
    fn from_monomials_rejects_wide_masks() {
        assert!(AnfPolynomial::from_monomials(3, &[0b1000]).is_err());
        let p = AnfPolynomial::from_monomials(3, &[0b011, 0]).unwrap();
        assert_eq!(p.to_string(), "1 + x1x2");
        assert_eq!(
            AnfPolynomial::from_monomials(2, &[]).unwrap().to_string(),
            "0"
        );
    }
}
