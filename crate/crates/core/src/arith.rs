//! Exact integer and modular arithmetic shared by the other modules.
//!
//! Residues are `u64` values kept reduced to `0..n`; the only quantity that
//! can outgrow machine width is a link determinant, which callers carry as a
//! [`BigUint`].

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("p-adic valuation of 0 is undefined")]
    ValuationOfZero,
    #[error("{0} is not a valid prime base")]
    InvalidPrime(u64),
    #[error("0 has no prime factorization")]
    FactorizationOfZero,
}

/// Greatest common divisor, with `gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `gcd(value, n)` for an arbitrary-precision value and a machine modulus.
pub(crate) fn gcd_biguint(value: &BigUint, n: u64) -> u64 {
    let r = (value % BigUint::from(n)).to_u64().expect("remainder < n");
    gcd(r, n)
}

/// Inverse of `a` mod `n`, when a unit.
pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

/// Largest `k` with `p^k | m`. Rejects `m = 0` and non-prime `p`.
pub fn p_adic_valuation(p: u64, m: u64) -> Result<u32, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::InvalidPrime(p));
    }
    if m == 0 {
        return Err(ArithError::ValuationOfZero);
    }
    let mut m = m;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    Ok(k)
}

/// Valuation `min(cap, v_p(m))` of a positive big integer. Capping keeps the
/// loop bounded without computing the full valuation.
pub(crate) fn p_adic_valuation_capped(p: u64, m: &BigUint, cap: u32) -> u32 {
    let p = BigUint::from(p);
    let mut m = m.clone();
    let mut k = 0;
    while k < cap && (&m % &p) == BigUint::ZERO {
        m /= &p;
        k += 1;
    }
    k
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization `n = ∏ pᵢ^αᵢ` with primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The exponent vector α as a multi-index.
    pub fn exponents(&self) -> MultiIndex {
        MultiIndex(self.pairs.iter().map(|&(_, a)| a).collect())
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, a)| p.pow(a)).product()
    }
}

/// Trial-division factorization; `factorize(1)` is the empty product.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::FactorizationOfZero);
    }
    let mut pairs = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            pairs.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(Factorization { pairs })
}

/// Count of units mod `n`.
pub fn euler_totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined for n >= 1");
    factorize(n)
        .expect("n >= 1")
        .pairs()
        .iter()
        .map(|&(p, a)| p.pow(a - 1) * (p - 1))
        .product()
}

/// All `x` in `0..n` with `ax ≡ b (mod n)`, in increasing order.
///
/// There are `gcd(a, n)` solutions when `gcd(a, n) | b`, none otherwise.
pub fn solve_linear_congruence(a: u64, b: u64, n: u64) -> Vec<u64> {
    assert!(n >= 1, "modulus must be positive");
    let a = a % n;
    let b = b % n;
    let d = gcd(a, n);
    if b % d != 0 {
        return Vec::new();
    }
    // Solve (a/d) x ≡ b/d mod n/d, then lift the d solutions.
    let step = n / d;
    let x0 = if a == 0 {
        0
    } else {
        let inv = mod_inverse(a / d, step).expect("a/d is a unit mod n/d");
        ((inv as u128 * (b / d) as u128) % step as u128) as u64
    };
    (0..d).map(|k| x0 + k * step).collect()
}

/// Per-prime exponent vector, paired with a [`Factorization`] of the modulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise order `self ⪯ other`.
    pub fn is_componentwise_le(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ")")
    }
}
