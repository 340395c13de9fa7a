//! Colorings of a 2-bridge link by a dihedral quandle: brute-force
//! enumeration by strand propagation, the closed-form count `n·gcd(Δ,n)`,
//! and the decomposition of the coloring set into automorphism orbits.
//!
//! The brute-force path decides membership purely by propagating twist and
//! gluing relations and testing the two closure relations; it never consults
//! the divisibility condition, which is what makes it an independent oracle
//! for the closed forms.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::{self, Factorization, MultiIndex};
use crate::dihedral::{AffineMap, DihedralQuandle};
use crate::tangle::TangleWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomsetError {
    #[error("seed ({a},{b}) mod {n} does not extend: determinant·(b−a) ≢ 0")]
    InvalidSeed { n: u64, a: u64, b: u64 },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
}

/// A coloring `[a,b]`, i.e. the homomorphism sending the two bridge strands
/// `x_{1,1}, x_{1,2}` to `a, b`, together with its full strand extension.
///
/// Identity is by `(n, a, b)` alone: the extension is determined by the seed,
/// so the strand map is carried for inspection but excluded from equality.
#[derive(Debug, Clone)]
pub struct Coloring {
    n: u64,
    a: u64,
    b: u64,
    strands: Vec<Vec<u64>>,
}

impl PartialEq for Coloring {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.a, self.b) == (other.n, other.a, other.b)
    }
}

impl Eq for Coloring {}

impl PartialOrd for Coloring {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coloring {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.a, self.b).cmp(&(other.n, other.a, other.b))
    }
}

impl std::hash::Hash for Coloring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.n, self.a, self.b).hash(state);
    }
}

impl Coloring {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// ψ(x_{1,1}).
    pub fn a(&self) -> u64 {
        self.a
    }

    /// ψ(x_{1,2}).
    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn seed(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// ψ(x_{j,i}), indices 1-based as in the presentation.
    pub fn strand(&self, tangle: usize, strand: usize) -> u64 {
        self.strands[tangle - 1][strand - 1]
    }

    /// Strand rows per tangle; row `j` has `pⱼ + 2` entries.
    pub fn strand_rows(&self) -> &[Vec<u64>] {
        &self.strands
    }

    pub fn is_trivial(&self) -> bool {
        self.a == self.b
    }

    /// `gcd(b − a, n)`, the orbit label.
    pub fn divisor(&self) -> u64 {
        arith::gcd((self.b + self.n - self.a) % self.n, self.n)
    }
}

impl std::fmt::Display for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// Fills every strand from the seed `(a, b)` using the twist and gluing
/// relations and reports whether both closure relations hold.
fn propagate(word: &TangleWord, n: u64, a: u64, b: u64) -> (Vec<Vec<u64>>, bool) {
    let q = DihedralQuandle::new(n);
    let p = word.entries();
    let count = p.len();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(count);
    for j in 0..count {
        let len = p[j] as usize + 2;
        let mut row = Vec::with_capacity(len);
        if j == 0 {
            row.push(a % n);
            row.push(b % n);
        } else {
            // x_{j,1} = x_{j−2, p_{j−2}+1}, with x_{0,p₀+1} := x_{1,2}
            row.push(if j == 1 {
                rows[0][1]
            } else {
                rows[j - 2][p[j - 2] as usize]
            });
            // x_{j,2} = x_{j−1, p_{j−1}+2}
            row.push(rows[j - 1][p[j - 1] as usize + 1]);
        }
        for i in 2..len {
            row.push(q.op(row[i - 2], row[i - 1]));
        }
        rows.push(row);
    }
    let last = count - 1;
    let closes_first = rows[last][p[last] as usize] == rows[0][0];
    let second_target = if count >= 2 {
        rows[count - 2][p[count - 2] as usize]
    } else {
        rows[0][1]
    };
    let closes_second = rows[last][p[last] as usize + 1] == second_target;
    (rows, closes_first && closes_second)
}

/// Extends a seed `(a, b)` with `n | Δ(b−a)` to the unique full coloring.
pub fn extend_coloring(
    word: &TangleWord,
    n: u64,
    a: u64,
    b: u64,
) -> Result<Coloring, HomsetError> {
    let delta = crate::tangle::determinant_sequence(word);
    let d_mod = arith::gcd_biguint(delta.determinant(), n) % n;
    let diff = ((b % n) + n - (a % n)) % n;
    // n | Δ(b−a)  ⟺  (n / gcd(Δ,n)) | (b−a)
    let step = n / if d_mod == 0 { n } else { arith::gcd_biguint(delta.determinant(), n) };
    if diff % step != 0 {
        return Err(HomsetError::InvalidSeed { n, a: a % n, b: b % n });
    }
    let (strands, closed) = propagate(word, n, a, b);
    debug_assert!(closed, "seed satisfying the divisibility condition must close");
    Ok(Coloring {
        n,
        a: a % n,
        b: b % n,
        strands,
    })
}

/// Tries all n² seeds and keeps those whose propagation satisfies both
/// closure relations. Returned in `(a, b)`-lexicographic order.
pub fn enumerate_colorings_bruteforce(word: &TangleWord, n: u64) -> Vec<Coloring> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (strands, closed) = propagate(word, n, a, b);
            if closed {
                out.push(Coloring { n, a, b, strands });
            }
        }
    }
    out
}

/// `n · gcd(Δ, n)`.
pub fn coloring_count_closed_form(determinant: &BigUint, n: u64) -> u64 {
    n * arith::gcd_biguint(determinant, n)
}

/// The n constant colorings.
pub fn trivial_colorings(word: &TangleWord, n: u64) -> Vec<Coloring> {
    (0..n)
        .map(|c| {
            let strands = word
                .entries()
                .iter()
                .map(|&p| vec![c; p as usize + 2])
                .collect();
            Coloring { n, a: c, b: c, strands }
        })
        .collect()
}

/// Post-composition `f ∘ ψ`: the coloring `[f(a), f(b)]`, strands mapped
/// pointwise.
pub fn act(f: &AffineMap, psi: &Coloring) -> Result<Coloring, HomsetError> {
    if f.modulus() != psi.n {
        return Err(HomsetError::ModulusMismatch {
            left: f.modulus(),
            right: psi.n,
        });
    }
    Ok(Coloring {
        n: psi.n,
        a: f.apply(psi.a),
        b: f.apply(psi.b),
        strands: psi
            .strands
            .iter()
            .map(|row| row.iter().map(|&v| f.apply(v)).collect())
            .collect(),
    })
}

/// One orbit of the automorphism action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// `gcd(b − a, n)`, constant across the orbit.
    pub divisor: u64,
    /// The member `[0, d]` (`[0,0]` when d = n): `a = 0` with smallest `b`.
    pub representative: Coloring,
    /// All members, sorted by `(a, b)`.
    pub members: Vec<Coloring>,
}

impl Orbit {
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }
}

/// Partition of a full coloring set under post-composition by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    n: u64,
    orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Orbits sorted by divisor label.
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn total_size(&self) -> u64 {
        self.orbits.iter().map(Orbit::size).sum()
    }

    /// Index of the orbit containing `[a,b]`.
    pub fn orbit_of(&self, a: u64, b: u64) -> Option<usize> {
        self.orbits
            .iter()
            .position(|o| o.members.binary_search_by_key(&(a, b), |c| c.seed()).is_ok())
    }
}

/// Decomposes the full Hom-set into orbits of the `Aut(Z_n^dih)` action,
/// labeling each by the divisor `gcd(b − a, n)`.
pub fn orbit_decomposition(homset: &[Coloring], n: u64) -> OrbitDecomposition {
    let automorphisms = DihedralQuandle::new(n).all_automorphisms();
    let index: HashMap<(u64, u64), usize> = homset
        .iter()
        .enumerate()
        .map(|(i, c)| (c.seed(), i))
        .collect();
    let mut seen = vec![false; homset.len()];
    let mut orbits = Vec::new();
    for start in 0..homset.len() {
        if seen[start] {
            continue;
        }
        let mut member_indices = Vec::new();
        for f in &automorphisms {
            let image = act(f, &homset[start]).expect("same modulus");
            let i = *index
                .get(&image.seed())
                .expect("automorphism image stays in the Hom-set");
            if !seen[i] {
                seen[i] = true;
                member_indices.push(i);
            }
        }
        member_indices.sort_unstable();
        let members: Vec<Coloring> = member_indices.iter().map(|&i| homset[i].clone()).collect();
        let divisor = members[0].divisor();
        debug_assert!(members.iter().all(|c| c.divisor() == divisor));
        let representative = members
            .iter()
            .find(|c| c.a() == 0)
            .expect("every orbit contains a coloring with a = 0")
            .clone();
        orbits.push(Orbit {
            divisor,
            representative,
            members,
        });
    }
    orbits.sort_by(|x, y| {
        (x.divisor, x.representative.seed()).cmp(&(y.divisor, y.representative.seed()))
    });
    OrbitDecomposition { n, orbits }
}

/// The orbit grid of a link with determinant `N` over `Z_n`: the prime
/// factorization `n = ∏ pᵢ^αᵢ`, the exponent cap `βᵢ = min(αᵢ, ν_{pᵢ}(N))`,
/// and the index set `Λ = {j : α−β ⪯ j ⪯ α}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGrid {
    pub factorization: Factorization,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub lambda: Vec<MultiIndex>,
}

pub fn orbit_grid(determinant: &BigUint, n: u64) -> OrbitGrid {
    let factorization = arith::factorize(n).expect("modulus is positive");
    let alpha = factorization.exponents();
    let beta = MultiIndex(
        factorization
            .pairs()
            .iter()
            .map(|&(p, a)| arith::p_adic_valuation_capped(p, determinant, a))
            .collect(),
    );
    let low: Vec<u32> = alpha.0.iter().zip(&beta.0).map(|(a, b)| a - b).collect();
    let mut lambda = Vec::new();
    let mut j = low.clone();
    loop {
        lambda.push(MultiIndex(j.clone()));
        // odometer from the last coordinate, each digit ranging low[i]..=alpha[i]
        let mut pos = j.len();
        loop {
            if pos == 0 {
                lambda.sort();
                return OrbitGrid {
                    factorization,
                    alpha,
                    beta,
                    lambda,
                };
            }
            pos -= 1;
            j[pos] += 1;
            if j[pos] <= alpha.0[pos] {
                break;
            }
            j[pos] = low[pos];
            if pos == 0 {
                lambda.sort();
                return OrbitGrid {
                    factorization,
                    alpha,
                    beta,
                    lambda,
                };
            }
        }
    }
}

/// The divisor `p^j = ∏ pᵢ^{jᵢ}` named by a multi-index.
pub fn divisor_from_multi_index(factorization: &Factorization, j: &MultiIndex) -> u64 {
    debug_assert_eq!(factorization.len(), j.len());
    factorization
        .pairs()
        .iter()
        .zip(&j.0)
        .map(|(&(p, _), &e)| p.pow(e))
        .product()
}

/// Inverse of [`divisor_from_multi_index`] for divisors of the factored
/// modulus.
pub fn multi_index_from_divisor(factorization: &Factorization, d: u64) -> Option<MultiIndex> {
    let mut rest = d;
    let mut idx = Vec::with_capacity(factorization.len());
    for &(p, alpha) in factorization.pairs() {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > alpha {
            return None;
        }
        idx.push(e);
    }
    (rest == 1).then_some(MultiIndex(idx))
}

/// Closed-form orbit sizes `n_j` for all `j ∈ Λ`; they sum to `n·gcd(N,n)`.
pub fn orbit_sizes_closed_form(determinant: &BigUint, n: u64) -> BTreeMap<MultiIndex, u64> {
    let grid = orbit_grid(determinant, n);
    grid.lambda
        .iter()
        .map(|j| (j.clone(), orbit_size(&grid.factorization, j)))
        .collect()
}

/// `n_j = ∏ᵢ n_{jᵢ}` with `n_{jᵢ} = pᵢ^{2αᵢ−jᵢ−1}(pᵢ−1)` below the top
/// exponent and `pᵢ^{αᵢ}` at it.
pub(crate) fn orbit_size(factorization: &Factorization, j: &MultiIndex) -> u64 {
    let mut size: u128 = 1;
    for (&(p, alpha), &ji) in factorization.pairs().iter().zip(&j.0) {
        let p = p as u128;
        size *= if ji == alpha {
            p.pow(alpha)
        } else {
            p.pow(2 * alpha - ji - 1) * (p - 1)
        };
    }
    u64::try_from(size).expect("orbit size fits u64")
}
