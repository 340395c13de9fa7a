//! The dihedral quandle on `Z_n` with `x ▷ y = 2y − x (mod n)`, its affine
//! endomorphism monoid and automorphism group.
//!
//! Every endomorphism of the dihedral quandle is the affine map `⟦x,y⟧`
//! determined by its values at 0 and 1; [`verify_affine_completeness`] checks
//! that claim exhaustively for small n instead of taking it on faith.

use crate::arith;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DihedralError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("⟦{x},{y}⟧ mod {n} is not an automorphism (y − x is not a unit)")]
    NotAnAutomorphism { n: u64, x: u64, y: u64 },
    #[error("exhaustive search over n^n self-maps is limited to n ≤ {max}, got {n}")]
    SearchBoundExceeded { n: u64, max: u64 },
}

/// `Z_n` with `x ▷ y = 2y − x (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralQuandle {
    n: u64,
}

impl DihedralQuandle {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "quandle order must be positive");
        DihedralQuandle { n }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// `x ▷ y = 2y − x (mod n)`.
    pub fn op(&self, x: u64, y: u64) -> u64 {
        let n = self.n as u128;
        ((2 * (y as u128 % n) + n - (x as u128 % n) % n) % n) as u64
    }

    /// All n² affine maps `⟦x,y⟧` in lexicographic `(x, y)` order.
    pub fn all_endomorphisms(&self) -> Vec<AffineMap> {
        let mut maps = Vec::with_capacity((self.n * self.n) as usize);
        for x in 0..self.n {
            for y in 0..self.n {
                maps.push(AffineMap { n: self.n, x, y });
            }
        }
        maps
    }

    /// The maps `⟦x,y⟧` with `y − x` a unit; there are n·φ(n) of them.
    pub fn all_automorphisms(&self) -> Vec<AffineMap> {
        self.all_endomorphisms()
            .into_iter()
            .filter(|f| f.is_automorphism())
            .collect()
    }
}

/// The endomorphism `⟦x,y⟧: a ↦ (y−x)·a + x (mod n)`, i.e. the unique one
/// with `0 ↦ x` and `1 ↦ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    n: u64,
    x: u64,
    y: u64,
}

impl AffineMap {
    pub fn new(n: u64, x: u64, y: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        AffineMap {
            n,
            x: x % n,
            y: y % n,
        }
    }

    /// `⟦0,1⟧`.
    pub fn identity(n: u64) -> Self {
        AffineMap::new(n, 0, 1)
    }

    /// `⟦c,c⟧`, the constant map.
    pub fn constant(n: u64, c: u64) -> Self {
        AffineMap::new(n, c, c)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Image of 0.
    pub fn x(&self) -> u64 {
        self.x
    }

    /// Image of 1.
    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn apply(&self, a: u64) -> u64 {
        let n = self.n as u128;
        let slope = (self.y as u128 + n - self.x as u128) % n;
        ((slope * (a as u128 % n) + self.x as u128) % n) as u64
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::identity(self.n)
    }

    pub fn is_automorphism(&self) -> bool {
        arith::gcd((self.y + self.n - self.x) % self.n, self.n) == 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap, DihedralError> {
        if self.n != other.n {
            return Err(DihedralError::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(AffineMap {
            n: self.n,
            x: self.apply(other.x),
            y: self.apply(other.y),
        })
    }

    /// Two-sided inverse; defined only for automorphisms.
    pub fn invert(&self) -> Result<AffineMap, DihedralError> {
        let slope = (self.y + self.n - self.x) % self.n;
        let inv = arith::mod_inverse(slope, self.n).ok_or(DihedralError::NotAnAutomorphism {
            n: self.n,
            x: self.x,
            y: self.y,
        })?;
        let n = self.n as u128;
        let neg_x = (n - self.x as u128 % n) % n;
        let gx = (inv as u128 * neg_x) % n;
        let gy = (inv as u128 * ((1 + neg_x) % n)) % n;
        Ok(AffineMap {
            n: self.n,
            x: gx as u64,
            y: gy as u64,
        })
    }
}

impl std::fmt::Display for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{},{}]]", self.x, self.y)
    }
}

/// Exhaustively checks that the maps `Z_n → Z_n` satisfying the endomorphism
/// law are exactly the n² affine maps. Walks all n^n self-maps, so n is
/// capped at 7 (≈8.2·10⁵ candidates).
pub fn verify_affine_completeness(q: &DihedralQuandle) -> Result<bool, DihedralError> {
    const MAX_N: u64 = 7;
    let n = q.order();
    if n > MAX_N {
        return Err(DihedralError::SearchBoundExceeded { n, max: MAX_N });
    }
    let nn = n as usize;
    let mut op = vec![0u64; nn * nn];
    for a in 0..nn {
        for b in 0..nn {
            op[a * nn + b] = q.op(a as u64, b as u64);
        }
    }
    let is_endo = |f: &[u64]| {
        for a in 0..nn {
            for b in 0..nn {
                let lhs = f[op[a * nn + b] as usize];
                let rhs = op[f[a] as usize * nn + f[b] as usize];
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    };

    let mut f = vec![0u64; nn];
    let mut endo_count = 0u64;
    loop {
        if is_endo(&f) {
            endo_count += 1;
            let affine = AffineMap::new(n, f[0], f[1 % nn]);
            if (0..nn).any(|a| f[a] != affine.apply(a as u64)) {
                return Ok(false);
            }
        }
        // odometer over all n^n maps
        let mut pos = 0;
        loop {
            if pos == nn {
                return Ok(endo_count == n * n);
            }
            f[pos] += 1;
            if f[pos] < n {
                break;
            }
            f[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_examples() {
        assert_eq!(DihedralQuandle::new(5).op(1, 3), 0);
        assert_eq!(DihedralQuandle::new(4).op(2, 2), 2);
        assert_eq!(DihedralQuandle::new(12).op(7, 0), 5);
    }

    #[test]
    fn quandle_axioms_and_involution() {
        for n in 1..=64u64 {
            let q = DihedralQuandle::new(n);
            for x in 0..n {
                assert_eq!(q.op(x, x), x, "idempotence, n={n}");
                for y in 0..n {
                    assert_eq!(q.op(q.op(x, y), y), x, "involution, n={n}");
                    for z in 0..n {
                        assert_eq!(
                            q.op(q.op(x, y), z),
                            q.op(q.op(x, z), q.op(y, z)),
                            "self-distributivity, n={n}"
                        );
                    }
                }
            }
            // β_y is a bijection: involution already forces it, but check
            // image size directly for one y.
            let y = n / 2;
            let mut seen = vec![false; n as usize];
            for x in 0..n {
                seen[q.op(x, y) as usize] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn affine_maps_are_endomorphisms() {
        for n in 1..=64u64 {
            let q = DihedralQuandle::new(n);
            for f in q.all_endomorphisms() {
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(f.apply(q.op(a, b)), q.op(f.apply(a), f.apply(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn apply_matches_two_coefficient_form() {
        // f(a) = a·y − (a−1)·x, computed here additively as an oracle.
        for n in 1..=32u64 {
            for f in DihedralQuandle::new(n).all_endomorphisms() {
                for a in 0..n {
                    let mut acc = 0u64;
                    for _ in 0..a {
                        acc = (acc + f.y()) % n;
                    }
                    for _ in 1..a {
                        acc = (acc + n - f.x()) % n;
                    }
                    if a == 0 {
                        acc = (acc + f.x()) % n;
                    }
                    assert_eq!(f.apply(a), acc, "n={n} f={f} a={a}");
                }
            }
        }
    }

    #[test]
    fn endomorphism_counts() {
        let maps = DihedralQuandle::new(2).all_endomorphisms();
        assert_eq!(maps.len(), 4);
        let tables: Vec<Vec<u64>> = maps.iter().map(|f| (0..2).map(|a| f.apply(a)).collect()).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(DihedralQuandle::new(3).all_endomorphisms().len(), 9);
        assert_eq!(DihedralQuandle::new(1).all_endomorphisms().len(), 1);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(DihedralQuandle::new(4).all_automorphisms().len(), 8);
        assert_eq!(DihedralQuandle::new(3).all_automorphisms().len(), 6);
        assert_eq!(DihedralQuandle::new(1).all_automorphisms().len(), 1);
        for n in 1..=64u64 {
            assert_eq!(
                DihedralQuandle::new(n).all_automorphisms().len() as u64,
                n * arith::euler_totient(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn compose_examples() {
        let id = AffineMap::identity(4);
        let f = AffineMap::new(4, 1, 3);
        let g = AffineMap::new(4, 0, 2);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(f.compose(&g).unwrap(), AffineMap::new(4, 1, 1));
        let c = AffineMap::constant(4, 3);
        assert_eq!(c.compose(&f).unwrap(), c);
        assert!(matches!(
            f.compose(&AffineMap::identity(5)),
            Err(DihedralError::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn monoid_laws() {
        let n = 6;
        let maps = DihedralQuandle::new(n).all_endomorphisms();
        let id = AffineMap::identity(n);
        for f in &maps {
            assert_eq!(id.compose(f).unwrap(), *f);
            assert_eq!(f.compose(&id).unwrap(), *f);
            for g in &maps {
                for h in &maps {
                    let fg_h = f.compose(g).unwrap().compose(h).unwrap();
                    let f_gh = f.compose(&g.compose(h).unwrap()).unwrap();
                    assert_eq!(fg_h, f_gh);
                }
            }
        }
    }

    #[test]
    fn compose_agrees_pointwise() {
        let n = 12;
        let maps = DihedralQuandle::new(n).all_endomorphisms();
        for f in maps.iter().step_by(7) {
            for g in maps.iter().step_by(5) {
                let h = f.compose(g).unwrap();
                for a in 0..n {
                    assert_eq!(h.apply(a), f.apply(g.apply(a)));
                }
            }
        }
    }

    #[test]
    fn invert_examples() {
        assert_eq!(AffineMap::identity(7).invert().unwrap(), AffineMap::identity(7));
        assert_eq!(AffineMap::new(5, 0, 2).invert().unwrap(), AffineMap::new(5, 0, 3));
        assert_eq!(AffineMap::new(4, 1, 2).invert().unwrap(), AffineMap::new(4, 3, 0));
        assert!(matches!(
            AffineMap::new(4, 0, 2).invert(),
            Err(DihedralError::NotAnAutomorphism { .. })
        ));
    }

    #[test]
    fn invert_gives_two_sided_inverse() {
        for n in 1..=24u64 {
            let id = AffineMap::identity(n);
            for f in DihedralQuandle::new(n).all_automorphisms() {
                let g = f.invert().unwrap();
                assert_eq!(f.compose(&g).unwrap(), id);
                assert_eq!(g.compose(&f).unwrap(), id);
            }
        }
    }

    #[test]
    fn affine_completeness_small_orders() {
        for n in 1..=6u64 {
            let q = DihedralQuandle::new(n);
            assert_eq!(verify_affine_completeness(&q), Ok(true), "n={n}");
        }
        assert!(matches!(
            verify_affine_completeness(&DihedralQuandle::new(8)),
            Err(DihedralError::SearchBoundExceeded { .. })
        ));
    }
}
