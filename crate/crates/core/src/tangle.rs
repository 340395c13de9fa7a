//! 2-bridge links as positive tangle words or coprime fractions, the
//! determinant recurrence, and the strand/relation structure their
//! fundamental quandle is presented by.
//!
//! A word `[p₁ … p_N]` stands for the rational tangle built by `p_j`-fold
//! twists; its continued-fraction value `p_N + 1/(… + 1/p₁)` identifies the
//! link, and the numerator of that value is the link determinant.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("tangle word must have at least one entry")]
    EmptyWord,
    #[error("tangle word entries must be strictly positive")]
    ZeroEntry,
    #[error("negative entries are not supported; negate all entries (the mirror image has the same invariants)")]
    NegativeEntry,
    #[error("fraction must have positive numerator and denominator")]
    ZeroFractionPart,
    #[error("fraction {numerator}/{denominator} has denominator larger than numerator")]
    DenominatorExceedsNumerator {
        numerator: BigUint,
        denominator: BigUint,
    },
    #[error("fraction {numerator}/{denominator} is not in lowest terms")]
    NotCoprime {
        numerator: BigUint,
        denominator: BigUint,
    },
    #[error("cannot parse link spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Positive twist-count word `[p₁ … p_N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangleWord {
    entries: Vec<u64>,
}

impl TangleWord {
    pub fn new(entries: Vec<u64>) -> Result<Self, TangleError> {
        if entries.is_empty() {
            return Err(TangleError::EmptyWord);
        }
        if entries.iter().any(|&p| p == 0) {
            return Err(TangleError::ZeroEntry);
        }
        Ok(TangleWord { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Number of tangles N.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total crossing count Σ pⱼ.
    pub fn crossing_sum(&self) -> u64 {
        self.entries.iter().sum()
    }
}

impl std::fmt::Display for TangleWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Coprime fraction `N/M` with `0 < M ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    numerator: BigUint,
    denominator: BigUint,
}

impl Fraction {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self, TangleError> {
        if numerator.is_zero() || denominator.is_zero() {
            return Err(TangleError::ZeroFractionPart);
        }
        if denominator > numerator {
            return Err(TangleError::DenominatorExceedsNumerator {
                numerator,
                denominator,
            });
        }
        if !numerator.gcd(&denominator).is_one() {
            return Err(TangleError::NotCoprime {
                numerator,
                denominator,
            });
        }
        Ok(Fraction {
            numerator,
            denominator,
        })
    }

    pub fn from_u64(numerator: u64, denominator: u64) -> Result<Self, TangleError> {
        Fraction::new(BigUint::from(numerator), BigUint::from(denominator))
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// The sequence Δ₀ = 1, Δ₁ = p₁, Δⱼ = pⱼΔⱼ₋₁ + Δⱼ₋₂; Δ_N is the link
/// determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantSequence {
    values: Vec<BigUint>,
}

impl DeterminantSequence {
    /// Δ₀ … Δ_N.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Δ_N, the determinant.
    pub fn determinant(&self) -> &BigUint {
        self.values.last().expect("sequence has at least Δ₀, Δ₁")
    }
}

pub fn determinant_sequence(word: &TangleWord) -> DeterminantSequence {
    let mut values = Vec::with_capacity(word.len() + 1);
    values.push(BigUint::one());
    values.push(BigUint::from(word.entries[0]));
    for &p in &word.entries[1..] {
        let j = values.len();
        let next = &values[j - 1] * p + &values[j - 2];
        values.push(next);
    }
    DeterminantSequence { values }
}

/// Continued-fraction value `p_N + 1/(… + 1/p₁)` in lowest terms.
///
/// The numerator equals Δ_N and the denominator Δ_{N−1}; convergents of a
/// continued fraction are automatically coprime.
pub fn word_to_fraction(word: &TangleWord) -> Fraction {
    let seq = determinant_sequence(word);
    let v = seq.values();
    Fraction {
        numerator: v[v.len() - 1].clone(),
        denominator: v[v.len() - 2].clone(),
    }
}

/// Euclidean expansion of `N/M` into quotients `a₁, a₂, …` with
/// `N/M = a₁ + 1/(a₂ + ⋯)`, emitted reversed so the word's continued
/// fraction reproduces `N/M`. A quotient of 1 is permitted.
pub fn fraction_to_word(fraction: &Fraction) -> TangleWord {
    use num_traits::ToPrimitive;
    let mut quotients = Vec::new();
    let mut num = fraction.numerator.clone();
    let mut den = fraction.denominator.clone();
    while !den.is_zero() {
        let (q, r) = num.div_rem(&den);
        quotients.push(q.to_u64().expect("tangle word entry exceeds u64"));
        num = den;
        den = r;
    }
    quotients.reverse();
    TangleWord::new(quotients).expect("Euclidean quotients of 0 < M <= N are positive")
}

/// Generator `x_{j,i}` of the strand presentation, both indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub tangle: usize,
    pub strand: usize,
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x[{},{}]", self.tangle, self.strand)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// `result = base ▷ over`.
    Twist {
        result: Generator,
        base: Generator,
        over: Generator,
    },
    /// `left = right`.
    Equal { left: Generator, right: Generator },
}

/// Generators and relations presenting the fundamental quandle of the closed
/// tangle, specialized to involutory targets (`▷ = ▷⁻¹`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandPresentation {
    word: TangleWord,
    twist: Vec<Relation>,
    gluing: Vec<Relation>,
    closure: Vec<Relation>,
}

impl StrandPresentation {
    pub fn word(&self) -> &TangleWord {
        &self.word
    }

    /// All generators `x_{j,i}`, `1 ≤ j ≤ N`, `1 ≤ i ≤ pⱼ + 2`.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        for (j, &p) in self.word.entries.iter().enumerate() {
            for i in 1..=(p as usize + 2) {
                gens.push(Generator {
                    tangle: j + 1,
                    strand: i,
                });
            }
        }
        gens
    }

    pub fn generator_count(&self) -> usize {
        self.word
            .entries
            .iter()
            .map(|&p| p as usize + 2)
            .sum()
    }

    pub fn twist_relations(&self) -> &[Relation] {
        &self.twist
    }

    pub fn gluing_relations(&self) -> &[Relation] {
        &self.gluing
    }

    pub fn closure_relations(&self) -> &[Relation] {
        &self.closure
    }

    pub fn relation_count(&self) -> usize {
        self.twist.len() + self.gluing.len() + self.closure.len()
    }
}

/// Materializes the presentation: pⱼ twist relations per tangle, the gluing
/// identifications between consecutive tangles, and the two closure
/// relations.
///
/// For `j = 2` and for the `N = 1` closure, the reference to tangle 0 is
/// resolved by the virtual generator `x_{0,p₀+1} := x_{1,2}`, which makes the
/// `j ≥ 3` gluing pattern and the closure formula uniform over all N.
pub fn strand_presentation(word: &TangleWord) -> StrandPresentation {
    let p = &word.entries;
    let n_tangles = p.len();
    let gen = |tangle: usize, strand: usize| Generator { tangle, strand };
    // x_{j-2, p_{j-2}+1}, with tangle 0 meaning x_{1,2}.
    let two_back = |j: usize| {
        if j == 2 {
            gen(1, 2)
        } else {
            gen(j - 2, p[j - 3] as usize + 1)
        }
    };

    let mut twist = Vec::new();
    for (idx, &pj) in p.iter().enumerate() {
        let j = idx + 1;
        for i in 3..=(pj as usize + 2) {
            twist.push(Relation::Twist {
                result: gen(j, i),
                base: gen(j, i - 2),
                over: gen(j, i - 1),
            });
        }
    }

    let mut gluing = Vec::new();
    for j in 2..=n_tangles {
        gluing.push(Relation::Equal {
            left: gen(j, 1),
            right: two_back(j),
        });
        gluing.push(Relation::Equal {
            left: gen(j, 2),
            right: gen(j - 1, p[j - 2] as usize + 2),
        });
    }

    let last_p = p[n_tangles - 1] as usize;
    let closure = vec![
        Relation::Equal {
            left: gen(n_tangles, last_p + 1),
            right: gen(1, 1),
        },
        Relation::Equal {
            left: gen(n_tangles, last_p + 2),
            right: if n_tangles >= 2 {
                gen(n_tangles - 1, p[n_tangles - 2] as usize + 1)
            } else {
                gen(1, 2)
            },
        },
    ];

    StrandPresentation {
        word: word.clone(),
        twist,
        gluing,
        closure,
    }
}

/// A link given either way on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Link {
    Word(TangleWord),
    Fraction(Fraction),
}

impl Link {
    /// The word form: as given, or the Euclidean expansion of the fraction.
    pub fn word(&self) -> TangleWord {
        match self {
            Link::Word(w) => w.clone(),
            Link::Fraction(f) => fraction_to_word(f),
        }
    }

    pub fn fraction(&self) -> Fraction {
        match self {
            Link::Word(w) => word_to_fraction(w),
            Link::Fraction(f) => f.clone(),
        }
    }

    pub fn determinant(&self) -> BigUint {
        match self {
            Link::Word(w) => determinant_sequence(w).determinant().clone(),
            Link::Fraction(f) => f.numerator().clone(),
        }
    }
}

impl std::fmt::Display for Link {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Link::Word(w) => write!(f, "{w}"),
            Link::Fraction(fr) => write!(f, "{fr}"),
        }
    }
}

/// Parses `"[2 2]"` / `"[2,2]"` as a word and `"5/2"` as a fraction.
pub fn parse_link(input: &str) -> Result<Link, TangleError> {
    let s = input.trim();
    let parse_err = |reason: &str| TangleError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if let Some(body) = s.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| parse_err("missing closing bracket"))?;
        let mut entries = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            if tok.starts_with('-') {
                return Err(TangleError::NegativeEntry);
            }
            let v: u64 = tok
                .parse()
                .map_err(|_| parse_err(&format!("bad word entry {tok:?}")))?;
            entries.push(v);
        }
        Ok(Link::Word(TangleWord::new(entries)?))
    } else if let Some((num, den)) = s.split_once('/') {
        let parse_part = |part: &str| -> Result<BigUint, TangleError> {
            let part = part.trim();
            if part.starts_with('-') {
                return Err(TangleError::NegativeEntry);
            }
            part.parse()
                .map_err(|_| parse_err(&format!("bad fraction part {part:?}")))
        };
        Ok(Link::Fraction(Fraction::new(
            parse_part(num)?,
            parse_part(den)?,
        )?))
    } else {
        Err(parse_err(
            "expected a bracketed word like \"[2 2]\" or a fraction like \"5/2\"",
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(entries: &[u64]) -> TangleWord {
        TangleWord::new(entries.to_vec()).unwrap()
    }

    fn frac(n: u64, m: u64) -> Fraction {
        Fraction::from_u64(n, m).unwrap()
    }

    #[test]
    fn word_to_fraction_examples() {
        assert_eq!(word_to_fraction(&word(&[2, 2])), frac(5, 2));
        assert_eq!(word_to_fraction(&word(&[4])), frac(4, 1));
        assert_eq!(word_to_fraction(&word(&[3, 2])), frac(7, 3));
    }

    #[test]
    fn fraction_to_word_examples() {
        assert_eq!(fraction_to_word(&frac(5, 2)), word(&[2, 2]));
        assert_eq!(fraction_to_word(&frac(4, 1)), word(&[4]));
        assert_eq!(fraction_to_word(&frac(1, 1)), word(&[1]));
        assert_eq!(fraction_to_word(&frac(3, 2)), word(&[2, 1]));
    }

    #[test]
    fn determinant_sequence_examples() {
        let seq = |w: &[u64]| {
            determinant_sequence(&word(w))
                .values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(seq(&[2, 2]), ["1", "2", "5"]);
        assert_eq!(seq(&[3]), ["1", "3"]);
        assert_eq!(seq(&[1, 1, 1]), ["1", "1", "2", "3"]);
    }

    #[test]
    fn presentation_single_tangle() {
        let pres = strand_presentation(&word(&[2]));
        assert_eq!(pres.generator_count(), 4);
        let g = |t, s| Generator { tangle: t, strand: s };
        assert_eq!(
            pres.twist_relations(),
            &[
                Relation::Twist { result: g(1, 3), base: g(1, 1), over: g(1, 2) },
                Relation::Twist { result: g(1, 4), base: g(1, 2), over: g(1, 3) },
            ]
        );
        assert!(pres.gluing_relations().is_empty());
        assert_eq!(
            pres.closure_relations(),
            &[
                Relation::Equal { left: g(1, 3), right: g(1, 1) },
                Relation::Equal { left: g(1, 4), right: g(1, 2) },
            ]
        );
    }

    #[test]
    fn presentation_shape_counts() {
        let pres = strand_presentation(&word(&[1, 1]));
        assert_eq!(pres.generator_count(), 6);
        assert_eq!(pres.twist_relations().len(), 2);
        assert_eq!(pres.gluing_relations().len(), 2);
        assert_eq!(pres.closure_relations().len(), 2);
    }

    #[test]
    fn presentation_two_tangles_closure() {
        let pres = strand_presentation(&word(&[2, 2]));
        assert_eq!(pres.generator_count(), 8);
        let g = |t, s| Generator { tangle: t, strand: s };
        assert_eq!(
            pres.closure_relations(),
            &[
                Relation::Equal { left: g(2, 3), right: g(1, 1) },
                Relation::Equal { left: g(2, 4), right: g(1, 3) },
            ]
        );
        assert_eq!(
            pres.gluing_relations(),
            &[
                Relation::Equal { left: g(2, 1), right: g(1, 2) },
                Relation::Equal { left: g(2, 2), right: g(1, 4) },
            ]
        );
    }

    #[test]
    fn word_validation() {
        assert_eq!(TangleWord::new(vec![]), Err(TangleError::EmptyWord));
        assert_eq!(TangleWord::new(vec![2, 0]), Err(TangleError::ZeroEntry));
    }

    #[test]
    fn fraction_validation() {
        assert!(matches!(
            Fraction::from_u64(4, 6),
            Err(TangleError::NotCoprime { .. })
        ));
        assert!(matches!(
            Fraction::from_u64(2, 5),
            Err(TangleError::DenominatorExceedsNumerator { .. })
        ));
        assert_eq!(Fraction::from_u64(5, 0), Err(TangleError::ZeroFractionPart));
    }

    #[test]
    fn parser_accepts_both_forms() {
        assert_eq!(parse_link("[2 2]").unwrap(), Link::Word(word(&[2, 2])));
        assert_eq!(parse_link("[2,2]").unwrap(), Link::Word(word(&[2, 2])));
        assert_eq!(parse_link("[2, 2]").unwrap(), Link::Word(word(&[2, 2])));
        assert_eq!(parse_link("5/2").unwrap(), Link::Fraction(frac(5, 2)));
        assert_eq!(parse_link(" 36/1 ").unwrap(), Link::Fraction(frac(36, 1)));
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert_eq!(parse_link("[2 -2]"), Err(TangleError::NegativeEntry));
        assert!(matches!(parse_link("[]"), Err(TangleError::EmptyWord)));
        assert!(matches!(parse_link("[2 x]"), Err(TangleError::Parse { .. })));
        assert!(matches!(parse_link("abc"), Err(TangleError::Parse { .. })));
        assert!(matches!(
            parse_link("2/5"),
            Err(TangleError::DenominatorExceedsNumerator { .. })
        ));
        assert!(matches!(parse_link("4/6"), Err(TangleError::NotCoprime { .. })));
    }

    #[test]
    fn round_trip_all_small_fractions() {
        for n in 1..=200u64 {
            for m in 1..=n {
                if crate::arith::gcd(n, m) != 1 {
                    continue;
                }
                let f = frac(n, m);
                assert_eq!(word_to_fraction(&fraction_to_word(&f)), f, "{n}/{m}");
            }
        }
    }

    proptest! {
        #[test]
        fn numerator_is_determinant(entries in proptest::collection::vec(1u64..=9, 1..=8)) {
            let w = TangleWord::new(entries).unwrap();
            let f = word_to_fraction(&w);
            let seq = determinant_sequence(&w);
            prop_assert_eq!(f.numerator(), seq.determinant());
        }

        #[test]
        fn presentation_counts(entries in proptest::collection::vec(1u64..=9, 1..=8)) {
            let w = TangleWord::new(entries).unwrap();
            let pres = strand_presentation(&w);
            let s = w.crossing_sum() as usize;
            let n = w.len();
            prop_assert_eq!(pres.generator_count(), s + 2 * n);
            prop_assert_eq!(pres.twist_relations().len(), s);
            prop_assert_eq!(pres.gluing_relations().len(), 2 * (n - 1));
            prop_assert_eq!(pres.closure_relations().len(), 2);
            prop_assert_eq!(pres.relation_count(), s + 2 * n);
            prop_assert_eq!(pres.generators().len(), pres.generator_count());
        }
    }
}
