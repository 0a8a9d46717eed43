//! Sign algebra and colexicographic indexing of sorted subsets.
//!
//! Everything downstream evaluates chirotopes, and a chirotope is a sign
//! function on r-subsets of a ground set. This module fixes the two
//! conventions the rest of the crate relies on: the sign poset
//! `0 < -`, `0 < +` with `+` and `-` incomparable, and the colexicographic
//! bijection between sorted r-subsets of `{1, …, n}` and `0..C(n, r)`.

use std::fmt;

use thiserror::Error;

/// One of `+`, `-`, `0`, ordered by `0 < -` and `0 < +`.
///
/// Signs are deliberately not numbers: no `Ord`, no arithmetic beyond the
/// sign multiplication below, so a sign can never leak into index math.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    /// Sign of a product of reals with these signs.
    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    /// Negation; an involution fixing zero.
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    /// The partial order with zero below both nonzero signs.
    ///
    /// `a.leq(b)` holds iff `a == b` or `a` is zero.
    pub fn leq(self, other: Sign) -> bool {
        self == Sign::Zero || self == other
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    /// Sign of an integer-like quantity given as its comparison with zero.
    pub fn from_ordering(ord: std::cmp::Ordering) -> Sign {
        match ord {
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Plus,
        }
    }

    /// Total order key for canonical sorting of sign strings.
    ///
    /// This is *not* the sign poset; it exists only so containers of signs
    /// can be sorted deterministically.
    pub(crate) fn sort_key(self) -> u8 {
        match self {
            Sign::Minus => 0,
            Sign::Zero => 1,
            Sign::Plus => 2,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Free-function form of [`Sign::leq`], the order `0 < -`, `0 < +`.
pub fn sign_leq(a: Sign, b: Sign) -> bool {
    a.leq(b)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignError {
    #[error("not a permutation input: entry {0} repeats")]
    NotAPermutation(usize),
}

/// Sign of the permutation sorting `tuple`: `Plus` for even, `Minus` for odd.
///
/// Entries must be pairwise distinct; callers that want "repeats mean zero"
/// semantics (chirotope evaluation) handle repeats before calling.
pub fn permutation_sign(tuple: &[usize]) -> Result<Sign, SignError> {
    let mut inversions = 0usize;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] == tuple[j] {
                return Err(SignError::NotAPermutation(tuple[i]));
            }
            if tuple[i] > tuple[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions % 2 == 0 { Sign::Plus } else { Sign::Minus })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("rank {r} exceeds ground size {n}")]
    RankExceedsGround { r: usize, n: usize },
    #[error("subset has size {got}, expected {expected}")]
    WrongSubsetSize { got: usize, expected: usize },
    #[error("subset element {0} out of range or not strictly increasing")]
    BadElement(usize),
    #[error("index {index} out of range, only {count} subsets")]
    IndexOutOfRange { index: usize, count: usize },
}

/// Bijection between sorted r-subsets of `{1, …, n}` and `0..C(n, r)`,
/// in colexicographic order.
///
/// colex keeps the rank of a subset independent of `n`, so indices stay
/// stable when the ground set grows and restriction maps become prefix
/// operations.
#[derive(Clone, Debug)]
pub struct BasisIndexer {
    n: usize,
    r: usize,
    /// binomial[a][b] = C(a, b) for a ≤ n, b ≤ r.
    binomial: Vec<Vec<usize>>,
}

impl BasisIndexer {
    pub fn new(n: usize, r: usize) -> Result<BasisIndexer, IndexError> {
        if r > n {
            return Err(IndexError::RankExceedsGround { r, n });
        }
        let mut binomial = vec![vec![0usize; r + 1]; n + 1];
        for a in 0..=n {
            binomial[a][0] = 1;
            for b in 1..=r.min(a) {
                binomial[a][b] = if b == a {
                    1
                } else {
                    binomial[a - 1][b - 1] + binomial[a - 1][b]
                };
            }
        }
        Ok(BasisIndexer { n, r, binomial })
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// C(n, r): the number of sorted r-subsets.
    pub fn count(&self) -> usize {
        self.binomial[self.n][self.r]
    }

    fn choose(&self, a: usize, b: usize) -> usize {
        if b > self.r || a > self.n || b > a {
            if b > a {
                return 0;
            }
            unreachable!("binomial table query out of bounds");
        }
        self.binomial[a][b]
    }

    /// colex rank of a sorted r-subset of `{1, …, n}`.
    pub fn rank_subset(&self, subset: &[usize]) -> Result<usize, IndexError> {
        if subset.len() != self.r {
            return Err(IndexError::WrongSubsetSize {
                got: subset.len(),
                expected: self.r,
            });
        }
        let mut prev = 0usize;
        let mut index = 0usize;
        for (i, &s) in subset.iter().enumerate() {
            if s <= prev || s > self.n {
                return Err(IndexError::BadElement(s));
            }
            prev = s;
            index += self.choose(s - 1, i + 1);
        }
        Ok(index)
    }

    /// Inverse of [`rank_subset`](Self::rank_subset).
    pub fn unrank_subset(&self, index: usize) -> Result<Vec<usize>, IndexError> {
        if index >= self.count() {
            return Err(IndexError::IndexOutOfRange {
                index,
                count: self.count(),
            });
        }
        let mut remaining = index;
        let mut subset = vec![0usize; self.r];
        for i in (1..=self.r).rev() {
            // Largest s with C(s - 1, i) <= remaining.
            let mut s = i;
            while s + 1 <= self.n && self.choose(s, i) <= remaining {
                s += 1;
            }
            subset[i - 1] = s;
            remaining -= self.choose(s - 1, i);
        }
        Ok(subset)
    }

    /// All sorted r-subsets in colex order.
    pub fn subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count()).map(move |i| self.unrank_subset(i).expect("index in range"))
    }
}
