//! Subsets of `[n] = {1, ..., n}` packed into a single machine word.
//!
//! Element `i` lives in bit `i - 1`. The canonical order on `k`-subsets is
//! colexicographic, which for a fixed popcount coincides with the numeric
//! order of the bit words, so ranks can be computed with the combinadic
//! formula and enumeration is a plain increasing sweep (Gosper's hack).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[ground_n]` stored as a bit word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetWord {
    bits: u64,
    ground_n: u8,
}

#[inline]
fn ground_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_ground(n: u32) -> Result<()> {
    if (1..=MAX_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidGround(n))
    }
}

impl SubsetWord {
    /// Wraps a raw bit word, rejecting bits outside `[ground_n]`.
    pub fn from_bits(bits: u64, ground_n: u32) -> Result<Self> {
        check_ground(ground_n)?;
        if bits & !ground_mask(ground_n) != 0 {
            return Err(Error::BitsOutOfRange { bits, ground_n });
        }
        Ok(Self {
            bits,
            ground_n: ground_n as u8,
        })
    }

    /// Builds a subset from 1-based elements. Duplicates are ignored.
    pub fn from_elements<I>(elements: I, ground_n: u32) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        check_ground(ground_n)?;
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > ground_n {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    ground_n,
                });
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(Self {
            bits,
            ground_n: ground_n as u8,
        })
    }

    pub fn empty(ground_n: u32) -> Result<Self> {
        Self::from_bits(0, ground_n)
    }

    pub fn full(ground_n: u32) -> Result<Self> {
        check_ground(ground_n)?;
        Self::from_bits(ground_mask(ground_n), ground_n)
    }

    // Internal constructor for callers that already hold a valid word.
    #[inline]
    pub(crate) fn new_unchecked(bits: u64, ground_n: u32) -> Self {
        debug_assert!(bits & !ground_mask(ground_n) == 0);
        Self {
            bits,
            ground_n: ground_n as u8,
        }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground_n(self) -> u32 {
        u32::from(self.ground_n)
    }

    /// Cardinality of the subset.
    #[inline]
    pub fn len(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Whether the 1-based element `e` belongs to the subset.
    #[inline]
    pub fn contains(self, e: u32) -> bool {
        e >= 1 && e <= self.ground_n() && self.bits & (1u64 << (e - 1)) != 0
    }

    /// Whether `self ⊆ other` (same ground set assumed).
    #[inline]
    pub fn is_subset_of(self, other: SubsetWord) -> bool {
        self.bits & !other.bits == 0
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let tz = rest.trailing_zeros();
                rest &= rest - 1;
                Some(tz + 1)
            }
        })
    }

    fn same_ground(self, other: SubsetWord) -> Result<()> {
        if self.ground_n == other.ground_n {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: self.ground_n(),
                right: other.ground_n(),
            })
        }
    }

    /// `[n] \ self`.
    #[inline]
    pub fn complement(self) -> SubsetWord {
        Self::new_unchecked(!self.bits & ground_mask(self.ground_n()), self.ground_n())
    }

    /// Adds the 1-based element `e`, which may enlarge the ground set by at
    /// most the amount needed to hold it.
    pub fn with_element(self, e: u32, ground_n: u32) -> Result<SubsetWord> {
        check_ground(ground_n)?;
        if e == 0 || e > ground_n {
            return Err(Error::ElementOutOfRange {
                element: e,
                ground_n,
            });
        }
        Self::from_bits(self.bits | (1u64 << (e - 1)), ground_n)
    }

    /// Parses the `"1,3,4"` / `"-"` text form.
    pub fn parse(text: &str, ground_n: u32) -> Result<SubsetWord> {
        let text = text.trim();
        if text == "-" {
            return Self::empty(ground_n);
        }
        let mut elements = Vec::new();
        for part in text.split(',') {
            let e: u32 = part.parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad subset element `{part}` in `{text}`"),
            })?;
            elements.push(e);
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line: 0,
                message: format!("subset `{text}` is not strictly ascending"),
            });
        }
        Self::from_elements(elements, ground_n)
    }
}

/// Elements ascending, comma-separated, no spaces; the empty set is `-`.
impl fmt::Display for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `|a Δ b|`.
pub fn symm_diff_size(a: SubsetWord, b: SubsetWord) -> Result<u32> {
    a.same_ground(b)?;
    Ok((a.bits ^ b.bits).count_ones())
}

/// `|a ∩ b|`.
pub fn intersect_size(a: SubsetWord, b: SubsetWord) -> Result<u32> {
    a.same_ground(b)?;
    Ok((a.bits & b.bits).count_ones())
}

pub fn complement(a: SubsetWord) -> SubsetWord {
    a.complement()
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
///
/// Exact for every `n <= 64`.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Colex rank of `a` among the subsets of the same size.
pub fn rank(a: SubsetWord) -> u64 {
    a.elements()
        .enumerate()
        .map(|(i, e)| binomial(e - 1, i as u32 + 1))
        .sum()
}

/// The `r`-th `k`-subset of `[n]` in colex order.
pub fn unrank(r: u64, n: u32, k: u32) -> Result<SubsetWord> {
    check_ground(n)?;
    if k > n {
        return Err(Error::SubsetTooLarge { k, n });
    }
    if r >= binomial(n, k) {
        return Err(Error::RankOutOfRange { rank: r, n, k });
    }
    let mut rest = r;
    let mut bits = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= rest
        let mut c = top - 1;
        while binomial(c, i) > rest {
            c -= 1;
        }
        rest -= binomial(c, i);
        bits |= 1u64 << c;
        top = c;
    }
    Ok(SubsetWord::new_unchecked(bits, n))
}

/// Iterator over the `k`-subsets of `[n]` in colex (= numeric) order.
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
    n: u32,
}

impl Iterator for KSubsets {
    type Item = SubsetWord;

    fn next(&mut self) -> Option<SubsetWord> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < self.limit).then_some(nxt)
        };
        Some(SubsetWord::new_unchecked(cur as u64, self.n))
    }
}

/// Lazily walks the `k`-subsets of `[n]`; position equals colex rank.
pub fn k_subsets(n: u32, k: u32) -> Result<KSubsets> {
    check_ground(n)?;
    if k > n {
        return Err(Error::SubsetTooLarge { k, n });
    }
    let first: u128 = (1u128 << k) - 1;
    Ok(KSubsets {
        next: Some(first),
        limit: 1u128 << n,
        n,
    })
}

pub fn enumerate_k_subsets(n: u32, k: u32) -> Result<Vec<SubsetWord>> {
    Ok(k_subsets(n, k)?.collect())
}
