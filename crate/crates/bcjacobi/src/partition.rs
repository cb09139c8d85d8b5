//! Partitions (Young diagrams), the index set for everything: conjugation,
//! dominance order, box contents and the content products C+, C-, C0.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{int, Rat};

/// A partition: weakly decreasing sequence of positive integers.
/// The empty sequence is the empty partition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0);
        if !ok {
            return Err(Error::BadPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from a weakly decreasing sequence that may carry
    /// trailing zeros (they are dropped).
    pub fn from_padded(parts: &[u32]) -> Result<Self> {
        let cut = parts.iter().position(|&p| p == 0).unwrap_or(parts.len());
        Partition::new(parts[..cut].to_vec())
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// 1-based part access; rows past the length are 0.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// l(lambda), the number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |lambda|, the weight.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The conjugate partition lambda', i.e. the transposed diagram.
    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            parts.push(self.parts.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition { parts }
    }

    /// n(lambda) = sum (i-1) * lambda_i.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Multiplicity of a part size.
    pub fn multiplicity(&self, a: u32) -> usize {
        self.parts.iter().filter(|&&p| p == a).count()
    }

    /// Diagram inclusion: self contained in `other`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, &p)| other.part(i + 1) >= p)
    }

    /// Iterates over the boxes (i, j) of the diagram, 1-based.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// Dominance order within a fixed weight: every partial sum of self
    /// is <= the corresponding partial sum of `other`. Requires equal weight.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let n = self.parts.len().max(other.parts.len());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 1..=n {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// The cross-weight order: mu <= lambda iff |mu| < |lambda|, or the
    /// weights agree and mu <= lambda in dominance.
    pub fn le_order(&self, other: &Partition) -> bool {
        match self.weight().cmp(&other.weight()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.dominated_by(other),
        }
    }

    /// lambda + epsilon_i when that is a partition (1-based row index).
    pub fn add_box_in_row(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.parts.len() + 1 {
            return None;
        }
        if i > 1 && self.part(i - 1) < self.part(i) + 1 {
            return None;
        }
        let mut parts = self.parts.clone();
        if i == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[i - 1] += 1;
        }
        Some(Partition { parts })
    }

    /// lambda - epsilon_i when that is a partition.
    pub fn remove_box_in_row(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.parts.len() {
            return None;
        }
        if self.part(i + 1) > self.part(i) - 1 {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i - 1] -= 1;
        if parts[i - 1] == 0 {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// Inserts an extra part, keeping the parts sorted.
    pub fn with_part(&self, a: u32) -> Partition {
        assert!(a > 0);
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < a).unwrap_or(parts.len());
        parts.insert(pos, a);
        Partition { parts }
    }

    /// Removes one part of size `a`; None if absent.
    pub fn without_part(&self, a: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == a)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// All partitions of weight exactly `w`, in canonical order.
    pub fn all_of_weight(w: u32) -> Vec<Partition> {
        fn go(rem: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            let hi = rem.min(max);
            for next in (1..=hi).rev() {
                acc.push(next);
                go(rem - next, next, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(w, w, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions of weight <= `w`, in canonical order.
    pub fn all_up_to_weight(w: u32) -> Vec<Partition> {
        (0..=w).flat_map(Partition::all_of_weight).collect()
    }

    /// Parses the text format: comma-separated weakly decreasing positive
    /// integers; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| Error::BadPartition(s.to_string()))?;
            parts.push(p);
        }
        Partition::new(parts).map_err(|_| Error::BadPartition(s.to_string()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Canonical total order: weight first, then reverse-lexicographic within a
/// weight, so each weight block lists (w), (w-1,1), ..., (1^w) in sequence.
/// Within a fixed weight this order is a linear extension of reversed
/// dominance: bigger in dominance means earlier.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts so that the back-substitution solver can run front to back:
/// weight descending, and within a weight dominance-larger partitions first.
pub fn sort_solver_descending(parts: &mut [Partition]) {
    parts.sort_by(|a, b| b.weight().cmp(&a.weight()).then_with(|| a.cmp(b)));
}

/// Which of the three content functions to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContentKind {
    Plus,
    Minus,
    Zero,
}

/// Single-box content c^+/c^-/c^0 at the (1-based) box (i, j). The box need
/// not lie inside lambda: the Pieri strips extend past the diagram.
pub fn box_content(
    kind: ContentKind,
    lam: &Partition,
    i: usize,
    j: usize,
    x: &Rat,
    k: &Rat,
) -> Rat {
    let li = int(lam.part(i) as i64);
    let lpj = int(lam.conjugate().part(j) as i64);
    let (i, j) = (int(i as i64), int(j as i64));
    match kind {
        // lambda_i + j + k(lambda'_j + i) + x
        ContentKind::Plus => li + &j + k * (lpj + &i) + x,
        // lambda_i - j - k(lambda'_j - i) + x
        ContentKind::Minus => li - &j - k * (lpj - &i) + x,
        // j - 1 + k(i - 1) + x
        ContentKind::Zero => &j - int(1) + k * (&i - int(1)) + x,
    }
}

/// Content product C^+/C^-/C^0 over all boxes of lambda; empty product is 1.
pub fn content_product(kind: ContentKind, lam: &Partition, x: &Rat, k: &Rat) -> Rat {
    let conj = lam.conjugate();
    let mut acc = int(1);
    for (i, j) in lam.boxes() {
        let li = int(lam.part(i) as i64);
        let lpj = int(conj.part(j) as i64);
        let (bi, bj) = (int(i as i64), int(j as i64));
        let factor = match kind {
            ContentKind::Plus => li + &bj + k * (lpj + &bi) + x,
            ContentKind::Minus => li - &bj - k * (lpj - &bi) + x,
            ContentKind::Zero => &bj - int(1) + k * (&bi - int(1)) + x,
        };
        acc *= factor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(p(&[1]).n_stat(), 0);
        assert_eq!(p(&[2, 1]).n_stat(), 1);
        assert_eq!(p(&[1, 1, 1]).n_stat(), 3);
    }

    #[test]
    fn n_stat_of_conjugate_is_sum_of_binomials() {
        for lam in Partition::all_up_to_weight(8) {
            let direct = lam.conjugate().n_stat();
            let via_binomial: u64 = lam
                .parts()
                .iter()
                .map(|&l| (l as u64) * (l as u64 - 1) / 2)
                .sum();
            assert_eq!(direct, via_binomial, "at {lam:?}");
        }
    }

    #[test]
    fn canonical_order_lists_reverse_lexicographically() {
        let w3 = Partition::all_of_weight(3);
        assert_eq!(w3, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        let upto = Partition::all_up_to_weight(2);
        assert_eq!(upto, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]);
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[1, 1, 1]).dominated_by(&p(&[2, 1])));
        assert!(p(&[2, 1]).dominated_by(&p(&[3])));
        assert!(!p(&[3]).dominated_by(&p(&[2, 1])));
        assert!(!p(&[2]).dominated_by(&p(&[1, 1, 1])));
        assert!(p(&[3, 3]).dominated_by(&p(&[4, 2])));
        // incomparable pair
        assert!(!p(&[3, 1, 1, 1]).dominated_by(&p(&[2, 2, 2])));
        assert!(!p(&[2, 2, 2]).dominated_by(&p(&[3, 1, 1, 1])));
    }

    #[test]
    fn add_and_remove_boxes() {
        assert_eq!(p(&[2, 2]).add_box_in_row(1), Some(p(&[3, 2])));
        assert_eq!(p(&[2, 2]).add_box_in_row(2), None);
        assert_eq!(p(&[2, 2]).add_box_in_row(3), Some(p(&[2, 2, 1])));
        assert_eq!(p(&[2, 2]).remove_box_in_row(1), None);
        assert_eq!(p(&[2, 2]).remove_box_in_row(2), Some(p(&[2, 1])));
        assert_eq!(p(&[1]).remove_box_in_row(1), Some(Partition::empty()));
        assert_eq!(Partition::empty().remove_box_in_row(1), None);
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("3,1").unwrap(), p(&[3, 1]));
        assert!(Partition::parse("1,3").is_err());
        assert!(Partition::parse("0").is_err());
        assert!(Partition::parse("a").is_err());
        assert_eq!(Partition::parse("3,1").unwrap().to_string(), "3,1");
    }

    #[test]
    fn content_product_examples() {
        let k = rat(-3, 7);
        let h = rat(9, 11);
        // zero, lambda=(1): single box gives x
        let x = rat(5, 2);
        assert_eq!(
            content_product(ContentKind::Zero, &p(&[1]), &x, &k),
            x.clone()
        );
        // minus, lambda=(2): boxes (1,1),(1,2) give (1+x) * x
        assert_eq!(
            content_product(ContentKind::Minus, &p(&[2]), &x, &k),
            (int(1) + &x) * &x
        );
        // plus, lambda=(1), x=2h-1 gives 1 + 2k + 2h
        let x = int(2) * &h - int(1);
        assert_eq!(
            content_product(ContentKind::Plus, &p(&[1]), &x, &k),
            int(1) + int(2) * &k + int(2) * &h
        );
    }

    #[test]
    fn box_content_examples() {
        let k = rat(-3, 7);
        let x = rat(1, 3);
        // zero content of box (1,1) is x for any shape
        assert_eq!(
            box_content(ContentKind::Zero, &p(&[2, 1]), 1, 1, &x, &k),
            x
        );
        // minus, lambda=(2), box (1,1), x=0: 2 - 1 - k(1-1) = 1
        assert_eq!(
            box_content(ContentKind::Minus, &p(&[2]), 1, 1, &int(0), &k),
            int(1)
        );
        // plus, lambda=(1), box (1,1), x=0: 1 + 1 + k(1+1) = 2 + 2k
        assert_eq!(
            box_content(ContentKind::Plus, &p(&[1]), 1, 1, &int(0), &k),
            int(2) + int(2) * &k
        );
    }

    #[test]
    fn content_product_is_product_of_box_contents() {
        let k = rat(-5, 9);
        let x = rat(7, 4);
        for lam in Partition::all_up_to_weight(6) {
            for kind in [ContentKind::Plus, ContentKind::Minus, ContentKind::Zero] {
                let direct = content_product(kind, &lam, &x, &k);
                let boxed: Rat = lam
                    .boxes()
                    .map(|(i, j)| box_content(kind, &lam, i, j, &x, &k))
                    .product();
                assert_eq!(direct, boxed, "at {lam:?}");
            }
        }
    }
}
