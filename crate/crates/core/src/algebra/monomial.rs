use std::cmp::Ordering;

use super::context::Context;
use super::context::Generator;

/// A canonical product of generators: odd ids strictly ascending, even ids
/// as a sorted multiset. The empty monomial is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    odd: Vec<u32>,
    even: Vec<u32>,
}

/// Sign of a reordering: `true` means an odd number of odd transpositions.
pub type Negated = bool;

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        match g.parity {
            super::Parity::Odd => Self { odd: vec![g.id], even: Vec::new() },
            super::Parity::Even => Self { odd: Vec::new(), even: vec![g.id] },
        }
    }

    /// Canonicalizes the word `odd_word` (in written order) times the even
    /// generators. Returns `None` when an odd id repeats.
    pub fn from_word(odd_word: &[u32], even: &[u32]) -> Option<(Negated, Self)> {
        let mut odd = odd_word.to_vec();
        // insertion sort; each adjacent swap is one transposition
        let mut negated = false;
        for i in 1..odd.len() {
            let mut j = i;
            while j > 0 && odd[j - 1] >= odd[j] {
                if odd[j - 1] == odd[j] {
                    return None;
                }
                odd.swap(j - 1, j);
                negated = !negated;
                j -= 1;
            }
        }
        let mut even = even.to_vec();
        even.sort_unstable();
        Some((negated, Self { odd, even }))
    }

    pub fn odd(&self) -> &[u32] {
        &self.odd
    }

    pub fn even(&self) -> &[u32] {
        &self.even
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_empty() && self.even.is_empty()
    }

    /// Form degree: `|odd| + 2·|even|`.
    pub fn degree(&self) -> usize {
        self.odd.len() + 2 * self.even.len()
    }

    /// Canonical product `self · other`, or `None` if an odd id repeats.
    pub fn mul(&self, other: &Self) -> Option<(Negated, Self)> {
        let odd = merge_odd(&self.odd, &other.odd)?;
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() && j < other.even.len() {
            if self.even[i] <= other.even[j] {
                even.push(self.even[i]);
                i += 1;
            } else {
                even.push(other.even[j]);
                j += 1;
            }
        }
        even.extend_from_slice(&self.even[i..]);
        even.extend_from_slice(&other.even[j..]);
        Some((odd.0, Self { odd: odd.1, even }))
    }

    pub(crate) fn without_even(&self, pos: usize) -> Self {
        let mut even = self.even.clone();
        even.remove(pos);
        Self { odd: self.odd.clone(), even }
    }

    pub(crate) fn odd_prefix(&self, len: usize) -> Self {
        Self { odd: self.odd[..len].to_vec(), even: Vec::new() }
    }

    pub(crate) fn odd_suffix_with_even(&self, start: usize) -> Self {
        Self { odd: self.odd[start..].to_vec(), even: self.even.clone() }
    }

    pub(crate) fn odd_only(&self) -> Self {
        Self { odd: self.odd.clone(), even: Vec::new() }
    }

    pub fn render(&self, ctx: &Context) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.odd
            .iter()
            .map(|&id| ctx.label(Generator::odd(id)))
            .chain(self.even.iter().map(|&id| ctx.label(Generator::even(id))))
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn merge_odd(a: &[u32], b: &[u32]) -> Option<(Negated, Vec<u32>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                // b[j] jumps over every remaining element of a
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((inversions % 2 == 1, out))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.odd.cmp(&other.odd))
            .then_with(|| self.even.cmp(&other.even))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
