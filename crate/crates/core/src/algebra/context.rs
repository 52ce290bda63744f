use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// Form degree 1; anticommuting.
    Odd,
    /// Form degree 2; commuting.
    Even,
}

impl Parity {
    pub fn form_degree(self) -> usize {
        match self {
            Parity::Odd => 1,
            Parity::Even => 2,
        }
    }
}

/// Generators order by `(parity, id)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub parity: Parity,
    pub id: u32,
}

impl Generator {
    pub fn odd(id: u32) -> Self {
        Self { parity: Parity::Odd, id }
    }

    pub fn even(id: u32) -> Self {
        Self { parity: Parity::Even, id }
    }
}

/// The set of free generators an element is written in.
///
/// Elements from different contexts never mix, even if their labels agree.
#[derive(Debug)]
pub struct Context {
    id: u64,
    odd_labels: Vec<String>,
    even_labels: Vec<String>,
}

impl Context {
    pub fn new(odd_labels: Vec<String>, even_labels: Vec<String>) -> Arc<Self> {
        Arc::new(Self {
            id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed),
            odd_labels,
            even_labels,
        })
    }

    /// `n_odd` generators labelled `x[i]` and `n_even` labelled `y[i]`.
    pub fn with_counts(n_odd: usize, n_even: usize) -> Arc<Self> {
        Self::new(
            (0..n_odd).map(|i| format!("x[{i}]")).collect(),
            (0..n_even).map(|i| format!("y[{i}]")).collect(),
        )
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n_odd(&self) -> usize {
        self.odd_labels.len()
    }

    pub fn n_even(&self) -> usize {
        self.even_labels.len()
    }

    pub fn contains(&self, g: Generator) -> bool {
        let n = match g.parity {
            Parity::Odd => self.n_odd(),
            Parity::Even => self.n_even(),
        };
        (g.id as usize) < n
    }

    pub fn label(&self, g: Generator) -> &str {
        match g.parity {
            Parity::Odd => &self.odd_labels[g.id as usize],
            Parity::Even => &self.even_labels[g.id as usize],
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.n_odd() as u32)
            .map(Generator::odd)
            .chain((0..self.n_even() as u32).map(Generator::even))
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        a.id == b.id
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Parity::Odd => write!(f, "odd#{}", self.id),
            Parity::Even => write!(f, "even#{}", self.id),
        }
    }
}
